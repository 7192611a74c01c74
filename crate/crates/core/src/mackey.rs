//! Mackey functors for `C_p` and `C_pq` as Lewis diagrams.
//!
//! A `C_pq`-Mackey functor stores one [`CyclicSum`] per orbit and an integer
//! matrix per covering edge in each direction. Weyl actions are trivial for
//! every functor built here and are not stored.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::abgroup::{CyclicSum, Subgroup};
use crate::group::{Factor, GroupPQ};
use crate::linalg::{LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MackeyError {
    #[error("tensor factors have primes ({0}, {1}); expected (p, q)")]
    PrimeMismatch(Factor, Factor),
    #[error("{0}: matrix does not define a homomorphism")]
    NotAHom(String),
    #[error("Mackey axiom fails: {0}")]
    Axiom(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Orbits `G/H` of `C_pq`, named by stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orbit {
    /// `G/G`
    Top,
    /// `G/C_p`
    Cp,
    /// `G/C_q`
    Cq,
    /// `G/e`
    Bottom,
}

impl Orbit {
    pub const ALL: [Orbit; 4] = [Orbit::Top, Orbit::Cp, Orbit::Cq, Orbit::Bottom];

    fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Orbit::Top => "G/G",
            Orbit::Cp => "G/C_p",
            Orbit::Cq => "G/C_q",
            Orbit::Bottom => "G/e",
        }
    }

    pub fn parse(s: &str) -> Option<Orbit> {
        Orbit::ALL
            .into_iter()
            .find(|o| o.label().eq_ignore_ascii_case(s.trim()))
    }

    /// Order of the stabilizer.
    pub fn stabilizer_order(self, g: GroupPQ) -> u64 {
        match self {
            Orbit::Top => g.order(),
            Orbit::Cp => g.p(),
            Orbit::Cq => g.q(),
            Orbit::Bottom => 1,
        }
    }

    /// Whether the `C_p`- and `C_q`-coordinates of `C_pq = C_p x C_q` are at the top.
    fn levels(self) -> (bool, bool) {
        match self {
            Orbit::Top => (true, true),
            Orbit::Cp => (true, false),
            Orbit::Cq => (false, true),
            Orbit::Bottom => (false, false),
        }
    }

    /// Stabilizers contained in this one, this one included.
    pub fn subgroups(self) -> &'static [Orbit] {
        match self {
            Orbit::Top => &[Orbit::Top, Orbit::Cp, Orbit::Cq, Orbit::Bottom],
            Orbit::Cp => &[Orbit::Cp, Orbit::Bottom],
            Orbit::Cq => &[Orbit::Cq, Orbit::Bottom],
            Orbit::Bottom => &[Orbit::Bottom],
        }
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The four covering relations in the subgroup lattice of `C_pq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    TopCp,
    TopCq,
    CpBottom,
    CqBottom,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::TopCp, Edge::TopCq, Edge::CpBottom, Edge::CqBottom];

    fn index(self) -> usize {
        self as usize
    }

    pub fn upper(self) -> Orbit {
        match self {
            Edge::TopCp | Edge::TopCq => Orbit::Top,
            Edge::CpBottom => Orbit::Cp,
            Edge::CqBottom => Orbit::Cq,
        }
    }

    pub fn lower(self) -> Orbit {
        match self {
            Edge::TopCp => Orbit::Cp,
            Edge::TopCq => Orbit::Cq,
            Edge::CpBottom | Edge::CqBottom => Orbit::Bottom,
        }
    }

    /// The factor of `C_p x C_q` whose coordinate moves along this edge.
    pub fn moving_factor(self) -> Factor {
        match self {
            Edge::TopCp | Edge::CqBottom => Factor::Q,
            Edge::TopCq | Edge::CpBottom => Factor::P,
        }
    }

    /// Index of the lower stabilizer in the upper one.
    pub fn index_in(self, g: GroupPQ) -> u64 {
        g.prime(self.moving_factor())
    }

    pub fn between(upper: Orbit, lower: Orbit) -> Option<Edge> {
        Edge::ALL
            .into_iter()
            .find(|e| e.upper() == upper && e.lower() == lower)
    }

    pub fn label(self) -> &'static str {
        match self {
            Edge::TopCp => "G/C_p->G/G",
            Edge::TopCq => "G/C_q->G/G",
            Edge::CpBottom => "G/e->G/C_p",
            Edge::CqBottom => "G/e->G/C_q",
        }
    }
}

/// `C_p`-Mackey functor: `top = M(C_p/C_p)`, `bottom = M(C_p/e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpMackey {
    pub prime: Factor,
    pub top: CyclicSum,
    pub bottom: CyclicSum,
    /// `bottom x top`
    pub res: Matrix,
    /// `top x bottom`
    pub tr: Matrix,
}

/// The three `C_p`-functors of the Lewis diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseFunctor {
    /// `Z` over `Z`, restriction `p`, transfer `1`.
    L,
    /// `Z` over `Z`, restriction `1`, transfer `p` (constant).
    R,
    /// `Z/p` over `0`.
    ZmodP,
}

pub fn base_cp(kind: BaseFunctor, prime: Factor, g: GroupPQ) -> CpMackey {
    let n = g.prime(prime) as i64;
    let one_by_one = |x: i64| Matrix::from_rows(vec![vec![x]]);
    match kind {
        BaseFunctor::L => CpMackey {
            prime,
            top: CyclicSum::z(),
            bottom: CyclicSum::z(),
            res: one_by_one(n),
            tr: one_by_one(1),
        },
        BaseFunctor::R => CpMackey {
            prime,
            top: CyclicSum::z(),
            bottom: CyclicSum::z(),
            res: one_by_one(1),
            tr: one_by_one(n),
        },
        BaseFunctor::ZmodP => CpMackey {
            prime,
            top: CyclicSum::z_mod(n as u64),
            bottom: CyclicSum::zero(),
            res: Matrix::zeros(0, 1),
            tr: Matrix::zeros(1, 0),
        },
    }
}

impl CpMackey {
    fn value(&self, top: bool) -> &CyclicSum {
        if top {
            &self.top
        } else {
            &self.bottom
        }
    }
}

/// `C_pq`-Mackey functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqMackey {
    pub name: Option<String>,
    values: [CyclicSum; 4],
    res: [Matrix; 4],
    tr: [Matrix; 4],
}

/// The six functors that occur as `H^α_G(S^0; Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Named {
    Rpq,
    Lpq,
    KpLp,
    KqLq,
    KpZmodP,
    KqZmodQ,
}

impl Named {
    pub const ALL: [Named; 6] = [
        Named::Rpq,
        Named::Lpq,
        Named::KpLp,
        Named::KqLq,
        Named::KpZmodP,
        Named::KqZmodQ,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Named::Rpq => "R_pq",
            Named::Lpq => "L_pq",
            Named::KpLp => "KpLp",
            Named::KqLq => "KqLq",
            Named::KpZmodP => "KpZmodP",
            Named::KqZmodQ => "KqZmodQ",
        }
    }

    pub fn factors(self) -> (BaseFunctor, BaseFunctor) {
        use BaseFunctor::*;
        match self {
            Named::Rpq => (R, R),
            Named::Lpq => (L, L),
            Named::KpLp => (L, R),
            Named::KqLq => (R, L),
            Named::KpZmodP => (ZmodP, R),
            Named::KqZmodQ => (R, ZmodP),
        }
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Generators of `A ⊗ B` for cyclic sums: pairs `(i, j)` with `gcd(a_i, b_j) != 1`.
fn tensor_value(a: &CyclicSum, b: &CyclicSum) -> (CyclicSum, Vec<(usize, usize)>) {
    let mut orders = Vec::new();
    let mut pairs = Vec::new();
    for (i, &x) in a.orders().iter().enumerate() {
        for (j, &y) in b.orders().iter().enumerate() {
            let o = crate::group::gcd(x, y);
            if o != 1 {
                orders.push(o);
                pairs.push((i, j));
            }
        }
    }
    (CyclicSum::new(orders), pairs)
}

/// `f ⊗ h` written against the kept generator pairs.
fn tensor_map(f: &Matrix, h: &Matrix, src: &[(usize, usize)], dst: &[(usize, usize)]) -> Matrix {
    let mut m = Matrix::zeros(dst.len(), src.len());
    for (r, &(i2, j2)) in dst.iter().enumerate() {
        for (c, &(i, j)) in src.iter().enumerate() {
            m[(r, c)] = f[(i2, i)] * h[(j2, j)];
        }
    }
    m
}

/// `M ⊗ N` for a `C_p`-functor `M` and a `C_q`-functor `N`.
pub fn tensor(mp: &CpMackey, mq: &CpMackey) -> Result<PqMackey, MackeyError> {
    if mp.prime != Factor::P || mq.prime != Factor::Q {
        return Err(MackeyError::PrimeMismatch(mp.prime, mq.prime));
    }
    let cells: Vec<(CyclicSum, Vec<(usize, usize)>)> = Orbit::ALL
        .iter()
        .map(|o| {
            let (tp, tq) = o.levels();
            tensor_value(mp.value(tp), mq.value(tq))
        })
        .collect();
    let mut res = Vec::new();
    let mut tr = Vec::new();
    for e in Edge::ALL {
        let (up, lo) = (&cells[e.upper().index()], &cells[e.lower().index()]);
        let (tp, tq) = e.upper().levels();
        let (r, t) = match e.moving_factor() {
            Factor::P => {
                let id = Matrix::identity(mq.value(tq).len());
                (
                    tensor_map(&mp.res, &id, &up.1, &lo.1),
                    tensor_map(&mp.tr, &id, &lo.1, &up.1),
                )
            }
            Factor::Q => {
                let id = Matrix::identity(mp.value(tp).len());
                (
                    tensor_map(&id, &mq.res, &up.1, &lo.1),
                    tensor_map(&id, &mq.tr, &lo.1, &up.1),
                )
            }
        };
        res.push(r.reduce_rows(lo.0.orders()));
        tr.push(t.reduce_rows(up.0.orders()));
    }
    let values = cells.into_iter().map(|c| c.0).collect::<Vec<_>>();
    Ok(PqMackey {
        name: None,
        values: values.try_into().unwrap(),
        res: res.try_into().unwrap(),
        tr: tr.try_into().unwrap(),
    })
}

pub fn named(which: Named, g: GroupPQ) -> PqMackey {
    let (fp, fq) = which.factors();
    let mut m = tensor(&base_cp(fp, Factor::P, g), &base_cp(fq, Factor::Q, g))
        .expect("primes are in order");
    m.name = Some(which.label().to_string());
    m
}

impl PqMackey {
    pub fn zero() -> Self {
        PqMackey {
            name: Some("0".into()),
            values: Default::default(),
            res: std::array::from_fn(|_| Matrix::zeros(0, 0)),
            tr: std::array::from_fn(|_| Matrix::zeros(0, 0)),
        }
    }

    /// Assembles a functor from raw data; see [`PqMackey::validate`].
    pub fn from_parts(
        name: Option<String>,
        values: [CyclicSum; 4],
        res: [Matrix; 4],
        tr: [Matrix; 4],
    ) -> Result<Self, MackeyError> {
        let m = PqMackey {
            name,
            values,
            res,
            tr,
        };
        m.check_shapes()?;
        Ok(m)
    }

    pub fn value(&self, o: Orbit) -> &CyclicSum {
        &self.values[o.index()]
    }

    /// Restriction along `e`, from `e.upper()` to `e.lower()`.
    pub fn res(&self, e: Edge) -> &Matrix {
        &self.res[e.index()]
    }

    /// Transfer along `e`, from `e.lower()` to `e.upper()`.
    pub fn tr(&self, e: Edge) -> &Matrix {
        &self.tr[e.index()]
    }

    pub fn set_res(&mut self, e: Edge, m: Matrix) {
        self.res[e.index()] = m;
    }

    pub fn set_tr(&mut self, e: Edge, m: Matrix) {
        self.tr[e.index()] = m;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CyclicSum::is_empty)
    }

    pub fn direct_sum(&self, other: &PqMackey) -> PqMackey {
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}⊕{b}")),
            _ => None,
        };
        PqMackey {
            name,
            values: std::array::from_fn(|i| self.values[i].direct_sum(&other.values[i])),
            res: std::array::from_fn(|i| self.res[i].block_diag(&other.res[i])),
            tr: std::array::from_fn(|i| self.tr[i].block_diag(&other.tr[i])),
        }
    }

    /// Composite restriction from `upper` to a subgroup `lower`.
    pub fn restriction(&self, upper: Orbit, lower: Orbit) -> Option<Matrix> {
        if upper == lower {
            return Some(Matrix::identity(self.value(upper).len()));
        }
        if let Some(e) = Edge::between(upper, lower) {
            return Some(self.res(e).clone());
        }
        match (upper, lower) {
            (Orbit::Top, Orbit::Bottom) => {
                Some(self.res(Edge::CpBottom).mul(self.res(Edge::TopCp)))
            }
            _ => None,
        }
    }

    fn check_shapes(&self) -> Result<(), MackeyError> {
        for e in Edge::ALL {
            let (up, lo) = (self.value(e.upper()), self.value(e.lower()));
            if !up.is_hom(self.res(e), lo) {
                return Err(MackeyError::NotAHom(format!("res {}", e.label())));
            }
            if !lo.is_hom(self.tr(e), up) {
                return Err(MackeyError::NotAHom(format!("tr {}", e.label())));
            }
        }
        Ok(())
    }

    /// Checks well-definedness and the Mackey axioms for trivial Weyl actions:
    /// both restriction (and transfer) routes between `G/G` and `G/e` agree,
    /// `res ∘ tr` is multiplication by the index, and the `C_p`/`C_q` double
    /// coset formula holds.
    pub fn validate(&self, g: GroupPQ) -> Result<(), MackeyError> {
        self.check_shapes()?;
        let top = self.value(Orbit::Top);
        let bottom = self.value(Orbit::Bottom);

        let via_p = self.res(Edge::CpBottom).mul(self.res(Edge::TopCp));
        let via_q = self.res(Edge::CqBottom).mul(self.res(Edge::TopCq));
        if !top.maps_agree(&via_p, &via_q, bottom) {
            return Err(MackeyError::Axiom(
                "restrictions G/G -> G/e disagree".into(),
            ));
        }
        let via_p = self.tr(Edge::TopCp).mul(self.tr(Edge::CpBottom));
        let via_q = self.tr(Edge::TopCq).mul(self.tr(Edge::CqBottom));
        if !bottom.maps_agree(&via_p, &via_q, top) {
            return Err(MackeyError::Axiom("transfers G/e -> G/G disagree".into()));
        }
        for e in Edge::ALL {
            let lo = self.value(e.lower());
            let comp = self.res(e).mul(self.tr(e));
            let expect = Matrix::scalar(lo.len(), e.index_in(g) as i64);
            if !lo.maps_agree(&comp, &expect, lo) {
                return Err(MackeyError::Axiom(format!(
                    "res∘tr on {} is not the index",
                    e.label()
                )));
            }
        }
        let cp = self.value(Orbit::Cp);
        let cq = self.value(Orbit::Cq);
        let lhs = self.res(Edge::TopCp).mul(self.tr(Edge::TopCq));
        let rhs = self.tr(Edge::CpBottom).mul(self.res(Edge::CqBottom));
        if !cq.maps_agree(&lhs, &rhs, cp) {
            return Err(MackeyError::Axiom(
                "double coset formula for C_p, C_q fails".into(),
            ));
        }
        Ok(())
    }

    /// Each `tr ∘ res` along a covering edge is multiplication by the index.
    pub fn is_cohomological(&self, g: GroupPQ) -> bool {
        Edge::ALL.iter().all(|&e| {
            let up = self.value(e.upper());
            let comp = self.tr(e).mul(self.res(e));
            up.maps_agree(&comp, &Matrix::scalar(up.len(), e.index_in(g) as i64), up)
        })
    }

    /// Cohomological functors vanishing at `G/C_p` and `G/C_q` are zero;
    /// returns whether the outer values vanish.
    pub fn cohmac_check(&self, g: GroupPQ) -> Result<bool, MackeyError> {
        if !self.is_cohomological(g) {
            return Err(MackeyError::Precondition(
                "functor is not cohomological".into(),
            ));
        }
        for o in [Orbit::Cp, Orbit::Cq] {
            if !self.value(o).is_empty() {
                return Err(MackeyError::Precondition(format!(
                    "value at {o} is {} ≠ 0",
                    self.value(o)
                )));
            }
        }
        Ok(self.value(Orbit::Top).is_empty() && self.value(Orbit::Bottom).is_empty())
    }

    /// The subgroups `{x ∈ M(G/H) : res^H_J x = 0 for all J ≤ H, |J| <= k}`.
    pub fn filtration_subgroups(&self, k: u64, g: GroupPQ) -> Result<[Subgroup; 4], MackeyError> {
        let subs = Orbit::ALL
            .iter()
            .map(|&h| {
                let val = self.value(h);
                let constrained: Vec<Orbit> = h
                    .subgroups()
                    .iter()
                    .copied()
                    .filter(|j| j.stabilizer_order(g) <= k)
                    .collect();
                if constrained.is_empty() {
                    return Ok(Subgroup::whole(val));
                }
                let mut map = Matrix::zeros(0, val.len());
                let mut target = CyclicSum::zero();
                for j in constrained {
                    map = map.vstack(&self.restriction(h, j).expect("j is a subgroup of h"));
                    target = target.direct_sum(self.value(j));
                }
                Ok(Subgroup::kernel(val, &map, &target)?)
            })
            .collect::<Result<Vec<_>, MackeyError>>()?;
        Ok(subs.try_into().unwrap())
    }

    /// Sub-functor `F^k M` with the induced restrictions and transfers.
    pub fn filtration(&self, k: u64, g: GroupPQ) -> Result<PqMackey, MackeyError> {
        let subs = self.filtration_subgroups(k, g)?;
        let mut res = Vec::new();
        let mut tr = Vec::new();
        for e in Edge::ALL {
            let (up, lo) = (&subs[e.upper().index()], &subs[e.lower().index()]);
            res.push(up.induced_map(self.res(e), lo).map_err(|_| {
                MackeyError::Axiom(format!("restriction {} leaves the filtration", e.label()))
            })?);
            tr.push(lo.induced_map(self.tr(e), up).map_err(|_| {
                MackeyError::Axiom(format!("transfer {} leaves the filtration", e.label()))
            })?);
        }
        Ok(PqMackey {
            name: self.name.as_ref().map(|n| format!("F^{k}({n})")),
            values: std::array::from_fn(|i| subs[i].value().clone()),
            res: res.try_into().unwrap(),
            tr: tr.try_into().unwrap(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MackeyJson::from(self)).expect("plain data serializes")
    }
}

#[derive(Serialize)]
struct MackeyJson {
    name: Option<String>,
    values: BTreeMap<&'static str, Vec<u64>>,
    res: BTreeMap<&'static str, Matrix>,
    tr: BTreeMap<&'static str, Matrix>,
}

impl From<&PqMackey> for MackeyJson {
    fn from(m: &PqMackey) -> Self {
        MackeyJson {
            name: m.name.clone(),
            values: Orbit::ALL
                .iter()
                .map(|&o| (o.label(), m.value(o).orders().to_vec()))
                .collect(),
            res: Edge::ALL
                .iter()
                .map(|&e| (e.label(), m.res(e).clone()))
                .collect(),
            tr: Edge::ALL
                .iter()
                .map(|&e| (e.label(), m.tr(e).clone()))
                .collect(),
        }
    }
}

impl Serialize for PqMackey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MackeyJson::from(self).serialize(s)
    }
}

fn fmt_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            format!(
                "[{}]",
                m.row(i)
                    .iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            )
        })
        .collect();
    if rows.is_empty() {
        "0".into()
    } else if m.shape() == (1, 1) {
        format!("·{}", m[(0, 0)])
    } else {
        rows.join("")
    }
}

impl fmt::Display for PqMackey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            writeln!(f, "{n}:")?;
        }
        for o in Orbit::ALL {
            writeln!(f, "  {:<6} {}", o.label(), self.value(o))?;
        }
        for e in Edge::ALL {
            let empty = self.value(e.upper()).is_empty() || self.value(e.lower()).is_empty();
            if !empty {
                writeln!(
                    f,
                    "  {:<11} res {}  tr {}",
                    e.label(),
                    fmt_matrix(self.res(e)),
                    fmt_matrix(self.tr(e))
                )?;
            }
        }
        Ok(())
    }
}
