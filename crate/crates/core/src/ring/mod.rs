//! The positive cone of `H^★_G(S^0; Z)` as a ring with generators
//! `a_ξ, a_{ξ^p}, a_{ξ^q}, u_ξ, u_{ξ^p}, u_{ξ^q}`.
//!
//! Elements are kept in normal form with respect to the relations
//!
//! ```text
//! pq·a_ξ = 0,  q·a_{ξ^p} = 0,  p·a_{ξ^q} = 0,
//! u_ξ·a_{ξ^p} = p·u_{ξ^p}·a_ξ,  u_ξ·a_{ξ^q} = q·u_{ξ^q}·a_ξ.
//! ```

mod oracle;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::FinAbGroup;
use crate::group::GroupPQ;
use crate::reps::Quadruple;

pub use oracle::{
    phi_sweep, snf_oracle, ABound, DegreeBox, Mismatch, SweepReport, DEFAULT_ORACLE_BOUND,
};
pub use parse::parse_element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("monomial {0} is not in normal form")]
    NotNormal(Monomial),
    #[error("degree {degree} has {count} monomials, more than the bound {bound}")]
    BoundExceeded {
        degree: RODegree,
        count: usize,
        bound: usize,
    },
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
}

/// The six ring generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    AXi,
    AXiP,
    AXiQ,
    UXi,
    UXiP,
    UXiQ,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::AXi,
        Generator::AXiP,
        Generator::AXiQ,
        Generator::UXi,
        Generator::UXiP,
        Generator::UXiQ,
    ];

    /// Slot in the exponent vector `(b1, b2, b3, a1, a2, a3)`.
    pub fn slot(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::AXi => "a_xi",
            Generator::AXiP => "a_xip",
            Generator::AXiQ => "a_xiq",
            Generator::UXi => "u_xi",
            Generator::UXiP => "u_xip",
            Generator::UXiQ => "u_xiq",
        }
    }
}

/// `u_ξ^{a1} u_{ξ^p}^{a2} u_{ξ^q}^{a3} a_ξ^{b1} a_{ξ^p}^{b2} a_{ξ^q}^{b3}`, stored as
/// `(b1, b2, b3, a1, a2, a3)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct Monomial(pub [u32; 6]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 6]);

    pub fn new(b1: u32, b2: u32, b3: u32, a1: u32, a2: u32, a3: u32) -> Self {
        Monomial([b1, b2, b3, a1, a2, a3])
    }

    pub fn generator(gen: Generator) -> Self {
        let mut e = [0; 6];
        e[gen.slot()] = 1;
        Monomial(e)
    }

    pub fn b(&self) -> [u32; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    pub fn a(&self) -> [u32; 3] {
        [self.0[3], self.0[4], self.0[5]]
    }

    pub fn is_normal(&self) -> bool {
        let [_, b2, b3, a1, _, _] = self.0;
        !(b2 > 0 && b3 > 0) && (a1 == 0 || (b2 == 0 && b3 == 0))
    }

    pub fn degree(&self) -> RODegree {
        let [b1, b2, b3, a1, a2, a3] = self.0.map(i64::from);
        RODegree {
            m: b1 + a1,
            n: b2 + a2,
            l: b3 + a3,
            a: a1 + a2 + a3,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    /// Additive order of the monomial's class, `0` meaning infinite.
    pub fn torsion_order(&self, g: GroupPQ) -> Result<u64, RingError> {
        if !self.is_normal() {
            return Err(RingError::NotNormal(*self));
        }
        Ok(self.annihilator(g))
    }

    /// Generator of the ideal of integers killing this monomial by the
    /// torsion relations alone; defined for any exponents.
    pub(crate) fn annihilator(&self, g: GroupPQ) -> u64 {
        let [b1, b2, b3] = self.b();
        let mut ann = 0u64;
        for (present, n) in [(b1 > 0, g.order()), (b2 > 0, g.q()), (b3 > 0, g.p())] {
            if present {
                ann = crate::group::gcd(ann, n);
            }
        }
        ann
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = [
            Generator::UXi,
            Generator::UXiP,
            Generator::UXiQ,
            Generator::AXi,
            Generator::AXiP,
            Generator::AXiQ,
        ];
        let mut parts = Vec::new();
        for gen in order {
            match self.0[gen.slot()] {
                0 => {}
                1 => parts.push(gen.name().to_string()),
                k => parts.push(format!("{}^{k}", gen.name())),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("·"))
        }
    }
}

/// The degree `m·ξ + n·ξ^p + l·ξ^q − 2a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RODegree {
    pub m: i64,
    pub n: i64,
    pub l: i64,
    pub a: i64,
}

impl RODegree {
    pub const fn new(m: i64, n: i64, l: i64, a: i64) -> Self {
        RODegree { m, n, l, a }
    }

    pub fn to_quadruple(self) -> Quadruple {
        Quadruple::new(-2 * self.a, self.m, self.n, self.l)
    }

    /// Total dimension `2(m + n + l − a)`.
    pub fn dim(self) -> i64 {
        2 * (self.m + self.n + self.l - self.a)
    }
}

impl Add for RODegree {
    type Output = RODegree;
    fn add(self, o: RODegree) -> RODegree {
        RODegree::new(self.m + o.m, self.n + o.n, self.l + o.l, self.a + o.a)
    }
}

impl fmt::Display for RODegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.m, self.n, self.l, self.a)
    }
}

/// One rewriting step applicable to a single term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// `a_{ξ^p}` and `a_{ξ^q}` together: killed by `p` and by `q`.
    DropMixed,
    /// `u_ξ a_{ξ^p} -> p·u_{ξ^p} a_ξ`
    PushP,
    /// `u_ξ a_{ξ^q} -> q·u_{ξ^q} a_ξ`
    PushQ,
    /// Reduce the coefficient into `[0, ann)`.
    Reduce,
}

pub fn applicable_rules(m: &Monomial, coeff: i64, g: GroupPQ) -> Vec<Rule> {
    let [_, b2, b3, a1, _, _] = m.0;
    let mut rules = Vec::new();
    if b2 > 0 && b3 > 0 {
        rules.push(Rule::DropMixed);
    }
    if a1 > 0 && b2 > 0 {
        rules.push(Rule::PushP);
    }
    if a1 > 0 && b3 > 0 {
        rules.push(Rule::PushQ);
    }
    let ann = m.annihilator(g) as i64;
    if ann != 0 && !(0..ann).contains(&coeff) {
        rules.push(Rule::Reduce);
    }
    rules
}

/// Applies `rule` to `coeff·m`; `None` means the term vanished.
pub fn apply_rule(m: Monomial, coeff: i64, rule: Rule, g: GroupPQ) -> Option<(Monomial, i64)> {
    let push = |m: Monomial, b_slot: usize, a_slot: usize, factor: u64| {
        let mut e = m.0;
        e[3] -= 1;
        e[b_slot] -= 1;
        e[a_slot] += 1;
        e[0] += 1;
        let c = coeff
            .checked_mul(factor as i64)
            .expect("coefficient overflow; reduce first");
        (Monomial(e), c)
    };
    let out = match rule {
        Rule::DropMixed => return None,
        Rule::PushP => push(m, 1, 4, g.p()),
        Rule::PushQ => push(m, 2, 5, g.q()),
        Rule::Reduce => (m, coeff.rem_euclid(m.annihilator(g) as i64)),
    };
    (out.1 != 0).then_some(out)
}

/// Rewrites one term to normal form, letting `pick` choose among the
/// applicable rules at every step.
pub fn normalize_term_with(
    mut m: Monomial,
    mut coeff: i64,
    g: GroupPQ,
    pick: &mut dyn FnMut(&[Rule]) -> usize,
) -> Option<(Monomial, i64)> {
    if coeff == 0 {
        return None;
    }
    loop {
        let mut rules = applicable_rules(&m, coeff, g);
        if rules.is_empty() {
            return Some((m, coeff));
        }
        // keep coefficients bounded before a push could overflow
        if coeff.unsigned_abs() > 1 << 40 && rules.contains(&Rule::Reduce) {
            rules = vec![Rule::Reduce];
        }
        let rule = rules[pick(&rules) % rules.len()];
        (m, coeff) = apply_rule(m, coeff, rule, g)?;
    }
}

/// Rule priority `DropMixed > PushP > PushQ`, reducing after every push.
fn canonical_pick(rules: &[Rule]) -> usize {
    let rank = |r: &Rule| match r {
        Rule::DropMixed => 0,
        Rule::Reduce => 1,
        Rule::PushP => 2,
        Rule::PushQ => 3,
    };
    (0..rules.len()).min_by_key(|&i| rank(&rules[i])).unwrap()
}

/// A finite integer combination of normal monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElement {
    terms: BTreeMap<Monomial, i64>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn one(g: GroupPQ) -> Self {
        RingElement::term(Monomial::ONE, 1, g)
    }

    pub fn integer(n: i64, g: GroupPQ) -> Self {
        RingElement::term(Monomial::ONE, n, g)
    }

    pub fn generator(gen: Generator, g: GroupPQ) -> Self {
        RingElement::term(Monomial::generator(gen), 1, g)
    }

    /// `coeff·m`, normalized.
    pub fn term(m: Monomial, coeff: i64, g: GroupPQ) -> Self {
        RingElement::from_terms([(m, coeff)], g)
    }

    /// Sum of arbitrary (possibly non-normal) terms, normalized.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, i64)>, g: GroupPQ) -> Self {
        RingElement::from_terms_with(terms, g, &mut canonical_pick)
    }

    pub fn from_terms_with(
        terms: impl IntoIterator<Item = (Monomial, i64)>,
        g: GroupPQ,
        pick: &mut dyn FnMut(&[Rule]) -> usize,
    ) -> Self {
        let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (m, c) in terms {
            if let Some((m, c)) = normalize_term_with(m, c, g, pick) {
                let slot = acc.entry(m).or_insert(0);
                *slot = slot.checked_add(c).expect("coefficient overflow");
                let ann = m.annihilator(g) as i64;
                if ann != 0 {
                    *slot = slot.rem_euclid(ann);
                }
            }
        }
        acc.retain(|_, c| *c != 0);
        RingElement { terms: acc }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<RODegree> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &RingElement, g: GroupPQ) -> RingElement {
        RingElement::from_terms(
            self.terms.iter().chain(&other.terms).map(|(m, c)| (*m, *c)),
            g,
        )
    }

    pub fn neg(&self, g: GroupPQ) -> RingElement {
        RingElement::from_terms(self.terms.iter().map(|(m, c)| (*m, -c)), g)
    }

    pub fn multiply(&self, other: &RingElement, g: GroupPQ) -> RingElement {
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                products.push((m1.mul(m2), c1 * c2));
            }
        }
        RingElement::from_terms(products, g)
    }

    pub fn pow(&self, k: u32, g: GroupPQ) -> RingElement {
        let mut out = RingElement::one(g);
        for _ in 0..k {
            out = out.multiply(self, g);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| serde_json::json!({"coefficient": c, "exponents": m.0, "monomial": m.to_string()}))
            .collect();
        serde_json::json!({"canonical": self.to_string(), "terms": terms})
    }

    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = [
            r"u_{\xi}",
            r"u_{\xi^p}",
            r"u_{\xi^q}",
            r"a_{\xi}",
            r"a_{\xi^p}",
            r"a_{\xi^q}",
        ];
        let slots = [3, 4, 5, 0, 1, 2];
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = String::new();
                if *c != 1 || *m == Monomial::ONE {
                    s.push_str(&c.to_string());
                }
                for (name, slot) in names.iter().zip(slots) {
                    match m.0[slot] {
                        0 => {}
                        1 => s.push_str(name),
                        k => s.push_str(&format!("{name}^{{{k}}}")),
                    }
                }
                s
            })
            .collect();
        terms.join(" + ")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| match (*c, *m == Monomial::ONE) {
                (c, true) => c.to_string(),
                (1, false) => m.to_string(),
                (c, false) => format!("{c}·{m}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

pub fn degree_of(m: &Monomial) -> RODegree {
    m.degree()
}

pub fn torsion_order(m: &Monomial, g: GroupPQ) -> Result<u64, RingError> {
    m.torsion_order(g)
}

pub fn normalize(e: &RingElement, g: GroupPQ) -> RingElement {
    RingElement::from_terms(e.terms.iter().map(|(m, c)| (*m, *c)), g)
}

pub fn multiply(x: &RingElement, y: &RingElement, g: GroupPQ) -> RingElement {
    x.multiply(y, g)
}

/// Every monomial of degree `d`, normal or not.
pub fn monomials_of_degree(d: RODegree) -> Vec<Monomial> {
    let RODegree { m, n, l, a } = d;
    let mut out = Vec::new();
    if m < 0 || n < 0 || l < 0 || a < 0 {
        return out;
    }
    for a1 in 0..=m.min(a) {
        for a2 in 0..=n.min(a - a1) {
            let a3 = a - a1 - a2;
            if a3 <= l {
                let e = [m - a1, n - a2, l - a3, a1, a2, a3].map(|x| x as u32);
                out.push(Monomial(e));
            }
        }
    }
    out
}

/// Normal monomials of degree `d` with their additive orders.
pub fn basis_of_degree(d: RODegree, g: GroupPQ) -> Vec<(Monomial, u64)> {
    monomials_of_degree(d)
        .into_iter()
        .filter(Monomial::is_normal)
        .map(|m| (m, m.annihilator(g)))
        .collect()
}

pub fn group_of_degree(d: RODegree, g: GroupPQ) -> FinAbGroup {
    let orders: Vec<u64> = basis_of_degree(d, g).into_iter().map(|(_, o)| o).collect();
    FinAbGroup::from_cyclic_orders(&orders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c15() -> GroupPQ {
        GroupPQ::c15()
    }

    fn groups() -> [GroupPQ; 3] {
        [(3, 5), (3, 7), (5, 7)].map(|(p, q)| GroupPQ::new(p, q).unwrap())
    }

    fn gen(x: Generator) -> RingElement {
        RingElement::generator(x, c15())
    }

    #[test]
    fn degrees() {
        assert_eq!(
            Monomial::generator(Generator::UXi).degree(),
            RODegree::new(1, 0, 0, 1)
        );
        assert_eq!(
            Monomial::new(2, 0, 0, 0, 0, 1).degree(),
            RODegree::new(2, 0, 1, 1)
        );
        assert_eq!(Monomial::ONE.degree(), RODegree::new(0, 0, 0, 0));
        assert_eq!(
            RODegree::new(1, 0, 0, 1).to_quadruple(),
            Quadruple::new(-2, 1, 0, 0)
        );
    }

    #[test]
    fn torsion_orders() {
        let g = c15();
        assert_eq!(
            torsion_order(&Monomial::generator(Generator::AXi), g),
            Ok(15)
        );
        assert_eq!(torsion_order(&Monomial::new(3, 1, 0, 0, 1, 0), g), Ok(5));
        assert_eq!(torsion_order(&Monomial::new(0, 0, 0, 5, 0, 0), g), Ok(0));
        let bad = Monomial::new(0, 1, 1, 0, 0, 0);
        assert_eq!(torsion_order(&bad, g), Err(RingError::NotNormal(bad)));
    }

    #[test]
    fn relation_examples() {
        let g = c15();
        let gold = gen(Generator::UXi).multiply(&gen(Generator::AXiP), g);
        assert_eq!(
            gold,
            RingElement::term(Monomial::new(1, 0, 0, 0, 1, 0), 3, g)
        );
        assert_eq!(gold.to_string(), "3·u_xip·a_xi");
        assert!(RingElement::term(Monomial::generator(Generator::AXi), 15, g).is_zero());
        assert!(RingElement::term(Monomial::new(0, 1, 1, 1, 0, 0), 1, g).is_zero());
        let sq = gen(Generator::AXi).multiply(&gen(Generator::AXi), g);
        assert_eq!(sq.to_string(), "a_xi^2");
        let x = gen(Generator::UXiQ);
        assert_eq!(RingElement::one(g).multiply(&x, g), x);
    }

    #[test]
    fn display_forms() {
        let g = c15();
        assert_eq!(RingElement::zero().to_string(), "0");
        assert_eq!(RingElement::one(g).to_string(), "1");
        assert_eq!(RingElement::integer(-4, g).to_string(), "-4");
        assert_eq!(
            RingElement::term(Monomial::generator(Generator::AXi), -1, g).to_string(),
            "14·a_xi"
        );
    }

    #[test]
    fn basis_examples() {
        let g = c15();
        assert_eq!(
            basis_of_degree(RODegree::new(1, 0, 0, 1), g),
            vec![(Monomial::new(0, 0, 0, 1, 0, 0), 0)]
        );
        let b = basis_of_degree(RODegree::new(1, 1, 1, 1), g);
        assert_eq!(b.len(), 2);
        assert!(b.contains(&(Monomial::new(1, 1, 0, 0, 0, 1), 5)));
        assert!(b.contains(&(Monomial::new(1, 0, 1, 0, 1, 0), 3)));
        assert!(basis_of_degree(RODegree::new(2, 0, 0, 3), g).is_empty());
        assert_eq!(
            group_of_degree(RODegree::new(1, 0, 0, 0), g),
            FinAbGroup::cyclic(15)
        );
        assert_eq!(
            group_of_degree(RODegree::new(0, 1, 0, 0), g),
            FinAbGroup::cyclic(5)
        );
        assert_eq!(
            group_of_degree(RODegree::new(1, 1, 1, 1), g),
            FinAbGroup::cyclic(15)
        );
    }

    #[test]
    fn dimension_zero_has_single_free_generator() {
        let g = c15();
        for m in 0..4 {
            for n in 0..4 {
                for l in 0..4 {
                    let b = basis_of_degree(RODegree::new(m, n, l, m + n + l), g);
                    assert_eq!(
                        b,
                        vec![(Monomial::new(0, 0, 0, m as u32, n as u32, l as u32), 0)]
                    );
                }
            }
        }
    }

    /// Closed-form generators: three families indexed by which Euler class
    /// carries the excess degree.
    fn closed_form(d: RODegree) -> Vec<Monomial> {
        let RODegree { m, n, l, a } = d;
        let mut out = Vec::new();
        let mut push = |e: [i64; 6]| {
            if e.iter().all(|&x| x >= 0) {
                let m = Monomial(e.map(|x| x as u32));
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        };
        if a >= l + n && m >= a - (l + n) {
            push([m - a + n + l, 0, 0, a - n - l, n, l]);
        }
        if a >= l && n >= a - l {
            push([m, n - a + l, 0, 0, a - l, l]);
        }
        if a >= n && l >= a - n {
            push([m, 0, l - a + n, 0, n, a - n]);
        }
        out.sort();
        out
    }

    #[test]
    fn closed_forms_cover_the_basis() {
        let g = c15();
        for m in 0..5 {
            for n in 0..5 {
                for l in 0..5 {
                    for a in 0..=m + n + l + 1 {
                        let d = RODegree::new(m, n, l, a);
                        let mut basis: Vec<Monomial> =
                            basis_of_degree(d, g).into_iter().map(|(m, _)| m).collect();
                        basis.sort();
                        assert_eq!(basis, closed_form(d), "degree {d}");
                    }
                }
            }
        }
    }

    fn random_monomial(rng: &mut StdRng) -> Monomial {
        Monomial(std::array::from_fn(|_| rng.gen_range(0..=8)))
    }

    #[test]
    fn confluence_under_random_strategies() {
        let mut rng = StdRng::seed_from_u64(7);
        for g in groups() {
            for _ in 0..300 {
                let m = random_monomial(&mut rng);
                let c = rng.gen_range(-50..50);
                let expected = RingElement::term(m, c, g);
                for _ in 0..5 {
                    let mut strategy = |rules: &[Rule]| rng.gen_range(0..rules.len());
                    let got = RingElement::from_terms_with([(m, c)], g, &mut strategy);
                    assert_eq!(got, expected, "{c}·{m} over {g}");
                }
            }
        }
    }

    fn element(g: GroupPQ) -> impl Strategy<Value = RingElement> {
        proptest::collection::vec((proptest::array::uniform6(0u32..3), -20i64..20), 0..4).prop_map(
            move |ts| RingElement::from_terms(ts.into_iter().map(|(e, c)| (Monomial(e), c)), g),
        )
    }

    fn homogeneous(g: GroupPQ) -> impl Strategy<Value = RingElement> {
        (
            0i64..4,
            0i64..4,
            0i64..4,
            0i64..6,
            proptest::collection::vec(-20i64..20, 4),
        )
            .prop_map(move |(m, n, l, a, cs)| {
                let monos = monomials_of_degree(RODegree::new(m, n, l, a));
                RingElement::from_terms(monos.into_iter().zip(cs), g)
            })
    }

    proptest! {
        #[test]
        fn normal_forms_are_normal(x in element(GroupPQ::c15())) {
            let g = GroupPQ::c15();
            for (m, c) in x.terms() {
                prop_assert!(m.is_normal());
                let ord = m.annihilator(g) as i64;
                prop_assert!(*c != 0);
                if ord != 0 {
                    prop_assert!((0..ord).contains(c));
                }
            }
            prop_assert_eq!(&normalize(&x, g), &x);
        }

        #[test]
        fn multiplication_is_commutative_and_associative(x in element(GroupPQ::c15()),
                                                         y in element(GroupPQ::c15()),
                                                         z in element(GroupPQ::c15())) {
            let g = GroupPQ::c15();
            prop_assert_eq!(x.multiply(&y, g), y.multiply(&x, g));
            prop_assert_eq!(x.multiply(&y, g).multiply(&z, g), x.multiply(&y.multiply(&z, g), g));
        }

        #[test]
        fn multiplication_distributes(x in element(GroupPQ::c15()), y in element(GroupPQ::c15()),
                                      z in element(GroupPQ::c15())) {
            let g = GroupPQ::c15();
            prop_assert_eq!(x.multiply(&y.add(&z, g), g), x.multiply(&y, g).add(&x.multiply(&z, g), g));
        }

        #[test]
        fn degree_is_additive(x in homogeneous(GroupPQ::c15()), y in homogeneous(GroupPQ::c15())) {
            let g = GroupPQ::c15();
            let xy = x.multiply(&y, g);
            if let (Some(dx), Some(dy), false) = (x.degree(), y.degree(), xy.is_zero()) {
                prop_assert_eq!(xy.degree(), Some(dx + dy));
            }
        }

        #[test]
        fn display_round_trips(x in element(GroupPQ::c15())) {
            let g = GroupPQ::c15();
            prop_assert_eq!(parse_element(&x.to_string(), g).unwrap(), x);
        }
    }
}
