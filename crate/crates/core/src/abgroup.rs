//! Finitely generated abelian groups.
//!
//! [`FinAbGroup`] is the isomorphism class (invariant factors). [`CyclicSum`]
//! is a concrete group with chosen cyclic generators, which is what Mackey
//! functor values and the matrices between them are written against.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{integer_kernel, smith, Lattice, LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupShapeError {
    #[error("invariant factor 1 is not allowed")]
    UnitFactor,
    #[error("invariant factors {0} and {1} do not divide")]
    NotAChain(u64, u64),
    #[error("free factors must come after the torsion factors")]
    FreeBeforeTorsion,
}

/// Isomorphism class of a finitely generated abelian group, as invariant
/// factors `d_1 | d_2 | ... | d_k` followed by one `0` per free summand.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinAbGroup {
    invariant_factors: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            invariant_factors: vec![0; rank],
        }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[n])
    }

    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<Self, GroupShapeError> {
        let mut seen_free = false;
        let mut prev: Option<u64> = None;
        for &f in &factors {
            match f {
                0 => seen_free = true,
                1 => return Err(GroupShapeError::UnitFactor),
                _ if seen_free => return Err(GroupShapeError::FreeBeforeTorsion),
                _ => {
                    if let Some(d) = prev {
                        if f % d != 0 {
                            return Err(GroupShapeError::NotAChain(d, f));
                        }
                    }
                    prev = Some(f);
                }
            }
        }
        Ok(FinAbGroup {
            invariant_factors: factors,
        })
    }

    /// Normal form of `⊕ Z/n_i` (with `Z/0 = Z`).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &o) in orders.iter().enumerate() {
            m[(i, i)] = i64::try_from(o).expect("cyclic order out of range");
        }
        let s = smith(&m).expect("diagonal smith form cannot overflow");
        let invariant_factors = s
            .diagonal
            .into_iter()
            .filter(|&d| d != 1)
            .map(|d| d as u64)
            .collect();
        FinAbGroup { invariant_factors }
    }

    /// `Z^n / R`, where the rows of the `r x n` matrix generate `R`.
    pub fn presented_by(relations: &Matrix) -> Result<Self, LinalgError> {
        let s = smith(relations)?;
        let mut invariant_factors: Vec<u64> = s.diagonal[..s.rank]
            .iter()
            .filter(|&&d| d != 1)
            .map(|&d| d as u64)
            .collect();
        invariant_factors.extend(std::iter::repeat_n(0, relations.cols() - s.rank));
        Ok(FinAbGroup { invariant_factors })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|&&d| d == 0).count()
    }

    /// Order of the group, or `None` if it is infinite.
    pub fn order(&self) -> Option<u64> {
        self.invariant_factors
            .iter()
            .try_fold(1u64, |acc, &d| (d != 0).then(|| acc * d))
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut all = self.invariant_factors.clone();
        all.extend_from_slice(&other.invariant_factors);
        Self::from_cyclic_orders(&all)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .filter(|&&d| d != 0)
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({self})")
    }
}

/// `⊕ Z/n_i` with a fixed generator per summand (`n_i = 0` is a `Z`).
/// Elements are integer coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CyclicSum {
    orders: Vec<u64>,
}

impl CyclicSum {
    /// Panics if some order is `1`; trivial summands are not kept as generators.
    pub fn new(orders: Vec<u64>) -> Self {
        assert!(orders.iter().all(|&o| o != 1), "cyclic summand of order 1");
        CyclicSum { orders }
    }

    pub fn zero() -> Self {
        CyclicSum::default()
    }

    pub fn z() -> Self {
        CyclicSum::new(vec![0])
    }

    pub fn z_mod(n: u64) -> Self {
        if n == 1 {
            Self::zero()
        } else {
            CyclicSum::new(vec![n])
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn group(&self) -> FinAbGroup {
        FinAbGroup::from_cyclic_orders(&self.orders)
    }

    pub fn direct_sum(&self, other: &CyclicSum) -> CyclicSum {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        CyclicSum { orders }
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.orders)
            .map(|(&v, &o)| if o == 0 { v } else { v.rem_euclid(o as i64) })
            .collect()
    }

    pub fn is_zero_element(&self, x: &[i64]) -> bool {
        self.reduce(x).iter().all(|&v| v == 0)
    }

    /// Whether `m` (rows indexed by `target`, columns by `self`) respects
    /// the orders, i.e. defines a homomorphism `self -> target`.
    pub fn is_hom(&self, m: &Matrix, target: &CyclicSum) -> bool {
        if m.shape() != (target.len(), self.len()) {
            return false;
        }
        self.orders.iter().enumerate().all(|(j, &s)| {
            s == 0 || {
                let image: Vec<i64> = m.column(j).into_iter().map(|x| x * s as i64).collect();
                target.is_zero_element(&image)
            }
        })
    }

    /// Whether two homomorphisms `self -> target` agree.
    pub fn maps_agree(&self, a: &Matrix, b: &Matrix, target: &CyclicSum) -> bool {
        a.shape() == b.shape() && a.reduce_rows(&target.orders) == b.reduce_rows(&target.orders)
    }
}

impl fmt::Display for CyclicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .orders
            .iter()
            .map(|&o| {
                if o == 0 {
                    "Z".to_string()
                } else {
                    format!("Z/{o}")
                }
            })
            .collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

#[derive(Debug, Clone)]
enum Embedding {
    Whole,
    Zero,
    Proper {
        lattice: Lattice,
        to_new: Matrix,
        kept: Vec<usize>,
    },
}

/// A subgroup of a [`CyclicSum`], itself presented as a `CyclicSum` together
/// with its inclusion map.
#[derive(Debug, Clone)]
pub struct Subgroup {
    ambient: CyclicSum,
    value: CyclicSum,
    inclusion: Matrix,
    embedding: Embedding,
}

impl Subgroup {
    pub fn whole(ambient: &CyclicSum) -> Self {
        Subgroup {
            ambient: ambient.clone(),
            value: ambient.clone(),
            inclusion: Matrix::identity(ambient.len()),
            embedding: Embedding::Whole,
        }
    }

    pub fn zero(ambient: &CyclicSum) -> Self {
        Subgroup {
            ambient: ambient.clone(),
            value: CyclicSum::zero(),
            inclusion: Matrix::zeros(ambient.len(), 0),
            embedding: Embedding::Zero,
        }
    }

    /// Kernel of the homomorphism `map: ambient -> target`.
    pub fn kernel(
        ambient: &CyclicSum,
        map: &Matrix,
        target: &CyclicSum,
    ) -> Result<Self, LinalgError> {
        let n = ambient.len();
        let m = target.len();
        if (0..n).all(|j| target.is_zero_element(&map.column(j))) {
            return Ok(Self::whole(ambient));
        }
        // x lies in the kernel lattice iff (x, y) solves [F | T] (x, y) = 0 for some y
        let mut stacked = Matrix::zeros(m, n + m);
        for i in 0..m {
            for j in 0..n {
                stacked[(i, j)] = map[(i, j)];
            }
            stacked[(i, n + i)] = target.orders[i] as i64;
        }
        let kernel = integer_kernel(&stacked)?;
        let mut gens: Vec<Vec<i64>> = (0..kernel.cols())
            .map(|j| kernel.column(j)[..n].to_vec())
            .collect();
        for (j, &s) in ambient.orders.iter().enumerate() {
            if s > 0 {
                let mut e = vec![0; n];
                e[j] = s as i64;
                gens.push(e);
            }
        }
        let lattice = Lattice::spanned_by(n, &Matrix::from_columns(n, &gens))?;
        let r = lattice.rank();

        let mut relations = Vec::new();
        for (j, &s) in ambient.orders.iter().enumerate() {
            if s > 0 {
                let mut e = vec![0; n];
                e[j] = s as i64;
                relations.push(lattice.coordinates(&e)?);
            }
        }
        let rel = Matrix::from_columns(r, &relations);
        let s = smith(&rel)?;
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        let mut columns = Vec::new();
        for i in 0..r {
            let d = if i < s.rank { s.diagonal[i] as u64 } else { 0 };
            if d == 1 {
                continue;
            }
            kept.push(i);
            orders.push(d);
            let gen = lattice.basis().apply(&s.u_inv.column(i));
            columns.push(ambient.reduce(&gen));
        }
        if kept.is_empty() {
            return Ok(Self::zero(ambient));
        }
        Ok(Subgroup {
            ambient: ambient.clone(),
            value: CyclicSum::new(orders),
            inclusion: Matrix::from_columns(n, &columns),
            embedding: Embedding::Proper {
                lattice,
                to_new: s.u,
                kept,
            },
        })
    }

    pub fn value(&self) -> &CyclicSum {
        &self.value
    }

    pub fn ambient(&self) -> &CyclicSum {
        &self.ambient
    }

    /// Columns are the subgroup generators in ambient coordinates.
    pub fn inclusion(&self) -> &Matrix {
        &self.inclusion
    }

    pub fn is_whole(&self) -> bool {
        matches!(self.embedding, Embedding::Whole)
    }

    /// Coordinates in the subgroup's generators of an ambient element,
    /// or `Unsolvable` if it does not lie in the subgroup.
    pub fn coordinates(&self, x: &[i64]) -> Result<Vec<i64>, LinalgError> {
        match &self.embedding {
            Embedding::Whole => Ok(self.ambient.reduce(x)),
            Embedding::Zero => {
                if self.ambient.is_zero_element(x) {
                    Ok(Vec::new())
                } else {
                    Err(LinalgError::Unsolvable)
                }
            }
            Embedding::Proper {
                lattice,
                to_new,
                kept,
            } => {
                let c = lattice.coordinates(x)?;
                let y = to_new.apply(&c);
                Ok(self
                    .value
                    .reduce(&kept.iter().map(|&i| y[i]).collect::<Vec<_>>()))
            }
        }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.coordinates(x).is_ok()
    }

    /// Matrix of `f` restricted to `self` and corestricted to `target`.
    pub fn induced_map(&self, f: &Matrix, target: &Subgroup) -> Result<Matrix, LinalgError> {
        let cols = (0..self.value.len())
            .map(|j| target.coordinates(&f.apply(&self.inclusion.column(j))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_columns(target.value.len(), &cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normal_forms() {
        assert_eq!(
            FinAbGroup::from_cyclic_orders(&[3, 5]).invariant_factors(),
            &[15]
        );
        assert_eq!(
            FinAbGroup::from_cyclic_orders(&[0, 3, 1]).invariant_factors(),
            &[3, 0]
        );
        assert_eq!(
            FinAbGroup::from_cyclic_orders(&[6, 4]).invariant_factors(),
            &[2, 12]
        );
        assert!(FinAbGroup::cyclic(1).is_trivial());
        assert_eq!(FinAbGroup::cyclic(0), FinAbGroup::free(1));
        assert_eq!(
            FinAbGroup::from_cyclic_orders(&[3, 0, 0]).to_string(),
            "Z/3 ⊕ Z^2"
        );
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn shape_validation() {
        assert!(FinAbGroup::from_invariant_factors(vec![3, 15, 0]).is_ok());
        assert_eq!(
            FinAbGroup::from_invariant_factors(vec![1]),
            Err(GroupShapeError::UnitFactor)
        );
        assert_eq!(
            FinAbGroup::from_invariant_factors(vec![3, 5]),
            Err(GroupShapeError::NotAChain(3, 5))
        );
        assert_eq!(
            FinAbGroup::from_invariant_factors(vec![0, 3]),
            Err(GroupShapeError::FreeBeforeTorsion)
        );
    }

    #[test]
    fn order_and_rank() {
        let g = FinAbGroup::from_cyclic_orders(&[3, 5]);
        assert_eq!(g.order(), Some(15));
        assert_eq!(FinAbGroup::free(2).order(), None);
        assert_eq!(FinAbGroup::free(2).free_rank(), 2);
    }

    #[test]
    fn kernel_of_multiplication() {
        // ·3 : Z/15 -> Z/15 has kernel generated by 5, of order 3
        let a = CyclicSum::z_mod(15);
        let k = Subgroup::kernel(&a, &Matrix::from_rows(vec![vec![3]]), &a).unwrap();
        assert_eq!(k.value().group(), FinAbGroup::cyclic(3));
        assert!(k.contains(&[5]));
        assert!(!k.contains(&[3]));
    }

    #[test]
    fn kernel_of_projection_from_free() {
        // Z ⊕ Z/6 -> Z/3, (x, y) |-> x + y
        let a = CyclicSum::new(vec![0, 6]);
        let t = CyclicSum::z_mod(3);
        let k = Subgroup::kernel(&a, &Matrix::from_rows(vec![vec![1, 1]]), &t).unwrap();
        assert_eq!(k.value().group(), FinAbGroup::from_cyclic_orders(&[0, 2]));
        assert!(k.contains(&[1, 2]));
        assert!(k.contains(&[3, 0]));
        assert!(!k.contains(&[1, 0]));
    }

    #[test]
    fn identity_has_zero_kernel() {
        let a = CyclicSum::new(vec![0, 5]);
        let k = Subgroup::kernel(&a, &Matrix::identity(2), &a).unwrap();
        assert!(k.value().is_empty());
    }

    proptest! {
        // Kernel of x |-> k x on Z/n has order gcd(k, n).
        #[test]
        fn kernel_order_matches_gcd(n in 2u64..60, k in 0i64..60) {
            let a = CyclicSum::z_mod(n);
            let sub = Subgroup::kernel(&a, &Matrix::from_rows(vec![vec![k]]), &a).unwrap();
            let expected = crate::group::gcd(n, k as u64);
            prop_assert_eq!(sub.value().group(), FinAbGroup::cyclic(expected));
            for j in 0..sub.value().len() {
                let g = sub.inclusion().column(j);
                prop_assert!(a.is_zero_element(&[g[0] * k]));
            }
        }
    }
}
