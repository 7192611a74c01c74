//! Brute-force presentation of each graded piece, and the sweep comparing
//! it with the normal-form basis and the additive table.

use std::collections::HashMap;

use serde::Serialize;

use super::{group_of_degree, monomials_of_degree, RODegree, RingError};
use crate::abgroup::FinAbGroup;
use crate::cohomology::group_at;
use crate::group::GroupPQ;
use crate::linalg::Matrix;
use crate::mackey::Orbit;

pub const DEFAULT_ORACLE_BOUND: usize = 512;

/// `Z{all monomials of degree d}` modulo the torsion relations and both
/// `u·a` exchange relations multiplied by every cofactor.
pub fn snf_oracle(d: RODegree, g: GroupPQ, bound: usize) -> Result<FinAbGroup, RingError> {
    let monos = monomials_of_degree(d);
    if monos.len() > bound {
        return Err(RingError::BoundExceeded {
            degree: d,
            count: monos.len(),
            bound,
        });
    }
    if monos.is_empty() {
        return Ok(FinAbGroup::trivial());
    }
    let index: HashMap<_, _> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let unit = |i: usize, c: i64| {
        let mut r = vec![0; monos.len()];
        r[i] = c;
        r
    };
    for (i, m) in monos.iter().enumerate() {
        let [b1, b2, b3, a1, _, _] = m.0;
        for (present, n) in [(b1 > 0, g.order()), (b2 > 0, g.q()), (b3 > 0, g.p())] {
            if present {
                rows.push(unit(i, n as i64));
            }
        }
        // M = u_ξ a_{ξ^j} M'  ->  M - j·u_{ξ^j} a_ξ M'
        for (b_slot, u_slot, factor, applies) in [(1, 4, g.p(), b2 > 0), (2, 5, g.q(), b3 > 0)] {
            if a1 > 0 && applies {
                let mut e = m.0;
                e[3] -= 1;
                e[b_slot] -= 1;
                e[u_slot] += 1;
                e[0] += 1;
                let mut r = unit(i, 1);
                r[index[&super::Monomial(e)]] -= factor as i64;
                rows.push(r);
            }
        }
    }
    let rel = if rows.is_empty() {
        Matrix::zeros(0, monos.len())
    } else {
        Matrix::from_rows(rows)
    };
    Ok(FinAbGroup::presented_by(&rel)?)
}

/// Degrees `0 ≤ m ≤ max_m`, ..., and `0 ≤ a ≤ m + n + l + a_slack`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeBox {
    pub max_m: i64,
    pub max_n: i64,
    pub max_l: i64,
    pub a_bound: ABound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ABound {
    /// `a ≤` this value
    Fixed(i64),
    /// `a ≤ m + n + l +` this value
    Slack(i64),
}

impl DegreeBox {
    pub fn new(max_m: i64, max_n: i64, max_l: i64, max_a: i64) -> Self {
        DegreeBox {
            max_m,
            max_n,
            max_l,
            a_bound: ABound::Fixed(max_a),
        }
    }

    pub fn cone(max: i64, slack: i64) -> Self {
        DegreeBox {
            max_m: max,
            max_n: max,
            max_l: max,
            a_bound: ABound::Slack(slack),
        }
    }

    pub fn degrees(&self) -> Vec<RODegree> {
        let mut out = Vec::new();
        for m in 0..=self.max_m {
            for n in 0..=self.max_n {
                for l in 0..=self.max_l {
                    let top = match self.a_bound {
                        ABound::Fixed(a) => a,
                        ABound::Slack(s) => m + n + l + s,
                    };
                    out.extend((0..=top).map(|a| RODegree::new(m, n, l, a)));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub degree: RODegree,
    pub ring: String,
    pub oracle: String,
    pub table: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SweepReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares, degree by degree, the normal-form basis, the brute-force
/// presentation and `H^★_G(S^0)(G/G)` from the table.
pub fn phi_sweep(degrees: impl IntoIterator<Item = RODegree>, g: GroupPQ) -> SweepReport {
    let mut report = SweepReport::default();
    for d in degrees {
        report.checked += 1;
        let ring = group_of_degree(d, g);
        let oracle = snf_oracle(d, g, usize::MAX).map_err(|e| e.to_string());
        let table = group_at(d.to_quadruple(), Orbit::Top, g);
        if oracle.as_ref() != Ok(&ring) || table != ring {
            report.mismatches.push(Mismatch {
                degree: d,
                ring: ring.to_string(),
                oracle: oracle.map_or_else(|e| e, |o| o.to_string()),
                table: table.to_string(),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c15() -> GroupPQ {
        GroupPQ::c15()
    }

    #[test]
    fn oracle_examples() {
        let g = c15();
        assert_eq!(
            snf_oracle(RODegree::new(1, 0, 0, 0), g, 10),
            Ok(FinAbGroup::cyclic(15))
        );
        assert_eq!(
            snf_oracle(RODegree::new(1, 1, 0, 1), g, 10),
            Ok(FinAbGroup::cyclic(15))
        );
        assert_eq!(
            snf_oracle(RODegree::new(0, 0, 0, 0), g, 10),
            Ok(FinAbGroup::free(1))
        );
        assert_eq!(
            snf_oracle(RODegree::new(2, 0, 0, 3), g, 10),
            Ok(FinAbGroup::trivial())
        );
    }

    #[test]
    fn oracle_respects_bound() {
        let d = RODegree::new(4, 4, 4, 6);
        let err = snf_oracle(d, c15(), 3).unwrap_err();
        assert!(matches!(err, RingError::BoundExceeded { bound: 3, .. }));
    }

    #[test]
    fn small_sweeps_match() {
        for (p, q) in [(3, 5), (3, 7), (5, 7)] {
            let g = GroupPQ::new(p, q).unwrap();
            let report = phi_sweep(DegreeBox::new(3, 3, 3, 9).degrees(), g);
            assert!(report.all_match(), "{:?}", report.mismatches);
            assert_eq!(report.checked, 4 * 4 * 4 * 10);
        }
    }

    #[test]
    fn mixed_torsion_degree_is_cyclic() {
        let report = phi_sweep([RODegree::new(1, 1, 1, 1)], c15());
        assert!(report.all_match());
    }

    #[test]
    fn empty_sweep() {
        let report = phi_sweep([], c15());
        assert!(report.all_match());
        assert_eq!(report.checked, 0);
    }

    #[test]
    fn cone_box_counts() {
        let b = DegreeBox::cone(1, 0);
        // (m,n,l) in {0,1}^3, a from 0 to m+n+l
        assert_eq!(b.degrees().len(), 1 + 3 * 2 + 3 * 3 + 4);
    }
}
