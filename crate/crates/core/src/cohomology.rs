//! `H^α_G(S^0; Z)` as a Mackey functor, read off a case table in the
//! dimensions of `α`, `α^{C_p}` and `α^{C_q}`.

use crate::abgroup::FinAbGroup;
use crate::group::GroupPQ;
use crate::mackey::{named, Named, Orbit, PqMackey};
use crate::reps::Quadruple;

/// Which Mackey functor `H^α_G(S^0)` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctorName {
    Zero,
    Single(Named),
    KpPlusKq,
}

impl FunctorName {
    pub fn label(self) -> &'static str {
        match self {
            FunctorName::Zero => "Zero",
            FunctorName::Single(n) => n.label(),
            FunctorName::KpPlusKq => "KpZmodP⊕KqZmodQ",
        }
    }

    pub fn functor(self, g: GroupPQ) -> PqMackey {
        match self {
            FunctorName::Zero => {
                let mut z = PqMackey::zero();
                z.name = Some("Zero".into());
                z
            }
            FunctorName::Single(n) => named(n, g),
            FunctorName::KpPlusKq => named(Named::KpZmodP, g).direct_sum(&named(Named::KqZmodQ, g)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyAnswer {
    pub functor_name: FunctorName,
    /// Row of the case table, 1 through 11; 11 is the fall-through.
    pub row: u8,
    pub functor: PqMackey,
}

impl CohomologyAnswer {
    pub fn to_json(&self, alpha: Quadruple) -> serde_json::Value {
        serde_json::json!({
            "alpha": alpha,
            "functor_name": self.functor_name.label(),
            "row": self.row,
            "functor": self.functor.to_json(),
        })
    }
}

/// Every row whose conditions hold for the given dimensions.
pub fn matching_rows(dim: i64, fp: i64, fq: i64) -> Vec<(u8, FunctorName)> {
    use FunctorName::*;
    use Named::*;
    let odd = dim.rem_euclid(2) == 1;
    let even = !odd;
    let rows: [(bool, FunctorName); 10] = [
        (dim < 0 && fp > 1 && fq <= 1 && odd, Single(KpZmodP)),
        (dim < 0 && fp <= 1 && fq > 1 && odd, Single(KqZmodQ)),
        (dim < 0 && fp > 1 && fq > 1 && odd, KpPlusKq),
        (dim > 0 && fp <= 0 && fq <= 0 && even, KpPlusKq),
        (dim > 0 && fp <= 0 && fq > 0 && even, Single(KpZmodP)),
        (dim > 0 && fp > 0 && fq <= 0 && even, Single(KqZmodQ)),
        (dim == 0 && fp <= 0 && fq <= 0, Single(Rpq)),
        (dim == 0 && fp > 0 && fq > 0, Single(Lpq)),
        (dim == 0 && fp > 0 && fq <= 0, Single(KpLp)),
        (dim == 0 && fp <= 0 && fq > 0, Single(KqLq)),
    ];
    rows.iter()
        .enumerate()
        .filter(|(_, (hit, _))| *hit)
        .map(|(i, &(_, f))| (i as u8 + 1, f))
        .collect()
}

pub fn classify(alpha: Quadruple) -> (u8, FunctorName) {
    let inv = alpha.invariants();
    matching_rows(inv.dim, inv.fixed_p, inv.fixed_q)
        .first()
        .copied()
        .unwrap_or((11, FunctorName::Zero))
}

pub fn point_cohomology(alpha: Quadruple, g: GroupPQ) -> CohomologyAnswer {
    let (row, name) = classify(alpha);
    CohomologyAnswer {
        functor_name: name,
        row,
        functor: name.functor(g),
    }
}

pub fn group_at(alpha: Quadruple, orbit: Orbit, g: GroupPQ) -> FinAbGroup {
    point_cohomology(alpha, g).functor.value(orbit).group()
}
