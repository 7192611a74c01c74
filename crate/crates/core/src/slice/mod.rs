//! Slice towers of `S^V ∧ HZ` over `C_pq`.
//!
//! A `C_p`-spectrum `S^{m + nξ} ∧ HZ` of dimension `D = m + 2n` is a
//! `D`-slice exactly when `D ≤ m·p ≤ D + 3p`. Shifting `V` by
//! `u_{ξ-ξ^p}` moves the `C_p` fixed dimension by 2 and leaves the `C_q`
//! restriction alone, so the two primes are handled independently.

mod tower;

use std::fmt;

use serde::Serialize;

use crate::group::{Factor, GroupPQ};
use crate::mackey::{named, Named, PqMackey};
use crate::reps::Quadruple;

pub use tower::{
    build_tower, check_tower, tower_sweep, CellContent, EmCell, SliceCell, SliceTower,
    TowerSweepReport, UClass,
};

/// Admissible `C_p` fixed dimensions for a `D`-slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceWindow {
    pub valid_m: Vec<i64>,
}

impl SliceWindow {
    pub fn contains(&self, m: i64) -> bool {
        self.valid_m.contains(&m)
    }
}

pub fn window(dim: i64, prime: u64, parity: u8) -> SliceWindow {
    let p = prime as i64;
    let lo = dim.div_euclid(p) - 1;
    let hi = (dim + 3 * p).div_euclid(p) + 1;
    let valid_m = (lo..=hi)
        .filter(|m| m.rem_euclid(2) == i64::from(parity) && m * p >= dim && m * p <= dim + 3 * p)
        .collect();
    SliceWindow { valid_m }
}

/// Position of a restriction relative to the `dim V` window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    /// Inside the window.
    Slice,
    /// Strictly above: only `m·p ≥ D` holds.
    Ge,
    /// Strictly below: only `m·p ≤ D + 3p` holds.
    Le,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Case {
    pub p: Tag,
    pub q: Tag,
}

impl Case {
    /// Roman numeral of the matching case, `"slice"` if nothing moves.
    pub fn label(self) -> &'static str {
        use Tag::*;
        match (self.p, self.q) {
            (Slice, Slice) => "slice",
            (Ge, Le) => "iii",
            (Le, Ge) => "iv",
            (Ge, _) | (_, Ge) => "ii",
            _ => "i",
        }
    }

    pub fn tag(self, which: Factor) -> Tag {
        match which {
            Factor::P => self.p,
            Factor::Q => self.q,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn tag_at(v: Quadruple, which: Factor, g: GroupPQ) -> Tag {
    let p = g.prime(which) as i64;
    let d = v.dim();
    let m = v.restrict(which).m;
    match (m * p >= d, m * p <= d + 3 * p) {
        (true, true) => Tag::Slice,
        (true, false) => Tag::Ge,
        (false, true) => Tag::Le,
        (false, false) => unreachable!("the two half-lines cover Z"),
    }
}

pub fn classify(v: Quadruple, g: GroupPQ) -> Case {
    Case {
        p: tag_at(v, Factor::P, g),
        q: tag_at(v, Factor::Q, g),
    }
}

/// Signed number of `u_{ξ-ξ^prime}` steps from `V` to its spherical slice.
pub fn shift_at(v: Quadruple, which: Factor, g: GroupPQ) -> i64 {
    let p = g.prime(which) as i64;
    let d = v.dim();
    let m = v.restrict(which).m;
    let ceil_div = |x: i64, y: i64| -(-x).div_euclid(y);
    match tag_at(v, which, g) {
        Tag::Slice => 0,
        Tag::Ge => ceil_div(m * p - d - 3 * p, 2 * p),
        Tag::Le => -ceil_div(d - m * p, 2 * p),
    }
}

/// `(s_p, s_q)`.
pub fn shifts(v: Quadruple, g: GroupPQ) -> (i64, i64) {
    (shift_at(v, Factor::P, g), shift_at(v, Factor::Q, g))
}

/// `V + s_p(ξ − ξ^p) + s_q(ξ − ξ^q)`.
pub fn spherical_slice(v: Quadruple, g: GroupPQ) -> Quadruple {
    let (sp, sq) = shifts(v, g);
    v + sp * Quadruple::u_step(Factor::P) + sq * Quadruple::u_step(Factor::Q)
}

/// Nonzero homotopy of the cofiber of `u_{l(ξ-ξ^prime)}` on `S^V ∧ HZ`:
/// degrees `f-2, f-4, ..., f-2l` with `f` the fixed dimension at `prime`.
pub fn cofiber_homotopy(v: Quadruple, which: Factor, l: u64) -> Vec<(i64, Named)> {
    let f = v.fixed_dim(which);
    let k = k_functor(which);
    (1..=l as i64).map(|i| (f - 2 * i, k)).collect()
}

/// `K_p⟨Z/p⟩` or `K_q⟨Z/q⟩`.
pub fn k_functor(which: Factor) -> Named {
    match which {
        Factor::P => Named::KpZmodP,
        Factor::Q => Named::KqZmodQ,
    }
}

pub fn em_slice_dim(suspension: i64, prime: u64) -> i64 {
    prime as i64 * suspension
}

/// The slice dimension of `Σ^n HK_prime⟨Z/prime⟩`, located as the unique
/// `s` where `F^{⌊(s+n-1)/n⌋}` and `F^{⌊(s+n)/n⌋}` of the functor differ;
/// the slice is then `t = s + n`.
pub fn em_slice_dim_by_filtration(n: i64, which: Factor, g: GroupPQ) -> Result<i64, String> {
    if n < 0 {
        return Err(format!("negative suspension {n}"));
    }
    if n == 0 {
        // a single homotopy Mackey functor in degree 0 is a 0-slice
        return Ok(0);
    }
    let k = named(k_functor(which), g);
    let bound = n * g.order() as i64 + n;
    let levels = (0..=(bound + n) / n)
        .map(|j| {
            let mut f = k.filtration(j as u64, g).map_err(|e| e.to_string())?;
            f.name = None;
            Ok(f)
        })
        .collect::<Result<Vec<PqMackey>, String>>()?;
    let jumps: Vec<i64> = (0..=bound)
        .filter(|s| levels[((s + n - 1) / n) as usize] != levels[((s + n) / n) as usize])
        .collect();
    match jumps.as_slice() {
        [s] => Ok(s + n),
        other => Err(format!("expected one filtration jump, found {other:?}")),
    }
}

/// Whether `S^β ∧ HZ` is a `dim β`-slice, tested on both restrictions.
pub fn validate_spherical(beta: Quadruple, g: GroupPQ) -> bool {
    let d = beta.dim();
    let parity = d.rem_euclid(2) as u8;
    [Factor::P, Factor::Q]
        .into_iter()
        .all(|w| window(d, g.prime(w), parity).contains(beta.restrict(w).m))
}
