//! Assembling, checking and rendering slice towers.

use std::fmt;

use serde::Serialize;
use serde_json::json;

use super::{classify, em_slice_dim, k_functor, shifts, validate_spherical, Case};
use crate::group::{Factor, GroupPQ};
use crate::mackey::{named, Orbit};
use crate::reps::{rho, rho_shift, Quadruple};

/// `Σ^suspension HK_prime⟨Z/prime⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EmCell {
    pub prime: Factor,
    pub order: u64,
    pub suspension: i64,
}

impl EmCell {
    pub fn dim(&self) -> i64 {
        em_slice_dim(self.suspension, self.order)
    }

    fn text(&self) -> String {
        let (k, z) = match self.prime {
            Factor::P => ("K_p", "Z/p"),
            Factor::Q => ("K_q", "Z/q"),
        };
        format!("Σ^{} H{k}⟨{z}⟩", self.suspension)
    }

    fn latex(&self) -> String {
        let w = self.prime;
        format!(
            r"\Sigma^{{{}}} H\mathcal{{K}}_{w}\langle \mathbb{{Z}}/{w} \rangle",
            self.suspension
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellContent {
    Spherical(Quadruple),
    Em(EmCell),
    /// Same-dimension EM cells, `q` before `p`.
    Wedge(Vec<EmCell>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceCell {
    pub dim: i64,
    pub content: CellContent,
}

impl SliceCell {
    pub fn em_summands(&self) -> &[EmCell] {
        match &self.content {
            CellContent::Spherical(_) => &[],
            CellContent::Em(e) => std::slice::from_ref(e),
            CellContent::Wedge(es) => es,
        }
    }

    fn text(&self) -> String {
        match &self.content {
            CellContent::Spherical(b) => format!("S^{{{}}} ∧ HZ", b.pretty()),
            _ => self
                .em_summands()
                .iter()
                .map(EmCell::text)
                .collect::<Vec<_>>()
                .join(" ∨ "),
        }
    }

    fn latex(&self) -> String {
        match &self.content {
            CellContent::Spherical(b) => {
                format!(r"S^{{{}}} \wedge H\underline{{\mathbb{{Z}}}}", b.latex())
            }
            _ => self
                .em_summands()
                .iter()
                .map(EmCell::latex)
                .collect::<Vec<_>>()
                .join(r" \vee "),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match &self.content {
            CellContent::Spherical(b) => {
                json!({"dim": self.dim, "kind": "sphere", "data": {"beta": b, "text": b.to_string()}})
            }
            CellContent::Em(e) => json!({"dim": self.dim, "kind": "em", "data": e}),
            CellContent::Wedge(es) => json!({"dim": self.dim, "kind": "wedge", "data": es}),
        }
    }
}

/// A connecting map `u_{ξ-ξ^p}` or `u_{ξ-ξ^q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UClass(pub Factor);

impl UClass {
    pub fn label(self) -> &'static str {
        match self.0 {
            Factor::P => "u_{ξ-ξ^p}",
            Factor::Q => "u_{ξ-ξ^q}",
        }
    }

    fn latex(self) -> String {
        format!(r"u_{{\xi-\xi^{}}}", self.0)
    }
}

impl fmt::Display for UClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceTower {
    pub group: GroupPQ,
    pub input: Quadruple,
    /// `ρ` multiples added to reach an honest representation.
    pub rho_k: i64,
    pub case: Case,
    pub shifts: (i64, i64),
    /// Sorted by `dim`, descending.
    pub cells: Vec<SliceCell>,
    /// One connecting map per EM summand, in tower order.
    pub edges: Vec<UClass>,
}

impl SliceTower {
    pub fn spherical(&self) -> Option<Quadruple> {
        self.cells.iter().find_map(|c| match c.content {
            CellContent::Spherical(b) => Some(b),
            _ => None,
        })
    }

    pub fn em_cells(&self) -> impl Iterator<Item = (i64, &EmCell)> {
        self.cells
            .iter()
            .flat_map(|c| c.em_summands().iter().map(move |e| (c.dim, e)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "group": {"p": self.group.p(), "q": self.group.q()},
            "input": self.input,
            "input_text": self.input.to_string(),
            "rho_k": self.rho_k,
            "case": {"label": self.case.label(), "p": self.case.p, "q": self.case.q},
            "shifts": {"p": self.shifts.0, "q": self.shifts.1},
            "cells": self.cells.iter().map(SliceCell::to_json).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| e.label()).collect::<Vec<_>>(),
        })
    }

    pub fn latex(&self) -> String {
        let mut out = String::new();
        out.push_str(
            "\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n\\begin{document}\n",
        );
        out.push_str(&format!(
            "Slice tower of $S^{{{}}} \\wedge H\\underline{{\\mathbb{{Z}}}}$ for $C_{{{}}}$.\n\\[\n\\begin{{array}}{{r@{{\\;:\\;}}l}}\n",
            self.input.latex(),
            self.group.order()
        ));
        let mut edges = self.edges.iter();
        let rows: Vec<String> = self
            .cells
            .iter()
            .map(|c| {
                let maps: Vec<String> = c
                    .em_summands()
                    .iter()
                    .filter_map(|_| edges.next())
                    .map(|u| u.latex())
                    .collect();
                let arrow = if maps.is_empty() {
                    String::new()
                } else {
                    format!(r" & \quad \xleftarrow{{{}}}", maps.join(", "))
                };
                format!("{}\\text{{-slice}} & {}{arrow}", c.dim, c.latex())
            })
            .collect();
        out.push_str(&rows.join(" \\\\\n"));
        out.push_str("\n\\end{array}\n\\]\n\\end{document}\n");
        out
    }
}

impl fmt::Display for SliceTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "S^{{{}}} ∧ HZ over {}  (case {}, s_p = {}, s_q = {}, rho_k = {})",
            self.input.pretty(),
            self.group,
            self.case,
            self.shifts.0,
            self.shifts.1,
            self.rho_k
        )?;
        let width = self
            .cells
            .iter()
            .map(|c| c.dim.to_string().len())
            .max()
            .unwrap_or(1);
        let mut edges = self.edges.iter();
        for c in &self.cells {
            write!(f, "{:>width$}-slice: {}", c.dim, c.text())?;
            let maps: Vec<&str> = c
                .em_summands()
                .iter()
                .filter_map(|_| edges.next())
                .map(|u| u.label())
                .collect();
            if !maps.is_empty() {
                write!(f, "   [{}]", maps.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// EM cells from the `u` steps at one prime, in descending dimension.
fn em_steps(v: Quadruple, which: Factor, s: i64, g: GroupPQ) -> Vec<EmCell> {
    let f = v.fixed_dim(which);
    let order = g.prime(which);
    let cell = |suspension| EmCell {
        prime: which,
        order,
        suspension,
    };
    if s > 0 {
        (1..=s).map(|i| cell(f - 2 * i - 1)).collect()
    } else {
        (1..=-s).rev().map(|i| cell(f + 2 * i - 2)).collect()
    }
}

fn tower_of_honest(v: Quadruple, g: GroupPQ) -> SliceTower {
    let (sp, sq) = shifts(v, g);
    let beta = v + sp * Quadruple::u_step(Factor::P) + sq * Quadruple::u_step(Factor::Q);

    let mut ems: Vec<EmCell> = em_steps(v, Factor::Q, sq, g);
    ems.extend(em_steps(v, Factor::P, sp, g));
    // stable: at equal dimension q stays ahead of p
    ems.sort_by_key(|e| std::cmp::Reverse(e.dim()));

    let mut cells: Vec<SliceCell> = Vec::new();
    for e in &ems {
        match cells.last_mut() {
            Some(last) if last.dim == e.dim() => {
                let mut members = last.em_summands().to_vec();
                members.push(*e);
                last.content = CellContent::Wedge(members);
            }
            _ => cells.push(SliceCell {
                dim: e.dim(),
                content: CellContent::Em(*e),
            }),
        }
    }
    let at = cells
        .iter()
        .position(|c| c.dim < v.dim())
        .unwrap_or(cells.len());
    cells.insert(
        at,
        SliceCell {
            dim: v.dim(),
            content: CellContent::Spherical(beta),
        },
    );
    let edges = ems.iter().map(|e| UClass(e.prime)).collect();

    SliceTower {
        group: g,
        input: v,
        rho_k: 0,
        case: classify(v, g),
        shifts: (sp, sq),
        cells,
        edges,
    }
}

/// `Σ^{-kρ}` applied to a tower: dims drop by `k|G|`, spheres by `kρ`, and
/// `HK_p` suspensions by `kq` (resp. `kp`).
fn desuspend(mut t: SliceTower, k: i64) -> SliceTower {
    let g = t.group;
    let r = rho(g);
    t.input = t.input - k * r;
    t.rho_k = k;
    for c in &mut t.cells {
        c.dim -= k * g.order() as i64;
        match &mut c.content {
            CellContent::Spherical(b) => *b = *b - k * r,
            CellContent::Em(e) => e.suspension -= k * g.prime(e.prime.other()) as i64,
            CellContent::Wedge(es) => {
                for e in es {
                    e.suspension -= k * g.prime(e.prime.other()) as i64;
                }
            }
        }
    }
    t
}

pub fn build_tower(alpha: Quadruple, g: GroupPQ) -> SliceTower {
    let (v, k) = rho_shift(alpha, g);
    desuspend(tower_of_honest(v, g), k)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TowerSweepReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl TowerSweepReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every structural check on one tower; returns the violations found.
pub fn check_tower(t: &SliceTower) -> Vec<String> {
    let g = t.group;
    let d = t.input.dim();
    let mut bad = Vec::new();
    let spheres: Vec<&SliceCell> = t
        .cells
        .iter()
        .filter(|c| matches!(c.content, CellContent::Spherical(_)))
        .collect();
    match spheres.as_slice() {
        [s] => {
            let CellContent::Spherical(beta) = s.content else {
                unreachable!()
            };
            if s.dim != d || beta.dim() != d {
                bad.push(format!("spherical cell at {} for dim {d}", s.dim));
            }
            if !validate_spherical(beta, g) {
                bad.push(format!("β = {beta} fails the slice windows"));
            }
        }
        _ => bad.push(format!("{} spherical cells", spheres.len())),
    }
    if t.cells.windows(2).any(|w| w[0].dim <= w[1].dim) {
        bad.push("cells not strictly descending".into());
    }
    for (dim, e) in t.em_cells() {
        if dim != em_slice_dim(e.suspension, e.order) {
            bad.push(format!("EM cell {e:?} sits at {dim}"));
        }
        if !named(k_functor(e.prime), g).value(Orbit::Bottom).is_empty() {
            bad.push(format!("EM cell {e:?} has underlying homotopy"));
        }
        let s = match e.prime {
            Factor::P => t.shifts.0,
            Factor::Q => t.shifts.1,
        };
        if (s > 0 && dim <= d) || (s < 0 && dim >= d) {
            bad.push(format!("EM cell at {dim} on the wrong side of {d}"));
        }
    }
    if t.edges.len() != t.em_cells().count() {
        bad.push("edge count differs from EM cell count".into());
    }
    bad
}

/// Builds and checks towers for every honest `V` with coefficients in
/// `0..=max_coeff`, including `ρ`-shift equivariance.
pub fn tower_sweep(max_coeff: i64, groups: &[GroupPQ]) -> TowerSweepReport {
    let mut report = TowerSweepReport::default();
    for &g in groups {
        for a in 0..=max_coeff {
            for b in 0..=max_coeff {
                for c in 0..=max_coeff {
                    for d in 0..=max_coeff {
                        let v = Quadruple::new(a, b, c, d);
                        report.checked += 1;
                        let t = build_tower(v, g);
                        for msg in check_tower(&t) {
                            report.failures.push(format!("{g} {v}: {msg}"));
                        }
                        let mut shifted = desuspend(build_tower(v + rho(g), g), 1);
                        shifted.rho_k = 0;
                        if shifted != t {
                            report
                                .failures
                                .push(format!("{g} {v}: tower is not ρ-equivariant"));
                        }
                    }
                }
            }
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

    fn em(prime: Factor, suspension: i64) -> CellContent {
        let order = c15().prime(prime);
        CellContent::Em(EmCell {
            prime,
            order,
            suspension,
        })
    }

    #[test]
    fn six_dimensional_sphere() {
        let t = build_tower(Quadruple::new(6, 0, 0, 0), c15());
        let cells: Vec<(i64, CellContent)> =
            t.cells.iter().map(|c| (c.dim, c.content.clone())).collect();
        assert_eq!(
            cells,
            vec![
                (15, em(Factor::Q, 3)),
                (9, em(Factor::P, 3)),
                (6, CellContent::Spherical(Quadruple::new(6, 2, -1, -1))),
            ]
        );
        assert_eq!(t.edges, vec![UClass(Factor::Q), UClass(Factor::P)]);
        assert!(check_tower(&t).is_empty());
    }

    #[test]
    fn eleven_xi_q() {
        let t = build_tower(Quadruple::new(0, 0, 0, 11), c15());
        assert_eq!(t.shifts, (-4, 8));
        let dims: Vec<i64> = t.cells.iter().map(|c| c.dim).collect();
        assert_eq!(dims, vec![95, 85, 75, 65, 55, 45, 35, 25, 22, 18, 12, 6, 0]);
        let sus: Vec<i64> = t.em_cells().map(|(_, e)| e.suspension).collect();
        assert_eq!(sus, vec![19, 17, 15, 13, 11, 9, 7, 5, 6, 4, 2, 0]);
        assert_eq!(t.spherical(), Some(Quadruple::new(0, 4, 4, 3)));
        assert_eq!(t.edges.iter().filter(|u| u.0 == Factor::Q).count(), 8);
        assert!(check_tower(&t).is_empty());
    }

    #[test]
    fn zero_is_a_single_sphere() {
        let t = build_tower(Quadruple::ZERO, c15());
        assert_eq!(
            t.cells,
            vec![SliceCell {
                dim: 0,
                content: CellContent::Spherical(Quadruple::ZERO)
            }]
        );
        assert!(t.edges.is_empty());
    }

    #[test]
    fn virtual_input_uses_rho() {
        let g = c15();
        let t = build_tower(Quadruple::new(-1, 0, 0, 0), g);
        assert_eq!(t.rho_k, 1);
        assert_eq!(t.input, Quadruple::new(-1, 0, 0, 0));
        assert_eq!(t.spherical().map(|b| b.dim()), Some(-1));
        let honest = build_tower(Quadruple::new(-1, 0, 0, 0) + rho(g), g);
        assert_eq!(honest.cells.len(), t.cells.len());
    }

    #[test]
    fn wedges_merge_equal_dimensions() {
        // search a small box for a p/q collision and check it became a wedge
        let g = c15();
        let mut found = false;
        for a in 0..30 {
            for d in 0..8 {
                let t = build_tower(Quadruple::new(a, 0, 0, d), g);
                for c in &t.cells {
                    if let CellContent::Wedge(es) = &c.content {
                        found = true;
                        assert_eq!(es[0].prime, Factor::Q);
                        assert!(es.iter().all(|e| e.dim() == c.dim));
                    }
                }
                assert!(check_tower(&t).is_empty());
            }
        }
        assert!(found);
    }

    #[test]
    fn renderings() {
        let t = build_tower(Quadruple::new(6, 0, 0, 0), c15());
        let text = t.to_string();
        assert!(text.contains("15-slice: Σ^3 HK_q⟨Z/q⟩"));
        assert!(text.contains(" 6-slice: S^{6 + 2ξ - ξ^p - ξ^q} ∧ HZ"));
        let v = t.to_json();
        assert_eq!(v["cells"][0]["kind"], "em");
        assert_eq!(v["cells"][2]["kind"], "sphere");
        assert_eq!(v["edges"][0], "u_{ξ-ξ^q}");
        assert_eq!(v["case"]["label"], "ii");
        let tex = t.latex();
        assert!(tex.starts_with("\\documentclass"));
        assert!(tex.contains("\\begin{array}"));
    }

    #[test]
    fn small_sweep() {
        let report = tower_sweep(2, &[c15()]);
        assert_eq!(report.checked, 81);
        assert!(report.all_pass(), "{:?}", report.failures);
    }
}
