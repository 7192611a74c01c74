//! Virtual representations of `C_pq` and of its subgroups `C_p`, `C_q`.
//!
//! At the level of `HZ`-modules every `ξ^j` with `gcd(j, pq) = 1` is
//! interchangeable with `ξ`, and likewise for the `p`- and `q`-divisible
//! exponents, so a representation collapses to a [`Quadruple`]
//! `a + bξ + cξ^p + dξ^q`.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub(crate) use parse::Cursor;
pub use parse::{parse_rep, ParseError};

use crate::group::{gcd, Factor, GroupPQ};

/// A virtual representation as parsed: a trivial multiplicity plus
/// multiplicities of `ξ^j` for `1 <= j <= (pq-1)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawRep {
    pub trivial: i64,
    pub nontrivial: BTreeMap<u64, i64>,
}

/// `a + bξ + cξ^p + dξ^q`, possibly virtual.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct Quadruple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// Dimension bookkeeping of a [`Quadruple`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub dim: i64,
    pub fixed_p: i64,
    pub fixed_q: i64,
    pub fixed_g: i64,
    pub parity: u8,
}

/// `m + nξ` for `C_p` (or `C_q`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CpRep {
    pub m: i64,
    pub n: i64,
    pub prime: Factor,
}

impl CpRep {
    pub fn dim(&self) -> i64 {
        self.m + 2 * self.n
    }

    pub fn fixed_dim(&self) -> i64 {
        self.m
    }
}

impl Quadruple {
    pub const ZERO: Quadruple = Quadruple {
        a: 0,
        b: 0,
        c: 0,
        d: 0,
    };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quadruple { a, b, c, d }
    }

    pub fn parse(text: &str, g: GroupPQ) -> Result<Self, ParseError> {
        Ok(canonicalize(&parse_rep(text, g)?, g))
    }

    pub fn dim(&self) -> i64 {
        self.a + 2 * (self.b + self.c + self.d)
    }

    /// Dimension of the `C_p`- or `C_q`-fixed points.
    pub fn fixed_dim(&self, which: Factor) -> i64 {
        match which {
            Factor::P => self.a + 2 * self.c,
            Factor::Q => self.a + 2 * self.d,
        }
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            dim: self.dim(),
            fixed_p: self.fixed_dim(Factor::P),
            fixed_q: self.fixed_dim(Factor::Q),
            fixed_g: self.a,
            parity: self.a.rem_euclid(2) as u8,
        }
    }

    pub fn is_honest(&self) -> bool {
        self.a >= 0 && self.b >= 0 && self.c >= 0 && self.d >= 0
    }

    /// Restriction to `C_p` or `C_q`. Every nontrivial character that stays
    /// nontrivial on the subgroup is identified with its `ξ`.
    pub fn restrict(&self, which: Factor) -> CpRep {
        match which {
            Factor::P => CpRep {
                m: self.a + 2 * self.c,
                n: self.b + self.d,
                prime: which,
            },
            Factor::Q => CpRep {
                m: self.a + 2 * self.d,
                n: self.b + self.c,
                prime: which,
            },
        }
    }

    /// `ξ - ξ^p` or `ξ - ξ^q`, the degree shift of one `u_{ξ-ξ^p}` step.
    pub fn u_step(which: Factor) -> Quadruple {
        match which {
            Factor::P => Quadruple::new(0, 1, -1, 0),
            Factor::Q => Quadruple::new(0, 1, 0, -1),
        }
    }

    fn terms(&self) -> [(i64, &'static str); 4] {
        [
            (self.a, ""),
            (self.b, "xi"),
            (self.c, "xi_p"),
            (self.d, "xi_q"),
        ]
    }

    fn render(&self, symbols: [&str; 4], minus: &str) -> String {
        let mut out = String::new();
        for ((coef, _), sym) in self.terms().into_iter().zip(symbols) {
            if coef == 0 {
                continue;
            }
            let mag = coef.unsigned_abs();
            let body = match (sym.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => sym.to_string(),
                (false, _) => format!("{mag}{sym}"),
            };
            if out.is_empty() {
                if coef < 0 {
                    out.push_str(minus.trim());
                }
            } else {
                out.push_str(if coef < 0 { minus } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `6 + 2ξ - ξ^p - ξ^q` style.
    pub fn pretty(&self) -> String {
        self.render(["", "ξ", "ξ^p", "ξ^q"], " - ")
    }

    pub fn latex(&self) -> String {
        self.render(["", "\\xi", "\\xi^{p}", "\\xi^{q}"], " - ")
            .replace(" ", "")
    }
}

/// Grammar-valid ASCII form; parses back to the same quadruple.
impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(["", "xi", "xi_p", "xi_q"], " - "))
    }
}

impl Add for Quadruple {
    type Output = Quadruple;
    fn add(self, o: Quadruple) -> Quadruple {
        Quadruple::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Quadruple {
    type Output = Quadruple;
    fn sub(self, o: Quadruple) -> Quadruple {
        self + (-o)
    }
}

impl Neg for Quadruple {
    type Output = Quadruple;
    fn neg(self) -> Quadruple {
        Quadruple::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul<Quadruple> for i64 {
    type Output = Quadruple;
    fn mul(self, v: Quadruple) -> Quadruple {
        Quadruple::new(self * v.a, self * v.b, self * v.c, self * v.d)
    }
}

/// Collapses `ξ^j` by `gcd(j, pq)`: units go to `ξ`, multiples of `p` to
/// `ξ^p`, multiples of `q` to `ξ^q`. Only meaningful after smashing with `HZ`.
pub fn canonicalize(r: &RawRep, g: GroupPQ) -> Quadruple {
    let mut v = Quadruple {
        a: r.trivial,
        ..Quadruple::ZERO
    };
    for (&j, &mult) in &r.nontrivial {
        match gcd(j, g.order()) {
            1 => v.b += mult,
            x if x == g.p() => v.c += mult,
            x if x == g.q() => v.d += mult,
            _ => unreachable!("exponent {j} is divisible by |G|"),
        }
    }
    v
}

/// The regular representation `ρ_G`, collapsed: `1 + (p-1)(q-1)/2 ξ + (q-1)/2 ξ^p + (p-1)/2 ξ^q`.
pub fn rho(g: GroupPQ) -> Quadruple {
    let (p, q) = (g.p() as i64, g.q() as i64);
    Quadruple::new(1, (p - 1) * (q - 1) / 2, (q - 1) / 2, (p - 1) / 2)
}

/// Least `k >= 0` making `v + kρ` honest, together with `v + kρ`.
pub fn rho_shift(v: Quadruple, g: GroupPQ) -> (Quadruple, i64) {
    let r = rho(g);
    let need = |x: i64, step: i64| if x >= 0 { 0 } else { (-x + step - 1) / step };
    let k = need(v.a, r.a)
        .max(need(v.b, r.b))
        .max(need(v.c, r.c))
        .max(need(v.d, r.d));
    (v + k * r, k)
}
