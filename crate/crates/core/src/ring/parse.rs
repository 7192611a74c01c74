//! Ring expressions.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := power (('*' | '·') power)*
//! power   := atom ('^' INT)?
//! atom    := INT | gen | '(' sum ')'
//! gen     := a_xi | a_xip | a_xiq | u_xi | u_xip | u_xiq
//! ```
//!
//! The canonical output of [`RingElement`]'s `Display` is accepted, so
//! printed elements parse back to themselves.

use super::{Generator, RingElement};
use crate::group::GroupPQ;
use crate::reps::{Cursor, ParseError};

pub fn parse_element(text: &str, g: GroupPQ) -> Result<RingElement, ParseError> {
    let mut cur = Cursor::new(text);
    let e = sum(&mut cur, g)?;
    if !cur.at_end() {
        return Err(cur.unexpected("'+', '*' or end of input"));
    }
    Ok(e)
}

fn sum(cur: &mut Cursor, g: GroupPQ) -> Result<RingElement, ParseError> {
    let mut acc = if cur.eat('-') {
        product(cur, g)?.neg(g)
    } else {
        product(cur, g)?
    };
    loop {
        if cur.eat('+') {
            acc = acc.add(&product(cur, g)?, g);
        } else if cur.eat('-') {
            acc = acc.add(&product(cur, g)?.neg(g), g);
        } else {
            return Ok(acc);
        }
    }
}

fn product(cur: &mut Cursor, g: GroupPQ) -> Result<RingElement, ParseError> {
    let mut acc = power(cur, g)?;
    while cur.eat('*') || cur.eat('·') {
        acc = acc.multiply(&power(cur, g)?, g);
    }
    Ok(acc)
}

fn power(cur: &mut Cursor, g: GroupPQ) -> Result<RingElement, ParseError> {
    let base = atom(cur, g)?;
    if cur.eat('^') {
        let pos = cur.pos();
        let k = cur
            .unsigned()?
            .ok_or_else(|| cur.unexpected("a nonnegative exponent"))?;
        let k = u32::try_from(k).map_err(|_| ParseError::new(pos, "exponent too large"))?;
        return Ok(base.pow(k, g));
    }
    Ok(base)
}

fn atom(cur: &mut Cursor, g: GroupPQ) -> Result<RingElement, ParseError> {
    if cur.eat('(') {
        let e = sum(cur, g)?;
        if !cur.eat(')') {
            return Err(cur.unexpected("')'"));
        }
        return Ok(e);
    }
    if let Some(n) = cur.unsigned()? {
        return Ok(RingElement::integer(n, g));
    }
    // longest names first so `a_xip` is not read as `a_xi` followed by junk
    let names = [
        Generator::AXiP,
        Generator::AXiQ,
        Generator::AXi,
        Generator::UXiP,
        Generator::UXiQ,
        Generator::UXi,
    ];
    for gen in names {
        if cur.eat_word(gen.name()) {
            return Ok(RingElement::generator(gen, g));
        }
    }
    Err(cur.unexpected("an integer, a generator or '('"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Monomial;

    fn c15() -> GroupPQ {
        GroupPQ::c15()
    }

    #[test]
    fn parses_products_and_powers() {
        let g = c15();
        let e = parse_element("u_xi * a_xip", g).unwrap();
        assert_eq!(e.to_string(), "3·u_xip·a_xi");
        let e = parse_element("a_xi^2 * u_xiq", g).unwrap();
        assert_eq!(e, RingElement::term(Monomial::new(2, 0, 0, 0, 0, 1), 1, g));
        assert_eq!(parse_element("15 * a_xi", g).unwrap(), RingElement::zero());
        assert_eq!(
            parse_element("(u_xi + 2)^0", g).unwrap(),
            RingElement::one(g)
        );
    }

    #[test]
    fn canonical_output_round_trips() {
        let g = c15();
        for s in ["3·u_xip·a_xi", "u_xi^2·a_xiq^3 + 4", "0", "1", "-7 + u_xi"] {
            let e = parse_element(s, g).unwrap();
            assert_eq!(parse_element(&e.to_string(), g).unwrap(), e, "{s}");
        }
    }

    #[test]
    fn errors_have_positions() {
        let g = c15();
        assert_eq!(parse_element("u_xi * ", g).unwrap_err().position, 7);
        assert_eq!(parse_element("b_xi", g).unwrap_err().position, 0);
        assert_eq!(parse_element("a_xi a_xip", g).unwrap_err().position, 5);
        assert_eq!(parse_element("(a_xi", g).unwrap_err().position, 5);
        assert_eq!(parse_element("a_xi^", g).unwrap_err().position, 5);
    }
}
