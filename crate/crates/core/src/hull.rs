//! Elements of the left inverse hull: composites of left translations and
//! their partial inverses.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::Monoid;
use crate::words::{Index, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Move<E> {
    /// `w ↦ s w`.
    Mul(E),
    /// `s w ↦ w`, defined on `sS`.
    Div(E),
}

impl<E: Clone> Move<E> {
    pub fn inverse(&self) -> Move<E> {
        match self {
            Move::Mul(s) => Move::Div(s.clone()),
            Move::Div(s) => Move::Mul(s.clone()),
        }
    }
}

/// A partial bijection stored as its moves in application order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HullElement<E> {
    moves: Vec<Move<E>>,
    zero: bool,
}

impl<E: Clone> HullElement<E> {
    pub fn identity() -> HullElement<E> {
        HullElement { moves: Vec::new(), zero: false }
    }

    /// The empty map.
    pub fn zero() -> HullElement<E> {
        HullElement { moves: Vec::new(), zero: true }
    }

    pub fn from_moves(moves: Vec<Move<E>>) -> HullElement<E> {
        HullElement { moves, zero: false }
    }

    /// Left translation by `s`.
    pub fn mul(s: E) -> HullElement<E> {
        HullElement::from_moves(vec![Move::Mul(s)])
    }

    /// Partial inverse of left translation by `s`.
    pub fn div(s: E) -> HullElement<E> {
        HullElement::from_moves(vec![Move::Div(s)])
    }

    pub fn moves(&self) -> &[Move<E>] {
        &self.moves
    }

    pub fn is_marked_zero(&self) -> bool {
        self.zero
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &HullElement<E>) -> HullElement<E> {
        let mut moves = first.moves.clone();
        moves.extend(self.moves.iter().cloned());
        HullElement { moves, zero: self.zero || first.zero }
    }

    pub fn invert(&self) -> HullElement<E> {
        HullElement { moves: self.moves.iter().rev().map(Move::inverse).collect(), zero: self.zero }
    }
}

/// `h(w)`, or `None` outside the domain.
pub fn apply<M: Monoid>(m: &M, h: &HullElement<M::Elem>, w: &M::Elem) -> Option<M::Elem> {
    if h.zero {
        return None;
    }
    let mut cur = m.normalize(w);
    for mv in &h.moves {
        cur = match mv {
            Move::Mul(s) => m.mul(s, &cur),
            Move::Div(s) => m.left_divide(s, &cur)?,
        };
    }
    Some(cur)
}

/// `h⁻¹(A) = {w ∈ dom h : h(w) ∈ A}`.
pub fn pullback_hull<M: Monoid>(m: &M, h: &HullElement<M::Elem>, a: &M::Ideal) -> M::Ideal {
    if h.zero {
        return m.empty_ideal();
    }
    let mut cur = m.canonical(a);
    for mv in h.moves.iter().rev() {
        if m.is_empty(&cur) {
            break;
        }
        cur = match mv {
            Move::Mul(s) => m.pullback(s, &cur),
            Move::Div(s) => m.translate(s, &cur),
        };
    }
    cur
}

pub fn domain<M: Monoid>(m: &M, h: &HullElement<M::Elem>) -> M::Ideal {
    pullback_hull(m, h, &m.full_ideal())
}

/// `h(A ∩ dom h)`.
pub fn image<M: Monoid>(m: &M, h: &HullElement<M::Elem>, a: &M::Ideal) -> M::Ideal {
    pullback_hull(m, &h.invert(), a)
}

pub fn is_zero<M: Monoid>(m: &M, h: &HullElement<M::Elem>) -> bool {
    m.is_empty(&domain(m, h))
}

/// The idempotent `p_A`: identity on `A`.
pub fn idempotent_of<M: Monoid>(m: &M, a: &M::Ideal) -> Option<HullElement<M::Elem>> {
    let a = m.canonical(a);
    if m.is_empty(&a) {
        return Some(HullElement::zero());
    }
    if m.is_full(&a) {
        return Some(HullElement::identity());
    }
    // Principal ideals are domains of λ_s⁻¹; other shapes are not needed.
    let s = m.sample(&a)?;
    (m.principal(&s) == a).then(|| HullElement::from_moves(vec![Move::Div(s.clone()), Move::Mul(s)]))
}

/// Index values at which a computation involving `h`, the ideals `ideals`
/// and extra elements behaves like it does at every other index: all
/// indices within reach of the ones that occur, plus a generic value on
/// either side.
pub fn probe_indices<M: Monoid>(m: &M, hs: &[&HullElement<M::Elem>], ideals: &[&M::Ideal], extra: &[&M::Elem]) -> Vec<Index> {
    let mut known: Vec<Index> = Vec::new();
    let mut reach = 2usize;
    for h in hs {
        for mv in &h.moves {
            let (Move::Mul(s) | Move::Div(s)) = mv;
            known.extend(m.indices(s));
            reach += m.absorber_count(s);
        }
    }
    for a in ideals {
        known.extend(m.ideal_indices(a));
    }
    for e in extra {
        known.extend(m.indices(e));
        reach += m.absorber_count(e);
    }
    if known.is_empty() {
        known.push(0);
    }
    let reach = reach as Index;
    let mut out: Vec<Index> = known.iter().flat_map(|&k| (k - reach)..=(k + reach)).collect();
    out.sort_unstable();
    out.dedup();
    let (lo, hi) = (out[0] - 1, out[out.len() - 1] + 1);
    out.insert(0, lo);
    out.push(hi);
    out
}

/// Whether `h` fixes every point of `B ∖ (M₁ ∪ … ∪ M_k)`. The fixed-point
/// set of a hull element is a right ideal, so checking generators of `B`
/// suffices.
pub fn fixes_on_difference<M: Monoid>(m: &M, h: &HullElement<M::Elem>, b: &M::Ideal, minus: &[M::Ideal]) -> bool {
    let mut refs: Vec<&M::Ideal> = vec![b];
    refs.extend(minus.iter());
    let probes = probe_indices(m, &[h], &refs, &[]);
    m.ideal_generators(b, &probes)
        .iter()
        .all(|g| minus.iter().any(|x| m.contains(x, g)) || apply(m, h, g).as_ref() == Some(g))
}

/// Whether `h` fixes every point of `A`.
pub fn fixes_ideal<M: Monoid>(m: &M, h: &HullElement<M::Elem>, a: &M::Ideal) -> bool {
    fixes_on_difference(m, h, a, &[])
}

impl HullElement<Word> {
    /// Parses an algebraic composite such as `b^-1 c b`, applied right to
    /// left. `1` is the identity and `0` the empty map.
    pub fn parse(s: &str) -> Result<HullElement<Word>> {
        let trimmed = s.trim();
        match trimmed {
            "0" => return Ok(HullElement::zero()),
            "1" | "" | "id" => return Ok(HullElement::identity()),
            _ => {}
        }
        let mut moves = Vec::new();
        let mut offset = 0;
        for token in s.split_whitespace() {
            let position = s[offset..].find(token).map_or(offset, |p| p + offset);
            offset = position + token.len();
            let (body, inverse) = match token.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (token, false),
            };
            let letter: Letter = body.parse().map_err(|_| Error::Parse {
                input: s.to_string(),
                position,
                message: format!("expected a letter or letter^-1, found `{token}`"),
            })?;
            let w = Word::letter(letter);
            moves.push(if inverse { Move::Div(w) } else { Move::Mul(w) });
        }
        moves.reverse();
        Ok(HullElement::from_moves(moves))
    }
}

impl<E: fmt::Display> fmt::Display for HullElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return f.write_str("0");
        }
        if self.moves.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .moves
            .iter()
            .rev()
            .map(|mv| match mv {
                Move::Mul(s) => format!("{s}"),
                Move::Div(s) => {
                    let text = s.to_string();
                    if text.contains(' ') {
                        format!("({text})^-1")
                    } else {
                        format!("{text}^-1")
                    }
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl std::str::FromStr for HullElement<Word> {
    type Err = Error;
    fn from_str(s: &str) -> Result<HullElement<Word>> {
        HullElement::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ideals::ConstructibleIdeal;

    fn h(s: &str) -> HullElement<Word> {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn i(s: &str) -> ConstructibleIdeal {
        s.parse().unwrap()
    }

    #[test]
    fn parse_roundtrip() {
        let g = h("b^-1 c b");
        assert_eq!(g.moves(), &[Move::Mul(w("b")), Move::Mul(w("c")), Move::Div(w("b"))]);
        assert_eq!(g.to_string(), "b^-1 c b");
        assert!(HullElement::parse("b q^-1").is_err());
        assert!(h("0").is_marked_zero());
    }

    #[test]
    fn application_and_domain() {
        let r = catalog::monoid_r();
        let g = h("b^-1 c b");
        assert_eq!(apply(&r, &g, &w("x_0 a")), Some(w("x_1 a")));
        assert_eq!(apply(&r, &g, &w("a")), None);
        assert_eq!(domain(&r, &g), i("Z"));
        assert_eq!(domain(&r, &h("a^-1")), i("a R"));
        assert!(is_zero(&r, &h("x_0^-1 a")));
        assert_eq!(domain(&r, &h("a^-1 b")), i("Z"));
    }

    #[test]
    fn inverse_undoes() {
        let r = catalog::monoid_r();
        let g = h("b^-1 d b");
        let back = g.invert();
        for s in ["x_0 a", "x_3 y_1", "y_0 a"] {
            if let Some(img) = apply(&r, &g, &w(s)) {
                assert_eq!(apply(&r, &back, &img), Some(w(s)));
            }
        }
        assert_eq!(domain(&r, &g), i("X"));
        assert_eq!(image(&r, &g, &domain(&r, &g)), i("X"));
    }

    #[test]
    fn fixed_ideals() {
        let r = catalog::monoid_r();
        assert!(fixes_ideal(&r, &h("a"), &i("b X")));
        assert!(!fixes_ideal(&r, &h("a"), &i("b Y")));
        assert!(fixes_ideal(&r, &h("c"), &i("b Y")));
        assert!(fixes_ideal(&r, &h("b^-1 a b"), &i("X")));
        assert!(!fixes_ideal(&r, &h("b^-1 a b"), &i("Y")));
        assert!(fixes_ideal(&r, &h("b^-1 c b"), &i("Y")));
        assert!(!fixes_on_difference(&r, &h("b^-1 c b"), &i("Z"), &[i("X")]));
        assert!(fixes_ideal(&r, &h("b^-1 d b"), &i("X")));
    }
}
