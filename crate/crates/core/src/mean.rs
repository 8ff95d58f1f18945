//! Approximate invariant means on the boundary groupoid of `R`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::boundary::{self, BoundaryClass, Character};
use crate::catalog::CatalogMonoid;
use crate::error::{Error, Result};
use crate::groupoid::{self, Equivalence, GroupoidElement, Hull};
use crate::hull::Move;
use crate::words::{Letter, Word};

pub type Rational = Ratio<i64>;

#[derive(Clone, Debug, Serialize)]
pub struct MeanDistribution {
    pub support: Vec<GroupoidElement>,
    #[serde(serialize_with = "serialize_weights")]
    pub weights: Vec<Rational>,
}

fn serialize_weights<S: serde::Serializer>(ws: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ws.iter().map(|w| w.to_string()))
}

impl MeanDistribution {
    pub fn total(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |acc, w| acc + w)
    }
}

impl fmt::Display for MeanDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, w)) in self.support.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{w}·δ{g}")?;
        }
        Ok(())
    }
}

/// The `m`-th atom: `w_m⁻¹ ⋯ w_1⁻¹` for word characters, `c⁻ᵐ b v⁻¹` on
/// `⟨vX⟩` and `a⁻ᵐ b v⁻¹` on `⟨vY⟩`.
fn atom(class: BoundaryClass, x: &Character, m: usize) -> Result<Hull> {
    let moves = match (class, x) {
        (BoundaryClass::MaxType1 | BoundaryClass::WordType2, Character::Word(w)) => {
            (0..m).map(|i| Move::Div(Word::letter(w.letter_at(i)))).collect()
        }
        (BoundaryClass::IdealX | BoundaryClass::IdealY, Character::Ideal(a)) => {
            let shift = if class == BoundaryClass::IdealX { Letter::C } else { Letter::A };
            let v = a.prefix().cloned().unwrap_or_default();
            let mut moves = Vec::with_capacity(m + 2);
            if !v.is_empty() {
                moves.push(Move::Div(v));
            }
            moves.push(Move::Mul(Word::letter(Letter::B)));
            moves.extend((0..m).map(|_| Move::Div(Word::letter(shift))));
            moves
        }
        _ => return Err(Error::Precondition(format!("{x} is not a boundary character"))),
    };
    Ok(Hull::from_moves(moves))
}

/// `μ_n^x`: uniform weights on `n` pairwise distinct germs at `x`.
pub fn mean(m: &CatalogMonoid, x: &Character, n: usize) -> Result<MeanDistribution> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let x = Character::checked(m, x.clone())?;
    let class = boundary::classify_boundary(m, &x)?;
    if class == BoundaryClass::NotBoundary {
        return Err(Error::Precondition(format!("{x} is not a boundary character")));
    }
    let support = (1..=n)
        .map(|k| GroupoidElement::new(m, atom(class, &x, k)?, x.clone()))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..n {
        for j in i + 1..n {
            match groupoid::equal_paterson(m, &support[i], &support[j])? {
                Equivalence::Different(_) => {}
                Equivalence::Equal(on) => {
                    return Err(Error::Invalid(format!("atoms {} and {} agree on {on}", support[i], support[j])))
                }
                Equivalence::Unknown(why) => return Err(Error::Undecided(why)),
            }
        }
    }
    let weight = Rational::new(1, n as i64);
    Ok(MeanDistribution { support, weights: vec![weight; n] })
}

/// `‖μ_n^y − μ_n^x(· g⁻¹)‖₁` for `g` with source `y` and range `x`.
pub fn mean_deviation(m: &CatalogMonoid, g: &GroupoidElement, n: usize) -> Result<Rational> {
    let x = g.range(m)?;
    let mu_y = mean(m, &g.chi, n)?;
    let mu_x = mean(m, &x, n)?;
    let back = g.h.invert();
    let mut used = vec![false; n];
    let mut matched = 0usize;
    for a in &mu_y.support {
        let moved = GroupoidElement::new(m, a.h.after(&back), x.clone())?;
        for (j, b) in mu_x.support.iter().enumerate() {
            if used[j] {
                continue;
            }
            match groupoid::equal_paterson(m, &moved, b)? {
                Equivalence::Equal(_) => {
                    used[j] = true;
                    matched += 1;
                    break;
                }
                Equivalence::Different(_) => {}
                Equivalence::Unknown(why) => return Err(Error::Undecided(why)),
            }
        }
    }
    let unmatched = (n - matched) as i64;
    Ok(Rational::new(2 * unmatched, n as i64))
}

/// Whether a distribution's weights are positive and sum to one.
pub fn is_normalized(mu: &MeanDistribution) -> bool {
    mu.weights.iter().all(|w| *w > Rational::zero()) && mu.total() == Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn c(s: &str) -> Character {
        s.parse().unwrap()
    }

    fn g(m: &CatalogMonoid, h: &str, chi: &str) -> GroupoidElement {
        GroupoidElement::new(m, h.parse().unwrap(), c(chi)).unwrap()
    }

    #[test]
    fn atoms_and_weights() {
        let r = catalog::monoid_r();
        let mu = mean(&r, &c("inf | b x0"), 2).unwrap();
        let hs: Vec<String> = mu.support.iter().map(|a| a.h.to_string()).collect();
        assert_eq!(hs, vec!["b^-1", "x_0^-1 b^-1"]);
        let mu = mean(&r, &c("ideal X"), 3).unwrap();
        assert_eq!(mu.support[2].h.to_string(), "c^-1 c^-1 c^-1 b");
        assert!(is_normalized(&mu));
        assert!(mean(&r, &c("chi b"), 2).is_err());
    }

    #[test]
    fn deviation_decays() {
        let r = catalog::monoid_r();
        for (h, chi) in [("b^-1 c b", "ideal X"), ("c", "inf | b x0")] {
            let elt = g(&r, h, chi);
            for n in [2, 4, 8] {
                assert_eq!(mean_deviation(&r, &elt, n).unwrap(), Rational::new(2, n as i64), "{elt} n={n}");
            }
        }
        assert!(mean_deviation(&r, &g(&r, "1", "ideal b Y"), 5).unwrap().is_zero());
    }
}
