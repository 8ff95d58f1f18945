//! Characters on constructible ideals and the boundary of the character
//! space.

use std::fmt;

use serde::Serialize;

use crate::catalog::{CatalogMonoid, MonoidKind};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::ideals::{self, ConstructibleIdeal, Shape};
use crate::search::{self, FoundationOutcome, GeneralizedIdeal};
use crate::words::{is_reduced_infinite, word_type, InfiniteWord, Letter, Word, WordType};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Character {
    /// `χ_s`: charges the ideals containing `s`.
    Principal(Word),
    /// `⟨A⟩`: charges the ideals containing `A`.
    Ideal(ConstructibleIdeal),
    /// `χ_w`: charges the ideals containing all long truncations of `w`.
    Word(InfiniteWord),
}

impl Character {
    /// Validates and normalizes a character for the given monoid.
    pub fn checked(m: &CatalogMonoid, chi: Character) -> Result<Character> {
        let p = m.presentation();
        match chi {
            Character::Principal(s) => {
                p.check_word(&s)?;
                Ok(Character::Principal(p.normal_form(&s)))
            }
            Character::Ideal(a) => {
                if let Some(w) = a.prefix() {
                    p.check_word(w)?;
                }
                let a = ideals::canonicalize(p, &a);
                match &a {
                    ConstructibleIdeal::Empty => Err(Error::Invalid("⟨∅⟩ is not a character".into())),
                    ConstructibleIdeal::Shaped { prefix, shape: Shape::Full } => Ok(Character::Principal(prefix.clone())),
                    _ => Ok(Character::Ideal(a)),
                }
            }
            Character::Word(w) => {
                p.check_word(w.prefix())?;
                p.check_word(w.period())?;
                if m.presentation().has_indexed() && !is_reduced_infinite(&w) {
                    return Err(Error::Invalid(format!("infinite word {w} is not reduced")));
                }
                if m.is_r() || !p.has_indexed() {
                    Ok(Character::Word(w))
                } else {
                    let irreducible = (1..=w.prefix().len() + 2 * w.period().len() + 2)
                        .all(|n| p.is_irreducible(&w.truncate(n)));
                    if irreducible {
                        Ok(Character::Word(w))
                    } else {
                        Err(Error::Invalid(format!("infinite word {w} is not in normal form")))
                    }
                }
            }
        }
    }

    /// Parses `chi <word>`, `ideal <ideal>` or `inf <prefix> | <period>`.
    pub fn parse(s: &str) -> Result<Character> {
        let t = s.trim();
        let (head, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        match head {
            "chi" => Ok(Character::Principal(Word::parse(rest)?)),
            "ideal" => Ok(Character::Ideal(ConstructibleIdeal::parse(rest)?)),
            "inf" => Ok(Character::Word(InfiniteWord::parse(rest)?)),
            _ => Err(Error::Parse {
                input: s.to_string(),
                position: 0,
                message: "expected `chi <word>`, `ideal <ideal>` or `inf <prefix> | <period>`".into(),
            }),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Character::Principal(s) => write!(f, "chi {s}"),
            Character::Ideal(a) => write!(f, "ideal {a}"),
            Character::Word(w) => write!(f, "inf {w}"),
        }
    }
}

impl std::str::FromStr for Character {
    type Err = Error;
    fn from_str(s: &str) -> Result<Character> {
        Character::parse(s)
    }
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Truncation depth at which membership of `w_1⋯w_N` in `A` has settled.
pub fn stabilization_depth(w: &InfiniteWord, a: &ConstructibleIdeal) -> usize {
    w.prefix().len() + 2 * w.period().len() + a.prefix().map_or(0, |p| p.len()) + 3
}

pub fn evaluate(m: &CatalogMonoid, chi: &Character, a: &ConstructibleIdeal) -> bool {
    let p = m.presentation();
    match chi {
        Character::Principal(s) => ideals::contains(p, a, s),
        Character::Ideal(b) => ideals::subset(p, b, a),
        Character::Word(w) => ideals::contains(p, a, &p.normal_form(&w.truncate(stabilization_depth(w, a)))),
    }
}

/// `χ(B ∖ ⋃ Mᵢ) = 1` iff `χ(B) = 1` and every `χ(Mᵢ) = 0`.
pub fn evaluate_generalized(m: &CatalogMonoid, chi: &Character, d: &GeneralizedIdeal<ConstructibleIdeal>) -> bool {
    evaluate(m, chi, &d.base) && d.minus.iter().all(|x| !evaluate(m, chi, x))
}

/// Whether the character lies in the closure of the principal characters.
/// For ideal characters this asks whether the ideal is a finite union of
/// proper constructible subideals; among the catalog shapes only `wP`
/// splits (as `⋃ wℓR ∪ wZ`).
pub fn in_omega(m: &CatalogMonoid, chi: &Character) -> bool {
    match chi {
        Character::Principal(_) | Character::Word(_) => true,
        Character::Ideal(a) => ideals::canonicalize(m.presentation(), a).shape() != Some(Shape::P),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Exact(bool),
    /// No decision; `evidence` records whether the bounded test passed.
    UnknownAtBound { bound: usize, evidence: bool },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Exact(b) => write!(f, "{b} (exact)"),
            Verdict::UnknownAtBound { bound, evidence } => {
                write!(f, "unknown at bound {bound} (bounded test {})", if *evidence { "passed" } else { "failed" })
            }
        }
    }
}

/// Ideals `translate(u, Sh)` for the monoid's shapes, with `u` a prefix of
/// the truncations of the character's word extended by at most `extra`
/// window letters, or any word of length at most `extra`.
fn witness_pool(m: &CatalogMonoid, w: &InfiniteWord, cfg: &Config, extra: usize) -> Vec<ConstructibleIdeal> {
    let p = m.presentation();
    let mut stems: Vec<Word> = m.words_up_to(extra, cfg.window);
    let letters = m.window_letters(cfg.window);
    for n in 1..=w.prefix().len() + w.period().len() + 2 {
        let t = p.normal_form(&w.truncate(n));
        stems.push(t.clone());
        for &l in &letters {
            stems.push(p.mul(&t, &Word::letter(l)));
        }
    }
    let mut pool: Vec<ConstructibleIdeal> = stems
        .iter()
        .flat_map(|u| m.shapes().iter().map(move |&sh| ideals::canonical(p, u, sh)))
        .filter(|a| !a.is_empty())
        .collect();
    pool.sort();
    pool.dedup();
    pool
}

/// Checks, for every ideal `X` of a bounded pool with `χ(X) = 0`, that some
/// truncation ideal `w_1⋯w_N R` with `χ = 1` misses `X`. Returns the first
/// `X` without such a witness.
pub fn maximality_witness_test(m: &CatalogMonoid, chi: &Character, cfg: &Config) -> Result<Option<ConstructibleIdeal>> {
    let w = match chi {
        Character::Word(w) => w,
        _ => return Err(Error::Unsupported("the bounded maximality test is for word characters".into())),
    };
    let p = m.presentation();
    for x in witness_pool(m, w, cfg, 1) {
        if evaluate(m, chi, &x) {
            continue;
        }
        let depth = stabilization_depth(w, &x) + 3;
        let separated = (1..=depth).any(|n| {
            let y = ConstructibleIdeal::principal(p.normal_form(&w.truncate(n)));
            ideals::intersect(p, &x, &y).is_empty()
        });
        if !separated {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

pub fn is_maximal(m: &CatalogMonoid, chi: &Character, cfg: &Config) -> Result<Verdict> {
    match chi {
        Character::Principal(_) | Character::Ideal(_) => Ok(Verdict::Exact(false)),
        Character::Word(w) => match m.kind() {
            MonoidKind::R => Ok(Verdict::Exact(word_type(w)? == WordType::Type1)),
            MonoidKind::Free(_) => Ok(Verdict::Exact(true)),
            MonoidKind::S4 | MonoidKind::S5 => {
                let evidence = maximality_witness_test(m, chi, cfg)?.is_none();
                Ok(Verdict::UnknownAtBound { bound: 1, evidence })
            }
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundaryClass {
    MaxType1,
    IdealX,
    IdealY,
    WordType2,
    NotBoundary,
}

impl fmt::Display for BoundaryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundaryClass::MaxType1 => "MaxType1",
            BoundaryClass::IdealX => "IdealX",
            BoundaryClass::IdealY => "IdealY",
            BoundaryClass::WordType2 => "WordType2",
            BoundaryClass::NotBoundary => "NotBoundary",
        };
        f.write_str(s)
    }
}

/// Exact classification of boundary characters of `R`.
pub fn classify_boundary(m: &CatalogMonoid, chi: &Character) -> Result<BoundaryClass> {
    if !m.is_r() {
        return Err(Error::Unsupported(format!("boundary classification is only known for R, not {}", m.name())));
    }
    Ok(match chi {
        Character::Principal(_) => BoundaryClass::NotBoundary,
        Character::Word(w) => match word_type(w)? {
            WordType::Type1 => BoundaryClass::MaxType1,
            WordType::Type2 => BoundaryClass::WordType2,
        },
        Character::Ideal(a) => match ideals::canonicalize(m.presentation(), a).shape() {
            Some(s) if s == Shape::X => BoundaryClass::IdealX,
            Some(s) if s == Shape::Y => BoundaryClass::IdealY,
            _ => BoundaryClass::NotBoundary,
        },
    })
}

pub fn in_boundary(m: &CatalogMonoid, chi: &Character) -> Result<bool> {
    Ok(classify_boundary(m, chi)? != BoundaryClass::NotBoundary)
}

/// The clopen set `{χ : χ(X) = 1, χ(Xᵢ) = 0}` misses the boundary exactly
/// when the `Xᵢ` form a foundation set for `X`.
pub fn clopen_disjoint_from_boundary(
    m: &CatalogMonoid,
    x: &ConstructibleIdeal,
    family: &[ConstructibleIdeal],
    cfg: &Config,
) -> Result<FoundationOutcome<ConstructibleIdeal>> {
    search::is_foundation(m, x, family, cfg)
}

/// A neighbourhood of `χ_w` inside which every word character agrees with
/// `w` on its first `n` letters, as a generalized ideal `base ∖ ⋃ minus`.
pub fn separating_neighbourhood(m: &CatalogMonoid, w: &InfiniteWord, n: usize) -> Result<GeneralizedIdeal<ConstructibleIdeal>> {
    if n == 0 {
        return Err(Error::Invalid("neighbourhood depth must be at least 1".into()));
    }
    let p = m.presentation();
    let letters: Vec<Letter> = (0..n).map(|i| w.letter_at(i)).collect();
    let absorbing = |l: Letter| matches!(l, Letter::A | Letter::C | Letter::D | Letter::F);
    let bz = |k: usize| {
        let mut pre = Word::from_letters(&letters[..k]);
        pre.push(Letter::B);
        ideals::canonical(p, &pre, Shape::Z)
    };
    let base = ideals::canonical(p, &Word::from_letters(&letters), Shape::R);
    let mut minus = Vec::new();
    if absorbing(letters[n - 1]) {
        minus.push(bz(n - 1));
    }
    if n >= 2 && absorbing(letters[n - 2]) {
        minus.push(bz(n - 2));
    }
    Ok(GeneralizedIdeal { base, minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn c(s: &str) -> Character {
        s.parse().unwrap()
    }

    fn i(s: &str) -> ConstructibleIdeal {
        s.parse().unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let r = catalog::monoid_r();
        assert!(evaluate(&r, &c("inf | b x0"), &i("b x0 R")));
        assert!(evaluate(&r, &c("ideal X"), &i("Z")));
        assert!(!evaluate(&r, &c("ideal X"), &i("x0 R")));
        assert!(evaluate(&r, &c("chi b x0 a"), &i("b X")));
        let d = GeneralizedIdeal { base: i("Z"), minus: vec![i("Y")] };
        assert!(!evaluate_generalized(&r, &c("inf | b x0"), &d));
        let d = GeneralizedIdeal { base: i("b Z"), minus: vec![i("b Y")] };
        assert!(evaluate_generalized(&r, &c("inf | b x0"), &d));
        assert!(!evaluate_generalized(&r, &c("ideal b Y"), &d));
    }

    #[test]
    fn omega_membership() {
        let r = catalog::monoid_r();
        assert!(in_omega(&r, &c("ideal b X")));
        assert!(in_omega(&r, &c("chi b x0")));
        assert!(!in_omega(&r, &c("ideal b P")));
    }

    #[test]
    fn maximality_and_classes() {
        let r = catalog::monoid_r();
        let cfg = Config::default();
        assert_eq!(is_maximal(&r, &c("inf | b x0"), &cfg).unwrap(), Verdict::Exact(true));
        assert_eq!(is_maximal(&r, &c("ideal b X"), &cfg).unwrap(), Verdict::Exact(false));
        assert_eq!(is_maximal(&r, &c("inf b x0 | a"), &cfg).unwrap(), Verdict::Exact(false));
        assert_eq!(classify_boundary(&r, &c("ideal a b Y")).unwrap(), BoundaryClass::IdealY);
        assert_eq!(classify_boundary(&r, &c("chi b x0")).unwrap(), BoundaryClass::NotBoundary);
        assert_eq!(classify_boundary(&r, &c("inf | d f")).unwrap(), BoundaryClass::MaxType1);
        assert!(classify_boundary(&catalog::monoid_s5(), &c("inf | b x0")).is_err());
    }

    #[test]
    fn bounded_witness_test() {
        let r = catalog::monoid_r();
        let cfg = Config { window: (-1, 1), ..Config::default() };
        assert_eq!(maximality_witness_test(&r, &c("inf | b x0"), &cfg).unwrap(), None);
        assert!(maximality_witness_test(&r, &c("inf b x0 | a"), &cfg).unwrap().is_some());
    }

    #[test]
    fn neighbourhoods() {
        let r = catalog::monoid_r();
        let u = separating_neighbourhood(&r, &"| b x0".parse().unwrap(), 2).unwrap();
        assert_eq!(u.base, i("b x0 R"));
        assert!(u.minus.is_empty());
        let u = separating_neighbourhood(&r, &"a a | d".parse().unwrap(), 2).unwrap();
        assert!(!u.minus.is_empty());
        let u = separating_neighbourhood(&r, &"| b x0".parse().unwrap(), 1).unwrap();
        assert_eq!((u.base, u.minus.len()), (i("b R"), 0));
    }

    #[test]
    fn boundary_vanishing() {
        let r = catalog::monoid_r();
        let cfg = Config::default();
        assert!(clopen_disjoint_from_boundary(&r, &i("b Z"), &[i("b X"), i("b Y")], &cfg).unwrap().holds);
        assert!(!clopen_disjoint_from_boundary(&r, &i("b Z"), &[i("b x0 R")], &cfg).unwrap().holds);
        assert!(clopen_disjoint_from_boundary(&r, &i("a R"), &[i("a R")], &cfg).unwrap().holds);
    }
}
