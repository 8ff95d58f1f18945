//! Exact foundation and cover searches.
//!
//! Every question here asks for an element `y` whose residuals `y⁻¹A` over a
//! fixed tuple of ideals satisfy some condition. Residual tuples are finite
//! in number up to the symmetries of the monoid, so a breadth-first search
//! over them terminates; a state budget guards against pathological inputs.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::monoid::Monoid;

/// Breadth-first search for `y` with `goal(y⁻¹ states)`, skipping every
/// extension of `y` once `dead(y⁻¹ states)` holds.
pub fn find_element<M, D, G>(m: &M, start: Vec<M::Ideal>, max_states: usize, dead: D, goal: G) -> Result<Option<M::Elem>>
where
    M: Monoid,
    D: Fn(&[M::Ideal]) -> bool,
    G: Fn(&[M::Ideal]) -> Result<bool>,
{
    let start: Vec<M::Ideal> = start.iter().map(|s| m.canonical(s)).collect();
    if dead(&start) {
        return Ok(None);
    }
    if goal(&start)? {
        return Ok(Some(m.identity()));
    }
    let mut seen = HashSet::new();
    seen.insert(m.symmetry_key(&start));
    let mut queue = VecDeque::from([(m.identity(), start)]);
    while let Some((y, states)) = queue.pop_front() {
        for g in m.search_generators(&states) {
            let next: Vec<M::Ideal> = states.iter().map(|s| m.pullback_generator(&g, s)).collect();
            if dead(&next) || !seen.insert(m.symmetry_key(&next)) {
                continue;
            }
            if seen.len() > max_states {
                return Err(Error::Budget(max_states));
            }
            let yg = m.mul(&y, &g);
            if goal(&next)? {
                return Ok(Some(yg));
            }
            queue.push_back((yg, next));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundationOutcome<I> {
    pub holds: bool,
    /// A nonempty constructible ideal inside the target missing every member
    /// of the family, when the family is not a foundation set.
    pub witness: Option<I>,
}

impl<I: fmt::Display> fmt::Display for FoundationOutcome<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}", self.holds),
            Some(w) => write!(f, "{} (witness {w})", self.holds),
        }
    }
}

/// Whether `family` is a foundation set for `target`: every nonempty
/// constructible `Y ⊆ target` meets some member. Members must lie inside
/// the target.
pub fn is_foundation<M: Monoid>(m: &M, target: &M::Ideal, family: &[M::Ideal], cfg: &Config) -> Result<FoundationOutcome<M::Ideal>> {
    for f in family {
        if !m.subset(f, target) {
            return Err(Error::Precondition(format!("family member {f} is not inside {target}")));
        }
    }
    let mut start = vec![target.clone()];
    start.extend(family.iter().cloned());
    let found = find_element(
        m,
        start,
        cfg.max_states,
        |s| m.is_empty(&s[0]) || s[1..].iter().any(|f| m.is_full(f)),
        |s| Ok(m.is_full(&s[0]) && s[1..].iter().all(|f| m.is_empty(f))),
    )?;
    Ok(FoundationOutcome { holds: found.is_none(), witness: found.map(|y| m.principal(&y)) })
}

/// An element of `base` outside every member of `parts`, if one exists.
pub fn uncovered<M: Monoid>(m: &M, base: &M::Ideal, parts: &[M::Ideal], cfg: &Config) -> Result<Option<M::Elem>> {
    let mut start = vec![base.clone()];
    start.extend(parts.iter().cloned());
    find_element(
        m,
        start,
        cfg.max_states,
        |s| m.is_empty(&s[0]) || s[1..].iter().any(|p| m.is_full(p)),
        |s| Ok(m.is_full(&s[0])),
    )
}

/// Whether `base ⊆ ⋃ parts`.
pub fn covered<M: Monoid>(m: &M, base: &M::Ideal, parts: &[M::Ideal], cfg: &Config) -> Result<bool> {
    Ok(uncovered(m, base, parts, cfg)?.is_none())
}

/// A difference `base ∖ (m₁ ∪ … ∪ m_k)` of constructible ideals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GeneralizedIdeal<I> {
    pub base: I,
    pub minus: Vec<I>,
}

impl<I: Clone + Ord> GeneralizedIdeal<I> {
    pub fn plain(base: I) -> GeneralizedIdeal<I> {
        GeneralizedIdeal { base, minus: Vec::new() }
    }

    /// Intersects each subtracted ideal with the base and drops empties, so
    /// that equal differences usually compare equal.
    pub fn new<M: Monoid<Ideal = I>>(m: &M, base: I, minus: Vec<I>) -> GeneralizedIdeal<I> {
        let base = m.canonical(&base);
        let mut minus: Vec<I> = minus.iter().map(|x| m.intersect(&base, x)).filter(|x| !m.is_empty(x)).collect();
        minus.sort();
        minus.dedup();
        GeneralizedIdeal { base, minus }
    }
}

impl<I: fmt::Display> fmt::Display for GeneralizedIdeal<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for x in &self.minus {
            write!(f, " \\ {x}")?;
        }
        Ok(())
    }
}

impl<I: std::str::FromStr<Err = Error>> GeneralizedIdeal<I> {
    /// Parses `base \ m1 \ m2`.
    pub fn parse(s: &str) -> Result<GeneralizedIdeal<I>> {
        let mut parts = s.split('\\');
        let base = parts.next().unwrap_or("").parse()?;
        let minus = parts.map(|p| p.parse()).collect::<Result<Vec<I>>>()?;
        Ok(GeneralizedIdeal { base, minus })
    }
}

/// Whether the generalized ideal has no elements.
pub fn generalized_is_empty<M: Monoid>(m: &M, g: &GeneralizedIdeal<M::Ideal>, cfg: &Config) -> Result<bool> {
    covered(m, &g.base, &g.minus, cfg)
}

/// Foundation test with generalized target and members.
pub fn is_foundation_generalized<M: Monoid>(
    m: &M,
    target: &GeneralizedIdeal<M::Ideal>,
    family: &[GeneralizedIdeal<M::Ideal>],
    cfg: &Config,
) -> Result<FoundationOutcome<M::Ideal>> {
    for f in family {
        let mut outside = f.minus.clone();
        outside.push(target.base.clone());
        let inside_base = covered(m, &f.base, &outside, cfg)?;
        let avoids_minus = target
            .minus
            .iter()
            .map(|x| covered(m, &m.intersect(&f.base, x), &f.minus, cfg))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        if !inside_base || !avoids_minus {
            return Err(Error::Precondition(format!("family member {f} is not inside {target}")));
        }
    }
    let mut start = vec![target.base.clone()];
    start.extend(target.minus.iter().cloned());
    let mut spans = Vec::new();
    for f in family {
        let from = start.len();
        start.push(f.base.clone());
        start.extend(f.minus.iter().cloned());
        spans.push((from, start.len()));
    }
    let k = 1 + target.minus.len();
    let found = find_element(
        m,
        start,
        cfg.max_states,
        |s| m.is_empty(&s[0]) || s[1..k].iter().any(|x| m.is_full(x)),
        |s| {
            if !m.is_full(&s[0]) || !s[1..k].iter().all(|x| m.is_empty(x)) {
                return Ok(false);
            }
            for &(a, b) in &spans {
                if !covered(m, &s[a], &s[a + 1..b], cfg)? {
                    return Ok(false);
                }
            }
            Ok(true)
        },
    )?;
    Ok(FoundationOutcome { holds: found.is_none(), witness: found.map(|y| m.principal(&y)) })
}

/// For a target `X` and differences `X'_k ∖ ⋃ F'_k` with each `F'_k` a
/// foundation set for `X'_k`, produces an element of `X` outside all the
/// differences.
pub fn noncover_witness<M: Monoid>(
    m: &M,
    target: &M::Ideal,
    differences: &[(M::Ideal, Vec<M::Ideal>)],
    cfg: &Config,
) -> Result<M::Elem> {
    for (x, f) in differences {
        if !is_foundation(m, x, f, cfg)?.holds {
            return Err(Error::Precondition(format!("family for {x} is not a foundation set")));
        }
    }
    if m.is_empty(target) {
        return Err(Error::Precondition("target is empty".into()));
    }
    let mut y = m.canonical(target);
    for (x, f) in differences {
        let t = m.intersect(&y, x);
        if m.is_empty(&t) {
            continue;
        }
        y = f
            .iter()
            .map(|fi| m.intersect(&t, fi))
            .find(|c| !m.is_empty(c))
            .ok_or_else(|| Error::Invalid(format!("no member of the family for {x} meets {t}")))?;
    }
    let w = m.sample(&y).ok_or_else(|| Error::Invalid("empty residual ideal".into()))?;
    debug_assert!(differences.iter().all(|(x, f)| !m.contains(x, &w) || f.iter().any(|fi| m.contains(fi, &w))));
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ideals::ConstructibleIdeal;

    fn i(s: &str) -> ConstructibleIdeal {
        s.parse().unwrap()
    }

    fn fam(items: &[&str]) -> Vec<ConstructibleIdeal> {
        items.iter().map(|s| i(s)).collect()
    }

    #[test]
    fn seven_ideal_family() {
        let r = catalog::monoid_r();
        let cfg = Config::default();
        let seven = fam(&["a R", "b R", "c R", "d R", "f R", "X", "Y"]);
        assert!(is_foundation(&r, &i("R"), &seven, &cfg).unwrap().holds);
        let six = fam(&["a R", "b R", "c R", "d R", "f R", "X"]);
        let out = is_foundation(&r, &i("R"), &six, &cfg).unwrap();
        assert!(!out.holds);
        let w = out.witness.unwrap();
        assert!(r.subset(&w, &i("Y")) || r.subset(&w, &i("y_0 R")), "{w}");
    }

    #[test]
    fn tails_under_bz() {
        let r = catalog::monoid_r();
        let cfg = Config::default();
        assert!(is_foundation(&r, &i("a b Z"), &fam(&["b X", "b Y"]), &cfg).unwrap().holds);
        let out = is_foundation(&r, &i("b Z"), &fam(&["b x0 R"]), &cfg).unwrap();
        assert!(!out.holds);
        assert_eq!(out.witness, Some(i("b x_1 R")));
    }

    #[test]
    fn members_must_be_inside() {
        let r = catalog::monoid_r();
        assert!(is_foundation(&r, &i("b Z"), &fam(&["a R"]), &Config::default()).is_err());
    }

    #[test]
    fn covers() {
        let r = catalog::monoid_r();
        let cfg = Config::default();
        assert!(covered(&r, &i("b Z"), &fam(&["b X", "b Y", "b x0 R", "b y0 R"]), &cfg).is_ok_and(|b| !b));
        assert!(covered(&r, &i("X"), &fam(&["Z"]), &cfg).unwrap());
        assert!(covered(&r, &i("b P"), &fam(&["b Z", "b a R", "b b R", "b c R", "b d R", "b f R"]), &cfg).unwrap());
    }

    #[test]
    fn generalized_foundation() {
        let r = catalog::monoid_r();
        let cfg = Config::default();
        let target = GeneralizedIdeal::new(&r, i("b Z"), vec![i("b x0 R")]);
        let family = vec![GeneralizedIdeal::new(&r, i("b X"), vec![i("b x0 R")]), GeneralizedIdeal::plain(i("b Y"))];
        assert!(is_foundation_generalized(&r, &target, &family, &cfg).unwrap().holds);
        let family = vec![GeneralizedIdeal::plain(i("b Y"))];
        assert!(!is_foundation_generalized(&r, &target, &family, &cfg).unwrap().holds);
    }

    #[test]
    fn generalized_parse() {
        let g: GeneralizedIdeal<ConstructibleIdeal> = GeneralizedIdeal::parse("b Z \\ b x0 R").unwrap();
        assert_eq!(g.to_string(), "b Z \\ b x_0 R");
    }

    #[test]
    fn noncover() {
        let r = catalog::monoid_r();
        let cfg = Config::default();
        let seven = fam(&["a R", "b R", "c R", "d R", "f R", "X", "Y"]);
        let w = noncover_witness(&r, &i("R"), &[(i("R"), seven)], &cfg).unwrap();
        assert_eq!(w.to_string(), "a");
    }
}
