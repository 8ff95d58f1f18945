//! Direct products `S × T`. Constructible ideals are rectangles `A × B`.

use std::fmt;

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::monoid::{Monoid, Syntax};
use crate::search::{self, FoundationOutcome};
use crate::words::Index;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pair<X, Y>(pub X, pub Y);

impl<X: fmt::Display, Y: fmt::Display> fmt::Display for Pair<X, Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// Splits `(left, right)` at its top-level comma.
pub(crate) fn split_pair(s: &str) -> Result<(&str, &str)> {
    let bad = |message: &str| Error::Parse { input: s.to_string(), position: 0, message: message.to_string() };
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| bad("expected `(left, right)`"))?;
    let mut depth = 0i32;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => return Ok((inner[..i].trim(), inner[i + 1..].trim())),
            _ => {}
        }
    }
    Err(bad("missing `,` between components"))
}

#[derive(Clone, Debug)]
pub struct ProductMonoid<A, B> {
    pub left: A,
    pub right: B,
}

pub fn direct_product<A: Monoid, B: Monoid>(left: A, right: B) -> ProductMonoid<A, B> {
    ProductMonoid { left, right }
}

impl<A: Monoid, B: Monoid> Monoid for ProductMonoid<A, B> {
    type Elem = Pair<A::Elem, B::Elem>;
    type Ideal = Pair<A::Ideal, B::Ideal>;

    fn name(&self) -> String {
        format!("prod:{}:{}", self.left.name(), self.right.name())
    }

    fn identity(&self) -> Self::Elem {
        Pair(self.left.identity(), self.right.identity())
    }

    fn normalize(&self, w: &Self::Elem) -> Self::Elem {
        Pair(self.left.normalize(&w.0), self.right.normalize(&w.1))
    }

    fn mul(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem {
        Pair(self.left.mul(&u.0, &v.0), self.right.mul(&u.1, &v.1))
    }

    fn left_divide(&self, x: &Self::Elem, w: &Self::Elem) -> Option<Self::Elem> {
        Some(Pair(self.left.left_divide(&x.0, &w.0)?, self.right.left_divide(&x.1, &w.1)?))
    }

    fn factors(&self, w: &Self::Elem) -> Vec<Self::Elem> {
        let mut out: Vec<Self::Elem> =
            self.left.factors(&w.0).into_iter().map(|g| Pair(g, self.right.identity())).collect();
        out.extend(self.right.factors(&w.1).into_iter().map(|g| Pair(self.left.identity(), g)));
        out
    }

    fn empty_ideal(&self) -> Self::Ideal {
        Pair(self.left.empty_ideal(), self.right.empty_ideal())
    }

    fn full_ideal(&self) -> Self::Ideal {
        Pair(self.left.full_ideal(), self.right.full_ideal())
    }

    fn principal(&self, w: &Self::Elem) -> Self::Ideal {
        Pair(self.left.principal(&w.0), self.right.principal(&w.1))
    }

    fn canonical(&self, a: &Self::Ideal) -> Self::Ideal {
        let (l, r) = (self.left.canonical(&a.0), self.right.canonical(&a.1));
        if self.left.is_empty(&l) || self.right.is_empty(&r) {
            self.empty_ideal()
        } else {
            Pair(l, r)
        }
    }

    fn contains(&self, a: &Self::Ideal, w: &Self::Elem) -> bool {
        self.left.contains(&a.0, &w.0) && self.right.contains(&a.1, &w.1)
    }

    fn intersect(&self, a: &Self::Ideal, b: &Self::Ideal) -> Self::Ideal {
        self.canonical(&Pair(self.left.intersect(&a.0, &b.0), self.right.intersect(&a.1, &b.1)))
    }

    fn pullback_generator(&self, g: &Self::Elem, a: &Self::Ideal) -> Self::Ideal {
        self.canonical(&Pair(self.left.pullback(&g.0, &a.0), self.right.pullback(&g.1, &a.1)))
    }

    fn translate(&self, w: &Self::Elem, a: &Self::Ideal) -> Self::Ideal {
        self.canonical(&Pair(self.left.translate(&w.0, &a.0), self.right.translate(&w.1, &a.1)))
    }

    fn sample(&self, a: &Self::Ideal) -> Option<Self::Elem> {
        Some(Pair(self.left.sample(&a.0)?, self.right.sample(&a.1)?))
    }

    fn search_generators(&self, states: &[Self::Ideal]) -> Vec<Self::Elem> {
        let ls: Vec<A::Ideal> = states.iter().map(|s| s.0.clone()).collect();
        let rs: Vec<B::Ideal> = states.iter().map(|s| s.1.clone()).collect();
        let mut out: Vec<Self::Elem> =
            self.left.search_generators(&ls).into_iter().map(|g| Pair(g, self.right.identity())).collect();
        out.extend(self.right.search_generators(&rs).into_iter().map(|g| Pair(self.left.identity(), g)));
        out
    }

    fn symmetry_key(&self, states: &[Self::Ideal]) -> Vec<Self::Ideal> {
        let ls: Vec<A::Ideal> = states.iter().map(|s| s.0.clone()).collect();
        let rs: Vec<B::Ideal> = states.iter().map(|s| s.1.clone()).collect();
        self.left.symmetry_key(&ls).into_iter().zip(self.right.symmetry_key(&rs)).map(|(l, r)| Pair(l, r)).collect()
    }

    fn is_empty(&self, a: &Self::Ideal) -> bool {
        self.left.is_empty(&a.0) || self.right.is_empty(&a.1)
    }

    fn indices(&self, w: &Self::Elem) -> Vec<Index> {
        let mut out = self.left.indices(&w.0);
        out.extend(self.right.indices(&w.1));
        out
    }

    fn ideal_indices(&self, a: &Self::Ideal) -> Vec<Index> {
        let mut out = self.left.ideal_indices(&a.0);
        out.extend(self.right.ideal_indices(&a.1));
        out
    }

    fn absorber_count(&self, w: &Self::Elem) -> usize {
        self.left.absorber_count(&w.0) + self.right.absorber_count(&w.1)
    }

    fn ideal_generators(&self, a: &Self::Ideal, indices: &[Index]) -> Vec<Self::Elem> {
        let rs = self.right.ideal_generators(&a.1, indices);
        let mut out = Vec::new();
        for l in self.left.ideal_generators(&a.0, indices) {
            out.extend(rs.iter().map(|r| Pair(l.clone(), r.clone())));
        }
        out
    }
}

impl<A: Syntax, B: Syntax> Syntax for ProductMonoid<A, B> {
    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        let (l, r) = split_pair(s)?;
        Ok(self.normalize(&Pair(self.left.parse_elem(l)?, self.right.parse_elem(r)?)))
    }

    fn parse_ideal(&self, s: &str) -> Result<Self::Ideal> {
        if s.trim() == "0" {
            return Ok(self.empty_ideal());
        }
        let (l, r) = split_pair(s)?;
        Ok(Pair(self.left.parse_ideal(l)?, self.right.parse_ideal(r)?))
    }
}

/// Foundation test by splitting the family. A nonempty `Y₁ × Y₂` inside
/// the target misses `Aᵢ × Bᵢ` iff `Y₁` misses `Aᵢ` or `Y₂` misses `Bᵢ`, so
/// the family is a foundation set iff for every split `T` of its members,
/// `{Aᵢ}_{i∈T}` is one for `X₁` or `{Bᵢ}_{i∉T}` is one for `X₂`.
pub fn rectangle_foundation<A: Monoid, B: Monoid>(
    m: &ProductMonoid<A, B>,
    target: &Pair<A::Ideal, B::Ideal>,
    family: &[Pair<A::Ideal, B::Ideal>],
    cfg: &Config,
) -> Result<FoundationOutcome<Pair<A::Ideal, B::Ideal>>> {
    let target = m.canonical(target);
    let family: Vec<_> = family.iter().map(|f| m.canonical(f)).filter(|f| !m.is_empty(f)).collect();
    for f in &family {
        if !m.subset(f, &target) {
            return Err(Error::Precondition(format!("family member {f} is not inside {target}")));
        }
    }
    if m.is_empty(&target) {
        return Ok(FoundationOutcome { holds: true, witness: None });
    }
    let n = family.len();
    if n > 20 {
        return Err(Error::Budget(1 << 20));
    }
    for mask in 0u32..(1 << n) {
        let left: Vec<A::Ideal> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| family[i].0.clone()).collect();
        let right: Vec<B::Ideal> = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| family[i].1.clone()).collect();
        let l = search::is_foundation(&m.left, &target.0, &left, cfg)?;
        if l.holds {
            continue;
        }
        let r = search::is_foundation(&m.right, &target.1, &right, cfg)?;
        if !r.holds {
            let witness = Pair(l.witness.expect("failed search has a witness"), r.witness.expect("failed search has a witness"));
            return Ok(FoundationOutcome { holds: false, witness: Some(witness) });
        }
    }
    Ok(FoundationOutcome { holds: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogMonoid};
    use crate::ideals::ConstructibleIdeal;

    fn r_times_s5() -> ProductMonoid<CatalogMonoid, CatalogMonoid> {
        direct_product(catalog::monoid_r(), catalog::monoid_s5())
    }

    fn i(s: &str) -> ConstructibleIdeal {
        s.parse().unwrap()
    }

    #[test]
    fn rectangles() {
        let m = r_times_s5();
        let a = Pair(i("X"), i("R"));
        assert!(m.contains(&a, &Pair("x_0 a".parse().unwrap(), "b".parse().unwrap())));
        assert!(!m.contains(&a, &Pair("x_0".parse().unwrap(), "b".parse().unwrap())));
        assert_eq!(m.intersect(&Pair(i("X"), i("R")), &Pair(i("Y"), i("R"))), m.empty_ideal());
        assert_eq!(m.parse_ideal("(b X, a R)").unwrap(), Pair(i("b X"), i("a R")));
    }

    #[test]
    fn rectangle_rule_matches_search() {
        let m = direct_product(catalog::free_monoid(2).unwrap(), catalog::free_monoid(2).unwrap());
        let cfg = Config::default();
        let p = |s: &str| m.parse_ideal(s).unwrap();
        let cases = [
            (p("(R, R)"), vec![p("(a R, R)"), p("(b R, R)")], true),
            (p("(R, R)"), vec![p("(a R, a R)"), p("(b R, R)")], false),
            (p("(R, R)"), vec![p("(a R, a R)"), p("(b R, R)"), p("(a R, b R)")], true),
            (p("(a R, R)"), vec![p("(a a R, R)")], false),
        ];
        for (x, f, expected) in cases {
            let rect = rectangle_foundation(&m, &x, &f, &cfg).unwrap();
            let generic = search::is_foundation(&m, &x, &f, &cfg).unwrap();
            assert_eq!(rect.holds, expected, "{x}");
            assert_eq!(generic.holds, expected, "{x}");
            if let Some(w) = rect.witness {
                assert!(f.iter().all(|fi| m.is_empty(&m.intersect(&w, fi))));
            }
        }
    }
}
