//! A common interface over catalog monoids, direct products and free
//! products, used by the hull and the foundation searches.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use crate::catalog::CatalogMonoid;
use crate::error::{Error, Result};
use crate::ideals::{self, ConstructibleIdeal};
use crate::words::{Index, Letter, Word, ZKind};

pub trait Monoid {
    type Elem: Clone + Eq + Hash + Ord + Debug + Display;
    type Ideal: Clone + Eq + Hash + Ord + Debug + Display;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn normalize(&self, w: &Self::Elem) -> Self::Elem;
    fn mul(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem;
    /// `x⁻¹ w` when `w ∈ xS`.
    fn left_divide(&self, x: &Self::Elem, w: &Self::Elem) -> Option<Self::Elem>;
    /// Factorization into generators, left to right.
    fn factors(&self, w: &Self::Elem) -> Vec<Self::Elem>;

    fn empty_ideal(&self) -> Self::Ideal;
    fn full_ideal(&self) -> Self::Ideal;
    fn principal(&self, w: &Self::Elem) -> Self::Ideal;
    fn canonical(&self, a: &Self::Ideal) -> Self::Ideal;
    fn contains(&self, a: &Self::Ideal, w: &Self::Elem) -> bool;
    fn intersect(&self, a: &Self::Ideal, b: &Self::Ideal) -> Self::Ideal;
    /// `g⁻¹ A` for a generator `g`.
    fn pullback_generator(&self, g: &Self::Elem, a: &Self::Ideal) -> Self::Ideal;
    fn translate(&self, w: &Self::Elem, a: &Self::Ideal) -> Self::Ideal;
    fn sample(&self, a: &Self::Ideal) -> Option<Self::Elem>;

    /// Generators whose pullbacks represent every behaviour of the given
    /// ideals: each generator not listed acts like one that is.
    fn search_generators(&self, states: &[Self::Ideal]) -> Vec<Self::Elem>;

    /// A key identifying a tuple of ideals up to the symmetries of the
    /// monoid, so that searches can share work between translates.
    fn symmetry_key(&self, states: &[Self::Ideal]) -> Vec<Self::Ideal> {
        states.iter().map(|s| self.canonical(s)).collect()
    }

    fn is_empty(&self, a: &Self::Ideal) -> bool {
        self.canonical(a) == self.empty_ideal()
    }

    fn is_full(&self, a: &Self::Ideal) -> bool {
        self.contains(a, &self.identity())
    }

    fn pullback(&self, w: &Self::Elem, a: &Self::Ideal) -> Self::Ideal {
        let mut cur = self.canonical(a);
        for g in self.factors(w) {
            if self.is_empty(&cur) {
                break;
            }
            cur = self.pullback_generator(&g, &cur);
        }
        cur
    }

    fn subset(&self, a: &Self::Ideal, b: &Self::Ideal) -> bool {
        self.intersect(a, b) == self.canonical(a)
    }

    /// Indices occurring in an element, for choosing probe windows.
    fn indices(&self, _w: &Self::Elem) -> Vec<Index> {
        Vec::new()
    }

    /// Indices occurring in an ideal's description.
    fn ideal_indices(&self, _a: &Self::Ideal) -> Vec<Index> {
        Vec::new()
    }

    /// Number of letters that can shift indices, for probe windows.
    fn absorber_count(&self, _w: &Self::Elem) -> usize {
        0
    }

    /// Words generating `A` as a right ideal, with symbolic indices drawn
    /// from `indices`.
    fn ideal_generators(&self, a: &Self::Ideal, indices: &[Index]) -> Vec<Self::Elem>;
}

/// Text syntax for elements and ideals.
pub trait Syntax: Monoid {
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn parse_ideal(&self, s: &str) -> Result<Self::Ideal>;
}

impl Syntax for CatalogMonoid {
    fn parse_elem(&self, s: &str) -> Result<Word> {
        let w = Word::parse(s)?;
        self.presentation().check_word(&w)?;
        Ok(self.presentation().normal_form(&w))
    }

    fn parse_ideal(&self, s: &str) -> Result<ConstructibleIdeal> {
        let a = ConstructibleIdeal::parse(s)?;
        if let Some(w) = a.prefix() {
            self.presentation().check_word(w)?;
        }
        if a.shape().is_some_and(|sh| sh.is_tail()) && !self.presentation().has_indexed() {
            return Err(Error::Invalid(format!("{} has no indexed letters, so `{s}` is not an ideal of it", self.name())));
        }
        Ok(ideals::canonicalize(self.presentation(), &a))
    }
}

impl Monoid for CatalogMonoid {
    type Elem = Word;
    type Ideal = ConstructibleIdeal;

    fn name(&self) -> String {
        CatalogMonoid::name(self).to_string()
    }

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn normalize(&self, w: &Word) -> Word {
        self.presentation().normal_form(w)
    }

    fn mul(&self, u: &Word, v: &Word) -> Word {
        self.presentation().mul(u, v)
    }

    fn left_divide(&self, x: &Word, w: &Word) -> Option<Word> {
        self.presentation().left_divide(x, w)
    }

    fn factors(&self, w: &Word) -> Vec<Word> {
        w.letters().iter().map(|&l| Word::letter(l)).collect()
    }

    fn empty_ideal(&self) -> ConstructibleIdeal {
        ConstructibleIdeal::Empty
    }

    fn full_ideal(&self) -> ConstructibleIdeal {
        ConstructibleIdeal::full()
    }

    fn principal(&self, w: &Word) -> ConstructibleIdeal {
        ideals::canonicalize(self.presentation(), &ConstructibleIdeal::principal(w.clone()))
    }

    fn canonical(&self, a: &ConstructibleIdeal) -> ConstructibleIdeal {
        ideals::canonicalize(self.presentation(), a)
    }

    fn contains(&self, a: &ConstructibleIdeal, w: &Word) -> bool {
        ideals::contains(self.presentation(), a, w)
    }

    fn intersect(&self, a: &ConstructibleIdeal, b: &ConstructibleIdeal) -> ConstructibleIdeal {
        ideals::intersect(self.presentation(), a, b)
    }

    fn pullback_generator(&self, g: &Word, a: &ConstructibleIdeal) -> ConstructibleIdeal {
        ideals::pullback(self.presentation(), g, a)
    }

    fn pullback(&self, w: &Word, a: &ConstructibleIdeal) -> ConstructibleIdeal {
        ideals::pullback(self.presentation(), w, a)
    }

    fn translate(&self, w: &Word, a: &ConstructibleIdeal) -> ConstructibleIdeal {
        ideals::translate(self.presentation(), w, a)
    }

    fn sample(&self, a: &ConstructibleIdeal) -> Option<Word> {
        ideals::sample(self.presentation(), a)
    }

    fn is_empty(&self, a: &ConstructibleIdeal) -> bool {
        a.is_empty()
    }

    fn is_full(&self, a: &ConstructibleIdeal) -> bool {
        ideals::contains(self.presentation(), a, &Word::empty())
    }

    fn search_generators(&self, states: &[ConstructibleIdeal]) -> Vec<Word> {
        let p = self.presentation();
        let mut out: Vec<Word> = p.letters().iter().map(|&l| Word::letter(l)).collect();
        if p.has_indexed() {
            for kind in ZKind::ALL {
                let mut seen: Vec<Index> = states
                    .iter()
                    .filter_map(|s| s.prefix().and_then(|w| w.first()))
                    .filter_map(|l| l.z_parts())
                    .filter(|(k, _)| *k == kind)
                    .map(|(_, n)| n)
                    .collect();
                seen.sort_unstable();
                seen.dedup();
                let fresh = seen.last().map_or(0, |n| n + 1);
                seen.push(fresh);
                out.extend(seen.into_iter().map(|n| Word::letter(Letter::z(kind, n))));
            }
        }
        out
    }

    fn symmetry_key(&self, states: &[ConstructibleIdeal]) -> Vec<ConstructibleIdeal> {
        let lowest = |kind: ZKind| {
            states
                .iter()
                .filter_map(|s| s.prefix())
                .flat_map(|w| w.letters().iter().filter_map(|l| l.z_parts()))
                .filter(|(k, _)| *k == kind)
                .map(|(_, n)| n)
                .min()
                .unwrap_or(0)
        };
        let (dx, dy) = (-lowest(ZKind::X), -lowest(ZKind::Y));
        states.iter().map(|s| s.shifted(dx, dy)).collect()
    }

    fn indices(&self, w: &Word) -> Vec<Index> {
        w.indices().collect()
    }

    fn ideal_indices(&self, a: &ConstructibleIdeal) -> Vec<Index> {
        a.prefix().map(|w| w.indices().collect()).unwrap_or_default()
    }

    fn absorber_count(&self, w: &Word) -> usize {
        w.letters().iter().filter(|l| self.presentation().is_absorber(**l)).count()
    }

    fn ideal_generators(&self, a: &ConstructibleIdeal, indices: &[Index]) -> Vec<Word> {
        ideals::generators(self.presentation(), a, indices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn search_generators_cover_first_letters() {
        let r = catalog::monoid_r();
        let states = vec!["x2 a R".parse().unwrap(), "y-1 Z".parse().unwrap(), ConstructibleIdeal::Empty];
        let gens: Vec<String> = r.search_generators(&states).iter().map(|w| w.to_string()).collect();
        for expected in ["a", "b", "f", "x_2", "x_3", "y_-1", "y_0"] {
            assert!(gens.contains(&expected.to_string()), "{expected} missing from {gens:?}");
        }
    }

    #[test]
    fn symmetry_key_identifies_translates() {
        let r = catalog::monoid_r();
        let a: Vec<ConstructibleIdeal> = vec!["b x3 R".parse().unwrap(), "b y1 X".parse().unwrap()];
        let b: Vec<ConstructibleIdeal> = vec!["b x-2 R".parse().unwrap(), "b y7 X".parse().unwrap()];
        assert_eq!(r.symmetry_key(&a), r.symmetry_key(&b));
    }
}
