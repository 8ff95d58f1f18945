//! The shipped monoids.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ideals::{self, ConstructibleIdeal, Shape};
use crate::rewrite::{Absorb, LetterAction, Mode, Presentation};
use crate::words::{Index, Letter, Word, ZKind};


#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonoidKind {
    R,
    S4,
    S5,
    Free(usize),
}

#[derive(Clone, Debug)]
pub struct CatalogMonoid {
    kind: MonoidKind,
    presentation: Presentation,
    shapes: Vec<Shape>,
    cited: Vec<Shape>,
}

const FREE_LETTERS: [Letter; 5] = [Letter::A, Letter::B, Letter::C, Letter::D, Letter::F];

fn action(letter: Letter, x: Absorb, y: Absorb) -> LetterAction {
    LetterAction { letter, x, y }
}

fn tail_shape(x: Mode, y: Mode) -> Shape {
    Shape::Tail { x, y }
}

fn certified(name: &str, letters: &[Letter], indexed: bool, actions: &[LetterAction]) -> Presentation {
    Presentation::new(name, letters, indexed, actions)
        .unwrap_or_else(|e| panic!("shipped presentation {name} failed certification: {e}"))
}

pub fn monoid_r() -> CatalogMonoid {
    use Letter::*;
    let p = certified(
        "R",
        &[A, B, C, D, F],
        true,
        &[
            action(A, Absorb::full(0), Absorb::full(1)),
            action(C, Absorb::full(1), Absorb::full(0)),
            action(D, Absorb::tail(0), Absorb::NONE),
            action(F, Absorb::NONE, Absorb::tail(0)),
        ],
    );
    let shapes = vec![Shape::R, Shape::P, Shape::Z, Shape::X, Shape::Y];
    CatalogMonoid { kind: MonoidKind::R, presentation: p, cited: shapes.clone(), shapes }
}

pub fn monoid_s4() -> CatalogMonoid {
    use Letter::*;
    let p = certified(
        "S4",
        &[A, B, C, D],
        true,
        &[
            action(A, Absorb::full(0), Absorb::full(1)),
            action(C, Absorb::NONE, Absorb::full(0)),
            action(D, Absorb::tail(0), Absorb::NONE),
        ],
    );
    let cited = vec![Shape::R, tail_shape(Mode::None, Mode::Full), Shape::X, Shape::Z];
    let shapes = vec![Shape::R, Shape::P, tail_shape(Mode::None, Mode::Full), Shape::X, Shape::Z];
    CatalogMonoid { kind: MonoidKind::S4, presentation: p, shapes, cited }
}

pub fn monoid_s5() -> CatalogMonoid {
    use Letter::*;
    let p = certified(
        "S5",
        &[A, B, C],
        true,
        &[action(A, Absorb::full(0), Absorb::full(1)), action(C, Absorb::NONE, Absorb::full(0))],
    );
    let shapes = vec![Shape::R, tail_shape(Mode::None, Mode::Full), Shape::Z];
    CatalogMonoid { kind: MonoidKind::S5, presentation: p, cited: shapes.clone(), shapes }
}

/// The free monoid on the first `k` of the letters `a b c d f`.
pub fn free_monoid(k: usize) -> Result<CatalogMonoid> {
    if !(1..=FREE_LETTERS.len()).contains(&k) {
        return Err(Error::Invalid(format!("free monoid rank must be in 1..=5, got {k}")));
    }
    let p = Presentation::new(&format!("free:{k}"), &FREE_LETTERS[..k], false, &[])?;
    Ok(CatalogMonoid { kind: MonoidKind::Free(k), presentation: p, cited: vec![Shape::R], shapes: vec![Shape::R] })
}

impl CatalogMonoid {
    /// Looks up `R`, `S4`, `S5` or `free:<k>`.
    pub fn by_name(name: &str) -> Result<CatalogMonoid> {
        match name.trim() {
            "R" | "r" => Ok(monoid_r()),
            "S4" | "s4" => Ok(monoid_s4()),
            "S5" | "s5" => Ok(monoid_s5()),
            "S3" | "S6" | "S8" | "S9" => Err(Error::Unsupported(format!("{name} needs a factor whose presentation is not available"))),
            other => match other.strip_prefix("free:") {
                Some(k) => free_monoid(k.parse().map_err(|_| Error::Invalid(format!("bad free monoid rank `{k}`")))?),
                None => Err(Error::Invalid(format!("unknown monoid `{other}`; expected R, S4, S5 or free:<k>"))),
            },
        }
    }

    pub fn kind(&self) -> MonoidKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        self.presentation.name()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Shapes of nonempty constructible ideals, as verified by closure.
    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    /// Shapes of the literature's list for this monoid. Differs from
    /// [`CatalogMonoid::shapes`] only for `S4`, whose list omits `P`.
    pub fn cited_shapes(&self) -> &[Shape] {
        &self.cited
    }

    pub fn is_r(&self) -> bool {
        self.kind == MonoidKind::R
    }

    /// The smallest listed tail shape charging the generic `z_n w` of the
    /// given kind.
    pub fn tail_family(&self, kind: ZKind) -> Option<Shape> {
        self.shapes
            .iter()
            .copied()
            .filter(|s| s.is_tail() && s.mode(kind) >= Mode::Tail)
            .min_by_key(|s| (s.mode(ZKind::X) as u8) + (s.mode(ZKind::Y) as u8))
    }

    /// Kinds whose generic `z_n` must lie in any listed ideal containing
    /// infinitely many `z_n` of kind `kind`.
    pub fn forced_kinds(&self, kind: ZKind) -> Vec<ZKind> {
        let mut out: Vec<ZKind> = vec![kind];
        for s in self.shapes.iter().filter(|s| s.is_tail() && s.mode(kind) == Mode::Full) {
            for k in ZKind::ALL {
                if s.mode(k) == Mode::Full && !out.contains(&k) {
                    out.push(k);
                }
            }
        }
        out
    }

    /// Letters with indices drawn from `window`.
    pub fn window_letters(&self, window: (Index, Index)) -> Vec<Letter> {
        self.presentation.window_letters(window)
    }

    /// All normal-form words of length at most `max_len` over the window.
    pub fn words_up_to(&self, max_len: usize, window: (Index, Index)) -> Vec<Word> {
        let letters = self.window_letters(window);
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut layer = vec![Word::empty()];
        seen.insert(Word::empty());
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &letters {
                    let mut v = w.clone();
                    v.push(l);
                    let nf = self.presentation.normal_form(&v);
                    if seen.insert(nf.clone()) {
                        next.push(nf);
                    }
                }
            }
            layer = next;
        }
        seen.into_iter().collect()
    }

    /// Searches for `x w ~ x w'` with `w ≁ w'` among words of length at most
    /// `max_len` over the window.
    pub fn left_cancellation_counterexample(&self, max_len: usize, window: (Index, Index)) -> Option<(Letter, Word, Word)> {
        let p = &self.presentation;
        let words = self.words_up_to(max_len, window);
        for &x in &self.window_letters(window) {
            let mut images: std::collections::HashMap<Word, &Word> = std::collections::HashMap::new();
            for w in &words {
                let img = p.mul(&Word::letter(x), w);
                if let Some(prev) = images.insert(img, w) {
                    if prev != w {
                        return Some((x, prev.clone(), w.clone()));
                    }
                }
            }
        }
        None
    }

    /// Canonical ideals reached from principal ideals `wS` with `|w| ≤ 1`
    /// by `depth` rounds of letter pullbacks, letter translations and
    /// pairwise intersections, with indices in `window`. Prefixes longer than
    /// `max_prefix` are discarded to keep the closure finite.
    pub fn ideal_closure(&self, depth: usize, window: (Index, Index), max_prefix: usize) -> Vec<ConstructibleIdeal> {
        let p = &self.presentation;
        let letters = self.window_letters(window);
        let mut all: Vec<ConstructibleIdeal> = Vec::new();
        let mut seen: HashSet<ConstructibleIdeal> = HashSet::new();
        let mut frontier: Vec<ConstructibleIdeal> = Vec::new();
        let mut admit = |i: ConstructibleIdeal, all: &mut Vec<_>, next: &mut Vec<_>| {
            if i.prefix().is_none_or(|w| w.len() <= max_prefix) && seen.insert(i.clone()) {
                all.push(i.clone());
                next.push(i);
            }
        };
        admit(ConstructibleIdeal::full(), &mut all, &mut frontier);
        for &l in &letters {
            admit(ConstructibleIdeal::principal(Word::letter(l)), &mut all, &mut frontier);
        }
        for _ in 0..depth {
            let mut next = Vec::new();
            let snapshot = all.clone();
            for i in &frontier {
                for &l in &letters {
                    admit(ideals::pullback_letter(p, l, i), &mut all, &mut next);
                    admit(ideals::translate(p, &Word::letter(l), i), &mut all, &mut next);
                }
                for j in &snapshot {
                    admit(ideals::intersect(p, i, j), &mut all, &mut next);
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        all
    }

    /// Shapes occurring in [`CatalogMonoid::ideal_closure`].
    pub fn closure_shapes(&self, depth: usize, window: (Index, Index), max_prefix: usize) -> BTreeSet<Shape> {
        self.ideal_closure(depth, window, max_prefix).iter().filter_map(|i| i.shape()).collect()
    }
}

impl fmt::Display for CatalogMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl PartialEq for CatalogMonoid {
    fn eq(&self, other: &CatalogMonoid) -> bool {
        self.kind == other.kind
    }
}

impl Eq for CatalogMonoid {}

/// Named products from the literature that involve a monoid whose
/// presentation is not shipped.
pub fn unavailable(name: &str) -> Error {
    Error::Unsupported(format!("monoid {name} has a factor whose presentation is not shipped"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_name() {
        assert_eq!(CatalogMonoid::by_name("R").unwrap().kind(), MonoidKind::R);
        assert_eq!(CatalogMonoid::by_name("free:2").unwrap().kind(), MonoidKind::Free(2));
        assert!(CatalogMonoid::by_name("free:9").is_err());
        assert!(matches!(CatalogMonoid::by_name("S6"), Err(Error::Unsupported(_))));
        assert!(CatalogMonoid::by_name("S7").is_err());
    }

    #[test]
    fn cited_shape_lists() {
        let s5 = monoid_s5();
        assert!(!s5.cited_shapes().contains(&Shape::X));
        let s4 = monoid_s4();
        assert!(s4.cited_shapes().contains(&Shape::X));
    }

    #[test]
    fn closure_stays_in_shape_lists() {
        for m in [monoid_r(), monoid_s4(), monoid_s5(), free_monoid(2).unwrap(), free_monoid(1).unwrap()] {
            let found = m.closure_shapes(3, (-1, 1), 3);
            let listed: BTreeSet<Shape> = m.shapes().iter().copied().collect();
            assert_eq!(found, listed, "{}", m.name());
        }
    }

    #[test]
    fn s4_punctured_witness() {
        let m = monoid_s4();
        let p = m.presentation();
        let got = ideals::intersect(p, &"d R".parse().unwrap(), &"b x0 R".parse().unwrap());
        assert_eq!(got, "b x0 P".parse().unwrap());
    }

    #[test]
    fn tail_families() {
        let r = monoid_r();
        assert_eq!(r.tail_family(ZKind::X), Some(Shape::X));
        assert_eq!(r.forced_kinds(ZKind::X), vec![ZKind::X, ZKind::Y]);
        let s5 = monoid_s5();
        assert_eq!(s5.tail_family(ZKind::X), Some(Shape::Z));
        assert_eq!(s5.tail_family(ZKind::Y), Some(Shape::Tail { x: Mode::None, y: Mode::Full }));
    }

    #[test]
    fn cancellation_probe_small() {
        assert_eq!(monoid_r().left_cancellation_counterexample(2, (-1, 1)), None);
    }
}
