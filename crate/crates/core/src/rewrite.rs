//! Length-reducing rewriting systems for the catalog presentations.
//!
//! Every relation of a catalog monoid has the shape `ℓ b z_n [t] = b z_{n+δ} [t]`
//! where `ℓ` is one of the absorbing letters `a c d f`, `z` is `x` or `y`
//! and the bracketed tail letter is required by some relations. A
//! presentation is therefore described by one [`Absorb`] entry per
//! absorbing letter and index kind.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{concat, Index, Letter, Word, ZKind};

/// How a letter interacts with a following `b z_n`.
///
/// The order matters: `None < Tail < Full`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Mode {
    /// No relation.
    None,
    /// `ℓ b z_n t = b z_{n+δ} t` only for a nonempty tail `t`.
    Tail,
    /// `ℓ b z_n = b z_{n+δ}`.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Absorb {
    pub mode: Mode,
    pub delta: Index,
}

impl Absorb {
    pub const NONE: Absorb = Absorb { mode: Mode::None, delta: 0 };

    pub fn full(delta: Index) -> Absorb {
        Absorb { mode: Mode::Full, delta }
    }

    pub fn tail(delta: Index) -> Absorb {
        Absorb { mode: Mode::Tail, delta }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LetterAction {
    pub letter: Letter,
    pub x: Absorb,
    pub y: Absorb,
}

impl LetterAction {
    pub fn on(&self, kind: ZKind) -> Absorb {
        match kind {
            ZKind::X => self.x,
            ZKind::Y => self.y,
        }
    }
}

/// One family of oriented rules `ℓ b z_n [t] → b z_{n+δ} [t]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RuleSchema {
    pub letter: Letter,
    pub kind: ZKind,
    pub mode: Mode,
    pub delta: Index,
}

impl RuleSchema {
    pub fn lhs_len(&self) -> usize {
        if self.mode == Mode::Tail {
            4
        } else {
            3
        }
    }
}

impl fmt::Display for RuleSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = match self.kind {
            ZKind::X => "x",
            ZKind::Y => "y",
        };
        let shift = match self.delta {
            0 => String::new(),
            d if d > 0 => format!("+{d}"),
            d => format!("{d}"),
        };
        let t = if self.mode == Mode::Tail { " t" } else { "" };
        write!(f, "{} b {z}_n{t} -> b {z}_n{shift}{t}", self.letter)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub position: usize,
    pub rule: String,
    pub result: String,
}

/// A certified presentation: generators plus the absorbing-letter table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    letters: Vec<Letter>,
    indexed: bool,
    actions: Vec<LetterAction>,
}

pub const DEFAULT_CERT_WINDOW: (Index, Index) = (-3, 3);

impl Presentation {
    /// Builds a presentation and refuses it unless its confluence
    /// certificate passes on the default window.
    pub fn new(name: &str, letters: &[Letter], indexed: bool, actions: &[LetterAction]) -> Result<Presentation> {
        let p = Presentation::unchecked(name, letters, indexed, actions)?;
        let report = p.confluence_certificate(DEFAULT_CERT_WINDOW)?;
        if let Some(bad) = report.overlaps.iter().find(|o| !o.joinable) {
            return Err(Error::NotConfluent {
                presentation: name.to_string(),
                pair: format!("{} => {} / {}", bad.word, bad.left, bad.right),
            });
        }
        Ok(p)
    }

    /// Builds a presentation without certifying it.
    pub fn unchecked(name: &str, letters: &[Letter], indexed: bool, actions: &[LetterAction]) -> Result<Presentation> {
        if letters.iter().any(|l| l.is_indexed()) {
            return Err(Error::Invalid("generator list holds only the unindexed letters".into()));
        }
        for act in actions {
            if !matches!(act.letter, Letter::A | Letter::C | Letter::D | Letter::F) || !letters.contains(&act.letter) {
                return Err(Error::Invalid(format!("letter {} cannot absorb", act.letter)));
            }
        }
        if !actions.is_empty() && !(indexed && letters.contains(&Letter::B)) {
            return Err(Error::Invalid("relations need b and the indexed letters".into()));
        }
        Ok(Presentation {
            name: name.to_string(),
            letters: letters.to_vec(),
            indexed,
            actions: actions.to_vec(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Unindexed generators.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn has_indexed(&self) -> bool {
        self.indexed
    }

    pub fn actions(&self) -> &[LetterAction] {
        &self.actions
    }

    pub fn absorb(&self, l: Letter, kind: ZKind) -> Absorb {
        self.actions.iter().find(|a| a.letter == l).map_or(Absorb::NONE, |a| a.on(kind))
    }

    pub fn is_absorber(&self, l: Letter) -> bool {
        self.actions.iter().any(|a| a.letter == l)
    }

    pub fn rules(&self) -> Vec<RuleSchema> {
        let mut out = Vec::new();
        for a in &self.actions {
            for kind in ZKind::ALL {
                let ab = a.on(kind);
                if ab.mode != Mode::None {
                    out.push(RuleSchema { letter: a.letter, kind, mode: ab.mode, delta: ab.delta });
                }
            }
        }
        out
    }

    pub fn in_alphabet(&self, l: Letter) -> bool {
        if l.is_indexed() {
            self.indexed
        } else {
            self.letters.contains(&l)
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|l| !self.in_alphabet(**l)) {
            Some(l) => Err(Error::Invalid(format!("letter {l} is not in the alphabet of {}", self.name))),
            None => Ok(()),
        }
    }

    /// Concrete alphabet with indexed letters drawn from `window`.
    pub fn window_letters(&self, window: (Index, Index)) -> Vec<Letter> {
        let mut out = self.letters.clone();
        if self.indexed {
            for n in window.0..=window.1 {
                out.push(Letter::X(n));
            }
            for n in window.0..=window.1 {
                out.push(Letter::Y(n));
            }
        }
        out
    }

    fn redex_at(&self, w: &[Letter], i: usize) -> Option<(Letter, Absorb)> {
        if i + 2 >= w.len() || w[i + 1] != Letter::B {
            return None;
        }
        let (kind, n) = w[i + 2].z_parts()?;
        let ab = self.absorb(w[i], kind);
        match ab.mode {
            Mode::Full => Some((Letter::z(kind, n + ab.delta), ab)),
            Mode::Tail if i + 3 < w.len() => Some((Letter::z(kind, n + ab.delta), ab)),
            _ => None,
        }
    }

    /// One rewrite at position `i`, if a rule applies there.
    pub fn rewrite_at(&self, w: &Word, i: usize) -> Option<Word> {
        let (z, _) = self.redex_at(&w.0, i)?;
        let mut v = w.0.clone();
        v.remove(i);
        v[i + 1] = z;
        Some(Word(v))
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        let mut v = w.0.clone();
        self.reduce_in_place(&mut v, &mut |_, _| {});
        Word(v)
    }

    pub fn normal_form_with_steps(&self, w: &Word) -> (Word, Vec<Step>) {
        let mut v = w.0.clone();
        let mut steps = Vec::new();
        let mut record = |pos: usize, cur: &[Letter]| {
            steps.push((pos, Word(cur.to_vec())));
        };
        self.reduce_in_place(&mut v, &mut record);
        let rules = self.rules();
        let mut prev = w.clone();
        let steps = steps
            .into_iter()
            .map(|(pos, cur)| {
                let kind = prev.0[pos + 2].z_parts().map(|p| p.0).unwrap_or(ZKind::X);
                let rule = rules
                    .iter()
                    .find(|r| r.letter == prev.0[pos] && r.kind == kind)
                    .map(|r| r.to_string())
                    .unwrap_or_default();
                prev = cur.clone();
                Step { position: pos, rule, result: cur.to_string() }
            })
            .collect();
        (Word(v), steps)
    }

    fn reduce_in_place(&self, v: &mut Vec<Letter>, on_step: &mut dyn FnMut(usize, &[Letter])) {
        if self.actions.is_empty() {
            return;
        }
        let mut i = 0;
        while i + 2 < v.len() {
            if let Some((z, _)) = self.redex_at(v, i) {
                v.remove(i);
                v[i + 1] = z;
                on_step(i, v);
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        (0..w.len()).all(|i| self.redex_at(&w.0, i).is_none())
    }

    pub fn equivalent(&self, u: &Word, v: &Word) -> bool {
        self.normal_form(u) == self.normal_form(v)
    }

    /// Normal form of `u · v`.
    pub fn mul(&self, u: &Word, v: &Word) -> Word {
        self.normal_form(&concat(u, v))
    }

    /// `l⁻¹ w` for a normal-form `w`.
    pub fn divide_letter(&self, l: Letter, w: &Word) -> Option<Word> {
        let first = w.first()?;
        if first == l {
            return Some(w.tail());
        }
        if first != Letter::B || w.len() < 2 {
            return None;
        }
        let (kind, n) = w.0[1].z_parts()?;
        let ab = self.absorb(l, kind);
        let allowed = match ab.mode {
            Mode::Full => true,
            Mode::Tail => w.len() > 2,
            Mode::None => false,
        };
        if !allowed {
            return None;
        }
        let mut v = w.0.clone();
        v[1] = Letter::z(kind, n - ab.delta);
        Some(Word(v))
    }

    /// The unique `u` (in normal form) with `x · u ~ w`, if any.
    pub fn left_divide(&self, x: &Word, w: &Word) -> Option<Word> {
        let mut cur = self.normal_form(w);
        for &l in x.letters() {
            cur = self.divide_letter(l, &cur)?;
        }
        Some(cur)
    }

    pub fn min_count(&self, w: &Word, letter: Letter) -> usize {
        self.normal_form(w).letters().iter().filter(|l| **l == letter).count()
    }

    /// Enumerates every overlap between left-hand sides of rule instances
    /// with indices in `window` and checks that both one-step rewrites
    /// have the same normal form.
    pub fn confluence_certificate(&self, window: (Index, Index)) -> Result<CertificateReport> {
        if window.0 > window.1 {
            return Err(Error::Precondition("empty index window".into()));
        }
        let letters = self.window_letters(window);
        let mut lhs: Vec<Word> = Vec::new();
        for rule in self.rules() {
            for n in window.0..=window.1 {
                let base = vec![rule.letter, Letter::B, Letter::z(rule.kind, n)];
                if rule.mode == Mode::Tail {
                    for &t in &letters {
                        let mut v = base.clone();
                        v.push(t);
                        lhs.push(Word(v));
                    }
                } else {
                    lhs.push(Word(base));
                }
            }
        }
        let mut by_first: HashMap<Letter, Vec<&Word>> = HashMap::new();
        for l in &lhs {
            by_first.entry(l.0[0]).or_default().push(l);
        }
        let mut overlaps = Vec::new();
        for l1 in &lhs {
            for j in 1..l1.len() {
                let Some(cands) = by_first.get(&l1.0[j]) else { continue };
                for l2 in cands {
                    let k = (l1.len() - j).min(l2.len());
                    if l1.0[j..j + k] != l2.0[..k] {
                        continue;
                    }
                    let mut word = l1.0.clone();
                    if l2.len() > k {
                        word.extend_from_slice(&l2.0[k..]);
                    }
                    let word = Word(word);
                    let (Some(left), Some(right)) = (self.rewrite_at(&word, 0), self.rewrite_at(&word, j)) else {
                        continue;
                    };
                    let left = self.normal_form(&left);
                    let right = self.normal_form(&right);
                    overlaps.push(CheckedOverlap { joinable: left == right, word, left, right });
                }
            }
        }
        overlaps.sort_by(|a, b| a.word.cmp(&b.word));
        overlaps.dedup_by(|a, b| a.word == b.word);
        let passed = overlaps.iter().all(|o| o.joinable);
        Ok(CertificateReport {
            presentation: self.name.clone(),
            window,
            passed,
            argument: EQUIVARIANCE_ARGUMENT.to_string(),
            rules: self.rules().iter().map(|r| r.to_string()).collect(),
            overlaps,
        })
    }
}

const EQUIVARIANCE_ARGUMENT: &str = "each rule family imposes no constraint between the indices of \
different positions, and shifting every x-index (or every y-index) by a constant maps rule instances \
to rule instances; every overlap is therefore a translate of one whose indices lie in any window of \
width at least two, so joinability on the window covers all overlaps. Rules strictly shorten words, \
so local confluence gives confluence.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckedOverlap {
    #[serde(serialize_with = "crate::words::serialize_display")]
    pub word: Word,
    #[serde(serialize_with = "crate::words::serialize_display")]
    pub left: Word,
    #[serde(serialize_with = "crate::words::serialize_display")]
    pub right: Word,
    pub joinable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub presentation: String,
    pub window: (Index, Index),
    pub passed: bool,
    pub argument: String,
    pub rules: Vec<String>,
    pub overlaps: Vec<CheckedOverlap>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn normal_forms_of_r() {
        let r = catalog::monoid_r().presentation().clone();
        assert_eq!(r.normal_form(&w("a b x_0")), w("b x_0"));
        assert_eq!(r.normal_form(&w("a c b y_0")), w("b y_1"));
        assert_eq!(r.normal_form(&w("d b x_2 a")), w("b x_2 a"));
        assert_eq!(r.normal_form(&Word::empty()), Word::empty());
        assert_eq!(r.normal_form(&w("d b x_2")), w("d b x_2"));
        assert_eq!(r.normal_form(&w("a d b x_0 a")), w("b x_0 a"));
        assert_eq!(r.normal_form(&w("c c d b x_0 y_1")), w("b x_2 y_1"));
    }

    #[test]
    fn equivalence_examples() {
        let r = catalog::monoid_r().presentation().clone();
        assert!(r.equivalent(&w("a b x_0"), &w("b x_0")));
        assert!(!r.equivalent(&w("b x_0"), &w("b x_1")));
        assert!(!r.equivalent(&w("d b x_0"), &w("b x_0")));
    }

    #[test]
    fn steps_are_recorded() {
        let r = catalog::monoid_r().presentation().clone();
        let (nf, steps) = r.normal_form_with_steps(&w("a c b y_0"));
        assert_eq!(nf, w("b y_1"));
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].rule, "c b y_n -> b y_n");
        assert_eq!(steps[1].rule, "a b y_n -> b y_n+1");
    }

    #[test]
    fn left_division() {
        let r = catalog::monoid_r().presentation().clone();
        assert_eq!(r.left_divide(&w("b"), &w("b x_3 a")), Some(w("x_3 a")));
        assert_eq!(r.left_divide(&w("a"), &w("b x_0")), Some(w("b x_0")));
        assert_eq!(r.left_divide(&w("f"), &w("b x_0 a")), None);
        assert_eq!(r.left_divide(&Word::empty(), &w("a b")), Some(w("a b")));
        assert_eq!(r.left_divide(&Word::empty(), &Word::empty()), Some(Word::empty()));
        assert_eq!(r.left_divide(&w("a"), &Word::empty()), None);
        assert_eq!(r.left_divide(&w("d"), &w("b x_0")), None);
        assert_eq!(r.left_divide(&w("d"), &w("b x_0 y_2")), Some(w("b x_0 y_2")));
        assert_eq!(r.left_divide(&w("c"), &w("b x_0")), Some(w("b x_-1")));
    }

    #[test]
    fn min_counts() {
        let r = catalog::monoid_r().presentation().clone();
        assert_eq!(r.min_count(&w("a a a a a a b x_5"), Letter::A), 0);
        assert_eq!(r.min_count(&w("d d d d d d d d d b x_0 d d d"), Letter::D), 3);
        assert_eq!(r.min_count(&Word::empty(), Letter::C), 0);
    }

    #[test]
    fn certificates() {
        let r = catalog::monoid_r().presentation().clone();
        let rep = r.confluence_certificate((-3, 3)).unwrap();
        assert!(rep.passed);
        assert!(!rep.overlaps.is_empty());
        let free = catalog::free_monoid(3).unwrap().presentation().clone();
        let rep = free.confluence_certificate((-1, 1)).unwrap();
        assert!(rep.passed && rep.overlaps.is_empty());
        let s5 = catalog::monoid_s5().presentation().clone();
        assert!(s5.confluence_certificate((-3, 3)).unwrap().passed);
        assert!(r.confluence_certificate((1, 0)).is_err());
    }
}
