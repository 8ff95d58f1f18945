//! A reference implementation of the monoid `R` written directly from its
//! six defining relations, kept separate from the library's rewriting and
//! ideal code.

#![allow(dead_code)]

use bq_core::hull::Move;
use bq_core::{Hull, Index, Letter, Word};

/// One rewrite of the longer side of a relation at position `i`.
pub fn rule_at(w: &[Letter], i: usize) -> Option<Vec<Letter>> {
    if i + 2 >= w.len() || w[i + 1] != Letter::B {
        return None;
    }
    let has_tail = i + 3 < w.len();
    let replaced = match (w[i], w[i + 2]) {
        (Letter::A, Letter::X(n)) => Letter::X(n),
        (Letter::A, Letter::Y(n)) => Letter::Y(n + 1),
        (Letter::C, Letter::X(n)) => Letter::X(n + 1),
        (Letter::C, Letter::Y(n)) => Letter::Y(n),
        (Letter::D, Letter::X(n)) if has_tail => Letter::X(n),
        (Letter::F, Letter::Y(n)) if has_tail => Letter::Y(n),
        _ => return None,
    };
    let mut out = Vec::with_capacity(w.len() - 1);
    out.extend_from_slice(&w[..i]);
    out.push(Letter::B);
    out.push(replaced);
    out.extend_from_slice(&w[i + 3..]);
    Some(out)
}

/// Every single-step rewrite of `w`.
pub fn successors(w: &[Letter]) -> Vec<Vec<Letter>> {
    (0..w.len()).filter_map(|i| rule_at(w, i)).collect()
}

/// Rewrites at the leftmost applicable position until none applies.
pub fn nf(w: &[Letter]) -> Vec<Letter> {
    let mut cur = w.to_vec();
    while let Some(next) = (0..cur.len()).find_map(|i| rule_at(&cur, i)) {
        cur = next;
    }
    cur
}

pub fn nfw(w: &Word) -> Word {
    Word(nf(w.letters()))
}

pub fn mul(u: &Word, v: &Word) -> Word {
    let mut all = u.letters().to_vec();
    all.extend_from_slice(v.letters());
    Word(nf(&all))
}

/// The unique `q` with `l q = w` for a normal form `w`, if any.
pub fn divide_letter(l: Letter, w: &[Letter]) -> Option<Vec<Letter>> {
    if w.first() == Some(&l) {
        return Some(w[1..].to_vec());
    }
    if w.len() < 2 || w[0] != Letter::B {
        return None;
    }
    let rest = &w[2..];
    let head = match (l, w[1]) {
        (Letter::A, Letter::X(n)) => Letter::X(n),
        (Letter::A, Letter::Y(n)) => Letter::Y(n - 1),
        (Letter::C, Letter::X(n)) => Letter::X(n - 1),
        (Letter::C, Letter::Y(n)) => Letter::Y(n),
        (Letter::D, Letter::X(n)) if !rest.is_empty() => Letter::X(n),
        (Letter::F, Letter::Y(n)) if !rest.is_empty() => Letter::Y(n),
        _ => return None,
    };
    let mut q = vec![Letter::B, head];
    q.extend_from_slice(rest);
    Some(q)
}

/// `v⁻¹w`, if `v` left-divides `w`.
pub fn divide(v: &Word, w: &Word) -> Option<Word> {
    let mut cur = nf(w.letters());
    for &l in v.letters() {
        cur = divide_letter(l, &cur)?;
    }
    Some(Word(cur))
}

/// Shapes at the identity, by their one-letter codes.
pub fn admits(shape: char, q: &[Letter]) -> bool {
    match (shape, q.first()) {
        ('R', _) => true,
        ('P', _) => !q.is_empty(),
        ('Z', Some(Letter::X(_) | Letter::Y(_))) => true,
        ('X', Some(Letter::X(_))) => q.len() >= 2,
        ('Y', Some(Letter::Y(_))) => q.len() >= 2,
        _ => false,
    }
}

/// An ideal `v · Sh`, or the empty ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ideal {
    Empty,
    Shaped(Word, char),
}

impl Ideal {
    /// Parses `w Sh` or `0`.
    pub fn parse(s: &str) -> Ideal {
        let s = s.trim();
        if s == "0" {
            return Ideal::Empty;
        }
        let (w, sh) = s.rsplit_once(' ').unwrap_or(("", s));
        let shape = sh.chars().next().unwrap();
        assert!(sh.len() == 1 && "RPZXY".contains(shape), "bad shape in `{s}`");
        Ideal::Shaped(nfw(&Word::parse(w).unwrap()), shape)
    }

    pub fn contains(&self, w: &Word) -> bool {
        match self {
            Ideal::Empty => false,
            Ideal::Shaped(v, sh) => divide(v, w).is_some_and(|q| admits(*sh, q.letters())),
        }
    }
}

pub fn alphabet(window: (Index, Index)) -> Vec<Letter> {
    let mut out = vec![Letter::A, Letter::B, Letter::C, Letter::D, Letter::F];
    for n in window.0..=window.1 {
        out.push(Letter::X(n));
        out.push(Letter::Y(n));
    }
    out
}

/// Distinct normal forms of words of length at most `len`.
pub fn normal_words(len: usize, window: (Index, Index)) -> Vec<Word> {
    let letters = alphabet(window);
    let mut seen = std::collections::BTreeSet::new();
    let mut layer = vec![Vec::new()];
    seen.insert(Vec::new());
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut v: Vec<Letter> = w.clone();
                v.push(l);
                if rule_at(&v, v.len().saturating_sub(3)).is_none() && (v.len() < 4 || rule_at(&v, v.len() - 4).is_none()) {
                    seen.insert(v.clone());
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    seen.into_iter().map(Word).collect()
}

/// `h(w)` by moves in application order.
pub fn apply(h: &Hull, w: &Word) -> Option<Word> {
    if h.is_marked_zero() {
        return None;
    }
    let mut cur = nfw(w);
    for mv in h.moves() {
        cur = match mv {
            Move::Mul(s) => mul(s, &cur),
            Move::Div(s) => divide(s, &cur)?,
        };
    }
    Some(cur)
}
