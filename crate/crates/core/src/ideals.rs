//! Constructible right ideals of the catalog monoids in canonical form.
//!
//! Every nonempty ideal is `v · Sh` where `v` is a normal-form word and
//! `Sh` is one of a handful of shapes at the identity:
//!
//! | shape | elements |
//! |---|---|
//! | `R` | everything |
//! | `P` | everything except `e` |
//! | `Z` | `x_n q`, `y_n q` for all `n` and all `q` |
//! | `X` | `x_n q` with `q ≠ e` |
//! | `Y` | `y_n q` with `q ≠ e` |
//!
//! The tail shapes are instances of a general [`Shape::Tail`] carrying one
//! [`Mode`] per index kind, which also covers `⋃ y_n S` in the smaller
//! catalog monoids.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rewrite::{Mode, Presentation};
use crate::words::{concat, Index, Letter, Word, ZKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Full,
    Punctured,
    /// `⋃ z_n q` over the kinds whose mode is not `None`; a `Tail` mode
    /// requires `q ≠ e`.
    Tail { x: Mode, y: Mode },
}

impl Shape {
    pub const R: Shape = Shape::Full;
    pub const P: Shape = Shape::Punctured;
    pub const Z: Shape = Shape::Tail { x: Mode::Full, y: Mode::Full };
    pub const X: Shape = Shape::Tail { x: Mode::Tail, y: Mode::None };
    pub const Y: Shape = Shape::Tail { x: Mode::None, y: Mode::Tail };

    /// Mode of a tail shape on `kind`; `None` for the other shapes.
    pub fn mode(self, kind: ZKind) -> Mode {
        match (self, kind) {
            (Shape::Tail { x, .. }, ZKind::X) => x,
            (Shape::Tail { y, .. }, ZKind::Y) => y,
            _ => Mode::None,
        }
    }

    pub fn is_tail(self) -> bool {
        matches!(self, Shape::Tail { .. })
    }

    /// Membership of a normal-form word in the shape at the identity.
    pub fn admits(self, q: &Word) -> bool {
        match self {
            Shape::Full => true,
            Shape::Punctured => !q.is_empty(),
            Shape::Tail { .. } => match q.first().and_then(|l| l.z_parts()) {
                Some((kind, _)) => match self.mode(kind) {
                    Mode::Full => true,
                    Mode::Tail => q.len() >= 2,
                    Mode::None => false,
                },
                None => false,
            },
        }
    }

    pub fn tag(self) -> String {
        match self {
            Shape::Full => "Principal".into(),
            Shape::Punctured => "Punctured".into(),
            s if s == Shape::Z => "TailZ".into(),
            s if s == Shape::X => "TailX".into(),
            s if s == Shape::Y => "TailY".into(),
            Shape::Tail { x, y } => format!("Tail{}{}", mode_code(x), mode_code(y)),
        }
    }

    fn code(self) -> String {
        match self {
            Shape::Full => "R".into(),
            Shape::Punctured => "P".into(),
            s if s == Shape::Z => "Z".into(),
            s if s == Shape::X => "X".into(),
            s if s == Shape::Y => "Y".into(),
            Shape::Tail { x, y } => format!("T{}{}", mode_code(x), mode_code(y)),
        }
    }

    fn from_code(s: &str) -> Option<Shape> {
        let tail = |x: char, y: char| Some(Shape::Tail { x: mode_from_code(x)?, y: mode_from_code(y)? });
        match s {
            "R" | "Principal" => Some(Shape::R),
            "P" | "Punctured" => Some(Shape::P),
            "Z" | "TailZ" => Some(Shape::Z),
            "X" | "TailX" => Some(Shape::X),
            "Y" | "TailY" => Some(Shape::Y),
            _ => {
                let rest = s.strip_prefix("Tail").or_else(|| s.strip_prefix('T'))?;
                let mut chars = rest.chars();
                match (chars.next(), chars.next(), chars.next()) {
                    (Some(x), Some(y), None) => match tail(x, y)? {
                        Shape::Tail { x: Mode::None, y: Mode::None } => None,
                        sh => Some(sh),
                    },
                    _ => None,
                }
            }
        }
    }
}

fn mode_code(m: Mode) -> char {
    match m {
        Mode::None => '0',
        Mode::Tail => 't',
        Mode::Full => 'f',
    }
}

fn mode_from_code(c: char) -> Option<Mode> {
    match c {
        '0' => Some(Mode::None),
        't' => Some(Mode::Tail),
        'f' => Some(Mode::Full),
        _ => None,
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructibleIdeal {
    Empty,
    Shaped { prefix: Word, shape: Shape },
}

impl ConstructibleIdeal {
    pub fn new(prefix: Word, shape: Shape) -> ConstructibleIdeal {
        ConstructibleIdeal::Shaped { prefix, shape }
    }

    pub fn full() -> ConstructibleIdeal {
        ConstructibleIdeal::new(Word::empty(), Shape::R)
    }

    pub fn principal(w: Word) -> ConstructibleIdeal {
        ConstructibleIdeal::new(w, Shape::R)
    }

    pub fn punctured(w: Word) -> ConstructibleIdeal {
        ConstructibleIdeal::new(w, Shape::P)
    }

    pub fn tail_z(w: Word) -> ConstructibleIdeal {
        ConstructibleIdeal::new(w, Shape::Z)
    }

    pub fn tail_x(w: Word) -> ConstructibleIdeal {
        ConstructibleIdeal::new(w, Shape::X)
    }

    pub fn tail_y(w: Word) -> ConstructibleIdeal {
        ConstructibleIdeal::new(w, Shape::Y)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ConstructibleIdeal::Empty)
    }

    pub fn prefix(&self) -> Option<&Word> {
        match self {
            ConstructibleIdeal::Shaped { prefix, .. } => Some(prefix),
            ConstructibleIdeal::Empty => None,
        }
    }

    pub fn shape(&self) -> Option<Shape> {
        match self {
            ConstructibleIdeal::Shaped { shape, .. } => Some(*shape),
            ConstructibleIdeal::Empty => None,
        }
    }

    /// Whether this is the whole monoid (given canonical form).
    pub fn is_full(&self) -> bool {
        matches!(self, ConstructibleIdeal::Shaped { prefix, shape: Shape::Full } if prefix.is_empty())
    }

    pub fn tag(&self) -> String {
        match self {
            ConstructibleIdeal::Empty => "Empty".into(),
            ConstructibleIdeal::Shaped { shape, .. } => shape.tag(),
        }
    }

    pub fn shifted(&self, dx: Index, dy: Index) -> ConstructibleIdeal {
        match self {
            ConstructibleIdeal::Empty => ConstructibleIdeal::Empty,
            ConstructibleIdeal::Shaped { prefix, shape } => {
                ConstructibleIdeal::new(prefix.shifted(dx, dy), *shape)
            }
        }
    }

    /// Parses `<word> <shape>` such as `b x0 R`, `a b Z`, `P` or `0`.
    pub fn parse(s: &str) -> Result<ConstructibleIdeal> {
        let trimmed = s.trim();
        if trimmed == "0" || trimmed == "∅" {
            return Ok(ConstructibleIdeal::Empty);
        }
        let (word, code) = match trimmed.rsplit_once(char::is_whitespace) {
            Some((w, c)) => (w, c),
            None => ("", trimmed),
        };
        let shape = Shape::from_code(code).ok_or_else(|| Error::Parse {
            input: s.to_string(),
            position: s.rfind(code).unwrap_or(0),
            message: format!("unknown shape `{code}`; expected R, P, Z, X, Y or T<m><m>"),
        })?;
        let prefix = Word::parse(word).map_err(|e| match e {
            Error::Parse { position, message, .. } => Error::Parse { input: s.to_string(), position, message },
            other => other,
        })?;
        Ok(ConstructibleIdeal::new(prefix, shape))
    }
}

impl fmt::Display for ConstructibleIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructibleIdeal::Empty => f.write_str("0"),
            ConstructibleIdeal::Shaped { prefix, shape } if prefix.is_empty() => write!(f, "{shape}"),
            ConstructibleIdeal::Shaped { prefix, shape } => write!(f, "{prefix} {shape}"),
        }
    }
}

impl std::str::FromStr for ConstructibleIdeal {
    type Err = Error;
    fn from_str(s: &str) -> Result<ConstructibleIdeal> {
        ConstructibleIdeal::parse(s)
    }
}

impl Serialize for ConstructibleIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ConstructibleIdeal", 2)?;
        st.serialize_field("tag", &self.tag())?;
        st.serialize_field("prefix", &self.prefix().map(|w| w.to_string()))?;
        st.end()
    }
}

/// Canonical form of `prefix · shape`.
pub fn canonical(p: &Presentation, prefix: &Word, shape: Shape) -> ConstructibleIdeal {
    let mut v = p.normal_form(prefix).0;
    match shape {
        Shape::Full => return ConstructibleIdeal::new(Word(v), Shape::Full),
        Shape::Tail { x, y } => {
            if !p.has_indexed() || (x == Mode::None && y == Mode::None) {
                return ConstructibleIdeal::Empty;
            }
        }
        Shape::Punctured => {
            if !p.has_indexed() && p.letters().len() == 1 {
                v.push(p.letters()[0]);
                return ConstructibleIdeal::new(Word(v), Shape::Full);
            }
        }
    }
    // Elements below `ℓ b z_n` with a nonempty tail are absorbed.
    loop {
        let n = v.len();
        if n >= 3 && v[n - 2] == Letter::B && p.is_absorber(v[n - 3]) {
            if let Some((kind, idx)) = v[n - 1].z_parts() {
                let ab = p.absorb(v[n - 3], kind);
                if ab.mode >= Mode::Tail {
                    v.remove(n - 3);
                    v[n - 2] = Letter::z(kind, idx + ab.delta);
                    continue;
                }
            }
        }
        break;
    }
    if let Shape::Tail { .. } = shape {
        loop {
            let n = v.len();
            if n >= 2 && v[n - 1] == Letter::B && p.is_absorber(v[n - 2]) {
                let l = v[n - 2];
                let dominated =
                    ZKind::ALL.iter().all(|&k| shape.mode(k) == Mode::None || p.absorb(l, k).mode >= shape.mode(k));
                if dominated {
                    v.remove(n - 2);
                    continue;
                }
            }
            break;
        }
    }
    ConstructibleIdeal::new(Word(v), shape)
}

pub fn canonicalize(p: &Presentation, a: &ConstructibleIdeal) -> ConstructibleIdeal {
    match a {
        ConstructibleIdeal::Empty => ConstructibleIdeal::Empty,
        ConstructibleIdeal::Shaped { prefix, shape } => canonical(p, prefix, *shape),
    }
}

pub fn contains(p: &Presentation, a: &ConstructibleIdeal, w: &Word) -> bool {
    match a {
        ConstructibleIdeal::Empty => false,
        ConstructibleIdeal::Shaped { prefix, shape } => match p.left_divide(prefix, w) {
            Some(q) => shape.admits(&q),
            None => false,
        },
    }
}

/// `x⁻¹ A` for a single letter `x`.
pub fn pullback_letter(p: &Presentation, x: Letter, a: &ConstructibleIdeal) -> ConstructibleIdeal {
    let a = canonicalize(p, a);
    pullback_letter_canonical(p, x, &a)
}

fn pullback_letter_canonical(p: &Presentation, x: Letter, a: &ConstructibleIdeal) -> ConstructibleIdeal {
    let (v, shape) = match a {
        ConstructibleIdeal::Empty => return ConstructibleIdeal::Empty,
        ConstructibleIdeal::Shaped { prefix, shape } => (prefix, *shape),
    };
    let Some(first) = v.first() else {
        return match shape {
            Shape::Full | Shape::Punctured => ConstructibleIdeal::full(),
            Shape::Tail { .. } => match x.z_parts() {
                Some((kind, _)) => match shape.mode(kind) {
                    Mode::Full => ConstructibleIdeal::full(),
                    Mode::Tail => ConstructibleIdeal::punctured(Word::empty()),
                    Mode::None => ConstructibleIdeal::Empty,
                },
                None => ConstructibleIdeal::Empty,
            },
        };
    };
    if first == x {
        return canonical(p, &v.tail(), shape);
    }
    if x.is_indexed() || first.is_indexed() || (x != Letter::B && !p.is_absorber(x)) {
        return ConstructibleIdeal::Empty;
    }
    let Some(k) = meet_bz(p, v, shape) else {
        return ConstructibleIdeal::Empty;
    };
    if x == Letter::B {
        return canonical(p, &k.0, k.1);
    }
    match absorb(p, x, k, -1) {
        Some((pre, sh)) => canonical(p, &concat(&Word::letter(Letter::B), &pre), sh),
        None => ConstructibleIdeal::Empty,
    }
}

/// The part `K ⊆ Z` with `v·Sh ∩ bZ = b·K`, for nonempty `v` not starting
/// with an indexed letter.
fn meet_bz(p: &Presentation, v: &Word, shape: Shape) -> Option<(Word, Shape)> {
    let s_len = v.letters().iter().take_while(|l| p.is_absorber(**l)).count();
    let s = &v.letters()[..s_len];
    let r = &v.letters()[s_len..];
    let base = if r.is_empty() {
        match shape {
            Shape::Full | Shape::Punctured => (Word::empty(), Shape::Z),
            Shape::Tail { .. } => return None,
        }
    } else if r[0] != Letter::B {
        return None;
    } else if r.len() == 1 {
        match shape {
            Shape::Full | Shape::Punctured => (Word::empty(), Shape::Z),
            tail => (Word::empty(), tail),
        }
    } else if r[1].is_indexed() {
        (Word::from_letters(&r[1..]), shape)
    } else {
        return None;
    };
    s.iter().rev().try_fold(base, |k, &l| absorb(p, l, k, 1))
}

/// Image (`sign = 1`) or preimage (`sign = -1`) of `b·K ⊆ bZ` under the
/// absorbing letter `l`, as a part of `Z`.
fn absorb(p: &Presentation, l: Letter, k: (Word, Shape), sign: Index) -> Option<(Word, Shape)> {
    let (pre, shape) = k;
    let Some(first) = pre.first() else {
        let clip = |kind: ZKind| shape.mode(kind).min(p.absorb(l, kind).mode);
        let (x, y) = (clip(ZKind::X), clip(ZKind::Y));
        return if x == Mode::None && y == Mode::None { None } else { Some((pre, Shape::Tail { x, y })) };
    };
    let (kind, n) = first.z_parts().expect("part of Z starts with an indexed letter");
    let ab = p.absorb(l, kind);
    if ab.mode == Mode::None {
        return None;
    }
    let mut letters = pre.0;
    letters[0] = Letter::z(kind, n + sign * ab.delta);
    if letters.len() > 1 || shape != Shape::Full {
        Some((Word(letters), shape))
    } else if ab.mode == Mode::Full {
        Some((Word(letters), Shape::Full))
    } else {
        Some((Word(letters), Shape::Punctured))
    }
}

/// `w⁻¹ A`, peeling the letters of `w` from the left.
pub fn pullback(p: &Presentation, w: &Word, a: &ConstructibleIdeal) -> ConstructibleIdeal {
    let mut cur = canonicalize(p, a);
    for &l in w.letters() {
        if cur.is_empty() {
            break;
        }
        cur = pullback_letter_canonical(p, l, &cur);
    }
    cur
}

/// `w · A`.
pub fn translate(p: &Presentation, w: &Word, a: &ConstructibleIdeal) -> ConstructibleIdeal {
    match a {
        ConstructibleIdeal::Empty => ConstructibleIdeal::Empty,
        ConstructibleIdeal::Shaped { prefix, shape } => canonical(p, &concat(w, prefix), *shape),
    }
}

pub fn intersect(p: &Presentation, a: &ConstructibleIdeal, b: &ConstructibleIdeal) -> ConstructibleIdeal {
    let a = canonicalize(p, a);
    let (v1, s1) = match &a {
        ConstructibleIdeal::Empty => return ConstructibleIdeal::Empty,
        ConstructibleIdeal::Shaped { prefix, shape } => (prefix.clone(), *shape),
    };
    let k = pullback(p, &v1, b);
    let (u, s2) = match k {
        ConstructibleIdeal::Empty => return ConstructibleIdeal::Empty,
        ConstructibleIdeal::Shaped { prefix, shape } => (prefix, shape),
    };
    let meet = match s1 {
        Shape::Full => Some((u, s2)),
        Shape::Punctured if u.is_empty() => Some((u, if s2 == Shape::Full { Shape::Punctured } else { s2 })),
        Shape::Punctured => Some((u, s2)),
        Shape::Tail { x, y } if u.is_empty() => match s2 {
            Shape::Full | Shape::Punctured => Some((u, s1)),
            Shape::Tail { x: x2, y: y2 } => {
                let (mx, my) = (x.min(x2), y.min(y2));
                if mx == Mode::None && my == Mode::None {
                    None
                } else {
                    Some((u, Shape::Tail { x: mx, y: my }))
                }
            }
        },
        Shape::Tail { .. } => match u.first().and_then(|l| l.z_parts()) {
            Some((kind, _)) => match s1.mode(kind) {
                Mode::Full => Some((u, s2)),
                Mode::Tail if u.len() == 1 && s2 == Shape::Full => Some((u, Shape::Punctured)),
                Mode::Tail => Some((u, s2)),
                Mode::None => None,
            },
            None => None,
        },
    };
    match meet {
        Some((u, sh)) => canonical(p, &concat(&v1, &u), sh),
        None => ConstructibleIdeal::Empty,
    }
}

pub fn subset(p: &Presentation, a: &ConstructibleIdeal, b: &ConstructibleIdeal) -> bool {
    intersect(p, a, b) == canonicalize(p, a)
}

/// A short element of `A`, if `A` is nonempty.
pub fn sample(p: &Presentation, a: &ConstructibleIdeal) -> Option<Word> {
    let a = canonicalize(p, a);
    let (v, shape) = match &a {
        ConstructibleIdeal::Empty => return None,
        ConstructibleIdeal::Shaped { prefix, shape } => (prefix, *shape),
    };
    let filler = p.letters().first().copied().unwrap_or(Letter::X(0));
    let tail = match shape {
        Shape::Full => vec![],
        Shape::Punctured => vec![filler],
        Shape::Tail { .. } => {
            let kind = if shape.mode(ZKind::X) != Mode::None { ZKind::X } else { ZKind::Y };
            if shape.mode(kind) == Mode::Full {
                vec![Letter::z(kind, 0)]
            } else {
                vec![Letter::z(kind, 0), filler]
            }
        }
    };
    Some(p.mul(v, &Word(tail)))
}

/// Words generating `A` as a right ideal, with every symbolic index drawn
/// from `indices`. When `indices` contains every index that can interact
/// with a given computation plus one generic value, behaviour on these
/// generators decides behaviour on the whole ideal.
pub fn generators(p: &Presentation, a: &ConstructibleIdeal, indices: &[Index]) -> Vec<Word> {
    let a = canonicalize(p, a);
    let (v, shape) = match &a {
        ConstructibleIdeal::Empty => return vec![],
        ConstructibleIdeal::Shaped { prefix, shape } => (prefix.clone(), *shape),
    };
    let mut singles: Vec<Letter> = p.letters().to_vec();
    if p.has_indexed() {
        for kind in ZKind::ALL {
            singles.extend(indices.iter().map(|&n| Letter::z(kind, n)));
        }
    }
    let mut out = Vec::new();
    match shape {
        Shape::Full => out.push(v),
        Shape::Punctured => out.extend(singles.iter().map(|&l| p.mul(&v, &Word::letter(l)))),
        Shape::Tail { .. } => {
            for kind in ZKind::ALL {
                for &n in indices {
                    let z = Letter::z(kind, n);
                    match shape.mode(kind) {
                        Mode::Full => out.push(p.mul(&v, &Word::letter(z))),
                        Mode::Tail => out.extend(singles.iter().map(|&l| p.mul(&v, &Word(vec![z, l])))),
                        Mode::None => {}
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Renders a list of ideals as `{A, B, …}`.
pub fn show_family(items: &[ConstructibleIdeal]) -> String {
    let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}
