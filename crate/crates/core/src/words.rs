//! Letters, finite words and eventually periodic infinite words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Subscript carried by the indexed letters `x_n` and `y_n`.
pub type Index = i64;

/// Largest index magnitude accepted by the parser. Shifts produced by
/// rewriting are bounded by word length, so this leaves ample headroom.
pub const INDEX_LIMIT: Index = 1 << 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ZKind {
    X,
    Y,
}

impl ZKind {
    pub const ALL: [ZKind; 2] = [ZKind::X, ZKind::Y];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
    C,
    D,
    F,
    X(Index),
    Y(Index),
}

impl Letter {
    pub fn z(kind: ZKind, n: Index) -> Letter {
        match kind {
            ZKind::X => Letter::X(n),
            ZKind::Y => Letter::Y(n),
        }
    }

    pub fn z_parts(self) -> Option<(ZKind, Index)> {
        match self {
            Letter::X(n) => Some((ZKind::X, n)),
            Letter::Y(n) => Some((ZKind::Y, n)),
            _ => None,
        }
    }

    pub fn is_indexed(self) -> bool {
        self.z_parts().is_some()
    }

    pub fn index(self) -> Option<Index> {
        self.z_parts().map(|(_, n)| n)
    }

    /// Same letter with its index moved by `dx` (x-letters) or `dy` (y-letters).
    pub fn shifted(self, dx: Index, dy: Index) -> Letter {
        match self {
            Letter::X(n) => Letter::X(n + dx),
            Letter::Y(n) => Letter::Y(n + dy),
            other => other,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::A => f.write_str("a"),
            Letter::B => f.write_str("b"),
            Letter::C => f.write_str("c"),
            Letter::D => f.write_str("d"),
            Letter::F => f.write_str("f"),
            Letter::X(n) => write!(f, "x_{n}"),
            Letter::Y(n) => write!(f, "y_{n}"),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(tok: &str) -> Result<Letter> {
        match tok {
            "a" => return Ok(Letter::A),
            "b" => return Ok(Letter::B),
            "c" => return Ok(Letter::C),
            "d" => return Ok(Letter::D),
            "f" => return Ok(Letter::F),
            _ => {}
        }
        let bad = || Error::Parse {
            input: tok.to_string(),
            position: 0,
            message: "expected one of a b c d f x<int> y<int>".into(),
        };
        if !tok.is_char_boundary(1) {
            return Err(bad());
        }
        let (head, rest) = tok.split_at(1);
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let n: Index = rest.parse().map_err(|_| bad())?;
        if n.abs() >= INDEX_LIMIT {
            return Err(Error::Parse {
                input: tok.to_string(),
                position: 0,
                message: "index out of range".into(),
            });
        }
        match head {
            "x" => Ok(Letter::X(n)),
            "y" => Ok(Letter::Y(n)),
            _ => Err(bad()),
        }
    }
}

/// A finite word; `Word::empty()` is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Word {
        Word(letters.to_vec())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn tail(&self) -> Word {
        Word(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    pub fn indices(&self) -> impl Iterator<Item = Index> + '_ {
        self.0.iter().filter_map(|l| l.index())
    }

    pub fn shifted(&self, dx: Index, dy: Index) -> Word {
        Word(self.0.iter().map(|l| l.shifted(dx, dy)).collect())
    }

    pub fn parse(s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for tok in s.split_whitespace() {
            let pos = s[offset..].find(tok).map(|p| p + offset).unwrap_or(offset);
            offset = pos + tok.len();
            if tok == "e" || tok == "ε" {
                continue;
            }
            let l = tok.parse::<Letter>().map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse {
                    input: s.to_string(),
                    position: pos,
                    message: format!("bad token `{tok}`: {message}"),
                },
                other => other,
            })?;
            letters.push(l);
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

pub fn serialize_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for InfiniteWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn concat(u: &Word, v: &Word) -> Word {
    let mut out = Vec::with_capacity(u.len() + v.len());
    out.extend_from_slice(&u.0);
    out.extend_from_slice(&v.0);
    Word(out)
}

/// Eventually periodic infinite word `prefix · period^∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfiniteWord {
    prefix: Word,
    period: Word,
}

impl InfiniteWord {
    /// Builds the word and brings it to canonical shape: primitive period,
    /// shortest prefix.
    pub fn new(prefix: Word, period: Word) -> Result<InfiniteWord> {
        if period.is_empty() {
            return Err(Error::Invalid("infinite word needs a nonempty period".into()));
        }
        let mut prefix = prefix.0;
        let mut period = primitive_root(&period.0);
        while let (Some(&p), Some(&q)) = (prefix.last(), period.last()) {
            if p != q {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(InfiniteWord { prefix: Word(prefix), period: Word(period) })
    }

    pub fn periodic(period: Word) -> Result<InfiniteWord> {
        InfiniteWord::new(Word::empty(), period)
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix.0[i]
        } else {
            let j = (i - self.prefix.len()) % self.period.len();
            self.period.0[j]
        }
    }

    /// The first `n` letters.
    pub fn truncate(&self, n: usize) -> Word {
        Word((0..n).map(|i| self.letter_at(i)).collect())
    }

    /// `u · w` for a finite word `u`.
    pub fn prepend(&self, u: &Word) -> InfiniteWord {
        InfiniteWord::new(concat(u, &self.prefix), self.period.clone()).expect("period is nonempty")
    }

    pub fn parse(s: &str) -> Result<InfiniteWord> {
        let (pre, per) = s.split_once('|').ok_or_else(|| Error::Parse {
            input: s.to_string(),
            position: 0,
            message: "expected `<prefix> | <period>`".into(),
        })?;
        InfiniteWord::new(Word::parse(pre)?, Word::parse(per)?)
    }
}

impl fmt::Display for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.prefix, self.period)
    }
}

impl FromStr for InfiniteWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<InfiniteWord> {
        InfiniteWord::parse(s)
    }
}

fn primitive_root(p: &[Letter]) -> Vec<Letter> {
    let n = p.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (d..n).all(|i| p[i] == p[i - d]) {
            return p[..d].to_vec();
        }
    }
    p.to_vec()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CountVector {
    pub m_b: usize,
    pub m_x: usize,
    pub m_y: usize,
    pub raw_a: usize,
    pub raw_c: usize,
    pub raw_d: usize,
    pub raw_f: usize,
}

pub fn raw_counts(w: &Word) -> CountVector {
    let mut c = CountVector::default();
    for l in w.letters() {
        match l {
            Letter::A => c.raw_a += 1,
            Letter::B => c.m_b += 1,
            Letter::C => c.raw_c += 1,
            Letter::D => c.raw_d += 1,
            Letter::F => c.raw_f += 1,
            Letter::X(_) => c.m_x += 1,
            Letter::Y(_) => c.m_y += 1,
        }
    }
    c
}

fn forbidden_window(w: &[Letter]) -> bool {
    matches!(
        (w[0], w[1], w[2]),
        (Letter::A | Letter::C, Letter::B, Letter::X(_) | Letter::Y(_))
            | (Letter::D, Letter::B, Letter::X(_))
            | (Letter::F, Letter::B, Letter::Y(_))
    )
}

/// No window `abx_n, aby_n, cbx_n, cby_n, dbx_n, fby_n`.
pub fn is_reduced(w: &Word) -> bool {
    !w.0.windows(3).any(forbidden_window)
}

pub fn is_reduced_infinite(w: &InfiniteWord) -> bool {
    let n = w.prefix.len() + 2 * w.period.len() + 2;
    is_reduced(&w.truncate(n))
}

/// Lengths of the relation words of the monoid R occurring at position `i`.
fn tau_words_at(w: &[Letter], i: usize) -> Vec<usize> {
    let mut ends = Vec::new();
    let at = |k: usize| w.get(i + k).copied();
    let z = |l: Option<Letter>| l.is_some_and(|l| l.is_indexed());
    let zx = |l: Option<Letter>| matches!(l, Some(Letter::X(_)));
    let zy = |l: Option<Letter>| matches!(l, Some(Letter::Y(_)));
    match at(0) {
        Some(Letter::B) if z(at(1)) => {
            ends.push(2);
            if at(2).is_some() {
                ends.push(3);
            }
        }
        Some(Letter::A | Letter::C) if at(1) == Some(Letter::B) && z(at(2)) => ends.push(3),
        Some(Letter::D) if at(1) == Some(Letter::B) && zx(at(2)) && at(3).is_some() => ends.push(4),
        Some(Letter::F) if at(1) == Some(Letter::B) && zy(at(2)) && at(3).is_some() => ends.push(4),
        _ => {}
    }
    ends
}

/// `s ⊥ t` for the monoid R: every relation word occurring in `st` that
/// starts inside `s` also ends inside `s`.
pub fn perp0(s: &Word, t: &Word) -> bool {
    let st = concat(s, t);
    (0..s.len()).all(|i| tau_words_at(&st.0, i).into_iter().all(|len| i + len <= s.len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WordType {
    Type1,
    Type2,
}

pub fn word_type(w: &InfiniteWord) -> Result<WordType> {
    if !is_reduced_infinite(w) {
        return Err(Error::Invalid(format!("infinite word `{w}` is not reduced")));
    }
    let per = w.period.letters();
    let big = per.iter().any(|l| matches!(l, Letter::B | Letter::X(_) | Letter::Y(_)));
    let df = per.contains(&Letter::D) && per.contains(&Letter::F);
    Ok(if big || df { WordType::Type1 } else { WordType::Type2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn parse_accepts_both_index_spellings() {
        assert_eq!(w("x_-3 y4 x-1 e"), Word(vec![Letter::X(-3), Letter::Y(4), Letter::X(-1)]));
        assert_eq!(w("e"), Word::empty());
        assert!(Word::parse("a q").is_err());
        assert!(Word::parse("x").is_err());
        let err = Word::parse("a b zz").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 4, .. }));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&Word::empty(), &w("b x_0")), w("b x_0"));
        assert_eq!(concat(&w("a"), &w("b x_0")), w("a b x_0"));
        assert_eq!(concat(&w("b x_1"), &w("b y_2")), w("b x_1 b y_2"));
    }

    #[test]
    fn counts() {
        assert_eq!(raw_counts(&w("x_-10 x_-10 x_-10 x_7 x_7")).m_x, 5);
        assert_eq!(raw_counts(&w("x_0 a b c y_1 y_1 y_1")).m_y, 3);
        assert_eq!(raw_counts(&Word::empty()), CountVector::default());
    }

    #[test]
    fn reducedness() {
        assert!(!is_reduced(&w("a b x_0")));
        assert!(is_reduced(&w("b x_0 b x_0")));
        assert!(is_reduced(&w("f b x_3")));
        assert!(!is_reduced(&w("f b y_3")));
        assert!(!is_reduced(&w("d b x_3")));
    }

    #[test]
    fn perp_examples() {
        assert!(perp0(&w("a"), &w("b b a c")));
        assert!(perp0(&w("b x_0 b"), &w("b x_7")));
        assert!(!perp0(&w("b x_0"), &w("a")));
        assert!(!perp0(&w("a"), &w("b x_0")));
        assert!(perp0(&Word::empty(), &w("a b x_0")));
    }

    #[test]
    fn types() {
        let t = |p: &str, q: &str| word_type(&InfiniteWord::new(w(p), w(q)).unwrap()).unwrap();
        assert_eq!(t("", "b x_0"), WordType::Type1);
        assert_eq!(t("b x_0", "a"), WordType::Type2);
        assert_eq!(t("b", "d f"), WordType::Type1);
        assert!(word_type(&InfiniteWord::new(w("a"), w("b x_0")).unwrap()).is_err());
    }

    #[test]
    fn infinite_word_canonical_shape() {
        let u = InfiniteWord::new(w("b x_0 b x_0"), w("b x_0 b x_0")).unwrap();
        assert_eq!(u.prefix(), &Word::empty());
        assert_eq!(u.period(), &w("b x_0"));
        let v = InfiniteWord::new(w("a b"), w("a b")).unwrap();
        assert_eq!(v.prefix(), &Word::empty());
        assert_eq!(v.truncate(5), w("a b a b a"));
        let x = InfiniteWord::new(w("x_0"), w("b x_0")).unwrap();
        assert_eq!(x.period(), &w("x_0 b"));
        assert!(x.prefix().is_empty());
    }
}
