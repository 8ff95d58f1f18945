//! Free products `S * T`. Elements are alternating blocks; every nonempty
//! constructible ideal is `x·S*T` or `x·A(S*T)` for a constructible ideal
//! `A` of one factor.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{Monoid, Syntax};
use crate::words::Index;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Block<X, Y> {
    Left(X),
    Right(Y),
}

/// A normal form: nonidentity blocks with alternating sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Alternating<X, Y> {
    pub blocks: Vec<Block<X, Y>>,
}

impl<X, Y> Alternating<X, Y> {
    pub fn empty() -> Alternating<X, Y> {
        Alternating { blocks: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

fn primed(text: &str) -> String {
    text.split_whitespace().map(|t| format!("{t}'")).collect::<Vec<_>>().join(" ")
}

impl<X: fmt::Display, Y: fmt::Display> fmt::Display for Alternating<X, Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| match b {
                Block::Left(x) => x.to_string(),
                Block::Right(y) => primed(&y.to_string()),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// `Empty`, `x·S*T`, or `x·A(S*T)` with `A` an ideal of the named factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FreeIdeal<X, Y, IA, IB> {
    Empty,
    Full(Alternating<X, Y>),
    Left(Alternating<X, Y>, IA),
    Right(Alternating<X, Y>, IB),
}

impl<X: fmt::Display, Y: fmt::Display, IA: fmt::Display, IB: fmt::Display> fmt::Display for FreeIdeal<X, Y, IA, IB> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead = |x: &Alternating<X, Y>| if x.is_empty() { String::new() } else { format!("{x} ") };
        match self {
            FreeIdeal::Empty => f.write_str("0"),
            FreeIdeal::Full(x) => write!(f, "{}R", lead(x)),
            FreeIdeal::Left(x, a) => write!(f, "{}[{a}]", lead(x)),
            FreeIdeal::Right(x, b) => write!(f, "{}[{b}]'", lead(x)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FreeProduct<A, B> {
    pub left: A,
    pub right: B,
}

pub fn free_product<A: Monoid, B: Monoid>(left: A, right: B) -> FreeProduct<A, B> {
    FreeProduct { left, right }
}

type Elem<A, B> = Alternating<<A as Monoid>::Elem, <B as Monoid>::Elem>;
type Ideal<A, B> = FreeIdeal<<A as Monoid>::Elem, <B as Monoid>::Elem, <A as Monoid>::Ideal, <B as Monoid>::Ideal>;

enum Part<IA, IB> {
    Full,
    Left(IA),
    Right(IB),
}

impl<A: Monoid, B: Monoid> FreeProduct<A, B> {
    fn block_is_identity(&self, b: &Block<A::Elem, B::Elem>) -> bool {
        match b {
            Block::Left(x) => *x == self.left.identity(),
            Block::Right(y) => *y == self.right.identity(),
        }
    }

    fn join_blocks(&self, blocks: Vec<Block<A::Elem, B::Elem>>) -> Elem<A, B> {
        let mut out: Vec<Block<A::Elem, B::Elem>> = Vec::new();
        for b in blocks {
            let b = match b {
                Block::Left(x) => Block::Left(self.left.normalize(&x)),
                Block::Right(y) => Block::Right(self.right.normalize(&y)),
            };
            if self.block_is_identity(&b) {
                continue;
            }
            let merged = match (out.last(), &b) {
                (Some(Block::Left(p)), Block::Left(x)) => Some(Block::Left(self.left.mul(p, x))),
                (Some(Block::Right(p)), Block::Right(y)) => Some(Block::Right(self.right.mul(p, y))),
                _ => None,
            };
            match merged {
                Some(m) => {
                    out.pop();
                    if !self.block_is_identity(&m) {
                        out.push(m);
                    }
                }
                None => out.push(b),
            }
        }
        Alternating { blocks: out }
    }

    pub fn embed_left(&self, x: A::Elem) -> Elem<A, B> {
        self.join_blocks(vec![Block::Left(x)])
    }

    pub fn embed_right(&self, y: B::Elem) -> Elem<A, B> {
        self.join_blocks(vec![Block::Right(y)])
    }

    /// `A(S*T)` for an ideal `A` of the left factor.
    pub fn lift_left(&self, a: A::Ideal) -> Ideal<A, B> {
        self.canonical(&FreeIdeal::Left(Alternating::empty(), a))
    }

    /// `B(S*T)` for an ideal `B` of the right factor.
    pub fn lift_right(&self, b: B::Ideal) -> Ideal<A, B> {
        self.canonical(&FreeIdeal::Right(Alternating::empty(), b))
    }

    fn split(&self, a: &Ideal<A, B>) -> Option<(Elem<A, B>, Part<A::Ideal, B::Ideal>)> {
        match a {
            FreeIdeal::Empty => None,
            FreeIdeal::Full(x) => Some((x.clone(), Part::Full)),
            FreeIdeal::Left(x, i) => Some((x.clone(), Part::Left(i.clone()))),
            FreeIdeal::Right(x, i) => Some((x.clone(), Part::Right(i.clone()))),
        }
    }

    fn join(&self, x: Elem<A, B>, part: Part<A::Ideal, B::Ideal>) -> Ideal<A, B> {
        match part {
            Part::Full => FreeIdeal::Full(x),
            Part::Left(i) => FreeIdeal::Left(x, i),
            Part::Right(i) => FreeIdeal::Right(x, i),
        }
    }

    fn concat(&self, x: &Elem<A, B>, y: &Elem<A, B>) -> Elem<A, B> {
        let mut blocks = x.blocks.clone();
        blocks.extend(y.blocks.iter().cloned());
        self.join_blocks(blocks)
    }
}

impl<A: Monoid, B: Monoid> Monoid for FreeProduct<A, B> {
    type Elem = Elem<A, B>;
    type Ideal = Ideal<A, B>;

    fn name(&self) -> String {
        format!("freeprod:{}:{}", self.left.name(), self.right.name())
    }

    fn identity(&self) -> Self::Elem {
        Alternating::empty()
    }

    fn normalize(&self, w: &Self::Elem) -> Self::Elem {
        self.join_blocks(w.blocks.clone())
    }

    fn mul(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem {
        self.concat(u, v)
    }

    fn left_divide(&self, x: &Self::Elem, w: &Self::Elem) -> Option<Self::Elem> {
        let x = self.normalize(x);
        let w = self.normalize(w);
        let n = x.blocks.len();
        if n == 0 {
            return Some(w);
        }
        if w.blocks.len() < n || x.blocks[..n - 1] != w.blocks[..n - 1] {
            return None;
        }
        let rest = match (&x.blocks[n - 1], &w.blocks[n - 1]) {
            (Block::Left(p), Block::Left(q)) => Block::Left(self.left.left_divide(p, q)?),
            (Block::Right(p), Block::Right(q)) => Block::Right(self.right.left_divide(p, q)?),
            _ => return None,
        };
        let mut blocks = vec![rest];
        blocks.extend(w.blocks[n..].iter().cloned());
        Some(self.join_blocks(blocks))
    }

    fn factors(&self, w: &Self::Elem) -> Vec<Self::Elem> {
        let mut out = Vec::new();
        for b in &w.blocks {
            match b {
                Block::Left(x) => out.extend(self.left.factors(x).into_iter().map(|g| self.embed_left(g))),
                Block::Right(y) => out.extend(self.right.factors(y).into_iter().map(|g| self.embed_right(g))),
            }
        }
        out
    }

    fn empty_ideal(&self) -> Self::Ideal {
        FreeIdeal::Empty
    }

    fn full_ideal(&self) -> Self::Ideal {
        FreeIdeal::Full(Alternating::empty())
    }

    fn principal(&self, w: &Self::Elem) -> Self::Ideal {
        FreeIdeal::Full(self.normalize(w))
    }

    fn canonical(&self, a: &Self::Ideal) -> Self::Ideal {
        let Some((x, part)) = self.split(a) else {
            return FreeIdeal::Empty;
        };
        let mut x = self.normalize(&x);
        match part {
            Part::Full => FreeIdeal::Full(x),
            Part::Left(i) => {
                let mut i = self.left.canonical(&i);
                if let Some(Block::Left(last)) = x.blocks.last() {
                    i = self.left.translate(last, &i);
                    x.blocks.pop();
                }
                if self.left.is_empty(&i) {
                    return FreeIdeal::Empty;
                }
                match self.left.sample(&i).filter(|s| self.left.principal(s) == i) {
                    Some(s) => FreeIdeal::Full(self.concat(&x, &self.embed_left(s))),
                    None => FreeIdeal::Left(x, i),
                }
            }
            Part::Right(i) => {
                let mut i = self.right.canonical(&i);
                if let Some(Block::Right(last)) = x.blocks.last() {
                    i = self.right.translate(last, &i);
                    x.blocks.pop();
                }
                if self.right.is_empty(&i) {
                    return FreeIdeal::Empty;
                }
                match self.right.sample(&i).filter(|s| self.right.principal(s) == i) {
                    Some(s) => FreeIdeal::Full(self.concat(&x, &self.embed_right(s))),
                    None => FreeIdeal::Right(x, i),
                }
            }
        }
    }

    fn contains(&self, a: &Self::Ideal, w: &Self::Elem) -> bool {
        let Some((x, part)) = self.split(a) else {
            return false;
        };
        let Some(q) = self.left_divide(&x, w) else {
            return false;
        };
        match (part, q.blocks.first()) {
            (Part::Full, _) => true,
            (Part::Left(i), Some(Block::Left(q1))) => self.left.contains(&i, q1),
            (Part::Right(i), Some(Block::Right(q1))) => self.right.contains(&i, q1),
            _ => false,
        }
    }

    fn pullback_generator(&self, g: &Self::Elem, a: &Self::Ideal) -> Self::Ideal {
        let a = self.canonical(a);
        let Some((x, part)) = self.split(&a) else {
            return FreeIdeal::Empty;
        };
        let Some(gb) = g.blocks.first() else {
            return a;
        };
        let Some(x1) = x.blocks.first() else {
            return match (part, gb) {
                (Part::Full, _) => self.full_ideal(),
                (Part::Left(i), Block::Left(l)) => self.canonical(&FreeIdeal::Left(Alternating::empty(), self.left.pullback(l, &i))),
                (Part::Right(i), Block::Right(l)) => {
                    self.canonical(&FreeIdeal::Right(Alternating::empty(), self.right.pullback(l, &i)))
                }
                _ => FreeIdeal::Empty,
            };
        };
        let rest = || Alternating { blocks: x.blocks[1..].to_vec() };
        match (gb, x1) {
            (Block::Left(l), Block::Left(p)) => match self.left.left_divide(l, p) {
                Some(r) => self.canonical(&self.join(self.concat(&self.embed_left(r), &rest()), part)),
                None if x.blocks.len() == 1 && matches!(part, Part::Full) => self.canonical(&FreeIdeal::Left(
                    Alternating::empty(),
                    self.left.pullback(l, &self.left.principal(p)),
                )),
                None => FreeIdeal::Empty,
            },
            (Block::Right(l), Block::Right(p)) => match self.right.left_divide(l, p) {
                Some(r) => self.canonical(&self.join(self.concat(&self.embed_right(r), &rest()), part)),
                None if x.blocks.len() == 1 && matches!(part, Part::Full) => self.canonical(&FreeIdeal::Right(
                    Alternating::empty(),
                    self.right.pullback(l, &self.right.principal(p)),
                )),
                None => FreeIdeal::Empty,
            },
            _ => FreeIdeal::Empty,
        }
    }

    fn intersect(&self, a: &Self::Ideal, b: &Self::Ideal) -> Self::Ideal {
        let a = self.canonical(a);
        let Some((x1, p1)) = self.split(&a) else {
            return FreeIdeal::Empty;
        };
        let k = self.pullback(&x1, b);
        let Some((u, p2)) = self.split(&k) else {
            return FreeIdeal::Empty;
        };
        let meet = match p1 {
            Part::Full => k,
            Part::Left(a1) => match (u.blocks.first(), &p2) {
                (None, Part::Full) => FreeIdeal::Left(u, a1),
                (None, Part::Left(a2)) => FreeIdeal::Left(u, self.left.intersect(&a1, a2)),
                (None, Part::Right(_)) => FreeIdeal::Empty,
                (Some(Block::Right(_)), _) => FreeIdeal::Empty,
                (Some(Block::Left(u1)), _) if u.blocks.len() >= 2 || !matches!(p2, Part::Full) => {
                    if self.left.contains(&a1, u1) {
                        k
                    } else {
                        FreeIdeal::Empty
                    }
                }
                (Some(Block::Left(u1)), _) => {
                    FreeIdeal::Left(Alternating::empty(), self.left.intersect(&a1, &self.left.principal(u1)))
                }
            },
            Part::Right(a1) => match (u.blocks.first(), &p2) {
                (None, Part::Full) => FreeIdeal::Right(u, a1),
                (None, Part::Right(a2)) => FreeIdeal::Right(u, self.right.intersect(&a1, a2)),
                (None, Part::Left(_)) => FreeIdeal::Empty,
                (Some(Block::Left(_)), _) => FreeIdeal::Empty,
                (Some(Block::Right(u1)), _) if u.blocks.len() >= 2 || !matches!(p2, Part::Full) => {
                    if self.right.contains(&a1, u1) {
                        k
                    } else {
                        FreeIdeal::Empty
                    }
                }
                (Some(Block::Right(u1)), _) => {
                    FreeIdeal::Right(Alternating::empty(), self.right.intersect(&a1, &self.right.principal(u1)))
                }
            },
        };
        self.translate(&x1, &meet)
    }

    fn translate(&self, w: &Self::Elem, a: &Self::Ideal) -> Self::Ideal {
        match self.split(a) {
            None => FreeIdeal::Empty,
            Some((x, part)) => self.canonical(&self.join(self.concat(w, &x), part)),
        }
    }

    fn sample(&self, a: &Self::Ideal) -> Option<Self::Elem> {
        match self.canonical(a) {
            FreeIdeal::Empty => None,
            FreeIdeal::Full(x) => Some(x),
            FreeIdeal::Left(x, i) => Some(self.concat(&x, &self.embed_left(self.left.sample(&i)?))),
            FreeIdeal::Right(x, i) => Some(self.concat(&x, &self.embed_right(self.right.sample(&i)?))),
        }
    }

    fn search_generators(&self, states: &[Self::Ideal]) -> Vec<Self::Elem> {
        let mut ls = Vec::new();
        let mut rs = Vec::new();
        for s in states {
            match (s, self.split(s).and_then(|(x, _)| x.blocks.first().cloned())) {
                (FreeIdeal::Left(x, i), None) if x.is_empty() => ls.push(i.clone()),
                (FreeIdeal::Right(x, i), None) if x.is_empty() => rs.push(i.clone()),
                (_, Some(Block::Left(p))) => ls.push(self.left.principal(&p)),
                (_, Some(Block::Right(p))) => rs.push(self.right.principal(&p)),
                _ => {}
            }
        }
        let mut out: Vec<Self::Elem> = self.left.search_generators(&ls).into_iter().map(|g| self.embed_left(g)).collect();
        out.extend(self.right.search_generators(&rs).into_iter().map(|g| self.embed_right(g)));
        out
    }

    fn is_empty(&self, a: &Self::Ideal) -> bool {
        matches!(self.canonical(a), FreeIdeal::Empty)
    }

    fn indices(&self, w: &Self::Elem) -> Vec<Index> {
        w.blocks
            .iter()
            .flat_map(|b| match b {
                Block::Left(x) => self.left.indices(x),
                Block::Right(y) => self.right.indices(y),
            })
            .collect()
    }

    fn absorber_count(&self, w: &Self::Elem) -> usize {
        w.blocks
            .iter()
            .map(|b| match b {
                Block::Left(x) => self.left.absorber_count(x),
                Block::Right(y) => self.right.absorber_count(y),
            })
            .sum()
    }

    fn ideal_indices(&self, a: &Self::Ideal) -> Vec<Index> {
        match a {
            FreeIdeal::Empty => vec![],
            FreeIdeal::Full(x) => self.indices(x),
            FreeIdeal::Left(x, i) => [self.indices(x), self.left.ideal_indices(i)].concat(),
            FreeIdeal::Right(x, i) => [self.indices(x), self.right.ideal_indices(i)].concat(),
        }
    }

    fn ideal_generators(&self, a: &Self::Ideal, indices: &[Index]) -> Vec<Self::Elem> {
        match self.canonical(a) {
            FreeIdeal::Empty => vec![],
            FreeIdeal::Full(x) => vec![x],
            FreeIdeal::Left(x, i) => {
                self.left.ideal_generators(&i, indices).into_iter().map(|g| self.concat(&x, &self.embed_left(g))).collect()
            }
            FreeIdeal::Right(x, i) => self
                .right
                .ideal_generators(&i, indices)
                .into_iter()
                .map(|g| self.concat(&x, &self.embed_right(g)))
                .collect(),
        }
    }
}

impl<A: Syntax, B: Syntax> FreeProduct<A, B> {
    fn parse_blocks(&self, s: &str) -> Result<Elem<A, B>> {
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "e" {
            return Ok(Alternating::empty());
        }
        let mut blocks = Vec::new();
        let mut run: Vec<&str> = Vec::new();
        let mut run_right = false;
        let flush = |run: &mut Vec<&str>, right: bool, blocks: &mut Vec<Block<A::Elem, B::Elem>>| -> Result<()> {
            if run.is_empty() {
                return Ok(());
            }
            let text = run.join(" ");
            blocks.push(if right {
                Block::Right(self.right.parse_elem(&text)?)
            } else {
                Block::Left(self.left.parse_elem(&text)?)
            });
            run.clear();
            Ok(())
        };
        for token in trimmed.split_whitespace() {
            let (body, right) = match token.strip_suffix('\'') {
                Some(b) => (b, true),
                None => (token, false),
            };
            if right != run_right {
                flush(&mut run, run_right, &mut blocks)?;
                run_right = right;
            }
            run.push(body);
        }
        flush(&mut run, run_right, &mut blocks)?;
        Ok(self.join_blocks(blocks))
    }
}

impl<A: Syntax, B: Syntax> Syntax for FreeProduct<A, B> {
    /// Right-factor letters carry a trailing `'`.
    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        self.parse_blocks(s)
    }

    /// `0`, `<x> R`, `<x> [<left ideal>]` or `<x> [<right ideal>]'`.
    fn parse_ideal(&self, s: &str) -> Result<Self::Ideal> {
        let t = s.trim();
        if t == "0" {
            return Ok(FreeIdeal::Empty);
        }
        if let Some(open) = t.find('[') {
            let x = self.parse_blocks(&t[..open])?;
            let inner = &t[open + 1..];
            let (body, right) = match inner.strip_suffix("]'") {
                Some(b) => (b, true),
                None => (
                    inner.strip_suffix(']').ok_or_else(|| Error::Parse {
                        input: s.to_string(),
                        position: t.len(),
                        message: "unterminated `[`".into(),
                    })?,
                    false,
                ),
            };
            let a = if right {
                FreeIdeal::Right(x, self.right.parse_ideal(body)?)
            } else {
                FreeIdeal::Left(x, self.left.parse_ideal(body)?)
            };
            return Ok(self.canonical(&a));
        }
        match t.strip_suffix('R') {
            Some(x) if x.is_empty() || x.ends_with(char::is_whitespace) => Ok(FreeIdeal::Full(self.parse_blocks(x)?)),
            _ => Err(Error::Parse {
                input: s.to_string(),
                position: 0,
                message: "expected `<word> R`, `<word> [ideal]` or `<word> [ideal]'`".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogMonoid};
    use crate::hull::{self, HullElement, Move};

    fn two_letter() -> FreeProduct<CatalogMonoid, CatalogMonoid> {
        free_product(catalog::free_monoid(1).unwrap(), catalog::free_monoid(1).unwrap())
    }

    #[test]
    fn blocks_merge() {
        let m = two_letter();
        let w = m.parse_elem("a a' a' a a").unwrap();
        assert_eq!(w.blocks.len(), 3);
        assert_eq!(w.to_string(), "a a' a' a a");
        assert_eq!(m.left_divide(&m.parse_elem("a a'").unwrap(), &w), Some(m.parse_elem("a' a a").unwrap()));
        assert_eq!(m.left_divide(&m.parse_elem("a'").unwrap(), &w), None);
    }

    #[test]
    fn zero_law() {
        let m = two_letter();
        let s = m.parse_elem("a").unwrap();
        let t = m.parse_elem("a'").unwrap();
        let h = HullElement::from_moves(vec![Move::Mul(t), Move::Div(s)]);
        assert!(hull::is_zero(&m, &h));
    }

    #[test]
    fn translated_ideals() {
        let r = free_product(catalog::monoid_r(), catalog::free_monoid(1).unwrap());
        let a = r.parse_ideal("a' [X]").unwrap();
        assert!(r.contains(&a, &r.parse_elem("a' x_0 a").unwrap()));
        assert!(!r.contains(&a, &r.parse_elem("a' x_0 a'").unwrap()));
        assert!(!r.contains(&a, &r.parse_elem("x_0 a").unwrap()));
        assert_eq!(r.parse_ideal("a' [b R]").unwrap(), r.parse_ideal("a' b R").unwrap());
    }
}
