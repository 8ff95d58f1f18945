//! A battery of named executable checks over the catalog, reported as
//! pass/fail with a counterexample when one is found.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boundary::{self, BoundaryClass, Character, Verdict};
use crate::catalog::{self, CatalogMonoid};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::free_product;
use crate::groupoid::{GroupoidElement, Hull};
use crate::hull::{self, Move};
use crate::ideals::{self, ConstructibleIdeal, Shape};
use crate::mean;
use crate::monoid::{Monoid, Syntax};
use crate::product::{self, Pair};
use crate::regularity::{self, Instance, RegularityKind};
use crate::search::{self, GeneralizedIdeal};
use crate::words::{Index, Letter, Word, ZKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Small bounds; runs in seconds.
    Quick,
    /// The bounds used by the acceptance battery.
    Full,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "quick" | "appendix" => Ok(Suite::Quick),
            "full" => Ok(Suite::Full),
            _ => Err(Error::Parse { input: s.into(), position: 0, message: "expected quick, appendix or full".into() }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {:<24} {:>7} ms  {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.millis, c.detail)?;
            if let Some(ce) = &c.counterexample {
                write!(f, "\n     counterexample: {ce}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Outcome {
    detail: String,
    counterexample: Option<String>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Outcome {
        Outcome { detail: detail.into(), counterexample: None }
    }

    fn fail(detail: impl Into<String>, ce: impl Into<String>) -> Outcome {
        Outcome { detail: detail.into(), counterexample: Some(ce.into()) }
    }
}

struct Bounds {
    word_len: usize,
    word_window: (Index, Index),
    cancel_len: usize,
    closure_depth: usize,
    closure_window: (Index, Index),
    index_prefix: usize,
    hull_depth: usize,
    random_foundations: usize,
    characters: usize,
    pair_instances: usize,
    criterion_stride: usize,
    decay: &'static [usize],
}

const QUICK: Bounds = Bounds {
    word_len: 4,
    word_window: (-1, 1),
    cancel_len: 3,
    closure_depth: 3,
    closure_window: (-1, 1),
    index_prefix: 1,
    hull_depth: 2,
    random_foundations: 40,
    characters: 20,
    pair_instances: 6,
    criterion_stride: 8,
    decay: &[2, 4, 8],
};

const FULL: Bounds = Bounds {
    word_len: 6,
    word_window: (-2, 2),
    cancel_len: 4,
    closure_depth: 4,
    closure_window: (-2, 2),
    index_prefix: 2,
    hull_depth: 3,
    random_foundations: 200,
    characters: 50,
    pair_instances: usize::MAX,
    criterion_stride: 1,
    decay: &[2, 4, 8, 16, 32],
};

type CheckFn = fn(&Bounds, &Config) -> Result<Outcome>;

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("confluence", "critical pairs of every catalog presentation are joinable", check_confluence),
    ("word-problem", "normal forms are irreducible and invariant under single rewrites", check_word_problem),
    ("left-cancellation", "x w ~ x w' implies w ~ w'", check_cancellation),
    ("ideal-closure", "closing under letter pullbacks and intersections stays within the shape list", check_closure),
    ("ideal-tables", "quoted intersections and pullbacks of R", check_tables),
    ("multiple-indices", "an ideal holding two r z_n holds every r x_n and r y_n", check_multiple_indices),
    ("fixed-indices", "a hull element fixing one x_n (or x_n x) fixes them all, and shifts are uniform", check_fixed_indices),
    ("foundation-sets", "cited foundation families and a random sample against brute force", check_foundations),
    ("regularity", "regularity verdicts for R and S5", check_regularity),
    ("boundary-characters", "classification of characters of R", check_characters),
    ("mean-decay", "approximate invariance deviation is exactly 2/n", check_means),
    ("products", "rectangle membership and componentwise foundation sets", check_products),
    ("free-products", "zero law and foundation versus cover", check_free_products),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

/// Runs the named checks (all when `only` is empty) concurrently and
/// reports them in declaration order.
pub fn run(suite: Suite, only: &[String], cfg: &Config) -> Result<SuiteReport> {
    for name in only {
        if !CHECKS.iter().any(|c| c.0 == name) {
            return Err(Error::Invalid(format!("unknown check `{name}`; known: {}", check_names().join(", "))));
        }
    }
    let bounds = match suite {
        Suite::Quick => &QUICK,
        Suite::Full => &FULL,
    };
    let selected: Vec<_> = CHECKS.iter().filter(|c| only.is_empty() || only.iter().any(|o| o == c.0)).collect();
    let checks = std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&&(name, statement, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let outcome = f(bounds, cfg).unwrap_or_else(|e| Outcome::fail("error", e.to_string()));
                    CheckReport {
                        name,
                        statement,
                        passed: outcome.counterexample.is_none(),
                        detail: outcome.detail,
                        counterexample: outcome.counterexample,
                        millis: start.elapsed().as_millis(),
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    Ok(SuiteReport { suite, checks })
}

fn catalog_monoids() -> Vec<CatalogMonoid> {
    vec![catalog::monoid_r(), catalog::monoid_s4(), catalog::monoid_s5()]
}

fn check_confluence(_: &Bounds, cfg: &Config) -> Result<Outcome> {
    let mut pairs = 0;
    for m in catalog_monoids() {
        let report = m.presentation().confluence_certificate(cfg.window)?;
        if !report.passed {
            let bad = report.overlaps.iter().find(|o| !o.joinable).map(|o| format!("{o:?}")).unwrap_or_default();
            return Ok(Outcome::fail(format!("{} fails", m.name()), bad));
        }
        pairs += report.overlaps.len();
    }
    Ok(Outcome::pass(format!("{pairs} overlaps joinable")))
}

/// The `i`-th word of length `len` over `letters` in lexicographic order.
pub fn nth_word(letters: &[Letter], len: usize, mut i: u64) -> Word {
    let k = letters.len() as u64;
    let mut out = vec![letters[0]; len];
    for slot in out.iter_mut().rev() {
        *slot = letters[(i % k) as usize];
        i /= k;
    }
    Word(out)
}

/// Calls `f` on every word over `letters` of length at most `len`, in
/// parallel, and returns the first `Some` produced.
pub fn scan_words<F>(letters: &[Letter], len: usize, f: F) -> (u64, Option<String>)
where
    F: Fn(&Word) -> Option<String> + Sync,
{
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get()) as u64;
    let mut total = 0u64;
    for l in 0..=len {
        let count = (letters.len() as u64).pow(l as u32);
        total += count;
        let chunk = count / threads + 1;
        let found = std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let f = &f;
                    s.spawn(move || {
                        let lo = t * chunk;
                        let hi = (lo + chunk).min(count);
                        (lo..hi).find_map(|i| f(&nth_word(letters, l, i)))
                    })
                })
                .collect();
            handles.into_iter().filter_map(|h| h.join().expect("worker panicked")).next()
        });
        if found.is_some() {
            return (total, found);
        }
    }
    (total, None)
}

fn check_word_problem(b: &Bounds, _: &Config) -> Result<Outcome> {
    let mut total = 0u64;
    for m in catalog_monoids() {
        let p = m.presentation();
        let letters = p.window_letters(b.word_window);
        let (n, found) = scan_words(&letters, b.word_len, |u| {
            let nf = p.normal_form(u);
            if !p.is_irreducible(&nf) {
                return Some(format!("{u} normalizes to reducible {nf}"));
            }
            (0..u.len()).find_map(|i| {
                let v = p.rewrite_at(u, i)?;
                (p.normal_form(&v) != nf).then(|| format!("{u} -> {v} changes the normal form"))
            })
        });
        if let Some(ce) = found {
            return Ok(Outcome::fail(format!("{} word problem", m.name()), ce));
        }
        total += n;
    }
    Ok(Outcome::pass(format!("{total} words of length <= {}", b.word_len)))
}

fn check_cancellation(b: &Bounds, _: &Config) -> Result<Outcome> {
    for m in catalog_monoids() {
        if let Some((x, w, v)) = m.left_cancellation_counterexample(b.cancel_len, b.word_window) {
            return Ok(Outcome::fail(m.name().to_string(), format!("{x} {w} ~ {x} {v}")));
        }
    }
    Ok(Outcome::pass(format!("no counterexample up to length {}", b.cancel_len)))
}

fn check_closure(b: &Bounds, _: &Config) -> Result<Outcome> {
    let mut monoids = catalog_monoids();
    monoids.push(catalog::free_monoid(2)?);
    let mut sizes = Vec::new();
    for m in monoids {
        let found = m.closure_shapes(b.closure_depth, b.closure_window, 3);
        let listed: std::collections::BTreeSet<Shape> = m.shapes().iter().copied().collect();
        if found != listed {
            let shown: Vec<String> = found.iter().map(|s| s.tag()).collect();
            return Ok(Outcome::fail(m.name().to_string(), format!("closure shapes {}", shown.join(" "))));
        }
        sizes.push(format!("{} {}", m.name(), listed.len()));
    }
    Ok(Outcome::pass(sizes.join(", ")))
}

/// Intersections `A ∩ B = C` in `R`.
pub const INTERSECTION_TABLE: &[(&str, &str, &str)] = &[
    ("a R", "b R", "b Z"),
    ("d R", "f b R", "0"),
    ("d R", "b R", "b X"),
    ("f R", "b R", "b Y"),
    ("c R", "b R", "b Z"),
    ("a R", "c R", "b Z"),
    ("d R", "f R", "0"),
    ("x_0 R", "a R", "0"),
    ("b X", "b Y", "0"),
    ("b X", "b Z", "b X"),
];

/// Pullbacks `x⁻¹ A = C` in `R`.
pub const PULLBACK_TABLE: &[(&str, &str, &str)] = &[
    ("b", "c b x_0 a R", "x_1 a R"),
    ("a", "b y_2 R", "b y_1 R"),
    ("x_3", "a b c R", "0"),
    ("a", "a b R", "b R"),
    ("f", "b x_0 a R", "0"),
    ("d", "b x_0 a R", "b x_0 a R"),
    ("c", "b x_0 R", "b x_-1 R"),
];

fn check_tables(_: &Bounds, _: &Config) -> Result<Outcome> {
    let r = catalog::monoid_r();
    let mut n = 0;
    for &(a, b, c) in INTERSECTION_TABLE {
        let got = r.intersect(&r.parse_ideal(a)?, &r.parse_ideal(b)?);
        if got != r.parse_ideal(c)? {
            return Ok(Outcome::fail("intersection", format!("{a} ∩ {b} = {got}, expected {c}")));
        }
        n += 1;
    }
    for &(x, a, c) in PULLBACK_TABLE {
        let got = r.pullback(&r.parse_elem(x)?, &r.parse_ideal(a)?);
        if got != r.parse_ideal(c)? {
            return Ok(Outcome::fail("pullback", format!("{x}^-1 ({a}) = {got}, expected {c}")));
        }
        n += 1;
    }
    Ok(Outcome::pass(format!("{n} table entries")))
}

/// Normal-form words of length at most `len` over the letters with
/// indices in `window`.
fn prefixes(m: &CatalogMonoid, len: usize, window: (Index, Index)) -> Vec<Word> {
    m.words_up_to(len, window)
}

/// Canonical ideals with prefix length at most `len`.
pub fn canonical_ideals(m: &CatalogMonoid, len: usize, window: (Index, Index)) -> Vec<ConstructibleIdeal> {
    let p = m.presentation();
    let mut out: Vec<ConstructibleIdeal> = Vec::new();
    for w in prefixes(m, len, window) {
        for &s in m.shapes() {
            let a = ideals::canonical(p, &w, s);
            if !a.is_empty() && !out.contains(&a) {
                out.push(a);
            }
        }
    }
    out
}

fn check_multiple_indices(b: &Bounds, _: &Config) -> Result<Outcome> {
    let r = catalog::monoid_r();
    let p = r.presentation();
    let window = (-1, 1);
    let probes: Vec<Index> = (-4..=4).collect();
    let tails = [Word::letter(Letter::A), Word::letter(Letter::B), Word::letter(Letter::X(0))];
    let mut checked = 0usize;
    for a in canonical_ideals(&r, b.index_prefix, window) {
        for rw in prefixes(&r, 2, window) {
            for kind in ZKind::ALL {
                let at = |n: Index, t: &Word| p.mul(&p.mul(&rw, &Word::letter(Letter::z(kind, n))), t);
                let held: Vec<Index> = probes.iter().copied().filter(|&n| r.contains(&a, &at(n, &Word::empty()))).collect();
                if held.len() >= 2 {
                    checked += 1;
                    for n in &probes {
                        for k in ZKind::ALL {
                            let w = p.mul(&rw, &Word::letter(Letter::z(k, *n)));
                            if !r.contains(&a, &w) {
                                return Ok(Outcome::fail("bare", format!("{a} holds {} but not {w}", at(held[0], &Word::empty()))));
                            }
                        }
                    }
                }
                for t1 in &tails {
                    for t2 in &tails {
                        let pairs = probes.iter().flat_map(|&n1| probes.iter().map(move |&n2| (n1, n2)));
                        let hit = pairs.filter(|(n1, n2)| n1 != n2).find(|&(n1, n2)| r.contains(&a, &at(n1, t1)) && r.contains(&a, &at(n2, t2)));
                        if hit.is_some() {
                            checked += 1;
                            let tail = match kind {
                                ZKind::X => Shape::X,
                                ZKind::Y => Shape::Y,
                            };
                            let family = ideals::canonical(p, &rw, tail);
                            if !ideals::subset(p, &family, &a) {
                                return Ok(Outcome::fail("tails", format!("{a} does not contain {family}")));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(format!("{checked} hypotheses met, conclusions hold")))
}

/// Hull elements with at most `depth` single-letter moves.
pub fn hull_stacks(letters: &[Letter], depth: usize) -> Vec<Hull> {
    let moves: Vec<Move<Word>> =
        letters.iter().flat_map(|&l| [Move::Mul(Word::letter(l)), Move::Div(Word::letter(l))]).collect();
    let mut out = vec![Hull::identity()];
    let mut layer: Vec<Vec<Move<Word>>> = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for stack in &layer {
            for mv in &moves {
                let mut s = stack.clone();
                s.push(mv.clone());
                out.push(Hull::from_moves(s.clone()));
                next.push(s);
            }
        }
        layer = next;
    }
    out
}

fn check_fixed_indices(b: &Bounds, _: &Config) -> Result<Outcome> {
    let r = catalog::monoid_r();
    let letters = [Letter::A, Letter::B, Letter::C, Letter::D, Letter::F, Letter::X(0), Letter::Y(0)];
    let probes: Vec<Index> = (-6..=6).collect();
    let generators = [Letter::A, Letter::B, Letter::D, Letter::X(1), Letter::Y(-1)];
    let x = |n: Index| Word::letter(Letter::X(n));
    let mut checked = 0usize;
    for h in hull_stacks(&letters, b.hull_depth) {
        let images: Vec<Option<Word>> = probes.iter().map(|&n| hull::apply(&r, &h, &x(n))).collect();
        let defined = images.iter().filter(|i| i.is_some()).count();
        if defined >= 2 {
            let shift = probes.iter().zip(&images).find_map(|(&n, img)| {
                let img = img.as_ref()?;
                match img.letters() {
                    [Letter::X(m)] => Some(m - n),
                    _ => None,
                }
            });
            if let Some(k) = shift {
                checked += 1;
                for (&n, img) in probes.iter().zip(&images) {
                    if img.as_ref() != Some(&x(n + k)) {
                        return Ok(Outcome::fail("bare", format!("{h} sends some x_m to x_(m+{k}) but x_{n} to {img:?}")));
                    }
                }
            }
        }
        for &g in &generators {
            let xg = |n: Index| Word(vec![Letter::X(n), g]);
            let images: Vec<Option<Word>> = probes.iter().map(|&n| hull::apply(&r, &h, &xg(n))).collect();
            if images.iter().filter(|i| i.is_some()).count() < 2 {
                continue;
            }
            let fixes_one = probes.iter().zip(&images).any(|(&n, img)| img.as_ref() == Some(&xg(n)));
            if fixes_one {
                checked += 1;
                if !hull::fixes_ideal(&r, &h, &ConstructibleIdeal::tail_x(Word::empty())) {
                    return Ok(Outcome::fail("tails", format!("{h} fixes some x_n {g} but not X")));
                }
            }
        }
    }
    Ok(Outcome::pass(format!("{checked} hypotheses met, conclusions hold")))
}

/// Brute-force foundation test: some canonical ideal with a bounded prefix
/// inside the target misses every member.
pub fn brute_force_foundation_witness(
    m: &CatalogMonoid,
    target: &ConstructibleIdeal,
    family: &[ConstructibleIdeal],
    extra_len: usize,
    window: (Index, Index),
) -> Option<ConstructibleIdeal> {
    let p = m.presentation();
    let base = target.prefix().cloned().unwrap_or_default();
    for u in m.words_up_to(extra_len, window) {
        let w = p.mul(&base, &u);
        for &s in m.shapes() {
            let y = ideals::canonical(p, &w, s);
            if y.is_empty() || !ideals::subset(p, &y, target) {
                continue;
            }
            if family.iter().all(|f| m.intersect(&y, f).is_empty()) {
                return Some(y);
            }
        }
    }
    None
}

fn check_foundations(b: &Bounds, cfg: &Config) -> Result<Outcome> {
    let r = catalog::monoid_r();
    let p = r.presentation();
    let i = |s: &str| r.parse_ideal(s);
    let cited: Vec<(ConstructibleIdeal, Vec<ConstructibleIdeal>, bool)> = vec![
        (i("R")?, ["a R", "b R", "c R", "d R", "f R", "X", "Y"].iter().map(|s| i(s)).collect::<Result<_>>()?, true),
        (i("b Z")?, vec![i("b X")?, i("b Y")?], true),
        (i("a b Z")?, vec![i("a b X")?, i("a b Y")?], true),
        (i("b P")?, ["b a R", "b b R", "b c R", "b d R", "b f R", "b X", "b Y"].iter().map(|s| i(s)).collect::<Result<_>>()?, true),
        (i("b Z")?, vec![i("b x_0 R")?], false),
    ];
    for (x, f, expected) in &cited {
        let out = search::is_foundation(&r, x, f, cfg)?;
        if out.holds != *expected {
            return Ok(Outcome::fail("cited", format!("{x} with {}: {out}", ideals::show_family(f))));
        }
        if let Some(w) = &out.witness {
            if !ideals::subset(p, w, x) || f.iter().any(|fi| !r.intersect(w, fi).is_empty()) {
                return Ok(Outcome::fail("cited", format!("bad witness {w}")));
            }
        }
    }
    let pool = canonical_ideals(&r, 2, (-1, 1));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = 0;
    while done < b.random_foundations {
        let x = pool[rng.gen_range(0..pool.len())].clone();
        let inside: Vec<&ConstructibleIdeal> = pool.iter().filter(|a| ideals::subset(p, a, &x)).collect();
        let size = rng.gen_range(1..=4);
        let family: Vec<ConstructibleIdeal> = (0..size).map(|_| inside[rng.gen_range(0..inside.len())].clone()).collect();
        let fast = search::is_foundation(&r, &x, &family, cfg)?;
        let slow = brute_force_foundation_witness(&r, &x, &family, 2, (-2, 2));
        if fast.holds != slow.is_none() {
            return Ok(Outcome::fail("random", format!("{x} with {}: search {fast}, brute force {slow:?}", ideals::show_family(&family))));
        }
        done += 1;
    }
    Ok(Outcome::pass(format!("{} cited, {done} random", cited.len())))
}

fn check_regularity(b: &Bounds, cfg: &Config) -> Result<Outcome> {
    let r = catalog::monoid_r();
    let h = |s: &str| s.parse::<Hull>();
    let bz = Instance { target: r.parse_ideal("b Z")?, known: vec![], hs: vec![h("a")?, h("c")?] };
    let sb = regularity::check(&r, RegularityKind::StrongBoundary, &bz, cfg.prefix_bound, cfg)?;
    if !sb.is_witness() {
        return Ok(Outcome::fail("strong-boundary on b Z", sb.to_string()));
    }
    for kind in [RegularityKind::Strong, RegularityKind::Plain] {
        let res = regularity::check(&r, kind, &bz, cfg.prefix_bound, cfg)?;
        if !res.is_impossible() {
            return Ok(Outcome::fail(format!("{kind} on b Z"), res.to_string()));
        }
    }
    let mut pool = regularity::pair_pool(&r, cfg);
    pool.truncate(b.pair_instances);
    for inst in &pool {
        let res = regularity::check(&r, RegularityKind::StrongBoundary, inst, cfg.prefix_bound, cfg)?;
        if !res.is_witness() {
            return Ok(Outcome::fail("R pool", format!("{inst}: {res}")));
        }
    }
    let standard: Vec<Instance> = regularity::standard_pool(&r, cfg).into_iter().step_by(b.criterion_stride).collect();
    let criterion = regularity::boundary_equality_criterion(&r, &standard, cfg.prefix_bound, cfg)?;
    if !criterion.all_witness() {
        return Ok(Outcome::fail("criterion for R", "some instance lacks a witness"));
    }
    let s5 = catalog::monoid_s5();
    let inst = Instance { target: s5.parse_ideal("b Z")?, known: vec![s5.parse_ideal("b T0f")?], hs: vec![h("a")?] };
    let report = regularity::boundary_equality_criterion(&s5, &[inst], cfg.prefix_bound, cfg)?;
    if !report.any_impossible() {
        return Ok(Outcome::fail("criterion for S5", format!("{:?}", report.results)));
    }
    Ok(Outcome::pass(format!("{} pair instances, {} criterion instances", pool.len(), criterion.results.len())))
}

/// Characters of `R` with their expected classes, drawn round-robin from
/// type-1 words, type-2 words, tail ideals and principal characters.
pub fn sample_characters(count: usize) -> Result<Vec<(Character, BoundaryClass)>> {
    let prefixes = ["", "a", "b x0", "c b y2", "d", "x1", "b x0 a", "f", "b"];
    let pieces = ["b x0", "b y1", "d f", "b x0 a", "x2", "f d b", "y0 b", "b y-1 c"];
    let type2 = ["a", "c", "a c", "d", "a d", "c f", "f"];
    let principal = ["b", "b x0", "a b", "x1"];
    let mut lists: Vec<Vec<(String, BoundaryClass)>> = vec![Vec::new(); 4];
    for pre in prefixes {
        lists[0].extend(pieces.iter().map(|w| (format!("inf {pre} | {w}"), BoundaryClass::MaxType1)));
        lists[1].extend(type2.iter().map(|w| (format!("inf {pre} | {w}"), BoundaryClass::WordType2)));
        lists[2].push((format!("ideal {pre} X"), BoundaryClass::IdealX));
        lists[2].push((format!("ideal {pre} Y"), BoundaryClass::IdealY));
        lists[3].extend(principal.iter().map(|w| (format!("chi {pre} {w}"), BoundaryClass::NotBoundary)));
    }
    let r = catalog::monoid_r();
    let schedule = [0, 0, 1, 2, 3];
    let mut cursors = [0usize; 4];
    let mut out: Vec<(Character, BoundaryClass)> = Vec::new();
    let mut step = 0usize;
    while out.len() < count {
        if cursors.iter().zip(&lists).all(|(c, l)| *c >= l.len()) {
            return Err(Error::Invalid(format!("only {} sample characters available", out.len())));
        }
        let which = schedule[step % schedule.len()];
        step += 1;
        let Some((text, class)) = lists[which].get(cursors[which]) else { continue };
        cursors[which] += 1;
        let Ok(chi) = Character::checked(&r, text.parse()?) else { continue };
        if out.iter().all(|(c, _)| *c != chi) {
            out.push((chi, *class));
        }
    }
    Ok(out)
}

fn check_characters(b: &Bounds, cfg: &Config) -> Result<Outcome> {
    let r = catalog::monoid_r();
    let chars = sample_characters(b.characters)?;
    for (chi, expected) in &chars {
        let class = boundary::classify_boundary(&r, chi)?;
        if class != *expected {
            return Ok(Outcome::fail("class", format!("{chi}: {class}, expected {expected}")));
        }
        let maximal = boundary::is_maximal(&r, chi, cfg)?;
        let want_max = *expected == BoundaryClass::MaxType1;
        if maximal != Verdict::Exact(want_max) {
            return Ok(Outcome::fail("maximality", format!("{chi}: {maximal:?}")));
        }
        if want_max {
            if let Some(a) = boundary::maximality_witness_test(&r, chi, cfg)? {
                return Ok(Outcome::fail("witness test", format!("{chi} fails at {a}")));
            }
        }
        if boundary::in_boundary(&r, chi)? != (*expected != BoundaryClass::NotBoundary) {
            return Ok(Outcome::fail("boundary", chi.to_string()));
        }
    }
    Ok(Outcome::pass(format!("{} characters", chars.len())))
}

/// The deviation cases, as `(hull element, source character)`.
pub const DEVIATION_CASES: &[(&str, &str)] = &[("b^-1 c b", "ideal X"), ("c", "inf | b x0")];

fn check_means(b: &Bounds, _: &Config) -> Result<Outcome> {
    let r = catalog::monoid_r();
    for &(h, chi) in DEVIATION_CASES {
        let g = GroupoidElement::new(&r, h.parse()?, chi.parse()?)?;
        for &n in b.decay {
            let mu = mean::mean(&r, &g.chi, n)?;
            if mu.support.len() != n || !mean::is_normalized(&mu) {
                return Ok(Outcome::fail("support", format!("{g}, n = {n}")));
            }
            let d = mean::mean_deviation(&r, &g, n)?;
            if d != mean::Rational::new(2, n as i64) {
                return Ok(Outcome::fail("deviation", format!("{g}, n = {n}: {d}")));
            }
        }
    }
    Ok(Outcome::pass(format!("n in {:?}", b.decay)))
}

fn check_products(_: &Bounds, cfg: &Config) -> Result<Outcome> {
    let m = product::direct_product(catalog::monoid_r(), catalog::monoid_s5());
    let (l, rt) = (&m.left, &m.right);
    let left_ideals = canonical_ideals(l, 1, (0, 1));
    let right_ideals = canonical_ideals(rt, 1, (0, 1));
    let left_words = l.words_up_to(2, (0, 1));
    let right_words = rt.words_up_to(2, (0, 1));
    let mut n = 0usize;
    for a in left_ideals.iter().step_by(3) {
        for bi in right_ideals.iter().step_by(2) {
            let rect = Pair(a.clone(), bi.clone());
            for u in left_words.iter().step_by(5) {
                for v in right_words.iter().step_by(4) {
                    let expect = l.contains(a, u) && rt.contains(bi, v);
                    if m.contains(&rect, &Pair(u.clone(), v.clone())) != expect {
                        return Ok(Outcome::fail("membership", format!("({u}, {v}) in {rect}")));
                    }
                    n += 1;
                }
            }
        }
    }
    let f2 = product::direct_product(catalog::free_monoid(2)?, catalog::free_monoid(2)?);
    let p = |s: &str| f2.parse_ideal(s);
    let cases = [
        (p("(R, R)")?, vec![p("(a R, R)")?, p("(b R, R)")?]),
        (p("(R, R)")?, vec![p("(a R, a R)")?, p("(b R, R)")?]),
        (p("(R, R)")?, vec![p("(a R, a R)")?, p("(b R, R)")?, p("(a R, b R)")?]),
        (p("(a R, R)")?, vec![p("(a a R, R)")?, p("(a b R, a R)")?, p("(a b R, b R)")?]),
    ];
    for (x, f) in &cases {
        let rect = product::rectangle_foundation(&f2, x, f, cfg)?;
        let generic = search::is_foundation(&f2, x, f, cfg)?;
        if rect.holds != generic.holds {
            return Ok(Outcome::fail("foundation", format!("{x}: rectangle {rect}, search {generic}")));
        }
    }
    Ok(Outcome::pass(format!("{n} memberships, {} foundation cases", cases.len())))
}

fn check_free_products(_: &Bounds, cfg: &Config) -> Result<Outcome> {
    let m = free_product::free_product(catalog::free_monoid(1)?, catalog::free_monoid(1)?);
    let s = m.parse_elem("a")?;
    let t = m.parse_elem("a'")?;
    let st = crate::hull::HullElement::from_moves(vec![Move::Mul(t.clone()), Move::Div(s.clone())]);
    if !hull::is_zero(&m, &st) {
        return Ok(Outcome::fail("zero law", "a^-1 a' is not zero"));
    }
    let ts = crate::hull::HullElement::from_moves(vec![Move::Mul(s), Move::Div(t)]);
    if !hull::is_zero(&m, &ts) {
        return Ok(Outcome::fail("zero law", "a'^-1 a is not zero"));
    }
    let left = &m.left;
    let ideals_s = canonical_ideals(left, 3, (0, 0));
    let mut checked = 0usize;
    for a in &ideals_s {
        let inside: Vec<&ConstructibleIdeal> = ideals_s.iter().filter(|b| ideals::subset(left.presentation(), b, a)).collect();
        for (i, b0) in inside.iter().enumerate() {
            for b1 in inside.iter().skip(i) {
                let bases = [(*b0).clone(), (*b1).clone()];
                for minus in [None, inside.iter().find(|c| ideals::subset(left.presentation(), c, b0) && *c != b0)] {
                    let mut parts: Vec<GeneralizedIdeal<_>> = Vec::new();
                    let mut lifted: Vec<GeneralizedIdeal<_>> = Vec::new();
                    for (k, b) in bases.iter().enumerate() {
                        let sub: Vec<ConstructibleIdeal> = if k == 0 { minus.map(|c| (*c).clone()).into_iter().collect() } else { vec![] };
                        parts.push(GeneralizedIdeal { base: b.clone(), minus: sub.clone() });
                        lifted.push(GeneralizedIdeal {
                            base: m.lift_left(b.clone()),
                            minus: sub.into_iter().map(|c| m.lift_left(c)).collect(),
                        });
                    }
                    let x = GeneralizedIdeal::plain(m.lift_left(a.clone()));
                    let foundation = search::is_foundation_generalized(&m, &x, &lifted, cfg)?.holds;
                    let covers_lifted = covers(&m, &x.base, &lifted, cfg)?;
                    let covers_factor = covers(left, a, &parts, cfg)?;
                    if foundation != covers_lifted || covers_lifted != covers_factor {
                        let shown: Vec<String> = parts.iter().map(|g| g.to_string()).collect();
                        return Ok(Outcome::fail(
                            "foundation vs cover",
                            format!("{a} with {}: foundation {foundation}, cover {covers_lifted}, factor cover {covers_factor}", shown.join(", ")),
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(Outcome::pass(format!("{checked} families")))
}

/// Whether `base ⊆ ⋃ (Bⱼ ∖ ⋃Mⱼ)`.
fn covers<M: Monoid>(m: &M, base: &M::Ideal, parts: &[GeneralizedIdeal<M::Ideal>], cfg: &Config) -> Result<bool> {
    let mut start = vec![base.clone()];
    let mut spans = Vec::new();
    for g in parts {
        let from = start.len();
        start.push(g.base.clone());
        start.extend(g.minus.iter().cloned());
        spans.push((from, start.len()));
    }
    let escaped = search::find_element(
        m,
        start,
        cfg.max_states,
        |s| m.is_empty(&s[0]),
        |s| Ok(m.is_full(&s[0]) && spans.iter().all(|&(a, b)| !m.is_full(&s[a]) || s[a + 1..b].iter().any(|x| m.is_full(x)))),
    )?;
    Ok(escaped.is_none())
}
