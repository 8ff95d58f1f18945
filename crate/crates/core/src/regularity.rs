//! Instance checkers for the four regularity conditions and the
//! boundary-groupoid equality criterion.
//!
//! An instance is a target `X`, known ideals `X₁ … X_m` and hull elements
//! `h₁ … h_n` with every point of `X ∖ ⋃Xᵢ` fixed by some `h_k`. A checker
//! looks for ideals `Y_j`, each fixed pointwise by some `h_k`, that either
//! cover `X ∖ ⋃Xᵢ` or complete the `Xᵢ` to a foundation set for `X`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::catalog::CatalogMonoid;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::groupoid::Hull;
use crate::hull;
use crate::ideals::{self, ConstructibleIdeal};
use crate::monoid::Monoid;
use crate::search::{self, GeneralizedIdeal};
use crate::words::{concat, Index, Letter, Word, ZKind};

type Ideal = ConstructibleIdeal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularityKind {
    /// Cover by ideals in `J`.
    Strong,
    /// Cover by differences in `J̄`.
    Plain,
    /// Foundation set with ideals in `J`.
    StrongBoundary,
    /// Foundation set with differences in `J̄`.
    Boundary,
}

impl RegularityKind {
    pub const ALL: [RegularityKind; 4] =
        [RegularityKind::Strong, RegularityKind::Plain, RegularityKind::StrongBoundary, RegularityKind::Boundary];

    pub fn uses_differences(self) -> bool {
        matches!(self, RegularityKind::Plain | RegularityKind::Boundary)
    }

    pub fn is_foundation_version(self) -> bool {
        matches!(self, RegularityKind::StrongBoundary | RegularityKind::Boundary)
    }

    /// The version with ideals in `J` implying this one.
    pub fn strong_form(self) -> RegularityKind {
        match self {
            RegularityKind::Plain => RegularityKind::Strong,
            RegularityKind::Boundary => RegularityKind::StrongBoundary,
            k => k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RegularityKind::Strong => "strong",
            RegularityKind::Plain => "plain",
            RegularityKind::StrongBoundary => "strong-boundary",
            RegularityKind::Boundary => "boundary",
        }
    }
}

impl fmt::Display for RegularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegularityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<RegularityKind> {
        RegularityKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Parse {
            input: s.to_string(),
            position: 0,
            message: "expected strong, plain, strong-boundary or boundary".into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub target: Ideal,
    pub known: Vec<Ideal>,
    pub hs: Vec<Hull>,
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X = {}, Xs = {}, hs = {{", self.target, ideals::show_family(&self.known))?;
        for (i, h) in self.hs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{h}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessResult {
    /// Each entry is an ideal and the 1-based position of a hull element
    /// fixing it pointwise.
    Witness(Vec<(GeneralizedIdeal<Ideal>, usize)>),
    ProvedImpossible(String),
    UnknownAtBound(usize),
}

impl WitnessResult {
    pub fn is_witness(&self) -> bool {
        matches!(self, WitnessResult::Witness(_))
    }

    pub fn is_impossible(&self) -> bool {
        matches!(self, WitnessResult::ProvedImpossible(_))
    }
}

impl fmt::Display for WitnessResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessResult::Witness(ys) => {
                f.write_str("witness {")?;
                for (i, (y, k)) in ys.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "({y}, {k})")?;
                }
                f.write_str("}")
            }
            WitnessResult::ProvedImpossible(why) => write!(f, "impossible: {why}"),
            WitnessResult::UnknownAtBound(b) => write!(f, "unknown at bound {b}"),
        }
    }
}

struct Prepared<'a> {
    m: &'a CatalogMonoid,
    target: Ideal,
    known: Vec<Ideal>,
    hs: &'a [Hull],
    probes: Vec<Index>,
}

impl<'a> Prepared<'a> {
    fn new(m: &'a CatalogMonoid, inst: &'a Instance) -> Prepared<'a> {
        let target = m.canonical(&inst.target);
        let known: Vec<Ideal> =
            inst.known.iter().map(|k| m.intersect(&target, k)).filter(|k| !k.is_empty()).collect();
        let hrefs: Vec<&Hull> = inst.hs.iter().collect();
        let mut irefs: Vec<&Ideal> = vec![&target];
        irefs.extend(known.iter());
        let probes = hull::probe_indices(m, &hrefs, &irefs, &[]);
        Prepared { m, target, known, hs: &inst.hs, probes }
    }

    fn generic_index(&self) -> Index {
        *self.probes.last().expect("probe list is nonempty")
    }

    fn in_known(&self, w: &Word) -> bool {
        self.known.iter().any(|k| self.m.contains(k, w))
    }

    fn fixed_by_some(&self, w: &Word) -> bool {
        self.hs.iter().any(|h| hull::apply(self.m, h, w).as_ref() == Some(w))
    }

    fn fixer(&self, y: &Ideal) -> Option<usize> {
        self.hs.iter().position(|h| hull::fixes_ideal(self.m, h, y))
    }

    fn fixer_on(&self, y: &GeneralizedIdeal<Ideal>) -> Option<usize> {
        self.hs.iter().position(|h| hull::fixes_on_difference(self.m, h, &y.base, &y.minus))
    }
}

/// Checks `X ∖ ⋃Xᵢ ⊆ ⋃ Fix(h_k)` on the generators of `X`.
pub fn hypothesis_failure(m: &CatalogMonoid, inst: &Instance) -> Option<Word> {
    let pr = Prepared::new(m, inst);
    m.ideal_generators(&pr.target, &pr.probes).into_iter().find(|g| !pr.in_known(g) && !pr.fixed_by_some(g))
}

/// Rule for `R`: a cover member containing bare `r z_n` for infinitely
/// many `n` contains the generic `r z'_n` for every forced kind `z'`.
fn multiple_indices(pr: &Prepared) -> Option<String> {
    let m = pr.m;
    if !m.is_r() {
        return None;
    }
    let p = m.presentation();
    let r = pr.target.prefix()?;
    let n = pr.generic_index();
    for kind in ZKind::ALL {
        let rz = p.mul(r, &Word::letter(Letter::z(kind, n)));
        if !m.contains(&pr.target, &rz) || pr.in_known(&rz) {
            continue;
        }
        let forced: Vec<Word> =
            m.forced_kinds(kind).into_iter().map(|k| p.mul(r, &Word::letter(Letter::z(k, n)))).collect();
        let one_fixes_all =
            pr.hs.iter().any(|h| forced.iter().all(|w| hull::apply(m, h, w).as_ref() == Some(w)));
        if !one_fixes_all {
            let shown: Vec<String> = forced.iter().map(|w| w.to_string()).collect();
            return Some(format!(
                "infinitely many {rz} lie outside the known ideals, and no single hull element fixes all of {}",
                shown.join(", ")
            ));
        }
    }
    None
}

/// Rule for ideals in `J`: if the generic `r z_n R` lies in `X` and misses
/// every `Xᵢ`, some `Y_j` meets it for infinitely many `n` and therefore
/// contains `r·T` for the smallest tail family `T` of that kind.
fn two_tailed(pr: &Prepared) -> Option<String> {
    let m = pr.m;
    let p = m.presentation();
    if !p.has_indexed() {
        return None;
    }
    let r = pr.target.prefix()?;
    let n = pr.generic_index();
    for kind in ZKind::ALL {
        let rz = p.mul(r, &Word::letter(Letter::z(kind, n)));
        let cone = m.principal(&rz);
        if !m.contains(&pr.target, &rz) || pr.known.iter().any(|k| !m.intersect(&cone, k).is_empty()) {
            continue;
        }
        let Some(t) = m.tail_family(kind) else { continue };
        let family = ideals::canonical(p, r, t);
        if pr.fixer(&family).is_none() {
            return Some(format!(
                "every admissible Y_j meeting infinitely many {rz} R contains {family}, which no hull element fixes"
            ));
        }
    }
    None
}

fn pool_alphabet(pr: &Prepared, cfg: &Config) -> Vec<Letter> {
    let p = pr.m.presentation();
    let mut seen: BTreeSet<Letter> = BTreeSet::new();
    let push_word = |w: &Word, seen: &mut BTreeSet<Letter>| seen.extend(w.letters().iter().copied());
    for a in std::iter::once(&pr.target).chain(pr.known.iter()) {
        if let Some(w) = a.prefix() {
            push_word(w, &mut seen);
        }
    }
    for h in pr.hs {
        for mv in h.moves() {
            let (hull::Move::Mul(s) | hull::Move::Div(s)) = mv;
            push_word(s, &mut seen);
        }
    }
    if p.in_alphabet(Letter::B) {
        seen.insert(Letter::B);
    }
    let kinds: BTreeSet<ZKind> = seen.iter().filter_map(|l| l.z_parts()).map(|(k, _)| k).collect();
    for k in kinds {
        for n in cfg.window.0..=cfg.window.1 {
            seen.insert(Letter::z(k, n));
        }
    }
    seen.into_iter().filter(|&l| p.in_alphabet(l)).collect()
}

fn words_over(pr: &Prepared, letters: &[Letter], max_len: usize) -> Vec<Word> {
    let p = pr.m.presentation();
    let mut seen: BTreeSet<Word> = BTreeSet::from([Word::empty()]);
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in letters {
                let mut v = w.clone();
                v.push(l);
                let nf = p.normal_form(&v);
                if nf.len() == v.len() && seen.insert(nf.clone()) {
                    next.push(nf);
                }
            }
        }
        layer = next;
    }
    seen.into_iter().collect()
}

/// Prefixes whose translates of the canonical shapes form the pool.
fn pool_prefixes(pr: &Prepared, bound: usize, cfg: &Config) -> Vec<Word> {
    let p = pr.m.presentation();
    let v = pr.target.prefix().cloned().unwrap_or_default();
    let alphabet = pool_alphabet(pr, cfg);
    let mut out: BTreeSet<Word> = (0..=v.len()).map(|i| v.prefix(i)).collect();
    for u in words_over(pr, &alphabet, bound) {
        out.insert(p.mul(&v, &u));
    }
    out.into_iter().collect()
}

fn fixed_pool(pr: &Prepared, kind: RegularityKind, bound: usize, cfg: &Config) -> Vec<(Ideal, usize)> {
    let m = pr.m;
    let p = m.presentation();
    let mut found: Vec<(Ideal, usize)> = Vec::new();
    let mut seen: BTreeSet<Ideal> = BTreeSet::new();
    for w in pool_prefixes(pr, bound, cfg) {
        for &sh in m.shapes() {
            let mut y = ideals::canonical(p, &w, sh);
            if kind.is_foundation_version() {
                y = m.intersect(&pr.target, &y);
            } else if m.intersect(&pr.target, &y).is_empty() {
                continue;
            }
            if y.is_empty() || !seen.insert(y.clone()) {
                continue;
            }
            if let Some(k) = pr.fixer(&y) {
                found.push((y, k));
            }
        }
    }
    maximal(m, found)
}

fn maximal(m: &CatalogMonoid, pool: Vec<(Ideal, usize)>) -> Vec<(Ideal, usize)> {
    let mut keep = Vec::new();
    for (i, (y, k)) in pool.iter().enumerate() {
        let dominated = pool
            .iter()
            .enumerate()
            .any(|(j, (z, _))| j != i && m.subset(y, z) && (!m.subset(z, y) || j < i));
        if !dominated {
            keep.push((y.clone(), *k));
        }
    }
    keep
}

/// Differences `B ∖ ⋃M` with `B` from the pool prefixes and at most
/// `max_subtract` subtracted ideals, fixed by some hull element.
fn difference_pool(pr: &Prepared, kind: RegularityKind, cfg: &Config) -> Vec<(GeneralizedIdeal<Ideal>, usize)> {
    let m = pr.m;
    let p = m.presentation();
    let mut out = Vec::new();
    let mut seen: BTreeSet<Ideal> = BTreeSet::new();
    for w in pool_prefixes(pr, 1, cfg) {
        for &sh in m.shapes() {
            let mut base = ideals::canonical(p, &w, sh);
            if kind.is_foundation_version() {
                base = m.intersect(&pr.target, &base);
            }
            if base.is_empty() || !seen.insert(base.clone()) || pr.fixer(&base).is_some() {
                continue;
            }
            let subs = subtraction_pool(pr, &base, cfg);
            'outer: for size in 1..=cfg.max_subtract.min(subs.len()) {
                for combo in combinations(subs.len(), size) {
                    let minus: Vec<Ideal> = combo.iter().map(|&i| subs[i].clone()).collect();
                    let g = GeneralizedIdeal::new(m, base.clone(), minus);
                    if let Some(k) = pr.fixer_on(&g) {
                        out.push((g, k));
                        break 'outer;
                    }
                }
            }
        }
    }
    out
}

fn subtraction_pool(pr: &Prepared, base: &Ideal, cfg: &Config) -> Vec<Ideal> {
    let m = pr.m;
    let p = m.presentation();
    let mut out: BTreeSet<Ideal> = BTreeSet::new();
    for g in m.ideal_generators(base, &pr.probes) {
        if !pr.fixed_by_some(&g) {
            out.insert(m.principal(&g));
        }
    }
    if let Some(v) = base.prefix() {
        for u in m.words_up_to(1, cfg.window) {
            for &sh in m.shapes() {
                let c = m.intersect(base, &ideals::canonical(p, &concat(v, &u), sh));
                if !c.is_empty() && c != *base {
                    out.insert(c);
                }
            }
        }
    }
    out.remove(base);
    out.into_iter().collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Whether `family` settles the queried condition for the instance.
fn property_holds(
    pr: &Prepared,
    kind: RegularityKind,
    family: &[GeneralizedIdeal<Ideal>],
    cfg: &Config,
) -> Result<bool> {
    let m = pr.m;
    let all_plain = family.iter().all(|g| g.minus.is_empty());
    if kind.is_foundation_version() {
        if all_plain {
            let mut members = pr.known.clone();
            members.extend(family.iter().map(|g| g.base.clone()));
            return Ok(search::is_foundation(m, &pr.target, &members, cfg)?.holds);
        }
        let mut members: Vec<GeneralizedIdeal<Ideal>> = pr.known.iter().cloned().map(GeneralizedIdeal::plain).collect();
        members.extend(family.iter().cloned());
        let target = GeneralizedIdeal::plain(pr.target.clone());
        return Ok(search::is_foundation_generalized(m, &target, &members, cfg)?.holds);
    }
    if all_plain {
        let mut parts = pr.known.clone();
        parts.extend(family.iter().map(|g| g.base.clone()));
        return search::covered(m, &pr.target, &parts, cfg);
    }
    let mut start = vec![pr.target.clone()];
    start.extend(pr.known.iter().cloned());
    let k = start.len();
    let mut spans = Vec::new();
    for g in family {
        let from = start.len();
        start.push(g.base.clone());
        start.extend(g.minus.iter().cloned());
        spans.push((from, start.len()));
    }
    let escaped = search::find_element(
        m,
        start,
        cfg.max_states,
        |s| s[0].is_empty() || s[1..k].iter().any(|x| m.is_full(x)),
        |s| {
            Ok(m.is_full(&s[0])
                && s[1..k].iter().all(|x| !m.is_full(x))
                && spans.iter().all(|&(a, b)| !m.is_full(&s[a]) || s[a + 1..b].iter().any(|x| m.is_full(x))))
        },
    )?;
    Ok(escaped.is_none())
}

fn minimize(
    pr: &Prepared,
    kind: RegularityKind,
    mut family: Vec<(GeneralizedIdeal<Ideal>, usize)>,
    cfg: &Config,
) -> Result<Vec<(GeneralizedIdeal<Ideal>, usize)>> {
    let mut i = family.len();
    while i > 0 {
        i -= 1;
        let mut trial = family.clone();
        trial.remove(i);
        let sets: Vec<GeneralizedIdeal<Ideal>> = trial.iter().map(|(g, _)| g.clone()).collect();
        if property_holds(pr, kind, &sets, cfg)? {
            family = trial;
        }
    }
    Ok(family)
}

fn budget_as_unknown(r: Result<WitnessResult>, bound: usize) -> Result<WitnessResult> {
    match r {
        Err(Error::Budget(_)) => Ok(WitnessResult::UnknownAtBound(bound)),
        other => other,
    }
}

/// Runs the checker for one of the four conditions on an instance.
///
/// A failure of the fixed-point hypothesis is a precondition error, and an
/// instance with `X ⊆ ⋃Xᵢ` has nothing to check.
pub fn check(m: &CatalogMonoid, kind: RegularityKind, inst: &Instance, bound: usize, cfg: &Config) -> Result<WitnessResult> {
    let pr = Prepared::new(m, inst);
    if pr.target.is_empty() || search::covered(m, &pr.target, &pr.known, cfg)? {
        return Ok(WitnessResult::ProvedImpossible("empty hypothesis set".into()));
    }
    if let Some(g) = hypothesis_failure(m, inst) {
        return Err(Error::Precondition(format!("{g} lies in X outside every Xᵢ but no hull element fixes it")));
    }
    if !kind.is_foundation_version() {
        if let Some(why) = multiple_indices(&pr) {
            return Ok(WitnessResult::ProvedImpossible(why));
        }
    }
    if !kind.uses_differences() {
        if let Some(why) = two_tailed(&pr) {
            return Ok(WitnessResult::ProvedImpossible(why));
        }
    }
    budget_as_unknown(search_witness(&pr, kind, bound, cfg), bound)
}

fn search_witness(pr: &Prepared, kind: RegularityKind, bound: usize, cfg: &Config) -> Result<WitnessResult> {
    let mut pool: Vec<(GeneralizedIdeal<Ideal>, usize)> =
        fixed_pool(pr, kind, bound, cfg).into_iter().map(|(y, k)| (GeneralizedIdeal::plain(y), k)).collect();
    let sets = |pool: &[(GeneralizedIdeal<Ideal>, usize)]| pool.iter().map(|(g, _)| g.clone()).collect::<Vec<_>>();
    let mut holds = property_holds(pr, kind, &sets(&pool), cfg)?;
    if !holds && kind.uses_differences() {
        pool.extend(difference_pool(pr, kind, cfg));
        holds = property_holds(pr, kind, &sets(&pool), cfg)?;
    }
    if !holds {
        return Ok(WitnessResult::UnknownAtBound(bound));
    }
    let family = minimize(pr, kind, pool, cfg)?;
    Ok(WitnessResult::Witness(family.into_iter().map(|(g, k)| (g, k + 1)).collect()))
}

/// Verdicts of the equality criterion over an instance pool.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub monoid: String,
    pub results: Vec<(Instance, WitnessResult)>,
}

impl CriterionReport {
    pub fn all_witness(&self) -> bool {
        self.results.iter().all(|(_, r)| r.is_witness())
    }

    pub fn any_impossible(&self) -> bool {
        self.results.iter().any(|(_, r)| r.is_impossible())
    }
}

/// Runs the single-element strong boundary check on every instance. An
/// instance failing its hypothesis is an error.
pub fn boundary_equality_criterion(
    m: &CatalogMonoid,
    pool: &[Instance],
    bound: usize,
    cfg: &Config,
) -> Result<CriterionReport> {
    let mut results = Vec::with_capacity(pool.len());
    for inst in pool {
        if inst.hs.len() != 1 {
            return Err(Error::Precondition(format!("criterion instances carry one hull element: {inst}")));
        }
        results.push((inst.clone(), check(m, RegularityKind::StrongBoundary, inst, bound, cfg)?));
    }
    Ok(CriterionReport { monoid: m.name().to_string(), results })
}

/// Hull elements used to generate instance pools: the identity, the
/// letters and their conjugates by `b`.
pub fn hull_pool(m: &CatalogMonoid) -> Vec<Hull> {
    let p = m.presentation();
    let mut out = vec![Hull::identity()];
    for &l in p.letters() {
        out.push(Hull::mul(Word::letter(l)));
    }
    if p.in_alphabet(Letter::B) {
        for &l in p.letters() {
            if l != Letter::B {
                let b = Word::letter(Letter::B);
                out.push(Hull::div(b.clone()).after(&Hull::mul(Word::letter(l))).after(&Hull::mul(b)));
            }
        }
    }
    out
}

fn pool_targets(m: &CatalogMonoid, prefixes: &[Word]) -> Vec<Ideal> {
    let p = m.presentation();
    let mut out = Vec::new();
    for v in prefixes {
        for &sh in m.shapes() {
            let target = ideals::canonical(p, v, sh);
            if !target.is_empty() && !out.contains(&target) {
                out.push(target);
            }
        }
    }
    out
}

/// Instances `(g, X, Xs)` with `X` a shape translated by a word of length
/// at most one (or `b z_0` when indexed letters exist), `g` from
/// [`hull_pool`], and `Xs` the largest pool ideals inside `X` containing no
/// point fixed by `g`, chosen to cover the points `g` moves. Instances whose
/// moved points cannot be covered this way are skipped.
pub fn standard_pool(m: &CatalogMonoid, cfg: &Config) -> Vec<Instance> {
    let p = m.presentation();
    let mut prefixes: Vec<Word> = vec![Word::empty()];
    prefixes.extend(p.letters().iter().map(|&l| Word::letter(l)));
    if p.has_indexed() {
        prefixes.push(Word::letter(Letter::z(ZKind::X, 0)));
        for k in ZKind::ALL {
            prefixes.push(Word(vec![Letter::B, Letter::z(k, 0)]));
        }
    }
    let mut out = Vec::new();
    for target in pool_targets(m, &prefixes) {
        for g in hull_pool(m) {
            out.extend(complete_instance(m, target.clone(), vec![g], cfg));
        }
    }
    out
}

/// Instances built as in [`standard_pool`] from pairs of distinct
/// non-identity hull elements, on targets with prefix empty or `b`.
pub fn pair_pool(m: &CatalogMonoid, cfg: &Config) -> Vec<Instance> {
    let p = m.presentation();
    let mut prefixes = vec![Word::empty()];
    if p.in_alphabet(Letter::B) {
        prefixes.push(Word::letter(Letter::B));
    }
    let hs: Vec<Hull> = hull_pool(m).into_iter().filter(|h| !h.moves().is_empty()).collect();
    let mut out = Vec::new();
    for target in pool_targets(m, &prefixes) {
        for i in 0..hs.len() {
            for j in i + 1..hs.len() {
                out.extend(complete_instance(m, target.clone(), vec![hs[i].clone(), hs[j].clone()], cfg));
            }
        }
    }
    out
}

fn complete_instance(m: &CatalogMonoid, target: Ideal, hs: Vec<Hull>, cfg: &Config) -> Option<Instance> {
    let p = m.presentation();
    let hrefs: Vec<&Hull> = hs.iter().collect();
    let probes = hull::probe_indices(m, &hrefs, &[&target], &[]);
    let gens = m.ideal_generators(&target, &probes);
    let fixed = |w: &Word| hs.iter().any(|g| hull::apply(m, g, w).as_ref() == Some(w));
    let (fixed_gens, moved): (Vec<Word>, Vec<Word>) = gens.into_iter().partition(|w| fixed(w));
    if fixed_gens.is_empty() {
        return None;
    }
    let v = target.prefix().cloned().unwrap_or_default();
    let mut candidates: Vec<Ideal> = Vec::new();
    for u in m.words_up_to(2, cfg.window) {
        for &sh in m.shapes() {
            let c = m.intersect(&target, &ideals::canonical(p, &concat(&v, &u), sh));
            if !c.is_empty() && c != target && !fixed_gens.iter().any(|w| m.contains(&c, w)) {
                candidates.push(c);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let candidates: Vec<Ideal> =
        maximal(m, candidates.into_iter().map(|c| (c, 0)).collect()).into_iter().map(|(c, _)| c).collect();
    let mut known: Vec<Ideal> = Vec::new();
    for w in &moved {
        if known.iter().any(|k| m.contains(k, w)) {
            continue;
        }
        known.push(candidates.iter().find(|c| m.contains(c, w))?.clone());
    }
    let inst = Instance { target, known, hs };
    if hypothesis_failure(m, &inst).is_some() {
        return None;
    }
    Some(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn i(s: &str) -> Ideal {
        s.parse().unwrap()
    }

    fn h(s: &str) -> Hull {
        s.parse().unwrap()
    }

    fn bz_instance() -> Instance {
        Instance { target: i("b Z"), known: vec![], hs: vec![h("a"), h("c")] }
    }

    #[test]
    fn strong_boundary_witness_for_bz() {
        let r = catalog::monoid_r();
        let cfg = Config::default();
        let res = check(&r, RegularityKind::StrongBoundary, &bz_instance(), 3, &cfg).unwrap();
        let WitnessResult::Witness(ys) = res else { panic!("{res}") };
        let mut got: Vec<(String, usize)> = ys.iter().map(|(y, k)| (y.to_string(), *k)).collect();
        got.sort();
        assert_eq!(got, vec![("b X".to_string(), 1), ("b Y".to_string(), 2)]);
    }

    #[test]
    fn cover_versions_fail_for_bz() {
        let r = catalog::monoid_r();
        let cfg = Config::default();
        for kind in [RegularityKind::Strong, RegularityKind::Plain] {
            let res = check(&r, kind, &bz_instance(), 3, &cfg).unwrap();
            assert!(res.is_impossible(), "{kind}: {res}");
        }
    }

    #[test]
    fn free_monoid_identity() {
        let f = catalog::free_monoid(2).unwrap();
        let cfg = Config::default();
        let inst = Instance { target: i("a b R"), known: vec![], hs: vec![Hull::identity()] };
        let res = check(&f, RegularityKind::Strong, &inst, 2, &cfg).unwrap();
        let WitnessResult::Witness(ys) = res else { panic!("{res}") };
        assert_eq!(ys.len(), 1);
        assert_eq!(ys[0].0.to_string(), "R");
        assert_eq!(ys[0].1, 1);
    }

    #[test]
    fn empty_and_broken_hypotheses() {
        let r = catalog::monoid_r();
        let cfg = Config::default();
        let empty = Instance { target: i("b X"), known: vec![i("b Z")], hs: vec![h("a")] };
        assert!(check(&r, RegularityKind::Strong, &empty, 2, &cfg).unwrap().is_impossible());
        let broken = Instance { target: i("b Z"), known: vec![], hs: vec![h("a")] };
        assert!(matches!(check(&r, RegularityKind::Strong, &broken, 2, &cfg), Err(Error::Precondition(_))));
    }

    #[test]
    fn s5_translated_instance_violates_criterion() {
        let s5 = catalog::monoid_s5();
        let cfg = Config::default();
        let inst = Instance { target: i("b Z"), known: vec![i("b T0f")], hs: vec![h("a")] };
        let report = boundary_equality_criterion(&s5, &[inst], 3, &cfg).unwrap();
        assert!(report.any_impossible(), "{:?}", report.results);
    }

    #[test]
    fn conjugates_parse_back() {
        let r = catalog::monoid_r();
        assert!(hull_pool(&r).contains(&h("b^-1 c b")));
    }

    #[test]
    fn parse_kinds() {
        for k in RegularityKind::ALL {
            assert_eq!(k.name().parse::<RegularityKind>().unwrap(), k);
        }
    }
}
