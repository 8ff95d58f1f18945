mod monoid_arg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use bq_core::boundary::{self, Character};
use bq_core::monoid::{Monoid, Syntax};
use bq_core::regularity::{self, Instance, RegularityKind};
use bq_core::search::{self, GeneralizedIdeal};
use bq_core::verify::{self, Suite};
use bq_core::{mean, Config, Error, GroupoidElement, Hull, Rational, Word};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use monoid_arg::AnyMonoid;

#[derive(Parser)]
#[command(name = "bq", version, about = "Word problems, constructible ideals and boundary characters of catalog monoids")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Config file of `key = value` lines; defaults to $BQ_CONFIG.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Index window, as `lo,hi`.
    #[arg(long, global = true, value_name = "LO,HI", allow_hyphen_values = true)]
    window: Option<String>,
    /// Prefix bound for candidate pools.
    #[arg(long, global = true)]
    prefix: Option<usize>,
    /// Probe depth.
    #[arg(long, global = true)]
    probes: Option<usize>,
    /// State budget for exact searches.
    #[arg(long, global = true)]
    max_states: Option<usize>,
    /// Report every runtime as 0 so that output is byte-stable.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Normalize {
        monoid: AnyMonoid,
        word: String,
        /// Also print the rewrite steps.
        #[arg(long)]
        steps: bool,
    },
    /// Whether two words are equal in the monoid.
    Eq { monoid: AnyMonoid, left: String, right: String },
    /// Operations on constructible right ideals.
    Ideal {
        #[command(subcommand)]
        op: IdealOp,
    },
    /// Whether a family is a foundation set for a target ideal.
    Foundation {
        monoid: AnyMonoid,
        #[arg(long)]
        target: String,
        #[arg(long, num_args = 0.., allow_hyphen_values = true)]
        family: Vec<String>,
    },
    /// Characters of the semilattice of constructible ideals.
    Char {
        #[command(subcommand)]
        op: CharOp,
    },
    /// Regularity conditions.
    Reg {
        #[command(subcommand)]
        op: RegOp,
    },
    /// Approximate invariant means.
    Mean {
        #[command(subcommand)]
        op: MeanOp,
    },
    /// Runs the check suite.
    Verify {
        /// `appendix` (alias `quick`) or `full`.
        #[arg(long, default_value = "appendix")]
        suite: String,
        /// Restrict to the named checks.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// List the checks and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum IdealOp {
    Intersect { monoid: AnyMonoid, left: String, right: String },
    /// `x⁻¹A`.
    Pullback { monoid: AnyMonoid, word: String, ideal: String },
    Member { monoid: AnyMonoid, ideal: String, word: String },
    Subset { monoid: AnyMonoid, left: String, right: String },
}

#[derive(Subcommand)]
enum CharOp {
    Eval {
        character: String,
        ideal: String,
        #[arg(long, default_value = "R")]
        monoid: AnyMonoid,
    },
    Classify {
        character: String,
        #[arg(long, default_value = "R")]
        monoid: AnyMonoid,
    },
}

#[derive(Subcommand)]
enum RegOp {
    /// Checks one instance: `{"target": ..., "known": [...], "hs": [...]}`.
    Check {
        kind: RegularityKind,
        #[arg(long, default_value = "R")]
        monoid: AnyMonoid,
        #[arg(long)]
        instance: String,
        /// Prefix extension bound; defaults to the configured prefix bound.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Runs the single-element criterion over a generated pool.
    Criterion {
        #[arg(long, default_value = "R")]
        monoid: AnyMonoid,
        /// `standard` or `pair`.
        #[arg(long, default_value = "standard")]
        pool: String,
    },
}

#[derive(Subcommand)]
enum MeanOp {
    /// `‖μ_n − μ_n(· g⁻¹)‖₁` for the germ `[elt, char]`.
    Dev {
        #[arg(long = "char")]
        character: String,
        #[arg(long)]
        elt: String,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// The distribution `μ_n` at a character.
    Dist {
        #[arg(long = "char")]
        character: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Deserialize)]
struct InstanceJson {
    target: String,
    #[serde(default)]
    known: Vec<String>,
    hs: Vec<String>,
}

/// A command result: text and JSON renderings plus the exit status.
struct Report {
    text: String,
    json: Value,
    failed: bool,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Report {
        Report { text: text.into(), json, failed: false }
    }
}

fn ratio(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn load_config(g: &Global) -> anyhow::Result<Config> {
    let mut cfg = match &g.config {
        Some(p) => Config::from_file(p)?,
        None => Config::load()?,
    };
    if let Some(w) = &g.window {
        let (lo, hi) = w.split_once(',').context("--window takes lo,hi")?;
        let (lo, hi) = (lo.trim().parse().context("bad window bound")?, hi.trim().parse().context("bad window bound")?);
        if lo > hi {
            bail!(Error::Invalid(format!("empty window {lo},{hi}")));
        }
        cfg.window = (lo, hi);
    }
    if let Some(p) = g.prefix {
        cfg.prefix_bound = p;
    }
    if let Some(p) = g.probes {
        cfg.probes = p;
    }
    if let Some(s) = g.max_states {
        cfg.max_states = s;
    }
    Ok(cfg)
}

fn parse_generalized<M: Syntax>(m: &M, s: &str) -> anyhow::Result<GeneralizedIdeal<M::Ideal>> {
    let mut parts = s.split('\\');
    let base = m.parse_ideal(parts.next().unwrap_or(""))?;
    let minus = parts.map(|p| m.parse_ideal(p)).collect::<bq_core::Result<Vec<_>>>()?;
    Ok(GeneralizedIdeal::new(m, base, minus))
}

fn normalize(any: &AnyMonoid, word: &str, show_steps: bool) -> anyhow::Result<Report> {
    if let AnyMonoid::Catalog(m) = any {
        let w = Word::parse(word)?;
        m.presentation().check_word(&w)?;
        let (nf, steps) = m.presentation().normal_form_with_steps(&w);
        let mut text = nf.to_string();
        if show_steps {
            for s in &steps {
                text.push_str(&format!("\n  {} at {}: {}", s.rule, s.position, s.result));
            }
        }
        return Ok(Report::ok(text, json!({"input": w.to_string(), "normal_form": nf.to_string(), "steps": steps})));
    }
    with_monoid!(any, m => {
        let nf = m.parse_elem(word)?;
        Ok(Report::ok(nf.to_string(), json!({"input": word, "normal_form": nf.to_string(), "steps": []})))
    })
}

fn equal(any: &AnyMonoid, left: &str, right: &str) -> anyhow::Result<Report> {
    with_monoid!(any, m => {
        let (u, v) = (m.parse_elem(left)?, m.parse_elem(right)?);
        let eq = u == v;
        Ok(Report::ok(eq.to_string(), json!({"left": u.to_string(), "right": v.to_string(), "equal": eq})))
    })
}

fn ideal(op: &IdealOp) -> anyhow::Result<Report> {
    match op {
        IdealOp::Intersect { monoid, left, right } => with_monoid!(monoid, m => {
            let c = m.intersect(&m.parse_ideal(left)?, &m.parse_ideal(right)?);
            Ok(Report::ok(c.to_string(), json!({"result": c.to_string()})))
        }),
        IdealOp::Pullback { monoid, word, ideal } => with_monoid!(monoid, m => {
            let c = m.pullback(&m.parse_elem(word)?, &m.parse_ideal(ideal)?);
            Ok(Report::ok(c.to_string(), json!({"result": c.to_string()})))
        }),
        IdealOp::Member { monoid, ideal, word } => with_monoid!(monoid, m => {
            let b = m.contains(&m.parse_ideal(ideal)?, &m.parse_elem(word)?);
            Ok(Report::ok(b.to_string(), json!({"result": b})))
        }),
        IdealOp::Subset { monoid, left, right } => with_monoid!(monoid, m => {
            let b = m.subset(&m.parse_ideal(left)?, &m.parse_ideal(right)?);
            Ok(Report::ok(b.to_string(), json!({"result": b})))
        }),
    }
}

fn foundation(any: &AnyMonoid, target: &str, family: &[String], cfg: &Config) -> anyhow::Result<Report> {
    with_monoid!(any, m => {
        let x = parse_generalized(m, target)?;
        let fam = family.iter().map(|f| parse_generalized(m, f)).collect::<anyhow::Result<Vec<_>>>()?;
        let out = if x.minus.is_empty() && fam.iter().all(|f| f.minus.is_empty()) {
            let plain: Vec<_> = fam.iter().map(|f| f.base.clone()).collect();
            search::is_foundation(m, &x.base, &plain, cfg)?
        } else {
            search::is_foundation_generalized(m, &x, &fam, cfg)?
        };
        let witness = out.witness.as_ref().map(|w| w.to_string());
        Ok(Report::ok(out.to_string(), json!({"holds": out.holds, "witness": witness})))
    })
}

fn character(op: &CharOp, cfg: &Config) -> anyhow::Result<Report> {
    match op {
        CharOp::Eval { character, ideal, monoid } => {
            let m = monoid.catalog()?;
            let chi = Character::checked(m, character.parse()?)?;
            let d = parse_generalized(m, ideal)?;
            let v = boundary::evaluate_generalized(m, &chi, &d);
            Ok(Report::ok(u8::from(v).to_string(), json!({"character": chi, "ideal": d.to_string(), "value": u8::from(v)})))
        }
        CharOp::Classify { character, monoid } => {
            let m = monoid.catalog()?;
            let chi = Character::checked(m, character.parse()?)?;
            let maximal = boundary::is_maximal(m, &chi, cfg)?;
            let class = if m.is_r() { Some(boundary::classify_boundary(m, &chi)?) } else { None };
            let text = match class {
                Some(c) => format!("{c}\nmaximal: {maximal}"),
                None => format!("class: unavailable for {}\nmaximal: {maximal}", m.name()),
            };
            Ok(Report::ok(text, json!({"character": chi, "class": class, "maximal": maximal})))
        }
    }
}

fn parse_instance(m: &bq_core::CatalogMonoid, text: &str) -> anyhow::Result<Instance> {
    let raw: InstanceJson = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("bad instance JSON: {e}")))?;
    Ok(Instance {
        target: m.parse_ideal(&raw.target)?,
        known: raw.known.iter().map(|k| m.parse_ideal(k)).collect::<bq_core::Result<_>>()?,
        hs: raw.hs.iter().map(|h| h.parse::<Hull>()).collect::<bq_core::Result<_>>()?,
    })
}

fn witness_json(res: &regularity::WitnessResult) -> Value {
    match res {
        regularity::WitnessResult::Witness(ys) => json!({
            "verdict": "witness",
            "witness": ys.iter().map(|(y, k)| json!({"ideal": y.to_string(), "h": k})).collect::<Vec<_>>(),
        }),
        regularity::WitnessResult::ProvedImpossible(why) => json!({"verdict": "proved-impossible", "reason": why}),
        regularity::WitnessResult::UnknownAtBound(b) => json!({"verdict": "unknown-at-bound", "bound": b}),
    }
}

fn instance_json(inst: &Instance) -> Value {
    json!({
        "target": inst.target.to_string(),
        "known": inst.known.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        "hs": inst.hs.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
    })
}

fn reg(op: &RegOp, cfg: &Config, timing: bool) -> anyhow::Result<Report> {
    match op {
        RegOp::Check { kind, monoid, instance, bound } => {
            let m = monoid.catalog()?;
            let inst = parse_instance(m, instance)?;
            let start = Instant::now();
            let res = regularity::check(m, *kind, &inst, bound.unwrap_or(cfg.prefix_bound), cfg)?;
            let millis = if timing { start.elapsed().as_millis() } else { 0 };
            let mut j = witness_json(&res);
            j["kind"] = json!(kind.name());
            j["instance"] = instance_json(&inst);
            j["millis"] = json!(millis);
            Ok(Report::ok(format!("{kind}: {res}"), j))
        }
        RegOp::Criterion { monoid, pool } => {
            let m = monoid.catalog()?;
            let insts = match pool.as_str() {
                "standard" => regularity::standard_pool(m, cfg),
                "pair" => regularity::pair_pool(m, cfg),
                other => bail!(Error::Invalid(format!("unknown pool `{other}`; expected standard or pair"))),
            };
            let start = Instant::now();
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            let mut all = true;
            for inst in &insts {
                let res = regularity::check(m, RegularityKind::StrongBoundary, inst, cfg.prefix_bound, cfg)?;
                all &= res.is_witness();
                lines.push(format!("{inst}: {res}"));
                let mut row = witness_json(&res);
                row["instance"] = instance_json(inst);
                rows.push(row);
            }
            let millis = if timing { start.elapsed().as_millis() } else { 0 };
            lines.push(format!("all witness: {all}"));
            Ok(Report::ok(lines.join("\n"), json!({"monoid": m.name(), "all_witness": all, "results": rows, "millis": millis})))
        }
    }
}

fn mean_cmd(op: &MeanOp) -> anyhow::Result<Report> {
    let r = bq_core::monoid_r();
    match op {
        MeanOp::Dev { character, elt, n } => {
            let g = GroupoidElement::new(&r, elt.parse()?, character.parse()?)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for &k in n {
                let d = mean::mean_deviation(&r, &g, k)?;
                lines.push(format!("n = {k}: {}", ratio(d)));
                rows.push(json!({"n": k, "deviation": ratio(d)}));
            }
            Ok(Report::ok(lines.join("\n"), json!({"element": g.to_string(), "deviations": rows})))
        }
        MeanOp::Dist { character, n } => {
            let mu = mean::mean(&r, &character.parse()?, *n)?;
            let rows: Vec<Value> =
                mu.support.iter().zip(&mu.weights).map(|(g, w)| json!({"germ": g.to_string(), "weight": ratio(*w)})).collect();
            let lines: Vec<String> = mu.support.iter().zip(&mu.weights).map(|(g, w)| format!("{}  {g}", ratio(*w))).collect();
            Ok(Report::ok(lines.join("\n"), json!({"character": character, "n": n, "atoms": rows})))
        }
    }
}

fn verify_cmd(suite: &str, checks: &[String], list: bool, cfg: &Config, timing: bool) -> anyhow::Result<Report> {
    if list {
        let names = verify::check_names();
        return Ok(Report::ok(names.join("\n"), json!(names)));
    }
    let suite: Suite = suite.parse()?;
    let mut report = verify::run(suite, checks, cfg)?;
    if !timing {
        report.checks.iter_mut().for_each(|c| c.millis = 0);
    }
    let passed = report.all_passed();
    let mut text = report.to_string();
    text.push_str(if passed { "all checks passed" } else { "some checks failed" });
    let json = json!({"suite": report.suite, "passed": passed, "checks": report.checks});
    Ok(Report { text, json, failed: !passed })
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let cfg = load_config(&cli.global)?;
    let timing = !cli.global.no_timing;
    match &cli.command {
        Command::Normalize { monoid, word, steps } => normalize(monoid, word, *steps),
        Command::Eq { monoid, left, right } => equal(monoid, left, right),
        Command::Ideal { op } => ideal(op),
        Command::Foundation { monoid, target, family } => foundation(monoid, target, family, &cfg),
        Command::Char { op } => character(op, &cfg),
        Command::Reg { op } => reg(op, &cfg, timing),
        Command::Mean { op } => mean_cmd(op),
        Command::Verify { suite, checks, list } => verify_cmd(suite, checks, *list, &cfg, timing),
    }
}

/// Exhausted budgets and undecided comparisons exit with 1; malformed or
/// unsupported input exits with 2.
fn exit_status(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Budget(_) | Error::Undecided(_) | Error::NotConfluent { .. }) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"));
            } else {
                println!("{}", report.text);
            }
            ExitCode::from(u8::from(report.failed))
        }
        Err(err) => {
            if cli.global.json {
                println!("{}", json!({"error": format!("{err:#}")}));
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(exit_status(&err))
        }
    }
}
