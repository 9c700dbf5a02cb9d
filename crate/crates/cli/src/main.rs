mod lattices;
mod snowexpr;

use std::collections::HashMap;
use std::fs;
use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cvxlat::conv::{
    describe_ground, line_meet_campaign, PointedPolytopeLattice, PolytopeLattice, RelConvLattice, RelSet,
};
use cvxlat::finite::{
    find_mk, lemma24_campaign, nmsd_failure, njsd_failure, partition_lattice, verify_isomorphism, ClosureSystem,
    FiniteLattice,
};
use cvxlat::gallery;
use cvxlat::geom::io::{polytope_from_json, polytope_to_json};
use cvxlat::geom::sample::SamplerConfig;
use cvxlat::star::{
    ascending_chain_experiment, circuits, octagon_exploration, snow_descending_chain,
    snow_enumerate, snow_generate, snowflake_mismatches, CircuitReport, StarConfig,
};
use cvxlat::star::ext::{format_vector, parse_vector};
use cvxlat::term::{check, falsify, CheckReport, FalsifyReport, Identity, LatticeHandle, Verdict};

use lattices::{parse_selector, polytope_assignment, read_json, relset_assignment, resolve_identity, Selected};

#[derive(Parser)]
#[command(name = "cvxlat", version, about = "Exact experiments on lattices of convex sets")]
struct Cli {
    /// Seed for every randomized command.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Exit 1 unless the observed verdict is this one.
    #[arg(long, global = true)]
    expect: Option<Expect>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Holds,
    Fails,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an identity at one assignment.
    Check(CheckArgs),
    /// Search seeded random assignments for a failure.
    Falsify(FalsifyArgs),
    /// Run gallery constructions (`all` for the whole suite).
    Gallery {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        filter: Option<String>,
    },
    #[command(subcommand)]
    Snowflake(SnowCmd),
    #[command(subcommand)]
    Star(StarCmd),
    #[command(subcommand)]
    Relconv(RelconvCmd),
    #[command(subcommand)]
    Abstract(AbstractCmd),
    /// Polar dual of a polytope file.
    Dual { file: String },
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    lattice: String,
    /// Builtin name (D:2, Dop:2, radon:1, wrapped-D:2, ...), identity text or file.
    #[arg(long)]
    identity: Option<String>,
    #[arg(long, conflicts_with = "gallery")]
    assignment: Option<String>,
    /// Take the assignment from a gallery family.
    #[arg(long)]
    gallery: Option<String>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct FalsifyArgs {
    #[arg(long)]
    lattice: String,
    #[arg(long)]
    identity: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 3)]
    points_per_set: usize,
    #[arg(long, default_value_t = 3)]
    denominator_bound: i64,
    #[arg(long, default_value_t = 2)]
    coordinate_range: i64,
    #[arg(long)]
    include_origin: bool,
}

#[derive(Subcommand)]
enum SnowCmd {
    /// Evaluate an expression such as "[1,inf,inf] | S2 & S3".
    Op { expr: String },
    /// Sublattice generated by the three pieces, components up to a bound.
    Generate {
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
    /// Strictly descending chain starting at S1.
    Chain {
        #[arg(long, default_value_t = 10)]
        len: usize,
    },
    /// Compare the arithmetic model with hexagon star sets on every element
    /// with components in 1..=max and inf.
    Compare {
        #[arg(long, default_value_t = 5)]
        max: i64,
    },
}

#[derive(Subcommand)]
enum StarCmd {
    Circuits { config: String },
    /// Relatively convex closure of a vector of inverse lengths.
    Closure {
        config: String,
        #[arg(long)]
        element: String,
    },
    Meet { config: String, a: String, b: String },
    Join { config: String, a: String, b: String },
    /// The ascending chain on rays (0,3), (1,2), (2,1), (3,0).
    Chain {
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Breadth-first exploration from the four diameters of an octagon.
    Octagon {
        #[arg(long, default_value_t = 200)]
        max: usize,
    },
}

#[derive(Subcommand)]
enum RelconvCmd {
    Enumerate {
        ground: String,
        #[arg(long)]
        base: Option<usize>,
    },
    Closure {
        ground: String,
        #[arg(long, value_delimiter = ',')]
        indices: Vec<usize>,
    },
    /// Hull meets against set meets on random ground sets in Q^1.
    LineMeet {
        #[arg(long, default_value_t = 500)]
        trials: u64,
    },
}

#[derive(Subcommand)]
enum AbstractCmd {
    /// Partition lattice of a set and its difference-subspace model.
    Equiv {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        verify_iso: bool,
    },
    /// Search for M_k.
    Mk {
        #[command(flatten)]
        src: LatticeSource,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// n-join and n-meet semidistributivity.
    Sd {
        #[command(flatten)]
        src: LatticeSource,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// D_n against the n-Caratheodory property for a closure system file.
    Lemma24 {
        file: String,
        #[arg(long)]
        n: usize,
    },
    /// The same comparison on random closure systems.
    Lemma24Campaign {
        #[arg(long, default_value_t = 200)]
        systems: usize,
    },
}

#[derive(Args)]
struct LatticeSource {
    /// Lattice file with explicit order pairs.
    #[arg(long, conflicts_with = "builtin")]
    file: Option<String>,
    /// chain<k>, boolean<k>, m<k> or equiv<k>.
    #[arg(long)]
    builtin: Option<String>,
}

enum Outcome {
    Match,
    Mismatch,
}

fn matches(expect: Option<Expect>, failed: bool) -> Outcome {
    match (expect, failed) {
        (None, _) | (Some(Expect::Fails), true) | (Some(Expect::Holds), false) => Outcome::Match,
        _ => Outcome::Mismatch,
    }
}

fn by_flag(ok: bool) -> Outcome {
    if ok {
        Outcome::Match
    } else {
        Outcome::Mismatch
    }
}

fn emit(v: &Value, out: Option<&str>) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    if let Err(e) = writeln!(std::io::stdout().lock(), "{text}") {
        if e.kind() != ErrorKind::BrokenPipe {
            return Err(e.into());
        }
    }
    if let Some(path) = out {
        fs::write(path, format!("{text}\n")).with_context(|| format!("cannot write {path}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Match) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let out = cli.out.as_deref();
    let (report, outcome) = match &cli.command {
        Command::Check(a) => cmd_check(a, cli.expect)?,
        Command::Falsify(a) => {
            let seed = cli.seed.ok_or_else(|| anyhow!("falsify needs --seed"))?;
            cmd_falsify(a, seed, cli.expect)?
        }
        Command::Gallery { name, n, filter } => cmd_gallery(name, *n, filter.as_deref())?,
        Command::Snowflake(c) => cmd_snowflake(c)?,
        Command::Star(c) => cmd_star(c)?,
        Command::Relconv(c) => cmd_relconv(c, cli.seed)?,
        Command::Abstract(c) => cmd_abstract(c, cli.seed)?,
        Command::Dual { file } => cmd_dual(file)?,
    };
    emit(&report, out)?;
    Ok(outcome)
}

fn report_json(r: &CheckReport) -> Result<Value> {
    Ok(serde_json::to_value(r)?)
}

fn check_in<L: LatticeHandle>(l: &L, id: &Identity, env: &HashMap<String, L::Elem>) -> Result<CheckReport> {
    Ok(check(id, l, env)?)
}

fn cmd_check(a: &CheckArgs, expect: Option<Expect>) -> Result<(Value, Outcome)> {
    let selected = parse_selector(&a.lattice)?;
    if let Some(family) = &a.gallery {
        let n = match (a.n, &selected) {
            (Some(n), _) => Some(n),
            (None, Selected::Conv(d) | Selected::Pointed(d)) => Some(*d),
            (None, Selected::RelConv(_)) => None,
        };
        let entry = gallery::entry(family, n).or_else(|_| gallery::entry(family, None))?;
        let mut case = entry.case.clone();
        if let Some(src) = &a.identity {
            case = case.with_identity(resolve_identity(src)?);
        }
        let selector = case.selector();
        let same = match (&selected, &case.instance) {
            (Selected::RelConv(_), gallery::Instance::RelConv { .. }) => true,
            _ => selector == a.lattice,
        };
        if !same {
            bail!("gallery entry {} lives in {selector}, not {}", entry.name(), a.lattice);
        }
        let o = case.run()?;
        let mut v = report_json(&o.report)?;
        v["gallery"] = json!(entry.name());
        v["witness_rechecked"] = json!(o.witness_rechecked);
        let failed = o.report.verdict == Verdict::Fails;
        return Ok((v, matches(expect, failed)));
    }
    let src = a.identity.as_deref().ok_or_else(|| anyhow!("check needs --identity"))?;
    let id = resolve_identity(src)?;
    let file = a
        .assignment
        .as_deref()
        .ok_or_else(|| anyhow!("check needs --assignment or --gallery"))?;
    let v = read_json(file)?;
    if let Some(sel) = v.get("lattice").and_then(Value::as_str) {
        if sel != a.lattice {
            bail!("{file} is for lattice {sel}, not {}", a.lattice);
        }
    }
    let report = match &selected {
        Selected::Conv(d) => check_in(&PolytopeLattice { dim: *d }, &id, &polytope_assignment(&v, *d)?)?,
        Selected::Pointed(d) => check_in(&PointedPolytopeLattice { dim: *d }, &id, &polytope_assignment(&v, *d)?)?,
        Selected::RelConv(l) => check_in(l, &id, &relset_assignment(&v, l)?)?,
    };
    let failed = report.verdict == Verdict::Fails;
    Ok((report_json(&report)?, matches(expect, failed)))
}

fn cmd_falsify(a: &FalsifyArgs, seed: u64, expect: Option<Expect>) -> Result<(Value, Outcome)> {
    let id = resolve_identity(&a.identity)?;
    let sampler = |dim: usize, origin: bool| -> Result<SamplerConfig> {
        let cfg = SamplerConfig {
            dim,
            points_per_set: a.points_per_set,
            denominator_bound: a.denominator_bound,
            coordinate_range: a.coordinate_range,
            include_origin: origin,
        };
        cfg.validate()?;
        Ok(cfg)
    };
    let report: FalsifyReport = match parse_selector(&a.lattice)? {
        Selected::Conv(d) => {
            let cfg = sampler(d, a.include_origin)?;
            falsify(&id, &PolytopeLattice { dim: d }, |r| cfg.polytope(r), a.trials, seed)?
        }
        Selected::Pointed(d) => {
            let cfg = sampler(d, true)?;
            falsify(&id, &PointedPolytopeLattice { dim: d }, |r| cfg.polytope(r), a.trials, seed)?
        }
        Selected::RelConv(l) => falsify(&id, &l, |r| l.sample(r), a.trials, seed)?,
    };
    let failed = report.failure.is_some();
    let outcome = match matches(expect, failed) {
        Outcome::Match if report.automatic_violations == 0 => Outcome::Match,
        _ => Outcome::Mismatch,
    };
    Ok((serde_json::to_value(&report)?, outcome))
}

fn cmd_gallery(name: &str, n: Option<usize>, filter: Option<&str>) -> Result<(Value, Outcome)> {
    if name == "all" {
        let suite = gallery::run_all(filter);
        let ok = suite.pass;
        return Ok((serde_json::to_value(&suite)?, by_flag(ok)));
    }
    let entry = match n {
        Some(_) => gallery::entry(name, n)?,
        None => gallery::entry_by_name(name)?,
    };
    let r = gallery::run_entry(&entry);
    let ok = r.pass;
    Ok((serde_json::to_value(&r)?, by_flag(ok)))
}

fn cmd_snowflake(c: &SnowCmd) -> Result<(Value, Outcome)> {
    Ok(match c {
        SnowCmd::Op { expr } => {
            let r = snowexpr::evaluate(expr)?;
            (json!({"expression": expr, "result": r.to_string()}), Outcome::Match)
        }
        SnowCmd::Generate { bound } => {
            if *bound < 1 {
                bail!("--bound must be at least 1");
            }
            let g = snow_generate(*bound);
            let ok = g.all_integers && g.covers_every_integer_up_to_bound;
            (serde_json::to_value(&g)?, by_flag(ok))
        }
        SnowCmd::Chain { len } => {
            let chain = snow_descending_chain(*len);
            let strict = chain.windows(2).all(|w| w[1].leq(&w[0]) && w[0] != w[1]);
            let items: Vec<String> = chain.iter().map(ToString::to_string).collect();
            (json!({"chain": items, "strictly_descending": strict}), by_flag(strict))
        }
        SnowCmd::Compare { max } => {
            let elements = snow_enumerate(*max);
            let bad = snowflake_mismatches(&elements);
            let v = json!({
                "max": max,
                "elements": elements.len(),
                "mismatches": bad.iter().map(|(a, b, op)| json!({"a": a, "b": b, "op": op})).collect::<Vec<_>>(),
            });
            (v, by_flag(bad.is_empty()))
        }
    })
}

fn load_star(path: &str) -> Result<StarConfig> {
    let v = read_json(path)?;
    let (_, rays) = cvxlat::geom::io::rays_from_json(&v).map_err(|e| anyhow!("{path}: {e}"))?;
    Ok(StarConfig::new(rays)?)
}

fn star_vector(cfg: &StarConfig, text: &str) -> Result<Vec<cvxlat::star::ExtRational>> {
    let a = parse_vector(text).map_err(|e| anyhow!("element {text:?}: {e}"))?;
    cfg.check_vector(&a)?;
    Ok(a)
}

fn cmd_star(c: &StarCmd) -> Result<(Value, Outcome)> {
    Ok(match c {
        StarCmd::Circuits { config } => {
            let cfg = load_star(config)?;
            let cs: Vec<CircuitReport> = circuits(&cfg.rays)?.iter().map(CircuitReport::from).collect();
            (json!({"rays": cfg.len(), "circuits": cs}), Outcome::Match)
        }
        StarCmd::Closure { config, element } => {
            let cfg = load_star(config)?;
            let a = star_vector(&cfg, element)?;
            let closed = cfg.closure(&a)?;
            let geometric = cfg.geometric_closure(&a);
            let agree = geometric == closed;
            let v = json!({
                "input": format_vector(&a),
                "closure": format_vector(&closed),
                "input_convex": cfg.is_convex(&a),
                "hull_check": agree,
            });
            (v, by_flag(agree))
        }
        StarCmd::Meet { config, a, b } | StarCmd::Join { config, a, b } => {
            let cfg = load_star(config)?;
            let (u, w) = (star_vector(&cfg, a)?, star_vector(&cfg, b)?);
            for (name, e) in [("a", &u), ("b", &w)] {
                if !cfg.is_convex(e) {
                    bail!("{name} = {} is not relatively convex", format_vector(e));
                }
            }
            let (op, r) = match c {
                StarCmd::Meet { .. } => ("meet", cfg.meet(&u, &w)),
                _ => ("join", cfg.join(&u, &w)?),
            };
            (json!({"op": op, "a": format_vector(&u), "b": format_vector(&w), "result": format_vector(&r)}), Outcome::Match)
        }
        StarCmd::Chain { steps } => {
            let r = ascending_chain_experiment(*steps)?;
            let ok = r.passed(*steps);
            (serde_json::to_value(&r)?, by_flag(ok))
        }
        StarCmd::Octagon { max } => (serde_json::to_value(octagon_exploration(*max))?, Outcome::Match),
    })
}

fn ground_lattice(path: &str, base: Option<usize>) -> Result<RelConvLattice> {
    let v = read_json(path)?;
    let (dim, pts) = cvxlat::geom::io::ground_set_from_json(&v).map_err(|e| anyhow!("{path}: {e}"))?;
    Ok(match base {
        Some(b) => RelConvLattice::pointed(dim, pts, b)?,
        None => RelConvLattice::new(dim, pts)?,
    })
}

fn cmd_relconv(c: &RelconvCmd, seed: Option<u64>) -> Result<(Value, Outcome)> {
    Ok(match c {
        RelconvCmd::Enumerate { ground, base } => {
            let l = ground_lattice(ground, *base)?;
            let sets = l.enumerate_closed_sets()?;
            let v = json!({
                "ground": describe_ground(&l),
                "count": sets.len(),
                "closed_sets": sets.iter().map(|s| s.indices()).collect::<Vec<_>>(),
            });
            (v, Outcome::Match)
        }
        RelconvCmd::Closure { ground, indices } => {
            let l = ground_lattice(ground, None)?;
            if let Some(&bad) = indices.iter().find(|&&i| i >= l.ground().len()) {
                bail!("index {bad} is outside the ground set");
            }
            let s = RelSet::from_indices(indices);
            let c = l.closure(s);
            (json!({"subset": l.describe(&s), "closure": l.describe(&c)}), Outcome::Match)
        }
        RelconvCmd::LineMeet { trials } => {
            let seed = seed.ok_or_else(|| anyhow!("line-meet needs --seed"))?;
            let r = line_meet_campaign(*trials, seed);
            let ok = r.failures == 0;
            (serde_json::to_value(&r)?, by_flag(ok))
        }
    })
}

fn builtin_lattice(name: &str) -> Result<FiniteLattice> {
    let split = name.find(|c: char| c.is_ascii_digit()).ok_or_else(|| anyhow!("builtin {name:?} needs a size"))?;
    let (kind, k) = name.split_at(split);
    let k: usize = k.parse().with_context(|| format!("builtin {name:?}"))?;
    Ok(match kind {
        "chain" if k >= 1 => FiniteLattice::chain(k),
        "boolean" if k <= 5 => FiniteLattice::boolean(k),
        "m" if k >= 1 => FiniteLattice::m_k(k),
        "equiv" => partition_lattice(k)?.0,
        _ => bail!("unknown builtin lattice {name:?}"),
    })
}

fn load_lattice(src: &LatticeSource) -> Result<FiniteLattice> {
    match (&src.file, &src.builtin) {
        (Some(f), _) => Ok(FiniteLattice::from_json(&read_json(f)?).map_err(|e| anyhow!("{f}: {e}"))?),
        (None, Some(b)) => builtin_lattice(b),
        (None, None) => bail!("give --file or --builtin"),
    }
}

fn labels(l: &FiniteLattice, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| l.label(i).to_string()).collect()
}

fn cmd_abstract(c: &AbstractCmd, seed: Option<u64>) -> Result<(Value, Outcome)> {
    Ok(match c {
        AbstractCmd::Equiv { size, verify_iso } => {
            let (l, parts) = partition_lattice(*size)?;
            let mut v = json!({
                "size": size,
                "elements": l.len(),
                "partitions": parts.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            let mut ok = true;
            if *verify_iso {
                let r = verify_isomorphism(*size)?;
                ok = r.isomorphic;
                v["isomorphic"] = json!(r.isomorphic);
                v["isomorphism"] = serde_json::to_value(&r)?;
            }
            (v, by_flag(ok))
        }
        AbstractCmd::Mk { src, k } => {
            let l = load_lattice(src)?;
            if *k < 3 {
                bail!("--k must be at least 3");
            }
            let found = find_mk(&l, *k)?;
            let v = json!({
                "elements": l.len(),
                "k": k,
                "found": found.is_some(),
                "embedding": found.map(|e| json!({
                    "bottom": l.label(e.bottom),
                    "top": l.label(e.top),
                    "atoms": labels(&l, &e.atoms),
                })),
            });
            (v, Outcome::Match)
        }
        AbstractCmd::Sd { src, n } => {
            let l = load_lattice(src)?;
            let j = njsd_failure(&l, *n)?;
            let m = nmsd_failure(&l, *n)?;
            let v = json!({
                "elements": l.len(),
                "n": n,
                "join_semidistributive": j.is_none(),
                "join_witness": j.map(|w| labels(&l, &w)),
                "meet_semidistributive": m.is_none(),
                "meet_witness": m.map(|w| labels(&l, &w)),
            });
            (v, Outcome::Match)
        }
        AbstractCmd::Lemma24 { file, n } => {
            let sys = ClosureSystem::from_json(&read_json(file)?).map_err(|e| anyhow!("{file}: {e}"))?;
            let r = sys.check_lemma24(*n)?;
            let ok = r.verdict != Verdict::Fails;
            (serde_json::to_value(&r)?, by_flag(ok))
        }
        AbstractCmd::Lemma24Campaign { systems } => {
            let seed = seed.ok_or_else(|| anyhow!("lemma24-campaign needs --seed"))?;
            let r = lemma24_campaign(*systems, &[1, 2, 3], seed)?;
            let ok = r.discrepancies.is_empty();
            (serde_json::to_value(&r)?, by_flag(ok))
        }
    })
}

fn cmd_dual(file: &str) -> Result<(Value, Outcome)> {
    let p = polytope_from_json(&read_json(file)?, "").map_err(|e| anyhow!("{file}: {e}"))?;
    let d = p.polar_dual()?;
    Ok((json!({"input": polytope_to_json(&p), "dual": polytope_to_json(&d)}), Outcome::Match))
}
