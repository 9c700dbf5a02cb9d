//! End-to-end acceptance suite. Prints one line per criterion and exits
//! nonzero if any criterion fails.

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::process::Command;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use cvxlat::conv::{jsd_premise_sampler, line_meet_campaign, PointedPolytopeLattice, PolytopeLattice};
use cvxlat::finite::{lemma24_campaign, verify_isomorphism, ClosureSystem};
use cvxlat::gallery::run_all;
use cvxlat::geom::sample::{trial_rng, SamplerConfig};
use cvxlat::geom::{
    caratheodory_witness, cone_meets, helly_verify, radon_partition, ratio, visibility_cone, Polytope, RationalPoint,
};
use cvxlat::star::ext::parse_vector;
use cvxlat::star::{
    ascending_chain_experiment, chain_config, hexagon_vector, snow_descending_chain, snow_enumerate, snow_generate,
    snow_join, snow_meet, snowflake_mismatches, Snowflake, StarConfig,
};
use cvxlat::term::ast::{join, meet, var};
use cvxlat::term::{
    builtin_identity, check_jsd, falsify, parse_term, print_term, LatticeHandle, LatticeTerm, Verdict,
};
use oracles::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Runs `identity` on `trials` seeded assignments and requires no failure and
/// no automatic-containment violation.
fn no_failures<L: LatticeHandle<Elem = Polytope>>(
    lattice: &L,
    cfg: &SamplerConfig,
    identity: &str,
    trials: u64,
    seed: u64,
) -> Result<(), String> {
    let id = builtin_identity(identity).map_err(|e| e.to_string())?;
    let r = falsify(&id, lattice, |rng| cfg.polytope(rng), trials, seed).map_err(|e| e.to_string())?;
    ensure(
        r.failure.is_none() && r.automatic_violations == 0 && r.trials == trials,
        format!("{identity} on {}: failure at trial {:?}", lattice.selector(), r.failure.and_then(|f| f.trial)),
    )
}

fn criterion_1() -> Outcome {
    let mut runs = 0;
    for n in 1..=3 {
        no_failures(&PolytopeLattice { dim: n }, &SamplerConfig::new(n), &format!("D:{}", n + 1), 500, 101)?;
        runs += 1;
    }
    for n in 2..=3 {
        no_failures(&PointedPolytopeLattice { dim: n }, &SamplerConfig::pointed(n), &format!("D:{n}"), 500, 102)?;
        runs += 1;
    }
    for id in ["wrapped-D:2", "wrapped-D-pairs:2", "wrapped-D-cojoins:2"] {
        no_failures(&PolytopeLattice { dim: 2 }, &SamplerConfig::new(2), id, 200, 103)?;
        runs += 1;
    }
    Ok(format!("{runs} identity/lattice runs, zero violations"))
}

fn criterion_2() -> Outcome {
    let s = run_all(None);
    let bad: Vec<&str> = s.entries.iter().filter(|e| !e.pass).map(|e| e.entry.as_str()).collect();
    ensure(s.entries.len() == 15, format!("{} entries", s.entries.len()))?;
    ensure(bad.is_empty(), format!("failing entries: {bad:?}"))?;
    ensure(
        s.entries.iter().all(|e| e.observed == Verdict::Fails && e.witness_rechecked == Some(true)),
        "an entry lacks a re-checked witness",
    )?;
    Ok(format!("{} entries fail with re-checked witnesses", s.entries.len()))
}

fn criterion_3() -> Outcome {
    for n in 1..=2 {
        no_failures(&PolytopeLattice { dim: n }, &SamplerConfig::new(n), &format!("radon:{n}"), 300, 301)?;
        let pointed = PointedPolytopeLattice { dim: n + 1 };
        let cfg = SamplerConfig::pointed(n + 1);
        no_failures(&pointed, &cfg, &format!("radon:{n}"), 300, 302)?;
        no_failures(&pointed, &cfg, &format!("radon-dual:{n}"), 300, 303)?;
    }
    Ok("radon:1, radon:2 and their duals hold on every sample".into())
}

fn criterion_4() -> Outcome {
    const N: u64 = 1000;
    let pts = |rng: &mut ChaCha8Rng, cfg: &SamplerConfig, k: usize| -> Vec<RationalPoint> {
        (0..k).map(|_| cfg.point(rng)).collect()
    };
    for t in 0..N {
        let mut rng = trial_rng(404, t);
        let d = 1 + (t % 3) as usize;
        let cfg = SamplerConfig::new(d);

        // Carathéodory, with and without anchor.
        let k = rng.gen_range(1..=6);
        let gens = pts(&mut rng, &cfg, k);
        let w: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
        let total: i64 = w.iter().sum::<i64>().max(1);
        let mut coeffs: Vec<_> = w.iter().map(|&x| ratio(x, total)).collect();
        if w.iter().all(|&x| x == 0) {
            coeffs[0] = ratio(1, 1);
        }
        let q = RationalPoint::combination(&gens, &coeffs);
        let anchor = &gens[rng.gen_range(0..k)];
        for a in [None, Some(anchor)] {
            let wit = caratheodory_witness(&gens, &q, a).map_err(|e| format!("trial {t}: {e}"))?;
            ensure(
                wit.is_valid_for(&q) && wit.points.len() <= d + 1 && a.is_none_or(|p| wit.points.contains(p)),
                format!("trial {t}: invalid Carathéodory witness"),
            )?;
        }
        let outside = cfg.point(&mut rng);
        ensure(
            caratheodory_witness(&gens, &outside, None).is_ok() == in_hull(&gens, &outside),
            format!("trial {t}: Carathéodory disagrees with the oracle"),
        )?;

        // Radon against the exhaustive split oracle.
        let rp = pts(&mut rng, &cfg, d + 2);
        let r = radon_partition(&rp, d).map_err(|e| e.to_string())?;
        let part = |idx: &[usize]| idx.iter().map(|&i| rp[i].clone()).collect::<Vec<_>>();
        ensure(
            in_hull(&part(&r.i1), &r.common_point) && in_hull(&part(&r.i2), &r.common_point),
            format!("trial {t}: Radon point not in both parts"),
        )?;
        let c = affine_dependence(&rp);
        if c.iter().any(|x| *x != ratio(0, 1)) {
            let (mut a, mut b) = (r.i1.clone(), r.i2.clone());
            if !a.contains(&0) {
                std::mem::swap(&mut a, &mut b);
            }
            ensure(radon_splits(&c).contains(&(a, b)), format!("trial {t}: Radon split not in oracle list"))?;
        }

        // Helly.
        let fam: Vec<Polytope> = (0..rng.gen_range(1..=5)).map(|_| cfg.polytope(&mut rng)).collect();
        ensure(helly_verify(&fam, d).map_err(|e| e.to_string())?, format!("trial {t}: Helly refuted"))?;

        // Visibility cone and membership.
        let (xs, ys) = (pts(&mut rng, &cfg, 3), pts(&mut rng, &cfg, 3));
        let p = cfg.point(&mut rng);
        let x = Polytope::hull(&xs, d).unwrap();
        let cone = visibility_cone(&x, &p).unwrap();
        let both: Vec<RationalPoint> = xs.iter().chain(&ys).cloned().collect();
        let y = Polytope::hull(&ys, d).unwrap();
        ensure(
            cone_meets(&cone, &y).unwrap() == in_hull(&both, &p),
            format!("trial {t}: visibility biconditional broken"),
        )?;
        ensure(x.contains(&p).unwrap() == in_hull(&xs, &p), format!("trial {t}: membership disagrees"))?;
    }
    Ok(format!("{N} instances of each primitive agree with the oracles"))
}

fn criterion_5() -> Outcome {
    let mut vacuous = 0;
    for d in 2..=3 {
        let cfg = SamplerConfig::new(d);
        let l = PolytopeLattice { dim: d };
        for t in 0..500 {
            let (x, y1, y2) = jsd_premise_sampler(&cfg, &mut trial_rng(505 + d as u64, t));
            match check_jsd(&l, &x, &y1, &y2) {
                Verdict::Holds => {}
                Verdict::Vacuous => vacuous += 1,
                v => return Err(format!("R^{d} trial {t}: {v:?}")),
            }
        }
    }
    ensure(vacuous == 0, format!("{vacuous} trials missed the premise"))?;
    Ok("1000 constructed premises, conclusion always holds".into())
}

fn criterion_6() -> Outcome {
    let s = |t: &str| Snowflake::parse(t).unwrap();
    let (s1, s2, s3) = (Snowflake::piece(0), Snowflake::piece(1), Snowflake::piece(2));
    let a = snow_join(&s1, &s2);
    let b = snow_meet(&a, &s3);
    let c = snow_join(&b, &s2);
    ensure(a == s("[1,1,2]") && b == s("[inf,inf,2]") && c == s("[3,1,2]"), format!("got {a}, {b}, {c}"))?;
    ensure(a.to_string() == "[1,1,2]" && c.to_string() == "[3,1,2]", "formatting differs")?;
    let g = snow_generate(6);
    ensure(g.all_integers && g.covers_every_integer_up_to_bound, "generation components")?;
    let chain = snow_descending_chain(10);
    ensure(
        chain.len() == 10 && chain.windows(2).all(|w| w[1].leq(&w[0]) && w[0] != w[1]),
        "chain is not strictly descending",
    )?;
    let all = snow_enumerate(5);
    let bad = snowflake_mismatches(&all);
    ensure(bad.is_empty(), format!("{} model mismatches", bad.len()))?;
    let hex = StarConfig::hexagon();
    for u in &all {
        for v in all.iter().step_by(9) {
            let m: Vec<_> = hexagon_vector(u).into_iter().zip(hexagon_vector(v)).map(|(x, y)| x.min(y)).collect();
            ensure(
                star_closure(&hex.rays, &m) == hexagon_vector(&snow_join(u, v)),
                format!("{u} ∨ {v} differs from the hull oracle"),
            )?;
        }
    }
    Ok(format!("worked values exact; {} elements agree with the hexagon star", all.len()))
}

fn criterion_7() -> Outcome {
    let r = ascending_chain_experiment(10).map_err(|e| e.to_string())?;
    ensure(r.passed(10), format!("{} strict ascents", r.strict_ascents))?;
    let cfg = chain_config();
    for e in &r.elements {
        let a = parse_vector(e)?;
        ensure(cfg.is_convex(&a) && star_closure(&cfg.rays, &a) == a, format!("{e} is not relatively convex"))?;
    }
    Ok(format!("{} strict ascents, {} elements convex", r.strict_ascents, r.elements.len()))
}

fn criterion_8() -> Outcome {
    for (n, size) in [(3, 5), (4, 15)] {
        let r = verify_isomorphism(n).map_err(|e| e.to_string())?;
        ensure(
            r.partitions == size
                && r.subspaces == size
                && r.isomorphic
                && r.tables_match
                && r.phi_psi_identity
                && r.psi_phi_identity,
            format!("|B| = {n}: {r:?}"),
        )?;
    }
    Ok("|B| = 3 and 4: tables match, φψ and ψφ are identities".into())
}

fn criterion_9() -> Outcome {
    let c = lemma24_campaign(200, &[1, 2, 3], 909).map_err(|e| e.to_string())?;
    ensure(c.systems == 200 && c.checks == 600, format!("{} systems", c.systems))?;
    ensure(c.discrepancies.is_empty(), format!("{} discrepancies", c.discrepancies.len()))?;
    let pos = ClosureSystem::collinear(4).check_lemma24(2).map_err(|e| e.to_string())?;
    let names = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let neg = ClosureSystem::new(names, vec![(vec![0, 1, 2], 3)])
        .and_then(|c| c.check_lemma24(2))
        .map_err(|e| e.to_string())?;
    ensure(
        pos.dn_holds == Some(true) && pos.caratheodory_holds == Some(true),
        "positive instance",
    )?;
    ensure(
        neg.dn_holds == Some(false) && neg.caratheodory_holds == Some(false),
        "negative instance",
    )?;
    Ok(format!("{} checks ({} both hold, {} both fail), handcrafted pair agrees", c.checks, c.both_true, c.both_false))
}

fn criterion_10() -> Outcome {
    let c = line_meet_campaign(500, 1010);
    ensure(c.failures == 0, format!("{} failures", c.failures))?;
    Ok("500 line configurations, hulls meet like the sets".into())
}

fn criterion_11() -> Outcome {
    for d in 2..=3usize {
        let cube: Vec<RationalPoint> = (0..1usize << d)
            .map(|m| RationalPoint::new((0..d).map(|i| ratio(if m >> i & 1 == 1 { 1 } else { -1 }, 1)).collect()))
            .collect();
        let cross: Vec<RationalPoint> = (0..d)
            .flat_map(|i| {
                let e = RationalPoint::unit(d, i);
                [e.scale(&ratio(-1, 1)), e]
            })
            .collect();
        let (pc, px) = (Polytope::hull(&cube, d).unwrap(), Polytope::hull(&cross, d).unwrap());
        ensure(
            pc.polar_dual().unwrap() == px && px.polar_dual().unwrap() == pc,
            format!("cube/cross-polytope duality fails in dimension {d}"),
        )?;
    }
    for t in 0..200u64 {
        let d = 2 + (t % 2) as usize;
        let mut rng = trial_rng(1111, t);
        let cfg = SamplerConfig::new(d);
        let mut gens: Vec<RationalPoint> = (0..rng.gen_range(1..=4)).map(|_| cfg.point(&mut rng)).collect();
        let s = rng.gen_range(1..=3);
        for i in 0..d {
            let e = RationalPoint::unit(d, i);
            gens.push(e.scale(&ratio(1, s)));
            gens.push(e.scale(&ratio(-1, s)));
        }
        let p = Polytope::hull(&gens, d).unwrap();
        let pp = p.polar_dual().and_then(|q| q.polar_dual()).map_err(|e| e.to_string())?;
        ensure(pp == p, format!("trial {t}: P** differs from P"))?;
    }
    Ok("cube and cross-polytope in dims 2, 3; P** = P on 200 samples".into())
}

fn random_term(rng: &mut ChaCha8Rng, depth: usize) -> LatticeTerm {
    const NAMES: [&str; 5] = ["x", "y1", "y2", "z", "w_2"];
    if depth == 0 || rng.gen_bool(0.3) {
        return var(NAMES[rng.gen_range(0..NAMES.len())]);
    }
    let (a, b) = (random_term(rng, depth - 1), random_term(rng, depth - 1));
    if rng.gen_bool(0.5) {
        meet(a, b)
    } else {
        join(a, b)
    }
}

fn strip_elapsed(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_elapsed);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_elapsed),
        _ => {}
    }
}

fn run_cli(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cvxlat")).args(args).output().map_err(|e| e.to_string())?;
    let mut v: Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("{args:?}: {e}"))?;
    strip_elapsed(&mut v);
    Ok(v)
}

fn criterion_12() -> Outcome {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/d3_triangle.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["--seed", "7", "falsify", "--lattice", "conv:2", "--identity", "D:2", "--trials", "200"],
        vec!["--seed", "7", "falsify", "--lattice", "pointed:2", "--identity", "radon:1", "--trials", "100"],
        vec!["check", "--lattice", "conv:2", "--identity", "D:2", "--gallery", "dn_fail_conv"],
        vec!["check", "--lattice", "conv:2", "--identity", "D:3", "--assignment", data],
    ];
    for args in &commands {
        let (a, b) = (run_cli(args)?, run_cli(args)?);
        let (sa, sb) = (serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        ensure(sa == sb, format!("{args:?}: reports differ"))?;
    }
    let mut rng = trial_rng(1212, 0);
    for i in 0..100 {
        let t = random_term(&mut rng, 5);
        let text = print_term(&t);
        ensure(parse_term(&text).as_ref() == Ok(&t), format!("term {i}: {text:?} does not round-trip"))?;
    }
    Ok(format!("{} commands repeat byte-identically; 100 terms round-trip", commands.len()))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 12] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    let mut failed = Vec::new();
    for (n, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {n}: PASS - {msg} ({secs:.1}s)"),
            Err(msg) => {
                println!("criterion {n}: FAIL - {msg} ({secs:.1}s)");
                failed.push(n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all 12 criteria pass");
}
