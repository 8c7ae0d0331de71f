use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use greenseq_core::cluster::{enumerate_clusters, f_polynomial, g_vector, verify_separation};
use greenseq_core::exchange::{
    explore_with, maximal_green_sequences, sources_and_sinks, verify_exchange_axioms, ExploreLimits, ExploreOptions,
    GreenSearchLimits, Witness,
};
use greenseq_core::formats::{
    graph_to_dot, graph_to_json, green_report_to_json, matrix_to_json, parse_json, parse_quiver, potential_from_json,
    quiver_to_dot, quiver_to_json, seed_to_json, to_canonical_string, ginzburg_to_json,
};
use greenseq_core::potential::{ginzburg, jacobian_presentation, PathExpr, PathQuiver};
use greenseq_core::tropical::{check_sign_coherence, trajectory, tropical_dual, TrajectoryStep};
use greenseq_core::{ExtMatrix, IntMatrix, Seed, VertexColor};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::{CliError, Command, ExploreArgs, GreenArgs};

/// Separation is checked symbolically only up to this rank...
const SEPARATION_MAX_RANK: usize = 6;
/// ...and until a variable grows past this many terms.
const SEPARATION_MAX_TERMS: usize = 2_000;

/// Runs one subcommand, returning its output and the number of failed checks.
pub fn dispatch(command: Command, json: bool) -> Result<(String, usize), CliError> {
    match command {
        Command::Mutate { input, k, dot } => mutate(&read_quiver(&input)?, &k, json, dot).map(ok),
        Command::Explore {
            input,
            limits,
            dot,
            labelled,
        } => explore(&read_quiver(&input)?, &limits, json, dot, labelled).map(ok),
        Command::GreenSeqs { input, limits } => green_seqs(&read_quiver(&input)?, &limits, json).map(ok),
        Command::Clusters { input, max_seeds } => clusters(&read_quiver(&input)?, max_seeds, json).map(ok),
        Command::Cmat { input, seq } => matrices(&read_quiver(&input)?, &seq, Kind::C, json).map(ok),
        Command::Gmat { input, seq } => matrices(&read_quiver(&input)?, &seq, Kind::G, json).map(ok),
        Command::Ginzburg { input } => {
            let (q, w) = read_potential(&input)?;
            ginzburg_cmd(&q, &w, json).map(ok)
        }
        Command::Verify {
            input,
            limits,
            trials,
            depth,
            seed,
        } => verify(&read_quiver(&input)?, &limits, trials, depth, seed, json),
        Command::Serve {
            port,
            host,
            data_dir,
            cors_origin,
        } => {
            let config = greenseq_service::ServiceConfig {
                data_dir,
                cors_origin,
                ..Default::default()
            };
            let addr = std::net::SocketAddr::new(host, port);
            let rt = tokio::runtime::Runtime::new().map_err(|source| CliError::Io {
                path: "<runtime>".into(),
                source,
            })?;
            eprintln!("listening on http://{addr}");
            rt.block_on(greenseq_service::serve(addr, config))
                .map_err(|source| CliError::Io {
                    path: addr.to_string(),
                    source,
                })?;
            Ok((String::new(), 0))
        }
    }
}

fn ok(text: String) -> (String, usize) {
    (text, 0)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_quiver(path: &Path) -> Result<ExtMatrix, CliError> {
    parse_quiver(&read(path)?).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn read_potential(path: &Path) -> Result<(PathQuiver, PathExpr), CliError> {
    let input = |e: &dyn std::fmt::Display| CliError::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let v = parse_json(&read(path)?).map_err(|e| input(&e))?;
    potential_from_json(&v, "").map_err(|e| input(&e))
}

fn json_line(v: &Value) -> String {
    let mut s = to_canonical_string(v);
    s.push('\n');
    s
}

/// 1-based vertex list from the command line, checked against the rank.
fn vertices(seq: &[u64], n: usize) -> Result<Vec<usize>, CliError> {
    seq.iter()
        .map(|&k| {
            if k as usize > n || n == 0 {
                Err(CliError::Usage(format!("vertex {k} is out of range 1..={n}")))
            } else {
                Ok(k as usize - 1)
            }
        })
        .collect()
}

fn one_based(seq: &[usize]) -> String {
    seq.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn colors_line(q: &ExtMatrix) -> String {
    let parts: Vec<String> = q
        .colors()
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{}:{}", i + 1, c.as_str()))
        .collect();
    format!("colors: {}\n", parts.join(" "))
}

fn mutate(q: &ExtMatrix, k: &[u64], json: bool, dot: bool) -> Result<String, CliError> {
    let seq = vertices(k, q.n())?;
    let r = q.mutate_sequence(&seq).map_err(CliError::domain)?;
    if json {
        return Ok(json_line(&quiver_to_json(&r)));
    }
    if dot {
        return Ok(quiver_to_dot(&r));
    }
    let mut out = format!("n={} m={} after mutating at {}\n{}", r.n(), r.m(), one_based(&seq), r);
    if r.m() > 0 {
        out.push_str(&colors_line(&r));
    }
    Ok(out)
}

fn explore_limits(a: &ExploreArgs) -> ExploreLimits {
    ExploreLimits {
        max_vertices: usize::try_from(a.max_vertices).unwrap_or(usize::MAX),
        max_depth: usize::try_from(a.max_depth).unwrap_or(usize::MAX),
    }
}

fn explore(q: &ExtMatrix, a: &ExploreArgs, json: bool, dot: bool, labelled: bool) -> Result<String, CliError> {
    let opts = ExploreOptions {
        limits: explore_limits(a),
        labelled,
    };
    let g = explore_with(q, opts).map_err(CliError::domain)?;
    if json {
        return Ok(json_line(&graph_to_json(&g)));
    }
    if dot {
        return Ok(graph_to_dot(&g));
    }
    let mut out = String::new();
    let _ = writeln!(out, "classes: {}", g.vertices.len());
    let _ = writeln!(out, "edges: {}", g.edges.len());
    let _ = writeln!(out, "complete: {}", g.complete);
    let (sources, sinks) = sources_and_sinks(&g);
    let framed = q.framed().and_then(|f| key(&f, labelled)).ok();
    let coframed = q.coframed().and_then(|f| key(&f, labelled)).ok();
    let label = |v: usize, target: &Option<greenseq_core::CanonicalKey>, name: &str| {
        if target.as_ref() == Some(&g.vertices[v].key) {
            format!("{} ({name})", v + 1)
        } else {
            (v + 1).to_string()
        }
    };
    let list = |vs: &[usize], target, name| {
        if vs.is_empty() {
            "none".to_string()
        } else {
            vs.iter().map(|&v| label(v, target, name)).collect::<Vec<_>>().join(", ")
        }
    };
    if g.complete {
        let _ = writeln!(out, "source: {}", list(&sources, &framed, "framed"));
        let _ = writeln!(out, "sink: {}", list(&sinks, &coframed, "coframed"));
    } else {
        let _ = writeln!(out, "all-red classes found: {}", list(&g.all_red_vertices(), &coframed, "coframed"));
    }
    for e in &g.edges {
        let _ = writeln!(out, "{} -> {} at {}", e.source + 1, e.target + 1, e.vertex + 1);
    }
    Ok(out)
}

fn key(q: &ExtMatrix, labelled: bool) -> Result<greenseq_core::CanonicalKey, greenseq_core::QuiverError> {
    if labelled {
        Ok(q.labelled_key())
    } else {
        q.canonical_key()
    }
}

fn green_seqs(q: &ExtMatrix, a: &GreenArgs, json: bool) -> Result<String, CliError> {
    let limits = GreenSearchLimits {
        max_len: usize::try_from(a.max_len).unwrap_or(usize::MAX),
        max_entry: a.max_entry.clone(),
    };
    let r = maximal_green_sequences(q, &limits).map_err(CliError::domain)?;
    if json {
        return Ok(json_line(&green_report_to_json(&r)));
    }
    let mut out = String::new();
    for s in &r.sequences {
        let _ = writeln!(out, "{}", one_based(s));
    }
    let plural = if r.sequences.len() == 1 { "" } else { "s" };
    if r.exhausted {
        let _ = writeln!(out, "# {} sequence{plural}, search exhausted", r.sequences.len());
    } else {
        let _ = writeln!(
            out,
            "# {} sequence{plural}, {} branch(es) cut by limits",
            r.sequences.len(),
            r.frontier_remaining
        );
    }
    Ok(out)
}

fn clusters(q: &ExtMatrix, max_seeds: u64, json: bool) -> Result<String, CliError> {
    let e = enumerate_clusters(q, usize::try_from(max_seeds).unwrap_or(usize::MAX)).map_err(CliError::domain)?;
    if json {
        let edges: Vec<Value> = e.edges.iter().map(|&(a, b, i)| json!([a + 1, b + 1, i + 1])).collect();
        return Ok(json_line(&json!({
            "complete": e.complete,
            "edges": edges,
            "seeds": e.seeds.iter().map(seed_to_json).collect::<Vec<_>>(),
            "v": 1,
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "clusters: {}", e.seeds.len());
    let _ = writeln!(out, "complete: {}", e.complete);
    for (i, s) in e.seeds.iter().enumerate() {
        let vars: Vec<String> = s.vars().iter().map(|v| v.render_fraction()).collect();
        let _ = writeln!(out, "{}: {}", i + 1, vars.join(", "));
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    C,
    G,
}

fn matrices(q: &ExtMatrix, seq: &[u64], kind: Kind, json: bool) -> Result<String, CliError> {
    let seq = vertices(seq, q.n())?;
    let steps = trajectory(q, &seq).map_err(CliError::domain)?;
    let pick = |s: &TrajectoryStep| -> IntMatrix {
        match kind {
            Kind::C => s.c.0.clone(),
            Kind::G => s.g.0.clone(),
        }
    };
    if json {
        let ms: Vec<Value> = steps.iter().map(|s| matrix_to_json(&pick(s))).collect();
        return Ok(json_line(&json!({
            "kind": if kind == Kind::C { "c" } else { "g" },
            "matrices": ms,
            "sequence": seq.iter().map(|k| k + 1).collect::<Vec<_>>(),
            "v": 1,
        })));
    }
    let mut out = String::new();
    for (t, s) in steps.iter().enumerate() {
        match s.vertex {
            None => out.push_str("initial\n"),
            Some(k) => {
                let _ = writeln!(out, "after {} (mutated at {})", t, k + 1);
            }
        }
        out.push_str(&pick(s).to_string());
    }
    Ok(out)
}

fn ginzburg_cmd(q: &PathQuiver, w: &PathExpr, json: bool) -> Result<String, CliError> {
    let g = ginzburg(q, w).map_err(CliError::domain)?;
    let relations = jacobian_presentation(q, w).map_err(CliError::domain)?;
    if json {
        let mut v = ginzburg_to_json(&g);
        let rel: Vec<Value> = relations
            .iter()
            .map(|(name, r)| json!({"arrow": name, "relation": r.to_string()}))
            .collect();
        v.as_object_mut().expect("object").insert("relations".into(), Value::Array(rel));
        return Ok(json_line(&v));
    }
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", g.quiver.vertices());
    for (a, d) in g.quiver.arrows().iter().zip(&g.differential) {
        let _ = writeln!(
            out,
            "{}: {} -> {}, degree {}, d = {}",
            a.name,
            a.source + 1,
            a.target + 1,
            a.degree,
            d
        );
    }
    out.push_str("relations:\n");
    if relations.is_empty() {
        out.push_str("  none\n");
    }
    for (name, r) in &relations {
        let _ = writeln!(out, "  d/d{name}: {r}");
    }
    Ok(out)
}

struct Check {
    name: String,
    passed: Option<bool>,
    detail: String,
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Degree {
            vertex,
            degree,
            expected,
        } => format!("vertex {} has degree {degree}, expected {expected}", vertex + 1),
        Witness::Cycle { vertex } => format!("vertex {} lies on an oriented cycle", vertex + 1),
        Witness::Sources(vs) => format!("sources: [{}]", one_based(vs)),
        Witness::Sinks(vs) => format!("sinks: [{}]", one_based(vs)),
    }
}

fn verify(
    q: &ExtMatrix,
    a: &ExploreArgs,
    trials: u64,
    depth: u64,
    seed: u64,
    json: bool,
) -> Result<(String, usize), CliError> {
    let g = explore_with(
        q,
        ExploreOptions {
            limits: explore_limits(a),
            labelled: false,
        },
    )
    .map_err(CliError::domain)?;
    let mut checks = Vec::new();
    if g.complete {
        let report = verify_exchange_axioms(&g).map_err(CliError::domain)?;
        for (name, c) in report.checks() {
            checks.push(Check {
                name: name.to_string(),
                passed: Some(c.passed),
                detail: c.witness.as_ref().map(witness_text).unwrap_or_default(),
            });
        }
    } else {
        checks.push(Check {
            name: "axioms".into(),
            passed: None,
            detail: format!("exchange graph not exhausted within limits ({} classes)", g.vertices.len()),
        });
    }

    let n = q.n();
    let b0 = q.top_block();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut duality = Ok(0usize);
    let mut separation = Ok(0usize);
    let mut truncated = 0usize;
    for _ in 0..trials {
        let len = rng.gen_range(0..=depth as usize);
        let seq: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let steps = trajectory(q, &seq).map_err(CliError::domain)?;
        if let Ok(count) = &mut duality {
            match check_duality(&steps, n) {
                Ok(()) => *count += 1,
                Err(e) => duality = Err(format!("sequence [{}]: {e}", one_based(&seq))),
            }
        }
        if n > SEPARATION_MAX_RANK {
            continue;
        }
        if let Ok(count) = &mut separation {
            match check_separation(q, &b0, &steps) {
                Ok((vars, cut)) => {
                    *count += vars;
                    truncated += usize::from(cut);
                }
                Err(e) => separation = Err(format!("sequence [{}]: {e}", one_based(&seq))),
            }
        }
    }
    checks.push(match duality {
        Ok(k) => Check {
            name: "duality".into(),
            passed: Some(true),
            detail: format!("{k} trajectories"),
        },
        Err(e) => Check {
            name: "duality".into(),
            passed: Some(false),
            detail: e,
        },
    });
    checks.push(match separation {
        _ if n > SEPARATION_MAX_RANK => Check {
            name: "separation".into(),
            passed: None,
            detail: format!("rank {n} exceeds the symbolic limit {SEPARATION_MAX_RANK}"),
        },
        Ok(k) => Check {
            name: "separation".into(),
            passed: Some(true),
            detail: if truncated > 0 {
                format!("{k} variables, {truncated} trajectories truncated at {SEPARATION_MAX_TERMS} terms")
            } else {
                format!("{k} variables")
            },
        },
        Err(e) => Check {
            name: "separation".into(),
            passed: Some(false),
            detail: e,
        },
    });

    let failures = checks.iter().filter(|c| c.passed == Some(false)).count();
    let text = if json {
        let cs: Vec<Value> = checks
            .iter()
            .map(|c| {
                json!({
                    "detail": c.detail,
                    "name": c.name,
                    "status": match c.passed { Some(true) => "pass", Some(false) => "fail", None => "skip" },
                })
            })
            .collect();
        json_line(&json!({"checks": cs, "v": 1}))
    } else {
        let mut out = String::new();
        for c in &checks {
            let status = match c.passed {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "SKIP",
            };
            if c.detail.is_empty() {
                let _ = writeln!(out, "{status} {}", c.name);
            } else {
                let _ = writeln!(out, "{status} {}: {}", c.name, c.detail);
            }
        }
        out
    };
    Ok((text, failures))
}

fn check_duality(steps: &[TrajectoryStep], n: usize) -> Result<(), String> {
    for (t, s) in steps.iter().enumerate() {
        if let Err(j) = check_sign_coherence(&s.c) {
            return Err(format!("step {t}: column {} of C is not sign-coherent", j + 1));
        }
        if s.g.0.transpose().mul(&s.c.0) != Some(IntMatrix::identity(n)) {
            return Err(format!("step {t}: G^T C is not the identity"));
        }
        if tropical_dual(&s.g).ok().as_ref() != Some(&s.c) {
            return Err(format!("step {t}: C is not the inverse transpose of G"));
        }
        for (j, colour) in s.quiver.colors().into_iter().enumerate() {
            let nonneg = s.c.0.column(j).iter().all(|x| x >= &BigInt::from(0));
            if (colour == VertexColor::Green) != nonneg {
                return Err(format!("step {t}: vertex {} is {colour} against its c-vector", j + 1));
            }
        }
    }
    Ok(())
}

/// Returns the number of variables checked and whether the trajectory was
/// cut short by the term limit.
fn check_separation(q: &ExtMatrix, b0: &IntMatrix, steps: &[TrajectoryStep]) -> Result<(usize, bool), String> {
    let mut seed = Seed::initial(q).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (t, s) in steps.iter().enumerate() {
        if let Some(k) = s.vertex {
            seed = seed.mutate(k).map_err(|e| e.to_string())?;
        }
        if seed.vars().iter().any(|v| v.len() > SEPARATION_MAX_TERMS) {
            return Ok((checked, true));
        }
        for (j, v) in seed.vars().iter().enumerate() {
            let g = g_vector(v, b0).map_err(|e| format!("step {t}, variable {}: {e}", j + 1))?;
            if g.0 != s.g.0.column(j) {
                return Err(format!("step {t}: degree of variable {} differs from g-matrix column", j + 1));
            }
            if !verify_separation(v, b0, &g, &f_polynomial(v)) {
                return Err(format!("step {t}: variable {} is not x^g F(y)", j + 1));
            }
            checked += 1;
        }
    }
    Ok((checked, false))
}
