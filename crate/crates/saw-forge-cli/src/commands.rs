use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::str::FromStr;

use num_rational::Rational64;
use serde_json::{json, Value};

use saw_forge::census::{build_census, polygons, EnumOptions, EnumerationJob, Target};
use saw_forge::edge3::{edge3_closing_identity, enumerate_edge3, Edge3Kind};
use saw_forge::patterns::{
    default_pattern_pair, local_shell, pattern_comb, redistribution_law, resample_histogram,
    scan_polygon, z_score, PatternType,
};
use saw_forge::snake::{
    charming_indices, first_parts, is_extendable, snake_theorem_report, SnakeConfig,
};
use saw_forge::surgery::{
    intervals_intersect, madras_join, rgj_enumerate, simple_plaquette_join, RgjConfig,
};
use saw_forge::Point;

use crate::args::{
    CensusArgs, CensusTarget, Cli, Command, Edge3Args, Edge3Target, JoinArgs, JoinMode,
    PatternsArgs, SnakeArgs,
};
use crate::report::{self, is_csv, write_csv, write_json, Report};
use crate::{verify, Failure};

pub fn dispatch(cli: &Cli, argv: &[String]) -> Result<(), Failure> {
    let (rep, out) = match &cli.command {
        Command::Census(a) => (census(a)?, a.out.as_deref()),
        Command::Join(a) => (join(a)?, a.out.as_deref()),
        Command::Patterns(a) => (patterns(a)?, a.out.as_deref()),
        Command::Snake(a) => (snake(a)?, a.report.as_deref()),
        Command::Edge3(a) => (edge3(a)?, a.out.as_deref()),
        Command::Verify(a) => (verify::verify(a)?, a.out.as_deref()),
    };
    let mut config = rep.config.clone();
    if let Value::Object(o) = &mut config {
        o.insert("threads".into(), json!(cli.threads.map(|t| t.to_string()).unwrap_or_else(|| "auto".into())));
        o.insert("deterministic".into(), json!(cli.deterministic));
    }
    let rep = Report { config, ..rep };
    // a .csv path already received the tabular mirror; the report then goes to stdout
    write_json(&rep.to_json(argv, cli.deterministic), out.filter(|p| !is_csv(p)))?;
    match rep.first_failure {
        Some(f) => Err(Failure::Check(f)),
        None => Ok(()),
    }
}

fn options(shard_depth: Option<usize>) -> EnumOptions {
    let mut o = EnumOptions::default();
    if let Some(s) = shard_depth {
        o.shard_depth = s;
        o.parallel = s > 0;
    }
    o
}

fn path_str(p: Option<&Path>) -> Value {
    p.map(|p| json!(p.display().to_string())).unwrap_or(Value::Null)
}

fn census(a: &CensusArgs) -> Result<Report, Failure> {
    let targets: BTreeSet<CensusTarget> = a.targets.iter().copied().collect();
    let job = EnumerationJob {
        d: a.d,
        max_n: a.max_n,
        targets: targets
            .iter()
            .map(|t| match t {
                CensusTarget::Walks => Target::Walks,
                CensusTarget::Polygons => Target::Polygons,
                CensusTarget::Closing => Target::Closing,
                CensusTarget::HalfSpace => Target::HalfSpace,
                CensusTarget::Bridges => Target::Bridges,
            })
            .collect(),
        options: options(a.shard_depth),
    };
    let t = build_census(&job)?;
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    let opt = |m: &BTreeMap<usize, u64>, n: usize| m.get(&n).map(|v| v.to_string());
    for n in 0..=a.max_n {
        let mut row = serde_json::Map::new();
        row.insert("n".into(), json!(n));
        let closing = t.closing.get(&n);
        let fields = [
            ("c_n", opt(&t.walks, n)),
            ("p_n", opt(&t.polygons, n)),
            ("closing_n", closing.map(|s| s.closing.to_string())),
            ("closing_probability", closing.map(|s| s.probability.to_string())),
            ("half_space_returning", opt(&t.half_space_returning, n)),
            ("bridges", opt(&t.bridges, n)),
        ];
        for (k, v) in &fields {
            if let Some(v) = v {
                row.insert((*k).into(), json!(v));
            }
        }
        if let Some(s) = closing {
            row.insert("closing_by_first_part".into(), json!(s.closing_by_first_part));
            row.insert("walks_by_first_part".into(), json!(s.walks_by_first_part));
        }
        csv_rows.push(
            fields[..3]
                .iter()
                .map(|(_, v)| v.clone().unwrap_or_default())
                .fold(vec![n.to_string()], |mut r, v| {
                    r.push(v);
                    r
                }),
        );
        rows.push(Value::Object(row));
    }
    let header = ["n", "c_n", "p_n", "closing_n"];
    for p in [a.csv.as_deref(), a.out.as_deref().filter(|p| is_csv(p))].into_iter().flatten() {
        write_csv(p, &header, &csv_rows)?;
    }
    let config = json!({
        "subcommand": "census",
        "d": a.d,
        "max_n": a.max_n,
        "targets": targets.iter().map(|t| format!("{t:?}").to_lowercase()).collect::<Vec<_>>(),
        "shard_depth": job.options.shard_depth,
        "out": path_str(a.out.as_deref()),
        "csv": path_str(a.csv.as_deref()),
    });
    Ok(Report::ok("census", config, json!({ "d": a.d, "rows": rows })))
}

fn join(a: &JoinArgs) -> Result<Report, Failure> {
    let config = json!({
        "subcommand": "join",
        "mode": format!("{:?}", a.mode).to_lowercase(),
        "k": a.k,
        "l": a.l,
        "c_reg": a.c_reg,
        "out": path_str(a.out.as_deref()),
    });
    let mut first_failure = None;
    let result = match a.mode {
        JoinMode::Simple => {
            let (ls, rs) = (polygons(2, a.k)?, polygons(2, a.l)?);
            let mut entries = Vec::new();
            let mut outs = BTreeSet::new();
            for (i, p) in ls.iter().enumerate() {
                for (j, q) in rs.iter().enumerate() {
                    let r = simple_plaquette_join(p, q)?;
                    entries.push(json!({ "left": i, "right": j, "length": r.len(), "polygon": report::polygon(&r) }));
                    outs.insert(r);
                }
            }
            if outs.len() != entries.len() {
                first_failure = Some("plaquette join is not injective".to_string());
            }
            json!({ "pairs": entries.len(), "distinct_outputs": outs.len(), "entries": entries })
        }
        JoinMode::Madras => {
            let (ls, rs) = (polygons(2, a.k)?, polygons(2, a.l)?);
            let mut entries = Vec::new();
            let mut cases: BTreeMap<String, u64> = BTreeMap::new();
            for (i, p) in ls.iter().enumerate() {
                for (j, q) in rs.iter().enumerate() {
                    let (cp, cq) = (p.compass(), q.compass());
                    for k in cp.ymin - 2 - cq.ymax..=cp.ymax + 2 - cq.ymin {
                        let qk = q.translate(Point::xy(0, k));
                        if !intervals_intersect(p, &qk) {
                            continue;
                        }
                        let o = madras_join(p, &qk)?;
                        let tags = [o.case_tags.0.label(), o.case_tags.1.label()];
                        *cases.entry(format!("{}/{}", tags[0], tags[1])).or_default() += 1;
                        if o.result.len() != p.len() + q.len() + 16 && first_failure.is_none() {
                            first_failure = Some(format!("join of left {i} and right {j} at height {k} has the wrong length"));
                        }
                        entries.push(json!({
                            "left": i,
                            "right": j,
                            "height": k,
                            "case_tags": tags,
                            "shifts": [o.shifts.0, o.shifts.1],
                            "junction": report::point(&o.junction.corner),
                            "y": report::point(&o.y),
                            "joinable": o.joinable,
                            "length": o.result.len(),
                        }));
                    }
                }
            }
            json!({ "joins": entries.len(), "cases": cases, "entries": entries })
        }
        JoinMode::Rgj => {
            let r = rgj_enumerate(a.k, a.l, &RgjConfig { c_reg: a.c_reg })?;
            if r.outputs.len() as u64 != r.formula {
                first_failure = Some(format!("{} outputs against the formula {}", r.outputs.len(), r.formula));
            } else if r.entries.len() != r.outputs.len() {
                first_failure = Some("two constructions give the same polygon".to_string());
            }
            let entries: Vec<Value> = r
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "left": e.left,
                        "right": e.right,
                        "offset": report::point(&e.offset),
                        "junction": report::point(&e.outcome.junction.corner),
                        "case_tags": [e.outcome.case_tags.0.label(), e.outcome.case_tags.1.label()],
                        "shifts": [e.outcome.shifts.0, e.outcome.shifts.1],
                        "global": e.global,
                        "polygon": report::polygon(&e.output),
                    })
                })
                .collect();
            json!({
                "window": r.window,
                "left_count": r.lefts.len(),
                "right_count": r.rights.len(),
                "formula": r.formula,
                "outputs": r.outputs.len(),
                "entries": entries,
            })
        }
    };
    Ok(Report {
        command: "join",
        config,
        result,
        first_failure,
    })
}

fn parse_types(s: &str) -> Result<Vec<PatternType>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t {
            "I" => Ok(PatternType::I),
            "II" => Ok(PatternType::II),
            _ => Err(Failure::Usage(format!("unknown pattern type {t:?}; use I or II"))),
        })
        .collect()
}

fn patterns(a: &PatternsArgs) -> Result<Report, Failure> {
    let pp = default_pattern_pair(2)?;
    let mut config = json!({
        "subcommand": "patterns",
        "scan": path_str(a.scan.as_deref()),
        "resample": path_str(a.resample.as_deref()),
        "comb": a.comb,
        "seed": a.seed,
        "draws": a.draws,
        "out": path_str(a.out.as_deref()),
    });
    if let Some(layout) = &a.comb {
        let (first, last) = layout
            .split_once('/')
            .ok_or_else(|| Failure::Usage("--comb takes FIRST/LAST, e.g. II,I/I".into()))?;
        let p = pattern_comb(&parse_types(first)?, &parse_types(last)?, &pp)?;
        return Ok(Report::ok("patterns", config, json!({ "length": p.len(), "polygon": report::polygon(&p) })));
    }
    if let Some(path) = &a.scan {
        let p = report::read_polygon(path)?;
        let scan = scan_polygon(&p, &pp)?;
        let d = local_shell(&p, &pp)?;
        let law: Vec<String> = (0..=d.s1.len()).map(|k| redistribution_law(&d, k).to_string()).collect();
        let result = json!({
            "length": p.len(),
            "slots": { "type_i": scan.count(PatternType::I), "type_ii": scan.count(PatternType::II) },
            "shell": {
                "window": d.window,
                "s1": d.s1.len(),
                "s2": d.s2.len(),
                "n_i": d.n_i,
                "n_ii": d.n_ii,
                "n_i_1": d.n_i_1,
                "n_i_2": d.n_i_2,
                "n_ii_1": d.n_ii_1,
                "n_ii_2": d.n_ii_2,
                "class_size": d.class_size().to_string(),
            },
            "law_n_i_1": law,
        });
        return Ok(Report::ok("patterns", config, result));
    }
    let path = a.resample.as_ref().expect("argument group requires an action");
    let p = report::read_polygon(path)?;
    let d = local_shell(&p, &pp)?;
    let hist = resample_histogram(&p, &pp, a.seed, a.draws)?;
    let mut rows = Vec::new();
    let mut table = Vec::new();
    for k in 0..=d.s1.len() {
        let law = redistribution_law(&d, k);
        let seen = hist.get(&k).copied().unwrap_or(0);
        let z = z_score(seen, a.draws, &law);
        table.push(vec![k.to_string(), seen.to_string(), law.to_string(), format!("{z:.4}")]);
        rows.push(json!({ "k": k, "count": seen, "law": law.to_string(), "z": format!("{z:.4}") }));
    }
    if let Some(out) = a.out.as_deref().filter(|p| is_csv(p)) {
        write_csv(out, &["k", "count", "law", "z"], &table)?;
    }
    if let Value::Object(o) = &mut config {
        o.insert("rng".into(), json!("chacha8"));
    }
    Ok(Report::ok("patterns", config, json!({ "class_size": d.class_size().to_string(), "histogram": rows })))
}

fn exponent(name: &str, s: &str) -> Result<Rational64, Failure> {
    Rational64::from_str(s.trim()).map_err(|_| Failure::Usage(format!("--{name} must be a rational such as 1/2, got {s:?}")))
}

fn snake(a: &SnakeArgs) -> Result<Report, Failure> {
    let cfg = SnakeConfig::new(
        exponent("alpha", &a.alpha)?,
        exponent("beta", &a.beta)?,
        exponent("eta", &a.eta)?,
        a.n,
        a.l,
    )?;
    let config = json!({
        "subcommand": "snake",
        "d": a.d,
        "n": a.n,
        "l": a.l,
        "alpha": a.alpha,
        "beta": a.beta,
        "eta": a.eta,
        "report": path_str(a.report.as_deref()),
    });
    let mut snakes = Vec::new();
    let (mut extendable, mut total) = (0u64, 0u64);
    for g in first_parts(a.d, a.l)? {
        total += 1;
        if !is_extendable(&g, a.n)? {
            continue;
        }
        extendable += 1;
        let rep = charming_indices(&g, &cfg)?;
        if rep.in_cs {
            let mut v = serde_json::to_value(&rep).map_err(|e| Failure::Io(e.to_string()))?;
            if let Value::Object(o) = &mut v {
                o.insert("walk".into(), report::walk(&g));
            }
            snakes.push(v);
        }
    }
    let mut result = json!({
        "delta": cfg.delta().to_string(),
        "window_start": cfg.window_start(),
        "cs_threshold": cfg.cs_threshold(),
        "first_parts": total,
        "extendable": extendable,
        "charming_snakes": snakes.len(),
        "snakes": snakes,
    });
    if a.d == 2 {
        let t = snake_theorem_report(&cfg)?;
        result["bound"] = serde_json::to_value(&t).map_err(|e| Failure::Io(e.to_string()))?;
    }
    Ok(Report::ok("snake", config, result))
}

fn edge3(a: &Edge3Args) -> Result<Report, Failure> {
    let targets: BTreeSet<Edge3Target> = a.targets.iter().copied().collect();
    let opts = EnumOptions::default();
    let walks = if targets.contains(&Edge3Target::Walks) {
        Some(enumerate_edge3(a.d, a.max_n, Edge3Kind::Walks, false, &opts)?)
    } else {
        None
    };
    let polys = if targets.contains(&Edge3Target::Polygons) {
        Some(enumerate_edge3(a.d, a.max_n, Edge3Kind::Polygons, false, &opts)?)
    } else {
        None
    };
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    let mut identities = Vec::new();
    for n in 0..=a.max_n {
        let c = walks.as_ref().map(|w| w.walks[n].to_string());
        let closing = walks.as_ref().or(polys.as_ref()).and_then(|w| w.closing.get(n)).map(u64::to_string);
        let p = polys.as_ref().and_then(|w| w.polygons.get(&n)).map(u64::to_string);
        let pn = polys.as_ref().and_then(|w| w.polygons_nondegenerate.get(&n)).map(u64::to_string);
        let mut row = serde_json::Map::new();
        row.insert("n".into(), json!(n));
        for (k, v) in [("c_hat", &c), ("closing", &closing), ("p_hat", &p), ("p_hat_nondegenerate", &pn)] {
            if let Some(v) = v {
                row.insert(k.into(), json!(v));
            }
        }
        rows.push(Value::Object(row));
        csv_rows.push(vec![
            n.to_string(),
            c.unwrap_or_default(),
            closing.unwrap_or_default(),
            p.unwrap_or_default(),
        ]);
        if polys.is_some() && n > 0 && n % 2 == 0 {
            let id = edge3_closing_identity(a.d, n, &opts)?;
            identities.push(json!({
                "n": n,
                "closing_walks": id.closing_walks,
                "two_n_p_hat": 2 * n as u64 * id.polygons,
                "holds": id.holds,
                "holds_nondegenerate": id.holds_nondegenerate,
                "symmetric_polygons": id.symmetric.len(),
            }));
        }
    }
    for p in [a.csv.as_deref(), a.out.as_deref().filter(|p| is_csv(p))].into_iter().flatten() {
        write_csv(p, &["n", "c_hat", "closing", "p_hat"], &csv_rows)?;
    }
    let config = json!({
        "subcommand": "edge3",
        "d": a.d,
        "max_n": a.max_n,
        "targets": targets.iter().map(|t| format!("{t:?}").to_lowercase()).collect::<Vec<_>>(),
        "out": path_str(a.out.as_deref()),
        "csv": path_str(a.csv.as_deref()),
    });
    Ok(Report::ok(
        "edge3",
        config,
        json!({ "d": a.d, "rows": rows, "closing_identity": identities }),
    ))
}
