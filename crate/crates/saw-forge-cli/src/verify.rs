use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use saw_forge::census::{
    build_census, closing_stats, is_returning_half_space, polygons, EnumOptions, EnumerationJob,
    Target,
};
use saw_forge::edge3::{edge3_closing_identity, edge3_polygons, projection_report};
use saw_forge::patterns::{
    default_pattern_pair, local_shell, pattern_comb, redistribution_law, resample_kernel,
    shell_class_members, PatternType,
};
use saw_forge::surgery::{
    global_join_plaquettes, reconstruct_reflect_split, reflect_split_map, rgj_enumerate, RgjConfig,
};

use crate::args::{Suite, VerifyArgs};
use crate::report::Report;
use crate::Failure;

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn identities(d: usize, max_n: usize) -> Result<Vec<Check>, Failure> {
    let targets = vec![Target::Walks, Target::Polygons];
    let job = |options| EnumerationJob {
        d,
        max_n: max_n + 1,
        targets: targets.clone(),
        options,
    };
    let t = build_census(&job(EnumOptions::default()))?;
    let serial = build_census(&job(EnumOptions::serial()))?;
    let mut out = vec![check("sharded census equals serial census", t == serial, "")];
    let p = |n: usize| t.polygons.get(&n).copied().unwrap_or(0);
    for n in (3..=max_n).step_by(2) {
        let s = closing_stats(d, n, &EnumOptions::default())?;
        let rhs = BigRational::new(BigInt::from(2 * (n as u64 + 1) * p(n + 1)), BigInt::from(t.walks[&n]));
        out.push(check(
            format!("closing probability n={n}"),
            s.probability == rhs,
            format!("{} vs {rhs}", s.probability),
        ));
        let inner: BTreeSet<u64> = (1..n)
            .map(|j| s.closing_by_first_part.get(&j).copied().unwrap_or(0))
            .collect();
        out.push(check(
            format!("stratified closing counts n={n}"),
            inner.len() == 1,
            format!("{inner:?}"),
        ));
    }
    let mut bad = Vec::new();
    for n in 1..max_n {
        for m in 1..=max_n - n {
            if t.walks[&(n + m)] > t.walks[&n] * t.walks[&m] {
                bad.push((n, m));
            }
        }
    }
    out.push(check("walk submultiplicativity", bad.is_empty(), format!("{bad:?}")));
    let mut bad = Vec::new();
    for n in (4..=max_n + 1).step_by(2) {
        for m in (4..=max_n + 1).step_by(2) {
            if n + m <= max_n + 1 && p(n + m) * (d as u64 - 1) < p(n) * p(m) {
                bad.push((n, m));
            }
        }
    }
    out.push(check("polygon supermultiplicativity", bad.is_empty(), format!("{bad:?}")));
    Ok(out)
}

fn surgery(max_n: usize) -> Result<Vec<Check>, Failure> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let (mut images, mut bad) = (0, 0);
    for n in (4..=max_n.min(12)).step_by(2) {
        for p in polygons(2, n)? {
            let r = global_join_plaquettes(&p)?.len();
            for mask in 0u32..1 << r {
                let kappa: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
                let w = reflect_split_map(&p, &kappa)?;
                images += 1;
                let ok = is_returning_half_space(w.vertices())
                    && reconstruct_reflect_split(&w).ok().as_ref() == Some(&p)
                    && seen.insert(w.vertices().to_vec());
                bad += !ok as usize;
            }
        }
    }
    out.push(check("reflection split maps", bad == 0, format!("{images} images, {bad} failures")));
    for (k, l) in [(4, 4), (6, 4), (6, 6)] {
        let r = rgj_enumerate(k, l, &RgjConfig { c_reg: 2 })?;
        out.push(check(
            format!("regulation join count ({k},{l})"),
            r.outputs.len() as u64 == r.formula && r.entries.len() == r.outputs.len(),
            format!("{} outputs, formula {}", r.outputs.len(), r.formula),
        ));
    }
    Ok(out)
}

fn patterns() -> Result<Vec<Check>, Failure> {
    use PatternType::{I, II};
    let pp = default_pattern_pair(2)?;
    let mut out = Vec::new();
    for (first, last) in [(vec![II, I], vec![I]), (vec![I, II], vec![II, I])] {
        let p = pattern_comb(&first, &last, &pp)?;
        let d = local_shell(&p, &pp)?;
        let members = shell_class_members(&d, &pp)?;
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for m in &members {
            *counts.entry(local_shell(m, &pp)?.n_i_1).or_default() += 1;
        }
        let law_ok = (0..=d.s1.len()).all(|k| {
            BigRational::new(
                BigInt::from(counts.get(&k).copied().unwrap_or(0)),
                BigInt::from(members.len()),
            ) == redistribution_law(&d, k)
        });
        let kernel = resample_kernel(&d, &pp)?;
        let name = format!("pattern class {}+{}", first.len(), last.len());
        out.push(check(format!("{name} law"), law_ok, format!("{} members", members.len())));
        out.push(check(
            format!("{name} kernel"),
            kernel.is_doubly_stochastic() && kernel.is_idempotent(),
            "",
        ));
    }
    Ok(out)
}

fn edge3(d: usize, max_n: usize) -> Result<Vec<Check>, Failure> {
    let mut out = Vec::new();
    let top = max_n.min(if d == 2 { 8 } else { 6 });
    for n in (2..=top).step_by(2) {
        let id = edge3_closing_identity(d, n, &EnumOptions::default())?;
        out.push(check(
            format!("3-edge closing identity n={n}"),
            id.holds,
            format!(
                "{} closing walks, 2n p_hat = {}, {} polygons with fewer than 2n parametrizations",
                id.closing_walks,
                2 * n as u64 * id.polygons,
                id.symmetric.len()
            ),
        ));
        let bad = edge3_polygons(d, n)?
            .iter()
            .map(projection_report)
            .filter(|r| !(r.loomis_whitney && r.vertex_bound))
            .count();
        out.push(check(format!("3-edge projections n={n}"), bad == 0, format!("{bad} failures")));
    }
    Ok(out)
}

pub fn verify(a: &VerifyArgs) -> Result<Report, Failure> {
    if !(2..=3).contains(&a.d) {
        return Err(Failure::Usage("verify supports d = 2 or 3".into()));
    }
    let planar_only = |s: &str| -> Result<(), Failure> {
        if a.d != 2 {
            return Err(Failure::Usage(format!("the {s} suite is planar")));
        }
        Ok(())
    };
    let mut checks = Vec::new();
    let all = a.suite == Suite::All;
    if all || a.suite == Suite::Identities {
        checks.extend(identities(a.d, a.max_n)?);
    }
    if a.suite == Suite::Surgery || (all && a.d == 2) {
        planar_only("surgery")?;
        checks.extend(surgery(a.max_n)?);
    }
    if a.suite == Suite::Patterns || (all && a.d == 2) {
        planar_only("patterns")?;
        checks.extend(patterns()?);
    }
    if all || a.suite == Suite::Edge3 {
        checks.extend(edge3(a.d, a.max_n)?);
    }
    let first_failure = checks.iter().find(|c| !c.pass).map(|c| c.name.clone());
    let passed = checks.iter().filter(|c| c.pass).count();
    let list: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
        .collect();
    Ok(Report {
        command: "verify",
        config: json!({
            "subcommand": "verify",
            "suite": format!("{:?}", a.suite).to_lowercase(),
            "d": a.d,
            "max_n": a.max_n,
            "out": a.out.as_ref().map(|p| p.display().to_string()),
        }),
        result: json!({ "checks": list, "passed": passed, "total": checks.len() }),
        first_failure,
    })
}
