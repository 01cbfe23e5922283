//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the test harness so the lines always show.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use saw_forge::census::{
    build_census, closing_stats, enumerate_half_space_returning, is_bridge,
    is_returning_half_space, polygons, EnumOptions, EnumerationJob, Target,
};
use saw_forge::edge3::{
    edge3_closing_identity, enumerate_edge3, projection_report, simple_join_3e, split_junction,
    Edge3Kind, Edge3Polygon,
};
use saw_forge::patterns::{
    default_pattern_pair, local_shell, pattern_comb, redistribution_law, resample_histogram,
    resample_kernel, shell_class_members, z_score, PatternType,
};
use saw_forge::snake::{
    avoidance_extension_counts, avoids, extensions, first_parts, is_extendable,
    reflect_concatenate, stratum_totals,
};
use saw_forge::surgery::{
    classify_polygon, fold_bridge, global_join_plaquettes, intervals_intersect, madras_join,
    reconstruct_reflect_split, reflect_split_map, rgj_enumerate, rgj_first_part_law,
    unfold_half_space, RgjConfig,
};
use saw_forge::{Edge, Point, Polygon};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn census(d: usize, max_n: usize, targets: Vec<Target>, options: EnumOptions) -> saw_forge::census::CensusTable {
    build_census(&EnumerationJob {
        d,
        max_n,
        targets,
        options,
    })
    .unwrap()
}

fn census_identities() -> Verdict {
    let t = Instant::now();
    let table = census(2, 14, vec![Target::Walks, Target::Polygons], EnumOptions::serial());
    let elapsed = t.elapsed();
    let oracle_c = common::walk_counts(2, 12);
    let mut bad = Vec::new();
    for (n, c) in oracle_c.iter().enumerate() {
        if table.walks[&n] != *c {
            bad.push(format!("c_{n}"));
        }
    }
    for n in (4..=14).step_by(2) {
        if table.polygons[&n] != common::polygon_count(2, n) {
            bad.push(format!("p_{n}"));
        }
    }
    let fixed = oracle_c[..=4] == [1, 4, 12, 36, 100]
        && [4, 6, 8].map(|n| table.polygons[&n]) == [1, 2, 7];
    let fast = elapsed <= Duration::from_secs(60);
    verdict(
        bad.is_empty() && fixed && fast,
        format!("mismatches {bad:?}; census {:.1}s serial (limit 60s)", elapsed.as_secs_f64()),
    )
}

fn closing_identity() -> Verdict {
    let mut bad = Vec::new();
    for (d, max) in [(2, 13), (3, 9)] {
        let t = census(d, max + 1, vec![Target::Walks, Target::Polygons], EnumOptions::default());
        // one-step walks close without bounding a polygon
        for n in (3..=max).step_by(2) {
            let w = closing_stats(d, n, &EnumOptions::default()).unwrap().probability;
            let p = t.polygons.get(&(n + 1)).copied().unwrap_or(0);
            let rhs = BigRational::new(BigInt::from(2 * (n as u64 + 1) * p), BigInt::from(t.walks[&n]));
            if w != rhs {
                bad.push((d, n));
            }
        }
    }
    let w3 = closing_stats(2, 3, &EnumOptions::serial()).unwrap().probability;
    let ok3 = w3 == BigRational::new(2.into(), 9.into());
    let w1 = closing_stats(2, 1, &EnumOptions::serial()).unwrap().probability;
    verdict(
        bad.is_empty() && ok3,
        format!("failures over odd n >= 3 {bad:?}; W_3 = {w3}; degenerate W_1 = {w1}"),
    )
}

fn basic_inequalities() -> Verdict {
    let mut bad = Vec::new();
    for (d, cmax, pmax) in [(2, 12, 14), (3, 9, 10)] {
        let t = census(d, pmax, vec![Target::Walks, Target::Polygons], EnumOptions::default());
        for n in 1..cmax {
            for m in 1..=cmax - n {
                if t.walks[&(n + m)] > t.walks[&n] * t.walks[&m] {
                    bad.push(format!("d={d} c {n}+{m}"));
                }
            }
        }
        for n in (4..=pmax).step_by(2) {
            for m in (4..=pmax - n.min(pmax)).step_by(2) {
                if n + m > pmax {
                    continue;
                }
                if t.polygons[&(n + m)] * (d as u64 - 1) < t.polygons[&n] * t.polygons[&m] {
                    bad.push(format!("d={d} p {n}+{m}"));
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("violations {bad:?}"))
}

fn stratification() -> Verdict {
    let mut bad = Vec::new();
    let mut ends = Vec::new();
    for n in (3..=11).step_by(2) {
        let s = closing_stats(2, n, &EnumOptions::default()).unwrap();
        let at = |j: usize| s.closing_by_first_part.get(&j).copied().unwrap_or(0);
        let inner: BTreeSet<u64> = (1..n).map(at).collect();
        if inner.len() != 1 {
            bad.push(n);
        }
        ends.push(format!("n={n}: j=0 {} j=1..{} {:?} j=n {}", at(0), n - 1, inner, at(n)));
    }
    verdict(bad.is_empty(), format!("unequal at {bad:?}; {}", ends.join("; ")))
}

fn symmetric_difference(a: &[Edge], b: &[Edge]) -> usize {
    let a: BTreeSet<Edge> = a.iter().copied().collect();
    let b: BTreeSet<Edge> = b.iter().copied().collect();
    a.symmetric_difference(&b).count()
}

fn madras() -> Verdict {
    let t = Instant::now();
    let sets: BTreeMap<usize, Vec<Polygon>> = [4, 6, 8].into_iter().map(|n| (n, polygons(2, n).unwrap())).collect();
    let mut joins = 0;
    let mut failures = Vec::new();
    let mut joinable = 0;
    let mut worst = 0;
    let mut over = 0;
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for a in sets.values().flatten() {
        for b in sets.values().flatten() {
            let (ca, cb) = (a.compass(), b.compass());
            for k in ca.ymin - 2 - cb.ymax..=ca.ymax + 2 - cb.ymin {
                let bk = b.translate(Point::xy(0, k));
                if !intervals_intersect(a, &bk) {
                    continue;
                }
                joins += 1;
                let o = match madras_join(a, &bk) {
                    Ok(o) => o,
                    Err(e) => {
                        failures.push(format!("{e}"));
                        continue;
                    }
                };
                let y = o.y;
                let x_col = o.junction.corner.x();
                let v = |x: i32, y: i32| Point::xy(x, y);
                let local = |e: &Edge| {
                    e.endpoints()
                        .iter()
                        .all(|p| p.x() >= y.x() - 1 && (p.y() - y.y()).abs() <= 1)
                };
                let diff: Vec<Edge> = {
                    let ta: BTreeSet<Edge> = a.edges().iter().copied().collect();
                    let tm: BTreeSet<Edge> = o.tau_modified.edges().iter().copied().collect();
                    ta.symmetric_difference(&tm).copied().collect()
                };
                let crossing = [
                    Edge::between(v(x_col, y.y() - 1), v(x_col, y.y())),
                    Edge::between(v(x_col, y.y()), v(x_col, y.y() + 1)),
                ];
                let confined = o
                    .tau_modified
                    .vertices()
                    .iter()
                    .filter(|p| (p.y() - y.y()).abs() <= 1)
                    .all(|p| p.x() <= x_col);
                let [l, r] = o.junction.vertical_edges();
                let ok = o.result.len() == a.len() + b.len() + 16
                    && o.tau_modified.len() == a.len() + 8
                    && o.sigma_modified.len() == b.len() + 8
                    && diff.iter().all(local)
                    && crossing.iter().all(|e| o.tau_modified.contains_edge(e))
                    && confined
                    && !o.result.contains_edge(&l)
                    && !o.result.contains_edge(&r)
                    && o.junction.horizontal_edges().iter().all(|e| o.result.contains_edge(e));
                if !ok {
                    failures.push(format!("postcondition at k={k}"));
                }
                let (t1, t2) = o.shifts;
                let bu = bk.translate(Point::xy(t1 + t2, 0));
                if let Ok(j) = madras_join(a, &bu) {
                    if j.joinable {
                        joinable += 1;
                        let mut union = a.edges().to_vec();
                        union.extend_from_slice(bu.edges());
                        let s = symmetric_difference(j.result.edges(), &union);
                        worst = worst.max(s);
                        *sizes.entry(s).or_default() += 1;
                        if s > 20 {
                            over += 1;
                        }
                    }
                }
            }
        }
    }
    let fast = t.elapsed() <= Duration::from_secs(300);
    let first: Vec<&String> = failures.iter().take(3).collect();
    verdict(
        failures.is_empty() && over == 0 && fast,
        format!(
            "{joins} joins, {} failures {first:?}; {joinable} joinable placements, {over} with |J Δ (τ∪σ)| > 20 (max {worst}, sizes {sizes:?}); {:.1}s",
            failures.len(),
            t.elapsed().as_secs_f64()
        ),
    )
}

fn rgj_counts() -> Verdict {
    let cfg = RgjConfig { c_reg: 2 };
    let mut parts = Vec::new();
    let mut pass = true;
    for (k, l) in [(4, 4), (4, 6), (6, 4), (6, 6), (8, 8)] {
        let r = rgj_enumerate(k, l, &cfg).unwrap();
        let unique = r.entries.len() == r.outputs.len();
        let ok = r.outputs.len() as u64 == r.formula && unique;
        pass &= ok;
        parts.push(format!("({k},{l}) {}={}", r.outputs.len(), r.formula));
    }
    verdict(pass, parts.join(", "))
}

fn prefix_law() -> Verdict {
    let cfg = RgjConfig { c_reg: 2 };
    let mut bad = Vec::new();
    for (k, l) in [(4, 4), (6, 6)] {
        for j in 0..=k / 2 {
            let law = rgj_first_part_law(k, l, j, &cfg).unwrap();
            if law.joined != law.left {
                bad.push((k, l, j));
            }
        }
    }
    verdict(bad.is_empty(), format!("unequal laws at {bad:?}"))
}

fn split_maps() -> Verdict {
    let mut outputs = HashSet::new();
    let mut images = 0;
    let mut bad = Vec::new();
    for n in (4..=12).step_by(2) {
        for p in polygons(2, n).unwrap() {
            let r = global_join_plaquettes(&p).unwrap().len();
            for mask in 0u32..1 << r {
                let kappa: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
                let w = reflect_split_map(&p, &kappa).unwrap();
                images += 1;
                let ok = w.len() == n + 2 * kappa.len()
                    && is_returning_half_space(w.vertices())
                    && reconstruct_reflect_split(&w).ok().as_ref() == Some(&p);
                if !ok || !outputs.insert(w.vertices().to_vec()) {
                    bad.push(format!("n={n} kappa={kappa:?}"));
                }
            }
        }
    }
    let mut bridges = 0;
    for n in 1..=10 {
        let (_, walks) = enumerate_half_space_returning(n, true, &EnumOptions::default()).unwrap();
        let mut seen = HashSet::new();
        for w in walks {
            let b = unfold_half_space(&w).unwrap();
            bridges += 1;
            let ok = is_bridge(b.vertices()) && fold_bridge(&b).ok().as_ref() == Some(&w);
            if !ok || !seen.insert(b.vertices().to_vec()) {
                bad.push(format!("unfold n={n}"));
            }
        }
    }
    let first: Vec<&String> = bad.iter().take(3).collect();
    verdict(
        bad.is_empty(),
        format!("{images} images, {bridges} unfolded walks, {} failures {first:?}", bad.len()),
    )
}

fn class_fractions() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in (4..=14).step_by(2) {
        let ps = polygons(2, n).unwrap();
        let (mut left, mut frak_l, mut frak_r) = (0, 0, 0);
        for p in &ps {
            let f = classify_polygon(p).unwrap();
            left += f.is_left as usize;
            frak_l += f.is_frak_l as usize;
            frak_r += f.is_frak_r as usize;
        }
        let total = ps.len();
        pass &= 8 * left >= total && 4 * frak_l >= total && 2 * frak_r >= total;
        parts.push(format!("n={n}: {left}/{frak_l}/{frak_r} of {total}"));
    }
    verdict(pass, parts.join("; "))
}

fn pattern_law() -> Verdict {
    use PatternType::{I, II};
    let pp = default_pattern_pair(2).unwrap();
    let mut descriptors = 0;
    let mut kernels = 0;
    let mut bad = Vec::new();
    for total in 1..=8usize {
        for a in 0..=total {
            let b = total - a;
            for n_ii in 0..=total {
                // type II patterns fill the first slots of the tour
                let types: Vec<PatternType> = (0..total).map(|i| if i < n_ii { II } else { I }).collect();
                let p = pattern_comb(&types[..a], &types[a..], &pp).unwrap();
                let desc = local_shell(&p, &pp).unwrap();
                descriptors += 1;
                let members = shell_class_members(&desc, &pp).unwrap();
                let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
                let key = desc.key();
                for m in &members {
                    let md = local_shell(m, &pp).unwrap();
                    if md.key() != key {
                        bad.push(format!("member outside class ({a},{b},{n_ii})"));
                    }
                    *counts.entry(md.n_i_1).or_default() += 1;
                }
                for k in 0..=desc.s1.len() {
                    let direct = BigRational::new(
                        BigInt::from(counts.get(&k).copied().unwrap_or(0)),
                        BigInt::from(members.len()),
                    );
                    if direct != redistribution_law(&desc, k) {
                        bad.push(format!("law ({a},{b},{n_ii}) k={k}"));
                    }
                }
                if members.len() <= 20 {
                    let kern = resample_kernel(&desc, &pp).unwrap();
                    kernels += 1;
                    let u = BigRational::new(1.into(), BigInt::from(members.len()));
                    let uniform = kern.matrix.iter().flatten().all(|x| *x == u);
                    if !uniform || !kern.preserves_uniform() {
                        bad.push(format!("kernel ({a},{b},{n_ii})"));
                    }
                }
            }
        }
    }
    let p = pattern_comb(&[II], &[I], &pp).unwrap();
    let draws = 100_000;
    let hist = resample_histogram(&p, &pp, 0x5eed, draws).unwrap();
    let half = BigRational::new(1.into(), 2.into());
    let z = z_score(hist.get(&1).copied().unwrap_or(0), draws, &half);
    let first: Vec<&String> = bad.iter().take(3).collect();
    verdict(
        bad.is_empty() && z.abs() <= 3.0,
        format!("{descriptors} descriptors, {kernels} kernels, failures {first:?}; Monte Carlo z = {z:.3}"),
    )
}

fn snake_substrate() -> Verdict {
    let mut notes = Vec::new();
    let mut reconcile = true;
    for m in (1..=11).step_by(2) {
        let s = closing_stats(2, m, &EnumOptions::default()).unwrap();
        for k in 0..=m {
            let st = stratum_totals(2, k, m).unwrap();
            // each (first part, second part) pair is the decomposition of a
            // walk and of its reversal
            let cl = s.closing_by_first_part.get(&k).copied().unwrap_or(0);
            let all = s.walks_by_first_part.get(&k).copied().unwrap_or(0);
            if 2 * st.closing != cl || 2 * st.second_parts != all {
                reconcile = false;
                notes.push(format!("m={m} k={k}"));
            }
        }
    }
    let mut concatenations = 0;
    let mut concat_ok = true;
    for d in [2, 3] {
        let max = if d == 2 { 4 } else { 3 };
        for a in 1..=max {
            for b in 1..=max {
                let gammas = first_parts(d, b).unwrap();
                for phi in first_parts(d, a).unwrap() {
                    let mut outs = HashSet::new();
                    for g in gammas.iter().filter(|g| avoids(g.vertices(), phi.vertices())) {
                        let w = reflect_concatenate(&phi, g).unwrap();
                        concatenations += 1;
                        concat_ok &= w.is_self_avoiding() && w.len() == a + b + 1;
                        concat_ok &= outs.insert(w.vertices().to_vec());
                    }
                }
            }
        }
    }
    let (mut identity, mut doubled, mut firsts) = (0, 0, 0);
    let mut bounds = true;
    for phi in first_parts(2, 4).unwrap() {
        if !is_extendable(&phi, 9).unwrap() {
            continue;
        }
        firsts += 1;
        let c = avoidance_extension_counts(&phi, 9, 4).unwrap();
        identity += (c.a_tmp == c.walks_with_first_part) as usize;
        doubled += (2 * c.a_tmp == c.walks_with_first_part
            && extensions(&phi, 9).unwrap().second_parts == c.a_tmp) as usize;
        bounds &= c.monotone
            && c.max_closed <= 4
            && 4 * c.concatenated >= c.w_tmp
            && c.walks_from_reversal >= c.concatenated;
    }
    let pass = reconcile && concat_ok && bounds && identity == firsts;
    verdict(
        pass,
        format!(
            "census reconcile {} {notes:?}; {concatenations} concatenations ok={concat_ok}; \
             (9,4): |A_tmp| = #walks with first part phi for {identity}/{firsts}, \
             2|A_tmp| = #walks for {doubled}/{firsts}; bounds ok={bounds}",
            if reconcile { "ok" } else { "FAILED" }
        ),
    )
}

fn edge3_checks() -> Verdict {
    let mut bad = Vec::new();
    for (d, max) in [(2, 8), (3, 6)] {
        let w = enumerate_edge3(d, max, Edge3Kind::Walks, false, &EnumOptions::default()).unwrap();
        for n in 1..=max {
            if w.walks[n] != common::edge3_walk_count(d, n) {
                bad.push(format!("c_hat d={d} n={n}"));
            }
        }
        for n in (2..=max).step_by(2) {
            let p = enumerate_edge3(d, n, Edge3Kind::Polygons, false, &EnumOptions::default()).unwrap();
            if p.polygons[&n] != common::edge3_polygon_keys(d, n).len() as u64
                || p.closing[n] != common::edge3_closing_count(d, n)
            {
                bad.push(format!("p_hat d={d} n={n}"));
            }
        }
    }
    let mut identity = Vec::new();
    for d in [2, 3] {
        for n in [2, 4, 6] {
            let r = edge3_closing_identity(d, n, &EnumOptions::default()).unwrap();
            if !r.holds {
                identity.push(format!(
                    "d={d} n={n}: {} closing vs 2n p_hat = {}",
                    r.closing_walks,
                    2 * n as u64 * r.polygons
                ));
            }
        }
    }
    let mut swept = 0;
    for (d, max) in [(2, 10), (3, 8)] {
        for n in (2..=max).step_by(2) {
            let ps = enumerate_edge3(d, n, Edge3Kind::Polygons, true, &EnumOptions::default())
                .unwrap()
                .objects
                .unwrap();
            for p in ps {
                swept += 1;
                let r = projection_report(&p);
                if !(r.loomis_whitney && r.vertex_bound && r.max_bound) {
                    bad.push(format!("projection d={d} n={n}"));
                }
            }
        }
    }
    let mut joins = 0;
    for d in [2, 3] {
        let small: Vec<Edge3Polygon> = [2, 4, 6]
            .into_iter()
            .flat_map(|n| {
                enumerate_edge3(d, n, Edge3Kind::Polygons, true, &EnumOptions::default())
                    .unwrap()
                    .objects
                    .unwrap()
            })
            .collect();
        for a in &small {
            for b in &small {
                joins += 1;
                let ok = simple_join_3e(a, b).ok().is_some_and(|j| {
                    j.polygon.len() == a.len() + b.len() + 2
                        && split_junction(&j.walk, &j.junction).is_ok_and(|(x, y)| {
                            Edge3Polygon::from_closed_walk(&x).ok().as_ref() == Some(a)
                                && Edge3Polygon::from_closed_walk(&y).ok().as_ref() == Some(b)
                        })
                });
                if !ok {
                    bad.push(format!("join d={d} {}+{}", a.len(), b.len()));
                }
            }
        }
    }
    let first: Vec<&String> = bad.iter().take(3).collect();
    verdict(
        bad.is_empty() && identity.is_empty(),
        format!(
            "oracle/projection/join failures {} {first:?} ({swept} polygons, {joins} joins); closing identity failures {identity:?}",
            bad.len()
        ),
    )
}

fn determinism(suite: Duration) -> Verdict {
    let all = vec![Target::Walks, Target::Polygons, Target::Closing, Target::Bridges];
    let mut same = true;
    for (d, n) in [(2, 12), (3, 8)] {
        let mut targets = all.clone();
        if d == 2 {
            targets.push(Target::HalfSpace);
        }
        let sharded = census(d, n, targets.clone(), EnumOptions::default());
        let mut two = EnumOptions::default();
        two.shard_depth = 2;
        let shallow = census(d, n, targets.clone(), two);
        let serial = census(d, n, targets, EnumOptions::serial());
        same &= sharded == serial && shallow == serial;
    }
    for (d, n) in [(2, 8), (3, 6)] {
        for kind in [Edge3Kind::Walks, Edge3Kind::Polygons] {
            let a = enumerate_edge3(d, n, kind, true, &EnumOptions::default()).unwrap();
            let b = enumerate_edge3(d, n, kind, true, &EnumOptions::serial()).unwrap();
            same &= a == b;
        }
    }
    let fast = suite <= Duration::from_secs(15 * 60);
    verdict(
        same && fast,
        format!("sharded equals serial: {same}; suite {:.1}s (limit 900s)", suite.as_secs_f64()),
    )
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<(&str, fn() -> Verdict)> = vec![
        ("census identities", census_identities),
        ("closing probability identity", closing_identity),
        ("submultiplicativity and polygon supermultiplicativity", basic_inequalities),
        ("stratified closing counts", stratification),
        ("Madras join", madras),
        ("regulation join counts", rgj_counts),
        ("regulation join prefix law", prefix_law),
        ("reflection split maps and unfolding", split_maps),
        ("left and right class fractions", class_fractions),
        ("pattern redistribution law", pattern_law),
        ("snake substrate", snake_substrate),
        ("3-edge model", edge3_checks),
    ];
    let mut failed = 0;
    let mut line = |i: usize, name: &str, v: Verdict, t: Duration| {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        failed += !v.pass as usize;
        println!("{tag} {i:>2} {name} [{:.1}s]: {}", t.as_secs_f64(), v.detail);
    };
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let v = f();
        line(i + 1, name, v, t.elapsed());
    }
    let t = Instant::now();
    let v = determinism(start.elapsed());
    line(13, "sharded determinism and suite time", v, t.elapsed());
    println!("{failed} of 13 criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
