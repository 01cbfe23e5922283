//! Exhaustive enumeration of self-avoiding walks and polygons.
//!
//! The engine is a depth-first search over a flat occupancy grid. Work can be
//! split by fixed-depth prefixes; shards are merged in prefix order, so a
//! sharded run, serial or parallel, produces exactly the serial result.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{pow_ge, Exponent};
use crate::error::{contract, Error, Result};
use crate::geometry::{Edge, Point};
use crate::paths::{first_part_len, Polygon, Walk};

/// Depth and memory bounds for exhaustive enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_count_depth: usize,
    pub max_collect_depth: usize,
    pub max_mem_bytes: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_count_depth: 20,
            max_collect_depth: 14,
            max_mem_bytes: 4 << 30,
        }
    }
}

impl Limits {
    /// Defaults, with the memory bound read from `SAW_FORGE_MAX_MEM` when set.
    pub fn from_env() -> Limits {
        let mut l = Limits::default();
        if let Some(v) = std::env::var("SAW_FORGE_MAX_MEM")
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
        {
            l.max_mem_bytes = v;
        }
        l
    }

    pub(crate) fn check_count(&self, n: usize) -> Result<()> {
        if n > self.max_count_depth {
            return Err(Error::Resource(format!(
                "length {n} exceeds counting bound {}",
                self.max_count_depth
            )));
        }
        Ok(())
    }

    /// Refuses object collection that is too deep or whose worst-case
    /// footprint exceeds the memory bound.
    pub(crate) fn check_collect(&self, d: usize, n: usize) -> Result<()> {
        if n > self.max_collect_depth {
            return Err(Error::Resource(format!(
                "length {n} exceeds collection bound {}",
                self.max_collect_depth
            )));
        }
        let bound = (2 * d) as f64 * ((2 * d - 1) as f64).powi(n.saturating_sub(1) as i32);
        let bytes = bound * ((n + 1) * std::mem::size_of::<Point>()) as f64;
        if bytes > self.max_mem_bytes as f64 {
            return Err(Error::Resource(format!(
                "collecting walks of length {n} in d={d} may need {:.0} bytes",
                bytes
            )));
        }
        Ok(())
    }
}

/// How an enumeration is executed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Prefix length used to split the search; 0 runs one serial search.
    pub shard_depth: usize,
    pub parallel: bool,
    pub limits: Limits,
}

impl Default for EnumOptions {
    fn default() -> EnumOptions {
        EnumOptions {
            shard_depth: 4,
            parallel: true,
            limits: Limits::from_env(),
        }
    }
}

impl EnumOptions {
    pub fn serial() -> EnumOptions {
        EnumOptions {
            shard_depth: 0,
            parallel: false,
            limits: Limits::from_env(),
        }
    }
}

/// A per-shard accumulator for the walk search.
pub(crate) trait WalkVisitor: Send {
    /// Called on every walk reached; returning false prunes its extensions.
    fn visit(&mut self, path: &[Point]) -> bool;
    fn merge(&mut self, other: Self);
}

struct Grid {
    d: usize,
    radius: i32,
    side: usize,
    occupied: Vec<bool>,
}

impl Grid {
    fn new(d: usize, radius: usize) -> Grid {
        let side = 2 * radius + 3;
        Grid {
            d,
            radius: radius as i32 + 1,
            side,
            occupied: vec![false; side.pow(d as u32)],
        }
    }

    #[inline]
    fn index(&self, p: &Point) -> usize {
        let mut idx = 0usize;
        for i in (0..self.d).rev() {
            idx = idx * self.side + (p.coord(i) + self.radius) as usize;
        }
        idx
    }
}

fn dfs<V: WalkVisitor>(
    grid: &mut Grid,
    units: &[Point],
    path: &mut Vec<Point>,
    n: usize,
    visitor: &mut V,
) {
    if !visitor.visit(path) || path.len() > n {
        return;
    }
    let tip = *path.last().unwrap();
    for &u in units {
        let q = tip + u;
        let idx = grid.index(&q);
        if grid.occupied[idx] {
            continue;
        }
        grid.occupied[idx] = true;
        path.push(q);
        dfs(grid, units, path, n, visitor);
        path.pop();
        grid.occupied[idx] = false;
    }
}

/// Runs `visitor` over every self-avoiding walk of length at most `n` that
/// extends `prefix`, including the prefix itself.
pub(crate) fn search_from<V: WalkVisitor>(d: usize, n: usize, prefix: &[Point], visitor: &mut V) {
    let mut grid = Grid::new(d, n.max(prefix.len()));
    for p in prefix {
        let i = grid.index(p);
        grid.occupied[i] = true;
    }
    let units = Point::units(d);
    let mut path = prefix.to_vec();
    dfs(&mut grid, &units, &mut path, n, visitor);
}

struct Prefixes {
    depth: usize,
    out: Vec<Vec<Point>>,
}

impl WalkVisitor for Prefixes {
    fn visit(&mut self, path: &[Point]) -> bool {
        if path.len() == self.depth + 1 {
            self.out.push(path.to_vec());
            return false;
        }
        true
    }
    fn merge(&mut self, other: Self) {
        self.out.extend(other.out);
    }
}

/// Walks of length exactly `depth` from the origin, in search order.
pub(crate) fn prefixes(d: usize, depth: usize) -> Vec<Vec<Point>> {
    let mut p = Prefixes {
        depth,
        out: Vec::new(),
    };
    search_from(d, depth, &[Point::origin(d)], &mut p);
    p.out
}

/// A visitor that only forwards walks shorter than a cutoff.
struct Below<'a, V> {
    cutoff: usize,
    inner: &'a mut V,
}

impl<V: WalkVisitor> WalkVisitor for Below<'_, V> {
    fn visit(&mut self, path: &[Point]) -> bool {
        if path.len() > self.cutoff {
            return false;
        }
        self.inner.visit(path)
    }
    fn merge(&mut self, _: Self) {}
}

/// Runs a search over all self-avoiding walks of length at most `n` from
/// the origin, split into prefix shards according to `opts`.
pub(crate) fn run_search<V, F>(d: usize, n: usize, opts: &EnumOptions, make: F) -> V
where
    V: WalkVisitor,
    F: Fn() -> V + Sync,
{
    let depth = opts.shard_depth;
    if depth == 0 || depth >= n {
        let mut v = make();
        search_from(d, n, &[Point::origin(d)], &mut v);
        return v;
    }
    let mut head = make();
    {
        let mut below = Below {
            cutoff: depth,
            inner: &mut head,
        };
        search_from(d, depth, &[Point::origin(d)], &mut below);
    }
    let shards = prefixes(d, depth);
    let run = |p: &Vec<Point>| {
        let mut v = make();
        search_from(d, n, p, &mut v);
        v
    };
    let parts: Vec<V> = if opts.parallel {
        shards.par_iter().map(run).collect()
    } else {
        shards.iter().map(run).collect()
    };
    for p in parts {
        head.merge(p);
    }
    head
}

/// Exact walk counts `c_0..c_n`, with the length-`n` walks when collected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCensus {
    pub d: usize,
    pub counts: Vec<u64>,
    pub walks: Option<Vec<Walk>>,
}

struct CountWalks {
    n: usize,
    counts: Vec<u64>,
    collect: bool,
    walks: Vec<Walk>,
}

impl WalkVisitor for CountWalks {
    fn visit(&mut self, path: &[Point]) -> bool {
        let len = path.len() - 1;
        self.counts[len] += 1;
        if self.collect && len == self.n {
            self.walks.push(Walk::from_raw(path.to_vec()));
        }
        true
    }
    fn merge(&mut self, other: Self) {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.walks.extend(other.walks);
    }
}

fn check_dim(d: usize) -> Result<()> {
    if !(2..=crate::geometry::MAX_DIM).contains(&d) {
        return contract(format!("dimension {d} unsupported"));
    }
    Ok(())
}

/// Counts self-avoiding walks from the origin of every length up to `n`.
pub fn enumerate_walks(d: usize, n: usize, collect: bool, opts: &EnumOptions) -> Result<WalkCensus> {
    check_dim(d)?;
    opts.limits.check_count(n)?;
    if collect {
        opts.limits.check_collect(d, n)?;
    }
    let v = run_search(d, n, opts, || CountWalks {
        n,
        counts: vec![0; n + 1],
        collect,
        walks: Vec::new(),
    });
    Ok(WalkCensus {
        d,
        counts: v.counts,
        walks: collect.then_some(v.walks),
    })
}

/// Exact polygon counts `p_k` for even `4 <= k <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonCensus {
    pub d: usize,
    pub counts: BTreeMap<usize, u64>,
    /// Canonical polygons of length `n`, sorted, when collected.
    pub polygons: Option<Vec<Polygon>>,
}

struct ClosingPolygons {
    n: usize,
    sets: BTreeMap<usize, BTreeSet<Polygon>>,
}

/// Canonical polygon of a closing self-avoiding walk of length at least 3.
pub(crate) fn canonical_polygon_of(path: &[Point]) -> Polygon {
    let mut edges: Vec<Edge> = path.windows(2).map(|w| Edge::between(w[0], w[1])).collect();
    edges.push(Edge::between(path[path.len() - 1], path[0]));
    let ne = *path.iter().max().unwrap();
    let mut edges: Vec<Edge> = edges.into_iter().map(|e| e.translate(-ne)).collect();
    edges.sort();
    Polygon::from_sorted_unchecked(edges)
}

impl WalkVisitor for ClosingPolygons {
    fn visit(&mut self, path: &[Point]) -> bool {
        let len = path.len() - 1;
        if len >= 3 && len % 2 == 1 && path[len].is_adjacent(&path[0]) {
            self.sets
                .entry(len + 1)
                .or_default()
                .insert(canonical_polygon_of(path));
        }
        // a walk that cannot return next to the origin in time is useless
        let remaining = self.n as i32 - 1 - len as i32;
        path[len].l1() - 1 <= remaining
    }
    fn merge(&mut self, other: Self) {
        for (k, s) in other.sets {
            self.sets.entry(k).or_default().extend(s);
        }
    }
}

/// Counts polygons of every even length `4..=n` by quotienting closing
/// walks by translation.
pub fn enumerate_polygons(d: usize, n: usize, collect: bool, opts: &EnumOptions) -> Result<PolygonCensus> {
    check_dim(d)?;
    if n % 2 == 1 || n < 4 {
        return contract("polygon length must be even and at least 4");
    }
    opts.limits.check_count(n)?;
    if collect {
        opts.limits.check_collect(d, n)?;
    }
    let v = run_search(d, n - 1, opts, || ClosingPolygons {
        n,
        sets: BTreeMap::new(),
    });
    let mut counts: BTreeMap<usize, u64> = (4..=n).step_by(2).map(|k| (k, 0)).collect();
    for (k, s) in &v.sets {
        counts.insert(*k, s.len() as u64);
    }
    let polygons = if collect {
        Some(v.sets.get(&n).map(|s| s.iter().cloned().collect()).unwrap_or_default())
    } else {
        None
    };
    Ok(PolygonCensus { d, counts, polygons })
}

/// Canonical polygons of length exactly `n`, sorted.
pub fn polygons(d: usize, n: usize) -> Result<Vec<Polygon>> {
    let c = enumerate_polygons(d, n, true, &EnumOptions::default())?;
    Ok(c.polygons.unwrap())
}

/// Closing statistics at odd length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosingStats {
    pub d: usize,
    pub n: usize,
    pub walks: u64,
    pub closing: u64,
    /// `W_n(closes)` in lowest terms.
    pub probability: BigRational,
    /// Closing walks by first-part length.
    pub closing_by_first_part: BTreeMap<usize, u64>,
    /// All walks by first-part length.
    pub walks_by_first_part: BTreeMap<usize, u64>,
}

struct Closing {
    n: usize,
    walks: u64,
    closing: u64,
    by_first: Vec<u64>,
    all_by_first: Vec<u64>,
}

impl WalkVisitor for Closing {
    fn visit(&mut self, path: &[Point]) -> bool {
        if path.len() - 1 < self.n {
            return true;
        }
        self.walks += 1;
        let k = first_part_len(path);
        self.all_by_first[k] += 1;
        if path[self.n].is_adjacent(&path[0]) {
            self.closing += 1;
            self.by_first[k] += 1;
        }
        false
    }
    fn merge(&mut self, other: Self) {
        self.walks += other.walks;
        self.closing += other.closing;
        for (a, b) in self.by_first.iter_mut().zip(other.by_first) {
            *a += b;
        }
        for (a, b) in self.all_by_first.iter_mut().zip(other.all_by_first) {
            *a += b;
        }
    }
}

/// Exact closing probability at odd `n`, stratified by first-part length.
pub fn closing_stats(d: usize, n: usize, opts: &EnumOptions) -> Result<ClosingStats> {
    check_dim(d)?;
    if n % 2 == 0 {
        return contract("closing statistics need odd n");
    }
    opts.limits.check_count(n)?;
    let v = run_search(d, n, opts, || Closing {
        n,
        walks: 0,
        closing: 0,
        by_first: vec![0; n + 1],
        all_by_first: vec![0; n + 1],
    });
    let to_map = |v: Vec<u64>| -> BTreeMap<usize, u64> {
        v.into_iter().enumerate().filter(|(_, c)| *c > 0).collect()
    };
    Ok(ClosingStats {
        d,
        n,
        walks: v.walks,
        closing: v.closing,
        probability: BigRational::new(v.closing.into(), v.walks.into()),
        closing_by_first_part: to_map(v.by_first),
        walks_by_first_part: to_map(v.all_by_first),
    })
}

/// True iff `w` is a returning half-space walk: it stays weakly below the
/// line through its start, goes strictly below it, ends on it, and after its
/// last visit to the lowest level it meets that line only at the endpoint.
pub fn is_returning_half_space(v: &[Point]) -> bool {
    let n = v.len() - 1;
    let y0 = v[0].y();
    if n == 0 || v.iter().any(|p| p.y() > y0) || v[n].y() != y0 {
        return false;
    }
    let ymin = v.iter().map(|p| p.y()).min().unwrap();
    if ymin == y0 {
        return false;
    }
    let j = (0..=n).rev().find(|&i| v[i].y() == ymin).unwrap();
    (j + 1..n).all(|i| v[i].y() != y0)
}

/// True iff the start of `w` has maximal `y` and the endpoint alone
/// attains the minimal `y`.
pub fn is_bridge(v: &[Point]) -> bool {
    let y0 = v[0].y();
    let yn = v[v.len() - 1].y();
    v.iter().all(|p| p.y() <= y0) && v[..v.len() - 1].iter().all(|p| p.y() > yn)
}

struct Filtered<F: Fn(&[Point]) -> bool + Send> {
    n: usize,
    pred: F,
    count: u64,
    collect: bool,
    walks: Vec<Walk>,
}

impl<F: Fn(&[Point]) -> bool + Send> WalkVisitor for Filtered<F> {
    fn visit(&mut self, path: &[Point]) -> bool {
        if path.len() - 1 < self.n {
            return true;
        }
        if (self.pred)(path) {
            self.count += 1;
            if self.collect {
                self.walks.push(Walk::from_raw(path.to_vec()));
            }
        }
        false
    }
    fn merge(&mut self, other: Self) {
        self.count += other.count;
        self.walks.extend(other.walks);
    }
}

/// Count (and optionally the objects) of length-`n` walks satisfying `pred`.
pub fn count_walks_where<F>(
    d: usize,
    n: usize,
    collect: bool,
    opts: &EnumOptions,
    pred: F,
) -> Result<(u64, Vec<Walk>)>
where
    F: Fn(&[Point]) -> bool + Send + Sync + Clone,
{
    check_dim(d)?;
    opts.limits.check_count(n)?;
    if collect {
        opts.limits.check_collect(d, n)?;
    }
    let v = run_search(d, n, opts, || Filtered {
        n,
        pred: pred.clone(),
        count: 0,
        collect,
        walks: Vec::new(),
    });
    Ok((v.count, v.walks))
}

/// Returning half-space walks of length `n` in the plane.
pub fn enumerate_half_space_returning(n: usize, collect: bool, opts: &EnumOptions) -> Result<(u64, Vec<Walk>)> {
    count_walks_where(2, n, collect, opts, is_returning_half_space)
}

/// Bridges of length `n`.
pub fn enumerate_bridges(d: usize, n: usize, collect: bool, opts: &EnumOptions) -> Result<(u64, Vec<Walk>)> {
    count_walks_where(d, n, collect, opts, is_bridge)
}

/// Which quantities a census run computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Walks,
    Polygons,
    Closing,
    HalfSpace,
    Bridges,
}

/// A census request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationJob {
    pub d: usize,
    pub max_n: usize,
    pub targets: Vec<Target>,
    pub options: EnumOptions,
}

/// Exact per-length counts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusTable {
    pub d: usize,
    pub walks: BTreeMap<usize, u64>,
    pub polygons: BTreeMap<usize, u64>,
    pub closing: BTreeMap<usize, ClosingStats>,
    pub half_space_returning: BTreeMap<usize, u64>,
    pub bridges: BTreeMap<usize, u64>,
}

/// Runs every requested target up to `max_n`.
pub fn build_census(job: &EnumerationJob) -> Result<CensusTable> {
    let (d, n, o) = (job.d, job.max_n, &job.options);
    if o.shard_depth > n.max(1) && o.shard_depth != 0 {
        return contract("shard depth exceeds max_n");
    }
    let mut t = CensusTable {
        d,
        ..Default::default()
    };
    for target in &job.targets {
        match target {
            Target::Walks => {
                let w = enumerate_walks(d, n, false, o)?;
                t.walks = w.counts.into_iter().enumerate().collect();
            }
            Target::Polygons => {
                if n >= 4 {
                    t.polygons = enumerate_polygons(d, n - n % 2, false, o)?.counts;
                }
            }
            Target::Closing => {
                for k in (1..=n).step_by(2) {
                    t.closing.insert(k, closing_stats(d, k, o)?);
                }
            }
            Target::HalfSpace => {
                if d != 2 {
                    return Err(Error::Unsupported("half-space walks are planar".into()));
                }
                for k in 1..=n {
                    t.half_space_returning
                        .insert(k, enumerate_half_space_returning(k, false, o)?.0);
                }
            }
            Target::Bridges => {
                for k in 0..=n {
                    t.bridges.insert(k, enumerate_bridges(d, k, false, o)?.0);
                }
            }
        }
    }
    Ok(t)
}

/// Per-length exponent estimates for a supplied connective constant.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentRow {
    pub n: usize,
    pub c_n: Option<u64>,
    pub p_n: Option<u64>,
    /// `-log(p_n mu^-n) / log n`.
    pub theta: Option<f64>,
    /// `log(c_n mu^-n) / log n`.
    pub xi: Option<f64>,
    /// `p_n >= n^-zeta mu^n`, decided exactly.
    pub high_polygon_number: Option<bool>,
    /// Set when `c_n < mu^n`, so that `xi_n < 0`.
    pub xi_negative: bool,
}

/// Exponent report for the counts in `table`.
pub fn exponent_report(table: &CensusTable, mu: &BigRational, zeta: &Exponent) -> Result<Vec<ExponentRow>> {
    if !mu.is_positive() {
        return contract("mu must be positive");
    }
    let mu_f = mu.numer().to_f64().unwrap() / mu.denom().to_f64().unwrap();
    let mut ns: BTreeSet<usize> = table.walks.keys().copied().collect();
    ns.extend(table.polygons.keys().copied());
    let mut rows = Vec::new();
    for n in ns.into_iter().filter(|&n| n >= 2) {
        let c_n = table.walks.get(&n).copied();
        let p_n = table.polygons.get(&n).copied();
        let ln = (n as f64).ln();
        let mu_n = mu_pow(mu, n);
        let theta = p_n.map(|p| -((p as f64).ln() - n as f64 * mu_f.ln()) / ln);
        let xi = c_n.map(|c| ((c as f64).ln() - n as f64 * mu_f.ln()) / ln);
        let hpn = p_n.map(|p| {
            // p * n^zeta >= mu^n
            let lhs = BigRational::from_integer(BigInt::from(p));
            pow_ge(&lhs, n as u64, zeta, &mu_n)
        });
        let xi_negative = c_n.is_some_and(|c| BigRational::from_integer(BigInt::from(c)) < mu_n);
        rows.push(ExponentRow {
            n,
            c_n,
            p_n,
            theta,
            xi,
            high_polygon_number: hpn,
            xi_negative,
        });
    }
    Ok(rows)
}

fn mu_pow(mu: &BigRational, n: usize) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..n {
        r *= mu;
    }
    if r.is_zero() {
        unreachable!()
    }
    r
}
