//! First parts, conditional closing probabilities, charming indices and the
//! reflection-concatenation construction.
//!
//! Walks here have their maximal vertex at the origin. A walk is split at that
//! vertex into two outward walks; the first part is the one whose vertex list
//! is larger. Every pair `(gamma, phi)` of first and second part comes from
//! exactly two walks, `reverse(gamma) ++ phi` and its reversal, so conditional
//! laws given the first part can be computed on second parts alone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{ceil_pow_div, floor_pow, pow_cmp, pow_ge, Exponent};
use crate::census::{closing_stats, search_from, EnumOptions, WalkVisitor};
use crate::error::{contract, Error, Result};
use crate::geometry::Point;
use crate::paths::{first_part_len, two_part_decompose, Walk};

fn check_dim(d: usize) -> Result<()> {
    if !(2..=4).contains(&d) {
        return contract(format!("dimension {d} outside 2..=4"));
    }
    Ok(())
}

struct Collect {
    n: usize,
    origin: Point,
    out: Vec<Walk>,
}

impl WalkVisitor for Collect {
    fn visit(&mut self, path: &[Point]) -> bool {
        if path.len() > 1 && *path.last().unwrap() > self.origin {
            return false;
        }
        if path.len() == self.n + 1 {
            self.out.push(Walk::from_raw(path.to_vec()));
            return false;
        }
        true
    }
    fn merge(&mut self, other: Self) {
        self.out.extend(other.out);
    }
}

/// Walks of length `n` from the origin whose maximal vertex is the origin,
/// in search order.
pub fn first_parts(d: usize, n: usize) -> Result<Vec<Walk>> {
    check_dim(d)?;
    let origin = Point::origin(d);
    let mut v = Collect {
        n,
        origin,
        out: Vec::new(),
    };
    search_from(d, n, &[origin], &mut v);
    Ok(v.out)
}

/// Counts of the second parts completing a first part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extensions {
    /// Second parts `phi` of length `m - |gamma|` with `[gamma, phi]` a
    /// two-part decomposition.
    pub second_parts: u64,
    /// Those for which the joined walk closes.
    pub closing: u64,
}

impl Extensions {
    /// `q = closing / second_parts`, or an error when there are none.
    pub fn probability(&self) -> Result<BigRational> {
        if self.second_parts == 0 {
            return Err(Error::UndefinedConditional(
                "the first part has no extension of this length".into(),
            ));
        }
        Ok(BigRational::new(
            BigInt::from(self.closing),
            BigInt::from(self.second_parts),
        ))
    }
}

struct Extend<'a> {
    gamma: &'a [Point],
    m: usize,
    origin: Point,
    ext: Extensions,
}

impl WalkVisitor for Extend<'_> {
    fn visit(&mut self, path: &[Point]) -> bool {
        let k = self.gamma.len() - 1;
        if path.len() > k + 1 && *path.last().unwrap() > self.origin {
            return false;
        }
        if path.len() < self.m + 1 {
            return true;
        }
        let phi = &path[k..];
        if self.gamma > phi {
            self.ext.second_parts += 1;
            if path[0].is_adjacent(&path[self.m]) {
                self.ext.closing += 1;
            }
        }
        false
    }
    fn merge(&mut self, other: Self) {
        self.ext.second_parts += other.ext.second_parts;
        self.ext.closing += other.ext.closing;
    }
}

fn check_first_part(gamma: &Walk) -> Result<()> {
    let v = gamma.vertices();
    let o = Point::origin(gamma.dim());
    if v[0] != o || v[1..].iter().any(|p| *p >= o) || !gamma.is_self_avoiding() {
        return contract("a first part starts at the origin, its maximal vertex");
    }
    Ok(())
}

/// Counts the walks `phi` of length `m - |gamma|` such that `[gamma, phi]`
/// is the two-part decomposition of a walk with maximal vertex the origin.
pub fn extensions(gamma: &Walk, m: usize) -> Result<Extensions> {
    check_first_part(gamma)?;
    let k = gamma.len();
    if m < k {
        return contract("the total length is shorter than the first part");
    }
    let d = gamma.dim();
    let mut prefix = gamma.vertices().to_vec();
    prefix.reverse();
    let mut v = Extend {
        gamma: gamma.vertices(),
        m,
        origin: Point::origin(d),
        ext: Extensions {
            second_parts: 0,
            closing: 0,
        },
    };
    search_from(d, m, &prefix, &mut v);
    Ok(v.ext)
}

/// Membership of `gamma` in the first parts extendable to length `m`.
pub fn is_extendable(gamma: &Walk, m: usize) -> Result<bool> {
    Ok(extensions(gamma, m)?.second_parts > 0)
}

/// Default bound on `m - k` for exhaustive extension.
pub const MAX_EXTENSION: usize = 14;

/// `q_{k,m}(gamma)`: the probability that a uniform walk of length `m` with
/// first part `gamma` closes.
pub fn conditional_closing(gamma: &Walk, m: usize) -> Result<BigRational> {
    if m.saturating_sub(gamma.len()) > MAX_EXTENSION {
        return Err(Error::Resource(format!(
            "extension length {} exceeds {MAX_EXTENSION}",
            m - gamma.len()
        )));
    }
    extensions(gamma, m)?.probability()
}

/// First parts in `First_{k,m}` with `q_{k,m} > m^{-alpha}`.
pub fn high_closing_set(d: usize, k: usize, m: usize, alpha: &Exponent) -> Result<Vec<Walk>> {
    let mut out = Vec::new();
    for g in first_parts(d, k)? {
        let e = extensions(&g, m)?;
        if e.second_parts == 0 {
            continue;
        }
        if exceeds_power(&e.probability()?, m, alpha) {
            out.push(g);
        }
    }
    Ok(out)
}

/// `q > n^{-alpha}`.
fn exceeds_power(q: &BigRational, n: usize, alpha: &Exponent) -> bool {
    pow_cmp(&BigRational::one(), n as u64, &-*alpha, q) == std::cmp::Ordering::Less
}

/// Per-first-part-length totals over `First_k`, to be set against the
/// stratified census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumTotals {
    pub k: usize,
    pub first_parts: usize,
    pub extendable: usize,
    pub second_parts: u64,
    pub closing: u64,
}

pub fn stratum_totals(d: usize, k: usize, m: usize) -> Result<StratumTotals> {
    let firsts = first_parts(d, k)?;
    let exts: Vec<Extensions> = firsts
        .par_iter()
        .map(|g| extensions(g, m))
        .collect::<Result<_>>()?;
    Ok(StratumTotals {
        k,
        first_parts: firsts.len(),
        extendable: exts.iter().filter(|e| e.second_parts > 0).count(),
        second_parts: exts.iter().map(|e| e.second_parts).sum(),
        closing: exts.iter().map(|e| e.closing).sum(),
    })
}

/// Snake parameters: exponents `alpha`, `beta`, `eta` and indices `n`, `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnakeConfig {
    #[serde(serialize_with = "ser_ratio")]
    pub alpha: Exponent,
    #[serde(serialize_with = "ser_ratio")]
    pub beta: Exponent,
    #[serde(serialize_with = "ser_ratio")]
    pub eta: Exponent,
    pub n: usize,
    pub l: usize,
}

fn ser_ratio<S: serde::Serializer>(r: &Exponent, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl SnakeConfig {
    pub fn new(alpha: Exponent, beta: Exponent, eta: Exponent, n: usize, l: usize) -> Result<SnakeConfig> {
        let zero = Exponent::zero();
        if alpha <= zero {
            return contract("alpha must be positive");
        }
        if !(zero < eta && eta < beta && beta <= Exponent::one()) {
            return contract("need 0 < eta < beta <= 1");
        }
        if n % 2 == 0 || l > n {
            return contract("need odd n and l <= n");
        }
        Ok(SnakeConfig { alpha, beta, eta, n, l })
    }

    /// `beta - eta - alpha`.
    pub fn delta(&self) -> Exponent {
        self.beta - self.eta - self.alpha
    }

    /// First index of the snake window `[l - floor(n^beta), l]`.
    pub fn window_start(&self) -> usize {
        self.l.saturating_sub(floor_pow(self.n as u64, &self.beta) as usize)
    }

    /// `ceil(n^{beta - eta} / 4)`.
    pub fn cs_threshold(&self) -> u64 {
        ceil_pow_div(self.n as u64, &(self.beta - self.eta), 4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharmingFlag {
    pub k: usize,
    /// `None` when the prefix has no extension of the required length.
    #[serde(serialize_with = "ser_opt_rational")]
    pub q: Option<BigRational>,
    pub charming: bool,
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharmingReport {
    pub flags: Vec<CharmingFlag>,
    /// Window indices skipped because `l - k` is odd.
    pub skipped_parity: Vec<usize>,
    pub charming_count: usize,
    pub threshold: u64,
    pub in_cs: bool,
}

/// Flags the indices `k` in the snake window at which `gamma` is charming:
/// a walk of length `k + n - l` with first part `gamma[0..=k]` closes with
/// probability above `n^{-alpha}`.
pub fn charming_indices(gamma: &Walk, cfg: &SnakeConfig) -> Result<CharmingReport> {
    check_first_part(gamma)?;
    if gamma.len() != cfg.l {
        return contract("the snake has length l");
    }
    if !is_extendable(gamma, cfg.n)? {
        return contract("the snake is not extendable to length n");
    }
    let ext = cfg.n - cfg.l;
    if ext > MAX_EXTENSION {
        return Err(Error::Resource(format!("extension length {ext} exceeds {MAX_EXTENSION}")));
    }
    let mut flags = Vec::new();
    let mut skipped_parity = Vec::new();
    for k in cfg.window_start()..=cfg.l {
        if (cfg.l - k) % 2 == 1 {
            skipped_parity.push(k);
            continue;
        }
        let prefix = gamma.sub(0, k);
        let e = extensions(&prefix, k + ext)?;
        let q = e.probability().ok();
        let charming = q.as_ref().is_some_and(|q| exceeds_power(q, cfg.n, &cfg.alpha));
        flags.push(CharmingFlag { k, q, charming });
    }
    let charming_count = flags.iter().filter(|f| f.charming).count();
    let threshold = cfg.cs_threshold();
    Ok(CharmingReport {
        flags,
        skipped_parity,
        charming_count,
        threshold,
        in_cs: charming_count as u64 >= threshold,
    })
}

/// The charming snake set among `First_{l,n}`.
pub fn charming_snakes(d: usize, cfg: &SnakeConfig) -> Result<Vec<Walk>> {
    let mut out = Vec::new();
    for g in first_parts(d, cfg.l)? {
        if is_extendable(&g, cfg.n)? && charming_indices(&g, cfg)?.in_cs {
            out.push(g);
        }
    }
    Ok(out)
}

/// True iff `w` starts at `gamma[0]` and shares no other vertex with `gamma`.
pub fn avoids(w: &[Point], gamma: &[Point]) -> bool {
    w[0] == gamma[0] && w[1..].iter().all(|p| !gamma.contains(p)) && !gamma[1..].contains(&w[0])
}

/// True iff `w` starts at `gamma[0]` and their endpoints are adjacent.
pub fn closes(w: &[Point], gamma: &[Point]) -> bool {
    w[0] == gamma[0] && w.last().unwrap().is_adjacent(gamma.last().unwrap())
}

fn reflection_axis(d: usize) -> usize {
    if d == 2 {
        1
    } else {
        0
    }
}

pub(crate) fn concatenate_reflected(phi: &Walk, gamma: &Walk) -> Result<Walk> {
    let d = phi.dim();
    let axis = reflection_axis(d);
    let up = Point::unit(d, axis, 1);
    let mut v: Vec<Point> = phi.vertices().iter().rev().copied().collect();
    for &p in gamma.vertices() {
        v.push(p.with_coord(axis, -p.coord(axis)) + up);
    }
    let w = Walk::new(v)?;
    if !w.is_self_avoiding() {
        return contract("the concatenated walk is not self-avoiding");
    }
    Ok(w)
}

/// `reverse(phi)`, then one step up, then the reflection of `gamma` in the
/// horizontal axis lifted by one (in `d >= 3`, the first coordinate plays
/// the vertical role).
pub fn reflect_concatenate(phi: &Walk, gamma: &Walk) -> Result<Walk> {
    check_dim(phi.dim())?;
    if phi.dim() != gamma.dim() {
        return Err(Error::DimensionMismatch(phi.dim(), gamma.dim()));
    }
    if phi.start() != Point::origin(phi.dim()) || !avoids(gamma.vertices(), phi.vertices()) {
        return contract("gamma must start at the origin and avoid phi");
    }
    concatenate_reflected(phi, gamma)
}

/// Index set where a stratum has few closing walks, with the cardinality
/// bound it should satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CloseCardAudit {
    pub n: usize,
    /// `W_n(closes) >= n^{-alpha'}`; when false the audit is vacuous.
    pub hypothesis: bool,
    pub violating: Vec<usize>,
    /// `|Q| <= 2 n^{1 - delta'}`.
    pub bound_holds: bool,
}

pub fn closecard_audit(d: usize, n: usize, alpha: &Exponent, delta: &Exponent, opts: &EnumOptions) -> Result<CloseCardAudit> {
    let st = closing_stats(d, n, opts)?;
    let one = BigRational::one();
    let hypothesis = pow_cmp(&one, n as u64, &-*alpha, &st.probability) != std::cmp::Ordering::Greater;
    let e = *alpha + *delta;
    let mut violating = Vec::new();
    for i in 0..=n {
        let all = BigRational::from_integer(st.walks_by_first_part.get(&i).copied().unwrap_or(0).into());
        let cl = BigRational::from_integer(st.closing_by_first_part.get(&i).copied().unwrap_or(0).into());
        if pow_cmp(&cl, n as u64, &e, &all) != std::cmp::Ordering::Greater {
            violating.push(i);
        }
    }
    let q = BigRational::from_integer(violating.len().into());
    let two = BigRational::from_integer(2.into());
    let bound_holds = pow_ge(&two, n as u64, &(Exponent::one() - *delta), &q);
    Ok(CloseCardAudit {
        n,
        hypothesis,
        violating,
        bound_holds,
    })
}

/// The counts behind the avoidance argument for a fixed first part `phi`
/// of length `l` and total length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AvoidanceCounts {
    /// Walks of length `n - l` from the origin with maximal vertex the origin.
    pub w_tmp: u64,
    /// Those avoiding `phi`.
    pub a_tmp: u64,
    /// `A_j`: those avoiding `phi[0..=j]`, for `j = 0..=l`.
    pub avoid_prefix: Vec<u64>,
    /// `C_j`: those closing `phi[0..=j]`.
    pub close_prefix: Vec<u64>,
    /// Every walk avoiding a longer prefix avoids each shorter one.
    pub monotone: bool,
    /// Largest number of prefixes closed by a single walk.
    pub max_closed: usize,
    /// Walks of length `n` with maximal vertex the origin and first part
    /// `phi`, enumerated directly.
    pub walks_with_first_part: u64,
    /// Walks of length `n` starting with `reverse(phi)`, enumerated directly.
    pub walks_from_reversal: u64,
    /// Distinct length-`n` walks obtained from `w_tmp` by reflection
    /// concatenation and dropping the final step.
    pub concatenated: u64,
}

struct Tmp<'a> {
    len: usize,
    origin: Point,
    phi: &'a [Point],
    out: Vec<Vec<Point>>,
}

impl WalkVisitor for Tmp<'_> {
    fn visit(&mut self, path: &[Point]) -> bool {
        if path.len() > 1 && *path.last().unwrap() > self.origin {
            return false;
        }
        if path.len() == self.len + 1 {
            self.out.push(path.to_vec());
            return false;
        }
        true
    }
    fn merge(&mut self, other: Self) {
        self.out.extend(other.out);
        let _ = self.phi;
    }
}

struct Count<F: FnMut(&[Point]) -> bool + Send> {
    n: usize,
    hits: u64,
    pred: F,
}

impl<F: FnMut(&[Point]) -> bool + Send> WalkVisitor for Count<F> {
    fn visit(&mut self, path: &[Point]) -> bool {
        if path.len() < self.n + 1 {
            return true;
        }
        if (self.pred)(path) {
            self.hits += 1;
        }
        false
    }
    fn merge(&mut self, other: Self) {
        self.hits += other.hits;
    }
}

pub fn avoidance_extension_counts(phi: &Walk, n: usize, l: usize) -> Result<AvoidanceCounts> {
    check_first_part(phi)?;
    if phi.len() != l || l > n {
        return contract("phi must have length l <= n");
    }
    if n - l > MAX_EXTENSION {
        return Err(Error::Resource(format!("extension length {} exceeds {MAX_EXTENSION}", n - l)));
    }
    let d = phi.dim();
    let origin = Point::origin(d);
    let pv = phi.vertices();
    let mut t = Tmp {
        len: n - l,
        origin,
        phi: pv,
        out: Vec::new(),
    };
    search_from(d, n - l, &[origin], &mut t);
    let w_tmp = t.out;
    let mut avoid_prefix = vec![0u64; l + 1];
    let mut close_prefix = vec![0u64; l + 1];
    let mut monotone = true;
    let mut max_closed = 0;
    for g in &w_tmp {
        let av: Vec<bool> = (0..=l).map(|j| avoids(g, &pv[..=j])).collect();
        let cl: Vec<bool> = (0..=l).map(|j| closes(g, &pv[..=j])).collect();
        for j in 0..=l {
            avoid_prefix[j] += av[j] as u64;
            close_prefix[j] += cl[j] as u64;
            if j > 0 && av[j] && !av[j - 1] {
                monotone = false;
            }
        }
        max_closed = max_closed.max(cl.iter().filter(|c| **c).count());
    }
    // walks of length n with first part phi, found among all walks from the
    // origin by translating their maximal vertex to the origin
    let mut walks = Count {
        n,
        hits: 0,
        pred: |path: &[Point]| {
            if first_part_len(path) != l {
                return false;
            }
            let w = Walk::from_raw(path.to_vec());
            let dec = two_part_decompose(&w);
            let shift = dec.first.start();
            dec.first.vertices().iter().map(|&q| q - shift).eq(pv.iter().copied())
        },
    };
    search_from(d, n, &[origin], &mut walks);
    let rev: Vec<Point> = pv.iter().rev().copied().collect();
    let mut from_rev = Count {
        n,
        hits: 0,
        pred: |_: &[Point]| true,
    };
    search_from(d, n, &rev, &mut from_rev);
    let mut outs = std::collections::BTreeSet::new();
    for g in &w_tmp {
        let w = concatenate_reflected(phi, &Walk::from_raw(g.clone()))?;
        let v = w.vertices();
        outs.insert(v[..v.len() - 1].to_vec());
    }
    Ok(AvoidanceCounts {
        w_tmp: w_tmp.len() as u64,
        a_tmp: avoid_prefix[l],
        avoid_prefix,
        close_prefix,
        monotone,
        max_closed,
        walks_with_first_part: walks.hits,
        walks_from_reversal: from_rev.hits,
        concatenated: outs.len() as u64,
    })
}

/// Both sides of the second-step snake bound, evaluated at desk scale.
/// Nothing is asserted: the hypothesis is not expected to hold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SnakeTheoremReport {
    pub d: usize,
    pub c: f64,
    pub big_k: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub delta: Exponent,
    /// `n >= K^{1/delta}`; false when `delta <= 0`.
    pub n_large_enough: bool,
    /// Exact probability that the length-`l` tour prefix of a uniform
    /// polygon of length `n + 1` is a charming snake.
    pub cs_probability: String,
    /// `c^{-n^delta / 2}`.
    pub hypothesis_threshold: f64,
    pub hypothesis_holds: bool,
    /// `2 (n + 1) c^{-n^delta / 2}`.
    pub closing_bound: f64,
    pub closing_probability: String,
}

pub fn snake_theorem_report(cfg: &SnakeConfig) -> Result<SnakeTheoremReport> {
    use crate::census::polygons;
    let d = 2;
    let c = 2f64.powf(1.0 / (5.0 * (4.0 * d as f64 + 1.0)));
    let big_k = 20.0 * (4.0 * d as f64 + 1.0) * (4.0 * d as f64).ln() / 2f64.ln();
    let delta = cfg.delta();
    let df = *delta.numer() as f64 / *delta.denom() as f64;
    let n = cfg.n as f64;
    let n_large_enough = df > 0.0 && n >= big_k.powf(1.0 / df);
    let polys = polygons(d, cfg.n + 1)?;
    let mut cache: BTreeMap<Vec<Point>, bool> = BTreeMap::new();
    let mut hits = 0u64;
    for p in &polys {
        let pre = p.tour()?[..=cfg.l].to_vec();
        let hit = match cache.get(&pre) {
            Some(h) => *h,
            None => {
                let w = Walk::from_raw(pre.clone());
                let h = is_extendable(&w, cfg.n)? && charming_indices(&w, cfg)?.in_cs;
                cache.insert(pre, h);
                h
            }
        };
        hits += hit as u64;
    }
    let prob = BigRational::new(BigInt::from(hits), BigInt::from(polys.len().max(1)));
    let threshold = c.powf(-n.powf(df) / 2.0);
    let pf = hits as f64 / polys.len().max(1) as f64;
    let st = closing_stats(d, cfg.n, &EnumOptions::default())?;
    Ok(SnakeTheoremReport {
        d,
        c,
        big_k,
        delta,
        n_large_enough,
        cs_probability: prob.to_string(),
        hypothesis_threshold: threshold,
        hypothesis_holds: pf >= threshold,
        closing_bound: 2.0 * (n + 1.0) * threshold,
        closing_probability: st.probability.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[(i32, i32)]) -> Walk {
        Walk::new(v.iter().map(|&(x, y)| Point::xy(x, y)).collect()).unwrap()
    }

    #[test]
    fn small_first_parts() {
        assert_eq!(first_parts(2, 0).unwrap().len(), 1);
        assert_eq!(first_parts(2, 1).unwrap().len(), 2);
        for g in first_parts(2, 4).unwrap() {
            assert!(g.vertices()[1..].iter().all(|p| *p < Point::origin(2)));
        }
    }

    #[test]
    fn one_step_closing() {
        // gamma = 0, -e1, -e1-e2: a single step from the origin closes only
        // by stepping to -e2
        let g = w(&[(0, 0), (-1, 0), (-1, -1)]);
        let e = extensions(&g, 3).unwrap();
        assert_eq!(e, Extensions { second_parts: 1, closing: 1 });
        assert_eq!(conditional_closing(&g, 3).unwrap(), BigRational::one());
        let straight = w(&[(0, 0), (-1, 0), (-2, 0)]);
        assert_eq!(conditional_closing(&straight, 3).unwrap(), BigRational::zero());
        assert!(matches!(
            conditional_closing(&w(&[(0, 0), (0, -1)]), 2),
            Err(Error::UndefinedConditional(_))
        ));
    }

    #[test]
    fn opposite_steps_concatenate() {
        let out = reflect_concatenate(&w(&[(0, 0), (-1, 0)]), &w(&[(0, 0), (1, 0)])).unwrap();
        assert_eq!(out.len(), 3);
        assert!(out.is_self_avoiding());
        assert!(reflect_concatenate(&w(&[(0, 0), (-1, 0)]), &w(&[(0, 0), (-1, 0)])).is_err());
    }

    #[test]
    fn config_bookkeeping() {
        let cfg = SnakeConfig::new(Exponent::new(1, 2), Exponent::one(), Exponent::new(1, 4), 9, 4).unwrap();
        assert_eq!(cfg.window_start(), 0);
        assert_eq!(cfg.cs_threshold(), 2);
        assert_eq!(cfg.delta(), Exponent::new(1, 4));
        assert!(SnakeConfig::new(Exponent::new(1, 2), Exponent::new(1, 4), Exponent::new(1, 2), 9, 4).is_err());
    }
}
