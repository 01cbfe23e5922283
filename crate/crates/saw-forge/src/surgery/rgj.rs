//! Globally Madras-joinable offsets and regulation join polygons.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::floor_sqrt_div;
use crate::census::polygons;
use crate::error::{contract, Result};
use crate::geometry::Point;
use crate::paths::Polygon;

use super::{classify_polygon, global_join_plaquettes, madras_join, JoinOutcome};

/// An offset `u` such that `a` and `b + u` are globally Madras joinable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongJoin {
    pub offset: Point,
    pub outcome: JoinOutcome,
}

/// Places `b` at height offset `k` and returns the unique horizontal offset
/// at which the pair is Madras joinable, with the join there.
pub(crate) fn joinable_at(a: &Polygon, b: &Polygon, k: i32) -> Result<(Point, JoinOutcome)> {
    let probe = madras_join(a, &b.translate(Point::xy(0, k)))?;
    let (t1, t2) = probe.shifts;
    let u = Point::xy(t1 + t2, k);
    let o = madras_join(a, &b.translate(u))?;
    debug_assert!(o.joinable);
    Ok((u, o))
}

pub(crate) fn junction_is_global(o: &JoinOutcome) -> Result<bool> {
    Ok(global_join_plaquettes(&o.result)?
        .iter()
        .any(|g| g.plaquette == o.junction))
}

/// All offsets at which `a` (a left polygon) and `b` (a right polygon) are
/// globally Madras joinable, one per admissible height.
pub fn strong_join_offsets(a: &Polygon, b: &Polygon) -> Result<Vec<StrongJoin>> {
    if !classify_polygon(a)?.is_frak_l || !classify_polygon(b)?.is_frak_r {
        return contract("strong join needs a left polygon and a right polygon");
    }
    let (ca, cb) = (a.compass(), b.compass());
    let lo = (ca.ymin - 1) - (cb.ymax + 1);
    let hi = (ca.ymax + 1) - (cb.ymin - 1);
    let mut out = Vec::new();
    for k in lo..=hi {
        let (u, o) = joinable_at(a, b, k)?;
        if junction_is_global(&o)? {
            out.push(StrongJoin {
                offset: u,
                outcome: o,
            });
        }
    }
    Ok(out)
}

/// Window divisor for regulation joins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RgjConfig {
    pub c_reg: u64,
}

impl Default for RgjConfig {
    fn default() -> RgjConfig {
        RgjConfig { c_reg: 10 }
    }
}

impl RgjConfig {
    /// `floor(sqrt(k) / c_reg)`.
    pub fn window(&self, k: usize) -> u64 {
        floor_sqrt_div(k as u64, self.c_reg)
    }
}

/// One construction step of a regulation join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgjEntry {
    /// Index into [`RgjReport::lefts`].
    pub left: usize,
    /// Index into [`RgjReport::rights`].
    pub right: usize,
    pub offset: Point,
    /// The joined polygon in canonical position.
    pub output: Polygon,
    pub global: bool,
    pub outcome: JoinOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgjReport {
    pub k: usize,
    pub l: usize,
    pub window: u64,
    pub lefts: Vec<Polygon>,
    pub rights: Vec<Polygon>,
    pub entries: Vec<RgjEntry>,
    /// Distinct outputs, sorted.
    pub outputs: Vec<Polygon>,
    /// `window * |left_k| * |right_l|`.
    pub formula: u64,
}

fn class_members(n: usize, left: bool) -> Result<Vec<Polygon>> {
    let mut out = Vec::new();
    for p in polygons(2, n)? {
        let f = classify_polygon(&p)?;
        if (left && f.is_left) || (!left && f.is_right) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Builds every regulation join polygon of type `(k, l)`.
pub fn rgj_enumerate(k: usize, l: usize, cfg: &RgjConfig) -> Result<RgjReport> {
    if k % 2 == 1 || l % 2 == 1 || k < 4 || l < 4 {
        return contract("lengths must be even and at least 4");
    }
    if 2 * l < k || l > 35 * k {
        return contract("need k/2 <= l <= 35k");
    }
    if cfg.c_reg == 0 {
        return contract("window divisor must be positive");
    }
    let window = cfg.window(k);
    let cap = floor_sqrt_div(k as u64, 2).min(floor_sqrt_div(l as u64, 1));
    if window > cap {
        return contract(format!(
            "window {window} exceeds min(floor(sqrt(k)/2), floor(sqrt(l))) = {cap}; the count formula is not guaranteed"
        ));
    }
    let lefts = class_members(k, true)?;
    let rights = class_members(l, false)?;
    let mut entries = Vec::new();
    for (i, a) in lefts.iter().enumerate() {
        let y_es = a.compass().es.y();
        for (r, b) in rights.iter().enumerate() {
            // b is canonical, so ymax(b + u) = u_y
            for t in 0..window as i32 {
                let (u, o) = super::rgj::joinable_at(a, b, y_es + t)?;
                let global = junction_is_global(&o)?;
                entries.push(RgjEntry {
                    left: i,
                    right: r,
                    offset: u,
                    output: o.result.canonical(),
                    global,
                    outcome: o,
                });
            }
        }
    }
    let outputs: BTreeSet<Polygon> = entries.iter().map(|e| e.output.clone()).collect();
    let formula = window * lefts.len() as u64 * rights.len() as u64;
    Ok(RgjReport {
        k,
        l,
        window,
        lefts,
        rights,
        entries,
        outputs: outputs.into_iter().collect(),
        formula,
    })
}

/// Laws of the length-`j` tour prefix under the uniform law on regulation
/// join outputs and under the uniform law on left polygons of length `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixLaw {
    pub joined: BTreeMap<Vec<Point>, BigRational>,
    pub left: BTreeMap<Vec<Point>, BigRational>,
}

fn law(prefixes: Vec<Vec<Point>>) -> BTreeMap<Vec<Point>, BigRational> {
    let total = prefixes.len();
    let mut counts: BTreeMap<Vec<Point>, usize> = BTreeMap::new();
    for p in prefixes {
        *counts.entry(p).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(k, c)| (k, BigRational::new(BigInt::from(c), BigInt::from(total))))
        .collect()
}

pub fn rgj_first_part_law(k: usize, l: usize, j: usize, cfg: &RgjConfig) -> Result<PrefixLaw> {
    if 2 * j > k {
        return contract("prefix length must be at most k/2");
    }
    let rep = rgj_enumerate(k, l, cfg)?;
    if rep.outputs.is_empty() {
        return Err(crate::Error::UndefinedConditional(
            "no regulation join polygons".into(),
        ));
    }
    let joined = rep
        .outputs
        .iter()
        .map(|p| Ok(p.tour()?[..=j].to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let left = rep
        .lefts
        .iter()
        .map(|p| Ok(p.tour()?[..=j].to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(PrefixLaw {
        joined: law(joined),
        left: law(left),
    })
}
