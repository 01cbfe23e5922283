//! Type I/II patterns, slots, local shells and the slot resampling kernel.
//!
//! A pattern pair is two self-avoiding walks in the box `[0,3]^2` that both
//! run from `(1,3)` to `(2,3)` around the whole boundary of the box, the
//! second two steps longer than the first. Because the boundary is visited in
//! full, the interior of an occupied box is unreachable from the rest of the
//! walk, so swapping one pattern for the other never breaks self-avoidance.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::choose;
use crate::error::{contract, Error, Result};
use crate::geometry::Point;
use crate::paths::{Polygon, Walk};

/// Largest shell class that [`shell_class_members`] will build.
pub const MAX_CLASS_SIZE: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PatternType {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternPair {
    pub chi_i: Walk,
    pub chi_ii: Walk,
}

impl PatternPair {
    pub fn pattern(&self, t: PatternType) -> &Walk {
        match t {
            PatternType::I => &self.chi_i,
            PatternType::II => &self.chi_ii,
        }
    }

    fn start(&self) -> Point {
        self.chi_i.start()
    }
}

fn box_boundary() -> BTreeSet<Point> {
    let mut out = BTreeSet::new();
    for x in 0..=3 {
        for y in 0..=3 {
            if x == 0 || x == 3 || y == 0 || y == 3 {
                out.insert(Point::xy(x, y));
            }
        }
    }
    out
}

fn box_walks(path: &mut Vec<Point>, end: Point, out: &mut Vec<Vec<Point>>) {
    let tip = *path.last().unwrap();
    if tip == end {
        out.push(path.clone());
        return;
    }
    for u in Point::units(2) {
        let q = tip + u;
        if !(0..=3).contains(&q.x()) || !(0..=3).contains(&q.y()) || path.contains(&q) {
            continue;
        }
        path.push(q);
        box_walks(path, end, out);
        path.pop();
    }
}

/// The pattern pair used throughout: among self-avoiding walks in `[0,3]^2`
/// from `(1,3)` to `(2,3)` visiting every boundary vertex, the shortest
/// one, and the least one two steps longer, each lexicographically least.
pub fn default_pattern_pair(d: usize) -> Result<PatternPair> {
    if d != 2 {
        return Err(Error::Unsupported(
            "the pattern pair is only constructed for d = 2".into(),
        ));
    }
    let (start, end) = (Point::xy(1, 3), Point::xy(2, 3));
    let mut all = Vec::new();
    box_walks(&mut vec![start], end, &mut all);
    let boundary = box_boundary();
    let mut ok: Vec<Vec<Point>> = all
        .into_iter()
        .filter(|w| boundary.iter().all(|b| w.contains(b)))
        .collect();
    ok.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let chi_i = ok[0].clone();
    let chi_ii = ok
        .iter()
        .find(|w| w.len() == chi_i.len() + 2)
        .cloned()
        .ok_or_else(|| Error::Contract("no pattern of the second type".into()))?;
    Ok(PatternPair {
        chi_i: Walk::from_raw(chi_i),
        chi_ii: Walk::from_raw(chi_ii),
    })
}

/// An occurrence of a pattern: the translate `corner + [0,3]^2` holds
/// `w[step..=step + |chi|]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub corner: Point,
    pub occupant: PatternType,
    pub step: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotScan {
    pub slots: Vec<Slot>,
}

impl SlotScan {
    pub fn count(&self, t: PatternType) -> usize {
        self.slots.iter().filter(|s| s.occupant == t).count()
    }
}

fn occurs_at(v: &[Point], k: usize, chi: &Walk, shift: Point) -> bool {
    let c = chi.vertices();
    k + c.len() <= v.len() && c.iter().zip(&v[k..]).all(|(a, b)| *a + shift == *b)
}

/// Scans a vertex sequence for pattern occurrences in increasing step order.
pub fn scan_vertices(v: &[Point], pp: &PatternPair) -> SlotScan {
    let mut slots = Vec::new();
    let mut k = 0;
    while k < v.len() {
        if v[k].dim() != 2 {
            break;
        }
        let shift = v[k] - pp.start();
        let hit = [PatternType::I, PatternType::II]
            .into_iter()
            .find(|&t| occurs_at(v, k, pp.pattern(t), shift));
        match hit {
            Some(t) => {
                slots.push(Slot {
                    corner: shift,
                    occupant: t,
                    step: k,
                });
                k += pp.pattern(t).len();
            }
            None => k += 1,
        }
    }
    SlotScan { slots }
}

pub fn scan_walk(w: &Walk, pp: &PatternPair) -> SlotScan {
    scan_vertices(w.vertices(), pp)
}

/// Scans the planar tour of `p`.
pub fn scan_polygon(p: &Polygon, pp: &PatternPair) -> Result<SlotScan> {
    Ok(scan_vertices(&p.tour()?, pp))
}

/// Replaces the occupant of every slot in `scan` by `choice(slot)`, working
/// from the end so that earlier steps stay valid.
fn respliced(v: &[Point], scan: &[Slot], pp: &PatternPair, choice: impl Fn(&Slot) -> PatternType) -> Vec<Point> {
    let mut out = v.to_vec();
    for s in scan.iter().rev() {
        let old = pp.pattern(s.occupant).len();
        let new: Vec<Point> = pp
            .pattern(choice(s))
            .vertices()
            .iter()
            .map(|&q| q + s.corner)
            .collect();
        out.splice(s.step..=s.step + old, new);
    }
    out
}

fn polygon_from_tour(tour: &[Point]) -> Result<Polygon> {
    Ok(Polygon::from_cycle(tour)?.canonical())
}

/// The (n+1)-local shell data of a polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalShellDescriptor {
    /// Length of the polygon described.
    pub length: usize,
    /// `floor(length / 10)`.
    pub window: usize,
    pub empty_polygon: Polygon,
    /// Slots of the pattern-free polygon, steps along its tour.
    pub empty_slots: Vec<Slot>,
    /// Corners of the slots within the first window of the empty tour.
    pub s1: Vec<Point>,
    /// Corners of the slots within the last window of the empty tour.
    pub s2: Vec<Point>,
    /// Occupant of every slot in the described polygon.
    pub occupants: BTreeMap<Point, PatternType>,
    pub n_i: usize,
    pub n_ii: usize,
    pub n_i_1: usize,
    pub n_i_2: usize,
    pub n_ii_1: usize,
    pub n_ii_2: usize,
    pub t_i: usize,
    pub t_ii: usize,
}

/// Identifies a local shell: polygons are related exactly when they have
/// equal keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShellKey {
    pub empty_polygon: Polygon,
    pub fixed_type_ii: Vec<Point>,
    pub n_ii: usize,
}

impl LocalShellDescriptor {
    pub fn free_slots(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self.s1.iter().chain(&self.s2).copied().collect();
        v.sort_by_key(|c| self.step_of(c));
        v
    }

    fn step_of(&self, corner: &Point) -> usize {
        self.empty_slots.iter().find(|s| s.corner == *corner).unwrap().step
    }

    fn is_free(&self, c: &Point) -> bool {
        self.s1.contains(c) || self.s2.contains(c)
    }

    pub fn key(&self) -> ShellKey {
        ShellKey {
            empty_polygon: self.empty_polygon.clone(),
            fixed_type_ii: self
                .occupants
                .iter()
                .filter(|(c, t)| **t == PatternType::II && !self.is_free(c))
                .map(|(c, _)| *c)
                .collect(),
            n_ii: self.n_ii,
        }
    }

    /// Number of polygons in the shell class.
    pub fn class_size(&self) -> num_bigint::BigUint {
        choose((self.s1.len() + self.s2.len()) as u64, self.n_ii as u64)
    }
}

pub fn local_shell(p: &Polygon, pp: &PatternPair) -> Result<LocalShellDescriptor> {
    if p.dim() != 2 {
        return Err(Error::Unsupported("local shells are planar".into()));
    }
    if !p.is_canonical() {
        return contract("local shells expect a canonical polygon");
    }
    let tour = p.tour()?;
    let scan = scan_vertices(&tour, pp);
    let empty_tour = respliced(&tour, &scan.slots, pp, |_| PatternType::I);
    let empty_polygon = polygon_from_tour(&empty_tour)?;
    // the maximal vertex never lies inside a box, so the tour is unchanged
    let empty_tour = empty_polygon.tour()?;
    let empty_slots = scan_vertices(&empty_tour, pp).slots;
    let length = p.len();
    let window = length / 10;
    let l_e = empty_polygon.len();
    let chi = pp.chi_i.len();
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for s in &empty_slots {
        if s.step + chi <= window {
            s1.push(s.corner);
        } else if s.step + window >= l_e {
            s2.push(s.corner);
        }
    }
    let occupants: BTreeMap<Point, PatternType> =
        scan.slots.iter().map(|s| (s.corner, s.occupant)).collect();
    let count = |set: &[Point], t: PatternType| set.iter().filter(|c| occupants[c] == t).count();
    let (n_i_1, n_i_2) = (count(&s1, PatternType::I), count(&s2, PatternType::I));
    let (n_ii_1, n_ii_2) = (count(&s1, PatternType::II), count(&s2, PatternType::II));
    Ok(LocalShellDescriptor {
        length,
        window,
        empty_polygon,
        t_i: scan.count(PatternType::I),
        t_ii: scan.count(PatternType::II),
        empty_slots,
        s1,
        s2,
        occupants,
        n_i: n_i_1 + n_i_2,
        n_ii: n_ii_1 + n_ii_2,
        n_i_1,
        n_i_2,
        n_ii_1,
        n_ii_2,
    })
}

/// The class member whose free slots holding type II patterns are `chosen`.
pub fn class_member(desc: &LocalShellDescriptor, chosen: &[Point], pp: &PatternPair) -> Result<Polygon> {
    if chosen.len() != desc.n_ii || chosen.iter().any(|c| !desc.is_free(c)) {
        return contract("a class member needs n_ii distinct free slots");
    }
    let tour = desc.empty_polygon.tour()?;
    let v = respliced(&tour, &desc.empty_slots, pp, |s| {
        if desc.is_free(&s.corner) {
            if chosen.contains(&s.corner) {
                PatternType::II
            } else {
                PatternType::I
            }
        } else {
            desc.occupants[&s.corner]
        }
    });
    polygon_from_tour(&v)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every polygon of the shell class, one per placement of the type II
/// patterns among the free slots, in lexicographic order of placements.
pub fn shell_class_members(desc: &LocalShellDescriptor, pp: &PatternPair) -> Result<Vec<Polygon>> {
    let size = desc.class_size();
    if size > MAX_CLASS_SIZE.into() {
        return Err(Error::Resource(format!(
            "shell class of size {size} exceeds {MAX_CLASS_SIZE}"
        )));
    }
    let free = desc.free_slots();
    subsets(free.len(), desc.n_ii)
        .into_iter()
        .map(|idx| {
            let chosen: Vec<Point> = idx.iter().map(|&i| free[i]).collect();
            class_member(desc, &chosen, pp)
        })
        .collect()
}

/// `P(N_I^1 = k)` when `n_i` type I patterns are spread uniformly over
/// `s1 + s2` slots: `C(s1, k) C(s2, n_i - k) / C(s1 + s2, n_i)`.
pub fn hypergeometric(s1: usize, s2: usize, n_i: usize, k: usize) -> BigRational {
    if k > s1 || n_i < k || n_i - k > s2 || n_i > s1 + s2 {
        return BigRational::zero();
    }
    let num = choose(s1 as u64, k as u64) * choose(s2 as u64, (n_i - k) as u64);
    let den = choose((s1 + s2) as u64, n_i as u64);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Law of the number of type I patterns in the first window under uniform
/// redistribution within the shell.
pub fn redistribution_law(desc: &LocalShellDescriptor, k: usize) -> BigRational {
    hypergeometric(desc.s1.len(), desc.s2.len(), desc.n_i, k)
}

/// Draws a uniform member of the shell class of `desc`.
pub fn resample_with<R: Rng>(desc: &LocalShellDescriptor, pp: &PatternPair, rng: &mut R) -> Result<Polygon> {
    let free = desc.free_slots();
    let idx = sample(rng, free.len(), desc.n_ii);
    let chosen: Vec<Point> = idx.iter().map(|i| free[i]).collect();
    class_member(desc, &chosen, pp)
}

/// Forgets the contents of the free slots of `p` and refills them
/// uniformly, deterministically in `seed`.
pub fn resample(p: &Polygon, pp: &PatternPair, seed: u64) -> Result<Polygon> {
    let desc = local_shell(p, pp)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    resample_with(&desc, pp, &mut rng)
}

/// The exact resampling kernel on the class of `desc`: row `i` is the law
/// of the output given input `members[i]`, each row computed from that
/// member's own descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResampleKernel {
    pub members: Vec<Polygon>,
    pub matrix: Vec<Vec<BigRational>>,
}

impl ResampleKernel {
    pub fn is_doubly_stochastic(&self) -> bool {
        let one = BigRational::from_integer(1.into());
        let n = self.members.len();
        (0..n).all(|i| self.matrix[i].iter().sum::<BigRational>() == one)
            && (0..n).all(|j| (0..n).map(|i| &self.matrix[i][j]).sum::<BigRational>() == one)
    }

    /// `K K = K`.
    pub fn is_idempotent(&self) -> bool {
        let n = self.members.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s: BigRational = (0..n).map(|k| &self.matrix[i][k] * &self.matrix[k][j]).sum();
                s == self.matrix[i][j]
            })
        })
    }

    /// The uniform law is invariant.
    pub fn preserves_uniform(&self) -> bool {
        let n = self.members.len();
        let u = BigRational::new(1.into(), BigInt::from(n));
        (0..n).all(|j| (0..n).map(|i| &u * &self.matrix[i][j]).sum::<BigRational>() == u)
    }
}

pub fn resample_kernel(desc: &LocalShellDescriptor, pp: &PatternPair) -> Result<ResampleKernel> {
    let members = shell_class_members(desc, pp)?;
    let index: BTreeMap<&Polygon, usize> = members.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = members.len();
    let mut matrix = vec![vec![BigRational::zero(); n]; n];
    for (i, m) in members.iter().enumerate() {
        let d = local_shell(m, pp)?;
        let row = shell_class_members(&d, pp)?;
        let w = BigRational::new(1.into(), BigInt::from(row.len()));
        for out in row {
            let Some(&j) = index.get(&out) else {
                return contract("resampling left the shell class");
            };
            matrix[i][j] += &w;
        }
    }
    Ok(ResampleKernel { members, matrix })
}

/// Histogram of `N_I^1` over `draws` resamples of `p` from one seeded stream.
pub fn resample_histogram(p: &Polygon, pp: &PatternPair, seed: u64, draws: u64) -> Result<BTreeMap<usize, u64>> {
    let desc = local_shell(p, pp)?;
    let free = desc.free_slots();
    let s1: BTreeSet<usize> = (0..free.len()).filter(|&i| desc.s1.contains(&free[i])).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hist = BTreeMap::new();
    for _ in 0..draws {
        let idx = sample(&mut rng, free.len(), desc.n_ii);
        let ii_in_s1 = idx.iter().filter(|i| s1.contains(i)).count();
        *hist.entry(s1.len() - ii_in_s1).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Standard score of an observed count against a binomial expectation.
pub fn z_score(observed: u64, draws: u64, p: &BigRational) -> f64 {
    let p = p.to_f64().unwrap_or(0.0);
    let n = draws as f64;
    let sd = (n * p * (1.0 - p)).sqrt();
    if sd == 0.0 {
        return if (observed as f64 - n * p).abs() < 0.5 { 0.0 } else { f64::INFINITY };
    }
    (observed as f64 - n * p) / sd
}

/// A canonical polygon with the given patterns hanging below a row near the
/// start of its tour and below a row near its end, padded so that they fall
/// in the first and last windows of the local shell.
pub fn pattern_comb(first: &[PatternType], last: &[PatternType], pp: &PatternPair) -> Result<Polygon> {
    let fits = |p: &Polygon| -> Result<bool> {
        let d = local_shell(p, pp)?;
        Ok(d.s1.len() == first.len() && d.s2.len() == last.len())
    };
    for pad in 0..2000 {
        let p = comb_with_pad(first, last, pp, pad)?;
        if fits(&p)? {
            return Ok(p);
        }
    }
    contract("no padding places the patterns in the shell windows")
}

fn comb_with_pad(first: &[PatternType], last: &[PatternType], pp: &PatternPair, pad: i32) -> Result<Polygon> {
    const D: i32 = 2;
    const E: i32 = D + 12;
    let mut v = vec![Point::xy(0, 0)];
    let go = |v: &mut Vec<Point>, to: Point| {
        let mut c = *v.last().unwrap();
        let step = Point::xy((to.x() - c.x()).signum(), (to.y() - c.y()).signum());
        while c != to {
            c = c + step;
            v.push(c);
        }
    };
    let bag = |v: &mut Vec<Point>, a: i32, y: i32, t: PatternType| {
        let corner = Point::xy(a - 1, y - 4);
        v.extend(pp.pattern(t).vertices().iter().map(|&q| q + corner));
        v.push(Point::xy(a + 1, y));
    };
    go(&mut v, Point::xy(-1, 0));
    go(&mut v, Point::xy(-1, -D));
    for (i, &t) in first.iter().enumerate() {
        let a = 1 + 4 * i as i32;
        go(&mut v, Point::xy(a, -D));
        bag(&mut v, a, -D, t);
    }
    let r = 4 * first.len() as i32 + 2;
    go(&mut v, Point::xy(r, -D));
    go(&mut v, Point::xy(r, -D - 6));
    go(&mut v, Point::xy(-3 - pad, -D - 6));
    go(&mut v, Point::xy(-3 - pad, -E));
    for (i, &t) in last.iter().enumerate() {
        let a = 1 + 4 * i as i32;
        go(&mut v, Point::xy(a, -E));
        bag(&mut v, a, -E, t);
    }
    let m = (r + 1).max(4 * last.len() as i32 + 2);
    go(&mut v, Point::xy(m, -E));
    go(&mut v, Point::xy(m, -1));
    go(&mut v, Point::xy(0, -1));
    let p = Polygon::from_cycle(&v)?;
    debug_assert!(p.is_canonical());
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use PatternType::{I, II};

    #[test]
    fn pattern_pair_invariants() {
        let pp = default_pattern_pair(2).unwrap();
        assert_eq!(pp.chi_i.len(), 11);
        assert_eq!(pp.chi_ii.len(), 13);
        for w in [&pp.chi_i, &pp.chi_ii] {
            assert!(w.is_self_avoiding());
            assert_eq!((w.start(), w.end()), (Point::xy(1, 3), Point::xy(2, 3)));
            for b in box_boundary() {
                assert!(w.vertices().contains(&b));
            }
        }
        assert!(default_pattern_pair(3).is_err());
    }

    #[test]
    fn comb_descriptor() {
        let pp = default_pattern_pair(2).unwrap();
        let p = pattern_comb(&[II], &[I], &pp).unwrap();
        let d = local_shell(&p, &pp).unwrap();
        assert_eq!((d.s1.len(), d.s2.len(), d.n_i, d.n_ii), (1, 1, 1, 1));
        assert_eq!((d.n_ii_1, d.n_i_2), (1, 1));
        assert_eq!(d.empty_polygon.len() + 2, p.len());
        let members = shell_class_members(&d, &pp).unwrap();
        assert_eq!(members.len(), 2);
        assert!(members.contains(&p));
        for m in &members {
            assert_eq!(local_shell(m, &pp).unwrap().key(), d.key());
        }
    }

    #[test]
    fn law_examples() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(hypergeometric(1, 1, 1, 1), half);
        assert_eq!(hypergeometric(2, 2, 2, 1), BigRational::new(2.into(), 3.into()));
        assert_eq!(hypergeometric(3, 2, 5, 3), BigRational::from_integer(1.into()));
        assert!(hypergeometric(1, 1, 1, 2).is_zero());
    }
}
