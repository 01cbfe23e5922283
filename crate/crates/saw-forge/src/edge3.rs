//! The 3-edge model: walks that traverse no edge more than three times.
//!
//! Here a walk closes when it returns to its start, and a polygon is a
//! closing walk up to cyclic shift, reversal and translation. Left and right
//! vertices use the plain coordinate order, first coordinate first, so the
//! left vertex has minimal `e1`-coordinate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::census::EnumOptions;
use crate::error::{contract, Error, Result};
use crate::geometry::{Edge, Point};

/// Largest multiplicity allowed on an edge.
pub const MAX_MULTIPLICITY: usize = 3;

fn check_dim(d: usize) -> Result<()> {
    if !(2..=4).contains(&d) {
        return contract(format!("dimension {d} outside 2..=4"));
    }
    Ok(())
}

fn plain_cmp(a: &Point, b: &Point) -> Ordering {
    a.coords().cmp(b.coords())
}

fn plain_cmp_lists(a: &[Point], b: &[Point]) -> Ordering {
    a.iter()
        .map(|p| p.coords())
        .cmp(b.iter().map(|p| p.coords()))
}

fn multiplicities(v: &[Point]) -> BTreeMap<Edge, usize> {
    let mut m = BTreeMap::new();
    for w in v.windows(2) {
        *m.entry(Edge::between(w[0], w[1])).or_default() += 1;
    }
    m
}

/// A nearest-neighbour walk that may revisit vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MultiWalk {
    vertices: Vec<Point>,
}

impl MultiWalk {
    /// Checks adjacency and the multiplicity bound.
    pub fn new(vertices: Vec<Point>) -> Result<MultiWalk> {
        if vertices.is_empty() {
            return contract("a walk has at least one vertex");
        }
        let d = vertices[0].dim();
        for w in vertices.windows(2) {
            if w[1].dim() != d {
                return Err(Error::DimensionMismatch(d, w[1].dim()));
            }
            if !w[0].is_adjacent(&w[1]) {
                return contract(format!("{} and {} are not adjacent", w[0], w[1]));
            }
        }
        let w = MultiWalk { vertices };
        if w.max_multiplicity() > MAX_MULTIPLICITY {
            return contract("an edge is traversed more than three times");
        }
        Ok(w)
    }

    pub(crate) fn from_raw(vertices: Vec<Point>) -> MultiWalk {
        MultiWalk { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edge_multiplicity(&self) -> BTreeMap<Edge, usize> {
        multiplicities(&self.vertices)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.edge_multiplicity().into_values().max().unwrap_or(0)
    }

    pub fn closes(&self) -> bool {
        self.vertices[0] == *self.vertices.last().unwrap()
    }

    /// Minimal and maximal first coordinate attained at the start and the
    /// end respectively.
    pub fn is_bridge(&self) -> bool {
        let x0 = self.vertices[0].x();
        let x1 = self.vertices.last().unwrap().x();
        self.vertices.iter().all(|p| x0 <= p.x() && p.x() <= x1)
    }
}

/// A closing 3-edge walk up to cyclic shift, reversal and translation,
/// stored as its canonical list of `n` vertices: the left vertex is at the
/// origin and the list is minimal among all starts at the origin and both
/// orientations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge3Polygon {
    cycle: Vec<Point>,
}

impl Edge3Polygon {
    /// Builds the polygon of a closing walk, given with or without its
    /// repeated endpoint.
    pub fn from_closed_walk(v: &[Point]) -> Result<Edge3Polygon> {
        let mut v = v.to_vec();
        if v.len() > 1 && v[0] == *v.last().unwrap() {
            v.pop();
        }
        if v.len() < 2 {
            return contract("a polygon has positive length");
        }
        let mut closed = v.clone();
        closed.push(v[0]);
        MultiWalk::new(closed)?;
        Ok(Edge3Polygon { cycle: canonical_cycle(&v) })
    }

    pub fn dim(&self) -> usize {
        self.cycle[0].dim()
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// The canonical list of `n` vertices.
    pub fn cycle(&self) -> &[Point] {
        &self.cycle
    }

    /// The canonical tour, closed: `n + 1` vertices, last equal to first.
    pub fn tour(&self) -> Vec<Point> {
        let mut t = self.cycle.clone();
        t.push(t[0]);
        t
    }

    pub fn walk(&self) -> MultiWalk {
        MultiWalk::from_raw(self.tour())
    }

    /// The length-2 polygon crossing one edge back and forth.
    pub fn is_degenerate(&self) -> bool {
        self.len() == 2
    }

    pub fn vertex_set(&self) -> BTreeSet<Point> {
        self.cycle.iter().copied().collect()
    }

    pub fn left(&self) -> Point {
        *self.cycle.iter().min_by(|a, b| plain_cmp(a, b)).unwrap()
    }

    pub fn right(&self) -> Point {
        *self.cycle.iter().max_by(|a, b| plain_cmp(a, b)).unwrap()
    }

    pub fn span(&self, axis: usize) -> i32 {
        let xs = self.cycle.iter().map(|p| p.coord(axis));
        xs.clone().max().unwrap() - xs.min().unwrap()
    }

    pub fn x_span(&self) -> i32 {
        self.span(0)
    }

    pub fn translate(&self, v: Point) -> Vec<Point> {
        self.cycle.iter().map(|&p| p + v).collect()
    }

    /// The same polygon with coordinate axes `0` and `axis` exchanged.
    pub fn swap_axes(&self, axis: usize) -> Edge3Polygon {
        let v: Vec<Point> = self
            .cycle
            .iter()
            .map(|p| p.with_coord(0, p.coord(axis)).with_coord(axis, p.coord(0)))
            .collect();
        Edge3Polygon { cycle: canonical_cycle(&v) }
    }
}

fn canonical_cycle(v: &[Point]) -> Vec<Point> {
    let n = v.len();
    let left = *v.iter().min_by(|a, b| plain_cmp(a, b)).unwrap();
    let t: Vec<Point> = v.iter().map(|&p| p - left).collect();
    let origin = Point::origin(left.dim());
    let mut best: Option<Vec<Point>> = None;
    for s in (0..n).filter(|&i| t[i] == origin) {
        let fwd: Vec<Point> = (0..n).map(|i| t[(s + i) % n]).collect();
        let bwd: Vec<Point> = (0..n).map(|i| t[(s + n - i) % n]).collect();
        for c in [fwd, bwd] {
            if best.as_ref().is_none_or(|b| plain_cmp_lists(&c, b) == Ordering::Less) {
                best = Some(c);
            }
        }
    }
    best.unwrap()
}

/// Counts of 3-edge walks and polygons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge3Census {
    pub d: usize,
    /// `c_hat_0..c_hat_n`.
    pub walks: Vec<u64>,
    /// Walks of each length returning to the origin.
    pub closing: Vec<u64>,
    /// `p_hat_m` for every even `m <= n`, degenerate polygons included.
    pub polygons: BTreeMap<usize, u64>,
    /// The same with the degenerate length-2 polygons removed.
    pub polygons_nondegenerate: BTreeMap<usize, u64>,
    /// Canonical polygons of length `n`, sorted, when collected.
    pub objects: Option<Vec<Edge3Polygon>>,
}

/// What [`enumerate_edge3`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge3Kind {
    Walks,
    Polygons,
}

/// Polygon enumeration bound: 10 in the plane, 8 above.
pub fn polygon_bound(d: usize) -> usize {
    if d == 2 {
        10
    } else {
        8
    }
}

/// Walk counting bound: the largest `n` with `(2d)^n <= 2^26`.
pub fn walk_bound(d: usize) -> usize {
    (26.0 / ((2 * d) as f64).log2()).floor() as usize
}

#[derive(Default)]
struct Acc {
    walks: Vec<u64>,
    closing: Vec<u64>,
    polys: BTreeMap<usize, BTreeSet<Vec<Point>>>,
}

impl Acc {
    fn new(n: usize) -> Acc {
        Acc {
            walks: vec![0; n + 1],
            closing: vec![0; n + 1],
            polys: BTreeMap::new(),
        }
    }

    fn merge(&mut self, o: Acc) {
        for (a, b) in self.walks.iter_mut().zip(o.walks) {
            *a += b;
        }
        for (a, b) in self.closing.iter_mut().zip(o.closing) {
            *a += b;
        }
        for (k, s) in o.polys {
            self.polys.entry(k).or_default().extend(s);
        }
    }
}

fn multiplicity_in(path: &[Point], e: &Edge) -> usize {
    path.windows(2)
        .filter(|w| Edge::between(w[0], w[1]) == *e)
        .count()
}

struct Search<'a> {
    n: usize,
    units: &'a [Point],
    polygons: bool,
    /// Walk lengths below this were counted by an earlier pass.
    from: usize,
}

impl Search<'_> {
    fn dfs(&self, path: &mut Vec<Point>, acc: &mut Acc) {
        let len = path.len() - 1;
        if len >= self.from {
            acc.walks[len] += 1;
            if len > 0 && path[0] == path[len] {
                acc.closing[len] += 1;
                if self.polygons {
                    acc.polys.entry(len).or_default().insert(canonical_cycle(&path[..len]));
                }
            }
        }
        if len == self.n {
            return;
        }
        let here = path[len];
        for &u in self.units {
            let next = here + u;
            if self.polygons && next.l1() as usize > self.n - len - 1 {
                continue;
            }
            if multiplicity_in(path, &Edge::between(here, next)) >= MAX_MULTIPLICITY {
                continue;
            }
            path.push(next);
            self.dfs(path, acc);
            path.pop();
        }
    }
}

fn search(d: usize, n: usize, polygons: bool, opts: &EnumOptions) -> Acc {
    let units = Point::units(d);
    let depth = opts.shard_depth.min(n);
    let origin = Point::origin(d);
    let head = Search { n: depth, units: &units, polygons, from: 0 };
    let mut acc = Acc::new(n);
    if depth == 0 || depth >= n {
        let s = Search { n, units: &units, polygons, from: 0 };
        s.dfs(&mut vec![origin], &mut acc);
        return acc;
    }
    // lengths below the shard depth are counted once, then each prefix of
    // that depth is extended independently and merged in prefix order
    let mut prefixes = Vec::new();
    collect_prefixes(&head, &mut vec![origin], &mut prefixes);
    let mut short = Acc::new(n);
    let below = Search { n: depth - 1, units: &units, polygons, from: 0 };
    below.dfs(&mut vec![origin], &mut short);
    acc.merge(short);
    let body = Search { n, units: &units, polygons, from: depth };
    let run = |p: &Vec<Point>| {
        let mut a = Acc::new(n);
        body.dfs(&mut p.clone(), &mut a);
        a
    };
    let parts: Vec<Acc> = if opts.parallel {
        prefixes.par_iter().map(run).collect()
    } else {
        prefixes.iter().map(run).collect()
    };
    for p in parts {
        acc.merge(p);
    }
    acc
}

fn collect_prefixes(s: &Search, path: &mut Vec<Point>, out: &mut Vec<Vec<Point>>) {
    let len = path.len() - 1;
    if len == s.n {
        out.push(path.clone());
        return;
    }
    let here = path[len];
    for &u in s.units {
        let next = here + u;
        if multiplicity_in(path, &Edge::between(here, next)) >= MAX_MULTIPLICITY {
            continue;
        }
        path.push(next);
        collect_prefixes(s, path, out);
        path.pop();
    }
}

/// Exact 3-edge walk and polygon counts up to length `n`.
///
/// Polygon enumeration only follows walks that can still return, so the
/// walk counts it reports are those of returning walks; ask for
/// [`Edge3Kind::Walks`] to get `c_hat`.
pub fn enumerate_edge3(d: usize, n: usize, kind: Edge3Kind, collect: bool, opts: &EnumOptions) -> Result<Edge3Census> {
    check_dim(d)?;
    let polygons = kind == Edge3Kind::Polygons;
    let bound = if polygons { polygon_bound(d) } else { walk_bound(d) };
    if n > bound {
        return Err(Error::Resource(format!("length {n} exceeds the 3-edge bound {bound} for d={d}")));
    }
    let acc = search(d, n, polygons, opts);
    let mut counts = BTreeMap::new();
    let mut nondeg = BTreeMap::new();
    if polygons {
        for m in (2..=n).step_by(2) {
            let c = acc.polys.get(&m).map_or(0, |s| s.len() as u64);
            counts.insert(m, c);
            nondeg.insert(m, if m == 2 { 0 } else { c });
        }
    }
    let objects = (polygons && collect).then(|| {
        acc.polys
            .get(&n)
            .map(|s| s.iter().map(|c| Edge3Polygon { cycle: c.clone() }).collect())
            .unwrap_or_default()
    });
    Ok(Edge3Census {
        d,
        walks: if polygons { Vec::new() } else { acc.walks },
        closing: acc.closing,
        polygons: counts,
        polygons_nondegenerate: nondeg,
        objects,
    })
}

/// Canonical 3-edge polygons of length `n`, sorted.
pub fn edge3_polygons(d: usize, n: usize) -> Result<Vec<Edge3Polygon>> {
    Ok(enumerate_edge3(d, n, Edge3Kind::Polygons, true, &EnumOptions::default())?
        .objects
        .unwrap())
}

/// `W(closes) = 2n p_hat_n / c_hat_n`, checked through its numerators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosingIdentity {
    pub n: usize,
    pub closing_walks: u64,
    pub polygons: u64,
    pub polygons_nondegenerate: u64,
    /// `closing_walks == 2 n p_hat_n`, degenerate polygons included.
    pub holds: bool,
    pub holds_nondegenerate: bool,
    /// Polygons whose parametrizations from a fixed start number fewer
    /// than `2n`, with the number they do have.
    pub symmetric: Vec<(Edge3Polygon, usize)>,
}

fn parametrizations(p: &Edge3Polygon) -> usize {
    let n = p.len();
    let c = p.cycle();
    let mut seen = BTreeSet::new();
    for s in 0..n {
        let fwd: Vec<Point> = (0..n).map(|i| c[(s + i) % n] - c[s]).collect();
        let bwd: Vec<Point> = (0..n).map(|i| c[(s + n - i) % n] - c[s]).collect();
        seen.insert(fwd);
        seen.insert(bwd);
    }
    seen.len()
}

pub fn edge3_closing_identity(d: usize, n: usize, opts: &EnumOptions) -> Result<ClosingIdentity> {
    let census = enumerate_edge3(d, n, Edge3Kind::Polygons, true, opts)?;
    let closing = census.closing[n];
    let polys = census.objects.unwrap();
    let p = polys.len() as u64;
    let nondeg = if n == 2 { 0 } else { p };
    let two_n = 2 * n as u64;
    let symmetric = polys
        .into_iter()
        .filter_map(|q| {
            let k = parametrizations(&q);
            (k < 2 * n).then_some((q, k))
        })
        .collect();
    Ok(ClosingIdentity {
        n,
        closing_walks: closing,
        polygons: p,
        polygons_nondegenerate: nondeg,
        holds: closing == two_n * p,
        holds_nondegenerate: closing == two_n * nondeg,
        symmetric,
    })
}

/// A join edge with the two polygons left when it is removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinEdge {
    pub edge: Edge,
    /// The closing walk between the two traversals, in place.
    pub inner: Vec<Point>,
    /// The rest of the polygon, in place.
    pub outer: Vec<Point>,
    pub global: bool,
}

/// Splits a closed tour at two opposite traversals `i < j` of one edge.
fn split_at_traversals(c: &[Point], i: usize, j: usize) -> (Vec<Point>, Vec<Point>) {
    let n = c.len();
    let inner: Vec<Point> = (i + 1..=j).map(|t| c[t % n]).collect();
    let outer: Vec<Point> = (j + 1..=i + n).map(|t| c[t % n]).collect();
    (inner, outer)
}

fn is_global_split(a: &[Point], b: &[Point]) -> bool {
    let all = a.iter().chain(b);
    let xmax = all.clone().map(|p| p.x()).max().unwrap();
    let xmin = all.map(|p| p.x()).min().unwrap();
    let labelled = |l: &[Point], r: &[Point]| {
        let ends = l.iter().chain(r);
        ends.clone().filter(|p| p.x() == xmax).all(|p| r.contains(p))
            && ends.filter(|p| p.x() == xmin).all(|p| l.contains(p))
    };
    labelled(a, b) || labelled(b, a)
}

/// Join edges of `p`: edges crossed exactly twice, once in each direction,
/// whose removal leaves two polygons of positive length. Sorted by edge.
pub fn join_edges(p: &Edge3Polygon) -> Vec<JoinEdge> {
    let c = p.cycle();
    let n = c.len();
    let mut by_edge: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        by_edge.entry(Edge::between(c[i], c[(i + 1) % n])).or_default().push(i);
    }
    let mut out = Vec::new();
    for (e, t) in by_edge {
        if t.len() != 2 {
            continue;
        }
        let (i, j) = (t[0], t[1]);
        if c[i] != c[(j + 1) % n] {
            continue;
        }
        let (inner, outer) = split_at_traversals(c, i, j);
        if inner.len() < 2 || outer.len() < 2 {
            continue;
        }
        let global = is_global_split(&inner, &outer);
        out.push(JoinEdge { edge: e, inner, outer, global });
    }
    out
}

/// Global join edges in the order their first traversal occurs on the
/// canonical tour.
pub fn global_join_edges(p: &Edge3Polygon) -> Vec<Edge> {
    let c = p.tour();
    let mut g: Vec<(usize, Edge)> = join_edges(p)
        .into_iter()
        .filter(|j| j.global)
        .map(|j| {
            let first = c
                .windows(2)
                .position(|w| Edge::between(w[0], w[1]) == j.edge)
                .unwrap();
            (first, j.edge)
        })
        .collect();
    g.sort();
    g.into_iter().map(|(_, e)| e).collect()
}

/// Projection dropping coordinate `axis`.
pub fn projection(points: &[Point], axis: usize) -> BTreeSet<Vec<i32>> {
    points
        .iter()
        .map(|p| {
            let mut c = p.coords().to_vec();
            c.remove(axis);
            c
        })
        .collect()
}

/// Offset `s` such that `b + s e1` is disjoint from `a` while
/// `b + (s - 1) e1` is not; `None` when the projections along `e1` miss.
pub fn simple_join_shift(a: &[Point], b: &[Point]) -> Option<i32> {
    let mut by_proj: BTreeMap<Vec<i32>, Vec<i32>> = BTreeMap::new();
    for p in a {
        by_proj.entry(p.coords()[1..].to_vec()).or_default().push(p.x());
    }
    let mut top: Option<i32> = None;
    for q in b {
        if let Some(xs) = by_proj.get(&q.coords()[1..]) {
            for x in xs {
                let t = x - q.x();
                top = Some(top.map_or(t, |m| m.max(t)));
            }
        }
    }
    top.map(|t| t + 1)
}

/// The result of a simple join.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleJoin3e {
    /// Translation applied to the second polygon.
    pub shift: Point,
    pub junction: Edge,
    /// The joined tour, in place, closed.
    pub walk: MultiWalk,
    pub polygon: Edge3Polygon,
}

/// Joins `a` and `b` as placed: `b` is slid along `e1` to its last position
/// disjoint from `a`, and the two tours are spliced across the maximal
/// `e1`-edge joining them.
pub fn simple_join_3e(a: &Edge3Polygon, b: &Edge3Polygon) -> Result<SimpleJoin3e> {
    simple_join_placed(a.cycle(), b.cycle())
}

pub(crate) fn simple_join_placed(a: &[Point], b: &[Point]) -> Result<SimpleJoin3e> {
    let d = a[0].dim();
    if b[0].dim() != d {
        return Err(Error::DimensionMismatch(d, b[0].dim()));
    }
    let s = simple_join_shift(a, b)
        .ok_or_else(|| Error::JoinFailure("the projections along e1 are disjoint".into()))?;
    let shift = Point::unit(d, 0, 1).scale(s);
    let bs: Vec<Point> = b.iter().map(|&p| p + shift).collect();
    let av: BTreeSet<Point> = a.iter().copied().collect();
    let bv: BTreeSet<Point> = bs.iter().copied().collect();
    let e1 = Point::unit(d, 0, 1);
    let junction = av
        .iter()
        .flat_map(|&p| [Edge::between(p, p + e1), Edge::between(p - e1, p)])
        .filter(|e| e.endpoints().iter().any(|q| bv.contains(q)))
        .max()
        .ok_or_else(|| Error::JoinFailure("no e1-edge meets both polygons".into()))?;
    let (ea, eb) = if av.contains(&junction.lo()) {
        (junction.lo(), junction.hi())
    } else {
        (junction.hi(), junction.lo())
    };
    let ia = a.iter().position(|p| *p == ea).unwrap();
    let ib = bs.iter().position(|p| *p == eb).unwrap();
    let mut v: Vec<Point> = a[..=ia].to_vec();
    let m = bs.len();
    v.extend((0..=m).map(|t| bs[(ib + t) % m]));
    v.extend_from_slice(&a[ia..]);
    v.push(a[0]);
    let walk = MultiWalk::new(v)?;
    let polygon = Edge3Polygon::from_closed_walk(walk.vertices())?;
    Ok(SimpleJoin3e { shift, junction, walk, polygon })
}

/// Removes the junction edge from a joined tour, returning the two pieces
/// in place: the one holding the tour's start first.
pub fn split_junction(walk: &MultiWalk, e: &Edge) -> Result<(Vec<Point>, Vec<Point>)> {
    let v = &walk.vertices()[..walk.len()];
    let n = v.len();
    let t: Vec<usize> = (0..n)
        .filter(|&i| Edge::between(v[i], v[(i + 1) % n]) == *e)
        .collect();
    if t.len() != 2 || v[t[0]] != v[(t[1] + 1) % n] {
        return contract("the edge is not crossed once in each direction");
    }
    let (inner, outer) = split_at_traversals(v, t[0], t[1]);
    Ok((outer, inner))
}

/// `S_kappa(p)`: the tour up to the first visit of the right vertex, then
/// the rest reflected in the hyperplane through it normal to `e1`, with a
/// back-and-forth detour after the reflected image of each chosen global
/// join edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitImage3e {
    pub walk: MultiWalk,
    /// The chosen global join edges, unreflected.
    pub surgered: Vec<Edge>,
}

fn reflect_x(p: Point, rx: i32) -> Point {
    p.with_coord(0, 2 * rx - p.x())
}

/// `kappa` indexes [`global_join_edges`].
pub fn reflect_split_map_3e(p: &Edge3Polygon, kappa: &[usize]) -> Result<SplitImage3e> {
    let g = global_join_edges(p);
    let mut ks = kappa.to_vec();
    ks.sort();
    ks.dedup();
    if ks.len() != kappa.len() || ks.iter().any(|&i| i >= g.len()) {
        return contract(format!("kappa must be distinct indices below {}", g.len()));
    }
    let surgered: Vec<Edge> = ks.iter().map(|&i| g[i]).collect();
    let tour = p.tour();
    let right = p.right();
    let j = tour.iter().position(|q| *q == right).unwrap();
    let rx = right.x();
    let mut v: Vec<Point> = tour[..=j].to_vec();
    let mut pending: BTreeSet<Edge> = surgered.iter().copied().collect();
    for w in tour[j..].windows(2) {
        let (a, b) = (reflect_x(w[0], rx), reflect_x(w[1], rx));
        v.push(b);
        if pending.remove(&Edge::between(w[0], w[1])) {
            v.push(a);
            v.push(b);
        }
    }
    debug_assert!(pending.is_empty());
    let walk = MultiWalk::new(v).map_err(|_| Error::JoinFailure("a detour would cross an edge four times".into()))?;
    Ok(SplitImage3e { walk, surgered })
}

/// Inverts [`reflect_split_map_3e`], returning the polygon and the edges
/// detected as surgered: those crossed four times once the reflection is
/// undone.
pub fn reconstruct_reflect_split_3e(w: &MultiWalk) -> Result<(Edge3Polygon, Vec<Edge>)> {
    let v = w.vertices();
    let end = *v.last().unwrap();
    if end.x() % 2 != 0 {
        return contract("the end has odd first coordinate");
    }
    let rx = end.x() / 2;
    let right = *v
        .iter()
        .filter(|p| p.x() == rx)
        .max_by(|a, b| plain_cmp(a, b))
        .ok_or_else(|| Error::Contract("no vertex on the reflecting hyperplane".into()))?;
    let j = v.iter().position(|q| *q == right).unwrap();
    let mut u: Vec<Point> = v[..=j].to_vec();
    u.extend(v[j + 1..].iter().map(|&q| reflect_x(q, rx)));
    let fours: Vec<Edge> = multiplicities(&u)
        .into_iter()
        .filter(|(_, m)| *m == 4)
        .map(|(e, _)| e)
        .collect();
    let mut t = j;
    while t + 3 < u.len() {
        let e = Edge::between(u[t], u[t + 1]);
        if u[t] == u[t + 2] && u[t + 1] == u[t + 3] && fours.contains(&e) {
            u.drain(t + 1..t + 3);
        }
        t += 1;
    }
    if *u.last().unwrap() != u[0] {
        return contract("the unreflected walk does not close");
    }
    let p = Edge3Polygon::from_closed_walk(&u)?;
    Ok((p, fours))
}

/// Axial projections of a polygon's vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    /// `|Proj_I|` for `I` omitting each axis in turn.
    pub sizes: Vec<usize>,
    pub max: usize,
    pub vertices: usize,
    pub length: usize,
    /// Product of the projection sizes at least `|V|^{d-1}`.
    pub loomis_whitney: bool,
    /// `max^d >= |V|^{d-1}`.
    pub max_bound: bool,
    /// `3d |V| >= length`.
    pub vertex_bound: bool,
}

pub fn projection_report(p: &Edge3Polygon) -> ProjectionReport {
    let d = p.dim();
    let sizes: Vec<usize> = (0..d).map(|i| projection(p.cycle(), i).len()).collect();
    let max = *sizes.iter().max().unwrap();
    let nv = p.vertex_set().len();
    let e = (d - 1) as u32;
    let product: u128 = sizes.iter().map(|&s| s as u128).product();
    ProjectionReport {
        max,
        vertices: nv,
        length: p.len(),
        loomis_whitney: product >= (nv as u128).pow(e),
        max_bound: (max as u128).pow(d as u32) >= (nv as u128).pow(e),
        vertex_bound: 3 * d * nv >= p.len(),
        sizes,
    }
}

/// `|Proj(q)|^d (3d)^{d-1} >= l^{d-1}`.
fn wide_projection(q: &Edge3Polygon) -> bool {
    let d = q.dim() as u32;
    let pr = projection(q.cycle(), 0).len() as u128;
    pr.pow(d) * (3 * d as u128).pow(d - 1) >= (q.len() as u128).pow(d - 1)
}

/// Offsets at which a pair is globally joinable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongJoin3d {
    pub offsets: Vec<Point>,
    /// `|offsets|^d (3d)^{d-1} >= min(k, l)^{d-1}`.
    pub bound_holds: bool,
}

/// Offsets `u` with `(a, b + u)` simply joinable, every vertex of minimal
/// first coordinate in `a` and every one of maximal first coordinate in
/// `b + u`.
pub fn strong_join_3d(a: &Edge3Polygon, b: &Edge3Polygon) -> Result<StrongJoin3d> {
    let d = a.dim();
    if b.dim() != d {
        return Err(Error::DimensionMismatch(d, b.dim()));
    }
    let pa = projection(a.cycle(), 0);
    let pb = projection(b.cycle(), 0);
    let mut perp = BTreeSet::new();
    for x in &pa {
        for y in &pb {
            perp.insert(x.iter().zip(y).map(|(s, t)| s - t).collect::<Vec<i32>>());
        }
    }
    let mut offsets = Vec::new();
    for w in perp {
        let mut c = vec![0];
        c.extend(w);
        let v = Point::new(&c);
        let bv = b.translate(v);
        let s = simple_join_shift(a.cycle(), &bv).unwrap();
        let u = v + Point::unit(d, 0, 1).scale(s);
        let bu = b.translate(u);
        let xs = a.cycle().iter().chain(&bu).map(|p| p.x());
        let (lo, hi) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let ok = bu.iter().all(|p| p.x() != lo) && a.cycle().iter().all(|p| p.x() != hi);
        if ok {
            offsets.push(u);
        }
    }
    let m = a.len().min(b.len()) as u128;
    let du = d as u32;
    let bound_holds =
        (offsets.len() as u128).pow(du) * (3 * d as u128).pow(du - 1) >= m.pow(du - 1);
    Ok(StrongJoin3d { offsets, bound_holds })
}

/// The left-right pairs of type `(k, l)`, with the size bound and the
/// per-pair strong-join bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeftRightPairs {
    pub k: usize,
    pub l: usize,
    pub pairs: Vec<(Edge3Polygon, Edge3Polygon)>,
    pub p_k: usize,
    pub p_l: usize,
    /// `2 d^2 |pairs| >= p_k p_l`.
    pub count_bound: bool,
    /// Every pair meets the strong-join bound.
    pub strong_join_bound: bool,
}

pub fn left_right_pairs(d: usize, k: usize, l: usize) -> Result<LeftRightPairs> {
    if k % 2 == 1 || l % 2 == 1 || k < 2 || l < 2 {
        return contract("lengths must be even and positive");
    }
    let sk = edge3_polygons(d, k)?;
    let sl = if k == l { sk.clone() } else { edge3_polygons(d, l)? };
    let mut pairs = Vec::new();
    let mut consider = |xs: &[Edge3Polygon], ys: &[Edge3Polygon]| {
        for a in xs {
            for b in ys {
                if a.x_span() >= b.x_span() && wide_projection(b) {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
    };
    consider(&sk, &sl);
    if k != l {
        consider(&sl, &sk);
    }
    let mut strong_join_bound = true;
    for (a, b) in &pairs {
        strong_join_bound &= strong_join_3d(a, b)?.bound_holds;
    }
    let count_bound = 2 * (d * d) as u128 * pairs.len() as u128 >= sk.len() as u128 * sl.len() as u128;
    Ok(LeftRightPairs {
        k,
        l,
        p_k: sk.len(),
        p_l: sl.len(),
        pairs,
        count_bound,
        strong_join_bound,
    })
}
