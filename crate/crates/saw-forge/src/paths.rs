//! Walks, polygons, compass corners and the two-part decomposition.

use std::collections::HashMap;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{contract, Error, Result};
use crate::geometry::{Edge, Point, RigidMotion};

/// A nearest-neighbour walk, stored as its vertex sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Walk {
    vertices: Vec<Point>,
}

impl Walk {
    /// Builds a walk, checking that consecutive vertices are adjacent.
    pub fn new(vertices: Vec<Point>) -> Result<Walk> {
        let Some(first) = vertices.first() else {
            return contract("a walk has at least one vertex");
        };
        let d = first.dim();
        for v in &vertices {
            if v.dim() != d {
                return Err(Error::DimensionMismatch(d, v.dim()));
            }
        }
        for w in vertices.windows(2) {
            if !w[0].is_adjacent(&w[1]) {
                return contract(format!("step {:?} -> {:?} is not a unit step", w[0], w[1]));
            }
        }
        Ok(Walk { vertices })
    }

    pub(crate) fn from_raw(vertices: Vec<Point>) -> Walk {
        debug_assert!(Walk::new(vertices.clone()).is_ok());
        Walk { vertices }
    }

    /// Builds a walk from `start` by a sequence of unit steps.
    pub fn from_steps(start: Point, steps: &[Point]) -> Result<Walk> {
        let mut v = vec![start];
        for s in steps {
            let next = *v.last().unwrap() + *s;
            v.push(next);
        }
        Walk::new(v)
    }

    pub fn trivial(p: Point) -> Walk {
        Walk { vertices: vec![p] }
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn start(&self) -> Point {
        self.vertices[0]
    }

    pub fn end(&self) -> Point {
        *self.vertices.last().unwrap()
    }

    pub fn is_self_avoiding(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.vertices.len());
        self.vertices.iter().all(|v| seen.insert(*v))
    }

    pub fn reversed(&self) -> Walk {
        let mut v = self.vertices.clone();
        v.reverse();
        Walk { vertices: v }
    }

    pub fn translated(&self, by: Point) -> Walk {
        Walk {
            vertices: self.vertices.iter().map(|&p| p + by).collect(),
        }
    }

    pub fn transformed(&self, m: &RigidMotion) -> Walk {
        Walk {
            vertices: self.vertices.iter().map(|&p| m.apply(p)).collect(),
        }
    }

    /// The subwalk `w_[i, j]`.
    pub fn sub(&self, i: usize, j: usize) -> Walk {
        Walk {
            vertices: self.vertices[i..=j].to_vec(),
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.vertices
            .windows(2)
            .map(|w| Edge::between(w[0], w[1]))
            .collect()
    }
}

impl Serialize for Walk {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Walk", 2)?;
        st.serialize_field("d", &self.dim())?;
        st.serialize_field("vertices", &self.vertices)?;
        st.end()
    }
}

/// True iff the endpoint of `w` is adjacent to its start.
pub fn is_closing(w: &Walk) -> bool {
    w.end().is_adjacent(&w.start())
}

/// The eight compass corners and the bounding box of a finite point set,
/// using coordinates 1 and 2 as `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Compass {
    pub ne: Point,
    pub nw: Point,
    pub en: Point,
    pub es: Point,
    pub se: Point,
    pub sw: Point,
    pub ws: Point,
    pub wn: Point,
    pub xmax: i32,
    pub xmin: i32,
    pub ymax: i32,
    pub ymin: i32,
    pub height: i32,
    pub width: i32,
}

/// Computes the compass report of a non-empty point set.
pub fn compass(points: &[Point]) -> Result<Compass> {
    if points.is_empty() {
        return contract("compass of an empty set");
    }
    let pick = |key: &dyn Fn(&Point) -> (i32, i32)| *points.iter().max_by_key(|p| key(p)).unwrap();
    let ne = pick(&|p| (p.y(), p.x()));
    let nw = pick(&|p| (p.y(), -p.x()));
    let en = pick(&|p| (p.x(), p.y()));
    let es = pick(&|p| (p.x(), -p.y()));
    let se = pick(&|p| (-p.y(), p.x()));
    let sw = pick(&|p| (-p.y(), -p.x()));
    let ws = pick(&|p| (-p.x(), -p.y()));
    let wn = pick(&|p| (-p.x(), p.y()));
    Ok(Compass {
        ne,
        nw,
        en,
        es,
        se,
        sw,
        ws,
        wn,
        xmax: en.x(),
        xmin: wn.x(),
        ymax: ne.y(),
        ymin: se.y(),
        height: ne.y() - se.y(),
        width: en.x() - wn.x(),
    })
}

/// Splits a set of edges in which every vertex has degree two into its
/// cycles. Each cycle is returned as a closed vertex list (first = last),
/// starting from its least vertex and continuing to the lesser neighbour.
pub fn cycles_of(edges: &[Edge]) -> Result<Vec<Vec<Point>>> {
    let mut adj: HashMap<Point, Vec<Point>> = HashMap::new();
    for e in edges {
        adj.entry(e.lo()).or_default().push(e.hi());
        adj.entry(e.hi()).or_default().push(e.lo());
    }
    if adj.values().any(|n| n.len() != 2) {
        return contract("edge set is not a disjoint union of cycles");
    }
    let mut starts: Vec<Point> = adj.keys().copied().collect();
    starts.sort();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for s in starts {
        if seen.contains(&s) {
            continue;
        }
        let nb = &adj[&s];
        let mut cur = nb[0].min(nb[1]);
        let mut prev = s;
        let mut cyc = vec![s];
        seen.insert(s);
        while cur != s {
            if !seen.insert(cur) {
                return contract("malformed cycle");
            }
            cyc.push(cur);
            let nb = &adj[&cur];
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        cyc.push(s);
        out.push(cyc);
    }
    Ok(out)
}

/// A self-avoiding polygon: a single simple cycle of unit edges, stored as
/// its sorted edge list at whatever translation it was built.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Polygon {
    edges: Vec<Edge>,
}

impl Polygon {
    /// Builds a polygon from its edge set; the edges must form one simple cycle.
    pub fn from_edges(mut edges: Vec<Edge>) -> Result<Polygon> {
        edges.sort();
        edges.dedup();
        if edges.len() < 4 {
            return contract("a polygon has at least four edges");
        }
        let d = edges[0].lo().dim();
        if edges.iter().any(|e| e.lo().dim() != d) {
            return contract("mixed dimensions in edge set");
        }
        let cycles = cycles_of(&edges)?;
        if cycles.len() != 1 {
            return contract(format!("edge set splits into {} cycles", cycles.len()));
        }
        Ok(Polygon { edges })
    }

    /// Builds a polygon from a closed vertex sequence. The final vertex may
    /// repeat the first or not.
    pub fn from_cycle(vertices: &[Point]) -> Result<Polygon> {
        let mut v = vertices.to_vec();
        if v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        if v.len() < 4 {
            return contract("a polygon has at least four vertices");
        }
        let mut edges = Vec::with_capacity(v.len());
        for i in 0..v.len() {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            edges.push(Edge::new(a, b)?);
        }
        let n = edges.len();
        let p = Polygon::from_edges(edges)?;
        if p.len() != n {
            return contract("cycle revisits an edge");
        }
        Ok(p)
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<Edge>) -> Polygon {
        Polygon { edges }
    }

    pub fn dim(&self) -> usize {
        self.edges[0].lo().dim()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Sorted vertex list.
    pub fn vertices(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self.edges.iter().flat_map(|e| e.endpoints()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn contains_vertex(&self, p: &Point) -> bool {
        self.edges.iter().any(|e| e.lo() == *p || e.hi() == *p)
    }

    /// The lexicographically maximal vertex.
    pub fn ne(&self) -> Point {
        self.edges.iter().map(|e| e.hi()).max().unwrap()
    }

    pub fn compass(&self) -> Compass {
        compass(&self.vertices()).unwrap()
    }

    pub fn translate(&self, v: Point) -> Polygon {
        Polygon {
            edges: self.edges.iter().map(|e| e.translate(v)).collect(),
        }
    }

    pub fn transformed(&self, m: &RigidMotion) -> Polygon {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge::between(m.apply(e.lo()), m.apply(e.hi())))
            .collect();
        edges.sort();
        Polygon { edges }
    }

    /// The translate with its maximal vertex at the origin.
    pub fn canonical(&self) -> Polygon {
        let ne = self.ne();
        self.translate(-ne)
    }

    pub fn is_canonical(&self) -> bool {
        self.ne() == Point::origin(self.dim())
    }

    /// The cycle traversed from `start` towards `next`, as a closed list.
    pub fn tour_from(&self, start: Point, next: Point) -> Result<Vec<Point>> {
        let e = Edge::new(start, next)?;
        if !self.contains_edge(&e) {
            return contract("tour must begin along a polygon edge");
        }
        let mut adj: HashMap<Point, [Point; 2]> = HashMap::with_capacity(self.len());
        for e in &self.edges {
            for (a, b) in [(e.lo(), e.hi()), (e.hi(), e.lo())] {
                let slot = adj.entry(a).or_insert([a, a]);
                if slot[0] == a {
                    slot[0] = b;
                } else {
                    slot[1] = b;
                }
            }
        }
        let mut tour = Vec::with_capacity(self.len() + 1);
        tour.push(start);
        let (mut prev, mut cur) = (start, next);
        while cur != start {
            tour.push(cur);
            let nb = adj[&cur];
            let nx = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = nx;
        }
        tour.push(start);
        Ok(tour)
    }

    /// The planar tour beginning `NE, NE - e1` and ending `NE - e2, NE`.
    pub fn tour(&self) -> Result<Vec<Point>> {
        if self.dim() != 2 {
            return Err(Error::Unsupported(
                "the planar tour convention needs d = 2".into(),
            ));
        }
        let ne = self.ne();
        self.tour_from(ne, ne - Point::xy(1, 0))
    }

    /// The edge list of `self` symmetric-differenced with `other`.
    pub fn symmetric_difference(&self, other: &[Edge]) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| !other.contains(e))
            .copied()
            .collect();
        for e in other {
            if !self.contains_edge(e) && !out.contains(e) {
                out.push(*e);
            }
        }
        out.sort();
        out
    }
}

impl Serialize for Polygon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Polygon", 3)?;
        st.serialize_field("d", &self.dim())?;
        let vertices = match self.tour() {
            Ok(t) => t,
            Err(_) => self.vertices(),
        };
        st.serialize_field("vertices", &vertices)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

/// The polygon of a closing walk: its edges plus the missing edge.
pub fn polygon_of(w: &Walk) -> Result<Polygon> {
    if !is_closing(w) {
        return contract("polygon_of needs a closing walk");
    }
    if w.len() < 3 {
        return contract("closing walks of length one have no polygon");
    }
    if !w.is_self_avoiding() {
        return contract("polygon_of needs a self-avoiding walk");
    }
    let mut edges = w.edges();
    edges.push(Edge::between(w.end(), w.start()));
    Polygon::from_edges(edges)
}

/// Canonical planar tour of a polygon in canonical position.
pub fn canonical_tour(p: &Polygon) -> Result<Vec<Point>> {
    if p.dim() != 2 {
        return Err(Error::Unsupported(
            "canonical tour is planar; see edge3 for d >= 3".into(),
        ));
    }
    if !p.is_canonical() {
        return contract("polygon is not in canonical position");
    }
    p.tour()
}

/// The ordered pair of walks emanating from the maximal vertex of a walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPartDecomposition {
    pub first: Walk,
    pub second: Walk,
    /// Index `j` with `w_j` the maximal vertex of `w`.
    pub split_index: usize,
    /// True when `first` is the reversed initial segment `w_[0, j]`.
    pub first_is_prefix: bool,
}

/// Splits `w` at its maximal vertex. Of the two resulting walks, the first
/// part is the one whose vertex list is larger, comparing vertices pointwise
/// in the lattice order; a proper prefix counts as smaller.
pub fn two_part_decompose(w: &Walk) -> TwoPartDecomposition {
    let v = w.vertices();
    let j = (0..v.len()).max_by_key(|&i| v[i]).unwrap();
    let mut a: Vec<Point> = v[..=j].to_vec();
    a.reverse();
    let b: Vec<Point> = v[j..].to_vec();
    if a >= b {
        TwoPartDecomposition {
            first: Walk { vertices: a },
            second: Walk { vertices: b },
            split_index: j,
            first_is_prefix: true,
        }
    } else {
        TwoPartDecomposition {
            first: Walk { vertices: b },
            second: Walk { vertices: a },
            split_index: j,
            first_is_prefix: false,
        }
    }
}

/// Length of the first part of the two-part decomposition, computed
/// without allocating.
pub fn first_part_len(v: &[Point]) -> usize {
    let mut j = 0;
    for i in 1..v.len() {
        if v[i] > v[j] {
            j = i;
        }
    }
    let n = v.len() - 1;
    let mut k = 0;
    loop {
        let a = if k <= j { Some(v[j - k]) } else { None };
        let b = if j + k <= n { Some(v[j + k]) } else { None };
        match (a, b) {
            (Some(x), Some(y)) if x == y => k += 1,
            (Some(x), Some(y)) => return if x > y { j } else { n - j },
            (Some(_), None) => return j,
            (None, Some(_)) => return n - j,
            (None, None) => return j,
        }
    }
}

/// The closing walk `w'(i) = w(j + i mod n+1)`.
pub fn cyclic_shift(w: &Walk, j: usize) -> Result<Walk> {
    if !is_closing(w) {
        return contract("cyclic shift needs a closing walk");
    }
    let n = w.len();
    if j == 0 || j >= n {
        return contract(format!("shift {j} outside 1..={}", n.saturating_sub(1)));
    }
    let v = w.vertices();
    Ok(Walk {
        vertices: (0..=n).map(|i| v[(j + i) % (n + 1)]).collect(),
    })
}
