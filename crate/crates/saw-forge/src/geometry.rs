//! Integer lattice primitives.
//!
//! Points of `Z^d` for `2 <= d <= 4`, unit edges, plaquettes and the rigid
//! motions used by the surgeries. The total order on points is the one used
//! throughout the crate: in two dimensions the `y` coordinate is compared
//! first, in higher dimensions the order is plain lexicographic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{contract, Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 4;

/// Bound on coordinate magnitudes accepted at API boundaries.
pub const COORD_BOUND: i32 = 1 << 20;

/// A point of the integer lattice `Z^d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    d: u8,
    c: [i32; MAX_DIM],
}

impl Point {
    /// Builds a point from its coordinates. Panics on an unsupported dimension.
    pub fn new(coords: &[i32]) -> Point {
        Point::try_new(coords).expect("invalid lattice point")
    }

    pub fn try_new(coords: &[i32]) -> Result<Point> {
        let d = coords.len();
        if !(2..=MAX_DIM).contains(&d) {
            return contract(format!("dimension {d} outside 2..={MAX_DIM}"));
        }
        if coords.iter().any(|c| c.abs() > COORD_BOUND) {
            return contract("coordinate magnitude exceeds bound");
        }
        let mut c = [0; MAX_DIM];
        c[..d].copy_from_slice(coords);
        Ok(Point { d: d as u8, c })
    }

    pub fn xy(x: i32, y: i32) -> Point {
        Point { d: 2, c: [x, y, 0, 0] }
    }

    pub fn origin(d: usize) -> Point {
        assert!((2..=MAX_DIM).contains(&d), "unsupported dimension {d}");
        Point { d: d as u8, c: [0; MAX_DIM] }
    }

    /// The unit vector `sign * e_{axis+1}`.
    pub fn unit(d: usize, axis: usize, sign: i32) -> Point {
        let mut p = Point::origin(d);
        p.c[axis] = sign;
        p
    }

    /// The `2d` unit vectors, ordered `+e1, -e1, +e2, -e2, ...`.
    pub fn units(d: usize) -> Vec<Point> {
        (0..d)
            .flat_map(|a| [Point::unit(d, a, 1), Point::unit(d, a, -1)])
            .collect()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d as usize
    }

    #[inline]
    pub fn coords(&self) -> &[i32] {
        &self.c[..self.d as usize]
    }

    #[inline]
    pub fn coord(&self, i: usize) -> i32 {
        self.c[i]
    }

    #[inline]
    pub fn x(&self) -> i32 {
        self.c[0]
    }

    #[inline]
    pub fn y(&self) -> i32 {
        self.c[1]
    }

    pub fn with_coord(mut self, i: usize, v: i32) -> Point {
        self.c[i] = v;
        self
    }

    pub fn scale(mut self, k: i32) -> Point {
        for v in self.c.iter_mut() {
            *v *= k;
        }
        self
    }

    pub fn l1(&self) -> i32 {
        self.c.iter().map(|v| v.abs()).sum()
    }

    #[inline]
    pub fn is_adjacent(&self, other: &Point) -> bool {
        self.d == other.d && (*self - *other).l1() == 1
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(mut self, o: Point) -> Point {
        debug_assert_eq!(self.d, o.d);
        for i in 0..MAX_DIM {
            self.c[i] += o.c[i];
        }
        self
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(mut self, o: Point) -> Point {
        debug_assert_eq!(self.d, o.d);
        for i in 0..MAX_DIM {
            self.c[i] -= o.c[i];
        }
        self
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        self.scale(-1)
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Point) -> Ordering {
        self.d.cmp(&other.d).then_with(|| {
            if self.d == 2 {
                (self.c[1], self.c[0]).cmp(&(other.c[1], other.c[0]))
            } else {
                self.c.cmp(&other.c)
            }
        })
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Point) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.dim()))?;
        for v in self.coords() {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

/// Compares two points in the crate's lexicographic order.
pub fn lex_compare(a: &Point, b: &Point) -> Result<Ordering> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(a.cmp(b))
}

/// An unordered nearest-neighbour edge, stored with `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    lo: Point,
    hi: Point,
}

impl Edge {
    pub fn new(a: Point, b: Point) -> Result<Edge> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch(a.dim(), b.dim()));
        }
        if !a.is_adjacent(&b) {
            return contract(format!("{a} and {b} are not adjacent"));
        }
        Ok(Edge::between(a, b))
    }

    /// Builds an edge between points already known to be adjacent.
    #[inline]
    pub fn between(a: Point, b: Point) -> Edge {
        debug_assert!(a.is_adjacent(&b));
        if a < b {
            Edge { lo: a, hi: b }
        } else {
            Edge { lo: b, hi: a }
        }
    }

    #[inline]
    pub fn lo(&self) -> Point {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> Point {
        self.hi
    }

    pub fn endpoints(&self) -> [Point; 2] {
        [self.lo, self.hi]
    }

    /// Index of the coordinate axis the edge is parallel to.
    pub fn axis(&self) -> usize {
        (0..self.lo.dim())
            .find(|&i| self.lo.coord(i) != self.hi.coord(i))
            .unwrap()
    }

    pub fn is_horizontal(&self) -> bool {
        self.axis() == 0
    }

    pub fn translate(&self, v: Point) -> Edge {
        Edge::between(self.lo + v, self.hi + v)
    }

    pub fn other(&self, p: Point) -> Point {
        if p == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}-{:?}", self.lo, self.hi)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

/// A unit square of `Z^2`, identified by its lower-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Plaquette {
    pub corner: Point,
}

impl Plaquette {
    pub fn new(corner: Point) -> Plaquette {
        assert_eq!(corner.dim(), 2, "plaquettes live in two dimensions");
        Plaquette { corner }
    }

    pub fn at(x: i32, y: i32) -> Plaquette {
        Plaquette::new(Point::xy(x, y))
    }

    /// Bottom and top edges.
    pub fn horizontal_edges(&self) -> [Edge; 2] {
        let c = self.corner;
        let e1 = Point::xy(1, 0);
        let e2 = Point::xy(0, 1);
        [Edge::between(c, c + e1), Edge::between(c + e2, c + e1 + e2)]
    }

    /// Left and right edges.
    pub fn vertical_edges(&self) -> [Edge; 2] {
        let c = self.corner;
        let e1 = Point::xy(1, 0);
        let e2 = Point::xy(0, 1);
        [Edge::between(c, c + e2), Edge::between(c + e1, c + e1 + e2)]
    }

    pub fn edges(&self) -> [Edge; 4] {
        let [b, t] = self.horizontal_edges();
        let [l, r] = self.vertical_edges();
        [b, t, l, r]
    }

    pub fn vertices(&self) -> [Point; 4] {
        let c = self.corner;
        [
            c,
            c + Point::xy(1, 0),
            c + Point::xy(1, 1),
            c + Point::xy(0, 1),
        ]
    }
}

impl Serialize for Plaquette {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.corner.serialize(s)
    }
}

/// Translations, reflections in axial hyperplanes and quarter-turn rotations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidMotion {
    Translate(Point),
    /// Reflection in the hyperplane `{x_axis = through_axis}` through `through`.
    Reflect { axis: usize, through: Point },
    /// Counterclockwise rotation by `quarter_turns * pi/2` in the plane of
    /// axes `(from, to)` about `center`; `e_from` turns towards `e_to`.
    Rotate {
        center: Point,
        from: usize,
        to: usize,
        quarter_turns: u8,
    },
    /// Apply the motions in order.
    Compose(Vec<RigidMotion>),
}

impl RigidMotion {
    pub fn reflect_vertical_line(through: Point) -> RigidMotion {
        RigidMotion::Reflect { axis: 0, through }
    }

    pub fn reflect_horizontal_line(through: Point) -> RigidMotion {
        RigidMotion::Reflect { axis: 1, through }
    }

    pub fn rotate_ccw(center: Point, quarter_turns: u8) -> RigidMotion {
        RigidMotion::Rotate {
            center,
            from: 0,
            to: 1,
            quarter_turns,
        }
    }

    pub fn inverse(&self) -> RigidMotion {
        match self {
            RigidMotion::Translate(v) => RigidMotion::Translate(-*v),
            RigidMotion::Reflect { .. } => self.clone(),
            RigidMotion::Rotate {
                center,
                from,
                to,
                quarter_turns,
            } => RigidMotion::Rotate {
                center: *center,
                from: *from,
                to: *to,
                quarter_turns: (4 - quarter_turns % 4) % 4,
            },
            RigidMotion::Compose(ms) => {
                RigidMotion::Compose(ms.iter().rev().map(|m| m.inverse()).collect())
            }
        }
    }

    /// Applies the motion, assuming dimensions agree.
    pub fn apply(&self, p: Point) -> Point {
        match self {
            RigidMotion::Translate(v) => p + *v,
            RigidMotion::Reflect { axis, through } => {
                p.with_coord(*axis, 2 * through.coord(*axis) - p.coord(*axis))
            }
            RigidMotion::Rotate {
                center,
                from,
                to,
                quarter_turns,
            } => {
                let mut q = p - *center;
                for _ in 0..quarter_turns % 4 {
                    let (a, b) = (q.coord(*from), q.coord(*to));
                    q = q.with_coord(*from, -b).with_coord(*to, a);
                }
                q + *center
            }
            RigidMotion::Compose(ms) => ms.iter().fold(p, |q, m| m.apply(q)),
        }
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        let bad = |q: &Point| q.dim() != d;
        match self {
            RigidMotion::Translate(v) if bad(v) => Err(Error::DimensionMismatch(v.dim(), d)),
            RigidMotion::Reflect { axis, through } => {
                if bad(through) {
                    Err(Error::DimensionMismatch(through.dim(), d))
                } else if *axis >= d {
                    contract(format!("reflection axis {axis} in dimension {d}"))
                } else {
                    Ok(())
                }
            }
            RigidMotion::Rotate {
                center, from, to, ..
            } => {
                if bad(center) {
                    Err(Error::DimensionMismatch(center.dim(), d))
                } else if *from >= d || *to >= d || from == to {
                    contract("invalid rotation plane")
                } else {
                    Ok(())
                }
            }
            RigidMotion::Compose(ms) => ms.iter().try_for_each(|m| m.check_dim(d)),
            _ => Ok(()),
        }
    }
}

/// Applies `m` to `p`, checking that the dimensions agree.
pub fn apply_motion(m: &RigidMotion, p: Point) -> Result<Point> {
    m.check_dim(p.dim())?;
    Ok(m.apply(p))
}
