//! The Madras join of two planar polygons.
//!
//! The right polygon `σ` is slid in from the far right until some vertex of
//! it shares a column with a vertex of `τ` at vertical distance at most two.
//! The highest point `Y` whose vertical neighbourhood `{Y - e2, Y, Y + e2}`
//! meets both polygons then anchors a local modification of each: `τ` is
//! extended rightwards through a three-row corridor by eight edges, and the
//! half-turn image of `σ` about `Y` likewise. The two extended polygons are
//! glued across the junction plaquette.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::geometry::{Edge, Plaquette, Point, RigidMotion};
use crate::paths::Polygon;

/// The local configuration met at `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MadrasCase {
    Ia,
    Ib,
    IIa,
    IIb,
    IIci,
    IIcii,
    IIIa,
    IIIb,
    IIIci,
    IIIcii,
}

impl MadrasCase {
    pub fn label(&self) -> &'static str {
        match self {
            MadrasCase::Ia => "Ia",
            MadrasCase::Ib => "Ib",
            MadrasCase::IIa => "IIa",
            MadrasCase::IIb => "IIb",
            MadrasCase::IIci => "IIci",
            MadrasCase::IIcii => "IIcii",
            MadrasCase::IIIa => "IIIa",
            MadrasCase::IIIb => "IIIb",
            MadrasCase::IIIci => "IIIci",
            MadrasCase::IIIcii => "IIIcii",
        }
    }

    /// How far right of `Y` the modified polygon reaches.
    pub fn extension(&self) -> i32 {
        use MadrasCase::*;
        match self {
            IIa | IIci | IIIa | IIIci => 2,
            _ => 3,
        }
    }

    fn mirrored(self) -> MadrasCase {
        use MadrasCase::*;
        match self {
            IIa => IIIa,
            IIb => IIIb,
            IIci => IIIci,
            IIcii => IIIcii,
            c => c,
        }
    }
}

/// Result of a Madras join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinOutcome {
    /// The joined polygon, in the coordinates of `τ`.
    pub result: Polygon,
    pub junction: Plaquette,
    /// `(T1, T2)`.
    pub shifts: (i32, i32),
    pub y: Point,
    /// Cases met by `τ` and by the half-turned `σ'`.
    pub case_tags: (MadrasCase, MadrasCase),
    /// `T1 + T2 == 0`.
    pub joinable: bool,
    /// `σ' = σ + T1 e1`.
    pub sigma_placed: Polygon,
    /// The extended `τ`.
    pub tau_modified: Polygon,
    /// The extended `σ'`, translated by `T2 e1` into its place in `result`.
    pub sigma_modified: Polygon,
}

/// Whether `[ymin(a) - 1, ymax(a) + 1]` meets `[ymin(b) - 1, ymax(b) + 1]`.
pub fn intervals_intersect(a: &Polygon, b: &Polygon) -> bool {
    let (ca, cb) = (a.compass(), b.compass());
    ca.ymin - 1 <= cb.ymax + 1 && cb.ymin - 1 <= ca.ymax + 1
}

fn columns(p: &Polygon) -> BTreeMap<i32, Vec<i32>> {
    let mut cols: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
    for v in p.vertices() {
        cols.entry(v.x()).or_default().push(v.y());
    }
    cols
}

fn contact(tau: &BTreeMap<i32, Vec<i32>>, sigma: &BTreeMap<i32, Vec<i32>>, s: i32) -> bool {
    tau.iter().any(|(x, ty)| {
        sigma
            .get(&(x - s))
            .is_some_and(|sy| ty.iter().any(|a| sy.iter().any(|b| (a - b).abs() <= 2)))
    })
}

fn xy(x: i32, y: i32) -> Point {
    Point::xy(x, y)
}

struct Rewrite {
    case: MadrasCase,
    remove: &'static [((i32, i32), (i32, i32))],
    path: &'static [(i32, i32)],
}

const IA: Rewrite = Rewrite {
    case: MadrasCase::Ia,
    remove: &[((0, 0), (0, -1))],
    path: &[(0, 0), (1, 0), (1, 1), (2, 1), (3, 1), (3, 0), (3, -1), (2, -1), (1, -1), (0, -1)],
};

const IB: Rewrite = Rewrite {
    case: MadrasCase::Ib,
    remove: &[((0, 0), (0, 1))],
    path: &[(0, 0), (1, 0), (1, -1), (2, -1), (3, -1), (3, 0), (3, 1), (2, 1), (1, 1), (0, 1)],
};

const IIA: Rewrite = Rewrite {
    case: MadrasCase::IIa,
    remove: &[((-1, -1), (0, -1))],
    path: &[(-1, -1), (-1, 0), (0, 0), (1, 0), (1, 1), (2, 1), (2, 0), (2, -1), (1, -1), (0, -1)],
};

const IIB: Rewrite = Rewrite {
    case: MadrasCase::IIb,
    remove: &[((-1, 0), (-1, -1)), ((-1, -1), (0, -1))],
    path: &[
        (-1, 0),
        (0, 0),
        (1, 0),
        (1, 1),
        (2, 1),
        (3, 1),
        (3, 0),
        (3, -1),
        (2, -1),
        (1, -1),
        (0, -1),
    ],
};

const IICI: Rewrite = Rewrite {
    case: MadrasCase::IIci,
    remove: &[((-1, 0), (-1, 1))],
    path: &[(-1, 0), (0, 0), (1, 0), (1, -1), (2, -1), (2, 0), (2, 1), (1, 1), (0, 1), (-1, 1)],
};

const IICII: Rewrite = Rewrite {
    case: MadrasCase::IIcii,
    remove: &[((-1, 0), (-1, 1)), ((-1, 1), (0, 1))],
    path: &[
        (-1, 0),
        (0, 0),
        (1, 0),
        (1, -1),
        (2, -1),
        (3, -1),
        (3, 0),
        (3, 1),
        (2, 1),
        (1, 1),
        (0, 1),
    ],
};

/// Selects the rewrite for a polygon given relative to `Y = 0`, where
/// `(0, 0)` or `(0, -1)` is a vertex. Returns `None` otherwise.
fn select(has_v: &dyn Fn(i32, i32) -> bool, has_e: &dyn Fn((i32, i32), (i32, i32)) -> bool) -> Option<&'static Rewrite> {
    if has_v(0, 0) {
        if has_e((0, 0), (0, -1)) {
            Some(&IA)
        } else {
            Some(&IB)
        }
    } else if has_v(0, -1) {
        if !has_v(-1, 0) {
            Some(&IIA)
        } else if has_e((-1, 0), (-1, -1)) {
            Some(&IIB)
        } else if !has_v(0, 1) {
            Some(&IICI)
        } else {
            Some(&IICII)
        }
    } else {
        None
    }
}

fn apply_rewrite(local: &Polygon, rw: &Rewrite, flip: bool) -> Result<Polygon> {
    let f = |(x, y): (i32, i32)| if flip { xy(x, -y) } else { xy(x, y) };
    let remove: Vec<Edge> = rw
        .remove
        .iter()
        .map(|&(a, b)| Edge::between(f(a), f(b)))
        .collect();
    if let Some(e) = remove.iter().find(|e| !local.contains_edge(e)) {
        return Err(Error::JoinFailure(format!(
            "case {} expects edge {e:?} at Y",
            rw.case.label()
        )));
    }
    let mut edges: Vec<Edge> = local
        .edges()
        .iter()
        .filter(|e| !remove.contains(e))
        .copied()
        .collect();
    let path: Vec<Point> = rw.path.iter().map(|&p| f(p)).collect();
    let kept: HashSet<Point> = edges.iter().flat_map(|e| e.endpoints()).collect();
    for v in &path[1..path.len() - 1] {
        if kept.contains(v) {
            return Err(Error::JoinFailure(format!(
                "case {} runs into the polygon at {v:?}",
                rw.case.label()
            )));
        }
    }
    edges.extend(path.windows(2).map(|w| Edge::between(w[0], w[1])));
    let out = Polygon::from_edges(edges)
        .map_err(|e| Error::JoinFailure(format!("case {}: {e}", rw.case.label())))?;
    if out.len() != local.len() + 8 {
        return Err(Error::JoinFailure(format!(
            "case {} changed the length by {}",
            rw.case.label(),
            out.len() as i64 - local.len() as i64
        )));
    }
    Ok(out)
}

/// Extends `p` through the corridor to the right of `y`.
pub(crate) fn extend_at(p: &Polygon, y: Point) -> Result<(Polygon, MadrasCase)> {
    let local = p.translate(-y);
    let verts: HashSet<Point> = local.vertices().into_iter().collect();
    let has_v = |x: i32, yy: i32| verts.contains(&xy(x, yy));
    let has_e = |a: (i32, i32), b: (i32, i32)| local.contains_edge(&Edge::between(xy(a.0, a.1), xy(b.0, b.1)));
    let (rw, flip) = match select(&has_v, &has_e) {
        Some(rw) => (rw, false),
        None => {
            let has_v = |x: i32, yy: i32| has_v(x, -yy);
            let has_e = |a: (i32, i32), b: (i32, i32)| has_e((a.0, -a.1), (b.0, -b.1));
            match select(&has_v, &has_e) {
                Some(rw) if !matches!(rw.case, MadrasCase::Ia | MadrasCase::Ib) => (rw, true),
                _ => {
                    return Err(Error::JoinFailure(
                        "no vertex in the vertical neighbourhood of Y".into(),
                    ))
                }
            }
        }
    };
    let out = apply_rewrite(&local, rw, flip)?;
    let case = if flip { rw.case.mirrored() } else { rw.case };
    Ok((out.translate(y), case))
}

/// Joins `tau` with `sigma` (placed at its given vertical position).
pub fn madras_join(tau: &Polygon, sigma: &Polygon) -> Result<JoinOutcome> {
    if tau.dim() != 2 || sigma.dim() != 2 {
        return Err(Error::Unsupported("the Madras join is planar".into()));
    }
    if !intervals_intersect(tau, sigma) {
        return Err(Error::JoinFailure(
            "vertical extents are too far apart to join".into(),
        ));
    }
    let tcols = columns(tau);
    let scols = columns(sigma);
    let (ct, cs) = (tau.compass(), sigma.compass());
    let start = ct.xmax - cs.xmin + 1;
    let stop = ct.xmin - cs.xmax - 1;
    let mut t1 = None;
    let mut s = start;
    while s >= stop {
        if contact(&tcols, &scols, s) {
            t1 = Some(s);
            break;
        }
        s -= 1;
    }
    let t1 = t1.ok_or_else(|| Error::JoinFailure("no contact while sliding".into()))?;
    let sigma_placed = sigma.translate(xy(t1, 0));
    let spcols = columns(&sigma_placed);

    // candidate anchors, keyed by height
    let mut cands: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
    for (x, ty) in &tcols {
        let Some(sy) = spcols.get(x) else { continue };
        let near = |ys: &Vec<i32>, y: i32| ys.iter().any(|v| (v - y).abs() <= 1);
        let mut ys: Vec<i32> = ty.iter().flat_map(|&y| [y - 1, y, y + 1]).collect();
        ys.sort();
        ys.dedup();
        for y in ys {
            if near(ty, y) && near(sy, y) {
                cands.entry(y).or_default().push(*x);
            }
        }
    }
    let (&y2, xs) = cands
        .iter()
        .next_back()
        .ok_or_else(|| Error::JoinFailure("no anchor point".into()))?;
    if xs.len() != 1 {
        return Err(Error::JoinFailure(format!(
            "anchor height {y2} attained in {} columns",
            xs.len()
        )));
    }
    let y = xy(xs[0], y2);

    let rows = y2 - 1..=y2 + 1;
    if tau
        .vertices()
        .iter()
        .any(|v| v.x() > y.x() && rows.contains(&v.y()))
    {
        return Err(Error::JoinFailure("right corridor meets tau".into()));
    }
    if sigma_placed
        .vertices()
        .iter()
        .any(|v| v.x() < y.x() && rows.contains(&v.y()))
    {
        return Err(Error::JoinFailure("left corridor meets sigma".into()));
    }

    let (tau_mod, case_t) = extend_at(tau, y)?;
    let half_turn = RigidMotion::rotate_ccw(y, 2);
    let turned = sigma_placed.transformed(&half_turn);
    let (turned_mod, case_s) = extend_at(&turned, y)?;
    let sigma_mod0 = turned_mod.transformed(&half_turn);
    let t2 = case_t.extension() + case_s.extension() + 1;
    let sigma_mod = sigma_mod0.translate(xy(t2, 0));

    let x_col = y.x() + case_t.extension();
    let junction = Plaquette::at(x_col, y2);
    let [left, right] = junction.vertical_edges();
    if !tau_mod.contains_edge(&left) || !sigma_mod.contains_edge(&right) {
        return Err(Error::JoinFailure("junction edges missing".into()));
    }
    let tv: HashSet<Point> = tau_mod.vertices().into_iter().collect();
    if sigma_mod.vertices().iter().any(|v| tv.contains(v)) {
        return Err(Error::JoinFailure("modified polygons overlap".into()));
    }
    let mut edges: Vec<Edge> = tau_mod.edges().to_vec();
    edges.extend_from_slice(sigma_mod.edges());
    edges.retain(|e| *e != left && *e != right);
    edges.extend(junction.horizontal_edges());
    let result = Polygon::from_edges(edges)
        .map_err(|e| Error::JoinFailure(format!("glued edges are not a polygon: {e}")))?;
    if result.len() != tau.len() + sigma.len() + 16 {
        return Err(Error::JoinFailure("joined length is wrong".into()));
    }
    Ok(JoinOutcome {
        result,
        junction,
        shifts: (t1, t2),
        y,
        case_tags: (case_t, case_s),
        joinable: t1 + t2 == 0,
        sigma_placed,
        tau_modified: tau_mod,
        sigma_modified: sigma_mod,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polygon {
        Polygon::from_cycle(&[xy(0, 0), xy(-1, 0), xy(-1, -1), xy(0, -1)]).unwrap()
    }

    #[test]
    fn two_squares() {
        let j = madras_join(&square(), &square()).unwrap();
        assert_eq!(j.result.len(), 24);
        assert_eq!(j.case_tags, (MadrasCase::IIa, MadrasCase::IIIa));
        assert_eq!(j.shifts, (1, 5));
        let far = square().translate(xy(0, 5));
        assert!(madras_join(&square(), &far).is_err());
    }
}
