//! Polygon joining surgeries in the plane.
//!
//! Plaquette joins, the Madras join with its junction plaquette, global join
//! plaquettes and the reflection maps built from them, the left/right
//! polygon classes, regulation joins, and an audit for multi-valued maps.

mod madras;
mod reflect;
mod rgj;

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{contract, Error, Result};
use crate::geometry::{Plaquette, Point};
use crate::paths::{cycles_of, Polygon};

pub use madras::{intervals_intersect, madras_join, JoinOutcome, MadrasCase};
pub use reflect::{
    fold_bridge, reconstruct_reflect_split, reflect_split_map, unfold_half_space,
};
pub use rgj::{
    rgj_enumerate, rgj_first_part_law, strong_join_offsets, PrefixLaw, RgjConfig, RgjEntry,
    RgjReport, StrongJoin,
};

fn require_planar(p: &Polygon) -> Result<()> {
    if p.dim() != 2 {
        return Err(Error::Unsupported("plaquette surgery is planar".into()));
    }
    Ok(())
}

/// Splits `p` along a plaquette, returning the two resulting polygons if
/// `p Δ P` is a union of exactly two cycles.
pub fn split_at(p: &Polygon, plaq: &Plaquette) -> Option<(Polygon, Polygon)> {
    let diff = p.symmetric_difference(&plaq.edges());
    let cycles = cycles_of(&diff).ok()?;
    if cycles.len() != 2 {
        return None;
    }
    let a = Polygon::from_cycle(&cycles[0]).ok()?;
    let b = Polygon::from_cycle(&cycles[1]).ok()?;
    Some((a, b))
}

/// Plaquettes meeting `p` in exactly their two horizontal edges and
/// splitting it into two polygons, sorted by corner.
pub fn join_plaquettes(p: &Polygon) -> Result<Vec<Plaquette>> {
    require_planar(p)?;
    let mut out = Vec::new();
    for e in p.edges().iter().filter(|e| e.is_horizontal()) {
        let plaq = Plaquette::new(e.lo());
        let [_, top] = plaq.horizontal_edges();
        let [l, r] = plaq.vertical_edges();
        if p.contains_edge(&top) && !p.contains_edge(&l) && !p.contains_edge(&r) {
            if let Some((a, b)) = split_at(p, &plaq) {
                debug_assert_eq!(a.len() + b.len(), p.len());
                out.push(plaq);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A global join plaquette with the split it certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalJoin {
    pub plaquette: Plaquette,
    /// The piece containing the maximal vertex.
    pub left: Polygon,
    /// The piece containing every rightmost vertex.
    pub right: Polygon,
    /// Tour index of the first step across a horizontal edge of the plaquette.
    pub first_crossing: usize,
}

/// Global join plaquettes of `p`, in the order in which the tour from the
/// maximal vertex first crosses one of their horizontal edges.
pub fn global_join_plaquettes(p: &Polygon) -> Result<Vec<GlobalJoin>> {
    require_planar(p)?;
    let ne = p.ne();
    let c = p.compass();
    let rightmost: Vec<Point> = p.vertices().into_iter().filter(|v| v.x() == c.xmax).collect();
    let tour = p.tour()?;
    let mut out = Vec::new();
    for plaq in join_plaquettes(p)? {
        let (a, b) = split_at(p, &plaq).unwrap();
        let (left, right) = if a.contains_vertex(&ne) { (a, b) } else { (b, a) };
        if !rightmost.iter().all(|v| right.contains_vertex(v)) {
            continue;
        }
        let hs = plaq.horizontal_edges();
        let first_crossing = tour
            .windows(2)
            .position(|w| hs.contains(&crate::geometry::Edge::between(w[0], w[1])))
            .unwrap();
        out.push(GlobalJoin {
            plaquette: plaq,
            left,
            right,
            first_crossing,
        });
    }
    out.sort_by_key(|g| g.first_crossing);
    Ok(out)
}

/// Membership of a polygon in the left and right classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolygonClassFlags {
    /// `h >= w` and `y(ES)` at most the mid-height.
    pub is_frak_l: bool,
    /// `h >= w`.
    pub is_frak_r: bool,
    /// `is_frak_l` and left-long.
    pub is_left: bool,
    pub is_right: bool,
    pub left_long: bool,
    /// Tour index of the SE corner.
    pub se_index: usize,
}

pub fn classify_polygon(p: &Polygon) -> Result<PolygonClassFlags> {
    require_planar(p)?;
    if !p.is_canonical() {
        return contract("classification expects a canonical polygon");
    }
    let c = p.compass();
    let tour = p.tour()?;
    let se_index = tour.iter().position(|v| *v == c.se).unwrap();
    let tall = c.height >= c.width;
    let low_es = 2 * c.es.y() <= c.ymin + c.ymax;
    let left_long = 2 * se_index >= p.len();
    Ok(PolygonClassFlags {
        is_frak_l: tall && low_es,
        is_frak_r: tall,
        is_left: tall && low_es && left_long,
        is_right: tall,
        left_long,
        se_index,
    })
}

/// Joins two polygons along the plaquette whose upper-left vertex is
/// `EN(a)`, after translating `b` so that `WN(b) = EN(a) + e1`.
pub fn simple_plaquette_join(a: &Polygon, b: &Polygon) -> Result<Polygon> {
    require_planar(a)?;
    require_planar(b)?;
    let en = a.compass().en;
    let wn = b.compass().wn;
    let shifted = b.translate(en + Point::xy(1, 0) - wn);
    let plaq = Plaquette::new(en - Point::xy(0, 1));
    let [l, r] = plaq.vertical_edges();
    if !a.contains_edge(&l) || !shifted.contains_edge(&r) {
        return Err(Error::JoinFailure(
            "designated plaquette does not have one vertical edge in each polygon".into(),
        ));
    }
    let mut edges: Vec<_> = a.edges().to_vec();
    edges.extend_from_slice(shifted.edges());
    edges.retain(|e| *e != l && *e != r);
    edges.extend(plaq.horizontal_edges());
    let out = Polygon::from_edges(edges)
        .map_err(|e| Error::JoinFailure(format!("plaquette join produced no polygon: {e}")))?;
    Ok(out.canonical())
}

/// Degree statistics of a multi-valued map given by its arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiValuedMapAudit {
    pub domain_size: usize,
    pub codomain_size: usize,
    pub min_out_degree: usize,
    pub max_in_degree: usize,
    /// `M |B| >= m |A|`.
    pub bound_holds: bool,
}

/// Audits `|B| >= m |A| / M` for the map with the given (deduplicated) arrows.
pub fn audit_multivalued_map<S, T>(arrows: &[(S, T)]) -> Result<MultiValuedMapAudit>
where
    S: Hash + Eq + Clone,
    T: Hash + Eq + Clone,
{
    if arrows.is_empty() {
        return contract("audit needs at least one arrow");
    }
    let mut seen = std::collections::HashSet::new();
    let mut out: HashMap<S, usize> = HashMap::new();
    let mut inn: HashMap<T, usize> = HashMap::new();
    for (s, t) in arrows {
        if !seen.insert((s.clone(), t.clone())) {
            continue;
        }
        *out.entry(s.clone()).or_default() += 1;
        *inn.entry(t.clone()).or_default() += 1;
    }
    let m = *out.values().min().unwrap();
    let big_m = *inn.values().max().unwrap();
    Ok(MultiValuedMapAudit {
        domain_size: out.len(),
        codomain_size: inn.len(),
        min_out_degree: m,
        max_in_degree: big_m,
        bound_holds: big_m * inn.len() >= m * out.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polygon {
        Polygon::from_cycle(&[
            Point::xy(0, 0),
            Point::xy(-1, 0),
            Point::xy(-1, -1),
            Point::xy(0, -1),
        ])
        .unwrap()
    }

    #[test]
    fn two_squares_make_a_bar() {
        let j = simple_plaquette_join(&square(), &square()).unwrap();
        assert_eq!(j.len(), 8);
        let c = j.compass();
        assert_eq!((c.width, c.height), (3, 1));
        let plaqs = join_plaquettes(&j).unwrap();
        assert_eq!(plaqs, vec![Plaquette::at(-2, -1)]);
        // the maximal vertex is also rightmost, so no split is global
        assert!(global_join_plaquettes(&j).unwrap().is_empty());
        assert!(join_plaquettes(&square()).unwrap().is_empty());
    }

    #[test]
    fn tower_with_neck_has_a_global_plaquette() {
        let p = tower_neck();
        let g = global_join_plaquettes(&p).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].plaquette, Plaquette::at(0, -2));
        assert_eq!((g[0].left.len(), g[0].right.len()), (6, 4));
    }

    /// Cells (0,0), (0,1), (1,0), (2,0): a two-high tower, a neck cell and a
    /// right cell; canonical position.
    pub(crate) fn tower_neck() -> Polygon {
        let v: [(i32, i32); 7] = [(0, 0), (3, 0), (3, 1), (1, 1), (1, 2), (0, 2), (0, 1)];
        let mut pts: Vec<Point> = Vec::new();
        for w in v.iter().chain(std::iter::once(&v[0])).collect::<Vec<_>>().windows(2) {
            let (a, b) = (w[0], w[1]);
            let (dx, dy) = ((b.0 - a.0).signum(), (b.1 - a.1).signum());
            let mut c = *a;
            while c != *b {
                pts.push(Point::xy(c.0, c.1));
                c = (c.0 + dx, c.1 + dy);
            }
        }
        Polygon::from_cycle(&pts).unwrap().canonical()
    }

    #[test]
    fn square_is_left() {
        let f = classify_polygon(&square()).unwrap();
        assert!(f.is_frak_l && f.is_left && f.is_right);
        assert_eq!(f.se_index, 3);
    }

    #[test]
    fn audit_arithmetic() {
        let arrows = vec![(0, 0), (0, 1), (1, 2), (1, 3), (2, 4), (2, 5)];
        let a = audit_multivalued_map(&arrows).unwrap();
        assert_eq!((a.min_out_degree, a.max_in_degree, a.codomain_size), (2, 1, 6));
        assert!(a.bound_holds);
        assert!(audit_multivalued_map::<u8, u8>(&[]).is_err());
    }
}
