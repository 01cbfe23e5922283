//! Reflection maps from polygons to half-space walks and from returning
//! half-space walks to bridges.

use std::collections::HashSet;

use crate::census::{is_bridge, is_returning_half_space};
use crate::error::{contract, Result};
use crate::geometry::{Edge, Point, RigidMotion};
use crate::paths::{Polygon, Walk};

use super::global_join_plaquettes;

/// Cuts the tour of `p` at `ES(p)`, detours the return path around the
/// global join plaquettes selected by `kappa` (indices into
/// [`global_join_plaquettes`]), and reflects the return path in the vertical
/// line through `ES(p)`. The polygon is first moved to canonical position.
pub fn reflect_split_map(p: &Polygon, kappa: &[usize]) -> Result<Walk> {
    let p = p.canonical();
    let globals = global_join_plaquettes(&p)?;
    let mut ks = kappa.to_vec();
    ks.sort();
    ks.dedup();
    if ks.len() != kappa.len() || ks.iter().any(|&k| k >= globals.len()) {
        return contract(format!(
            "plaquette selection {kappa:?} invalid for {} global join plaquettes",
            globals.len()
        ));
    }
    let tour = p.tour()?;
    let es = p.compass().es;
    let j = tour.iter().position(|v| *v == es).unwrap();
    let mut back: Vec<Point> = vec![tour[j]];
    for i in j..tour.len() - 1 {
        let (s, f) = (tour[i], tour[i + 1]);
        let e = Edge::between(s, f);
        let hit = ks.iter().map(|&k| &globals[k].plaquette).find(|pl| {
            pl.horizontal_edges().contains(&e)
        });
        if let Some(pl) = hit {
            let up = if pl.corner.y() == s.y() { 1 } else { -1 };
            let v = Point::xy(0, up);
            back.push(s + v);
            back.push(f + v);
        }
        back.push(f);
    }
    let mirror = RigidMotion::reflect_vertical_line(es);
    let mut out = tour[..j].to_vec();
    out.extend(back.into_iter().map(|q| mirror.apply(q)));
    let w = Walk::new(out)?;
    debug_assert_eq!(w.len(), p.len() + 2 * ks.len());
    Ok(w)
}

/// Recovers the polygon from an output of [`reflect_split_map`]: read off
/// the reflection line from the endpoint, unreflect from the lowest vertex
/// on it, and replace each plaquette detour by the direct step.
pub fn reconstruct_reflect_split(w: &Walk) -> Result<Polygon> {
    let v = w.vertices();
    let end = w.end();
    if end.x() % 2 != 0 || end.y() != 0 {
        return contract("walk does not end on the axis at an even abscissa");
    }
    let x_es = end.x() / 2;
    let j = (0..v.len())
        .filter(|&i| v[i].x() == x_es)
        .min_by_key(|&i| v[i].y())
        .ok_or_else(|| crate::Error::Contract("no vertex on the reflection line".into()))?;
    let mirror = RigidMotion::reflect_vertical_line(v[j]);
    let mut u: Vec<Point> = v[..=j].to_vec();
    u.extend(v[j + 1..].iter().map(|&q| mirror.apply(q)));
    if u[u.len() - 1] != u[0] {
        return contract("unreflected walk is not closed");
    }
    let mut seen: HashSet<Edge> = HashSet::new();
    let mut out: Vec<Point> = vec![u[0]];
    let mut i = 0;
    while i + 1 < u.len() {
        let e = Edge::between(u[i], u[i + 1]);
        if seen.contains(&e) {
            // u[i-1] -> u[i] -> u[i+1] -> u[i+2] becomes u[i-1] -> u[i+2]
            if i == 0 || i + 2 >= u.len() {
                return contract("detour at the walk boundary");
            }
            out.pop();
            out.push(u[i + 2]);
            i += 2;
            continue;
        }
        seen.insert(e);
        out.push(u[i + 1]);
        i += 1;
    }
    Polygon::from_cycle(&out)
}

/// Reflects the part of a returning half-space walk after its last visit to
/// the lowest level in the horizontal line through that visit.
pub fn unfold_half_space(w: &Walk) -> Result<Walk> {
    let v = w.vertices();
    if w.dim() != 2 || !is_returning_half_space(v) {
        return contract("input is not a returning half-space walk");
    }
    let ymin = v.iter().map(|p| p.y()).min().unwrap();
    let j = (0..v.len()).rev().find(|&i| v[i].y() == ymin).unwrap();
    let mirror = RigidMotion::reflect_horizontal_line(v[j]);
    let mut out = v[..=j].to_vec();
    out.extend(v[j + 1..].iter().map(|&q| mirror.apply(q)));
    Walk::new(out)
}

/// Inverse of [`unfold_half_space`] on its image: the reflection line sits
/// at half the endpoint height.
pub fn fold_bridge(w: &Walk) -> Result<Walk> {
    let v = w.vertices();
    let yn = w.end().y() - w.start().y();
    if !is_bridge(v) || yn % 2 != 0 {
        return contract("input is not a bridge ending at even depth");
    }
    let line = w.start().y() + yn / 2;
    let Some(j) = (0..v.len()).rev().find(|&i| v[i].y() == line) else {
        return contract("bridge never meets the reflection line");
    };
    let mirror = RigidMotion::reflect_horizontal_line(v[j]);
    let mut out = v[..=j].to_vec();
    out.extend(v[j + 1..].iter().map(|&q| mirror.apply(q)));
    Walk::new(out)
}
