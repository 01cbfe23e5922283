mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use saw_forge::census::EnumOptions;
use saw_forge::edge3::{
    edge3_polygons, join_edges, left_right_pairs, reconstruct_reflect_split_3e,
    reflect_split_map_3e, simple_join_3e, strong_join_3d, Edge3Polygon, MultiWalk,
    MAX_MULTIPLICITY,
};
use saw_forge::{Edge, Error, Point};

fn planar() -> &'static Vec<Edge3Polygon> {
    static P: OnceLock<Vec<Edge3Polygon>> = OnceLock::new();
    P.get_or_init(|| (2..=8).step_by(2).flat_map(|n| edge3_polygons(2, n).unwrap()).collect())
}

fn walk_from_codes(d: usize, codes: &[usize]) -> Vec<Point> {
    let units = Point::units(d);
    let mut v = vec![Point::origin(d)];
    for &c in codes {
        v.push(*v.last().unwrap() + units[c % units.len()]);
    }
    v
}

fn max_use(v: &[Point]) -> usize {
    let mut m: BTreeMap<Edge, usize> = BTreeMap::new();
    for w in v.windows(2) {
        *m.entry(Edge::between(w[0], w[1])).or_default() += 1;
    }
    m.into_values().max().unwrap_or(0)
}

#[test]
fn polygon_lists_match_oracle_keys() {
    for (d, max) in [(2, 8), (3, 6)] {
        for n in (2..=max).step_by(2) {
            let ps = edge3_polygons(d, n).unwrap();
            assert_eq!(ps.len(), common::edge3_polygon_keys(d, n).len(), "d={d} n={n}");
            assert!(ps.iter().all(|p| p.len() == n));
            assert!(ps.windows(2).all(|w| w[0] != w[1]));
        }
    }
}

#[test]
fn join_edges_split_into_two_closed_pieces() {
    for p in planar() {
        let mult = p.walk().edge_multiplicity();
        for j in join_edges(p) {
            assert_eq!(mult[&j.edge], 2);
            assert!(j.inner.len() >= 3 && j.outer.len() >= 3);
            assert_eq!(j.inner.first(), j.inner.last());
            assert_eq!(j.outer.first(), j.outer.last());
            // closed vertex lists; the two traversals of the edge are dropped
            assert_eq!(j.inner.len() - 1 + j.outer.len() - 1, p.len() - 2);
        }
    }
}

#[test]
fn split_map_is_injective_where_defined() {
    let mut seen = std::collections::HashSet::new();
    for p in planar() {
        let r = saw_forge::edge3::global_join_edges(p).len();
        for mask in 0u32..1 << r {
            let kappa: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            match reflect_split_map_3e(p, &kappa) {
                Ok(img) => {
                    assert!(seen.insert(img.walk.vertices().to_vec()));
                    let (q, _) = reconstruct_reflect_split_3e(&img.walk).unwrap();
                    assert_eq!(&q, p);
                }
                Err(Error::JoinFailure(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn left_right_pair_bounds() {
    for (d, k, l) in [(2, 4, 4), (2, 4, 6), (3, 4, 4)] {
        let r = left_right_pairs(d, k, l).unwrap();
        assert!(r.count_bound && r.strong_join_bound, "d={d} ({k},{l})");
        assert!(!r.pairs.is_empty());
    }
}

#[test]
fn square_pairs_have_strong_joins() {
    let sq = &edge3_polygons(2, 4).unwrap()[0];
    let s = strong_join_3d(sq, sq).unwrap();
    assert!(s.bound_holds);
    assert!(!s.offsets.is_empty());
}

proptest! {
    #[test]
    fn multiwalk_accepts_exactly_three_edge_walks(d in 2usize..4, codes in prop::collection::vec(0usize..6, 0..12)) {
        let v = walk_from_codes(d, &codes);
        let ok = max_use(&v) <= MAX_MULTIPLICITY;
        let w = MultiWalk::new(v.clone());
        prop_assert_eq!(w.is_ok(), ok);
        if let Ok(w) = w {
            prop_assert_eq!(w.max_multiplicity(), max_use(&v));
            prop_assert_eq!(w.closes(), v[0] == v[v.len() - 1]);
        }
    }

    #[test]
    fn canonical_form_ignores_start_and_direction(i in any::<prop::sample::Index>(), s in 0usize..64, rev in any::<bool>(), dx in -3i32..3, dy in -3i32..3) {
        let p = i.get(planar());
        let c = p.cycle();
        let n = c.len();
        let mut v: Vec<Point> = (0..n).map(|k| c[(s + k) % n] + Point::xy(dx, dy)).collect();
        if rev {
            v.reverse();
        }
        prop_assert_eq!(&Edge3Polygon::from_closed_walk(&v).unwrap(), p);
    }

    #[test]
    fn simple_join_lengths_add(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let (a, b) = (i.get(planar()), j.get(planar()));
        let s = simple_join_3e(a, b).unwrap();
        prop_assert_eq!(s.polygon.len(), a.len() + b.len() + 2);
        prop_assert!(s.walk.max_multiplicity() <= MAX_MULTIPLICITY);
        prop_assert!(s.walk.closes());
    }

    #[test]
    fn axis_swap_is_an_involution(i in any::<prop::sample::Index>()) {
        let p = i.get(planar());
        let q = p.swap_axes(1);
        prop_assert_eq!(q.len(), p.len());
        prop_assert_eq!(&q.swap_axes(1), p);
    }
}

#[test]
fn walk_counts_agree_with_step_scan() {
    let c = saw_forge::edge3::enumerate_edge3(2, 6, saw_forge::edge3::Edge3Kind::Walks, false, &EnumOptions::serial()).unwrap();
    for n in 0..=6 {
        let expect = if n == 0 { 1 } else { common::edge3_walk_count(2, n) };
        assert_eq!(c.walks[n], expect, "n={n}");
    }
}
