mod common;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use saw_forge::census::EnumOptions;
use saw_forge::snake::{
    avoids, charming_indices, closecard_audit, conditional_closing, extensions, first_parts,
    high_closing_set, is_extendable, reflect_concatenate, SnakeConfig,
};
use saw_forge::{Point, Walk};

/// Planar order: by height, then by abscissa.
fn key(p: &[i32]) -> (i32, i32) {
    (p[1], p[0])
}

fn keys(v: &[Point]) -> Vec<(i32, i32)> {
    v.iter().map(|p| key(p.coords())).collect()
}

/// Second parts of length `m - k` below `gamma`, by brute force: walks from
/// the start of `gamma` whose other vertices lie below it, missing `gamma`,
/// and smaller than `gamma` vertex by vertex.
fn oracle_extensions(gamma: &Walk, m: usize) -> (u64, u64) {
    let g = keys(gamma.vertices());
    let end = *g.last().unwrap();
    let (mut all, mut closing) = (0, 0);
    common::for_each_walk(2, m - gamma.len(), &mut |p| {
        if p.len() != m - gamma.len() + 1 {
            return;
        }
        let w: Vec<(i32, i32)> = p.iter().map(|q| key(q)).collect();
        if w[1..].iter().any(|q| *q >= (0, 0) || g.contains(q)) || w >= g {
            return;
        }
        all += 1;
        let last = *w.last().unwrap();
        if (last.0 - end.0).abs() + (last.1 - end.1).abs() == 1 {
            closing += 1;
        }
    });
    (all, closing)
}

#[test]
fn first_parts_lie_below_their_start() {
    for k in 0..=6 {
        let fp = first_parts(2, k).unwrap();
        let mut oracle = 0;
        common::for_each_walk(2, k, &mut |p| {
            if p.len() == k + 1 && p[1..].iter().all(|q| key(q) < (0, 0)) {
                oracle += 1;
            }
        });
        assert_eq!(fp.len(), oracle, "k={k}");
        assert!(fp.iter().all(|w| w.len() == k && w.start() == Point::origin(2)));
    }
}

#[test]
fn extension_counts_match_oracle() {
    for k in 1..=4 {
        for gamma in first_parts(2, k).unwrap() {
            for m in k..=9 {
                let e = extensions(&gamma, m).unwrap();
                assert_eq!((e.second_parts, e.closing), oracle_extensions(&gamma, m), "{gamma:?} m={m}");
                assert_eq!(is_extendable(&gamma, m).unwrap(), e.second_parts > 0);
                if e.second_parts > 0 {
                    assert_eq!(
                        conditional_closing(&gamma, m).unwrap(),
                        BigRational::new(BigInt::from(e.closing), BigInt::from(e.second_parts))
                    );
                } else {
                    assert!(conditional_closing(&gamma, m).is_err());
                }
            }
        }
    }
}

#[test]
fn high_closing_set_is_a_threshold_filter() {
    let alpha = Rational64::new(1, 2);
    for (k, m) in [(2, 5), (3, 7), (4, 9)] {
        let high = high_closing_set(2, k, m, &alpha).unwrap();
        let mut expected = Vec::new();
        for g in first_parts(2, k).unwrap() {
            let e = extensions(&g, m).unwrap();
            // q > m^(-1/2)  <=>  closing^2 m > all^2
            if e.second_parts > 0 && e.closing * e.closing * m as u64 > e.second_parts * e.second_parts {
                expected.push(g);
            }
        }
        assert_eq!(high, expected, "({k},{m})");
    }
}

#[test]
fn config_rejects_bad_parameters() {
    let r = |a, b| Rational64::new(a, b);
    assert!(SnakeConfig::new(r(0, 1), r(1, 1), r(1, 4), 9, 4).is_err());
    assert!(SnakeConfig::new(r(1, 2), r(1, 4), r(1, 2), 9, 4).is_err());
    assert!(SnakeConfig::new(r(1, 2), r(1, 1), r(1, 4), 8, 4).is_err());
    assert!(SnakeConfig::new(r(1, 2), r(1, 1), r(1, 4), 9, 10).is_err());
    assert!(SnakeConfig::new(r(1, 2), r(1, 1), r(1, 4), 9, 4).is_ok());
}

#[test]
fn charming_flags_follow_their_probabilities() {
    let r = |a, b| Rational64::new(a, b);
    let cfg = SnakeConfig::new(r(1, 2), r(1, 1), r(1, 4), 9, 4).unwrap();
    for gamma in first_parts(2, 4).unwrap() {
        if !is_extendable(&gamma, 9).unwrap() {
            assert!(charming_indices(&gamma, &cfg).is_err());
            continue;
        }
        let rep = charming_indices(&gamma, &cfg).unwrap();
        assert_eq!(rep.charming_count, rep.flags.iter().filter(|f| f.charming).count());
        assert_eq!(rep.in_cs, rep.charming_count as u64 >= rep.threshold);
        for f in &rep.flags {
            assert!(f.charming <= f.q.is_some());
            assert_eq!((4 - f.k) % 2, 0);
        }
    }
}

#[test]
fn closecard_bound_holds_for_small_lengths() {
    let two = Rational64::new(2, 1);
    let delta = Rational64::new(1, 4);
    for n in [3, 5, 7, 9] {
        let a = closecard_audit(2, n, &two, &delta, &EnumOptions::default()).unwrap();
        assert_eq!(a.n, n);
        if a.hypothesis {
            assert!(a.bound_holds, "n={n}: {:?}", a.violating);
        }
    }
}

#[test]
fn concatenation_is_injective_in_the_second_walk() {
    for (a, b) in [(1, 3), (2, 2), (3, 3), (4, 2)] {
        let gammas = first_parts(2, b).unwrap();
        for phi in first_parts(2, a).unwrap() {
            let mut seen = HashSet::new();
            for g in gammas.iter().filter(|g| avoids(g.vertices(), phi.vertices())) {
                let w = reflect_concatenate(&phi, g).unwrap();
                assert!(seen.insert(w.vertices().to_vec()));
            }
        }
    }
}

proptest! {
    #[test]
    fn concatenation_is_self_avoiding(a in 1usize..5, b in 1usize..5, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let phis = first_parts(2, a).unwrap();
        let gammas = first_parts(2, b).unwrap();
        let (phi, g) = (i.get(&phis), j.get(&gammas));
        prop_assume!(avoids(g.vertices(), phi.vertices()));
        let w = reflect_concatenate(phi, g).unwrap();
        prop_assert!(w.is_self_avoiding());
        prop_assert_eq!(w.len(), a + b + 1);
        let head: Vec<Point> = phi.vertices().iter().rev().copied().collect();
        prop_assert_eq!(&w.vertices()[..=a], &head[..]);
    }
}
