//! Brute-force oracles shared by the integration tests. They share no code
//! with the library: plain vectors, linear membership scans, and explicit
//! step sequences.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

pub type Pt = Vec<i32>;

pub fn units(d: usize) -> Vec<Pt> {
    let mut out = Vec::new();
    for i in 0..d {
        for s in [1, -1] {
            let mut u = vec![0; d];
            u[i] = s;
            out.push(u);
        }
    }
    out
}

fn add(a: &[i32], b: &[i32]) -> Pt {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i32], b: &[i32]) -> Pt {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn adjacent(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<i32>() == 1
}

fn walks_rec(path: &mut Vec<Pt>, n: usize, us: &[Pt], f: &mut dyn FnMut(&[Pt])) {
    f(path);
    if path.len() - 1 == n {
        return;
    }
    for u in us {
        let next = add(path.last().unwrap(), u);
        if path.contains(&next) {
            continue;
        }
        path.push(next);
        walks_rec(path, n, us, f);
        path.pop();
    }
}

/// Calls `f` on every self-avoiding walk from the origin of length at most `n`.
pub fn for_each_walk(d: usize, n: usize, f: &mut dyn FnMut(&[Pt])) {
    let us = units(d);
    walks_rec(&mut vec![vec![0; d]], n, &us, f);
}

/// `c_0..=c_n`.
pub fn walk_counts(d: usize, n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    for_each_walk(d, n, &mut |p| c[p.len() - 1] += 1);
    c
}

/// `p_n`: a polygon of length `n` is `2n` rooted, oriented walks of length
/// `n - 1` from the origin ending next to it.
pub fn polygon_count(d: usize, n: usize) -> u64 {
    let mut k = 0u64;
    for_each_walk(d, n - 1, &mut |p| {
        if p.len() == n && adjacent(&p[n - 1], &p[0]) {
            k += 1;
        }
    });
    assert_eq!(k % (2 * n as u64), 0);
    k / (2 * n as u64)
}

/// Number of walks of length `n` whose endpoint neighbours the start.
pub fn closing_count(d: usize, n: usize) -> u64 {
    let mut k = 0u64;
    for_each_walk(d, n, &mut |p| {
        if p.len() == n + 1 && adjacent(&p[n], &p[0]) {
            k += 1;
        }
    });
    k
}

fn edge_key(a: &[i32], b: &[i32]) -> (Pt, Pt) {
    if a < b {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    }
}

/// Vertex lists of every step sequence of length `n` from the origin.
fn all_sequences(d: usize, n: usize, f: &mut dyn FnMut(&[Pt])) {
    let us = units(d);
    let k = us.len();
    let total = (k as u64).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut v = vec![vec![0; d]];
        for _ in 0..n {
            let u = &us[(c % k as u64) as usize];
            c /= k as u64;
            v.push(add(v.last().unwrap(), u));
        }
        f(&v);
    }
}

fn max_edge_use(v: &[Pt]) -> usize {
    let mut m: HashMap<(Pt, Pt), usize> = HashMap::new();
    for w in v.windows(2) {
        *m.entry(edge_key(&w[0], &w[1])).or_default() += 1;
    }
    m.into_values().max().unwrap_or(0)
}

/// 3-edge walk count of length exactly `n`, by scanning all step sequences.
pub fn edge3_walk_count(d: usize, n: usize) -> u64 {
    let mut k = 0;
    all_sequences(d, n, &mut |v| {
        if max_edge_use(v) <= 3 {
            k += 1;
        }
    });
    k
}

/// 3-edge polygons of length `n`, identified by the smallest of their
/// parametrizations translated to start at the origin.
pub fn edge3_polygon_keys(d: usize, n: usize) -> BTreeSet<Vec<Pt>> {
    let mut keys = BTreeSet::new();
    all_sequences(d, n, &mut |v| {
        if v[n] != v[0] || max_edge_use(v) > 3 {
            return;
        }
        let c = &v[..n];
        let mut best: Option<Vec<Pt>> = None;
        for s in 0..n {
            let fwd: Vec<Pt> = (0..n).map(|i| sub(&c[(s + i) % n], &c[s])).collect();
            let bwd: Vec<Pt> = (0..n).map(|i| sub(&c[(s + n - i) % n], &c[s])).collect();
            for cand in [fwd, bwd] {
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        keys.insert(best.unwrap());
    });
    keys
}

/// Number of closing 3-edge walks of length `n`.
pub fn edge3_closing_count(d: usize, n: usize) -> u64 {
    let mut k = 0;
    all_sequences(d, n, &mut |v| {
        if v[n] == v[0] && max_edge_use(v) <= 3 {
            k += 1;
        }
    });
    k
}
