//! Independent oracles shared by the integration tests. Nothing here calls
//! the library routine it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use alcove_core::centralizer::SubsystemDescriptor;
use alcove_core::enumerate::{subsystem_key, SubsystemKey};
use alcove_core::linalg::Rational;
use alcove_core::{Family, RationalVector, RootSystem, SimpleType};
use rand::Rng;

pub fn types_up_to(rank: usize) -> Vec<SimpleType> {
    SimpleType::all_up_to_rank(rank)
}

/// Closed form for `|Φ|`.
pub fn root_count(t: SimpleType) -> usize {
    let n = t.rank();
    match t.family() {
        Family::A => n * (n + 1),
        Family::B | Family::C => 2 * n * n,
        Family::D => 2 * n * (n - 1),
        Family::E => [72, 126, 240][n - 6],
        Family::F => 48,
        Family::G => 12,
    }
}

/// Order of the center of the simply connected group.
pub fn center_order(t: SimpleType) -> i64 {
    let n = t.rank() as i64;
    match t.family() {
        Family::A => n + 1,
        Family::B | Family::C => 2,
        Family::D => 4,
        Family::E => [3, 2, 1][t.rank() - 6],
        Family::F | Family::G => 1,
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

type Bits = Vec<bool>;

fn closure(rs: &RootSystem, mut set: Bits) -> Bits {
    let roots = rs.roots();
    loop {
        let mut grew = false;
        for i in 0..roots.len() {
            if !set[i] {
                continue;
            }
            for j in 0..roots.len() {
                if !set[j] {
                    continue;
                }
                let sum: Vec<i64> = roots[i].iter().zip(&roots[j]).map(|(a, b)| a + b).collect();
                if let Some(k) = rs.root_index(&sum) {
                    if !set[k] {
                        set[k] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

fn span_rank(rs: &RootSystem, set: &Bits) -> usize {
    let rows: Vec<Vec<Rational>> = rs
        .roots()
        .iter()
        .zip(set)
        .filter(|(_, &b)| b)
        .map(|(r, _)| r.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect();
    alcove_core::linalg::rank(&rows)
}

/// Every closed symmetric root subset, by breadth-first growth from the
/// empty set one `±α` pair at a time.
pub fn closed_symmetric_subsets(rs: &RootSystem) -> Vec<Bits> {
    let roots = rs.roots();
    let n = roots.len();
    let neg = |i: usize| {
        let v: Vec<i64> = roots[i].iter().map(|x| -x).collect();
        rs.root_index(&v).unwrap()
    };
    let start = vec![false; n];
    let mut seen: HashSet<Bits> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while let Some(s) = frontier.pop() {
        for i in 0..rs.positive_count() {
            if s[i] {
                continue;
            }
            let mut t = s.clone();
            t[i] = true;
            t[neg(i)] = true;
            let t = closure(rs, t);
            if seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    seen.into_iter().collect()
}

/// Keys of the maximal proper closed subsystems of full rank; the whole
/// system when there are none.
pub fn maximal_rank_maximal_keys(rs: &RootSystem) -> BTreeSet<SubsystemKey> {
    let n = rs.roots().len();
    let full: Vec<Bits> = closed_symmetric_subsets(rs)
        .into_iter()
        .filter(|s| s.iter().filter(|&&b| b).count() < n && span_rank(rs, s) == rs.rank())
        .collect();
    let contained = |a: &Bits, b: &Bits| a != b && a.iter().zip(b).all(|(&x, &y)| !x || y);
    let key = |s: &Bits| {
        let idx: Vec<usize> = (0..n).filter(|&i| s[i]).collect();
        subsystem_key(rs, &SubsystemDescriptor::from_roots(rs, idx).unwrap()).unwrap()
    };
    let maximal: BTreeSet<SubsystemKey> = full
        .iter()
        .filter(|a| !full.iter().any(|b| contained(a, b)))
        .map(key)
        .collect();
    if maximal.is_empty() {
        BTreeSet::from([subsystem_key(rs, &SubsystemDescriptor::full(rs)).unwrap()])
    } else {
        maximal
    }
}

/// All closed-alcove points `k / d` (coweight coordinates) with `d ≤ max_den`.
pub fn alcove_grid(rs: &RootSystem, max_den: i64) -> Vec<RationalVector> {
    fn fill(marks: &[i64], budget: i64, k: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k.len() == marks.len() {
            out.push(k.clone());
            return;
        }
        let m = marks[k.len()];
        for x in 0..=budget / m {
            k.push(x);
            fill(marks, budget - x * m, k, out);
            k.pop();
        }
    }
    let mut out = BTreeSet::new();
    for d in 1..=max_den {
        let mut ks = Vec::new();
        fill(rs.marks(), d, &mut Vec::new(), &mut ks);
        out.extend(
            ks.into_iter()
                .map(|k| RationalVector(k.iter().map(|&x| Rational::new(x, d)).collect())),
        );
    }
    out.into_iter().collect()
}

/// Torus representatives with coweight coordinates in `(1/d)ℤ`, `d ≤ max_den`,
/// deduplicated modulo `Q∨` by integrality of coroot coordinates.
pub fn torus_grid(rs: &RootSystem, max_den: i64) -> Vec<RationalVector> {
    let n = rs.rank();
    let span = center_order(rs.simple_type());
    let inv = rs.cartan_inverse();
    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut out = Vec::new();
    for d in 1..=max_den {
        let top = d * span;
        let mut k = vec![0i64; n];
        'outer: loop {
            let t: Vec<Rational> = k.iter().map(|&x| Rational::new(x, d)).collect();
            let q: Vec<Rational> = (0..n)
                .map(|i| {
                    let s: Rational = (0..n).map(|j| inv[i][j] * t[j]).sum();
                    s - s.floor()
                })
                .collect();
            if seen.insert(q) {
                out.push(RationalVector(t));
            }
            for ki in k.iter_mut() {
                *ki += 1;
                if *ki < top {
                    continue 'outer;
                }
                *ki = 0;
            }
            break;
        }
    }
    out
}

/// A random point with coweight coordinates of denominator at most `max_den`.
pub fn random_point<R: Rng>(rng: &mut R, n: usize, max_den: i64) -> RationalVector {
    RationalVector(
        (0..n)
            .map(|_| {
                let d = rng.gen_range(1..=max_den);
                Rational::new(rng.gen_range(-3 * d..=3 * d), d)
            })
            .collect(),
    )
}
