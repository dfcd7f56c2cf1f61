//! Integer lattice algebra: Smith normal form, finite abelian groups,
//! saturation quotients, centers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, Rational};
use crate::rootsys::RootSystem;

pub type BigMatrix = Vec<Vec<BigInt>>;

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal with
/// `d_1 | d_2 | …` (zeros last). `v_inv` is the inverse of `v`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: BigMatrix,
    pub d: BigMatrix,
    pub v: BigMatrix,
    pub v_inv: BigMatrix,
}

impl Snf {
    /// The diagonal entries, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, |r| r.len()));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }
}

fn big_identity(n: usize) -> BigMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn to_big(m: &IntMatrix) -> BigMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn big_to_int(m: &BigMatrix) -> IntMatrix {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect())
        .collect()
}

/// Smith normal form by elementary row and column operations, always
/// pivoting on an entry of minimal nonzero absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = to_big(m);
    let mut u = big_identity(rows);
    let mut v = big_identity(cols);
    let mut v_inv = big_identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // minimal nonzero pivot in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
                v_inv.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in 0..cols {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                for j in 0..rows {
                    let s = &q * &u[t][j];
                    u[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in 0..rows {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
                for i in 0..cols {
                    let s = &q * &v[i][t];
                    v[i][j] -= s;
                }
                for k in 0..cols {
                    let s = &q * &v_inv[j][k];
                    v_inv[t][k] += s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad_row {
                Some(i) => {
                    for j in 0..cols {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                    for j in 0..rows {
                        let s = u[i][j].clone();
                        u[t][j] += s;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    Snf { u, d: a, v, v_inv }
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Finite abelian group in invariant-factor form `Z/d_1 × … × Z/d_k`,
/// `d_i ≥ 2`, `d_1 | d_2 | … | d_k`. The empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_diagonal(&[n])
    }

    /// Invariant factors of `⊕ Z/n_i` for an arbitrary list of orders; zeros
    /// and ones are dropped.
    pub fn from_diagonal(orders: &[u64]) -> Self {
        let mut exps: Vec<(u64, Vec<u32>)> = Vec::new();
        for &n in orders.iter().filter(|&&n| n > 1) {
            for (p, e) in prime_factors(n) {
                match exps.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, list)) => list.push(e),
                    None => exps.push((p, vec![e])),
                }
            }
        }
        Self::from_prime_exponents(exps)
    }

    fn from_prime_exponents(mut exps: Vec<(u64, Vec<u32>)>) -> Self {
        let k = exps.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
        for (_, l) in exps.iter_mut() {
            l.sort_unstable_by(|a, b| b.cmp(a));
        }
        let mut factors: Vec<u64> = (0..k)
            .map(|i| exps.iter().map(|(p, l)| l.get(i).map_or(1, |&e| p.pow(e))).product())
            .collect();
        factors.reverse();
        FiniteAbelianGroup {
            invariant_factors: factors,
        }
    }

    /// Structure of a subgroup of `⊕ Z/ambient_i`, given by its full element
    /// list in those coordinates. Reads the structure off the number of
    /// elements killed by each prime power.
    pub fn from_subgroup_elements(ambient: &[u64], elements: &[Vec<u64>]) -> Self {
        let order_of = |x: &Vec<u64>| -> u64 {
            x.iter()
                .zip(ambient)
                .fold(1u64, |acc, (&a, &d)| acc.lcm(&(d / a.gcd(&d))))
        };
        let orders: Vec<u64> = elements.iter().map(order_of).collect();
        let n = elements.len() as u64;
        let mut exps: Vec<(u64, Vec<u32>)> = Vec::new();
        for (p, top) in prime_factors(n) {
            // r_e = log_p #{x : p^e x = 0}
            let mut prev = 0u32;
            let mut counts: Vec<u32> = Vec::new();
            for e in 1..=top {
                let pe = p.pow(e);
                let cnt = orders.iter().filter(|&&o| pe % o == 0).count() as u64;
                let mut r = 0u32;
                let mut c = cnt;
                while c > 1 {
                    c /= p;
                    r += 1;
                }
                counts.push(r - prev);
                prev = r;
            }
            // counts[e-1] = number of cyclic p-factors of order ≥ p^e
            let mut list = Vec::new();
            for e in (1..=top).rev() {
                let ge = counts[(e - 1) as usize];
                let gt = if (e as usize) < counts.len() {
                    counts[e as usize]
                } else {
                    0
                };
                for _ in 0..ge.saturating_sub(gt) {
                    list.push(e);
                }
            }
            exps.push((p, list));
        }
        Self::from_prime_exponents(exps)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    fn prime_exponents(&self, p: u64) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .invariant_factors
            .iter()
            .map(|&d| {
                let mut e = 0;
                let mut d = d;
                while d % p == 0 {
                    d /= p;
                    e += 1;
                }
                e
            })
            .filter(|&e| e > 0)
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// True when `self` is isomorphic to a subgroup of `other`.
    pub fn embeds_in(&self, other: &FiniteAbelianGroup) -> bool {
        if !other.order().is_multiple_of(self.order().max(1)) {
            return false;
        }
        prime_factors(self.order()).into_iter().all(|(p, _)| {
            let mine = self.prime_exponents(p);
            let theirs = other.prime_exponents(p);
            mine.len() <= theirs.len() && mine.iter().zip(&theirs).all(|(a, b)| a <= b)
        })
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.invariant_factors.serialize(s)
    }
}

/// Full-rank-in-its-span integer lattice given by a row basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    basis: IntMatrix,
    dim: usize,
}

impl IntegerLattice {
    /// Rejects bases whose rows are linearly dependent or of the wrong length.
    pub fn new(basis: IntMatrix, dim: usize) -> Result<Self> {
        if basis.iter().any(|r| r.len() != dim) {
            return Err(Error::Lattice(format!("basis rows must have length {dim}")));
        }
        if linalg::rank_int(&basis) != basis.len() {
            return Err(Error::Lattice("basis rows are linearly dependent".into()));
        }
        Ok(IntegerLattice { basis, dim })
    }

    /// `Z^dim`.
    pub fn standard(dim: usize) -> Self {
        IntegerLattice {
            basis: linalg::identity(dim),
            dim,
        }
    }

    /// Lattice generated by arbitrary (possibly dependent) integer rows.
    pub fn from_generators(gens: &IntMatrix, dim: usize) -> Self {
        if gens.is_empty() {
            return IntegerLattice { basis: Vec::new(), dim };
        }
        let snf = smith_normal_form(gens);
        let v_inv = big_to_int(&snf.v_inv);
        let basis = snf
            .diagonal()
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let d = d.to_i64().expect("fits");
                v_inv[i].iter().map(|x| x * d).collect()
            })
            .collect();
        IntegerLattice { basis, dim }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in this basis, if `v` lies in the rational span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let at = linalg::to_rational(&linalg::transpose(&self.basis));
        if self.basis.is_empty() {
            return v.iter().all(|x| x.is_zero()).then(Vec::new);
        }
        linalg::solve(&at, v)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let v: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x)).collect();
        self.coordinates(&v).is_some_and(|c| linalg::is_integral(&c))
    }

    fn sub_coordinates(&self, sub: &IntegerLattice) -> Result<IntMatrix> {
        if sub.dim != self.dim {
            return Err(Error::Lattice("lattices live in different dimensions".into()));
        }
        sub.basis
            .iter()
            .map(|row| {
                let r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x)).collect();
                let c = self.coordinates(&r).ok_or_else(|| {
                    Error::Lattice(format!("{row:?} is outside the rational span of the ambient lattice"))
                })?;
                if !linalg::is_integral(&c) {
                    return Err(Error::Lattice(format!("{row:?} is not in the ambient lattice")));
                }
                Ok(c.iter().map(|x| x.to_integer()).collect())
            })
            .collect()
    }
}

/// Explicit presentation of `(ambient ∩ span_Q(sub)) / sub`.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    /// Generators in the ambient coordinate space with their orders (all ≥ 2).
    pub generators: Vec<(Vec<i64>, u64)>,
    /// `ambient ∩ span_Q(sub)`.
    pub saturation: IntegerLattice,
}

impl QuotientPresentation {
    pub fn group(&self) -> FiniteAbelianGroup {
        let orders: Vec<u64> = self.generators.iter().map(|g| g.1).collect();
        FiniteAbelianGroup::from_diagonal(&orders)
    }

    pub fn orders(&self) -> Vec<u64> {
        self.generators.iter().map(|g| g.1).collect()
    }

    /// Every element as (coefficient vector, representative vector).
    pub fn elements(&self) -> Vec<(Vec<u64>, Vec<i64>)> {
        let dim = self.saturation.dim();
        let mut out = vec![(Vec::new(), vec![0i64; dim])];
        for (g, d) in &self.generators {
            let mut next = Vec::with_capacity(out.len() * *d as usize);
            for (coeffs, v) in &out {
                for a in 0..*d {
                    let mut c = coeffs.clone();
                    c.push(a);
                    let w: Vec<i64> = v.iter().zip(g).map(|(x, y)| x + y * a as i64).collect();
                    next.push((c, w));
                }
            }
            out = next;
        }
        out
    }
}

pub fn quotient_presentation(ambient: &IntegerLattice, sub: &IntegerLattice) -> Result<QuotientPresentation> {
    let coords = ambient.sub_coordinates(sub)?;
    let r = ambient.rank();
    if coords.is_empty() {
        return Ok(QuotientPresentation {
            generators: Vec::new(),
            saturation: IntegerLattice {
                basis: Vec::new(),
                dim: ambient.dim,
            },
        });
    }
    let snf = smith_normal_form(&coords);
    let v_inv = big_to_int(&snf.v_inv);
    let to_ambient = |c: &[i64]| -> Vec<i64> {
        (0..ambient.dim)
            .map(|k| (0..r).map(|i| c[i] * ambient.basis[i][k]).sum())
            .collect()
    };
    let mut generators = Vec::new();
    let mut sat = Vec::new();
    for (i, d) in snf.diagonal().iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let row = to_ambient(&v_inv[i]);
        sat.push(row.clone());
        let d = d.to_u64().expect("fits");
        if d > 1 {
            generators.push((row, d));
        }
    }
    Ok(QuotientPresentation {
        generators,
        saturation: IntegerLattice {
            basis: sat,
            dim: ambient.dim,
        },
    })
}

/// Torsion group `(ambient ∩ span_Q(sub)) / sub`.
pub fn saturation_quotient(ambient: &IntegerLattice, sub: &IntegerLattice) -> Result<FiniteAbelianGroup> {
    Ok(quotient_presentation(ambient, sub)?.group())
}

/// `P∨/Q∨` as the cokernel of the Cartan matrix.
pub fn center(rs: &RootSystem) -> FiniteAbelianGroup {
    let snf = smith_normal_form(rs.cartan());
    let diag: Vec<u64> = snf
        .diagonal()
        .iter()
        .map(|d| d.to_u64().expect("nonsingular"))
        .collect();
    FiniteAbelianGroup::from_diagonal(&diag)
}

/// The coroot lattice `Q∨` in coweight coordinates (rows are simple coroots).
pub fn coroot_lattice(rs: &RootSystem) -> IntegerLattice {
    IntegerLattice {
        basis: linalg::transpose(rs.cartan()),
        dim: rs.rank(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SimpleType;
    use proptest::prelude::*;

    fn diag(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .diagonal()
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    fn check_snf(m: &IntMatrix) {
        let s = smith_normal_form(m);
        let prod = |a: &BigMatrix, b: &BigMatrix| -> BigMatrix {
            a.iter()
                .map(|row| {
                    (0..b[0].len())
                        .map(|j| row.iter().zip(b.iter()).map(|(x, r)| x * &r[j]).sum())
                        .collect()
                })
                .collect()
        };
        assert_eq!(prod(&prod(&s.u, &to_big(m)), &s.v), s.d);
        assert_eq!(prod(&s.v, &s.v_inv), big_identity(s.v.len()));
        let dg = s.diagonal();
        for i in 0..s.d.len() {
            for j in 0..s.d[0].len() {
                if i != j {
                    assert!(s.d[i][j].is_zero());
                }
            }
        }
        for w in dg.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must come last: {dg:?}");
            } else {
                assert!(w[1].is_multiple_of(&w[0]), "{dg:?}");
            }
            assert!(!w[0].is_negative());
        }
    }

    #[test]
    fn hand_examples() {
        assert_eq!(diag(&vec![vec![2, -1], vec![-1, 2]]), vec![1, 3]);
        assert_eq!(diag(&linalg::identity(3)), vec![1, 1, 1]);
        assert_eq!(diag(&vec![vec![2]]), vec![2]);
        assert_eq!(diag(&vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(diag(&vec![vec![0, 0], vec![0, 0]]), vec![0, 0]);
    }

    #[test]
    fn centers() {
        let c = |s: &str| center(&RootSystem::build(s.parse().unwrap()));
        assert_eq!(c("A2"), FiniteAbelianGroup::cyclic(3));
        assert!(c("E8").is_trivial());
        assert_eq!(c("D4").invariant_factors(), &[2, 2]);
        assert_eq!(c("D5"), FiniteAbelianGroup::cyclic(4));
        for t in SimpleType::all_up_to_rank(8) {
            assert_eq!(c(&t.to_string()).order() as i64, t.connection_index(), "{t}");
        }
    }

    #[test]
    fn g2_saturation_examples() {
        let g2 = RootSystem::build("G2".parse().unwrap());
        let q = coroot_lattice(&g2);
        let coroot = |k: &[i64]| g2.coroot_of_vector(k);
        // A1 x A1: highest root and the short simple root
        let sub = IntegerLattice::new(vec![coroot(g2.highest_root()), coroot(&[1, 0])], 2).unwrap();
        assert_eq!(saturation_quotient(&q, &sub).unwrap(), FiniteAbelianGroup::cyclic(2));
        // long A2: highest root and the long simple root
        let sub = IntegerLattice::new(vec![coroot(g2.highest_root()), coroot(&[0, 1])], 2).unwrap();
        assert!(saturation_quotient(&q, &sub).unwrap().is_trivial());
        assert!(saturation_quotient(&q, &q).unwrap().is_trivial());
    }

    #[test]
    fn saturation_errors() {
        let amb = IntegerLattice::new(vec![vec![1, 0, 0]], 3).unwrap();
        let sub = IntegerLattice::new(vec![vec![0, 1, 0]], 3).unwrap();
        assert!(saturation_quotient(&amb, &sub).is_err());
        let amb = IntegerLattice::new(vec![vec![2, 0]], 2).unwrap();
        let sub = IntegerLattice::new(vec![vec![1, 0]], 2).unwrap();
        assert!(saturation_quotient(&amb, &sub).is_err());
        assert!(IntegerLattice::new(vec![vec![1, 2], vec![2, 4]], 2).is_err());
    }

    #[test]
    fn partial_rank_saturation() {
        let amb = IntegerLattice::standard(3);
        let sub = IntegerLattice::new(vec![vec![2, 2, 0], vec![0, 0, 3]], 3).unwrap();
        let p = quotient_presentation(&amb, &sub).unwrap();
        assert_eq!(p.group().invariant_factors(), &[6]);
        assert_eq!(p.saturation.rank(), 2);
        assert!(p.saturation.contains(&[1, 1, 0]));
        assert!(!p.saturation.contains(&[1, 0, 0]));
        assert_eq!(p.elements().len(), 6);
    }

    #[test]
    fn group_structure_from_elements() {
        // Z/2 x Z/4 inside itself
        let amb = [2u64, 4];
        let all: Vec<Vec<u64>> = (0..2).flat_map(|a| (0..4).map(move |b| vec![a, b])).collect();
        let g = FiniteAbelianGroup::from_subgroup_elements(&amb, &all);
        assert_eq!(g.invariant_factors(), &[2, 4]);
        // subgroup generated by (1,2): order 2
        let sub = vec![vec![0, 0], vec![1, 2]];
        assert_eq!(
            FiniteAbelianGroup::from_subgroup_elements(&amb, &sub),
            FiniteAbelianGroup::cyclic(2)
        );
        assert_eq!(
            FiniteAbelianGroup::from_diagonal(&[2, 3]),
            FiniteAbelianGroup::cyclic(6)
        );
        assert_eq!(FiniteAbelianGroup::from_diagonal(&[4, 6]).invariant_factors(), &[2, 12]);
    }

    #[test]
    fn embedding() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        let z4 = FiniteAbelianGroup::cyclic(4);
        let v4 = FiniteAbelianGroup::from_diagonal(&[2, 2]);
        assert!(z2.embeds_in(&z4));
        assert!(!v4.embeds_in(&z4));
        assert!(!z4.embeds_in(&v4));
        assert!(FiniteAbelianGroup::trivial().embeds_in(&FiniteAbelianGroup::trivial()));
        assert!(!z2.embeds_in(&FiniteAbelianGroup::cyclic(3)));
    }

    proptest! {
        #[test]
        fn snf_is_valid(m in proptest::collection::vec(proptest::collection::vec(-6i64..7, 3), 1..5)) {
            check_snf(&m);
        }

        #[test]
        fn saturation_invariant_under_unimodular_change(
            m in proptest::collection::vec(proptest::collection::vec(-5i64..6, 3), 2),
            a in -3i64..4, b in -3i64..4,
        ) {
            prop_assume!(linalg::rank_int(&m) == 2);
            let amb = IntegerLattice::standard(3);
            let sub = IntegerLattice::new(m.clone(), 3).unwrap();
            let g1 = saturation_quotient(&amb, &sub).unwrap();
            // shear the sub basis and the ambient basis
            let sheared = vec![m[0].clone(), m[1].iter().zip(&m[0]).map(|(x, y)| x + a * y).collect()];
            let amb2 = IntegerLattice::new(vec![vec![1, b, 0], vec![0, 1, a], vec![0, 0, 1]], 3).unwrap();
            let g2 = saturation_quotient(&amb2, &IntegerLattice::new(sheared, 3).unwrap()).unwrap();
            prop_assert_eq!(g1, g2);
        }
    }
}
