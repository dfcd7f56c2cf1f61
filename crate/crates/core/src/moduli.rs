//! Torsion-level shadow of the moduli of commuting pairs, `(T × T)/W`, and
//! the fixed-space data of pairs commuting up to a central element.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::diagram::{self, CenterElement};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::intlat;
use crate::linalg::{self, IntMatrix, Rational};
use crate::rootsys::{RationalVector, RootSystem};
use crate::weyl::{Caps, WeylElement, WeylGroup};

/// The `m`-torsion `T[m] = (1/m)Q∨/Q∨ ≅ (Z/m)^rank`, in coroot coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TorsionLevel(u32);

impl TorsionLevel {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("torsion level must be at least 1".into()));
        }
        Ok(TorsionLevel(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `|T[m]| = m^rank`.
    pub fn point_count(self, rank: usize) -> u128 {
        u128::from(self.0).pow(rank as u32)
    }
}

/// `|{x ∈ (Z/m)^n : (N - I)x ≡ 0}|` from the Smith form of `N - I`.
pub fn fixed_count(n_minus_i: &IntMatrix, m: u32) -> u128 {
    let snf = intlat::smith_normal_form(n_minus_i);
    let m = u128::from(m);
    let diag = snf.diagonal();
    let rows = n_minus_i.len();
    (0..rows)
        .map(|i| {
            let d = diag
                .get(i)
                .map_or(0, |d| d.magnitude().to_u128().expect("small entries"));
            d.gcd(&m)
        })
        .product()
}

fn minus_identity(n: &IntMatrix) -> IntMatrix {
    n.iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, &x)| x - i64::from(i == j)).collect())
        .collect()
}

/// Number of `W`-orbits on `T[m] × T[m]`, by Burnside:
/// `(1/|W|) Σ_w |Fix(w)|²`.
pub fn count_pairs_burnside(rs: &RootSystem, m: TorsionLevel, caps: &Caps, exec: Exec) -> Result<u128> {
    let w = WeylGroup::enumerate(rs, caps)?;
    let total = exec.sum(w.coroot_matrices(), |n| {
        let f = fixed_count(&minus_identity(n), m.get());
        f * f
    });
    let order = w.order() as u128;
    debug_assert_eq!(total % order, 0);
    Ok(total / order)
}

fn encode(x: &[i64], m: i64) -> u64 {
    x.iter().fold(0u64, |acc, &c| acc * m as u64 + c.rem_euclid(m) as u64)
}

fn decode(mut code: u64, n: usize, m: i64) -> Vec<i64> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = (code % m as u64) as i64;
        code /= m as u64;
    }
    out
}

/// Smallest code of the `W`-orbit of the pair `(x, y)` in `T[m]²`.
fn canonical_pair(mats: &[IntMatrix], x: &[i64], y: &[i64], m: i64) -> u128 {
    let width = u128::from(m as u64).pow(x.len() as u32);
    mats.iter()
        .map(|n| {
            let a = encode(&linalg::mat_vec(n, x), m) as u128;
            let b = encode(&linalg::mat_vec(n, y), m) as u128;
            a * width + b
        })
        .min()
        .expect("W is nonempty")
}

/// Same count by listing every pair and keeping those that are the minimum
/// of their own orbit.
pub fn count_pairs_direct(rs: &RootSystem, m: TorsionLevel, caps: &Caps, exec: Exec) -> Result<u128> {
    let n = rs.rank();
    let per = m.point_count(n);
    let pairs = per * per;
    if pairs > caps.pairs {
        return Err(Error::CapExceeded {
            what: "torsion pair enumeration",
            needed: pairs,
            cap: caps.pairs,
        });
    }
    let w = WeylGroup::enumerate(rs, caps)?;
    let mats = w.coroot_matrices();
    let mi = i64::from(m.get());
    Ok(exec.sum_range(pairs as u64, |code| {
        let a = decode(code / per as u64, n, mi);
        let b = decode(code % per as u64, n, mi);
        u128::from(canonical_pair(mats, &a, &b, mi) == u128::from(code))
    }))
}

/// Canonical orbit codes of every `W`-orbit on `T[m]²`, sorted.
pub fn orbit_representatives(rs: &RootSystem, m: TorsionLevel, caps: &Caps) -> Result<Vec<u128>> {
    let n = rs.rank();
    let per = m.point_count(n);
    if per * per > caps.pairs {
        return Err(Error::CapExceeded {
            what: "torsion pair enumeration",
            needed: per * per,
            cap: caps.pairs,
        });
    }
    let w = WeylGroup::enumerate(rs, caps)?;
    let mi = i64::from(m.get());
    let mut out: Vec<u128> = (0..per * per)
        .filter(|&code| {
            let a = decode((code / per) as u64, n, mi);
            let b = decode((code % per) as u64, n, mi);
            canonical_pair(w.coroot_matrices(), &a, &b, mi) == code
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Pushes an orbit code at level `m` to level `m·k` along `x ↦ k x`, and
/// returns the canonical code there.
pub fn lift_representative(rs: &RootSystem, code: u128, m: TorsionLevel, k: u32, caps: &Caps) -> Result<u128> {
    let n = rs.rank();
    let per = m.point_count(n);
    let mi = i64::from(m.get());
    let big = i64::from(m.get() * k);
    let scale = |v: Vec<i64>| v.into_iter().map(|c| c * i64::from(k)).collect::<Vec<_>>();
    let a = scale(decode((code / per) as u64, n, mi));
    let b = scale(decode((code % per) as u64, n, mi));
    let w = WeylGroup::enumerate(rs, caps)?;
    Ok(canonical_pair(w.coroot_matrices(), &a, &b, big))
}

/// Simple roots whose coefficient in `λ = ϖ_k∨ = Σ r_a a∨` is not an
/// integer, with `c = exp(λ)`.
pub fn delta_c(rs: &RootSystem, c: CenterElement) -> Vec<usize> {
    delta_of(rs, &c.coweight(rs))
}

/// [`delta_c`] for an arbitrary representative `λ` of the class.
pub fn delta_of(rs: &RootSystem, lambda: &RationalVector) -> Vec<usize> {
    rs.to_coroot_coords(lambda)
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_integer())
        .map(|(i, _)| i + 1)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CPairData {
    /// Special node naming the central element.
    pub c: usize,
    pub order: usize,
    pub w_c: WeylElement,
    pub delta_c: Vec<usize>,
    /// Node permutation of the alcove automorphism `φ`.
    pub permutation: Vec<usize>,
    /// `ζ` with `φ(t) = w_c(t - ζ)`.
    pub zeta: RationalVector,
    /// Direction space of `A^c`.
    pub basis: Vec<RationalVector>,
    pub dim: usize,
    /// Vertices of `A^c`: barycenters of the vertex orbits of `φ`.
    pub vertices: Vec<RationalVector>,
    /// Barycenter of `A^c`.
    pub basepoint: RationalVector,
}

/// The fixed face `A^c` of the alcove automorphism
/// `φ(t) = w_c t + ϖ_k∨ = w_c(t - ζ)` attached to `c`.
pub fn cpair_fixed_space(rs: &RootSystem, c: CenterElement) -> Result<CPairData> {
    let n = rs.rank();
    let w = diagram::center_weyl_element(rs, c);
    let sigma = diagram::center_automorphism(rs, c);
    let shift = c.coweight(rs);

    // ζ = -w_c⁻¹ ϖ_k∨
    let inv = linalg::inverse(&linalg::to_rational(&w.matrix)).expect("Weyl elements are invertible");
    let zeta = RationalVector(linalg::rat_mat_vec(&inv, &shift.0)).scale(Rational::from_integer(-1));

    let vertices: Vec<RationalVector> = sigma.orbits().iter().map(|orb| diagram::barycenter(rs, orb)).collect();
    let mut base = RationalVector::zero(n);
    for v in &vertices {
        base = &base + v;
    }
    let basepoint = base.scale(Rational::new(1, vertices.len() as i64));

    let basis: Vec<RationalVector> = diagram::linear_fixed_space(&w)
        .into_iter()
        .map(RationalVector)
        .collect();
    let phi = |t: &RationalVector| &w.apply(rs, t) + &shift;
    if phi(&basepoint) != basepoint || vertices.iter().any(|v| phi(v) != *v) {
        return Err(Error::InvalidInput("fixed-space computation is inconsistent".into()));
    }
    Ok(CPairData {
        c: c.node(),
        order: diagram::center_order(rs, c),
        delta_c: delta_c(rs, c),
        permutation: sigma.0.clone(),
        zeta,
        dim: basis.len(),
        basis,
        vertices,
        basepoint,
        w_c: w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap())
    }

    fn lvl(m: u32) -> TorsionLevel {
        TorsionLevel::new(m).unwrap()
    }

    #[test]
    fn spot_counts() {
        let caps = Caps::default();
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(count_pairs_burnside(&rs("A1"), lvl(2), &caps, exec).unwrap(), 4);
            assert_eq!(count_pairs_burnside(&rs("A2"), lvl(2), &caps, exec).unwrap(), 5);
            assert_eq!(count_pairs_direct(&rs("A1"), lvl(2), &caps, exec).unwrap(), 4);
            assert_eq!(count_pairs_direct(&rs("A2"), lvl(2), &caps, exec).unwrap(), 5);
            assert_eq!(count_pairs_direct(&rs("A2"), lvl(1), &caps, exec).unwrap(), 1);
            assert_eq!(count_pairs_burnside(&rs("G2"), lvl(1), &caps, exec).unwrap(), 1);
        }
        assert!(TorsionLevel::new(0).is_err());
    }

    #[test]
    fn caps_are_enforced() {
        let caps = Caps::default();
        assert!(count_pairs_burnside(&rs("E8"), lvl(2), &caps, Exec::Sequential)
            .unwrap_err()
            .is_resource());
        let tight = Caps { pairs: 10, ..caps };
        assert!(count_pairs_direct(&rs("A2"), lvl(2), &tight, Exec::Sequential)
            .unwrap_err()
            .is_resource());
    }

    #[test]
    fn fix_counts_by_hand() {
        // identity fixes everything, -I on Z/4 fixes {0, 2}
        assert_eq!(fixed_count(&vec![vec![0, 0], vec![0, 0]], 3), 9);
        assert_eq!(fixed_count(&vec![vec![-2]], 4), 2);
    }

    #[test]
    fn refinement_injects() {
        let caps = Caps::default();
        for t in ["A1", "A2", "B2", "G2"] {
            let r = rs(t);
            let reps = orbit_representatives(&r, lvl(2), &caps).unwrap();
            let mut lifted: Vec<u128> = reps
                .iter()
                .map(|&c| lift_representative(&r, c, lvl(2), 2, &caps).unwrap())
                .collect();
            lifted.sort_unstable();
            lifted.dedup();
            assert_eq!(lifted.len(), reps.len(), "{t}");
            let fine = orbit_representatives(&r, lvl(4), &caps).unwrap();
            assert!(lifted.iter().all(|c| fine.binary_search(c).is_ok()));
        }
    }

    #[test]
    fn delta_examples() {
        let a1 = rs("A1");
        assert!(delta_c(&a1, CenterElement::identity()).is_empty());
        assert_eq!(delta_c(&a1, CenterElement::new(&a1, 1).unwrap()), vec![1]);
        let a3 = rs("A3");
        assert_eq!(delta_c(&a3, CenterElement::new(&a3, 2).unwrap()), vec![1, 3]);
        assert_eq!(delta_c(&a3, CenterElement::new(&a3, 1).unwrap()), vec![1, 2, 3]);
    }

    #[test]
    fn cpair_examples() {
        for n in 1..=6 {
            let r = rs(&format!("A{n}"));
            let d = cpair_fixed_space(&r, CenterElement::new(&r, 1).unwrap()).unwrap();
            assert_eq!(d.dim, 0);
            assert_eq!(d.basepoint, diagram::barycenter(&r, &(0..=n).collect::<Vec<_>>()));
            let id = cpair_fixed_space(&r, CenterElement::identity()).unwrap();
            assert_eq!(id.dim, n);
        }
        let a3 = rs("A3");
        let d = cpair_fixed_space(&a3, CenterElement::new(&a3, 2).unwrap()).unwrap();
        assert_eq!((d.dim, d.order, d.vertices.len()), (1, 2, 2));
    }

    #[test]
    fn cpair_dimension_counts_orbits() {
        for t in crate::rootsys::SimpleType::all_up_to_rank(8) {
            let r = RootSystem::build(t);
            for c in diagram::center_elements(&r) {
                let d = cpair_fixed_space(&r, c).unwrap();
                assert_eq!(d.dim + 1, d.vertices.len(), "{t}");
                // φ(t) = w_c(t - ζ)
                let phi = &d.w_c.apply(&r, &(&d.basepoint - &d.zeta));
                assert_eq!(phi, &d.basepoint);
            }
        }
    }

    proptest! {
        #[test]
        fn delta_invariant_under_coroot_shift(k in 0usize..4, q in prop::collection::vec(-5i64..5, 3)) {
            let r = rs("A3");
            let c = CenterElement::new(&r, k).unwrap();
            let shift = RationalVector::from_ints(&linalg::mat_vec(r.cartan(), &q));
            prop_assert_eq!(delta_of(&r, &(&c.coweight(&r) + &shift)), delta_c(&r, c));
        }

        #[test]
        fn burnside_matches_direct_small(ti in 0usize..4, m in 1u32..4) {
            let ts = ["A1", "A2", "B2", "G2"];
            let r = rs(ts[ti]);
            let caps = Caps::default();
            prop_assert_eq!(
                count_pairs_burnside(&r, lvl(m), &caps, Exec::Sequential).unwrap(),
                count_pairs_direct(&r, lvl(m), &caps, Exec::Sequential).unwrap()
            );
        }
    }
}
