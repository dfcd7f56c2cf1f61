//! Finite and affine Weyl group actions on coweight-coordinate points.
//!
//! A torus element is a point of `h/Q∨`; two points are identified when
//! their difference has integral coordinates in the simple-coroot basis.
//! Orbits and stabilizers are always taken on the torus, i.e. modulo `Q∨`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{self, IntMatrix, Rational};
use crate::rootsys::{RationalVector, RootSystem};

/// Resource caps for enumerative searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest Weyl group (or subgroup) that may be materialized.
    pub weyl: u128,
    /// Largest number of torsion pairs `m^(2·rank)` enumerated by direct counting.
    pub pairs: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            weyl: 2000,
            pairs: 1 << 22,
        }
    }
}

/// Affine map `t ↦ matrix · t + Σ translation_i a_i∨`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeylElement {
    /// Linear part acting on coweight coordinates.
    pub matrix: IntMatrix,
    /// Translation in simple-coroot coordinates.
    pub translation: Vec<i64>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            matrix: linalg::identity(n),
            translation: vec![0; n],
        }
    }

    pub fn linear(matrix: IntMatrix) -> Self {
        let n = matrix.len();
        WeylElement {
            matrix,
            translation: vec![0; n],
        }
    }

    /// Reflection in the root with simple-root coefficients `root` whose
    /// coroot has coweight coordinates `coroot`: `I - coroot · rootᵀ`.
    pub fn root_reflection(root: &[i64], coroot: &[i64]) -> Self {
        let n = root.len();
        let matrix = (0..n)
            .map(|r| (0..n).map(|c| i64::from(r == c) - coroot[r] * root[c]).collect())
            .collect();
        WeylElement::linear(matrix)
    }

    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Result<Self> {
        let col = rs.coroot_in_coweight_basis(i)?;
        let mut e = vec![0; rs.rank()];
        e[i - 1] = 1;
        let coroot: Vec<i64> = col.0.iter().map(|x| x.to_integer()).collect();
        Ok(WeylElement::root_reflection(&e, &coroot))
    }

    /// Reflection in the affine wall `d(t) = 1`.
    pub fn affine_reflection(rs: &RootSystem) -> Self {
        let mut w = WeylElement::root_reflection(rs.highest_root(), &rs.highest_coroot());
        w.translation = rs.comarks().to_vec();
        w
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == linalg::identity(self.matrix.len()) && self.translation.iter().all(|&x| x == 0)
    }

    pub fn apply(&self, rs: &RootSystem, t: &RationalVector) -> RationalVector {
        let lin = linalg::mat_vec_rat(&self.matrix, &t.0);
        let tr = linalg::mat_vec(rs.cartan(), &self.translation);
        RationalVector(lin.iter().zip(&tr).map(|(a, &b)| a + b).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        let matrix = linalg::mat_mul(&self.matrix, &other.matrix);
        let moved = linalg::mat_vec(&self.matrix, &linalg::mat_vec(rs.cartan(), &other.translation));
        let moved = RationalVector::from_ints(&moved);
        let q = rs.to_coroot_coords(&moved);
        let translation = q
            .iter()
            .zip(&self.translation)
            .map(|(a, b)| {
                debug_assert!(a.is_integer());
                a.to_integer() + b
            })
            .collect();
        WeylElement { matrix, translation }
    }

    /// True when the linear part permutes the coroots, i.e. lies in `W`.
    pub fn preserves_roots(&self, rs: &RootSystem) -> bool {
        let coroots: HashSet<&[i64]> = (0..rs.roots().len()).map(|i| rs.coroot_of(i)).collect();
        (0..rs.roots().len()).all(|i| {
            let img = linalg::mat_vec(&self.matrix, rs.coroot_of(i));
            coroots.contains(img.as_slice())
        })
    }
}

/// A point of the closed fundamental alcove.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AlcovePoint(RationalVector);

impl AlcovePoint {
    pub fn new(rs: &RootSystem, t: RationalVector) -> Result<Self> {
        if t.dim() != rs.rank() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, rank is {}",
                t.dim(),
                rs.rank()
            )));
        }
        if !rs.in_closed_alcove(&t) {
            return Err(Error::InvalidInput(format!(
                "{t} is not in the closed fundamental alcove"
            )));
        }
        Ok(AlcovePoint(t))
    }

    pub fn point(&self) -> &RationalVector {
        &self.0
    }

    pub fn into_point(self) -> RationalVector {
        self.0
    }
}

/// `s_i(t) = t - a_i(t) · a_i∨`.
pub fn reflect(rs: &RootSystem, i: usize, t: &RationalVector) -> Result<RationalVector> {
    let col = rs.coroot_in_coweight_basis(i)?;
    let c = t.0[i - 1];
    Ok(&t.clone() - &col.scale(c))
}

/// Affine walls of a (product) alcove: simple roots `β(t) ≥ 0` and highest
/// roots `θ(t) ≤ 1`, each with its coroot in coweight coordinates.
#[derive(Debug, Clone)]
pub struct Walls {
    pub simple: Vec<(Vec<i64>, Vec<i64>)>,
    pub highest: Vec<(Vec<i64>, Vec<i64>)>,
}

impl Walls {
    pub fn of(rs: &RootSystem) -> Walls {
        let n = rs.rank();
        let simple = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                let idx = rs.root_index(&e).expect("simple root");
                (e, rs.coroot_of(idx).to_vec())
            })
            .collect();
        Walls {
            simple,
            highest: vec![(rs.highest_root().to_vec(), rs.highest_coroot())],
        }
    }

    /// Index of the first violated wall: simple walls in order, then the
    /// highest-root walls.
    fn first_violated(&self, t: &RationalVector) -> Option<(bool, usize, Rational)> {
        for (i, (root, _)) in self.simple.iter().enumerate() {
            let v = linalg::dot_int_rat(root, &t.0);
            if v.is_negative() {
                return Some((false, i, v));
            }
        }
        let one = Rational::from_integer(1);
        for (i, (root, _)) in self.highest.iter().enumerate() {
            let v = linalg::dot_int_rat(root, &t.0);
            if v > one {
                return Some((true, i, v - one));
            }
        }
        None
    }

    pub fn contains(&self, t: &RationalVector) -> bool {
        self.first_violated(t).is_none()
    }

    /// Folds `t` into the closed alcove, always reflecting in the first
    /// violated wall. Returns the point and the sequence of walls used.
    pub fn reduce(&self, t: &RationalVector) -> (RationalVector, Vec<(bool, usize)>) {
        let mut t = t.clone();
        let mut word = Vec::new();
        while let Some((affine, i, v)) = self.first_violated(&t) {
            let coroot = if affine { &self.highest[i].1 } else { &self.simple[i].1 };
            for (x, &c) in t.0.iter_mut().zip(coroot) {
                *x -= v * c;
            }
            word.push((affine, i));
        }
        (t, word)
    }
}

/// Representative of `t` in the closed fundamental alcove together with an
/// affine Weyl element `w` with `w(t) = t₀`.
pub fn reduce_to_alcove(rs: &RootSystem, t: &RationalVector) -> (AlcovePoint, WeylElement) {
    let walls = Walls::of(rs);
    let (t0, word) = walls.reduce(t);
    let mut w = WeylElement::identity(rs.rank());
    for (affine, i) in word {
        let s = if affine {
            WeylElement::affine_reflection(rs)
        } else {
            WeylElement::simple_reflection(rs, i + 1).expect("valid node")
        };
        w = s.compose(rs, &w);
    }
    debug_assert_eq!(w.apply(rs, t), t0);
    (AlcovePoint(t0), w)
}

/// Alcove representative without the witness.
pub fn reduce_point(rs: &RootSystem, t: &RationalVector) -> RationalVector {
    Walls::of(rs).reduce(t).0
}

fn check_cap(what: &'static str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        return Err(Error::CapExceeded { what, needed, cap });
    }
    Ok(())
}

/// Integer action of the simple reflections on simple-coroot coordinates.
fn coroot_generators(rs: &RootSystem) -> Vec<IntMatrix> {
    let n = rs.rank();
    let c = rs.cartan();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|r| {
                    (0..n)
                        .map(|j| i64::from(r == j) - i64::from(r == i) * c[i][j])
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Closure of a set of integer matrices under multiplication, breadth first.
pub fn generate_group(generators: &[IntMatrix], n: usize, cap: u128) -> Result<Vec<IntMatrix>> {
    let id = linalg::identity(n);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = linalg::mat_mul(s, &g);
            if seen.insert(h.clone()) {
                check_cap("Weyl group enumeration", out.len() as u128 + 1, cap)?;
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(out)
}

/// Materialized finite Weyl group of a root system.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    /// Elements acting on simple-coroot coordinates.
    coroot_mats: Vec<IntMatrix>,
    /// The same elements acting on coweight coordinates.
    coweight_mats: Vec<IntMatrix>,
}

impl WeylGroup {
    pub fn enumerate(rs: &RootSystem, caps: &Caps) -> Result<WeylGroup> {
        check_cap("Weyl group enumeration", rs.simple_type().weyl_order(), caps.weyl)?;
        let coroot_mats = generate_group(&coroot_generators(rs), rs.rank(), caps.weyl)?;
        let coweight_mats = coroot_mats
            .iter()
            .map(|m| {
                // C · N · C⁻¹
                let cn = linalg::mat_mul(rs.cartan(), m);
                let cn = linalg::to_rational(&cn);
                let inv = rs.cartan_inverse();
                cn.iter()
                    .map(|row| {
                        (0..rs.rank())
                            .map(|j| {
                                let v = row
                                    .iter()
                                    .zip(inv.iter())
                                    .fold(Rational::zero(), |acc, (a, r)| acc + a * r[j]);
                                v.to_integer()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(WeylGroup {
            coroot_mats,
            coweight_mats,
        })
    }

    pub fn order(&self) -> usize {
        self.coroot_mats.len()
    }

    pub fn coroot_matrices(&self) -> &[IntMatrix] {
        &self.coroot_mats
    }

    pub fn element(&self, i: usize) -> WeylElement {
        WeylElement::linear(self.coweight_mats[i].clone())
    }

    /// Indices of elements fixing every point modulo `Q∨`.
    pub fn stabilizer_indices(&self, rs: &RootSystem, points: &[RationalVector], exec: Exec) -> Vec<usize> {
        let qs: Vec<Vec<Rational>> = points.iter().map(|p| rs.to_coroot_coords(p)).collect();
        let keep = exec.map_range(self.order(), |i| {
            let m = &self.coroot_mats[i];
            qs.iter().all(|q| {
                linalg::mat_vec_rat(m, q)
                    .iter()
                    .zip(q)
                    .all(|(a, b)| (a - b).is_integer())
            })
        });
        keep.iter().enumerate().filter(|(_, &k)| k).map(|(i, _)| i).collect()
    }
}

fn frac_coroot(q: Vec<Rational>) -> Vec<Rational> {
    q.into_iter().map(linalg::frac_part).collect()
}

/// The `W`-orbit of `t` on the torus `h/Q∨`, each point canonicalized by
/// [`RootSystem::reduce_mod_coroot`].
pub fn orbit(rs: &RootSystem, t: &RationalVector, caps: &Caps) -> Result<BTreeSet<RationalVector>> {
    check_cap("orbit enumeration", rs.simple_type().weyl_order(), caps.weyl)?;
    let n = rs.rank();
    let c = rs.cartan();
    let start = frac_coroot(rs.to_coroot_coords(t));
    let mut seen: HashSet<Vec<Rational>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(q) = queue.pop_front() {
        for i in 0..n {
            let ai: Rational = (0..n).fold(Rational::zero(), |acc, j| acc + q[j] * c[i][j]);
            if ai.is_integer() {
                continue;
            }
            let mut img = q.clone();
            img[i] = linalg::frac_part(img[i] - ai);
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    Ok(seen.into_iter().map(|q| rs.from_coroot_coords(&q)).collect())
}

/// Simultaneous stabilizer of a tuple of torus points in `W`, as linear
/// Weyl elements.
pub fn stabilizer(rs: &RootSystem, points: &[RationalVector], caps: &Caps) -> Result<Vec<WeylElement>> {
    let w = WeylGroup::enumerate(rs, caps)?;
    Ok(w.stabilizer_indices(rs, points, Exec::Sequential)
        .into_iter()
        .map(|i| w.element(i))
        .collect())
}

/// Number of distinct canonical keys in `points` modulo `Q∨`.
pub fn distinct_mod_coroot(rs: &RootSystem, points: &[RationalVector]) -> usize {
    let mut m: HashMap<RationalVector, ()> = HashMap::new();
    for p in points {
        m.insert(rs.reduce_mod_coroot(p), ());
    }
    m.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SimpleType;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap())
    }

    fn v(x: &[(i64, i64)]) -> RationalVector {
        RationalVector::from_fracs(x)
    }

    #[test]
    fn reflect_examples() {
        let a2 = rs("A2");
        assert_eq!(reflect(&a2, 1, &v(&[(-1, 3), (0, 1)])).unwrap(), v(&[(1, 3), (-1, 3)]));
        let wall = v(&[(0, 1), (2, 7)]);
        assert_eq!(reflect(&a2, 1, &wall).unwrap(), wall);
        assert_eq!(reflect(&rs("A1"), 1, &v(&[(7, 4)])).unwrap(), v(&[(-7, 4)]));
        let p = v(&[(1, 5), (2, 9)]);
        assert_eq!(reflect(&a2, 2, &reflect(&a2, 2, &p).unwrap()).unwrap(), p);
    }

    #[test]
    fn reduce_examples() {
        let a1 = rs("A1");
        let (p, w) = reduce_to_alcove(&a1, &v(&[(7, 4)]));
        assert_eq!(p.point(), &v(&[(1, 4)]));
        assert_eq!(w.apply(&a1, &v(&[(7, 4)])), v(&[(1, 4)]));
        let a2 = rs("A2");
        let (p, _) = reduce_to_alcove(&a2, &v(&[(-1, 3), (0, 1)]));
        assert_eq!(p.point(), &v(&[(0, 1), (1, 3)]));
        let inside = v(&[(1, 5), (1, 7)]);
        let (p, w) = reduce_to_alcove(&a2, &inside);
        assert_eq!(p.point(), &inside);
        assert!(w.is_identity());
    }

    #[test]
    fn orbit_examples() {
        let caps = Caps::default();
        // the nontrivial central element of SU(2) sits at the vertex c = 1
        assert_eq!(orbit(&rs("A1"), &v(&[(1, 1)]), &caps).unwrap().len(), 1);
        assert_eq!(orbit(&rs("A1"), &v(&[(1, 2)]), &caps).unwrap().len(), 2);
        assert_eq!(orbit(&rs("A2"), &v(&[(0, 1), (0, 1)]), &caps).unwrap().len(), 1);
        assert_eq!(orbit(&rs("A2"), &v(&[(1, 5), (1, 7)]), &caps).unwrap().len(), 6);
        let err = orbit(&rs("E8"), &v(&[(0, 1); 8]), &caps).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn stabilizer_examples() {
        let caps = Caps::default();
        assert_eq!(stabilizer(&rs("A2"), &[v(&[(0, 1), (0, 1)])], &caps).unwrap().len(), 6);
        assert_eq!(stabilizer(&rs("A1"), &[v(&[(1, 1)])], &caps).unwrap().len(), 2);
        assert_eq!(stabilizer(&rs("A1"), &[v(&[(1, 2)])], &caps).unwrap().len(), 1);
        let s = stabilizer(&rs("A2"), &[v(&[(1, 5), (1, 7)])], &caps).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].is_identity());
        assert!(stabilizer(&rs("E7"), &[v(&[(0, 1); 7])], &caps)
            .unwrap_err()
            .is_resource());
    }

    #[test]
    fn weyl_orders_match_closed_forms() {
        let caps = Caps {
            weyl: 2000,
            ..Caps::default()
        };
        for t in SimpleType::all_up_to_rank(4) {
            let r = RootSystem::build(t);
            let w = WeylGroup::enumerate(&r, &caps).unwrap();
            assert_eq!(w.order() as u128, t.weyl_order(), "{t}");
            for i in [0, w.order() / 2, w.order() - 1] {
                assert!(w.element(i).preserves_roots(&r));
            }
        }
    }

    #[test]
    fn witness_composition() {
        let g2 = rs("G2");
        let t = v(&[(17, 5), (-13, 7)]);
        let (p, w) = reduce_to_alcove(&g2, &t);
        assert_eq!(w.apply(&g2, &t), p.point().clone());
        assert!(g2.in_closed_alcove(p.point()));
        assert!(w.preserves_roots(&g2));
    }

    #[test]
    fn alcove_point_validation() {
        let a2 = rs("A2");
        assert!(AlcovePoint::new(&a2, v(&[(1, 2), (1, 2)])).is_ok());
        assert!(AlcovePoint::new(&a2, v(&[(2, 3), (1, 2)])).is_err());
        assert!(AlcovePoint::new(&a2, v(&[(-1, 3), (0, 1)])).is_err());
        assert!(AlcovePoint::new(&a2, v(&[(0, 1)])).is_err());
    }
}
