//! Extended Dynkin diagrams, their label-preserving automorphisms, the
//! action of the center on the alcove, and cyclic folding of `Ã_n`.
//!
//! Node 0 is always the extended node `ã = -d`; nodes `1..=n` are the simple
//! roots in Bourbaki order. Vertex `v_i` of the alcove is the vertex opposite
//! wall `i`, so permutations of walls and of vertices coincide.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlat;
use crate::linalg::{self, IntMatrix, Rational};
use crate::rootsys::{Family, RationalVector, RootSystem, SimpleType};
use crate::weyl::{self, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub id: usize,
    pub label: String,
    pub mark: i64,
    pub comark: i64,
}

/// An edge `i — j` carrying both Cartan entries `C[i][j]`, `C[j][i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub a_ij: i64,
    pub a_ji: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendedDiagram {
    #[serde(rename = "type")]
    pub simple_type: SimpleType,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    #[serde(skip)]
    cartan: IntMatrix,
}

impl ExtendedDiagram {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Extended Cartan matrix, `(n+1) × (n+1)`.
    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn marks(&self) -> Vec<i64> {
        self.nodes.iter().map(|n| n.mark).collect()
    }

    pub fn comarks(&self) -> Vec<i64> {
        self.nodes.iter().map(|n| n.comark).collect()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| j != i && self.cartan[i][j] != 0).collect()
    }

    /// Nodes with mark and comark both 1, i.e. the images of `ã` under the
    /// center.
    pub fn special_nodes(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .filter(|n| n.mark == 1 && n.comark == 1)
            .map(|n| n.id)
            .collect()
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.len();
        perm.len() == n
            && (0..n).all(|i| {
                self.nodes[perm[i]].mark == self.nodes[i].mark
                    && self.nodes[perm[i]].comark == self.nodes[i].comark
                    && (0..n).all(|j| self.cartan[perm[i]][perm[j]] == self.cartan[i][j])
            })
    }
}

pub fn extended_diagram(rs: &RootSystem) -> ExtendedDiagram {
    let n = rs.rank();
    let c = rs.cartan();
    let marks = rs.marks();
    let hc = rs.highest_coroot();
    let mut ext = vec![vec![0i64; n + 1]; n + 1];
    ext[0][0] = 2;
    for j in 0..n {
        // (-d)(a_j∨) and a_j(-d∨)
        ext[0][j + 1] = -(0..n).map(|k| marks[k] * c[k][j]).sum::<i64>();
        ext[j + 1][0] = -hc[j];
        for i in 0..n {
            ext[i + 1][j + 1] = c[i][j];
        }
    }
    let mut nodes = vec![Node {
        id: 0,
        label: "a0".into(),
        mark: 1,
        comark: 1,
    }];
    for i in 0..n {
        nodes.push(Node {
            id: i + 1,
            label: format!("a{}", i + 1),
            mark: marks[i],
            comark: rs.comarks()[i],
        });
    }
    let mut edges = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            if ext[i][j] != 0 {
                edges.push(Edge {
                    from: i,
                    to: j,
                    a_ij: ext[i][j],
                    a_ji: ext[j][i],
                });
            }
        }
    }
    ExtendedDiagram {
        simple_type: rs.simple_type(),
        nodes,
        edges,
        cartan: ext,
    }
}

/// A permutation of the extended nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiagramAutomorphism(pub Vec<usize>);

impl DiagramAutomorphism {
    pub fn identity(n: usize) -> Self {
        DiagramAutomorphism((0..n).collect())
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        DiagramAutomorphism(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    /// Orbits of `⟨self⟩`, each sorted, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut orb = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                orb.push(i);
                i = self.0[i];
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }
}

/// Every label-preserving automorphism, found by backtracking; sorted.
pub fn automorphism_group(ed: &ExtendedDiagram) -> Vec<DiagramAutomorphism> {
    fn extend(ed: &ExtendedDiagram, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<DiagramAutomorphism>) {
        let i = perm.len();
        if i == ed.len() {
            out.push(DiagramAutomorphism(perm.clone()));
            return;
        }
        for cand in 0..ed.len() {
            if used[cand] || ed.nodes[cand].mark != ed.nodes[i].mark || ed.nodes[cand].comark != ed.nodes[i].comark {
                continue;
            }
            let consistent = (0..i)
                .all(|j| ed.cartan[cand][perm[j]] == ed.cartan[i][j] && ed.cartan[perm[j]][cand] == ed.cartan[j][i]);
            if consistent {
                used[cand] = true;
                perm.push(cand);
                extend(ed, perm, used, out);
                perm.pop();
                used[cand] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(ed, &mut Vec::new(), &mut vec![false; ed.len()], &mut out);
    out.sort();
    out
}

/// A center element, named by the special node `k` that its alcove
/// automorphism sends `ã` to (node 0 is the identity). Its coweight
/// representative is the minuscule coweight `ϖ_k∨`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CenterElement(usize);

impl CenterElement {
    pub fn identity() -> Self {
        CenterElement(0)
    }

    pub fn new(rs: &RootSystem, k: usize) -> Result<Self> {
        if k > rs.rank() {
            return Err(Error::IndexOutOfRange {
                index: k,
                rank: rs.rank(),
            });
        }
        if k != 0 && !(rs.marks()[k - 1] == 1 && rs.comarks()[k - 1] == 1) {
            return Err(Error::InvalidInput(format!(
                "node {k} of {} is not special; special nodes are {:?}",
                rs.simple_type(),
                special_nodes(rs)
            )));
        }
        Ok(CenterElement(k))
    }

    pub fn node(self) -> usize {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    /// `ϖ_k∨` in coweight coordinates (zero for the identity).
    pub fn coweight(self, rs: &RootSystem) -> RationalVector {
        let mut v = RationalVector::zero(rs.rank());
        if self.0 > 0 {
            v.0[self.0 - 1] = Rational::from_integer(1);
        }
        v
    }
}

pub fn special_nodes(rs: &RootSystem) -> Vec<usize> {
    extended_diagram(rs).special_nodes()
}

pub fn center_elements(rs: &RootSystem) -> Vec<CenterElement> {
    special_nodes(rs).into_iter().map(CenterElement).collect()
}

/// Product in `P∨/Q∨`.
pub fn center_mul(rs: &RootSystem, a: CenterElement, b: CenterElement) -> CenterElement {
    let sum = rs.reduce_mod_coroot(&(&a.coweight(rs) + &b.coweight(rs)));
    center_elements(rs)
        .into_iter()
        .find(|c| rs.reduce_mod_coroot(&c.coweight(rs)) == sum)
        .expect("special nodes represent every coset of P∨/Q∨")
}

fn vertex_index(rs: &RootSystem, p: &RationalVector) -> usize {
    (0..=rs.rank())
        .find(|&i| &rs.alcove_vertex(i) == p)
        .expect("alcove automorphisms permute vertices")
}

/// Permutation of extended nodes induced by `t ↦ t + ϖ_k∨` on the alcove.
pub fn center_automorphism(rs: &RootSystem, c: CenterElement) -> DiagramAutomorphism {
    let shift = c.coweight(rs);
    DiagramAutomorphism(
        (0..=rs.rank())
            .map(|i| vertex_index(rs, &weyl::reduce_point(rs, &(&rs.alcove_vertex(i) + &shift))))
            .collect(),
    )
}

/// The linear part `w_c ∈ W` of the alcove automorphism of `c`, which is
/// `t ↦ w_c t + v_k`.
pub fn center_weyl_element(rs: &RootSystem, c: CenterElement) -> WeylElement {
    let n = rs.rank();
    let sigma = center_automorphism(rs, c);
    let vk = rs.alcove_vertex(c.node());
    let mut m = vec![vec![0i64; n]; n];
    for i in 1..=n {
        let mi = Rational::from_integer(rs.marks()[i - 1]);
        let col = (&rs.alcove_vertex(sigma.image(i)) - &vk).scale(mi);
        for (r, x) in col.0.iter().enumerate() {
            m[r][i - 1] = x.to_integer();
        }
    }
    WeylElement::linear(m)
}

/// Quotient data of `Ã_n` by the order-`k` subgroup of its rotations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicFold {
    pub k: usize,
    pub l: usize,
    /// `k` copies of `A_{l-1}` (none when `l = 1`).
    pub factors: Vec<SimpleType>,
    pub torus_rank: usize,
    pub rotation_order: usize,
    /// `ã, a_l, a_{2l}, …, a_{(k-1)l}`.
    pub node_representatives: Vec<usize>,
    /// The order-`k` rotation as a node permutation.
    pub rotation: DiagramAutomorphism,
    /// Dimension of the alcove face fixed by that rotation: its orbit count
    /// on vertices minus one.
    pub fixed_space_dim: usize,
}

pub fn fold_cyclic(rs: &RootSystem, k: usize) -> Result<CyclicFold> {
    let t = rs.simple_type();
    if t.family() != Family::A {
        return Err(Error::InvalidInput(format!(
            "cyclic folding is defined for type A, got {t}"
        )));
    }
    let n1 = t.rank() + 1;
    if k == 0 || !n1.is_multiple_of(k) {
        return Err(Error::InvalidInput(format!("k = {k} does not divide n+1 = {n1}")));
    }
    let l = n1 / k;
    let factors = if l == 1 {
        Vec::new()
    } else {
        vec![SimpleType::new(Family::A, l - 1)?; k]
    };
    let rotation = center_automorphism(rs, CenterElement::new(rs, l % n1)?);
    debug_assert_eq!(rotation.order(), k);
    Ok(CyclicFold {
        k,
        l,
        factors,
        torus_rank: k - 1,
        rotation_order: k,
        node_representatives: (0..k).map(|i| i * l).collect(),
        fixed_space_dim: rotation.orbits().len() - 1,
        rotation,
    })
}

/// Alcove vertex barycenter of a set of vertex indices.
pub fn barycenter(rs: &RootSystem, vertices: &[usize]) -> RationalVector {
    let mut acc = RationalVector::zero(rs.rank());
    for &i in vertices {
        acc = &acc + &rs.alcove_vertex(i);
    }
    acc.scale(Rational::new(1, vertices.len() as i64))
}

/// Order of `c` in the center, by repeated multiplication.
pub fn center_order(rs: &RootSystem, c: CenterElement) -> usize {
    let mut x = c;
    let mut k = 1;
    while !x.is_identity() {
        x = center_mul(rs, x, c);
        k += 1;
    }
    k
}

/// `|P∨/Q∨|`, cross-checked against the special-node count in tests.
pub fn center_order_total(rs: &RootSystem) -> u64 {
    intlat::center(rs).order()
}

/// Fixed points of `w_c` acting linearly, as a basis of `h^{w_c}`.
pub fn linear_fixed_space(w: &WeylElement) -> Vec<Vec<Rational>> {
    let n = w.matrix.len();
    let mut a = linalg::to_rational(&w.matrix);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= Rational::from_integer(1);
    }
    linalg::nullspace(&a, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap())
    }

    #[test]
    fn a1_double_bond() {
        let ed = extended_diagram(&rs("A1"));
        assert_eq!(ed.edges.len(), 1);
        assert_eq!((ed.edges[0].a_ij, ed.edges[0].a_ji), (-2, -2));
        let aut = automorphism_group(&ed);
        assert_eq!(aut.len(), 2);
        assert_eq!(aut[1].0, vec![1, 0]);
    }

    #[test]
    fn type_a_is_a_cycle() {
        for n in 2..=8 {
            let ed = extended_diagram(&rs(&format!("A{n}")));
            assert_eq!(ed.edges.len(), n + 1);
            assert!((0..=n).all(|i| ed.neighbors(i).len() == 2));
            assert_eq!(automorphism_group(&ed).len(), 2 * (n + 1));
        }
    }

    #[test]
    fn g2_path() {
        let ed = extended_diagram(&rs("G2"));
        // a0 — a2 (long) — a1 (short)
        assert_eq!(ed.neighbors(0), vec![2]);
        assert_eq!(ed.neighbors(2), vec![0, 1]);
        assert_eq!(ed.marks(), vec![1, 3, 2]);
        assert_eq!(automorphism_group(&ed).len(), 1);
    }

    #[test]
    fn removing_extended_node_recovers_cartan() {
        for t in SimpleType::all_up_to_rank(8) {
            let r = RootSystem::build(t);
            let ed = extended_diagram(&r);
            let sub: IntMatrix = ed.cartan()[1..].iter().map(|row| row[1..].to_vec()).collect();
            assert_eq!(&sub, r.cartan());
            // extended Cartan has the marks as a left kernel vector and comarks as a right one
            let m = ed.marks();
            let g = ed.comarks();
            for j in 0..ed.len() {
                assert_eq!((0..ed.len()).map(|i| m[i] * ed.cartan()[i][j]).sum::<i64>(), 0, "{t}");
                assert_eq!((0..ed.len()).map(|i| ed.cartan()[j][i] * g[i]).sum::<i64>(), 0, "{t}");
            }
        }
    }

    #[test]
    fn e8_trivial_and_d4_triality() {
        assert_eq!(automorphism_group(&extended_diagram(&rs("E8"))).len(), 1);
        assert_eq!(automorphism_group(&extended_diagram(&rs("D4"))).len(), 24);
        assert_eq!(automorphism_group(&extended_diagram(&rs("E6"))).len(), 6);
    }

    #[test]
    fn center_rotations_in_type_a() {
        let a3 = rs("A3");
        let gen = center_automorphism(&a3, CenterElement::new(&a3, 1).unwrap());
        assert_eq!(gen.0, vec![1, 2, 3, 0]);
        let sq = center_automorphism(&a3, CenterElement::new(&a3, 2).unwrap());
        assert_eq!(sq, gen.compose(&gen));
        assert_eq!(sq.0, vec![2, 3, 0, 1]);
        assert!(center_automorphism(&a3, CenterElement::identity()).is_identity());
    }

    #[test]
    fn center_homomorphism_all_types() {
        for t in SimpleType::all_up_to_rank(8) {
            let r = RootSystem::build(t);
            let ed = extended_diagram(&r);
            let cs = center_elements(&r);
            assert_eq!(cs.len() as u64, center_order_total(&r), "{t}");
            let images: Vec<_> = cs.iter().map(|&c| center_automorphism(&r, c)).collect();
            for (a, ia) in cs.iter().zip(&images) {
                assert!(ed.is_automorphism(&ia.0), "{t}");
                assert_eq!(ia.image(0), a.node());
                for (b, ib) in cs.iter().zip(&images) {
                    let ab = center_mul(&r, *a, *b);
                    assert_eq!(center_automorphism(&r, ab), ia.compose(ib), "{t}");
                }
            }
            // injective
            let mut uniq = images.clone();
            uniq.sort();
            uniq.dedup();
            assert_eq!(uniq.len(), images.len());
        }
    }

    #[test]
    fn w_c_is_in_weyl_group() {
        for t in SimpleType::all_up_to_rank(6) {
            let r = RootSystem::build(t);
            for c in center_elements(&r) {
                let w = center_weyl_element(&r, c);
                assert!(w.preserves_roots(&r), "{t}");
                // t ↦ w_c t + v_k maps the alcove onto itself
                let sigma = center_automorphism(&r, c);
                for i in 0..=r.rank() {
                    let img = &w.apply(&r, &r.alcove_vertex(i)) + &r.alcove_vertex(c.node());
                    assert_eq!(img, r.alcove_vertex(sigma.image(i)));
                }
            }
        }
    }

    #[test]
    fn non_special_node_rejected() {
        let g2 = rs("G2");
        assert!(CenterElement::new(&g2, 1).is_err());
        assert!(CenterElement::new(&rs("A2"), 3).is_err());
        assert!(CenterElement::new(&rs("B3"), 3).is_err());
        assert!(CenterElement::new(&rs("B3"), 1).is_ok());
    }

    #[test]
    fn folds() {
        let a5 = rs("A5");
        let f = fold_cyclic(&a5, 3).unwrap();
        assert_eq!(f.factors, vec!["A1".parse().unwrap(); 3]);
        assert_eq!((f.torus_rank, f.rotation_order), (2, 3));
        assert_eq!(f.node_representatives, vec![0, 2, 4]);
        assert_eq!(f.rotation.order(), 3);
        assert_eq!(f.fixed_space_dim, 1);

        let f = fold_cyclic(&a5, 1).unwrap();
        assert_eq!(f.factors, vec!["A5".parse().unwrap()]);
        assert_eq!((f.torus_rank, f.fixed_space_dim), (0, 5));

        let f = fold_cyclic(&a5, 6).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!((f.torus_rank, f.fixed_space_dim), (5, 0));

        assert!(fold_cyclic(&a5, 4).is_err());
        assert!(fold_cyclic(&rs("B3"), 1).is_err());
    }

    #[test]
    fn fixed_dims_pair_up() {
        // the order-k and order-l rotations have fixed dimensions l-1 and k-1
        for n in 1..=8usize {
            let r = rs(&format!("A{n}"));
            for k in (1..=n + 1).filter(|k| (n + 1) % k == 0) {
                let l = (n + 1) / k;
                assert_eq!(fold_cyclic(&r, k).unwrap().fixed_space_dim, l - 1);
                assert_eq!(
                    fold_cyclic(&r, l).unwrap().fixed_space_dim,
                    fold_cyclic(&r, k).unwrap().torus_rank
                );
            }
        }
    }

    #[test]
    fn barycenter_of_a2() {
        let a2 = rs("A2");
        let b = barycenter(&a2, &[0, 1, 2]);
        assert_eq!(b, RationalVector::from_fracs(&[(1, 3), (1, 3)]));
        let gen = center_weyl_element(&a2, CenterElement::new(&a2, 1).unwrap());
        assert_eq!(linear_fixed_space(&gen).len(), 0);
        assert_eq!(center_order(&a2, CenterElement::new(&a2, 2).unwrap()), 3);
    }
}
