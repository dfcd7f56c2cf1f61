//! Root subsystems `Φ(x̄)` of centralizers, Dynkin-type recognition, and
//! the lattice data (`π1` of the derived group, component groups) attached
//! to a commuting tuple of torus elements.

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlat::{self, FiniteAbelianGroup, IntegerLattice};
use crate::linalg::{self, IntMatrix, Rational};
use crate::rootsys::{Family, RationalVector, RootSystem, SimpleType};
use crate::weyl::{self, Caps, Walls};

/// A connected component of a recognized Cartan matrix: its type and the
/// input indices listed in Bourbaki order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub simple_type: SimpleType,
    pub nodes: Vec<usize>,
}

fn components_of(m: &IntMatrix) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && m[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Walks a path graph from endpoint `start`.
fn walk_path(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

fn recognize(m: &IntMatrix, nodes: &[usize]) -> Result<Component> {
    let r = nodes.len();
    let bad = |why: &str| Error::NotCartan(format!("component {nodes:?}: {why}"));
    let local = |a: usize, b: usize| m[nodes[a]][nodes[b]];
    let adj: Vec<Vec<usize>> = (0..r)
        .map(|i| (0..r).filter(|&j| j != i && local(i, j) != 0).collect())
        .collect();
    let edge_count: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if edge_count + 1 != r {
        return Err(bad("diagram contains a cycle"));
    }
    let bond = |i: usize, j: usize| local(i, j) * local(j, i);
    let multi: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| adj[i].iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
        .filter(|&(i, j)| bond(i, j) > 1)
        .collect();
    let max_deg = adj.iter().map(Vec::len).max().unwrap_or(0);
    let ends: Vec<usize> = (0..r).filter(|&i| adj[i].len() <= 1).collect();

    let (family, order) = if r == 1 {
        (Family::A, vec![0])
    } else if multi.len() > 1 {
        return Err(bad("more than one multiple bond"));
    } else if let Some(&(i, j)) = multi.first() {
        if max_deg > 2 {
            return Err(bad("branched diagram with a multiple bond"));
        }
        // the long end of a bond has entry -2 / -3 towards the short end
        let (long, short) = if local(i, j) < -1 { (i, j) } else { (j, i) };
        match bond(i, j) {
            3 if r == 2 => (Family::G, vec![short, long]),
            3 => return Err(bad("triple bond outside G2")),
            2 if adj[short].len() == 1 => (Family::B, walk_path(&adj, *ends.iter().find(|&&e| e != short).unwrap())),
            2 if adj[long].len() == 1 => (Family::C, walk_path(&adj, *ends.iter().find(|&&e| e != long).unwrap())),
            2 if r == 4 => {
                let p = walk_path(&adj, ends[0]);
                if local(p[1], p[2]) < -1 {
                    (Family::F, p)
                } else {
                    (Family::F, p.into_iter().rev().collect())
                }
            }
            _ => return Err(bad("invalid multiple bond")),
        }
    } else if max_deg <= 2 {
        (Family::A, walk_path(&adj, ends[0]))
    } else {
        let centers: Vec<usize> = (0..r).filter(|&i| adj[i].len() >= 3).collect();
        if centers.len() > 1 || adj[centers[0]].len() > 3 {
            return Err(bad("not a finite-type diagram"));
        }
        let c = centers[0];
        let mut arms: Vec<Vec<usize>> = adj[c]
            .iter()
            .map(|&s| {
                let mut arm = vec![s];
                let mut prev = c;
                let mut cur = s;
                while let Some(&nx) = adj[cur].iter().find(|&&x| x != prev) {
                    arm.push(nx);
                    prev = cur;
                    cur = nx;
                }
                arm
            })
            .collect();
        arms.sort_by_key(|a| (a.len(), a[0]));
        let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
        match lens.as_slice() {
            [1, 1, _] => {
                let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
                order.push(c);
                order.push(arms[0][0]);
                order.push(arms[1][0]);
                (Family::D, order)
            }
            [1, 2, s] if (2..=4).contains(s) => {
                let mut order = vec![arms[1][1], arms[0][0], arms[1][0], c];
                order.extend(&arms[2]);
                (Family::E, order)
            }
            _ => return Err(bad("not a finite-type diagram")),
        }
    };
    let t = SimpleType::new(family, r)?;
    // the recognized labelling must reproduce the reference matrix exactly
    let reference = RootSystem::build(t);
    let cref = reference.cartan();
    for a in 0..r {
        for b in 0..r {
            if local(order[a], order[b]) != cref[a][b] {
                return Err(bad(&format!("entries do not match {t}")));
            }
        }
    }
    Ok(Component {
        simple_type: t,
        nodes: order.into_iter().map(|i| nodes[i]).collect(),
    })
}

/// Decomposes a Cartan matrix into connected components and recognizes
/// each one, returning node orders compatible with the Bourbaki labels.
pub fn classify_components(m: &IntMatrix) -> Result<Vec<Component>> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotCartan("matrix is not square".into()));
        }
        if row[i] != 2 {
            return Err(Error::NotCartan(format!("diagonal entry {i} is {}", row[i])));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if row[j] > 0 || (row[j] == 0) != (m[j][i] == 0) || row[j] * m[j][i] > 3 {
                return Err(Error::NotCartan(format!("invalid off-diagonal pair at ({i}, {j})")));
            }
        }
    }
    components_of(m).iter().map(|c| recognize(m, c)).collect()
}

/// Multiset of simple types of a Cartan matrix, sorted.
pub fn classify_cartan(m: &IntMatrix) -> Result<Vec<SimpleType>> {
    let mut types: Vec<SimpleType> = classify_components(m)?.into_iter().map(|c| c.simple_type).collect();
    types.sort();
    Ok(types)
}

/// Formats a factor multiset as `A1xA1`, or `T` for the empty product.
pub fn format_factors(factors: &[SimpleType]) -> String {
    if factors.is_empty() {
        return "T".into();
    }
    factors.iter().map(ToString::to_string).collect::<Vec<_>>().join("x")
}

/// Exact value of the generic functional `Σ a_i ε^i` with `ε = 1/N`.
fn generic_value(root: &[i64], big_n: i64) -> Rational {
    let eps = Rational::new(1, big_n);
    let mut pow = Rational::from_integer(1);
    let mut acc = Rational::zero();
    for &a in root {
        acc += pow * a;
        pow *= eps;
    }
    acc
}

/// A closed root subsystem of an ambient root system, with a base ordered
/// component by component in Bourbaki order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsystemDescriptor {
    pub factors: Vec<SimpleType>,
    pub ambient_rank: usize,
    pub rank: usize,
    pub base: Vec<Vec<i64>>,
    pub root_count: usize,
    #[serde(skip)]
    roots: Vec<usize>,
    #[serde(skip)]
    components: Vec<SimpleType>,
}

impl SubsystemDescriptor {
    /// Builds the descriptor of the subsystem formed by the given roots
    /// (indices into `rs.roots()`), which must be a root subsystem.
    pub fn from_roots(rs: &RootSystem, mut roots: Vec<usize>) -> Result<Self> {
        roots.sort_unstable();
        roots.dedup();
        let big_n = 1 + rs
            .roots()
            .iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<i64>())
            .max()
            .unwrap_or(0);
        let positive: Vec<&Vec<i64>> = roots
            .iter()
            .map(|&i| &rs.roots()[i])
            .filter(|r| generic_value(r, big_n).is_positive())
            .collect();
        let pos_set: HashSet<&Vec<i64>> = positive.iter().copied().collect();
        let simple: Vec<Vec<i64>> = positive
            .iter()
            .filter(|r| {
                !positive.iter().any(|a| {
                    let diff: Vec<i64> = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                    pos_set.contains(&diff)
                })
            })
            .map(|r| (*r).clone())
            .collect();
        let k = simple.len();
        let cartan: IntMatrix = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| 2 * rs.inner(&simple[i], &simple[j]) / rs.inner(&simple[j], &simple[j]))
                    .collect()
            })
            .collect();
        let mut comps = classify_components(&cartan)?;
        comps.sort_by(|a, b| {
            (a.simple_type, simple[a.nodes[0]].clone()).cmp(&(b.simple_type, simple[b.nodes[0]].clone()))
        });
        let base: Vec<Vec<i64>> = comps
            .iter()
            .flat_map(|c| c.nodes.iter().map(|&i| simple[i].clone()))
            .collect();
        let components: Vec<SimpleType> = comps.iter().map(|c| c.simple_type).collect();
        let mut factors = components.clone();
        factors.sort();
        if 2 * positive.len() != roots.len() {
            return Err(Error::InvalidInput("root set is not symmetric".into()));
        }
        let expected: usize = factors.iter().map(|t| t.root_count()).sum();
        if expected != roots.len() {
            return Err(Error::InvalidInput("root set is not a root subsystem".into()));
        }
        Ok(SubsystemDescriptor {
            factors,
            ambient_rank: rs.rank(),
            rank: k,
            base,
            root_count: roots.len(),
            roots,
            components,
        })
    }

    /// The whole root system.
    pub fn full(rs: &RootSystem) -> Self {
        Self::from_roots(rs, (0..rs.roots().len()).collect()).expect("Φ is a root subsystem of itself")
    }

    /// Roots of `self` taking integral values on every point.
    pub fn restrict(&self, rs: &RootSystem, points: &[RationalVector]) -> Result<Self> {
        let roots = self
            .roots
            .iter()
            .copied()
            .filter(|&i| points.iter().all(|p| rs.pair(&rs.roots()[i], p).is_integer()))
            .collect();
        Self::from_roots(rs, roots)
    }

    /// Indices of the roots into the ambient root list.
    pub fn root_indices(&self) -> &[usize] {
        &self.roots
    }

    pub fn root_set(&self) -> BTreeSet<usize> {
        self.roots.iter().copied().collect()
    }

    pub fn torus_rank(&self) -> usize {
        self.ambient_rank - self.rank
    }

    pub fn is_abelian(&self) -> bool {
        self.rank == 0
    }

    pub fn weyl_order(&self) -> u128 {
        self.factors.iter().map(|t| t.weyl_order()).product()
    }

    /// Components in base order, each with its slice of the base.
    pub fn components(&self) -> Vec<(SimpleType, &[Vec<i64>])> {
        let mut out = Vec::new();
        let mut start = 0;
        for &t in &self.components {
            out.push((t, &self.base[start..start + t.rank()]));
            start += t.rank();
        }
        out
    }

    /// Highest root of each component: `Σ m_i β_i` with the marks of its type.
    pub fn highest_roots(&self) -> Vec<Vec<i64>> {
        self.components()
            .into_iter()
            .map(|(t, base)| {
                let marks = RootSystem::build(t).marks().to_vec();
                let n = self.ambient_rank;
                (0..n)
                    .map(|k| base.iter().zip(&marks).map(|(b, m)| b[k] * m).sum())
                    .collect()
            })
            .collect()
    }

    /// Walls of the product alcove of the subsystem.
    pub fn walls(&self, rs: &RootSystem) -> Walls {
        let with_coroot = |r: &Vec<i64>| (r.clone(), rs.coroot_of_vector(r));
        Walls {
            simple: self.base.iter().map(with_coroot).collect(),
            highest: self.highest_roots().iter().map(with_coroot).collect(),
        }
    }

    /// Coroots of the base, in coweight coordinates.
    pub fn base_coroots(&self, rs: &RootSystem) -> IntMatrix {
        self.base.iter().map(|b| rs.coroot_of_vector(b)).collect()
    }

    /// `Q∨(Φ')`, spanned by the coroots of the base.
    pub fn coroot_lattice(&self, rs: &RootSystem) -> IntegerLattice {
        IntegerLattice::new(self.base_coroots(rs), rs.rank()).expect("coroots of a base are independent")
    }

    /// Reflections in the base roots, acting on coweight coordinates.
    pub fn reflection_matrices(&self, rs: &RootSystem) -> Vec<IntMatrix> {
        self.base
            .iter()
            .map(|b| weyl::WeylElement::root_reflection(b, &rs.coroot_of_vector(b)).matrix)
            .collect()
    }

    /// Every element of `W(Φ')` as a coweight-coordinate matrix.
    pub fn weyl_group(&self, rs: &RootSystem, caps: &Caps) -> Result<Vec<IntMatrix>> {
        let order = self.weyl_order();
        if order > caps.weyl {
            return Err(Error::CapExceeded {
                what: "subsystem Weyl group enumeration",
                needed: order,
                cap: caps.weyl,
            });
        }
        weyl::generate_group(&self.reflection_matrices(rs), rs.rank(), caps.weyl)
    }

    pub fn label(&self) -> String {
        let mut s = format_factors(&self.factors);
        if self.torus_rank() > 0 && !self.factors.is_empty() {
            s.push_str(&format!("xT{}", self.torus_rank()));
        } else if self.factors.is_empty() {
            s = format!("T{}", self.torus_rank());
        }
        s
    }
}

fn check_points(rs: &RootSystem, points: &[RationalVector]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidInput("tuple must contain at least one point".into()));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != rs.rank()) {
        return Err(Error::InvalidInput(format!(
            "point {p} has {} coordinates, rank is {}",
            p.dim(),
            rs.rank()
        )));
    }
    Ok(())
}

/// `Φ(x̄) = {a ∈ Φ : a(x_j) ∈ Z for all j}`.
pub fn annihilator_subsystem(rs: &RootSystem, tuple: &[RationalVector]) -> Result<SubsystemDescriptor> {
    check_points(rs, tuple)?;
    SubsystemDescriptor::full(rs).restrict(rs, tuple)
}

fn validate_kept(rs: &RootSystem, kept: &[usize]) -> Result<BTreeSet<usize>> {
    let set: BTreeSet<usize> = kept.iter().copied().collect();
    if let Some(&bad) = set.iter().find(|&&i| i > rs.rank()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            rank: rs.rank(),
        });
    }
    if !set.contains(&0) {
        return Err(Error::InvalidInput("kept set must contain the extended node 0".into()));
    }
    if set.len() == rs.rank() + 1 {
        return Err(Error::InvalidInput("kept set must omit at least one node".into()));
    }
    Ok(set)
}

/// `Z/gcd{g_i : i removed}` for a kept set of extended nodes containing `ã`.
pub fn pi1_gcd(rs: &RootSystem, kept: &[usize]) -> Result<FiniteAbelianGroup> {
    let set = validate_kept(rs, kept)?;
    let g = (1..=rs.rank())
        .filter(|i| !set.contains(i))
        .fold(0i64, |acc, i| acc.gcd(&rs.comarks()[i - 1]));
    Ok(FiniteAbelianGroup::cyclic(g as u64))
}

/// Same group computed as `(Q∨ ∩ span Q∨(kept)) / Q∨(kept)` by Smith form.
pub fn pi1_saturation(rs: &RootSystem, kept: &[usize]) -> Result<FiniteAbelianGroup> {
    let set = validate_kept(rs, kept)?;
    let gens: IntMatrix = set
        .iter()
        .map(|&i| {
            if i == 0 {
                rs.highest_coroot().iter().map(|x| -x).collect()
            } else {
                rs.cartan().iter().map(|row| row[i - 1]).collect()
            }
        })
        .collect();
    let sub = IntegerLattice::from_generators(&gens, rs.rank());
    intlat::saturation_quotient(&intlat::coroot_lattice(rs), &sub)
}

/// Extended nodes whose walls contain the alcove point `t`.
pub fn walls_containing(rs: &RootSystem, t: &RationalVector) -> Vec<usize> {
    let mut out = Vec::new();
    if rs.pair(rs.marks(), t) == Rational::from_integer(1) {
        out.push(0);
    }
    out.extend((1..=rs.rank()).filter(|&i| t.0[i - 1].is_zero()));
    out
}

/// `π1` of the derived group of `Z(x)` for an alcove point: the gcd formula
/// when `ã` touches `x`, trivial otherwise (the subsystem is then spanned by
/// simple roots and `Q∨(x)` is saturated).
pub fn pi1_of_alcove_point(rs: &RootSystem, t: &RationalVector) -> Result<FiniteAbelianGroup> {
    let kept = walls_containing(rs, t);
    if kept.first() == Some(&0) {
        pi1_gcd(rs, &kept)
    } else {
        Ok(FiniteAbelianGroup::trivial())
    }
}

/// `Q∨ ∩ span Q∨(Φ')`.
pub fn saturated_lattice(rs: &RootSystem, sub: &SubsystemDescriptor) -> Result<IntegerLattice> {
    Ok(intlat::quotient_presentation(&intlat::coroot_lattice(rs), &sub.coroot_lattice(rs))?.saturation)
}

fn in_lattice(l: &IntegerLattice, v: &[Rational]) -> bool {
    l.coordinates(v).is_some_and(|c| linalg::is_integral(&c))
}

/// Elements `c ∈ L/Q∨(Φ')` whose translation `λ_c` carries the tuple to a
/// `W_aff(Φ')`-equivalent tuple, one Weyl element witnessing all points at
/// once. Coefficient vectors are relative to the returned generator orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentGroup {
    pub group: FiniteAbelianGroup,
    pub ambient_orders: Vec<u64>,
    pub elements: Vec<Vec<u64>>,
}

pub fn component_group(
    rs: &RootSystem,
    ambient: &SubsystemDescriptor,
    lattice: &IntegerLattice,
    tuple: &[RationalVector],
    caps: &Caps,
) -> Result<ComponentGroup> {
    check_points(rs, tuple)?;
    let q = ambient.coroot_lattice(rs);
    if lattice.dim() != rs.rank() || lattice.rank() > q.rank() {
        return Err(Error::Lattice("L must lie in the span of the subsystem coroots".into()));
    }
    let pres = intlat::quotient_presentation(lattice, &q)
        .map_err(|_| Error::Lattice("L must contain the subsystem coroot lattice".into()))?;
    let ambient_orders = pres.orders();
    let candidates = pres.elements();
    let walls = ambient.walls(rs);

    let shifted = |p: &RationalVector, lam: &[i64]| p + &RationalVector::from_ints(lam);
    let elements: Vec<Vec<u64>> = if tuple.len() == 1 {
        let p = &tuple[0];
        let home = walls.reduce(p).0;
        candidates
            .into_iter()
            .filter(|(_, lam)| walls.reduce(&shifted(p, lam)).0 == home)
            .map(|(c, _)| c)
            .collect()
    } else {
        let group = ambient.weyl_group(rs, caps)?;
        candidates
            .into_iter()
            .filter(|(_, lam)| {
                group.iter().any(|w| {
                    tuple.iter().all(|p| {
                        let wp = RationalVector(linalg::mat_vec_rat(w, &p.0));
                        let diff = &(&wp - p) - &RationalVector::from_ints(lam);
                        in_lattice(&q, &diff.0)
                    })
                })
            })
            .map(|(c, _)| c)
            .collect()
    };
    Ok(ComponentGroup {
        group: FiniteAbelianGroup::from_subgroup_elements(&ambient_orders, &elements),
        ambient_orders,
        elements,
    })
}

/// Diagnostics for one element of the tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageLog {
    pub stage: usize,
    pub point: RationalVector,
    pub factors: Vec<SimpleType>,
    pub torus_rank: usize,
    /// `L_j / Q∨(Φ_j)`, the `π1` of the new derived group.
    pub lattice_quotient: FiniteAbelianGroup,
    /// Stabilizer in `L_{j-1}/Q∨(Φ_{j-1})` of the new point.
    pub component_group: FiniteAbelianGroup,
    /// `#{w ∈ W(Φ_{j-1}) : w x - x ∈ L_{j-1}} / |W(Φ_j)|`, when the group fits
    /// under the cap.
    pub quotient_reading: Option<u64>,
    pub discrepancy: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerDescriptor {
    pub subsystem: SubsystemDescriptor,
    pub torus_rank: usize,
    pub component_group: FiniteAbelianGroup,
    pub lattice_quotient: FiniteAbelianGroup,
    pub stages: Vec<StageLog>,
}

fn quotient_reading(
    rs: &RootSystem,
    ambient: &SubsystemDescriptor,
    lattice: &IntegerLattice,
    next: &SubsystemDescriptor,
    x: &RationalVector,
    caps: &Caps,
) -> Option<u64> {
    let group = ambient.weyl_group(rs, caps).ok()?;
    let hits = group
        .iter()
        .filter(|w| {
            let wx = RationalVector(linalg::mat_vec_rat(w, &x.0));
            in_lattice(lattice, &(&wx - x).0)
        })
        .count() as u128;
    let denom = next.weyl_order();
    hits.is_multiple_of(denom).then(|| (hits / denom) as u64)
}

/// Processes the tuple one element at a time: stage `j` works inside
/// `(Φ_{j-1}, L_{j-1})`, with `Φ_0 = Φ`, `L_0 = Q∨` and
/// `L_j = Q∨ ∩ span Q∨(Φ_j)`. The reported component group is that of the
/// last stage.
pub fn centralizer_tuple(rs: &RootSystem, tuple: &[RationalVector], caps: &Caps) -> Result<CentralizerDescriptor> {
    check_points(rs, tuple)?;
    let mut ambient = SubsystemDescriptor::full(rs);
    let mut lattice = intlat::coroot_lattice(rs);
    let mut stages = Vec::with_capacity(tuple.len());
    for (j, x) in tuple.iter().enumerate() {
        let next = ambient.restrict(rs, std::slice::from_ref(x))?;
        let comp = component_group(rs, &ambient, &lattice, std::slice::from_ref(x), caps)?.group;
        let reading = quotient_reading(rs, &ambient, &lattice, &next, x, caps);
        let next_lattice = saturated_lattice(rs, &next)?;
        let lattice_quotient = intlat::saturation_quotient(&next_lattice, &next.coroot_lattice(rs))?;
        stages.push(StageLog {
            stage: j + 1,
            point: x.clone(),
            factors: next.factors.clone(),
            torus_rank: next.torus_rank(),
            lattice_quotient,
            discrepancy: reading.is_some_and(|r| r != comp.order()),
            quotient_reading: reading,
            component_group: comp,
        });
        ambient = next;
        lattice = next_lattice;
    }
    let last = stages.last().expect("nonempty tuple");
    Ok(CentralizerDescriptor {
        torus_rank: ambient.torus_rank(),
        component_group: last.component_group.clone(),
        lattice_quotient: last.lattice_quotient.clone(),
        subsystem: ambient,
        stages,
    })
}

/// `|{w ∈ W : w x ≡ x mod Q∨}|`, the torus stabilizer order.
pub fn torus_stabilizer_order(rs: &RootSystem, x: &RationalVector, caps: &Caps) -> Result<usize> {
    let w = weyl::WeylGroup::enumerate(rs, caps)?;
    Ok(
        w.stabilizer_indices(rs, std::slice::from_ref(x), crate::Exec::Sequential)
            .len(),
    )
}
