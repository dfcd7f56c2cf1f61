//! Borel–de Siebenthal subsystems, the finite list of centralizer types of
//! single elements, and the longest irredundant centralizer chain.
//!
//! Faces of a (product) alcove are named by their vertex sets: one nonempty
//! subset of `{0, …, k}` per simple factor. The face with vertex set `V`
//! lies on the walls `i ∉ V`, so the centralizer of its barycenter is
//! generated by those extended nodes.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::centralizer::{self, CentralizerDescriptor, SubsystemDescriptor};
use crate::diagram;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::intlat::{self, FiniteAbelianGroup};
use crate::linalg::{self, IntMatrix, Rational};
use crate::rootsys::{RationalVector, RootSystem, SimpleType};
use crate::weyl::Caps;

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `(factors, L/Q∨(Φ'))`: the deduplication key for subsystems.
pub type SubsystemKey = (Vec<SimpleType>, FiniteAbelianGroup);

pub fn subsystem_key(rs: &RootSystem, sub: &SubsystemDescriptor) -> Result<SubsystemKey> {
    let sat = centralizer::saturated_lattice(rs, sub)?;
    Ok((
        sub.factors.clone(),
        intlat::saturation_quotient(&sat, &sub.coroot_lattice(rs))?,
    ))
}

/// Prescribed values `β(t)` on the base of `sub` at the barycenter of a
/// product face, solved for a point `t`.
pub fn face_point(rs: &RootSystem, sub: &SubsystemDescriptor, face: &[Vec<usize>]) -> RationalVector {
    let mut values = Vec::with_capacity(sub.rank);
    for ((t, _), verts) in sub.components().iter().zip(face) {
        let marks = RootSystem::build(*t).marks().to_vec();
        let inv = Rational::new(1, verts.len() as i64);
        for i in 1..=t.rank() {
            let hit = if verts.contains(&i) {
                Rational::new(1, marks[i - 1])
            } else {
                Rational::from_integer(0)
            };
            values.push(hit * inv);
        }
    }
    if sub.rank == 0 {
        return RationalVector::zero(rs.rank());
    }
    let a: Vec<Vec<Rational>> = sub
        .base
        .iter()
        .map(|b| b.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect();
    RationalVector(linalg::solve(&a, &values).expect("base roots are independent"))
}

/// Vertex `i` of factor `component`, every other factor at its origin.
pub fn vertex_point(rs: &RootSystem, sub: &SubsystemDescriptor, component: usize, i: usize) -> RationalVector {
    let face: Vec<Vec<usize>> = (0..sub.components().len())
        .map(|c| if c == component { vec![i] } else { vec![0] })
        .collect();
    face_point(rs, sub, &face)
}

/// Maximal-rank maximal subsystems: delete one node of prime mark from the
/// extended diagram. Types with no such node (all marks 1) have no proper
/// maximal-rank closed subsystem and return the whole system.
pub fn bds_maximal(rs: &RootSystem) -> Result<Vec<SubsystemDescriptor>> {
    let full = SubsystemDescriptor::full(rs);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in 1..=rs.rank() {
        if !is_prime(rs.marks()[i - 1]) {
            continue;
        }
        let sub = full.restrict(rs, &[rs.alcove_vertex(i)])?;
        if seen.insert(subsystem_key(rs, &sub)?) {
            out.push(sub);
        }
    }
    if out.is_empty() {
        out.push(full);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct BdsNode {
    pub subsystem: SubsystemDescriptor,
    pub lattice_quotient: FiniteAbelianGroup,
    pub parent: Option<usize>,
    /// `(factor index, extended node)` deleted from the parent.
    pub deleted: Option<(usize, usize)>,
    pub depth: usize,
}

/// Every subsystem reachable by repeated prime-mark deletion in the
/// extended diagram of some factor, deduplicated by [`SubsystemKey`].
pub fn bds_all(rs: &RootSystem) -> Result<Vec<BdsNode>> {
    let full = SubsystemDescriptor::full(rs);
    let mut seen = BTreeSet::from([subsystem_key(rs, &full)?]);
    let mut out = vec![BdsNode {
        lattice_quotient: FiniteAbelianGroup::trivial(),
        subsystem: full,
        parent: None,
        deleted: None,
        depth: 0,
    }];
    let mut k = 0;
    while k < out.len() {
        let node = out[k].subsystem.clone();
        for (c, (t, _)) in node.components().iter().enumerate() {
            let marks = RootSystem::build(*t).marks().to_vec();
            for i in 1..=t.rank() {
                if !is_prime(marks[i - 1]) {
                    continue;
                }
                let sub = node.restrict(rs, &[vertex_point(rs, &node, c, i)])?;
                let key = subsystem_key(rs, &sub)?;
                if seen.insert(key.clone()) {
                    out.push(BdsNode {
                        subsystem: sub,
                        lattice_quotient: key.1,
                        parent: Some(k),
                        deleted: Some((c, i)),
                        depth: out[k].depth + 1,
                    });
                }
            }
        }
        k += 1;
    }
    Ok(out)
}

/// One face of the alcove with the centralizer of its barycenter.
#[derive(Debug, Clone, Serialize)]
pub struct CentralizerType {
    pub label: String,
    /// Vertex set of a face realizing the type.
    pub vertices: Vec<usize>,
    pub point: RationalVector,
    pub descriptor: CentralizerDescriptor,
}

/// The centralizer types of single elements: one per alcove face, merged by
/// `(factors, torus rank)`, in order of decreasing subsystem size.
pub fn centralizer_types(rs: &RootSystem, caps: &Caps) -> Result<Vec<CentralizerType>> {
    let n = rs.rank();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut faces: Vec<Vec<usize>> = (1u32..1 << (n + 1))
        .map(|mask| (0..=n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    faces.sort_by_key(|v: &Vec<usize>| (v.len(), v.clone()));
    for verts in faces {
        let point = diagram::barycenter(rs, &verts);
        let descriptor = centralizer::centralizer_tuple(rs, std::slice::from_ref(&point), caps)?;
        let key = (descriptor.subsystem.factors.clone(), descriptor.torus_rank);
        if seen.insert(key) {
            out.push(CentralizerType {
                label: descriptor.subsystem.label(),
                vertices: verts,
                point,
                descriptor,
            });
        }
    }
    Ok(out)
}

/// All points of the closed alcove whose coordinates have denominators
/// dividing some `d ≤ max_den`.
pub fn alcove_points(rs: &RootSystem, max_den: i64) -> Vec<RationalVector> {
    fn fill(marks: &[i64], d: i64, room: i64, cur: &mut Vec<i64>, out: &mut BTreeSet<RationalVector>) {
        if cur.len() == marks.len() {
            out.insert(RationalVector(cur.iter().map(|&c| Rational::new(c, d)).collect()));
            return;
        }
        let m = marks[cur.len()];
        for c in 0..=room / m {
            cur.push(c);
            fill(marks, d, room - c * m, cur, out);
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    for d in 1..=max_den {
        fill(rs.marks(), d, d, &mut Vec::new(), &mut out);
    }
    out.into_iter().collect()
}

/// `(factors, torus rank)` of the centralizer of every alcove point with
/// denominator at most `max_den`.
pub fn sweep_types(rs: &RootSystem, max_den: i64, exec: Exec) -> Result<BTreeSet<(Vec<SimpleType>, usize)>> {
    let pts = alcove_points(rs, max_den);
    let found = exec.map(&pts, |p| {
        centralizer::annihilator_subsystem(rs, std::slice::from_ref(p)).map(|s| (s.factors.clone(), s.torus_rank()))
    });
    found.into_iter().collect()
}

/// How a factor's face relates to the chain-search restrictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum FaceKind {
    Vertex,
    SpecialEdge,
    Other,
}

#[derive(Debug, Clone)]
struct FaceType {
    vertices: Vec<usize>,
    factors: Vec<SimpleType>,
    kind: FaceKind,
    same: bool,
}

/// Faces of the alcove of a simple type, with the factors of the subsystem
/// on the walls through each face (read off the extended Cartan matrix).
fn face_table(t: SimpleType) -> Vec<FaceType> {
    let rs = RootSystem::build(t);
    let ed = diagram::extended_diagram(&rs);
    let n = t.rank();
    let marks = ed.marks();
    let mut out = Vec::new();
    for mask in 1u32..1 << (n + 1) {
        let verts: Vec<usize> = (0..=n).filter(|i| mask & (1 << i) != 0).collect();
        let kept: Vec<usize> = (0..=n).filter(|i| mask & (1 << i) == 0).collect();
        let sub: IntMatrix = kept
            .iter()
            .map(|&i| kept.iter().map(|&j| ed.cartan()[i][j]).collect())
            .collect();
        let factors = centralizer::classify_cartan(&sub).expect("proper subdiagrams have finite type");
        let kind = match verts.as_slice() {
            [_] => FaceKind::Vertex,
            [a, b] if marks[*a] == 1 && marks[*b] == 1 => FaceKind::SpecialEdge,
            _ => FaceKind::Other,
        };
        let same = factors.len() == 1 && factors[0].rank() == n && factors[0].root_count() == t.root_count();
        out.push(FaceType {
            vertices: verts,
            factors,
            kind,
            same,
        });
    }
    out
}

/// Chain-search flavour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceRule {
    /// Every face of the product alcove.
    AllFaces,
    /// Vertices, plus at most one factor moving to an edge between two
    /// central vertices.
    VerticesAndCentralEdges,
}

struct ChainSearch {
    rule: FaceRule,
    tables: HashMap<SimpleType, Vec<FaceType>>,
    memo: HashMap<Vec<SimpleType>, usize>,
}

impl ChainSearch {
    fn new(rule: FaceRule) -> Self {
        ChainSearch {
            rule,
            tables: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn table(&mut self, t: SimpleType) -> &Vec<FaceType> {
        self.tables.entry(t).or_insert_with(|| face_table(t))
    }

    /// Per-factor options, one representative per distinct outcome.
    fn options(&mut self, t: SimpleType) -> Vec<FaceType> {
        let rule = self.rule;
        let mut seen = BTreeSet::new();
        self.table(t)
            .iter()
            .filter(|f| rule == FaceRule::AllFaces || f.kind != FaceKind::Other)
            .filter(|f| {
                seen.insert((
                    f.factors.clone(),
                    f.kind == FaceKind::SpecialEdge && rule != FaceRule::AllFaces,
                ))
            })
            .cloned()
            .collect()
    }

    /// Visits every admissible product choice that changes the subsystem.
    fn for_each_choice(&mut self, factors: &[SimpleType], mut f: impl FnMut(&[&FaceType], Vec<SimpleType>)) {
        let opts: Vec<Vec<FaceType>> = factors.iter().map(|&t| self.options(t)).collect();
        let mut idx = vec![0usize; factors.len()];
        loop {
            let choice: Vec<&FaceType> = idx.iter().enumerate().map(|(c, &i)| &opts[c][i]).collect();
            let edges = choice.iter().filter(|x| x.kind == FaceKind::SpecialEdge).count();
            let allowed = self.rule == FaceRule::AllFaces || edges <= 1;
            if allowed && !choice.iter().all(|x| x.same) {
                let mut next: Vec<SimpleType> = choice.iter().flat_map(|x| x.factors.iter().copied()).collect();
                next.sort();
                f(&choice, next);
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < opts[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                return;
            }
        }
    }

    fn m(&mut self, factors: &[SimpleType]) -> usize {
        if factors.is_empty() {
            return 0;
        }
        if let Some(&v) = self.memo.get(factors) {
            return v;
        }
        let mut children = Vec::new();
        self.for_each_choice(factors, |_, next| children.push(next));
        children.sort();
        children.dedup();
        let best = children.iter().map(|c| self.m(c)).max().map_or(0, |b| b + 1);
        self.memo.insert(factors.to_vec(), best);
        best
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainNode {
    pub depth: usize,
    pub label: String,
    /// The new tuple element; `None` for a final step taken inside a
    /// non-identity component, which no torus point represents.
    pub point: Option<RationalVector>,
    /// Vertex set chosen in each factor of the previous subsystem.
    pub face: Vec<Vec<usize>>,
    pub factors: Vec<SimpleType>,
    pub torus_rank: usize,
    pub component_group: FiniteAbelianGroup,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainBound {
    #[serde(rename = "type")]
    pub simple_type: SimpleType,
    pub m: usize,
    pub component_steps: bool,
    pub rule: FaceRule,
    pub witness: Vec<ChainNode>,
}

fn step_node(
    rs: &RootSystem,
    points: &[RationalVector],
    face: Vec<Vec<usize>>,
    caps: &Caps,
) -> Result<(ChainNode, SubsystemDescriptor)> {
    let d = centralizer::centralizer_tuple(rs, points, caps)?;
    Ok((
        ChainNode {
            depth: points.len(),
            label: d.subsystem.label(),
            point: points.last().cloned(),
            face,
            factors: d.subsystem.factors.clone(),
            torus_rank: d.torus_rank,
            component_group: d.component_group.clone(),
        },
        d.subsystem,
    ))
}

/// Maps per-factor face choices (given per canonical factor order) onto the
/// components of an actual subsystem, whose components may be listed in a
/// different order than its sorted factor multiset.
/// A vertex set per factor, tagged with the factor's type.
type FaceChoice = Vec<(SimpleType, Vec<usize>)>;

fn assign_faces(sub: &SubsystemDescriptor, choice: &FaceChoice) -> Vec<Vec<usize>> {
    let mut pool: Vec<Option<&(SimpleType, Vec<usize>)>> = choice.iter().map(Some).collect();
    sub.components()
        .iter()
        .map(|(t, _)| {
            let slot = pool
                .iter_mut()
                .find(|p| p.is_some_and(|(u, _)| u == t))
                .expect("component types match the factor multiset");
            slot.take().unwrap().1.clone()
        })
        .collect()
}

/// `m(G)`: the longest chain `G = Z_0 ⊋ Z(x_1) ⊋ Z(x_1, x_2) ⊋ …` ending in
/// an abelian centralizer, found by memoized recursion over factor types,
/// with a witness chain of explicit face barycenters.
pub fn max_chain(rs: &RootSystem, rule: FaceRule, caps: &Caps) -> Result<ChainBound> {
    let mut search = ChainSearch::new(rule);
    let top = centralizer::classify_cartan(rs.cartan())?;
    let m = search.m(&top);

    let mut witness = Vec::new();
    let mut points: Vec<RationalVector> = Vec::new();
    let mut sub = SubsystemDescriptor::full(rs);
    let mut left = m;
    while !sub.is_abelian() {
        let mut pick: Option<FaceChoice> = None;
        let factors = sub.factors.clone();
        let mut children: Vec<(FaceChoice, Vec<SimpleType>)> = Vec::new();
        search.for_each_choice(&factors, |choice, next| {
            let c = choice
                .iter()
                .zip(&factors)
                .map(|(f, &t)| (t, f.vertices.clone()))
                .collect();
            children.push((c, next));
        });
        for (c, next) in children {
            if search.m(&next) + 1 == left {
                pick = Some(c);
                break;
            }
        }
        let choice = pick.ok_or_else(|| Error::InvalidInput("chain reconstruction failed".into()))?;
        let face = assign_faces(&sub, &choice);
        points.push(face_point(rs, &sub, &face));
        let (node, next) = step_node(rs, &points, face, caps)?;
        witness.push(node);
        sub = next;
        left -= 1;
    }
    debug_assert_eq!(left, 0);
    Ok(ChainBound {
        simple_type: rs.simple_type(),
        m,
        component_steps: false,
        rule,
        witness,
    })
}

type RootBits = [u64; 4];

/// Best value below a root subset and the face achieving it.
type ComponentMemo = HashMap<RootBits, (usize, Option<Vec<Vec<usize>>>)>;

fn root_bits(sub: &SubsystemDescriptor) -> RootBits {
    let mut b = [0u64; 4];
    for &i in sub.root_indices() {
        b[i / 64] |= 1 << (i % 64);
    }
    b
}

struct ComponentSearch<'a> {
    rs: &'a RootSystem,
    memo: ComponentMemo,
    /// Face evaluations left before giving up.
    budget: u128,
    spent: u128,
}

impl ComponentSearch<'_> {
    fn faces(sub: &SubsystemDescriptor) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for (t, _) in sub.components() {
            let k = t.rank();
            let subsets: Vec<Vec<usize>> = (1u32..1 << (k + 1))
                .map(|mask| (0..=k).filter(|i| mask & (1 << i) != 0).collect())
                .collect();
            out = out
                .into_iter()
                .flat_map(|f| {
                    subsets.iter().map(move |s| {
                        let mut g = f.clone();
                        g.push(s.clone());
                        g
                    })
                })
                .collect();
        }
        out
    }

    fn is_interior(sub: &SubsystemDescriptor, face: &[Vec<usize>]) -> bool {
        sub.components()
            .iter()
            .zip(face)
            .all(|((t, _), v)| v.len() == t.rank() + 1)
    }

    /// Longest chain below `sub`, where stepping to the interior barycenter
    /// counts twice when `L/Q∨(Φ')` is nontrivial: the barycenter is fixed
    /// by every element of that group, so the resulting centralizer is a
    /// torus extended by it, and one more element makes it finite abelian.
    fn m(&mut self, sub: &SubsystemDescriptor) -> Result<usize> {
        if sub.is_abelian() {
            return Ok(0);
        }
        let key = root_bits(sub);
        if let Some((v, _)) = self.memo.get(&key) {
            return Ok(*v);
        }
        let mut best = 0;
        let mut arg = None;
        for face in Self::faces(sub) {
            self.spent += 1;
            if self.spent > self.budget {
                return Err(Error::CapExceeded {
                    what: "component-step chain search (face evaluations)",
                    needed: self.spent,
                    cap: self.budget,
                });
            }
            let p = face_point(self.rs, sub, &face);
            let next = sub.restrict(self.rs, &[p])?;
            if next.root_count == sub.root_count {
                continue;
            }
            let val = if Self::is_interior(sub, &face) {
                let (_, q) = subsystem_key(self.rs, sub)?;
                1 + usize::from(!q.is_trivial())
            } else {
                1 + self.m(&next)?
            };
            if val > best {
                best = val;
                arg = Some(face);
            }
        }
        self.memo.insert(key, (best, arg));
        Ok(best)
    }
}

/// [`max_chain`] with a final step allowed inside a non-identity component.
/// Works on exact root subsets, so it is bounded by `budget` face
/// evaluations.
pub fn max_chain_with_components(rs: &RootSystem, caps: &Caps, budget: u128) -> Result<ChainBound> {
    let mut search = ComponentSearch {
        rs,
        memo: HashMap::new(),
        budget,
        spent: 0,
    };
    let full = SubsystemDescriptor::full(rs);
    let m = search.m(&full)?;
    let mut witness = Vec::new();
    let mut points = Vec::new();
    let mut sub = full;
    while !sub.is_abelian() {
        let face = search.memo[&root_bits(&sub)]
            .1
            .clone()
            .expect("nonabelian nodes have a best face");
        let interior = ComponentSearch::is_interior(&sub, &face);
        let q = subsystem_key(rs, &sub)?.1;
        points.push(face_point(rs, &sub, &face));
        let (node, next) = step_node(rs, &points, face, caps)?;
        witness.push(node);
        if interior && !q.is_trivial() {
            witness.push(ChainNode {
                depth: points.len() + 1,
                label: "finite".into(),
                point: None,
                face: Vec::new(),
                factors: Vec::new(),
                torus_rank: 0,
                component_group: q,
            });
        }
        sub = next;
    }
    Ok(ChainBound {
        simple_type: rs.simple_type(),
        m,
        component_steps: true,
        rule: FaceRule::AllFaces,
        witness,
    })
}

/// Default face-evaluation budget for [`max_chain_with_components`].
pub const COMPONENT_CHAIN_BUDGET: u128 = 300_000;
