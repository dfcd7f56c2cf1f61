//! Simple root systems of types A–G with their Cartan data.
//!
//! Node numbering follows the Bourbaki tables (Planches I–IX). Simple nodes
//! are numbered `1..=rank`; extended-diagram code uses `0` for the lowest
//! root `ã = -d`.
//!
//! Cartan convention: `cartan[i][j] = a_i(a_j∨)`, so column `j` holds the
//! coordinates of the coroot `a_j∨` in the fundamental-coweight basis.
//! Roots are integer vectors in the simple-root basis and points of the
//! Cartan subalgebra are [`RationalVector`]s in the fundamental-coweight
//! basis, so that `a(t)` is the plain dot product of the two.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, RatMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// Cartan–Killing type of a simple root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

/// Highest rank handled anywhere in the crate.
pub const MAX_RANK: usize = 8;

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let bad = |reason| {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                reason,
            })
        };
        if rank > MAX_RANK {
            return bad("supported ranks stop at 8");
        }
        match family {
            Family::A if rank < 1 => bad("A needs rank >= 1"),
            Family::B if rank < 2 => bad("B needs rank >= 2"),
            Family::C if rank < 2 => bad("C needs rank >= 2"),
            Family::D if rank < 3 => bad("D needs rank >= 3"),
            Family::E if !(6..=8).contains(&rank) => bad("E needs rank 6, 7 or 8"),
            Family::F if rank != 4 => bad("F needs rank 4"),
            Family::G if rank != 2 => bad("G needs rank 2"),
            _ => Ok(SimpleType { family, rank }),
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Every valid type with rank at most `max_rank` (capped at 8), in a
    /// fixed order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<SimpleType> {
        use Family::*;
        let mut out = Vec::new();
        for fam in [A, B, C, D, E, F, G] {
            for r in 1..=max_rank.min(MAX_RANK) {
                if let Ok(t) = SimpleType::new(fam, r) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// `|Φ|` from the closed formulas.
    pub fn root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    pub fn weyl_order(self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Order of `P∨/Q∨`, the determinant of the Cartan matrix.
    pub fn connection_index(self) -> i64 {
        match self.family {
            Family::A => self.rank as i64 + 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            Family::E => match self.rank {
                6 => 3,
                7 => 2,
                _ => 1,
            },
            Family::F | Family::G => 1,
        }
    }

    pub fn coxeter_number(self) -> i64 {
        let n = self.rank as i64;
        match self.family {
            Family::A => n + 1,
            Family::B | Family::C => 2 * n,
            Family::D => 2 * n - 2,
            Family::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Family::F => 12,
            Family::G => 6,
        }
    }

    pub fn dual_coxeter_number(self) -> i64 {
        let n = self.rank as i64;
        match self.family {
            Family::A => n + 1,
            Family::B => 2 * n - 1,
            Family::C => n + 1,
            Family::D => 2 * n - 2,
            Family::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Family::F => 9,
            Family::G => 4,
        }
    }

    /// Bourbaki Dynkin diagram: 0-based edges and squared root lengths.
    fn dynkin(self) -> (Vec<(usize, usize)>, Vec<i64>) {
        let n = self.rank;
        let path = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.family {
            Family::A => (path(n), vec![1; n]),
            Family::B => {
                let mut lens = vec![2; n];
                lens[n - 1] = 1;
                (path(n), lens)
            }
            Family::C => {
                let mut lens = vec![1; n];
                lens[n - 1] = 2;
                (path(n), lens)
            }
            Family::D => {
                let mut edges = path(n - 1);
                edges.push((n - 3, n - 1));
                (edges, vec![1; n])
            }
            Family::E => {
                let mut edges = vec![(0, 2), (1, 3)];
                edges.extend((2..n - 1).map(|i| (i, i + 1)));
                (edges, vec![1; n])
            }
            Family::F => (path(4), vec![2, 2, 1, 1]),
            Family::G => (path(2), vec![1, 3]),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::InvalidType(s.to_string()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(s.to_string()))?;
        SimpleType::new(fam, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Exact rational coordinates `c_i = a_i(t)` of a point `t` in the
/// fundamental-coweight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zero(n: usize) -> Self {
        RationalVector(vec![Rational::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_fracs(v: &[(i64, i64)]) -> Self {
        RationalVector(v.iter().map(|&(n, d)| Rational::new(n, d)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn scale(&self, k: Rational) -> Self {
        RationalVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn is_integral(&self) -> bool {
        linalg::is_integral(&self.0)
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> i64 {
        use num_integer::Integer;
        self.0.iter().fold(1, |acc, x| acc.lcm(x.denom()))
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses comma-separated exact fractions such as `1/3,0,-2/5`. Decimal
/// notation is rejected.
impl FromStr for RationalVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidInput(msg);
        let mut out = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(bad(format!("empty coordinate in {s:?}")));
            }
            if part.contains('.') || part.contains('e') || part.contains('E') {
                return Err(bad(format!(
                    "decimal coordinate {part:?}; use exact fractions like 1/3"
                )));
            }
            let (num, den) = match part.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (part, "1"),
            };
            let num: i64 = num
                .parse()
                .map_err(|_| bad(format!("cannot parse coordinate {part:?}")))?;
            let den: i64 = den
                .parse()
                .map_err(|_| bad(format!("cannot parse coordinate {part:?}")))?;
            if den == 0 {
                return Err(bad(format!("zero denominator in {part:?}")));
            }
            out.push(Rational::new(num, den));
        }
        Ok(RationalVector(out))
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }
}

/// Immutable root datum for one simple type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    simple_type: SimpleType,
    cartan: IntMatrix,
    /// Twice the invariant form on simple roots; only ratios matter.
    form: IntMatrix,
    cartan_inv: RatMatrix,
    /// Positive roots by increasing height, then their negatives in the same order.
    roots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
    coroots: Vec<Vec<i64>>,
    highest_root: usize,
    marks: Vec<i64>,
    comarks: Vec<i64>,
}

impl RootSystem {
    /// Builds the root system by closing the simple roots under simple
    /// reflections.
    pub fn build(t: SimpleType) -> RootSystem {
        let n = t.rank();
        let (edges, lens) = t.dynkin();
        let mut form = vec![vec![0i64; n]; n];
        for i in 0..n {
            form[i][i] = 2 * lens[i];
        }
        for &(i, j) in &edges {
            let v = -lens[i].max(lens[j]);
            form[i][j] = v;
            form[j][i] = v;
        }
        let cartan: IntMatrix = (0..n)
            .map(|i| (0..n).map(|j| 2 * form[i][j] / form[j][j]).collect())
            .collect();

        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for j in 0..n {
                let pairing: i64 = (0..n).map(|i| beta[i] * cartan[i][j]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut img = beta.clone();
                img[j] -= pairing;
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        positive.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let root_index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();

        let highest_root = positive.len() - 1;
        let marks = roots[highest_root].clone();
        let norm = |k: &[i64]| -> i64 {
            (0..n)
                .map(|i| (0..n).map(|j| k[i] * form[i][j] * k[j]).sum::<i64>())
                .sum()
        };
        let d_norm = norm(&marks);
        let comarks = (0..n)
            .map(|i| {
                let num = marks[i] * form[i][i];
                debug_assert_eq!(num % d_norm, 0);
                num / d_norm
            })
            .collect();

        let coroots = roots
            .iter()
            .map(|k| {
                let nk = norm(k);
                (0..n)
                    .map(|i| {
                        let fi: i64 = (0..n).map(|j| form[i][j] * k[j]).sum();
                        2 * fi / nk
                    })
                    .collect()
            })
            .collect();
        let cartan_inv = linalg::inverse(&linalg::to_rational(&cartan)).expect("Cartan matrix is nonsingular");

        RootSystem {
            simple_type: t,
            cartan,
            form,
            cartan_inv,
            roots,
            root_index,
            coroots,
            highest_root,
            marks,
            comarks,
        }
    }

    pub fn simple_type(&self) -> SimpleType {
        self.simple_type
    }

    pub fn rank(&self) -> usize {
        self.simple_type.rank()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Twice the invariant bilinear form on the simple roots.
    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    pub fn cartan_inverse(&self) -> &RatMatrix {
        &self.cartan_inv
    }

    /// All roots, positive first.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_count(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.positive_count()]
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    /// Coroot of root `idx` in coweight coordinates.
    pub fn coroot_of(&self, idx: usize) -> &[i64] {
        &self.coroots[idx]
    }

    /// The coroot of a root given by its simple-root coefficients.
    pub fn coroot_of_vector(&self, root: &[i64]) -> Vec<i64> {
        match self.root_index(root) {
            Some(i) => self.coroots[i].clone(),
            None => {
                let n = self.rank();
                let nk: i64 = (0..n)
                    .map(|i| (0..n).map(|j| root[i] * self.form[i][j] * root[j]).sum::<i64>())
                    .sum();
                (0..n)
                    .map(|i| {
                        let fi: i64 = (0..n).map(|j| self.form[i][j] * root[j]).sum();
                        2 * fi / nk
                    })
                    .collect()
            }
        }
    }

    /// Twice the invariant form between two roots in simple-root coordinates.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| a[i] * self.form[i][j] * b[j]).sum::<i64>())
            .sum()
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.roots[self.highest_root]
    }

    /// Coefficients of the highest root in the simple roots.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Coefficients of the highest coroot in the simple coroots.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    /// Highest coroot `d∨` in coweight coordinates.
    pub fn highest_coroot(&self) -> Vec<i64> {
        self.coroots[self.highest_root].clone()
    }

    /// `a(t)` for a root in simple-root coordinates.
    pub fn pair(&self, root: &[i64], t: &RationalVector) -> Rational {
        linalg::dot_int_rat(root, &t.0)
    }

    fn check_node(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.rank() {
            return Err(Error::IndexOutOfRange {
                index: j,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// `a_j∨` in the fundamental-coweight basis: column `j` of the Cartan matrix.
    pub fn coroot_in_coweight_basis(&self, j: usize) -> Result<RationalVector> {
        self.check_node(j)?;
        let col: Vec<i64> = self.cartan.iter().map(|row| row[j - 1]).collect();
        Ok(RationalVector::from_ints(&col))
    }

    /// `ϖ_j∨`, the `j`-th basis vector in coweight coordinates.
    pub fn fundamental_coweight(&self, j: usize) -> Result<RationalVector> {
        self.check_node(j)?;
        let mut v = RationalVector::zero(self.rank());
        v.0[j - 1] = Rational::from_integer(1);
        Ok(v)
    }

    /// Expresses a coweight-basis point in the simple-coroot basis.
    pub fn to_coroot_coords(&self, t: &RationalVector) -> Vec<Rational> {
        linalg::rat_mat_vec(&self.cartan_inv, &t.0)
    }

    /// Inverse of [`Self::to_coroot_coords`].
    pub fn from_coroot_coords(&self, q: &[Rational]) -> RationalVector {
        RationalVector(linalg::mat_vec_rat(&self.cartan, q))
    }

    /// True when `t` lies in the coroot lattice `Q∨`.
    pub fn in_coroot_lattice(&self, t: &RationalVector) -> bool {
        linalg::is_integral(&self.to_coroot_coords(t))
    }

    /// Canonical representative of `t + Q∨`: coroot coordinates reduced to `[0, 1)`.
    pub fn reduce_mod_coroot(&self, t: &RationalVector) -> RationalVector {
        let q: Vec<Rational> = self.to_coroot_coords(t).into_iter().map(linalg::frac_part).collect();
        self.from_coroot_coords(&q)
    }

    /// True when every coordinate is non-negative and `d(t) ≤ 1`.
    pub fn in_closed_alcove(&self, t: &RationalVector) -> bool {
        t.0.iter().all(|c| !c.is_negative()) && self.pair(&self.marks, t) <= Rational::from_integer(1)
    }

    /// Alcove vertex for extended node `i`: the origin for `i = 0`, else `ϖ_i∨ / m_i`.
    pub fn alcove_vertex(&self, i: usize) -> RationalVector {
        let mut v = RationalVector::zero(self.rank());
        if i > 0 {
            v.0[i - 1] = Rational::new(1, self.marks[i - 1]);
        }
        v
    }
}

#[derive(Serialize)]
struct RootSystemDoc<'a> {
    #[serde(rename = "type")]
    simple_type: SimpleType,
    rank: usize,
    cartan: &'a IntMatrix,
    roots: &'a [Vec<i64>],
    highest_root: &'a [i64],
    marks: &'a [i64],
    comarks: &'a [i64],
}

impl Serialize for RootSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootSystemDoc {
            simple_type: self.simple_type,
            rank: self.rank(),
            cartan: &self.cartan,
            roots: &self.roots,
            highest_root: self.highest_root(),
            marks: &self.marks,
            comarks: &self.comarks,
        }
        .serialize(s)
    }
}
