//! Desk-scale models of rank-2 dynamics and their matrices on the function
//! lattice.
//!
//! Two ingestion formats share one computational core:
//!
//! * [`FiniteMapModel`]: a finite set with two commuting surjections. On a
//!   finite set surjective means bijective, so these models are always
//!   invertible; they exercise the unit space literally and admit brute-force
//!   groupoid checks.
//! * [`TwoGraphModel`]: a vertex set with two commuting nonnegative vertex
//!   matrices. Entry `a[v][w]` counts edges of that colour with range `v` and
//!   source `w`; a nonzero row means the vertex receives an edge (no sources).
//!   The infinite path space is never materialised: the matrices on the
//!   function lattice are taken to be the transposes `aᵢᵀ`. That the vertex
//!   matrices compute the same kernels and cokernels as the path-space
//!   function lattice is imported from the existing 2-graph K-theory
//!   literature, not established here.
//!
//! Both produce a [`Rank2MatrixSystem`]: a commuting pair `m₁, m₂` acting on
//! `ℤⁿ` in indicator coordinates.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::parallel::{self, Exec};

/// Default cap on the number of points for exhaustive subset enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    FiniteMap,
    TwoGraph,
    Raw,
}

/// Which of the two commuting maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    #[serde(rename = "1")]
    First,
    #[serde(rename = "2")]
    Second,
}

impl Which {
    pub const BOTH: [Which; 2] = [Which::First, Which::Second];

    pub fn index(self) -> u8 {
        match self {
            Which::First => 1,
            Which::Second => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMapModel {
    labels: Vec<String>,
    t1: Vec<usize>,
    t2: Vec<usize>,
}

impl FiniteMapModel {
    pub fn new(labels: Vec<String>, t1: Vec<usize>, t2: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        check_labels(&labels)?;
        for (name, t) in [("t1", &t1), ("t2", &t2)] {
            if t.len() != n {
                return Err(Error::validation(
                    name,
                    format!("has {} entries but there are {n} points", t.len()),
                ));
            }
            if let Some((x, &y)) = t.iter().enumerate().find(|&(_, &y)| y >= n) {
                return Err(Error::validation(
                    name,
                    format!("point {} maps to index {y}, out of range", labels[x]),
                ));
            }
            let mut hit = vec![false; n];
            for &y in t {
                hit[y] = true;
            }
            if let Some(y) = hit.iter().position(|h| !h) {
                return Err(Error::validation(
                    name,
                    format!("not surjective: point {} has no preimage", labels[y]),
                ));
            }
        }
        if let Some(x) = (0..n).find(|&x| t1[t2[x]] != t2[t1[x]]) {
            return Err(Error::validation(
                "t1/t2",
                format!(
                    "maps do not commute at point {}: t1(t2(x)) = {}, t2(t1(x)) = {}",
                    labels[x], labels[t1[t2[x]]], labels[t2[t1[x]]]
                ),
            ));
        }
        Ok(FiniteMapModel { labels, t1, t2 })
    }

    /// Unlabelled model on points `0..n`.
    pub fn unlabelled(t1: Vec<usize>, t2: Vec<usize>) -> Result<Self> {
        let labels = (0..t1.len()).map(|i| format!("x{i}")).collect();
        Self::new(labels, t1, t2)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn map(&self, which: Which) -> &[usize] {
        match which {
            Which::First => &self.t1,
            Which::Second => &self.t2,
        }
    }

    /// Always true: a surjection of a finite set is a bijection.
    pub fn bijective(&self) -> bool {
        true
    }

    pub fn inverse(&self, which: Which) -> Vec<usize> {
        let t = self.map(which);
        let mut inv = vec![0; t.len()];
        for (x, &y) in t.iter().enumerate() {
            inv[y] = x;
        }
        inv
    }

    /// Cycle lengths of both permutations, sorted and deduplicated.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for which in Which::BOTH {
            let t = self.map(which);
            let mut seen = vec![false; t.len()];
            for start in 0..t.len() {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = t[x];
                    len += 1;
                }
                out.insert(len);
            }
        }
        out.into_iter().collect()
    }

    /// lcm of all cycle lengths of `t1` and `t2`; every element of the
    /// generated ℤ²-action is `t1^a t2^b` with `a, b` below this bound.
    pub fn orbit_lcm(&self) -> usize {
        self.cycle_lengths().into_iter().fold(1, |acc, l| acc.lcm(&l))
    }

    /// Orbit of the generated ℤ²-action containing each point, numbered in
    /// order of first appearance.
    pub fn orbit_ids(&self) -> Vec<usize> {
        let n = self.len();
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if id[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            id[start] = next;
            while let Some(x) = stack.pop() {
                for which in Which::BOTH {
                    let y = self.map(which)[x];
                    if id[y] == usize::MAX {
                        id[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        id
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_ids().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Restriction to an invariant subset, points renumbered in order.
    pub fn restrict(&self, subset: &InvariantSubset) -> Result<FiniteMapModel> {
        if subset.len() != self.len() {
            return Err(Error::Dimension(format!(
                "subset over {} points applied to a model with {}",
                subset.len(),
                self.len()
            )));
        }
        if let Some(v) = self.violation(subset.flags()) {
            return Err(Error::NotInvariant(v.describe(&self.labels)));
        }
        let members = subset.members();
        let mut new_index = vec![usize::MAX; self.len()];
        for (k, &x) in members.iter().enumerate() {
            new_index[x] = k;
        }
        let labels = members.iter().map(|&x| self.labels[x].clone()).collect();
        let t1 = members.iter().map(|&x| new_index[self.t1[x]]).collect();
        let t2 = members.iter().map(|&x| new_index[self.t2[x]]).collect();
        FiniteMapModel::new(labels, t1, t2)
    }

    fn violation(&self, flags: &[bool]) -> Option<Violation> {
        for which in Which::BOTH {
            for (x, &y) in self.map(which).iter().enumerate() {
                if flags[x] && !flags[y] {
                    return Some(Violation::ImageLeaves {
                        map: which,
                        point: x,
                        image: y,
                    });
                }
                if !flags[x] && flags[y] {
                    return Some(Violation::PreimageEnters {
                        map: which,
                        point: x,
                        image: y,
                    });
                }
            }
        }
        None
    }
}

/// `M[y][x] = 1` iff `T(x) = y`, so `M·h` is the push-forward
/// `(T_* h)(y) = Σ_{T x = y} h(x)` in indicator coordinates.
pub fn induced_matrix(model: &FiniteMapModel, which: Which) -> IntMatrix {
    let n = model.len();
    let mut m = IntMatrix::zeros(n, n);
    for (x, &y) in model.map(which).iter().enumerate() {
        m[(y, x)] += 1;
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGraphModel {
    labels: Vec<String>,
    a1: IntMatrix,
    a2: IntMatrix,
}

impl TwoGraphModel {
    pub fn new(labels: Vec<String>, a1: IntMatrix, a2: IntMatrix) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        for (name, a) in [("a1", &a1), ("a2", &a2)] {
            if a.rows() != n || a.cols() != n {
                return Err(Error::validation(
                    name,
                    format!("is {}×{} but there are {n} vertices", a.rows(), a.cols()),
                ));
            }
            for i in 0..n {
                for j in 0..n {
                    if a[(i, j)].is_negative() {
                        return Err(Error::validation(
                            name,
                            format!("negative entry at ({}, {})", labels[i], labels[j]),
                        ));
                    }
                }
                if a.row(i).iter().all(Zero::is_zero) {
                    return Err(Error::validation(
                        name,
                        format!("vertex {} receives no edges (zero row)", labels[i]),
                    ));
                }
            }
        }
        if let Some((i, j)) = commutator_entry(&a1, &a2) {
            return Err(Error::validation(
                "a1/a2",
                format!(
                    "vertex matrices do not commute: entry ({}, {}) of a1·a2 − a2·a1 is nonzero",
                    labels[i], labels[j]
                ),
            ));
        }
        Ok(TwoGraphModel { labels, a1, a2 })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn matrix(&self, which: Which) -> &IntMatrix {
        match which {
            Which::First => &self.a1,
            Which::Second => &self.a2,
        }
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::validation("labels", format!("duplicate label {l:?}")));
        }
    }
    Ok(())
}

fn commutator_entry(a: &IntMatrix, b: &IntMatrix) -> Option<(usize, usize)> {
    let ab = a.mul(b).ok()?;
    let ba = b.mul(a).ok()?;
    let c = ab.sub(&ba).ok()?;
    (0..c.rows())
        .flat_map(|i| (0..c.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !c[(i, j)].is_zero())
}

/// Commuting integer matrices `m₁, m₂` acting on `ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank2MatrixSystem {
    m1: IntMatrix,
    m2: IntMatrix,
    origin: Origin,
}

impl Rank2MatrixSystem {
    pub fn new(m1: IntMatrix, m2: IntMatrix, origin: Origin) -> Result<Self> {
        if !m1.is_square() || !m2.is_square() || m1.rows() != m2.rows() {
            return Err(Error::validation(
                "m1/m2",
                format!(
                    "need two square matrices of equal size, got {}×{} and {}×{}",
                    m1.rows(),
                    m1.cols(),
                    m2.rows(),
                    m2.cols()
                ),
            ));
        }
        if let Some((i, j)) = commutator_entry(&m1, &m2) {
            return Err(Error::validation(
                "m1/m2",
                format!("matrices do not commute: entry ({i}, {j}) of m1·m2 − m2·m1 is nonzero"),
            ));
        }
        Ok(Rank2MatrixSystem { m1, m2, origin })
    }

    pub fn raw(m1: IntMatrix, m2: IntMatrix) -> Result<Self> {
        Self::new(m1, m2, Origin::Raw)
    }

    pub fn dim(&self) -> usize {
        self.m1.rows()
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn matrix(&self, which: Which) -> &IntMatrix {
        match which {
            Which::First => &self.m1,
            Which::Second => &self.m2,
        }
    }

    pub fn m1(&self) -> &IntMatrix {
        &self.m1
    }

    pub fn m2(&self) -> &IntMatrix {
        &self.m2
    }

    /// Coordinate invariance: both matrices map `ℤ^W` into itself.
    pub fn violation(&self, flags: &[bool]) -> Option<Violation> {
        for which in Which::BOTH {
            let m = self.matrix(which);
            for col in (0..self.dim()).filter(|&c| flags[c]) {
                if let Some(row) = (0..self.dim()).find(|&r| !flags[r] && !m[(r, col)].is_zero()) {
                    return Some(Violation::MatrixCoupling { map: which, row, col });
                }
            }
        }
        None
    }

    fn require_invariant(&self, subset: &InvariantSubset) -> Result<()> {
        if subset.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "subset over {} points applied to a system of dimension {}",
                subset.len(),
                self.dim()
            )));
        }
        match self.violation(subset.flags()) {
            Some(v) => Err(Error::NotInvariant(v.describe(&default_labels(self.dim())))),
            None => Ok(()),
        }
    }

    /// Principal submatrices on `W`.
    pub fn restrict(&self, subset: &InvariantSubset) -> Result<Rank2MatrixSystem> {
        self.require_invariant(subset)?;
        let idx = subset.members();
        Rank2MatrixSystem::new(
            self.m1.select(&idx, &idx),
            self.m2.select(&idx, &idx),
            self.origin,
        )
    }

    /// Principal submatrices on the complement of `W`: the induced action on
    /// `ℤⁿ / ℤ^W`.
    pub fn corestrict_complement(&self, subset: &InvariantSubset) -> Result<Rank2MatrixSystem> {
        self.require_invariant(subset)?;
        let idx = subset.complement_members();
        Rank2MatrixSystem::new(
            self.m1.select(&idx, &idx),
            self.m2.select(&idx, &idx),
            self.origin,
        )
    }

    /// Connected components of the support graph of `m₁` and `m₂`
    /// (undirected). For systems built from finite maps these are the orbits.
    pub fn support_components(&self) -> Vec<usize> {
        let n = self.dim();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        for m in [&self.m1, &self.m2] {
            for i in 0..n {
                for j in 0..n {
                    if !m[(i, j)].is_zero() {
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        if a != b {
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        let mut roots = std::collections::BTreeMap::new();
        for (x, id) in ids.iter_mut().enumerate() {
            let r = find(&mut parent, x);
            *id = *roots.entry(r).or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
        ids
    }

    /// For systems of finite-map origin: the ℤ²-action is transitive, i.e.
    /// the model is minimal. `None` for other origins, where the support
    /// graph says nothing about minimality of the underlying groupoid.
    pub fn is_minimal_finite_map(&self) -> Option<bool> {
        (self.origin == Origin::FiniteMap)
            .then(|| self.dim() > 0 && self.support_components().iter().all(|&c| c == 0))
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("#{i}")).collect()
}

/// A validated model in one of the supported formats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    FiniteMap(FiniteMapModel),
    TwoGraph(TwoGraphModel),
    Raw {
        labels: Vec<String>,
        system: Rank2MatrixSystem,
    },
}

impl Model {
    pub fn labels(&self) -> &[String] {
        match self {
            Model::FiniteMap(m) => m.labels(),
            Model::TwoGraph(m) => m.labels(),
            Model::Raw { labels, .. } => labels,
        }
    }

    pub fn len(&self) -> usize {
        self.labels().len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels().is_empty()
    }

    pub fn origin(&self) -> Origin {
        match self {
            Model::FiniteMap(_) => Origin::FiniteMap,
            Model::TwoGraph(_) => Origin::TwoGraph,
            Model::Raw { .. } => Origin::Raw,
        }
    }

    pub fn as_finite_map(&self) -> Option<&FiniteMapModel> {
        match self {
            Model::FiniteMap(m) => Some(m),
            _ => None,
        }
    }

    /// Labels → indicator flags; unknown labels are an input error.
    pub fn subset_from_labels<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<bool>> {
        let mut flags = vec![false; self.len()];
        for name in names {
            let name = name.as_ref();
            let i = self
                .labels()
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::validation("invariant_subset", format!("unknown label {name:?}")))?;
            flags[i] = true;
        }
        Ok(flags)
    }
}

pub fn matrix_system(model: &Model) -> Result<Rank2MatrixSystem> {
    match model {
        Model::FiniteMap(m) => Rank2MatrixSystem::new(
            induced_matrix(m, Which::First),
            induced_matrix(m, Which::Second),
            Origin::FiniteMap,
        ),
        Model::TwoGraph(g) => Rank2MatrixSystem::new(g.a1.transpose(), g.a2.transpose(), Origin::TwoGraph),
        Model::Raw { system, .. } => Ok(system.clone()),
    }
}

/// Why a subset fails to be invariant. Indices refer to points or vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `x ∈ W` but `Tᵢ(x) ∉ W`.
    ImageLeaves { map: Which, point: usize, image: usize },
    /// `x ∉ W` but `Tᵢ(x) ∈ W`.
    PreimageEnters { map: Which, point: usize, image: usize },
    /// `col ∈ W`, `row ∉ W` and `mᵢ[row][col] ≠ 0`.
    MatrixCoupling { map: Which, row: usize, col: usize },
}

impl Violation {
    pub fn describe(&self, labels: &[String]) -> String {
        match *self {
            Violation::ImageLeaves { map, point, image } => format!(
                "T{}({}) = {} leaves the subset",
                map.index(),
                labels[point],
                labels[image]
            ),
            Violation::PreimageEnters { map, point, image } => format!(
                "{} lies outside the subset but T{}({}) = {} lies inside",
                labels[point],
                map.index(),
                labels[point],
                labels[image]
            ),
            Violation::MatrixCoupling { map, row, col } => format!(
                "m{}[{}][{}] ≠ 0 couples {} in the subset to {} outside it",
                map.index(),
                labels[row],
                labels[col],
                labels[col],
                labels[row]
            ),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match *self {
            Violation::ImageLeaves { point, image, .. } | Violation::PreimageEnters { point, image, .. } => {
                point.max(image) + 1
            }
            Violation::MatrixCoupling { row, col, .. } => row.max(col) + 1,
        };
        f.write_str(&self.describe(&default_labels(n)))
    }
}

/// A subset of points or vertices that passed the invariance check for the
/// model it was built against.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantSubset {
    member_flags: Vec<bool>,
    verified: bool,
}

impl InvariantSubset {
    /// Checks invariance against `model` and wraps the flags.
    pub fn new(model: &Model, flags: Vec<bool>) -> Result<Self> {
        match check_invariant(model, &flags)? {
            None => Ok(InvariantSubset {
                member_flags: flags,
                verified: true,
            }),
            Some(v) => Err(Error::NotInvariant(v.describe(model.labels()))),
        }
    }

    /// Checks coordinate invariance against a bare matrix system.
    pub fn for_system(system: &Rank2MatrixSystem, flags: Vec<bool>) -> Result<Self> {
        if flags.len() != system.dim() {
            return Err(Error::Dimension(format!(
                "subset over {} points for a system of dimension {}",
                flags.len(),
                system.dim()
            )));
        }
        match system.violation(&flags) {
            None => Ok(InvariantSubset {
                member_flags: flags,
                verified: true,
            }),
            Some(v) => Err(Error::NotInvariant(v.to_string())),
        }
    }

    pub fn empty(n: usize) -> Self {
        InvariantSubset {
            member_flags: vec![false; n],
            verified: true,
        }
    }

    pub fn all(n: usize) -> Self {
        InvariantSubset {
            member_flags: vec![true; n],
            verified: true,
        }
    }

    pub fn flags(&self) -> &[bool] {
        &self.member_flags
    }

    pub fn verified(&self) -> bool {
        self.verified
    }

    pub fn len(&self) -> usize {
        self.member_flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member_flags.is_empty()
    }

    pub fn size(&self) -> usize {
        self.member_flags.iter().filter(|&&b| b).count()
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.member_flags[i]).collect()
    }

    pub fn complement_members(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.member_flags[i]).collect()
    }

    /// Complement as flags (not re-verified).
    pub fn complement_flags(&self) -> Vec<bool> {
        self.member_flags.iter().map(|b| !b).collect()
    }

    /// `∅` or everything.
    pub fn is_trivial(&self) -> bool {
        let k = self.size();
        k == 0 || k == self.len()
    }

    pub fn member_labels(&self, labels: &[String]) -> Vec<String> {
        self.members().into_iter().map(|i| labels[i].clone()).collect()
    }
}

/// `None` when `flags` describes an invariant subset of `model`; otherwise a
/// witness of the failure.
///
/// Finite-map models use closure under images and preimages of both maps;
/// matrix-backed models use coordinate invariance of both matrices.
pub fn check_invariant(model: &Model, flags: &[bool]) -> Result<Option<Violation>> {
    if flags.len() != model.len() {
        return Err(Error::Dimension(format!(
            "subset over {} points for a model with {}",
            flags.len(),
            model.len()
        )));
    }
    Ok(match model {
        Model::FiniteMap(m) => m.violation(flags),
        _ => matrix_system(model)?.violation(flags),
    })
}

/// Every invariant subset, ordered by the bitmask `Σ 2^i [i ∈ W]`.
pub fn enumerate_invariant_subsets(model: &Model, cap: usize) -> Result<Vec<InvariantSubset>> {
    enumerate_invariant_subsets_with(model, cap, Exec::default())
}

pub fn enumerate_invariant_subsets_with(model: &Model, cap: usize, exec: Exec) -> Result<Vec<InvariantSubset>> {
    let n = model.len();
    if n > cap || n >= 63 {
        return Err(Error::EnumerationCap(format!(
            "{n} points exceed the subset enumeration cap of {cap}; pass an explicit invariant subset instead"
        )));
    }
    let system = matrix_system(model)?;
    let finite = model.as_finite_map();
    let flags_of = |mask: u64| -> Vec<bool> { (0..n).map(|i| mask >> i & 1 == 1).collect() };
    let hits = parallel::map_range(exec, 0..1u64 << n, |mask| {
        let flags = flags_of(mask);
        let ok = match finite {
            Some(m) => m.violation(&flags).is_none(),
            None => system.violation(&flags).is_none(),
        };
        ok.then_some(mask)
    });
    Ok(hits
        .into_iter()
        .flatten()
        .map(|mask| InvariantSubset {
            member_flags: flags_of(mask),
            verified: true,
        })
        .collect())
}

/// Nontrivial invariant subsets only.
pub fn nontrivial_invariant_subsets(model: &Model, cap: usize) -> Result<Vec<InvariantSubset>> {
    Ok(enumerate_invariant_subsets(model, cap)?
        .into_iter()
        .filter(|w| !w.is_trivial())
        .collect())
}

/// Checks that an integer matrix is a permutation matrix.
pub fn is_permutation_matrix(m: &IntMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    let one = BigInt::from(1);
    let entries_ok = (0..n).all(|i| (0..n).all(|j| m[(i, j)].is_zero() || m[(i, j)] == one));
    entries_ok
        && (0..n).all(|i| (0..n).filter(|&j| m[(i, j)] == one).count() == 1)
        && (0..n).all(|j| (0..n).filter(|&i| m[(i, j)] == one).count() == 1)
}
