//! The matrix condition (M), the coboundary lattice, and stable-finiteness
//! verdicts.
//!
//! (M) asks that the image lattice `L = (1−m₁)ℤⁿ + (1−m₂)ℤⁿ` meet `ℕⁿ` only
//! in 0. [`condition_m`] decides it exactly through the rational cone test
//! (a nonnegative rational vector of the span has an integer multiple in `L`)
//! and returns an integer witness `(f, g)` on failure.
//! [`condition_m_bruteforce`] is an independent, bounded search used as an
//! oracle.
//!
//! Verdicts follow the extension theorem for an invariant subset `H`: given
//! (M), the positivity condition (P) on the ideal, and stable finiteness of
//! both the ideal and the quotient, the whole algebra is stably finite. (P)
//! refers to the positive cone of K₀ of the ideal, which nothing here models,
//! so it is only ever assumed or left as an obligation.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ktheory::difference_block;
use crate::linalg::{lattice_of_columns, solve_integer, subspace_meets_positive_cone, HermiteLattice, IntMatrix};
use crate::models::{FiniteMapModel, InvariantSubset, Model, Rank2MatrixSystem, Which};
use crate::parallel::{self, Exec};

/// Default cap on points per half of the brute-force search.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 2_000_000;
/// Default cap on the exponent bound of the coboundary enumeration.
pub const DEFAULT_MAX_K_BOUND: usize = 720;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    SpanLp,
    BruteForce { bound: u32 },
}

/// `v = (1−m₁)f + (1−m₂)g` with `v ≥ 0`, `v ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixWitness {
    #[serde(with = "crate::numfmt::bigint_vec")]
    pub v: Vec<BigInt>,
    #[serde(with = "crate::numfmt::bigint_vec")]
    pub f: Vec<BigInt>,
    #[serde(with = "crate::numfmt::bigint_vec")]
    pub g: Vec<BigInt>,
}

impl MatrixWitness {
    /// Re-checks the witness by direct matrix arithmetic.
    pub fn verify(&self, s: &Rank2MatrixSystem) -> bool {
        let n = s.dim();
        if self.v.len() != n || self.f.len() != n || self.g.len() != n {
            return false;
        }
        let (Ok(a), Ok(b)) = (s.m1().one_minus().mul_vec(&self.f), s.m2().one_minus().mul_vec(&self.g)) else {
            return false;
        };
        let sum: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        sum == self.v && self.v.iter().all(|x| !x.is_negative()) && self.v.iter().any(|x| !x.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixConditionResult {
    pub holds: bool,
    pub witness: Option<MatrixWitness>,
    pub method: Method,
}

/// Exact decision of (M).
pub fn condition_m(s: &Rank2MatrixSystem) -> Result<MatrixConditionResult> {
    let block = difference_block(s);
    let lattice = lattice_of_columns(&block);
    let Some(cone) = subspace_meets_positive_cone(&lattice) else {
        return Ok(MatrixConditionResult {
            holds: true,
            witness: None,
            method: Method::SpanLp,
        });
    };
    // Clear denominators in lattice coordinates, then shrink by the content
    // while the quotient stays in the lattice.
    let scale = cone
        .coefficients
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coords: Vec<BigInt> = cone
        .coefficients
        .iter()
        .map(|c| (c * BigInt::from(scale.clone())).to_integer())
        .collect();
    let mut v = lattice.basis().mul_vec(&coords)?;
    let content = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content > BigInt::one() {
        let reduced: Vec<BigInt> = v.iter().map(|x| x / &content).collect();
        if lattice.contains(&reduced)?.is_some() {
            v = reduced;
        }
    }
    let fg = solve_integer(&block, &v)
        .ok_or_else(|| Error::InternalConsistency("lattice vector has no preimage under the block".into()))?;
    let n = s.dim();
    let witness = MatrixWitness {
        v,
        f: fg[..n].to_vec(),
        g: fg[n..].to_vec(),
    };
    if !witness.verify(s) {
        return Err(Error::InternalConsistency(format!(
            "(M) witness failed re-verification: {witness:?}"
        )));
    }
    Ok(MatrixConditionResult {
        holds: false,
        witness: Some(witness),
        method: Method::SpanLp,
    })
}

pub fn condition_m_bruteforce(s: &Rank2MatrixSystem, bound: u32) -> Result<MatrixConditionResult> {
    condition_m_bruteforce_with(s, bound, DEFAULT_BRUTE_FORCE_CAP, Exec::default())
}

fn small_matrix(m: &IntMatrix) -> Result<Vec<Vec<i128>>> {
    let limit = BigInt::from(1u64 << 60);
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| {
                    if x.abs() >= limit {
                        Err(Error::EnumerationCap(
                            "matrix entries too large for brute-force enumeration".into(),
                        ))
                    } else {
                        Ok(x.to_i128().expect("bounded"))
                    }
                })
                .collect()
        })
        .collect()
}

/// Decodes the `idx`-th vector of `[−bound, bound]ⁿ` in odometer order.
fn box_point(mut idx: u64, n: usize, bound: u32) -> Vec<i128> {
    let side = 2 * bound as u64 + 1;
    let mut out = vec![0i128; n];
    for slot in out.iter_mut() {
        *slot = (idx % side) as i128 - bound as i128;
        idx /= side;
    }
    out
}

/// Distinct images `A·f` over the box, each with the first `f` producing it,
/// reduced to the componentwise-maximal ones and ordered by that `f`.
fn maximal_images(a: &[Vec<i128>], n: usize, bound: u32, count: u64, exec: Exec) -> Vec<(u64, Vec<i128>)> {
    let images = parallel::map_range(exec, 0..count, |idx| {
        let f = box_point(idx, n, bound);
        a.iter()
            .map(|row| row.iter().zip(&f).map(|(x, y)| x * y).sum::<i128>())
            .collect::<Vec<i128>>()
    });
    let mut first: HashMap<Vec<i128>, u64> = HashMap::new();
    for (idx, p) in images.into_iter().enumerate() {
        first.entry(p).or_insert(idx as u64);
    }
    let mut pts: Vec<(u64, Vec<i128>)> = first.into_iter().map(|(p, i)| (i, p)).collect();
    // Anything dominating a point has a strictly larger coordinate sum, so a
    // single pass in decreasing-sum order finds the maxima.
    pts.sort_by(|(ia, a), (ib, b)| {
        let sa: i128 = a.iter().sum();
        let sb: i128 = b.iter().sum();
        sb.cmp(&sa).then(ia.cmp(ib))
    });
    let mut kept: Vec<(u64, Vec<i128>)> = Vec::new();
    for (i, p) in pts {
        let dominated = kept.iter().any(|(_, k)| k.iter().zip(&p).all(|(x, y)| x >= y));
        if !dominated {
            kept.push((i, p));
        }
    }
    kept.sort_by_key(|(i, _)| *i);
    kept
}

/// Exhaustive search over `f, g ∈ [−bound, bound]ⁿ`.
///
/// Meet in the middle: `p = (1−m₁)f` and `q = (1−m₂)g` are enumerated
/// separately. If `p ≤ p'` componentwise then any partner of `p` also works
/// for `p'`, so only the maximal images of each half are paired.
/// `holds = true` means only that no witness exists within the bound.
pub fn condition_m_bruteforce_with(
    s: &Rank2MatrixSystem,
    bound: u32,
    max_points: u64,
    exec: Exec,
) -> Result<MatrixConditionResult> {
    let n = s.dim();
    let method = Method::BruteForce { bound };
    let side = 2 * bound as u64 + 1;
    let count = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(side).filter(|&c| c <= max_points));
    let Some(count) = count else {
        return Err(Error::EnumerationCap(format!(
            "(2·{bound}+1)^{n} coefficient vectors per half exceed the cap of {max_points}"
        )));
    };
    let a1 = small_matrix(&s.m1().one_minus())?;
    let a2 = small_matrix(&s.m2().one_minus())?;
    let ps = maximal_images(&a1, n, bound, count, exec);
    let qs = maximal_images(&a2, n, bound, count, exec);
    let hit = parallel::find_map_first(exec, &ps, |(fi, p)| {
        qs.iter().find_map(|(gi, q)| {
            let v: Vec<i128> = p.iter().zip(q).map(|(x, y)| x + y).collect();
            (v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x != 0)).then_some((*fi, *gi, v))
        })
    });
    let witness = hit.map(|(fi, gi, v)| {
        let big = |xs: Vec<i128>| xs.into_iter().map(BigInt::from).collect::<Vec<_>>();
        MatrixWitness {
            v: big(v),
            f: big(box_point(fi, n, bound)),
            g: big(box_point(gi, n, bound)),
        }
    });
    if let Some(w) = &witness {
        if !w.verify(s) {
            return Err(Error::InternalConsistency("brute-force witness failed re-verification".into()));
        }
    }
    Ok(MatrixConditionResult {
        holds: witness.is_none(),
        witness,
        method,
    })
}

/// One generator `1_x − 1_{T^k x}` of the coboundary subgroup, coming from the
/// bisection `{(T^k x, k, x)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoboundaryGenerator {
    pub source: usize,
    pub range: usize,
    pub k: [usize; 2],
}

impl CoboundaryGenerator {
    pub fn vector(&self, n: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        v[self.source] += 1;
        v[self.range] -= 1;
        v
    }

    pub fn describe(&self, labels: &[String]) -> String {
        format!(
            "Z({{{}}}, k=({},{})) ↦ 1_{{{}}} - 1_{{{}}}",
            labels[self.source], self.k[0], self.k[1], labels[self.source], labels[self.range]
        )
    }
}

/// The coboundary subgroup `H_G`, generated by `1_{s(E)} − 1_{r(E)}`.
///
/// Since the unit space is finite and discrete, every compact open bisection
/// is a finite disjoint union of singleton bisections `{(y, p−q, x)}` with
/// `T^p x = T^q y`, and `1_{s(E)} − 1_{r(E)}` is additive over such unions.
/// For bijective models `y = T^k x` with `k = p − q` taken modulo the cycle
/// lengths, so the generators `1_x − 1_{T^k x}` with `k ∈ [0, K]²` suffice
/// once `K + 1` reaches the lcm of the cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoboundaryLattice {
    pub lattice: HermiteLattice,
    /// Distinct nonzero generators, first occurrence in enumeration order.
    pub generator_log: Vec<CoboundaryGenerator>,
    pub exponent_bound: usize,
    /// lcm of the cycle lengths of both maps.
    pub cycle_lcm: usize,
    /// False when `exponent_bound + 1 < cycle_lcm`: the lattice may then be
    /// a proper subgroup of the coboundary subgroup.
    pub complete: bool,
}

fn power(t: &[usize], x: usize, k: usize) -> usize {
    (0..k).fold(x, |y, _| t[y])
}

pub fn coboundary_lattice(model: &FiniteMapModel, k_bound: usize) -> Result<CoboundaryLattice> {
    if !model.bijective() {
        return Err(Error::NotApplicable("coboundary enumeration needs bijective maps".into()));
    }
    let n = model.len();
    let t1 = model.map(Which::First);
    let t2 = model.map(Which::Second);
    let mut seen = std::collections::HashSet::new();
    let mut log = Vec::new();
    for x in 0..n {
        for a in 0..=k_bound {
            let y1 = power(t1, x, a);
            let mut y = y1;
            for b in 0..=k_bound {
                if b > 0 {
                    y = t2[y];
                }
                if y != x && seen.insert((x, y)) {
                    log.push(CoboundaryGenerator {
                        source: x,
                        range: y,
                        k: [a, b],
                    });
                }
            }
        }
    }
    let gens: Vec<Vec<BigInt>> = log.iter().map(|g| g.vector(n)).collect();
    let cycle_lcm = model.orbit_lcm();
    Ok(CoboundaryLattice {
        lattice: HermiteLattice::from_generators(n, gens),
        generator_log: log,
        exponent_bound: k_bound,
        cycle_lcm,
        complete: k_bound + 1 >= cycle_lcm,
    })
}

/// `min(lcm of cycle lengths, cap)`.
pub fn default_k_bound(model: &FiniteMapModel, cap: usize) -> usize {
    model.orbit_lcm().min(cap)
}

/// The coboundary subgroup equals the image lattice of `(1−m₁ | 1−m₂)`.
pub fn check_prop_c_equals_m(model: &FiniteMapModel, k_bound: usize) -> Result<bool> {
    let cob = coboundary_lattice(model, k_bound)?;
    let s = crate::models::matrix_system(&Model::FiniteMap(model.clone()))?;
    Ok(cob.lattice == lattice_of_columns(&difference_block(&s)))
}

/// Condition (C): the coboundary subgroup meets `ℕⁿ` only in 0.
pub fn condition_c(cob: &CoboundaryLattice) -> bool {
    subspace_meets_positive_cone(&cob.lattice).is_none()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    #[default]
    Auto,
    Assume,
    Deny,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumptions {
    #[serde(rename = "P", default)]
    pub p: Policy,
    #[serde(default)]
    pub ideal_sf: Policy,
    #[serde(default)]
    pub quotient_sf: Policy,
}

impl Assumptions {
    pub fn assume_all() -> Self {
        Assumptions {
            p: Policy::Assume,
            ideal_sf: Policy::Assume,
            quotient_sf: Policy::Assume,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proven,
    Failed,
    Assumed,
    Obligation,
}

impl Status {
    pub fn is_satisfied(self) -> bool {
        matches!(self, Status::Proven | Status::Assumed)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proven => "Proven",
            Status::Failed => "Failed",
            Status::Assumed => "Assumed",
            Status::Obligation => "Obligation",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    StablyFinite,
    Inconclusive,
    NotApplicable,
}

/// Which result the verdict leans on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// No nontrivial ideal: the algebra is its own quotient.
    Minimal,
    /// The extension theorem for the chosen invariant subset.
    Extension,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedItem {
    pub condition: String,
    pub status: Status,
    /// Hypothesis of the invoked result, as opposed to a supporting check.
    pub required: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub route: Route,
    pub subset_size: usize,
    pub checked: Vec<CheckedItem>,
    pub assumed: Vec<String>,
    pub m_witness: Option<MatrixWitness>,
    /// (M) for the whole system implies (M) for the restriction; re-checked.
    pub restriction_lemma_consistent: bool,
    pub narrative: Vec<String>,
}

impl Verdict {
    pub fn status_of(&self, condition: &str) -> Option<Status> {
        self.checked.iter().find(|c| c.condition == condition).map(|c| c.status)
    }
}

struct Piece {
    m: Status,
    minimal: Option<bool>,
}

fn piece_sf(
    name: &str,
    what: &str,
    piece: Option<&Piece>,
    policy: Policy,
    narrative: &mut Vec<String>,
) -> CheckedItem {
    let (status, detail) = match (policy, piece) {
        (Policy::Deny, _) => (Status::Failed, format!("stable finiteness of the {what} denied by assumption")),
        (_, None) => (Status::Proven, format!("the {what} is the zero algebra")),
        (_, Some(p)) if p.minimal == Some(true) && p.m == Status::Proven => {
            narrative.push(format!(
                "The {what} comes from a transitive action satisfying (M), hence the coboundary condition (C) by the \
                 lattice equality; the stable-finiteness criterion for minimal groupoids with (C) applies."
            ));
            (Status::Proven, format!("{what}: minimal with (M), cited criterion for minimal groupoids"))
        }
        (Policy::Assume, Some(_)) => (Status::Assumed, format!("stable finiteness of the {what} assumed")),
        (Policy::Auto, Some(p)) => {
            let why = match p.minimal {
                Some(false) => "the action on it is not transitive",
                None => "minimality is not decided for this model type",
                Some(true) => "(M) fails on it",
            };
            (Status::Obligation, format!("stable finiteness of the {what} not established: {why}"))
        }
    };
    CheckedItem {
        condition: name.to_string(),
        status,
        required: true,
        detail,
    }
}

fn m_item(name: &str, required: bool, r: &MatrixConditionResult, what: &str) -> CheckedItem {
    let (status, detail) = if r.holds {
        (Status::Proven, format!("(M) holds for {what}"))
    } else {
        let w = r.witness.as_ref().expect("failing (M) carries a witness");
        (
            Status::Failed,
            format!(
                "(M) fails for {what}: v = {} = (1−m₁)f + (1−m₂)g with f = {}, g = {}",
                crate::numfmt::vec_string(&w.v),
                crate::numfmt::vec_string(&w.f),
                crate::numfmt::vec_string(&w.g)
            ),
        )
    };
    CheckedItem {
        condition: name.to_string(),
        status,
        required,
        detail,
    }
}

fn minimality_item(name: &str, what: &str, minimal: Option<bool>) -> CheckedItem {
    let (status, detail) = match minimal {
        Some(true) => (Status::Proven, format!("{what}: the generated ℤ²-action is transitive")),
        Some(false) => (Status::Failed, format!("{what}: the generated ℤ²-action has several orbits")),
        None => (Status::Obligation, format!("{what}: minimality not decided for this model type")),
    };
    CheckedItem {
        condition: name.to_string(),
        status,
        required: false,
        detail,
    }
}

/// Stable-finiteness verdict for `s` relative to the invariant subset `W`.
///
/// A trivial `W` (empty or everything) is treated as `H = ∅`: the ideal is
/// zero and the quotient is the whole system.
pub fn sf_verdict(s: &Rank2MatrixSystem, subset: &InvariantSubset, assumptions: Assumptions) -> Result<Verdict> {
    let n = s.dim();
    if subset.len() != n {
        return Err(Error::Dimension(format!(
            "subset over {} points for a system of dimension {n}",
            subset.len()
        )));
    }
    if let Some(v) = s.violation(subset.flags()) {
        return Err(Error::NotInvariant(v.to_string()));
    }
    let mut narrative = Vec::new();
    if n == 0 {
        narrative.push("The unit space is empty; there is nothing to decide.".to_string());
        return Ok(Verdict {
            conclusion: Conclusion::NotApplicable,
            route: Route::None,
            subset_size: 0,
            checked: Vec::new(),
            assumed: Vec::new(),
            m_witness: None,
            restriction_lemma_consistent: true,
            narrative,
        });
    }

    let mut checked = Vec::new();
    let global = condition_m(s)?;
    checked.push(m_item("M", true, &global, "the whole system"));

    let trivial = subset.is_trivial();
    let ideal_sys = if trivial { None } else { Some(s.restrict(subset)?) };
    let quotient_sys = if trivial { s.clone() } else { s.corestrict_complement(subset)? };

    let restriction_lemma_consistent = true;
    let ideal_piece = match &ideal_sys {
        None => None,
        Some(h) => {
            let r = condition_m(h)?;
            if global.holds && !r.holds {
                return Err(Error::InternalConsistency(
                    "(M) holds globally but fails on an invariant restriction".into(),
                ));
            }
            let mut item = m_item("M_ideal", false, &r, "the restriction to the subset");
            if global.holds {
                item.detail.push_str("; also implied by global (M) via the restriction lemma");
            }
            checked.push(item);
            let minimal = h.is_minimal_finite_map();
            checked.push(minimality_item("minimal_ideal", "restriction", minimal));
            Some(Piece {
                m: if r.holds { Status::Proven } else { Status::Failed },
                minimal,
            })
        }
    };
    let quotient_piece = {
        let r = condition_m(&quotient_sys)?;
        let label = if trivial { "M_whole" } else { "M_quotient" };
        let what = if trivial { "the whole system" } else { "the complement" };
        if !trivial {
            checked.push(m_item(label, false, &r, what));
        }
        let minimal = quotient_sys.is_minimal_finite_map();
        checked.push(minimality_item(
            if trivial { "minimal" } else { "minimal_quotient" },
            if trivial { "whole system" } else { "complement" },
            minimal,
        ));
        Piece {
            m: if r.holds { Status::Proven } else { Status::Failed },
            minimal,
        }
    };

    // The unique-ideal special case never arises for finite bijective
    // models: the complement of an invariant subset is invariant too.
    let route = if trivial { Route::Minimal } else { Route::Extension };

    match route {
        Route::Minimal => narrative.push(
            "No nontrivial invariant subset was supplied, so the ideal is zero and the quotient is the whole algebra."
                .to_string(),
        ),
        _ => narrative.push("Applying the extension theorem to the ideal of the invariant subset.".to_string()),
    }

    checked.push(piece_sf(
        "ideal_sf",
        "ideal",
        ideal_piece.as_ref(),
        assumptions.ideal_sf,
        &mut narrative,
    ));
    checked.push(piece_sf(
        "quotient_sf",
        if trivial { "whole algebra" } else { "quotient" },
        Some(&quotient_piece),
        assumptions.quotient_sf,
        &mut narrative,
    ));

    let p_item = if trivial {
        CheckedItem {
            condition: "P".into(),
            status: Status::Proven,
            required: true,
            detail: "vacuous: the ideal is zero".into(),
        }
    } else {
        let (status, detail) = match assumptions.p {
            Policy::Assume => (Status::Assumed, "positivity condition (P) on the ideal assumed"),
            Policy::Deny => (Status::Failed, "positivity condition (P) on the ideal denied by assumption"),
            Policy::Auto => (
                Status::Obligation,
                "positivity condition (P) refers to the positive cone of K₀ of the ideal and is not decided",
            ),
        };
        CheckedItem {
            condition: "P".into(),
            status,
            required: true,
            detail: detail.into(),
        }
    };
    checked.push(p_item);

    if global.holds && ideal_sys.is_some() {
        narrative.push(
            "Global (M) passes to the restriction by the restriction lemma (re-checked directly), which with the \
             left square of the ideal morphism gives the kernel condition on the cokernel classes."
                .to_string(),
        );
    }
    let ok = checked.iter().filter(|c| c.required).all(|c| c.status.is_satisfied());
    let conclusion = if ok { Conclusion::StablyFinite } else { Conclusion::Inconclusive };
    if ok && route == Route::Minimal {
        narrative.push("Stable finiteness of the whole algebra was established directly.".to_string());
    } else if ok {
        narrative.push(
            "With (M), (P) and stable finiteness of ideal and quotient, Spielberg's extension lemma reduces stable \
             finiteness to (S): ker(i_*) ∩ K₀(ideal)₊ = 0, which the hypotheses imply. (S) itself is not evaluated."
                .to_string(),
        );
    } else {
        let open: Vec<String> = checked
            .iter()
            .filter(|c| c.required && !c.status.is_satisfied())
            .map(|c| format!("{} ({})", c.condition, c.status))
            .collect();
        narrative.push(format!("Inconclusive: unmet hypotheses {}.", open.join(", ")));
    }
    let assumed = checked
        .iter()
        .filter(|c| c.status == Status::Assumed)
        .map(|c| c.condition.clone())
        .collect();
    Ok(Verdict {
        conclusion,
        route,
        subset_size: subset.size(),
        checked,
        assumed,
        m_witness: global.witness,
        restriction_lemma_consistent,
        narrative,
    })
}
