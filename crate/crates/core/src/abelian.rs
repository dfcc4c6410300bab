//! Finitely generated abelian groups as presentations `ℤⁿ / colspan(R)`.
//!
//! Groups are kept as presentations, not isomorphism classes: the maps of the
//! K₀ sequences are only meaningful relative to the chosen generators, which
//! are always point or vertex indicators. Subgroups are carried as sublattices
//! of the ambient free group that contain the relation lattice, so kernel,
//! image and exactness questions reduce to Hermite-form equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, lattice_of_columns, smith_normal_form, HermiteLattice, IntMatrix};

#[derive(Clone, Debug)]
pub struct FgAbGroup {
    relations: IntMatrix,
    relation_lattice: HermiteLattice,
    /// Rows of the left Smith transform; `left · x` reduced modulo the
    /// invariant factors is a normal form for the class of `x`.
    snf_left: IntMatrix,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    torsion: Vec<BigInt>,
}

/// Abstract isomorphism type: free rank and torsion coefficients `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupType {
    pub free_rank: usize,
    #[serde(with = "crate::numfmt::bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".into()),
            r => parts.push(format!("ℤ^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("ℤ/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

impl FgAbGroup {
    /// `ℤ^rows / colspan(relations)`.
    pub fn new(relations: IntMatrix) -> Self {
        let snf = smith_normal_form(&relations);
        let relation_lattice = lattice_of_columns(&relations);
        FgAbGroup {
            free_rank: relations.rows() - snf.rank,
            torsion: snf.torsion(),
            invariant_factors: snf.invariant_factors,
            snf_left: snf.left,
            relation_lattice,
            relations,
        }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(IntMatrix::zeros(rank, 0))
    }

    pub fn cyclic(order: i64) -> Self {
        Self::new(IntMatrix::from_i64(&[&[order]]))
    }

    pub fn ambient_rank(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn relation_lattice(&self) -> &HermiteLattice {
        &self.relation_lattice
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn group_type(&self) -> GroupType {
        GroupType {
            free_rank: self.free_rank,
            torsion: self.torsion.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, or `None` if it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// Same generators and same relation subgroup.
    pub fn same_presentation(&self, other: &FgAbGroup) -> bool {
        self.ambient_rank() == other.ambient_rank() && self.relation_lattice == other.relation_lattice
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::new(self.relations.block_diag(&other.relations))
    }

    /// Canonical representative of the class of `x`: Smith coordinates, with
    /// torsion coordinates reduced into `[0, dᵢ)`.
    pub fn normal_form(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let mut y = self.snf_left.mul_vec(x)?;
        for (yi, d) in y.iter_mut().zip(&self.invariant_factors) {
            *yi = yi.mod_floor(d);
        }
        Ok(y)
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.relation_lattice.contains(x)?.is_some())
    }
}

/// `ℤ^rows / colspan(a)` together with the projection from the free group.
pub fn cokernel(a: &IntMatrix) -> (FgAbGroup, GroupHom) {
    let group = FgAbGroup::new(a.clone());
    let free = FgAbGroup::free(a.rows());
    let projection = GroupHom {
        domain: free,
        lift: IntMatrix::identity(a.rows()),
        codomain: group.clone(),
    };
    (group, projection)
}

/// A homomorphism given by a lift between the ambient free groups.
#[derive(Clone, Debug)]
pub struct GroupHom {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    lift: IntMatrix,
}

impl GroupHom {
    /// Checked constructor: the lift must have the right shape and carry
    /// domain relations into codomain relations.
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, lift: IntMatrix) -> Result<Self> {
        let f = Self::from_parts(domain, codomain, lift)?;
        if !f.is_well_defined() {
            return Err(Error::NotWellDefined(format!(
                "lift {} does not map relations into relations",
                f.lift
            )));
        }
        Ok(f)
    }

    /// Shape-checked only; use [`GroupHom::is_well_defined`] to test.
    pub fn from_parts(domain: FgAbGroup, codomain: FgAbGroup, lift: IntMatrix) -> Result<Self> {
        if lift.rows() != codomain.ambient_rank() || lift.cols() != domain.ambient_rank() {
            return Err(Error::Dimension(format!(
                "lift is {}×{} but the groups have ambient ranks {} → {}",
                lift.rows(),
                lift.cols(),
                domain.ambient_rank(),
                codomain.ambient_rank()
            )));
        }
        Ok(GroupHom {
            domain,
            codomain,
            lift,
        })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            lift: IntMatrix::identity(g.ambient_rank()),
        }
    }

    pub fn zero(domain: &FgAbGroup, codomain: &FgAbGroup) -> Self {
        GroupHom {
            lift: IntMatrix::zeros(codomain.ambient_rank(), domain.ambient_rank()),
            domain: domain.clone(),
            codomain: codomain.clone(),
        }
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbGroup {
        &self.codomain
    }

    pub fn lift(&self) -> &IntMatrix {
        &self.lift
    }

    pub fn is_well_defined(&self) -> bool {
        let images = self
            .lift
            .mul(self.domain.relations())
            .expect("shape checked at construction");
        self.codomain
            .relation_lattice()
            .contains_all(&images)
            .expect("shape checked at construction")
    }

    /// Image of an ambient vector of the domain.
    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.lift.mul_vec(x)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &GroupHom) -> Result<GroupHom> {
        if !f.codomain.same_presentation(&self.domain) {
            return Err(Error::PresentationMismatch(
                "codomain of the inner map differs from the domain of the outer map".into(),
            ));
        }
        Ok(GroupHom {
            domain: f.domain.clone(),
            codomain: self.codomain.clone(),
            lift: self.lift.mul(&f.lift)?,
        })
    }

    /// `{x ∈ ℤⁿ : lift·x ∈ relations(codomain)}`, a lattice containing the
    /// domain relations.
    pub fn kernel_lattice(&self) -> HermiteLattice {
        let n = self.domain.ambient_rank();
        let combined = self
            .lift
            .hcat(self.codomain.relations())
            .expect("row counts agree");
        let k = kernel_basis(&combined);
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..k.cols()).collect();
        lattice_of_columns(&k.select(&rows, &cols))
    }

    /// The kernel as a group in its own right, with its inclusion.
    pub fn kernel_subgroup(&self) -> (FgAbGroup, GroupHom) {
        let lattice = self.kernel_lattice();
        let coords: Vec<Vec<BigInt>> = self
            .domain
            .relations()
            .columns()
            .iter()
            .map(|r| {
                lattice
                    .contains(r)
                    .expect("dimensions agree")
                    .expect("well-defined maps kill relations")
            })
            .collect();
        let kernel = FgAbGroup::new(IntMatrix::from_columns(lattice.rank(), &coords));
        let inclusion = GroupHom {
            domain: kernel.clone(),
            codomain: self.domain.clone(),
            lift: lattice.basis().clone(),
        };
        (kernel, inclusion)
    }

    /// `lift·ℤⁿ + relations(codomain)`, canonicalised.
    pub fn image_subgroup(&self) -> HermiteLattice {
        lattice_of_columns(
            &self
                .lift
                .hcat(self.codomain.relations())
                .expect("row counts agree"),
        )
    }

    /// The quotient of the codomain by the image.
    pub fn cokernel(&self) -> FgAbGroup {
        FgAbGroup::new(
            self.codomain
                .relations()
                .hcat(&self.lift)
                .expect("row counts agree"),
        )
    }

    pub fn equal_as_maps(&self, other: &GroupHom) -> Result<bool> {
        if !self.domain.same_presentation(&other.domain) || !self.codomain.same_presentation(&other.codomain) {
            return Err(Error::PresentationMismatch(
                "maps compared as equal must share domain and codomain".into(),
            ));
        }
        let diff = self.lift.sub(&other.lift)?;
        self.codomain.relation_lattice().contains_all(&diff)
    }

    pub fn is_zero_map(&self) -> bool {
        self.codomain
            .relation_lattice()
            .contains_all(&self.lift)
            .expect("shape checked")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_lattice() == *self.domain.relation_lattice()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_subgroup().is_full()
    }
}

/// Exactness of `A --f--> B --g--> C` at `B`: `im f = ker g`.
pub fn is_exact_at(f: &GroupHom, g: &GroupHom) -> Result<bool> {
    if !f.codomain.same_presentation(&g.domain) {
        return Err(Error::PresentationMismatch(
            "exactness needs codomain(f) = domain(g)".into(),
        ));
    }
    Ok(f.image_subgroup() == g.kernel_lattice())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn well_definedness_examples() {
        let z2 = FgAbGroup::cyclic(2);
        assert!(GroupHom::identity(&z2).is_well_defined());
        let to_z = GroupHom::from_parts(z2.clone(), FgAbGroup::free(1), m(&[&[1]])).unwrap();
        assert!(!to_z.is_well_defined());
        let to_z6 = GroupHom::from_parts(z2.clone(), FgAbGroup::cyclic(6), m(&[&[3]])).unwrap();
        assert!(to_z6.is_well_defined());
        assert!(GroupHom::from_parts(z2, FgAbGroup::free(2), m(&[&[1]])).is_err());
    }

    #[test]
    fn composition() {
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::free(2);
        let z3 = FgAbGroup::free(3);
        let f = GroupHom::new(z.clone(), z2.clone(), m(&[&[1], &[0]])).unwrap();
        let g = GroupHom::new(z2.clone(), z3.clone(), m(&[&[1, 0], &[0, 1], &[0, 0]])).unwrap();
        let gf = g.compose(&f).unwrap();
        assert_eq!(gf.lift(), &m(&[&[1], &[0], &[0]]));
        assert!(f.compose(&g).is_err());
        let id = GroupHom::identity(&z2);
        assert!(id.compose(&f).unwrap().equal_as_maps(&f).unwrap());
    }

    #[test]
    fn kernels() {
        let z4 = FgAbGroup::cyclic(4);
        let zero = GroupHom::zero(&z4, &z4);
        let (k, _) = zero.kernel_subgroup();
        assert_eq!(k.order(), Some(BigInt::from(4)));
        let (k, _) = GroupHom::identity(&z4).kernel_subgroup();
        assert!(k.is_trivial());
        let twice = GroupHom::new(z4.clone(), z4.clone(), m(&[&[2]])).unwrap();
        let (k, inc) = twice.kernel_subgroup();
        assert_eq!(k.group_type(), FgAbGroup::cyclic(2).group_type());
        assert!(inc.is_well_defined());
        assert!(inc.is_injective());
    }

    #[test]
    fn images() {
        let z4 = FgAbGroup::cyclic(4);
        assert_eq!(GroupHom::zero(&z4, &z4).image_subgroup(), *z4.relation_lattice());
        assert!(GroupHom::identity(&z4).image_subgroup().is_full());
        let twice = GroupHom::new(z4.clone(), z4.clone(), m(&[&[2]])).unwrap();
        assert_eq!(twice.image_subgroup().basis(), &m(&[&[2]]));
    }

    #[test]
    fn equality_as_maps() {
        let z2 = FgAbGroup::cyclic(2);
        let z = FgAbGroup::free(1);
        let one = GroupHom::new(z.clone(), z2.clone(), m(&[&[1]])).unwrap();
        let three = GroupHom::new(z.clone(), z2.clone(), m(&[&[3]])).unwrap();
        assert!(one.equal_as_maps(&three).unwrap());
        let a = GroupHom::new(z.clone(), z.clone(), m(&[&[1]])).unwrap();
        let b = GroupHom::new(z.clone(), z.clone(), m(&[&[2]])).unwrap();
        assert!(!a.equal_as_maps(&b).unwrap());
        assert!(a.equal_as_maps(&one).is_err());
    }

    #[test]
    fn exactness_examples() {
        let zero_grp = FgAbGroup::free(0);
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        let incl = GroupHom::zero(&zero_grp, &z);
        assert!(is_exact_at(&incl, &GroupHom::identity(&z)).unwrap());
        let twice = GroupHom::new(z.clone(), z.clone(), m(&[&[2]])).unwrap();
        let proj = GroupHom::new(z.clone(), z2.clone(), m(&[&[1]])).unwrap();
        assert!(is_exact_at(&twice, &proj).unwrap());
        assert!(is_exact_at(&GroupHom::zero(&z, &z), &GroupHom::identity(&z)).unwrap());
        assert!(!is_exact_at(&GroupHom::identity(&z), &GroupHom::identity(&z)).unwrap());
        assert!(is_exact_at(&proj, &twice).is_err());
    }

    #[test]
    fn injective_surjective() {
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        let id = GroupHom::identity(&z);
        assert!(id.is_injective() && id.is_surjective());
        let twice = GroupHom::new(z.clone(), z.clone(), m(&[&[2]])).unwrap();
        assert!(twice.is_injective() && !twice.is_surjective());
        let proj = GroupHom::new(z.clone(), z2, m(&[&[1]])).unwrap();
        assert!(proj.is_surjective() && !proj.is_injective());
    }

    #[test]
    fn cokernel_examples() {
        let (g, p) = cokernel(&m(&[&[-2, -4]]));
        assert_eq!(g.group_type().to_string(), "ℤ/2");
        assert!(p.is_well_defined() && p.is_surjective());
        assert_eq!(cokernel(&IntMatrix::zeros(1, 2)).0.group_type().to_string(), "ℤ");
        assert!(cokernel(&IntMatrix::identity(3)).0.is_trivial());
    }

    #[test]
    fn normal_forms_identify_classes() {
        let g = FgAbGroup::new(m(&[&[2, 0], &[0, 3]]));
        let a = g.normal_form(&[BigInt::from(1), BigInt::from(1)]).unwrap();
        let b = g.normal_form(&[BigInt::from(3), BigInt::from(-2)]).unwrap();
        assert_eq!(a, b);
        assert!(g.is_zero_element(&[BigInt::from(4), BigInt::from(6)]).unwrap());
    }
}
