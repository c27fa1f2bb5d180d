//! Stability of `A^F` under the Miyashita-Ulbrich action, normality of the
//! matching Hopf subalgebra, and simplicity of the deformation.

use rayon::prelude::*;

use crate::cocycle::alpha_f_regular;
use crate::galois::{BasisElement, GaloisObject};
use crate::group::{normal_subgroups, Elem, GroupError, Subgroup};
use crate::invariants::{f_orbits, invariant_basis};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum NormalityError {
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group has nontrivial center of order {0}")]
    CenterNotTrivial(usize),
    #[error("index {0} is not prime")]
    IndexNotPrime(usize),
    #[error("criterion says stable={criterion} but S contained in F is {contains_s}")]
    Inconsistent { criterion: bool, contains_s: bool },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A regular class `(g_i, s)` and the first `f ∈ F` not commuting with `g_i s g_i⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub class: BasisElement,
    pub f: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalityVerdict {
    pub stable: bool,
    pub witnesses: Vec<Witness>,
    pub regular_classes: Vec<BasisElement>,
}

impl NormalityVerdict {
    fn from_parts(witnesses: Vec<Witness>, regular_classes: Vec<BasisElement>) -> Self {
        NormalityVerdict { stable: witnesses.is_empty(), witnesses, regular_classes }
    }
}

fn first_noncommuting(f: &Subgroup, x: Elem) -> Option<Elem> {
    let g = f.group();
    f.elements().iter().copied().find(|&y| !g.commute(y, x))
}

/// `A^F` is stable iff `g⁻¹Fg ⊆ C_G(s)` for every `(α,F)`-regular class `(g,s)`.
pub fn mu_stable_criterion(a: &GaloisObject, f: &Subgroup) -> NormalityVerdict {
    let mut witnesses = Vec::new();
    let mut regular = Vec::new();
    for o in f_orbits(a, f).into_iter().filter(|o| o.regular) {
        let rep = o.representative;
        regular.push(rep);
        if let Some(y) = first_noncommuting(f, a.mu_degree(rep)) {
            witnesses.push(Witness { class: rep, f: y });
        }
    }
    NormalityVerdict::from_parts(witnesses, regular)
}

/// Checks directly that every homogeneous component of every invariant
/// basis vector is again `F`-invariant.
pub fn mu_stable_direct(a: &GaloisObject, f: &Subgroup) -> bool {
    let gens = f.generators();
    invariant_basis(a, f).iter().all(|v| {
        a.mu_degrees(v).into_iter().all(|sigma| {
            let c = a.mu_component(v, sigma);
            gens.iter().all(|&x| a.act(x, &c) == c)
        })
    })
}

/// Normal `F` only: stable iff `F ⊆ C_G(s)` for every `(α,F)`-regular `s ∈ S`.
pub fn hopf_subalgebra_normal(a: &GaloisObject, f: &Subgroup) -> Result<NormalityVerdict, NormalityError> {
    if !f.is_normal() {
        return Err(NormalityError::NotNormal);
    }
    let mut witnesses = Vec::new();
    let mut regular = Vec::new();
    for &s in a.subgroup().elements() {
        if !alpha_f_regular(a.cocycle(), f, 0, s) {
            continue;
        }
        let class = BasisElement { coset: 0, s };
        regular.push(class);
        if let Some(y) = first_noncommuting(f, s) {
            witnesses.push(Witness { class, f: y });
        }
    }
    Ok(NormalityVerdict::from_parts(witnesses, regular))
}

#[derive(Debug, Clone)]
pub struct ClassificationRow {
    pub subgroup: Subgroup,
    pub index: usize,
    pub contains_s: bool,
    pub proper_nontrivial: bool,
    pub verdict: NormalityVerdict,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    /// One row per normal subgroup, ordered by order then elements.
    pub rows: Vec<ClassificationRow>,
    pub simple: bool,
}

impl ClassificationReport {
    /// Proper nontrivial normal subgroups with a stable verdict.
    pub fn stable_proper(&self) -> impl Iterator<Item = &ClassificationRow> {
        self.rows.iter().filter(|r| r.proper_nontrivial && r.verdict.stable)
    }
}

/// Simple iff no proper nontrivial normal `F` gives a normal Hopf subalgebra.
pub fn is_simple_deformation(a: &GaloisObject, lattice_cap: usize) -> Result<ClassificationReport, NormalityError> {
    let normals = normal_subgroups(a.group(), lattice_cap)?;
    let rows = normals
        .into_par_iter()
        .map(|f| {
            let verdict = hopf_subalgebra_normal(a, &f)?;
            Ok(ClassificationRow {
                index: f.index(),
                contains_s: a.subgroup().is_subset_of(&f),
                proper_nontrivial: !f.is_trivial() && !f.is_whole(),
                subgroup: f,
                verdict,
            })
        })
        .collect::<Result<Vec<_>, NormalityError>>()?;
    let simple = !rows.iter().any(|r| r.proper_nontrivial && r.verdict.stable);
    Ok(ClassificationReport { rows, simple })
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn is_prime_index(f: &Subgroup) -> bool {
    is_prime(f.index())
}

/// With `Z(G) = 1` and `F` normal of prime index, stability holds exactly
/// when `S ⊆ F`. Returns the common truth value.
pub fn prime_index_theorem_check(a: &GaloisObject, f: &Subgroup) -> Result<bool, NormalityError> {
    let z = a.group().center();
    if !z.is_trivial() {
        return Err(NormalityError::CenterNotTrivial(z.order()));
    }
    if !f.is_normal() {
        return Err(NormalityError::NotNormal);
    }
    if !is_prime(f.index()) {
        return Err(NormalityError::IndexNotPrime(f.index()));
    }
    let criterion = mu_stable_criterion(a, f).stable;
    let contains_s = a.subgroup().is_subset_of(f);
    if criterion != contains_s {
        return Err(NormalityError::Inconsistent { criterion, contains_s });
    }
    Ok(criterion)
}
