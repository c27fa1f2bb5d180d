//! The Galois object `A(G,S,α) = kG ⊗_{kS} k_αS`.
//!
//! The basis is `g_i ⊗ x_s` where `g_i` runs over the least-index left coset
//! representatives of `S` and `s` over `S`. The `G`-action and the product are
//! computed on that basis and re-canonicalized immediately; coefficients of
//! single basis products are roots of unity, general elements carry
//! cyclotomic integers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::cocycle::{
    is_nondegenerate, twisted_conjugation_unchecked, CocycleError, TwoCocycle,
};
use crate::cyclotomic::{CycInt, RootExp};
use crate::group::{CosetDecomposition, Elem, FiniteGroup, Subgroup};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("cocycle is degenerate; regular elements {0:?}")]
    Degenerate(Vec<Elem>),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error("coefficient modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
}

/// `g_i ⊗ x_s`, ordered by coset index then by `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub coset: usize,
    pub s: Elem,
}

/// A sparse combination of basis elements with coefficients of type `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sparse<C> {
    modulus: u32,
    terms: BTreeMap<BasisElement, C>,
}

/// Coefficients are roots of unity; supports never collide.
pub type MonomialVector = Sparse<RootExp>;

/// Coefficients in `Z[ζ_m]`, never stored as zero.
pub type AlgebraElement = Sparse<CycInt>;

impl<C: Clone> Sparse<C> {
    pub fn zero(modulus: u32) -> Self {
        Sparse { modulus, terms: BTreeMap::new() }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &BasisElement) -> Option<&C> {
        self.terms.get(b)
    }

    pub fn support(&self) -> impl Iterator<Item = &BasisElement> {
        self.terms.keys()
    }

    /// Keeps only terms whose basis element satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&BasisElement) -> bool) -> Self {
        Sparse {
            modulus: self.modulus,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }
}

impl MonomialVector {
    pub fn basis(modulus: u32, b: BasisElement) -> Self {
        Self::from_terms(modulus, [(b, RootExp::one(modulus))])
    }

    /// Panics if two terms share a basis element.
    pub fn from_terms(modulus: u32, terms: impl IntoIterator<Item = (BasisElement, RootExp)>) -> Self {
        let mut map = BTreeMap::new();
        for (b, c) in terms {
            assert_eq!(c.modulus(), modulus, "root modulus mismatch");
            assert!(map.insert(b, c).is_none(), "monomial supports collide at {b:?}");
        }
        Sparse { modulus, terms: map }
    }

    pub fn to_algebra(&self) -> AlgebraElement {
        Sparse {
            modulus: self.modulus,
            terms: self.terms.iter().map(|(b, c)| (*b, c.to_cyc())).collect(),
        }
    }
}

impl AlgebraElement {
    pub fn basis(modulus: u32, b: BasisElement) -> Self {
        let mut out = Self::zero(modulus);
        out.add_term(b, CycInt::one(modulus));
        out
    }

    /// Adds `c · b`, dropping the term if it cancels.
    pub fn add_term(&mut self, b: BasisElement, c: CycInt) {
        assert_eq!(c.modulus(), self.modulus, "coefficient modulus mismatch");
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CycInt) -> AlgebraElement {
        let mut out = Self::zero(self.modulus);
        for (b, x) in &self.terms {
            out.add_term(*b, x * c);
        }
        out
    }
}

/// The Galois object attached to `(G, S, α)`.
#[derive(Debug, Clone)]
pub struct GaloisObject {
    group: Arc<FiniteGroup>,
    alpha: TwoCocycle,
    cosets: CosetDecomposition,
}

impl GaloisObject {
    /// Requires `α` valid, non-degenerate and inverse-normalized.
    pub fn build(alpha: &TwoCocycle) -> Result<Self, GaloisError> {
        alpha.validate().into_result()?;
        if !is_nondegenerate(alpha) {
            return Err(GaloisError::Degenerate(crate::cocycle::alpha_regular_elements(alpha)));
        }
        if !alpha.is_inverse_normalized() {
            let g = alpha.subgroup().group();
            let s = alpha
                .subgroup()
                .elements()
                .iter()
                .copied()
                .find(|&s| alpha.exp(s, g.inv(s)) != 0)
                .expect("some element fails");
            return Err(CocycleError::NotInverseNormalized(s).into());
        }
        Ok(Self::build_unvalidated(alpha))
    }

    /// Skips every check on `α`. Only meant for negative controls, where a
    /// deliberately broken cocycle must still produce an object to test.
    pub fn build_unvalidated(alpha: &TwoCocycle) -> Self {
        let s = alpha.subgroup();
        GaloisObject {
            group: s.group().clone(),
            alpha: alpha.clone(),
            cosets: CosetDecomposition::new(s),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.alpha.subgroup()
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.alpha
    }

    pub fn cosets(&self) -> &CosetDecomposition {
        &self.cosets
    }

    pub fn modulus(&self) -> u32 {
        self.alpha.modulus()
    }

    /// `[G:S]·|S| = |G|`.
    pub fn dim(&self) -> usize {
        self.cosets.len() * self.subgroup().order()
    }

    /// Position of `b` in the canonical basis order.
    pub fn basis_index(&self, b: BasisElement) -> usize {
        let pos = self.subgroup().position(b.s).expect("basis element outside S");
        b.coset * self.subgroup().order() + pos
    }

    pub fn basis_at(&self, k: usize) -> BasisElement {
        let n = self.subgroup().order();
        BasisElement { coset: k / n, s: self.subgroup().elements()[k % n] }
    }

    pub fn basis(&self) -> impl Iterator<Item = BasisElement> + '_ {
        (0..self.dim()).map(|k| self.basis_at(k))
    }

    /// Basis element for an arbitrary pair `(g, s)`: writing `g = g_i t`,
    /// `g ⊗ x_s = ζ^c (g_i ⊗ x_{tst⁻¹})`.
    pub fn canonical(&self, g: Elem, s: Elem) -> (RootExp, BasisElement) {
        let (i, t) = self.cosets.rep_of(g);
        let (c, s2) = twisted_conjugation_unchecked(&self.alpha, t, s);
        (c, BasisElement { coset: i, s: s2 })
    }

    /// `g · (g_i ⊗ x_s)`.
    #[inline]
    pub fn act_basis(&self, g: Elem, b: BasisElement) -> (RootExp, BasisElement) {
        self.canonical(self.group.mul(g, self.cosets.rep(b.coset)), b.s)
    }

    pub fn act(&self, g: Elem, v: &MonomialVector) -> MonomialVector {
        MonomialVector::from_terms(
            v.modulus,
            v.terms().map(|(b, c)| {
                let (c2, b2) = self.act_basis(g, *b);
                (b2, *c * c2)
            }),
        )
    }

    pub fn act_algebra(&self, g: Elem, v: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(v.modulus);
        for (b, c) in v.terms() {
            let (c2, b2) = self.act_basis(g, *b);
            out.add_term(b2, c.mul_root(c2));
        }
        out
    }

    /// Product of two basis elements; `None` when it vanishes.
    ///
    /// `(g_i ⊗ x_s)(g_j ⊗ x_t)` is zero unless `u = g_j⁻¹ g_i ∈ S`, in which
    /// case it is `g_j ⊗ (u ▷ x_s) x_t`.
    pub fn multiply_basis(&self, b1: BasisElement, b2: BasisElement) -> Option<(RootExp, BasisElement)> {
        let g = &self.group;
        let gi = self.cosets.rep(b1.coset);
        let gj = self.cosets.rep(b2.coset);
        let u = g.mul(g.inv(gj), gi);
        if !self.subgroup().contains(u) {
            return None;
        }
        let (c, us) = twisted_conjugation_unchecked(&self.alpha, u, b1.s);
        let coef = c * self.alpha.value(us, b2.t());
        Some((coef, BasisElement { coset: b2.coset, s: g.mul(us, b2.s) }))
    }

    pub fn multiply(&self, u: &AlgebraElement, w: &AlgebraElement) -> Result<AlgebraElement, GaloisError> {
        if u.modulus != w.modulus || u.modulus != self.modulus() {
            return Err(GaloisError::ModulusMismatch(u.modulus, w.modulus));
        }
        let mut out = AlgebraElement::zero(u.modulus);
        for (b1, c1) in u.terms() {
            for (b2, c2) in w.terms() {
                if let Some((r, b)) = self.multiply_basis(*b1, *b2) {
                    out.add_term(b, (c1 * c2).mul_root(r));
                }
            }
        }
        Ok(out)
    }

    /// Miyashita-Ulbrich degree `g_i s g_i⁻¹`.
    #[inline]
    pub fn mu_degree(&self, b: BasisElement) -> Elem {
        self.group.conj(self.cosets.rep(b.coset), b.s)
    }

    /// Homogeneous component of degree `sigma`.
    pub fn mu_component<C: Clone>(&self, v: &Sparse<C>, sigma: Elem) -> Sparse<C> {
        v.filter(|b| self.mu_degree(*b) == sigma)
    }

    /// Degrees occurring in `v`, ascending.
    pub fn mu_degrees<C: Clone>(&self, v: &Sparse<C>) -> Vec<Elem> {
        let mut d: Vec<Elem> = v.support().map(|b| self.mu_degree(*b)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Trace of the matrix of `g` acting on `A`.
    pub fn action_trace(&self, g: Elem) -> CycInt {
        let mut tr = CycInt::zero(self.modulus());
        for b in self.basis() {
            let (c, b2) = self.act_basis(g, b);
            if b2 == b {
                tr = &tr + &c.to_cyc();
            }
        }
        tr
    }

    /// `g_i ⊗ x_s` with group labels.
    pub fn format_basis(&self, b: BasisElement) -> String {
        format!(
            "{} ⊗ x_{}",
            self.group.label(self.cosets.rep(b.coset)),
            self.group.label(b.s)
        )
    }

    /// `ζ^e · (g_i ⊗ x_s) + …` in basis order; unit coefficients are omitted.
    pub fn format_monomial(&self, v: &MonomialVector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (b, c)) in v.terms().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            if c.is_one() {
                let _ = write!(out, "({})", self.format_basis(*b));
            } else {
                let _ = write!(out, "{} · ({})", c, self.format_basis(*b));
            }
        }
        out
    }

    pub fn format_algebra(&self, v: &AlgebraElement) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (b, c)) in v.terms().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "({}) · ({})", c, self.format_basis(*b));
        }
        out
    }
}

impl BasisElement {
    #[inline]
    fn t(&self) -> Elem {
        self.s
    }
}
