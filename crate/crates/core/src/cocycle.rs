//! Root-of-unity valued 2-cocycles on a subgroup `S`.
//!
//! A cocycle is stored as a table of exponents: entry `(s, t)` stands for
//! `α(s,t) = ζ_m^e`. The cocycle identity used throughout is
//! `α(r,s)α(rs,t) = α(s,t)α(r,st)`, which is what associativity of the
//! twisted group algebra `x_s x_t = α(s,t) x_{st}` requires.

use std::fmt;

use crate::cyclotomic::{lcm, RootExp};
use crate::group::{Elem, Subgroup};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("table has {found} entries, expected {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("element {0} is not in the subgroup")]
    NotInSubgroup(Elem),
    #[error("cocycle is not normalized at element {0}")]
    NotNormalized(Elem),
    #[error("cocycle identity fails at ({0}, {1}, {2})")]
    IdentityViolated(Elem, Elem, Elem),
    #[error("cocycle is not inverse-normalized: α(s, s⁻¹) ≠ 1 at s = {0}")]
    NotInverseNormalized(Elem),
    #[error("subgroup is not elementary abelian of order {q}²: {reason}")]
    BadShape { q: u32, reason: String },
    #[error("subgroups differ")]
    SubgroupMismatch,
}

/// Outcome of [`TwoCocycle::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Validation {
    /// Triples `(r, s, t)` where the cocycle identity fails.
    pub violations: Vec<(Elem, Elem, Elem)>,
    /// Elements `s` with `α(1,s) ≠ 1` or `α(s,1) ≠ 1`.
    pub unnormalized: Vec<Elem>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.unnormalized.is_empty()
    }

    pub fn into_result(self) -> Result<(), CocycleError> {
        if let Some(&s) = self.unnormalized.first() {
            return Err(CocycleError::NotNormalized(s));
        }
        if let Some(&(r, s, t)) = self.violations.first() {
            return Err(CocycleError::IdentityViolated(r, s, t));
        }
        Ok(())
    }
}

/// A 2-cocycle `α: S × S → μ_m`.
#[derive(Clone, PartialEq, Eq)]
pub struct TwoCocycle {
    subgroup: Subgroup,
    modulus: u32,
    table: Vec<u32>,
}

impl fmt::Debug for TwoCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwoCocycle")
            .field("subgroup", &self.subgroup.elements())
            .field("modulus", &self.modulus)
            .field("table", &self.table)
            .finish()
    }
}

impl TwoCocycle {
    /// Wraps a row-major exponent table indexed by positions in `S`.
    ///
    /// Only the shape is checked; call [`TwoCocycle::validate`] or use
    /// [`TwoCocycle::checked`] for the algebraic conditions.
    pub fn new(subgroup: &Subgroup, modulus: u32, table: Vec<i64>) -> Result<Self, CocycleError> {
        if modulus == 0 {
            return Err(CocycleError::ZeroModulus);
        }
        let n = subgroup.order();
        if table.len() != n * n {
            return Err(CocycleError::ShapeMismatch { expected: n * n, found: table.len() });
        }
        let table = table
            .into_iter()
            .map(|e| e.rem_euclid(modulus as i64) as u32)
            .collect();
        Ok(TwoCocycle { subgroup: subgroup.clone(), modulus, table })
    }

    /// Builds the table from a function of element pairs.
    pub fn from_fn(subgroup: &Subgroup, modulus: u32, f: impl Fn(Elem, Elem) -> i64) -> Self {
        let els = subgroup.elements();
        let table = els
            .iter()
            .flat_map(|&s| els.iter().map(move |&t| (s, t)))
            .map(|(s, t)| f(s, t))
            .collect();
        Self::new(subgroup, modulus, table).expect("shape is correct by construction")
    }

    /// Like [`TwoCocycle::new`] but rejects tables failing validation.
    pub fn checked(subgroup: &Subgroup, modulus: u32, table: Vec<i64>) -> Result<Self, CocycleError> {
        let a = Self::new(subgroup, modulus, table)?;
        a.validate().into_result()?;
        Ok(a)
    }

    pub fn trivial(subgroup: &Subgroup) -> Self {
        Self::from_fn(subgroup, 1, |_, _| 0)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    fn slot(&self, s: Elem, t: Elem) -> usize {
        let n = self.subgroup.order();
        let i = self.subgroup.position(s).expect("first argument not in S");
        let j = self.subgroup.position(t).expect("second argument not in S");
        i * n + j
    }

    /// Exponent of `α(s, t)`.
    #[inline]
    pub fn exp(&self, s: Elem, t: Elem) -> u32 {
        self.table[self.slot(s, t)]
    }

    pub fn value(&self, s: Elem, t: Elem) -> RootExp {
        RootExp::new(self.modulus, self.exp(s, t) as i64)
    }

    /// Row-major exponents over the sorted elements of `S`.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Copy with one entry replaced; used for negative controls.
    pub fn with_entry(&self, s: Elem, t: Elem, e: i64) -> Self {
        let mut out = self.clone();
        let k = self.slot(s, t);
        out.table[k] = e.rem_euclid(self.modulus as i64) as u32;
        out
    }

    /// Exhaustive check of normalization and the cocycle identity.
    pub fn validate(&self) -> Validation {
        let g = self.subgroup.group();
        let els = self.subgroup.elements();
        let m = self.modulus as u64;
        let mut v = Validation::default();
        for &s in els {
            if self.exp(0, s) != 0 || self.exp(s, 0) != 0 {
                v.unnormalized.push(s);
            }
        }
        for &r in els {
            for &s in els {
                let rs = g.mul(r, s);
                let left = self.exp(r, s) as u64;
                for &t in els {
                    let lhs = (left + self.exp(rs, t) as u64) % m;
                    let rhs = (self.exp(s, t) as u64 + self.exp(r, g.mul(s, t)) as u64) % m;
                    if lhs != rhs {
                        v.violations.push((r, s, t));
                    }
                }
            }
        }
        v
    }

    /// True iff `α(s, s⁻¹) = 1` for every `s`.
    pub fn is_inverse_normalized(&self) -> bool {
        let g = self.subgroup.group();
        self.subgroup.elements().iter().all(|&s| self.exp(s, g.inv(s)) == 0)
    }

    /// Same cocycle viewed in `μ_target`.
    pub fn lift(&self, target: u32) -> Result<Self, crate::cyclotomic::CyclotomicError> {
        if target == 0 || target % self.modulus != 0 {
            return Err(crate::cyclotomic::CyclotomicError::NotAMultiple {
                modulus: self.modulus,
                target,
            });
        }
        let k = target / self.modulus;
        Ok(TwoCocycle {
            subgroup: self.subgroup.clone(),
            modulus: target,
            table: self.table.iter().map(|&e| e * k).collect(),
        })
    }

    /// `α(s,t) = α(t,s)`.
    #[inline]
    pub fn commutes(&self, s: Elem, t: Elem) -> bool {
        self.exp(s, t) == self.exp(t, s)
    }
}

/// A 1-cochain `φ: S → μ_m` with `φ(1) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCochain {
    subgroup: Subgroup,
    modulus: u32,
    values: Vec<u32>,
}

impl OneCochain {
    pub fn from_fn(subgroup: &Subgroup, modulus: u32, f: impl Fn(Elem) -> i64) -> Self {
        assert!(modulus > 0, "cochain with modulus 0");
        let values: Vec<u32> = subgroup
            .elements()
            .iter()
            .map(|&s| if s == 0 { 0 } else { f(s).rem_euclid(modulus as i64) as u32 })
            .collect();
        OneCochain { subgroup: subgroup.clone(), modulus, values }
    }

    pub fn trivial(subgroup: &Subgroup) -> Self {
        Self::from_fn(subgroup, 1, |_| 0)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn exp(&self, s: Elem) -> u32 {
        self.values[self.subgroup.position(s).expect("element not in S")]
    }

    pub fn value(&self, s: Elem) -> RootExp {
        RootExp::new(self.modulus, self.exp(s) as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&e| e == 0)
    }

    fn lift(&self, target: u32) -> Self {
        let k = target / self.modulus;
        OneCochain {
            subgroup: self.subgroup.clone(),
            modulus: target,
            values: self.values.iter().map(|&e| e * k).collect(),
        }
    }
}

/// `β(x,y) = α(x,y) φ(x) φ(y) φ(xy)⁻¹`, computed at the lcm of both moduli.
pub fn multiply_by_coboundary(
    alpha: &TwoCocycle,
    phi: &OneCochain,
) -> Result<TwoCocycle, CocycleError> {
    if alpha.subgroup != phi.subgroup {
        return Err(CocycleError::SubgroupMismatch);
    }
    let m = lcm(alpha.modulus, phi.modulus);
    let a = alpha.lift(m).expect("lcm is a multiple");
    let p = phi.lift(m);
    let g = alpha.subgroup.group().clone();
    Ok(TwoCocycle::from_fn(&alpha.subgroup, m, |x, y| {
        a.exp(x, y) as i64 + p.exp(x) as i64 + p.exp(y) as i64 - p.exp(g.mul(x, y)) as i64
    }))
}

/// Smallest `x` in `0..m` with `2x ≡ c (mod m)`, if any.
fn half_mod(c: u32, m: u32) -> Option<u32> {
    if m % 2 == 1 {
        Some(((c as u64 * ((m as u64 + 1) / 2)) % m as u64) as u32)
    } else if c % 2 == 0 {
        Some(c / 2)
    } else {
        None
    }
}

/// Cohomologous cocycle with `β(s, s⁻¹) = 1` for all `s`, plus the cochain
/// `φ` with `β = α · dφ`.
///
/// For `s ≠ s⁻¹` the pair gets `φ(s) = 1`, `φ(s⁻¹) = α(s, s⁻¹)⁻¹` (the pair
/// member with the smaller index plays `s`). An involution needs
/// `φ(s)² = α(s,s)⁻¹`; when that has no square root in `μ_m` the modulus is
/// doubled first.
pub fn normalize_inverse_pairs(alpha: &TwoCocycle) -> (TwoCocycle, OneCochain) {
    let g = alpha.subgroup.group().clone();
    let els = alpha.subgroup.elements().to_vec();
    let needs_doubling = els.iter().any(|&s| {
        s != 0 && g.inv(s) == s && {
            let target = (alpha.modulus - alpha.exp(s, s)) % alpha.modulus;
            half_mod(target, alpha.modulus).is_none()
        }
    });
    let alpha = if needs_doubling {
        alpha.lift(alpha.modulus * 2).expect("doubling")
    } else {
        alpha.clone()
    };
    let m = alpha.modulus;
    let mut phi = vec![0i64; els.len()];
    for (k, &s) in els.iter().enumerate() {
        let si = g.inv(s);
        if s == 0 {
            continue;
        }
        if si == s {
            let target = (m - alpha.exp(s, s)) % m;
            phi[k] = half_mod(target, m).expect("square root exists after doubling") as i64;
        } else if si < s {
            phi[k] = -(alpha.exp(si, s) as i64);
        }
    }
    let phi = OneCochain::from_fn(&alpha.subgroup, m, |s| {
        phi[alpha.subgroup.position(s).expect("in S")]
    });
    let beta = multiply_by_coboundary(&alpha, &phi).expect("same subgroup");
    (beta, phi)
}

/// `{s ∈ S : α(s,t) = α(t,s) for all t ∈ C_S(s)}`.
pub fn alpha_regular_elements(alpha: &TwoCocycle) -> Vec<Elem> {
    let g = alpha.subgroup.group();
    let els = alpha.subgroup.elements();
    els.iter()
        .copied()
        .filter(|&s| {
            els.iter()
                .filter(|&&t| g.commute(s, t))
                .all(|&t| alpha.commutes(s, t))
        })
        .collect()
}

/// True iff the identity is the only α-regular element.
///
/// Only subgroups of square order can carry such a cocycle, so other orders
/// short-circuit to `false`.
pub fn is_nondegenerate(alpha: &TwoCocycle) -> bool {
    let n = alpha.subgroup.order();
    let r = (n as f64).sqrt().round() as usize;
    if r * r != n {
        return false;
    }
    alpha_regular_elements(alpha) == [0]
}

/// An identification of `S` with `Z_q × Z_q`.
#[derive(Debug, Clone)]
pub struct PairLabeling {
    q: u32,
    /// `pairs[k]` labels the `k`-th element of `S`.
    pairs: Vec<(u32, u32)>,
}

impl PairLabeling {
    /// Labels `a^i b^j` by `(i, j)`, checking that `S ≅ Z_q × Z_q` via `(a, b)`.
    pub fn from_generators(subgroup: &Subgroup, q: u32, a: Elem, b: Elem) -> Result<Self, CocycleError> {
        let bad = |reason: &str| CocycleError::BadShape { q, reason: reason.to_string() };
        let g = subgroup.group();
        let qn = q as usize;
        if subgroup.order() != qn * qn {
            return Err(bad("order is not q²"));
        }
        if !subgroup.contains(a) || !subgroup.contains(b) {
            return Err(bad("generators not in S"));
        }
        if !g.commute(a, b) || g.element_order(a) != qn || g.element_order(b) != qn {
            return Err(bad("generators must commute and have order q"));
        }
        let mut pairs = vec![None; subgroup.order()];
        let mut ai = 0;
        for i in 0..q {
            let mut x = ai;
            for j in 0..q {
                let k = subgroup.position(x).ok_or_else(|| bad("product left S"))?;
                if pairs[k].replace((i, j)).is_some() {
                    return Err(bad("generators are dependent"));
                }
                x = g.mul(x, b);
            }
            ai = g.mul(ai, a);
        }
        let pairs = pairs.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| bad("not onto"))?;
        Ok(PairLabeling { q, pairs })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn pair(&self, subgroup: &Subgroup, s: Elem) -> (u32, u32) {
        self.pairs[subgroup.position(s).expect("element not in S")]
    }
}

/// The bilinear cocycle `α((a1,b1),(a2,b2)) = ζ_q^{b1·a2}`.
pub fn bilinear(subgroup: &Subgroup, labeling: &PairLabeling) -> TwoCocycle {
    TwoCocycle::from_fn(subgroup, labeling.q(), |s, t| {
        let (_, b1) = labeling.pair(subgroup, s);
        let (a2, _) = labeling.pair(subgroup, t);
        (b1 as i64) * (a2 as i64)
    })
}

/// [`bilinear`] followed by [`normalize_inverse_pairs`].
pub fn standard_nondegenerate(subgroup: &Subgroup, labeling: &PairLabeling) -> TwoCocycle {
    normalize_inverse_pairs(&bilinear(subgroup, labeling)).0
}

/// `x_s x_t x_{s⁻¹} = ζ^c x_{sts⁻¹}`; returns `(ζ^c, sts⁻¹)`.
pub fn twisted_conjugation(alpha: &TwoCocycle, s: Elem, t: Elem) -> Result<(RootExp, Elem), CocycleError> {
    if !alpha.is_inverse_normalized() {
        let g = alpha.subgroup.group();
        let bad = alpha
            .subgroup
            .elements()
            .iter()
            .copied()
            .find(|&x| alpha.exp(x, g.inv(x)) != 0)
            .expect("some element fails");
        return Err(CocycleError::NotInverseNormalized(bad));
    }
    Ok(twisted_conjugation_unchecked(alpha, s, t))
}

/// [`twisted_conjugation`] without the inverse-normalization check.
#[inline]
pub(crate) fn twisted_conjugation_unchecked(alpha: &TwoCocycle, s: Elem, t: Elem) -> (RootExp, Elem) {
    let g = alpha.subgroup.group();
    let st = g.mul(s, t);
    let c = alpha.exp(s, t) as i64 + alpha.exp(st, g.inv(s)) as i64;
    (RootExp::new(alpha.modulus, c), g.conj(s, t))
}

/// True iff `α(s,t) = α(t,s)` for every `t ∈ C_S(s) ∩ g⁻¹Fg`.
pub fn alpha_f_regular(alpha: &TwoCocycle, f: &Subgroup, g: Elem, s: Elem) -> bool {
    let grp = alpha.subgroup.group();
    alpha.subgroup.elements().iter().all(|&t| {
        !grp.commute(s, t) || !f.contains(grp.conj(g, t)) || alpha.commutes(s, t)
    })
}

/// `(gSg⁻¹, α^g)` with `α^g(gsg⁻¹, gtg⁻¹) = α(s,t)`.
pub fn conjugate_pair(alpha: &TwoCocycle, g: Elem) -> TwoCocycle {
    let grp = alpha.subgroup.group().clone();
    let conj_sub = alpha.subgroup.conjugate(g);
    let gi = grp.inv(g);
    TwoCocycle::from_fn(&conj_sub, alpha.modulus, |x, y| {
        alpha.exp(grp.conj(gi, x), grp.conj(gi, y)) as i64
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{self, FiniteGroup, Subgroup, DEFAULT_MAX_ORDER};
    use std::sync::Arc;

    /// Z2 × Z2 with the raw bilinear cocycle at modulus 2 and labels 1, a, b, c.
    struct Klein {
        s: Subgroup,
        a: Elem,
        b: Elem,
        c: Elem,
        raw: TwoCocycle,
    }

    fn klein() -> Klein {
        let z2 = Arc::new(group::cyclic(2).unwrap());
        let g = Arc::new(group::direct_product(&z2, &z2, 16).unwrap());
        let s = Subgroup::whole(&g);
        let a = g.find("(a,1)").unwrap();
        let b = g.find("(1,a)").unwrap();
        let c = g.mul(a, b);
        let lab = PairLabeling::from_generators(&s, 2, a, b).unwrap();
        let raw = TwoCocycle::from_fn(&s, 2, |x, y| {
            (lab.pair(&s, x).1 * lab.pair(&s, y).0) as i64
        });
        Klein { s, a, b, c, raw }
    }

    #[test]
    fn validation() {
        let k = klein();
        assert!(TwoCocycle::trivial(&k.s).validate().is_valid());
        let v = k.raw.validate();
        assert!(v.is_valid(), "{v:?}");
        let broken = TwoCocycle::from_fn(&k.s, 2, |_, _| 0).with_entry(k.a, k.b, 1);
        let v = broken.validate();
        assert!(!v.is_valid());
        assert!(!v.violations.is_empty());
        let unnorm = TwoCocycle::from_fn(&k.s, 2, |_, _| 0).with_entry(0, k.a, 1);
        assert_eq!(
            TwoCocycle::checked(&k.s, 2, unnorm.table().iter().map(|&e| e as i64).collect()),
            Err(CocycleError::NotNormalized(k.a))
        );
    }

    #[test]
    fn normalization_worked_example() {
        let k = klein();
        assert_eq!(k.raw.exp(k.c, k.c), 1);
        let (beta, phi) = normalize_inverse_pairs(&k.raw);
        assert_eq!(beta.modulus(), 4);
        assert_eq!(phi.exp(k.c), 1);
        assert_eq!(phi.exp(k.a), 0);
        assert_eq!(phi.exp(k.b), 0);
        assert_eq!(beta.exp(k.c, k.c), 0);
        assert_eq!(beta.exp(k.a, k.b), 3);
        assert_eq!(beta.exp(k.b, k.a), 1);
        assert!(beta.is_inverse_normalized());
        assert!(beta.validate().is_valid());
        // A second pass changes nothing.
        let (again, phi2) = normalize_inverse_pairs(&beta);
        assert_eq!(again, beta);
        assert!(phi2.is_trivial());
    }

    #[test]
    fn coboundaries() {
        let k = klein();
        let same = multiply_by_coboundary(&k.raw, &OneCochain::trivial(&k.s)).unwrap();
        assert_eq!(same, k.raw);
        let phi = OneCochain::from_fn(&k.s, 4, |x| if x == k.c { 1 } else { 0 });
        let beta = multiply_by_coboundary(&k.raw, &phi).unwrap();
        assert_eq!(beta.exp(k.c, k.c), 0);
        assert!(beta.validate().is_valid());
        assert_eq!(beta, normalize_inverse_pairs(&k.raw).0);
    }

    #[test]
    fn regular_elements_and_nondegeneracy() {
        let k = klein();
        assert_eq!(alpha_regular_elements(&TwoCocycle::trivial(&k.s)), k.s.elements());
        assert!(!is_nondegenerate(&TwoCocycle::trivial(&k.s)));
        let (beta, _) = normalize_inverse_pairs(&k.raw);
        assert_eq!(alpha_regular_elements(&beta), vec![0]);
        assert!(is_nondegenerate(&beta));
    }

    #[test]
    fn non_square_orders_are_degenerate() {
        let s3 = Arc::new(group::symmetric(3, 10).unwrap());
        let s = Subgroup::whole(&s3);
        let alpha = TwoCocycle::trivial(&s);
        assert!(!is_nondegenerate(&alpha));
        assert!(alpha_regular_elements(&alpha).len() > 1);
    }

    #[test]
    fn standard_cocycles() {
        let k = klein();
        let lab = PairLabeling::from_generators(&k.s, 2, k.a, k.b).unwrap();
        let beta = standard_nondegenerate(&k.s, &lab);
        assert_eq!(beta, normalize_inverse_pairs(&k.raw).0);

        let z3 = Arc::new(group::cyclic(3).unwrap());
        let g = Arc::new(group::direct_product(&z3, &z3, 100).unwrap());
        let s = Subgroup::whole(&g);
        let lab = PairLabeling::from_generators(&s, 3, g.find("(a,1)").unwrap(), g.find("(1,a)").unwrap()).unwrap();
        let alpha = standard_nondegenerate(&s, &lab);
        assert_eq!(alpha.modulus(), 3);
        assert!(alpha.validate().is_valid());
        assert!(alpha.is_inverse_normalized());
        assert!(is_nondegenerate(&alpha));
    }

    #[test]
    fn labeling_rejects_wrong_shapes() {
        let z4 = Arc::new(group::cyclic(4).unwrap());
        let s = Subgroup::whole(&z4);
        assert!(PairLabeling::from_generators(&s, 2, 1, 2).is_err());
        let k = klein();
        assert!(PairLabeling::from_generators(&k.s, 2, k.a, k.a).is_err());
    }

    #[test]
    fn twisted_conjugation_examples() {
        let k = klein();
        let (beta, _) = normalize_inverse_pairs(&k.raw);
        assert_eq!(twisted_conjugation(&beta, 0, k.b).unwrap(), (RootExp::new(4, 0), k.b));
        assert_eq!(twisted_conjugation(&beta, k.a, k.b).unwrap(), (RootExp::new(4, 2), k.b));
        for &s in k.s.elements() {
            assert_eq!(twisted_conjugation(&beta, s, s).unwrap(), (RootExp::new(4, 0), s));
        }
        assert!(matches!(
            twisted_conjugation(&k.raw, k.a, k.b),
            Err(CocycleError::NotInverseNormalized(_))
        ));
    }

    #[test]
    fn f_regularity() {
        let k = klein();
        let (beta, _) = normalize_inverse_pairs(&k.raw);
        let g = k.s.group().clone();
        let whole = Subgroup::whole(&g);
        let f = Subgroup::generated(&g, &[k.a]);
        for &s in k.s.elements() {
            assert!(alpha_f_regular(&beta, &f, 0, 0));
            assert_eq!(
                alpha_f_regular(&beta, &whole, 0, s),
                alpha_regular_elements(&beta).contains(&s)
            );
        }
        let regular: Vec<Elem> = k
            .s
            .elements()
            .iter()
            .copied()
            .filter(|&s| alpha_f_regular(&beta, &f, 0, s))
            .collect();
        assert_eq!(regular, vec![0, k.a]);
    }

    fn d4_klein() -> (Arc<FiniteGroup>, TwoCocycle) {
        let d4 = Arc::new(group::dihedral(4).unwrap());
        let r2 = d4.find("r^2").unwrap();
        let f = d4.find("f").unwrap();
        let s = Subgroup::generated(&d4, &[r2, f]);
        let lab = PairLabeling::from_generators(&s, 2, r2, f).unwrap();
        (d4.clone(), standard_nondegenerate(&s, &lab))
    }

    #[test]
    fn conjugate_pairs() {
        let (d4, beta) = d4_klein();
        let same = conjugate_pair(&beta, 0);
        assert_eq!(same, beta);
        for g in d4.elements() {
            let c = conjugate_pair(&beta, g);
            assert!(c.validate().is_valid());
            assert!(is_nondegenerate(&c));
            assert_eq!(c.subgroup(), &beta.subgroup().conjugate(g));
            let mut mapped: Vec<Elem> = alpha_regular_elements(&beta)
                .iter()
                .map(|&s| d4.conj(g, s))
                .collect();
            mapped.sort_unstable();
            assert_eq!(alpha_regular_elements(&c), mapped);
        }
        // Conjugating by an element of S keeps S but may change the table.
        let f = d4.find("f").unwrap();
        assert_eq!(conjugate_pair(&beta, f).subgroup(), beta.subgroup());
    }

    #[test]
    fn f_regularity_is_a_class_function() {
        let s4 = Arc::new(group::symmetric(4, DEFAULT_MAX_ORDER).unwrap());
        let a = s4.find("(0 1)").unwrap();
        let b = s4.find("(2 3)").unwrap();
        let s = Subgroup::generated(&s4, &[a, b]);
        let beta = standard_nondegenerate(&s, &PairLabeling::from_generators(&s, 2, a, b).unwrap());
        for f in group::all_subgroups(&s4, 100).unwrap() {
            for g in s4.elements() {
                for &x in s.elements() {
                    let base = alpha_f_regular(&beta, &f, g, x);
                    for &t in s.elements() {
                        let g2 = s4.mul(g, s4.inv(t));
                        assert_eq!(alpha_f_regular(&beta, &f, g2, s4.conj(t, x)), base);
                    }
                    if f.is_normal() {
                        assert_eq!(alpha_f_regular(&beta, &f, 0, x), base);
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_pair_symmetry_before_normalization() {
        // α(s,s⁻¹) = α(s⁻¹,s) holds for any cocycle; check on a coboundary-twisted one.
        let z3 = Arc::new(group::cyclic(3).unwrap());
        let g = Arc::new(group::direct_product(&z3, &z3, 100).unwrap());
        let s = Subgroup::whole(&g);
        let lab = PairLabeling::from_generators(&s, 3, g.find("(a,1)").unwrap(), g.find("(1,a)").unwrap()).unwrap();
        let raw = TwoCocycle::from_fn(&s, 3, |x, y| (lab.pair(&s, x).1 * lab.pair(&s, y).0) as i64);
        let phi = OneCochain::from_fn(&s, 9, |x| x as i64 * 7 % 9);
        let alpha = multiply_by_coboundary(&raw, &phi).unwrap();
        assert!(alpha.validate().is_valid());
        for &x in s.elements() {
            assert_eq!(alpha.exp(x, g.inv(x)), alpha.exp(g.inv(x), x));
        }
        let (beta, psi) = normalize_inverse_pairs(&alpha);
        assert!(beta.is_inverse_normalized());
        assert_eq!(multiply_by_coboundary(&alpha.lift(beta.modulus()).unwrap(), &psi).unwrap(), beta);
    }
}
