//! F-orbits on the induced basis and the invariant subalgebra `A^F`.

use crate::cocycle::alpha_f_regular;
use crate::cyclotomic::RootExp;
use crate::galois::{BasisElement, GaloisObject, MonomialVector};
use crate::group::{Elem, Subgroup};

/// One orbit of `F` on `G ×_S S`.
#[derive(Debug, Clone)]
pub struct FOrbit {
    pub members: Vec<BasisElement>,
    pub representative: BasisElement,
    pub stabilizer: Subgroup,
    pub regular: bool,
}

impl FOrbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// All `F`-orbits, ordered by representative (the least member).
pub fn f_orbits(a: &GaloisObject, f: &Subgroup) -> Vec<FOrbit> {
    let mut seen = vec![false; a.dim()];
    let mut out = Vec::new();
    for k in 0..a.dim() {
        if seen[k] {
            continue;
        }
        let rep = a.basis_at(k);
        let mut members = Vec::new();
        let mut stab = Vec::new();
        for &x in f.elements() {
            let (_, b) = a.act_basis(x, rep);
            if b == rep {
                stab.push(x);
            }
            let idx = a.basis_index(b);
            if !seen[idx] {
                seen[idx] = true;
                members.push(b);
            }
        }
        members.sort_unstable();
        let stabilizer = Subgroup::from_elements(f.group(), &stab).expect("stabilizer is a subgroup");
        let regular = class_is_regular(a, f, rep);
        out.push(FOrbit { members, representative: rep, stabilizer, regular });
    }
    out
}

fn class_is_regular(a: &GaloisObject, f: &Subgroup, b: BasisElement) -> bool {
    alpha_f_regular(a.cocycle(), f, a.cosets().rep(b.coset), b.s)
}

/// Regularity through the `(α,F)`-criterion at the representative.
pub fn is_regular_orbit(a: &GaloisObject, f: &Subgroup, orbit: &FOrbit) -> bool {
    class_is_regular(a, f, orbit.representative)
}

/// Regularity read off the action: every stabilizer element fixes the
/// representative line pointwise.
pub fn is_regular_orbit_monomial(a: &GaloisObject, orbit: &FOrbit) -> bool {
    orbit.stabilizer.elements().iter().all(|&x| {
        let (c, b) = a.act_basis(x, orbit.representative);
        debug_assert_eq!(b, orbit.representative);
        c.is_one()
    })
}

/// Least-element left coset representatives of `stab` in `f`.
pub fn transversal(f: &Subgroup, stab: &Subgroup) -> Vec<Elem> {
    let g = f.group();
    let mut covered = vec![false; f.order()];
    let mut reps = Vec::new();
    for (k, &h) in f.elements().iter().enumerate() {
        if covered[k] {
            continue;
        }
        reps.push(h);
        for &t in stab.elements() {
            let pos = f.position(g.mul(h, t)).expect("stabilizer inside F");
            covered[pos] = true;
        }
    }
    reps
}

/// `Σ_{h ∈ Y} h · rep` for a regular orbit.
pub fn orbit_sum(a: &GaloisObject, f: &Subgroup, orbit: &FOrbit) -> MonomialVector {
    let m = a.modulus();
    MonomialVector::from_terms(
        m,
        transversal(f, &orbit.stabilizer).into_iter().map(|h| {
            let (c, b) = a.act_basis(h, orbit.representative);
            (b, c)
        }),
    )
}

/// Orbits together with their invariant vectors, regular orbits only.
pub fn invariant_basis_with_orbits(a: &GaloisObject, f: &Subgroup) -> Vec<(FOrbit, MonomialVector)> {
    f_orbits(a, f)
        .into_iter()
        .filter(|o| o.regular)
        .map(|o| {
            let v = orbit_sum(a, f, &o);
            (o, v)
        })
        .collect()
}

/// Basis of `A^F`, one monomial vector per regular orbit.
pub fn invariant_basis(a: &GaloisObject, f: &Subgroup) -> Vec<MonomialVector> {
    invariant_basis_with_orbits(a, f).into_iter().map(|(_, v)| v).collect()
}

pub fn regular_orbit_count(a: &GaloisObject, f: &Subgroup) -> usize {
    f_orbits(a, f).iter().filter(|o| o.regular).count()
}

/// True iff `f · v = v` for every generator of `F`.
pub fn is_invariant(a: &GaloisObject, f: &Subgroup, v: &MonomialVector) -> bool {
    f.generators().into_iter().all(|x| a.act(x, v) == *v)
}

/// The root scaling `u` into `v`, when `u = c · v` for a root of unity `c`.
pub fn root_multiple(u: &MonomialVector, v: &MonomialVector) -> Option<RootExp> {
    if u.len() != v.len() || v.is_empty() {
        return None;
    }
    let mut ratio = None;
    for ((bu, cu), (bv, cv)) in u.terms().zip(v.terms()) {
        if bu != bv {
            return None;
        }
        let r = *cu * cv.inv();
        match ratio {
            None => ratio = Some(r),
            Some(q) if q != r => return None,
            _ => {}
        }
    }
    ratio
}
