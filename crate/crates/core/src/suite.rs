//! Self-verification property suites over resolved instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cocycle::{multiply_by_coboundary, TwoCocycle};
use crate::cyclotomic::CycInt;
use crate::galois::{AlgebraElement, BasisElement, GaloisObject};
use crate::group::{all_subgroups, normal_subgroups, Subgroup};
use crate::instance::{Instance, InstanceError, InstanceSpec};
use crate::invariants::{f_orbits, invariant_basis, is_regular_orbit_monomial, regular_orbit_count};
use crate::normality::{
    hopf_subalgebra_normal, mu_stable_criterion, mu_stable_direct, prime_index_theorem_check,
};

pub const CHECKS: &[&str] = &[
    "associativity",
    "grading",
    "action",
    "dimension",
    "criterion",
    "orbits",
    "subalgebra",
    "normalization",
    "trace",
    "prime-index",
];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random triples or pairs drawn when a check is not exhaustive.
    pub samples: usize,
    /// Largest `|G|` checked exhaustively by the algebra checks.
    pub exhaustive_limit: usize,
    /// Largest `|G|` for which every subgroup is used as `F`; above it only
    /// normal subgroups are.
    pub all_subgroups_limit: usize,
    pub lattice_cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            samples: 10_000,
            exhaustive_limit: 60,
            all_subgroups_limit: 24,
            lattice_cap: crate::group::DEFAULT_LATTICE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub instance: String,
    pub check: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

/// Expands a selector (`all` or comma-separated check names).
pub fn select(selector: &str) -> Result<Vec<&'static str>, InstanceError> {
    if selector.trim() == "all" {
        return Ok(CHECKS.to_vec());
    }
    selector
        .split(',')
        .map(|s| {
            let s = s.trim();
            CHECKS
                .iter()
                .copied()
                .find(|c| *c == s)
                .ok_or_else(|| InstanceError::Parse(format!("unknown check {s:?}; known: {}", CHECKS.join(", "))))
        })
        .collect()
}

/// Copy of `α` with its first entry off the identity row and column moved by
/// one step, or `None` when `S` is trivial.
pub fn inject_fault(alpha: &TwoCocycle) -> Option<TwoCocycle> {
    let els = alpha.subgroup().elements();
    let (s, t) = (*els.get(1)?, els[1]);
    Some(alpha.with_entry(s, t, alpha.exp(s, t) as i64 + 1))
}

/// The subgroups `F` used by the subgroup-quantified checks.
pub fn test_subgroups(a: &GaloisObject, cfg: &SuiteConfig) -> Result<Vec<Subgroup>, InstanceError> {
    Ok(if a.group().order() <= cfg.all_subgroups_limit {
        all_subgroups(a.group(), cfg.lattice_cap)?
    } else {
        normal_subgroups(a.group(), cfg.lattice_cap)?
    })
}

fn mul_chain(a: &GaloisObject, x: BasisElement, y: BasisElement, z: BasisElement) -> (bool, bool) {
    let left = a
        .multiply_basis(x, y)
        .and_then(|(c, xy)| a.multiply_basis(xy, z).map(|(c2, b)| (c * c2, b)));
    let right = a
        .multiply_basis(y, z)
        .and_then(|(c, yz)| a.multiply_basis(x, yz).map(|(c2, b)| (c * c2, b)));
    (left == right, left.is_some())
}

/// Triples to test: all of them, or the whole first block plus a sample.
fn triples(a: &GaloisObject, cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> (Vec<[BasisElement; 3]>, bool) {
    let n = a.dim();
    if a.group().order() <= cfg.exhaustive_limit {
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.push([a.basis_at(i), a.basis_at(j), a.basis_at(k)]);
                }
            }
        }
        return (out, true);
    }
    let m = a.subgroup().order();
    let mut out = Vec::new();
    if m * m * m <= cfg.samples {
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    out.push([a.basis_at(i), a.basis_at(j), a.basis_at(k)]);
                }
            }
        }
    }
    // Products vanish across cosets, so half of the samples are drawn
    // inside a single random coset block.
    for k in 0..cfg.samples {
        let t = if k % 2 == 0 {
            let c = rng.gen_range(0..a.cosets().len());
            [0; 3].map(|_| a.basis_at(c * m + rng.gen_range(0..m)))
        } else {
            [0; 3].map(|_| a.basis_at(rng.gen_range(0..n)))
        };
        out.push(t);
    }
    (out, false)
}

fn pairs(a: &GaloisObject, cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> (Vec<(BasisElement, BasisElement)>, bool) {
    let n = a.dim();
    if a.group().order() <= cfg.exhaustive_limit {
        let out = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        return (out.map(|(i, j)| (a.basis_at(i), a.basis_at(j))).collect(), true);
    }
    let out = (0..cfg.samples)
        .map(|_| (a.basis_at(rng.gen_range(0..n)), a.basis_at(rng.gen_range(0..n))))
        .collect();
    (out, false)
}

fn result(inst: &Instance, check: &str, cases: usize, failure: Option<String>, note: &str) -> CheckResult {
    CheckResult {
        instance: inst.name.clone(),
        check: check.to_string(),
        passed: failure.is_none(),
        cases,
        detail: failure.unwrap_or_else(|| note.to_string()),
    }
}

fn scope(exhaustive: bool) -> &'static str {
    if exhaustive {
        "exhaustive"
    } else {
        "sampled"
    }
}

/// Runs one named check on one instance. `a` may carry an injected fault.
pub fn run_check(
    inst: &Instance,
    a: &GaloisObject,
    check: &str,
    cfg: &SuiteConfig,
) -> Result<CheckResult, InstanceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let g = a.group().clone();
    let fmt3 = |t: &[BasisElement; 3]| {
        t.iter().map(|b| a.format_basis(*b)).collect::<Vec<_>>().join(", ")
    };
    Ok(match check {
        "associativity" => {
            let (ts, ex) = triples(a, cfg, &mut rng);
            let bad = ts.iter().find(|t| !mul_chain(a, t[0], t[1], t[2]).0);
            result(inst, check, ts.len(), bad.map(|t| format!("not associative at ({})", fmt3(t))), scope(ex))
        }
        "grading" => {
            let (ps, ex) = pairs(a, cfg, &mut rng);
            let mut bad = None;
            for &(b, x) in &ps {
                let deg = a.mu_degree(b);
                let (c, moved) = a.act_basis(deg, x);
                let lhs = a.multiply_basis(b, x);
                let rhs = a.multiply_basis(moved, b).map(|(c2, p)| (c * c2, p));
                if lhs != rhs {
                    bad = Some(format!("b x != (|b|.x) b for b = {}, x = {}", a.format_basis(b), a.format_basis(x)));
                    break;
                }
                if let Some((_, p)) = lhs {
                    if a.mu_degree(p) != g.mul(deg, a.mu_degree(x)) {
                        bad = Some(format!("degree not multiplicative at {}", a.format_basis(p)));
                        break;
                    }
                }
            }
            result(inst, check, ps.len(), bad, scope(ex))
        }
        "action" => {
            let (ps, ex) = pairs(a, cfg, &mut rng);
            let mut bad = None;
            let m = a.modulus();
            for &(x, y) in &ps {
                let h = rng.gen_range(0..g.order());
                let k = rng.gen_range(0..g.order());
                let vx = AlgebraElement::basis(m, x);
                let vy = AlgebraElement::basis(m, y);
                let composed = a.act_algebra(h, &a.act_algebra(k, &vx));
                if composed != a.act_algebra(g.mul(h, k), &vx) {
                    bad = Some(format!("not a group action at {}", a.format_basis(x)));
                    break;
                }
                let prod = a.multiply(&vx, &vy).expect("same modulus");
                let lhs = a.act_algebra(h, &prod);
                let rhs = a
                    .multiply(&a.act_algebra(h, &vx), &a.act_algebra(h, &vy))
                    .expect("same modulus");
                if lhs != rhs {
                    bad = Some(format!(
                        "{} does not act by an algebra map on ({}, {})",
                        g.label(h),
                        a.format_basis(x),
                        a.format_basis(y)
                    ));
                    break;
                }
            }
            result(inst, check, ps.len(), bad, scope(ex))
        }
        "dimension" => {
            let fs = test_subgroups(a, cfg)?;
            let bad = fs.iter().find_map(|f| {
                let n = invariant_basis(a, f).len();
                let r = regular_orbit_count(a, f);
                (n != f.index() || r != f.index()).then(|| {
                    format!("|F| = {}: basis {n}, regular orbits {r}, index {}", f.order(), f.index())
                })
            });
            result(inst, check, fs.len(), bad, "subgroups")
        }
        "criterion" => {
            let fs = test_subgroups(a, cfg)?;
            let mut bad = None;
            for f in &fs {
                let v = mu_stable_criterion(a, f);
                let direct = mu_stable_direct(a, f);
                if v.stable != direct {
                    bad = Some(format!("|F| = {}: criterion {} vs direct {direct}", f.order(), v.stable));
                    break;
                }
                if f.is_normal() {
                    let h = hopf_subalgebra_normal(a, f).expect("normal");
                    if h.stable != v.stable {
                        bad = Some(format!("|F| = {}: normal test disagrees", f.order()));
                        break;
                    }
                    if a.subgroup().is_subset_of(f) && !v.stable {
                        bad = Some(format!("|F| = {}: contains S but unstable", f.order()));
                        break;
                    }
                    if a.subgroup().is_trivial() && !v.stable {
                        bad = Some(format!("|F| = {}: trivial S but unstable", f.order()));
                        break;
                    }
                }
            }
            result(inst, check, fs.len(), bad, "subgroups")
        }
        "orbits" => {
            let fs = test_subgroups(a, cfg)?;
            let mut cases = 0;
            let mut bad = None;
            'outer: for f in &fs {
                for o in f_orbits(a, f) {
                    cases += 1;
                    let mono = is_regular_orbit_monomial(a, &o);
                    if mono != o.regular {
                        bad = Some(format!(
                            "|F| = {}: orbit of {} regular {} but stabilizer test {mono}",
                            f.order(),
                            a.format_basis(o.representative),
                            o.regular
                        ));
                        break 'outer;
                    }
                }
            }
            result(inst, check, cases, bad, "orbits")
        }
        "subalgebra" => {
            if g.order() > cfg.exhaustive_limit {
                return Ok(result(inst, check, 0, None, "skipped above exhaustive limit"));
            }
            let fs = test_subgroups(a, cfg)?;
            let mut cases = 0;
            let mut bad = None;
            'fs: for f in &fs {
                let basis: Vec<AlgebraElement> = invariant_basis(a, f).iter().map(|v| v.to_algebra()).collect();
                for u in &basis {
                    for w in &basis {
                        cases += 1;
                        let p = a.multiply(u, w).expect("same modulus");
                        if !in_span(&p, &basis) {
                            bad = Some(format!("|F| = {}: product leaves the invariants", f.order()));
                            break 'fs;
                        }
                    }
                }
            }
            result(inst, check, cases, bad, "invariant basis products")
        }
        "normalization" => {
            let expect = multiply_by_coboundary(&inst.raw_alpha, &inst.phi)?;
            let alpha = a.cocycle();
            let bad = if !alpha.is_inverse_normalized() {
                Some("α(s, s⁻¹) ≠ 1 somewhere".to_string())
            } else if !alpha.validate().is_valid() {
                Some("normalized cocycle fails validation".to_string())
            } else if expect != *alpha {
                Some("cocycle differs from raw α · dφ".to_string())
            } else {
                None
            };
            result(inst, check, a.subgroup().order(), bad, "exact")
        }
        "trace" => {
            let n = a.dim() as i64;
            let bad = g.elements().find_map(|x| {
                let expect = CycInt::from_int(a.modulus(), if x == 0 { n } else { 0 });
                let tr = a.action_trace(x);
                (tr != expect).then(|| format!("trace of {} is {tr}", g.label(x)))
            });
            result(inst, check, g.order(), bad, "exact")
        }
        "prime-index" => {
            if !g.center().is_trivial() {
                return Ok(result(inst, check, 0, None, "skipped: nontrivial center"));
            }
            let mut cases = 0;
            let mut bad = None;
            for f in normal_subgroups(&g, cfg.lattice_cap)? {
                if !crate::normality::is_prime_index(&f) {
                    continue;
                }
                cases += 1;
                if let Err(e) = prime_index_theorem_check(a, &f) {
                    bad = Some(format!("|F| = {}: {e}", f.order()));
                    break;
                }
            }
            result(inst, check, cases, bad, "prime-index normal subgroups")
        }
        other => return Err(InstanceError::Parse(format!("unknown check {other:?}"))),
    })
}

/// `p ∈ span(basis)` for vectors with disjoint supports whose first
/// coefficient is 1.
fn in_span(p: &AlgebraElement, basis: &[AlgebraElement]) -> bool {
    let mut rest = p.clone();
    for v in basis {
        let (lead, one) = v.terms().next().expect("nonzero basis vector");
        debug_assert!(one.is_one());
        if let Some(c) = p.coeff(lead) {
            rest = rest.add(&v.scale(&(-c)));
        }
    }
    rest.is_zero()
}

/// Runs the selected checks over every spec. With `inject_fault`, instances
/// with trivial `S` are reported as skipped.
pub fn run_suite(
    specs: &[InstanceSpec],
    checks: &[&str],
    cfg: &SuiteConfig,
    inject: bool,
) -> Result<SuiteReport, InstanceError> {
    let mut report = SuiteReport::default();
    for spec in specs {
        let inst = spec.resolve(None)?;
        let a = if inject {
            match inject_fault(&inst.alpha) {
                Some(bad) => GaloisObject::build_unvalidated(&bad),
                None => {
                    report.results.push(CheckResult {
                        instance: inst.name.clone(),
                        check: "fault".into(),
                        passed: true,
                        cases: 0,
                        detail: "skipped: S is trivial".into(),
                    });
                    continue;
                }
            }
        } else {
            inst.galois()?
        };
        for c in checks {
            report.results.push(run_check(&inst, &a, c, cfg)?);
        }
    }
    Ok(report)
}
