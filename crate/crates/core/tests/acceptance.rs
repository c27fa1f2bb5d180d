//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output.

mod oracle;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hopfnorm::catalog;
use hopfnorm::cocycle::{normalize_inverse_pairs, TwoCocycle};
use hopfnorm::cyclotomic::CycInt;
use hopfnorm::galois::{AlgebraElement, BasisElement, GaloisObject};
use hopfnorm::group::{all_subgroups, normal_subgroups, Elem, FiniteGroup, Subgroup, DEFAULT_LATTICE_CAP};
use hopfnorm::instance::{Instance, InstanceSpec};
use hopfnorm::invariants::{invariant_basis, regular_orbit_count};
use hopfnorm::normality::{
    is_prime_index, is_simple_deformation, mu_stable_criterion, mu_stable_direct, prime_index_theorem_check,
};

use oracle::{FunctionModel, Grading};

/// Groups up to this order get every subgroup, larger ones the normal ones.
const ALL_SUBGROUPS_UP_TO: usize = 24;
/// Exhaustive associativity and grading checks up to this order.
const EXHAUSTIVE_UP_TO: usize = 24;
const ASSOCIATIVITY_SAMPLES: usize = 10_000;
/// Absolute tolerance on the floating-point traces of the function model.
const TRACE_TOL: f64 = 1e-8;
const SEED: u64 = 0x5eed;

const CATALOG_BUDGET: Duration = Duration::from_secs(60);
const SYMMETRIC_BUDGET: Duration = Duration::from_secs(30);
const NONSOLVABLE_BUDGET: Duration = Duration::from_secs(300);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn resolve(spec: &InstanceSpec) -> Instance {
    spec.resolve(None).unwrap_or_else(|e| panic!("{}: {e}", spec.name))
}

fn galois(inst: &Instance) -> GaloisObject {
    inst.galois().unwrap_or_else(|e| panic!("{}: {e}", inst.name))
}

fn subgroups_under_test(g: &std::sync::Arc<FiniteGroup>) -> Vec<Subgroup> {
    if g.order() <= ALL_SUBGROUPS_UP_TO {
        all_subgroups(g, DEFAULT_LATTICE_CAP).expect("lattice")
    } else {
        normal_subgroups(g, DEFAULT_LATTICE_CAP).expect("lattice")
    }
}

fn brute_center_order(g: &FiniteGroup) -> usize {
    g.elements().filter(|&z| g.elements().all(|x| g.mul(x, z) == g.mul(z, x))).count()
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

struct CatalogEntry {
    inst: Instance,
    a: GaloisObject,
    subgroups: Vec<Subgroup>,
}

fn catalog_entries() -> Vec<CatalogEntry> {
    catalog::small_catalog()
        .iter()
        .map(|spec| {
            let inst = resolve(spec);
            let a = galois(&inst);
            let subgroups = subgroups_under_test(&inst.group);
            CatalogEntry { inst, a, subgroups }
        })
        .collect()
}

fn criterion_oracle(entries: &[CatalogEntry], gradings: &[Grading]) -> Outcome {
    let t = Instant::now();
    let mut pairs = 0;
    let mut stable = 0;
    let mut mismatches = Vec::new();
    for (e, gr) in entries.iter().zip(gradings) {
        for f in &e.subgroups {
            pairs += 1;
            let criterion = mu_stable_criterion(&e.a, f).stable;
            stable += criterion as usize;
            let direct = mu_stable_direct(&e.a, f);
            let model = gr.stable(f);
            if criterion != direct || criterion != model {
                mismatches.push(format!("{} |F|={}", e.inst.name, f.order()));
            }
        }
    }
    let elapsed = t.elapsed();
    let max_order = entries.iter().map(|e| e.inst.group.order()).max().unwrap_or(0);
    outcome(
        entries.len() >= 10 && max_order <= 60 && mismatches.is_empty() && elapsed < CATALOG_BUDGET,
        format!(
            "{} instances up to order {max_order}, {pairs} (instance, F) pairs ({stable} stable, {} not), \
             {} mismatches {:?} ({})",
            entries.len(),
            pairs - stable,
            mismatches.len(),
            mismatches,
            secs(elapsed)
        ),
    )
}

fn dimension_law(entries: &[CatalogEntry], gradings: &[Grading]) -> Outcome {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for (e, gr) in entries.iter().zip(gradings) {
        if gr.total_dim() != e.a.dim() {
            bad.push(format!("{} grading does not decompose", e.inst.name));
        }
        for f in &e.subgroups {
            pairs += 1;
            let index = e.inst.group.order() / f.order();
            let dims = [invariant_basis(&e.a, f).len(), regular_orbit_count(&e.a, f), gr.invariant_dim(f)];
            if dims.iter().any(|&d| d != index) {
                bad.push(format!("{} |F|={} dims {dims:?} index {index}", e.inst.name, f.order()));
            }
        }
    }
    outcome(bad.is_empty(), format!("{pairs} pairs, basis = orbits = model = [G:F]; failures {bad:?}"))
}

fn symmetric_verdicts() -> Outcome {
    let t = Instant::now();
    let specs = catalog::symmetric(5).expect("n = 5");
    let mut notes = Vec::new();
    let mut ok = true;
    for spec in &specs {
        let inst = resolve(spec);
        let a = galois(&inst);
        let rep = is_simple_deformation(&a, DEFAULT_LATTICE_CAP).expect("classification");
        let alt = rep.rows.iter().find(|r| r.subgroup.order() == 60).expect("A5 row");
        let alt_direct = mu_stable_direct(&a, &alt.subgroup);
        let inside = spec.name.ends_with("inside");
        ok &= inst.group.order() == 120 && alt.verdict.stable == alt_direct;
        ok &= if inside { alt.verdict.stable && !rep.simple } else { rep.simple };
        ok &= prime_index_theorem_check(&a, &alt.subgroup) == Ok(inside);
        notes.push(format!("{}: A5 row stable={}, simple={}", spec.name, alt.verdict.stable, rep.simple));
    }
    let elapsed = t.elapsed();
    outcome(ok && elapsed < SYMMETRIC_BUDGET, format!("{} ({})", notes.join("; "), secs(elapsed)))
}

fn supersolvable_family() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (p, q, r) in [(3, 2, 5), (7, 3, 13)] {
        let t = Instant::now();
        let spec = catalog::supersolvable(p, q, r).expect("valid triple");
        let inst = match spec.resolve(None) {
            Ok(i) => i,
            Err(e) => {
                notes.push(format!("({p},{q},{r}) skipped: {e}"));
                continue;
            }
        };
        let g = &inst.group;
        let a = galois(&inst);
        let rep = is_simple_deformation(&a, DEFAULT_LATTICE_CAP).expect("classification");
        let expected_order = (p * q * r * q) as usize;
        ok &= g.order() == expected_order && brute_center_order(g) == 1 && rep.simple;
        notes.push(format!(
            "({p},{q},{r}) order {} with {} normal subgroups: simple={} ({})",
            g.order(),
            rep.rows.len(),
            rep.simple,
            secs(t.elapsed())
        ));
    }
    outcome(ok, notes.join("; "))
}

/// Conjugation by an element of `A5` is an inner action, so the semidirect
/// product is `A5 × Z5` and its centre has order 5. The central subgroup
/// gives a stable invariant subalgebra, so the deformation is not simple.
/// The observed outcome is pinned in `expected`.
fn nonsolvable_family() -> (Outcome, bool) {
    let t = Instant::now();
    let inst = resolve(&catalog::nonsolvable(5).expect("p = 5"));
    let g = &inst.group;
    let a = galois(&inst);
    let rep = is_simple_deformation(&a, DEFAULT_LATTICE_CAP).expect("classification");
    let elapsed = t.elapsed();
    let center = brute_center_order(g);
    let stable: Vec<&_> = rep.stable_proper().collect();
    let detail = format!(
        "order {}, centre order {center}, simple={} (wanted true); stable proper normal subgroups: {:?}; \
         conjugation by x is inner so G = A5 x Z5 and the central Z5 gives a normal Hopf subalgebra ({})",
        g.order(),
        rep.simple,
        stable.iter().map(|r| r.subgroup.order()).collect::<Vec<_>>(),
        secs(elapsed)
    );
    let expected = g.order() == 300
        && center == 5
        && !rep.simple
        && stable.len() == 1
        && stable[0].subgroup.order() == 5
        && !stable[0].contains_s
        && stable[0].subgroup.elements().iter().all(|&z| g.elements().all(|x| g.commute(x, z)))
        && elapsed < NONSOLVABLE_BUDGET;
    (outcome(rep.simple && elapsed < NONSOLVABLE_BUDGET, detail), expected)
}

fn prime_index_law(entries: &[CatalogEntry], gradings: &[Grading]) -> Outcome {
    let mut seen = [0usize; 2];
    let mut bad = Vec::new();
    for (e, gr) in entries.iter().zip(gradings) {
        if brute_center_order(&e.inst.group) != 1 {
            continue;
        }
        for f in e.subgroups.iter().filter(|f| f.is_normal() && is_prime_index(f)) {
            let contains_s = e.inst.s().elements().iter().all(|&s| f.contains(s));
            match prime_index_theorem_check(&e.a, f) {
                Ok(v) if v == contains_s && gr.stable(f) == contains_s => seen[v as usize] += 1,
                other => bad.push(format!("{} |F|={}: {other:?}", e.inst.name, f.order())),
            }
        }
    }
    outcome(
        bad.is_empty() && seen[0] > 0 && seen[1] > 0,
        format!("{} cases with S in F, {} with S not in F; failures {bad:?}", seen[1], seen[0]),
    )
}

fn basis_elem(a: &GaloisObject, b: BasisElement) -> AlgebraElement {
    AlgebraElement::basis(a.modulus(), b)
}

fn associative(a: &GaloisObject, x: BasisElement, y: BasisElement, z: BasisElement) -> bool {
    let (x, y, z) = (basis_elem(a, x), basis_elem(a, y), basis_elem(a, z));
    let left = a.multiply(&a.multiply(&x, &y).unwrap(), &z).unwrap();
    let right = a.multiply(&x, &a.multiply(&y, &z).unwrap()).unwrap();
    left == right
}

fn random_triple(a: &GaloisObject, rng: &mut ChaCha8Rng) -> [BasisElement; 3] {
    let n = a.dim();
    let s = a.subgroup().order();
    let first = a.basis_at(rng.gen_range(0..n));
    let mut pick = || {
        if rng.gen_bool(0.8) {
            a.basis_at(first.coset * s + rng.gen_range(0..s))
        } else {
            a.basis_at(rng.gen_range(0..n))
        }
    };
    let y = pick();
    let z = pick();
    [first, y, z]
}

fn algebra_soundness(instances: &[(Instance, GaloisObject)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut notes = Vec::new();
    let mut ok = true;
    for (inst, a) in instances {
        let basis: Vec<BasisElement> = a.basis().collect();
        assert!(basis.iter().enumerate().all(|(k, b)| a.basis_index(*b) == k));
        let exhaustive = inst.group.order() <= EXHAUSTIVE_UP_TO;
        let (assoc_cases, assoc_ok) = if exhaustive {
            let mut all = true;
            for &x in &basis {
                for &y in &basis {
                    for &z in &basis {
                        all &= associative(a, x, y, z);
                    }
                }
            }
            (basis.len().pow(3), all)
        } else {
            let all = (0..ASSOCIATIVITY_SAMPLES).all(|_| {
                let [x, y, z] = random_triple(a, &mut rng);
                associative(a, x, y, z)
            });
            (ASSOCIATIVITY_SAMPLES, all)
        };
        let mut mu_ok = true;
        if exhaustive {
            for &b in &basis {
                let sigma = a.mu_degree(b);
                let be = basis_elem(a, b);
                for &x in &basis {
                    let xe = basis_elem(a, x);
                    let lhs = a.multiply(&be, &xe).unwrap();
                    let rhs = a.multiply(&a.act_algebra(sigma, &xe), &be).unwrap();
                    mu_ok &= lhs == rhs;
                }
            }
        }
        if !(assoc_ok && mu_ok) {
            notes.push(format!("{}: associativity {assoc_ok}, grading {mu_ok}", inst.name));
        }
        ok &= assoc_ok && mu_ok && assoc_cases >= ASSOCIATIVITY_SAMPLES.min(basis.len().pow(3));
    }
    let small = instances.iter().filter(|(i, _)| i.group.order() <= EXHAUSTIVE_UP_TO).count();
    outcome(
        ok,
        format!(
            "{small} instances exhaustive (associativity and grading), {} sampled with {ASSOCIATIVITY_SAMPLES} triples each; failures {notes:?}",
            instances.len() - small
        ),
    )
}

/// Exponent of `α(x,y) φ(x) φ(y) φ(xy)⁻¹` at modulus `m`.
fn twisted_by(alpha: &TwoCocycle, phi: &hopfnorm::cocycle::OneCochain, m: u32, x: Elem, y: Elem) -> u32 {
    let g = alpha.subgroup().group();
    let ka = (m / alpha.modulus()) as i64;
    let kp = (m / phi.modulus()) as i64;
    let e = alpha.exp(x, y) as i64 * ka + (phi.exp(x) as i64 + phi.exp(y) as i64 - phi.exp(g.mul(x, y)) as i64) * kp;
    e.rem_euclid(m as i64) as u32
}

fn satisfies_cocycle_identity(b: &TwoCocycle) -> bool {
    let g = b.subgroup().group();
    let els = b.subgroup().elements();
    let m = b.modulus();
    els.iter().all(|&r| {
        els.iter().all(|&s| {
            els.iter().all(|&t| {
                (b.exp(r, s) + b.exp(g.mul(r, s), t)) % m == (b.exp(s, t) + b.exp(r, g.mul(s, t))) % m
            })
        })
    })
}

fn normalization(instances: &[(Instance, GaloisObject)]) -> Outcome {
    let mut bad = Vec::new();
    for (inst, _) in instances {
        let raw = &inst.raw_alpha;
        let (beta, phi) = normalize_inverse_pairs(raw);
        let g = &inst.group;
        let els = beta.subgroup().elements();
        let m = beta.modulus();
        let inverse_pairs = els.iter().all(|&s| beta.exp(s, g.inv(s)) == 0);
        let identity = satisfies_cocycle_identity(&beta) && beta.validate().is_valid();
        let coboundary = m % raw.modulus() == 0
            && m % phi.modulus() == 0
            && els.iter().all(|&x| els.iter().all(|&y| beta.exp(x, y) == twisted_by(raw, &phi, m, x, y)));
        if !(inverse_pairs && identity && coboundary) {
            bad.push(format!("{}: pairs {inverse_pairs} cocycle {identity} coboundary {coboundary}", inst.name));
        }
    }
    outcome(bad.is_empty(), format!("{} built-in cocycles; failures {bad:?}", instances.len()))
}

fn regular_representation(instances: &[(Instance, GaloisObject)], gradings: &[Grading]) -> Outcome {
    let mut bad = Vec::new();
    for (inst, a) in instances {
        let n = inst.group.order() as i64;
        for g in inst.group.elements() {
            let expected = CycInt::from_int(a.modulus(), if g == 0 { n } else { 0 });
            if a.action_trace(g) != expected {
                bad.push(format!("{} at {}", inst.name, inst.group.label(g)));
                break;
            }
        }
    }
    let mut model_cases = 0;
    for gr in gradings {
        let group = gr.model.group();
        let n = group.order() as f64;
        for g in group.elements() {
            model_cases += 1;
            let tr = gr.model.trace(g);
            let expected = if g == 0 { n } else { 0.0 };
            if (tr.re - expected).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
                bad.push(format!("model trace at {g} is {tr}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} instances exact, {model_cases} function-model traces; failures {bad:?}", instances.len()),
    )
}

fn main() -> ExitCode {
    let started = Instant::now();
    let entries = catalog_entries();
    let gradings: Vec<Grading> =
        entries.iter().map(|e| Grading::new(FunctionModel::new(&e.inst.group, &e.inst.alpha))).collect();

    let mut families: Vec<InstanceSpec> = catalog::symmetric(5).expect("n = 5");
    families.push(catalog::supersolvable(3, 2, 5).expect("valid"));
    families.push(catalog::supersolvable(7, 3, 13).expect("valid"));
    for p in [2, 3, 5] {
        families.push(catalog::nonsolvable(p).expect("valid"));
    }
    let mut instances: Vec<(Instance, GaloisObject)> =
        entries.iter().map(|e| (e.inst.clone(), e.a.clone())).collect();
    instances.extend(families.iter().map(|s| {
        let inst = resolve(s);
        let a = galois(&inst);
        (inst, a)
    }));

    let (nonsolvable, nonsolvable_pinned) = nonsolvable_family();
    let results = vec![
        (1, "criterion agrees with the grading oracle", criterion_oracle(&entries, &gradings)),
        (2, "invariant dimension equals the index", dimension_law(&entries, &gradings)),
        (3, "symmetric group verdicts", symmetric_verdicts()),
        (4, "supersolvable family is simple", supersolvable_family()),
        (5, "non-solvable family is simple", nonsolvable),
        (6, "prime-index law", prime_index_law(&entries, &gradings)),
        (7, "associativity and grading", algebra_soundness(&instances)),
        (8, "inverse-pair normalization", normalization(&instances)),
        (9, "action is the regular representation", regular_representation(&instances, &gradings)),
    ];

    // Criterion 5 cannot hold for A5 ⋊ Z5 with an inner action; see the note on
    // `nonsolvable_family`. Its failure is accepted only with the pinned outcome.
    let mut unexpected = 0;
    for (k, name, o) in &results {
        println!("{} {k} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        let accepted = *k == 5 && nonsolvable_pinned;
        if !o.passed && !accepted {
            unexpected += 1;
        }
    }
    let passed = results.iter().filter(|r| r.2.passed).count();
    println!(
        "{passed} passed, {} failed, {unexpected} unexpected ({})",
        results.len() - passed,
        secs(started.elapsed())
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
