use std::fmt::Write as _;

use serde::Serialize;

use hopfnorm::galois::GaloisObject;
use hopfnorm::group::{FiniteGroup, Subgroup};
use hopfnorm::instance::Instance;
use hopfnorm::invariants::invariant_basis_with_orbits;
use hopfnorm::invariants::f_orbits;
use hopfnorm::normality::{
    hopf_subalgebra_normal, mu_stable_criterion, mu_stable_direct, ClassificationReport,
    NormalityVerdict,
};
use hopfnorm::suite::SuiteReport;

/// Subgroups up to this order are listed element by element.
const LIST_LIMIT: usize = 12;

pub fn subgroup_text(g: &FiniteGroup, h: &Subgroup) -> String {
    if h.order() <= LIST_LIMIT {
        let els: Vec<&str> = h.elements().iter().map(|&x| g.label(x)).collect();
        format!("{{{}}}", els.join(", "))
    } else {
        let gens: Vec<&str> = h.generators().iter().map(|&x| g.label(x)).collect();
        format!("<{}>", gens.join(", "))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn verdict_text(stable: bool, normal: bool) -> &'static str {
    match (stable, normal) {
        (true, _) => "stable",
        (false, true) => "not stable; deformation quotient not conormal",
        (false, false) => "not stable",
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct WitnessJson {
    pub class: String,
    pub f: String,
    pub degree: String,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct AnalyzeJson {
    pub instance: String,
    pub group_order: usize,
    pub s: Vec<String>,
    pub modulus: u32,
    pub f_order: usize,
    pub f_index: usize,
    pub f_normal: bool,
    pub contains_s: bool,
    pub stable: bool,
    pub verdict: String,
    pub regular_classes: Vec<String>,
    pub witnesses: Vec<WitnessJson>,
    pub oracle: Option<bool>,
    pub notes: Vec<String>,
}

pub struct Analysis {
    pub json: AnalyzeJson,
    pub text: String,
}

fn header(out: &mut String, inst: &Instance, group_spec: &str) {
    let g = &inst.group;
    let _ = writeln!(out, "instance: {}", inst.name);
    let _ = writeln!(out, "group: {group_spec} (order {})", g.order());
    let _ = writeln!(out, "S: {} (order {})", subgroup_text(g, inst.s()), inst.s().order());
    let _ = writeln!(out, "cocycle: modulus {}", inst.alpha.modulus());
    let els = inst.s().elements();
    for &s in els {
        for &t in els {
            let e = inst.alpha.exp(s, t);
            if e != 0 {
                let _ = writeln!(out, "  {} {} {}", g.label(s), g.label(t), e);
            }
        }
    }
    for n in &inst.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

fn witnesses(a: &GaloisObject, v: &NormalityVerdict) -> Vec<WitnessJson> {
    let g = a.group();
    v.witnesses
        .iter()
        .map(|w| WitnessJson {
            class: a.format_basis(w.class),
            f: g.label(w.f).to_string(),
            degree: g.label(a.mu_degree(w.class)).to_string(),
        })
        .collect()
}

pub fn analyze(inst: &Instance, group_spec: &str, f: &Subgroup, oracle: bool) -> Result<Analysis, String> {
    let a = inst.galois().map_err(|e| e.to_string())?;
    let g = &inst.group;
    let normal = f.is_normal();
    let verdict = mu_stable_criterion(&a, f);
    if normal {
        let h = hopf_subalgebra_normal(&a, f).map_err(|e| e.to_string())?;
        if h.stable != verdict.stable {
            return Err("normal-subgroup test disagrees with the orbit criterion".into());
        }
    }
    let oracle = oracle.then(|| mu_stable_direct(&a, f));
    let contains_s = inst.s().is_subset_of(f);
    let json = AnalyzeJson {
        instance: inst.name.clone(),
        group_order: g.order(),
        s: inst.s().elements().iter().map(|&x| g.label(x).to_string()).collect(),
        modulus: inst.alpha.modulus(),
        f_order: f.order(),
        f_index: f.index(),
        f_normal: normal,
        contains_s,
        stable: verdict.stable,
        verdict: verdict_text(verdict.stable, normal).to_string(),
        regular_classes: verdict.regular_classes.iter().map(|b| a.format_basis(*b)).collect(),
        witnesses: witnesses(&a, &verdict),
        oracle,
        notes: inst.notes.clone(),
    };
    let mut text = String::new();
    header(&mut text, inst, group_spec);
    let _ = writeln!(
        text,
        "F: {} (order {}, index {}, {})",
        subgroup_text(g, f),
        f.order(),
        f.index(),
        if normal { "normal" } else { "not normal" }
    );
    let _ = writeln!(text, "S contained in F: {}", yes_no(contains_s));
    let _ = writeln!(text, "regular classes: {}", json.regular_classes.join("; "));
    for w in &json.witnesses {
        let _ = writeln!(
            text,
            "witness: class ({}) of degree {}, {} does not commute with it",
            w.class, w.degree, w.f
        );
    }
    if let Some(o) = oracle {
        let _ = writeln!(text, "oracle: {}", if o == verdict.stable { "agrees" } else { "DISAGREES" });
    }
    let _ = writeln!(text, "verdict: {}", json.verdict);
    Ok(Analysis { json, text })
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct ClassifyRowJson {
    pub subgroup: String,
    pub order: usize,
    pub index: usize,
    pub contains_s: bool,
    pub proper_nontrivial: bool,
    pub stable: bool,
    pub oracle: Option<bool>,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct ClassifyJson {
    pub instance: String,
    pub group_order: usize,
    pub modulus: u32,
    pub rows: Vec<ClassifyRowJson>,
    pub simple: bool,
    pub notes: Vec<String>,
}

pub fn classify(
    inst: &Instance,
    group_spec: &str,
    a: &GaloisObject,
    report: &ClassificationReport,
    oracle: bool,
) -> (ClassifyJson, String) {
    let g = &inst.group;
    let rows: Vec<ClassifyRowJson> = report
        .rows
        .iter()
        .map(|r| ClassifyRowJson {
            subgroup: subgroup_text(g, &r.subgroup),
            order: r.subgroup.order(),
            index: r.index,
            contains_s: r.contains_s,
            proper_nontrivial: r.proper_nontrivial,
            stable: r.verdict.stable,
            oracle: oracle.then(|| mu_stable_direct(a, &r.subgroup)),
            witnesses: witnesses(a, &r.verdict),
        })
        .collect();
    let json = ClassifyJson {
        instance: inst.name.clone(),
        group_order: g.order(),
        modulus: inst.alpha.modulus(),
        rows,
        simple: report.simple,
        notes: inst.notes.clone(),
    };
    let mut text = String::new();
    header(&mut text, inst, group_spec);
    let _ = writeln!(text, "normal subgroups: {}", json.rows.len());
    let _ = writeln!(text, "{:>6} {:>6} {:>5}  {:<10} subgroup", "order", "index", "S<=F", "verdict");
    for r in &json.rows {
        let mut verdict = if r.stable { "stable" } else { "unstable" }.to_string();
        if let Some(o) = r.oracle {
            if o != r.stable {
                verdict.push_str(" (oracle DISAGREES)");
            }
        }
        let _ = writeln!(
            text,
            "{:>6} {:>6} {:>5}  {:<10} {}",
            r.order,
            r.index,
            yes_no(r.contains_s),
            verdict,
            r.subgroup
        );
    }
    let _ = writeln!(text, "simple: {}", json.simple);
    (json, text)
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct OrbitJson {
    pub representative: String,
    pub size: usize,
    pub stabilizer_order: usize,
    pub regular: bool,
    pub vector: Option<String>,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct BasisJson {
    pub instance: String,
    pub f_order: usize,
    pub f_index: usize,
    pub orbits: Vec<OrbitJson>,
    pub dimension: usize,
}

pub fn invariant_basis(inst: &Instance, group_spec: &str, f: &Subgroup) -> Result<(BasisJson, String), String> {
    let a = inst.galois().map_err(|e| e.to_string())?;
    let g = &inst.group;
    let vectors = invariant_basis_with_orbits(&a, f);
    let orbits: Vec<OrbitJson> = f_orbits(&a, f)
        .into_iter()
        .map(|o| OrbitJson {
            representative: a.format_basis(o.representative),
            size: o.len(),
            stabilizer_order: o.stabilizer.order(),
            regular: o.regular,
            vector: vectors
                .iter()
                .find(|(p, _)| p.representative == o.representative)
                .map(|(_, v)| a.format_monomial(v)),
        })
        .collect();
    let json = BasisJson {
        instance: inst.name.clone(),
        f_order: f.order(),
        f_index: f.index(),
        dimension: vectors.len(),
        orbits,
    };
    let mut text = String::new();
    header(&mut text, inst, group_spec);
    let _ = writeln!(text, "F: {} (order {}, index {})", subgroup_text(g, f), f.order(), f.index());
    for (k, o) in json.orbits.iter().enumerate() {
        let _ = writeln!(
            text,
            "orbit {}: ({}) size {} stabilizer order {} {}",
            k + 1,
            o.representative,
            o.size,
            o.stabilizer_order,
            if o.regular { "regular" } else { "not regular" }
        );
        if let Some(v) = &o.vector {
            let _ = writeln!(text, "  v = {v}");
        }
    }
    let _ = writeln!(text, "dimension: {} (index {})", json.dimension, json.f_index);
    Ok((json, text))
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct VerifyJson {
    pub results: Vec<VerifyRowJson>,
    pub passed: usize,
    pub failed: usize,
    pub instances: usize,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct VerifyRowJson {
    pub instance: String,
    pub check: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

pub fn verify(report: &SuiteReport) -> (VerifyJson, String) {
    let mut instances: Vec<&str> = report.results.iter().map(|r| r.instance.as_str()).collect();
    instances.dedup();
    let failed = report.failures().count();
    let json = VerifyJson {
        results: report
            .results
            .iter()
            .map(|r| VerifyRowJson {
                instance: r.instance.clone(),
                check: r.check.clone(),
                passed: r.passed,
                cases: r.cases,
                detail: r.detail.clone(),
            })
            .collect(),
        passed: report.results.len() - failed,
        failed,
        instances: instances.len(),
    };
    let mut text = String::new();
    for r in &json.results {
        let _ = writeln!(
            text,
            "{} {:<26} {:<14} {:>8}  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.instance,
            r.check,
            r.cases,
            r.detail
        );
    }
    let _ = writeln!(
        text,
        "{} checks passed, {} failed, {} instances",
        json.passed, json.failed, json.instances
    );
    (json, text)
}
