//! Built-in instances and the parametrized example families.

use crate::instance::{CocycleSpec, InstanceError, InstanceSpec, Options};

fn spec(
    name: &str,
    group: &str,
    s: &[&str],
    cocycle: CocycleSpec,
    f: Option<&[&str]>,
) -> InstanceSpec {
    InstanceSpec {
        name: name.to_string(),
        group: group.to_string(),
        s_generators: s.iter().map(|x| x.to_string()).collect(),
        cocycle,
        f_generators: f.map(|f| f.iter().map(|x| x.to_string()).collect()),
        options: Options::default(),
    }
}

fn bilinear(q: u32, a: &str, b: &str) -> CocycleSpec {
    CocycleSpec::Bilinear { q, a: a.to_string(), b: b.to_string() }
}

/// `S = ⟨a, b⟩` with the bilinear cocycle on the pair.
fn pair(name: &str, group: &str, q: u32, a: &str, b: &str) -> InstanceSpec {
    spec(name, group, &[a, b], bilinear(q, a, b), None)
}

/// The fixed catalog of instances of order at most 60.
pub fn small_catalog() -> Vec<InstanceSpec> {
    let s3xs3 = "product:(sym:3)x(sym:3)";
    let a4xz2 = "product:(alt:4)x(cyclic:2)";
    vec![
        pair("klein", "product:(cyclic:2)x(cyclic:2)", 2, "(a,1)", "(1,a)"),
        klein_dihedral(),
        pair("dihedral-klein-alt", "dihedral:4", 2, "r^2", "rf"),
        spec("cyclic6-trivial", "cyclic:6", &[], CocycleSpec::Trivial, None),
        spec(
            "quaternion-trivial",
            "perm:8:(0 1 2 3)(4 5 6 7),(0 4 2 6)(1 7 3 5)",
            &[],
            CocycleSpec::Trivial,
            None,
        ),
        pair("a4-klein", "alt:4", 2, "(0 1)(2 3)", "(0 2)(1 3)"),
        pair("s4-klein-normal", "sym:4", 2, "(0 1)(2 3)", "(0 2)(1 3)"),
        pair("s4-klein-transpositions", "sym:4", 2, "(0 1)", "(2 3)"),
        pair("a4xz2-klein", a4xz2, 2, "((0 1)(2 3),1)", "((0 2)(1 3),1)"),
        pair("a4xz2-mixed", a4xz2, 2, "((0 1)(2 3),1)", "((),a)"),
        pair("z3xs3", "product:(cyclic:3)x(sym:3)", 3, "(a,())", "(1,(0 1 2))"),
        pair(
            "generalized-dihedral-18",
            "semidirect:(product:(cyclic:3)x(cyclic:3))x(cyclic:2):action=[(a^2,1),(1,a^2)]",
            3,
            "((a,1),1)",
            "((1,a),1)",
        ),
        pair("s3xs3-klein", s3xs3, 2, "((0 1),())", "((),(0 1))"),
        pair("s3xs3-rotations", s3xs3, 3, "((0 1 2),())", "((),(0 1 2))"),
        pair("s3xd5-klein", "product:(sym:3)x(dihedral:5)", 2, "((0 1),1)", "((),f)"),
    ]
}

/// Dihedral group of order 8 with the Klein subgroup `{1, r², f, r²f}`.
pub fn klein_dihedral() -> InstanceSpec {
    spec("klein-dihedral", "dihedral:4", &["r^2", "f"], bilinear(2, "r^2", "f"), Some(&["r"]))
}

fn alternating_generators(n: usize) -> Vec<String> {
    (2..n).map(|k| format!("(0 1 {k})")).collect()
}

/// `S_n` with a Klein subgroup outside and inside `A_n`; `F = A_n`.
pub fn symmetric(n: usize) -> Result<Vec<InstanceSpec>, InstanceError> {
    if n < 4 {
        return Err(InstanceError::Hypothesis(format!("symmetric:{n} needs n >= 4")));
    }
    let group = format!("sym:{n}");
    let f = alternating_generators(n);
    let f: Vec<&str> = f.iter().map(String::as_str).collect();
    let outside = ["(0 1)", "(2 3)"];
    let inside = ["(0 1)(2 3)", "(0 2)(1 3)"];
    Ok(vec![
        spec(
            &format!("symmetric-{n}-outside"),
            &group,
            &outside,
            bilinear(2, outside[0], outside[1]),
            Some(&f),
        ),
        spec(
            &format!("symmetric-{n}-inside"),
            &group,
            &inside,
            bilinear(2, inside[0], inside[1]),
            Some(&f),
        ),
    ])
}

/// `A5 ⋊ Z_p`, the generator acting by conjugation with an element `x` of
/// order `p`, and `S = ⟨x⟩ × Z_p`; `F = A5`.
pub fn nonsolvable(p: u32) -> Result<InstanceSpec, InstanceError> {
    let x = match p {
        2 => "(0 1)(2 3)",
        3 => "(0 1 2)",
        5 => "(0 1 2 3 4)",
        _ => {
            return Err(InstanceError::Hypothesis(format!(
                "nonsolvable:{p} needs p in {{2, 3, 5}}, the prime orders in A5"
            )))
        }
    };
    let group = format!("semidirect:(alt:5)x(cyclic:{p}):action=conj:[{x}]");
    let a = format!("({x},1)");
    let b = "((),a)".to_string();
    let f: Vec<String> = alternating_generators(5).into_iter().map(|g| format!("({g},1)")).collect();
    let f: Vec<&str> = f.iter().map(String::as_str).collect();
    Ok(spec(&format!("nonsolvable-{p}"), &group, &[&a, &b], bilinear(p, &a, &b), Some(&f)))
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Least `k > 1` with `k^q ≡ 1 (mod p)`.
fn unit_of_order(q: u32, p: u32) -> Option<u32> {
    (2..p).find(|&k| {
        let mut x = 1u64;
        for _ in 0..q {
            x = x * k as u64 % p as u64;
        }
        x == 1
    })
}

/// `(Z_p ⋊ Z_q) × (Z_r ⋊ Z_q)` with `S = Z_q × Z_q`, one factor in each.
pub fn supersolvable(p: u32, q: u32, r: u32) -> Result<InstanceSpec, InstanceError> {
    if !(is_prime(p) && is_prime(q) && is_prime(r)) {
        return Err(InstanceError::Hypothesis(format!("supersolvable:{p},{q},{r} needs primes")));
    }
    if (p - 1) % q != 0 || (r - 1) % q != 0 {
        return Err(InstanceError::Hypothesis(format!(
            "supersolvable:{p},{q},{r} needs q dividing p-1 and r-1"
        )));
    }
    let factor = |n: u32| {
        let k = unit_of_order(q, n).expect("q divides n-1");
        format!("semidirect:(cyclic:{n})x(cyclic:{q}):action=[a^{k}]")
    };
    let group = format!("product:({})x({})", factor(p), factor(r));
    let (a, b) = ("((1,a),(1,1))", "((1,1),(1,a))");
    Ok(spec(&format!("supersolvable-{p}-{q}-{r}"), &group, &[a, b], bilinear(q, a, b), None))
}

/// Resolves an example family name.
pub fn by_name(name: &str) -> Result<Vec<InstanceSpec>, InstanceError> {
    let bad = || InstanceError::Parse(format!("unknown example {name:?}"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (kind, arg) = name.split_once(':').unwrap_or((name, ""));
    match kind {
        "klein-dihedral" if arg.is_empty() => Ok(vec![klein_dihedral()]),
        "catalog" if arg.is_empty() => Ok(small_catalog()),
        "symmetric" => symmetric(num(arg)? as usize),
        "nonsolvable" => Ok(vec![nonsolvable(num(arg)?)?]),
        "supersolvable" => {
            let v: Vec<u32> = arg.split(',').map(num).collect::<Result<_, _>>()?;
            match v[..] {
                [p, q, r] => Ok(vec![supersolvable(p, q, r)?]),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}
