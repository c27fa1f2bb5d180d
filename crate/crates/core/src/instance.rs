//! Plain-text instance files and the group specification grammar.
//!
//! ```text
//! [instance]
//! name = klein-dihedral
//!
//! [group]
//! dihedral:4
//!
//! [s]
//! r^2
//! f
//!
//! [cocycle]
//! builtin = bilinear:2
//! iso = r^2, f
//!
//! [f]
//! r
//! ```
//!
//! `[s]` and `[f]` list generators, one element name per line. A cocycle is
//! either `builtin = bilinear:q` with `iso = a, b`, `builtin = trivial`, or
//! `modulus = m` followed by lines `s t e`; unlisted table entries are 0.
//! Lines starting with `# ` are comments.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::cocycle::{
    alpha_regular_elements, bilinear, is_nondegenerate, normalize_inverse_pairs, CocycleError,
    OneCochain, PairLabeling, TwoCocycle,
};
use crate::galois::{GaloisError, GaloisObject};
use crate::group::{
    self, extend_homomorphism, parse_cycles, split_top_level, Elem, FiniteGroup, GroupError,
    Subgroup, DEFAULT_LATTICE_CAP, DEFAULT_MAX_ORDER,
};

/// Failure classes, matching the CLI exit codes 1, 2 and 3.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("size limit: {0}")]
    SizeLimit(String),
}

impl InstanceError {
    pub fn exit_code(&self) -> i32 {
        match self {
            InstanceError::Parse(_) => 1,
            InstanceError::Hypothesis(_) => 2,
            InstanceError::SizeLimit(_) => 3,
        }
    }
}

impl From<GroupError> for InstanceError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderLimit { .. } | GroupError::LatticeLimit { .. } => {
                InstanceError::SizeLimit(e.to_string())
            }
            GroupError::NotAPermutation { .. } | GroupError::InvalidTable(_) => {
                InstanceError::Parse(e.to_string())
            }
            GroupError::InvalidAction(_) | GroupError::NotASubgroup(_) => {
                InstanceError::Hypothesis(e.to_string())
            }
        }
    }
}

impl From<CocycleError> for InstanceError {
    fn from(e: CocycleError) -> Self {
        InstanceError::Hypothesis(e.to_string())
    }
}

impl From<GaloisError> for InstanceError {
    fn from(e: GaloisError) -> Self {
        InstanceError::Hypothesis(e.to_string())
    }
}

/// Validation errors with element labels instead of indices.
fn labelled(g: &FiniteGroup, e: CocycleError) -> InstanceError {
    let l = |x: Elem| g.label(x);
    InstanceError::Hypothesis(match e {
        CocycleError::IdentityViolated(r, s, t) => {
            format!("cocycle identity fails at ({}, {}, {})", l(r), l(s), l(t))
        }
        CocycleError::NotNormalized(s) => format!("cocycle is not normalized at {}", l(s)),
        other => other.to_string(),
    })
}

fn parse_err(msg: impl Into<String>) -> InstanceError {
    InstanceError::Parse(msg.into())
}

/// Splits `(inner)rest` at the matching parenthesis.
fn take_group<'a>(s: &'a str, open: char, close: char) -> Result<(&'a str, &'a str), InstanceError> {
    let s = s.trim_start();
    if !s.starts_with(open) {
        return Err(parse_err(format!("expected '{open}' at {s:?}")));
    }
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        if c == '(' || c == '[' {
            depth += 1;
        } else if c == ')' || c == ']' {
            depth -= 1;
            if depth == 0 {
                if c != close {
                    return Err(parse_err(format!("mismatched bracket in {s:?}")));
                }
                return Ok((&s[1..i], &s[i + 1..]));
            }
        }
    }
    Err(parse_err(format!("unbalanced brackets in {s:?}")))
}

fn parse_usize(s: &str, what: &str) -> Result<usize, InstanceError> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(format!("{what}: expected a non-negative integer, got {s:?}")))
}

fn find_elem(g: &FiniteGroup, name: &str) -> Result<Elem, InstanceError> {
    g.find(name).ok_or_else(|| parse_err(format!("unknown element {name:?}")))
}

/// Builds a group from the specification grammar:
/// `cyclic:n`, `dihedral:n`, `sym:n`, `alt:n`, `perm:degree:g1,g2,…`,
/// `product:(A)x(B)[x(C)…]`, and
/// `semidirect:(N)x(H):action=[…][…]` or `…:action=conj:[p1][p2]…`.
///
/// A plain action lists, for each generator of `H`, the images of the
/// generators of `N`. A `conj` action gives, per generator of `H`, a
/// permutation normalizing the permutation group `N`.
pub fn parse_group(spec: &str, max_order: usize) -> Result<Arc<FiniteGroup>, InstanceError> {
    let g = parse_group_inner(spec, max_order)?;
    if g.order() > max_order {
        return Err(GroupError::OrderLimit { cap: max_order }.into());
    }
    Ok(g)
}

fn parse_group_inner(spec: &str, max_order: usize) -> Result<Arc<FiniteGroup>, InstanceError> {
    let spec = spec.trim();
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| parse_err(format!("group spec {spec:?} has no kind")))?;
    let g = match kind.trim() {
        "cyclic" => group::cyclic(parse_usize(rest, "cyclic order")?)?,
        "dihedral" => group::dihedral(parse_usize(rest, "dihedral degree")?)?,
        "sym" => group::symmetric(parse_usize(rest, "sym degree")?, max_order)?,
        "alt" => group::alternating(parse_usize(rest, "alt degree")?, max_order)?,
        "perm" => {
            let (deg, gens) = rest
                .split_once(':')
                .ok_or_else(|| parse_err("perm spec needs perm:degree:generators"))?;
            let degree = parse_usize(deg, "perm degree")?;
            let gens = split_top_level(gens, ',')
                .into_iter()
                .filter(|g| !g.is_empty())
                .map(|g| parse_cycles(g, degree).map_err(parse_err))
                .collect::<Result<Vec<_>, _>>()?;
            group::group_from_generators(degree, &gens, max_order)?
        }
        "product" => {
            let (first, mut rest) = take_group(rest, '(', ')')?;
            let mut acc = parse_group(first, max_order)?;
            while !rest.trim().is_empty() {
                let r = rest
                    .trim_start()
                    .strip_prefix('x')
                    .ok_or_else(|| parse_err(format!("expected 'x' at {rest:?}")))?;
                let (next, r2) = take_group(r, '(', ')')?;
                let rhs = parse_group(next, max_order)?;
                acc = Arc::new(group::direct_product(&acc, &rhs, max_order)?);
                rest = r2;
            }
            return Ok(acc);
        }
        "semidirect" => {
            let (n_spec, r) = take_group(rest, '(', ')')?;
            let r = r
                .trim_start()
                .strip_prefix('x')
                .ok_or_else(|| parse_err("semidirect spec needs (N)x(H)"))?;
            let (h_spec, r) = take_group(r, '(', ')')?;
            let action = r
                .trim()
                .strip_prefix(":action=")
                .ok_or_else(|| parse_err("semidirect spec needs :action="))?;
            let n = parse_group(n_spec, max_order)?;
            let h = parse_group(h_spec, max_order)?;
            let table = parse_action(&n, &h, action)?;
            group::semidirect_product(&n, &h, &table, max_order)?
        }
        other => return Err(parse_err(format!("unknown group kind {other:?}"))),
    };
    Ok(Arc::new(g))
}

fn bracket_list(s: &str) -> Result<Vec<&str>, InstanceError> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let (inner, r) = take_group(rest, '[', ']')?;
        out.push(inner);
        rest = r.trim();
    }
    Ok(out)
}

/// Automorphism of `N` for each generator of `H`, extended to all of `H`.
fn parse_action(n: &FiniteGroup, h: &FiniteGroup, action: &str) -> Result<Vec<Vec<Elem>>, InstanceError> {
    let per_gen: Vec<Vec<Elem>> = if let Some(conj) = action.strip_prefix("conj:") {
        let degree = n
            .permutation_degree()
            .ok_or_else(|| parse_err("conj action needs a permutation group N"))?;
        bracket_list(conj)?
            .into_iter()
            .map(|p| {
                let p = parse_cycles(p, degree).map_err(parse_err)?;
                let pinv = invert(&p);
                n.elements()
                    .map(|x| {
                        let px = n.permutation(x).expect("permutation group");
                        let img = compose(&compose(&p, px), &pinv);
                        let name = group::cycle_notation(&img);
                        n.find(&name).ok_or_else(|| {
                            InstanceError::Hypothesis(format!("{name} lies outside N; conj action does not normalize N"))
                        })
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?
    } else {
        bracket_list(action)?
            .into_iter()
            .map(|imgs| {
                let imgs = split_top_level(imgs, ',')
                    .into_iter()
                    .map(|x| find_elem(n, x))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(extend_homomorphism(n, n, &imgs)?)
            })
            .collect::<Result<_, InstanceError>>()?
    };
    if per_gen.len() != h.generators().len() {
        return Err(parse_err(format!(
            "action lists {} automorphisms but H has {} generators",
            per_gen.len(),
            h.generators().len()
        )));
    }
    // Extend along H by breadth-first search; consistency is re-checked by
    // the semidirect constructor.
    let mut table: Vec<Option<Vec<Elem>>> = vec![None; h.order()];
    table[0] = Some(n.elements().collect());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (k, &gen) in h.generators().iter().enumerate() {
            let y = h.mul(x, gen);
            if table[y].is_none() {
                let tx = table[x].as_ref().expect("visited");
                table[y] = Some(per_gen[k].iter().map(|&e| tx[e]).collect());
                queue.push_back(y);
            }
        }
    }
    table
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| InstanceError::Hypothesis("H generators do not generate H".into()))
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    // Right to left: (a∘b)(x) = a(b(x)).
    b.iter().map(|&x| a[x as usize]).collect()
}

fn invert(p: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleSpec {
    Bilinear { q: u32, a: String, b: String },
    Trivial,
    Table { modulus: u32, entries: Vec<(String, String, i64)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub max_order: usize,
    pub lattice_cap: usize,
    pub oracle: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_order: DEFAULT_MAX_ORDER, lattice_cap: DEFAULT_LATTICE_CAP, oracle: false }
    }
}

/// An unresolved instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub name: String,
    pub group: String,
    pub s_generators: Vec<String>,
    pub cocycle: CocycleSpec,
    pub f_generators: Option<Vec<String>>,
    pub options: Options,
}

/// A resolved instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    /// The cocycle as supplied.
    pub raw_alpha: TwoCocycle,
    /// Cohomologous, inverse-normalized: `alpha = raw_alpha · dφ`.
    pub alpha: TwoCocycle,
    pub phi: OneCochain,
    pub f: Option<Subgroup>,
    pub options: Options,
    pub notes: Vec<String>,
}

impl Instance {
    pub fn s(&self) -> &Subgroup {
        self.alpha.subgroup()
    }

    pub fn galois(&self) -> Result<GaloisObject, InstanceError> {
        Ok(GaloisObject::build(&self.alpha)?)
    }
}

fn is_comment(line: &str) -> bool {
    line == "#" || line.starts_with("# ")
}

impl InstanceSpec {
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let mut section: Option<String> = None;
        let mut name = None;
        let mut group = None;
        let mut s_gens = Vec::new();
        let mut f_gens: Option<Vec<String>> = None;
        let mut builtin = None;
        let mut iso = None;
        let mut modulus = None;
        let mut entries = Vec::new();
        let mut options = Options::default();
        let mut seen_s = false;
        let mut seen_cocycle = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let at = |m: String| parse_err(format!("line {}: {m}", lineno + 1));
            if line.is_empty() || is_comment(line) {
                continue;
            }
            if line.starts_with('[') && line.ends_with(']') && !line.contains(' ') {
                let sec = line[1..line.len() - 1].to_ascii_lowercase();
                match sec.as_str() {
                    "instance" | "group" | "options" => {}
                    "s" => seen_s = true,
                    "cocycle" => seen_cocycle = true,
                    "f" => {
                        f_gens.get_or_insert_with(Vec::new);
                    }
                    other => return Err(at(format!("unknown section [{other}]"))),
                }
                section = Some(sec);
                continue;
            }
            let kv = || {
                line.split_once('=')
                    .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                    .ok_or_else(|| at(format!("expected key = value, got {line:?}")))
            };
            match section.as_deref() {
                None => return Err(at("content before any section".into())),
                Some("instance") => {
                    let (k, v) = kv()?;
                    match k.as_str() {
                        "name" => name = Some(v),
                        _ => return Err(at(format!("unknown key {k:?} in [instance]"))),
                    }
                }
                Some("group") => {
                    if group.replace(line.to_string()).is_some() {
                        return Err(at("[group] takes a single spec line".into()));
                    }
                }
                Some("s") => s_gens.push(line.to_string()),
                Some("f") => f_gens.as_mut().expect("section opened").push(line.to_string()),
                Some("cocycle") => {
                    let eq = line.find('=');
                    let key = eq.map(|i| line[..i].trim());
                    match key {
                        Some("builtin") | Some("iso") | Some("modulus") => {
                            let (k, v) = kv()?;
                            match k.as_str() {
                                "builtin" => builtin = Some(v),
                                "iso" => iso = Some(v),
                                _ => {
                                    modulus = Some(
                                        v.parse::<u32>()
                                            .ok()
                                            .filter(|&m| m > 0)
                                            .ok_or_else(|| at(format!("bad modulus {v:?}")))?,
                                    )
                                }
                            }
                        }
                        _ => {
                            let toks: Vec<&str> =
                                split_top_level(line, ' ').into_iter().filter(|t| !t.is_empty()).collect();
                            if toks.len() != 3 {
                                return Err(at(format!("expected 's t e', got {line:?}")));
                            }
                            let e = toks[2]
                                .parse::<i64>()
                                .map_err(|_| at(format!("bad exponent {:?}", toks[2])))?;
                            entries.push((toks[0].to_string(), toks[1].to_string(), e));
                        }
                    }
                }
                Some("options") => {
                    let (k, v) = kv()?;
                    match k.as_str() {
                        "max_order" => options.max_order = parse_usize(&v, "max_order")?,
                        "lattice_cap" => options.lattice_cap = parse_usize(&v, "lattice_cap")?,
                        "oracle" => {
                            options.oracle = v
                                .parse()
                                .map_err(|_| at(format!("oracle expects true or false, got {v:?}")))?
                        }
                        _ => return Err(at(format!("unknown option {k:?}"))),
                    }
                }
                Some(_) => unreachable!("sections are validated"),
            }
        }
        let group = group.ok_or_else(|| parse_err("missing [group] section"))?;
        if !seen_s {
            return Err(parse_err("missing [s] section"));
        }
        if !seen_cocycle {
            return Err(parse_err("missing [cocycle] section"));
        }
        let cocycle = match (builtin.as_deref(), modulus) {
            (Some(_), Some(_)) => return Err(parse_err("cocycle has both builtin and modulus")),
            (Some("trivial"), None) => CocycleSpec::Trivial,
            (Some(b), None) => {
                let q = b
                    .strip_prefix("bilinear:")
                    .and_then(|q| q.trim().parse::<u32>().ok())
                    .filter(|&q| q >= 2)
                    .ok_or_else(|| parse_err(format!("unknown builtin cocycle {b:?}")))?;
                let iso = iso.ok_or_else(|| parse_err("bilinear cocycle needs iso = a, b"))?;
                let parts = split_top_level(&iso, ',');
                if parts.len() != 2 {
                    return Err(parse_err(format!("iso needs two elements, got {iso:?}")));
                }
                if !entries.is_empty() {
                    return Err(parse_err("builtin cocycle takes no table entries"));
                }
                CocycleSpec::Bilinear { q, a: parts[0].to_string(), b: parts[1].to_string() }
            }
            (None, Some(m)) => CocycleSpec::Table { modulus: m, entries },
            (None, None) => return Err(parse_err("cocycle needs builtin = … or modulus = …")),
        };
        Ok(InstanceSpec {
            name: name.unwrap_or_else(|| "unnamed".to_string()),
            group,
            s_generators: s_gens,
            cocycle,
            f_generators: f_gens,
            options,
        })
    }

    /// Canonical text form; parses back to `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "[instance]\nname = {}\n\n[group]\n{}\n\n[s]", self.name, self.group);
        for g in &self.s_generators {
            let _ = writeln!(out, "{g}");
        }
        out.push_str("\n[cocycle]\n");
        match &self.cocycle {
            CocycleSpec::Bilinear { q, a, b } => {
                let _ = writeln!(out, "builtin = bilinear:{q}\niso = {a}, {b}");
            }
            CocycleSpec::Trivial => out.push_str("builtin = trivial\n"),
            CocycleSpec::Table { modulus, entries } => {
                let _ = writeln!(out, "modulus = {modulus}");
                for (s, t, e) in entries {
                    let _ = writeln!(out, "{s} {t} {e}");
                }
            }
        }
        if let Some(f) = &self.f_generators {
            out.push_str("\n[f]\n");
            for g in f {
                let _ = writeln!(out, "{g}");
            }
        }
        let d = Options::default();
        if self.options != d {
            out.push_str("\n[options]\n");
            if self.options.max_order != d.max_order {
                let _ = writeln!(out, "max_order = {}", self.options.max_order);
            }
            if self.options.lattice_cap != d.lattice_cap {
                let _ = writeln!(out, "lattice_cap = {}", self.options.lattice_cap);
            }
            if self.options.oracle != d.oracle {
                let _ = writeln!(out, "oracle = {}", self.options.oracle);
            }
        }
        out
    }

    /// Builds the group, subgroups and cocycle and checks every hypothesis.
    /// `max_order` overrides the file's option when given.
    pub fn resolve(&self, max_order: Option<usize>) -> Result<Instance, InstanceError> {
        let mut options = self.options.clone();
        if let Some(m) = max_order {
            options.max_order = m;
        }
        let g = parse_group(&self.group, options.max_order)?;
        let elems = |names: &[String]| -> Result<Vec<Elem>, InstanceError> {
            names.iter().map(|n| find_elem(&g, n)).collect()
        };
        let s = Subgroup::generated(&g, &elems(&self.s_generators)?);
        let f = match &self.f_generators {
            Some(names) => Some(Subgroup::generated(&g, &elems(names)?)),
            None => None,
        };
        let mut notes = Vec::new();
        let raw = match &self.cocycle {
            CocycleSpec::Trivial => TwoCocycle::trivial(&s),
            CocycleSpec::Bilinear { q, a, b } => {
                let lab = PairLabeling::from_generators(&s, *q, find_elem(&g, a)?, find_elem(&g, b)?)?;
                bilinear(&s, &lab)
            }
            CocycleSpec::Table { modulus, entries } => {
                let mut table = vec![0i64; s.order() * s.order()];
                let mut set = vec![false; table.len()];
                for (x, y, e) in entries {
                    let (xi, yi) = (find_elem(&g, x)?, find_elem(&g, y)?);
                    let pos = |z: Elem, n: &str| {
                        s.position(z).ok_or_else(|| parse_err(format!("cocycle entry {n:?} is not in S")))
                    };
                    let k = pos(xi, x)? * s.order() + pos(yi, y)?;
                    if std::mem::replace(&mut set[k], true) {
                        return Err(parse_err(format!("duplicate cocycle entry ({x}, {y})")));
                    }
                    table[k] = *e;
                }
                TwoCocycle::new(&s, *modulus, table)?
            }
        };
        raw.validate().into_result().map_err(|e| labelled(&g, e))?;
        let (alpha, phi) = if raw.is_inverse_normalized() {
            (raw.clone(), OneCochain::trivial(&s))
        } else {
            let (b, p) = normalize_inverse_pairs(&raw);
            if !matches!(self.cocycle, CocycleSpec::Bilinear { .. }) {
                notes.push(format!(
                    "cocycle replaced by a cohomologous inverse-normalized one at modulus {}",
                    b.modulus()
                ));
            }
            (b, p)
        };
        if !is_nondegenerate(&alpha) {
            let n = s.order();
            let r = (n as f64).sqrt().round() as usize;
            let reason = if r * r != n {
                format!("|S| = {n} is not a square")
            } else {
                let regs: Vec<&str> = alpha_regular_elements(&alpha).iter().map(|&x| g.label(x)).collect();
                format!("α-regular elements {{{}}}", regs.join(", "))
            };
            return Err(InstanceError::Hypothesis(format!("cocycle is degenerate: {reason}")));
        }
        Ok(Instance { name: self.name.clone(), group: g, raw_alpha: raw, alpha, phi, f, options, notes })
    }
}
