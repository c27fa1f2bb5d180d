//! Finite groups given by dense multiplication tables.
//!
//! Every group stores its full Cayley table. Element `0` is always the
//! identity. Subgroups keep an `Arc` to their parent so that the algebraic
//! layers above can pass them around without threading the group through
//! every call.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

/// Index of a group element.
pub type Elem = usize;

/// Default cap on the order of any constructed group.
pub const DEFAULT_MAX_ORDER: usize = 2000;

/// Default cap on the number of subgroups produced by lattice enumeration.
pub const DEFAULT_LATTICE_CAP: usize = 20_000;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds the configured cap of {cap}")]
    OrderLimit { cap: usize },
    #[error("subgroup lattice exceeds the configured cap of {cap} entries")]
    LatticeLimit { cap: usize },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("elements do not form a subgroup: {0}")]
    NotASubgroup(String),
}

/// How the elements of a group were produced; used to resolve element names.
#[derive(Debug, Clone)]
enum Repr {
    Abstract,
    Perm {
        degree: usize,
        perms: Vec<Vec<u32>>,
        index: HashMap<Vec<u32>, Elem>,
    },
    /// Element `(a, b)` has index `a * |right| + b`.
    Pair {
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
    },
}

/// A finite group with a complete multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    gens: Vec<Elem>,
    repr: Repr,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table.
    ///
    /// The table must have identity `0`, and each row and column must be a
    /// permutation. Associativity is not checked here (it is cubic); see
    /// [`FiniteGroup::is_associative`].
    pub fn from_table(
        order: usize,
        mul: Vec<u32>,
        labels: Vec<String>,
        gens: Vec<Elem>,
    ) -> Result<Self, GroupError> {
        Self::from_table_with_repr(order, mul, labels, gens, Repr::Abstract)
    }

    fn from_table_with_repr(
        order: usize,
        mul: Vec<u32>,
        labels: Vec<String>,
        gens: Vec<Elem>,
        repr: Repr,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidTable("empty group".into()));
        }
        if mul.len() != order * order || labels.len() != order {
            return Err(GroupError::InvalidTable("table shape does not match order".into()));
        }
        let mut seen = vec![false; order];
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(GroupError::InvalidTable(format!("element 0 is not an identity at {a}")));
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let c = mul[a * order + b] as usize;
                if c >= order || std::mem::replace(&mut seen[c], true) {
                    return Err(GroupError::InvalidTable(format!("row {a} is not a permutation")));
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let c = mul[b * order + a] as usize;
                if std::mem::replace(&mut seen[c], true) {
                    return Err(GroupError::InvalidTable(format!("column {a} is not a permutation")));
                }
            }
        }
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| mul[a * order + b] == 0)
                .expect("rows are permutations");
            inv[a] = b as u32;
        }
        for a in 0..order {
            if mul[inv[a] as usize * order + a] != 0 {
                return Err(GroupError::InvalidTable(format!("element {a} has no two-sided inverse")));
            }
        }
        if gens.iter().any(|&g| g >= order) {
            return Err(GroupError::InvalidTable("generator out of range".into()));
        }
        Ok(FiniteGroup { order, mul, inv, labels, gens, repr })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    #[inline]
    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Generators recorded at construction.
    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Exhaustive associativity check, `O(n³)`.
    pub fn is_associative(&self) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| {
                let ab = self.mul(a, b);
                self.elements()
                    .all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    /// The permutation realizing `a`, when the group was built from permutations.
    pub fn permutation(&self, a: Elem) -> Option<&[u32]> {
        match &self.repr {
            Repr::Perm { perms, .. } => Some(&perms[a]),
            _ => None,
        }
    }

    pub fn permutation_degree(&self) -> Option<usize> {
        match &self.repr {
            Repr::Perm { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    /// Factors of a direct or semidirect product, in construction order.
    pub fn factors(&self) -> Option<(&Arc<FiniteGroup>, &Arc<FiniteGroup>)> {
        match &self.repr {
            Repr::Pair { left, right } => Some((left, right)),
            _ => None,
        }
    }

    /// Resolves an element name.
    ///
    /// Accepts the element's label, `#k` for raw index `k`, cycle notation
    /// for permutation groups and `(x,y)` pairs for product groups.
    pub fn find(&self, name: &str) -> Option<Elem> {
        let name = name.trim();
        if let Some(idx) = name.strip_prefix('#') {
            return idx.parse().ok().filter(|&i: &usize| i < self.order);
        }
        if let Some(i) = self.labels.iter().position(|l| l == name) {
            return Some(i);
        }
        match &self.repr {
            Repr::Abstract => None,
            Repr::Perm { degree, index, .. } => {
                let p = parse_cycles(name, *degree).ok()?;
                index.get(&p).copied()
            }
            Repr::Pair { left, right } => {
                let inner = name.strip_prefix('(')?.strip_suffix(')')?;
                let parts = split_top_level(inner, ',');
                if parts.len() != 2 {
                    return None;
                }
                let a = left.find(parts[0])?;
                let b = right.find(parts[1])?;
                Some(a * right.order() + b)
            }
        }
    }

    /// Elements commuting with everything.
    pub fn center(self: &Arc<Self>) -> Subgroup {
        let elems: Vec<Elem> = self
            .elements()
            .filter(|&z| self.elements().all(|x| self.commute(z, x)))
            .collect();
        Subgroup::from_sorted_unchecked(self, elems)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}", self.order)
    }
}

fn check_order(n: usize, cap: usize) -> Result<(), GroupError> {
    if n > cap {
        Err(GroupError::OrderLimit { cap })
    } else {
        Ok(())
    }
}

/// Composition `(p ∘ q)(x) = p(q(x))`.
fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
    q.iter().map(|&x| p[x as usize]).collect()
}

/// Renders a permutation in cycle notation, e.g. `(0 1 2)(3 4)`; the identity is `()`.
pub fn cycle_notation(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&x.to_string());
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses cycle notation on `0..degree`.
///
/// Points inside a cycle are separated by spaces; when `degree <= 10` a cycle
/// without spaces such as `(012)` is read digit by digit.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Vec<u32>, String> {
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    let s = s.trim();
    if s.is_empty() {
        return Err("empty permutation".into());
    }
    let mut rest = s;
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected '(' in {s:?}"))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| format!("unbalanced parentheses in {s:?}"))?;
        let body = body_start[..close].trim();
        rest = body_start[close + 1..].trim_start();
        let points: Vec<usize> = if body.is_empty() {
            Vec::new()
        } else if body.contains(char::is_whitespace) || degree > 10 {
            body.split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|e| format!("bad point {t:?}: {e}")))
                .collect::<Result<_, _>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| format!("bad point {c:?}")))
                .collect::<Result<_, _>>()?
        };
        let mut uniq = HashSet::new();
        for &p in &points {
            if p >= degree {
                return Err(format!("point {p} out of range for degree {degree}"));
            }
            if !uniq.insert(p) {
                return Err(format!("repeated point {p} in cycle"));
            }
        }
        // Cycles compose right to left, like the elements they denote.
        let mut cycle: Vec<u32> = (0..degree as u32).collect();
        for (k, &p) in points.iter().enumerate() {
            cycle[p] = points[(k + 1) % points.len()] as u32;
        }
        perm = compose(&perm, &cycle);
    }
    Ok(perm)
}

/// Splits on `sep` occurring outside any `()` or `[]` nesting.
pub fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

/// Closure of a set of permutations of `0..degree`.
///
/// Elements are numbered breadth-first from the identity, multiplying on the
/// right by the generators in the given order.
pub fn group_from_generators(
    degree: usize,
    gens: &[Vec<u32>],
    max_order: usize,
) -> Result<FiniteGroup, GroupError> {
    for (index, g) in gens.iter().enumerate() {
        let mut seen = vec![false; degree];
        let ok = g.len() == degree
            && g.iter().all(|&x| {
                (x as usize) < degree && !std::mem::replace(&mut seen[x as usize], true)
            });
        if !ok {
            return Err(GroupError::NotAPermutation { index, degree });
        }
    }
    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut perms = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&perms[x], g);
            if !index.contains_key(&y) {
                check_order(perms.len() + 1, max_order)?;
                index.insert(y.clone(), perms.len());
                queue.push_back(perms.len());
                perms.push(y);
            }
        }
    }
    let n = perms.len();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = index[&compose(&perms[a], &perms[b])] as u32;
        }
    }
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    let gen_idx = gens.iter().map(|g| index[g]).collect();
    FiniteGroup::from_table_with_repr(n, mul, labels, gen_idx, Repr::Perm { degree, perms, index })
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// Cyclic group of order `n` with elements `1, a, a^2, …`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidTable("cyclic group of order 0".into()));
    }
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = ((a + b) % n) as u32;
        }
    }
    let labels = (0..n)
        .map(|k| if k == 0 { "1".to_string() } else { power_label("a", k) })
        .collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    FiniteGroup::from_table(n, mul, labels, gens)
}

/// Dihedral group of order `2n`: element `r^k f^e` has index `k + n·e`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidTable("dihedral group needs n >= 1".into()));
    }
    let order = 2 * n;
    let mut mul = vec![0u32; order * order];
    for x in 0..order {
        let (a, ex) = (x % n, x / n);
        for y in 0..order {
            let (b, ey) = (y % n, y / n);
            let k = if ex == 0 { (a + b) % n } else { (a + n - b) % n };
            mul[x * order + y] = (k + n * ((ex + ey) % 2)) as u32;
        }
    }
    let labels = (0..order)
        .map(|x| {
            let r = power_label("r", x % n);
            match (x / n, r.is_empty()) {
                (0, true) => "1".to_string(),
                (0, false) => r,
                (_, _) => format!("{r}f"),
            }
        })
        .collect();
    let mut gens = Vec::new();
    if n > 1 {
        gens.push(1);
    }
    gens.push(n);
    FiniteGroup::from_table(order, mul, labels, gens)
}

/// Symmetric group on `0..n`.
pub fn symmetric(n: usize, max_order: usize) -> Result<FiniteGroup, GroupError> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(parse_cycles("(0 1)", n).expect("valid"));
    }
    if n >= 3 {
        let cycle: Vec<String> = (0..n).map(|k| k.to_string()).collect();
        gens.push(parse_cycles(&format!("({})", cycle.join(" ")), n).expect("valid"));
    }
    group_from_generators(n.max(1), &gens, max_order)
}

/// Alternating group on `0..n`, generated by the 3-cycles `(0 1 k)`.
pub fn alternating(n: usize, max_order: usize) -> Result<FiniteGroup, GroupError> {
    let gens: Vec<Vec<u32>> = (2..n)
        .map(|k| parse_cycles(&format!("(0 1 {k})"), n).expect("valid"))
        .collect();
    group_from_generators(n.max(1), &gens, max_order)
}

/// Direct product; `(a, b)` has index `a·|G2| + b`.
pub fn direct_product(
    g1: &Arc<FiniteGroup>,
    g2: &Arc<FiniteGroup>,
    max_order: usize,
) -> Result<FiniteGroup, GroupError> {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1.checked_mul(n2).ok_or(GroupError::OrderLimit { cap: max_order })?;
    check_order(n, max_order)?;
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        let (a1, b1) = (x / n2, x % n2);
        for y in 0..n {
            let (a2, b2) = (y / n2, y % n2);
            mul[x * n + y] = (g1.mul(a1, a2) * n2 + g2.mul(b1, b2)) as u32;
        }
    }
    let labels = (0..n)
        .map(|x| format!("({},{})", g1.label(x / n2), g2.label(x % n2)))
        .collect();
    let gens = g1
        .generators()
        .iter()
        .map(|&a| a * n2)
        .chain(g2.generators().iter().copied())
        .collect();
    FiniteGroup::from_table_with_repr(
        n,
        mul,
        labels,
        gens,
        Repr::Pair { left: g1.clone(), right: g2.clone() },
    )
}

/// Semidirect product `N ⋊ H` with `(n1,h1)(n2,h2) = (n1·action(h1,n2), h1h2)`.
///
/// `action[h][n]` is the image of `n` under `h`. Each row must be an
/// automorphism of `N` and `h ↦ action[h]` a homomorphism; both are checked.
/// Element `(n, h)` has index `n·|H| + h`.
pub fn semidirect_product(
    n_grp: &Arc<FiniteGroup>,
    h_grp: &Arc<FiniteGroup>,
    action: &[Vec<Elem>],
    max_order: usize,
) -> Result<FiniteGroup, GroupError> {
    let (nn, nh) = (n_grp.order(), h_grp.order());
    if action.len() != nh || action.iter().any(|row| row.len() != nn) {
        return Err(GroupError::InvalidAction("action table has the wrong shape".into()));
    }
    for (h, row) in action.iter().enumerate() {
        let mut seen = vec![false; nn];
        if row.iter().any(|&x| x >= nn || std::mem::replace(&mut seen[x], true)) {
            return Err(GroupError::InvalidAction(format!(
                "action of {} is not a bijection",
                h_grp.label(h)
            )));
        }
        for a in 0..nn {
            for b in 0..nn {
                if row[n_grp.mul(a, b)] != n_grp.mul(row[a], row[b]) {
                    return Err(GroupError::InvalidAction(format!(
                        "action of {} is not a homomorphism",
                        h_grp.label(h)
                    )));
                }
            }
        }
    }
    for h1 in 0..nh {
        for h2 in 0..nh {
            let h12 = h_grp.mul(h1, h2);
            if (0..nn).any(|x| action[h12][x] != action[h1][action[h2][x]]) {
                return Err(GroupError::InvalidAction(
                    "action is not a homomorphism H -> Aut(N)".into(),
                ));
            }
        }
    }
    let n = nn.checked_mul(nh).ok_or(GroupError::OrderLimit { cap: max_order })?;
    check_order(n, max_order)?;
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        let (n1, h1) = (x / nh, x % nh);
        for y in 0..n {
            let (n2, h2) = (y / nh, y % nh);
            let nprod = n_grp.mul(n1, action[h1][n2]);
            mul[x * n + y] = (nprod * nh + h_grp.mul(h1, h2)) as u32;
        }
    }
    let labels = (0..n)
        .map(|x| format!("({},{})", n_grp.label(x / nh), h_grp.label(x % nh)))
        .collect();
    let gens = n_grp
        .generators()
        .iter()
        .map(|&a| a * nh)
        .chain(h_grp.generators().iter().copied())
        .collect();
    FiniteGroup::from_table_with_repr(
        n,
        mul,
        labels,
        gens,
        Repr::Pair { left: n_grp.clone(), right: h_grp.clone() },
    )
}

/// Extends generator images to a homomorphism `source → target`.
///
/// `images[k]` is the image of `source.generators()[k]`. Fails unless the
/// assignment extends consistently.
pub fn extend_homomorphism(
    source: &FiniteGroup,
    target: &FiniteGroup,
    images: &[Elem],
) -> Result<Vec<Elem>, GroupError> {
    let gens = source.generators();
    if gens.len() != images.len() {
        return Err(GroupError::InvalidAction(format!(
            "expected {} generator images, got {}",
            gens.len(),
            images.len()
        )));
    }
    let mut map = vec![usize::MAX; source.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = source.mul(x, g);
            let fy = target.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return Err(GroupError::InvalidAction(
                    "generator images do not define a homomorphism".into(),
                ));
            }
        }
    }
    if map.contains(&usize::MAX) {
        return Err(GroupError::InvalidAction(
            "recorded generators do not generate the group".into(),
        ));
    }
    for a in source.elements() {
        for b in source.elements() {
            if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                return Err(GroupError::InvalidAction(
                    "generator images do not define a homomorphism".into(),
                ));
            }
        }
    }
    Ok(map)
}

const ABSENT: u32 = u32::MAX;

/// A subgroup of a [`FiniteGroup`], stored as a sorted element list plus a
/// parent-indexed position table (`ABSENT` for non-members).
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    elements: Vec<Elem>,
    pos: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.elements.len())
            .field("elements", &self.elements)
            .finish()
    }
}

impl Subgroup {
    fn from_sorted_unchecked(group: &Arc<FiniteGroup>, elements: Vec<Elem>) -> Self {
        let mut pos = vec![ABSENT; group.order()];
        for (k, &e) in elements.iter().enumerate() {
            pos[e] = k as u32;
        }
        Subgroup { group: group.clone(), elements, pos }
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(group: &Arc<FiniteGroup>, gens: &[Elem]) -> Self {
        let mut member = vec![false; group.order()];
        member[0] = true;
        let mut elements = vec![0];
        let gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &g in &gens {
                let y = group.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Self::from_sorted_unchecked(group, elements)
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self::from_sorted_unchecked(group, vec![0])
    }

    pub fn whole(group: &Arc<FiniteGroup>) -> Self {
        Self::from_sorted_unchecked(group, group.elements().collect())
    }

    /// Wraps an explicit element set, verifying closure.
    pub fn from_elements(group: &Arc<FiniteGroup>, elems: &[Elem]) -> Result<Self, GroupError> {
        let mut elements: Vec<Elem> = elems.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&e| e >= group.order()) {
            return Err(GroupError::NotASubgroup("element out of range".into()));
        }
        let sub = Self::from_sorted_unchecked(group, elements);
        if !sub.contains(0) {
            return Err(GroupError::NotASubgroup("missing identity".into()));
        }
        for &a in &sub.elements {
            if !sub.contains(group.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &sub.elements {
                if !sub.contains(group.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!(
                        "not closed under multiplication at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(sub)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.pos[x] != ABSENT
    }

    /// Position of `x` in the sorted element list.
    #[inline]
    pub fn position(&self, x: Elem) -> Option<usize> {
        match self.pos[x] {
            ABSENT => None,
            k => Some(k as usize),
        }
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.group.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, g: Elem) -> Subgroup {
        let mut elems: Vec<Elem> = self.elements.iter().map(|&x| self.group.conj(g, x)).collect();
        elems.sort_unstable();
        Self::from_sorted_unchecked(&self.group, elems)
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.group;
        g.elements()
            .all(|x| self.elements.iter().all(|&h| self.contains(g.conj(x, h))))
    }

    /// `{t ∈ self : ts = st}`.
    pub fn centralizer_of(&self, s: Elem) -> Subgroup {
        let elems = self
            .elements
            .iter()
            .copied()
            .filter(|&t| self.group.commute(t, s))
            .collect();
        Self::from_sorted_unchecked(&self.group, elems)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elems = self
            .elements
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Self::from_sorted_unchecked(&self.group, elems)
    }

    /// Subgroup generated by the union.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Subgroup::generated(&self.group, &gens)
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = Subgroup::trivial(&self.group);
        for &x in &self.elements {
            if !current.contains(x) {
                gens.push(x);
                current = Subgroup::generated(&self.group, &gens);
                if current.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| self.group.commute(a, b)))
    }
}

/// `{t ∈ within : ts = st}`.
pub fn centralizer(s: Elem, within: &Subgroup) -> Subgroup {
    within.centralizer_of(s)
}

/// Conjugacy classes, each sorted, listed by smallest member.
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<Vec<Elem>> {
    let n = group.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut class: Vec<Elem> = group.elements().map(|g| group.conj(g, x)).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            assigned[y] = true;
        }
        classes.push(class);
    }
    classes
}

fn sort_lattice(subs: &mut [Subgroup]) {
    subs.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements().cmp(b.elements()))
    });
}

/// Closes a family of subgroups under pairwise joins.
fn join_closure(
    group: &Arc<FiniteGroup>,
    seeds: Vec<Subgroup>,
    cap: usize,
) -> Result<Vec<Subgroup>, GroupError> {
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut lattice: Vec<Subgroup> = Vec::new();
    let mut push = |s: Subgroup, lattice: &mut Vec<Subgroup>| -> Result<(), GroupError> {
        if seen.insert(s.elements.clone()) {
            if lattice.len() >= cap {
                return Err(GroupError::LatticeLimit { cap });
            }
            lattice.push(s);
        }
        Ok(())
    };
    push(Subgroup::trivial(group), &mut lattice)?;
    for s in seeds {
        push(s, &mut lattice)?;
    }
    let base_len = lattice.len();
    // Every lattice element is a join of seeds, so joining with seeds suffices.
    let mut i = 0;
    while i < lattice.len() {
        for j in 0..base_len {
            let joined = lattice[i].join(&lattice[j]);
            push(joined, &mut lattice)?;
        }
        i += 1;
    }
    sort_lattice(&mut lattice);
    Ok(lattice)
}

/// All normal subgroups, from `{1}` to `G`, sorted by order then elements.
///
/// Built as the join closure of the normal closures of conjugacy classes.
pub fn normal_subgroups(group: &Arc<FiniteGroup>, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    let seeds = conjugacy_classes(group)
        .into_iter()
        .skip(1)
        .map(|class| Subgroup::generated(group, &class))
        .collect();
    join_closure(group, seeds, cap)
}

/// All subgroups, as the join closure of the cyclic subgroups.
pub fn all_subgroups(group: &Arc<FiniteGroup>, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    let mut cyclic_seen = HashSet::new();
    let seeds = group
        .elements()
        .skip(1)
        .map(|x| Subgroup::generated(group, &[x]))
        .filter(|s| cyclic_seen.insert(s.elements.clone()))
        .collect();
    join_closure(group, seeds, cap)
}

/// Left cosets `g_i S` with the least element of each coset as representative.
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    subgroup: Subgroup,
    reps: Vec<Elem>,
    rep_of: Vec<(usize, Elem)>,
}

impl CosetDecomposition {
    pub fn new(subgroup: &Subgroup) -> Self {
        let group = subgroup.group();
        let n = group.order();
        let mut rep_of = vec![(usize::MAX, 0); n];
        let mut reps = Vec::with_capacity(subgroup.index());
        for g in 0..n {
            if rep_of[g].0 != usize::MAX {
                continue;
            }
            let i = reps.len();
            reps.push(g);
            for &t in subgroup.elements() {
                rep_of[group.mul(g, t)] = (i, t);
            }
        }
        CosetDecomposition { subgroup: subgroup.clone(), reps, rep_of }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> Elem {
        self.reps[i]
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// `(i, t)` with `g = g_i t`, `t ∈ S`.
    #[inline]
    pub fn rep_of(&self, g: Elem) -> (usize, Elem) {
        self.rep_of[g]
    }
}

pub fn left_coset_decomposition(subgroup: &Subgroup) -> CosetDecomposition {
    CosetDecomposition::new(subgroup)
}
