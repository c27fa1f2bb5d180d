//! Floating-point model of the Galois object as `S`-equivariant functions
//! `f: G → k_αS`, `f(sg) = s ▷ f(g)`, with `(g.f)(h) = f(hg)` and the
//! pointwise product. Shares nothing with the library beyond the input
//! group table and cocycle exponents.

#![allow(dead_code)]

use std::f64::consts::TAU;

use num_complex::Complex64 as C;

use hopfnorm::cocycle::TwoCocycle;
use hopfnorm::group::{Elem, FiniteGroup, Subgroup};

/// Pivot threshold for rank decisions.
pub const RANK_TOL: f64 = 1e-8;

pub struct Echelon {
    n: usize,
    rows: Vec<(usize, Vec<C>)>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nullity(&self) -> usize {
        self.n - self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    pub fn insert(&mut self, mut row: Vec<C>) {
        if self.is_full() {
            return;
        }
        for (p, r) in &self.rows {
            let c = row[*p];
            if c.norm() > 0.0 {
                for (x, y) in row.iter_mut().zip(r) {
                    *x -= c * y;
                }
            }
        }
        let (p, best) = row
            .iter()
            .enumerate()
            .map(|(k, x)| (k, x.norm()))
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best > RANK_TOL {
            let inv = C::new(1.0, 0.0) / row[p];
            for x in &mut row {
                *x *= inv;
            }
            row[p] = C::new(1.0, 0.0);
            self.rows.push((p, row));
        }
    }

    pub fn clone_rows(&self) -> Self {
        Echelon { n: self.n, rows: self.rows.clone() }
    }
}

pub struct FunctionModel<'a> {
    group: &'a FiniteGroup,
    s: Vec<Elem>,
    s_pos: Vec<Option<usize>>,
    /// Representatives `h_j` of the right cosets `S h_j`.
    reps: Vec<Elem>,
    /// `g ↦ (j, s)` with `g = s h_j`.
    split: Vec<(usize, Elem)>,
    alpha: Vec<Vec<C>>,
}

fn root(m: u32, e: u32) -> C {
    C::from_polar(1.0, TAU * e as f64 / m as f64)
}

impl<'a> FunctionModel<'a> {
    pub fn new(group: &'a FiniteGroup, alpha: &TwoCocycle) -> Self {
        let s: Vec<Elem> = alpha.subgroup().elements().to_vec();
        let n = group.order();
        let mut s_pos = vec![None; n];
        for (k, &x) in s.iter().enumerate() {
            s_pos[x as usize] = Some(k);
        }
        let mut split = vec![(usize::MAX, 0); n];
        let mut reps = Vec::new();
        for g in 0..n as Elem {
            if split[g as usize].0 != usize::MAX {
                continue;
            }
            for &x in &s {
                split[group.mul(x, g) as usize] = (reps.len(), x);
            }
            reps.push(g);
        }
        let m = alpha.modulus();
        let alpha = s.iter().map(|&x| s.iter().map(|&y| root(m, alpha.exp(x, y))).collect()).collect();
        FunctionModel { group, s, s_pos, reps, split, alpha }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    pub fn dim(&self) -> usize {
        self.reps.len() * self.s.len()
    }

    fn pos(&self, x: Elem) -> usize {
        self.s_pos[x as usize].expect("element of S")
    }

    /// Product in `k_αS` on coefficient vectors.
    fn twisted(&self, a: &[C], b: &[C]) -> Vec<C> {
        let mut out = vec![C::new(0.0, 0.0); self.s.len()];
        for (i, x) in a.iter().enumerate() {
            if x.norm() == 0.0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.norm() == 0.0 {
                    continue;
                }
                let k = self.pos(self.group.mul(self.s[i], self.s[j]));
                out[k] += x * y * self.alpha[i][j];
            }
        }
        out
    }

    fn unit_vector(&self, x: Elem, c: C) -> Vec<C> {
        let mut v = vec![C::new(0.0, 0.0); self.s.len()];
        v[self.pos(x)] = c;
        v
    }

    /// `x_s a x_s⁻¹`.
    fn conj(&self, s: Elem, a: &[C]) -> Vec<C> {
        let si = self.group.inv(s);
        let norm = self.alpha[self.pos(s)][self.pos(si)];
        let left = self.twisted(&self.unit_vector(s, C::new(1.0, 0.0)), a);
        self.twisted(&left, &self.unit_vector(si, C::new(1.0, 0.0) / norm))
    }

    fn block<'v>(&self, f: &'v [C], j: usize) -> &'v [C] {
        let k = self.s.len();
        &f[j * k..(j + 1) * k]
    }

    pub fn eval(&self, f: &[C], g: Elem) -> Vec<C> {
        let (j, s) = self.split[g as usize];
        self.conj(s, self.block(f, j))
    }

    pub fn act(&self, g: Elem, f: &[C]) -> Vec<C> {
        (0..self.reps.len())
            .flat_map(|j| self.eval(f, self.group.mul(self.reps[j], g)))
            .collect()
    }

    pub fn mul(&self, f1: &[C], f2: &[C]) -> Vec<C> {
        (0..self.reps.len())
            .flat_map(|j| self.twisted(self.block(f1, j), self.block(f2, j)))
            .collect()
    }

    pub fn basis_vector(&self, k: usize) -> Vec<C> {
        let mut v = vec![C::new(0.0, 0.0); self.dim()];
        v[k] = C::new(1.0, 0.0);
        v
    }

    /// Columns are images of basis vectors; returns its rows.
    fn rows_of(columns: &[Vec<C>]) -> impl Iterator<Item = Vec<C>> + '_ {
        let n = columns.len();
        (0..columns[0].len()).map(move |c| (0..n).map(|k| columns[k][c]).collect())
    }

    /// Constraints `a x = (σ.x) a` for all basis `x`, as an echelon form.
    pub fn component(&self, sigma: Elem) -> Echelon {
        let n = self.dim();
        let basis: Vec<Vec<C>> = (0..n).map(|k| self.basis_vector(k)).collect();
        let mut ech = Echelon::new(n);
        for x in &basis {
            let sx = self.act(sigma, x);
            let cols: Vec<Vec<C>> = basis
                .iter()
                .map(|a| {
                    let l = self.mul(a, x);
                    let r = self.mul(&sx, a);
                    l.iter().zip(&r).map(|(p, q)| p - q).collect()
                })
                .collect();
            for row in Self::rows_of(&cols) {
                ech.insert(row);
                if ech.is_full() {
                    return ech;
                }
            }
        }
        ech
    }

    fn insert_invariance(&self, ech: &mut Echelon, f: &Subgroup) {
        let n = self.dim();
        for &g in &f.generators() {
            let cols: Vec<Vec<C>> = (0..n)
                .map(|k| {
                    let a = self.basis_vector(k);
                    let ga = self.act(g, &a);
                    ga.iter().zip(&a).map(|(p, q)| p - q).collect()
                })
                .collect();
            for row in Self::rows_of(&cols) {
                ech.insert(row);
            }
        }
    }

    pub fn trace(&self, g: Elem) -> C {
        (0..self.dim()).map(|k| self.act(g, &self.basis_vector(k))[k]).sum()
    }
}

/// The grading decomposition of a model, computed once per instance.
pub struct Grading<'a> {
    pub model: FunctionModel<'a>,
    pub components: Vec<Echelon>,
}

impl<'a> Grading<'a> {
    pub fn new(model: FunctionModel<'a>) -> Self {
        let components = (0..model.group.order() as Elem).map(|s| model.component(s)).collect();
        Grading { model, components }
    }

    /// `Σ_σ dim A_σ`; equals `dim A` when the grading is a decomposition.
    pub fn total_dim(&self) -> usize {
        self.components.iter().map(Echelon::nullity).sum()
    }

    pub fn invariant_dim(&self, f: &Subgroup) -> usize {
        let mut ech = Echelon::new(self.model.dim());
        self.model.insert_invariance(&mut ech, f);
        ech.nullity()
    }

    /// `A^F` is graded iff it is the sum of its intersections with the `A_σ`.
    pub fn stable(&self, f: &Subgroup) -> bool {
        let whole = self.invariant_dim(f);
        let parts: usize = self
            .components
            .iter()
            .filter(|c| !c.is_full())
            .map(|c| {
                let mut ech = c.clone_rows();
                self.model.insert_invariance(&mut ech, f);
                ech.nullity()
            })
            .sum();
        parts == whole
    }
}
