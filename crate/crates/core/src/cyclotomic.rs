//! Exact arithmetic in `Z[ζ_m]`.
//!
//! Elements are integer polynomials in `ζ_m` reduced modulo the cyclotomic
//! polynomial `Φ_m`, so the coefficient vector (length `φ(m)`) is a unique
//! normal form and equality is plain vector equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("{target} is not a multiple of modulus {modulus}")]
    NotAMultiple { modulus: u32, target: u32 },
    #[error("modulus must be positive")]
    ZeroModulus,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    (a as u64 / gcd(a as u64, b as u64) * b as u64) as u32
}

/// Exact quotient of `num` by the monic polynomial `den` (ascending coefficients).
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division was not exact");
    quot
}

fn compute_cyclotomic(m: u32) -> Vec<i64> {
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in (1..m).filter(|d| m % d == 0) {
        poly = exact_div(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Φ_m` as ascending integer coefficients. Panics if `m == 0`.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    assert!(m > 0, "cyclotomic polynomial of index 0");
    if let Some(p) = poly_cache().read().expect("cache poisoned").get(&m) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(m));
    poly_cache()
        .write()
        .expect("cache poisoned")
        .entry(m)
        .or_insert(p)
        .clone()
}

/// Euler's totient, i.e. `deg Φ_m`.
pub fn totient(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

/// A root of unity `ζ_m^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootExp {
    modulus: u32,
    exp: u32,
}

impl RootExp {
    pub fn new(modulus: u32, exp: i64) -> Self {
        assert!(modulus > 0, "root of unity with modulus 0");
        RootExp { modulus, exp: exp.rem_euclid(modulus as i64) as u32 }
    }

    pub fn one(modulus: u32) -> Self {
        Self::new(modulus, 0)
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn exp(self) -> u32 {
        self.exp
    }

    pub fn is_one(self) -> bool {
        self.exp == 0
    }

    pub fn inv(self) -> Self {
        Self::new(self.modulus, -(self.exp as i64))
    }

    pub fn lift(self, target: u32) -> Result<Self, CyclotomicError> {
        if target == 0 || target % self.modulus != 0 {
            return Err(CyclotomicError::NotAMultiple { modulus: self.modulus, target });
        }
        Ok(Self::new(target, self.exp as i64 * (target / self.modulus) as i64))
    }

    pub fn to_cyc(self) -> CycInt {
        CycInt::root(self.modulus, self.exp as i64)
    }
}

impl Mul for RootExp {
    type Output = RootExp;

    fn mul(self, rhs: RootExp) -> RootExp {
        assert_eq!(self.modulus, rhs.modulus, "root modulus mismatch");
        RootExp::new(self.modulus, self.exp as i64 + rhs.exp as i64)
    }
}

impl fmt::Display for RootExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}^{}", self.modulus, self.exp)
    }
}

/// An element of `Z[ζ_m]` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    modulus: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(modulus: u32) -> Self {
        assert!(modulus > 0, "cyclotomic integer with modulus 0");
        CycInt { modulus, coeffs: vec![0; totient(modulus)] }
    }

    pub fn from_int(modulus: u32, c: i64) -> Self {
        let mut z = Self::zero(modulus);
        z.coeffs[0] = c;
        z
    }

    pub fn one(modulus: u32) -> Self {
        Self::from_int(modulus, 1)
    }

    /// `ζ_m^exp`.
    pub fn root(modulus: u32, exp: i64) -> Self {
        let e = exp.rem_euclid(modulus as i64) as usize;
        let mut raw = vec![0i64; e + 1];
        raw[e] = 1;
        Self::from_poly(modulus, &raw)
    }

    /// Reduces an arbitrary polynomial in `ζ_m` to canonical form.
    pub fn from_poly(modulus: u32, poly: &[i64]) -> Self {
        assert!(modulus > 0, "cyclotomic integer with modulus 0");
        let m = modulus as usize;
        let mut folded = vec![0i64; m];
        for (k, &c) in poly.iter().enumerate() {
            folded[k % m] += c;
        }
        let phi = cyclotomic_polynomial(modulus);
        let deg = phi.len() - 1;
        for k in (deg..m).rev() {
            let c = folded[k];
            if c != 0 {
                for (j, &p) in phi.iter().enumerate() {
                    folded[k - deg + j] -= c * p;
                }
            }
        }
        folded.truncate(deg);
        CycInt { modulus, coeffs: folded }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Coefficients of `1, ζ, …, ζ^{φ(m)-1}`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check(&self, other: &CycInt) -> Result<(), CyclotomicError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(CyclotomicError::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn try_add(&self, other: &CycInt) -> Result<CycInt, CyclotomicError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { modulus: self.modulus, coeffs })
    }

    pub fn try_sub(&self, other: &CycInt) -> Result<CycInt, CyclotomicError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { modulus: self.modulus, coeffs })
    }

    pub fn try_mul(&self, other: &CycInt) -> Result<CycInt, CyclotomicError> {
        self.check(other)?;
        let n = self.coeffs.len();
        let mut prod = vec![0i64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Ok(Self::from_poly(self.modulus, &prod))
    }

    /// Multiplies by `ζ_m^e`.
    pub fn mul_root(&self, r: RootExp) -> CycInt {
        assert_eq!(self.modulus, r.modulus(), "root modulus mismatch");
        let e = r.exp() as usize;
        let mut raw = vec![0i64; self.coeffs.len() + e];
        raw[e..].copy_from_slice(&self.coeffs);
        Self::from_poly(self.modulus, &raw)
    }

    /// Image under `ζ_m ↦ ζ_{target}^{target/m}`.
    pub fn lift_modulus(&self, target: u32) -> Result<CycInt, CyclotomicError> {
        if target == 0 || target % self.modulus != 0 {
            return Err(CyclotomicError::NotAMultiple { modulus: self.modulus, target });
        }
        let step = (target / self.modulus) as usize;
        let mut raw = vec![0i64; (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            raw[k * step] = c;
        }
        Ok(Self::from_poly(target, &raw))
    }
}

impl Add for &CycInt {
    type Output = CycInt;

    /// Panics on modulus mismatch; see [`CycInt::try_add`].
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("cyclotomic addition")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;

    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("cyclotomic subtraction")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;

    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("cyclotomic multiplication")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;

    fn neg(self) -> CycInt {
        CycInt { modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "z{}^{k}", self.modulus)?,
                _ => write!(f, "{a}*z{}^{k}", self.modulus)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
