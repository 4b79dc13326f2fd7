use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{lcm, modulo, Rational};
use crate::error::{Error, Result};

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients (constant term first) of the `m`-th cyclotomic polynomial.
///
/// `Φ_m = (x^m − 1) / ∏_{d | m, d < m} Φ_d`, by exact division of monic
/// integer polynomials.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    if let Some(p) = phi_cache().read().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m % d == 0) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    let p = Arc::new(num);
    phi_cache().write().unwrap().insert(m, p.clone());
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

pub fn euler_phi(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

/// An exact element of `Q(ζ_m)`, stored as a polynomial in `ζ_m` of degree
/// below `φ(m)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "CycRepr", try_from = "CycRepr")]
pub struct CycNumber {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNumber { conductor: 1, coeffs: vec![r] }
    }

    /// Builds an element from a polynomial in `ζ_m` of any degree.
    pub fn from_poly(conductor: u32, poly: Vec<Rational>) -> Self {
        assert!(conductor >= 1);
        CycNumber { conductor, coeffs: reduce(conductor, poly) }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The element as a rational number, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses `self` in `Q(ζ_n)`; requires `conductor | n`.
    pub fn embed(&self, n: u32) -> CycNumber {
        assert!(n % self.conductor == 0, "conductor {} does not divide {}", self.conductor, n);
        if n == self.conductor {
            return self.clone();
        }
        let scale = (n / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * scale + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * scale] = c.clone();
        }
        CycNumber::from_poly(n, poly)
    }

    fn aligned(&self, other: &CycNumber) -> (CycNumber, CycNumber) {
        let n = lcm(self.conductor, other.conductor);
        (self.embed(n), other.embed(n))
    }

    pub fn scale(&self, r: &Rational) -> CycNumber {
        CycNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse, or `None` for zero.
    ///
    /// Solves `a · v = 1` as a linear system over `Q` in the power basis.
    pub fn inv(&self) -> Option<CycNumber> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(CycNumber::from_rational(r.recip()));
        }
        let n = self.coeffs.len();
        // column j of the multiplication matrix is a · ζ^j
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut poly = vec![Rational::zero(); n + j];
            for (i, c) in self.coeffs.iter().enumerate() {
                poly[i + j] = c.clone();
            }
            cols.push(reduce(self.conductor, poly));
        }
        // augmented rows: [M | e0]
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = cols.iter().map(|col| col[i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, pivot);
            let p = rows[col][col].recip();
            for x in rows[col].iter_mut() {
                *x *= &p;
            }
            for r in 0..n {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in col..=n {
                        let sub = &rows[col][c] * &f;
                        rows[r][c] -= sub;
                    }
                }
            }
        }
        Some(CycNumber::from_poly(self.conductor, rows.into_iter().map(|r| r[n].clone()).collect()))
    }

    /// Integer power; negative exponents invert. Panics on `0^e` with `e < 0`.
    pub fn pow(&self, e: i64) -> CycNumber {
        let base = if e < 0 { self.inv().expect("zero has no inverse") } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = CycNumber::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            k >>= 1;
        }
        acc
    }

    /// Complex conjugate (`ζ_m ↦ ζ_m^{-1}`).
    pub fn conj(&self) -> CycNumber {
        let m = self.conductor as usize;
        let mut poly = vec![Rational::zero(); m.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(m - i) % m] += c;
        }
        CycNumber::from_poly(self.conductor, poly)
    }
}

/// JSON form: `{"conductor": m, "coeffs": ["1", "-1/2", ...]}`.
#[derive(Serialize, Deserialize)]
struct CycRepr {
    conductor: u32,
    coeffs: Vec<String>,
}

impl From<CycNumber> for CycRepr {
    fn from(c: CycNumber) -> Self {
        CycRepr { conductor: c.conductor, coeffs: c.coeffs.iter().map(|r| r.to_string()).collect() }
    }
}

impl TryFrom<CycRepr> for CycNumber {
    type Error = String;
    fn try_from(r: CycRepr) -> std::result::Result<Self, String> {
        if r.conductor == 0 {
            return Err("conductor must be positive".into());
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| s.parse::<Rational>().map_err(|e| format!("bad coefficient {s:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CycNumber::from_poly(r.conductor, coeffs))
    }
}

fn reduce(conductor: u32, mut poly: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(conductor);
    let deg = phi.len() - 1;
    for k in (deg..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = poly[k].clone();
        for (j, &pj) in phi.iter().enumerate() {
            if pj != 0 {
                poly[k - deg + j] -= &c * Rational::from_integer(pj.into());
            }
        }
    }
    poly.resize(deg, Rational::zero());
    poly
}

/// `ζ_m^e` as an exact cyclotomic number.
pub fn cyc_root_of_unity(m: u32, e: i64) -> CycNumber {
    assert!(m >= 1, "root of unity needs m >= 1");
    let k = modulo(e, m as i64) as usize;
    let mut poly = vec![Rational::zero(); k + 1];
    poly[k] = Rational::one();
    CycNumber::from_poly(m, poly)
}

pub fn cyc_mul(a: &CycNumber, b: &CycNumber) -> CycNumber {
    a * b
}

/// Multiplicative order of `a` if it is a root of unity.
///
/// The roots of unity in `Q(ζ_m)` are `±ζ_m^k`, so the order divides `2m`.
pub fn cyc_order(a: &CycNumber) -> Result<Option<u32>> {
    if a.is_zero() {
        return Err(Error::ZeroOrder);
    }
    let bound = 2 * a.conductor;
    let mut p = a.clone();
    for k in 1..=bound {
        if p.is_one() {
            return Ok(Some(k));
        }
        p = &p * a;
    }
    Ok(None)
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = self.aligned(rhs);
            return &a + &b;
        }
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = self.aligned(rhs);
            return &a * &b;
        }
        if self.is_zero() || rhs.is_zero() {
            return CycNumber { conductor: self.conductor, coeffs: vec![Rational::zero(); self.coeffs.len()] };
        }
        let mut poly = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        CycNumber::from_poly(self.conductor, poly)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $f(self, rhs: CycNumber) -> CycNumber {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl fmt::Display for CycNumber {
    /// Prints e.g. `1/2 - 3*z12^2`; `z12` denotes `ζ_12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let gen = match i {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{}", self.conductor, i),
            };
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{gen}")?;
            } else {
                write!(f, "{a}*{gen}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
