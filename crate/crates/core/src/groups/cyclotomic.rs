//! Exact arithmetic in the ring of integer combinations of roots of unity.
//!
//! An element of conductor `e` is stored as a coefficient vector of length `e`
//! in `Z[x]/(x^e - 1)`. Many vectors represent the same complex number, so
//! equality goes through the canonical remainder modulo the `e`-th cyclotomic
//! polynomial, which is a faithful normal form for `Z[zeta_e]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer coefficients of the `e`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(e: u32) -> Vec<i64> {
    assert!(e > 0, "conductor must be positive");
    // x^e - 1 = prod_{d | e} Phi_d(x)
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in 1..e {
        if e % d == 0 {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1 || lead == -1);
    let qlen = rem.len() - dd;
    let mut quo = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd] / lead;
        quo[i] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[i + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

/// Euler's totient.
pub fn totient(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigInt>,
}

impl Cyclotomic {
    pub fn zero(conductor: u32) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        Cyclotomic {
            conductor,
            coeffs: vec![BigInt::zero(); conductor as usize],
        }
    }

    pub fn integer(conductor: u32, value: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = value.into();
        z
    }

    pub fn one(conductor: u32) -> Self {
        Self::integer(conductor, 1)
    }

    /// `zeta_e^j`, exponent taken modulo `e`.
    pub fn root_of_unity(conductor: u32, exponent: i64) -> Self {
        let mut z = Self::zero(conductor);
        let j = exponent.rem_euclid(conductor as i64) as usize;
        z.coeffs[j] = BigInt::one();
        z
    }

    /// Builds an element from its coefficient vector on `1, zeta, ..., zeta^(e-1)`.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), conductor as usize, "coefficient length must equal conductor");
        Cyclotomic { conductor, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Re-expresses the element over a multiple of its conductor.
    pub fn lift(&self, conductor: u32) -> Self {
        assert!(
            conductor % self.conductor == 0,
            "cannot lift conductor {} to {}",
            self.conductor,
            conductor
        );
        if conductor == self.conductor {
            return self.clone();
        }
        let step = (conductor / self.conductor) as usize;
        let mut out = Self::zero(conductor);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[j * step] = c.clone();
        }
        out
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let e = self.conductor.lcm(&other.conductor);
        (self.lift(e), other.lift(e))
    }

    /// Canonical remainder modulo the cyclotomic polynomial; length `phi(e)`.
    pub fn reduced(&self) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(self.conductor);
        let deg = phi.len() - 1;
        let mut rem = self.coeffs.clone();
        // Phi_e is monic
        for i in (deg..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = rem[i].clone();
            let shift = i - deg;
            for (j, &pc) in phi.iter().enumerate() {
                if pc != 0 {
                    rem[shift + j] -= &c * pc;
                }
            }
        }
        rem.truncate(deg);
        rem
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(Zero::is_zero)
    }

    /// Returns the rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.reduced();
        if r.iter().skip(1).all(Zero::is_zero) {
            Some(r.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    /// Complex conjugation, `zeta^j -> zeta^(-j)`.
    pub fn conj(&self) -> Self {
        let e = self.conductor as usize;
        let mut out = Self::zero(self.conductor);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(e - j) % e] += c;
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact division of every coefficient; `None` when some coefficient of the
    /// canonical form is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        let r = self.reduced();
        let mut out = Self::zero(self.conductor);
        for (j, c) in r.iter().enumerate() {
            let (q, rem) = c.div_rem(k);
            if !rem.is_zero() {
                return None;
            }
            out.coeffs[j] = q;
        }
        Some(out)
    }

    /// Total order on canonical forms at a fixed conductor.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.common(other);
        a.reduced().cmp(&b.reduced())
    }

    /// Approximate complex value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf: f64 = c.to_string().parse().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * j as f64 / e;
            re += cf * theta.cos();
            im += cf * theta.sin();
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(rhs);
        let e = a.conductor as usize;
        let mut out = Cyclotomic::zero(a.conductor);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out.coeffs[(i + j) % e] += x * y;
                }
            }
        }
        out
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // print over the smallest conductor whose ring holds the value
        let (e, r) = (1..=self.conductor)
            .filter(|d| self.conductor % d == 0)
            .find_map(|d| self.coordinates_over(d).map(|c| (d, c)))
            .unwrap_or_else(|| (self.conductor, self.reduced()));
        let mut terms = Vec::new();
        for (j, c) in r.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = match (e, j) {
                (_, 0) => String::new(),
                (4, 1) => "i".to_string(),
                (_, 1) => format!("z{e}"),
                _ => format!("z{e}^{j}"),
            };
            let term = if root.is_empty() {
                c.to_string()
            } else if c.is_one() {
                root
            } else if *c == BigInt::from(-1) {
                format!("-{root}")
            } else {
                format!("{c}*{root}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if let Some(stripped) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        write!(f, "{out}")
    }
}

impl Cyclotomic {
    /// Integer coordinates on `1, zeta_d, ..., zeta_d^(phi(d)-1)` when the value
    /// lies in `Z[zeta_d]` for a divisor `d` of the conductor.
    pub fn coordinates_over(&self, d: u32) -> Option<Vec<BigInt>> {
        if self.conductor % d != 0 {
            return None;
        }
        if d == self.conductor {
            return Some(self.reduced());
        }
        let step = (self.conductor / d) as usize;
        let cols = totient(d) as usize;
        let target = self.reduced();
        let rows = target.len();
        // augmented system [B | target] over Q, B's columns = lifted basis
        let mut m: Vec<Vec<BigRational>> = vec![Vec::with_capacity(cols + 1); rows];
        for j in 0..cols {
            let b = Cyclotomic::root_of_unity(self.conductor, (j * step) as i64).reduced();
            for (i, row) in m.iter_mut().enumerate() {
                row.push(BigRational::from_integer(b[i].clone()));
            }
        }
        for (i, row) in m.iter_mut().enumerate() {
            row.push(BigRational::from_integer(target[i].clone()));
        }
        let mut pivot_row = 0;
        let mut pivots = Vec::with_capacity(cols);
        for col in 0..cols {
            let p = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
            m.swap(pivot_row, p);
            let inv = m[pivot_row][col].recip();
            for x in m[pivot_row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..rows {
                if r != pivot_row && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in 0..=cols {
                        let delta = &factor * &m[pivot_row][c];
                        m[r][c] -= delta;
                    }
                }
            }
            pivots.push(pivot_row);
            pivot_row += 1;
        }
        if m[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        pivots
            .iter()
            .map(|&r| {
                let v = &m[r][cols];
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }

    pub fn is_negative_integer(&self) -> bool {
        self.as_integer().map(|v| v.is_negative()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(e: u32, j: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(e, j)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for e in 1..40 {
            assert_eq!(cyclotomic_polynomial(e).len() - 1, totient(e) as usize);
        }
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for e in 2..20 {
            let mut s = Cyclotomic::zero(e);
            for j in 0..e as i64 {
                s = s + z(e, j);
            }
            assert!(s.is_zero(), "conductor {e}");
        }
    }

    #[test]
    fn equality_across_conductors() {
        assert_eq!(z(4, 2), Cyclotomic::integer(1, -1));
        assert_eq!(z(6, 2), z(3, 1));
        assert_ne!(z(4, 1), z(4, 3));
        assert_eq!(z(4, 1).conj(), z(4, 3));
    }

    #[test]
    fn integrality() {
        let i = z(4, 1);
        let n = &i * &i.conj();
        assert_eq!(n.as_integer(), Some(BigInt::from(1)));
        assert_eq!(i.as_integer(), None);
        // zeta_3 + zeta_3^2 = -1
        assert_eq!((z(3, 1) + z(3, 2)).as_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn display_picks_small_conductor() {
        assert_eq!(z(8, 2).to_string(), "i");
        assert_eq!(z(8, 4).to_string(), "-1");
        assert_eq!(Cyclotomic::integer(12, 3).to_string(), "3");
        assert_eq!((z(4, 1) + Cyclotomic::integer(4, 2)).to_string(), "2 + i");
    }
}
