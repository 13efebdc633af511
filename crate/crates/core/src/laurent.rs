//! Laurent polynomials in one variable q with integer coefficients.
//!
//! These carry graded ranks, Euler characteristics, and Kauffman bracket
//! values. Arithmetic is exact; coefficient overflow panics rather than
//! wrapping silently.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// Finitely supported map exponent -> coefficient; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    /// `q + q^{-1}`, the graded rank of the rank-two Frobenius algebra.
    pub fn q_plus_q_inv() -> Self {
        LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(1, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Multiplies by `q^e`.
    pub fn shifted(&self, e: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|(&k, &v)| (k + e, v)).collect();
        LaurentPoly { coeffs }
    }

    pub fn scaled(&self, c: i64) -> Self {
        if c == 0 {
            return LaurentPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&k, &v)| (k, v.checked_mul(c).expect("coefficient overflow")))
            .collect();
        LaurentPoly { coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = out * self.clone();
        }
        out
    }

    fn insert(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        let mut out = self;
        for (e, c) in rhs.coeffs {
            out.insert(e, c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scaled(-1)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    // Convolution product: exponents add, coefficients accumulate.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.insert(e1 + e2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&e, &c)| {
                let var = match e {
                    0 => String::new(),
                    1 => String::from("q"),
                    _ => alloc::format!("q^{e}"),
                };
                match (c, var.is_empty()) {
                    (1, false) => var,
                    (-1, false) => alloc::format!("-{var}"),
                    (_, true) => alloc::format!("{c}"),
                    _ => alloc::format!("{c}{var}"),
                }
            })
            .collect();
        let mut s = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 && !p.starts_with('-') {
                s.push('+');
            }
            s.push_str(p);
        }
        write!(f, "{s}")
    }
}
