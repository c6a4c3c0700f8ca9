//! Exact scalar arithmetic in the ring of numbers
//! `(a + b·i + c·√2 + d·i·√2) / 2^k` with integer `a, b, c, d`.
//!
//! Every entry of the canonical gate set lives in this ring: Pauli matrices,
//! `(σ₂+σ₃)/√2`, the phases `±1, ±i`, and all of their products. The ring is
//! closed under addition, multiplication and complex conjugation, so gate
//! products never need rounding.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// An element of ℚ(i,√2) restricted to power-of-two denominators.
///
/// Values are kept in canonical form: when `k > 0`, at least one of the four
/// numerator coefficients is odd. Equality is therefore plain structural
/// comparison. Coefficients are arbitrary-precision so long gate products
/// cannot overflow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
    k: u32,
}

impl ExactScalar {
    /// Builds `(a + b·i + c·√2 + d·i·√2) / 2^k` and reduces to canonical form.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
        k: u32,
    ) -> Self {
        let mut s = ExactScalar {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
            k,
        };
        s.canonicalize();
        s
    }

    pub fn zero() -> Self {
        ExactScalar::new(0, 0, 0, 0, 0)
    }

    pub fn one() -> Self {
        ExactScalar::new(1, 0, 0, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::new(n, 0, 0, 0, 0)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ExactScalar::new(0, 1, 0, 0, 0)
    }

    pub fn minus_i() -> Self {
        ExactScalar::new(0, -1, 0, 0, 0)
    }

    pub fn sqrt2() -> Self {
        ExactScalar::new(0, 0, 1, 0, 0)
    }

    /// `1/√2`, represented as `√2 / 2`.
    pub fn inv_sqrt2() -> Self {
        ExactScalar::new(0, 0, 1, 0, 1)
    }

    /// Raw canonical-form coordinates `(a, b, c, d, k)`.
    pub fn coords(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt, u32) {
        (&self.a, &self.b, &self.c, &self.d, self.k)
    }

    fn canonicalize(&mut self) {
        while self.k > 0
            && self.a.is_even()
            && self.b.is_even()
            && self.c.is_even()
            && self.d.is_even()
        {
            self.a /= 2;
            self.b /= 2;
            self.c /= 2;
            self.d /= 2;
            self.k -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == ExactScalar::one()
    }

    /// Complex conjugate (negates the coefficients of `i` and `i·√2`).
    pub fn conj(&self) -> Self {
        ExactScalar::new(
            self.a.clone(),
            -&self.b,
            self.c.clone(),
            -&self.d,
            self.k,
        )
    }

    /// Squared modulus `z·conj(z)`, a real element of the ring.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    /// Nearest-double evaluation, with √2 rounded to the nearest `f64` first.
    pub fn to_complex(&self) -> Complex64 {
        let pow = 2f64.powi(self.k as i32);
        let re = (big_to_f64(&self.a) + big_to_f64(&self.c) * std::f64::consts::SQRT_2) / pow;
        let im = (big_to_f64(&self.b) + big_to_f64(&self.d) * std::f64::consts::SQRT_2) / pow;
        Complex64::new(re, im)
    }
}

fn big_to_f64(n: &BigInt) -> f64 {
    n.to_f64().expect("BigInt converts to f64")
}

impl Add for &ExactScalar {
    type Output = ExactScalar;

    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let k = self.k.max(rhs.k);
        let ls = BigInt::from(1) << (k - self.k);
        let rs = BigInt::from(1) << (k - rhs.k);
        ExactScalar::new(
            &self.a * &ls + &rhs.a * &rs,
            &self.b * &ls + &rhs.b * &rs,
            &self.c * &ls + &rhs.c * &rs,
            &self.d * &ls + &rhs.d * &rs,
            k,
        )
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;

    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;

    fn neg(self) -> ExactScalar {
        ExactScalar::new(-&self.a, -&self.b, -&self.c, -&self.d, self.k)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;

    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        // Multiply out (a₁ + b₁i + c₁√2 + d₁i√2)(a₂ + b₂i + c₂√2 + d₂i√2)
        // using i² = −1, (√2)² = 2, (i√2)² = −2.
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        let a = a1 * a2 - b1 * b2 + 2 * (c1 * c2) - 2 * (d1 * d2);
        let b = a1 * b2 + b1 * a2 + 2 * (c1 * d2) + 2 * (d1 * c2);
        let c = a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2;
        let d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2;
        ExactScalar::new(a, b, c, d, self.k + rhs.k)
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;

    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = Vec::new();
        push_term(&mut terms, &self.a, "");
        push_term(&mut terms, &self.b, "i");
        push_term(&mut terms, &self.c, "√2");
        push_term(&mut terms, &self.d, "i√2");
        let num = terms.join("");
        if self.k == 0 {
            write!(f, "{num}")
        } else {
            let denom = BigInt::from(1) << self.k;
            if terms.len() > 1 {
                write!(f, "({num})/{denom}")
            } else {
                write!(f, "{num}/{denom}")
            }
        }
    }
}

fn push_term(terms: &mut Vec<String>, coeff: &BigInt, symbol: &str) {
    if coeff.is_zero() {
        return;
    }
    let sign = if coeff.is_negative() {
        "-"
    } else if terms.is_empty() {
        ""
    } else {
        "+"
    };
    let mag = coeff.abs();
    if symbol.is_empty() {
        terms.push(format!("{sign}{mag}"));
    } else if mag == BigInt::from(1) {
        terms.push(format!("{sign}{symbol}"));
    } else {
        terms.push(format!("{sign}{mag}{symbol}"));
    }
}
