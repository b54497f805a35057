//! Exact-integer univariate polynomials and the two Fibonacci-style families
//! used throughout the crate: the Huffman-related sequence `G_i` defined by
//! `G_0 = G_1 = 1`, `G_2 = 2`, `G_i = G_{i-1} + x·G_{i-2}`, and the classical
//! Fibonacci polynomials `F_i` defined by `F_1 = 1`, `F_2 = x`,
//! `F_i = x·F_{i-1} + F_{i-2}`.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[k]` is the coefficient of `x^k`. The representation is canonical:
/// no trailing zero coefficients, and the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(value: impl Into<BigInt>) -> Self {
        Polynomial::new(vec![value.into()])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The product `x · self`.
    pub fn times_x(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            coeffs.push(a + b);
        }
        Polynomial::new(coeffs)
    }
}

impl fmt::Display for Polynomial {
    /// Renders terms highest degree first, e.g. `x^3 + 9x^2 + 9x + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.magnitude();
            if first {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{magnitude}")?,
                1 if magnitude.is_one() => write!(f, "x")?,
                1 => write!(f, "{magnitude}x")?,
                _ if magnitude.is_one() => write!(f, "x^{k}")?,
                _ => write!(f, "{magnitude}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// First `count` Huffman-related polynomials `[G_0, ..., G_{count-1}]`.
///
/// Bases are `G_0 = G_1 = 1`, `G_2 = 2`; from `i = 3` on,
/// `G_i = G_{i-1} + x·G_{i-2}`.
pub fn fibonacci_like_polys(count: usize) -> Vec<Polynomial> {
    let mut polys = Vec::with_capacity(count);
    for i in 0..count {
        let next = match i {
            0 | 1 => Polynomial::constant(1),
            2 => Polynomial::constant(2),
            _ => {
                let prev: &Polynomial = &polys[i - 1];
                let prev2: &Polynomial = &polys[i - 2];
                prev + &prev2.times_x()
            }
        };
        polys.push(next);
    }
    polys
}

/// First `count` classical Fibonacci polynomials `[F_1, ..., F_count]`.
///
/// Bases are `F_1 = 1`, `F_2 = x`; from `i = 3` on, `F_i = x·F_{i-1} + F_{i-2}`.
/// Present only as a contrast to [`fibonacci_like_polys`]; nothing else in the
/// crate depends on it.
pub fn fibonacci_polys(count: usize) -> Vec<Polynomial> {
    let mut polys = Vec::with_capacity(count);
    for i in 0..count {
        let next = match i {
            0 => Polynomial::constant(1),
            1 => Polynomial::x(),
            _ => {
                let prev: &Polynomial = &polys[i - 1];
                let prev2: &Polynomial = &polys[i - 2];
                &prev.times_x() + prev2
            }
        };
        polys.push(next);
    }
    polys
}

/// `G_i` evaluated at `m` via the numeric recurrence, skipping coefficient
/// construction. Agrees with `fibonacci_like_polys(i + 1)[i].eval(m)` for all
/// inputs.
///
/// The row at `m = 1` is the Fibonacci sequence 1, 1, 2, 3, 5, ... — the
/// crate-wide Fibonacci convention is `Fib_k = g_value(k - 1, 1)`, 1-based
/// with `Fib_1 = Fib_2 = 1`. Every Fibonacci reference in this crate is
/// derived through this function rather than a second implementation.
pub fn g_value(i: usize, m: u64) -> BigInt {
    match i {
        0 | 1 => return BigInt::one(),
        2 => return BigInt::from(2),
        _ => {}
    }
    let m = BigInt::from(m);
    // (a, b) = (G_{k-1}, G_k), starting at k = 2
    let mut a = BigInt::one();
    let mut b = BigInt::from(2);
    for _ in 2..i {
        let next = &b + &m * &a;
        a = std::mem::replace(&mut b, next);
    }
    b
}

/// Canonical text listing `G_0 .. G_{count-1}`, one `G_i(x) = ...` line each,
/// terms highest degree first. The `count = 21` listing is frozen in
/// `golden/polynomials.txt`.
pub fn fibonacci_like_listing(count: usize) -> String {
    let mut out = String::new();
    for (i, p) in fibonacci_like_polys(count).iter().enumerate() {
        out.push_str(&format!("G_{i}(x) = {p}\n"));
    }
    out
}
