//! Stern polynomials.
//!
//! The Stern polynomial `B_n(t)` is defined by `B_0 = 0`, `B_1 = 1`, and
//!
//! ```text
//! B_{2m}(t)   = t * B_m(t)
//! B_{2m+1}(t) = B_m(t) + B_{m+1}(t)
//! ```
//!
//! Specializations: `B_n(1)` is the Stern diatomic sequence and
//! `B_n(2) = n`.  Polynomials here are dense vectors of `u64`
//! coefficients; every operation uses checked arithmetic and reports
//! [`Error::Overflow`] rather than wrapping.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Budget guard for [`stern_table`]: tables above this size are refused.
pub const MAX_TABLE_LEN: u64 = 1 << 22;

/// A polynomial with nonnegative integer coefficients, constant term first.
///
/// Canonical form: no trailing zero coefficients, so the zero polynomial is
/// the empty vector and `coeffs().last()` is the leading coefficient of any
/// nonzero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SternPolynomial {
    coeffs: Vec<u64>,
}

impl SternPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        SternPolynomial { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        SternPolynomial { coeffs: vec![1] }
    }

    /// Builds a polynomial from dense coefficients (constant term first),
    /// trimming trailing zeros into canonical form.
    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        SternPolynomial { coeffs }
    }

    /// Dense coefficients, constant term first; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial has none.
    pub fn degree(&self) -> Result<usize> {
        if self.coeffs.is_empty() {
            Err(Error::ZeroPolynomial)
        } else {
            Ok(self.coeffs.len() - 1)
        }
    }

    /// Leading coefficient; the zero polynomial has none.
    pub fn leading_coefficient(&self) -> Result<u64> {
        self.coeffs.last().copied().ok_or(Error::ZeroPolynomial)
    }

    /// Evaluates at `t0` by Horner's rule with checked arithmetic.
    pub fn evaluate(&self, t0: u64) -> Result<u64> {
        let mut acc: u64 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(t0)
                .and_then(|v| v.checked_add(c))
                .ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// Sum of two polynomials.
    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let (short, long) = if self.coeffs.len() <= rhs.coeffs.len() {
            (&self.coeffs, &rhs.coeffs)
        } else {
            (&rhs.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (i, &c) in short.iter().enumerate() {
            out[i] = out[i].checked_add(c).ok_or(Error::Overflow)?;
        }
        Ok(SternPolynomial { coeffs: out })
    }

    /// Product of two polynomials (schoolbook; operands stay small here).
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                out[i + j] = out[i + j].checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(SternPolynomial { coeffs: out })
    }

    /// Multiplication by `t` (shift coefficients up one degree).
    pub fn times_t(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(0);
        out.extend_from_slice(&self.coeffs);
        SternPolynomial { coeffs: out }
    }
}

/// Computes `B_n(t)` top-down with memoization.
///
/// The recursion only ever touches the O(log n) pairs `(m, m+1)` on the
/// halving path from `n`, so single queries are cheap even for large `n`.
pub fn stern_of(n: u64) -> Result<SternPolynomial> {
    let mut memo = HashMap::new();
    build(n, &mut memo)
}

fn build(n: u64, memo: &mut HashMap<u64, SternPolynomial>) -> Result<SternPolynomial> {
    if let Some(p) = memo.get(&n) {
        return Ok(p.clone());
    }
    let p = match n {
        0 => SternPolynomial::zero(),
        1 => SternPolynomial::one(),
        _ if n.is_multiple_of(2) => build(n / 2, memo)?.times_t(),
        _ => {
            let m = n / 2;
            let lo = build(m, memo)?;
            let hi = build(m + 1, memo)?;
            lo.checked_add(&hi)?
        }
    };
    memo.insert(n, p.clone());
    Ok(p)
}

/// Builds `B_0 ..= B_{n_max}` bottom-up.
///
/// Refuses tables longer than [`MAX_TABLE_LEN`] with [`Error::Capacity`].
pub fn stern_table(n_max: u64) -> Result<Vec<SternPolynomial>> {
    if n_max >= MAX_TABLE_LEN {
        return Err(Error::Capacity {
            required: n_max + 1,
            limit: MAX_TABLE_LEN,
        });
    }
    let mut table = Vec::with_capacity(n_max as usize + 1);
    table.push(SternPolynomial::zero());
    if n_max >= 1 {
        table.push(SternPolynomial::one());
    }
    for n in 2..=n_max {
        let m = (n / 2) as usize;
        let next = if n % 2 == 0 {
            table[m].times_t()
        } else {
            table[m].checked_add(&table[m + 1])?
        };
        table.push(next);
    }
    Ok(table)
}

/// Sign selector for [`schinzel_compose`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Computes `B_{2^a m ± r}` through the composition identity
///
/// ```text
/// B_{2^a m + r} = B_{2^a - r} B_m + B_r B_{m+1}
/// B_{2^a m - r} = B_{2^a - r} B_m + B_r B_{m-1}
/// ```
///
/// valid for `a >= 1`, `m >= 1`, and `0 <= r <= 2^a`.  The result is built
/// from the four constituent polynomials, never by expanding the composite
/// index, so it exercises the identity rather than restating the recursion.
pub fn schinzel_compose(a: u32, m: u64, r: u64, sign: Sign) -> Result<SternPolynomial> {
    if a == 0 || a >= 64 {
        return Err(Error::Domain(format!(
            "exponent a must be in 1..=63, got {a}"
        )));
    }
    if m == 0 {
        return Err(Error::Domain("m must be positive".to_string()));
    }
    let pow = 1u64 << a;
    if r > pow {
        return Err(Error::Domain(format!(
            "r must satisfy 0 <= r <= 2^a, got r={r}, 2^a={pow}"
        )));
    }
    let partner = match sign {
        Sign::Plus => m.checked_add(1).ok_or(Error::Overflow)?,
        Sign::Minus => m - 1,
    };
    let left = stern_of(pow - r)?.checked_mul(&stern_of(m)?)?;
    let right = stern_of(r)?.checked_mul(&stern_of(partner)?)?;
    left.checked_add(&right)
}
