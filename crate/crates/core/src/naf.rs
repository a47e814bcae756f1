//! Binary signed-digit strings, the non-adjacent form, and NAF-intervals.
//!
//! A *BSD string* is a vector of digits in `{-1, 0, 1}`, least significant
//! first, with value `sum d_j 2^j`.  The *non-adjacent form* (NAF) of a
//! positive integer is its unique BSD representation with no two adjacent
//! nonzero digits; it minimizes the number of nonzero digits.
//!
//! Grouping positive integers by NAF length yields the intervals
//! `I_k = [a_k, a_{k+1})` with `a_k = ceil(2^k / 3)`: exactly the integers
//! whose reduced NAF has `k` digits.  For `k >= 3` each `I_k` splits into
//! three blocks `A_k, B_k, C_k` whose widths are `|I_{k-2}|, |I_{k-1}|,
//! |I_{k-2}|`; the table builders in [`crate::tables`] recurse on that
//! partition.

use std::fmt;

use crate::error::{Error, Result};

/// Digit strings longer than this are rejected (keeps `value()` exact in i128).
pub const MAX_DIGITS: usize = 126;

/// A binary signed-digit string, least significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BsdDigits {
    digits: Vec<i8>,
}

impl BsdDigits {
    /// Builds a digit string, rejecting digits outside `{-1, 0, 1}` and
    /// strings longer than [`MAX_DIGITS`].
    pub fn new(digits: Vec<i8>) -> Result<Self> {
        if digits.len() > MAX_DIGITS {
            return Err(Error::Capacity {
                required: digits.len() as u64,
                limit: MAX_DIGITS as u64,
            });
        }
        if let Some(&d) = digits.iter().find(|d| !(-1..=1).contains(*d)) {
            return Err(Error::Domain(format!("digit {d} is not in {{-1, 0, 1}}")));
        }
        Ok(BsdDigits { digits })
    }

    /// Internal constructor for digits already known to be valid.
    pub(crate) fn from_raw(digits: Vec<i8>) -> Self {
        debug_assert!(digits.len() <= MAX_DIGITS);
        debug_assert!(digits.iter().all(|d| (-1..=1).contains(d)));
        BsdDigits { digits }
    }

    /// Digits, least significant first.
    pub fn digits(&self) -> &[i8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The represented integer, `sum d_j 2^j`.
    pub fn value(&self) -> i128 {
        self.digits
            .iter()
            .rev()
            .fold(0i128, |acc, &d| 2 * acc + d as i128)
    }

    /// Number of zero digits.
    pub fn zeros(&self) -> usize {
        self.digits.iter().filter(|&&d| d == 0).count()
    }

    /// Number of nonzero digits (the Hamming weight).
    pub fn weight(&self) -> usize {
        self.digits.len() - self.zeros()
    }

    /// True when no two adjacent digits are both nonzero.
    pub fn is_naf(&self) -> bool {
        self.digits.windows(2).all(|w| w[0] == 0 || w[1] == 0)
    }

    /// True for a NAF whose most significant digit is nonzero (no zero
    /// padding), the canonical form produced by [`naf_encode`].
    pub fn is_reduced_naf(&self) -> bool {
        self.is_naf() && self.digits.last().is_none_or(|&d| d != 0)
    }

    /// Parses the display format: most significant digit first, with `-1`
    /// spelled as the two characters `-1`.  `"10-1"` is 3.
    pub fn parse(s: &str) -> Result<Self> {
        let mut digits = Vec::new();
        let mut chars = s.chars();
        while let Some(c) = chars.next() {
            let d = match c {
                '0' => 0,
                '1' => 1,
                '-' => match chars.next() {
                    Some('1') => -1,
                    other => {
                        return Err(Error::Domain(format!(
                            "expected '1' after '-', got {other:?}"
                        )))
                    }
                },
                other => return Err(Error::Domain(format!("invalid digit character {other:?}"))),
            };
            digits.push(d);
        }
        digits.reverse();
        BsdDigits::new(digits)
    }
}

impl fmt::Display for BsdDigits {
    /// Most significant digit first; `-1` renders as two characters, so
    /// `"10-101"` is the NAF of 13.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in self.digits.iter().rev() {
            match d {
                -1 => f.write_str("-1")?,
                0 => f.write_str("0")?,
                _ => f.write_str("1")?,
            }
        }
        Ok(())
    }
}

/// Computes the reduced NAF of `n` (empty for `n = 0`).
///
/// Standard right-to-left method: an odd `n` emits the digit `2 - (n mod 4)`
/// in `{-1, 1}`, an even `n` emits 0, then `n <- (n - digit) / 2`.
pub fn naf_encode(n: u64) -> BsdDigits {
    let mut digits = Vec::new();
    let mut n = n as i128;
    while n != 0 {
        let d: i8 = if n % 2 == 1 { (2 - (n % 4)) as i8 } else { 0 };
        digits.push(d);
        n = (n - d as i128) / 2;
    }
    BsdDigits::from_raw(digits)
}

/// `a_k = ceil(2^k / 3)`, the lower endpoint of `I_k`, computed in u128 so
/// `k = 65` (needed for the upper endpoint of `I_64`) stays exact.
fn lower_endpoint(k: u32) -> u128 {
    (1u128 << k).div_ceil(3)
}

/// The NAF-interval `I_k = [a_k, a_{k+1})` as a half-open pair, for
/// `1 <= k <= 64`.
pub fn interval(k: u32) -> Result<(u64, u64)> {
    if !(1..=64).contains(&k) {
        return Err(Error::Domain(format!(
            "interval index k must be in 1..=64, got {k}"
        )));
    }
    Ok((lower_endpoint(k) as u64, lower_endpoint(k + 1) as u64))
}

/// `|I_k|` from the parity closed form: `2^k / 3` rounded down for even
/// `k`, rounded up for odd `k`.
pub fn interval_length(k: u32) -> Result<u64> {
    if !(1..=64).contains(&k) {
        return Err(Error::Domain(format!(
            "interval index k must be in 1..=64, got {k}"
        )));
    }
    let pow = 1u128 << k;
    let len = if k.is_multiple_of(2) {
        pow / 3
    } else {
        pow.div_ceil(3)
    };
    Ok(len as u64)
}

/// Number of digits in the reduced NAF of `n`, i.e. the `k` with `n` in
/// `I_k`.  Errors for `n = 0`, whose NAF is empty.
pub fn naf_bitlength(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("n = 0 lies in no NAF-interval".to_string()));
    }
    // n has binary bitlength b, so it lies in I_b or I_{b+1}.
    let b = 64 - n.leading_zeros();
    if (n as u128) < lower_endpoint(b + 1) {
        Ok(b)
    } else {
        Ok(b + 1)
    }
}

/// The reflection `n -> 2^k - n`, an involution of `I_k`.
pub fn sibling(n: u64, k: u32) -> Result<u64> {
    let (lo, hi) = interval(k)?;
    if n < lo || n >= hi {
        return Err(Error::Domain(format!(
            "n={n} is not in I_{k} = [{lo}, {hi})"
        )));
    }
    Ok(((1u128 << k) - n as u128) as u64)
}

/// Which block of the three-way partition an integer falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    A,
    B,
    Midpoint,
    C,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Block::A => "A",
            Block::B => "B",
            Block::Midpoint => "midpoint",
            Block::C => "C",
        })
    }
}

/// Bounds of the partition `I_k = A_k | B_k | C_k` for `k >= 3`:
///
/// ```text
/// A_k = [a, b)   width |I_{k-2}|
/// B_k = [b, c)   width |I_{k-1}|, containing the midpoint 2^{k-1}
/// C_k = [c, upper)   width |I_{k-2}|
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NafPartition {
    pub k: u32,
    /// `a_k`, the lower endpoint of `A_k` and of `I_k`.
    pub a: u64,
    /// Lower endpoint of `B_k`.
    pub b: u64,
    /// Lower endpoint of `C_k`.
    pub c: u64,
    /// `2^{k-1}`, the reflection center of `I_k`, always interior to `B_k`.
    pub midpoint: u64,
    /// `a_{k+1}`, the exclusive upper endpoint of `C_k` and of `I_k`.
    pub upper: u64,
    /// `|I_{k-2}|`, the common width of `A_k` and `C_k`.
    pub len_outer: u64,
    /// `|I_{k-1}|`, the width of `B_k`.
    pub len_mid: u64,
}

/// Computes the partition of `I_k` from the endpoint recursion
/// `a_k = 2^{k-2} + a_{k-2}` and checks every bound against the closed
/// forms before returning.
pub fn partition(k: u32) -> Result<NafPartition> {
    if !(3..=63).contains(&k) {
        return Err(Error::Domain(format!(
            "partition requires 3 <= k <= 63, got {k}"
        )));
    }
    // Roll (a_{i-2}, a_{i-1}, a_i) up from (a_0, a_1, a_2) = (0, 1, 2).
    let (mut am2, mut am1, mut ai) = (0u64, 1, 2);
    for i in 3..=k {
        let next = (1u64 << (i - 2)) + am1;
        am2 = am1;
        am1 = ai;
        ai = next;
    }
    let len_outer = am1 - am2; // |I_{k-2}|
    let len_mid = ai - am1; // |I_{k-1}|
    let midpoint = 1u64 << (k - 1);
    let a = ai;
    let b = a + len_outer;
    let c = midpoint + am2;
    let upper = midpoint + am1; // a_{k+1} = 2^{k-1} + a_{k-1}

    // Cross-check the recursion against the ceil(2^k / 3) closed forms and
    // the parity formulas for b and c.
    assert_eq!(a as u128, lower_endpoint(k));
    assert_eq!(upper as u128, lower_endpoint(k + 1));
    let even = k.is_multiple_of(2);
    assert_eq!(
        b,
        if even {
            midpoint - len_outer
        } else {
            midpoint - (len_outer - 1)
        }
    );
    assert_eq!(
        c,
        if even {
            midpoint + len_outer + 1
        } else {
            midpoint + len_outer
        }
    );
    assert_eq!(c, b + len_mid);
    assert_eq!(upper, c + len_outer);
    assert_eq!(upper - a, len_mid + 2 * len_outer);
    assert!(a < b && b <= midpoint && midpoint < c && c < upper);

    Ok(NafPartition {
        k,
        a,
        b,
        c,
        midpoint,
        upper,
        len_outer,
        len_mid,
    })
}

impl NafPartition {
    /// Locates `n` within the partition; `n` must lie in `I_k`.
    pub fn block_of(&self, n: u64) -> Result<Block> {
        if n < self.a || n >= self.upper {
            return Err(Error::Domain(format!(
                "n={n} is not in I_{} = [{}, {})",
                self.k, self.a, self.upper
            )));
        }
        Ok(if n == self.midpoint {
            Block::Midpoint
        } else if n < self.b {
            Block::A
        } else if n < self.c {
            Block::B
        } else {
            Block::C
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_examples() {
        assert_eq!(naf_encode(0).digits(), &[] as &[i8]);
        assert_eq!(naf_encode(3).digits(), &[-1, 0, 1]);
        assert_eq!(naf_encode(7).digits(), &[-1, 0, 0, 1]);
        assert_eq!(naf_encode(13).digits(), &[1, 0, -1, 0, 1]);
        assert_eq!(naf_encode(16).digits(), &[0, 0, 0, 0, 1]);
    }

    #[test]
    fn encode_is_reduced_naf_with_correct_value() {
        for n in [1u64, 2, 3, 6, 11, 13, 21, 1023, 54321, u64::MAX] {
            let d = naf_encode(n);
            assert!(d.is_reduced_naf(), "n={n}");
            assert_eq!(d.value(), n as i128, "n={n}");
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        assert_eq!(naf_encode(3).to_string(), "10-1");
        assert_eq!(naf_encode(13).to_string(), "10-101");
        assert_eq!(naf_encode(16).to_string(), "10000");
        let d = BsdDigits::parse("10-1").unwrap();
        assert_eq!(d.value(), 3);
        assert_eq!(d, naf_encode(3));
        assert_eq!(BsdDigits::parse("011").unwrap().value(), 3);
        assert!(BsdDigits::parse("10-2").is_err());
        assert!(BsdDigits::parse("1x0").is_err());
        assert!(BsdDigits::parse("1-").is_err());
    }

    #[test]
    fn digit_validation() {
        assert!(BsdDigits::new(vec![1, 0, -1]).is_ok());
        assert!(BsdDigits::new(vec![2]).is_err());
        assert!(BsdDigits::new(vec![0; MAX_DIGITS + 1]).is_err());
    }

    #[test]
    fn zeros_weight_and_naf_flags() {
        let d = BsdDigits::parse("1-11").unwrap();
        assert_eq!((d.zeros(), d.weight()), (0, 3));
        assert!(!d.is_naf());
        let naf = naf_encode(13);
        assert_eq!((naf.zeros(), naf.weight()), (2, 3));
        // Padded NAF is still a NAF but not reduced.
        let padded = BsdDigits::parse("010-1").unwrap();
        assert!(padded.is_naf() && !padded.is_reduced_naf());
    }

    #[test]
    fn interval_examples() {
        assert_eq!(interval(1).unwrap(), (1, 2));
        assert_eq!(interval(4).unwrap(), (6, 11));
        assert_eq!(interval(5).unwrap(), (11, 22));
        assert!(interval(0).is_err());
        assert!(interval(65).is_err());
        assert_eq!(interval_length(4).unwrap(), 5);
        assert_eq!(interval_length(3).unwrap(), 3);
        assert_eq!(interval_length(1).unwrap(), 1);
    }

    #[test]
    fn bitlength_matches_intervals_and_encode() {
        assert_eq!(naf_bitlength(3).unwrap(), 3);
        assert_eq!(naf_bitlength(2).unwrap(), 2);
        assert_eq!(naf_bitlength(11).unwrap(), 5);
        assert_eq!(naf_bitlength(21).unwrap(), 5);
        assert!(naf_bitlength(0).is_err());
        for n in 1..=4096u64 {
            let k = naf_bitlength(n).unwrap();
            assert_eq!(k as usize, naf_encode(n).len(), "n={n}");
            let (lo, hi) = interval(k).unwrap();
            assert!(lo <= n && n < hi, "n={n} k={k}");
        }
    }

    #[test]
    fn partition_examples() {
        let p3 = partition(3).unwrap();
        assert_eq!((p3.a, p3.b, p3.c, p3.midpoint, p3.upper), (3, 4, 5, 4, 6));
        assert_eq!((p3.len_outer, p3.len_mid), (1, 1));
        let p5 = partition(5).unwrap();
        assert_eq!(
            (p5.a, p5.b, p5.c, p5.midpoint, p5.upper),
            (11, 14, 19, 16, 22)
        );
        let p6 = partition(6).unwrap();
        assert_eq!(
            (p6.a, p6.b, p6.c, p6.midpoint, p6.upper),
            (22, 27, 38, 32, 43)
        );
        assert_eq!((p6.len_outer, p6.len_mid), (5, 11));
        assert!(partition(2).is_err());
    }

    #[test]
    fn block_classification() {
        let p5 = partition(5).unwrap();
        assert_eq!(p5.block_of(11).unwrap(), Block::A);
        assert_eq!(p5.block_of(14).unwrap(), Block::B);
        assert_eq!(p5.block_of(16).unwrap(), Block::Midpoint);
        assert_eq!(p5.block_of(19).unwrap(), Block::C);
        assert_eq!(p5.block_of(21).unwrap(), Block::C);
        assert!(p5.block_of(22).is_err());
        assert!(p5.block_of(10).is_err());
    }

    #[test]
    fn sibling_examples() {
        assert_eq!(sibling(13, 5).unwrap(), 19);
        assert_eq!(sibling(16, 5).unwrap(), 16);
        assert_eq!(sibling(3, 3).unwrap(), 5);
        assert!(sibling(10, 5).is_err());
        // Sibling at the top interval that fits u64.
        let (lo, _) = interval(64).unwrap();
        assert_eq!(sibling(sibling(lo, 64).unwrap(), 64).unwrap(), lo);
    }
}
