//! Exhaustive enumeration of fixed-width signed-digit and hyperbinary
//! representations.
//!
//! These enumerators are deliberately brute force: they exist as an
//! independent ground truth for everything the rest of the crate computes
//! by recursion.  The weight distribution of the `i`-bit signed-digit
//! representations of `n` (counted by number of zero digits) equals the
//! coefficient vector of the Stern polynomial `B_{2^i - n}`, and the digit
//! map `b -> 1 - b` carries those representations onto the `i`-digit
//! hyperbinary representations of `2^i - 1 - n`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::naf::BsdDigits;
use crate::stern::SternPolynomial;

/// Default cap on the number of representations an enumeration may return.
pub const DEFAULT_ENUM_LIMIT: u64 = 1_000_000;

/// Widths above this would overflow the i128 pruning bounds.
pub const MAX_ENUM_BITS: u32 = 120;

/// A hyperbinary digit string (digits in `{0, 1, 2}`), least significant
/// digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperDigits {
    digits: Vec<u8>,
}

impl HyperDigits {
    /// Builds a digit string, rejecting digits outside `{0, 1, 2}`.
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if digits.len() > crate::naf::MAX_DIGITS {
            return Err(Error::Capacity {
                required: digits.len() as u64,
                limit: crate::naf::MAX_DIGITS as u64,
            });
        }
        if let Some(&d) = digits.iter().find(|&&d| d > 2) {
            return Err(Error::Domain(format!("digit {d} is not in {{0, 1, 2}}")));
        }
        Ok(HyperDigits { digits })
    }

    /// Digits, least significant first.
    pub fn digits(&self) -> &[u8] {
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

    /// Number of digits equal to 1.
    pub fn ones(&self) -> usize {
        self.digits.iter().filter(|&&d| d == 1).count()
    }
}

impl fmt::Display for HyperDigits {
    /// Most significant digit first, one character per digit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in self.digits.iter().rev() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// The digit involution `b -> 1 - b`, sending an `i`-bit BSD representation
/// of `n` to an `i`-digit hyperbinary representation of `2^i - 1 - n`.
pub fn bsd_to_hyper(d: &BsdDigits) -> HyperDigits {
    HyperDigits {
        digits: d.digits().iter().map(|&b| (1 - b) as u8).collect(),
    }
}

/// Inverse of [`bsd_to_hyper`].
pub fn hyper_to_bsd(h: &HyperDigits) -> BsdDigits {
    BsdDigits::from_raw(h.digits.iter().map(|&b| 1 - b as i8).collect())
}

/// Enumerates every `bits`-digit BSD representation of `n`, in
/// lexicographic order on the digit vectors compared least significant
/// digit first with `-1 < 0 < 1`.
///
/// Errors with [`Error::Capacity`] once more than `limit` representations
/// exist.
pub fn enumerate_bsd(n: i64, bits: u32, limit: u64) -> Result<Vec<BsdDigits>> {
    if bits > MAX_ENUM_BITS {
        return Err(Error::Domain(format!(
            "bits must be <= {MAX_ENUM_BITS}, got {bits}"
        )));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(bits as usize);
    descend_bsd(n as i128, bits, &mut prefix, &mut out, limit)?;
    Ok(out)
}

fn descend_bsd(
    n: i128,
    remaining: u32,
    prefix: &mut Vec<i8>,
    out: &mut Vec<BsdDigits>,
    limit: u64,
) -> Result<()> {
    if remaining == 0 {
        if n == 0 {
            if out.len() as u64 >= limit {
                return Err(Error::Capacity {
                    required: limit + 1,
                    limit,
                });
            }
            out.push(BsdDigits::from_raw(prefix.clone()));
        }
        return Ok(());
    }
    // The remaining digits can only reach values in [-(2^r - 1), 2^r - 1].
    let reach = (1i128 << remaining) - 1;
    if n > reach || n < -reach {
        return Ok(());
    }
    for d in [-1i8, 0, 1] {
        if (n - d as i128) % 2 != 0 {
            continue;
        }
        prefix.push(d);
        descend_bsd((n - d as i128) / 2, remaining - 1, prefix, out, limit)?;
        prefix.pop();
    }
    Ok(())
}

/// Enumerates every `bits`-digit hyperbinary representation of `n`, in
/// lexicographic order on the digit vectors compared least significant
/// digit first with `0 < 1 < 2`.
pub fn enumerate_hyper(n: u64, bits: u32, limit: u64) -> Result<Vec<HyperDigits>> {
    if bits > MAX_ENUM_BITS {
        return Err(Error::Domain(format!(
            "bits must be <= {MAX_ENUM_BITS}, got {bits}"
        )));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(bits as usize);
    descend_hyper(n as i128, bits, &mut prefix, &mut out, limit)?;
    Ok(out)
}

fn descend_hyper(
    n: i128,
    remaining: u32,
    prefix: &mut Vec<u8>,
    out: &mut Vec<HyperDigits>,
    limit: u64,
) -> Result<()> {
    if remaining == 0 {
        if n == 0 {
            if out.len() as u64 >= limit {
                return Err(Error::Capacity {
                    required: limit + 1,
                    limit,
                });
            }
            out.push(HyperDigits {
                digits: prefix.clone(),
            });
        }
        return Ok(());
    }
    let reach = 2 * ((1i128 << remaining) - 1);
    if n < 0 || n > reach {
        return Ok(());
    }
    for d in [0u8, 1, 2] {
        if (n - d as i128) % 2 != 0 {
            continue;
        }
        prefix.push(d);
        descend_hyper((n - d as i128) / 2, remaining - 1, prefix, out, limit)?;
        prefix.pop();
    }
    Ok(())
}

/// Histogram of the `bits`-digit BSD representations of `n`, keyed by the
/// number of zero digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    n: i64,
    bits: u32,
    counts: BTreeMap<u32, u64>,
}

impl WeightDistribution {
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Count of representations per number of zeros, sorted by key.
    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    /// Total number of representations.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The distribution as a dense coefficient vector indexed by number of
    /// zeros, trailing zeros trimmed.  For `0 <= n <= 2^bits` this equals
    /// `stern_of(2^bits - n).coeffs()`.
    pub fn to_polynomial(&self) -> SternPolynomial {
        let len = self
            .counts
            .keys()
            .next_back()
            .map_or(0, |&z| z as usize + 1);
        let mut coeffs = vec![0u64; len];
        for (&zeros, &count) in &self.counts {
            coeffs[zeros as usize] = count;
        }
        SternPolynomial::from_coeffs(coeffs)
    }
}

/// Enumerates and tallies the `bits`-digit BSD representations of `n` by
/// number of zero digits.
pub fn weight_distribution(n: i64, bits: u32, limit: u64) -> Result<WeightDistribution> {
    let reps = enumerate_bsd(n, bits, limit)?;
    let mut counts = BTreeMap::new();
    for rep in &reps {
        *counts.entry(rep.zeros() as u32).or_insert(0u64) += 1;
    }
    Ok(WeightDistribution { n, bits, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stern::stern_of;

    fn strings(reps: &[BsdDigits]) -> Vec<String> {
        reps.iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn enumerate_bsd_examples() {
        let reps = enumerate_bsd(3, 3, DEFAULT_ENUM_LIMIT).unwrap();
        assert_eq!(strings(&reps), ["10-1", "1-11", "011"]);
        for r in &reps {
            assert_eq!(r.value(), 3);
            assert_eq!(r.len(), 3);
        }
        let zero = enumerate_bsd(0, 4, DEFAULT_ENUM_LIMIT).unwrap();
        assert_eq!(strings(&zero), ["0000"]);
        assert!(enumerate_bsd(8, 3, DEFAULT_ENUM_LIMIT).unwrap().is_empty());
        // Negative targets mirror positive ones digit-wise.
        let neg = enumerate_bsd(-3, 3, DEFAULT_ENUM_LIMIT).unwrap();
        assert_eq!(neg.len(), 3);
        for r in &neg {
            assert_eq!(r.value(), -3);
        }
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        assert_eq!(
            enumerate_bsd(3, 3, 2),
            Err(Error::Capacity {
                required: 3,
                limit: 2
            })
        );
        assert!(enumerate_bsd(3, 3, 3).is_ok());
    }

    #[test]
    fn enumerate_hyper_examples() {
        let reps = enumerate_hyper(4, 3, DEFAULT_ENUM_LIMIT).unwrap();
        let shown: Vec<String> = reps.iter().map(|r| r.to_string()).collect();
        assert_eq!(shown, ["100", "020", "012"]);
        assert_eq!(
            reps.iter().map(HyperDigits::ones).collect::<Vec<_>>(),
            [1, 0, 1]
        );
        assert_eq!(enumerate_hyper(0, 2, DEFAULT_ENUM_LIMIT).unwrap().len(), 1);
        assert_eq!(
            enumerate_hyper(7, 3, DEFAULT_ENUM_LIMIT)
                .unwrap()
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>(),
            ["111"]
        );
    }

    #[test]
    fn digit_transform_is_a_bijection() {
        // i-bit BSD reps of n <-> i-digit hyperbinary reps of 2^i - 1 - n.
        let (n, bits) = (3i64, 4u32);
        let bsd = enumerate_bsd(n, bits, DEFAULT_ENUM_LIMIT).unwrap();
        let hyper = enumerate_hyper((1 << bits) - 1 - n as u64, bits, DEFAULT_ENUM_LIMIT).unwrap();
        assert_eq!(bsd.len(), hyper.len());
        for rep in &bsd {
            let image = bsd_to_hyper(rep);
            assert_eq!(image.value(), (1 << bits) - 1 - n as i128);
            assert!(hyper.contains(&image));
            assert_eq!(hyper_to_bsd(&image), *rep);
            // Zeros map to ones under b -> 1 - b.
            assert_eq!(image.ones(), rep.zeros());
        }
    }

    #[test]
    fn hyper_digit_validation() {
        assert!(HyperDigits::new(vec![0, 1, 2]).is_ok());
        assert!(HyperDigits::new(vec![3]).is_err());
    }

    #[test]
    fn weight_distribution_examples() {
        let wd = weight_distribution(3, 3, DEFAULT_ENUM_LIMIT).unwrap();
        assert_eq!(wd.counts(), &BTreeMap::from([(0, 1), (1, 2)]));
        assert_eq!(wd.total(), 3);
        let zero = weight_distribution(0, 4, DEFAULT_ENUM_LIMIT).unwrap();
        assert_eq!(zero.counts(), &BTreeMap::from([(4, 1)]));
    }

    #[test]
    fn weight_distribution_matches_stern_polynomial() {
        // The i-bit distribution of n is B_{2^i - n}: here B_9 = 1 + 2t + t^2.
        let wd = weight_distribution(7, 4, DEFAULT_ENUM_LIMIT).unwrap();
        assert_eq!(wd.to_polynomial(), stern_of(9).unwrap());
        // n = 2^i has no i-bit representations: the zero polynomial.
        let empty = weight_distribution(8, 3, DEFAULT_ENUM_LIMIT).unwrap();
        assert!(empty.to_polynomial().is_zero());
        assert_eq!(empty.to_polynomial(), stern_of(0).unwrap());
    }
}
