//! Linear-time tables over NAF-intervals.
//!
//! For positive `n` in `I_k`, write `B_n` for the Stern polynomial of `n`.
//! The quantities tabulated here are
//!
//! * `Z(n) = deg B_n`, the maximum number of zeros over all optimal
//!   (minimal-weight) signed-digit representations of `n` — equivalently
//!   the number of zeros in the NAF of `n`;
//! * `M(n) = lc B_{2^k - n}`, the number of optimal signed-digit
//!   representations of `n`;
//! * `deg(n) = deg B_n` and `lc(n) = lc B_n` themselves.
//!
//! All four satisfy first-order recurrences over the partition
//! `I_k = A_k | B_k | C_k` (see [`crate::naf::partition`]): each entry of
//! `I_k` is a sum of at most two entries of `I_{k-1}` or `I_{k-2}`, plus
//! mirror symmetry about `2^{k-1}` for the second half of `B_k`.  One pass
//! per interval therefore fills the whole table in O(2^k) time.

use std::io::{BufRead, Write};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::naf;
use crate::stern;

/// Largest accepted `k_max`: tables hold `a_{k_max+1}` u64 entries each, so
/// 29 would already cost several GiB across builders.
pub const MAX_K_MAX: u32 = 28;

/// Table length for a given `k_max`, i.e. `a_{k_max+1}` (entries `0..len`
/// cover every `n` with NAF length at most `k_max`).
fn table_len(k_max: u32) -> Result<usize> {
    if k_max < 3 {
        return Err(Error::Domain(format!("k_max must be >= 3, got {k_max}")));
    }
    if k_max > MAX_K_MAX {
        return Err(Error::Capacity {
            required: k_max as u64,
            limit: MAX_K_MAX as u64,
        });
    }
    let (_, upper) = naf::interval(k_max)?;
    Ok(upper as usize)
}

/// Rolling endpoint state `(a_{i-2}, a_{i-1}, a_i)` used by all builders.
/// Starts at `i = 2` and is stepped by [`advance`].
const ENDPOINT_SEED: (u64, u64, u64) = (0, 1, 2);

/// Advances `(a_{i-3}, a_{i-2}, a_{i-1})` to `(a_{i-2}, a_{i-1}, a_i)`
/// via `a_i = 2^{i-2} + a_{i-2}`.
fn advance(state: (u64, u64, u64), i: u32) -> (u64, u64, u64) {
    let (_, am1, ai) = state;
    (am1, ai, (1u64 << (i - 2)) + am1)
}

/// Tables of `M(n)` and `Z(n)` for all `n < a_{k_max+1}`.
///
/// Either vector may be empty if only the other was requested; `M(0) = 0`
/// and `Z(0) = 0` by convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptTables {
    k_max: u32,
    m: Vec<u64>,
    z: Vec<u64>,
}

impl OptTables {
    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    /// Number of entries (equal to `a_{k_max+1}`), or 0 before any build.
    pub fn len(&self) -> usize {
        self.m.len().max(self.z.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `M` column; empty when only `Z` was built.
    pub fn m(&self) -> &[u64] {
        &self.m
    }

    /// The `Z` column; empty when only `M` was built.
    pub fn z(&self) -> &[u64] {
        &self.z
    }

    /// Builds only the `Z` table.
    pub fn build_zeros(k_max: u32) -> Result<Self> {
        let len = table_len(k_max)?;
        let mut z = vec![0u64; len];
        fill_zeros(&mut z, k_max);
        Ok(OptTables {
            k_max,
            m: Vec::new(),
            z,
        })
    }

    /// Builds only the `M` table.
    pub fn build_num_opt(k_max: u32) -> Result<Self> {
        let len = table_len(k_max)?;
        let mut m = vec![0u64; len];
        fill_num_opt(&mut m, k_max)?;
        Ok(OptTables {
            k_max,
            m,
            z: Vec::new(),
        })
    }

    /// Builds both tables sequentially.
    pub fn build(k_max: u32) -> Result<Self> {
        let len = table_len(k_max)?;
        let mut m = vec![0u64; len];
        let mut z = vec![0u64; len];
        fill_num_opt(&mut m, k_max)?;
        fill_zeros(&mut z, k_max);
        Ok(OptTables { k_max, m, z })
    }

    /// Builds both tables with the entries of each interval computed in
    /// parallel.  Every entry is a pure function of earlier intervals, so
    /// the result is identical to [`OptTables::build`].
    pub fn build_parallel(k_max: u32) -> Result<Self> {
        let len = table_len(k_max)?;
        let mut m = vec![0u64; len];
        let mut z = vec![0u64; len];
        m[1] = 1;
        m[2] = 1;
        z[2] = 1;
        let mut state = ENDPOINT_SEED;
        for i in 3..=k_max {
            state = advance(state, i);
            fill_interval_parallel(&mut m, &mut z, i, state)?;
        }
        Ok(OptTables { k_max, m, z })
    }

    /// Maximum of `M` over `I_k` and the smallest `n` attaining it.
    pub fn interval_max_m(&self, k: u32) -> Result<(u64, u64)> {
        if self.m.is_empty() {
            return Err(Error::Domain("M table was not built".to_string()));
        }
        if k < 1 || k > self.k_max {
            return Err(Error::Domain(format!(
                "k must be in 1..={}, got {k}",
                self.k_max
            )));
        }
        let (lo, hi) = naf::interval(k)?;
        let mut best = (lo, self.m[lo as usize]);
        for n in lo..hi {
            let v = self.m[n as usize];
            if v > best.1 {
                best = (n, v);
            }
        }
        Ok(best)
    }
}

/// Fills `Z` in place: `Z[0] = Z[1] = 0`, `Z[2] = 1`, then per interval
/// `I_i` one merged pass writes `A_i` and the first half of `B_i` from
/// `Z[a_{i-2} + j] + 1` (the source walks `I_{i-2}` and on into `I_{i-1}`)
/// and mirrors each value to `2^i - n`; the midpoint gets `i - 1`.
fn fill_zeros(z: &mut [u64], k_max: u32) {
    z[0] = 0;
    z[1] = 0;
    z[2] = 1;
    let mut state = ENDPOINT_SEED;
    for i in 3..=k_max {
        state = advance(state, i);
        let (am2, _, ai) = state;
        let half = 1u64 << (i - 1);
        let full = 1u64 << i;
        z[half as usize] = (i - 1) as u64;
        for j in 0..half - ai {
            let v = z[(am2 + j) as usize] + 1;
            z[(ai + j) as usize] = v;
            z[(full - (ai + j)) as usize] = v;
        }
    }
}

/// Fills `M` in place.  Seeds are `M[0] = 0`, `M[1] = M[2] = 1`; then for
/// each interval `I_i`:
///
/// * `A_i`: `M[a_i + h] = M[a_{i-2} + h] + M[2^{i-2} - (a_{i-2} + h)]`
/// * `C_i`: `M[c_i + h] = M[a_{i-2} + h]`
/// * midpoint: `M[2^{i-1}] = 1`
/// * `B_i`: `M[b_i + j] = M[2^i - (b_i + j)] = M[2^{i-1} - (a_{i-1} + j)]`
///
/// The A-case sum uses checked addition; values are Fibonacci-bounded so
/// overflow is unreachable for any accepted `k_max`, but the check stays on.
fn fill_num_opt(m: &mut [u64], k_max: u32) -> Result<()> {
    m[0] = 0;
    m[1] = 1;
    m[2] = 1;
    let mut state = ENDPOINT_SEED;
    for i in 3..=k_max {
        state = advance(state, i);
        let (am2, am1, ai) = state;
        let (ac_len, b_len) = if i % 2 == 0 {
            (am2 - 1, am2)
        } else {
            (am2, am2 - 1)
        };
        let bi = ai + ac_len;
        let half = 1u64 << (i - 1);
        let quarter = 1u64 << (i - 2);
        let ci = half + am2;
        for h in 0..ac_len {
            let outer = m[(am2 + h) as usize];
            let inner = m[(quarter - (am2 + h)) as usize];
            m[(ai + h) as usize] = outer.checked_add(inner).ok_or(Error::Overflow)?;
            m[(ci + h) as usize] = outer;
        }
        m[half as usize] = 1;
        for j in 0..b_len {
            let v = m[(half - (am1 + j)) as usize];
            m[(bi + j) as usize] = v;
            m[((1u64 << i) - (bi + j)) as usize] = v;
        }
    }
    Ok(())
}

/// Parallel variant of one interval pass: entries of `I_i` only read from
/// completed intervals, so the slice split at `a_i` lets rayon fill the
/// current interval from the frozen prefix.
fn fill_interval_parallel(
    m: &mut [u64],
    z: &mut [u64],
    i: u32,
    state: (u64, u64, u64),
) -> Result<()> {
    let (am2, am1, ai) = state;
    let part = naf::partition(i)?;
    debug_assert_eq!(part.a, ai);
    let quarter = 1u64 << (i - 2);
    let full = 1u64 << i;

    let (m_done, m_rest) = m.split_at_mut(ai as usize);
    let m_cur = &mut m_rest[..(part.upper - ai) as usize];
    m_cur
        .par_iter_mut()
        .enumerate()
        .try_for_each(|(off, slot)| -> Result<()> {
            let n = ai + off as u64;
            *slot = if n == part.midpoint {
                1
            } else if n < part.b {
                let outer = m_done[(am2 + (n - part.a)) as usize];
                let inner = m_done[(quarter - (am2 + (n - part.a))) as usize];
                outer.checked_add(inner).ok_or(Error::Overflow)?
            } else if n < part.c {
                // Both halves of B_i reduce to I_{i-1} via the mirror.
                let u = if n < part.midpoint {
                    n - part.b
                } else {
                    full - n - part.b
                };
                m_done[(part.midpoint - (am1 + u)) as usize]
            } else {
                m_done[(am2 + (n - part.c)) as usize]
            };
            Ok(())
        })?;

    let (z_done, z_rest) = z.split_at_mut(ai as usize);
    let z_cur = &mut z_rest[..(part.upper - ai) as usize];
    z_cur.par_iter_mut().enumerate().for_each(|(off, slot)| {
        let n = ai + off as u64;
        *slot = if n == part.midpoint {
            (i - 1) as u64
        } else {
            // Z is mirror-symmetric, and both A_i and the first half of
            // B_i step down to a_{i-2} + j for a contiguous run of j.
            let folded = n.min(full - n);
            z_done[(am2 + (folded - part.a)) as usize] + 1
        };
    });
    Ok(())
}

/// Tables of `deg B_n` and `lc B_n` for `1 <= n < a_{k_max+1}`.
///
/// Index 0 is present but unused: the zero polynomial has neither degree
/// nor leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegLcTables {
    k_max: u32,
    deg: Vec<u64>,
    lc: Vec<u64>,
}

impl DegLcTables {
    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn len(&self) -> usize {
        self.deg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deg.is_empty()
    }

    /// Degrees, indexed by `n`; entry 0 is a placeholder.
    pub fn deg(&self) -> &[u64] {
        &self.deg
    }

    /// Leading coefficients, indexed by `n`; entry 0 is a placeholder.
    pub fn lc(&self) -> &[u64] {
        &self.lc
    }

    /// Builds both tables from the interval recursion: with sibling
    /// `s = 2^{i-2} - n'` of a source `n'` in `I_{i-2}`,
    ///
    /// * `A_i` from `I_{i-2}`: degree steps by one, `lc` is carried;
    /// * `C_i`: degree of the sibling steps by one, `lc` adds source and
    ///   sibling;
    /// * `B_i` from `I_{i-1}`: degree steps by one, `lc` carried, and the
    ///   second half mirrors the first about `2^{i-1}`;
    /// * midpoint `2^{i-1}`: degree `i - 1`, `lc` 1.
    pub fn build(k_max: u32) -> Result<Self> {
        let len = table_len(k_max)?;
        let mut deg = vec![0u64; len];
        let mut lc = vec![0u64; len];
        // B_1 = 1 and B_2 = t.
        deg[1] = 0;
        lc[1] = 1;
        deg[2] = 1;
        lc[2] = 1;
        let mut state = ENDPOINT_SEED;
        for i in 3..=k_max {
            state = advance(state, i);
            let (am2, am1, ai) = state;
            let len_outer = am1 - am2;
            let bi = ai + len_outer;
            let half = 1u64 << (i - 1);
            let quarter = 1u64 << (i - 2);
            let ci = half + am2;
            for v in 0..len_outer {
                let src = (am2 + v) as usize;
                let sib = (quarter - (am2 + v)) as usize;
                deg[(ai + v) as usize] = deg[src] + 1;
                lc[(ai + v) as usize] = lc[src];
                deg[(ci + v) as usize] = deg[sib] + 1;
                lc[(ci + v) as usize] = lc[sib].checked_add(lc[src]).ok_or(Error::Overflow)?;
            }
            deg[half as usize] = (i - 1) as u64;
            lc[half as usize] = 1;
            for u in 0..half - bi {
                let src = (am1 + u) as usize;
                let d = deg[src] + 1;
                let l = lc[src];
                deg[(bi + u) as usize] = d;
                lc[(bi + u) as usize] = l;
                let mirror = ((1u64 << i) - (bi + u)) as usize;
                deg[mirror] = d;
                lc[mirror] = l;
            }
        }
        Ok(DegLcTables { k_max, deg, lc })
    }
}

/// Fibonacci numbers with `F_1 = F_2 = 1`, checked (errors from `F_94` on).
pub fn fibonacci(i: u32) -> Result<u64> {
    if i == 0 {
        return Err(Error::Domain("Fibonacci index starts at 1".to_string()));
    }
    let (mut prev, mut cur) = (0u64, 1u64);
    for _ in 1..i {
        let next = prev.checked_add(cur).ok_or(Error::Overflow)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Recomputes every tabulated quantity for all `n` with NAF length at most
/// `depth` directly from the Stern polynomial recursion and compares.
///
/// Checks whichever columns are present: `M` against
/// `lc B_{2^k - n}`, `Z` and `deg` against `deg B_n`, `lc` against
/// `lc B_n`.  Returns the first [`Error::Mismatch`] found.
pub fn verify_tables(
    opt: Option<&OptTables>,
    deg_lc: Option<&DegLcTables>,
    depth: u32,
) -> Result<()> {
    if depth < 1 {
        return Err(Error::Domain("verification depth must be >= 1".to_string()));
    }
    if let Some(t) = opt {
        if depth > t.k_max {
            return Err(Error::Domain(format!(
                "depth {depth} exceeds table k_max {}",
                t.k_max
            )));
        }
    }
    if let Some(t) = deg_lc {
        if depth > t.k_max {
            return Err(Error::Domain(format!(
                "depth {depth} exceeds table k_max {}",
                t.k_max
            )));
        }
    }
    let (_, hi) = naf::interval(depth)?;
    let sterns = stern::stern_table(hi - 1)?;
    for n in 1..hi {
        let k = naf::naf_bitlength(n)?;
        let sib = ((1u128 << k) - n as u128) as u64;
        let poly = &sterns[n as usize];
        let expected_deg = poly.degree()? as u64;
        if let Some(t) = opt {
            if !t.m.is_empty() {
                let expected = sterns[sib as usize].leading_coefficient()?;
                let actual = t.m[n as usize];
                if actual != expected {
                    return Err(Error::Mismatch {
                        n,
                        field: "M",
                        expected,
                        actual,
                    });
                }
            }
            if !t.z.is_empty() {
                let actual = t.z[n as usize];
                if actual != expected_deg {
                    return Err(Error::Mismatch {
                        n,
                        field: "Z",
                        expected: expected_deg,
                        actual,
                    });
                }
            }
        }
        if let Some(t) = deg_lc {
            let actual = t.deg[n as usize];
            if actual != expected_deg {
                return Err(Error::Mismatch {
                    n,
                    field: "deg",
                    expected: expected_deg,
                    actual,
                });
            }
            let expected_lc = poly.leading_coefficient()?;
            let actual_lc = t.lc[n as usize];
            if actual_lc != expected_lc {
                return Err(Error::Mismatch {
                    n,
                    field: "lc",
                    expected: expected_lc,
                    actual: actual_lc,
                });
            }
        }
    }
    Ok(())
}

/// Writes the five-column cache: a `# k_max=<k>` comment, a `n,M,Z,deg,lc`
/// header, then one row per `n` from 1 to `a_{k_max+1} - 1`.
///
/// Row 0 is omitted because `deg` and `lc` are undefined there; readers
/// restore `M(0) = Z(0) = 0`.
pub fn write_cache<W: Write>(opt: &OptTables, deg_lc: &DegLcTables, w: &mut W) -> Result<()> {
    if opt.k_max != deg_lc.k_max {
        return Err(Error::Domain(format!(
            "table k_max mismatch: {} vs {}",
            opt.k_max, deg_lc.k_max
        )));
    }
    if opt.m.is_empty() || opt.z.is_empty() {
        return Err(Error::Domain(
            "cache requires both M and Z columns".to_string(),
        ));
    }
    writeln!(w, "# k_max={}", opt.k_max)?;
    writeln!(w, "n,M,Z,deg,lc")?;
    for n in 1..opt.len() {
        writeln!(
            w,
            "{},{},{},{},{}",
            n, opt.m[n], opt.z[n], deg_lc.deg[n], deg_lc.lc[n]
        )?;
    }
    Ok(())
}

/// Reads a cache produced by [`write_cache`], validating the header, the
/// row count against `k_max`, and contiguity of the `n` column.
pub fn read_cache<R: BufRead>(r: R) -> Result<(OptTables, DegLcTables)> {
    let mut lines = r.lines();
    let first = lines
        .next()
        .transpose()?
        .ok_or_else(|| Error::Domain("empty cache file".to_string()))?;
    let k_max: u32 = first
        .strip_prefix("# k_max=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Domain(format!("bad cache preamble: {first:?}")))?;
    let header = lines
        .next()
        .transpose()?
        .ok_or_else(|| Error::Domain("cache missing header row".to_string()))?;
    if header != "n,M,Z,deg,lc" {
        return Err(Error::Domain(format!("bad cache header: {header:?}")));
    }
    let len = table_len(k_max)?;
    let mut m = vec![0u64; len];
    let mut z = vec![0u64; len];
    let mut deg = vec![0u64; len];
    let mut lc = vec![0u64; len];
    let mut next = 1usize;
    for line in lines {
        let line = line?;
        let mut fields = line.split(',');
        let mut field = |name: &str| -> Result<u64> {
            fields
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Domain(format!("row {next}: bad {name} field")))
        };
        let n = field("n")? as usize;
        if n != next || n >= len {
            return Err(Error::Domain(format!("cache rows not contiguous at n={n}")));
        }
        m[n] = field("M")?;
        z[n] = field("Z")?;
        deg[n] = field("deg")?;
        lc[n] = field("lc")?;
        next += 1;
    }
    if next != len {
        return Err(Error::Domain(format!(
            "cache truncated: expected {} rows, got {}",
            len - 1,
            next - 1
        )));
    }
    Ok((OptTables { k_max, m, z }, DegLcTables { k_max, deg, lc }))
}

/// SHA-256 of a serialized table, as lowercase hex.
pub fn content_checksum(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}
