//! Stern polynomials and the combinatorics of binary signed-digit
//! representations.
//!
//! The crate is organized as a chain of increasingly fast views of the same
//! objects:
//!
//! * [`stern`] — the polynomials `B_n(t)` themselves, with checked `u64`
//!   arithmetic and the Schinzel composition identity.
//! * [`naf`] — signed-digit strings, the non-adjacent form, and the
//!   NAF-intervals `I_k = [ceil(2^k/3), ceil(2^{k+1}/3))` with their
//!   three-block partition.
//! * [`oracle`] — brute-force enumeration of fixed-width signed-digit and
//!   hyperbinary representations; the weight distribution of the `i`-bit
//!   representations of `n` is exactly the coefficient vector of
//!   `B_{2^i - n}`.
//! * [`tables`] — linear-time builders for `M(n)` (number of optimal
//!   representations), `Z(n)` (zeros in the NAF), `deg B_n`, and
//!   `lc B_n`, tabulated interval by interval, plus self-verification
//!   against the polynomial recursion.

pub mod error;
pub mod naf;
pub mod oracle;
pub mod stern;
pub mod tables;

pub use error::{Error, Result};
pub use naf::{
    interval, interval_length, naf_bitlength, naf_encode, partition, sibling, Block, BsdDigits,
    NafPartition,
};
pub use oracle::{
    bsd_to_hyper, enumerate_bsd, enumerate_hyper, hyper_to_bsd, weight_distribution, HyperDigits,
    WeightDistribution, DEFAULT_ENUM_LIMIT,
};
pub use stern::{schinzel_compose, stern_of, stern_table, Sign, SternPolynomial};
pub use tables::{
    content_checksum, fibonacci, read_cache, verify_tables, write_cache, DegLcTables, OptTables,
    MAX_K_MAX,
};
