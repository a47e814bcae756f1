//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test -- --nocapture`).  Every check compares a
//! fast code path against an independently computed ground truth.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stern_bsd::naf;
use stern_bsd::oracle::{self, DEFAULT_ENUM_LIMIT};
use stern_bsd::stern::{self, Sign};
use stern_bsd::tables::{fibonacci, DegLcTables, OptTables};

fn diatomic(mut n: u64) -> u64 {
    let (mut a, mut b) = (1u64, 0u64);
    while n > 0 {
        if n & 1 == 1 {
            b += a;
        } else {
            a += b;
        }
        n >>= 1;
    }
    b
}

/// Criterion 1: the enumerated weight distribution of the i-bit BSD
/// representations of n equals the coefficients of B_{2^i - n} — exactly,
/// exhaustively for i <= 8, and for 100 random n at i = 10, 12, 14.
#[test]
fn criterion_1_weight_distributions_match_stern_coefficients() {
    for bits in 0u32..=8 {
        for n in 0..=(1u64 << bits) {
            let wd = oracle::weight_distribution(n as i64, bits, DEFAULT_ENUM_LIMIT).unwrap();
            let expected = stern::stern_of((1u64 << bits) - n).unwrap();
            assert_eq!(wd.to_polynomial(), expected, "bits={bits} n={n}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5747_2d31);
    for bits in [10u32, 12, 14] {
        for _ in 0..100 {
            let n = rng.random_range(0..=(1u64 << bits));
            let wd = oracle::weight_distribution(n as i64, bits, DEFAULT_ENUM_LIMIT).unwrap();
            let expected = stern::stern_of((1u64 << bits) - n).unwrap();
            assert_eq!(wd.to_polynomial(), expected, "bits={bits} n={n}");
        }
    }
    println!("ACCEPTANCE C1 weight-distributions: PASS");
}

/// Criterion 2: every table builder agrees with the polynomial recursion
/// for all n < a_17 = 43691, within a 30 second budget.
#[test]
fn criterion_2_tables_agree_with_polynomials_up_to_a17() {
    let started = Instant::now();
    let (lo17, _) = naf::interval(17).unwrap();
    assert_eq!(lo17, 43691);
    let opt_m = OptTables::build_num_opt(16).unwrap();
    let opt_z = OptTables::build_zeros(16).unwrap();
    let deg_lc = DegLcTables::build(16).unwrap();
    assert_eq!(opt_m.len() as u64, lo17);
    let sterns = stern::stern_table(lo17 - 1).unwrap();
    assert_eq!(opt_z.z()[0], 0);
    assert_eq!(opt_m.m()[0], 0);
    for n in 1..lo17 {
        let k = naf::naf_bitlength(n).unwrap();
        let sib = naf::sibling(n, k).unwrap();
        let deg = sterns[n as usize].degree().unwrap() as u64;
        let lc = sterns[n as usize].leading_coefficient().unwrap();
        assert_eq!(
            opt_m.m()[n as usize],
            sterns[sib as usize].leading_coefficient().unwrap(),
            "M at n={n}"
        );
        assert_eq!(opt_z.z()[n as usize], deg, "Z at n={n}");
        assert_eq!(deg_lc.deg()[n as usize], deg, "deg at n={n}");
        assert_eq!(deg_lc.lc()[n as usize], lc, "lc at n={n}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("ACCEPTANCE C2 table-vs-polynomial sweep (43691 indices in {elapsed:?}): PASS");
}

/// Criterion 3: the maximum of M over I_k is the Fibonacci number
/// F_{ceil(k/2)+1}, attained inside A_k = [a_k, b_k), for 3 <= k <= 24.
#[test]
fn criterion_3_fibonacci_maxima() {
    let tables = OptTables::build_num_opt(24).unwrap();
    for k in 3u32..=24 {
        let (n_star, m_star) = tables.interval_max_m(k).unwrap();
        let expected = fibonacci(k.div_ceil(2) + 1).unwrap();
        assert_eq!(m_star, expected, "max M over I_{k}");
        let part = naf::partition(k).unwrap();
        assert!(
            part.a <= n_star && n_star < part.b,
            "argmax {n_star} outside A_{k}"
        );
        // Informational: the largest M on the middle block B_k.
        let b_max = (part.b..part.c)
            .map(|n| tables.m()[n as usize])
            .max()
            .unwrap();
        println!("  I_{k}: max M = {m_star} at n = {n_star}; max over B_{k} = {b_max}");
    }
    // Spot values, independently cross-checked by exhaustive enumeration
    // of optimal representations elsewhere in the suite.
    assert_eq!(tables.interval_max_m(5).unwrap(), (11, 3));
    assert_eq!(tables.interval_max_m(15).unwrap().1, 34);
    assert_eq!(tables.interval_max_m(16).unwrap().1, 34);
    println!("ACCEPTANCE C3 fibonacci-maxima: PASS");
}

/// Criterion 4: the composition identity B_{2^a m +- r} =
/// B_{2^a - r} B_m + B_r B_{m -+ 1} holds exactly on 1000 random
/// instances with a <= 10, m <= 32, both signs.
#[test]
fn criterion_4_schinzel_composition_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5343_485a);
    for trial in 0..1000 {
        let a = rng.random_range(1u32..=10);
        let m = rng.random_range(1u64..=32);
        let r = rng.random_range(0..=(1u64 << a));
        let (sign, index) = if rng.random_bool(0.5) {
            (Sign::Minus, (1u64 << a) * m - r)
        } else {
            (Sign::Plus, (1u64 << a) * m + r)
        };
        let composed = stern::schinzel_compose(a, m, r, sign).unwrap();
        let direct = stern::stern_of(index).unwrap();
        assert_eq!(
            composed, direct,
            "trial {trial}: a={a} m={m} r={r} sign={sign:?}"
        );
    }
    println!("ACCEPTANCE C4 composition-identity (1000 random instances): PASS");
}

/// Criterion 5: NAF-interval structure for k <= 24 — tiling, the length
/// recursion, the closed forms for the partition bounds, and closure of
/// the blocks under the sibling reflection (including across k).
#[test]
fn criterion_5_interval_partition_suite() {
    // Tiling: consecutive intervals abut and cover [1, a_25).
    assert_eq!(naf::interval(1).unwrap(), (1, 2));
    for k in 1u32..=24 {
        let (lo, hi) = naf::interval(k).unwrap();
        assert_eq!(lo, ((1u128 << k) as u64).div_ceil(3), "a_{k} closed form");
        assert_eq!(hi, naf::interval(k + 1).unwrap().0, "tiling at k={k}");
        assert_eq!(hi - lo, naf::interval_length(k).unwrap());
        if k >= 3 {
            assert_eq!(
                naf::interval_length(k).unwrap(),
                naf::interval_length(k - 1).unwrap() + 2 * naf::interval_length(k - 2).unwrap()
            );
        }
    }
    for k in 3u32..=24 {
        let p = naf::partition(k).unwrap();
        let (lo, hi) = naf::interval(k).unwrap();
        let mid = 1u64 << (k - 1);
        // Closed forms for every bound.
        assert_eq!(p.a, lo);
        assert_eq!(p.upper, hi);
        assert_eq!(p.midpoint, mid);
        assert_eq!(p.a, (1u64 << (k - 2)) + naf::interval(k - 2).unwrap().0);
        assert_eq!(p.c, mid + naf::interval(k - 2).unwrap().0);
        assert_eq!(p.len_outer, naf::interval_length(k - 2).unwrap());
        assert_eq!(p.len_mid, naf::interval_length(k - 1).unwrap());
        let expected_b = if k % 2 == 0 {
            mid - p.len_outer
        } else {
            mid - (p.len_outer - 1)
        };
        assert_eq!(p.b, expected_b);
        assert_eq!(p.b - p.a, p.len_outer);
        assert_eq!(p.c - p.b, p.len_mid);
        assert_eq!(p.upper - p.c, p.len_outer);
        assert_eq!(p.block_of(mid).unwrap(), naf::Block::Midpoint);

        // Sibling closure: A and C swap, B maps into itself, the midpoint
        // is fixed.  Exhaustive for small k, all block boundaries always.
        let mut probes: Vec<u64> = vec![
            p.a,
            p.b - 1,
            p.b,
            mid - 1,
            mid,
            mid + 1,
            p.c - 1,
            p.c,
            p.upper - 1,
        ];
        if k <= 14 {
            probes.extend(lo..hi);
        }
        for n in probes {
            let sib = naf::sibling(n, k).unwrap();
            assert!(lo <= sib && sib < hi, "sibling left I_{k}: n={n}");
            assert_eq!(naf::sibling(sib, k).unwrap(), n);
            let expected = match p.block_of(n).unwrap() {
                naf::Block::A => naf::Block::C,
                naf::Block::C => naf::Block::A,
                naf::Block::B => naf::Block::B,
                naf::Block::Midpoint => naf::Block::Midpoint,
            };
            assert_eq!(p.block_of(sib).unwrap(), expected, "n={n} k={k}");
        }

        // Siblings across k: the I_{k-2} reflection of a_{k-2} + v lands at
        // offset x iff the I_k reflection of a_k + v lands at c_k + x.
        if k >= 5 {
            let am2 = naf::interval(k - 2).unwrap().0;
            for v in 0..p.len_outer {
                let x = naf::sibling(am2 + v, k - 2).unwrap() - am2;
                assert_eq!(naf::sibling(p.a + v, k).unwrap(), p.c + x, "k={k} v={v}");
            }
        }
    }
    println!("ACCEPTANCE C5 interval-partition suite: PASS");
}

/// Criterion 6: for n <= 2^16 the zero count of the NAF, the Z table, and
/// deg B_n coincide; for n < 2^10 the NAF is verified minimal-weight by
/// exhaustive enumeration.
#[test]
fn criterion_6_naf_zeros_and_minimality() {
    let opt = OptTables::build_zeros(17).unwrap();
    let sterns = stern::stern_table(1 << 16).unwrap();
    assert_eq!(naf::naf_encode(0).zeros(), 0);
    assert_eq!(opt.z()[0], 0);
    for n in 1..=(1u64 << 16) {
        let zeros = naf::naf_encode(n).zeros() as u64;
        assert_eq!(zeros, opt.z()[n as usize], "Z at n={n}");
        assert_eq!(
            zeros,
            sterns[n as usize].degree().unwrap() as u64,
            "deg at n={n}"
        );
    }
    for n in 1..(1u64 << 10) {
        let d = naf::naf_encode(n);
        assert!(d.is_reduced_naf());
        // Give the enumeration two extra digits of slack so any shorter
        // minimum could only be easier to find.
        let bits = d.len() as u32 + 2;
        let best = oracle::enumerate_bsd(n as i64, bits, DEFAULT_ENUM_LIMIT)
            .unwrap()
            .iter()
            .map(|rep| rep.weight())
            .min()
            .unwrap();
        assert_eq!(d.weight(), best, "NAF of {n} is not minimal");
    }
    println!("ACCEPTANCE C6 naf-zeros-and-minimality: PASS");
}

/// Criterion 7: B_n(2) = n and B_n(1) = c(n) (the diatomic sequence) for
/// all n <= 10^5.
#[test]
fn criterion_7_evaluation_specializations() {
    let sterns = stern::stern_table(100_000).unwrap();
    for (n, poly) in sterns.iter().enumerate() {
        assert_eq!(poly.evaluate(2).unwrap(), n as u64, "B_{n}(2)");
        assert_eq!(poly.evaluate(1).unwrap(), diatomic(n as u64), "B_{n}(1)");
    }
    println!("ACCEPTANCE C7 evaluation-specializations (n <= 100000): PASS");
}

/// Criterion 8: building both tables for k_max = 24 (about 11.2M entries)
/// completes, and costs at most 2.5x the k_max = 23 build — the growth a
/// linear-time builder shows when the input doubles (best of 3 runs each).
#[test]
fn criterion_8_build_time_scales_linearly() {
    let time_build = |k_max: u32| -> Duration {
        (0..3)
            .map(|_| {
                let start = Instant::now();
                let t = OptTables::build(k_max).unwrap();
                let elapsed = start.elapsed();
                assert_eq!(t.len() as u64, naf::interval(k_max).unwrap().1);
                elapsed
            })
            .min()
            .unwrap()
    };
    let t23 = time_build(23);
    let t24 = time_build(24);
    let ratio = t24.as_secs_f64() / t23.as_secs_f64().max(1e-9);
    println!("  build(23) best of 3: {t23:?}; build(24): {t24:?}; ratio {ratio:.2}");
    assert!(
        ratio <= 2.5,
        "doubling k_max=23 -> 24 cost {ratio:.2}x, expected <= 2.5x"
    );
    println!("ACCEPTANCE C8 linear-scaling (ratio {ratio:.2} <= 2.5): PASS");
}
