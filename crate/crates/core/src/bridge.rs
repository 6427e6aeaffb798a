//! Bridge-number machinery for regular tunnels: the Fibonacci function and
//! its iteration trace, bridge-number candidate sets, and the extremal
//! bounds, all in exact arbitrary-precision arithmetic.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cabling::BinaryWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("word is all zeros (simple or semisimple tunnel); its bridge numbers lie in the semisimple range, not under the Fibonacci function")]
    NotRegular,
    #[error("seed bridge numbers must be at least 1")]
    InvalidSeed,
    #[error("depth must be at least 1")]
    DepthRange,
    #[error("sequence index must be at least 1")]
    IndexRange,
    #[error("cabling counts must satisfy 1 <= m <= n (got n={n}, m={m})")]
    CablingRange { n: u64, m: u64 },
    #[error("cabling count must be at least 1")]
    CountRange,
}

/// Candidate bridge numbers of the last two semisimple tunnels in a cabling
/// sequence; both must be positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedPair {
    a: BigUint,
    b: BigUint,
}

impl SeedPair {
    pub fn new(a: BigUint, b: BigUint) -> Result<Self, BridgeError> {
        if a.is_zero() || b.is_zero() {
            return Err(BridgeError::InvalidSeed);
        }
        Ok(SeedPair { a, b })
    }

    pub fn from_u64(a: u64, b: u64) -> Result<Self, BridgeError> {
        SeedPair::new(BigUint::from(a), BigUint::from(b))
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }
}

impl fmt::Display for SeedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// The values emitted while evaluating the Fibonacci function: the two
/// seeds followed by one sum per cabling from the first regular one on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTrace {
    values: Vec<BigUint>,
}

impl IterationTrace {
    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The Fibonacci function value: the last entry.
    pub fn value(&self) -> &BigUint {
        self.values.last().expect("trace is never empty")
    }
}

impl fmt::Display for IterationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, value) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{value}")?;
        }
        Ok(())
    }
}

/// Runs the pair-update iteration. Leading zeros contribute nothing and are
/// skipped; the first 1 emits a + b. After that the pair state is
/// (u, last): a 1 retains the two most recent values (u becomes the
/// next-to-last entry), a 0 keeps the carried u; either way the new entry
/// is u plus the last entry. Returns None for an all-zero word.
fn run_trace(bits: &[bool], a: BigUint, b: BigUint) -> Option<Vec<BigUint>> {
    let first_one = bits.iter().position(|&bit| bit)?;
    let tail = &bits[first_one + 1..];
    let mut u = a.clone();
    let mut values = Vec::with_capacity(tail.len() + 3);
    values.push(a);
    values.push(b);
    values.push(&u + values.last().unwrap());
    for &bit in tail {
        if bit {
            u = values[values.len() - 2].clone();
        }
        values.push(&u + values.last().unwrap());
    }
    Some(values)
}

/// The full iteration sequence b_{m-2}, b_{m-1}, ..., b_{n-1} of the
/// Fibonacci function of a regular word, starting from the given seeds.
pub fn fibonacci_trace(word: &BinaryWord, seed: &SeedPair) -> Result<IterationTrace, BridgeError> {
    let values = run_trace(word.bits(), seed.a().clone(), seed.b().clone())
        .ok_or(BridgeError::NotRegular)?;
    Ok(IterationTrace { values })
}

/// F(a, b): the last entry of the iteration sequence.
pub fn fibonacci_value(word: &BinaryWord, seed: &SeedPair) -> Result<BigUint, BridgeError> {
    Ok(fibonacci_trace(word, seed)?.value().clone())
}

/// The linearity witness (alpha, beta) with F(a, b) = alpha*a + beta*b,
/// computed as F(1, 0) and F(0, 1). Seed positivity is waived internally.
pub fn fibonacci_coefficients(word: &BinaryWord) -> Result<(BigUint, BigUint), BridgeError> {
    let alpha = run_trace(word.bits(), One::one(), Zero::zero())
        .ok_or(BridgeError::NotRegular)?
        .pop()
        .unwrap();
    let beta = run_trace(word.bits(), Zero::zero(), One::one())
        .ok_or(BridgeError::NotRegular)?
        .pop()
        .unwrap();
    Ok((alpha, beta))
}

/// One candidate bridge number together with the seed pair producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeSetEntry {
    pub seed_a: u64,
    pub seed_b: u64,
    pub value: BigUint,
}

/// The 2m-2 candidate bridge numbers F(a, a) and F(a, a+1) for
/// 2 <= a <= m, in ascending order, each labeled with its seed pair.
pub fn bridge_set_entries(word: &BinaryWord) -> Result<Vec<BridgeSetEntry>, BridgeError> {
    if !word.is_regular() {
        return Err(BridgeError::NotRegular);
    }
    let m = word.semisimple_count() as u64;
    let mut entries = Vec::with_capacity(2 * (m as usize - 1));
    for a in 2..=m {
        for b in [a, a + 1] {
            let seed = SeedPair::from_u64(a, b)?;
            entries.push(BridgeSetEntry {
                seed_a: a,
                seed_b: b,
                value: fibonacci_value(word, &seed)?,
            });
        }
    }
    // seed order coincides with ascending numeric order because F is linear
    // with positive coefficients
    debug_assert!(entries.windows(2).all(|w| w[0].value < w[1].value));
    Ok(entries)
}

/// The candidate bridge numbers alone, as a strictly ascending list.
pub fn bridge_set(word: &BinaryWord) -> Result<Vec<BigUint>, BridgeError> {
    Ok(bridge_set_entries(word)?
        .into_iter()
        .map(|entry| entry.value)
        .collect())
}

/// The closed interval [2, n+1] of possible bridge numbers for a simple or
/// semisimple tunnel produced by n cablings. For n = 1 this collapses to
/// the single value 2.
pub fn semisimple_range(cabling_count: u64) -> Result<(BigUint, BigUint), BridgeError> {
    if cabling_count < 1 {
        return Err(BridgeError::CountRange);
    }
    Ok((BigUint::from(2u32), BigUint::from(cabling_count) + 1u32))
}

/// Minimum bridge number of a knot having a tunnel of the given depth:
/// a_1 = 2, a_2 = 4, a_d = 2*a_{d-1} + a_{d-2}.
pub fn min_bridge(depth: u64) -> Result<BigUint, BridgeError> {
    if depth < 1 {
        return Err(BridgeError::DepthRange);
    }
    Ok(pell_like(depth, BigUint::from(2u32), BigUint::from(4u32)))
}

/// Minimum bridge number of a torus knot whose middle tunnel has the given
/// depth: t_1 = 2, t_2 = 5, t_d = 2*t_{d-1} + t_{d-2}. Always equal to half
/// of `min_bridge(depth + 1)`.
pub fn torus_min_bridge(depth: u64) -> Result<BigUint, BridgeError> {
    if depth < 1 {
        return Err(BridgeError::DepthRange);
    }
    Ok(pell_like(depth, BigUint::from(2u32), BigUint::from(5u32)))
}

fn pell_like(index: u64, first: BigUint, second: BigUint) -> BigUint {
    if index == 1 {
        return first;
    }
    let (mut prev, mut cur) = (first, second);
    for _ in 2..index {
        let next = 2u32 * &cur + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The k-th Fibonacci number with F_1 = F_2 = 1.
pub fn fibonacci_number(index: u64) -> Result<BigUint, BridgeError> {
    if index < 1 {
        return Err(BridgeError::IndexRange);
    }
    let (mut prev, mut cur) = (BigUint::one(), BigUint::one());
    for _ in 2..index {
        let next = &cur + &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Maximum bridge number of a knot having a tunnel produced by n cablings
/// of which the first m are simple or semisimple: m*F_{n-m+2} + F_{n-m+1}.
pub fn max_bridge(cabling_count: u64, semisimple_count: u64) -> Result<BigUint, BridgeError> {
    let (n, m) = (cabling_count, semisimple_count);
    if m < 1 || m > n {
        return Err(BridgeError::CablingRange { n, m });
    }
    let value = m * fibonacci_number(n - m + 2)? + fibonacci_number(n - m + 1)?;
    Ok(value)
}

/// Maximum bridge number over all tunnels produced by n cablings: F_{n+2},
/// the maximum of `max_bridge(n, m)` over m, attained at m = 2 for n >= 2.
pub fn max_bridge_overall(cabling_count: u64) -> Result<BigUint, BridgeError> {
    if cabling_count < 1 {
        return Err(BridgeError::CountRange);
    }
    fibonacci_number(cabling_count + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(text: &str) -> BinaryWord {
        BinaryWord::parse(text).unwrap()
    }

    fn seed(a: u64, b: u64) -> SeedPair {
        SeedPair::from_u64(a, b).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn trace_values(text: &str, a: u64, b: u64) -> Vec<u64> {
        fibonacci_trace(&word(text), &seed(a, b))
            .unwrap()
            .values()
            .iter()
            .map(|v| u64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn trace_reproduces_the_reference_iteration() {
        assert_eq!(
            trace_values("0011100011100", 2, 2),
            vec![2, 2, 4, 6, 10, 14, 18, 22, 40, 62, 102, 142, 182]
        );
    }

    #[test]
    fn trace_for_shifted_seeds() {
        assert_eq!(
            trace_values("0011100011100", 2, 3),
            vec![2, 3, 5, 8, 13, 18, 23, 28, 51, 79, 130, 181, 232]
        );
        assert_eq!(trace_values("1", 2, 3), vec![2, 3, 5]);
        assert_eq!(trace_values("11101", 2, 2), vec![2, 2, 4, 6, 10, 14, 24]);
    }

    #[test]
    fn trace_length_counts_bits_from_the_first_one() {
        for text in ["1", "01", "0011100011100", "100", "00101"] {
            let w = word(text);
            let first_one = w.bits().iter().position(|&b| b).unwrap();
            let trace = fibonacci_trace(&w, &seed(2, 2)).unwrap();
            assert_eq!(trace.len(), 2 + w.len() - first_one);
        }
    }

    #[test]
    fn value_is_the_last_trace_entry() {
        assert_eq!(
            fibonacci_value(&word("0011100011100"), &seed(2, 2)).unwrap(),
            big(182)
        );
        assert_eq!(fibonacci_value(&word("1"), &seed(5, 7)).unwrap(), big(12));
        assert_eq!(
            fibonacci_value(&word("11101"), &seed(2, 2)).unwrap(),
            big(24)
        );
    }

    #[test]
    fn all_zero_words_are_rejected() {
        assert_eq!(
            fibonacci_trace(&word(""), &seed(2, 2)),
            Err(BridgeError::NotRegular)
        );
        assert_eq!(
            fibonacci_value(&word("0000"), &seed(2, 2)),
            Err(BridgeError::NotRegular)
        );
        assert_eq!(bridge_set(&word("000")), Err(BridgeError::NotRegular));
        assert_eq!(
            fibonacci_coefficients(&word("00")),
            Err(BridgeError::NotRegular)
        );
    }

    #[test]
    fn zero_seeds_are_rejected() {
        assert_eq!(SeedPair::from_u64(0, 2), Err(BridgeError::InvalidSeed));
        assert_eq!(SeedPair::from_u64(2, 0), Err(BridgeError::InvalidSeed));
    }

    #[test]
    fn coefficients_witness_linearity() {
        assert_eq!(
            fibonacci_coefficients(&word("1")).unwrap(),
            (big(1), big(1))
        );
        assert_eq!(
            fibonacci_coefficients(&word("11")).unwrap(),
            (big(1), big(2))
        );
        // linear solve from F(2,2) = 182 and F(2,3) = 232
        let (alpha, beta) = fibonacci_coefficients(&word("0011100011100")).unwrap();
        assert_eq!((alpha.clone(), beta.clone()), (big(41), big(50)));
        assert_eq!(&alpha * 2u32 + &beta * 2u32, big(182));
        assert_eq!(&alpha * 2u32 + &beta * 3u32, big(232));
    }

    #[test]
    fn bridge_set_matches_the_reference_sextuple() {
        let values = bridge_set(&word("0011100011100")).unwrap();
        assert_eq!(values, [182, 232, 273, 323, 364, 414].map(big));
    }

    #[test]
    fn bridge_set_for_small_words() {
        assert_eq!(bridge_set(&word("1")).unwrap(), [4, 5].map(big));
        assert_eq!(bridge_set(&word("01")).unwrap(), [4, 5, 6, 7].map(big));
    }

    #[test]
    fn bridge_set_entries_carry_their_seeds() {
        let entries = bridge_set_entries(&word("01")).unwrap();
        let seeds: Vec<(u64, u64)> = entries.iter().map(|e| (e.seed_a, e.seed_b)).collect();
        assert_eq!(seeds, [(2, 2), (2, 3), (3, 3), (3, 4)]);
    }

    #[test]
    fn semisimple_range_is_two_to_n_plus_one() {
        assert_eq!(semisimple_range(1).unwrap(), (big(2), big(2)));
        assert_eq!(semisimple_range(2).unwrap(), (big(2), big(3)));
        assert_eq!(semisimple_range(4).unwrap(), (big(2), big(5)));
        assert_eq!(semisimple_range(0), Err(BridgeError::CountRange));
    }

    #[test]
    fn min_bridge_follows_the_recursion() {
        let expected = [2u64, 4, 10, 24, 58, 140, 338, 816, 1970, 4756];
        for (i, &value) in expected.iter().enumerate() {
            assert_eq!(min_bridge(i as u64 + 1).unwrap(), big(value));
        }
        assert_eq!(min_bridge(0), Err(BridgeError::DepthRange));
    }

    #[test]
    fn torus_min_bridge_follows_the_recursion() {
        let expected = [2u64, 5, 12, 29, 70, 169, 408, 985];
        for (i, &value) in expected.iter().enumerate() {
            assert_eq!(torus_min_bridge(i as u64 + 1).unwrap(), big(value));
        }
        assert_eq!(torus_min_bridge(0), Err(BridgeError::DepthRange));
    }

    #[test]
    fn torus_minimum_is_half_the_next_overall_minimum() {
        for d in 1..=40u64 {
            assert_eq!(
                torus_min_bridge(d).unwrap() * 2u32,
                min_bridge(d + 1).unwrap()
            );
        }
    }

    #[test]
    fn fibonacci_numbers_start_one_one() {
        let expected = [1u64, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233];
        for (i, &value) in expected.iter().enumerate() {
            assert_eq!(fibonacci_number(i as u64 + 1).unwrap(), big(value));
        }
        assert_eq!(fibonacci_number(0), Err(BridgeError::IndexRange));
    }

    #[test]
    fn max_bridge_formula_values() {
        assert_eq!(max_bridge(1, 1).unwrap(), big(2));
        assert_eq!(max_bridge(15, 4).unwrap(), big(1076));
        for n in 1..=12 {
            assert_eq!(max_bridge(n, n).unwrap(), big(n + 1));
        }
        assert_eq!(
            max_bridge(3, 4),
            Err(BridgeError::CablingRange { n: 3, m: 4 })
        );
        assert_eq!(
            max_bridge(3, 0),
            Err(BridgeError::CablingRange { n: 3, m: 0 })
        );
    }

    #[test]
    fn max_bridge_overall_is_a_fibonacci_number() {
        assert_eq!(max_bridge_overall(1).unwrap(), big(2));
        assert_eq!(max_bridge_overall(3).unwrap(), big(5));
        assert_eq!(max_bridge_overall(10).unwrap(), big(144));
        assert_eq!(max_bridge_overall(0), Err(BridgeError::CountRange));
        // the overall bound is the m = 2 case and dominates every other m
        for n in 2..=12u64 {
            assert_eq!(max_bridge_overall(n).unwrap(), max_bridge(n, 2).unwrap());
            for m in 2..=n {
                assert!(max_bridge(n, m).unwrap() <= max_bridge_overall(n).unwrap());
            }
        }
    }

    #[test]
    fn trace_formats_comma_separated() {
        let trace = fibonacci_trace(&word("0011100011100"), &seed(2, 2)).unwrap();
        assert_eq!(
            trace.to_string(),
            "2, 2, 4, 6, 10, 14, 18, 22, 40, 62, 102, 142, 182"
        );
    }

    fn all_words(length: usize) -> impl Iterator<Item = BinaryWord> {
        (0u32..1 << length).map(move |index| {
            BinaryWord::new(
                (0..length)
                    .map(|i| index >> (length - 1 - i) & 1 == 1)
                    .collect(),
            )
        })
    }

    #[test]
    fn linearity_exhaustive_for_short_words() {
        for length in 1..=10 {
            for w in all_words(length).filter(BinaryWord::is_regular) {
                let (alpha, beta) = fibonacci_coefficients(&w).unwrap();
                assert!(alpha >= big(1) && beta >= big(1));
                for (a, b) in [(2u64, 2u64), (2, 3), (5, 11), (7, 7)] {
                    let expected = &alpha * a + &beta * b;
                    assert_eq!(fibonacci_value(&w, &seed(a, b)).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn bound_consistency_exhaustive_for_short_words() {
        for length in 1..=10 {
            for w in all_words(length).filter(BinaryWord::is_regular) {
                let profile = w.profile();
                let (n, m) = (
                    profile.cabling_count as u64,
                    profile.semisimple_count as u64,
                );
                let ceiling = max_bridge(n, m).unwrap();
                for a in 2..=m {
                    for b in [a, a + 1] {
                        assert!(fibonacci_value(&w, &seed(a, b)).unwrap() <= ceiling);
                    }
                }
                let floor = min_bridge(profile.depth as u64).unwrap();
                assert!(fibonacci_value(&w, &seed(2, 2)).unwrap() >= floor);
            }
        }
    }

    proptest! {
        #[test]
        fn linearity_holds_for_random_words_and_seeds(
            bits in proptest::collection::vec(any::<bool>(), 1..40),
            a in 1u64..1000,
            b in 1u64..1000,
        ) {
            let w = BinaryWord::new(bits);
            prop_assume!(w.is_regular());
            let (alpha, beta) = fibonacci_coefficients(&w).unwrap();
            let expected = alpha * a + beta * b;
            prop_assert_eq!(fibonacci_value(&w, &seed(a, b)).unwrap(), expected);
        }

        #[test]
        fn superadditivity_with_equality_only_for_a_single_trailing_one(
            bits in proptest::collection::vec(any::<bool>(), 1..40),
            a in 1u64..100,
            b in 1u64..100,
        ) {
            let w = BinaryWord::new(bits.clone());
            prop_assume!(w.is_regular());
            let value = fibonacci_value(&w, &seed(a, b)).unwrap();
            prop_assert!(value >= big(a + b));
            let single_trailing_one = bits.iter().filter(|&&bit| bit).count() == 1
                && *bits.last().unwrap();
            prop_assert_eq!(value == big(a + b), single_trailing_one);
        }

        #[test]
        fn trace_is_strictly_increasing_after_the_seeds(
            bits in proptest::collection::vec(any::<bool>(), 1..40),
            a in 1u64..100,
            b in 1u64..100,
        ) {
            let w = BinaryWord::new(bits);
            prop_assume!(w.is_regular());
            let trace = fibonacci_trace(&w, &seed(a, b)).unwrap();
            let values = trace.values();
            for i in 2..values.len() {
                prop_assert!(values[i] > values[i - 1]);
            }
        }

        #[test]
        fn bridge_set_is_strictly_ascending_with_2m_minus_2_entries(
            bits in proptest::collection::vec(any::<bool>(), 1..30),
        ) {
            let w = BinaryWord::new(bits);
            prop_assume!(w.is_regular());
            let values = bridge_set(&w).unwrap();
            prop_assert_eq!(values.len(), 2 * w.semisimple_count() - 2);
            for i in 1..values.len() {
                prop_assert!(values[i] > values[i - 1]);
            }
        }
    }
}
