//! Exhaustive certification machinery: word enumeration, extremal searches
//! over bounded word lengths, and an exact quadratic-integer check of the
//! closed form for the minimum bridge numbers.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use thiserror::Error;

use crate::bridge::{fibonacci_value, min_bridge, semisimple_range, BridgeError, SeedPair};
use crate::cabling::BinaryWord;

/// Default ceiling on enumerated word lengths (about a million words).
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

// word indices cannot exceed the u64 range regardless of the configured cap
const HARD_LENGTH_LIMIT: usize = 62;

// fixed partition granularity, so search results cannot depend on the
// number of workers
const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("word length {length} exceeds the enumeration cap {cap}")]
    CapExceeded { length: usize, cap: usize },
    #[error("minimum searches need depth at least 2 (depth-1 tunnels have no regular word)")]
    DepthRange,
    #[error(
        "no regular word of depth {depth} fits in {max_length} bits; the shortest has 2*{depth}-3"
    )]
    DepthUnreachable { depth: u64, max_length: usize },
    #[error("search parameters must satisfy 2 <= m <= n (got n={n}, m={m})")]
    CablingRange { n: u64, m: u64 },
    #[error(transparent)]
    Bridge(#[from] BridgeError),
}

/// All 2^length words of the given length, in lexicographic order.
pub fn enumerate_words(
    length: usize,
    cap: usize,
) -> Result<impl Iterator<Item = BinaryWord>, SearchError> {
    let cap = cap.min(HARD_LENGTH_LIMIT);
    if length > cap {
        return Err(SearchError::CapExceeded { length, cap });
    }
    Ok((0..1u64 << length).map(move |index| word_from_index(index, length)))
}

fn word_from_index(index: u64, length: usize) -> BinaryWord {
    BinaryWord::new(
        (0..length)
            .map(|i| index >> (length - 1 - i) & 1 == 1)
            .collect(),
    )
}

/// What a search ranged over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchParams {
    /// Minimum of F(seed) over regular words of length <= max_length with
    /// the given depth.
    MinForDepth { depth: u64, max_length: usize },
    /// Maximum of F(seed) over words of length n-2 whose semisimple count
    /// is m.
    MaxForCablings {
        cabling_count: u64,
        semisimple_count: u64,
    },
}

impl fmt::Display for SearchParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchParams::MinForDepth { depth, max_length } => {
                write!(
                    f,
                    "regular words of length <= {max_length} with depth {depth}"
                )
            }
            SearchParams::MaxForCablings {
                cabling_count,
                semisimple_count,
            } => write!(
                f,
                "words of length {} with semisimple count {semisimple_count}",
                cabling_count - 2
            ),
        }
    }
}

/// Result of an exhaustive extremal search. Witnesses list every word that
/// attains the extremal value, in enumeration order; the extremum is
/// certified only over the enumerated search space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub params: SearchParams,
    pub seed: SeedPair,
    pub value: BigUint,
    pub witnesses: Vec<BinaryWord>,
    pub words_examined: u64,
}

type Extremum = Option<(BigUint, Vec<BinaryWord>)>;

fn fold_candidate(best: &mut Extremum, value: BigUint, word: BinaryWord, minimize: bool) {
    match best {
        None => *best = Some((value, vec![word])),
        Some((best_value, witnesses)) => {
            let better = if minimize {
                value < *best_value
            } else {
                value > *best_value
            };
            if better {
                *best_value = value;
                witnesses.clear();
                witnesses.push(word);
            } else if value == *best_value {
                witnesses.push(word);
            }
        }
    }
}

fn merge(mut left: Extremum, right: Extremum, minimize: bool) -> Extremum {
    match (&mut left, right) {
        (_, None) => left,
        (None, some) => some,
        (Some(_), Some((value, witnesses))) => {
            let mut words = witnesses.into_iter();
            if let Some(first) = words.next() {
                fold_candidate(&mut left, value.clone(), first, minimize);
            }
            // remaining witnesses share the same value
            if let Some((best_value, best_witnesses)) = &mut left {
                if *best_value == value {
                    best_witnesses.extend(words);
                }
            }
            left
        }
    }
}

/// Scans indices 0..total in fixed-size chunks evaluated in parallel, then
/// merges the per-chunk extrema in index order.
fn scan_indices<B, E>(total: u64, build: B, evaluate: E, minimize: bool) -> Extremum
where
    B: Fn(u64) -> BinaryWord + Sync,
    E: Fn(&BinaryWord) -> Option<BigUint> + Sync,
{
    let chunks: Vec<(u64, u64)> = (0..total)
        .step_by(CHUNK as usize)
        .map(|start| (start, (start + CHUNK).min(total)))
        .collect();
    chunks
        .into_par_iter()
        .map(|(start, end)| {
            let mut best: Extremum = None;
            for index in start..end {
                let word = build(index);
                if let Some(value) = evaluate(&word) {
                    fold_candidate(&mut best, value, word, minimize);
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(None, |acc, partial| merge(acc, partial, minimize))
}

/// Exhaustive minimum of the Fibonacci value over all regular words of the
/// given depth and length at most `max_length`. The default seed (2, 2) is
/// the smallest admissible pair, so the result certifies the minimum
/// bridge number over the enumerated horizon.
pub fn min_bridge_search(
    max_length: usize,
    depth: u64,
    seed: Option<SeedPair>,
    cap: usize,
) -> Result<SearchReport, SearchError> {
    if depth < 2 {
        return Err(SearchError::DepthRange);
    }
    let cap = cap.min(HARD_LENGTH_LIMIT);
    if max_length > cap {
        return Err(SearchError::CapExceeded {
            length: max_length,
            cap,
        });
    }
    let shortest = 2 * depth as usize - 3;
    if max_length < shortest {
        return Err(SearchError::DepthUnreachable { depth, max_length });
    }
    let seed = match seed {
        Some(seed) => seed,
        None => SeedPair::from_u64(2, 2)?,
    };

    let mut best: Extremum = None;
    let mut words_examined = 0u64;
    for length in 0..=max_length {
        words_examined += 1u64 << length;
        let found = scan_indices(
            1u64 << length,
            |index| word_from_index(index, length),
            |word| {
                (word.depth() as u64 == depth).then(|| {
                    fibonacci_value(word, &seed).expect("depth >= 2 implies a regular word")
                })
            },
            true,
        );
        best = merge(best, found, true);
    }

    let (value, witnesses) = best.ok_or(SearchError::DepthUnreachable { depth, max_length })?;
    Ok(SearchReport {
        params: SearchParams::MinForDepth { depth, max_length },
        seed,
        value,
        witnesses,
        words_examined,
    })
}

/// Exhaustive maximum of the Fibonacci value over all words of length n-2
/// with semisimple count m, i.e. m-2 leading zeros followed by a 1. The
/// default seed (m, m+1) is the largest admissible pair. For m = n the
/// only candidate is the all-zero word, which is not regular; its value is
/// the top of the semisimple range, m+1.
pub fn max_bridge_search(
    cabling_count: u64,
    semisimple_count: u64,
    seed: Option<SeedPair>,
    cap: usize,
) -> Result<SearchReport, SearchError> {
    let (n, m) = (cabling_count, semisimple_count);
    if m < 2 || m > n {
        return Err(SearchError::CablingRange { n, m });
    }
    let word_length = (n - 2) as usize;
    let cap = cap.min(HARD_LENGTH_LIMIT);
    if word_length > cap {
        return Err(SearchError::CapExceeded {
            length: word_length,
            cap,
        });
    }
    let params = SearchParams::MaxForCablings {
        cabling_count: n,
        semisimple_count: m,
    };
    let seed = match seed {
        Some(seed) => seed,
        None => SeedPair::from_u64(m, m + 1)?,
    };

    if m == n {
        let (_, top) = semisimple_range(n)?;
        return Ok(SearchReport {
            params,
            seed,
            value: top,
            witnesses: vec![BinaryWord::new(vec![false; word_length])],
            words_examined: 1,
        });
    }

    let prefix: Vec<bool> = (0..m - 2).map(|_| false).chain([true]).collect();
    let tail_length = (n - m - 1) as usize;
    let total = 1u64 << tail_length;
    let best = scan_indices(
        total,
        |index| {
            let mut bits = prefix.clone();
            bits.extend((0..tail_length).map(|i| index >> (tail_length - 1 - i) & 1 == 1));
            BinaryWord::new(bits)
        },
        |word| Some(fibonacci_value(word, &seed).expect("prefix contains a 1")),
        false,
    );

    let (value, witnesses) = best.expect("search space is nonempty");
    Ok(SearchReport {
        params,
        seed,
        value,
        witnesses,
        words_examined: total,
    })
}

/// An element x + y*sqrt(2) of the ring Z[sqrt(2)], with exact integer
/// arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticInteger {
    x: BigInt,
    y: BigInt,
}

impl QuadraticInteger {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        QuadraticInteger {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn one() -> Self {
        QuadraticInteger::new(1, 0)
    }

    /// 1 + sqrt(2), the fundamental unit of the ring.
    pub fn fundamental_unit() -> Self {
        QuadraticInteger::new(1, 1)
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn pow(&self, exponent: u64) -> Self {
        let mut result = QuadraticInteger::one();
        for _ in 0..exponent {
            result = &result * self;
        }
        result
    }
}

impl Mul for &QuadraticInteger {
    type Output = QuadraticInteger;

    // (x + y sqrt 2)(x' + y' sqrt 2) = (xx' + 2yy') + (xy' + yx') sqrt 2
    fn mul(self, rhs: &QuadraticInteger) -> QuadraticInteger {
        QuadraticInteger {
            x: &self.x * &rhs.x + 2 * &self.y * &rhs.y,
            y: &self.x * &rhs.y + &self.y * &rhs.x,
        }
    }
}

impl Add for &QuadraticInteger {
    type Output = QuadraticInteger;

    fn add(self, rhs: &QuadraticInteger) -> QuadraticInteger {
        QuadraticInteger {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl fmt::Display for QuadraticInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt(2)", self.x, self.y)
    }
}

/// Verifies the closed form of the minimum bridge numbers in exact
/// arithmetic: writing (1 + sqrt 2)^d = x_d + y_d*sqrt(2), the recursion
/// value `min_bridge(d)` must equal 2*y_d for every d up to `max_depth`.
pub fn closed_form_check(max_depth: u64) -> bool {
    let unit = QuadraticInteger::fundamental_unit();
    let mut power = QuadraticInteger::one();
    for depth in 1..=max_depth {
        power = &power * &unit;
        let expected = BigInt::from(min_bridge(depth).expect("depth >= 1"));
        if 2 * power.y() != expected {
            return false;
        }
    }
    true
}
