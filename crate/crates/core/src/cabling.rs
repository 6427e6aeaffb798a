//! The two textual encodings of a principal path — the binary cabling word
//! and the D/L/R step sequence — with validation, interconversion, depth,
//! and the semisimple cabling count.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Depth of the trivial (primitive) tunnel. It is the only tunnel of depth
/// zero and has no cabling word, so it does not appear in the word-typed
/// API.
pub const PRIMITIVE_DEPTH: usize = 0;

/// Errors from parsing a binary word or step sequence. Positions are
/// 1-based character positions in the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(
        "invalid character {found:?} at position {position}: a binary word uses only '0' and '1'"
    )]
    WordAlphabet { found: char, position: usize },
    #[error("invalid character {found:?} at position {position}: a step sequence uses only 'D', 'L', and 'R'")]
    StepAlphabet { found: char, position: usize },
    #[error("step sequence needs at least two steps and always begins \"DR\"")]
    StepsTooShort,
    #[error("step sequence must begin \"DR\": found {found:?} at position {position}")]
    BadPrefix { found: char, position: usize },
    #[error("forbidden step pair \"{first}{second}\" ending at position {position}")]
    ForbiddenBigram {
        first: char,
        second: char,
        position: usize,
    },
    #[error("empty input: pass the empty word explicitly")]
    EmptyInput,
    #[error(
        "unrecognized alphabet: expected a binary word over 0/1 or a step sequence over D/L/R"
    )]
    UnknownAlphabet,
}

/// The sequence of binary cabling invariants of a tunnel, one bit per
/// cabling from the third cabling onward. The empty word describes any
/// tunnel produced by at most two cablings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    bits: Vec<bool>,
}

impl BinaryWord {
    pub fn new(bits: Vec<bool>) -> Self {
        BinaryWord { bits }
    }

    pub fn empty() -> Self {
        BinaryWord { bits: Vec::new() }
    }

    /// Parses a string of '0' and '1' characters. The empty string is the
    /// empty word.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut bits = Vec::with_capacity(text.len());
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                found => {
                    return Err(ParseError::WordAlphabet {
                        found,
                        position: i + 1,
                    })
                }
            }
        }
        Ok(BinaryWord { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of cablings producing the tunnel: two more than the number of
    /// recorded invariants. The empty word counts as two cablings.
    pub fn cabling_count(&self) -> usize {
        self.bits.len() + 2
    }

    /// Number of initial cablings producing depth-1 tunnels: two more than
    /// the count of leading zeros. Equals `cabling_count` exactly when the
    /// word is all zeros.
    pub fn semisimple_count(&self) -> usize {
        self.bits.iter().take_while(|&&bit| !bit).count() + 2
    }

    /// A regular tunnel has depth at least 2, i.e. some invariant is 1.
    pub fn is_regular(&self) -> bool {
        self.bits.iter().any(|&bit| bit)
    }

    /// Depth of the tunnel: writing the word as maximal blocks of ones and
    /// zeros, the depth is 1 plus the sum over the one-blocks of half the
    /// block length rounded up.
    pub fn depth(&self) -> usize {
        let mut depth = 1;
        let mut ones_run = 0usize;
        for &bit in &self.bits {
            if bit {
                ones_run += 1;
            } else if ones_run > 0 {
                depth += ones_run.div_ceil(2);
                ones_run = 0;
            }
        }
        if ones_run > 0 {
            depth += ones_run.div_ceil(2);
        }
        depth
    }

    pub fn profile(&self) -> CablingProfile {
        let depth = self.depth();
        CablingProfile {
            cabling_count: self.cabling_count(),
            semisimple_count: self.semisimple_count(),
            depth,
            regular: depth >= 2,
        }
    }

    /// The step sequence of the principal path. It begins "DR"; each bit
    /// appends one step: after an "L" or "R" the path keeps its direction
    /// on 0 and goes down on 1, while after a "D" the bit selects the
    /// horizontal direction, 0 crossing over and 1 turning back toward the
    /// side the "D" came from.
    pub fn to_steps(&self) -> StepSequence {
        let mut steps = vec![Step::Down, Step::Right];
        for &bit in &self.bits {
            let last = steps[steps.len() - 1];
            let next = match last {
                Step::Left if bit => Step::Down,
                Step::Left => Step::Left,
                Step::Right if bit => Step::Down,
                Step::Right => Step::Right,
                Step::Down => match (steps[steps.len() - 2], bit) {
                    (Step::Left, false) => Step::Right,
                    (Step::Left, true) => Step::Left,
                    (Step::Right, false) => Step::Left,
                    (Step::Right, true) => Step::Right,
                    (Step::Down, _) => unreachable!("step sequences never contain \"DD\""),
                },
            };
            steps.push(next);
        }
        StepSequence { steps }
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &bit in &self.bits {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BinaryWord::parse(s)
    }
}

/// One step of a principal path, as drawn from the reader's viewpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Down,
    Left,
    Right,
}

impl Step {
    pub fn symbol(self) -> char {
        match self {
            Step::Down => 'D',
            Step::Left => 'L',
            Step::Right => 'R',
        }
    }
}

/// The D/L/R description of a principal path. Always two steps longer than
/// the corresponding binary word: it begins "DR", and "DD", "LR", "RL"
/// never occur.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepSequence {
    steps: Vec<Step>,
}

impl StepSequence {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut steps = Vec::with_capacity(text.len());
        for (i, ch) in text.chars().enumerate() {
            let step = match ch {
                'D' => Step::Down,
                'L' => Step::Left,
                'R' => Step::Right,
                found => {
                    return Err(ParseError::StepAlphabet {
                        found,
                        position: i + 1,
                    })
                }
            };
            steps.push(step);
        }
        if steps.len() < 2 {
            return Err(ParseError::StepsTooShort);
        }
        if steps[0] != Step::Down {
            return Err(ParseError::BadPrefix {
                found: steps[0].symbol(),
                position: 1,
            });
        }
        if steps[1] != Step::Right {
            return Err(ParseError::BadPrefix {
                found: steps[1].symbol(),
                position: 2,
            });
        }
        for i in 1..steps.len() {
            let forbidden = matches!(
                (steps[i - 1], steps[i]),
                (Step::Down, Step::Down) | (Step::Left, Step::Right) | (Step::Right, Step::Left)
            );
            if forbidden {
                return Err(ParseError::ForbiddenBigram {
                    first: steps[i - 1].symbol(),
                    second: steps[i].symbol(),
                    position: i + 1,
                });
            }
        }
        Ok(StepSequence { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Always false: a valid sequence has at least the two steps "DR".
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Depth of the tunnel: the number of downward steps.
    pub fn depth(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Down).count()
    }

    /// The binary word encoded by this path; exact inverse of
    /// [`BinaryWord::to_steps`].
    pub fn to_binary(&self) -> BinaryWord {
        let mut bits = Vec::with_capacity(self.steps.len() - 2);
        for i in 2..self.steps.len() {
            let bit = match self.steps[i - 1] {
                Step::Left | Step::Right => self.steps[i] == Step::Down,
                Step::Down => match self.steps[i - 2] {
                    Step::Left => self.steps[i] == Step::Left,
                    Step::Right => self.steps[i] == Step::Right,
                    Step::Down => unreachable!("step sequences never contain \"DD\""),
                },
            };
            bits.push(bit);
        }
        BinaryWord { bits }
    }
}

impl fmt::Display for StepSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            write!(f, "{}", step.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for StepSequence {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StepSequence::parse(s)
    }
}

/// Summary invariants of a cabling sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CablingProfile {
    /// n: the number of cablings producing the tunnel.
    pub cabling_count: usize,
    /// m: the number of initial cablings producing depth-1 tunnels.
    pub semisimple_count: usize,
    pub depth: usize,
    pub regular: bool,
}

/// Which of the two path encodings a string uses. The alphabets are
/// disjoint, so the first character decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathEncoding {
    Binary,
    Steps,
}

pub fn detect_encoding(text: &str) -> Result<PathEncoding, ParseError> {
    match text.chars().next() {
        None => Err(ParseError::EmptyInput),
        Some('0' | '1') => Ok(PathEncoding::Binary),
        Some('D' | 'L' | 'R') => Ok(PathEncoding::Steps),
        Some(_) => Err(ParseError::UnknownAlphabet),
    }
}

/// Parses either encoding of a nonempty principal path, detected by
/// alphabet, and returns the binary word.
pub fn parse_path(text: &str) -> Result<BinaryWord, ParseError> {
    match detect_encoding(text)? {
        PathEncoding::Binary => BinaryWord::parse(text),
        PathEncoding::Steps => Ok(StepSequence::parse(text)?.to_binary()),
    }
}
