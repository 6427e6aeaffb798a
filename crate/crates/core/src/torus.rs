//! Middle-tunnel invariants of torus knots: positive continued fractions,
//! the U/L letter sequence, running 2x2 matrix products, cabling slopes,
//! intermediate torus knots, and the binary word of the cabling sequence.

use std::cmp;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::bridge::SeedPair;
use crate::cabling::BinaryWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("{p} and {q} are not coprime")]
    NotCoprime { p: u64, q: u64 },
    #[error("({p},{q}) does not describe a nontrivial torus knot: both parameters must have absolute value at least 2")]
    TrivialKnot { p: i64, q: i64 },
    #[error("parameters must satisfy p > q >= 2 (got p={p}, q={q}); normalize first")]
    OutOfRange { p: u64, q: u64 },
    #[error("continued fraction must be nonempty")]
    EmptyExpansion,
    #[error("continued fraction terms must be positive")]
    ZeroTerm,
    #[error(
        "continued fraction has a single term, so p/q is an integer and there is no middle tunnel"
    )]
    SingleTerm,
}

/// A positive continued fraction [n_1, ..., n_k]. Construction rewrites a
/// trailing 1 into the preceding term, so the last term is at least 2
/// whenever there is more than one term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    terms: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<u64>) -> Result<Self, TorusError> {
        if terms.is_empty() {
            return Err(TorusError::EmptyExpansion);
        }
        if terms.contains(&0) {
            return Err(TorusError::ZeroTerm);
        }
        let mut terms = terms;
        if terms.len() >= 2 && *terms.last().unwrap() == 1 {
            terms.pop();
            *terms.last_mut().unwrap() += 1;
        }
        Ok(ContinuedFraction { terms })
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{term}")?;
        }
        f.write_str("]")
    }
}

/// Euclidean expansion of p/q for coprime p > q >= 2. The result always has
/// at least two terms and ends with a term >= 2, and `cf_eval` inverts it
/// exactly.
pub fn cf_expand(p: u64, q: u64) -> Result<ContinuedFraction, TorusError> {
    if q < 2 || p <= q {
        return Err(TorusError::OutOfRange { p, q });
    }
    if p.gcd(&q) != 1 {
        return Err(TorusError::NotCoprime { p, q });
    }
    let mut terms = Vec::new();
    let (mut a, mut b) = (p, q);
    while b > 0 {
        terms.push(a / b);
        (a, b) = (b, a % b);
    }
    ContinuedFraction::new(terms)
}

/// Exact rational value of a continued fraction, in lowest terms.
pub fn cf_eval(cf: &ContinuedFraction) -> (BigUint, BigUint) {
    let mut p = BigUint::from(*cf.terms().last().unwrap());
    let mut q = BigUint::one();
    for &term in cf.terms().iter().rev().skip(1) {
        let next = term * &p + &q;
        q = p;
        p = next;
    }
    (p, q)
}

/// Torus-knot parameters reduced to the canonical range p > q >= 2, with a
/// flag recording whether the input was a mirror image. Mirroring negates
/// the slope invariants and leaves the binary word unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusParams {
    pub p: u64,
    pub q: u64,
    pub mirrored: bool,
}

pub fn normalize_torus_params(p: i64, q: i64) -> Result<TorusParams, TorusError> {
    let ap = p.unsigned_abs();
    let aq = q.unsigned_abs();
    if ap < 2 || aq < 2 {
        return Err(TorusError::TrivialKnot { p, q });
    }
    if ap.gcd(&aq) != 1 {
        return Err(TorusError::NotCoprime { p: ap, q: aq });
    }
    let mirrored = (p < 0) != (q < 0);
    let (p, q) = if ap > aq { (ap, aq) } else { (aq, ap) };
    Ok(TorusParams { p, q, mirrored })
}

/// The two generator letters: U is the upper-triangular matrix
/// [[1,1],[0,1]], L the lower-triangular [[1,0],[1,1]].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    U,
    L,
}

impl Letter {
    pub fn symbol(self) -> char {
        match self {
            Letter::U => 'U',
            Letter::L => 'L',
        }
    }
}

/// The generator letters A_i of a continued fraction, indexed from -n_1:
/// n_1 letters L at negative indices, then blocks of sizes n_2, n_3, ...
/// alternating U, L, U, ... starting with U at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterSequence {
    start: i64,
    letters: Vec<Letter>,
}

impl LetterSequence {
    /// The lowest index, always -n_1.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// The highest index, n_2 + ... + n_k - 1.
    pub fn end(&self) -> i64 {
        self.start + self.letters.len() as i64 - 1
    }

    pub fn get(&self, index: i64) -> Option<Letter> {
        usize::try_from(index - self.start)
            .ok()
            .and_then(|offset| self.letters.get(offset).copied())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
}

impl fmt::Display for LetterSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.letters {
            write!(f, "{}", letter.symbol())?;
        }
        Ok(())
    }
}

pub fn letter_sequence(cf: &ContinuedFraction) -> Result<LetterSequence, TorusError> {
    let terms = cf.terms();
    if terms.len() < 2 {
        return Err(TorusError::SingleTerm);
    }
    let n1 = terms[0];
    let mut letters = Vec::new();
    letters.extend(std::iter::repeat_n(Letter::L, n1 as usize));
    for (j, &block) in terms.iter().enumerate().skip(1) {
        let letter = if j % 2 == 1 { Letter::U } else { Letter::L };
        letters.extend(std::iter::repeat_n(letter, block as usize));
    }
    Ok(LetterSequence {
        start: -(n1 as i64),
        letters,
    })
}

/// A product of the generators U and L; the determinant a*d - b*c is
/// always exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularMatrix {
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    pub d: BigUint,
}

impl UnimodularMatrix {
    pub fn identity() -> Self {
        UnimodularMatrix {
            a: BigUint::one(),
            b: BigUint::ZERO,
            c: BigUint::ZERO,
            d: BigUint::one(),
        }
    }

    pub fn generator(letter: Letter) -> Self {
        let mut m = UnimodularMatrix::identity();
        match letter {
            Letter::U => m.b = BigUint::one(),
            Letter::L => m.c = BigUint::one(),
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        UnimodularMatrix {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn det_is_one(&self) -> bool {
        &self.a * &self.d == &self.b * &self.c + BigUint::one()
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// The slope invariant of one cabling. The first cabling's slope is the
/// bracket class of the rational 1/(2*n_1+1); every later slope is the odd
/// integer a*d + b*c of the running product. Kept as distinct variants so
/// the two cannot be confused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlopeValue {
    Bracket { denominator: u64 },
    Integer(BigUint),
}

impl SlopeValue {
    /// Decimal rendering; a mirrored knot negates its slopes.
    pub fn render(&self, mirrored: bool) -> String {
        let sign = if mirrored { "-" } else { "" };
        match self {
            SlopeValue::Bracket { denominator } => format!("{sign}1/{denominator}"),
            SlopeValue::Integer(value) => format!("{sign}{value}"),
        }
    }
}

impl fmt::Display for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// One cabling of the middle tunnel: the running matrix product, the slope
/// invariant, and the intermediate torus knot it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CablingRow {
    pub matrix: UnimodularMatrix,
    pub slope: SlopeValue,
    pub knot: (BigUint, BigUint),
}

/// The complete invariant table of the middle tunnel of the (p,q) torus
/// knot, for canonical p > q >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusTunnelTable {
    pub p: u64,
    pub q: u64,
    pub cf: ContinuedFraction,
    pub letters: LetterSequence,
    /// Rows t = 0..=N where N+1 is the number of cablings.
    pub rows: Vec<CablingRow>,
    pub word: BinaryWord,
    pub depth: usize,
}

impl TorusTunnelTable {
    pub fn cabling_count(&self) -> usize {
        self.rows.len()
    }

    /// Seeds for the Fibonacci cross-check: the bridge numbers (the smaller
    /// parameter) of the intermediate knots at cabling positions m-2 and
    /// m-1, where m is the semisimple count of the word. None when the
    /// word is all zeros.
    pub fn cross_check_seeds(&self) -> Option<SeedPair> {
        if !self.word.is_regular() {
            return None;
        }
        let m = self.word.semisimple_count();
        let smaller = |row: &CablingRow| cmp::min(&row.knot.0, &row.knot.1).clone();
        let a = smaller(&self.rows[m - 2]);
        let b = smaller(&self.rows[m - 1]);
        Some(SeedPair::new(a, b).expect("intermediate bridge numbers are positive"))
    }
}

/// Builds the invariant table for canonical parameters p > q >= 2.
///
/// Row t holds the product A_t * A_{t-1} * ... * A_{-n_1} of generator
/// letters in descending index order; its knot is (a+c, b+d) and its slope
/// is a*d + b*c (the bracket 1/(2*n_1+1) for t = 0). Bit s_t of the word,
/// for 2 <= t <= N, records whether A_t differs from A_{t-1}.
pub fn invariant_table(p: u64, q: u64) -> Result<TorusTunnelTable, TorusError> {
    let cf = cf_expand(p, q)?;
    let letters = letter_sequence(&cf)?;
    let n1 = cf.terms()[0];
    let tail_sum: u64 = cf.terms()[1..].iter().sum();
    let last = (tail_sum - 2) as usize;

    // product of the letters at negative indices: L^{n_1}
    let mut product = UnimodularMatrix::identity();
    product.c = BigUint::from(n1);

    let mut rows = Vec::with_capacity(last + 1);
    let mut bits = Vec::with_capacity(last.saturating_sub(1));
    for t in 0..=last {
        let letter = letters.get(t as i64).expect("indices 0..=N are in range");
        product = UnimodularMatrix::generator(letter).mul(&product);
        let slope = if t == 0 {
            SlopeValue::Bracket {
                denominator: 2 * n1 + 1,
            }
        } else {
            SlopeValue::Integer(&product.a * &product.d + &product.b * &product.c)
        };
        let knot = (&product.a + &product.c, &product.b + &product.d);
        if t >= 2 {
            bits.push(letter != letters.get(t as i64 - 1).unwrap());
        }
        rows.push(CablingRow {
            matrix: product.clone(),
            slope,
            knot,
        });
    }

    let word = BinaryWord::new(bits);
    let depth = word.depth();
    Ok(TorusTunnelTable {
        p,
        q,
        cf,
        letters,
        rows,
        word,
        depth,
    })
}

/// Depth of the middle tunnel of the (p,q) torus knot, computed through
/// the binary word of its cabling sequence. This is the authoritative path.
pub fn torus_depth(p: u64, q: u64) -> Result<usize, TorusError> {
    Ok(invariant_table(p, q)?.depth)
}

/// Which string of continued-fraction terms the block-decomposition
/// shortcut reads: `Literal` uses n_2..n_k, `Offset` uses n_3..n_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShortcutConvention {
    Literal,
    Offset,
}

impl fmt::Display for ShortcutConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShortcutConvention::Literal => "literal",
            ShortcutConvention::Offset => "offset",
        })
    }
}

/// Diagnostic depth estimate 1 + l, where l counts the blocks B_1...B_l of
/// the designated term string: a term equal to 1 is grouped with its
/// successor, any other term stands alone. The two conventions disagree
/// with each other and with the authoritative word-based depth on some
/// inputs, so this value is reported only as a diagnostic.
pub fn torus_depth_shortcut(
    cf: &ContinuedFraction,
    convention: ShortcutConvention,
) -> Result<usize, TorusError> {
    if cf.len() < 2 {
        return Err(TorusError::SingleTerm);
    }
    let suffix = match convention {
        ShortcutConvention::Literal => &cf.terms()[1..],
        ShortcutConvention::Offset => cf.terms().get(2..).unwrap_or(&[]),
    };
    let mut blocks = 0;
    let mut i = 0;
    while i < suffix.len() {
        i += if suffix[i] == 1 && i + 1 < suffix.len() {
            2
        } else {
            1
        };
        blocks += 1;
    }
    Ok(1 + blocks)
}
