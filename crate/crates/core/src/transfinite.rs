//! Ordinals below ω^ω in Cantor normal form and finite-support binary
//! sequences of ordinal length.
//!
//! An [`Ordinal`] is `Σ ω^e · c` with strictly decreasing natural exponents
//! and positive coefficients. A [`TransfiniteBitString`] is a sequence of
//! ordinal length that holds 1 at finitely many positions and 0 elsewhere.
//!
//! # Compression
//!
//! Every infinite length below ω^ω is countable, so a sequence of infinite
//! length β can be re-indexed to length ω. [`compress_sequence`] uses a fixed
//! bijection between the positions below β and the naturals:
//!
//! * Write `β = Σ_i ω^(e_i) · c_i`. A position `p < β` splits uniquely as
//!   `p = (Σ_{j<i} ω^(e_j) · c_j) + ω^(e_i) · s + r` with `s < c_i` and
//!   `r < ω^(e_i)`, giving the address `(term i, slot s, offset r)`.
//! * Terms with `e_i >= 1` are infinite. Their `(i, s)` pairs are numbered
//!   `b = 0..B` in order of appearance ("blocks"). The offset
//!   `r = Σ_{j<e_i} ω^j · r_j` becomes a natural `k` by Cantor pairing folded
//!   from the highest coefficient: `k = π(r_{e-1}, π(r_{e-2}, … π(r_1, r_0)))`,
//!   and `k = r_0` when `e_i = 1`.
//! * The finite final term (`e = 0`, `F` positions) keeps its offsets:
//!   slot `s` maps to `s`. A block position maps to `F + B·k + b`.
//!
//! For length ω·2 this interleaves the two blocks: `(b, k) ↦ 2k + b`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

/// One Cantor-normal-form term `ω^exponent · coefficient`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    // Field order fixes the derived ordering: exponent dominates.
    pub exponent: u32,
    pub coefficient: u64,
}

/// An ordinal below ω^ω. The empty term list is 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

fn overflow() -> ! {
    panic!("ordinal coefficient overflow")
}

impl Ordinal {
    /// Validates canonical form: exponents strictly decreasing, coefficients
    /// at least 1.
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.coefficient == 0) {
            return Err(Error::NonCanonical(format!(
                "zero coefficient on exponent {}",
                t.exponent
            )));
        }
        if let Some(w) = terms.windows(2).find(|w| w[0].exponent <= w[1].exponent) {
            return Err(Error::NonCanonical(format!(
                "exponent {} follows exponent {}",
                w[1].exponent, w[0].exponent
            )));
        }
        Ok(Ordinal { terms })
    }

    /// Builds from `(exponent, coefficient)` pairs.
    pub fn from_pairs(pairs: &[(u32, u64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(exponent, coefficient)| Term {
                    exponent,
                    coefficient,
                })
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Ordinal::default()
    }

    pub fn one() -> Self {
        Self::finite(1)
    }

    pub fn finite(n: u64) -> Self {
        Self::omega_pow_times(0, n)
    }

    pub fn omega() -> Self {
        Self::omega_pow_times(1, 1)
    }

    /// `ω^e · c`.
    pub fn omega_pow_times(exponent: u32, coefficient: u64) -> Self {
        if coefficient == 0 {
            return Self::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent == 0)
    }

    pub fn finite_value(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent == 0 => Some(t.coefficient),
            _ => None,
        }
    }

    /// Exponent of the leading term; `None` for 0.
    pub fn leading_exponent(&self) -> Option<u32> {
        self.terms.first().map(|t| t.exponent)
    }

    /// Coefficient of `ω^e`, 0 if absent.
    pub fn coefficient(&self, exponent: u32) -> u64 {
        self.terms
            .iter()
            .find(|t| t.exponent == exponent)
            .map_or(0, |t| t.coefficient)
    }

    /// True for successor ordinals (a nonzero finite last term).
    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exponent == 0)
    }

    /// `β` for `β + 1`; `None` for 0 and limits.
    pub fn predecessor(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a term");
        last.coefficient -= 1;
        if last.coefficient == 0 {
            terms.pop();
        }
        Some(Ordinal { terms })
    }

    pub fn successor(&self) -> Ordinal {
        ord_add(self, &Ordinal::one())
    }

    /// Terms with exponent strictly below `e`, i.e. the remainder modulo
    /// `ω^e`.
    fn below(&self, e: u32) -> Ordinal {
        Ordinal {
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|t| t.exponent < e)
                .collect(),
        }
    }
}

/// Comparison of canonical forms: the first differing term decides, higher
/// exponent first, then higher coefficient; a proper prefix is smaller.
pub fn ord_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.terms.cmp(&b.terms)
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        ord_cmp(self, other)
    }
}

/// Ordinal sum. Terms of `a` below the leading exponent of `b` are absorbed.
pub fn ord_add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let Some(lead) = b.terms.first() else {
        return a.clone();
    };
    let mut terms: Vec<Term> = a
        .terms
        .iter()
        .copied()
        .take_while(|t| t.exponent >= lead.exponent)
        .collect();
    match terms.last_mut() {
        Some(t) if t.exponent == lead.exponent => {
            t.coefficient = t
                .coefficient
                .checked_add(lead.coefficient)
                .unwrap_or_else(|| overflow());
            terms.extend_from_slice(&b.terms[1..]);
        }
        _ => terms.extend_from_slice(&b.terms),
    }
    Ordinal { terms }
}

/// Ordinal product, distributing `a` over the terms of `b` from the left.
/// A term `ω^f · d` of `b` with `f >= 1` contributes `ω^(lead(a) + f) · d`;
/// a finite term `d` multiplies the leading coefficient of `a`.
pub fn ord_mul(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let Some(lead) = a.terms.first() else {
        return Ordinal::zero();
    };
    let mut product = Ordinal::zero();
    for t in &b.terms {
        let part = if t.exponent > 0 {
            Ordinal::omega_pow_times(
                lead.exponent
                    .checked_add(t.exponent)
                    .unwrap_or_else(|| overflow()),
                t.coefficient,
            )
        } else {
            let mut terms = a.terms.clone();
            terms[0].coefficient = lead
                .coefficient
                .checked_mul(t.coefficient)
                .unwrap_or_else(|| overflow());
            Ordinal { terms }
        };
        product = ord_add(&product, &part);
    }
    product
}

impl Add for &Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        ord_add(self, rhs)
    }
}

impl Mul for &Ordinal {
    type Output = Ordinal;
    fn mul(self, rhs: &Ordinal) -> Ordinal {
        ord_mul(self, rhs)
    }
}

/// Every finite ordinal is a cardinal; every infinite ordinal below ω^ω is
/// countable, so its cardinal is ω.
pub fn cardinal_of(b: &Ordinal) -> Ordinal {
    if b.is_finite() {
        b.clone()
    } else {
        Ordinal::omega()
    }
}

/// Text form: `w^2*3+w+4`, `w`, `5`, and `0` for zero.
impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match (t.exponent, t.coefficient) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

/// Parser for ordinal expressions:
///
/// ```text
/// expr    := product ('+' product)*
/// product := atom ('*' atom)*
/// atom    := natural | 'w' ('^' natural)? | '(' expr ')'
/// ```
///
/// Sums and products are evaluated with ordinal arithmetic, so `1+w` is `w`.
/// Whitespace is ignored.
struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: impl Into<String>) -> Error {
        Error::OrdinalParse {
            input: self.input.to_string(),
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ordinal> {
        let mut acc = self.product()?;
        while self.eat('+') {
            acc = ord_add(&acc, &self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Ordinal> {
        let mut acc = self.atom()?;
        while self.eat('*') {
            acc = ord_mul(&acc, &self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some('w' | 'ω') => {
                self.pos += 1;
                if self.eat('^') {
                    let e = self.natural()?;
                    let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
                    Ok(Ordinal::omega_pow_times(e, 1))
                } else {
                    Ok(Ordinal::omega())
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error(format!("expected ')' at offset {}", self.pos)));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::finite(self.natural()?)),
            Some(c) => Err(self.error(format!("unexpected {c:?} at offset {}", self.pos))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected a number at offset {start}")));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| self.error(format!("number {digits} out of range")))
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let mut p = Parser {
            input,
            chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let value = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.error(format!("trailing input at offset {}", p.pos)));
        }
        Ok(value)
    }
}

/// A binary sequence of ordinal length with finitely many 1 positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransfiniteBitString {
    length: Ordinal,
    support: BTreeSet<Ordinal>,
}

impl TransfiniteBitString {
    pub fn new<I: IntoIterator<Item = Ordinal>>(length: Ordinal, support: I) -> Result<Self> {
        let support: BTreeSet<Ordinal> = support.into_iter().collect();
        if let Some(p) = support.iter().find(|p| **p >= length) {
            return Err(Error::PositionOutOfRange {
                position: p.to_string(),
                length: length.to_string(),
            });
        }
        Ok(TransfiniteBitString { length, support })
    }

    /// All zeros.
    pub fn zeros(length: Ordinal) -> Self {
        TransfiniteBitString {
            length,
            support: BTreeSet::new(),
        }
    }

    pub fn length(&self) -> &Ordinal {
        &self.length
    }

    /// Positions holding 1, in increasing order.
    pub fn support(&self) -> &BTreeSet<Ordinal> {
        &self.support
    }

    pub fn get(&self, position: &Ordinal) -> bool {
        self.support.contains(position)
    }

    fn check_length(&self, other: &Self) -> Result<()> {
        if self.length != other.length {
            return Err(Error::LengthMismatch(
                self.length.to_string(),
                other.length.to_string(),
            ));
        }
        Ok(())
    }
}

/// Least position where the sequences differ: the minimum of the symmetric
/// difference of their supports.
pub fn t_first_diff(a: &TransfiniteBitString, b: &TransfiniteBitString) -> Result<Option<Ordinal>> {
    a.check_length(b)?;
    Ok(a.support.symmetric_difference(&b.support).min().cloned())
}

/// The one-hot sequence at the first difference, or all zeros when equal.
pub fn t_ultra_distance(
    a: &TransfiniteBitString,
    b: &TransfiniteBitString,
) -> Result<TransfiniteBitString> {
    let support = t_first_diff(a, b)?;
    Ok(TransfiniteBitString {
        length: a.length.clone(),
        support: support.into_iter().collect(),
    })
}

/// Lexicographic order: at the first difference the sequence holding 1 is
/// larger.
pub fn t_lex_cmp(a: &TransfiniteBitString, b: &TransfiniteBitString) -> Result<Ordering> {
    Ok(match t_first_diff(a, b)? {
        None => Ordering::Equal,
        Some(p) if a.get(&p) => Ordering::Greater,
        Some(_) => Ordering::Less,
    })
}

/// Extends the sequence by one position carrying `label`.
pub fn append_label(s: &TransfiniteBitString, label: bool) -> TransfiniteBitString {
    let mut support = s.support.clone();
    if label {
        support.insert(s.length.clone());
    }
    TransfiniteBitString {
        length: s.length.successor(),
        support,
    }
}

/// Inverse of [`append_label`]: splits off the final position.
pub fn strip_label(s: &TransfiniteBitString) -> Result<(TransfiniteBitString, bool)> {
    let base = s
        .length
        .predecessor()
        .ok_or_else(|| Error::NoLabel(s.length.to_string()))?;
    let mut support = s.support.clone();
    let label = support.remove(&base);
    Ok((
        TransfiniteBitString {
            length: base,
            support,
        },
        label,
    ))
}

fn cantor_pair(a: u64, b: u64) -> Result<u64> {
    let (a, b) = (u128::from(a), u128::from(b));
    let s = a + b;
    s.checked_mul(s + 1)
        .and_then(|t| u64::try_from(t / 2 + b).ok())
        .ok_or(Error::CompressionOverflow)
}

fn cantor_unpair(z: u64) -> (u64, u64) {
    let z = u128::from(z);
    let w = ((8 * z + 1).isqrt() - 1) / 2;
    let t = w * (w + 1) / 2;
    let b = z - t;
    ((w - b) as u64, b as u64)
}

/// Layout of a length for the compression bijection.
struct Layout<'a> {
    length: &'a Ordinal,
    // Size of the finite final term.
    finite_tail: u64,
    // Number of infinite blocks.
    blocks: u64,
}

impl<'a> Layout<'a> {
    fn new(length: &'a Ordinal) -> Result<Self> {
        let finite_tail = length.coefficient(0);
        let blocks = length
            .terms
            .iter()
            .filter(|t| t.exponent > 0)
            .try_fold(0u64, |acc, t| acc.checked_add(t.coefficient))
            .ok_or(Error::CompressionOverflow)?;
        Ok(Layout {
            length,
            finite_tail,
            blocks,
        })
    }

    /// The prefix sum of the terms before index `i`.
    fn prefix(&self, i: usize) -> Ordinal {
        Ordinal {
            terms: self.length.terms[..i].to_vec(),
        }
    }

    fn encode(&self, p: &Ordinal) -> Result<u64> {
        let terms = &self.length.terms;
        let i = terms
            .iter()
            .zip(p.terms.iter().chain(std::iter::repeat(&Term {
                exponent: 0,
                coefficient: 0,
            })))
            .position(|(l, q)| l != q)
            .expect("position is below the length");
        let e = terms[i].exponent;
        let rest = Ordinal {
            terms: p.terms[i.min(p.terms.len())..].to_vec(),
        };
        let slot = rest.coefficient(e);
        if e == 0 {
            return Ok(slot);
        }
        let block = terms[..i]
            .iter()
            .filter(|t| t.exponent > 0)
            .map(|t| t.coefficient)
            .sum::<u64>()
            + slot;
        let offset = rest.below(e);
        let mut k = offset.coefficient(0);
        for j in 1..e {
            k = cantor_pair(offset.coefficient(j), k)?;
        }
        k.checked_mul(self.blocks)
            .and_then(|v| v.checked_add(block))
            .and_then(|v| v.checked_add(self.finite_tail))
            .ok_or(Error::CompressionOverflow)
    }

    fn decode(&self, m: u64) -> Ordinal {
        let terms = &self.length.terms;
        if m < self.finite_tail {
            let last = terms.len() - 1;
            return ord_add(&self.prefix(last), &Ordinal::finite(m));
        }
        let m = m - self.finite_tail;
        let (mut block, mut k) = (m % self.blocks, m / self.blocks);
        let (i, t) = terms
            .iter()
            .enumerate()
            .filter(|(_, t)| t.exponent > 0)
            .find(|(_, t)| {
                if block < t.coefficient {
                    true
                } else {
                    block -= t.coefficient;
                    false
                }
            })
            .expect("block index below block count");
        let mut position = ord_add(
            &self.prefix(i),
            &Ordinal::omega_pow_times(t.exponent, block),
        );
        let mut coefficients = vec![0u64; t.exponent as usize];
        for j in (1..t.exponent as usize).rev() {
            let (hi, lo) = cantor_unpair(k);
            coefficients[j] = hi;
            k = lo;
        }
        coefficients[0] = k;
        for (j, &c) in coefficients.iter().enumerate().rev() {
            position = ord_add(&position, &Ordinal::omega_pow_times(j as u32, c));
        }
        position
    }
}

/// Re-indexes a sequence to the cardinal of its length. Finite lengths are
/// returned unchanged; infinite lengths map to ω through the bijection
/// described in the module docs.
pub fn compress_sequence(s: &TransfiniteBitString) -> Result<TransfiniteBitString> {
    if s.length.is_finite() {
        return Ok(s.clone());
    }
    let layout = Layout::new(&s.length)?;
    let support = s
        .support
        .iter()
        .map(|p| layout.encode(p).map(Ordinal::finite))
        .collect::<Result<_>>()?;
    Ok(TransfiniteBitString {
        length: cardinal_of(&s.length),
        support,
    })
}

/// Inverse of [`compress_sequence`] for a sequence originally of length
/// `original_length`.
pub fn decompress_sequence(
    s: &TransfiniteBitString,
    original_length: &Ordinal,
) -> Result<TransfiniteBitString> {
    let expected = cardinal_of(original_length);
    if s.length != expected {
        return Err(Error::LengthMismatch(
            s.length.to_string(),
            expected.to_string(),
        ));
    }
    if original_length.is_finite() {
        return Ok(s.clone());
    }
    let layout = Layout::new(original_length)?;
    let support = s
        .support
        .iter()
        .map(|p| {
            let m = p.finite_value().expect("positions below ω are finite");
            layout.decode(m)
        })
        .collect();
    Ok(TransfiniteBitString {
        length: original_length.clone(),
        support,
    })
}

/// Position index under the compression bijection for one position.
pub fn compressed_position(length: &Ordinal, position: &Ordinal) -> Result<u64> {
    if position >= length {
        return Err(Error::PositionOutOfRange {
            position: position.to_string(),
            length: length.to_string(),
        });
    }
    if length.is_finite() {
        return Ok(position.finite_value().expect("below a finite length"));
    }
    Layout::new(length)?.encode(position)
}
