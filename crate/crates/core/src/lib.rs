//! Set membership over fixed-width bitstrings through labelled sets.
//!
//! Every point of `{0,1}^n` carries a membership label. Membership of `x` is
//! decided by bisecting the dyadic intervals of the universe along the bits
//! of `x` and then reading one label, which costs exactly `n + 1` bits.
//!
//! The crate also provides the bitstring-valued ultrametric on `{0,1}^n`, an
//! alternating member/non-member enumeration, a finite diagonal argument over
//! predicate codings, and Cantor-normal-form ordinals below ω^ω with
//! finite-support sequences of ordinal length.

pub mod bench;
pub mod bitcore;
pub mod cli;
pub mod diagonal;
mod error;
pub mod interval;
pub mod labelset;
pub mod search;
pub mod transfinite;

pub use bitcore::{first_diff, lex_cmp, parse_bits, ultra_distance, BitString};
pub use error::{Error, Result};
pub use interval::DyadicInterval;
pub use labelset::{LabelledPoint, LabelledSet};
pub use search::{
    alternating_enumeration, bisection_decide, decide_via_enumeration, naive_scan_decide,
    quantifier_eval, SearchTrace, Verdict,
};
pub use transfinite::{Ordinal, TransfiniteBitString};
