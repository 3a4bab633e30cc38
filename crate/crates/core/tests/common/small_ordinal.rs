//! Brute-force arithmetic on ordinals below ω³, written independently of the
//! CNF implementation: an ordinal is the triple `(c2, c1, c0)` meaning
//! `ω²·c2 + ω·c1 + c0`.

use std::cmp::Ordering;

use lset::transfinite::Ordinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Small {
    pub c2: u64,
    pub c1: u64,
    pub c0: u64,
}

pub const ZERO: Small = Small {
    c2: 0,
    c1: 0,
    c0: 0,
};

impl Small {
    pub fn new(c2: u64, c1: u64, c0: u64) -> Self {
        Small { c2, c1, c0 }
    }

    pub fn is_zero(self) -> bool {
        self == ZERO
    }

    /// Exponent of the highest nonzero coefficient (0 for zero).
    pub fn degree(self) -> u32 {
        if self.c2 > 0 {
            2
        } else if self.c1 > 0 {
            1
        } else {
            0
        }
    }

    pub fn cmp(self, other: Small) -> Ordering {
        if self.c2 != other.c2 {
            return self.c2.cmp(&other.c2);
        }
        if self.c1 != other.c1 {
            return self.c1.cmp(&other.c1);
        }
        self.c0.cmp(&other.c0)
    }

    /// `a + b`: everything in `a` below the leading power of `b` is swallowed.
    pub fn add(self, b: Small) -> Small {
        if b.c2 > 0 {
            Small::new(self.c2 + b.c2, b.c1, b.c0)
        } else if b.c1 > 0 {
            Small::new(self.c2, self.c1 + b.c1, b.c0)
        } else {
            Small::new(self.c2, self.c1, self.c0 + b.c0)
        }
    }

    /// `a · m` for finite `m` as `a + a + … + a`.
    fn times_finite(self, m: u64) -> Small {
        let mut acc = ZERO;
        for _ in 0..m {
            acc = acc.add(self);
        }
        acc
    }

    /// `a · ω^k` for `k >= 1` is `ω^(deg a + k)`; `None` past ω³.
    fn times_omega_pow(self, k: u32) -> Option<Small> {
        if self.is_zero() {
            return Some(ZERO);
        }
        match self.degree() + k {
            1 => Some(Small::new(0, 1, 0)),
            2 => Some(Small::new(1, 0, 0)),
            _ => None,
        }
    }

    /// `a · b` by left distribution over `ω²·b2 + ω·b1 + b0`, with each
    /// piece computed by repeated addition. `None` when the product is not
    /// below ω³.
    pub fn mul(self, b: Small) -> Option<Small> {
        let mut acc = ZERO;
        if b.c2 > 0 {
            acc = acc.add(self.times_omega_pow(2)?.times_finite(b.c2));
        }
        if b.c1 > 0 {
            acc = acc.add(self.times_omega_pow(1)?.times_finite(b.c1));
        }
        Some(acc.add(self.times_finite(b.c0)))
    }

    pub fn to_ordinal(self) -> Ordinal {
        let pairs: Vec<(u32, u64)> = [(2, self.c2), (1, self.c1), (0, self.c0)]
            .into_iter()
            .filter(|&(_, c)| c > 0)
            .collect();
        Ordinal::from_pairs(&pairs).unwrap()
    }
}

pub fn oracle_self_check() {
    let w = Small::new(0, 1, 0);
    let one = Small::new(0, 0, 1);
    assert_eq!(one.add(w), w);
    assert_eq!(w.add(one), Small::new(0, 1, 1));
    assert_eq!(Small::new(0, 1, 1).add(w), Small::new(0, 2, 0));
    assert_eq!(Small::new(0, 0, 2).mul(w), Some(w));
    assert_eq!(
        Small::new(0, 1, 1).mul(Small::new(0, 0, 2)),
        Some(Small::new(0, 2, 1))
    );
    assert_eq!(
        Small::new(0, 1, 1).mul(Small::new(0, 1, 1)),
        Some(Small::new(1, 1, 1))
    );
    assert_eq!(Small::new(1, 0, 0).mul(w), None);
}
