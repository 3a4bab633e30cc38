//! Membership decisions over a [`LabelledSet`].
//!
//! [`bisection_decide`] descends the dyadic intervals of the universe one
//! query bit per level and finishes with a single label read, so every query
//! costs exactly `width + 1` bits regardless of the set or the query. The
//! other deciders exist as baselines and cross-checks.

use serde::Serialize;

use crate::bitcore::BitString;
use crate::error::{Error, Result};
use crate::interval::DyadicInterval;
use crate::labelset::LabelledSet;

/// Counts every bit the decider looks at.
#[derive(Debug, Default)]
struct BitMeter {
    reads: u64,
}

impl BitMeter {
    fn query_bit(&mut self, x: &BitString, pos: usize) -> bool {
        self.reads += 1;
        x.get(pos)
    }

    fn label(&mut self, set: &LabelledSet, point: &BitString) -> Result<bool> {
        self.reads += 1;
        set.label_of(point)
    }
}

fn label_bit<S: serde::Serializer>(b: &bool, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u8(u8::from(*b))
}

fn prefixes<S: serde::Serializer>(
    path: &[DyadicInterval],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(path.iter().map(|i| i.prefix()))
}

/// Outcome of a bisection decision together with its information cost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchTrace {
    pub query: BitString,
    #[serde(serialize_with = "label_bit")]
    pub result: bool,
    /// Query bits plus label bits examined.
    pub bits_read: u64,
    /// Loop iterations, counting the final label read.
    pub steps: u64,
    /// Intervals visited, from the full universe down to the singleton.
    #[serde(serialize_with = "prefixes")]
    pub path: Vec<DyadicInterval>,
}

impl SearchTrace {
    /// Stable JSON form:
    /// `{"query","result","bits_read","steps","path"}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }
}

/// Decides `x ∈ X` by bisection: split the current interval into equal halves,
/// keep the half selected by the next bit of `x`, and read the label once the
/// interval is the singleton `{x}`.
///
/// Works with either backend.
pub fn bisection_decide(set: &LabelledSet, x: &BitString) -> Result<SearchTrace> {
    if x.width() != set.width() {
        return Err(Error::WidthMismatch {
            expected: set.width(),
            found: x.width(),
        });
    }
    let mut meter = BitMeter::default();
    let mut steps = 0;
    let mut current = DyadicInterval::full(set.width());
    let mut path = Vec::with_capacity(set.width() + 1);
    path.push(current.clone());
    while !current.is_singleton() {
        let bit = meter.query_bit(x, current.depth());
        let (left, right) = current.split()?;
        current = if bit { right } else { left };
        path.push(current.clone());
        steps += 1;
    }
    let result = meter.label(set, current.prefix())?;
    steps += 1;
    Ok(SearchTrace {
        query: x.clone(),
        result,
        bits_read: meter.reads,
        steps,
        path,
    })
}

/// Result of the linear-scan baseline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanTrace {
    pub query: BitString,
    #[serde(serialize_with = "label_bit")]
    pub result: bool,
    /// Points examined in lexicographic order up to and including `x`.
    pub comparisons: u64,
}

/// Baseline: walk the universe in lexicographic order until `x` turns up,
/// then read its label.
pub fn naive_scan_decide(set: &LabelledSet, x: &BitString) -> Result<ScanTrace> {
    if !set.is_bitmap() {
        return Err(Error::OracleUnsupported("naive_scan_decide"));
    }
    if x.width() != set.width() {
        return Err(Error::WidthMismatch {
            expected: set.width(),
            found: x.width(),
        });
    }
    let target = x.to_index().expect("bitmap width fits an index");
    for (seen, candidate) in (0..set.universe_size()).enumerate() {
        // keep the walk from being folded into a closed form
        if std::hint::black_box(candidate) == target {
            return Ok(ScanTrace {
                query: x.clone(),
                result: set.label_at(candidate),
                comparisons: seen as u64 + 1,
            });
        }
    }
    unreachable!("every width-n point lies in the universe")
}

/// One entry of an enumeration of the universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationItem {
    pub point: BitString,
    pub label: bool,
    pub position: u64,
}

/// Lists the universe taking a member, then a non-member, and so on, each
/// class in lexicographic order. Once a class runs out the rest of the other
/// class follows in lexicographic order.
#[derive(Clone, Debug)]
pub struct AlternatingEnumeration<'a> {
    set: &'a LabelledSet,
    // Next candidate index for each class: [non-members, members].
    cursor: [Option<u64>; 2],
    want_member: bool,
    position: u64,
}

impl AlternatingEnumeration<'_> {
    /// Advances by one item, returning `(index, label)` without building the
    /// point.
    fn next_index(&mut self) -> Option<(u64, bool)> {
        let label = match (self.cursor[0], self.cursor[1]) {
            (None, None) => return None,
            (None, Some(_)) => true,
            (Some(_), None) => false,
            (Some(_), Some(_)) => self.want_member,
        };
        let slot = usize::from(label);
        let index = self.cursor[slot].expect("class not exhausted");
        self.cursor[slot] = self
            .set
            .next_with_label(index + 1, label)
            .expect("bitmap backend checked at construction");
        self.want_member = !label;
        self.position += 1;
        Some((index, label))
    }
}

impl Iterator for AlternatingEnumeration<'_> {
    type Item = EnumerationItem;

    fn next(&mut self) -> Option<EnumerationItem> {
        let position = self.position;
        let (index, label) = self.next_index()?;
        Some(EnumerationItem {
            point: BitString::from_index(self.set.width(), index),
            label,
            position,
        })
    }
}

pub fn alternating_enumeration(set: &LabelledSet) -> Result<AlternatingEnumeration<'_>> {
    Ok(AlternatingEnumeration {
        set,
        cursor: [
            set.next_with_label(0, false)?,
            set.next_with_label(0, true)?,
        ],
        want_member: true,
        position: 0,
    })
}

/// Outcome of deciding membership by scanning the alternating enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationDecision {
    pub query: BitString,
    #[serde(serialize_with = "label_bit")]
    pub result: bool,
    /// Enumeration items consumed, including the one equal to the query.
    pub steps: u64,
    /// `steps * (width + 1)`: each consumed item is a labelled point.
    pub bits_consumed: u64,
}

pub fn decide_via_enumeration(set: &LabelledSet, x: &BitString) -> Result<EnumerationDecision> {
    if x.width() != set.width() {
        return Err(Error::WidthMismatch {
            expected: set.width(),
            found: x.width(),
        });
    }
    let target = x.to_index().expect("bitmap width fits an index");
    let mut items = alternating_enumeration(set)?;
    while let Some((index, label)) = items.next_index() {
        if index == target {
            let steps = items.position;
            return Ok(EnumerationDecision {
                query: x.clone(),
                result: label,
                steps,
                bits_consumed: steps * (set.width() as u64 + 1),
            });
        }
    }
    unreachable!("the enumeration covers the universe")
}

/// Verdict on a sequence of truth values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Constant true (including the empty sequence).
    AllTrue,
    /// Constant false.
    AllFalse,
    /// The sequence departs from its first value at `index`.
    Witness { index: usize, value: bool },
}

/// Classifies a truth-value sequence as constant true, constant false, or
/// the first point where it departs from its opening value.
pub fn quantifier_eval<I: IntoIterator<Item = bool>>(items: I) -> Verdict {
    let mut iter = items.into_iter();
    let Some(first) = iter.next() else {
        return Verdict::AllTrue;
    };
    match iter.position(|v| v != first) {
        Some(i) => Verdict::Witness {
            index: i + 1,
            value: !first,
        },
        None if first => Verdict::AllTrue,
        None => Verdict::AllFalse,
    }
}
