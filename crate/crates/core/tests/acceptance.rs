//! Acceptance criteria, one line per criterion. Runs as a plain binary so the
//! report prints in order; exits nonzero if any criterion fails.

mod common;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use common::random_set;
use common::small_ordinal::Small;
use lset::bench::{run_workload, WorkloadSpec};
use lset::diagonal::{diagonal_predicate, verify_antisurjection, PredicateCoding};
use lset::search::{alternating_enumeration, bisection_decide, decide_via_enumeration};
use lset::transfinite::{
    compress_sequence, decompress_sequence, ord_add, ord_cmp, ord_mul, Ordinal,
    TransfiniteBitString,
};
use lset::{lex_cmp, ultra_distance, BitString, DyadicInterval, LabelledSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SEED: u64 = 0x5EED_1AB5;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// 50 random sets plus the empty and the full set at each width.
fn ac1_sets(n: usize) -> Vec<LabelledSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
    let mut sets: Vec<_> = (0..50).map(|_| random_set(n, &mut rng)).collect();
    sets.push(LabelledSet::empty(n).unwrap());
    sets.push(LabelledSet::full(n).unwrap());
    sets
}

struct Ac1Totals {
    queries: u64,
    disagreements: u64,
    bit_law_violations: u64,
    first_failure: Option<String>,
}

fn run_ac1() -> Ac1Totals {
    let jobs: Vec<(usize, LabelledSet)> = (0..=12usize)
        .flat_map(|n| ac1_sets(n).into_iter().map(move |s| (n, s)))
        .collect();
    let per_set: Vec<Ac1Totals> = jobs
        .par_iter()
        .map(|(n, set)| {
            let mut t = Ac1Totals {
                queries: 0,
                disagreements: 0,
                bit_law_violations: 0,
                first_failure: None,
            };
            for x in BitString::universe(*n) {
                t.queries += 1;
                let direct = set.label_of(&x).unwrap();
                let trace = bisection_decide(set, &x).unwrap();
                let enumerated = decide_via_enumeration(set, &x).unwrap();
                if trace.result != direct || enumerated.result != direct {
                    t.disagreements += 1;
                    t.first_failure.get_or_insert_with(|| {
                        format!(
                            "n={n} x={x}: label {direct}, bisection {}, enumeration {}",
                            trace.result, enumerated.result
                        )
                    });
                }
                if trace.bits_read != *n as u64 + 1 {
                    t.bit_law_violations += 1;
                    t.first_failure.get_or_insert_with(|| {
                        format!("n={n} x={x}: bits_read {}", trace.bits_read)
                    });
                }
            }
            t
        })
        .collect();
    per_set.into_iter().fold(
        Ac1Totals {
            queries: 0,
            disagreements: 0,
            bit_law_violations: 0,
            first_failure: None,
        },
        |mut acc, t| {
            acc.queries += t.queries;
            acc.disagreements += t.disagreements;
            acc.bit_law_violations += t.bit_law_violations;
            acc.first_failure = acc.first_failure.or(t.first_failure);
            acc
        },
    )
}

fn ac1(t: &Ac1Totals, elapsed_s: f64) -> Outcome {
    check(t.disagreements == 0, || {
        format!(
            "{} disagreements; first: {:?}",
            t.disagreements, t.first_failure
        )
    })?;
    check(elapsed_s < 60.0, || {
        format!("took {elapsed_s:.1}s, limit 60s")
    })?;
    Ok(format!(
        "{} queries over n=0..12 x 52 sets, 0 disagreements, {elapsed_s:.1}s",
        t.queries
    ))
}

fn ac2(t: &Ac1Totals) -> Outcome {
    check(t.bit_law_violations == 0, || {
        format!(
            "{} traces with bits_read != n+1; first: {:?}",
            t.bit_law_violations, t.first_failure
        )
    })?;
    Ok(format!("{} traces, every bits_read == n+1", t.queries))
}

fn lex_max(a: BitString, b: BitString) -> BitString {
    if lex_cmp(&a, &b).unwrap() == Ordering::Less {
        b
    } else {
        a
    }
}

fn triangle_holds(x: &BitString, y: &BitString, z: &BitString) -> bool {
    let m = lex_max(ultra_distance(x, y).unwrap(), ultra_distance(y, z).unwrap());
    lex_cmp(&m, &ultra_distance(x, z).unwrap()).unwrap() != Ordering::Less
}

fn ac3() -> Outcome {
    let mut exhaustive = 0u64;
    for n in 3..=6usize {
        let all: Vec<_> = BitString::universe(n).collect();
        let violations: u64 = all
            .par_iter()
            .map(|x| {
                let mut v = 0;
                for y in &all {
                    for z in &all {
                        if !triangle_holds(x, y, z) {
                            v += 1;
                        }
                    }
                }
                v
            })
            .sum();
        check(violations == 0, || {
            format!("{violations} violations at n={n}")
        })?;
        exhaustive += (all.len() as u64).pow(3);
    }
    let random = 1_000_000u64;
    let violations: u64 = (0..100u64)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (chunk << 8));
            let mut v = 0;
            for _ in 0..random / 100 {
                let x = BitString::from_index(64, rng.gen());
                // correlated y, z so that shared prefixes of every length occur
                let y = BitString::from_index(
                    64,
                    x.to_index().unwrap() ^ (rng.gen::<u64>() >> rng.gen_range(0..64)),
                );
                let z = BitString::from_index(
                    64,
                    y.to_index().unwrap() ^ (rng.gen::<u64>() >> rng.gen_range(0..64)),
                );
                if !triangle_holds(&x, &y, &z) {
                    v += 1;
                }
            }
            v
        })
        .sum();
    check(violations == 0, || {
        format!("{violations} violations among random triples at n=64")
    })?;
    Ok(format!(
        "{exhaustive} exhaustive triples (n=3..6) + {random} random at n=64, 0 violations"
    ))
}

fn ac4() -> Outcome {
    let mut comparisons = 0u64;
    for n in 0..=6usize {
        let all: Vec<_> = BitString::universe(n).collect();
        for a in &all {
            for b in &all {
                let ab = lex_cmp(a, b).unwrap();
                check((ab == Ordering::Equal) == (a == b), || {
                    format!("Equal/identity mismatch {a} {b}")
                })?;
                check(lex_cmp(b, a).unwrap() == ab.reverse(), || {
                    format!("antisymmetry fails {a} {b}")
                })?;
                comparisons += 1;
            }
        }
        let violations: u64 = all
            .par_iter()
            .map(|a| {
                let mut v = 0;
                for b in &all {
                    for c in &all {
                        let ab = lex_cmp(a, b).unwrap();
                        let bc = lex_cmp(b, c).unwrap();
                        if ab != Ordering::Greater && bc != Ordering::Greater {
                            let ac = lex_cmp(a, c).unwrap();
                            let expected = if ab == Ordering::Equal && bc == Ordering::Equal {
                                Ordering::Equal
                            } else {
                                Ordering::Less
                            };
                            if ac != expected {
                                v += 1;
                            }
                        }
                    }
                }
                v
            })
            .sum();
        check(violations == 0, || {
            format!("{violations} transitivity violations at n={n}")
        })?;
    }
    let mut sandwiches = 0u64;
    for n in 0..=10usize {
        let points: Vec<_> = BitString::universe(n).collect();
        for k in 0..=n {
            for prefix in BitString::universe(k) {
                let interval = DyadicInterval::new(n, prefix).unwrap();
                for x in &points {
                    let by_prefix = interval.contains(x).unwrap();
                    let by_bounds = interval.contains_by_bounds(x).unwrap();
                    check(by_prefix == by_bounds, || {
                        format!("contains mismatch {interval} {x}")
                    })?;
                    sandwiches += 1;
                }
            }
        }
    }
    Ok(format!(
        "{comparisons} ordered pairs (n<=6) total/antisymmetric/transitive; {sandwiches} contains/bounds checks (n<=10)"
    ))
}

fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut checks = 0u64;
    for n in 0..=8usize {
        let empty = LabelledSet::empty(n).unwrap();
        for _ in 0..20 {
            let a = random_set(n, &mut rng);
            let b = random_set(n, &mut rng);
            let c = random_set(n, &mut rng);
            let ab = a.labelled_union(&b).unwrap();
            for y in BitString::universe(n) {
                let expected = a.label_of(&y).unwrap().max(b.label_of(&y).unwrap());
                check(ab.label_of(&y).unwrap() == expected, || {
                    format!("pointwise max fails n={n} y={y}")
                })?;
                checks += 1;
            }
            check(ab == b.labelled_union(&a).unwrap(), || {
                format!("not commutative at n={n}")
            })?;
            check(
                ab.labelled_union(&c).unwrap()
                    == a.labelled_union(&b.labelled_union(&c).unwrap()).unwrap(),
                || format!("not associative at n={n}"),
            )?;
            check(a.labelled_union(&a).unwrap() == a, || {
                format!("not idempotent at n={n}")
            })?;
            check(
                a.labelled_union(&empty).unwrap() == a && empty.labelled_union(&a).unwrap() == a,
                || format!("empty set is not the identity at n={n}"),
            )?;
        }
    }
    // the single-point law (y,0) ⊔ (y,1) = (y,1) in both orders
    let zero = LabelledSet::empty(1).unwrap();
    let one = LabelledSet::full(1).unwrap();
    for y in BitString::universe(1) {
        check(
            zero.labelled_union(&one).unwrap().label_of(&y).unwrap(),
            || "0 ⊔ 1 != 1".into(),
        )?;
        check(
            one.labelled_union(&zero).unwrap().label_of(&y).unwrap(),
            || "1 ⊔ 0 != 1".into(),
        )?;
    }
    Ok(format!(
        "{checks} pointwise checks over 180 random set pairs (n<=8); algebraic laws hold"
    ))
}

fn ac6() -> Outcome {
    let mut checked = 0u64;
    for n in 1..=3usize {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6 ^ n as u64);
        let codings = (0..1000)
            .map(|_| PredicateCoding::random(n, &mut rng).unwrap())
            .chain(std::iter::once(PredicateCoding::canonical(n).unwrap()));
        for coding in codings {
            let diagonal = diagonal_predicate(&coding);
            for y in BitString::universe(n) {
                let d = diagonal.label_of(&y).unwrap();
                let e = coding.decode(&y).unwrap().label_of(&y).unwrap();
                check(d != e, || format!("diagonal agrees with code {y} at n={n}"))?;
                checked += 1;
            }
            let witnesses = verify_antisurjection(&coding).map_err(|e| e.to_string())?;
            check(witnesses.len() == 1 << n, || {
                format!("{} witnesses at n={n}", witnesses.len())
            })?;
        }
    }
    Ok(format!("3003 codings (1000 random + canonical per n=1..3, seed {SEED:#x}), {checked} codes, 0 violations"))
}

fn random_small<R: Rng>(rng: &mut R, max_degree: u32) -> Small {
    let c = |rng: &mut R, e: u32| {
        if e <= max_degree {
            rng.gen_range(0..=9)
        } else {
            0
        }
    };
    Small::new(c(rng, 2), c(rng, 1), c(rng, 0))
}

fn degree(s: Small) -> u32 {
    s.degree()
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let pairs = 10_000;
    for _ in 0..pairs {
        let a = random_small(&mut rng, 2);
        let b = random_small(&mut rng, 2);
        let (oa, ob) = (a.to_ordinal(), b.to_ordinal());
        check(ord_cmp(&oa, &ob) == a.cmp(b), || format!("cmp {oa} {ob}"))?;
        check(ord_add(&oa, &ob) == a.add(b).to_ordinal(), || {
            format!("add {oa} + {ob}")
        })?;
        // keep the product below ω³ so the oracle can represent it
        let b = random_small(&mut rng, 2 - degree(a).min(2));
        let b = if degree(a) > 0 && degree(a) + degree(b) > 2 {
            Small::new(0, 0, b.c0)
        } else {
            b
        };
        let ob = b.to_ordinal();
        let expected = a
            .mul(b)
            .ok_or_else(|| format!("oracle cannot represent {oa} * {ob}"))?;
        check(ord_mul(&oa, &ob) == expected.to_ordinal(), || {
            format!("mul {oa} * {ob}")
        })?;
    }
    let sequences = 10_000;
    let cap = Ordinal::from_pairs(&[(2, 9)]).unwrap();
    let mut nonempty = 0;
    for _ in 0..sequences {
        let length = loop {
            let l = random_small(&mut rng, 2).to_ordinal();
            if l <= cap {
                break l;
            }
        };
        let support: Vec<Ordinal> = (0..rng.gen_range(0..10))
            .map(|_| {
                Small::new(
                    rng.gen_range(0..=9),
                    rng.gen_range(0..100),
                    rng.gen_range(0..100),
                )
                .to_ordinal()
            })
            .filter(|p| *p < length)
            .collect();
        let s = TransfiniteBitString::new(length.clone(), support).unwrap();
        nonempty += usize::from(!s.support().is_empty());
        let c = compress_sequence(&s).map_err(|e| e.to_string())?;
        check(c.support().len() == s.support().len(), || {
            format!("support size changed for {length}")
        })?;
        let back = decompress_sequence(&c, &length).map_err(|e| e.to_string())?;
        check(back == s, || {
            format!("round trip failed for length {length}")
        })?;
    }
    Ok(format!(
        "{pairs} pairs agree with the below-w^3 oracle on cmp/add/mul; {sequences} sequences ({nonempty} non-empty) round-trip"
    ))
}

fn ac8() -> Outcome {
    let spec = WorkloadSpec {
        width: 20,
        query_count: 10_000,
        seed: SEED,
        set_density: 0.5,
    };
    let report = run_workload(&spec).map_err(|e| e.to_string())?;
    let bits = &report.counters.bisection_bits_read;
    let scan = &report.counters.naive_scan_comparisons;
    check(bits.min == 21 && bits.max == 21, || {
        format!("bits_read ranged {}..{}", bits.min, bits.max)
    })?;
    check(scan.mean >= (1u64 << 17) as f64, || {
        format!("scan mean {} < 2^17", scan.mean)
    })?;
    check(report.counters.agreement, || {
        "bisection and scan disagree".into()
    })?;
    Ok(format!(
        "bits_read constant 21; scan comparisons mean {:.0} (~2^{:.2}) >= 2^17",
        scan.mean,
        scan.mean.log2()
    ))
}

fn enumeration_shape_ok(set: &LabelledSet) -> Result<(), String> {
    let n = set.width();
    let members = set.member_count().unwrap();
    let others = set.universe_size() - members;
    let alternating = 2 * members.min(others);
    let mut seen = HashSet::new();
    let mut last: [Option<u64>; 2] = [None, None];
    for (i, item) in alternating_enumeration(set).unwrap().enumerate() {
        let i = i as u64;
        check(item.position == i, || {
            format!("position {} at step {i}", item.position)
        })?;
        check(set.label_of(&item.point).unwrap() == item.label, || {
            format!("wrong label for {}", item.point)
        })?;
        check(seen.insert(item.point.clone()), || {
            format!("{} emitted twice", item.point)
        })?;
        let expected = if i < alternating {
            i.is_multiple_of(2)
        } else {
            members > others
        };
        check(item.label == expected, || {
            format!("n={n}: label {} at position {i}", item.label)
        })?;
        let idx = item.point.to_index().unwrap();
        let slot = usize::from(item.label);
        check(last[slot].is_none_or(|p| p < idx), || {
            format!("class order broken at {}", item.point)
        })?;
        last[slot] = Some(idx);
    }
    check(seen.len() as u64 == set.universe_size(), || {
        format!("{} of {} points emitted", seen.len(), set.universe_size())
    })
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut sets_checked = 0;
    for n in 0..=8usize {
        let mut sets = vec![
            LabelledSet::empty(n).unwrap(),
            LabelledSet::full(n).unwrap(),
        ];
        if n <= 3 {
            for bits in 0..(1u64 << (1 << n)) {
                sets.push(
                    LabelledSet::from_predicate(n, |x| bits >> x.to_index().unwrap() & 1 == 1)
                        .unwrap(),
                );
            }
        } else {
            sets.extend((0..200).map(|_| random_set(n, &mut rng)));
        }
        for set in &sets {
            enumeration_shape_ok(set).map_err(|e| format!("n={n}: {e}"))?;
            sets_checked += 1;
        }
    }
    Ok(format!(
        "{sets_checked} sets (all subsets for n<=3, 200 random + empty + full for n=4..8)"
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let ac1_totals = run_ac1();
    let ac1_elapsed = start.elapsed().as_secs_f64();

    let criteria: Vec<Criterion> = vec![
        (
            "AC-1",
            "oracle equivalence",
            Box::new(|| ac1(&ac1_totals, ac1_elapsed)),
        ),
        ("AC-2", "bit-count law", Box::new(|| ac2(&ac1_totals))),
        ("AC-3", "ultrametric strong triangle", Box::new(ac3)),
        ("AC-4", "order laws", Box::new(ac4)),
        ("AC-5", "labelled union absorption", Box::new(ac5)),
        ("AC-6", "diagonal anti-surjection", Box::new(ac6)),
        ("AC-7", "transfinite arithmetic", Box::new(ac7)),
        ("AC-8", "search-cost separation", Box::new(ac8)),
        ("AC-9", "enumeration shape", Box::new(ac9)),
    ];
    let mut failed = 0;
    for (id, name, run) in &criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!(
                "{id} PASS {name}: {detail} [{:.2}s]",
                t.elapsed().as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
