//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use rectbar::barcode::{
    rectangle_barcode, sublevel_barcode, verify_decomposition, RectType, RectangleBarcode,
};
use rectbar::complex::{
    fixture_h_sphere, fixture_heart_circle, fixture_torus, parse, random_complex, serialize,
    FilteredComplex, RandomComplexParams,
};
use rectbar::distance::{stability_experiment, ShiftMode};
use rectbar::interlevel::{critical_grid, exactness_sweep, Interlevel, Quad};
use rectbar::invariants::{
    boundary_depth, non_cycle_depth, spectral_invariant_set, spectral_spread_in_degree,
    spread_bruteforce,
};
use rectbar::plot::render_svg;

const INF: f64 = f64::INFINITY;
const TIME_LIMIT: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixtures() -> Vec<(&'static str, FilteredComplex)> {
    vec![
        ("torus", fixture_torus()),
        ("heart", fixture_heart_circle()),
        ("h_sphere", fixture_h_sphere()),
    ]
}

/// Seeded random complexes with 1 to 12 generators over 1 to 4 degrees.
fn random_corpus(n: u64) -> Vec<FilteredComplex> {
    (0..n)
        .map(|s| {
            let generators = 1 + (s % 12) as usize;
            let degrees = 1 + ((s / 12) % 4) as usize;
            random_complex(1000 + s, RandomComplexParams::new(generators, degrees))
        })
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden(name: &str, c: &FilteredComplex, expected: &[(i32, f64, f64, f64)]) -> Outcome {
    let rb = rectangle_barcode(c).map_err(|e| e.to_string())?;
    let got: Vec<(i32, f64, f64, f64)> = rb
        .rectangles()
        .iter()
        .map(|r| (r.degree, r.c, r.ell1, r.ell2))
        .collect();
    ensure(got == expected, || {
        format!(
            "{name}: got {}",
            rb.to_text(None).trim_end().replace('\n', "; ")
        )
    })?;
    Ok(format!("{} rectangles", got.len()))
}

fn criterion_1() -> Outcome {
    golden(
        "torus",
        &fixture_torus(),
        &[
            (0, 1.0, INF, INF),
            (1, 2.0, INF, INF),
            (1, 3.0, INF, INF),
            (2, 4.0, INF, INF),
        ],
    )
}

fn criterion_2() -> Outcome {
    golden(
        "heart",
        &fixture_heart_circle(),
        &[
            (0, 1.0, INF, INF),
            (0, 2.0, INF, 1.0),
            (1, 3.0, 1.0, INF),
            (1, 4.0, INF, INF),
        ],
    )
}

fn criterion_3() -> Outcome {
    golden(
        "h_sphere",
        &fixture_h_sphere(),
        &[
            (0, 1.0, INF, INF),
            (0, 2.0, INF, 1.0),
            (1, 3.0, 1.0, INF),
            (1, 4.0, INF, 1.0),
            (2, 5.0, 1.0, INF),
            (2, 6.0, INF, INF),
        ],
    )
}

fn corpus() -> Vec<FilteredComplex> {
    let mut all: Vec<FilteredComplex> = fixtures().into_iter().map(|(_, c)| c).collect();
    all.extend(random_corpus(200));
    all
}

fn criterion_4() -> Outcome {
    let all = corpus();
    let results: Vec<(usize, usize, usize)> = all
        .par_iter()
        .map(|c| {
            let rb = rectbar::barcode::derive_rectangles(&sublevel_barcode(c));
            let report = verify_decomposition(c, &rb);
            (
                report.dims_checked,
                report.maps_checked,
                report.failures.len(),
            )
        })
        .collect();
    let failures: usize = results.iter().map(|r| r.2).sum();
    ensure(failures == 0, || {
        format!("{failures} verification failures")
    })?;
    let dims: usize = results.iter().map(|r| r.0).sum();
    let maps: usize = results.iter().map(|r| r.1).sum();
    Ok(format!(
        "{} complexes, {dims} dimensions and {maps} map ranks checked",
        all.len()
    ))
}

fn criterion_5() -> Outcome {
    let all = corpus();
    let mut rectangles = 0;
    for (i, c) in all.iter().enumerate() {
        let rb = rectangle_barcode(c).map_err(|e| format!("complex {i}: {e}"))?;
        for r in rb.rectangles() {
            ensure(
                RectType::from_lengths(r.ell1, r.ell2) == Some(r.rtype),
                || format!("complex {i}: {r} has inconsistent type {}", r.rtype),
            )?;
            ensure(r.ell1 > 0.0 && r.ell2 > 0.0, || {
                format!("complex {i}: {r} is empty")
            })?;
            let corner = c
                .generators(r.degree)
                .iter()
                .find(|g| g.name == r.generator)
                .map(|g| g.filtration);
            ensure(corner == Some(r.c), || {
                format!(
                    "complex {i}: corner of {r} is not the filtration of {}",
                    r.generator
                )
            })?;
        }
        let mut degrees: Vec<i32> = c.degrees().chain(rb.degrees()).collect();
        degrees.sort();
        degrees.dedup();
        for k in degrees {
            let count = rb.in_degree(k).count();
            ensure(count == c.rank(k), || {
                format!(
                    "complex {i}, degree {k}: {count} rectangles for {} generators",
                    c.rank(k)
                )
            })?;
        }
        rectangles += rb.len();
    }
    Ok(format!("{} complexes, {rectangles} rectangles", all.len()))
}

/// Quads drawn from a complex's critical grid; the middle-exactness ones are admissible by construction.
fn sample_quads(c: &FilteredComplex, seed: u64, n: usize) -> (Vec<Quad>, Vec<Quad>) {
    let grid = critical_grid(c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick = |count: usize| {
        let mut v: Vec<f64> = (0..count)
            .map(|_| grid[rng.gen_range(0..grid.len())])
            .collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let weak = (0..n)
        .map(|_| {
            let (a, b) = (pick(2), pick(2));
            Quad::new(a[0], a[1], b[0], b[1])
        })
        .collect();
    let middle = (0..n)
        .map(|_| {
            let v = pick(4);
            Quad::new(v[0], v[1], v[2], v[3])
        })
        .collect();
    (weak, middle)
}

fn criterion_6() -> Outcome {
    let mut weak = 0;
    let mut middle = 0;
    for (name, c) in fixtures() {
        let sweep = exactness_sweep(&c, 0);
        ensure(sweep.is_ok(), || {
            format!("{name}: {} exactness failures", sweep.failures.len())
        })?;
        weak += sweep.weak_checked;
        middle += sweep.middle_checked;
    }
    let randoms = random_corpus(60);
    let results: Vec<Result<(usize, usize), String>> = randoms
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let il = Interlevel::new(c);
            let (wq, mq) = sample_quads(c, i as u64, 4);
            let mut counts = (0, 0);
            for k in c.degrees() {
                for q in &wq {
                    il.check_weak_exactness(k, q)
                        .map_err(|e| format!("random {i}: {e}"))?;
                    counts.0 += 1;
                }
                for q in &mq {
                    il.check_middle_exactness(k, q)
                        .map_err(|e| format!("random {i}: {e}"))?;
                    counts.1 += 1;
                }
            }
            Ok(counts)
        })
        .collect();
    let (mut rw, mut rm) = (0, 0);
    for r in results {
        let (w, m) = r?;
        rw += w;
        rm += m;
    }
    ensure(rw >= 50 && rm >= 50, || {
        format!("only {rw} weak and {rm} middle random samples")
    })?;
    Ok(format!(
        "fixtures: {weak} weak, {middle} middle squares; random: {rw} weak, {rm} middle samples"
    ))
}

fn criterion_7() -> Outcome {
    let expected: [(&str, FilteredComplex, f64, f64, Vec<f64>); 3] = [
        ("heart", fixture_heart_circle(), 1.0, 1.0, vec![1.0, 4.0]),
        ("h_sphere", fixture_h_sphere(), 1.0, 1.0, vec![1.0, 6.0]),
        ("torus", fixture_torus(), 0.0, 0.0, vec![1.0, 2.0, 3.0, 4.0]),
    ];
    for (name, c, beta, non_cycle, set) in expected {
        let rb = rectangle_barcode(&c).map_err(|e| e.to_string())?;
        let got = (
            boundary_depth(&rb),
            non_cycle_depth(&rb),
            spectral_invariant_set(&rb),
        );
        ensure(got == (beta, non_cycle, set.clone()), || {
            format!(
                "{name}: got depths {} / {} and set {:?}",
                got.0, got.1, got.2
            )
        })?;
    }
    Ok("depths and spectral sets match on all fixtures".into())
}

fn criterion_8() -> Outcome {
    let mut all: Vec<(String, FilteredComplex)> = fixtures()
        .into_iter()
        .map(|(n, c)| (n.to_string(), c))
        .collect();
    all.extend(
        random_corpus(60)
            .into_iter()
            .enumerate()
            .map(|(i, c)| (format!("random {i}"), c)),
    );
    let results: Vec<Result<usize, String>> = all
        .par_iter()
        .map(|(name, c)| {
            let rb = rectangle_barcode(c).map_err(|e| format!("{name}: {e}"))?;
            let mut checked = 0;
            for k in c.degrees() {
                let (brute, barcode) = (spread_bruteforce(c, k), spectral_spread_in_degree(&rb, k));
                ensure(brute == barcode, || {
                    format!("{name}, degree {k}: brute force {brute}, barcode {barcode}")
                })?;
                checked += 1;
            }
            Ok(checked)
        })
        .collect();
    let mut degrees = 0;
    for r in results {
        degrees += r?;
    }
    Ok(format!("{} complexes, {degrees} degrees", all.len()))
}

fn criterion_9() -> Outcome {
    let mut worst: f64 = 0.0;
    for (name, c) in fixtures() {
        let r = stability_experiment(&c, 100, 0.2, 2024, ShiftMode::PerGenerator)
            .map_err(|e| e.to_string())?;
        let bad: Vec<_> = r.trials.iter().filter(|t| !t.bound_3delta_ok).collect();
        ensure(r.trials.len() == 100 && bad.is_empty(), || {
            format!(
                "{name}: {} of {} trials exceed 3δ",
                bad.len(),
                r.trials.len()
            )
        })?;
        for t in &r.trials {
            if t.delta > 0.0 {
                worst = worst.max(t.d_bot / t.delta);
            }
        }
        let constant = stability_experiment(&c, 100, 0.2, 2025, ShiftMode::Constant)
            .map_err(|e| e.to_string())?;
        ensure(constant.within_delta == constant.trials.len(), || {
            format!(
                "{name}: {} of {} constant shifts exceed δ",
                constant.trials.len() - constant.within_delta,
                constant.trials.len()
            )
        })?;
    }
    Ok(format!("300 + 300 trials, worst d_bot/δ = {worst:.4}"))
}

fn same_up_to(a: &RectangleBarcode, b: &RectangleBarcode, tol: f64) -> bool {
    let close = |x: f64, y: f64| x == y || (x - y).abs() <= tol;
    a.len() == b.len()
        && a.rectangles().iter().zip(b.rectangles()).all(|(r, s)| {
            r.degree == s.degree
                && r.rtype == s.rtype
                && r.generator == s.generator
                && close(r.c, s.c)
                && close(r.ell1, s.ell1)
                && close(r.ell2, s.ell2)
        })
}

fn criterion_10() -> Outcome {
    for (name, c) in fixtures() {
        let rb = rectangle_barcode(&c).map_err(|e| e.to_string())?;
        for (lambda, tol) in [(2.0, 0.0), (0.5, 0.0), (3.0, 1e-12)] {
            let scaled = c.scale(lambda).map_err(|e| e.to_string())?;
            let direct = rectangle_barcode(&scaled).map_err(|e| e.to_string())?;
            let expected = rb.scaled(lambda);
            let ok = if tol == 0.0 {
                direct == expected
            } else {
                same_up_to(&direct, &expected, tol)
            };
            ensure(ok, || {
                format!("{name}, λ = {lambda}: {}", direct.to_text(None).trim_end())
            })?;
        }
    }
    Ok("λ ∈ {2, 0.5} exact, λ = 3 within 1e-12".into())
}

fn criterion_11() -> Outcome {
    let (disagreements, checked) = common::battery_disagreements();
    ensure(disagreements.is_empty(), || {
        format!(
            "{} of {checked} cases disagree, first: {}",
            disagreements.len(),
            disagreements[0]
        )
    })?;
    Ok(format!("{checked} cases, 0 disagreements"))
}

fn criterion_12() -> Outcome {
    for (name, c) in fixtures() {
        let once = |c: &FilteredComplex| -> Result<(Vec<u8>, String, String), String> {
            let rb = rectangle_barcode(c).map_err(|e| e.to_string())?;
            Ok((
                serialize(c),
                rb.to_text(None),
                render_svg(&rb, &sublevel_barcode(c)),
            ))
        };
        let first = once(&c)?;
        let reparsed = parse(&first.0).map_err(|e| e.to_string())?;
        let second = once(&reparsed)?;
        ensure(first.0 == second.0, || {
            format!("{name}: serialization differs")
        })?;
        ensure(first.1 == second.1, || {
            format!("{name}: barcode text differs")
        })?;
        ensure(first.2 == second.2, || format!("{name}: SVG differs"))?;
    }
    Ok("serialize, text and SVG byte-identical on every fixture".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 12] = [
        ("torus golden barcode", criterion_1),
        ("heart golden barcode", criterion_2),
        ("h_sphere golden barcode", criterion_3),
        ("decomposition matches brute-force homology", criterion_4),
        ("rectangle types and per-degree counts", criterion_5),
        ("weak and middle exactness", criterion_6),
        ("invariant values", criterion_7),
        ("spectral spread cross-check", criterion_8),
        ("stability bounds", criterion_9),
        ("homogeneity under scaling", criterion_10),
        ("interleaving predicate vs grid oracle", criterion_11),
        ("determinism", criterion_12),
    ];
    let mut failed = Vec::new();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()))
            .and_then(|detail| {
                let elapsed = start.elapsed();
                if elapsed > TIME_LIMIT {
                    Err(format!("took {elapsed:.1?}, over the {TIME_LIMIT:?} limit"))
                } else {
                    Ok(detail)
                }
            });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2}: PASS  {title} ({detail}; {elapsed:.2?})",
                i + 1
            ),
            Err(why) => {
                println!("criterion {:>2}: FAIL  {title}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
