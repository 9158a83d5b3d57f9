//! Random perturbations of a complex against the bottleneck distance they cause.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bottleneck_distance;
use crate::barcode::{rectangle_barcode, BarcodeError};
use crate::complex::{FilteredComplex, Perturbed};

const MAX_REJECTIONS: usize = 100;
const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftMode {
    /// Independent uniform shifts per generator, resampled until monotone.
    PerGenerator,
    /// One uniform shift applied to every generator.
    Constant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub delta: f64,
    #[serde(with = "crate::extended")]
    pub d_bot: f64,
    pub bound_3delta_ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub trials: Vec<TrialRecord>,
    /// Trials whose distance is within the perturbation size itself.
    pub within_delta: usize,
}

impl StabilityReport {
    pub fn all_ok(&self) -> bool {
        self.trials.iter().all(|t| t.bound_3delta_ok)
    }

    /// The trial records as a JSON array.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.trials).expect("records serialize");
        s.push('\n');
        s
    }
}

fn draw(c: &FilteredComplex, rng: &mut ChaCha8Rng, magnitude: f64, mode: ShiftMode) -> Perturbed {
    let uniform = |rng: &mut ChaCha8Rng| {
        if magnitude > 0.0 {
            rng.gen_range(-magnitude..=magnitude)
        } else {
            0.0
        }
    };
    if mode == ShiftMode::PerGenerator {
        for _ in 0..MAX_REJECTIONS {
            let shifts: HashMap<_, _> = c
                .all_generators()
                .map(|g| (g.key(), uniform(rng)))
                .collect();
            if let Ok(p) = c.perturb(&shifts) {
                return p;
            }
        }
    }
    let s = uniform(rng);
    let shifts = c.all_generators().map(|g| (g.key(), s)).collect();
    c.perturb(&shifts)
        .expect("constant shifts keep a valid complex valid")
}

/// Runs `trials` independent perturbations of size at most `magnitude`.
///
/// Trial `t` draws from its own stream of the master seed, so results do not
/// depend on scheduling.
pub fn stability_experiment(
    c: &FilteredComplex,
    trials: usize,
    magnitude: f64,
    seed: u64,
    mode: ShiftMode,
) -> Result<StabilityReport, BarcodeError> {
    let base = rectangle_barcode(c)?;
    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let p = draw(c, &mut rng, magnitude, mode);
            let d_bot = bottleneck_distance(&base, &rectangle_barcode(&p.complex)?);
            Ok(TrialRecord {
                trial,
                delta: p.sup_norm,
                d_bot,
                bound_3delta_ok: d_bot <= 3.0 * p.sup_norm + SLACK,
            })
        })
        .collect::<Result<_, BarcodeError>>()?;
    let within_delta = records
        .iter()
        .filter(|r| r.d_bot <= r.delta + SLACK)
        .count();
    Ok(StabilityReport {
        trials: records,
        within_delta,
    })
}
