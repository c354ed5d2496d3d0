//! Randomized search for networks on which augmenting cycles stop short of
//! the LP optimum.
//!
//! The harness only records what each instance does. Every flagged
//! instance is serialized so that it can be replayed with [`replay`].

use std::fmt;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::complex::OrientedComplex;
use super::hflow::{hmaxflow_augment_with, hmaxflow_lp};
use super::hnetwork::{build_hnetwork, check_source_condition, HNetwork};
use super::SimplicialError;
use crate::numeric::{int, ratio, Rational};

pub const MAX_PROBE_FACETS: usize = 8;
const PROBE_AUGMENT_LIMIT: usize = 500;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of trial `index` in a run seeded with `seed`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed ^ splitmix64(index as u64))
}

/// Random two-dimensional network with at most [`MAX_PROBE_FACETS`]
/// facets. Orientations are random except that neighbours of the source
/// are flipped where needed to satisfy the source condition.
pub fn random_hnetwork(rng: &mut impl Rng) -> HNetwork {
    let vertices = rng.gen_range(4..=6);
    let mut triples = Vec::new();
    for a in 1..=vertices {
        for b in a + 1..=vertices {
            for c in b + 1..=vertices {
                triples.push(vec![a, b, c]);
            }
        }
    }
    triples.shuffle(rng);
    // half the time, start from the boundary of a tetrahedron so that the
    // source lies on a closed surface and positive flow is possible
    let seeded = if rng.gen_bool(0.5) {
        let mut quad: Vec<usize> = (1..=vertices).collect::<Vec<_>>().choose_multiple(rng, 4).copied().collect();
        quad.sort();
        triples.sort_by_key(|t| !t.iter().all(|v| quad.contains(v)));
        4
    } else {
        0
    };
    let count = rng.gen_range(seeded.max(2)..=MAX_PROBE_FACETS.min(triples.len()));
    let mut facets: Vec<Vec<usize>> = triples.into_iter().take(count).collect();
    for f in facets.iter_mut() {
        f.shuffle(rng);
    }
    let source = rng.gen_range(0..if seeded > 0 { seeded } else { count });
    let mut complex = OrientedComplex::new(2, facets).expect("distinct triples");
    // neighbours share exactly one edge with the source, so one flip each
    for j in check_source_condition(&complex, source) {
        complex = complex.flipped(j);
    }
    let caps = (0..count)
        .map(|_| {
            let whole = rng.gen_range(0..=3);
            if rng.gen_bool(0.25) {
                int(whole) + ratio(1, 2)
            } else {
                int(whole)
            }
        })
        .collect();
    build_hnetwork(complex, source, caps).expect("source condition was repaired")
}

/// Facts observed on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeOutcome {
    pub lp_value: Option<Rational>,
    pub fixpoint_value: Rational,
    pub augmentations: usize,
    /// `false` when the augmentation limit was reached first.
    pub fixpoint: bool,
}

impl ProbeOutcome {
    /// The augmentation run ended with no augmenting cycle, yet below the
    /// LP optimum.
    pub fn is_discrepancy(&self) -> bool {
        self.fixpoint && self.lp_value.as_ref().is_some_and(|lp| self.fixpoint_value < *lp)
    }
}

pub fn run_instance(hnet: &HNetwork) -> ProbeOutcome {
    let lp = hmaxflow_lp(hnet);
    let aug = hmaxflow_augment_with(hnet, PROBE_AUGMENT_LIMIT);
    ProbeOutcome {
        lp_value: lp.value(hnet),
        fixpoint_value: aug.flow.value(hnet).clone(),
        augmentations: aug.trace.len(),
        fixpoint: aug.fixpoint,
    }
}

/// Re-run a serialized instance.
pub fn replay(instance: &str) -> Result<ProbeOutcome, SimplicialError> {
    Ok(run_instance(&HNetwork::parse(instance)?))
}

#[derive(Debug, Clone)]
pub struct ProbeTrial {
    pub index: usize,
    pub seed: u64,
    pub instance: HNetwork,
    pub outcome: ProbeOutcome,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub seed: u64,
    pub trials: Vec<ProbeTrial>,
}

impl ProbeReport {
    pub fn discrepancies(&self) -> impl Iterator<Item = &ProbeTrial> {
        self.trials.iter().filter(|t| t.outcome.is_discrepancy())
    }

    pub fn unfinished(&self) -> impl Iterator<Item = &ProbeTrial> {
        self.trials.iter().filter(|t| !t.outcome.fixpoint)
    }
}

/// Run `trials` seeded instances, in parallel when `parallel` is set. The
/// report is identical either way.
pub fn conjecture_probe(seed: u64, trials: usize, parallel: bool) -> ProbeReport {
    let one = |index: usize| {
        let seed = trial_seed(seed, index);
        let instance = random_hnetwork(&mut ChaCha8Rng::seed_from_u64(seed));
        let outcome = run_instance(&instance);
        ProbeTrial { index, seed, instance, outcome }
    };
    let trials = if parallel {
        (0..trials).into_par_iter().map(one).collect()
    } else {
        (0..trials).map(one).collect()
    };
    ProbeReport { seed, trials }
}

fn show(v: &Option<Rational>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), |x| x.to_string())
}

impl fmt::Display for ProbeReport {
    /// One `trial` line per instance; flagged instances are followed by
    /// their serialization between `instance` and `end` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "probe seed={} trials={}", self.seed, self.trials.len())?;
        for t in &self.trials {
            let o = &t.outcome;
            let status = if o.is_discrepancy() {
                "discrepancy"
            } else if !o.fixpoint {
                "unfinished"
            } else {
                "agree"
            };
            writeln!(
                f,
                "trial {} seed={} facets={} lp={} fixpoint={} augmentations={} status={}",
                t.index,
                t.seed,
                t.instance.complex().facet_count(),
                show(&o.lp_value),
                o.fixpoint_value,
                o.augmentations,
                status
            )?;
            if status != "agree" {
                writeln!(f, "instance {}", t.index)?;
                write!(f, "{}", t.instance.to_text())?;
                writeln!(f, "end")?;
            }
        }
        let zero = Rational::zero();
        let carried = self.trials.iter().filter(|t| t.outcome.fixpoint_value > zero).count();
        writeln!(
            f,
            "summary discrepancies={} unfinished={} positive_flow={}",
            self.discrepancies().count(),
            self.unfinished().count(),
            carried
        )
    }
}
