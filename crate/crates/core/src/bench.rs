//! Timing harness for the approximation pipeline on random `2 × n` modules.
//!
//! Each cell times the path table, the ss-compressed multiplicity function and
//! the Möbius inversion. Module generation and interval enumeration happen
//! before the clock starts. A cell repeats until it has at least `min_reps`
//! runs and at least 100 ms of total measured time.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::approximation::ApproxError;
use crate::compression::{classify_ss, compressed_multiplicity_with_table, stacked_rank_count};
use crate::generators::random_module;
use crate::grid::{Grid, ModuleError};
use crate::linalg::PrimeField;
use crate::mobius::mobius_invert;
use crate::poset::IntervalPoset;

/// Minimum measured time per cell.
pub const MIN_TOTAL: Duration = Duration::from_millis(100);

#[derive(Clone, Debug, PartialEq)]
pub struct BenchCell {
    pub n: usize,
    pub d: usize,
    pub reps: usize,
    pub total: Duration,
    pub intervals: usize,
    /// Matrix products in the path table.
    pub multiplications: usize,
    /// Rank computations: one per comparable vertex pair plus the stacked
    /// matrices the closed forms need.
    pub ranks: usize,
}

impl BenchCell {
    pub fn mean(&self) -> Duration {
        self.total / u32::try_from(self.reps).expect("repetition count fits in u32")
    }

    pub const CSV_HEADER: &'static str = "n,d,reps,mean_ms,total_ms,intervals,multiplications,ranks";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.3},{:.3},{},{},{}",
            self.n,
            self.d,
            self.reps,
            self.mean().as_secs_f64() * 1e3,
            self.total.as_secs_f64() * 1e3,
            self.intervals,
            self.multiplications,
            self.ranks
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
}

/// Times one `(n, d)` cell on a module drawn from `seed`.
pub fn bench_cell(n: usize, d: usize, field: PrimeField, seed: u64, min_reps: usize) -> Result<BenchCell, BenchError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let module = random_module(n, d, field, &mut rng)?;
    let grid = Grid::new(2, n)?;
    let poset = Arc::new(IntervalPoset::new(grid));

    let mut reps = 0;
    let mut total = Duration::ZERO;
    let mut multiplications = 0;
    while reps < min_reps.max(1) || total < MIN_TOTAL {
        let start = Instant::now();
        let table = module.path_map_table();
        let dbar = compressed_multiplicity_with_table(&module, &table, &poset).map_err(ApproxError::from)?;
        let approx = mobius_invert(&dbar).map_err(ApproxError::from)?;
        total += start.elapsed();
        std::hint::black_box(approx);
        multiplications = table.multiplications();
        reps += 1;
    }

    let pairs = grid.comparable_pairs().count();
    let stacked: usize = poset
        .intervals()
        .iter()
        .map(|i| stacked_rank_count(&classify_ss(i).expect("two-row grid")))
        .sum();
    Ok(BenchCell {
        n,
        d,
        reps,
        total,
        intervals: poset.len(),
        multiplications,
        ranks: pairs + stacked,
    })
}
