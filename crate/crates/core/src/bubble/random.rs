//! Seeded random bubble models.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BubbleModel, BUBBLE_COUNT_FACTOR};

#[derive(Debug, Clone, PartialEq)]
pub struct RandomModelParams {
    /// Number of columns; drawn from `1..=min(n, ceil(sqrt n) + 1)` when absent.
    pub columns: Option<usize>,
    /// Rows per column; drawn per column from the same range when absent.
    pub rows: Option<usize>,
    /// Probability that a bubble is forced empty.
    pub empty_rate: f64,
}

impl Default for RandomModelParams {
    fn default() -> Self {
        RandomModelParams {
            columns: None,
            rows: None,
            empty_rate: 0.2,
        }
    }
}

/// A random valid model on `n` vertices, fully determined by `(n, seed, params)`.
///
/// Bubbles are forced empty with probability `empty_rate`; the remaining
/// bubbles each receive one vertex, then leftover vertices land uniformly at
/// random. Vertex ids are shuffled at the end. Trailing empty columns are
/// dropped.
pub fn random_model(n: usize, seed: u64, params: &RandomModelParams) -> BubbleModel {
    assert!(n >= 1, "random_model needs at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = n.min((n as f64).sqrt().ceil() as usize + 1).max(1);
    let limit = BUBBLE_COUNT_FACTOR * n * n;

    let k = params.columns.unwrap_or_else(|| rng.gen_range(1..=span)).clamp(1, limit);
    let mut shape: Vec<usize> = (0..k)
        .map(|_| params.rows.unwrap_or_else(|| rng.gen_range(1..=span)).max(1))
        .collect();
    // Keep Σ r_j within the validator's bubble limit, leaving a row per column.
    let mut used = 0;
    for (t, r) in shape.iter_mut().enumerate() {
        let allowed = limit - used - (k - t - 1);
        *r = (*r).min(allowed);
        used += *r;
    }

    let rate = params.empty_rate.clamp(0.0, 1.0);
    let slots: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(j, &r)| (0..r).map(move |i| (j, i)))
        .collect();
    let mut open: Vec<usize> = (0..slots.len()).filter(|_| !rng.gen_bool(rate)).collect();
    if open.is_empty() {
        open.push(rng.gen_range(0..slots.len()));
    }
    open.shuffle(&mut rng);
    open.truncate(n);

    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let mut columns: Vec<Vec<Vec<usize>>> = shape.iter().map(|&r| vec![Vec::new(); r]).collect();
    for (t, &v) in ids.iter().enumerate() {
        let slot = if t < open.len() {
            open[t]
        } else {
            open[rng.gen_range(0..open.len())]
        };
        let (j, i) = slots[slot];
        columns[j][i].push(v);
    }
    while columns
        .last()
        .is_some_and(|c| c.iter().all(|b| b.is_empty()))
    {
        columns.pop();
    }
    BubbleModel::new(n, columns).expect("generated model is valid")
}

/// Two columns of four rows with no forced-empty bubbles: the family whose
/// recurrence work grows like `n⁴`.
pub fn dense_model(n: usize, seed: u64) -> BubbleModel {
    random_model(
        n,
        seed,
        &RandomModelParams {
            columns: Some(2),
            rows: Some(4),
            empty_rate: 0.0,
        },
    )
}
