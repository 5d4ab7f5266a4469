//! Poissonized point configurations on the unit square plus integer-indexed
//! lines, their induced permutations and partitions, and the exact shape
//! law.
//!
//! Points on negative lines cannot share an increasing subsequence, points
//! on positive lines can; the y-ranking tie rules encode exactly that, so
//! the permutation's RSK shape matches the configuration's Greene-type
//! partition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{standard_tableau_count, Partition, Permutation};
use crate::error::{Error, Result};
use crate::rational::{factorial, rat_pow, rat_to_f64};
use crate::rsk::rsk_shape;
use crate::symmetric::{extended_schur, ShuffleParams};
use crate::Rat;

const BRUTE_FORCE_CAP: usize = 10;

/// A realized configuration: continuum points in the open square and line
/// points at integer levels (positive levels weighted by `alpha`, negative
/// by `beta`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointConfig {
    pub continuum: Vec<(f64, f64)>,
    pub lines: Vec<(f64, i32)>,
}

impl PointConfig {
    pub fn total_points(&self) -> usize {
        self.continuum.len() + self.lines.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("point config json: {e}")))
    }
}

fn sample_poisson(mean: f64, rng: &mut impl Rng) -> usize {
    // inversion along the cdf; fine for the desk-scale means used here
    assert!((0.0..500.0).contains(&mean));
    let mut u: f64 = rng.gen();
    let mut p = (-mean).exp();
    let mut k = 0usize;
    loop {
        if u < p || k > 10_000 {
            return k;
        }
        u -= p;
        k += 1;
        p *= mean / k as f64;
    }
}

/// Draw a configuration: Poisson counts with means `gamma_plus * gamma` on
/// the square, `gamma_plus * alpha_i` on line `i`, `gamma_plus * beta_i` on
/// line `-i`; uniform coordinates, resampled on the measure-zero boundary
/// and collision events.
pub fn sample_br(gamma_plus: &Rat, p_minus: &ShuffleParams, seed: u64) -> PointConfig {
    let gp = rat_to_f64(gamma_plus);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut xs_seen: Vec<f64> = Vec::new();
    let mut fresh_x = |rng: &mut ChaCha12Rng| -> f64 {
        loop {
            let x: f64 = rng.gen();
            if x > 0.0 && x < 1.0 && !xs_seen.contains(&x) {
                xs_seen.push(x);
                return x;
            }
        }
    };

    let mut continuum = Vec::new();
    let n0 = sample_poisson(gp * rat_to_f64(p_minus.gamma()), &mut rng);
    for _ in 0..n0 {
        let x = fresh_x(&mut rng);
        let y = loop {
            let y: f64 = rng.gen();
            if y > 0.0 && y < 1.0 {
                break y;
            }
        };
        continuum.push((x, y));
    }
    let mut lines = Vec::new();
    for (i, a) in p_minus.alpha().iter().enumerate() {
        let cnt = sample_poisson(gp * rat_to_f64(a), &mut rng);
        for _ in 0..cnt {
            lines.push((fresh_x(&mut rng), i as i32 + 1));
        }
    }
    for (i, b) in p_minus.beta().iter().enumerate() {
        let cnt = sample_poisson(gp * rat_to_f64(b), &mut rng);
        for _ in 0..cnt {
            lines.push((fresh_x(&mut rng), -(i as i32) - 1));
        }
    }
    PointConfig { continuum, lines }
}

// y-ordering key: negative lines below the continuum band below positive
// lines; ties on a line break by x, reversed on negative lines.
fn rank_key(x: f64, level: Option<i32>) -> (i32, f64, f64) {
    match level {
        Some(l) if l < 0 => (-1, l as f64, -x),
        Some(l) => (1, l as f64, x),
        None => (0, 0.0, 0.0),
    }
}

/// Permutation induced by a configuration: position = x rank, value = y
/// rank under the tie rules.
pub fn points_to_permutation(config: &PointConfig) -> Result<Permutation> {
    let mut pts: Vec<(f64, Option<i32>, f64)> = Vec::with_capacity(config.total_points());
    for &(x, y) in &config.continuum {
        assert!(y > 0.0 && y < 1.0, "continuum y must be interior");
        pts.push((x, None, y));
    }
    for &(x, level) in &config.lines {
        assert!(level != 0, "line levels are nonzero");
        pts.push((x, Some(level), 0.0));
    }
    let n = pts.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if pts[i].0 == pts[j].0 {
                return Err(Error::DuplicateX(pts[i].0));
            }
        }
    }
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite x"));

    // order indices by the y key; continuum points compare by raw y
    let key = |p: &(f64, Option<i32>, f64)| -> (i32, f64, f64) {
        match p.1 {
            None => (0, p.2, 0.0),
            some => rank_key(p.0, some),
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key(&pts[a]).partial_cmp(&key(&pts[b])).expect("finite keys"));
    debug_assert!(
        order.windows(2).all(|w| key(&pts[w[0]]) < key(&pts[w[1]])),
        "ambiguous y ranking"
    );
    let mut images = vec![0usize; n];
    for (rank, &idx) in order.iter().enumerate() {
        images[idx] = rank + 1;
    }
    Permutation::from_one_line(images)
}

/// Shape of the configuration through insertion of the induced permutation.
pub fn br_partition(config: &PointConfig) -> Result<Partition> {
    if config.total_points() == 0 {
        return Ok(Partition::empty());
    }
    Ok(rsk_shape(&points_to_permutation(config)?))
}

/// Greene-type partition straight from the definition: the first `l` parts
/// sum to the largest subset decomposable into `l` increasing sequences.
/// A subset works for `l` exactly when its largest antichain (in the
/// can-follow order) has at most `l` points.
pub fn br_partition_bruteforce(config: &PointConfig) -> Result<Partition> {
    let n = config.total_points();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooManyPoints(n, BRUTE_FORCE_CAP));
    }
    if n == 0 {
        return Ok(Partition::empty());
    }
    // (x, y, on_negative_line): increasing means x up, y up, equal y only
    // on nonnegative levels
    let mut pts: Vec<(f64, f64, bool)> = Vec::new();
    for &(x, y) in &config.continuum {
        pts.push((x, y, false));
    }
    for &(x, level) in &config.lines {
        pts.push((x, level as f64, level < 0));
    }
    let precedes = |a: usize, b: usize| -> bool {
        let (xa, ya, nega) = pts[a];
        let (xb, yb, _) = pts[b];
        xa < xb && (ya < yb || (ya == yb && !nega))
    };
    // comparability masks
    let mut comp = vec![0usize; n];
    for a in 0..n {
        for b in 0..n {
            if a != b && (precedes(a, b) || precedes(b, a)) {
                comp[a] |= 1 << b;
            }
        }
    }
    // largest antichain inside every subset
    let full = (1usize << n) - 1;
    let mut max_antichain = vec![0u32; full + 1];
    for mask in 1..=full {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let with_i = 1 + max_antichain[rest & !comp[i]];
        max_antichain[mask] = max_antichain[rest].max(with_i);
    }
    let mut layer_sizes = Vec::new();
    let mut prev = 0usize;
    for l in 1..=n as u32 {
        let best = (0..=full)
            .filter(|&mask| max_antichain[mask] <= l)
            .map(|mask: usize| mask.count_ones() as usize)
            .max()
            .unwrap_or(0);
        layer_sizes.push(best - prev);
        prev = best;
        if best == n {
            break;
        }
    }
    let parts: Vec<usize> = layer_sizes.into_iter().take_while(|&p| p > 0).collect();
    Partition::new(parts)
}

/// Exact shape probability with the `e^{-gamma_plus}` prefactor carried
/// symbolically: the coefficient is
/// `gamma_plus^{|shape|} f_shape S~_shape / |shape|!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeProbability {
    pub coefficient: Rat,
    pub gamma_plus: Rat,
}

impl ShapeProbability {
    /// Numeric probability `coefficient * e^{-gamma_plus}`.
    pub fn value(&self) -> f64 {
        rat_to_f64(&self.coefficient) * (-rat_to_f64(&self.gamma_plus)).exp()
    }
}

pub fn br_shape_probability(
    shape: &Partition,
    gamma_plus: &Rat,
    p_minus: &ShuffleParams,
) -> ShapeProbability {
    let size = shape.size();
    let coefficient = rat_pow(gamma_plus, size)
        * Rat::from_integer(standard_tableau_count(shape))
        * extended_schur(p_minus, shape)
        / Rat::from_integer(factorial(size));
    ShapeProbability {
        coefficient,
        gamma_plus: gamma_plus.clone(),
    }
}
