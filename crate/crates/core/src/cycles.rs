//! Cycle structure after shuffles: exact cycle-type laws from the cycle
//! index generating function, fixed-point expectations, mixing-distance
//! bounds, and the Poisson-plus-geometrics limit laws.
//!
//! The cycle index factors over cycle lengths: for each length `i` the
//! count generating function is `exp(sum_j w^j c_{i,j} / (i j))` with
//! `c_{i,j} = sum_{d | i} mu(d) p~_{jd}^{i/d}`, and the probability of a
//! cycle type multiplies one coefficient per length.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::combinatorics::{moebius, parse_partition, partitions_of, Partition};
use crate::error::{Error, Result};
use crate::rational::{format_rat, parse_rat, rat_pow, rat_to_f64};
use crate::series::TruncatedSeries;
use crate::shuffle::ExactDistribution;
use crate::symmetric::{extended_power_sum, ShuffleParams};
use crate::{Int, Rat};

pub const DEFAULT_DECK_CAP: usize = 30;

/// Exact law of the cycle type of a shuffled deck.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleTypeDistribution {
    deck_size: usize,
    probs: BTreeMap<Partition, Rat>,
}

impl CycleTypeDistribution {
    pub fn deck_size(&self) -> usize {
        self.deck_size
    }

    pub fn probs(&self) -> &BTreeMap<Partition, Rat> {
        &self.probs
    }

    pub fn prob_of(&self, shape: &Partition) -> Rat {
        self.probs.get(shape).cloned().unwrap_or_else(Rat::zero)
    }

    /// Marginal law of the number of `i`-cycles.
    pub fn count_marginal(&self, i: usize) -> BTreeMap<usize, Rat> {
        let mut out = BTreeMap::new();
        for (shape, p) in &self.probs {
            *out.entry(shape.multiplicity(i)).or_insert_with(Rat::zero) += p;
        }
        out
    }

    /// Expected number of fixed points under this law.
    pub fn fixed_point_expectation(&self) -> Rat {
        self.probs.iter().fold(Rat::zero(), |acc, (shape, p)| {
            acc + Rat::from_integer(Int::from(shape.multiplicity(1))) * p
        })
    }

    /// CSV rows `cycle_type,probability` with types like `3+2+1`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("cycle_type,probability\n");
        for (shape, p) in &self.probs {
            s.push_str(&format!("{},{}\n", shape, format_rat(p)));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut probs = BTreeMap::new();
        let mut deck_size = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with("cycle_type")) {
                continue;
            }
            let (shape_s, prob_s) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad csv row: {line:?}")))?;
            let shape = parse_partition(shape_s)?;
            if *deck_size.get_or_insert(shape.size()) != shape.size() {
                return Err(Error::Parse("mixed deck sizes in csv".into()));
            }
            probs.insert(shape, parse_rat(prob_s)?);
        }
        let deck_size = deck_size.ok_or_else(|| Error::Parse("empty cycle csv".into()))?;
        Ok(CycleTypeDistribution { deck_size, probs })
    }
}

/// `c_{i,j} = sum_{d | i} mu(d) p~_{jd}^{i/d}` where `p~` is indexed from 1.
fn cycle_factor_coefficient(ptilde: &[Rat], i: usize, j: usize) -> Rat {
    let mut acc = Rat::zero();
    for d in 1..=i {
        if !i.is_multiple_of(d) {
            continue;
        }
        let mu = moebius(d as u64);
        if mu == 0 {
            continue;
        }
        let base = rat_pow(&ptilde[j * d - 1], i / d);
        if mu > 0 {
            acc += base;
        } else {
            acc -= base;
        }
    }
    acc
}

/// Per-length count generating functions `[w^m] exp(sum_j w^j c_{i,j}/(ij))`
/// for `i = 1..=n`, each truncated at degree `n / i`.
fn cycle_count_series(params: &ShuffleParams, n: usize) -> Vec<TruncatedSeries<Rat>> {
    let ptilde: Vec<Rat> = (1..=n).map(|k| extended_power_sum(params, k)).collect();
    (1..=n)
        .map(|i| {
            let deg = n / i;
            let mut log_coeffs = vec![Rat::zero(); deg + 1];
            for (j, c) in log_coeffs.iter_mut().enumerate().skip(1) {
                *c = cycle_factor_coefficient(&ptilde, i, j)
                    / Rat::from_integer(Int::from(i * j));
            }
            TruncatedSeries::from_coeffs(log_coeffs).exp()
        })
        .collect()
}

/// Exact cycle-type law extracted from the cycle index generating function.
pub fn cycle_type_distribution(
    params: &ShuffleParams,
    n: usize,
    cap: usize,
) -> Result<CycleTypeDistribution> {
    if n > cap {
        return Err(Error::CapExceeded(n, cap));
    }
    let factors = cycle_count_series(params, n);
    let mut probs = BTreeMap::new();
    for shape in partitions_of(n) {
        let mut p = Rat::one();
        let mut i = 0usize;
        while i < shape.len() {
            let part = shape.part(i);
            let mut mult = 1usize;
            while i + mult < shape.len() && shape.part(i + mult) == part {
                mult += 1;
            }
            p *= factors[part - 1].coeff(mult);
            i += mult;
        }
        if !p.is_zero() {
            probs.insert(shape, p);
        }
    }
    Ok(CycleTypeDistribution {
        deck_size: n,
        probs,
    })
}

/// Expected number of fixed points after one shuffle: the sum of the first
/// `n` extended power sums.
pub fn expected_fixed_points(params: &ShuffleParams, n: usize) -> Rat {
    assert!(n >= 1);
    (1..=n).fold(Rat::zero(), |acc, j| acc + extended_power_sum(params, j))
}

/// Upper bound on the separation distance of `k` shuffle applications:
/// `binomial(n, 2) (sum alpha_i^2 + sum beta_i^2)^k`.
pub fn separation_bound(params: &ShuffleParams, k: usize, n: usize) -> Rat {
    assert!(k >= 1 && n >= 1);
    Rat::from_integer(crate::rational::binomial(n, 2)) * rat_pow(&params.collision_weight(), k)
}

/// Exact separation and total-variation distance from uniform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distances {
    pub separation: Rat,
    pub total_variation: Rat,
}

/// Both distances, maximizing / summing over all `n!` permutations.
pub fn exact_distances(dist: &ExactDistribution) -> Distances {
    let n = dist.deck_size();
    let uniform = ExactDistribution::uniform(n);
    let u = Rat::new(Int::one(), crate::rational::factorial(n));
    let mut separation = Rat::zero();
    let mut tv = Rat::zero();
    for perm in uniform.probs().keys() {
        let p = dist.prob_of(perm);
        let gap = Rat::one() - p.clone() / u.clone();
        if gap > separation {
            separation = gap;
        }
        tv += (p - u.clone()).abs();
    }
    tv /= Rat::from_integer(Int::from(2));
    Distances {
        separation,
        total_variation: tv,
    }
}

/// Limit law of the number of `i`-cycles for the uniform-pile family
/// (`beta` empty, `alpha_1 = ... = alpha_q = (1-gamma)/q`): a Poisson
/// convolved with a fixed number of geometrics. `u = 1` is the fixed-size
/// deck limit; `u < 1` the geometrically randomized deck size.
#[derive(Debug, Clone)]
pub struct LimitCyclePmf {
    pub cycle_len: usize,
    pub piles: usize,
    pub gamma: Rat,
    pub u: Rat,
    /// `P(N_i = c)` for `c = 0..=cap`.
    pub pmf: Vec<f64>,
    /// Mass beyond `cap`.
    pub tail: f64,
}

pub fn limit_cycle_pmf(
    cycle_len: usize,
    piles: usize,
    gamma: &Rat,
    u: &Rat,
    cap: usize,
) -> Result<LimitCyclePmf> {
    assert!(cycle_len >= 1 && piles >= 1);
    assert!(*gamma >= Rat::zero() && *gamma <= Rat::one());
    assert!(*u > Rat::zero() && *u <= Rat::one());
    let i = cycle_len;
    // number of geometrics: (1/i) sum_{d|i} mu(d) q^{i/d}, a primitive
    // necklace count
    let mut necklaces: i64 = 0;
    for d in 1..=i {
        if i.is_multiple_of(d) {
            necklaces += moebius(d as u64) * (piles as i64).pow((i / d) as u32);
        }
    }
    if necklaces < 0 || necklaces % i as i64 != 0 {
        return Err(Error::NegativeMultiplicity(necklaces, i));
    }
    let g = (necklaces / i as i64) as usize;

    let one_minus_gamma = Rat::one() - gamma;
    let theta = rat_pow(
        &(u.clone() * &one_minus_gamma / Rat::from_integer(Int::from(piles))),
        i,
    );
    if theta.is_one() {
        return Err(Error::BoundaryParameter(
            "geometric parameter equals 1 (identity shuffle); no limit distribution".into(),
        ));
    }
    let poisson_mean = rat_to_f64(
        &(rat_pow(u, i) * (Rat::one() - rat_pow(&one_minus_gamma, i))
            / Rat::from_integer(Int::from(i))),
    );
    let theta = rat_to_f64(&theta);

    // negative binomial pmf for the sum of g geometrics on {0, 1, ...}
    let nb = |b: usize| -> f64 {
        if g == 0 {
            return f64::from(b == 0);
        }
        let mut binom = 1.0f64;
        for t in 0..b {
            binom *= (g + t) as f64 / (t + 1) as f64;
        }
        binom * (1.0 - theta).powi(g as i32) * theta.powi(b as i32)
    };
    let mut pois = Vec::with_capacity(cap + 1);
    let mut cur = (-poisson_mean).exp();
    pois.push(cur);
    for a in 1..=cap {
        cur *= poisson_mean / a as f64;
        pois.push(cur);
    }
    let pmf: Vec<f64> = (0..=cap)
        .map(|c| (0..=c).map(|a| pois[a] * nb(c - a)).sum())
        .collect();
    let tail = (1.0 - pmf.iter().sum::<f64>()).max(0.0);
    Ok(LimitCyclePmf {
        cycle_len,
        piles,
        gamma: gamma.clone(),
        u: u.clone(),
        pmf,
        tail,
    })
}

/// Cycle-type law for the uniform-pile family, through the simplified
/// product form: per length `i`, the counts are generated by
/// `(1 - v^i w)^{-g_i} e^{c_i w}` with `v = (1-gamma)/q`. An independent
/// code path from `cycle_type_distribution` for cross-checking.
pub fn mixed_riffle_cycle_index(
    piles: usize,
    gamma: &Rat,
    n: usize,
    cap: usize,
) -> Result<CycleTypeDistribution> {
    assert!(piles >= 1);
    if n > cap {
        return Err(Error::CapExceeded(n, cap));
    }
    let v = (Rat::one() - gamma) / Rat::from_integer(Int::from(piles));
    // per-length coefficient tables [w^m] G_i for m <= n/i
    let mut tables: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for i in 1..=n {
        let mut necklaces: i64 = 0;
        for d in 1..=i {
            if i % d == 0 {
                necklaces += moebius(d as u64) * (piles as i64).pow((i / d) as u32);
            }
        }
        let g = necklaces / i as i64;
        debug_assert!(g >= 0 && necklaces % i as i64 == 0);
        let g = g as usize;
        let vi = rat_pow(&v, i);
        let ci = (Rat::one() - rat_pow(&(Rat::one() - gamma), i))
            / Rat::from_integer(Int::from(i));
        let deg = n / i;
        let mut coeffs = Vec::with_capacity(deg + 1);
        for m in 0..=deg {
            let mut acc = Rat::zero();
            for a in 0..=m {
                let b = m - a;
                let nb_coeff = if a == 0 {
                    Rat::one()
                } else {
                    Rat::from_integer(crate::rational::binomial(g + a - 1, a))
                };
                acc += nb_coeff
                    * rat_pow(&vi, a)
                    * rat_pow(&ci, b)
                    / Rat::from_integer(crate::rational::factorial(b));
            }
            coeffs.push(acc);
        }
        tables.push(coeffs);
    }
    let mut probs = BTreeMap::new();
    for shape in partitions_of(n) {
        let mut p = Rat::one();
        for i in 1..=n {
            let m = shape.multiplicity(i);
            if m > 0 {
                p *= tables[i - 1][m].clone();
            }
        }
        if !p.is_zero() {
            probs.insert(shape, p);
        }
    }
    Ok(CycleTypeDistribution {
        deck_size: n,
        probs,
    })
}

/// Total-variation distance between two pmfs given as count -> mass maps,
/// with missing atoms treated as zero. Used by the limit-law comparisons.
pub fn pmf_tv_distance(a: &BTreeMap<usize, f64>, b: &BTreeMap<usize, f64>) -> f64 {
    let keys: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
    0.5 * keys
        .iter()
        .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}

impl CycleTypeDistribution {
    /// Count marginal as floats, for limit-law comparisons.
    pub fn count_marginal_f64(&self, i: usize) -> BTreeMap<usize, f64> {
        self.count_marginal(i)
            .into_iter()
            .map(|(k, v)| (k, rat_to_f64(&v)))
            .collect()
    }
}
