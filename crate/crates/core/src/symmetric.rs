//! Extended symmetric functions attached to a shuffle parameter triple,
//! plus classical Schur / power-sum evaluation at rational points.
//!
//! The extended complete homogeneous sequence is defined by its generating
//! function `e^{gamma z} prod_i (1 + beta_i z)/(1 - alpha_i z)`; extended
//! Schur values are the Jacobi-Trudi determinants in that sequence, and the
//! extended power sums are `1` for degree 1 and
//! `sum alpha_i^n + (-1)^{n+1} sum beta_i^n` beyond.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::rational::{factorial, format_rat, parse_rat, rat_pow};
use crate::series::TruncatedSeries;
use crate::{Int, Rat};

/// Parameter triple of a shuffle: weights for the positive symbols, the
/// negative symbols, and the fully-randomized zero symbol. All entries are
/// nonnegative exact rationals summing to exactly 1; violations are
/// rejected at construction rather than renormalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleParams {
    alpha: Vec<Rat>,
    beta: Vec<Rat>,
    gamma: Rat,
}

impl ShuffleParams {
    pub fn new(mut alpha: Vec<Rat>, mut beta: Vec<Rat>, gamma: Rat) -> Result<Self> {
        for w in alpha.iter().chain(beta.iter()).chain(std::iter::once(&gamma)) {
            if *w < Rat::zero() {
                return Err(Error::InvalidInput("negative shuffle weight".into()));
            }
        }
        let total: Rat = alpha.iter().chain(beta.iter()).fold(gamma.clone(), |acc, w| acc + w);
        if !total.is_one() {
            return Err(Error::InvalidInput(format!(
                "shuffle weights must sum to 1, got {}",
                format_rat(&total)
            )));
        }
        while alpha.last().is_some_and(Zero::is_zero) {
            alpha.pop();
        }
        while beta.last().is_some_and(Zero::is_zero) {
            beta.pop();
        }
        Ok(ShuffleParams { alpha, beta, gamma })
    }

    /// The Gilbert-Shannon-Reeds `k`-shuffle: `alpha_i = 1/k` for `i <= k`.
    pub fn gsr(k: usize) -> Self {
        assert!(k >= 1);
        let w = Rat::new(Int::one(), Int::from(k));
        ShuffleParams {
            alpha: vec![w; k],
            beta: Vec::new(),
            gamma: Rat::zero(),
        }
    }

    /// Fully-random shuffle (`gamma = 1`): the uniform measure on
    /// permutations.
    pub fn uniform() -> Self {
        ShuffleParams {
            alpha: Vec::new(),
            beta: Vec::new(),
            gamma: Rat::one(),
        }
    }

    pub fn alpha(&self) -> &[Rat] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Rat] {
        &self.beta
    }

    pub fn gamma(&self) -> &Rat {
        &self.gamma
    }

    /// Swap the roles of the positive and negative weights.
    pub fn swapped(&self) -> Self {
        ShuffleParams {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            gamma: self.gamma.clone(),
        }
    }

    /// `sum alpha_i^2 + sum beta_i^2`: the collision weight driving the
    /// separation-distance bound.
    pub fn collision_weight(&self) -> Rat {
        self.alpha
            .iter()
            .chain(self.beta.iter())
            .fold(Rat::zero(), |acc, w| acc + w * w)
    }

    /// Symbols with nonzero weight, ordered `-k < ... < -1 < 0 < 1 < ... < k`.
    pub fn support(&self) -> Vec<(i64, Rat)> {
        let mut syms = Vec::new();
        for (i, b) in self.beta.iter().enumerate().rev() {
            if !b.is_zero() {
                syms.push((-(i as i64 + 1), b.clone()));
            }
        }
        if !self.gamma.is_zero() {
            syms.push((0, self.gamma.clone()));
        }
        for (i, a) in self.alpha.iter().enumerate() {
            if !a.is_zero() {
                syms.push((i as i64 + 1, a.clone()));
            }
        }
        syms
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ParamsWire::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: ParamsWire =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("params json: {e}")))?;
        wire.try_into()
    }
}

/// JSON wire form: `{"alpha": ["1/2", ...], "beta": [...], "gamma": "p/q"}`.
#[derive(Serialize, Deserialize)]
struct ParamsWire {
    alpha: Vec<String>,
    beta: Vec<String>,
    gamma: String,
}

impl From<&ShuffleParams> for ParamsWire {
    fn from(p: &ShuffleParams) -> Self {
        ParamsWire {
            alpha: p.alpha.iter().map(format_rat).collect(),
            beta: p.beta.iter().map(format_rat).collect(),
            gamma: format_rat(&p.gamma),
        }
    }
}

impl TryFrom<ParamsWire> for ShuffleParams {
    type Error = Error;
    fn try_from(w: ParamsWire) -> Result<Self> {
        let alpha = w.alpha.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
        let beta = w.beta.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
        ShuffleParams::new(alpha, beta, parse_rat(&w.gamma)?)
    }
}

/// Evaluation points for classical symmetric polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    xs: Vec<Rat>,
}

impl PointSet {
    pub fn new(xs: Vec<Rat>) -> Self {
        PointSet { xs }
    }

    pub fn empty() -> Self {
        PointSet { xs: Vec::new() }
    }

    pub fn points(&self) -> &[Rat] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

/// Coefficients `h~_0 .. h~_kmax` of the extended complete homogeneous
/// generating function at the given parameters. `h~_0 = 1`, and for
/// normalized parameters `h~_1 = 1` as well.
pub fn extended_h_sequence(params: &ShuffleParams, kmax: usize) -> Vec<Rat> {
    let mut gf: TruncatedSeries<Rat> = TruncatedSeries::from_coeffs(
        (0..=kmax)
            .map(|k| rat_pow(params.gamma(), k) / Rat::from_integer(factorial(k)))
            .collect(),
    );
    for b in params.beta() {
        gf = gf * TruncatedSeries::linear(b, kmax);
    }
    for a in params.alpha() {
        gf = gf * TruncatedSeries::geometric(a, kmax);
    }
    gf.coeffs().to_vec()
}

/// Jacobi-Trudi determinant `det(h~_{lambda_i - i + j})` in the extended
/// complete homogeneous sequence: the probability that a shuffle produces
/// any one fixed recording tableau of that shape.
pub fn extended_schur(params: &ShuffleParams, shape: &Partition) -> Rat {
    let l = shape.len();
    if l == 0 {
        return Rat::one();
    }
    let h = extended_h_sequence(params, shape.part(0) + l);
    jacobi_trudi(&h, shape)
}

/// `det(h_{lambda_i - i + j})` for any homogeneous sequence with `h_0 = 1`
/// and `h_k = 0` for `k < 0`.
fn jacobi_trudi(h: &[Rat], shape: &Partition) -> Rat {
    let l = shape.len();
    if l == 0 {
        return Rat::one();
    }
    let entry = |i: usize, j: usize| -> Rat {
        let e = shape.part(i) as i64 - i as i64 + j as i64;
        if e < 0 {
            Rat::zero()
        } else {
            h[e as usize].clone()
        }
    };
    let rows: Vec<Vec<Rat>> = (0..l).map(|i| (0..l).map(|j| entry(i, j)).collect()).collect();
    determinant(&rows)
}

/// Extended power sum: `1` for degree 1, otherwise
/// `sum alpha_i^n + (-1)^{n+1} sum beta_i^n`.
pub fn extended_power_sum(params: &ShuffleParams, n: usize) -> Rat {
    assert!(n >= 1);
    if n == 1 {
        return Rat::one();
    }
    let pos: Rat = params.alpha().iter().fold(Rat::zero(), |acc, a| acc + rat_pow(a, n));
    let neg: Rat = params.beta().iter().fold(Rat::zero(), |acc, b| acc + rat_pow(b, n));
    if n.is_multiple_of(2) {
        pos - neg
    } else {
        pos + neg
    }
}

/// Complete homogeneous values `h_0(x) .. h_kmax(x)` from the generating
/// function `prod_i 1/(1 - x_i t)`.
pub fn complete_homogeneous_sequence(x: &PointSet, kmax: usize) -> Vec<Rat> {
    let mut gf: TruncatedSeries<Rat> = TruncatedSeries::one(kmax);
    for xi in x.points() {
        gf = gf * TruncatedSeries::geometric(xi, kmax);
    }
    gf.coeffs().to_vec()
}

/// Classical Schur polynomial value at the given points, by Jacobi-Trudi.
/// Zero whenever the shape has more rows than there are points.
pub fn schur_at(shape: &Partition, x: &PointSet) -> Rat {
    if shape.len() > x.len() {
        return Rat::zero();
    }
    if shape.is_empty() {
        return Rat::one();
    }
    let h = complete_homogeneous_sequence(x, shape.part(0) + shape.len());
    jacobi_trudi(&h, shape)
}

/// `p_lambda(x) = prod_i p_{lambda_i}(x)` with `p_k(x) = sum_j x_j^k`.
pub fn power_sum_at(shape: &Partition, x: &PointSet) -> Rat {
    shape
        .parts()
        .iter()
        .map(|&k| x.points().iter().fold(Rat::zero(), |acc, xi| acc + rat_pow(xi, k)))
        .product()
}

/// Schur value at the geometric point set `(1, 1/base, ..., 1/base^{k-1})`.
pub fn principal_specialization(shape: &Partition, base: &Rat, k: usize) -> Rat {
    assert!(k >= 1);
    assert!(!base.is_zero());
    let inv = Rat::one() / base.clone();
    let mut xs = Vec::with_capacity(k);
    let mut cur = Rat::one();
    for _ in 0..k {
        xs.push(cur.clone());
        cur *= &inv;
    }
    schur_at(shape, &PointSet::new(xs))
}
