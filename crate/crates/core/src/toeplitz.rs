//! Toeplitz determinants over the truncated-series ring, the Gessel-type
//! and Cauchy-type identities for extended Schur functions, and the numeric
//! Poissonized gap probability.
//!
//! The doubly-infinite symbol is made finite by attaching one power of the
//! grading variable `t` to every evaluation point `x_r`: the coefficient
//! `c_j` of `z^j` is then an exact polynomial in `t`, and both sides of
//! each identity are compared coefficientwise with zero tolerance.

use num_traits::{One, Zero};

use crate::combinatorics::{centralizer_order, partitions_bounded};
use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::rational::rat_to_f64;
use crate::series::TruncatedSeries;
use crate::symmetric::{
    complete_homogeneous_sequence, extended_h_sequence, extended_power_sum, extended_schur,
    power_sum_at, schur_at, PointSet, ShuffleParams,
};
use crate::{Rat, RatSeries};

/// Symbol coefficients `c_j` for `j` in `[-(n-1), n-1]`, each a truncated
/// series in the grading variable, all sharing one truncation degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentWindow<T> {
    size: usize,
    entries: Vec<TruncatedSeries<T>>,
}

impl<T: Clone + Zero> LaurentWindow<T> {
    pub fn new(size: usize, entries: Vec<TruncatedSeries<T>>) -> Self {
        assert!(size >= 1);
        assert_eq!(entries.len(), 2 * size - 1, "window must be complete");
        let d = entries[0].truncation_degree();
        assert!(
            entries.iter().all(|e| e.truncation_degree() == d),
            "entries must share a truncation degree"
        );
        LaurentWindow { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, j: i64) -> &TruncatedSeries<T> {
        let idx = j + self.size as i64 - 1;
        &self.entries[idx as usize]
    }
}

/// Determinant of the `n x n` Toeplitz matrix with `(i, j)` entry `c_{j-i}`
/// (first row `c_0, c_1, ..., c_{n-1}`), over the truncated-series ring.
pub fn toeplitz_det<T>(window: &LaurentWindow<T>) -> TruncatedSeries<T>
where
    T: Clone + Zero + PartialEq + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<Output = T>,
{
    let n = window.size;
    let rows: Vec<Vec<TruncatedSeries<T>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| window.entry(j as i64 - i as i64).clone())
                .collect()
        })
        .collect();
    determinant(&rows)
}

/// Window of the Gessel symbol
/// `e^{gamma z} prod_r (1 + beta_r z) / ((1 - x_r t / z)(1 - alpha_r z))`:
/// `c_j = sum_k h~_k h_{k-j}(x) t^{k-j}`, truncated at `t^degree`.
pub fn gessel_symbol(
    params: &ShuffleParams,
    x: &PointSet,
    n: usize,
    degree: usize,
) -> LaurentWindow<Rat> {
    assert!(n >= 1);
    let h_ext = extended_h_sequence(params, n - 1 + degree);
    let h_x = complete_homogeneous_sequence(x, degree);
    let mut entries = Vec::with_capacity(2 * n - 1);
    for j in -(n as i64 - 1)..=(n as i64 - 1) {
        let coeffs: Vec<Rat> = (0..=degree)
            .map(|m| {
                let k = j + m as i64;
                if k < 0 {
                    Rat::zero()
                } else {
                    h_ext[k as usize].clone() * &h_x[m]
                }
            })
            .collect();
        entries.push(TruncatedSeries::from_coeffs(coeffs));
    }
    LaurentWindow::new(n, entries)
}

/// Left side of the Gessel-type identity:
/// `sum over shapes with at most n rows of S~_shape s_shape(x) t^{|shape|}`.
pub fn gessel_lhs(params: &ShuffleParams, x: &PointSet, n: usize, degree: usize) -> RatSeries {
    let mut coeffs = vec![Rat::zero(); degree + 1];
    for size in 0..=degree {
        for shape in partitions_bounded(size, n, size.max(1)) {
            let s = extended_schur(params, &shape);
            if s.is_zero() {
                continue;
            }
            coeffs[size] += s * schur_at(&shape, x);
        }
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// Right side: the Toeplitz determinant of the symbol window.
pub fn gessel_rhs(params: &ShuffleParams, x: &PointSet, n: usize, degree: usize) -> RatSeries {
    toeplitz_det(&gessel_symbol(params, x, n, degree))
}

/// Difference of the two sides of the Cauchy-type identity
/// `sum_shape S~_shape s_shape(x) = sum_shape p~_shape p_shape(x) / z_shape`,
/// both truncated at `t^degree`. Identically zero when the identity holds.
pub fn cauchy_residual(params: &ShuffleParams, x: &PointSet, degree: usize) -> RatSeries {
    let mut lhs = vec![Rat::zero(); degree + 1];
    let mut rhs = vec![Rat::zero(); degree + 1];
    for size in 0..=degree {
        for shape in partitions_bounded(size, size.max(1), size.max(1)) {
            lhs[size] += extended_schur(params, &shape) * schur_at(&shape, x);
            let ptilde: Rat = shape
                .parts()
                .iter()
                .map(|&k| extended_power_sum(params, k))
                .product();
            rhs[size] += ptilde * power_sum_at(&shape, x)
                / Rat::from_integer(centralizer_order(&shape));
        }
    }
    TruncatedSeries::from_coeffs(lhs) - TruncatedSeries::from_coeffs(rhs)
}

/// Numeric gap probability with its truncation certificate.
#[derive(Debug, Clone)]
pub struct GapProbability {
    /// `e^{-gamma_plus} * D_n(symbol)`.
    pub value: f64,
    /// Number of tail terms kept per symbol coefficient.
    pub truncation: usize,
    /// Bound on the absolute error from truncating the coefficient tails.
    pub error_bound: f64,
}

/// Probability that the largest part of the Poissonized shape is at most
/// `n`, as a Toeplitz determinant.
///
/// The shape law sums `det` blocks over partitions with at most `n` rows,
/// so bounding the largest part means running the same determinant on the
/// conjugate side: the symbol used here is
/// `e^{gamma_plus / z} e^{gamma z} prod_r (1 + alpha_r z)/(1 - beta_r z)`,
/// the alpha/beta-swapped (elementary) companion of the insertion symbol.
/// Coefficients are computed exactly and converted to floats only inside
/// the final determinant; the tail cut `M` is chosen so the determinant
/// perturbation bound lands under `eps`.
pub fn br_gap_probability(
    gamma_plus: &Rat,
    p_minus: &ShuffleParams,
    n: usize,
    eps: f64,
) -> Result<GapProbability> {
    assert!(eps > 0.0);
    assert!(*gamma_plus > Rat::zero());
    let swapped = p_minus.swapped();
    // the geometric factors of the swapped symbol are 1/(1 - beta_i z);
    // the coefficient bound E(1) needs every beta_i < 1
    if p_minus.beta().iter().any(|b| b.is_one()) {
        return Err(Error::SymbolDivergence(
            "a beta weight equals 1; the coefficient tail bound is unavailable".into(),
        ));
    }
    let gp = rat_to_f64(gamma_plus);
    if n == 0 {
        // empty determinant: P(shape is empty) exactly
        return Ok(GapProbability {
            value: (-gp).exp(),
            truncation: 0,
            error_bound: 0.0,
        });
    }

    // bound on the swapped coefficients: E(1) = e^gamma prod (1+a)/(1-b)
    let mut seq_bound = rat_to_f64(p_minus.gamma()).exp();
    for a in p_minus.alpha() {
        seq_bound *= 1.0 + rat_to_f64(a);
    }
    for b in p_minus.beta() {
        seq_bound /= 1.0 - rat_to_f64(b);
    }
    let entry_bound = gp.exp() * seq_bound;
    let n_fact: f64 = (1..=n).map(|k| k as f64).product();

    // smallest tail cut whose determinant perturbation bound clears eps
    let mut truncation = n;
    let mut error_bound = f64::INFINITY;
    while truncation < 1000 {
        let mut tail = 0.0f64;
        let mut term = 1.0f64;
        for m in 1..=(truncation + 60) {
            term *= gp / m as f64;
            if m > truncation {
                tail += term;
            }
        }
        let entry_err = seq_bound * tail;
        error_bound =
            (-gp).exp() * (n as f64) * n_fact * (entry_bound + entry_err).powi(n as i32 - 1) * entry_err;
        if error_bound <= eps {
            break;
        }
        truncation += 8;
    }
    if error_bound > eps {
        return Err(Error::SymbolDivergence(format!(
            "could not certify error below {eps} (best bound {error_bound})"
        )));
    }

    // exact coefficients, converted late
    let e_seq = extended_h_sequence(&swapped, truncation + n);
    let gp_pow_over_fact: Vec<Rat> = {
        let mut v = Vec::with_capacity(truncation + 1);
        let mut cur = Rat::one();
        v.push(cur.clone());
        for m in 1..=truncation {
            cur = cur * gamma_plus / Rat::from_integer(m.into());
            v.push(cur.clone());
        }
        v
    };
    let coeff = |j: i64| -> f64 {
        let mut acc = Rat::zero();
        for (m, w) in gp_pow_over_fact.iter().enumerate() {
            let k = j + m as i64;
            if (0..e_seq.len() as i64).contains(&k) {
                acc += w * &e_seq[k as usize];
            }
        }
        rat_to_f64(&acc)
    };
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| coeff(j as i64 - i as i64)).collect())
        .collect();
    let det = determinant(&rows);
    Ok(GapProbability {
        value: (-gp).exp() * det,
        truncation,
        error_bound,
    })
}

/// Shared battery of verification cases: every parameter set crossed with
/// small point sets. Exposed for the CLI and the acceptance suite.
pub fn verification_battery() -> Vec<ShuffleParams> {
    use crate::rational::rat;
    vec![
        ShuffleParams::gsr(2),
        ShuffleParams::new(vec![rat(1, 2)], vec![], rat(1, 2)).expect("valid"),
        ShuffleParams::new(vec![], vec![rat(1, 2), rat(1, 2)], Rat::zero()).expect("valid"),
        ShuffleParams::new(vec![rat(1, 3)], vec![rat(1, 3)], rat(1, 3)).expect("valid"),
    ]
}

/// Point sets used alongside the battery, at most three points each.
pub fn battery_point_sets() -> Vec<PointSet> {
    use crate::rational::rat;
    vec![
        PointSet::empty(),
        PointSet::new(vec![rat(1, 2)]),
        PointSet::new(vec![rat(1, 3), rat(1, 5)]),
        PointSet::new(vec![rat(1, 2), rat(1, 3), rat(1, 5)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int, rat_pow};

    #[test]
    fn toeplitz_trivial_symbol() {
        // c_j = delta_{j0}: determinant 1 for all sizes up to 8
        for n in 1..=8usize {
            let entries: Vec<RatSeries> = (-(n as i64 - 1)..=(n as i64 - 1))
                .map(|j| {
                    if j == 0 {
                        TruncatedSeries::one(2)
                    } else {
                        TruncatedSeries::zero(2)
                    }
                })
                .collect();
            let w = LaurentWindow::new(n, entries);
            assert_eq!(toeplitz_det(&w), TruncatedSeries::one(2), "n = {n}");
        }
    }

    #[test]
    fn toeplitz_two_by_two() {
        // c_0 = 1, c_1 = a t, c_{-1} = b t: det = 1 - ab t^2
        let a = rat_int(3);
        let b = rat(1, 5);
        let entries = vec![
            TruncatedSeries::monomial(b.clone(), 1, 2),
            TruncatedSeries::one(2),
            TruncatedSeries::monomial(a.clone(), 1, 2),
        ];
        let w = LaurentWindow::new(2, entries);
        let det = toeplitz_det(&w);
        let expected = TruncatedSeries::one(2) - TruncatedSeries::monomial(a * b, 2, 2);
        assert_eq!(det, expected);
    }

    #[test]
    fn symbol_degenerate_cases() {
        // degree 0: c_0 = 1 and every other entry vanishes
        let p = ShuffleParams::gsr(2);
        let x = PointSet::new(vec![rat(1, 2)]);
        let w = gessel_symbol(&p, &x, 3, 0);
        assert_eq!(*w.entry(0), TruncatedSeries::one(0));
        for j in [-2i64, -1, 1, 2] {
            if j > 0 {
                // positive entries carry h~_j at t^0
                assert_eq!(w.entry(j).coeff(0), extended_h_sequence(&p, 2)[j as usize]);
            } else {
                assert!(w.entry(j).is_zero(), "j = {j}");
            }
        }
        // empty point set: c_j = h~_j for j >= 0 and 0 for j < 0
        let w = gessel_symbol(&p, &PointSet::empty(), 3, 4);
        let h = extended_h_sequence(&p, 2 + 4);
        for j in -2i64..=2 {
            if j < 0 {
                assert!(w.entry(j).is_zero());
            } else {
                assert_eq!(
                    *w.entry(j),
                    TruncatedSeries::monomial(h[j as usize].clone(), 0, 4)
                );
            }
        }
    }

    #[test]
    fn symbol_matches_direct_factor_expansion() {
        // independent oracle: multiply the four Laurent factors directly,
        // tracking (z power, t degree) pairs
        use std::collections::BTreeMap;
        let p = ShuffleParams::gsr(2);
        let x = PointSet::new(vec![rat_int(1)]);
        let n = 2usize;
        let d = 3usize;

        type Laurent = BTreeMap<i64, Vec<Rat>>; // z power -> t coefficients
        let zero_t = || vec![Rat::zero(); 4];
        let mul = |a: &Laurent, b: &Laurent| -> Laurent {
            let mut out: Laurent = BTreeMap::new();
            for (za, ca) in a {
                for (zb, cb) in b {
                    let entry = out.entry(za + zb).or_insert_with(zero_t);
                    for (i, va) in ca.iter().enumerate() {
                        for (j, vb) in cb.iter().enumerate() {
                            if i + j <= d {
                                entry[i + j] += va.clone() * vb;
                            }
                        }
                    }
                }
            }
            // clip what can never reach the window
            out.retain(|z, c| {
                (0..=d).any(|td| {
                    !c[td].is_zero() && (z - (d - td) as i64) < n as i64 && *z >= -(d as i64)
                })
            });
            out
        };

        // factor 1: exp(gamma z) is trivial here (gamma = 0) -> 1
        let mut sym: Laurent = BTreeMap::new();
        sym.insert(0, {
            let mut c = zero_t();
            c[0] = Rat::one();
            c
        });
        // factors 1/(1 - a z) for each alpha: sum_k a^k z^k
        for a in p.alpha() {
            let mut f: Laurent = BTreeMap::new();
            for k in 0..=(n as i64 - 1 + d as i64) {
                let mut c = zero_t();
                c[0] = rat_pow(a, k as usize);
                f.insert(k, c);
            }
            sym = mul(&sym, &f);
        }
        // factors 1/(1 - x t / z): sum_m x^m t^m z^{-m}
        for xr in x.points() {
            let mut f: Laurent = BTreeMap::new();
            for m in 0..=d {
                let mut c = zero_t();
                c[m] = rat_pow(xr, m);
                f.insert(-(m as i64), c);
            }
            sym = mul(&sym, &f);
        }

        let w = gessel_symbol(&p, &x, n, d);
        for j in -(n as i64 - 1)..=(n as i64 - 1) {
            let got = w.entry(j);
            let oracle = sym.get(&j).cloned().unwrap_or_else(zero_t);
            assert_eq!(got.coeffs(), &oracle[..], "j = {j}");
        }
    }

    #[test]
    fn gessel_identity_battery() {
        for p in verification_battery() {
            for x in battery_point_sets() {
                for n in 1..=4usize {
                    let lhs = gessel_lhs(&p, &x, n, 6);
                    let rhs = gessel_rhs(&p, &x, n, 6);
                    assert_eq!(lhs, rhs, "params {p:?}, |x| = {}, n = {n}", x.len());
                }
            }
        }
    }

    #[test]
    fn gessel_lhs_stabilizes_beyond_degree() {
        let p = ShuffleParams::new(vec![rat(1, 3)], vec![rat(1, 3)], rat(1, 3)).unwrap();
        let x = PointSet::new(vec![rat(1, 3), rat(1, 5)]);
        let d = 4usize;
        let base = gessel_lhs(&p, &x, d, d);
        for n in (d + 1)..=(d + 3) {
            assert_eq!(gessel_lhs(&p, &x, n, d), base);
        }
    }

    #[test]
    fn gessel_single_row_geometric_check() {
        // n = 1, alpha = (a), x = (x1): both sides are sum_m (a x1)^m t^m
        let a = rat(1, 2);
        let p = ShuffleParams::new(vec![a.clone()], vec![], rat(1, 2)).unwrap();
        let x = PointSet::new(vec![rat(1, 3)]);
        let d = 5usize;
        let lhs = gessel_lhs(&p, &x, 1, d);
        let rhs = gessel_rhs(&p, &x, 1, d);
        assert_eq!(lhs, rhs);
        // rhs = c_0 directly for the 1x1 window
        let h = extended_h_sequence(&p, d);
        for m in 0..=d {
            assert_eq!(lhs.coeff(m), h[m].clone() * rat_pow(&rat(1, 3), m));
        }
    }

    #[test]
    fn cauchy_residual_vanishes() {
        for p in verification_battery() {
            for x in battery_point_sets() {
                let r = cauchy_residual(&p, &x, 5);
                assert!(r.is_zero(), "params {p:?}, |x| = {}: residual {r:?}", x.len());
            }
        }
        // degree 0 is trivially zero
        let r = cauchy_residual(&ShuffleParams::gsr(2), &PointSet::empty(), 0);
        assert!(r.is_zero());
    }

    #[test]
    fn gap_probability_plancherel_bessel_value() {
        // gamma+ = 1, uniform minus-params: e^{-1} sum_m 1/(m!)^2
        let g = br_gap_probability(&Rat::one(), &ShuffleParams::uniform(), 1, 1e-9).unwrap();
        let bessel: f64 = (0..40)
            .map(|m| {
                let f: f64 = (1..=m).map(|k| k as f64).product();
                1.0 / (f * f)
            })
            .sum();
        assert!((g.value - (-1.0f64).exp() * bessel).abs() < 1e-9 + g.error_bound);
    }

    #[test]
    fn gap_probability_limits() {
        // tiny gamma+: empty shape almost surely
        let g = br_gap_probability(&rat(1, 1_000_000), &ShuffleParams::gsr(2), 1, 1e-7).unwrap();
        assert!((g.value - 1.0).abs() < 1e-5);
        // large n: all mass below
        let g = br_gap_probability(&rat(1, 2), &ShuffleParams::gsr(2), 10, 1e-9).unwrap();
        assert!((g.value - 1.0).abs() < 1e-8);
    }

    #[test]
    fn gap_probability_monotone_in_n() {
        let gp = rat_int(2);
        let p = ShuffleParams::new(vec![rat(1, 3)], vec![rat(1, 3)], rat(1, 3)).unwrap();
        let mut prev = br_gap_probability(&gp, &p, 0, 1e-8).unwrap().value;
        assert!(prev > 0.0);
        for n in 1..=10 {
            let cur = br_gap_probability(&gp, &p, n, 1e-8).unwrap().value;
            assert!(cur + 2e-8 >= prev, "n = {n}: {cur} < {prev}");
            assert!(cur <= 1.0 + 1e-8);
            prev = cur;
        }
    }

    #[test]
    fn gap_probability_divergent_symbol() {
        let reversal = ShuffleParams::new(vec![], vec![Rat::one()], Rat::zero()).unwrap();
        assert!(matches!(
            br_gap_probability(&Rat::one(), &reversal, 2, 1e-6),
            Err(Error::SymbolDivergence(_))
        ));
    }

    #[test]
    fn gap_probability_matches_truncated_shape_sum() {
        // sum the exact shape law over largest part <= n; the shape size is
        // Poisson(gamma_plus), so truncating at size 12 with gamma_plus =
        // 1/2 leaves a vanishing tail
        use crate::combinatorics::partitions_of;
        use crate::points::br_shape_probability;
        let gp = rat(1, 2);
        let poisson_tail = 1e-13; // P(Poisson(1/2) > 12)
        for params in [
            ShuffleParams::gsr(2),
            ShuffleParams::new(vec![rat(1, 3)], vec![rat(1, 3)], rat(1, 3)).unwrap(),
            ShuffleParams::new(vec![], vec![rat(1, 2), rat(1, 2)], Rat::zero()).unwrap(),
        ] {
            for n in 1..=4usize {
                let mut total = Rat::zero();
                for size in 0..=12usize {
                    for shape in partitions_of(size) {
                        if shape.part(0) <= n {
                            total += br_shape_probability(&shape, &gp, &params).coefficient;
                        }
                    }
                }
                let summed = rat_to_f64(&total) * (-0.5f64).exp();
                let gap = br_gap_probability(&gp, &params, n, 1e-10).unwrap();
                assert!(
                    (summed - gap.value).abs() <= gap.error_bound + poisson_tail + 1e-12,
                    "params {params:?}, n = {n}: sum {summed} vs det {}",
                    gap.value
                );
            }
        }
    }
}
