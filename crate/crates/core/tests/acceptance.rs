//! Acceptance suite: one test per verification criterion, each printing a
//! pass line with its headline numbers. Everything exact is compared with
//! zero tolerance; Monte Carlo comparisons state their sigma rule inline.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};

use shuffle_sym::combinatorics::{partitions_of, Partition, Permutation};
use shuffle_sym::cycles::{
    cycle_type_distribution, exact_distances, expected_fixed_points, limit_cycle_pmf,
    pmf_tv_distance, separation_bound, DEFAULT_DECK_CAP,
};
use shuffle_sym::points::{br_partition, br_partition_bruteforce, br_shape_probability, sample_br};
use shuffle_sym::rational::{rat, rat_int, rat_to_f64};
use shuffle_sym::rsk::{brkv_insert, brkv_inverse, maj_weight, rsk, satisfies_brkv_conditions, standard_tableaux, Tableau};
use shuffle_sym::shuffle::{
    exact_shuffle_distribution, sample_shuffle, EnumerationLimits, ExactDistribution, SignedWord,
};
use shuffle_sym::symmetric::{extended_schur, principal_specialization, ShuffleParams};
use shuffle_sym::toeplitz::{
    battery_point_sets, br_gap_probability, cauchy_residual, gessel_lhs, gessel_rhs,
    verification_battery,
};
use shuffle_sym::{Int, Rat};

fn battery() -> Vec<ShuffleParams> {
    verification_battery()
}

fn limits() -> EnumerationLimits {
    EnumerationLimits::default()
}

#[test]
fn criterion_01_recording_tableau_law() {
    let start = Instant::now();
    let mut checked = 0usize;
    for params in battery() {
        for n in 1..=4usize {
            let dist = exact_shuffle_distribution(&params, n, &limits()).unwrap();
            let law: BTreeMap<Tableau, Rat> = dist.pushforward(|pi| rsk(pi).1);
            for shape in partitions_of(n) {
                let expected = extended_schur(&params, &shape);
                for q in standard_tableaux(&shape) {
                    let got = law.get(&q).cloned().unwrap_or_else(Rat::zero);
                    assert_eq!(got, expected, "params {params:?}, Q = {q:?}");
                    checked += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "runtime budget exceeded: {elapsed:?}");
    println!(
        "criterion 01 (recording-tableau law): PASS — {checked} tableau probabilities exact, {:?}",
        elapsed
    );
}

#[test]
fn criterion_02_shape_law() {
    let start = Instant::now();
    let mut checked = 0usize;
    for params in battery() {
        for n in 1..=5usize {
            let dist = exact_shuffle_distribution(&params, n, &limits()).unwrap();
            let law = dist.pushforward(|pi| rsk(pi).0.shape());
            for shape in partitions_of(n) {
                let expected = Rat::from_integer(shuffle_sym::combinatorics::standard_tableau_count(
                    &shape,
                )) * extended_schur(&params, &shape);
                let got = law.get(&shape).cloned().unwrap_or_else(Rat::zero);
                assert_eq!(got, expected, "params {params:?}, shape {shape}");
                checked += 1;
            }
        }
    }
    println!(
        "criterion 02 (shape law): PASS — {checked} shape probabilities exact, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_03_gessel_identity() {
    let start = Instant::now();
    let mut cases = 0usize;
    for params in battery() {
        for x in battery_point_sets() {
            for n in 1..=4usize {
                let lhs = gessel_lhs(&params, &x, n, 6);
                let rhs = gessel_rhs(&params, &x, n, 6);
                assert_eq!(lhs, rhs, "params {params:?}, |x| = {}, n = {n}", x.len());
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "runtime budget exceeded: {elapsed:?}");
    println!(
        "criterion 03 (Gessel-type identity): PASS — {cases} cases coefficientwise exact at degree 6, {:?}",
        elapsed
    );
}

#[test]
fn criterion_04_cauchy_identity() {
    let start = Instant::now();
    let mut cases = 0usize;
    for params in battery() {
        for x in battery_point_sets() {
            let residual = cauchy_residual(&params, &x, 6);
            assert!(residual.is_zero(), "params {params:?}, |x| = {}", x.len());
            cases += 1;
        }
    }
    println!(
        "criterion 04 (Cauchy-type identity): PASS — {cases} residuals identically zero at degree 6, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_05_cycle_index_and_reversal() {
    let start = Instant::now();
    for params in battery() {
        for n in 1..=5usize {
            let dist = exact_shuffle_distribution(&params, n, &limits()).unwrap();
            let extracted = cycle_type_distribution(&params, n, DEFAULT_DECK_CAP).unwrap();
            assert_eq!(
                dist.pushforward(|pi| pi.cycle_type()),
                extracted.probs().clone(),
                "cycle index, params {params:?}, n = {n}"
            );
            let swapped = cycle_type_distribution(&params.swapped(), n, DEFAULT_DECK_CAP).unwrap();
            assert_eq!(
                dist.pushforward(|pi| pi.reverse_deck().cycle_type()),
                swapped.probs().clone(),
                "reversal duality, params {params:?}, n = {n}"
            );
        }
    }
    println!(
        "criterion 05 (cycle index + reversal duality): PASS — exact at n <= 5 across the battery, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_06_fixed_points() {
    let start = Instant::now();
    // exact: formula equals the enumeration expectation
    for params in battery() {
        for n in 1..=5usize {
            let dist = exact_shuffle_distribution(&params, n, &limits()).unwrap();
            let mut expect = Rat::zero();
            for (pi, w) in dist.probs() {
                let fixed = (1..=n).filter(|&i| pi.image(i) == i).count();
                expect += Rat::from_integer(Int::from(fixed)) * w;
            }
            assert_eq!(expected_fixed_points(&params, n), expect, "params {params:?}, n = {n}");
        }
    }
    // Monte Carlo at n = 52: mean within 3 empirical sigma of the formula
    let params = ShuffleParams::gsr(2);
    let n = 52usize;
    let samples = 100_000u64;
    let expected = rat_to_f64(&expected_fixed_points(&params, n));
    let mut sum = 0.0f64;
    let mut sumsq = 0.0f64;
    for seed in 0..samples {
        let pi = sample_shuffle(&params, n, 600_000 + seed);
        let fixed = (1..=n).filter(|&i| pi.image(i) == i).count() as f64;
        sum += fixed;
        sumsq += fixed * fixed;
    }
    let mean = sum / samples as f64;
    let var = (sumsq / samples as f64 - mean * mean).max(0.0);
    let sigma = (var / samples as f64).sqrt();
    assert!(
        (mean - expected).abs() < 3.0 * sigma,
        "mean {mean} vs {expected} (3 sigma = {})",
        3.0 * sigma
    );
    println!(
        "criterion 06 (fixed points): PASS — exact at n <= 5; MC mean {mean:.4} vs {expected:.4} within 3 sigma, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_07_convolution() {
    let start = Instant::now();
    let half = ShuffleParams::new(vec![rat(1, 2)], vec![], rat(1, 2)).unwrap();
    let quarter = ShuffleParams::new(vec![rat(1, 4)], vec![], rat(3, 4)).unwrap();
    for n in 1..=5usize {
        let d = exact_shuffle_distribution(&half, n, &limits()).unwrap();
        assert_eq!(
            d.convolve(&d).unwrap(),
            exact_shuffle_distribution(&quarter, n, &limits()).unwrap(),
            "n = {n}"
        );
    }
    let gsr2 = ShuffleParams::gsr(2);
    let gsr4 = ShuffleParams::gsr(4);
    for n in 1..=4usize {
        let d = exact_shuffle_distribution(&gsr2, n, &limits()).unwrap();
        assert_eq!(
            d.convolve(&d).unwrap(),
            exact_shuffle_distribution(&gsr4, n, &limits()).unwrap(),
            "n = {n}"
        );
    }
    println!(
        "criterion 07 (convolution closures): PASS — both identities exact, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_08_mixing_bound() {
    let start = Instant::now();
    let mut cases = 0usize;
    for params in battery() {
        for n in 1..=4usize {
            let single = exact_shuffle_distribution(&params, n, &limits()).unwrap();
            let mut convolved = single.clone();
            for k in 1..=6usize {
                let d = exact_distances(&convolved);
                let bound = separation_bound(&params, k, n);
                assert!(
                    d.separation <= bound,
                    "params {params:?}, n = {n}, k = {k}: sep {} > bound {}",
                    d.separation,
                    bound
                );
                cases += 1;
                convolved = convolved.convolve(&single).unwrap();
            }
        }
    }
    println!(
        "criterion 08 (separation bound domination): PASS — {cases} (n, k) cases, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_09_limit_law() {
    let start = Instant::now();
    let gamma = rat(1, 2);
    let params = ShuffleParams::new(vec![rat(1, 2)], vec![], rat(1, 2)).unwrap();

    // part 2: TV to the fixed-size limit shrinks along n = 10, 20, 30 and
    // lands below 0.05 for the 1- and 2-cycle marginals
    let laws: BTreeMap<usize, _> = [10usize, 20, 30]
        .into_iter()
        .map(|n| (n, cycle_type_distribution(&params, n, DEFAULT_DECK_CAP).unwrap()))
        .collect();
    for i in 1..=2usize {
        let limit = limit_cycle_pmf(i, 1, &gamma, &Rat::one(), 40).unwrap();
        let mut limit_map: BTreeMap<usize, f64> =
            limit.pmf.iter().copied().enumerate().collect();
        limit_map.insert(41, limit.tail);
        let mut prev = f64::INFINITY;
        let mut final_tv = f64::NAN;
        for n in [10usize, 20, 30] {
            let tv = pmf_tv_distance(&laws[&n].count_marginal_f64(i), &limit_map);
            assert!(tv < prev, "TV not improving at n = {n} for i = {i}: {tv} vs {prev}");
            prev = tv;
            final_tv = tv;
        }
        assert!(final_tv < 0.05, "i = {i}: TV at n = 30 is {final_tv}");
    }

    // part 1: geometric deck-size mixture at u = 1/2, truncated at n = 25
    // with tail mass u^26, against the stated convolution law per atom
    let u = rat(1, 2);
    let tail_mass = 0.5f64.powi(26);
    for i in 1..=2usize {
        let mut mixture: BTreeMap<usize, f64> = BTreeMap::new();
        let mut weight = 0.5f64; // (1 - u) u^0
        mixture.insert(0, weight); // n = 0: no cycles at all
        for n in 1..=25usize {
            weight *= 0.5;
            let law = cycle_type_distribution(&params, n, DEFAULT_DECK_CAP).unwrap();
            for (count, p) in law.count_marginal_f64(i) {
                *mixture.entry(count).or_insert(0.0) += weight * p;
            }
        }
        let limit = limit_cycle_pmf(i, 1, &gamma, &u, 30).unwrap();
        for (c, &p) in limit.pmf.iter().enumerate() {
            let got = mixture.get(&c).copied().unwrap_or(0.0);
            assert!(
                (got - p).abs() < 1e-3 + tail_mass,
                "i = {i}, atom {c}: mixture {got} vs limit {p}"
            );
        }
    }
    println!(
        "criterion 09 (limit laws): PASS — TV(n=30) < 0.05 with monotone improvement; mixture atoms within 1e-3, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_10_point_process() {
    let start = Instant::now();
    let gamma_plus = rat_int(2);
    let params = ShuffleParams::gsr(2);
    let samples = 100_000u64;

    // Monte Carlo shape frequencies vs the exact law, 3 sigma per shape
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    let mut largest_part_at_most = [0u64; 7]; // index n = 0..6
    for seed in 0..samples {
        let config = sample_br(&gamma_plus, &params, 40_000_000 + seed);
        let shape = br_partition(&config).unwrap();
        for n in 0..=6usize {
            if shape.part(0) <= n {
                largest_part_at_most[n] += 1;
            }
        }
        *counts.entry(shape).or_insert(0) += 1;
    }
    for size in 0..=4usize {
        for shape in partitions_of(size) {
            let p = br_shape_probability(&shape, &gamma_plus, &params).value();
            let observed = *counts.get(&shape).unwrap_or(&0) as f64 / samples as f64;
            let sigma = (p * (1.0 - p) / samples as f64).sqrt();
            assert!(
                (observed - p).abs() <= 3.0 * sigma,
                "shape {shape}: observed {observed}, expected {p}, 3 sigma = {}",
                3.0 * sigma
            );
        }
    }

    // Greene equality on 500 sampled configurations with at most 8 points
    let mut checked = 0usize;
    let mut seed = 0u64;
    let stress = [
        params.clone(),
        ShuffleParams::new(vec![], vec![rat(1, 2), rat(1, 2)], Rat::zero()).unwrap(),
        ShuffleParams::new(vec![rat(1, 3)], vec![rat(1, 3)], rat(1, 3)).unwrap(),
    ];
    while checked < 500 {
        let p = &stress[(seed % 3) as usize];
        let config = sample_br(&gamma_plus, p, 77_000_000 + seed);
        seed += 1;
        if config.total_points() > 8 {
            continue;
        }
        assert_eq!(
            br_partition_bruteforce(&config).unwrap(),
            br_partition(&config).unwrap(),
            "Greene mismatch at {config:?}"
        );
        checked += 1;
    }

    // Toeplitz gap probability vs the MC estimate of P(largest part <= n)
    for n in 1..=6usize {
        let gap = br_gap_probability(&gamma_plus, &params, n, 1e-8).unwrap();
        let observed = largest_part_at_most[n] as f64 / samples as f64;
        let sigma = (gap.value * (1.0 - gap.value) / samples as f64)
            .max(1e-12)
            .sqrt();
        assert!(
            (observed - gap.value).abs() <= 3.0 * sigma + gap.error_bound,
            "n = {n}: observed {observed}, determinant {}, 3 sigma = {}",
            gap.value,
            3.0 * sigma
        );
    }
    println!(
        "criterion 10 (point process): PASS — shape law within 3 sigma, 500/500 Greene matches, gap determinant within 3 sigma for n = 1..6, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_11_maj_pushforward() {
    let start = Instant::now();
    let pq_values = [rat_int(1), rat(1, 2), rat_int(2)];
    for n in 1..=5usize {
        let perms: Vec<Permutation> = ExactDistribution::uniform(n)
            .probs()
            .keys()
            .cloned()
            .collect();
        let shapes: Vec<Partition> = partitions_of(n);
        for k in 1..=3u64 {
            for l in 1..=3u64 {
                for p in &pq_values {
                    for q in &pq_values {
                        // unnormalized weights grouped by RSK shape
                        let mut by_shape: BTreeMap<Partition, Rat> = BTreeMap::new();
                        let mut z = Rat::zero();
                        for pi in &perms {
                            let w = maj_weight(pi, p, q, k, l).unwrap();
                            z += w.clone();
                            *by_shape
                                .entry(rsk(pi).0.shape())
                                .or_insert_with(Rat::zero) += w;
                        }
                        // Schur-side weights with the same normalization
                        let mut schur_z = Rat::zero();
                        let mut schur_w: BTreeMap<Partition, Rat> = BTreeMap::new();
                        for shape in &shapes {
                            let w = principal_specialization(shape, p, k as usize)
                                * principal_specialization(shape, q, l as usize);
                            schur_z += w.clone();
                            schur_w.insert(shape.clone(), w);
                        }
                        for shape in &shapes {
                            let lhs = by_shape.get(shape).cloned().unwrap_or_else(Rat::zero)
                                * schur_z.clone();
                            let rhs = schur_w[shape].clone() * z.clone();
                            assert_eq!(
                                lhs, rhs,
                                "n={n} k={k} l={l} p={p} q={q} shape {shape}"
                            );
                        }
                        if p.is_one() && q.is_one() {
                            let expect = shuffle_sym::rational::binomial(
                                (k * l) as usize + n - 1,
                                n,
                            );
                            assert_eq!(z, Rat::from_integer(expect), "Z_n at p=q=1");
                        }
                    }
                }
            }
        }
    }
    println!(
        "criterion 11 (maj / q-binomial pushforward): PASS — exact for n <= 5, k,l <= 3, p,q in {{1, 1/2, 2}}, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_12_brkv_bijection() {
    let start = Instant::now();
    let mut words_checked = 0usize;
    for (alphabet, max_len) in [(&[-1i64, 1][..], 5usize), (&[-2, -1, 1, 2][..], 4)] {
        for n in 1..=max_len {
            // every word over the alphabet
            let mut stack: Vec<Vec<i64>> = vec![Vec::new()];
            for _ in 0..n {
                stack = stack
                    .into_iter()
                    .flat_map(|w| {
                        alphabet.iter().map(move |&s| {
                            let mut w2 = w.clone();
                            w2.push(s);
                            w2
                        })
                    })
                    .collect();
            }
            let mut images = std::collections::BTreeSet::new();
            for symbols in stack {
                let word = SignedWord::new(symbols);
                let (p, q) = brkv_insert(&word).unwrap();
                assert!(satisfies_brkv_conditions(&p));
                assert!(q.is_standard());
                assert_eq!(brkv_inverse(&p, &q).unwrap(), word, "round trip");
                assert!(images.insert((p, q)), "injectivity");
                words_checked += 1;
            }
            // image characterization: every condition-satisfying pair over
            // the alphabet is hit
            let mut pairs = 0usize;
            for shape in partitions_of(n) {
                let fillings = enumerate_fillings(&shape, alphabet);
                for p in fillings {
                    if !satisfies_brkv_conditions(&p) {
                        continue;
                    }
                    for q in standard_tableaux(&shape) {
                        assert!(images.contains(&(p.clone(), q)), "unreached pair");
                        pairs += 1;
                    }
                }
            }
            assert_eq!(pairs, images.len(), "image count at n = {n}");
        }
    }
    println!(
        "criterion 12 (signed insertion bijection): PASS — {words_checked} words round-trip with exact image match, {:?}",
        start.elapsed()
    );
}

fn enumerate_fillings(shape: &Partition, alphabet: &[i64]) -> Vec<Tableau> {
    let cells = shape.size();
    let mut out = Vec::new();
    let mut idx = vec![0usize; cells];
    'odometer: loop {
        let mut rows = Vec::new();
        let mut at = 0usize;
        for &p in shape.parts() {
            rows.push(idx[at..at + p].iter().map(|&i| alphabet[i]).collect::<Vec<_>>());
            at += p;
        }
        if let Ok(t) = Tableau::from_rows(rows) {
            out.push(t);
        }
        let mut pos = cells;
        loop {
            if pos == 0 {
                break 'odometer;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < alphabet.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
    out
}
