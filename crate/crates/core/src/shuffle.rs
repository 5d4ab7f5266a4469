//! Sampling and exact laws of parameterized shuffles.
//!
//! A shuffle draws an i.i.d. signed word (positive symbol `i` with weight
//! `alpha_i`, negative `-i` with weight `beta_i`, zero with weight `gamma`)
//! and converts it to a permutation: consecutive integers are written under
//! the symbols block by block in the order `... < -1 < 0 < 1 < ...`, with
//! negative blocks filled in decreasing position order, the zero block in a
//! uniformly random order, and positive blocks in increasing order.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::combinatorics::Permutation;
use crate::error::{Error, Result};
use crate::rational::{format_rat, parse_rat, rat_to_f64};
use crate::symmetric::ShuffleParams;
use crate::Rat;

/// Word over the signed alphabet; zero stands for the fully-mixed symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWord {
    symbols: Vec<i64>,
}

impl SignedWord {
    pub fn new(symbols: Vec<i64>) -> Self {
        SignedWord { symbols }
    }

    pub fn symbols(&self) -> &[i64] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn zero_count(&self) -> usize {
        self.symbols.iter().filter(|&&s| s == 0).count()
    }
}

/// Order in which the zero block's consecutive integers are written: the
/// `j`-th zero position (left to right) receives `base + slot[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroArrangement {
    slots: Vec<usize>,
}

impl ZeroArrangement {
    pub fn new(slots: Vec<usize>) -> Result<Self> {
        let r = slots.len();
        let mut seen = vec![false; r];
        for &s in &slots {
            if s >= r || seen[s] {
                return Err(Error::InvalidInput(format!("not an arrangement: {slots:?}")));
            }
            seen[s] = true;
        }
        Ok(ZeroArrangement { slots })
    }

    pub fn identity(r: usize) -> Self {
        ZeroArrangement {
            slots: (0..r).collect(),
        }
    }

    pub fn sample(r: usize, rng: &mut impl Rng) -> Self {
        let mut slots: Vec<usize> = (0..r).collect();
        slots.shuffle(rng);
        ZeroArrangement { slots }
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    /// All `r!` arrangements, for exact enumeration.
    pub fn all(r: usize) -> Vec<ZeroArrangement> {
        let mut out = Vec::new();
        let mut slots: Vec<usize> = (0..r).collect();
        fn rec(k: usize, slots: &mut Vec<usize>, out: &mut Vec<ZeroArrangement>) {
            if k == slots.len() {
                out.push(ZeroArrangement { slots: slots.clone() });
                return;
            }
            for i in k..slots.len() {
                slots.swap(k, i);
                rec(k + 1, slots, out);
                slots.swap(k, i);
            }
        }
        rec(0, &mut slots, &mut out);
        out.sort_by(|a, b| a.slots.cmp(&b.slots));
        out
    }
}

fn letter_rng(seed: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(0);
    rng
}

fn mix_rng(seed: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

fn sample_letters(params: &ShuffleParams, n: usize, rng: &mut impl Rng) -> SignedWord {
    let support = params.support();
    let weights: Vec<f64> = support.iter().map(|(_, w)| rat_to_f64(w)).collect();
    let mut symbols = Vec::with_capacity(n);
    for _ in 0..n {
        let mut u: f64 = rng.gen();
        let mut chosen = support.len() - 1;
        for (idx, w) in weights.iter().enumerate() {
            if u < *w {
                chosen = idx;
                break;
            }
            u -= w;
        }
        symbols.push(support[chosen].0);
    }
    SignedWord { symbols }
}

/// Draw the i.i.d. word of a shuffle. The letter stream is independent of
/// the zero-mix stream, so the same seed can reproduce each stage alone.
pub fn sample_word(params: &ShuffleParams, n: usize, seed: u64) -> SignedWord {
    sample_letters(params, n, &mut letter_rng(seed))
}

/// Deterministic word-to-permutation conversion with an explicit zero-block
/// arrangement.
pub fn place_word(word: &SignedWord, arrangement: &ZeroArrangement) -> Permutation {
    let n = word.len();
    assert_eq!(arrangement.slots.len(), word.zero_count(), "arrangement size");
    let mut out = vec![0usize; n];
    let mut next = 1usize;

    let mut negatives: Vec<i64> = word.symbols.iter().copied().filter(|&s| s < 0).collect();
    negatives.sort_unstable();
    negatives.dedup();
    for s in negatives {
        let positions: Vec<usize> = (0..n).filter(|&i| word.symbols[i] == s).collect();
        let m = positions.len();
        for (idx, &i) in positions.iter().enumerate() {
            out[i] = next + (m - 1 - idx); // decreasing left to right
        }
        next += m;
    }

    let zero_positions: Vec<usize> = (0..n).filter(|&i| word.symbols[i] == 0).collect();
    for (j, &i) in zero_positions.iter().enumerate() {
        out[i] = next + arrangement.slots[j];
    }
    next += zero_positions.len();

    let mut positives: Vec<i64> = word.symbols.iter().copied().filter(|&s| s > 0).collect();
    positives.sort_unstable();
    positives.dedup();
    for s in positives {
        let positions: Vec<usize> = (0..n).filter(|&i| word.symbols[i] == s).collect();
        for (idx, &i) in positions.iter().enumerate() {
            out[i] = next + idx; // increasing left to right
        }
        next += positions.len();
    }

    Permutation::from_one_line(out).expect("placement is a bijection")
}

/// Convert a word to a permutation, drawing the zero-block arrangement from
/// the seed's mix stream.
pub fn word_to_permutation(word: &SignedWord, seed: u64) -> Permutation {
    let arrangement = ZeroArrangement::sample(word.zero_count(), &mut mix_rng(seed));
    place_word(word, &arrangement)
}

/// One full shuffle: word and zero mix drawn from independent streams of
/// the same seed.
pub fn sample_shuffle(params: &ShuffleParams, n: usize, seed: u64) -> Permutation {
    let word = sample_word(params, n, seed);
    word_to_permutation(&word, seed)
}

/// The literal label-deal-pickup procedure for the inverse shuffle: label
/// every card, deal into piles by label (negative and zero labels face
/// down, positive labels face up), mix pile zero, flip the face-up piles,
/// and stack the piles with smaller labels on top. `zero_mix` arranges the
/// zero pile's cards, listed in increasing card order.
pub fn pickup_from_labels(labels: &SignedWord, zero_mix: &ZeroArrangement) -> Permutation {
    let n = labels.len();
    let mut distinct: Vec<i64> = labels.symbols.clone();
    distinct.sort_unstable();
    distinct.dedup();

    let mut deck = Vec::with_capacity(n);
    for label in distinct {
        // cards carrying this label, in deal order (card 1 is dealt first)
        let cards: Vec<usize> = (1..=n).filter(|&c| labels.symbols[c - 1] == label).collect();
        if label < 0 {
            // dealt face down: the pile reads in reverse deal order
            deck.extend(cards.into_iter().rev());
        } else if label == 0 {
            assert_eq!(zero_mix.slots.len(), cards.len(), "zero mix size");
            deck.extend(zero_mix.slots.iter().map(|&t| cards[t]));
        } else {
            // dealt face up then flipped: deal order restored
            deck.extend(cards);
        }
    }
    Permutation::from_one_line(deck).expect("pickup is a bijection")
}

/// Sample from the inverse shuffle law via the labeling procedure.
pub fn inverse_shuffle_sample(params: &ShuffleParams, n: usize, seed: u64) -> Permutation {
    let labels = sample_letters(params, n, &mut letter_rng(seed));
    let mix = ZeroArrangement::sample(labels.zero_count(), &mut mix_rng(seed));
    pickup_from_labels(&labels, &mix)
}

/// Caps for exact enumeration. `max_deck` bounds the deck size outright and
/// `max_outcomes` bounds `sum_words (zeros)!`, the number of elementary
/// outcomes expanded.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationLimits {
    pub max_deck: usize,
    pub max_outcomes: u128,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_deck: 6,
            max_outcomes: 20_000_000,
        }
    }
}

impl EnumerationLimits {
    /// Budget-only limits, used when an explicit budget overrides the caps.
    pub fn from_budget(max_outcomes: u128) -> Self {
        EnumerationLimits {
            max_deck: usize::MAX,
            max_outcomes,
        }
    }
}

fn outcome_count(support_len: usize, has_zero: usize, n: usize) -> Option<u128> {
    // sum over r of C(n, r) * (s - z)^{n-r} * r!, with z in {0, 1}
    let s = support_len as u128;
    if has_zero == 0 {
        return s.checked_pow(n as u32);
    }
    let base = s - 1;
    let mut total: u128 = 0;
    for r in 0..=n {
        let mut term: u128 = 1;
        // C(n, r)
        for i in 0..r {
            term = term.checked_mul((n - i) as u128)? / (i as u128 + 1);
        }
        for _ in 0..(n - r) {
            term = term.checked_mul(base)?;
        }
        for k in 1..=r {
            term = term.checked_mul(k as u128)?;
        }
        total = total.checked_add(term)?;
    }
    Some(total)
}

/// One elementary outcome of the exact expansion: the word, the zero
/// arrangement, and the exact probability of the pair.
pub type Outcome = (SignedWord, ZeroArrangement, Rat);

/// Every `(word, arrangement)` pair with its exact probability. This is the
/// base enumeration that all exact laws push forward.
pub fn exact_outcomes(
    params: &ShuffleParams,
    n: usize,
    limits: &EnumerationLimits,
) -> Result<Vec<Outcome>> {
    if n > limits.max_deck {
        return Err(Error::EnumerationTooLarge(format!(
            "deck size {n} exceeds cap {}",
            limits.max_deck
        )));
    }
    let support = params.support();
    let has_zero = usize::from(!params.gamma().is_zero());
    let count = outcome_count(support.len(), has_zero, n)
        .filter(|&c| c <= limits.max_outcomes)
        .ok_or_else(|| {
            Error::EnumerationTooLarge(format!(
                "support {}^{n} with zero expansion exceeds budget {}",
                support.len(),
                limits.max_outcomes
            ))
        })?;

    let mut out = Vec::with_capacity(count.min(1 << 20) as usize);
    let mut indices = vec![0usize; n];
    loop {
        let word = SignedWord {
            symbols: indices.iter().map(|&i| support[i].0).collect(),
        };
        let mut word_prob = Rat::one();
        for &i in &indices {
            word_prob *= &support[i].1;
        }
        let r = word.zero_count();
        let arrangements = ZeroArrangement::all(r);
        let share = Rat::new(1.into(), (arrangements.len() as i64).into());
        for arr in arrangements {
            out.push((word.clone(), arr, word_prob.clone() * &share));
        }

        // odometer
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < support.len() {
                break;
            }
            indices[pos] = 0;
        }
    }
}

/// Finite exact law on permutations of a fixed deck size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDistribution {
    deck_size: usize,
    probs: BTreeMap<Permutation, Rat>,
}

impl ExactDistribution {
    pub fn from_map(deck_size: usize, probs: BTreeMap<Permutation, Rat>) -> Result<Self> {
        let total: Rat = probs.values().fold(Rat::zero(), |acc, p| acc + p);
        if !total.is_one() {
            return Err(Error::InvalidInput(format!(
                "probabilities sum to {}, not 1",
                format_rat(&total)
            )));
        }
        if probs.keys().any(|p| p.n() != deck_size) {
            return Err(Error::InvalidInput("mixed deck sizes".into()));
        }
        Ok(ExactDistribution { deck_size, probs })
    }

    pub fn point_mass(p: Permutation) -> Self {
        let deck_size = p.n();
        let mut probs = BTreeMap::new();
        probs.insert(p, Rat::one());
        ExactDistribution { deck_size, probs }
    }

    /// Uniform law on all `n!` permutations.
    pub fn uniform(n: usize) -> Self {
        let mut probs = BTreeMap::new();
        let mut images: Vec<usize> = (1..=n).collect();
        fn rec(k: usize, images: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if k == images.len() {
                out.push(Permutation::from_one_line(images.clone()).unwrap());
                return;
            }
            for i in k..images.len() {
                images.swap(k, i);
                rec(k + 1, images, out);
                images.swap(k, i);
            }
        }
        let mut perms = Vec::new();
        rec(0, &mut images, &mut perms);
        let w = Rat::new(1.into(), (perms.len() as i64).into());
        for p in perms {
            probs.insert(p, w.clone());
        }
        ExactDistribution { deck_size: n, probs }
    }

    pub fn deck_size(&self) -> usize {
        self.deck_size
    }

    pub fn probs(&self) -> &BTreeMap<Permutation, Rat> {
        &self.probs
    }

    pub fn prob_of(&self, p: &Permutation) -> Rat {
        self.probs.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    /// Law of the composition of independent draws: a shuffle from `self`
    /// performed first, then one from `second`.
    pub fn convolve(&self, second: &ExactDistribution) -> Result<ExactDistribution> {
        if self.deck_size != second.deck_size {
            return Err(Error::SizeMismatch(self.deck_size, second.deck_size));
        }
        let mut probs: BTreeMap<Permutation, Rat> = BTreeMap::new();
        for (p1, w1) in &self.probs {
            for (p2, w2) in &second.probs {
                let net = p1.compose(p2);
                let entry = probs.entry(net).or_insert_with(Rat::zero);
                *entry += w1.clone() * w2;
            }
        }
        Ok(ExactDistribution {
            deck_size: self.deck_size,
            probs,
        })
    }

    /// Law of the inverse permutation.
    pub fn inverse_pushforward(&self) -> ExactDistribution {
        let probs = self
            .probs
            .iter()
            .map(|(p, w)| (p.inverse(), w.clone()))
            .collect();
        ExactDistribution {
            deck_size: self.deck_size,
            probs,
        }
    }

    /// Pushforward of the law under an arbitrary statistic.
    pub fn pushforward<K: Ord, F: FnMut(&Permutation) -> K>(&self, mut f: F) -> BTreeMap<K, Rat> {
        let mut out: BTreeMap<K, Rat> = BTreeMap::new();
        for (p, w) in &self.probs {
            let entry = out.entry(f(p)).or_insert_with(Rat::zero);
            *entry += w;
        }
        out
    }

    /// CSV form: one `permutation,probability` row per support point, keys
    /// in lexicographic order.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("permutation,probability\n");
        for (p, w) in &self.probs {
            s.push_str(&format!("{},{}\n", p, format_rat(w)));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<ExactDistribution> {
        let mut probs = BTreeMap::new();
        let mut deck_size = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with("permutation")) {
                continue;
            }
            let (perm_s, prob_s) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad csv row: {line:?}")))?;
            let images = perm_s
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad image {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let perm = Permutation::from_one_line(images)?;
            if *deck_size.get_or_insert(perm.n()) != perm.n() {
                return Err(Error::Parse("mixed deck sizes in csv".into()));
            }
            probs.insert(perm, parse_rat(prob_s)?);
        }
        let deck_size = deck_size.ok_or_else(|| Error::Parse("empty distribution csv".into()))?;
        ExactDistribution::from_map(deck_size, probs)
    }
}

/// Exact law of one shuffle, by expanding every word and every zero
/// arrangement.
pub fn exact_shuffle_distribution(
    params: &ShuffleParams,
    n: usize,
    limits: &EnumerationLimits,
) -> Result<ExactDistribution> {
    let mut probs: BTreeMap<Permutation, Rat> = BTreeMap::new();
    for (word, arrangement, prob) in exact_outcomes(params, n, limits)? {
        let perm = place_word(&word, &arrangement);
        let entry = probs.entry(perm).or_insert_with(Rat::zero);
        *entry += prob;
    }
    Ok(ExactDistribution {
        deck_size: n,
        probs,
    })
}
