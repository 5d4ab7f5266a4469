//! Partitions, permutations, and the handful of classical statistics the
//! rest of the crate leans on: hook-length counts, centralizer orders,
//! the Moebius function, descents, and Gaussian binomials.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::rational::{binomial, factorial};
use crate::{Int, Rat};

/// Integer partition: weakly decreasing positive parts. The empty partition
/// is the unique partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Build from part multiplicities: `mult[i]` copies of part `i + 1`.
    pub fn from_multiplicities(mult: &[usize]) -> Self {
        let mut parts = Vec::new();
        for (i, &m) in mult.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i + 1, m));
        }
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let parts = (0..self.parts[0])
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    /// `"a+b+c"`; the empty partition prints as `"0"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join("+"))
    }
}

/// Parse the `"a+b+c"` form produced by `Display`.
pub fn parse_partition(s: &str) -> Result<Partition> {
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(Partition::empty());
    }
    let parts = s
        .split('+')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad partition part {p:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

/// All partitions of `n` in lexicographically decreasing part order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    partitions_bounded(n, n, n)
}

/// Partitions of `n` with at most `max_len` parts, each at most `max_part`.
pub fn partitions_bounded(n: usize, max_len: usize, max_part: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        remaining: usize,
        max_part: usize,
        slots: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = remaining.min(max_part);
        for p in (1..=hi).rev() {
            current.push(p);
            rec(remaining - p, p, slots - 1, current, out);
            current.pop();
        }
    }
    rec(n, max_part, max_len, &mut current, &mut out);
    out
}

/// Number of standard Young tableaux of the given shape, by hook lengths.
/// Cross-checkable against `|lambda|! det(1/(lambda_i - i + j)!)`.
pub fn standard_tableau_count(shape: &Partition) -> Int {
    let n = shape.size();
    if n == 0 {
        return Int::one();
    }
    let conj = shape.conjugate();
    let mut hooks = Int::one();
    for (i, &p) in shape.parts().iter().enumerate() {
        for j in 0..p {
            let arm = p - j - 1;
            let leg = conj.part(j) - i - 1;
            hooks *= Int::from(arm + leg + 1);
        }
    }
    factorial(n) / hooks
}

/// `z_lambda = prod_i i^{m_i} m_i!`, the centralizer order of a permutation
/// with that cycle type.
pub fn centralizer_order(shape: &Partition) -> Int {
    let mut acc = Int::one();
    let mut run_len = 0usize;
    let mut prev = 0usize;
    for &p in shape.parts().iter().chain(std::iter::once(&0usize)) {
        if p == prev {
            run_len += 1;
        } else {
            if prev > 0 {
                for _ in 0..run_len {
                    acc *= Int::from(prev);
                }
                acc *= factorial(run_len);
            }
            prev = p;
            run_len = 1;
        }
    }
    acc
}

/// Number-theoretic Moebius function.
pub fn moebius(d: u64) -> i64 {
    assert!(d >= 1);
    let mut d = d;
    let mut prime_count = 0u32;
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p) {
            d /= p;
            if d.is_multiple_of(p) {
                return 0; // squareful
            }
            prime_count += 1;
        }
        p += 1;
    }
    if d > 1 {
        prime_count += 1;
    }
    if prime_count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Permutation in one-line form, 1-indexed: `images[i-1]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn from_one_line(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation of 1..{n}: {images:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of `i` (1-indexed).
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Composition `(self o inner)(i) = self(inner(i))`. This is the one
    /// composition convention in the crate; shuffles performed in sequence
    /// compose as `first.compose(&second)`.
    pub fn compose(&self, inner: &Permutation) -> Permutation {
        assert_eq!(self.n(), inner.n());
        Permutation {
            images: inner.images.iter().map(|&v| self.images[v - 1]).collect(),
        }
    }

    /// Cycle lengths as a partition of n.
    pub fn cycle_type(&self) -> Partition {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut lens = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.image(cur);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: lens }
    }

    pub fn descent_stats(&self) -> DescentStats {
        let mut positions = BTreeSet::new();
        for i in 1..self.n() {
            if self.images[i - 1] > self.images[i] {
                positions.insert(i);
            }
        }
        let count = positions.len();
        let major_index = positions.iter().sum();
        DescentStats {
            positions,
            count,
            major_index,
        }
    }

    /// Relabel by the longest element: `i -> n + 1 - self(i)`. Composing a
    /// shuffle with a final deck reversal has, up to conjugation, this
    /// effect on the one-line form, and conjugation does not change the
    /// cycle type -- which is all the reversal duality checks consume.
    pub fn reverse_deck(&self) -> Permutation {
        let n = self.n();
        Permutation {
            images: self.images.iter().map(|&v| n + 1 - v).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

/// Descent set together with the two statistics derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentStats {
    pub positions: BTreeSet<usize>,
    pub count: usize,
    pub major_index: usize,
}

/// Gaussian binomial coefficient evaluated at an exact rational `q`.
///
/// Evaluation is by cancellation in the factor product
/// `prod_i (q^{n-m+i} - 1)/(q^i - 1)`: at `q = 1` every factor vanishes and
/// the value is the ordinary binomial; at `q = -1` the factors with even
/// exponent vanish in matched numerator/denominator pairs. Other rational
/// `q` make every denominator factor nonzero. Returns 0 when `m > n`.
pub fn q_binomial(n: u64, m: u64, q: &Rat) -> Result<Rat> {
    if m > n {
        return Ok(Rat::zero());
    }
    if q.is_zero() {
        return Err(Error::DegenerateEvaluation("q = 0".into()));
    }
    if q.is_one() {
        return Ok(Rat::from_integer(binomial(n as usize, m as usize)));
    }
    let num_exps: Vec<u64> = (1..=m).map(|i| n - m + i).collect();
    let den_exps: Vec<u64> = (1..=m).collect();
    if *q == -Rat::one() {
        // Odd-exponent factors are -2 on both sides and cancel in equal
        // numbers; even-exponent factors vanish linearly and contribute the
        // ratio of their exponents, or kill the product outright.
        let even_num: Vec<u64> = num_exps.iter().copied().filter(|e| e % 2 == 0).collect();
        let even_den: Vec<u64> = den_exps.iter().copied().filter(|e| e % 2 == 0).collect();
        if even_num.len() > even_den.len() {
            return Ok(Rat::zero());
        }
        if even_num.len() < even_den.len() {
            return Err(Error::DegenerateEvaluation("q = -1".into()));
        }
        let mut acc = Rat::one();
        for (a, b) in even_num.iter().zip(even_den.iter()) {
            acc *= Rat::new(Int::from(*a), Int::from(*b));
        }
        return Ok(acc);
    }
    let mut acc = Rat::one();
    let mut qn = Rat::one(); // q^{n-m} after the warmup loop
    for _ in 0..(n - m) {
        qn *= q;
    }
    let mut qi = Rat::one();
    for _ in 1..=m {
        qn *= q; // q^{n-m+i}
        qi *= q; // q^i
        let den = qi.clone() - Rat::one();
        if den.is_zero() {
            return Err(Error::DegenerateEvaluation(format!("q = {q}")));
        }
        acc *= (qn.clone() - Rat::one()) / den;
    }
    Ok(acc)
}

/// Hook-length count cross-check: `|shape|! * det(1/(lambda_i - i + j)!)`.
/// Exposed for tests and the Poissonized shape law, where the same
/// determinant appears with an extra geometric weight.
pub fn tableau_count_determinant(shape: &Partition) -> Rat {
    let l = shape.len();
    if l == 0 {
        return Rat::one();
    }
    let rows: Vec<Vec<Rat>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let e = shape.part(i) as i64 - i as i64 + j as i64;
                    if e < 0 {
                        Rat::zero()
                    } else {
                        Rat::new(Int::one(), factorial(e as usize))
                    }
                })
                .collect()
        })
        .collect();
    determinant(&rows) * Rat::from_integer(factorial(shape.size()))
}
