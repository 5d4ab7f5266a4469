//! Row insertion: classical RSK on permutations and the signed-alphabet
//! variant where a negative symbol may bump an equal entry but a positive
//! symbol may not.
//!
//! Zeros in a word are not inserted directly; they are resolved into marked
//! symbols sitting strictly between 0 and 1 (ordered by the zero block's
//! arrangement and treated as positive), which is what makes the recording
//! tableau of a word with zeros match the recording tableau of the
//! permutation it produces.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{q_binomial, Partition, Permutation};
use crate::error::{Error, Result};
use crate::shuffle::{SignedWord, ZeroArrangement};
use crate::Rat;

/// Filled Young diagram. Insertion tableaux hold signed entries; recording
/// tableaux hold `1..=n` exactly once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tableau {
    rows: Vec<Vec<i64>>,
}

impl Tableau {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.iter().any(|r| r.is_empty()) {
            return Err(Error::InvalidInput("empty tableau row".into()));
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidInput("row lengths must weakly decrease".into()));
        }
        Ok(Tableau { rows })
    }

    pub fn empty() -> Self {
        Tableau { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("valid shape")
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Standard: entries are exactly `1..=n`, rows and columns strictly
    /// increasing.
    pub fn is_standard(&self) -> bool {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        for row in &self.rows {
            for &e in row {
                if e < 1 || e > n as i64 || seen[e as usize] {
                    return false;
                }
                seen[e as usize] = true;
            }
        }
        for row in &self.rows {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
        for r in 1..self.rows.len() {
            for c in 0..self.rows[r].len() {
                if self.rows[r - 1][c] >= self.rows[r][c] {
                    return false;
                }
            }
        }
        true
    }

    /// Descents of a standard tableau: `i` such that `i + 1` sits in a
    /// strictly lower row than `i`.
    pub fn descent_set(&self) -> Vec<usize> {
        let n = self.size();
        let mut row_of = vec![0usize; n + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for &e in row {
                row_of[e as usize] = r;
            }
        }
        (1..n).filter(|&i| row_of[i + 1] > row_of[i]).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.rows).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rows: Vec<Vec<i64>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("tableau json: {e}")))?;
        Tableau::from_rows(rows)
    }

    /// Plain-text rendering, one row per line, entries right-aligned.
    pub fn render(&self) -> String {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|e| e.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in &self.rows {
            for (c, e) in row.iter().enumerate() {
                if c > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{:>width$}", e);
            }
            out.push('\n');
        }
        out
    }
}

/// All standard Young tableaux of a shape, by placing `1..=n` in order.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    let l = shape.len();
    let mut fill: Vec<Vec<i64>> = shape.parts().iter().map(|&p| vec![0; p]).collect();
    let mut lens = vec![0usize; l];
    let mut out = Vec::new();
    fn rec(
        k: usize,
        n: usize,
        shape: &Partition,
        lens: &mut Vec<usize>,
        fill: &mut Vec<Vec<i64>>,
        out: &mut Vec<Tableau>,
    ) {
        if k > n {
            out.push(Tableau {
                rows: fill.clone(),
            });
            return;
        }
        for r in 0..shape.len() {
            if lens[r] < shape.part(r) && (r == 0 || lens[r] < lens[r - 1]) {
                fill[r][lens[r]] = k as i64;
                lens[r] += 1;
                rec(k + 1, n, shape, lens, fill, out);
                lens[r] -= 1;
            }
        }
    }
    rec(1, shape.size(), shape, &mut lens, &mut fill, &mut out);
    out
}

/// Internal alphabet: negatives, marked zero-resolutions (between 0 and 1),
/// positives. Derived ordering is the signed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Letter {
    class: u8, // 0 = negative, 1 = marked, 2 = positive
    key: i64,
}

impl Letter {
    fn negative(s: i64) -> Self {
        Letter { class: 0, key: s }
    }
    fn marked(rank: usize) -> Self {
        Letter {
            class: 1,
            key: rank as i64,
        }
    }
    fn positive(s: i64) -> Self {
        Letter { class: 2, key: s }
    }
    fn is_negative(&self) -> bool {
        self.class == 0
    }
}

/// Core row insertion. A negative letter bumps the leftmost entry `>= x`
/// (it may bump itself); everything else bumps the leftmost entry `> x`.
fn insert_letters(letters: &[Letter]) -> (Vec<Vec<Letter>>, Vec<Vec<i64>>) {
    let mut p: Vec<Vec<Letter>> = Vec::new();
    let mut q: Vec<Vec<i64>> = Vec::new();
    for (step, &letter) in letters.iter().enumerate() {
        let mut x = letter;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![(step + 1) as i64]);
                break;
            }
            let row = &mut p[r];
            let pos = if x.is_negative() {
                row.iter().position(|&y| y >= x)
            } else {
                row.iter().position(|&y| y > x)
            };
            match pos {
                None => {
                    row.push(x);
                    q[r].push((step + 1) as i64);
                    break;
                }
                Some(j) => {
                    std::mem::swap(&mut row[j], &mut x);
                    r += 1;
                }
            }
        }
    }
    (p, q)
}

fn signed_tableau(p: Vec<Vec<Letter>>) -> Tableau {
    Tableau {
        rows: p
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|l| {
                        debug_assert!(l.class != 1, "marked letters are internal only");
                        l.key
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Classical RSK on a permutation: `(P, Q)`, both standard, same shape.
pub fn rsk(perm: &Permutation) -> (Tableau, Tableau) {
    let letters: Vec<Letter> = perm.one_line().iter().map(|&v| Letter::positive(v as i64)).collect();
    let (p, q) = insert_letters(&letters);
    (signed_tableau(p), Tableau { rows: q })
}

/// Shape of the RSK pair of a permutation.
pub fn rsk_shape(perm: &Permutation) -> Partition {
    rsk(perm).0.shape()
}

/// Signed-alphabet insertion on a zero-free word.
pub fn brkv_insert(word: &SignedWord) -> Result<(Tableau, Tableau)> {
    let letters = word
        .symbols()
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            if s == 0 {
                Err(Error::ZeroSymbol(i))
            } else if s < 0 {
                Ok(Letter::negative(s))
            } else {
                Ok(Letter::positive(s))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let (p, q) = insert_letters(&letters);
    Ok((signed_tableau(p), Tableau { rows: q }))
}

/// Recording tableau of a word that may contain zeros: each zero becomes a
/// marked symbol between 0 and 1, ordered by the arrangement. The marked
/// entries never leave the insertion tableau, so only `Q` is returned.
pub fn brkv_recording_with_zeros(word: &SignedWord, arrangement: &ZeroArrangement) -> Tableau {
    let mut zero_seen = 0usize;
    let letters: Vec<Letter> = word
        .symbols()
        .iter()
        .map(|&s| {
            if s == 0 {
                let rank = arrangement.slots()[zero_seen];
                zero_seen += 1;
                Letter::marked(rank)
            } else if s < 0 {
                Letter::negative(s)
            } else {
                Letter::positive(s)
            }
        })
        .collect();
    let (_, q) = insert_letters(&letters);
    Tableau { rows: q }
}

/// The four conditions an insertion tableau must satisfy: nonzero entries,
/// weakly increasing rows and columns, positives at most once per column,
/// negatives at most once per row.
pub fn satisfies_brkv_conditions(p: &Tableau) -> bool {
    for row in p.rows() {
        if row.contains(&0) {
            return false;
        }
        if row.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        // each negative symbol at most once per row
        let mut negs: Vec<i64> = row.iter().copied().filter(|&e| e < 0).collect();
        negs.sort_unstable();
        if negs.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    let ncols = p.rows().first().map(|r| r.len()).unwrap_or(0);
    for c in 0..ncols {
        let col: Vec<i64> = p
            .rows()
            .iter()
            .filter_map(|row| row.get(c).copied())
            .collect();
        if col.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        // each positive symbol at most once per column
        let mut pos: Vec<i64> = col.iter().copied().filter(|&e| e > 0).collect();
        pos.sort_unstable();
        if pos.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    true
}

/// Reverse insertion: recover the unique word mapping to `(P, Q)`.
pub fn brkv_inverse(p: &Tableau, q: &Tableau) -> Result<SignedWord> {
    if p.shape() != q.shape() {
        return Err(Error::InvalidPair("shapes differ".into()));
    }
    if !q.is_standard() {
        return Err(Error::InvalidPair("recording tableau not standard".into()));
    }
    if !satisfies_brkv_conditions(p) {
        return Err(Error::InvalidPair("insertion tableau violates conditions".into()));
    }
    let n = p.size();
    let mut rows: Vec<Vec<Letter>> = p
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&e| {
                    if e < 0 {
                        Letter::negative(e)
                    } else {
                        Letter::positive(e)
                    }
                })
                .collect()
        })
        .collect();
    let mut cell_of = vec![(0usize, 0usize); n + 1];
    for (r, row) in q.rows().iter().enumerate() {
        for (c, &e) in row.iter().enumerate() {
            cell_of[e as usize] = (r, c);
        }
    }
    let mut word = vec![0i64; n];
    for k in (1..=n).rev() {
        let (r, c) = cell_of[k];
        if c + 1 != rows[r].len() || (r + 1 < rows.len() && rows[r + 1].len() > c) {
            return Err(Error::InvalidPair(format!("step {k} is not at a corner")));
        }
        let mut v = rows[r].pop().expect("corner exists");
        if rows[r].is_empty() {
            rows.pop();
        }
        for upper in (0..r).rev() {
            let row = &mut rows[upper];
            // the entry that bumped v: rightmost y with y <= v when y is
            // negative (self-bumps allowed) or y < v when positive
            let pos = row.iter().rposition(|&y| {
                if y.is_negative() {
                    y <= v
                } else {
                    y < v
                }
            });
            match pos {
                Some(j) => std::mem::swap(&mut row[j], &mut v),
                None => {
                    return Err(Error::InvalidPair(format!(
                        "no reverse bump in row {upper} at step {k}"
                    )))
                }
            }
        }
        word[k - 1] = v.key;
    }
    Ok(SignedWord::new(word))
}

/// Unnormalized weight of the descent-driven permutation measure:
/// `p^{maj(inv)} q^{maj} [k - d(inv) + n - 1, n]_p [l - d + n - 1, n]_q`.
/// The normalization over all of `S_n` is left to the caller.
pub fn maj_weight(perm: &Permutation, p: &Rat, q: &Rat, k: u64, l: u64) -> Result<Rat> {
    assert!(k >= 1 && l >= 1);
    assert!(!p.is_zero() && !q.is_zero());
    let n = perm.n() as u64;
    let d = perm.descent_stats();
    let di = perm.inverse().descent_stats();
    let mut weight = Rat::one();
    for _ in 0..di.major_index {
        weight *= p;
    }
    for _ in 0..d.major_index {
        weight *= q;
    }
    weight *= q_binomial(k + n - 1 - di.count as u64, n, p)?;
    weight *= q_binomial(l + n - 1 - d.count as u64, n, q)?;
    Ok(weight)
}
