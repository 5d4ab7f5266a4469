//! Division-free determinants over any commutative ring.
//!
//! Matrix sizes in this crate are tiny (Jacobi-Trudi blocks up to ~10 rows,
//! Toeplitz windows up to ~8), so memoized cofactor expansion over column
//! subsets is both simple and fast, and it never divides -- which is what
//! lets the same code run on rationals, on floats, and on the truncated
//! series ring.

use std::ops::{Add, Mul, Sub};

/// Determinant of a square matrix given as rows. Panics on a non-square or
/// empty matrix; callers special-case the empty determinant (= 1).
pub fn determinant<T>(rows: &[Vec<T>]) -> T
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let n = rows.len();
    assert!(n > 0, "empty determinant is the caller's 1");
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    assert!(n <= 20, "subset memoization is exponential in n");

    // minor[mask] = det of rows 0..popcount(mask) on the columns in mask.
    let mut minor: Vec<Option<T>> = vec![None; 1usize << n];
    for j in 0..n {
        minor[1 << j] = Some(rows[0][j].clone());
    }
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        if k < 2 || minor[mask].is_some() {
            continue;
        }
        let mut acc: Option<T> = None;
        let mut sign_pos = (k - 1).is_multiple_of(2); // (-1)^{(k-1)+t} for t = 0
        let mut rest = mask;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let sub = minor[mask ^ (1 << j)]
                .clone()
                .expect("smaller minors already filled");
            let term = rows[k - 1][j].clone() * sub;
            acc = Some(match acc {
                None => {
                    if sign_pos {
                        term
                    } else {
                        // start from -term without requiring Neg: 0 - term
                        (term.clone() - term.clone()) - term
                    }
                }
                Some(a) => {
                    if sign_pos {
                        a + term
                    } else {
                        a - term
                    }
                }
            });
            sign_pos = !sign_pos;
        }
        minor[mask] = acc;
    }
    minor[(1 << n) - 1].clone().expect("full minor computed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use crate::Rat;

    #[test]
    fn small_rational_determinants() {
        let m = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(3), rat_int(4)]];
        assert_eq!(determinant(&m), rat_int(-2));

        let m3 = vec![
            vec![rat_int(2), rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(3), rat_int(1)],
        ];
        // expansion by hand: 2*(1*1-0*3) - 0 + 1*(1*3-1*0) = 5
        assert_eq!(determinant(&m3), rat_int(5));
    }

    #[test]
    fn identity_and_singular() {
        let n = 6;
        let id: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| rat_int((i == j) as i64)).collect())
            .collect();
        assert_eq!(determinant(&id), rat_int(1));

        let sing = vec![
            vec![rat_int(1), rat_int(2), rat_int(3)],
            vec![rat_int(2), rat_int(4), rat_int(6)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
        ];
        assert_eq!(determinant(&sing), rat_int(0));
    }

    #[test]
    fn works_on_floats() {
        let m = vec![vec![0.0_f64, 1.0], vec![-1.0, 0.0]];
        assert_eq!(determinant(&m), 1.0);
    }
}
