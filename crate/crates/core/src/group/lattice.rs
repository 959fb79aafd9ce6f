//! Integer matrix reduction over ℤ.
//!
//! Rows of the input are vectors in ℤ^k. [`smith`] brings the matrix to
//! diagonal form `P·A·Q = D` with `d₁ | d₂ | …` and keeps the unimodular
//! column transform `Q`, which is all that is needed to decide membership in
//! the row lattice and to project ℤ^k onto ℤ^k / rowspace(A).

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub factors: Vec<i64>,
    /// `cols × cols` unimodular matrix with `rowspace(A)·Q = rowspace(D)`.
    pub transform: Vec<Vec<i64>>,
    pub cols: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// True iff the rows span all of ℤ^cols.
    pub fn is_full(&self) -> bool {
        self.rank() == self.cols && self.factors.iter().all(|&d| d == 1)
    }

    /// `v·Q` with checked arithmetic.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.cols)
            .map(|c| {
                let mut acc: i128 = 0;
                for (r, &x) in v.iter().enumerate() {
                    acc = acc
                        .checked_add(i128::from(x) * i128::from(self.transform[r][c]))
                        .ok_or(Error::Overflow("lattice transform"))?;
                }
                i64::try_from(acc).map_err(|_| Error::Overflow("lattice transform"))
            })
            .collect()
    }

    /// Membership of `v` in the row lattice.
    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        let w = self.apply(v)?;
        Ok(w.iter().enumerate().all(|(i, &x)| match self.factors.get(i) {
            Some(&d) => x % d == 0,
            None => x == 0,
        }))
    }
}

fn overflow() -> Error {
    Error::Overflow("integer matrix reduction")
}

fn sub_mul(a: i128, q: i128, b: i128) -> Result<i128> {
    q.checked_mul(b)
        .and_then(|p| a.checked_sub(p))
        .ok_or_else(overflow)
}

/// Smith normal form of the matrix whose rows are `rows` (each of length `cols`).
pub fn smith(rows: &[Vec<i64>], cols: usize) -> Result<Smith> {
    let m = rows.len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "row length mismatch");
            r.iter().map(|&x| i128::from(x)).collect()
        })
        .collect();
    let mut q: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();

    let swap_cols = |a: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        if x != y {
            for row in a.iter_mut() {
                row.swap(x, y);
            }
            for row in q.iter_mut() {
                row.swap(x, y);
            }
        }
    };

    let mut t = 0;
    while t < m.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, &mut q, t, pj);

        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t] != 0 {
                    let f = a[i][t] / p;
                    for j in t..cols {
                        a[i][j] = sub_mul(a[i][j], f, a[t][j])?;
                    }
                    clean &= a[i][t] == 0;
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let f = a[t][j] / p;
                    for row in a.iter_mut().skip(t) {
                        row[j] = sub_mul(row[j], f, row[t])?;
                    }
                    for row in q.iter_mut() {
                        row[j] = sub_mul(row[j], f, row[t])?;
                    }
                    clean &= a[t][j] == 0;
                }
            }
            if clean {
                // divisibility d_t | every trailing entry
                let bad = (t + 1..m).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            a[t][j] = a[t][j].checked_add(a[i][j]).ok_or_else(overflow)?;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero of row t / column t to the pivot
            let mut bi = t;
            let mut bj = t;
            for i in t..m {
                if a[i][t] != 0 && a[i][t].abs() < a[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            a.swap(t, bi);
            swap_cols(&mut a, &mut q, t, bj);
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }

    let factors = (0..t)
        .map(|i| i64::try_from(a[i][i]).map_err(|_| overflow()))
        .collect::<Result<Vec<_>>>()?;
    let transform = q
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| overflow()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Smith {
        factors,
        transform,
        cols,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn diagonal_input() {
        let s = smith(&[vec![2, 0], vec![0, 3]], 2).unwrap();
        assert_eq!(s.factors, vec![1, 6]);
        assert!(!s.is_full());
    }

    #[test]
    fn empty_rows() {
        let s = smith(&[], 3).unwrap();
        assert_eq!(s.rank(), 0);
        assert!(s.contains(&[0, 0, 0]).unwrap());
        assert!(!s.contains(&[0, 1, 0]).unwrap());
    }

    #[test]
    fn coprime_pair_spans_z() {
        assert!(smith(&[vec![2], vec![3]], 1).unwrap().is_full());
        assert!(!smith(&[vec![4], vec![6]], 1).unwrap().is_full());
        assert_eq!(smith(&[vec![4], vec![6]], 1).unwrap().factors, vec![2]);
    }

    #[test]
    fn determinant_matches_two_by_two() {
        for a in -4..=4i64 {
            for b in -4..=4 {
                for c in -3..=3 {
                    for d in -3..=3 {
                        let s = smith(&[vec![a, b], vec![c, d]], 2).unwrap();
                        let det = (a * d - b * c).abs();
                        let prod: i64 = s.factors.iter().product();
                        if det != 0 {
                            assert_eq!(s.rank(), 2);
                            assert_eq!(prod, det);
                        } else {
                            assert!(s.rank() < 2);
                        }
                        let g = gcd(gcd(a, b), gcd(c, d));
                        if g != 0 {
                            assert_eq!(s.factors[0], g);
                        }
                        for w in s.factors.windows(2) {
                            assert_eq!(w[1] % w[0], 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn membership_matches_rows() {
        let rows = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&rows, 3).unwrap();
        for r in &rows {
            assert!(s.contains(r).unwrap());
        }
        let sum: Vec<i64> = (0..3).map(|j| rows[0][j] - 2 * rows[2][j]).collect();
        assert!(s.contains(&sum).unwrap());
        assert!(!s.contains(&[1, 0, 0]).unwrap());
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX;
        let r = smith(&[vec![big, big - 1], vec![big - 2, big]], 2);
        // either it fits through i128 or reports overflow; never wraps
        if let Ok(s) = r {
            assert_eq!(s.rank(), 2);
        } else {
            assert!(matches!(r, Err(Error::Overflow(_))));
        }
    }
}
