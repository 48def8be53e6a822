//! Fraction-free Gauss-Jordan elimination.
//!
//! Every row is scaled to a primitive integer vector before elimination and
//! kept primitive afterwards: a row update is `p*row - a*pivot_row` with the
//! common factor of `p` and `a` removed, followed by division by the row
//! content. Rows that already have a zero in the pivot column are never
//! touched, so sparse systems (commutant and Toeplitz blocks) stay sparse.
//! The rational reduced row echelon form is produced only at the very end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Mat, Scalar};

/// Reduced row echelon form of a matrix.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// The nonzero rows of the RREF, one per pivot, each with a leading 1.
    pub rows: Vec<Vec<Scalar>>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn lcm_of_denominators(row: &[Scalar]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let l = lcm_of_denominators(row);
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    make_primitive(&mut out);
    out
}

/// Computes the reduced row echelon form of the rows of `m`.
pub fn rref(m: &Mat) -> Echelon {
    let rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    rref_rows(rows, m.cols())
}

/// Same as [`rref`] but on an explicit list of row vectors of length `cols`.
pub fn rref_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Echelon {
    let mut work: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| integer_row(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut done = 0usize;

    for col in 0..cols {
        if done == work.len() {
            break;
        }
        // Choose the candidate with the fewest nonzeros, then the smallest
        // pivot magnitude, to limit fill-in and coefficient growth.
        let mut best: Option<(usize, usize, u64)> = None;
        for (i, row) in work.iter().enumerate().skip(done) {
            if row[col].is_zero() {
                continue;
            }
            let nnz = row.iter().filter(|x| !x.is_zero()).count();
            let bits = row[col].bits();
            if best.is_none_or(|(_, bn, bb)| (nnz, bits) < (bn, bb)) {
                best = Some((i, nnz, bits));
            }
        }
        let Some((p, _, _)) = best else { continue };
        work.swap(done, p);
        let (head, tail) = work.split_at_mut(done);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row");
        let pv = pivot_row[col].clone();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[col]);
            let a = &row[col] / &g;
            let p = &pv / &g;
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x *= &p;
                    }
                } else {
                    *x = &*x * &p - &a * y;
                }
            }
            make_primitive(row);
        }
        pivots.push(col);
        done += 1;
    }

    work.truncate(done);
    let rows = work
        .into_iter()
        .zip(pivots.iter())
        .map(|(row, &pc)| {
            let lead = row[pc].clone();
            row.into_iter()
                .map(|x| Scalar::from_big_ratio(x, lead.clone()).expect("nonzero pivot"))
                .collect()
        })
        .collect();
    Echelon { rows, pivots, cols }
}

/// Basis of the right nullspace from an echelon form, one vector per free
/// column (1 in the free column, minus the RREF entries in pivot columns).
pub fn nullspace_vectors(e: &Echelon) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; e.cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..e.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Scalar::zero(); e.cols];
            v[free] = Scalar::one();
            for (row, &pc) in e.rows.iter().zip(e.pivots.iter()) {
                if !row[free].is_zero() {
                    v[pc] = -&row[free];
                }
            }
            v
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination on the integer-scaled
/// matrix. Panics if `m` is not square.
pub fn determinant(m: &Mat) -> Scalar {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Scalar::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let l = lcm_of_denominators(row);
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Scalar::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = sign * &a[n - 1][n - 1];
    Scalar::from_big_ratio(det, scale).expect("positive scale")
}
