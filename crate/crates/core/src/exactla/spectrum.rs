use super::poly::charpoly_hessenberg;
use super::{LinalgError, Mat, Poly, Scalar, Subspace};

/// Rational eigenvalues of a matrix with algebraic multiplicities, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub eigenvalues: Vec<(Scalar, usize)>,
    /// True when the rational eigenvalues account for the whole dimension.
    pub fully_rational: bool,
}

impl Spectrum {
    pub fn multiplicity(&self, lambda: &Scalar) -> usize {
        self.eigenvalues.iter().find(|(e, _)| e == lambda).map_or(0, |(_, k)| *k)
    }

    pub fn values(&self) -> impl Iterator<Item = &Scalar> {
        self.eigenvalues.iter().map(|(e, _)| e)
    }
}

fn require_square(m: &Mat) -> Result<(), LinalgError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() })
    }
}

/// `det(x I - m)`, monic of degree `n`.
pub fn charpoly(m: &Mat) -> Result<Poly, LinalgError> {
    require_square(m)?;
    Ok(charpoly_hessenberg(m))
}

/// Rational eigenvalues with algebraic multiplicities.
///
/// Panics on a non-square matrix.
pub fn rational_spectrum(m: &Mat) -> Spectrum {
    let p = charpoly(m).expect("rational_spectrum needs a square matrix");
    let eigenvalues: Vec<(Scalar, usize)> =
        p.rational_roots().into_iter().map(|r| {
            let k = p.root_multiplicity(&r);
            (r, k)
        }).collect();
    let total: usize = eigenvalues.iter().map(|(_, k)| k).sum();
    Spectrum { eigenvalues, fully_rational: total == m.rows() }
}

/// Jordan block sizes at `lambda`, descending; empty if `lambda` is not an
/// eigenvalue. Derived from the ranks of `(m - lambda I)^k`.
pub fn jordan_partition(m: &Mat, lambda: &Scalar) -> Vec<usize> {
    assert!(m.is_square(), "jordan_partition needs a square matrix");
    let n = m.rows();
    let b = m.shifted(&-lambda);
    // nullities d_k = dim ker (m - lambda)^k, stabilizing at the algebraic multiplicity
    let mut nullities = vec![0usize];
    let mut power = Mat::identity(n);
    loop {
        power = &power * &b;
        let d = n - power.rank();
        if d == *nullities.last().unwrap() {
            break;
        }
        nullities.push(d);
    }
    // number of blocks of size >= k is d_k - d_{k-1}
    let at_least: Vec<usize> = nullities.windows(2).map(|w| w[1] - w[0]).collect();
    conjugate_partition(&at_least)
}

/// Conjugate (transpose) of a partition given in descending order.
pub fn conjugate_partition(p: &[usize]) -> Vec<usize> {
    let largest = p.first().copied().unwrap_or(0);
    (1..=largest).map(|k| p.iter().filter(|&&x| x >= k).count()).collect()
}

/// True iff the minimal polynomial is squarefree, tested by evaluating the
/// squarefree part of the characteristic polynomial at `m`.
pub fn is_semisimple(m: &Mat) -> bool {
    let p = charpoly(m).expect("is_semisimple needs a square matrix");
    p.squarefree_part().eval_mat(m).is_zero()
}

/// Kernel of `m - lambda I`.
pub fn eigenspace(m: &Mat, lambda: &Scalar) -> Subspace {
    m.shifted(&-lambda).nullspace()
}
