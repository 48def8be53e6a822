use thiserror::Error;

use super::{SingularPoint, Tuple};
use crate::exactla::{is_semisimple, rational_spectrum, Mat, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("partition must be non-empty, positive and non-increasing: {0:?}")]
    BadPartition(Vec<usize>),
    #[error("expected {expected} eigenvalues, got {found}")]
    EigenvalueCount { expected: usize, found: usize },
    #[error("T and A must be square of equal size (T is {t_rows}x{t_cols}, A is {a_rows}x{a_cols})")]
    Shape { t_rows: usize, t_cols: usize, a_rows: usize, a_cols: usize },
    #[error("T must be semisimple")]
    NotSemisimple,
    #[error("T must have a rational spectrum")]
    IrrationalSpectrum,
    #[error("parameter k must be nonzero")]
    ZeroK,
}

/// The block matrix `L(q; lambda)`: `lambda_s I_{q_s}` on the diagonal and
/// the rectangular identity `I_{q_s, q_{s+1}}` on the block superdiagonal.
///
/// With all `lambda_s` equal its Jordan partition is the conjugate of `q`;
/// with pairwise distinct values it is diagonalizable.
pub fn build_l(q: &[usize], lambdas: &[Scalar]) -> Result<Mat, NormalFormError> {
    if q.is_empty() || q.contains(&0) || q.windows(2).any(|w| w[0] < w[1]) {
        return Err(NormalFormError::BadPartition(q.to_vec()));
    }
    if lambdas.len() != q.len() {
        return Err(NormalFormError::EigenvalueCount { expected: q.len(), found: lambdas.len() });
    }
    let size: usize = q.iter().sum();
    let mut m = Mat::zeros(size, size);
    let mut offset = 0;
    for (s, (&qs, lambda)) in q.iter().zip(lambdas).enumerate() {
        for k in 0..qs {
            m[(offset + k, offset + k)] = lambda.clone();
        }
        if let Some(&next) = q.get(s + 1) {
            for k in 0..next {
                m[(offset + k, offset + qs + k)] = Scalar::one();
            }
        }
        offset += qs;
    }
    Ok(m)
}

/// The Birkhoff-form tuple dual to the Okubo system `(z - T) Y' = A Y`:
/// `m_0 = 1` with `A_1^{(0)} = -T` and a single regular point at `0` with
/// residue `-(A + I)`.
pub fn from_okubo(t: &Mat, a: &Mat) -> Result<Tuple, NormalFormError> {
    if !t.is_square() || !a.is_square() || t.rows() != a.rows() {
        return Err(NormalFormError::Shape { t_rows: t.rows(), t_cols: t.cols(), a_rows: a.rows(), a_cols: a.cols() });
    }
    if !rational_spectrum(t).fully_rational {
        return Err(NormalFormError::IrrationalSpectrum);
    }
    if !is_semisimple(t) {
        return Err(NormalFormError::NotSemisimple);
    }
    let n = t.rows();
    let inf = SingularPoint::infinity(vec![-t]);
    let residue = -&a.shifted(&Scalar::one());
    let fin = SingularPoint::finite(Scalar::zero(), vec![residue]);
    Ok(Tuple::new(n, inf, vec![fin]).expect("shapes checked above"))
}
