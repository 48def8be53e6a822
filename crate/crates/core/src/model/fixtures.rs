//! The two worked rank-two examples: a confluent hypergeometric system and
//! a Bessel-type system with nilpotent leading term.

use super::{NormalFormError, SingularPoint, Tuple};
use crate::exactla::{Mat, Scalar};

/// `A_1^{(0)} = diag(0, -nu)` and, at `t = 0`,
/// `A_0^{(1)} = [[-alpha, k], [alpha (gamma - alpha) / k, alpha - gamma]]`.
pub fn hypergeometric(nu: &Scalar, gamma: &Scalar, alpha: &Scalar, k: &Scalar) -> Result<Tuple, NormalFormError> {
    let k_inv = k.recip().ok_or(NormalFormError::ZeroK)?;
    let a1 = Mat::diag(&[Scalar::zero(), -nu]);
    let a0 = Mat::from_rows(vec![
        vec![-alpha, k.clone()],
        vec![alpha * (gamma - alpha) * k_inv, alpha - gamma],
    ])
    .expect("2x2");
    Ok(rank_two(a1, a0))
}

/// `A_1^{(0)} = [[0, -1], [0, 0]]` and `A_0^{(1)} = [[a11, a12], [a21, a22]]` at `t = 0`.
pub fn bessel(a11: &Scalar, a12: &Scalar, a21: &Scalar, a22: &Scalar) -> Tuple {
    let a1 = Mat::from_i64(&[&[0, -1], &[0, 0]]);
    let a0 = Mat::from_rows(vec![vec![a11.clone(), a12.clone()], vec![a21.clone(), a22.clone()]]).expect("2x2");
    rank_two(a1, a0)
}

fn rank_two(a1: Mat, a0: Mat) -> Tuple {
    let inf = SingularPoint::infinity(vec![a1]);
    let fin = SingularPoint::finite(Scalar::zero(), vec![a0]);
    Tuple::new(2, inf, vec![fin]).expect("2x2 fixture")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{q, rational_spectrum};

    #[test]
    fn hypergeometric_entries() {
        let t = hypergeometric(&q(1, 1), &q(1, 2), &q(1, 3), &q(1, 1)).unwrap();
        let a0 = &t.finite()[0].coeffs[0];
        assert_eq!(a0.to_rows(), vec![vec![q(-1, 3), q(1, 1)], vec![q(1, 18), q(-1, 6)]]);
        let sp = rational_spectrum(a0);
        assert_eq!(sp.eigenvalues, vec![(q(-1, 2), 1), (q(0, 1), 1)]);
        let eq = hypergeometric(&q(2, 1), &q(1, 3), &q(1, 3), &q(5, 1)).unwrap();
        assert!(eq.finite()[0].coeffs[0][(1, 0)].is_zero());
        assert_eq!(hypergeometric(&q(1, 1), &q(1, 1), &q(1, 1), &q(0, 1)), Err(NormalFormError::ZeroK));
    }
}
