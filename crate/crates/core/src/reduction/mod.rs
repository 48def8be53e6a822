//! Reduction of tuples by alternating addition and middle convolution, and
//! the classification of the patterns where this stops.

mod catalog;
mod enumerate;
mod pattern;

pub use catalog::{classify_terminal, CatalogEntry, Classification, CATALOG};
pub use enumerate::{enumerate_terminals, partitions, point_patterns, EnumeratedPattern, MAX_ENUMERATION_SIZE};
pub use pattern::{parse_point_pattern, TerminalPattern};

use std::cmp::Ordering;

use thiserror::Error;

use crate::convolution::{middle_convolution, subspace_k, subspace_l_prime, ConvolutionError};
use crate::exactla::{rational_spectrum, Scalar};
use crate::model::{eigenbasis, leading_pair, spectral_type, ShiftVector, SpectralError, SpectralType, Tuple};
use crate::rigidity::is_irreducible;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("tuple is reducible")]
    Reducible,
    #[error("the size-lowering step needs mu = 0, which contradicts irreducibility")]
    ZeroMu,
    #[error(transparent)]
    Convolution(#[from] ConvolutionError),
    #[error("enumeration needs r >= 1 and n_max <= {limit} (got r={r}, n_max={n_max})")]
    EnumerationBounds { r: usize, n_max: usize, limit: usize },
}

/// Block and eigenvalue picked at one point.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PivotChoice {
    pub point: usize,
    /// Index into the blocks of the point's spectral type.
    pub block: usize,
    /// Eigenvalue of `A_1` on the block.
    pub d: Scalar,
    /// Eigenvalue of the compressed residue with the largest geometric multiplicity.
    pub lambda: Scalar,
    pub n_l: usize,
    pub n_l1: usize,
}

/// Orders blocks by `(n_l^2 + sum_j n_{l,j}^2) / n_l`, larger first, then by
/// `n_l + n_{l,1}`, then by block index.
fn pivot_block(st: &SpectralType) -> usize {
    let key = |l: usize| {
        let b = &st.blocks[l];
        (b.commutant_weight(), b.size, b.size + b.sub[0].geometric_multiplicity())
    };
    (0..st.blocks.len())
        .min_by(|&x, &y| {
            let (wx, nx, kx) = key(x);
            let (wy, ny, ky) = key(y);
            // wx / nx > wy / ny  <=>  wx * ny > wy * nx
            (wy * nx).cmp(&(wx * ny)).then(ky.cmp(&kx)).then(x.cmp(&y))
        })
        .expect("at least one block")
}

/// For every point, the block maximizing the commutant ratio and the
/// eigenvalue of maximal geometric multiplicity inside it.
pub fn choose_pivot(t: &Tuple) -> Result<Vec<PivotChoice>, ReductionError> {
    (0..t.points().len())
        .map(|i| {
            let st = spectral_type(t, i)?;
            let l = pivot_block(&st);
            let b = &st.blocks[l];
            Ok(PivotChoice {
                point: i,
                block: l,
                d: b.eigenvalue.clone(),
                lambda: b.sub[0].eigenvalue.clone(),
                n_l: b.size,
                n_l1: b.sub[0].geometric_multiplicity(),
            })
        })
        .collect()
}

/// The shift moving every pivot eigenvalue to zero: `-d` on each leading
/// coefficient and `-lambda` on each finite residue. The residue at infinity
/// is left to the choice of `mu`.
fn pivot_shift(t: &Tuple, pivots: &[PivotChoice]) -> ShiftVector {
    let shifts = t
        .slots()
        .into_iter()
        .map(|s| {
            let p = &pivots[s.point];
            match s.j {
                1 => -&p.d,
                0 => -&p.lambda,
                _ => unreachable!("points have m <= 1"),
            }
        })
        .collect();
    ShiftVector(shifts)
}

/// Candidate values of `mu`: eigenvalues of the residue at infinity
/// compressed to the kernel of the leading coefficient there, scored by
/// `dim L'(mu)`. Larger dimension wins, then nonzero over zero, then the
/// scalar tie order.
fn choose_mu(t: &Tuple) -> Result<(Scalar, usize), ReductionError> {
    let (a1, a0) = leading_pair(t, 0)?;
    let mut order = vec![Scalar::zero()];
    order.extend(rational_spectrum(&a1).values().filter(|v| !v.is_zero()).cloned());
    let (p, ranges) = eigenbasis(&a1, &order);
    let c = a0.conjugate_by(&p);
    let k = ranges[0].len();
    let blk = c.submatrix(0, 0, k, k);
    let sp = rational_spectrum(&blk);
    if !sp.fully_rational {
        return Err(SpectralError::IrrationalSpectrum { point: 0, what: "a compressed A_0 block" }.into());
    }
    let mut best: Option<(Scalar, usize)> = None;
    for mu in sp.values() {
        let dim = subspace_l_prime(t, mu).dim();
        let better = match &best {
            None => true,
            Some((bm, bd)) => match dim.cmp(bd) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => {
                    (bm.is_zero() && !mu.is_zero())
                        || (bm.is_zero() == mu.is_zero() && Scalar::tie_order(mu, bm) == Ordering::Less)
                }
            },
        };
        if better {
            best = Some((mu.clone(), dim));
        }
    }
    best.ok_or_else(|| SpectralError::IrrationalSpectrum { point: 0, what: "a compressed A_0 block" }.into())
}

/// One recorded step of a reduction.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ReductionStep {
    pub pivots: Vec<PivotChoice>,
    /// Addition applied before the convolution, in slot order.
    pub shift: Vec<Scalar>,
    pub mu: Scalar,
    pub size_before: usize,
    pub size_after: usize,
    /// Addition removing scalar parts after the convolution, if any.
    pub cleanup_shift: Option<Vec<Scalar>>,
}

/// Outcome of [`reduce_step`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepResult {
    Reduced { tuple: Tuple, step: ReductionStep },
    /// No step lowers the size; `predicted` is the size the best step would give.
    Terminal { predicted: usize },
}

/// Shifts scalar leading coefficients and all-scalar points to zero and
/// drops what vanishes. Returns the shift used, or `None` if nothing changed.
pub fn remove_scalar_parts(t: &Tuple) -> (Tuple, Option<ShiftVector>) {
    let slots = t.slots();
    let mut shift = vec![Scalar::zero(); slots.len()];
    let mut pos = 0;
    for (i, p) in t.points().iter().enumerate() {
        let all_scalar = p.coeffs.iter().all(|a| a.as_scalar().is_some());
        for (k, a) in p.coeffs.iter().enumerate() {
            let leading = k == 0 && p.m >= 1;
            if leading || (all_scalar && i != 0) {
                if let Some(c) = a.as_scalar() {
                    shift[pos + k] = -c;
                }
            }
        }
        pos += p.coeffs.len();
    }
    if shift.iter().all(Scalar::is_zero) {
        let stripped = t.strip();
        return (stripped, None);
    }
    let sv = ShiftVector(shift);
    let shifted = t.addition(&sv).expect("shift length matches");
    (shifted.strip(), Some(sv))
}

/// One addition plus middle convolution lowering the size, if possible.
pub fn reduce_step(t: &Tuple) -> Result<StepResult, ReductionError> {
    let pivots = choose_pivot(t)?;
    if !is_irreducible(t) {
        return Err(ReductionError::Reducible);
    }
    let shift = pivot_shift(t, &pivots);
    let shifted = t.addition(&shift).expect("shift length matches");
    let (mu, dim_l) = choose_mu(&shifted)?;
    let total = shifted.n() * shifted.slot_count();
    let (_, k) = subspace_k(&shifted);
    let predicted = total.saturating_sub(k.dim() + dim_l);
    if predicted >= t.n() {
        return Ok(StepResult::Terminal { predicted });
    }
    if mu.is_zero() {
        return Err(ReductionError::ZeroMu);
    }
    let out = middle_convolution(&shifted, &mu)?;
    debug_assert_eq!(out.result.n(), predicted);
    let (tuple, cleanup) = if out.result.n() >= 2 {
        remove_scalar_parts(&out.result)
    } else {
        (out.result, None)
    };
    let step = ReductionStep {
        pivots,
        shift: shift.0,
        mu,
        size_before: t.n(),
        size_after: tuple.n(),
        cleanup_shift: cleanup.map(|s| s.0),
    };
    Ok(StepResult::Reduced { tuple, step })
}

/// How a reduction ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    ReducedToRankOne,
    Terminal { pattern: TerminalPattern, classification: Classification },
    AssumptionViolated(String),
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::ReducedToRankOne => write!(f, "reduced to rank one"),
            Verdict::Terminal { pattern, classification } => write!(f, "terminal {pattern} ({classification})"),
            Verdict::AssumptionViolated(why) => write!(f, "assumption violated: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub terminal: Tuple,
    pub verdict: Verdict,
}

impl ReductionTrace {
    pub fn sizes(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.steps.iter().map(|s| s.size_before).collect();
        out.push(self.terminal.n());
        out
    }
}

/// Patterns of every point of `t`.
pub fn terminal_pattern(t: &Tuple) -> Result<TerminalPattern, SpectralError> {
    let pats = (0..t.points().len())
        .map(|i| spectral_type(t, i).map(|st| st.pattern()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TerminalPattern::new(&pats))
}

/// Repeats [`reduce_step`] until the size is one or no longer drops.
/// Precondition failures end the trace with an `AssumptionViolated` verdict.
pub fn reduce(t: &Tuple) -> ReductionTrace {
    let mut steps = Vec::new();
    let mut cur = if t.n() >= 2 { remove_scalar_parts(t).0 } else { t.clone() };
    loop {
        if cur.n() == 1 {
            return ReductionTrace { steps, terminal: cur, verdict: Verdict::ReducedToRankOne };
        }
        match reduce_step(&cur) {
            Ok(StepResult::Reduced { tuple, step }) => {
                steps.push(step);
                cur = tuple;
            }
            Ok(StepResult::Terminal { .. }) => {
                let verdict = match terminal_pattern(&cur) {
                    Ok(pattern) => {
                        let classification = classify_terminal(&pattern);
                        Verdict::Terminal { pattern, classification }
                    }
                    Err(e) => Verdict::AssumptionViolated(e.to_string()),
                };
                return ReductionTrace { steps, terminal: cur, verdict };
            }
            Err(e) => {
                return ReductionTrace { steps, terminal: cur, verdict: Verdict::AssumptionViolated(e.to_string()) };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;
    use crate::model::fixtures;

    #[test]
    fn hypergeometric_one_step() {
        let t = fixtures::hypergeometric(&q(1, 1), &q(1, 2), &q(1, 3), &q(1, 1)).unwrap();
        let tr = reduce(&t);
        assert_eq!(tr.verdict, Verdict::ReducedToRankOne);
        assert_eq!(tr.steps.len(), 1);
        assert_eq!(tr.steps[0].mu, q(1, 3));
        assert_eq!(tr.sizes(), vec![2, 1]);
    }

    #[test]
    fn bessel_violates_assumptions() {
        let t = fixtures::bessel(&q(1, 1), &q(0, 1), &q(1, 1), &q(1, 1));
        assert!(matches!(reduce(&t).verdict, Verdict::AssumptionViolated(_)));
    }
}
