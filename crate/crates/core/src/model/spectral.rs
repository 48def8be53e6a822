use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use super::{ModelError, Tuple};
use crate::exactla::{
    conjugate_partition, eigenspace, is_semisimple, jordan_partition, rational_spectrum, Mat, Scalar,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("point {point}: spectral types need m <= 1 (m={m})")]
    RankTooHigh { point: usize, m: usize },
    #[error("point {point}: leading coefficient A_1 is not semisimple")]
    NotSemisimple { point: usize },
    #[error("point {point}: {what} has eigenvalues outside the rationals")]
    IrrationalSpectrum { point: usize, what: &'static str },
}

/// One eigenvalue of a compressed residue block.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct InnerEigen {
    pub eigenvalue: Scalar,
    pub multiplicity: usize,
    /// Jordan block sizes, descending.
    pub partition: Vec<usize>,
}

impl InnerEigen {
    /// The multiplicities this eigenvalue contributes to the pattern; the
    /// conjugate of its Jordan partition (the first part is the geometric
    /// multiplicity).
    pub fn pattern_parts(&self) -> Vec<usize> {
        conjugate_partition(&self.partition)
    }

    pub fn geometric_multiplicity(&self) -> usize {
        self.partition.len()
    }
}

/// An eigenspace of the leading coefficient with the spectral data of the
/// residue compressed to it.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SpectralBlock {
    pub eigenvalue: Scalar,
    pub size: usize,
    pub sub: Vec<InnerEigen>,
}

impl SpectralBlock {
    /// Inner multiplicities `n_{l,1} >= n_{l,2} >= ...`.
    pub fn inner_pattern(&self) -> Vec<usize> {
        let mut parts: Vec<usize> = self.sub.iter().flat_map(InnerEigen::pattern_parts).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// `n_l^2 + sum_j n_{l,j}^2`.
    pub fn commutant_weight(&self) -> usize {
        self.size * self.size + self.inner_pattern().iter().map(|q| q * q).sum::<usize>()
    }
}

/// Multiplicity data of a pair `(A_1, A_0)` at one point.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SpectralType {
    pub blocks: Vec<SpectralBlock>,
}

/// The bare multiplicity pattern of a point: outer sizes and inner parts,
/// both sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointPattern(pub Vec<(usize, Vec<usize>)>);

impl PointPattern {
    pub fn new(mut blocks: Vec<(usize, Vec<usize>)>) -> Self {
        for (_, inner) in blocks.iter_mut() {
            inner.sort_unstable_by(|a, b| b.cmp(a));
        }
        blocks.sort_by(|a, b| b.cmp(a));
        PointPattern(blocks)
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|(n, _)| n).sum()
    }

    /// `sum_l (n_l^2 + sum_j n_{l,j}^2)`.
    pub fn commutant_dim(&self) -> usize {
        self.0.iter().map(|(n, inner)| n * n + inner.iter().map(|q| q * q).sum::<usize>()).sum()
    }

    /// `max_l (n_l + n_{l,1})`.
    pub fn max_kernel(&self) -> usize {
        self.0.iter().map(|(n, inner)| n + inner[0]).max().unwrap_or(0)
    }

    /// A single block with a single part: both coefficients scalar.
    pub fn is_scalar(&self) -> bool {
        self.0.len() == 1 && self.0[0].1.len() == 1
    }

    pub fn scaled(&self, d: usize) -> PointPattern {
        PointPattern(self.0.iter().map(|(n, inner)| (n * d, inner.iter().map(|q| q * d).collect())).collect())
    }

    pub fn gcd(&self) -> usize {
        self.0
            .iter()
            .flat_map(|(n, inner)| std::iter::once(*n).chain(inner.iter().copied()))
            .fold(0, num_integer::gcd)
    }

    pub fn divided(&self, d: usize) -> PointPattern {
        PointPattern(self.0.iter().map(|(n, inner)| (n / d, inner.iter().map(|q| q / d).collect())).collect())
    }
}

impl fmt::Display for PointPattern {
    /// `(n_1,n_2)-((n_11,..),(n_21,..))`; a single outer block (a regular
    /// singular point) prints as its inner pattern alone.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        if let [(_, inner)] = self.0.as_slice() {
            return write!(f, "({})", join(inner));
        }
        let outer: Vec<usize> = self.0.iter().map(|(n, _)| *n).collect();
        let inner: Vec<String> = self.0.iter().map(|(_, v)| format!("({})", join(v))).collect();
        write!(f, "({})-({})", join(&outer), inner.join(","))
    }
}

impl SpectralType {
    pub fn size(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn pattern(&self) -> PointPattern {
        PointPattern::new(self.blocks.iter().map(|b| (b.size, b.inner_pattern())).collect())
    }

    /// `sum_l (n_l^2 + sum_j n_{l,j}^2)`, the commutant dimension of a point
    /// with this type.
    pub fn commutant_dim(&self) -> usize {
        self.blocks.iter().map(SpectralBlock::commutant_weight).sum()
    }

    /// For a single outer block (regular singular point) the inner pattern alone.
    pub fn regular_pattern(&self) -> Option<Vec<usize>> {
        match self.blocks.as_slice() {
            [b] => Some(b.inner_pattern()),
            _ => None,
        }
    }
}

impl fmt::Display for SpectralType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.pattern(), f)
    }
}

fn desc_then_tie(a: (usize, &Scalar), b: (usize, &Scalar)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| Scalar::tie_order(a.1, b.1))
}

/// Eigenbasis of a semisimple matrix with fully rational spectrum: the
/// eigenvalues in the given order with the column ranges of `P` spanning
/// each eigenspace.
pub(crate) fn eigenbasis(a1: &Mat, order: &[Scalar]) -> (Mat, Vec<std::ops::Range<usize>>) {
    let n = a1.rows();
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut ranges = Vec::with_capacity(order.len());
    for d in order {
        let start = cols.len();
        cols.extend(eigenspace(a1, d).basis_vectors());
        ranges.push(start..cols.len());
    }
    (Mat::from_columns(n, &cols), ranges)
}

/// Spectral type of a pair: eigenspaces of `a1` with the spectrum of `a0`
/// compressed to each of them.
pub fn spectral_type_of_pair(a1: &Mat, a0: &Mat, point: usize) -> Result<SpectralType, SpectralError> {
    let sp = rational_spectrum(a1);
    if !sp.fully_rational {
        return Err(SpectralError::IrrationalSpectrum { point, what: "A_1" });
    }
    if !is_semisimple(a1) {
        return Err(SpectralError::NotSemisimple { point });
    }
    let mut outer: Vec<(Scalar, usize)> = sp.eigenvalues.clone();
    outer.sort_by(|a, b| desc_then_tie((a.1, &a.0), (b.1, &b.0)));
    let order: Vec<Scalar> = outer.iter().map(|(d, _)| d.clone()).collect();
    let (p, ranges) = eigenbasis(a1, &order);
    let c = a0.conjugate_by(&p);
    let mut blocks = Vec::with_capacity(order.len());
    for (d, range) in order.into_iter().zip(ranges) {
        let size = range.len();
        let blk = c.submatrix(range.start, range.start, size, size);
        let isp = rational_spectrum(&blk);
        if !isp.fully_rational {
            return Err(SpectralError::IrrationalSpectrum { point, what: "a compressed A_0 block" });
        }
        let mut sub: Vec<InnerEigen> = isp
            .eigenvalues
            .into_iter()
            .map(|(lambda, k)| {
                let partition = jordan_partition(&blk, &lambda);
                InnerEigen { eigenvalue: lambda, multiplicity: k, partition }
            })
            .collect();
        sub.sort_by(|a, b| {
            b.geometric_multiplicity()
                .cmp(&a.geometric_multiplicity())
                .then(b.multiplicity.cmp(&a.multiplicity))
                .then_with(|| Scalar::tie_order(&a.eigenvalue, &b.eigenvalue))
        });
        blocks.push(SpectralBlock { eigenvalue: d, size, sub });
    }
    Ok(SpectralType { blocks })
}

/// The leading coefficient and residue of a point with `m <= 1`; a point
/// with `m = 0` is read as padded with a zero leading coefficient.
pub fn leading_pair(t: &Tuple, i: usize) -> Result<(Mat, Mat), SpectralError> {
    let p = t.point(i)?;
    if p.m > 1 {
        return Err(SpectralError::RankTooHigh { point: i, m: p.m });
    }
    let coeffs = t.point_coeffs(i)?;
    let a0 = coeffs.last().unwrap().clone();
    let a1 = if p.m == 1 { coeffs[0].clone() } else { Mat::zeros(t.n(), t.n()) };
    Ok((a1, a0))
}

/// Spectral type of point `i` (0 is infinity, read with its derived residue).
pub fn spectral_type(t: &Tuple, i: usize) -> Result<SpectralType, SpectralError> {
    let (a1, a0) = leading_pair(t, i)?;
    spectral_type_of_pair(&a1, &a0, i)
}
