use std::fmt;

use thiserror::Error;

use crate::exactla::{Mat, Scalar};

/// Where a singular point sits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Location {
    Infinity,
    Finite(Scalar),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Infinity => write!(f, "infinity"),
            Location::Finite(t) => write!(f, "t={t}"),
        }
    }
}

/// One singular point with its Poincare-rank parameter and coefficients.
///
/// Coefficients are stored highest index first. A finite point holds the
/// `m + 1` matrices `A_m, ..., A_0`; the point at infinity holds the `m`
/// matrices `A_m, ..., A_1` (its residue is derived from the others).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SingularPoint {
    pub location: Location,
    pub m: usize,
    pub coeffs: Vec<Mat>,
}

impl SingularPoint {
    pub fn infinity(coeffs: Vec<Mat>) -> Self {
        SingularPoint { location: Location::Infinity, m: coeffs.len(), coeffs }
    }

    /// Finite point at `t`; `coeffs` must be non-empty.
    pub fn finite(t: Scalar, coeffs: Vec<Mat>) -> Self {
        let m = coeffs.len().saturating_sub(1);
        SingularPoint { location: Location::Finite(t), m, coeffs }
    }

    pub fn is_infinity(&self) -> bool {
        self.location == Location::Infinity
    }

    /// Number of coefficient slots this point contributes to `M`.
    pub fn slot_count(&self) -> usize {
        if self.is_infinity() {
            self.m
        } else {
            self.m + 1
        }
    }

    /// Stored coefficient `A_j`, if present.
    pub fn coeff(&self, j: usize) -> Option<&Mat> {
        if j > self.m {
            return None;
        }
        self.coeffs.get(self.m - j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("matrix size must be at least 1")]
    ZeroSize,
    #[error("point {point}: coefficient A_{j} is {rows}x{cols}, expected {n}x{n}")]
    Dimension { point: usize, j: usize, rows: usize, cols: usize, n: usize },
    #[error("point {point}: expected {expected} coefficient matrices for m={m}, found {found}")]
    CoefficientCount { point: usize, m: usize, expected: usize, found: usize },
    #[error("duplicate finite location t={0}")]
    DuplicateLocation(Scalar),
    #[error("point {0}: location does not match its position (infinity must come first, then finite points)")]
    Misplaced(usize),
    #[error("tuple has no coefficient slots (M = 0)")]
    NoSlots,
    #[error("shift vector has length {found}, expected M = {expected}")]
    ShiftLength { expected: usize, found: usize },
    #[error("point index {index} out of range (tuple has {count} points)")]
    PointIndex { index: usize, count: usize },
    #[error("point {point}: only points with m=0 can be padded (m={m})")]
    NotPaddable { point: usize, m: usize },
    #[error("expected {expected} slot matrices, found {found}")]
    SlotCount { expected: usize, found: usize },
}

/// A coefficient slot `(i, j)`: point `i` (0 is infinity), index `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Slot {
    pub point: usize,
    pub j: usize,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.point, self.j)
    }
}

/// One scalar per coefficient slot, in slot order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftVector(pub Vec<Scalar>);

impl ShiftVector {
    pub fn zeros(len: usize) -> Self {
        ShiftVector(vec![Scalar::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn plus(&self, other: &ShiftVector) -> ShiftVector {
        assert_eq!(self.len(), other.len());
        ShiftVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn negated(&self) -> ShiftVector {
        ShiftVector(self.0.iter().map(|a| -a).collect())
    }
}

/// The tuple of coefficient matrices of a system with singular points at
/// infinity and at `t_1, ..., t_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tuple {
    n: usize,
    points: Vec<SingularPoint>,
}

impl Tuple {
    pub fn new(n: usize, infinity: SingularPoint, finite: Vec<SingularPoint>) -> Result<Self, ModelError> {
        let mut points = Vec::with_capacity(finite.len() + 1);
        points.push(infinity);
        points.extend(finite);
        let t = Tuple { n, points };
        t.validate()?;
        Ok(t)
    }

    /// Checks every structural invariant.
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.n == 0 {
            return Err(ModelError::ZeroSize);
        }
        for (i, p) in self.points.iter().enumerate() {
            if p.is_infinity() != (i == 0) {
                return Err(ModelError::Misplaced(i));
            }
            let expected = p.slot_count();
            if p.coeffs.len() != expected {
                return Err(ModelError::CoefficientCount { point: i, m: p.m, expected, found: p.coeffs.len() });
            }
            for (k, a) in p.coeffs.iter().enumerate() {
                if a.rows() != self.n || a.cols() != self.n {
                    return Err(ModelError::Dimension { point: i, j: p.m - k, rows: a.rows(), cols: a.cols(), n: self.n });
                }
            }
        }
        for (a, pa) in self.points.iter().enumerate().skip(1) {
            for pb in &self.points[a + 1..] {
                if pa.location == pb.location {
                    let Location::Finite(t) = &pa.location else { unreachable!() };
                    return Err(ModelError::DuplicateLocation(t.clone()));
                }
            }
        }
        if self.slot_count() == 0 {
            return Err(ModelError::NoSlots);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of finite singular points.
    pub fn r(&self) -> usize {
        self.points.len() - 1
    }

    /// `M = r + sum m_i`, the number of coefficient slots.
    pub fn slot_count(&self) -> usize {
        self.points.iter().map(SingularPoint::slot_count).sum()
    }

    pub fn infinity(&self) -> &SingularPoint {
        &self.points[0]
    }

    pub fn finite(&self) -> &[SingularPoint] {
        &self.points[1..]
    }

    pub fn points(&self) -> &[SingularPoint] {
        &self.points
    }

    /// Point `i`, with `0` the point at infinity.
    pub fn point(&self, i: usize) -> Result<&SingularPoint, ModelError> {
        self.points.get(i).ok_or(ModelError::PointIndex { index: i, count: self.points.len() })
    }

    /// `A_0^{(0)} = -(A_0^{(1)} + ... + A_0^{(r)})`.
    pub fn residue_at_infinity(&self) -> Mat {
        let mut acc = Mat::zeros(self.n, self.n);
        for p in self.finite() {
            acc = &acc - p.coeff(0).expect("finite point has a residue");
        }
        acc
    }

    /// The full coefficient list `A_m, ..., A_0` of point `i`, using the
    /// derived residue at infinity.
    pub fn point_coeffs(&self, i: usize) -> Result<Vec<Mat>, ModelError> {
        let p = self.point(i)?;
        let mut out = p.coeffs.clone();
        if p.is_infinity() {
            out.push(self.residue_at_infinity());
        }
        Ok(out)
    }

    /// Coefficient slots in the order `(0,m_0), ..., (0,1), (1,m_1), ..., (1,0), ..., (r,0)`.
    pub fn slots(&self) -> Vec<Slot> {
        let mut out = Vec::with_capacity(self.slot_count());
        for (i, p) in self.points.iter().enumerate() {
            let low = usize::from(p.is_infinity());
            for j in (low..=p.m).rev() {
                out.push(Slot { point: i, j });
            }
        }
        out
    }

    /// Stored coefficient matrices in slot order.
    pub fn slot_matrices(&self) -> Vec<&Mat> {
        self.points.iter().flat_map(|p| p.coeffs.iter()).collect()
    }

    /// Every coefficient including the derived residue at infinity.
    pub fn all_matrices(&self) -> Vec<Mat> {
        let mut out: Vec<Mat> = self.slot_matrices().into_iter().cloned().collect();
        out.push(self.residue_at_infinity());
        out
    }

    /// A tuple with the same singularity skeleton and new coefficients of
    /// size `n`, given in slot order.
    pub fn with_slot_matrices(&self, n: usize, mats: Vec<Mat>) -> Result<Tuple, ModelError> {
        if mats.len() != self.slot_count() {
            return Err(ModelError::SlotCount { expected: self.slot_count(), found: mats.len() });
        }
        let mut it = mats.into_iter();
        let points = self
            .points
            .iter()
            .map(|p| SingularPoint {
                location: p.location.clone(),
                m: p.m,
                coeffs: it.by_ref().take(p.slot_count()).collect(),
            })
            .collect();
        let t = Tuple { n, points };
        t.validate()?;
        Ok(t)
    }

    /// True when `other` has the same number of points, the same `m_i` and
    /// the same locations.
    pub fn same_skeleton(&self, other: &Tuple) -> bool {
        self.points.len() == other.points.len()
            && self.points.iter().zip(&other.points).all(|(a, b)| a.m == b.m && a.location == b.location)
    }

    /// Adds `s_j^{(i)} I` to every coefficient.
    pub fn addition(&self, s: &ShiftVector) -> Result<Tuple, ModelError> {
        if s.len() != self.slot_count() {
            return Err(ModelError::ShiftLength { expected: self.slot_count(), found: s.len() });
        }
        let mats = self.slot_matrices().into_iter().zip(&s.0).map(|(a, c)| a.shifted(c)).collect();
        self.with_slot_matrices(self.n, mats)
    }

    /// Raises point `i` from `m = 0` to `m = 1` with a zero leading coefficient.
    pub fn pad_point(&self, i: usize) -> Result<Tuple, ModelError> {
        let p = self.point(i)?;
        if p.m != 0 {
            return Err(ModelError::NotPaddable { point: i, m: p.m });
        }
        let mut t = self.clone();
        let p = &mut t.points[i];
        p.m = 1;
        p.coeffs.insert(0, Mat::zeros(self.n, self.n));
        Ok(t)
    }

    /// Drops zero leading coefficients (lowering `m_i`) and finite points
    /// whose coefficients are all zero. Falls back to the input when the
    /// result would have no slots left.
    pub fn strip(&self) -> Tuple {
        let mut points = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let mut p = p.clone();
            let floor = usize::from(!p.is_infinity());
            while p.coeffs.len() > floor && p.coeffs[0].is_zero() {
                p.coeffs.remove(0);
                p.m = p.m.saturating_sub(1);
            }
            if !p.is_infinity() && p.coeffs.len() == 1 && p.coeffs[0].is_zero() {
                continue;
            }
            points.push(p);
        }
        let t = Tuple { n: self.n, points };
        if t.slot_count() == 0 {
            self.clone()
        } else {
            t
        }
    }

    /// True when every stored coefficient of point `i` is a scalar matrix.
    pub fn is_removable(&self, i: usize) -> Result<bool, ModelError> {
        Ok(self.point(i)?.coeffs.iter().all(|a| a.as_scalar().is_some()))
    }

    /// Simultaneous conjugation `P^{-1} A P` of every coefficient.
    pub fn conjugate(&self, p: &Mat) -> Option<Tuple> {
        let inv = p.inverse()?;
        let mats = self.slot_matrices().into_iter().map(|a| &(&inv * a) * p).collect();
        self.with_slot_matrices(self.n, mats).ok()
    }
}
