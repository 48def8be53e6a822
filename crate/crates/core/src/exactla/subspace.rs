use super::elim;
use super::{Mat, Scalar};

/// A linear subspace of `Q^ambient_dim` held in its canonical form: the basis
/// matrix is in column-reduced echelon form with the pivot of each column at
/// its topmost nonzero row, pivot entries equal to 1 and every other basis
/// column vanishing on that row.
///
/// Two spanning sets of the same space always produce identical values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Mat,
    pivot_rows: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Mat::zeros(ambient_dim, 0), pivot_rows: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Mat::identity(ambient_dim), pivot_rows: (0..ambient_dim).collect() }
    }

    /// Span of the given vectors (each of length `ambient_dim`).
    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "vector length does not match ambient dimension");
        }
        let e = elim::rref_rows(vectors.to_vec(), ambient_dim);
        let basis = Mat::from_columns(ambient_dim, &e.rows);
        Subspace { ambient_dim, basis, pivot_rows: e.pivots }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Mat) -> Self {
        let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|j| m.col(j)).collect();
        Self::from_vectors(m.rows(), &cols)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|j| self.basis.col(j)).collect()
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    /// Membership test: `v` lies in the space iff it equals the combination
    /// of basis columns read off its pivot coordinates.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let coords: Vec<Scalar> = self.pivot_rows.iter().map(|&p| v[p].clone()).collect();
        let recon = self.basis.mul_vec(&coords);
        recon.as_slice() == v
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::from_vectors(self.ambient_dim, &vs)
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Image of the space under `m` (a map from this ambient space).
    pub fn image_under(&self, m: &Mat) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim);
        let vs: Vec<Vec<Scalar>> = self.basis_vectors().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::from_vectors(m.rows(), &vs)
    }

    /// True when `m` maps the space into itself.
    pub fn is_invariant_under(&self, m: &Mat) -> bool {
        self.basis_vectors().iter().all(|v| self.contains(&m.mul_vec(v)))
    }

    /// Places the space into a larger ambient space at coordinate `offset`.
    pub fn embed(&self, offset: usize, ambient_dim: usize) -> Subspace {
        assert!(offset + self.ambient_dim <= ambient_dim);
        let mut basis = Mat::zeros(ambient_dim, self.dim());
        basis.set_block(offset, 0, &self.basis);
        Subspace {
            ambient_dim,
            basis,
            pivot_rows: self.pivot_rows.iter().map(|p| p + offset).collect(),
        }
    }

    /// Coordinates not used as pivots; they index a complement of the space.
    pub fn non_pivot_rows(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivot_rows {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }
}
