//! Convolution matrices and middle convolution.
//!
//! For a tuple with `M` coefficient slots the convolution matrices act on
//! `V' = V^M`, split into one block of size `n` per slot in slot order.
//! Middle convolution is the action induced on `V' / (K + L(mu))`.

use thiserror::Error;

use crate::exactla::{Mat, Scalar, Subspace};
use crate::model::{Slot, Tuple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvolutionError {
    #[error("middle convolution with mu={mu} has a zero-dimensional quotient")]
    Degenerate { mu: Scalar },
}

/// The convolution matrices of a tuple, packaged as a tuple of size `nM`
/// with the original skeleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolvedTuple {
    pub base: Tuple,
    pub mu: Scalar,
    /// Slot owning each block of `V'`, in block order.
    pub block_index: Vec<Slot>,
}

/// Result of a middle convolution together with the quotient data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McOutcome {
    pub result: Tuple,
    pub mu: Scalar,
    /// `dim K^{(i)}` for every point, infinity first (always 0).
    pub dim_k: Vec<usize>,
    pub dim_l: usize,
    /// `nM -> n~` map onto the complement coordinates, vanishing on `K + L(mu)`.
    pub projection: Mat,
    /// `n~ -> nM` coordinate embedding of the complement.
    pub section: Mat,
}

/// Which coordinate complement of `K + L(mu)` represents the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Complement {
    /// Non-pivot rows of the canonical basis, pivots taken topmost.
    #[default]
    LeftmostPivot,
    /// Same construction after reversing the coordinate order.
    RightmostPivot,
}

/// Upper triangular block Toeplitz matrix with first block row
/// `blocks[0], blocks[1], ..., blocks[m]` (highest index first).
fn block_toeplitz(blocks: &[Mat], n: usize) -> Mat {
    let k = blocks.len();
    let mut out = Mat::zeros(k * n, k * n);
    for p in 0..k {
        for q in p..k {
            out.set_block(p * n, q * n, &blocks[q - p]);
        }
    }
    out
}

/// Block position of every slot, plus the first block of each point.
fn block_offsets(t: &Tuple) -> Vec<usize> {
    let mut starts = Vec::with_capacity(t.points().len());
    let mut acc = 0;
    for p in t.points() {
        starts.push(acc);
        acc += p.slot_count();
    }
    starts
}

fn slot_block(t: &Tuple, starts: &[usize], point: usize, j: usize) -> usize {
    let p = &t.points()[point];
    starts[point] + (p.m - j)
}

/// The convolution matrix for slot `(i, j)`.
pub fn convolution_matrix(t: &Tuple, mu: &Scalar, slot: Slot) -> Mat {
    let n = t.n();
    let size = n * t.slot_count();
    let starts = block_offsets(t);
    let row: Vec<&Mat> = t.slot_matrices();
    let full_row = Mat::hstack(&row);
    let mut out = Mat::zeros(size, size);
    let Slot { point: i, j } = slot;
    let b = slot_block(t, &starts, i, j);
    out.set_block(b * n, 0, &full_row);
    let mu_i = Mat::scalar(n, mu);
    if i != 0 {
        let c = slot_block(t, &starts, i, 0);
        let blk = out.submatrix(b * n, c * n, n, n);
        out.set_block(b * n, c * n, &(&blk + &mu_i));
    }
    let m = t.points()[i].m;
    for jp in j + 1..=m {
        let r = slot_block(t, &starts, i, jp);
        let c = slot_block(t, &starts, i, jp - j);
        out.set_block(r * n, c * n, &mu_i);
    }
    out
}

/// All convolution matrices, as a tuple of size `nM`.
pub fn convolution_matrices(t: &Tuple, mu: &Scalar) -> ConvolvedTuple {
    let slots = t.slots();
    let mats = slots.iter().map(|&s| convolution_matrix(t, mu, s)).collect();
    let base = t.with_slot_matrices(t.n() * t.slot_count(), mats).expect("same skeleton");
    ConvolvedTuple { base, mu: mu.clone(), block_index: slots }
}

/// `K^{(i)}` for every point (embedded in `V'`) and their direct sum.
pub fn subspace_k(t: &Tuple) -> (Vec<Subspace>, Subspace) {
    let n = t.n();
    let total = n * t.slot_count();
    let starts = block_offsets(t);
    let mut parts = vec![Subspace::zero(total)];
    let mut vectors = Vec::new();
    for (i, p) in t.points().iter().enumerate().skip(1) {
        let ker = block_toeplitz(&p.coeffs, n).nullspace();
        let emb = ker.embed(starts[i] * n, total);
        vectors.extend(emb.basis_vectors());
        parts.push(emb);
    }
    (parts, Subspace::from_vectors(total, &vectors))
}

/// `L'(mu)`: vectors vanishing outside the infinity blocks and the residue
/// blocks, with all residue blocks equal to `-l`, where `(v^{(0)}, l)` solves
/// the infinity Toeplitz system with corner `A_0^{(0)} - mu I`.
pub fn subspace_l_prime(t: &Tuple, mu: &Scalar) -> Subspace {
    let n = t.n();
    let total = n * t.slot_count();
    let starts = block_offsets(t);
    let mut blocks = t.infinity().coeffs.clone();
    blocks.push(t.residue_at_infinity().shifted(&-mu));
    let m0 = t.infinity().m;
    let sol = block_toeplitz(&blocks, n).nullspace();
    let vectors: Vec<Vec<Scalar>> = sol
        .basis_vectors()
        .into_iter()
        .map(|w| {
            let mut v = vec![Scalar::zero(); total];
            v[..m0 * n].clone_from_slice(&w[..m0 * n]);
            let ell = &w[m0 * n..];
            for i in 1..t.points().len() {
                let b = slot_block(t, &starts, i, 0);
                for (k, x) in ell.iter().enumerate() {
                    v[b * n + k] = -x;
                }
            }
            v
        })
        .collect();
    Subspace::from_vectors(total, &vectors)
}

/// `L(mu)`: equal to `L'(mu)` for `mu != 0`; for `mu = 0` the kernel of the
/// full coefficient row.
pub fn subspace_l(t: &Tuple, mu: &Scalar) -> Subspace {
    if mu.is_zero() {
        let row: Vec<&Mat> = t.slot_matrices();
        Mat::hstack(&row).nullspace()
    } else {
        subspace_l_prime(t, mu)
    }
}

/// Size of `mc_mu(t)` without building it.
pub fn predicted_size(t: &Tuple, mu: &Scalar) -> usize {
    let total = t.n() * t.slot_count();
    let (_, k) = subspace_k(t);
    if mu.is_zero() {
        total - k.sum(&subspace_l(t, mu)).dim()
    } else {
        total - k.dim() - subspace_l_prime(t, mu).dim()
    }
}

pub fn middle_convolution(t: &Tuple, mu: &Scalar) -> Result<McOutcome, ConvolutionError> {
    middle_convolution_with(t, mu, Complement::LeftmostPivot)
}

/// Middle convolution using the given complement of `K + L(mu)`.
pub fn middle_convolution_with(t: &Tuple, mu: &Scalar, complement: Complement) -> Result<McOutcome, ConvolutionError> {
    let total = t.n() * t.slot_count();
    let (parts, k) = subspace_k(t);
    let l = subspace_l(t, mu);
    let w = k.sum(&l);
    let new_n = total - w.dim();
    if new_n == 0 {
        return Err(ConvolutionError::Degenerate { mu: mu.clone() });
    }

    // perm[i] is the original coordinate at position i of the working order
    let perm: Vec<usize> = match complement {
        Complement::LeftmostPivot => (0..total).collect(),
        Complement::RightmostPivot => (0..total).rev().collect(),
    };
    let permuted: Vec<Vec<Scalar>> =
        w.basis_vectors().iter().map(|v| perm.iter().map(|&p| v[p].clone()).collect()).collect();
    let wp = Subspace::from_vectors(total, &permuted);
    let pivots: Vec<usize> = wp.pivot_rows().iter().map(|&i| perm[i]).collect();
    let mut free: Vec<usize> = wp.non_pivot_rows().into_iter().map(|i| perm[i]).collect();
    free.sort_unstable();
    let mut basis = Mat::zeros(total, wp.dim());
    for i in 0..total {
        for c in 0..wp.dim() {
            basis[(perm[i], c)] = wp.basis()[(i, c)].clone();
        }
    }

    let mut projection = Mat::zeros(new_n, total);
    let mut section = Mat::zeros(total, new_n);
    for (k, &f) in free.iter().enumerate() {
        projection[(k, f)] = Scalar::one();
        section[(f, k)] = Scalar::one();
        for (c, &p) in pivots.iter().enumerate() {
            let b = &basis[(f, c)];
            if !b.is_zero() {
                projection[(k, p)] = -b;
            }
        }
    }

    let mats = t
        .slots()
        .into_iter()
        .map(|s| {
            let a = convolution_matrix(t, mu, s);
            let cols = a.select(&(0..total).collect::<Vec<_>>(), &free);
            &projection * &cols
        })
        .collect();
    let result = t.with_slot_matrices(new_n, mats).expect("same skeleton");
    Ok(McOutcome {
        result,
        mu: mu.clone(),
        dim_k: parts.iter().map(Subspace::dim).collect(),
        dim_l: l.dim(),
        projection,
        section,
    })
}

/// Outcome of checking that a subspace is mapped into itself by one
/// convolution matrix.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct InclusionCheck {
    pub slot: Slot,
    pub subspace: &'static str,
    pub holds: bool,
}

/// Tests `A~ K ⊆ K`, `A~ L(mu) ⊆ L(mu)` and `A~ L'(mu) ⊆ L'(mu)` for every slot.
pub fn check_invariance(t: &Tuple, mu: &Scalar) -> Vec<InclusionCheck> {
    let (_, k) = subspace_k(t);
    let spaces = [("K", k), ("L", subspace_l(t, mu)), ("L'", subspace_l_prime(t, mu))];
    let mut out = Vec::new();
    for slot in t.slots() {
        let a = convolution_matrix(t, mu, slot);
        for (name, s) in &spaces {
            out.push(InclusionCheck { slot, subspace: name, holds: s.is_invariant_under(&a) });
        }
    }
    out
}
