//! Commutants, the index of rigidity, irreducibility and simultaneous
//! similarity of tuples.

use thiserror::Error;

use crate::exactla::{is_semisimple, rational_spectrum, Mat, Scalar, Subspace};
use crate::model::{eigenbasis, PointPattern, SpectralType, Tuple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RigidityError {
    #[error("tuples have different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("tuples have different singularity skeletons after stripping")]
    SkeletonMismatch,
    #[error("T and A must be square of equal size")]
    Shape,
    #[error("{0} is not semisimple")]
    NotSemisimple(&'static str),
    #[error("T must have a rational spectrum")]
    IrrationalSpectrum,
}

/// Index of rigidity with its per-point ingredients.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RigidityReport {
    pub n: usize,
    pub r: usize,
    pub slots: usize,
    pub commutant_dims: Vec<usize>,
    pub local_indices: Vec<i64>,
    pub idx: i64,
}

impl RigidityReport {
    /// `idx = sum_i idx_i + 2 n^2`.
    pub fn local_identity_holds(&self) -> bool {
        let n2 = (self.n * self.n) as i64;
        self.idx == self.local_indices.iter().sum::<i64>() + 2 * n2
    }
}

/// Linear map `(C_m, ..., C_0) -> ` the coupled commutation relations with
/// the block Toeplitz matrix of `coeffs = (A_m, ..., A_0)`.
fn commutant_system(coeffs: &[Mat]) -> Mat {
    let n = coeffs[0].rows();
    let k_max = coeffs.len();
    let n2 = n * n;
    let mut sys = Mat::zeros(k_max * n2, k_max * n2);
    // relation k: sum_{j=0}^{k} (A_{m-j} C_{m-k+j} - C_{m-k+j} A_{m-j}) = 0,
    // where position p in the lists holds index m - p.
    for k in 0..k_max {
        for (j, a) in coeffs.iter().enumerate().take(k + 1) {
            let cpos = k - j;
            for x in 0..n {
                for y in 0..n {
                    let row = k * n2 + x * n + y;
                    for b in 0..n {
                        // (A C)_{xy} gets A[x,b] C[b,y]
                        if !a[(x, b)].is_zero() {
                            sys[(row, cpos * n2 + b * n + y)] += &a[(x, b)];
                        }
                        // (C A)_{xy} gets C[x,b] A[b,y]
                        if !a[(b, y)].is_zero() {
                            sys[(row, cpos * n2 + x * n + b)] -= &a[(b, y)];
                        }
                    }
                }
            }
        }
    }
    sys
}

/// Dimension of the space of block Toeplitz matrices commuting with the
/// block Toeplitz matrix built from `coeffs = (A_m, ..., A_0)`.
pub fn commutant_dim_of(coeffs: &[Mat]) -> usize {
    commutant_system(coeffs).nullity()
}

/// `dim Z(m)`, the centralizer dimension of a single matrix.
pub fn centralizer_dim(m: &Mat) -> usize {
    commutant_dim_of(std::slice::from_ref(m))
}

/// `dim C^{(i)}` for point `i` (the residue at infinity is the derived one).
pub fn commutant_dim(t: &Tuple, i: usize) -> usize {
    commutant_dim_of(&t.point_coeffs(i).expect("point index in range"))
}

/// `idx_i = dim C^{(i)} - (m_i + 1) n^2`.
pub fn local_index(t: &Tuple, i: usize) -> i64 {
    let n2 = (t.n() * t.n()) as i64;
    let m = t.points()[i].m as i64;
    commutant_dim(t, i) as i64 - (m + 1) * n2
}

/// `idx = sum_i dim C^{(i)} - (M - 1) n^2`.
pub fn index(t: &Tuple) -> RigidityReport {
    let n2 = (t.n() * t.n()) as i64;
    let dims: Vec<usize> = (0..t.points().len()).map(|i| commutant_dim(t, i)).collect();
    let local = dims
        .iter()
        .zip(t.points())
        .map(|(&d, p)| d as i64 - (p.m as i64 + 1) * n2)
        .collect();
    let total: i64 = dims.iter().map(|&d| d as i64).sum();
    let slots = t.slot_count();
    RigidityReport {
        n: t.n(),
        r: t.r(),
        slots,
        commutant_dims: dims,
        local_indices: local,
        idx: total - (slots as i64 - 1) * n2,
    }
}

/// `sum_i sum_l (n_l^2 + sum_j n_{l,j}^2) - 2 r n^2`.
pub fn index_from_spectral(types: &[SpectralType], r: usize, n: usize) -> i64 {
    let pats: Vec<PointPattern> = types.iter().map(SpectralType::pattern).collect();
    index_from_patterns(&pats, r, n)
}

pub fn index_from_patterns(patterns: &[PointPattern], r: usize, n: usize) -> i64 {
    let s: usize = patterns.iter().map(PointPattern::commutant_dim).sum();
    s as i64 - 2 * (r * n * n) as i64
}

/// Index of the Okubo system `(z - T) Y' = A Y`:
/// `sum_j (n_j^2 + dim Z(A^{[jj]})) + dim Z(A) - n^2`, with `n_j` the
/// eigenvalue multiplicities of `T` and `A^{[jj]}` the matching diagonal
/// blocks of `A` in an eigenbasis of `T`.
pub fn okubo_index(t: &Mat, a: &Mat) -> Result<i64, RigidityError> {
    if !t.is_square() || !a.is_square() || t.rows() != a.rows() {
        return Err(RigidityError::Shape);
    }
    let n = t.rows();
    let sp = rational_spectrum(t);
    if !sp.fully_rational {
        return Err(RigidityError::IrrationalSpectrum);
    }
    if !is_semisimple(t) {
        return Err(RigidityError::NotSemisimple("T"));
    }
    if !is_semisimple(a) {
        return Err(RigidityError::NotSemisimple("A"));
    }
    let order: Vec<Scalar> = sp.values().cloned().collect();
    let (p, ranges) = eigenbasis(t, &order);
    let c = a.conjugate_by(&p);
    let mut total = 0i64;
    for range in ranges {
        let k = range.len();
        let blk = c.submatrix(range.start, range.start, k, k);
        if !is_semisimple(&blk) {
            return Err(RigidityError::NotSemisimple("a diagonal block of A"));
        }
        total += (k * k + centralizer_dim(&blk)) as i64;
    }
    Ok(total + centralizer_dim(a) as i64 - (n * n) as i64)
}

/// Row-reduced list of vectors supporting incremental membership tests.
struct IncrementalSpan {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl IncrementalSpan {
    fn new() -> Self {
        IncrementalSpan { rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent; returns whether it was added.
    fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].recip().unwrap();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Dimension of the unital algebra generated by the given matrices.
pub fn generated_algebra_dim(n: usize, gens: &[Mat]) -> usize {
    let gens: Vec<&Mat> = gens.iter().filter(|g| g.as_scalar().is_none()).collect();
    let mut span = IncrementalSpan::new();
    let mut queue = vec![Mat::identity(n)];
    span.insert(Mat::identity(n).entries().to_vec());
    while let Some(x) = queue.pop() {
        if span.dim() == n * n {
            break;
        }
        for g in &gens {
            let y = *g * &x;
            if span.insert(y.entries().to_vec()) {
                queue.push(y);
            }
        }
    }
    span.dim()
}

/// Absolute irreducibility: the coefficients (with the derived residue at
/// infinity) generate the full matrix algebra.
pub fn is_irreducible(t: &Tuple) -> bool {
    generated_algebra_dim(t.n(), &t.all_matrices()) == t.n() * t.n()
}

/// The space of `S` with `S A_k = B_k S` for all `k`.
pub fn intertwiners(a: &[Mat], b: &[Mat], n: usize) -> Vec<Mat> {
    let n2 = n * n;
    let mut sys = Mat::zeros(a.len() * n2, n2);
    for (k, (ak, bk)) in a.iter().zip(b).enumerate() {
        for x in 0..n {
            for y in 0..n {
                let row = k * n2 + x * n + y;
                for c in 0..n {
                    // (S A)_{xy} = S[x,c] A[c,y]; (B S)_{xy} = B[x,c] S[c,y]
                    if !ak[(c, y)].is_zero() {
                        sys[(row, x * n + c)] += &ak[(c, y)];
                    }
                    if !bk[(x, c)].is_zero() {
                        sys[(row, c * n + y)] -= &bk[(x, c)];
                    }
                }
            }
        }
    }
    let null: Subspace = sys.nullspace();
    null.basis_vectors().into_iter().map(|v| Mat::from_vec(n, n, v)).collect()
}

/// All `c` in `N^d` with `sum c <= bound`, by increasing total.
fn simplex_grid(d: usize, bound: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=bound).flat_map(move |total| compositions(d, total))
}

fn compositions(d: usize, total: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(d - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn combine(basis: &[Mat], c: &[usize]) -> Mat {
    let n = basis[0].rows();
    let mut acc = Mat::zeros(n, n);
    for (m, &k) in basis.iter().zip(c) {
        if k != 0 {
            acc = &acc + &m.scale(&Scalar::from_int(k as i64));
        }
    }
    acc
}

/// Finds an invertible `S` with `S A = B S` coefficientwise, comparing the
/// stripped tuples. `None` when every intertwiner is singular.
///
/// The determinant of a combination of intertwiners is a polynomial of
/// degree at most `n` in the coefficients, and such a polynomial vanishes on
/// the whole grid `{c in N^d : sum c <= n}` only if it is identically zero,
/// so the search below is exact.
pub fn are_similar(a: &Tuple, b: &Tuple) -> Result<Option<Mat>, RigidityError> {
    if a.n() != b.n() {
        return Err(RigidityError::SizeMismatch { left: a.n(), right: b.n() });
    }
    let (sa, sb) = (a.strip(), b.strip());
    if sa.points().len() != sb.points().len() || sa.points().iter().zip(sb.points()).any(|(x, y)| x.m != y.m) {
        return Err(RigidityError::SkeletonMismatch);
    }
    let n = a.n();
    if sa == sb {
        return Ok(Some(Mat::identity(n)));
    }
    let basis = intertwiners(&sa.all_matrices(), &sb.all_matrices(), n);
    if basis.is_empty() {
        return Ok(None);
    }
    let d = basis.len();
    let leading = [vec![1; d], (1..=d).collect::<Vec<_>>()];
    for c in leading.into_iter().chain(simplex_grid(d, n)) {
        let s = combine(&basis, &c);
        if !s.det().expect("square").is_zero() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;
    use crate::model::{fixtures, spectral_type, SingularPoint};

    fn hyper() -> Tuple {
        fixtures::hypergeometric(&q(1, 1), &q(1, 2), &q(1, 3), &q(1, 1)).unwrap()
    }

    #[test]
    fn hypergeometric_index() {
        let rep = index(&hyper());
        assert_eq!(rep.commutant_dims, vec![4, 2]);
        assert_eq!(rep.idx, 2);
        assert!(rep.local_identity_holds());
    }

    #[test]
    fn bessel_index() {
        let t = fixtures::bessel(&q(1, 1), &q(0, 1), &q(1, 1), &q(1, 1));
        assert_eq!(index(&t).idx, 2);
        assert!(is_irreducible(&t));
        assert!(!is_irreducible(&fixtures::bessel(&q(1, 1), &q(0, 1), &q(0, 1), &q(1, 1))));
    }

    #[test]
    fn spectral_route_agrees() {
        let t = hyper().pad_point(1).unwrap();
        let types: Vec<_> = (0..2).map(|i| spectral_type(&t, i).unwrap()).collect();
        assert_eq!(index_from_spectral(&types, 1, 2), 2);
    }

    #[test]
    fn okubo_diagonal() {
        let t = Mat::diag(&[q(0, 1), q(1, 1)]);
        let a = Mat::diag(&[q(1, 3), q(2, 5)]);
        assert_eq!(okubo_index(&t, &a).unwrap(), 2);
    }

    #[test]
    fn similarity_recovers_conjugation() {
        let t = hyper();
        let p = Mat::from_i64(&[&[1, 2], &[1, 3]]);
        let u = t.conjugate(&p).unwrap();
        let s = are_similar(&t, &u).unwrap().expect("similar");
        for (x, y) in t.all_matrices().iter().zip(u.all_matrices().iter()) {
            assert_eq!(&s * x, y * &s);
        }
        assert_eq!(are_similar(&t, &t).unwrap(), Some(Mat::identity(2)));
    }

    #[test]
    fn direct_sum_is_reducible() {
        let inf = SingularPoint::infinity(vec![Mat::diag(&[q(1, 1), q(2, 1)])]);
        let fin = SingularPoint::finite(q(0, 1), vec![Mat::diag(&[q(3, 1), q(5, 1)])]);
        assert!(!is_irreducible(&Tuple::new(2, inf, vec![fin]).unwrap()));
    }
}
