//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use midconv::exactla::{q, rational_spectrum, is_semisimple, Mat, Scalar};
use midconv::model::{build_l, spectral_type, ShiftVector, SingularPoint, Tuple};
use midconv::convolution::middle_convolution;
use midconv::rigidity::{index, is_irreducible};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(x: i64) -> Scalar {
    Scalar::from_int(x)
}

pub fn rand_int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Scalar {
    int(rng.gen_range(lo..=hi))
}

/// Small rational, occasionally with denominator 2 or 3.
pub fn rand_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Scalar {
    let den = *[1, 1, 1, 2, 3].choose(rng).unwrap();
    q(rng.gen_range(lo..=hi), den)
}

pub fn rand_nonzero(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Scalar {
    loop {
        let x = rand_rational(rng, lo, hi);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn rand_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Mat {
    let data = (0..rows * cols).map(|_| rand_rational(rng, lo, hi)).collect();
    Mat::from_vec(rows, cols, data)
}

/// Product of random elementary matrices: integer with integer inverse.
pub fn rand_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    let mut p = Mat::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = int(rng.gen_range(-2..=2));
        let mut e = Mat::identity(n);
        e[(i, j)] = c;
        p = &p * &e;
    }
    p
}

/// `P D P^{-1}` with the given diagonal.
pub fn semisimple_with(rng: &mut ChaCha8Rng, diag: &[Scalar]) -> Mat {
    let p = rand_unimodular(rng, diag.len());
    let pinv = p.inverse().unwrap();
    &(&p * &Mat::diag(diag)) * &pinv
}

/// Random tuple with the given size, number of finite points and maximal
/// Poincare rank.
pub fn random_tuple(rng: &mut ChaCha8Rng, n: usize, r: usize, max_m: usize) -> Tuple {
    let mut m0 = rng.gen_range(0..=max_m);
    if r == 0 && m0 == 0 {
        m0 = 1;
    }
    let inf = SingularPoint::infinity((0..m0).map(|_| rand_mat(rng, n, n, -2, 2)).collect());
    let finite = (0..r)
        .map(|i| {
            let m = rng.gen_range(0..=max_m);
            SingularPoint::finite(int(i as i64), (0..=m).map(|_| rand_mat(rng, n, n, -2, 2)).collect())
        })
        .collect();
    Tuple::new(n, inf, finite).unwrap()
}

/// Random tuple within the property-suite bounds `n <= 4, r <= 2, m <= 2`.
pub fn property_tuple(rng: &mut ChaCha8Rng) -> Tuple {
    let n = rng.gen_range(1..=4);
    let r = rng.gen_range(0..=2);
    random_tuple(rng, n, r, 2)
}

/// An irreducible tuple with every `m_i <= 1`, semisimple rational leading
/// coefficients, and a residue at infinity whose compression to `ker A_1`
/// has known nonzero rational eigenvalues (returned).
pub fn semisimple_instance(rng: &mut ChaCha8Rng) -> (Tuple, Vec<Scalar>) {
    loop {
        let n = *[2, 2, 3, 3, 4].choose(rng).unwrap();
        let r = if n == 4 { 1 } else { rng.gen_range(1..=2) };
        // infinity: A_1 = P D P^-1 with zeros first, A_0 = P U P^-1 with U upper triangular
        let m0 = rng.gen_range(0..=1);
        let zeros = if m0 == 0 { n } else { rng.gen_range(1..n) };
        let mut d: Vec<Scalar> = vec![Scalar::zero(); zeros];
        while d.len() < n {
            d.push(rand_nonzero(rng, -2, 2));
        }
        let p0 = rand_unimodular(rng, n);
        let p0inv = p0.inverse().unwrap();
        let mut u = Mat::zeros(n, n);
        let mut special = Vec::new();
        for i in 0..n {
            let lam = rand_nonzero(rng, -3, 3);
            if i < zeros {
                special.push(lam.clone());
            }
            u[(i, i)] = lam;
            for j in i + 1..n {
                u[(i, j)] = rand_int(rng, -2, 2);
            }
        }
        let a1_inf = &(&p0 * &Mat::diag(&d)) * &p0inv;
        let a0_inf = &(&p0 * &u) * &p0inv;
        let inf = SingularPoint::infinity(if m0 == 1 { vec![a1_inf] } else { vec![] });

        let mut finite = Vec::new();
        let mut residue_sum = Mat::zeros(n, n);
        for i in 0..r {
            let m = rng.gen_range(0..=1);
            let a0 = if i + 1 == r {
                // residues sum to minus the residue at infinity
                -&(&a0_inf + &residue_sum)
            } else {
                rand_mat(rng, n, n, -2, 2)
            };
            residue_sum = &residue_sum + &a0;
            let mut coeffs = Vec::new();
            if m == 1 {
                let diag: Vec<Scalar> = (0..n).map(|_| rand_int(rng, -1, 2)).collect();
                coeffs.push(semisimple_with(rng, &diag));
            }
            coeffs.push(a0);
            finite.push(SingularPoint::finite(int(i as i64), coeffs));
        }
        let t = Tuple::new(n, inf, finite).unwrap();
        if is_irreducible(&t) {
            special.sort();
            special.dedup();
            return (t, special);
        }
    }
}

/// One `(A_1, A_0)` point assembled from `L(q; lambda)` blocks, with the
/// closed-form commutant dimension and kernel dimension it should have.
pub struct LBlockPoint {
    pub a1: Mat,
    pub a0: Mat,
    pub expected_commutant: usize,
    pub expected_kernel: usize,
    pub non_semisimple: bool,
}

fn rand_partition(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

pub fn lblock_point(rng: &mut ChaCha8Rng) -> LBlockPoint {
    let n = rng.gen_range(2..=4);
    let outer = rand_partition(rng, n);
    let mut d_values: Vec<i64> = vec![0, 1, -1, 2, -2];
    d_values.shuffle(rng);
    if rng.gen_bool(0.7) {
        // put 0 in play so the kernel formula is not vacuous
        let z = d_values.iter().position(|&x| x == 0).unwrap();
        d_values.swap(0, z);
    }
    let mut a1_diag = Vec::new();
    let mut blocks = Vec::new();
    let mut commutant = 0;
    let mut kernel = 0;
    let mut non_semisimple = false;
    for (l, &nl) in outer.iter().enumerate() {
        let d = int(d_values[l]);
        a1_diag.extend(std::iter::repeat_n(d.clone(), nl));
        commutant += nl * nl;
        let mut lam_values: Vec<i64> = vec![0, 1, -1, 3, -2, 2];
        lam_values.shuffle(rng);
        if rng.gen_bool(0.6) {
            let z = lam_values.iter().position(|&x| x == 0).unwrap();
            lam_values.swap(0, z);
        }
        let mut lam_iter = lam_values.into_iter();
        let mut inner_blocks = Vec::new();
        let mut left = nl;
        let mut zero_geom = 0;
        while left > 0 {
            let size = rng.gen_range(1..=left);
            left -= size;
            let qs = rand_partition(rng, size);
            if rng.gen_bool(0.5) {
                // one repeated eigenvalue: Jordan type is the conjugate of q
                let lam = lam_iter.next().unwrap();
                let lams = vec![int(lam); qs.len()];
                if qs.len() > 1 {
                    non_semisimple = true;
                }
                commutant += qs.iter().map(|x| x * x).sum::<usize>();
                if lam == 0 {
                    zero_geom = qs[0];
                }
                inner_blocks.push(build_l(&qs, &lams).unwrap());
            } else {
                // pairwise distinct eigenvalues: semisimple, lambda_s with multiplicity q_s
                let lams: Vec<i64> = (0..qs.len()).map(|_| lam_iter.next().unwrap()).collect();
                commutant += qs.iter().map(|x| x * x).sum::<usize>();
                for (s, &lam) in lams.iter().enumerate() {
                    if lam == 0 {
                        zero_geom = qs[s];
                    }
                }
                let lams: Vec<Scalar> = lams.into_iter().map(int).collect();
                inner_blocks.push(build_l(&qs, &lams).unwrap());
            }
        }
        if d.is_zero() {
            kernel = nl + zero_geom;
        }
        let refs: Vec<&Mat> = inner_blocks.iter().collect();
        blocks.push(Mat::direct_sum(&refs));
    }
    let refs: Vec<&Mat> = blocks.iter().collect();
    let mut a0 = Mat::direct_sum(&refs);
    // arbitrary coupling between different eigenspaces of A_1
    let mut start = 0;
    let starts: Vec<usize> = outer
        .iter()
        .map(|&nl| {
            let s = start;
            start += nl;
            s
        })
        .collect();
    for (l, &sl) in starts.iter().enumerate() {
        for (k, &sk) in starts.iter().enumerate() {
            if l == k {
                continue;
            }
            for i in 0..outer[l] {
                for j in 0..outer[k] {
                    a0[(sl + i, sk + j)] = rand_int(rng, -2, 2);
                }
            }
        }
    }
    let p = rand_unimodular(rng, n);
    let pinv = p.inverse().unwrap();
    LBlockPoint {
        a1: &(&p * &Mat::diag(&a1_diag)) * &pinv,
        a0: &(&p * &a0) * &pinv,
        expected_commutant: commutant,
        expected_kernel: kernel,
        non_semisimple,
    }
}

/// Diagonal `T` in block form and a semisimple `A` whose diagonal blocks
/// are semisimple.
pub fn okubo_instance(rng: &mut ChaCha8Rng) -> (Mat, Mat) {
    loop {
        let n = rng.gen_range(2..=4);
        let sizes = rand_partition(rng, n);
        let mut tvals: Vec<i64> = vec![0, 1, -1, 2, 3];
        tvals.shuffle(rng);
        let mut diag = Vec::new();
        for (j, &s) in sizes.iter().enumerate() {
            diag.extend(std::iter::repeat_n(int(tvals[j]), s));
        }
        let t = Mat::diag(&diag);
        let a = if rng.gen_bool(0.5) {
            rand_mat(rng, n, n, -3, 3)
        } else {
            // repeated eigenvalues give larger centralizers
            let e: Vec<Scalar> = (0..n).map(|_| rand_int(rng, -1, 1)).collect();
            semisimple_with(rng, &e)
        };
        let mut ok = is_semisimple(&a);
        let mut start = 0;
        for &s in &sizes {
            ok &= is_semisimple(&a.submatrix(start, start, s, s));
            start += s;
        }
        if ok {
            return (t, a);
        }
    }
}

fn all_points_typed(t: &Tuple) -> bool {
    (0..t.points().len()).all(|i| spectral_type(t, i).is_ok())
}

/// Rank-one seed with every `m_i <= 1`.
fn rank_one_seed(rng: &mut ChaCha8Rng) -> Tuple {
    let r = rng.gen_range(1..=2);
    let m0 = rng.gen_range(0..=1);
    let inf = SingularPoint::infinity((0..m0).map(|_| Mat::diag(&[rand_nonzero(rng, -2, 2)])).collect());
    let finite = (0..r)
        .map(|i| {
            let m = if r == 2 { 0 } else { rng.gen_range(0..=1) };
            SingularPoint::finite(int(i as i64), (0..=m).map(|_| Mat::diag(&[rand_nonzero(rng, -3, 3)])).collect())
        })
        .collect();
    Tuple::new(1, inf, finite).unwrap()
}

/// Shift that makes some residues singular, so the next convolution can grow.
fn growth_shift(rng: &mut ChaCha8Rng, t: &Tuple) -> ShiftVector {
    let mut s = Vec::new();
    for (i, p) in t.points().iter().enumerate() {
        for (k, a) in p.coeffs.iter().enumerate() {
            let j = p.m - k;
            let want_kernel = i != 0 && j == 0 && rng.gen_bool(0.7);
            let shift = if want_kernel {
                let sp = rational_spectrum(a);
                match sp.eigenvalues.choose(rng) {
                    Some((lam, _)) => -lam,
                    None => Scalar::zero(),
                }
            } else if rng.gen_bool(0.3) {
                rand_int(rng, -1, 1)
            } else {
                Scalar::zero()
            };
            s.push(shift);
        }
    }
    ShiftVector(s)
}

/// Irreducible tuple of size 2..=4 and index 2, grown from a rank-one seed by
/// additions and middle convolutions, then conjugated.
pub fn idx2_instance(rng: &mut ChaCha8Rng) -> Tuple {
    loop {
        let mut t = rank_one_seed(rng);
        for _ in 0..4 {
            let shift = growth_shift(rng, &t);
            let shifted = t.addition(&shift).unwrap();
            let mu = rand_nonzero(rng, -3, 3);
            let Ok(out) = middle_convolution(&shifted, &mu) else { break };
            if out.result.n() > 4 {
                break;
            }
            t = out.result;
            if t.n() >= 2
                && rng.gen_bool(0.5)
                && is_irreducible(&t)
                && index(&t).idx == 2
                && all_points_typed(&t)
            {
                let p = rand_unimodular(rng, t.n());
                return t.conjugate(&p).unwrap();
            }
        }
    }
}

/// Fuchsian system of size 2 with four singular points (infinity with
/// `m_0 = 0` and three finite residues), each residue with two distinct
/// rational eigenvalues.
pub fn fuchsian_four_point(rng: &mut ChaCha8Rng) -> Tuple {
    loop {
        let mut residues: Vec<Mat> = (0..2)
            .map(|_| {
                let a = rand_int(rng, -3, 3);
                let mut b = rand_int(rng, -3, 3);
                while b == a {
                    b = rand_int(rng, -3, 3);
                }
                semisimple_with(rng, &[a, b])
            })
            .collect();
        let x = rand_int(rng, -3, 3);
        let gap = rand_nonzero(rng, 1, 3);
        let inf_res = semisimple_with(rng, &[x.clone(), &x + &gap]);
        let last = -&(&inf_res + &(&residues[0] + &residues[1]));
        let sp = rational_spectrum(&last);
        if !sp.fully_rational || sp.eigenvalues.len() != 2 {
            continue;
        }
        residues.push(last);
        let finite =
            residues.into_iter().enumerate().map(|(i, a)| SingularPoint::finite(int(i as i64), vec![a])).collect();
        let t = Tuple::new(2, SingularPoint::infinity(vec![]), finite).unwrap();
        if is_irreducible(&t) {
            return t;
        }
    }
}

// ---------------------------------------------------------------------------
// oracles

fn to_integer_rows(m: &Mat) -> Vec<Vec<BigInt>> {
    m.to_rows()
        .into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Rank by fraction-free integer elimination: rows are scaled to integers
/// and combined as `p * row - c * pivot_row`, then divided by their content.
pub fn ff_rank(m: &Mat) -> usize {
    let mut rows = to_integer_rows(m);
    let cols = m.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = &*x * &pivot[c] - &f * y;
            }
            let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

type RatPoly = Vec<Scalar>;

fn poly_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn poly_add(a: &RatPoly, b: &RatPoly, sign: bool) -> RatPoly {
    let mut out = vec![Scalar::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        if sign {
            out[i] += y;
        } else {
            out[i] -= y;
        }
    }
    out
}

fn cofactor_det(m: &[Vec<RatPoly>]) -> RatPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: RatPoly = vec![Scalar::zero()];
    for c in 0..n {
        let minor: Vec<Vec<RatPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = poly_mul(&m[0][c], &cofactor_det(&minor));
        acc = poly_add(&acc, &term, c % 2 == 0);
    }
    acc
}

/// `det(x I - m)` by cofactor expansion, coefficients lowest degree first.
pub fn cofactor_charpoly(m: &Mat) -> Vec<Scalar> {
    let n = m.rows();
    let grid: Vec<Vec<RatPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -&m[(i, j)];
                    if i == j {
                        vec![c, Scalar::one()]
                    } else {
                        vec![c]
                    }
                })
                .collect()
        })
        .collect();
    let mut p = cofactor_det(&grid);
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

/// `dim {X : A X = X A}` from the `n^2 x n^2` system, ranked by [`ff_rank`].
pub fn brute_centralizer_dim(a: &Mat) -> usize {
    brute_commutant_dim(std::slice::from_ref(a))
}

/// Upper triangular block Toeplitz matrix with first block row `blocks`.
pub fn toeplitz(blocks: &[Mat], n: usize) -> Mat {
    let k = blocks.len();
    let mut out = Mat::zeros(k * n, k * n);
    for p in 0..k {
        for q in p..k {
            for x in 0..n {
                for y in 0..n {
                    out[(p * n + x, q * n + y)] = blocks[q - p][(x, y)].clone();
                }
            }
        }
    }
    out
}

/// Dimension of the block Toeplitz matrices commuting with the block
/// Toeplitz matrix of `coeffs` (highest index first), found by applying the
/// commutator to every unit Toeplitz matrix and ranking the images.
pub fn brute_commutant_dim(coeffs: &[Mat]) -> usize {
    let n = coeffs[0].rows();
    let k = coeffs.len();
    let a = toeplitz(coeffs, n);
    let unknowns = k * n * n;
    let size = k * n;
    let mut images = Mat::zeros(size * size, unknowns);
    for u in 0..unknowns {
        let mut blocks = vec![Mat::zeros(n, n); k];
        let (b, rest) = (u / (n * n), u % (n * n));
        blocks[b][(rest / n, rest % n)] = Scalar::one();
        let c = toeplitz(&blocks, n);
        let comm = &(&a * &c) - &(&c * &a);
        for (e, x) in comm.entries().iter().enumerate() {
            images[(e, u)] = x.clone();
        }
    }
    unknowns - ff_rank(&images)
}

/// Coefficients of point `i` with the residue at infinity recomputed here.
pub fn point_blocks(t: &Tuple, i: usize) -> Vec<Mat> {
    let p = &t.points()[i];
    let mut out = p.coeffs.clone();
    if i == 0 {
        let mut res = Mat::zeros(t.n(), t.n());
        for f in t.finite() {
            res = &res - f.coeffs.last().unwrap();
        }
        out.push(res);
    }
    out
}

/// Slot list `(i, j)` in block order.
pub fn slot_order(t: &Tuple) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, p) in t.points().iter().enumerate() {
        let low = if i == 0 { 1 } else { 0 };
        for j in (low..=p.m).rev() {
            out.push((i, j));
        }
    }
    out
}

fn slot_coeff(t: &Tuple, (i, j): (usize, usize)) -> Mat {
    let p = &t.points()[i];
    p.coeffs[p.m - j].clone()
}

/// Convolution matrix for slot `(i, j)` written entry by entry from the
/// block description: block row `(i, j)` holds every coefficient (plus `mu`
/// on block `(i, 0)` for finite `i`), block row `(i, j')` with `j' > j`
/// holds `mu` on block `(i, j' - j)`.
pub fn direct_convolution(t: &Tuple, mu: &Scalar, target: (usize, usize)) -> Mat {
    let n = t.n();
    let slots = slot_order(t);
    let size = n * slots.len();
    let mut out = Mat::zeros(size, size);
    for (rb, &row_slot) in slots.iter().enumerate() {
        for (cb, &col_slot) in slots.iter().enumerate() {
            let mut block = Mat::zeros(n, n);
            if row_slot == target {
                block = slot_coeff(t, col_slot);
                if target.0 != 0 && col_slot == (target.0, 0) {
                    block = block.shifted(mu);
                }
            } else if row_slot.0 == target.0 && row_slot.1 > target.1 && col_slot == (target.0, row_slot.1 - target.1)
            {
                block = Mat::scalar(n, mu);
            }
            for x in 0..n {
                for y in 0..n {
                    out[(rb * n + x, cb * n + y)] = block[(x, y)].clone();
                }
            }
        }
    }
    out
}

/// Index of rigidity straight from the definition with oracle commutants.
pub fn oracle_idx(t: &Tuple) -> i64 {
    let n = t.n() as i64;
    let total: usize = (0..t.points().len()).map(|i| brute_commutant_dim(&point_blocks(t, i))).sum();
    total as i64 - (t.slot_count() as i64 - 1) * n * n
}
