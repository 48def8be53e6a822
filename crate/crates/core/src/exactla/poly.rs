use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Mat, Scalar};

/// Univariate polynomial over the rationals, coefficients lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Scalar::one()] }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `x - root`.
    pub fn linear(root: &Scalar) -> Self {
        Poly { coeffs: vec![-root, Scalar::one()] }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        assert!(m.is_square());
        let mut acc = Mat::zeros(m.rows(), m.cols());
        for c in self.coeffs.iter().rev() {
            acc = (&acc * m).shifted(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Scalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.recip().expect("nonzero leading coefficient");
                Poly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Scalar::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().recip().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Multiplicity of `root` as a root (0 if it is not a root).
    pub fn root_multiplicity(&self, root: &Scalar) -> usize {
        let lin = Poly::linear(root);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }

    /// The rational roots of the polynomial, each listed once, ascending.
    ///
    /// The squarefree part is scaled to a monic polynomial with integer
    /// coefficients (`x -> y / D`), whose rational roots are integers; these
    /// are located exactly by Sturm-sequence bisection over an integer
    /// Cauchy bound.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let s = self.squarefree_part();
        let d = s.degree().unwrap();
        // monic: s = x^d + c_{d-1} x^{d-1} + ... ; with D = lcm of denominators,
        // t(y) = D^d s(y/D) = y^d + D c_{d-1} y^{d-1} + ... + D^d c_0 is integral.
        let den = s.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let dscal = Scalar::from_bigint(den.clone());
        let mut t = Vec::with_capacity(d + 1);
        let mut pow = Scalar::one();
        for k in (0..=d).rev() {
            t.push((k, &s.coeffs[k] * &pow));
            pow = &pow * &dscal;
        }
        let mut tc = vec![Scalar::zero(); d + 1];
        for (k, c) in t {
            tc[k] = c;
        }
        let t = Poly::new(tc);
        integer_roots_of_monic(&t)
            .into_iter()
            .map(|z| Scalar::from_big_ratio(z, den.clone()).unwrap())
            .collect()
    }
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&-Scalar::one()));
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &Scalar) -> usize {
    let mut last = 0i32;
    let mut changes = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Integer roots of a squarefree monic polynomial with integer coefficients.
fn integer_roots_of_monic(p: &Poly) -> Vec<BigInt> {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return Vec::new();
    }
    let bound = p.coeffs[..d]
        .iter()
        .map(|c| c.numer().abs())
        .max()
        .unwrap_or_else(BigInt::zero)
        + BigInt::one();
    let seq = sturm_sequence(p);
    let count = |lo: &BigInt, hi: &BigInt| -> usize {
        // number of distinct real roots in (lo, hi]
        sign_changes(&seq, &Scalar::from_bigint(lo.clone()))
            - sign_changes(&seq, &Scalar::from_bigint(hi.clone()))
    };
    let mut roots = Vec::new();
    let mut stack = vec![(-&bound - BigInt::one(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        if count(&lo, &hi) == 0 {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if p.eval(&Scalar::from_bigint(hi.clone())).is_zero() {
                roots.push(hi);
            }
            continue;
        }
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    roots.sort();
    roots
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Characteristic polynomial `det(x I - m)` by Hessenberg reduction.
pub(crate) fn charpoly_hessenberg(m: &Mat) -> Poly {
    let n = m.rows();
    let mut h = m.clone();
    for c in 0..n.saturating_sub(2) {
        let target = c + 1;
        let Some(p) = (target..n).find(|&i| !h[(i, c)].is_zero()) else { continue };
        if p != target {
            for j in 0..n {
                let tmp = h[(p, j)].clone();
                h[(p, j)] = h[(target, j)].clone();
                h[(target, j)] = tmp;
            }
            for i in 0..n {
                let tmp = h[(i, p)].clone();
                h[(i, p)] = h[(i, target)].clone();
                h[(i, target)] = tmp;
            }
        }
        let piv = h[(target, c)].clone();
        for i in target + 1..n {
            if h[(i, c)].is_zero() {
                continue;
            }
            let u = &h[(i, c)] / &piv;
            for j in 0..n {
                let t = &u * &h[(target, j)];
                h[(i, j)] -= t;
            }
            for k in 0..n {
                let t = &u * &h[(k, i)];
                h[(k, target)] += t;
            }
        }
    }
    // p_k(x) = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<Poly> = vec![Poly::one()];
    for k in 0..n {
        let mut pk = Poly::linear(&h[(k, k)]).mul(&ps[k]);
        let mut t = Scalar::one();
        for i in (0..k).rev() {
            t = &t * &h[(i + 1, i)];
            if t.is_zero() {
                break;
            }
            let c = &t * &h[(i, k)];
            if !c.is_zero() {
                pk = pk.sub(&ps[i].scale(&c));
            }
        }
        ps.push(pk);
    }
    ps.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;

    fn p(xs: &[i64]) -> Poly {
        Poly::new(xs.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]); // x + 1
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot, p(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1]).mul(&p(&[2, 1]))), p(&[-1, 1]));
    }

    #[test]
    fn squarefree_part_drops_repeats() {
        let f = p(&[-3, 1]).mul(&p(&[-3, 1])).mul(&p(&[0, 1]));
        assert_eq!(f.squarefree_part(), p(&[0, -3, 1]));
        assert_eq!(f.root_multiplicity(&Scalar::from_int(3)), 2);
    }

    #[test]
    fn rational_roots_with_fractions() {
        // (x - 1/3)(x + 5/2)(x^2 - 2)
        let f = Poly::linear(&q(1, 3)).mul(&Poly::linear(&q(-5, 2))).mul(&p(&[-2, 0, 1]));
        assert_eq!(f.rational_roots(), vec![q(-5, 2), q(1, 3)]);
        assert!(p(&[-2, 0, 1]).rational_roots().is_empty());
        assert_eq!(p(&[0, 0, 1]).rational_roots(), vec![Scalar::zero()]);
    }

    #[test]
    fn large_integer_roots() {
        let big = Scalar::from_int(1_000_000_007);
        let f = Poly::linear(&big).mul(&Poly::linear(&-Scalar::from_int(99_991))).mul(&p(&[1, 0, 1]));
        assert_eq!(f.rational_roots(), vec![-Scalar::from_int(99_991), big]);
    }
}
