//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Polynomial with coefficients low-to-high and no trailing zeros.
///
/// The degree is `Option<usize>`, with `None` standing for the degree of the zero
/// polynomial; `None < Some(_)` so degree comparisons work without special cases.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ints: Vec<u32> = self.coeffs.iter().map(|c| c.to_int()).collect();
        write!(f, "Poly{:?}", ints)
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Builds a polynomial from integer encodings of its coefficients.
    pub fn from_ints(field: &Field, ints: &[u64]) -> Result<Poly> {
        let coeffs = ints.iter().map(|&n| field.elem(n)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    pub fn to_ints(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.to_int()).collect()
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c * X^d`.
    pub fn monomial(field: &Field, c: Elem, d: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![Elem::ZERO; d + 1];
        coeffs[d] = c;
        Poly { field: field.clone(), coeffs }
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Elem::ONE
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `X^d`.
    pub fn shift(&self, d: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; d];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let db = b.deg().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(b.lead())?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![Elem::ZERO; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = f.mul(r[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - db;
            q[shift] = c;
            for (i, &bi) in b.coeffs.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
            }
        }
        r.truncate(db);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divrem(b)?.1)
    }

    /// Keeps the coefficients of `X^0 .. X^{n-1}`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().take(n).copied().collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval_many(&self, points: &[Elem]) -> Result<Vec<Elem>> {
        for &x in points {
            self.field.check(x)?;
        }
        Ok(points.iter().map(|&x| self.eval(x)).collect())
    }

    /// Monic product of `(X - r)` over the given roots.
    pub fn from_roots(field: &Field, roots: &[Elem]) -> Poly {
        let mut coeffs = vec![Elem::ONE];
        for &r in roots {
            let nr = field.neg(r);
            let mut next = vec![Elem::ZERO; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = field.add(next[i + 1], c);
                next[i] = field.add(next[i], field.mul(c, nr));
            }
            coeffs = next;
        }
        Poly::new(field, coeffs)
    }

    /// Lagrange interpolation through pairwise distinct abscissae.
    pub fn interpolate(field: &Field, points: &[(Elem, Elem)]) -> Result<Poly> {
        let xs: Vec<Elem> = points.iter().map(|p| p.0).collect();
        let mut seen = std::collections::HashSet::new();
        for &x in &xs {
            field.check(x)?;
            if !seen.insert(x) {
                return Err(Error::DuplicatePoint);
            }
        }
        let master = Poly::from_roots(field, &xs);
        let mut acc = Poly::zero(field);
        for (i, &(xi, yi)) in points.iter().enumerate() {
            field.check(yi)?;
            if yi.is_zero() {
                continue;
            }
            let (basis, _) = master.divrem(&Poly::from_roots(field, &[xi]))?;
            let denom = field.product(xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &xj)| field.sub(xi, xj)));
            let c = field.div(yi, denom)?;
            acc = acc.add(&basis.scale(c));
        }
        Ok(acc)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(f: &Field, c: &[i64]) -> Poly {
        Poly::new(f, c.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn divrem_examples() {
        let f = Field::prime(5).unwrap();
        let (q, r) = p(&f, &[-1, 0, 1]).divrem(&p(&f, &[-1, 1])).unwrap();
        assert_eq!(q, p(&f, &[1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&f, &[0, 0, 1]).divrem(&p(&f, &[-1, 1])).unwrap();
        assert_eq!(q, p(&f, &[1, 1]));
        assert_eq!(r, p(&f, &[1]));
        assert_eq!(p(&f, &[1]).divrem(&Poly::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn divrem_roundtrip_random() {
        let f = Field::prime(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut a: Vec<Elem> = (0..8).map(|_| f.elem(rng.gen_range(0..13)).unwrap()).collect();
            a[7] = f.elem(rng.gen_range(1..13)).unwrap();
            let mut b: Vec<Elem> = (0..4).map(|_| f.elem(rng.gen_range(0..13)).unwrap()).collect();
            b[3] = f.elem(rng.gen_range(1..13)).unwrap();
            let (a, b) = (Poly::new(&f, a), Poly::new(&f, b));
            let (q, r) = a.divrem(&b).unwrap();
            assert!(r.deg() < b.deg());
            assert_eq!(&(&q * &b) + &r, a);
        }
    }

    #[test]
    fn eval_examples() {
        let f = Field::prime(5).unwrap();
        let pts: Vec<Elem> = [0, 1, 2].iter().map(|&x| f.elem(x).unwrap()).collect();
        assert_eq!(p(&f, &[0, 0, 1]).eval_many(&pts).unwrap(), vec![Elem::ZERO, Elem::ONE, f.elem(4).unwrap()]);
        assert_eq!(Poly::zero(&f).eval_many(&pts).unwrap(), vec![Elem::ZERO; 3]);
        let star: Vec<Elem> = f.nonzero_elements().collect();
        assert_eq!(p(&f, &[-1, 0, 0, 0, 1]).eval_many(&star).unwrap(), vec![Elem::ZERO; 4]);
    }

    #[test]
    fn interpolate_examples() {
        let f = Field::prime(5).unwrap();
        let e = |x: u64| f.elem(x).unwrap();
        let c = Poly::interpolate(&f, &[(e(0), e(3)), (e(1), e(3))]).unwrap();
        assert_eq!(c, p(&f, &[3]));
        let pts: Vec<(Elem, Elem)> = vec![(e(1), e(0)), (e(2), e(0)), (e(3), e(0)), (e(4), e(0)), (e(0), e(4))];
        assert_eq!(Poly::interpolate(&f, &pts).unwrap(), p(&f, &[-1, 0, 0, 0, 1]));
        assert_eq!(Poly::interpolate(&f, &[(e(1), e(0)), (e(1), e(2))]).unwrap_err(), Error::DuplicatePoint);

        let f13 = Field::prime(13).unwrap();
        let g = p(&f13, &[0, 2, 0, 1]);
        let xs: Vec<Elem> = [1, 4, 6, 9, 12].iter().map(|&x| f13.elem(x).unwrap()).collect();
        let ys = g.eval_many(&xs).unwrap();
        let pts: Vec<_> = xs.into_iter().zip(ys).collect();
        assert_eq!(Poly::interpolate(&f13, &pts).unwrap(), g);
    }

    #[test]
    fn from_roots_examples() {
        let f = Field::prime(5).unwrap();
        assert_eq!(Poly::from_roots(&f, &[]), Poly::one(&f));
        let star: Vec<Elem> = f.nonzero_elements().collect();
        assert_eq!(Poly::from_roots(&f, &star), p(&f, &[-1, 0, 0, 0, 1]));
        let r = Poly::from_roots(&f, &[Elem::ONE, f.elem(2).unwrap()]);
        assert_eq!(r, p(&f, &[2, 2, 1]));
    }

    #[test]
    fn zero_degree_sentinel_orders_below_integers() {
        let f = Field::prime(5).unwrap();
        assert_eq!(Poly::zero(&f).deg(), None);
        assert!(Poly::zero(&f).deg() < Poly::one(&f).deg());
    }
}
