//! Twisted Reed-Solomon codes: validation, basis polynomials, generator matrices,
//! encoding and the random-code sampler.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldConfig};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Exhaustive minimum-distance search refuses codes with more codewords than this.
pub const MIN_DISTANCE_LIMIT: u64 = 2_000_000;

/// An `[n, k]` twisted RS code with `ell = t.len()` twists.
///
/// Messages are coefficient vectors `(f_0, ..., f_{k-1})`; the codeword of `f` is the
/// evaluation of `sum f_i X^i + sum_j eta_j f_{h_j} X^{k-1+t_j}` at `alpha`, followed by
/// the coefficient of `X^{k-1+t_1}` when `at_infinity` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCode {
    field: Field,
    k: usize,
    alpha: Vec<Elem>,
    t: Vec<usize>,
    h: Vec<usize>,
    eta: Vec<Elem>,
    at_infinity: bool,
}

impl TwistedCode {
    pub fn new(
        field: &Field,
        alpha: Vec<Elem>,
        k: usize,
        t: Vec<usize>,
        h: Vec<usize>,
        eta: Vec<Elem>,
        at_infinity: bool,
    ) -> Result<TwistedCode> {
        let n = alpha.len();
        let bad = |s: String| Err(Error::InvalidCode(s));
        if k == 0 || k >= n {
            return bad(format!("need 0 < k < n, got k={k}, n={n}"));
        }
        if n > field.q() as usize {
            return bad(format!("n={n} exceeds q={}", field.q()));
        }
        for &a in &alpha {
            field.check(a)?;
        }
        if alpha.iter().collect::<HashSet<_>>().len() != n {
            return bad("evaluation points are not distinct".into());
        }
        if t.len() != h.len() || t.len() != eta.len() {
            return bad(format!("t, h, eta have lengths {}, {}, {}", t.len(), h.len(), eta.len()));
        }
        for &e in &eta {
            field.check(e)?;
        }
        for (&ti, &hi) in t.iter().zip(&h) {
            if ti < 1 || ti > n - k {
                return bad(format!("twist {ti} outside 1..={}", n - k));
            }
            if hi >= k {
                return bad(format!("hook {hi} outside 0..{k}"));
            }
        }
        let pairs: HashSet<(usize, usize)> = h.iter().copied().zip(t.iter().copied()).collect();
        if pairs.len() != t.len() {
            return bad("(h, t) pairs are not distinct".into());
        }
        if at_infinity && t.len() != 1 {
            return bad("evaluation at infinity needs exactly one twist".into());
        }
        Ok(TwistedCode { field: field.clone(), k, alpha, t, h, eta, at_infinity })
    }

    /// The RS code with the given evaluation points.
    pub fn reed_solomon(field: &Field, alpha: Vec<Elem>, k: usize) -> Result<TwistedCode> {
        TwistedCode::new(field, alpha, k, vec![], vec![], vec![], false)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of finite evaluation points.
    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// Block length, counting the coordinate at infinity.
    pub fn len(&self) -> usize {
        self.alpha.len() + self.at_infinity as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.t.len()
    }

    pub fn alpha(&self) -> &[Elem] {
        &self.alpha
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn eta(&self) -> &[Elem] {
        &self.eta
    }

    pub fn at_infinity(&self) -> bool {
        self.at_infinity
    }

    /// Same code with different twist coefficients.
    pub fn with_eta(&self, eta: Vec<Elem>) -> Result<TwistedCode> {
        TwistedCode::new(&self.field, self.alpha.clone(), self.k, self.t.clone(), self.h.clone(), eta, self.at_infinity)
    }

    /// `g_i = X^i + sum_{h_j = i} eta_j X^{k-1+t_j}` for `i = 0..k`.
    pub fn basis_polys(&self) -> Vec<Poly> {
        let f = &self.field;
        (0..self.k)
            .map(|i| {
                let mut p = Poly::monomial(f, Elem::ONE, i);
                for j in 0..self.ell() {
                    if self.h[j] == i {
                        p = p.add(&Poly::monomial(f, self.eta[j], self.k - 1 + self.t[j]));
                    }
                }
                p
            })
            .collect()
    }

    /// The twisted polynomial attached to a message.
    pub fn message_poly(&self, msg: &[Elem]) -> Result<Poly> {
        if msg.len() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, got: msg.len() });
        }
        let f = &self.field;
        let mut c = msg.to_vec();
        c.resize(self.k + self.t.iter().max().copied().unwrap_or(0), Elem::ZERO);
        for j in 0..self.ell() {
            let d = self.k - 1 + self.t[j];
            c[d] = f.add(c[d], f.mul(self.eta[j], msg[self.h[j]]));
        }
        Ok(Poly::new(f, c))
    }

    fn infinity_entry(&self, msg: &[Elem]) -> Elem {
        self.field.mul(self.eta[0], msg[self.h[0]])
    }

    /// `k x len` generator whose row `i` evaluates `g_i`.
    pub fn generator_canonical(&self) -> Matrix {
        let f = &self.field;
        let basis = self.basis_polys();
        Matrix::from_fn(f, self.k, self.len(), |i, j| {
            if j < self.n() {
                basis[i].eval(self.alpha[j])
            } else {
                basis[i].coeff(self.k - 1 + self.t[0])
            }
        })
    }

    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        let p = self.message_poly(msg)?;
        let mut cw: Vec<Elem> = self.alpha.iter().map(|&a| p.eval(a)).collect();
        if self.at_infinity {
            cw.push(self.infinity_entry(msg));
        }
        Ok(cw)
    }

    /// The block `A` of a systematic generator `[I | A]`.
    pub fn systematic_form(&self) -> Result<Matrix> {
        systematic_block(&self.generator_canonical())
    }

    /// Exhaustive minimum distance (over messages with leading nonzero entry one).
    pub fn min_distance_exhaustive(&self) -> Result<usize> {
        min_distance_of(&self.generator_canonical())
    }

    pub fn params(&self) -> CodeParams {
        CodeParams {
            field: self.field.config(),
            n: self.n(),
            k: self.k,
            alpha: self.alpha.iter().map(|a| a.to_int()).collect(),
            t: self.t.clone(),
            h: self.h.clone(),
            eta: self.eta.iter().map(|a| a.to_int()).collect(),
            at_infinity: self.at_infinity,
        }
    }
}

/// Systematic block of an arbitrary full-rank `k x n` generator.
pub fn systematic_block(g: &Matrix) -> Result<Matrix> {
    let k = g.rows();
    let left = g.block(0, 0, k, k);
    let inv = left.inverse().map_err(|_| Error::SingularLeftBlock)?;
    let sys = inv.mul(g)?;
    Ok(sys.block(0, k, k, g.cols() - k))
}

pub fn min_distance_of(g: &Matrix) -> Result<usize> {
    let f = g.field();
    let (k, n) = (g.rows(), g.cols());
    let q = f.q() as u64;
    let total = q.checked_pow(k as u32).unwrap_or(u64::MAX);
    if total > MIN_DISTANCE_LIMIT {
        return Err(Error::TooLarge(format!("{total} codewords")));
    }
    let rows = g.row_vecs();
    let mut best = n;
    // messages whose first nonzero coordinate is 1 represent every codeword up to scaling
    for lead in 0..k {
        let rest = k - lead - 1;
        let count = q.pow(rest as u32);
        for idx in 0..count {
            let mut cw = rows[lead].clone();
            let mut x = idx;
            for r in lead + 1..k {
                let c = Elem::from_index(x % q);
                x /= q;
                if c.is_zero() {
                    continue;
                }
                for (o, &v) in cw.iter_mut().zip(&rows[r]) {
                    *o = f.add(*o, f.mul(c, v));
                }
            }
            let w = cw.iter().filter(|e| !e.is_zero()).count();
            best = best.min(w);
        }
    }
    Ok(best)
}

/// Samples a random twisted code as used in the simulations: `alpha` is a uniform
/// `n`-subset of the nonzero elements, `(t, h)` is uniform among vectors with distinct
/// pairs, and `eta` is uniform over the nonzero elements.
pub fn sample_random_code(field: &Field, n: usize, k: usize, ell: usize, seed: u64) -> Result<TwistedCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_random_code_with(field, n, k, ell, &mut rng)
}

pub fn sample_random_code_with<R: Rng>(field: &Field, n: usize, k: usize, ell: usize, rng: &mut R) -> Result<TwistedCode> {
    let q = field.q() as usize;
    if k == 0 || k >= n || n > q - 1 {
        return Err(Error::InfeasibleParameters(format!("need 0 < k < n <= q-1, got n={n}, k={k}, q={q}")));
    }
    if ell > k * (n - k) {
        return Err(Error::InfeasibleParameters(format!("only {} distinct (h, t) pairs exist", k * (n - k))));
    }
    let mut pool: Vec<Elem> = field.nonzero_elements().collect();
    let (chosen, _) = pool.partial_shuffle(rng, n);
    let alpha = chosen.to_vec();
    let (t, h) = loop {
        let t: Vec<usize> = (0..ell).map(|_| rng.gen_range(1..=n - k)).collect();
        let h: Vec<usize> = (0..ell).map(|_| rng.gen_range(0..k)).collect();
        let pairs: HashSet<(usize, usize)> = h.iter().copied().zip(t.iter().copied()).collect();
        if pairs.len() == ell {
            break (t, h);
        }
    };
    let eta: Vec<Elem> = (0..ell).map(|_| Elem::from_index(rng.gen_range(1..q as u64))).collect();
    TwistedCode::new(field, alpha, k, t, h, eta, false)
}

/// JSON description of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub field: FieldConfig,
    pub n: usize,
    pub k: usize,
    pub alpha: Vec<u32>,
    #[serde(default)]
    pub t: Vec<usize>,
    #[serde(default)]
    pub h: Vec<usize>,
    #[serde(default)]
    pub eta: Vec<u32>,
    #[serde(default)]
    pub at_infinity: bool,
}

impl CodeParams {
    pub fn build(&self) -> Result<TwistedCode> {
        let field = self.field.build()?;
        self.build_in(&field)
    }

    pub fn build_in(&self, field: &Field) -> Result<TwistedCode> {
        if self.alpha.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: self.alpha.len() });
        }
        let conv = |v: &[u32]| v.iter().map(|&x| field.elem(x as u64)).collect::<Result<Vec<_>>>();
        TwistedCode::new(field, conv(&self.alpha)?, self.k, self.t.clone(), self.h.clone(), conv(&self.eta)?, self.at_infinity)
    }
}
