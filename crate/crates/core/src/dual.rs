//! Duals of twisted RS codes on multiplicative groups.
//!
//! For `alpha` a multiplicative subgroup of order `n`, `(V_n^T)^{-1} = J_n V_n diag(alpha / n)`,
//! and the dual of `[I | L] V_n` is spanned by `[I | -J L^T J] V_n diag(alpha / n)`. The dual
//! of a twisted code with `(t, h, eta)` is therefore the twisted code with
//! `(k - h, n - k - t, -eta)`, scaled column-wise by `alpha / n`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::code::TwistedCode;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;

/// Twist parameters of the dual code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualParams {
    pub k: usize,
    pub t: Vec<usize>,
    pub h: Vec<usize>,
    pub eta: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct DualResult {
    pub params: DualParams,
    pub dual: TwistedCode,
    /// Parity-check matrix, equal to the canonical generator of `dual` times `diag(scale)`.
    pub h: Matrix,
    pub scale: Vec<Elem>,
}

fn is_mult_group(field: &Field, alpha: &[Elem]) -> bool {
    let set: HashSet<Elem> = alpha.iter().copied().collect();
    set.len() == alpha.len()
        && !set.contains(&Elem::ZERO)
        && alpha.iter().all(|&a| alpha.iter().all(|&b| set.contains(&field.mul(a, b))))
}

/// `J_n V_n(alpha) diag(alpha / n)`, the inverse of `V_n(alpha)^T`.
pub fn vandermonde_inverse_mult_group(field: &Field, alpha: &[Elem]) -> Result<Matrix> {
    if !is_mult_group(field, alpha) {
        return Err(Error::NotMultiplicativeGroup);
    }
    let n = alpha.len();
    let d = group_scale(field, alpha);
    let v = Matrix::vandermonde(field, n, alpha);
    Ok(Matrix::anti_identity(field, n).mul(&v)?.scale_columns(&d))
}

fn group_scale(field: &Field, alpha: &[Elem]) -> Vec<Elem> {
    let ninv = field.inv(field.from_i64(alpha.len() as i64)).expect("group order is prime to p");
    alpha.iter().map(|&a| field.mul(a, ninv)).collect()
}

/// `-J_{n-k} L^T J_k`.
fn dual_block(l: &Matrix) -> Matrix {
    let f = l.field();
    let (k, r) = (l.rows(), l.cols());
    Matrix::from_fn(f, r, k, |a, b| f.neg(l.get(k - 1 - b, r - 1 - a)))
}

/// Parity check `[I | -J L^T J] V_n(alpha) diag(alpha / n)` of the code `[I | L] V_n(alpha)`.
pub fn dual_parity_check(l: &Matrix, alpha: &[Elem]) -> Result<Matrix> {
    let f = l.field();
    if !is_mult_group(f, alpha) {
        return Err(Error::NotMultiplicativeGroup);
    }
    let n = alpha.len();
    if l.rows() + l.cols() != n {
        return Err(Error::LengthMismatch { expected: n, got: l.rows() + l.cols() });
    }
    let left = Matrix::identity(f, l.cols()).hstack(&dual_block(l))?;
    Ok(left.mul(&Matrix::vandermonde(f, n, alpha))?.scale_columns(&group_scale(f, alpha)))
}

/// The `k x (n-k)` matrix `L` with `L[h_j][t_j - 1] = eta_j`, so the canonical generator
/// is `[I | L] V_n(alpha)`.
pub fn twist_matrix(code: &TwistedCode) -> Matrix {
    let f = code.field();
    let mut l = Matrix::zeros(f, code.k(), code.n() - code.k());
    for j in 0..code.ell() {
        let (h, t) = (code.h()[j], code.t()[j]);
        l.set(h, t - 1, f.add(l.get(h, t - 1), code.eta()[j]));
    }
    l
}

fn dual_code(code: &TwistedCode) -> Result<TwistedCode> {
    let f = code.field();
    let (n, k) = (code.n(), code.k());
    let t: Vec<usize> = code.h().iter().map(|&h| k - h).collect();
    let h: Vec<usize> = code.t().iter().map(|&t| n - k - t).collect();
    let eta: Vec<Elem> = code.eta().iter().map(|&e| f.neg(e)).collect();
    TwistedCode::new(f, code.alpha().to_vec(), n - k, t, h, eta, false)
}

/// Dual of a twisted code on a multiplicative group. With `allow_zero_point`, `alpha`
/// may instead be a multiplicative group together with `0`, provided no twist equals
/// `n - k` or no hook equals `0`; the column scaling is then `1/(n-1)` on the group
/// points and `-1` at zero.
pub fn dual_twisted(code: &TwistedCode, allow_zero_point: bool) -> Result<DualResult> {
    if code.at_infinity() {
        return Err(Error::Precondition("dual of the extended code is not covered".into()));
    }
    let f = code.field();
    let alpha = code.alpha();
    let (n, k) = (code.n(), code.k());
    let scale = if is_mult_group(f, alpha) {
        group_scale(f, alpha)
    } else if allow_zero_point && alpha.contains(&Elem::ZERO) {
        let group: Vec<Elem> = alpha.iter().copied().filter(|a| !a.is_zero()).collect();
        if !is_mult_group(f, &group) {
            return Err(Error::NotMultiplicativeGroup);
        }
        let no_top_twist = code.t().iter().all(|&t| t != n - k);
        let no_zero_hook = code.h().iter().all(|&h| h != 0);
        if !(no_top_twist || no_zero_hook) {
            return Err(Error::Precondition(
                "with 0 among the points, need every t_i != n - k or every h_i != 0".into(),
            ));
        }
        let inv = f.inv(f.from_i64(group.len() as i64))?;
        let minus_one = f.neg(Elem::ONE);
        alpha.iter().map(|a| if a.is_zero() { minus_one } else { inv }).collect()
    } else {
        return Err(Error::NotMultiplicativeGroup);
    };
    let l = twist_matrix(code);
    let left = Matrix::identity(f, n - k).hstack(&dual_block(&l))?;
    let h = left.mul(&Matrix::vandermonde(f, n, alpha))?.scale_columns(&scale);
    let dual = dual_code(code)?;
    if dual.generator_canonical().scale_columns(&scale) != h {
        return Err(Error::Precondition("parity check does not match the dual twisted code".into()));
    }
    let params = DualParams {
        k: n - k,
        t: dual.t().to_vec(),
        h: dual.h().to_vec(),
        eta: dual.eta().iter().map(|e| e.to_int()).collect(),
    };
    Ok(DualResult { params, dual, h, scale })
}

/// Basis of the dual for arbitrary points, from the right kernel of the generator.
pub fn dual_generic(code: &TwistedCode) -> Matrix {
    let g = code.generator_canonical();
    let rows = g.nullspace();
    Matrix::from_rows(code.field(), &rows).unwrap_or_else(|_| Matrix::zeros(code.field(), 0, g.cols()))
}
