//! Telling twisted codes apart from GRS codes: Schur squares, the degree-set bound and
//! the minor characterization of GRS codes via the systematic generator.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{systematic_block, TwistedCode};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::matrix::Matrix;
use crate::mds::first_zero_minor;
use crate::util::{binomial, Combinations};

/// Work bound for [`grs_eta_census`], in maximal minors.
pub const CENSUS_LIMIT: u128 = 500_000_000;

/// Dimension of the span of all coordinatewise products of generator rows.
pub fn schur_square_dim(g: &Matrix) -> usize {
    let f = g.field();
    let k = g.rows();
    let mut rows = Vec::with_capacity(k * (k + 1) / 2);
    for i in 0..k {
        for j in i..k {
            rows.push(g.row(i).iter().zip(g.row(j)).map(|(&a, &b)| f.mul(a, b)).collect::<Vec<_>>());
        }
    }
    Matrix::from_rows(f, &rows).map(|m| m.rank()).unwrap_or(0)
}

/// Degrees of the basis polynomials: `i` for untwisted rows and `k - 1 + max t_j` over the
/// twists with `h_j = i` and `eta_j != 0`.
pub fn degree_set(code: &TwistedCode) -> BTreeSet<usize> {
    let k = code.k();
    (0..k)
        .map(|i| {
            (0..code.ell())
                .filter(|&j| code.h()[j] == i && !code.eta()[j].is_zero())
                .map(|j| k - 1 + code.t()[j])
                .max()
                .unwrap_or(i)
        })
        .collect()
}

/// `|{d1 + d2 : d1, d2 in S, d1 + d2 < n}|`, a lower bound on the Schur square dimension.
pub fn sumset_lower_bound(code: &TwistedCode) -> usize {
    let s: Vec<usize> = degree_set(code).into_iter().collect();
    let n = code.n();
    let mut sums = BTreeSet::new();
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i..] {
            if a + b < n {
                sums.insert(a + b);
            }
        }
    }
    sums.len()
}

/// GRS test for a full-rank generator: non-MDS is never GRS; otherwise with `[I | A]`
/// systematic and `A'` the entrywise inverse of `A`, the code is GRS iff every `2 x 2`
/// minor of `A'` is nonzero and every `3 x 3` minor vanishes (trivially GRS when
/// `min(k, n - k) < 3`).
pub fn is_grs_generator(g: &Matrix) -> bool {
    if first_zero_minor(g).is_some() {
        return false;
    }
    let a = match systematic_block(g) {
        Ok(a) => a,
        Err(_) => return false,
    };
    let (k, r) = (a.rows(), a.cols());
    if k.min(r) < 3 {
        return true;
    }
    let f = g.field();
    let mut ainv = Matrix::zeros(f, k, r);
    for i in 0..k {
        for j in 0..r {
            match f.inv(a.get(i, j)) {
                Ok(v) => ainv.set(i, j, v),
                Err(_) => return false,
            }
        }
    }
    grs_minor_pattern(&ainv)
}

fn grs_minor_pattern(ainv: &Matrix) -> bool {
    let (k, r) = (ainv.rows(), ainv.cols());
    for rows in Combinations::new(k, 2) {
        for cols in Combinations::new(r, 2) {
            if ainv.select_rows(&rows).select_cols(&cols).det().unwrap().is_zero() {
                return false;
            }
        }
    }
    for rows in Combinations::new(k, 3) {
        let sub = ainv.select_rows(&rows);
        for cols in Combinations::new(r, 3) {
            if !sub.select_cols(&cols).det().unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn is_grs(code: &TwistedCode) -> bool {
    is_grs_generator(&code.generator_canonical())
}

/// Generator `V_k(alpha) diag(v)` of a GRS code.
pub fn grs_generator(field: &crate::field::Field, alpha: &[Elem], v: &[Elem], k: usize) -> Matrix {
    Matrix::vandermonde(field, k, alpha).scale_columns(v)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaClass {
    NonMds,
    MdsGrs,
    MdsNonGrs,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Census {
    pub total: usize,
    pub non_mds: usize,
    pub mds_grs: usize,
    pub mds_non_grs: usize,
    /// GRS share among the MDS members, `None` when there are none.
    pub grs_fraction: Option<f64>,
    /// `(eta, class)` in domain order.
    pub entries: Vec<(Vec<u32>, EtaClass)>,
}

pub fn classify(code: &TwistedCode) -> EtaClass {
    let g = code.generator_canonical();
    if first_zero_minor(&g).is_some() {
        EtaClass::NonMds
    } else if is_grs_generator(&g) {
        EtaClass::MdsGrs
    } else {
        EtaClass::MdsNonGrs
    }
}

/// Classifies every twist vector of `domain` on the points and twist shape of `base`.
pub fn grs_eta_census(base: &TwistedCode, domain: &[Vec<Elem>]) -> Result<Census> {
    let work = binomial(base.len(), base.k()).saturating_mul(domain.len() as u128);
    if work > CENSUS_LIMIT {
        return Err(Error::TooLarge(format!("{work} minors")));
    }
    let classes = domain
        .par_iter()
        .map(|eta| base.with_eta(eta.clone()).map(|c| classify(&c)))
        .collect::<Result<Vec<_>>>()?;
    let count = |c: EtaClass| classes.iter().filter(|&&x| x == c).count();
    let (non_mds, mds_grs, mds_non_grs) = (count(EtaClass::NonMds), count(EtaClass::MdsGrs), count(EtaClass::MdsNonGrs));
    let mds = mds_grs + mds_non_grs;
    Ok(Census {
        total: domain.len(),
        non_mds,
        mds_grs,
        mds_non_grs,
        grs_fraction: (mds > 0).then(|| mds_grs as f64 / mds as f64),
        entries: domain
            .iter()
            .zip(classes)
            .map(|(eta, c)| (eta.iter().map(|e| e.to_int()).collect(), c))
            .collect(),
    })
}

/// Every single-twist vector over the base field.
pub fn full_single_twist_domain(base: &TwistedCode) -> Vec<Vec<Elem>> {
    base.field().elements().map(|e| vec![e]).collect()
}
