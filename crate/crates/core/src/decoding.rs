//! Key-equation decoding of twisted RS codes.
//!
//! With `R` the interpolant of the received word and `G = prod (X - alpha_i)`, the decoder
//! looks for polynomials `lambda_i` (`i` in `I_{zeta+1}`) and `psi_j` (`j` in `I_zeta`) with
//!
//! ```text
//! lambda_j R = psi_j + sum_mu lambda_{j + delta_mu} eta_mu X^{k-1+t_mu}   (mod G),
//! deg lambda_i <= deg lambda_0,  deg psi_j <= deg lambda_0 + k - 1,
//! ```
//!
//! with `deg lambda_0` minimal. For a correctable error, `lambda_0` is the error locator
//! and `psi_0 / lambda_0` recovers the untwisted part of the message. Two engines find a
//! minimal solution: a linear system solved for increasing `deg lambda_0`, and the
//! shifted weak Popov form of a polynomial matrix whose rows generate all solutions.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::code::TwistedCode;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::util::binomial;

/// Default cap on the number of hook-coefficient guesses in [`brute_force_decode`].
pub const DEFAULT_BRUTE_BUDGET: u64 = 1 << 16;

/// Tuples `i` in `Z_{>=0}^ell` with `sum i <= zeta`, in graded lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet {
    ell: usize,
    zeta: usize,
    tuples: Vec<Vec<usize>>,
    pos: HashMap<Vec<usize>, usize>,
}

impl IndexSet {
    pub fn new(ell: usize, zeta: usize) -> IndexSet {
        let mut tuples = Vec::new();
        for d in 0..=zeta {
            let mut level = Vec::new();
            compositions(ell, d, &mut Vec::with_capacity(ell), &mut level);
            level.sort();
            tuples.extend(level);
            if ell == 0 {
                break;
            }
        }
        let pos = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        IndexSet { ell, zeta, tuples, pos }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn zeta(&self) -> usize {
        self.zeta
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn position(&self, t: &[usize]) -> Option<usize> {
        self.pos.get(t).copied()
    }
}

// all ell-tuples of nonnegative integers summing to d
fn compositions(ell: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() + 1 == ell {
        cur.push(d);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    if ell == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for x in 0..=d {
        cur.push(x);
        compositions(ell, d - x, cur, out);
        cur.pop();
    }
}

/// The data of the key equations that depends on the code and the parameter `zeta`.
#[derive(Clone, Debug)]
pub struct KeyEqSystem {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub eta: Vec<Elem>,
    pub t: Vec<usize>,
    /// `I_{zeta+1}`; `I_zeta` is its prefix of length `n_psi`.
    pub lam_index: IndexSet,
    pub n_psi: usize,
}

impl KeyEqSystem {
    pub fn new(code: &TwistedCode, zeta: usize) -> KeyEqSystem {
        let lam_index = IndexSet::new(code.ell(), zeta + 1);
        let n_psi = IndexSet::new(code.ell(), zeta).len();
        KeyEqSystem {
            field: code.field().clone(),
            n: code.n(),
            k: code.k(),
            eta: code.eta().to_vec(),
            t: code.t().to_vec(),
            lam_index,
            n_psi,
        }
    }

    /// The plain RS key equation (no twists).
    pub fn reed_solomon(field: &Field, n: usize, k: usize) -> KeyEqSystem {
        KeyEqSystem {
            field: field.clone(),
            n,
            k,
            eta: vec![],
            t: vec![],
            lam_index: IndexSet::new(0, 1),
            n_psi: 1,
        }
    }

    pub fn ell(&self) -> usize {
        self.eta.len()
    }

    pub fn n_lambda(&self) -> usize {
        self.lam_index.len()
    }

    /// For the lambda at position `i`: the `(mu, position of i - delta_mu)` pairs.
    fn lowered(&self, i: usize) -> Vec<(usize, usize)> {
        let tup = &self.lam_index.tuples()[i];
        (0..self.ell())
            .filter(|&mu| tup[mu] > 0)
            .filter_map(|mu| {
                let mut lower = tup.clone();
                lower[mu] -= 1;
                let j = self.lam_index.position(&lower)?;
                (j < self.n_psi).then_some((mu, j))
            })
            .collect()
    }

    fn twist_degree(&self, mu: usize) -> usize {
        self.k - 1 + self.t[mu]
    }
}

/// A solution of the key equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyEqSolution {
    /// Indexed like `I_{zeta+1}`.
    pub lambda: Vec<Poly>,
    /// Indexed like `I_zeta`.
    pub psi: Vec<Poly>,
}

impl KeyEqSolution {
    pub fn degree(&self) -> Option<usize> {
        self.lambda[0].deg()
    }

    /// Checks every congruence modulo `G` and both degree constraints.
    pub fn verify(&self, sys: &KeyEqSystem, r: &Poly, g: &Poly) -> bool {
        if self.lambda.len() != sys.n_lambda() || self.psi.len() != sys.n_psi {
            return false;
        }
        if self.lambda.iter().all(|p| p.is_zero()) && self.psi.iter().all(|p| p.is_zero()) {
            return false;
        }
        let d0 = self.lambda[0].deg();
        if self.lambda.iter().any(|l| l.deg() > d0) {
            return false;
        }
        let psi_max = d0.map(|d| d + sys.k - 1);
        if self.psi.iter().any(|p| p.deg() > psi_max) {
            return false;
        }
        for j in 0..sys.n_psi {
            let mut rhs = self.psi[j].clone();
            for (i, pairs) in (0..sys.n_lambda()).map(|i| (i, sys.lowered(i))) {
                for (mu, jj) in pairs {
                    if jj == j {
                        rhs = rhs.add(&self.lambda[i].shift(sys.twist_degree(mu)).scale(sys.eta[mu]));
                    }
                }
            }
            let lhs = self.lambda[j].mul(r);
            match lhs.sub(&rhs).rem(g) {
                Ok(rem) if rem.is_zero() => {}
                _ => return false,
            }
        }
        true
    }
}

/// `R` (interpolant of the received word on the code's points) and `G = prod (X - alpha_i)`.
pub fn build_key_equations(code: &TwistedCode, received: &[Elem]) -> Result<(Poly, Poly)> {
    if received.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), got: received.len() });
    }
    let f = code.field();
    let pts: Vec<(Elem, Elem)> = code.alpha().iter().copied().zip(received.iter().copied()).collect();
    Ok((Poly::interpolate(f, &pts)?, Poly::from_roots(f, code.alpha())))
}

/// The solution built from the transmitted message and the error support:
/// `Lambda_i = Lambda * prod f_{h_mu}^{i_mu}` and `Psi_j = Lambda_j * g`.
pub fn true_witness(code: &TwistedCode, zeta: usize, msg: &[Elem], support: &[usize]) -> Result<KeyEqSolution> {
    if msg.len() != code.k() {
        return Err(Error::LengthMismatch { expected: code.k(), got: msg.len() });
    }
    let f = code.field();
    let sys = KeyEqSystem::new(code, zeta);
    let roots: Vec<Elem> = support.iter().map(|&i| code.alpha()[i]).collect();
    let locator = Poly::from_roots(f, &roots);
    let g = Poly::new(f, msg.to_vec());
    let hooks: Vec<Elem> = code.h().iter().map(|&h| msg[h]).collect();
    let lambda: Vec<Poly> = sys
        .lam_index
        .tuples()
        .iter()
        .map(|tup| {
            let c = f.product(tup.iter().zip(&hooks).map(|(&e, &fh)| f.pow(fh, e as u64)));
            locator.scale(c)
        })
        .collect();
    let psi = lambda[..sys.n_psi].iter().map(|l| l.mul(&g)).collect();
    Ok(KeyEqSolution { lambda, psi })
}

/// Residues of `X^d * base` modulo the monic `g`, for `d = 0..count`.
fn shifted_residues(base: &Poly, g: &Poly, count: usize) -> Vec<Vec<Elem>> {
    let f = g.field();
    let n = g.deg().expect("nonzero modulus");
    let mut cur = base.rem(g).unwrap().into_coeffs();
    cur.resize(n, Elem::ZERO);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(cur.clone());
        // multiply by X and reduce with the monic modulus
        let top = cur[n - 1];
        for i in (1..n).rev() {
            cur[i] = f.sub(cur[i - 1], f.mul(top, g.coeff(i)));
        }
        cur[0] = f.neg(f.mul(top, g.coeff(0)));
    }
    out
}

/// Linear solver: tries `deg lambda_0 = 0, 1, ...` and returns the first solvable system.
/// `lambda_0` is monic; the remaining coefficients are the reduced-row-echelon solution
/// with free variables set to zero. Unknowns are ordered `lambda_0, psi_0`, then the
/// other lambdas, then the other psis.
pub fn solve_problem1_linear(sys: &KeyEqSystem, r: &Poly, g: &Poly) -> Result<KeyEqSolution> {
    solve_problem1_linear_from(sys, r, g, 0)
}

fn solve_problem1_linear_from(sys: &KeyEqSystem, r: &Poly, g: &Poly, tau0: usize) -> Result<KeyEqSolution> {
    let f = &sys.field;
    let n = sys.n;
    let k = sys.k;
    let max_t = sys.t.iter().max().copied().unwrap_or(0);
    let cap = n;
    let deg_span = cap + k + max_t + 1;
    let xmod = shifted_residues(&Poly::one(f), g, deg_span);
    let xr = shifted_residues(r, g, cap + 1);
    let nl = sys.n_lambda();
    let np = sys.n_psi;
    let lowered: Vec<Vec<(usize, usize)>> = (0..nl).map(|i| sys.lowered(i)).collect();
    for tau in tau0..=cap {
        // unknown blocks in column order: (kind, index, number of coefficients)
        let mut blocks: Vec<(bool, usize, usize)> = vec![(true, 0, tau), (false, 0, tau + k)];
        blocks.extend((1..nl).map(|i| (true, i, tau + 1)));
        blocks.extend((1..np).map(|j| (false, j, tau + k)));
        let nv: usize = blocks.iter().map(|b| b.2).sum();
        let ne = np * n;
        let mut a = Matrix::zeros(f, ne, nv);
        let mut col = 0;
        for &(is_lambda, idx, len) in &blocks {
            for d in 0..len {
                if is_lambda {
                    if idx < np {
                        for (row, &v) in xr[d].iter().enumerate() {
                            a.set(idx * n + row, col, v);
                        }
                    }
                    for &(mu, j) in &lowered[idx] {
                        let e = f.neg(sys.eta[mu]);
                        for (row, &v) in xmod[d + sys.twist_degree(mu)].iter().enumerate() {
                            let cur = a.get(j * n + row, col);
                            a.set(j * n + row, col, f.add(cur, f.mul(e, v)));
                        }
                    }
                } else {
                    for (row, &v) in xmod[d].iter().enumerate() {
                        a.set(idx * n + row, col, f.neg(v));
                    }
                }
                col += 1;
            }
        }
        let mut b = vec![Elem::ZERO; ne];
        for (row, &v) in xr[tau].iter().enumerate() {
            b[row] = f.neg(v);
        }
        let Some(x) = a.solve(&b) else {
            continue;
        };
        let mut lambda = vec![Poly::zero(f); nl];
        let mut psi = vec![Poly::zero(f); np];
        let mut off = 0;
        for &(is_lambda, idx, len) in &blocks {
            let mut c = x[off..off + len].to_vec();
            off += len;
            if is_lambda && idx == 0 {
                c.push(Elem::ONE);
            }
            let p = Poly::new(f, c);
            if is_lambda {
                lambda[idx] = p;
            } else {
                psi[idx] = p;
            }
        }
        return Ok(KeyEqSolution { lambda, psi });
    }
    Err(Error::NoSolution(cap))
}

/// Square matrix of polynomials with a degree shift per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub field: Field,
    pub rows: Vec<Vec<Poly>>,
    pub shift: Vec<i64>,
}

impl PolyMatrix {
    pub fn new(field: &Field, rows: Vec<Vec<Poly>>, shift: Vec<i64>) -> PolyMatrix {
        PolyMatrix { field: field.clone(), rows, shift }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Rightmost column attaining the maximal shifted degree, with that degree.
    pub fn pivot(&self, row: usize) -> Option<(usize, i64)> {
        let mut best: Option<(usize, i64)> = None;
        for (j, p) in self.rows[row].iter().enumerate() {
            if let Some(d) = p.deg() {
                let sd = d as i64 + self.shift[j];
                if best.is_none_or(|(_, b)| sd >= b) {
                    best = Some((j, sd));
                }
            }
        }
        best
    }

    pub fn is_weak_popov(&self) -> bool {
        let mut seen = vec![false; self.shift.len()];
        for i in 0..self.size() {
            match self.pivot(i) {
                None => return false,
                Some((p, _)) => {
                    if seen[p] {
                        return false;
                    }
                    seen[p] = true;
                }
            }
        }
        true
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Poly {
        let f = &self.field;
        let n = self.size();
        let mut m = self.rows.clone();
        let mut prev = Poly::one(f);
        let mut sign = false;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Poly::zero(f);
            };
            if pr != c {
                m.swap(pr, c);
                sign = !sign;
            }
            for i in c + 1..n {
                for j in c + 1..n {
                    let num = m[c][c].mul(&m[i][j]).sub(&m[i][c].mul(&m[c][j]));
                    m[i][j] = num.divrem(&prev).expect("nonzero Bareiss pivot").0;
                }
                m[i][c] = Poly::zero(f);
            }
            prev = m[c][c].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign {
            d.neg()
        } else {
            d
        }
    }
}

/// The matrix `[[I, A], [0, G I]]` whose rows generate all solutions of the key
/// equations, with shift `(k, k-1, ..., k-1, 0, ..., 0)`.
pub fn build_module_matrix(sys: &KeyEqSystem, r: &Poly, g: &Poly) -> PolyMatrix {
    let f = &sys.field;
    let nl = sys.n_lambda();
    let np = sys.n_psi;
    let size = nl + np;
    let mut rows = vec![vec![Poly::zero(f); size]; size];
    for i in 0..nl {
        rows[i][i] = Poly::one(f);
        if i < np {
            rows[i][nl + i] = r.clone();
        }
        for (mu, j) in sys.lowered(i) {
            rows[i][nl + j] = Poly::monomial(f, f.neg(sys.eta[mu]), sys.twist_degree(mu));
        }
    }
    for j in 0..np {
        rows[nl + j][nl + j] = g.clone();
    }
    let mut shift = vec![sys.k as i64 - 1; nl];
    shift[0] = sys.k as i64;
    shift.extend(std::iter::repeat_n(0, np));
    PolyMatrix::new(f, rows, shift)
}

/// Simple transformations until all shifted pivots are distinct. When two rows share a
/// pivot, the one with the larger pivot degree is reduced by a monomial multiple of the
/// other; on equal degrees the row with the higher index is reduced.
pub fn weak_popov_reduce(mut m: PolyMatrix) -> Result<PolyMatrix> {
    let size = m.size();
    let f = m.field.clone();
    let mut piv: Vec<Option<(usize, i64)>> = (0..size).map(|i| m.pivot(i)).collect();
    loop {
        if piv.iter().any(|p| p.is_none()) {
            return Err(Error::SingularMatrix);
        }
        let mut owner: Vec<Option<usize>> = vec![None; m.shift.len()];
        let mut clash = None;
        for i in 0..size {
            let (p, _) = piv[i].unwrap();
            match owner[p] {
                Some(o) => {
                    clash = Some((o, i, p));
                    break;
                }
                None => owner[p] = Some(i),
            }
        }
        let Some((a, b, p)) = clash else {
            return Ok(m);
        };
        let da = m.rows[a][p].deg().unwrap();
        let db = m.rows[b][p].deg().unwrap();
        // a < b: reduce b unless a has the strictly larger degree
        let (target, other) = if da > db { (a, b) } else { (b, a) };
        let (dt, dd) = (m.rows[target][p].deg().unwrap(), m.rows[other][p].deg().unwrap());
        let c = f.neg(f.div(m.rows[target][p].lead(), m.rows[other][p].lead())?);
        let e = dt - dd;
        let other_row = m.rows[other].clone();
        for (x, y) in m.rows[target].iter_mut().zip(&other_row) {
            if !y.is_zero() {
                *x = x.add(&y.shift(e).scale(c));
            }
        }
        piv[target] = m.pivot(target);
    }
}

/// Popov engine: the reduced row with pivot in the `lambda_0` column, normalised so that
/// `lambda_0` is monic.
pub fn solve_problem1_popov(sys: &KeyEqSystem, r: &Poly, g: &Poly) -> Result<KeyEqSolution> {
    let reduced = weak_popov_reduce(build_module_matrix(sys, r, g))?;
    let row = (0..reduced.size())
        .find(|&i| reduced.pivot(i).map(|p| p.0) == Some(0))
        .ok_or(Error::NoPivotOneRow)?;
    let f = &sys.field;
    let v = &reduced.rows[row];
    let inv = f.inv(v[0].lead())?;
    let nl = sys.n_lambda();
    Ok(KeyEqSolution {
        lambda: v[..nl].iter().map(|p| p.scale(inv)).collect(),
        psi: v[nl..].iter().map(|p| p.scale(inv)).collect(),
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Linear,
    Popov,
}

pub fn solve_problem1(sys: &KeyEqSystem, r: &Poly, g: &Poly, engine: Engine) -> Result<KeyEqSolution> {
    match engine {
        Engine::Linear => solve_problem1_linear(sys, r, g),
        Engine::Popov => solve_problem1_popov(sys, r, g),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    /// `lambda_0` does not divide `psi_0`.
    NotDivisible,
    /// `psi_0 / lambda_0` has degree at least `k`.
    DegreeTooLarge,
    /// The re-encoded word is farther than `(n - k) / 2` from the received word.
    TooFar,
    /// No minimal solution was found.
    NoSolution,
    /// Brute force found no candidate.
    NoCandidate,
    /// Brute force found several closest candidates.
    Ambiguous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum DecodeOutcome {
    Success { codeword: Vec<Elem>, message: Vec<Elem>, error_weight: usize },
    Failure { reason: FailureReason },
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, DecodeOutcome::Success { .. })
    }

    pub fn codeword(&self) -> Option<&[Elem]> {
        match self {
            DecodeOutcome::Success { codeword, .. } => Some(codeword),
            _ => None,
        }
    }

    fn fail(reason: FailureReason) -> DecodeOutcome {
        DecodeOutcome::Failure { reason }
    }
}

fn hamming(a: &[Elem], b: &[Elem]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn half_distance(code: &TwistedCode) -> usize {
    (code.n() - code.k()) / 2
}

/// Recovers a message from a key-equation solution, or the reason it fails.
fn finish(code: &TwistedCode, received: &[Elem], sol: &KeyEqSolution) -> Result<DecodeOutcome> {
    let (g, rem) = sol.psi[0].divrem(&sol.lambda[0])?;
    if !rem.is_zero() {
        return Ok(DecodeOutcome::fail(FailureReason::NotDivisible));
    }
    if g.deg().is_some_and(|d| d >= code.k()) {
        return Ok(DecodeOutcome::fail(FailureReason::DegreeTooLarge));
    }
    let mut msg = g.into_coeffs();
    msg.resize(code.k(), Elem::ZERO);
    let cw = code.encode(&msg)?;
    let w = hamming(&cw, received);
    if w > half_distance(code) {
        return Ok(DecodeOutcome::fail(FailureReason::TooFar));
    }
    Ok(DecodeOutcome::Success { codeword: cw, message: msg, error_weight: w })
}

/// Decoding with the key equations for parameter `zeta`.
pub fn decode(code: &TwistedCode, received: &[Elem], zeta: usize, engine: Engine) -> Result<DecodeOutcome> {
    Ok(decode_with_solution(code, received, zeta, engine)?.0)
}

/// As [`decode`], also returning the minimal solution when one was found.
pub fn decode_with_solution(
    code: &TwistedCode,
    received: &[Elem],
    zeta: usize,
    engine: Engine,
) -> Result<(DecodeOutcome, Option<KeyEqSolution>)> {
    if code.at_infinity() {
        return Err(Error::Precondition("decoding the extended code is not supported".into()));
    }
    for &r in received {
        code.field().check(r)?;
    }
    let (r, g) = build_key_equations(code, received)?;
    let sys = KeyEqSystem::new(code, zeta);
    let sol = match solve_problem1(&sys, &r, &g, engine) {
        Ok(s) => s,
        Err(Error::NoSolution(_)) => return Ok((DecodeOutcome::fail(FailureReason::NoSolution), None)),
        Err(e) => return Err(e),
    };
    Ok((finish(code, received, &sol)?, Some(sol)))
}

/// Half-distance RS decoding of `received` on `code`'s points: the untwisted message
/// polynomial (degree `< k`) within distance `(n - k) / 2`, if found.
fn rs_decode(code: &TwistedCode, sys: &KeyEqSystem, received: &[Elem], g: &Poly) -> Result<Option<Poly>> {
    let f = code.field();
    let pts: Vec<(Elem, Elem)> = code.alpha().iter().copied().zip(received.iter().copied()).collect();
    let r = Poly::interpolate(f, &pts)?;
    let sol = solve_problem1_popov(sys, &r, g)?;
    let (quo, rem) = sol.psi[0].divrem(&sol.lambda[0])?;
    if !rem.is_zero() || quo.deg().is_some_and(|d| d >= code.k()) {
        return Ok(None);
    }
    let cw = quo.eval_many(code.alpha())?;
    Ok((hamming(&cw, received) <= half_distance(code)).then_some(quo))
}

/// Oracle decoder: guesses the hook coefficients, removes the twist contribution and
/// RS-decodes; keeps the candidates whose hook coefficients match the guess and returns
/// the unique closest one.
pub fn brute_force_decode(code: &TwistedCode, received: &[Elem], budget: u64) -> Result<DecodeOutcome> {
    if received.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), got: received.len() });
    }
    if code.at_infinity() {
        return Err(Error::Precondition("decoding the extended code is not supported".into()));
    }
    let f = code.field();
    let mut hooks: Vec<usize> = code.h().to_vec();
    hooks.sort();
    hooks.dedup();
    let q = f.q() as u64;
    let guesses = q.checked_pow(hooks.len() as u32).unwrap_or(u64::MAX);
    if guesses > budget {
        return Err(Error::BudgetExceeded(format!("{guesses} hook guesses, budget {budget}")));
    }
    let sys = KeyEqSystem::reed_solomon(f, code.n(), code.k());
    let g = Poly::from_roots(f, code.alpha());
    let mut best: Option<(usize, Vec<Elem>, Vec<Elem>)> = None;
    let mut tie = false;
    for idx in 0..guesses {
        let mut guess = HashMap::new();
        let mut x = idx;
        for &h in &hooks {
            guess.insert(h, Elem::from_index(x % q));
            x /= q;
        }
        let mut twist = Poly::zero(f);
        for j in 0..code.ell() {
            let c = f.mul(code.eta()[j], guess[&code.h()[j]]);
            twist = twist.add(&Poly::monomial(f, c, code.k() - 1 + code.t()[j]));
        }
        let shifted: Vec<Elem> = received
            .iter()
            .zip(code.alpha())
            .map(|(&r, &a)| f.sub(r, twist.eval(a)))
            .collect();
        let Some(poly) = rs_decode(code, &sys, &shifted, &g)? else {
            continue;
        };
        if hooks.iter().any(|&h| poly.coeff(h) != guess[&h]) {
            continue;
        }
        let mut msg = poly.into_coeffs();
        msg.resize(code.k(), Elem::ZERO);
        let cw = code.encode(&msg)?;
        let w = hamming(&cw, received);
        match &best {
            Some((bw, bcw, _)) if w == *bw && cw != *bcw => tie = true,
            Some((bw, _, _)) if w >= *bw => {}
            _ => {
                best = Some((w, cw, msg));
                tie = false;
            }
        }
    }
    Ok(match best {
        None => DecodeOutcome::fail(FailureReason::NoCandidate),
        Some(_) if tie => DecodeOutcome::fail(FailureReason::Ambiguous),
        Some((w, cw, msg)) => DecodeOutcome::Success { codeword: cw, message: msg, error_weight: w },
    })
}

/// Expected lower bound on the decoding radius, in exact rational arithmetic:
/// `ceil((zeta+1)(n-k)/D - (zeta+ell+1 - 3(zeta+1)/C)/D) - 1` with `D = 2(zeta+1)+ell` and
/// `C = binom(ell+zeta, ell)`.
pub fn tau_lb(n: usize, k: usize, ell: usize, zeta: usize) -> i64 {
    let c = binomial(ell + zeta, ell) as i128;
    let z1 = zeta as i128 + 1;
    let d = 2 * z1 + ell as i128;
    let num = z1 * (n as i128 - k as i128) * c - (z1 + ell as i128) * c + 3 * z1;
    let den = d * c;
    (num + den - 1).div_euclid(den) as i64 - 1
}

/// Anything that turns a received word into an outcome; the simulator is generic over it.
pub trait Decoder: Sync {
    fn decode(&self, code: &TwistedCode, received: &[Elem]) -> DecodeOutcome;
}

/// Key-equation decoder with fixed `zeta` and engine.
#[derive(Copy, Clone, Debug)]
pub struct KeyEquationDecoder {
    pub zeta: usize,
    pub engine: Engine,
}

impl Decoder for KeyEquationDecoder {
    fn decode(&self, code: &TwistedCode, received: &[Elem]) -> DecodeOutcome {
        decode(code, received, self.zeta, self.engine).unwrap_or(DecodeOutcome::fail(FailureReason::NoSolution))
    }
}

#[derive(Copy, Clone, Debug)]
pub struct BruteForceDecoder {
    pub budget: u64,
}

impl Decoder for BruteForceDecoder {
    fn decode(&self, code: &TwistedCode, received: &[Elem]) -> DecodeOutcome {
        brute_force_decode(code, received, self.budget).unwrap_or(DecodeOutcome::fail(FailureReason::NoCandidate))
    }
}
