//! MDS certification: the exhaustive minor scan, sum-product free twist vectors,
//! and the single-twist families with hooks at 0 and at `k - 1`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::code::TwistedCode;
use crate::error::{Error, Result};
use crate::field::{Elem, Field, SubfieldEmbedding};
use crate::matrix::Matrix;
use crate::util::{binomial, Combinations};

/// Guard for the brute-force sum-product sweep.
pub const SUM_PRODUCT_LIMIT: u128 = 10_000_000;
/// Guard for the k-sum generator sweep.
pub const K_SUM_LIMIT: u128 = 10_000_000;

/// First `k`-subset of columns (lexicographic order) whose minor vanishes.
pub fn first_zero_minor(g: &Matrix) -> Option<Vec<usize>> {
    let k = g.rows();
    Combinations::new(g.cols(), k).find(|cols| g.select_cols(cols).det().map_or(true, |d| d.is_zero()))
}

/// True iff every maximal minor of the canonical generator is nonzero.
pub fn is_mds_exhaustive(code: &TwistedCode) -> bool {
    first_zero_minor(&code.generator_canonical()).is_none()
}

/// Codeword-enumeration cross-check: minimum distance equals `len - k + 1`.
pub fn is_mds_by_enumeration(code: &TwistedCode) -> Result<bool> {
    Ok(code.min_distance_exhaustive()? == code.len() - code.k() + 1)
}

/// Brute force over every assignment `a_S` of subfield scalars to the nonempty subsets
/// `S` of the twist indices: true iff no `sum a_S prod_{i in S} eta_i` is a nonzero
/// subfield element.
pub fn sum_product_free_check(eta: &[Elem], emb: &SubfieldEmbedding) -> Result<bool> {
    let sup = emb.sup();
    let ell = eta.len();
    if ell >= 32 {
        return Err(Error::TooLarge(format!("{ell} twists")));
    }
    let nsub = (1usize << ell) - 1;
    let q0 = emb.sub().q() as u128;
    let total = q0.checked_pow(nsub as u32).unwrap_or(u128::MAX);
    if total > SUM_PRODUCT_LIMIT {
        return Err(Error::TooLarge(format!("{q0}^{nsub} coefficient assignments")));
    }
    let products: Vec<Elem> = (1..=nsub)
        .map(|mask| sup.product((0..ell).filter(|i| mask >> i & 1 == 1).map(|i| eta[i])))
        .collect();
    let scalars = emb.image();
    // odometer over a in F_{q0}^{nsub}; keep the running sum in sync digit by digit
    let mut digits = vec![0usize; nsub];
    let mut sum = Elem::ZERO;
    loop {
        if !sum.is_zero() && emb.contains(sum) {
            return Ok(false);
        }
        let mut pos = 0;
        loop {
            if pos == nsub {
                return Ok(true);
            }
            let old = scalars[digits[pos]];
            digits[pos] += 1;
            let wrapped = digits[pos] == scalars.len();
            if wrapped {
                digits[pos] = 0;
            }
            let new = scalars[digits[pos]];
            sum = sup.add(sum, sup.mul(sup.sub(new, old), products[pos]));
            if !wrapped {
                break;
            }
            pos += 1;
        }
    }
}

/// A proper chain of subfields `F_{q_0} < F_{q_1} < ... < F_{q_ell}` together with one
/// chosen element per step.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    /// Fields from smallest to largest.
    pub chain: Vec<Field>,
    /// Embedding of each chain field into the top field.
    pub into_top: Vec<SubfieldEmbedding>,
    /// `eta_choices[i - 1]` lies in `chain[i]` but not in (the image of) `chain[i - 1]`,
    /// expressed in the top field.
    pub eta_choices: Vec<Elem>,
}

impl ChainSpec {
    /// Validates the chain and picks, for every step, the element of smallest encoding
    /// in the top field that is new at that step.
    pub fn new(chain: Vec<Field>) -> Result<ChainSpec> {
        if chain.is_empty() {
            return Err(Error::Precondition("empty chain".into()));
        }
        for w in chain.windows(2) {
            if w[0].p() != w[1].p() || w[1].m() % w[0].m() != 0 || w[1].m() == w[0].m() {
                return Err(Error::Precondition(format!(
                    "GF({}^{}) is not a proper subfield of GF({}^{})",
                    w[0].p(),
                    w[0].m(),
                    w[1].p(),
                    w[1].m()
                )));
            }
        }
        let top = chain.last().unwrap().clone();
        let into_top = chain.iter().map(|f| SubfieldEmbedding::new(f, &top)).collect::<Result<Vec<_>>>()?;
        let mut eta_choices = Vec::new();
        for i in 1..chain.len() {
            let e = into_top[i]
                .image()
                .iter()
                .copied()
                .filter(|&x| !into_top[i - 1].contains(x))
                .min()
                .ok_or(Error::EmptyDifference)?;
            eta_choices.push(e);
        }
        Ok(ChainSpec { chain, into_top, eta_choices })
    }

    /// Replaces the automatic choices; each must be new at its step.
    pub fn with_choices(mut self, choices: Vec<Elem>) -> Result<ChainSpec> {
        if choices.len() + 1 != self.chain.len() {
            return Err(Error::LengthMismatch { expected: self.chain.len() - 1, got: choices.len() });
        }
        for (i, &e) in choices.iter().enumerate() {
            if !self.into_top[i + 1].contains(e) || self.into_top[i].contains(e) {
                return Err(Error::EmptyDifference);
            }
        }
        self.eta_choices = choices;
        Ok(self)
    }

    pub fn top(&self) -> &Field {
        self.chain.last().unwrap()
    }

    pub fn base_embedding(&self) -> &SubfieldEmbedding {
        &self.into_top[0]
    }
}

/// Twist vector from a subfield chain; sum-product free over the bottom field.
pub fn make_chain_eta(cs: &ChainSpec) -> Result<Vec<Elem>> {
    for (i, &e) in cs.eta_choices.iter().enumerate() {
        if cs.into_top[i].contains(e) || !cs.into_top[i + 1].contains(e) {
            return Err(Error::EmptyDifference);
        }
    }
    Ok(cs.eta_choices.clone())
}

/// Power basis `1, psi, ..., psi^{d-1}` of an extension of degree `d >= ell + 1`, with
/// nonzero subfield scalars `a_1..a_ell`.
#[derive(Clone, Debug)]
pub struct PowerBasisSpec {
    pub emb: SubfieldEmbedding,
    pub psi: Elem,
    /// Scalars as elements of the subfield.
    pub scalars: Vec<Elem>,
}

impl PowerBasisSpec {
    /// Uses the smallest-encoding power-basis generator and all scalars equal to one.
    pub fn new(sub: &Field, sup: &Field, ell: usize) -> Result<PowerBasisSpec> {
        let emb = SubfieldEmbedding::new(sub, sup)?;
        let psi = sup
            .elements()
            .find(|&x| generates_power_basis(&emb, x))
            .ok_or(Error::EmptyDifference)?;
        PowerBasisSpec::with(emb, psi, vec![Elem::ONE; ell])
    }

    pub fn with(emb: SubfieldEmbedding, psi: Elem, scalars: Vec<Elem>) -> Result<PowerBasisSpec> {
        let d = (emb.sup().m() / emb.sub().m()) as usize;
        if scalars.is_empty() || d < scalars.len() + 1 {
            return Err(Error::Precondition(format!(
                "extension degree {d} is below ell + 1 = {}",
                scalars.len() + 1
            )));
        }
        if scalars.iter().any(|a| a.is_zero() || emb.sub().check(*a).is_err()) {
            return Err(Error::Precondition("scalars must be nonzero subfield elements".into()));
        }
        if !generates_power_basis(&emb, psi) {
            return Err(Error::Precondition("psi does not generate a power basis".into()));
        }
        Ok(PowerBasisSpec { emb, psi, scalars })
    }
}

/// Rank check: the products `b * psi^j` over an F_p-basis `b` of the subfield and
/// `j < d` span the larger field over F_p.
pub fn generates_power_basis(emb: &SubfieldEmbedding, psi: Elem) -> bool {
    let (sub, sup) = (emb.sub(), emb.sup());
    let d = (sup.m() / sub.m()) as usize;
    let p = sup.p();
    let fp = Field::prime(p).expect("prime characteristic");
    let mut rows = Vec::new();
    for i in 0..sub.m() {
        let b = emb.map(sub.from_coeffs(&unit(i as usize, sub.m() as usize)).unwrap());
        for j in 0..d {
            let v = sup.mul(b, sup.pow(psi, j as u64));
            rows.push(sup.coeffs(v).into_iter().map(|c| fp.elem(c as u64).unwrap()).collect::<Vec<_>>());
        }
    }
    Matrix::from_rows(&fp, &rows).map(|m| m.rank() == sup.m() as usize).unwrap_or(false)
}

fn unit(i: usize, m: usize) -> Vec<u32> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

/// `eta_i = a_i * psi`.
pub fn make_power_basis_eta(pb: &PowerBasisSpec) -> Vec<Elem> {
    let sup = pb.emb.sup();
    pb.scalars.iter().map(|&a| sup.mul(pb.emb.map(a), pb.psi)).collect()
}

/// A `k`-subset `I` (indices into `alpha`) with `eta (-1)^k prod_I alpha_i = 1`, if any.
pub fn star_violation(field: &Field, k: usize, alpha: &[Elem], eta: Elem) -> Option<Vec<usize>> {
    if eta.is_zero() {
        return None;
    }
    let sign = if k % 2 == 0 { Elem::ONE } else { field.neg(Elem::ONE) };
    let target = field.inv(field.mul(eta, sign)).unwrap();
    // subsets through a zero point have product 0 and never violate
    let idx: Vec<usize> = (0..alpha.len()).filter(|&i| !alpha[i].is_zero()).collect();
    let mut chosen = Vec::with_capacity(k);
    fn dfs(
        f: &Field,
        alpha: &[Elem],
        idx: &[usize],
        start: usize,
        k: usize,
        prod: Elem,
        target: Elem,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == k {
            return prod == target;
        }
        let need = k - chosen.len();
        if idx.len() < start + need {
            return false;
        }
        for s in start..=idx.len() - need {
            chosen.push(idx[s]);
            if dfs(f, alpha, idx, s + 1, k, f.mul(prod, alpha[idx[s]]), target, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    dfs(field, alpha, &idx, 0, k, Elem::ONE, target, &mut chosen).then_some(chosen)
}

/// MDS criterion for the single twist `t = 1`, hook `h = 0`.
pub fn star_mds_condition(field: &Field, k: usize, alpha: &[Elem], eta: Elem) -> bool {
    star_violation(field, k, alpha, eta).is_none()
}

/// A `k`-subset `I` with `eta * sum_I alpha_i = -1`, if any. Dynamic programming over
/// (number chosen, achieved sum).
pub fn plus_violation(field: &Field, k: usize, alpha: &[Elem], eta: Elem) -> Option<Vec<usize>> {
    if eta.is_zero() || k > alpha.len() {
        return None;
    }
    let target = field.neg(field.inv(eta).unwrap());
    let q = field.q() as usize;
    let n = alpha.len();
    // reach[i][c * q + s]: some c-subset of alpha[..i] sums to s
    let mut reach = vec![vec![false; (k + 1) * q]; n + 1];
    reach[0][0] = true;
    for i in 0..n {
        let (prev, cur) = reach.split_at_mut(i + 1);
        let (prev, cur) = (&prev[i], &mut cur[0]);
        cur.copy_from_slice(prev);
        for c in 0..k {
            for s in 0..q {
                if prev[c * q + s] {
                    let ns = field.add(Elem::from_index(s as u64), alpha[i]).to_int() as usize;
                    cur[(c + 1) * q + ns] = true;
                }
            }
        }
    }
    let t = target.to_int() as usize;
    if !reach[n][k * q + t] {
        return None;
    }
    let mut out = Vec::with_capacity(k);
    let (mut c, mut s) = (k, t);
    for i in (0..n).rev() {
        if c == 0 {
            break;
        }
        if reach[i][c * q + s] {
            continue;
        }
        out.push(i);
        s = field.sub(Elem::from_index(s as u64), alpha[i]).to_int() as usize;
        c -= 1;
    }
    out.reverse();
    Some(out)
}

/// MDS criterion for the single twist `t = 1`, hook `h = k - 1`.
pub fn plus_mds_condition(field: &Field, k: usize, alpha: &[Elem], eta: Elem) -> bool {
    plus_violation(field, k, alpha, eta).is_none()
}

fn subgroup_of_order(field: &Field, order: usize) -> Result<Vec<Elem>> {
    let group = field.q() as usize - 1;
    if order == 0 || group % order != 0 || order >= group {
        return Err(Error::NotASubgroupOrder { order, group });
    }
    let g = field.pow(field.primitive_element(), (group / order) as u64);
    let mut els: Vec<Elem> = (0..order).map(|j| field.pow(g, j as u64)).collect();
    els.sort();
    Ok(els)
}

/// The multiplicative subgroup of the given order, sorted by encoding.
pub fn multiplicative_subgroup(field: &Field, order: usize) -> Result<Vec<Elem>> {
    subgroup_of_order(field, order)
}

/// Single-twist code with `t = 1`, `h = 0` whose points are the first `n` entries of
/// `G` (sorted) followed by `0`, for `G` the subgroup of the given order. Requires
/// `(-1)^k / eta` outside `G`.
pub fn make_star_twisted(field: &Field, subgroup_order: usize, n: usize, k: usize, eta: Elem) -> Result<TwistedCode> {
    let g = subgroup_of_order(field, subgroup_order)?;
    if eta.is_zero() {
        return Err(Error::EtaInGroup);
    }
    let sign = if k % 2 == 0 { Elem::ONE } else { field.neg(Elem::ONE) };
    let x = field.div(sign, eta)?;
    if g.contains(&x) {
        return Err(Error::EtaInGroup);
    }
    if n > g.len() + 1 {
        return Err(Error::InvalidCode(format!("n={n} exceeds |G| + 1 = {}", g.len() + 1)));
    }
    let mut alpha = g;
    alpha.push(Elem::ZERO);
    alpha.truncate(n);
    TwistedCode::new(field, alpha, k, vec![1], vec![0], vec![eta], false)
}

/// The additive subgroup of index `p` formed by elements whose top residue vanishes.
pub fn index_p_subgroup(field: &Field) -> Vec<Elem> {
    let bound = field.q() / field.p();
    field.elements().filter(|e| e.to_int() < bound).collect()
}

pub fn is_additive_subgroup(field: &Field, v: &[Elem]) -> bool {
    let set: HashSet<Elem> = v.iter().copied().collect();
    set.contains(&Elem::ZERO) && v.iter().all(|&a| v.iter().all(|&b| set.contains(&field.add(a, b))))
}

/// Single-twist code with `t = 1`, `h = k - 1` on the first `n` points of a proper
/// additive subgroup `V` (sorted). Requires `1 / eta` outside `V`.
pub fn make_plus_twisted(
    field: &Field,
    v: &[Elem],
    n: usize,
    k: usize,
    eta: Elem,
    at_infinity: bool,
) -> Result<TwistedCode> {
    let set: HashSet<Elem> = v.iter().copied().collect();
    if set.len() != v.len() || set.len() >= field.q() as usize || !is_additive_subgroup(field, v) {
        return Err(Error::NotAdditiveSubgroup);
    }
    if eta.is_zero() || set.contains(&field.inv(eta)?) {
        return Err(Error::EtaInverseInGroup);
    }
    if n > v.len() {
        return Err(Error::InvalidCode(format!("n={n} exceeds |V| = {}", v.len())));
    }
    let mut alpha = v.to_vec();
    alpha.sort();
    alpha.truncate(n);
    TwistedCode::new(field, alpha, k, vec![1], vec![k - 1], vec![eta], at_infinity)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupOp {
    Add,
    Mul,
}

/// Whether every element of the group (`F_q` under addition, `F_q^*` under
/// multiplication) is the sum/product of `k` distinct elements of `s`.
pub fn is_k_sum_generator(field: &Field, s: &[Elem], k: usize, op: GroupOp) -> Result<bool> {
    let uniq: Vec<Elem> = {
        let mut v = s.to_vec();
        v.sort();
        v.dedup();
        v
    };
    if uniq.len() < k {
        return Err(Error::Precondition(format!("|S| = {} < k = {k}", uniq.len())));
    }
    if op == GroupOp::Mul && uniq.iter().any(|e| e.is_zero()) {
        return Err(Error::Precondition("0 is not in the multiplicative group".into()));
    }
    let group = match op {
        GroupOp::Add => field.q() as usize,
        GroupOp::Mul => field.q() as usize - 1,
    };
    let work = binomial(uniq.len(), k).saturating_mul(group as u128);
    if work > K_SUM_LIMIT {
        return Err(Error::TooLarge(format!("{work} subset-group operations")));
    }
    let mut seen = vec![false; field.q() as usize];
    let mut count = 0;
    for sub in Combinations::new(uniq.len(), k) {
        let v = match op {
            GroupOp::Add => field.sum(sub.iter().map(|&i| uniq[i])),
            GroupOp::Mul => field.product(sub.iter().map(|&i| uniq[i])),
        };
        if !seen[v.to_int() as usize] {
            seen[v.to_int() as usize] = true;
            count += 1;
            if count == group {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MdsMethod {
    Exhaustive,
    Star,
    Plus,
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdsReport {
    pub mds: bool,
    /// Column indices of a vanishing maximal minor.
    pub witness: Option<Vec<usize>>,
    pub method: MdsMethod,
}

fn is_star_shape(c: &TwistedCode) -> bool {
    c.ell() == 1 && c.t()[0] == 1 && c.h()[0] == 0 && !c.at_infinity()
}

fn is_plus_shape(c: &TwistedCode) -> bool {
    c.ell() == 1 && c.t()[0] == 1 && c.h()[0] + 1 == c.k()
}

/// Dispatches to the requested criterion. `Auto` uses the closed-form criteria when the
/// twist shape allows it and the minor scan otherwise.
pub fn mds_check(code: &TwistedCode, method: MdsMethod) -> Result<MdsReport> {
    let f = code.field();
    let method = match method {
        MdsMethod::Auto if is_star_shape(code) => MdsMethod::Star,
        MdsMethod::Auto if is_plus_shape(code) => MdsMethod::Plus,
        MdsMethod::Auto => MdsMethod::Exhaustive,
        m => m,
    };
    let witness = match method {
        MdsMethod::Star => {
            if !is_star_shape(code) {
                return Err(Error::Precondition("star criterion needs t = (1), h = (0)".into()));
            }
            star_violation(f, code.k(), code.alpha(), code.eta()[0])
        }
        MdsMethod::Plus => {
            if !is_plus_shape(code) {
                return Err(Error::Precondition("plus criterion needs t = (1), h = (k - 1)".into()));
            }
            // the coordinate at infinity keeps MDS when h = k - 1
            plus_violation(f, code.k(), code.alpha(), code.eta()[0])
        }
        _ => first_zero_minor(&code.generator_canonical()),
    };
    Ok(MdsReport { mds: witness.is_none(), witness, method })
}
