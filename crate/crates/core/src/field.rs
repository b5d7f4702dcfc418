//! Exact arithmetic in GF(p^m).
//!
//! An element is stored by its integer encoding `n = sum coeffs[i] * p^i`, where
//! `coeffs` is the low-to-high residue representation modulo the field modulus.
//! Because the encoding is canonical, equality of [`Elem`] values is equality of
//! field elements. The [`Field`] handle owns the arithmetic tables; elements are
//! plain `Copy` values and every operation goes through the handle.
//!
//! Multiplication uses exp/log tables built from a primitive element. The
//! residue-level routines (`mul_residue`, `inv_euclid`) implement the same
//! arithmetic directly on coefficient vectors and are used to build the tables
//! and to cross-check them.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Exhaustive homomorphism checks on embeddings run up to this subfield size.
const EMBEDDING_CHECK_LIMIT: u32 = 1 << 10;

/// Fields up to this size with odd characteristic and `m > 1` get an addition table.
const ADD_TABLE_LIMIT: u32 = 256;

/// A field element, identified with its integer encoding in `[0, q)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Integer encoding of the element.
    pub fn to_int(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Unchecked construction; callers guarantee `n < q`.
    pub(crate) fn from_index(n: u64) -> Elem {
        Elem(n as u32)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Validated description of GF(p^m).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    /// Monic irreducible modulus, low-to-high, `m + 1` coefficients.
    pub modulus: Vec<u32>,
    pub q: u32,
}

/// Field description as it appears in configuration files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub p: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldConfig {
    pub fn build(&self) -> Result<Field> {
        Field::new(self.p, self.m, self.modulus.clone())
    }
}

/// Operation selector for [`Field::arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(u64),
}

struct Inner {
    spec: FieldSpec,
    /// exp[i] = g^i for i in [0, 2(q-1)).
    exp: Vec<u32>,
    /// log[a] for a != 0; log[0] unused.
    log: Vec<u32>,
    primitive: u32,
    add_table: Option<Vec<u32>>,
}

/// Shared handle to a finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.0.spec;
        write!(f, "GF({}^{}; modulus {:?})", s.p, s.m, s.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- dense polynomial helpers over GF(p), coefficient vectors low-to-high ---

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Remainder of `a` modulo the nonzero polynomial `b` over GF(p).
fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    let p64 = p as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p64;
        let shift = dr - db;
        for (i, &bi) in b.iter().enumerate() {
            let sub = c * bi as u64 % p64;
            r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    r
}

/// Quotient and remainder over GF(p).
fn fp_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    let lead_inv = inv_mod_p(b[db], p) as u64;
    let p64 = p as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p64;
        let shift = dr - db;
        q[shift] = c as u32;
        for (i, &bi) in b.iter().enumerate() {
            let sub = c * bi as u64 % p64;
            r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn fp_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut v: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
    trim(&mut v);
    v
}

fn fp_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut v: Vec<u32> = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut v);
    v
}

/// Irreducibility by trial division against every monic polynomial of degree
/// `1..=deg/2`.
pub(crate) fn is_irreducible_fp(poly: &[u32], p: u32) -> bool {
    let mut f = poly.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if fp_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest (by `c_0, ..., c_{m-1}`) monic irreducible of degree `m`.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let total = (p as u64).pow(m);
    for idx in 0..total {
        // big-endian digits so that c_0 is the most significant position
        let mut digits = vec![0u32; m as usize];
        let mut x = idx;
        for pos in (0..m as usize).rev() {
            digits[pos] = (x % p as u64) as u32;
            x /= p as u64;
        }
        if digits[0] == 0 {
            continue;
        }
        let mut cand = digits;
        cand.push(1);
        if is_irreducible_fp(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

impl Field {
    /// Builds GF(p^m). Without a modulus, the lexicographically smallest monic
    /// irreducible of degree `m` is used; prime fields use the modulus `X`.
    pub fn new(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::DegreeMismatch { expected: 0, got: modulus.unwrap_or_default() });
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q64));
        }
        let q = q64 as u32;
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m as usize + 1 || *c.last().unwrap() != 1 || c.iter().any(|&x| x >= p) {
                    return Err(Error::DegreeMismatch { expected: m, got: c });
                }
                if !is_irreducible_fp(&c, p) {
                    return Err(Error::NotIrreducible { p });
                }
                c
            }
            None => smallest_irreducible(p, m),
        };
        let spec = FieldSpec { p, m, modulus, q };
        Ok(Self::from_spec(spec))
    }

    /// GF(p) with modulus `X`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    fn from_spec(spec: FieldSpec) -> Field {
        let q = spec.q;
        let mut inner = Inner { spec, exp: Vec::new(), log: Vec::new(), primitive: 1, add_table: None };
        let factors = prime_factors(q as u64 - 1);
        let order = q as u64 - 1;
        let primitive = (1..q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| residue_pow(&inner.spec, g, order / r) != 1)
            })
            .expect("multiplicative group is cyclic");
        inner.primitive = primitive;
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = residue_mul(&inner.spec, cur, primitive);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        inner.exp = exp;
        inner.log = log;
        if inner.spec.p != 2 && inner.spec.m > 1 && q <= ADD_TABLE_LIMIT {
            let mut tab = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    tab[(a * q + b) as usize] = digit_add(&inner.spec, a, b);
                }
            }
            inner.add_table = Some(tab);
        }
        Field(Arc::new(inner))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn config(&self) -> FieldConfig {
        let s = &self.0.spec;
        FieldConfig { p: s.p, m: s.m, modulus: Some(s.modulus.clone()) }
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn m(&self) -> u32 {
        self.0.spec.m
    }

    pub fn q(&self) -> u32 {
        self.0.spec.q
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Decodes an integer in `[0, q)` to an element.
    pub fn elem(&self, n: u64) -> Result<Elem> {
        if n >= self.q() as u64 {
            return Err(Error::OutOfRange { value: n, q: self.q() });
        }
        Ok(Elem(n as u32))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p() as i64) as u32)
    }

    /// Checks that `e` is a valid encoding for this field.
    pub fn check(&self, e: Elem) -> Result<()> {
        if e.0 < self.q() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        let p = self.p();
        if coeffs.len() > self.m() as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::OutOfRange { value: coeffs.len() as u64, q: self.q() });
        }
        let mut n = 0u32;
        for &c in coeffs.iter().rev() {
            n = n * p + c;
        }
        Ok(Elem(n))
    }

    /// Residues of `e`, low-to-high, always `m` entries.
    pub fn coeffs(&self, e: Elem) -> Vec<u32> {
        to_digits(&self.0.spec, e.0)
    }

    /// Class of `X` modulo the modulus (for prime fields this is `0`).
    pub fn x(&self) -> Elem {
        if self.m() == 1 {
            Elem(self.0.spec.modulus[0].wrapping_neg().wrapping_add(self.p()) % self.p())
        } else {
            Elem(self.p())
        }
    }

    pub fn primitive_element(&self) -> Elem {
        Elem(self.0.primitive)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q()).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.q()).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let s = &self.0;
        if s.spec.p == 2 {
            Elem(a.0 ^ b.0)
        } else if s.spec.m == 1 {
            let t = a.0 + b.0;
            Elem(if t >= s.spec.p { t - s.spec.p } else { t })
        } else if let Some(tab) = &s.add_table {
            Elem(tab[(a.0 * s.spec.q + b.0) as usize])
        } else {
            Elem(digit_add(&s.spec, a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let s = &self.0.spec;
        if s.p == 2 || a.0 == 0 {
            a
        } else if s.m == 1 {
            Elem(s.p - a.0)
        } else {
            let d: Vec<u32> = to_digits(s, a.0).into_iter().map(|c| (s.p - c) % s.p).collect();
            Elem(from_digits(s, &d))
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let s = &self.0.spec;
        if s.p == 2 {
            Elem(a.0 ^ b.0)
        } else if s.m == 1 {
            Elem(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + s.p - b.0 })
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let s = &self.0;
        Elem(s.exp[(s.log[a.0 as usize] + s.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let s = &self.0;
        let n = s.spec.q - 1;
        Ok(Elem(s.exp[((n - s.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let s = &self.0;
        let n = (s.spec.q - 1) as u64;
        let idx = (s.log[a.0 as usize] as u64 * (e % n)) % n;
        Elem(s.exp[idx as usize])
    }

    /// Power with a signed exponent; negative exponents need `a != 0`.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Discrete logarithm to the base of [`Field::primitive_element`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    /// Single entry point mirroring the element operations.
    pub fn arith(&self, a: Elem, b: Elem, op: ArithOp) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
            ArithOp::Inv => self.inv(a),
            ArithOp::Pow(e) => Ok(self.pow(a, e)),
        }
    }

    /// Product by residue multiplication modulo the field modulus.
    pub fn mul_residue(&self, a: Elem, b: Elem) -> Elem {
        Elem(residue_mul(&self.0.spec, a.0, b.0))
    }

    /// Inverse by the extended Euclidean algorithm on residue representations.
    pub fn inv_euclid(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let s = &self.0.spec;
        let p = s.p;
        if s.m == 1 {
            return Ok(Elem(inv_mod_p(a.0, p)));
        }
        let mut r0 = s.modulus.clone();
        let mut r1 = to_digits(s, a.0);
        trim(&mut r1);
        let mut s0: Vec<u32> = Vec::new();
        let mut s1: Vec<u32> = vec![1];
        while !r1.is_empty() {
            let (quo, rem) = fp_divrem(&r0, &r1, p);
            let next_s = fp_sub(&s0, &fp_mul(&quo, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, next_s);
        }
        // r0 is a nonzero constant
        let c = inv_mod_p(r0[0], p) as u64;
        let mut inv: Vec<u32> = s0.iter().map(|&x| (x as u64 * c % p as u64) as u32).collect();
        inv = fp_rem(&inv, &s.modulus, p);
        inv.resize(s.m as usize, 0);
        Ok(Elem(from_digits(s, &inv)))
    }

    /// Whether `a` is a nonzero square.
    pub fn is_square(&self, a: Elem) -> bool {
        match self.log(a) {
            None => false,
            Some(l) => self.p() == 2 || l % 2 == 0,
        }
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn product<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ONE, |acc, x| self.mul(acc, x))
    }
}

fn to_digits(s: &FieldSpec, mut n: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(s.m as usize);
    for _ in 0..s.m {
        d.push(n % s.p);
        n /= s.p;
    }
    d
}

fn from_digits(s: &FieldSpec, d: &[u32]) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * s.p + c)
}

fn digit_add(s: &FieldSpec, a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..s.m {
        let d = (a % s.p + b % s.p) % s.p;
        out += d * place;
        place *= s.p;
        a /= s.p;
        b /= s.p;
    }
    out
}

fn residue_mul(s: &FieldSpec, a: u32, b: u32) -> u32 {
    if s.m == 1 {
        return ((a as u64 * b as u64) % s.p as u64) as u32;
    }
    let prod = fp_mul(&to_digits(s, a), &to_digits(s, b), s.p);
    let mut r = fp_rem(&prod, &s.modulus, s.p);
    r.resize(s.m as usize, 0);
    from_digits(s, &r)
}

fn residue_pow(s: &FieldSpec, a: u32, mut e: u64) -> u32 {
    let mut result = 1u32;
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            result = residue_mul(s, result, base);
        }
        base = residue_mul(s, base, base);
        e >>= 1;
    }
    result
}

/// Embedding of a subfield into a larger field of the same characteristic.
#[derive(Clone, Debug)]
pub struct SubfieldEmbedding {
    sub: Field,
    sup: Field,
    image_of_sub_generator: Elem,
    table: Vec<Elem>,
    in_image: Vec<bool>,
}

impl SubfieldEmbedding {
    /// Maps the class of `X` in `sub` to the root of the subfield modulus in `sup`
    /// with smallest integer encoding.
    pub fn new(sub: &Field, sup: &Field) -> Result<SubfieldEmbedding> {
        if sub.p() != sup.p() || sup.m() % sub.m() != 0 {
            return Err(Error::Precondition(format!(
                "GF({}^{}) is not a subfield of GF({}^{})",
                sub.p(),
                sub.m(),
                sup.p(),
                sup.m()
            )));
        }
        let modulus: Vec<Elem> = sub.spec().modulus.iter().map(|&c| Elem(c)).collect();
        let gamma = sup
            .elements()
            .find(|&x| {
                let v = modulus.iter().rev().fold(Elem::ZERO, |acc, &c| sup.add(sup.mul(acc, x), c));
                v.is_zero()
            })
            .ok_or(Error::EmptyDifference)?;
        let m = sub.m() as usize;
        let powers: Vec<Elem> = (0..m).map(|i| sup.pow(gamma, i as u64)).collect();
        let table: Vec<Elem> = sub
            .elements()
            .map(|a| {
                let c = sub.coeffs(a);
                sup.sum(c.iter().zip(&powers).map(|(&ci, &pw)| sup.mul(Elem(ci), pw)))
            })
            .collect();
        let mut in_image = vec![false; sup.q() as usize];
        for &e in &table {
            in_image[e.0 as usize] = true;
        }
        let emb = SubfieldEmbedding {
            sub: sub.clone(),
            sup: sup.clone(),
            image_of_sub_generator: gamma,
            table,
            in_image,
        };
        if in_image_count(&emb.in_image) != sub.q() as usize {
            return Err(Error::Precondition("embedding is not injective".into()));
        }
        if sub.q() <= EMBEDDING_CHECK_LIMIT && !emb.is_homomorphism() {
            return Err(Error::Precondition("embedding is not a field homomorphism".into()));
        }
        Ok(emb)
    }

    pub fn sub(&self) -> &Field {
        &self.sub
    }

    pub fn sup(&self) -> &Field {
        &self.sup
    }

    pub fn image_of_sub_generator(&self) -> Elem {
        self.image_of_sub_generator
    }

    pub fn map(&self, a: Elem) -> Elem {
        self.table[a.0 as usize]
    }

    /// Whether `e` (an element of the larger field) lies in the image.
    pub fn contains(&self, e: Elem) -> bool {
        self.in_image[e.0 as usize]
    }

    pub fn preimage(&self, e: Elem) -> Option<Elem> {
        self.table.iter().position(|&x| x == e).map(|i| Elem(i as u32))
    }

    /// Image of the subfield, ordered by the subfield's encoding.
    pub fn image(&self) -> &[Elem] {
        &self.table
    }

    /// Exhaustive check that the map preserves 0, 1, + and x.
    pub fn is_homomorphism(&self) -> bool {
        let (sub, sup) = (&self.sub, &self.sup);
        if self.map(Elem::ZERO) != Elem::ZERO || self.map(Elem::ONE) != Elem::ONE {
            return false;
        }
        sub.elements().all(|a| {
            sub.elements().all(|b| {
                self.map(sub.add(a, b)) == sup.add(self.map(a), self.map(b))
                    && self.map(sub.mul(a, b)) == sup.mul(self.map(a), self.map(b))
            })
        })
    }
}

fn in_image_count(v: &[bool]) -> usize {
    v.iter().filter(|&&b| b).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_examples() {
        let f5 = Field::new(5, 1, None).unwrap();
        assert_eq!(f5.spec().modulus, vec![0, 1]);
        assert_eq!(f5.q(), 5);

        let f4 = Field::new(2, 2, Some(vec![1, 1, 1])).unwrap();
        assert_eq!(f4.q(), 4);

        // monic quadratics over GF(3) in lex order of (c0, c1):
        // (0, *) has root 0; (1, 0) = X^2 + 1 has no root in {0,1,2}.
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(f9.spec().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn make_field_errors() {
        assert_eq!(Field::new(6, 1, None).unwrap_err(), Error::NotPrime(6));
        assert!(matches!(Field::new(2, 2, Some(vec![1, 0, 1])), Err(Error::NotIrreducible { .. })));
        assert!(matches!(Field::new(2, 3, Some(vec![1, 1, 1])), Err(Error::DegreeMismatch { .. })));
        assert!(matches!(Field::new(2, 2, Some(vec![1, 1, 2])), Err(Error::DegreeMismatch { .. })));
        assert!(matches!(Field::new(2, 21, None), Err(Error::FieldTooLarge(_))));
    }

    #[test]
    fn arith_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.add(Elem(2), Elem(3)), Elem(0));
        let f4 = Field::new(2, 2, Some(vec![1, 1, 1])).unwrap();
        let x = f4.x();
        assert_eq!(x, Elem(2));
        assert_eq!(f4.mul(x, x), f4.add(x, Elem::ONE));
        let f101 = Field::prime(101).unwrap();
        assert_eq!(f101.inv(Elem(2)).unwrap(), Elem(51));
        assert_eq!(f101.arith(Elem(2), Elem(0), ArithOp::Div), Err(Error::DivisionByZero));
        assert_eq!(f101.arith(Elem(0), Elem(0), ArithOp::Inv), Err(Error::DivisionByZero));
        assert_eq!(f101.arith(Elem(200), Elem(1), ArithOp::Add), Err(Error::FieldMismatch));
    }

    #[test]
    fn int_codec_examples() {
        let f4 = Field::new(2, 2, Some(vec![1, 1, 1])).unwrap();
        assert_eq!(f4.from_coeffs(&[1, 1]).unwrap().to_int(), 3);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.elem(4).unwrap().to_int(), 4);
        assert!(matches!(f5.elem(5), Err(Error::OutOfRange { .. })));
        let f9 = Field::new(3, 2, None).unwrap();
        let e = f9.from_coeffs(&[2, 1]).unwrap();
        assert_eq!(e.to_int(), 5);
        assert_eq!(f9.coeffs(e), vec![2, 1]);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, m) in [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (7, 1), (13, 1), (2, 6)] {
            let f = Field::new(p, m, None).unwrap();
            let q = f.q();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, Elem::ZERO), a);
                assert_eq!(f.mul(a, Elem::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                }
            }
            if (q as u64).pow(3) <= 64u64.pow(3) {
                for &a in &els {
                    for &b in &els {
                        for &c in &els {
                            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                            assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fermat_and_codec_bijection() {
        for (p, m) in [(2, 1), (5, 1), (2, 3), (3, 2), (2, 4), (13, 1), (23, 1), (2, 6), (3, 4), (101, 1)] {
            let f = Field::new(p, m, None).unwrap();
            let q = f.q() as u64;
            for a in f.nonzero_elements() {
                assert_eq!(f.pow(a, q - 1), Elem::ONE);
            }
            for n in 0..q {
                let e = f.elem(n).unwrap();
                let back = f.from_coeffs(&f.coeffs(e)).unwrap();
                assert_eq!(back.to_int() as u64, n);
            }
        }
    }

    #[test]
    fn table_arithmetic_matches_residue_arithmetic() {
        for (p, m) in [(2, 4), (3, 2), (2, 6), (3, 4), (5, 2), (17, 1)] {
            let f = Field::new(p, m, None).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_residue(a, b));
                }
                if !a.is_zero() {
                    assert_eq!(f.inv(a).unwrap(), f.inv_euclid(a).unwrap());
                }
            }
        }
    }

    #[test]
    fn subfield_embeddings() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::new(2, 2, None).unwrap();
        let f16 = Field::new(2, 4, None).unwrap();
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::new(3, 2, None).unwrap();
        let f81 = Field::new(3, 4, None).unwrap();
        for (sub, sup) in [(&f2, &f4), (&f4, &f16), (&f2, &f16), (&f3, &f9), (&f9, &f81), (&f3, &f81)] {
            let e = SubfieldEmbedding::new(sub, sup).unwrap();
            assert!(e.is_homomorphism());
            let img = e.image();
            assert_eq!(img.len(), sub.q() as usize);
            for &a in img {
                for &b in img {
                    assert!(e.contains(sup.add(a, b)));
                    assert!(e.contains(sup.mul(a, b)));
                }
            }
        }
        assert!(SubfieldEmbedding::new(&f4, &Field::new(2, 3, None).unwrap()).is_err());
        assert!(SubfieldEmbedding::new(&f3, &f16).is_err());
    }
}
