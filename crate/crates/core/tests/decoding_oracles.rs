use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twisted_rs::decoding::{
    brute_force_decode, build_key_equations, build_module_matrix, decode, solve_problem1_linear,
    solve_problem1_popov, tau_lb, weak_popov_reduce, DecodeOutcome, Engine, KeyEqSystem, PolyMatrix,
    DEFAULT_BRUTE_BUDGET,
};
use twisted_rs::{sample_random_code, Elem, Field, Matrix, Poly, TwistedCode};

fn msg(f: &Field, k: usize, r: &mut ChaCha8Rng) -> Vec<Elem> {
    (0..k).map(|_| f.elem(r.gen_range(0..f.q() as u64)).unwrap()).collect()
}

fn corrupt(f: &Field, cw: &[Elem], tau: usize, r: &mut ChaCha8Rng) -> Vec<Elem> {
    let mut idx: Vec<usize> = (0..cw.len()).collect();
    idx.shuffle(r);
    let mut out = cw.to_vec();
    for &i in &idx[..tau] {
        out[i] = f.add(out[i], f.elem(r.gen_range(1..f.q() as u64)).unwrap());
    }
    out
}

fn dist(a: &[Elem], b: &[Elem]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Berlekamp-Welch: smallest e with a monic E of degree e and Q of degree < k + e such
/// that Q(x_i) = r_i E(x_i).
fn berlekamp_welch(f: &Field, xs: &[Elem], r: &[Elem], k: usize) -> Option<Vec<Elem>> {
    let n = xs.len();
    for e in 0..=(n - k) / 2 {
        // unknowns: E_0..E_{e-1}, Q_0..Q_{k+e-1}
        let nv = e + k + e;
        let mut a = Matrix::zeros(f, n, nv);
        let mut b = vec![Elem::ZERO; n];
        for i in 0..n {
            for d in 0..e {
                a.set(i, d, f.mul(r[i], f.pow(xs[i], d as u64)));
            }
            for d in 0..k + e {
                a.set(i, e + d, f.neg(f.pow(xs[i], d as u64)));
            }
            b[i] = f.neg(f.mul(r[i], f.pow(xs[i], e as u64)));
        }
        if let Some(sol) = a.solve(&b) {
            let mut ec = sol[..e].to_vec();
            ec.push(Elem::ONE);
            let big_e = Poly::new(f, ec);
            let q = Poly::new(f, sol[e..].to_vec());
            let (g, rem) = q.divrem(&big_e).unwrap();
            if !rem.is_zero() || g.deg().is_some_and(|d| d >= k) {
                return None;
            }
            let cw = g.eval_many(xs).unwrap();
            return (dist(&cw, r) <= (n - k) / 2).then_some(cw);
        }
    }
    None
}

#[test]
fn reed_solomon_agrees_with_berlekamp_welch() {
    let f = Field::prime(17).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..150 {
        let mut pts: Vec<Elem> = f.elements().collect();
        pts.shuffle(&mut r);
        let n = r.gen_range(6..=16);
        let k = r.gen_range(1..n - 1);
        let rs = TwistedCode::reed_solomon(&f, pts[..n].to_vec(), k).unwrap();
        let cw = rs.encode(&msg(&f, k, &mut r)).unwrap();
        let tau = r.gen_range(0..=(n - k) / 2 + 2).min(n);
        let recv = corrupt(&f, &cw, tau, &mut r);
        let expect = berlekamp_welch(&f, &pts[..n], &recv, k);
        for engine in [Engine::Linear, Engine::Popov] {
            let got = decode(&rs, &recv, trial % 3, engine).unwrap();
            assert_eq!(got.codeword().map(|c| c.to_vec()), expect, "trial {trial}");
        }
    }
}

fn all_words(f: &Field, n: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let q = f.q() as u64;
    (0..q.pow(n as u32)).map(move |mut x| {
        (0..n)
            .map(|_| {
                let e = f.elem(x % q).unwrap();
                x /= q;
                e
            })
            .collect()
    })
}

#[test]
fn brute_force_matches_exhaustive_nearest_codeword() {
    let f = Field::prime(5).unwrap();
    let (n, k) = (4, 2);
    for seed in 0..6 {
        let code = sample_random_code(&f, n, k, 1, seed).unwrap();
        let codewords: Vec<Vec<Elem>> = all_words(&f, k).map(|m| code.encode(&m).unwrap()).collect();
        for recv in all_words(&f, n) {
            let mut ds: Vec<(usize, &Vec<Elem>)> = codewords.iter().map(|c| (dist(c, &recv), c)).collect();
            ds.sort();
            let unique = ds[0].0 <= (n - k) / 2 && (ds.len() == 1 || ds[1].0 > ds[0].0);
            let out = brute_force_decode(&code, &recv, DEFAULT_BRUTE_BUDGET).unwrap();
            if unique {
                assert_eq!(out.codeword(), Some(&ds[0].1[..]), "seed {seed}");
            }
            if let Some(c) = out.codeword() {
                assert!(dist(c, &recv) <= (n - k) / 2);
                assert_eq!(dist(c, &recv), ds[0].0);
            }
        }
    }
}

#[test]
fn brute_force_reduces_to_rs_without_twists() {
    let f = Field::prime(13).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(3);
    let rs = TwistedCode::reed_solomon(&f, (1..=12).map(|x| f.elem(x).unwrap()).collect(), 4).unwrap();
    for _ in 0..50 {
        let cw = rs.encode(&msg(&f, 4, &mut r)).unwrap();
        let tau = r.gen_range(0..=5);
        let recv = corrupt(&f, &cw, tau, &mut r);
        let bf = brute_force_decode(&rs, &recv, 1).unwrap();
        assert_eq!(bf.codeword(), decode(&rs, &recv, 0, Engine::Popov).unwrap().codeword());
    }
}

#[test]
fn popov_degree_matches_linear_on_gf23() {
    let f = Field::prime(23).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100 {
        let ell = 1 + i % 3;
        let code = sample_random_code(&f, 22, 7, ell, 200 + i as u64).unwrap();
        let cw = code.encode(&msg(&f, 7, &mut r)).unwrap();
        let recv = corrupt(&f, &cw, r.gen_range(0..=tau_lb(22, 7, ell, 2) as usize), &mut r);
        let (rp, g) = build_key_equations(&code, &recv).unwrap();
        let sys = KeyEqSystem::new(&code, 2);
        let a = solve_problem1_linear(&sys, &rp, &g).unwrap();
        let b = solve_problem1_popov(&sys, &rp, &g).unwrap();
        assert_eq!(a.degree(), b.degree());
    }
}

#[test]
fn decoders_agree_on_gf13() {
    let f = Field::prime(13).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for i in 0..500u64 {
        let ell = 1 + (i % 2) as usize;
        let code = sample_random_code(&f, 12, 4, ell, 300 + i).unwrap();
        let cw = code.encode(&msg(&f, 4, &mut r)).unwrap();
        let tau = r.gen_range(0..=5);
        let recv = corrupt(&f, &cw, tau, &mut r);
        let a = decode(&code, &recv, 2, Engine::Linear).unwrap();
        let b = decode(&code, &recv, 2, Engine::Popov).unwrap();
        // above the lower bound the minimal solution need not be unique, and the engines
        // may pick different ones
        if tau as i64 <= tau_lb(12, 4, ell, 2) {
            assert_eq!(a, b);
        }
        for out in [&a, &b] {
            if let Some(c) = out.codeword() {
                assert!(dist(c, &recv) <= 4);
                let bf = brute_force_decode(&code, &recv, DEFAULT_BRUTE_BUDGET).unwrap();
                assert_eq!(bf.codeword(), Some(c));
            }
        }
    }
}

#[test]
fn success_rate_below_lower_bound() {
    let f = Field::prime(23).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(6);
    let mut ok = 0;
    for i in 0..500u64 {
        let code = sample_random_code(&f, 22, 7, 1, 500 + i % 25).unwrap();
        let cw = code.encode(&msg(&f, 7, &mut r)).unwrap();
        let recv = corrupt(&f, &cw, r.gen_range(0..=6), &mut r);
        ok += usize::from(decode(&code, &recv, 2, Engine::Popov).unwrap().codeword() == Some(&cw[..]));
    }
    assert!(ok >= 475, "{ok} of 500");
}

#[test]
fn above_half_distance_fails() {
    let f = Field::prime(23).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(7);
    for i in 0..200u64 {
        let code = sample_random_code(&f, 22, 7, 1 + (i % 2) as usize, 700 + i).unwrap();
        let cw = code.encode(&msg(&f, 7, &mut r)).unwrap();
        let recv = corrupt(&f, &cw, 8, &mut r);
        let out = decode(&code, &recv, 2, Engine::Popov).unwrap();
        assert_ne!(out.codeword(), Some(&cw[..]));
        if let DecodeOutcome::Success { codeword, .. } = out {
            assert!(dist(&codeword, &recv) <= 7);
        }
    }
}

/// Division by a weak Popov basis; zero remainder iff `v` lies in its row module.
fn reduces_to_zero(basis: &PolyMatrix, v: &[Poly]) -> bool {
    let f = basis.field.clone();
    let probe = |row: &[Poly]| PolyMatrix::new(&f, vec![row.to_vec()], basis.shift.clone()).pivot(0);
    let mut v = v.to_vec();
    for _ in 0..10_000 {
        let Some((p, _)) = probe(&v) else {
            return true;
        };
        let Some(b) = (0..basis.size()).find(|&i| basis.pivot(i).map(|x| x.0) == Some(p)) else {
            return false;
        };
        let (dv, db) = (v[p].deg().unwrap(), basis.rows[b][p].deg().unwrap());
        if dv < db {
            return false;
        }
        let c = f.neg(f.div(v[p].lead(), basis.rows[b][p].lead()).unwrap());
        for (x, y) in v.iter_mut().zip(&basis.rows[b]) {
            *x = x.add(&y.shift(dv - db).scale(c));
        }
    }
    false
}

#[test]
fn weak_popov_preserves_the_module() {
    let f = Field::prime(13).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(8);
    for i in 0..20u64 {
        let ell = 1 + (i % 2) as usize;
        let code = sample_random_code(&f, 12, 4, ell, 900 + i).unwrap();
        let cw = code.encode(&msg(&f, 4, &mut r)).unwrap();
        let recv = corrupt(&f, &cw, r.gen_range(0..=4), &mut r);
        let (rp, g) = build_key_equations(&code, &recv).unwrap();
        let input = build_module_matrix(&KeyEqSystem::new(&code, 1 + (i % 2) as usize), &rp, &g);
        let out = weak_popov_reduce(input.clone()).unwrap();
        assert!(out.is_weak_popov());
        for row in &input.rows {
            assert!(reduces_to_zero(&out, row));
        }
        // equal determinants up to a unit: the output rows generate no larger module
        let (d_in, d_out) = (input.det(), out.det());
        assert_eq!(d_in.deg(), d_out.deg());
        assert_eq!(d_in.monic(), d_out.monic());
    }
}
