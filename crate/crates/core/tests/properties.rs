use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twisted_rs::decoding::{build_key_equations, decode, true_witness, Engine, IndexSet, KeyEqSystem};
use twisted_rs::dual::dual_twisted;
use twisted_rs::equivalence::{schur_square_dim, sumset_lower_bound};
use twisted_rs::mds::{is_mds_exhaustive, is_mds_by_enumeration, multiplicative_subgroup};
use twisted_rs::{sample_random_code, Elem, Field, Poly, TwistedCode};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![(2u32, 1u32), (2, 4), (2, 8), (3, 2), (3, 3), (5, 2), (7, 1), (13, 1), (251, 1)])
        .prop_map(|(p, m)| Field::new(p, m, None).unwrap())
}

fn elems(f: &Field, xs: &[u64]) -> Vec<Elem> {
    xs.iter().map(|&x| f.elem(x % f.q() as u64).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field_strategy(), xs in prop::collection::vec(any::<u64>(), 3)) {
        let v = elems(&f, &xs);
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        prop_assert_eq!(f.mul(a, b), f.mul_residue(a, b));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!(f.inv(a).unwrap(), f.inv_euclid(a).unwrap());
            prop_assert_eq!(f.pow(a, f.q() as u64 - 1), Elem::ONE);
        }
        prop_assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
    }

    #[test]
    fn poly_division(f in field_strategy(), a in prop::collection::vec(any::<u64>(), 0..12), b in prop::collection::vec(any::<u64>(), 1..6)) {
        let pa = Poly::new(&f, elems(&f, &a));
        let pb = Poly::new(&f, elems(&f, &b));
        prop_assume!(!pb.is_zero());
        let (qt, r) = pa.divrem(&pb).unwrap();
        prop_assert_eq!(qt.mul(&pb).add(&r), pa);
        prop_assert!(r.deg() < pb.deg() || r.is_zero());
    }

    #[test]
    fn interpolation_round_trip(seed in any::<u64>(), n in 1usize..12) {
        let f = Field::prime(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut xs: Vec<Elem> = f.elements().collect();
        xs.shuffle(&mut rng);
        xs.truncate(n);
        let ys: Vec<Elem> = (0..n as u64).map(|i| f.elem((seed.wrapping_add(i * 7)) % 13).unwrap()).collect();
        let pts: Vec<(Elem, Elem)> = xs.iter().copied().zip(ys.iter().copied()).collect();
        let p = Poly::interpolate(&f, &pts).unwrap();
        prop_assert!(p.deg().is_none_or(|d| d < n));
        prop_assert_eq!(p.eval_many(&xs).unwrap(), ys);
    }

    #[test]
    fn encoding_is_linear(seed in any::<u64>(), ell in 0usize..3, a in prop::collection::vec(0u64..23, 7), b in prop::collection::vec(0u64..23, 7)) {
        let f = Field::prime(23).unwrap();
        let c = sample_random_code(&f, 22, 7, ell, seed).unwrap();
        let (ma, mb) = (elems(&f, &a), elems(&f, &b));
        let sum: Vec<Elem> = ma.iter().zip(&mb).map(|(&x, &y)| f.add(x, y)).collect();
        let lhs = c.encode(&sum).unwrap();
        let rhs: Vec<Elem> = c.encode(&ma).unwrap().iter().zip(c.encode(&mb).unwrap()).map(|(&x, y)| f.add(x, y)).collect();
        prop_assert_eq!(lhs, rhs);
        // the canonical generator reproduces the encoder
        let g = c.generator_canonical();
        prop_assert_eq!(g.left_mul_vec(&ma).unwrap(), c.encode(&ma).unwrap());
    }

    #[test]
    fn minors_agree_with_enumeration(seed in any::<u64>()) {
        let f = Field::prime(7).unwrap();
        let c = sample_random_code(&f, 6, 3, 1, seed).unwrap();
        prop_assert_eq!(is_mds_exhaustive(&c), is_mds_by_enumeration(&c).unwrap());
        prop_assert_eq!(is_mds_exhaustive(&c), c.min_distance_exhaustive().unwrap() == 4);
    }

    #[test]
    fn dual_is_orthogonal(k in 1usize..12, t in 1usize..12, h in 0usize..11, eta in 1u64..13) {
        prop_assume!(k < 12 && t <= 12 - k && h < k);
        let f = Field::prime(13).unwrap();
        let alpha: Vec<Elem> = f.nonzero_elements().collect();
        let c = TwistedCode::new(&f, alpha, k, vec![t], vec![h], vec![f.elem(eta).unwrap()], false).unwrap();
        let d = dual_twisted(&c, false).unwrap();
        prop_assert!(c.generator_canonical().mul(&d.h.transpose()).unwrap().is_zero());
        prop_assert_eq!(d.h.rank(), 12 - k);
        prop_assert_eq!(d.params.t, vec![k - h]);
        prop_assert_eq!(d.params.h, vec![12 - k - t]);
    }

    #[test]
    fn zero_point_dual(k in 1usize..7, t in 1usize..7, h in 0usize..6, eta in 1u64..13) {
        prop_assume!(k < 7 && t <= 7 - k && h < k);
        let f = Field::prime(13).unwrap();
        let mut alpha = multiplicative_subgroup(&f, 6).unwrap();
        alpha.push(Elem::ZERO);
        let c = TwistedCode::new(&f, alpha, k, vec![t], vec![h], vec![f.elem(eta).unwrap()], false).unwrap();
        match dual_twisted(&c, true) {
            Ok(d) => prop_assert!(c.generator_canonical().mul(&d.h.transpose()).unwrap().is_zero()),
            Err(_) => prop_assert!(t == 7 - k && h == 0),
        }
    }

    #[test]
    fn schur_bound(seed in any::<u64>(), k in 2usize..8, ell in 1usize..4) {
        let f = Field::prime(17).unwrap();
        let c = sample_random_code(&f, 16, k, ell, seed).unwrap();
        let dim = schur_square_dim(&c.generator_canonical());
        prop_assert!(dim >= sumset_lower_bound(&c));
        prop_assert!(dim <= (k * (k + 1) / 2).min(16));
    }

    #[test]
    fn index_set_is_graded_prefix(ell in 0usize..5, zeta in 0usize..5) {
        let a = IndexSet::new(ell, zeta);
        let b = IndexSet::new(ell, zeta + 1);
        prop_assert_eq!(&b.tuples()[..a.len()], a.tuples());
        let degs: Vec<usize> = b.tuples().iter().map(|t| t.iter().sum()).collect();
        prop_assert!(degs.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn witness_holds(seed in any::<u64>(), ell in 1usize..4, zeta in 0usize..3, tau in 0usize..8) {
        let f = Field::prime(23).unwrap();
        let c = sample_random_code(&f, 22, 7, ell, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let msg: Vec<Elem> = (0..7).map(|i| f.elem((seed >> i) % 23).unwrap()).collect();
        let mut idx: Vec<usize> = (0..22).collect();
        idx.shuffle(&mut rng);
        let support = &idx[..tau];
        let mut recv = c.encode(&msg).unwrap();
        for (j, &i) in support.iter().enumerate() {
            recv[i] = f.add(recv[i], f.elem(1 + (j as u64 % 22)).unwrap());
        }
        let (r, g) = build_key_equations(&c, &recv).unwrap();
        let w = true_witness(&c, zeta, &msg, support).unwrap();
        prop_assert!(w.verify(&KeyEqSystem::new(&c, zeta), &r, &g));
    }

    #[test]
    fn clean_codewords_decode(seed in any::<u64>(), ell in 0usize..4, zeta in 0usize..3) {
        let f = Field::prime(13).unwrap();
        let c = sample_random_code(&f, 12, 5, ell, seed).unwrap();
        let msg: Vec<Elem> = (0..5).map(|i| f.elem((seed >> (3 * i)) % 13).unwrap()).collect();
        let cw = c.encode(&msg).unwrap();
        for engine in [Engine::Linear, Engine::Popov] {
            let out = decode(&c, &cw, zeta, engine).unwrap();
            prop_assert_eq!(out.codeword(), Some(&cw[..]));
        }
    }
}
