mod common;

use dvrtrace::poly::{factor, separability_profile, squarefree_part_degree, PolyRing};
use dvrtrace::scalars::{FiniteField, ResidueField, ResidueScalar};
use dvrtrace::{Field, Ring};
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(q: u64) -> ResidueField {
    ResidueField::finite(FiniteField::with_order(q).unwrap())
}

fn random_poly(k: &ResidueField, deg: usize, seed: u64) -> dvrtrace::Poly<ResidueScalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c: Vec<ResidueScalar> = (0..deg).map(|_| k.random(&mut rng)).collect();
    c.push(k.random_nonzero(&mut rng));
    PolyRing::new(k.clone(), "x").from_coeffs(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn factorization_multiplies_back(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 9]), deg in 1usize..9, seed in any::<u64>()) {
        let k = field(q);
        let ring = PolyRing::new(k.clone(), "x");
        let f = random_poly(&k, deg, seed);
        let fl = factor(&ring, &f).unwrap();
        prop_assert_eq!(fl.expand(&ring), f);
        for (g, _) in &fl.factors {
            prop_assert!(ring.is_monic(g));
            prop_assert!(factor(&ring, g).unwrap().is_irreducible());
        }
    }

    #[test]
    fn function_field_factorization_multiplies_back(p in prop::sample::select(vec![2u64, 3]), deg in 1usize..5, seed in any::<u64>()) {
        let k = ResidueField::function_field(p).unwrap();
        let ring = PolyRing::new(k.clone(), "x");
        let f = random_poly(&k, deg, seed);
        let fl = factor(&ring, &f).unwrap();
        prop_assert_eq!(fl.expand(&ring), f);
    }

    #[test]
    fn separability_profiles(q in prop::sample::select(vec![2u64, 3, 4]), deg in 1usize..5, seed in any::<u64>()) {
        let k = field(q);
        let ring = PolyRing::new(k.clone(), "x");
        for (g, _) in factor(&ring, &random_poly(&k, deg, seed)).unwrap().factors {
            let prof = separability_profile(&ring, &g).unwrap();
            prop_assert_eq!(prof.m, 0);
            prop_assert_eq!(&prof.h, &g);
            prop_assert!(ring.gcd(&prof.h, &ring.derivative(&prof.h)).degree() == Some(0));
        }
    }

    #[test]
    fn inseparable_profiles(p in prop::sample::select(vec![2u64, 3]), m in 0u32..3, c in 1i64..4) {
        // x^(p^m) - u^c with gcd(c, p) = 1 is irreducible over F_p(u)
        prop_assume!(c.gcd(&(p as i64)) == 1);
        let k = ResidueField::function_field(p).unwrap();
        let ring = PolyRing::new(k.clone(), "x");
        let pm = (p as usize).pow(m);
        let mut coeffs = vec![k.zero(); pm + 1];
        coeffs[0] = k.neg(&k.pow(&k.u().unwrap(), c as u128));
        coeffs[pm] = k.one();
        let g = ring.from_coeffs(coeffs);
        let prof = separability_profile(&ring, &g).unwrap();
        prop_assert_eq!(prof.m, m);
        prop_assert_eq!(ring.inflate(&prof.h, pm), g);
        prop_assert!(ring.gcd(&prof.h, &ring.derivative(&prof.h)).degree() == Some(0));
    }

    #[test]
    fn squarefree_degree_counts_roots(q in prop::sample::select(vec![2u64, 3, 4, 5]), deg in 1usize..6, seed in any::<u64>()) {
        let k = FiniteField::with_order(q).unwrap();
        let rk = ResidueField::finite(k.clone());
        let ring = PolyRing::new(rk.clone(), "x");
        let f = random_poly(&rk, deg, seed);
        let m = factor(&ring, &f).unwrap().factors.iter().fold(1usize, |acc, (g, _)| acc.lcm(&g.degree().unwrap()));
        let big = FiniteField::new(k.p(), k.degree() * m).unwrap();
        let emb = k.embedding_into(&big).unwrap();
        let coeffs: Vec<_> = f.coeffs().iter().map(|c| match c { ResidueScalar::Finite(x) => x.clone(), _ => unreachable!() }).collect();
        let lifted: Vec<_> = coeffs.iter().map(|c| emb.apply(c)).collect();
        let roots = big.elements().filter(|z| big.is_zero(&lifted.iter().rev().fold(big.zero(), |a, c| big.add(&big.mul(&a, z), c)))).count();
        let fq = PolyRing::new(k.clone(), "x");
        prop_assert_eq!(squarefree_part_degree(&fq, &fq.from_coeffs(coeffs)), roots);
        let _ = big.inv(&big.one());
    }
}
