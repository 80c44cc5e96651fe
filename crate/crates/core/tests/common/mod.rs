#![allow(dead_code)]

use dvrtrace::corpus::{random_monic, random_unimodular};
use dvrtrace::{Dvr, FiniteFlatAlgebra};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FINITE: [&str; 6] = ["zp:2", "zp:3", "zp:5", "kt:2", "kt:3", "kt:4"];
pub const ALL: [&str; 8] = ["zp:2", "zp:3", "zp:5", "kt:2", "kt:3", "kt:4", "kut:2", "kut:3"];

pub fn dvr(name: &str) -> Dvr {
    Dvr::new(name.parse().unwrap()).unwrap()
}

/// Monogenic, product or basis-changed algebra of rank at most `max_rank`.
pub fn build(name: &str, seed: u64, max_rank: usize) -> FiniteFlatAlgebra {
    let d = dvr(name);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mono = |n: usize, rng: &mut ChaCha8Rng| FiniteFlatAlgebra::from_monogenic(&d, &random_monic(&d, n, (0, 3), rng)).unwrap();
    match rng.gen_range(0..4) {
        0 if max_rank >= 2 => {
            let n1 = rng.gen_range(1..max_rank);
            let n2 = rng.gen_range(1..=max_rank - n1);
            FiniteFlatAlgebra::product(&mono(n1, &mut rng), &mono(n2, &mut rng)).unwrap()
        }
        1 if d.residue_field().is_perfect() => {
            let a = mono(rng.gen_range(1..=max_rank), &mut rng);
            let p = random_unimodular(&d, a.rank(), &mut rng);
            a.change_basis(&p).unwrap()
        }
        _ => mono(rng.gen_range(1..=max_rank), &mut rng),
    }
}

pub fn monogenic(name: &str, seed: u64, max_rank: usize) -> FiniteFlatAlgebra {
    let d = dvr(name);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FiniteFlatAlgebra::from_monogenic(&d, &random_monic(&d, rng.gen_range(1..=max_rank), (0, 3), &mut rng)).unwrap()
}

pub fn finite_backend() -> impl Strategy<Value = &'static str> {
    prop::sample::select(&FINITE[..])
}

pub fn any_backend() -> impl Strategy<Value = &'static str> {
    prop::sample::select(&ALL[..])
}
