//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteFlatAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{factor, Poly, PolyRing};
use crate::report::AlgebraDocument;
use crate::ring::Ring;
use crate::scalars::{Dvr, DvrDescriptor, DvrScalar, ResidueScalar};

/// Number of instances of each construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mix {
    pub monogenic: usize,
    pub product: usize,
    pub table: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub backends: Vec<DvrDescriptor>,
    /// Inclusive bounds on the rank of every instance.
    pub degree_range: (usize, usize),
    /// Inclusive bounds on coefficient valuations.
    pub valuation_range: (u64, u64),
    pub mix: Mix,
}

impl CorpusSpec {
    pub fn count(&self) -> usize {
        self.mix.monogenic + self.mix.product + self.mix.table
    }

    /// Mix with the given total: three quarters monogenic, a tenth
    /// products, the rest tables.
    pub fn default_mix(count: usize) -> Mix {
        let product = count / 10;
        let table = (count * 3).div_ceil(20);
        Mix {
            monogenic: count - product - table,
            product,
            table,
        }
    }

    /// The 200-instance sweep over `Z_(2)`, `Z_(3)`, `Z_(5)`, `F_2[t]`,
    /// `F_4[t]` used by the test suite.
    pub fn standard(seed: u64) -> Self {
        CorpusSpec {
            seed,
            backends: vec![
                DvrDescriptor::Zp { p: 2 },
                DvrDescriptor::Zp { p: 3 },
                DvrDescriptor::Zp { p: 5 },
                DvrDescriptor::Kt { q: 2 },
                DvrDescriptor::Kt { q: 4 },
            ],
            degree_range: (1, 5),
            valuation_range: (0, 3),
            mix: Mix {
                monogenic: 150,
                product: 20,
                table: 30,
            },
        }
    }

    fn check(&self) -> Result<()> {
        let (d0, d1) = self.degree_range;
        let (v0, v1) = self.valuation_range;
        if self.backends.is_empty() && self.count() > 0 {
            return Err(Error::invalid("corpus needs at least one backend"));
        }
        if d0 == 0 || d0 > d1 {
            return Err(Error::invalid(format!("bad degree range [{d0}, {d1}]")));
        }
        if self.mix.product > 0 && d1 < 2 {
            return Err(Error::invalid("products need degree_range up to at least 2"));
        }
        if v0 > v1 {
            return Err(Error::invalid(format!("bad valuation range [{v0}, {v1}]")));
        }
        Ok(())
    }
}

/// `pi^v` times a random unit.
fn random_with_valuation<R: Rng>(dvr: &Dvr, v: u64, rng: &mut R) -> DvrScalar {
    let k = dvr.residue_field();
    let unit = dvr.add(
        &dvr.lift(&k.random_nonzero(rng)),
        &dvr.mul(&dvr.uniformizer(), &dvr.lift(&k.random(rng))),
    );
    dvr.mul(&dvr.pow(&dvr.uniformizer(), v as u128), &unit)
}

/// Random element of `R` of small height.
fn random_scalar<R: Rng>(dvr: &Dvr, rng: &mut R) -> DvrScalar {
    let k = dvr.residue_field();
    dvr.add(
        &dvr.lift(&k.random(rng)),
        &dvr.mul(&dvr.uniformizer(), &dvr.lift(&k.random(rng))),
    )
}

/// Monic polynomial of degree `n` whose lower coefficients have valuations
/// drawn from `range`.
pub fn random_monic<R: Rng>(dvr: &Dvr, n: usize, range: (u64, u64), rng: &mut R) -> Poly<DvrScalar> {
    let mut c: Vec<DvrScalar> = (0..n)
        .map(|_| random_with_valuation(dvr, rng.gen_range(range.0..=range.1), rng))
        .collect();
    c.push(dvr.one());
    PolyRing::new(dvr.clone(), "x").from_coeffs(c)
}

/// Random invertible matrix over `R`: a product of unitriangular factors
/// under a row permutation.
pub fn random_unimodular<R: Rng>(dvr: &Dvr, n: usize, rng: &mut R) -> Matrix<DvrScalar> {
    let mut lower = linalg::identity(dvr, n);
    let mut upper = linalg::identity(dvr, n);
    for i in 0..n {
        for j in 0..i {
            lower[i][j] = random_scalar(dvr, rng);
            upper[j][i] = random_scalar(dvr, rng);
        }
    }
    let mut m = linalg::mat_mul(dvr, &lower, &upper);
    m.shuffle(rng);
    m
}

fn backend_for(spec: &CorpusSpec, i: usize) -> Result<Dvr> {
    Dvr::new(spec.backends[i % spec.backends.len()].clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Monogenic,
    Product,
    Table,
}

fn instance(spec: &CorpusSpec, dvr: &Dvr, kind: Kind, rng: &mut ChaCha8Rng) -> Result<FiniteFlatAlgebra> {
    let (d0, d1) = spec.degree_range;
    let vr = spec.valuation_range;
    let mono = |n: usize, rng: &mut ChaCha8Rng| FiniteFlatAlgebra::from_monogenic(dvr, &random_monic(dvr, n, vr, rng));
    match kind {
        Kind::Monogenic => mono(rng.gen_range(d0..=d1), rng),
        Kind::Product => {
            let total = rng.gen_range(d0.max(2)..=d1);
            let n1 = rng.gen_range(1..total);
            FiniteFlatAlgebra::product(&mono(n1, rng)?, &mono(total - n1, rng)?)
        }
        Kind::Table => {
            let base = if rng.gen_bool(0.25) && d1 >= 2 {
                instance(spec, dvr, Kind::Product, rng)?
            } else {
                mono(rng.gen_range(d0..=d1), rng)?
            };
            let p = random_unimodular(dvr, base.rank(), rng);
            base.change_basis(&p)
        }
    }
}

/// Deterministic corpus: the same spec always yields the same documents.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<AlgebraDocument>> {
    spec.check()?;
    let mut kinds = Vec::with_capacity(spec.count());
    kinds.extend(std::iter::repeat_n(Kind::Monogenic, spec.mix.monogenic));
    kinds.extend(std::iter::repeat_n(Kind::Product, spec.mix.product));
    kinds.extend(std::iter::repeat_n(Kind::Table, spec.mix.table));
    let mut order_rng = ChaCha8Rng::seed_from_u64(spec.seed);
    kinds.shuffle(&mut order_rng);
    kinds
        .iter()
        .enumerate()
        .map(|(i, &kind)| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(i as u64 + 1);
            let dvr = backend_for(spec, i)?;
            Ok(AlgebraDocument::from_algebra(&instance(spec, &dvr, kind, &mut rng)?))
        })
        .collect()
}

/// Random monic irreducible polynomial of degree `r` over the residue field.
pub fn random_irreducible<R: Rng>(dvr: &Dvr, r: usize, rng: &mut R) -> Result<Poly<ResidueScalar>> {
    let k = dvr.residue_field();
    let ring = PolyRing::new(k.clone(), "x");
    for _ in 0..10_000 {
        let mut c: Vec<ResidueScalar> = (0..r).map(|_| k.random(rng)).collect();
        c.push(k.one());
        let g = ring.from_coeffs(c);
        if factor(&ring, &g)?.is_irreducible() {
            return Ok(g);
        }
    }
    Err(Error::capability(format!("no irreducible polynomial of degree {r} found")))
}

/// `A = R[X]/(G^s + pi H)` with `G` lifting a monic irreducible `g` of
/// degree `r`: its fiber `k[x]/(g^s)` is local.
pub fn local_instance<R: Rng>(dvr: &Dvr, g: &Poly<ResidueScalar>, s: usize, rng: &mut R) -> Result<FiniteFlatAlgebra> {
    let ring = PolyRing::new(dvr.clone(), "x");
    let lift = ring.from_coeffs(g.coeffs().iter().map(|c| dvr.lift(c)).collect());
    let n = g.degree().expect("nonzero") * s;
    let h = ring.from_coeffs((0..n).map(|_| random_scalar(dvr, rng)).collect());
    let f = ring.add(&ring.pow(&lift, s as u128), &ring.scale(&h, &dvr.uniformizer()));
    FiniteFlatAlgebra::from_monogenic(dvr, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::analyze_fiber;

    fn small(seed: u64) -> CorpusSpec {
        CorpusSpec {
            seed,
            backends: vec![DvrDescriptor::Zp { p: 3 }, DvrDescriptor::Kt { q: 4 }],
            degree_range: (1, 5),
            valuation_range: (0, 2),
            mix: Mix {
                monogenic: 6,
                product: 2,
                table: 2,
            },
        }
    }

    #[test]
    fn deterministic() {
        let a = generate_corpus(&small(42)).unwrap();
        assert_eq!(a, generate_corpus(&small(42)).unwrap());
        assert_eq!(a.len(), 10);
        assert_ne!(a, generate_corpus(&small(43)).unwrap());
    }

    #[test]
    fn shapes() {
        for doc in generate_corpus(&small(7)).unwrap() {
            let a = doc.build().unwrap();
            assert!((1..=5).contains(&a.rank()));
            assert!(a.validate().is_empty());
        }
        let mut bad = small(1);
        bad.degree_range = (3, 2);
        assert!(generate_corpus(&bad).is_err());
        let empty = CorpusSpec {
            mix: Mix {
                monogenic: 0,
                product: 0,
                table: 0,
            },
            ..small(1)
        };
        assert!(generate_corpus(&empty).unwrap().is_empty());
        assert_eq!(CorpusSpec::default_mix(200), Mix { monogenic: 150, product: 20, table: 30 });
    }

    #[test]
    fn unimodular_and_local() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let dvr = Dvr::power_series(4).unwrap();
        let p = random_unimodular(&dvr, 4, &mut rng);
        assert!(dvr.is_unit(&linalg::det_over_dvr(&dvr, &p)));
        let g = random_irreducible(&dvr, 2, &mut rng).unwrap();
        let a = local_instance(&dvr, &g, 2, &mut rng).unwrap();
        let r = analyze_fiber(&a.base_change_fiber()).unwrap();
        assert_eq!(r.factors.len(), 1);
        assert_eq!((r.factors[0].e, r.factors[0].residue_degree), (2, 2));
    }
}
