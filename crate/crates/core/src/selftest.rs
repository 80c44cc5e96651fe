//! Lemma-level property suites over seeded instances.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{FiniteFlatAlgebra, TableAlgebra};
use crate::corpus::{generate_corpus, local_instance, random_irreducible, random_monic, random_unimodular, CorpusSpec};
use crate::error::{Error, Result};
use crate::fiber::{analyze_fiber, fiber_trace_check, residue_image, FiberReport};
use crate::invariants::trace_profile;
use crate::poly::{squarefree_part_degree, Poly, PolyRing};
use crate::ring::Ring;
use crate::scalars::{Dvr, DvrDescriptor, FiniteField, ResidueField, ResidueScalar, Valuation};

/// Applicable instances each suite needs before it counts as passed.
pub const MIN_INSTANCES: usize = 100;

#[derive(Clone, Debug, Serialize)]
pub struct LemmaSuite {
    pub name: String,
    pub applicable: usize,
    pub skipped: usize,
    pub required: usize,
    pub failures: Vec<String>,
}

impl LemmaSuite {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.applicable >= self.required
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

fn tally(name: &str, required: usize, outcomes: Vec<Outcome>) -> LemmaSuite {
    let mut s = LemmaSuite {
        name: name.into(),
        applicable: 0,
        skipped: 0,
        required,
        failures: Vec::new(),
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Pass => s.applicable += 1,
            Outcome::Skip => s.skipped += 1,
            Outcome::Fail(m) => {
                s.applicable += 1;
                s.failures.push(format!("instance {i}: {m}"));
            }
        }
    }
    s
}

/// Capability limits skip an instance; anything else is a failure.
fn outcome(r: Result<Option<String>>) -> Outcome {
    match r {
        Ok(None) => Outcome::Pass,
        Ok(Some(m)) => Outcome::Fail(m),
        Err(Error::Capability(_)) => Outcome::Skip,
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn finite_backends() -> Vec<DvrDescriptor> {
    vec![
        DvrDescriptor::Zp { p: 2 },
        DvrDescriptor::Zp { p: 3 },
        DvrDescriptor::Zp { p: 5 },
        DvrDescriptor::Kt { q: 2 },
        DvrDescriptor::Kt { q: 4 },
        DvrDescriptor::Kt { q: 9 },
    ]
}

/// Monogenic, product and table instances over finite residue fields.
pub fn mixed_instances(seed: u64, count: usize) -> Result<Vec<FiniteFlatAlgebra>> {
    let spec = CorpusSpec {
        seed,
        backends: finite_backends(),
        degree_range: (1, 5),
        valuation_range: (0, 3),
        mix: CorpusSpec::default_mix(count),
    };
    generate_corpus(&spec)?.iter().map(|d| d.build()).collect()
}

/// Algebras with local fiber `k[x]/(g^s)`, including purely inseparable
/// `g = x^p - u` over `F_p(u)`.
pub fn local_instances(seed: u64, count: usize) -> Result<Vec<FiniteFlatAlgebra>> {
    let backends = [
        DvrDescriptor::Zp { p: 2 },
        DvrDescriptor::Zp { p: 3 },
        DvrDescriptor::Zp { p: 5 },
        DvrDescriptor::Kt { q: 2 },
        DvrDescriptor::Kt { q: 4 },
        DvrDescriptor::Kut { p: 2 },
        DvrDescriptor::Kut { p: 3 },
    ];
    (0..count)
        .map(|i| {
            let mut rng = rng_for(seed, i as u64 + 1);
            let dvr = Dvr::new(backends[i % backends.len()].clone())?;
            let k = dvr.residue_field();
            let (g, cap) = match k {
                ResidueField::Function(_) if rng.gen_bool(0.5) => {
                    let p = k.characteristic() as usize;
                    let mut c = vec![k.zero(); p + 1];
                    c[0] = k.neg(&k.u().expect("function field"));
                    c[p] = k.one();
                    (PolyRing::new(k.clone(), "x").from_coeffs(c), 4)
                }
                ResidueField::Function(_) => (random_irreducible(&dvr, rng.gen_range(1..=2), &mut rng)?, 4),
                ResidueField::Finite(_) => (random_irreducible(&dvr, rng.gen_range(1..=3), &mut rng)?, 6),
            };
            let r = g.degree().expect("nonzero");
            let s = rng.gen_range(1..=(cap / r).max(1));
            local_instance(&dvr, &g, s, &mut rng)
        })
        .collect()
}

fn residue_trace(k: &ResidueField, g: &Poly<ResidueScalar>, c: &Poly<ResidueScalar>) -> Result<ResidueScalar> {
    let field = TableAlgebra::monogenic(k, g)?;
    let coords: Vec<ResidueScalar> = (0..field.rank()).map(|i| c.coeff(i).cloned().unwrap_or_else(|| k.zero())).collect();
    field.trace(&coords)
}

/// `tr_{A/R}(x_j) mod pi = sum_i e_i tr_{k(p_i)/k}(x_j mod p_i)` for every
/// basis element, plus the per-block identity.
fn check_trace_formula(a: &FiniteFlatAlgebra) -> Result<Option<String>> {
    let dvr = a.dvr();
    let b = a.base_change_fiber();
    let k = b.field();
    let report = analyze_fiber(&b)?;
    for (i, factor) in report.factors.iter().enumerate() {
        if !fiber_trace_check(b.table(), factor)? {
            return Ok(Some(format!("block identity fails on factor {i}")));
        }
    }
    for j in 0..a.rank() {
        let lhs = dvr.reduce(&a.trace(&a.table().basis(j))?);
        let mut rhs = k.zero();
        for factor in &report.factors {
            let image = residue_image(b.table(), factor, &b.table().basis(j))?;
            let t = residue_trace(k, &factor.residue.poly, &image)?;
            rhs = k.add(&rhs, &k.mul(&k.from_int(factor.e as i64), &t));
        }
        if lhs != rhs {
            return Ok(Some(format!("x_{j}: tr reduces to {} but the factor sum is {}", k.render(&lhs), k.render(&rhs))));
        }
    }
    Ok(None)
}

/// `r = sep p^m` and `h = e p^m`, so `gcd(h,p) = 1` exactly when `e` is
/// prime to `p` and `m = 0`.
fn check_tame_h(report: &FiberReport, p: u64) -> Option<String> {
    for (i, f) in report.factors.iter().enumerate() {
        let pm = (p as usize).pow(f.inseparable_exponent);
        if f.residue_degree != f.separable_degree * pm || f.h != f.e * pm {
            return Some(format!("factor {i}: r {} sep {} m {} e {} h {}", f.residue_degree, f.separable_degree, f.inseparable_exponent, f.e, f.h));
        }
        let coprime = f.h.gcd(&(p as usize)) == 1;
        let expected = f.e.gcd(&(p as usize)) == 1 && f.inseparable_exponent == 0;
        if f.combined != coprime || coprime != expected || f.combined != (f.tame && f.separable) {
            return Some(format!("factor {i}: combined flag {} with e {} h {}", f.combined, f.e, f.h));
        }
    }
    None
}

fn local_report(a: &FiniteFlatAlgebra) -> Result<FiberReport> {
    let r = analyze_fiber(&a.base_change_fiber())?;
    if r.factors.len() != 1 {
        return Err(Error::internal(format!("local instance has {} fiber factors", r.factors.len())));
    }
    Ok(r)
}

/// Elements reducing into the fiber's maximal ideal have trace in `m_R`.
fn check_trace_kernel(a: &FiniteFlatAlgebra, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let dvr = a.dvr();
    let k = dvr.residue_field();
    let report = local_report(a)?;
    let nil = &report.factors[0].block.nilradical;
    for trial in 0..4 {
        let mut x = vec![dvr.zero(); a.rank()];
        for n in nil {
            let c = k.random(rng);
            for (xi, ni) in x.iter_mut().zip(n) {
                *xi = dvr.add(xi, &dvr.lift(&k.mul(&c, ni)));
            }
        }
        for xi in x.iter_mut() {
            let noise = dvr.lift(&k.random(rng));
            *xi = dvr.add(xi, &dvr.mul(&dvr.uniformizer(), &noise));
        }
        let t = a.trace(&x)?;
        if dvr.is_unit(&t) {
            return Ok(Some(format!("trial {trial}: trace {} is a unit", dvr.render(&t))));
        }
    }
    Ok(None)
}

/// For local `A`, `tr` is onto `R` exactly when `gcd(h, p) = 1`.
fn check_surjectivity(a: &FiniteFlatAlgebra) -> Result<Option<String>> {
    let dvr = a.dvr();
    let report = local_report(a)?;
    let f = &report.factors[0];
    let onto = (0..a.rank()).any(|j| a.trace(&a.table().basis(j)).map(|t| dvr.is_unit(&t)).unwrap_or(false));
    let coprime = f.h.gcd(&(dvr.residue_char() as usize)) == 1;
    Ok((onto != coprime).then(|| format!("trace onto {onto}, h {}", f.h)))
}

fn finite_residue(dvr: &Dvr) -> Option<&FiniteField> {
    dvr.residue_field().as_finite()
}

fn to_fq(p: &Poly<ResidueScalar>, field: &FiniteField) -> Poly<crate::scalars::FqElem> {
    PolyRing::new(field.clone(), "x").from_coeffs(
        p.coeffs()
            .iter()
            .map(|c| match c {
                ResidueScalar::Finite(a) => a.clone(),
                ResidueScalar::Function(_) => unreachable!("finite residue field"),
            })
            .collect(),
    )
}

/// Geometric points three ways: separable degrees, distinct roots of the
/// reduction, and factors after splitting the residue fields.
fn check_geometric(dvr: &Dvr, f: &Poly<crate::scalars::DvrScalar>) -> Result<Option<String>> {
    let a = FiniteFlatAlgebra::from_monogenic(dvr, f)?;
    let b = a.base_change_fiber();
    let report = analyze_fiber(&b)?;
    let field = finite_residue(dvr).expect("finite residue field");
    let fbar = PolyRing::new(dvr.clone(), "x").map(f, &PolyRing::new(dvr.residue_field().clone(), "x"), |c| dvr.reduce(c));
    let roots = squarefree_part_degree(&PolyRing::new(field.clone(), "x"), &to_fq(&fbar, field));
    let m = report.factors.iter().fold(1usize, |acc, x| acc.lcm(&x.residue_degree));
    let big = FiniteField::new(field.p(), field.degree() * m)?;
    let split = analyze_fiber(&b.extend_scalars(&field.embedding_into(&big)?)?)?;
    let n = report.geometric_point_count;
    Ok((n != roots || n != split.factors.len())
        .then(|| format!("separable degrees {n}, distinct roots {roots}, factors over F_(q^{m}) {}", split.factors.len())))
}

/// Per-factor `h` (and `e`) survive `F_q -> F_(q^m)`. Extended factors are
/// matched to originals by `e' e_i = e'`.
fn check_h_extension(a: &FiniteFlatAlgebra, m: usize) -> Result<Option<String>> {
    let b = a.base_change_fiber();
    let field = finite_residue(a.dvr()).expect("finite residue field");
    let report = analyze_fiber(&b)?;
    let emb = field.embedding_into(&FiniteField::new(field.p(), field.degree() * m)?)?;
    let ext = b.extend_scalars(&emb)?;
    let ext_report = analyze_fiber(&ext)?;
    let lift = |v: &[ResidueScalar]| -> Vec<ResidueScalar> {
        v.iter()
            .map(|x| match x {
                ResidueScalar::Finite(c) => ResidueScalar::Finite(emb.apply(c)),
                ResidueScalar::Function(_) => unreachable!("finite residue field"),
            })
            .collect()
    };
    let originals: Vec<Vec<ResidueScalar>> = report.factors.iter().map(|f| lift(&f.block.idempotent)).collect();
    for (j, g) in ext_report.factors.iter().enumerate() {
        let eps = &g.block.idempotent;
        let owners: Vec<usize> = (0..originals.len()).filter(|&i| ext.table().mul(eps, &originals[i]) == *eps).collect();
        let [i] = owners[..] else {
            return Ok(Some(format!("extended factor {j} lies over {} original factors", owners.len())));
        };
        let f = &report.factors[i];
        if (f.h, f.e) != (g.h, g.e) {
            return Ok(Some(format!("m = {m}: factor {i} has (h, e) = ({}, {}) but extended factor {j} has ({}, {})", f.h, f.e, g.h, g.e)));
        }
    }
    Ok(None)
}

fn f_of(a: &FiniteFlatAlgebra) -> Result<Valuation> {
    Ok(trace_profile(a)?.f)
}

pub fn trace_formula_suite(seed: u64, count: usize) -> Result<LemmaSuite> {
    let mut inst = mixed_instances(seed, count / 2)?;
    inst.extend(local_instances(seed ^ 1, count - count / 2)?);
    Ok(tally("fiber trace formula", MIN_INSTANCES.min(count), inst.par_iter().map(|a| outcome(check_trace_formula(a))).collect()))
}

pub fn tame_h_suite(seed: u64, count: usize) -> Result<LemmaSuite> {
    let mut inst = mixed_instances(seed, count / 2)?;
    inst.extend(local_instances(seed ^ 2, count - count / 2)?);
    let out = inst
        .par_iter()
        .map(|a| outcome(analyze_fiber(&a.base_change_fiber()).map(|r| check_tame_h(&r, a.dvr().residue_char()))))
        .collect();
    Ok(tally("tameness and h", MIN_INSTANCES.min(count), out))
}

pub fn trace_kernel_suite(seed: u64, count: usize) -> Result<LemmaSuite> {
    let inst = local_instances(seed ^ 3, count)?;
    let out = inst
        .par_iter()
        .enumerate()
        .map(|(i, a)| outcome(check_trace_kernel(a, &mut rng_for(seed ^ 3, 1_000_000 + i as u64))))
        .collect();
    Ok(tally("kernel of the trace", MIN_INSTANCES.min(count), out))
}

pub fn surjectivity_suite(seed: u64, count: usize) -> Result<LemmaSuite> {
    let inst = local_instances(seed ^ 4, count)?;
    Ok(tally("trace surjectivity", MIN_INSTANCES.min(count), inst.par_iter().map(|a| outcome(check_surjectivity(a))).collect()))
}

pub fn geometric_fiber_suite(seed: u64, count: usize) -> Result<LemmaSuite> {
    let backends = finite_backends();
    let out = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed ^ 5, i as u64 + 1);
            outcome(Dvr::new(backends[i % backends.len()].clone()).and_then(|dvr| {
                let f = random_monic(&dvr, rng.gen_range(1..=5), (0, 2), &mut rng);
                check_geometric(&dvr, &f)
            }))
        })
        .collect();
    Ok(tally("geometric fiber", MIN_INSTANCES.min(count), out))
}

pub fn h_extension_suite(seed: u64, count: usize) -> Result<LemmaSuite> {
    let spec = CorpusSpec {
        seed: seed ^ 6,
        backends: vec![DvrDescriptor::Kt { q: 2 }, DvrDescriptor::Kt { q: 3 }, DvrDescriptor::Kt { q: 4 }],
        degree_range: (1, 4),
        valuation_range: (0, 2),
        mix: CorpusSpec::default_mix(count),
    };
    let inst: Vec<FiniteFlatAlgebra> = generate_corpus(&spec)?.iter().map(|d| d.build()).collect::<Result<_>>()?;
    let out = inst
        .par_iter()
        .map(|a| {
            outcome((|| {
                for m in [2, 3] {
                    if let Some(msg) = check_h_extension(a, m)? {
                        return Ok(Some(msg));
                    }
                }
                Ok(None)
            })())
        })
        .collect();
    Ok(tally("h under residue extension", 50.min(count), out))
}

/// `f = sum of Smith exponents`, and `f = 0 <=> count = rk <=> all
/// exponents vanish`.
pub fn smith_and_etale_suite(seed: u64, count: usize) -> Result<LemmaSuite> {
    let inst = mixed_instances(seed ^ 7, count)?;
    let out = inst
        .par_iter()
        .map(|a| {
            outcome((|| {
                let t = trace_profile(a)?;
                let fib = analyze_fiber(&a.base_change_fiber())?;
                if let Valuation::Finite(f) = t.f {
                    if t.smith.length() != f {
                        return Ok(Some(format!("f {f} but exponents {:?}", t.smith.exponents)));
                    }
                }
                let etale = t.f == Valuation::Finite(0);
                let full = fib.geometric_point_count == a.rank();
                let zeros = t.smith.rank_deficiency == 0 && t.smith.exponents.iter().all(|&e| e == 0);
                Ok((etale != full || full != zeros).then(|| format!("etale {etale}, count = rk {full}, zero exponents {zeros}")))
            })())
        })
        .collect();
    Ok(tally("Smith length and etale triple", MIN_INSTANCES.min(count), out))
}

/// `f` is unchanged by unimodular basis changes.
pub fn basis_invariance_suite(seed: u64, instances: usize, changes: usize) -> Result<LemmaSuite> {
    let inst = mixed_instances(seed ^ 8, instances)?;
    let out = inst
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let mut rng = rng_for(seed ^ 8, 1_000_000 + i as u64);
            outcome((|| {
                let f = f_of(a)?;
                for c in 0..changes {
                    let p = random_unimodular(a.dvr(), a.rank(), &mut rng);
                    let g = f_of(&a.change_basis(&p)?)?;
                    if g != f {
                        return Ok(Some(format!("change {c}: f {f} became {g}")));
                    }
                }
                Ok(None)
            })())
        })
        .collect();
    Ok(tally("f under basis change", instances, out))
}

/// `f(A x A') = f(A) + f(A')`.
pub fn additivity_suite(seed: u64, pairs: usize) -> Result<LemmaSuite> {
    let backends = finite_backends();
    let out = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed ^ 9, i as u64 + 1);
            outcome((|| {
                let dvr = Dvr::new(backends[i % backends.len()].clone())?;
                let a = FiniteFlatAlgebra::from_monogenic(&dvr, &random_monic(&dvr, rng.gen_range(1..=3), (0, 3), &mut rng))?;
                let b = FiniteFlatAlgebra::from_monogenic(&dvr, &random_monic(&dvr, rng.gen_range(1..=3), (0, 3), &mut rng))?;
                let (fa, fb, fab) = (f_of(&a)?, f_of(&b)?, f_of(&FiniteFlatAlgebra::product(&a, &b)?)?);
                let sum = match (fa, fb) {
                    (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x + y),
                    _ => Valuation::Infinite,
                };
                Ok((fab != sum).then(|| format!("f(A) {fa}, f(A') {fb}, f(A x A') {fab}")))
            })())
        })
        .collect();
    Ok(tally("product additivity", pairs, out))
}

/// Every suite at its standard size.
pub fn run_selftest(seed: u64) -> Result<Vec<LemmaSuite>> {
    Ok(vec![
        trace_formula_suite(seed, 120)?,
        tame_h_suite(seed, 120)?,
        trace_kernel_suite(seed, 120)?,
        surjectivity_suite(seed, 120)?,
        geometric_fiber_suite(seed, 100)?,
        h_extension_suite(seed, 50)?,
        smith_and_etale_suite(seed, 100)?,
        basis_invariance_suite(seed, 10, 20)?,
        additivity_suite(seed, 25)?,
    ])
}
