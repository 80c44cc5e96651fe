//! Local structure of the closed fiber `B = A (x) k`.
//!
//! `B` is split into local blocks `e_i B` by orthogonal idempotents. Each
//! block carries its nilradical and a presentation `k[T]/(g)` of its
//! residue field, from which `e`, the separable degree and `h` follow.

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{FiberAlgebra, FiberProvenance, TableAlgebra};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{factor, separability_profile, Poly, PolyRing};
use crate::ring::Ring;
use crate::scalars::{ResidueField, ResidueScalar};

/// Random combinations tried after the structured candidates.
pub const RANDOM_CANDIDATES: usize = 512;
const CANDIDATE_SEED: u64 = 0x0f1b_e55e;

type V = Vec<ResidueScalar>;

/// `k[T]/(g)` together with an element of the block mapping to `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResiduePresentation {
    pub poly: Poly<ResidueScalar>,
    pub generator: V,
}

/// One block `e_i B` of the fiber, before field data is attached.
#[derive(Clone, Debug)]
pub struct Block {
    pub idempotent: V,
    pub basis: Vec<V>,
    pub nilradical: Vec<V>,
    pub residue: Option<ResiduePresentation>,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A local factor of the fiber with its ramification data.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub block: Block,
    pub residue: ResiduePresentation,
    pub dim: usize,
    pub residue_degree: usize,
    pub separable_degree: usize,
    pub inseparable_exponent: u32,
    pub e: usize,
    pub h: usize,
    pub tame: bool,
    pub separable: bool,
    pub combined: bool,
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub factors: Vec<LocalFactor>,
    pub rank: usize,
    pub geometric_point_count: usize,
    pub tame: bool,
    pub separable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorSummary {
    pub dim: usize,
    pub e: usize,
    pub residue_degree: usize,
    pub separable_degree: usize,
    pub h: usize,
    pub tame: bool,
    pub separable: bool,
    pub residue_poly: String,
}

impl FiberReport {
    pub fn summaries(&self, field: &ResidueField) -> Vec<FactorSummary> {
        let t = PolyRing::new(field.clone(), "T");
        self.factors
            .iter()
            .map(|f| FactorSummary {
                dim: f.dim,
                e: f.e,
                residue_degree: f.residue_degree,
                separable_degree: f.separable_degree,
                h: f.h,
                tame: f.tame,
                separable: f.separable,
                residue_poly: t.display(&f.residue.poly),
            })
            .collect()
    }
}

fn t_ring(field: &ResidueField) -> PolyRing<ResidueField> {
    PolyRing::new(field.clone(), "T")
}

/// `sum c_k y^k` with `y^0 = e`.
fn eval_in_block(tab: &TableAlgebra<ResidueField>, c: &Poly<ResidueScalar>, y: &[ResidueScalar], e: &[ResidueScalar]) -> V {
    let k = tab.ring();
    let mut acc = tab.zero();
    for coeff in c.coeffs().iter().rev() {
        acc = tab.mul(&acc, y);
        acc = linalg::vec_add(k, &acc, &linalg::vec_scale(k, coeff, e));
    }
    acc
}

/// Orthogonal idempotents for a factorization `m = prod P_i` into pairwise
/// coprime prime powers, as polynomials reduced mod `m`.
fn crt_idempotents(ring: &PolyRing<ResidueField>, m: &Poly<ResidueScalar>, parts: &[Poly<ResidueScalar>]) -> Vec<Poly<ResidueScalar>> {
    parts
        .iter()
        .map(|p| {
            let q = ring.exact_div(m, p).expect("part divides");
            let (g, _s, t) = ring.xgcd(p, &q);
            debug_assert_eq!(g, ring.one());
            ring.rem(&ring.mul(&t, &q), m)
        })
        .collect()
}

fn block_from_idempotent(tab: &TableAlgebra<ResidueField>, e: V) -> Block {
    let k = tab.ring();
    let images: Vec<V> = (0..tab.rank()).map(|i| tab.mul(&e, &tab.basis(i))).collect();
    Block {
        basis: linalg::span_basis(k, &images),
        idempotent: e,
        nilradical: Vec::new(),
        residue: None,
    }
}

/// Nilradical of a block over a finite field: the kernel of the
/// `F_q`-linear map `b -> b^(q^k)` with `q^k >= dim`.
pub fn nilradical(tab: &TableAlgebra<ResidueField>, block: &Block) -> Result<Vec<V>> {
    let k = tab.ring();
    let q = match k {
        ResidueField::Finite(f) => f.order(),
        ResidueField::Function(_) => {
            return Err(Error::capability(
                "nilradical of a structure-constant algebra over F_p(u) is not supported",
            ))
        }
    };
    let d = block.dim() as u128;
    let mut power = q;
    while power < d {
        power *= q;
    }
    let images: Vec<V> = block.basis.iter().map(|b| tab.pow(b, power)).collect();
    let m = linalg::from_columns(&images);
    let kernel = linalg::nullspace(k, &m, block.dim());
    Ok(kernel
        .iter()
        .map(|c| {
            c.iter()
                .zip(&block.basis)
                .fold(tab.zero(), |acc, (ci, b)| linalg::vec_add(k, &acc, &linalg::vec_scale(k, ci, b)))
        })
        .collect())
}

/// Structured candidates, then seeded random combinations.
fn candidates(tab: &TableAlgebra<ResidueField>) -> Vec<V> {
    let n = tab.rank();
    let k = tab.ring();
    let mut out = vec![tab.unit().to_vec()];
    out.extend((0..n).map(|i| tab.basis(i)));
    for i in 0..n {
        for j in i + 1..n {
            out.push(linalg::vec_add(k, &tab.basis(i), &tab.basis(j)));
        }
    }
    for i in 0..n {
        for j in i..n {
            out.push(tab.mul(&tab.basis(i), &tab.basis(j)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CANDIDATE_SEED);
    out.extend((0..RANDOM_CANDIDATES).map(|_| (0..n).map(|_| k.random(&mut rng)).collect()));
    out
}

enum Probe {
    Split(Vec<V>),
    Local(ResiduePresentation),
    Inconclusive,
}

/// Examines `a e` in the block: a minimal polynomial with coprime factors
/// splits the block; a prime power `g^s` with `deg g` equal to the residue
/// dimension certifies the block as local with residue field `k[T]/(g)`.
fn probe(tab: &TableAlgebra<ResidueField>, block: &Block, a: &[ResidueScalar]) -> Result<Probe> {
    let ring = t_ring(tab.ring());
    let e = &block.idempotent;
    let y = tab.mul(a, e);
    let m = tab.min_poly_relative(&y, e);
    let fl = factor(&ring, &m)?;
    if fl.factors.len() > 1 {
        let parts: Vec<_> = fl.factors.iter().map(|(g, k)| ring.pow(g, *k as u128)).collect();
        let idems = crt_idempotents(&ring, &m, &parts)
            .iter()
            .map(|c| eval_in_block(tab, c, &y, e))
            .collect();
        return Ok(Probe::Split(idems));
    }
    let g = &fl.factors[0].0;
    let r = block.dim() - block.nilradical.len();
    if g.degree() == Some(r) {
        Ok(Probe::Local(ResiduePresentation {
            poly: g.clone(),
            generator: y,
        }))
    } else {
        Ok(Probe::Inconclusive)
    }
}

/// Presentation of the residue field of a local block by a primitive
/// element from the candidate sequence.
pub fn residue_field(tab: &TableAlgebra<ResidueField>, block: &Block) -> Result<ResiduePresentation> {
    for a in candidates(tab) {
        match probe(tab, block, &a)? {
            Probe::Local(p) => return Ok(p),
            Probe::Split(_) => return Err(Error::internal("block presented as local is not local")),
            Probe::Inconclusive => {}
        }
    }
    Err(Error::capability(format!(
        "no primitive element among {} candidates",
        candidates(tab).len()
    )))
}

fn decompose_table(tab: &TableAlgebra<ResidueField>) -> Result<Vec<Block>> {
    if !tab.ring().is_perfect() {
        return Err(Error::capability(
            "decomposition of structure-constant algebras over F_p(u) is not supported; use a monogenic presentation",
        ));
    }
    let mut open = vec![block_from_idempotent(tab, tab.unit().to_vec())];
    open[0].nilradical = nilradical(tab, &open[0])?;
    let mut done = Vec::new();
    let cands = candidates(tab);
    for a in &cands {
        let mut next = Vec::new();
        for block in open {
            match probe(tab, &block, a)? {
                Probe::Split(idems) => {
                    for e in idems {
                        let mut b = block_from_idempotent(tab, e);
                        b.nilradical = nilradical(tab, &b)?;
                        next.push(b);
                    }
                }
                Probe::Local(p) => done.push(Block {
                    residue: Some(p),
                    ..block
                }),
                Probe::Inconclusive => next.push(block),
            }
        }
        open = next;
        if open.is_empty() {
            return Ok(done);
        }
    }
    Err(Error::capability(format!(
        "locality of {} block(s) not certified within {} candidate elements",
        open.len(),
        cands.len()
    )))
}

fn decompose_monogenic(tab: &TableAlgebra<ResidueField>, f: &Poly<ResidueScalar>) -> Result<Vec<Block>> {
    let k = tab.ring();
    let ring = PolyRing::new(k.clone(), "x");
    let n = tab.rank();
    let coords = |p: &Poly<ResidueScalar>| -> V {
        let r = ring.rem(p, f);
        (0..n).map(|i| ring.coeff_or_zero(&r, i)).collect()
    };
    let fl = factor(&ring, f)?;
    let parts: Vec<_> = fl.factors.iter().map(|(g, e)| ring.pow(g, *e as u128)).collect();
    let idems = crt_idempotents(&ring, f, &parts);
    Ok(fl
        .factors
        .iter()
        .zip(parts.iter().zip(idems))
        .map(|((g, _), (part, eps))| {
            let d = part.degree().expect("nonzero");
            let r = g.degree().expect("nonzero");
            let shifted = |base: &Poly<ResidueScalar>, j: usize| coords(&ring.mul(base, &ring.monomial(k.one(), j)));
            Block {
                idempotent: coords(&eps),
                basis: (0..d).map(|j| shifted(&eps, j)).collect(),
                nilradical: (0..d - r).map(|j| shifted(&ring.mul(&eps, g), j)).collect(),
                residue: Some(ResiduePresentation {
                    poly: g.clone(),
                    generator: shifted(&eps, 1),
                }),
            }
        })
        .collect())
}

fn pad(v: &[ResidueScalar], offset: usize, total: usize, k: &ResidueField) -> V {
    let mut out = vec![k.zero(); total];
    out[offset..offset + v.len()].clone_from_slice(v);
    out
}

/// Splits the fiber into local blocks.
pub fn decompose_local(b: &FiberAlgebra) -> Result<Vec<Block>> {
    let tab = b.table();
    let blocks = match b.provenance() {
        FiberProvenance::Monogenic(f) => decompose_monogenic(tab, f)?,
        FiberProvenance::Product(parts) => {
            let k = b.field();
            let total = b.rank();
            let mut offset = 0;
            let mut out = Vec::new();
            for part in parts {
                let p = |v: &V| pad(v, offset, total, k);
                for blk in decompose_local(part)? {
                    out.push(Block {
                        idempotent: p(&blk.idempotent),
                        basis: blk.basis.iter().map(p).collect(),
                        nilradical: blk.nilradical.iter().map(p).collect(),
                        residue: blk.residue.map(|r| ResiduePresentation {
                            poly: r.poly,
                            generator: p(&r.generator),
                        }),
                    });
                }
                offset += part.rank();
            }
            out
        }
        FiberProvenance::Table => decompose_table(tab)?,
    };
    check_idempotents(tab, &blocks)?;
    Ok(blocks)
}

fn check_idempotents(tab: &TableAlgebra<ResidueField>, blocks: &[Block]) -> Result<()> {
    let k = tab.ring();
    let sum = blocks
        .iter()
        .fold(tab.zero(), |acc, b| linalg::vec_add(k, &acc, &b.idempotent));
    if sum != tab.unit() {
        return Err(Error::internal("idempotents do not sum to 1"));
    }
    for (i, a) in blocks.iter().enumerate() {
        for (j, b) in blocks.iter().enumerate() {
            let prod = tab.mul(&a.idempotent, &b.idempotent);
            let expected = if i == j { a.idempotent.clone() } else { tab.zero() };
            if prod != expected {
                return Err(Error::internal(format!("idempotents {i},{j} are not orthogonal idempotents")));
            }
        }
    }
    let dims: usize = blocks.iter().map(Block::dim).sum();
    if dims != tab.rank() {
        return Err(Error::internal("block dimensions do not add up to the rank"));
    }
    Ok(())
}

/// `e = dim / [k(p):k]`.
pub fn ramification_index(dim: usize, residue_degree: usize) -> Result<usize> {
    if residue_degree == 0 || !dim.is_multiple_of(residue_degree) {
        return Err(Error::internal(format!(
            "block dimension {dim} is not a multiple of the residue degree {residue_degree}"
        )));
    }
    Ok(dim / residue_degree)
}

/// `h = e [k(p):F]` with `F` the separable closure of `k` in `k(p)`.
pub fn h_invariant(e: usize, residue_degree: usize, separable_degree: usize) -> usize {
    e * (residue_degree / separable_degree)
}

/// `(tame, separable, combined)` for one factor in residue characteristic `p`.
pub fn is_tame_and_separable(factor: &LocalFactor, p: u64) -> (bool, bool, bool) {
    let p = p as usize;
    (
        factor.e.gcd(&p) == 1,
        factor.residue_degree == factor.separable_degree,
        factor.h.gcd(&p) == 1,
    )
}

fn complete(field: &ResidueField, block: Block, residue: ResiduePresentation) -> Result<LocalFactor> {
    let dim = block.dim();
    let residue_degree = residue.poly.degree().expect("nonzero");
    let e = ramification_index(dim, residue_degree)?;
    let profile = separability_profile(&t_ring(field), &residue.poly)?;
    let separable_degree = profile.separable_degree();
    if !residue_degree.is_multiple_of(separable_degree) {
        return Err(Error::internal("separable degree does not divide the residue degree"));
    }
    let mut out = LocalFactor {
        h: h_invariant(e, residue_degree, separable_degree),
        block,
        residue,
        dim,
        residue_degree,
        separable_degree,
        inseparable_exponent: profile.m,
        e,
        tame: false,
        separable: false,
        combined: false,
    };
    let (tame, separable, combined) = is_tame_and_separable(&out, field.characteristic());
    if combined != (tame && separable) {
        return Err(Error::internal(format!(
            "gcd(h, p) = 1 disagrees with tame and separable (e = {}, h = {})",
            out.e, out.h
        )));
    }
    out.tame = tame;
    out.separable = separable;
    out.combined = combined;
    Ok(out)
}

/// Full local analysis of the fiber.
pub fn analyze_fiber(b: &FiberAlgebra) -> Result<FiberReport> {
    let blocks = decompose_local(b)?;
    let mut factors = Vec::new();
    for block in blocks {
        let residue = match &block.residue {
            Some(r) => r.clone(),
            None => residue_field(b.table(), &block)?,
        };
        factors.push(complete(b.field(), block, residue)?);
    }
    Ok(FiberReport {
        rank: b.rank(),
        geometric_point_count: geometric_point_count(&factors),
        tame: factors.iter().all(|f| f.tame),
        separable: factors.iter().all(|f| f.separable),
        factors,
    })
}

/// `|Spec(B (x) kbar)| = sum [F_p : k]`.
pub fn geometric_point_count(factors: &[LocalFactor]) -> usize {
    factors.iter().map(|f| f.separable_degree).sum()
}

/// Coordinates of the image of `b` in `k(p) = k[T]/(g)`: a polynomial of
/// degree `< deg g`. `b` is taken modulo the kernel `(1 - e)B + N`.
pub fn residue_image(tab: &TableAlgebra<ResidueField>, factor: &LocalFactor, b: &[ResidueScalar]) -> Result<Poly<ResidueScalar>> {
    let k = tab.ring();
    let e = &factor.block.idempotent;
    let r = factor.residue_degree;
    let mut cols = vec![e.clone()];
    for _ in 1..r {
        cols.push(tab.mul(cols.last().expect("nonempty"), &factor.residue.generator));
    }
    cols.extend(factor.block.nilradical.iter().cloned());
    let target = tab.mul(b, e);
    let c = linalg::coordinates(k, &cols, &target)
        .ok_or_else(|| Error::internal("element of the block outside span of generator powers and nilradical"))?;
    Ok(t_ring(k).from_coeffs(c[..r].to_vec()))
}

/// Trace of `c(T)` in `k[T]/(g)`.
fn residue_trace(k: &ResidueField, g: &Poly<ResidueScalar>, c: &Poly<ResidueScalar>) -> Result<ResidueScalar> {
    let field_alg = TableAlgebra::monogenic(k, g)?;
    let r = field_alg.rank();
    let coords: V = (0..r).map(|i| t_ring(k).coeff_or_zero(c, i)).collect();
    field_alg.trace(&coords)
}

/// Trace of multiplication by `b` on the block `e B`.
fn block_trace(tab: &TableAlgebra<ResidueField>, block: &Block, b: &[ResidueScalar]) -> Result<ResidueScalar> {
    let k = tab.ring();
    let mut tr = k.zero();
    for (j, bj) in block.basis.iter().enumerate() {
        let c = linalg::coordinates(k, &block.basis, &tab.mul(b, bj))
            .ok_or_else(|| Error::internal("block is not an ideal"))?;
        tr = k.add(&tr, &c[j]);
    }
    Ok(tr)
}

/// Checks `tr_{B_i/k}(b) = e tr_{k(p)/k}(pi(b))` on every basis element of
/// the block.
pub fn fiber_trace_check(tab: &TableAlgebra<ResidueField>, factor: &LocalFactor) -> Result<bool> {
    let k = tab.ring();
    let e = k.from_int(factor.e as i64);
    for b in &factor.block.basis {
        let lhs = block_trace(tab, &factor.block, b)?;
        let image = residue_image(tab, factor, b)?;
        let rhs = k.mul(&e, &residue_trace(k, &factor.residue.poly, &image)?);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A basis of `ker(B -> k(p))` for the given factor.
pub fn residue_kernel(tab: &TableAlgebra<ResidueField>, factor: &LocalFactor) -> Vec<V> {
    let k = tab.ring();
    let complement = linalg::vec_add(k, tab.unit(), &linalg::vec_scale(k, &k.from_int(-1), &factor.block.idempotent));
    let mut gens: Vec<V> = (0..tab.rank()).map(|i| tab.mul(&complement, &tab.basis(i))).collect();
    gens.extend(factor.block.nilradical.iter().cloned());
    linalg::span_basis(k, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteFlatAlgebra;
    use crate::scalars::{Dvr, DvrScalar, FiniteField};

    fn fiber_of(dvr: &Dvr, c: &[&str]) -> FiberAlgebra {
        let f = PolyRing::new(dvr.clone(), "x").from_coeffs(c.iter().map(|s| dvr.parse(s).unwrap()).collect::<Vec<DvrScalar>>());
        FiniteFlatAlgebra::from_monogenic(dvr, &f).unwrap().base_change_fiber()
    }

    fn shape(r: &FiberReport) -> Vec<(usize, usize, usize, usize)> {
        r.factors.iter().map(|f| (f.dim, f.e, f.residue_degree, f.h)).collect()
    }

    #[test]
    fn monogenic_examples() {
        let z3 = Dvr::integers_at(3).unwrap();
        let b = fiber_of(&z3, &["-1", "0", "1"]);
        let blocks = decompose_local(&b).unwrap();
        assert_eq!(blocks.len(), 2);
        let k = b.field();
        let two = k.from_int(2);
        let idems: Vec<V> = blocks.iter().map(|x| x.idempotent.clone()).collect();
        assert!(idems.contains(&vec![two.clone(), two.clone()]));
        assert!(idems.contains(&vec![two.clone(), k.from_int(-2)]));
        let r = analyze_fiber(&fiber_of(&z3, &["-3", "0", "1"])).unwrap();
        assert_eq!(shape(&r), [(2, 2, 1, 2)]);
        assert_eq!(r.factors[0].block.nilradical, vec![vec![k.zero(), k.one()]]);
        assert!((r.factors[0].tame, r.factors[0].separable, r.factors[0].combined) == (true, true, true));
        let r = analyze_fiber(&fiber_of(&z3, &["1", "0", "1"])).unwrap();
        assert_eq!(shape(&r), [(2, 1, 2, 1)]);
        assert_eq!(r.geometric_point_count, 2);
        let z2 = Dvr::integers_at(2).unwrap();
        let r = analyze_fiber(&fiber_of(&z2, &["-2", "0", "1"])).unwrap();
        let f = &r.factors[0];
        assert_eq!((f.tame, f.separable, f.combined), (false, true, false));
    }

    #[test]
    fn imperfect_residue_fields() {
        let kut = Dvr::function_series(2).unwrap();
        for (c, h) in [(vec!["u", "0", "1"], 2), (vec!["u", "0", "0", "0", "1"], 4)] {
            let r = analyze_fiber(&fiber_of(&kut, &c)).unwrap();
            let f = &r.factors[0];
            assert_eq!((f.e, f.separable_degree, f.h), (1, 1, h));
            assert_eq!((f.tame, f.separable, f.combined), (true, false, false));
            assert_eq!(r.geometric_point_count, 1);
        }
        let table = fiber_of(&kut, &["u", "0", "1"]).as_table();
        assert!(matches!(decompose_local(&table), Err(Error::Capability(_))));
    }

    #[test]
    fn table_path_matches_monogenic_path() {
        let z2 = Dvr::integers_at(2).unwrap();
        // x^4 + x^2 = x^2 (x+1)^2 over F_2
        let b = fiber_of(&z2, &["0", "0", "1", "0", "1"]);
        let mono = analyze_fiber(&b).unwrap();
        let table = analyze_fiber(&b.as_table()).unwrap();
        let mut s1 = shape(&mono);
        let mut s2 = shape(&table);
        s1.sort();
        s2.sort();
        assert_eq!(s1, s2);
        assert_eq!(s2, [(2, 2, 1, 2), (2, 2, 1, 2)]);
        for f in &table.factors {
            assert_eq!(f.block.nilradical.len(), 1);
        }
        let f4 = analyze_fiber(&fiber_of(&z2, &["1", "1", "1"]).as_table()).unwrap();
        assert_eq!(shape(&f4), [(2, 1, 2, 1)]);
        assert!(f4.factors[0].block.nilradical.is_empty());
    }

    #[test]
    fn trace_formula_on_blocks() {
        let z3 = Dvr::integers_at(3).unwrap();
        let z2 = Dvr::integers_at(2).unwrap();
        let t5 = Dvr::power_series(4).unwrap();
        for (dvr, c) in [
            (&z3, vec!["0", "0", "1"]),
            (&z2, vec!["0", "0", "1"]),
            (&z3, vec!["1", "0", "1", "0", "1"]),
            (&t5, vec!["w", "1", "0", "1"]),
        ] {
            let b = fiber_of(dvr, &c);
            for fib in [b.clone(), b.as_table()] {
                let r = analyze_fiber(&fib).unwrap();
                for f in &r.factors {
                    assert!(fiber_trace_check(fib.table(), f).unwrap());
                }
            }
        }
    }

    #[test]
    fn products_pad_coordinates() {
        let z3 = Dvr::integers_at(3).unwrap();
        let mk = |c: &[i64]| {
            let f = PolyRing::new(z3.clone(), "x").from_coeffs(c.iter().map(|&v| z3.from_int(v)).collect());
            FiniteFlatAlgebra::from_monogenic(&z3, &f).unwrap()
        };
        let p = FiniteFlatAlgebra::product(&mk(&[-3, 0, 1]), &mk(&[0, 1])).unwrap();
        let r = analyze_fiber(&p.base_change_fiber()).unwrap();
        assert_eq!(shape(&r), [(2, 2, 1, 2), (1, 1, 1, 1)]);
        assert_eq!(r.geometric_point_count, 2);
    }

    #[test]
    fn table_path_presents_f4() {
        let f2 = FiniteField::prime(2).unwrap();
        let k = ResidueField::finite(f2);
        let g = PolyRing::new(k.clone(), "x").from_coeffs(vec![k.one(), k.one(), k.one()]);
        let b = FiberAlgebra::from_monogenic(&k, &g).unwrap();
        let r = residue_field(b.table(), &decompose_table(b.table()).unwrap()[0]).unwrap();
        assert_eq!(r.poly.degree(), Some(2));
    }
}
