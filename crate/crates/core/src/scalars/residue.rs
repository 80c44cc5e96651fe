use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::Rng;

use super::finite_field::{FiniteField, FqElem};
use super::ratfun::{Frac, RationalFunctions};
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, Ring};

/// Residue fields of the supported backends: finite fields `F_q` and the
/// imperfect field `F_p(u)`.
#[derive(Clone, Debug)]
pub enum ResidueField {
    Finite(FiniteField),
    Function(RationalFunctions<FiniteField>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResidueScalar {
    Finite(FqElem),
    Function(Frac<FqElem>),
}

impl PartialEq for ResidueField {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ResidueField::Finite(a), ResidueField::Finite(b)) => a == b,
            (ResidueField::Function(a), ResidueField::Function(b)) => {
                a.base() == b.base()
            }
            _ => false,
        }
    }
}

impl ResidueField {
    pub fn finite(field: FiniteField) -> Self {
        ResidueField::Finite(field)
    }

    /// `F_p(u)`.
    pub fn function_field(p: u64) -> crate::Result<Self> {
        Ok(ResidueField::Function(RationalFunctions::new(
            FiniteField::prime(p)?,
            "u",
        )))
    }

    pub fn p(&self) -> u64 {
        self.characteristic()
    }

    pub fn as_finite(&self) -> Option<&FiniteField> {
        match self {
            ResidueField::Finite(f) => Some(f),
            ResidueField::Function(_) => None,
        }
    }

    pub fn is_perfect(&self) -> bool {
        matches!(self, ResidueField::Finite(_))
    }

    /// The transcendental `u` of `F_p(u)`.
    pub fn u(&self) -> Option<ResidueScalar> {
        match self {
            ResidueField::Function(k) => Some(ResidueScalar::Function(k.var())),
            ResidueField::Finite(_) => None,
        }
    }

    /// The generator `w` of a non-prime finite field.
    pub fn w(&self) -> Option<ResidueScalar> {
        self.as_finite()
            .and_then(|f| f.generator())
            .map(ResidueScalar::Finite)
    }

    pub fn describe(&self) -> String {
        match self {
            ResidueField::Finite(f) if f.degree() == 1 => format!("F_{}", f.p()),
            ResidueField::Finite(f) => format!("F_{}", f.order()),
            ResidueField::Function(k) => format!("F_{}(u)", k.characteristic()),
        }
    }

    /// `b` with `b^p = a`, when it exists. Always exists over a finite
    /// field; over `F_p(u)` exactly when numerator and denominator only
    /// involve `p`-th powers of `u`.
    pub fn pth_root(&self, a: &ResidueScalar) -> Option<ResidueScalar> {
        match (self, a) {
            (ResidueField::Finite(f), ResidueScalar::Finite(x)) => {
                Some(ResidueScalar::Finite(f.pth_root(x)))
            }
            (ResidueField::Function(k), ResidueScalar::Function(x)) => {
                let p = k.characteristic() as usize;
                let num = k.polys().deflate(x.num(), p)?;
                let den = k.polys().deflate(x.den(), p)?;
                k.fraction(num, den).map(ResidueScalar::Function)
            }
            _ => panic!("residue scalar from a different field"),
        }
    }

    /// Total order used for deterministic factor sorting.
    pub fn sort_key(&self, a: &ResidueScalar) -> Vec<u64> {
        match a {
            ResidueScalar::Finite(x) => x.coords().to_vec(),
            ResidueScalar::Function(x) => {
                let mut key = Vec::new();
                for part in [x.num(), x.den()] {
                    key.push(part.coeffs().len() as u64);
                    for c in part.coeffs() {
                        key.extend_from_slice(c.coords());
                    }
                }
                key
            }
        }
    }

    /// A pseudorandom element; for `F_p(u)` a polynomial of degree < 2.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ResidueScalar {
        match self {
            ResidueField::Finite(f) => ResidueScalar::Finite(f.random(rng)),
            ResidueField::Function(k) => {
                let base = k.base();
                let p = k.polys().from_coeffs(vec![base.random(rng), base.random(rng)]);
                ResidueScalar::Function(k.from_poly(p))
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> ResidueScalar {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

macro_rules! dispatch2 {
    ($self:ident, $a:ident, $b:ident, $f:ident) => {
        match ($self, $a, $b) {
            (ResidueField::Finite(k), ResidueScalar::Finite(x), ResidueScalar::Finite(y)) => {
                ResidueScalar::Finite(k.$f(x, y))
            }
            (ResidueField::Function(k), ResidueScalar::Function(x), ResidueScalar::Function(y)) => {
                ResidueScalar::Function(k.$f(x, y))
            }
            _ => panic!("residue scalar from a different field"),
        }
    };
}

impl Ring for ResidueField {
    type Elem = ResidueScalar;

    fn zero(&self) -> ResidueScalar {
        match self {
            ResidueField::Finite(k) => ResidueScalar::Finite(k.zero()),
            ResidueField::Function(k) => ResidueScalar::Function(k.zero()),
        }
    }

    fn one(&self) -> ResidueScalar {
        match self {
            ResidueField::Finite(k) => ResidueScalar::Finite(k.one()),
            ResidueField::Function(k) => ResidueScalar::Function(k.one()),
        }
    }

    fn from_int(&self, n: i64) -> ResidueScalar {
        match self {
            ResidueField::Finite(k) => ResidueScalar::Finite(k.from_int(n)),
            ResidueField::Function(k) => ResidueScalar::Function(k.from_int(n)),
        }
    }

    fn add(&self, a: &ResidueScalar, b: &ResidueScalar) -> ResidueScalar {
        dispatch2!(self, a, b, add)
    }

    fn sub(&self, a: &ResidueScalar, b: &ResidueScalar) -> ResidueScalar {
        dispatch2!(self, a, b, sub)
    }

    fn mul(&self, a: &ResidueScalar, b: &ResidueScalar) -> ResidueScalar {
        dispatch2!(self, a, b, mul)
    }

    fn neg(&self, a: &ResidueScalar) -> ResidueScalar {
        match (self, a) {
            (ResidueField::Finite(k), ResidueScalar::Finite(x)) => ResidueScalar::Finite(k.neg(x)),
            (ResidueField::Function(k), ResidueScalar::Function(x)) => {
                ResidueScalar::Function(k.neg(x))
            }
            _ => panic!("residue scalar from a different field"),
        }
    }

    fn is_zero(&self, a: &ResidueScalar) -> bool {
        match (self, a) {
            (ResidueField::Finite(k), ResidueScalar::Finite(x)) => k.is_zero(x),
            (ResidueField::Function(k), ResidueScalar::Function(x)) => k.is_zero(x),
            _ => panic!("residue scalar from a different field"),
        }
    }

    fn characteristic(&self) -> u64 {
        match self {
            ResidueField::Finite(k) => k.characteristic(),
            ResidueField::Function(k) => k.characteristic(),
        }
    }

    fn render(&self, a: &ResidueScalar) -> String {
        match (self, a) {
            (ResidueField::Finite(k), ResidueScalar::Finite(x)) => k.render(x),
            (ResidueField::Function(k), ResidueScalar::Function(x)) => k.render(x),
            _ => panic!("residue scalar from a different field"),
        }
    }
}

/// `F_{p^m}` with `p^m` around a million, and its generator. Specializing
/// `u` to the generator keeps every polynomial of `u`-degree below `m`
/// nonzero.
fn specialization_field(p: u64) -> Option<&'static (FiniteField, FqElem)> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Option<&'static (FiniteField, FqElem)>>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
    *cache.entry(p).or_insert_with(|| {
        let m = ((20.0 / (p as f64).log2()).ceil() as usize).max(2);
        let field = FiniteField::new(p, m).ok()?;
        let gamma = field.generator()?;
        Some(&*Box::leak(Box::new((field, gamma))))
    })
}

/// Image of a polynomial over `F_p(u)` under `u -> gamma`; `None` when a
/// denominator or the leading coefficient vanishes there.
fn specialize(big: &FiniteField, gamma: &FqElem, coeffs: &[ResidueScalar]) -> Option<Vec<FqElem>> {
    let eval = |poly: &Poly<FqElem>| {
        poly.coeffs()
            .iter()
            .rev()
            .fold(big.zero(), |acc, c| big.add(&big.mul(&acc, gamma), &big.from_coords(&c.coords()[..1])))
    };
    let image = coeffs
        .iter()
        .map(|c| match c {
            ResidueScalar::Function(f) => big.div(&eval(f.num()), &eval(f.den())),
            ResidueScalar::Finite(_) => None,
        })
        .collect::<Option<Vec<_>>>()?;
    (!image.last().is_none_or(|c| big.is_zero(c))).then_some(image)
}

type UPoly = Poly<FqElem>;

fn function_coeff(c: &ResidueScalar) -> &Frac<FqElem> {
    match c {
        ResidueScalar::Function(f) => f,
        ResidueScalar::Finite(_) => panic!("residue scalar from a different field"),
    }
}

/// Divides out the content over `F_p[u]` and trims leading zeros.
fn primitive_part(pu: &PolyRing<FiniteField>, mut v: Vec<UPoly>) -> Vec<UPoly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let content = v.iter().fold(pu.zero(), |g, c| pu.gcd(&g, c));
    if content.degree().unwrap_or(0) > 0 {
        for c in v.iter_mut() {
            *c = pu.exact_div(c, &content).expect("content divides");
        }
    }
    v
}

/// Primitive associate in `F_p[u][t]` of a polynomial over `F_p(u)`.
fn clear_denominators(pu: &PolyRing<FiniteField>, coeffs: &[ResidueScalar]) -> Vec<UPoly> {
    let lcm = coeffs.iter().map(function_coeff).fold(pu.one(), |l, f| {
        let g = pu.gcd(&l, f.den());
        pu.mul(&l, &pu.exact_div(f.den(), &g).expect("gcd divides"))
    });
    let cleared = coeffs
        .iter()
        .map(function_coeff)
        .map(|f| pu.mul(f.num(), &pu.exact_div(&lcm, f.den()).expect("lcm is a multiple")))
        .collect();
    primitive_part(pu, cleared)
}

fn primitive_gcd(k: &RationalFunctions<FiniteField>, a: &[ResidueScalar], b: &[ResidueScalar]) -> Vec<ResidueScalar> {
    let pu = k.polys();
    let (mut x, mut y) = (clear_denominators(pu, a), clear_denominators(pu, b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let lb = y.last().expect("nonempty").clone();
        while x.len() >= y.len() {
            let la = x.last().expect("nonempty").clone();
            let offset = x.len() - y.len();
            for c in x.iter_mut() {
                *c = pu.mul(c, &lb);
            }
            for (i, c) in y.iter().enumerate() {
                x[i + offset] = pu.sub(&x[i + offset], &pu.mul(&la, c));
            }
            x = primitive_part(pu, x);
        }
        x = std::mem::replace(&mut y, x);
    }
    let lc = x.last().expect("gcd of nonzero polynomials").clone();
    x.into_iter()
        .map(|c| ResidueScalar::Function(k.fraction(c, lc.clone()).expect("nonzero leading coefficient")))
        .collect()
}

impl Field for ResidueField {
    /// Over `F_p(u)`: coprime images under `u -> gamma` certify
    /// coprimality, since a common factor survives specialization with its
    /// degree intact. Otherwise a primitive remainder sequence over
    /// `F_p[u][t]` avoids the coefficient normalizations of Euclid.
    fn fast_gcd(&self, a: &[ResidueScalar], b: &[ResidueScalar]) -> Option<Vec<ResidueScalar>> {
        let ResidueField::Function(k) = self else { return None };
        if let Some((big, gamma)) = specialization_field(self.p()) {
            if let (Some(x), Some(y)) = (specialize(big, gamma, a), specialize(big, gamma, b)) {
                let ring = PolyRing::new(big.clone(), "x");
                if ring.gcd(&ring.from_coeffs(x), &ring.from_coeffs(y)).degree() == Some(0) {
                    return Some(vec![self.one()]);
                }
            }
        }
        Some(primitive_gcd(k, a, b))
    }

    fn inv(&self, a: &ResidueScalar) -> Option<ResidueScalar> {
        match (self, a) {
            (ResidueField::Finite(k), ResidueScalar::Finite(x)) => {
                k.inv(x).map(ResidueScalar::Finite)
            }
            (ResidueField::Function(k), ResidueScalar::Function(x)) => {
                k.inv(x).map(ResidueScalar::Function)
            }
            _ => panic!("residue scalar from a different field"),
        }
    }
}

/// Multiplicative inverse; `None` exactly for zero.
pub fn res_inverse(field: &ResidueField, a: &ResidueScalar) -> Option<ResidueScalar> {
    field.inv(a)
}
