use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{find_root, is_irreducible_fq, Poly, PolyRing};
use crate::ring::{Field, Ring};

/// `F_{p^m}` presented as `F_p[w]/(modulus)`.
///
/// The modulus is the smallest monic irreducible polynomial of degree `m`
/// when coefficient vectors are read as base-`p` numbers with the constant
/// term least significant. For `F_4` that is `w^2 + w + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    modulus: Vec<u64>,
}

/// Coordinates of an element on the power basis `1, w, ..., w^{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub(crate) Vec<u64>);

impl FqElem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::invalid(format!("{p} is not a supported prime")));
        }
        Ok(FiniteField {
            p,
            modulus: vec![0, 1],
        })
    }

    /// `F_{p^m}` with the canonical smallest irreducible modulus.
    pub fn new(p: u64, m: usize) -> Result<Self> {
        let base = Self::prime(p)?;
        if m == 0 {
            return Err(Error::invalid("extension degree must be at least 1"));
        }
        if m == 1 {
            return Ok(base);
        }
        if (m as f64) * (p as f64).log2() > 60.0 {
            return Err(Error::capability(format!("field F_{p}^{m} is too large")));
        }
        let ring = PolyRing::new(base.clone(), "w");
        let count = p.pow(m as u32);
        for k in 0..count {
            let mut digits = Vec::with_capacity(m + 1);
            let mut rest = k;
            for _ in 0..m {
                digits.push(rest % p);
                rest /= p;
            }
            digits.push(1);
            let candidate = ring.from_coeffs(digits.iter().map(|&d| FqElem(vec![d])).collect());
            if is_irreducible_fq(&ring, &candidate) {
                return Ok(FiniteField { p, modulus: digits });
            }
        }
        Err(Error::internal(format!("no irreducible polynomial of degree {m} over F_{p}")))
    }

    /// Field with `q` elements; `q` must be a prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        let p = (2..=q)
            .find(|d| q.is_multiple_of(*d))
            .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        let (mut rest, mut m) = (q, 0);
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::invalid(format!("{q} is not a prime power")));
        }
        Self::new(p, m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.degree() as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The class of `w`; `None` for a prime field.
    pub fn generator(&self) -> Option<FqElem> {
        (self.degree() > 1).then(|| {
            let mut c = vec![0; self.degree()];
            c[1] = 1;
            FqElem(c)
        })
    }

    pub fn from_coords(&self, coords: &[u64]) -> FqElem {
        assert!(coords.len() <= self.degree(), "too many coordinates");
        let mut c: Vec<u64> = coords.iter().map(|x| x % self.p).collect();
        c.resize(self.degree(), 0);
        FqElem(c)
    }

    /// The `k`-th element in base-`p` digit order; `k < q`.
    pub fn element(&self, mut k: u128) -> FqElem {
        let mut c = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            c.push((k % self.p as u128) as u64);
            k /= self.p as u128;
        }
        FqElem(c)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(|k| self.element(k))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        FqElem((0..self.degree()).map(|_| rng.gen_range(0..self.p)).collect())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.p as u128)
    }

    /// The unique `b` with `b^p = a` (finite fields are perfect).
    pub fn pth_root(&self, a: &FqElem) -> FqElem {
        (1..self.degree()).fold(a.clone(), |acc, _| self.frobenius(&acc))
    }

    /// Embedding of `self` into `target`, given by the image of `w`.
    pub fn embedding_into(&self, target: &FiniteField) -> Result<FieldEmbedding> {
        if self.p != target.p || !target.degree().is_multiple_of(self.degree()) {
            return Err(Error::invalid(format!(
                "F_{}^{} does not embed into F_{}^{}",
                self.p,
                self.degree(),
                target.p,
                target.degree()
            )));
        }
        let ring = PolyRing::new(target.clone(), "x");
        let modulus: Poly<FqElem> = ring.from_coeffs(
            self.modulus
                .iter()
                .map(|&c| target.from_int(c as i64))
                .collect(),
        );
        let image = if self.degree() == 1 {
            target.zero()
        } else {
            find_root(&ring, &modulus)
                .ok_or_else(|| Error::internal("modulus has no root in the extension"))?
        };
        Ok(FieldEmbedding {
            source: self.clone(),
            target: target.clone(),
            image_of_generator: image,
        })
    }

    fn reduce_product(&self, mut prod: Vec<u64>) -> FqElem {
        let m = self.degree();
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..m {
                let sub = mul_mod(c, self.modulus[j], self.p);
                prod[i - m + j] = (prod[i - m + j] + self.p - sub) % self.p;
            }
            prod[i] = 0;
        }
        prod.truncate(m);
        prod.resize(m, 0);
        FqElem(prod)
    }
}

impl Ring for FiniteField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(vec![0; self.degree()])
    }

    fn one(&self) -> FqElem {
        self.from_int(1)
    }

    fn from_int(&self, n: i64) -> FqElem {
        let mut c = vec![0; self.degree()];
        c[0] = n.rem_euclid(self.p as i64) as u64;
        FqElem(c)
    }

    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| (x + y) % self.p)
                .collect(),
        )
    }

    fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(a.0.iter().map(|x| (self.p - x) % self.p).collect())
    }

    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if self.degree() == 1 {
            return FqElem(vec![mul_mod(a.0[0], b.0[0], self.p)]);
        }
        let m = self.degree();
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, self.p)) % self.p;
            }
        }
        self.reduce_product(prod)
    }

    fn is_zero(&self, a: &FqElem) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn render(&self, a: &FqElem) -> String {
        let mut out = String::new();
        for (i, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            let power = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            };
            match (i, c) {
                (0, _) => out.push_str(&c.to_string()),
                (_, 1) => out.push_str(&power),
                _ => out.push_str(&format!("{c}*{power}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Field for FiniteField {
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return Some(FqElem(vec![mod_pow(a.0[0], self.p - 2, self.p)]));
        }
        Some(self.pow(a, self.order() - 2))
    }
}

/// A field homomorphism `F_{p^a} -> F_{p^b}`.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: FiniteField,
    target: FiniteField,
    image_of_generator: FqElem,
}

impl FieldEmbedding {
    pub fn source(&self) -> &FiniteField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn apply(&self, a: &FqElem) -> FqElem {
        let t = &self.target;
        a.0.iter().rev().fold(t.zero(), |acc, &c| {
            t.add(&t.mul(&acc, &self.image_of_generator), &t.from_int(c as i64))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_modulus_and_inverse() {
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let w = f4.generator().unwrap();
        let w2 = f4.mul(&w, &w);
        assert_eq!(f4.inv(&w), Some(w2.clone()));
        // (w^2)^2 = w
        assert_eq!(f4.pth_root(&w), w2);
        assert_eq!(f4.pow(&w, 3), f4.one());
    }

    #[test]
    fn f3_inverse_and_root() {
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(f3.inv(&f3.from_int(2)), Some(f3.from_int(2)));
        assert_eq!(f3.pth_root(&f3.one()), f3.one());
        assert_eq!(f3.inv(&f3.zero()), None);
    }

    #[test]
    fn f9_from_order() {
        let f9 = FiniteField::with_order(9).unwrap();
        assert_eq!((f9.p(), f9.degree()), (3, 2));
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert!(FiniteField::with_order(6).is_err());
        assert!(FiniteField::prime(4).is_err());
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        let f8 = FiniteField::new(2, 3).unwrap();
        for a in f8.elements().skip(1) {
            let ai = f8.inv(&a).unwrap();
            assert_eq!(f8.mul(&a, &ai), f8.one());
            assert_eq!(f8.pow(&f8.pth_root(&a), 2), a);
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let f16 = FiniteField::new(2, 4).unwrap();
        let emb = f4.embedding_into(&f16).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(emb.apply(&f4.mul(&a, &b)), f16.mul(&emb.apply(&a), &emb.apply(&b)));
                assert_eq!(emb.apply(&f4.add(&a, &b)), f16.add(&emb.apply(&a), &emb.apply(&b)));
            }
        }
        assert!(f4.embedding_into(&FiniteField::new(2, 3).unwrap()).is_err());
    }
}
