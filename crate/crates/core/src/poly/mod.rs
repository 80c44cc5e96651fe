//! Univariate polynomials over a ring context.
//!
//! `Poly` stores coefficients constant-term first with no trailing zeros,
//! so the zero polynomial has an empty coefficient vector and equality of
//! values is equality of polynomials.

mod factor_fpu;
mod factor_fq;
mod separable;

pub use factor_fpu::factor_over_function_field;
pub use factor_fq::{factor_over_finite_field, find_root, is_irreducible_fq, squarefree_decomposition};
pub use factor_fpu::MAX_FUNCTION_FIELD_DEGREE;
pub use separable::{factor, separability_profile, squarefree_part_degree, SeparabilityProfile};

use crate::ring::{Field, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Polynomial ring `base[var]`.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    base: R,
    var: String,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R, var: impl Into<String>) -> Self {
        PolyRing {
            base,
            var: var.into(),
        }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn monomial(&self, c: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); k + 1];
        coeffs[k] = c;
        self.from_coeffs(coeffs)
    }

    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn coeff_or_zero(&self, p: &Poly<R::Elem>, i: usize) -> R::Elem {
        p.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn is_monic(&self, p: &Poly<R::Elem>) -> bool {
        p.lc().is_some_and(|c| self.base.is_one(c))
    }

    pub fn eval(&self, p: &Poly<R::Elem>, a: &R::Elem) -> R::Elem {
        p.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.mul_add(&acc, a, c))
    }

    pub fn scale(&self, p: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(p.coeffs.iter().map(|x| self.base.mul(x, c)).collect())
    }

    pub fn derivative(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(
            p.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.base.mul(&self.base.from_int(i as i64), c))
                .collect(),
        )
    }

    /// `p(x^k)`.
    pub fn inflate(&self, p: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        if p.is_zero() {
            return p.clone();
        }
        let mut coeffs = vec![self.base.zero(); (p.coeffs.len() - 1) * k + 1];
        for (i, c) in p.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        self.from_coeffs(coeffs)
    }

    /// The `h` with `h(x^k) = p`, if every exponent of `p` is divisible by `k`.
    pub fn deflate(&self, p: &Poly<R::Elem>, k: usize) -> Option<Poly<R::Elem>> {
        let mut out = Vec::new();
        for (i, c) in p.coeffs.iter().enumerate() {
            if i % k == 0 {
                out.push(c.clone());
            } else if !self.base.is_zero(c) {
                return None;
            }
        }
        Some(self.from_coeffs(out))
    }

    pub fn map<S: Ring>(
        &self,
        p: &Poly<R::Elem>,
        target: &PolyRing<S>,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> Poly<S::Elem> {
        target.from_coeffs(p.coeffs.iter().map(f).collect())
    }

    /// Division by a monic divisor, valid over any commutative ring.
    pub fn divrem_monic(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
    ) -> (Poly<R::Elem>, Poly<R::Elem>) {
        assert!(self.is_monic(b), "divrem_monic needs a monic divisor");
        let db = b.coeffs.len() - 1;
        if a.coeffs.len() <= db {
            return (self.zero(), a.clone());
        }
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.base.zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = rem[i + db].clone();
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[i + j] = self.base.sub(&rem[i + j], &self.base.mul(&c, bj));
            }
            quot[i] = c;
        }
        rem.truncate(db);
        (self.from_coeffs(quot), self.from_coeffs(rem))
    }

    /// Human-readable rendering, highest degree first: `x^2 - 3`.
    pub fn display(&self, p: &Poly<R::Elem>) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in p.coeffs.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let mut s = self.base.render(c);
            let negative = s.starts_with('-') && !needs_parens(&s[1..]);
            if negative {
                s.remove(0);
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let is_one = s == "1";
            if i == 0 || !is_one {
                if i > 0 && needs_parens(&s) {
                    out.push_str(&format!("({s})"));
                } else {
                    out.push_str(&s);
                }
                if i > 0 {
                    out.push('*');
                }
            }
            match i {
                0 => {}
                1 => out.push_str(&self.var),
                _ => out.push_str(&format!("{}^{}", self.var, i)),
            }
        }
        out
    }
}

/// Whether a rendered scalar must be parenthesized before being used as a
/// factor in a product.
pub(crate) fn needs_parens(s: &str) -> bool {
    s.char_indices()
        .any(|(i, ch)| ch == '/' || (i > 0 && (ch == '+' || ch == '-')))
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly { coeffs: Vec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => self.base.add(x, y),
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.from_coeffs(coeffs)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut coeffs = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] = self.base.mul_add(x, y, &coeffs[i + j]);
            }
        }
        self.from_coeffs(coeffs)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    /// Compact rendering, constant term first: `1+u+u^2`.
    fn render(&self, p: &Self::Elem) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in p.coeffs.iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            let s = self.base.render(c);
            let term = match i {
                0 => s,
                _ => {
                    let power = if i == 1 {
                        self.var.clone()
                    } else {
                        format!("{}^{}", self.var, i)
                    };
                    if s == "1" {
                        power
                    } else if s == "-1" {
                        format!("-{power}")
                    } else if needs_parens(&s) {
                        format!("({s})*{power}")
                    } else {
                        format!("{s}*{power}")
                    }
                }
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}

impl<F: Field> PolyRing<F> {
    pub fn divrem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let lc = b.lc().expect("division by the zero polynomial");
        let inv = self.base.inv(lc).expect("leading coefficient is nonzero");
        let monic_b = self.scale(b, &inv);
        let (q, r) = self.divrem_monic(a, &monic_b);
        (self.scale(&q, &inv), r)
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divrem(a, b).1
    }

    /// Quotient when `b` divides `a`; `None` otherwise.
    pub fn exact_div(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divrem(a, b);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, d: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        self.rem(a, d).is_zero()
    }

    /// Splits `p` into its leading coefficient and the monic associate.
    /// The zero polynomial is returned unchanged with unit 1.
    pub fn monic(&self, p: &Poly<F::Elem>) -> (F::Elem, Poly<F::Elem>) {
        match p.lc() {
            None => (self.base.one(), p.clone()),
            Some(lc) => {
                let inv = self.base.inv(lc).expect("leading coefficient is nonzero");
                (lc.clone(), self.scale(p, &inv))
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if !a.is_zero() && !b.is_zero() {
            if let Some(g) = self.base.fast_gcd(a.coeffs(), b.coeffs()) {
                return self.from_coeffs(g);
            }
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a).1
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` the monic gcd.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.base.inv(lc).expect("nonzero");
                (
                    self.scale(&r0, &inv),
                    self.scale(&s0, &inv),
                    self.scale(&t0, &inv),
                )
            }
        }
    }

    pub fn mulmod(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &Poly<F::Elem>, mut exp: u128, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }
}

/// An irreducible factorization: `unit * prod(factor^multiplicity)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorList<E> {
    pub unit: E,
    pub factors: Vec<(Poly<E>, u32)>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> FactorList<E> {
    pub fn expand<R: Ring<Elem = E>>(&self, ring: &PolyRing<R>) -> Poly<E> {
        self.factors.iter().fold(ring.constant(self.unit.clone()), |acc, (f, k)| {
            ring.mul(&acc, &ring.pow(f, *k as u128))
        })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}
