//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting and Cantor-Zassenhaus equal-degree splitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FactorList, Poly, PolyRing};
use crate::ring::Ring;
use crate::scalars::{FiniteField, FqElem};

type P = Poly<FqElem>;

const SPLIT_SEED: u64 = 0x5eed_f00d;

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(q^k) mod f`.
fn frobenius_power(ring: &PolyRing<FiniteField>, f: &P, k: usize) -> P {
    let q = ring.base().order();
    (0..k).fold(ring.rem(&ring.x(), f), |h, _| ring.powmod(&h, q, f))
}

/// Rabin's irreducibility test.
pub fn is_irreducible_fq(ring: &PolyRing<FiniteField>, f: &P) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = ring.monic(f).1;
    let x = ring.x();
    if frobenius_power(ring, &f, n) != ring.rem(&x, &f) {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| {
        let h = frobenius_power(ring, &f, n / r);
        ring.degree_of_gcd(&ring.sub(&h, &x), &f) == 0
    })
}

impl PolyRing<FiniteField> {
    fn degree_of_gcd(&self, a: &P, b: &P) -> usize {
        self.gcd(a, b).degree().unwrap_or(usize::MAX)
    }

    /// `h` with `h^p = f`; requires `f' = 0`.
    fn pth_root_poly(&self, f: &P) -> P {
        let p = self.base().p() as usize;
        let deflated = self.deflate(f, p).expect("f' = 0 means a p-th power");
        self.from_coeffs(
            deflated
                .coeffs()
                .iter()
                .map(|c| self.base().pth_root(c))
                .collect(),
        )
    }
}

/// Squarefree decomposition of a monic polynomial in characteristic `p`:
/// pairwise coprime squarefree parts `g_i` with `f = prod g_i^{m_i}`.
pub fn squarefree_decomposition(ring: &PolyRing<FiniteField>, f: &P) -> Vec<(P, u32)> {
    let f = ring.monic(f).1;
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut c = ring.gcd(&f, &ring.derivative(&f));
    let mut w = ring.exact_div(&f, &c).expect("gcd divides");
    let mut i = 1u32;
    while w.degree() != Some(0) {
        let y = ring.gcd(&w, &c);
        let fac = ring.exact_div(&w, &y).expect("gcd divides");
        if fac.degree() != Some(0) {
            out.push((fac, i));
        }
        c = ring.exact_div(&c, &y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if c.degree() != Some(0) {
        let p = ring.base().p() as u32;
        let root = ring.pth_root_poly(&c);
        out.extend(
            squarefree_decomposition(ring, &root)
                .into_iter()
                .map(|(g, j)| (g, j * p)),
        );
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(ring: &PolyRing<FiniteField>, f: &P) -> Vec<(P, usize)> {
    let q = ring.base().order();
    let x = ring.x();
    let mut g = f.clone();
    let mut h = ring.rem(&x, &g);
    let mut out = Vec::new();
    let mut d = 1;
    while g.degree().unwrap_or(0) >= 2 * d {
        h = ring.powmod(&h, q, &g);
        let fac = ring.gcd(&g, &ring.sub(&h, &x));
        if fac.degree() != Some(0) {
            g = ring.exact_div(&g, &fac).expect("gcd divides");
            h = ring.rem(&h, &g);
            out.push((fac, d));
        }
        d += 1;
    }
    if let Some(n) = g.degree().filter(|&n| n > 0) {
        out.push((g, n));
    }
    out
}

/// A splitting polynomial for equal-degree factorization: a gcd with `f`
/// separates the roots of `f` into two random halves.
fn splitter(ring: &PolyRing<FiniteField>, a: &P, d: usize, f: &P) -> P {
    let field = ring.base();
    let q = field.order();
    if field.p() == 2 {
        // absolute trace from F_{q^d} to F_2
        let bits = field.degree() * d;
        let mut term = ring.rem(a, f);
        let mut acc = term.clone();
        for _ in 1..bits {
            term = ring.mulmod(&term, &term, f);
            acc = ring.add(&acc, &term);
        }
        acc
    } else {
        // a^((q^d - 1)/2) = prod_{i<d} (a^((q-1)/2))^(q^i)
        let c = ring.powmod(a, (q - 1) / 2, f);
        let mut term = c.clone();
        let mut acc = c;
        for _ in 1..d {
            term = ring.powmod(&term, q, f);
            acc = ring.mulmod(&acc, &term, f);
        }
        ring.sub(&acc, &ring.one())
    }
}

fn equal_degree(ring: &PolyRing<FiniteField>, f: &P, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<P>) {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.clone());
        return;
    }
    let field = ring.base();
    loop {
        let a = ring.from_coeffs((0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = ring.gcd(f, &splitter(ring, &a, d, f));
        let k = g.degree().unwrap_or(0);
        if k > 0 && k < n {
            let h = ring.exact_div(f, &g).expect("gcd divides");
            equal_degree(ring, &g, d, rng, out);
            equal_degree(ring, &h, d, rng, out);
            return;
        }
    }
}

pub(crate) fn sort_factors<E: Clone + PartialEq + std::fmt::Debug>(
    factors: &mut [(Poly<E>, u32)],
    key: impl Fn(&E) -> Vec<u64>,
) {
    factors.sort_by_cached_key(|(f, _)| {
        (
            f.degree(),
            f.coeffs().iter().map(&key).collect::<Vec<_>>(),
        )
    });
}

/// Complete factorization of a nonzero polynomial over `F_q`, factors sorted
/// by degree and then by coefficients (constant term first).
pub fn factor_over_finite_field(ring: &PolyRing<FiniteField>, f: &P) -> FactorList<FqElem> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let (unit, monic) = ring.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(ring, &monic) {
        for (block, d) in distinct_degree(ring, &part) {
            let mut pieces = Vec::new();
            equal_degree(ring, &block, d, &mut rng, &mut pieces);
            factors.extend(pieces.into_iter().map(|g| (g, mult)));
        }
    }
    sort_factors(&mut factors, |c| c.coords().to_vec());
    FactorList { unit, factors }
}

/// Some root of `f` in its coefficient field, if one exists.
pub fn find_root(ring: &PolyRing<FiniteField>, f: &P) -> Option<FqElem> {
    factor_over_finite_field(ring, f)
        .factors
        .into_iter()
        .find(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| ring.base().neg(&g.coeffs()[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, m: usize) -> PolyRing<FiniteField> {
        PolyRing::new(FiniteField::new(p, m).unwrap(), "x")
    }

    fn poly(r: &PolyRing<FiniteField>, c: &[i64]) -> P {
        r.from_coeffs(c.iter().map(|&v| r.base().from_int(v)).collect())
    }

    #[test]
    fn spec_examples() {
        let f2 = ring(2, 1);
        assert!(factor_over_finite_field(&f2, &poly(&f2, &[1, 1, 1])).is_irreducible());
        let f3 = ring(3, 1);
        let fl = factor_over_finite_field(&f3, &poly(&f3, &[0, -1, 0, 1]));
        let expected = vec![
            (poly(&f3, &[0, 1]), 1),
            (poly(&f3, &[1, 1]), 1),
            (poly(&f3, &[2, 1]), 1),
        ];
        assert_eq!(fl.factors, expected);
    }

    #[test]
    fn repeated_and_inseparable_parts() {
        let f2 = ring(2, 1);
        // x^4 + x^2 = x^2 (x+1)^2
        let f = poly(&f2, &[0, 0, 1, 0, 1]);
        let fl = factor_over_finite_field(&f2, &f);
        assert_eq!(fl.factors, vec![(poly(&f2, &[0, 1]), 2), (poly(&f2, &[1, 1]), 2)]);
        assert_eq!(fl.expand(&f2), f);
        // (x^2+x+1)^3 * x over F_2
        let g = f2.mul(&f2.pow(&poly(&f2, &[1, 1, 1]), 3), &f2.x());
        assert_eq!(factor_over_finite_field(&f2, &g).expand(&f2), g);
    }

    #[test]
    fn factors_over_extension_fields() {
        let f4 = ring(2, 2);
        // x^4 - x splits into linear factors over F_4
        let f = poly(&f4, &[0, -1, 0, 0, 1]);
        let fl = factor_over_finite_field(&f4, &f);
        assert_eq!(fl.factors.len(), 4);
        assert!(fl.factors.iter().all(|(g, k)| g.degree() == Some(1) && *k == 1));
        assert_eq!(fl.expand(&f4), f);
        let f9 = ring(3, 2);
        let g = poly(&f9, &[1, 0, 1]);
        assert_eq!(factor_over_finite_field(&f9, &g).factors.len(), 2);
    }

    #[test]
    fn rabin_test_agrees_with_factorization() {
        let f3 = ring(3, 1);
        for k in 0..81 {
            let mut c: Vec<i64> = (0..4).map(|i| (k / 3i64.pow(i)) % 3).collect();
            c.push(1);
            let f = poly(&f3, &c);
            assert_eq!(
                is_irreducible_fq(&f3, &f),
                factor_over_finite_field(&f3, &f).is_irreducible(),
                "{c:?}"
            );
        }
    }

    #[test]
    fn roots() {
        let f4 = ring(2, 2);
        let f = poly(&f4, &[1, 1, 1]);
        let r = find_root(&f4, &f).unwrap();
        assert!(f4.base().is_zero(&f4.eval(&f, &r)));
        let f2 = ring(2, 1);
        assert!(find_root(&f2, &poly(&f2, &[1, 1, 1])).is_none());
    }
}
