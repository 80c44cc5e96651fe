//! Factorization over the imperfect field `F_p(u)` by bounded trial
//! division in `F_p[u][x]`.
//!
//! A monic `f` over `F_p(u)` is scaled to a primitive `F` in `F_p[u][x]`.
//! Any factor `G` of `F` may be taken primitive (Gauss), its leading and
//! constant coefficients divide those of `F`, and `deg_u G <= deg_u F`
//! because `u`-degrees add in products. The smallest-degree divisor found
//! is irreducible.

use super::factor_fq::{factor_over_finite_field, sort_factors};
use super::{FactorList, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalars::{FiniteField, FqElem, Frac, RationalFunctions};

/// Highest `x`-degree accepted.
pub const MAX_FUNCTION_FIELD_DEGREE: usize = 6;
/// Largest number of candidate divisors tried for one degree.
const CANDIDATE_BUDGET: u128 = 1 << 20;

type Fpu = RationalFunctions<FiniteField>;
type Up = Poly<FqElem>;

fn monic_divisors(upoly: &PolyRing<FiniteField>, a: &Up) -> Vec<Up> {
    let fl = factor_over_finite_field(upoly, a);
    let mut divisors = vec![upoly.one()];
    for (g, k) in &fl.factors {
        let mut next = Vec::new();
        for d in &divisors {
            let mut acc = d.clone();
            for _ in 0..=*k {
                next.push(acc.clone());
                acc = upoly.mul(&acc, g);
            }
        }
        divisors = next;
    }
    divisors
}

/// All polynomials in `u` of degree at most `bound` in base-`p` order.
fn all_polys(upoly: &PolyRing<FiniteField>, bound: usize) -> Vec<Up> {
    let field = upoly.base();
    let p = field.p() as u128;
    let count = p.pow(bound as u32 + 1);
    (0..count)
        .map(|mut k| {
            let mut c = Vec::with_capacity(bound + 1);
            for _ in 0..=bound {
                c.push(field.from_int((k % p) as i64));
                k /= p;
            }
            upoly.from_coeffs(c)
        })
        .collect()
}

/// Primitive integral form of a monic polynomial over `F_p(u)`.
fn clear_denominators(ring: &PolyRing<Fpu>, f: &Poly<Frac<FqElem>>) -> Vec<Up> {
    let upoly = ring.base().polys();
    let lcm = f.coeffs().iter().fold(upoly.one(), |acc, c| {
        let g = upoly.gcd(&acc, c.den());
        upoly.mul(&acc, &upoly.exact_div(c.den(), &g).expect("gcd divides"))
    });
    let scaled: Vec<Up> = f
        .coeffs()
        .iter()
        .map(|c| {
            let factor = upoly.exact_div(&lcm, c.den()).expect("lcm is a multiple");
            upoly.mul(c.num(), &factor)
        })
        .collect();
    let content = scaled.iter().fold(upoly.zero(), |acc, c| upoly.gcd(&acc, c));
    scaled
        .iter()
        .map(|c| upoly.exact_div(c, &content).expect("content divides"))
        .collect()
}

/// Smallest-degree monic divisor of `f` of degree exactly `k`, if any.
fn divisor_of_degree(ring: &PolyRing<Fpu>, f: &Poly<Frac<FqElem>>, k: usize) -> Result<Option<Poly<Frac<FqElem>>>> {
    let fpu = ring.base();
    let upoly = fpu.polys();
    let field = upoly.base();
    let coeffs = clear_denominators(ring, f);
    if coeffs[0].is_zero() {
        return Ok((k == 1).then(|| ring.x()));
    }
    let bound = coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let leads = monic_divisors(upoly, coeffs.last().expect("nonzero"));
    let consts: Vec<Up> = monic_divisors(upoly, &coeffs[0])
        .into_iter()
        .flat_map(|d| {
            (1..field.p())
                .map(|s| upoly.scale(&d, &field.from_int(s as i64)))
                .collect::<Vec<_>>()
        })
        .collect();
    let middles = all_polys(upoly, bound);
    let total = leads.len() as u128
        * consts.len() as u128
        * (middles.len() as u128).pow(k as u32 - 1);
    if total > CANDIDATE_BUDGET {
        return Err(Error::capability(format!(
            "trial factorization over F_{}(u) needs {total} candidates for degree {k} (budget {CANDIDATE_BUDGET})",
            field.p()
        )));
    }
    let mut index = vec![0usize; k.saturating_sub(1)];
    for lead in &leads {
        for c0 in &consts {
            index.iter_mut().for_each(|i| *i = 0);
            loop {
                let mut g = vec![fpu.from_poly(c0.clone())];
                g.extend(index.iter().map(|&i| fpu.from_poly(middles[i].clone())));
                g.push(fpu.from_poly(lead.clone()));
                let g = ring.monic(&ring.from_coeffs(g)).1;
                if ring.divides(&g, f) {
                    return Ok(Some(g));
                }
                // odometer over the middle coefficients
                let mut pos = 0;
                while pos < index.len() {
                    index[pos] += 1;
                    if index[pos] < middles.len() {
                        break;
                    }
                    index[pos] = 0;
                    pos += 1;
                }
                if pos == index.len() {
                    break;
                }
            }
        }
    }
    Ok(None)
}

/// Complete factorization over `F_p(u)` for `x`-degree at most
/// [`MAX_FUNCTION_FIELD_DEGREE`].
pub fn factor_over_function_field(
    ring: &PolyRing<Fpu>,
    f: &Poly<Frac<FqElem>>,
) -> Result<FactorList<Frac<FqElem>>> {
    let n = f
        .degree()
        .ok_or_else(|| Error::invalid("cannot factor the zero polynomial"))?;
    if n > MAX_FUNCTION_FIELD_DEGREE {
        return Err(Error::capability(format!(
            "factorization over F_p(u) supports degree <= {MAX_FUNCTION_FIELD_DEGREE}, got {n}"
        )));
    }
    let (unit, mut rest) = ring.monic(f);
    let mut factors = Vec::new();
    let mut k = 1;
    while let Some(d) = rest.degree().filter(|&d| d > 0) {
        let mut found = None;
        while 2 * k <= d {
            if let Some(g) = divisor_of_degree(ring, &rest, k)? {
                found = Some(g);
                break;
            }
            k += 1;
        }
        let g = found.unwrap_or_else(|| rest.clone());
        let mut mult = 0;
        while let Some(q) = ring.exact_div(&rest, &g) {
            rest = q;
            mult += 1;
        }
        factors.push((g, mult));
    }
    sort_factors(&mut factors, |c| {
        let mut key = Vec::new();
        for part in [c.num(), c.den()] {
            key.push(part.coeffs().len() as u64);
            for x in part.coeffs() {
                key.extend_from_slice(x.coords());
            }
        }
        key
    });
    Ok(FactorList { unit, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Field;

    fn setup(p: u64) -> PolyRing<Fpu> {
        PolyRing::new(RationalFunctions::new(FiniteField::prime(p).unwrap(), "u"), "x")
    }

    #[test]
    fn x_squared_minus_u_is_irreducible() {
        let ring = setup(2);
        let k = ring.base();
        let f = ring.from_coeffs(vec![k.neg(&k.var()), k.zero(), k.one()]);
        let fl = factor_over_function_field(&ring, &f).unwrap();
        assert!(fl.is_irreducible());
        let g = ring.from_coeffs(vec![k.neg(&k.var()), k.zero(), k.zero(), k.zero(), k.one()]);
        assert!(factor_over_function_field(&ring, &g).unwrap().is_irreducible());
    }

    #[test]
    fn splits_when_possible() {
        let ring = setup(3);
        let k = ring.base();
        let u = k.var();
        // (x - u)(x + u)^2 (x^2 + u/(u+1))
        let a = ring.from_coeffs(vec![k.neg(&u), k.one()]);
        let b = ring.from_coeffs(vec![u.clone(), k.one()]);
        let c = ring.from_coeffs(vec![k.div(&u, &k.add(&u, &k.one())).unwrap(), k.zero(), k.one()]);
        let f = ring.mul(&ring.mul(&a, &ring.pow(&b, 2)), &c);
        let scaled = ring.scale(&f, &k.from_int(2));
        let fl = factor_over_function_field(&ring, &scaled).unwrap();
        assert_eq!(fl.expand(&ring), scaled);
        assert_eq!(fl.factors.len(), 3);
        assert!(fl.factors.contains(&(b, 2)));
        assert!(fl.factors.contains(&(c, 1)));
    }

    #[test]
    fn degree_bound_is_a_capability_error() {
        let ring = setup(2);
        let f = ring.monomial(ring.base().one(), 7);
        assert!(matches!(
            factor_over_function_field(&ring, &f),
            Err(Error::Capability(_))
        ));
    }
}
