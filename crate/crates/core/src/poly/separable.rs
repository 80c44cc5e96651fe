//! Factorization over a residue field and separability of irreducibles.

use super::factor_fq::{factor_over_finite_field, squarefree_decomposition};
use super::factor_fpu::factor_over_function_field;
use super::{FactorList, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::ring::{Field, Ring};
use crate::scalars::{FiniteField, ResidueField, ResidueScalar};

/// Irreducible factorization over either kind of residue field.
pub fn factor(ring: &PolyRing<ResidueField>, f: &Poly<ResidueScalar>) -> Result<FactorList<ResidueScalar>> {
    if f.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    match ring.base() {
        ResidueField::Finite(k) => {
            let inner = PolyRing::new(k.clone(), ring.var());
            let g = ring.map(f, &inner, |c| match c {
                ResidueScalar::Finite(x) => x.clone(),
                _ => panic!("residue scalar from a different field"),
            });
            let fl = factor_over_finite_field(&inner, &g);
            Ok(FactorList {
                unit: ResidueScalar::Finite(fl.unit),
                factors: fl
                    .factors
                    .into_iter()
                    .map(|(h, e)| (inner.map(&h, ring, |c| ResidueScalar::Finite(c.clone())), e))
                    .collect(),
            })
        }
        ResidueField::Function(k) => {
            let inner = PolyRing::new(k.clone(), ring.var());
            let g = ring.map(f, &inner, |c| match c {
                ResidueScalar::Function(x) => x.clone(),
                _ => panic!("residue scalar from a different field"),
            });
            let fl = factor_over_function_field(&inner, &g)?;
            Ok(FactorList {
                unit: ResidueScalar::Function(fl.unit),
                factors: fl
                    .factors
                    .into_iter()
                    .map(|(h, e)| (inner.map(&h, ring, |c| ResidueScalar::Function(c.clone())), e))
                    .collect(),
            })
        }
    }
}

/// `g(x) = h(x^(p^m))` with `h` separable.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparabilityProfile {
    pub m: u32,
    pub h: Poly<ResidueScalar>,
}

impl SeparabilityProfile {
    /// Separable degree of `k[x]/(g)` over `k`.
    pub fn separable_degree(&self) -> usize {
        self.h.degree().unwrap_or(0)
    }
}

/// `x^(p^m) - a` with `m >= 1` is irreducible iff `a` is not a `p`-th
/// power. `None` for other shapes.
fn binomial_irreducible(ring: &PolyRing<ResidueField>, g: &Poly<ResidueScalar>) -> Option<bool> {
    let k = ring.base();
    let p = k.characteristic() as usize;
    let n = g.degree()?;
    let mut q = p;
    while q < n && p > 1 {
        q *= p;
    }
    if p < 2 || q != n || g.coeffs()[1..n].iter().any(|c| !k.is_zero(c)) {
        return None;
    }
    let a = k.neg(&k.div(&g.coeffs()[0], g.lc()?)?);
    Some(k.pth_root(&a).is_none())
}

/// Splits an irreducible `g` into its separable part `h` and the largest
/// `m` with `g(x) = h(x^(p^m))`. The result is monic.
pub fn separability_profile(ring: &PolyRing<ResidueField>, g: &Poly<ResidueScalar>) -> Result<SeparabilityProfile> {
    let irreducible = match binomial_irreducible(ring, g) {
        Some(known) => known,
        None => factor(ring, g)?.is_irreducible(),
    };
    if !irreducible {
        return Err(Error::invalid(format!("{} is reducible", ring.display(g))));
    }
    let p = ring.base().characteristic() as usize;
    let mut h = ring.monic(g).1;
    let mut m = 0;
    if p == 0 {
        return Ok(SeparabilityProfile { m, h });
    }
    while ring.derivative(&h).is_zero() {
        h = ring.deflate(&h, p).expect("zero derivative means a polynomial in x^p");
        m += 1;
    }
    Ok(SeparabilityProfile { m, h })
}

/// Number of distinct roots of `f` in an algebraic closure.
pub fn squarefree_part_degree(ring: &PolyRing<FiniteField>, f: &Poly<crate::scalars::FqElem>) -> usize {
    squarefree_decomposition(ring, f)
        .iter()
        .map(|(g, _)| g.degree().unwrap_or(0))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inseparable_profiles() {
        let k = ResidueField::function_field(2).unwrap();
        let ring = PolyRing::new(k.clone(), "x");
        let u = k.u().unwrap();
        let x_minus_u = ring.from_coeffs(vec![k.neg(&u), k.one()]);
        for n in [2usize, 4] {
            let g = ring.add(&ring.monomial(k.one(), n), &ring.constant(k.neg(&u)));
            let prof = separability_profile(&ring, &g).unwrap();
            assert_eq!(prof.m, n.trailing_zeros());
            assert_eq!(prof.h, x_minus_u);
            assert_eq!(ring.inflate(&prof.h, n), g);
        }
        // x^9 - u^3 = (x^3 - u)^3 over F_3(u)
        let k3 = ResidueField::function_field(3).unwrap();
        let r3 = PolyRing::new(k3.clone(), "x");
        let u3 = k3.pow(&k3.u().unwrap(), 3);
        let g = r3.add(&r3.monomial(k3.one(), 9), &r3.constant(k3.neg(&u3)));
        assert!(matches!(separability_profile(&r3, &g), Err(Error::InvalidInput(_))));
        let g = r3.add(&r3.monomial(k3.one(), 9), &r3.constant(k3.neg(&k3.u().unwrap())));
        assert_eq!(separability_profile(&r3, &g).unwrap().m, 2);
    }

    #[test]
    fn finite_fields_are_perfect() {
        let k = ResidueField::finite(FiniteField::prime(2).unwrap());
        let ring = PolyRing::new(k.clone(), "x");
        let g = ring.from_coeffs(vec![k.one(), k.one(), k.one()]);
        let prof = separability_profile(&ring, &g).unwrap();
        assert_eq!((prof.m, prof.h), (0, g.clone()));
        let reducible = ring.mul(&g, &ring.x());
        assert!(matches!(separability_profile(&ring, &reducible), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn distinct_root_counts() {
        let f3 = PolyRing::new(FiniteField::prime(3).unwrap(), "x");
        let p = |c: &[i64]| f3.from_coeffs(c.iter().map(|&v| f3.base().from_int(v)).collect());
        assert_eq!(squarefree_part_degree(&f3, &p(&[0, 0, -1, 1])), 2);
        assert_eq!(squarefree_part_degree(&f3, &p(&[1, 0, 1])), 2);
        let f2 = PolyRing::new(FiniteField::prime(2).unwrap(), "x");
        let q = f2.from_coeffs(vec![f2.base().one(), f2.base().zero(), f2.base().one()]);
        assert_eq!(squarefree_part_degree(&f2, &q), 1);
    }
}
