//! The quadratic family `R[X]/(X^2 - 2aX - b)` over `Z_(p)`.

use serde::Serialize;

use crate::algebra::FiniteFlatAlgebra;
use crate::error::{Error, Result};
use crate::poly::PolyRing;
use crate::ring::Ring;
use crate::scalars::{Dvr, Valuation};
use crate::verdict::{theorem_verdict, Slack};

/// The four closed-form predicates for the family, valid in residue
/// characteristic 2 once `b` is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GridCriteria {
    pub cokernel_defined_over_residue: bool,
    pub regular: bool,
    pub separable: bool,
    pub tame: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridRow {
    pub a: i64,
    pub b: i64,
    /// `(a, b)` after `X -> X + 1` when `b` was a unit.
    pub normalized: (i64, i64),
    pub gram: Vec<Vec<String>>,
    pub f: Valuation,
    pub slack: Slack,
    pub computed: GridCriteria,
    /// Only for `p = 2`.
    pub expected: Option<GridCriteria>,
    pub matches: Option<bool>,
}

fn v(p: i64, mut n: i64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// Moves a unit `b` into `m_R` by `X -> X + 1`. Over `F_2` every unit is a
/// square, so one shift suffices. Only meaningful for `p = 2`.
pub fn normalize(p: u64, a: i64, b: i64) -> (i64, i64) {
    if p == 2 && b.rem_euclid(2) == 1 {
        (a - 1, b + 2 * a - 1)
    } else {
        (a, b)
    }
}

pub fn expected_criteria(a: i64, b: i64) -> GridCriteria {
    GridCriteria {
        cokernel_defined_over_residue: v(2, a * a + b) == 0,
        regular: v(2, b) <= 1,
        separable: v(2, b) >= 1,
        tame: v(2, b) == 0,
    }
}

pub fn grid_row(p: u64, a: i64, b: i64) -> Result<GridRow> {
    let dvr = Dvr::integers_at(p)?;
    let (na, nb) = normalize(p, a, b);
    let f = PolyRing::new(dvr.clone(), "x").from_coeffs(vec![dvr.from_int(-nb), dvr.from_int(-2 * na), dvr.one()]);
    let alg = FiniteFlatAlgebra::from_monogenic(&dvr, &f)?;
    let verdict = theorem_verdict(&alg)?;
    let computed = GridCriteria {
        cokernel_defined_over_residue: verdict.cokernel_defined_over_residue,
        regular: verdict.regular,
        separable: verdict.separable,
        tame: verdict.tame,
    };
    let expected = (p == 2).then(|| expected_criteria(na, nb));
    Ok(GridRow {
        a,
        b,
        normalized: (na, nb),
        gram: alg.trace_gram().iter().map(|r| r.iter().map(|x| dvr.render(x)).collect()).collect(),
        f: verdict.f,
        slack: verdict.slack,
        computed,
        matches: expected.map(|e| e == computed),
        expected,
    })
}

pub fn quadratic_grid(p: u64, a_list: &[i64], b_list: &[i64]) -> Result<Vec<GridRow>> {
    if a_list.is_empty() || b_list.is_empty() {
        return Err(Error::invalid("grid needs at least one a and one b"));
    }
    let mut rows = Vec::with_capacity(a_list.len() * b_list.len());
    for &a in a_list {
        for &b in b_list {
            rows.push(grid_row(p, a, b)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(normalize(2, 1, 3), (0, 4));
        assert_eq!(normalize(2, 0, 1), (-1, 0));
        assert_eq!(normalize(2, 3, 6), (3, 6));
        assert_eq!(normalize(3, 1, 1), (1, 1));
    }

    #[test]
    fn example_point() {
        let r = grid_row(2, 1, 2).unwrap();
        assert_eq!(r.f, Valuation::Finite(2));
        assert_eq!(r.matches, Some(true));
        assert!(r.computed.cokernel_defined_over_residue && r.computed.regular);
        let unit = grid_row(2, 1, 3).unwrap();
        assert_eq!(unit.matches, Some(true));
        assert_eq!(grid_row(3, 1, 1).unwrap().matches, None);
    }
}
