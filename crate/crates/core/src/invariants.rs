//! Invariants over the DVR: Smith form, the discriminant valuation `f`,
//! the cokernel of the trace pairing, and regularity via `p/p^2`.

use serde::Serialize;

use crate::algebra::{FiberAlgebra, FiniteFlatAlgebra, Provenance};
use crate::error::{Error, Result};
use crate::fiber::{residue_kernel, FiberReport, LocalFactor};
use crate::linalg::{self, Matrix};
use crate::poly::PolyRing;
use crate::ring::Ring;
use crate::scalars::{Dvr, DvrScalar, Valuation};

/// `U M V = diag(pi^{e_1}, ..., pi^{e_r}, 0, ...)` with `U`, `V` invertible.
#[derive(Clone, Debug)]
pub struct SmithProfile {
    /// Nondecreasing exponents of the nonzero diagonal entries.
    pub exponents: Vec<u64>,
    /// Number of zero diagonal entries, `min(rows, cols) - exponents.len()`.
    pub rank_deficiency: usize,
    pub u: Matrix<DvrScalar>,
    pub v: Matrix<DvrScalar>,
    pub diagonal: Matrix<DvrScalar>,
}

impl SmithProfile {
    pub fn length(&self) -> u64 {
        self.exponents.iter().sum()
    }

    /// Recomputes `U M V` and compares it with the diagonal form, and checks
    /// that both witnesses are unimodular.
    pub fn verify(&self, dvr: &Dvr, m: &Matrix<DvrScalar>) -> bool {
        let prod = linalg::mat_mul(dvr, &linalg::mat_mul(dvr, &self.u, m), &self.v);
        let unimodular = |x: &Matrix<DvrScalar>| dvr.is_unit(&linalg::det_over_dvr(dvr, x));
        prod == self.diagonal && unimodular(&self.u) && unimodular(&self.v)
    }
}

/// Elementary divisor exponents and rank deficiency without witnesses:
/// fraction-free elimination, reading `e_t` off successive pivot
/// valuations.
pub fn smith_exponents(dvr: &Dvr, m: &Matrix<DvrScalar>) -> (Vec<u64>, usize) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Matrix<DvrScalar> = m.iter().map(|row| clear_denominators(dvr, row)).collect();
    let mut prev = dvr.one();
    let mut exponents = Vec::new();
    let mut before = 0;
    for t in 0..rows.min(cols) {
        let Some((val, i, j)) = least_valuation(dvr, &a, t) else { break };
        a.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        let pivot = a[t][t].clone();
        let (top, rest) = a.split_at_mut(t + 1);
        for ai in rest.iter_mut() {
            let c = std::mem::replace(&mut ai[t], dvr.zero());
            for j in t + 1..cols {
                let w = dvr.sub(&dvr.mul(&pivot, &ai[j]), &dvr.mul(&c, &top[t][j]));
                ai[j] = dvr.exact_quotient(&w, &prev).expect("Bareiss division is exact");
            }
        }
        exponents.push(val - before);
        before = val;
        prev = pivot;
    }
    let deficiency = rows.min(cols) - exponents.len();
    (exponents, deficiency)
}

/// The exponents below `cap`, by elimination modulo `pi^cap`. Zero
/// divisors and exponents `>= cap` are both missing from the result.
pub fn smith_exponents_below(dvr: &Dvr, m: &Matrix<DvrScalar>, cap: u64) -> Vec<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Matrix<DvrScalar> = m.iter().map(|row| row.iter().map(|x| dvr.truncate(x, cap)).collect()).collect();
    let mut exponents = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((val, i, j)) = least_valuation(dvr, &a, t) else { break };
        a.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        let (top, rest) = a.split_at_mut(t + 1);
        let pivot = &top[t][t];
        for ai in rest.iter_mut() {
            let x = std::mem::replace(&mut ai[t], dvr.zero());
            if dvr.is_zero(&x) {
                continue;
            }
            let c = dvr.truncate(&dvr.checked_div(&x, pivot).expect("pivot has least valuation"), cap);
            for j in t + 1..cols {
                ai[j] = dvr.truncate(&dvr.sub(&ai[j], &dvr.mul(&c, &top[t][j])), cap);
            }
        }
        exponents.push(val);
    }
    exponents
}

fn clear_denominators(dvr: &Dvr, row: &[DvrScalar]) -> Vec<DvrScalar> {
    let mut row = row.to_vec();
    for j in 0..row.len() {
        let d = dvr.denominator(&row[j]);
        if !dvr.is_one(&d) {
            row = linalg::vec_scale(dvr, &d, &row);
        }
    }
    row
}

/// Entry of least finite valuation in the lower-right block from `t`;
/// ties go to the smallest row, then column.
fn least_valuation(dvr: &Dvr, a: &Matrix<DvrScalar>, t: usize) -> Option<(u64, usize, usize)> {
    let mut best: Option<(u64, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if let Some(val) = dvr.valuation(x).finite() {
                if best.is_none_or(|b| val < b.0) {
                    best = Some((val, i, j));
                }
            }
        }
    }
    best
}

/// Smith normal form by valuation pivoting: the remaining entry of least
/// valuation (ties to the lowest row, then column) becomes the pivot.
pub fn smith_over_dvr(dvr: &Dvr, m: &Matrix<DvrScalar>) -> SmithProfile {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut u = linalg::identity(dvr, rows);
    let mut v = linalg::identity(dvr, cols);
    // Clear (unit) denominators row by row so the elimination below stays
    // polynomial; Bareiss keeps every entry a minor of [a | u].
    for i in 0..rows {
        for j in 0..cols {
            let d = dvr.denominator(&a[i][j]);
            if !dvr.is_one(&d) {
                a[i] = linalg::vec_scale(dvr, &d, &a[i]);
                u[i] = linalg::vec_scale(dvr, &d, &u[i]);
            }
        }
    }
    let mut prev = dvr.one();
    let mut pivots: Vec<(DvrScalar, u64)> = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((val, i, j)) = least_valuation(dvr, &a, t) else { break };
        a.swap(t, i);
        u.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        for row in v.iter_mut() {
            row.swap(t, j);
        }
        let pivot = a[t][t].clone();
        let (top, rest) = a.split_at_mut(t + 1);
        let (utop, urest) = u.split_at_mut(t + 1);
        for (ai, ui) in rest.iter_mut().zip(urest.iter_mut()) {
            let c = std::mem::replace(&mut ai[t], dvr.zero());
            let step = |x: &DvrScalar, y: &DvrScalar| {
                let w = dvr.sub(&dvr.mul(&pivot, x), &dvr.mul(&c, y));
                dvr.exact_quotient(&w, &prev).expect("Bareiss division is exact")
            };
            for j in t + 1..cols {
                ai[j] = step(&ai[j], &top[t][j]);
            }
            for j in 0..rows {
                ui[j] = step(&ui[j], &utop[t][j]);
            }
        }
        pivots.push((pivot.clone(), val));
        prev = pivot;
    }
    let rank = pivots.len();
    let pi = dvr.uniformizer();
    // x = pi^k * (unit part), exact on polynomial entries.
    let shift = |x: &DvrScalar, k: u64| dvr.exact_quotient(x, &dvr.pow(&pi, k as u128)).expect("valuation bounds the shift");
    // Units of the Bareiss pivots: pivot_t = pi^{v_t} w_t. Dividing by w_t
    // after shifting out the power of pi keeps every gcd against a unit,
    // which is nearly always coprime.
    let units: Vec<DvrScalar> = pivots.iter().map(|(p, val)| shift(p, *val)).collect();
    for (t, &(_, val)) in pivots.iter().enumerate() {
        for j in t + 1..cols {
            let x = std::mem::replace(&mut a[t][j], dvr.zero());
            if dvr.is_zero(&x) {
                continue;
            }
            let c = dvr.checked_div(&shift(&x, val), &units[t]).expect("unit divisor");
            for row in v.iter_mut() {
                row[j] = dvr.sub(&row[j], &dvr.mul(&c, &row[t]));
            }
        }
    }
    let mut exponents = Vec::with_capacity(rank);
    let mut before = 0;
    for (t, &(_, val)) in pivots.iter().enumerate() {
        let e = val - before;
        u[t] = u[t]
            .iter()
            .map(|x| dvr.checked_div(&shift(x, before), &units[t]).expect("unit divisor"))
            .collect();
        a[t][t] = dvr.pow(&pi, e as u128);
        exponents.push(e);
        before = val;
    }
    if let Some((last, val)) = pivots.last() {
        let w = shift(last, *val);
        for row in u.iter_mut().skip(rank) {
            *row = row
                .iter()
                .map(|x| dvr.checked_div(&shift(x, *val), &w).expect("unit divisor"))
                .collect();
        }
    }
    SmithProfile {
        rank_deficiency: rows.min(cols) - rank,
        exponents,
        u,
        v,
        diagonal: a,
    }
}

#[derive(Clone, Debug)]
pub struct TraceProfile {
    pub gram: Matrix<DvrScalar>,
    pub det: DvrScalar,
    pub f: Valuation,
    pub smith: SmithProfile,
    pub generically_etale: bool,
    pub etale: bool,
    pub cokernel_defined_over_residue: bool,
    pub note: Option<String>,
}

/// Gram matrix, `f = v(det)`, and the cokernel structure, with the
/// cross-checks between them.
pub fn trace_profile(a: &FiniteFlatAlgebra) -> Result<TraceProfile> {
    let dvr = a.dvr();
    let gram = a.trace_gram();
    let det = linalg::det_over_dvr(dvr, &gram);
    let f = dvr.valuation(&det);
    let smith = smith_over_dvr(dvr, &gram);
    let generically_etale = !dvr.is_zero(&det);
    if generically_etale != f.is_finite() || generically_etale != (smith.rank_deficiency == 0) {
        return Err(Error::internal("determinant, valuation and Smith rank disagree on generic etaleness"));
    }
    if let Valuation::Finite(fv) = f {
        if smith.length() != fv {
            return Err(Error::internal(format!(
                "v(det) = {fv} but the Smith exponents sum to {}",
                smith.length()
            )));
        }
    }
    let etale = f == Valuation::Finite(0);
    if etale != (generically_etale && smith.exponents.iter().all(|&e| e == 0)) {
        return Err(Error::internal("f = 0 disagrees with the Smith exponents"));
    }
    let note = (!generically_etale).then(|| {
        format!(
            "trace pairing is degenerate: the cokernel has a free summand of rank {}",
            smith.rank_deficiency
        )
    });
    Ok(TraceProfile {
        cokernel_defined_over_residue: generically_etale && smith.exponents.iter().all(|&e| e <= 1),
        gram,
        det,
        f,
        smith,
        generically_etale,
        etale,
        note,
    })
}

pub fn f_invariant(a: &FiniteFlatAlgebra) -> Valuation {
    a.dvr().valuation(&linalg::det_over_dvr(a.dvr(), &a.trace_gram()))
}

pub fn is_generically_etale(a: &FiniteFlatAlgebra) -> bool {
    f_invariant(a).is_finite()
}

/// `m_R Q = 0`: every elementary divisor exponent is at most 1. False
/// when the trace pairing is degenerate.
pub fn cokernel_defined_over_residue(a: &FiniteFlatAlgebra) -> bool {
    let (exponents, deficiency) = smith_exponents(a.dvr(), &a.trace_gram());
    deficiency == 0 && exponents.iter().all(|&e| e <= 1)
}

/// Generators of `p = ker(A -> k(p))` as an `R`-module: lifts of a basis
/// of the kernel on the fiber, together with `pi x_j`.
pub fn maximal_ideal_module(a: &FiniteFlatAlgebra, fiber: &FiberAlgebra, factor: &LocalFactor) -> Vec<Vec<DvrScalar>> {
    let dvr = a.dvr();
    let mut gens: Vec<Vec<DvrScalar>> = residue_kernel(fiber.table(), factor)
        .iter()
        .map(|v| v.iter().map(|x| dvr.lift(x)).collect())
        .collect();
    let pi = dvr.uniformizer();
    gens.extend((0..a.rank()).map(|j| linalg::vec_scale(dvr, &pi, &a.table().basis(j))));
    gens
}

/// `dim_{k(p)} p/p^2`, computed without localizing: `p/p^2` is killed by
/// `p`, so its `R`-length is its `k`-dimension.
pub fn cotangent_dimension(a: &FiniteFlatAlgebra, gens: &[Vec<DvrScalar>], residue_degree: usize) -> Result<usize> {
    let dvr = a.dvr();
    let n = a.rank();
    // length(p/p^2) = length(A/p^2) - length(A/p), both cokernel lengths.
    // pi^2 A lies in p^2, so every exponent is at most 2 and arithmetic
    // modulo pi^3 is exact.
    let colength = |columns: &[Vec<DvrScalar>], what: &str| {
        let exponents = smith_exponents_below(dvr, &linalg::from_columns(columns), 3);
        if exponents.len() != n {
            return Err(Error::internal(format!("{what} does not contain pi^2 A")));
        }
        Ok(exponents.iter().sum::<u64>() as usize)
    };
    let ideal = colength(gens, "maximal ideal")?;
    if ideal != residue_degree {
        return Err(Error::internal(format!(
            "A/p has length {ideal}, expected [k(p):k] = {residue_degree}"
        )));
    }
    let mut products = Vec::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            products.push(a.table().mul(&gens[i], &gens[j]));
        }
    }
    let length = colength(&products, "p^2")? - ideal;
    if length % residue_degree != 0 {
        return Err(Error::internal(format!(
            "length {length} of p/p^2 is not a multiple of [k(p):k] = {residue_degree}"
        )));
    }
    Ok(length / residue_degree)
}

#[derive(Clone, Debug, Serialize)]
pub struct CotangentEntry {
    pub generators: Vec<Vec<String>>,
    pub dimension: usize,
    pub regular: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CotangentReport {
    pub entries: Vec<CotangentEntry>,
    pub regular: bool,
    /// Verdict of the monogenic membership test, when it applies.
    pub monogenic_check: Option<bool>,
}

/// For monogenic `A = R[X]/(f)`, regularity at `M = (pi, G)` holds iff
/// `f` is not in `M^2`. Writing `f = Q G^2 + S1 G + S0` with `deg S0, S1 <
/// deg G`, membership means `v(S0) >= 2` and `v(S1) >= 1` coefficientwise.
pub fn monogenic_regular_at(dvr: &Dvr, f: &crate::poly::Poly<DvrScalar>, factor: &LocalFactor) -> bool {
    let ring = PolyRing::new(dvr.clone(), "x");
    let g = ring.from_coeffs(factor.residue.poly.coeffs().iter().map(|c| dvr.lift(c)).collect());
    let (_, s) = ring.divrem_monic(f, &ring.mul(&g, &g));
    let (s1, s0) = ring.divrem_monic(&s, &g);
    let at_least = |p: &crate::poly::Poly<DvrScalar>, k: u64| {
        p.coeffs().iter().all(|c| dvr.valuation(c) >= Valuation::Finite(k))
    };
    !(at_least(&s0, 2) && at_least(&s1, 1))
}

/// Cotangent dimensions at every maximal ideal over `m_R`.
pub fn cotangent_report(a: &FiniteFlatAlgebra, fiber: &FiberAlgebra, report: &FiberReport) -> Result<CotangentReport> {
    let dvr = a.dvr();
    let mut entries = Vec::new();
    for factor in &report.factors {
        let gens = maximal_ideal_module(a, fiber, factor);
        let dimension = cotangent_dimension(a, &gens, factor.residue_degree)?;
        if dimension == 0 {
            return Err(Error::internal("zero cotangent space at a maximal ideal"));
        }
        entries.push(CotangentEntry {
            generators: gens.iter().map(|g| g.iter().map(|x| dvr.render(x)).collect()).collect(),
            dimension,
            regular: dimension == 1,
        });
    }
    let regular = entries.iter().all(|e| e.regular);
    let monogenic_check = match a.provenance() {
        Provenance::Monogenic(f) => {
            for (factor, entry) in report.factors.iter().zip(&entries) {
                if monogenic_regular_at(dvr, f, factor) != entry.regular {
                    return Err(Error::internal(format!(
                        "membership test and cotangent dimension {} disagree on regularity",
                        entry.dimension
                    )));
                }
            }
            Some(regular)
        }
        _ => None,
    };
    Ok(CotangentReport {
        entries,
        regular,
        monogenic_check,
    })
}

pub fn is_regular(a: &FiniteFlatAlgebra, fiber: &FiberAlgebra, report: &FiberReport) -> Result<bool> {
    Ok(cotangent_report(a, fiber, report)?.regular)
}
