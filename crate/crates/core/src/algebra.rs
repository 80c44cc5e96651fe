//! Finite free algebras given by structure constants, over the DVR and over
//! its residue field.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, Ring};
use crate::scalars::{Dvr, DvrScalar, FieldEmbedding, ResidueField, ResidueScalar};

/// A commutative algebra on a free basis `x_0..x_{n-1}` with
/// `x_i x_j = sum_k c[i][j][k] x_k`.
#[derive(Clone, Debug)]
pub struct TableAlgebra<R: Ring> {
    ring: R,
    constants: Vec<Vec<Vec<R::Elem>>>,
    unit: Vec<R::Elem>,
}

/// A failed structural identity, with the basis indices involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    Commutativity { i: usize, j: usize },
    Associativity { i: usize, j: usize, l: usize },
    Unit { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {s}"),
            Violation::Commutativity { i, j } => write!(f, "commutativity fails at ({i},{j})"),
            Violation::Associativity { i, j, l } => {
                write!(f, "associativity fails at ({i},{j},{l})")
            }
            Violation::Unit { i } => write!(f, "unit law fails at {i}"),
        }
    }
}

impl<R: Ring> TableAlgebra<R> {
    /// Builds a table after checking its shape; the algebra laws are checked
    /// separately by [`TableAlgebra::validate`].
    pub fn new(ring: R, constants: Vec<Vec<Vec<R::Elem>>>, unit: Vec<R::Elem>) -> Result<Self> {
        let n = unit.len();
        let shape_ok = constants.len() == n
            && constants
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.len() == n));
        if n == 0 || !shape_ok {
            return Err(Error::invalid(format!(
                "structure constants must have shape {n}x{n}x{n} with n >= 1"
            )));
        }
        Ok(TableAlgebra {
            ring,
            constants,
            unit,
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.unit.len()
    }

    pub fn constants(&self) -> &[Vec<Vec<R::Elem>>] {
        &self.constants
    }

    pub fn unit(&self) -> &[R::Elem] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vec<R::Elem> {
        let mut v = vec![self.ring.zero(); self.rank()];
        v[i] = self.ring.one();
        v
    }

    pub fn zero(&self) -> Vec<R::Elem> {
        vec![self.ring.zero(); self.rank()]
    }

    fn check_len(&self, a: &[R::Elem]) -> Result<()> {
        if a.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "coordinate vector has length {}, expected {}",
                a.len(),
                self.rank()
            )))
        }
    }

    pub fn mul(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        let n = self.rank();
        let mut out = self.zero();
        for i in (0..n).filter(|&i| !r.is_zero(&a[i])) {
            for j in (0..n).filter(|&j| !r.is_zero(&b[j])) {
                let ab = r.mul(&a[i], &b[j]);
                for (k, c) in self.constants[i][j].iter().enumerate() {
                    if !r.is_zero(c) {
                        out[k] = r.mul_add(&ab, c, &out[k]);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[R::Elem], mut k: u128) -> Vec<R::Elem> {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Matrix of multiplication by `a`; column `j` holds `a * x_j`.
    pub fn mult_operator(&self, a: &[R::Elem]) -> Result<Matrix<R::Elem>> {
        self.check_len(a)?;
        let cols: Vec<_> = (0..self.rank()).map(|j| self.mul(a, &self.basis(j))).collect();
        Ok(linalg::from_columns(&cols))
    }

    pub fn trace(&self, a: &[R::Elem]) -> Result<R::Elem> {
        let m = self.mult_operator(a)?;
        Ok(self.ring.sum((0..self.rank()).map(|i| &m[i][i]).collect::<Vec<_>>()))
    }

    /// Traces of the basis elements, from which every trace is linear.
    pub fn basis_traces(&self) -> Vec<R::Elem> {
        (0..self.rank())
            .map(|i| {
                self.ring
                    .sum((0..self.rank()).map(|k| &self.constants[i][k][k]).collect::<Vec<_>>())
            })
            .collect()
    }

    /// `(tr(x_i x_j))_{i,j}`.
    pub fn trace_gram(&self) -> Matrix<R::Elem> {
        let t = self.basis_traces();
        let n = self.rank();
        let r = &self.ring;
        let mut g = linalg::zeros(r, n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.constants[i][j]
                    .iter()
                    .zip(&t)
                    .fold(r.zero(), |acc, (c, tk)| r.mul_add(c, tk, &acc));
                g[i][j] = v.clone();
                g[j][i] = v;
            }
        }
        g
    }

    /// Checks commutativity, associativity and the unit law on every index.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.constants[i][j] != self.constants[j][i] {
                    out.push(Violation::Commutativity { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let xij = &self.constants[i][j];
                for l in 0..n {
                    let left = self.mul(xij, &self.basis(l));
                    let right = self.mul(&self.basis(i), &self.constants[j][l]);
                    if left != right {
                        out.push(Violation::Associativity { i, j, l });
                    }
                }
            }
        }
        for i in 0..n {
            if self.mul(&self.unit, &self.basis(i)) != self.basis(i) {
                out.push(Violation::Unit { i });
            }
        }
        out
    }

    /// Entrywise image under a ring map.
    pub fn map<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> TableAlgebra<S> {
        TableAlgebra {
            constants: self
                .constants
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(&f).collect()).collect())
                .collect(),
            unit: self.unit.iter().map(&f).collect(),
            ring: target,
        }
    }

    /// Block-diagonal product; the second factor's basis follows the first.
    pub fn product(&self, other: &Self) -> Self {
        let (n, m) = (self.rank(), other.rank());
        let r = &self.ring;
        let mut constants = vec![vec![vec![r.zero(); n + m]; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                constants[i][j][..n].clone_from_slice(&self.constants[i][j]);
            }
        }
        for i in 0..m {
            for j in 0..m {
                constants[n + i][n + j][n..].clone_from_slice(&other.constants[i][j]);
            }
        }
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        TableAlgebra {
            ring: r.clone(),
            constants,
            unit,
        }
    }

    /// Table of `R[x]/(f)` on the basis `1, x, ..., x^{n-1}`, `f` monic.
    pub fn monogenic(ring: &R, f: &Poly<R::Elem>) -> Result<Self> {
        let polys = PolyRing::new(ring.clone(), "x");
        let n = match f.degree() {
            Some(n) if n >= 1 && polys.is_monic(f) => n,
            _ => {
                return Err(Error::invalid(format!(
                    "monogenic algebra needs a monic polynomial of degree >= 1, got {}",
                    polys.display(f)
                )))
            }
        };
        let reduce = |k: usize| -> Vec<R::Elem> {
            let r = polys.divrem_monic(&polys.monomial(ring.one(), k), f).1;
            (0..n).map(|i| polys.coeff_or_zero(&r, i)).collect()
        };
        let powers: Vec<_> = (0..2 * n - 1).map(reduce).collect();
        let constants = (0..n)
            .map(|i| (0..n).map(|j| powers[i + j].clone()).collect())
            .collect();
        let mut unit = vec![ring.zero(); n];
        unit[0] = ring.one();
        Ok(TableAlgebra {
            ring: ring.clone(),
            constants,
            unit,
        })
    }
}

impl<F: Field> TableAlgebra<F> {
    /// Monic minimal polynomial of `b`: the first linear dependence among
    /// `1, b, b^2, ...`.
    pub fn min_poly(&self, b: &[F::Elem]) -> Result<Poly<F::Elem>> {
        self.check_len(b)?;
        Ok(self.min_poly_relative(b, &self.unit))
    }

    /// Minimal polynomial of `b` inside the ideal `eB` with identity `e`
    /// (an idempotent); `b` must lie in `eB`.
    pub fn min_poly_relative(&self, b: &[F::Elem], e: &[F::Elem]) -> Poly<F::Elem> {
        let field = &self.ring;
        let polys = PolyRing::new(field.clone(), "T");
        let mut powers = vec![e.to_vec()];
        loop {
            let next = self.mul(powers.last().expect("nonempty"), b);
            if let Some(c) = linalg::coordinates(field, &powers, &next) {
                let mut coeffs: Vec<_> = c.iter().map(|x| field.neg(x)).collect();
                coeffs.push(field.one());
                return polys.from_coeffs(coeffs);
            }
            powers.push(next);
        }
    }
}

/// How an algebra over the DVR was constructed.
#[derive(Clone, Debug)]
pub enum Provenance {
    Monogenic(Poly<DvrScalar>),
    Product(Vec<FiniteFlatAlgebra>),
    Table,
}

/// A free algebra of finite rank over one of the DVR backends.
#[derive(Clone, Debug)]
pub struct FiniteFlatAlgebra {
    table: TableAlgebra<Dvr>,
    provenance: Provenance,
}

impl FiniteFlatAlgebra {
    /// `R[X]/(f)` for a monic `f` of degree `n >= 1`.
    pub fn from_monogenic(dvr: &Dvr, f: &Poly<DvrScalar>) -> Result<Self> {
        Ok(FiniteFlatAlgebra {
            table: TableAlgebra::monogenic(dvr, f)?,
            provenance: Provenance::Monogenic(f.clone()),
        })
    }

    pub fn from_table(table: TableAlgebra<Dvr>) -> Self {
        FiniteFlatAlgebra {
            table,
            provenance: Provenance::Table,
        }
    }

    pub fn product(a: &Self, b: &Self) -> Result<Self> {
        if a.dvr() != b.dvr() {
            return Err(Error::invalid(format!(
                "product of algebras over {} and {}",
                a.dvr().descriptor(),
                b.dvr().descriptor()
            )));
        }
        let mut factors = Vec::new();
        for x in [a, b] {
            match &x.provenance {
                Provenance::Product(fs) => factors.extend(fs.iter().cloned()),
                _ => factors.push(x.clone()),
            }
        }
        Ok(FiniteFlatAlgebra {
            table: a.table.product(&b.table),
            provenance: Provenance::Product(factors),
        })
    }

    pub fn dvr(&self) -> &Dvr {
        self.table.ring()
    }

    pub fn table(&self) -> &TableAlgebra<Dvr> {
        &self.table
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn rank(&self) -> usize {
        self.table.rank()
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.table.validate()
    }

    pub fn mult_operator(&self, a: &[DvrScalar]) -> Result<Matrix<DvrScalar>> {
        self.table.mult_operator(a)
    }

    pub fn trace(&self, a: &[DvrScalar]) -> Result<DvrScalar> {
        self.table.trace(a)
    }

    pub fn trace_gram(&self) -> Matrix<DvrScalar> {
        self.table.trace_gram()
    }

    /// `A (x) k_R`, reduced entrywise.
    pub fn base_change_fiber(&self) -> FiberAlgebra {
        let dvr = self.dvr();
        let table = self.table.map(dvr.residue_field().clone(), |x| dvr.reduce(x));
        let provenance = match &self.provenance {
            Provenance::Monogenic(f) => {
                let k = PolyRing::new(dvr.residue_field().clone(), "x");
                FiberProvenance::Monogenic(PolyRing::new(dvr.clone(), "x").map(f, &k, |c| dvr.reduce(c)))
            }
            Provenance::Product(fs) => {
                FiberProvenance::Product(fs.iter().map(Self::base_change_fiber).collect())
            }
            Provenance::Table => FiberProvenance::Table,
        };
        FiberAlgebra { table, provenance }
    }

    /// The same algebra on the basis given by the columns of `p`, which
    /// must be invertible over `R`. The result is a raw table.
    pub fn change_basis(&self, p: &Matrix<DvrScalar>) -> Result<Self> {
        let dvr = self.dvr();
        let inv = linalg::inverse_over_dvr(dvr, p)
            .ok_or_else(|| Error::invalid("basis change is not invertible over R"))?;
        let n = self.rank();
        let cols: Vec<Vec<DvrScalar>> = linalg::transpose(p);
        let constants = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| linalg::mat_vec(dvr, &inv, &self.table.mul(&cols[i], &cols[j])))
                    .collect()
            })
            .collect();
        let unit = linalg::mat_vec(dvr, &inv, self.table.unit());
        Ok(Self::from_table(TableAlgebra::new(dvr.clone(), constants, unit)?))
    }
}

#[derive(Clone, Debug)]
pub enum FiberProvenance {
    Monogenic(Poly<ResidueScalar>),
    Product(Vec<FiberAlgebra>),
    Table,
}

/// A finite-dimensional algebra over the residue field.
#[derive(Clone, Debug)]
pub struct FiberAlgebra {
    table: TableAlgebra<ResidueField>,
    provenance: FiberProvenance,
}

impl FiberAlgebra {
    pub fn from_table(table: TableAlgebra<ResidueField>) -> Self {
        FiberAlgebra {
            table,
            provenance: FiberProvenance::Table,
        }
    }

    pub fn from_monogenic(field: &ResidueField, f: &Poly<ResidueScalar>) -> Result<Self> {
        let monic = PolyRing::new(field.clone(), "x").monic(f).1;
        Ok(FiberAlgebra {
            table: TableAlgebra::monogenic(field, &monic)?,
            provenance: FiberProvenance::Monogenic(monic),
        })
    }

    pub fn field(&self) -> &ResidueField {
        self.table.ring()
    }

    pub fn table(&self) -> &TableAlgebra<ResidueField> {
        &self.table
    }

    pub fn provenance(&self) -> &FiberProvenance {
        &self.provenance
    }

    pub fn rank(&self) -> usize {
        self.table.rank()
    }

    pub fn min_poly(&self, b: &[ResidueScalar]) -> Result<Poly<ResidueScalar>> {
        self.table.min_poly(b)
    }

    /// Forgets the construction, keeping only the table.
    pub fn as_table(&self) -> Self {
        Self::from_table(self.table.clone())
    }

    /// Scalar extension along an embedding of finite fields.
    pub fn extend_scalars(&self, emb: &FieldEmbedding) -> Result<Self> {
        let source = ResidueField::finite(emb.source().clone());
        if *self.field() != source {
            return Err(Error::invalid("embedding does not start at the fiber's field"));
        }
        let target = ResidueField::finite(emb.target().clone());
        let f = |x: &ResidueScalar| match x {
            ResidueScalar::Finite(a) => ResidueScalar::Finite(emb.apply(a)),
            ResidueScalar::Function(_) => unreachable!("finite field checked above"),
        };
        let provenance = match &self.provenance {
            FiberProvenance::Monogenic(g) => FiberProvenance::Monogenic(
                PolyRing::new(self.field().clone(), "x").map(g, &PolyRing::new(target.clone(), "x"), f),
            ),
            FiberProvenance::Product(fs) => FiberProvenance::Product(
                fs.iter().map(|b| b.extend_scalars(emb)).collect::<Result<_>>()?,
            ),
            FiberProvenance::Table => FiberProvenance::Table,
        };
        Ok(FiberAlgebra {
            table: self.table.map(target, f),
            provenance,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FiniteField;

    fn z(p: u64) -> Dvr {
        Dvr::integers_at(p).unwrap()
    }

    fn poly(dvr: &Dvr, c: &[i64]) -> Poly<DvrScalar> {
        PolyRing::new(dvr.clone(), "x").from_coeffs(c.iter().map(|&v| dvr.from_int(v)).collect())
    }

    fn ints(dvr: &Dvr, m: &Matrix<DvrScalar>) -> Vec<Vec<String>> {
        m.iter().map(|r| r.iter().map(|x| dvr.render(x)).collect()).collect()
    }

    #[test]
    fn monogenic_tables() {
        let z3 = z(3);
        let a = FiniteFlatAlgebra::from_monogenic(&z3, &poly(&z3, &[-3, 0, 1])).unwrap();
        assert!(a.validate().is_empty());
        let x = a.table().basis(1);
        assert_eq!(ints(&z3, &a.mult_operator(&x).unwrap()), [["0", "3"], ["1", "0"]]);
        assert_eq!(ints(&z3, &a.trace_gram()), [["2", "0"], ["0", "6"]]);
        let one = a.table().unit().to_vec();
        assert_eq!(a.trace(&one).unwrap(), z3.from_int(2));
        assert!(FiniteFlatAlgebra::from_monogenic(&z3, &poly(&z3, &[1, 2])).is_err());
        let r = FiniteFlatAlgebra::from_monogenic(&z3, &poly(&z3, &[-1, 1])).unwrap();
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn quadratic_family_traces() {
        let z2 = z(2);
        for (a, b) in [(0, 2), (1, 6), (3, 12)] {
            let alg = FiniteFlatAlgebra::from_monogenic(&z2, &poly(&z2, &[-b, -2 * a, 1])).unwrap();
            let x = alg.table().basis(1);
            assert_eq!(alg.trace(&x).unwrap(), z2.from_int(2 * a));
            let x2 = alg.table().mul(&x, &x);
            assert_eq!(alg.trace(&x2).unwrap(), z2.from_int(4 * a * a + 2 * b));
        }
    }

    #[test]
    fn products_are_block_diagonal() {
        let z3 = z(3);
        let a = FiniteFlatAlgebra::from_monogenic(&z3, &poly(&z3, &[-3, 0, 1])).unwrap();
        let r = FiniteFlatAlgebra::from_monogenic(&z3, &poly(&z3, &[0, 1])).unwrap();
        let p = FiniteFlatAlgebra::product(&a, &r).unwrap();
        assert_eq!(p.rank(), 3);
        assert!(p.validate().is_empty());
        assert_eq!(
            ints(&z3, &p.trace_gram()),
            [["2", "0", "0"], ["0", "6", "0"], ["0", "0", "1"]]
        );
        let z2 = z(2);
        let other = FiniteFlatAlgebra::from_monogenic(&z2, &poly(&z2, &[0, 1])).unwrap();
        assert!(FiniteFlatAlgebra::product(&a, &other).is_err());
    }

    #[test]
    fn validation_reports_indices() {
        let z3 = z(3);
        let a = FiniteFlatAlgebra::from_monogenic(&z3, &poly(&z3, &[-3, 0, 1])).unwrap();
        let mut c = a.table().constants().to_vec();
        c[0][1][0] = z3.from_int(1);
        let bad = TableAlgebra::new(z3.clone(), c, a.table().unit().to_vec()).unwrap();
        let v = bad.validate();
        assert!(v.contains(&Violation::Commutativity { i: 0, j: 1 }));
        assert!(v.iter().any(|x| matches!(x, Violation::Associativity { .. })));
        assert!(TableAlgebra::new(z3.clone(), vec![], vec![]).is_err());
    }

    #[test]
    fn fibers_and_min_polys() {
        let z3 = z(3);
        let a = FiniteFlatAlgebra::from_monogenic(&z3, &poly(&z3, &[-3, 0, 1])).unwrap();
        let b = a.base_change_fiber();
        let k = b.field().clone();
        let x = b.table().basis(1);
        let t = PolyRing::new(k.clone(), "T");
        assert_eq!(b.min_poly(&x).unwrap(), t.monomial(k.one(), 2));
        assert_eq!(b.min_poly(b.table().unit()).unwrap(), t.from_coeffs(vec![k.from_int(-1), k.one()]));
        let gram = a.trace_gram();
        let reduced: Matrix<ResidueScalar> =
            gram.iter().map(|r| r.iter().map(|v| z3.reduce(v)).collect()).collect();
        assert_eq!(b.table().trace_gram(), reduced);
        let c = FiniteFlatAlgebra::from_monogenic(&z3, &poly(&z3, &[-1, 0, 1])).unwrap();
        let cx = c.base_change_fiber().table().basis(1);
        assert_eq!(
            c.base_change_fiber().min_poly(&cx).unwrap(),
            t.from_coeffs(vec![k.from_int(-1), k.zero(), k.one()])
        );
    }

    #[test]
    fn basis_change_preserves_laws() {
        let z2 = z(2);
        let a = FiniteFlatAlgebra::from_monogenic(&z2, &poly(&z2, &[-2, -2, 1])).unwrap();
        let p: Matrix<DvrScalar> = [[1, 1], [2, 3]]
            .iter()
            .map(|r| r.iter().map(|&v| z2.from_int(v)).collect())
            .collect();
        let b = a.change_basis(&p).unwrap();
        assert!(b.validate().is_empty());
        let det = |m: &Matrix<DvrScalar>| z2.valuation(&linalg::det_over_dvr(&z2, m));
        assert_eq!(det(&a.trace_gram()), det(&b.trace_gram()));
    }

    #[test]
    fn residue_extension() {
        let f2 = FiniteField::prime(2).unwrap();
        let f4 = FiniteField::new(2, 2).unwrap();
        let k = ResidueField::finite(f2.clone());
        let g = PolyRing::new(k.clone(), "x").from_coeffs(vec![k.one(), k.one(), k.one()]);
        let b = FiberAlgebra::from_monogenic(&k, &g).unwrap();
        let e = b.extend_scalars(&f2.embedding_into(&f4).unwrap()).unwrap();
        assert_eq!(e.field().describe(), "F_4");
        assert!(e.table().validate().is_empty());
    }
}
