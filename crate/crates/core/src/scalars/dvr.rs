use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use super::finite_field::FiniteField;
use super::parse::{eval, parse_expr};
use super::ratfun::{Frac, RationalFunctions};
use super::rationals::{int_valuation, Rationals};
use super::residue::{ResidueField, ResidueScalar};
use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

/// A valuation value; `Infinite` is the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Serialized DVR descriptor: `{"kind":"Zp","p":2}`, `{"kind":"kt","q":9}`,
/// `{"kind":"kut","p":2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DvrDescriptor {
    /// `Z` localized at the prime `p`.
    #[serde(rename = "Zp")]
    Zp { p: u64 },
    /// `F_q[t]` localized at `(t)`.
    #[serde(rename = "kt")]
    Kt { q: u64 },
    /// `F_p(u)[t]` localized at `(t)`.
    #[serde(rename = "kut")]
    Kut { p: u64 },
}

impl fmt::Display for DvrDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DvrDescriptor::Zp { p } => write!(f, "Z_({p})"),
            DvrDescriptor::Kt { q } => write!(f, "F_{q}[t]_(t)"),
            DvrDescriptor::Kut { p } => write!(f, "F_{p}(u)[t]_(t)"),
        }
    }
}

/// Short form `zp:P`, `kt:Q` or `kut:P`.
impl std::str::FromStr for DvrDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(format!("backend `{s}` is not zp:P, kt:Q or kut:P"));
        let (kind, n) = s.trim().split_once(':').ok_or_else(bad)?;
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let d = match kind.trim().to_ascii_lowercase().as_str() {
            "zp" => DvrDescriptor::Zp { p: n },
            "kt" => DvrDescriptor::Kt { q: n },
            "kut" => DvrDescriptor::Kut { p: n },
            _ => return Err(bad()),
        };
        Dvr::new(d.clone())?;
        Ok(d)
    }
}

/// A concrete discrete valuation ring.
#[derive(Clone, Debug)]
pub struct Dvr {
    descriptor: DvrDescriptor,
    residue: ResidueField,
    /// Fraction field `k(t)` for the equicharacteristic backends.
    series: Option<RationalFunctions<ResidueField>>,
}

/// An element of a [`Dvr`]: a fraction whose denominator is a unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DvrScalar {
    Rational(BigRational),
    Series(Frac<ResidueScalar>),
}

impl PartialEq for Dvr {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor == other.descriptor
    }
}

impl Dvr {
    pub fn new(descriptor: DvrDescriptor) -> Result<Self> {
        let (residue, series) = match descriptor {
            DvrDescriptor::Zp { p } => (ResidueField::finite(FiniteField::prime(p)?), None),
            DvrDescriptor::Kt { q } => {
                let k = ResidueField::finite(FiniteField::with_order(q)?);
                (k.clone(), Some(RationalFunctions::new(k, "t")))
            }
            DvrDescriptor::Kut { p } => {
                let k = ResidueField::function_field(p)?;
                (k.clone(), Some(RationalFunctions::new(k, "t")))
            }
        };
        Ok(Dvr {
            descriptor,
            residue,
            series,
        })
    }

    pub fn integers_at(p: u64) -> Result<Self> {
        Self::new(DvrDescriptor::Zp { p })
    }

    pub fn power_series(q: u64) -> Result<Self> {
        Self::new(DvrDescriptor::Kt { q })
    }

    pub fn function_series(p: u64) -> Result<Self> {
        Self::new(DvrDescriptor::Kut { p })
    }

    pub fn descriptor(&self) -> &DvrDescriptor {
        &self.descriptor
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.residue
    }

    /// Characteristic of the residue field (always positive here).
    pub fn residue_char(&self) -> u64 {
        self.residue.characteristic()
    }

    pub fn uniformizer(&self) -> DvrScalar {
        match &self.series {
            None => DvrScalar::Rational(Rationals.from_int(self.residue_char() as i64)),
            Some(k) => DvrScalar::Series(k.var()),
        }
    }

    pub fn uniformizer_symbol(&self) -> &'static str {
        match self.series {
            None => "p",
            Some(_) => "t",
        }
    }

    /// Exponent of the uniformizer in `x`; infinite exactly for zero.
    pub fn valuation(&self, x: &DvrScalar) -> Valuation {
        match x {
            DvrScalar::Rational(q) if q.is_zero() => Valuation::Infinite,
            DvrScalar::Rational(q) => Valuation::Finite(int_valuation(q.numer(), self.residue_char())),
            DvrScalar::Series(f) => match f.num().coeffs().iter().position(|c| !self.residue.is_zero(c)) {
                None => Valuation::Infinite,
                Some(i) => Valuation::Finite(i as u64),
            },
        }
    }

    pub fn is_unit(&self, x: &DvrScalar) -> bool {
        self.valuation(x) == Valuation::Finite(0)
    }

    /// Image in the residue field; a ring homomorphism with kernel `m_R`.
    pub fn reduce(&self, x: &DvrScalar) -> ResidueScalar {
        match x {
            DvrScalar::Rational(q) => {
                let p = BigInt::from(self.residue_char());
                let num = q.numer().mod_floor(&p).to_i64().expect("small residue");
                let den = q.denom().mod_floor(&p).to_i64().expect("small residue");
                let k = &self.residue;
                k.div(&k.from_int(num), &k.from_int(den))
                    .expect("denominator is a unit")
            }
            DvrScalar::Series(f) => {
                let k = &self.residue;
                let num = f.num().coeff(0).cloned().unwrap_or_else(|| k.zero());
                let den = f.den().coeff(0).expect("denominator is a unit");
                k.div(&num, den).expect("denominator is a unit")
            }
        }
    }

    /// The canonical lift of a residue: an integer in `[0, p)` or a
    /// constant series.
    pub fn lift(&self, r: &ResidueScalar) -> DvrScalar {
        match (&self.series, r) {
            (None, ResidueScalar::Finite(x)) => DvrScalar::Rational(Rationals.from_int(x.coords()[0] as i64)),
            (Some(k), r) => DvrScalar::Series(k.constant(r.clone())),
            _ => panic!("residue scalar from a different field"),
        }
    }

    /// `x / pi^k`, defined when `v(x) >= k`.
    pub fn unit_shift(&self, x: &DvrScalar, k: u64) -> Result<DvrScalar> {
        let v = self.valuation(x);
        if v < Valuation::Finite(k) {
            return Err(Error::invalid(format!(
                "cannot divide {} by {}^{k}: valuation is {v}",
                self.render(x),
                self.uniformizer_symbol()
            )));
        }
        if v == Valuation::Infinite {
            return Ok(x.clone());
        }
        let pk = self.pow(&self.uniformizer(), k as u128);
        Ok(self.checked_div(x, &pk).expect("valuation checked"))
    }

    /// `a / b` when the quotient lies in the ring.
    pub fn checked_div(&self, a: &DvrScalar, b: &DvrScalar) -> Option<DvrScalar> {
        match (&self.series, a, b) {
            (None, DvrScalar::Rational(x), DvrScalar::Rational(y)) => {
                let q = Rationals.div(x, y)?;
                let p = BigInt::from(self.residue_char());
                (!q.denom().is_multiple_of(&p)).then_some(DvrScalar::Rational(q))
            }
            (Some(k), DvrScalar::Series(x), DvrScalar::Series(y)) => {
                let q = k.div(x, y)?;
                self.series_in_ring(&q).then_some(DvrScalar::Series(q))
            }
            _ => panic!("scalar from a different ring"),
        }
    }

    /// Quotient for divisions known to be exact. Polynomial operands divide
    /// without a gcd.
    pub fn exact_quotient(&self, a: &DvrScalar, b: &DvrScalar) -> Option<DvrScalar> {
        if let (Some(k), DvrScalar::Series(x), DvrScalar::Series(y)) = (&self.series, a, b) {
            if x.den().degree() == Some(0) && y.den().degree() == Some(0) {
                let q = k.polys().exact_div(x.num(), y.num())?;
                return Some(DvrScalar::Series(k.from_poly(q)));
            }
        }
        self.checked_div(a, b)
    }

    /// Representative of `x` modulo `pi^n` with no denominator: an integer
    /// in `[0, p^n)` or a polynomial of degree below `n`.
    pub fn truncate(&self, x: &DvrScalar, n: u64) -> DvrScalar {
        match (&self.series, x) {
            (None, DvrScalar::Rational(q)) => {
                let m = BigInt::from(self.residue_char()).pow(n as u32);
                let inv = q.denom().modinv(&m).expect("denominator is a unit");
                DvrScalar::Rational(BigRational::from_integer((q.numer() * inv).mod_floor(&m)))
            }
            (Some(k), DvrScalar::Series(f)) => {
                let base = k.base();
                let (num, den) = (f.num(), f.den());
                let d0 = base.inv(den.coeff(0).expect("denominator is a unit")).expect("nonzero");
                let mut c: Vec<ResidueScalar> = Vec::with_capacity(n as usize);
                for i in 0..n as usize {
                    let mut acc = num.coeff(i).cloned().unwrap_or_else(|| base.zero());
                    for j in 1..=i {
                        if let Some(dj) = den.coeff(j) {
                            acc = base.sub(&acc, &base.mul(dj, &c[i - j]));
                        }
                    }
                    c.push(base.mul(&acc, &d0));
                }
                DvrScalar::Series(k.from_poly(k.polys().from_coeffs(c)))
            }
            _ => panic!("scalar from a different ring"),
        }
    }

    /// The (unit) denominator of `x`.
    pub fn denominator(&self, x: &DvrScalar) -> DvrScalar {
        match (&self.series, x) {
            (None, DvrScalar::Rational(q)) => DvrScalar::Rational(BigRational::from_integer(q.denom().clone())),
            (Some(k), DvrScalar::Series(f)) => DvrScalar::Series(k.from_poly(f.den().clone())),
            _ => panic!("scalar from a different ring"),
        }
    }

    pub fn unit_inverse(&self, x: &DvrScalar) -> Option<DvrScalar> {
        self.checked_div(&self.one(), x)
    }

    fn series_in_ring(&self, f: &Frac<ResidueScalar>) -> bool {
        f.den()
            .coeff(0)
            .is_some_and(|c| !self.residue.is_zero(c))
    }

    /// Parses the textual scalar syntax (`"7/2"`, `"t^2/(1+t)"`, `"u+t"`).
    pub fn parse(&self, text: &str) -> Result<DvrScalar> {
        let expr = parse_expr(text)?;
        match &self.series {
            None => {
                let q = eval(
                    &expr,
                    &Rationals,
                    &|n| BigRational::from_integer(n.clone()),
                    &|_| None,
                )?;
                let p = BigInt::from(self.residue_char());
                if q.denom().is_multiple_of(&p) {
                    return Err(Error::invalid(format!("{text} is not in {}", self.descriptor)));
                }
                Ok(DvrScalar::Rational(q))
            }
            Some(k) => {
                let residue = &self.residue;
                let p = BigInt::from(residue.characteristic());
                let f = eval(
                    &expr,
                    k,
                    &|n| k.constant(residue.from_int(n.mod_floor(&p).to_i64().expect("small"))),
                    &|c| match c {
                        't' => Some(k.var()),
                        'u' => residue.u().map(|u| k.constant(u)),
                        'w' => residue.w().map(|w| k.constant(w)),
                        _ => None,
                    },
                )?;
                if !self.series_in_ring(&f) {
                    return Err(Error::invalid(format!("{text} is not in {}", self.descriptor)));
                }
                Ok(DvrScalar::Series(f))
            }
        }
    }

    /// Parses an element of the residue field (`"2"`, `"w+1"`, `"u/(u+1)"`).
    pub fn parse_residue(&self, text: &str) -> Result<ResidueScalar> {
        parse_residue(&self.residue, text)
    }
}

pub fn parse_residue(field: &ResidueField, text: &str) -> Result<ResidueScalar> {
    let expr = parse_expr(text)?;
    let p = BigInt::from(field.characteristic());
    eval(
        &expr,
        field,
        &|n| field.from_int(n.mod_floor(&p).to_i64().expect("small")),
        &|c| match c {
            'u' => field.u(),
            'w' => field.w(),
            _ => None,
        },
    )
}

macro_rules! dvr_binop {
    ($self:ident, $a:ident, $b:ident, $f:ident) => {
        match (&$self.series, $a, $b) {
            (None, DvrScalar::Rational(x), DvrScalar::Rational(y)) => {
                DvrScalar::Rational(Rationals.$f(x, y))
            }
            (Some(k), DvrScalar::Series(x), DvrScalar::Series(y)) => DvrScalar::Series(k.$f(x, y)),
            _ => panic!("scalar from a different ring"),
        }
    };
}

impl Ring for Dvr {
    type Elem = DvrScalar;

    fn zero(&self) -> DvrScalar {
        self.from_int(0)
    }

    fn one(&self) -> DvrScalar {
        self.from_int(1)
    }

    fn from_int(&self, n: i64) -> DvrScalar {
        match &self.series {
            None => DvrScalar::Rational(Rationals.from_int(n)),
            Some(k) => DvrScalar::Series(k.from_int(n)),
        }
    }

    fn add(&self, a: &DvrScalar, b: &DvrScalar) -> DvrScalar {
        dvr_binop!(self, a, b, add)
    }

    fn sub(&self, a: &DvrScalar, b: &DvrScalar) -> DvrScalar {
        dvr_binop!(self, a, b, sub)
    }

    fn mul(&self, a: &DvrScalar, b: &DvrScalar) -> DvrScalar {
        dvr_binop!(self, a, b, mul)
    }

    fn neg(&self, a: &DvrScalar) -> DvrScalar {
        match (&self.series, a) {
            (None, DvrScalar::Rational(x)) => DvrScalar::Rational(-x),
            (Some(k), DvrScalar::Series(x)) => DvrScalar::Series(k.neg(x)),
            _ => panic!("scalar from a different ring"),
        }
    }

    fn is_zero(&self, a: &DvrScalar) -> bool {
        match a {
            DvrScalar::Rational(x) => x.is_zero(),
            DvrScalar::Series(x) => x.num().is_zero(),
        }
    }

    fn characteristic(&self) -> u64 {
        match self.series {
            None => 0,
            Some(_) => self.residue_char(),
        }
    }

    fn render(&self, a: &DvrScalar) -> String {
        match (&self.series, a) {
            (None, DvrScalar::Rational(x)) => Rationals.render(x),
            (Some(k), DvrScalar::Series(x)) => k.render(x),
            _ => panic!("scalar from a different ring"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_descriptors() {
        assert_eq!("zp:2".parse::<DvrDescriptor>().unwrap(), DvrDescriptor::Zp { p: 2 });
        assert_eq!("KT:4".parse::<DvrDescriptor>().unwrap(), DvrDescriptor::Kt { q: 4 });
        assert_eq!("kut:3".parse::<DvrDescriptor>().unwrap(), DvrDescriptor::Kut { p: 3 });
        for bad in ["zp", "zp:x", "qq:2", "zp:4", "kt:6"] {
            assert!(bad.parse::<DvrDescriptor>().is_err(), "{bad}");
        }
    }

    #[test]
    fn valuation_examples() {
        let z2 = Dvr::integers_at(2).unwrap();
        assert_eq!(z2.valuation(&z2.from_int(12)), Valuation::Finite(2));
        assert_eq!(z2.valuation(&z2.one()), Valuation::Finite(0));
        assert_eq!(z2.valuation(&z2.zero()), Valuation::Infinite);
        let f3t = Dvr::power_series(3).unwrap();
        let x = f3t.parse("t^2/(1+t)").unwrap();
        assert_eq!(f3t.valuation(&x), Valuation::Finite(2));
        assert_eq!(f3t.render(&x), "t^2/(1+t)");
    }

    #[test]
    fn reduce_examples() {
        let z3 = Dvr::integers_at(3).unwrap();
        let x = z3.parse("7/2").unwrap();
        assert_eq!(z3.reduce(&x), z3.residue_field().from_int(2));
        assert!(z3.residue_field().is_zero(&z3.reduce(&z3.uniformizer())));
        let kut = Dvr::function_series(2).unwrap();
        let y = kut.parse("u+t").unwrap();
        assert_eq!(kut.render(&y), "u+t");
        assert_eq!(kut.reduce(&y), kut.residue_field().u().unwrap());
        assert!(kut.residue_field().is_zero(&kut.reduce(&kut.uniformizer())));
    }

    #[test]
    fn unit_shift_examples() {
        let z2 = Dvr::integers_at(2).unwrap();
        assert_eq!(z2.unit_shift(&z2.from_int(12), 2).unwrap(), z2.from_int(3));
        assert!(z2.unit_shift(&z2.from_int(12), 3).is_err());
        assert_eq!(z2.unit_shift(&z2.zero(), 5).unwrap(), z2.zero());
        let z3 = Dvr::integers_at(3).unwrap();
        assert_eq!(z3.unit_shift(&z3.from_int(3), 1).unwrap(), z3.one());
    }

    #[test]
    fn membership_is_checked() {
        let z2 = Dvr::integers_at(2).unwrap();
        assert!(z2.parse("1/2").is_err());
        assert!(z2.parse("3/5").is_ok());
        let kt = Dvr::power_series(4).unwrap();
        assert!(kt.parse("1/t").is_err());
        let w = kt.parse("w*t + 1").unwrap();
        assert_eq!(kt.render(&w), "1+w*t");
        assert!(kt.parse("u").is_err());
        assert!(z2.checked_div(&z2.one(), &z2.from_int(2)).is_none());
    }

    #[test]
    fn descriptors_round_trip() {
        for (json, d) in [
            (r#"{"kind":"Zp","p":2}"#, DvrDescriptor::Zp { p: 2 }),
            (r#"{"kind":"kt","q":9}"#, DvrDescriptor::Kt { q: 9 }),
            (r#"{"kind":"kut","p":2}"#, DvrDescriptor::Kut { p: 2 }),
        ] {
            let parsed: DvrDescriptor = serde_json::from_str(json).unwrap();
            assert_eq!(parsed, d);
            assert_eq!(serde_json::to_string(&d).unwrap(), json);
        }
        assert!(Dvr::new(DvrDescriptor::Zp { p: 4 }).is_err());
        assert!(Dvr::new(DvrDescriptor::Kt { q: 12 }).is_err());
    }
}
