use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, Ring};

/// The rational function field `K(var)`.
///
/// Fractions are kept in lowest terms with a monic denominator, so the zero
/// element is `0/1` and structural equality is field equality.
#[derive(Clone, Debug)]
pub struct RationalFunctions<K: Field> {
    polys: PolyRing<K>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frac<E> {
    num: Poly<E>,
    den: Poly<E>,
}

impl<E> Frac<E> {
    pub fn num(&self) -> &Poly<E> {
        &self.num
    }

    pub fn den(&self) -> &Poly<E> {
        &self.den
    }
}

impl<K: Field> RationalFunctions<K> {
    pub fn new(base: K, var: impl Into<String>) -> Self {
        RationalFunctions {
            polys: PolyRing::new(base, var),
        }
    }

    pub fn polys(&self) -> &PolyRing<K> {
        &self.polys
    }

    pub fn base(&self) -> &K {
        self.polys.base()
    }

    /// `num/den` in lowest terms; `None` when `den` is zero.
    pub fn fraction(&self, num: Poly<K::Elem>, den: Poly<K::Elem>) -> Option<Frac<K::Elem>> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(self.zero());
        }
        if den.degree() == Some(0) {
            let inv = self.base().inv(den.lc().expect("nonzero")).expect("nonzero");
            return Some(self.from_poly(self.polys.scale(&num, &inv)));
        }
        let g = self.polys.gcd(&num, &den);
        let num = self.polys.exact_div(&num, &g).expect("gcd divides");
        let den = self.polys.exact_div(&den, &g).expect("gcd divides");
        let lc = den.lc().cloned().expect("nonzero");
        let inv = self.base().inv(&lc).expect("nonzero");
        Some(Frac {
            num: self.polys.scale(&num, &inv),
            den: self.polys.scale(&den, &inv),
        })
    }

    pub fn from_poly(&self, p: Poly<K::Elem>) -> Frac<K::Elem> {
        Frac {
            num: p,
            den: self.polys.one(),
        }
    }

    pub fn constant(&self, c: K::Elem) -> Frac<K::Elem> {
        self.from_poly(self.polys.constant(c))
    }

    pub fn var(&self) -> Frac<K::Elem> {
        self.from_poly(self.polys.x())
    }
}

impl<K: Field> Ring for RationalFunctions<K> {
    type Elem = Frac<K::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_poly(self.polys.zero())
    }

    fn one(&self) -> Self::Elem {
        self.from_poly(self.polys.one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_poly(self.polys.from_int(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let p = &self.polys;
        if p.is_one(&a.den) && p.is_one(&b.den) {
            return self.from_poly(p.add(&a.num, &b.num));
        }
        if a.den == b.den {
            return self
                .fraction(p.add(&a.num, &b.num), a.den.clone())
                .expect("nonzero denominator");
        }
        // Henrici: only the common part of the denominators can cancel
        let g = p.gcd(&a.den, &b.den);
        if p.is_one(&g) {
            let num = p.add(&p.mul(&a.num, &b.den), &p.mul(&b.num, &a.den));
            if num.is_zero() {
                return self.zero();
            }
            return Frac {
                num,
                den: p.mul(&a.den, &b.den),
            };
        }
        let ad = p.exact_div(&a.den, &g).expect("gcd divides");
        let bd = p.exact_div(&b.den, &g).expect("gcd divides");
        let t = p.add(&p.mul(&a.num, &bd), &p.mul(&b.num, &ad));
        if t.is_zero() {
            return self.zero();
        }
        let h = p.gcd(&t, &g);
        Frac {
            num: p.exact_div(&t, &h).expect("gcd divides"),
            den: p.mul(&ad, &p.exact_div(&b.den, &h).expect("gcd divides")),
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Frac {
            num: self.polys.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let p = &self.polys;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        let (a_one, b_one) = (p.is_one(&a.den), p.is_one(&b.den));
        if a_one && b_one {
            return self.from_poly(p.mul(&a.num, &b.num));
        }
        // cross-cancel: both inputs are already in lowest terms
        let (an, bd) = cancel(p, &a.num, &b.den, b_one);
        let (bn, ad) = cancel(p, &b.num, &a.den, a_one);
        Frac {
            num: p.mul(&an, &bn),
            den: p.mul(&ad, &bd),
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn render(&self, a: &Self::Elem) -> String {
        let num = self.polys.render(&a.num);
        if self.polys.is_one(&a.den) {
            return num;
        }
        let den = self.polys.render(&a.den);
        // `*` and `/` associate left and the denominator is monic, so only
        // multi-term parts need parentheses.
        let terms = |p: &Poly<K::Elem>| p.coeffs().iter().filter(|c| !self.base().is_zero(c)).count();
        let num = if terms(&a.num) > 1 { format!("({num})") } else { num };
        let den = if terms(&a.den) > 1 { format!("({den})") } else { den };
        format!("{num}/{den}")
    }
}

/// `(n/g, d/g)` with `g = gcd(n, d)`; `d` stays monic.
fn cancel<K: Field>(p: &PolyRing<K>, n: &Poly<K::Elem>, d: &Poly<K::Elem>, d_is_one: bool) -> (Poly<K::Elem>, Poly<K::Elem>) {
    if d_is_one {
        return (n.clone(), d.clone());
    }
    let g = p.gcd(n, d);
    if p.is_one(&g) {
        return (n.clone(), d.clone());
    }
    (p.exact_div(n, &g).expect("gcd divides"), p.exact_div(d, &g).expect("gcd divides"))
}

impl<K: Field> Field for RationalFunctions<K> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.fraction(a.den.clone(), a.num.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FiniteField;

    #[test]
    fn lowest_terms_and_render() {
        let k = RationalFunctions::new(FiniteField::prime(2).unwrap(), "u");
        let p = k.polys();
        let u = k.var();
        let one = k.one();
        let u1 = k.add(&u, &one);
        let q = k.div(&u, &u1).unwrap();
        assert_eq!(k.render(&q), "u/(1+u)");
        assert_eq!(k.inv(&q).unwrap(), k.div(&u1, &u).unwrap());
        // (u^2+u)/(u) reduces to u+1
        let num = p.mul(&p.x(), &p.add(&p.x(), &p.one()));
        assert_eq!(k.fraction(num, p.x()).unwrap(), u1);
        assert_eq!(k.render(&k.mul(&u, &u)), "u^2");
        assert_eq!(k.render(&k.inv(&k.mul(&u, &u)).unwrap()), "1/u^2");
    }
}
