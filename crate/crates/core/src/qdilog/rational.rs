use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::laurent::LaurentPoly;
use super::poly;
use crate::bigjson;
use crate::error::{Error, Result};

/// Element of `Q(t)`, `t = q^{1/2}`, kept in a canonical form so that
/// structural equality is equality of functions:
///
/// * numerator and denominator have no common factor of positive degree,
/// * the denominator's lowest exponent is 0,
/// * the integer contents are jointly coprime,
/// * the denominator's leading coefficient is positive.
///
/// Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

fn div_poly(p: &LaurentPoly, g: &[BigInt]) -> LaurentPoly {
    if poly::is_one(g) {
        return p.clone();
    }
    let q = poly::div_exact(p.dense(), g).expect("gcd divides its arguments");
    LaurentPoly::from_dense(p.low(), q)
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    /// `t^e`.
    pub fn t_power(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(e, 1))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self::finish(p, LaurentPoly::one())
    }

    /// Canonical form of `num / den`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let shift = den.low();
        let (num, den) = (num.shift(-shift), den.shift(-shift));
        let g = poly::gcd(num.dense(), den.dense());
        Ok(Self::finish(div_poly(&num, &g), div_poly(&den, &g)))
    }

    /// Shifts the denominator to lowest exponent 0 and fixes the scalar.
    /// Assumes there is no common factor of positive degree left.
    fn finish(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.low();
        let (num, den) = (num.shift(-shift), den.shift(-shift));
        let mut c = poly::content(num.dense()).gcd(&poly::content(den.dense()));
        if poly::leading_sign(den.dense()) == Sign::Minus {
            c = -c;
        }
        if c.is_one() {
            RationalFunction { num, den }
        } else {
            RationalFunction {
                num: num.scale_div(&c),
                den: den.scale_div(&c),
            }
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        RationalFunction {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(Self::finish(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn to_json(&self) -> (Value, Value) {
        let pairs = |p: &LaurentPoly| {
            Value::Array(
                p.terms()
                    .map(|(e, c)| json!([e, bigjson::to_value(c)]))
                    .collect(),
            )
        };
        (pairs(&self.num), pairs(&self.den))
    }

    pub fn from_json(num: &Value, den: &Value) -> Result<Self> {
        let parse = |v: &Value| -> Result<LaurentPoly> {
            let list = v
                .as_array()
                .ok_or_else(|| Error::Parse("expected a list of [exponent, coefficient] pairs".into()))?;
            let mut terms = Vec::with_capacity(list.len());
            for pair in list {
                let pair = pair
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Parse(format!("bad term {pair}")))?;
                let e = pair[0]
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("bad exponent {}", pair[0])))?;
                terms.push((e, bigjson::from_value(&pair[1])?));
            }
            Ok(LaurentPoly::from_terms(terms))
        };
        Self::new(parse(num)?, parse(den)?)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if num.is_zero() {
                return RationalFunction::zero();
            }
            let g = poly::gcd(num.dense(), self.den.dense());
            return RationalFunction::finish(div_poly(&num, &g), div_poly(&self.den, &g));
        }
        let g = poly::gcd(self.den.dense(), rhs.den.dense());
        let da = div_poly(&self.den, &g);
        let db = div_poly(&rhs.den, &g);
        let num = &(&self.num * &db) + &(&rhs.num * &da);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let den = &self.den * &db;
        if poly::is_one(&g) {
            return RationalFunction::finish(num, den);
        }
        let g2 = poly::gcd(num.dense(), &g);
        RationalFunction::finish(div_poly(&num, &g2), div_poly(&den, &g2))
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let g1 = poly::gcd(self.num.dense(), rhs.den.dense());
        let g2 = poly::gcd(rhs.num.dense(), self.den.dense());
        let num = &div_poly(&self.num, &g1) * &div_poly(&rhs.num, &g2);
        let den = &div_poly(&self.den, &g2) * &div_poly(&rhs.den, &g1);
        RationalFunction::finish(num, den)
    }
}

impl Mul<&BigInt> for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &BigInt) -> RationalFunction {
        if rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::finish(self.num.scale(rhs), self.den.clone())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
