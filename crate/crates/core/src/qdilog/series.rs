use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::laurent::LaurentPoly;
use super::rational::RationalFunction;
use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// Exponent vector `alpha` of a monomial `y^alpha`.
pub type Exponent = Vec<u32>;

/// The antisymmetric form `lambda(alpha, beta) = alpha^T B beta` of an
/// exchange matrix `B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewForm {
    n: usize,
    b: Vec<i64>,
}

impl SkewForm {
    pub fn from_quiver(q: &Quiver) -> Result<Self> {
        let n = q.n();
        let mut b = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                b.push(q.entry(i, j).to_i64().ok_or(Error::Overflow)?);
            }
        }
        Ok(SkewForm { n, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `lambda(e_i, e_j)` for 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[(i - 1) * self.n + (j - 1)]
    }

    pub fn eval(&self, alpha: &[u32], beta: &[u32]) -> i64 {
        let mut total = 0i64;
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = &self.b[i * self.n..(i + 1) * self.n];
            let inner: i64 = row.iter().zip(beta).map(|(&bij, &bj)| bij * i64::from(bj)).sum();
            total += i64::from(a) * inner;
        }
        total
    }
}

/// The truncated quantum affine space a series lives in: rank, skew form,
/// and the total degree `order` above which terms are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesSpace {
    form: SkewForm,
    order: u32,
}

impl SeriesSpace {
    pub fn new(form: SkewForm, order: u32) -> Arc<Self> {
        Arc::new(SeriesSpace { form, order })
    }

    pub fn for_quiver(q: &Quiver, order: u32) -> Result<Arc<Self>> {
        Ok(Self::new(SkewForm::from_quiver(q)?, order))
    }

    pub fn n(&self) -> usize {
        self.form.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }
}

fn degree(alpha: &[u32]) -> u64 {
    alpha.iter().map(|&a| u64::from(a)).sum()
}

/// Element of the complete quantum affine space truncated at total degree
/// `order`: a finite sum of `coefficient * y^alpha` with
/// `y^alpha y^beta = t^{lambda(alpha, beta)} y^{alpha + beta}`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuantumSeries {
    space: Arc<SeriesSpace>,
    terms: BTreeMap<Exponent, RationalFunction>,
}

impl QuantumSeries {
    pub fn zero(space: &Arc<SeriesSpace>) -> Self {
        QuantumSeries {
            space: Arc::clone(space),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: &Arc<SeriesSpace>) -> Self {
        Self::monomial(space, vec![0; space.n()], RationalFunction::one()).expect("unit has the right rank")
    }

    /// `coeff * y^alpha`, or zero if `|alpha|` exceeds the order.
    pub fn monomial(space: &Arc<SeriesSpace>, alpha: Exponent, coeff: RationalFunction) -> Result<Self> {
        if alpha.len() != space.n() {
            return Err(Error::RankMismatch {
                expected: space.n(),
                got: alpha.len(),
            });
        }
        let mut s = Self::zero(space);
        if degree(&alpha) <= u64::from(space.order) && !coeff.is_zero() {
            s.terms.insert(alpha, coeff);
        }
        Ok(s)
    }

    pub fn space(&self) -> &Arc<SeriesSpace> {
        &self.space
    }

    pub fn order(&self) -> u32 {
        self.space.order
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, RationalFunction> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &[u32]) -> RationalFunction {
        self.terms.get(alpha).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::TemplateMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut terms = self.terms.clone();
        for (alpha, c) in &other.terms {
            accumulate(&mut terms, alpha.clone(), c.clone());
        }
        Ok(QuantumSeries {
            space: Arc::clone(&self.space),
            terms,
        })
    }

    /// Product in the quantum affine space, truncated at the order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let order = u64::from(self.space.order);
        let form = &self.space.form;
        let mut terms = BTreeMap::new();
        for (alpha, a) in &self.terms {
            let da = degree(alpha);
            for (beta, b) in &other.terms {
                if da + degree(beta) > order {
                    continue;
                }
                let gamma: Exponent = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
                let c = (a * b).shift(form.eval(alpha, beta));
                accumulate(&mut terms, gamma, c);
            }
        }
        Ok(QuantumSeries {
            space: Arc::clone(&self.space),
            terms,
        })
    }

    /// Two-sided inverse up to the order, solved degree by degree from the
    /// invertible constant term.
    pub fn inv(&self) -> Result<Self> {
        let n = self.space.n();
        let zero = vec![0u32; n];
        let a0 = self.terms.get(&zero).ok_or(Error::ZeroConstantTerm)?;
        let a0_inv = a0.recip()?;
        let form = &self.space.form;
        let mut inv: BTreeMap<Exponent, RationalFunction> = BTreeMap::new();
        inv.insert(zero.clone(), a0_inv.clone());
        for d in 1..=self.space.order {
            for gamma in exponents_of_degree(n, d) {
                let mut acc = RationalFunction::zero();
                for (alpha, a) in &self.terms {
                    if *alpha == zero || alpha.iter().zip(&gamma).any(|(x, g)| x > g) {
                        continue;
                    }
                    let rest: Exponent = gamma.iter().zip(alpha).map(|(g, x)| g - x).collect();
                    if let Some(b) = inv.get(&rest) {
                        acc = &acc + &(a * b).shift(form.eval(alpha, &rest));
                    }
                }
                if !acc.is_zero() {
                    inv.insert(gamma, -&(&a0_inv * &acc));
                }
            }
        }
        Ok(QuantumSeries {
            space: Arc::clone(&self.space),
            terms: inv,
        })
    }

    /// Exact coefficientwise equality.
    pub fn identity_check(&self, other: &Self) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.terms == other.terms)
    }

    /// `{"D": d, "terms": [{"y": [...], "num": [[e, c], ...], "den": [...]}]}`
    /// with terms in lexicographic order of the exponent vectors.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(alpha, c)| {
                let (num, den) = c.to_json();
                json!({ "y": alpha, "num": num, "den": den })
            })
            .collect();
        json!({ "D": self.space.order, "terms": terms })
    }

    /// Reads the JSON form back into `space`; the order recorded in the
    /// document must match the space.
    pub fn from_json(space: &Arc<SeriesSpace>, value: &Value) -> Result<Self> {
        let d = value
            .get("D")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("series needs an integer \"D\"".into()))?;
        if d != u64::from(space.order) {
            return Err(Error::TemplateMismatch);
        }
        let list = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("series needs a \"terms\" list".into()))?;
        let mut s = Self::zero(space);
        for term in list {
            let alpha: Exponent = term
                .get("y")
                .and_then(|y| serde_json::from_value(y.clone()).ok())
                .ok_or_else(|| Error::Parse(format!("bad exponent vector in {term}")))?;
            let num = term.get("num").ok_or_else(|| Error::Parse("term without num".into()))?;
            let den = term.get("den").ok_or_else(|| Error::Parse("term without den".into()))?;
            let c = RationalFunction::from_json(num, den)?;
            s = s.add(&Self::monomial(space, alpha, c)?)?;
        }
        Ok(s)
    }
}

fn accumulate(terms: &mut BTreeMap<Exponent, RationalFunction>, alpha: Exponent, c: RationalFunction) {
    if c.is_zero() {
        return;
    }
    match terms.entry(alpha) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + &c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// All exponent vectors of length `n` and total degree `d`, in
/// lexicographic order.
pub(crate) fn exponents_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=d {
            prefix.push(first);
            rec(n, d - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Coefficient of `y^{m alpha}` in the quantum dilogarithm `E(y^alpha)`:
/// `t^{m^2} / prod_{k=0}^{m-1} (q^m - q^k)`.
pub fn dilog_coefficient(m: u32) -> RationalFunction {
    let m = i64::from(m);
    let mut den = LaurentPoly::one();
    for k in 0..m {
        let factor = LaurentPoly::from_terms([(2 * m, 1), (2 * k, -1)]);
        den = &den * &factor;
    }
    RationalFunction::new(LaurentPoly::monomial(m * m, 1), den).expect("nonzero denominator")
}

/// The quantum dilogarithm `E(y^alpha)` truncated at the order of `space`.
/// Since `lambda(alpha, alpha) = 0`, `(y^alpha)^m = y^{m alpha}`.
pub fn q_exp(space: &Arc<SeriesSpace>, alpha: &[u32]) -> Result<QuantumSeries> {
    if alpha.len() != space.n() {
        return Err(Error::RankMismatch {
            expected: space.n(),
            got: alpha.len(),
        });
    }
    let d = degree(alpha);
    if d == 0 {
        return Err(Error::ZeroVector);
    }
    let mut s = QuantumSeries::one(space);
    let top = u64::from(space.order) / d;
    for m in 1..=top as u32 {
        let exp: Exponent = alpha.iter().map(|&a| a * m).collect();
        s.terms.insert(exp, dilog_coefficient(m));
    }
    Ok(s)
}

impl fmt::Debug for QuantumSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuantumSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O(deg {})", self.space.order + 1);
        }
        for (i, (alpha, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "\n  + ")?;
            }
            let exps: Vec<String> = alpha.iter().map(ToString::to_string).collect();
            write!(f, "[{}] y^({})", c, exps.join(","))?;
        }
        write!(f, "\n  + O(deg {})", self.space.order + 1)
    }
}
