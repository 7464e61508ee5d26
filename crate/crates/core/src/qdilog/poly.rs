//! Dense univariate polynomials over the integers: coefficient `i` is the
//! coefficient of `t^i`. Only what the rational-function normal form needs.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive_part(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if p.last().is_some_and(Signed::is_negative) { -c } else { c };
    p.iter().map(|x| x / &c).collect()
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Quotient of `a` by `b` if the division is exact over the integers.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let lead = b.last().unwrap();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    for shift in (0..quot.len()).rev() {
        let top = &rem[shift + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, c) in b.iter().enumerate() {
            rem[shift + j] -= &q * c;
        }
        quot[shift] = q;
    }
    if rem.iter().all(Zero::is_zero) {
        trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let lead = b.last().unwrap();
    let db = b.len() - 1;
    while rem.len() > db {
        let top = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - db;
        for c in rem.iter_mut() {
            *c *= lead;
        }
        for (j, c) in b.iter().enumerate() {
            rem[shift + j] -= &top * c;
        }
        trim(&mut rem);
    }
    rem
}

fn gcd_prs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = (primitive_part(a), primitive_part(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_remainder(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    primitive_part(&a)
}

/// Symmetric base-`xi` digits of `v`, i.e. the polynomial `g` with
/// `g(xi) = v` and coefficients in `(-xi/2, xi/2]`.
fn xi_adic(mut v: BigInt, xi: &BigInt) -> Vec<BigInt> {
    let half = xi >> 1usize;
    let mut out = Vec::new();
    while !v.is_zero() {
        let mut d = v.mod_floor(xi);
        if d > half {
            d -= xi;
        }
        v = (v - &d) / xi;
        out.push(d);
    }
    out
}

/// Primitive gcd (positive leading coefficient) of two nonzero polynomials.
/// Tries the heuristic evaluation gcd first and falls back to a primitive
/// remainder sequence.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return primitive_part(b);
    }
    if b.is_empty() {
        return primitive_part(a);
    }
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let (pa, pb) = (primitive_part(a), primitive_part(b));
    if pa == pb {
        return pa;
    }
    let norm = |p: &[BigInt]| p.iter().map(Signed::abs).max().unwrap();
    let mut xi: BigInt = 2 * norm(&pa).min(norm(&pb)) + 29u32;
    for _ in 0..6 {
        let gamma = eval(&pa, &xi).gcd(&eval(&pb, &xi));
        if !gamma.is_zero() {
            let g = primitive_part(&xi_adic(gamma, &xi));
            if !g.is_empty() && div_exact(&pa, &g).is_some() && div_exact(&pb, &g).is_some() {
                return g;
            }
        }
        xi = (&xi * 73794u32) / 27011u32 + 1u32;
    }
    gcd_prs(&pa, &pb)
}

pub(crate) fn is_one(p: &[BigInt]) -> bool {
    p.len() == 1 && p[0].is_one()
}

pub(crate) fn leading_sign(p: &[BigInt]) -> Sign {
    p.last().map_or(Sign::NoSign, BigInt::sign)
}
