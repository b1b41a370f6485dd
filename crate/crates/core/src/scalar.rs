//! Exact arithmetic in the coefficient field Q(q) and q-combinatorics.
//!
//! A [`Scalar`] is a rational function in q with integer coefficients,
//! stored as
//!
//!   q^shift * num(q) / den(q)
//!
//! where `num` and `den` are integer polynomials with nonzero constant
//! term (all powers of q are pulled out into `shift`, so Laurent
//! expressions like q^-3 + q^5 are exact values, not approximations).
//!
//! Canonical form, maintained by every operation:
//! - `den` is nonzero, gcd(num, den) = 1 over Z[q] (including integer
//!   content), and the leading coefficient of `den` is positive;
//! - `num(0) != 0` and `den(0) != 0` unless the value is zero, in which
//!   case num = 0, den = 1, shift = 0.
//!
//! Equality is therefore plain structural comparison.
//!
//! The module also provides the q-integers [m]_i = (q_i^m - q_i^-m)/(q_i - q_i^-1)
//! with q_i = q^d, q-factorials and Gaussian binomials built on them, and
//! exact evaluation at rational points for randomized identity testing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

// ---------------------------------------------------------------------------
// Integer polynomials in q
// ---------------------------------------------------------------------------

/// Dense integer polynomial in q: `coeffs[k]` is the coefficient of q^k.
/// Invariant: the last entry is nonzero (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub(crate) fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub(crate) fn one() -> Self {
        QPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            QPoly::zero()
        } else {
            QPoly { coeffs: vec![c] }
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    /// Number of trailing zero coefficients, i.e. the largest k with q^k | self.
    fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    fn shr_q(&self, k: usize) -> Self {
        QPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = BigInt::zero();
            if let Some(a) = self.coeffs.get(k) {
                c += a;
            }
            if let Some(b) = other.coeffs.get(k) {
                c += b;
            }
            out.push(c);
        }
        QPoly::from_coeffs(out)
    }

    fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }

    /// Multiply self by q^k.
    fn shl_q(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Exact division; panics if the division is not exact.
    fn div_exact(&self, d: &QPoly) -> QPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return QPoly::zero();
        }
        if d.is_one() {
            return self.clone();
        }
        let mut rem = self.coeffs.clone();
        let dn = d.degree();
        let dl = d.leading();
        assert!(rem.len() >= d.coeffs.len(), "inexact polynomial division");
        let qn = rem.len() - d.coeffs.len();
        let mut quot = vec![BigInt::zero(); qn + 1];
        for k in (0..=qn).rev() {
            let c = &rem[k + dn];
            if c.is_zero() {
                continue;
            }
            let (qc, r) = num_integer::div_rem(c.clone(), dl.clone());
            assert!(r.is_zero(), "inexact polynomial division (leading)");
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &qc * dc;
                rem[k + j] -= t;
            }
            quot[k] = qc;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division (remainder)");
        QPoly::from_coeffs(quot)
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.clone());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Pseudo-remainder based primitive gcd over Z[q].
    /// Result is primitive with positive leading coefficient.
    fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.positive_primitive();
        }
        if other.is_zero() {
            return self.positive_primitive();
        }
        let ca = self.content();
        let cb = other.content();
        let cg = num_integer::gcd(ca.clone(), cb.clone());
        let mut a = self.div_exact(&QPoly::constant(ca));
        let mut b = other.div_exact(&QPoly::constant(cb));
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b).positive_primitive();
            a = b;
            b = r;
        }
        a.positive_primitive().mul(&QPoly::constant(cg))
    }

    /// Pseudo-remainder of self by d (d nonzero, deg self >= deg d assumed
    /// handled by caller loop; works in general).
    fn prem(&self, d: &QPoly) -> QPoly {
        let mut rem = self.clone();
        let dn = d.degree();
        let dl = d.leading().clone();
        while !rem.is_zero() && rem.degree() >= dn {
            let k = rem.degree() - dn;
            let rl = rem.leading().clone();
            // rem := dl * rem - rl * q^k * d
            let mut new = rem.mul(&QPoly::constant(dl.clone()));
            let sub = d.shl_q(k).mul(&QPoly::constant(rl));
            new = new.add(&sub.neg());
            rem = new;
        }
        rem
    }

    fn positive_primitive(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_exact(&QPoly::constant(c))
    }

    fn eval(&self, r: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * r + BigRational::from_integer(c.clone());
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

/// An exact element of Q(q), with Laurent behavior encoded by a global
/// power-of-q shift. See the module docs for the canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    shift: i64,
    num: QPoly,
    den: QPoly,
}

/// Error raised by [`Scalar::eval_at`] when the denominator vanishes, and
/// by division by zero.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("pole at evaluation point")]
    Pole,
}

impl Scalar {
    // -- constructors -------------------------------------------------------

    pub fn zero() -> Self {
        Scalar {
            shift: 0,
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            shift: 0,
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar {
            shift: 0,
            num: QPoly::constant(n),
            den: QPoly::one(),
        }
    }

    /// The monomial q^e (e may be negative).
    pub fn q_pow(e: i64) -> Self {
        Scalar {
            shift: e,
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    /// c * q^e.
    pub fn monomial(c: i64, e: i64) -> Self {
        if c == 0 {
            return Scalar::zero();
        }
        Scalar {
            shift: e,
            num: QPoly::constant(BigInt::from(c)),
            den: QPoly::one(),
        }
    }

    /// Build from explicit (coefficient, exponent) term lists for numerator
    /// and denominator; exponents may repeat and appear in any order.
    pub fn from_terms(num: &[(BigInt, i64)], den: &[(BigInt, i64)]) -> Result<Self, ScalarError> {
        fn assemble(terms: &[(BigInt, i64)]) -> (QPoly, i64) {
            if terms.is_empty() {
                return (QPoly::zero(), 0);
            }
            let min_e = terms.iter().map(|t| t.1).min().unwrap();
            let max_e = terms.iter().map(|t| t.1).max().unwrap();
            let mut coeffs = vec![BigInt::zero(); (max_e - min_e) as usize + 1];
            for (c, e) in terms {
                coeffs[(e - min_e) as usize] += c;
            }
            (QPoly::from_coeffs(coeffs), min_e)
        }
        let (n, sn) = assemble(num);
        let (d, sd) = assemble(den);
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::make(sn - sd, n, d))
    }

    /// Normalize to canonical form.
    fn make(mut shift: i64, mut num: QPoly, mut den: QPoly) -> Self {
        assert!(!den.is_zero(), "scalar with zero denominator");
        if num.is_zero() {
            return Scalar::zero();
        }
        // pull powers of q out of num and den into the shift
        let ln = num.low_order();
        if ln > 0 {
            num = num.shr_q(ln);
            shift += ln as i64;
        }
        let ld = den.low_order();
        if ld > 0 {
            den = den.shr_q(ld);
            shift -= ld as i64;
        }
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        if den.leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { shift, num, den }
    }

    // -- predicates ---------------------------------------------------------

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial (denominator 1).
    pub fn is_laurent_poly(&self) -> bool {
        self.den.is_one()
    }

    // -- field operations ---------------------------------------------------

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // common q-shift
        let s = self.shift.min(other.shift);
        let a = self.num.shl_q((self.shift - s) as usize);
        let b = other.num.shl_q((other.shift - s) as usize);
        if self.den.is_one() && other.den.is_one() {
            return Scalar::make(s, a.add(&b), QPoly::one());
        }
        let num = a.mul(&other.den).add(&b.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::make(s, num, den)
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        // cross-reduce so the final gcd is trivial
        let g1 = if other.den.is_one() {
            QPoly::one()
        } else {
            self.num.gcd(&other.den)
        };
        let g2 = if self.den.is_one() {
            QPoly::one()
        } else {
            other.num.gcd(&self.den)
        };
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1) };
        let d2 = if g1.is_one() { other.den.clone() } else { other.den.div_exact(&g1) };
        let n2 = if g2.is_one() { other.num.clone() } else { other.num.div_exact(&g2) };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2) };
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        if den.leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar {
            shift: self.shift + other.shift,
            num,
            den,
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        Scalar {
            shift: self.shift,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg_ref())
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::make(
            -self.shift,
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn div_ref(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Integer power (negative allowed for nonzero values).
    pub fn pow(&self, e: i64) -> Scalar {
        if e == 0 {
            return Scalar::one();
        }
        let base = if e < 0 {
            self.inv().expect("negative power of zero scalar")
        } else {
            self.clone()
        };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        acc
    }

    // -- evaluation ---------------------------------------------------------

    /// Exact evaluation at a rational point; errors on a pole.
    pub fn eval_at(&self, r: &BigRational) -> Result<BigRational, ScalarError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if r.is_zero() {
            // only defined when the shifted numerator has no negative powers
            if self.shift < 0 || self.den.eval(r).is_zero() {
                return Err(ScalarError::Pole);
            }
            let n = if self.shift > 0 {
                BigRational::zero()
            } else {
                self.num.eval(r)
            };
            return Ok(n / self.den.eval(r));
        }
        let d = self.den.eval(r);
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        let mut v = self.num.eval(r) / d;
        let e = self.shift;
        if e != 0 {
            let mut p = BigRational::one();
            let b = if e > 0 { r.clone() } else { r.recip() };
            for _ in 0..e.unsigned_abs() {
                p *= &b;
            }
            v *= p;
        }
        Ok(v)
    }

    // -- term access and serialization ---------------------------------------

    /// Numerator terms as (coefficient, exponent) with the global shift
    /// folded in so that all exponents are >= 0 across num and den.
    pub fn num_terms(&self) -> Vec<(BigInt, i64)> {
        let off = self.shift.max(0);
        self.num
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.clone(), k as i64 + off))
            .collect()
    }

    /// Denominator terms, with the shift folded in when it is negative.
    pub fn den_terms(&self) -> Vec<(BigInt, i64)> {
        let off = (-self.shift).max(0);
        self.den
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.clone(), k as i64 + off))
            .collect()
    }
}

impl fmt::Display for Scalar {
    /// Canonical string form `( c0*q^e0 + ... ) / ( ... )` with ascending
    /// exponents; the denominator is omitted when it is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(terms: &[(BigInt, i64)]) -> String {
            if terms.is_empty() {
                return "0".to_string();
            }
            let parts: Vec<String> = terms
                .iter()
                .map(|(c, e)| {
                    if *e == 0 {
                        format!("{}", c)
                    } else if c.is_one() {
                        format!("q^{}", e)
                    } else if (-c).is_one() {
                        format!("-q^{}", e)
                    } else {
                        format!("{}*q^{}", c, e)
                    }
                })
                .collect();
            parts.join(" + ")
        }
        let num = side(&self.num_terms());
        let den = self.den_terms();
        if den.len() == 1 && den[0].0.is_one() && den[0].1 == 0 {
            write!(f, "( {} )", num)
        } else {
            write!(f, "( {} ) / ( {} )", num, side(&den))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// serde: {"num": [["c", e], ...], "den": [["c", e], ...]} with bignum
// coefficients as decimal strings.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let conv = |ts: Vec<(BigInt, i64)>| -> Vec<(String, i64)> {
            ts.into_iter().map(|(c, e)| (c.to_string(), e)).collect()
        };
        let mut st = s.serialize_struct("Scalar", 2)?;
        st.serialize_field("num", &conv(self.num_terms()))?;
        st.serialize_field("den", &conv(self.den_terms()))?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            num: Vec<(String, i64)>,
            den: Vec<(String, i64)>,
        }
        let raw = Raw::deserialize(d)?;
        let conv = |ts: &[(String, i64)]| -> Result<Vec<(BigInt, i64)>, String> {
            ts.iter()
                .map(|(c, e)| {
                    c.parse::<BigInt>()
                        .map(|c| (c, *e))
                        .map_err(|e| e.to_string())
                })
                .collect()
        };
        let num = conv(&raw.num).map_err(serde::de::Error::custom)?;
        let den = conv(&raw.den).map_err(serde::de::Error::custom)?;
        Scalar::from_terms(&num, &den).map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

// operator impls delegate to the *_ref methods; division panics on zero
// divisors (use div_ref for a fallible version).
macro_rules! binop {
    ($tr:ident, $m:ident, $call:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$call(&rhs)
            }
        }
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$call(rhs)
            }
        }
    };
}
binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.div_ref(&rhs).expect("division by zero scalar")
    }
}
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.div_ref(rhs).expect("division by zero scalar")
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_ref(rhs);
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.sub_ref(rhs);
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_ref(rhs);
    }
}

// ---------------------------------------------------------------------------
// q-combinatorics
// ---------------------------------------------------------------------------

/// The Gaussian integer [m]_i = (q_i^m - q_i^-m)/(q_i - q_i^-1) with
/// q_i = q^d. Odd in m; [0] = 0, [1] = 1, [2] = q_i + q_i^-1.
pub fn q_int(m: i64, d: i64) -> Scalar {
    debug_assert!(d > 0);
    let sign = if m < 0 { -1 } else { 1 };
    let m = m.unsigned_abs() as i64;
    // [m] = q_i^{-(m-1)} * (1 + q_i^2 + ... + q_i^{2(m-1)})
    if m == 0 {
        return Scalar::zero();
    }
    let mut terms = Vec::with_capacity(m as usize);
    for k in 0..m {
        terms.push((BigInt::from(sign), d * (2 * k - (m - 1))));
    }
    Scalar::from_terms(&terms, &[(BigInt::one(), 0)]).unwrap()
}

/// [k]_i! = [1]_i [2]_i ... [k]_i.
pub fn q_fact(k: i64, d: i64) -> Scalar {
    let mut acc = Scalar::one();
    for m in 1..=k {
        acc = acc.mul_ref(&q_int(m, d));
    }
    acc
}

/// Gaussian binomial [m choose k]_i, zero outside 0 <= k <= m. Always a
/// Laurent polynomial after reduction.
pub fn q_binom(m: i64, k: i64, d: i64) -> Scalar {
    if k < 0 || k > m {
        return Scalar::zero();
    }
    let mut num = Scalar::one();
    for j in 0..k {
        num = num.mul_ref(&q_int(m - j, d));
    }
    num.div_ref(&q_fact(k, d)).unwrap()
}

/// q_i - q_i^-1 with q_i = q^d; ubiquitous normalization factor.
pub fn q_minus_qinv(d: i64) -> Scalar {
    Scalar::from_terms(
        &[(BigInt::one(), d), (BigInt::from(-1), -d)],
        &[(BigInt::one(), 0)],
    )
    .unwrap()
}

/// Substitute q -> q^d (exponent stretching); exact on every scalar.
pub fn stretch(s: &Scalar, d: i64) -> Scalar {
    debug_assert!(d > 0);
    let conv = |ts: Vec<(BigInt, i64)>| -> Vec<(BigInt, i64)> {
        ts.into_iter().map(|(c, e)| (c, e * d)).collect()
    };
    Scalar::from_terms(&conv(s.num_terms()), &conv(s.den_terms())).unwrap()
}

/// Total degree measure used for pivot selection in exact elimination.
pub fn complexity(s: &Scalar) -> usize {
    s.num.coeffs.len() + s.den.coeffs.len()
}

/// Deterministic pivot comparison: prefer smaller complexity.
pub fn pivot_cmp(a: &Scalar, b: &Scalar) -> Ordering {
    complexity(a).cmp(&complexity(b))
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Scalar {
        Scalar::q_pow(1)
    }
    fn qi() -> Scalar {
        Scalar::q_pow(-1)
    }

    #[test]
    fn cancellation_and_identity() {
        // (q - q^-1) + q^-1 = q
        let a = q().sub_ref(&qi());
        assert_eq!(a.add_ref(&qi()), q());
        // q * q^-1 = 1
        assert!(q().mul_ref(&qi()).is_one());
    }

    #[test]
    fn gcd_reduction() {
        // (q^2 - 1)/(q - 1) = q + 1
        let n = Scalar::from_terms(
            &[(BigInt::one(), 2), (BigInt::from(-1), 0)],
            &[(BigInt::one(), 0)],
        )
        .unwrap();
        let d = q().sub_ref(&Scalar::one());
        let expect = q().add_ref(&Scalar::one());
        assert_eq!(n.div_ref(&d).unwrap(), expect);
    }

    #[test]
    fn q_int_values() {
        assert!(q_int(0, 1).is_zero());
        assert!(q_int(1, 1).is_one());
        // [2] = q + q^-1
        assert_eq!(q_int(2, 1), q().add_ref(&qi()));
        // q_i = q^2: [2]_2 = q^2 + q^-2
        assert_eq!(q_int(2, 2), Scalar::q_pow(2).add_ref(&Scalar::q_pow(-2)));
    }

    #[test]
    fn q_binom_value() {
        // [4 choose 2] = q^-4 + q^-2 + 2 + q^2 + q^4
        let b = q_binom(4, 2, 1);
        let expect = Scalar::from_terms(
            &[
                (BigInt::one(), -4),
                (BigInt::one(), -2),
                (BigInt::from(2), 0),
                (BigInt::one(), 2),
                (BigInt::one(), 4),
            ],
            &[(BigInt::one(), 0)],
        )
        .unwrap();
        assert_eq!(b, expect);
        assert!(b.is_laurent_poly());
    }

    #[test]
    fn q_binom_always_laurent() {
        for m in 0..=8 {
            for k in 0..=m {
                for d in 1..=3 {
                    assert!(q_binom(m, k, d).is_laurent_poly(), "m={m} k={k} d={d}");
                }
            }
        }
    }

    #[test]
    fn eval_at_values() {
        let two = BigRational::from_integer(2.into());
        // q + q^-1 at 2 -> 5/2
        let v = q().add_ref(&qi()).eval_at(&two).unwrap();
        assert_eq!(v, BigRational::new(5.into(), 2.into()));
        assert_eq!(Scalar::zero().eval_at(&two).unwrap(), BigRational::zero());
        // (q^2-1)/(q-1) at 3 -> 4
        let s = Scalar::from_terms(
            &[(BigInt::one(), 2), (BigInt::from(-1), 0)],
            &[(BigInt::one(), 1), (BigInt::from(-1), 0)],
        )
        .unwrap();
        let three = BigRational::from_integer(3.into());
        assert_eq!(s.eval_at(&three).unwrap(), BigRational::from_integer(4.into()));
        // canonical form has already cancelled the apparent pole at 1
        let one = BigRational::one();
        assert_eq!(s.eval_at(&one).unwrap(), BigRational::from_integer(2.into()));
        // a genuine pole
        let p = Scalar::one()
            .div_ref(&q().sub_ref(&Scalar::one()))
            .unwrap();
        assert_eq!(p.eval_at(&one), Err(ScalarError::Pole));
    }

    #[test]
    fn div_by_zero_errors() {
        assert_eq!(Scalar::one().div_ref(&Scalar::zero()), Err(ScalarError::DivisionByZero));
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn display_and_json_roundtrip() {
        let s = q_int(2, 1).div_ref(&q_minus_qinv(1)).unwrap();
        let txt = serde_json::to_string(&s).unwrap();
        let back: Scalar = serde_json::from_str(&txt).unwrap();
        assert_eq!(s, back);
        assert_eq!(format!("{}", Scalar::q_pow(-1)), "( 1 ) / ( q^1 )");
    }

    // small random scalars for property tests
    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (
            prop::collection::vec((-4i64..=4, -3i64..=3), 0..4),
            prop::collection::vec((-4i64..=4, -3i64..=3), 1..3),
        )
            .prop_map(|(n, d)| {
                let conv = |v: Vec<(i64, i64)>| -> Vec<(BigInt, i64)> {
                    v.into_iter().map(|(c, e)| (BigInt::from(c), e)).collect()
                };
                let num = conv(n);
                let mut den = conv(d);
                // exponent outside the random range, so the sum cannot vanish
                den.push((BigInt::one(), 9));
                Scalar::from_terms(&num, &den).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            let ab_c = a.add_ref(&b).add_ref(&c);
            let a_bc = a.add_ref(&b.add_ref(&c));
            prop_assert_eq!(ab_c, a_bc);
            let l = a.mul_ref(&b.add_ref(&c));
            let r = a.mul_ref(&b).add_ref(&a.mul_ref(&c));
            prop_assert_eq!(l, r);
            let m = a.mul_ref(&b).mul_ref(&c);
            let m2 = a.mul_ref(&b.mul_ref(&c));
            prop_assert_eq!(m, m2);
        }

        #[test]
        fn eval_is_multiplicative(a in arb_scalar(), b in arb_scalar()) {
            let r = BigRational::new(5.into(), 3.into());
            let (ea, eb) = (a.eval_at(&r), b.eval_at(&r));
            if let (Ok(ea), Ok(eb)) = (ea, eb) {
                if let Ok(eab) = a.mul_ref(&b).eval_at(&r) {
                    prop_assert_eq!(eab, ea * eb);
                }
            }
        }

        #[test]
        fn inv_roundtrip(a in arb_scalar()) {
            if !a.is_zero() {
                prop_assert!(a.mul_ref(&a.inv().unwrap()).is_one());
            }
        }
    }
}
