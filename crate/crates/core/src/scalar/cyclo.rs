//! Exact elements of cyclotomic fields `Q(zeta_M)`.
//!
//! An element is stored in the power basis `1, z, .., z^(phi(M)-1)` reduced
//! modulo the cyclotomic polynomial, as integer numerators over one shared
//! positive denominator. The representation is canonical for a fixed order;
//! values of different orders are compared and combined in the field of the
//! least common multiple of the two orders.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{parse_fraction, to_fraction_string, Rational};
use crate::error::ZhuError;

struct FieldTables {
    phi: usize,
    /// Coefficients of the cyclotomic polynomial, low degree first (monic).
    poly: Vec<i64>,
    /// `powers[e]` = reduction of `z^e` for `0 <= e < M`.
    powers: Vec<Vec<i64>>,
}

static TABLES: Lazy<RwLock<HashMap<u32, Arc<FieldTables>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// Integer coefficients of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = poly_divide_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn tables(order: u32) -> Arc<FieldTables> {
    if let Some(t) = TABLES.read().get(&order) {
        return t.clone();
    }
    let poly = cyclotomic_polynomial(order);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by z and reduce the z^phi term
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
        if top != 0 {
            for j in 0..phi {
                next[j] -= top * poly[j];
            }
        }
        cur = next;
    }
    let t = Arc::new(FieldTables { phi, poly, powers });
    TABLES.write().entry(order).or_insert(t).clone()
}

/// Euler's totient of `m`.
pub fn totient(m: u32) -> usize {
    tables(m).phi
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Raw {
    num: Vec<BigInt>,
    den: BigInt,
}

/// An exact scalar in `Q(zeta_order)`.
#[derive(Clone)]
pub struct CycloScalar {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloScalar {
    pub fn zero() -> Self {
        Self::from_rational(&Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        CycloScalar { order: 1, num: vec![BigInt::from(n)], den: BigInt::one() }
    }

    pub fn from_rational(q: &Rational) -> Self {
        CycloScalar { order: 1, num: vec![q.numer().clone()], den: q.denom().clone() }
    }

    /// Builds from explicit power-basis coefficients (length must be `phi(order)`).
    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Result<Self, ZhuError> {
        if order == 0 {
            return Err(ZhuError::InvalidArgument("cyclotomic order must be positive".into()));
        }
        let phi = totient(order);
        if coeffs.len() != phi {
            return Err(ZhuError::InvalidArgument(format!(
                "expected {phi} coefficients for order {order}, got {}",
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(CycloScalar { order, num, den }.normalized())
    }

    /// `zeta_order^a` in canonical reduced form.
    pub fn root_of_unity(order: u32, a: i64) -> Self {
        assert!(order >= 1, "root_of_unity needs a positive order");
        let t = tables(order);
        let e = a.rem_euclid(order as i64) as usize;
        CycloScalar {
            order,
            num: t.powers[e].iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients over `Q`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|n| BigRational::new(n.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalized(mut self) -> Self {
        if self.is_zero() {
            self.den = BigInt::one();
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
        self
    }

    /// Embeds into `Q(zeta_target)`; `self.order` must divide `target`.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target.is_multiple_of(self.order), "cannot embed order {} into {}", self.order, target);
        let t = tables(target);
        let step = (target / self.order) as usize;
        let mut num = vec![BigInt::zero(); t.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &t.powers[(i * step) % target as usize];
            for (j, &r) in row.iter().enumerate() {
                if r != 0 {
                    num[j] += c * r;
                }
            }
        }
        CycloScalar { order: target, num, den: self.den.clone() }.normalized()
    }

    fn common(a: &Self, b: &Self) -> u32 {
        if a.order == b.order {
            a.order
        } else {
            a.order.lcm(&b.order)
        }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let order = Self::common(self, other);
        let (a, b);
        let (x, y) = if self.order == order && other.order == order {
            (self, other)
        } else {
            a = self.lift(order);
            b = other.lift(order);
            (&a, &b)
        };
        let (num, den) = if x.den == y.den {
            let num = x
                .num
                .iter()
                .zip(&y.num)
                .map(|(p, q)| if negate { p - q } else { p + q })
                .collect();
            (num, x.den.clone())
        } else {
            let num = x
                .num
                .iter()
                .zip(&y.num)
                .map(|(p, q)| {
                    let l = p * &y.den;
                    let r = q * &x.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (num, &x.den * &y.den)
        };
        CycloScalar { order, num, den }.normalized()
    }

    fn scale_rational(&self, q: &BigInt, d: &BigInt) -> Self {
        CycloScalar {
            order: self.order,
            num: self.num.iter().map(|c| c * q).collect(),
            den: &self.den * d,
        }
        .normalized()
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if other.order == 1 {
            return self.scale_rational(&other.num[0], &other.den);
        }
        if self.order == 1 {
            return other.scale_rational(&self.num[0], &self.den);
        }
        let order = Self::common(self, other);
        let (a, b);
        let (x, y) = if self.order == order && other.order == order {
            (self, other)
        } else {
            a = self.lift(order);
            b = other.lift(order);
            (&a, &b)
        };
        let t = tables(order);
        let phi = t.phi;
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, p) in x.num.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in y.num.iter().enumerate() {
                if !q.is_zero() {
                    conv[i + j] += p * q;
                }
            }
        }
        let mut num: Vec<BigInt> = conv[..phi].to_vec();
        for (e, c) in conv.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (j, &r) in t.powers[e % order as usize].iter().enumerate() {
                if r != 0 {
                    num[j] += c * r;
                }
            }
        }
        CycloScalar { order, num, den: &x.den * &y.den }.normalized()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against the
    /// cyclotomic polynomial.
    pub fn inv(&self) -> Result<Self, ZhuError> {
        if self.is_zero() {
            return Err(ZhuError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&q.recip()).lift(self.order));
        }
        let t = tables(self.order);
        let modulus: Vec<Rational> = t.poly.iter().map(|&c| Rational::from_integer(c.into())).collect();
        let a: Vec<Rational> = self.coeffs();
        let (mut r0, mut r1) = (trim(modulus), trim(a));
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let next = poly_sub(&s0, &poly_mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, next);
        }
        // r0 is a nonzero constant because the modulus is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let (_, inv) = poly_divrem(&s0, &trim(t.poly.iter().map(|&c| Rational::from_integer(c.into())).collect()));
        let mut coeffs: Vec<Rational> = inv.into_iter().map(|x| x / &c).collect();
        coeffs.resize(t.phi, Rational::zero());
        Self::from_coeffs(self.order, &coeffs)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ZhuError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Evaluates at `zeta = exp(2 pi i / order)` in double precision.
    pub fn embed_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / self.order as f64;
            acc += Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, theta);
        }
        acc
    }

    /// The canonical square root of a positive integer in `Q(zeta_{4k})`,
    /// built from the quadratic Gauss sum `G = sum_a zeta^(a^2)`, which
    /// equals `2 (1 + i) sqrt(k)`.
    pub fn sqrt_of_integer(k: u32) -> Self {
        assert!(k >= 1, "sqrt_of_integer needs k >= 1");
        let m = 4 * k;
        let mut g = Self::zero().lift(m);
        for a in 0..m as i64 {
            g += &Self::root_of_unity(m, (a * a) % m as i64);
        }
        let denom = &(&Self::one() + &Self::root_of_unity(m, k as i64)) * &Self::from_int(2);
        &g * &denom.inv().expect("1 + i is nonzero")
    }

    fn raw_at(&self, order: u32) -> Raw {
        let x = self.lift(order);
        Raw { num: x.num, den: x.den }
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        q[shift] = c;
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    (trim(q), rem)
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let l = Self::common(self, other);
        self.raw_at(l) == other.raw_at(l)
    }
}

impl Eq for CycloScalar {}

impl Default for CycloScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.mul_impl(rhs)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<&CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: &CycloScalar) -> CycloScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { order: self.order, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, rhs: &CycloScalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for CycloScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<&Rational> for CycloScalar {
    fn from(q: &Rational) -> Self {
        Self::from_rational(q)
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.order)?,
                _ => write!(f, "({c})*z{}^{i}", self.order)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr { order: self.order, coeffs: self.coeffs().iter().map(to_fraction_string).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| parse_fraction(c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        CycloScalar::from_coeffs(repr.order, &coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;
    use proptest::prelude::*;

    fn z(m: u32, a: i64) -> CycloScalar {
        CycloScalar::root_of_unity(m, a)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(24), 8);
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(z(4, 2), CycloScalar::from_int(-1));
        assert_eq!(&z(3, 1) + &z(3, 2), CycloScalar::from_int(-1));
        assert!(z(8, 8).is_one());
        assert_eq!(z(6, -1), z(6, 5));
    }

    #[test]
    fn root_powers_and_orders() {
        for m in 1..=24u32 {
            for a in 0..m as i64 {
                let r = z(m, a);
                assert!(r.pow(m as i64).unwrap().is_one(), "zeta_{m}^{a}");
                let ord = m / (a as u32).gcd(&m).max(1);
                let ord = if a == 0 { 1 } else { ord };
                for d in 1..ord {
                    assert!(!r.pow(d as i64).unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn field_op_examples() {
        let one = CycloScalar::one();
        let i = z(4, 1);
        assert_eq!(&(&one + &i) * &(&one - &i), CycloScalar::from_int(2));
        assert_eq!(CycloScalar::from_int(2).inv().unwrap(), CycloScalar::from_rational(&rat(1, 2)));
        for m in [3u32, 5, 8, 12] {
            for a in 1..m as i64 {
                assert_eq!(z(m, a).inv().unwrap(), z(m, m as i64 - a));
            }
        }
        assert!(matches!(CycloScalar::zero().inv(), Err(ZhuError::DivisionByZero)));
    }

    #[test]
    fn mixed_orders_coerce() {
        // zeta_4 inside Q(zeta_8) is zeta_8^2
        assert_eq!(z(4, 1), z(8, 2));
        assert_eq!(&z(4, 1) * &z(8, 1), z(8, 3));
        assert_eq!(&z(3, 1) * &z(4, 1), z(12, 7));
    }

    #[test]
    fn sqrt_examples() {
        assert!(CycloScalar::sqrt_of_integer(1).is_one());
        assert_eq!(CycloScalar::sqrt_of_integer(4), CycloScalar::from_int(2));
        let s2 = CycloScalar::sqrt_of_integer(2);
        assert_eq!(&s2 * &s2, CycloScalar::from_int(2));
        assert!((s2.embed_complex().re - std::f64::consts::SQRT_2).abs() < 1e-8);
        let s3 = CycloScalar::sqrt_of_integer(3).embed_complex();
        assert!((s3.re - 1.7320508).abs() < 1e-7 && s3.im.abs() < 1e-9);
        for k in 1..=8u32 {
            let s = CycloScalar::sqrt_of_integer(k);
            assert_eq!(&s * &s, CycloScalar::from_int(k as i64));
            let e = s.embed_complex();
            assert!(e.re > 0.0 && e.im.abs() < 1e-9);
        }
    }

    #[test]
    fn embeddings() {
        let e = CycloScalar::one().embed_complex();
        assert_eq!((e.re, e.im), (1.0, 0.0));
        let e = z(4, 1).embed_complex();
        assert!(e.re.abs() < 1e-12 && (e.im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn serde_round_trip() {
        let x = &z(12, 5) + &CycloScalar::from_rational(&rat(-3, 7));
        let js = serde_json::to_string(&x).unwrap();
        let y: CycloScalar = serde_json::from_str(&js).unwrap();
        assert_eq!(x, y);
    }

    fn arb_scalar(m: u32) -> impl Strategy<Value = CycloScalar> {
        let phi = totient(m);
        prop::collection::vec((-20i64..20, 1i64..6), phi).prop_map(move |cs| {
            let coeffs: Vec<Rational> = cs.iter().map(|&(n, d)| rat(n, d)).collect();
            CycloScalar::from_coeffs(m, &coeffs).unwrap()
        })
    }

    fn arb_triple() -> impl Strategy<Value = (CycloScalar, CycloScalar, CycloScalar)> {
        prop::sample::select(vec![3u32, 4, 8, 12, 20])
            .prop_flat_map(|m| (arb_scalar(m), arb_scalar(m), arb_scalar(m)))
    }

    proptest! {
        #[test]
        fn field_axioms((x, y, w) in arb_triple()) {
            prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
            prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
            prop_assert_eq!(&x + &y, &y + &x);
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
            let ex = (&x * &y).embed_complex();
            let pr = x.embed_complex() * y.embed_complex();
            prop_assert!((ex - pr).norm() < 1e-9 * (1.0 + pr.norm()));
        }
    }
}
