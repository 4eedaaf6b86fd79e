//! Complete discretely valued fields.
//!
//! Two backends share one element type:
//!
//! * `PAdic { p }`: the p-adic numbers with capped relative precision. An
//!   element is `p^val * u` where `u` is a unit known modulo `p^prec`.
//! * `Laurent`: formal Laurent series `Q((T))` with rational coefficients.
//!   Elements are sparse lists of coefficients; an element is *exact* when
//!   nothing beyond the stored terms is hidden, otherwise its coefficients
//!   are known up to relative offset `prec`.
//!
//! Results whose significant window is empty (all known digits cancel) are
//! kept as "zero to precision" elements carrying an absolute bound. Exact
//! zero is the only element with an infinite valuation and no bound.
//! Absolute values never appear: `|x| < |y|` is `v(x) > v(y)`.

mod json;

pub use json::{DigitJson, ElementJson, FieldSpecJson, ValJson};

use std::cmp::{min, Ordering};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which completion of which field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    PAdic { p: u64 },
    Laurent,
}

/// A backend together with its precision cap (significant base-p digits, or
/// T-adic window length).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub backend: Backend,
    pub precision_cap: u32,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn padic(p: u64, precision_cap: u32) -> Result<Self> {
        let spec = FieldSpec { backend: Backend::PAdic { p }, precision_cap };
        spec.validate()?;
        Ok(spec)
    }

    pub fn laurent(precision_cap: u32) -> Result<Self> {
        let spec = FieldSpec { backend: Backend::Laurent, precision_cap };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision_cap == 0 {
            return Err(Error::InvalidField("precision_cap must be at least 1".into()));
        }
        if let Backend::PAdic { p } = self.backend {
            if !is_prime(p) {
                return Err(Error::InvalidField(format!("{p} is not prime")));
            }
        }
        Ok(())
    }

    pub fn prime(&self) -> Option<u64> {
        match self.backend {
            Backend::PAdic { p } => Some(p),
            Backend::Laurent => None,
        }
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self.backend, Backend::Laurent)
    }

    /// Both backends have characteristic zero.
    pub fn characteristic_zero(&self) -> bool {
        true
    }

    pub fn with_cap(self, precision_cap: u32) -> Self {
        FieldSpec { precision_cap, ..self }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.backend {
            Backend::PAdic { p } => write!(f, "Q_{p} (cap {})", self.precision_cap),
            Backend::Laurent => write!(f, "Q((T)) (cap {})", self.precision_cap),
        }
    }
}

/// The additive valuation of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    /// Exact zero.
    Infinite,
    /// Zero to precision: the true valuation is at least this bound.
    AtLeast(i64),
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// A guaranteed lower bound, `None` meaning `+inf`.
    pub fn lower_bound(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Outcome of a zero test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    ExactZero,
    /// Every known digit vanishes; the element is `0 mod pi^k`.
    ZeroToPrecision(i64),
    NonZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Zero { abs: Option<i64> },
    PAdic { val: i64, unit: BigInt, prec: u32 },
    Laurent { val: i64, terms: Vec<(u32, BigRational)>, prec: u32, exact: bool },
}

/// An element of a complete discretely valued field with tracked precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedElement {
    field: FieldSpec,
    repr: Repr,
}

fn big_pow(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// p-adic valuation of a nonzero integer, returning the cofactor too.
fn split_p(mut n: BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut k = 0i64;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (k, n);
        }
        n = q;
        k += 1;
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

fn opt_min(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(min(x, y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl ValuedElement {
    // ---- construction -------------------------------------------------

    pub fn zero(field: FieldSpec) -> Self {
        ValuedElement { field, repr: Repr::Zero { abs: None } }
    }

    /// The element known only to be `0 mod pi^abs`.
    pub fn zero_to(field: FieldSpec, abs: i64) -> Self {
        ValuedElement { field, repr: Repr::Zero { abs: Some(abs) } }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: FieldSpec, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        match field.backend {
            Backend::PAdic { p } => {
                if n.is_zero() {
                    return Self::zero(field);
                }
                let (k, _) = split_p(n.clone(), p);
                Self::padic_normalize(field, 0, n, Some(k + field.precision_cap as i64))
            }
            Backend::Laurent => Self::laurent_normalize(field, vec![(0, BigRational::from_integer(n))], None),
        }
    }

    pub fn from_rational(field: FieldSpec, q: BigRational) -> Self {
        match field.backend {
            Backend::PAdic { p } => {
                if q.is_zero() {
                    return Self::zero(field);
                }
                let (vn, num) = split_p(q.numer().clone(), p);
                let (vd, den) = split_p(q.denom().clone(), p);
                let prec = field.precision_cap;
                let modulus = big_pow(p, prec);
                let inv = mod_inverse(&den, &modulus).expect("unit denominator is invertible");
                let unit = (num * inv).mod_floor(&modulus);
                ValuedElement { field, repr: Repr::PAdic { val: vn - vd, unit, prec } }
            }
            Backend::Laurent => Self::laurent_normalize(field, vec![(0, q)], None),
        }
    }

    /// The uniformizer: `p` for the p-adic backend, `T` for Laurent series.
    pub fn uniformizer(field: FieldSpec) -> Self {
        Self::monomial(field, BigRational::one(), 1)
    }

    /// `c * pi^e`.
    pub fn monomial(field: FieldSpec, c: BigRational, e: i64) -> Self {
        match field.backend {
            Backend::PAdic { .. } => {
                let x = Self::from_rational(field, c);
                x.shift(e)
            }
            Backend::Laurent => Self::laurent_normalize(field, vec![(e, c)], None),
        }
    }

    /// p-adic element `value * p^m` known modulo `p^abs` (`None`: modulo
    /// `p^(v + cap)`).
    fn padic_normalize(field: FieldSpec, m: i64, value: BigInt, abs: Option<i64>) -> Self {
        let p = field.prime().expect("p-adic field");
        let cap = field.precision_cap as i64;
        if value.is_zero() {
            return match abs {
                Some(a) => Self::zero_to(field, a),
                None => Self::zero(field),
            };
        }
        if let Some(a) = abs {
            if a <= m {
                return Self::zero_to(field, a);
            }
            let modulus = big_pow(p, (a - m) as u32);
            let r = value.mod_floor(&modulus);
            if r.is_zero() {
                return Self::zero_to(field, a);
            }
            let (k, unit) = split_p(r, p);
            let val = m + k;
            let prec = min(a - val, cap) as u32;
            let unit = unit.mod_floor(&big_pow(p, prec));
            ValuedElement { field, repr: Repr::PAdic { val, unit, prec } }
        } else {
            let (k, unit) = split_p(value, p);
            let val = m + k;
            let prec = cap as u32;
            let unit = unit.mod_floor(&big_pow(p, prec));
            ValuedElement { field, repr: Repr::PAdic { val, unit, prec } }
        }
    }

    /// Laurent element from absolute-exponent terms known below `abs`
    /// (`None`: exactly).
    fn laurent_normalize(field: FieldSpec, terms: Vec<(i64, BigRational)>, abs: Option<i64>) -> Self {
        let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if abs.is_some_and(|a| e >= a) {
                continue;
            }
            *acc.entry(e).or_insert_with(BigRational::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        Self::laurent_from_map(field, acc, abs)
    }

    fn laurent_from_map(field: FieldSpec, acc: BTreeMap<i64, BigRational>, abs: Option<i64>) -> Self {
        let cap = field.precision_cap as i64;
        let Some((&val, _)) = acc.iter().next() else {
            return ValuedElement { field, repr: Repr::Zero { abs } };
        };
        let (prec, mut exact) = match abs {
            Some(a) => (min(a - val, cap), false),
            None => (cap, true),
        };
        let mut out = Vec::new();
        for (e, c) in acc {
            let off = e - val;
            if off < prec {
                out.push((off as u32, c));
            } else {
                exact = false;
            }
        }
        ValuedElement { field, repr: Repr::Laurent { val, terms: out, prec: prec as u32, exact } }
    }

    /// Builds a p-adic element from base-p digits (any integers allowed; they
    /// are summed as `sum d_i p^i`) known to `prec` relative digits.
    pub fn from_padic_digits(field: FieldSpec, val: i64, digits: &[BigInt], prec: u32) -> Result<Self> {
        let p = field.prime().ok_or(Error::FieldMismatch)?;
        let prec = min(prec, field.precision_cap);
        let mut value = BigInt::zero();
        for d in digits.iter().rev() {
            value = value * BigInt::from(p) + d;
        }
        Ok(Self::padic_normalize(field, val, value, Some(val + prec as i64)))
    }

    /// Builds a Laurent element `T^val * sum c_i T^i`.
    pub fn from_laurent_coeffs(field: FieldSpec, val: i64, coeffs: &[BigRational], prec: u32, exact: bool) -> Result<Self> {
        if !field.is_laurent() {
            return Err(Error::FieldMismatch);
        }
        let terms = coeffs.iter().enumerate().map(|(i, c)| (val + i as i64, c.clone())).collect();
        let abs = if exact { None } else { Some(val + min(prec, field.precision_cap) as i64) };
        Ok(Self::laurent_normalize(field, terms, abs))
    }

    // ---- inspection ----------------------------------------------------

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            Repr::Zero { abs: None } => Valuation::Infinite,
            Repr::Zero { abs: Some(k) } => Valuation::AtLeast(*k),
            Repr::PAdic { val, .. } | Repr::Laurent { val, .. } => Valuation::Finite(*val),
        }
    }

    /// The finite valuation, or `PrecisionExhausted` for a zero to
    /// precision. Exact zero also errors since callers asking for a number
    /// need a nonzero element.
    pub fn checked_valuation(&self) -> Result<i64> {
        match self.valuation() {
            Valuation::Finite(v) => Ok(v),
            Valuation::AtLeast(k) => Err(Error::precision(format!("element is zero modulo pi^{k}"))),
            Valuation::Infinite => Err(Error::EmptyInput("valuation of exact zero".into())),
        }
    }

    /// True when no digits are hidden: exact zero or an exact Laurent element.
    pub fn is_exact(&self) -> bool {
        match &self.repr {
            Repr::Zero { abs } => abs.is_none(),
            Repr::PAdic { .. } => false,
            Repr::Laurent { exact, .. } => *exact,
        }
    }

    /// Relative known precision (`None` for exact elements).
    pub fn known_precision(&self) -> Option<u32> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::PAdic { prec, .. } => Some(*prec),
            Repr::Laurent { prec, exact, .. } => (!exact).then_some(*prec),
        }
    }

    /// Absolute precision: digits at `pi^k` for `k >=` this are unknown.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero { abs } => *abs,
            Repr::PAdic { val, prec, .. } => Some(val + *prec as i64),
            Repr::Laurent { val, prec, exact, .. } => (!exact).then_some(val + *prec as i64),
        }
    }

    pub fn zero_test(&self) -> ZeroTest {
        match &self.repr {
            Repr::Zero { abs: None } => ZeroTest::ExactZero,
            Repr::Zero { abs: Some(k) } => ZeroTest::ZeroToPrecision(*k),
            _ => ZeroTest::NonZero,
        }
    }

    pub fn is_zero_to_precision(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { abs: None })
    }

    pub fn eq_to_precision(&self, other: &Self) -> bool {
        (self - other).is_zero_to_precision()
    }

    /// Exact equality, when decidable: `None` if the difference is only
    /// known to vanish to precision.
    pub fn exact_eq(&self, other: &Self) -> Option<bool> {
        match (self - other).zero_test() {
            ZeroTest::ExactZero => Some(true),
            ZeroTest::NonZero => Some(false),
            ZeroTest::ZeroToPrecision(_) => None,
        }
    }

    /// Element of the valuation ring (zero counts).
    pub fn is_integral(&self) -> bool {
        match self.valuation() {
            Valuation::Finite(v) => v >= 0,
            _ => true,
        }
    }

    /// Unit-part digits: base-p digits (little endian, trailing zeros
    /// trimmed) or Laurent coefficients (dense up to the last nonzero one).
    pub fn mantissa(&self) -> Mantissa {
        match &self.repr {
            Repr::Zero { .. } => Mantissa::Empty,
            Repr::PAdic { unit, .. } => {
                let p = BigInt::from(self.field.prime().unwrap());
                let mut digits = Vec::new();
                let mut u = unit.clone();
                while !u.is_zero() {
                    let (q, r) = u.div_rem(&p);
                    digits.push(r.to_u64().unwrap());
                    u = q;
                }
                Mantissa::Digits(digits)
            }
            Repr::Laurent { terms, .. } => {
                let len = terms.last().map_or(0, |(o, _)| *o as usize + 1);
                let mut dense = vec![BigRational::zero(); len];
                for (o, c) in terms {
                    dense[*o as usize] = c.clone();
                }
                Mantissa::Coefficients(dense)
            }
        }
    }

    /// Leading coefficient of a Laurent element / leading digit of a p-adic one.
    pub fn leading_coefficient(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::PAdic { unit, .. } => {
                let p = BigInt::from(self.field.prime().unwrap());
                Some(BigRational::from_integer(unit.mod_floor(&p)))
            }
            Repr::Laurent { terms, .. } => Some(terms[0].1.clone()),
        }
    }

    // ---- arithmetic -----------------------------------------------------

    fn check_field(&self, other: &Self) {
        assert_eq!(self.field, other.field, "operands belong to different fields");
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.add_impl(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul_impl(other))
    }

    fn add_impl(&self, other: &Self) -> Self {
        self.check_field(other);
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        let abs = opt_min(self.abs_precision(), other.abs_precision());
        match self.field.backend {
            Backend::PAdic { p } => {
                let parts: Vec<(i64, &BigInt)> = [&self.repr, &other.repr]
                    .into_iter()
                    .filter_map(|r| match r {
                        Repr::PAdic { val, unit, .. } => Some((*val, unit)),
                        _ => None,
                    })
                    .collect();
                let Some(m) = parts.iter().map(|(v, _)| *v).min() else {
                    return Self::zero_to(self.field, abs.unwrap());
                };
                if abs.is_some_and(|a| a <= m) {
                    return Self::zero_to(self.field, abs.unwrap());
                }
                let mut sum = BigInt::zero();
                for (v, u) in parts {
                    sum += u * big_pow(p, (v - m) as u32);
                }
                Self::padic_normalize(self.field, m, sum, abs)
            }
            Backend::Laurent => {
                let mut terms = Vec::new();
                for r in [&self.repr, &other.repr] {
                    if let Repr::Laurent { val, terms: t, .. } = r {
                        terms.extend(t.iter().map(|(o, c)| (val + *o as i64, c.clone())));
                    }
                }
                Self::laurent_normalize(self.field, terms, abs)
            }
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check_field(other);
        let field = self.field;
        match (&self.repr, &other.repr) {
            (Repr::Zero { abs: None }, _) | (_, Repr::Zero { abs: None }) => Self::zero(field),
            (Repr::Zero { abs: Some(a) }, Repr::Zero { abs: Some(b) }) => Self::zero_to(field, a + b),
            (Repr::Zero { abs: Some(a) }, _) => Self::zero_to(field, a + other.valuation().finite().unwrap()),
            (_, Repr::Zero { abs: Some(b) }) => Self::zero_to(field, b + self.valuation().finite().unwrap()),
            (Repr::PAdic { val: v1, unit: u1, prec: r1 }, Repr::PAdic { val: v2, unit: u2, prec: r2 }) => {
                let p = field.prime().unwrap();
                let prec = min(*r1, *r2);
                let unit = (u1 * u2).mod_floor(&big_pow(p, prec));
                ValuedElement { field, repr: Repr::PAdic { val: v1 + v2, unit, prec } }
            }
            (
                Repr::Laurent { val: v1, terms: t1, prec: r1, exact: e1 },
                Repr::Laurent { val: v2, terms: t2, prec: r2, exact: e2 },
            ) => {
                let val = v1 + v2;
                // relative window of the product
                let window: Option<i64> = match (*e1, *e2) {
                    (true, true) => None,
                    (true, false) => Some(*r2 as i64),
                    (false, true) => Some(*r1 as i64),
                    (false, false) => Some(min(*r1, *r2) as i64),
                };
                // integer convolution over a common denominator
                let (n1, d1) = integerize(t1);
                let (n2, d2) = integerize(t2);
                let top = (t1.last().unwrap().0 + t2.last().unwrap().0) as i64 + 1;
                let len = window.map_or(top, |w| w.min(top)) as usize;
                let mut acc = vec![BigInt::zero(); len];
                for (o1, c1) in &n1 {
                    for (o2, c2) in &n2 {
                        let o = (*o1 + *o2) as usize;
                        if o >= len {
                            break;
                        }
                        acc[o] += c1 * c2;
                    }
                }
                let den = d1 * d2;
                let map = acc
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(o, c)| (val + o as i64, BigRational::new(c, den.clone())))
                    .collect();
                Self::laurent_from_map(field, map, window.map(|w| val + w))
            }
            _ => unreachable!("field-checked operands share a backend"),
        }
    }

    pub fn neg(&self) -> Self {
        let field = self.field;
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::PAdic { val, unit, prec } => {
                let m = big_pow(field.prime().unwrap(), *prec);
                ValuedElement { field, repr: Repr::PAdic { val: *val, unit: (-unit).mod_floor(&m), prec: *prec } }
            }
            Repr::Laurent { val, terms, prec, exact } => ValuedElement {
                field,
                repr: Repr::Laurent {
                    val: *val,
                    terms: terms.iter().map(|(o, c)| (*o, -c)).collect(),
                    prec: *prec,
                    exact: *exact,
                },
            },
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let field = self.field;
        match &self.repr {
            Repr::Zero { abs: None } => Err(Error::DivisionByZero),
            Repr::Zero { abs: Some(k) } => Err(Error::precision(format!("inverting an element known only modulo pi^{k}"))),
            Repr::PAdic { val, unit, prec } => {
                let m = big_pow(field.prime().unwrap(), *prec);
                let inv = mod_inverse(unit, &m).expect("unit is invertible");
                Ok(ValuedElement { field, repr: Repr::PAdic { val: -val, unit: inv, prec: *prec } })
            }
            Repr::Laurent { val, terms, prec, exact } => {
                if *exact && terms.len() == 1 {
                    return Ok(Self::laurent_normalize(field, vec![(-val, terms[0].1.recip())], None));
                }
                // power-series inverse of the unit part to `prec` terms
                let n = *prec as usize;
                let c0_inv = terms[0].1.recip();
                let mut b: Vec<BigRational> = Vec::with_capacity(n);
                b.push(c0_inv.clone());
                for k in 1..n {
                    let mut s = BigRational::zero();
                    for (o, c) in terms.iter().skip(1) {
                        let o = *o as usize;
                        if o > k {
                            break;
                        }
                        if !b[k - o].is_zero() {
                            s += c * &b[k - o];
                        }
                    }
                    b.push(-(s * &c0_inv));
                }
                let out = b.into_iter().enumerate().map(|(i, c)| (i as i64 - val, c)).collect();
                Ok(Self::laurent_normalize(field, out, Some(-val + *prec as i64)))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by `pi^k` (exactly).
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        match &mut out.repr {
            Repr::Zero { abs } => {
                if let Some(a) = abs {
                    *a += k;
                }
            }
            Repr::PAdic { val, .. } | Repr::Laurent { val, .. } => *val += k,
        }
        out
    }

    /// Forgets digits at and beyond `pi^abs`.
    pub fn with_abs_cap(&self, abs: i64) -> Self {
        self + &Self::zero_to(self.field, abs)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self * &Self::from_int(self.field, n)
    }
}

fn integerize(terms: &[(u32, BigRational)]) -> (Vec<(u32, BigInt)>, BigInt) {
    let den = terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let nums = terms.iter().map(|(o, c)| (*o, c.numer() * (&den / c.denom()))).collect();
    (nums, den)
}

/// Unit-part representation used by serialization and display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mantissa {
    Empty,
    Digits(Vec<u64>),
    Coefficients(Vec<BigRational>),
}

impl<'a> Add<&'a ValuedElement> for &'a ValuedElement {
    type Output = ValuedElement;
    fn add(self, rhs: &ValuedElement) -> ValuedElement {
        self.add_impl(rhs)
    }
}

impl<'a> Sub<&'a ValuedElement> for &'a ValuedElement {
    type Output = ValuedElement;
    fn sub(self, rhs: &ValuedElement) -> ValuedElement {
        self.add_impl(&rhs.neg())
    }
}

impl<'a> Mul<&'a ValuedElement> for &'a ValuedElement {
    type Output = ValuedElement;
    fn mul(self, rhs: &ValuedElement) -> ValuedElement {
        self.mul_impl(rhs)
    }
}

impl Neg for &ValuedElement {
    type Output = ValuedElement;
    fn neg(self) -> ValuedElement {
        ValuedElement::neg(self)
    }
}

impl Add for ValuedElement {
    type Output = ValuedElement;
    fn add(self, rhs: ValuedElement) -> ValuedElement {
        self.add_impl(&rhs)
    }
}

impl Sub for ValuedElement {
    type Output = ValuedElement;
    fn sub(self, rhs: ValuedElement) -> ValuedElement {
        &self - &rhs
    }
}

impl Mul for ValuedElement {
    type Output = ValuedElement;
    fn mul(self, rhs: ValuedElement) -> ValuedElement {
        self.mul_impl(&rhs)
    }
}

impl Neg for ValuedElement {
    type Output = ValuedElement;
    fn neg(self) -> ValuedElement {
        ValuedElement::neg(&self)
    }
}

/// Ordering by absolute value: `Less` when `|x| < |y|`, i.e. `v(x) > v(y)`.
/// `None` when a zero to precision makes the comparison undecidable.
pub fn compare_abs(x: &ValuedElement, y: &ValuedElement) -> Option<Ordering> {
    match (x.valuation(), y.valuation()) {
        (Valuation::Infinite, Valuation::Infinite) => Some(Ordering::Equal),
        (Valuation::Infinite, _) => Some(Ordering::Less),
        (_, Valuation::Infinite) => Some(Ordering::Greater),
        (Valuation::Finite(a), Valuation::Finite(b)) => Some(b.cmp(&a)),
        (Valuation::AtLeast(a), Valuation::Finite(b)) => (a > b).then_some(Ordering::Less),
        (Valuation::Finite(a), Valuation::AtLeast(b)) => (b > a).then_some(Ordering::Greater),
        (Valuation::AtLeast(_), Valuation::AtLeast(_)) => None,
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ValuedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (pi, tail) = match self.field.backend {
            Backend::PAdic { p } => (p.to_string(), self.abs_precision()),
            Backend::Laurent => ("T".to_string(), self.abs_precision()),
        };
        let mut parts = Vec::new();
        let val = self.valuation().finite().unwrap_or(0);
        match self.mantissa() {
            Mantissa::Empty => {}
            Mantissa::Digits(d) => {
                for (i, c) in d.iter().enumerate() {
                    if *c != 0 {
                        parts.push(format!("{c}*{pi}^{}", val + i as i64));
                    }
                }
            }
            Mantissa::Coefficients(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if !c.is_zero() {
                        parts.push(format!("{}*{pi}^{}", fmt_rational(c), val + i as i64));
                    }
                }
            }
        }
        if let Some(a) = tail {
            parts.push(format!("O({pi}^{a})"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
