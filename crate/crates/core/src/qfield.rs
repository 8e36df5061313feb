//! Exact arithmetic in the rational function field ℚ(q).
//!
//! A [`QRat`] is stored as a reduced quotient of two integer polynomials in `q`.
//! Negative powers of `q` live in the denominator, so `q^-3` is `1 / q^3`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Dense integer polynomial, `c[k]` is the coefficient of `q^k`. No trailing zeros.
type Poly = Vec<BigInt>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn padd(a: &[BigInt], b: &[BigInt]) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Poly = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

fn pneg(a: &[BigInt]) -> Poly {
    a.iter().map(|c| -c).collect()
}

fn pmul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn low_degree(a: &[BigInt]) -> usize {
    a.iter().position(|c| !c.is_zero()).unwrap_or(0)
}

fn is_monomial(a: &[BigInt]) -> bool {
    a.iter().filter(|c| !c.is_zero()).count() == 1
}

/// Primitive part with positive leading coefficient.
fn primitive(a: &[BigInt]) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut r: Poly = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (k, y) in b.iter().enumerate() {
            r[shift + k] -= &lr * y;
        }
        trim(&mut r);
        // keep coefficients small
        let c = content(&r);
        if !c.is_zero() && !c.is_one() {
            for x in r.iter_mut() {
                *x = &*x / &c;
            }
        }
    }
    r
}

/// Primitive gcd over ℤ[q] with positive leading coefficient.
fn pgcd(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    // pull out the common power of q first; most denominators are monomials
    let shift = low_degree(a).min(low_degree(b));
    let mut x = primitive(&a[low_degree(a)..]);
    let mut y = primitive(&b[low_degree(b)..]);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            x = vec![BigInt::one()];
            break;
        }
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    let mut g = vec![BigInt::zero(); shift];
    g.extend(primitive(&x));
    g
}

/// Exact division over ℤ; panics if the remainder is nonzero (internal invariant).
fn pdiv_exact(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r: Poly = a.to_vec();
    let mut qt = vec![BigInt::zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let (c, rem) = r.last().unwrap().div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        for (k, y) in b.iter().enumerate() {
            r[shift + k] -= &c * y;
        }
        qt[shift] = c;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut qt);
    qt
}

/// An element of ℚ(q) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: Poly,
    den: Poly,
}

impl QRat {
    pub fn zero() -> Self {
        QRat {
            num: Vec::new(),
            den: vec![BigInt::one()],
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        let mut num = vec![n];
        trim(&mut num);
        QRat {
            num,
            den: vec![BigInt::one()],
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_int(n) / Self::from_int(d)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let mono = |e: usize| {
            let mut p = vec![BigInt::zero(); e];
            p.push(BigInt::one());
            p
        };
        if k >= 0 {
            QRat {
                num: mono(k as usize),
                den: vec![BigInt::one()],
            }
        } else {
            QRat {
                num: vec![BigInt::one()],
                den: mono((-k) as usize),
            }
        }
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv() -> Self {
        Self::q_pow(1) - Self::q_pow(-1)
    }

    /// Builds `num / den` from coefficient lists (index = power of q) and normalizes.
    pub fn from_polys(num: Vec<BigInt>, den: Vec<BigInt>) -> Result<Self, QError> {
        let mut num = num;
        let mut den = den;
        trim(&mut num);
        trim(&mut den);
        if den.is_empty() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: Poly, mut den: Poly) -> Self {
        if num.is_empty() {
            return Self::zero();
        }
        if den.len() > 1 {
            let g = if is_monomial(&den) {
                let k = low_degree(&num).min(den.len() - 1);
                let mut g = vec![BigInt::zero(); k];
                g.push(BigInt::one());
                g
            } else {
                pgcd(&num, &den)
            };
            if g.len() > 1 {
                num = pdiv_exact(&num, &g);
                den = pdiv_exact(&den, &g);
            }
        }
        let mut c = content(&num).gcd(&content(&den));
        if den.last().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            for x in num.iter_mut() {
                *x = &*x / &c;
            }
            for x in den.iter_mut() {
                *x = &*x / &c;
            }
        }
        QRat { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.len() == 1 && self.den[0].is_one() && self.num.len() == 1 && self.num[0].is_one()
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.den
    }

    /// Integer coefficient if this is a constant integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        (self.num.len() == 1 && self.den.len() == 1 && self.den[0].is_one()).then(|| self.num[0].clone())
    }

    pub fn inv(&self) -> Result<Self, QError> {
        if self.is_zero() {
            return Err(QError::DivisionByZero);
        }
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if den.last().unwrap().is_negative() {
            num = pneg(&num);
            den = pneg(&den);
        }
        Ok(QRat { num, den })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, QError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_at(&self, t: &BigRational) -> Result<BigRational, QError> {
        let ev = |p: &[BigInt]| {
            p.iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * t + BigRational::from_integer(c.clone()))
        };
        let d = ev(&self.den);
        if d.is_zero() {
            return Err(QError::Pole(t.to_string()));
        }
        Ok(ev(&self.num) / d)
    }

    pub fn parse(s: &str) -> Result<Self, QError> {
        Parser { s: s.as_bytes(), pos: 0 }.parse_all()
    }
}

impl Default for QRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QRat {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return QRat::normalized(padd(&self.num, &o.num), self.den.clone());
        }
        let n = padd(&pmul(&self.num, &o.den), &pmul(&o.num, &self.den));
        QRat::normalized(n, pmul(&self.den, &o.den))
    }
}

impl<'a> Sub<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        if self.is_zero() || o.is_zero() {
            return QRat::zero();
        }
        if self.den.len() == 1 && o.den.len() == 1 && self.den[0].is_one() && o.den[0].is_one() {
            return QRat {
                num: pmul(&self.num, &o.num),
                den: vec![BigInt::one()],
            };
        }
        QRat::normalized(pmul(&self.num, &o.num), pmul(&self.den, &o.den))
    }
}

impl<'a> Div<&'a QRat> for &'a QRat {
    type Output = QRat;
    /// Panics on division by zero; use [`QRat::checked_div`] for a `Result`.
    fn div(self, o: &QRat) -> QRat {
        self.checked_div(o).expect("division by zero in QRat")
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: pneg(&self.num),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QRat> for QRat {
            type Output = QRat;
            fn $m(self, o: QRat) -> QRat {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QRat> for QRat {
            type Output = QRat;
            fn $m(self, o: &QRat) -> QRat {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QRat> for &'a QRat {
            type Output = QRat;
            fn $m(self, o: QRat) -> QRat {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl AddAssign<&QRat> for QRat {
    fn add_assign(&mut self, o: &QRat) {
        *self = &*self + o;
    }
}

impl SubAssign<&QRat> for QRat {
    fn sub_assign(&mut self, o: &QRat) {
        *self = &*self - o;
    }
}

impl MulAssign<&QRat> for QRat {
    fn mul_assign(&mut self, o: &QRat) {
        *self = &*self * o;
    }
}

fn fmt_poly(p: &[BigInt], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        match (k, a.is_one()) {
            (0, _) => write!(f, "{a}")?,
            (1, true) => write!(f, "q")?,
            (1, false) => write!(f, "{a}*q")?,
            (_, true) => write!(f, "q^{k}")?,
            (_, false) => write!(f, "{a}*q^{k}")?,
        }
    }
    Ok(())
}

fn is_single_term(p: &[BigInt]) -> bool {
    p.iter().filter(|c| !c.is_zero()).count() <= 1
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_is_one = self.den.len() == 1 && self.den[0].is_one();
        if den_is_one {
            return fmt_poly(&self.num, f);
        }
        // a leading minus sign in a single term is fine without parentheses
        if is_single_term(&self.num) {
            fmt_poly(&self.num, f)?;
        } else {
            write!(f, "(")?;
            fmt_poly(&self.num, f)?;
            write!(f, ")")?;
        }
        write!(f, " / ")?;
        let bare = self.den.len() == 1 || (is_single_term(&self.den) && self.den.last().unwrap().is_one());
        if bare {
            fmt_poly(&self.den, f)
        } else {
            write!(f, "(")?;
            fmt_poly(&self.den, f)?;
            write!(f, ")")
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

impl FromStr for QRat {
    type Err = QError;
    fn from_str(s: &str) -> Result<Self, QError> {
        QRat::parse(s)
    }
}

impl serde::Serialize for QRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        QRat::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Orders by canonical representation; only meaningful as a deterministic total order.
impl Ord for QRat {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num.len(), &self.num, self.den.len(), &self.den).cmp(&(o.num.len(), &o.num, o.den.len(), &o.den))
    }
}

impl PartialOrd for QRat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Recursive-descent parser for `expr := term (('+'|'-') term)*`,
/// `term := unary (('*'|'/') unary)*`, `unary := '-'? power`, `power := atom ('^' int)?`.
struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, QError> {
        Err(QError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<QRat, QError> {
        let v = self.expr()?;
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<QRat, QError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QRat, QError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<QRat, QError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<QRat, QError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i64 = i64::try_from(&e).or_else(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, QError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse::<BigInt>().unwrap())
    }

    fn atom(&mut self) -> Result<QRat, QError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(QRat::q_pow(1))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(QRat::from_bigint(self.integer()?)),
            _ => self.err("expected q, integer or '('"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QRat {
        QRat::parse(s).unwrap()
    }

    #[test]
    fn inverse_of_q_minus_qinv() {
        let x = QRat::q_minus_qinv();
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn quotient_reduces_to_polynomial() {
        // (1 - q^4) = (1 - q^2)(1 + q^2), long division by hand
        assert_eq!(q("(1 - q^4) / (1 - q^2)"), q("1 + q^2"));
        assert_eq!(q("(1 - q^4) / (1 - q^2)").to_string(), "q^2 + 1");
    }

    #[test]
    fn monomial_law() {
        for a in -7..7 {
            for b in -7..7 {
                assert_eq!(QRat::q_pow(a) * QRat::q_pow(b), QRat::q_pow(a + b));
            }
        }
    }

    #[test]
    fn laurent_inverse_up_to_64() {
        for k in 0..=70 {
            assert!((QRat::q_pow(-k) * QRat::q_pow(k)).is_one());
        }
    }

    #[test]
    fn eval_examples() {
        let two = BigRational::from_integer(2.into());
        assert_eq!(q("q + q^-1").eval_at(&two).unwrap(), BigRational::new(5.into(), 2.into()));
        let three = BigRational::from_integer(3.into());
        assert_eq!(
            q("(1 - q^4) / (1 - q^2)").eval_at(&three).unwrap(),
            BigRational::from_integer(10.into())
        );
        assert!(QRat::zero().eval_at(&three).unwrap().is_zero());
        assert!(matches!(q("1 / (q - 1)").eval_at(&BigRational::one()), Err(QError::Pole(_))));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(QRat::one().checked_div(&QRat::zero()), Err(QError::DivisionByZero));
        assert!(QRat::parse("1/(q-q)").is_err());
    }

    #[test]
    fn canonical_sign_and_content() {
        let a = QRat::from_polys(vec![2.into(), 4.into()], vec![(-6).into()]).unwrap();
        assert_eq!(a, q("-(1 + 2*q) / 3"));
        assert!(a.denominator().last().unwrap().is_positive());
        assert_eq!(QRat::from_ratio(6, -4).to_string(), "-3 / 2");
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "1", "-q", "3*q^2 - 1", "(q^2 - 1) / q", "1 / (q^2 + 1)", "-5 / (2*q^3)"] {
            let v = q(s);
            assert_eq!(q(&v.to_string()), v, "{s}");
        }
        assert_eq!(q("q^-1").to_string(), "1 / q");
    }

    #[test]
    fn common_factor_cancels() {
        // (q^2 - 1)(q + 2) / ((q - 1)(q^2 + 3))
        let a = q("(q^2 - 1)*(q + 2) / ((q - 1)*(q^2 + 3))");
        assert_eq!(a, q("(q + 1)*(q + 2) / (q^2 + 3)"));
    }
}
