//! Exact arithmetic in Q(A), A a primitive 4r-th root of unity.
//!
//! Elements are stored in the power basis 1, A, …, A^{φ(4r)−1}, fully reduced
//! modulo the cyclotomic polynomial Φ_{4r}, with one common denominator. Values
//! whose numerators and denominator fit in `i64` use a fast path with `i128`
//! intermediates; anything larger falls back to `BigInt`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("level r = {0} is invalid (need r >= 3)")]
    InvalidLevel(u32),
    #[error("level mismatch: r = {left} vs r = {right}")]
    LevelMismatch { left: u32, right: u32 },
    #[error("division by zero in Q(A)")]
    DivisionByZero,
    #[error("cannot parse coefficient {0:?}")]
    Parse(String),
}

/// Per-level constants: Φ_{4r} and the reduced powers of A.
#[derive(Debug)]
pub struct LevelCtx {
    r: u32,
    order: usize,
    degree: usize,
    phi: Vec<i64>,
    /// `powers[j]` = A^j reduced, for 0 <= j < order.
    powers: Vec<Vec<i64>>,
    /// Exponents k in (1, order) coprime to order: the non-trivial Galois group.
    galois: Vec<usize>,
}

/// The TQFT level parameter. `p = 2r` and `k = r − 2`.
///
/// Cheap to copy: contexts are interned for the life of the process.
#[derive(Clone, Copy)]
pub struct Level(&'static LevelCtx);

impl Level {
    pub fn new(r: u32) -> Result<Level, CycloError> {
        if r < 3 {
            return Err(CycloError::InvalidLevel(r));
        }
        static TABLE: OnceLock<Mutex<HashMap<u32, &'static LevelCtx>>> = OnceLock::new();
        let mut table = TABLE.get_or_init(Default::default).lock().unwrap();
        let ctx = *table
            .entry(r)
            .or_insert_with(|| Box::leak(Box::new(LevelCtx::build(r))));
        Ok(Level(ctx))
    }

    pub fn r(&self) -> u32 {
        self.0.r
    }
    /// p = 2r
    pub fn p(&self) -> u32 {
        2 * self.0.r
    }
    /// TQFT level k = r − 2.
    pub fn k(&self) -> u32 {
        self.0.r - 2
    }
    /// Order of A (4r).
    pub fn order(&self) -> usize {
        self.0.order
    }
    /// φ(4r), the dimension of Q(A) over Q.
    pub fn degree(&self) -> usize {
        self.0.degree
    }
    /// Coefficients of Φ_{4r}, constant term first.
    pub fn cyclotomic_poly(&self) -> &[i64] {
        &self.0.phi
    }
    /// Highest color allowed at this level (r − 2).
    pub fn max_color(&self) -> u32 {
        self.0.r - 2
    }
}

impl PartialEq for Level {
    fn eq(&self, other: &Self) -> bool {
        self.0.r == other.0.r
    }
}
impl Eq for Level {}

impl fmt::Debug for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Level(r={})", self.0.r)
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(self.r())
    }
}

impl<'de> Deserialize<'de> for Level {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = u32::deserialize(d)?;
        Level::new(r).map_err(D::Error::custom)
    }
}

/// Integer polynomial exact division by a monic divisor.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Φ_n via Φ_n = (x^n − 1) / ∏_{d | n, d < n} Φ_d.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    let mut cache: HashMap<usize, Vec<i64>> = HashMap::new();
    fn go(n: usize, cache: &mut HashMap<usize, Vec<i64>>) -> Vec<i64> {
        if let Some(p) = cache.get(&n) {
            return p.clone();
        }
        let mut p = vec![0i64; n + 1];
        p[0] = -1;
        p[n] = 1;
        for d in 1..n {
            if n % d == 0 {
                let q = go(d, cache);
                p = poly_div_exact(&p, &q);
            }
        }
        cache.insert(n, p.clone());
        p
    }
    go(n, &mut cache)
}

impl LevelCtx {
    fn build(r: u32) -> LevelCtx {
        let order = 4 * r as usize;
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(order);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x, then fold the overflow coefficient back with Φ
            let lead = cur[degree - 1];
            for j in (1..degree).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if lead != 0 {
                for j in 0..degree {
                    cur[j] -= lead * phi[j];
                }
            }
        }
        let galois = (2..order).filter(|k| k.gcd(&order) == 1).collect();
        LevelCtx { r, order, degree, phi, powers, galois }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An exact element of Q(A).
#[derive(Clone)]
pub struct CycloNum {
    level: Level,
    repr: Repr,
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl CycloNum {
    fn from_i128(level: Level, mut num: Vec<i128>, mut den: i128) -> CycloNum {
        debug_assert!(den != 0);
        if den < 0 {
            den = -den;
            for c in num.iter_mut() {
                *c = -*c;
            }
        }
        let mut g = den;
        for &c in &num {
            if g == 1 {
                break;
            }
            if c != 0 {
                g = gcd_i128(g, c);
            }
        }
        if g > 1 {
            den /= g;
            for c in num.iter_mut() {
                *c /= g;
            }
        }
        if num.iter().all(|c| c.is_zero()) {
            return CycloNum::zero(level);
        }
        let fits = den <= i64::MAX as i128 && num.iter().all(|&c| c >= i64::MIN as i128 && c <= i64::MAX as i128);
        if fits {
            CycloNum {
                level,
                repr: Repr::Small { num: num.into_iter().map(|c| c as i64).collect(), den: den as i64 },
            }
        } else {
            CycloNum {
                level,
                repr: Repr::Big { num: num.into_iter().map(BigInt::from).collect(), den: BigInt::from(den) },
            }
        }
    }

    fn from_big(level: Level, mut num: Vec<BigInt>, mut den: BigInt) -> CycloNum {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            den /= &g;
            for c in num.iter_mut() {
                *c /= &g;
            }
        }
        if num.iter().all(|c| c.is_zero()) {
            return CycloNum::zero(level);
        }
        let small_den = den.to_i64();
        let small_num: Option<Vec<i64>> = num.iter().map(|c| c.to_i64()).collect();
        match (small_den, small_num) {
            (Some(d), Some(n)) => CycloNum { level, repr: Repr::Small { num: n, den: d } },
            _ => CycloNum { level, repr: Repr::Big { num, den } },
        }
    }

    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small { num, den } => (num.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(*den)),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn zero(level: Level) -> CycloNum {
        CycloNum { level, repr: Repr::Small { num: vec![0; level.degree()], den: 1 } }
    }

    pub fn one(level: Level) -> CycloNum {
        CycloNum::from_int(level, 1)
    }

    pub fn from_int(level: Level, n: i64) -> CycloNum {
        let mut num = vec![0; level.degree()];
        num[0] = n;
        CycloNum { level, repr: Repr::Small { num, den: 1 } }
    }

    pub fn from_rational(level: Level, q: &BigRational) -> CycloNum {
        let mut num = vec![BigInt::zero(); level.degree()];
        num[0] = q.numer().clone();
        CycloNum::from_big(level, num, q.denom().clone())
    }

    /// Canonical representative of A^exponent. Negative exponents are fine.
    pub fn monomial(level: Level, exponent: i64) -> CycloNum {
        let e = exponent.rem_euclid(level.order() as i64) as usize;
        CycloNum { level, repr: Repr::Small { num: level.0.powers[e].clone(), den: 1 } }
    }

    /// Builds Σ c_j A^j from rational coefficients of any length, reducing mod Φ_{4r}.
    pub fn from_coeffs(level: Level, coeffs: &[BigRational]) -> CycloNum {
        let mut acc = CycloNum::zero(level);
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = CycloNum::monomial(level, j as i64) * CycloNum::from_rational(level, c);
                acc = acc + term;
            }
        }
        acc
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Power-basis coefficients, length φ(4r).
    pub fn coeffs(&self) -> Vec<BigRational> {
        let (num, den) = self.big_parts();
        num.into_iter().map(|c| BigRational::new(c, den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => *den == 1 && num[0] == 1 && num[1..].iter().all(|&c| c == 0),
            Repr::Big { .. } => false,
        }
    }

    /// True when the value lies in Q.
    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num[1..].iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num[1..].iter().all(|c| c.is_zero()),
        }
    }

    /// Whether this value used the bignum representation.
    pub fn is_big(&self) -> bool {
        matches!(self.repr, Repr::Big { .. })
    }

    fn check_level(&self, other: &CycloNum) -> Result<(), CycloError> {
        if self.level != other.level {
            Err(CycloError::LevelMismatch { left: self.level.r(), right: other.level.r() })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &CycloNum) -> Result<CycloNum, CycloError> {
        self.check_level(other)?;
        Ok(self.add_signed(other, false))
    }

    pub fn checked_sub(&self, other: &CycloNum) -> Result<CycloNum, CycloError> {
        self.check_level(other)?;
        Ok(self.add_signed(other, true))
    }

    pub fn checked_mul(&self, other: &CycloNum) -> Result<CycloNum, CycloError> {
        self.check_level(other)?;
        Ok(self.mul_impl(other))
    }

    fn add_signed(&self, other: &CycloNum, subtract: bool) -> CycloNum {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { other.negate() } else { other.clone() };
        }
        if let (Repr::Small { num: a, den: ad }, Repr::Small { num: b, den: bd }) = (&self.repr, &other.repr) {
            if let Some(res) = add_small(a, *ad, b, *bd, subtract) {
                return CycloNum::from_i128(self.level, res.0, res.1);
            }
        }
        let (a, ad) = self.big_parts();
        let (b, bd) = other.big_parts();
        let l = ad.lcm(&bd);
        let ma = &l / &ad;
        let mb = &l / &bd;
        let num = a
            .iter()
            .zip(&b)
            .map(|(x, y)| if subtract { x * &ma - y * &mb } else { x * &ma + y * &mb })
            .collect();
        CycloNum::from_big(self.level, num, l)
    }

    fn mul_impl(&self, other: &CycloNum) -> CycloNum {
        if self.is_zero() || other.is_zero() {
            return CycloNum::zero(self.level);
        }
        let ctx = self.level.0;
        if let (Repr::Small { num: a, den: ad }, Repr::Small { num: b, den: bd }) = (&self.repr, &other.repr) {
            if let Some((num, den)) = mul_small(ctx, a, *ad, b, *bd) {
                return CycloNum::from_i128(self.level, num, den);
            }
        }
        let (a, ad) = self.big_parts();
        let (b, bd) = other.big_parts();
        let d = ctx.degree;
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = conv[..d].to_vec();
        for (k, c) in conv.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (j, &p) in ctx.powers[k].iter().enumerate() {
                if p != 0 {
                    out[j] += c * p;
                }
            }
        }
        CycloNum::from_big(self.level, out, ad * bd)
    }

    fn negate(&self) -> CycloNum {
        let repr = match &self.repr {
            Repr::Small { num, den } => {
                if num.contains(&i64::MIN) {
                    let (n, d) = self.big_parts();
                    return CycloNum::from_big(self.level, n.into_iter().map(|c| -c).collect(), d);
                }
                Repr::Small { num: num.iter().map(|&c| -c).collect(), den: *den }
            }
            Repr::Big { num, den } => Repr::Big { num: num.iter().map(|c| -c).collect(), den: den.clone() },
        };
        CycloNum { level: self.level, repr }
    }

    /// The Galois automorphism A ↦ A^k (k coprime to 4r).
    pub fn galois(&self, k: usize) -> CycloNum {
        let ctx = self.level.0;
        debug_assert_eq!(k.gcd(&ctx.order), 1);
        let (num, den) = self.big_parts();
        let mut out = vec![BigInt::zero(); ctx.degree];
        for (j, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j * k) % ctx.order;
            for (i, &p) in ctx.powers[e].iter().enumerate() {
                if p != 0 {
                    out[i] += c * p;
                }
            }
        }
        CycloNum::from_big(self.level, out, den)
    }

    /// Complex conjugation: A ↦ A^{−1}.
    pub fn conj(&self) -> CycloNum {
        self.galois(self.level.order() - 1)
    }

    /// Inverse via the field norm: a^{−1} = ∏_{σ ≠ id} σ(a) / N(a).
    pub fn inv(&self) -> Result<CycloNum, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if self.is_rational() {
            let q = self.coeffs().swap_remove(0);
            return Ok(CycloNum::from_rational(self.level, &q.recip()));
        }
        let mut others = CycloNum::one(self.level);
        for &k in &self.level.0.galois {
            others = others.mul_impl(&self.galois(k));
        }
        let norm = self.mul_impl(&others);
        debug_assert!(norm.is_rational());
        let n = norm.coeffs().swap_remove(0);
        Ok(others.mul_impl(&CycloNum::from_rational(self.level, &n.recip())))
    }

    pub fn checked_div(&self, other: &CycloNum) -> Result<CycloNum, CycloError> {
        self.check_level(other)?;
        Ok(self.mul_impl(&other.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> CycloNum {
        let mut base = self.clone();
        let mut acc = CycloNum::one(self.level);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    /// Evaluates at the distinguished root A = e^{iπ/2r}.
    pub fn embed(&self) -> Complex64 {
        let ctx = self.level.0;
        let step = std::f64::consts::PI / (2.0 * ctx.r as f64);
        let term = |j: usize, c: f64| Complex64::from_polar(c, step * j as f64);
        match &self.repr {
            Repr::Small { num, den } => {
                let s: Complex64 = num.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| term(j, c as f64)).sum();
                s / *den as f64
            }
            Repr::Big { .. } => self
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| term(j, c.to_f64().unwrap_or(f64::NAN)))
                .sum(),
        }
    }

    /// Largest absolute coefficient (numerator over denominator) as a float;
    /// a scale for embedding error bounds.
    pub fn height(&self) -> f64 {
        self.coeffs().iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }
}

fn add_small(a: &[i64], ad: i64, b: &[i64], bd: i64, subtract: bool) -> Option<(Vec<i128>, i128)> {
    let (ad, bd) = (ad as i128, bd as i128);
    let g = gcd_i128(ad, bd);
    let l = (ad / g).checked_mul(bd)?;
    let ma = l / ad;
    let mb = l / bd;
    let mut out = Vec::with_capacity(a.len());
    for (&x, &y) in a.iter().zip(b) {
        let xs = (x as i128).checked_mul(ma)?;
        let ys = (y as i128).checked_mul(mb)?;
        out.push(if subtract { xs.checked_sub(ys)? } else { xs.checked_add(ys)? });
    }
    Some((out, l))
}

fn mul_small(ctx: &LevelCtx, a: &[i64], ad: i64, b: &[i64], bd: i64) -> Option<(Vec<i128>, i128)> {
    let d = ctx.degree;
    let mut conv = vec![0i128; 2 * d - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as i128;
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                conv[i + j] = conv[i + j].checked_add(x * y as i128)?;
            }
        }
    }
    let mut out = conv[..d].to_vec();
    for (k, &c) in conv.iter().enumerate().skip(d) {
        if c == 0 {
            continue;
        }
        for (j, &p) in ctx.powers[k].iter().enumerate() {
            if p != 0 {
                out[j] = out[j].checked_add(c.checked_mul(p as i128)?)?;
            }
        }
    }
    let den = (ad as i128).checked_mul(bd as i128)?;
    Some((out, den))
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.repr == other.repr
    }
}
impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.level.r().hash(state);
        self.repr.hash(state);
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                self.$checked(rhs).expect("CycloNum level mismatch")
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                $tr::$m(&self, &rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                $tr::$m(&self, rhs)
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        self.negate()
    }
}
impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        self.negate()
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
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
            match j {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if j == 1 {
                        write!(f, "A")?;
                    } else {
                        write!(f, "A^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[r={}]({})", self.level.r(), self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    r: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (num, den) = self.big_parts();
        CycloJson { r: self.level.r(), coeffs: num.iter().map(|c| format!("{c}/{den}")).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CycloJson::deserialize(d)?;
        let level = Level::new(raw.r).map_err(D::Error::custom)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycloNum::from_coeffs(level, &coeffs))
    }
}

fn parse_rational(s: &str) -> Result<BigRational, CycloError> {
    let bad = || CycloError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s.trim()).map_err(|_| bad())?)),
    }
}

impl Scalar for CycloNum {
    type Ctx = Level;

    fn ctx_r(ctx: Level) -> u32 {
        ctx.r()
    }

    fn zero(ctx: Level) -> Self {
        CycloNum::zero(ctx)
    }
    fn one(ctx: Level) -> Self {
        CycloNum::one(ctx)
    }
    fn from_int(ctx: Level, n: i64) -> Self {
        CycloNum::from_int(ctx, n)
    }
    fn root_power(ctx: Level, e: i64) -> Self {
        CycloNum::monomial(ctx, e)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        self.negate()
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = &*self + &(a * b);
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn conj(&self) -> Self {
        CycloNum::conj(self)
    }
    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }
    fn to_c64(&self) -> Complex64 {
        self.embed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(r: u32) -> Level {
        Level::new(r).unwrap()
    }

    fn a(r: u32, e: i64) -> CycloNum {
        CycloNum::monomial(lv(r), e)
    }

    #[test]
    fn level_validation() {
        assert_eq!(Level::new(2).unwrap_err(), CycloError::InvalidLevel(2));
        let l = lv(3);
        assert_eq!((l.p(), l.k(), l.degree()), (6, 1, 4));
    }

    #[test]
    fn phi_12_and_friends() {
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(16), vec![1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(20), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
        for r in 3..=40usize {
            let deg = cyclotomic_polynomial(4 * r).len() - 1;
            let totient = (1..=4 * r).filter(|k| k.gcd(&(4 * r)) == 1).count();
            assert_eq!(deg, totient);
        }
    }

    #[test]
    fn monomial_examples() {
        let l = lv(3);
        assert!(a(3, 0).is_one());
        assert!(a(3, 12).is_one());
        // x^4 ≡ x^2 − 1 mod x^4 − x^2 + 1
        let expected = a(3, 2) - CycloNum::one(l);
        assert_eq!(a(3, 4), expected);
    }

    #[test]
    fn primitive_root_identities() {
        for r in 3..=12 {
            let l = lv(r);
            assert!(a(r, 4 * r as i64).is_one());
            assert_eq!(a(r, 2 * r as i64), -CycloNum::one(l));
            assert!(!a(r, 1).is_one());
            assert!((a(r, 4 * r as i64) - CycloNum::one(l)).is_zero());
        }
    }

    #[test]
    fn inverse_examples() {
        for r in [3, 4, 5, 7] {
            let l = lv(r);
            assert!((a(r, 2) * a(r, -2)).is_one());
            assert_eq!(a(r, 1).inv().unwrap(), a(r, 4 * r as i64 - 1));
            let x = a(r, 1) + CycloNum::from_int(l, 3) - a(r, 3);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert_eq!(CycloNum::zero(lv(5)).inv().unwrap_err(), CycloError::DivisionByZero);
    }

    #[test]
    fn golden_ratio_embedding() {
        let x = a(5, 2) + a(5, -2);
        assert!((x.embed().re - 1.6180339887).abs() < 1e-10);
        assert!(x.embed().im.abs() < 1e-14);
    }

    #[test]
    fn embed_examples() {
        assert_eq!(CycloNum::one(lv(3)).embed(), Complex64::new(1.0, 0.0));
        let e = a(3, 1).embed();
        let t = std::f64::consts::PI / 6.0;
        assert!((e - Complex64::new(t.cos(), t.sin())).norm() < 1e-15);
        let d = -(a(4, 2) + a(4, -2));
        assert!((d.embed().re + std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn conj_examples() {
        let l = lv(6);
        assert_eq!(a(6, 1).conj(), a(6, -1));
        let q = CycloNum::from_rational(l, &BigRational::new(3.into(), 7.into()));
        assert_eq!(q.conj(), q);
        assert_eq!((a(6, 2) + a(6, 3)).conj(), a(6, -2) + a(6, -3));
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let err = a(3, 1).checked_add(&a(4, 1)).unwrap_err();
        assert_eq!(err, CycloError::LevelMismatch { left: 3, right: 4 });
        assert!(a(3, 1).checked_mul(&a(5, 1)).is_err());
    }

    #[test]
    fn bignum_fallback_round_trips() {
        let l = lv(5);
        let big = CycloNum::from_int(l, i64::MAX) + a(5, 1);
        let sq = &big * &big;
        assert!(sq.is_big());
        let back = &sq * &big.inv().unwrap();
        assert_eq!(back, big);
        assert!(!back.is_big());
    }

    #[test]
    fn json_round_trip() {
        let l = lv(4);
        let x = a(4, 3) * CycloNum::from_rational(l, &BigRational::new(5.into(), (-6).into()));
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with("{\"r\":4,\"coeffs\":["));
        assert!(s.contains("\"-5/6\""));
        let y: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn display_is_readable() {
        let x = a(3, 1) * CycloNum::from_int(lv(3), -2) + CycloNum::one(lv(3));
        assert_eq!(x.to_string(), "1 - 2*A");
    }
}
