//! Exact integer arithmetic, primality and ordered prime enumeration.
//!
//! [`Integer`] wraps an arbitrary-precision signed integer and fixes its
//! external form: canonical decimal strings with an optional leading `-`,
//! no `+`, no separators. Everything the tower construction multiplies
//! together (the Kummer element in particular) is an `Integer`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Integer(BigInt);

impl Integer {
    pub fn zero() -> Self {
        Integer(BigInt::zero())
    }

    pub fn one() -> Self {
        Integer(BigInt::one())
    }

    pub fn from_bigint(value: BigInt) -> Self {
        Integer(value)
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }

    pub fn into_bigint(self) -> BigInt {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.0.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Integer(self.0.abs())
    }

    pub fn pow(&self, exp: u32) -> Self {
        Integer(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }

    /// Number of decimal digits of |self| (0 has one digit).
    pub fn decimal_digits(&self) -> usize {
        self.0.magnitude().to_str_radix(10).len()
    }

    /// Least non-negative residue modulo `m` (m > 0).
    pub fn mod_floor(&self, m: &Integer) -> Integer {
        Integer(self.0.mod_floor(&m.0))
    }

    pub fn gcd(&self, other: &Integer) -> Integer {
        Integer(self.0.gcd(&other.0))
    }

    pub fn is_multiple_of(&self, other: &Integer) -> bool {
        !other.is_zero() && (&self.0 % &other.0).is_zero()
    }

    /// Exact quotient; `None` when `divisor` does not divide `self`.
    pub fn checked_exact_div(&self, divisor: &Integer) -> Option<Integer> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.0.div_rem(&divisor.0);
        r.is_zero().then_some(Integer(q))
    }

    /// `self^exp mod m` for exp >= 0, m > 0.
    pub fn modpow(&self, exp: &Integer, m: &Integer) -> Integer {
        Integer(self.0.mod_floor(&m.0).modpow(&exp.0, &m.0))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Integer> for &Integer {
            type Output = Integer;
            fn $method(self, rhs: &Integer) -> Integer {
                Integer(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: Integer) -> Integer {
                Integer(self.0 $op rhs.0)
            }
        }
        impl $trait<&Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: &Integer) -> Integer {
                Integer(self.0 $op &rhs.0)
            }
        }
        impl $trait<Integer> for &Integer {
            type Output = Integer;
            fn $method(self, rhs: Integer) -> Integer {
                Integer(&self.0 $op rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);
forward_binop!(Rem, rem, %);

impl AddAssign<&Integer> for Integer {
    fn add_assign(&mut self, rhs: &Integer) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Integer> for Integer {
    fn sub_assign(&mut self, rhs: &Integer) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Integer> for Integer {
    fn mul_assign(&mut self, rhs: &Integer) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        Integer(-self.0)
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        Integer(-&self.0)
    }
}

macro_rules! from_primitive {
    ($($t:ty),*) => {
        $(impl From<$t> for Integer {
            fn from(v: $t) -> Self {
                Integer(BigInt::from(v))
            }
        })*
    };
}

from_primitive!(i32, i64, u32, u64, usize, i128, u128);

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Integer {
    type Err = Error;

    /// Accepts `-?[0-9]+` only. Leading zeros are tolerated and normalized.
    fn from_str(s: &str) -> Result<Self> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("not a decimal integer: {s:?}")));
        }
        BigInt::from_str(s)
            .map(Integer)
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    }
}

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact product of a non-empty list, computed with a balanced product tree.
pub fn mul_many(factors: &[Integer]) -> Result<Integer> {
    if factors.is_empty() {
        return Err(Error::InvalidInput("mul_many needs at least one factor".into()));
    }
    let mut level: Vec<Integer> = factors.to_vec();
    while level.len() > 1 {
        level = level
            .chunks(2)
            .map(|pair| match pair {
                [a, b] => a * b,
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    Ok(level.pop().unwrap())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// Bases 2..37 make Miller-Rabin exact for n < 3.3 * 10^24, so for every u64.
const U64_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const SMALL_PRIMES: [u64; 48] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223,
];

/// Number of Miller-Rabin bases used above 2^64 (the first primes, in order).
pub const BIG_SPRP_WITNESSES: usize = 48;

/// Deterministic primality for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES[..12] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let (d, s) = odd_part(n - 1);
    U64_WITNESSES.iter().all(|&a| {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

fn odd_part(mut d: u64) -> (u64, u32) {
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    (d, s)
}

/// Primality of a non-negative integer.
///
/// Exact below 2^64. Above that, `true` means `n` is a strong probable prime
/// to each of the first [`BIG_SPRP_WITNESSES`] prime bases. Negative input
/// returns `false`.
pub fn is_prime(n: &Integer) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let n = n.as_bigint();
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    SMALL_PRIMES[..BIG_SPRP_WITNESSES].iter().all(|&a| {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                return true;
            }
        }
        false
    })
}

/// Prime factorization by trial division, ascending primes.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .map(|(p, k)| (p - 1) * p.pow(k - 1))
        .product()
}

/// Positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Least k >= 1 with a^k = 1 (mod m).
pub fn mult_order_u64(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("modulus must be >= 2, got {m}")));
    }
    let a = a % m;
    if gcd_u64(a, m) != 1 {
        return Err(Error::NotCoprime { a: a.to_string(), m: m.to_string() });
    }
    let phi = euler_phi(m);
    let mut order = phi;
    for (r, _) in factor_u64(phi) {
        while order.is_multiple_of(r) && pow_mod(a, order / r, m) == 1 {
            order /= r;
        }
    }
    Ok(order)
}

/// [`mult_order_u64`] on arbitrary-precision input. `a` may be any integer;
/// `m` must fit in 64 bits since the order is found from the factorization
/// of φ(m).
pub fn mult_order(a: &Integer, m: &Integer) -> Result<Integer> {
    let m_small = m
        .to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("modulus {m} is outside the supported range")))?;
    if m_small < 2 {
        return Err(Error::InvalidInput(format!("modulus must be >= 2, got {m}")));
    }
    let residue = a.mod_floor(m).to_u64().expect("residue below a u64 modulus");
    mult_order_u64(residue, m_small)
        .map(Integer::from)
        .map_err(|e| match e {
            Error::NotCoprime { .. } => Error::NotCoprime { a: a.to_string(), m: m.to_string() },
            other => other,
        })
}

/// Default upper limit for [`primes_ascending`].
pub const DEFAULT_SEARCH_CEILING: u64 = 50_000_000;

/// The `count` smallest primes accepted by `filter` and not in `exclude`.
pub fn primes_ascending<F>(filter: F, exclude: &BTreeSet<u64>, count: usize) -> Result<Vec<u64>>
where
    F: Fn(u64) -> bool,
{
    primes_ascending_below(filter, exclude, count, DEFAULT_SEARCH_CEILING)
}

/// As [`primes_ascending`], giving up with `SearchExhausted` once candidates
/// exceed `ceiling`.
pub fn primes_ascending_below<F>(
    filter: F,
    exclude: &BTreeSet<u64>,
    count: usize,
    ceiling: u64,
) -> Result<Vec<u64>>
where
    F: Fn(u64) -> bool,
{
    if count == 0 {
        return Err(Error::InvalidInput("prime count must be >= 1".into()));
    }
    let mut found = Vec::with_capacity(count);
    let mut n = 2u64;
    while found.len() < count {
        if n > ceiling {
            return Err(Error::SearchExhausted { ceiling, found: found.len(), wanted: count });
        }
        if is_prime_u64(n) && !exclude.contains(&n) && filter(n) {
            found.push(n);
        }
        n += if n == 2 { 1 } else { 2 };
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(s: &str) -> Integer {
        s.parse().unwrap()
    }

    #[test]
    fn small_product() {
        let f: Vec<Integer> = [2, 3, 5].into_iter().map(Integer::from).collect();
        assert_eq!(mul_many(&f).unwrap(), Integer::from(30));
        assert!(mul_many(&[]).is_err());
    }

    #[test]
    fn primality_examples() {
        assert!(!is_prime(&Integer::from(1)));
        assert!(is_prime(&Integer::from(2591)));
        assert!(!is_prime(&Integer::from(1614)));
        assert!(!is_prime(&Integer::from(0)));
        assert!(!is_prime(&Integer::from(-7)));
        // Strong pseudoprime to bases 2..13.
        assert!(!is_prime_u64(3_215_031_751));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn primality_above_u64() {
        // 2^89 - 1 and 2^127 - 1 are Mersenne primes.
        let m89 = Integer::from(2).pow(89) - Integer::one();
        let m127 = Integer::from(2).pow(127) - Integer::one();
        assert!(is_prime(&m89));
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m89 * &m127)));
        assert!(!is_prime(&(Integer::from(2).pow(101) - Integer::one())));
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order_u64(1, 9).unwrap(), 1);
        assert_eq!(mult_order_u64(2, 9).unwrap(), 6);
        assert_eq!(mult_order_u64(43, 7).unwrap(), 1);
        assert_eq!(mult_order(&int("-1"), &int("9")).unwrap(), Integer::from(2));
        assert!(matches!(mult_order_u64(3, 9), Err(Error::NotCoprime { .. })));
        assert!(matches!(mult_order(&int("6"), &int("4")), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn parse_rejects_noncanonical_syntax() {
        for bad in ["", "-", "+5", "1_000", "1 000", "0x10", "12a"] {
            assert!(bad.parse::<Integer>().is_err(), "{bad:?}");
        }
        assert_eq!(int("-0"), Integer::zero());
        assert_eq!(int("007").to_string(), "7");
    }

    #[test]
    fn enumeration_examples() {
        let none = BTreeSet::new();
        assert_eq!(primes_ascending(|_| true, &none, 3).unwrap(), vec![2, 3, 5]);
        let ex: BTreeSet<u64> = [3].into();
        let got = primes_ascending(|q| q % 3 == 2, &ex, 5).unwrap();
        assert_eq!(got, vec![2, 5, 11, 17, 23]);
        let err = primes_ascending_below(|q| q % 10 == 0, &none, 1, 1000).unwrap_err();
        assert!(matches!(err, Error::SearchExhausted { found: 0, .. }));
    }

    #[test]
    fn phi_and_divisors() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(7), 6);
        assert_eq!(euler_phi(30), 8);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn serde_as_decimal_string() {
        let v = int("-123456789012345678901234567890");
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"-123456789012345678901234567890\"");
        let back: Integer = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
