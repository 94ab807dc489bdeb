//! Arithmetic in Q(ζ_m) and the decomposition of rational primes there.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{self, Integer};
use crate::error::{Error, Result};
use crate::intpoly::{split_signed_terms, IntPoly};

/// A conductor m together with Φ_m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloModulus {
    m: u64,
    phi: usize,
    poly: IntPoly,
}

impl CycloModulus {
    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// φ(m), the degree of Φ_m.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.poly
    }
}

/// Φ_m, by exact division of x^m - 1 by Φ_d for the proper divisors d of m.
pub fn cyclotomic_polynomial(m: u64) -> Result<CycloModulus> {
    if m == 0 {
        return Err(Error::InvalidInput("conductor must be >= 1".into()));
    }
    let divisors = arith::divisors(m);
    let mut known: Vec<(u64, IntPoly)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut phi_d = IntPoly::x_pow_minus_one(d as usize);
        for (e, phi_e) in &known {
            if d % e == 0 {
                let (quot, rem) = phi_d.div_rem_monic(phi_e);
                debug_assert!(rem.is_zero());
                phi_d = quot;
            }
        }
        known.push((d, phi_d));
    }
    let poly = known.pop().unwrap().1;
    Ok(CycloModulus { m, phi: poly.degree().unwrap(), poly })
}

/// Element of Q(ζ_m) with integer coordinates in the power basis
/// 1, ζ, …, ζ^(φ(m)-1).
#[derive(Clone, Debug)]
pub struct CycloElement {
    modulus: Arc<CycloModulus>,
    coeffs: Vec<Integer>,
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.modulus.m == other.modulus.m && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElement {}

impl CycloElement {
    /// Reduces an arbitrary-length coefficient vector mod Φ_m.
    pub fn from_coeffs(modulus: &Arc<CycloModulus>, coeffs: Vec<Integer>) -> Self {
        let (_, rem) = IntPoly::new(coeffs).div_rem_monic(&modulus.poly);
        let mut c = rem.coeffs().to_vec();
        c.resize(modulus.phi, Integer::zero());
        CycloElement { modulus: Arc::clone(modulus), coeffs: c }
    }

    pub fn constant(modulus: &Arc<CycloModulus>, value: Integer) -> Self {
        Self::from_coeffs(modulus, vec![value])
    }

    pub fn one(modulus: &Arc<CycloModulus>) -> Self {
        Self::constant(modulus, Integer::one())
    }

    /// ζ^k, using ζ^m = 1 before reducing.
    pub fn zeta_pow(modulus: &Arc<CycloModulus>, k: u64) -> Self {
        let k = (k % modulus.m) as usize;
        let mut c = vec![Integer::zero(); k + 1];
        c[k] = Integer::one();
        Self::from_coeffs(modulus, c)
    }

    pub fn modulus(&self) -> &Arc<CycloModulus> {
        &self.modulus
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.modulus.m != other.modulus.m {
            return Err(Error::ModulusMismatch { left: self.modulus.m, right: other.modulus.m });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloElement { modulus: Arc::clone(&self.modulus), coeffs })
    }

    pub fn neg(&self) -> Self {
        CycloElement {
            modulus: Arc::clone(&self.modulus),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &Integer) -> Self {
        CycloElement {
            modulus: Arc::clone(&self.modulus),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Product reduced mod Φ_m.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let prod = IntPoly::new(self.coeffs.clone()).mul(&IntPoly::new(other.coeffs.clone()));
        Ok(Self::from_coeffs(&self.modulus, prod.coeffs().to_vec()))
    }

    /// `Some(c)` when the element is the rational integer c.
    pub fn as_constant(&self) -> Option<Integer> {
        self.coeffs[1..]
            .iter()
            .all(Integer::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Finds a sign s and exponent k with self = s·c·ζ^k, if any.
    pub fn root_of_unity_ratio(&self, c: &Integer) -> Option<(i8, u64)> {
        let base = CycloElement::constant(&self.modulus, c.clone());
        (0..self.modulus.m).find_map(|k| {
            let candidate = base.mul(&CycloElement::zeta_pow(&self.modulus, k)).ok()?;
            if candidate == *self {
                Some((1, k))
            } else if candidate.neg() == *self {
                Some((-1, k))
            } else {
                None
            }
        })
    }

    /// Parses the restricted ζ-grammar, e.g. `ζ₇⁵ + 2ζ₇³ + ζ₇² + 1`,
    /// `2*z^4 - z`, or `\zeta_{7}^{5} + 1`. A subscript, when present, must
    /// equal the conductor.
    pub fn parse(modulus: &Arc<CycloModulus>, text: &str) -> Result<Self> {
        let compact: String = text
            .replace("\\zeta", "ζ")
            .replace("zeta", "ζ")
            .replace('−', "-")
            .replace("\\cdot", "*")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut coeffs = vec![Integer::zero()];
        for (neg, term) in split_signed_terms(&compact)? {
            let (coef, power) = parse_zeta_term(term, modulus.m)?;
            let power = (power % modulus.m) as usize;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Integer::zero());
            }
            let signed = if neg { -coef } else { coef };
            coeffs[power] += &signed;
        }
        Ok(Self::from_coeffs(modulus, coeffs))
    }
}

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn script_digits(n: u64, table: &[char; 10]) -> String {
    n.to_string()
        .bytes()
        .map(|b| table[(b - b'0') as usize])
        .collect()
}

/// Reads a number written in `table` digits, ASCII after `marker`, or
/// ASCII inside `marker{...}`. Returns the value and the rest of the input.
fn read_script<'a>(s: &'a str, table: &[char; 10], marker: char) -> Result<(Option<u64>, &'a str)> {
    let scripted: String = s
        .chars()
        .take_while(|c| table.contains(c))
        .map(|c| char::from(b'0' + table.iter().position(|t| *t == c).unwrap() as u8))
        .collect();
    if !scripted.is_empty() {
        let consumed: usize = s.chars().take(scripted.len()).map(char::len_utf8).sum();
        return Ok((Some(scripted.parse().unwrap()), &s[consumed..]));
    }
    let Some(after) = s.strip_prefix(marker) else {
        return Ok((None, s));
    };
    let (digits, rest) = if let Some(inner) = after.strip_prefix('{') {
        let close = inner
            .find('}')
            .ok_or_else(|| Error::Parse(format!("unclosed brace in {s:?}")))?;
        (&inner[..close], &inner[close + 1..])
    } else {
        let end = after.find(|c: char| !c.is_ascii_digit()).unwrap_or(after.len());
        (&after[..end], &after[end..])
    };
    let value = digits
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("expected digits after {marker:?} in {s:?}")))?;
    Ok((Some(value), rest))
}

fn parse_zeta_term(term: &str, m: u64) -> Result<(Integer, u64)> {
    let split = term.find(['ζ', 'z']);
    let Some(pos) = split else {
        return Ok((term.parse()?, 0));
    };
    let coef_part = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
    let coef = if coef_part.is_empty() { Integer::one() } else { coef_part.parse()? };
    let after_symbol = &term[pos + term[pos..].chars().next().unwrap().len_utf8()..];
    let (sub, rest) = read_script(after_symbol, &SUBSCRIPTS, '_')?;
    if let Some(sub) = sub {
        if sub != m {
            return Err(Error::Parse(format!("ζ_{sub} in an expression over Q(ζ_{m})")));
        }
    }
    let (sup, rest) = read_script(rest, &SUPERSCRIPTS, '^')?;
    if !rest.is_empty() {
        return Err(Error::Parse(format!("unexpected {rest:?} in term {term:?}")));
    }
    Ok((coef, sup.unwrap_or(1)))
}

impl fmt::Display for CycloElement {
    /// Highest power first, e.g. `ζ₇⁵ + 2ζ₇³ + ζ₇² + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = script_digits(self.modulus.m, &SUBSCRIPTS);
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "ζ{sub}")?;
            if i > 1 {
                write!(f, "{}", script_digits(i as u64, &SUPERSCRIPTS))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Decomposition of an unramified rational prime q in Q(ζ_m).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingData {
    pub q: u64,
    pub m: u64,
    pub e: u64,
    pub f: u64,
    pub g: u64,
}

impl SplittingData {
    pub fn splits_completely(&self) -> bool {
        self.f == 1
    }

    pub fn is_inert(&self) -> bool {
        self.g == 1
    }

    pub fn describe(&self) -> &'static str {
        match (self.f, self.g) {
            (_, 1) => "inert",
            (1, _) => "splits completely",
            _ => "splits partially",
        }
    }
}

impl fmt::Display for SplittingData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e={} f={} g={} ({})", self.e, self.f, self.g, self.describe())
    }
}

fn require_prime(q: u64) -> Result<()> {
    if arith::is_prime_u64(q) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{q} is not prime")))
    }
}

/// e = 1, f = ord_m(q), g = φ(m)/f. Rejects q | m.
pub fn splitting_data(q: u64, m: u64) -> Result<SplittingData> {
    require_prime(q)?;
    if m == 0 {
        return Err(Error::InvalidInput("conductor must be >= 1".into()));
    }
    if m.is_multiple_of(q) {
        return Err(Error::RamifiedPrime { q, m });
    }
    let phi = arith::euler_phi(m);
    let f = if m == 1 { 1 } else { arith::mult_order_u64(q, m)? };
    Ok(SplittingData { q, m, e: 1, f, g: phi / f })
}

pub fn is_inert(q: u64, m: u64) -> Result<bool> {
    let data = splitting_data(q, m)?;
    Ok(data.f == arith::euler_phi(m))
}

/// Prime of Q(ζ_m) over a totally split q, written (q, ζ - a) with Φ_m(a) ≡ 0 mod q.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub q: u64,
    pub m: u64,
    pub root: u64,
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, ζ{} - {})", self.q, script_digits(self.m, &SUBSCRIPTS), self.root)
    }
}

/// The φ(m) primes above q when q ≡ 1 mod m, ordered by root.
pub fn primes_above(q: u64, m: u64) -> Result<Vec<PrimeIdeal>> {
    let data = splitting_data(q, m)?;
    if !data.splits_completely() {
        return Err(Error::NotTotallySplit { q, m, f: data.f });
    }
    let phi = cyclotomic_polynomial(m)?;
    let roots: Vec<PrimeIdeal> = (0..q)
        .filter(|&a| phi.poly.eval_mod(a, q) == 0)
        .map(|root| PrimeIdeal { q, m, root })
        .collect();
    debug_assert_eq!(roots.len() as u64, data.g);
    Ok(roots)
}
