//! Dense univariate polynomials over the integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Integer;
use crate::error::{Error, Result};

/// Coefficients low degree first; no trailing zeros (the zero polynomial is
/// the empty vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Integer::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// x^n - 1
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![Integer::zero(); n + 1];
        c[0] = Integer::from(-1);
        c[n] = Integer::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Integer::is_one)
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Integer::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        IntPoly::new(out)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Integer::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        self.coeffs
            .iter()
            .rev()
            .fold(Integer::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Value mod `q` at a residue, by Horner in u128.
    pub fn eval_mod(&self, x: u64, q: u64) -> u64 {
        let q_int = Integer::from(q);
        let mut acc: u128 = 0;
        for c in self.coeffs.iter().rev() {
            let c = c.mod_floor(&q_int).to_u64().unwrap() as u128;
            acc = (acc * x as u128 + c) % q as u128;
        }
        acc as u64
    }

    /// Quotient and remainder on division by a monic polynomial.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Integer::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&lead * d);
            }
            quot[k] = lead;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Resultant via a fraction-free (Bareiss) determinant of the Sylvester
    /// matrix.
    pub fn resultant(&self, other: &IntPoly) -> Integer {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return Integer::zero();
        };
        let size = m + n;
        if size == 0 {
            return Integer::one();
        }
        let mut mat = vec![vec![Integer::zero(); size]; size];
        for row in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                mat[row][row + j] = c.clone();
            }
        }
        for row in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                mat[n + row][row + j] = c.clone();
            }
        }
        bareiss_determinant(mat)
    }

    /// (-1)^(n(n-1)/2) Res(f, f') / lc(f).
    pub fn discriminant(&self) -> Result<Integer> {
        let n = self
            .degree()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::InvalidInput("discriminant needs degree >= 1".into()))?;
        let res = self.resultant(&self.derivative());
        let lead = self.leading().unwrap();
        let mut disc = res
            .checked_exact_div(lead)
            .expect("leading coefficient divides Res(f, f')");
        if (n * (n - 1) / 2) % 2 == 1 {
            disc = -disc;
        }
        Ok(disc)
    }
}

fn bareiss_determinant(mut a: Vec<Vec<Integer>>) -> Integer {
    let n = a.len();
    let mut sign = false;
    let mut prev = Integer::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.checked_exact_div(&prev).expect("Bareiss step is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

impl fmt::Display for IntPoly {
    /// `x^3 - x^2 - 4*x - 1`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
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
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses sums of terms `c`, `c*x`, `c*x^k`, `x^k` in the variable `x`.
    /// Whitespace is ignored and repeated powers are summed.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<Integer> = Vec::new();
        for (sign, term) in split_signed_terms(&compact)? {
            let (coef, power) = parse_monomial(term, 'x')?;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Integer::zero());
            }
            let signed = if sign { -coef } else { coef };
            coeffs[power] += &signed;
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Splits `a-b+c` into (negative?, term) pairs. A leading sign is allowed.
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut neg = false;
    let bytes = s.as_bytes();
    let mut i = 0;
    if let Some(&b) = bytes.first() {
        if b == b'-' || b == b'+' {
            neg = b == b'-';
            start = 1;
            i = 1;
        }
    }
    while i < bytes.len() {
        let b = bytes[i];
        if (b == b'+' || b == b'-') && i > start {
            out.push((neg, &s[start..i]));
            neg = b == b'-';
            start = i + 1;
        }
        i += 1;
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    out.push((neg, &s[start..]));
    if out.iter().any(|(_, t)| t.is_empty()) {
        return Err(Error::Parse(format!("empty term in {s:?}")));
    }
    Ok(out)
}

fn parse_monomial(term: &str, var: char) -> Result<(Integer, usize)> {
    let Some(pos) = term.find(var) else {
        return Ok((term.parse()?, 0));
    };
    let coef_part = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
    let coef = if coef_part.is_empty() {
        Integer::one()
    } else {
        coef_part.parse()?
    };
    let rest = &term[pos + var.len_utf8()..];
    let power = if rest.is_empty() {
        1
    } else {
        let exp = rest
            .strip_prefix('^')
            .ok_or_else(|| Error::Parse(format!("unexpected {rest:?} in term {term:?}")))?;
        exp.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad exponent in term {term:?}")))?
    };
    Ok((coef, power))
}
