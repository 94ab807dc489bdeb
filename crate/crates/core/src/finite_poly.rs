//! Finite fields F_{q^f} and polynomials over them: Rabin irreducibility,
//! distinct-degree profiles, and the inertness test for relative extensions
//! of a cyclotomic base.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::arith::{self, Integer};
use crate::cyclotomic;
use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

/// Dense polynomials over Z/qZ as `Vec<u64>`, low degree first.
mod fp {
    use crate::arith::pow_mod;

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn inv(a: u64, q: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(q));
        pow_mod(a, q - 2, q)
    }

    pub fn add(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let mut out: Vec<u64> = (0..a.len().max(b.len()))
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                ((x as u128 + y as u128) % q as u128) as u64
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let mut out: Vec<u64> = (0..a.len().max(b.len()))
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                ((x as u128 + q as u128 - y as u128) % q as u128) as u64
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        let q128 = q as u128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u128 * y as u128) % q128;
            }
        }
        let mut out: Vec<u64> = acc.into_iter().map(|c| c as u64).collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` by nonzero `m`.
    pub fn rem(a: &[u64], m: &[u64], q: u64) -> Vec<u64> {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() <= dm {
            return r;
        }
        let lead_inv = inv(m[dm], q);
        let q128 = q as u128;
        for k in (0..=r.len() - 1 - dm).rev() {
            let c = (r[k + dm] as u128 * lead_inv as u128 % q128) as u64;
            if c == 0 {
                continue;
            }
            for (j, &mj) in m.iter().enumerate() {
                let t = (c as u128 * mj as u128) % q128;
                r[k + j] = ((r[k + j] as u128 + q128 - t) % q128) as u64;
            }
        }
        r.truncate(dm);
        trim(&mut r);
        r
    }

    /// Inverse of `a` modulo `m` (coprime), by extended Euclid.
    pub fn inverse_mod(a: &[u64], m: &[u64], q: u64) -> Option<Vec<u64>> {
        let (mut r0, mut r1) = (m.to_vec(), rem(a, m, q));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (quot, r2) = div_rem(&r0, &r1, q);
            let s2 = sub(&s0, &mul(&quot, &s1, q), q);
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv(r0[0], q);
        Some(rem(&mul(&s0, &[c], q), m, q))
    }

    pub fn div_rem(a: &[u64], m: &[u64], q: u64) -> (Vec<u64>, Vec<u64>) {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() <= dm {
            return (Vec::new(), r);
        }
        let lead_inv = inv(m[dm], q);
        let q128 = q as u128;
        let mut quot = vec![0u64; r.len() - dm];
        for k in (0..quot.len()).rev() {
            let c = (r[k + dm] as u128 * lead_inv as u128 % q128) as u64;
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &mj) in m.iter().enumerate() {
                let t = (c as u128 * mj as u128) % q128;
                r[k + j] = ((r[k + j] as u128 + q128 - t) % q128) as u64;
            }
        }
        r.truncate(dm);
        trim(&mut r);
        trim(&mut quot);
        (quot, r)
    }
}

/// F_{q^f} = F_q[y] / (generator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    q: u64,
    degree: usize,
    generator: Vec<u64>,
}

/// Element of a [`FiniteField`]: a polynomial in the generator's root of
/// degree below f, stored with exactly f coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqElement(Vec<u64>);

impl FqElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl FiniteField {
    pub fn characteristic(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic, low degree first.
    pub fn generator(&self) -> &[u64] {
        &self.generator
    }

    pub fn size(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.q), self.degree)
    }

    fn prime_field(q: u64) -> FiniteField {
        FiniteField { q, degree: 1, generator: vec![0, 1] }
    }

    fn pack(&self, mut v: Vec<u64>) -> FqElement {
        v.resize(self.degree, 0);
        FqElement(v)
    }

    fn unpack(e: &FqElement) -> Vec<u64> {
        let mut v = e.0.clone();
        fp::trim(&mut v);
        v
    }

    pub fn zero(&self) -> FqElement {
        FqElement(vec![0; self.degree])
    }

    pub fn one(&self) -> FqElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FqElement {
        self.pack(vec![c % self.q])
    }

    pub fn from_integer(&self, c: &Integer) -> FqElement {
        let r = c.mod_floor(&Integer::from(self.q)).to_u64().unwrap();
        self.from_u64(r)
    }

    /// Element with the given coordinates in the power basis, reduced.
    pub fn element(&self, coords: &[u64]) -> FqElement {
        let v: Vec<u64> = coords.iter().map(|c| c % self.q).collect();
        self.pack(fp::rem(&v, &self.generator, self.q))
    }

    pub fn is_zero(&self, a: &FqElement) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        self.pack(fp::add(&a.0, &b.0, self.q))
    }

    pub fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        self.pack(fp::sub(&a.0, &b.0, self.q))
    }

    pub fn neg(&self, a: &FqElement) -> FqElement {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let prod = fp::mul(&Self::unpack(a), &Self::unpack(b), self.q);
        self.pack(fp::rem(&prod, &self.generator, self.q))
    }

    pub fn inv(&self, a: &FqElement) -> Option<FqElement> {
        if self.is_zero(a) {
            return None;
        }
        fp::inverse_mod(&Self::unpack(a), &self.generator, self.q).map(|v| self.pack(v))
    }

    /// Every element, in coordinate order (intended for small fields).
    pub fn elements(&self) -> impl Iterator<Item = FqElement> + '_ {
        let count = self.q.pow(self.degree as u32);
        (0..count).map(move |mut idx| {
            let mut v = Vec::with_capacity(self.degree);
            for _ in 0..self.degree {
                v.push(idx % self.q);
                idx /= self.q;
            }
            FqElement(v)
        })
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "Z/{}Z", self.q)
        } else {
            let g = FqPoly::from_prime_coeffs(&Arc::new(Self::prime_field(self.q)), &self.generator);
            write!(f, "F_{}^{} = F_{}[y]/({})", self.q, self.degree, self.q, g.to_string().replace('x', "y"))
        }
    }
}

/// Smallest monic irreducible of degree f over Z/qZ in ascending
/// lexicographic order of (c_{f-1}, …, c_0), used as the field generator.
pub fn build_extension_field(q: u64, f: usize) -> Result<Arc<FiniteField>> {
    if !arith::is_prime_u64(q) {
        return Err(Error::InvalidInput(format!("{q} is not prime")));
    }
    if f == 0 {
        return Err(Error::InvalidInput("extension degree must be >= 1".into()));
    }
    if f == 1 {
        return Ok(Arc::new(FiniteField::prime_field(q)));
    }
    let base = Arc::new(FiniteField::prime_field(q));
    let mut low = vec![0u64; f];
    loop {
        let mut coeffs = low.clone();
        coeffs.push(1);
        let candidate = FqPoly::from_prime_coeffs(&base, &coeffs);
        if is_irreducible(&candidate)? {
            return Ok(Arc::new(FiniteField { q, degree: f, generator: coeffs }));
        }
        // Odometer increment with c_0 varying fastest.
        let mut i = 0;
        loop {
            low[i] += 1;
            if low[i] < q {
                break;
            }
            low[i] = 0;
            i += 1;
            assert!(i < f, "a monic irreducible of every degree exists");
        }
    }
}

/// Polynomial over a [`FiniteField`], low degree first, no trailing zeros.
#[derive(Clone, Debug)]
pub struct FqPoly {
    field: Arc<FiniteField>,
    coeffs: Vec<FqElement>,
}

impl PartialEq for FqPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl FqPoly {
    pub fn new(field: &Arc<FiniteField>, coeffs: Vec<FqElement>) -> Self {
        let mut p = FqPoly { field: Arc::clone(field), coeffs };
        p.trim();
        p
    }

    /// Coefficients given as prime-field residues.
    pub fn from_prime_coeffs(field: &Arc<FiniteField>, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_u64(c)).collect())
    }

    /// Reduction of an integer polynomial into `field`.
    pub fn from_int_poly(field: &Arc<FiniteField>, poly: &IntPoly) -> Self {
        Self::new(field, poly.coeffs().iter().map(|c| field.from_integer(c)).collect())
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn zero(field: &Arc<FiniteField>) -> Self {
        FqPoly { field: Arc::clone(field), coeffs: Vec::new() }
    }

    pub fn x(field: &Arc<FiniteField>) -> Self {
        FqPoly { field: Arc::clone(field), coeffs: vec![field.zero(), field.one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == self.field.one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let coeffs = (0..n)
            .map(|i| {
                f.add(self.coeffs.get(i).unwrap_or(&zero), other.coeffs.get(i).unwrap_or(&zero))
            })
            .collect();
        Self::new(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let coeffs = (0..n)
            .map(|i| {
                f.sub(self.coeffs.get(i).unwrap_or(&zero), other.coeffs.get(i).unwrap_or(&zero))
            })
            .collect();
        Self::new(f, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        if f.degree == 1 {
            return self.with_prime_coeffs(fp::mul(&self.prime_coeffs(), &other.prime_coeffs(), f.q));
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    fn prime_coeffs(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.0[0]).collect()
    }

    fn with_prime_coeffs(&self, coeffs: Vec<u64>) -> Self {
        Self::new(&self.field, coeffs.into_iter().map(|c| FqElement(vec![c])).collect())
    }

    pub fn scale(&self, c: &FqElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lead = self.coeffs.last().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&self.field.inv(lead).unwrap()))
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        if f.degree == 1 {
            let (quot, rem) = fp::div_rem(&self.prime_coeffs(), &divisor.prime_coeffs(), f.q);
            return Ok((self.with_prime_coeffs(quot), self.with_prime_coeffs(rem)));
        }
        let lead_inv = f.inv(divisor.coeffs.last().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = std::mem::replace(&mut b, r);
        }
        if a.is_zero() {
            a
        } else {
            a.monic().unwrap()
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
                .collect(),
        )
    }

    /// self^exp mod modulus, by square-and-multiply.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Result<Self> {
        let mut acc = Self::new(&self.field, vec![self.field.one()]).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus)?;
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &FqElement) -> FqElement {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let coef = if self.field.degree == 1 {
                c.0[0].to_string()
            } else {
                let inner = IntPoly::new(c.0.iter().map(|&v| Integer::from(v)).collect());
                format!("({})", inner.to_string().replace('x', "y"))
            };
            let term = match (i, coef.as_str()) {
                (0, _) => coef,
                (1, "1") => "x".to_string(),
                (1, _) => format!("{coef}*x"),
                (_, "1") => format!("x^{i}"),
                _ => format!("{coef}*x^{i}"),
            };
            terms.push(term);
        }
        write!(out, "{}", terms.join(" + "))
    }
}

/// x^(Q^k) mod `modulus` for k = 1..=n, where Q is the field size.
fn frobenius_orbit(modulus: &FqPoly, n: usize) -> Result<Vec<FqPoly>> {
    let size = modulus.field.size();
    let mut h = FqPoly::x(&modulus.field);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        h = h.pow_mod(&size, modulus)?;
        out.push(h.clone());
    }
    Ok(out)
}

/// Rabin's test: x^(Q^n) ≡ x mod f and gcd(x^(Q^(n/r)) - x, f) = 1 for
/// each prime r | n. The input is made monic first; nonzero constants are
/// not irreducible.
pub fn is_irreducible(poly: &FqPoly) -> Result<bool> {
    let f = poly.monic()?;
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let x = FqPoly::x(&f.field);
    let orbit = frobenius_orbit(&f, n)?;
    if orbit[n - 1] != x.rem(&f)? {
        return Ok(false);
    }
    for (r, _) in arith::factor_u64(n as u64) {
        let k = n / r as usize;
        let g = orbit[k - 1].sub(&x).gcd(&f);
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of irreducible factors of each degree, ascending by degree.
/// Requires a squarefree input (gcd(f, f') = 1).
pub fn distinct_degree_profile(poly: &FqPoly) -> Result<Vec<(usize, usize)>> {
    let mut rest = poly.monic()?;
    if rest.degree() == Some(0) {
        return Ok(Vec::new());
    }
    if rest.gcd(&rest.derivative()).degree() != Some(0) {
        return Err(Error::NotSquarefree);
    }
    let field = Arc::clone(&rest.field);
    let size = field.size();
    let x = FqPoly::x(&field);
    let mut profile = BTreeMap::new();
    let mut h = x.clone();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if deg < 2 * d {
            // Whatever remains has no factor of degree < d, so it is irreducible.
            *profile.entry(deg).or_insert(0) += 1;
            break;
        }
        h = h.pow_mod(&size, &rest)?;
        let g = h.sub(&x).gcd(&rest);
        let gd = g.degree().unwrap();
        if gd > 0 {
            profile.insert(d, gd / d);
            rest = rest.div_rem(&g)?.0;
            h = h.rem(&rest)?;
        }
    }
    Ok(profile.into_iter().collect())
}

/// For each prime of Q(ζ_m) above q, whether `defining_poly` stays
/// irreducible over that prime's residue field F_{q^f}.
///
/// The polynomial has rational integer coefficients, so its image in every
/// residue field above q is the same polynomial over F_{q^f}; all entries
/// therefore coincide. Requires q ∤ disc(defining_poly).
pub fn is_inert_in_relative_extension(defining_poly: &IntPoly, q: u64, m: u64) -> Result<Vec<bool>> {
    let split = cyclotomic::splitting_data(q, m)?;
    let deg = defining_poly
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidInput("defining polynomial must have degree >= 1".into()))?;
    let disc = defining_poly.discriminant()?;
    let q_int = Integer::from(q);
    if disc.is_multiple_of(&q_int) {
        return Err(Error::DiscriminantDivisible { q, disc: disc.to_string() });
    }
    if defining_poly.leading().unwrap().is_multiple_of(&q_int) {
        return Err(Error::InvalidInput(format!("{q} divides the leading coefficient")));
    }
    let residue = build_extension_field(q, split.f as usize)?;
    let reduced = FqPoly::from_int_poly(&residue, defining_poly);
    debug_assert_eq!(reduced.degree(), Some(deg));
    let inert = is_irreducible(&reduced)?;
    Ok(vec![inert; split.g as usize])
}

/// Fields of order at most `max_size`, one per prime power, ascending.
pub fn small_fields(max_size: u64) -> Vec<Arc<FiniteField>> {
    let mut sizes: Vec<(u64, u64, usize)> = Vec::new();
    for q in (2..=max_size).filter(|&q| arith::is_prime_u64(q)) {
        let mut size = q;
        let mut f = 1;
        while size <= max_size {
            sizes.push((size, q, f));
            size *= q;
            f += 1;
        }
    }
    sizes.sort();
    sizes
        .into_iter()
        .map(|(_, q, f)| build_extension_field(q, f).expect("valid prime power"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(q: u64) -> Arc<FiniteField> {
        build_extension_field(q, 1).unwrap()
    }

    #[test]
    fn extension_generators() {
        let f43 = build_extension_field(43, 1).unwrap();
        assert_eq!(f43.to_string(), "Z/43Z");
        let f4 = build_extension_field(2, 2).unwrap();
        assert_eq!(f4.generator(), &[1, 1, 1]);
        let f125 = build_extension_field(5, 3).unwrap();
        assert_eq!(f125.generator().len(), 4);
        // Independent check: a cubic over F_5 is irreducible iff it has no root.
        let g = f125.generator();
        assert!((0..5).all(|a| !(g[0] + g[1] * a + g[2] * a * a + a * a * a).is_multiple_of(5)));
        assert!(build_extension_field(6, 2).is_err());
    }

    #[test]
    fn field_inverse_round_trip() {
        let f = build_extension_field(3, 3).unwrap();
        for a in f.elements().filter(|a| !f.is_zero(a)) {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), f.one());
        }
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn irreducibility_examples() {
        let cubic: IntPoly = "x^3 - x^2 - 4*x - 1".parse().unwrap();
        assert!(is_irreducible(&FqPoly::from_int_poly(&prime(43), &cubic)).unwrap());
        let phi3 = FqPoly::from_prime_coeffs(&prime(3), &[1, 1, 1]);
        assert!(!is_irreducible(&phi3).unwrap());
        for q in [2, 5, 43] {
            assert!(is_irreducible(&FqPoly::x(&prime(q))).unwrap());
        }
        let f4 = build_extension_field(2, 2).unwrap();
        assert!(is_irreducible(&FqPoly::x(&f4)).unwrap());
        assert_eq!(is_irreducible(&FqPoly::zero(&prime(5))), Err(Error::ZeroPolynomial));
        // x^2 + x + 1 splits over F_4 although it is irreducible over F_2.
        let over_f4 = FqPoly::from_prime_coeffs(&f4, &[1, 1, 1]);
        assert!(!is_irreducible(&over_f4).unwrap());
        // Non-monic input is normalized: 2x^2 + 2 = 2(x^2 + 1) over F_3.
        assert!(is_irreducible(&FqPoly::from_prime_coeffs(&prime(3), &[2, 0, 2])).unwrap());
    }

    #[test]
    fn profile_examples() {
        let phi = |m: u64| cyclotomic::cyclotomic_polynomial(m).unwrap().polynomial().clone();
        let p = FqPoly::from_int_poly(&prime(43), &phi(7));
        assert_eq!(distinct_degree_profile(&p).unwrap(), vec![(1, 6)]);
        let p = FqPoly::from_int_poly(&prime(2), &phi(9));
        assert_eq!(distinct_degree_profile(&p).unwrap(), vec![(6, 1)]);
        let p = FqPoly::from_int_poly(&prime(7), &phi(3));
        assert_eq!(distinct_degree_profile(&p).unwrap(), vec![(1, 2)]);
        // Φ_7 mod 2: 2 has order 3 mod 7, two cubics.
        let p = FqPoly::from_int_poly(&prime(2), &phi(7));
        assert_eq!(distinct_degree_profile(&p).unwrap(), vec![(3, 2)]);
        // Mixed degrees: x (x^2 + 1) (x^3 + 2x + 1) over F_3.
        let f3 = prime(3);
        let mixed = FqPoly::from_prime_coeffs(&f3, &[0, 1])
            .mul(&FqPoly::from_prime_coeffs(&f3, &[1, 0, 1]))
            .mul(&FqPoly::from_prime_coeffs(&f3, &[1, 2, 0, 1]));
        assert_eq!(distinct_degree_profile(&mixed).unwrap(), vec![(1, 1), (2, 1), (3, 1)]);
        // Φ_3 mod 3 = (x - 1)^2.
        let p = FqPoly::from_int_poly(&f3, &phi(3));
        assert_eq!(distinct_degree_profile(&p), Err(Error::NotSquarefree));
    }

    #[test]
    fn relative_inertness_examples() {
        let cubic: IntPoly = "x^3 - x^2 - 4*x - 1".parse().unwrap();
        assert_eq!(is_inert_in_relative_extension(&cubic, 43, 7).unwrap(), vec![true; 6]);
        assert_eq!(is_inert_in_relative_extension(&cubic, 2591, 7).unwrap(), vec![true; 6]);
        assert_eq!(
            is_inert_in_relative_extension(&cubic, 13, 7),
            Err(Error::DiscriminantDivisible { q: 13, disc: "169".into() })
        );
        assert_eq!(
            is_inert_in_relative_extension(&cubic, 7, 7),
            Err(Error::RamifiedPrime { q: 7, m: 7 })
        );
        // 2 has residue degree 3 in Q(ζ_7); the cubic becomes reducible over F_8.
        assert_eq!(is_inert_in_relative_extension(&cubic, 2, 7).unwrap(), vec![false; 2]);
        // 5 splits the cubic into linear factors already over F_5.
        assert_eq!(is_inert_in_relative_extension(&cubic, 5, 7).unwrap(), vec![false]);
    }

    #[test]
    fn small_field_list() {
        let sizes: Vec<BigUint> = small_fields(25).iter().map(|f| f.size()).collect();
        let expect: Vec<BigUint> = [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25]
            .into_iter()
            .map(BigUint::from)
            .collect();
        assert_eq!(sizes, expect);
    }
}
