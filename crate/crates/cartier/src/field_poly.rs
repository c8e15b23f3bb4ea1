//! Prime fields, monomials, sparse polynomials, Frobenius digits and the
//! Cartier trace.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub const MAX_PRIME: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut k: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// The unique p^e-th root of `a`. Frobenius is the identity on F_p.
    pub fn root(&self, a: u64, _e: u32) -> u64 {
        a
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn from_exps(e: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn var(n: usize, i: usize, k: u32) -> Self {
        let mut m = Self::one(n);
        m.0[i] = k;
        m
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(o.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(o.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn scale(&self, k: u64) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&e| u32::try_from(e as u64 * k).expect("exponent overflow"))
                .collect(),
        )
    }
}

/// A polynomial ring F_p[x_1, ..., x_n] with named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
}

impl Ring {
    pub fn new(p: u64, vars: &[&str]) -> Result<Arc<Ring>> {
        Self::with_names(p, vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn with_names(p: u64, vars: Vec<String>) -> Result<Arc<Ring>> {
        let field = PrimeField::new(p)?;
        for (i, v) in vars.iter().enumerate() {
            let ok = v
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidInput(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(Ring { field, vars }))
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring with one more variable appended.
    pub fn extend(&self, name: &str) -> Result<Arc<Ring>> {
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        Ring::with_names(self.p(), vars)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, u64>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        let c = ring.field.from_i64(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: u64) -> Self {
        assert_eq!(m.arity(), ring.nvars(), "monomial arity");
        let mut terms = BTreeMap::new();
        let c = c % ring.p();
        if c != 0 {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), 1)
    }

    pub fn var_pow(ring: &Arc<Ring>, i: usize, k: u32) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, k), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, u64)>>(ring: &Arc<Ring>, it: I) -> Self {
        let mut acc = Accumulator::new(ring.field);
        for (m, c) in it {
            assert_eq!(m.arity(), ring.nvars(), "monomial arity");
            acc.add(m, c % ring.p());
        }
        acc.finish(ring)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<u64> {
        if self.is_zero() {
            Some(0)
        } else if self.is_constant() {
            self.terms.values().next().copied()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u64)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn same_ring(&self, o: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring
    }

    fn check(&self, o: &Polynomial) -> Result<()> {
        if self.same_ring(o) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        Ok(self.add_impl(o, false))
    }

    pub fn checked_sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        Ok(self.add_impl(o, true))
    }

    pub fn checked_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        Ok(self.mul_impl(o))
    }

    /// Exact divisibility: returns the quotient when `o` divides `self`.
    pub fn checked_div(&self, o: &Polynomial) -> Result<Option<Polynomial>> {
        self.check(o)?;
        if o.is_zero() {
            return Ok(if self.is_zero() { Some(self.clone()) } else { None });
        }
        let f = self.ring.field;
        let (lm, lc) = o.lex_leading().unwrap();
        let lc_inv = f.inv(lc).unwrap();
        let mut rem = self.clone();
        let mut q = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.lex_leading() {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let t = Polynomial::monomial(&self.ring, lm.quotient_of(&m), f.mul(c, lc_inv));
            rem = &rem - &(&t * o);
            q = &q + &t;
        }
        Ok(Some(q))
    }

    pub fn divides(&self, o: &Polynomial) -> bool {
        matches!(o.checked_div(self), Ok(Some(_)))
    }

    fn lex_leading(&self) -> Option<(Monomial, u64)> {
        self.terms.iter().next_back().map(|(m, c)| (m.clone(), *c))
    }

    fn add_impl(&self, o: &Polynomial, negate: bool) -> Polynomial {
        assert!(self.same_ring(o), "ring contexts differ");
        let f = self.ring.field;
        let mut terms = self.terms.clone();
        for (m, &c) in &o.terms {
            let c = if negate { f.neg(c) } else { c };
            match terms.get_mut(m) {
                Some(v) => {
                    *v = f.add(*v, c);
                    if *v == 0 {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c);
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    fn mul_impl(&self, o: &Polynomial) -> Polynomial {
        assert!(self.same_ring(o), "ring contexts differ");
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let f = self.ring.field;
        let mut acc = Accumulator::new(f);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &o.terms {
                acc.add(a.mul(b), f.mul(ca, cb));
            }
        }
        acc.finish(&self.ring)
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), f.mul(*v, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u64) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), f.mul(*v, c)))
                .collect(),
        }
    }

    /// `f^(p^e)`: exponents scaled by p^e, coefficients fixed by Fermat.
    pub fn frobenius(&self, e: u32) -> Polynomial {
        let q = self.p().pow(e);
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.scale(q), *c)).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> Polynomial {
        let p = self.p();
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        // f^(k0 + k1 p + ...) = prod (f^(p^i))^(ki)
        while k > 0 {
            let digit = k % p;
            if digit > 0 {
                result = &result * &base.pow_small(digit);
            }
            k /= p;
            if k > 0 {
                base = base.frobenius(1);
            }
        }
        result
    }

    fn pow_small(&self, mut k: u64) -> Polynomial {
        let mut r = Polynomial::one(&self.ring);
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Substitute `g` for variable `var`.
    pub fn substitute(&self, var: usize, g: &Polynomial) -> Polynomial {
        assert!(self.same_ring(g), "ring contexts differ");
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let mut rest = m.clone();
            let k = rest.0[var];
            rest.0[var] = 0;
            let entry = by_power
                .entry(k)
                .or_insert_with(|| Polynomial::zero(&self.ring));
            *entry = &*entry + &Polynomial::monomial(&self.ring, rest, c);
        }
        let mut out = Polynomial::zero(&self.ring);
        for (k, part) in by_power {
            out = &out + &(&part * &g.pow(k as u64));
        }
        out
    }

    /// Re-express in `target`, whose variables must include all variables
    /// occurring in `self` (matched by name).
    pub fn map_to(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        if target.p() != self.p() {
            return Err(Error::RingMismatch);
        }
        let mut idx = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            idx.push(target.var_index(v));
        }
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            let mut nm = Monomial::one(target.nvars());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match idx[i] {
                    Some(j) => nm.0[j] = e,
                    None => {
                        return Err(Error::InvalidInput(format!(
                            "variable {} absent from target ring",
                            self.ring.vars()[i]
                        )))
                    }
                }
            }
            terms.insert(nm, c);
        }
        Ok(Polynomial {
            ring: target.clone(),
            terms,
        })
    }

    /// Coefficients with respect to `var`, re-expressed in `base`.
    pub fn coefficients_in(&self, var: usize, base: &Arc<Ring>) -> Result<BTreeMap<u32, Polynomial>> {
        let mut parts: BTreeMap<u32, Vec<(Monomial, u64)>> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let mut rest = m.clone();
            let k = rest.0[var];
            rest.0[var] = 0;
            parts.entry(k).or_default().push((rest, c));
        }
        let mut out = BTreeMap::new();
        for (k, ts) in parts {
            out.insert(k, Polynomial::from_terms(&self.ring, ts).map_to(base)?);
        }
        Ok(out)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn frobenius_digits(&self, e: u32) -> FrobeniusDigits {
        assert!(e >= 1, "level must be positive");
        let q = (self.p() as u128).pow(e);
        let n = self.ring.nvars();
        let mut parts: BTreeMap<Monomial, Vec<(Monomial, u64)>> = BTreeMap::new();
        for (b, &c) in &self.terms {
            let mut a = Monomial::one(n);
            let mut m = Monomial::one(n);
            for i in 0..n {
                let bi = b.0[i] as u128;
                a.0[i] = (bi % q) as u32;
                m.0[i] = (bi / q) as u32;
            }
            parts
                .entry(a)
                .or_default()
                .push((m, self.ring.field.root(c, e)));
        }
        let digits = parts
            .into_iter()
            .map(|(a, ts)| (a, Polynomial::from_terms(&self.ring, ts)))
            .collect();
        FrobeniusDigits {
            level: e,
            digits,
            ring: self.ring.clone(),
        }
    }

    /// The trace C_e: projection onto the digit at (p^e - 1, ..., p^e - 1).
    pub fn cartier_trace(&self, e: u32) -> Polynomial {
        assert!(e >= 1, "level must be positive");
        let q = (self.p() as u128).pow(e);
        let mut terms = BTreeMap::new();
        'outer: for (b, &c) in &self.terms {
            let mut m = Monomial::one(self.ring.nvars());
            for (i, &bi) in b.0.iter().enumerate() {
                let s = bi as u128 + 1;
                if !s.is_multiple_of(q) {
                    continue 'outer;
                }
                m.0[i] = (s / q - 1) as u32;
            }
            terms.insert(m, self.ring.field.root(c, e));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }
}

/// `(C o u)^e (f) = C_e(u^((p^e - 1)/(p - 1)) f)`.
pub fn twisted_power(u: &Polynomial, f: &Polynomial, e: u32) -> Polynomial {
    let p = u.p();
    let mut n: u64 = 0;
    for _ in 0..e {
        n = n * p + 1;
    }
    (&u.pow(n) * f).cartier_trace(e)
}

struct Accumulator {
    field: PrimeField,
    map: HashMap<Monomial, u64>,
}

impl Accumulator {
    fn new(field: PrimeField) -> Self {
        Accumulator {
            field,
            map: HashMap::new(),
        }
    }

    fn add(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let f = self.field;
        let v = self.map.entry(m).or_insert(0);
        *v = f.add(*v, c);
    }

    fn finish(self, ring: &Arc<Ring>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: self.map.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FrobeniusDigits {
    pub level: u32,
    pub digits: BTreeMap<Monomial, Polynomial>,
    ring: Arc<Ring>,
}

impl FrobeniusDigits {
    pub fn get(&self, a: &Monomial) -> Polynomial {
        self.digits
            .get(a)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    /// `sum_a digit_a^(p^e) x^a`.
    pub fn reconstruct(&self) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (a, d) in &self.digits {
            out = &out + &d.frobenius(self.level).mul_monomial(a, 1);
        }
        out
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        self.add_impl(o, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.add_impl(o, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.mul_impl(o)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.p() - 1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in self.terms.iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: u64, v: &[&str]) -> Arc<Ring> {
        Ring::new(p, v).unwrap()
    }

    #[test]
    fn rejects_composites_and_large_primes() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new((1 << 20) + 7).is_err());
        assert!(PrimeField::new(1_048_573).is_ok());
    }

    #[test]
    fn expansion_mod_three() {
        let ring = r(3, &["x"]);
        let x = Polynomial::var(&ring, 0);
        let a = &x + &Polynomial::constant(&ring, 1);
        let b = &x + &Polynomial::constant(&ring, 2);
        assert_eq!((&a * &b).to_string(), "x^2+2");
        assert!((&a * &Polynomial::zero(&ring)).is_zero());
    }

    #[test]
    fn freshmans_dream() {
        let ring = r(2, &["x", "y"]);
        let s = &Polynomial::var(&ring, 0) + &Polynomial::var(&ring, 1);
        assert_eq!(s.pow(2).to_string(), "x^2+y^2");
        assert_eq!(s.pow(5), &(&s * &s) * &(&(&s * &s) * &s));
    }

    #[test]
    fn digits_examples() {
        let ring = r(3, &["x"]);
        let x5 = Polynomial::var_pow(&ring, 0, 5);
        let d = x5.frobenius_digits(1);
        assert_eq!(d.digits.len(), 1);
        assert_eq!(d.get(&Monomial::from_exps(&[2])).to_string(), "x");
        let g = &Polynomial::var_pow(&ring, 0, 2).scale(2) + &Polynomial::var_pow(&ring, 0, 3);
        let d = g.frobenius_digits(1);
        assert_eq!(d.get(&Monomial::from_exps(&[2])).to_string(), "2");
        assert_eq!(d.get(&Monomial::from_exps(&[0])).to_string(), "x");
        assert_eq!(d.reconstruct(), g);
        assert_eq!(g.cartier_trace(1).to_string(), "2");
    }

    #[test]
    fn trace_examples() {
        let ring = r(3, &["x"]);
        assert_eq!(Polynomial::var_pow(&ring, 0, 2).cartier_trace(1).to_string(), "1");
        assert_eq!(Polynomial::var_pow(&ring, 0, 5).cartier_trace(1).to_string(), "x");
        let u = Polynomial::var(&ring, 0);
        assert!(twisted_power(&u, &Polynomial::var_pow(&ring, 0, 14), 2).is_zero());
        assert_eq!(
            twisted_power(&u, &Polynomial::var_pow(&ring, 0, 13), 2).to_string(),
            "x"
        );
    }

    #[test]
    fn substitution_and_division() {
        let ring = r(5, &["x", "s"]);
        let x = Polynomial::var(&ring, 0);
        let s = Polynomial::var(&ring, 1);
        let g = &(&s * &s) + &x;
        let h = g.substitute(1, &(&x * &x));
        assert_eq!(h.to_string(), "x^4+x");
        let q = (&g * &h).checked_div(&h).unwrap().unwrap();
        assert_eq!(q, g);
        assert!((&g + &Polynomial::one(&ring)).checked_div(&x).unwrap().is_none());
    }

    #[test]
    fn zero_variable_ring() {
        let ring = r(3, &[]);
        let c = Polynomial::constant(&ring, 2);
        assert_eq!(c.cartier_trace(1), c);
        assert_eq!(c.to_string(), "2");
    }
}
