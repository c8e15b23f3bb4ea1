#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use cartier::cli::parse_polynomial;
use cartier::{FreeSubmodule, Monomial, Polynomial, Ring};
use num_rational::Rational64;
use proptest::prelude::*;

pub fn ring(p: u64, vars: &[&str]) -> Arc<Ring> {
    Ring::new(p, vars).unwrap()
}

pub fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse_polynomial(s, r).unwrap()
}

pub fn q(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

pub fn ideal(r: &Arc<Ring>, gens: &[&str]) -> FreeSubmodule {
    FreeSubmodule::ideal(r, gens.iter().map(|g| poly(r, g)).collect()).unwrap()
}

pub fn build(r: &Arc<Ring>, terms: &[(Vec<u32>, u64)]) -> Polynomial {
    let p = r.p();
    Polynomial::from_terms(
        r,
        terms
            .iter()
            .map(|(e, c)| (Monomial::from_exps(&e[..r.nvars()]), c % p)),
    )
}

/// Up to `len` terms with exponents in [0, max_exp] and arbitrary coefficients.
pub fn terms(max_exp: u32, len: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u64)>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, 3), 0u64..1_000_000),
        1..=len,
    )
}

pub fn primes() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3u64), Just(5u64)]
}

pub fn ring_for(p: u64, n: usize) -> Arc<Ring> {
    ring(p, &["x", "y", "z"][..n])
}

/// C_e computed term by term: x^b survives iff every b_i + 1 is divisible by p^e.
pub fn trace_oracle(f: &Polynomial, e: u32) -> Polynomial {
    let r = f.ring();
    let qe = r.p().pow(e) as u32;
    let mut out = Vec::new();
    for (m, c) in f.terms() {
        if m.0.iter().all(|&b| (b + 1) % qe == 0) {
            let exps: Vec<u32> = m.0.iter().map(|&b| (b + 1) / qe - 1).collect();
            out.push((Monomial::from_exps(&exps), c));
        }
    }
    Polynomial::from_terms(r, out)
}

/// Ideal generated by C_e(x^a g) over all generators g and all a in [0, p^e)^n.
pub fn root_by_traces(gens: &[Polynomial], r: &Arc<Ring>, e: u32) -> FreeSubmodule {
    let qe = r.p().pow(e) as u32;
    let n = r.nvars();
    let mut shifts = vec![vec![0u32; n]];
    for i in 0..n {
        let mut next = Vec::new();
        for s in &shifts {
            for k in 0..qe {
                let mut t = s.clone();
                t[i] = k;
                next.push(t);
            }
        }
        shifts = next;
    }
    let mut out = Vec::new();
    for g in gens {
        for a in &shifts {
            let h = trace_oracle(&g.mul_monomial(&Monomial::from_exps(a), 1), e);
            if !h.is_zero() {
                out.push(h);
            }
        }
    }
    FreeSubmodule::ideal(r, out).unwrap()
}

/// Ideal generated by the base-p^e digits of the generators.
pub fn root_by_digits(gens: &[Polynomial], r: &Arc<Ring>, e: u32) -> FreeSubmodule {
    let qe = r.p().pow(e) as u32;
    let mut out = Vec::new();
    for g in gens {
        let mut by_class: BTreeMap<Vec<u32>, Vec<(Monomial, u64)>> = BTreeMap::new();
        for (m, c) in g.terms() {
            let class: Vec<u32> = m.0.iter().map(|&b| b % qe).collect();
            let quot: Vec<u32> = m.0.iter().map(|&b| b / qe).collect();
            by_class
                .entry(class)
                .or_default()
                .push((Monomial::from_exps(&quot), c));
        }
        out.extend(by_class.into_values().map(|ts| Polynomial::from_terms(r, ts)));
    }
    FreeSubmodule::ideal(r, out).unwrap()
}

pub fn ceil_mul(t: Rational64, k: u64) -> u64 {
    (t * Rational64::from_integer(k as i64)).ceil().to_integer() as u64
}

/// sum over e in [0, e_max] of (C o u)^e (c f^ceil(t p^e) R), literally.
pub fn tau_partial_sum(u: &Polynomial, f: &Polynomial, c: &Polynomial, t: Rational64, e_max: u32) -> FreeSubmodule {
    let r = u.ring();
    let p = r.p();
    let mut acc = FreeSubmodule::ideal(r, vec![c * &f.pow(ceil_mul(t, 1))]).unwrap();
    let mut twist_exp = 0u64;
    for e in 1..=e_max {
        twist_exp = twist_exp * p + 1;
        let h = &(c * &u.pow(twist_exp)) * &f.pow(ceil_mul(t, p.pow(e)));
        acc = acc.sum(&root_by_digits(&[h], r, e)).unwrap();
    }
    acc.reduced()
}
