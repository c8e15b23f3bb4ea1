//! Randomized property suites.

use std::sync::Arc;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cartier_mod::CartierModule;
use crate::error::{Error, Result};
use crate::field_poly::{Monomial, Polynomial, Ring};
use crate::testmod::{Convention, PairSpec, TauEngine};

#[derive(Clone, Debug)]
pub struct RandomPair {
    pub ring: Arc<Ring>,
    pub u: Polynomial,
    pub f: Polynomial,
    pub t: Rational64,
}

impl RandomPair {
    pub fn describe(&self) -> String {
        format!(
            "p={} vars={} u={} f={} t={}",
            self.ring.p(),
            self.ring.vars().join(","),
            self.u,
            self.f,
            self.t
        )
    }

    pub fn spec(&self) -> Result<PairSpec> {
        PairSpec::new(CartierModule::principal(self.u.clone()), self.f.clone(), self.t)
    }
}

pub fn random_polynomial(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, max_deg: u32, nonconstant: bool) -> Polynomial {
    let n = ring.nvars();
    loop {
        let terms = rng.gen_range(1..=3);
        let mut out = Vec::new();
        for _ in 0..terms {
            let mut e = vec![0u32; n];
            let d = rng.gen_range(0..=max_deg);
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            out.push((Monomial::from_exps(&e), rng.gen_range(1..ring.p())));
        }
        let f = Polynomial::from_terms(ring, out);
        if !f.is_zero() && (!nonconstant || !f.is_constant()) {
            return f;
        }
    }
}

/// p in {2, 3, 5}, one or two variables, u and f of degree at most 4, and
/// t in [0, 1] with denominator at most 12.
pub fn random_pair(rng: &mut ChaCha8Rng) -> RandomPair {
    let p = [2u64, 3, 5][rng.gen_range(0..3)];
    let vars: &[&str] = if rng.gen_bool(0.5) { &["x"] } else { &["x", "y"] };
    let ring = Ring::new(p, vars).expect("valid ring");
    let f = random_polynomial(rng, &ring, 4, true);
    let u = random_polynomial(rng, &ring, 4, false);
    let b = rng.gen_range(1..=12i64);
    let a = rng.gen_range(0..=b);
    RandomPair {
        ring,
        u,
        f,
        t: Rational64::new(a, b),
    }
}

pub fn random_pairs(seed: u64, cases: usize) -> Vec<RandomPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases).map(|_| random_pair(&mut rng)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const SUITES: [&str; 3] = ["prop32", "skoda", "lemma31"];

/// kappa(tau(tp)) = tau(t).
pub fn frobenius_recursion(pair: &RandomPair) -> Result<bool> {
    let engine = TauEngine::new(&pair.spec()?)?;
    let p = Rational64::from_integer(pair.ring.p() as i64);
    let lhs = engine.tau(pair.t)?.value;
    let up = engine.tau(pair.t * p)?.value;
    let den = engine.module().denominator();
    let rhs = engine.module().kappa_image(&up).sum(den)?;
    lhs.equals(&rhs)
}

/// f tau(t) inside tau(t+1), with equality when t > 0.
pub fn skoda(pair: &RandomPair) -> Result<bool> {
    let engine = TauEngine::new(&pair.spec()?)?;
    let one = Rational64::from_integer(1);
    let v = engine.tau(pair.t)?.value;
    let w = engine.tau(pair.t + one)?.value;
    let fv = v.scale(&pair.f).sum(engine.module().denominator())?;
    if !w.contains(&fv)? {
        return Ok(false);
    }
    if pair.t > Rational64::from_integer(0) {
        return w.equals(&fv);
    }
    Ok(true)
}

/// Exponents ceil(t p^e) and ceil(t (p^e - 1)) give the same tau.
pub fn convention_equivalence(pair: &RandomPair) -> Result<bool> {
    let spec = pair.spec()?;
    let a = TauEngine::new(&spec.clone().convention(Convention::CeilPe))?.tau(pair.t)?;
    let b = TauEngine::new(&spec.convention(Convention::CeilPeMinus1))?.tau(pair.t)?;
    a.value.equals(&b.value)
}

pub fn run(suite: &str, seed: u64, cases: usize) -> Result<CheckReport> {
    let prop: fn(&RandomPair) -> Result<bool> = match suite {
        "prop32" => frobenius_recursion,
        "skoda" => skoda,
        "lemma31" => convention_equivalence,
        other => return Err(Error::InvalidInput(format!("unknown suite {other}"))),
    };
    let mut failures = Vec::new();
    let mut passed = 0;
    for pair in random_pairs(seed, cases) {
        match prop(&pair) {
            Ok(true) => passed += 1,
            Ok(false) => failures.push(pair.describe()),
            Err(e) => failures.push(format!("{}: {e}", pair.describe())),
        }
    }
    Ok(CheckReport {
        suite: suite.to_string(),
        seed,
        cases,
        passed,
        failures,
    })
}
