//! Test modules tau(M, kappa^(f^t)), test elements, left limits, jumping
//! numbers, F-pure thresholds and F-regularity.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cartier_mod::CartierModule;
use crate::error::{Error, Result};
use crate::field_poly::Polynomial;
use crate::frobenius::{frobenius_root, max_level};
use crate::groebner::FreeSubmodule;

/// Cap on closure rounds in the tau computation.
pub const CLOSURE_CAP: usize = 64;
/// Largest degree of the multiplier u^((p^m-1)/(p-1)) f^(k mod p^m) for
/// which the rank-one root path is attempted.
pub const ROOT_PATH_MAX_DEGREE: u64 = 256;
pub const LEFT_LIMIT_CAP: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Exponents ceil(t (p^e - 1)).
    CeilPeMinus1,
    /// Exponents ceil(t p^e).
    CeilPe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TauPath {
    RootBased,
    SumBased,
}

#[derive(Clone, Debug)]
pub struct PairSpec {
    pub module: CartierModule,
    pub f: Polynomial,
    pub t: Rational64,
    pub c: Polynomial,
    pub convention: Convention,
}

impl PairSpec {
    /// Uses the suggested test element and the ceil(t p^e) convention.
    pub fn new(module: CartierModule, f: Polynomial, t: Rational64) -> Result<Self> {
        let c = suggest_test_element(&module, &f)?;
        Self::with_test_element(module, f, t, c)
    }

    pub fn with_test_element(
        module: CartierModule,
        f: Polynomial,
        t: Rational64,
        c: Polynomial,
    ) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidInput("f must be nonzero".into()));
        }
        if c.is_zero() {
            return Err(Error::InvalidInput("test element must be nonzero".into()));
        }
        if t < Rational64::zero() {
            return Err(Error::InvalidInput(format!("t = {t} is negative")));
        }
        if !f.same_ring(&c) || **f.ring() != **module.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(PairSpec {
            module,
            f,
            t,
            c,
            convention: Convention::CeilPe,
        })
    }

    pub fn convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn at(&self, t: Rational64) -> PairSpec {
        PairSpec { t, ..self.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct TauResult {
    pub value: FreeSubmodule,
    pub stabilized_at_e: u32,
    pub certified: bool,
    pub path: TauPath,
}

/// True when multiplication by f is injective on W/N.
pub fn is_regular_element(m: &CartierModule, f: &Polynomial) -> Result<bool> {
    let den = m.denominator();
    let k = den.colon(f)?.intersect(&m.numerator().sum(den)?)?;
    den.contains(&k)
}

/// u f in rank one, f det(U) otherwise.
pub fn suggest_test_element(m: &CartierModule, f: &Polynomial) -> Result<Polynomial> {
    let st = m.structure();
    let c = if st.rank() == 1 {
        &st.twist()[0][0] * f
    } else {
        &st.determinant() * f
    };
    if c.is_zero() {
        return Err(Error::InvalidInput("suggested test element is zero".into()));
    }
    Ok(c)
}

/// Consistency check: tau computed with c, c^2 and c f agree. Necessary for
/// c to be a test element, not sufficient.
pub fn verify_test_element(spec: &PairSpec) -> Result<bool> {
    let base = tau(spec)?.value;
    for c in [spec.c.pow(2), &spec.c * &spec.f] {
        let other = PairSpec { c, ..spec.clone() };
        if !tau(&other)?.value.equals(&base)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// t = k / ((p^m - 1) p^s) with m the order of p modulo the p-free part of
/// the denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Period {
    pub s: u32,
    pub m: u32,
    pub k: BigUint,
}

pub fn period(t: Rational64, p: u64) -> Period {
    let (a, mut b) = (*t.numer() as u64, *t.denom() as u64);
    let mut s = 0;
    while b % p == 0 {
        b /= p;
        s += 1;
    }
    let mut m = 1u32;
    let mut acc = p % b;
    while acc != 1 % b {
        acc = acc * p % b;
        m += 1;
    }
    let pm = BigUint::from(p).pow(m);
    let k = BigUint::from(a) * (pm - 1u32) / BigUint::from(b);
    Period { s, m, k }
}

fn ceil(t: Rational64) -> u64 {
    t.ceil().to_integer() as u64
}

/// Precomputed data for tau over a fixed pair (M, f, c).
#[derive(Clone, Debug)]
pub struct TauEngine {
    module: CartierModule,
    f: Polynomial,
    c: Polynomial,
    convention: Convention,
    underline: FreeSubmodule,
    regular: bool,
}

struct Step {
    digits: Vec<u64>,
    low: BigUint,
    high: u64,
}

impl TauEngine {
    pub fn new(spec: &PairSpec) -> Result<Self> {
        let c = if spec.f.divides(&spec.c) {
            spec.c.clone()
        } else {
            &spec.c * &spec.f
        };
        Ok(TauEngine {
            underline: spec.module.underline()?.0,
            regular: is_regular_element(&spec.module, &spec.f)?,
            module: spec.module.clone(),
            f: spec.f.clone(),
            c,
            convention: spec.convention,
        })
    }

    pub fn module(&self) -> &CartierModule {
        &self.module
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn test_element(&self) -> &Polynomial {
        &self.c
    }

    pub fn underline(&self) -> &FreeSubmodule {
        &self.underline
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    fn plus_den(&self, w: FreeSubmodule) -> FreeSubmodule {
        w.sum(self.module.denominator()).unwrap().reduced()
    }

    fn kappa_step(&self, w: &FreeSubmodule) -> FreeSubmodule {
        self.plus_den(self.module.kappa_image(w))
    }

    fn step_data(&self, per: &Period) -> Result<Step> {
        let p = BigUint::from(self.module.ring().p());
        let mut rest = per.k.clone();
        let mut digits = Vec::with_capacity(per.m as usize);
        for _ in 0..per.m {
            let (q, r) = rest.div_rem(&p);
            digits.push(r.to_u64().unwrap());
            rest = q;
        }
        let high = rest
            .to_u64()
            .ok_or_else(|| Error::InvalidInput("exponent too large".into()))?;
        let low = &per.k - BigUint::from(high) * p.pow(per.m);
        Ok(Step { digits, low, high })
    }

    /// W -> kappa^m(f^k W) + N, one Frobenius digit of k at a time.
    fn phi_sum(&self, step: &Step, w: &FreeSubmodule) -> FreeSubmodule {
        let mut cur = w.clone();
        for &d in &step.digits {
            cur = self.kappa_step(&cur.scale(&self.f.pow(d)));
        }
        self.plus_den(cur.scale(&self.f.pow(step.high)))
    }

    /// Rank one, free: J -> (u^((p^m-1)/(p-1)) f^(k mod p^m) J)^[1/p^m] f^(k div p^m).
    fn phi_root(&self, step: &Step, m: u32, j: &FreeSubmodule) -> Result<FreeSubmodule> {
        let p = self.module.ring().p();
        let u = &self.module.structure().twist()[0][0];
        let uexp = (p.pow(m) - 1) / (p - 1);
        let low = step.low.to_u64().unwrap();
        let g = &u.pow(uexp) * &self.f.pow(low);
        let root = frobenius_root(&j.scale(&g), m)?;
        Ok(root.scale(&self.f.pow(step.high)).reduced())
    }

    fn closure<F>(&self, start: &FreeSubmodule, phi: F) -> Result<(FreeSubmodule, usize)>
    where
        F: Fn(&FreeSubmodule) -> Result<FreeSubmodule>,
    {
        let base = phi(start)?;
        let mut s = base.clone();
        for round in 1..=CLOSURE_CAP {
            let next = base.sum(&phi(&s)?)?.reduced();
            if next.equals(&s)? {
                return Ok((s, round));
            }
            s = next;
        }
        Err(Error::StabilizationCapExceeded { steps: CLOSURE_CAP })
    }

    fn root_path_applies(&self, step: &Step, m: u32) -> bool {
        let p = self.module.ring().p();
        if self.module.rank() != 1
            || !self.module.denominator().is_zero()
            || !self.module.numerator().is_full()
            || m > max_level()
        {
            return false;
        }
        let Some(q) = p.checked_pow(m) else {
            return false;
        };
        let u = &self.module.structure().twist()[0][0];
        let du = u.degree().unwrap_or(0) * ((q - 1) / (p - 1));
        let df = self.f.degree().unwrap_or(0) * step.low.to_u64().unwrap_or(u64::MAX / 2);
        du.saturating_add(df) <= ROOT_PATH_MAX_DEGREE
    }

    pub fn tau(&self, t: Rational64) -> Result<TauResult> {
        if t < Rational64::zero() {
            return Err(Error::InvalidInput(format!("t = {t} is negative")));
        }
        if t > Rational64::zero() && !self.regular {
            return Err(Error::NonDegenerate);
        }
        let p = self.module.ring().p();
        let per = period(t, p);
        let step = self.step_data(&per)?;
        let tp = t * Rational64::from_integer(p.pow(per.s) as i64);
        let mut start = self.underline.scale(&self.c);
        if self.convention == Convention::CeilPe {
            start = start.scale(&self.f.pow(ceil(tp)));
        }
        let start = self.plus_den(start);

        let (sum_val, rounds) = self.closure(&start, |w| Ok(self.phi_sum(&step, w)))?;
        let mut value = sum_val;
        let mut path = TauPath::SumBased;
        if self.root_path_applies(&step, per.m) {
            let (root_val, _) = self.closure(&start, |j| self.phi_root(&step, per.m, j))?;
            if !root_val.equals(&value)? {
                return Err(Error::Disagreement(format!(
                    "root path {root_val} and sum path {value} at t = {t}"
                )));
            }
            value = root_val;
            path = TauPath::RootBased;
        }
        for _ in 0..per.s {
            value = self.kappa_step(&value);
        }
        Ok(TauResult {
            value,
            stabilized_at_e: rounds as u32 * per.m + per.s,
            certified: true,
            path,
        })
    }

    /// Value just below t.
    pub fn left_limit(&self, t: Rational64) -> Result<LeftLimit> {
        if t <= Rational64::zero() {
            return Err(Error::InvalidInput("left limit needs t > 0".into()));
        }
        let p = self.module.ring().p() as i64;
        let mut prev: Option<TauResult> = None;
        let mut delta = Rational64::zero();
        for k in 1..=LEFT_LIMIT_CAP {
            let d = Rational64::new(1, p.pow(k) * (p - 1));
            if d >= t {
                continue;
            }
            let cur = self.tau(t - d)?;
            if let Some(pr) = &prev {
                if pr.value.equals(&cur.value)? {
                    return Ok(LeftLimit {
                        result: cur,
                        delta,
                    });
                }
            }
            prev = Some(cur);
            delta = d;
        }
        let mut result = match prev {
            Some(r) => r,
            None => self.tau(Rational64::zero())?,
        };
        result.certified = false;
        Ok(LeftLimit { result, delta })
    }

    /// Sum of kappa^e(c W) over e >= 1, compared with W + N.
    pub fn is_f_regular(&self) -> Result<bool> {
        is_f_regular(&self.module, &self.c)
    }
}

#[derive(Clone, Debug)]
pub struct LeftLimit {
    pub result: TauResult,
    /// The delta at which the value was first seen to be stable.
    pub delta: Rational64,
}

pub fn tau(spec: &PairSpec) -> Result<TauResult> {
    TauEngine::new(spec)?.tau(spec.t)
}

pub fn tau_left_limit(spec: &PairSpec) -> Result<LeftLimit> {
    TauEngine::new(spec)?.left_limit(spec.t)
}

/// Rationals a/b in (lo, hi] with b at most `max_den`, increasing.
pub fn candidates(lo: Rational64, hi: Rational64, max_den: i64) -> Vec<Rational64> {
    let mut out = Vec::new();
    for b in 1..=max_den {
        let a0 = (lo * b).floor().to_integer() + 1;
        let a1 = (hi * b).floor().to_integer();
        for a in a0..=a1 {
            if a.gcd(&b) == 1 {
                out.push(Rational64::new(a, b));
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct JumpScan {
    pub jumps: Vec<Rational64>,
    /// tau at the lower end of the range and just after each jump.
    pub base: TauResult,
    pub values: Vec<TauResult>,
    pub candidates: usize,
    pub max_denominator: i64,
}

fn check_scan_bounds(p: u64, lo: Rational64, hi: Rational64, max_den: i64) -> Result<()> {
    if lo < Rational64::zero() || hi < lo || hi > Rational64::from_integer(4) {
        return Err(Error::InvalidInput(format!("range [{lo}, {hi}] must lie in [0, 4]")));
    }
    let cap = (p * p * p * (p - 1)) as i64;
    if max_den < 1 || max_den > cap {
        return Err(Error::InvalidInput(format!(
            "max denominator {max_den} must lie in [1, {cap}]"
        )));
    }
    Ok(())
}

/// tau on a grid of t values, in parallel, in the order given.
pub fn tau_grid(engine: &TauEngine, ts: &[Rational64]) -> Result<Vec<TauResult>> {
    ts.par_iter().map(|&t| engine.tau(t)).collect()
}

impl TauEngine {
    pub fn jumping_numbers(&self, lo: Rational64, hi: Rational64, max_den: i64) -> Result<JumpScan> {
        check_scan_bounds(self.module.ring().p(), lo, hi, max_den)?;
        if !self.regular {
            return Err(Error::NonDegenerate);
        }
        let cands = candidates(lo, hi, max_den);
        let base = self.tau(lo)?;
        let vals = tau_grid(self, &cands)?;
        let mut jumps = Vec::new();
        let mut values = Vec::new();
        let mut prev = &base;
        for (t, v) in cands.iter().zip(&vals) {
            if !prev.value.contains(&v.value)? {
                return Err(Error::Disagreement(format!("tau is not decreasing at t = {t}")));
            }
            if !v.value.contains(&prev.value)? {
                jumps.push(*t);
                values.push(v.clone());
            }
            prev = v;
        }
        Ok(JumpScan {
            jumps,
            base,
            values,
            candidates: cands.len(),
            max_denominator: max_den,
        })
    }
}

pub fn jumping_numbers(
    spec: &PairSpec,
    lo: Rational64,
    hi: Rational64,
    max_den: i64,
) -> Result<JumpScan> {
    TauEngine::new(spec)?.jumping_numbers(lo, hi, max_den)
}

/// nu_f(p^e): the largest r with f^r outside (x_1^q, ..., x_n^q).
pub fn nu_invariant(f: &Polynomial, e: u32) -> Result<u64> {
    let ring = f.ring();
    let n = ring.nvars();
    if n == 0 || f.is_zero() {
        return Err(Error::InvalidInput("nu needs a nonzero f in at least one variable".into()));
    }
    if f.constant_value().is_some_and(|c| c != 0) || !f.coeff(&crate::field_poly::Monomial::one(n)).is_zero() {
        return Err(Error::InvalidInput("f must vanish at the origin".into()));
    }
    let q = ring.p().pow(e) as u32;
    let inside = |g: &Polynomial| g.terms().all(|(m, _)| m.0.iter().any(|&a| a >= q));
    let mut r = 0u64;
    let mut pw = f.clone();
    while !inside(&pw) {
        r += 1;
        pw = &pw * f;
    }
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct FptResult {
    pub value: Rational64,
    /// Largest candidate below the threshold.
    pub below: Rational64,
    /// (e, nu_f(p^e)) pairs used in the cross-check.
    pub nu: Vec<(u32, u64)>,
}

/// F-pure threshold of (R, f): the first t with tau(R, f^t) != R, found by
/// bisection over the candidates and cross-checked against nu invariants.
pub fn fpt(f: &Polynomial, max_den: i64) -> Result<FptResult> {
    let ring = f.ring().clone();
    let p = ring.p();
    let m = CartierModule::principal(Polynomial::one(&ring));
    let spec = PairSpec::new(m, f.clone(), Rational64::zero())?;
    let engine = TauEngine::new(&spec)?;
    check_scan_bounds(p, Rational64::zero(), Rational64::from_integer(1), max_den)?;
    let cands = candidates(Rational64::zero(), Rational64::from_integer(1), max_den);
    let is_full = |t: Rational64| -> Result<bool> { Ok(engine.tau(t)?.value.is_full()) };
    if is_full(Rational64::from_integer(1))? {
        return Err(Error::InvalidInput("tau(f^1) = R; f is a unit".into()));
    }
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    // invariant: cands[hi] not full; everything below lo is full
    while lo < hi {
        let mid = (lo + hi) / 2;
        if is_full(cands[mid])? {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let value = cands[hi];
    let below = if hi == 0 { Rational64::zero() } else { cands[hi - 1] };
    let mut nu = Vec::new();
    let mut e = 1;
    while p.pow(e) <= 128 {
        let v = nu_invariant(f, e)?;
        let q = p.pow(e) as i64;
        let (l, u) = (Rational64::new(v as i64, q), Rational64::new(v as i64 + 1, q));
        if u <= below || l > value {
            return Err(Error::Disagreement(format!(
                "threshold in ({below}, {value}] but nu_f({q}) = {v}"
            )));
        }
        nu.push((e, v));
        e += 1;
    }
    Ok(FptResult { value, below, nu })
}

/// Whether the closure of kappa^e(c W) over e >= 1 recovers W + N.
pub fn is_f_regular(m: &CartierModule, c: &Polynomial) -> Result<bool> {
    let den = m.denominator();
    let step = |w: &FreeSubmodule| m.kappa_image(w).sum(den).unwrap().reduced();
    let full = m.numerator().sum(den)?;
    let base = step(&full.scale(c));
    let mut s = base.clone();
    for _ in 0..CLOSURE_CAP {
        let next = base.sum(&step(&s))?.reduced();
        if next.equals(&s)? {
            return s.contains(&full);
        }
        s = next;
    }
    Err(Error::StabilizationCapExceeded { steps: CLOSURE_CAP })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_polynomial;
    use crate::field_poly::Ring;
    use crate::groebner::QuotientPresentation;
    use std::sync::Arc;

    fn ring(p: u64, v: &[&str]) -> Arc<Ring> {
        Ring::new(p, v).unwrap()
    }

    fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> FreeSubmodule {
        FreeSubmodule::ideal(r, gens.iter().map(|g| poly(r, g)).collect()).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn tau_of(r: &Arc<Ring>, u: &str, f: &str, t: Rational64) -> FreeSubmodule {
        let spec = PairSpec::new(CartierModule::principal(poly(r, u)), poly(r, f), t).unwrap();
        tau(&spec).unwrap().value
    }

    #[test]
    fn period_decomposition() {
        let per = period(q(5, 11), 3);
        assert_eq!((per.s, per.m), (0, 5));
        assert_eq!(per.k, BigUint::from(5u32 * 242 / 11));
        let per = period(q(1, 6), 3);
        assert_eq!((per.s, per.m, per.k.clone()), (1, 1, BigUint::from(1u32)));
        let per = period(q(2, 1), 2);
        assert_eq!((per.s, per.m, per.k.clone()), (0, 1, BigUint::from(2u32)));
    }

    #[test]
    fn smooth_examples() {
        let r = ring(3, &["x"]);
        assert!(tau_of(&r, "1", "x", q(1, 1)).equals(&ideal(&r, &["x"])).unwrap());
        assert!(tau_of(&r, "1", "x", q(1, 2)).is_full());
        assert!(tau_of(&r, "1", "x", q(7, 3)).equals(&ideal(&r, &["x^2"])).unwrap());
    }

    #[test]
    fn twisted_examples() {
        let r = ring(3, &["x"]);
        assert!(tau_of(&r, "x", "x", q(1, 2)).equals(&ideal(&r, &["x"])).unwrap());
        assert!(tau_of(&r, "x", "x", q(2, 5)).is_full());
        assert!(tau_of(&r, "x", "x", q(1, 1)).equals(&ideal(&r, &["x"])).unwrap());
        assert!(tau_of(&r, "x", "x", q(5, 11)).is_full());
    }

    #[test]
    fn monomial_example() {
        let r = ring(3, &["x", "y"]);
        assert!(tau_of(&r, "1", "x^2*y", q(3, 4)).equals(&ideal(&r, &["x"])).unwrap());
    }

    #[test]
    fn degenerate_pairs_refused() {
        let r = ring(3, &["x"]);
        let m = CartierModule::principal(poly(&r, "x^2"))
            .quotient_by(&ideal(&r, &["x"]))
            .unwrap();
        assert!(!is_regular_element(&m, &poly(&r, "x")).unwrap());
        let spec = PairSpec::with_test_element(m, poly(&r, "x"), q(1, 2), poly(&r, "x")).unwrap();
        assert!(matches!(tau(&spec), Err(Error::NonDegenerate)));
        let r2 = ring(3, &["x", "y"]);
        let m = CartierModule::new(
            QuotientPresentation::new(
                FreeSubmodule::full(&r2, 1),
                ideal(&r2, &["x*y"]),
            )
            .unwrap(),
            crate::cartier_mod::CartierStructure::scalar(poly(&r2, "x^2*y^2")),
        )
        .unwrap();
        assert!(!is_regular_element(&m, &poly(&r2, "x")).unwrap());
        assert!(is_regular_element(&CartierModule::principal(poly(&r, "1")), &poly(&r, "x")).unwrap());
    }

    #[test]
    fn left_limits() {
        let r = ring(3, &["x"]);
        let spec = PairSpec::new(CartierModule::principal(poly(&r, "1")), poly(&r, "x"), q(1, 1)).unwrap();
        let ll = tau_left_limit(&spec).unwrap();
        assert!(ll.result.value.is_full());
        assert!(ll.result.certified);
        let spec = PairSpec::new(CartierModule::principal(poly(&r, "x")), poly(&r, "x"), q(1, 2)).unwrap();
        assert!(tau_left_limit(&spec).unwrap().result.value.is_full());
    }

    #[test]
    fn jumps_examples() {
        let r = ring(3, &["x"]);
        let spec = PairSpec::new(CartierModule::principal(poly(&r, "1")), poly(&r, "x"), q(0, 1)).unwrap();
        let scan = jumping_numbers(&spec, q(0, 1), q(2, 1), 12).unwrap();
        assert_eq!(scan.jumps, vec![q(1, 1), q(2, 1)]);
        let spec = PairSpec::new(CartierModule::principal(poly(&r, "x")), poly(&r, "x"), q(0, 1)).unwrap();
        let scan = jumping_numbers(&spec, q(0, 1), q(1, 1), 12).unwrap();
        assert_eq!(scan.jumps, vec![q(1, 2)]);
        let r2 = ring(3, &["x", "y"]);
        let spec = PairSpec::new(CartierModule::principal(poly(&r2, "1")), poly(&r2, "x^2*y"), q(0, 1)).unwrap();
        let scan = jumping_numbers(&spec, q(0, 1), q(1, 1), 12).unwrap();
        assert_eq!(scan.jumps, vec![q(1, 2), q(1, 1)]);
    }

    #[test]
    fn thresholds() {
        let r = ring(3, &["x"]);
        assert_eq!(fpt(&poly(&r, "x"), 12).unwrap().value, q(1, 1));
        let r2 = ring(3, &["x", "y"]);
        assert_eq!(fpt(&poly(&r2, "x^2*y"), 12).unwrap().value, q(1, 2));
        assert_eq!(fpt(&poly(&r2, "y^3-y-x"), 12).unwrap().value, q(1, 1));
        assert!(fpt(&poly(&r2, "x+1"), 12).is_err());
    }

    #[test]
    fn f_regularity() {
        let r = ring(3, &["x"]);
        assert!(is_f_regular(&CartierModule::principal(poly(&r, "1")), &poly(&r, "x")).unwrap());
        assert!(!is_f_regular(&CartierModule::principal(poly(&r, "x^2")), &poly(&r, "x")).unwrap());
        assert!(is_f_regular(&CartierModule::principal(poly(&r, "x")), &poly(&r, "x^2")).unwrap());
    }

    #[test]
    fn test_element_checks() {
        let r = ring(3, &["x"]);
        let m = CartierModule::principal(poly(&r, "x"));
        assert_eq!(suggest_test_element(&m, &poly(&r, "x")).unwrap().to_string(), "x^2");
        let spec = PairSpec::with_test_element(
            CartierModule::principal(poly(&r, "1")),
            poly(&r, "x"),
            q(1, 2),
            poly(&r, "x"),
        )
        .unwrap();
        assert!(verify_test_element(&spec).unwrap());
        let cubed = PairSpec { c: poly(&r, "x^3"), ..spec.clone() };
        assert!(tau(&cubed).unwrap().value.equals(&tau(&spec).unwrap().value).unwrap());
    }

    #[test]
    fn candidate_grid() {
        let c = candidates(q(0, 1), q(1, 1), 3);
        assert_eq!(c, vec![q(1, 3), q(1, 2), q(2, 3), q(1, 1)]);
    }
}
