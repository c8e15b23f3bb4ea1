//! V-filtrations assembled from test modules, their axioms, and the
//! associated graded pieces with twisted Cartier structure.

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::cartier_mod::{morphism_check, CartierModule, CartierMorphism};
use crate::error::{Error, Result};
use crate::field_poly::Polynomial;
use crate::groebner::{identity_matrix, FreeSubmodule, Matrix};
use crate::testmod::{candidates, is_f_regular, PairSpec, TauEngine};

/// Steps allowed when deciding nilpotence of a piece.
pub const NILPOTENCE_CAP: usize = 32;

/// A piecewise constant, right-continuous filtration on [lo, hi], described
/// by the values on the intervals starting at lo and at each jump.
#[derive(Clone, Debug)]
pub struct FiltrationTable {
    pub engine: TauEngine,
    pub lo: Rational64,
    pub hi: Rational64,
    pub max_denominator: i64,
    /// Interval starts with their values; the first start is `lo`.
    pub pieces: Vec<(Rational64, FreeSubmodule)>,
}

impl FiltrationTable {
    /// Tabulates tau without checking the hypotheses of the existence theorem.
    pub fn build(engine: TauEngine, lo: Rational64, hi: Rational64, max_den: i64) -> Result<Self> {
        let scan = engine.jumping_numbers(lo, hi, max_den)?;
        let mut pieces = vec![(lo, scan.base.value.clone())];
        for (t, v) in scan.jumps.iter().zip(&scan.values) {
            pieces.push((*t, v.value.clone()));
        }
        let table = FiltrationTable {
            engine,
            lo,
            hi,
            max_denominator: max_den,
            pieces,
        };
        for w in table.pieces.windows(2) {
            let t = w[1].0;
            let ll = table.engine.left_limit(t)?;
            if !ll.result.value.equals(&w[0].1)? {
                return Err(Error::Disagreement(format!("left limit at {t}")));
            }
        }
        Ok(table)
    }

    pub fn module(&self) -> &CartierModule {
        self.engine.module()
    }

    pub fn f(&self) -> &Polynomial {
        self.engine.f()
    }

    pub fn jumps(&self) -> Vec<Rational64> {
        self.pieces[1..].iter().map(|(t, _)| *t).collect()
    }

    fn check_range(&self, t: Rational64) -> Result<()> {
        if t < self.lo || t > self.hi {
            return Err(Error::OutOfRange(t.to_string()));
        }
        Ok(())
    }

    pub fn value_at(&self, t: Rational64) -> Result<&FreeSubmodule> {
        self.check_range(t)?;
        Ok(&self.pieces.iter().rev().find(|(s, _)| *s <= t).unwrap().1)
    }

    /// V^(t - epsilon); at the lower end of the range, V^lo.
    pub fn left_limit_at(&self, t: Rational64) -> Result<&FreeSubmodule> {
        self.check_range(t)?;
        Ok(&self
            .pieces
            .iter()
            .rev()
            .find(|(s, _)| *s < t)
            .unwrap_or(&self.pieces[0])
            .1)
    }

    /// Grid of t values: lo and the candidates in (lo, hi].
    pub fn grid(&self) -> Vec<Rational64> {
        let mut g = vec![self.lo];
        g.extend(candidates(self.lo, self.hi, self.max_denominator));
        g
    }

    /// Replaces the values on [a, b) by `value`; for negative controls.
    pub fn override_interval(&mut self, a: Rational64, b: Rational64, value: FreeSubmodule) -> Result<()> {
        let after = self.value_at(b.min(self.hi))?.clone();
        self.pieces.retain(|(s, _)| *s < a || *s >= b);
        self.pieces.push((a, value));
        if b <= self.hi && !self.pieces.iter().any(|(s, _)| *s == b) {
            self.pieces.push((b, after));
        }
        self.pieces.sort_by_key(|x| x.0);
        Ok(())
    }
}

/// The V-filtration of an F-regular pair, tabulated on [lo, hi].
pub fn compute_vfiltration(
    spec: &PairSpec,
    lo: Rational64,
    hi: Rational64,
    max_den: i64,
) -> Result<FiltrationTable> {
    let engine = TauEngine::new(spec)?;
    if !engine.is_regular() {
        return Err(Error::NonDegenerate);
    }
    if !is_f_regular(&spec.module, engine.test_element())? {
        return Err(Error::NotFRegular);
    }
    FiltrationTable::build(engine, lo, hi, max_den)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomCheck {
    pub passed: bool,
    pub tested: usize,
    pub failures: Vec<String>,
    /// Set when the range leaves the axiom untested.
    pub note: Option<String>,
}

impl AxiomCheck {
    fn record(&mut self, t: Rational64, ok: bool) {
        self.tested += 1;
        if !ok {
            self.failures.push(t.to_string());
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.failures.is_empty();
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    /// V^lo agrees with the values just above it.
    pub coherence: AxiomCheck,
    /// Multiplication by f is injective on each V^t.
    pub f_injective: AxiomCheck,
    /// V^t = f V^(t-1) for t > 1.
    pub periodicity: AxiomCheck,
    /// kappa(V^(tp)) = V^t.
    pub kappa: AxiomCheck,
    /// f V^t inside V^(t+1).
    pub skoda: AxiomCheck,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.coherence.passed
            && self.f_injective.passed
            && self.periodicity.passed
            && self.kappa.passed
            && self.skoda.passed
    }

    /// First failing t per axiom, by name.
    pub fn failures(&self) -> Vec<(&'static str, Vec<String>)> {
        [
            ("coherence", &self.coherence),
            ("f_injective", &self.f_injective),
            ("periodicity", &self.periodicity),
            ("kappa", &self.kappa),
            ("skoda", &self.skoda),
        ]
        .into_iter()
        .filter(|(_, c)| !c.failures.is_empty())
        .map(|(n, c)| (n, c.failures.clone()))
        .collect()
    }
}

pub fn verify_axioms(table: &FiltrationTable) -> Result<AxiomReport> {
    let m = table.module();
    let den = m.denominator();
    let f = table.f();
    let p = Rational64::from_integer(m.ring().p() as i64);
    let one = Rational64::from_integer(1);
    let grid = table.grid();
    let plus_den = |w: FreeSubmodule| w.sum(den).map(|s| s.reduced());

    let mut coherence = AxiomCheck::default();
    if let Some(&t1) = grid.get(1) {
        let ok = table.value_at(table.lo)?.equals(table.value_at(t1)?)?;
        coherence.record(t1, ok);
    }

    let mut f_injective = AxiomCheck::default();
    for (t, v) in &table.pieces {
        let k = den.colon(f)?.intersect(&v.sum(den)?)?;
        f_injective.record(*t, den.contains(&k)?);
    }

    let mut periodicity = AxiomCheck::default();
    let mut skoda = AxiomCheck::default();
    let mut kappa = AxiomCheck::default();
    for &t in &grid {
        let v = table.value_at(t)?;
        if t > one && t - one >= table.lo {
            let shifted = plus_den(table.value_at(t - one)?.scale(f))?;
            periodicity.record(t, shifted.equals(v)?);
        }
        if t + one <= table.hi {
            let fv = plus_den(v.scale(f))?;
            skoda.record(t, table.value_at(t + one)?.contains(&fv)?);
        }
        if t * p <= table.hi {
            let img = plus_den(m.kappa_image(table.value_at(t * p)?))?;
            kappa.record(t, img.equals(v)?);
        }
    }
    if periodicity.tested == 0 {
        periodicity.note = Some("range does not reach past 1".into());
    }
    if kappa.tested <= 1 {
        kappa.note = Some("range too small to compare t with tp".into());
    }
    if skoda.tested == 0 {
        skoda.note = Some("range shorter than 1".into());
    }
    Ok(AxiomReport {
        coherence: coherence.finish(),
        f_injective: f_injective.finish(),
        periodicity: periodicity.finish(),
        kappa: kappa.finish(),
        skoda: skoda.finish(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrConvention {
    /// Twist f^ceil(t (p-1)).
    A,
    /// Twist f^(floor(t (p-1)) + 1).
    B,
}

impl GrConvention {
    pub fn exponent(self, t: Rational64, p: u64) -> u64 {
        let s = t * Rational64::from_integer(p as i64 - 1);
        match self {
            GrConvention::A => s.ceil().to_integer() as u64,
            GrConvention::B => s.floor().to_integer() as u64 + 1,
        }
    }
}

/// V^(t - epsilon) / V^t with structure kappa o f^k.
#[derive(Clone, Debug)]
pub struct GrPiece {
    pub t: Rational64,
    pub twist_exponent: u64,
    pub convention: GrConvention,
    pub module: CartierModule,
}

impl GrPiece {
    pub fn is_zero(&self) -> Result<bool> {
        self.module.is_zero()
    }
}

pub fn gr_piece(table: &FiltrationTable, t: Rational64, convention: GrConvention) -> Result<GrPiece> {
    let m = table.module();
    let den = m.denominator();
    let f = table.f();
    let k = convention.exponent(t, m.ring().p());
    let num = if t == Rational64::zero() {
        table.value_at(t)?.clone()
    } else {
        table.left_limit_at(t)?.sum(den)?
    };
    let sub = table.value_at(t)?.sum(den)?;
    if !sub.contains(&num.scale(f))? {
        return Err(Error::Disagreement(format!("f does not kill Gr at t = {t}")));
    }
    let module = CartierModule::from_parts(num, sub, m.structure().times(&f.pow(k)))?;
    Ok(GrPiece {
        t,
        twist_exponent: k,
        convention,
        module,
    })
}

/// Nonzero pieces with t in [a, b]; t = 0 contributes nothing.
pub fn gr_range(
    table: &FiltrationTable,
    a: Rational64,
    b: Rational64,
    convention: GrConvention,
) -> Result<Vec<GrPiece>> {
    table.check_range(a)?;
    table.check_range(b)?;
    let mut out = Vec::new();
    for t in table.jumps() {
        if t >= a && t <= b && t > Rational64::zero() {
            let piece = gr_piece(table, t, convention)?;
            if !piece.is_zero()? {
                out.push(piece);
            }
        }
    }
    Ok(out)
}

pub fn gr_is_crystal_zero(piece: &GrPiece) -> Result<bool> {
    piece.module.is_nilpotent(NILPOTENCE_CAP)
}

fn scalar_matrix(f: &Polynomial, r: usize) -> Matrix {
    let ring = f.ring();
    let mut m = identity_matrix(ring, r);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.clone();
    }
    m
}

/// Multiplication by f maps Gr^t bijectively onto Gr^(t+1), compatibly with
/// the twisted structures.
pub fn mu_f_check(table: &FiltrationTable, t: Rational64) -> Result<bool> {
    if t <= Rational64::zero() {
        return Err(Error::InvalidInput("mu_f needs t > 0".into()));
    }
    let t1 = t + Rational64::from_integer(1);
    table.check_range(t1)?;
    let m = table.module();
    let den = m.denominator();
    let f = table.f();
    let a = gr_piece(table, t, GrConvention::A)?;
    let b = gr_piece(table, t1, GrConvention::A)?;
    let fi = scalar_matrix(f, m.rank());
    if !morphism_check(&a.module, &b.module, &fi)? {
        return Ok(false);
    }
    let image = a.module.numerator().scale(f).sum(b.module.denominator())?;
    if !image.equals(&b.module.numerator().sum(den)?)? {
        return Ok(false);
    }
    let pre = b.module.denominator().colon(f)?.intersect(a.module.numerator())?;
    a.module.denominator().contains(&pre)
}

/// kappa induces a surjection Gr^(tp) onto Gr^t.
pub fn kappa_gr_surjection_check(table: &FiltrationTable, t: Rational64) -> Result<bool> {
    let m = table.module();
    let den = m.denominator();
    let p = Rational64::from_integer(m.ring().p() as i64);
    table.check_range(t * p)?;
    let img = |w: &FreeSubmodule| -> Result<FreeSubmodule> { m.kappa_image(w).sum(den) };
    let (hi_left, hi_val) = (table.left_limit_at(t * p)?, table.value_at(t * p)?);
    let (lo_left, lo_val) = (table.left_limit_at(t)?, table.value_at(t)?);
    if !lo_val.sum(den)?.contains(&img(hi_val)?)? || !lo_left.sum(den)?.contains(&img(hi_left)?)? {
        return Ok(false);
    }
    img(hi_left)?.sum(lo_val)?.equals(&lo_left.sum(den)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum Comparison {
    Holds,
    Fails(String),
    Inapplicable(String),
}

/// For M = R^r with constant invertible twist: V^t = f^floor(t) M on the grid,
/// and the canonical projection Gr^[0,1] M -> (M/fM, kappa o f^(p-1)) is an
/// isomorphism.
pub fn compare_with_ishriek(table: &FiltrationTable) -> Result<Comparison> {
    let m = table.module();
    let f = table.f();
    let ring = m.ring();
    let r = m.rank();
    let twist = m.structure().twist();
    if !m.denominator().is_zero() || !m.numerator().is_full() {
        return Ok(Comparison::Inapplicable("module is not free".into()));
    }
    if twist.iter().flatten().any(|c| !c.is_constant()) {
        return Ok(Comparison::Inapplicable("twist is not constant".into()));
    }
    if m.structure().determinant().is_zero() {
        return Ok(Comparison::Inapplicable("twist is not invertible".into()));
    }
    if table.lo != Rational64::zero() || table.hi < Rational64::from_integer(1) {
        return Ok(Comparison::Inapplicable("table must cover [0, 1]".into()));
    }
    let full = FreeSubmodule::full(ring, r);
    for t in table.grid() {
        let expect = full.scale(&f.pow(t.floor().to_integer() as u64));
        if !table.value_at(t)?.equals(&expect)? {
            return Ok(Comparison::Fails(format!("V^{t} differs from f^floor(t) M")));
        }
    }
    let pieces = gr_range(table, Rational64::zero(), Rational64::from_integer(1), GrConvention::A)?;
    if pieces.is_empty() {
        return Ok(Comparison::Fails("Gr^[0,1] is zero".into()));
    }
    let mut source = pieces[0].module.clone();
    for piece in &pieces[1..] {
        source = source.direct_sum(&piece.module)?;
    }
    let target = hypersurface_restriction(m, f)?;
    let id = identity_matrix(ring, r);
    let proj: Matrix = (0..r)
        .map(|i| pieces.iter().flat_map(|_| id[i].clone()).collect())
        .collect();
    if !morphism_check(&source, &target, &proj)? {
        return Ok(Comparison::Fails("projection is not a Cartier morphism".into()));
    }
    let phi = CartierMorphism::new(source, target, proj)?;
    if !phi.kernel()?.is_zero()? || !phi.cokernel()?.is_zero()? {
        return Ok(Comparison::Fails("projection is not bijective".into()));
    }
    Ok(Comparison::Holds)
}

/// The map induced by `matrix` from Gr^t of the source table to Gr^(t+shift)
/// of the target table. Cartier morphisms use shift 0; multiplication by f
/// uses shift 1.
pub fn gr_of_morphism(
    matrix: &Matrix,
    source: &FiltrationTable,
    target: &FiltrationTable,
    t: Rational64,
    shift: i64,
    convention: GrConvention,
) -> Result<CartierMorphism> {
    let t1 = t + Rational64::from_integer(shift);
    let a = gr_piece(source, t, convention)?;
    let b = gr_piece(target, t1, convention)?;
    for (w, name) in [
        (a.module.numerator(), "V^(t-epsilon)"),
        (a.module.denominator(), "V^t"),
    ] {
        let bound = if name == "V^t" {
            b.module.denominator()
        } else {
            b.module.numerator()
        };
        if !bound.contains(&w.apply_matrix(matrix)?)? {
            return Err(Error::NotMorphism(format!("{name} does not map into the target piece at t = {t}")));
        }
    }
    CartierMorphism::new(a.module, b.module, matrix.clone())
}

/// (M/fM, kappa o f^(p-1)).
pub fn hypersurface_restriction(m: &CartierModule, f: &Polynomial) -> Result<CartierModule> {
    let p = m.ring().p();
    let full = m.numerator().sum(m.denominator())?;
    CartierModule::from_parts(
        full.clone(),
        full.scale(f).sum(m.denominator())?,
        m.structure().times(&f.pow(p - 1)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_polynomial;
    use crate::field_poly::Ring;
    use std::sync::Arc;

    fn q(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn table(p: u64, vars: &[&str], u: &str, f: &str, hi: i64, max_den: i64) -> FiltrationTable {
        let r = Ring::new(p, vars).unwrap();
        let spec = PairSpec::new(CartierModule::principal(poly(&r, u)), poly(&r, f), q(0, 1)).unwrap();
        compute_vfiltration(&spec, q(0, 1), q(hi, 1), max_den).unwrap()
    }

    #[test]
    fn smooth_table() {
        let t = table(3, &["x"], "1", "x", 3, 6);
        assert_eq!(t.jumps(), vec![q(1, 1), q(2, 1), q(3, 1)]);
        let rep = verify_axioms(&t).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        let g = gr_piece(&t, q(1, 1), GrConvention::A).unwrap();
        assert_eq!(g.twist_exponent, 2);
        assert!(!gr_is_crystal_zero(&g).unwrap());
        assert!(gr_piece(&t, q(1, 2), GrConvention::A).unwrap().is_zero().unwrap());
        assert!(mu_f_check(&t, q(1, 1)).unwrap());
        assert!(kappa_gr_surjection_check(&t, q(1, 1)).unwrap());
        assert_eq!(compare_with_ishriek(&t).unwrap(), Comparison::Holds);
    }

    #[test]
    fn twisted_table_and_conventions() {
        let t = table(3, &["x"], "x", "x", 2, 6);
        assert_eq!(t.jumps(), vec![q(1, 2), q(3, 2)]);
        assert!(verify_axioms(&t).unwrap().all_pass());
        let pieces = gr_range(&t, q(0, 1), q(1, 1), GrConvention::A).unwrap();
        assert_eq!(pieces.len(), 1);
        assert!(!gr_is_crystal_zero(&pieces[0]).unwrap());
        let pieces = gr_range(&t, q(0, 1), q(1, 1), GrConvention::B).unwrap();
        assert!(gr_is_crystal_zero(&pieces[0]).unwrap());
        assert!(mu_f_check(&t, q(1, 2)).unwrap());
        assert!(kappa_gr_surjection_check(&t, q(1, 2)).unwrap());
        assert!(matches!(compare_with_ishriek(&t).unwrap(), Comparison::Inapplicable(_)));
    }

    #[test]
    fn not_f_regular_refused() {
        let r = Ring::new(3, &["x"]).unwrap();
        let spec = PairSpec::with_test_element(
            CartierModule::principal(poly(&r, "x^2")),
            poly(&r, "x"),
            q(0, 1),
            poly(&r, "x"),
        )
        .unwrap();
        assert!(matches!(
            compute_vfiltration(&spec, q(0, 1), q(1, 1), 6),
            Err(Error::NotFRegular)
        ));
    }

    #[test]
    fn corrupted_table_pinpointed() {
        let mut t = table(3, &["x"], "1", "x", 3, 6);
        let full = FreeSubmodule::full(t.module().ring(), 1);
        t.override_interval(q(1, 1), q(2, 1), full).unwrap();
        let rep = verify_axioms(&t).unwrap();
        assert!(rep.kappa.failures.contains(&"1".to_string()));
        assert!(!rep.periodicity.passed);
    }

    #[test]
    fn identity_induces_identity() {
        let t = table(3, &["x"], "1", "x", 2, 6);
        let id = identity_matrix(t.module().ring(), 1);
        let g = gr_of_morphism(&id, &t, &t, q(1, 1), 0, GrConvention::A).unwrap();
        assert!(g.nil_isomorphism_check(8).unwrap().is_nil_isomorphism());
        let fx = scalar_matrix(t.f(), 1);
        assert!(gr_of_morphism(&fx, &t, &t, q(1, 1), 1, GrConvention::A).is_ok());
    }
}
