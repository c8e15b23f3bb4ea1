//! Principal Cartier modules: kappa-images, F-purity, nilpotence,
//! morphisms, the graph embedding, localization and finite free extensions.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field_poly::{Monomial, Polynomial, Ring};
use crate::frobenius::{check_level, root_unchecked};
use crate::groebner::{
    determinant, identity_matrix, mat_vec, zero_vector, FreeSubmodule, Matrix,
    QuotientPresentation,
};
use crate::linalg;

pub const UNDERLINE_CAP: usize = 32;

/// All exponent vectors in [0, p-1]^n.
pub fn digit_monomials(n: usize, p: u64) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    for i in 0..n {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for m in &out {
            for k in 0..p as u32 {
                let mut m2 = m.clone();
                m2.0[i] = k;
                next.push(m2);
            }
        }
        out = next;
    }
    out
}

/// kappa(v) = C(U v) with C the trace applied entrywise.
#[derive(Clone, Debug)]
pub struct CartierStructure {
    twist: Matrix,
}

impl CartierStructure {
    pub fn new(twist: Matrix) -> Result<Self> {
        let r = twist.len();
        if r == 0 {
            return Err(Error::InvalidInput("empty twist matrix".into()));
        }
        for row in &twist {
            if row.len() != r {
                return Err(Error::RankMismatch {
                    expected: r,
                    found: row.len(),
                });
            }
        }
        Ok(CartierStructure { twist })
    }

    pub fn scalar(u: Polynomial) -> Self {
        CartierStructure {
            twist: vec![vec![u]],
        }
    }

    pub fn trace(ring: &Arc<Ring>, r: usize) -> Self {
        CartierStructure {
            twist: identity_matrix(ring, r),
        }
    }

    pub fn rank(&self) -> usize {
        self.twist.len()
    }

    pub fn twist(&self) -> &Matrix {
        &self.twist
    }

    pub fn determinant(&self) -> Polynomial {
        determinant(&self.twist)
    }

    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        mat_vec(&self.twist, v)
            .iter()
            .map(|c| c.cartier_trace(1))
            .collect()
    }

    /// The structure `kappa o f`.
    pub fn times(&self, f: &Polynomial) -> CartierStructure {
        CartierStructure {
            twist: self
                .twist
                .iter()
                .map(|row| row.iter().map(|c| c * f).collect())
                .collect(),
        }
    }

    /// R-span of kappa(W): the Frobenius root of U W.
    pub fn image(&self, w: &FreeSubmodule) -> FreeSubmodule {
        let uw = w.apply_matrix(&self.twist).expect("twist matches rank");
        root_unchecked(&uw, 1)
    }

    pub fn map_to(&self, target: &Arc<Ring>) -> Result<CartierStructure> {
        let mut twist = Vec::new();
        for row in &self.twist {
            let mut r = Vec::new();
            for c in row {
                r.push(c.map_to(target)?);
            }
            twist.push(r);
        }
        Ok(CartierStructure { twist })
    }
}

/// A coherent Cartier module W/N inside R^r with structure kappa.
#[derive(Clone, Debug)]
pub struct CartierModule {
    pres: QuotientPresentation,
    structure: CartierStructure,
}

#[derive(Clone, Debug)]
pub struct NilKernel {
    pub generators: FreeSubmodule,
    pub dimension: usize,
    pub complete: bool,
}

impl CartierModule {
    pub fn new(pres: QuotientPresentation, structure: CartierStructure) -> Result<Self> {
        if structure.rank() != pres.rank() {
            return Err(Error::RankMismatch {
                expected: pres.rank(),
                found: structure.rank(),
            });
        }
        let m = CartierModule { pres, structure };
        let num = m.numerator();
        if !num.contains(&m.kappa_image(num))? {
            return Err(Error::NotCartierStable("numerator".into()));
        }
        let den = m.denominator();
        if !den.contains(&m.kappa_image(den))? {
            return Err(Error::NotCartierStable("denominator".into()));
        }
        Ok(m)
    }

    pub fn from_parts(
        numerator: FreeSubmodule,
        denominator: FreeSubmodule,
        structure: CartierStructure,
    ) -> Result<Self> {
        Self::new(QuotientPresentation::new(numerator, denominator)?, structure)
    }

    /// R^r with kappa = C o U.
    pub fn free(ring: &Arc<Ring>, twist: Matrix) -> Result<Self> {
        let r = twist.len();
        Self::new(QuotientPresentation::free(ring, r), CartierStructure::new(twist)?)
    }

    /// R with kappa = C o u.
    pub fn principal(u: Polynomial) -> Self {
        let ring = u.ring().clone();
        Self::new(QuotientPresentation::free(&ring, 1), CartierStructure::scalar(u))
            .expect("free modules are Cartier stable")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.pres.ring()
    }

    pub fn rank(&self) -> usize {
        self.pres.rank()
    }

    pub fn presentation(&self) -> &QuotientPresentation {
        &self.pres
    }

    pub fn numerator(&self) -> &FreeSubmodule {
        &self.pres.numerator
    }

    pub fn denominator(&self) -> &FreeSubmodule {
        &self.pres.denominator
    }

    pub fn structure(&self) -> &CartierStructure {
        &self.structure
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.pres.is_zero()
    }

    /// kappa(v), reduced modulo the denominator.
    pub fn kappa(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        self.pres.reduce(&self.structure.apply(v))
    }

    pub fn kappa_apply(&self, v: &[Polynomial], e: u32) -> Result<Vec<Polynomial>> {
        check_level(e)?;
        let mut cur = self.pres.reduce(v)?;
        for _ in 0..e {
            cur = self.kappa(&cur)?;
        }
        Ok(cur)
    }

    /// Submodule generated by kappa(x^a w) over generators w and digits a.
    pub fn kappa_image(&self, w: &FreeSubmodule) -> FreeSubmodule {
        self.structure.image(w)
    }

    fn image_mod(&self, w: &FreeSubmodule) -> FreeSubmodule {
        self.kappa_image(w)
            .sum(self.denominator())
            .unwrap()
            .reduced()
    }

    /// The F-pure part: the stable value of iterated images, with the
    /// number of steps taken to reach it. Contains the denominator.
    pub fn underline(&self) -> Result<(FreeSubmodule, usize)> {
        let mut cur = self.numerator().sum(self.denominator())?.reduced();
        for step in 0..UNDERLINE_CAP {
            let next = self.image_mod(&cur);
            if next.equals(&cur)? {
                return Ok((cur, step));
            }
            cur = next;
        }
        Err(Error::StabilizationCapExceeded {
            steps: UNDERLINE_CAP,
        })
    }

    pub fn underline_module(&self) -> Result<CartierModule> {
        let (u, _) = self.underline()?;
        self.submodule(&u)
    }

    pub fn is_f_pure(&self) -> Result<bool> {
        Ok(self.underline()?.1 == 0)
    }

    /// Decided by iterating images until zero or a nonzero fixed point.
    pub fn is_nilpotent(&self, e_max: usize) -> Result<bool> {
        let den = self.denominator();
        let mut cur = self.numerator().clone();
        for _ in 0..=e_max {
            if den.contains(&cur)? {
                return Ok(true);
            }
            let next = self.image_mod(&cur);
            if next.equals(&cur.sum(den)?)? {
                return Ok(false);
            }
            cur = next;
        }
        Err(Error::StabilizationCapExceeded { steps: e_max })
    }

    /// Number of steps after which the structure map vanishes, if nilpotent.
    pub fn nilpotence_index(&self, e_max: usize) -> Result<Option<usize>> {
        let den = self.denominator();
        let mut cur = self.numerator().clone();
        for step in 0..=e_max {
            if den.contains(&cur)? {
                return Ok(Some(step));
            }
            let next = self.image_mod(&cur);
            if next.equals(&cur.sum(den)?)? {
                return Ok(None);
            }
            cur = next;
        }
        Err(Error::StabilizationCapExceeded { steps: e_max })
    }

    /// Representatives of degree at most `bound` that generate nilpotent
    /// submodules, found by F_p-linear algebra. `complete` holds when the
    /// module is finite dimensional and the bound reaches its top degree.
    pub fn nilpotent_kernel_bounded(&self, bound: u64) -> Result<NilKernel> {
        let ring = self.ring().clone();
        let field = *ring.field();
        let n = ring.nvars();
        let r = self.rank();
        let den = self.denominator();
        let wn = self.numerator().sum(den)?.reduced();

        let mut span: Vec<Vec<Polynomial>> = Vec::new();
        for g in wn.generators() {
            let gdeg = g.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
            if gdeg > bound {
                continue;
            }
            for m in monomials_up_to(n, bound - gdeg) {
                let v: Vec<Polynomial> = g.iter().map(|c| c.mul_monomial(&m, 1)).collect();
                span.push(den.normal_form(&v)?);
            }
        }

        let digits = digit_monomials(n, ring.p());
        let mut coords = Coords::default();
        for v in &span {
            coords.register(v);
        }
        let mut rows: Vec<Vec<u64>> = span.iter().map(|v| coords.vector(v)).collect();
        let mut images: Vec<Vec<Vec<Polynomial>>> = Vec::new();
        linalg::rref(&field, &mut rows);
        let basis: Vec<Vec<Polynomial>> = rows.iter().map(|row| coords.poly(&ring, r, row)).collect();
        for b in &basis {
            let mut imgs = Vec::with_capacity(digits.len());
            for a in &digits {
                let xa: Vec<Polynomial> = b.iter().map(|c| c.mul_monomial(a, 1)).collect();
                let img = self.kappa(&xa)?;
                coords.register(&img);
                imgs.push(img);
            }
            images.push(imgs);
        }
        let width = coords.len();
        let basis_rows: Vec<Vec<u64>> = basis.iter().map(|b| coords.vector_w(b, width)).collect();
        let image_rows: Vec<Vec<Vec<u64>>> = images
            .iter()
            .map(|imgs| imgs.iter().map(|v| coords.vector_w(v, width)).collect())
            .collect();

        // Z_{e+1} = {v in span : kappa(x^a v) in Z_e for all a}
        let mut z: Vec<Vec<u64>> = Vec::new();
        let mut z_dim = usize::MAX;
        loop {
            let mut zr = z.clone();
            let piv = linalg::rref(&field, &mut zr);
            let mat: Vec<Vec<u64>> = image_rows
                .iter()
                .map(|imgs| {
                    let mut row = Vec::with_capacity(width * imgs.len());
                    for v in imgs {
                        let mut w = v.clone();
                        linalg::reduce_against(&field, &zr, &piv, &mut w);
                        row.extend(w);
                    }
                    row
                })
                .collect();
            let ker = linalg::left_kernel(&field, &mat);
            let next: Vec<Vec<u64>> = ker
                .iter()
                .map(|lam| {
                    let mut acc = vec![0u64; width];
                    for (l, b) in lam.iter().zip(&basis_rows) {
                        if *l != 0 {
                            for (x, y) in acc.iter_mut().zip(b) {
                                *x = field.add(*x, field.mul(*l, *y));
                            }
                        }
                    }
                    acc
                })
                .collect();
            if next.len() == z_dim {
                z = next;
                break;
            }
            z_dim = next.len();
            z = next;
        }
        let gens: Vec<Vec<Polynomial>> = z.iter().map(|row| coords.poly(&ring, r, row)).collect();
        let complete = den
            .quotient_top_degree()
            .is_some_and(|top| top <= bound);
        Ok(NilKernel {
            generators: FreeSubmodule::new(&ring, r, gens)?.reduced(),
            dimension: z_dim,
            complete,
        })
    }

    /// Same structure on the submodule W + N.
    pub fn submodule(&self, w: &FreeSubmodule) -> Result<CartierModule> {
        let num = w.sum(self.denominator())?;
        CartierModule::from_parts(num, self.denominator().clone(), self.structure.clone())
    }

    /// Same structure on the quotient by W.
    pub fn quotient_by(&self, w: &FreeSubmodule) -> Result<CartierModule> {
        let den = w.sum(self.denominator())?;
        CartierModule::from_parts(self.numerator().clone(), den, self.structure.clone())
    }

    /// Same presentation with structure `kappa o f`.
    pub fn twisted(&self, f: &Polynomial) -> Result<CartierModule> {
        CartierModule::new(self.pres.clone(), self.structure.times(f))
    }

    pub fn direct_sum(&self, other: &CartierModule) -> Result<CartierModule> {
        let ring = self.ring().clone();
        let (r1, r2) = (self.rank(), other.rank());
        let pad = |v: &Vec<Polynomial>, first: bool| -> Vec<Polynomial> {
            if first {
                let mut o = v.clone();
                o.extend(zero_vector(&ring, r2));
                o
            } else {
                let mut o = zero_vector(&ring, r1);
                o.extend(v.iter().cloned());
                o
            }
        };
        let num: Vec<_> = self
            .numerator()
            .generators()
            .iter()
            .map(|v| pad(v, true))
            .chain(other.numerator().generators().iter().map(|v| pad(v, false)))
            .collect();
        let den: Vec<_> = self
            .denominator()
            .generators()
            .iter()
            .map(|v| pad(v, true))
            .chain(other.denominator().generators().iter().map(|v| pad(v, false)))
            .collect();
        let mut twist = vec![vec![Polynomial::zero(&ring); r1 + r2]; r1 + r2];
        for i in 0..r1 {
            for j in 0..r1 {
                twist[i][j] = self.structure.twist()[i][j].clone();
            }
        }
        for i in 0..r2 {
            for j in 0..r2 {
                twist[r1 + i][r1 + j] = other.structure.twist()[i][j].clone();
            }
        }
        CartierModule::from_parts(
            FreeSubmodule::new(&ring, r1 + r2, num)?,
            FreeSubmodule::new(&ring, r1 + r2, den)?,
            CartierStructure::new(twist)?,
        )
    }

    /// The module over R[s] supported on the graph s = f. Returns the module
    /// and the index of s.
    pub fn graph_embed(&self, f: &Polynomial, name: &str) -> Result<(CartierModule, usize)> {
        let ring = self.ring();
        if ring.var_index(name).is_some() {
            return Err(Error::InvalidInput(format!("variable {name} already in use")));
        }
        let big = ring.extend(name)?;
        let s_idx = big.nvars() - 1;
        let s = Polynomial::var(&big, s_idx);
        let h = &s - &f.map_to(&big)?;
        let num = self.numerator().map_to(&big)?;
        let den = self.denominator().map_to(&big)?.sum(&num.scale(&h))?;
        let structure = self.structure.map_to(&big)?.times(&h.pow(ring.p() - 1));
        let m = CartierModule::from_parts(num, den, structure)?;
        Ok((m, s_idx))
    }

    /// Presentation saturated at h; the structure is unchanged.
    pub fn localize(&self, h: &Polynomial) -> Result<CartierModule> {
        if h.is_zero() {
            return Err(Error::InvalidInput("localization at 0".into()));
        }
        let num = self.numerator().saturate(h)?;
        let den = self.denominator().saturate(h)?;
        CartierModule::from_parts(num, den, self.structure.clone())
    }
}

fn monomials_up_to(n: usize, d: u64) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    for i in 0..n {
        let mut next = Vec::new();
        for m in &out {
            let used = m.degree();
            for k in 0..=(d - used) {
                let mut m2 = m.clone();
                m2.0[i] = k as u32;
                next.push(m2);
            }
        }
        out = next;
    }
    out
}

#[derive(Default)]
struct Coords {
    index: HashMap<(usize, Monomial), usize>,
    keys: Vec<(usize, Monomial)>,
}

impl Coords {
    fn register(&mut self, v: &[Polynomial]) {
        for (pos, c) in v.iter().enumerate() {
            for (m, _) in c.terms() {
                let k = (pos, m.clone());
                if !self.index.contains_key(&k) {
                    self.index.insert(k.clone(), self.keys.len());
                    self.keys.push(k);
                }
            }
        }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    fn vector(&self, v: &[Polynomial]) -> Vec<u64> {
        self.vector_w(v, self.len())
    }

    fn vector_w(&self, v: &[Polynomial], width: usize) -> Vec<u64> {
        let mut out = vec![0u64; width];
        for (pos, c) in v.iter().enumerate() {
            for (m, coef) in c.terms() {
                out[self.index[&(pos, m.clone())]] = coef;
            }
        }
        out
    }

    fn poly(&self, ring: &Arc<Ring>, r: usize, row: &[u64]) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, u64)>> = vec![Vec::new(); r];
        for (i, &c) in row.iter().enumerate() {
            if c != 0 {
                let (pos, m) = &self.keys[i];
                parts[*pos].push((m.clone(), c));
            }
        }
        parts
            .into_iter()
            .map(|ts| Polynomial::from_terms(ring, ts))
            .collect()
    }
}

/// A matrix between Cartier modules, with target-rank rows.
#[derive(Clone, Debug)]
pub struct CartierMorphism {
    pub source: CartierModule,
    pub target: CartierModule,
    pub matrix: Matrix,
}

/// Checks shape, compatibility with presentations, and intertwining on
/// generators times all digit monomials.
pub fn morphism_check(source: &CartierModule, target: &CartierModule, matrix: &Matrix) -> Result<bool> {
    let (rs, rt) = (source.rank(), target.rank());
    if matrix.len() != rt || matrix.iter().any(|row| row.len() != rs) {
        return Err(Error::RankMismatch {
            expected: rt,
            found: matrix.len(),
        });
    }
    let tnum = target.numerator().sum(target.denominator())?;
    if !tnum.contains(&source.numerator().apply_matrix(matrix)?)? {
        return Ok(false);
    }
    if !target
        .denominator()
        .contains(&source.denominator().apply_matrix(matrix)?)?
    {
        return Ok(false);
    }
    let ring = source.ring();
    for w in source.numerator().generators() {
        for a in digit_monomials(ring.nvars(), ring.p()) {
            let xa: Vec<Polynomial> = w.iter().map(|c| c.mul_monomial(&a, 1)).collect();
            let lhs = mat_vec(matrix, &source.structure().apply(&xa));
            let rhs = target.structure().apply(&mat_vec(matrix, &xa));
            let diff: Vec<Polynomial> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            if !target.denominator().contains_vector(&diff)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilIsoReport {
    pub kernel_nilpotent: bool,
    pub cokernel_nilpotent: bool,
}

impl NilIsoReport {
    pub fn is_nil_isomorphism(&self) -> bool {
        self.kernel_nilpotent && self.cokernel_nilpotent
    }
}

impl CartierMorphism {
    pub fn new(source: CartierModule, target: CartierModule, matrix: Matrix) -> Result<Self> {
        if !morphism_check(&source, &target, &matrix)? {
            return Err(Error::NotMorphism("intertwining or presentation check failed".into()));
        }
        Ok(CartierMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(m: &CartierModule) -> Self {
        CartierMorphism {
            source: m.clone(),
            target: m.clone(),
            matrix: identity_matrix(m.ring(), m.rank()),
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &CartierMorphism) -> Result<CartierMorphism> {
        let matrix = crate::groebner::mat_mul(&self.matrix, &other.matrix);
        CartierMorphism::new(other.source.clone(), self.target.clone(), matrix)
    }

    pub fn image(&self) -> Result<FreeSubmodule> {
        self.source.numerator().apply_matrix(&self.matrix)
    }

    pub fn cokernel(&self) -> Result<CartierModule> {
        self.target.quotient_by(&self.image()?)
    }

    pub fn kernel(&self) -> Result<CartierModule> {
        let pre = FreeSubmodule::preimage(
            &self.matrix,
            self.source.rank(),
            self.target.denominator(),
        )?;
        let k = pre.intersect(&self.source.numerator().sum(self.source.denominator())?)?;
        self.source.submodule(&k)
    }

    pub fn nil_isomorphism_check(&self, e_max: usize) -> Result<NilIsoReport> {
        Ok(NilIsoReport {
            kernel_nilpotent: self.kernel()?.is_nilpotent(e_max)?,
            cokernel_nilpotent: self.cokernel()?.is_nilpotent(e_max)?,
        })
    }
}

/// S = R[y]/(g) for monic g of degree d in y.
#[derive(Clone, Debug)]
pub struct FiniteExtension {
    base: Arc<Ring>,
    ring: Arc<Ring>,
    y: usize,
    g: Polynomial,
    d: usize,
    tail: Vec<Polynomial>,
    companion: Matrix,
    frobenius_matrix: Matrix,
    traces: Vec<Polynomial>,
    discriminant: Polynomial,
}

impl FiniteExtension {
    /// `g` lives in `base` extended by the variable `y_name`.
    pub fn new(base: &Arc<Ring>, y_name: &str, g: &Polynomial) -> Result<Self> {
        let ring = base.extend(y_name)?;
        let g = g.map_to(&ring)?;
        let y = ring.nvars() - 1;
        let coeffs = g.coefficients_in(y, base)?;
        let Some((&d, lead)) = coeffs.iter().next_back() else {
            return Err(Error::NonMonic(g.to_string()));
        };
        if d == 0 || lead.constant_value() != Some(1) {
            return Err(Error::NonMonic(g.to_string()));
        }
        let d = d as usize;
        let tail: Vec<Polynomial> = (0..d)
            .map(|i| {
                coeffs
                    .get(&(i as u32))
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(base))
            })
            .collect();
        let mut ext = FiniteExtension {
            base: base.clone(),
            ring,
            y,
            g,
            d,
            tail,
            companion: Vec::new(),
            frobenius_matrix: Vec::new(),
            traces: Vec::new(),
            discriminant: Polynomial::zero(base),
        };
        let p = base.p() as u32;
        ext.companion = (0..d)
            .map(|i| {
                
                ext.power_coords(1 + i as u32)
            })
            .collect::<Vec<_>>();
        // companion[i] holds coordinates of y * y^i; transpose to rows.
        let cols = ext.companion.clone();
        ext.companion = (0..d)
            .map(|row| (0..d).map(|c| cols[c][row].clone()).collect())
            .collect();
        ext.frobenius_matrix = (0..d).map(|j| ext.power_coords(j as u32 * p)).collect();
        ext.traces = (0..d)
            .map(|j| {
                let mut acc = Polynomial::zero(base);
                for i in 0..d {
                    acc = &acc + &ext.power_coords((i + j) as u32)[i];
                }
                acc
            })
            .collect();
        let form: Matrix = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| ext.trace_of(&ext.power_coords((i + j) as u32)))
                    .collect()
            })
            .collect();
        ext.discriminant = determinant(&form);
        Ok(ext)
    }

    pub fn base(&self) -> &Arc<Ring> {
        &self.base
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Multiplication by y in the basis 1, y, ..., y^(d-1).
    pub fn companion(&self) -> &Matrix {
        &self.companion
    }

    /// Row j: coordinates of y^(jp) mod g.
    pub fn frobenius_matrix(&self) -> &Matrix {
        &self.frobenius_matrix
    }

    /// Tr(y^j) for j < d.
    pub fn trace_values(&self) -> &[Polynomial] {
        &self.traces
    }

    /// Determinant of the trace form.
    pub fn discriminant(&self) -> &Polynomial {
        &self.discriminant
    }

    pub fn is_etale(&self) -> bool {
        !self.discriminant.is_zero()
    }

    fn power_coords(&self, k: u32) -> Vec<Polynomial> {
        self.reduce(&Polynomial::var_pow(&self.ring, self.y, k))
            .expect("powers of y lie in R[y]")
    }

    /// Coordinates of h mod g in the basis 1, ..., y^(d-1).
    pub fn reduce(&self, h: &Polynomial) -> Result<Vec<Polynomial>> {
        let coeffs = h.map_to(&self.ring)?.coefficients_in(self.y, &self.base)?;
        let top = coeffs.keys().next_back().copied().unwrap_or(0) as usize;
        let mut c: Vec<Polynomial> = (0..=top.max(self.d))
            .map(|k| {
                coeffs
                    .get(&(k as u32))
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(&self.base))
            })
            .collect();
        for k in (self.d..c.len()).rev() {
            if c[k].is_zero() {
                continue;
            }
            let lead = c[k].clone();
            for i in 0..self.d {
                if !self.tail[i].is_zero() {
                    c[k - self.d + i] = &c[k - self.d + i] - &(&lead * &self.tail[i]);
                }
            }
            c[k] = Polynomial::zero(&self.base);
        }
        c.truncate(self.d);
        Ok(c)
    }

    pub fn from_coords(&self, c: &[Polynomial]) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(&self.ring);
        for (j, cj) in c.iter().enumerate() {
            acc = &acc + &(&cj.map_to(&self.ring)? * &Polynomial::var_pow(&self.ring, self.y, j as u32));
        }
        Ok(acc)
    }

    pub fn trace_of(&self, coords: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero(&self.base);
        for (c, t) in coords.iter().zip(&self.traces) {
            acc = &acc + &(c * t);
        }
        acc
    }

    /// Trace of an element of R[y], taken modulo g.
    pub fn trace(&self, h: &Polynomial) -> Result<Polynomial> {
        Ok(self.trace_of(&self.reduce(h)?))
    }

    /// Coordinates of a vector of R[y]^r in R^(d r), index i*d + j for y^j e_i.
    pub fn vector_coords(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let mut out = Vec::with_capacity(v.len() * self.d);
        for c in v {
            out.extend(self.reduce(c)?);
        }
        Ok(out)
    }

    /// f_* of a submodule of R[y]^r: the R-span of y^j w.
    pub fn push_submodule(&self, w: &FreeSubmodule) -> Result<FreeSubmodule> {
        let r = w.rank();
        let mut gens = Vec::new();
        for g in w.generators() {
            for j in 0..self.d {
                let yj = Polynomial::var_pow(&self.ring, self.y, j as u32);
                let v: Vec<Polynomial> = g.iter().map(|c| &yj * c).collect();
                gens.push(self.vector_coords(&v)?);
            }
        }
        FreeSubmodule::new(&self.base, r * self.d, gens)
    }

    fn check_annihilates(&self, m: &CartierModule) -> Result<()> {
        let r = m.rank();
        for i in 0..r {
            let mut e = zero_vector(&self.ring, r);
            e[i] = self.g.clone();
            if !m.denominator().contains_vector(&e)? {
                return Err(Error::InvalidInput(
                    "presentation denominator must contain g times the ambient module".into(),
                ));
            }
        }
        Ok(())
    }
}

/// f_* M for M presented over R[y] with g R[y]^r inside the denominator.
pub fn pushforward_finite(ext: &FiniteExtension, m: &CartierModule) -> Result<CartierModule> {
    if !Arc::ptr_eq(m.ring(), ext.ring()) && **m.ring() != **ext.ring() {
        return Err(Error::RingMismatch);
    }
    ext.check_annihilates(m)?;
    let r = m.rank();
    let d = ext.d;
    let p = ext.base.p();
    let base = &ext.base;
    // Coordinates of y^c mod g for the exponents produced by C_y.
    let mut rho: HashMap<u32, Vec<Polynomial>> = HashMap::new();
    let mut twist = vec![vec![Polynomial::zero(base); d * r]; d * r];
    for i in 0..r {
        for j in 0..d {
            let col = i * d + j;
            let yj = Polynomial::var_pow(&ext.ring, ext.y, j as u32);
            for ip in 0..r {
                let h = &m.structure().twist()[ip][i] * &yj;
                for (b, hb) in h.coefficients_in(ext.y, base)? {
                    if !(b as u64 + 1).is_multiple_of(p) {
                        continue;
                    }
                    let c = ((b as u64 + 1) / p - 1) as u32;
                    let coords = rho
                        .entry(c)
                        .or_insert_with(|| ext.power_coords(c))
                        .clone();
                    for (l, rl) in coords.iter().enumerate() {
                        if rl.is_zero() {
                            continue;
                        }
                        let row = ip * d + l;
                        twist[row][col] = &twist[row][col] + &(&rl.frobenius(1) * &hb);
                    }
                }
            }
        }
    }
    let num = ext.push_submodule(m.numerator())?;
    let den = ext.push_submodule(m.denominator())?;
    let pushed = CartierModule::from_parts(num, den, CartierStructure::new(twist)?)?;
    // Agreement with the original structure on generators.
    for w in m.numerator().generators() {
        let lhs = ext.vector_coords(&m.structure().apply(w))?;
        let rhs = pushed.structure().apply(&ext.vector_coords(w)?);
        let diff: Vec<Polynomial> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
        if !pushed.denominator().contains_vector(&diff)? {
            return Err(Error::Disagreement("transported structure".into()));
        }
    }
    Ok(pushed)
}

/// f^! M = Hom_R(S, M), index j*r + i for the value of phi(y^j) in slot i.
pub fn shriek_finite(ext: &FiniteExtension, m: &CartierModule) -> Result<CartierModule> {
    if !Arc::ptr_eq(m.ring(), ext.base()) && **m.ring() != **ext.base() {
        return Err(Error::RingMismatch);
    }
    let r = m.rank();
    let d = ext.d;
    let base = &ext.base;
    let blocks = |s: &FreeSubmodule| -> Result<FreeSubmodule> {
        let mut gens = Vec::new();
        for g in s.generators() {
            for j in 0..d {
                let mut v = zero_vector(base, d * r);
                for i in 0..r {
                    v[j * r + i] = g[i].clone();
                }
                gens.push(v);
            }
        }
        FreeSubmodule::new(base, d * r, gens)
    };
    let u = m.structure().twist();
    let mut twist = vec![vec![Polynomial::zero(base); d * r]; d * r];
    for j in 0..d {
        for l in 0..d {
            let mf = &ext.frobenius_matrix[j][l];
            if mf.is_zero() {
                continue;
            }
            for i in 0..r {
                for k in 0..r {
                    twist[j * r + i][l * r + k] = &u[i][k] * mf;
                }
            }
        }
    }
    CartierModule::from_parts(
        blocks(m.numerator())?,
        blocks(m.denominator())?,
        CartierStructure::new(twist)?,
    )
}

/// The pullback M (x) S for M = R^r with kappa = C o U, with the structure
/// C o (g^(p-1) U) on R[y]^r / g. Requires g' to be a nonzero constant
/// modulo g, so that this structure is compatible with the trace.
pub fn etale_pullback(ext: &FiniteExtension, m: &CartierModule) -> Result<CartierModule> {
    let dg = derivative(&ext.g, ext.y);
    let red = ext.reduce(&dg)?;
    let unit = red.iter().skip(1).all(|c| c.is_zero())
        && red[0].constant_value().is_some_and(|c| c != 0);
    if !unit {
        return Err(Error::InvalidInput(
            "derivative of g is not a unit constant in S".into(),
        ));
    }
    let r = m.rank();
    let num = m.numerator().map_to(ext.ring())?;
    let mut den_gens = m.denominator().map_to(ext.ring())?.generators().to_vec();
    for i in 0..r {
        let mut e = zero_vector(ext.ring(), r);
        e[i] = ext.g.clone();
        den_gens.push(e);
    }
    let num = num.sum(&FreeSubmodule::new(ext.ring(), r, den_gens.clone())?)?;
    let den = FreeSubmodule::new(ext.ring(), r, den_gens)?;
    let p = ext.base.p();
    let st = m.structure().map_to(ext.ring())?.times(&ext.g.pow(p - 1));
    CartierModule::from_parts(num, den, st)
}

pub fn derivative(f: &Polynomial, var: usize) -> Polynomial {
    let ring = f.ring();
    Polynomial::from_terms(
        ring,
        f.terms().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut m2 = m.clone();
            let k = m2.0[var];
            m2.0[var] = k - 1;
            (m2, c * (k as u64 % ring.p()))
        }),
    )
}

/// R-linear trace form on the y-basis.
pub fn trace_map(ext: &FiniteExtension) -> Vec<Polynomial> {
    ext.trace_values().to_vec()
}

/// Compares Tr(kappa'(s)) with kappa(Tr(s)) on sample elements of S, for M = R
/// with kappa = C o u.
pub fn trace_kappa_commute_check(
    ext: &FiniteExtension,
    m: &CartierModule,
    samples: &[Polynomial],
) -> Result<bool> {
    if m.rank() != 1 {
        return Err(Error::InvalidInput("rank-one modules only".into()));
    }
    let pulled = etale_pullback(ext, m)?;
    for s in samples {
        let s = s.map_to(ext.ring())?;
        let lhs = ext.trace(&pulled.structure().apply(std::slice::from_ref(&s))[0])?;
        let rhs = m.structure().apply(&[ext.trace(&s)?])[0].clone();
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_polynomial;

    fn ring(p: u64, v: &[&str]) -> Arc<Ring> {
        Ring::new(p, v).unwrap()
    }

    fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> FreeSubmodule {
        FreeSubmodule::ideal(r, gens.iter().map(|g| poly(r, g)).collect()).unwrap()
    }

    #[test]
    fn kappa_examples() {
        let r = ring(3, &["x"]);
        let m = CartierModule::principal(poly(&r, "x^2"));
        assert_eq!(m.kappa(&[poly(&r, "1")]).unwrap()[0].to_string(), "1");
        let m = CartierModule::principal(poly(&r, "x^3"));
        assert!(m.kappa(&[poly(&r, "1")]).unwrap()[0].is_zero());
        assert_eq!(m.kappa(&[poly(&r, "x^2")]).unwrap()[0].to_string(), "x");
        assert!(m
            .kappa_image(m.numerator())
            .equals(&ideal(&r, &["x"]))
            .unwrap());
        let z = CartierModule::principal(poly(&r, "0"));
        assert!(z.kappa_image(z.numerator()).is_zero());
    }

    #[test]
    fn underline_examples() {
        let r = ring(3, &["x"]);
        let (u, k) = CartierModule::principal(poly(&r, "x^2")).underline().unwrap();
        assert!(u.is_full());
        assert_eq!(k, 0);
        let (u, k) = CartierModule::principal(poly(&r, "x^3")).underline().unwrap();
        assert!(u.equals(&ideal(&r, &["x"])).unwrap());
        assert_eq!(k, 1);
        assert!(CartierModule::principal(poly(&r, "x")).is_f_pure().unwrap());
    }

    #[test]
    fn nilpotence_examples() {
        let r = ring(3, &["x"]);
        let m = CartierModule::from_parts(
            ideal(&r, &["1"]),
            ideal(&r, &["x"]),
            CartierStructure::scalar(poly(&r, "x^3")),
        )
        .unwrap();
        assert!(m.is_nilpotent(8).unwrap());
        let c = CartierModule::principal(poly(&r, "1"));
        assert!(c.is_f_pure().unwrap());
        assert!(!c.is_nilpotent(8).unwrap());
        let q = CartierModule::from_parts(
            ideal(&r, &["x"]),
            ideal(&r, &["x^2"]),
            CartierStructure::scalar(poly(&r, "x^6")),
        )
        .unwrap();
        assert!(q.is_nilpotent(8).unwrap());
    }

    #[test]
    fn nilpotent_kernel_examples() {
        let r = ring(3, &["x"]);
        let c = CartierModule::principal(poly(&r, "1"));
        assert!(c.nilpotent_kernel_bounded(6).unwrap().generators.is_zero());
        let art = CartierModule::from_parts(
            ideal(&r, &["1"]),
            ideal(&r, &["x^2"]),
            CartierStructure::scalar(poly(&r, "x^6")),
        )
        .unwrap();
        let k = art.nilpotent_kernel_bounded(3).unwrap();
        assert!(k.complete);
        assert!(k.generators.is_full());
        let r0 = ring(3, &[]);
        let m = CartierModule::free(
            &r0,
            vec![
                vec![poly(&r0, "1"), poly(&r0, "0")],
                vec![poly(&r0, "0"), poly(&r0, "0")],
            ],
        )
        .unwrap();
        let k = m.nilpotent_kernel_bounded(0).unwrap();
        assert!(k.complete);
        let second = FreeSubmodule::new(&r0, 2, vec![vec![poly(&r0, "0"), poly(&r0, "1")]]).unwrap();
        assert!(k.generators.equals(&second).unwrap());
    }

    #[test]
    fn morphism_examples() {
        let r = ring(3, &["x"]);
        let m = CartierModule::principal(poly(&r, "x^3"));
        let id = CartierMorphism::identity(&m);
        assert!(id.nil_isomorphism_check(8).unwrap().is_nil_isomorphism());
        let sub = m.submodule(&ideal(&r, &["x"])).unwrap();
        let inc = CartierMorphism::new(sub, m.clone(), identity_matrix(&r, 1)).unwrap();
        assert!(inc.nil_isomorphism_check(8).unwrap().is_nil_isomorphism());
        let sub = CartierModule::from_parts(
            ideal(&r, &["x"]),
            FreeSubmodule::zero(&r, 1),
            CartierStructure::scalar(poly(&r, "1")),
        );
        assert!(sub.is_err());
        let c = CartierModule::principal(poly(&r, "x^2"));
        let quotient = c.quotient_by(&ideal(&r, &["x"]));
        assert!(quotient.is_ok());
        assert!(!quotient.unwrap().is_nilpotent(8).unwrap());
        let bad = vec![vec![poly(&r, "x")]];
        assert!(!morphism_check(&c, &c, &bad).unwrap());
    }

    #[test]
    fn graph_embedding_relation() {
        let r = ring(3, &["x"]);
        let m = CartierModule::principal(poly(&r, "1"));
        let (g, s) = m.graph_embed(&poly(&r, "x"), "s").unwrap();
        let big = g.ring().clone();
        let rel = &Polynomial::var(&big, s) - &Polynomial::var(&big, 0);
        assert!(g.denominator().contains_vector(&[rel]).unwrap());
        assert!(m.graph_embed(&poly(&r, "x"), "x").is_err());
    }

    #[test]
    fn extension_data() {
        let r = ring(3, &["x"]);
        let ry = r.extend("y").unwrap();
        let ext = FiniteExtension::new(&r, "y", &poly(&ry, "y^2-x^3")).unwrap();
        assert_eq!(ext.frobenius_matrix()[1][1].to_string(), "x^3");
        assert!(ext.frobenius_matrix()[1][0].is_zero());
        assert_eq!(ext.trace_values()[0].to_string(), "2");
        assert!(ext.trace_values()[1].is_zero());
        let as_ext = FiniteExtension::new(&r, "y", &poly(&ry, "y^3-y-x")).unwrap();
        assert!(as_ext.discriminant().constant_value().is_some_and(|c| c != 0));
        assert!(FiniteExtension::new(&r, "y", &poly(&ry, "2*y^2-x")).is_err());
        let triv = FiniteExtension::new(&r, "y", &poly(&ry, "y")).unwrap();
        assert_eq!(triv.trace_values()[0].to_string(), "1");
    }

    #[test]
    fn shriek_of_cusp_is_not_f_pure() {
        let r = ring(3, &["x"]);
        let ry = r.extend("y").unwrap();
        let ext = FiniteExtension::new(&r, "y", &poly(&ry, "y^2-x^3")).unwrap();
        let m = CartierModule::principal(poly(&r, "1"));
        let sh = shriek_finite(&ext, &m).unwrap();
        assert!(!sh.is_f_pure().unwrap());
        let phi_y = vec![poly(&r, "0"), poly(&r, "1")];
        assert!(!sh.kappa_image(sh.numerator()).contains_vector(&phi_y).unwrap());
    }

    #[test]
    fn artin_schreier_trace_commutes() {
        for p in [2u64, 3, 5] {
            let r = ring(p, &["x"]);
            let ry = r.extend("y").unwrap();
            let g = poly(&ry, &format!("y^{p}-y-x"));
            let ext = FiniteExtension::new(&r, "y", &g).unwrap();
            let m = CartierModule::principal(poly(&r, "1"));
            let samples: Vec<Polynomial> = ["1", "y", "x*y^2", "x^4*y+y^3+2", "x^7*y^4+x*y"]
                .iter()
                .map(|s| poly(&ry, s))
                .collect();
            assert!(trace_kappa_commute_check(&ext, &m, &samples).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn pushforward_of_zero_and_cusp() {
        let r = ring(3, &["x"]);
        let ry = r.extend("y").unwrap();
        let g = poly(&ry, "y^2-x^3");
        let ext = FiniteExtension::new(&r, "y", &g).unwrap();
        let s = CartierModule::from_parts(
            FreeSubmodule::full(&ry, 1),
            FreeSubmodule::ideal(&ry, vec![g.clone()]).unwrap(),
            CartierStructure::scalar(g.pow(2)),
        )
        .unwrap();
        let pushed = pushforward_finite(&ext, &s).unwrap();
        assert_eq!(pushed.rank(), 2);
        let zero = CartierModule::from_parts(
            FreeSubmodule::ideal(&ry, vec![g.clone()]).unwrap(),
            FreeSubmodule::ideal(&ry, vec![g.clone()]).unwrap(),
            CartierStructure::scalar(g.pow(2)),
        )
        .unwrap();
        assert!(pushforward_finite(&ext, &zero).unwrap().is_zero().unwrap());
    }
}
