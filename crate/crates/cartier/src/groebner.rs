//! Buchberger's algorithm for submodules of free modules R^r, with normal
//! forms, membership, elimination, saturation, intersections and preimages.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field_poly::{Monomial, Polynomial, PrimeField, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Grevlex,
    Lex,
    /// Block order: grevlex on the listed variables first, then the
    /// position, then grevlex on the remaining variables.
    Elim(Vec<usize>),
}

type Key = SmallVec<[i64; 12]>;

#[derive(Clone, Debug)]
struct Tm {
    key: Key,
    pos: usize,
    exp: Monomial,
    c: u64,
}

/// A vector of polynomials as a list of terms sorted ascending by the order,
/// so the leading term is last.
#[derive(Clone, Debug, Default)]
struct Vect {
    terms: Vec<Tm>,
}

impl Vect {
    fn lead(&self) -> Option<&Tm> {
        self.terms.last()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug)]
struct Ctx {
    field: PrimeField,
    n: usize,
    order: TermOrder,
}

impl Ctx {
    fn new(ring: &Ring, order: TermOrder) -> Self {
        Ctx {
            field: *ring.field(),
            n: ring.nvars(),
            order,
        }
    }

    fn key(&self, pos: Option<usize>, m: &Monomial) -> Key {
        let mut k = Key::new();
        let pslot = pos.map(|p| -(p as i64)).unwrap_or(0);
        match &self.order {
            TermOrder::Grevlex => {
                k.push(pslot);
                k.push(m.degree() as i64);
                for i in (0..self.n).rev() {
                    k.push(-(m.0[i] as i64));
                }
            }
            TermOrder::Lex => {
                k.push(pslot);
                for i in 0..self.n {
                    k.push(m.0[i] as i64);
                }
            }
            TermOrder::Elim(vars) => {
                k.push(vars.iter().map(|&i| m.0[i] as i64).sum());
                for &i in vars.iter().rev() {
                    k.push(-(m.0[i] as i64));
                }
                k.push(pslot);
                let rest: Vec<usize> = (0..self.n).filter(|i| !vars.contains(i)).collect();
                k.push(rest.iter().map(|&i| m.0[i] as i64).sum());
                for &i in rest.iter().rev() {
                    k.push(-(m.0[i] as i64));
                }
            }
        }
        k
    }

    fn add_keys(a: &Key, b: &Key) -> Key {
        a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
    }

    fn from_polys(&self, v: &[Polynomial]) -> Vect {
        let mut terms = Vec::new();
        for (pos, f) in v.iter().enumerate() {
            for (m, c) in f.terms() {
                terms.push(Tm {
                    key: self.key(Some(pos), m),
                    pos,
                    exp: m.clone(),
                    c,
                });
            }
        }
        terms.sort_by(|a, b| a.key.cmp(&b.key));
        Vect { terms }
    }

    fn to_polys(&self, ring: &Arc<Ring>, rank: usize, v: &Vect) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, u64)>> = vec![Vec::new(); rank];
        for t in &v.terms {
            parts[t.pos].push((t.exp.clone(), t.c));
        }
        parts
            .into_iter()
            .map(|ts| Polynomial::from_terms(ring, ts))
            .collect()
    }

    /// `a - c * m * b`
    fn sub_mul(&self, a: &Vect, c: u64, m: &Monomial, mkey: &Key, b: &Vect) -> Vect {
        let f = self.field;
        let nc = f.neg(c);
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let mut i = 0;
        let mut j = 0;
        let scaled = |t: &Tm| Tm {
            key: Self::add_keys(&t.key, mkey),
            pos: t.pos,
            exp: t.exp.mul(m),
            c: f.mul(t.c, nc),
        };
        while i < a.terms.len() || j < b.terms.len() {
            if j >= b.terms.len() {
                out.push(a.terms[i].clone());
                i += 1;
                continue;
            }
            let bt = scaled(&b.terms[j]);
            if i >= a.terms.len() {
                out.push(bt);
                j += 1;
                continue;
            }
            match a.terms[i].key.cmp(&bt.key) {
                Ordering::Less => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(bt);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a.terms[i].c, bt.c);
                    if s != 0 {
                        let mut t = a.terms[i].clone();
                        t.c = s;
                        out.push(t);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Vect { terms: out }
    }

    fn make_monic(&self, v: &mut Vect) {
        if let Some(l) = v.lead() {
            let inv = self.field.inv(l.c).expect("nonzero leading coefficient");
            if inv != 1 {
                for t in &mut v.terms {
                    t.c = self.field.mul(t.c, inv);
                }
            }
        }
    }

    fn find_divisor<'a>(&self, t: &Tm, basis: &'a [Vect]) -> Option<&'a Vect> {
        basis.iter().find(|g| {
            let l = g.lead().unwrap();
            l.pos == t.pos && l.exp.divides(&t.exp)
        })
    }

    /// Full reduction of `f` modulo a list of monic vectors.
    fn reduce(&self, mut f: Vect, basis: &[Vect]) -> Vect {
        let mut rem: Vec<Tm> = Vec::new();
        while let Some(lt) = f.lead() {
            match self.find_divisor(lt, basis) {
                Some(g) => {
                    let gl = g.lead().unwrap();
                    let m = gl.exp.quotient_of(&lt.exp);
                    let mkey = self.key(None, &m);
                    let c = lt.c;
                    f = self.sub_mul(&f, c, &m, &mkey, g);
                }
                None => rem.push(f.terms.pop().unwrap()),
            }
        }
        rem.reverse();
        Vect { terms: rem }
    }

    fn s_vector(&self, a: &Vect, b: &Vect) -> Vect {
        let la = a.lead().unwrap();
        let lb = b.lead().unwrap();
        let l = la.exp.lcm(&lb.exp);
        let ma = la.exp.quotient_of(&l);
        let mb = lb.exp.quotient_of(&l);
        let zero = Vect::default();
        let ka = self.key(None, &ma);
        let kb = self.key(None, &mb);
        let fa = self.sub_mul(&zero, self.field.neg(1), &ma, &ka, a);
        self.sub_mul(&fa, 1, &mb, &kb, b)
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    key: Key,
}

fn groebner(ctx: &Ctx, gens: Vec<Vect>, single_position: bool) -> Vec<Vect> {
    let mut basis: Vec<Vect> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut gens: Vec<Vect> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    gens.sort_by(|a, b| a.lead().unwrap().key.cmp(&b.lead().unwrap().key));
    for g in gens {
        let mut h = ctx.reduce(g, &basis);
        if h.is_zero() {
            continue;
        }
        ctx.make_monic(&mut h);
        update(ctx, &mut basis, &mut active, &mut pairs, h, single_position);
    }
    while !pairs.is_empty() {
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.key.cmp(&b.1.key))
            .unwrap();
        let pr = pairs.swap_remove(idx);
        let s = ctx.s_vector(&basis[pr.i], &basis[pr.j]);
        let mut h = ctx.reduce(s, &basis);
        if h.is_zero() {
            continue;
        }
        ctx.make_monic(&mut h);
        update(ctx, &mut basis, &mut active, &mut pairs, h, single_position);
    }
    interreduce(ctx, basis, active)
}

/// Gebauer-Moeller installation of a new basis element.
fn update(
    ctx: &Ctx,
    basis: &mut Vec<Vect>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Vect,
    single_position: bool,
) {
    let hl = h.lead().unwrap().clone();
    let k = basis.len();
    let mut cand: Vec<(usize, Monomial, bool)> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        if !active[i] {
            continue;
        }
        let gl = g.lead().unwrap();
        if gl.pos != hl.pos {
            continue;
        }
        cand.push((i, gl.exp.lcm(&hl.exp), gl.exp.coprime(&hl.exp)));
    }
    // M criterion: drop pairs whose lcm is a proper multiple of another's.
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        for b in 0..cand.len() {
            if a != b && cand[b].1.divides(&cand[a].1) && cand[b].1 != cand[a].1 {
                keep[a] = false;
                break;
            }
        }
    }
    // F criterion: one pair per lcm; if any is coprime the whole class goes.
    let mut chosen: Vec<(usize, Monomial, bool)> = Vec::new();
    for (idx, c) in cand.into_iter().enumerate() {
        if !keep[idx] {
            continue;
        }
        if let Some(existing) = chosen.iter_mut().find(|e| e.1 == c.1) {
            existing.2 |= c.2;
        } else {
            chosen.push(c);
        }
    }
    // B criterion on old pairs.
    pairs.retain(|pr| {
        let pi = basis[pr.i].lead().unwrap().pos;
        if pi != hl.pos || !hl.exp.divides(&pr.lcm) {
            return true;
        }
        let li = basis[pr.i].lead().unwrap().exp.lcm(&hl.exp);
        let lj = basis[pr.j].lead().unwrap().exp.lcm(&hl.exp);
        li == pr.lcm || lj == pr.lcm
    });
    for (i, lcm, coprime) in chosen {
        if single_position && coprime {
            continue;
        }
        let key = ctx.key(Some(hl.pos), &lcm);
        pairs.push(Pair { i, j: k, lcm, key });
    }
    for (i, g) in basis.iter().enumerate() {
        if active[i] {
            let gl = g.lead().unwrap();
            if gl.pos == hl.pos && hl.exp.divides(&gl.exp) {
                active[i] = false;
            }
        }
    }
    basis.push(h);
    active.push(true);
}

fn interreduce(ctx: &Ctx, basis: Vec<Vect>, active: Vec<bool>) -> Vec<Vect> {
    let mut min: Vec<Vect> = Vec::new();
    let cands: Vec<Vect> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(v, _)| v)
        .collect();
    for (i, g) in cands.iter().enumerate() {
        let gl = g.lead().unwrap();
        let redundant = cands.iter().enumerate().any(|(j, o)| {
            let ol = o.lead().unwrap();
            j != i
                && ol.pos == gl.pos
                && ol.exp.divides(&gl.exp)
                && (ol.exp != gl.exp || j < i)
        });
        if !redundant {
            min.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for i in 0..min.len() {
        let others: Vec<Vect> = min
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let lead = min[i].terms.last().unwrap().clone();
        let mut tail = min[i].clone();
        tail.terms.pop();
        let mut r = ctx.reduce(tail, &others);
        r.terms.push(lead);
        ctx.make_monic(&mut r);
        out.push(r);
    }
    out.sort_by(|a, b| b.lead().unwrap().key.cmp(&a.lead().unwrap().key));
    out
}

struct Basis {
    ctx: Ctx,
    elems: Vec<Vect>,
    polys: Vec<Vec<Polynomial>>,
}

/// A finitely generated submodule of R^r; rank 1 is an ideal.
pub struct FreeSubmodule {
    ring: Arc<Ring>,
    rank: usize,
    gens: Vec<Vec<Polynomial>>,
    gb: OnceLock<Arc<Basis>>,
}

impl Clone for FreeSubmodule {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        FreeSubmodule {
            ring: self.ring.clone(),
            rank: self.rank,
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl fmt::Debug for FreeSubmodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FreeSubmodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gs: Vec<String> = self.gens.iter().map(|g| vector_to_string(g)).collect();
        write!(f, "<{}>", gs.join(", "))
    }
}

pub fn vector_to_string(v: &[Polynomial]) -> String {
    if v.len() == 1 {
        v[0].to_string()
    } else {
        let parts: Vec<String> = v.iter().map(|p| p.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

pub type Matrix = Vec<Vec<Polynomial>>;

pub fn mat_vec(m: &Matrix, v: &[Polynomial]) -> Vec<Polynomial> {
    m.iter()
        .map(|row| {
            let mut acc = Polynomial::zero(v[0].ring());
            for (a, b) in row.iter().zip(v.iter()) {
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map(|r| r.len()).unwrap_or(0);
    let ring = a[0][0].ring().clone();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Polynomial::zero(&ring);
                    for (k, x) in row.iter().enumerate() {
                        acc = &acc + &(x * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &Matrix) -> Polynomial {
    let n = m.len();
    let ring = m[0][0].ring().clone();
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = Polynomial::one(&ring);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Polynomial::zero(&ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .checked_div(&prev)
                    .unwrap()
                    .expect("exact division in fraction-free elimination");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

pub fn identity_matrix(ring: &Arc<Ring>, r: usize) -> Matrix {
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    if i == j {
                        Polynomial::one(ring)
                    } else {
                        Polynomial::zero(ring)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn unit_vector(ring: &Arc<Ring>, r: usize, i: usize) -> Vec<Polynomial> {
    (0..r)
        .map(|j| {
            if i == j {
                Polynomial::one(ring)
            } else {
                Polynomial::zero(ring)
            }
        })
        .collect()
}

pub fn zero_vector(ring: &Arc<Ring>, r: usize) -> Vec<Polynomial> {
    vec![Polynomial::zero(ring); r]
}

impl FreeSubmodule {
    pub fn new(ring: &Arc<Ring>, rank: usize, gens: Vec<Vec<Polynomial>>) -> Result<Self> {
        for g in &gens {
            if g.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: g.len(),
                });
            }
            for c in g {
                if !(Arc::ptr_eq(c.ring(), ring) || **c.ring() == **ring) {
                    return Err(Error::RingMismatch);
                }
            }
        }
        let gens = gens
            .into_iter()
            .filter(|g| g.iter().any(|c| !c.is_zero()))
            .collect();
        Ok(FreeSubmodule {
            ring: ring.clone(),
            rank,
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn ideal(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        Self::new(ring, 1, gens.into_iter().map(|g| vec![g]).collect())
    }

    pub fn zero(ring: &Arc<Ring>, rank: usize) -> Self {
        Self::new(ring, rank, vec![]).unwrap()
    }

    pub fn full(ring: &Arc<Ring>, rank: usize) -> Self {
        Self::new(ring, rank, (0..rank).map(|i| unit_vector(ring, rank, i)).collect()).unwrap()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.gens
    }

    fn check_rank(&self, r: usize) -> Result<()> {
        if r == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank,
                found: r,
            })
        }
    }

    fn basis(&self) -> Arc<Basis> {
        self.gb
            .get_or_init(|| {
                let ctx = Ctx::new(&self.ring, TermOrder::Grevlex);
                let vs = self.gens.iter().map(|g| ctx.from_polys(g)).collect();
                let elems = groebner(&ctx, vs, self.rank == 1);
                let polys = elems
                    .iter()
                    .map(|v| ctx.to_polys(&self.ring, self.rank, v))
                    .collect();
                Arc::new(Basis { ctx, elems, polys })
            })
            .clone()
    }

    /// Reduced Groebner basis for grevlex (position over term), cached.
    pub fn groebner_basis(&self) -> Vec<Vec<Polynomial>> {
        self.basis().polys.clone()
    }

    pub fn groebner_basis_with(&self, order: &TermOrder) -> Vec<Vec<Polynomial>> {
        if *order == TermOrder::Grevlex {
            return self.groebner_basis();
        }
        let ctx = Ctx::new(&self.ring, order.clone());
        let vs = self.gens.iter().map(|g| ctx.from_polys(g)).collect();
        groebner(&ctx, vs, self.rank == 1)
            .iter()
            .map(|v| ctx.to_polys(&self.ring, self.rank, v))
            .collect()
    }

    /// The same submodule with its reduced basis as generators.
    pub fn reduced(&self) -> FreeSubmodule {
        let b = self.basis();
        let gb = OnceLock::new();
        let _ = gb.set(b.clone());
        FreeSubmodule {
            ring: self.ring.clone(),
            rank: self.rank,
            gens: b.polys.clone(),
            gb,
        }
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        self.check_rank(v.len())?;
        let b = self.basis();
        let r = b.ctx.reduce(b.ctx.from_polys(v), &b.elems);
        Ok(b.ctx.to_polys(&self.ring, self.rank, &r))
    }

    pub fn contains_vector(&self, v: &[Polynomial]) -> Result<bool> {
        self.check_rank(v.len())?;
        let b = self.basis();
        Ok(b.ctx.reduce(b.ctx.from_polys(v), &b.elems).is_zero())
    }

    pub fn contains(&self, other: &FreeSubmodule) -> Result<bool> {
        self.check_rank(other.rank)?;
        for g in &other.gens {
            if !self.contains_vector(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &FreeSubmodule) -> Result<bool> {
        self.check_rank(other.rank)?;
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.contains(&FreeSubmodule::full(&self.ring, self.rank))
            .unwrap_or(false)
    }

    pub fn sum(&self, other: &FreeSubmodule) -> Result<FreeSubmodule> {
        self.check_rank(other.rank)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        FreeSubmodule::new(&self.ring, self.rank, gens)
    }

    pub fn scale(&self, f: &Polynomial) -> FreeSubmodule {
        let gens = self
            .gens
            .iter()
            .map(|g| g.iter().map(|c| c * f).collect())
            .collect();
        FreeSubmodule::new(&self.ring, self.rank, gens).unwrap()
    }

    /// Image under a matrix with `rank` columns.
    pub fn apply_matrix(&self, m: &Matrix) -> Result<FreeSubmodule> {
        let rows = m.len();
        for row in m {
            if row.len() != self.rank {
                return Err(Error::RankMismatch {
                    expected: self.rank,
                    found: row.len(),
                });
            }
        }
        let gens = self.gens.iter().map(|g| mat_vec(m, g)).collect();
        FreeSubmodule::new(&self.ring, rows, gens)
    }

    pub fn map_to(&self, target: &Arc<Ring>) -> Result<FreeSubmodule> {
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut v = Vec::with_capacity(g.len());
            for c in g {
                v.push(c.map_to(target)?);
            }
            gens.push(v);
        }
        FreeSubmodule::new(target, self.rank, gens)
    }

    pub fn substitute(&self, var: usize, g: &Polynomial) -> FreeSubmodule {
        let gens = self
            .gens
            .iter()
            .map(|v| v.iter().map(|c| c.substitute(var, g)).collect())
            .collect();
        FreeSubmodule::new(&self.ring, self.rank, gens).unwrap()
    }

    /// Intersection with the submodule of vectors free of the listed
    /// variables.
    pub fn eliminate(&self, vars: &[usize]) -> FreeSubmodule {
        let gb = self.groebner_basis_with(&TermOrder::Elim(vars.to_vec()));
        let kept = gb
            .into_iter()
            .filter(|v| v.iter().all(|c| vars.iter().all(|&i| !c.uses_var(i))))
            .collect();
        FreeSubmodule::new(&self.ring, self.rank, kept)
            .unwrap()
            .reduced()
    }

    /// `W : h^infinity`.
    pub fn saturate(&self, h: &Polynomial) -> Result<FreeSubmodule> {
        if h.is_zero() {
            return Err(Error::InvalidInput("saturation at 0".into()));
        }
        let name = fresh_name(&self.ring, "sat");
        let big = self.ring.extend(&name)?;
        let t = Polynomial::var(&big, big.nvars() - 1);
        let hb = h.map_to(&big)?;
        let rel = &Polynomial::one(&big) - &(&t * &hb);
        let mut gens = self.map_to(&big)?.gens;
        for i in 0..self.rank {
            let mut e = zero_vector(&big, self.rank);
            e[i] = rel.clone();
            gens.push(e);
        }
        let ext = FreeSubmodule::new(&big, self.rank, gens)?;
        let el = ext.eliminate(&[big.nvars() - 1]);
        el.map_to(&self.ring).map(|m| m.reduced())
    }

    /// Vectors `v` of R^s with `phi v` in `target`; `phi` has `target.rank`
    /// rows and `s` columns.
    pub fn preimage(phi: &Matrix, s: usize, target: &FreeSubmodule) -> Result<FreeSubmodule> {
        let rt = target.rank;
        if phi.len() != rt || phi.iter().any(|r| r.len() != s) {
            return Err(Error::RankMismatch {
                expected: rt,
                found: phi.len(),
            });
        }
        let ring = &target.ring;
        let mut gens = Vec::new();
        for k in 0..s {
            let mut v: Vec<Polynomial> = phi.iter().map(|row| row[k].clone()).collect();
            v.extend(unit_vector(ring, s, k));
            gens.push(v);
        }
        for b in &target.gens {
            let mut v = b.clone();
            v.extend(zero_vector(ring, s));
            gens.push(v);
        }
        let big = FreeSubmodule::new(ring, rt + s, gens)?;
        let kept = big
            .groebner_basis()
            .into_iter()
            .filter(|v| v[..rt].iter().all(|c| c.is_zero()))
            .map(|v| v[rt..].to_vec())
            .collect();
        Ok(FreeSubmodule::new(ring, s, kept)?.reduced())
    }

    pub fn intersect(&self, other: &FreeSubmodule) -> Result<FreeSubmodule> {
        self.check_rank(other.rank)?;
        let r = self.rank;
        let ring = &self.ring;
        let mut gens = Vec::new();
        for a in &self.gens {
            let mut v = a.clone();
            v.extend(a.iter().cloned());
            gens.push(v);
        }
        for b in &other.gens {
            let mut v = b.clone();
            v.extend(zero_vector(ring, r));
            gens.push(v);
        }
        let big = FreeSubmodule::new(ring, 2 * r, gens)?;
        let kept = big
            .groebner_basis()
            .into_iter()
            .filter(|v| v[..r].iter().all(|c| c.is_zero()))
            .map(|v| v[r..].to_vec())
            .collect();
        Ok(FreeSubmodule::new(ring, r, kept)?.reduced())
    }

    /// `{m in R^r : f m in W}`.
    pub fn colon(&self, f: &Polynomial) -> Result<FreeSubmodule> {
        let r = self.rank;
        let phi: Matrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if i == j {
                            f.clone()
                        } else {
                            Polynomial::zero(&self.ring)
                        }
                    })
                    .collect()
            })
            .collect();
        FreeSubmodule::preimage(&phi, r, self)
    }

    /// When R^r / W is finite dimensional over F_p, the largest degree of a
    /// standard monomial.
    pub fn quotient_top_degree(&self) -> Option<u64> {
        let gb = self.basis();
        let n = self.ring.nvars();
        let mut top = 0u64;
        for pos in 0..self.rank {
            let leads: Vec<&Monomial> = gb
                .elems
                .iter()
                .map(|v| v.lead().unwrap())
                .filter(|t| t.pos == pos)
                .map(|t| &t.exp)
                .collect();
            let mut bound = 0u64;
            for i in 0..n {
                let pure = leads
                    .iter()
                    .filter(|m| (0..n).all(|j| j == i || m.0[j] == 0))
                    .map(|m| m.0[i] as u64)
                    .min();
                {
                    let k = pure?;
                    bound += k.saturating_sub(1)
                }
            }
            if n == 0 && leads.is_empty() {
                bound = 0;
            }
            top = top.max(bound);
        }
        Some(top)
    }
}

pub fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = format!("_{base}");
    let mut k = 0;
    while ring.var_index(&name).is_some() {
        k += 1;
        name = format!("_{base}{k}");
    }
    name
}

/// A subquotient W/N of R^r with N contained in W.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub numerator: FreeSubmodule,
    pub denominator: FreeSubmodule,
}

impl QuotientPresentation {
    pub fn new(numerator: FreeSubmodule, denominator: FreeSubmodule) -> Result<Self> {
        if numerator.rank() != denominator.rank() {
            return Err(Error::RankMismatch {
                expected: numerator.rank(),
                found: denominator.rank(),
            });
        }
        if !numerator.contains(&denominator)? {
            return Err(Error::InvalidInput(
                "denominator is not contained in numerator".into(),
            ));
        }
        Ok(QuotientPresentation {
            numerator,
            denominator,
        })
    }

    pub fn free(ring: &Arc<Ring>, rank: usize) -> Self {
        QuotientPresentation {
            numerator: FreeSubmodule::full(ring, rank),
            denominator: FreeSubmodule::zero(ring, rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.numerator.rank()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.numerator.ring()
    }

    pub fn reduce(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        self.denominator.normal_form(v)
    }

    /// True when the represented module W/N is zero.
    pub fn is_zero(&self) -> Result<bool> {
        self.denominator.contains(&self.numerator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, v: &[&str]) -> Arc<Ring> {
        Ring::new(p, v).unwrap()
    }

    fn parse(r: &Arc<Ring>, s: &str) -> Polynomial {
        crate::cli::parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn lex_basis_example() {
        let r = ring(3, &["x", "y"]);
        let m = FreeSubmodule::ideal(&r, vec![parse(&r, "x^2+y"), parse(&r, "y")]).unwrap();
        let gb = m.groebner_basis_with(&TermOrder::Lex);
        let s: Vec<String> = gb.iter().map(|v| v[0].to_string()).collect();
        assert_eq!(s, vec!["x^2", "y"]);
        assert!(m.contains_vector(&[parse(&r, "x^2")]).unwrap());
        assert!(FreeSubmodule::zero(&r, 1).groebner_basis().is_empty());
    }

    #[test]
    fn elimination_examples() {
        let r = ring(3, &["x", "y"]);
        let m = FreeSubmodule::ideal(&r, vec![parse(&r, "y-x^2"), parse(&r, "y")]).unwrap();
        let e = m.eliminate(&[1]);
        assert!(e
            .equals(&FreeSubmodule::ideal(&r, vec![parse(&r, "x^2")]).unwrap())
            .unwrap());
    }

    #[test]
    fn saturation_examples() {
        let r = ring(3, &["x", "y"]);
        let i = FreeSubmodule::ideal(&r, vec![parse(&r, "x*y")]).unwrap();
        let s = i.saturate(&parse(&r, "y")).unwrap();
        assert!(s
            .equals(&FreeSubmodule::ideal(&r, vec![parse(&r, "x")]).unwrap())
            .unwrap());
        let i = FreeSubmodule::ideal(&r, vec![parse(&r, "x^2*y+y^2")]).unwrap();
        let s = i.saturate(&parse(&r, "y")).unwrap();
        assert!(s
            .equals(&FreeSubmodule::ideal(&r, vec![parse(&r, "x^2+y")]).unwrap())
            .unwrap());
        let i = FreeSubmodule::ideal(&r, vec![parse(&r, "x")]).unwrap();
        assert!(i.saturate(&parse(&r, "x")).unwrap().is_full());
    }

    #[test]
    fn module_intersection_and_colon() {
        let r = ring(5, &["x", "y"]);
        let a = FreeSubmodule::ideal(&r, vec![parse(&r, "x")]).unwrap();
        let b = FreeSubmodule::ideal(&r, vec![parse(&r, "y")]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert!(c
            .equals(&FreeSubmodule::ideal(&r, vec![parse(&r, "x*y")]).unwrap())
            .unwrap());
        let q = c.colon(&parse(&r, "x")).unwrap();
        assert!(q.equals(&b).unwrap());
        let m = FreeSubmodule::new(
            &r,
            2,
            vec![vec![parse(&r, "x"), parse(&r, "y")], vec![parse(&r, "0"), parse(&r, "x^2")]],
        )
        .unwrap();
        assert!(m
            .contains_vector(&[parse(&r, "x^2"), parse(&r, "x*y+x^2")])
            .unwrap());
        assert!(!m.contains_vector(&[parse(&r, "0"), parse(&r, "x")]).unwrap());
    }

    #[test]
    fn finite_quotient_degree() {
        let r = ring(3, &["x", "y"]);
        let m = FreeSubmodule::ideal(&r, vec![parse(&r, "x^2"), parse(&r, "y^3")]).unwrap();
        assert_eq!(m.quotient_top_degree(), Some(3));
        let m = FreeSubmodule::ideal(&r, vec![parse(&r, "x^2")]).unwrap();
        assert_eq!(m.quotient_top_degree(), None);
    }
}
