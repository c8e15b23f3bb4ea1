mod common;

use cartier::frobenius::{bracket_power, frobenius_root};
use cartier::groebner::TermOrder;
use cartier::{FreeSubmodule, Polynomial, PrimeField};
use common::*;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn fermat(p in primes(), a in 0u64..1000) {
        let f = PrimeField::new(p).unwrap();
        let a = a % p;
        prop_assert_eq!(f.pow(a, p), a);
    }

    #[test]
    fn digits_reconstruct(p in primes(), n in 1usize..=3, ts in terms(12, 6), e in 1u32..=3) {
        let r = ring_for(p, n);
        let f = build(&r, &ts);
        prop_assert_eq!(f.frobenius_digits(e).reconstruct(), f);
    }

    #[test]
    fn trace_matches_oracle(p in primes(), n in 1usize..=2, ts in terms(30, 6), e in 1u32..=3) {
        let r = ring_for(p, n);
        let f = build(&r, &ts);
        prop_assert_eq!(f.cartier_trace(e), trace_oracle(&f, e));
    }

    #[test]
    fn trace_semilinear(p in primes(), n in 1usize..=2, fs in terms(8, 4), gs in terms(3, 3), e in 1u32..=2) {
        let r = ring_for(p, n);
        let f = build(&r, &fs);
        let g = build(&r, &gs);
        prop_assert_eq!((&g.frobenius(e) * &f).cartier_trace(e), &g * &f.cartier_trace(e));
    }

    #[test]
    fn trace_composes(p in primes(), n in 1usize..=2, fs in terms(40, 6), e1 in 1u32..=2, e2 in 1u32..=2) {
        let r = ring_for(p, n);
        let f = build(&r, &fs);
        prop_assert_eq!(f.cartier_trace(e2).cartier_trace(e1), f.cartier_trace(e1 + e2));
    }

    #[test]
    fn trace_surjective(p in primes(), n in 1usize..=2, gs in terms(4, 4), e in 1u32..=2) {
        let r = ring_for(p, n);
        let g = build(&r, &gs);
        let k = (p.pow(e) - 1) as u32;
        let shift = cartier::Monomial::from_exps(&vec![k; n]);
        prop_assert_eq!(g.frobenius(e).mul_monomial(&shift, 1).cartier_trace(e), g);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn root_adjunction(
        p in prop_oneof![Just(2u64), Just(3u64)],
        ws in prop::collection::vec(terms(5, 3), 1..=2),
        js in prop::collection::vec(terms(2, 2), 1..=2),
        e in 1u32..=2,
        mix in any::<bool>(),
    ) {
        let r = ring_for(p, 2);
        let w_gens: Vec<Polynomial> = ws.iter().map(|t| build(&r, t)).collect();
        let w = FreeSubmodule::ideal(&r, w_gens).unwrap();
        let mut j = FreeSubmodule::ideal(&r, js.iter().map(|t| build(&r, t)).collect()).unwrap();
        let root = frobenius_root(&w, e).unwrap();
        if mix {
            j = j.sum(&root).unwrap();
        }
        let lhs = bracket_power(&j, e).unwrap().contains(&w).unwrap();
        let rhs = j.contains(&root).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn root_tower_and_round_trip(p in prop_oneof![Just(2u64), Just(3u64)], ws in prop::collection::vec(terms(9, 4), 1..=2)) {
        let r = ring_for(p, 2);
        let w = FreeSubmodule::ideal(&r, ws.iter().map(|t| build(&r, t)).collect()).unwrap();
        let one = frobenius_root(&w, 1).unwrap();
        let two = frobenius_root(&w, 2).unwrap();
        prop_assert!(frobenius_root(&one, 1).unwrap().equals(&two).unwrap());
        prop_assert!(bracket_power(&one, 1).unwrap().contains(&w).unwrap());
        prop_assert!(bracket_power(&two, 2).unwrap().contains(&w).unwrap());
    }

    #[test]
    fn root_monotone(p in primes(), ws in terms(8, 3), extra in terms(8, 2)) {
        let r = ring_for(p, 2);
        let w = FreeSubmodule::ideal(&r, vec![build(&r, &ws)]).unwrap();
        let v = w.sum(&FreeSubmodule::ideal(&r, vec![build(&r, &extra)]).unwrap()).unwrap();
        let rw = frobenius_root(&w, 1).unwrap();
        let rv = frobenius_root(&v, 1).unwrap();
        prop_assert!(rv.contains(&rw).unwrap());
    }

    #[test]
    fn root_generator_independent(p in primes(), ws in terms(8, 3), hs in terms(3, 3)) {
        let r = ring_for(p, 2);
        let g = build(&r, &ws);
        let h = build(&r, &hs);
        let w = FreeSubmodule::ideal(&r, vec![g.clone()]).unwrap();
        let w2 = FreeSubmodule::ideal(&r, vec![g.clone(), &g * &h]).unwrap();
        prop_assert!(frobenius_root(&w, 1).unwrap().equals(&frobenius_root(&w2, 1).unwrap()).unwrap());
    }

    #[test]
    fn membership_of_combinations(p in primes(), gs in prop::collection::vec(terms(3, 3), 1..=3), hs in prop::collection::vec(terms(3, 3), 3)) {
        let r = ring_for(p, 2);
        let gens: Vec<Polynomial> = gs.iter().map(|t| build(&r, t)).collect();
        let mut v = Polynomial::zero(&r);
        for (g, h) in gens.iter().zip(&hs) {
            v = &v + &(g * &build(&r, h));
        }
        let w = FreeSubmodule::ideal(&r, gens).unwrap();
        prop_assert!(w.contains_vector(&[v]).unwrap());
    }

    #[test]
    fn membership_agrees_with_linear_algebra(p in primes(), gs in prop::collection::vec(terms(3, 3), 1..=2), vs in terms(5, 4)) {
        let r = ring_for(p, 2);
        let gens: Vec<Polynomial> = gs.iter().map(|t| build(&r, t)).collect();
        let v = build(&r, &vs);
        let w = FreeSubmodule::ideal(&r, gens.clone()).unwrap();
        if span_contains(&gens, &v, 8) {
            prop_assert!(w.contains_vector(std::slice::from_ref(&v)).unwrap());
        }
        if !w.contains_vector(std::slice::from_ref(&v)).unwrap() {
            prop_assert!(!span_contains(&gens, &v, 8));
        }
    }

    #[test]
    fn reduced_basis_deterministic(p in primes(), gs in prop::collection::vec(terms(4, 3), 1..=3)) {
        let r = ring_for(p, 2);
        let gens: Vec<Polynomial> = gs.iter().map(|t| build(&r, t)).collect();
        let a = FreeSubmodule::ideal(&r, gens.clone()).unwrap().groebner_basis();
        let b = FreeSubmodule::ideal(&r, gens).unwrap().groebner_basis();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn orders_agree_on_membership(p in primes(), gs in prop::collection::vec(terms(3, 3), 1..=2), vs in terms(4, 3)) {
        let r = ring_for(p, 2);
        let gens: Vec<Polynomial> = gs.iter().map(|t| build(&r, t)).collect();
        let w = FreeSubmodule::ideal(&r, gens).unwrap();
        let lex = FreeSubmodule::new(&r, 1, w.groebner_basis_with(&TermOrder::Lex)).unwrap();
        prop_assert!(lex.equals(&w).unwrap());
        let v = build(&r, &vs);
        prop_assert_eq!(lex.contains_vector(std::slice::from_ref(&v)).unwrap(), w.contains_vector(&[v]).unwrap());
    }

    #[test]
    fn saturation_idempotent(p in primes(), gs in prop::collection::vec(terms(3, 3), 1..=2), hs in terms(2, 2)) {
        let r = ring_for(p, 2);
        let w = FreeSubmodule::ideal(&r, gs.iter().map(|t| build(&r, t)).collect()).unwrap();
        let h = build(&r, &hs);
        prop_assume!(!h.is_zero());
        let s = w.saturate(&h).unwrap();
        prop_assert!(s.contains(&w).unwrap());
        prop_assert!(s.saturate(&h).unwrap().equals(&s).unwrap());
    }
}

/// v in the F_p-span of m g for monomials m with deg(m g) <= bound.
fn span_contains(gens: &[Polynomial], v: &Polynomial, bound: u64) -> bool {
    let r = v.ring();
    let p = r.p();
    let mut rows: Vec<Polynomial> = Vec::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        for a in 0..=bound {
            for b in 0..=bound {
                if dg + a + b <= bound {
                    rows.push(g.mul_monomial(&cartier::Monomial::from_exps(&[a as u32, b as u32]), 1));
                }
            }
        }
    }
    let rank_of = |polys: &[Polynomial]| -> usize {
        let mut keys: Vec<cartier::Monomial> = polys.iter().flat_map(|f| f.terms().map(|(m, _)| m.clone())).collect();
        keys.sort();
        keys.dedup();
        let mut mat: Vec<Vec<u64>> = polys
            .iter()
            .map(|f| keys.iter().map(|k| f.coeff(k)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..keys.len() {
            let Some(piv) = (rank..mat.len()).find(|&i| mat[i][col] != 0) else { continue };
            mat.swap(rank, piv);
            let inv = modpow(mat[rank][col], p - 2, p);
            for x in mat[rank].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..mat.len() {
                if i != rank && mat[i][col] != 0 {
                    let k = mat[i][col];
                    for j in 0..keys.len() {
                        mat[i][j] = (mat[i][j] + p * p - k * mat[rank][j] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    };
    let base = rank_of(&rows);
    rows.push(v.clone());
    rank_of(&rows) == base
}

fn modpow(mut a: u64, mut k: u64, p: u64) -> u64 {
    let mut out = 1;
    a %= p;
    while k > 0 {
        if k & 1 == 1 {
            out = out * a % p;
        }
        a = a * a % p;
        k >>= 1;
    }
    out
}

#[test]
fn canonical_text() {
    let r = ring(5, &["x", "y"]);
    assert_eq!(poly(&r, "y^2 + 2*x^3").to_string(), "2*x^3+y^2");
    assert_eq!(poly(&r, "x*y - x*y").to_string(), "0");
    assert_eq!(poly(&r, "6*x").to_string(), "x");
}

#[test]
fn root_matches_trace_oracle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for case in 0..50 {
        let p = if case % 2 == 0 { 2 } else { 3 };
        let r = ring_for(p, 2);
        let ngens = rng.gen_range(1..=2);
        let gens: Vec<Polynomial> = (0..ngens)
            .map(|_| {
                let ts: Vec<(Vec<u32>, u64)> = (0..rng.gen_range(1..=3))
                    .map(|_| {
                        let a = rng.gen_range(0..=3u32);
                        let b = rng.gen_range(0..=3 - a);
                        (vec![a, b, 0], rng.gen_range(1..p))
                    })
                    .collect();
                build(&r, &ts)
            })
            .filter(|g| !g.is_zero())
            .collect();
        let w = FreeSubmodule::ideal(&r, gens.clone()).unwrap();
        for e in 1..=2 {
            let ours = frobenius_root(&w, e).unwrap();
            assert!(ours.equals(&root_by_traces(&gens, &r, e)).unwrap(), "case {case} e={e}");
            assert!(ours.equals(&root_by_digits(&gens, &r, e)).unwrap(), "case {case} e={e}");
        }
    }
}
