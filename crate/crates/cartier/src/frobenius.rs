//! Frobenius bracket powers and Frobenius roots of submodules.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field_poly::{Monomial, Polynomial};
use crate::groebner::FreeSubmodule;

pub const DEFAULT_MAX_E: u32 = 6;

/// Level cap, `CARTIER_MAX_E` when set.
pub fn max_level() -> u32 {
    std::env::var("CARTIER_MAX_E")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_E)
}

pub fn check_level(e: u32) -> Result<()> {
    let cap = max_level();
    if e > cap {
        Err(Error::LevelCap { e, cap })
    } else {
        Ok(())
    }
}

/// `W^[p^e]`: generated by entrywise p^e-th powers of the generators.
pub fn bracket_power(w: &FreeSubmodule, e: u32) -> Result<FreeSubmodule> {
    check_level(e)?;
    let gens = w
        .generators()
        .iter()
        .map(|g| g.iter().map(|c| c.frobenius(e)).collect())
        .collect();
    FreeSubmodule::new(w.ring(), w.rank(), gens)
}

/// `W^[1/p^e]`: the smallest J with W inside J^[p^e].
pub fn frobenius_root(w: &FreeSubmodule, e: u32) -> Result<FreeSubmodule> {
    if e == 0 {
        return Ok(w.clone());
    }
    check_level(e)?;
    Ok(root_unchecked(w, e))
}

pub(crate) fn root_unchecked(w: &FreeSubmodule, e: u32) -> FreeSubmodule {
    let ring = w.ring();
    let r = w.rank();
    let mut gens = Vec::new();
    for g in w.generators() {
        let mut by_digit: BTreeMap<Monomial, Vec<Polynomial>> = BTreeMap::new();
        for (i, c) in g.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, d) in c.frobenius_digits(e).digits {
                by_digit
                    .entry(a)
                    .or_insert_with(|| vec![Polynomial::zero(ring); r])[i] = d;
            }
        }
        gens.extend(by_digit.into_values());
    }
    FreeSubmodule::new(ring, r, gens).unwrap().reduced()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_polynomial;
    use crate::field_poly::Ring;

    fn ideal(p: u64, vars: &[&str], gens: &[&str]) -> FreeSubmodule {
        let r = Ring::new(p, vars).unwrap();
        FreeSubmodule::ideal(&r, gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn bracket_examples() {
        let w = ideal(3, &["x", "y"], &["x", "y"]);
        let b = bracket_power(&w, 1).unwrap();
        assert!(b.equals(&ideal(3, &["x", "y"], &["x^3", "y^3"])).unwrap());
        assert!(bracket_power(&w, 0).unwrap().equals(&w).unwrap());
        let s = ideal(2, &["x", "y"], &["x+y"]);
        assert!(bracket_power(&s, 1)
            .unwrap()
            .equals(&ideal(2, &["x", "y"], &["x^2+y^2"]))
            .unwrap());
    }

    #[test]
    fn root_examples() {
        let w = ideal(3, &["x"], &["x^5"]);
        assert!(frobenius_root(&w, 1).unwrap().equals(&ideal(3, &["x"], &["x"])).unwrap());
        let w = ideal(2, &["x", "y"], &["x^2+y^2"]);
        assert!(frobenius_root(&w, 1)
            .unwrap()
            .equals(&ideal(2, &["x", "y"], &["x+y"]))
            .unwrap());
        let w = ideal(3, &["x", "y"], &["x^2*y^5", "x^7"]);
        assert!(frobenius_root(&w, 1)
            .unwrap()
            .equals(&ideal(3, &["x", "y"], &["y", "x^2"]))
            .unwrap());
    }

    #[test]
    fn level_cap_enforced() {
        let w = ideal(2, &["x"], &["x"]);
        assert!(matches!(
            frobenius_root(&w, max_level() + 1),
            Err(Error::LevelCap { .. })
        ));
    }
}
