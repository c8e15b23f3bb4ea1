// Cartier modules: F-purity, nilpotence and a finite cover.

use cartier::cartier_mod::{shriek_finite, CartierModule, FiniteExtension};
use cartier::cli::parse_polynomial;
use cartier::{FreeSubmodule, Polynomial, Ring};

pub fn run_example() -> cartier::Result<()> {
    let r = Ring::new(3, &["x"])?;
    let x = parse_polynomial("x", &r)?;
    let pure = CartierModule::principal(x.pow(2));
    println!("(R, C o x^2) F-pure: {}", pure.is_f_pure()?);
    assert!(pure.is_f_pure()?);

    let twisted = CartierModule::principal(x.pow(3));
    let (under, steps) = twisted.underline()?;
    println!("underline of (R, C o x^3): {under} after {steps} steps");

    let quotient = CartierModule::principal(x.pow(6))
        .quotient_by(&FreeSubmodule::ideal(&r, vec![x.pow(2)])?)?;
    println!("(R/(x^2), C o x^6) nilpotence index: {:?}", quotient.nilpotence_index(8)?);

    let ry = r.extend("y")?;
    let ext = FiniteExtension::new(&r, "y", &parse_polynomial("y^2-x^3", &ry)?)?;
    let sh = shriek_finite(&ext, &CartierModule::principal(Polynomial::one(&r)))?;
    println!("f^! R over the cusp is F-pure: {}", sh.is_f_pure()?);
    assert!(!sh.is_f_pure()?);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
