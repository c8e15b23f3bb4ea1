// Reduced Groebner bases, saturation and elimination.

use cartier::cli::parse_polynomial;
use cartier::{FreeSubmodule, Ring};

pub fn run_example() -> cartier::Result<()> {
    let r = Ring::new(5, &["x", "y", "z"])?;
    let p = |s: &str| parse_polynomial(s, &r);
    let i = FreeSubmodule::ideal(&r, vec![p("x^2-y")?, p("x*y-z")?])?;
    println!("reduced basis: {}", i.reduced());
    assert!(i.contains_vector(&[p("x*z-y^2")?])?);

    let j = FreeSubmodule::ideal(&r, vec![p("x^3*y")?, p("x^2*z")?])?;
    let sat = j.saturate(&p("x")?)?;
    println!("saturation at x: {sat}");
    assert!(sat.equals(&FreeSubmodule::ideal(&r, vec![p("y")?, p("z")?])?)?);

    let elim = i.eliminate(&[0]);
    println!("eliminate x: {elim}");
    assert!(elim.contains_vector(&[p("y^3-z^2")?])?);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
