// Polynomial arithmetic over F_p, Frobenius digits and the trace map.

use cartier::cli::parse_polynomial;
use cartier::Ring;

pub fn run_example() -> cartier::Result<()> {
    let r = Ring::new(3, &["x", "y"])?;
    let f = parse_polynomial("x^5*y^2 + 2*x^2*y^8 + y", &r)?;
    println!("f = {f}");
    let digits = f.frobenius_digits(1);
    for (a, d) in &digits.digits {
        println!("  digit at {:?}: {d}", a.0.as_slice());
    }
    assert_eq!(digits.reconstruct(), f);
    let c = f.cartier_trace(1);
    println!("C(f) = {c}");
    assert_eq!(c.to_string(), "x+2*y^2");
    Ok(())
}

fn main() {
    run_example().unwrap();
}
