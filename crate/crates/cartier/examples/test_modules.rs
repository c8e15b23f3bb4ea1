// Test modules, F-pure thresholds and jumping numbers of a cusp.

use cartier::cartier_mod::CartierModule;
use cartier::cli::parse_polynomial;
use cartier::testmod::{fpt, PairSpec, TauEngine};
use cartier::{Polynomial, Ring};
use num_rational::Rational64;

pub fn run_example() -> cartier::Result<()> {
    for p in [2u64, 3, 5, 7] {
        let r = Ring::new(p, &["x", "y"])?;
        let f = parse_polynomial("x^2+y^3", &r)?;
        let max_den = 12.min((p * p * p * (p - 1)) as i64);
        let threshold = fpt(&f, max_den)?;
        println!("p = {p}: fpt(x^2+y^3) = {}", threshold.value);

        let spec = PairSpec::new(CartierModule::principal(Polynomial::one(&r)), f, Rational64::from_integer(0))?;
        let engine = TauEngine::new(&spec)?;
        let scan = engine.jumping_numbers(Rational64::from_integer(0), Rational64::from_integer(1), max_den)?;
        let jumps: Vec<String> = scan.jumps.iter().map(|t| t.to_string()).collect();
        println!("  jumps in (0, 1]: {}", jumps.join(", "));
        assert_eq!(scan.jumps.first(), Some(&threshold.value));
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
