// The V-filtration of a twisted line, its axioms and graded pieces.

use cartier::cartier_mod::CartierModule;
use cartier::cli::parse_polynomial;
use cartier::testmod::PairSpec;
use cartier::vfilt::{compute_vfiltration, gr_is_crystal_zero, gr_range, verify_axioms, GrConvention};
use cartier::Ring;
use num_rational::Rational64;

pub fn run_example() -> cartier::Result<()> {
    let r = Ring::new(5, &["x"])?;
    let x = parse_polynomial("x", &r)?;
    let spec = PairSpec::new(CartierModule::principal(x.clone()), x, Rational64::from_integer(0))?;
    let table = compute_vfiltration(&spec, Rational64::from_integer(0), Rational64::from_integer(2), 20)?;
    for (t, v) in &table.pieces {
        println!("V^t = {v} from t = {t}");
    }
    let axioms = verify_axioms(&table)?;
    println!("axioms hold: {}", axioms.all_pass());
    assert!(axioms.all_pass());
    for conv in [GrConvention::A, GrConvention::B] {
        for piece in gr_range(&table, Rational64::from_integer(0), Rational64::from_integer(1), conv)? {
            println!(
                "Gr at {} with twist f^{}: nilpotent = {}",
                piece.t,
                piece.twist_exponent,
                gr_is_crystal_zero(&piece)?
            );
        }
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
