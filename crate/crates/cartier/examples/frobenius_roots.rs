// Frobenius roots and bracket powers of ideals.

use cartier::cli::parse_polynomial;
use cartier::frobenius::{bracket_power, frobenius_root};
use cartier::{FreeSubmodule, Ring};

pub fn run_example() -> cartier::Result<()> {
    let r = Ring::new(2, &["x", "y"])?;
    let f = parse_polynomial("x^3 + y^5 + x*y^4", &r)?;
    let w = FreeSubmodule::ideal(&r, vec![f])?;
    for e in 1..=3 {
        let root = frobenius_root(&w, e)?;
        println!("level {e}: {}", root.reduced());
        assert!(bracket_power(&root, e)?.contains(&w)?);
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
