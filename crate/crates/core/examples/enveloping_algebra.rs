// The l and X functionals on the classical Poincaré datum: RLL identities,
// the K relation, pairings and the defining ideal, on words of length 1.

use cqtkit::inhomogeneous::InhomDatum;
use cqtkit::uea::uea_suite;

pub fn run_example() -> cqtkit::Result<()> {
    let d = InhomDatum::classical();
    let n0 = d.build_n0()?;
    let reports = uea_suite(&d, None, 1, Some(&n0))?;
    for r in &reports {
        println!("{r}");
    }
    assert!(cqtkit::report::all_passed(&reports));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
