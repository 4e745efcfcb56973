// Universal R-matrices on the classical Poincaré datum: the two signs k,
// and the conditions on c for the * structure and cotriangularity.

use cqtkit::inhomogeneous::{classify_poincare, poincare_ct, poincare_star, theorem_candidate, InhomDatum};
use cqtkit::report::all_passed;
use cqtkit::Gauss;

pub fn run_example() -> cqtkit::Result<()> {
    let d = InhomDatum::classical();
    let pc = classify_poincare(&d)?;
    for v in pc.verdicts.iter().filter(|v| v.cqt) {
        println!("{}  k = {:?}", v.label, v.k);
    }
    println!("{} CQT candidates", pc.cqt);
    assert_eq!(pc.cqt, 2);

    let cand = theorem_candidate(&d, 1, None)?;
    let two = Gauss::from_int(2);
    let one_plus_i = &Gauss::one() + &Gauss::i();
    for (name, c) in [("2", &two), ("1+i", &one_plus_i)] {
        println!("* at c = {name}: {}", all_passed(&poincare_star(&d, &cand, c)?));
    }
    for (name, c) in [("0", Gauss::zero()), ("3", Gauss::from_int(3))] {
        println!("CT at c = {name}: {}", all_passed(&poincare_ct(&d, &cand, &c)?));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
