// Intertwiner spaces of SL_q(2) found by saturating the defining relations.

use cqtkit::lorentz::SL2Datum;
use cqtkit::presentation::Saturation;

pub fn run_example() -> cqtkit::Result<()> {
    let p = SL2Datum::generic().presentation();
    let sat = Saturation::new(&p, 2, 3)?;
    let w = |n: usize| vec!["w".to_string(); n];
    for (s, d) in [(0, 2), (2, 0), (2, 2), (1, 1)] {
        println!("dim Mor(w^{s}, w^{d}) >= {}", sat.dim(&w(s), &w(d)));
    }
    for b in sat.basis(&w(2), &w(2)) {
        println!("{b}");
    }
    assert_eq!(sat.dim(&w(2), &w(2)), 2);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
