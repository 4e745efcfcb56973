// The four R-matrix candidates for SL_q(2), at generic t and at the
// special points q = 1 and q = -1.

use cqtkit::lorentz::{classify_sl2, SL2Datum};
use cqtkit::{Gauss, Scalar, Tensor};

pub fn run_example() -> cqtkit::Result<()> {
    let d = SL2Datum::generic();
    for (label, at) in [("generic t", None), ("t = 1", Some(Gauss::one())), ("t = i", Some(Gauss::i()))] {
        let cl = classify_sl2(&d, at.as_ref())?;
        println!(
            "{label:>10}: {} distinct, {} CQT, {} CT",
            cl.tally.distinct, cl.tally.cqt, cl.tally.ct
        );
        assert_eq!(cl.tally.cqt, if at.is_none() { 4 } else { 2 });
    }

    // E is an eigenvector of L_1 with eigenvalue -t^-3
    let l1 = d.l(1)?;
    let t3 = Scalar::t().pow(-3)?;
    let lhs = l1.compose(&d.e)?;
    let rhs: Tensor = d.e.scale(&-&t3);
    assert_eq!(lhs, rhs);
    println!("L1 E = -t^-3 E");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
