// The 64 candidates for the quantum Lorentz datum with X = flip, and the
// rejection of beta = i.

use cqtkit::lorentz::{classify_lorentz, make_lorentz, LorentzDatum, SL2Datum};
use cqtkit::{ConjMode, Error, Gauss, Scalar, Tensor};

pub fn run_example() -> cqtkit::Result<()> {
    let d = LorentzDatum::flip(SL2Datum::generic())?;
    let lc = classify_lorentz(&d, Some(&Gauss::one()))?;
    let t = lc.classification.tally;
    println!("t = 1: CQT {}  CQT* {}  CT {}  CT* {}", t.cqt, t.cqt_star, t.ct, t.ct_star);
    println!("reference: CQT {}  CT {}", lc.reference.cqt, lc.reference.ct);
    for line in &lc.divergences {
        println!("divergence: {line}");
    }
    assert_eq!((t.cqt, t.cqt_star, t.ct, t.ct_star), (16, 8, 8, 4));

    let at_one = SL2Datum::generic().eval_at(&Gauss::one())?;
    match make_lorentz(at_one, Tensor::flip(2, 2), Scalar::i(), ConjMode::Real) {
        Err(Error::AxiomViolation { axiom, witness }) => println!("beta = i rejected by {axiom}: {witness}"),
        other => panic!("beta = i accepted: {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
