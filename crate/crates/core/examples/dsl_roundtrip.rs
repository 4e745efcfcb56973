// A datum file with a declared candidate: parse, print, parse again, and
// check the candidate along both code paths.

use cqtkit::cqt::{check_both_paths, check_cqt_conditions};
use cqtkit::presentation::{parse_document, Saturation};
use cqtkit::report::all_passed;

const TEXT: &str = "
field { var = t ; conj = real }
gen w : 2
mat E : [] -> [w w] { 2,1 = 1 ; 3,1 = -1 }
mat Ep : [w w] -> [] { 1,2 = -1 ; 1,3 = 1 }
rel E
rel Ep
cand w w = flip(2,2)
";

pub fn run_example() -> cqtkit::Result<()> {
    let doc = parse_document(TEXT)?;
    let printed = doc.to_text();
    println!("{printed}");
    assert_eq!(parse_document(&printed)?, doc);

    let p = doc.presentation();
    let c = doc.candidate();
    let sat = Saturation::for_presentation(&p, 2, 2)?;
    let reports = check_cqt_conditions(&p, &c, &sat)?;
    for r in &reports {
        println!("{r}");
    }
    assert!(all_passed(&reports));
    for a in check_both_paths(&p, &c, &sat)? {
        println!("{}: relation blocks {}/{}, homomorphisms {}/{}", a.generator, a.left, a.right, a.hom, a.anti);
        assert!(a.agrees());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
