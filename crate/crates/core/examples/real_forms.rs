// Which samples of q admit the SU_q(2) and SL_q(2,R) real forms.

use cqtkit::lorentz::{real_form_check, RealForm};
use cqtkit::Gauss;
use num_rational::BigRational;

pub fn run_example() -> cqtkit::Result<()> {
    // |q| = 1 with a square root in Q(i): ((3+4i)/5)^2
    let phase = Gauss::new(BigRational::new((-7).into(), 25.into()), BigRational::new(24.into(), 25.into()));
    let unitary = [
        ("1/2", Gauss::from_ratio(1, 2)),
        ("1", Gauss::one()),
        ("4", Gauss::from_int(4)),
        ("-1", Gauss::from_int(-1)),
        ("-4", Gauss::from_int(-4)),
    ];
    let real = [("1", Gauss::one()), ("-1", Gauss::from_int(-1)), ("(-7+24i)/25", phase)];
    for (form, samples) in [(RealForm::SuQ2, &unitary[..]), (RealForm::SlQ2R, &real[..])] {
        for (name, q) in samples {
            let r = real_form_check(form, q)?;
            println!("{:<10} q = {name:<12} {}", form.name(), r.status);
            assert_eq!(r.passed(), form == RealForm::SlQ2R && *name == "1" || form == RealForm::SuQ2 && !name.starts_with('-'));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
