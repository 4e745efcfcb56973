//! SL_q(2) and quantum Lorentz data, their candidate R-blocks and the
//! classification of CQT, ∗-compatible and cotriangular structures.
//!
//! `t` plays the role of `q^{1/2}`. The Lorentz generators are `w` and its
//! conjugate `wb`, with relations
//!
//! ```text
//! E : [] -> [w w]      Ep : [w w] -> []      X : [w wb] -> [wb w]
//! Et : [] -> [wb wb]   Etp : [wb wb] -> []   Et = τĒ, Etp = Ē′τ
//! ```

use std::fmt;

use crate::cqt::{classify, ClassifyOptions, Classification, Tally};
use crate::error::{Error, Result};
use crate::presentation::{
    CandidateR, Document, GeneratorSpec, Presentation, Relation, Saturation, DEFAULT_DEPTH,
};
use crate::report::CheckReport;
use crate::scalars::{ConjMode, Gauss, SamplePoint, Scalar};
use crate::tensor::Tensor;

pub const W: &str = "w";
pub const WB: &str = "wb";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SL2Datum {
    pub q: Scalar,
    pub t: Scalar,
    /// Column on `C^2 ⊗ C^2`.
    pub e: Tensor,
    /// Row on `C^2 ⊗ C^2`.
    pub ep: Tensor,
    pub case: u8,
}

fn witness_of(defect: &Tensor) -> String {
    match defect.first_nonzero() {
        Some((idx, v)) => {
            let idx: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            format!("defect at ({}) = {v}", idx.join(","))
        }
        None => "zero defect".into(),
    }
}

fn square_root(q: &Scalar) -> Option<Scalar> {
    if *q == Scalar::q() {
        return Some(Scalar::t());
    }
    q.as_constant()?.sqrt().map(Scalar::from_gauss)
}

/// `E = e_1⊗e_2 − q e_2⊗e_1` (case 1) or `E = e_1⊗e_2 − e_2⊗e_1 + e_1⊗e_1`
/// (case 2, `q = 1`); `E′` is the inverse of `E` read as a 2×2 matrix.
pub fn make_sl2(q: Scalar, case: u8) -> Result<SL2Datum> {
    let (e, ep) = match case {
        1 => {
            if q.is_zero() {
                return Err(Error::ForbiddenParameter("q = 0".into()));
            }
            if (&q * &q + Scalar::one()).is_zero() {
                return Err(Error::ForbiddenParameter(format!("q = {q} makes E′E vanish")));
            }
            let qi = q.inv().ok_or(Error::DivisionByZero)?;
            (
                Tensor::column(vec![2, 2], vec![Scalar::zero(), Scalar::one(), -&q, Scalar::zero()])?,
                Tensor::row(vec![2, 2], vec![Scalar::zero(), -&qi, Scalar::one(), Scalar::zero()])?,
            )
        }
        2 => {
            if !q.is_one() {
                return Err(Error::ForbiddenParameter(format!(
                    "the second form of E needs q = 1, got {q}"
                )));
            }
            (
                Tensor::column(vec![2, 2], [1, 1, -1, 0].map(Scalar::from_int).to_vec())?,
                Tensor::row(vec![2, 2], [0, -1, 1, 1].map(Scalar::from_int).to_vec())?,
            )
        }
        _ => return Err(Error::ForbiddenParameter(format!("case {case}"))),
    };
    let t = square_root(&q).ok_or_else(|| {
        Error::ForbiddenParameter(format!("q = {q} has no square root in the field"))
    })?;
    Ok(SL2Datum { q, t, e, ep, case })
}

impl SL2Datum {
    /// Generic `q = t²`, first form of `E`.
    pub fn generic() -> SL2Datum {
        make_sl2(Scalar::q(), 1).expect("generic datum")
    }

    /// Recognises which form `E` has and rebuilds the datum from it.
    pub fn from_e(e: &Tensor) -> Result<SL2Datum> {
        let v = e.entries();
        if v.len() != 4 {
            return Err(Error::Shape(format!("E must have 4 entries, got {}", v.len())));
        }
        let int = |n: i64| Scalar::from_int(n);
        if v == [int(1), int(1), int(-1), int(0)] {
            return make_sl2(Scalar::one(), 2);
        }
        if v[0].is_zero() && v[1].is_one() && v[3].is_zero() {
            return make_sl2(-&v[2], 1);
        }
        Err(Error::AxiomViolation {
            axiom: "e-form".into(),
            witness: "E is neither e1⊗e2 − q e2⊗e1 nor e1⊗e2 − e2⊗e1 + e1⊗e1".into(),
        })
    }

    pub fn eval_at(&self, t: &Gauss) -> Result<SL2Datum> {
        Ok(SL2Datum {
            q: self.q.eval_scalar(t)?,
            t: self.t.eval_scalar(t)?,
            e: self.e.eval_at(t)?,
            ep: self.ep.eval_at(t)?,
            case: self.case,
        })
    }

    /// `q_1 = t, q_2 = −t, q_3 = t^{-1}, q_4 = −t^{-1}`.
    pub fn q_i(&self, i: usize) -> Result<Scalar> {
        let ti = self.t.inv().ok_or(Error::DivisionByZero)?;
        Ok(match i {
            1 => self.t.clone(),
            2 => -&self.t,
            3 => ti,
            4 => -&ti,
            _ => return Err(Error::ForbiddenParameter(format!("L index {i}"))),
        })
    }

    /// `L_i = q_i (1 + q_i^{-2} E E′)`.
    pub fn l(&self, i: usize) -> Result<Tensor> {
        let qi = self.q_i(i)?;
        let qi2 = qi.pow(-2)?;
        let eep = self.e.compose(&self.ep)?;
        Ok(Tensor::identity(&[2, 2]).add(&eep.scale(&qi2))?.scale(&qi))
    }

    pub fn presentation(&self) -> Presentation {
        Presentation {
            generators: vec![GeneratorSpec {
                name: W.into(),
                dim: 2,
                conj: W.into(),
            }],
            relations: vec![
                relation("E", &self.e, &[], &[W, W]),
                relation("Ep", &self.ep, &[W, W], &[]),
            ],
            mode: ConjMode::Real,
        }
    }

    /// `(E′ ⊗ 1)(1 ⊗ E) = 1`, `(1 ⊗ E′)(E ⊗ 1) = 1` and `E′E ≠ 0`.
    pub fn check_axioms(&self) -> Result<Vec<CheckReport>> {
        let one = Tensor::identity(&[2]);
        let left = self.ep.kron(&one).compose(&one.kron(&self.e))?;
        let right = one.kron(&self.ep).compose(&self.e.kron(&one))?;
        let contraction = self.ep.compose(&self.e)?;
        Ok(vec![
            CheckReport::compare("e-inverse-left", &left, &one),
            CheckReport::compare("e-inverse-right", &right, &one),
            if contraction.is_zero() {
                CheckReport::fail("e-nondegenerate", "E′E = 0")
            } else {
                CheckReport::pass("e-nondegenerate").with_detail(format!("E′E = {}", contraction.get(0, 0)))
            },
        ])
    }
}

fn relation(name: &str, m: &Tensor, source: &[&str], target: &[&str]) -> Relation {
    Relation {
        name: name.into(),
        matrix: m.clone(),
        source: source.iter().map(|s| s.to_string()).collect(),
        target: target.iter().map(|s| s.to_string()).collect(),
    }
}

fn sl2_family(d: &SL2Datum) -> Result<Vec<(String, CandidateR)>> {
    (1..=4)
        .map(|i| Ok((format!("L{i}"), CandidateR::new().with(W, W, d.l(i)?))))
        .collect()
}

/// Runs the four candidates `R^{ww} = L_i`, at `t = at` when given.
pub fn classify_sl2(d: &SL2Datum, at: Option<&Gauss>) -> Result<Classification> {
    let d = match at {
        Some(t) => d.eval_at(t)?,
        None => d.clone(),
    };
    let p = d.presentation();
    let sat = Saturation::for_presentation(&p, 2, DEFAULT_DEPTH)?;
    classify(
        &p,
        &sl2_family(&d)?,
        &sat,
        ClassifyOptions {
            star: false,
            mode: ConjMode::Real,
        },
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LorentzDatum {
    pub base: SL2Datum,
    pub x: Tensor,
    pub beta: Scalar,
    pub mode: ConjMode,
    /// `τĒ`
    pub et: Tensor,
    /// `Ē′τ`
    pub etp: Tensor,
}

fn axiom(name: &str, witness: String) -> Error {
    Error::AxiomViolation {
        axiom: name.into(),
        witness,
    }
}

/// Validates `(X ⊗ 1)(1 ⊗ X)(E ⊗ 1) = 1 ⊗ E`, `τX̄τ = β^{-1}X`, invertibility
/// of `X`, `E′E ≠ 0` and `β⁴ = 1`, then derives the conjugate pair.
pub fn make_lorentz(base: SL2Datum, x: Tensor, beta: Scalar, mode: ConjMode) -> Result<LorentzDatum> {
    let x = x.with_legs(vec![2, 2], vec![2, 2])?;
    let one = Tensor::identity(&[2]);
    let lhs = Tensor::chain(&[&x.kron(&one), &one.kron(&x), &base.e.kron(&one)])?;
    let defect = lhs.sub(&one.kron(&base.e))?;
    if !defect.is_zero() {
        return Err(axiom("x-moves-e", witness_of(&defect)));
    }
    let beta_inv = beta.inv().ok_or_else(|| axiom("beta-fourth-root", "β = 0".into()))?;
    let defect = x.tauconj(mode)?.sub(&x.scale(&beta_inv))?;
    if !defect.is_zero() {
        return Err(axiom("x-conjugation", witness_of(&defect)));
    }
    if let Err(Error::NotInvertible { witness }) = x.inverse() {
        return Err(axiom("x-invertible", format!("kernel vector {witness}")));
    }
    if base.ep.compose(&base.e)?.is_zero() {
        return Err(axiom("e-nondegenerate", "E′E = 0".into()));
    }
    if !beta.pow(4)?.is_one() {
        return Err(axiom("beta-fourth-root", format!("β = {beta}")));
    }
    let tau = Tensor::flip(2, 2);
    let et = tau.compose(&base.e.conj(mode))?.with_legs(vec![2, 2], vec![])?;
    let etp = base.ep.conj(mode).compose(&tau)?.with_legs(vec![], vec![2, 2])?;
    Ok(LorentzDatum {
        base,
        x,
        beta,
        mode,
        et,
        etp,
    })
}

/// Which way the enumeration was run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsSign {
    Plus,
    Minus,
}

impl EpsSign {
    pub const BOTH: [EpsSign; 2] = [EpsSign::Plus, EpsSign::Minus];

    pub fn scalar(self) -> Scalar {
        match self {
            EpsSign::Plus => Scalar::one(),
            EpsSign::Minus => Scalar::from_int(-1),
        }
    }
}

impl fmt::Display for EpsSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsSign::Plus => "+",
            EpsSign::Minus => "-",
        })
    }
}

impl LorentzDatum {
    /// The flip datum: `X = τ`, `β = 1`, real conjugation.
    pub fn flip(base: SL2Datum) -> Result<LorentzDatum> {
        make_lorentz(base, Tensor::flip(2, 2), Scalar::one(), ConjMode::Real)
    }

    /// Reads `E`, `X` and optionally `beta` from a datum file. If the file
    /// also declares `Ep`, `Et` or `Etp` they must agree with the derived ones.
    pub fn from_document(doc: &Document) -> Result<LorentzDatum> {
        let need = |n: &str| {
            doc.mat(n)
                .map(|m| m.tensor.clone())
                .ok_or_else(|| Error::UnknownName {
                    name: n.into(),
                    line: 0,
                    col: 0,
                })
        };
        let base = SL2Datum::from_e(&need("E")?)?;
        let beta = doc.param("beta").cloned().unwrap_or_else(Scalar::one);
        let d = make_lorentz(base, need("X")?, beta, doc.mode)?;
        for (name, derived) in [("Ep", &d.base.ep), ("Et", &d.et), ("Etp", &d.etp)] {
            if let Some(m) = doc.mat(name) {
                if m.tensor.entries() != derived.entries() {
                    return Err(axiom(
                        "derived-matrix",
                        format!("`{name}` differs from the matrix derived from E"),
                    ));
                }
            }
        }
        Ok(d)
    }

    /// Evaluates `E`, `X`, `β` at `t` and derives the conjugate pair from
    /// the evaluated values.
    pub fn eval_at(&self, t: &Gauss) -> Result<LorentzDatum> {
        make_lorentz(
            self.base.eval_at(t)?,
            self.x.eval_at(t)?,
            self.beta.eval_scalar(t)?,
            self.mode,
        )
    }

    pub fn presentation(&self) -> Presentation {
        let gen = |name: &str, conj: &str| GeneratorSpec {
            name: name.into(),
            dim: 2,
            conj: conj.into(),
        };
        Presentation {
            generators: vec![gen(W, WB), gen(WB, W)],
            relations: vec![
                relation("E", &self.base.e, &[], &[W, W]),
                relation("Ep", &self.base.ep, &[W, W], &[]),
                relation("Et", &self.et, &[], &[WB, WB]),
                relation("Etp", &self.etp, &[WB, WB], &[]),
                relation("X", &self.x, &[W, WB], &[WB, W]),
            ],
            mode: self.mode,
        }
    }
}

/// `R^{ww} = L_i`, `R^{w̄w̄} = τ conj(L_j^{-1}) τ`, `R^{ww̄} = ε_X X`,
/// `R^{w̄w} = ε′_X X^{-1}`.
pub fn candidate_blocks(
    d: &LorentzDatum,
    i: usize,
    j: usize,
    eps_x: EpsSign,
    eps_xp: EpsSign,
) -> Result<CandidateR> {
    let lj_inv = d.base.l(j)?.inverse()?;
    Ok(CandidateR::new()
        .with(W, W, d.base.l(i)?)
        .with(WB, WB, lj_inv.tauconj(d.mode)?)
        .with(W, WB, d.x.scale(&eps_x.scalar()))
        .with(WB, W, d.x.inverse()?.scale(&eps_xp.scalar())))
}

pub fn lorentz_family(d: &LorentzDatum) -> Result<Vec<(String, CandidateR)>> {
    let mut out = Vec::with_capacity(64);
    for i in 1..=4 {
        for j in 1..=4 {
            for ex in EpsSign::BOTH {
                for exp in EpsSign::BOTH {
                    out.push((
                        format!("i={i} j={j} eX={ex} eX'={exp}"),
                        candidate_blocks(d, i, j, ex, exp)?,
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Counts the enumeration is expected to produce for a datum admissible in
/// the sense of the Lorentz group classification.
pub fn reference_counts(q: &Scalar, beta: &Scalar) -> Tally {
    let c = |n: i64| Scalar::from_int(n);
    let q_is_one = *q == c(1);
    let q_pm_one = q_is_one || *q == c(-1);
    let beta_one = *beta == c(1);
    let beta_real = beta_one || *beta == c(-1);
    let cqt = match (beta_real, q_pm_one) {
        (false, _) => 0,
        (true, true) => 16,
        (true, false) => 64,
    };
    let cqt_star = match (beta_one, q_pm_one) {
        (false, _) => 0,
        (true, true) => 8,
        (true, false) => 16,
    };
    let ct = if q_is_one && beta_real { 8 } else { 0 };
    let ct_star = if q_is_one && beta_one { 4 } else { 0 };
    Tally {
        total: 64,
        distinct: if q_pm_one { 16 } else { 64 },
        cqt,
        cqt_star,
        ct,
        ct_star,
        unwitnessed: 0,
    }
}

#[derive(Clone, Debug)]
pub struct LorentzClassification {
    pub classification: Classification,
    pub reference: Tally,
    /// One line per tally that differs from the reference.
    pub divergences: Vec<String>,
}

/// Enumerates all 64 candidates (at `t = at` when given) and compares the
/// tallies with [`reference_counts`].
pub fn classify_lorentz(d: &LorentzDatum, at: Option<&Gauss>) -> Result<LorentzClassification> {
    let d = match at {
        Some(t) => d.eval_at(t)?,
        None => d.clone(),
    };
    let p = d.presentation();
    let sat = Saturation::for_presentation(&p, 2, DEFAULT_DEPTH)?;
    let classification = classify(
        &p,
        &lorentz_family(&d)?,
        &sat,
        ClassifyOptions {
            star: true,
            mode: d.mode,
        },
    )?;
    let reference = reference_counts(&d.base.q, &d.beta);
    let got = classification.tally;
    let mut divergences = Vec::new();
    for (name, a, b) in [
        ("CQT", got.cqt, reference.cqt),
        ("CQT*", got.cqt_star, reference.cqt_star),
        ("CT", got.ct, reference.ct),
        ("CT*", got.ct_star, reference.ct_star),
    ] {
        if a != b {
            divergences.push(format!("{name}: computed {a}, reference {b}"));
        }
    }
    Ok(LorentzClassification {
        classification,
        reference,
        divergences,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealForm {
    /// `w̄ = w^c`, `B = 1`
    SuQ2,
    /// `w̄ = v^c`, `v = BwB^{-1}`, `B = diag(1,−1)`
    SuQ11,
    /// `w̄ = w`, `|q| = 1`
    SlQ2R,
}

impl RealForm {
    pub const ALL: [RealForm; 3] = [RealForm::SuQ2, RealForm::SuQ11, RealForm::SlQ2R];

    pub fn name(self) -> &'static str {
        match self {
            RealForm::SuQ2 => "SU_q(2)",
            RealForm::SuQ11 => "SU_q(1,1)",
            RealForm::SlQ2R => "SL_q(2,R)",
        }
    }

    fn check_id(self) -> String {
        match self {
            RealForm::SuQ2 | RealForm::SuQ11 => format!("hermitian-l1/{}", self.name()),
            RealForm::SlQ2R => format!("tau-conjugate-l1/{}", self.name()),
        }
    }
}

/// The entry the form compares with `L_1[r][c]`: `conj(L_1[c][r])` for the
/// unitary forms, `conj(L_1[τr][τc])` for the real form.
fn partner(form: RealForm, r: usize, c: usize) -> (usize, usize) {
    let swap = |k: usize| (k % 2) * 2 + k / 2;
    match form {
        RealForm::SuQ2 | RealForm::SuQ11 => (c, r),
        RealForm::SlQ2R => (swap(r), swap(c)),
    }
}

/// Tests the ∗-compatibility criterion of a real form on `L_1` at the
/// sample `q`: hermiticity for the unitary forms, `τL̄_1τ = L_1` for the
/// real form. Values at irrational `√q` are computed exactly.
pub fn real_form_check(form: RealForm, q: &Gauss) -> Result<CheckReport> {
    let sample = SamplePoint::from_q(q.clone())?;
    let l1 = SL2Datum::generic().l(1)?;
    let id_ = format!("{}@q={q}", form.check_id());
    for r in 0..4 {
        for c in 0..4 {
            let (pr, pc) = partner(form, r, c);
            let lhs = sample.eval(l1.get(r, c))?;
            let rhs = sample.eval(l1.get(pr, pc))?.conj();
            if lhs != rhs {
                let da = &lhs.a - &rhs.a;
                let db = &lhs.b - &rhs.b;
                let mut report = CheckReport::fail(
                    id_,
                    format!(
                        "entry ({},{}) differs from its partner ({},{}) at {sample}",
                        r + 1,
                        c + 1,
                        pr + 1,
                        pc + 1
                    ),
                );
                report.witness = Some(crate::report::Witness {
                    index: vec![r, c],
                    value: if db.is_zero() {
                        Scalar::from_gauss(da)
                    } else {
                        Scalar::from_gauss(db)
                    },
                });
                return Ok(report);
            }
        }
    }
    Ok(CheckReport::pass(id_).with_detail(format!("at {sample}")))
}

/// The same criterion with `t` symbolic: real conjugation for the unitary
/// forms, unimodular conjugation for the real form.
pub fn real_form_symbolic(form: RealForm) -> Result<CheckReport> {
    let l1 = SL2Datum::generic().l(1)?;
    let expected = match form {
        RealForm::SuQ2 | RealForm::SuQ11 => l1.adjoint(ConjMode::Real),
        RealForm::SlQ2R => l1.tauconj(ConjMode::Unimodular)?,
    };
    Ok(CheckReport::compare(format!("{}@symbolic", form.check_id()), &expected, &l1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqt::{check_braid, check_cqt_conditions, check_star};
    use crate::report::all_passed;

    fn g(n: i64) -> Gauss {
        Gauss::from_int(n)
    }

    #[test]
    fn e_and_ep() {
        let d = SL2Datum::generic();
        let q = Scalar::q();
        assert_eq!(d.e.entries()[2], -&q);
        assert_eq!(d.ep.entries()[1], -q.inv().unwrap());
        let c = d.ep.compose(&d.e).unwrap();
        assert_eq!(c.get(0, 0), &(-&q - q.inv().unwrap()));
        assert!(all_passed(&d.check_axioms().unwrap()));
        let d2 = make_sl2(Scalar::one(), 2).unwrap();
        assert!(all_passed(&d2.check_axioms().unwrap()));
        assert!(make_sl2(Scalar::i(), 1).is_err());
        assert!(make_sl2(Scalar::zero(), 1).is_err());
        assert!(make_sl2(Scalar::q(), 2).is_err());
    }

    #[test]
    fn l1_entries() {
        let d = SL2Datum::generic();
        let l1 = d.l(1).unwrap();
        let t = Scalar::t();
        let ti = t.inv().unwrap();
        let expect = [
            [t.clone(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
            [Scalar::zero(), &t - &t.pow(-3).unwrap(), ti.clone(), Scalar::zero()],
            [Scalar::zero(), ti, Scalar::zero(), Scalar::zero()],
            [Scalar::zero(), Scalar::zero(), Scalar::zero(), t],
        ];
        for (r, row) in expect.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_eq!(l1.get(r, c), v, "entry {r},{c}");
            }
        }
        assert_eq!(l1.eval_at(&g(1)).unwrap(), Tensor::flip(2, 2));
        for i in 1..=4 {
            assert!(check_braid("braid", &d.l(i).unwrap(), 2).unwrap().passed());
        }
        // q_1 q_3 = 1 and q_1 q_4 = −1
        assert!(l1.compose(&d.l(3).unwrap()).unwrap().is_identity());
        assert!(l1.compose(&d.l(4).unwrap()).unwrap().scale(&Scalar::from_int(-1)).is_identity());
    }

    #[test]
    fn sl2_counts() {
        let d = SL2Datum::generic();
        let c = classify_sl2(&d, None).unwrap().tally;
        assert_eq!((c.cqt, c.ct), (4, 0));
        let c = classify_sl2(&d, Some(&g(1))).unwrap().tally;
        assert_eq!((c.distinct, c.cqt, c.ct), (2, 2, 2));
        let c = classify_sl2(&d, Some(&Gauss::i())).unwrap().tally;
        assert_eq!((c.distinct, c.cqt, c.ct), (2, 2, 0));
    }

    #[test]
    fn scaled_candidate_fails() {
        let d = SL2Datum::generic();
        let p = d.presentation();
        let sat = Saturation::for_presentation(&p, 2, DEFAULT_DEPTH).unwrap();
        let c = CandidateR::new().with(W, W, d.l(1).unwrap().scale(&Scalar::from_int(2)));
        let reports = check_cqt_conditions(&p, &c, &sat).unwrap();
        let bad = reports.iter().find(|r| r.check_id == "left-relation/E/w").unwrap();
        assert!(!bad.passed());
        assert!(bad.witness.as_ref().is_some_and(|w| !w.value.is_zero()));
    }

    #[test]
    fn lorentz_axioms() {
        let base = SL2Datum::generic();
        assert!(LorentzDatum::flip(base.clone()).is_ok());
        let e = make_lorentz(base.clone(), Tensor::flip(2, 2).scale(&Scalar::from_int(2)), Scalar::one(), ConjMode::Real)
            .unwrap_err();
        assert!(matches!(e, Error::AxiomViolation { ref axiom, .. } if axiom == "x-moves-e"));
        let e = make_lorentz(base, Tensor::flip(2, 2), Scalar::i(), ConjMode::Real).unwrap_err();
        assert!(matches!(e, Error::AxiomViolation { ref axiom, .. } if axiom == "x-conjugation"));
    }

    #[test]
    fn e_spans_an_eigenline_of_l1() {
        let d = SL2Datum::generic();
        let l1 = d.l(1).unwrap();
        let t = Scalar::t();
        let shift = |v: &Scalar| l1.sub(&Tensor::identity(&[2, 2]).scale(v)).unwrap();
        let minus_t3 = -t.pow(-3).unwrap();
        let line = shift(&minus_t3).nullspace();
        assert_eq!(line.len(), 1);
        assert_eq!(line[0].rank(), 1);
        assert!(shift(&minus_t3).compose(&d.e).unwrap().is_zero());
        let plane = shift(&t).nullspace();
        assert_eq!(plane.len(), 3);
        for v in &plane {
            assert!(d.ep.compose(v).unwrap().is_zero());
        }
        assert!(!shift(&t).compose(&d.e).unwrap().is_zero());
    }

    #[test]
    fn star_on_self_conjugate_generator() {
        use crate::presentation::parse_document;
        let doc = parse_document(
            "gen w : 2
             mat E : [] -> [w w] { 2,1 = 1 ; 3,1 = -q }
             rel E",
        )
        .unwrap();
        let p = doc.presentation();
        let sym = Tensor::from_ints(vec![2, 2], vec![2, 2], &[2, 0, 0, 0, 0, 1, 3, 0, 0, 3, 1, 0, 0, 0, 0, 2]).unwrap();
        let c = CandidateR::new().with(W, W, sym);
        assert!(all_passed(&check_star(&p, &c, ConjMode::Real).unwrap()));
        let l1 = SL2Datum::generic().eval_at(&g(2)).unwrap().l(1).unwrap();
        let c = CandidateR::new().with(W, W, l1);
        let star = check_star(&p, &c, ConjMode::Real).unwrap();
        assert!(star[0].witness.is_some());
    }

    #[test]
    fn lorentz_at_one() {
        let d = LorentzDatum::flip(SL2Datum::generic()).unwrap();
        let r = classify_lorentz(&d, Some(&g(1))).unwrap();
        let t = r.classification.tally;
        assert_eq!((t.distinct, t.cqt, t.cqt_star, t.ct, t.ct_star), (16, 16, 8, 8, 4));
        assert!(r.divergences.is_empty(), "{:?}", r.divergences);
    }

    #[test]
    fn real_forms() {
        for q in [Gauss::from_ratio(1, 2), g(1), g(4)] {
            assert!(real_form_check(RealForm::SuQ2, &q).unwrap().passed());
            assert!(real_form_check(RealForm::SuQ11, &q).unwrap().passed());
        }
        for q in [g(-1), g(-4)] {
            assert!(!real_form_check(RealForm::SuQ2, &q).unwrap().passed());
        }
        assert!(real_form_check(RealForm::SlQ2R, &g(1)).unwrap().passed());
        let phase = Gauss::new(
            num_rational::BigRational::new((-7).into(), 25.into()),
            num_rational::BigRational::new(24.into(), 25.into()),
        );
        for q in [g(-1), phase] {
            assert!(!real_form_check(RealForm::SlQ2R, &q).unwrap().passed());
        }
        assert!(!real_form_symbolic(RealForm::SlQ2R).unwrap().passed());
        assert!(real_form_symbolic(RealForm::SuQ2).unwrap().passed());
    }
}
