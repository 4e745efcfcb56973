//! Checking a candidate family of R-blocks against a presentation.
//!
//! A family `R^{αβ}` defines a coquasitriangular structure exactly when the
//! unit blocks are trivial, every block is an intertwiner
//! `C^α ⊗ C^β → C^β ⊗ C^α`, and for every relation `W : s → d` and every
//! generator `γ` the word blocks satisfy
//!
//! ```text
//! (1 ⊗ W) R^{s,γ} = R^{d,γ} (W ⊗ 1)        R^{γ,d} (1 ⊗ W) = (W ⊗ 1) R^{γ,s}
//! ```
//!
//! The same conditions are equivalent to the relations being preserved by
//! the maps `w^α_{ij} ↦ [R^{αβ}_{(k,i),(j,l)}]_{kl}` (multiplicative) and
//! `w^δ_{ij} ↦ [R^{γδ}_{(i,k),(l,j)}]_{kl}` (anti-multiplicative); both code
//! paths are provided so they can be compared.

use rayon::prelude::*;

use crate::error::Result;
use crate::presentation::{CandidateR, FunctionalHom, GenLetter, Presentation, Saturation};
use crate::report::{all_passed, CheckReport, Status};
use crate::scalars::{ConjMode, Scalar};
use crate::tensor::{flatten_index, unflatten_index, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `R^{δ_1…δ_k, γ}`
    Left,
    /// `R^{γ, δ_1…δ_k}`
    Right,
}

fn id(n: usize) -> Tensor {
    Tensor::identity(&[n])
}

/// The block of a word against a single generator, built letter by letter:
/// `R^{δ_1…δ_{k+1},γ} = (R^{δ_1…δ_k,γ} ⊗ 1)(1 ⊗ R^{δ_{k+1}γ})` and
/// `R^{γ,δ_1…δ_{k+1}} = (1 ⊗ R^{γδ_{k+1}})(R^{γ,δ_1…δ_k} ⊗ 1)`.
pub fn word_r(
    p: &Presentation,
    c: &CandidateR,
    word: &[String],
    gamma: &str,
    side: Side,
) -> Result<Tensor> {
    let dg = p.dim(gamma)?;
    let mut acc = id(dg);
    let mut prefix = 1;
    for d in word {
        let dd = p.dim(d)?;
        acc = match side {
            Side::Left => {
                let last = c.block(d, gamma)?;
                acc.kron(&id(dd)).compose(&id(prefix).kron(last))?
            }
            Side::Right => {
                let last = c.block(gamma, d)?;
                id(prefix).kron(last).compose(&acc.kron(&id(dd)))?
            }
        };
        prefix *= dd;
    }
    Ok(acc)
}

/// Reports for the unit, relation and intertwiner conditions.
pub fn check_cqt_conditions(
    p: &Presentation,
    c: &CandidateR,
    sat: &Saturation,
) -> Result<Vec<CheckReport>> {
    let mut out = vec![CheckReport::pass("unit").with_detail("unit blocks are identities")];
    for r in &p.relations {
        let ns = p.word_size(&r.source)?;
        let nd = p.word_size(&r.target)?;
        for g in &p.generators {
            let dg = g.dim;
            let w = &r.matrix;
            let lhs = id(dg).kron(w).compose(&word_r(p, c, &r.source, &g.name, Side::Left)?)?;
            let rhs = word_r(p, c, &r.target, &g.name, Side::Left)?.compose(&w.kron(&id(dg)))?;
            out.push(CheckReport::compare(
                format!("left-relation/{}/{}", r.name, g.name),
                &lhs,
                &rhs,
            ));
            let lhs = word_r(p, c, &r.target, &g.name, Side::Right)?.compose(&id(dg).kron(w))?;
            let rhs = w.kron(&id(dg)).compose(&word_r(p, c, &r.source, &g.name, Side::Right)?)?;
            out.push(CheckReport::compare(
                format!("right-relation/{}/{}", r.name, g.name),
                &lhs,
                &rhs,
            ));
            debug_assert_eq!(lhs.rows(), nd * dg);
            debug_assert_eq!(lhs.cols(), ns * dg);
        }
    }
    for a in &p.generators {
        for b in &p.generators {
            let id_ = format!("intertwiner/{}/{}", a.name, b.name);
            let block = c.block(&a.name, &b.name)?;
            let src = vec![a.name.clone(), b.name.clone()];
            let dst = vec![b.name.clone(), a.name.clone()];
            out.push(if c.is_trusted(&a.name, &b.name) {
                CheckReport::pass(id_).with_detail("trusted")
            } else if sat.contains(&src, &dst, block) {
                CheckReport::pass(id_)
            } else {
                CheckReport::unwitnessed(
                    id_,
                    format!(
                        "not in the span saturated to depth {} ({} basis elements)",
                        sat.depth(),
                        sat.dim(&src, &dst)
                    ),
                )
            });
        }
    }
    Ok(out)
}

/// The multiplicative map `ℛ^β`: `[ℛ^β(w^α_{ij})]_{kl} = R^{αβ}_{(k,i),(j,l)}`.
/// For `beta = None` (the unit) it is the counit.
pub fn eval_hom(
    p: &Presentation,
    c: &CandidateR,
    beta: Option<&str>,
) -> Result<FunctionalHom<GenLetter>> {
    let db = beta.map_or(Ok(1), |b| p.dim(b))?;
    let mut h = FunctionalHom::new(db);
    for a in &p.generators {
        let da = a.dim;
        for i in 0..da {
            for j in 0..da {
                let v = match beta {
                    None => Tensor::scalar(if i == j { Scalar::one() } else { Scalar::zero() }),
                    Some(b) => {
                        let r = c.block(&a.name, b)?;
                        Tensor::from_fn(vec![db], vec![db], |k, l| {
                            r.get(flatten_index(&[db, da], &[k, i]), flatten_index(&[da, db], &[j, l]))
                                .clone()
                        })
                    }
                };
                h.set(GenLetter::new(&a.name, i, j), v);
            }
        }
    }
    Ok(h)
}

/// The anti-multiplicative map `φ^γ`: `[φ^γ(w^δ_{ij})]_{kl} = R^{γδ}_{(i,k),(l,j)}`.
pub fn eval_antihom(p: &Presentation, c: &CandidateR, gamma: &str) -> Result<FunctionalHom<GenLetter>> {
    let dg = p.dim(gamma)?;
    let mut h = FunctionalHom::new(dg);
    for d in &p.generators {
        let dd = d.dim;
        let r = c.block(gamma, &d.name)?;
        for i in 0..dd {
            for j in 0..dd {
                let v = Tensor::from_fn(vec![dg], vec![dg], |k, l| {
                    r.get(flatten_index(&[dd, dg], &[i, k]), flatten_index(&[dg, dd], &[l, j]))
                        .clone()
                });
                h.set(GenLetter::new(&d.name, i, j), v);
            }
        }
    }
    Ok(h)
}

/// Block matrix of `h` on the matrix elements of a word representation:
/// block `(J, K)` is `h(w^{s_1}_{j_1k_1} ⋯ w^{s_n}_{j_nk_n})`.
fn word_image(
    h: &FunctionalHom<GenLetter>,
    p: &Presentation,
    word: &[String],
    reversed: bool,
) -> Result<Tensor> {
    let legs = p.legs(word)?;
    let n: usize = legs.iter().product();
    let d = h.size();
    let mut out = Tensor::zeros(vec![n, d], vec![n, d]);
    for jf in 0..n {
        let js = unflatten_index(&legs, jf);
        for kf in 0..n {
            let ks = unflatten_index(&legs, kf);
            let letters: Vec<GenLetter> = word
                .iter()
                .zip(js.iter().zip(&ks))
                .map(|(g, (&j, &k))| GenLetter::new(g, j, k))
                .collect();
            let v = if reversed {
                h.eval_word_reversed(&letters)?
            } else {
                h.eval_word(&letters)?
            };
            for a in 0..d {
                for b in 0..d {
                    let x = v.get(a, b);
                    if !x.is_zero() {
                        out.set(jf * d + a, kf * d + b, x.clone());
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Applies `h` to both sides of every relation `Σ_J W_{IJ} s_{JK} = Σ_J d_{IJ} W_{JK}`.
pub fn check_relations_preserved(
    h: &FunctionalHom<GenLetter>,
    p: &Presentation,
    reversed: bool,
    label: &str,
) -> Result<Vec<CheckReport>> {
    let d = h.size();
    let mut out = Vec::new();
    for r in &p.relations {
        let src = word_image(h, p, &r.source, reversed)?;
        let dst = word_image(h, p, &r.target, reversed)?;
        let w = r.matrix.kron(&id(d));
        let lhs = w.compose(&src)?;
        let rhs = dst.compose(&w)?;
        out.push(CheckReport::compare(format!("preserved/{}/{label}", r.name), &lhs, &rhs));
    }
    Ok(out)
}

/// Outcome of both formulations for one generator `γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathAgreement {
    pub generator: String,
    /// The left relation blocks for `γ` all pass.
    pub left: bool,
    /// `ℛ^γ` preserves every relation.
    pub hom: bool,
    pub right: bool,
    /// The antihomomorphism for `γ` preserves every relation.
    pub anti: bool,
}

impl PathAgreement {
    pub fn agrees(&self) -> bool {
        self.left == self.hom && self.right == self.anti
    }
}

/// Both formulations for every generator, so callers can compare them.
pub fn check_both_paths(p: &Presentation, c: &CandidateR, sat: &Saturation) -> Result<Vec<PathAgreement>> {
    let cond = check_cqt_conditions(p, c, sat)?;
    let mut out = Vec::new();
    for g in &p.generators {
        let left_ok = cond
            .iter()
            .filter(|r| r.check_id.starts_with("left-relation/") && r.check_id.ends_with(&format!("/{}", g.name)))
            .all(CheckReport::passed);
        let right_ok = cond
            .iter()
            .filter(|r| r.check_id.starts_with("right-relation/") && r.check_id.ends_with(&format!("/{}", g.name)))
            .all(CheckReport::passed);
        let hom_ok = all_passed(&check_relations_preserved(
            &eval_hom(p, c, Some(&g.name))?,
            p,
            false,
            &g.name,
        )?);
        let anti_ok = all_passed(&check_relations_preserved(
            &eval_antihom(p, c, &g.name)?,
            p,
            true,
            &g.name,
        )?);
        out.push(PathAgreement {
            generator: g.name.clone(),
            left: left_ok,
            hom: hom_ok,
            right: right_ok,
            anti: anti_ok,
        });
    }
    Ok(out)
}

/// The ∗-compatibility `conj(R^{w̄v̄}_{(j,i),(l,k)}) = R^{vw}_{(i,j),(k,l)}` for
/// every pair of generators.
pub fn check_star(p: &Presentation, c: &CandidateR, mode: ConjMode) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for v in &p.generators {
        for w in &p.generators {
            let (dv, dw) = (v.dim, w.dim);
            let vb = p.conj_name(&v.name)?;
            let wb = p.conj_name(&w.name)?;
            let r = c.block(&v.name, &w.name)?;
            let rb = c.block(wb, vb)?;
            let expected = Tensor::from_fn(vec![dw, dv], vec![dv, dw], |row, col| {
                let (i, j) = (row / dv, row % dv);
                let (k, l) = (col / dw, col % dw);
                rb.get(j * dw + i, l * dv + k).conjugate(mode)
            });
            out.push(CheckReport::compare(
                format!("star/{}/{}", v.name, w.name),
                r,
                &expected,
            ));
        }
    }
    Ok(out)
}

/// Cotriangularity `(R^{vw})^{-1} = R^{wv}`, checked as `R^{vw} R^{wv} = 1`.
pub fn check_ct(p: &Presentation, c: &CandidateR) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for v in &p.generators {
        for w in &p.generators {
            let prod = c.block(&v.name, &w.name)?.compose(c.block(&w.name, &v.name)?)?;
            let one = Tensor::identity(&[prod.rows()]);
            out.push(CheckReport::compare(format!("ct/{}/{}", v.name, w.name), &prod, &one));
        }
    }
    Ok(out)
}

/// The braid relation `(R ⊗ 1)(1 ⊗ R)(R ⊗ 1) = (1 ⊗ R)(R ⊗ 1)(1 ⊗ R)` for
/// `R` on `C^d ⊗ C^d`.
pub fn check_braid(id_: impl Into<String>, r: &Tensor, d: usize) -> Result<CheckReport> {
    let r1 = r.kron(&id(d));
    let r2 = id(d).kron(r);
    let lhs = Tensor::chain(&[&r1, &r2, &r1])?;
    let rhs = Tensor::chain(&[&r2, &r1, &r2])?;
    Ok(CheckReport::compare(id_, &lhs, &rhs))
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub label: String,
    /// Index of an earlier identical candidate, when this one repeats it.
    pub duplicate_of: Option<usize>,
    pub cqt: bool,
    pub star: bool,
    pub ct: bool,
    pub reports: Vec<CheckReport>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub total: usize,
    pub distinct: usize,
    pub cqt: usize,
    pub cqt_star: usize,
    pub ct: usize,
    pub ct_star: usize,
    pub unwitnessed: usize,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub verdicts: Vec<Verdict>,
    pub tally: Tally,
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub star: bool,
    pub mode: ConjMode,
}

/// Runs every check on each distinct member of `family` and tallies the
/// CQT, ∗-compatible and cotriangular members. The ∗ and CT tallies only
/// count members that are CQT.
pub fn classify(
    p: &Presentation,
    family: &[(String, CandidateR)],
    sat: &Saturation,
    opts: ClassifyOptions,
) -> Result<Classification> {
    let duplicates: Vec<Option<usize>> = (0..family.len())
        .map(|i| (0..i).find(|&j| family[j].1.same_values(&family[i].1)))
        .collect();
    let verdicts = family
        .par_iter()
        .zip(duplicates.par_iter())
        .map(|((label, c), dup)| -> Result<Verdict> {
            if dup.is_some() {
                return Ok(Verdict {
                    label: label.clone(),
                    duplicate_of: *dup,
                    cqt: false,
                    star: false,
                    ct: false,
                    reports: vec![],
                });
            }
            let mut reports = check_cqt_conditions(p, c, sat)?;
            let cqt = all_passed(&reports);
            let star_reports = if opts.star {
                check_star(p, c, opts.mode)?
            } else {
                vec![]
            };
            let star = opts.star && all_passed(&star_reports);
            let ct_reports = check_ct(p, c)?;
            let ct = all_passed(&ct_reports);
            reports.extend(star_reports);
            reports.extend(ct_reports);
            Ok(Verdict {
                label: label.clone(),
                duplicate_of: None,
                cqt,
                star,
                ct,
                reports,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut tally = Tally {
        total: family.len(),
        ..Tally::default()
    };
    for v in verdicts.iter().filter(|v| v.duplicate_of.is_none()) {
        tally.distinct += 1;
        if v.reports.iter().any(|r| r.status == Status::Unwitnessed) {
            tally.unwitnessed += 1;
        }
        if v.cqt {
            tally.cqt += 1;
            tally.cqt_star += usize::from(v.star);
            tally.ct += usize::from(v.ct);
            tally.ct_star += usize::from(v.ct && v.star);
        }
    }
    Ok(Classification { verdicts, tally })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_document;

    fn commutative() -> (Presentation, CandidateR) {
        let doc = parse_document(
            "gen w : 2
             mat E : [] -> [w w] { 2,1 = 1 ; 3,1 = -1 }
             mat Ep : [w w] -> [] { 1,2 = -1 ; 1,3 = 1 }
             rel E
             rel Ep
             cand w w = flip(2,2)",
        )
        .unwrap();
        (doc.presentation(), doc.candidate())
    }

    #[test]
    fn word_blocks() {
        let (p, c) = commutative();
        let w = vec!["w".to_string()];
        assert!(word_r(&p, &c, &[], "w", Side::Left).unwrap().is_identity());
        assert_eq!(word_r(&p, &c, &w, "w", Side::Left).unwrap().entries(), Tensor::flip(2, 2).entries());
        let ww = vec!["w".to_string(), "w".to_string()];
        let cyc = Tensor::flip(2, 2)
            .kron(&id(2))
            .compose(&id(2).kron(&Tensor::flip(2, 2)))
            .unwrap();
        assert_eq!(word_r(&p, &c, &ww, "w", Side::Left).unwrap(), cyc);
    }

    #[test]
    fn flip_family_passes_everything() {
        let (p, c) = commutative();
        let sat = Saturation::for_presentation(&p, 2, 2).unwrap();
        assert!(all_passed(&check_cqt_conditions(&p, &c, &sat).unwrap()));
        assert!(all_passed(&check_ct(&p, &c).unwrap()));
        for a in check_both_paths(&p, &c, &sat).unwrap() {
            assert!(a.left && a.hom && a.right && a.anti);
        }
        let unit = eval_hom(&p, &c, None).unwrap();
        assert!(all_passed(&check_relations_preserved(&unit, &p, false, "1").unwrap()));
        assert!(unit.eval_word(&[]).unwrap().is_identity());
    }
}
