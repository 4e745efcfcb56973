//! Inhomogeneous quantum groups built over a homogeneous one with a
//! distinguished representation `Λ` of dimension `N`.
//!
//! The Λ-level data are `R = G_Λ`, `Z = H_Λ` and `T`, with
//! `(G_w)_{iC,Dj} = f_{ij}(w_{CD})` and `(H_w)_{iC,D} = η_i(w_{CD})`.
//! The representation `P = Λ ⊕ 1` carries indices `0..N` then `+ = N`.
//! A datum is either Lorentz-backed, where everything is derived from
//! `E`, `E′`, `X` through the Pauli matrices, or abstract, where `R`, `Z`,
//! `T` and optional representation tables are given directly.

use std::collections::BTreeMap;

use crate::cqt::{check_cqt_conditions, check_ct, check_star, word_r, Side};
use crate::error::{Error, Result};
use crate::lorentz::{LorentzDatum, SL2Datum, W, WB};
use crate::presentation::{reverse_legs, CandidateR, Document, Saturation, DEFAULT_DEPTH};
use crate::report::{all_passed, CheckReport, Witness};
use crate::scalars::{ConjMode, Gauss, Scalar};
use crate::tensor::{unflatten_index, Tensor};

pub const LAMBDA: &str = "Lambda";

fn id(n: usize) -> Tensor {
    Tensor::identity(&[n])
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `V_{CD,i} = (σ_i)_{CD}` with `σ_0 = 1` and the Pauli matrices.
pub fn pauli_v() -> Tensor {
    let (o, z, i) = (Scalar::one(), Scalar::zero(), Scalar::i());
    let cols = [
        [o.clone(), z.clone(), z.clone(), o.clone()],
        [z.clone(), o.clone(), o.clone(), z.clone()],
        [z.clone(), -&i, i.clone(), z.clone()],
        [o.clone(), z.clone(), z.clone(), -&o],
    ];
    Tensor::from_fn(vec![2, 2], vec![4], |r, c| cols[c][r].clone())
}

/// `G_w : C^w ⊗ C^Λ → C^Λ ⊗ C^w` and `H_w : C^w → C^Λ ⊗ C^w` of a
/// representation `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub dim: usize,
    pub g: Tensor,
    pub h: Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InhomDatum {
    pub lorentz: Option<LorentzDatum>,
    pub sign_s: i64,
    pub v: Tensor,
    pub r: Tensor,
    /// `Z_{ij,k}` on `C^Λ → C^Λ ⊗ C^Λ`.
    pub z: Tensor,
    /// `T_{ij}` as a column on `C^Λ ⊗ C^Λ`.
    pub t: Tensor,
    pub reps: BTreeMap<String, Rep>,
    pub n: usize,
    /// `m_0` for Lorentz-backed data, the declared invariant `m` otherwise.
    pub m0: Option<Tensor>,
    pub mode: ConjMode,
    l: Option<Tensor>,
    l_tilde: Option<Tensor>,
}

fn check_t_tilde(t: &Tensor, mode: ConjMode) -> Result<()> {
    let tt = reverse_legs(t)?.conj(mode);
    let d = tt.sub(t)?;
    match d.first_nonzero() {
        None => Ok(()),
        Some((idx, v)) => Err(Error::StructureViolation(format!(
            "T̃ ≠ T: T̃ − T at ({}) = {v}",
            idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
        ))),
    }
}

impl InhomDatum {
    /// Derives `G_w`, `G_w̄`, `R`, `Z`, `m_0` from a Lorentz datum with
    /// `L = s q^{1/2}(1 + q^{-1}EE′)` and `L̃ = qτLτ`.
    pub fn lorentz_backed(
        lz: LorentzDatum,
        sign_s: i64,
        h_w: Option<Tensor>,
        h_wb: Option<Tensor>,
        t: Option<Tensor>,
    ) -> Result<InhomDatum> {
        if sign_s.abs() != 1 {
            return Err(Error::ForbiddenParameter(format!("s = {sign_s}")));
        }
        let n = 4;
        let v = pauli_v();
        let vi = v.inverse()?;
        let q = lz.base.q.clone();
        let l = lz.base.l(1)?.scale(&int(sign_s));
        let tau = Tensor::flip(2, 2);
        let lt = Tensor::chain(&[&tau, &l, &tau])?.scale(&q);
        let x = &lz.x;
        let xi = x.inverse()?;
        let one = id(2);
        let g_w = Tensor::chain(&[&vi.kron(&one), &one.kron(x), &l.kron(&one), &one.kron(&v)])?
            .with_legs(vec![n, 2], vec![2, n])?;
        let g_wb = Tensor::chain(&[&vi.kron(&one), &one.kron(&lt), &xi.kron(&one), &one.kron(&v)])?
            .with_legs(vec![n, 2], vec![2, n])?;
        let zero_h = || Tensor::zeros(vec![n, 2], vec![2]);
        let h_w = h_w.map_or_else(|| Ok(zero_h()), |h| h.with_legs(vec![n, 2], vec![2]))?;
        let h_wb = h_wb.map_or_else(|| Ok(zero_h()), |h| h.with_legs(vec![n, 2], vec![2]))?;
        let mut reps = BTreeMap::new();
        reps.insert(W.to_string(), Rep { dim: 2, g: g_w, h: h_w });
        reps.insert(WB.to_string(), Rep { dim: 2, g: g_wb, h: h_wb });
        let t = t.map_or_else(|| Ok(Tensor::zeros(vec![n, n], vec![])), |t| t.with_legs(vec![n, n], vec![]))?;
        check_t_tilde(&t, lz.mode)?;
        let mut d = InhomDatum {
            lorentz: Some(lz.clone()),
            sign_s,
            v: v.clone(),
            r: Tensor::zeros(vec![n, n], vec![n, n]),
            z: Tensor::zeros(vec![n, n], vec![n]),
            t,
            reps,
            n,
            m0: None,
            mode: lz.mode,
            l: Some(l),
            l_tilde: Some(lt),
        };
        let g = d.build_g(&[W, WB])?;
        let h = d.build_h(&[W, WB])?;
        d.r = Tensor::chain(&[&id(n).kron(&vi), &g, &v.kron(&id(n))])?.with_legs(vec![n, n], vec![n, n])?;
        d.z = Tensor::chain(&[&id(n).kron(&vi), &h, &v])?.with_legs(vec![n, n], vec![n])?;
        let e = &lz.base.e;
        let m0 = Tensor::chain(&[
            &vi.kron(&vi),
            &one.kron(x).kron(&one),
            &e.kron(&tau.compose(e)?),
        ])?;
        d.m0 = Some(m0.with_legs(vec![n, n], vec![])?);
        d.reps.insert(
            LAMBDA.to_string(),
            Rep {
                dim: n,
                g: d.r.clone(),
                h: d.z.clone(),
            },
        );
        Ok(d)
    }

    /// `q = 1`, `X = L = τ`, `s = 1`, `Z = 0`, `T = 0`.
    pub fn classical() -> InhomDatum {
        flip_datum(&Gauss::one(), 1).expect("classical datum")
    }

    /// User-supplied `R`, `Z`, `T`, an optional invariant `m` and optional
    /// representation tables `name → (dim, G, H)`.
    pub fn abstract_lambda(
        r: Tensor,
        z: Tensor,
        t: Tensor,
        m: Option<Tensor>,
        tables: Vec<(String, usize, Tensor, Option<Tensor>)>,
        mode: ConjMode,
    ) -> Result<InhomDatum> {
        let n = (1..=r.rows()).find(|k| k * k == r.rows()).ok_or_else(|| {
            Error::Shape(format!("R has {} rows, not a square number", r.rows()))
        })?;
        let r = r.with_legs(vec![n, n], vec![n, n])?;
        let z = z.with_legs(vec![n, n], vec![n])?;
        let t = t.with_legs(vec![n, n], vec![])?;
        check_t_tilde(&t, mode)?;
        let m0 = m.map(|m| m.with_legs(vec![n, n], vec![])).transpose()?;
        let mut reps = BTreeMap::new();
        for (name, dim, g, h) in tables {
            let g = g.with_legs(vec![n, dim], vec![dim, n])?;
            let h = h.map_or_else(
                || Ok(Tensor::zeros(vec![n, dim], vec![dim])),
                |h| h.with_legs(vec![n, dim], vec![dim]),
            )?;
            reps.insert(name, Rep { dim, g, h });
        }
        reps.insert(
            LAMBDA.to_string(),
            Rep {
                dim: n,
                g: r.clone(),
                h: z.clone(),
            },
        );
        Ok(InhomDatum {
            lorentz: None,
            sign_s: 1,
            v: id(n),
            r,
            z,
            t,
            reps,
            n,
            m0,
            mode,
            l: None,
            l_tilde: None,
        })
    }

    /// A file with `E` and `X` is Lorentz-backed (`param s`, `table rep w`
    /// and `table rep wb` for `H`, `mat T`); otherwise `mat R`, `mat Z`,
    /// `mat T`, optional `mat m` and `table rep` entries give abstract data.
    pub fn from_document(doc: &Document) -> Result<InhomDatum> {
        Self::from_document_at(doc, None)
    }

    /// As [`InhomDatum::from_document`], evaluating a Lorentz-backed datum at
    /// `at` when given, else at `param at` when the file declares it.
    pub fn from_document_at(doc: &Document, at: Option<&Gauss>) -> Result<InhomDatum> {
        let mat = |n: &str| doc.mat(n).map(|m| m.tensor.clone());
        let t = mat("T");
        if doc.mat("E").is_some() && doc.mat("X").is_some() {
            let mut lz = LorentzDatum::from_document(doc)?;
            let declared = match doc.param("at") {
                Some(v) => Some(v.as_constant().ok_or_else(|| {
                    Error::ForbiddenParameter("param at must be a constant".into())
                })?),
                None => None,
            };
            if let Some(at) = at.cloned().or(declared) {
                lz = lz.eval_at(&at)?;
            }
            let s = match doc.param("s") {
                None => 1,
                Some(s) if s.is_one() => 1,
                Some(s) if *s == int(-1) => -1,
                Some(s) => return Err(Error::ForbiddenParameter(format!("s = {s}"))),
            };
            let h = |name: &str| doc.table(name).and_then(|t| t.h.clone());
            return InhomDatum::lorentz_backed(lz, s, h(W), h(WB), t);
        }
        let need = |n: &str| {
            mat(n).ok_or_else(|| Error::UnknownName {
                name: n.into(),
                line: 0,
                col: 0,
            })
        };
        let r = need("R")?;
        let rows = r.rows();
        let n = (1..=rows).find(|k| k * k == rows).unwrap_or(0);
        let z = mat("Z").unwrap_or_else(|| Tensor::zeros(vec![n, n], vec![n]));
        let t = t.unwrap_or_else(|| Tensor::zeros(vec![n, n], vec![]));
        let mut tables = Vec::new();
        for tb in &doc.tables {
            let g = tb.g.clone().ok_or_else(|| Error::MissingRep(tb.name.clone()))?;
            let dim = g.cols() / n.max(1);
            tables.push((tb.name.clone(), dim, g, tb.h.clone()));
        }
        InhomDatum::abstract_lambda(r, z, t, mat("m"), tables, doc.mode)
    }

    pub fn is_abstract(&self) -> bool {
        self.lorentz.is_none()
    }

    pub fn rep(&self, name: &str) -> Result<&Rep> {
        self.reps.get(name).ok_or_else(|| Error::MissingRep(name.into()))
    }

    /// `G` of a tensor word, `G_{ab} = (G_a ⊗ 1)(1 ⊗ G_b)`; the empty word
    /// gives the identity on `C^Λ`.
    pub fn build_g(&self, word: &[&str]) -> Result<Tensor> {
        let mut acc = id(self.n);
        let mut prefix = 1;
        for name in word.iter().rev() {
            let rep = self.rep(name)?;
            acc = rep.g.kron(&id(prefix)).compose(&id(rep.dim).kron(&acc))?;
            prefix *= rep.dim;
        }
        Ok(acc)
    }

    /// `H` of a tensor word, `H_{ab} = (G_a ⊗ 1)(1 ⊗ H_b) + H_a ⊗ 1`; zero
    /// on the empty word.
    pub fn build_h(&self, word: &[&str]) -> Result<Tensor> {
        let mut h = Tensor::zeros(vec![self.n], vec![]);
        let mut g = id(self.n);
        let mut prefix = 1;
        for name in word.iter().rev() {
            let rep = self.rep(name)?;
            h = rep
                .g
                .kron(&id(prefix))
                .compose(&id(rep.dim).kron(&h))?
                .add(&rep.h.kron(&id(prefix)))?;
            g = rep.g.kron(&id(prefix)).compose(&id(rep.dim).kron(&g))?;
            prefix *= rep.dim;
        }
        Ok(h)
    }

    pub fn build_m0(&self) -> Result<Tensor> {
        if self.is_abstract() {
            return Err(Error::AbstractLambdaMode);
        }
        Ok(self.m0.clone().expect("Lorentz-backed data carry m0"))
    }

    /// The invariant row `n_0 = (E′ ⊗ Ẽ′)(1 ⊗ X^{-1} ⊗ 1)(V ⊗ V)`.
    pub fn build_n0(&self) -> Result<Tensor> {
        let lz = self.lorentz.as_ref().ok_or(Error::AbstractLambdaMode)?;
        let one = id(2);
        let n0 = Tensor::chain(&[
            &lz.base.ep.kron(&lz.etp),
            &one.kron(&lz.x.inverse()?).kron(&one),
            &self.v.kron(&self.v),
        ])?;
        n0.with_legs(vec![], vec![self.n, self.n])
    }

    fn m(&self) -> Tensor {
        self.m0
            .clone()
            .unwrap_or_else(|| Tensor::zeros(vec![self.n, self.n], vec![]))
    }

    /// The `(N+1)² × (N+1)²` matrix with blocks `R, Z, −RZ, (R−1)T` in the
    /// first block row and the swap of `Λ⊗1` and `1⊗Λ` below.
    pub fn build_rp(&self) -> Result<Tensor> {
        let n = self.n;
        let p = n + 1;
        let rz = self.r.compose(&self.z)?;
        let rt = self.r.sub(&id(n * n))?.compose(&self.t)?;
        let mut out = Tensor::zeros(vec![p, p], vec![p, p]);
        let at = |a: usize, b: usize| a * p + b;
        for a in 0..n {
            for b in 0..n {
                let row = a * n + b;
                for c in 0..n {
                    for d in 0..n {
                        out.set(at(a, b), at(c, d), self.r.get(row, c * n + d).clone());
                    }
                    out.set(at(a, b), at(c, n), self.z.get(row, c).clone());
                    out.set(at(a, b), at(n, c), -rz.get(row, c));
                }
                out.set(at(a, b), at(n, n), rt.get(row, 0).clone());
            }
            out.set(at(a, n), at(n, a), Scalar::one());
            out.set(at(n, a), at(a, n), Scalar::one());
        }
        out.set(at(n, n), at(n, n), Scalar::one());
        Ok(out)
    }

    /// `m_P`: the column `m` placed in the `ΛΛ ← ++` position.
    pub fn build_mp(&self, m: &Tensor) -> Tensor {
        let (n, p) = (self.n, self.n + 1);
        let mut out = Tensor::zeros(vec![p, p], vec![p, p]);
        for a in 0..n {
            for b in 0..n {
                out.set(a * p + b, n * p + n, m.get(a * n + b, 0).clone());
            }
        }
        out
    }

    /// `R_Q = R_P + c m_P` with the datum's invariant.
    pub fn build_rq(&self, c: &Scalar) -> Result<Tensor> {
        self.build_rp()?.add(&self.build_mp(&self.m()).scale(c))
    }

    /// `N_v = (G_v, H_v; 0, 1)` from `C^v ⊗ P` to `P ⊗ C^v`.
    pub fn build_n(&self, name: &str) -> Result<Tensor> {
        let rep = self.rep(name)?;
        let (n, p, dv) = (self.n, self.n + 1, rep.dim);
        let mut out = Tensor::zeros(vec![p, dv], vec![dv, p]);
        for a in 0..n {
            for l in 0..dv {
                for i in 0..dv {
                    for b in 0..n {
                        out.set(a * dv + l, i * p + b, rep.g.get(a * dv + l, i * n + b).clone());
                    }
                    out.set(a * dv + l, i * p + n, rep.h.get(a * dv + l, i).clone());
                }
            }
        }
        for l in 0..dv {
            out.set(n * dv + l, l * p + n, Scalar::one());
        }
        Ok(out)
    }

    /// `N` of a word, `N_{ab} = (N_a ⊗ 1)(1 ⊗ N_b)`.
    pub fn build_n_word(&self, word: &[String]) -> Result<Tensor> {
        let p = self.n + 1;
        let mut acc = id(p);
        let mut suffix = 1;
        for name in word.iter().rev() {
            let dv = self.rep(name)?.dim;
            acc = self.build_n(name)?.kron(&id(suffix)).compose(&id(dv).kron(&acc))?;
            suffix *= dv;
        }
        Ok(acc)
    }
}

/// The `X = τ`, `β = 1` datum at `t = at` with `Z = 0`, `T = 0`.
pub fn flip_datum(at: &Gauss, sign_s: i64) -> Result<InhomDatum> {
    let lz = LorentzDatum::flip(SL2Datum::generic())?.eval_at(at)?;
    InhomDatum::lorentz_backed(lz, sign_s, None, None, None)
}

/// Abstract data with `R(e_i ⊗ e_j) = λ_{ij} e_j ⊗ e_i`, `λ_{12} = 2`,
/// `λ_{21} = 1/2` and all other `λ = 1`: an involutive braid solution
/// that is not symmetric.
pub fn twisted_flip_datum() -> InhomDatum {
    let n = 4;
    let mut r = Tensor::flip(n, n);
    r.set(n, 1, Scalar::from_int(2));
    r.set(1, n, Scalar::from_ratio(1, 2));
    let z = Tensor::zeros(vec![n, n], vec![n]);
    let t = Tensor::zeros(vec![n, n], vec![]);
    InhomDatum::abstract_lambda(r, z, t, None, vec![], ConjMode::Real).expect("twisted datum")
}

/// `R = τ`, `Z_{12,3} = 1`, `T = i(e_3 ⊗ e_4 − e_4 ⊗ e_3)`, for which
/// `A_3(Z ⊗ 1 − 1 ⊗ Z)T ≠ 0`.
pub fn negative_control_datum() -> InhomDatum {
    let n = 4;
    let mut z = Tensor::zeros(vec![n, n], vec![n]);
    z.set(1, 2, Scalar::one());
    let mut t = Tensor::zeros(vec![n, n], vec![]);
    t.set(2 * n + 3, 0, Scalar::i());
    t.set(3 * n + 2, 0, -&Scalar::i());
    InhomDatum::abstract_lambda(Tensor::flip(n, n), z, t, None, vec![], ConjMode::Real).expect("negative control")
}

/// `A_3 = Σ_σ sign(σ) σ` written through `R` on `C^N ⊗ C^N ⊗ C^N`.
pub fn a3(r: &Tensor, n: usize) -> Result<Tensor> {
    let r1 = r.kron(&id(n));
    let r2 = id(n).kron(r);
    let r12 = r1.compose(&r2)?;
    let r21 = r2.compose(&r1)?;
    let r121 = r12.compose(&r1)?;
    id(n * n * n)
        .sub(&r1)?
        .sub(&r2)?
        .add(&r12)?
        .add(&r21)?
        .sub(&r121)?
        .with_legs(vec![n, n, n], vec![n, n, n])
}

/// `τ^{ij}(x_{AB})` for a representation `x` with `f_{ij}(x_{AB}) = G_{iA,Bj}`
/// and `η_i(x_{AB}) = H_{iA,B}`, as a matrix with rows `(i, j, A)` and
/// columns `B`, where
/// `τ^{ij} = (R−1)_{ij,pq}(η_q∗η_p − η_p(Λ_{qs})η_s + T_{pq}ε − (f_{qb}∗f_{pa})T_{ab})`.
pub fn tau_on(d: &InhomDatum, g: &Tensor, h: &Tensor, dim: usize) -> Result<Tensor> {
    let n = d.n;
    let f = |i: usize, j: usize, a: usize, b: usize| g.get(i * dim + a, b * n + j);
    let eta = |i: usize, a: usize, b: usize| h.get(i * dim + a, b);
    let z = |i: usize, j: usize, k: usize| d.z.get(i * n + j, k);
    let t = |i: usize, j: usize| d.t.get(i * n + j, 0);
    // X_{pq}(x_{AB}) with rows (p, q, A), columns B
    let mut xm = Tensor::zeros(vec![n, n, dim], vec![dim]);
    for p in 0..n {
        for q in 0..n {
            for a in 0..dim {
                for b in 0..dim {
                    let mut acc = Scalar::zero();
                    for c in 0..dim {
                        acc = &acc + &(eta(q, a, c) * eta(p, c, b));
                    }
                    for s in 0..n {
                        acc = &acc - &(z(p, q, s) * eta(s, a, b));
                    }
                    if a == b {
                        acc = &acc + t(p, q);
                    }
                    for c in 0..dim {
                        for ia in 0..n {
                            for ib in 0..n {
                                let tv = t(ia, ib);
                                if tv.is_zero() {
                                    continue;
                                }
                                acc = &acc - &(&(f(q, ib, a, c) * f(p, ia, c, b)) * tv);
                            }
                        }
                    }
                    xm.set((p * n + q) * dim + a, b, acc);
                }
            }
        }
    }
    let rm1 = d.r.sub(&id(n * n))?.kron(&id(dim));
    rm1.compose(&xm)
}

/// `F̃_{ijk,m} = τ^{ij}(Λ_{km})`.
pub fn compute_f_tilde(d: &InhomDatum) -> Result<Tensor> {
    tau_on(d, &d.r, &d.z, d.n)
}

fn report_zero(id_: &str, t: &Tensor) -> CheckReport {
    CheckReport::from_defect(id_, t)
}

/// Structure conditions on the Λ-level data.
pub fn check_structure(d: &InhomDatum) -> Result<Vec<CheckReport>> {
    let n = d.n;
    let a = a3(&d.r, n)?;
    let mut out = vec![
        CheckReport::compare("r-squared", &d.r.compose(&d.r)?, &id(n * n)),
        CheckReport::compare("rt-antisymmetric", &d.r.compose(&d.t)?, &d.t.neg()),
    ];
    let zt = d.z.kron(&id(n)).sub(&id(n).kron(&d.z))?.compose(&d.t)?;
    out.push(report_zero("a3-zt", &a.compose(&zt)?));
    out.push(report_zero("a3-ftilde", &a.compose(&compute_f_tilde(d)?)?));
    let rp = d.build_rp()?;
    out.push(CheckReport::compare("rp-squared", &rp.compose(&rp)?, &id(rp.rows())));
    if let Some(m) = &d.m0 {
        out.push(CheckReport::compare("r-fixes-m", &d.r.compose(m)?, m));
    }
    for (name, rep) in &d.reps {
        if name == LAMBDA || rep.h.is_zero() && d.t.is_zero() && d.z.is_zero() {
            continue;
        }
        out.push(report_zero(&format!("tau-on-generators/{name}"), &tau_on(d, &rep.g, &rep.h, rep.dim)?));
    }
    Ok(out)
}

pub fn structure_ok(reports: &[CheckReport]) -> bool {
    all_passed(reports)
}

/// A Poincaré-level candidate: base blocks for `w`, `w̄` (absent for
/// abstract data), the sign `k` when the base is normalised, and `c`
/// (`None` for symbolic `c`, checked by interpolation).
#[derive(Clone, Debug)]
pub struct PoincareCandidate {
    pub label: String,
    pub base: Option<CandidateR>,
    pub k: Option<i64>,
    pub c: Option<Scalar>,
}

/// Signs `(ε_L, ε′_L, ε_X, ε′_X)` applied to `L`, `L̃`, `X`, `X^{-1}`.
pub fn base_candidate(d: &InhomDatum, signs: [i64; 4]) -> Result<CandidateR> {
    let lz = d.lorentz.as_ref().ok_or(Error::AbstractLambdaMode)?;
    let l = d.l.as_ref().expect("Lorentz-backed");
    let lt = d.l_tilde.as_ref().expect("Lorentz-backed");
    Ok(CandidateR::new()
        .with(W, W, l.scale(&int(signs[0])))
        .with(WB, WB, lt.scale(&int(signs[1])))
        .with(W, WB, lz.x.scale(&int(signs[2])))
        .with(WB, W, lz.x.inverse()?.scale(&int(signs[3]))))
}

/// The candidate with `R^{ww} = kL`, `R^{ww̄} = kX`, `R^{w̄w} = qkX^{-1}`,
/// `R^{w̄w̄} = qkL̃`.
pub fn theorem_candidate(d: &InhomDatum, k: i64, c: Option<Scalar>) -> Result<PoincareCandidate> {
    let lz = d.lorentz.as_ref().ok_or(Error::AbstractLambdaMode)?;
    let q = lz.base.q.as_constant().filter(|q| *q == Gauss::one() || *q == Gauss::from_int(-1));
    let qs = match q {
        Some(q) if q.is_one() => 1,
        Some(_) => -1,
        None => {
            return Err(Error::ForbiddenParameter(format!(
                "the Poincaré candidates need q = ±1, got {}",
                lz.base.q
            )))
        }
    };
    Ok(PoincareCandidate {
        label: format!("k={}", if k > 0 { "+1" } else { "-1" }),
        base: Some(base_candidate(d, [k, qs * k, k, qs * k])?),
        k: Some(k),
        c,
    })
}

pub fn abstract_candidate(c: Option<Scalar>) -> PoincareCandidate {
    PoincareCandidate {
        label: "abstract".into(),
        base: None,
        k: None,
        c,
    }
}

/// `R^{vΛ} = G_v` and `R^{Λv} = G_v^{-1}` with the left-hand sides built
/// from the candidate's base blocks and conjugated by `V`.
pub fn check_r_v_lambda(d: &InhomDatum, cand: &PoincareCandidate) -> Result<Vec<CheckReport>> {
    let (Some(lz), Some(base)) = (d.lorentz.as_ref(), cand.base.as_ref()) else {
        return Ok(vec![CheckReport::skipped("r-v-lambda", "abstract Λ data")]);
    };
    let p = lz.presentation();
    let vi = d.v.inverse()?;
    let word = [W.to_string(), WB.to_string()];
    let mut out = Vec::new();
    for v in [W, WB] {
        let g = &d.rep(v)?.g;
        let one = id(2);
        let right = word_r(&p, base, &word, v, Side::Right)?;
        let lhs = Tensor::chain(&[&vi.kron(&one), &right, &one.kron(&d.v)])?;
        out.push(CheckReport::compare(format!("r-v-lambda/{v}"), &lhs, g));
        let left = word_r(&p, base, &word, v, Side::Left)?;
        let lhs = Tensor::chain(&[&one.kron(&vi), &left, &d.v.kron(&one)])?;
        out.push(CheckReport::compare(format!("r-lambda-v/{v}"), &lhs, &g.inverse()?));
    }
    Ok(out)
}

/// Points `c = 0, …, degree + 1` and the defect at each.
fn sample_in_c(
    cand: &PoincareCandidate,
    degree: usize,
    f: impl Fn(&Scalar) -> Result<Tensor>,
) -> Result<Vec<(Scalar, Tensor)>> {
    match &cand.c {
        Some(c) => Ok(vec![(c.clone(), f(c)?)]),
        None => (0..=degree as i64 + 1).map(|k| Ok((int(k), f(&int(k))?))).collect(),
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// The `(degree+1)`-th finite difference of equally spaced samples, which
/// vanishes iff they fit a polynomial of that degree.
fn degree_report(id_: &str, samples: &[(Scalar, Tensor)], degree: usize) -> Result<CheckReport> {
    if samples.len() < degree + 2 {
        return Ok(CheckReport::skipped(id_, "c is fixed"));
    }
    let order = degree + 1;
    let mut acc = samples[0].1.scale(&Scalar::zero());
    for (k, (_, t)) in samples.iter().enumerate().take(order + 1) {
        let sign = if (order - k).is_multiple_of(2) { 1 } else { -1 };
        acc = acc.add(&t.scale(&int(sign * binomial(order, k))))?;
    }
    Ok(report_zero(id_, &acc).with_detail(format!("degree ≤ {degree} in c")))
}

fn first_nonzero_where(t: &Tensor, keep: &dyn Fn(&[usize]) -> bool) -> Option<(Vec<usize>, Scalar)> {
    for r in 0..t.rows() {
        for c in 0..t.cols() {
            let v = t.get(r, c);
            if v.is_zero() {
                continue;
            }
            let cols = unflatten_index(t.domain(), c);
            if keep(&cols) {
                let mut idx = unflatten_index(t.codomain(), r);
                idx.extend(cols);
                return Some((idx, v.clone()));
            }
        }
    }
    None
}

/// Passes iff every sample vanishes on the columns selected by `keep`.
fn identity_report(id_: &str, samples: &[(Scalar, Tensor)], keep: &dyn Fn(&[usize]) -> bool) -> CheckReport {
    for (c, t) in samples {
        if let Some((index, value)) = first_nonzero_where(t, keep) {
            let mut r = CheckReport::fail(id_, format!("at c = {c}"));
            r.witness = Some(Witness { index, value });
            return r;
        }
    }
    let detail = match samples {
        [(c, _)] => format!("c = {c}"),
        _ => format!("c symbolic, {} interpolation points", samples.len()),
    };
    CheckReport::pass(id_).with_detail(detail)
}

fn sector_name(cols: &[usize], from: usize, n: usize) -> String {
    cols[from..].iter().map(|&b| if b < n { 'e' } else { 'f' }).collect()
}

/// The R-block between two representations of the test set.
fn block_between(d: &InhomDatum, base: Option<&CandidateR>, v: &str, w: &str) -> Result<Option<Tensor>> {
    Ok(match (v == LAMBDA, w == LAMBDA) {
        (true, true) => Some(d.r.clone()),
        (false, true) => Some(d.rep(v)?.g.clone()),
        (true, false) => Some(d.rep(w)?.g.inverse()?),
        (false, false) => match base {
            Some(b) => Some(b.block(v, w)?.clone()),
            None => None,
        },
    })
}

/// The representations the hexagons are tested on: every table entry,
/// which always includes `Λ`.
pub fn test_set(d: &InhomDatum) -> Vec<String> {
    d.reps.keys().cloned().collect()
}

/// The braid relation for `R_Q`, both hexagons, compatibility of `N` with
/// the base relations and invariance of `m`.
pub fn check_braid_hexagons(d: &InhomDatum, cand: &PoincareCandidate) -> Result<Vec<CheckReport>> {
    let (n, p) = (d.n, d.n + 1);
    let mut out = Vec::new();
    let rq = |c: &Scalar| d.build_rq(c);

    let samples = sample_in_c(cand, 3, |c| {
        let r = rq(c)?;
        let r1 = r.kron(&id(p));
        let r2 = id(p).kron(&r);
        Tensor::chain(&[&r1, &r2, &r1])?.sub(&Tensor::chain(&[&r2, &r1, &r2])?)
    })?;
    out.push(identity_report("braid-rq", &samples, &|_| true));
    out.push(degree_report("braid-rq-degree", &samples, 3)?);

    let reps = test_set(d);
    for v in &reps {
        let dv = d.rep(v)?.dim;
        let nv = d.build_n(v)?;
        let samples = sample_in_c(cand, 1, |c| {
            let r = rq(c)?;
            let lhs = Tensor::chain(&[&id(p).kron(&nv), &nv.kron(&id(p)), &id(dv).kron(&r)])?;
            let rhs = Tensor::chain(&[&r.kron(&id(dv)), &id(p).kron(&nv), &nv.kron(&id(p))])?;
            lhs.sub(&rhs)?.with_legs(vec![p, p, dv], vec![dv, p, p])
        })?;
        for sector in ["ee", "ef", "fe", "ff"] {
            let keep = |cols: &[usize]| sector_name(cols, 1, n) == sector;
            out.push(identity_report(&format!("hexagon-nv/{v}/h{sector}"), &samples, &keep));
        }
        out.push(degree_report(&format!("hexagon-nv-degree/{v}"), &samples, 1)?);
    }

    for v in &reps {
        for w in &reps {
            let Some(rvw) = block_between(d, cand.base.as_ref(), v, w)? else {
                continue;
            };
            let (dv, dw) = (d.rep(v)?.dim, d.rep(w)?.dim);
            let (nv, nw) = (d.build_n(v)?, d.build_n(w)?);
            let lhs = Tensor::chain(&[&id(p).kron(&rvw), &nv.kron(&id(dw)), &id(dv).kron(&nw)])?;
            let rhs = Tensor::chain(&[&nw.kron(&id(dv)), &id(dw).kron(&nv), &rvw.kron(&id(p))])?;
            let defect = lhs.sub(&rhs)?.with_legs(vec![p, dw, dv], vec![dv, dw, p])?;
            for sector in ["e", "f"] {
                let keep = |cols: &[usize]| sector_name(cols, 2, n) == sector;
                out.push(identity_report(
                    &format!("hexagon-rnn/{v}/{w}/hh{sector}"),
                    &[(Scalar::zero(), defect.clone())],
                    &keep,
                ));
            }
        }
    }

    if let Some(lz) = &d.lorentz {
        for rel in lz.presentation().relations {
            let src = d.build_n_word(&rel.source)?;
            let dst = d.build_n_word(&rel.target)?;
            let lhs = dst.compose(&rel.matrix.kron(&id(p)))?;
            let rhs = id(p).kron(&rel.matrix).compose(&src)?;
            out.push(CheckReport::compare(format!("s-compat/{}", rel.name), &lhs, &rhs));
        }
        let m = d.build_m0()?;
        for v in [W, WB] {
            let g = &d.rep(v)?.g;
            let lhs = Tensor::chain(&[&id(n).kron(g), &g.kron(&id(n)), &id(2).kron(&m)])?;
            out.push(CheckReport::compare(format!("m-invariance/{v}"), &lhs, &m.kron(&id(2))));
        }
    }
    Ok(out)
}

/// Conjugate symmetry `m_{ij} = conj(m_{ji})` of `m = c m_0`, together with
/// the base ∗-compatibility.
pub fn poincare_star(d: &InhomDatum, cand: &PoincareCandidate, c: &Gauss) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    if let (Some(lz), Some(base)) = (&d.lorentz, &cand.base) {
        out.extend(check_star(&lz.presentation(), base, d.mode)?);
    }
    let m = d.m().scale(&Scalar::from_gauss(c.clone()));
    let mt = reverse_legs(&m)?.conj(d.mode);
    out.push(CheckReport::compare("star-m", &m, &mt).with_detail(format!("c = {c}")));
    Ok(out)
}

/// Cotriangularity: the base blocks and `R_Q R_Q = 1`.
pub fn poincare_ct(d: &InhomDatum, cand: &PoincareCandidate, c: &Gauss) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    if let (Some(lz), Some(base)) = (&d.lorentz, &cand.base) {
        out.extend(check_ct(&lz.presentation(), base)?);
    }
    let rq = d.build_rq(&Scalar::from_gauss(c.clone()))?;
    out.push(CheckReport::compare("ct/P/P", &rq.compose(&rq)?, &id(rq.rows())).with_detail(format!("c = {c}")));
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct PoincareVerdict {
    pub label: String,
    pub k: Option<i64>,
    pub reports: Vec<CheckReport>,
    /// The base blocks form a CQT structure and satisfy `R^{vΛ} = G_v`.
    pub normalized: bool,
    pub cqt: bool,
    /// ∗-compatible for real `c` (base ∗ holds and `m_0` is hermitian).
    pub star_for_real_c: bool,
    /// Cotriangular at `c = 0`.
    pub ct_at_zero: bool,
}

#[derive(Clone, Debug)]
pub struct PoincareClassification {
    pub structure: Vec<CheckReport>,
    pub verdicts: Vec<PoincareVerdict>,
    pub cqt: usize,
}

fn sign_label(s: i64) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

/// Enumerates the sixteen sign choices for the base blocks with symbolic
/// `c`; only those normalised as `R^{vΛ} = G_v` go on to the braid and
/// hexagon checks. Abstract data have a single candidate.
pub fn classify_poincare(d: &InhomDatum) -> Result<PoincareClassification> {
    let structure = check_structure(d)?;
    let ok = structure_ok(&structure);
    let mut verdicts = Vec::new();
    let Some(lz) = &d.lorentz else {
        let cand = abstract_candidate(None);
        let reports = check_braid_hexagons(d, &cand)?;
        let cqt = ok && all_passed(&reports);
        verdicts.push(PoincareVerdict {
            label: cand.label,
            k: None,
            reports,
            normalized: true,
            cqt,
            star_for_real_c: false,
            ct_at_zero: false,
        });
        return Ok(PoincareClassification {
            structure,
            cqt: usize::from(cqt),
            verdicts,
        });
    };
    let p = lz.presentation();
    let sat = Saturation::for_presentation(&p, 2, DEFAULT_DEPTH)?;
    let m0 = d.build_m0()?;
    let m0_hermitian = reverse_legs(&m0)?.conj(d.mode) == m0;
    for s0 in [1, -1] {
        for s1 in [1, -1] {
            for s2 in [1, -1] {
                for s3 in [1, -1] {
                    let base = base_candidate(d, [s0, s1, s2, s3])?;
                    let label = format!(
                        "eL={} eL'={} eX={} eX'={}",
                        sign_label(s0),
                        sign_label(s1),
                        sign_label(s2),
                        sign_label(s3)
                    );
                    let k = (s0 == s2 && s1 == s3).then_some(s0);
                    let cand = PoincareCandidate {
                        label: label.clone(),
                        base: Some(base.clone()),
                        k,
                        c: None,
                    };
                    let base_reports = check_cqt_conditions(&p, &base, &sat)?;
                    let base_ok = all_passed(&base_reports);
                    let mut reports = vec![if base_ok {
                        CheckReport::pass("base-cqt")
                    } else {
                        CheckReport::fail("base-cqt", "the base blocks are not a CQT structure")
                    }];
                    reports.extend(check_r_v_lambda(d, &cand)?);
                    let normalized = all_passed(&reports);
                    if normalized {
                        reports.extend(check_braid_hexagons(d, &cand)?);
                    }
                    let cqt = ok && normalized && all_passed(&reports);
                    let star_for_real_c = cqt && m0_hermitian && all_passed(&check_star(&p, &base, d.mode)?);
                    let ct_at_zero = cqt && all_passed(&check_ct(&p, &base)?);
                    verdicts.push(PoincareVerdict {
                        label,
                        k: if normalized { k } else { None },
                        reports,
                        normalized,
                        cqt,
                        star_for_real_c,
                        ct_at_zero,
                    });
                }
            }
        }
    }
    let cqt = verdicts.iter().filter(|v| v.cqt).count();
    Ok(PoincareClassification {
        structure,
        verdicts,
        cqt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli() {
        let v = pauli_v();
        assert_eq!(v.column_at(0).entries(), Tensor::from_ints(vec![4], vec![], &[1, 0, 0, 1]).unwrap().entries());
        let vi = v.inverse().unwrap();
        assert!(vi.compose(&v).unwrap().is_identity());
        let half = Scalar::from_ratio(1, 2);
        assert_eq!(vi.entries(), v.adjoint(ConjMode::Real).scale(&half).entries());
    }

    #[test]
    fn classical_structure() {
        let d = InhomDatum::classical();
        assert_eq!(d.r.entries(), Tensor::flip(4, 4).entries());
        assert!(d.z.is_zero());
        assert!(d.build_g(&[]).unwrap().is_identity());
        assert!(d.build_h(&[W]).unwrap().is_zero());
        let reports = check_structure(&d).unwrap();
        assert!(all_passed(&reports), "{reports:?}");
        assert_eq!(d.build_rp().unwrap().entries(), Tensor::flip(5, 5).entries());
        let m0 = d.build_m0().unwrap();
        assert!(!m0.is_zero());
        assert_eq!(reverse_legs(&m0).unwrap(), m0);
    }

    #[test]
    fn classical_classification() {
        let d = InhomDatum::classical();
        let c = classify_poincare(&d).unwrap();
        for v in &c.verdicts {
            if v.normalized {
                for r in &v.reports {
                    assert!(r.passed() || r.status == crate::report::Status::Skipped, "{} {r}", v.label);
                }
            }
        }
        assert_eq!(c.cqt, 2);
        let m1 = classify_poincare(&flip_datum(&Gauss::i(), 1).unwrap()).unwrap();
        assert_eq!(m1.cqt, 2);
        let ks: Vec<i64> = c.verdicts.iter().filter(|v| v.cqt).filter_map(|v| v.k).collect();
        assert_eq!(ks, vec![1, -1]);
        assert!(c.verdicts.iter().filter(|v| v.cqt).all(|v| v.star_for_real_c && v.ct_at_zero));
    }

    fn k_plus(d: &InhomDatum, c: Option<Scalar>) -> PoincareCandidate {
        theorem_candidate(d, 1, c).unwrap()
    }

    #[test]
    fn classical_star_and_ct() {
        let d = InhomDatum::classical();
        let cand = k_plus(&d, None);
        assert!(all_passed(&poincare_star(&d, &cand, &Gauss::from_int(2)).unwrap()));
        let bad = poincare_star(&d, &cand, &(&Gauss::one() + &Gauss::i())).unwrap();
        assert!(bad.iter().any(|r| r.check_id == "star-m" && !r.passed()));
        assert!(all_passed(&poincare_ct(&d, &cand, &Gauss::zero()).unwrap()));
        let ct = poincare_ct(&d, &cand, &Gauss::from_int(3)).unwrap();
        assert!(ct.iter().any(|r| r.check_id == "ct/P/P" && !r.passed()));
    }

    #[test]
    fn classical_hexagons_at_fixed_c() {
        let d = InhomDatum::classical();
        let reports = check_braid_hexagons(&d, &k_plus(&d, Some(int(5)))).unwrap();
        assert!(reports.iter().any(|r| r.check_id == "hexagon-nv/w/hff"));
        assert!(reports.iter().any(|r| r.check_id == "s-compat/X"));
        for r in &reports {
            assert!(r.passed() || r.status == crate::report::Status::Skipped, "{r}");
        }
    }

    #[test]
    fn negative_control_has_no_candidate() {
        let d = negative_control_datum();
        let s = check_structure(&d).unwrap();
        assert!(s.iter().any(|r| r.check_id == "a3-zt" && !r.passed()), "{s:?}");
        assert_eq!(classify_poincare(&d).unwrap().cqt, 0);
        assert!(matches!(d.build_m0(), Err(Error::AbstractLambdaMode)));
    }

    #[test]
    fn twisted_abstract_candidate() {
        let d = twisted_flip_datum();
        assert!(all_passed(&check_structure(&d).unwrap()));
        assert!(d.build_m0().is_err());
        assert_eq!(classify_poincare(&d).unwrap().cqt, 1);
    }

    #[test]
    fn t_tilde_enforced() {
        let n = 4;
        let mut t = Tensor::zeros(vec![n, n], vec![]);
        t.set(2 * n + 3, 0, Scalar::one());
        let z = Tensor::zeros(vec![n, n], vec![n]);
        let err = InhomDatum::abstract_lambda(Tensor::flip(n, n), z, t, None, vec![], ConjMode::Real);
        assert!(matches!(err, Err(Error::StructureViolation(_))));
    }

    #[test]
    fn perturbed_h_breaks_ff_sector() {
        let lz = InhomDatum::classical().lorentz.unwrap();
        let mut h = Tensor::zeros(vec![4, 2], vec![2]);
        h.set(0, 1, Scalar::one());
        let d = InhomDatum::lorentz_backed(lz, 1, Some(h), None, None).unwrap();
        let reports = check_braid_hexagons(&d, &k_plus(&d, None)).unwrap();
        let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.check_id.as_str()).collect();
        eprintln!("{failed:?}");
        assert!(failed.contains(&"hexagon-nv/w/hff"));
    }
}
