//! Functionals on the inhomogeneous bialgebra obtained by pairing with the
//! universal R-form: `l_{jl}(x) = ℛ(x ⊗ P_{jl})` and the homomorphism `X`.
//!
//! Both are stored as `(N+1) × (N+1)` matrices on the letters `Λ_{ab}` and
//! `y_a` and extended multiplicatively to free words. A convolution
//! `(h_{ik} ∗ h′_{jl})(x)` sits at row `(i, j)`, column `(k, l)`.
//! Identities are checked on every word up to a length bound; when `c` is
//! left symbolic it is interpolated over enough integer points to pin down
//! the polynomial dependence.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::Result;
use crate::inhomogeneous::InhomDatum;
use crate::presentation::{FreeElement, FunctionalHom};
use crate::report::{CheckReport, Witness};
use crate::scalars::Scalar;
use crate::tensor::{SpanBasis, Tensor};

pub const DEFAULT_MAX_LEN: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PLetter {
    Lam(usize, usize),
    Y(usize),
}

impl fmt::Display for PLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PLetter::Lam(a, b) => write!(f, "Lambda[{},{}]", a + 1, b + 1),
            PLetter::Y(a) => write!(f, "y[{}]", a + 1),
        }
    }
}

pub type PWord = Vec<PLetter>;

fn show_word(w: &[PLetter]) -> String {
    if w.is_empty() {
        "I".into()
    } else {
        w.iter().map(ToString::to_string).collect::<Vec<_>>().join("·")
    }
}

pub fn letters(n: usize) -> Vec<PLetter> {
    let mut out: Vec<PLetter> = (0..n)
        .flat_map(|a| (0..n).map(move |b| PLetter::Lam(a, b)))
        .collect();
    out.extend((0..n).map(PLetter::Y));
    out
}

/// All words of length `0..=max_len`, shortest first.
pub fn words(n: usize, max_len: usize) -> Vec<PWord> {
    let ls = letters(n);
    let mut out = vec![vec![]];
    let mut layer: Vec<PWord> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                ls.iter().map(move |l| {
                    let mut w = w.clone();
                    w.push(*l);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

type Split = Vec<(Scalar, PWord, PWord)>;

/// `ΔΛ_{ij} = Λ_{ik} ⊗ Λ_{kj}`, `Δy_i = Λ_{ij} ⊗ y_j + y_i ⊗ I`,
/// `ε(Λ_{ij}) = δ_{ij}`, `ε(y_i) = 0`.
#[derive(Clone, Copy, Debug)]
pub struct CoproductTable {
    pub n: usize,
}

impl CoproductTable {
    pub fn letter(&self, x: PLetter) -> Split {
        let one = Scalar::one;
        match x {
            PLetter::Lam(i, j) => (0..self.n)
                .map(|k| (one(), vec![PLetter::Lam(i, k)], vec![PLetter::Lam(k, j)]))
                .collect(),
            PLetter::Y(i) => (0..self.n)
                .map(|j| (one(), vec![PLetter::Lam(i, j)], vec![PLetter::Y(j)]))
                .chain(std::iter::once((one(), vec![PLetter::Y(i)], vec![])))
                .collect(),
        }
    }

    pub fn word(&self, w: &[PLetter]) -> Split {
        let mut acc: Split = vec![(Scalar::one(), vec![], vec![])];
        for x in w {
            let parts = self.letter(*x);
            acc = acc
                .iter()
                .flat_map(|(c, l, r)| {
                    parts.iter().map(move |(c2, l2, r2)| {
                        (c * c2, [l.clone(), l2.clone()].concat(), [r.clone(), r2.clone()].concat())
                    })
                })
                .collect();
        }
        acc
    }

    pub fn counit(&self, x: PLetter) -> Scalar {
        match x {
            PLetter::Lam(i, j) if i == j => Scalar::one(),
            _ => Scalar::zero(),
        }
    }

    pub fn counit_word(&self, w: &[PLetter]) -> Scalar {
        w.iter().fold(Scalar::one(), |acc, x| &acc * &self.counit(*x))
    }

    /// `(Δ ⊗ 1)Δ = (1 ⊗ Δ)Δ` and `(ε ⊗ 1)Δ = (1 ⊗ ε)Δ = 1` on every letter.
    pub fn check_coassociativity(&self) -> CheckReport {
        for x in letters(self.n) {
            let mut left: BTreeMap<[PWord; 3], Scalar> = BTreeMap::new();
            let mut right: BTreeMap<[PWord; 3], Scalar> = BTreeMap::new();
            for (c, a, b) in self.letter(x) {
                for (c2, a1, a2) in self.word(&a) {
                    let e = left.entry([a1, a2, b.clone()]).or_insert_with(Scalar::zero);
                    *e = &*e + &(&c * &c2);
                }
                for (c2, b1, b2) in self.word(&b) {
                    let e = right.entry([a.clone(), b1, b2]).or_insert_with(Scalar::zero);
                    *e = &*e + &(&c * &c2);
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            if left != right {
                return CheckReport::fail("coassociativity", format!("on {x}"));
            }
            let mut lc: BTreeMap<PWord, Scalar> = BTreeMap::new();
            let mut rc: BTreeMap<PWord, Scalar> = BTreeMap::new();
            for (c, a, b) in self.letter(x) {
                let e = lc.entry(b.clone()).or_insert_with(Scalar::zero);
                *e = &*e + &(&c * &self.counit_word(&a));
                let e = rc.entry(a).or_insert_with(Scalar::zero);
                *e = &*e + &(&c * &self.counit_word(&b));
            }
            lc.retain(|_, v| !v.is_zero());
            rc.retain(|_, v| !v.is_zero());
            let unit: BTreeMap<PWord, Scalar> = [(vec![x], Scalar::one())].into();
            if lc != unit || rc != unit {
                return CheckReport::fail("counit", format!("on {x}"));
            }
        }
        CheckReport::pass("coassociativity")
    }
}

/// `l(Λ_{ab})_{jl} = R^{PP}_{ja,bl}` and `l(y_a)_{jl} = R^{PP}_{ja,+l}`.
pub fn l_from_rq(rq: &Tensor, n: usize) -> FunctionalHom<PLetter> {
    let p = n + 1;
    let mut h = FunctionalHom::new(p);
    for a in 0..n {
        for b in 0..n {
            h.set(
                PLetter::Lam(a, b),
                Tensor::from_fn(vec![p], vec![p], |j, l| rq.get(j * p + a, b * p + l).clone()),
            );
        }
        h.set(
            PLetter::Y(a),
            Tensor::from_fn(vec![p], vec![p], |j, l| rq.get(j * p + a, n * p + l).clone()),
        );
    }
    h
}

/// `l` for `R^{PP} = R_P + c m_P`.
pub fn build_l(d: &InhomDatum, c: &Scalar) -> Result<FunctionalHom<PLetter>> {
    Ok(l_from_rq(&d.build_rq(c)?, d.n))
}

/// `X_{ik}(Λ_{ab}) = (R^{-1})_{ak,ib}`, `X_{ik}(y_l) = Z_{lk,i}`,
/// `Y_j(y_k) = δ_{jk}`, `Y_j(Λ_{ab}) = 0`, bottom row `(0, ε)`.
pub fn build_x(d: &InhomDatum) -> Result<FunctionalHom<PLetter>> {
    let (n, p) = (d.n, d.n + 1);
    let rinv = d.r.inverse()?;
    let mut h = FunctionalHom::new(p);
    for a in 0..n {
        for b in 0..n {
            let mut m = Tensor::zeros(vec![p], vec![p]);
            for i in 0..n {
                for k in 0..n {
                    m.set(i, k, rinv.get(a * n + k, i * n + b).clone());
                }
            }
            if a == b {
                m.set(n, n, Scalar::one());
            }
            h.set(PLetter::Lam(a, b), m);
        }
        let mut m = Tensor::zeros(vec![p], vec![p]);
        for i in 0..n {
            for k in 0..n {
                m.set(i, k, d.z.get(a * n + k, i).clone());
            }
        }
        m.set(a, n, Scalar::one());
        h.set(PLetter::Y(a), m);
    }
    Ok(h)
}

fn kron_acc(acc: &mut [Scalar], c: &Scalar, a: &Tensor, b: &Tensor) {
    let p = a.rows();
    for i in 0..p {
        for k in 0..p {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            let cx = c * x;
            for j in 0..p {
                for l in 0..p {
                    let y = b.get(j, l);
                    if y.is_zero() {
                        continue;
                    }
                    let slot = &mut acc[(i * p + j) * p * p + k * p + l];
                    *slot = &*slot + &(&cx * y);
                }
            }
        }
    }
}

/// `(h1 ∗ h2)(x) = Σ h1(x_{(1)}) ⊗ h2(x_{(2)})`, expanded through the
/// coproduct of whole words.
pub fn convolve(
    h1: &FunctionalHom<PLetter>,
    h2: &FunctionalHom<PLetter>,
    x: &FreeElement<PLetter>,
    delta: &CoproductTable,
) -> Result<Tensor> {
    let p = h1.size();
    let mut acc = vec![Scalar::zero(); p * p * p * p];
    for (coef, w) in x {
        for (c, w1, w2) in delta.word(w) {
            let a = h1.eval_word(&w1)?;
            let b = h2.eval_word(&w2)?;
            kron_acc(&mut acc, &(coef * &c), &a, &b);
        }
    }
    Tensor::new(vec![p, p], vec![p, p], acc)
}

/// The same convolution as a product over letters, using that
/// `x ↦ (h1 ∗ h2)(x)` is multiplicative.
fn convolve_multiplicative(
    h1: &FunctionalHom<PLetter>,
    h2: &FunctionalHom<PLetter>,
    letter_conv: &BTreeMap<PLetter, Tensor>,
    w: &[PLetter],
) -> Result<Tensor> {
    let p = h1.size().max(h2.size());
    let mut acc = Tensor::identity(&[p, p]);
    for x in w {
        acc = acc.compose(&letter_conv[x])?;
    }
    Ok(acc)
}

fn letter_convolutions(
    h1: &FunctionalHom<PLetter>,
    h2: &FunctionalHom<PLetter>,
    delta: &CoproductTable,
) -> Result<BTreeMap<PLetter, Tensor>> {
    letters(delta.n)
        .into_iter()
        .map(|x| Ok((x, convolve(h1, h2, &vec![(Scalar::one(), vec![x])], delta)?)))
        .collect()
}

/// Sample points for `c`: the given value, or `0..=max_len+2`, which fixes
/// a polynomial of degree at most `max_len + 1`.
fn c_points(c: &Option<Scalar>, max_len: usize) -> Vec<Scalar> {
    match c {
        Some(c) => vec![c.clone()],
        None => (0..=max_len as i64 + 2).map(Scalar::from_int).collect(),
    }
}

fn c_detail(points: &[Scalar], words: usize) -> String {
    match points {
        [c] => format!("c = {c}, {words} words"),
        _ => format!("c interpolated over {} points, {words} words", points.len()),
    }
}

type Defect = Option<(Vec<usize>, Scalar)>;

/// Collects per-word outcomes of a family of identities and keeps the first
/// failure in word order.
struct Tally {
    ids: Vec<String>,
    failures: Vec<Option<(String, Vec<usize>, Scalar)>>,
}

impl Tally {
    fn new(ids: &[&str]) -> Self {
        Tally {
            ids: ids.iter().map(|s| s.to_string()).collect(),
            failures: vec![None; ids.len()],
        }
    }

    fn record(&mut self, k: usize, at: impl FnOnce() -> String, defect: Defect) {
        if self.failures[k].is_none() {
            if let Some((index, value)) = defect {
                self.failures[k] = Some((at(), index, value));
            }
        }
    }

    fn reports(self, detail: &str) -> Vec<CheckReport> {
        self.ids
            .into_iter()
            .zip(self.failures)
            .map(|(id, f)| match f {
                None => CheckReport::pass(id).with_detail(detail),
                Some((at, index, value)) => {
                    let mut r = CheckReport::fail(id, at);
                    r.witness = Some(Witness { index, value });
                    r
                }
            })
            .collect()
    }
}

fn defect_of(t: &Tensor) -> Defect {
    t.first_nonzero()
}

/// The block identities for `L = l|_{N×N}`, `M = l_{·+}`:
/// `R(L∗L) = (L∗L)R`, the two mixed ones with `Z` and `RZ`, and the
/// `M∗M` one with `s = (R−1)T + m`.
fn rll_blocks(
    d: &InhomDatum,
    s: &Tensor,
    rz: &Tensor,
    l: &FunctionalHom<PLetter>,
    conv: &Tensor,
    w: &[PLetter],
) -> Result<[Defect; 4]> {
    let (n, p) = (d.n, d.n + 1);
    let plus = n;
    // (h_{ik} ∗ h_{jl})(x)
    let cv = |i: usize, k: usize, j: usize, l: usize| conv.get(i * p + j, k * p + l);
    let r = |a: usize, b: usize, c: usize, e: usize| d.r.get(a * n + b, c * n + e);
    let z = |a: usize, b: usize, c: usize| d.z.get(a * n + b, c);
    let rzv = |a: usize, b: usize, c: usize| rz.get(a * n + b, c);
    let sv = |a: usize, b: usize| s.get(a * n + b, 0);
    let lx = l.eval_word(w)?;
    let eps = CoproductTable { n }.counit_word(w);
    let sum = |terms: &mut dyn Iterator<Item = Scalar>| terms.fold(Scalar::zero(), |a, b| &a + &b);
    let pairs = || (0..n).flat_map(|c| (0..n).map(move |e| (c, e)));

    let ll = Tensor::from_fn(vec![n, n], vec![n, n], |ab, ef| {
        let (a, b, e, f) = (ab / n, ab % n, ef / n, ef % n);
        let lhs = sum(&mut pairs().map(|(c, dd)| r(a, b, c, dd) * cv(dd, f, c, e)));
        let rhs = sum(&mut pairs().map(|(c, dd)| cv(b, dd, a, c) * r(c, dd, e, f)));
        &lhs - &rhs
    });
    let ml = Tensor::from_fn(vec![n, n], vec![n], |ab, e| {
        let (a, b) = (ab / n, ab % n);
        let lhs = &sum(&mut pairs().map(|(c, dd)| r(a, b, c, dd) * cv(dd, plus, c, e)))
            + &sum(&mut (0..n).map(|c| z(a, b, c) * lx.get(c, e)));
        let rhs = &sum(&mut pairs().map(|(c, dd)| cv(b, dd, a, c) * z(c, dd, e))) + cv(b, e, a, plus);
        &lhs - &rhs
    });
    let lm = Tensor::from_fn(vec![n, n], vec![n], |ab, f| {
        let (a, b) = (ab / n, ab % n);
        let lhs = &sum(&mut pairs().map(|(c, dd)| r(a, b, c, dd) * cv(dd, f, c, plus)))
            - &sum(&mut (0..n).map(|dd| rzv(a, b, dd) * lx.get(dd, f)));
        let rhs = &(-&sum(&mut pairs().map(|(c, dd)| cv(b, dd, a, c) * rzv(c, dd, f)))) + cv(b, plus, a, f);
        &lhs - &rhs
    });
    let mm = Tensor::from_fn(vec![n, n], vec![], |ab, _| {
        let (a, b) = (ab / n, ab % n);
        let lhs = &(&(&sum(&mut pairs().map(|(c, dd)| r(a, b, c, dd) * cv(dd, plus, c, plus)))
            + &sum(&mut (0..n).map(|c| z(a, b, c) * lx.get(c, plus))))
            - &sum(&mut (0..n).map(|dd| rzv(a, b, dd) * lx.get(dd, plus))))
            + &(sv(a, b) * &eps);
        let rhs = &sum(&mut pairs().map(|(c, dd)| cv(b, dd, a, c) * sv(c, dd))) + cv(b, plus, a, plus);
        &lhs - &rhs
    });
    Ok([defect_of(&ll), defect_of(&ml), defect_of(&lm), defect_of(&mm)])
}

/// `R^{PP}(τCτ) = (τCτ)R^{PP}` with `C = l ∗ l` computed letter by letter,
/// against the four block identities computed from the coproduct of whole
/// words. Also reports agreement of the two and that the `L∗M` identity
/// holds wherever the `L∗L` and `M∗L` ones do.
pub fn check_rll(d: &InhomDatum, c: Option<Scalar>, max_len: usize) -> Result<Vec<CheckReport>> {
    check_rll_with(d, c, max_len, None)
}

/// [`check_rll`] with `s` shifted by `s_shift`, both in `M(y)` and in the
/// block identities.
pub fn check_rll_with(
    d: &InhomDatum,
    c: Option<Scalar>,
    max_len: usize,
    s_shift: Option<&Tensor>,
) -> Result<Vec<CheckReport>> {
    let (n, p) = (d.n, d.n + 1);
    let delta = CoproductTable { n };
    let ws = words(n, max_len);
    let points = c_points(&c, max_len);
    let tau = Tensor::flip(p, p);
    let rz = d.r.compose(&d.z)?;
    let mut tally = Tally::new(&["rll-full", "rll-ll", "rll-ml", "rll-lm", "rll-mm", "rll-agreement", "rll-lm-implied"]);
    for cval in &points {
        let mut rq_true = d.build_rq(cval)?;
        if let Some(shift) = s_shift {
            rq_true = rq_true.add(&d.build_mp(shift))?;
        }
        let l = l_from_rq(&rq_true, n);
        let s = Tensor::from_fn(vec![n, n], vec![], |ab, _| {
            rq_true.get((ab / n) * p + ab % n, n * p + n).clone()
        });
        let per_letter = letter_convolutions(&l, &l, &delta)?;
        let results: Vec<Result<[Defect; 5]>> = ws
            .par_iter()
            .map(|w| {
                let cm = convolve_multiplicative(&l, &l, &per_letter, w)?;
                let t = Tensor::chain(&[&tau, &cm, &tau])?;
                let full = defect_of(&rq_true.compose(&t)?.sub(&t.compose(&rq_true)?)?);
                let conv = convolve(&l, &l, &vec![(Scalar::one(), w.clone())], &delta)?;
                let [a, b, cc, dd] = rll_blocks(d, &s, &rz, &l, &conv, w)?;
                Ok([full, a, b, cc, dd])
            })
            .collect();
        for (w, res) in ws.iter().zip(results) {
            let res = res?;
            let at = || format!("on {} at c = {cval}", show_word(w));
            let blocks_ok = res[1..].iter().all(Option::is_none);
            let agree = res[0].is_none() == blocks_ok;
            let implied = !(res[1].is_none() && res[2].is_none()) || res[3].is_none();
            for (k, def) in res.into_iter().enumerate() {
                tally.record(k, at, def);
            }
            if !agree {
                tally.record(5, at, Some((vec![], Scalar::one())));
            }
            if !implied {
                tally.record(6, at, Some((vec![], Scalar::one())));
            }
        }
    }
    Ok(tally.reports(&c_detail(&points, ws.len())))
}

/// `K = diag(Rᵀ, swap, 1)` on `P ⊗ P`, with `R` itself in place of `Rᵀ`
/// when `transpose` is false.
pub fn k_matrix(r: &Tensor, n: usize, transpose: bool) -> Tensor {
    let p = n + 1;
    let mut k = Tensor::zeros(vec![p, p], vec![p, p]);
    for a in 0..n {
        for c in 0..n {
            for b in 0..n {
                for dd in 0..n {
                    let v = if transpose {
                        r.get(b * n + dd, a * n + c)
                    } else {
                        r.get(a * n + c, b * n + dd)
                    };
                    k.set(a * p + c, b * p + dd, v.clone());
                }
            }
        }
        k.set(a * p + n, n * p + a, Scalar::one());
        k.set(n * p + a, a * p + n, Scalar::one());
    }
    k.set(n * p + n, n * p + n, Scalar::one());
    k
}

/// `n_P`: the entries of `n` in the `ΛΛ ← ++` position, as for `m_P`.
pub fn n_p(n_row: &Tensor, n: usize) -> Tensor {
    let p = n + 1;
    let mut out = Tensor::zeros(vec![p, p], vec![p, p]);
    for a in 0..n {
        for b in 0..n {
            out.set(a * p + b, n * p + n, n_row.get(0, a * n + b).clone());
        }
    }
    out
}

/// `(X ∗ X)K = K(X ∗ X)` on every word, and again with `K + n_P` when an
/// invariant row `n` is given.
pub fn check_xkx(d: &InhomDatum, max_len: usize, n_row: Option<&Tensor>) -> Result<Vec<CheckReport>> {
    let k = k_matrix(&d.r, d.n, true);
    let mut out = vec![check_xkx_with(d, max_len, &k, "xkx")?];
    if let Some(nr) = n_row {
        let kn = k.add(&n_p(nr, d.n))?;
        out.push(check_xkx_with(d, max_len, &kn, "xkx+n")?);
    }
    Ok(out)
}

pub fn check_xkx_with(d: &InhomDatum, max_len: usize, k: &Tensor, id_: &str) -> Result<CheckReport> {
    let n = d.n;
    let delta = CoproductTable { n };
    let x = build_x(d)?;
    let per_letter = letter_convolutions(&x, &x, &delta)?;
    let ws = words(n, max_len);
    let results: Vec<Result<Defect>> = ws
        .par_iter()
        .map(|w| {
            let dm = convolve_multiplicative(&x, &x, &per_letter, w)?;
            Ok(defect_of(&dm.compose(k)?.sub(&k.compose(&dm)?)?))
        })
        .collect();
    let mut tally = Tally::new(&[id_]);
    for (w, res) in ws.iter().zip(results) {
        tally.record(0, || format!("on {}", show_word(w)), res?);
    }
    Ok(tally.reports(&format!("{} words", ws.len())).remove(0))
}

fn restrict(conv: &Tensor, n: usize) -> Tensor {
    let p = n + 1;
    Tensor::from_fn(vec![n, n], vec![n, n], |ij, kl| {
        conv.get((ij / n) * p + ij % n, (kl / n) * p + kl % n).clone()
    })
}

/// `(L_{bd} ∗ L_{ac})k_{cd} = k_{ab}ε`, `n_{ab}(L_{bd} ∗ L_{ac}) = n_{cd}ε`,
/// `k_{ab}(X_{ac} ∗ X_{bd}) = k_{cd}ε`, `(X_{ac} ∗ X_{bd})n_{cd} = n_{ab}ε`
/// for a column `k` and a row `n` on `Λ ⊗ Λ`.
pub fn check_pairings(
    d: &InhomDatum,
    c: Option<Scalar>,
    k: &Tensor,
    n_row: &Tensor,
    max_len: usize,
) -> Result<Vec<CheckReport>> {
    let n = d.n;
    let delta = CoproductTable { n };
    let ws = words(n, max_len);
    let points = c_points(&c, max_len);
    let tau = Tensor::flip(n, n);
    let x = build_x(d)?;
    let k_row = k.transpose();
    let n_col = n_row.transpose();
    let mut tally = Tally::new(&["pairing-l-k", "pairing-l-n", "pairing-x-k", "pairing-x-n"]);
    for cval in &points {
        let l = build_l(d, cval)?;
        let results: Vec<Result<[Defect; 4]>> = ws
            .par_iter()
            .map(|w| {
                let el = vec![(Scalar::one(), w.clone())];
                let eps = delta.counit_word(w);
                let cl = Tensor::chain(&[&tau, &restrict(&convolve(&l, &l, &el, &delta)?, n), &tau])?;
                let dx = restrict(&convolve(&x, &x, &el, &delta)?, n);
                Ok([
                    defect_of(&cl.compose(k)?.sub(&k.scale(&eps))?),
                    defect_of(&n_row.compose(&cl)?.sub(&n_row.scale(&eps))?),
                    defect_of(&k_row.compose(&dx)?.sub(&k_row.scale(&eps))?),
                    defect_of(&dx.compose(&n_col)?.sub(&n_col.scale(&eps))?),
                ])
            })
            .collect();
        for (w, res) in ws.iter().zip(results) {
            for (i, def) in res?.into_iter().enumerate() {
                tally.record(i, || format!("on {} at c = {cval}", show_word(w)), def);
            }
        }
    }
    Ok(tally.reports(&c_detail(&points, ws.len())))
}

fn term(c: Scalar, w: PWord) -> (Scalar, PWord) {
    (c, w)
}

/// `y_s Λ_{ab} − (Λ_{ab} ∗ f_{st})y_t − Λ_{ab} ∗ η_s + Λ_{st}(η_t ∗ Λ_{ab})`
/// with `f_{st}(Λ_{kb}) = R_{sk,bt}` and `η_s(Λ_{kb}) = Z_{sk,b}`.
pub fn exchange_element(d: &InhomDatum, s: usize, a: usize, b: usize) -> FreeElement<PLetter> {
    use PLetter::{Lam, Y};
    let n = d.n;
    let mut out = vec![term(Scalar::one(), vec![Y(s), Lam(a, b)])];
    for k in 0..n {
        for t in 0..n {
            let r = d.r.get(s * n + k, b * n + t);
            if !r.is_zero() {
                out.push(term(-r, vec![Lam(a, k), Y(t)]));
            }
            let z = d.z.get(t * n + a, k);
            if !z.is_zero() {
                out.push(term(z.clone(), vec![Lam(s, t), Lam(k, b)]));
            }
        }
        let z = d.z.get(s * n + k, b);
        if !z.is_zero() {
            out.push(term(-z, vec![Lam(a, k)]));
        }
    }
    out
}

/// `(R − 1)_{kl,ij}(y_i y_j − Z_{ij,s}y_s + T_{ij} − Λ_{im}Λ_{jn}T_{mn})`.
pub fn translation_element(d: &InhomDatum, k: usize, l: usize) -> FreeElement<PLetter> {
    use PLetter::{Lam, Y};
    let n = d.n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut coef = d.r.get(k * n + l, i * n + j).clone();
            if (k, l) == (i, j) {
                coef = &coef - &Scalar::one();
            }
            if coef.is_zero() {
                continue;
            }
            out.push(term(coef.clone(), vec![Y(i), Y(j)]));
            for s in 0..n {
                let z = d.z.get(i * n + j, s);
                if !z.is_zero() {
                    out.push(term(-&(&coef * z), vec![Y(s)]));
                }
            }
            let t = d.t.get(i * n + j, 0);
            if !t.is_zero() {
                out.push(term(&coef * t, vec![]));
            }
            for m in 0..n {
                for nn in 0..n {
                    let t = d.t.get(m * n + nn, 0);
                    if !t.is_zero() {
                        out.push(term(-&(&coef * t), vec![Lam(i, m), Lam(j, nn)]));
                    }
                }
            }
        }
    }
    out
}

/// Both `l` and `X` vanish on every exchange and translation element.
pub fn check_ideal_killed(d: &InhomDatum, c: Option<Scalar>) -> Result<Vec<CheckReport>> {
    check_ideal_killed_against(d, d, c)
}

/// `l` and `X` of `d` on the relation elements formed from the data of
/// `elements`.
pub fn check_ideal_killed_against(
    d: &InhomDatum,
    elements: &InhomDatum,
    c: Option<Scalar>,
) -> Result<Vec<CheckReport>> {
    let n = d.n;
    let points = c_points(&c, 2);
    let x = build_x(d)?;
    let mut tally = Tally::new(&["ideal-exchange/l", "ideal-exchange/x", "ideal-translation/l", "ideal-translation/x"]);
    for cval in &points {
        let l = build_l(d, cval)?;
        for s in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let el = exchange_element(elements, s, a, b);
                    let at = || format!("s={} a={} b={} at c = {cval}", s + 1, a + 1, b + 1);
                    tally.record(0, at, defect_of(&l.eval_element(&el)?));
                    tally.record(1, at, defect_of(&x.eval_element(&el)?));
                }
            }
        }
        for k in 0..n {
            for ll in 0..n {
                let el = translation_element(elements, k, ll);
                let at = || format!("k={} l={} at c = {cval}", k + 1, ll + 1);
                tally.record(2, at, defect_of(&l.eval_element(&el)?));
                tally.record(3, at, defect_of(&x.eval_element(&el)?));
            }
        }
    }
    Ok(tally.reports(&c_detail(&points, 0).replace(", 0 words", "")))
}

/// Dimension of the span of the identity and the letter values of `h`,
/// an indicator of how small the generated algebra is.
pub fn letter_span_rank(h: &FunctionalHom<PLetter>) -> usize {
    let mut basis = SpanBasis::new();
    basis.insert(Tensor::identity(&[h.size()]).entries());
    for x in h.letters() {
        if let Ok(v) = h.value(x) {
            basis.insert(v.entries());
        }
    }
    basis.dim()
}

/// The full suite: coproduct table, RLL identities, the `K` relation,
/// pairings with `m_0` and its dual row, the ideal elements and the
/// letter-span diagnostic.
pub fn uea_suite(d: &InhomDatum, c: Option<Scalar>, max_len: usize, n_row: Option<&Tensor>) -> Result<Vec<CheckReport>> {
    let mut out = vec![CoproductTable { n: d.n }.check_coassociativity()];
    out.extend(check_rll(d, c.clone(), max_len)?);
    out.extend(check_xkx(d, max_len, n_row)?);
    match (d.m0.as_ref(), d.build_n0()) {
        (Some(k), Ok(nr)) => out.extend(check_pairings(d, c.clone(), k, &nr, max_len)?),
        _ => out.push(CheckReport::skipped("pairings", "no stored invariants")),
    }
    out.extend(check_ideal_killed(d, c.clone())?);
    let l = build_l(d, &c.unwrap_or_else(Scalar::zero))?;
    let x = build_x(d)?;
    out.push(CheckReport::pass("letter-span").with_detail(format!(
        "span of letter values: l {}, X {}",
        letter_span_rank(&l),
        letter_span_rank(&x)
    )));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inhomogeneous::{flip_datum, twisted_flip_datum};
    use crate::report::all_passed;
    use crate::scalars::Gauss;

    #[test]
    fn coproduct_table() {
        let delta = CoproductTable { n: 4 };
        assert!(delta.check_coassociativity().passed());
        assert_eq!(words(4, 2).len(), 421);
        assert_eq!(delta.word(&[PLetter::Y(0), PLetter::Lam(0, 1)]).len(), 20);
    }

    #[test]
    fn letter_values() {
        let d = InhomDatum::classical();
        let l = build_l(&d, &Scalar::zero()).unwrap();
        let p = 5;
        // L_{jl}(Λ_{ab}) = R_{ja,bl}, bottom row (0, ε)
        for (a, b) in [(0, 0), (1, 2)] {
            let v = l.value(&PLetter::Lam(a, b)).unwrap();
            for j in 0..4 {
                for k in 0..4 {
                    assert_eq!(v.get(j, k), d.r.get(j * 4 + a, b * 4 + k));
                }
                assert!(v.get(4, j).is_zero());
                assert!(v.get(j, 4).is_zero());
            }
            assert_eq!(*v.get(4, 4), if a == b { Scalar::one() } else { Scalar::zero() });
        }
        let c = Scalar::from_int(3);
        let l = build_l(&d, &c).unwrap();
        let m0 = d.build_m0().unwrap();
        for j in 0..4 {
            for a in 0..4 {
                let v = l.value(&PLetter::Y(a)).unwrap();
                assert_eq!(*v.get(j, 4), &c * m0.get(j * 4 + a, 0));
            }
        }
        let w = [PLetter::Lam(0, 0), PLetter::Y(0)];
        let prod = l.value(&w[0]).unwrap().compose(l.value(&w[1]).unwrap()).unwrap();
        assert_eq!(l.eval_word(&w).unwrap(), prod);
        let x = build_x(&d).unwrap();
        assert!(x.eval_word(&[]).unwrap().is_identity());
        let y = x.value(&PLetter::Y(2)).unwrap();
        assert!(y.get(2, 4).is_one() && y.get(0, 4).is_zero());
        assert_eq!(p, l.size());
    }

    #[test]
    fn convolution_with_counit() {
        let d = InhomDatum::classical();
        let delta = CoproductTable { n: 4 };
        let l = build_l(&d, &Scalar::from_int(2)).unwrap();
        let mut eps = FunctionalHom::new(5);
        for x in letters(4) {
            let mut m = Tensor::zeros(vec![5], vec![5]);
            m.set(0, 0, delta.counit(x));
            eps.set(x, m);
        }
        for x in letters(4) {
            let el = vec![(Scalar::one(), vec![x])];
            let c = convolve(&eps, &l, &el, &delta).unwrap();
            let lx = l.eval_word(&[x]).unwrap();
            for a in 0..5 {
                for b in 0..5 {
                    assert_eq!(c.get(a, b), lx.get(a, b));
                }
            }
        }
    }

    #[test]
    fn classical_rll() {
        let d = InhomDatum::classical();
        let reports = check_rll(&d, None, 2).unwrap();
        assert!(all_passed(&reports), "{reports:?}");
    }

    #[test]
    fn classical_xkx_and_pairings() {
        let d = InhomDatum::classical();
        let n0 = d.build_n0().unwrap();
        let reports = check_xkx(&d, 2, Some(&n0)).unwrap();
        assert!(all_passed(&reports), "{reports:?}");
        let m0 = d.build_m0().unwrap();
        let reports = check_pairings(&d, None, &m0, &n0, 2).unwrap();
        assert!(all_passed(&reports), "{reports:?}");
        let zero_k = m0.scale(&Scalar::zero());
        let zero_n = n0.scale(&Scalar::zero());
        assert!(all_passed(&check_pairings(&d, None, &zero_k, &zero_n, 1).unwrap()));
        // the classical L is trivial, so a non-invariant k is only caught at q = -1
        let mut k = Tensor::zeros(vec![4, 4], vec![]);
        k.set(1, 0, Scalar::one());
        assert!(all_passed(&check_pairings(&d, None, &k, &zero_n, 1).unwrap()));
        let d = flip_datum(&Gauss::i(), 1).unwrap();
        let reports = check_pairings(&d, None, &k, &zero_n, 1).unwrap();
        assert!(!reports[0].passed());
    }

    #[test]
    fn classical_ideal() {
        let d = InhomDatum::classical();
        let reports = check_ideal_killed(&d, None).unwrap();
        assert!(all_passed(&reports), "{reports:?}");
    }

    #[test]
    fn corrupted_z_not_killed() {
        let d = flip_datum(&Gauss::i(), 1).unwrap();
        let mut bad = d.clone();
        bad.z.set(1, 2, Scalar::one());
        let reports = check_ideal_killed_against(&d, &bad, None).unwrap();
        let r = reports.iter().find(|r| r.check_id == "ideal-exchange/l").unwrap();
        assert!(!r.passed() && r.witness.is_some(), "{r}");
    }

    #[test]
    fn shifted_s_breaks_mm_only_where_l_sees_it() {
        let mut shift = Tensor::zeros(vec![4, 4], vec![]);
        shift.set(1, 0, Scalar::one());
        let d = flip_datum(&Gauss::i(), 1).unwrap();
        let reports = check_rll_with(&d, Some(Scalar::zero()), 1, Some(&shift)).unwrap();
        let get = |id: &str| reports.iter().find(|r| r.check_id == id).unwrap();
        assert!(!get("rll-mm").passed());
        assert!(!get("rll-full").passed());
        assert!(get("rll-agreement").passed());
        let classical = InhomDatum::classical();
        assert!(all_passed(&check_rll_with(&classical, Some(Scalar::zero()), 1, Some(&shift)).unwrap()));
    }

    #[test]
    fn minus_one_datum_suite() {
        let d = flip_datum(&Gauss::i(), -1).unwrap();
        let n0 = d.build_n0().unwrap();
        let reports = uea_suite(&d, None, 1, Some(&n0)).unwrap();
        assert!(all_passed(&reports), "{reports:?}");
    }

    #[test]
    fn k_needs_transposed_r() {
        let d = twisted_flip_datum();
        assert_ne!(d.r.transpose(), d.r);
        assert!(check_xkx_with(&d, 2, &k_matrix(&d.r, 4, true), "xkx").unwrap().passed());
        assert!(!check_xkx_with(&d, 1, &k_matrix(&d.r, 4, false), "xkx").unwrap().passed());
        assert!(all_passed(&check_rll(&d, None, 1).unwrap()));
    }
}
