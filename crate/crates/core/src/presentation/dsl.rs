//! Text format for presentations, candidate R-blocks and datum tables.
//!
//! ```text
//! field { var = t ; conj = real }
//! gen w : 2 conj wb
//! mat E : [] -> [w w] { 2,1 = 1 ; 3,1 = -q }
//! rel E
//! cand w w = t * (id(4) + q^-1 * E . Ep)
//! table rep w { G = flip(2,4) ; H = Hw }
//! param c = 1/2
//! ```
//!
//! Matrix entries are addressed by 1-based flattened row and column numbers.
//! A word item is either a generator name or a plain leg dimension.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::model::{CandidateR, GeneratorSpec, Presentation, Relation};
use crate::error::{Error, Result};
use crate::scalars::{ConjMode, Gauss, Scalar};
use crate::tensor::Tensor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatDecl {
    pub name: String,
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub tensor: Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandDecl {
    pub alpha: String,
    pub beta: String,
    pub tensor: Tensor,
    pub trusted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RepTable {
    pub name: String,
    pub g: Option<Tensor>,
    pub h: Option<Tensor>,
}

/// Everything a datum file declares, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub mode: ConjMode,
    pub generators: Vec<GeneratorSpec>,
    pub params: Vec<(String, Scalar)>,
    pub mats: Vec<MatDecl>,
    pub relations: Vec<String>,
    pub candidates: Vec<CandDecl>,
    pub tables: Vec<RepTable>,
}

impl Document {
    pub fn mat(&self, name: &str) -> Option<&MatDecl> {
        self.mats.iter().find(|m| m.name == name)
    }

    pub fn param(&self, name: &str) -> Option<&Scalar> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn table(&self, name: &str) -> Option<&RepTable> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn presentation(&self) -> Presentation {
        let relations = self
            .relations
            .iter()
            .filter_map(|r| self.mat(r))
            .map(|m| Relation {
                name: m.name.clone(),
                matrix: m.tensor.clone(),
                source: m.source.clone(),
                target: m.target.clone(),
            })
            .collect();
        Presentation {
            generators: self.generators.clone(),
            relations,
            mode: self.mode,
        }
    }

    pub fn candidate(&self) -> CandidateR {
        let mut c = CandidateR::new();
        for d in &self.candidates {
            c.insert(&d.alpha, &d.beta, d.tensor.clone());
            if d.trusted {
                c.trusted.insert((d.alpha.clone(), d.beta.clone()));
            }
        }
        c
    }

    /// Prints the document in a form [`parse_document`] reads back to an
    /// equivalent document. Candidate blocks and table entries are written
    /// as matrix literals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let conj = match self.mode {
            ConjMode::Real => "real",
            ConjMode::Unimodular => "unimodular",
        };
        let _ = writeln!(out, "field {{ var = t ; conj = {conj} }}");
        for g in &self.generators {
            if g.conj == g.name {
                let _ = writeln!(out, "gen {} : {}", g.name, g.dim);
            } else {
                let _ = writeln!(out, "gen {} : {} conj {}", g.name, g.dim, g.conj);
            }
        }
        for (n, v) in &self.params {
            let _ = writeln!(out, "param {n} = {v}");
        }
        for m in &self.mats {
            write_mat(&mut out, &m.name, &m.source, &m.target, &m.tensor);
        }
        for r in &self.relations {
            let _ = writeln!(out, "rel {r}");
        }
        for c in &self.candidates {
            let trusted = if c.trusted { " trusted" } else { "" };
            let _ = writeln!(
                out,
                "cand {} {} = {}{trusted}",
                c.alpha,
                c.beta,
                inline_literal(&c.tensor)
            );
        }
        for t in &self.tables {
            let mut parts = Vec::new();
            for (key, v) in [("G", &t.g), ("H", &t.h)] {
                if let Some(v) = v {
                    parts.push(format!("{key} = {}", inline_literal(v)));
                }
            }
            let _ = writeln!(out, "table rep {} {{ {} }}", t.name, parts.join(" ; "));
        }
        out
    }
}

fn entry_list(t: &Tensor) -> String {
    let mut parts = Vec::new();
    for r in 0..t.rows() {
        for c in 0..t.cols() {
            let v = t.get(r, c);
            if !v.is_zero() {
                parts.push(format!("{},{} = {v}", r + 1, c + 1));
            }
        }
    }
    if parts.is_empty() {
        "{ }".to_string()
    } else {
        format!("{{ {} }}", parts.join(" ; "))
    }
}

fn write_mat(out: &mut String, name: &str, source: &[String], target: &[String], t: &Tensor) {
    let _ = writeln!(
        out,
        "mat {name} : [{}] -> [{}] {}",
        source.join(" "),
        target.join(" "),
        entry_list(t)
    );
}

/// `mat([dom] -> [cod] { ... })`, a matrix literal usable inside expressions.
fn inline_literal(t: &Tensor) -> String {
    let legs = |l: &[usize]| l.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    format!(
        "mat([{}] -> [{}] {})",
        legs(t.domain()),
        legs(t.codomain()),
        entry_list(t)
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 17] = [
    "->", "{", "}", "[", "]", "(", ")", ":", ";", ",", "=", "+", "-", "*", "/", "^", ".",
];

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '′'
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        if c == '#' {
            while k < chars.len() && chars[k] != '\n' {
                k += 1;
            }
            continue;
        }
        let start_col = col;
        if is_ident_start(c) {
            let mut s = String::new();
            while k < chars.len() && is_ident_continue(chars[k]) {
                s.push(chars[k]);
                k += 1;
                col += 1;
            }
            toks.push(Spanned {
                tok: Tok::Ident(s),
                line,
                col: start_col,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while k < chars.len() && chars[k].is_ascii_digit() {
                s.push(chars[k]);
                k += 1;
                col += 1;
            }
            toks.push(Spanned {
                tok: Tok::Int(s.parse().unwrap()),
                line,
                col: start_col,
            });
            continue;
        }
        let rest: String = chars[k..chars.len().min(k + 2)].iter().collect();
        let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
            return Err(Error::Syntax {
                line,
                col,
                found: format!("`{c}`"),
                expected: vec!["a token".into()],
            });
        };
        k += sym.chars().count();
        col += sym.chars().count();
        toks.push(Spanned {
            tok: Tok::Sym(sym),
            line,
            col: start_col,
        });
    }
    toks.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(toks)
}

const RESERVED: [&str; 16] = [
    "field", "gen", "mat", "rel", "cand", "table", "param", "trusted", "kron", "flip", "inv",
    "tauconj", "id", "i", "t", "q",
];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    doc: Document,
    var: Option<String>,
    gen_pos: BTreeMap<String, (usize, usize)>,
}

/// Parses a datum file.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        doc: Document::default(),
        var: None,
        gen_pos: BTreeMap::new(),
    };
    p.document()?;
    Ok(p.doc)
}

/// Parses a single scalar expression in `t`, `q` and `i`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        doc: Document::default(),
        var: None,
        gen_pos: BTreeMap::new(),
    };
    let s = p.scalar()?;
    p.expect_eof()?;
    Ok(s)
}

/// Parses a scalar that must not depend on `t`, such as an evaluation point.
pub fn parse_constant(text: &str) -> Result<Gauss> {
    parse_scalar(text)?
        .as_constant()
        .ok_or_else(|| Error::UnsupportedSample(format!("`{text}` depends on t")))
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.toks[self.pos];
        (s.line, s.col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Syntax {
            line,
            col,
            found: self.peek().describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.fail(&[&format!("`{s}`")])
        }
    }

    fn expect_kw(&mut self, s: &str) -> Result<()> {
        if self.is_kw(s) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{s}`")])
        }
    }

    fn expect_eof(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.fail(&["end of input"])
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(&["identifier"]),
        }
    }

    fn fresh_ident(&mut self) -> Result<(String, usize, usize)> {
        let (line, col) = self.here();
        let name = self.ident()?;
        if RESERVED.contains(&name.as_str()) || self.var.as_deref() == Some(name.as_str()) {
            return Err(Error::DuplicateName { name, line, col });
        }
        Ok((name, line, col))
    }

    fn usize_lit(&mut self) -> Result<usize> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                usize::try_from(n).or_else(|_| self.fail(&["small integer"]))
            }
            _ => self.fail(&["integer"]),
        }
    }

    fn document(&mut self) -> Result<()> {
        loop {
            while self.eat_sym(";") {}
            let (line, col) = self.here();
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(kw) => match kw.as_str() {
                    "field" => self.field()?,
                    "gen" => self.gen()?,
                    "mat" => self.mat()?,
                    "rel" => self.rel()?,
                    "cand" => self.cand()?,
                    "table" => self.table()?,
                    "param" => self.param()?,
                    _ => {
                        return Err(Error::Syntax {
                            line,
                            col,
                            found: format!("`{kw}`"),
                            expected: statement_keywords(),
                        })
                    }
                },
                _ => {
                    return Err(Error::Syntax {
                        line,
                        col,
                        found: self.peek().describe(),
                        expected: statement_keywords(),
                    })
                }
            }
        }
        self.check_generators()
    }

    fn check_generators(&self) -> Result<()> {
        for g in &self.doc.generators {
            let (line, col) = self.gen_pos[&g.name];
            let Some(c) = self.doc.generators.iter().find(|h| h.name == g.conj) else {
                return Err(Error::UnknownGenerator {
                    name: g.conj.clone(),
                    line,
                    col,
                });
            };
            if c.conj != g.name || c.dim != g.dim {
                return Err(Error::Shape(format!(
                    "{line}:{col}: conjugate of `{}` must be `{}` with equal dimension",
                    g.name, c.name
                )));
            }
        }
        Ok(())
    }

    fn field(&mut self) -> Result<()> {
        self.expect_kw("field")?;
        self.expect_sym("{")?;
        loop {
            while self.eat_sym(";") {}
            if self.eat_sym("}") {
                return Ok(());
            }
            let key = self.ident()?;
            self.expect_sym("=")?;
            match key.as_str() {
                "var" => {
                    let v = self.ident()?;
                    if v != "t" {
                        self.var = Some(v);
                    }
                }
                "conj" => {
                    let m = self.ident()?;
                    self.doc.mode = match m.as_str() {
                        "real" => ConjMode::Real,
                        "unimodular" => ConjMode::Unimodular,
                        _ => {
                            self.pos -= 1;
                            return self.fail(&["`real`", "`unimodular`"]);
                        }
                    };
                }
                _ => {
                    self.pos -= 2;
                    return self.fail(&["`var`", "`conj`"]);
                }
            }
        }
    }

    fn gen(&mut self) -> Result<()> {
        self.expect_kw("gen")?;
        let (name, line, col) = self.fresh_ident()?;
        if self.gen_pos.contains_key(&name) {
            return Err(Error::DuplicateName { name, line, col });
        }
        self.expect_sym(":")?;
        let dim = self.usize_lit()?;
        if dim == 0 {
            return Err(Error::Shape(format!("{line}:{col}: generator `{name}` has dimension 0")));
        }
        let conj = if self.is_kw("conj") {
            self.bump();
            self.ident()?
        } else {
            name.clone()
        };
        self.gen_pos.insert(name.clone(), (line, col));
        self.doc.generators.push(GeneratorSpec { name, dim, conj });
        Ok(())
    }

    fn word(&mut self) -> Result<(Vec<String>, Vec<usize>)> {
        self.expect_sym("[")?;
        let mut items = Vec::new();
        let mut legs = Vec::new();
        loop {
            let (line, col) = self.here();
            match self.peek().clone() {
                Tok::Sym("]") => {
                    self.bump();
                    return Ok((items, legs));
                }
                Tok::Int(_) => {
                    let d = self.usize_lit()?;
                    if d == 0 {
                        return Err(Error::Shape(format!("{line}:{col}: leg of dimension 0")));
                    }
                    items.push(d.to_string());
                    legs.push(d);
                }
                Tok::Ident(g) => {
                    self.bump();
                    let Some(spec) = self.doc.generators.iter().find(|s| s.name == g) else {
                        return Err(Error::UnknownGenerator { name: g, line, col });
                    };
                    legs.push(spec.dim);
                    items.push(g);
                }
                _ => return self.fail(&["generator name", "dimension", "`]`"]),
            }
        }
    }

    fn name_taken(&self, name: &str) -> bool {
        self.doc.mat(name).is_some() || self.doc.param(name).is_some()
    }

    fn mat(&mut self) -> Result<()> {
        self.expect_kw("mat")?;
        let (name, line, col) = self.fresh_ident()?;
        if self.name_taken(&name) {
            return Err(Error::DuplicateName { name, line, col });
        }
        self.expect_sym(":")?;
        let (source, dom) = self.word()?;
        self.expect_sym("->")?;
        let (target, cod) = self.word()?;
        let rows: usize = cod.iter().product();
        let cols: usize = dom.iter().product();
        let tensor = if self.eat_sym("=") {
            let t = self.tensor()?;
            if t.rows() != rows || t.cols() != cols {
                return Err(Error::Shape(format!(
                    "{line}:{col}: matrix `{name}` is {}x{}, but its words need {rows}x{cols}",
                    t.rows(),
                    t.cols()
                )));
            }
            t.with_legs(cod, dom)?
        } else {
            self.matrix_body(cod, dom, &name)?
        };
        self.doc.mats.push(MatDecl {
            name,
            source,
            target,
            tensor,
        });
        Ok(())
    }

    fn matrix_body(&mut self, cod: Vec<usize>, dom: Vec<usize>, name: &str) -> Result<Tensor> {
        let mut t = Tensor::zeros(cod, dom);
        let (rows, cols) = (t.rows(), t.cols());
        self.expect_sym("{")?;
        loop {
            while self.eat_sym(";") {}
            if self.eat_sym("}") {
                return Ok(t);
            }
            let (el, ec) = self.here();
            let r = self.usize_lit()?;
            self.expect_sym(",")?;
            let c = self.usize_lit()?;
            self.expect_sym("=")?;
            let v = self.scalar()?;
            if r == 0 || c == 0 || r > rows || c > cols {
                return Err(Error::Shape(format!(
                    "{el}:{ec}: entry ({r},{c}) outside the {rows}x{cols} matrix `{name}`"
                )));
            }
            t.set(r - 1, c - 1, v);
        }
    }

    fn rel(&mut self) -> Result<()> {
        self.expect_kw("rel")?;
        let (line, col) = self.here();
        let name = self.ident()?;
        let Some(m) = self.doc.mat(&name) else {
            return Err(Error::UnknownName { name, line, col });
        };
        if let Some(bad) = m
            .source
            .iter()
            .chain(&m.target)
            .find(|g| !self.gen_pos.contains_key(*g))
        {
            return Err(Error::Shape(format!(
                "{line}:{col}: relation `{name}` uses leg `{bad}`, which is not a generator"
            )));
        }
        if self.doc.relations.contains(&name) {
            return Err(Error::DuplicateName { name, line, col });
        }
        self.doc.relations.push(name);
        Ok(())
    }

    fn gen_ref(&mut self) -> Result<GeneratorSpec> {
        let (line, col) = self.here();
        let name = self.ident()?;
        self.doc
            .generators
            .iter()
            .find(|g| g.name == name)
            .cloned()
            .ok_or(Error::UnknownGenerator { name, line, col })
    }

    fn cand(&mut self) -> Result<()> {
        self.expect_kw("cand")?;
        let (line, col) = self.here();
        let a = self.gen_ref()?;
        let b = self.gen_ref()?;
        if self
            .doc
            .candidates
            .iter()
            .any(|c| c.alpha == a.name && c.beta == b.name)
        {
            return Err(Error::DuplicateName {
                name: format!("cand {} {}", a.name, b.name),
                line,
                col,
            });
        }
        self.expect_sym("=")?;
        let t = self.tensor()?;
        let n = a.dim * b.dim;
        if t.rows() != n || t.cols() != n {
            return Err(Error::Shape(format!(
                "{line}:{col}: block ({}, {}) is {}x{}, expected {n}x{n}",
                a.name,
                b.name,
                t.rows(),
                t.cols()
            )));
        }
        let tensor = t.with_legs(vec![b.dim, a.dim], vec![a.dim, b.dim])?;
        let trusted = if self.is_kw("trusted") {
            self.bump();
            true
        } else {
            false
        };
        self.doc.candidates.push(CandDecl {
            alpha: a.name,
            beta: b.name,
            tensor,
            trusted,
        });
        Ok(())
    }

    fn table(&mut self) -> Result<()> {
        self.expect_kw("table")?;
        self.expect_kw("rep")?;
        let (line, col) = self.here();
        let name = self.ident()?;
        if self.doc.table(&name).is_some() {
            return Err(Error::DuplicateName { name, line, col });
        }
        let mut table = RepTable {
            name,
            ..RepTable::default()
        };
        self.expect_sym("{")?;
        loop {
            while self.eat_sym(";") {}
            if self.eat_sym("}") {
                break;
            }
            let key = if self.is_kw("G") || self.is_kw("H") {
                self.ident()?
            } else {
                return self.fail(&["`G`", "`H`", "`}`"]);
            };
            self.expect_sym("=")?;
            let t = self.tensor()?;
            if key == "G" {
                table.g = Some(t);
            } else {
                table.h = Some(t);
            }
        }
        self.doc.tables.push(table);
        Ok(())
    }

    fn param(&mut self) -> Result<()> {
        self.expect_kw("param")?;
        let (name, line, col) = self.fresh_ident()?;
        if self.name_taken(&name) {
            return Err(Error::DuplicateName { name, line, col });
        }
        self.expect_sym("=")?;
        let v = self.scalar()?;
        self.doc.params.push((name, v));
        Ok(())
    }

    // scalar := term (('+' | '-') term)*
    fn scalar(&mut self) -> Result<Scalar> {
        let mut acc = self.scalar_term()?;
        loop {
            if self.eat_sym("+") {
                acc = &acc + &self.scalar_term()?;
            } else if self.eat_sym("-") {
                acc = &acc - &self.scalar_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    fn scalar_term(&mut self) -> Result<Scalar> {
        let mut acc = self.scalar_unary()?;
        loop {
            if self.eat_sym("*") {
                acc = &acc * &self.scalar_unary()?;
            } else if self.eat_sym("/") {
                acc = acc.checked_div(&self.scalar_unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn scalar_unary(&mut self) -> Result<Scalar> {
        if self.eat_sym("-") {
            return Ok(-self.scalar_unary()?);
        }
        let base = self.scalar_atom()?;
        if self.eat_sym("^") {
            let neg = self.eat_sym("-");
            let e = self.usize_lit()?;
            let e = i32::try_from(e).or_else(|_| self.fail(&["small exponent"]))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn scalar_atom(&mut self) -> Result<Scalar> {
        let (line, col) = self.here();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Scalar::from_gauss(Gauss::from_rational(BigRational::from_integer(n))))
            }
            Tok::Sym("(") => {
                self.bump();
                let s = self.scalar()?;
                self.expect_sym(")")?;
                Ok(s)
            }
            Tok::Ident(name) => {
                self.bump();
                if name == "i" {
                    Ok(Scalar::i())
                } else if name == "t" || self.var.as_deref() == Some(name.as_str()) {
                    Ok(Scalar::t())
                } else if name == "q" {
                    Ok(Scalar::q())
                } else if let Some(v) = self.doc.param(&name) {
                    Ok(v.clone())
                } else {
                    Err(Error::UnknownName { name, line, col })
                }
            }
            _ => self.fail(&["number", "`i`", "`t`", "`q`", "parameter", "`(`"]),
        }
    }

    // tensor := comp (('+' | '-') comp)*
    fn tensor(&mut self) -> Result<Tensor> {
        let mut acc = self.tensor_comp()?;
        loop {
            let (line, col) = self.here();
            let op = if self.eat_sym("+") {
                '+'
            } else if self.eat_sym("-") {
                '-'
            } else {
                return Ok(acc);
            };
            let rhs = self.tensor_comp()?;
            let res = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
            acc = res.map_err(|e| located(e, line, col))?;
        }
    }

    // comp := unary ('.' unary)*
    fn tensor_comp(&mut self) -> Result<Tensor> {
        let mut acc = self.tensor_unary()?;
        loop {
            let (line, col) = self.here();
            if !self.eat_sym(".") {
                return Ok(acc);
            }
            let rhs = self.tensor_unary()?;
            acc = acc.compose(&rhs).map_err(|e| located(e, line, col))?;
        }
    }

    // unary := '-' unary | scalar-factor '*' unary | atom
    fn tensor_unary(&mut self) -> Result<Tensor> {
        if self.eat_sym("-") {
            return Ok(self.tensor_unary()?.neg());
        }
        if !self.starts_tensor_atom() {
            let save = self.pos;
            match self.scalar_factor() {
                Ok(s) if self.eat_sym("*") => return Ok(self.tensor_unary()?.scale(&s)),
                _ => self.pos = save,
            }
        }
        self.tensor_atom()
    }

    fn starts_tensor_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(name) => {
                matches!(name.as_str(), "mat" | "kron" | "flip" | "inv" | "tauconj" | "id")
                    || self.doc.mat(name).is_some()
            }
            _ => false,
        }
    }

    // scalar-factor := unary ('/' unary)*
    fn scalar_factor(&mut self) -> Result<Scalar> {
        let mut acc = self.scalar_unary()?;
        while self.eat_sym("/") {
            acc = acc.checked_div(&self.scalar_unary()?)?;
        }
        Ok(acc)
    }

    fn tensor_atom(&mut self) -> Result<Tensor> {
        let (line, col) = self.here();
        match self.peek().clone() {
            Tok::Sym("(") => {
                self.bump();
                let t = self.tensor()?;
                self.expect_sym(")")?;
                Ok(t)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "mat" => {
                        self.expect_sym("(")?;
                        let (_, dom) = self.word()?;
                        self.expect_sym("->")?;
                        let (_, cod) = self.word()?;
                        let t = self.matrix_body(cod, dom, "literal")?;
                        self.expect_sym(")")?;
                        Ok(t)
                    }
                    "kron" => {
                        self.expect_sym("(")?;
                        let a = self.tensor()?;
                        self.expect_sym(",")?;
                        let b = self.tensor()?;
                        self.expect_sym(")")?;
                        Ok(a.kron(&b))
                    }
                    "flip" => {
                        self.expect_sym("(")?;
                        let a = self.usize_lit()?;
                        self.expect_sym(",")?;
                        let b = self.usize_lit()?;
                        self.expect_sym(")")?;
                        if a == 0 || b == 0 {
                            return Err(Error::Shape(format!("{line}:{col}: flip of dimension 0")));
                        }
                        Ok(Tensor::flip(a, b))
                    }
                    "id" => {
                        self.expect_sym("(")?;
                        let n = self.usize_lit()?;
                        self.expect_sym(")")?;
                        if n == 0 {
                            return Err(Error::Shape(format!("{line}:{col}: id(0)")));
                        }
                        Ok(Tensor::id(n))
                    }
                    "inv" | "tauconj" => {
                        self.expect_sym("(")?;
                        let a = self.tensor()?;
                        self.expect_sym(")")?;
                        let r = if name == "inv" {
                            a.inverse()
                        } else {
                            a.tauconj(self.doc.mode)
                        };
                        r.map_err(|e| located(e, line, col))
                    }
                    _ => match self.doc.mat(&name) {
                        Some(m) => Ok(m.tensor.clone()),
                        None => Err(Error::UnknownName { name, line, col }),
                    },
                }
            }
            _ => self.fail(&["matrix name", "`kron`", "`flip`", "`inv`", "`tauconj`", "`id`", "`(`"]),
        }
    }
}

fn located(e: Error, line: usize, col: usize) -> Error {
    match e {
        Error::Shape(m) => Error::Shape(format!("{line}:{col}: {m}")),
        Error::NotInvertible { witness } => Error::Shape(format!(
            "{line}:{col}: matrix is not invertible (kernel vector {witness})"
        )),
        other => other,
    }
}

fn statement_keywords() -> Vec<String> {
    ["field", "gen", "mat", "rel", "cand", "table", "param"]
        .iter()
        .map(|s| format!("`{s}`"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "
        field { var = t ; conj = real }
        gen w : 2
        mat E : [] -> [w w] { 2,1 = 1 ; 3,1 = -q }
        mat Ep : [w w] -> [] { 1,2 = -q^-1 ; 1,3 = 1 }
        rel E
        rel Ep
        cand w w = t * (id(4) + q^-1 * E . Ep)
    ";

    #[test]
    fn parses_small_presentation() {
        let doc = parse_document(SMALL).unwrap();
        let p = doc.presentation();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.relations.len(), 2);
        let c = doc.candidate();
        let l = c.block("w", "w").unwrap();
        assert_eq!(l.get(0, 0), &Scalar::t());
        assert_eq!(l.get(2, 1), &Scalar::t().inv().unwrap());
        assert_eq!(l.get(1, 1), &(&Scalar::t() - &Scalar::t().pow(-3).unwrap()));
    }

    #[test]
    fn roundtrip() {
        let doc = parse_document(SMALL).unwrap();
        let text = doc.to_text();
        let again = parse_document(&text).unwrap();
        assert_eq!(again.presentation(), doc.presentation());
        assert!(again.candidate().same_values(&doc.candidate()));
        assert_eq!(again.to_text(), text);
    }

    #[test]
    fn error_kinds() {
        let e = parse_document("gen w : 2\nmat E : [] -> [w w] { 5,1 = 1 }").unwrap_err();
        assert!(matches!(e, Error::Shape(ref m) if m.contains("`E`")));
        let e = parse_document("gen w : 2\nmat E : [] -> [v] { }").unwrap_err();
        assert!(matches!(e, Error::UnknownGenerator { line: 2, .. }));
        let e = parse_document("gen w : 2\ngen w : 2").unwrap_err();
        assert!(matches!(e, Error::DuplicateName { line: 2, col: 5, .. }));
        let e = parse_document("gen w 2").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, col: 7, .. }));
        let e = parse_document("gen w : 2\nmat A : [w] -> [w] = flip(2,2)").unwrap_err();
        assert!(matches!(e, Error::Shape(ref m) if m.contains("`A`")));
    }

    #[test]
    fn empty_relation_list_is_free() {
        let doc = parse_document("gen w : 3 # a lone generator").unwrap();
        assert!(doc.presentation().relations.is_empty());
        assert!(doc.presentation().validate().is_ok());
    }

    #[test]
    fn scalar_forms() {
        let s = parse_scalar("(t^2-1)/(t+2)").unwrap();
        assert_eq!(s.to_string(), "(t^2-1)/(t+2)");
        assert_eq!(parse_scalar("-q^-1").unwrap(), -Scalar::q().inv().unwrap());
        assert_eq!(parse_constant("(3+4*i)/5").unwrap().to_string(), "(3/5+4/5*i)");
    }
}
