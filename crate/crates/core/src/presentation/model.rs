use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::scalars::{ConjMode, Scalar};
use crate::tensor::{flatten_index, unflatten_index, Tensor};

/// A matrix generator `w` of dimension `dim`, with the name of its conjugate.
/// The unit generator is implicit: it never appears in words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub dim: usize,
    pub conj: String,
}

/// A word in generators, i.e. a tensor product of representations.
pub type GenWord = Vec<String>;

/// An intertwiner `W : ⊗source → ⊗target`, imposed as
/// `W (w^{s_1} ⊗ … ) = (w^{t_1} ⊗ … ) W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub matrix: Tensor,
    pub source: GenWord,
    pub target: GenWord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<GeneratorSpec>,
    pub relations: Vec<Relation>,
    pub mode: ConjMode,
}

impl Presentation {
    pub fn generator(&self, name: &str) -> Option<&GeneratorSpec> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn dim(&self, name: &str) -> Result<usize> {
        self.generator(name)
            .map(|g| g.dim)
            .ok_or_else(|| Error::UnknownGenerator {
                name: name.to_string(),
                line: 0,
                col: 0,
            })
    }

    /// Leg dimensions of a word.
    pub fn legs(&self, word: &[String]) -> Result<Vec<usize>> {
        word.iter().map(|g| self.dim(g)).collect()
    }

    pub fn word_size(&self, word: &[String]) -> Result<usize> {
        Ok(self.legs(word)?.iter().product())
    }

    pub fn conj_name(&self, name: &str) -> Result<&str> {
        self.generator(name)
            .map(|g| g.conj.as_str())
            .ok_or_else(|| Error::UnknownGenerator {
                name: name.to_string(),
                line: 0,
                col: 0,
            })
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// Checks that conjugation is a dimension-preserving involution and
    /// that every relation matrix has the shape of its words.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for g in &self.generators {
            if !seen.insert(&g.name) {
                return Err(Error::DuplicateName {
                    name: g.name.clone(),
                    line: 0,
                    col: 0,
                });
            }
            let c = self.generator(&g.conj).ok_or_else(|| Error::UnknownGenerator {
                name: g.conj.clone(),
                line: 0,
                col: 0,
            })?;
            if c.conj != g.name || c.dim != g.dim {
                return Err(Error::Shape(format!(
                    "conjugation of `{}` and `{}` is not a dimension-preserving involution",
                    g.name, c.name
                )));
            }
        }
        for r in &self.relations {
            let rows = self.word_size(&r.target)?;
            let cols = self.word_size(&r.source)?;
            if r.matrix.rows() != rows || r.matrix.cols() != cols {
                return Err(Error::Shape(format!(
                    "relation `{}` is {}x{}, but its words need {rows}x{cols}",
                    r.name,
                    r.matrix.rows(),
                    r.matrix.cols()
                )));
            }
        }
        Ok(())
    }

    /// Substitutes `t = value` in every relation matrix.
    pub fn eval_at(&self, value: &crate::scalars::Gauss) -> Result<Presentation> {
        let relations = self
            .relations
            .iter()
            .map(|r| {
                Ok(Relation {
                    matrix: r.matrix.eval_at(value)?,
                    ..r.clone()
                })
            })
            .collect::<Result<_>>()?;
        Ok(Presentation {
            generators: self.generators.clone(),
            relations,
            mode: self.mode,
        })
    }

    /// The conjugate relation: words reversed and conjugated, and
    /// `W̃_{i_t…i_1, j_s…j_1} = conj(W_{i_1…i_t, j_1…j_s})`.
    pub fn conj_relation(&self, r: &Relation) -> Result<Relation> {
        let conj_word = |w: &GenWord| -> Result<GenWord> {
            w.iter().rev().map(|g| self.conj_name(g).map(str::to_string)).collect()
        };
        let matrix = reverse_legs(&r.matrix)?.conj(self.mode);
        Ok(Relation {
            name: format!("{}~", r.name),
            matrix,
            source: conj_word(&r.source)?,
            target: conj_word(&r.target)?,
        })
    }
}

/// Reverses the order of the codomain legs and of the domain legs.
pub fn reverse_legs(t: &Tensor) -> Result<Tensor> {
    let cod: Vec<usize> = t.codomain().iter().rev().copied().collect();
    let dom: Vec<usize> = t.domain().iter().rev().copied().collect();
    let mut out = Tensor::zeros(cod.clone(), dom.clone());
    for r in 0..t.rows() {
        let mut ri = unflatten_index(t.codomain(), r);
        ri.reverse();
        let r2 = flatten_index(&cod, &ri);
        for c in 0..t.cols() {
            let v = t.get(r, c);
            if v.is_zero() {
                continue;
            }
            let mut ci = unflatten_index(t.domain(), c);
            ci.reverse();
            out.set(r2, flatten_index(&dom, &ci), v.clone());
        }
    }
    Ok(out)
}

/// A family of R-blocks `R^{αβ} : C^α ⊗ C^β → C^β ⊗ C^α` indexed by
/// ordered pairs of non-unit generators. Blocks involving the unit are the
/// identity and are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateR {
    pub blocks: BTreeMap<(String, String), Tensor>,
    /// Blocks declared to be intertwiners by fiat.
    pub trusted: BTreeSet<(String, String)>,
}

impl CandidateR {
    pub fn new() -> Self {
        CandidateR::default()
    }

    pub fn insert(&mut self, alpha: &str, beta: &str, block: Tensor) {
        self.blocks.insert((alpha.to_string(), beta.to_string()), block);
    }

    pub fn with(mut self, alpha: &str, beta: &str, block: Tensor) -> Self {
        self.insert(alpha, beta, block);
        self
    }

    pub fn block(&self, alpha: &str, beta: &str) -> Result<&Tensor> {
        self.blocks
            .get(&(alpha.to_string(), beta.to_string()))
            .ok_or_else(|| Error::MissingBlock {
                alpha: alpha.to_string(),
                beta: beta.to_string(),
            })
    }

    pub fn is_trusted(&self, alpha: &str, beta: &str) -> bool {
        self.trusted.contains(&(alpha.to_string(), beta.to_string()))
    }

    /// Scales every block by the same scalar.
    pub fn scaled(&self, s: &Scalar) -> Self {
        CandidateR {
            blocks: self
                .blocks
                .iter()
                .map(|(k, v)| (k.clone(), v.scale(s)))
                .collect(),
            trusted: self.trusted.clone(),
        }
    }

    /// The family `{(R^{βα})^{-1}}` at position `(α, β)`.
    pub fn flipped_inverse(&self) -> Result<Self> {
        let mut out = CandidateR::new();
        for (a, b) in self.blocks.keys() {
            out.insert(a, b, self.block(b, a)?.inverse()?);
        }
        out.trusted = self.trusted.clone();
        Ok(out)
    }

    /// Substitutes `t = value` in every block.
    pub fn eval_at(&self, value: &crate::scalars::Gauss) -> Result<Self> {
        Ok(CandidateR {
            blocks: self
                .blocks
                .iter()
                .map(|(k, v)| Ok((k.clone(), v.eval_at(value)?)))
                .collect::<Result<_>>()?,
            trusted: self.trusted.clone(),
        })
    }

    /// Compares blocks entrywise, ignoring leg annotations.
    pub fn same_values(&self, other: &CandidateR) -> bool {
        self.blocks.len() == other.blocks.len()
            && self.blocks.iter().all(|(k, v)| {
                other
                    .blocks
                    .get(k)
                    .is_some_and(|w| v.entries() == w.entries())
            })
    }
}
