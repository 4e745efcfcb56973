use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::tensor::Tensor;

/// A matrix element `w_{ij}` of a generator (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenLetter {
    pub gen: String,
    pub i: usize,
    pub j: usize,
}

impl GenLetter {
    pub fn new(gen: &str, i: usize, j: usize) -> Self {
        GenLetter {
            gen: gen.to_string(),
            i,
            j,
        }
    }
}

impl fmt::Display for GenLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.gen, self.i + 1, self.j + 1)
    }
}

/// A linear combination of words in letters of type `L`.
pub type FreeElement<L> = Vec<(Scalar, Vec<L>)>;

/// A unital homomorphism from the free algebra on letters `L` into
/// `size × size` matrices, given by its values on letters.
#[derive(Clone, Debug)]
pub struct FunctionalHom<L: Ord> {
    size: usize,
    values: BTreeMap<L, Tensor>,
}

impl<L: Ord + Clone + fmt::Debug> FunctionalHom<L> {
    pub fn new(size: usize) -> Self {
        FunctionalHom {
            size,
            values: BTreeMap::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn set(&mut self, letter: L, value: Tensor) {
        debug_assert_eq!(value.rows(), self.size);
        debug_assert_eq!(value.cols(), self.size);
        self.values.insert(letter, value);
    }

    pub fn letters(&self) -> impl Iterator<Item = &L> {
        self.values.keys()
    }

    pub fn value(&self, letter: &L) -> Result<&Tensor> {
        self.values
            .get(letter)
            .ok_or_else(|| Error::MissingRep(format!("{letter:?}")))
    }

    fn identity(&self) -> Tensor {
        if self.size == 1 {
            Tensor::identity(&[])
        } else {
            Tensor::identity(&[self.size])
        }
    }

    /// Value on a word: the ordered matrix product of letter values.
    pub fn eval_word(&self, word: &[L]) -> Result<Tensor> {
        let mut acc = self.identity();
        for l in word {
            acc = acc.compose(self.value(l)?)?;
        }
        Ok(acc)
    }

    pub fn eval_element(&self, x: &FreeElement<L>) -> Result<Tensor> {
        let mut acc = Tensor::zeros(vec![self.size], vec![self.size]);
        for (c, w) in x {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&self.eval_word(w)?.scale(c))?;
        }
        Ok(acc)
    }

    /// Value on a word with the opposite multiplication, `h(ab) = h(b)h(a)`.
    pub fn eval_word_reversed(&self, word: &[L]) -> Result<Tensor> {
        let mut acc = self.identity();
        for l in word {
            acc = self.value(l)?.compose(&acc)?;
        }
        Ok(acc)
    }
}
