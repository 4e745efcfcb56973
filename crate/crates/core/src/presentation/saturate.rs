use std::collections::BTreeMap;

use super::model::{GenWord, Presentation};
use crate::error::Result;
use crate::scalars::Scalar;
use crate::tensor::{SpanBasis, Tensor};

pub const DEFAULT_DEPTH: usize = 3;

type Key = (GenWord, GenWord);

#[derive(Clone, Debug, Default)]
struct Space {
    basis: SpanBasis,
    elems: Vec<(Tensor, usize)>,
}

/// Spans of intertwiners between words, grown from the relation matrices,
/// their inverses where they exist, and identities by alternating rounds of
/// tensoring and composing.
///
/// Every element is a genuine intertwiner, so the spans are lower bounds
/// for the true morphism spaces. Words longer than the bound are never
/// formed.
#[derive(Clone, Debug)]
pub struct Saturation {
    max_len: usize,
    depth: usize,
    spaces: BTreeMap<Key, Space>,
}

impl Saturation {
    /// Saturates to `depth` rounds, with words up to `max_len` letters.
    pub fn new(p: &Presentation, max_len: usize, depth: usize) -> Result<Self> {
        let mut s = Saturation {
            max_len,
            depth,
            spaces: BTreeMap::new(),
        };
        s.insert((vec![], vec![]), Tensor::scalar(Scalar::one()), 0);
        for g in &p.generators {
            s.insert(
                (vec![g.name.clone()], vec![g.name.clone()]),
                Tensor::identity(&[g.dim]),
                0,
            );
        }
        for r in &p.relations {
            if r.source.len() <= max_len && r.target.len() <= max_len {
                let m = r.matrix.with_legs(p.legs(&r.target)?, p.legs(&r.source)?)?;
                if m.is_square() {
                    if let Ok(inv) = m.inverse() {
                        s.insert((r.target.clone(), r.source.clone()), inv, 0);
                    }
                }
                s.insert((r.source.clone(), r.target.clone()), m, 0);
            }
        }
        let mut stamp = 0;
        let (mut last_tensor, mut last_compose) = (0, 0);
        for _ in 0..depth {
            stamp += 1;
            s.tensor_phase(last_tensor, stamp);
            last_tensor = stamp;
            stamp += 1;
            s.compose_phase(last_compose, stamp)?;
            last_compose = stamp;
        }
        Ok(s)
    }

    /// The bound used when checking blocks against `p`: long enough for
    /// every relation word and for words of `needed` letters.
    pub fn for_presentation(p: &Presentation, needed: usize, depth: usize) -> Result<Self> {
        let rel_len = p
            .relations
            .iter()
            .map(|r| r.source.len().max(r.target.len()))
            .max()
            .unwrap_or(0);
        Saturation::new(p, needed.max(rel_len), depth)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn insert(&mut self, key: Key, t: Tensor, stamp: usize) -> bool {
        let space = self.spaces.entry(key).or_default();
        if space.basis.insert(t.entries()) {
            space.elems.push((t, stamp));
            true
        } else {
            false
        }
    }

    fn snapshot(&self) -> Vec<(Key, Tensor, usize)> {
        self.spaces
            .iter()
            .flat_map(|(k, sp)| sp.elems.iter().map(move |(t, s)| (k.clone(), t.clone(), *s)))
            .collect()
    }

    fn tensor_phase(&mut self, since: usize, stamp: usize) {
        let elems = self.snapshot();
        let scalar_key = |k: &Key| k.0.is_empty() && k.1.is_empty();
        for (ka, a, sa) in &elems {
            if scalar_key(ka) {
                continue;
            }
            for (kb, b, sb) in &elems {
                if scalar_key(kb) || (*sa < since && *sb < since) {
                    continue;
                }
                if ka.0.len() + kb.0.len() > self.max_len || ka.1.len() + kb.1.len() > self.max_len
                {
                    continue;
                }
                let src = [ka.0.clone(), kb.0.clone()].concat();
                let dst = [ka.1.clone(), kb.1.clone()].concat();
                self.insert((src, dst), a.kron(b), stamp);
            }
        }
    }

    fn compose_phase(&mut self, since: usize, stamp: usize) -> Result<()> {
        let elems = self.snapshot();
        for (ka, a, sa) in &elems {
            for (kb, b, sb) in &elems {
                // b ∘ a, with a : s → m and b : m → d
                if ka.1 != kb.0 || (*sa < since && *sb < since) {
                    continue;
                }
                let c = b.compose(a)?;
                self.insert((ka.0.clone(), kb.1.clone()), c, stamp);
            }
        }
        Ok(())
    }

    /// A basis of the saturated span of intertwiners `src → dst`.
    pub fn basis(&self, src: &[String], dst: &[String]) -> Vec<Tensor> {
        self.spaces
            .get(&(src.to_vec(), dst.to_vec()))
            .map(|sp| sp.elems.iter().map(|(t, _)| t.clone()).collect())
            .unwrap_or_default()
    }

    pub fn dim(&self, src: &[String], dst: &[String]) -> usize {
        self.spaces
            .get(&(src.to_vec(), dst.to_vec()))
            .map_or(0, |sp| sp.basis.dim())
    }

    /// Whether `t` lies in the saturated span `src → dst`.
    pub fn contains(&self, src: &[String], dst: &[String], t: &Tensor) -> bool {
        if t.is_zero() {
            return true;
        }
        self.spaces
            .get(&(src.to_vec(), dst.to_vec()))
            .is_some_and(|sp| {
                sp.elems.first().is_some_and(|(e, _)| e.entries().len() == t.entries().len())
                    && sp.basis.contains(t.entries())
            })
    }
}

/// A basis of the intertwiners `src → dst` reachable within `depth` rounds.
pub fn mor_saturate(
    p: &Presentation,
    src: &[String],
    dst: &[String],
    depth: usize,
) -> Result<Vec<Tensor>> {
    let s = Saturation::for_presentation(p, src.len().max(dst.len()), depth)?;
    Ok(s.basis(src, dst))
}
