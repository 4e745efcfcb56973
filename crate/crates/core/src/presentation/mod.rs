//! Presentations of bialgebras by matrix generators and intertwiner
//! relations, candidate R-block families, and the datum file format.

mod dsl;
mod model;
mod saturate;
mod word;

pub use dsl::{parse_constant, parse_document, parse_scalar, CandDecl, Document, MatDecl, RepTable};
pub use model::{reverse_legs, CandidateR, GenWord, GeneratorSpec, Presentation, Relation};
pub use saturate::{mor_saturate, Saturation, DEFAULT_DEPTH};
pub use word::{FreeElement, FunctionalHom, GenLetter};
