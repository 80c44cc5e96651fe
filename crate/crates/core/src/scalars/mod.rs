//! Exact scalars: the DVR backends, their residue fields and valuations.

mod dvr;
mod finite_field;
mod parse;
mod ratfun;
mod rationals;
mod residue;

pub use dvr::{parse_residue, Dvr, DvrDescriptor, DvrScalar, Valuation};
pub use finite_field::{FieldEmbedding, FiniteField, FqElem};
pub use ratfun::{Frac, RationalFunctions};
pub use rationals::Rationals;
pub use residue::{res_inverse, ResidueField, ResidueScalar};
