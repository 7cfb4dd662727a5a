//! Exact arithmetic for Galois fields, residue rings, direct products, and
//! the level-collapsing projections between them.

mod field;
mod group;
pub mod poly;
mod projection;

pub use field::{prime_power, FieldSpec, MAX_FIELD_ORDER};
pub use group::GroupSpec;
pub use projection::{ProjectionDoc, ProjectionKind, ProjectionSpec};

/// Index of a group element in its group's canonical enumeration.
///
/// Index 0 is always the additive identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}
