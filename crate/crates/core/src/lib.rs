//! Finite elementary topoi and their internal first-order logic.

pub mod concrete;
pub mod error;
pub mod finset;
pub mod kernel;
pub mod logic;
pub mod presheaf;
pub mod slice;
pub mod subobject;
pub mod topos;
pub mod universal;

pub use error::{Result, ToposError};
pub use finset::{FinSet, FinSetMap, FinSetObject};
pub use kernel::{Category, Signature};
pub use presheaf::{arrow_topos, FiniteCategory, NatTrans, Presheaf, PresheafTopos};
pub use slice::{FiberedExponentials, Slice, SliceMorphism, SliceObject};
pub use topos::Topos;
