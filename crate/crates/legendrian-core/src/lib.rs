//! Legendrian knot invariants from front projections: the
//! Chekanov-Eliashberg DGA of the Ng resolution, augmentations up to chain
//! homotopy, graded normal rulings and Morse complex sequences over Z/2.

pub mod augmentation;
pub mod complex;
pub mod dga;
pub mod error;
pub mod front;
pub mod gf2;
pub mod mcs;
pub mod moves;
pub mod normal;
pub mod ruling;
pub mod sweep;

pub use augmentation::{enumerate_augmentations, is_chain_homotopic, partition_classes, Augmentation};
pub use complex::OrderedChainComplex;
pub use dga::{build_dga, check_d_squared, ResolvedDga};
pub use front::{parse_front, FrontDiagram, FrontEvent, MarkedFront};
pub use mcs::{reconstruct, ruling_of, Mcs};
pub use moves::{apply_move, MoveInstance, MoveOp};
pub use ruling::{enumerate_rulings, nu, NormalRuling};
