//! Completion, normal forms, element enumeration and critical circuits.

pub mod circuits;
pub mod rewriting;
pub mod universe;

pub use circuits::{critical_circuits, reduction_path, CriticalCircuit};
pub use rewriting::{knuth_bendix, CompleteSystem, Limits, Step};
pub use universe::{enumerate_universe, MonoidUniverse};
