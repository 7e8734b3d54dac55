pub mod audit;
pub mod cli;
pub mod engine;
pub mod error;
pub mod green;
pub mod grouptools;
pub mod schutz;
pub mod squier;
pub mod words;
