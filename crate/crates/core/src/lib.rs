//! Degrees, multiplicities and absolute splitting of the primary components
//! of curve ideals over `Q`, computed modulo well-chosen primes, with the
//! initial ideal and affine Hilbert function of every reduced component.

pub mod arith;
pub mod cli;
pub mod factor;
pub mod groebner;
pub mod hilbert;
pub mod modred;
pub mod mpoly;
mod par;
pub mod pipeline;

pub use groebner::Ideal;
pub use pipeline::{decompose, DecompositionReport, PipelineConfig};

/// Any error raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] arith::ArithError),
    #[error(transparent)]
    Mpoly(#[from] mpoly::MpolyError),
    #[error(transparent)]
    Groebner(#[from] groebner::GroebnerError),
    #[error(transparent)]
    Hilbert(#[from] hilbert::HilbertError),
    #[error(transparent)]
    Factor(#[from] factor::FactorError),
    #[error(transparent)]
    Modred(#[from] modred::ModredError),
    #[error(transparent)]
    Pipeline(#[from] pipeline::PipelineError),
    #[error(transparent)]
    Cli(#[from] cli::CliError),
}
