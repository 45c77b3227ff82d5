//! Recovery of the atomic part of a finite complex measure from averages of
//! its Fourier transform, on tori, Euclidean space, and finite abelian
//! groups.
//!
//! The central identity: for a finite measure μ on a locally compact abelian
//! group G and a point x, the weight μ({x}) equals the limit of normalized
//! averages of γ(x)·μ̂(γ) over an exhausting Følner sequence in the dual
//! group. This crate evaluates those averages (and the Gaussian and
//! Bochner–Riesz variants) against synthetic measures with known atoms, so
//! every computed value has an exact reference to compare against.
//!
//! Modules, roughly bottom-up:
//! - [`group`]: the three group contexts, points, frequencies, characters
//! - [`measure`]: synthetic measures (atoms + absolutely continuous +
//!   Cantor components) with exact atom lookup
//! - [`special`], [`quad`]: Bessel/Gamma evaluation and quadrature
//! - [`fourier`]: transforms of each component, finite DFT, Parseval checks
//! - [`folner`]: Følner sets, lattice averages, Euclidean indicator means
//! - [`torus_br`]: spherical Dirichlet and Bochner–Riesz kernels on `T^d`
//! - [`weighted`]: Gaussian and Bochner–Riesz means on `R^d`
//! - [`finite`]: exact inversion on finite abelian groups
//! - [`scenario`]: JSON-configured sweeps, atom scans, rate fitting
//! - [`record`]: the CSV output schema
//! - [`selftest`]: the quick consistency battery behind `wiener selftest`

pub mod error;
pub mod group;
pub mod measure;
pub mod special;
pub mod quad;
pub mod fourier;
pub mod folner;
pub mod torus_br;
pub mod weighted;
pub mod finite;
pub mod record;
pub mod scenario;
pub mod selftest;

pub use error::{Error, Result};
pub use group::{FrequencyPoint, GroupContext, GroupPoint};
pub use measure::{AcComponent, AcKind, Atom, CantorComponent, Measure};
pub use record::RunRecord;
pub use scenario::{MeasureSource, MethodSpec, RateFit, ScanHit, ScenarioConfig};
