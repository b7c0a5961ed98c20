//! Exact quantum mechanics on the cyclic configuration space Z_n.
//!
//! Arithmetic happens in cyclotomic fields Q(zeta_N) represented exactly in
//! the power basis, so propagators, Hamiltonians, characteristic polynomials,
//! and Galois-symmetric invariants carry no floating-point error. A separate
//! high-precision layer embeds exact elements into C for eigenvalue work and
//! reporting.

pub mod classical;
pub mod cyclotomic;
pub mod error;
pub mod galois_phys;
pub mod hp;
pub mod numtheory;
pub mod quantize;
pub mod rational;
pub mod spectra;

pub use classical::{PhaseState, PotentialSpec, Trajectory};
pub use cyclotomic::{make_rootset, CyclotomicElement, GaloisAutomorphism, RootSet, RootSign};
pub use error::{Error, Result};
pub use galois_phys::{EvolutionMode, SymmetricInvariant, WaveFamily};
pub use hp::{HpComplex, HpCtx};
pub use quantize::{ExponentLift, HamiltonianMatrix, LagrangianMatrix, WaveFunction};
pub use rational::Rational;
pub use spectra::{CharPoly, EigenPair, Spectrum};
