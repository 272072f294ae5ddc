//! Moment polytopes of Borel orbit closures and their real loci in
//! `CP^1 x CP^1`, computed exactly and cross-checked numerically.
//!
//! - [`exactlin`]: rational linear algebra, involutions and symplectic forms.
//! - [`polytope`]: exact convex polytopes with a canonical vertex form.
//! - [`liedata`]: weights, involutions on the torus and 2x2 group elements.
//! - [`reps`]: sections as bi-homogeneous polynomials and N-invariants.
//! - [`momentpoly`]: orbit classes and their moment polytopes.
//! - [`numlab`]: float moment map, orbit sampling and numeric identities.
//! - [`verify`]: the named check suites.

pub mod error;
pub mod exactlin;
pub mod liedata;
pub mod momentpoly;
pub mod numlab;
pub mod polytope;
pub mod reps;
pub mod verify;

pub use error::{Error, Result};
pub use exactlin::{GaussianRational, LinearInvolution, RatMatrix, Rational, SymplecticForm};
pub use liedata::{InvolutionSpec, WeightVector};
pub use momentpoly::{FlagPoint, OrbitClass, RealFormCase, DEFAULT_R_MAX};
pub use numlab::{DeltaMode, FloatFlagPoint, R3Vector, SampleSet, Subgroup, DEFAULT_EPSILON};
pub use polytope::{LinearSubspace, RationalPolytope};
pub use reps::{BiHomogPoly, SectionSpaceSpec};
pub use verify::{Check, Suite, SuiteReport};
