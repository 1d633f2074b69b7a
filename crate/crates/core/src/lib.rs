//! Laplace-Beltrami eigenvalues of ellipsoids close to the unit sphere.
//!
//! Two independent routes are provided and can be cross-checked:
//!
//! * first-order perturbation theory: the closed form for ellipsoids of
//!   revolution ([`perturbation::biaxial_lambda1`]) and the four tridiagonal
//!   blocks for general ellipsoids ([`perturbation::perturbed_spectrum`]);
//! * direct discretization: a finite-difference Sturm-Liouville solver per
//!   azimuthal mode for ellipsoids of revolution ([`biaxial_fd`]) and a
//!   spherical-harmonic Galerkin solver for general ellipsoids
//!   ([`triaxial_galerkin`]).
//!
//! [`nodal`] counts nodal domains of the first-order eigenfunctions.

pub mod biaxial_fd;
pub mod eigensolve;
pub mod error;
pub mod geometry;
pub mod nodal;
pub mod perturbation;
pub mod special_fn;
pub mod triaxial_galerkin;

pub use error::{Error, Result};
