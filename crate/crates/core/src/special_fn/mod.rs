//! Scalar special functions: associated Legendre functions, Gauss-Legendre
//! quadrature and Bessel functions of the first kind.

mod bessel;
mod legendre;
mod quadrature;

pub use bessel::{bessel_j, bessel_j_prime, bessel_root, BesselKind};
pub use legendre::{
    legendre_p_normalized, legendre_p_normalized_dphi, legendre_q, legendre_ratio, LegendreMode,
    LegendreTable,
};
pub use quadrature::{gauss_legendre, QuadratureRule};
