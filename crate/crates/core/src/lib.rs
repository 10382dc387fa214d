//! Exact-arithmetic toolkit for deciding when the blowup of a weighted
//! projective plane at a general point is a Mori dream space.
//!
//! Everything runs over the rationals or a prime field, with no floating
//! point anywhere: rational triangles and their normal fans ([`lattice`]),
//! sparse Laurent polynomials ([`laurent`]), the distinguished family of
//! negative curves and their irreducibility certificates ([`curves`]),
//! degree intervals and intersection numbers on the blowup ([`blowup`]),
//! section spaces as integer kernel problems plus the characteristic-p
//! section construction ([`sections`]), and the end-to-end certifiers and
//! parameter scans ([`certify`]).

pub mod arith;
pub mod blowup;
pub mod certify;
pub mod curves;
pub mod lattice;
pub mod laurent;
pub mod sections;

pub use blowup::{class_of, degree_interval, intersect, DegreeInterval, NumericClass};
pub use certify::{certify_main1, certify_main2, example_family, scan, Main2Params};
pub use curves::{eisenstein_certificate, xi, xi_over, XiFamily};
pub use lattice::{LatticePoint, RationalPoint, RationalTriangle};
pub use laurent::{Coeff, FieldSpec, LaurentPoly};
pub use sections::{build_zeta_p, hc_member, smith_normal_form, IntMatrix};
