//! Structure and mod-p cohomology invariants of finite p-groups.
//!
//! Groups are given by consistent polycyclic presentations in which every
//! generator has relative order p, so |G| = p^n and every element has a
//! unique normal form g_1^{a_1} ... g_n^{a_n} with 0 <= a_i < p.
//!
//! Module map:
//! - [`ffmat`]: exact dense linear algebra over F_p, bit-packed for p = 2,
//!   plus a streaming row-echelon accumulator for systems whose rows are
//!   generated on the fly.
//! - [`pcgroup`]: presentations, collection, subgroups, series, quotients,
//!   and homomorphism enumeration into unitriangular matrix groups.
//! - [`corpus`]: constructors for the standard test families and the
//!   built-in corpora per prime.
//! - [`cohomology`]: minimal-resolution dimension sequences, a normalized
//!   bar-complex oracle in low degrees, cup products, Bocksteins, and the
//!   degree-two characterizations (powerful, omega-extendible, parameter
//!   checks).
//! - [`tower`]: the characteristic subgroup tower V >= H >= N obtained from
//!   kernels of unitriangular representations, with recomputed flags and
//!   index bounds.
//! - [`bounds`]: closed-form dimension bounds, truncated Poincare series,
//!   and Dickson invariant computations.

pub mod bounds;
pub mod cohomology;
pub mod corpus;
pub mod ffmat;
pub mod pcgroup;
pub mod tower;
