//! Exact structure-constant computations for Hom-Leibniz, Hom-Lie,
//! BiHom-Leibniz and (Bi)Hom-Leibniz dendriform algebras.

pub mod construct;
pub mod corpus;
pub mod duality;
pub mod identities;
pub mod linalg;
pub mod model;
pub mod scalar;
