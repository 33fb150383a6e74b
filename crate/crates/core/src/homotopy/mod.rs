//! Graded and homotopy versions: A∞-algebras and representations, homotopy
//! relative Rota-Baxter families, and Dend∞ families.

pub mod ainf;
pub mod dendinf;
pub mod graded;
pub mod hrbf;

pub use ainf::{check_ainf, check_representation, AInfRepresentation, AInfStructure};
pub use dendinf::{check_dendinf, check_omega_ainf, dendinf_to_omega_ainf, dendinf_to_strict, omega_ainf_to_ainf, strict_to_dendinf, suspend_dend, unsuspend_dend, DendInfFamily, OmegaAInf};
pub use graded::{graded_omega_bracket, GradedFamily, GradedSpace};
pub use hrbf::{check_homotopy_rbf, check_strict, classical_embed, HomotopyRBFamily};
