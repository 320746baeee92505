//! Killing and conformal Killing tensors, and the constructions built on them.

mod adjoint;
mod basis;
mod extension;
mod ideal;
mod milnor;
mod slice;
mod spaces;
mod two_step;

pub use adjoint::{adjointness_defect, adjointness_witness, lambda_matrix, AdjointnessWitness};
pub use basis::{normalize_witness, WorkingBasis};
pub use extension::{central_extension, embed, verify_d_splitting, CentralExtensionSpec};
pub use ideal::{find_codim1_abelian_ideal, is_abelian_ideal};
pub use milnor::{milnor_axes, milnor_identities, qjl_basis, verify_killing_spanning, MilnorBasis, MilnorIdentities};
pub use slice::{
    check_reductive_slice, is_even_in, killing_tensors_even_in, orthogonal_complement, reflection, verify_dle,
    SliceReport,
};
pub use spaces::*;
pub use two_step::{b_sequence, TwoStep};
