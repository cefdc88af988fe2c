mod fit;
mod msa;
mod params;

pub use fit::{fit_lac, BranchFit, FitBranch, LacFamily, LacFit, MIN_FIT_SAMPLES};
pub use msa::{msa_reparam, verify_msa, MsaReparam, MsaReport, MSA_FIT_SAMPLES, MSA_GRID};
pub use params::{generate_lac, lac_radius, LacParams};
