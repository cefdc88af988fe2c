//! Equiaffine parameter and curvature, constant-curvature reconstruction,
//! self-affinity under the equiaffine group, and curve classification.
//!
//! With `det(γ_σ, γ_σσ) = 1` the frame equation `Φ' = Φ [[0, −κ], [1, 0]]`
//! reads `γ_σσσ = −κ γ_σ`, so `κ = det(γ_σσ, γ_σσσ)`. In a general parameter
//! this is `(12 F D + 3 G D − 5 E²) / (9 |D|^{8/3})` with `D = det(γ', γ'')`,
//! `E = det(γ', γ''')`, `F = det(γ'', γ''')` and `G = det(γ', γ'''')`.

mod classify;
mod esa;
mod reparam;

pub use classify::{classify_curve, Classification, ClassifyTols, CurveClass};
pub use esa::{esa_witness, verify_esa, Conic, ConicFamily, EsaReport, ESA_GRID, ZERO_BAND_FLOOR};
pub use reparam::{equiaffine_curvature, equiaffine_reparam, reconstruct_equiaffine, EquiaffineCurve};
