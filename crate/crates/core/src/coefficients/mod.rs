//! Quiver coefficients, decomposition coefficients and Schubert structure
//! constants, each computable by more than one route.

mod decomposition;
mod instance;
mod kogan;
mod lrs;
mod product;
mod ratio;
mod routes;
mod signs;
mod tableau;
mod theorem;

pub use decomposition::{check_block_descents, decomposition_coefficients_full};
pub use instance::QuiverInstance;
pub use kogan::{kogan_chains, kogan_counts, schubert_constant_kogan, KoganChain, KoganSearch};
pub use lrs::{lrs_identity_check, LrsMismatch, LrsReport};
pub use product::{schubert_constant_product, structure_constants};
pub use ratio::{quiver_coefficients_ratio, quiver_coefficients_undivided, strip_rectangles};
pub use routes::{CoefficientRoute, Quantity, RouteRegistry};
pub use signs::{product_sign_audit, sign_audit, SignReport, SignViolation, ViolationKind};
pub use tableau::{concatenated_column_word, decomposition_coefficients_tableau, tableau_witnesses, TableauSearch};
pub use theorem::{theorem_check, RouteSelection, RouteValue, TheoremReport};
