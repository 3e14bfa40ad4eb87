use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::{expand_in_product_g_basis, schubert_type_polynomial, BlockStructure, ProductExpansion, Theory};

/// Descents of `v` must sit at partial sums `r_0, r_0 + r_1, …` of the block
/// sizes, the full total included.
pub fn check_block_descents(v: &Permutation, blocks: &BlockStructure) -> Result<()> {
    let boundaries: Vec<usize> = (1..=blocks.len()).map(|i| blocks.offset(i)).collect();
    match v.descents().into_iter().find(|i| !boundaries.contains(i)) {
        None => Ok(()),
        Some(bad) => Err(Error::DescentCondition(format!(
            "{v} has a descent at {bad}, block boundaries are {boundaries:?}"
        ))),
    }
}

/// `b_μ(v)` for all `μ`: the expansion of `𝔊_v` (or `𝔖_v`) in products of
/// symmetric Grothendieck polynomials, one per block of variables.
pub fn decomposition_coefficients_full(
    v: &Permutation,
    blocks: &BlockStructure,
    theory: Theory,
    degree_cap: Option<u32>,
) -> Result<ProductExpansion> {
    check_block_descents(v, blocks)?;
    let f = schubert_type_polynomial(v, theory);
    let bounds = vec![None; blocks.len()];
    let mut out = expand_in_product_g_basis(&f, blocks, &bounds, theory, degree_cap)?;
    out.table.route = "decomposition".into();
    Ok(out)
}
