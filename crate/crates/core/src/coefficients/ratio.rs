use crate::error::{Error, Result};
use crate::poly::{
    exact_divide_by_monomial, expand_in_product_g_basis, schubert_type_polynomial, ProductExpansion, Theory,
};
use crate::quiver::{denominator_monomial, QuiverDerivedData};
use crate::shapes::{Partition, PartitionSequence};

/// `c_μ(r)` from the ratio formula: `𝔊_{v(r)}` divided by the denominator
/// monomial, expanded in `∏ G_{μ_i}(x^{i-1})` with `μ_i ⊆ r_{i-1} × r_i`.
/// Entries with `Σ|μ_i|` above `degree_cap` are not computed.
pub fn quiver_coefficients_ratio(
    derived: &QuiverDerivedData,
    theory: Theory,
    degree_cap: Option<u32>,
) -> Result<ProductExpansion> {
    let f = schubert_type_polynomial(&derived.zelevinsky, theory);
    let quotient = exact_divide_by_monomial(&f, &denominator_monomial(derived))?;
    let bounds: Vec<Option<u32>> = (1..=derived.n).map(|i| Some(derived.r[i])).collect();
    let mut out = expand_in_product_g_basis(&quotient, &derived.decomposition_blocks(), &bounds, theory, degree_cap)?;
    out.table.route = "ratio".into();
    Ok(out)
}

/// Same table computed without dividing: `𝔊_{v(r)}` is expanded in
/// `∏ G_{μ̃_i}(x^{i-1})` and the rectangles `R_i` are removed from the keys.
/// A key not containing its rectangle is reported as an error.
pub fn quiver_coefficients_undivided(
    derived: &QuiverDerivedData,
    theory: Theory,
    degree_cap: Option<u32>,
) -> Result<ProductExpansion> {
    let f = schubert_type_polynomial(&derived.zelevinsky, theory);
    let n = derived.n;
    let bounds: Vec<Option<u32>> = (1..=n)
        .map(|i| Some(derived.r[i] + if i < n { derived.d[i + 1] } else { 0 }))
        .collect();
    let cap = degree_cap.map(|c| c + derived.denominator_degree());
    let full = expand_in_product_g_basis(&f, &derived.decomposition_blocks(), &bounds, theory, cap)?;
    let mut table = crate::poly::CoefficientTable::new(theory, "ratio-undivided");
    for (key, c) in full.table.iter() {
        let mu = strip_rectangles(derived, key).ok_or_else(|| {
            Error::Expansion(format!("key {key:?} does not contain the rectangles R_i"))
        })?;
        table.add(mu, c.clone());
    }
    Ok(ProductExpansion {
        table,
        complete: full.complete,
    })
}

/// Inverse of `μ ↦ μ̃`: removes `R_i` from the left of each `μ̃_i`. `None`
/// when some `μ̃_i` does not have the form `R_i` plus a partition.
pub fn strip_rectangles(derived: &QuiverDerivedData, tilde: &PartitionSequence) -> Option<PartitionSequence> {
    let n = derived.n;
    if tilde.len() != n {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let part = &tilde.0[i - 1];
        let width = if i < n { derived.d[i + 1] } else { 0 };
        let rows = derived.r[i - 1] as usize;
        if width > 0 && (part.num_rows() < rows || part.part(rows) < width) {
            return None;
        }
        out.push(Partition::new(part.parts().iter().map(|&p| p - width).collect()));
    }
    Some(PartitionSequence::new(out))
}
