use crate::error::Result;
use crate::perm::Permutation;
use crate::poly::{expand_in_grothendieck_basis, schubert_type_polynomial, Coeff, GrothendieckExpansion, Theory};

/// All `C^w_{u,v}` at once: `𝔊_u·𝔊_v` expanded in the Grothendieck basis
/// (Schubert basis in cohomology). Keys of length above `degree_cap` are
/// not computed.
pub fn structure_constants(
    u: &Permutation,
    v: &Permutation,
    theory: Theory,
    degree_cap: Option<u32>,
) -> Result<GrothendieckExpansion> {
    let f = &schubert_type_polynomial(u, theory) * &schubert_type_polynomial(v, theory);
    let ambient = u.size().max(v.size()).max(2);
    let mut out = expand_in_grothendieck_basis(&f, ambient, theory, degree_cap)?;
    out.table.route = "product".into();
    Ok(out)
}

/// The single constant `C^w_{u,v}`.
pub fn schubert_constant_product(u: &Permutation, v: &Permutation, w: &Permutation, theory: Theory) -> Result<Coeff> {
    let cap = match theory {
        Theory::Cohomology => None,
        Theory::KTheory => Some(w.length() as u32),
    };
    Ok(structure_constants(u, v, theory, cap)?.table.get(w))
}
