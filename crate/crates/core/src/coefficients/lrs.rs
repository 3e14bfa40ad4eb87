use super::decomposition::{check_block_descents, decomposition_coefficients_full};
use super::product::structure_constants;
use crate::error::{Error, Result};
use crate::perm::{cartesian_product, grassmannian_permutation, Permutation};
use crate::poly::{BlockStructure, Coeff, Theory};
use crate::shapes::{Partition, PartitionSequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrsMismatch {
    pub key: PartitionSequence,
    pub decomposition: Coeff,
    pub structure_constant: Coeff,
}

#[derive(Clone, Debug)]
pub struct LrsReport {
    pub holds: bool,
    pub compared: usize,
    /// Product keys `w` for which `w·w(ρ,d)⁻¹` is not a product of
    /// Grassmannian blocks; these are outside the comparison.
    pub skipped: usize,
    pub mismatches: Vec<LrsMismatch>,
}

/// Compares the decomposition coefficients of `𝔊_v` over blocks
/// `r_0, …, r_{n-1}` with the structure constants
/// `C^{(u_1×⋯×u_n)·w(ρ,d)}_{v, w(ρ,d)}`, `u_i = w(λ_i, r_{i-1}) ∈ S_{d_{i-1}}`.
///
/// `sizes` lists `r_0, …, r_n`; the last entry only widens the `d_i`.
pub fn lrs_identity_check(v: &Permutation, sizes: &[u32], theory: Theory, degree_cap: Option<u32>) -> Result<LrsReport> {
    if sizes.len() < 2 {
        return Err(Error::Input("need block sizes r_0, …, r_n with n >= 1".into()));
    }
    let n = sizes.len() - 1;
    let blocks = BlockStructure::new(sizes[..n].iter().map(|&x| x as usize).collect());
    check_block_descents(v, &blocks)?;
    let d_prime: Vec<u32> = (0..n).map(|i| sizes[i..n].iter().sum()).collect();
    let dd: Vec<u32> = (0..=n).map(|i| d_prime.get(i).copied().unwrap_or(0) + sizes[n]).collect();
    let d = d_prime[0] as usize;

    let rho_rows = if n >= 2 { d_prime[1] as usize } else { 0 };
    let rho = Partition::new(
        (1..=rho_rows)
            .map(|j| (1..n).filter(|&i| j <= d_prime[i] as usize).map(|i| dd[i]).sum())
            .collect(),
    );
    let w_rho = grassmannian_permutation(&rho, d, d + rho.part(1) as usize)?;

    let decomposition = decomposition_coefficients_full(v, &blocks, theory, degree_cap)?;
    let product = structure_constants(v, &w_rho, theory, degree_cap.map(|c| c + rho.size()))?;

    let w_rho_inv = w_rho.inverse();
    let block_sizes: Vec<usize> = (0..n).map(|i| dd[i] as usize).collect();
    let mut report = LrsReport {
        holds: true,
        compared: 0,
        skipped: 0,
        mismatches: Vec::new(),
    };
    let record = |key: PartitionSequence, structure_constant: Coeff, report: &mut LrsReport| {
        let decomposition = decomposition.table.get(&key);
        report.compared += 1;
        if decomposition != structure_constant {
            report.mismatches.push(LrsMismatch {
                key,
                decomposition,
                structure_constant,
            });
        }
    };

    for (w, c) in product.table.iter() {
        match grassmannian_factors(&w.compose(&w_rho_inv), &block_sizes, &sizes[..n]) {
            Some(key) => record(key, c.clone(), &mut report),
            None => report.skipped += 1,
        }
    }
    // entries of the decomposition that the product table never produced
    for (key, _) in decomposition.table.iter() {
        let fits = key.0.iter().enumerate().all(|(i, lam)| lam.part(1) <= dd[i + 1]);
        if !fits {
            continue;
        }
        let factors: Vec<(Permutation, usize)> = key
            .0
            .iter()
            .enumerate()
            .map(|(i, lam)| {
                let k = sizes[i] as usize;
                let u = grassmannian_permutation(lam, k, k + lam.part(1) as usize)?;
                Ok((u, block_sizes[i]))
            })
            .collect::<Result<_>>()?;
        let w = cartesian_product(&factors)?.compose(&w_rho);
        if product.table.get(&w).is_zero() {
            record(key.clone(), Coeff::ZERO, &mut report);
        }
    }
    report.holds = report.mismatches.is_empty();
    Ok(report)
}

/// Splits `x` into `u_1 × ⋯ × u_n` over the given block sizes and reads off
/// `λ_i` when each `u_i` is Grassmannian with descent at `k_i`.
fn grassmannian_factors(x: &Permutation, block_sizes: &[usize], ks: &[u32]) -> Option<PartitionSequence> {
    let total: usize = block_sizes.iter().sum();
    if !x.fits(total) {
        return None;
    }
    let w = x.window_padded(total);
    let mut offset = 0;
    let mut out = Vec::with_capacity(block_sizes.len());
    for (&size, &k) in block_sizes.iter().zip(ks) {
        let k = k as usize;
        let part = &w[offset..offset + size];
        let lo = offset as u32;
        if part.iter().any(|&val| val <= lo || val > lo + size as u32) {
            return None;
        }
        let local: Vec<u32> = part.iter().map(|&val| val - lo).collect();
        if local.windows(2).enumerate().any(|(i, p)| p[0] > p[1] && i + 1 != k) {
            return None;
        }
        let lambda: Vec<u32> = (1..=k.min(size)).rev().map(|i| local[i - 1] - i as u32).collect();
        out.push(Partition::try_new(lambda).ok()?);
        offset += size;
    }
    Some(PartitionSequence::new(out))
}
