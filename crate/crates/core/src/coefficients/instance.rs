use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use super::decomposition::decomposition_coefficients_full;
use super::product::structure_constants;
use super::ratio::quiver_coefficients_ratio;
use crate::error::Result;
use crate::perm::{grassmannian_permutation, Permutation};
use crate::poly::{GrothendieckExpansion, ProductExpansion, Theory};
use crate::quiver::{derive_with_override, QuiverDerivedData, RankConditions};
use crate::shapes::{mu_tilde, rho_mu, Partition, PartitionSequence};

type Cache<T> = Mutex<FxHashMap<Theory, (Option<u32>, Arc<T>)>>;

/// Rank conditions with everything derived from them, plus memoised
/// expansions shared by the routes.
pub struct QuiverInstance {
    pub ranks: RankConditions,
    pub derived: QuiverDerivedData,
    ratio: Cache<ProductExpansion>,
    decomposition: Cache<ProductExpansion>,
    product: Cache<GrothendieckExpansion>,
}

impl QuiverInstance {
    pub fn new(ranks: RankConditions, zelevinsky_override: Option<Permutation>) -> Result<Self> {
        let derived = derive_with_override(&ranks, zelevinsky_override)?;
        Ok(QuiverInstance {
            ranks,
            derived,
            ratio: Mutex::default(),
            decomposition: Mutex::default(),
            product: Mutex::default(),
        })
    }

    pub fn zelevinsky(&self) -> &Permutation {
        &self.derived.zelevinsky
    }

    /// `d = d'_0`.
    pub fn d(&self) -> usize {
        self.derived.total_rows()
    }

    pub fn mu_tilde(&self, mu: &PartitionSequence) -> Result<PartitionSequence> {
        mu_tilde(&self.derived, mu)
    }

    /// `w(ρ, d)`.
    pub fn rho_permutation(&self) -> Result<Permutation> {
        let rho = &self.derived.rho;
        grassmannian_permutation(rho, self.d(), self.d() + rho.part(1) as usize)
    }

    /// `w(ρ(μ), d)`.
    pub fn target_permutation(&self, mu: &PartitionSequence) -> Result<Permutation> {
        let shape = rho_mu(&self.derived, mu)?;
        grassmannian_permutation(&shape, self.d(), self.d() + shape.part(1) as usize)
    }

    /// Every `μ` with `μ_i ⊆ r_{i-1} × r_i` and `Σ|μ_i| <= max_total`, in a
    /// deterministic order.
    pub fn sequences_up_to(&self, max_total: u32) -> Vec<PartitionSequence> {
        let r = &self.derived.r;
        let mut out: Vec<Vec<Partition>> = vec![Vec::new()];
        for i in 1..=self.derived.n {
            let shapes = Partition::all_in_rectangle(r[i - 1] as usize, r[i]);
            let mut next = Vec::new();
            for prefix in &out {
                let used: u32 = prefix.iter().map(Partition::size).sum();
                for s in shapes.iter().filter(|s| used + s.size() <= max_total) {
                    let mut p = prefix.clone();
                    p.push(s.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(PartitionSequence::new).collect()
    }

    /// Degree of `μ̃` relative to `μ`.
    pub fn tilde_shift(&self) -> u32 {
        self.derived.denominator_degree()
    }

    /// Quiver coefficients with `Σ|μ_i| <= needed` (all of them in cohomology).
    pub fn ratio_table(&self, theory: Theory, needed: Option<u32>) -> Result<Arc<ProductExpansion>> {
        cached(&self.ratio, theory, needed, |cap| quiver_coefficients_ratio(&self.derived, theory, cap))
    }

    /// Decomposition coefficients of `𝔊_{v(r)}` with `Σ|λ_i| <= needed`.
    pub fn decomposition_table(&self, theory: Theory, needed: Option<u32>) -> Result<Arc<ProductExpansion>> {
        cached(&self.decomposition, theory, needed, |cap| {
            decomposition_coefficients_full(self.zelevinsky(), &self.derived.decomposition_blocks(), theory, cap)
        })
    }

    /// Structure constants `C^w_{v(r), w(ρ,d)}` with `ℓ(w) <= needed`.
    pub fn product_table(&self, theory: Theory, needed: Option<u32>) -> Result<Arc<GrothendieckExpansion>> {
        cached(&self.product, theory, needed, |cap| {
            structure_constants(self.zelevinsky(), &self.rho_permutation()?, theory, cap)
        })
    }
}

/// Reuses a cached expansion when its degree cap covers `needed`. Cohomology
/// expansions are homogeneous and never capped.
fn cached<T>(
    cache: &Cache<T>,
    theory: Theory,
    needed: Option<u32>,
    compute: impl FnOnce(Option<u32>) -> Result<T>,
) -> Result<Arc<T>> {
    let needed = match theory {
        Theory::Cohomology => None,
        Theory::KTheory => needed,
    };
    if let Some((cap, value)) = cache.lock().expect("cache lock").get(&theory) {
        let covers = match (cap, needed) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(c), Some(n)) => *c >= n,
        };
        if covers {
            return Ok(value.clone());
        }
    }
    let value = Arc::new(compute(needed)?);
    cache
        .lock()
        .expect("cache lock")
        .insert(theory, (needed, value.clone()));
    Ok(value)
}
