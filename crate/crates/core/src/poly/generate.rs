use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::operators::{divided_difference, isobaric_divided_difference};
use super::{MVPolynomial, Monomial, Theory};
use crate::error::{Error, Result};
use crate::perm::{grassmannian_permutation, Permutation};
use crate::shapes::Partition;

/// Climbs from `w` in right weak order to a dominant permutation by
/// repeatedly fixing the first strict ascent of the Lehmer code.
///
/// Returns the dominant permutation and the letters `a_1, …, a_k` with
/// `w · s_{a_1} ⋯ s_{a_k}` equal to it, lengths adding.
pub fn dominant_path(w: &Permutation) -> (Permutation, Vec<usize>) {
    let mut cur = w.clone();
    let mut letters = Vec::new();
    loop {
        let code = cur.lehmer_code();
        match code.windows(2).position(|p| p[0] < p[1]) {
            Some(idx) => {
                let i = idx + 1;
                cur = cur.mul_simple(i);
                letters.push(i);
            }
            None => return (cur, letters),
        }
    }
}

fn apply_down(start: MVPolynomial, letters: &[usize], theory: Theory) -> MVPolynomial {
    letters.iter().rev().fold(start, |f, &i| match theory {
        Theory::Cohomology => divided_difference(&f, i),
        Theory::KTheory => isobaric_divided_difference(&f, i),
    })
}

fn code_monomial(w: &Permutation) -> MVPolynomial {
    let code: Vec<u8> = w.lehmer_code().into_iter().map(|c| c as u8).collect();
    MVPolynomial::from_term(Monomial::from_exponents(&code), 1)
}

/// `𝔖_w` or `𝔊_w`, generated from the dominant permutation above `w`, whose
/// polynomial is the monomial `x^{code}`.
pub fn schubert_type_polynomial(w: &Permutation, theory: Theory) -> MVPolynomial {
    let (dominant, letters) = dominant_path(w);
    apply_down(code_monomial(&dominant), &letters, theory)
}

pub fn grothendieck_polynomial(w: &Permutation, ambient: usize) -> Result<MVPolynomial> {
    check_fits(w, ambient)?;
    Ok(schubert_type_polynomial(w, Theory::KTheory))
}

pub fn schubert_polynomial(w: &Permutation, ambient: usize) -> Result<MVPolynomial> {
    check_fits(w, ambient)?;
    Ok(schubert_type_polynomial(w, Theory::Cohomology))
}

fn check_fits(w: &Permutation, ambient: usize) -> Result<()> {
    if w.fits(ambient) {
        Ok(())
    } else {
        Err(Error::AmbientTooSmall {
            perm: w.window().to_vec(),
            ambient,
        })
    }
}

/// Which ascent to climb through on the way from `w` to the longest element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LongestPath {
    Leftmost,
    Rightmost,
}

/// The same polynomial computed the textbook way: start at
/// `x_1^{N-1} x_2^{N-2} ⋯` for the longest element of `S_N` and descend.
pub fn polynomial_via_longest_element(
    w: &Permutation,
    ambient: usize,
    theory: Theory,
    path: LongestPath,
) -> Result<MVPolynomial> {
    check_fits(w, ambient)?;
    let mut cur = w.clone();
    let mut letters = Vec::new();
    loop {
        let ascents = (1..ambient).filter(|&i| cur.is_ascent(i));
        let next = match path {
            LongestPath::Leftmost => ascents.min(),
            LongestPath::Rightmost => ascents.max(),
        };
        match next {
            Some(i) => {
                cur = cur.mul_simple(i);
                letters.push(i);
            }
            None => break,
        }
    }
    let staircase: Vec<u8> = (1..ambient).rev().map(|e| e as u8).collect();
    let top = MVPolynomial::from_term(Monomial::from_exponents(&staircase), 1);
    Ok(apply_down(top, &letters, theory))
}

/// `G_λ(x_1, …, x_k)`, or the Schur polynomial in cohomology. Zero when `λ`
/// has more than `k` rows.
pub fn symmetric_grothendieck(lambda: &Partition, k: usize, theory: Theory) -> MVPolynomial {
    if lambda.num_rows() > k {
        return MVPolynomial::zero();
    }
    let w = grassmannian_permutation(lambda, k, k + lambda.part(1) as usize)
        .expect("shape fits by construction");
    schubert_type_polynomial(&w, theory)
}

/// Memoised `𝔖_w` / `𝔊_w` for repeated lookups during expansions.
#[derive(Default)]
pub struct PolyCache {
    map: FxHashMap<(Permutation, Theory), Arc<MVPolynomial>>,
}

impl PolyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, w: &Permutation, theory: Theory) -> Arc<MVPolynomial> {
        self.map
            .entry((w.clone(), theory))
            .or_insert_with(|| Arc::new(schubert_type_polynomial(w, theory)))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
