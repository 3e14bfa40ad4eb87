//! Sparse multivariate polynomials with exact integer coefficients, the
//! divided-difference operators acting on them, and expansion into the
//! Schubert, Grothendieck and product-of-`G_λ` bases.

mod expand;
mod generate;
mod operators;
mod table;

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use dashu_int::IBig;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub use expand::{
    exact_divide_by_monomial, expand_in_grothendieck_basis, expand_in_product_g_basis,
    expand_in_schubert_basis, schubert_coefficient_by_operators, GrothendieckExpansion,
    ProductExpansion,
};
pub use generate::{
    dominant_path, grothendieck_polynomial, polynomial_via_longest_element,
    schubert_polynomial, schubert_type_polynomial, symmetric_grothendieck, LongestPath,
    PolyCache,
};
pub use operators::{divided_difference, isobaric_divided_difference};
pub use table::{coeff_to_json, CoefficientTable, TableKey};

pub type Coeff = IBig;

/// Cohomology (Schubert polynomials, Schur functions) or K-theory
/// (Grothendieck polynomials, stable Grothendieck polynomials).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theory {
    #[serde(rename = "cohomology")]
    Cohomology,
    #[serde(rename = "k-theory")]
    KTheory,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Cohomology => "cohomology",
            Theory::KTheory => "k-theory",
        }
    }

    pub fn parse(s: &str) -> Option<Theory> {
        match s {
            "cohomology" | "h" | "H" => Some(Theory::Cohomology),
            "k-theory" | "k" | "K" | "ktheory" => Some(Theory::KTheory),
            _ => None,
        }
    }
}

/// Variables split into consecutive blocks `x^0, x^1, …` of sizes `r_0, r_1, …`,
/// flattened block-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockStructure {
    sizes: Vec<usize>,
}

impl BlockStructure {
    pub fn new(sizes: Vec<usize>) -> Self {
        BlockStructure { sizes }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// 0-based flattened index of the first variable of `block`.
    pub fn offset(&self, block: usize) -> usize {
        self.sizes[..block].iter().sum()
    }

    /// Positions `r_0, r_0 + r_1, …` between consecutive blocks.
    pub fn boundaries(&self) -> Vec<usize> {
        (1..self.sizes.len()).map(|i| self.offset(i)).collect()
    }

    /// 1-based flattened index of `x^block_t` (`t` is 1-based).
    pub fn variable(&self, block: usize, t: usize) -> usize {
        self.offset(block) + t
    }
}

/// An exponent vector with trailing zeros trimmed.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u8; 24]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        let mut v: SmallVec<[u8; 24]> = SmallVec::from_slice(exps);
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    /// `x_i` with 1-based `i`.
    pub fn variable(i: usize) -> Self {
        let mut v: SmallVec<[u8; 24]> = SmallVec::from_elem(0, i);
        v[i - 1] = 1;
        Monomial(v)
    }

    /// Exponent of the 0-based variable `idx`.
    pub fn exponent(&self, idx: usize) -> u8 {
        self.0.get(idx).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    /// Number of variables up to the last one that occurs.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn padded(&self, n: usize) -> SmallVec<[u8; 24]> {
        let mut v = self.0.clone();
        if v.len() < n {
            v.resize(n, 0);
        }
        v
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut v = long.0.clone();
        for (a, &b) in v.iter_mut().zip(short.0.iter()) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        Monomial(v)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut v = other.0.clone();
        for (a, &b) in v.iter_mut().zip(self.0.iter()) {
            *a -= b;
        }
        Monomial::from_exponents(&v)
    }

    /// Reverse lexicographic comparison: the exponent of the last variable
    /// where the two differ decides, larger wins.
    pub fn revlex_cmp(&self, other: &Monomial) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in (0..n).rev() {
            match self.exponent(i).cmp(&other.exponent(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Swaps the 0-based variables `i` and `i+1`.
    pub fn swapped(&self, i: usize) -> Monomial {
        let mut v = self.padded(i + 2);
        v.swap(i, i + 1);
        Monomial::from_exponents(&v)
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x{:?}", self.0.as_slice())
    }
}

/// A polynomial `Σ c_α x^α` with no zero coefficients stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct MVPolynomial {
    terms: FxHashMap<Monomial, Coeff>,
}

impl MVPolynomial {
    pub fn zero() -> Self {
        MVPolynomial::default()
    }

    pub fn one() -> Self {
        Self::from_term(Monomial::one(), 1)
    }

    pub fn from_term(m: Monomial, c: impl Into<Coeff>) -> Self {
        let mut p = MVPolynomial::zero();
        p.add_term(m, c.into());
        p
    }

    /// `x_i` with 1-based `i`.
    pub fn variable(i: usize) -> Self {
        Self::from_term(Monomial::variable(i), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(terms: I) -> Self {
        let mut p = MVPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_term_ref(&mut self, m: &Monomial, c: &Coeff) {
        if let Some(existing) = self.terms.get_mut(m) {
            *existing += c;
            if existing.is_zero() {
                self.terms.remove(m);
            }
        } else if !c.is_zero() {
            self.terms.insert(m.clone(), c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or(IBig::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Coeff)> {
        self.terms.into_iter()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn homogeneous_part(&self, degree: u32) -> MVPolynomial {
        MVPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn lowest_degree_part(&self) -> MVPolynomial {
        match self.min_degree() {
            Some(d) => self.homogeneous_part(d),
            None => MVPolynomial::zero(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Number of variables up to the last one occurring in any term.
    pub fn num_variables(&self) -> usize {
        self.terms.keys().map(Monomial::support_len).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coefficient(&Monomial::one())
    }

    pub fn scale(&self, c: &Coeff) -> MVPolynomial {
        if c.is_zero() {
            return MVPolynomial::zero();
        }
        MVPolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MVPolynomial {
        MVPolynomial {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &MVPolynomial, c: &Coeff) {
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    /// Swaps the 1-based variables `x_i` and `x_{i+1}`.
    pub fn swap_variables(&self, i: usize) -> MVPolynomial {
        MVPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.swapped(i - 1), c.clone())).collect(),
        }
    }

    pub fn is_symmetric_in(&self, i: usize) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| self.terms.get(&m.swapped(i - 1)) == Some(c))
    }

    /// Renames `x_i` to `x_{i + offset}`.
    pub fn shift_variables(&self, offset: usize) -> MVPolynomial {
        MVPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = vec![0u8; offset];
                    exps.extend_from_slice(m.exponents());
                    (Monomial::from_exponents(&exps), c.clone())
                })
                .collect(),
        }
    }

    /// One term per line, `coefficient e_1 … e_vars`, ascending lexicographic
    /// order of exponent vectors.
    pub fn dump(&self, vars: usize) -> String {
        let vars = vars.max(self.num_variables());
        let mut out = String::new();
        for (m, c) in self.sorted_terms() {
            write!(out, "{c}").unwrap();
            for e in m.padded(vars) {
                write!(out, " {e}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

impl std::fmt::Debug for MVPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| format!("{c}*{m:?}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &MVPolynomial {
    type Output = MVPolynomial;
    fn add(self, rhs: &MVPolynomial) -> MVPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term_ref(m, c);
        }
        out
    }
}

impl Sub for &MVPolynomial {
    type Output = MVPolynomial;
    fn sub(self, rhs: &MVPolynomial) -> MVPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MVPolynomial {
    type Output = MVPolynomial;
    fn neg(self) -> MVPolynomial {
        MVPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &MVPolynomial {
    type Output = MVPolynomial;
    fn mul(self, rhs: &MVPolynomial) -> MVPolynomial {
        let mut out = MVPolynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MVPolynomial {
        MVPolynomial::variable(i)
    }

    #[test]
    fn arithmetic_cancels_to_zero() {
        let f = &(&x(1) + &x(2)) * &x(1);
        let g = &f - &f;
        assert!(g.is_zero());
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.min_degree(), Some(2));
        assert!(f.is_homogeneous());
    }

    #[test]
    fn monomials_trim_trailing_zeros() {
        assert_eq!(Monomial::from_exponents(&[1, 0, 0]), Monomial::variable(1));
        assert_eq!(Monomial::from_exponents(&[0, 0]), Monomial::one());
        let m = Monomial::from_exponents(&[2, 1]);
        assert!(Monomial::variable(1).divides(&m));
        assert!(!Monomial::variable(3).divides(&m));
        assert_eq!(Monomial::variable(1).quotient_of(&m), Monomial::from_exponents(&[1, 1]));
    }

    #[test]
    fn revlex_prefers_later_variables() {
        let a = Monomial::from_exponents(&[1, 0]);
        let b = Monomial::from_exponents(&[0, 1]);
        assert_eq!(b.revlex_cmp(&a), Ordering::Greater);
        assert_eq!(a.revlex_cmp(&a), Ordering::Equal);
    }

    #[test]
    fn dump_is_sorted() {
        // x_1 + x_2 - x_1 x_2
        let f = &(&x(1) + &x(2)) - &(&x(1) * &x(2));
        assert_eq!(f.dump(2), "1 0 1\n1 1 0\n-1 1 1\n");
    }

    #[test]
    fn shifting_and_swapping() {
        let f = x(1).shift_variables(3);
        assert_eq!(f, x(4));
        let g = &x(1) * &x(1);
        assert_eq!(g.swap_variables(1), &x(2) * &x(2));
        assert!((&x(1) + &x(2)).is_symmetric_in(1));
        assert!(!x(1).is_symmetric_in(1));
    }

    #[test]
    fn blocks() {
        let b = BlockStructure::new(vec![1, 4, 3, 3]);
        assert_eq!(b.total(), 11);
        assert_eq!(b.offset(2), 5);
        assert_eq!(b.boundaries(), vec![1, 5, 8]);
        assert_eq!(b.variable(1, 1), 2);
    }
}
