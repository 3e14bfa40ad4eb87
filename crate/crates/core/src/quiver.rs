//! Rank conditions for an equioriented type A quiver and the data derived
//! from them.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::{BlockStructure, Monomial, MVPolynomial};
use crate::shapes::{self, Partition};

/// The triangular array `r_{ij}`, `0 <= i <= j <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankConditions {
    n: usize,
    /// `ranks[i][k] = r_{i,i+k}`
    ranks: Vec<Vec<u32>>,
}

impl RankConditions {
    pub fn new(n: usize, ranks: Vec<Vec<u32>>) -> Result<Self> {
        if ranks.len() != n + 1 {
            return Err(Error::InvalidRanks(format!(
                "expected {} rows of ranks, got {}",
                n + 1,
                ranks.len()
            )));
        }
        for (i, row) in ranks.iter().enumerate() {
            if row.len() != n + 1 - i {
                return Err(Error::InvalidRanks(format!(
                    "row {i} must have {} entries, has {}",
                    n + 1 - i,
                    row.len()
                )));
            }
        }
        Ok(RankConditions { n, ranks })
    }

    /// Builds the array from a function `(i, j) ↦ r_{ij}`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> u32) -> Self {
        let ranks = (0..=n).map(|i| (i..=n).map(|j| f(i, j)).collect()).collect();
        RankConditions { n, ranks }
    }

    /// Rank conditions realised by a lace array: `r_{ij}` counts the laces
    /// `[a, b]` with `a <= i` and `j <= b`.
    pub fn from_lace(lace: &LaceArray) -> Self {
        let n = lace.n;
        Self::from_fn(n, |i, j| {
            let mut total = 0;
            for a in 0..=i {
                for b in j..=n {
                    total += lace.get(a, b);
                }
            }
            total
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ranks(&self) -> &[Vec<u32>] {
        &self.ranks
    }

    /// `r_{ij}`, reading zero outside `0 <= i <= j <= n`.
    pub fn get(&self, i: isize, j: isize) -> u32 {
        if i < 0 || j < i || j as usize > self.n {
            return 0;
        }
        self.ranks[i as usize][(j - i) as usize]
    }

    pub fn diagonal(&self) -> Vec<u32> {
        (0..=self.n).map(|i| self.ranks[i][0]).collect()
    }

    pub fn lace_array(&self) -> LaceArray {
        let n = self.n;
        let mut entries = Vec::with_capacity(n + 1);
        for i in 0..=n as isize {
            let row = (i..=n as isize)
                .map(|j| {
                    self.get(i, j) as i64 - self.get(i - 1, j) as i64 - self.get(i, j + 1) as i64
                        + self.get(i - 1, j + 1) as i64
                })
                .collect();
            entries.push(row);
        }
        LaceArray { n, entries }
    }

    /// Valid means the lace array is entrywise nonnegative.
    pub fn validate(&self) -> Result<()> {
        let lace = self.lace_array();
        for a in 0..=self.n {
            for b in a..=self.n {
                let s = lace.get_signed(a, b);
                if s < 0 {
                    return Err(Error::InvalidRanks(format!("lace entry s[{a}][{b}] = {s} is negative")));
                }
            }
        }
        Ok(())
    }

    /// `ε_{ij} = min(r_i, …, r_j)`.
    pub fn maximal(&self) -> RankConditions {
        let diag = self.diagonal();
        Self::from_fn(self.n, |i, j| *diag[i..=j].iter().min().unwrap())
    }

    pub fn from_json_str(text: &str) -> Result<(Self, Option<Permutation>)> {
        let file: RankFile = serde_json::from_str(text)?;
        let ranks = RankConditions::new(file.n, file.ranks)?;
        let zel = file.zelevinsky.map(Permutation::from_window).transpose()?;
        Ok((ranks, zel))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<(Self, Option<Permutation>)> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "ranks": self.ranks })
    }
}

#[derive(Debug, Deserialize, Serialize)]
struct RankFile {
    n: usize,
    ranks: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    zelevinsky: Option<Vec<u32>>,
}

/// Inclusion–exclusion companion `s_{ij}` of the rank array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaceArray {
    n: usize,
    /// `entries[a][b - a] = s_{ab}`
    entries: Vec<Vec<i64>>,
}

impl LaceArray {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> u32) -> Self {
        let entries = (0..=n).map(|a| (a..=n).map(|b| f(a, b) as i64).collect()).collect();
        LaceArray { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get_signed(&self, a: usize, b: usize) -> i64 {
        if a > b || b > self.n {
            return 0;
        }
        self.entries[a][b - a]
    }

    /// Clamped at zero; only meaningful for valid arrays.
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.get_signed(a, b).max(0) as u32
    }

    pub fn nonzero_entries(&self) -> Vec<((usize, usize), i64)> {
        let mut out = Vec::new();
        for a in 0..=self.n {
            for b in a..=self.n {
                let s = self.get_signed(a, b);
                if s != 0 {
                    out.push(((a, b), s));
                }
            }
        }
        out
    }

    /// `Σ_{a <= i <= b} s_{ab}`, which reproduces `r_i` for valid ranks.
    pub fn column_sum(&self, i: usize) -> i64 {
        let mut total = 0;
        for a in 0..=i {
            for b in i..=self.n {
                total += self.get_signed(a, b);
            }
        }
        total
    }
}

/// Everything computed from a set of rank conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverDerivedData {
    pub n: usize,
    /// `r_0, …, r_n`
    pub r: Vec<u32>,
    /// `d'_0, …, d'_{n-1}` with `d'_i = r_i + ⋯ + r_{n-1}`
    pub d_prime: Vec<u32>,
    /// `d_0, …, d_n` with `d_i = d'_i + r_n`
    pub d: Vec<u32>,
    /// `R_1, …, R_{n-1}` where `R_i = (d_{i+1})^{r_{i-1}}`
    pub rectangles: Vec<Partition>,
    pub rho: Partition,
    pub zelevinsky: Permutation,
    pub expected_codimension: i64,
}

impl QuiverDerivedData {
    /// `d = d'_0`, the number of rows of `ρ(μ)`.
    pub fn total_rows(&self) -> usize {
        self.d_prime[0] as usize
    }

    /// `Σ_{i=1}^{n-1} r_{i-1}·d_{i+1}`, the degree of the denominator monomial.
    pub fn denominator_degree(&self) -> u32 {
        (1..self.n).map(|i| self.r[i - 1] * self.d[i + 1]).sum()
    }

    /// Blocks `(r_0, …, r_{n-1})` carrying the variables of the decomposition.
    pub fn decomposition_blocks(&self) -> BlockStructure {
        BlockStructure::new(self.r[..self.n].iter().map(|&x| x as usize).collect())
    }

    /// Blocks `(r_0, …, r_n)`.
    pub fn blocks(&self) -> BlockStructure {
        BlockStructure::new(self.r.iter().map(|&x| x as usize).collect())
    }
}

pub fn derive(ranks: &RankConditions) -> Result<QuiverDerivedData> {
    derive_with_override(ranks, None)
}

pub fn derive_with_override(
    ranks: &RankConditions,
    zelevinsky_override: Option<Permutation>,
) -> Result<QuiverDerivedData> {
    ranks.validate()?;
    let n = ranks.n();
    let r = ranks.diagonal();
    let d_prime: Vec<u32> = (0..n).map(|i| r[i..n].iter().sum()).collect();
    let d: Vec<u32> = (0..=n)
        .map(|i| d_prime.get(i).copied().unwrap_or(0) + r[n])
        .collect();
    let rectangles = (1..n)
        .map(|i| Partition::rectangle(r[i - 1] as usize, d[i + 1]))
        .collect();
    let zelevinsky = zelevinsky_permutation(ranks, zelevinsky_override)?;
    let mut derived = QuiverDerivedData {
        n,
        r,
        d_prime,
        d,
        rectangles,
        rho: Partition::empty(),
        zelevinsky,
        expected_codimension: 0,
    };
    derived.rho = shapes::rho(&derived);
    derived.expected_codimension =
        derived.zelevinsky.length() as i64 - derived.denominator_degree() as i64;
    Ok(derived)
}

/// The Zelevinsky permutation `v(r) ∈ S_{d_0}`.
///
/// The permutation matrix is cut into block rows of sizes `r_0, …, r_n`
/// (top to bottom) and block columns of sizes `r_n, …, r_0` (left to right).
/// Block `(i, j)` holds `s_{ji}` ones when `j <= i`, the superantidiagonal
/// block `(i, i+1)` holds `r_{i,i+1}` ones, and all other blocks are empty.
/// Inside every block row and every block column the ones run from
/// northwest to southeast, which pins the permutation down.
pub fn zelevinsky_permutation(
    ranks: &RankConditions,
    override_perm: Option<Permutation>,
) -> Result<Permutation> {
    ranks.validate()?;
    let n = ranks.n();
    let r = ranks.diagonal();
    let total: usize = r.iter().map(|&x| x as usize).sum();
    let boundaries: Vec<usize> = (1..=n).map(|i| r[..i].iter().sum::<u32>() as usize).collect();
    if let Some(p) = override_perm {
        if !p.fits(total) {
            return Err(Error::AmbientTooSmall {
                perm: p.window().to_vec(),
                ambient: total,
            });
        }
        if let Some(bad) = p.descents().into_iter().find(|i| !boundaries.contains(i)) {
            return Err(Error::DescentCondition(format!(
                "override {p} has a descent at {bad}, allowed {boundaries:?}"
            )));
        }
        return Ok(p);
    }

    let lace = ranks.lace_array();
    let count = |i: usize, j: usize| -> usize {
        if j <= i {
            lace.get(j, i) as usize
        } else if j == i + 1 {
            ranks.get(i as isize, j as isize) as usize
        } else {
            0
        }
    };
    // first column of block column j; block columns run n, n-1, …, 0
    let mut col_start = vec![0usize; n + 1];
    let mut acc = 0;
    for j in (0..=n).rev() {
        col_start[j] = acc;
        acc += r[j] as usize;
    }
    let mut next_col = col_start.clone();
    let mut window = Vec::with_capacity(total);
    for i in 0..=n {
        let mut row_total = 0;
        for j in (0..=n).rev() {
            for _ in 0..count(i, j) {
                next_col[j] += 1;
                window.push(next_col[j] as u32);
                row_total += 1;
            }
        }
        if row_total != r[i] as usize {
            return Err(Error::InvalidRanks(format!(
                "block row {i} received {row_total} entries, expected {}",
                r[i]
            )));
        }
    }
    Permutation::from_window(window)
}

/// `∏_{i=1}^{n-1} (x^{i-1}_1 ⋯ x^{i-1}_{r_{i-1}})^{d_{i+1}}`.
pub fn denominator_monomial(derived: &QuiverDerivedData) -> MVPolynomial {
    let blocks = derived.blocks();
    let mut exps = vec![0u8; blocks.total()];
    for i in 1..derived.n {
        let offset = blocks.offset(i - 1);
        for t in 0..derived.r[i - 1] as usize {
            exps[offset + t] = derived.d[i + 1] as u8;
        }
    }
    MVPolynomial::from_term(Monomial::from_exponents(&exps), 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example1() -> RankConditions {
        RankConditions::new(3, vec![vec![1, 1, 1, 0], vec![4, 2, 1], vec![3, 2], vec![3]]).unwrap()
    }

    #[test]
    fn rejects_malformed_arrays() {
        assert!(RankConditions::new(2, vec![vec![1, 1], vec![1, 1], vec![1]]).is_err());
        // r_01 larger than r_0
        let bad = RankConditions::new(1, vec![vec![1, 2], vec![2]]).unwrap();
        assert!(bad.validate().is_err());
        assert!(derive(&bad).is_err());
    }

    #[test]
    fn example1_derived_values() {
        let d = derive(&example1()).unwrap();
        assert_eq!(d.d_prime, vec![8, 7, 3]);
        assert_eq!(d.d, vec![11, 10, 6, 3]);
        assert_eq!(d.rectangles, vec![Partition::rectangle(1, 6), Partition::rectangle(4, 3)]);
        assert_eq!(d.rho, Partition::new(vec![16, 16, 16, 10, 10, 10, 10]));
        assert_eq!(d.expected_codimension, 5);
        for i in 0..d.n {
            assert_eq!(d.d[i] - d.d[i + 1], d.r[i]);
        }
        assert_eq!(derive(&example1()).unwrap(), d);
    }

    #[test]
    fn single_arrow() {
        let r = RankConditions::new(1, vec![vec![2, 1], vec![3]]).unwrap();
        let d = derive(&r).unwrap();
        assert_eq!(d.d_prime, vec![2]);
        assert_eq!(d.d, vec![5, 3]);
        assert!(d.rectangles.is_empty());
        assert!(d.rho.is_empty());
    }

    #[test]
    fn example1_lace() {
        let lace = example1().lace_array();
        assert_eq!(
            lace.nonzero_entries(),
            vec![((0, 2), 1), ((1, 1), 2), ((1, 3), 1), ((2, 3), 1), ((3, 3), 1)]
        );
        let r = example1().diagonal();
        for i in 0..=3 {
            assert_eq!(lace.column_sum(i), r[i] as i64);
        }
        let zero = RankConditions::from_fn(3, |_, _| 0);
        assert!(zero.lace_array().nonzero_entries().is_empty());
        assert_eq!(RankConditions::from_lace(&lace), example1());
    }

    #[test]
    fn maximal_conditions() {
        let eps = example1().maximal();
        assert_eq!(eps.get(0, 1), 1);
        assert_eq!(eps.get(0, 2), 1);
        assert_eq!(eps.get(0, 3), 1);
        assert_eq!(eps.get(1, 2), 3);
        assert_eq!(eps.get(1, 3), 3);
        assert_eq!(eps.get(2, 3), 3);
        assert_eq!(eps.maximal(), eps);
        eps.validate().unwrap();
        let constant = RankConditions::from_fn(3, |i, j| if i == j { 2 } else { 0 }).maximal();
        assert!(constant.ranks().iter().flatten().all(|&x| x == 2));
    }

    #[test]
    fn example1_zelevinsky() {
        let v = zelevinsky_permutation(&example1(), None).unwrap();
        assert_eq!(v.window(), &[7, 4, 5, 8, 9, 1, 2, 11, 3, 6, 10]);
        assert_eq!(v.descents(), vec![1, 5, 8]);
        let v_eps = zelevinsky_permutation(&example1().maximal(), None).unwrap();
        assert_eq!(v_eps.lehmer_code(), vec![6, 3, 3, 3, 3]);
        assert!(v_eps.is_dominant());
    }

    #[test]
    fn zelevinsky_override_is_validated() {
        let good = Permutation::from_window(vec![7, 4, 5, 8, 9, 1, 2, 11, 3, 6, 10]).unwrap();
        assert_eq!(zelevinsky_permutation(&example1(), Some(good.clone())).unwrap(), good);
        let bad_descent = Permutation::from_window(vec![1, 3, 2]).unwrap();
        assert!(zelevinsky_permutation(&example1(), Some(bad_descent)).is_err());
        let too_big = Permutation::from_window((1..=12).rev().collect()).unwrap();
        assert!(zelevinsky_permutation(&example1(), Some(too_big)).is_err());
    }

    #[test]
    fn denominator_for_example1() {
        let d = derive(&example1()).unwrap();
        let m = denominator_monomial(&d);
        let expected = Monomial::from_exponents(&[6, 3, 3, 3, 3]);
        assert_eq!(m, MVPolynomial::from_term(expected, 1));
        let one_arrow = derive(&RankConditions::new(1, vec![vec![2, 1], vec![3]]).unwrap()).unwrap();
        assert_eq!(denominator_monomial(&one_arrow), MVPolynomial::one());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"n": 3, "ranks": [[1,1,1,0],[4,2,1],[3,2],[3]]}"#;
        let (r, z) = RankConditions::from_json_str(text).unwrap();
        assert_eq!(r, example1());
        assert!(z.is_none());
        assert!(RankConditions::from_json_str(r#"{"n": 1, "ranks": [[1]]}"#).is_err());
    }
}
