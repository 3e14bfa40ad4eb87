//! Permutations in one-line notation, reduced words and covers in the
//! `d`-Bruhat order.
//!
//! A [`Permutation`] is stored as its one-line window with trailing fixed
//! points removed, so `(2,1)` and `(2,1,3,4)` are the same value. Operations
//! that care about the ambient symmetric group take it explicitly.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    window: Vec<u32>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { window: Vec::new() }
    }

    /// Builds a permutation from its one-line window, which must be a
    /// bijection of `{1, ..., window.len()}`.
    pub fn from_window(window: Vec<u32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n];
        for &value in &window {
            let idx = value as usize;
            if idx == 0 || idx > n || seen[idx - 1] {
                return Err(Error::InvalidPermutation(window));
            }
            seen[idx - 1] = true;
        }
        Ok(Self::from_window_unchecked(window))
    }

    pub(crate) fn from_window_unchecked(mut window: Vec<u32>) -> Self {
        while let Some(&last) = window.last() {
            if last as usize == window.len() {
                window.pop();
            } else {
                break;
            }
        }
        Permutation { window }
    }

    /// The simple reflection `s_i` swapping `i` and `i+1`.
    pub fn simple(i: usize) -> Self {
        Self::transposition(i, i + 1)
    }

    pub fn transposition(j: usize, k: usize) -> Self {
        let mut window: Vec<u32> = (1..=k.max(j) as u32).collect();
        window.swap(j - 1, k - 1);
        Self::from_window_unchecked(window)
    }

    /// The permutation whose Lehmer code is `code`.
    pub fn from_code(code: &[u32]) -> Self {
        let n = code
            .iter()
            .enumerate()
            .map(|(i, &c)| i + 1 + c as usize)
            .max()
            .unwrap_or(0)
            .max(code.len());
        let mut available: Vec<u32> = (1..=n as u32).collect();
        let mut window = Vec::with_capacity(n);
        for i in 0..n {
            let c = code.get(i).copied().unwrap_or(0) as usize;
            window.push(available.remove(c));
        }
        Self::from_window_unchecked(window)
    }

    /// Smallest `N` with this permutation in `S_N`.
    pub fn size(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[u32] {
        &self.window
    }

    /// The window extended by fixed points to length `n` (`n >= size`).
    pub fn window_padded(&self, n: usize) -> Vec<u32> {
        let mut w = self.window.clone();
        w.extend(self.window.len() as u32 + 1..=n as u32);
        w
    }

    pub fn fits(&self, ambient: usize) -> bool {
        self.size() <= ambient
    }

    /// `w(i)` for a 1-based position `i`.
    pub fn apply(&self, i: usize) -> u32 {
        self.window.get(i - 1).copied().unwrap_or(i as u32)
    }

    pub fn is_identity(&self) -> bool {
        self.window.is_empty()
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Positions `i` with `w(i) > w(i+1)`, ascending.
    pub fn descents(&self) -> Vec<usize> {
        self.window
            .windows(2)
            .enumerate()
            .filter(|(_, pair)| pair[0] > pair[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn last_descent(&self) -> Option<usize> {
        self.descents().last().copied()
    }

    pub fn lehmer_code(&self) -> Vec<u32> {
        let w = &self.window;
        let mut code: Vec<u32> = (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count() as u32)
            .collect();
        while code.last() == Some(&0) {
            code.pop();
        }
        code
    }

    /// 132-avoiding, equivalently a weakly decreasing Lehmer code.
    pub fn is_dominant(&self) -> bool {
        self.lehmer_code().windows(2).all(|p| p[0] >= p[1])
    }

    /// At most one descent, located at `k` when present.
    pub fn is_grassmannian_at(&self, k: usize) -> bool {
        self.descents().iter().all(|&i| i == k)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.window.len()];
        for (i, &v) in self.window.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { window: inv }
    }

    /// Composition `self · other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let n = self.size().max(other.size());
        let window = (1..=n).map(|i| self.apply(other.apply(i) as usize)).collect();
        Self::from_window_unchecked(window)
    }

    /// `self · t_{(j,k)}`: swaps the entries in positions `j` and `k`.
    pub fn swap_positions(&self, j: usize, k: usize) -> Permutation {
        let mut w = self.window_padded(self.size().max(j).max(k));
        w.swap(j - 1, k - 1);
        Self::from_window_unchecked(w)
    }

    /// Right multiplication by `s_i`.
    pub fn mul_simple(&self, i: usize) -> Permutation {
        self.swap_positions(i, i + 1)
    }

    /// Whether `self · s_i` is longer than `self`.
    pub fn is_ascent(&self, i: usize) -> bool {
        self.apply(i) < self.apply(i + 1)
    }

    /// Bruhat order comparison by the rank-matrix criterion.
    pub fn bruhat_le(&self, other: &Permutation) -> bool {
        let n = self.size().max(other.size());
        let a = self.window_padded(n);
        let b = other.window_padded(n);
        let mut ca = vec![0i32; n + 2];
        let mut cb = vec![0i32; n + 2];
        for i in 0..n {
            // counts of values >= k among the first i+1 entries
            for k in 1..=a[i] as usize {
                ca[k] += 1;
            }
            for k in 1..=b[i] as usize {
                cb[k] += 1;
            }
            if (1..=n).any(|k| ca[k] > cb[k]) {
                return false;
            }
        }
        true
    }

    /// Disjoint cycles of length at least two. Each cycle starts at its
    /// largest element and follows the permutation.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in (1..=n as u32).rev() {
            if seen[start as usize] || self.apply(start as usize) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut next = self.apply(start as usize);
            while next != start {
                seen[next as usize] = true;
                cycle.push(next);
                next = self.apply(next as usize);
            }
            out.push(cycle);
        }
        out
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(window: Vec<u32>) -> Result<Self> {
        Permutation::from_window(window)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.window
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A word in the simple reflections `s_a`, `a >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord {
    pub letters: Vec<u32>,
}

impl ReducedWord {
    pub fn new(letters: Vec<u32>) -> Self {
        ReducedWord { letters }
    }

    /// `s_{a_1} · s_{a_2} ⋯ s_{a_t}`.
    pub fn product(&self) -> Permutation {
        let n = self.letters.iter().map(|&a| a as usize + 1).max().unwrap_or(0);
        let mut w: Vec<u32> = (1..=n as u32).collect();
        for &a in &self.letters {
            w.swap(a as usize - 1, a as usize);
        }
        Permutation::from_window_unchecked(w)
    }

    /// True when every prefix product grows in length, i.e. the word is reduced.
    pub fn is_reduced(&self) -> bool {
        let n = self.letters.iter().map(|&a| a as usize + 1).max().unwrap_or(0);
        let mut w: Vec<u32> = (1..=n as u32).collect();
        for &a in &self.letters {
            let a = a as usize;
            if a == 0 || w[a - 1] > w[a] {
                return false;
            }
            w.swap(a - 1, a);
        }
        true
    }
}

pub fn is_reduced_word(word: &ReducedWord, target: &Permutation) -> bool {
    word.letters.iter().all(|&a| a >= 1)
        && word.letters.len() == target.length()
        && word.product() == *target
}

/// One reduced word of `w`, obtained by repeatedly removing the first descent.
pub fn reduced_word(w: &Permutation) -> ReducedWord {
    let mut letters = Vec::with_capacity(w.length());
    let mut cur = w.clone();
    while let Some(&i) = cur.descents().first() {
        letters.push(i as u32);
        cur = cur.mul_simple(i);
    }
    letters.reverse();
    ReducedWord { letters }
}

/// A cover `source → target = source · t_{(j,k)}` in the `d`-Bruhat order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BruhatCover {
    pub target: Permutation,
    pub transposition: (usize, usize),
    /// `target(k)`, the letter this step contributes to a chain word.
    pub letter: u32,
}

impl BruhatCover {
    pub fn source(&self) -> Permutation {
        let (j, k) = self.transposition;
        self.target.swap_positions(j, k)
    }
}

/// Whether `w · t_{(j,k)}` (with `j < k`) has length `ℓ(w) + 1`.
pub(crate) fn is_cover_step(w: &[u32], j: usize, k: usize) -> bool {
    let (a, b) = (w[j - 1], w[k - 1]);
    a < b && !w[j..k - 1].iter().any(|&m| a < m && m < b)
}

/// All covers of `w` in the `d`-Bruhat order inside `S_ambient`.
pub fn d_bruhat_covers(w: &Permutation, d: usize, ambient: usize) -> Vec<BruhatCover> {
    let n = ambient.max(w.size());
    let window = w.window_padded(n);
    let mut out = Vec::new();
    for j in 1..=d.min(n) {
        for k in d + 1..=ambient {
            if is_cover_step(&window, j, k) {
                out.push(BruhatCover {
                    target: w.swap_positions(j, k),
                    transposition: (j, k),
                    letter: window[j - 1],
                });
            }
        }
    }
    out
}

/// `u <= w` in the `d`-Bruhat order: positions up to `d` only gain value,
/// later positions only lose value, and every inversion created on the way
/// straddles `d`.
pub fn d_bruhat_le(u: &Permutation, w: &Permutation, d: usize) -> bool {
    let n = u.size().max(w.size());
    let a = u.window_padded(n);
    let b = w.window_padded(n);
    for i in 0..n {
        if (i < d && a[i] > b[i]) || (i >= d && a[i] < b[i]) {
            return false;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if a[i] < a[j] && b[i] > b[j] && !(i < d && j >= d) {
                return false;
            }
        }
    }
    u.length() <= w.length()
}

/// The Grassmannian permutation `w(λ,k)` in `S_ambient`:
/// `w(i) = i + λ_{k+1-i}` for `i <= k`, remaining values increasing.
pub fn grassmannian_permutation(
    lambda: &Partition,
    k: usize,
    ambient: usize,
) -> Result<Permutation> {
    if lambda.num_rows() > k {
        return Err(Error::TooManyRows {
            partition: lambda.parts().to_vec(),
            max_rows: k,
        });
    }
    let needed = k + lambda.part(1) as usize;
    if ambient < needed {
        return Err(Error::AmbientTooSmall {
            perm: Vec::new(),
            ambient,
        });
    }
    let mut window = Vec::with_capacity(ambient);
    let mut used = vec![false; ambient + 1];
    for i in 1..=k {
        let v = i as u32 + lambda.part(k + 1 - i);
        used[v as usize] = true;
        window.push(v);
    }
    window.extend((1..=ambient as u32).filter(|&v| !used[v as usize]));
    Ok(Permutation::from_window_unchecked(window))
}

/// Block-diagonal permutation `u_1 × u_2 × ⋯` where `u_i` acts on a block of
/// the declared ambient size.
pub fn cartesian_product(parts: &[(Permutation, usize)]) -> Result<Permutation> {
    let mut window = Vec::new();
    let mut offset = 0u32;
    for (perm, ambient) in parts {
        if !perm.fits(*ambient) {
            return Err(Error::AmbientTooSmall {
                perm: perm.window().to_vec(),
                ambient: *ambient,
            });
        }
        window.extend(perm.window_padded(*ambient).into_iter().map(|v| v + offset));
        offset += *ambient as u32;
    }
    Ok(Permutation::from_window_unchecked(window))
}

/// A maximal run of a chain whose word strictly increases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncreasingSegment {
    pub start: Permutation,
    pub end: Permutation,
    pub letters: Vec<u32>,
    /// Cycles of `end · start⁻¹`, each from its maximum.
    pub cycles: Vec<Vec<u32>>,
}

impl IncreasingSegment {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Splits a saturated chain at the descents of its word and checks the
/// structure every increasing chain must have: the cycles of `v_j v_i⁻¹`
/// decrease and form a non-crossing set partition.
pub fn increasing_chain_decomposition(chain: &[BruhatCover]) -> Result<Vec<IncreasingSegment>> {
    let mut segments = Vec::new();
    let mut i = 0;
    while i < chain.len() {
        let mut j = i + 1;
        while j < chain.len() && chain[j].letter > chain[j - 1].letter {
            j += 1;
        }
        let start = chain[i].source();
        for w in chain[i..j].windows(2) {
            if w[1].source() != w[0].target {
                return Err(Error::Input("chain steps are not consecutive".into()));
            }
        }
        let end = chain[j - 1].target.clone();
        let cycles = end.compose(&start.inverse()).cycles();
        for cycle in &cycles {
            if cycle.windows(2).any(|p| p[0] <= p[1]) {
                return Err(Error::Expansion(format!(
                    "increasing segment has a non-decreasing cycle {cycle:?}"
                )));
            }
        }
        if crossing(&cycles) {
            return Err(Error::Expansion(format!(
                "increasing segment has crossing cycles {cycles:?}"
            )));
        }
        segments.push(IncreasingSegment {
            start,
            end,
            letters: chain[i..j].iter().map(|c| c.letter).collect(),
            cycles,
        });
        i = j;
    }
    Ok(segments)
}

fn crossing(blocks: &[Vec<u32>]) -> bool {
    let sets: Vec<BTreeSet<u32>> = blocks.iter().map(|b| b.iter().copied().collect()).collect();
    for (x, a) in sets.iter().enumerate() {
        for b in &sets[x + 1..] {
            // a < b < c < e with a,c in one block and b,e in the other
            for &p in a {
                for &q in b.range(p + 1..) {
                    if a.range(q + 1..).next().is_some_and(|&r| b.range(r + 1..).next().is_some())
                    {
                        return true;
                    }
                }
            }
            for &p in b {
                for &q in a.range(p + 1..) {
                    if b.range(q + 1..).next().is_some_and(|&r| a.range(r + 1..).next().is_some())
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// All permutations of `S_n`, in lexicographic order of windows.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut w: Vec<u32> = (1..=n as u32).collect();
    loop {
        out.push(Permutation::from_window_unchecked(w.clone()));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).unwrap();
        w.swap(i, j);
        w[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(w: &[u32]) -> Permutation {
        Permutation::from_window(w.to_vec()).unwrap()
    }

    const VR: [u32; 11] = [7, 4, 5, 8, 9, 1, 2, 11, 3, 6, 10];

    #[test]
    fn d_bruhat_order_matches_cover_reachability() {
        for n in 3..=5 {
            let all = all_permutations(n);
            for d in 1..n {
                for u in &all {
                    let mut reach = BTreeSet::new();
                    let mut stack = vec![u.clone()];
                    while let Some(x) = stack.pop() {
                        if reach.insert(x.clone()) {
                            stack.extend(d_bruhat_covers(&x, d, n).into_iter().map(|c| c.target));
                        }
                    }
                    for w in &all {
                        assert_eq!(d_bruhat_le(u, w, d), reach.contains(w), "u={u} w={w} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn trailing_fixed_points_are_ignored() {
        assert_eq!(p(&[2, 1]), p(&[2, 1, 3, 4]));
        assert_eq!(p(&[1, 2, 3]), Permutation::identity());
        assert!(Permutation::from_window(vec![1, 1]).is_err());
        assert!(Permutation::from_window(vec![0, 1]).is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity().length(), 0);
        assert_eq!(p(&[2, 1]).length(), 1);
        assert_eq!(p(&VR).length(), 23);
    }

    #[test]
    fn descent_sets() {
        assert!(Permutation::identity().descents().is_empty());
        assert_eq!(p(&VR).descents(), vec![1, 5, 8]);
        assert_eq!(p(&[2, 4, 1, 3]).descents(), vec![2]);
    }

    #[test]
    fn grassmannian_examples() {
        let l = Partition::new(vec![2, 1]);
        assert_eq!(grassmannian_permutation(&l, 2, 4).unwrap(), p(&[2, 4, 1, 3]));
        assert!(grassmannian_permutation(&Partition::empty(), 3, 5)
            .unwrap()
            .is_identity());
        let six = Partition::new(vec![6]);
        assert_eq!(
            grassmannian_permutation(&six, 1, 7).unwrap(),
            p(&[7, 1, 2, 3, 4, 5, 6])
        );
        assert!(grassmannian_permutation(&Partition::new(vec![1, 1, 1]), 2, 5).is_err());
    }

    #[test]
    fn cartesian_examples() {
        let s = p(&[2, 1]);
        assert_eq!(
            cartesian_product(&[(s.clone(), 2), (s.clone(), 2)]).unwrap(),
            p(&[2, 1, 4, 3])
        );
        let w = p(&[3, 1, 2]);
        assert_eq!(
            cartesian_product(&[(Permutation::identity(), 2), (w, 3)]).unwrap(),
            p(&[1, 2, 5, 3, 4])
        );
        assert!(cartesian_product(&[(p(&[3, 2, 1]), 2)]).is_err());
    }

    #[test]
    fn covers_of_small_permutation() {
        let covers = d_bruhat_covers(&p(&[2, 1, 3]), 2, 3);
        assert_eq!(covers.len(), 2);
        assert_eq!(covers[0].transposition, (1, 3));
        assert_eq!(covers[0].target, p(&[3, 1, 2]));
        assert_eq!(covers[0].letter, 2);
        assert_eq!(covers[1].transposition, (2, 3));
        assert_eq!(covers[1].target, p(&[2, 3, 1]));
        assert_eq!(covers[1].letter, 1);
        assert!(d_bruhat_covers(&p(&[3, 2, 1]), 1, 3).is_empty());
        assert!(d_bruhat_covers(&p(&[2, 1, 3]), 3, 3).is_empty());
    }

    #[test]
    fn covers_match_filtered_bruhat_covers_on_s4() {
        for w in all_permutations(4) {
            for d in 1..4 {
                let fast: Vec<_> = d_bruhat_covers(&w, d, 4)
                    .into_iter()
                    .map(|c| c.target)
                    .collect();
                let mut slow = Vec::new();
                for j in 1..=d {
                    for k in d + 1..=4 {
                        let t = w.swap_positions(j, k);
                        if t.length() == w.length() + 1 && w.bruhat_le(&t) {
                            slow.push(t);
                        }
                    }
                }
                assert_eq!(fast, slow, "w={w} d={d}");
            }
        }
    }

    #[test]
    fn reduced_words() {
        assert!(is_reduced_word(&ReducedWord::new(vec![1]), &p(&[2, 1])));
        assert!(!is_reduced_word(&ReducedWord::new(vec![1, 1]), &Permutation::identity()));
        let word = ReducedWord::new(vec![
            6, 5, 4, 3, 2, 1, 10, 7, 4, 3, 2, 8, 5, 4, 3, 9, 6, 5, 4, 7, 6, 5, 8,
        ]);
        assert!(is_reduced_word(&word, &p(&VR)));
        for w in all_permutations(5) {
            assert!(is_reduced_word(&reduced_word(&w), &w));
        }
    }

    #[test]
    fn simple_reflections_change_length_by_one() {
        for w in all_permutations(5) {
            for i in 1..5 {
                let diff = w.mul_simple(i).length() as i64 - w.length() as i64;
                assert_eq!(diff.abs(), 1);
                assert_eq!(diff == 1, w.is_ascent(i));
            }
        }
    }

    #[test]
    fn codes_round_trip() {
        for w in all_permutations(5) {
            assert_eq!(Permutation::from_code(&w.lehmer_code()), w);
        }
        assert_eq!(
            Permutation::from_code(&[6, 3, 3, 3, 3]),
            p(&[7, 4, 5, 6, 8, 1, 2, 3])
        );
        assert!(Permutation::from_code(&[6, 3, 3, 3, 3]).is_dominant());
    }

    #[test]
    fn chain_decomposition_small_cases() {
        assert!(increasing_chain_decomposition(&[]).unwrap().is_empty());
        let covers = d_bruhat_covers(&p(&[2, 1, 3]), 2, 3);
        let segs = increasing_chain_decomposition(&covers[..1]).unwrap();
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].cycles, vec![vec![3, 2]]);
    }

    #[test]
    fn cycles_start_at_maximum() {
        assert_eq!(p(&[2, 3, 1]).cycles(), vec![vec![3, 1, 2]]);
        assert!(Permutation::identity().cycles().is_empty());
    }

    #[test]
    fn enumerates_symmetric_group() {
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(0), vec![Permutation::identity()]);
    }
}
