//! Partitions, the quiver shapes built from them, and semistandard tableaux.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::QuiverDerivedData;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Panics if `parts` is not weakly decreasing; use [`Partition::try_new`]
    /// for untrusted input.
    pub fn new(parts: Vec<u32>) -> Self {
        Self::try_new(parts).expect("parts must be weakly decreasing")
    }

    pub fn try_new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Input(format!("{parts:?} is not a partition")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The `rows × cols` rectangle `(cols)^rows`.
    pub fn rectangle(rows: usize, cols: u32) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition {
            parts: vec![cols; rows],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `λ_i` for 1-based `i`; zero past the last row.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn fits_in(&self, rows: usize, cols: u32) -> bool {
        self.num_rows() <= rows && self.part(1) <= cols
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.num_rows()).all(|i| self.part(i) >= other.part(i))
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1) as usize;
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize >= c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// All partitions inside the `rows × cols` rectangle, ordered by size and
    /// then lexicographically.
    pub fn all_in_rectangle(rows: usize, cols: u32) -> Vec<Partition> {
        fn rec(rows: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition::new(prefix.clone()));
            if prefix.len() == rows {
                return;
            }
            for p in 1..=max {
                prefix.push(p);
                rec(rows, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::try_new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

/// `(μ_1, …, μ_n)`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionSequence(pub Vec<Partition>);

impl PartitionSequence {
    pub fn new(parts: Vec<Partition>) -> Self {
        PartitionSequence(parts)
    }

    pub fn empty_of_len(n: usize) -> Self {
        PartitionSequence(vec![Partition::empty(); n])
    }

    pub fn total_size(&self) -> u32 {
        self.0.iter().map(Partition::size).sum()
    }

    pub fn flattened(&self) -> Vec<u32> {
        self.0.iter().flat_map(|p| p.parts().iter().copied()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `[[2,1],[],[1]]`.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: Vec<Vec<u32>> =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("bad partition sequence: {e}")))?;
        Ok(PartitionSequence(
            raw.into_iter().map(Partition::try_new).collect::<Result<_>>()?,
        ))
    }
}

impl fmt::Debug for PartitionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A filling of a partition shape given as its rows, top row first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = Tableau { rows };
        Partition::try_new(t.rows.iter().map(|r| r.len() as u32).collect())?;
        if !t.is_semistandard() {
            return Err(Error::Input(format!("{:?} is not semistandard", t.rows)));
        }
        Ok(t)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|p| p[0] <= p[1]));
        let cols_ok = self.rows.windows(2).all(|pair| {
            pair[1]
                .iter()
                .zip(&pair[0])
                .all(|(below, above)| below > above)
        });
        rows_ok && cols_ok
    }

    /// Columns left to right, each read bottom to top.
    pub fn column_reading_word(&self) -> Vec<u32> {
        let width = self.rows.first().map_or(0, Vec::len);
        let mut word = Vec::new();
        for c in 0..width {
            for row in self.rows.iter().rev() {
                if let Some(&v) = row.get(c) {
                    word.push(v);
                }
            }
        }
        word
    }

    /// Rows bottom to top, each read left to right.
    pub fn row_reading_word(&self) -> Vec<u32> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// Rebuilds a tableau of the given shape from a row reading word.
    pub fn from_row_reading_word(shape: &Partition, word: &[u32]) -> Result<Self> {
        if word.len() != shape.size() as usize {
            return Err(Error::Input("word length differs from shape size".into()));
        }
        let mut rows = Vec::with_capacity(shape.num_rows());
        let mut rest = word;
        for &len in shape.parts().iter().rev() {
            let (row, tail) = rest.split_at(len as usize);
            rows.push(row.to_vec());
            rest = tail;
        }
        rows.reverse();
        Tableau::from_rows(rows)
    }
}

/// Result has exactly `rows` rows, row `j` being `width + μ_j`.
pub fn attach_rectangle(mu: &Partition, rows: usize, width: u32) -> Result<Partition> {
    if mu.num_rows() > rows {
        return Err(Error::TooManyRows {
            partition: mu.parts().to_vec(),
            max_rows: rows,
        });
    }
    Ok(Partition::new(
        (1..=rows).map(|j| width + mu.part(j)).collect(),
    ))
}

/// Concatenation of the `d'_i × d_i` rectangles, `i = 1..n-1`.
pub fn rho(derived: &QuiverDerivedData) -> Partition {
    let n = derived.n;
    if n < 2 {
        return Partition::empty();
    }
    let rows = derived.d_prime[1] as usize;
    Partition::new(
        (1..=rows)
            .map(|j| {
                (1..n)
                    .filter(|&i| j <= derived.d_prime[i] as usize)
                    .map(|i| derived.d[i])
                    .sum()
            })
            .collect(),
    )
}

/// The sequence `μ̃` obtained by attaching each `μ_i` to the right of `R_i`.
pub fn mu_tilde(derived: &QuiverDerivedData, mu: &PartitionSequence) -> Result<PartitionSequence> {
    check_in_rectangles(derived, mu)?;
    let n = derived.n;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let rows = derived.r[i - 1] as usize;
        let width = if i < n { derived.d[i + 1] } else { 0 };
        out.push(attach_rectangle(&mu.0[i - 1], rows, width)?);
    }
    Ok(PartitionSequence(out))
}

/// `ρ(μ)`: each `μ̃_i` placed under the `i`-th rectangle of `ρ`, then `μ_n`
/// attached to the right of the top rows.
pub fn rho_mu(derived: &QuiverDerivedData, mu: &PartitionSequence) -> Result<Partition> {
    let tilde = mu_tilde(derived, mu)?;
    let n = derived.n;
    let total_rows = derived.d_prime[0] as usize;
    let mut parts = vec![0u32; total_rows];
    for (idx, row) in parts.iter_mut().enumerate() {
        let j = idx + 1;
        for i in 1..n {
            let below = derived.d_prime[i] as usize;
            let above = derived.d_prime[i - 1] as usize;
            if j <= below {
                *row += derived.d[i];
            } else if j <= above {
                *row += tilde.0[i - 1].part(j - below);
            }
        }
        *row += mu.0[n - 1].part(j);
    }
    Partition::try_new(parts)
}

pub(crate) fn check_in_rectangles(derived: &QuiverDerivedData, mu: &PartitionSequence) -> Result<()> {
    let n = derived.n;
    if mu.len() != n {
        return Err(Error::Input(format!(
            "expected {n} partitions, got {}",
            mu.len()
        )));
    }
    for i in 1..=n {
        let (rows, cols) = (derived.r[i - 1] as usize, derived.r[i]);
        let part = &mu.0[i - 1];
        if !part.fits_in(rows, cols) {
            return Err(Error::OutsideRectangle {
                partition: part.parts().to_vec(),
                rows,
                cols: cols as usize,
            });
        }
    }
    Ok(())
}

/// Semistandard tableaux of `shape` with entries in `(min_exclusive, max]`,
/// in lexicographic order of their row-major entries.
pub fn enumerate_ssyt(shape: &Partition, min_exclusive: u32, max: u32) -> SsytIter {
    SsytIter::new(shape.clone(), min_exclusive, max)
}

pub struct SsytIter {
    shape: Partition,
    cells: Vec<(usize, usize)>,
    col_len: Vec<usize>,
    lo: u32,
    hi: u32,
    values: Vec<u32>,
    started: bool,
    done: bool,
}

impl SsytIter {
    fn new(shape: Partition, lo: u32, hi: u32) -> Self {
        let cells = shape
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
            .collect();
        let col_len = shape.conjugate().parts().iter().map(|&c| c as usize).collect();
        SsytIter {
            shape,
            cells,
            col_len,
            lo,
            hi,
            values: Vec::new(),
            started: false,
            done: false,
        }
    }

    fn index_of(&self, r: usize, c: usize) -> usize {
        self.shape.parts()[..r].iter().sum::<u32>() as usize + c
    }

    fn min_at(&self, t: usize) -> u32 {
        let (r, c) = self.cells[t];
        let mut m = self.lo + 1;
        if c > 0 {
            m = m.max(self.values[t - 1]);
        }
        if r > 0 {
            m = m.max(self.values[self.index_of(r - 1, c)] + 1);
        }
        m
    }

    fn max_at(&self, t: usize) -> u32 {
        let (r, c) = self.cells[t];
        let below = (self.col_len[c] - 1 - r) as u32;
        self.hi.saturating_sub(below)
    }

    /// Fills cells `from..` minimally; false if impossible.
    fn fill_from(&mut self, from: usize) -> bool {
        self.values.truncate(from);
        for t in from..self.cells.len() {
            let v = self.min_at(t);
            if v > self.max_at(t) {
                return false;
            }
            self.values.push(v);
        }
        true
    }

    fn current(&self) -> Tableau {
        let mut rows = Vec::with_capacity(self.shape.num_rows());
        let mut it = self.values.iter().copied();
        for &len in self.shape.parts() {
            rows.push(it.by_ref().take(len as usize).collect());
        }
        Tableau { rows }
    }
}

impl Iterator for SsytIter {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.fill_from(0) {
                return Some(self.current());
            }
            self.done = true;
            return None;
        }
        let mut t = self.cells.len();
        while t > 0 {
            t -= 1;
            let next = self.values[t] + 1;
            if next <= self.max_at(t) {
                self.values.truncate(t);
                self.values.push(next);
                if self.fill_from(t + 1) {
                    return Some(self.current());
                }
                // refill failed: keep the bumped prefix and retry this cell
                self.values.truncate(t + 1);
                t += 1;
                continue;
            }
        }
        self.done = true;
        None
    }
}
