use super::decomposition::check_block_descents;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::BlockStructure;
use crate::shapes::{Partition, PartitionSequence, Tableau};

/// Outcome of the tableau search: the count and up to `limit` witnesses.
#[derive(Clone, Debug)]
pub struct TableauSearch {
    pub count: u64,
    pub witnesses: Vec<Vec<Tableau>>,
}

/// Concatenated bottom-up, left-to-right column reading words.
pub fn concatenated_column_word(tableaux: &[Tableau]) -> Vec<u32> {
    tableaux.iter().flat_map(|t| t.column_reading_word()).collect()
}

/// Cohomology `b_μ(v)`, counted as tuples of semistandard tableaux `T_i` of
/// shape `μ_i'` whose entries exceed `r_0 + ⋯ + r_{i-2}` and whose
/// concatenated column words form a reduced word for `v`.
pub fn decomposition_coefficients_tableau(v: &Permutation, blocks: &BlockStructure, mu: &PartitionSequence) -> Result<u64> {
    Ok(tableau_witnesses(v, blocks, mu, 0)?.count)
}

pub fn tableau_witnesses(
    v: &Permutation,
    blocks: &BlockStructure,
    mu: &PartitionSequence,
    limit: usize,
) -> Result<TableauSearch> {
    check_block_descents(v, blocks)?;
    if mu.len() > blocks.len() {
        return Err(Error::Input(format!(
            "{} partitions for {} blocks",
            mu.len(),
            blocks.len()
        )));
    }
    let mut shapes: Vec<Partition> = mu.0.iter().map(Partition::conjugate).collect();
    shapes.resize(blocks.len(), Partition::empty());
    let mut search = Search::new(v, blocks, &shapes, limit);
    if mu.total_size() as usize == v.length() {
        search.run(0);
    }
    Ok(TableauSearch {
        count: search.count,
        witnesses: search.witnesses,
    })
}

struct Cell {
    tableau: usize,
    row: usize,
    col: usize,
    /// Entries must be strictly larger than this.
    floor: u32,
}

struct Search {
    v_inv: Vec<u32>,
    cells: Vec<Cell>,
    fill: Vec<Vec<Vec<u32>>>,
    window: Vec<u32>,
    max_entry: u32,
    limit: usize,
    count: u64,
    witnesses: Vec<Vec<Tableau>>,
}

impl Search {
    fn new(v: &Permutation, blocks: &BlockStructure, shapes: &[Partition], limit: usize) -> Self {
        let n = v.size().max(2);
        let mut cells = Vec::new();
        for (t, shape) in shapes.iter().enumerate() {
            let floor = blocks.offset(t) as u32;
            let conj = shape.conjugate();
            for col in 0..shape.part(1) as usize {
                for row in (0..conj.part(col + 1) as usize).rev() {
                    cells.push(Cell {
                        tableau: t,
                        row,
                        col,
                        floor,
                    });
                }
            }
        }
        let fill = shapes
            .iter()
            .map(|s| s.parts().iter().map(|&len| vec![0; len as usize]).collect())
            .collect();
        Search {
            v_inv: v.inverse().window_padded(n),
            cells,
            fill,
            window: (1..=n as u32).collect(),
            max_entry: n as u32 - 1,
            limit,
            count: 0,
            witnesses: Vec::new(),
        }
    }

    fn run(&mut self, idx: usize) {
        if idx == self.cells.len() {
            self.count += 1;
            if self.witnesses.len() < self.limit {
                let tableaux = self
                    .fill
                    .iter()
                    .map(|rows| Tableau::from_rows(rows.clone()).expect("filled tableau"))
                    .collect();
                self.witnesses.push(tableaux);
            }
            return;
        }
        let Cell { tableau, row, col, floor } = self.cells[idx];
        let rows = &self.fill[tableau];
        let mut lo = floor + 1 + row as u32;
        if col > 0 {
            lo = lo.max(rows[row][col - 1]);
        }
        let mut hi = self.max_entry;
        if row + 1 < rows.len() && col < rows[row + 1].len() {
            hi = hi.min(rows[row + 1][col] - 1);
        }
        for a in lo..=hi {
            let i = a as usize - 1;
            let (x, y) = (self.window[i], self.window[i + 1]);
            // s_a must lengthen the prefix and keep it below v in weak order
            if x > y || self.v_inv[y as usize - 1] > self.v_inv[x as usize - 1] {
                continue;
            }
            self.window.swap(i, i + 1);
            self.fill[tableau][row][col] = a;
            self.run(idx + 1);
            self.window.swap(i, i + 1);
        }
        self.fill[tableau][row][col] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_permutations, grassmannian_permutation};
    use crate::poly::Theory;
    use crate::coefficients::decomposition_coefficients_full;

    #[test]
    fn single_box() {
        for k in 1..=4 {
            let v = grassmannian_permutation(&Partition::new(vec![1]), k, k + 1).unwrap();
            let mu = PartitionSequence::parse("[[1]]").unwrap();
            let blocks = BlockStructure::new(vec![k]);
            assert_eq!(decomposition_coefficients_tableau(&v, &blocks, &mu).unwrap(), 1);
        }
    }

    #[test]
    fn degree_mismatch_is_zero() {
        let v = Permutation::from_window(vec![1, 3, 2]).unwrap();
        let mu = PartitionSequence::parse("[[2]]").unwrap();
        assert_eq!(decomposition_coefficients_tableau(&v, &BlockStructure::new(vec![2]), &mu).unwrap(), 0);
    }

    #[test]
    fn matches_polynomial_route_on_s5() {
        for sizes in [vec![2, 3], vec![2, 2, 1], vec![1, 2, 2], vec![3, 2], vec![1, 1, 3]] {
            let blocks = BlockStructure::new(sizes);
            for v in all_permutations(5) {
                if check_block_descents(&v, &blocks).is_err() {
                    continue;
                }
                let full = decomposition_coefficients_full(&v, &blocks, Theory::Cohomology, None).unwrap();
                let mut seen = 0;
                for mu in all_sequences(&blocks, v.length() as u32) {
                    let count = decomposition_coefficients_tableau(&v, &blocks, &mu).unwrap();
                    assert_eq!(dashu_int::IBig::from(count), full.table.get(&mu), "v={v} mu={mu:?}");
                    seen += (count > 0) as usize;
                }
                assert_eq!(seen, full.table.len(), "v={v}");
            }
        }
    }

    /// Sequences with `μ_i` having at most `r_{i-1}` rows and total `size`.
    fn all_sequences(blocks: &BlockStructure, size: u32) -> Vec<PartitionSequence> {
        let mut out = vec![Vec::new()];
        for &k in blocks.sizes() {
            let shapes = Partition::all_in_rectangle(k, size);
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Partition>| {
                    shapes.iter().map(move |s| {
                        let mut p = prefix.clone();
                        p.push(s.clone());
                        p
                    })
                })
                .filter(|p| p.iter().map(Partition::size).sum::<u32>() <= size)
                .collect();
        }
        out.into_iter()
            .filter(|p| p.iter().map(Partition::size).sum::<u32>() == size)
            .map(PartitionSequence::new)
            .collect()
    }
}
