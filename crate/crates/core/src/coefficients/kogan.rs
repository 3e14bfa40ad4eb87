use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{d_bruhat_le, increasing_chain_decomposition, BruhatCover, IncreasingSegment, Permutation};
use crate::shapes::{Partition, Tableau};

/// A saturated chain in the `d`-Bruhat order together with its word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoganChain {
    pub start: Permutation,
    pub covers: Vec<BruhatCover>,
    pub word: Vec<u32>,
    pub target: Permutation,
}

impl KoganChain {
    /// The tableau whose row reading word is the chain word.
    pub fn tableau(&self, shape: &Partition) -> Result<Tableau> {
        Tableau::from_row_reading_word(shape, &self.word)
    }

    pub fn segments(&self) -> Result<Vec<IncreasingSegment>> {
        increasing_chain_decomposition(&self.covers)
    }
}

#[derive(Clone, Debug, Default)]
pub struct KoganSearch {
    pub count: u64,
    pub chains: Vec<KoganChain>,
}

/// `C^u_{v,w(λ,d)}` in cohomology, counted as saturated `d`-Bruhat chains
/// from `v` to `u` whose word is the row reading word (rows bottom to top,
/// each left to right) of a semistandard tableau of shape `λ`.
pub fn schubert_constant_kogan(v: &Permutation, lambda: &Partition, d: usize, u: &Permutation) -> Result<u64> {
    Ok(kogan_chains(v, lambda, d, u, 0)?.count)
}

pub fn kogan_chains(v: &Permutation, lambda: &Partition, d: usize, u: &Permutation, limit: usize) -> Result<KoganSearch> {
    check_precondition(v, d)?;
    if u.length() != v.length() + lambda.size() as usize || !d_bruhat_le(v, u, d) {
        return Ok(KoganSearch::default());
    }
    let n = v.size().max(u.size()).max(d + 1);
    let search = Search::new(v, lambda, d, n, Some(u.window_padded(n)));
    let sink: ChainSink = search.run(|| ChainSink {
        limit,
        ..ChainSink::default()
    });
    let chains = sink
        .paths
        .into_iter()
        .map(|steps| build_chain(v, u, n, &steps))
        .collect();
    Ok(KoganSearch {
        count: sink.count,
        chains,
    })
}

/// Chain counts for every reachable endpoint `u`.
pub fn kogan_counts(v: &Permutation, lambda: &Partition, d: usize) -> Result<BTreeMap<Permutation, u64>> {
    check_precondition(v, d)?;
    let n = v.size().max(d) + lambda.size() as usize + 1;
    let search = Search::new(v, lambda, d, n, None);
    let sink: EndpointSink = search.run(EndpointSink::default);
    Ok(sink
        .counts
        .into_iter()
        .map(|(w, c)| (Permutation::from_window_unchecked(w), c))
        .collect())
}

fn check_precondition(v: &Permutation, d: usize) -> Result<()> {
    match v.last_descent() {
        Some(k) if k > d => Err(Error::DescentCondition(format!("{v} has a descent at {k} > d = {d}"))),
        _ => Ok(()),
    }
}

fn build_chain(v: &Permutation, u: &Permutation, n: usize, steps: &[Step]) -> KoganChain {
    let mut w = v.window_padded(n);
    let mut covers = Vec::with_capacity(steps.len());
    for s in steps {
        w.swap(s.j - 1, s.k - 1);
        covers.push(BruhatCover {
            target: Permutation::from_window_unchecked(w.clone()),
            transposition: (s.j, s.k),
            letter: s.letter,
        });
    }
    KoganChain {
        start: v.clone(),
        word: steps.iter().map(|s| s.letter).collect(),
        covers,
        target: u.clone(),
    }
}

#[derive(Clone, Copy, Debug)]
struct Step {
    j: usize,
    k: usize,
    letter: u32,
}

trait Sink: Send {
    fn leaf(&mut self, window: &[u32], path: &[Step]);
    fn merge(&mut self, other: Self);
}

#[derive(Default)]
struct ChainSink {
    count: u64,
    limit: usize,
    paths: Vec<Vec<Step>>,
}

impl Sink for ChainSink {
    fn leaf(&mut self, _: &[u32], path: &[Step]) {
        self.count += 1;
        if self.paths.len() < self.limit {
            self.paths.push(path.to_vec());
        }
    }

    fn merge(&mut self, other: Self) {
        self.count += other.count;
        let room = self.limit.saturating_sub(self.paths.len());
        self.paths.extend(other.paths.into_iter().take(room));
    }
}

#[derive(Default)]
struct EndpointSink {
    counts: BTreeMap<Vec<u32>, u64>,
}

impl Sink for EndpointSink {
    fn leaf(&mut self, window: &[u32], _: &[Step]) {
        *self.counts.entry(window.to_vec()).or_insert(0) += 1;
    }

    fn merge(&mut self, other: Self) {
        for (w, c) in other.counts {
            *self.counts.entry(w).or_insert(0) += c;
        }
    }
}

struct Search {
    start: Vec<u32>,
    d: usize,
    n: usize,
    /// Cells `(row, col)` in reading order: rows bottom to top, each left to right.
    cells: Vec<(usize, usize)>,
    row_lengths: Vec<usize>,
    target: Option<Vec<u32>>,
}

struct State {
    window: Vec<u32>,
    fill: Vec<Vec<u32>>,
    path: Vec<Step>,
}

impl Search {
    fn new(v: &Permutation, lambda: &Partition, d: usize, n: usize, target: Option<Vec<u32>>) -> Self {
        let row_lengths: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
        let cells = (0..row_lengths.len())
            .rev()
            .flat_map(|r| (0..row_lengths[r]).map(move |c| (r, c)))
            .collect();
        Search {
            start: v.window_padded(n),
            d,
            n,
            cells,
            row_lengths,
            target,
        }
    }

    fn initial_state(&self) -> State {
        State {
            window: self.start.clone(),
            fill: self.row_lengths.iter().map(|&l| vec![0; l]).collect(),
            path: Vec::with_capacity(self.cells.len()),
        }
    }

    /// Fans out over the first covers; results are merged in cover order.
    fn run<S: Sink>(&self, make: impl Fn() -> S + Sync) -> S {
        let root = self.initial_state();
        let mut out = make();
        if self.cells.is_empty() {
            self.finish(&root, &mut out);
            return out;
        }
        let first = self.candidates(&root, 0);
        let parts: Vec<S> = first
            .par_iter()
            .map(|&step| {
                let mut state = self.initial_state();
                let mut sink = make();
                self.push(&mut state, 0, step);
                self.dfs(&mut state, 1, &mut sink);
                sink
            })
            .collect();
        for p in parts {
            out.merge(p);
        }
        out
    }

    fn finish<S: Sink>(&self, state: &State, sink: &mut S) {
        if self.target.as_ref().is_none_or(|t| *t == state.window) {
            sink.leaf(&state.window, &state.path);
        }
    }

    fn push(&self, state: &mut State, depth: usize, step: Step) {
        let (r, c) = self.cells[depth];
        state.window.swap(step.j - 1, step.k - 1);
        state.fill[r][c] = step.letter;
        state.path.push(step);
    }

    fn pop(&self, state: &mut State, depth: usize) {
        let (r, c) = self.cells[depth];
        let step = state.path.pop().expect("non-empty path");
        state.window.swap(step.j - 1, step.k - 1);
        state.fill[r][c] = 0;
    }

    fn dfs<S: Sink>(&self, state: &mut State, depth: usize, sink: &mut S) {
        if depth == self.cells.len() {
            self.finish(state, sink);
            return;
        }
        for step in self.candidates(state, depth) {
            self.push(state, depth, step);
            self.dfs(state, depth + 1, sink);
            self.pop(state, depth);
        }
    }

    /// Covers whose letter fits the next cell and which stay below the target.
    fn candidates(&self, state: &State, depth: usize) -> Vec<Step> {
        let (r, c) = self.cells[depth];
        let lo = if c > 0 { state.fill[r][c - 1] } else { 1 };
        let hi = match state.fill.get(r + 1) {
            Some(below) if c < below.len() => below[c] - 1,
            _ => u32::MAX,
        };
        let w = &state.window;
        let mut out = Vec::new();
        for j in 1..=self.d {
            let a = w[j - 1];
            if a < lo || a > hi {
                continue;
            }
            if let Some(t) = &self.target {
                if a >= t[j - 1] {
                    continue;
                }
            }
            // smallest value above `a` seen strictly between j and k
            let mut gap = u32::MAX;
            for k in j + 1..=self.n {
                let b = w[k - 1];
                if b <= a {
                    continue;
                }
                if b < gap {
                    if k > self.d && self.admissible(w, j, k) {
                        out.push(Step { j, k, letter: a });
                    }
                    gap = b;
                }
            }
        }
        out
    }

    fn admissible(&self, w: &[u32], j: usize, k: usize) -> bool {
        let Some(t) = &self.target else {
            return true;
        };
        let (a, b) = (w[j - 1], w[k - 1]);
        if b > t[j - 1] || a < t[k - 1] {
            return false;
        }
        let mut next = w.to_vec();
        next.swap(j - 1, k - 1);
        d_bruhat_window_le(&next, t, self.d)
    }
}

/// The `d`-Bruhat comparison on raw windows of equal length, without the
/// length test (lengths are tracked by the search).
fn d_bruhat_window_le(a: &[u32], b: &[u32], d: usize) -> bool {
    let n = a.len();
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
    true
}
