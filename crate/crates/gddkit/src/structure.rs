//! Reducibility analysis: strongly connected components of the off-diagonal
//! support digraph, the Frobenius normal form, and blockwise (tilde) sums.

use crate::matrix::{Axis, ComplexMatrix, PositiveScaling, SumVector};
use crate::{Error, Result};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Permutation and block structure of the Frobenius normal form.
///
/// `permutation[s]` is the original index placed at position `s`, so the
/// permuted matrix `B[s][t] = A[perm[s]][perm[t]]` is block upper triangular.
/// `block_bounds` is `0 = n_0 < n_1 < ... < n_l = n`; diagonal block k covers
/// permuted positions `n_{k-1}..n_k` and is irreducible or a 1x1 block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusForm {
    permutation: Vec<usize>,
    block_bounds: Vec<usize>,
}

impl FrobeniusForm {
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn block_bounds(&self) -> &[usize] {
        &self.block_bounds
    }

    pub fn block_count(&self) -> usize {
        self.block_bounds.len() - 1
    }

    /// Original indices of diagonal block k, ascending.
    pub fn block(&self, k: usize) -> &[usize] {
        &self.permutation[self.block_bounds[k]..self.block_bounds[k + 1]]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[usize]> {
        (0..self.block_count()).map(move |k| self.block(k))
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.block_bounds.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

fn support_adjacency(a: &ComplexMatrix) -> Vec<Vec<usize>> {
    let n = a.order();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && a.abs(i, j) > 0.0 {
                adj[i].push(j);
            }
        }
    }
    adj
}

/// Iterative Tarjan SCC over an adjacency list; components are emitted in
/// reverse topological order.
fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0usize;
    // frames: (vertex, next edge position)
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        frames.push((start, 0));
        index[start] = counter;
        low[start] = counter;
        counter += 1;
        stack.push(start);
        on_stack[start] = true;

        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// Frobenius normal form of A over the support digraph
/// {i -> j : i != j, |a_{i,j}| > 0}.
///
/// Blocks are ordered topologically (sources first) so the permuted matrix is
/// block upper triangular; among simultaneously available components the one
/// containing the smallest original index comes first, and members within a
/// block are ascending, so the output is reproducible.
pub fn frobenius_normal_form(a: &ComplexMatrix) -> FrobeniusForm {
    let n = a.order();
    let adj = support_adjacency(a);
    let mut comps = tarjan_scc(&adj);
    for comp in comps.iter_mut() {
        comp.sort_unstable();
    }
    let ncomp = comps.len();
    let mut comp_of = vec![0usize; n];
    for (cid, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = cid;
        }
    }
    // Condensation in-degrees, then Kahn ordering with a min-heap keyed by
    // each component's smallest original index.
    let mut indeg = vec![0usize; ncomp];
    let mut dag = vec![Vec::new(); ncomp];
    for u in 0..n {
        for &v in &adj[u] {
            let (cu, cv) = (comp_of[u], comp_of[v]);
            if cu != cv {
                dag[cu].push(cv);
            }
        }
    }
    for edges in dag.iter_mut() {
        edges.sort_unstable();
        edges.dedup();
        for &v in edges.iter() {
            indeg[v] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = BinaryHeap::new();
    for cid in 0..ncomp {
        if indeg[cid] == 0 {
            heap.push(Reverse((comps[cid][0], cid)));
        }
    }
    let mut permutation = Vec::with_capacity(n);
    let mut block_bounds = vec![0usize];
    while let Some(Reverse((_, cid))) = heap.pop() {
        permutation.extend_from_slice(&comps[cid]);
        block_bounds.push(permutation.len());
        for &next in &dag[cid] {
            indeg[next] -= 1;
            if indeg[next] == 0 {
                heap.push(Reverse((comps[next][0], next)));
            }
        }
    }
    debug_assert_eq!(permutation.len(), n);
    FrobeniusForm {
        permutation,
        block_bounds,
    }
}

/// A matrix of order >= 2 is irreducible iff its support digraph is strongly
/// connected. A 1x1 matrix counts as irreducible iff its entry is nonzero.
pub fn is_irreducible(a: &ComplexMatrix) -> bool {
    if a.order() == 1 {
        return a.abs(0, 0) > 0.0;
    }
    frobenius_normal_form(a).block_count() == 1
}

/// Blockwise deleted sums: within each diagonal block of the Frobenius normal
/// form only, mapped back to original indices. With a scaling the sums are
/// those of X^{-1} A X (the support, hence the blocks, are unchanged).
pub fn tilde_sums(a: &ComplexMatrix, axis: Axis, s: Option<&PositiveScaling>) -> Result<SumVector> {
    let n = a.order();
    if let Some(sc) = s {
        if sc.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: sc.len(),
            });
        }
    }
    let form = frobenius_normal_form(a);
    let mut values = vec![0.0; n];
    for block in form.blocks() {
        for &i in block {
            let mut acc = 0.0;
            for &j in block {
                if j != i {
                    acc += match (axis, s) {
                        (Axis::Row, None) => a.abs(i, j),
                        (Axis::Column, None) => a.abs(j, i),
                        (Axis::Row, Some(sc)) => a.abs(i, j) * sc.values()[j],
                        (Axis::Column, Some(sc)) => a.abs(j, i) / sc.values()[j],
                    };
                }
            }
            values[i] = match (axis, s) {
                (_, None) => acc,
                (Axis::Row, Some(sc)) => acc / sc.values()[i],
                (Axis::Column, Some(sc)) => acc * sc.values()[i],
            };
        }
    }
    Ok(SumVector::new(values, axis, s.cloned(), true))
}
