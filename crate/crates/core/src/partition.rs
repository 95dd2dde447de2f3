//! Partitions of a finite carrier `0..n`.

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from a class label per element. Blocks are
    /// renumbered by their smallest element.
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Self {
        let mut ids: std::collections::HashMap<T, usize> = std::collections::HashMap::new();
        let mut block_of = Vec::with_capacity(labels.len());
        for l in labels {
            let n = ids.len();
            let id = *ids.entry(l.clone()).or_insert(n);
            block_of.push(id);
        }
        Self::normalize(block_of)
    }

    fn normalize(raw: Vec<usize>) -> Self {
        let mut map = std::collections::HashMap::new();
        let mut block_of = Vec::with_capacity(raw.len());
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, r) in raw.into_iter().enumerate() {
            let b = *map.entry(r).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(i);
            block_of.push(b);
        }
        Partition { block_of, blocks }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut raw = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n || raw[x] != usize::MAX {
                    return Err(Error::InvalidMachine(format!(
                        "element {x} out of range or in two blocks"
                    )));
                }
                raw[x] = b;
            }
        }
        if raw.contains(&usize::MAX) {
            return Err(Error::InvalidMachine("blocks do not cover the carrier".into()));
        }
        Ok(Self::normalize(raw))
    }

    pub fn discrete(n: usize) -> Self {
        Self::normalize((0..n).collect())
    }

    pub fn full(n: usize) -> Self {
        Self::normalize(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// True when every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::CarrierMismatch(self.len(), other.len()));
        }
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&x| other.block_of[x] == other.block_of[b[0]])))
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        if self.len() != other.len() {
            return Err(Error::CarrierMismatch(self.len(), other.len()));
        }
        let mut uf = UnionFind::<usize>::new(self.len());
        for p in [self, other] {
            for b in &p.blocks {
                for &x in &b[1..] {
                    uf.union(b[0], x);
                }
            }
        }
        Ok(Self::normalize((0..self.len()).map(|x| uf.find(x)).collect()))
    }

    /// Coarsest common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        if self.len() != other.len() {
            return Err(Error::CarrierMismatch(self.len(), other.len()));
        }
        let labels: Vec<(usize, usize)> = (0..self.len())
            .map(|x| (self.block_of[x], other.block_of[x]))
            .collect();
        Ok(Self::from_labels(&labels))
    }
}

/// Smallest partition coarser than `start` that also identifies every pair in
/// `pairs` and is stable under the action `act[x][a]` (a congruence).
pub fn congruence_closure(
    start: &Partition,
    pairs: &[(usize, usize)],
    act: &[Vec<usize>],
) -> Partition {
    let n = start.len();
    let mut uf = UnionFind::<usize>::new(n);
    let mut work: Vec<(usize, usize)> = pairs.to_vec();
    for b in start.blocks() {
        for &x in &b[1..] {
            work.push((b[0], x));
        }
    }
    while let Some((x, y)) = work.pop() {
        if uf.union(x, y) {
            let letters = act.first().map_or(0, |r| r.len());
            for a in 0..letters {
                work.push((act[x][a], act[y][a]));
            }
        }
    }
    Partition::normalize((0..n).map(|x| uf.find(x)).collect())
}

/// Moore-style refinement. Elements start grouped by `initial` label; a
/// block splits while two members disagree on some letter's edge label or
/// target block. `step(x, a)` returns the labelled successor, if any.
pub fn moore_refine<L, E, F>(initial: &[L], letters: usize, step: F) -> Partition
where
    L: Eq + std::hash::Hash + Clone,
    E: Eq + std::hash::Hash + Clone,
    F: Fn(usize, usize) -> Option<(E, usize)>,
{
    let n = initial.len();
    let edges: Vec<Vec<Option<(E, usize)>>> = (0..n)
        .map(|x| (0..letters).map(|a| step(x, a)).collect())
        .collect();
    let mut part = Partition::from_labels(initial);
    loop {
        let sigs: Vec<(usize, Vec<Option<(E, usize)>>)> = (0..n)
            .map(|x| {
                let row = edges[x]
                    .iter()
                    .map(|e| e.as_ref().map(|(l, t)| (l.clone(), part.block_of(*t))))
                    .collect();
                (part.block_of(x), row)
            })
            .collect();
        let next = Partition::from_labels(&sigs);
        if next.num_blocks() == part.num_blocks() {
            return next;
        }
        part = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refinement_basics() {
        let s = Partition::discrete(4);
        let f = Partition::full(4);
        assert!(s.refines(&f).unwrap());
        assert!(!f.refines(&s).unwrap());
        assert!(s.refines(&Partition::full(3)).is_err());
    }

    #[test]
    fn join_and_meet() {
        let p = Partition::from_blocks(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        let q = Partition::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]).unwrap();
        assert_eq!(p.join(&q).unwrap().num_blocks(), 2);
        assert_eq!(p.meet(&q).unwrap(), Partition::discrete(4));
    }

    #[test]
    fn closure_follows_action() {
        // counter mod 4 on one letter
        let act = vec![vec![1], vec![2], vec![3], vec![0]];
        let c = congruence_closure(&Partition::discrete(4), &[(0, 2)], &act);
        assert_eq!(c.num_blocks(), 2);
        assert!(c.same(1, 3));
    }
}
