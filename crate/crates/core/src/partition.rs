//! Partitions of `{0..n-1}` into disjoint nonempty blocks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A partition of `{0..n-1}`.
///
/// Stored canonically: every block is sorted ascending and blocks are ordered
/// by their smallest element, so two partitions are equal as block families
/// iff they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn singletons(n: usize) -> Self {
        Self {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
            block_of: (0..n).collect(),
        }
    }

    /// Validates and canonicalizes a block family over `{0..n-1}`.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut canon = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &x in &block {
                if x >= n {
                    return Err(Error::VertexOutOfRange { index: x, n });
                }
                if seen[x] {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} appears in two blocks"
                    )));
                }
                seen[x] = true;
            }
            canon.push(block);
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "element {missing} is not covered"
            )));
        }
        Ok(Self::from_canonical_parts(n, canon))
    }

    /// Builds the partition whose blocks are the classes of `label`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut by_label = std::collections::BTreeMap::<usize, Vec<usize>>::new();
        for (i, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(i);
        }
        Self::from_canonical_parts(n, by_label.into_values().collect())
    }

    fn from_canonical_parts(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut block_of = vec![0; n];
        for (bi, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = bi;
            }
        }
        Self {
            n,
            blocks,
            block_of,
        }
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    /// True iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.n == coarser.n
            && self.blocks.iter().all(|b| {
                let target = coarser.block_of(b[0]);
                b.iter().all(|&x| coarser.block_of(x) == target)
            })
    }

    /// Block family as a set of sets, for comparisons that ignore order.
    pub fn block_set(&self) -> BTreeSet<Vec<usize>> {
        self.blocks.iter().cloned().collect()
    }

    /// Image of the partition under a relabeling `x -> perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut m: Vec<usize> = b.iter().map(|&x| perm[x]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        Self::from_canonical_parts(self.n, blocks)
    }
}
