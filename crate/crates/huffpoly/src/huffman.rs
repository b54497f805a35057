//! Generalized m-ary Huffman construction over exact integer weights.
//!
//! [`build_huffman`] repeatedly merges the m smallest elements of a sorted
//! working sequence into their sum until a single element remains. The merge
//! structure is returned both as a strictly m-ary tree and as the full trace
//! of intermediate sequences, together with predicates classifying the input
//! (absolutely ordered) and the resulting tree (elongated, left-sided).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HuffmanError {
    #[error("weight sequence is empty")]
    EmptyInput,
    #[error("arity must be at least 2, got {0}")]
    ArityTooSmall(usize),
    #[error("weight at position {index} is {value}; weights must be positive integers")]
    NonPositiveWeight { index: usize, value: BigInt },
    #[error("weights must be non-decreasing, but position {index} exceeds position {}", index + 1)]
    NotSorted { index: usize },
    #[error(
        "cannot build a strictly {arity}-ary tree from {len} weights: \
         ({len} - 1) must be divisible by ({arity} - 1)"
    )]
    SizeCongruence { len: usize, arity: usize },
    #[error("tree is not elongated; left-sidedness is defined only for elongated trees")]
    NotElongated,
}

/// A validated non-decreasing sequence of positive integer weights together
/// with the tree arity it is meant for.
///
/// The length n always satisfies `n = N·(m-1) + 1` where N is the number of
/// internal nodes the Huffman tree will have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSequence {
    weights: Vec<BigInt>,
    arity: usize,
}

impl WeightSequence {
    /// Validates an already-sorted sequence. Callers that own unsorted data
    /// should use [`WeightSequence::from_unsorted`] instead; silent sorting is
    /// deliberately not done here because leaf input indices are part of the
    /// codeword contract.
    pub fn new(weights: Vec<BigInt>, arity: usize) -> Result<Self, HuffmanError> {
        if arity < 2 {
            return Err(HuffmanError::ArityTooSmall(arity));
        }
        if weights.is_empty() {
            return Err(HuffmanError::EmptyInput);
        }
        for (index, w) in weights.iter().enumerate() {
            if *w <= BigInt::zero() {
                return Err(HuffmanError::NonPositiveWeight {
                    index,
                    value: w.clone(),
                });
            }
        }
        if let Some(index) = weights.windows(2).position(|pair| pair[0] > pair[1]) {
            return Err(HuffmanError::NotSorted { index });
        }
        if !(weights.len() - 1).is_multiple_of(arity - 1) {
            return Err(HuffmanError::SizeCongruence {
                len: weights.len(),
                arity,
            });
        }
        Ok(WeightSequence { weights, arity })
    }

    /// Sorts the weights (stably) and validates. The returned permutation maps
    /// each sorted position to the index the weight had in `weights`.
    pub fn from_unsorted(
        weights: Vec<BigInt>,
        arity: usize,
    ) -> Result<(Self, Vec<usize>), HuffmanError> {
        let mut order: Vec<usize> = (0..weights.len()).collect();
        order.sort_by(|&a, &b| weights[a].cmp(&weights[b]));
        let sorted: Vec<BigInt> = order.iter().map(|&i| weights[i].clone()).collect();
        Ok((Self::new(sorted, arity)?, order))
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// N, the number of merges the algorithm performs: `(n - 1) / (m - 1)`.
    pub fn internal_count(&self) -> usize {
        (self.weights.len() - 1) / (self.arity - 1)
    }

    /// Checks whether every intermediate sequence keeps a strict gap between
    /// its m-th and (m+1)-th smallest elements, which forces a unique merge
    /// choice at every step. Vacuously ordered when N ≤ 1.
    pub fn absolute_ordering(&self) -> AbsoluteOrdering {
        let m = self.arity;
        let merges = self.internal_count();
        if merges <= 1 {
            return AbsoluteOrdering::Ordered;
        }
        let mut work = self.weights.clone();
        for step in 0..=(merges - 2) {
            if work[m - 1] >= work[m] {
                return AbsoluteOrdering::ViolatedAt(step);
            }
            let sum: BigInt = work.drain(0..m).sum();
            let pos = work.partition_point(|w| *w <= sum);
            work.insert(pos, sum);
        }
        AbsoluteOrdering::Ordered
    }

    pub fn is_absolutely_ordered(&self) -> bool {
        matches!(self.absolute_ordering(), AbsoluteOrdering::Ordered)
    }
}

/// Outcome of the absolute-ordering check; the violation carries the first
/// step index at which the m-th and (m+1)-th smallest elements are equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsoluteOrdering {
    Ordered,
    ViolatedAt(usize),
}

impl AbsoluteOrdering {
    pub fn holds(&self) -> bool {
        matches!(self, AbsoluteOrdering::Ordered)
    }
}

/// Placement of a merged sum among existing equal weights. Either choice
/// yields a minimum-cost tree; the canonical choice is [`TieBreak::AfterEqual`],
/// which keeps merged nodes behind equal-weight leaves and produces the
/// left-sided shape for elongated results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    AfterEqual,
    BeforeEqual,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Leaf { weight: BigInt, input_index: usize },
    Internal { children: Vec<usize> },
}

/// A strictly m-ary tree produced by the Huffman construction: every internal
/// node has exactly m ordered children, and every leaf carries a weight plus
/// the index that weight had in the input sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaryTree {
    arity: usize,
    nodes: Vec<Node>,
    root: usize,
}

impl MaryTree {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf { .. }))
            .count()
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.len() - self.leaf_count()
    }

    /// Leaves as `(input index, weight)`, in input order.
    pub fn leaves(&self) -> Vec<(usize, &BigInt)> {
        let mut out: Vec<(usize, &BigInt)> = self
            .nodes
            .iter()
            .filter_map(|n| match n {
                Node::Leaf {
                    weight,
                    input_index,
                } => Some((*input_index, weight)),
                Node::Internal { .. } => None,
            })
            .collect();
        out.sort_by_key(|(idx, _)| *idx);
        out
    }

    /// Depth of every leaf, keyed by input index. The root sits at depth 0.
    pub fn leaf_depths(&self) -> BTreeMap<usize, usize> {
        let mut depths = BTreeMap::new();
        let mut stack = vec![(self.root, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            match &self.nodes[id] {
                Node::Leaf { input_index, .. } => {
                    depths.insert(*input_index, depth);
                }
                Node::Internal { children } => {
                    stack.extend(children.iter().map(|&c| (c, depth + 1)));
                }
            }
        }
        depths
    }

    /// Weighted external path length: the sum over leaves of depth × weight.
    pub fn cost(&self) -> BigInt {
        let mut total = BigInt::zero();
        let mut stack = vec![(self.root, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            match &self.nodes[id] {
                Node::Leaf { weight, .. } => total += weight * BigInt::from(depth),
                Node::Internal { children } => {
                    stack.extend(children.iter().map(|&c| (c, depth + 1)));
                }
            }
        }
        total
    }

    /// Maximum leaf depth.
    pub fn height(&self) -> usize {
        self.leaf_depths().values().copied().max().unwrap_or(0)
    }

    /// Prefix-free codewords: the child-position digits along each
    /// root-to-leaf path, keyed by leaf input index.
    pub fn codewords(&self) -> BTreeMap<usize, Codeword> {
        // parent link and arriving digit per node
        let mut link: Vec<Option<(usize, u32)>> = vec![None; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            if let Node::Internal { children } = node {
                for (pos, &child) in children.iter().enumerate() {
                    link[child] = Some((id, pos as u32));
                }
            }
        }
        let mut map = BTreeMap::new();
        for (id, node) in self.nodes.iter().enumerate() {
            if let Node::Leaf { input_index, .. } = node {
                let mut digits = Vec::new();
                let mut cur = id;
                while let Some((parent, digit)) = link[cur] {
                    digits.push(digit);
                    cur = parent;
                }
                digits.reverse();
                map.insert(
                    *input_index,
                    Codeword {
                        digits,
                        arity: self.arity,
                    },
                );
            }
        }
        map
    }

    /// True iff at least m-1 children of every internal node are leaves,
    /// i.e. the tree is a single chain of merges.
    pub fn is_elongated(&self) -> bool {
        self.nodes.iter().all(|node| match node {
            Node::Leaf { .. } => true,
            Node::Internal { children } => {
                children
                    .iter()
                    .filter(|&&c| matches!(self.nodes[c], Node::Internal { .. }))
                    .count()
                    <= 1
            }
        })
    }

    /// True iff any non-leaf child occupies the first sibling position.
    /// Defined only for elongated trees; anything else is reported as misuse.
    pub fn is_left_sided(&self) -> Result<bool, HuffmanError> {
        if !self.is_elongated() {
            return Err(HuffmanError::NotElongated);
        }
        Ok(self.nodes.iter().all(|node| match node {
            Node::Leaf { .. } => true,
            Node::Internal { children } => children[1..]
                .iter()
                .all(|&c| matches!(self.nodes[c], Node::Leaf { .. })),
        }))
    }

    #[cfg(test)]
    fn from_parts(arity: usize, nodes: Vec<Node>, root: usize) -> Self {
        MaryTree { arity, nodes, root }
    }
}

/// One codeword: child-position digits over the alphabet `{0, ..., m-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    digits: Vec<u32>,
    arity: usize,
}

impl Codeword {
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        other.digits.starts_with(&self.digits)
    }
}

impl fmt::Display for Codeword {
    /// Single-character digits are concatenated; for arity above 10 the
    /// digits are printed in decimal separated by dots.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity <= 10 {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let text: Vec<String> = self.digits.iter().map(u32::to_string).collect();
            write!(f, "{}", text.join("."))
        }
    }
}

/// One algorithm step: the merged-group sum and the re-sorted sequence the
/// step produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeStep {
    merged_sum: BigInt,
    sequence: Vec<BigInt>,
}

impl MergeStep {
    pub fn merged_sum(&self) -> &BigInt {
        &self.merged_sum
    }

    pub fn sequence(&self) -> &[BigInt] {
        &self.sequence
    }
}

/// The full record of intermediate sequences: the input plus one
/// [`MergeStep`] per merge. Step k's sequence has `n - (m-1)·(k+1)` elements
/// and the final one is the singleton total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeTrace {
    arity: usize,
    initial: Vec<BigInt>,
    steps: Vec<MergeStep>,
}

impl MergeTrace {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The input sequence, before any merge.
    pub fn initial(&self) -> &[BigInt] {
        &self.initial
    }

    pub fn steps(&self) -> &[MergeStep] {
        &self.steps
    }

    /// All sequences in order, starting with the input.
    pub fn sequences(&self) -> impl Iterator<Item = &[BigInt]> {
        std::iter::once(self.initial.as_slice()).chain(self.steps.iter().map(MergeStep::sequence))
    }

    /// Sum of the merged-group sums across all steps. Each weight is counted
    /// once per merge its subtree takes part in, i.e. once per level above
    /// its leaf, so this equals the weighted external path length of the
    /// companion tree and serves as an independent cost route.
    pub fn total_cost(&self) -> BigInt {
        self.steps.iter().map(|s| &s.merged_sum).sum()
    }
}

/// Runs the m-ary Huffman algorithm with the canonical tie rule.
///
/// Returns the minimum-cost strictly m-ary tree over the given leaf weights
/// together with the merge trace. The output is fully deterministic: the
/// merged sum is inserted after any equal weights, and within each merged
/// group a previously merged node comes first among the children.
pub fn build_huffman(input: &WeightSequence) -> (MaryTree, MergeTrace) {
    build_huffman_with(input, TieBreak::AfterEqual)
}

/// Same construction with an explicit tie rule. Costs are identical across
/// tie rules; only the tree shape may differ when equal weights occur.
pub fn build_huffman_with(input: &WeightSequence, tie_break: TieBreak) -> (MaryTree, MergeTrace) {
    let m = input.arity();
    let mut nodes: Vec<Node> = input
        .weights()
        .iter()
        .enumerate()
        .map(|(input_index, w)| Node::Leaf {
            weight: w.clone(),
            input_index,
        })
        .collect();
    let mut work: Vec<(BigInt, usize)> = input
        .weights()
        .iter()
        .enumerate()
        .map(|(id, w)| (w.clone(), id))
        .collect();
    let mut steps = Vec::with_capacity(input.internal_count());

    while work.len() > 1 {
        let merged: Vec<(BigInt, usize)> = work.drain(0..m).collect();
        let sum: BigInt = merged.iter().map(|(w, _)| w).sum();

        // merged (non-leaf) participants first, then leaves; both groups stay
        // in non-decreasing weight order
        let mut children: Vec<usize> = Vec::with_capacity(m);
        let mut leaf_children: Vec<usize> = Vec::new();
        for &(_, id) in &merged {
            match nodes[id] {
                Node::Internal { .. } => children.push(id),
                Node::Leaf { .. } => leaf_children.push(id),
            }
        }
        children.extend(leaf_children);

        let id = nodes.len();
        nodes.push(Node::Internal { children });
        let pos = match tie_break {
            TieBreak::AfterEqual => work.partition_point(|(w, _)| w <= &sum),
            TieBreak::BeforeEqual => work.partition_point(|(w, _)| w < &sum),
        };
        work.insert(pos, (sum.clone(), id));
        steps.push(MergeStep {
            merged_sum: sum,
            sequence: work.iter().map(|(w, _)| w.clone()).collect(),
        });
    }

    let root = work[0].1;
    let tree = MaryTree {
        arity: m,
        nodes,
        root,
    };
    let trace = MergeTrace {
        arity: m,
        initial: input.weights().to_vec(),
        steps,
    };
    (tree, trace)
}
