//! Minimizing absolutely ordered weight sequences for elongated m-ary
//! Huffman trees, their closed-form costs, and the value tables built from
//! them.
//!
//! For arity m and N internal nodes the minimizing sequence consists of one
//! copy of `G_0(m-1)` followed by m-1 copies of each of `G_1(m-1)` through
//! `G_N(m-1)`. Its Huffman tree is a left-sided chain of height N and its
//! cost has the closed form `(G_{N+4}(m-1) - 2)/(m-1) - (N+3)`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::huffman::{build_huffman, WeightSequence};
use crate::poly::g_value;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SpecError {
    #[error("internal node count must be at least 1, got {0}")]
    InternalCountTooSmall(usize),
    #[error("arity must be at least 2, got {0}")]
    ArityTooSmall(usize),
}

/// Shape of one minimizing-sequence instance: N internal nodes and arity m,
/// which fix the leaf count n = N·(m-1) + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimizingSpec {
    internal_nodes: usize,
    arity: usize,
}

impl MinimizingSpec {
    pub fn new(internal_nodes: usize, arity: usize) -> Result<Self, SpecError> {
        if internal_nodes < 1 {
            return Err(SpecError::InternalCountTooSmall(internal_nodes));
        }
        if arity < 2 {
            return Err(SpecError::ArityTooSmall(arity));
        }
        Ok(MinimizingSpec {
            internal_nodes,
            arity,
        })
    }

    pub fn internal_nodes(&self) -> usize {
        self.internal_nodes
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn leaf_count(&self) -> usize {
        self.internal_nodes * (self.arity - 1) + 1
    }
}

/// The cost-minimizing absolutely ordered sequence for the given spec: one
/// `G_0(m-1)` then m-1 copies of each `G_1(m-1) ... G_N(m-1)`. The recurrence
/// makes this non-decreasing, so it is a valid [`WeightSequence`] by
/// construction.
pub fn minimizing_sequence(spec: MinimizingSpec) -> WeightSequence {
    let m = spec.arity();
    let x = (m - 1) as u64;
    let mut weights = Vec::with_capacity(spec.leaf_count());
    weights.push(g_value(0, x));
    for i in 1..=spec.internal_nodes() {
        let value = g_value(i, x);
        for _ in 0..(m - 1) {
            weights.push(value.clone());
        }
    }
    WeightSequence::new(weights, m).expect("minimizing sequence is valid by construction")
}

/// The values `[G_0(m), ..., G_upper(m)]`, one representative per merge level
/// of the elongated (m+1)-ary tree. Requires `m ≥ 1`.
pub fn representative_sequence(m: u64, upper: usize) -> Vec<BigInt> {
    assert!(m >= 1, "representative sequences are defined for m >= 1");
    (0..=upper).map(|i| g_value(i, m)).collect()
}

/// `Σ_{i=0..=upper} G_i(m)` via the closed form `(G_{upper+2}(m) - 2)/m + 1`.
/// The division is exact; a nonzero remainder would be an implementation bug
/// and is asserted against. Requires `m ≥ 1`.
pub fn g_value_sum(upper: usize, m: u64) -> BigInt {
    assert!(m >= 1, "partial sums are defined for m >= 1");
    let divisor = BigInt::from(m);
    let numerator = g_value(upper + 2, m) - BigInt::from(2);
    let remainder = &numerator % &divisor;
    assert!(
        remainder.is_zero(),
        "G_{}({m}) - 2 is not divisible by {m}",
        upper + 2
    );
    numerator / divisor + 1
}

/// Closed-form cost of the elongated m-ary Huffman tree over
/// [`minimizing_sequence`]: `(G_{N+4}(m-1) - 2)/(m-1) - (N+3)`. The division
/// is exact and asserted.
pub fn closed_form_cost(spec: MinimizingSpec) -> BigInt {
    let x = (spec.arity() - 1) as u64;
    let merges = spec.internal_nodes();
    let divisor = BigInt::from(x);
    let numerator = g_value(merges + 4, x) - BigInt::from(2);
    let remainder = &numerator % &divisor;
    assert!(
        remainder.is_zero(),
        "G_{}({x}) - 2 is not divisible by {x}",
        merges + 4
    );
    numerator / divisor - BigInt::from(merges + 3)
}

/// Binary collapse of [`closed_form_cost`]: `Fib_{N+5} - (N+5)` under the
/// crate's Fibonacci convention (`Fib_k = g_value(k-1, 1)`). Equals
/// `closed_form_cost` at arity 2 for every N ≥ 1.
pub fn binary_closed_form_cost(internal_nodes: usize) -> BigInt {
    assert!(internal_nodes >= 1);
    g_value(internal_nodes + 4, 1) - BigInt::from(internal_nodes + 5)
}

/// Pairing of the closed-form cost with the cost measured on the actually
/// constructed tree for one spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostReport {
    pub spec: MinimizingSpec,
    pub sequence: WeightSequence,
    pub formula_cost: BigInt,
    pub constructed_cost: BigInt,
}

impl CostReport {
    pub fn agreement(&self) -> bool {
        self.formula_cost == self.constructed_cost
    }
}

/// Builds the minimizing sequence, runs the Huffman construction on it, and
/// reports formula cost next to constructed cost. The structural guarantees
/// (absolutely ordered input, elongated left-sided tree) are asserted; a
/// failure there is a bug, not a reportable disagreement. Cost disagreement
/// itself is never masked — it is what the report exists to expose.
pub fn cost_report(spec: MinimizingSpec) -> CostReport {
    let sequence = minimizing_sequence(spec);
    let (tree, _) = build_huffman(&sequence);
    assert!(
        sequence.is_absolutely_ordered(),
        "minimizing sequence must be absolutely ordered"
    );
    assert!(tree.is_elongated(), "minimizing tree must be elongated");
    assert_eq!(
        tree.is_left_sided(),
        Ok(true),
        "minimizing tree must be left-sided"
    );
    CostReport {
        spec,
        formula_cost: closed_form_cost(spec),
        constructed_cost: tree.cost(),
        sequence,
    }
}

/// A rectangular grid of exact values keyed by integer row and column labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    row_name: &'static str,
    col_name: &'static str,
    row_keys: Vec<u64>,
    col_keys: Vec<u64>,
    cells: Vec<Vec<BigInt>>,
}

impl Table {
    pub fn row_keys(&self) -> &[u64] {
        &self.row_keys
    }

    pub fn col_keys(&self) -> &[u64] {
        &self.col_keys
    }

    pub fn cell(&self, row_key: u64, col_key: u64) -> Option<&BigInt> {
        let r = self.row_keys.iter().position(|&k| k == row_key)?;
        let c = self.col_keys.iter().position(|&k| k == col_key)?;
        Some(&self.cells[r][c])
    }

    /// Bare decimal cells, comma-separated, one row per line, no labels or
    /// quoting. This is the golden-file format.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.cells {
            let line: Vec<String> = row.iter().map(BigInt::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Markdown grid with the row/column labels included, every column padded
    /// to its widest entry.
    pub fn to_markdown(&self) -> String {
        let mut header: Vec<String> = vec![format!("{} \\ {}", self.row_name, self.col_name)];
        header.extend(self.col_keys.iter().map(u64::to_string));
        let mut body: Vec<Vec<String>> = Vec::new();
        for (key, row) in self.row_keys.iter().zip(&self.cells) {
            let mut line = vec![key.to_string()];
            line.extend(row.iter().map(BigInt::to_string));
            body.push(line);
        }
        let mut widths: Vec<usize> = header.iter().map(String::len).collect();
        for line in &body {
            for (c, cell) in line.iter().enumerate() {
                widths[c] = widths[c].max(cell.len());
            }
        }
        let render = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(c, s)| format!("{s:>width$}", width = widths[c]))
                .collect();
            format!("| {} |\n", padded.join(" | "))
        };
        let mut out = render(&header);
        let rule: Vec<String> = widths.iter().map(|&w| format!("{:->w$}:", "-")).collect();
        out.push_str(&format!("|{}|\n", rule.join("|")));
        for line in &body {
            out.push_str(&render(line));
        }
        out
    }
}

/// Grid of `G_i(m)` for m = 1..=max_m (rows) and i = 0..=max_i (columns).
/// `(15, 13)` is the frozen `golden/table1.csv`.
pub fn representative_table(max_m: u64, max_i: usize) -> Table {
    assert!(max_m >= 1);
    let row_keys: Vec<u64> = (1..=max_m).collect();
    let col_keys: Vec<u64> = (0..=max_i as u64).collect();
    let cells = row_keys
        .iter()
        .map(|&m| (0..=max_i).map(|i| g_value(i, m)).collect())
        .collect();
    Table {
        row_name: "m",
        col_name: "i",
        row_keys,
        col_keys,
        cells,
    }
}

/// Grid of [`closed_form_cost`] for arity = 2..=max_arity (rows) and
/// N = 1..=max_internal (columns). `(21, 10)` is the frozen
/// `golden/table2.csv`.
pub fn cost_table(max_arity: usize, max_internal: usize) -> Table {
    assert!(max_arity >= 2);
    assert!(max_internal >= 1);
    let row_keys: Vec<u64> = (2..=max_arity as u64).collect();
    let col_keys: Vec<u64> = (1..=max_internal as u64).collect();
    let cells = (2..=max_arity)
        .map(|arity| {
            (1..=max_internal)
                .map(|n| {
                    closed_form_cost(
                        MinimizingSpec::new(n, arity).expect("table ranges are validated"),
                    )
                })
                .collect()
        })
        .collect();
    Table {
        row_name: "arity",
        col_name: "N",
        row_keys,
        col_keys,
        cells,
    }
}
