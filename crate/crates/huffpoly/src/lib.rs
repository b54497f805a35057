//! Generalized m-ary Huffman trees over exact integer weights, the
//! Fibonacci-like polynomials their minimizing inputs generate, and
//! brute-force oracles that cross-check both.

pub mod huffman;
pub mod minimizing;
pub mod oracle;
pub mod poly;

/// Frozen regression fixtures. `table1.csv` holds `representative_table(15, 13)`,
/// `table2.csv` holds `cost_table(21, 10)`, and `polynomials.txt` holds the
/// canonical listing of the first 21 Fibonacci-like polynomials. The
/// `golden` test target can regenerate them; every value is additionally
/// pinned by independent spot checks in the unit tests.
pub mod golden {
    pub const TABLE1_CSV: &str = include_str!("../golden/table1.csv");
    pub const TABLE2_CSV: &str = include_str!("../golden/table2.csv");
    pub const POLYNOMIALS_TXT: &str = include_str!("../golden/polynomials.txt");
}
