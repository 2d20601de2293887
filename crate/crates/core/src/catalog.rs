//! Reference functions on `B^4` with strongly connected iteration graphs,
//! plus the two `B^2` examples (`¬` and `[1, 3, 0, 2]`).
//!
//! Rates are the reported removal percentages; they are informational and
//! do not equal `removed / (n 2^n)` for every entry.

use crate::BooleanFunction;

pub struct CatalogEntry {
    pub name: &'static str,
    pub images: [u32; 16],
    pub reference_rate: f64,
    /// Reported sufficient iteration count.
    pub reference_b: usize,
    /// Reported deviation from uniform, relative to the uniform mass.
    pub reference_deviation: f64,
}

pub const ENTRIES: [CatalogEntry; 9] = [
    CatalogEntry {
        name: "a",
        images: [15, 14, 13, 12, 11, 10, 9, 8, 7, 6, 7, 4, 3, 2, 1, 0],
        reference_rate: 0.021,
        reference_b: 167,
        reference_deviation: 0.081,
    },
    CatalogEntry {
        name: "b",
        images: [14, 15, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0],
        reference_rate: 0.041,
        reference_b: 105,
        reference_deviation: 0.01,
    },
    CatalogEntry {
        name: "c",
        images: [15, 14, 13, 12, 11, 10, 9, 8, 7, 7, 5, 12, 3, 0, 1, 0],
        reference_rate: 0.0625,
        reference_b: 58,
        reference_deviation: 0.18,
    },
    CatalogEntry {
        name: "d",
        images: [14, 15, 13, 12, 9, 10, 11, 0, 7, 2, 5, 4, 3, 6, 1, 8],
        reference_rate: 0.167,
        reference_b: 22,
        reference_deviation: 0.01,
    },
    CatalogEntry {
        name: "e",
        images: [11, 2, 13, 12, 11, 14, 9, 8, 7, 14, 5, 4, 1, 2, 1, 9],
        reference_rate: 0.167,
        reference_b: 19,
        reference_deviation: 0.24,
    },
    CatalogEntry {
        name: "f",
        images: [13, 10, 15, 12, 3, 14, 9, 8, 6, 7, 4, 5, 11, 2, 1, 0],
        reference_rate: 0.209,
        reference_b: 14,
        reference_deviation: 0.01,
    },
    CatalogEntry {
        name: "g",
        images: [13, 7, 13, 10, 11, 10, 1, 10, 7, 14, 4, 4, 2, 2, 1, 0],
        reference_rate: 0.209,
        reference_b: 6,
        reference_deviation: 0.20,
    },
    CatalogEntry {
        name: "h",
        images: [7, 12, 14, 12, 11, 4, 1, 13, 4, 4, 15, 6, 8, 3, 15, 2],
        reference_rate: 0.50,
        reference_b: 7,
        reference_deviation: 0.453,
    },
    CatalogEntry {
        name: "i",
        images: [12, 0, 6, 4, 14, 15, 7, 15, 11, 1, 14, 2, 7, 4, 7, 9],
        reference_rate: 0.75,
        reference_b: 14,
        reference_deviation: 0.532,
    },
];

impl CatalogEntry {
    pub fn function(&self) -> BooleanFunction {
        BooleanFunction::new(4, self.images.to_vec())
            .expect("catalog tables are valid")
            .with_name(self.name)
    }
}

/// Looks up a catalog function by name (`a`..`i`, `neg4`, `neg2`, `fig1`).
pub fn by_name(name: &str) -> Option<BooleanFunction> {
    match name {
        "neg4" => Some(BooleanFunction::negation(4).unwrap().with_name("neg4")),
        "neg2" => Some(BooleanFunction::negation(2).unwrap().with_name("neg2")),
        "fig1" => Some(fig1()),
        _ => ENTRIES
            .iter()
            .find(|e| e.name == name)
            .map(CatalogEntry::function),
    }
}

/// All nine `B^4` functions in table order.
pub fn reference_functions() -> Vec<BooleanFunction> {
    ENTRIES.iter().map(CatalogEntry::function).collect()
}

/// The `B^2` function `[1, 3, 0, 2]`.
pub fn fig1() -> BooleanFunction {
    BooleanFunction::new(2, vec![1, 3, 0, 2])
        .unwrap()
        .with_name("fig1")
}
