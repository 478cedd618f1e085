//! Bundled Gram matrices of classical even unimodular lattices.
//!
//! The files live in `assets/` at the repository root; see the README there
//! for the constructions and the checks behind them. Loading re-runs the
//! symmetry and positive-definiteness validation.

use crate::lattice::GramMatrix;

pub const E8_GRAM: &str = include_str!("../../../assets/e8.gram");
pub const D16PLUS_GRAM: &str = include_str!("../../../assets/d16plus.gram");
pub const LEECH_GRAM: &str = include_str!("../../../assets/leech.gram");

/// The E8 root lattice, Gram matrix of a simple-root basis.
pub fn e8() -> GramMatrix {
    GramMatrix::parse(E8_GRAM).expect("bundled E8 Gram matrix is valid")
}

/// The 16-dimensional even unimodular lattice D16+ (not E8 x E8): the index-2
/// extension of D16 by a half-integer glue vector.
pub fn d16plus() -> GramMatrix {
    GramMatrix::parse(D16PLUS_GRAM).expect("bundled D16+ Gram matrix is valid")
}

/// The Leech lattice, in a reduced basis of minimal vectors.
pub fn leech() -> GramMatrix {
    GramMatrix::parse(LEECH_GRAM).expect("bundled Leech Gram matrix is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn assets_load_and_have_unit_determinant() {
        for (g, rank) in [(e8(), 8), (d16plus(), 16), (leech(), 24)] {
            assert_eq!(g.rank(), rank);
            assert_eq!(g.det(), BigInt::from(1));
        }
    }
}
