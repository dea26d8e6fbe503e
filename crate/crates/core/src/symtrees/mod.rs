//! Dihedral orderings, polygon subdivisions, phylogenetic trees and the
//! complexes they assemble into.

pub mod complex;
pub mod iso;
pub mod ordering;
pub mod polygon;
pub mod tree;

pub use complex::{build_complex, build_complex_with, build_sub, Complex, Family};
pub use iso::{csp_to_asp, delta_as_iso, flip_central, AsIso, CspWitness};
pub use ordering::{enumerate_orderings, DihedralOrdering, Symmetry};
pub use polygon::{coarsest_subdivisions, enumerate_subdivisions, is_compatible, subdivision_for_tree, tree_from_subdivision, Diagonal, Subdivision};
pub use tree::{symmetric_contract, symmetric_contract_edge, symmetry_involution, LabelSpace, PhyloTree, SymmetryInvolution};
