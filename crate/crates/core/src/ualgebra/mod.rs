pub mod binary;
pub mod crossratio;
pub mod degenerate;
pub mod groebner;
pub mod initial;
pub mod order;
pub mod poly;
pub mod signed;
pub mod signs;

pub use binary::{binary_ideal, ideal_a, ideal_c, polygon_spec, CompatibilitySpec};
pub use crossratio::{cross_ratio, cross_ratio_point, sign_pattern_a, sign_pattern_c, u_vector};
pub use degenerate::{leading_points, LeadingPoint, Model, SearchOptions};
pub use groebner::{groebner, groebner_with, GbBudget, GbStats, GroebnerBasis};
pub use initial::{certify_trop, certify_trop_with, initial_ideal, initial_ideal_with, is_monomial_free, InitialIdeal};
pub use order::TermOrder;
pub use poly::{Ideal, Poly};
pub use signed::{certify_signed, positive_element, verify_positive_zero, SignedCertificate, SignedOptions, Verdict};
pub use signs::{sign_twist, SignPattern};
