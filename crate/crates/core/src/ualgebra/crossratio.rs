use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::signs::SignPattern;
use crate::error::{invalid, Result};
use crate::fans::index::{IndexSetD, Kind};
use crate::linalg::{q, Q};
use crate::symtrees::ordering::{DihedralOrdering, Symmetry};

/// `(a, b; c, d) = (a - d)(b - c) / ((a - c)(b - d))`.
pub fn cross_ratio(a: &Q, b: &Q, c: &Q, d: &Q) -> Q {
    (a - d) * (b - c) / ((a - c) * (b - d))
}

/// The u-vector of a configuration: `u_{i,j} = (x_i, x_{i⁺}; x_j, x_{j⁺})`,
/// with `x` given per label.
pub fn u_vector(index: &IndexSetD, x: &HashMap<i32, Q>) -> Result<Vec<Q>> {
    let labels = index.standard_ordering();
    for (k, a) in labels.iter().enumerate() {
        let xa = x.get(a).ok_or_else(|| crate::Error::InvalidArgument(format!("no point for label {a}")))?;
        for b in &labels[k + 1..] {
            if x.get(b) == Some(xa) {
                return invalid(format!("points of labels {a} and {b} coincide"));
            }
        }
    }
    Ok(index
        .pairs
        .iter()
        .map(|&(i, j)| {
            let (ip, jp) = (index.successor(i), index.successor(j));
            cross_ratio(&x[&i], &x[&ip], &x[&j], &x[&jp])
        })
        .collect())
}

/// Type A u-vector of `n` distinct rationals `x_1, …, x_n`.
pub fn cross_ratio_point(xs: &[Q]) -> Result<Vec<Q>> {
    let index = IndexSetD::new(Kind::A, xs.len())?;
    let x: HashMap<i32, Q> = xs.iter().enumerate().map(|(k, v)| (k as i32 + 1, v.clone())).collect();
    u_vector(&index, &x)
}

/// Points on the projective line in the cyclic order of `alpha`, invariant
/// under `x ↦ -x` for an axial ordering and under `x ↦ -1/x` for a central one.
pub fn configuration(alpha: &DihedralOrdering) -> HashMap<i32, Q> {
    let m = alpha.len() as i64;
    match alpha.symmetry() {
        Symmetry::None => alpha.labels().iter().enumerate().map(|(k, &l)| (l, q(k as i64))).collect(),
        Symmetry::Axial => {
            let s = alpha.axial_representative().expect("axial ordering");
            s.iter().enumerate().map(|(k, &l)| (l, q(2 * k as i64 - (m - 1)))).collect()
        }
        Symmetry::Central => {
            // first half on the arc from 1 through ∞ to -1, second half its image
            let n = m / 2;
            let s = alpha.labels();
            let mut x = HashMap::new();
            for k in 0..n as usize {
                let z = Q::new((4 * k as i64 + 3 - 2 * n).into(), (4 * n).into());
                x.insert(s[k], -z.recip());
                x.insert(s[k + n as usize], z);
            }
            x
        }
    }
}

fn signs_of(u: &[Q]) -> Result<SignPattern> {
    if u.iter().any(|v| v.is_zero()) {
        return invalid("configuration has a vanishing coordinate");
    }
    SignPattern::new(u.iter().map(|v| if v.is_positive() { 1 } else { -1 }).collect())
}

/// `τ_α`: signs of the u-coordinates of points placed in the order `α`.
pub fn sign_pattern_a(alpha: &DihedralOrdering) -> Result<SignPattern> {
    if alpha.space().signed {
        return invalid("type A sign patterns need an ordering of [n]");
    }
    let index = IndexSetD::new(Kind::A, alpha.len())?;
    signs_of(&u_vector(&index, &configuration(alpha))?)
}

/// Signs of the type C u-coordinates of a symmetric configuration in the
/// order `α` (axial or central).
pub fn sign_pattern_c(alpha: &DihedralOrdering) -> Result<SignPattern> {
    if alpha.symmetry() == Symmetry::None {
        return invalid(format!("{alpha} is neither axially nor centrally symmetric"));
    }
    let index = IndexSetD::new(Kind::C, alpha.space().n)?;
    signs_of(&u_vector(&index, &configuration(alpha))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symtrees::ordering::enumerate_orderings;
    use crate::ualgebra::binary::{ideal_a, ideal_c};

    #[test]
    fn square() {
        let u = cross_ratio_point(&[q(0), q(1), q(2), q(3)]).unwrap();
        assert_eq!(u, vec![Q::new(3.into(), 4.into()), Q::new(1.into(), 4.into())]);
        assert!(cross_ratio_point(&[q(0), q(1), q(1), q(3)]).is_err());
    }

    #[test]
    fn symmetric_configurations_satisfy_type_c() {
        let i = ideal_c(3).unwrap();
        let index = IndexSetD::new(Kind::C, 3).unwrap();
        for sym in [Symmetry::Axial, Symmetry::Central] {
            for alpha in enumerate_orderings(3, sym).unwrap() {
                let u = u_vector(&index, &configuration(&alpha)).unwrap();
                for g in &i.gens {
                    assert!(g.eval(&u).is_zero(), "{alpha}");
                }
            }
        }
    }

    #[test]
    fn type_a_patterns_are_distinct() {
        let i = ideal_a(5).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for alpha in enumerate_orderings(5, Symmetry::None).unwrap() {
            let u = u_vector(&IndexSetD::new(Kind::A, 5).unwrap(), &configuration(&alpha)).unwrap();
            assert!(i.gens.iter().all(|g| g.eval(&u).is_zero()));
            seen.insert(sign_pattern_a(&alpha).unwrap());
        }
        assert_eq!(seen.len(), 12);
        let id = DihedralOrdering::new(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(sign_pattern_a(&id).unwrap(), SignPattern::positive(2));
    }
}
