use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::tree::LabelSpace;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    None,
    Axial,
    Central,
}

/// A labelling of the edges of a polygon, up to rotation and reflection.
///
/// `labels` is the canonical representative: the lexicographically least
/// sequence among all rotations and reversals of the cycle (integers compared
/// in their usual order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralOrdering {
    labels: Vec<i32>,
    symmetry: Symmetry,
}

impl fmt::Display for DihedralOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl DihedralOrdering {
    /// Accepts any representative of the class. A sequence containing a
    /// negative label must use the whole signed set `N`; otherwise it must be a
    /// permutation of `1..=len`.
    pub fn new(labels: Vec<i32>) -> Result<Self> {
        let space = detect_space(&labels)?;
        if space.size() < 3 {
            return invalid("a polygon needs at least 3 edges");
        }
        let canonical = canonical_form(&labels);
        let symmetry = if !space.signed {
            Symmetry::None
        } else if is_central(&canonical) {
            Symmetry::Central
        } else if axial_representative(&canonical).is_some() {
            Symmetry::Axial
        } else {
            Symmetry::None
        };
        Ok(DihedralOrdering { labels: canonical, symmetry })
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn space(&self) -> LabelSpace {
        if self.labels.iter().any(|&l| l < 0) {
            LabelSpace::signed(self.labels.len() / 2)
        } else {
            LabelSpace::unsigned(self.labels.len())
        }
    }

    pub fn position(&self, label: i32) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// For an axial ordering, the representative with `σ_i = -σ_{2n+1-i}`
    /// that is least among such representatives.
    pub fn axial_representative(&self) -> Option<Vec<i32>> {
        axial_representative(&self.labels)
    }

    /// Edge permutation `p ↦ q` with `labels[q] = -labels[p]`.
    pub fn negation_map(&self) -> Option<Vec<usize>> {
        if !self.space().signed {
            return None;
        }
        Some(self.labels.iter().map(|&l| self.position(-l).expect("signed ordering contains every negation")).collect())
    }
}

fn detect_space(labels: &[i32]) -> Result<LabelSpace> {
    let signed = labels.iter().any(|&l| l < 0);
    let space = if signed {
        if !labels.len().is_multiple_of(2) {
            return invalid("a signed ordering must have an even number of labels");
        }
        LabelSpace::signed(labels.len() / 2)
    } else {
        LabelSpace::unsigned(labels.len())
    };
    let set: BTreeSet<i32> = labels.iter().copied().collect();
    let want: BTreeSet<i32> = space.labels().into_iter().collect();
    if set != want || set.len() != labels.len() {
        return invalid(format!("labels {labels:?} are not a permutation of the label set {space}"));
    }
    Ok(space)
}

fn dihedral_images(seq: &[i32]) -> impl Iterator<Item = Vec<i32>> + '_ {
    let m = seq.len();
    (0..m).flat_map(move |r| {
        let fwd: Vec<i32> = (0..m).map(|k| seq[(r + k) % m]).collect();
        let bwd: Vec<i32> = (0..m).map(|k| seq[(r + m - k) % m]).collect();
        [fwd, bwd]
    })
}

/// Least rotation or reversal of a label cycle.
pub fn canonical_form(seq: &[i32]) -> Vec<i32> {
    dihedral_images(seq).min().unwrap_or_default()
}

fn is_central(seq: &[i32]) -> bool {
    let m = seq.len();
    m.is_multiple_of(2) && (0..m / 2).all(|i| seq[i + m / 2] == -seq[i])
}

fn axial_representative(seq: &[i32]) -> Option<Vec<i32>> {
    let m = seq.len();
    if !m.is_multiple_of(2) {
        return None;
    }
    dihedral_images(seq).filter(|s| (0..m).all(|i| s[i] == -s[m - 1 - i])).min()
}

/// All permutations of `items`, in lexicographic order of positions.
pub(crate) fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// Signed permutations of `1..=n`.
fn signed_permutations(n: usize) -> Vec<Vec<i32>> {
    let base: Vec<i32> = (1..=n as i32).collect();
    let mut out = Vec::new();
    for p in permutations(&base) {
        for signs in 0u32..(1 << n) {
            out.push(p.iter().enumerate().map(|(k, &x)| if signs >> k & 1 == 1 { -x } else { x }).collect());
        }
    }
    out
}

/// Every dihedral ordering with the requested symmetry, once each, sorted.
///
/// `Symmetry::None` enumerates orderings of `[n]`; the symmetric families use
/// the signed set with `2n` labels.
pub fn enumerate_orderings(n: usize, symmetry: Symmetry) -> Result<Vec<DihedralOrdering>> {
    if n < 3 {
        return invalid(format!("n must be at least 3, got {n}"));
    }
    if n > 12 {
        return invalid(format!("n = {n} is beyond the supported enumeration range"));
    }
    let mut set = BTreeSet::new();
    match symmetry {
        Symmetry::None => {
            let rest: Vec<i32> = (2..=n as i32).collect();
            for p in permutations(&rest) {
                if p[0] < p[p.len() - 1] {
                    let mut seq = vec![1];
                    seq.extend(p);
                    set.insert(seq);
                }
            }
        }
        Symmetry::Axial | Symmetry::Central => {
            if n > 6 {
                return invalid(format!("symmetric enumeration is limited to n <= 6, got {n}"));
            }
            for half in signed_permutations(n) {
                let mut seq = half.clone();
                if symmetry == Symmetry::Axial {
                    seq.extend(half.iter().rev().map(|x| -x));
                } else {
                    seq.extend(half.iter().map(|x| -x));
                }
                set.insert(canonical_form(&seq));
            }
        }
    }
    let out: Vec<DihedralOrdering> = set.into_iter().map(|labels| DihedralOrdering::new(labels).expect("generated orderings are valid")).collect();
    debug_assert!(out.iter().all(|o| o.symmetry() == symmetry));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_is_class_invariant() {
        let a = DihedralOrdering::new(vec![3, 4, 5, 1, 2]).unwrap();
        let b = DihedralOrdering::new(vec![2, 1, 5, 4, 3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.labels(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn classification() {
        let ax = DihedralOrdering::new(vec![1, 2, 3, -3, -2, -1]).unwrap();
        assert_eq!(ax.symmetry(), Symmetry::Axial);
        let rep = ax.axial_representative().unwrap();
        assert!((0..6).all(|i| rep[i] == -rep[5 - i]));
        let cs = DihedralOrdering::new(vec![1, 2, 3, -1, -2, -3]).unwrap();
        assert_eq!(cs.symmetry(), Symmetry::Central);
        let none = DihedralOrdering::new(vec![1, 2, -1, 3, -2, -3]).unwrap();
        assert_eq!(none.symmetry(), Symmetry::None);
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(DihedralOrdering::new(vec![1, 2, 2]).is_err());
        assert!(DihedralOrdering::new(vec![1, 2, -1]).is_err());
        assert!(DihedralOrdering::new(vec![1, 2]).is_err());
        assert!(enumerate_orderings(2, Symmetry::None).is_err());
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_orderings(3, Symmetry::None).unwrap().len(), 1);
        assert_eq!(enumerate_orderings(5, Symmetry::None).unwrap().len(), 12);
        assert_eq!(enumerate_orderings(3, Symmetry::Axial).unwrap().len(), 12);
        assert_eq!(enumerate_orderings(3, Symmetry::Central).unwrap().len(), 4);
    }
}
