use std::collections::BTreeSet;

use super::complex::build_sub;
use super::ordering::{enumerate_orderings, DihedralOrdering, Symmetry};
use super::polygon::{diagonal_for_block, enumerate_subdivisions, subdivision_for_tree, tree_from_subdivision, Diagonal, Subdivision};
use super::tree::{LabelSpace, PhyloTree};
use crate::error::{invalid, Error, Result};

/// Face correspondence between Δ_as(α) and Δ(n+2), both given by trees.
#[derive(Debug, Clone)]
pub struct AsIso {
    pub alpha: DihedralOrdering,
    /// `(ASPT compatible with α, tree on [n+2] compatible with (1,…,n+2))`.
    pub pairs: Vec<(PhyloTree, PhyloTree)>,
}

impl AsIso {
    pub fn image(&self, t: &PhyloTree) -> Option<&PhyloTree> {
        self.pairs.iter().find(|(a, _)| a == t).map(|(_, b)| b)
    }

    /// Checks that the pairing is a bijection onto the faces of Δ(n+2) and
    /// that refinement holds on one side exactly when it holds on the other.
    pub fn verify(&self) -> Result<()> {
        let n = self.alpha.len() / 2;
        let target = build_sub(&DihedralOrdering::new((1..=(n as i32 + 2)).collect())?)?;
        let images: BTreeSet<&PhyloTree> = self.pairs.iter().map(|(_, b)| b).collect();
        if images.len() != self.pairs.len() {
            return Err(Error::Consistency("face map is not injective".into()));
        }
        let faces: BTreeSet<&PhyloTree> = target.face_trees().iter().collect();
        if images != faces {
            return Err(Error::Consistency("face map does not hit every face of the associahedron complex".into()));
        }
        for (a1, b1) in &self.pairs {
            for (a2, b2) in &self.pairs {
                if a1.refines(a2) != b1.refines(b2) {
                    return Err(Error::Consistency(format!("refinement not preserved between {a1} and {a2}")));
                }
            }
        }
        Ok(())
    }
}

/// Transfers axially symmetric subdivisions of the `2n`-gon to subdivisions
/// of an `(n+2)`-gon: keep one half `Q'` cut off by the axis, add a vertex `v`
/// across the axis, and send each diagonal perpendicular to the axis to the
/// diagonal from `v` to its endpoint in `Q'`.
pub fn delta_as_iso(alpha: &DihedralOrdering) -> Result<AsIso> {
    if alpha.symmetry() != Symmetry::Axial {
        return invalid(format!("{alpha} is not axially symmetric"));
    }
    let rep = alpha.axial_representative().expect("axial orderings have a symmetric representative");
    let m = rep.len();
    let n = m / 2;
    let qspace = LabelSpace::unsigned(n + 2);
    let to_q = |k: usize| -> Option<usize> {
        if k < n {
            Some(k)
        } else if k == m - 1 {
            Some(n + 1)
        } else {
            None
        }
    };
    let reflect = |k: usize| (2 * m - 2 - k) % m;
    let mut pairs = Vec::new();
    for s in enumerate_subdivisions(alpha, true)? {
        let tree = tree_from_subdivision(&s);
        let mut qsplits = Vec::new();
        for block in s.blocks() {
            let d = diagonal_for_block(&rep, &block).ok_or_else(|| Error::Consistency("block is not contiguous in the representative".into()))?;
            let q = match (to_q(d.a), to_q(d.b)) {
                (Some(x), Some(y)) => Some((x, y)),
                _ if reflect(d.a) == d.b => {
                    let end = to_q(d.a).or(to_q(d.b)).expect("perpendicular diagonals meet both halves");
                    Some((end, n))
                }
                _ => None,
            };
            if let Some((x, y)) = q {
                let qd = Diagonal::new(x, y, n + 2)?;
                let labels: Vec<i32> = qd.block().map(|p| p as i32 + 1).collect();
                qsplits.push(qspace.mask_of(&labels)?);
            }
        }
        pairs.push((tree, PhyloTree::from_splits(qspace, qsplits)?));
    }
    Ok(AsIso { alpha: alpha.clone(), pairs })
}

/// Output of the flip turning a centrally symmetric subdivision into an
/// axially symmetric one with the same tree.
#[derive(Debug, Clone)]
pub struct CspWitness {
    pub csdo: DihedralOrdering,
    pub central: Subdivision,
    /// The diameter along which the flip was performed (canonical positions of `csdo`).
    pub axis: Diagonal,
    pub asdo: DihedralOrdering,
    pub axial: Subdivision,
}

/// Flips the half of `sub` on the far side of `axis`: reverses its edge labels
/// and reflects its diagonals in the perpendicular bisector of the axis.
pub fn flip_central(sub: &Subdivision, axis: Diagonal) -> Result<CspWitness> {
    let alpha = sub.ordering();
    if alpha.symmetry() != Symmetry::Central {
        return invalid(format!("{alpha} is not centrally symmetric"));
    }
    let m = alpha.len();
    let n = m / 2;
    if axis.b != axis.a + n {
        return invalid(format!("{axis:?} is not a longest diagonal"));
    }
    if sub.diagonals().iter().any(|d| d.crosses(&axis)) {
        return invalid(format!("{axis:?} crosses the subdivision"));
    }
    let k = axis.a;
    // sigma[j] is the edge at position k+1+j; the axis joins sigma-vertices m-1 and n-1
    let sigma: Vec<i32> = (0..m).map(|j| alpha.labels()[(k + 1 + j) % m]).collect();
    let mut beta_seq: Vec<i32> = sigma[..n].to_vec();
    beta_seq.extend(sigma[n..].iter().rev());
    let beta = DihedralOrdering::new(beta_seq.clone())?;
    if beta.symmetry() != Symmetry::Axial {
        return Err(Error::Consistency(format!("flipped ordering {beta} is not axial")));
    }
    let to_sigma = |v: usize| (v + m - k - 1) % m;
    let mut blocks = Vec::new();
    for d in sub.diagonals() {
        let (x, y) = (to_sigma(d.a), to_sigma(d.b));
        let first_half = |v: usize| v < n || v == m - 1;
        let (x, y) = if first_half(x) && first_half(y) { (x, y) } else { ((3 * n - 2 - x) % m, (3 * n - 2 - y) % m) };
        let fd = Diagonal::new(x, y, m)?;
        let block: Vec<i32> = fd.block().map(|p| beta_seq[p]).collect();
        blocks.push(block);
    }
    let mut ds = Vec::new();
    for b in &blocks {
        ds.push(diagonal_for_block(beta.labels(), b).ok_or_else(|| Error::Consistency("flipped block not contiguous".into()))?);
    }
    let axial = Subdivision::new(beta.clone(), ds, true)?;
    if tree_from_subdivision(&axial) != tree_from_subdivision(sub) {
        return Err(Error::Consistency("flip changed the tree".into()));
    }
    Ok(CspWitness { csdo: alpha.clone(), central: sub.clone(), axis, asdo: beta, axial })
}

/// Finds a CSDO compatible with `tree` and flips along a longest diagonal
/// not crossing the subdivision (one in the subdivision if there is one).
pub fn csp_to_asp(tree: &PhyloTree) -> Result<CspWitness> {
    let space = tree.space();
    if !space.signed {
        return Err(Error::NotCentrallySymmetric(format!("{tree} has unsigned labels")));
    }
    let n = space.n;
    for alpha in enumerate_orderings(n, Symmetry::Central)? {
        let Some(sub) = subdivision_for_tree(tree, &alpha)? else {
            continue;
        };
        let m = 2 * n;
        let diameters: Vec<Diagonal> = (0..n).map(|k| Diagonal::new(k, k + n, m).expect("diameter")).collect();
        let axis = diameters
            .iter()
            .find(|d| sub.diagonals().contains(d))
            .or_else(|| diameters.iter().find(|d| sub.diagonals().iter().all(|e| !e.crosses(d))))
            .copied()
            .ok_or_else(|| Error::Consistency("no longest diagonal avoids the subdivision".into()))?;
        return flip_central(&sub, axis);
    }
    Err(Error::NotCentrallySymmetric(tree.key().to_string()))
}
