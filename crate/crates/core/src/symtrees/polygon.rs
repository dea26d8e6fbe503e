use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ordering::{DihedralOrdering, Symmetry};
use super::tree::PhyloTree;
use crate::error::{invalid, Error, Result};

/// A diagonal of an `m`-gon, by vertex positions `a < b`.
///
/// Vertex `k` sits between edge `k` and edge `k+1` (mod `m`), so with respect
/// to a labelling `α` it is the vertex named `α[k]`: adjacent to the edge with
/// that label and to the edge of its successor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagonal {
    pub a: usize,
    pub b: usize,
}

impl Diagonal {
    pub fn new(u: usize, v: usize, m: usize) -> Result<Self> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if b >= m {
            return invalid(format!("vertex {b} out of range for a {m}-gon"));
        }
        if a == b || b - a == 1 || (a == 0 && b == m - 1) {
            return invalid(format!("({u}, {v}) is not a diagonal of a {m}-gon"));
        }
        Ok(Diagonal { a, b })
    }

    /// True when the diagonals share an interior point.
    pub fn crosses(&self, other: &Diagonal) -> bool {
        let (a, b, c, d) = (self.a, self.b, other.a, other.b);
        if a == c || a == d || b == c || b == d {
            return false;
        }
        (a < c && c < b) != (a < d && d < b)
    }

    /// Positions of the edges cut off on the `a < p <= b` side.
    pub fn block(&self) -> std::ops::RangeInclusive<usize> {
        self.a + 1..=self.b
    }

    /// Vertex names `(α[a], α[b])`.
    pub fn vertex_labels(&self, alpha: &[i32]) -> (i32, i32) {
        (alpha[self.a], alpha[self.b])
    }
}

/// Diagonal separating a cyclically contiguous block of edge labels.
pub fn diagonal_for_block(alpha: &[i32], block: &[i32]) -> Option<Diagonal> {
    let m = alpha.len();
    let k = block.len();
    if k < 2 || k + 2 > m {
        return None;
    }
    let inside: BTreeSet<i32> = block.iter().copied().collect();
    for s in 0..m {
        if (0..k).all(|j| inside.contains(&alpha[(s + j) % m])) {
            let a = (s + m - 1) % m;
            let b = (s + k - 1) % m;
            return Diagonal::new(a, b, m).ok();
        }
    }
    None
}

/// Image of polygon vertices under an edge permutation that is a dihedral
/// symmetry of the polygon.
pub fn vertex_image(edge_map: &[usize], k: usize) -> usize {
    let m = edge_map.len();
    let (x, y) = (edge_map[k], edge_map[(k + 1) % m]);
    if y == (x + 1) % m {
        x
    } else {
        y
    }
}

pub fn diagonal_image(edge_map: &[usize], d: &Diagonal) -> Diagonal {
    let m = edge_map.len();
    Diagonal::new(vertex_image(edge_map, d.a), vertex_image(edge_map, d.b), m).expect("symmetries preserve diagonals")
}

/// A set of pairwise non-crossing diagonals of the polygon labelled by
/// `ordering` (positions refer to the canonical representative).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subdivision {
    ordering: DihedralOrdering,
    diagonals: BTreeSet<Diagonal>,
    symmetric: bool,
}

impl Subdivision {
    pub fn new(ordering: DihedralOrdering, diagonals: impl IntoIterator<Item = Diagonal>, symmetric: bool) -> Result<Self> {
        let diagonals: BTreeSet<Diagonal> = diagonals.into_iter().collect();
        let m = ordering.len();
        for d in &diagonals {
            Diagonal::new(d.a, d.b, m)?;
        }
        let v: Vec<&Diagonal> = diagonals.iter().collect();
        for (i, d) in v.iter().enumerate() {
            for e in &v[i + 1..] {
                if d.crosses(e) {
                    return invalid(format!("diagonals {d:?} and {e:?} cross"));
                }
            }
        }
        if symmetric {
            let map = symmetry_map(&ordering)?;
            for d in &diagonals {
                if !diagonals.contains(&diagonal_image(&map, d)) {
                    return invalid(format!("subdivision is not closed under the symmetry: {d:?}"));
                }
            }
        }
        Ok(Subdivision { ordering, diagonals, symmetric })
    }

    pub fn ordering(&self) -> &DihedralOrdering {
        &self.ordering
    }

    pub fn diagonals(&self) -> &BTreeSet<Diagonal> {
        &self.diagonals
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_trivial(&self) -> bool {
        self.diagonals.is_empty()
    }

    /// Number of 2-cells.
    pub fn num_cells(&self) -> usize {
        self.diagonals.len() + 1
    }

    /// Edge-label blocks cut off by each diagonal.
    pub fn blocks(&self) -> Vec<Vec<i32>> {
        let alpha = self.ordering.labels();
        self.diagonals.iter().map(|d| d.block().map(|p| alpha[p]).collect()).collect()
    }
}

fn symmetry_map(ordering: &DihedralOrdering) -> Result<Vec<usize>> {
    match ordering.symmetry() {
        Symmetry::Axial | Symmetry::Central => Ok(ordering.negation_map().expect("symmetric orderings are signed")),
        Symmetry::None => invalid(format!("{ordering} carries no symmetry")),
    }
}

/// All diagonals of an `m`-gon.
pub fn all_diagonals(m: usize) -> Vec<Diagonal> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 2..m {
            if let Ok(d) = Diagonal::new(a, b, m) {
                out.push(d);
            }
        }
    }
    out
}

/// Building blocks for subdivisions: single diagonals, or symmetry orbits
/// whose members do not cross each other.
fn units(ordering: &DihedralOrdering, symmetric: bool) -> Result<Vec<Vec<Diagonal>>> {
    let m = ordering.len();
    if !symmetric {
        return Ok(all_diagonals(m).into_iter().map(|d| vec![d]).collect());
    }
    let map = symmetry_map(ordering)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for d in all_diagonals(m) {
        if seen.contains(&d) {
            continue;
        }
        let e = diagonal_image(&map, &d);
        seen.insert(d);
        seen.insert(e);
        if d == e {
            out.push(vec![d]);
        } else if !d.crosses(&e) {
            out.push(vec![d.min(e), d.max(e)]);
        }
    }
    Ok(out)
}

/// Coarsest nontrivial subdivisions: one diagonal, or one symmetry orbit.
pub fn coarsest_subdivisions(ordering: &DihedralOrdering, symmetric: bool) -> Result<Vec<Subdivision>> {
    units(ordering, symmetric)?.into_iter().map(|u| Subdivision::new(ordering.clone(), u, symmetric)).collect()
}

/// Every subdivision (symmetric ones only when `symmetric`), including the
/// trivial one. Backtracks over units so that symmetric closure is kept at
/// every step.
pub fn enumerate_subdivisions(ordering: &DihedralOrdering, symmetric: bool) -> Result<Vec<Subdivision>> {
    let units = units(ordering, symmetric)?;
    let mut out = Vec::new();
    let mut chosen: Vec<Diagonal> = Vec::new();
    fn rec(units: &[Vec<Diagonal>], i: usize, chosen: &mut Vec<Diagonal>, out: &mut Vec<Vec<Diagonal>>) {
        if i == units.len() {
            out.push(chosen.clone());
            return;
        }
        rec(units, i + 1, chosen, out);
        let fits = units[i].iter().all(|d| chosen.iter().all(|c| !c.crosses(d)));
        if fits {
            let k = chosen.len();
            chosen.extend(units[i].iter().copied());
            rec(units, i + 1, chosen, out);
            chosen.truncate(k);
        }
    }
    let mut raw = Vec::new();
    rec(&units, 0, &mut chosen, &mut raw);
    for ds in raw {
        out.push(Subdivision { ordering: ordering.clone(), diagonals: ds.into_iter().collect(), symmetric });
    }
    out.sort();
    Ok(out)
}

/// Dual tree of a subdivision: one internal vertex per 2-cell, one leaf per
/// polygon edge. Each diagonal contributes the split given by the edge labels
/// on either side of it.
pub fn tree_from_subdivision(s: &Subdivision) -> PhyloTree {
    let space = s.ordering.space();
    let splits = s.blocks().into_iter().map(|b| space.mask_of(&b).expect("block labels belong to the space"));
    PhyloTree::from_splits(space, splits).expect("non-crossing diagonals give compatible splits")
}

/// Whether `tree` is the dual tree of some subdivision of `α` (a symmetric
/// one when `α` is axially or centrally symmetric).
pub fn is_compatible(tree: &PhyloTree, alpha: &DihedralOrdering) -> Result<bool> {
    if tree.space() != alpha.space() {
        return Err(Error::LabelMismatch(format!("tree on {} but ordering on {}", tree.space(), alpha.space())));
    }
    Ok(subdivision_for_tree(tree, alpha)?.is_some())
}

/// The subdivision of `α` whose dual tree is `tree`, if there is one.
pub fn subdivision_for_tree(tree: &PhyloTree, alpha: &DihedralOrdering) -> Result<Option<Subdivision>> {
    if tree.space() != alpha.space() {
        return Err(Error::LabelMismatch(format!("tree on {} but ordering on {}", tree.space(), alpha.space())));
    }
    let space = tree.space();
    let symmetric = alpha.symmetry() != Symmetry::None;
    if symmetric && !tree.is_negation_closed() {
        return Ok(None);
    }
    let mut ds = Vec::new();
    for &s in tree.splits() {
        match diagonal_for_block(alpha.labels(), &space.labels_of(s)) {
            Some(d) => ds.push(d),
            None => return Ok(None),
        }
    }
    Ok(Some(Subdivision::new(alpha.clone(), ds, symmetric)?))
}
