use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::ordering::{enumerate_orderings, DihedralOrdering, Symmetry};
use super::polygon::{enumerate_subdivisions, tree_from_subdivision};
use super::tree::{symmetry_involution, PhyloTree};
use crate::error::{invalid, Error, Result};
use crate::exec::{self, ExecMode};

/// Which union of subdivision complexes to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Plain trees on `[n]`.
    A,
    /// Axially symmetric trees on the signed set.
    AS,
    /// Centrally symmetric trees on the signed set.
    CS,
}

impl Family {
    pub fn symmetry(self) -> Symmetry {
        match self {
            Family::A => Symmetry::None,
            Family::AS => Symmetry::Axial,
            Family::CS => Symmetry::Central,
        }
    }

    fn symmetric(self) -> bool {
        self != Family::A
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Family::A),
            "as" => Ok(Family::AS),
            "cs" => Ok(Family::CS),
            other => invalid(format!("unknown family {other:?} (expected a, as or cs)")),
        }
    }
}

/// A simplicial complex whose faces are trees and whose vertices are the
/// minimal trees (one split, or one symmetric orbit of splits).
///
/// Faces are sorted by size and then lexicographically; face 0 is the empty
/// face, carried by the star tree.
#[derive(Debug, Clone)]
pub struct Complex {
    pub family: Family,
    pub n: usize,
    vertices: Vec<PhyloTree>,
    faces: Vec<Vec<usize>>,
    face_trees: Vec<PhyloTree>,
    index: HashMap<Vec<usize>, usize>,
}

/// Groups the splits of a tree into vertices of the complex.
fn vertex_trees(tree: &PhyloTree, symmetric: bool) -> Result<Vec<PhyloTree>> {
    let space = tree.space();
    if symmetric {
        let inv = symmetry_involution(tree)?;
        inv.orbits.iter().map(|o| PhyloTree::from_splits(space, o.iter().copied())).collect()
    } else {
        tree.splits().iter().map(|&s| PhyloTree::from_splits(space, [s])).collect()
    }
}

impl Complex {
    fn from_trees(family: Family, n: usize, trees: BTreeSet<PhyloTree>) -> Result<Self> {
        let symmetric = family.symmetric();
        let mut grouped = Vec::with_capacity(trees.len());
        let mut vset = BTreeSet::new();
        for t in trees {
            let vs = vertex_trees(&t, symmetric)?;
            vset.extend(vs.iter().cloned());
            grouped.push((t, vs));
        }
        let vertices: Vec<PhyloTree> = vset.into_iter().collect();
        let vid: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.key(), i)).collect();
        let mut faces: Vec<(Vec<usize>, PhyloTree)> = grouped
            .into_iter()
            .map(|(t, vs)| {
                let mut f: Vec<usize> = vs.iter().map(|v| vid[v.key()]).collect();
                f.sort_unstable();
                (f, t)
            })
            .collect();
        faces.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let index = faces.iter().enumerate().map(|(i, (f, _))| (f.clone(), i)).collect();
        let (faces, face_trees) = faces.into_iter().unzip();
        Ok(Complex { family, n, vertices, faces, face_trees, index })
    }

    pub fn vertices(&self) -> &[PhyloTree] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_trees(&self) -> &[PhyloTree] {
        &self.face_trees
    }

    pub fn face_tree(&self, face: &[usize]) -> Option<&PhyloTree> {
        let mut f = face.to_vec();
        f.sort_unstable();
        self.index.get(&f).map(|&i| &self.face_trees[i])
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.face_tree(face).is_some()
    }

    /// Face index of a tree, if the tree is a face.
    pub fn face_of_tree(&self, tree: &PhyloTree) -> Option<usize> {
        self.face_trees.iter().position(|t| t == tree)
    }

    pub fn vertex_of_tree(&self, tree: &PhyloTree) -> Option<usize> {
        self.vertices.iter().position(|t| t == tree)
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Largest face size minus one; `-1` for the complex with only the empty face.
    pub fn dimension(&self) -> isize {
        self.faces.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1
    }

    /// `f[k]` is the number of faces with `k` vertices (so `f[0] = 1`).
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dimension() + 2) as usize];
        for face in &self.faces {
            f[face.len()] += 1;
        }
        f
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces.iter().filter(|f| f.len() == 2).map(|f| (f[0], f[1])).collect()
    }

    pub fn maximal_faces(&self) -> Vec<&Vec<usize>> {
        let mut out = Vec::new();
        for f in &self.faces {
            let extendable = (0..self.vertices.len()).any(|v| {
                if f.contains(&v) {
                    return false;
                }
                let mut g = f.clone();
                g.push(v);
                self.contains_face(&g)
            });
            if !extendable {
                out.push(f);
            }
        }
        out
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension();
        self.maximal_faces().iter().all(|f| f.len() as isize - 1 == d)
    }

    pub fn is_downward_closed(&self) -> bool {
        if !self.contains_face(&[]) {
            return false;
        }
        self.faces.iter().all(|f| {
            (0..f.len()).all(|i| {
                let mut g = f.clone();
                g.remove(i);
                self.contains_face(&g)
            })
        })
    }

    /// Every clique of the 1-skeleton is a face.
    pub fn is_flag(&self) -> bool {
        let adj = self.adjacency();
        self.faces.iter().all(|f| {
            (0..self.vertices.len()).all(|v| {
                if f.contains(&v) || !f.iter().all(|u| adj[*u].contains(&v)) {
                    return true;
                }
                let mut g = f.clone();
                g.push(v);
                self.contains_face(&g)
            })
        })
    }

    /// Face containment agrees with refinement of the face trees.
    pub fn containment_matches_refinement(&self) -> bool {
        for (i, f) in self.faces.iter().enumerate() {
            for (j, g) in self.faces.iter().enumerate() {
                let sub = g.iter().all(|v| f.contains(v));
                if sub != self.face_trees[i].refines(&self.face_trees[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Neighbour sets of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.vertices.len()];
        for (u, v) in self.edges() {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    /// Length of a shortest cycle of the 1-skeleton.
    pub fn girth(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut best: Option<usize> = None;
        for s in 0..adj.len() {
            let mut dist = vec![usize::MAX; adj.len()];
            let mut parent = vec![usize::MAX; adj.len()];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        q.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Whether every face tree of `self` is a face tree of `other`.
    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        let keys: BTreeSet<&str> = other.face_trees.iter().map(|t| t.key()).collect();
        self.face_trees.iter().all(|t| keys.contains(t.key()))
    }

    /// Vertex ids of `other` expressed in this complex, if all are present.
    pub fn embed_vertices(&self, other: &Complex) -> Option<Vec<usize>> {
        other.vertices.iter().map(|t| self.vertex_of_tree(t)).collect()
    }

    /// Face-count summary keyed by face size.
    pub fn face_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for f in &self.faces {
            *m.entry(f.len()).or_insert(0) += 1;
        }
        m
    }
}

fn trees_of(alpha: &DihedralOrdering, symmetric: bool) -> Result<Vec<PhyloTree>> {
    Ok(enumerate_subdivisions(alpha, symmetric)?.iter().map(tree_from_subdivision).collect())
}

/// Θ(n), Θ_as(n) or Θ_cs(n).
pub fn build_complex(family: Family, n: usize) -> Result<Complex> {
    build_complex_with(family, n, ExecMode::default())
}

pub fn build_complex_with(family: Family, n: usize, mode: ExecMode) -> Result<Complex> {
    let orderings = enumerate_orderings(n, family.symmetry())?;
    let per: Vec<Result<Vec<PhyloTree>>> = exec::map(mode, &orderings, |a| trees_of(a, family.symmetric()));
    let mut trees = BTreeSet::new();
    for r in per {
        trees.extend(r?);
    }
    Complex::from_trees(family, n, trees)
}

/// Δ(α), Δ_as(α) or Δ_cs(α), according to the symmetry of `α`.
pub fn build_sub(alpha: &DihedralOrdering) -> Result<Complex> {
    let family = match alpha.symmetry() {
        Symmetry::None => Family::A,
        Symmetry::Axial => Family::AS,
        Symmetry::Central => Family::CS,
    };
    let symmetric = family.symmetric();
    let trees: BTreeSet<PhyloTree> = trees_of(alpha, symmetric)?.into_iter().collect();
    let n = if alpha.space().signed { alpha.len() / 2 } else { alpha.len() };
    Complex::from_trees(family, n, trees)
}
