use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cone::{cone_rays, interior_point, ConeZ};
use super::index::{IndexSetD, Kind};
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::linalg::{self, Q};
use crate::symtrees::complex::{Complex, Family};
use crate::symtrees::tree::{symmetric_contract, PhyloTree};

/// Cones over the faces of a tree complex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fan {
    pub kind: Kind,
    pub n: usize,
    pub index: IndexSetD,
    /// Primitive ray generators.
    pub rays: Vec<Vec<i64>>,
    /// Canonical key of the minimal tree of each ray.
    pub ray_trees: Vec<String>,
    /// One cone per face of the complex, the apex first.
    pub cones: Vec<ConeZ>,
    /// Ray ids spanning each cone, sorted.
    pub cone_rays: Vec<Vec<usize>>,
    /// `(facet, cone)` pairs, as indices into `cones`.
    pub facets: Vec<(usize, usize)>,
}

/// Order used when listing rays: fewer nonzero entries first, then smaller
/// largest entry, then the position of the largest entry.
pub fn ray_sort_key(r: &[i64]) -> (usize, i64, usize) {
    let nnz = r.iter().filter(|&&x| x != 0).count();
    let max = r.iter().copied().max().unwrap_or(0);
    let pos = r.iter().position(|&x| x == max).unwrap_or(0);
    (nnz, max, pos)
}

fn check_family(complex: &Complex, kind: Kind) -> Result<()> {
    let ok = matches!((kind, complex.family), (Kind::A, Family::A) | (Kind::C, Family::AS) | (Kind::C, Family::CS));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("a {:?} complex does not carry type {kind} cones", complex.family)))
    }
}

pub fn assemble_fan(complex: &Complex, kind: Kind) -> Result<Fan> {
    assemble_fan_with(complex, kind, ExecMode::default())
}

pub fn assemble_fan_with(complex: &Complex, kind: Kind, mode: ExecMode) -> Result<Fan> {
    check_family(complex, kind)?;
    let index = IndexSetD::new(kind, complex.n)?;
    let cones: Vec<Result<ConeZ>> = exec::map(mode, complex.face_trees(), |t| cone_rays(t, kind));
    let cones: Vec<ConeZ> = cones.into_iter().collect::<Result<_>>()?;

    // rays come from the one-vertex faces
    let mut vertex_ray: Vec<Vec<i64>> = Vec::with_capacity(complex.vertices().len());
    for v in complex.vertices() {
        let c = cone_rays(v, kind)?;
        vertex_ray.push(c.rays[0].clone());
    }
    let mut order: Vec<usize> = (0..vertex_ray.len()).collect();
    order.sort_by(|&a, &b| (ray_sort_key(&vertex_ray[a]), &vertex_ray[a]).cmp(&(ray_sort_key(&vertex_ray[b]), &vertex_ray[b])));
    let mut ray_id = vec![0; order.len()];
    for (k, &v) in order.iter().enumerate() {
        ray_id[v] = k;
    }
    let rays: Vec<Vec<i64>> = order.iter().map(|&v| vertex_ray[v].clone()).collect();
    let ray_trees: Vec<String> = order.iter().map(|&v| complex.vertices()[v].key().to_string()).collect();
    let distinct: BTreeSet<&Vec<i64>> = rays.iter().collect();
    if distinct.len() != rays.len() {
        return Err(Error::Consistency("two vertices share a ray".into()));
    }

    let mut cone_rays_idx = Vec::with_capacity(cones.len());
    for (face, cone) in complex.faces().iter().zip(&cones) {
        let mut ids: Vec<usize> = face.iter().map(|&v| ray_id[v]).collect();
        ids.sort_unstable();
        let from_face: BTreeSet<&Vec<i64>> = ids.iter().map(|&k| &rays[k]).collect();
        let from_tree: BTreeSet<&Vec<i64>> = cone.rays.iter().collect();
        if from_face != from_tree {
            return Err(Error::Consistency(format!("cone of {} disagrees with its vertices", cone.source_tree)));
        }
        cone_rays_idx.push(ids);
    }

    let by_key: HashMap<&str, usize> = cones.iter().enumerate().map(|(i, c)| (c.source_tree.as_str(), i)).collect();
    let mut facets = Vec::new();
    for (ci, (tree, cone)) in complex.face_trees().iter().zip(&cones).enumerate() {
        for orbit in &cone.orbits {
            let child = contract_orbit(tree, orbit, kind)?;
            let fi = *by_key.get(child.key()).ok_or_else(|| Error::Consistency(format!("contraction of {} is not a face", tree.key())))?;
            let mut expect = cone_rays_idx[ci].clone();
            let drop = rays.iter().position(|r| *r == cone.rays[cone.orbits.iter().position(|o| o == orbit).unwrap()]).unwrap();
            expect.retain(|&k| k != drop);
            if expect != cone_rays_idx[fi] {
                return Err(Error::Consistency(format!("facet of {} is not the contracted cone", tree.key())));
            }
            facets.push((fi, ci));
        }
    }
    facets.sort_unstable();

    Ok(Fan { kind, n: complex.n, index, rays, ray_trees, cones, cone_rays: cone_rays_idx, facets })
}

fn contract_orbit(tree: &PhyloTree, orbit: &[u32], kind: Kind) -> Result<PhyloTree> {
    match kind {
        Kind::A => tree.contract(orbit),
        Kind::C => symmetric_contract(tree, orbit[0]),
    }
}

impl Fan {
    pub fn dim(&self) -> usize {
        self.index.len()
    }

    /// Cones with `k` rays.
    pub fn cones_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.cone_rays[i].len() == k).collect()
    }

    pub fn interior_point(&self, cone: usize) -> Vec<i64> {
        interior_point(&self.cones[cone], self.dim()).0
    }

    /// Generators of a cone in fan ray order.
    pub fn generators(&self, cone: usize) -> Vec<Vec<i64>> {
        self.cone_rays[cone].iter().map(|&k| self.rays[k].clone()).collect()
    }

    /// Checks that every two cones meet in the cone spanned by their common rays.
    pub fn verify_intersections(&self, mode: ExecMode) -> Result<()> {
        let mut pairs = Vec::new();
        for a in 1..self.cones.len() {
            for b in a + 1..self.cones.len() {
                pairs.push((a, b));
            }
        }
        let bad: Vec<Option<(usize, usize)>> =
            exec::map(mode, &pairs, |&(a, b)| (!meet_in_common_face(&self.generators(a), &self.generators(b))).then_some((a, b)));
        if let Some((a, b)) = bad.into_iter().flatten().next() {
            return Err(Error::Consistency(format!("cones {} and {} overlap beyond a common face", self.cones[a].source_tree, self.cones[b].source_tree)));
        }
        Ok(())
    }
}

/// For simplicial cones `A`, `B`: true iff no point of `A ∩ B` needs a ray of
/// `A` outside the common rays. Decided by exact LP infeasibility of
/// `Σ a_i r_i = Σ b_j s_j`, `a, b ≥ 0`, `Σ_{r_i ∉ B} a_i = 1`.
pub fn meet_in_common_face(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let private: Vec<bool> = a.iter().map(|r| !b.contains(r)).collect();
    if !private.iter().any(|&p| p) {
        return true;
    }
    let dim = a.first().or(b.first()).map_or(0, |r| r.len());
    let nvar = a.len() + b.len();
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(dim + 1);
    let mut rhs = Vec::with_capacity(dim + 1);
    for c in 0..dim {
        let mut row = Vec::with_capacity(nvar);
        row.extend(a.iter().map(|r| linalg::q(r[c])));
        row.extend(b.iter().map(|s| linalg::q(-s[c])));
        rows.push(row);
        rhs.push(Q::zero());
    }
    let mut norm = vec![Q::zero(); nvar];
    for (i, &p) in private.iter().enumerate() {
        if p {
            norm[i] = Q::one();
        }
    }
    rows.push(norm);
    rhs.push(Q::one());
    linalg::nonneg_solution(&rows, &rhs).is_none()
}
