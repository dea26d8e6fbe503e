use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::index::{IndexSetD, Kind};
use crate::error::{invalid, Error, Result};
use crate::linalg::{self, Q};
use crate::symtrees::tree::{symmetry_involution, LabelSpace, PhyloTree};

/// Symmetric table of pairwise leaf distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistTable {
    pub space: LabelSpace,
    values: Vec<Q>,
}

impl DistTable {
    pub fn zeros(space: LabelSpace) -> Self {
        let m = space.size();
        DistTable { space, values: vec![Q::zero(); m * m] }
    }

    /// Table with entries `f(i, j)` for `i != j`; the result is symmetrised
    /// from the lower label of each pair.
    pub fn from_fn(space: LabelSpace, f: impl Fn(i32, i32) -> Q) -> Self {
        let mut t = Self::zeros(space);
        let labels = space.labels();
        for (x, &i) in labels.iter().enumerate() {
            for &j in &labels[x + 1..] {
                t.set(i, j, f(i, j));
            }
        }
        t
    }

    fn idx(&self, i: i32, j: i32) -> usize {
        let m = self.space.size();
        let a = self.space.bit(i).expect("label in table");
        let b = self.space.bit(j).expect("label in table");
        a * m + b
    }

    pub fn get(&self, i: i32, j: i32) -> &Q {
        &self.values[self.idx(i, j)]
    }

    pub fn set(&mut self, i: i32, j: i32, v: Q) {
        let a = self.idx(i, j);
        let b = self.idx(j, i);
        self.values[a] = v.clone();
        self.values[b] = v;
    }
}

/// Leaf distances of a tree whose internal edges have the given lengths
/// (indexed like `tree.splits()`); leaf edges have length zero.
pub fn tree_metric(tree: &PhyloTree, lengths: &[Q]) -> Result<DistTable> {
    if lengths.len() != tree.splits().len() {
        return invalid(format!("expected {} lengths, got {}", tree.splits().len(), lengths.len()));
    }
    if lengths.iter().any(|l| l.is_negative()) {
        return invalid("edge lengths must be nonnegative");
    }
    let space = tree.space();
    let splits = tree.splits();
    Ok(DistTable::from_fn(space, |i, j| {
        let (bi, bj) = (space.bit(i).unwrap(), space.bit(j).unwrap());
        splits.iter().zip(lengths).filter(|(s, _)| (**s >> bi & 1) != (**s >> bj & 1)).fold(Q::zero(), |acc, (_, l)| acc + l)
    }))
}

/// Lengths constant on ι-orbits, given one value per orbit (in the order of
/// `SymmetryInvolution::orbits`).
pub fn symmetric_lengths(tree: &PhyloTree, orbit_lengths: &[Q]) -> Result<Vec<Q>> {
    let inv = symmetry_involution(tree)?;
    if orbit_lengths.len() != inv.orbits.len() {
        return invalid(format!("expected {} orbit lengths, got {}", inv.orbits.len(), orbit_lengths.len()));
    }
    Ok(tree
        .splits()
        .iter()
        .map(|s| {
            let k = inv.orbits.iter().position(|o| o.contains(s)).expect("every split lies in an orbit");
            orbit_lengths[k].clone()
        })
        .collect())
}

/// Second differences of a distance table over the coordinate set:
/// `d(i,j) + d(i⁺,j⁺) - d(i,j⁺) - d(i⁺,j)`.
pub fn second_difference(d: &DistTable, index: &IndexSetD) -> Vec<Q> {
    index
        .pairs
        .iter()
        .map(|&(i, j)| {
            let (ip, jp) = (index.successor(i), index.successor(j));
            d.get(i, j) + d.get(ip, jp) - d.get(i, jp) - d.get(ip, j)
        })
        .collect()
}

/// `q(w)_{i,j} = w_{i,j+1} + w_{i+1,j} - w_{i,j} - w_{i+1,j+1}` on type A
/// coordinates; the negation of [`second_difference`].
pub fn quotient_map_q(w: &DistTable) -> Result<Vec<Q>> {
    if w.space.signed {
        return invalid("quotient map is defined on unsigned labels");
    }
    let index = IndexSetD::new(Kind::A, w.space.n)?;
    Ok(index
        .pairs
        .iter()
        .map(|&(i, j)| {
            let (ip, jp) = (index.successor(i), index.successor(j));
            w.get(i, jp) + w.get(ip, j) - w.get(i, j) - w.get(ip, jp)
        })
        .collect())
}

/// A simplicial cone spanned by integer rays, one per edge orbit of its tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeZ {
    pub kind: Kind,
    pub n: usize,
    /// Canonical key of the tree the cone comes from.
    pub source_tree: String,
    /// Primitive ray generators.
    pub rays: Vec<Vec<i64>>,
    /// `raw[k] = scale[k] * rays[k]` is the image of a unit length on orbit `k`.
    pub scale: Vec<i64>,
    /// Edge orbits (canonical split masks) matching the rays.
    pub orbits: Vec<Vec<u32>>,
}

impl ConeZ {
    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn raw_rays(&self) -> Vec<Vec<i64>> {
        self.rays.iter().zip(&self.scale).map(|(r, s)| r.iter().map(|x| x * s).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank_i64(&self.rays)
    }
}

fn to_int_vector(v: &[Q]) -> Result<(Vec<i64>, i64)> {
    let mut ints = Vec::with_capacity(v.len());
    for x in v {
        if !x.is_integer() {
            return Err(Error::Consistency(format!("non-integral ray entry {x}")));
        }
        ints.push(x.to_integer().to_i64().ok_or_else(|| Error::Consistency("ray entry overflow".into()))?);
    }
    let g = ints.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Err(Error::Consistency("zero ray".into()));
    }
    Ok((ints.iter().map(|x| x / g).collect(), g))
}

/// Cone of a tree: each edge (type A) or ι-orbit of edges (type C) with unit
/// length, the others zero, pushed through the second-difference map.
pub fn cone_rays(tree: &PhyloTree, kind: Kind) -> Result<ConeZ> {
    let space = tree.space();
    let orbits: Vec<Vec<u32>> = match kind {
        Kind::A => {
            if space.signed {
                return Err(Error::LabelMismatch("type A cones need labels [n]".into()));
            }
            tree.splits().iter().map(|&s| vec![s]).collect()
        }
        Kind::C => {
            if !space.signed {
                return Err(Error::LabelMismatch("type C cones need signed labels".into()));
            }
            symmetry_involution(tree)?.orbits
        }
    };
    let index = IndexSetD::new(kind, space.n)?;
    let mut rays = Vec::new();
    let mut scale = Vec::new();
    for orbit in &orbits {
        let lengths: Vec<Q> = tree.splits().iter().map(|s| if orbit.contains(s) { linalg::q(1) } else { Q::zero() }).collect();
        let d = tree_metric(tree, &lengths)?;
        let (r, g) = to_int_vector(&second_difference(&d, &index))?;
        rays.push(r);
        scale.push(g);
    }
    let cone = ConeZ { kind, n: space.n, source_tree: tree.key().to_string(), rays, scale, orbits };
    if cone.rank() != cone.dim() {
        return Err(Error::Consistency(format!("rays of {} are linearly dependent", tree.key())));
    }
    Ok(cone)
}

/// Sum of the ray generators; the zero vector (flagged) for the apex cone.
pub fn interior_point(c: &ConeZ, dim: usize) -> (Vec<i64>, bool) {
    let mut w = vec![0i64; dim];
    for r in &c.rays {
        for (x, y) in w.iter_mut().zip(r) {
            *x += y;
        }
    }
    (w, c.rays.is_empty())
}
