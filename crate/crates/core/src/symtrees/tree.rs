use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Leaf label alphabet: `[n]` or the signed set `[1,n] ∪ [-n,-1]`.
///
/// Labels are mapped to bit positions so that a leaf set fits in a `u32`:
/// positive label `i` sits at bit `i-1`, negative label `-i` at bit `n+i-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabelSpace {
    pub n: usize,
    pub signed: bool,
}

impl LabelSpace {
    pub fn unsigned(n: usize) -> Self {
        LabelSpace { n, signed: false }
    }

    pub fn signed(n: usize) -> Self {
        LabelSpace { n, signed: true }
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        if self.signed {
            2 * self.n
        } else {
            self.n
        }
    }

    /// All labels in the fixed total order `-n < … < -1 < 1 < … < n`.
    pub fn labels(&self) -> Vec<i32> {
        let n = self.n as i32;
        let mut out: Vec<i32> = Vec::with_capacity(self.size());
        if self.signed {
            out.extend((1..=n).rev().map(|i| -i));
        }
        out.extend(1..=n);
        out
    }

    pub fn contains(&self, label: i32) -> bool {
        self.bit(label).is_some()
    }

    pub fn bit(&self, label: i32) -> Option<usize> {
        let n = self.n as i32;
        if label >= 1 && label <= n {
            Some((label - 1) as usize)
        } else if self.signed && label <= -1 && label >= -n {
            Some(self.n + (-label - 1) as usize)
        } else {
            None
        }
    }

    pub fn label(&self, bit: usize) -> i32 {
        if bit < self.n {
            bit as i32 + 1
        } else {
            -((bit - self.n) as i32 + 1)
        }
    }

    pub fn full_mask(&self) -> u32 {
        if self.size() == 32 {
            u32::MAX
        } else {
            (1u32 << self.size()) - 1
        }
    }

    pub fn mask_of(&self, labels: &[i32]) -> Result<u32> {
        let mut m = 0u32;
        for &l in labels {
            let b = self.bit(l).ok_or_else(|| Error::LabelMismatch(format!("label {l} not in {self}")))?;
            m |= 1 << b;
        }
        Ok(m)
    }

    /// Labels of a mask, sorted in the fixed total order.
    pub fn labels_of(&self, mask: u32) -> Vec<i32> {
        let mut v: Vec<i32> = (0..self.size()).filter(|b| mask >> b & 1 == 1).map(|b| self.label(b)).collect();
        v.sort_unstable();
        v
    }

    /// Image of a leaf set under `i ↦ -i`.
    pub fn negate(&self, mask: u32) -> u32 {
        debug_assert!(self.signed);
        let lo = mask & ((1u32 << self.n) - 1);
        let hi = mask >> self.n;
        (lo << self.n) | hi
    }

    /// Canonical side of a bipartition: the side not containing label 1.
    pub fn normalize_split(&self, mask: u32) -> u32 {
        if mask & 1 == 1 {
            !mask & self.full_mask()
        } else {
            mask
        }
    }
}

impl fmt::Display for LabelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.signed {
            write!(f, "N{}", self.n)
        } else {
            write!(f, "A{}", self.n)
        }
    }
}

/// Returns true when the bipartitions `a | a^c` and `b | b^c` are compatible.
pub fn splits_compatible(a: u32, b: u32, full: u32) -> bool {
    let ac = !a & full;
    let bc = !b & full;
    a & b == 0 || a & bc == 0 || ac & b == 0 || ac & bc == 0
}

/// A leaf-labelled tree without degree-two vertices.
///
/// Vertices `0..space.size()` are the leaves (vertex `b` carries label
/// `space.label(b)`); the remaining vertices are internal. The tree is stored
/// together with its split system, which doubles as the canonical form: two
/// trees are isomorphic by a label-preserving map iff their split sets agree.
#[derive(Clone)]
pub struct PhyloTree {
    space: LabelSpace,
    splits: Vec<u32>,
    adjacency: Vec<Vec<usize>>,
    key: String,
}

impl PartialEq for PhyloTree {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for PhyloTree {}

impl std::hash::Hash for PhyloTree {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl PartialOrd for PhyloTree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PhyloTree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.space, self.splits.len(), &self.splits).cmp(&(other.space, other.splits.len(), &other.splits))
    }
}

impl fmt::Debug for PhyloTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhyloTree({})", self.key)
    }
}

impl fmt::Display for PhyloTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

impl PhyloTree {
    /// The star tree: a single internal vertex.
    pub fn star(space: LabelSpace) -> Self {
        Self::from_splits(space, std::iter::empty()).expect("star tree is always valid")
    }

    /// Builds a tree from a collection of bipartitions, each given by the leaf
    /// mask of one side. Trivial splits are rejected.
    pub fn from_splits(space: LabelSpace, splits: impl IntoIterator<Item = u32>) -> Result<Self> {
        if space.size() < 3 {
            return invalid(format!("a phylogenetic tree needs at least 3 leaves, got {}", space.size()));
        }
        if space.size() > 32 {
            return invalid("label spaces above 32 leaves are not supported");
        }
        let full = space.full_mask();
        let mut set = BTreeSet::new();
        for s in splits {
            let s = s & full;
            let side = s.count_ones() as usize;
            if side < 2 || space.size() - side < 2 {
                return invalid(format!("split {:?} is trivial", space.labels_of(s)));
            }
            set.insert(space.normalize_split(s));
        }
        let splits: Vec<u32> = set.into_iter().collect();
        for (i, &a) in splits.iter().enumerate() {
            for &b in &splits[i + 1..] {
                if !splits_compatible(a, b, full) {
                    return invalid(format!("splits {:?} and {:?} are incompatible", space.labels_of(a), space.labels_of(b)));
                }
            }
        }
        let adjacency = build_adjacency(space, &splits);
        let key = canonical_key(space, &splits);
        Ok(PhyloTree { space, splits, adjacency, key })
    }

    /// Builds a tree from an explicit edge list over vertex ids. Leaves are
    /// identified through `leaf_labels` (vertex id, label). Used by tests and
    /// by the JSON importer; the result is canonicalised.
    pub fn from_edges(space: LabelSpace, nvertices: usize, edges: &[(usize, usize)], leaf_labels: &[(usize, i32)]) -> Result<Self> {
        if edges.len() + 1 != nvertices {
            return invalid("edge count does not describe a tree");
        }
        let mut adj = vec![Vec::new(); nvertices];
        for &(u, v) in edges {
            if u >= nvertices || v >= nvertices || u == v {
                return invalid("edge endpoint out of range");
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut leaf_bit = vec![None; nvertices];
        let mut seen = 0u32;
        for &(v, l) in leaf_labels {
            let b = space.bit(l).ok_or_else(|| Error::LabelMismatch(format!("label {l} not in {space}")))?;
            if seen >> b & 1 == 1 {
                return invalid(format!("label {l} used twice"));
            }
            seen |= 1 << b;
            if v >= nvertices || adj[v].len() != 1 {
                return invalid(format!("vertex {v} carrying label {l} is not a leaf"));
            }
            leaf_bit[v] = Some(b);
        }
        if seen != space.full_mask() {
            return invalid("leaf labelling is not a bijection onto the label set");
        }
        for (v, nb) in adj.iter().enumerate() {
            if nb.len() == 1 && leaf_bit[v].is_none() {
                return invalid(format!("unlabelled leaf {v}"));
            }
            if nb.len() == 2 {
                return invalid(format!("vertex {v} has degree two"));
            }
        }
        // leaf masks below each directed edge
        let mut splits = Vec::new();
        for &(u, v) in edges {
            if adj[u].len() == 1 || adj[v].len() == 1 {
                continue;
            }
            let m = subtree_mask(&adj, &leaf_bit, v, u);
            splits.push(m);
        }
        // connectivity: every leaf reached from vertex 0
        let reach = subtree_mask(&adj, &leaf_bit, 0, usize::MAX);
        if reach != space.full_mask() {
            return invalid("edge list is not connected");
        }
        Self::from_splits(space, splits)
    }

    pub fn space(&self) -> LabelSpace {
        self.space
    }

    /// Canonical split masks (side not containing label 1), sorted.
    pub fn splits(&self) -> &[u32] {
        &self.splits
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn canonical_key(&self) -> &[u8] {
        self.key.as_bytes()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_internal_vertices(&self) -> usize {
        self.adjacency.len() - self.space.size()
    }

    /// Non-leaf edges, i.e. the number of splits.
    pub fn num_internal_edges(&self) -> usize {
        self.splits.len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v < self.space.size()
    }

    pub fn leaf_label(&self, v: usize) -> Option<i32> {
        self.is_leaf(v).then(|| self.space.label(v))
    }

    pub fn leaf_vertex(&self, label: i32) -> Option<usize> {
        self.space.bit(label)
    }

    /// All edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.adjacency.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Leaf mask on the `v` side of the edge `{u, v}`.
    pub fn side_mask(&self, u: usize, v: usize) -> u32 {
        let leaf_bit: Vec<Option<usize>> = (0..self.num_vertices()).map(|x| self.is_leaf(x).then_some(x)).collect();
        subtree_mask(&self.adjacency, &leaf_bit, v, u)
    }

    /// The internal edge `(u, v)` realising a split, if present.
    pub fn edge_of_split(&self, split: u32) -> Option<(usize, usize)> {
        let s = self.space.normalize_split(split);
        self.edges().into_iter().find(|&(u, v)| !self.is_leaf(u) && !self.is_leaf(v) && self.space.normalize_split(self.side_mask(u, v)) == s)
    }

    pub fn has_split(&self, split: u32) -> bool {
        self.splits.binary_search(&self.space.normalize_split(split)).is_ok()
    }

    /// Tree obtained by contracting the internal edges carrying `splits`.
    pub fn contract(&self, splits: &[u32]) -> Result<PhyloTree> {
        let drop: BTreeSet<u32> = splits.iter().map(|&s| self.space.normalize_split(s)).collect();
        for s in &drop {
            if !self.has_split(*s) {
                return invalid(format!("{:?} is not an internal edge", self.space.labels_of(*s)));
            }
        }
        PhyloTree::from_splits(self.space, self.splits.iter().copied().filter(|s| !drop.contains(s)))
    }

    /// Whether `other` is obtained from `self` by contracting internal edges.
    pub fn refines(&self, other: &PhyloTree) -> bool {
        self.space == other.space && other.splits.iter().all(|s| self.has_split(*s))
    }

    /// Whether the split system is closed under `i ↦ -i`.
    pub fn is_negation_closed(&self) -> bool {
        self.space.signed && self.splits.iter().all(|&s| self.has_split(self.space.negate(s)))
    }

    /// Orbits of internal edges under `i ↦ -i`, each as a sorted list of
    /// canonical splits (length one for self-symmetric edges).
    pub fn split_orbits(&self) -> Result<Vec<Vec<u32>>> {
        if !self.is_negation_closed() {
            return Err(Error::NotAxiallySymmetric(self.key.clone()));
        }
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for &s in &self.splits {
            if seen.contains(&s) {
                continue;
            }
            let t = self.space.normalize_split(self.space.negate(s));
            seen.insert(s);
            seen.insert(t);
            if t == s {
                out.push(vec![s]);
            } else {
                out.push(vec![s.min(t), s.max(t)]);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Path-sum distance between two leaves under the given split lengths.
    pub fn leaf_distance<T>(&self, a: i32, b: i32, length: impl Fn(u32) -> T) -> Option<T>
    where
        T: std::ops::Add<Output = T> + Default,
    {
        let ba = self.space.bit(a)?;
        let bb = self.space.bit(b)?;
        let mut acc = T::default();
        for &s in &self.splits {
            if (s >> ba & 1) != (s >> bb & 1) {
                acc = acc + length(s);
            }
        }
        Some(acc)
    }

    /// Rendering of the split system with labels, e.g. `{1,2}|{3,4,5}`.
    pub fn split_strings(&self) -> Vec<String> {
        self.splits
            .iter()
            .map(|&s| {
                let a = self.space.labels_of(s);
                let b = self.space.labels_of(!s & self.space.full_mask());
                format!("{}|{}", fmt_set(&a), fmt_set(&b))
            })
            .collect()
    }
}

fn fmt_set(v: &[i32]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn canonical_key(space: LabelSpace, splits: &[u32]) -> String {
    let parts: Vec<String> = splits
        .iter()
        .map(|&s| {
            let l: Vec<String> = space.labels_of(s).iter().map(|x| x.to_string()).collect();
            l.join(",")
        })
        .collect();
    format!("{}[{}]", space, parts.join("|"))
}

fn subtree_mask(adj: &[Vec<usize>], leaf_bit: &[Option<usize>], start: usize, from: usize) -> u32 {
    let mut mask = 0u32;
    let mut stack = vec![(start, from)];
    while let Some((v, p)) = stack.pop() {
        if let Some(b) = leaf_bit[v] {
            mask |= 1 << b;
        }
        for &w in &adj[v] {
            if w != p {
                stack.push((w, v));
            }
        }
    }
    mask
}

/// Builds adjacency lists by refining a star one split at a time.
fn build_adjacency(space: LabelSpace, splits: &[u32]) -> Vec<Vec<usize>> {
    let nl = space.size();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nl + 1];
    for leaf in 0..nl {
        adj[leaf].push(nl);
        adj[nl].push(leaf);
    }
    let leaf_bit = |v: usize| if v < nl { Some(v) } else { None };
    // larger sides first keeps the search local, but any order works
    for &s in splits {
        let full = space.full_mask();
        let comp = !s & full;
        let mut placed = false;
        for v in nl..adj.len() {
            let lb: Vec<Option<usize>> = (0..adj.len()).map(leaf_bit).collect();
            let branches: Vec<(usize, u32)> = adj[v].iter().map(|&w| (w, subtree_mask(&adj, &lb, w, v))).collect();
            let inside: Vec<usize> = branches.iter().filter(|(_, m)| m & comp == 0).map(|(w, _)| *w).collect();
            let outside = branches.iter().filter(|(_, m)| m & s == 0).count();
            if inside.len() + outside != branches.len() || inside.len() < 2 || outside < 2 {
                continue;
            }
            let union: u32 = branches.iter().filter(|(_, m)| m & comp == 0).fold(0, |a, (_, m)| a | m);
            if union != s {
                continue;
            }
            let u = adj.len();
            adj.push(Vec::new());
            for w in inside {
                adj[v].retain(|&x| x != w);
                for x in adj[w].iter_mut() {
                    if *x == v {
                        *x = u;
                    }
                }
                adj[u].push(w);
            }
            adj[u].push(v);
            adj[v].push(u);
            placed = true;
            break;
        }
        debug_assert!(placed, "compatible split could not be placed");
    }
    for nb in adj.iter_mut() {
        nb.sort_unstable();
    }
    adj
}

/// The unique automorphism exchanging the leaves `i` and `-i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryInvolution {
    pub vertex_map: Vec<usize>,
    /// Orbits of internal edges, as canonical splits.
    pub orbits: Vec<Vec<u32>>,
    /// Number of internal edges of the tree.
    pub internal_edges: usize,
}

impl SymmetryInvolution {
    /// Number of ι-orbits on internal edges.
    pub fn k(&self) -> usize {
        let moved = self.orbits.iter().filter(|o| o.len() == 2).count() * 2;
        self.internal_edges - moved / 2
    }

    /// Internal vertices fixed by the involution.
    pub fn fixed_vertices(&self, tree: &PhyloTree) -> Vec<usize> {
        (tree.space().size()..tree.num_vertices()).filter(|&v| self.vertex_map[v] == v).collect()
    }
}

/// Computes ι for a tree on the signed label set.
pub fn symmetry_involution(tree: &PhyloTree) -> Result<SymmetryInvolution> {
    let space = tree.space();
    if !space.signed {
        return Err(Error::NotAxiallySymmetric(format!("{} has unsigned labels", tree.key())));
    }
    if !tree.is_negation_closed() {
        return Err(Error::NotAxiallySymmetric(tree.key().to_string()));
    }
    let nl = space.size();
    // each internal vertex is identified by the set of leaf masks of its branches
    let sig = |v: usize| -> Vec<u32> {
        let mut s: Vec<u32> = tree.adjacency()[v].iter().map(|&w| tree.side_mask(v, w)).collect();
        s.sort_unstable();
        s
    };
    let sigs: Vec<Vec<u32>> = (0..tree.num_vertices()).map(|v| if v < nl { Vec::new() } else { sig(v) }).collect();
    let mut vertex_map = vec![usize::MAX; tree.num_vertices()];
    for v in 0..nl {
        let l = space.label(v);
        vertex_map[v] = space.bit(-l).expect("signed space");
    }
    for v in nl..tree.num_vertices() {
        let mut img: Vec<u32> = sigs[v].iter().map(|&m| space.negate(m)).collect();
        img.sort_unstable();
        let w = (nl..tree.num_vertices()).find(|&w| sigs[w] == img).ok_or_else(|| Error::NotAxiallySymmetric(tree.key().to_string()))?;
        vertex_map[v] = w;
    }
    Ok(SymmetryInvolution { vertex_map, orbits: tree.split_orbits()?, internal_edges: tree.num_internal_edges() })
}

/// Contraction of the ι-orbit of the internal edge `split`.
pub fn symmetric_contract(tree: &PhyloTree, split: u32) -> Result<PhyloTree> {
    let space = tree.space();
    if !tree.has_split(split) {
        return invalid(format!("{:?} is a leaf edge or not an edge of the tree", space.labels_of(split)));
    }
    let inv = symmetry_involution(tree)?;
    let s = space.normalize_split(split);
    let orbit = inv.orbits.iter().find(|o| o.contains(&s)).ok_or_else(|| Error::Consistency("split missing from its own orbit list".into()))?;
    tree.contract(orbit)
}

/// Contraction of the ι-orbit of the tree edge `(u, v)`.
pub fn symmetric_contract_edge(tree: &PhyloTree, u: usize, v: usize) -> Result<PhyloTree> {
    if tree.is_leaf(u) || tree.is_leaf(v) {
        return invalid("cannot contract a leaf edge");
    }
    if !tree.adjacency()[u].contains(&v) {
        return invalid(format!("({u}, {v}) is not an edge"));
    }
    symmetric_contract(tree, tree.side_mask(u, v))
}
