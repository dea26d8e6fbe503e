//! Real points of initial varieties from degenerating point configurations.
//!
//! A tree with positive edge lengths is realised by points `x_i(t)` in
//! `ℚ[t]` whose pairwise differences have valuation equal to the depth of the
//! lowest common ancestor in a rooted copy of the tree. The cross ratios then
//! have valuation `½` times the second difference of the tree metric, and
//! their leading coefficients form a point of the initial variety at that
//! weight. Only leading data is tracked: the difference of two leaves has
//! leading coefficient `off(c_p) - off(c_q)`, where `c_p, c_q` are the children
//! of the common ancestor on the way to `p` and `q`.
//!
//! Type C configurations must satisfy `x_{-i} = g(x_i)` for a real involution
//! `g`, which is conjugate to `x ↦ -x` (reflection) or `x ↦ -1/x` (rotation).

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::signs::SignPattern;
use crate::error::{Error, Result};
use crate::fans::cone::ConeZ;
use crate::fans::index::{IndexSetD, Kind};
use crate::linalg::{q, Q};
use crate::symtrees::tree::{symmetry_involution, PhyloTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Unconstrained points (type A).
    Line,
    /// `x_{-i} = -x_i`.
    Reflection,
    /// `x_{-i} = -1/x_i`.
    Rotation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadingPoint {
    pub signs: SignPattern,
    #[serde(with = "crate::linalg::q_strings")]
    pub point: Vec<Q>,
    pub model: Model,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub tries: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { tries: 256, seed: 0x5eed }
    }
}

struct Rooted {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<i64>,
    root: usize,
}

fn root_tree(tree: &PhyloTree, root: usize, virtual_edge: Option<(usize, usize)>, len: &dyn Fn(usize, usize) -> i64) -> Rooted {
    let nv = tree.num_vertices();
    let total = nv + usize::from(virtual_edge.is_some());
    let mut parent = vec![None; total];
    let mut children = vec![Vec::new(); total];
    let mut depth = vec![0i64; total];
    let mut seen = vec![false; total];
    let mut queue = VecDeque::new();
    seen[root] = true;
    if let Some((u, v)) = virtual_edge {
        let half = len(u, v) / 2;
        for x in [u, v] {
            parent[x] = Some(root);
            children[root].push(x);
            depth[x] = half;
            seen[x] = true;
            queue.push_back(x);
        }
    } else {
        queue.push_back(root);
    }
    while let Some(v) = queue.pop_front() {
        for &c in &tree.adjacency()[v] {
            if !seen[c] {
                seen[c] = true;
                parent[c] = Some(v);
                children[v].push(c);
                depth[c] = depth[v] + if tree.is_leaf(c) { 1 } else { len(v, c) };
                queue.push_back(c);
            }
        }
    }
    Rooted { parent, children, depth, root }
}

impl Rooted {
    /// `(depth of the common ancestor, child toward a, child toward b)`.
    fn meet(&self, a: usize, b: usize) -> (i64, usize, usize) {
        let mut path_a = vec![a];
        while let Some(p) = self.parent[*path_a.last().unwrap()] {
            path_a.push(p);
        }
        let mut prev = b;
        let mut cur = b;
        loop {
            if let Some(pos) = path_a.iter().position(|&x| x == cur) {
                return (self.depth[cur], path_a[pos - 1], prev);
            }
            prev = cur;
            cur = self.parent[cur].expect("leaves share the root");
        }
    }
}

/// Edge lengths giving valuations `scale · w` with `w` the sum of the
/// primitive rays: orbit `k` gets `4L / scale_k` (`L` the lcm of scales), so
/// every length is even and the valuation vector is `2L · w`.
fn lengths(cone: &ConeZ) -> (BTreeMap<u32, i64>, i64) {
    let l = cone.scale.iter().fold(1i64, |a, &s| a.lcm(&s));
    let mut out = BTreeMap::new();
    for (orbit, &s) in cone.orbits.iter().zip(&cone.scale) {
        for &split in orbit {
            out.insert(split, 4 * l / s);
        }
    }
    (out, 2 * l)
}

fn distinct_ints(rng: &mut ChaCha8Rng, k: usize) -> Vec<i64> {
    let r = 2 * k as i64 + 2;
    let mut pool: Vec<i64> = (-r..=r).filter(|&x| x != 0).collect();
    pool.shuffle(rng);
    pool.truncate(k);
    pool
}

/// Distinct sign patterns (with witnessing points) among leading
/// coefficients of random realisations of the cone's tree.
pub fn leading_points(tree: &PhyloTree, cone: &ConeZ, opts: SearchOptions) -> Result<Vec<LeadingPoint>> {
    let index = IndexSetD::new(cone.kind, cone.n)?;
    let (lens, factor) = lengths(cone);
    let space = tree.space();
    let len = |u: usize, v: usize| -> i64 {
        let s = space.normalize_split(tree.side_mask(u, v));
        *lens.get(&s).unwrap_or(&0)
    };
    let target: Vec<i64> = {
        let mut w = vec![0i64; index.len()];
        for r in &cone.rays {
            for (a, b) in w.iter_mut().zip(r) {
                *a += b * factor;
            }
        }
        w
    };
    let leaf = |l: i32| tree.leaf_vertex(l).expect("leaf label");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut found: BTreeMap<SignPattern, LeadingPoint> = BTreeMap::new();

    let mut setups: Vec<(Model, Rooted, Vec<usize>)> = Vec::new();
    match cone.kind {
        Kind::A => {
            let root = (space.size()..tree.num_vertices()).next().ok_or_else(|| Error::Consistency("tree without internal vertex".into()))?;
            let ident: Vec<usize> = (0..tree.num_vertices()).collect();
            setups.push((Model::Line, root_tree(tree, root, None, &len), ident));
        }
        Kind::C => {
            let inv = symmetry_involution(tree)?;
            let fixed = inv.fixed_vertices(tree);
            let mut iota = inv.vertex_map.clone();
            if fixed.is_empty() {
                let (u, v) = tree
                    .edges()
                    .into_iter()
                    .find(|&(u, v)| inv.vertex_map[u] == v)
                    .ok_or_else(|| Error::Consistency(format!("{} has neither a fixed vertex nor a flipped edge", tree.key())))?;
                let root = tree.num_vertices();
                iota.push(root);
                for model in [Model::Reflection, Model::Rotation] {
                    setups.push((model, root_tree(tree, root, Some((u, v)), &len), iota.clone()));
                }
            } else {
                let end = *fixed.iter().find(|&&v| tree.adjacency()[v].iter().filter(|w| fixed.contains(w)).count() <= 1).expect("the fixed set is a path");
                setups.push((Model::Reflection, root_tree(tree, end, None, &len), iota.clone()));
                if fixed.len() == 1 {
                    setups.push((Model::Rotation, root_tree(tree, end, None, &len), iota));
                }
            }
        }
    }

    let labels = index.standard_ordering();
    for (model, rooted, iota) in &setups {
        for _ in 0..opts.tries {
            let off = match model {
                Model::Line => line_offsets(rooted, &mut rng),
                Model::Reflection => reflection_offsets(rooted, iota, &mut rng),
                Model::Rotation => rotation_offsets(rooted, iota, &mut rng),
            };
            let mut point = Vec::with_capacity(index.len());
            for (k, &(i, j)) in index.pairs.iter().enumerate() {
                let (ip, jp) = (index.successor(i), index.successor(j));
                let diff = |a: i32, b: i32| {
                    let (d, ca, cb) = rooted.meet(leaf(a), leaf(b));
                    (d, &off[ca] - &off[cb])
                };
                let (v1, c1) = diff(i, jp);
                let (v2, c2) = diff(ip, j);
                let (v3, c3) = diff(i, j);
                let (v4, c4) = diff(ip, jp);
                if v1 + v2 - v3 - v4 != target[k] {
                    return Err(Error::Consistency(format!("valuation of u_{{{i},{j}}} is {} instead of {} on {}", v1 + v2 - v3 - v4, target[k], tree.key())));
                }
                point.push(c1 * c2 / (c3 * c4));
            }
            debug_assert!(labels.len() == space.size());
            let signs = SignPattern::new(point.iter().map(|c| if c.is_positive() { 1 } else { -1 }).collect())?;
            found.entry(signs.clone()).or_insert(LeadingPoint { signs, point, model: *model });
        }
    }
    Ok(found.into_values().collect())
}

fn line_offsets(r: &Rooted, rng: &mut ChaCha8Rng) -> Vec<Q> {
    let mut off = vec![Q::zero(); r.parent.len()];
    for ch in &r.children {
        for (&c, v) in ch.iter().zip(distinct_ints(rng, ch.len())) {
            off[c] = q(v);
        }
    }
    off
}

/// Pairs of swapped children below a fixed node, plus the fixed child if any.
fn split_children(ch: &[usize], iota: &[usize]) -> (Vec<(usize, usize)>, Option<usize>) {
    let mut pairs = Vec::new();
    let mut fixed = None;
    for &c in ch {
        if iota[c] == c {
            fixed = Some(c);
        } else if c < iota[c] {
            pairs.push((c, iota[c]));
        }
    }
    (pairs, fixed)
}

fn reflection_offsets(r: &Rooted, iota: &[usize], rng: &mut ChaCha8Rng) -> Vec<Q> {
    let mut off = vec![Q::zero(); r.parent.len()];
    let mut done = vec![false; r.parent.len()];
    let mut queue = VecDeque::from([r.root]);
    while let Some(v) = queue.pop_front() {
        let ch = &r.children[v];
        queue.extend(ch.iter().copied());
        if done[v] {
            continue;
        }
        if iota[v] == v {
            let (pairs, _) = split_children(ch, iota);
            let mags: Vec<i64> = distinct_ints(rng, pairs.len()).into_iter().map(|x| x.abs()).collect();
            let mut mags = mags;
            dedup_magnitudes(&mut mags);
            for ((a, b), m) in pairs.into_iter().zip(mags) {
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                off[a] = q(s * m);
                off[b] = q(-s * m);
            }
        } else {
            let vals = distinct_ints(rng, ch.len());
            for (&c, x) in ch.iter().zip(vals) {
                off[c] = q(x);
                off[iota[c]] = q(-x);
            }
            done[iota[v]] = true;
        }
    }
    off
}

fn dedup_magnitudes(mags: &mut [i64]) {
    let mut seen = HashSet::new();
    let mut next = mags.iter().copied().max().unwrap_or(0) + 1;
    for m in mags.iter_mut() {
        if !seen.insert(*m) {
            *m = next;
            seen.insert(next);
            next += 1;
        }
    }
}

fn rotation_offsets(r: &Rooted, iota: &[usize], rng: &mut ChaCha8Rng) -> Vec<Q> {
    let total = r.parent.len();
    let mut off = vec![Q::zero(); total];
    let mut scale = vec![Q::zero(); total];
    let (pairs, _) = split_children(&r.children[r.root], iota);
    loop {
        let mut vals = HashSet::new();
        let mut ok = true;
        for &(a, b) in &pairs {
            let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let rho = Q::new(num.into(), rng.gen_range(1i64..=9).into());
            let img = -rho.recip();
            ok &= vals.insert(rho.clone()) && vals.insert(img.clone());
            scale[a] = &rho * &rho;
            off[a] = rho;
            off[b] = img;
        }
        if ok {
            break;
        }
    }
    let mut done = vec![false; total];
    let mut queue: VecDeque<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    while let Some(v) = queue.pop_front() {
        let ch = r.children[v].clone();
        queue.extend(ch.iter().copied());
        if done[v] {
            continue;
        }
        let s = scale[v].clone();
        let vals = distinct_ints(rng, ch.len());
        for (&c, x) in ch.iter().zip(vals) {
            off[c] = q(x);
            off[iota[c]] = q(x) / &s;
            scale[c] = s.clone();
        }
        done[iota[v]] = true;
    }
    off
}
