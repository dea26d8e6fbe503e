use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::poly::{Ideal, Poly};
use crate::error::{invalid, Result};
use crate::fans::index::{IndexSetD, Kind};
use crate::linalg::Q;

/// A flag complex given by its vertices and edges (compatible pairs), with a
/// positive compatibility degree on every ordered non-edge. Degrees need not
/// be symmetric: in type C a diameter can cross both members of a mirror pair
/// while the pair's representative crosses the diameter once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilitySpec {
    pub vertices: Vec<String>,
    /// Compatible pairs `(i, j)`, `i < j`.
    pub edges: Vec<(usize, usize)>,
    /// Degree `a_{i,j}` for every ordered non-edge `i != j`.
    pub degrees: BTreeMap<(usize, usize), u32>,
}

impl CompatibilitySpec {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>, degrees: BTreeMap<(usize, usize), u32>) -> Result<Self> {
        let n = vertices.len();
        let mut compat = vec![vec![false; n]; n];
        for &(i, j) in &edges {
            if i >= n || j >= n || i == j {
                return invalid(format!("bad edge ({i}, {j})"));
            }
            compat[i][j] = true;
            compat[j][i] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                match degrees.get(&(i, j)) {
                    Some(&a) if compat[i][j] => return invalid(format!("degree {a} given on compatible pair ({i}, {j})")),
                    Some(0) => return invalid(format!("degree of ({i}, {j}) must be positive")),
                    None if !compat[i][j] => return invalid(format!("missing degree for non-edge ({i}, {j})")),
                    _ => {}
                }
            }
        }
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        edges.sort_unstable();
        edges.dedup();
        Ok(CompatibilitySpec { vertices, edges, degrees })
    }

    /// All degrees equal to one on the complement of `edges`.
    pub fn unit_degrees(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let mut degrees = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && !edges.contains(&(i, j)) && !edges.contains(&(j, i)) {
                    degrees.insert((i, j), 1);
                }
            }
        }
        Self::new(vertices, edges, degrees)
    }
}

/// `R_i = u_i + ∏_{j incompatible with i} u_j^{a_{i,j}} - 1`, one per vertex.
pub fn binary_ideal(spec: &CompatibilitySpec) -> Ideal {
    let n = spec.vertices.len();
    let gens = (0..n)
        .map(|i| {
            let mut e = vec![0u16; n];
            for j in 0..n {
                if let Some(&a) = spec.degrees.get(&(i, j)) {
                    e[j] = a as u16;
                }
            }
            Poly::var(n, i).add(&Poly::monomial(n, e, Q::one())).sub(&Poly::one(n))
        })
        .collect();
    Ideal { vars: spec.vertices.clone(), gens }
}

pub fn var_name(i: i32, j: i32) -> String {
    format!("u_{{{i},{j}}}")
}

/// Compatibility structure of the standard polygon: diagonals for type A,
/// mirror pairs of diagonals for type C with degree equal to the number of
/// diagonals in `{d_{k,l}, d_{-k,-l}}` crossing `d_{i,j}`.
pub fn polygon_spec(index: &IndexSetD) -> Result<CompatibilitySpec> {
    let names: Vec<String> = index.pairs.iter().map(|&(i, j)| var_name(i, j)).collect();
    let m = index.len();
    let mut edges = Vec::new();
    let mut degrees = BTreeMap::new();
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let (i, j) = index.pairs[a];
            let (k, l) = index.pairs[b];
            let da = index.diagonal(i, j);
            let mut count = u32::from(da.crosses(&index.diagonal(k, l)));
            if index.kind == Kind::C {
                let mirror = index.diagonal(-k, -l);
                if mirror != index.diagonal(k, l) {
                    count += u32::from(da.crosses(&mirror));
                }
            }
            if count == 0 {
                if a < b {
                    edges.push((a, b));
                }
            } else {
                degrees.insert((a, b), count);
            }
        }
    }
    CompatibilitySpec::new(names, edges, degrees)
}

pub fn ideal_a(n: usize) -> Result<Ideal> {
    if n < 4 {
        return invalid(format!("type A ideal needs n >= 4, got {n}"));
    }
    Ok(binary_ideal(&polygon_spec(&IndexSetD::new(Kind::A, n)?)?))
}

pub fn ideal_c(n: usize) -> Result<Ideal> {
    if n < 3 {
        return invalid(format!("type C ideal needs n >= 3, got {n}"));
    }
    Ok(binary_ideal(&polygon_spec(&IndexSetD::new(Kind::C, n)?)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn four_cycle() {
        let names: Vec<String> = (1..=4).map(|i| format!("u{i}")).collect();
        let spec = CompatibilitySpec::unit_degrees(names, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let i = binary_ideal(&spec);
        let one = Poly::one(4);
        assert_eq!(i.gens[0], Poly::var(4, 0).add(&Poly::var(4, 2)).sub(&one));
        assert_eq!(i.gens[1], Poly::var(4, 1).add(&Poly::var(4, 3)).sub(&one));
    }

    #[test]
    fn example_generators_of_type_c() {
        let i = ideal_c(3).unwrap();
        assert_eq!(i.gens.len(), 6);
        let one = Poly::one(6);
        let v = |k| Poly::var(6, k);
        // u_{1,-1} + u_{2,-2} u_{3,-3} u_{2,-3}^2 - 1
        let r1 = v(0).add(&v(1).mul(&v(2)).mul(&v(5).pow(2))).sub(&one);
        assert_eq!(i.gens[0], r1);
        // u_{1,3} + u_{2,-2} u_{1,-2} u_{2,-3} - 1
        let r4 = v(3).add(&v(1).mul(&v(4)).mul(&v(5))).sub(&one);
        assert_eq!(i.gens[3], r4);
        assert_eq!(i.gens[0].eval(&[q(1), q(0), q(0), q(0), q(0), q(0)]), q(0));
    }

    #[test]
    fn type_a_four() {
        let i = ideal_a(4).unwrap();
        assert_eq!(i.gens[0], i.gens[1]);
        assert!(CompatibilitySpec::new(vec!["a".into(), "b".into()], vec![], BTreeMap::new()).is_err());
    }
}
