use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::symtrees::polygon::Diagonal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    A,
    C,
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Kind::A),
            "c" => Ok(Kind::C),
            other => invalid(format!("unknown kind {other:?} (expected a or c)")),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::A => "A",
            Kind::C => "C",
        })
    }
}

/// Successor of a label on the standard polygon: `i+1` cyclically on `[n]`
/// for type A; on the signed set, `sgn(i)(|i|+1)` with `n ↦ -1`, `-n ↦ 1`.
pub fn successor(kind: Kind, n: usize, i: i32) -> i32 {
    let n = n as i32;
    match kind {
        Kind::A => i % n + 1,
        Kind::C => {
            if i == n {
                -1
            } else if i == -n {
                1
            } else {
                i.signum() * (i.abs() + 1)
            }
        }
    }
}

/// Coordinates of the u-variables: one per diagonal (type A) or per pair of
/// mirror diagonals (type C) of the standard polygon.
///
/// Type C pairs start with `(i,-i)` for `i = 1..n` followed by the remaining
/// pairs sorted by `i` and then by the position of `j` in `(1,…,n,-1,…,-n)`;
/// for `n = 3` this is `(1,-1),(2,-2),(3,-3),(1,3),(1,-2),(2,-3)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawIndexSet")]
pub struct IndexSetD {
    pub kind: Kind,
    pub n: usize,
    pub pairs: Vec<(i32, i32)>,
    #[serde(skip)]
    lookup: HashMap<(i32, i32), usize>,
}

impl IndexSetD {
    pub fn new(kind: Kind, n: usize) -> Result<Self> {
        let pairs = match kind {
            Kind::A => {
                if n < 4 {
                    return invalid(format!("type A index set needs n >= 4, got {n}"));
                }
                let mut v = Vec::new();
                for i in 1..=n as i32 {
                    for j in i + 1..=n as i32 {
                        if successor(kind, n, i) != j && successor(kind, n, j) != i {
                            v.push((i, j));
                        }
                    }
                }
                v
            }
            Kind::C => {
                if n < 3 {
                    return invalid(format!("type C index set needs n >= 3, got {n}"));
                }
                let ni = n as i32;
                let pos = |j: i32| if j > 0 { j - 1 } else { ni - j - 1 };
                let mut v: Vec<(i32, i32)> = (1..=ni).map(|i| (i, -i)).collect();
                let mut rest = Vec::new();
                for i in 1..=ni {
                    for j in (1..=ni).chain((1..=ni).map(|x| -x)) {
                        if j == i || j == -i || i > j.abs() {
                            continue;
                        }
                        if successor(kind, n, i) == j || successor(kind, n, j) == i {
                            continue;
                        }
                        rest.push((i, j));
                    }
                }
                rest.sort_by_key(|&(i, j)| (i, pos(j)));
                v.extend(rest);
                v
            }
        };
        let lookup = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        Ok(IndexSetD { kind, n, pairs, lookup })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn successor(&self, i: i32) -> i32 {
        successor(self.kind, self.n, i)
    }

    /// Representative of `{i,j}` (and, in type C, of its mirror `{-i,-j}`).
    pub fn normalize(&self, i: i32, j: i32) -> (i32, i32) {
        match self.kind {
            Kind::A => (i.min(j), i.max(j)),
            Kind::C => {
                for (a, b) in [(i, j), (j, i), (-i, -j), (-j, -i)] {
                    if a > 0 && a <= b.abs() {
                        return (a, b);
                    }
                }
                (i, j)
            }
        }
    }

    /// Coordinate index of the diagonal joining vertices `i` and `j`.
    pub fn index_of(&self, i: i32, j: i32) -> Option<usize> {
        self.lookup.get(&self.normalize(i, j)).copied()
    }

    /// Label order around the standard polygon.
    pub fn standard_ordering(&self) -> Vec<i32> {
        let n = self.n as i32;
        match self.kind {
            Kind::A => (1..=n).collect(),
            Kind::C => (1..=n).chain((1..=n).map(|x| -x)).collect(),
        }
    }

    /// Polygon diagonal for a pair: vertex `i` sits between edge `i` and
    /// edge `i⁺` of the standard polygon.
    pub fn diagonal(&self, i: i32, j: i32) -> Diagonal {
        let alpha = self.standard_ordering();
        let p = |x: i32| alpha.iter().position(|&y| y == x).expect("label on the polygon");
        Diagonal::new(p(i), p(j), alpha.len()).expect("index pairs are diagonals")
    }

    pub fn pair_label(&self, k: usize) -> String {
        let (i, j) = self.pairs[k];
        format!("{i},{j}")
    }
}

#[derive(Deserialize)]
struct RawIndexSet {
    kind: Kind,
    n: usize,
    pairs: Vec<(i32, i32)>,
}

impl TryFrom<RawIndexSet> for IndexSetD {
    type Error = Error;
    fn try_from(raw: RawIndexSet) -> Result<Self> {
        let d = IndexSetD::new(raw.kind, raw.n)?;
        if d.pairs != raw.pairs {
            return invalid("index pairs do not match the standard order");
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_c_three_order() {
        let d = IndexSetD::new(Kind::C, 3).unwrap();
        assert_eq!(d.pairs, vec![(1, -1), (2, -2), (3, -3), (1, 3), (1, -2), (2, -3)]);
        assert_eq!(d.index_of(-1, 2), Some(4));
        assert_eq!(d.index_of(-3, -1), Some(3));
    }

    #[test]
    fn sizes() {
        for n in 4..9 {
            assert_eq!(IndexSetD::new(Kind::A, n).unwrap().len(), n * (n - 3) / 2);
        }
        for n in 3..7 {
            assert_eq!(IndexSetD::new(Kind::C, n).unwrap().len(), n * (n - 1));
        }
        assert!(IndexSetD::new(Kind::A, 3).is_err());
    }

    #[test]
    fn successor_wraps() {
        assert_eq!(successor(Kind::C, 3, 3), -1);
        assert_eq!(successor(Kind::C, 3, -3), 1);
        assert_eq!(successor(Kind::C, 3, -1), -2);
        assert_eq!(successor(Kind::A, 5, 5), 1);
    }
}
