use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Monomial order: compare by each weight row in turn (larger weight is
/// larger), then by graded reverse lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    nvars: usize,
    rows: Vec<Vec<i64>>,
}

impl TermOrder {
    pub fn grevlex(nvars: usize) -> Self {
        TermOrder { nvars, rows: Vec::new() }
    }

    /// Weight rows refined by grevlex. The result must be a well-order: either
    /// every row is nonnegative, or the first row is strictly positive.
    pub fn weighted(nvars: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != nvars) {
            return invalid("weight row length does not match the variable count");
        }
        let nonneg = rows.iter().all(|r| r.iter().all(|&x| x >= 0));
        let first_positive = rows.first().is_some_and(|r| r.iter().all(|&x| x > 0));
        if !(nonneg || first_positive) {
            return invalid("weight rows do not define a well-order");
        }
        Ok(TermOrder { nvars, rows })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        for r in &self.rows {
            let wa: i64 = r.iter().zip(a).map(|(x, &e)| x * e as i64).sum();
            let wb: i64 = r.iter().zip(b).map(|(x, &e)| x * e as i64).sum();
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        let da: u32 = a.iter().map(|&x| x as u32).sum();
        let db: u32 = b.iter().map(|&x| x as u32).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..a.len()).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => {}
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let o = TermOrder::grevlex(3);
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 0], &[0, 0, 1]), Ordering::Less);
    }

    #[test]
    fn weights_first() {
        let o = TermOrder::weighted(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(o.cmp(&[5, 0], &[0, 1]), Ordering::Less);
        assert!(TermOrder::weighted(2, vec![vec![-1, 0]]).is_err());
        assert!(TermOrder::weighted(2, vec![vec![1, 1], vec![-1, 0]]).is_ok());
    }
}
