use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::linalg::Q;

/// Exponent vector.
pub type Exp = Vec<u16>;

pub fn exp_mul(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exp_divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn exp_div(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn exp_lcm(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn exp_degree(a: &[u16]) -> u32 {
    a.iter().map(|&x| x as u32).sum()
}

/// Sparse polynomial over the rationals in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PolyRepr", try_from = "PolyRepr")]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exp, Q>,
}

/// Serialized form: exponent vectors with coefficients written as `p/q` strings.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<(Exp, String)>,
}

impl From<Poly> for PolyRepr {
    fn from(p: Poly) -> Self {
        PolyRepr { nvars: p.nvars, terms: p.terms.into_iter().map(|(e, c)| (e, c.to_string())).collect() }
    }
}

impl TryFrom<PolyRepr> for Poly {
    type Error = crate::Error;
    fn try_from(r: PolyRepr) -> Result<Self> {
        let mut p = Poly::zero(r.nvars);
        for (e, c) in r.terms {
            if e.len() != r.nvars {
                return invalid("exponent vector length does not match nvars");
            }
            let c: Q = c.parse().map_err(|_| crate::Error::InvalidArgument(format!("bad coefficient {c:?}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Q::one())
    }

    pub fn monomial(nvars: usize, exp: Exp, c: Q) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must match the variable count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exp, Q)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn coeff(&self, exp: &[u16]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exp: Exp, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                p.add_term(exp_mul(e, f), c * d);
            }
        }
        p
    }

    pub fn mul_monomial(&self, exp: &[u16], c: &Q) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (exp_mul(e, exp), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut p = Poly::one(self.nvars);
        for _ in 0..k {
            p = p.mul(self);
        }
        p
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| exp_degree(e)).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// `u_i ↦ s_i u_i` for signs `s_i = ±1`.
    pub fn twist(&self, signs: &[i8]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let odd = e.iter().zip(signs).filter(|(&k, &s)| s < 0 && k % 2 == 1).count();
                    (e.clone(), if odd % 2 == 1 { -c.clone() } else { c.clone() })
                })
                .collect(),
        }
    }

    /// Weight of each term under `w`; the minimum over all terms.
    pub fn min_weight(&self, w: &[Q]) -> Option<Q> {
        self.terms.keys().map(|e| weight_of(e, w)).min()
    }

    /// Sum of the terms of minimal `w`-weight (min convention).
    pub fn initial_form(&self, w: &[Q]) -> Poly {
        let Some(m) = self.min_weight(w) else {
            return self.clone();
        };
        Poly { nvars: self.nvars, terms: self.terms.iter().filter(|(e, _)| weight_of(e, w) == m).map(|(e, c)| (e.clone(), c.clone())).collect() }
    }

    /// All coefficients strictly positive (and the polynomial nonzero).
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| c.is_positive())
    }

    /// Adds a trailing variable `h` and homogenises.
    pub fn homogenize(&self) -> Poly {
        let d = self.total_degree();
        let terms = self.terms.iter().map(|(e, c)| {
            let mut f = e.clone();
            f.push((d - exp_degree(e)) as u16);
            (f, c.clone())
        });
        Poly::from_terms(self.nvars + 1, terms)
    }

    /// Sets the last variable to 1 and drops it.
    pub fn dehomogenize(&self) -> Poly {
        let terms = self.terms.iter().map(|(e, c)| (e[..e.len() - 1].to_vec(), c.clone()));
        Poly::from_terms(self.nvars - 1, terms)
    }

    /// Appends `k` unused variables.
    pub fn extend_vars(&self, k: usize) -> Poly {
        Poly {
            nvars: self.nvars + k,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = e.clone();
                    f.extend(std::iter::repeat_n(0, k));
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Multiplies through so that coefficients are coprime integers with a
    /// positive coefficient on the largest exponent in map order.
    pub fn primitive(&self) -> Poly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let den = self.terms.values().fold(num_bigint::BigInt::one(), |a, c| a.lcm(c.denom()));
        let nums: Vec<num_bigint::BigInt> = self.terms.values().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
        let g = nums.iter().fold(num_bigint::BigInt::zero(), |a, x| a.gcd(x));
        let last_sign = self.terms.values().next_back().map(|c| c.is_negative()).unwrap_or(false);
        let mut f = Q::new(den, g);
        if last_sign {
            f = -f;
        }
        self.scale(&f)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> =
                e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{}", names[i], x) }).collect();
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

pub fn weight_of(e: &[u16], w: &[Q]) -> Q {
    e.iter().zip(w).filter(|(&k, _)| k > 0).fold(Q::zero(), |acc, (&k, x)| acc + x * Q::from_integer(k.into()))
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.fmt_with(&names))
    }
}

/// A list of generators over named variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ideal {
    pub vars: Vec<String>,
    pub gens: Vec<Poly>,
}

impl Ideal {
    pub fn new(vars: Vec<String>, gens: Vec<Poly>) -> Result<Self> {
        if gens.iter().any(|g| g.nvars() != vars.len()) {
            return invalid("generator variable count does not match the variable list");
        }
        Ok(Ideal { vars, gens })
    }

    /// Variables named `x0, x1, …`.
    pub fn anonymous(nvars: usize, gens: Vec<Poly>) -> Self {
        Ideal { vars: (0..nvars).map(|i| format!("x{i}")).collect(), gens }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn twist(&self, signs: &[i8]) -> Ideal {
        Ideal { vars: self.vars.clone(), gens: self.gens.iter().map(|g| g.twist(signs)).collect() }
    }

    pub fn display_gens(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.fmt_with(&self.vars)).collect()
    }
}
