use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::order::TermOrder;
use super::poly::{exp_degree, exp_div, exp_divides, exp_lcm, exp_mul, Exp, Ideal, Poly};
use crate::error::{invalid, Error, Result};
use crate::linalg::Q;

/// Limits for one Buchberger run: the number of S-pairs reduced and,
/// optionally, wall-clock time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbBudget {
    pub max_pairs: usize,
    pub max_millis: Option<u64>,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget { max_pairs: 200_000, max_millis: None }
    }
}

impl GbBudget {
    pub fn pairs(max_pairs: usize) -> Self {
        GbBudget { max_pairs, max_millis: None }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
}

/// Terms sorted in decreasing order.
#[derive(Clone, Debug)]
struct SPoly {
    terms: Vec<(Exp, Q)>,
    sugar: u32,
}

impl SPoly {
    fn from_poly(p: &Poly, ord: &TermOrder) -> Self {
        let mut terms: Vec<(Exp, Q)> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let sugar = p.total_degree();
        SPoly { terms, sugar }
    }

    fn to_poly(&self, nvars: usize) -> Poly {
        Poly::from_terms(nvars, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Exp {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, x) in self.terms.iter_mut() {
                    *x *= &inv;
                }
            }
        }
    }

    /// `self - c * x^m * g`.
    fn sub_mul(&self, c: &Q, m: &[u16], g: &SPoly, ord: &TermOrder) -> Vec<(Exp, Q)> {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(Exp, Q)> = g.terms.iter().map(|(e, x)| (exp_mul(e, m), -(x * c))).collect();
        while i < self.terms.len() || j < shifted.len() {
            if j == shifted.len() {
                out.push(self.terms[i].clone());
                i += 1;
            } else if i == self.terms.len() {
                out.push(shifted[j].clone());
                j += 1;
            } else {
                match ord.cmp(&self.terms[i].0, &shifted[j].0) {
                    Ordering::Greater => {
                        out.push(self.terms[i].clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(shifted[j].clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let s = &self.terms[i].1 + &shifted[j].1;
                        if !s.is_zero() {
                            out.push((self.terms[i].0.clone(), s));
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        out
    }
}

/// Full normal form of `f` modulo the (monic) reducers.
fn normal_form(f: &SPoly, reducers: &[&SPoly], ord: &TermOrder) -> SPoly {
    normal_form_until(f, reducers, ord, None).expect("no deadline")
}

/// As [`normal_form`], giving up (`None`) once `deadline` has passed.
fn normal_form_until(f: &SPoly, reducers: &[&SPoly], ord: &TermOrder, deadline: Option<Instant>) -> Option<SPoly> {
    let mut p = f.clone();
    let mut rem: Vec<(Exp, Q)> = Vec::new();
    let mut sugar = f.sugar;
    let mut steps = 0u32;
    while !p.is_zero() {
        steps = steps.wrapping_add(1);
        if steps.is_multiple_of(64) && deadline.is_some_and(|d| Instant::now() > d) {
            return None;
        }
        let (lm, lc) = p.terms[0].clone();
        if let Some(g) = reducers.iter().find(|g| exp_divides(g.lm(), &lm)) {
            let m = exp_div(&lm, g.lm());
            sugar = sugar.max(g.sugar + exp_degree(&m));
            let lc_g = &g.terms[0].1;
            let c = &lc / lc_g;
            p.terms = p.sub_mul(&c, &m, g, ord);
        } else {
            rem.push((lm, lc));
            p.terms.remove(0);
        }
    }
    Some(SPoly { terms: rem, sugar })
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    sugar: u32,
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Reduced Gröbner basis, monic, sorted by increasing leading monomial.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroebnerBasis {
    pub order: TermOrder,
    pub polys: Vec<Poly>,
    pub stats: GbStats,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant() && !self.polys[0].is_zero()
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        let sp: Vec<SPoly> = self.polys.iter().map(|p| SPoly::from_poly(p, &self.order)).collect();
        let refs: Vec<&SPoly> = sp.iter().collect();
        normal_form(&SPoly::from_poly(f, &self.order), &refs, &self.order).to_poly(self.nvars())
    }

    /// Reduces many polynomials against the same basis.
    pub fn reduce_all(&self, fs: &[Poly]) -> Vec<Poly> {
        let sp: Vec<SPoly> = self.polys.iter().map(|p| SPoly::from_poly(p, &self.order)).collect();
        let refs: Vec<&SPoly> = sp.iter().collect();
        fs.iter().map(|f| normal_form(&SPoly::from_poly(f, &self.order), &refs, &self.order).to_poly(self.nvars())).collect()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Exp> {
        self.polys.iter().map(|p| SPoly::from_poly(p, &self.order).lm().clone()).collect()
    }

    pub fn leading_term(&self, p: &Poly) -> Option<(Exp, Q)> {
        SPoly::from_poly(p, &self.order).terms.into_iter().next()
    }
}

pub fn groebner(ideal: &Ideal, order: &TermOrder) -> Result<GroebnerBasis> {
    groebner_with(&ideal.gens, order, GbBudget::default())
}

/// Buchberger's algorithm with the Gebauer–Möller criteria and sugar
/// selection, followed by interreduction.
pub fn groebner_with(gens: &[Poly], order: &TermOrder, budget: GbBudget) -> Result<GroebnerBasis> {
    let nvars = order.nvars();
    if gens.iter().any(|g| g.nvars() != nvars) {
        return invalid("generator variable count does not match the term order");
    }
    let mut stats = GbStats::default();
    let deadline = budget.max_millis.map(|ms| Instant::now() + Duration::from_millis(ms));
    let timed_out = |stats: &GbStats| Error::TimeLimit { millis: budget.max_millis.unwrap_or(0), pairs: stats.pairs_reduced };
    let mut store: Vec<SPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<SPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| SPoly::from_poly(g, order)).collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for mut f in inputs {
        let reducers: Vec<&SPoly> = store.iter().zip(&active).filter(|(_, &a)| a).map(|(s, _)| s).collect();
        f = normal_form_until(&f, &reducers, order, deadline).ok_or_else(|| timed_out(&stats))?;
        if f.is_zero() {
            continue;
        }
        f.make_monic();
        update(&mut store, &mut active, &mut pairs, f, &mut stats);
    }

    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
                    .then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .expect("nonempty pair list");
        let p = pairs.swap_remove(k);
        stats.pairs_reduced += 1;
        if stats.pairs_reduced > budget.max_pairs {
            return Err(Error::Cancelled { pairs: stats.pairs_reduced - 1, cap: budget.max_pairs });
        }
        if deadline.is_some_and(|d| Instant::now() > d) {
            return Err(timed_out(&stats));
        }
        let s = s_polynomial(&store[p.i], &store[p.j], &p, order);
        let reducers: Vec<&SPoly> = store.iter().zip(&active).filter(|(_, &a)| a).map(|(s, _)| s).collect();
        let mut h = normal_form_until(&s, &reducers, order, deadline).ok_or_else(|| timed_out(&stats))?;
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        h.make_monic();
        if h.lm().iter().all(|&x| x == 0) {
            // unit ideal
            store.push(h);
            active = vec![false; store.len()];
            *active.last_mut().expect("just pushed") = true;
            break;
        }
        update(&mut store, &mut active, &mut pairs, h, &mut stats);
    }

    let polys = interreduce(&store, &active, order, nvars);
    stats.basis_size = polys.len();
    Ok(GroebnerBasis { order: order.clone(), polys, stats })
}

fn s_polynomial(f: &SPoly, g: &SPoly, p: &Pair, ord: &TermOrder) -> SPoly {
    let mf = exp_div(&p.lcm, f.lm());
    let mg = exp_div(&p.lcm, g.lm());
    let a = SPoly { terms: f.terms.iter().map(|(e, c)| (exp_mul(e, &mf), c / &f.terms[0].1)).collect(), sugar: 0 };
    let terms = a.sub_mul(&g.terms[0].1.recip(), &mg, g, ord);
    SPoly { terms, sugar: p.sugar }
}

fn update(store: &mut Vec<SPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: SPoly, stats: &mut GbStats) {
    let hi = store.len();
    let hlm = h.lm().clone();
    let hs = h.sugar;
    store.push(h);
    active.push(true);

    let mut c: Vec<Pair> = (0..hi)
        .filter(|&g| active[g])
        .map(|g| {
            let lcm = exp_lcm(store[g].lm(), &hlm);
            let sugar = (store[g].sugar + exp_degree(&exp_div(&lcm, store[g].lm()))).max(hs + exp_degree(&exp_div(&lcm, &hlm)));
            Pair { i: g, j: hi, lcm, sugar }
        })
        .collect();
    stats.pairs_created += c.len();

    // chain criterion inside the new pairs
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = c.pop() {
        let cop = coprime(store[p.i].lm(), &hlm);
        let dominated = c.iter().chain(d.iter()).any(|q| exp_divides(&q.lcm, &p.lcm));
        if cop || !dominated {
            d.push(p);
        }
    }
    // product criterion
    let e: Vec<Pair> = d.into_iter().filter(|p| !coprime(store[p.i].lm(), &hlm)).collect();

    // old pairs made redundant by h
    pairs.retain(|p| {
        let l1 = exp_lcm(store[p.i].lm(), &hlm);
        let l2 = exp_lcm(store[p.j].lm(), &hlm);
        !(exp_divides(&hlm, &p.lcm) && l1 != p.lcm && l2 != p.lcm)
    });
    pairs.extend(e);

    for g in 0..hi {
        if active[g] && exp_divides(&hlm, store[g].lm()) {
            active[g] = false;
        }
    }
}

fn interreduce(store: &[SPoly], active: &[bool], ord: &TermOrder, nvars: usize) -> Vec<Poly> {
    let mut g: Vec<SPoly> = store.iter().zip(active).filter(|(_, &a)| a).map(|(s, _)| s.clone()).collect();
    g.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    // minimal basis
    let mut minimal: Vec<SPoly> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| j != k && exp_divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < k));
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<SPoly> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&SPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, s)| s).collect();
        let head = SPoly { terms: vec![minimal[k].terms[0].clone()], sugar: minimal[k].sugar };
        let tail = SPoly { terms: minimal[k].terms[1..].to_vec(), sugar: minimal[k].sugar };
        let mut r = normal_form(&tail, &others, ord);
        let mut terms = head.terms;
        terms.append(&mut r.terms);
        let mut p = SPoly { terms, sugar: head.sugar };
        p.make_monic();
        out.push(p);
    }
    out.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    out.iter().map(|s| s.to_poly(nvars)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn v(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn linear_disjoint_is_already_reduced() {
        let one = Poly::one(4);
        let f = v(4, 0).add(&v(4, 2)).sub(&one);
        let g = v(4, 1).add(&v(4, 3)).sub(&one);
        let gb = groebner_with(&[f.clone(), g.clone()], &TermOrder::grevlex(4), GbBudget::default()).unwrap();
        assert_eq!(gb.polys.len(), 2);
        assert!(gb.polys.contains(&f) && gb.polys.contains(&g));
    }

    #[test]
    fn unit_ideal() {
        let u = v(2, 0);
        let w = v(2, 1);
        let f = u.mul(&u);
        let g = u.mul(&w).sub(&Poly::one(2));
        let gb = groebner_with(&[f, g], &TermOrder::grevlex(2), GbBudget::default()).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.polys, vec![Poly::one(2)]);
    }

    #[test]
    fn twisted_cubic_members() {
        // (t, t^2, t^3): x^2 - y, xy - z
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let gens = [x.mul(&x).sub(&y), x.mul(&y).sub(&z)];
        let gb = groebner_with(&gens, &TermOrder::grevlex(3), GbBudget::default()).unwrap();
        assert!(gb.contains(&y.mul(&y).sub(&x.mul(&z))));
        assert!(!gb.contains(&y.sub(&z)));
        assert_eq!(gb.reduce(&x.mul(&x)), y.clone());
        let _ = q(0);
    }

    #[test]
    fn budget_cancels() {
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let gens = [x.mul(&x).sub(&y.mul(&z)), y.mul(&y).sub(&x.mul(&z)), z.mul(&z).sub(&x.mul(&y)).add(&x)];
        let r = groebner_with(&gens, &TermOrder::grevlex(3), GbBudget::pairs(1));
        assert!(matches!(r, Err(Error::Cancelled { .. })));
    }
}
