use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::degenerate::LeadingPoint;
use super::groebner::{GbBudget, GbStats, GroebnerBasis};
use super::initial::initial_ideal_with;
use super::poly::{weight_of, Exp, Ideal, Poly};
use super::signs::{sign_twist, SignPattern};
use crate::error::{invalid, Result};
use crate::linalg::{nonneg_solution, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// A strictly positive zero of the twisted initial ideal.
    Member {
        #[serde(with = "crate::linalg::q_strings")]
        point: Vec<Q>,
    },
    /// An element of the twisted initial ideal with positive coefficients.
    NonMember {
        element: Poly,
    },
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Member { .. } => "member",
            Verdict::NonMember { .. } => "non-member",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member { .. })
    }

    pub fn is_non_member(&self) -> bool {
        matches!(self, Verdict::NonMember { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedOptions {
    pub budget: GbBudget,
    /// Largest total degree of the monomials combined by the positivity search.
    pub max_degree: u32,
}

impl Default for SignedOptions {
    fn default() -> Self {
        SignedOptions { budget: GbBudget::default(), max_degree: 4 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignedCertificate {
    pub verdict: Verdict,
    /// Reduced grevlex basis of `init_w ε_τ(I)`.
    pub basis: Vec<Poly>,
    pub stats: GbStats,
}

/// Decides whether `w` lies in the signed tropicalization `Trop_τ I`.
///
/// `hints` are real points of the untwisted initial variety (for example
/// from [`super::degenerate::leading_points`]); one with sign pattern `τ`
/// becomes a positive zero after twisting. Failing that, a positive element
/// is sought among the basis and then among nonnegative combinations of
/// monomials of equal `w`-weight.
pub fn certify_signed(ideal: &Ideal, tau: &SignPattern, w: &[Q], hints: &[LeadingPoint], opts: SignedOptions) -> Result<SignedCertificate> {
    let twisted = sign_twist(ideal, tau)?;
    let init = initial_ideal_with(&twisted, w, opts.budget)?;
    let gb = init.gb;
    let done = |verdict| Ok(SignedCertificate { verdict, basis: gb.polys.clone(), stats: gb.stats });
    if let Some(g) = gb.polys.iter().find(|g| g.is_positive() || g.neg().is_positive()) {
        let element = if g.is_positive() { g.clone() } else { g.neg() };
        return done(Verdict::NonMember { element });
    }
    for h in hints.iter().filter(|h| &h.signs == tau) {
        let point: Vec<Q> = h.point.iter().zip(tau.as_slice()).map(|(x, &s)| if s < 0 { -x.clone() } else { x.clone() }).collect();
        if verify_positive_zero(&gb.polys, &point) {
            return done(Verdict::Member { point });
        }
    }
    if let Some(element) = positive_element(&gb, w, opts.max_degree)? {
        return done(Verdict::NonMember { element });
    }
    done(Verdict::Inconclusive)
}

pub fn verify_positive_zero(gens: &[Poly], point: &[Q]) -> bool {
    point.iter().all(|x| x.is_positive()) && gens.iter().all(|g| g.eval(point).is_zero())
}

/// An element with positive coefficients, searched weight class by weight
/// class: nonnegative `c` with `Σ c = 1` and `Σ c_m NF(m) = 0` is an exact
/// LP feasibility problem. The initial ideal is `w`-homogeneous, so if it
/// contains a positive element it contains a `w`-homogeneous one.
pub fn positive_element(gb: &GroebnerBasis, w: &[Q], max_degree: u32) -> Result<Option<Poly>> {
    let n = gb.nvars();
    if w.len() != n {
        return invalid("weight length does not match the variable count");
    }
    if gb.is_unit() {
        return Ok(Some(Poly::one(n)));
    }
    let mut classes: BTreeMap<Q, Vec<Exp>> = BTreeMap::new();
    let mut checked: BTreeMap<Q, usize> = BTreeMap::new();
    for d in 0..=max_degree {
        for e in monomials_of_degree(n, d) {
            classes.entry(weight_of(&e, w)).or_default().push(e);
        }
        for (wt, mons) in &classes {
            if checked.get(wt) == Some(&mons.len()) {
                continue;
            }
            checked.insert(wt.clone(), mons.len());
            if let Some(f) = solve_class(gb, mons) {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

fn solve_class(gb: &GroebnerBasis, mons: &[Exp]) -> Option<Poly> {
    let n = gb.nvars();
    let nfs = gb.reduce_all(&mons.iter().map(|e| Poly::monomial(n, e.clone(), Q::one())).collect::<Vec<_>>());
    let mut rows: BTreeMap<Exp, Vec<Q>> = BTreeMap::new();
    for (k, f) in nfs.iter().enumerate() {
        for (e, c) in f.terms() {
            rows.entry(e.clone()).or_insert_with(|| vec![Q::zero(); mons.len()])[k] = c.clone();
        }
    }
    let mut a: Vec<Vec<Q>> = rows.into_values().collect();
    let mut b = vec![Q::zero(); a.len()];
    a.push(vec![Q::one(); mons.len()]);
    b.push(Q::one());
    let c = nonneg_solution(&a, &b)?;
    let f = Poly::from_terms(n, mons.iter().cloned().zip(c));
    (f.is_positive() && gb.reduce(&f).is_zero()).then_some(f)
}

pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Exp> {
    fn rec(n: usize, d: u32, prefix: &mut Exp, out: &mut Vec<Exp>) {
        if prefix.len() == n - 1 {
            prefix.push(d as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k as u16);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(6, 4).len(), 126);
    }

    #[test]
    fn line_signs() {
        // x + y - 1 at w = 0: positive pattern has the zero (1/2, 1/2)
        let i = Ideal::anonymous(2, vec![Poly::var(2, 0).add(&Poly::var(2, 1)).sub(&Poly::one(2))]);
        let w = [q(0), q(0)];
        let hint = LeadingPoint {
            signs: SignPattern::positive(2),
            point: vec![Q::new(1.into(), 2.into()), Q::new(1.into(), 2.into())],
            model: crate::ualgebra::degenerate::Model::Line,
        };
        let pos = certify_signed(&i, &SignPattern::positive(2), &w, &[hint], SignedOptions::default()).unwrap();
        assert!(pos.verdict.is_member());
        let neg = certify_signed(&i, &"-,-".parse().unwrap(), &w, &[], SignedOptions::default()).unwrap();
        assert!(neg.verdict.is_non_member());
        let mixed = certify_signed(&i, &"-,+".parse().unwrap(), &w, &[], SignedOptions::default()).unwrap();
        assert_eq!(mixed.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn positive_combination_found() {
        // (x + y)(x² - xy + y²) = x³ + y³
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let g = x.mul(&x).sub(&x.mul(&y)).add(&y.mul(&y));
        let gb = crate::ualgebra::groebner(&Ideal::anonymous(2, vec![g]), &crate::ualgebra::TermOrder::grevlex(2)).unwrap();
        let f = positive_element(&gb, &[q(0), q(0)], 3).unwrap().unwrap();
        assert!(f.is_positive());
        assert!(gb.contains(&f));
    }
}
