use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::groebner::{groebner_with, GbBudget, GroebnerBasis};
use super::order::TermOrder;
use super::poly::{Ideal, Poly};
use crate::error::{invalid, Error, Result};
use crate::linalg::Q;

/// Scales a rational weight to an integer vector (positive factor).
pub fn integer_weight(w: &[Q]) -> Result<Vec<i64>> {
    let den = w.iter().fold(num_bigint::BigInt::one(), |a, x| a.lcm(x.denom()));
    w.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer().to_i64().ok_or_else(|| Error::InvalidArgument("weight entry too large".into()))).collect()
}

/// Initial ideal together with its reduced grevlex basis.
#[derive(Debug, Clone)]
pub struct InitialIdeal {
    pub ideal: Ideal,
    pub gb: GroebnerBasis,
}

/// `init_w I` in the min convention.
///
/// `I` is first homogenised (through a grevlex basis, so that the result
/// generates the homogenisation of the ideal and not only of the generators);
/// a basis of `I^h` for the order "total degree, then larger `-w`, then
/// grevlex" yields `init_(w,0) I^h`, and setting `h = 1` gives `init_w I`.
pub fn initial_ideal(ideal: &Ideal, w: &[Q]) -> Result<Ideal> {
    Ok(initial_ideal_with(ideal, w, GbBudget::default())?.ideal)
}

pub fn initial_ideal_with(ideal: &Ideal, w: &[Q], budget: GbBudget) -> Result<InitialIdeal> {
    let n = ideal.nvars();
    if w.len() != n {
        return invalid(format!("weight has {} entries for {} variables", w.len(), n));
    }
    let g0 = groebner_with(&ideal.gens, &TermOrder::grevlex(n), budget)?;
    if g0.is_unit() || g0.polys.is_empty() {
        return Ok(InitialIdeal { ideal: Ideal::new(ideal.vars.clone(), g0.polys.clone())?, gb: g0 });
    }
    let hom: Vec<Poly> = g0.polys.iter().map(|p| p.homogenize()).collect();
    let wi = integer_weight(w)?;
    let mut neg: Vec<i64> = wi.iter().map(|x| -x).collect();
    neg.push(0);
    let order = TermOrder::weighted(n + 1, vec![vec![1; n + 1], neg])?;
    let g1 = groebner_with(&hom, &order, budget)?;
    let mut wh: Vec<Q> = wi.iter().map(|&x| Q::from_integer(x.into())).collect();
    wh.push(Q::from_integer(0.into()));
    let inits: Vec<Poly> = g1.polys.iter().map(|g| g.initial_form(&wh).dehomogenize()).collect();
    let gb = groebner_with(&inits, &TermOrder::grevlex(n), budget)?;
    Ok(InitialIdeal { ideal: Ideal::new(ideal.vars.clone(), gb.polys.clone())?, gb })
}

/// True iff `J : (∏ u)^∞` is a proper ideal, tested with one auxiliary
/// variable: `1 ∈ J + ⟨y∏u - 1⟩`.
pub fn is_monomial_free(ideal: &Ideal) -> Result<bool> {
    is_monomial_free_with(ideal, GbBudget::default())
}

pub fn is_monomial_free_with(ideal: &Ideal, budget: GbBudget) -> Result<bool> {
    let n = ideal.nvars();
    if ideal.gens.iter().all(|g| g.is_zero()) {
        return Ok(true);
    }
    let mut gens: Vec<Poly> = ideal.gens.iter().map(|g| g.extend_vars(1)).collect();
    let aux = Poly::monomial(n + 1, vec![1; n + 1], Q::one()).sub(&Poly::one(n + 1));
    gens.push(aux);
    let gb = groebner_with(&gens, &TermOrder::grevlex(n + 1), budget)?;
    Ok(!gb.is_unit())
}

/// Whether `w` lies in the tropicalization of `I`. Ideals that already
/// contain a monomial have empty tropicalization and are rejected.
pub fn certify_trop(ideal: &Ideal, w: &[Q]) -> Result<bool> {
    certify_trop_with(ideal, w, GbBudget::default())
}

pub fn certify_trop_with(ideal: &Ideal, w: &[Q], budget: GbBudget) -> Result<bool> {
    if !is_monomial_free_with(ideal, budget)? {
        return Err(Error::Degenerate("the ideal contains a monomial, so its tropicalization is empty".into()));
    }
    let init = initial_ideal_with(ideal, w, budget)?;
    is_monomial_free_with(&init.ideal, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn line() -> Ideal {
        let p = Poly::var(2, 0).add(&Poly::var(2, 1)).sub(&Poly::one(2));
        Ideal::anonymous(2, vec![p])
    }

    #[test]
    fn line_initials() {
        let i = line();
        let a = initial_ideal(&i, &[q(1), q(0)]).unwrap();
        assert_eq!(a.gens, vec![Poly::var(2, 1).sub(&Poly::one(2))]);
        let b = initial_ideal(&i, &[q(-1), q(0)]).unwrap();
        assert_eq!(b.gens, vec![Poly::var(2, 0)]);
        let c = initial_ideal(&i, &[q(0), q(0)]).unwrap();
        assert_eq!(c.gens, i.gens);
    }

    #[test]
    fn monomial_freeness() {
        assert!(is_monomial_free(&Ideal::anonymous(2, vec![Poly::var(2, 1).sub(&Poly::one(2))])).unwrap());
        assert!(!is_monomial_free(&Ideal::anonymous(2, vec![Poly::var(2, 0)])).unwrap());
        let s = Poly::var(2, 0).add(&Poly::var(2, 1));
        let d = Poly::var(2, 0).sub(&Poly::var(2, 1));
        assert!(!is_monomial_free(&Ideal::anonymous(2, vec![s, d])).unwrap());
    }

    #[test]
    fn trop_of_line() {
        let i = line();
        assert!(certify_trop(&i, &[q(0), q(2)]).unwrap());
        assert!(!certify_trop(&i, &[q(-1), q(-2)]).unwrap());
        assert!(certify_trop(&i, &[q(-1), q(-1)]).unwrap());
        let deg = Ideal::anonymous(1, vec![Poly::var(1, 0)]);
        assert!(matches!(certify_trop(&deg, &[q(0)]), Err(Error::Degenerate(_))));
    }
}
