//! Cone-by-cone certification of candidate fans against the u-equation
//! ideals, plain and signed.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::fans::fan::Fan;
use crate::fans::index::Kind;
use crate::linalg::{nonneg_solution, q, Q};
use crate::symtrees::complex::{build_sub, Complex};
use crate::symtrees::ordering::{enumerate_orderings, DihedralOrdering, Symmetry};
use crate::ualgebra::binary::{ideal_a, ideal_c};
use crate::ualgebra::crossratio::sign_pattern_c;
use crate::ualgebra::degenerate::{leading_points, LeadingPoint, SearchOptions};
use crate::ualgebra::groebner::{GbBudget, GbStats};
use crate::ualgebra::initial::{initial_ideal_with, is_monomial_free_with};
use crate::ualgebra::poly::{Ideal, Poly};
use crate::ualgebra::signed::{certify_signed, SignedOptions, Verdict};
use crate::ualgebra::signs::SignPattern;

#[derive(Debug, Clone, Copy, Default)]
pub struct CertifyOptions {
    pub mode: ExecMode,
    pub signed: SignedOptions,
    pub search: SearchOptions,
}

impl CertifyOptions {
    pub fn budget(&self) -> GbBudget {
        self.signed.budget
    }
}

pub fn ideal_for(kind: Kind, n: usize) -> Result<Ideal> {
    match kind {
        Kind::A => ideal_a(n),
        Kind::C => ideal_c(n),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeCheck {
    pub cone: usize,
    pub tree: String,
    pub rays: Vec<usize>,
    pub weight: Vec<i64>,
    /// `init_w I` is monomial-free.
    pub certified: bool,
    pub initial_ideal: Vec<Poly>,
    pub stats: GbStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TropReport {
    pub kind: Kind,
    pub n: usize,
    pub variables: Vec<String>,
    pub cones: Vec<ConeCheck>,
}

impl TropReport {
    pub fn all_certified(&self) -> bool {
        self.cones.iter().all(|c| c.certified)
    }
}

fn check_weight(ideal: &Ideal, w: &[Q], budget: GbBudget) -> Result<(bool, Vec<Poly>, GbStats)> {
    let init = initial_ideal_with(ideal, w, budget)?;
    let mf = is_monomial_free_with(&init.ideal, budget)?;
    Ok((mf, init.gb.polys, init.gb.stats))
}

fn require_monomial_free(ideal: &Ideal, budget: GbBudget) -> Result<()> {
    if is_monomial_free_with(ideal, budget)? {
        Ok(())
    } else {
        Err(Error::Degenerate("the ideal contains a monomial, so its tropicalization is empty".into()))
    }
}

/// Certifies the interior point of every nonzero cone (all cones when
/// `cones` is `None`).
pub fn certify_fan(fan: &Fan, cones: Option<&[usize]>, opts: CertifyOptions) -> Result<TropReport> {
    let ideal = ideal_for(fan.kind, fan.n)?;
    require_monomial_free(&ideal, opts.budget())?;
    let ids: Vec<usize> = match cones {
        Some(c) => c.to_vec(),
        None => (1..fan.cones.len()).collect(),
    };
    if let Some(bad) = ids.iter().find(|&&k| k >= fan.cones.len()) {
        return Err(Error::InvalidArgument(format!("cone {bad} out of range (fan has {})", fan.cones.len())));
    }
    let checks: Vec<Result<ConeCheck>> = exec::map(opts.mode, &ids, |&k| {
        let weight = fan.interior_point(k);
        let w: Vec<Q> = weight.iter().map(|&x| q(x)).collect();
        let (certified, initial_ideal, stats) = check_weight(&ideal, &w, opts.budget())?;
        Ok(ConeCheck { cone: k, tree: fan.cones[k].source_tree.clone(), rays: fan.cone_rays[k].clone(), weight, certified, initial_ideal, stats })
    });
    Ok(TropReport { kind: fan.kind, n: fan.n, variables: ideal.vars.clone(), cones: checks.into_iter().collect::<Result<_>>()? })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeCheck {
    #[serde(with = "crate::linalg::q_strings")]
    pub weight: Vec<Q>,
    pub in_tropicalization: bool,
    pub initial_ideal: Vec<Poly>,
}

/// Tests arbitrary weights, typically probes off the candidate fan.
pub fn probe_weights(kind: Kind, n: usize, weights: &[Vec<Q>], opts: CertifyOptions) -> Result<Vec<ProbeCheck>> {
    let ideal = ideal_for(kind, n)?;
    require_monomial_free(&ideal, opts.budget())?;
    if let Some(w) = weights.iter().find(|w| w.len() != ideal.nvars()) {
        return Err(Error::InvalidArgument(format!("probe has {} entries, expected {}", w.len(), ideal.nvars())));
    }
    exec::map(opts.mode, weights, |w| {
        let (mf, gens, _) = check_weight(&ideal, w, opts.budget())?;
        Ok(ProbeCheck { weight: w.clone(), in_tropicalization: mf, initial_ideal: gens })
    })
    .into_iter()
    .collect()
}

/// Whether `w` is a nonnegative combination of the rays of some cone.
pub fn in_support(fan: &Fan, w: &[Q]) -> bool {
    (0..fan.cones.len()).any(|k| {
        let gens = fan.generators(k);
        if gens.is_empty() {
            return w.iter().all(|x| x.is_zero());
        }
        let a: Vec<Vec<Q>> = (0..w.len()).map(|i| gens.iter().map(|r| q(r[i])).collect()).collect();
        nonneg_solution(&a, w).is_some()
    })
}

/// A few fixed integer directions, kept only if they lie outside every cone.
pub fn default_probes(fan: &Fan) -> Vec<Vec<Q>> {
    let d = fan.dim();
    let mut candidates = vec![vec![q(-1); d], vec![q(1); d]];
    let mut mixed = vec![q(0); d];
    mixed[0] = q(1);
    if d > 1 {
        mixed[1] = q(-1);
    }
    if d > 4 {
        mixed[4] = q(3);
    }
    candidates.push(mixed);
    candidates.push((0..d).map(|k| q(if k % 2 == 0 { 2 } else { -1 })).collect());
    candidates.push((0..d).map(|k| q(k as i64 + 1)).collect());
    candidates.into_iter().filter(|w| !in_support(fan, w)).collect()
}

/// Hints for every cone (index 0, the apex, gets none).
pub fn cone_hints(fan: &Fan, complex: &Complex, opts: CertifyOptions) -> Result<Vec<Vec<LeadingPoint>>> {
    let ids: Vec<usize> = (0..fan.cones.len()).collect();
    exec::map(opts.mode, &ids, |&k| if k == 0 { Ok(Vec::new()) } else { leading_points(&complex.face_trees()[k], &fan.cones[k], opts.search) })
        .into_iter()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignedCheck {
    pub cone: usize,
    pub tree: String,
    pub rays: Vec<usize>,
    pub weight: Vec<i64>,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub basis: Vec<Poly>,
    pub stats: GbStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignedReport {
    pub kind: Kind,
    pub n: usize,
    pub tau: SignPattern,
    pub variables: Vec<String>,
    pub cones: Vec<SignedCheck>,
}

impl SignedReport {
    pub fn members(&self) -> Vec<usize> {
        self.cones.iter().filter(|c| c.verdict.is_member()).map(|c| c.cone).collect()
    }

    pub fn inconclusive(&self) -> Vec<usize> {
        self.cones.iter().filter(|c| c.verdict == Verdict::Inconclusive).map(|c| c.cone).collect()
    }
}

fn signed_checks(fan: &Fan, ideal: &Ideal, taus: &[SignPattern], hints: &[Vec<LeadingPoint>], opts: CertifyOptions) -> Result<Vec<SignedReport>> {
    let jobs: Vec<(usize, usize)> = (0..taus.len()).flat_map(|t| (1..fan.cones.len()).map(move |k| (t, k))).collect();
    let results: Vec<Result<SignedCheck>> = exec::map(opts.mode, &jobs, |&(t, k)| {
        let weight = fan.interior_point(k);
        let w: Vec<Q> = weight.iter().map(|&x| q(x)).collect();
        let cert = certify_signed(ideal, &taus[t], &w, &hints[k], opts.signed)?;
        Ok(SignedCheck {
            cone: k,
            tree: fan.cones[k].source_tree.clone(),
            rays: fan.cone_rays[k].clone(),
            weight,
            verdict: cert.verdict,
            basis: cert.basis,
            stats: cert.stats,
        })
    });
    let mut reports: Vec<SignedReport> =
        taus.iter().map(|tau| SignedReport { kind: fan.kind, n: fan.n, tau: tau.clone(), variables: ideal.vars.clone(), cones: Vec::new() }).collect();
    for ((t, _), r) in jobs.iter().zip(results) {
        reports[*t].cones.push(r?);
    }
    Ok(reports)
}

/// Signed certification of every nonzero cone of `fan` (built from `complex`).
pub fn certify_signed_fan(fan: &Fan, complex: &Complex, tau: &SignPattern, opts: CertifyOptions) -> Result<SignedReport> {
    let ideal = ideal_for(fan.kind, fan.n)?;
    if tau.len() != ideal.nvars() {
        return Err(Error::InvalidArgument(format!("sign pattern has {} entries, expected {}", tau.len(), ideal.nvars())));
    }
    let hints = cone_hints(fan, complex, opts)?;
    Ok(signed_checks(fan, &ideal, std::slice::from_ref(tau), &hints, opts)?.remove(0))
}

/// Cones of `fan` carrying the nonempty faces of `Δ(α)`, `Δ_as(α)` or `Δ_cs(α)`.
pub fn subfan_cones(complex: &Complex, alpha: &DihedralOrdering) -> Result<Vec<usize>> {
    let sub = build_sub(alpha)?;
    let mut out = Vec::new();
    for t in sub.face_trees().iter().skip(1) {
        let k = complex.face_of_tree(t).ok_or_else(|| Error::Consistency(format!("{t} is not a face of the ambient complex")))?;
        out.push(k);
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfanMatch {
    pub ordering: String,
    pub symmetry: String,
    /// The ordering's own configurations have sign pattern `τ`.
    pub configuration_signs_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternOutcome {
    pub tau: SignPattern,
    pub members: Vec<usize>,
    pub inconclusive: Vec<usize>,
    /// Symmetric orderings whose subcomplex is exactly the certified subfan.
    pub matches: Vec<SubfanMatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSearch {
    pub n: usize,
    pub patterns: Vec<PatternOutcome>,
    /// Patterns with at least one certified cone.
    pub nonempty: usize,
    /// `2^{n-2} (n+1) (n-1)!`, the expected number of occurring patterns.
    pub conjectured: usize,
    pub inconclusive_total: usize,
}

/// Exhaustive signed certification over all `2^|D|` patterns (type C),
/// matched against the symmetric subcomplexes.
pub fn search_sign_patterns_c(fan: &Fan, complex: &Complex, opts: CertifyOptions) -> Result<PatternSearch> {
    if fan.kind != Kind::C {
        return Err(Error::InvalidArgument("pattern search runs on a type C fan".into()));
    }
    let n = fan.n;
    if fan.dim() > 16 {
        return Err(Error::InvalidArgument(format!("2^{} sign patterns is beyond an exhaustive search", fan.dim())));
    }
    let ideal = ideal_for(Kind::C, n)?;
    let hints = cone_hints(fan, complex, opts)?;
    let taus = SignPattern::all(fan.dim());
    let reports = signed_checks(fan, &ideal, &taus, &hints, opts)?;

    let mut subfans = Vec::new();
    for sym in [Symmetry::Axial, Symmetry::Central] {
        for alpha in enumerate_orderings(n, sym)? {
            let cones = subfan_cones(complex, &alpha)?;
            let signs = sign_pattern_c(&alpha)?;
            subfans.push((alpha, sym, cones, signs));
        }
    }
    let mut patterns = Vec::with_capacity(reports.len());
    for r in reports {
        let members = r.members();
        let matches = subfans
            .iter()
            .filter(|(_, _, cones, _)| !members.is_empty() && *cones == members)
            .map(|(alpha, sym, _, signs)| SubfanMatch {
                ordering: alpha.to_string(),
                symmetry: format!("{sym:?}").to_lowercase(),
                configuration_signs_agree: *signs == r.tau,
            })
            .collect();
        patterns.push(PatternOutcome { tau: r.tau.clone(), inconclusive: r.inconclusive(), members, matches });
    }
    let nonempty = patterns.iter().filter(|p| !p.members.is_empty()).count();
    let inconclusive_total = patterns.iter().map(|p| p.inconclusive.len()).sum();
    let conjectured = (1usize << (n - 2)) * (n + 1) * (1..n).product::<usize>();
    Ok(PatternSearch { n, patterns, nonempty, conjectured, inconclusive_total })
}
