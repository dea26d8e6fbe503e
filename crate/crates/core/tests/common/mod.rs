#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use symtrop::linalg::{q, Q};
use symtrop::ualgebra::Poly;

pub const TABLE_A: [[i64; 6]; 13] = [
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [-1, 0, -1, 1, 0, 0],
    [-1, -1, 0, 0, 1, 0],
    [0, -1, -1, 0, 0, 1],
    [2, 0, 0, -1, -1, 0],
    [0, 2, 0, 0, -1, -1],
    [0, 0, 2, -1, 0, -1],
    [1, 1, 1, -1, -1, -1],
];

pub type Exp = Vec<u16>;

pub fn mons_up_to(n: usize, d: u32) -> Vec<Exp> {
    fn rec(n: usize, left: u32, cur: &mut Exp, out: &mut Vec<Exp>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k as u16);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn wt(e: &[u16], w: &[i64]) -> i64 {
    e.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum()
}

/// Initial forms of the degree-`d` truncation of the ideal, found by
/// echelonising `{m·g}` with columns sorted by increasing weight: the
/// lowest-weight part of each echelon row is an initial form, and these span
/// all initial forms of the truncation.
pub fn oracle_initial_forms(nvars: usize, gens: &[Vec<(Exp, Q)>], w: &[i64], d: u32) -> Vec<Poly> {
    let mut cols = mons_up_to(nvars, d);
    cols.sort_by(|a, b| wt(a, w).cmp(&wt(b, w)).then_with(|| a.cmp(b)));
    let pos: BTreeMap<Exp, usize> = cols.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for g in gens {
        let gd = g.iter().map(|(e, _)| e.iter().map(|&x| x as u32).sum::<u32>()).max().unwrap_or(0);
        if gd > d {
            continue;
        }
        for m in mons_up_to(nvars, d - gd) {
            let mut row = vec![Q::zero(); cols.len()];
            for (e, c) in g {
                let prod: Exp = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                row[pos[&prod]] += c;
            }
            rows.push(row);
        }
    }
    let mut r = 0;
    for c in 0..cols.len() {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for j in c..cols.len() {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows.iter()
        .map(|row| {
            let first = row.iter().position(|x| !x.is_zero()).unwrap();
            let lw = wt(&cols[first], w);
            let terms = cols.iter().zip(row).filter(|(e, c)| !c.is_zero() && wt(e, w) == lw).map(|(e, c)| (e.clone(), c.clone()));
            Poly::from_terms(nvars, terms)
        })
        .collect()
}

pub fn random_ideal(rng: &mut ChaCha8Rng) -> (usize, Vec<Vec<(Exp, Q)>>) {
    let nvars = rng.gen_range(1..=3);
    let ngens = rng.gen_range(1..=3);
    let gens = (0..ngens)
        .map(|_| {
            let nterms = rng.gen_range(1..=4);
            (0..nterms)
                .map(|_| {
                    let deg = rng.gen_range(0..=3u32);
                    let mut e = vec![0u16; nvars];
                    for _ in 0..deg {
                        e[rng.gen_range(0..nvars)] += 1;
                    }
                    let mut c = rng.gen_range(-3..=3i64);
                    if c == 0 {
                        c = 1;
                    }
                    (e, q(c))
                })
                .collect()
        })
        .collect();
    (nvars, gens)
}

pub fn direct_u(xs: &[Q]) -> Vec<Q> {
    // u_{ij} = (x_i - x_{j+1})(x_{i+1} - x_j) / ((x_i - x_j)(x_{i+1} - x_{j+1})), pairs of non-adjacent sides
    let n = xs.len();
    let x = |k: usize| xs[k % n].clone();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let v = (x(i) - x(j + 1)) * (x(i + 1) - x(j)) / ((x(i) - x(j)) * (x(i + 1) - x(j + 1)));
            out.insert((i, j), v);
        }
    }
    out.into_values().collect()
}

/// Compares `initial_ideal` with the truncation oracle on `count` random
/// ideals; returns the number checked.
pub fn initial_ideal_oracle_suite(count: usize, seed: u64) -> Result<usize, String> {
    use rand::SeedableRng;
    use symtrop::ualgebra::{groebner, initial_ideal, Ideal, TermOrder};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < count {
        let (nvars, raw) = random_ideal(&mut rng);
        let gens: Vec<Poly> = raw.iter().map(|g| Poly::from_terms(nvars, g.iter().cloned())).collect();
        if gens.iter().any(|g| g.is_zero()) {
            continue;
        }
        let w: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-2..=2)).collect();
        let wq: Vec<Q> = w.iter().map(|&x| q(x)).collect();
        let ideal = Ideal::anonymous(nvars, gens);
        let ours = initial_ideal(&ideal, &wq).map_err(|e| e.to_string())?;
        let ours_gb = groebner(&ours, &TermOrder::grevlex(nvars)).map_err(|e| e.to_string())?;
        let mut agreed = false;
        for d in [6u32, 8, 10, 12, 14] {
            let forms = oracle_initial_forms(nvars, &raw, &w, d);
            if let Some(f) = forms.iter().find(|f| !ours_gb.contains(f)) {
                return Err(format!("oracle form {f:?} missing from init ideal of {:?} at w={w:?}", ideal.display_gens()));
            }
            let oracle_gb = groebner(&Ideal::anonymous(nvars, forms), &TermOrder::grevlex(nvars)).map_err(|e| e.to_string())?;
            if ours.gens.iter().all(|g| oracle_gb.contains(g)) {
                agreed = true;
                break;
            }
        }
        if !agreed {
            return Err(format!("init ideal of {:?} at w={w:?} not reached by the truncation oracle", ideal.display_gens()));
        }
        checked += 1;
    }
    Ok(checked)
}

/// `cross_ratio_point` on `count` random configurations with `4 <= n <= 7`:
/// the u-equations vanish and the values match the direct formula.
pub fn cross_ratio_suite(count: usize, seed: u64) -> Result<usize, String> {
    use rand::SeedableRng;
    use symtrop::ualgebra::{cross_ratio_point, ideal_a, Ideal};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ideals: Vec<Ideal> = (4..=7).map(|n| ideal_a(n).unwrap()).collect();
    for _ in 0..count {
        let n = rng.gen_range(4..=7usize);
        let mut xs: Vec<Q> = Vec::new();
        while xs.len() < n {
            let v = Q::new(rng.gen_range(-40..=40i64).into(), rng.gen_range(1..=9i64).into());
            if !xs.contains(&v) {
                xs.push(v);
            }
        }
        let u = cross_ratio_point(&xs).map_err(|e| e.to_string())?;
        if let Some(g) = ideals[n - 4].gens.iter().find(|g| !g.eval(&u).is_zero()) {
            return Err(format!("{g:?} does not vanish at the u-vector of {xs:?}"));
        }
        let mut direct = direct_u(&xs);
        let mut ours = u;
        direct.sort();
        ours.sort();
        if ours != direct {
            return Err(format!("u-vector of {xs:?} differs from the direct formula"));
        }
    }
    Ok(count)
}
