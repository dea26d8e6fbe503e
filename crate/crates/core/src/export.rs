//! Serialisable views of complexes, fans, ideals and reports, Graphviz output
//! and computer-algebra scripts for independent re-checking.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::certify::{SignedReport, TropReport};
use crate::error::{invalid, Result};
use crate::fans::fan::Fan;
use crate::fans::index::Kind;
use crate::linalg::Q;
use crate::symtrees::complex::{Complex, Family};
use crate::ualgebra::poly::{Ideal, Poly};
use crate::ualgebra::signed::Verdict;

/// Version of every JSON document written by this crate.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<T> {
    pub schema_version: u32,
    pub kind: String,
    pub data: T,
}

impl<T> Document<T> {
    pub fn new(kind: &str, data: T) -> Self {
        Document { schema_version: SCHEMA_VERSION, kind: kind.to_string(), data }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub tree: String,
    pub splits: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighlightJson {
    pub name: String,
    pub ordering: String,
    pub faces: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub family: Family,
    pub n: usize,
    pub f_vector: Vec<usize>,
    pub vertices: Vec<VertexJson>,
    /// Nonempty faces as vertex id lists.
    pub faces: Vec<Vec<usize>>,
    pub highlights: Vec<HighlightJson>,
}

/// A subcomplex to mark, given by its faces in the ambient vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Highlight {
    pub name: String,
    pub ordering: String,
    pub color: String,
    pub faces: Vec<Vec<usize>>,
}

impl Highlight {
    /// Embeds `sub` into `ambient`; fails if a face is missing.
    pub fn of(ambient: &Complex, sub: &Complex, name: &str, ordering: &str, color: &str) -> Result<Self> {
        let mut faces = Vec::new();
        for t in sub.face_trees().iter().skip(1) {
            let Some(k) = ambient.face_of_tree(t) else {
                return invalid(format!("{t} is not a face of the ambient complex"));
            };
            faces.push(ambient.faces()[k].clone());
        }
        Ok(Highlight { name: name.into(), ordering: ordering.into(), color: color.into(), faces })
    }
}

pub fn complex_json(c: &Complex, highlights: &[Highlight]) -> ComplexJson {
    ComplexJson {
        family: c.family,
        n: c.n,
        f_vector: c.f_vector(),
        vertices: c.vertices().iter().enumerate().map(|(id, t)| VertexJson { id, tree: t.key().to_string(), splits: t.split_strings() }).collect(),
        faces: c.faces().iter().skip(1).cloned().collect(),
        highlights: highlights.iter().map(|h| HighlightJson { name: h.name.clone(), ordering: h.ordering.clone(), faces: h.faces.clone() }).collect(),
    }
}

/// Graphviz rendering of the 1-skeleton; highlighted vertices and edges get
/// the highlight's colour (later highlights win).
pub fn complex_dot(c: &Complex, highlights: &[Highlight]) -> String {
    let name = match c.family {
        Family::A => "theta",
        Family::AS => "theta_as",
        Family::CS => "theta_cs",
    };
    let mut s = String::new();
    let _ = writeln!(s, "graph {}_{} {{", name, c.n);
    let _ = writeln!(s, "  node [shape=circle, fontsize=10];");
    for (id, t) in c.vertices().iter().enumerate() {
        let color = highlights
            .iter()
            .rev()
            .find(|h| h.faces.iter().any(|f| f == &vec![id]))
            .map(|h| format!(", color=\"{}\", penwidth=2", h.color))
            .unwrap_or_default();
        let _ = writeln!(s, "  v{id} [label=\"{id}\", tooltip=\"{}\"{color}];", t.key());
    }
    for (a, b) in c.edges() {
        let color = highlights
            .iter()
            .rev()
            .find(|h| h.faces.iter().any(|f| f == &vec![a, b]))
            .map(|h| format!(" [color=\"{}\", penwidth=3]", h.color))
            .unwrap_or_default();
        let _ = writeln!(s, "  v{a} -- v{b}{color};");
    }
    s.push_str("}\n");
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub id: usize,
    pub tree: String,
    pub rays: Vec<usize>,
    pub interior_point: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub kind: Kind,
    pub n: usize,
    /// Coordinate labels `i,j` in order.
    pub coordinates: Vec<String>,
    pub rays: Vec<Vec<i64>>,
    pub ray_trees: Vec<String>,
    pub cones: Vec<ConeJson>,
}

pub fn fan_json(f: &Fan) -> FanJson {
    FanJson {
        kind: f.kind,
        n: f.n,
        coordinates: (0..f.dim()).map(|k| f.index.pair_label(k)).collect(),
        rays: f.rays.clone(),
        ray_trees: f.ray_trees.clone(),
        cones: (1..f.cones.len())
            .map(|k| ConeJson { id: k, tree: f.cones[k].source_tree.clone(), rays: f.cone_rays[k].clone(), interior_point: f.interior_point(k) })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u16>,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub variables: Vec<String>,
    pub generators: Vec<Vec<TermJson>>,
}

pub fn ideal_json(i: &Ideal) -> IdealJson {
    IdealJson {
        variables: i.vars.clone(),
        generators: i
            .gens
            .iter()
            .map(|g| g.terms().map(|(e, c)| TermJson { exponents: e.clone(), numerator: c.numer().to_string(), denominator: c.denom().to_string() }).collect())
            .collect(),
    }
}

pub fn ideal_from_json(j: &IdealJson) -> Result<Ideal> {
    let n = j.variables.len();
    let mut gens = Vec::with_capacity(j.generators.len());
    for g in &j.generators {
        let mut terms = Vec::with_capacity(g.len());
        for t in g {
            if t.exponents.len() != n {
                return invalid("exponent vector length does not match the variables");
            }
            let num: BigInt = t.numerator.parse().map_err(|_| crate::Error::InvalidArgument(format!("bad numerator {:?}", t.numerator)))?;
            let den: BigInt = t.denominator.parse().map_err(|_| crate::Error::InvalidArgument(format!("bad denominator {:?}", t.denominator)))?;
            if den == BigInt::from(0) {
                return invalid("zero denominator");
            }
            terms.push((t.exponents.clone(), Q::new(num, den)));
        }
        gens.push(Poly::from_terms(n, terms));
    }
    Ideal::new(j.variables.clone(), gens)
}

fn cas_names(n: usize) -> Vec<String> {
    (0..n).map(|k| format!("u{k}")).collect()
}

fn cas_list<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn cas_header(s: &mut String, ideal: &Ideal, index_labels: &[String]) {
    let names = cas_names(ideal.nvars());
    let _ = writeln!(s, "-- variables:");
    for (k, l) in index_labels.iter().enumerate() {
        let _ = writeln!(s, "--   u{k} = u_{{{l}}}");
    }
    let _ = writeln!(s, "R = QQ[{}];", names.join(", "));
    let gens: Vec<String> = ideal.gens.iter().map(|g| g.fmt_with(&names)).collect();
    let _ = writeln!(s, "I = ideal({});", gens.join(",\n    "));
    let _ = writeln!(
        s,
        "-- init_w in the min convention, through the homogenisation of I and the\n\
         -- positive weights M - w_i on u_i and M on h\n\
         initialIdeal = (J, w) -> (\n    \
             M := 1 + max apply(w, abs);\n    \
             S := QQ[gens ring J | {{hh}}, Weights => append(apply(w, x -> M - x), M)];\n    \
             Jh := homogenize(sub(J, S), hh);\n    \
             L := ideal leadTerm(1, Jh);\n    \
             sub(L, {{hh => 1}} | apply(numgens ring J, k -> (S_k => (ring J)_k)))\n\
         );\n\
         monomialFree = J -> saturate(J, product gens ring J) != ideal 1_(ring J);\n\
         twist = (J, tau) -> sub(J, apply(numgens ring J, k -> (ring J)_k => tau#k * (ring J)_k));"
    );
}

/// Script re-running the plain certification; expected outcomes are comments.
pub fn cas_script_trop(report: &TropReport, ideal: &Ideal, index_labels: &[String], probes: &[(Vec<Q>, bool)]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "-- tropical certification, type {} n = {}", report.kind, report.n);
    cas_header(&mut s, ideal, index_labels);
    for c in &report.cones {
        let _ = writeln!(s, "-- cone {} tree {}", c.cone, c.tree);
        let _ = writeln!(s, "-- expected: {}", if c.certified { "true" } else { "false" });
        let _ = writeln!(s, "print monomialFree initialIdeal(I, {});", cas_list(&c.weight));
    }
    for (w, expect) in probes {
        let _ = writeln!(s, "-- probe, expected: {expect}");
        let _ = writeln!(s, "print monomialFree initialIdeal(I, {});", cas_list(w));
    }
    s
}

/// Script listing the twisted initial ideals; for each cone the expected
/// verdict and witness are given as comments.
pub fn cas_script_signed(report: &SignedReport, ideal: &Ideal, index_labels: &[String]) -> String {
    let mut s = String::new();
    let names = cas_names(ideal.nvars());
    let _ = writeln!(s, "-- signed certification, type {} n = {}, tau = {}", report.kind, report.n, report.tau);
    cas_header(&mut s, ideal, index_labels);
    let tau: Vec<i8> = report.tau.as_slice().to_vec();
    let _ = writeln!(s, "It = twist(I, {});", cas_list(&tau));
    for c in &report.cones {
        let _ = writeln!(s, "-- cone {} tree {}", c.cone, c.tree);
        match &c.verdict {
            Verdict::Member { point } => {
                let _ = writeln!(s, "-- expected: member, positive zero {}", cas_list(point));
                let _ = writeln!(s, "print(sub(gens initialIdeal(It, {}), matrix{{{}}}) == 0);", cas_list(&c.weight), cas_list(point));
            }
            Verdict::NonMember { element } => {
                let _ = writeln!(s, "-- expected: non-member, positive element {}", element.fmt_with(&names));
                let _ = writeln!(s, "print(({}) % initialIdeal(It, {}) == 0);", element.fmt_with(&names), cas_list(&c.weight));
            }
            Verdict::Inconclusive => {
                let _ = writeln!(s, "-- expected: inconclusive");
                let _ = writeln!(s, "print initialIdeal(It, {});", cas_list(&c.weight));
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symtrees::complex::build_complex;
    use crate::ualgebra::binary::ideal_c;

    #[test]
    fn ideal_round_trip() {
        let i = ideal_c(3).unwrap();
        let j = serde_json::to_string(&ideal_json(&i)).unwrap();
        let back: IdealJson = serde_json::from_str(&j).unwrap();
        assert_eq!(ideal_from_json(&back).unwrap(), i);
    }

    #[test]
    fn dot_mentions_every_edge() {
        let c = build_complex(Family::CS, 3).unwrap();
        let d = complex_dot(&c, &[]);
        assert_eq!(d.matches(" -- ").count(), 12);
    }
}
