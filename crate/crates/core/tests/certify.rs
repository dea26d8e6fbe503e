use symtrop::certify::{certify_fan, certify_signed_fan, in_support, probe_weights, subfan_cones, CertifyOptions};
use symtrop::export::{complex_dot, complex_json, fan_json, ideal_from_json, ideal_json, Document, Highlight};
use symtrop::fans::{assemble_fan, Kind};
use symtrop::linalg::q;
use symtrop::symtrees::{build_complex, build_sub, enumerate_orderings, DihedralOrdering, Family, Symmetry};
use symtrop::ualgebra::{ideal_c, sign_pattern_a, sign_pattern_c, GbBudget, SignPattern};
use symtrop::{Error, ExecMode};

#[test]
fn configuration_signs_pick_out_their_subfans() {
    let c = build_complex(Family::AS, 3).unwrap();
    let f = assemble_fan(&c, Kind::C).unwrap();
    for sym in [Symmetry::Axial, Symmetry::Central] {
        for alpha in enumerate_orderings(3, sym).unwrap() {
            let tau = sign_pattern_c(&alpha).unwrap();
            let r = certify_signed_fan(&f, &c, &tau, CertifyOptions::default()).unwrap();
            assert!(r.inconclusive().is_empty(), "{alpha}");
            assert_eq!(r.members(), subfan_cones(&c, &alpha).unwrap(), "{alpha} τ={tau}");
        }
    }
}

#[test]
fn type_a_positive_part_at_five() {
    let c = build_complex(Family::A, 5).unwrap();
    let f = assemble_fan(&c, Kind::A).unwrap();
    let alpha = DihedralOrdering::new(vec![1, 2, 3, 4, 5]).unwrap();
    let tau = sign_pattern_a(&alpha).unwrap();
    assert_eq!(tau, SignPattern::positive(5));
    let r = certify_signed_fan(&f, &c, &tau, CertifyOptions::default()).unwrap();
    assert!(r.inconclusive().is_empty());
    assert_eq!(r.members(), subfan_cones(&c, &alpha).unwrap());
    assert_eq!(r.members().len(), 10);
}

#[test]
fn sequential_and_parallel_agree() {
    let c = build_complex(Family::AS, 3).unwrap();
    let f = assemble_fan(&c, Kind::C).unwrap();
    let seq = CertifyOptions { mode: ExecMode::Sequential, ..Default::default() };
    let par = CertifyOptions { mode: ExecMode::Parallel, ..Default::default() };
    assert_eq!(certify_fan(&f, None, seq).unwrap(), certify_fan(&f, None, par).unwrap());
}

#[test]
fn probes_off_the_fan_are_rejected() {
    let c = build_complex(Family::AS, 3).unwrap();
    let f = assemble_fan(&c, Kind::C).unwrap();
    let probes = vec![vec![q(1), q(-1), q(0), q(0), q(3), q(0)], vec![q(-1); 6]];
    for p in &probes {
        assert!(!in_support(&f, p));
    }
    let checks = probe_weights(Kind::C, 3, &probes, CertifyOptions::default()).unwrap();
    assert!(checks.iter().all(|p| !p.in_tropicalization));
    // a point inside a two-cone is accepted
    let inside: Vec<_> = f.interior_point(f.cones_of_dim(2)[0]).iter().map(|&x| q(x)).collect();
    assert!(in_support(&f, &inside));
    assert!(probe_weights(Kind::C, 3, &[inside], CertifyOptions::default()).unwrap()[0].in_tropicalization);
}

#[test]
fn tiny_budget_cancels() {
    let c = build_complex(Family::AS, 3).unwrap();
    let f = assemble_fan(&c, Kind::C).unwrap();
    let mut opts = CertifyOptions::default();
    opts.signed.budget = GbBudget::pairs(1);
    let err = certify_fan(&f, None, opts).unwrap_err();
    assert!(matches!(err, Error::Cancelled { .. }), "{err}");
}

#[test]
fn reports_round_trip_through_json() {
    let c = build_complex(Family::AS, 3).unwrap();
    let f = assemble_fan(&c, Kind::C).unwrap();
    let tau: SignPattern = "+,+,-,+,+,+".parse().unwrap();
    let r = certify_signed_fan(&f, &c, &tau, CertifyOptions::default()).unwrap();
    let doc = Document::new("signed-report", r);
    let text = serde_json::to_string(&doc).unwrap();
    let back: Document<symtrop::certify::SignedReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, doc);
    assert_eq!(back.schema_version, symtrop::export::SCHEMA_VERSION);

    let i = ideal_c(3).unwrap();
    assert_eq!(ideal_from_json(&ideal_json(&i)).unwrap(), i);

    let fj = fan_json(&f);
    let text = serde_json::to_string(&fj).unwrap();
    assert_eq!(serde_json::from_str::<serde_json::Value>(&text).unwrap(), serde_json::to_value(&fj).unwrap());
}

#[test]
fn complex_exports_carry_highlights() {
    let c = build_complex(Family::AS, 3).unwrap();
    let blue = DihedralOrdering::new(vec![1, -2, 3, -1, 2, -3]).unwrap();
    let h = Highlight::of(&c, &build_sub(&blue).unwrap(), "cs", &blue.to_string(), "blue").unwrap();
    let j = complex_json(&c, std::slice::from_ref(&h));
    assert_eq!(j.vertices.len(), 13);
    let dot = complex_dot(&c, &[h]);
    assert_eq!(dot.matches(" -- ").count(), 21);
    assert_eq!(dot.matches("color=\"blue\"").count(), 12);
}
