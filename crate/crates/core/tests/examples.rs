use pcg_core::connections::{
    bilinear_parallel_witness, check_defining_identity, covariant_derivative, curvature, kappa_mu_fit, levi_civita,
    verify_connection_theorems, DefiningIdentity, FitValue, Tensor,
};
use pcg_core::contact::{compute_reeb, validate_contact_metric};
use pcg_core::correspondence::{bileg_to_paracontact, BiLegendrianStructure};
use pcg_core::document::{
    emit_report, load_gallery, parse_structure_text, parse_tree, print_structure, run_suite, ReportFormat,
    StructureDocument, Suite, SuiteOptions,
};
use pcg_core::exact::{Chart, Endomorphism, Matrix, Metric, OneForm, RationalFn, VectorField};
use pcg_core::Error;

fn pair(name: &str) -> (StructureDocument, BiLegendrianStructure) {
    let doc = load_gallery(name, None).unwrap();
    let cs = compute_reeb(doc.eta.as_ref().unwrap()).unwrap();
    let (l1, l2) = doc.distributions().unwrap();
    let bls = BiLegendrianStructure::new(&cs, l1, l2).unwrap();
    (doc, bls)
}

#[test]
fn defining_identities_on_gallery() {
    let (_, bls) = pair("nonintegrable-r5");
    let pms = bileg_to_paracontact(&bls, None).unwrap();
    let lc = levi_civita(pms.metric()).unwrap();
    let w = check_defining_identity(DefiningIdentity::ParaSasakian, pms.psi(), pms.xi(), pms.eta(), pms.metric(), &lc);
    assert!(w.is_some());

    let doc = load_gallery("sasakian-r3", None).unwrap();
    let cs = compute_reeb(doc.eta.as_ref().unwrap()).unwrap();
    let cm = doc.contact_metric.unwrap();
    let cms = validate_contact_metric(&cs, &cm.phi, &cm.g).unwrap();
    let lc = levi_civita(cms.metric()).unwrap();
    assert!(check_defining_identity(DefiningIdentity::Sasakian, cms.phi(), cs.xi(), cs.eta(), cms.metric(), &lc).is_none());
    let fit = kappa_mu_fit(&cms, &lc);
    assert_eq!(fit.kappa, FitValue::Value(num_traits::One::one()));
    assert_eq!(fit.mu, FitValue::Indeterminate);
    assert!(fit.is_kappa_mu && fit.h_bar_zero);
}

#[test]
fn euclidean_metric_with_fake_eta_is_rejected() {
    let chart = Chart::darboux(1);
    let g = Metric::new(&chart, Matrix::identity(3, 3)).unwrap();
    let y = RationalFn::var(3, 1);
    let eta = OneForm::new(&chart, vec![-&y, RationalFn::zero(3), RationalFn::one(3)]).unwrap();
    let cs = compute_reeb(&eta).unwrap();
    let one = RationalFn::one(3);
    let phi = Endomorphism::from_images(
        &chart,
        &[
            VectorField::new(&chart, vec![RationalFn::zero(3), one.clone(), RationalFn::zero(3)]).unwrap(),
            VectorField::new(&chart, vec![-&one, RationalFn::zero(3), RationalFn::zero(3)]).unwrap(),
            VectorField::zero(&chart),
        ],
    )
    .unwrap();
    assert!(validate_contact_metric(&cs, &phi, &g).is_err());
    assert!(curvature(&levi_civita(&g).unwrap()).is_zero());
}

#[test]
fn covariant_derivative_examples() {
    let (doc, bls) = pair("standard-r3");
    let g = doc.metric.as_ref().unwrap();
    let lc = levi_civita(g).unwrap();
    assert!(bilinear_parallel_witness(&lc, g.matrix()).is_none());
    let x = VectorField::coordinate(&doc.chart, 0);
    match covariant_derivative(&lc, &Tensor::Bilinear(g.matrix().clone()), &x) {
        Tensor::Bilinear(m) => assert!(m.is_zero()),
        other => panic!("{other:?}"),
    }
    let pms = bileg_to_paracontact(&bls, None).unwrap();
    let report = verify_connection_theorems(&bls, &pms).unwrap();
    assert!(report.coincide && report.tangential);
}

#[test]
fn gallery_documents_are_print_parse_fixpoints() {
    for (name, n) in [("standard-parasasakian", Some(1)), ("standard-parasasakian", Some(2)), ("sasakian-r3", None), ("nonintegrable-r5", None)] {
        let doc = load_gallery(name, n).unwrap();
        let printed = print_structure(&doc);
        let parsed = parse_structure_text(&printed).unwrap();
        assert_eq!(parsed, doc, "{name}");
        assert_eq!(print_structure(&parsed), printed, "{name}");
    }
    let doc = load_gallery("standard-r3", None).unwrap();
    assert_eq!(doc.eta.unwrap().to_expr(), "-y*dx + dz");
}

#[test]
fn document_errors() {
    let text = "[chart]\ncoords = [\"x\", \"y\", \"z\"]\n\n[psi]\nmatrix = [[\"1\", \"0\", \"0\"], [\"0\", \"1\", \"0\"]]\n";
    assert!(matches!(parse_structure_text(text), Err(Error::ShapeMismatch(_))));
    let chart_only = parse_structure_text("[chart]\ncoords = [\"x\", \"y\", \"z\"]\n").unwrap();
    assert!(matches!(
        run_suite(&chart_only, Suite::Classify, &SuiteOptions::default()),
        Err(Error::MissingSection(_))
    ));
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    for name in ["standard-r5", "sasakian-r3", "nonintegrable-r5"] {
        let doc = load_gallery(name, None).unwrap();
        let a = run_suite(&doc, Suite::All, &SuiteOptions::default()).unwrap();
        let b = run_suite(&doc, Suite::All, &SuiteOptions::default()).unwrap();
        assert!(a.passed(), "{name}: {:?}", a.failures());
        let text = emit_report(&a, ReportFormat::Text);
        assert_eq!(text, emit_report(&b, ReportFormat::Text));
        assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")).count(), a.checks().count());
        let tree = emit_report(&a, ReportFormat::Tree);
        assert_eq!(parse_tree(&tree).unwrap(), a);
    }
}

#[test]
fn failing_check_carries_witness() {
    // psi of the standard structure paired with a metric that is not compatible
    let text = r#"
[chart]
coords = ["x", "y", "z"]

[contact]
eta = "dz - y*dx"

[psi]
matrix = [["-1", "0", "0"], ["0", "1", "0"], ["-y", "0", "0"]]

[metric]
matrix = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
"#;
    let doc = parse_structure_text(text).unwrap();
    let r = run_suite(&doc, Suite::Validate, &SuiteOptions::default()).unwrap();
    assert_eq!(r.exit_code(), 1);
    let text = emit_report(&r, ReportFormat::Text);
    let line = text.lines().find(|l| l.starts_with("[FAIL]")).unwrap();
    assert!(line.contains("differs by"), "{line}");
}
