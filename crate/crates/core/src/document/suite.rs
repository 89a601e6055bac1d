//! Verification suites over a structure document.

use std::collections::BTreeSet;

use crate::check::Check;
use crate::connections::{
    bilegendrian_axiom_failures, bilegendrian_connection, check_defining_identity, connection_report_with,
    curvature, kappa_mu_fit, levi_civita, nabla_xi_witness, paracontact_axiom_checks, paracontact_connection_from,
    torsion, AffineConnection, Connections, Curvature, DefiningIdentity,
};
use crate::contact::{compute_reeb, validate_contact_metric, validate_legendrian, ContactMetricStructure, ContactStructure};
use crate::correspondence::{
    bileg_to_paracontact, corollary_checks, h_from_brackets, label_of, paracontact_to_bileg, pencil_parameters,
    pencil_structure, BiLegendrianStructure, DistributionLabel,
};
use crate::error::{Error, Result};
use crate::exact::frame::same_span;
use crate::exact::ratfn::rational_to_expr;
use crate::exact::tensor::matrix_witness;
use crate::exact::{Point, Rational};
use crate::paracontact::{
    diagnostics, h_is_symmetric_trace_free, validate_almost_paracontact, validate_metric, ParacontactMetricStructure,
};

use super::format::{StructureDocument, Suite};
use super::report::{Classification, Report, Section};

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Overrides the document's sample point.
    pub point: Option<Point>,
    /// Unit-circle parameter `t` for the pencil member `ψ_{α,β}`.
    pub pencil: Option<Rational>,
    /// Adds the coefficient-wise comparison of the two connections.
    pub compare: bool,
}

struct Context<'a> {
    doc: &'a StructureDocument,
    point: Point,
    cs: Option<ContactStructure>,
    bls: Option<BiLegendrianStructure>,
    pms: Option<ParacontactMetricStructure>,
    cms: Option<ContactMetricStructure>,
    validation: Vec<Section>,
    connections: Option<Option<Connections>>,
}

fn attempt<T>(section: &mut Section, name: &str, anchor: &str, r: Result<T>, ok: impl FnOnce(&T) -> String) -> Option<T> {
    match r {
        Ok(v) => {
            section.check(Check::with_detail(name, anchor, true, ok(&v)));
            Some(v)
        }
        Err(e) => {
            section.check(Check::with_detail(name, anchor, false, e.to_string()));
            None
        }
    }
}

fn holds(_: &impl Sized) -> String {
    "holds identically".into()
}

fn label_text(l: DistributionLabel) -> String {
    format!(
        "{}, {}",
        l.class.as_str(),
        if l.involutive { "involutive" } else { "not involutive" }
    )
}

impl<'a> Context<'a> {
    fn build(doc: &'a StructureDocument, opts: &SuiteOptions) -> Self {
        let point = opts
            .point
            .clone()
            .or_else(|| doc.point.clone())
            .unwrap_or_else(|| Point::origin(&doc.chart));
        let mut ctx = Context {
            doc,
            point,
            cs: None,
            bls: None,
            pms: None,
            cms: None,
            validation: Vec::new(),
            connections: None,
        };
        ctx.validate_contact();
        ctx.validate_paracontact();
        ctx.validate_contact_metric();
        ctx
    }

    fn validate_contact(&mut self) {
        let Some(eta) = &self.doc.eta else { return };
        let mut s = Section::new("contact structure");
        self.cs = attempt(&mut s, "eta is a contact form", "contact condition", compute_reeb(eta), |cs| {
            format!("Reeb field {}", cs.xi())
        });
        if let (Some(cs), Some((l1, l2))) = (&self.cs, self.doc.distributions()) {
            for (name, frame) in [("L1", l1), ("L2", l2)] {
                attempt(
                    &mut s,
                    &format!("{name} is a Legendrian distribution"),
                    "Legendrian condition",
                    validate_legendrian(cs, frame),
                    holds,
                );
            }
            self.bls = attempt(
                &mut s,
                "L1 + L2 + R xi spans the tangent space",
                "bi-Legendrian structure",
                BiLegendrianStructure::new(cs, l1, l2),
                holds,
            );
        }
        self.validation.push(s);
    }

    fn validate_paracontact(&mut self) {
        let Some(cs) = self.cs.clone() else { return };
        let mut s = Section::new("paracontact metric structure");
        if let Some(psi) = &self.doc.psi {
            let aps = attempt(
                &mut s,
                "psi, xi, eta form an almost paracontact structure",
                "almost paracontact axioms",
                validate_almost_paracontact(psi, cs.xi(), cs.eta()),
                holds,
            );
            if let (Some(aps), Some(g)) = (aps, &self.doc.metric) {
                self.pms = attempt(
                    &mut s,
                    "g is a compatible paracontact metric of signature (n+1, n)",
                    "paracontact metric axioms",
                    validate_metric(&aps, g, Some(&self.point)),
                    |p| format!("signature {:?} at {}", p.signature(), self.point.to_assignments(&self.doc.chart)),
                );
            }
            if let (Some(pms), Some(bls)) = (&self.pms, &self.bls) {
                let rebuilt = bileg_to_paracontact(bls, Some(&self.point));
                let witness = match &rebuilt {
                    Ok(p) => matrix_witness(p.psi().matrix(), pms.psi().matrix(), self.doc.chart.names())
                        .map(|w| format!("psi: {w}"))
                        .or_else(|| {
                            matrix_witness(p.metric().matrix(), pms.metric().matrix(), self.doc.chart.names())
                                .map(|w| format!("g: {w}"))
                        }),
                    Err(e) => Some(e.to_string()),
                };
                s.check(Check::new(
                    "psi and g rebuilt from L1, L2 equal the declared ones",
                    "bi-Legendrian to paracontact correspondence",
                    witness,
                ));
                let back = paracontact_to_bileg(pms);
                let witness = match &back {
                    Ok(b) => {
                        let ok1 = same_span(b.l1().frame(), bls.l1().frame());
                        let ok2 = same_span(b.l2().frame(), bls.l2().frame());
                        (!(ok1 && ok2)).then(|| format!("L1 span equal: {ok1}, L2 span equal: {ok2}"))
                    }
                    Err(e) => Some(e.to_string()),
                };
                s.check(Check::new(
                    "eigendistributions of psi recover L1 and L2",
                    "paracontact to bi-Legendrian correspondence",
                    witness,
                ));
            }
        } else if let Some(bls) = &self.bls {
            self.pms = attempt(
                &mut s,
                "psi and g built from L1, L2 form a paracontact metric structure",
                "bi-Legendrian to paracontact correspondence",
                bileg_to_paracontact(bls, Some(&self.point)),
                |p| format!("signature {:?} at {}", p.signature(), self.point.to_assignments(&self.doc.chart)),
            );
        }
        if self.bls.is_none() && self.doc.distributions().is_none() {
            if let Some(pms) = &self.pms {
                self.bls = attempt(
                    &mut s,
                    "eigendistributions of psi form a bi-Legendrian pair",
                    "paracontact to bi-Legendrian correspondence",
                    paracontact_to_bileg(pms),
                    holds,
                );
            }
        }
        if let Some(pms) = &self.pms {
            s.check(Check::new(
                "h is g-symmetric and trace-free",
                "properties of h",
                h_is_symmetric_trace_free(pms),
            ));
        }
        if !s.is_empty() {
            self.validation.push(s);
        }
    }

    fn validate_contact_metric(&mut self) {
        let (Some(cs), Some(cm)) = (&self.cs, &self.doc.contact_metric) else { return };
        let mut s = Section::new("contact metric structure");
        self.cms = attempt(
            &mut s,
            "phi, xi, eta, G form a contact metric structure",
            "contact metric axioms",
            validate_contact_metric(cs, &cm.phi, &cm.g),
            holds,
        );
        self.validation.push(s);
    }

    fn pair(&self) -> Option<(&BiLegendrianStructure, &ParacontactMetricStructure)> {
        Some((self.bls.as_ref()?, self.pms.as_ref()?))
    }

    fn connections(&mut self) -> Option<&Connections> {
        if self.connections.is_none() {
            let built = self.pair().and_then(|(bls, pms)| {
                let lc = levi_civita(pms.metric()).ok()?;
                let pc = paracontact_connection_from(pms, &lc);
                let bl = bilegendrian_connection(bls).ok()?;
                Some(Connections { levi_civita: lc, bl, pc })
            });
            self.connections = Some(built);
        }
        self.connections.as_ref().and_then(Option::as_ref)
    }
}

fn require(doc: &StructureDocument, suite: Suite) -> Result<()> {
    if doc.eta.is_none() {
        return Err(Error::MissingSection("contact".into()));
    }
    let pair = doc.distributions().is_some() || (doc.psi.is_some() && doc.metric.is_some());
    if suite != Suite::Validate && !pair {
        return Err(Error::MissingSection("distributions".into()));
    }
    Ok(())
}

fn curvature_summary(r: &Curvature, names: &[String]) -> String {
    match r.first_nonzero() {
        None => format!("vanishes identically ({} components)", r.component_count()),
        Some((i, j, k, v)) => format!("R(d/d{}, d/d{}) d/d{} = {v}", names[i], names[j], names[k]),
    }
}

fn christoffel_facts(s: &mut Section, label: &str, conn: &AffineConnection) {
    let names = conn.chart().names();
    let dim = conn.chart().dim();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let g = conn.christoffel(i, j, k);
                if !g.is_zero() {
                    s.fact(
                        format!("{label} Gamma^{}_({} {})", names[k], names[i], names[j]),
                        g.to_expr(names),
                    );
                }
            }
        }
    }
}

fn classify_sections(ctx: &mut Context, opts: &SuiteOptions, report: &mut Report) {
    let Some((bls, pms)) = ctx.pair() else { return };
    let names = ctx.doc.chart.names().to_vec();
    let mut s = Section::new("classification");
    let label = label_of(bls);
    s.fact("L1", label_text(label.l1));
    s.fact("L2", label_text(label.l2));
    match diagnostics(pms) {
        Ok(diag) => {
            let yes_no = |b: bool, w: &Option<String>| match (b, w) {
                (true, _) => "yes".to_string(),
                (false, Some(w)) => format!("no ({w})"),
                (false, None) => "no".to_string(),
            };
            s.fact("normal", yes_no(diag.normal, &diag.normal_witness));
            s.fact("integrable", yes_no(diag.integrable, &diag.integrable_witness));
            s.fact("K-paracontact", yes_no(diag.k_paracontact, &diag.k_paracontact_witness));
            for (name, ok, detail) in corollary_checks(&label, &diag) {
                s.check(Check::with_detail(name, "classification corollaries", ok, detail));
            }
        }
        Err(e) => s.check(Check::with_detail("structure diagnostics", "classification corollaries", false, e.to_string())),
    }
    s.check(Check::new(
        "h equals the bracket projection formula",
        "h on adapted frames",
        matrix_witness(pms.h().matrix(), h_from_brackets(bls).matrix(), &names).map(|w| format!("h - h_brackets: {w}")),
    ));
    report.classification = Some(Classification {
        l1: label_text(label.l1),
        l2: label_text(label.l2),
        class: label.named.as_str().to_string(),
    });
    report.sections.push(s);

    if let Some(cms) = &ctx.cms {
        let mut s = Section::new("contact metric classification");
        match levi_civita(cms.metric()) {
            Ok(lc) => {
                let fit = kappa_mu_fit(cms, &lc);
                s.fact("h-bar", if fit.h_bar_zero { "vanishes identically" } else { "nonzero" });
                s.fact("(kappa, mu)-space", if fit.is_kappa_mu { "yes" } else { "no" });
                if fit.is_kappa_mu {
                    s.fact("kappa", fit.kappa.to_string());
                    s.fact("mu", fit.mu.to_string());
                } else if let Some(r) = &fit.residual {
                    s.fact("residual", r.clone());
                }
                let cs = cms.contact();
                let sasaki = check_defining_identity(DefiningIdentity::Sasakian, cms.phi(), cs.xi(), cs.eta(), cms.metric(), &lc);
                s.fact(
                    "Sasakian",
                    match &sasaki {
                        None => "yes".to_string(),
                        Some(w) => format!("no ({w})"),
                    },
                );
                if sasaki.is_none() {
                    s.check(Check::with_detail(
                        "h-bar vanishes on a Sasakian structure",
                        "Killing Reeb field",
                        fit.h_bar_zero,
                        if fit.h_bar_zero { "h-bar = 0" } else { "h-bar is nonzero" },
                    ));
                }
                if fit.is_kappa_mu {
                    let kappa_one = matches!(&fit.kappa, crate::connections::FitValue::Value(v) if *v == Rational::from_integer(1.into()));
                    s.check(Check::with_detail(
                        "kappa = 1 iff Sasakian",
                        "(kappa, mu)-spaces",
                        kappa_one == sasaki.is_none(),
                        format!("kappa = {}, Sasakian = {}", fit.kappa, sasaki.is_none()),
                    ));
                }
            }
            Err(e) => s.check(Check::with_detail("Levi-Civita connection of G", "metric connection", false, e.to_string())),
        }
        if let Some(t) = &opts.pencil {
            let (alpha, beta) = pencil_parameters(t);
            s.fact("pencil alpha", rational_to_expr(&alpha));
            s.fact("pencil beta", rational_to_expr(&beta));
            attempt(
                &mut s,
                "pencil member alpha psi + beta phi psi is almost paracontact with Legendrian eigendistributions",
                "pencil of paracontact structures",
                pencil_structure(cms, pms, &alpha, &beta),
                holds,
            );
        }
        report.sections.push(s);
    }
}

fn connection_sections(ctx: &mut Context, suite: Suite, opts: &SuiteOptions, report: &mut Report) {
    let names = ctx.doc.chart.names().to_vec();
    let Some((bls, pms)) = ctx.pair().map(|(b, p)| (b.clone(), p.clone())) else { return };
    let Some(conns) = ctx.connections() else {
        let mut s = Section::new("connections");
        let e = levi_civita(pms.metric())
            .err()
            .or_else(|| bilegendrian_connection(&bls).err())
            .map(|e| e.to_string())
            .unwrap_or_else(|| "construction failed".into());
        s.check(Check::with_detail("connections can be constructed", "connection construction", false, e));
        report.sections.push(s);
        return;
    };
    let (lc, pc, bl) = (&conns.levi_civita, &conns.pc, &conns.bl);

    let mut s = Section::new("Levi-Civita connection");
    s.check(Check::new("torsion vanishes", "Levi-Civita connection", torsion(lc).first_nonzero().map(|(i, j, v)| format!("T({i}, {j}) = {v}"))));
    s.check(Check::new(
        "g is parallel",
        "Levi-Civita connection",
        crate::connections::bilinear_parallel_witness(lc, pms.metric().matrix()),
    ));
    s.check(Check::new("nabla xi = -psi + psi h", "covariant derivative of the Reeb field", nabla_xi_witness(&pms, lc)));
    let para = check_defining_identity(DefiningIdentity::ParaSasakian, pms.psi(), pms.xi(), pms.eta(), pms.metric(), lc);
    match diagnostics(&pms) {
        Ok(diag) => s.check(Check::with_detail(
            "para-Sasakian identity holds iff normal",
            "para-Sasakian characterization",
            para.is_none() == diag.normal,
            match &para {
                None => format!("identity holds, normal = {}", diag.normal),
                Some(w) => format!("identity fails ({w}), normal = {}", diag.normal),
            },
        )),
        Err(e) => s.check(Check::with_detail("para-Sasakian identity holds iff normal", "para-Sasakian characterization", false, e.to_string())),
    }
    report.sections.push(s);

    let mut s = Section::new("canonical paracontact connection");
    match paracontact_axiom_checks(&pms, lc, pc) {
        Ok(cs) => cs.into_iter().for_each(|c| s.check(c)),
        Err(e) => s.check(Check::with_detail("pc axioms", "canonical paracontact connection", false, e.to_string())),
    }
    s.fact("curvature", curvature_summary(&curvature(pc), &names));
    if suite == Suite::Connections {
        christoffel_facts(&mut s, "pc", pc);
    }
    report.sections.push(s);

    let mut s = Section::new("bi-Legendrian connection");
    bilegendrian_axiom_failures(&bls, bl).into_iter().for_each(|c| s.check(c));
    s.fact("curvature", curvature_summary(&curvature(bl), &names));
    if suite == Suite::Connections {
        christoffel_facts(&mut s, "bl", bl);
    }
    report.sections.push(s);

    if opts.compare || suite == Suite::All {
        let mut s = Section::new("comparison");
        match bl.first_difference(pc) {
            None => s.fact("connections", "coincide"),
            Some((i, j, v)) => {
                s.fact("connections", "differ");
                s.fact(
                    "first difference",
                    format!("nabla^bl - nabla^pc at (d/d{}, d/d{}) = {v}", names[i], names[j]),
                );
            }
        }
        report.sections.push(s);
    }
}

fn theorem_sections(ctx: &mut Context, report: &mut Report) {
    let Some((bls, pms)) = ctx.pair().map(|(b, p)| (b.clone(), p.clone())) else { return };
    let Some(conns) = ctx.connections() else { return };
    let mut s = Section::new("connection theorems");
    match connection_report_with(&bls, &pms, conns) {
        Ok(r) => {
            s.fact("connections", if r.coincide { "coincide" } else { "differ" });
            s.fact("integrable", if r.integrable { "yes" } else { "no" });
            if let Some(d) = &r.difference {
                s.fact("first difference", d.clone());
            }
            if let Some(w) = &r.torsion_witness {
                s.fact("torsion witness", format!("{}: T^bl = {}, T^pc = {}", w.pair, w.bl, w.pc));
            }
            s.fact("R^bl(L1, L2) = 0", if r.tangential { "yes" } else { "no" });
            s.fact(
                "leaf flatness",
                if r.leaf_flatness_applicable { "checked" } else { "not applicable (needs flat involutive L1 and L2)" },
            );
            r.checks.into_iter().for_each(|c| s.check(c));
        }
        Err(e) => s.check(Check::with_detail("connection theorems", "connection theorems", false, e.to_string())),
    }
    if let Ok(diag) = diagnostics(&pms) {
        for (name, ok, detail) in corollary_checks(&label_of(&bls), &diag) {
            s.check(Check::with_detail(name, "classification corollaries", ok, detail));
        }
    }
    report.sections.push(s);
}

/// Runs a suite; input problems are errors, failed identities are report
/// entries.
pub fn run_suite(doc: &StructureDocument, suite: Suite, opts: &SuiteOptions) -> Result<Report> {
    require(doc, suite)?;
    let mut ctx = Context::build(doc, opts);
    let mut report = Report {
        source: "document".into(),
        suite: suite.as_str().into(),
        sections: Vec::new(),
        classification: None,
    };
    if matches!(suite, Suite::Validate | Suite::All) {
        report.sections.append(&mut ctx.validation);
    } else {
        let mut pre = Section::new("prerequisites");
        for s in &ctx.validation {
            pre.checks.extend(s.checks.iter().filter(|c| !c.passed).cloned());
        }
        if !pre.is_empty() {
            report.sections.push(pre);
        }
    }
    if matches!(suite, Suite::Classify | Suite::All) {
        classify_sections(&mut ctx, opts, &mut report);
    }
    if matches!(suite, Suite::Connections | Suite::All) {
        connection_sections(&mut ctx, suite, opts, &mut report);
    }
    if matches!(suite, Suite::Theorems | Suite::All) {
        theorem_sections(&mut ctx, &mut report);
    }
    let mut seen = BTreeSet::new();
    for s in &mut report.sections {
        s.checks.retain(|c| seen.insert(c.name.clone()));
    }
    report.sections.retain(|s| !s.is_empty());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::gallery::load_gallery;

    #[test]
    fn standard_all_passes() {
        let doc = load_gallery("standard-parasasakian", Some(1)).unwrap();
        let r = run_suite(&doc, Suite::All, &SuiteOptions::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.classification.as_ref().unwrap().class, "para-Sasakian");
        assert!(r.fact("curvature").unwrap().starts_with("vanishes identically"));
    }

    #[test]
    fn nonintegrable_theorems_pass_with_differing_connections() {
        let doc = load_gallery("nonintegrable-r5", None).unwrap();
        let r = run_suite(&doc, Suite::Theorems, &SuiteOptions::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.fact("connections"), Some("differ"));
        assert_eq!(r.fact("integrable"), Some("no"));
    }

    #[test]
    fn chart_only_document_is_missing_sections() {
        let doc = StructureDocument::new(&crate::exact::Chart::darboux(1));
        assert_eq!(
            run_suite(&doc, Suite::Classify, &SuiteOptions::default()),
            Err(Error::MissingSection("contact".into()))
        );
    }
}
