//! Bi-Legendrian structures, the induced paracontact metric structure and
//! the 36 labels.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::contact::{
    compute_reeb, legendrian, ContactMetricStructure, ContactStructure, LegendrianDistribution,
    PangClass,
};
use crate::error::{Error, Result};
use crate::exact::frame::frame_matrix;
use crate::exact::tensor::matrix_witness;
use crate::exact::{
    inverse, lie_bracket, ChartRef, Endomorphism, Matrix, Metric, Point, Rational, RationalFn,
    VectorField,
};
use crate::paracontact::{
    diagnostics, eigendistributions, validate_almost_paracontact, validate_metric,
    AlmostParacontactStructure, Diagnostics, ParacontactMetricStructure,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiLegendrianStructure {
    contact: ContactStructure,
    l1: LegendrianDistribution,
    l2: LegendrianDistribution,
    /// Inverse of the adapted frame matrix `[L1 | L2 | ξ]`.
    coframe: Matrix,
}

impl BiLegendrianStructure {
    /// Validates both frames, classifies them and checks
    /// `TM = L1 ⊕ L2 ⊕ ℝξ`.
    pub fn new(contact: &ContactStructure, l1: &[VectorField], l2: &[VectorField]) -> Result<Self> {
        let l1 = legendrian(contact, l1)?;
        let l2 = legendrian(contact, l2)?;
        let mut frame: Vec<VectorField> = l1.frame().to_vec();
        frame.extend_from_slice(l2.frame());
        frame.push(contact.xi().clone());
        let coframe = inverse(&frame_matrix(&frame))
            .map_err(|_| Error::RankDeficient("L1, L2 and xi are not transversal".into()))?;
        Ok(BiLegendrianStructure {
            contact: contact.clone(),
            l1,
            l2,
            coframe,
        })
    }

    pub fn contact(&self) -> &ContactStructure {
        &self.contact
    }

    pub fn l1(&self) -> &LegendrianDistribution {
        &self.l1
    }

    pub fn l2(&self) -> &LegendrianDistribution {
        &self.l2
    }

    pub fn chart(&self) -> &ChartRef {
        self.contact.chart()
    }

    /// `[L1-frame, L2-frame, ξ]`.
    pub fn adapted_frame(&self) -> Vec<VectorField> {
        let mut f: Vec<VectorField> = self.l1.frame().to_vec();
        f.extend_from_slice(self.l2.frame());
        f.push(self.contact.xi().clone());
        f
    }

    /// Rows express coordinate components in the adapted frame.
    pub fn coframe(&self) -> &Matrix {
        &self.coframe
    }

    /// Coefficients of `v` in the adapted frame.
    pub fn adapted_coefficients(&self, v: &VectorField) -> Vec<RationalFn> {
        self.coframe.mul_vec(v.components())
    }

    fn project(&self, v: &VectorField, range: std::ops::Range<usize>) -> VectorField {
        let c = self.adapted_coefficients(v);
        let frame = self.adapted_frame();
        let terms: Vec<(RationalFn, &VectorField)> =
            range.map(|a| (c[a].clone(), &frame[a])).collect();
        VectorField::combination(self.chart(), &terms)
    }

    pub fn proj_l1(&self, v: &VectorField) -> VectorField {
        self.project(v, 0..self.contact.n())
    }

    pub fn proj_l2(&self, v: &VectorField) -> VectorField {
        let n = self.contact.n();
        self.project(v, n..2 * n)
    }

    pub fn proj_xi(&self, v: &VectorField) -> VectorField {
        let n = self.contact.n();
        self.project(v, 2 * n..2 * n + 1)
    }

    /// Endomorphism with the given images of the adapted frame fields.
    pub fn endomorphism_from_adapted(&self, images: &[VectorField]) -> Endomorphism {
        Endomorphism::new(self.chart(), frame_matrix(images).mul(&self.coframe))
            .expect("square")
    }
}

/// `ψ = ±I` on `L1`/`L2`, `ψξ = 0`, and `g(X, Y) = dη(X, ψY) + η(X)η(Y)`.
pub fn bileg_to_paracontact(bls: &BiLegendrianStructure, point: Option<&Point>) -> Result<ParacontactMetricStructure> {
    let chart = bls.chart();
    let mut images: Vec<VectorField> = bls.l1.frame().to_vec();
    images.extend(bls.l2.frame().iter().map(VectorField::neg));
    images.push(VectorField::zero(chart));
    let psi = bls.endomorphism_from_adapted(&images);
    let cs = &bls.contact;
    let eta = cs.eta().components();
    let g = cs.d_eta().matrix().mul(psi.matrix()).add(&Matrix::outer(eta, eta));
    let g = Metric::new(chart, g)?;
    let aps = validate_almost_paracontact(&psi, cs.xi(), cs.eta())?;
    validate_metric(&aps, &g, point)
}

/// `L1 = T⁺`, `L2 = T⁻`.
pub fn paracontact_to_bileg(pms: &ParacontactMetricStructure) -> Result<BiLegendrianStructure> {
    let cs = compute_reeb(pms.eta())?;
    if cs.xi() != pms.xi() {
        return Err(Error::InternalInconsistency {
            name: "Reeb field of eta".into(),
            witness: format!("computed {}, declared {}", cs.xi(), pms.xi()),
        });
    }
    let (plus, minus) = eigendistributions(pms.base())?;
    BiLegendrianStructure::new(&cs, &plus, &minus)
}

/// `((1 − t²)/(1 + t²), 2t/(1 + t²))`.
pub fn pencil_parameters(t: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let t2 = t * t;
    let den = &one + &t2;
    ((&one - &t2) / &den, (t + t) / den)
}

/// `ψ_{α,β} = αψ + βφψ` for a conjugate pair.
pub fn pencil_structure(
    cms: &ContactMetricStructure,
    pms: &ParacontactMetricStructure,
    alpha: &Rational,
    beta: &Rational,
) -> Result<AlmostParacontactStructure> {
    if alpha * alpha + beta * beta != Rational::one() {
        return Err(Error::NotOnUnitCircle {
            alpha: alpha.to_string(),
            beta: beta.to_string(),
        });
    }
    let chart = pms.chart();
    let dim = chart.dim();
    let phi_psi = cms.phi().compose(pms.psi());
    let psi_phi = pms.psi().compose(cms.phi());
    if let Some(w) = matrix_witness(phi_psi.matrix(), psi_phi.neg().matrix(), chart.names()) {
        return Err(Error::AnticommutationFails(w));
    }
    let a = RationalFn::constant(dim, alpha.clone());
    let b = RationalFn::constant(dim, beta.clone());
    let psi_ab = pms.psi().scale(&a).add(&phi_psi.scale(&b));
    let aps = validate_almost_paracontact(&psi_ab, pms.xi(), pms.eta())?;
    let (plus, minus) = eigendistributions(&aps)?;
    let cs = cms.contact();
    crate::contact::validate_legendrian(cs, &plus)?;
    crate::contact::validate_legendrian(cs, &minus)?;
    Ok(aps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DistributionLabel {
    pub class: PangClass,
    pub involutive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NamedClass {
    ParaSasakian,
    KParacontact,
    IntegrableParacontact,
    Generic,
}

impl NamedClass {
    pub fn as_str(self) -> &'static str {
        match self {
            NamedClass::ParaSasakian => "para-Sasakian",
            NamedClass::KParacontact => "K-paracontact",
            NamedClass::IntegrableParacontact => "integrable paracontact",
            NamedClass::Generic => "generic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassLabel {
    pub l1: DistributionLabel,
    pub l2: DistributionLabel,
    pub named: NamedClass,
}

impl ClassLabel {
    pub fn from_parts(l1: DistributionLabel, l2: DistributionLabel) -> Self {
        let flat = l1.class == PangClass::Flat && l2.class == PangClass::Flat;
        let integrable = l1.involutive && l2.involutive;
        let named = match (flat, integrable) {
            (true, true) => NamedClass::ParaSasakian,
            (true, false) => NamedClass::KParacontact,
            (false, true) => NamedClass::IntegrableParacontact,
            (false, false) => NamedClass::Generic,
        };
        ClassLabel { l1, l2, named }
    }
}

/// Every label, ordered.
pub fn all_labels() -> Vec<ClassLabel> {
    let singles: Vec<DistributionLabel> = PangClass::ALL
        .iter()
        .flat_map(|&class| {
            [true, false]
                .into_iter()
                .map(move |involutive| DistributionLabel { class, involutive })
        })
        .collect();
    singles
        .iter()
        .flat_map(|&a| singles.iter().map(move |&b| ClassLabel::from_parts(a, b)))
        .collect()
}

fn distribution_label(l: &LegendrianDistribution) -> DistributionLabel {
    DistributionLabel {
        class: l.class().expect("classified"),
        involutive: l.involutive().expect("classified"),
    }
}

/// The label of a pair without cross-checking.
pub fn label_of(bls: &BiLegendrianStructure) -> ClassLabel {
    ClassLabel::from_parts(distribution_label(&bls.l1), distribution_label(&bls.l2))
}

/// The three equivalences between the label and the paracontact
/// diagnostics; each entry is (name, holds, detail).
pub fn corollary_checks(label: &ClassLabel, diag: &Diagnostics) -> Vec<(&'static str, bool, String)> {
    let both_flat = label.l1.class == PangClass::Flat && label.l2.class == PangClass::Flat;
    let both_inv = label.l1.involutive && label.l2.involutive;
    vec![
        (
            "k-paracontact iff both distributions flat",
            diag.k_paracontact == both_flat,
            format!("k_paracontact = {}, both flat = {both_flat}", diag.k_paracontact),
        ),
        (
            "integrable iff both distributions involutive",
            diag.integrable == both_inv,
            format!("integrable = {}, both involutive = {both_inv}", diag.integrable),
        ),
        (
            "para-Sasakian iff flat bi-Legendrian",
            diag.normal == (both_flat && both_inv),
            format!(
                "normal = {}, flat and involutive = {}",
                diag.normal,
                both_flat && both_inv
            ),
        ),
    ]
}

pub fn classify_pair(bls: &BiLegendrianStructure, pms: &ParacontactMetricStructure) -> Result<ClassLabel> {
    let label = label_of(bls);
    let diag = diagnostics(pms)?;
    for (name, holds, detail) in corollary_checks(&label, &diag) {
        if !holds {
            return Err(Error::CorollaryViolated {
                name: name.into(),
                witness: detail,
            });
        }
    }
    Ok(label)
}

/// `hX = [ξ, X]_{L2}` on `L1`, `hY = −[ξ, Y]_{L1}` on `L2`, `hξ = 0`.
pub fn h_from_brackets(bls: &BiLegendrianStructure) -> Endomorphism {
    let xi = bls.contact.xi();
    let mut images: Vec<VectorField> = bls
        .l1
        .frame()
        .iter()
        .map(|x| bls.proj_l2(&lie_bracket(xi, x)))
        .collect();
    images.extend(
        bls.l2
            .frame()
            .iter()
            .map(|y| bls.proj_l1(&lie_bracket(xi, y)).neg()),
    );
    images.push(VectorField::zero(bls.chart()));
    bls.endomorphism_from_adapted(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::associated_metric_from_polarization;
    use crate::exact::{Chart, OneForm};
    use num_bigint::BigInt;

    fn standard_contact(n: usize) -> ContactStructure {
        let chart = Chart::darboux(n);
        let dim = 2 * n + 1;
        let mut comps = vec![RationalFn::zero(dim); dim];
        for i in 0..n {
            comps[i] = -&RationalFn::var(dim, n + i);
        }
        comps[2 * n] = RationalFn::one(dim);
        compute_reeb(&OneForm::new(&chart, comps).unwrap()).unwrap()
    }

    fn standard_pair(n: usize) -> BiLegendrianStructure {
        let cs = standard_contact(n);
        let d = cs.d_frame().to_vec();
        BiLegendrianStructure::new(&cs, &d[..n], &d[n..]).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn standard_three_dimensional_matrices() {
        let bls = standard_pair(1);
        let pms = bileg_to_paracontact(&bls, None).unwrap();
        let names = bls.chart().names().to_vec();
        let show = |m: &Matrix| -> Vec<Vec<String>> {
            m.rows()
                .iter()
                .map(|row| row.iter().map(|e| e.to_expr(&names)).collect())
                .collect()
        };
        assert_eq!(
            show(pms.psi().matrix()),
            [["-1", "0", "0"], ["0", "1", "0"], ["-y", "0", "0"]]
        );
        assert_eq!(
            show(pms.metric().matrix()),
            [["y^2", "1/2", "-y"], ["1/2", "0", "0"], ["-y", "0", "1"]]
        );
        assert!(pms.metric().apply(pms.xi(), pms.xi()).is_one());
        let x = &bls.l1().frame()[0];
        assert!(pms.metric().apply(x, x).is_zero());
    }

    #[test]
    fn roundtrips() {
        for n in [1, 2] {
            let bls = standard_pair(n);
            let pms = bileg_to_paracontact(&bls, None).unwrap();
            let back = paracontact_to_bileg(&pms).unwrap();
            assert!(crate::exact::frame::same_span(back.l1().frame(), bls.l1().frame()));
            assert!(crate::exact::frame::same_span(back.l2().frame(), bls.l2().frame()));
            let again = bileg_to_paracontact(&back, None).unwrap();
            assert_eq!(again.psi(), pms.psi());
            assert_eq!(again.metric(), pms.metric());
        }
    }

    #[test]
    fn standard_is_para_sasakian() {
        let bls = standard_pair(1);
        let pms = bileg_to_paracontact(&bls, None).unwrap();
        let label = classify_pair(&bls, &pms).unwrap();
        assert_eq!(label.named, NamedClass::ParaSasakian);
        assert_eq!(h_from_brackets(&bls), *pms.h());
    }

    #[test]
    fn label_space_has_36_elements() {
        let labels = all_labels();
        let distinct: std::collections::BTreeSet<_> = labels.iter().collect();
        assert_eq!(labels.len(), 36);
        assert_eq!(distinct.len(), 36);
    }

    #[test]
    fn pencil() {
        assert_eq!(pencil_parameters(&r(1, 2)), (r(3, 5), r(4, 5)));
        assert_eq!(pencil_parameters(&r(0, 1)), (r(1, 1), r(0, 1)));
        let cs = standard_contact(1);
        let d = cs.d_frame().to_vec();
        let cms = associated_metric_from_polarization(&cs, &d[..1], &d[1..]).unwrap();
        let q = cms.phi().apply(&d[0]);
        let bls = BiLegendrianStructure::new(&cs, &d[..1], &[q]).unwrap();
        let pms = bileg_to_paracontact(&bls, None).unwrap();
        let same = pencil_structure(&cms, &pms, &r(1, 1), &r(0, 1)).unwrap();
        assert_eq!(same.psi(), pms.psi());
        assert!(pencil_structure(&cms, &pms, &r(3, 5), &r(4, 5)).is_ok());
        assert!(matches!(
            pencil_structure(&cms, &pms, &r(1, 1), &r(1, 1)),
            Err(Error::NotOnUnitCircle { .. })
        ));
    }
}
