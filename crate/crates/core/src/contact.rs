//! Contact forms, Reeb fields, Legendrian distributions and the Pang form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::frame::{frame_matrix, frame_rank, independent_subset, in_span, span_residual};
use crate::exact::tensor::matrix_witness;
use crate::exact::{
    determinant, exterior_derivative, interior_product, inverse, lie_bracket, lie_derivative_endo,
    lie_derivative_form, linalg, ChartRef, Endomorphism, Matrix, Metric, OneForm, RationalFn,
    TwoForm, VectorField,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactStructure {
    eta: OneForm,
    xi: VectorField,
    d_eta: TwoForm,
    d_frame: Vec<VectorField>,
}

impl ContactStructure {
    pub fn chart(&self) -> &ChartRef {
        self.eta.chart()
    }

    pub fn eta(&self) -> &OneForm {
        &self.eta
    }

    pub fn xi(&self) -> &VectorField {
        &self.xi
    }

    pub fn d_eta(&self) -> &TwoForm {
        &self.d_eta
    }

    pub fn d_frame(&self) -> &[VectorField] {
        &self.d_frame
    }

    pub fn n(&self) -> usize {
        self.chart().n()
    }

    /// `η ⊗ ξ` as the endomorphism `X ↦ η(X)ξ`.
    pub fn eta_xi(&self) -> Endomorphism {
        Endomorphism::rank_one(&self.xi, &self.eta)
    }
}

/// Solves `η(ξ) = 1`, `i_ξ dη = 0` and attaches a frame of the contact
/// distribution.
pub fn compute_reeb(eta: &OneForm) -> Result<ContactStructure> {
    let chart = eta.chart();
    let dim = chart.dim();
    let d_eta = exterior_derivative(eta);
    let mut rows = vec![eta.components().to_vec()];
    for j in 0..dim {
        rows.push((0..dim).map(|i| d_eta.matrix().get(i, j).clone()).collect());
    }
    let system = Matrix::from_rows(dim, rows).expect("rectangular");
    if linalg::rank(&system) < dim {
        return Err(Error::NotContact(
            "the Reeb system has a nontrivial kernel".into(),
        ));
    }
    let mut rhs = vec![RationalFn::zero(dim); dim + 1];
    rhs[0] = RationalFn::one(dim);
    let xi = linalg::linear_solve(&system, &rhs)
        .map_err(|_| Error::NotContact("the Reeb system is inconsistent".into()))?;
    let xi = VectorField::new(chart, xi)?;
    let d_frame = kernel_frame(eta)?;
    let pairing = Matrix::from_fn(d_frame.len(), d_frame.len(), dim, |a, b| {
        d_eta.apply(&d_frame[a], &d_frame[b])
    });
    if determinant(&pairing).is_zero() {
        return Err(Error::NotContact("d eta is degenerate on ker eta".into()));
    }
    Ok(ContactStructure {
        eta: eta.clone(),
        xi,
        d_eta,
        d_frame,
    })
}

/// Frame of `ker η` built from a component with constant nonzero
/// coefficient, ordered by (last, first) nonzero coordinate.
pub fn kernel_frame(eta: &OneForm) -> Result<Vec<VectorField>> {
    let chart = eta.chart();
    let dim = chart.dim();
    let k = (0..dim)
        .rev()
        .find(|&k| eta.component(k).is_nonzero_constant())
        .ok_or(Error::NoGlobalFrame)?;
    let ek = eta.component(k).clone();
    let mut frame: Vec<VectorField> = (0..dim)
        .filter(|&i| i != k)
        .map(|i| {
            let mut comps = vec![RationalFn::zero(dim); dim];
            comps[i] = RationalFn::one(dim);
            comps[k] = -&(eta.component(i) / &ek);
            VectorField::new(chart, comps).expect("shape")
        })
        .collect();
    let key = |v: &VectorField| {
        let nz: Vec<usize> = (0..dim).filter(|&i| !v.component(i).is_zero()).collect();
        (*nz.last().unwrap(), nz[0])
    };
    frame.sort_by_key(key);
    Ok(frame)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PangClass {
    Flat,
    ProperlyDegenerate,
    NonDegenerate,
}

impl PangClass {
    pub const ALL: [PangClass; 3] = [
        PangClass::Flat,
        PangClass::ProperlyDegenerate,
        PangClass::NonDegenerate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PangClass::Flat => "flat",
            PangClass::ProperlyDegenerate => "properly degenerate",
            PangClass::NonDegenerate => "non-degenerate",
        }
    }
}

/// Result of an involutivity test; the witness is a pair of frame indices
/// and the part of their bracket outside the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involutivity {
    pub involutive: bool,
    pub witness: Option<(usize, usize, VectorField)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendrianDistribution {
    frame: Vec<VectorField>,
    pang_matrix: Option<Matrix>,
    class: Option<PangClass>,
    involutivity: Option<Involutivity>,
}

impl LegendrianDistribution {
    pub fn frame(&self) -> &[VectorField] {
        &self.frame
    }

    pub fn pang_matrix(&self) -> Option<&Matrix> {
        self.pang_matrix.as_ref()
    }

    pub fn class(&self) -> Option<PangClass> {
        self.class
    }

    pub fn involutive(&self) -> Option<bool> {
        self.involutivity.as_ref().map(|i| i.involutive)
    }

    pub fn involutivity(&self) -> Option<&Involutivity> {
        self.involutivity.as_ref()
    }

    pub fn is_classified(&self) -> bool {
        self.class.is_some()
    }
}

pub fn validate_legendrian(cs: &ContactStructure, frame: &[VectorField]) -> Result<LegendrianDistribution> {
    let n = cs.n();
    if frame.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "a Legendrian frame needs {n} fields, got {}",
            frame.len()
        )));
    }
    let names = cs.chart().names();
    for (index, v) in frame.iter().enumerate() {
        let value = cs.eta.apply(v);
        if !value.is_zero() {
            return Err(Error::NotInContactDistribution {
                index,
                value: value.to_expr(names),
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let value = cs.d_eta.apply(&frame[i], &frame[j]);
            if !value.is_zero() {
                return Err(Error::NotIsotropic {
                    i,
                    j,
                    value: value.to_expr(names),
                });
            }
        }
    }
    let r = frame_rank(frame);
    if r < n {
        return Err(Error::RankDeficient(format!("frame has rank {r} < {n}")));
    }
    Ok(LegendrianDistribution {
        frame: frame.to_vec(),
        pang_matrix: None,
        class: None,
        involutivity: None,
    })
}

pub fn check_involutive(frame: &[VectorField]) -> Involutivity {
    for i in 0..frame.len() {
        for j in i + 1..frame.len() {
            let b = lie_bracket(&frame[i], &frame[j]);
            if !in_span(frame, &b) {
                return Involutivity {
                    involutive: false,
                    witness: Some((i, j, span_residual(frame, &b))),
                };
            }
        }
    }
    Involutivity {
        involutive: true,
        witness: None,
    }
}

/// `Π(X, X') = −(L_X L_{X'} η)(ξ)`.
pub fn pang_value(cs: &ContactStructure, x: &VectorField, x2: &VectorField) -> RationalFn {
    let inner = lie_derivative_form(x2, &cs.eta);
    -&lie_derivative_form(x, &inner).apply(&cs.xi)
}

/// `−η([[ξ, X], X'])`.
pub fn pang_value_bracket(cs: &ContactStructure, x: &VectorField, x2: &VectorField) -> RationalFn {
    -&cs.eta.apply(&lie_bracket(&lie_bracket(&cs.xi, x), x2))
}

pub fn pang_classify(cs: &ContactStructure, l: &LegendrianDistribution) -> Result<LegendrianDistribution> {
    let n = l.frame.len();
    let dim = cs.chart().dim();
    let names = cs.chart().names();
    let pang = Matrix::from_fn(n, n, dim, |i, j| pang_value(cs, &l.frame[i], &l.frame[j]));
    let bracket_form = Matrix::from_fn(n, n, dim, |i, j| {
        pang_value_bracket(cs, &l.frame[i], &l.frame[j])
    });
    if let Some(w) = matrix_witness(&pang, &bracket_form, names) {
        return Err(Error::InternalInconsistency {
            name: "Pang form: Lie-derivative and double-bracket formulas".into(),
            witness: w,
        });
    }
    if let Some(w) = matrix_witness(&pang, &pang.transpose(), names) {
        return Err(Error::InternalInconsistency {
            name: "Pang form symmetry".into(),
            witness: w,
        });
    }
    let class = if pang.is_zero() {
        PangClass::Flat
    } else if determinant(&pang).is_zero() {
        PangClass::ProperlyDegenerate
    } else {
        PangClass::NonDegenerate
    };
    let bracket_flat = l
        .frame
        .iter()
        .all(|x| in_span(&l.frame, &lie_bracket(&cs.xi, x)));
    if bracket_flat != (class == PangClass::Flat) {
        return Err(Error::InternalInconsistency {
            name: "flatness bracket criterion".into(),
            witness: format!("Pang form class {} but [xi, L] in L is {bracket_flat}", class.as_str()),
        });
    }
    Ok(LegendrianDistribution {
        frame: l.frame.clone(),
        pang_matrix: Some(pang),
        class: Some(class),
        involutivity: Some(check_involutive(&l.frame)),
    })
}

/// Validates and classifies in one step.
pub fn legendrian(cs: &ContactStructure, frame: &[VectorField]) -> Result<LegendrianDistribution> {
    pang_classify(cs, &validate_legendrian(cs, frame)?)
}

/// The matrix `dη(e_a, e_b)` over the contact frame.
pub fn d_frame_pairing(cs: &ContactStructure) -> Matrix {
    let dim = cs.chart().dim();
    let f = &cs.d_frame;
    Matrix::from_fn(f.len(), f.len(), dim, |a, b| cs.d_eta.apply(&f[a], &f[b]))
}

/// The unique `V ∈ D` with `dη(V, e_a) = ω(e_a)` for every contact frame field.
pub fn dualize_on_d(cs: &ContactStructure, w: &OneForm) -> Result<VectorField> {
    let pairing = d_frame_pairing(cs);
    let rhs: Vec<RationalFn> = cs.d_frame.iter().map(|e| w.apply(e)).collect();
    let c = linalg::linear_solve(&pairing.transpose(), &rhs)?;
    let terms: Vec<(RationalFn, &VectorField)> = c.into_iter().zip(&cs.d_frame).collect();
    Ok(VectorField::combination(cs.chart(), &terms))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactMetricStructure {
    contact: ContactStructure,
    phi: Endomorphism,
    g: Metric,
}

impl ContactMetricStructure {
    pub fn contact(&self) -> &ContactStructure {
        &self.contact
    }

    pub fn phi(&self) -> &Endomorphism {
        &self.phi
    }

    pub fn metric(&self) -> &Metric {
        &self.g
    }

    /// `h̄ = ½ L_ξ φ`.
    pub fn h_bar(&self) -> Endomorphism {
        let dim = self.contact.chart().dim();
        lie_derivative_endo(&self.contact.xi, &self.phi).scale(&RationalFn::from_ratio(dim, 1, 2))
    }
}

fn identity_check(name: &str, lhs: &Matrix, rhs: &Matrix, names: &[String]) -> Result<()> {
    match matrix_witness(lhs, rhs, names) {
        None => Ok(()),
        Some(witness) => Err(Error::IdentityViolated {
            name: name.into(),
            witness,
        }),
    }
}

pub fn validate_contact_metric(cs: &ContactStructure, phi: &Endomorphism, g: &Metric) -> Result<ContactMetricStructure> {
    let chart = cs.chart();
    let dim = chart.dim();
    let names = chart.names();
    let p = phi.matrix();
    let gm = g.matrix();
    let d = cs.d_eta.matrix();
    let eta = cs.eta.components();
    let eta_eta = Matrix::outer(eta, eta);
    let minus_id = Matrix::identity(dim, dim).neg();
    identity_check(
        "phi^2 = -I + eta (x) xi",
        &p.mul(p),
        &minus_id.add(cs.eta_xi().matrix()),
        names,
    )?;
    identity_check(
        "G(phi X, phi Y) = G(X, Y) - eta(X) eta(Y)",
        &p.transpose().mul(gm).mul(p),
        &gm.sub(&eta_eta),
        names,
    )?;
    identity_check("G(X, phi Y) = d eta(X, Y)", &gm.mul(p), d, names)?;
    identity_check(
        "G(X, Y) = -d eta(X, phi Y) + eta(X) eta(Y)",
        gm,
        &d.mul(p).neg().add(&eta_eta),
        names,
    )?;
    Ok(ContactMetricStructure {
        contact: cs.clone(),
        phi: phi.clone(),
        g: g.clone(),
    })
}

/// `Q = φL`, validated as Legendrian and checked `G`-orthogonal to `L`.
pub fn conjugate_distribution(cms: &ContactMetricStructure, l: &LegendrianDistribution) -> Result<LegendrianDistribution> {
    let q: Vec<VectorField> = l.frame.iter().map(|x| cms.phi.apply(x)).collect();
    let q = validate_legendrian(&cms.contact, &q)?;
    let names = cms.contact.chart().names();
    for (i, x) in l.frame.iter().enumerate() {
        for (j, y) in q.frame.iter().enumerate() {
            let v = cms.g.apply(x, y);
            if !v.is_zero() {
                return Err(Error::InternalInconsistency {
                    name: "conjugate distribution is G-orthogonal".into(),
                    witness: format!("G(L{i}, Q{j}) = {}", v.to_expr(names)),
                });
            }
        }
    }
    Ok(q)
}

/// The square matrix `dη(A_i, B_j)`.
pub fn cross_pairing(cs: &ContactStructure, a: &[VectorField], b: &[VectorField]) -> Matrix {
    let dim = cs.chart().dim();
    Matrix::from_fn(a.len(), b.len(), dim, |i, j| cs.d_eta.apply(&a[i], &b[j]))
}

/// Builds `(φ, G)` with `φL1 = L2` from a transversal Legendrian pair. The
/// second frame is rescaled so that `dη(L1_i, L2_j) = −δ_ij`.
pub fn associated_metric_from_polarization(
    cs: &ContactStructure,
    l1: &[VectorField],
    l2: &[VectorField],
) -> Result<ContactMetricStructure> {
    let chart = cs.chart();
    let p = cross_pairing(cs, l1, l2);
    let m = inverse(&p)
        .map_err(|_| Error::IdentityViolated {
            name: "d eta pairs L1 and L2 nondegenerately".into(),
            witness: "pairing matrix is singular".into(),
        })?
        .neg();
    let l2s: Vec<VectorField> = (0..l2.len())
        .map(|j| {
            let terms: Vec<(RationalFn, &VectorField)> =
                (0..l2.len()).map(|k| (m.get(k, j).clone(), &l2[k])).collect();
            VectorField::combination(chart, &terms)
        })
        .collect();
    let mut frame: Vec<VectorField> = l1.to_vec();
    frame.extend(l2s.iter().cloned());
    frame.push(cs.xi.clone());
    let mut images: Vec<VectorField> = l2s.clone();
    images.extend(l1.iter().map(VectorField::neg));
    images.push(VectorField::zero(chart));
    let f = frame_matrix(&frame);
    let fi = inverse(&f).map_err(|_| Error::RankDeficient("L1, L2 and xi do not span".into()))?;
    let phi = Endomorphism::new(chart, frame_matrix(&images).mul(&fi))?;
    let eta = cs.eta.components();
    let g = cs
        .d_eta
        .matrix()
        .mul(phi.matrix())
        .neg()
        .add(&Matrix::outer(eta, eta));
    let g = Metric::new(chart, g).map_err(|e| Error::IdentityViolated {
        name: "associated metric".into(),
        witness: e.to_string(),
    })?;
    validate_contact_metric(cs, &phi, &g)
}

/// `λ` with `Π(λZ, X) = 2dη(X, Z)` for `X` in the frame of `F`.
pub fn pang_lambda(cs: &ContactStructure, f: &LegendrianDistribution) -> Result<Endomorphism> {
    let pang = f
        .pang_matrix()
        .ok_or_else(|| Error::NotNonDegenerate("distribution is not classified".into()))?;
    let pinv = inverse(pang).map_err(|_| Error::NotNonDegenerate("Pang form is singular".into()))?;
    let chart = cs.chart();
    let dim = chart.dim();
    let fm = frame_matrix(&f.frame);
    let two = RationalFn::from_int(dim, 2);
    let r = fm.transpose().mul(cs.d_eta.matrix()).scale(&two);
    Endomorphism::new(chart, fm.mul(&pinv).mul(&r))
}

/// `S_F = ½(I − L_ξ λ)`.
pub fn pang_operator(cs: &ContactStructure, f: &LegendrianDistribution) -> Result<Endomorphism> {
    let lambda = pang_lambda(cs, f)?;
    let dim = cs.chart().dim();
    let l = lie_derivative_endo(&cs.xi, &lambda);
    Ok(Endomorphism::identity(cs.chart())
        .sub(&l)
        .scale(&RationalFn::from_ratio(dim, 1, 2)))
}

/// The image of `S_F` on the contact distribution: a Legendrian complement
/// of an involutive non-degenerate `F`.
pub fn pang_transversal(cs: &ContactStructure, f: &LegendrianDistribution) -> Result<LegendrianDistribution> {
    match f.class() {
        Some(PangClass::NonDegenerate) => {}
        Some(c) => return Err(Error::NotNonDegenerate(format!("distribution is {}", c.as_str()))),
        None => return Err(Error::NotNonDegenerate("distribution is not classified".into())),
    }
    if f.involutive() != Some(true) {
        return Err(Error::AxiomViolated {
            name: "F involutive".into(),
            witness: "the distribution is not a foliation".into(),
        });
    }
    let s = pang_operator(cs, f)?;
    let image: Vec<VectorField> = cs.d_frame.iter().map(|e| s.apply(e)).collect();
    let basis = independent_subset(&image);
    let n = cs.n();
    if basis.len() != n {
        return Err(Error::RankDeficient(format!(
            "image of S_F has rank {} instead of {n}",
            basis.len()
        )));
    }
    let q = validate_legendrian(cs, &basis)?;
    let pairing = cross_pairing(cs, &f.frame, &q.frame);
    let det = determinant(&pairing);
    if det.is_zero() {
        return Err(Error::RankDeficient(format!(
            "image meets F: d eta pairing minor {} vanishes",
            det.to_expr(cs.chart().names())
        )));
    }
    Ok(q)
}

/// `i_X dη` restricted to the contact frame, as a convenience for callers
/// building `H`.
pub fn contraction(cs: &ContactStructure, x: &VectorField) -> OneForm {
    interior_product(x, &cs.d_eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Chart;

    fn f3(n: i64) -> RationalFn {
        RationalFn::from_int(3, n)
    }

    fn standard(n: usize) -> ContactStructure {
        let chart = Chart::darboux(n);
        let dim = 2 * n + 1;
        let mut comps = vec![RationalFn::zero(dim); dim];
        for i in 0..n {
            comps[i] = -&RationalFn::var(dim, n + i);
        }
        comps[2 * n] = RationalFn::one(dim);
        compute_reeb(&OneForm::new(&chart, comps).unwrap()).unwrap()
    }

    fn t3(chart: &ChartRef) -> VectorField {
        VectorField::new(chart, vec![f3(1), f3(0), RationalFn::var(3, 1)]).unwrap()
    }

    #[test]
    fn reeb_examples() {
        for n in [1, 2] {
            let cs = standard(n);
            assert_eq!(cs.xi(), &VectorField::coordinate(cs.chart(), 2 * n));
        }
        let chart = Chart::darboux(1);
        assert!(matches!(
            compute_reeb(&OneForm::coordinate(&chart, 2)),
            Err(Error::NotContact(_))
        ));
    }

    #[test]
    fn kernel_frame_examples() {
        let cs = standard(1);
        let c = cs.chart().clone();
        assert_eq!(cs.d_frame(), [VectorField::coordinate(&c, 1), t3(&c)]);
        assert_eq!(
            kernel_frame(&OneForm::coordinate(&c, 2)).unwrap(),
            vec![VectorField::coordinate(&c, 0), VectorField::coordinate(&c, 1)]
        );
        let cs5 = standard(2);
        let printed: Vec<String> = cs5.d_frame().iter().map(VectorField::to_expr).collect();
        assert_eq!(
            printed,
            ["d/dy1", "d/dy2", "d/dx1 + y1*d/dz", "d/dx2 + y2*d/dz"]
        );
        let y = RationalFn::var(3, 1);
        let no_const = OneForm::new(&c, vec![f3(0), f3(0), &y * &y + f3(1)]).unwrap();
        assert_eq!(kernel_frame(&no_const), Err(Error::NoGlobalFrame));
    }

    #[test]
    fn legendrian_validation_examples() {
        let cs = standard(1);
        let c = cs.chart().clone();
        assert!(validate_legendrian(&cs, &[VectorField::coordinate(&c, 1)]).is_ok());
        assert_eq!(
            validate_legendrian(&cs, &[VectorField::coordinate(&c, 0)]),
            Err(Error::NotInContactDistribution {
                index: 0,
                value: "-y".into()
            })
        );
        let cs5 = standard(2);
        let c5 = cs5.chart().clone();
        let d = cs5.d_frame();
        assert!(matches!(
            validate_legendrian(&cs5, &[d[0].clone(), d[2].clone()]),
            Err(Error::NotIsotropic { i: 0, j: 1, .. })
        ));
        assert!(validate_legendrian(&cs5, &[d[0].clone(), d[3].clone()]).is_ok());
        assert!(matches!(
            validate_legendrian(&cs5, &[d[0].clone(), d[0].clone()]),
            Err(Error::RankDeficient(_))
        ));
        let _ = c5;
    }

    #[test]
    fn pang_examples() {
        let cs = standard(1);
        let c = cs.chart().clone();
        for frame in [vec![VectorField::coordinate(&c, 1)], vec![t3(&c)]] {
            let l = legendrian(&cs, &frame).unwrap();
            assert_eq!(l.class(), Some(PangClass::Flat));
            assert!(l.pang_matrix().unwrap().is_zero());
        }
        // y d/dx + d/dy + y^2 d/dz: [xi, X] = 0 as well
        let y = RationalFn::var(3, 1);
        let x = VectorField::new(&c, vec![y.clone(), f3(1), &y * &y]).unwrap();
        assert_eq!(legendrian(&cs, &[x]).unwrap().class(), Some(PangClass::Flat));
    }

    #[test]
    fn non_degenerate_pang_form() {
        let cs = standard(1);
        let c = cs.chart().clone();
        let z = RationalFn::var(3, 2);
        let x = VectorField::coordinate(&c, 1).add(&t3(&c).scale(&z));
        let l = legendrian(&cs, &[x]).unwrap();
        assert_eq!(l.class(), Some(PangClass::NonDegenerate));
        assert_eq!(l.pang_matrix().unwrap().get(0, 0), &f3(1));
    }

    #[test]
    fn involutivity_examples() {
        let c5 = Chart::darboux(2);
        let frame = [VectorField::coordinate(&c5, 2), VectorField::coordinate(&c5, 3)];
        assert!(check_involutive(&frame).involutive);
        let v = |i| RationalFn::var(5, i);
        let (one, zero) = (RationalFn::one(5), RationalFn::zero(5));
        let a = VectorField::new(&c5, vec![one.clone(), zero.clone(), zero.clone(), v(1), v(2)]).unwrap();
        let b = VectorField::new(&c5, vec![zero.clone(), one.clone(), v(1), zero.clone(), v(3)]).unwrap();
        let inv = check_involutive(&[a, b]);
        assert!(!inv.involutive);
        assert_eq!(inv.witness.unwrap().2, VectorField::coordinate(&c5, 3).neg());
        let c = Chart::darboux(1);
        assert!(check_involutive(&[t3(&c)]).involutive);
    }

    #[test]
    fn dualize_examples() {
        let cs = standard(1);
        let c = cs.chart().clone();
        assert!(dualize_on_d(&cs, &OneForm::zero(&c)).unwrap().is_zero());
        assert!(dualize_on_d(&cs, cs.eta()).unwrap().is_zero());
        let w = OneForm::coordinate(&c, 1).scale(&RationalFn::from_ratio(3, 1, 2));
        let v = dualize_on_d(&cs, &w).unwrap();
        assert_eq!(v, t3(&c));
        assert_eq!(cs.d_eta().apply(&v, &VectorField::coordinate(&c, 1)), RationalFn::from_ratio(3, 1, 2));
    }

    #[test]
    fn polarization_metric() {
        let cs = standard(1);
        let c = cs.chart().clone();
        let dy = VectorField::coordinate(&c, 1);
        let cms = associated_metric_from_polarization(&cs, &[dy.clone()], &[t3(&c)]).unwrap();
        assert_eq!(cms.metric().apply(&dy, &dy), f3(1));
        assert_eq!(cms.metric().apply(cs.xi(), cs.xi()), f3(1));
        assert!(cms.metric().matrix().is_symmetric());
        assert_eq!(cms.phi().apply(&dy), t3(&c).scale(&f3(2)));
    }

    #[test]
    fn contact_metric_rejections() {
        let cs = standard(1);
        let c = cs.chart().clone();
        let cms = associated_metric_from_polarization(&cs, &[VectorField::coordinate(&c, 1)], &[t3(&c)]).unwrap();
        assert!(matches!(
            validate_contact_metric(&cs, &Endomorphism::zero(&c), cms.metric()),
            Err(Error::IdentityViolated { .. })
        ));
        let id = Metric::new(&c, Matrix::identity(3, 3)).unwrap();
        match validate_contact_metric(&cs, cms.phi(), &id) {
            Err(Error::IdentityViolated { name, .. }) => assert!(name.contains("G")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn conjugate_twice_returns_original_span() {
        let cs = standard(1);
        let c = cs.chart().clone();
        let dy = VectorField::coordinate(&c, 1);
        let cms = associated_metric_from_polarization(&cs, &[dy.clone()], &[t3(&c)]).unwrap();
        let l = validate_legendrian(&cs, &[dy.clone()]).unwrap();
        let q = conjugate_distribution(&cms, &l).unwrap();
        assert!(crate::exact::frame::same_span(q.frame(), &[t3(&c)]));
        let back = conjugate_distribution(&cms, &q).unwrap();
        assert!(crate::exact::frame::same_span(back.frame(), &[dy]));
    }

    #[test]
    fn transversal_of_non_degenerate_foliation() {
        let cs = standard(1);
        let c = cs.chart().clone();
        let z = RationalFn::var(3, 2);
        let x = VectorField::coordinate(&c, 1).add(&t3(&c).scale(&z));
        let f = legendrian(&cs, &[x.clone()]).unwrap();
        let s = pang_operator(&cs, &f).unwrap();
        assert!(s.apply(&x).is_zero());
        let q = pang_transversal(&cs, &f).unwrap();
        assert!(!determinant(&cross_pairing(&cs, f.frame(), q.frame())).is_zero());

        let flat = legendrian(&cs, &[VectorField::coordinate(&c, 1)]).unwrap();
        assert!(matches!(
            pang_transversal(&cs, &flat),
            Err(Error::NotNonDegenerate(_))
        ));
    }
}
