//! Almost paracontact and paracontact metric structures.

use crate::error::{Error, Result};
use crate::exact::frame::{frame_rank, in_span};
use crate::exact::tensor::{matrix_witness, same_chart};
use crate::exact::{
    lie_bracket, lie_derivative_bilinear, lie_derivative_endo, null_space, signature_at_point,
    Endomorphism, Matrix, Metric, OneForm, Point, RationalFn, TwoForm, VectorField,
    VectorValuedForm,
};
use crate::exact::{exterior_derivative, ChartRef};
use crate::contact::check_involutive;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostParacontactStructure {
    psi: Endomorphism,
    xi: VectorField,
    eta: OneForm,
}

impl AlmostParacontactStructure {
    pub fn psi(&self) -> &Endomorphism {
        &self.psi
    }

    pub fn xi(&self) -> &VectorField {
        &self.xi
    }

    pub fn eta(&self) -> &OneForm {
        &self.eta
    }

    pub fn chart(&self) -> &ChartRef {
        self.psi.chart()
    }

    pub fn d_eta(&self) -> TwoForm {
        exterior_derivative(&self.eta)
    }
}

fn axiom(name: &str, witness: impl Into<String>) -> Error {
    Error::AxiomViolated {
        name: name.into(),
        witness: witness.into(),
    }
}

fn field_frame(chart: &ChartRef, vectors: Vec<Vec<RationalFn>>) -> Vec<VectorField> {
    vectors
        .into_iter()
        .map(|v| VectorField::new(chart, v).expect("shape"))
        .collect()
}

pub fn validate_almost_paracontact(
    psi: &Endomorphism,
    xi: &VectorField,
    eta: &OneForm,
) -> Result<AlmostParacontactStructure> {
    if !same_chart(psi.chart(), xi.chart()) || !same_chart(psi.chart(), eta.chart()) {
        return Err(Error::ChartMismatch);
    }
    let chart = psi.chart();
    let names = chart.names();
    let dim = chart.dim();
    let n = chart.n();
    let e = eta.apply(xi);
    if !e.is_one() {
        return Err(axiom("eta(xi) = 1", format!("eta(xi) = {}", e.to_expr(names))));
    }
    let target = Matrix::identity(dim, dim).sub(&Matrix::outer(xi.components(), eta.components()));
    if let Some(w) = matrix_witness(&psi.matrix().mul(psi.matrix()), &target, names) {
        return Err(axiom("psi^2 = I - eta (x) xi", w));
    }
    let px = psi.apply(xi);
    if !px.is_zero() {
        return Err(axiom("psi xi = 0", format!("psi xi = {px}")));
    }
    let ep = psi.pull(eta);
    if !ep.is_zero() {
        return Err(axiom("eta o psi = 0", format!("eta o psi = {ep}")));
    }
    let id = Endomorphism::identity(chart);
    let plus = null_space(psi.sub(&id).matrix()).len();
    let minus = null_space(psi.add(&id).matrix()).len();
    if plus != n || minus != n {
        return Err(axiom(
            "eigendistributions of rank n",
            format!("ranks ({plus}, {minus}) instead of ({n}, {n})"),
        ));
    }
    Ok(AlmostParacontactStructure {
        psi: psi.clone(),
        xi: xi.clone(),
        eta: eta.clone(),
    })
}

/// Frames of the `+1` and `−1` eigendistributions of `ψ`.
pub fn eigendistributions(aps: &AlmostParacontactStructure) -> Result<(Vec<VectorField>, Vec<VectorField>)> {
    let chart = aps.chart();
    let n = chart.n();
    let id = Endomorphism::identity(chart);
    let plus = field_frame(chart, null_space(aps.psi.sub(&id).matrix()));
    let minus = field_frame(chart, null_space(aps.psi.add(&id).matrix()));
    if plus.len() != n || minus.len() != n {
        return Err(Error::RankDeficient(format!(
            "eigendistribution ranks ({}, {})",
            plus.len(),
            minus.len()
        )));
    }
    Ok((plus, minus))
}

/// `N_ψ(∂i, ∂j) = [ψ∂i, ψ∂j] − ψ[ψ∂i, ∂j] − ψ[∂i, ψ∂j]`; the `ψ²[∂i, ∂j]`
/// term vanishes on coordinate fields.
pub fn nijenhuis(psi: &Endomorphism) -> VectorValuedForm {
    let chart = psi.chart();
    let images: Vec<VectorField> = (0..chart.dim()).map(|i| psi.image(i)).collect();
    VectorValuedForm::from_fn(chart, |i, j| {
        let di = VectorField::coordinate(chart, i);
        let dj = VectorField::coordinate(chart, j);
        lie_bracket(&images[i], &images[j])
            .sub(&psi.apply(&lie_bracket(&images[i], &dj)))
            .sub(&psi.apply(&lie_bracket(&di, &images[j])))
    })
}

/// `N^{(1)} = N_ψ − 2dη ⊗ ξ`.
pub fn n1_tensor(aps: &AlmostParacontactStructure) -> VectorValuedForm {
    let n = nijenhuis(&aps.psi);
    let d = aps.d_eta();
    let two = RationalFn::from_int(aps.chart().dim(), 2);
    VectorValuedForm::from_fn(aps.chart(), |i, j| {
        n.at(i, j)
            .sub(&aps.xi.scale(&(&two * d.matrix().get(i, j))))
    })
}

/// `h = ½ L_ξ ψ`, checked against `hξ = 0` and `hψ = −ψh`.
pub fn compute_h(aps: &AlmostParacontactStructure) -> Result<Endomorphism> {
    let chart = aps.chart();
    let h = lie_derivative_endo(&aps.xi, &aps.psi).scale(&RationalFn::from_ratio(chart.dim(), 1, 2));
    let hx = h.apply(&aps.xi);
    if !hx.is_zero() {
        return Err(Error::InternalInconsistency {
            name: "h xi = 0".into(),
            witness: format!("h xi = {hx}"),
        });
    }
    let hp = h.compose(&aps.psi);
    let ph = aps.psi.compose(&h).neg();
    if let Some(w) = matrix_witness(hp.matrix(), ph.matrix(), chart.names()) {
        return Err(Error::InternalInconsistency {
            name: "h psi = -psi h".into(),
            witness: w,
        });
    }
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetricFlags {
    pub compatible: bool,
    pub paracontact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParacontactMetricStructure {
    base: AlmostParacontactStructure,
    g: Metric,
    h: Endomorphism,
    flags: MetricFlags,
    signature: (usize, usize),
}

impl ParacontactMetricStructure {
    pub fn base(&self) -> &AlmostParacontactStructure {
        &self.base
    }

    pub fn psi(&self) -> &Endomorphism {
        &self.base.psi
    }

    pub fn xi(&self) -> &VectorField {
        &self.base.xi
    }

    pub fn eta(&self) -> &OneForm {
        &self.base.eta
    }

    pub fn metric(&self) -> &Metric {
        &self.g
    }

    pub fn h(&self) -> &Endomorphism {
        &self.h
    }

    pub fn flags(&self) -> MetricFlags {
        self.flags
    }

    pub fn chart(&self) -> &ChartRef {
        self.base.chart()
    }

    /// Signature recorded at the sample point used during validation.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }
}

/// Checks `g(ψX, ψY) = −g(X, Y) + η(X)η(Y)`, records whether
/// `dη(X, Y) = g(X, ψY)` and probes the signature at `point` (origin by
/// default).
pub fn validate_metric(
    aps: &AlmostParacontactStructure,
    g: &Metric,
    point: Option<&Point>,
) -> Result<ParacontactMetricStructure> {
    if !same_chart(aps.chart(), g.chart()) {
        return Err(Error::ChartMismatch);
    }
    let chart = aps.chart();
    let names = chart.names();
    let p = aps.psi.matrix();
    let gm = g.matrix();
    let eta = aps.eta.components();
    let target = gm.neg().add(&Matrix::outer(eta, eta));
    if let Some(w) = matrix_witness(&p.transpose().mul(gm).mul(p), &target, names) {
        return Err(axiom("g(psi X, psi Y) = -g(X, Y) + eta(X) eta(Y)", w));
    }
    let d = aps.d_eta();
    let paracontact = matrix_witness(&gm.mul(p), d.matrix(), names);
    if let Some(w) = paracontact {
        return Err(axiom("d eta(X, Y) = g(X, psi Y)", w));
    }
    let origin = Point::origin(chart);
    let signature = signature_at_point(g, point.unwrap_or(&origin))?;
    let n = chart.n();
    if signature != (n + 1, n) {
        return Err(axiom(
            "signature (n+1, n)",
            format!("signature {signature:?}"),
        ));
    }
    let h = compute_h(aps)?;
    Ok(ParacontactMetricStructure {
        base: aps.clone(),
        g: g.clone(),
        h,
        flags: MetricFlags {
            compatible: true,
            paracontact: true,
        },
        signature,
    })
}

/// The three structural properties together with their witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub normal: bool,
    pub integrable: bool,
    pub k_paracontact: bool,
    /// First coordinate pair where `N^{(1)}` is nonzero.
    pub normal_witness: Option<String>,
    /// First pair of eigenframe fields whose Nijenhuis value leaves `ℝξ`.
    pub integrable_witness: Option<String>,
    pub k_paracontact_witness: Option<String>,
    pub tplus_involutive: bool,
    pub tminus_involutive: bool,
    pub xi_foliate: bool,
}

/// Part of a vector field transverse to `ξ`: `V − η(V)ξ`.
pub fn transverse_part(aps: &AlmostParacontactStructure, v: &VectorField) -> VectorField {
    v.sub(&aps.xi.scale(&aps.eta.apply(v)))
}

pub fn diagnostics(pms: &ParacontactMetricStructure) -> Result<Diagnostics> {
    let aps = &pms.base;
    let chart = aps.chart();
    let names = chart.names();

    let n1 = n1_tensor(aps);
    let normal_witness = n1
        .first_nonzero()
        .map(|(i, j, v)| format!("N1(d/d{}, d/d{}) = {v}", names[i], names[j]));

    let (plus, minus) = eigendistributions(aps)?;
    let d_frame: Vec<VectorField> = plus.iter().chain(&minus).cloned().collect();
    let nij = nijenhuis(&aps.psi);
    let mut integrable_witness = None;
    'outer: for (a, x) in d_frame.iter().enumerate() {
        for (b, y) in d_frame.iter().enumerate().skip(a + 1) {
            let r = transverse_part(aps, &nij.apply(x, y));
            if !r.is_zero() {
                integrable_witness = Some(format!("N_psi(e{a}, e{b}) has transverse part {r}"));
                break 'outer;
            }
        }
    }

    let h_witness = matrix_witness(pms.h.matrix(), &Matrix::zeros(chart.dim(), chart.dim(), chart.dim()), names);
    let lg = lie_derivative_bilinear(&aps.xi, pms.g.matrix());
    if h_witness.is_none() != lg.is_zero() {
        return Err(Error::InternalInconsistency {
            name: "h = 0 iff xi is Killing".into(),
            witness: format!("h zero: {}, L_xi g zero: {}", h_witness.is_none(), lg.is_zero()),
        });
    }

    let tplus_involutive = check_involutive(&plus).involutive;
    let tminus_involutive = check_involutive(&minus).involutive;
    let xi_foliate = plus
        .iter()
        .all(|x| in_span(&plus, &lie_bracket(&aps.xi, x)))
        && minus
            .iter()
            .all(|y| in_span(&minus, &lie_bracket(&aps.xi, y)));
    let normal = normal_witness.is_none();
    if normal != (tplus_involutive && tminus_involutive && xi_foliate) {
        return Err(Error::InternalInconsistency {
            name: "normality: N1 versus foliation criterion".into(),
            witness: format!(
                "N1 zero: {normal}, T+ involutive: {tplus_involutive}, T- involutive: {tminus_involutive}, xi foliate: {xi_foliate}"
            ),
        });
    }
    Ok(Diagnostics {
        normal,
        integrable: integrable_witness.is_none(),
        k_paracontact: h_witness.is_none(),
        normal_witness,
        integrable_witness,
        k_paracontact_witness: h_witness.map(|w| format!("h {w}")),
        tplus_involutive,
        tminus_involutive,
        xi_foliate,
    })
}

/// `g(hX, Y) = g(X, hY)` and `tr h = 0`.
pub fn h_is_symmetric_trace_free(pms: &ParacontactMetricStructure) -> Option<String> {
    let g = pms.g.matrix();
    let h = pms.h.matrix();
    let names = pms.chart().names();
    if let Some(w) = matrix_witness(&h.transpose().mul(g), &g.mul(h), names) {
        return Some(format!("g(hX, Y) != g(X, hY): {w}"));
    }
    let t = pms.h.trace();
    (!t.is_zero()).then(|| format!("trace h = {}", t.to_expr(names)))
}

/// Rank of a frame, re-exported for callers checking eigenframes.
pub fn eigen_ranks(aps: &AlmostParacontactStructure) -> Result<(usize, usize)> {
    let (p, m) = eigendistributions(aps)?;
    Ok((frame_rank(&p), frame_rank(&m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Chart;

    /// `ψ`, `ξ`, `η` and `g` of the standard structure on ℝ^{2n+1}.
    pub(crate) fn standard(n: usize) -> (Endomorphism, VectorField, OneForm, Metric) {
        let chart = Chart::darboux(n);
        let dim = 2 * n + 1;
        let c = |v: i64| RationalFn::from_int(dim, v);
        let half = RationalFn::from_ratio(dim, 1, 2);
        let y = |i: usize| RationalFn::var(dim, n + i);
        let z = 2 * n;
        let psi = Matrix::from_fn(dim, dim, dim, |r, col| {
            if col < n {
                if r == col {
                    c(-1)
                } else if r == z {
                    -&y(col)
                } else {
                    c(0)
                }
            } else if col < 2 * n && r == col {
                c(1)
            } else {
                c(0)
            }
        });
        let g = Matrix::from_fn(dim, dim, dim, |r, col| match (r < n, col < n) {
            (true, true) => &y(r) * &y(col),
            _ if r < n && col == z => -&y(r),
            _ if col < n && r == z => -&y(col),
            _ if r < n && col == r + n => half.clone(),
            _ if col < n && r == col + n => half.clone(),
            _ if r == z && col == z => c(1),
            _ => c(0),
        });
        let mut eta = vec![c(0); dim];
        for i in 0..n {
            eta[i] = -&y(i);
        }
        eta[z] = c(1);
        (
            Endomorphism::new(&chart, psi).unwrap(),
            VectorField::coordinate(&chart, z),
            OneForm::new(&chart, eta).unwrap(),
            Metric::new(&chart, g).unwrap(),
        )
    }

    #[test]
    fn standard_structure_is_valid() {
        for n in [1, 2] {
            let (psi, xi, eta, g) = standard(n);
            let aps = validate_almost_paracontact(&psi, &xi, &eta).unwrap();
            let pms = validate_metric(&aps, &g, None).unwrap();
            assert_eq!(pms.signature(), (n + 1, n));
            assert!(pms.h().is_zero());
            assert!(n1_tensor(&aps).is_zero());
            let d = diagnostics(&pms).unwrap();
            assert!(d.normal && d.integrable && d.k_paracontact);
            assert_eq!(eigen_ranks(&aps).unwrap(), (n, n));
            assert!(h_is_symmetric_trace_free(&pms).is_none());
        }
    }

    #[test]
    fn axiom_rejections() {
        let (psi, xi, eta, _) = standard(1);
        let c = psi.chart().clone();
        assert!(matches!(
            validate_almost_paracontact(&Endomorphism::zero(&c), &xi, &eta),
            Err(Error::AxiomViolated { .. })
        ));
        // identity on D: both eigen-ranks land on +1
        let proj = Endomorphism::identity(&c).sub(&Endomorphism::rank_one(&xi, &eta));
        match validate_almost_paracontact(&proj, &xi, &eta) {
            Err(Error::AxiomViolated { name, .. }) => assert!(name.contains("rank")),
            other => panic!("{other:?}"),
        }
        let aps = validate_almost_paracontact(&psi, &xi, &eta).unwrap();
        let id = Metric::new(&c, Matrix::identity(3, 3)).unwrap();
        assert!(matches!(
            validate_metric(&aps, &id, None),
            Err(Error::AxiomViolated { .. })
        ));
    }

    #[test]
    fn eigendistribution_frames() {
        let (psi, xi, eta, _) = standard(1);
        let aps = validate_almost_paracontact(&psi, &xi, &eta).unwrap();
        let (p, m) = eigendistributions(&aps).unwrap();
        assert_eq!(p[0].to_expr(), "d/dy");
        assert_eq!(m[0].to_expr(), "d/dx + y*d/dz");
        assert!(eta.apply(&p[0]).is_zero() && eta.apply(&m[0]).is_zero());
    }

    #[test]
    fn nijenhuis_properties() {
        let (psi, xi, eta, _) = standard(1);
        let c = psi.chart().clone();
        assert!(nijenhuis(&Endomorphism::identity(&c)).is_zero());
        let n = nijenhuis(&psi);
        let aps = validate_almost_paracontact(&psi, &xi, &eta).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(n.at(i, j), &n.at(j, i).neg());
                assert!(transverse_part(&aps, n.at(i, j)).is_zero());
            }
        }
        assert!(n1_tensor(&aps).at(2, 2).is_zero());
    }
}
