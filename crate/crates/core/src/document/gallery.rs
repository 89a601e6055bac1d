//! Built-in example structures.

use super::format::{ContactMetricData, StructureDocument, Suite};
use crate::contact::{associated_metric_from_polarization, compute_reeb};
use crate::error::{Error, Result};
use crate::exact::{Chart, ChartRef, Endomorphism, Matrix, Metric, OneForm, RationalFn, VectorField};

pub const GALLERY: [&str; 3] = ["standard-parasasakian", "sasakian-r3", "nonintegrable-r5"];

/// `standard-r3` and `standard-r5` are shorthands for the standard item with
/// `n = 1` and `n = 2`.
pub fn load_gallery(name: &str, n: Option<usize>) -> Result<StructureDocument> {
    let fixed = |doc: StructureDocument, own: usize| match n {
        Some(k) if k != own => Err(Error::InvalidChart(format!("{name} is only defined for n = {own}"))),
        _ => Ok(doc),
    };
    match name {
        "standard-parasasakian" => {
            let n = n.unwrap_or(1);
            if n == 0 {
                return Err(Error::InvalidChart("n must be positive".into()));
            }
            Ok(standard(n))
        }
        "standard-r3" => fixed(standard(1), 1),
        "standard-r5" => fixed(standard(2), 2),
        "sasakian-r3" => fixed(sasakian_r3()?, 1),
        "nonintegrable-r5" => fixed(nonintegrable_r5(), 2),
        other => Err(Error::UnknownGalleryName(other.into())),
    }
}

fn standard_eta(chart: &ChartRef) -> OneForm {
    let n = chart.n();
    let dim = chart.dim();
    let mut comps = vec![RationalFn::zero(dim); dim];
    for (i, c) in comps.iter_mut().enumerate().take(n) {
        *c = -&RationalFn::var(dim, n + i);
    }
    comps[2 * n] = RationalFn::one(dim);
    OneForm::new(chart, comps).expect("shape")
}

/// `ψ∂x_i = −∂x_i − y_i∂z`, `ψ∂y_i = ∂y_i`, `ψ∂z = 0`.
pub fn standard_psi(chart: &ChartRef) -> Endomorphism {
    let n = chart.n();
    let dim = chart.dim();
    let mut m = Matrix::zeros(dim, dim, dim);
    for i in 0..n {
        m.set(i, i, RationalFn::from_int(dim, -1));
        m.set(2 * n, i, -&RationalFn::var(dim, n + i));
        m.set(n + i, n + i, RationalFn::one(dim));
    }
    Endomorphism::new(chart, m).expect("shape")
}

/// `g(∂x_i, ∂x_j) = y_i y_j`, `g(∂x_i, ∂y_i) = 1/2`, `g(∂x_i, ∂z) = −y_i`,
/// `g(∂z, ∂z) = 1`.
pub fn standard_metric(chart: &ChartRef) -> Metric {
    let n = chart.n();
    let dim = chart.dim();
    let y = |i: usize| RationalFn::var(dim, n + i);
    let half = RationalFn::from_ratio(dim, 1, 2);
    let mut m = Matrix::zeros(dim, dim, dim);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, &y(i) * &y(j));
        }
        m.set(i, n + i, half.clone());
        m.set(n + i, i, half.clone());
        m.set(i, 2 * n, -&y(i));
        m.set(2 * n, i, -&y(i));
    }
    m.set(2 * n, 2 * n, RationalFn::one(dim));
    Metric::new(chart, m).expect("nondegenerate")
}

fn field(chart: &ChartRef, terms: &[(usize, RationalFn)]) -> VectorField {
    let mut comps = vec![RationalFn::zero(chart.dim()); chart.dim()];
    for (k, c) in terms {
        comps[*k] = &comps[*k] + c;
    }
    VectorField::new(chart, comps).expect("shape")
}

fn standard(n: usize) -> StructureDocument {
    let chart = Chart::darboux(n);
    let dim = chart.dim();
    let one = RationalFn::one(dim);
    let mut doc = StructureDocument::new(&chart);
    doc.eta = Some(standard_eta(&chart));
    doc.psi = Some(standard_psi(&chart));
    doc.metric = Some(standard_metric(&chart));
    doc.l1 = Some((0..n).map(|i| field(&chart, &[(n + i, one.clone())])).collect());
    doc.l2 = Some(
        (0..n)
            .map(|i| field(&chart, &[(i, one.clone()), (2 * n, RationalFn::var(dim, n + i))]))
            .collect(),
    );
    doc.suite = Some(Suite::All);
    doc
}

/// `η = (dz − y dx)/2` with the associated metric of the polarization
/// `L1 = {2∂y}`, `L2 = {2(∂x + y∂z)}`.
fn sasakian_r3() -> Result<StructureDocument> {
    let chart = Chart::darboux(1);
    let half = RationalFn::from_ratio(3, 1, 2);
    let two = RationalFn::from_int(3, 2);
    let y = RationalFn::var(3, 1);
    let eta = OneForm::new(&chart, vec![-&(&half * &y), RationalFn::zero(3), half.clone()])?;
    let cs = compute_reeb(&eta)?;
    let l1 = vec![field(&chart, &[(1, two.clone())])];
    let l2 = vec![field(&chart, &[(0, two.clone()), (2, &two * &y)])];
    let cms = associated_metric_from_polarization(&cs, &l1, &l2)?;
    let mut doc = StructureDocument::new(&chart);
    doc.eta = Some(eta);
    doc.l1 = Some(l1);
    doc.l2 = Some(l2);
    doc.contact_metric = Some(ContactMetricData {
        phi: cms.phi().clone(),
        g: cms.metric().clone(),
    });
    doc.suite = Some(Suite::All);
    Ok(doc)
}

/// Over the standard form on ℝ⁵: `L1 = {∂y1, ∂y2}` and
/// `L2 = {∂x1 + y1∂z + x2∂y2, ∂x2 + y2∂z + x2∂y1}`.
fn nonintegrable_r5() -> StructureDocument {
    let chart = Chart::darboux(2);
    let one = RationalFn::one(5);
    let var = |k| RationalFn::var(5, k);
    let (x2, y1, y2, z) = (1, 2, 3, 4);
    let mut doc = StructureDocument::new(&chart);
    doc.eta = Some(standard_eta(&chart));
    doc.l1 = Some(vec![field(&chart, &[(y1, one.clone())]), field(&chart, &[(y2, one.clone())])]);
    doc.l2 = Some(vec![
        field(&chart, &[(0, one.clone()), (z, var(y1)), (y2, var(x2))]),
        field(&chart, &[(x2, one.clone()), (z, var(y2)), (y1, var(x2))]),
    ]);
    doc.suite = Some(Suite::All);
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::validate_legendrian;
    use crate::exact::lie_bracket;

    #[test]
    fn standard_matrices_for_n1() {
        let doc = load_gallery("standard-parasasakian", Some(1)).unwrap();
        let psi = doc.psi.unwrap();
        let names = doc.chart.names().to_vec();
        let rows: Vec<Vec<String>> = psi.matrix().rows().iter().map(|r| r.iter().map(|c| c.to_expr(&names)).collect()).collect();
        assert_eq!(rows, [["-1", "0", "0"], ["0", "1", "0"], ["-y", "0", "0"]]);
        let g = doc.metric.unwrap();
        let rows: Vec<Vec<String>> = g.matrix().rows().iter().map(|r| r.iter().map(|c| c.to_expr(&names)).collect()).collect();
        assert_eq!(rows, [["y^2", "1/2", "-y"], ["1/2", "0", "0"], ["-y", "0", "1"]]);
    }

    #[test]
    fn nonintegrable_frame_is_legendrian_not_involutive() {
        let doc = load_gallery("nonintegrable-r5", None).unwrap();
        let cs = compute_reeb(doc.eta.as_ref().unwrap()).unwrap();
        let l2 = doc.l2.unwrap();
        let l = validate_legendrian(&cs, &l2).unwrap();
        assert_eq!(l.frame().len(), 2);
        assert_eq!(lie_bracket(&l2[0], &l2[1]).to_expr(), "-d/dy2");
    }

    #[test]
    fn sasakian_item_and_errors() {
        let doc = load_gallery("sasakian-r3", None).unwrap();
        let cm = doc.contact_metric.unwrap();
        let names = doc.chart.names().to_vec();
        assert_eq!(cm.g.matrix().get(0, 0).to_expr(&names), "1/4*y^2 + 1/4");
        assert_eq!(load_gallery("nope", None), Err(Error::UnknownGalleryName("nope".into())));
        assert!(load_gallery("sasakian-r3", Some(2)).is_err());
    }
}
