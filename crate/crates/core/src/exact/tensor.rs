//! Component arrays over a chart.
//!
//! Vector fields and 1-forms are coefficient vectors in the coordinate
//! frame. Endomorphisms store the image of `∂j` in column `j`. Two-forms,
//! metrics and general bilinear forms store `B(∂i, ∂j)` at `(i, j)`.

use std::sync::Arc;

use super::linalg::{self, Matrix};
use super::{Chart, ChartRef, Point, Rational, RationalFn};
use crate::error::{Error, Result};

pub(crate) fn same_chart(a: &ChartRef, b: &ChartRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn check_chart(a: &ChartRef, b: &ChartRef) {
    assert!(same_chart(a, b), "tensors live on different charts");
}

/// Evaluates one component, naming it in the pole error.
pub fn eval_component(f: &RationalFn, p: &Point, chart: &Chart, label: String) -> Result<Rational> {
    f.eval(p.values()).map_err(|_| Error::PoleAtPoint {
        component: label,
        denominator: f.denom().to_expr(chart.names()),
    })
}

fn coefficient_term(c: &RationalFn, basis: &str, names: &[String]) -> Option<String> {
    if c.is_zero() {
        return None;
    }
    if c.is_one() {
        return Some(basis.to_string());
    }
    if c.is_minus_one() {
        return Some(format!("-{basis}"));
    }
    let e = c.to_expr(names);
    let bare = !e[1..].contains([' ', '/', '+', '-']);
    Some(if bare {
        format!("{e}*{basis}")
    } else {
        format!("({e})*{basis}")
    })
}

/// Renders `Σ c_i · basis_i`, e.g. `d/dx + y*d/dz` or `dz - y*dx`.
pub(crate) fn format_combination(comps: &[RationalFn], names: &[String], basis: impl Fn(&str) -> String) -> String {
    let terms: Vec<String> = comps
        .iter()
        .zip(names)
        .filter_map(|(c, n)| coefficient_term(c, &basis(n), names))
        .collect();
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        match (k, t.strip_prefix('-')) {
            (0, _) => out.push_str(t),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
    }
    out
}

/// Describes the first entry where two matrices differ, if any.
pub(crate) fn matrix_witness(a: &Matrix, b: &Matrix, names: &[String]) -> Option<String> {
    a.first_difference(b)
        .map(|((i, j), d)| format!("entry ({}, {}) differs by {}", i, j, d.to_expr(names)))
}

fn check_len(chart: &Chart, len: usize, what: &str) -> Result<()> {
    if len != chart.dim() {
        return Err(Error::ShapeMismatch(format!(
            "{what} has {len} components on a chart of dimension {}",
            chart.dim()
        )));
    }
    Ok(())
}

fn check_square(chart: &Chart, m: &Matrix, what: &str) -> Result<()> {
    if m.nrows() != chart.dim() || m.ncols() != chart.dim() {
        return Err(Error::ShapeMismatch(format!(
            "{what} is {}x{} on a chart of dimension {}",
            m.nrows(),
            m.ncols(),
            chart.dim()
        )));
    }
    Ok(())
}

fn eval_matrix(m: &Matrix, p: &Point, chart: &Chart) -> Result<Vec<Vec<Rational>>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| eval_component(m.get(i, j), p, chart, format!("[{i}][{j}]")))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    chart: ChartRef,
    comps: Vec<RationalFn>,
}

impl VectorField {
    pub fn new(chart: &ChartRef, comps: Vec<RationalFn>) -> Result<Self> {
        check_len(chart, comps.len(), "vector field")?;
        Ok(VectorField {
            chart: chart.clone(),
            comps,
        })
    }

    pub fn zero(chart: &ChartRef) -> Self {
        VectorField {
            chart: chart.clone(),
            comps: vec![RationalFn::zero(chart.dim()); chart.dim()],
        }
    }

    /// The coordinate field `∂/∂x_i`.
    pub fn coordinate(chart: &ChartRef, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[i] = RationalFn::one(chart.dim());
        v
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn components(&self) -> &[RationalFn] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &RationalFn {
        &self.comps[i]
    }

    pub fn into_components(self) -> Vec<RationalFn> {
        self.comps
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &RationalFn) -> RationalFn {
        let mut acc = RationalFn::zero(self.chart.dim());
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.derivative(i);
            if !d.is_zero() {
                acc += &(c * &d);
            }
        }
        acc
    }

    fn zip(&self, other: &VectorField, f: impl Fn(&RationalFn, &RationalFn) -> RationalFn) -> VectorField {
        check_chart(&self.chart, &other.chart);
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &RationalFn) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|a| -a).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RationalFn::is_zero)
    }

    pub fn eval(&self, p: &Point) -> Result<Vec<Rational>> {
        self.comps
            .iter()
            .enumerate()
            .map(|(i, c)| eval_component(c, p, &self.chart, format!("[{i}]")))
            .collect()
    }

    pub fn to_expr(&self) -> String {
        format_combination(&self.comps, self.chart.names(), |n| format!("d/d{n}"))
    }

    /// Linear combination `Σ c_a V_a`.
    pub fn combination(chart: &ChartRef, terms: &[(RationalFn, &VectorField)]) -> VectorField {
        let mut acc = Self::zero(chart);
        for (c, v) in terms {
            if !c.is_zero() {
                acc = acc.add(&v.scale(c));
            }
        }
        acc
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_expr())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    chart: ChartRef,
    comps: Vec<RationalFn>,
}

impl OneForm {
    pub fn new(chart: &ChartRef, comps: Vec<RationalFn>) -> Result<Self> {
        check_len(chart, comps.len(), "1-form")?;
        Ok(OneForm {
            chart: chart.clone(),
            comps,
        })
    }

    pub fn zero(chart: &ChartRef) -> Self {
        OneForm {
            chart: chart.clone(),
            comps: vec![RationalFn::zero(chart.dim()); chart.dim()],
        }
    }

    /// The coordinate differential `dx_i`.
    pub fn coordinate(chart: &ChartRef, i: usize) -> Self {
        let mut w = Self::zero(chart);
        w.comps[i] = RationalFn::one(chart.dim());
        w
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn components(&self) -> &[RationalFn] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &RationalFn {
        &self.comps[i]
    }

    pub fn apply(&self, v: &VectorField) -> RationalFn {
        check_chart(&self.chart, &v.chart);
        let mut acc = RationalFn::zero(self.chart.dim());
        for (a, b) in self.comps.iter().zip(&v.comps) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        check_chart(&self.chart, &other.chart);
        OneForm {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        self.add(&other.scale(&RationalFn::from_int(self.chart.dim(), -1)))
    }

    pub fn scale(&self, c: &RationalFn) -> OneForm {
        OneForm {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RationalFn::is_zero)
    }

    pub fn eval(&self, p: &Point) -> Result<Vec<Rational>> {
        self.comps
            .iter()
            .enumerate()
            .map(|(i, c)| eval_component(c, p, &self.chart, format!("[{i}]")))
            .collect()
    }

    pub fn to_expr(&self) -> String {
        format_combination(&self.comps, self.chart.names(), |n| format!("d{n}"))
    }

    /// Tensor square `ω ⊗ ω` as a bilinear-form matrix.
    pub fn square(&self) -> Matrix {
        Matrix::outer(&self.comps, &self.comps)
    }
}

impl std::fmt::Display for OneForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_expr())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForm {
    chart: ChartRef,
    matrix: Matrix,
}

impl TwoForm {
    pub fn new(chart: &ChartRef, matrix: Matrix) -> Result<Self> {
        check_square(chart, &matrix, "2-form")?;
        if let Some(((i, j), _)) = matrix.first_difference(&matrix.transpose().neg()) {
            return Err(Error::ShapeMismatch(format!(
                "2-form is not antisymmetric at ({i}, {j})"
            )));
        }
        Ok(TwoForm {
            chart: chart.clone(),
            matrix,
        })
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &VectorField, y: &VectorField) -> RationalFn {
        self.matrix.bilinear(x.components(), y.components())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn eval(&self, p: &Point) -> Result<Vec<Vec<Rational>>> {
        eval_matrix(&self.matrix, p, &self.chart)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    chart: ChartRef,
    matrix: Matrix,
}

impl Endomorphism {
    pub fn new(chart: &ChartRef, matrix: Matrix) -> Result<Self> {
        check_square(chart, &matrix, "endomorphism")?;
        Ok(Endomorphism {
            chart: chart.clone(),
            matrix,
        })
    }

    pub fn identity(chart: &ChartRef) -> Self {
        Endomorphism {
            chart: chart.clone(),
            matrix: Matrix::identity(chart.dim(), chart.dim()),
        }
    }

    pub fn zero(chart: &ChartRef) -> Self {
        Endomorphism {
            chart: chart.clone(),
            matrix: Matrix::zeros(chart.dim(), chart.dim(), chart.dim()),
        }
    }

    /// Endomorphism whose `j`-th column is the image of `∂j`.
    pub fn from_images(chart: &ChartRef, images: &[VectorField]) -> Result<Self> {
        check_len(chart, images.len(), "image list")?;
        let cols: Vec<Vec<RationalFn>> = images.iter().map(|v| v.comps.clone()).collect();
        Ok(Endomorphism {
            chart: chart.clone(),
            matrix: Matrix::from_columns(chart.dim(), chart.dim(), &cols),
        })
    }

    /// `X ↦ ω(X) v`.
    pub fn rank_one(v: &VectorField, w: &OneForm) -> Self {
        check_chart(&v.chart, &w.chart);
        Endomorphism {
            chart: v.chart.clone(),
            matrix: Matrix::outer(&v.comps, &w.comps),
        }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &VectorField) -> VectorField {
        check_chart(&self.chart, &v.chart);
        VectorField {
            chart: self.chart.clone(),
            comps: self.matrix.mul_vec(&v.comps),
        }
    }

    /// The image of `∂j`.
    pub fn image(&self, j: usize) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: self.matrix.column(j),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        check_chart(&self.chart, &other.chart);
        Endomorphism {
            chart: self.chart.clone(),
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    /// Pullback of a 1-form: `(ω ∘ A)`.
    pub fn pull(&self, w: &OneForm) -> OneForm {
        OneForm {
            chart: self.chart.clone(),
            comps: self.matrix.transpose().mul_vec(&w.comps),
        }
    }

    pub fn add(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            chart: self.chart.clone(),
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            chart: self.chart.clone(),
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn scale(&self, c: &RationalFn) -> Endomorphism {
        Endomorphism {
            chart: self.chart.clone(),
            matrix: self.matrix.scale(c),
        }
    }

    pub fn neg(&self) -> Endomorphism {
        Endomorphism {
            chart: self.chart.clone(),
            matrix: self.matrix.neg(),
        }
    }

    pub fn trace(&self) -> RationalFn {
        self.matrix.trace()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn eval(&self, p: &Point) -> Result<Vec<Vec<Rational>>> {
        eval_matrix(&self.matrix, p, &self.chart)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    chart: ChartRef,
    matrix: Matrix,
}

impl Metric {
    /// Checks symmetry and that the determinant is not identically zero.
    pub fn new(chart: &ChartRef, matrix: Matrix) -> Result<Self> {
        check_square(chart, &matrix, "metric")?;
        if let Some(((i, j), _)) = matrix.first_difference(&matrix.transpose()) {
            return Err(Error::ShapeMismatch(format!(
                "metric is not symmetric at ({i}, {j})"
            )));
        }
        if linalg::determinant(&matrix).is_zero() {
            return Err(Error::SingularMetric);
        }
        Ok(Metric {
            chart: chart.clone(),
            matrix,
        })
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &VectorField, y: &VectorField) -> RationalFn {
        self.matrix.bilinear(x.components(), y.components())
    }

    /// `g(X, ·)`.
    pub fn lower(&self, x: &VectorField) -> OneForm {
        OneForm {
            chart: self.chart.clone(),
            comps: self.matrix.transpose().mul_vec(&x.comps),
        }
    }

    pub fn eval(&self, p: &Point) -> Result<Vec<Vec<Rational>>> {
        eval_matrix(&self.matrix, p, &self.chart)
    }
}

/// A vector-valued bilinear map such as a torsion or Nijenhuis tensor,
/// stored as the fields `T(∂i, ∂j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorValuedForm {
    chart: ChartRef,
    values: Vec<VectorField>,
}

impl VectorValuedForm {
    pub fn from_fn(chart: &ChartRef, mut f: impl FnMut(usize, usize) -> VectorField) -> Self {
        let n = chart.dim();
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                values.push(f(i, j));
            }
        }
        VectorValuedForm {
            chart: chart.clone(),
            values,
        }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    /// `T(∂i, ∂j)`.
    pub fn at(&self, i: usize, j: usize) -> &VectorField {
        &self.values[i * self.chart.dim() + j]
    }

    pub fn apply(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let n = self.chart.dim();
        let mut acc = VectorField::zero(&self.chart);
        for i in 0..n {
            if x.comps[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.comps[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.at(i, j).scale(&(&x.comps[i] * &y.comps[j])));
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(VectorField::is_zero)
    }

    /// First coordinate pair with a nonzero value.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &VectorField)> {
        let n = self.chart.dim();
        self.values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k / n, k % n, v))
    }
}

/// Signature `(positives, negatives)` of the metric at a point.
pub fn signature_at_point(g: &Metric, p: &Point) -> Result<(usize, usize)> {
    let m = g.eval(p)?;
    linalg::signature(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Chart;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn standard_metric(chart: &ChartRef) -> Metric {
        let y = RationalFn::var(3, 1);
        let c = |n, d| RationalFn::from_ratio(3, n, d);
        let m = Matrix::from_rows(
            3,
            vec![
                vec![y.pow(2), c(1, 2), -&y],
                vec![c(1, 2), c(0, 1), c(0, 1)],
                vec![-&y, c(0, 1), c(1, 1)],
            ],
        )
        .unwrap();
        Metric::new(chart, m).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let chart = Chart::darboux(1);
        let y = RationalFn::var(3, 1);
        let v = VectorField::new(&chart, vec![y.pow(2), RationalFn::from_ratio(3, 1, 2), -&y]).unwrap();
        let p = Point::parse(&chart, "x=0,y=2,z=0").unwrap();
        assert_eq!(v.eval(&p).unwrap(), vec![r(4, 1), r(1, 2), r(-2, 1)]);

        let pole = VectorField::new(
            &chart,
            vec![RationalFn::one(3).checked_div(&y).unwrap(), RationalFn::zero(3), RationalFn::zero(3)],
        )
        .unwrap();
        let origin = Point::origin(&chart);
        assert!(matches!(pole.eval(&origin), Err(Error::PoleAtPoint { .. })));

        let g = standard_metric(&chart);
        let p = Point::parse(&chart, "x=0,y=1,z=0").unwrap();
        assert_eq!(
            g.eval(&p).unwrap(),
            vec![
                vec![r(1, 1), r(1, 2), r(-1, 1)],
                vec![r(1, 2), r(0, 1), r(0, 1)],
                vec![r(-1, 1), r(0, 1), r(1, 1)],
            ]
        );
        assert_eq!(signature_at_point(&g, &origin).unwrap(), (2, 1));
    }

    #[test]
    fn printing() {
        let chart = Chart::darboux(1);
        let y = RationalFn::var(3, 1);
        let v = VectorField::new(&chart, vec![RationalFn::one(3), RationalFn::zero(3), y.clone()]).unwrap();
        assert_eq!(v.to_expr(), "d/dx + y*d/dz");
        let eta = OneForm::new(&chart, vec![-&y, RationalFn::zero(3), RationalFn::one(3)]).unwrap();
        assert_eq!(eta.to_expr(), "-y*dx + dz");
        assert_eq!(VectorField::zero(&chart).to_expr(), "0");
    }

    #[test]
    fn metric_rejects_degenerate_or_asymmetric() {
        let chart = Chart::darboux(1);
        assert_eq!(
            Metric::new(&chart, Matrix::zeros(3, 3, 3)),
            Err(Error::SingularMetric)
        );
        let mut m = Matrix::identity(3, 3);
        m.set(0, 1, RationalFn::one(3));
        assert!(matches!(Metric::new(&chart, m), Err(Error::ShapeMismatch(_))));
    }
}
