//! Spans of finite lists of vector fields over the function field.

use super::linalg::{linear_solve, rank, Matrix};
use super::{RationalFn, VectorField};

/// Matrix whose columns are the frame fields.
pub fn frame_matrix(frame: &[VectorField]) -> Matrix {
    let chart = frame.first().expect("nonempty frame").chart();
    let cols: Vec<Vec<RationalFn>> = frame.iter().map(|v| v.components().to_vec()).collect();
    Matrix::from_columns(chart.dim(), chart.dim(), &cols)
}

pub fn frame_rank(frame: &[VectorField]) -> usize {
    if frame.is_empty() {
        return 0;
    }
    rank(&frame_matrix(frame))
}

/// Coefficients `c` with `v = Σ c_a frame_a`, if `v` lies in the span of a
/// linearly independent frame.
pub fn span_coefficients(frame: &[VectorField], v: &VectorField) -> Option<Vec<RationalFn>> {
    if frame.is_empty() {
        return v.is_zero().then(Vec::new);
    }
    linear_solve(&frame_matrix(frame), v.components()).ok()
}

pub fn in_span(frame: &[VectorField], v: &VectorField) -> bool {
    span_coefficients(frame, v).is_some()
}

/// `v` minus its projection onto the frame along the coordinate fields not
/// used as pivots. Zero exactly when `v` lies in the span.
pub fn span_residual(frame: &[VectorField], v: &VectorField) -> VectorField {
    if frame.is_empty() {
        return v.clone();
    }
    let m = frame_matrix(frame);
    let k = frame.len();
    let mut rows: Vec<usize> = Vec::new();
    for i in 0..m.nrows() {
        if rows.len() == k {
            break;
        }
        let mut trial = rows.clone();
        trial.push(i);
        let sub = Matrix::from_fn(trial.len(), k, m.nvars(), |r, c| m.get(trial[r], c).clone());
        if rank(&sub) == trial.len() {
            rows = trial;
        }
    }
    let sub = Matrix::from_fn(rows.len(), k, m.nvars(), |r, c| m.get(rows[r], c).clone());
    let rhs: Vec<RationalFn> = rows.iter().map(|&r| v.component(r).clone()).collect();
    let coeffs = linear_solve(&sub, &rhs).expect("independent rows");
    let terms: Vec<(RationalFn, &VectorField)> = coeffs.into_iter().zip(frame).collect();
    v.sub(&VectorField::combination(v.chart(), &terms))
}

/// Greedy maximal independent sublist, in order.
pub fn independent_subset(fields: &[VectorField]) -> Vec<VectorField> {
    let mut out: Vec<VectorField> = Vec::new();
    for f in fields {
        let mut trial = out.clone();
        trial.push(f.clone());
        if frame_rank(&trial) == trial.len() {
            out = trial;
        }
    }
    out
}

/// Both frames span the same distribution.
pub fn same_span(a: &[VectorField], b: &[VectorField]) -> bool {
    let ra = frame_rank(a);
    if ra != frame_rank(b) {
        return false;
    }
    let joined: Vec<VectorField> = a.iter().chain(b).cloned().collect();
    frame_rank(&joined) == ra
}
