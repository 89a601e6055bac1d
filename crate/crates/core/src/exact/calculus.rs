//! Brackets, exterior derivatives and Lie derivatives on the coordinate
//! frame.
//!
//! Two-forms follow the convention `dω(∂i, ∂j) = ½(∂i ω_j − ∂j ω_i)`.

use super::{Endomorphism, Matrix, OneForm, RationalFn, TwoForm, VectorField};

pub fn partial_derivative(f: &RationalFn, coord: usize) -> RationalFn {
    f.derivative(coord)
}

/// `[X, Y]^k = X(Y^k) − Y(X^k)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let comps = x
        .components()
        .iter()
        .zip(y.components())
        .map(|(xk, yk)| &x.apply(yk) - &y.apply(xk))
        .collect();
    VectorField::new(x.chart(), comps).expect("shape preserved")
}

/// `df`.
pub fn differential(chart: &super::ChartRef, f: &RationalFn) -> OneForm {
    let comps = (0..chart.dim()).map(|i| f.derivative(i)).collect();
    OneForm::new(chart, comps).expect("shape preserved")
}

pub fn exterior_derivative(w: &OneForm) -> TwoForm {
    let chart = w.chart();
    let n = chart.dim();
    let half = RationalFn::from_ratio(n, 1, 2);
    let partials: Vec<Vec<RationalFn>> = w
        .components()
        .iter()
        .map(|c| (0..n).map(|i| c.derivative(i)).collect())
        .collect();
    // partials[j][i] = ∂i ω_j
    let m = Matrix::from_fn(n, n, n, |i, j| {
        if i == j {
            RationalFn::zero(n)
        } else {
            &(&partials[j][i] - &partials[i][j]) * &half
        }
    });
    TwoForm::new(chart, m).expect("antisymmetric by construction")
}

/// `i_Z β = β(Z, ·)`.
pub fn interior_product(z: &VectorField, beta: &TwoForm) -> OneForm {
    let comps = beta.matrix().transpose().mul_vec(z.components());
    OneForm::new(z.chart(), comps).expect("shape preserved")
}

/// `(L_Z ω)_j = Z(ω_j) + Σ_i ω_i ∂j Z^i`.
pub fn lie_derivative_form(z: &VectorField, w: &OneForm) -> OneForm {
    let n = z.chart().dim();
    let comps = (0..n)
        .map(|j| {
            let mut acc = z.apply(w.component(j));
            for (i, zi) in z.components().iter().enumerate() {
                let wi = w.component(i);
                if wi.is_zero() {
                    continue;
                }
                let d = zi.derivative(j);
                if !d.is_zero() {
                    acc += &(wi * &d);
                }
            }
            acc
        })
        .collect();
    OneForm::new(z.chart(), comps).expect("shape preserved")
}

/// `(L_Z A)∂j = [Z, A∂j] + A(∂j Z)`.
pub fn lie_derivative_endo(z: &VectorField, a: &Endomorphism) -> Endomorphism {
    let chart = z.chart();
    let n = chart.dim();
    let images: Vec<VectorField> = (0..n)
        .map(|j| {
            let dz = VectorField::new(
                chart,
                z.components().iter().map(|c| c.derivative(j)).collect(),
            )
            .expect("shape preserved");
            lie_bracket(z, &a.image(j)).add(&a.apply(&dz))
        })
        .collect();
    Endomorphism::from_images(chart, &images).expect("shape preserved")
}

/// `(L_Z B)_ij = Z(B_ij) + Σ_k B_kj ∂i Z^k + Σ_k B_ik ∂j Z^k`.
pub fn lie_derivative_bilinear(z: &VectorField, b: &Matrix) -> Matrix {
    let n = z.chart().dim();
    let dz: Vec<Vec<RationalFn>> = (0..n)
        .map(|i| z.components().iter().map(|c| c.derivative(i)).collect())
        .collect();
    Matrix::from_fn(n, n, n, |i, j| {
        let mut acc = z.apply(b.get(i, j));
        for k in 0..n {
            if !dz[i][k].is_zero() && !b.get(k, j).is_zero() {
                acc += &(b.get(k, j) * &dz[i][k]);
            }
            if !dz[j][k].is_zero() && !b.get(i, k).is_zero() {
                acc += &(b.get(i, k) * &dz[j][k]);
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Chart;

    fn field(chart: &crate::exact::ChartRef, comps: Vec<RationalFn>) -> VectorField {
        VectorField::new(chart, comps).unwrap()
    }

    fn standard_eta(chart: &crate::exact::ChartRef) -> OneForm {
        let y = RationalFn::var(3, 1);
        OneForm::new(chart, vec![-&y, RationalFn::zero(3), RationalFn::one(3)]).unwrap()
    }

    #[test]
    fn partial_derivative_examples() {
        let y = RationalFn::var(3, 1);
        let z = RationalFn::var(3, 2);
        assert_eq!(
            partial_derivative(&(&y.pow(2) * &z), 1),
            &(&y * &z) * &RationalFn::from_int(3, 2)
        );
        assert!(partial_derivative(&RationalFn::from_int(3, 7), 0).is_zero());
        let inv = RationalFn::one(3).checked_div(&y).unwrap();
        assert_eq!(
            partial_derivative(&inv, 1),
            -&RationalFn::one(3).checked_div(&y.pow(2)).unwrap()
        );
    }

    #[test]
    fn bracket_examples() {
        let c = Chart::darboux(1);
        let y = RationalFn::var(3, 1);
        let dy = VectorField::coordinate(&c, 1);
        let t = field(&c, vec![RationalFn::one(3), RationalFn::zero(3), y]);
        assert_eq!(lie_bracket(&dy, &t), VectorField::coordinate(&c, 2));
        assert!(lie_bracket(&VectorField::coordinate(&c, 2), &dy).is_zero());

        let c5 = Chart::darboux(2);
        let var = |i| RationalFn::var(5, i);
        let (one, zero) = (RationalFn::one(5), RationalFn::zero(5));
        let v = field(&c5, vec![one.clone(), zero.clone(), zero.clone(), var(1), var(2)]);
        let w = field(&c5, vec![zero.clone(), one.clone(), var(1), zero.clone(), var(3)]);
        assert_eq!(lie_bracket(&v, &w), VectorField::coordinate(&c5, 3).neg());
    }

    #[test]
    fn exterior_derivative_examples() {
        let c = Chart::darboux(1);
        let y = RationalFn::var(3, 1);
        let d = exterior_derivative(&standard_eta(&c));
        let (dx, dy) = (VectorField::coordinate(&c, 0), VectorField::coordinate(&c, 1));
        assert_eq!(d.apply(&dx, &dy), RationalFn::from_ratio(3, 1, 2));
        let t = field(&c, vec![RationalFn::one(3), RationalFn::zero(3), y.clone()]);
        assert_eq!(d.apply(&dy, &t), RationalFn::from_ratio(3, -1, 2));
        let f = &(&y.pow(3) * &RationalFn::var(3, 0)) - &RationalFn::var(3, 2);
        assert!(exterior_derivative(&differential(&c, &f)).is_zero());
    }

    #[test]
    fn lie_derivative_form_examples() {
        let c = Chart::darboux(1);
        let eta = standard_eta(&c);
        assert!(lie_derivative_form(&VectorField::coordinate(&c, 2), &eta).is_zero());
        assert_eq!(
            lie_derivative_form(&VectorField::coordinate(&c, 1), &eta),
            OneForm::coordinate(&c, 0).scale(&RationalFn::from_int(3, -1))
        );
        let y = RationalFn::var(3, 1);
        let z = field(&c, vec![y, RationalFn::zero(3), RationalFn::zero(3)]);
        assert_eq!(
            lie_derivative_form(&z, &OneForm::coordinate(&c, 0)),
            OneForm::coordinate(&c, 1)
        );
    }

    #[test]
    fn lie_derivative_endo_examples() {
        let c = Chart::darboux(1);
        let y = RationalFn::var(3, 1);
        let (one, zero) = (RationalFn::one(3), RationalFn::zero(3));
        let psi = Endomorphism::new(
            &c,
            Matrix::from_rows(
                3,
                vec![
                    vec![-&one, zero.clone(), zero.clone()],
                    vec![zero.clone(), one.clone(), zero.clone()],
                    vec![-&y, zero.clone(), zero.clone()],
                ],
            )
            .unwrap(),
        )
        .unwrap();
        assert!(lie_derivative_endo(&VectorField::coordinate(&c, 2), &psi).is_zero());
        let z = field(&c, vec![&y * &RationalFn::var(3, 2), y.clone(), one.clone()]);
        assert!(lie_derivative_endo(&z, &Endomorphism::identity(&c)).is_zero());

        // x d/dx acting on a constant matrix: entry (k, j) picks up (δ_j0 − δ_k0) a_kj
        let a = Endomorphism::new(
            &c,
            Matrix::from_fn(3, 3, 3, |i, j| RationalFn::from_int(3, (3 * i + j + 1) as i64)),
        )
        .unwrap();
        let xdx = field(&c, vec![RationalFn::var(3, 0), zero.clone(), zero.clone()]);
        let l = lie_derivative_endo(&xdx, &a);
        for k in 0..3 {
            for j in 0..3 {
                let f = (j == 0) as i64 - (k == 0) as i64;
                assert_eq!(
                    l.matrix().get(k, j),
                    &RationalFn::from_int(3, f * (3 * k + j + 1) as i64)
                );
            }
        }
    }
}
