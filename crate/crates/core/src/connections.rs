//! Levi-Civita, bi-Legendrian and canonical paracontact connections, their
//! torsion and curvature, and the connection theorems as field-exact checks.
//!
//! Connections are stored in the coordinate frame: `∇_{∂i}∂j = Γ^k_{ij}∂k`.
//! Curvature uses `R(X, Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]}Z`.

use num_traits::Zero;
use rayon::prelude::*;

use crate::check::Check;
use crate::contact::{dualize_on_d, ContactMetricStructure, PangClass};
use crate::correspondence::BiLegendrianStructure;
use crate::error::{Error, Result};
use crate::exact::tensor::matrix_witness;
use crate::exact::{
    interior_product, inverse, lie_bracket, lie_derivative_form, linalg, ChartRef, Endomorphism,
    Matrix, Metric, OneForm, Rational, RationalFn, TwoForm, VectorField, VectorValuedForm,
};
use crate::paracontact::{diagnostics, eigendistributions, ParacontactMetricStructure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineConnection {
    chart: ChartRef,
    /// `∇_{∂i}∂j` at index `i * dim + j`.
    values: Vec<VectorField>,
}

impl AffineConnection {
    pub fn from_fn(chart: &ChartRef, f: impl FnMut(usize, usize) -> VectorField) -> Self {
        let form = VectorValuedForm::from_fn(chart, f);
        let dim = chart.dim();
        AffineConnection {
            chart: chart.clone(),
            values: (0..dim * dim).map(|k| form.at(k / dim, k % dim).clone()).collect(),
        }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    /// `∇_{∂i}∂j`.
    pub fn coordinate(&self, i: usize, j: usize) -> &VectorField {
        &self.values[i * self.chart.dim() + j]
    }

    /// `Γ^k_{ij}`.
    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &RationalFn {
        self.coordinate(i, j).component(k)
    }

    /// First `(i, j)` where the two connections differ, with `∇_{∂i}∂j − ∇'_{∂i}∂j`.
    pub fn first_difference(&self, other: &AffineConnection) -> Option<(usize, usize, VectorField)> {
        let dim = self.chart.dim();
        (0..dim * dim).find_map(|k| {
            let d = self.values[k].sub(&other.values[k]);
            (!d.is_zero()).then_some((k / dim, k % dim, d))
        })
    }

    /// `∇_X Y`.
    pub fn nabla(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let mut acc = VectorField::new(
            &self.chart,
            y.components().iter().map(|c| x.apply(c)).collect(),
        )
        .expect("shape");
        for (i, xi) in x.components().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.components().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let g = self.coordinate(i, j);
                if !g.is_zero() {
                    acc = acc.add(&g.scale(&(xi * yj)));
                }
            }
        }
        acc
    }

    /// `(∇_{∂i} ω)_j = ∂i ω_j − Γ^k_{ij} ω_k`.
    pub fn nabla_form_coordinate(&self, i: usize, w: &OneForm) -> OneForm {
        let dim = self.chart.dim();
        let comps = (0..dim)
            .map(|j| {
                let mut acc = w.component(j).derivative(i);
                for k in 0..dim {
                    let g = self.christoffel(i, j, k);
                    if !g.is_zero() && !w.component(k).is_zero() {
                        acc -= &(g * w.component(k));
                    }
                }
                acc
            })
            .collect();
        OneForm::new(&self.chart, comps).expect("shape")
    }

    /// `(∇_{∂i} A)∂j = ∇_{∂i}(A∂j) − A(∇_{∂i}∂j)`.
    pub fn nabla_endo_coordinate(&self, i: usize, a: &Endomorphism) -> Endomorphism {
        let di = VectorField::coordinate(&self.chart, i);
        let images: Vec<VectorField> = (0..self.chart.dim())
            .map(|j| {
                self.nabla(&di, &a.image(j))
                    .sub(&a.apply(self.coordinate(i, j)))
            })
            .collect();
        Endomorphism::from_images(&self.chart, &images).expect("shape")
    }

    /// `(∇_{∂i} B)_{jk} = ∂i B_{jk} − Γ^l_{ij} B_{lk} − Γ^l_{ik} B_{jl}`.
    pub fn nabla_bilinear_coordinate(&self, i: usize, b: &Matrix) -> Matrix {
        let dim = self.chart.dim();
        Matrix::from_fn(dim, dim, dim, |j, k| {
            let mut acc = b.get(j, k).derivative(i);
            for l in 0..dim {
                let gj = self.christoffel(i, j, l);
                if !gj.is_zero() && !b.get(l, k).is_zero() {
                    acc -= &(gj * b.get(l, k));
                }
                let gk = self.christoffel(i, k, l);
                if !gk.is_zero() && !b.get(j, l).is_zero() {
                    acc -= &(gk * b.get(j, l));
                }
            }
            acc
        })
    }

    /// `∇_X A`, tensorial in `X`.
    pub fn nabla_endo(&self, x: &VectorField, a: &Endomorphism) -> Endomorphism {
        let mut acc = Endomorphism::zero(&self.chart);
        for (i, xi) in x.components().iter().enumerate() {
            if !xi.is_zero() {
                acc = acc.add(&self.nabla_endo_coordinate(i, a).scale(xi));
            }
        }
        acc
    }
}

/// Tensors accepted by [`covariant_derivative`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tensor {
    Scalar(RationalFn),
    Vector(VectorField),
    Form(OneForm),
    TwoForm(TwoForm),
    Endo(Endomorphism),
    Bilinear(Matrix),
}

pub fn covariant_derivative(conn: &AffineConnection, t: &Tensor, x: &VectorField) -> Tensor {
    let chart = conn.chart();
    let dim = chart.dim();
    let combine_matrix = |f: &dyn Fn(usize) -> Matrix| {
        let mut acc = Matrix::zeros(dim, dim, dim);
        for (i, xi) in x.components().iter().enumerate() {
            if !xi.is_zero() {
                acc = acc.add(&f(i).scale(xi));
            }
        }
        acc
    };
    match t {
        Tensor::Scalar(f) => Tensor::Scalar(x.apply(f)),
        Tensor::Vector(y) => Tensor::Vector(conn.nabla(x, y)),
        Tensor::Form(w) => {
            let mut acc = OneForm::zero(chart);
            for (i, xi) in x.components().iter().enumerate() {
                if !xi.is_zero() {
                    acc = acc.add(&conn.nabla_form_coordinate(i, w).scale(xi));
                }
            }
            Tensor::Form(acc)
        }
        Tensor::TwoForm(b) => {
            let m = combine_matrix(&|i| conn.nabla_bilinear_coordinate(i, b.matrix()));
            Tensor::TwoForm(TwoForm::new(chart, m).expect("antisymmetry is preserved"))
        }
        Tensor::Endo(a) => Tensor::Endo(conn.nabla_endo(x, a)),
        Tensor::Bilinear(b) => Tensor::Bilinear(combine_matrix(&|i| conn.nabla_bilinear_coordinate(i, b))),
    }
}

/// First direction `∂i` along which a tensor is not parallel.
fn parallel_witness<T>(
    conn: &AffineConnection,
    f: impl Fn(usize) -> T,
    is_zero: impl Fn(&T) -> bool,
    show: impl Fn(&T) -> String,
) -> Option<String> {
    let names = conn.chart().names();
    (0..conn.chart().dim()).find_map(|i| {
        let v = f(i);
        (!is_zero(&v)).then(|| format!("along d/d{}: {}", names[i], show(&v)))
    })
}

fn endo_summary(a: &Endomorphism) -> String {
    let names = a.chart().names();
    a.matrix()
        .entries()
        .find(|(_, v)| !v.is_zero())
        .map(|((i, j), v)| format!("entry ({i}, {j}) = {}", v.to_expr(names)))
        .unwrap_or_default()
}

fn matrix_summary(m: &Matrix, names: &[String]) -> String {
    m.entries()
        .find(|(_, v)| !v.is_zero())
        .map(|((i, j), v)| format!("entry ({i}, {j}) = {}", v.to_expr(names)))
        .unwrap_or_default()
}

pub fn endo_parallel_witness(conn: &AffineConnection, a: &Endomorphism) -> Option<String> {
    parallel_witness(conn, |i| conn.nabla_endo_coordinate(i, a), Endomorphism::is_zero, endo_summary)
}

pub fn bilinear_parallel_witness(conn: &AffineConnection, b: &Matrix) -> Option<String> {
    let names = conn.chart().names().to_vec();
    parallel_witness(
        conn,
        |i| conn.nabla_bilinear_coordinate(i, b),
        Matrix::is_zero,
        |m| matrix_summary(m, &names),
    )
}

pub fn form_parallel_witness(conn: &AffineConnection, w: &OneForm) -> Option<String> {
    parallel_witness(conn, |i| conn.nabla_form_coordinate(i, w), OneForm::is_zero, OneForm::to_expr)
}

pub fn vector_parallel_witness(conn: &AffineConnection, v: &VectorField) -> Option<String> {
    let chart = conn.chart().clone();
    parallel_witness(
        conn,
        |i| conn.nabla(&VectorField::coordinate(&chart, i), v),
        VectorField::is_zero,
        VectorField::to_expr,
    )
}

/// Christoffel symbols of a (possibly indefinite) metric.
pub fn levi_civita(g: &Metric) -> Result<AffineConnection> {
    let chart = g.chart();
    let dim = chart.dim();
    let gm = g.matrix();
    let ginv = inverse(gm).map_err(|_| Error::SingularMetric)?;
    let dg: Vec<Matrix> = (0..dim).map(|l| gm.map(|e| e.derivative(l))).collect();
    let half = RationalFn::from_ratio(dim, 1, 2);
    let conn = AffineConnection::from_fn(chart, |i, j| {
        // lowered symbols Γ_{ij,l}
        let lowered: Vec<RationalFn> = (0..dim)
            .map(|l| &(&(dg[i].get(j, l) + dg[j].get(i, l)) - dg[l].get(i, j)) * &half)
            .collect();
        VectorField::new(chart, ginv.mul_vec(&lowered)).expect("shape")
    });
    if let Some(w) = bilinear_parallel_witness(&conn, gm) {
        return Err(Error::InternalInconsistency {
            name: "Levi-Civita connection is metric".into(),
            witness: w,
        });
    }
    if let Some((i, j, v)) = torsion(&conn).first_nonzero() {
        return Err(Error::InternalInconsistency {
            name: "Levi-Civita connection is torsion free".into(),
            witness: format!("T({i}, {j}) = {v}"),
        });
    }
    Ok(conn)
}

/// `T(∂i, ∂j) = ∇_{∂i}∂j − ∇_{∂j}∂i`.
pub fn torsion(conn: &AffineConnection) -> VectorValuedForm {
    VectorValuedForm::from_fn(conn.chart(), |i, j| {
        conn.coordinate(i, j).sub(conn.coordinate(j, i))
    })
}

/// `R(∂i, ∂j)∂k` for all index triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curvature {
    chart: ChartRef,
    values: Vec<VectorField>,
}

impl Curvature {
    pub fn at(&self, i: usize, j: usize, k: usize) -> &VectorField {
        let d = self.chart.dim();
        &self.values[(i * d + j) * d + k]
    }

    /// `R(X, Y)Z`.
    pub fn apply(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> VectorField {
        let d = self.chart.dim();
        let mut acc = VectorField::zero(&self.chart);
        for i in 0..d {
            let xi = x.component(i);
            if xi.is_zero() {
                continue;
            }
            for j in 0..d {
                let yj = y.component(j);
                if yj.is_zero() || i == j {
                    continue;
                }
                let xy = xi * yj;
                for k in 0..d {
                    let zk = z.component(k);
                    if zk.is_zero() {
                        continue;
                    }
                    let r = self.at(i, j, k);
                    if !r.is_zero() {
                        acc = acc.add(&r.scale(&(&xy * zk)));
                    }
                }
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(VectorField::is_zero)
    }

    pub fn component_count(&self) -> usize {
        self.values.len() * self.chart.dim()
    }

    /// First `(i, j, k)` with `R(∂i, ∂j)∂k ≠ 0`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, &VectorField)> {
        let d = self.chart.dim();
        self.values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_zero())
            .map(|(n, v)| (n / (d * d), (n / d) % d, n % d, v))
    }
}

/// `R^l_{ijk} = ∂iΓ^l_{jk} − ∂jΓ^l_{ik} + Γ^m_{jk}Γ^l_{im} − Γ^m_{ik}Γ^l_{jm}`,
/// computed for `i < j` in parallel and extended by antisymmetry.
pub fn curvature(conn: &AffineConnection) -> Curvature {
    let chart = conn.chart();
    let d = chart.dim();
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect();
    let blocks: Vec<Vec<VectorField>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            (0..d)
                .map(|k| {
                    let comps = (0..d)
                        .map(|l| {
                            let mut acc = &conn.christoffel(j, k, l).derivative(i)
                                - &conn.christoffel(i, k, l).derivative(j);
                            for m in 0..d {
                                let a = conn.christoffel(j, k, m);
                                let b = conn.christoffel(i, m, l);
                                if !a.is_zero() && !b.is_zero() {
                                    acc += &(a * b);
                                }
                                let c = conn.christoffel(i, k, m);
                                let e = conn.christoffel(j, m, l);
                                if !c.is_zero() && !e.is_zero() {
                                    acc -= &(c * e);
                                }
                            }
                            acc
                        })
                        .collect();
                    VectorField::new(chart, comps).expect("shape")
                })
                .collect()
        })
        .collect();
    let zero = VectorField::zero(chart);
    let mut values = vec![zero; d * d * d];
    for (&(i, j), block) in pairs.iter().zip(blocks) {
        for (k, v) in block.into_iter().enumerate() {
            values[(j * d + i) * d + k] = v.neg();
            values[(i * d + j) * d + k] = v;
        }
    }
    Curvature {
        chart: chart.clone(),
        values,
    }
}

pub fn connection_tensors(conn: &AffineConnection) -> (VectorValuedForm, Curvature) {
    (torsion(conn), curvature(conn))
}

/// `∇^{pc}_X Y = ∇_X Y + η(X)ψY + η(Y)(ψX − ψhX) + g(X − hX, ψY)ξ`.
pub fn paracontact_connection(pms: &ParacontactMetricStructure) -> Result<AffineConnection> {
    let lc = levi_civita(pms.metric())?;
    Ok(paracontact_connection_from(pms, &lc))
}

pub fn paracontact_connection_from(pms: &ParacontactMetricStructure, lc: &AffineConnection) -> AffineConnection {
    let chart = pms.chart();
    let psi = pms.psi();
    let h = pms.h();
    let eta = pms.eta();
    let xi = pms.xi();
    let g = pms.metric();
    let id_minus_h = Endomorphism::identity(chart).sub(h);
    let psi_minus_psih = psi.sub(&psi.compose(h));
    AffineConnection::from_fn(chart, |i, j| {
        let di = VectorField::coordinate(chart, i);
        let dj = VectorField::coordinate(chart, j);
        let mut v = lc.coordinate(i, j).clone();
        let ei = eta.component(i);
        if !ei.is_zero() {
            v = v.add(&psi.image(j).scale(ei));
        }
        let ej = eta.component(j);
        if !ej.is_zero() {
            v = v.add(&psi_minus_psih.image(i).scale(ej));
        }
        let c = g.apply(&id_minus_h.apply(&di), &psi.apply(&dj));
        if !c.is_zero() {
            v = v.add(&xi.scale(&c));
        }
        v
    })
}

/// `H(Z, Z') ∈ D` with `i_H dη = L_Z i_{Z'} dη` on `D`.
fn h_operator(bls: &BiLegendrianStructure, z: &VectorField, z2: &VectorField) -> Result<VectorField> {
    let cs = bls.contact();
    dualize_on_d(cs, &lie_derivative_form(z, &interior_product(z2, cs.d_eta())))
}

/// Built on the adapted frame and converted to the coordinate frame.
pub fn bilegendrian_connection(bls: &BiLegendrianStructure) -> Result<AffineConnection> {
    let chart = bls.chart();
    let dim = chart.dim();
    let n = bls.contact().n();
    let frame = bls.adapted_frame();
    let xi_index = 2 * n;
    // ∇_{E_a} E_b
    let mut frame_nabla: Vec<Vec<VectorField>> = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for b in 0..dim {
            let ea = &frame[a];
            let eb = &frame[b];
            let v = if b == xi_index {
                VectorField::zero(chart)
            } else if b < n {
                if a < n {
                    bls.proj_l1(&h_operator(bls, ea, eb)?)
                } else {
                    bls.proj_l1(&lie_bracket(ea, eb))
                }
            } else if (n..2 * n).contains(&a) {
                bls.proj_l2(&h_operator(bls, ea, eb)?)
            } else {
                bls.proj_l2(&lie_bracket(ea, eb))
            };
            row.push(v);
        }
        frame_nabla.push(row);
    }
    let coframe = bls.coframe();
    let conn = AffineConnection::from_fn(chart, |i, j| {
        let mut acc = VectorField::zero(chart);
        for b in 0..dim {
            let d = coframe.get(b, j).derivative(i);
            if !d.is_zero() {
                acc = acc.add(&frame[b].scale(&d));
            }
            let abj = coframe.get(b, j);
            if abj.is_zero() {
                continue;
            }
            for a in 0..dim {
                let aai = coframe.get(a, i);
                if aai.is_zero() || frame_nabla[a][b].is_zero() {
                    continue;
                }
                acc = acc.add(&frame_nabla[a][b].scale(&(aai * abj)));
            }
        }
        acc
    });
    if let Some(w) = bilegendrian_axiom_failures(bls, &conn).into_iter().find(|c| !c.passed) {
        return Err(Error::InternalInconsistency {
            name: w.name,
            witness: w.detail,
        });
    }
    Ok(conn)
}

/// The defining properties of the bi-Legendrian connection.
pub fn bilegendrian_axiom_failures(bls: &BiLegendrianStructure, conn: &AffineConnection) -> Vec<Check> {
    let chart = bls.chart();
    let cs = bls.contact();
    let frame = bls.adapted_frame();
    let n = cs.n();
    let mut preserve = None;
    'outer: for i in 0..chart.dim() {
        let di = VectorField::coordinate(chart, i);
        for (b, e) in frame.iter().enumerate() {
            let v = conn.nabla(&di, e);
            let stray = if b < n {
                bls.proj_l2(&v).add(&bls.proj_xi(&v))
            } else if b < 2 * n {
                bls.proj_l1(&v).add(&bls.proj_xi(&v))
            } else {
                bls.proj_l1(&v).add(&bls.proj_l2(&v))
            };
            if !stray.is_zero() {
                preserve = Some(format!(
                    "nabla along d/d{} of adapted field {b} leaves its summand by {stray}",
                    chart.names()[i]
                ));
                break 'outer;
            }
        }
    }
    let t = torsion(conn);
    let two = RationalFn::from_int(chart.dim(), 2);
    let mut mixed = None;
    for x in bls.l1().frame() {
        for y in bls.l2().frame() {
            let expected = cs.xi().scale(&(&two * &cs.d_eta().apply(x, y)));
            let d = t.apply(x, y).sub(&expected);
            if mixed.is_none() && !d.is_zero() {
                mixed = Some(format!("T(X, Y) - 2 d eta(X, Y) xi = {d}"));
            }
        }
    }
    let mut reeb = None;
    for x in &frame {
        let b = |v: &VectorField| lie_bracket(cs.xi(), v);
        let expected = bls
            .proj_l2(&b(&bls.proj_l1(x)))
            .add(&bls.proj_l1(&b(&bls.proj_l2(x))));
        let d = t.apply(x, cs.xi()).sub(&expected);
        if reeb.is_none() && !d.is_zero() {
            reeb = Some(format!("T(X, xi) differs by {d}"));
        }
    }
    vec![
        Check::new(
            "bl: preserves L1, L2 and R xi",
            "bi-Legendrian connection (i)",
            preserve,
        ),
        Check::new(
            "bl: d eta parallel",
            "bi-Legendrian connection (ii)",
            bilinear_parallel_witness(conn, cs.d_eta().matrix()),
        ),
        Check::new(
            "bl: T(X, Y) = 2 d eta(X, Y) xi on L1 x L2",
            "bi-Legendrian connection (iii)",
            mixed,
        ),
        Check::new(
            "bl: T(X, xi) = [xi, X_L1]_L2 + [xi, X_L2]_L1",
            "bi-Legendrian connection (iii)",
            reeb,
        ),
        Check::new(
            "bl: xi parallel",
            "bi-Legendrian connection definition",
            vector_parallel_witness(conn, cs.xi()),
        ),
        Check::new(
            "bl: eta parallel",
            "bi-Legendrian connection properties",
            form_parallel_witness(conn, cs.eta()),
        ),
    ]
}

/// Structure kinds whose Levi-Civita characterization can be checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefiningIdentity {
    /// `(∇_X φ)Y = g(X, Y)ξ − η(Y)X`.
    Sasakian,
    /// `(∇_X ψ)Y = −g(X, Y)ξ + η(Y)X`.
    ParaSasakian,
}

/// Checks the identity on the coordinate frame; returns a witness on failure.
pub fn check_defining_identity(
    kind: DefiningIdentity,
    structure: &Endomorphism,
    xi: &VectorField,
    eta: &OneForm,
    g: &Metric,
    lc: &AffineConnection,
) -> Option<String> {
    let chart = lc.chart();
    let dim = chart.dim();
    let sign = match kind {
        DefiningIdentity::Sasakian => RationalFn::one(dim),
        DefiningIdentity::ParaSasakian => RationalFn::from_int(dim, -1),
    };
    for i in 0..dim {
        let d = lc.nabla_endo_coordinate(i, structure);
        let di = VectorField::coordinate(chart, i);
        for j in 0..dim {
            let expected = xi
                .scale(g.matrix().get(i, j))
                .sub(&di.scale(eta.component(j)))
                .scale(&sign);
            let diff = d.image(j).sub(&expected);
            if !diff.is_zero() {
                return Some(format!(
                    "X = d/d{}, Y = d/d{}: difference {diff}",
                    chart.names()[i],
                    chart.names()[j]
                ));
            }
        }
    }
    None
}

/// `∇ξ = −ψ + ψh` for the Levi-Civita connection.
pub fn nabla_xi_witness(pms: &ParacontactMetricStructure, lc: &AffineConnection) -> Option<String> {
    let chart = pms.chart();
    let images: Vec<VectorField> = (0..chart.dim())
        .map(|i| lc.nabla(&VectorField::coordinate(chart, i), pms.xi()))
        .collect();
    let lhs = Endomorphism::from_images(chart, &images).expect("shape");
    let rhs = pms.psi().neg().add(&pms.psi().compose(pms.h()));
    matrix_witness(lhs.matrix(), rhs.matrix(), chart.names())
}

/// All checks relating `∇^{bl}`, `∇^{pc}` and the structure, together with
/// the recorded comparison outcome.
#[derive(Clone, Debug)]
pub struct ConnectionReport {
    pub checks: Vec<Check>,
    pub coincide: bool,
    pub integrable: bool,
    /// `∇^{bl}_{∂i}∂j − ∇^{pc}_{∂i}∂j` at the first differing pair.
    pub difference: Option<String>,
    /// Adapted-frame torsion witness when the connections differ.
    pub torsion_witness: Option<TorsionWitness>,
    /// `R^{bl}(X, Y) = 0` for `X ∈ L1`, `Y ∈ L2`.
    pub tangential: bool,
    pub leaf_flatness_applicable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionWitness {
    pub pair: String,
    pub bl: VectorField,
    pub pc: VectorField,
}

/// The connections attached to a corresponding pair.
pub struct Connections {
    pub levi_civita: AffineConnection,
    pub bl: AffineConnection,
    pub pc: AffineConnection,
}

pub fn build_connections(bls: &BiLegendrianStructure, pms: &ParacontactMetricStructure) -> Result<Connections> {
    let lc = levi_civita(pms.metric())?;
    let pc = paracontact_connection_from(pms, &lc);
    let bl = bilegendrian_connection(bls)?;
    Ok(Connections {
        levi_civita: lc,
        bl,
        pc,
    })
}

/// Checks of the canonical paracontact connection alone.
pub fn paracontact_axiom_checks(pms: &ParacontactMetricStructure, lc: &AffineConnection, pc: &AffineConnection) -> Result<Vec<Check>> {
    let chart = pms.chart();
    let dim = chart.dim();
    let names = chart.names();
    let psi = pms.psi();
    let h = pms.h();
    let xi = pms.xi();
    let eta = pms.eta();
    let g = pms.metric();
    let t = torsion(pc);
    let mut checks = vec![
        Check::new("pc: eta parallel", "canonical paracontact connection (i)", form_parallel_witness(pc, eta)),
        Check::new("pc: xi parallel", "canonical paracontact connection (i)", vector_parallel_witness(pc, xi)),
        Check::new("pc: g parallel", "canonical paracontact connection (i)", bilinear_parallel_witness(pc, g.matrix())),
    ];

    let id_minus_h = Endomorphism::identity(chart).sub(h);
    let mut formula = None;
    'outer: for i in 0..dim {
        let lhs = pc.nabla_endo_coordinate(i, psi);
        let base = lc.nabla_endo_coordinate(i, psi);
        let di = VectorField::coordinate(chart, i);
        let xh = id_minus_h.apply(&di);
        for j in 0..dim {
            let dj = VectorField::coordinate(chart, j);
            let expected = base
                .image(j)
                .add(&xi.scale(&g.apply(&xh, &dj)))
                .sub(&xh.scale(eta.component(j)));
            let d = lhs.image(j).sub(&expected);
            if !d.is_zero() {
                formula = Some(format!("X = d/d{}, Y = d/d{}: {d}", names[i], names[j]));
                break 'outer;
            }
        }
    }
    checks.push(Check::new(
        "pc: (nabla_X psi)Y formula",
        "canonical paracontact connection (ii)",
        formula,
    ));

    let mut reeb = None;
    for j in 0..dim {
        let dj = VectorField::coordinate(chart, j);
        let lhs = t.apply(xi, &psi.apply(&dj));
        let rhs = psi.apply(&t.apply(xi, &dj)).neg();
        let d = lhs.sub(&rhs);
        if !d.is_zero() {
            reeb = Some(format!("Y = d/d{}: {d}", names[j]));
            break;
        }
    }
    checks.push(Check::new(
        "pc: T(xi, psi Y) = -psi T(xi, Y)",
        "canonical paracontact connection (iii)",
        reeb,
    ));

    let (plus, minus) = eigendistributions(pms.base())?;
    let d_frame: Vec<VectorField> = plus.into_iter().chain(minus).collect();
    let d_eta = pms.base().d_eta();
    let two = RationalFn::from_int(dim, 2);
    let mut on_d = None;
    'outer2: for (a, x) in d_frame.iter().enumerate() {
        for (b, y) in d_frame.iter().enumerate() {
            let d = t.apply(x, y).sub(&xi.scale(&(&two * &d_eta.apply(x, y))));
            if !d.is_zero() {
                on_d = Some(format!("e{a}, e{b}: {d}"));
                break 'outer2;
            }
        }
    }
    checks.push(Check::new(
        "pc: T = 2 d eta xi on D",
        "canonical paracontact connection (iv)",
        on_d,
    ));

    let psi_h = psi.compose(h);
    let closed = VectorValuedForm::from_fn(chart, |i, j| {
        let di = VectorField::coordinate(chart, i);
        let dj = VectorField::coordinate(chart, j);
        psi_h
            .apply(&dj)
            .scale(eta.component(i))
            .sub(&psi_h.apply(&di).scale(eta.component(j)))
            .add(&xi.scale(&(&two * &g.apply(&di, &psi.apply(&dj)))))
    });
    let mut torsion_formula = None;
    'outer3: for i in 0..dim {
        for j in 0..dim {
            let d = t.at(i, j).sub(closed.at(i, j));
            if !d.is_zero() {
                torsion_formula = Some(format!("(d/d{}, d/d{}): {d}", names[i], names[j]));
                break 'outer3;
            }
        }
    }
    checks.push(Check::new(
        "pc: torsion closed form",
        "canonical paracontact torsion formula",
        torsion_formula,
    ));
    Ok(checks)
}

fn sub_frame_flat(curv: &Curvature, frame: &[VectorField]) -> Option<String> {
    for (a, x) in frame.iter().enumerate() {
        for (b, y) in frame.iter().enumerate().skip(a + 1) {
            for (c, z) in frame.iter().enumerate() {
                let v = curv.apply(x, y, z);
                if !v.is_zero() {
                    return Some(format!("R(f{a}, f{b}) f{c} = {v}"));
                }
            }
        }
    }
    None
}

/// Builds every entry without failing on a false one.
pub fn connection_report(bls: &BiLegendrianStructure, pms: &ParacontactMetricStructure) -> Result<ConnectionReport> {
    let conns = build_connections(bls, pms)?;
    connection_report_with(bls, pms, &conns)
}

pub fn connection_report_with(
    bls: &BiLegendrianStructure,
    pms: &ParacontactMetricStructure,
    conns: &Connections,
) -> Result<ConnectionReport> {
    let chart = bls.chart();
    let names = chart.names();
    let (bl, pc, lc) = (&conns.bl, &conns.pc, &conns.levi_civita);
    let diag = diagnostics(pms)?;
    let mut checks = Vec::new();

    checks.push(Check::new(
        "bl: psi parallel",
        "connection comparison (a)",
        endo_parallel_witness(bl, pms.psi()),
    ));
    checks.push(Check::new(
        "bl: g parallel",
        "connection comparison (a)",
        bilinear_parallel_witness(bl, pms.metric().matrix()),
    ));
    checks.extend(bilegendrian_axiom_failures(bls, bl));
    checks.extend(paracontact_axiom_checks(pms, lc, pc)?);

    let difference = bl.first_difference(pc).map(|(i, j, v)| {
        format!("nabla^bl - nabla^pc at (d/d{}, d/d{}) = {v}", names[i], names[j])
    });
    let coincide = difference.is_none();
    checks.push(Check::with_detail(
        "connections coincide iff integrable",
        "connection comparison (b)",
        coincide == diag.integrable,
        format!(
            "connections {}, structure {}",
            if coincide { "coincide" } else { "differ" },
            if diag.integrable { "integrable" } else { "not integrable" }
        ),
    ));
    let pc_psi = endo_parallel_witness(pc, pms.psi());
    checks.push(Check::with_detail(
        "pc preserves psi iff integrable",
        "integrability via the canonical connection",
        pc_psi.is_none() == diag.integrable,
        match &pc_psi {
            None => "nabla^pc psi = 0".to_string(),
            Some(w) => format!("nabla^pc psi != 0 ({w})"),
        },
    ));

    let t_bl = torsion(bl);
    let t_pc = torsion(pc);
    let mut leaf_torsion = None;
    let mut torsion_witness = None;
    for (frame, other, label) in [
        (bls.l1().frame(), false, "L1"),
        (bls.l2().frame(), true, "L2"),
    ] {
        for (a, x) in frame.iter().enumerate() {
            for (b, x2) in frame.iter().enumerate().skip(a + 1) {
                let br = lie_bracket(x, x2);
                let expected = if other { bls.proj_l1(&br) } else { bls.proj_l2(&br) }.neg();
                let got = t_bl.apply(x, x2);
                let d = got.sub(&expected);
                if leaf_torsion.is_none() && !d.is_zero() {
                    leaf_torsion = Some(format!("{label} pair ({a}, {b}): {d}"));
                }
                let pcv = t_pc.apply(x, x2);
                if torsion_witness.is_none() && got != pcv {
                    torsion_witness = Some(TorsionWitness {
                        pair: format!("{label} frame fields {a}, {b}"),
                        bl: got,
                        pc: pcv,
                    });
                }
            }
        }
    }
    checks.push(Check::new(
        "bl: torsion on each leaf is minus the bracket projection",
        "bi-Legendrian connection properties",
        leaf_torsion,
    ));

    let flat_foliations = [bls.l1(), bls.l2()]
        .iter()
        .all(|l| l.class() == Some(PangClass::Flat) && l.involutive() == Some(true));
    let needs_curvature = true;
    let curv = needs_curvature.then(|| curvature(bl));
    let curv = curv.as_ref().expect("computed");
    if flat_foliations {
        let xi = bls.contact().xi().clone();
        let l1 = bls.l1().frame().to_vec();
        let l2 = bls.l2().frame().to_vec();
        let with_xi = |f: &[VectorField]| {
            let mut v = f.to_vec();
            v.push(xi.clone());
            v
        };
        for (name, frame) in [
            ("L1", l1.clone()),
            ("L2", l2.clone()),
            ("L1 + R xi", with_xi(&l1)),
            ("L2 + R xi", with_xi(&l2)),
        ] {
            checks.push(Check::new(
                format!("bl: curvature vanishes along {name}"),
                "leaf flatness of the bi-Legendrian connection",
                sub_frame_flat(curv, &frame),
            ));
        }
    }
    let tangential = bls.l1().frame().iter().all(|x| {
        bls.l2().frame().iter().all(|y| {
            (0..chart.dim()).all(|k| curv.apply(x, y, &VectorField::coordinate(chart, k)).is_zero())
        })
    });

    Ok(ConnectionReport {
        checks,
        coincide,
        integrable: diag.integrable,
        difference,
        torsion_witness: (!coincide).then_some(torsion_witness).flatten(),
        tangential,
        leaf_flatness_applicable: flat_foliations,
    })
}

/// Fails with `TheoremViolated` on the first false entry.
pub fn verify_connection_theorems(bls: &BiLegendrianStructure, pms: &ParacontactMetricStructure) -> Result<ConnectionReport> {
    let report = connection_report(bls, pms)?;
    if let Some(c) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::TheoremViolated {
            name: c.name.clone(),
            witness: c.detail.clone(),
        });
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitValue {
    Value(Rational),
    Indeterminate,
}

impl std::fmt::Display for FitValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FitValue::Value(v) => write!(f, "{}", crate::exact::ratfn::rational_to_expr(v)),
            FitValue::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaMuFit {
    pub kappa: FitValue,
    pub mu: FitValue,
    pub is_kappa_mu: bool,
    pub h_bar_zero: bool,
    pub residual: Option<String>,
}

/// Splits `Σ_u coeffs[u] t_u − rhs = 0` (rational functions) into one
/// linear equation over ℚ per monomial of the cleared numerator.
fn monomial_equations(coeffs: &[RationalFn], rhs: &RationalFn) -> Vec<(Vec<Rational>, Rational)> {
    use crate::exact::MultiPoly;
    let mut den = rhs.denom().clone();
    for c in coeffs {
        den = &den * c.denom();
    }
    let clear = |f: &RationalFn| -> MultiPoly {
        let q = f * &RationalFn::from_poly(den.clone());
        assert!(q.is_polynomial());
        let d = q.denom().constant_value().expect("polynomial");
        q.numer().scale(&d.recip())
    };
    let polys: Vec<MultiPoly> = coeffs.iter().map(clear).collect();
    let r = clear(rhs);
    let mut monomials: Vec<crate::exact::Monomial> = polys
        .iter()
        .chain(std::iter::once(&r))
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>())
        .collect();
    monomials.sort();
    monomials.dedup();
    let coeff_of = |p: &MultiPoly, m: &crate::exact::Monomial| {
        p.terms()
            .find(|(mm, _)| *mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    };
    monomials
        .iter()
        .map(|m| (polys.iter().map(|p| coeff_of(p, m)).collect(), coeff_of(&r, m)))
        .collect()
}

/// Fits constants `κ, μ` with
/// `R(X, Y)ξ = κ(η(Y)X − η(X)Y) + μ(η(Y)h̄X − η(X)h̄Y)` on the coordinate frame.
pub fn kappa_mu_fit(cms: &ContactMetricStructure, lc: &AffineConnection) -> KappaMuFit {
    let cs = cms.contact();
    let chart = cs.chart();
    let dim = chart.dim();
    let eta = cs.eta();
    let xi = cs.xi();
    let h_bar = cms.h_bar();
    let h_bar_zero = h_bar.is_zero();
    let curv = curvature(lc);
    let unknowns = if h_bar_zero { 1 } else { 2 };
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let di = VectorField::coordinate(chart, i);
            let dj = VectorField::coordinate(chart, j);
            let lhs = curv.apply(&di, &dj, xi);
            let kterm = di.scale(eta.component(j)).sub(&dj.scale(eta.component(i)));
            let mterm = h_bar
                .image(i)
                .scale(eta.component(j))
                .sub(&h_bar.image(j).scale(eta.component(i)));
            for k in 0..dim {
                let mut coeffs = vec![kterm.component(k).clone()];
                if !h_bar_zero {
                    coeffs.push(mterm.component(k).clone());
                }
                rows.extend(monomial_equations(&coeffs, lhs.component(k)));
            }
        }
    }
    let m = Matrix::from_fn(rows.len(), unknowns, 0, |r, c| RationalFn::constant(0, rows[r].0[c].clone()));
    let rhs: Vec<RationalFn> = rows.iter().map(|(_, b)| RationalFn::constant(0, b.clone())).collect();
    let rank = if rows.is_empty() { 0 } else { linalg::rank(&m) };
    let solution = if rows.is_empty() {
        Ok(vec![RationalFn::zero(0); unknowns])
    } else {
        linalg::linear_solve(&m, &rhs)
    };
    match solution {
        Ok(sol) => {
            let value = |k: usize| {
                if rank == unknowns {
                    FitValue::Value(sol[k].constant_value().expect("constant"))
                } else {
                    FitValue::Indeterminate
                }
            };
            KappaMuFit {
                kappa: value(0),
                mu: if h_bar_zero { FitValue::Indeterminate } else { value(1) },
                is_kappa_mu: true,
                h_bar_zero,
                residual: None,
            }
        }
        Err(_) => {
            let residual = rows
                .iter()
                .find(|(a, b)| a.iter().all(Rational::is_zero) && !b.is_zero())
                .map(|(_, b)| format!("curvature term without a matching coefficient: {b}"))
                .unwrap_or_else(|| "no constant solution".to_string());
            KappaMuFit {
                kappa: FitValue::Indeterminate,
                mu: FitValue::Indeterminate,
                is_kappa_mu: false,
                h_bar_zero,
                residual: Some(residual),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::compute_reeb;
    use crate::correspondence::bileg_to_paracontact;
    use crate::exact::Chart;

    fn standard_pair(n: usize) -> BiLegendrianStructure {
        let chart = Chart::darboux(n);
        let dim = 2 * n + 1;
        let mut comps = vec![RationalFn::zero(dim); dim];
        for i in 0..n {
            comps[i] = -&RationalFn::var(dim, n + i);
        }
        comps[2 * n] = RationalFn::one(dim);
        let cs = compute_reeb(&OneForm::new(&chart, comps).unwrap()).unwrap();
        let d = cs.d_frame().to_vec();
        BiLegendrianStructure::new(&cs, &d[..n], &d[n..]).unwrap()
    }

    #[test]
    fn euclidean_is_flat() {
        let chart = Chart::darboux(1);
        let g = Metric::new(&chart, Matrix::identity(3, 3)).unwrap();
        let lc = levi_civita(&g).unwrap();
        assert!(lc.first_difference(&AffineConnection::from_fn(&chart, |_, _| VectorField::zero(&chart))).is_none());
        let (t, r) = connection_tensors(&lc);
        assert!(t.is_zero() && r.is_zero());
    }

    #[test]
    fn standard_three_dimensional_connections() {
        let bls = standard_pair(1);
        let pms = bileg_to_paracontact(&bls, None).unwrap();
        let lc = levi_civita(pms.metric()).unwrap();
        assert!(nabla_xi_witness(&pms, &lc).is_none());
        assert!(check_defining_identity(
            DefiningIdentity::ParaSasakian,
            pms.psi(),
            pms.xi(),
            pms.eta(),
            pms.metric(),
            &lc
        )
        .is_none());
        let pc = paracontact_connection(&pms).unwrap();
        assert!(curvature(&pc).is_zero());
        let bl = bilegendrian_connection(&bls).unwrap();
        assert!(bl.first_difference(&pc).is_none());
        let report = verify_connection_theorems(&bls, &pms).unwrap();
        assert!(report.coincide && report.integrable);
        match covariant_derivative(&bl, &Tensor::TwoForm(bls.contact().d_eta().clone()), pms.xi()) {
            Tensor::TwoForm(t) => assert!(t.is_zero()),
            other => panic!("{other:?}"),
        }
        match covariant_derivative(&lc, &Tensor::Scalar(RationalFn::var(3, 1)), &VectorField::coordinate(bls.chart(), 1)) {
            Tensor::Scalar(s) => assert!(s.is_one()),
            other => panic!("{other:?}"),
        }
    }
}
