//! The matrix model.
//!
//! Let `t₁ = 0, t₂ = 2, t₃, …, t_{2k+4}` be the eigenvalues of `𝔻` and
//! `A = diag(√t₁, …, √t_{2k+4})`. Every simple object is realized as `b ⊗ f_ij`
//! with `b` a real `(2k+4) × (2k+4)` matrix built from `R_m(A)` and the matrix
//! units `e₁₂, e₂₁`, and `f_ij` the grade. With the trace
//! `μ(b) = Σ μ_j b_jj`, `μ_j = ⟨E_j a₀, a₀⟩`, the objects are orthonormal for
//! `⟨X, Y⟩ = μ(Yᵗ X)` and `N_{X,Y}^Z = ⟨XY, Z⟩`.
//!
//! Polynomials are evaluated at `A` entrywise on the diagonal, in floating
//! point.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::fusion::{verify_graph_recovery, FusionTable, Violation};
use crate::graphs::{self, build_gamma, eigvec_basis, SpectralData};
use crate::label::{all_objects, nn_objects, objects_of_grade, Grade, Simple};
use crate::linalg::{self, Matrix};
use crate::poly::IntPoly;
use crate::{chain_len, tolerance, Error, Result};

/// `b ⊗ f_ij`: the block `b` and the grade `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelElement {
    pub label: Simple,
    pub grade: Grade,
    pub matrix: Matrix,
}

impl ModelElement {
    /// `X̄ = X*`: transpose with the grade reversed.
    pub fn conj(&self) -> ModelElement {
        ModelElement { label: self.label.conj(), grade: self.grade.reversed(), matrix: self.matrix.transpose() }
    }

    /// `(b ⊗ f_ij)(c ⊗ f_jl) = bc ⊗ f_il`; `None` if the inner grades differ.
    pub fn mul(&self, rhs: &ModelElement) -> Option<Matrix> {
        self.grade.compose(rhs.grade).map(|_| &self.matrix * &rhs.matrix)
    }
}

/// The faithful trace `μ(b) = Σ_j μ_j b_jj`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceState {
    pub weights: Vec<f64>,
}

impl TraceState {
    pub fn mu(&self, b: &Matrix) -> f64 {
        self.weights.iter().enumerate().map(|(j, w)| w * b[(j, j)]).sum()
    }

    /// `⟨b, c⟩ = μ(cᵗ b) = Σ_j μ_j Σ_i c_ij b_ij`.
    pub fn inner(&self, b: &Matrix, c: &Matrix) -> f64 {
        let n = self.weights.len();
        let mut s = 0.0;
        for i in 0..n {
            let (rb, rc) = (b.row(i), c.row(i));
            for j in 0..n {
                s += self.weights[j] * rb[j] * rc[j];
            }
        }
        s
    }
}

/// All `8k + 18` model elements in canonical basis order, with the trace.
#[derive(Clone, Debug)]
pub struct Model {
    pub k: usize,
    pub spectral: SpectralData,
    pub trace: TraceState,
    /// Diagonal of `A`.
    pub sqrt_t: Vec<f64>,
    pub elements: Vec<ModelElement>,
    index: BTreeMap<Simple, usize>,
}

impl Model {
    pub fn element(&self, x: Simple) -> Option<&ModelElement> {
        self.index.get(&x).map(|&i| &self.elements[i])
    }

    pub fn dim(&self) -> usize {
        self.sqrt_t.len()
    }

    /// `P(A)` for an integer polynomial `P`.
    pub fn poly_at_a(&self, p: &IntPoly) -> Matrix {
        Matrix::diag(&self.sqrt_t.iter().map(|&a| p.eval_f64(a)).collect::<Vec<_>>())
    }

    /// `Σ c_X X` over objects of one grade.
    pub fn combination(&self, terms: impl IntoIterator<Item = (Simple, f64)>) -> Matrix {
        let n = self.dim();
        terms.into_iter().fold(Matrix::zeros(n, n), |acc, (x, c)| &acc + &self.element(x).unwrap().matrix.scale(c))
    }
}

/// `R_0(a), …, R_max(a)` by the three-term recursion.
fn cheb_values(a: f64, max: usize) -> Vec<f64> {
    let mut r = Vec::with_capacity(max + 1);
    r.push(1.0);
    r.push(a);
    for m in 2..=max {
        r.push(a * r[m - 1] - r[m - 2]);
    }
    r.truncate(max + 1);
    r
}

pub fn build_model(k: usize) -> Result<Model> {
    Ok(model_from_spectral(graphs::spectral(k)?))
}

pub fn model_from_spectral(spectral: SpectralData) -> Model {
    let k = spectral.k;
    let n = chain_len(k);
    let dim = 2 * k + 4;
    let sqrt_t: Vec<f64> = spectral.eigenvalues.iter().map(|&t| libm::sqrt(t.max(0.0))).collect();
    let table: Vec<Vec<f64>> = sqrt_t.iter().map(|&a| cheb_values(a, n + 4)).collect();
    let at = |f: &dyn Fn(&[f64]) -> f64| Matrix::diag(&table.iter().map(|r| f(r)).collect::<Vec<_>>());

    let s = libm::sqrt((2 * k + 3) as f64);
    let s2 = libm::sqrt(2.0 * (2 * k + 3) as f64);
    let e12 = Matrix::unit(dim, 0, 1);
    let e21 = Matrix::unit(dim, 1, 0);
    let sym = &e12 + &e21;
    let skew = &e12 - &e21;
    let halve = |m: Matrix| m.scale(0.5);

    let b1_core = at(&|r| r[n + 1]);
    let b3_core = at(&|r| r[n + 3] - r[n + 1] - r[n - 1]);
    let b2_core = at(&|r| r[n + 2] - r[n]);

    let build = |x: Simple| -> Matrix {
        match x {
            Simple::Alpha(j) | Simple::AlphaBar(j) | Simple::AlphaPrime(j) => at(&|r| r[j as usize]),
            Simple::Beta(1) => halve(&b1_core + &sym.scale(s)),
            Simple::Gamma(1) => halve(&b1_core - &sym.scale(s)),
            Simple::Beta(3) => halve(&b3_core + &skew.scale(s)),
            Simple::Gamma(3) => halve(&b3_core - &skew.scale(s)),
            Simple::Beta(_) => halve(&b2_core + &e12.scale(s2)),
            Simple::Gamma(_) => halve(&b2_core - &e12.scale(s2)),
            Simple::BetaBar2 => halve(&b2_core + &e21.scale(s2)),
            Simple::GammaBar2 => halve(&b2_core - &e21.scale(s2)),
            Simple::F => halve(at(&|r| r[n - 1] + 2.0 * r[n + 1] - r[n + 3])),
            Simple::G => halve(at(&|r| r[n + 3] - r[n - 1])),
        }
    };

    let labels = all_objects(k);
    let index = labels.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let elements = labels.into_iter().map(|x| ModelElement { label: x, grade: x.grade(), matrix: build(x) }).collect();
    let trace = TraceState { weights: spectral.weights.clone() };
    Model { k, spectral, trace, sqrt_t, elements, index }
}

/// Worst `|⟨X, Y⟩ − δ_{X,Y}|` over same-grade pairs.
pub fn orthonormality(model: &Model) -> (f64, Simple, Simple) {
    let mut worst = (0.0, Simple::Alpha(0), Simple::Alpha(0));
    for grade in Grade::ALL {
        let objs = objects_of_grade(model.k, grade);
        for (i, &x) in objs.iter().enumerate() {
            for &y in &objs[i..] {
                let ip = model.trace.inner(&model.element(x).unwrap().matrix, &model.element(y).unwrap().matrix);
                let dev = (ip - f64::from(u8::from(x == y))).abs();
                if dev > worst.0 {
                    worst = (dev, x, y);
                }
            }
        }
    }
    worst
}

pub fn orthonormality_check(model: &Model, tol: f64) -> Result<f64, Violation> {
    let (dev, x, y) = orthonormality(model);
    if dev < tol {
        Ok(dev)
    } else {
        Err(Violation { check: "orthonormality", detail: format!("<{x}, {y}> deviates from δ by {dev:e}") })
    }
}

/// Numerical rank of the Gram matrix of each grade, in `Grade::ALL` order.
pub fn gram_ranks(model: &Model) -> Result<[usize; 4]> {
    let mut out = [0; 4];
    for (slot, grade) in out.iter_mut().zip(Grade::ALL) {
        let objs = objects_of_grade(model.k, grade);
        let mats: Vec<&Matrix> = objs.iter().map(|&x| &model.element(x).unwrap().matrix).collect();
        let gram = Matrix::from_fn(mats.len(), mats.len(), |i, j| model.trace.inner(mats[i], mats[j]));
        let eig = linalg::jacobi_eigen(&gram)?;
        *slot = eig.values.iter().filter(|&&v| v > tolerance::GRAM_RANK).count();
    }
    Ok(out)
}

/// Structure constants extracted with the given rounding tolerance,
/// together with the largest rounding residual seen.
pub fn extract(model: &Model, rounding: f64) -> Result<(FusionTable, f64)> {
    let mut table = FusionTable::empty(model.k);
    let by_grade: Vec<Vec<Simple>> = Grade::ALL.iter().map(|&g| objects_of_grade(model.k, g)).collect();
    let mut worst = 0.0f64;
    for x in &model.elements {
        for y in &model.elements {
            let Some(grade) = x.grade.compose(y.grade) else { continue };
            let p = &x.matrix * &y.matrix;
            for &z in &by_grade[grade.index()] {
                let v = model.trace.inner(&p, &model.element(z).unwrap().matrix);
                let r = libm::round(v);
                let residual = (v - r).abs();
                if !(residual < rounding) {
                    return Err(Error::NotIntegral { x: x.label, y: y.label, z, value: v });
                }
                if r < 0.0 {
                    return Err(Error::Negative { x: x.label, y: y.label, z, value: v });
                }
                worst = worst.max(residual);
                table.set(x.label, y.label, z, r as u64)?;
            }
        }
    }
    Ok((table, worst))
}

/// `N_{X,Y}^Z = ⟨XY, Z⟩`, rounded within [`tolerance::ROUNDING`].
pub fn fusion_table(model: &Model) -> Result<FusionTable> {
    extract(model, tolerance::ROUNDING).map(|(t, _)| t)
}

/// Right multiplication by `α₁`, `ᾱ₁` in the table reproduces `Γ_k`, `Γ′_k`.
pub fn graph_recovery(table: &FusionTable) -> Result<(), Violation> {
    verify_graph_recovery(table)
}

fn relative_gap(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).max_abs() / a.max_abs().max(b.max_abs()).max(1.0)
}

/// `ξ = (β₁ − γ₁) + (β₃ − γ₃)`.
pub fn xi(model: &Model) -> Matrix {
    use Simple::*;
    model.combination([(Beta(1), 1.0), (Gamma(1), -1.0), (Beta(3), 1.0), (Gamma(3), -1.0)])
}

/// `η = (β₁ − γ₁) − (β₃ − γ₃)`.
pub fn eta(model: &Model) -> Matrix {
    use Simple::*;
    model.combination([(Beta(1), 1.0), (Gamma(1), -1.0), (Beta(3), -1.0), (Gamma(3), 1.0)])
}

/// Relative residuals of
/// `v v̄ = 2y₁`, `v̄ v = 2x₁`, `v v̄ = 2 r_k(αᾱ)`, `v̄ v = 2 s_k(αᾱ)`
/// where `r_k = (2 − t) q_k` and `s_k = (−1)^{k+1} t q_k`.
pub fn xi_residuals(model: &Model, v: &Matrix) -> [f64; 4] {
    let k = model.k;
    let basis = eigvec_basis(k).expect("integer eigenvectors of 𝔻");
    let objs = nn_objects(k);
    let as_matrix = |coeffs: &[i64]| model.combination(objs.iter().zip(coeffs).map(|(&x, &c)| (x, c as f64)));
    let (x1, y1) = (as_matrix(&basis.x1), as_matrix(&basis.y1));

    let vt = v.transpose();
    let (vvt, vtv) = (v * &vt, &vt * v);
    let alpha = &model.element(Simple::Alpha(1)).unwrap().matrix;
    let aa = alpha * &alpha.transpose();
    let q = qk_matrix(k, &aa);
    let id = Matrix::identity(aa.rows());
    [
        relative_gap(&vvt, &y1.scale(2.0)),
        relative_gap(&vtv, &x1.scale(2.0)),
        relative_gap(&vvt, &(&(&id.scale(2.0) - &aa) * &q).scale(2.0)),
        relative_gap(&vtv, &(&aa * &q).scale(if k % 2 == 0 { -2.0 } else { 2.0 })),
    ]
}

/// `q_k(M)` by the recursion `q_k = (t² − 4t + 2) q_{k−1} − q_{k−2}`.
///
/// Horner on the expanded coefficients cancels catastrophically once they
/// outgrow the spectrum; the recursion multiplier stays in `[−2, 2]` on `[0, 4]`.
pub fn qk_matrix(k: usize, m: &Matrix) -> Matrix {
    let id = Matrix::identity(m.rows());
    let m2 = m * m;
    let q0 = &(&m2 - &m.scale(5.0)) + &id.scale(3.0);
    if k == 0 {
        return q0;
    }
    let cubic = &(&(&(&m2 * m) - &m2.scale(8.0)) + &m.scale(17.0)) - &id.scale(5.0);
    let q1 = &(m - &id) * &cubic;
    let step = &(&m2 - &m.scale(4.0)) + &id.scale(2.0);
    let (mut prev, mut cur) = (q0, q1);
    for _ in 1..k {
        let next = &(&step * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `ξξ̄ = 2y₁ = 2r_k(αᾱ)` and `ξ̄ξ = 2x₁ = 2s_k(αᾱ)`.
pub fn xi_identities(model: &Model, tol: f64) -> Result<f64, Violation> {
    let res = xi_residuals(model, &xi(model));
    let names = ["ξξ̄ = 2y₁", "ξ̄ξ = 2x₁", "ξξ̄ = 2(2 − αᾱ)q_k(αᾱ)", "ξ̄ξ = 2(−1)^{k+1} αᾱ q_k(αᾱ)"];
    let worst = res.iter().copied().fold(0.0, f64::max);
    match res.iter().position(|&r| !(r < tol)) {
        None => Ok(worst),
        Some(i) => Err(Violation { check: "xi identities", detail: format!("{} fails, relative residual {:e}", names[i], res[i]) }),
    }
}

/// `μ(R_i(A) R_j(A)) = ⟨R_i(Δ)a₀, R_j(Δ)a₀⟩` for `i ≡ j (mod 2)`, `i, j ≤ n + 4`,
/// and `R_{n+4}(A) − R_{n+2}(A) − R_n(A) − R_{n−2}(A) = 0`.
/// Returns the worst relative residual.
pub fn lemma33_checks(model: &Model, tol: f64) -> Result<f64, Violation> {
    let k = model.k;
    let n = chain_len(k);
    let max = n + 4;

    // R_m(Δ) a₀ exactly
    let g = build_gamma(k);
    let delta = g.delta();
    let a0 = g.unit_index().expect("Γ_k has a unit vertex");
    let size = g.vertex_count();
    let apply = |v: &[BigInt]| -> Vec<BigInt> {
        (0..size)
            .map(|i| (0..size).filter(|&j| delta[(i, j)] != 0).map(|j| &v[j]).sum())
            .collect()
    };
    let mut vecs: Vec<Vec<BigInt>> = Vec::with_capacity(max + 1);
    let mut e0 = alloc::vec![BigInt::zero(); size];
    e0[a0] = BigInt::from(1);
    vecs.push(e0.clone());
    vecs.push(apply(&e0));
    for m in 2..=max {
        let next: Vec<BigInt> = apply(&vecs[m - 1]).into_iter().zip(&vecs[m - 2]).map(|(a, b)| a - b).collect();
        vecs.push(next);
    }

    let rows: Vec<Vec<f64>> = model.sqrt_t.iter().map(|&a| cheb_values(a, max)).collect();
    let mut worst = 0.0f64;
    for i in 0..=max {
        for j in (i..=max).step_by(2) {
            let lhs: f64 = rows.iter().zip(&model.trace.weights).map(|(r, w)| w * r[i] * r[j]).sum();
            let rhs: BigInt = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
            let rhs = rhs.to_f64().unwrap_or(f64::NAN);
            let rel = (lhs - rhs).abs() / rhs.abs().max(1.0);
            if !(rel < tol) {
                return Err(Violation {
                    check: "trace vs. graph",
                    detail: format!("μ(R_{i}(A)R_{j}(A)) = {lhs} but <R_{i}(Δ)a₀, R_{j}(Δ)a₀> = {rhs}"),
                });
            }
            worst = worst.max(rel);
        }
    }

    for r in &rows {
        let scale = r[n + 4].abs().max(r[n + 2].abs()).max(r[n].abs()).max(1.0);
        let rel = (r[n + 4] - r[n + 2] - r[n] - r[n - 2]).abs() / scale;
        if !(rel < tol) {
            return Err(Violation {
                check: "trace vs. graph",
                detail: format!("R_(n+4) − R_(n+2) − R_n − R_(n−2) at A has entry of relative size {rel:e}"),
            });
        }
        worst = worst.max(rel);
    }
    Ok(worst)
}

/// `|μ(bc) − μ(cb)|`.
pub fn trace_defect(trace: &TraceState, b: &Matrix, c: &Matrix) -> f64 {
    (trace.mu(&(b * c)) - trace.mu(&(c * b))).abs()
}
