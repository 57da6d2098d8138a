//! The graphs `Γ_k`, `Γ′_k` and the spectral data of `𝔻 = GGᵗ`.
//!
//! Vertex order is frozen: the rows of `G` are `β₃, β₁, γ₃, γ₁, α_{n-1}, …, α₀`
//! and the columns `β₂, γ₂, α_n, …, α₁`; for `Γ′_k` the rows are
//! `f, g, α′_{n-1}, …, α′₀` and the columns `β̄₂, γ̄₂, ᾱ_n, …, ᾱ₁`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;

use crate::label::{mm_objects, mn_objects, nm_objects, nn_objects, Simple};
use crate::linalg::{self, IntMatrix, Matrix};
use crate::poly::IntPoly;
use crate::polynomials::poly_qk;
use crate::{chain_len, tolerance, Error, Result};

/// A bipartite graph with labeled parts; `adjacency` is `even × odd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub even: Vec<Simple>,
    pub odd: Vec<Simple>,
    pub adjacency: IntMatrix,
}

impl BipartiteGraph {
    fn from_edges(even: Vec<Simple>, odd: Vec<Simple>, edges: &[(Simple, Simple)]) -> Self {
        let mut adjacency = IntMatrix::zeros(even.len(), odd.len());
        for &(a, b) in edges {
            let i = even.iter().position(|&x| x == a).expect("edge endpoint is not an even vertex");
            let j = odd.iter().position(|&x| x == b).expect("edge endpoint is not an odd vertex");
            adjacency[(i, j)] = 1;
        }
        BipartiteGraph { even, odd, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.sum() as usize
    }

    /// Edges as `(even, odd)` pairs in row-major order.
    pub fn edges(&self) -> Vec<(Simple, Simple)> {
        let mut out = Vec::new();
        for (i, &a) in self.even.iter().enumerate() {
            for (j, &b) in self.odd.iter().enumerate() {
                if self.adjacency[(i, j)] != 0 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn even_index(&self, x: Simple) -> Option<usize> {
        self.even.iter().position(|&v| v == x)
    }

    pub fn odd_index(&self, x: Simple) -> Option<usize> {
        self.odd.iter().position(|&v| v == x)
    }

    /// The symmetric adjacency matrix `Δ` on `even ⊔ odd`.
    pub fn delta(&self) -> IntMatrix {
        let (p, q) = (self.even.len(), self.odd.len());
        let mut d = IntMatrix::zeros(p + q, p + q);
        for i in 0..p {
            for j in 0..q {
                d[(i, p + j)] = self.adjacency[(i, j)];
                d[(p + j, i)] = self.adjacency[(i, j)];
            }
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let delta = self.delta();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if delta[(v, w)] != 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The unit vertex (`α₀` or `α′₀`), which is always even.
    pub fn unit_index(&self) -> Option<usize> {
        self.even.iter().position(|x| x.is_unit())
    }
}

/// `Γ_k`: the chain `α₀ – … – α_n` with legs `α_n – β₁ – β₂ – β₃` and
/// `α_n – γ₁ – γ₂ – γ₃`.
pub fn build_gamma(k: usize) -> BipartiteGraph {
    let n = chain_len(k) as u32;
    let mut edges = Vec::new();
    for i in 0..n {
        // even endpoint first
        let (a, b) = if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) };
        edges.push((Simple::Alpha(a), Simple::Alpha(b)));
    }
    for (one, two, three) in [
        (Simple::Beta(1), Simple::Beta(2), Simple::Beta(3)),
        (Simple::Gamma(1), Simple::Gamma(2), Simple::Gamma(3)),
    ] {
        edges.push((one, Simple::Alpha(n)));
        edges.push((one, two));
        edges.push((three, two));
    }
    BipartiteGraph::from_edges(nn_objects(k), nm_objects(k), &edges)
}

/// `Γ′_k`: the chain `α′₀ – ᾱ₁ – … – ᾱ_n`, a pendant `f – ᾱ_n`, and `g`
/// joined to `ᾱ_n, β̄₂, γ̄₂`.
pub fn build_gamma_prime(k: usize) -> BipartiteGraph {
    let n = chain_len(k) as u32;
    let mut edges = Vec::new();
    for i in 0..n {
        let (a, b) = if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) };
        edges.push((Simple::AlphaPrime(a), Simple::AlphaBar(b)));
    }
    edges.push((Simple::F, Simple::AlphaBar(n)));
    edges.push((Simple::G, Simple::AlphaBar(n)));
    edges.push((Simple::G, Simple::BetaBar2));
    edges.push((Simple::G, Simple::GammaBar2));
    BipartiteGraph::from_edges(mm_objects(k), mn_objects(k), &edges)
}

/// `𝔻 = GGᵗ` on the even vertices.
pub fn dd_matrix(g: &BipartiteGraph) -> IntMatrix {
    &g.adjacency * &g.adjacency.transpose()
}

/// `t²(t − 2)² q_k(t)`.
pub fn expected_char_poly(k: usize) -> IntPoly {
    let t2 = IntPoly::from_i64(&[0, 0, 1]);
    let tm2 = IntPoly::from_i64(&[4, -4, 1]);
    t2 * tm2 * poly_qk(k)
}

/// Whether `det(tI − 𝔻)` equals `t²(t − 2)² q_k(t)`, exactly.
pub fn char_poly_check(k: usize) -> bool {
    char_poly_matches(&dd_matrix(&build_gamma(k)), k)
}

pub fn char_poly_matches(dd: &IntMatrix, k: usize) -> bool {
    linalg::char_poly(dd) == expected_char_poly(k)
}

/// Whether the permutation `β_i ↔ γ_i` commutes with `𝔻`.
pub fn beta_gamma_symmetric(k: usize) -> bool {
    let g = build_gamma(k);
    let dd = dd_matrix(&g);
    let swap = |x: Simple| match x {
        Simple::Beta(i) => Simple::Gamma(i),
        Simple::Gamma(i) => Simple::Beta(i),
        other => other,
    };
    let perm: Vec<usize> = g.even.iter().map(|&x| g.even_index(swap(x)).unwrap()).collect();
    (0..g.even.len()).all(|i| (0..g.even.len()).all(|j| dd[(i, j)] == dd[(perm[i], perm[j])]))
}

/// Roots of `q_k`, ascending, located by exact sign evaluation at dyadic
/// points of `[0, 6]` and refined by bisection to `2^-56`.
///
/// All roots of `q_k` are eigenvalues of `𝔻`, hence simple and inside
/// `[0, ‖Δ‖²] ⊂ [0, 6)`.
pub fn q_roots(k: usize) -> Vec<f64> {
    let q = poly_qk(k);
    let degree = q.degree().unwrap_or(0);
    const FINE: u32 = 56;
    let mut shift = 6;
    loop {
        let brackets = sign_brackets(&q, shift);
        if brackets.len() == degree {
            return brackets
                .into_iter()
                .map(|b| match b {
                    Bracket::Exact(num) => dyadic_to_f64(&num, shift),
                    Bracket::Between(lo) => refine(&q, lo, shift, FINE),
                })
                .collect();
        }
        assert!(shift < 40, "root isolation of q_{k} failed");
        shift += 2;
    }
}

enum Bracket {
    Exact(BigInt),
    /// A root lies strictly inside `(lo, lo + 1) / 2^shift`.
    Between(BigInt),
}

fn sign_brackets(q: &IntPoly, shift: u32) -> Vec<Bracket> {
    let steps = 6i64 << shift;
    let mut out = Vec::new();
    let mut prev: Option<Ordering> = None;
    for i in 0..=steps {
        let num = BigInt::from(i);
        let s = q.sign_at_dyadic(&num, shift);
        match (prev, s) {
            (_, Ordering::Equal) => {
                out.push(Bracket::Exact(num));
                prev = None;
            }
            (Some(p), s) if p != s => {
                out.push(Bracket::Between(num - 1));
                prev = Some(s);
            }
            _ => prev = Some(s),
        }
    }
    out
}

fn refine(q: &IntPoly, lo: BigInt, shift: u32, fine: u32) -> f64 {
    let mut lo = lo;
    let lo_sign = q.sign_at_dyadic(&lo, shift);
    let mut shift = shift;
    while shift < fine {
        lo <<= 1usize;
        shift += 1;
        let mid = &lo + 1;
        match q.sign_at_dyadic(&mid, shift) {
            Ordering::Equal => return dyadic_to_f64(&mid, shift),
            s if s == lo_sign => lo = mid,
            _ => {}
        }
    }
    dyadic_to_f64(&(2 * lo + 1), shift + 1)
}

fn dyadic_to_f64(num: &BigInt, shift: u32) -> f64 {
    use num_traits::ToPrimitive;
    num.to_f64().unwrap() / libm::exp2(shift as f64)
}

/// Spectral data of `𝔻` for `Γ_k`.
///
/// `eigenvalues` are `t₁ = 0, t₂ = 2`, then the roots of `q_k` ascending;
/// `projections[j]` is the orthogonal projection onto the `t_j`-eigenspace
/// and `weights[j] = ⟨E_j a₀, a₀⟩`.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub k: usize,
    pub eigenvalues: Vec<f64>,
    pub projections: Vec<Matrix>,
    pub weights: Vec<f64>,
    pub pf_value: f64,
    pub pf_vector: Vec<f64>,
}

pub fn spectral(k: usize) -> Result<SpectralData> {
    let g = build_gamma(k);
    let dd = dd_matrix(&g).to_f64();
    let eig = linalg::jacobi_eigen(&dd)?;
    let size = dd.rows();
    let expected = 2 * k + 4;

    // clusters of consecutive Jacobi eigenvalues
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in 0..size {
        match clusters.last_mut() {
            Some(c) if eig.values[i] - eig.values[*c.last().unwrap()] < tolerance::EIGEN_CLUSTER => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    if clusters.len() != expected {
        return Err(Error::ClusterCount { expected, found: clusters.len() });
    }
    let centers: Vec<f64> = clusters
        .iter()
        .map(|c| c.iter().map(|&i| eig.values[i]).sum::<f64>() / c.len() as f64)
        .collect();

    let mut eigenvalues = vec![0.0, 2.0];
    eigenvalues.extend(q_roots(k));
    let mut projections = Vec::with_capacity(expected);
    let mut used = vec![false; expected];
    for &t in &eigenvalues {
        let (c, dev) = centers
            .iter()
            .enumerate()
            .filter(|(c, _)| !used[*c])
            .map(|(c, &x)| (c, (x - t).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if dev > tolerance::SPECTRAL_CROSS_CHECK {
            return Err(Error::Spectral { what: "Jacobi eigenvalue vs. root of q_k", deviation: dev });
        }
        used[c] = true;
        let mut e = Matrix::zeros(size, size);
        for &col in &clusters[c] {
            let v = eig.vectors.column(col);
            for i in 0..size {
                for j in 0..size {
                    e[(i, j)] += v[i] * v[j];
                }
            }
        }
        projections.push(e);
    }

    let a0 = g.unit_index().ok_or(Error::NoIdentityVertex)?;
    let mut weights: Vec<f64> = projections.iter().map(|e| e[(a0, a0)]).collect();
    for j in 2..expected {
        let w = root_weight(k, eigenvalues[j]);
        let dev = (w - weights[j]).abs();
        if dev > tolerance::SPECTRAL_CROSS_CHECK {
            return Err(Error::Spectral { what: "trace weight vs. eigenvector recursion", deviation: dev });
        }
        weights[j] = w;
    }
    check_weights(k, &weights)?;

    let pf = pf_weights(&g)?;
    Ok(SpectralData { k, eigenvalues, projections, weights, pf_value: pf.value, pf_vector: pf.vector })
}

/// `1/‖v‖²` for the eigenvector `v` of 𝔻 at a root `t` of `q_k`, scaled to 1
/// at `a₀`.
///
/// These eigenvectors are symmetric in the two legs, and their entries follow
/// the chain recursion from `a₀`. The sum has only positive terms, so the tiny
/// weight at the largest root keeps full relative accuracy, which the Jacobi
/// projection does not.
pub fn root_weight(k: usize, t: f64) -> f64 {
    let n = chain_len(k);
    let s = libm::sqrt(t);
    let mut r = vec![1.0, s];
    for m in 2..=n {
        r.push(s * r[m - 1] - r[m - 2]);
    }
    let b1 = (s * r[n] - r[n - 1]) / 2.0;
    let b2 = s * b1 - r[n];
    let b3 = s * b2 - b1;
    let chain: f64 = r.iter().step_by(2).map(|x| x * x).sum();
    1.0 / (chain + 2.0 * (b1 * b1 + b3 * b3))
}

fn check_weights(k: usize, weights: &[f64]) -> Result<()> {
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > tolerance::TRACE_WEIGHTS {
        return Err(Error::Spectral { what: "sum of trace weights", deviation: (total - 1.0).abs() });
    }
    if let Some(&w) = weights.iter().find(|&&w| w <= 0.0) {
        return Err(Error::Spectral { what: "positivity of trace weights", deviation: w });
    }
    let expected = 1.0 / (2 * k + 3) as f64;
    for &w in &weights[..2] {
        if (w - expected).abs() > tolerance::TRACE_WEIGHTS {
            return Err(Error::Spectral { what: "μ₁ = μ₂ = 1/(2k+3)", deviation: (w - expected).abs() });
        }
    }
    Ok(())
}

/// `E_j = P_j(𝔻)` for every `j`, where `P_j` is the Lagrange polynomial with
/// `P_j(t_i) = δ_ij`.
///
/// The product form `Π (𝔻 − t_i)/(t_j − t_i)` loses about one digit per
/// unit of `k`. Here each `P_j` is expanded in Chebyshev polynomials on
/// `[0, t_max]` instead, with coefficients from the inverse of the
/// Chebyshev-Vandermonde matrix at the nodes, and summed over the matrices
/// `T_m(𝔻̃)`, `𝔻̃ = (2𝔻 − t_max)/t_max`.
pub fn lagrange_projections(dd: &Matrix, eigenvalues: &[f64]) -> Result<Vec<Matrix>> {
    let m = eigenvalues.len();
    let size = dd.rows();
    let top = eigenvalues.iter().copied().fold(f64::MIN, f64::max);
    let scaled = |t: f64| (2.0 * t - top) / top;
    let vandermonde = Matrix::from_fn(m, m, |i, d| chebyshev_t(d, scaled(eigenvalues[i])));
    let coeffs = linalg::inverse(&vandermonde)?;

    let shifted = &dd.scale(2.0 / top) - &Matrix::identity(size);
    let mut powers = vec![Matrix::identity(size), shifted.clone()];
    for d in 2..m {
        powers.push(&(&shifted * &powers[d - 1]).scale(2.0) - &powers[d - 2]);
    }
    Ok((0..m)
        .map(|j| {
            let mut e = Matrix::zeros(size, size);
            for (d, p) in powers.iter().enumerate() {
                e = &e + &p.scale(coeffs[(d, j)]);
            }
            e
        })
        .collect())
}

fn chebyshev_t(d: usize, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, x);
    for _ in 0..d {
        (a, b) = (b, 2.0 * x * b - a);
    }
    a
}

/// Largest entrywise gap between the Jacobi projections and `P_j(𝔻)`.
pub fn lagrange_deviation(spec: &SpectralData) -> Result<f64> {
    let dd = dd_matrix(&build_gamma(spec.k)).to_f64();
    let lagrange = lagrange_projections(&dd, &spec.eigenvalues)?;
    Ok(spec.projections.iter().zip(&lagrange).map(|(e, p)| (p - e).max_abs()).fold(0.0, f64::max))
}

/// The four integer eigenvectors of `𝔻` over the even vertices of `Γ_k`:
/// `x₁, x₂ = ξ ∈ E(𝔻, 2)` and `y₁, y₂ = η ∈ E(𝔻, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenBasis {
    pub x1: Vec<i64>,
    pub x2: Vec<i64>,
    pub y1: Vec<i64>,
    pub y2: Vec<i64>,
}

/// Builds the four vectors and checks `𝔻x = 2x`, `𝔻y = 0` exactly.
pub fn eigvec_basis(k: usize) -> Result<EigenBasis> {
    let g = build_gamma(k);
    let at = |x: Simple| g.even_index(x).unwrap();
    let size = g.even.len();
    let sign = |e: usize| if e % 2 == 0 { 1 } else { -1 };
    let (b1, b3, c1, c3) = (at(Simple::Beta(1)), at(Simple::Beta(3)), at(Simple::Gamma(1)), at(Simple::Gamma(3)));

    let mut x1 = vec![0i64; size];
    for i in 0..=k {
        x1[at(Simple::Alpha(4 * i as u32))] += 2 * sign(i);
        x1[at(Simple::Alpha(4 * i as u32 + 2))] += 2 * sign(i);
    }
    for v in [b1, c1, b3, c3] {
        x1[v] += sign(k + 1);
    }

    let mut y1 = vec![0i64; size];
    for j in 0..=2 * k + 1 {
        y1[at(Simple::Alpha(2 * j as u32))] += 2 * sign(j);
    }
    y1[b1] += 1;
    y1[c1] += 1;
    y1[b3] -= 1;
    y1[c3] -= 1;

    let mut x2 = vec![0i64; size];
    x2[b1] = 1;
    x2[c1] = -1;
    x2[b3] = 1;
    x2[c3] = -1;
    let mut y2 = x2.clone();
    y2[b3] = -1;
    y2[c3] = 1;

    let dd = dd_matrix(&g);
    let check = |v: &[i64], lambda: i64, name: &'static str| -> Result<()> {
        let dv = dd.mul_vec(v);
        if dv.iter().zip(v).all(|(a, b)| *a == lambda * b) {
            Ok(())
        } else {
            Err(Error::EigenVector { vector: name })
        }
    };
    check(&x1, 2, "x1")?;
    check(&x2, 2, "x2")?;
    check(&y1, 0, "y1")?;
    check(&y2, 0, "y2")?;
    Ok(EigenBasis { x1, x2, y1, y2 })
}

/// Perron–Frobenius data of a connected bipartite graph.
#[derive(Clone, Debug)]
pub struct PfWeights {
    /// Largest eigenvalue of `Δ`.
    pub value: f64,
    /// Indexed by `even ⊔ odd`, with `1` at the unit vertex.
    pub vector: Vec<f64>,
}

/// Power iteration on `Δ + I`; the shift removes the `−λ` partner of the
/// bipartite spectrum from the top of the modulus order.
pub fn pf_weights(g: &BipartiteGraph) -> Result<PfWeights> {
    let unit = g.unit_index().ok_or(Error::NoIdentityVertex)?;
    let n = g.vertex_count();
    let shifted = &g.delta().to_f64() + &Matrix::identity(n);
    let (lambda, mut v) = linalg::power_iteration(
        &shifted,
        &vec![1.0; n],
        tolerance::POWER_ITERATION,
        tolerance::POWER_ITERATION_MAX,
    )?;
    let lambda = lambda - 1.0;
    let scale = v[unit];
    v.iter_mut().for_each(|x| *x /= scale);
    if let Some(&bad) = v.iter().find(|&&x| x <= 0.0) {
        return Err(Error::Spectral { what: "positivity of the Perron–Frobenius vector", deviation: bad });
    }
    let peak = (0..n).max_by(|&i, &j| v[i].total_cmp(&v[j])).unwrap();
    if let Some(mut polished) = tree_eigenvector(g, peak, lambda) {
        // compare at the peak scale, where power iteration is accurate
        let gap = v.iter().zip(&polished).map(|(a, b)| (a / v[peak] - b).abs()).fold(0.0, f64::max);
        if gap > tolerance::SPECTRAL_CROSS_CHECK {
            return Err(Error::Spectral { what: "Perron–Frobenius vector vs. tree recursion", deviation: gap });
        }
        let scale = polished[unit];
        polished.iter_mut().for_each(|x| *x /= scale);
        v = polished;
    }
    Ok(PfWeights { value: lambda, vector: v })
}

/// Eigenvector of a tree for the eigenvalue `λ`, scaled to 1 at `root`.
///
/// Leaf-to-root ratios `ρ(u) = v(u)/v(parent) = 1/(λ − Σ_children ρ)` are all
/// positive at the Perron-Frobenius eigenvalue, so each entry is a product of
/// positive factors and keeps full relative accuracy, even where power
/// iteration only resolves it to `tol · ‖v‖`. The ratio recursion is stable
/// when `v` grows towards the root, so root the tree at the largest entry.
/// Returns `None` for graphs with a cycle, if a ratio is not positive, or if
/// the root equation misses.
pub fn tree_eigenvector(g: &BipartiteGraph, root: usize, lambda: f64) -> Option<Vec<f64>> {
    let n = g.vertex_count();
    if g.edge_count() + 1 != n || !g.is_connected() {
        return None;
    }
    let delta = g.delta();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for w in 0..n {
            if delta[(u, w)] != 0 && parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut children_sum = vec![0.0; n];
    let mut ratio = vec![0.0; n];
    for &u in order.iter().skip(1).rev() {
        let denom = lambda - children_sum[u];
        if !(denom > 0.0) {
            return None;
        }
        ratio[u] = 1.0 / denom;
        children_sum[parent[u]] += ratio[u];
    }
    if (lambda - children_sum[root]).abs() > tolerance::SPECTRAL_CROSS_CHECK * lambda {
        return None;
    }
    let mut v = vec![0.0; n];
    v[root] = 1.0;
    for &u in order.iter().skip(1) {
        v[u] = ratio[u] * v[parent[u]];
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_k0_matches_displayed_matrix() {
        let g = build_gamma(0);
        // columns β₂, γ₂, α₃, α₁
        let expected = IntMatrix::from_rows(&[
            &[1, 0, 0, 0], // β₃
            &[1, 0, 1, 0], // β₁
            &[0, 1, 0, 0], // γ₃
            &[0, 1, 1, 0], // γ₁
            &[0, 0, 1, 1], // α₂
            &[0, 0, 0, 1], // α₀
        ]);
        assert_eq!(g.adjacency, expected);
    }

    #[test]
    fn gamma_shapes() {
        for k in 0..8 {
            let g = build_gamma(k);
            assert_eq!((g.adjacency.rows(), g.adjacency.cols()), (2 * k + 6, 2 * k + 4));
            assert_eq!(g.edge_count(), 4 * k + 9);
            assert!(g.is_connected());
            let b2 = g.odd_index(Simple::Beta(2)).unwrap();
            assert_eq!((0..g.even.len()).map(|i| g.adjacency[(i, b2)]).sum::<i64>(), 2);

            let h = build_gamma_prime(k);
            assert_eq!((h.adjacency.rows(), h.adjacency.cols()), (2 * k + 4, 2 * k + 4));
            assert_eq!(h.edge_count(), 4 * k + 7);
            assert!(h.is_connected());
        }
    }

    #[test]
    fn gamma_prime_k0_rows() {
        let h = build_gamma_prime(0);
        // columns β̄₂, γ̄₂, ᾱ₃, ᾱ₁
        assert_eq!(h.adjacency.row(0), &[0, 0, 1, 0]); // f
        assert_eq!(h.adjacency.row(1), &[1, 1, 1, 0]); // g
        assert_eq!(h.adjacency.row(2), &[0, 0, 1, 1]); // α′₂
        assert_eq!(h.adjacency.row(3), &[0, 0, 0, 1]); // α′₀
    }

    #[test]
    fn dd_k0_entries() {
        let dd = dd_matrix(&build_gamma(0));
        assert_eq!(dd[(0, 0)], 1);
        assert_eq!(dd[(0, 1)], 1);
        assert_eq!(dd[(1, 1)], 2);
        assert!(dd.is_symmetric());
    }

    #[test]
    fn char_poly_exact() {
        for k in 0..=4 {
            assert!(char_poly_check(k), "k = {k}");
        }
        let g = build_gamma(0);
        let mut cut = g.adjacency.clone();
        cut[(0, 0)] = 0;
        let cut = BipartiteGraph { adjacency: cut, ..g };
        assert!(!char_poly_matches(&dd_matrix(&cut), 0));
    }

    #[test]
    fn q_roots_are_roots() {
        for k in 0..=6 {
            let q = poly_qk(k);
            let roots = q_roots(k);
            assert_eq!(roots.len(), 2 * k + 2);
            for &r in &roots {
                // |q(r)| / |q'(r)| bounds the error for a simple root
                let h = 1e-7;
                let slope = (q.eval_exact_f64(r + h) - q.eval_exact_f64(r - h)) / (2.0 * h);
                assert!((q.eval_exact_f64(r) / slope).abs() < 1e-12, "k = {k}, r = {r}");
            }
            assert!(roots.windows(2).all(|w| w[0] < w[1]));
        }
        let r0 = q_roots(0);
        let sqrt13 = libm::sqrt(13.0);
        assert!((r0[0] - (5.0 - sqrt13) / 2.0).abs() < 1e-14);
        assert!((r0[1] - (5.0 + sqrt13) / 2.0).abs() < 1e-14);
        // q_1 has the rational root 1, hit exactly on the grid
        assert!(q_roots(1).contains(&1.0));
    }

    #[test]
    fn spectral_k0() {
        let s = spectral(0).unwrap();
        assert_eq!(s.eigenvalues.len(), 4);
        assert!((s.eigenvalues[3] - 4.302_775_637_731_995).abs() < 1e-9);
        assert!((s.weights[0] - 1.0 / 3.0).abs() < 1e-8);
        assert!((s.weights[1] - 1.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn spectral_weights_and_lagrange() {
        for k in 0..=10 {
            let s = spectral(k).unwrap();
            assert!((s.weights.iter().sum::<f64>() - 1.0).abs() < 1e-8);
            let dev = lagrange_deviation(&s).unwrap();
            assert!(dev < tolerance::SPECTRAL_CROSS_CHECK, "k = {k}: {dev:e}");
        }
    }

    #[test]
    fn root_weights_match_resolvent_residues() {
        use num_rational::BigRational;
        use num_traits::{Signed, ToPrimitive, Zero};
        // μ_j = χ₀(t_j)/χ′(t_j), χ₀ the characteristic polynomial of 𝔻 with a₀ deleted
        for k in 0..=8 {
            let g = build_gamma(k);
            let dd = dd_matrix(&g);
            let a0 = g.unit_index().unwrap();
            let keep: Vec<usize> = (0..dd.rows()).filter(|&i| i != a0).collect();
            let rows: Vec<Vec<i64>> = keep.iter().map(|&i| keep.iter().map(|&j| dd.row(i)[j]).collect()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let minor = linalg::char_poly(&IntMatrix::from_rows(&refs));
            let chi = linalg::char_poly(&dd);
            let deriv = IntPoly::from_coeffs(
                chi.coeffs().iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
            );
            let q = poly_qk(k);
            let eval = |p: &IntPoly, x: &BigRational| {
                p.coeffs().iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
            };
            for t in q_roots(k) {
                // the residue is sensitive to t, so refine the root far past f64 first
                let eps = BigRational::from_float(1e-12).unwrap();
                let (mut lo, mut hi) = (BigRational::from_float(t).unwrap() - &eps, BigRational::from_float(t).unwrap() + &eps);
                let lo_sign = eval(&q, &lo).is_positive();
                assert_ne!(lo_sign, eval(&q, &hi).is_positive());
                for _ in 0..80 {
                    let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                    if eval(&q, &mid).is_positive() == lo_sign {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let expected = (eval(&minor, &lo) / eval(&deriv, &lo)).to_f64().unwrap();
                let got = root_weight(k, t);
                assert!(((got - expected) / expected).abs() < 1e-12, "k={k} t={t}: {got} vs {expected}");
            }
        }
    }

    #[test]
    fn eigenvectors() {
        for k in 0..=10 {
            let b = eigvec_basis(k).unwrap();
            let ip: i64 = b.x1.iter().zip(&b.y1).map(|(a, c)| a * c).sum();
            assert_eq!(ip, 0, "k = {k}");
        }
        let b = eigvec_basis(0).unwrap();
        // β₃, β₁, γ₃, γ₁, α₂, α₀
        assert_eq!(b.x2, [1, 1, -1, -1, 0, 0]);
        assert_eq!(b.y2, [-1, 1, 1, -1, 0, 0]);
        assert_eq!(b.x1, [-1, -1, -1, -1, 2, 2]);
        assert_eq!(b.y1, [-1, 1, -1, 1, -2, 2]);
    }

    #[test]
    fn automorphism_commutes() {
        for k in 0..6 {
            assert!(beta_gamma_symmetric(k));
        }
    }

    #[test]
    fn pf_k0() {
        let g = build_gamma(0);
        let pf = pf_weights(&g).unwrap();
        let lambda = libm::sqrt((5.0 + libm::sqrt(13.0)) / 2.0);
        assert!((pf.value - lambda).abs() < 1e-9);
        let p = g.even.len();
        let a1 = p + g.odd_index(Simple::Alpha(1)).unwrap();
        assert!((pf.vector[a1] - lambda).abs() < 1e-9);
        let (b2, c2) = (p + g.odd_index(Simple::Beta(2)).unwrap(), p + g.odd_index(Simple::Gamma(2)).unwrap());
        assert!((pf.vector[b2] - pf.vector[c2]).abs() < 1e-9);
        for k in 0..8 {
            assert!(pf_weights(&build_gamma_prime(k)).unwrap().vector.iter().all(|&x| x > 0.0));
        }
    }

    #[test]
    fn pf_vector_has_componentwise_accuracy() {
        for k in [3, 8, 12] {
            for g in [build_gamma(k), build_gamma_prime(k)] {
                let pf = pf_weights(&g).unwrap();
                let image = g.delta().to_f64().mul_vec(&pf.vector);
                for (i, (a, b)) in image.iter().zip(&pf.vector).enumerate() {
                    assert!((a - pf.value * b).abs() < 1e-12 * b, "k={k} vertex {i}");
                }
            }
            let pf = pf_weights(&build_gamma(k)).unwrap();
            let even: f64 = pf.vector[..2 * k + 6].iter().map(|x| x * x).sum();
            let w = root_weight(k, pf.value * pf.value);
            assert!((w * even - 1.0).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn both_graphs_share_the_norm() {
        for k in 0..6 {
            let a = pf_weights(&build_gamma(k)).unwrap().value;
            let b = pf_weights(&build_gamma_prime(k)).unwrap().value;
            assert!((a - b).abs() < 1e-9, "k = {k}");
        }
    }
}
