//! Fusion tables and the axiom verifiers.
//!
//! A [`FusionTable`] stores `N_{X,Y}^Z` sparsely: for every ordered pair of
//! basis indices `(x, y)` a sorted list of `(z, N)` with `N > 0`. Only
//! grade-compatible triples can be stored. Verifiers return `Ok(())` or a
//! [`Violation`] naming the first offending triple.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::closed_form;
use crate::graphs::{build_gamma, build_gamma_prime, pf_weights};
use crate::label::{all_objects, objects_of_grade, Grade, Side, Simple};
use crate::{Error, Result};

/// A simple object together with its grade and conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub label: Simple,
    pub grade: Grade,
    pub conjugate: Simple,
}

impl From<Simple> for BasisElement {
    fn from(label: Simple) -> Self {
        BasisElement { label, grade: label.grade(), conjugate: label.conj() }
    }
}

/// The canonical basis for `k`: `N𝒳_N, N𝒳_M, M𝒳_N, M𝒳_M` in frozen order.
pub fn canonical_basis(k: usize) -> Vec<BasisElement> {
    all_objects(k).into_iter().map(BasisElement::from).collect()
}

/// Structure constants of one bi-graded fusion ring.
#[derive(Clone, PartialEq, Eq)]
pub struct FusionTable {
    k: usize,
    basis: Vec<BasisElement>,
    index: BTreeMap<Simple, usize>,
    conj: Vec<usize>,
    products: Vec<Vec<(usize, u64)>>,
}

impl fmt::Debug for FusionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FusionTable")
            .field("k", &self.k)
            .field("basis", &self.basis.len())
            .field("nonzero", &self.nonzero_count())
            .finish()
    }
}

impl FusionTable {
    /// A table over the canonical basis with every coefficient zero.
    pub fn empty(k: usize) -> Self {
        let basis = canonical_basis(k);
        let index: BTreeMap<Simple, usize> = basis.iter().enumerate().map(|(i, b)| (b.label, i)).collect();
        let conj = basis.iter().map(|b| index[&b.conjugate]).collect();
        let len = basis.len();
        FusionTable { k, basis, index, conj, products: vec![Vec::new(); len * len] }
    }

    /// Builds a table from `(x, y, z, N)` entries. Zero entries are
    /// accepted and ignored; duplicates and incompatible grades are errors.
    pub fn from_entries(k: usize, entries: impl IntoIterator<Item = (Simple, Simple, Simple, u64)>) -> Result<Self> {
        let mut t = Self::empty(k);
        for (x, y, z, n) in entries {
            if t.get(x, y, z).is_some_and(|old| old != 0) {
                return Err(Error::Table(format!("duplicate coefficient for ({x}, {y}, {z})")));
            }
            t.set(x, y, z, n)?;
        }
        Ok(t)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, x: Simple) -> Option<usize> {
        self.index.get(&x).copied()
    }

    pub fn label(&self, i: usize) -> Simple {
        self.basis[i].label
    }

    pub fn conj_index(&self, i: usize) -> usize {
        self.conj[i]
    }

    /// Basis indices of the given grade, in frozen order.
    pub fn grade_indices(&self, grade: Grade) -> Vec<usize> {
        objects_of_grade(self.k, grade).into_iter().map(|x| self.index[&x]).collect()
    }

    fn require(&self, x: Simple) -> Result<usize> {
        self.index_of(x).ok_or_else(|| Error::Table(format!("`{x}` is not a basis element for k = {}", self.k)))
    }

    /// Sets `N_{x,y}^z`; `n = 0` clears the entry.
    pub fn set(&mut self, x: Simple, y: Simple, z: Simple, n: u64) -> Result<()> {
        let (xi, yi, zi) = (self.require(x)?, self.require(y)?, self.require(z)?);
        if x.grade().compose(y.grade()) != Some(z.grade()) {
            return Err(Error::Table(format!("grades of ({x}, {y}, {z}) are not compatible")));
        }
        let row = &mut self.products[xi * self.basis.len() + yi];
        match row.binary_search_by_key(&zi, |e| e.0) {
            Ok(p) if n == 0 => {
                row.remove(p);
            }
            Ok(p) => row[p].1 = n,
            Err(_) if n == 0 => {}
            Err(p) => row.insert(p, (zi, n)),
        }
        Ok(())
    }

    /// `N_{x,y}^z`, or `None` if a label is not in the basis.
    pub fn get(&self, x: Simple, y: Simple, z: Simple) -> Option<u64> {
        Some(self.coeff(self.index_of(x)?, self.index_of(y)?, self.index_of(z)?))
    }

    /// `N_{x,y}^z` by basis index; zero for incompatible triples.
    pub fn coeff(&self, x: usize, y: usize, z: usize) -> u64 {
        let row = self.row(x, y);
        row.binary_search_by_key(&z, |e| e.0).map_or(0, |p| row[p].1)
    }

    /// Nonzero `(z, N_{x,y}^z)` in increasing `z`.
    pub fn row(&self, x: usize, y: usize) -> &[(usize, u64)] {
        &self.products[x * self.basis.len() + y]
    }

    /// `x · y` as a list of `(Z, N)`.
    pub fn product(&self, x: Simple, y: Simple) -> Vec<(Simple, u64)> {
        match (self.index_of(x), self.index_of(y)) {
            (Some(xi), Some(yi)) => self.row(xi, yi).iter().map(|&(z, n)| (self.label(z), n)).collect(),
            _ => Vec::new(),
        }
    }

    /// Nonzero entries in canonical order (by basis index of `x`, `y`, `z`).
    pub fn entries(&self) -> impl Iterator<Item = (Simple, Simple, Simple, u64)> + '_ {
        let len = self.basis.len();
        self.products.iter().enumerate().flat_map(move |(p, row)| {
            let (x, y) = (self.label(p / len), self.label(p % len));
            row.iter().map(move |&(z, n)| (x, y, self.label(z), n))
        })
    }

    pub fn nonzero_count(&self) -> usize {
        self.products.iter().map(Vec::len).sum()
    }

    /// Ordered pairs `(x, y)` with `target(x) = source(y)`.
    pub fn compatible_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (xi, x) in self.basis.iter().enumerate() {
            for (yi, y) in self.basis.iter().enumerate() {
                if x.grade.target == y.grade.source {
                    out.push((xi, yi));
                }
            }
        }
        out
    }

    pub fn identity(&self, side: Side) -> usize {
        self.index[&Simple::unit(side)]
    }
}

/// A failed axiom check.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

impl Violation {
    fn new(check: &'static str, detail: String) -> Self {
        Violation { check, detail }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

/// Compatible triples `(x, y, z)`, i.e. `z` has grade `source(x) → target(y)`.
fn for_each_triple(t: &FusionTable, mut f: impl FnMut(usize, usize, usize) -> Result<(), Violation>) -> Result<(), Violation> {
    let by_grade: Vec<Vec<usize>> = Grade::ALL.iter().map(|&g| t.grade_indices(g)).collect();
    for (x, y) in t.compatible_pairs() {
        let grade = t.basis[x].grade.compose(t.basis[y].grade).unwrap();
        for &z in &by_grade[grade.index()] {
            f(x, y, z)?;
        }
    }
    Ok(())
}

/// `N_{X,Y}^Z = N_{Z,Ȳ}^X = N_{X̄,Z}^Y = N_{Ȳ,X̄}^{Z̄} = N_{Z̄,X}^{Ȳ} = N_{Y,Z̄}^{X̄}`
/// on every compatible triple, zeros included.
pub fn verify_frobenius(t: &FusionTable) -> Result<(), Violation> {
    let c = |i| t.conj_index(i);
    for_each_triple(t, |x, y, z| {
        let n = t.coeff(x, y, z);
        let others = [
            t.coeff(z, c(y), x),
            t.coeff(c(x), z, y),
            t.coeff(c(y), c(x), c(z)),
            t.coeff(c(z), x, c(y)),
            t.coeff(y, c(z), c(x)),
        ];
        match others.iter().position(|&m| m != n) {
            None => Ok(()),
            Some(p) => Err(Violation::new(
                "frobenius",
                format!(
                    "N_{{{},{}}}^{{{}}} = {n} but symmetry #{} gives {}",
                    t.label(x),
                    t.label(y),
                    t.label(z),
                    p + 1,
                    others[p]
                ),
            )),
        }
    })
}

/// `(XY)Z = X(YZ)` on every compatible triple.
pub fn verify_associativity(t: &FusionTable) -> Result<(), Violation> {
    let len = t.len();
    let mut lhs = vec![0u128; len];
    let mut rhs = vec![0u128; len];
    let mut touched = Vec::new();
    for (x, y) in t.compatible_pairs() {
        let target = t.basis[y].grade.target;
        for z in (0..len).filter(|&z| t.basis[z].grade.source == target) {
            for &(w, a) in t.row(x, y) {
                for &(v, b) in t.row(w, z) {
                    lhs[v] += a as u128 * b as u128;
                    touched.push(v);
                }
            }
            for &(u, a) in t.row(y, z) {
                for &(v, b) in t.row(x, u) {
                    rhs[v] += a as u128 * b as u128;
                    touched.push(v);
                }
            }
            let bad = touched.iter().copied().find(|&v| lhs[v] != rhs[v]);
            if let Some(v) = bad {
                return Err(Violation::new(
                    "associativity",
                    format!(
                        "coefficient of {} in ({}·{})·{} is {} but in {}·({}·{}) is {}",
                        t.label(v),
                        t.label(x),
                        t.label(y),
                        t.label(z),
                        lhs[v],
                        t.label(x),
                        t.label(y),
                        t.label(z),
                        rhs[v]
                    ),
                ));
            }
            for v in touched.drain(..) {
                lhs[v] = 0;
                rhs[v] = 0;
            }
        }
    }
    Ok(())
}

/// Units act as Kronecker deltas on both sides, conjugation is a
/// grade-reversing involution, and `N_{X,Y}^Z = N_{Ȳ,X̄}^{Z̄}`.
pub fn verify_identity_conjugation(t: &FusionTable) -> Result<(), Violation> {
    for (i, b) in t.basis.iter().enumerate() {
        let c = t.conj_index(i);
        if t.conj_index(c) != i || t.basis[c].grade != b.grade.reversed() {
            return Err(Violation::new("conjugation", format!("conjugate of {} is not an involution", b.label)));
        }
    }
    for (x, bx) in t.basis.iter().enumerate() {
        let left = t.identity(bx.grade.source);
        let right = t.identity(bx.grade.target);
        for y in t.grade_indices(bx.grade) {
            let delta = u64::from(x == y);
            for (name, n) in [("1·X", t.coeff(left, x, y)), ("X·1", t.coeff(x, right, y))] {
                if n != delta {
                    return Err(Violation::new(
                        "identity",
                        format!("{name} with X = {} has coefficient {n} at {}", bx.label, t.label(y)),
                    ));
                }
            }
        }
    }
    let c = |i| t.conj_index(i);
    for_each_triple(t, |x, y, z| {
        let (n, m) = (t.coeff(x, y, z), t.coeff(c(y), c(x), c(z)));
        if n == m {
            Ok(())
        } else {
            Err(Violation::new(
                "conjugation",
                format!("N_{{{},{}}}^{{{}}} = {n} but the conjugate triple gives {m}", t.label(x), t.label(y), t.label(z)),
            ))
        }
    })
}

/// Perron–Frobenius dimensions aligned with the canonical basis, `1` at
/// both units.
pub fn pf_dimensions(k: usize) -> Result<Vec<f64>> {
    let gamma = pf_weights(&build_gamma(k))?.vector;
    let prime = pf_weights(&build_gamma_prime(k))?.vector;
    let (p, q) = (2 * k + 6, 2 * k + 4);
    // NN, NM from Γ_k; MN (odd of Γ′_k), MM (even of Γ′_k)
    let mut out = Vec::with_capacity(p + 3 * q);
    out.extend_from_slice(&gamma[..p]);
    out.extend_from_slice(&gamma[p..]);
    out.extend_from_slice(&prime[q..]);
    out.extend_from_slice(&prime[..q]);
    Ok(out)
}

/// `Σ_Z N_{X,Y}^Z d(Z) = d(X) d(Y)` within `tol` (default [`crate::tolerance::DIMENSION`])
/// (relative). Returns the worst relative residual.
pub fn verify_dimension(t: &FusionTable, dims: &[f64], tol: f64) -> Result<f64, Violation> {
    let mut worst = 0.0f64;
    for (x, y) in t.compatible_pairs() {
        let lhs: f64 = t.row(x, y).iter().map(|&(z, n)| n as f64 * dims[z]).sum();
        let rhs = dims[x] * dims[y];
        let residual = (lhs - rhs).abs() / rhs;
        if !(residual <= tol) {
            return Err(Violation::new(
                "dimension",
                format!(
                    "d({}·{}) = {lhs} but d({})·d({}) = {rhs} (relative residual {residual:e})",
                    t.label(x),
                    t.label(y),
                    t.label(x),
                    t.label(y)
                ),
            ));
        }
        worst = worst.max(residual);
    }
    Ok(worst)
}

/// Right multiplication by `α₁` (resp. `ᾱ₁`) recovers the adjacency matrix
/// of `Γ_k` (resp. `Γ′_k`) exactly.
pub fn verify_graph_recovery(t: &FusionTable) -> Result<(), Violation> {
    let k = t.k;
    let alpha = Simple::Alpha(1);
    let alpha_bar = Simple::AlphaBar(1);
    for (graph, by) in [(build_gamma(k), alpha), (build_gamma_prime(k), alpha_bar)] {
        for (i, &x) in graph.even.iter().enumerate() {
            for (j, &y) in graph.odd.iter().enumerate() {
                let n = t.get(x, by, y).unwrap_or(0);
                if n as i64 != graph.adjacency[(i, j)] {
                    return Err(Violation::new(
                        "graph recovery",
                        format!("N_{{{x},{by}}}^{{{y}}} = {n} but the graph has {}", graph.adjacency[(i, j)]),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// One coefficient where the table and the closed forms disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub what: String,
    pub expected: BigInt,
    pub found: BigInt,
}

/// Result of comparing one family of closed-form coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub family: &'static str,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl FamilyReport {
    fn new(family: &'static str) -> Self {
        FamilyReport { family, checked: 0, mismatches: Vec::new() }
    }

    fn compare(&mut self, what: impl FnOnce() -> String, expected: BigInt, found: BigInt) {
        self.checked += 1;
        if expected != found {
            self.mismatches.push(Mismatch { what: what(), expected, found });
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub k: usize,
    pub families: Vec<FamilyReport>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyReport::passed)
    }
}

/// Compares `t` with every coefficient the closed forms provide.
///
/// Families: `b3g3` (all four products among `β₃, γ₃`), `fg`,
/// `fg_differences` (linear relations among `f, g` coefficients),
/// `mixed` (`f, g` against `β̄₂, γ̄₂`) and `beta3_power`.
pub fn crosscheck(t: &FusionTable) -> Result<CrosscheckReport> {
    let k = t.k;
    let get = |x: Simple, y: Simple, z: Simple| BigInt::from(t.get(x, y, z).unwrap_or(0));
    let mut families = Vec::new();

    let mut b3g3 = FamilyReport::new("b3g3");
    let products = closed_form::b3g3_table(k)?;
    let (b3, g3) = (Simple::Beta(3), Simple::Gamma(3));
    for ((x, y), expansion) in [(b3, g3), (g3, b3), (b3, b3), (g3, g3)].into_iter().zip(products.iter()) {
        for z in objects_of_grade(k, Grade::NN) {
            let expected = closed_form::integer_coefficient(expansion, z)?;
            b3g3.compare(|| format!("N_{{{x},{y}}}^{{{z}}}"), expected, get(x, y, z));
        }
    }
    families.push(b3g3);

    let (f, g) = (Simple::F, Simple::G);
    let mut fg = FamilyReport::new("fg");
    let expected = closed_form::fg_table(k);
    for ((x, y, z), e) in [(f, f, f), (f, g, f), (f, g, g), (g, g, g)].into_iter().zip(expected) {
        fg.compare(|| format!("N_{{{x},{y}}}^{{{z}}}"), e, get(x, y, z));
    }
    families.push(fg);

    let mut diffs = FamilyReport::new("fg_differences");
    for rel in closed_form::fg_relations(k) {
        let found: BigInt = rel.terms.iter().map(|&(c, x, y, z)| BigInt::from(c) * get(x, y, z)).sum();
        diffs.compare(|| String::from(rel.name), rel.value, found);
    }
    families.push(diffs);

    let mut mixed = FamilyReport::new("mixed");
    let (bb, gb) = (Simple::BetaBar2, Simple::GammaBar2);
    let triples = [(f, bb, bb), (f, bb, gb), (f, gb, gb), (g, bb, bb), (g, bb, gb), (g, gb, gb)];
    for ((x, y, z), e) in triples.into_iter().zip(closed_form::mixed_table(k)) {
        mixed.compare(|| format!("N_{{{x},{y}}}^{{{z}}}"), e, get(x, y, z));
    }
    families.push(mixed);

    let mut power = FamilyReport::new("beta3_power");
    let found = closed_form::beta3_power(t);
    for (z, e) in closed_form::beta3_power_expected(k) {
        power.compare(|| format!("coefficient of {z} in β₃(α₁ᾱ₁)³"), BigInt::from(e), found.get(&z).cloned().unwrap_or_default());
    }
    let extra = found.iter().filter(|(z, n)| closed_form::beta3_power_expected(k).iter().all(|(w, _)| w != *z) && **n != BigInt::from(0));
    for (z, n) in extra {
        power.compare(|| format!("coefficient of {z} in β₃(α₁ᾱ₁)³"), BigInt::from(0), n.clone());
    }
    families.push(power);

    Ok(CrosscheckReport { k, families })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> FusionTable {
        let mut t = FusionTable::empty(0);
        let (a0, b1) = (Simple::Alpha(0), Simple::Beta(1));
        t.set(a0, b1, b1, 1).unwrap();
        t
    }

    #[test]
    fn set_get_and_clear() {
        let mut t = tiny();
        let (a0, b1) = (Simple::Alpha(0), Simple::Beta(1));
        assert_eq!(t.get(a0, b1, b1), Some(1));
        assert_eq!(t.get(a0, b1, a0), Some(0));
        t.set(a0, b1, b1, 0).unwrap();
        assert_eq!(t.nonzero_count(), 0);
    }

    #[test]
    fn rejects_incompatible_grades_and_foreign_labels() {
        let mut t = FusionTable::empty(0);
        assert!(t.set(Simple::Alpha(0), Simple::F, Simple::F, 1).is_err());
        assert!(t.set(Simple::Alpha(0), Simple::Alpha(6), Simple::Alpha(6), 1).is_err());
    }

    #[test]
    fn duplicate_entries_are_rejected() {
        let a0 = Simple::Alpha(0);
        let e = [(a0, a0, a0, 1), (a0, a0, a0, 1)];
        assert!(FusionTable::from_entries(0, e).is_err());
    }

    #[test]
    fn empty_table_fails_identity() {
        let v = verify_identity_conjugation(&FusionTable::empty(0)).unwrap_err();
        assert_eq!(v.check, "identity");
    }

    #[test]
    fn basis_size() {
        for k in 0..5 {
            assert_eq!(canonical_basis(k).len(), 8 * k + 18);
        }
    }
}
