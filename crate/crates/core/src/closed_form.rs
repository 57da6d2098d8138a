//! Exact closed-form coefficients.
//!
//! The products among `β₃, γ₃` are assembled from
//!
//! ```text
//! A = (β₃ − γ₃)²,  B = (β₃ − γ₃)(β₃ + γ₃),  C = (β₃ + γ₃)(β₃ − γ₃),  D = (β₃ + γ₃)²
//! ```
//!
//! and the sequences `c, d, f, g`. All arithmetic is over `ℚ` so every
//! halving is checked rather than assumed.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::fusion::{FusionTable, Violation};
use crate::label::Simple;
use crate::polynomials::SeqTable;
use crate::{chain_len, Error, Result};

/// A rational combination of simple objects.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct EvenVector(BTreeMap<Simple, BigRational>);

impl EvenVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, x: Simple, c: impl Into<BigRational>) {
        let c = c.into();
        let slot = self.0.entry(x).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&x);
        }
    }

    pub fn with(mut self, x: Simple, c: impl Into<BigRational>) -> Self {
        self.add_term(x, c);
        self
    }

    pub fn coefficient(&self, x: Simple) -> BigRational {
        self.0.get(&x).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> EvenVector {
        let mut out = EvenVector::new();
        for (&x, v) in &self.0 {
            out.add_term(x, v * c);
        }
        out
    }

    /// Nonzero terms in label order.
    pub fn iter(&self) -> impl Iterator<Item = (Simple, &BigRational)> {
        self.0.iter().map(|(&x, c)| (x, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl Add for &EvenVector {
    type Output = EvenVector;

    fn add(self, rhs: &EvenVector) -> EvenVector {
        let mut out = self.clone();
        for (x, c) in rhs.iter() {
            out.add_term(x, c.clone());
        }
        out
    }
}

impl Sub for &EvenVector {
    type Output = EvenVector;

    fn sub(self, rhs: &EvenVector) -> EvenVector {
        let mut out = self.clone();
        for (x, c) in rhs.iter() {
            out.add_term(x, -c.clone());
        }
        out
    }
}

impl fmt::Debug for EvenVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter().map(|(x, c)| (alloc::format!("{x}"), alloc::format!("{c}")))).finish()
    }
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn half(v: BigInt) -> BigRational {
    BigRational::new(v, BigInt::from(2))
}

/// The coefficient of `z`, required to be a non-negative integer.
pub fn integer_coefficient(v: &EvenVector, z: Simple) -> Result<BigInt> {
    let c = v.coefficient(z);
    if !c.is_integer() || c.is_negative() {
        return Err(Error::Halving { what: "closed-form expansion", label: z });
    }
    Ok(c.to_integer())
}

fn seq(k: usize) -> SeqTable {
    SeqTable::new(2 * k + 6).expect("f/g split of c_j")
}

/// `A, B, C, D` for `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abcd {
    pub a: EvenVector,
    pub b: EvenVector,
    pub c: EvenVector,
    pub d: EvenVector,
}

/// ```text
/// A = −2(α₀ − α₆ + α₈ − α₁₄ + …) + (β₃ + γ₃)      k even
/// A = −2(α₀ − α₆ + α₈ − … − α_{8l+6}) − (β₁ + γ₁)  k = 2l + 1
/// B = γ₃ − β₃ (k even),  β₁ − γ₁ (k odd)
/// C = γ₃ − β₃ (k even),  γ₁ − β₁ (k odd)
/// D = 2(c₀α₀ + c₁α₂ + … + c_{2k+1}α_{4k+2}) + c_{2k+2}(β₁ + γ₁) + c_{2k}(β₃ + γ₃)
/// ```
pub fn abcd(k: usize) -> Abcd {
    use Simple::*;
    let s = seq(k);
    let even = k % 2 == 0;

    let mut a = EvenVector::new();
    for j in 0..=2 * k + 1 {
        match j % 4 {
            0 => a.add_term(Alpha(2 * j as u32), int(-2)),
            3 => a.add_term(Alpha(2 * j as u32), int(2)),
            _ => {}
        }
    }
    let (b, c);
    if even {
        a = a.with(Beta(3), int(1)).with(Gamma(3), int(1));
        b = EvenVector::new().with(Gamma(3), int(1)).with(Beta(3), int(-1));
        c = b.clone();
    } else {
        a = a.with(Beta(1), int(-1)).with(Gamma(1), int(-1));
        b = EvenVector::new().with(Beta(1), int(1)).with(Gamma(1), int(-1));
        c = b.scale(&int(-1));
    }

    let mut d = EvenVector::new();
    for j in 0..=2 * k + 1 {
        d.add_term(Alpha(2 * j as u32), int(2 * s.c(j)));
    }
    for x in [Beta(1), Gamma(1)] {
        d.add_term(x, int(s.c(2 * k + 2).clone()));
    }
    for x in [Beta(3), Gamma(3)] {
        d.add_term(x, int(s.c(2 * k).clone()));
    }
    Abcd { a, b, c, d }
}

/// `β₃γ₃, γ₃β₃, β₃², γ₃²` from `A, B, C, D`:
///
/// ```text
/// β₃γ₃ = ((D − A) + (B − C))/4    γ₃β₃ = ((D − A) − (B − C))/4
/// β₃²  = ((D + A) + (B + C))/4    γ₃²  = ((D + A) − (B + C))/4
/// ```
pub fn b3g3_from_abcd(k: usize) -> [EvenVector; 4] {
    let Abcd { a, b, c, d } = abcd(k);
    let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
    let (dma, dpa) = (&d - &a, &d + &a);
    let (bmc, bpc) = (&b - &c, &b + &c);
    [&dma + &bmc, &dma - &bmc, &dpa + &bpc, &dpa - &bpc].map(|v| v.scale(&quarter))
}

/// `β₃γ₃, γ₃β₃, β₃², γ₃²` in the explicit form
///
/// ```text
/// k even:  β₃γ₃ = γ₃β₃ = Σ f_j α_{2j} + ½f_{2k+2}(β₁ + γ₁) + ½(f_{2k} − 1)(β₃ + γ₃)
///          β₃²  = Σ g_j α_{2j} + ½g_{2k+2}(β₁ + γ₁) + ½g_{2k} β₃ + ½(g_{2k} + 2) γ₃
///          γ₃²  = Σ g_j α_{2j} + ½g_{2k+2}(β₁ + γ₁) + ½(g_{2k} + 2) β₃ + ½g_{2k} γ₃
/// k odd:   β₃γ₃ = Σ f_j α_{2j} + ½(f_{2k+2} + 1) β₁ + ½(f_{2k+2} − 1) γ₁ + ½f_{2k}(β₃ + γ₃)
///          γ₃β₃ = the same with β₁ and γ₁ exchanged
///          β₃² = γ₃² = Σ g_j α_{2j} + ½g_{2k+2}(β₁ + γ₁) + ½g_{2k}(β₃ + γ₃)
/// ```
///
/// with sums over `j = 0, …, 2k + 1`. Every coefficient is checked to be a
/// non-negative integer.
pub fn b3g3_table(k: usize) -> Result<[EvenVector; 4]> {
    use Simple::*;
    let s = seq(k);
    let (f2, f0) = (s.f(2 * k + 2).clone(), s.f(2 * k).clone());
    let (g2, g0) = (s.g(2 * k + 2).clone(), s.g(2 * k).clone());
    let alphas = |h: &dyn Fn(usize) -> BigInt| {
        let mut v = EvenVector::new();
        for j in 0..=2 * k + 1 {
            v.add_term(Alpha(2 * j as u32), int(h(j)));
        }
        v
    };
    let f_part = alphas(&|j| s.f(j).clone());
    let g_part = alphas(&|j| s.g(j).clone());
    let one = BigInt::from(1);

    let out = if k % 2 == 0 {
        let bg = f_part
            .with(Beta(1), half(f2.clone()))
            .with(Gamma(1), half(f2))
            .with(Beta(3), half(&f0 - &one))
            .with(Gamma(3), half(&f0 - &one));
        let common = g_part.with(Beta(1), half(g2.clone())).with(Gamma(1), half(g2));
        let bb = common.clone().with(Beta(3), half(g0.clone())).with(Gamma(3), half(&g0 + 2));
        let gg = common.with(Beta(3), half(&g0 + 2)).with(Gamma(3), half(g0));
        [bg.clone(), bg, bb, gg]
    } else {
        let common = f_part.with(Beta(3), half(f0.clone())).with(Gamma(3), half(f0));
        let bg = common.clone().with(Beta(1), half(&f2 + &one)).with(Gamma(1), half(&f2 - &one));
        let gb = common.with(Beta(1), half(&f2 - &one)).with(Gamma(1), half(&f2 + &one));
        let sq = g_part
            .with(Beta(1), half(g2.clone()))
            .with(Gamma(1), half(g2))
            .with(Beta(3), half(g0.clone()))
            .with(Gamma(3), half(g0));
        [bg, gb, sq.clone(), sq]
    };
    for v in &out {
        for (x, _) in v.iter() {
            integer_coefficient(v, x)?;
        }
    }
    Ok(out)
}

/// `(d_j)` extended by `d_{-2} = 0`, which keeps the recursion valid at `j = 1`.
fn d_ext(s: &SeqTable, j: i64) -> BigInt {
    if j == -2 {
        BigInt::zero()
    } else {
        s.d(j).clone()
    }
}

/// `(N_{f,f}^f, N_{f,g}^f, N_{f,g}^g, N_{g,g}^g) = (d_{2k−1}, d_{2k}, d_{2k+1}, d_{2k+2})`.
pub fn fg_table(k: usize) -> [BigInt; 4] {
    let s = seq(k);
    let k = k as i64;
    [2 * k - 1, 2 * k, 2 * k + 1, 2 * k + 2].map(|j| s.d(j).clone())
}

/// A linear relation `Σ c · N_{x,y}^z = value` among table entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: &'static str,
    pub terms: Vec<(i64, Simple, Simple, Simple)>,
    pub value: BigInt,
}

/// The difference relations among the `f, g` coefficients, and the two
/// relations obtained from `(g + f)(g − f)` and `R₂(Δ′)(g + f)(g − f)`.
pub fn fg_relations(k: usize) -> Vec<Relation> {
    use Simple::{F as f, G as g};
    let s = seq(k);
    let k = k as i64;
    let d = |j: i64| d_ext(&s, j);
    alloc::vec![
        Relation {
            name: "<f²,f> − <fg,g> = d(2k−1) − d(2k+1)",
            terms: alloc::vec![(1, f, f, f), (-1, f, g, g)],
            value: d(2 * k - 1) - d(2 * k + 1),
        },
        Relation {
            name: "<fg,f> − <g²,g> = d(2k) − d(2k+2)",
            terms: alloc::vec![(1, f, g, f), (-1, g, g, g)],
            value: d(2 * k) - d(2 * k + 2),
        },
        Relation {
            name: "<fg,g> − <g²,g> = d(2k+1) − d(2k+2)",
            terms: alloc::vec![(1, f, g, g), (-1, g, g, g)],
            value: d(2 * k + 1) - d(2 * k + 2),
        },
        Relation {
            name: "<g²,g> − <f²,g> = d(2k+2) − d(2k)",
            terms: alloc::vec![(1, g, g, g), (-1, f, f, g)],
            value: d(2 * k + 2) - d(2 * k),
        },
        Relation {
            name: "<g²,f> − <f²,f> = d(2k+1) − d(2k−1)",
            terms: alloc::vec![(1, g, g, f), (-1, f, f, f)],
            value: d(2 * k + 1) - d(2 * k - 1),
        },
        Relation {
            name: "3<g²,g> − <f²,g> − 2<fg,g> = 3d(2k+1) + d(2k−1) − 2d(2k−2)",
            terms: alloc::vec![(3, g, g, g), (-1, f, f, g), (-2, f, g, g)],
            value: 3 * d(2 * k + 1) + d(2 * k - 1) - 2 * d(2 * k - 2),
        },
        Relation {
            name: "3<g²,f> − <f²,f> − 2<fg,f> = d(2k+1) + d(2k−1) + 2d(2k−2)",
            terms: alloc::vec![(3, g, g, f), (-1, f, f, f), (-2, f, g, f)],
            value: d(2 * k + 1) + d(2 * k - 1) + 2 * d(2 * k - 2),
        },
    ]
}

/// `N_{x,y}^z` for `(x, y, z)` in
/// `(f,β̄₂,β̄₂), (f,β̄₂,γ̄₂), (f,γ̄₂,γ̄₂), (g,β̄₂,β̄₂), (g,β̄₂,γ̄₂), (g,γ̄₂,γ̄₂)`.
pub fn mixed_table(k: usize) -> [BigInt; 6] {
    let s = seq(k);
    let (a, b, c) = (2 * k, 2 * k + 1, 2 * k + 2);
    let even = k % 2 == 0;
    let ff = s.g(c) + s.g(b);
    let fb = s.f(c) + s.f(b);
    let gg: BigInt = s.f(b) + 2 * s.f(c) + s.f(a) - BigInt::from(even as u8);
    let gb: BigInt = s.g(b) + 2 * s.g(c) + s.g(a) + BigInt::from(even as u8);
    [ff.clone(), fb, ff, gg.clone(), gb, gg]
}

/// The coefficient that the alternative conjugation structure would force
/// to be an integer: `(c_{2k} + 1)/4` for even `k`, `(c_{2k+2} + 1)/4` for odd
/// `k`. Fails if it is an integer.
pub fn case2_obstruction(k: usize) -> Result<BigRational> {
    let s = seq(k);
    let c = if k % 2 == 0 { s.c(2 * k) } else { s.c(2 * k + 2) };
    let w = BigRational::new(c + 1, BigInt::from(4));
    if w.is_integer() {
        return Err(Error::Case2Integral { k });
    }
    Ok(w)
}

/// `β₃(α₁ᾱ₁)³` by repeated contraction with the table.
pub fn beta3_power(t: &FusionTable) -> BTreeMap<Simple, BigInt> {
    let (a, abar) = (Simple::Alpha(1), Simple::AlphaBar(1));
    let mut v: BTreeMap<Simple, BigInt> = BTreeMap::from([(Simple::Beta(3), BigInt::from(1))]);
    for _ in 0..3 {
        for by in [a, abar] {
            let mut next = BTreeMap::new();
            for (x, c) in &v {
                for (z, n) in t.product(*x, by) {
                    *next.entry(z).or_insert_with(BigInt::zero) += c * BigInt::from(n);
                }
            }
            v = next;
        }
    }
    v.retain(|_, c| !c.is_zero());
    v
}

/// `5β₃ + 10β₁ + 6α_{n−1} + 6γ₁ + α_{n−3} + γ₃`.
pub fn beta3_power_expected(k: usize) -> Vec<(Simple, u64)> {
    use Simple::*;
    let n = chain_len(k) as u32;
    alloc::vec![(Beta(3), 5), (Beta(1), 10), (Alpha(n - 1), 6), (Gamma(1), 6), (Alpha(n - 3), 1), (Gamma(3), 1)]
}

pub fn beta3_power_check(t: &FusionTable) -> Result<(), Violation> {
    let got = beta3_power(t);
    let expected: BTreeMap<Simple, BigInt> =
        beta3_power_expected(t.k()).into_iter().map(|(x, c)| (x, BigInt::from(c))).collect();
    if got == expected {
        return Ok(());
    }
    let label = expected.keys().chain(got.keys()).find(|x| expected.get(x) != got.get(x)).copied().unwrap();
    Err(Violation {
        check: "beta3 power",
        detail: alloc::format!(
            "coefficient of {label} in β₃(α₁ᾱ₁)³ is {} but should be {}",
            got.get(&label).cloned().unwrap_or_default(),
            expected.get(&label).cloned().unwrap_or_default()
        ),
    })
}

/// `⟨D, β₃(α₁ᾱ₁)³⟩ = 8c_{2k} + 12c_{2k+1} + 16c_{2k+2} = 4d_{2k+2}`.
pub fn g2g_consistency(k: usize) -> bool {
    let s = seq(k);
    let lhs = 8 * s.c(2 * k) + 12 * s.c(2 * k + 1) + 16 * s.c(2 * k + 2);
    lhs == 4 * s.d(2 * k as i64 + 2)
}

/// The parity facts behind the integrality of the `β₃, γ₃` products:
/// `f_{2k+2}` even and `f_{2k}` odd for even `k`, the reverse for odd `k`,
/// and `g_{2j}` even for `j ≤ k + 1`.
pub fn theorem_parities(k: usize) -> bool {
    let s = seq(k);
    let even = k % 2 == 0;
    s.f(2 * k + 2).is_even() == even
        && s.f(2 * k).is_odd() == even
        && (0..=k + 1).all(|j| s.g(2 * j).is_even())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::eigvec_basis;
    use crate::label::nn_objects;

    fn v(terms: &[(Simple, i64)]) -> EvenVector {
        terms.iter().fold(EvenVector::new(), |acc, &(x, c)| acc.with(x, int(c)))
    }

    #[test]
    fn abcd_k0() {
        use Simple::*;
        let m = abcd(0);
        assert_eq!(m.a, v(&[(Alpha(0), -2), (Beta(3), 1), (Gamma(3), 1)]));
        assert_eq!(m.d, v(&[(Alpha(0), 2), (Beta(3), 1), (Gamma(3), 1)]));
        assert_eq!(m.b, v(&[(Gamma(3), 1), (Beta(3), -1)]));
    }

    #[test]
    fn abcd_k1() {
        use Simple::*;
        let m = abcd(1);
        assert_eq!(m.b, v(&[(Beta(1), 1), (Gamma(1), -1)]));
        assert_eq!(m.c, v(&[(Beta(1), -1), (Gamma(1), 1)]));
    }

    #[test]
    fn a_is_minus_half_x1_plus_y1() {
        // independent route through the integer eigenvectors of 𝔻
        for k in 0..12 {
            let basis = eigvec_basis(k).unwrap();
            let mut expected = EvenVector::new();
            for (i, x) in nn_objects(k).into_iter().enumerate() {
                expected.add_term(x, BigRational::new(BigInt::from(-(basis.x1[i] + basis.y1[i])), BigInt::from(2)));
            }
            assert_eq!(abcd(k).a, expected, "k = {k}");
        }
    }

    #[test]
    fn explicit_products_match_abcd_combination() {
        for k in 0..30 {
            assert_eq!(b3g3_table(k).unwrap(), b3g3_from_abcd(k), "k = {k}");
        }
    }

    #[test]
    fn b3g3_small() {
        use Simple::*;
        let [bg, gb, bb, gg] = b3g3_table(0).unwrap();
        assert_eq!(bg, v(&[(Alpha(0), 1)]));
        assert_eq!(gb, bg);
        assert_eq!(bb, v(&[(Gamma(3), 1)]));
        assert_eq!(gg, v(&[(Beta(3), 1)]));
        let [bg1, ..] = b3g3_table(1).unwrap();
        assert_eq!(bg1.coefficient(Beta(1)), int(1));
    }

    #[test]
    fn fg_values() {
        let b = |a: [i64; 4]| a.map(BigInt::from);
        assert_eq!(fg_table(0), b([0, 1, 1, 2]));
        assert_eq!(fg_table(1), b([1, 2, 4, 7]));
        assert_eq!(fg_table(2), b([4, 7, 13, 24]));
    }

    #[test]
    fn fg_relations_hold_for_fg_table() {
        // <fg,f> = <f²,g> and <fg,g> = <g²,f> by reciprocity
        for k in 0..20 {
            let [fff, fgf, fgg, ggg] = fg_table(k);
            let value = |x: Simple, y: Simple, z: Simple| {
                use Simple::{F, G};
                match (x, y, z) {
                    (F, F, F) => fff.clone(),
                    (F, G, F) | (G, F, F) | (F, F, G) => fgf.clone(),
                    (F, G, G) | (G, F, G) | (G, G, F) => fgg.clone(),
                    _ => ggg.clone(),
                }
            };
            for rel in fg_relations(k) {
                let lhs: BigInt = rel.terms.iter().map(|&(c, x, y, z)| BigInt::from(c) * value(x, y, z)).sum();
                assert_eq!(lhs, rel.value, "k = {k}: {}", rel.name);
            }
        }
    }

    #[test]
    fn mixed_k0() {
        let m = mixed_table(0);
        assert_eq!(m[0], BigInt::from(0));
        assert_eq!(m[3], BigInt::from(0));
        assert_eq!(m[4], BigInt::from(1));
        for k in 0..40 {
            assert!(mixed_table(k).iter().all(|x| !x.is_negative()));
        }
    }

    fn pairing(v: &EvenVector, with: &[(Simple, i64)]) -> BigInt {
        let total: BigRational = with.iter().map(|(x, c)| v.coefficient(*x) * BigRational::from_integer(BigInt::from(*c))).sum();
        assert!(total.is_integer());
        total.to_integer()
    }

    #[test]
    fn mixed_rows_follow_from_b3g3() {
        use Simple::*;
        for k in 0..30 {
            let n = chain_len(k) as u32;
            let [_, gb, bb, _] = b3g3_table(k).unwrap();
            let m = mixed_table(k);
            let y = [(Beta(1), 1), (Gamma(1), 1), (Alpha(n - 1), 1)];
            assert_eq!(pairing(&bb, &y), m[0], "k={k}");
            let x = [(Alpha(n - 1), 1), (Beta(1), 2), (Gamma(1), 2), (Gamma(3), 1), (Beta(3), 1)];
            assert_eq!(pairing(&gb, &x), m[3], "k={k}");
            assert_eq!(pairing(&bb, &x), m[4], "k={k}");
        }
    }

    #[test]
    fn case2_witness() {
        let q = BigRational::new(BigInt::from(2), BigInt::from(4));
        assert_eq!(case2_obstruction(0).unwrap(), q);
        assert_eq!(case2_obstruction(1).unwrap(), q);
        for k in 0..=50 {
            assert!(case2_obstruction(k).is_ok());
        }
    }

    #[test]
    fn consistency_and_parity() {
        for k in 0..=100 {
            assert!(g2g_consistency(k), "k = {k}");
            assert!(theorem_parities(k), "k = {k}");
        }
    }

    #[test]
    fn halving_rejects_fractions() {
        let bad = v(&[(Simple::Beta(1), 1)]).scale(&BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(integer_coefficient(&bad, Simple::Beta(1)).is_err());
        assert_eq!(integer_coefficient(&bad, Simple::Beta(3)), Ok(BigInt::zero()));
    }
}
