//! Integer sequences `c, d, f, g` and the polynomial families `R, Q, S, q`.
//!
//! Everything here is exact. `R_m` is the second-kind Chebyshev polynomial in
//! the normalization `R_m(2 cos θ) = sin((m+1)θ) / sin θ`; `Q_j(t²) = R_{2j}(t)`;
//! `S_j` is the shifted family used to expand `R_m` acting on `β₃ + γ₃`;
//! `q_k` is the degree-`2k+2` factor of the characteristic polynomial of `GGᵗ`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::IntPoly;
use crate::{chain_len, Error, Result};

/// `c_0 = 1, c_1 = c_2 = 0, c_j = c_{j-1} + c_{j-2} + c_{j-3}`.
pub fn seq_c(j: usize) -> BigInt {
    tribonacci([BigInt::one(), BigInt::zero(), BigInt::zero()], j)
}

/// `d_{-1} = 0, d_0 = d_1 = 1, d_j = d_{j-1} + d_{j-2} + d_{j-3}`.
///
/// # Panics
/// If `j < -1`.
pub fn seq_d(j: i64) -> BigInt {
    assert!(j >= -1, "d_j is defined for j >= -1");
    tribonacci([BigInt::zero(), BigInt::one(), BigInt::one()], (j + 1) as usize)
}

fn tribonacci(init: [BigInt; 3], idx: usize) -> BigInt {
    let [mut a, mut b, mut c] = init;
    for _ in 0..idx {
        let next = &a + &b + &c;
        a = core::mem::replace(&mut b, core::mem::replace(&mut c, next));
    }
    a
}

/// `(f_j, g_j)`, the split of `c_j` by `j mod 4`.
pub fn seq_fg(j: usize) -> Result<(BigInt, BigInt)> {
    split_fg(j, &seq_c(j))
}

fn split_fg(j: usize, c: &BigInt) -> Result<(BigInt, BigInt)> {
    let one = BigInt::one();
    let (f2, g2) = match j % 4 {
        0 => (c + &one, c - &one),
        3 => (c - &one, c + &one),
        _ => (c.clone(), c.clone()),
    };
    let two = BigInt::from(2);
    let (f, fr) = f2.div_rem(&two);
    let (g, gr) = g2.div_rem(&two);
    if !fr.is_zero() || !gr.is_zero() || f.is_negative() || g.is_negative() {
        return Err(Error::Parity { j });
    }
    Ok((f, g))
}

/// Precomputed `c, d, f, g` for indices `0..len` (`d` also at `-1`).
#[derive(Clone, Debug)]
pub struct SeqTable {
    c: Vec<BigInt>,
    // d[i] holds d_{i-1}
    d: Vec<BigInt>,
    f: Vec<BigInt>,
    g: Vec<BigInt>,
}

impl SeqTable {
    pub fn new(len: usize) -> Result<Self> {
        let len = len.max(3);
        let mut c = vec![BigInt::one(), BigInt::zero(), BigInt::zero()];
        let mut d = vec![BigInt::zero(), BigInt::one(), BigInt::one()];
        for j in 3..len {
            c.push(&c[j - 1] + &c[j - 2] + &c[j - 3]);
        }
        for i in 3..=len {
            d.push(&d[i - 1] + &d[i - 2] + &d[i - 3]);
        }
        let (f, g) = c
            .iter()
            .enumerate()
            .map(|(j, cj)| split_fg(j, cj))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip();
        Ok(SeqTable { c, d, f, g })
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn c(&self, j: usize) -> &BigInt {
        &self.c[j]
    }

    pub fn d(&self, j: i64) -> &BigInt {
        &self.d[(j + 1) as usize]
    }

    pub fn f(&self, j: usize) -> &BigInt {
        &self.f[j]
    }

    pub fn g(&self, j: usize) -> &BigInt {
        &self.g[j]
    }
}

/// `R_0, …, R_max`.
pub fn cheb_family(max: usize) -> Vec<IntPoly> {
    let mut r = vec![IntPoly::one(), IntPoly::t()];
    let t = IntPoly::t();
    for m in 2..=max {
        let next = &(&t * &r[m - 1]) - &r[m - 2];
        r.push(next);
    }
    r.truncate(max + 1);
    r
}

/// `R_0 = 1, R_1 = t, R_m = t R_{m-1} - R_{m-2}`.
pub fn cheb_r(m: usize) -> IntPoly {
    cheb_family(m).swap_remove(m)
}

/// `Q_j` with `Q_j(t²) = R_{2j}(t)`.
pub fn poly_q(j: usize) -> Result<IntPoly> {
    let r = cheb_r(2 * j);
    let q = r.even_reduce().ok_or(Error::NotEven { m: 2 * j })?;
    debug_assert_eq!(q.in_square(), r);
    Ok(q)
}

/// `Q_0, …, Q_max`.
pub fn q_family(max: usize) -> Result<Vec<IntPoly>> {
    cheb_family(2 * max)
        .into_iter()
        .step_by(2)
        .enumerate()
        .map(|(j, r)| r.even_reduce().ok_or(Error::NotEven { m: 2 * j }))
        .collect()
}

/// `S_3 = R_3, S_4 = R_4 - R_2, S_j = t S_{j-1} - S_{j-2}`.
pub fn poly_s(j: usize) -> Result<IntPoly> {
    if j < 3 {
        return Err(Error::InvalidIndex { what: "S_j", index: j as i64 });
    }
    Ok(s_family(j).swap_remove(j - 3))
}

/// `S_3, …, S_max` (index `i` holds `S_{i+3}`).
fn s_family(max: usize) -> Vec<IntPoly> {
    let r = cheb_family(4);
    let mut s = vec![r[3].clone(), &r[4] - &r[2]];
    let t = IntPoly::t();
    for j in 5..=max {
        let next = &(&t * &s[j - 4]) - &s[j - 5];
        s.push(next);
    }
    s.truncate(max.saturating_sub(2));
    s
}

/// `q_0 = t² - 5t + 3`, `q_1 = (t - 1)(t³ - 8t² + 17t - 5)`,
/// `q_k = (t² - 4t + 2) q_{k-1} - q_{k-2}`.
pub fn poly_qk(k: usize) -> IntPoly {
    let q0 = IntPoly::from_i64(&[3, -5, 1]);
    let q1 = IntPoly::from_i64(&[-1, 1]) * IntPoly::from_i64(&[-5, 17, -8, 1]);
    if k == 0 {
        return q0;
    }
    let step = IntPoly::from_i64(&[2, -4, 1]);
    let (mut prev, mut cur) = (q0, q1);
    for _ in 2..=k {
        let next = &(&step * &cur) - &prev;
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// A member of the `S/R` basis used by [`sr_decompose`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SrTerm {
    S(usize),
    R(usize),
}

/// Coefficients of `R_m` in the basis `S_m, S_{m-2}, …` closed off by
/// `R_1` (odd `m`) or `R_2, R_0` (even `m`):
///
/// ```text
/// R_{2j-1} = d_0 S_{2j-1} + … + d_{j-2} S_3 + (d_{j-1} - d_{j-2}) R_1
/// R_{2j}   = d_0 S_{2j}   + … + d_{j-2} S_4 + d_{j-1} R_2 + d_{j-3} R_0
/// ```
///
/// The expansion is reconstructed and compared with `R_m` before returning.
pub fn sr_decompose(m: usize) -> Result<Vec<(SrTerm, BigInt)>> {
    if m < 4 {
        return Err(Error::InvalidIndex { what: "sr_decompose", index: m as i64 });
    }
    let j = (m as i64 + 1) / 2;
    let seq = SeqTable::new(j as usize + 2)?;
    let mut terms: Vec<(SrTerm, BigInt)> = (0..=j - 2)
        .map(|i| (SrTerm::S(m - 2 * i as usize), seq.d(i).clone()))
        .collect();
    if m % 2 == 1 {
        terms.push((SrTerm::R(1), seq.d(j - 1) - seq.d(j - 2)));
    } else {
        terms.push((SrTerm::R(2), seq.d(j - 1).clone()));
        terms.push((SrTerm::R(0), seq.d(j - 3).clone()));
    }

    let r = cheb_family(m);
    let s = s_family(m);
    let rebuilt = terms.iter().fold(IntPoly::zero(), |acc, (term, c)| {
        let p = match *term {
            SrTerm::S(i) => &s[i - 3],
            SrTerm::R(i) => &r[i],
        };
        &acc + &p.scale(c)
    });
    if rebuilt != r[m] {
        return Err(Error::SrMismatch { m });
    }
    Ok(terms)
}

/// `R_{n+4} - R_{n+2} - R_n - R_{n-2}` with `n = 4k + 3`.
pub fn key_identity_lhs(k: usize) -> IntPoly {
    let n = chain_len(k);
    let r = cheb_family(n + 4);
    &(&(&r[n + 4] - &r[n + 2]) - &r[n]) - &r[n - 2]
}

/// `t (t² - 2) q_k(t²)`.
pub fn key_identity_rhs(k: usize) -> IntPoly {
    IntPoly::from_i64(&[0, -2, 0, 1]) * poly_qk(k).in_square()
}

/// Whether `R_{n+4} - R_{n+2} - R_n - R_{n-2} = t (t² - 2) q_k(t²)` holds exactly.
pub fn key_identity(k: usize) -> bool {
    key_identity_lhs(k) == key_identity_rhs(k)
}

/// `r_k(t) = (2 - t) q_k(t)`.
pub fn poly_rk(k: usize) -> IntPoly {
    IntPoly::from_i64(&[2, -1]) * poly_qk(k)
}

/// `s_k(t) = (-1)^{k+1} t q_k(t)`.
pub fn poly_sk(k: usize) -> IntPoly {
    let sign = if k % 2 == 0 { -1 } else { 1 };
    IntPoly::from_i64(&[0, sign]) * poly_qk(k)
}

/// `2Q_0 - 2Q_1 + … + 2Q_{2k} - 2Q_{2k+1} + Q_{2k+1} + 2Q_{2k+2} - Q_{2k+3}`.
pub fn remark_rhs_r(k: usize) -> Result<IntPoly> {
    let q = q_family(2 * k + 3)?;
    let two = BigInt::from(2);
    let mut acc = IntPoly::zero();
    for (j, qj) in q.iter().enumerate().take(2 * k + 2) {
        let term = qj.scale(&two);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc = &acc + &q[2 * k + 1];
    acc = &acc + &q[2 * k + 2].scale(&two);
    Ok(&acc - &q[2 * k + 3])
}

/// `Σ_{i=0}^{k} (-1)^i 2(Q_{2i} + Q_{2i+1}) + (-1)^{k+1} (Q_{2k+3} - Q_{2k+1})`.
pub fn remark_rhs_s(k: usize) -> Result<IntPoly> {
    let q = q_family(2 * k + 3)?;
    let two = BigInt::from(2);
    let mut acc = IntPoly::zero();
    for i in 0..=k {
        let term = (&q[2 * i] + &q[2 * i + 1]).scale(&two);
        acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    let tail = &q[2 * k + 3] - &q[2 * k + 1];
    Ok(if k % 2 == 0 { &acc - &tail } else { &acc + &tail })
}

/// `(r_k = remark_rhs_r(k), s_k = remark_rhs_s(k))` as exact polynomial equalities.
pub fn remark_identities(k: usize) -> Result<(bool, bool)> {
    Ok((poly_rk(k) == remark_rhs_r(k)?, poly_sk(k) == remark_rhs_s(k)?))
}
