//! Simple objects, their bi-grades, and the frozen basis order.
//!
//! The order of every vertex and basis list in the crate follows the row
//! and column order of the adjacency matrix `G` of `Γ_k`: the two legs first
//! (`β₃, β₁, γ₃, γ₁` / `β₂, γ₂`), then the chain from the branch point down
//! to the identity. `Γ′_k` uses the same pattern (`f, g, α′_{n-1}, …, α′₀`
//! and `β̄₂, γ̄₂, ᾱ_n, …, ᾱ₁`). Tables list the four grades as
//! `NN, NM, MN, MM`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::chain_len;

/// One of the two coefficient algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    N,
    M,
}

/// Bi-grade `(left, right)` of a bimodule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade {
    pub source: Side,
    pub target: Side,
}

impl Grade {
    pub const NN: Grade = Grade::new(Side::N, Side::N);
    pub const NM: Grade = Grade::new(Side::N, Side::M);
    pub const MN: Grade = Grade::new(Side::M, Side::N);
    pub const MM: Grade = Grade::new(Side::M, Side::M);
    pub const ALL: [Grade; 4] = [Grade::NN, Grade::NM, Grade::MN, Grade::MM];

    pub const fn new(source: Side, target: Side) -> Self {
        Grade { source, target }
    }

    pub fn reversed(self) -> Grade {
        Grade::new(self.target, self.source)
    }

    /// Grade of `XY` for `X` of grade `self`, `Y` of grade `rhs`, if defined.
    pub fn compose(self, rhs: Grade) -> Option<Grade> {
        (self.target == rhs.source).then(|| Grade::new(self.source, rhs.target))
    }

    pub fn as_str(self) -> &'static str {
        match (self.source, self.target) {
            (Side::N, Side::N) => "NN",
            (Side::N, Side::M) => "NM",
            (Side::M, Side::N) => "MN",
            (Side::M, Side::M) => "MM",
        }
    }

    /// Position in [`Grade::ALL`].
    pub fn index(self) -> usize {
        match (self.source, self.target) {
            (Side::N, Side::N) => 0,
            (Side::N, Side::M) => 1,
            (Side::M, Side::N) => 2,
            (Side::M, Side::M) => 3,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Grade {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Grade::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| ParseLabelError(s.into()))
    }
}

/// A simple object of the fusion ring, i.e. a vertex of `Γ_k` or `Γ′_k`.
///
/// `Alpha(j)` is `α_j` (grade `NN` for even `j`, `NM` for odd `j`);
/// `AlphaBar(j)` is `ᾱ_j` for odd `j`; `AlphaPrime(j)` is `α′_j` for even `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Simple {
    Alpha(u32),
    AlphaBar(u32),
    AlphaPrime(u32),
    Beta(u8),
    Gamma(u8),
    BetaBar2,
    GammaBar2,
    F,
    G,
}

impl Simple {
    pub fn grade(self) -> Grade {
        match self {
            Simple::Alpha(j) if j % 2 == 0 => Grade::NN,
            Simple::Alpha(_) => Grade::NM,
            Simple::Beta(2) | Simple::Gamma(2) => Grade::NM,
            Simple::Beta(_) | Simple::Gamma(_) => Grade::NN,
            Simple::AlphaBar(_) | Simple::BetaBar2 | Simple::GammaBar2 => Grade::MN,
            Simple::AlphaPrime(_) | Simple::F | Simple::G => Grade::MM,
        }
    }

    /// The conjugate object `X̄`.
    ///
    /// Everything in `NN` and `MM` is self-conjugate except `β₃ ↔ γ₃`.
    pub fn conj(self) -> Simple {
        match self {
            Simple::Alpha(j) if j % 2 == 1 => Simple::AlphaBar(j),
            Simple::AlphaBar(j) => Simple::Alpha(j),
            Simple::Beta(2) => Simple::BetaBar2,
            Simple::Gamma(2) => Simple::GammaBar2,
            Simple::BetaBar2 => Simple::Beta(2),
            Simple::GammaBar2 => Simple::Gamma(2),
            Simple::Beta(3) => Simple::Gamma(3),
            Simple::Gamma(3) => Simple::Beta(3),
            other => other,
        }
    }

    /// The unit of the given diagonal grade.
    pub fn unit(side: Side) -> Simple {
        match side {
            Side::N => Simple::Alpha(0),
            Side::M => Simple::AlphaPrime(0),
        }
    }

    pub fn is_unit(self) -> bool {
        matches!(self, Simple::Alpha(0) | Simple::AlphaPrime(0))
    }

    /// Typeset name (`α₀`, `β̄₂`, `α′₆`, …) for DOT and pretty output.
    pub fn symbol(self) -> String {
        let mut s = String::new();
        match self {
            Simple::Alpha(j) => push_indexed(&mut s, "α", j),
            Simple::AlphaBar(j) => push_indexed(&mut s, "ᾱ", j),
            Simple::AlphaPrime(j) => push_indexed(&mut s, "α′", j),
            Simple::Beta(j) => push_indexed(&mut s, "β", j.into()),
            Simple::Gamma(j) => push_indexed(&mut s, "γ", j.into()),
            Simple::BetaBar2 => s.push_str("β̄₂"),
            Simple::GammaBar2 => s.push_str("γ̄₂"),
            Simple::F => s.push('f'),
            Simple::G => s.push('g'),
        }
        s
    }
}

fn push_indexed(s: &mut String, stem: &str, j: u32) {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    s.push_str(stem);
    let mut buf = [0u8; 10];
    let mut len = 0;
    let mut v = j;
    loop {
        buf[len] = (v % 10) as u8;
        len += 1;
        v /= 10;
        if v == 0 {
            break;
        }
    }
    for &d in buf[..len].iter().rev() {
        s.push(DIGITS[d as usize]);
    }
}

/// ASCII identifier used in JSON, CSV and on the command line.
impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simple::Alpha(j) => write!(f, "alpha{j}"),
            Simple::AlphaBar(j) => write!(f, "alphabar{j}"),
            Simple::AlphaPrime(j) => write!(f, "alphap{j}"),
            Simple::Beta(j) => write!(f, "beta{j}"),
            Simple::Gamma(j) => write!(f, "gamma{j}"),
            Simple::BetaBar2 => f.write_str("betabar2"),
            Simple::GammaBar2 => f.write_str("gammabar2"),
            Simple::F => f.write_str("f"),
            Simple::G => f.write_str("g"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown label `{0}`")]
pub struct ParseLabelError(pub String);

impl FromStr for Simple {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseLabelError(s.into());
        let index = |rest: &str| -> Result<u32, ParseLabelError> {
            if rest.is_empty() || (rest.len() > 1 && rest.starts_with('0')) {
                return Err(err());
            }
            rest.parse().map_err(|_| err())
        };
        let label = match s {
            "betabar2" => Simple::BetaBar2,
            "gammabar2" => Simple::GammaBar2,
            "f" => Simple::F,
            "g" => Simple::G,
            _ => {
                if let Some(rest) = s.strip_prefix("alphabar") {
                    let j = index(rest)?;
                    if j % 2 == 0 {
                        return Err(err());
                    }
                    Simple::AlphaBar(j)
                } else if let Some(rest) = s.strip_prefix("alphap") {
                    let j = index(rest)?;
                    if j % 2 == 1 {
                        return Err(err());
                    }
                    Simple::AlphaPrime(j)
                } else if let Some(rest) = s.strip_prefix("alpha") {
                    Simple::Alpha(index(rest)?)
                } else if let Some(rest) = s.strip_prefix("beta") {
                    match index(rest)? {
                        j @ 1..=3 => Simple::Beta(j as u8),
                        _ => return Err(err()),
                    }
                } else if let Some(rest) = s.strip_prefix("gamma") {
                    match index(rest)? {
                        j @ 1..=3 => Simple::Gamma(j as u8),
                        _ => return Err(err()),
                    }
                } else {
                    return Err(err());
                }
            }
        };
        Ok(label)
    }
}

/// `N𝒳_N`: even vertices of `Γ_k`, `β₃, β₁, γ₃, γ₁, α_{n-1}, …, α₂, α₀`.
pub fn nn_objects(k: usize) -> Vec<Simple> {
    let n = chain_len(k) as u32;
    let mut v = alloc::vec![Simple::Beta(3), Simple::Beta(1), Simple::Gamma(3), Simple::Gamma(1)];
    v.extend((0..n).rev().step_by(2).map(Simple::Alpha));
    v
}

/// `N𝒳_M`: odd vertices of `Γ_k`, `β₂, γ₂, α_n, α_{n-2}, …, α₁`.
pub fn nm_objects(k: usize) -> Vec<Simple> {
    let n = chain_len(k) as u32;
    let mut v = alloc::vec![Simple::Beta(2), Simple::Gamma(2)];
    v.extend((1..=n).rev().step_by(2).map(Simple::Alpha));
    v
}

/// `M𝒳_N`: odd vertices of `Γ′_k`, `β̄₂, γ̄₂, ᾱ_n, …, ᾱ₁`.
pub fn mn_objects(k: usize) -> Vec<Simple> {
    let n = chain_len(k) as u32;
    let mut v = alloc::vec![Simple::BetaBar2, Simple::GammaBar2];
    v.extend((1..=n).rev().step_by(2).map(Simple::AlphaBar));
    v
}

/// `M𝒳_M`: even vertices of `Γ′_k`, `f, g, α′_{n-1}, …, α′₀`.
pub fn mm_objects(k: usize) -> Vec<Simple> {
    let n = chain_len(k) as u32;
    let mut v = alloc::vec![Simple::F, Simple::G];
    v.extend((0..n).rev().step_by(2).map(Simple::AlphaPrime));
    v
}

pub fn objects_of_grade(k: usize, grade: Grade) -> Vec<Simple> {
    match grade.index() {
        0 => nn_objects(k),
        1 => nm_objects(k),
        2 => mn_objects(k),
        _ => mm_objects(k),
    }
}

/// The full basis, grade by grade; `8k + 18` objects.
pub fn all_objects(k: usize) -> Vec<Simple> {
    Grade::ALL.into_iter().flat_map(|g| objects_of_grade(k, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn basis_sizes() {
        for k in 0..6 {
            assert_eq!(nn_objects(k).len(), 2 * k + 6);
            assert_eq!(nm_objects(k).len(), 2 * k + 4);
            assert_eq!(mn_objects(k).len(), 2 * k + 4);
            assert_eq!(mm_objects(k).len(), 2 * k + 4);
            assert_eq!(all_objects(k).len(), 8 * k + 18);
        }
    }

    #[test]
    fn frozen_order_k0() {
        use Simple::*;
        assert_eq!(
            nn_objects(0),
            [Beta(3), Beta(1), Gamma(3), Gamma(1), Alpha(2), Alpha(0)]
        );
        assert_eq!(nm_objects(0), [Beta(2), Gamma(2), Alpha(3), Alpha(1)]);
        assert_eq!(mm_objects(0), [F, G, AlphaPrime(2), AlphaPrime(0)]);
    }

    #[test]
    fn conjugation_is_grade_reversing_involution() {
        for k in 0..4 {
            for x in all_objects(k) {
                assert_eq!(x.conj().conj(), x);
                assert_eq!(x.conj().grade(), x.grade().reversed());
            }
        }
        assert_eq!(Simple::Beta(3).conj(), Simple::Gamma(3));
        assert_eq!(Simple::Beta(1).conj(), Simple::Beta(1));
        assert_eq!(Simple::G.conj(), Simple::G);
    }

    #[test]
    fn labels_round_trip() {
        for x in all_objects(3) {
            assert_eq!(x.to_string().parse::<Simple>(), Ok(x));
        }
        for bad in ["alpha", "alphabar2", "alphap3", "beta4", "gamma0", "alpha01", "h"] {
            assert!(bad.parse::<Simple>().is_err(), "{bad}");
        }
    }

    #[test]
    fn symbols() {
        assert_eq!(Simple::Alpha(14).symbol(), "α₁₄");
        assert_eq!(Simple::AlphaPrime(0).symbol(), "α′₀");
        assert_eq!(Simple::GammaBar2.symbol(), "γ̄₂");
    }

    #[test]
    fn grade_composition() {
        assert_eq!(Grade::NM.compose(Grade::MN), Some(Grade::NN));
        assert_eq!(Grade::NM.compose(Grade::NM), None);
        assert_eq!("MN".parse::<Grade>(), Ok(Grade::MN));
    }
}
