//! Per-`k` work items behind the `verify`, `crosscheck` and `identities`
//! commands.

use std::fmt;
use std::str::FromStr;

use fusionk_core::closed_form::{case2_obstruction, g2g_consistency, theorem_parities};
use fusionk_core::fusion::{self, pf_dimensions, CrosscheckReport};
use fusionk_core::graphs::{char_poly_check, lagrange_deviation, spectral};
use fusionk_core::model::{self, model_from_spectral, Model};
use fusionk_core::polynomials::{key_identity, remark_identities, seq_c};
use fusionk_core::{closed_form, tolerance, FusionTable};

/// Tolerances the command line may override.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub rounding: f64,
    pub orthonormality: f64,
    pub dimension: f64,
    pub identity: f64,
    pub spectral: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rounding: tolerance::ROUNDING,
            orthonormality: tolerance::ORTHONORMALITY,
            dimension: tolerance::DIMENSION,
            identity: tolerance::MODEL_IDENTITY,
            spectral: tolerance::SPECTRAL_CROSS_CHECK,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 5] = ["rounding", "orthonormality", "dimension", "identity", "spectral"];

    /// Applies `name=value`.
    pub fn set(&mut self, spec: &str) -> Result<(), String> {
        let (name, value) = spec.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got {spec:?}"))?;
        let value: f64 = value.trim().parse().map_err(|_| format!("{value:?} is not a number"))?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(format!("tolerance {name} must be positive and finite"));
        }
        let slot = match name.trim() {
            "rounding" => &mut self.rounding,
            "orthonormality" => &mut self.orthonormality,
            "dimension" => &mut self.dimension,
            "identity" => &mut self.identity,
            "spectral" => &mut self.spectral,
            other => return Err(format!("unknown tolerance {other:?} (known: {})", Self::NAMES.join(", "))),
        };
        *slot = value;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    CharPoly,
    Spectral,
    Orthonormality,
    Integrality,
    Frobenius,
    Associativity,
    Identity,
    Graph,
    Dimension,
    Xi,
    Lemma33,
    Polynomials,
    Beta3Power,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::CharPoly,
        Check::Spectral,
        Check::Orthonormality,
        Check::Integrality,
        Check::Frobenius,
        Check::Associativity,
        Check::Identity,
        Check::Graph,
        Check::Dimension,
        Check::Xi,
        Check::Lemma33,
        Check::Polynomials,
        Check::Beta3Power,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::CharPoly => "charpoly",
            Check::Spectral => "spectral",
            Check::Orthonormality => "orthonormality",
            Check::Integrality => "integrality",
            Check::Frobenius => "frobenius",
            Check::Associativity => "associativity",
            Check::Identity => "identity",
            Check::Graph => "graph",
            Check::Dimension => "dimension",
            Check::Xi => "xi",
            Check::Lemma33 => "lemma33",
            Check::Polynomials => "polynomials",
            Check::Beta3Power => "beta3-power",
        }
    }

    /// Needs the matrix model, so it does not apply to a table read from a file.
    pub fn needs_model(self) -> bool {
        matches!(self, Check::Spectral | Check::Orthonormality | Check::Integrality | Check::Xi | Check::Lemma33)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let known: Vec<_> = Check::ALL.iter().map(|c| c.name()).collect();
            format!("unknown check {s:?} (known: {})", known.join(", "))
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Pass(String),
    Fail(String),
    Skipped(&'static str),
}

impl Status {
    pub fn failed(&self) -> bool {
        matches!(self, Status::Fail(_))
    }

    fn from_result<T, E: fmt::Display>(r: Result<T, E>, ok: impl FnOnce(T) -> String) -> Status {
        match r {
            Ok(v) => Status::Pass(ok(v)),
            Err(e) => Status::Fail(e.to_string()),
        }
    }
}

/// Where the table under test comes from.
pub enum Source {
    Model(usize),
    File(FusionTable),
}

impl Source {
    pub fn k(&self) -> usize {
        match self {
            Source::Model(k) => *k,
            Source::File(t) => t.k(),
        }
    }
}

/// A model-built table with the worst rounding residual.
pub struct Built {
    pub model: Model,
    pub table: FusionTable,
    pub residual: f64,
}

/// Builds the model for `k` and extracts its table.
pub fn build(k: usize, tol: &Tolerances) -> Result<Built, String> {
    let data = spectral(k).map_err(|e| e.to_string())?;
    let model = model_from_spectral(data);
    let (table, residual) = model::extract(&model, tol.rounding).map_err(|e| e.to_string())?;
    Ok(Built { model, table, residual })
}

pub struct VerifyReport {
    pub k: usize,
    pub results: Vec<(Check, Status)>,
}

impl VerifyReport {
    pub fn failed(&self) -> bool {
        self.results.iter().any(|(_, s)| s.failed())
    }
}

pub fn verify(source: Source, checks: &[Check], tol: &Tolerances) -> VerifyReport {
    let k = source.k();
    let wants = |c: Check| checks.contains(&c);
    let mut results = Vec::new();

    let built = match source {
        Source::Model(_) if checks.iter().any(|c| !matches!(c, Check::CharPoly | Check::Polynomials)) => {
            Some(build(k, tol))
        }
        _ => None,
    };
    let (model, table): (Option<&Model>, Option<&FusionTable>) = match (&built, &source) {
        (Some(Ok(b)), _) => (Some(&b.model), Some(&b.table)),
        (_, Source::File(t)) => (None, Some(t)),
        _ => (None, None),
    };
    let build_error = match &built {
        Some(Err(e)) => Some(e.clone()),
        _ => None,
    };

    for &check in &Check::ALL {
        if !wants(check) {
            continue;
        }
        let status = match check {
            Check::CharPoly => {
                if char_poly_check(k) {
                    Status::Pass("exact".into())
                } else {
                    Status::Fail(format!("det(tI − 𝔻) ≠ t²(t−2)²q_{k}(t)"))
                }
            }
            Check::Polynomials => polynomial_status(k),
            _ if matches!(source, Source::File(_)) && check.needs_model() => Status::Skipped("table read from file"),
            _ if build_error.is_some() && (check.needs_model() || table.is_none()) => {
                Status::Fail(build_error.clone().unwrap())
            }
            Check::Spectral => {
                let m = model.unwrap();
                match lagrange_deviation(&m.spectral) {
                    Ok(dev) if dev <= tol.spectral => {
                        Status::Pass(format!("Σμ = {:.3e} off 1, Lagrange gap {dev:.1e}", (m.spectral.weights.iter().sum::<f64>() - 1.0).abs()))
                    }
                    Ok(dev) => Status::Fail(format!("Lagrange projections differ from Jacobi by {dev:e}")),
                    Err(e) => Status::Fail(e.to_string()),
                }
            }
            Check::Orthonormality => {
                Status::from_result(model::orthonormality_check(model.unwrap(), tol.orthonormality), |d| format!("{d:.1e}"))
            }
            Check::Integrality => Status::Pass(format!("residual {:.1e}", built.as_ref().unwrap().as_ref().unwrap().residual)),
            Check::Frobenius => Status::from_result(fusion::verify_frobenius(table.unwrap()), |_| "exact".into()),
            Check::Associativity => Status::from_result(fusion::verify_associativity(table.unwrap()), |_| "exact".into()),
            Check::Identity => {
                Status::from_result(fusion::verify_identity_conjugation(table.unwrap()), |_| "exact".into())
            }
            Check::Graph => Status::from_result(fusion::verify_graph_recovery(table.unwrap()), |_| "exact".into()),
            Check::Dimension => match pf_dimensions(k) {
                Ok(dims) => Status::from_result(fusion::verify_dimension(table.unwrap(), &dims, tol.dimension), |r| {
                    format!("{r:.1e}")
                }),
                Err(e) => Status::Fail(e.to_string()),
            },
            Check::Xi => Status::from_result(model::xi_identities(model.unwrap(), tol.identity), |r| format!("{r:.1e}")),
            Check::Lemma33 => {
                Status::from_result(model::lemma33_checks(model.unwrap(), tol.identity), |r| format!("{r:.1e}"))
            }
            Check::Beta3Power => Status::from_result(closed_form::beta3_power_check(table.unwrap()), |_| "exact".into()),
        };
        results.push((check, status));
    }
    VerifyReport { k, results }
}

fn polynomial_status(k: usize) -> Status {
    if !key_identity(k) {
        return Status::Fail(format!("key identity fails for k = {k}"));
    }
    match remark_identities(k) {
        Ok((true, true)) => Status::Pass("exact".into()),
        Ok((r, s)) => Status::Fail(format!("closed forms of r_k / s_k: {r} / {s}")),
        Err(e) => Status::Fail(e.to_string()),
    }
}

/// Model-vs-closed-form comparison for one `k`.
pub fn crosscheck(source: Source, tol: &Tolerances) -> Result<CrosscheckReport, String> {
    let table = match source {
        Source::Model(k) => build(k, tol)?.table,
        Source::File(t) => t,
    };
    fusion::crosscheck(&table).map_err(|e| e.to_string())
}

/// Integer identities that depend on `k` alone.
pub fn identities(k: usize) -> Vec<(&'static str, Status)> {
    let case2 = match case2_obstruction(k) {
        Ok(w) => Status::Pass(format!("witness {w}")),
        Err(e) => Status::Fail(e.to_string()),
    };
    let c = seq_c(2 * k);
    let residue = ((&c % 4u32) + 4u32) % 4u32;
    let expected = if k % 2 == 0 { 1u32 } else { 0u32 };
    let star = if residue == expected.into() {
        Status::Pass(format!("c_{} ≡ {expected} (mod 4)", 2 * k))
    } else {
        Status::Fail(format!("c_{} ≡ {residue} (mod 4)", 2 * k))
    };
    let flag = |ok: bool, what: &str| if ok { Status::Pass("exact".into()) } else { Status::Fail(what.into()) };
    vec![
        ("key-identity", flag(key_identity(k), "key identity")),
        ("remark", match remark_identities(k) {
            Ok((true, true)) => Status::Pass("exact".into()),
            Ok(r) => Status::Fail(format!("{r:?}")),
            Err(e) => Status::Fail(e.to_string()),
        }),
        ("case2", case2),
        ("c-mod-4", star),
        ("parities", flag(theorem_parities(k), "parity of f_{2k}, f_{2k+2}, g_{2j}")),
        ("g2g", flag(g2g_consistency(k), "8c_{2k} + 12c_{2k+1} + 16c_{2k+2} ≠ 4d_{2k+2}")),
    ]
}
