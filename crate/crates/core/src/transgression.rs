//! Transgressions in the Serre spectral sequences of `ES¹ ×_{S¹} Y → BS¹`
//! for `Y = Gl(n)` (left and left-right actions) and `Y = W(n, m)`.
//!
//! Each table lists `d_{2k}(α_k) = C·θ^k`, together with the earlier
//! coefficients that generate its indeterminacy.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::symmetric::{elementary_symmetric, recursive_s_series, residual_coefficient, WeightVector};
use crate::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransgressionError {
    #[error("weight vector {name} has length {got}, expected {expected}")]
    DimensionMismatch {
        name: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("Stiefel manifold W({n}, {m}) needs 1 <= m <= n")]
    InvalidStiefel { n: usize, m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordStatus {
    /// Holds exactly, modulo the listed indeterminacy.
    Exact,
    /// The first nonzero transgression of a Stiefel table.
    FirstNonzeroOnly,
    /// Past the first nonzero Stiefel transgression; not proven.
    Conjectural,
}

impl fmt::Display for RecordStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecordStatus::Exact => "exact",
            RecordStatus::FirstNonzeroOnly => "first-nonzero",
            RecordStatus::Conjectural => "conjectural",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialRecord {
    pub generator: usize,
    pub coefficient: BigInt,
    pub modulo: Vec<BigInt>,
    pub status: RecordStatus,
}

impl DifferentialRecord {
    pub fn page(&self) -> usize {
        2 * self.generator
    }

    pub fn theta_power(&self) -> usize {
        self.generator
    }

    /// `C = 0` with trivial indeterminacy.
    pub fn provably_vanishes(&self) -> bool {
        self.coefficient.is_zero() && self.modulo.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for DifferentialRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.generator;
        write!(f, "d_{}(a{k}) = {}*theta^{k}", self.page(), self.coefficient)?;
        let modulo: Vec<String> = self
            .modulo
            .iter()
            .filter(|c| !c.is_zero())
            .map(ToString::to_string)
            .collect();
        if !modulo.is_empty() {
            write!(f, " mod ({})", modulo.join(", "))?;
        }
        if self.status != RecordStatus::Exact {
            write!(f, " [{}]", self.status)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    GlLeft,
    GlLeftRight,
    Stiefel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransgressionTable {
    pub kind: SpaceKind,
    pub u: WeightVector,
    pub v: WeightVector,
    pub records: Vec<DifferentialRecord>,
}

impl TransgressionTable {
    /// First record with nonzero coefficient, ignoring conjectural records.
    pub fn first_nonzero(&self) -> Option<(usize, BigInt)> {
        self.records
            .iter()
            .filter(|r| r.status != RecordStatus::Conjectural)
            .find(|r| !r.coefficient.is_zero())
            .map(|r| (r.generator, r.coefficient.clone()))
    }
}

fn check_len(name: &'static str, w: &WeightVector, expected: usize) -> Result<(), TransgressionError> {
    if w.len() != expected {
        return Err(TransgressionError::DimensionMismatch {
            name,
            expected,
            got: w.len(),
        });
    }
    Ok(())
}

fn exact_table(
    kind: SpaceKind,
    u: WeightVector,
    v: WeightVector,
    coefficients: Vec<BigInt>,
) -> TransgressionTable {
    let records = (1..coefficients.len())
        .map(|k| DifferentialRecord {
            generator: k,
            coefficient: coefficients[k].clone(),
            modulo: coefficients[1..k].to_vec(),
            status: RecordStatus::Exact,
        })
        .collect();
    TransgressionTable { kind, u, v, records }
}

/// Left action by `diag(z^{w_i})`: `d_{2k}(α_k) = σ_k(w)·θ^k mod (σ_1, …, σ_{k−1})`.
pub fn gl_left_differentials(n: usize, w: &WeightVector) -> Result<TransgressionTable, TransgressionError> {
    check_len("w", w, n)?;
    let sigma = elementary_symmetric(w, n);
    Ok(exact_table(
        SpaceKind::GlLeft,
        w.clone(),
        WeightVector::zeros(n),
        sigma,
    ))
}

/// Left-right action: `d_{2k}(α_k) = [σ_k(u) − σ_k(v)]·θ^k`.
pub fn gl_leftright_differentials(
    n: usize,
    u: &WeightVector,
    v: &WeightVector,
) -> Result<TransgressionTable, TransgressionError> {
    check_len("u", u, n)?;
    check_len("v", v, n)?;
    let su = elementary_symmetric(u, n);
    let sv = elementary_symmetric(v, n);
    let diff = su.iter().zip(&sv).map(|(a, b)| a - b).collect();
    Ok(exact_table(SpaceKind::GlLeftRight, u.clone(), v.clone(), diff))
}

/// Coefficients `C_k` for `n − m + 1 ≤ k ≤ n`, via recursive substitution
/// for `s_1..s_{n−m}`.
fn stiefel_coefficients(
    n: usize,
    m: usize,
    u: &WeightVector,
    v: &WeightVector,
) -> Result<Vec<(usize, BigInt)>, TransgressionError> {
    if m == 0 || m > n {
        return Err(TransgressionError::InvalidStiefel { n, m });
    }
    check_len("u", u, n)?;
    check_len("v", v, m)?;
    let split = n - m;
    let s = recursive_s_series(u, v, split);
    let su = elementary_symmetric(u, n);
    let sv = elementary_symmetric(v, n);
    Ok((split + 1..=n)
        .map(|k| (k, residual_coefficient(&su, &sv, &s, k)))
        .collect())
}

/// First nonzero transgression `(k, C)` on `W(n, m)` with left weights `u`
/// and right weights `v`, or `None` if every `C_k` vanishes.
pub fn stiefel_first_differential(
    n: usize,
    m: usize,
    u: &WeightVector,
    v: &WeightVector,
) -> Result<Option<(usize, BigInt)>, TransgressionError> {
    Ok(stiefel_coefficients(n, m, u, v)?
        .into_iter()
        .find(|(_, c)| !c.is_zero()))
}

/// Full table for `W(n, m)`. Records after the first nonzero one are
/// marked conjectural.
pub fn stiefel_differentials(
    n: usize,
    m: usize,
    u: &WeightVector,
    v: &WeightVector,
) -> Result<TransgressionTable, TransgressionError> {
    let coefficients = stiefel_coefficients(n, m, u, v)?;
    let mut seen_nonzero = false;
    let mut records = Vec::with_capacity(coefficients.len());
    for (idx, (k, c)) in coefficients.iter().enumerate() {
        let status = if seen_nonzero {
            RecordStatus::Conjectural
        } else if c.is_zero() {
            RecordStatus::Exact
        } else {
            seen_nonzero = true;
            RecordStatus::FirstNonzeroOnly
        };
        records.push(DifferentialRecord {
            generator: *k,
            coefficient: c.clone(),
            modulo: coefficients[..idx].iter().map(|(_, c)| c.clone()).collect(),
            status,
        });
    }
    Ok(TransgressionTable {
        kind: SpaceKind::Stiefel,
        u: u.clone(),
        v: v.clone(),
        records,
    })
}

/// An equivariant map from `C^m ∖ 0` forces `θ^j` to survive for `j < m`,
/// so the first nonzero transgression must sit at `k ≥ m`.
pub fn obstruction_survival(m: usize, first_nonzero: Option<(usize, &BigInt)>) -> Verdict {
    assert!(m >= 1, "need at least one variable");
    match first_nonzero {
        Some((k, _)) if k < m => Verdict::Fail,
        _ => Verdict::Pass,
    }
}
