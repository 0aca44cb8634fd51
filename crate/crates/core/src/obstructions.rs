//! Herzog-Kühl type obstructions for graded free complexes with
//! finite-length homology.
//!
//! A complex is given by the generator degrees of each term, injective end
//! first. Terms alternate between an A side (odd positions) and a B side
//! (even positions). For each prefix of `q` pairs the B-side product
//! `∏(1 + w t)` must be divisible by the A-side product `∏(1 + v t)` up to
//! `t^{m−1}`, after absorbing the first `r_q` coefficients into a quotient.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::moduli::alternating_ranks;
use crate::symmetric::{
    elementary_symmetric, newton_e_to_p, power_sums, series_quotient_remainder, WeightVector,
};
use crate::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("complex needs at least one variable")]
    NoVariables,
    #[error("complex needs at least 2 terms, got {0}")]
    TooFewTerms(usize),
    #[error("infeasible ranks: alternating sum t_{position} = {value}")]
    InfeasibleRanks { position: usize, value: i64 },
    #[error("prefix length {q} outside 1..={pairs}")]
    PrefixOutOfRange { q: usize, pairs: usize },
}

/// Generator degrees of each term of a complex of graded free modules over
/// a polynomial ring in `variables` variables. Degree `d` stands for `S(−d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexDegreeData {
    variables: usize,
    terms: Vec<Vec<i64>>,
}

impl ComplexDegreeData {
    pub fn new(variables: usize, terms: Vec<Vec<i64>>) -> Result<Self, ObstructionError> {
        if variables == 0 {
            return Err(ObstructionError::NoVariables);
        }
        if terms.len() < 2 {
            return Err(ObstructionError::TooFewTerms(terms.len()));
        }
        Ok(Self { variables, terms })
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn terms(&self) -> &[Vec<i64>] {
        &self.terms
    }

    /// Same degrees, different variable count.
    pub fn with_variables(&self, variables: usize) -> Result<Self, ObstructionError> {
        Self::new(variables, self.terms.clone())
    }

    pub fn shifted(&self, by: i64) -> Self {
        Self {
            variables: self.variables,
            terms: self
                .terms
                .iter()
                .map(|t| t.iter().map(|d| d + by).collect())
                .collect(),
        }
    }

    pub fn scaled(&self, by: i64) -> Self {
        Self {
            variables: self.variables,
            terms: self
                .terms
                .iter()
                .map(|t| t.iter().map(|d| d * by).collect())
                .collect(),
        }
    }

    fn padded_terms(&self) -> Vec<&[i64]> {
        let mut terms: Vec<&[i64]> = self.terms.iter().map(Vec::as_slice).collect();
        if terms.len() % 2 == 1 {
            terms.push(&[]);
        }
        terms
    }

    /// Number of (A, B) pairs after padding odd length.
    pub fn pairs(&self) -> usize {
        self.terms.len().div_ceil(2)
    }

    /// All A-side degrees of the first `q` pairs.
    pub fn a_side(&self, q: usize) -> WeightVector {
        let terms = self.padded_terms();
        (0..q).flat_map(|p| terms[2 * p].iter().copied()).collect()
    }

    /// All B-side degrees of the first `q` pairs.
    pub fn b_side(&self, q: usize) -> WeightVector {
        let terms = self.padded_terms();
        (0..q).flat_map(|p| terms[2 * p + 1].iter().copied()).collect()
    }
}

impl fmt::Display for ComplexDegreeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} [", self.variables)?;
        for (idx, t) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", WeightVector::from(t.as_slice()))?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Forward,
    Reversed,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Forward => "forward",
            Orientation::Reversed => "reversed",
        })
    }
}

/// `r_q = Σ_{i≤q} (b_i − a_i)` for every pair, after checking that every
/// alternating partial sum is nonnegative and the last one is zero.
pub fn derive_complex_ranks(data: &ComplexDegreeData) -> Result<Vec<usize>, ObstructionError> {
    let terms = data.padded_terms();
    let t = alternating_ranks(terms.iter().map(|t| t.len()));
    if let Some((position, &value)) = t.iter().enumerate().find(|(_, &v)| v < 0) {
        return Err(ObstructionError::InfeasibleRanks { position, value });
    }
    let last = *t.last().expect("nonempty");
    if last != 0 {
        return Err(ObstructionError::InfeasibleRanks {
            position: t.len() - 1,
            value: last,
        });
    }
    Ok((1..=data.pairs()).map(|q| t[2 * q] as usize).collect())
}

pub fn reverse_data(data: &ComplexDegreeData) -> ComplexDegreeData {
    let mut terms = data.terms.clone();
    terms.reverse();
    ComplexDegreeData {
        variables: data.variables,
        terms,
    }
}

fn oriented(data: &ComplexDegreeData, orientation: Orientation) -> ComplexDegreeData {
    match orientation {
        Orientation::Forward => data.clone(),
        Orientation::Reversed => reverse_data(data),
    }
}

/// `σ_i(w) ≠ Σ_j σ_j(v) u_{i−j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCheck {
    pub q: usize,
    pub orientation: Orientation,
    pub rank: usize,
    pub v: WeightVector,
    pub w: WeightVector,
    /// `u_0 = 1, u_1, …, u_{r_q}`.
    pub u: Vec<BigInt>,
    /// Inclusive index window `r_q + 1 ..= m − 1`; empty when `first > last`.
    pub checked: (usize, usize),
    pub violations: Vec<Violation>,
}

impl PrefixCheck {
    pub fn verdict(&self) -> Verdict {
        Verdict::from_ok(self.violations.is_empty())
    }

    pub fn is_vacuous(&self) -> bool {
        self.checked.0 > self.checked.1
    }
}

/// Core prefix test on explicit weights: divides `∏(1 + w t)` by
/// `∏(1 + v t)`, keeps `u_0..u_r` and reports every nonzero residual in
/// `r + 1 ..= m − 1`.
pub fn check_prefix_weights(
    v: &WeightVector,
    w: &WeightVector,
    rank: usize,
    variables: usize,
) -> (Vec<BigInt>, (usize, usize), Vec<Violation>) {
    let last = variables.saturating_sub(1);
    let first = rank + 1;
    let truncation = last.max(rank);
    let division =
        series_quotient_remainder(w, v, rank, truncation).expect("truncation is at least the split degree");
    let sigma_w = elementary_symmetric(w, truncation);
    let violations = (first..=last)
        .filter_map(|i| {
            let residual = division.residual(i);
            (!residual.is_zero()).then(|| Violation {
                i,
                rhs: &sigma_w[i] - &residual,
                lhs: sigma_w[i].clone(),
            })
        })
        .collect();
    (division.s.values().to_vec(), (first, last), violations)
}

pub fn check_prefix(
    data: &ComplexDegreeData,
    q: usize,
    orientation: Orientation,
) -> Result<PrefixCheck, ObstructionError> {
    let data = oriented(data, orientation);
    let ranks = derive_complex_ranks(&data)?;
    if q == 0 || q > ranks.len() {
        return Err(ObstructionError::PrefixOutOfRange {
            q,
            pairs: ranks.len(),
        });
    }
    let rank = ranks[q - 1];
    let v = data.a_side(q);
    let w = data.b_side(q);
    let (u, checked, violations) = check_prefix_weights(&v, &w, rank, data.variables);
    Ok(PrefixCheck {
        q,
        orientation,
        rank,
        v,
        w,
        u,
        checked,
        violations,
    })
}

/// Power sums of B-side vs A-side degrees, `Σ w^i = Σ v^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCheck {
    pub i: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl ClassicalCheck {
    pub fn ok(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn power_sums_from_zero(v: &WeightVector, up_to: usize) -> Vec<BigInt> {
    let mut sums = vec![BigInt::from(v.len())];
    if up_to > 0 {
        sums.extend(power_sums(v, up_to));
    }
    sums
}

/// Classical equations for `0 ≤ i ≤ m − 1` over the whole complex.
pub fn check_classical(data: &ComplexDegreeData) -> Result<Vec<ClassicalCheck>, ObstructionError> {
    derive_complex_ranks(data)?;
    let pairs = data.pairs();
    let last = data.variables - 1;
    let b = power_sums_from_zero(&data.b_side(pairs), last);
    let a = power_sums_from_zero(&data.a_side(pairs), last);
    Ok(b.into_iter()
        .zip(a)
        .enumerate()
        .map(|(i, (lhs, rhs))| ClassicalCheck { i, lhs, rhs })
        .collect())
}

/// Independent route for a prefix check: treat `u_1..u_r` as elementary
/// symmetric functions of `r` virtual roots and compare power sums
/// `p_i(w) = p_i(v) + p_i(virtual)` for `r + 1 ≤ i ≤ m − 1`.
pub fn power_sum_crosscheck(
    data: &ComplexDegreeData,
    q: usize,
    orientation: Orientation,
) -> Result<Verdict, ObstructionError> {
    let check = check_prefix(data, q, orientation)?;
    let (first, last) = check.checked;
    if first > last {
        return Ok(Verdict::Pass);
    }
    Ok(Verdict::from_ok(power_sums_balance(
        &check.v, &check.w, &check.u, first, last,
    )))
}

/// `p_i(w) = p_i(v) + p_i(roots of u)` for all `first ≤ i ≤ last`.
pub fn power_sums_balance(
    v: &WeightVector,
    w: &WeightVector,
    u: &[BigInt],
    first: usize,
    last: usize,
) -> bool {
    let e: Vec<BigRational> = u.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let virtual_sums = newton_e_to_p(&e, last);
    let pw = power_sums(w, last);
    let pv = power_sums(v, last);
    (first..=last).all(|i| {
        let lhs = BigRational::from_integer(pw[i - 1].clone());
        let rhs = BigRational::from_integer(pv[i - 1].clone()) + &virtual_sums[i - 1];
        lhs == rhs
    })
}

/// Which orientations [`full_report_with`] should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrientationSelection {
    #[default]
    Both,
    Forward,
    Reversed,
}

impl OrientationSelection {
    pub fn orientations(self) -> &'static [Orientation] {
        match self {
            OrientationSelection::Both => &[Orientation::Forward, Orientation::Reversed],
            OrientationSelection::Forward => &[Orientation::Forward],
            OrientationSelection::Reversed => &[Orientation::Reversed],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub data: ComplexDegreeData,
    pub ranks: Vec<usize>,
    pub prefixes: Vec<PrefixCheck>,
    pub classical: Vec<ClassicalCheck>,
    /// Set when the dimensions admit no exact sequence.
    pub infeasible: Option<ObstructionError>,
    pub verdict: Verdict,
}

pub fn full_report(data: &ComplexDegreeData) -> ObstructionReport {
    full_report_with(data, OrientationSelection::Both)
}

pub fn full_report_with(data: &ComplexDegreeData, selection: OrientationSelection) -> ObstructionReport {
    let ranks = match derive_complex_ranks(data) {
        Ok(ranks) => ranks,
        Err(err) => {
            return ObstructionReport {
                data: data.clone(),
                ranks: Vec::new(),
                prefixes: Vec::new(),
                classical: Vec::new(),
                infeasible: Some(err),
                verdict: Verdict::Fail,
            }
        }
    };
    let classical = check_classical(data).expect("ranks already validated");
    let prefixes: Vec<PrefixCheck> = selection
        .orientations()
        .iter()
        .flat_map(|&o| {
            (1..=data.pairs()).map(move |q| check_prefix(data, q, o).expect("ranks already validated"))
        })
        .collect();
    let ok = classical.iter().all(ClassicalCheck::ok) && prefixes.iter().all(|p| p.violations.is_empty());
    ObstructionReport {
        data: data.clone(),
        ranks,
        prefixes,
        classical,
        infeasible: None,
        verdict: Verdict::from_ok(ok),
    }
}
