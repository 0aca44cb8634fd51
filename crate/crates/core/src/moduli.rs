//! Spaces of long exact sequences with fixed graded terms.
//!
//! An [`ExactShape`] records the weight vector of every term. Its exactness
//! ranks `t_i` are forced by the dimensions, and its cohomology is the
//! exterior algebra on the κ generators listed by [`kappa_generators`].

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::exterior::{AlgebraMap, ExtElement, Label};
use crate::symmetric::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("an exact sequence needs at least 2 terms, got {0}")]
    TooFewTerms(usize),
    #[error("no exact sequence has these dimensions: t_{index} = {value}")]
    InvalidShape { index: usize, value: i64 },
    #[error("prefix length {q} outside 1..={pairs}")]
    PrefixOutOfRange { q: usize, pairs: usize },
    #[error("folding needs at least 3 terms, got {0}")]
    CannotFold(usize),
    #[error("Stiefel restriction needs m + m' <= n (n = {n}, m = {m}, m' = {m_prime})")]
    RestrictionTooLarge { n: u32, m: u32, m_prime: u32 },
}

/// Alternating partial sums `t_0 = 0, t_i = c_i − t_{i−1}` of a dimension list.
pub fn alternating_ranks(dims: impl IntoIterator<Item = usize>) -> Vec<i64> {
    let mut ranks = vec![0i64];
    for c in dims {
        let prev = *ranks.last().expect("nonempty");
        ranks.push(c as i64 - prev);
    }
    ranks
}

/// The graded data of a long exact sequence `T_1 → T_2 → … → T_L`.
///
/// Odd-length input gets a trailing zero-dimensional term so that terms
/// always come in (A, B) pairs. Equality ignores trailing empty terms.
#[derive(Debug, Clone, Eq)]
pub struct ExactShape {
    terms: Vec<WeightVector>,
    ranks: Vec<usize>,
}

impl PartialEq for ExactShape {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed_terms() == other.trimmed_terms()
    }
}

impl ExactShape {
    fn trimmed_terms(&self) -> &[WeightVector] {
        let keep = self
            .terms
            .iter()
            .rposition(|t| !t.is_empty())
            .map_or(0, |idx| idx + 1);
        &self.terms[..keep]
    }

    /// Number of terms `L` after padding (always even).
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[WeightVector] {
        &self.terms
    }

    /// Weights of term `i` (1-based).
    pub fn term(&self, i: usize) -> &WeightVector {
        &self.terms[i - 1]
    }

    /// `c_i`, 1-based; zero past the end.
    pub fn dim(&self, i: usize) -> usize {
        self.terms.get(i.wrapping_sub(1)).map_or(0, WeightVector::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(WeightVector::len).collect()
    }

    /// `t_i` for `0 ≤ i ≤ L`; zero past the end.
    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// `[t_0, t_1, …, t_L]`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn pairs(&self) -> usize {
        self.terms.len() / 2
    }

    /// `|N| = Σ t_i`.
    pub fn generator_count(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Rank of `Λ(N)` as a free module, `2^|N|`.
    pub fn cohomology_rank(&self) -> BigUint {
        BigUint::one() << self.generator_count()
    }

    pub fn shifted(&self, by: i64) -> ExactShape {
        ExactShape {
            terms: self.terms.iter().map(|t| t.shifted(by)).collect(),
            ranks: self.ranks.clone(),
        }
    }
}

impl fmt::Display for ExactShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X(")?;
        for (idx, t) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

pub fn derive_ranks(mut terms: Vec<WeightVector>) -> Result<ExactShape, ShapeError> {
    if terms.len() < 2 {
        return Err(ShapeError::TooFewTerms(terms.len()));
    }
    if terms.len() % 2 == 1 {
        terms.push(WeightVector::default());
    }
    let ranks = alternating_ranks(terms.iter().map(WeightVector::len));
    if let Some((index, &value)) = ranks.iter().enumerate().find(|(_, &t)| t < 0) {
        return Err(ShapeError::InvalidShape { index, value });
    }
    let last = *ranks.last().expect("nonempty");
    if last != 0 {
        return Err(ShapeError::InvalidShape {
            index: ranks.len() - 1,
            value: last,
        });
    }
    Ok(ExactShape {
        terms,
        ranks: ranks.into_iter().map(|t| t as usize).collect(),
    })
}

/// One κ generator: term `i`, column `j`, supported on terms `i..=end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KappaGenerator {
    pub i: usize,
    pub j: usize,
    pub end: usize,
}

impl KappaGenerator {
    pub fn degree(&self) -> usize {
        2 * self.j - 1
    }

    pub fn support(&self) -> std::ops::RangeInclusive<usize> {
        self.i..=self.end
    }

    pub fn label(&self) -> Label {
        kappa(self.i, self.j)
    }
}

fn kappa(i: usize, j: usize) -> Label {
    Label::Kappa {
        i: i as u32,
        j: j as u32,
    }
}

/// Every `(i, j)` with `t_{i−1} < j ≤ c_i`, supported up to the least
/// `ℓ ≥ i` with `t_ℓ < j`. Ordered by `i`, then `j`.
pub fn kappa_generators(shape: &ExactShape) -> Vec<KappaGenerator> {
    let mut out = Vec::with_capacity(shape.generator_count());
    for i in 1..=shape.len() {
        for j in shape.rank(i - 1) + 1..=shape.dim(i) {
            let end = (i..=shape.len())
                .find(|&l| shape.rank(l) < j)
                .expect("t_L = 0 < j");
            out.push(KappaGenerator { i, j, end });
        }
    }
    out
}

pub fn kappa_labels(shape: &ExactShape) -> Vec<Label> {
    kappa_generators(shape)
        .iter()
        .map(KappaGenerator::label)
        .collect()
}

/// Sign pattern used when writing κ in terms of γ generators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SignConvention {
    /// Alternating `(−1)^{k−1}` along the support.
    EquationNu,
    /// All coefficients `+1`.
    #[default]
    AllPositive,
}

pub fn expand_kappa(k: &KappaGenerator, convention: SignConvention) -> ExtElement {
    k.support().fold(ExtElement::zero(), |acc, term| {
        let gamma = ExtElement::generator(Label::Gamma {
            i: term as u32,
            j: k.j as u32,
        });
        let negative = convention == SignConvention::EquationNu && term % 2 == 0;
        if negative {
            &acc - &gamma
        } else {
            &acc + &gamma
        }
    })
}

/// Result of one folding step: the shorter shape and the pullback `ψ*`
/// from its cohomology into the cohomology of the original shape.
#[derive(Debug, Clone)]
pub struct Fold {
    pub shape: ExactShape,
    pub pullback: AlgebraMap,
}

/// Dualizes the first term and merges it into the third:
/// `(T_1, T_2, T_3, T_4, …) ↦ (T_2, T_1 ⊕ T_3, T_4, …)`.
pub fn fold_once(shape: &ExactShape) -> Result<Fold, ShapeError> {
    if shape.len() < 3 {
        return Err(ShapeError::CannotFold(shape.len()));
    }
    let t = shape.terms();
    let mut terms = vec![t[1].clone(), t[0].concat(&t[2])];
    terms.extend_from_slice(&t[3..]);
    let folded = derive_ranks(terms).expect("folding preserves exactness");

    let old: std::collections::BTreeSet<Label> = kappa_labels(shape).into_iter().collect();
    let present = |i: usize, j: usize| {
        let label = kappa(i, j);
        if old.contains(&label) {
            ExtElement::generator(label)
        } else {
            ExtElement::zero()
        }
    };
    let images = kappa_generators(&folded).into_iter().map(|k| {
        let image = if k.i == 1 {
            (1..=3).fold(ExtElement::zero(), |acc, i| &acc + &present(i, k.j))
        } else {
            present(k.i + 1, k.j)
        };
        (k.label(), image)
    });
    let pullback = AlgebraMap::new(images, true).expect("κ images keep column degree");
    Ok(Fold {
        shape: folded,
        pullback,
    })
}

/// Collapses the first `q` (A, B) pairs into one pair by concatenation.
pub fn prefix_merge(shape: &ExactShape, q: usize) -> Result<ExactShape, ShapeError> {
    let pairs = shape.pairs();
    if q == 0 || q > pairs {
        return Err(ShapeError::PrefixOutOfRange { q, pairs });
    }
    let t = shape.terms();
    let a: WeightVector = (0..q).flat_map(|p| t[2 * p].iter()).collect();
    let b: WeightVector = (0..q).flat_map(|p| t[2 * p + 1].iter()).collect();
    let mut terms = vec![a, b];
    terms.extend_from_slice(&t[2 * q..]);
    derive_ranks(terms)
}

/// Data of the projection onto the Stiefel manifold `W(c_2, c_1)` that
/// remembers only the first map of the sequence.
#[derive(Debug, Clone)]
pub struct StiefelComparison {
    pub n: usize,
    pub m: usize,
    pub u: WeightVector,
    pub v: WeightVector,
    /// `α_j ↦ κ_{2,j}` for `n − m + 1 ≤ j ≤ n`.
    pub map: AlgebraMap,
}

pub fn stiefel_comparison(shape: &ExactShape) -> StiefelComparison {
    let n = shape.dim(2);
    let m = shape.dim(1);
    let present: std::collections::BTreeSet<Label> = kappa_labels(shape).into_iter().collect();
    let images = (n - m + 1..=n).map(|j| {
        let target = kappa(2, j);
        let image = if present.contains(&target) {
            ExtElement::generator(target)
        } else {
            ExtElement::zero()
        };
        (Label::Alpha(j as u32), image)
    });
    StiefelComparison {
        n,
        m,
        u: shape.term(2).clone(),
        v: shape.term(1).clone(),
        map: AlgebraMap::new(images, true).expect("α_j and κ_{2,j} share degree"),
    }
}

/// Inclusion `Λ(α_{n−m+1}..α_n) → Λ(α_{n−m−m'+1}..α_n)`, identity on names.
pub fn stiefel_restriction(n: u32, m: u32, m_prime: u32) -> Result<AlgebraMap, ShapeError> {
    if m + m_prime > n {
        return Err(ShapeError::RestrictionTooLarge { n, m, m_prime });
    }
    let images = (n - m + 1..=n).map(|k| (Label::Alpha(k), ExtElement::generator(Label::Alpha(k))));
    Ok(AlgebraMap::new(images, false).expect("identity on names"))
}
