//! Exterior algebras over `Z` on named odd-degree generators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("generator {0} has no image and the map has no zero default")]
    UndefinedGenerator(Label),
    #[error("image of {label} is not homogeneous of degree {expected}")]
    DegreeMismatch { label: Label, expected: u32 },
}

/// Generator names. `Alpha*` families carry cohomological degree `2i − 1`
/// for index `i`; `Gamma` and `Kappa` carry `2j − 1` for column `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Alpha(u32),
    AlphaPrime(u32),
    AlphaDoublePrime(u32),
    Gamma { i: u32, j: u32 },
    Kappa { i: u32, j: u32 },
}

impl Label {
    pub fn degree(&self) -> u32 {
        match *self {
            Label::Alpha(k) | Label::AlphaPrime(k) | Label::AlphaDoublePrime(k) => 2 * k - 1,
            Label::Gamma { j, .. } | Label::Kappa { j, .. } => 2 * j - 1,
        }
    }

    // (family, primary, secondary); γ/κ sort by column first.
    fn sort_key(&self) -> (u8, u32, u32) {
        match *self {
            Label::Alpha(k) => (0, k, 0),
            Label::AlphaPrime(k) => (1, k, 0),
            Label::AlphaDoublePrime(k) => (2, k, 0),
            Label::Gamma { i, j } => (3, j, i),
            Label::Kappa { i, j } => (4, j, i),
        }
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Alpha(k) => write!(f, "a{k}"),
            Label::AlphaPrime(k) => write!(f, "a'{k}"),
            Label::AlphaDoublePrime(k) => write!(f, "a''{k}"),
            Label::Gamma { i, j } => write!(f, "g{i},{j}"),
            Label::Kappa { i, j } => write!(f, "k{i},{j}"),
        }
    }
}

/// Sorts `labels` into canonical order, returning the sign of the sorting
/// permutation, or `None` if a generator repeats.
fn canonicalize(labels: &mut [Label]) -> Option<bool> {
    let mut negative = false;
    for idx in 1..labels.len() {
        let mut pos = idx;
        while pos > 0 && labels[pos - 1] > labels[pos] {
            labels.swap(pos - 1, pos);
            negative = !negative;
            pos -= 1;
        }
    }
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(negative)
}

/// An element of an exterior algebra: integer combination of sorted monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtElement {
    terms: BTreeMap<Vec<Label>, BigInt>,
}

impl ExtElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new(), BigInt::one())
    }

    pub fn generator(label: Label) -> Self {
        Self::monomial(vec![label], BigInt::one())
    }

    /// `coefficient · l_1 ∧ l_2 ∧ …` in the given (not necessarily sorted) order.
    pub fn monomial(mut labels: Vec<Label>, coefficient: BigInt) -> Self {
        let mut out = Self::zero();
        if let Some(negative) = canonicalize(&mut labels) {
            out.add_term(labels, if negative { -coefficient } else { coefficient });
        }
        out
    }

    fn add_term(&mut self, key: Vec<Label>, coefficient: BigInt) {
        use std::collections::btree_map::Entry;
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Label], &BigInt)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial `labels`, which need not be sorted.
    pub fn coefficient(&self, labels: &[Label]) -> BigInt {
        let mut key = labels.to_vec();
        match canonicalize(&mut key) {
            Some(negative) => {
                let c = self.terms.get(&key).cloned().unwrap_or_else(BigInt::zero);
                if negative {
                    -c
                } else {
                    c
                }
            }
            None => BigInt::zero(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * factor);
        }
        out
    }

    /// `Some(d)` when every term has total degree `d`; zero is homogeneous of
    /// every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self
            .terms
            .keys()
            .map(|k| k.iter().map(Label::degree).sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }
}

impl Add for &ExtElement {
    type Output = ExtElement;

    fn add(self, rhs: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ExtElement {
    type Output = ExtElement;

    fn sub(self, rhs: &ExtElement) -> ExtElement {
        self + &(-rhs)
    }
}

impl Neg for &ExtElement {
    type Output = ExtElement;

    fn neg(self) -> ExtElement {
        self.scale(&-BigInt::one())
    }
}

impl Mul for &ExtElement {
    type Output = ExtElement;

    fn mul(self, rhs: &ExtElement) -> ExtElement {
        wedge_product(self, rhs)
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (labels, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if labels.is_empty() {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            for (pos, l) in labels.iter().enumerate() {
                if pos > 0 {
                    write!(f, "^")?;
                }
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

pub fn wedge_product(a: &ExtElement, b: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero();
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            let mut labels = ka.clone();
            labels.extend_from_slice(kb);
            if let Some(negative) = canonicalize(&mut labels) {
                let c = ca * cb;
                out.add_term(labels, if negative { -c } else { c });
            }
        }
    }
    out
}

/// Ring map defined on generators and extended multiplicatively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    images: BTreeMap<Label, ExtElement>,
    zero_default: bool,
}

impl AlgebraMap {
    /// Every image must be zero or homogeneous of its generator's degree.
    pub fn new(
        images: impl IntoIterator<Item = (Label, ExtElement)>,
        zero_default: bool,
    ) -> Result<Self, ExteriorError> {
        let images: BTreeMap<_, _> = images.into_iter().collect();
        for (label, image) in &images {
            if image.is_zero() {
                continue;
            }
            if image.homogeneous_degree() != Some(label.degree()) {
                return Err(ExteriorError::DegreeMismatch {
                    label: *label,
                    expected: label.degree(),
                });
            }
        }
        Ok(Self { images, zero_default })
    }

    pub fn zero_default(&self) -> bool {
        self.zero_default
    }

    pub fn image(&self, label: &Label) -> Result<ExtElement, ExteriorError> {
        match self.images.get(label) {
            Some(image) => Ok(image.clone()),
            None if self.zero_default => Ok(ExtElement::zero()),
            None => Err(ExteriorError::UndefinedGenerator(*label)),
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = (&Label, &ExtElement)> {
        self.images.iter()
    }

    /// Composite `self ∘ inner` (apply `inner` first).
    pub fn after(&self, inner: &AlgebraMap) -> Result<AlgebraMap, ExteriorError> {
        let images = inner
            .images
            .iter()
            .map(|(l, x)| extend_algebra_map(self, x).map(|y| (*l, y)))
            .collect::<Result<Vec<_>, _>>()?;
        AlgebraMap::new(images, inner.zero_default)
    }
}

pub fn extend_algebra_map(m: &AlgebraMap, x: &ExtElement) -> Result<ExtElement, ExteriorError> {
    let mut out = ExtElement::zero();
    for (labels, c) in &x.terms {
        let mut product = ExtElement::one();
        for label in labels {
            product = wedge_product(&product, &m.image(label)?);
            if product.is_zero() {
                break;
            }
        }
        out = &out + &product.scale(c);
    }
    Ok(out)
}

/// Homology map of matrix direct sum `Gl(n) × Gl(m) → Gl(n+m)` on the
/// tensor-product algebra `Λ(ᾰ_1..ᾰ_n) ⊗ Λ(ᾰ'_1..ᾰ'_m)`: `ᾰ_i ↦ ᾰ''_i`,
/// `ᾰ'_j ↦ ᾰ''_j`, so `ᾰ_i ⊗ ᾰ'_j ↦ ᾰ''_i ᾰ''_j`.
pub fn direct_sum_homology_map(n: u32, m: u32) -> AlgebraMap {
    assert!(n >= 1 && m >= 1, "direct sum needs two nonempty factors");
    let left = (1..=n).map(|i| (Label::Alpha(i), ExtElement::generator(Label::AlphaDoublePrime(i))));
    let right = (1..=m).map(|j| {
        (
            Label::AlphaPrime(j),
            ExtElement::generator(Label::AlphaDoublePrime(j)),
        )
    });
    AlgebraMap::new(left.chain(right), false).expect("generator images keep their degree")
}

/// Map induced by inversion (equivalently conjugate transpose): `ᾰ_i ↦ −ᾰ_i`.
pub fn inversion_involution(n: u32) -> AlgebraMap {
    let images = (1..=n).map(|i| (Label::Alpha(i), -&ExtElement::generator(Label::Alpha(i))));
    AlgebraMap::new(images, false).expect("negation keeps degree")
}

/// All `2^k` monomials of the exterior algebra on `labels`.
pub fn exterior_basis(labels: &[Label]) -> Vec<ExtElement> {
    assert!(labels.len() < 32, "basis enumeration limited to 31 generators");
    (0u32..(1 << labels.len()))
        .map(|mask| {
            let chosen = labels
                .iter()
                .enumerate()
                .filter(|(idx, _)| mask & (1 << idx) != 0)
                .map(|(_, l)| *l)
                .collect();
            ExtElement::monomial(chosen, BigInt::one())
        })
        .collect()
}
