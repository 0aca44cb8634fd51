//! Graded vector spaces as weight vectors, and the circle actions on
//! matrices between them.
//!
//! A matrix entry is a monomial `c·z^e` in a formal unit-circle parameter
//! `z`. Scalars are rational, so conjugation only acts through `z ↦ z^{-1}`.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg::RationalMatrix;
use crate::symmetric::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("matrix has {got} entries, expected {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("matrix is {rows}x{cols} but weights give {target}x{domain}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        target: usize,
        domain: usize,
    },
    #[error("cannot specialize at z = 0")]
    ZeroSpecialization,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: BigRational,
    pub exponent: i64,
}

impl Monomial {
    pub fn new(coefficient: BigRational, exponent: i64) -> Self {
        Self {
            coefficient,
            exponent,
        }
    }

    fn shifted(&self, by: i64) -> Self {
        Self::new(self.coefficient.clone(), self.exponent + by)
    }

    pub fn evaluate(&self, z: &BigRational) -> BigRational {
        if self.coefficient.is_zero() {
            return BigRational::zero();
        }
        &self.coefficient * pow(z, self.exponent)
    }
}

fn pow(z: &BigRational, exponent: i64) -> BigRational {
    let base = if exponent < 0 { z.recip() } else { z.clone() };
    num_traits::pow(base, exponent.unsigned_abs() as usize)
}

/// Matrix of monomials `c·z^e`; zero coefficients are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Monomial>,
}

impl MonomialMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Monomial>) -> Result<Self, GradedError> {
        if entries.len() != rows * cols {
            return Err(GradedError::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> Monomial) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(entry(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Monomial {
        &self.entries[r * self.cols + c]
    }

    /// Substitutes a nonzero rational for `z`.
    pub fn specialize(&self, z: &BigRational) -> Result<RationalMatrix, GradedError> {
        if z.is_zero() {
            return Err(GradedError::ZeroSpecialization);
        }
        Ok(RationalMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).evaluate(z)
        }))
    }
}

/// A map between graded spaces, written in graded bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedHom {
    source: WeightVector,
    target: WeightVector,
    matrix: MonomialMatrix,
}

impl GradedHom {
    pub fn new(
        source: WeightVector,
        target: WeightVector,
        matrix: MonomialMatrix,
    ) -> Result<Self, GradedError> {
        if matrix.rows != target.len() || matrix.cols != source.len() {
            return Err(GradedError::DimensionMismatch {
                rows: matrix.rows,
                cols: matrix.cols,
                target: target.len(),
                domain: source.len(),
            });
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &WeightVector {
        &self.source
    }

    pub fn target(&self) -> &WeightVector {
        &self.target
    }

    pub fn matrix(&self) -> &MonomialMatrix {
        &self.matrix
    }

    fn map_entries(&self, mut shift: impl FnMut(usize, usize) -> i64) -> GradedHom {
        let matrix = MonomialMatrix::from_fn(self.matrix.rows, self.matrix.cols, |r, c| {
            self.matrix.get(r, c).shifted(shift(r, c))
        });
        GradedHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix,
        }
    }
}

/// `diag(z^{w_i}) · A`.
pub fn apply_left_action(h: &GradedHom) -> GradedHom {
    let w = h.target.entries();
    h.map_entries(|r, _| w[r])
}

/// `diag(z^{w_i}) · A · diag(z^{-v_j})`.
pub fn apply_left_right_action(h: &GradedHom) -> GradedHom {
    let w = h.target.entries();
    let v = h.source.entries();
    h.map_entries(|r, c| w[r] - v[c])
}

/// Hermitian conjugate dual `A ↦ A'`: transpose, negate every exponent, and
/// swap source and target weights (dual spaces keep their grading).
pub fn conjugate_dual(h: &GradedHom) -> GradedHom {
    let a = &h.matrix;
    let matrix = MonomialMatrix::from_fn(a.cols, a.rows, |r, c| {
        let entry = a.get(c, r);
        Monomial::new(entry.coefficient.clone(), -entry.exponent)
    });
    GradedHom {
        source: h.target.clone(),
        target: h.source.clone(),
        matrix,
    }
}
