//! Brute-force ground truth: concrete graded complexes over `Q[x_1..x_m]`.
//!
//! Complexes are checked for homogeneity and `d² = 0`, then evaluated at
//! rational points where exactness reduces to exact rank computations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::RationalMatrix;
use crate::obstructions::ComplexDegreeData;

/// Seed used for point sampling unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("matrix {index} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MatrixShape {
        index: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("expected {expected} matrices for {terms} terms, got {got}")]
    MatrixCount {
        terms: usize,
        expected: usize,
        got: usize,
    },
    #[error("polynomial uses {got} variables, complex has {expected}")]
    VariableCount { expected: usize, got: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("Koszul complexes are built for 1 <= m <= 8, got {0}")]
    KoszulSize(usize),
}

/// Sparse polynomial in `x_1..x_n` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    variables: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(variables: usize) -> Self {
        Self {
            variables,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(variables: usize, c: BigRational) -> Self {
        let mut p = Self::zero(variables);
        p.add_term(vec![0; variables], c);
        p
    }

    /// `x_{index+1}` (0-based index).
    pub fn variable(variables: usize, index: usize) -> Self {
        let mut exponents = vec![0; variables];
        exponents[index] = 1;
        let mut p = Self::zero(variables);
        p.add_term(exponents, BigRational::one());
        p
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: BigRational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            variables: self.variables,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.variables.max(other.variables));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exponents, ca * cb);
            }
        }
        out
    }

    /// Total degrees of the terms, ascending and without repeats.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum())
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, degree: i64) -> bool {
        self.degrees().iter().all(|&d| d == degree)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += term;
        }
        total
    }

    /// Parses `-x1^2*x3 + 4x2`: signed integer coefficients, variables
    /// `x1..x<n>`, optional `*`, positive `^` powers. Whitespace is ignored.
    pub fn parse(input: &str, variables: usize) -> Result<MultiPoly, OracleError> {
        PolyParser::new(input, variables).parse()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, then lexicographically larger exponents first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().sum();
            let db: u32 = eb.iter().sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{k}", v + 1)
                    }
                })
                .collect();
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write!(f, "{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

struct PolyParser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    variables: usize,
    input: &'a str,
}

impl<'a> PolyParser<'a> {
    fn new(input: &'a str, variables: usize) -> Self {
        let chars = input
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(idx, c)| (input[..idx].chars().count() + 1, c))
            .collect();
        Self {
            chars,
            pos: 0,
            variables,
            input,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.input.chars().count() + 1, |&(col, _)| col)
    }

    fn error(&self, message: impl Into<String>) -> OracleError {
        OracleError::Parse {
            column: self.column(),
            message: message.into(),
        }
    }

    fn error_at(column: usize, message: impl Into<String>) -> OracleError {
        OracleError::Parse {
            column,
            message: message.into(),
        }
    }

    fn number(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Some(digits.parse().expect("ascii digits"))
    }

    fn parse(mut self) -> Result<MultiPoly, OracleError> {
        let mut poly = MultiPoly::zero(self.variables);
        if self.chars.is_empty() {
            return Err(self.error("empty polynomial"));
        }
        let mut first = true;
        while self.pos < self.chars.len() {
            let mut negative = false;
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    negative = true;
                    self.pos += 1;
                }
                _ if first => {}
                _ => return Err(self.error("expected '+' or '-'")),
            }
            first = false;
            // signed coefficient after a separator, as in `x1 + -3`
            match self.peek() {
                Some('-') => {
                    negative = !negative;
                    self.pos += 1;
                }
                Some('+') => self.pos += 1,
                _ => {}
            }
            let (exponents, c) = self.term()?;
            poly.add_term(
                exponents,
                BigRational::from_integer(if negative { -c } else { c }),
            );
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Vec<u32>, BigInt), OracleError> {
        let mut exponents = vec![0u32; self.variables];
        let coefficient = self.number();
        let mut have_factor = coefficient.is_some();
        let coefficient = coefficient.unwrap_or_else(BigInt::one);
        loop {
            match self.peek() {
                Some('*') if have_factor => {
                    self.pos += 1;
                    if self.peek() != Some('x') {
                        return Err(self.error("expected a variable after '*'"));
                    }
                }
                Some('x') => {}
                _ if have_factor => break,
                _ => return Err(self.error("expected a coefficient or variable")),
            }
            self.pos += 1; // 'x'
            let index_column = self.column();
            let index = self
                .number()
                .ok_or_else(|| self.error("expected a variable index after 'x'"))?;
            let index: usize = index
                .try_into()
                .ok()
                .filter(|&i: &usize| (1..=self.variables).contains(&i))
                .ok_or_else(|| {
                    Self::error_at(
                        index_column,
                        format!("variable index outside x1..x{}", self.variables),
                    )
                })?;
            let mut power = 1u32;
            if self.peek() == Some('^') {
                self.pos += 1;
                let power_column = self.column();
                let p = self
                    .number()
                    .ok_or_else(|| self.error("expected a positive power after '^'"))?;
                power = p
                    .try_into()
                    .ok()
                    .filter(|&p: &u32| p > 0)
                    .ok_or_else(|| Self::error_at(power_column, "power must be a positive integer"))?;
            }
            exponents[index - 1] += power;
            have_factor = true;
        }
        Ok((exponents, coefficient))
    }
}

/// Matrix with polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_rows(variables: usize, rows: Vec<Vec<MultiPoly>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        let entries = rows
            .into_iter()
            .flatten()
            .map(|mut p| {
                p.variables = variables;
                p
            })
            .collect();
        Self {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn zeros(variables: usize, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![MultiPoly::zero(variables); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: MultiPoly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn row(&self, r: usize) -> &[MultiPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `self · rhs`; the caller guarantees `self.cols == rhs.rows`.
    pub fn mul(&self, rhs: &PolyMatrix, variables: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(variables, self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = MultiPoly::zero(variables);
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), rhs.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[BigRational]) -> RationalMatrix {
        RationalMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).evaluate(point))
    }
}

/// Complex of graded free modules `T_1 → T_2 → … → T_L`; `matrices[i]`
/// maps term `i` to term `i + 1` (0-based), rows indexed by the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFreeComplex {
    variables: usize,
    shifts: Vec<Vec<i64>>,
    matrices: Vec<PolyMatrix>,
}

impl GradedFreeComplex {
    pub fn new(
        variables: usize,
        shifts: Vec<Vec<i64>>,
        matrices: Vec<PolyMatrix>,
    ) -> Result<Self, OracleError> {
        let expected = shifts.len().saturating_sub(1);
        if matrices.len() != expected {
            return Err(OracleError::MatrixCount {
                terms: shifts.len(),
                expected,
                got: matrices.len(),
            });
        }
        for (index, m) in matrices.iter().enumerate() {
            let (expected_rows, expected_cols) = (shifts[index + 1].len(), shifts[index].len());
            if m.rows != expected_rows || m.cols != expected_cols {
                return Err(OracleError::MatrixShape {
                    index,
                    rows: m.rows,
                    cols: m.cols,
                    expected_rows,
                    expected_cols,
                });
            }
            if let Some(p) = m.entries.iter().find(|p| p.variables != variables) {
                return Err(OracleError::VariableCount {
                    expected: variables,
                    got: p.variables,
                });
            }
        }
        Ok(Self {
            variables,
            shifts,
            matrices,
        })
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn shifts(&self) -> &[Vec<i64>] {
        &self.shifts
    }

    pub fn matrices(&self) -> &[PolyMatrix] {
        &self.matrices
    }

    pub fn matrix_mut(&mut self, index: usize) -> &mut PolyMatrix {
        &mut self.matrices[index]
    }

    /// Same maps with every generator degree raised by `by`.
    pub fn shifted(&self, by: i64) -> Self {
        Self {
            variables: self.variables,
            shifts: self
                .shifts
                .iter()
                .map(|t| t.iter().map(|d| d + by).collect())
                .collect(),
            matrices: self.matrices.clone(),
        }
    }
}

/// Lexicographically ordered `k`-subsets of `0..m`.
fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for next in start..m {
            current.push(next);
            go(next + 1, m, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Koszul complex on `x_1..x_m`, from `∧^m` (degree `m`) down to `∧^0`.
/// `e_S ↦ Σ_p (−1)^{|S|−1−p} x_{s_p} e_{S∖s_p}`.
pub fn build_koszul(m: usize) -> Result<GradedFreeComplex, OracleError> {
    if !(1..=8).contains(&m) {
        return Err(OracleError::KoszulSize(m));
    }
    let bases: Vec<Vec<Vec<usize>>> = (0..=m).rev().map(|k| subsets(m, k)).collect();
    let shifts = bases
        .iter()
        .map(|basis| vec![basis[0].len() as i64; basis.len()])
        .collect();
    let matrices = bases
        .windows(2)
        .map(|pair| {
            let (source, target) = (&pair[0], &pair[1]);
            let index: BTreeMap<&Vec<usize>, usize> =
                target.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut matrix = PolyMatrix::zeros(m, target.len(), source.len());
            for (col, set) in source.iter().enumerate() {
                for (p, &var) in set.iter().enumerate() {
                    let mut rest = set.clone();
                    rest.remove(p);
                    let x = MultiPoly::variable(m, var);
                    let entry = if (set.len() - 1 - p) % 2 == 0 { x } else { x.neg() };
                    matrix.set(index[&rest], col, entry);
                }
            }
            matrix
        })
        .collect();
    GradedFreeComplex::new(m, shifts, matrices)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexViolation {
    /// Entry of `matrices[matrix]` is not homogeneous of the required degree.
    Inhomogeneous {
        matrix: usize,
        row: usize,
        col: usize,
        expected_degree: i64,
    },
    /// `matrices[matrix + 1] · matrices[matrix]` is nonzero at this entry.
    NonzeroComposite { matrix: usize, row: usize, col: usize },
}

impl fmt::Display for ComplexViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexViolation::Inhomogeneous {
                matrix,
                row,
                col,
                expected_degree,
            } => write!(
                f,
                "matrix {matrix} entry ({row},{col}) is not homogeneous of degree {expected_degree}"
            ),
            ComplexViolation::NonzeroComposite { matrix, row, col } => write!(
                f,
                "product of matrices {} and {matrix} is nonzero at ({row},{col})",
                matrix + 1
            ),
        }
    }
}

/// All homogeneity and `d² = 0` violations; empty means the data is a
/// graded complex.
pub fn validate_complex(c: &GradedFreeComplex) -> Vec<ComplexViolation> {
    let mut out = Vec::new();
    for (index, m) in c.matrices.iter().enumerate() {
        for row in 0..m.rows {
            for col in 0..m.cols {
                let expected_degree = c.shifts[index][col] - c.shifts[index + 1][row];
                let entry = m.get(row, col);
                if !entry.is_zero() && (expected_degree < 0 || !entry.is_homogeneous_of(expected_degree)) {
                    out.push(ComplexViolation::Inhomogeneous {
                        matrix: index,
                        row,
                        col,
                        expected_degree,
                    });
                }
            }
        }
    }
    for (index, pair) in c.matrices.windows(2).enumerate() {
        let product = pair[1].mul(&pair[0], c.variables);
        for row in 0..product.rows {
            for col in 0..product.cols {
                if !product.get(row, col).is_zero() {
                    out.push(ComplexViolation::NonzeroComposite {
                        matrix: index,
                        row,
                        col,
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    pub ranks: Vec<usize>,
    pub dims: Vec<usize>,
    /// 0-based terms where `rank(in) + rank(out) ≠ dim`.
    pub failures: Vec<usize>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn evaluate_and_check_exactness(
    c: &GradedFreeComplex,
    point: &[BigRational],
) -> Result<ExactnessReport, OracleError> {
    if point.len() != c.variables {
        return Err(OracleError::PointLength {
            expected: c.variables,
            got: point.len(),
        });
    }
    let ranks: Vec<usize> = c.matrices.iter().map(|m| m.evaluate(point).rank()).collect();
    let dims: Vec<usize> = c.shifts.iter().map(Vec::len).collect();
    let failures = (0..dims.len())
        .filter(|&i| {
            let incoming = if i == 0 { 0 } else { ranks[i - 1] };
            let outgoing = ranks.get(i).copied().unwrap_or(0);
            incoming + outgoing != dims[i]
        })
        .collect();
    Ok(ExactnessReport {
        ranks,
        dims,
        failures,
    })
}

/// `count` nonzero rational points with coordinates `a/b`, `|a/b| ≤ 5`,
/// `1 ≤ b ≤ 3`, from a ChaCha stream seeded with `seed`.
pub fn sample_points(variables: usize, count: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    while points.len() < count {
        let point: Vec<BigRational> = (0..variables)
            .map(|_| {
                let den: i64 = rng.gen_range(1..=3);
                let num: i64 = rng.gen_range(-5 * den..=5 * den);
                BigRational::new(BigInt::from(num), BigInt::from(den))
            })
            .collect();
        if point.iter().any(|x| !x.is_zero()) {
            points.push(point);
        }
    }
    points
}

pub fn extract_degree_data(c: &GradedFreeComplex) -> ComplexDegreeData {
    ComplexDegreeData::new(c.variables, c.shifts.clone())
        .expect("a complex with at least two terms and one variable")
}
