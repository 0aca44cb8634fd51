//! Exact symmetric-function arithmetic on integer weight vectors.
//!
//! Everything here works over `BigInt`/`BigRational`: elementary symmetric
//! polynomials, power sums, Newton's identities, truncated power-series
//! division and a brute-force splitting-prime search.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Largest bound accepted by [`find_splitting_primes`].
pub const MAX_PRIME_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetricError {
    #[error("truncation order {truncation} is below the split degree {split}")]
    TruncationBelowSplit { split: usize, truncation: usize },
    #[error("polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("prime bound {0} outside the supported range 2..={MAX_PRIME_BOUND}")]
    BoundOutOfRange(u64),
}

/// Ordered list of integer degrees. Order is kept, but every symmetric
/// function computed from it ignores order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn concat(&self, other: &WeightVector) -> WeightVector {
        let mut entries = self.0.clone();
        entries.extend_from_slice(&other.0);
        Self(entries)
    }

    pub fn shifted(&self, by: i64) -> WeightVector {
        Self(self.0.iter().map(|w| w + by).collect())
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl From<Vec<i64>> for WeightVector {
    fn from(entries: Vec<i64>) -> Self {
        Self(entries)
    }
}

impl From<&[i64]> for WeightVector {
    fn from(entries: &[i64]) -> Self {
        Self(entries.to_vec())
    }
}

impl FromIterator<i64> for WeightVector {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, w) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// `[σ_0, …, σ_upTo]`, the coefficients of `∏ (1 + v_i t)` up to `t^upTo`.
pub fn elementary_symmetric(v: &WeightVector, up_to: usize) -> Vec<BigInt> {
    let mut sigma = vec![BigInt::zero(); up_to + 1];
    sigma[0] = BigInt::one();
    for (count, w) in v.iter().enumerate() {
        let w = BigInt::from(w);
        let top = (count + 1).min(up_to);
        for k in (1..=top).rev() {
            let term = &sigma[k - 1] * &w;
            sigma[k] += term;
        }
    }
    sigma
}

/// `[p_1, …, p_upTo]` with `p_i = Σ v_k^i`.
pub fn power_sums(v: &WeightVector, up_to: usize) -> Vec<BigInt> {
    let mut sums = vec![BigInt::zero(); up_to];
    for w in v.iter() {
        let w = BigInt::from(w);
        let mut power = BigInt::one();
        for sum in sums.iter_mut() {
            power *= &w;
            *sum += &power;
        }
    }
    sums
}

/// Power sums of the virtual root multiset whose elementary symmetric
/// functions are `e` (entries past the end of `e` count as zero).
///
/// Panics if `e` is empty or `e[0] != 1`.
pub fn newton_e_to_p(e: &[BigRational], up_to: usize) -> Vec<BigRational> {
    assert!(
        e.first().is_some_and(|e0| e0.is_one()),
        "elementary symmetric list must start with e_0 = 1"
    );
    let zero = BigRational::zero();
    let coeff = |i: usize| e.get(i).unwrap_or(&zero);
    let mut p: Vec<BigRational> = Vec::with_capacity(up_to);
    for k in 1..=up_to {
        let mut acc = coeff(k) * BigRational::from_integer(BigInt::from(k));
        if k % 2 == 0 {
            acc = -acc;
        }
        for i in 1..k {
            let term = coeff(i) * &p[k - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p
}

/// Power series in `t` with exact rational coefficients, truncated after `t^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Pads with zeros or drops terms so that exactly `order + 1` coefficients remain.
    pub fn new(mut coefficients: Vec<BigRational>, order: usize) -> Self {
        coefficients.resize(order + 1, BigRational::zero());
        Self { coefficients }
    }

    pub fn from_integers(coefficients: &[BigInt], order: usize) -> Self {
        Self::new(
            coefficients
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
            order,
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    /// `∏ (1 + w_i t)` truncated at `order`.
    pub fn linear_product(weights: &WeightVector, order: usize) -> Self {
        Self::from_integers(&elementary_symmetric(weights, order), order)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coefficients
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inverse(&self) -> Option<TruncatedSeries> {
        let c0 = &self.coefficients[0];
        if c0.is_zero() {
            return None;
        }
        let order = self.order();
        let c0_inv = c0.recip();
        let mut inv = vec![BigRational::zero(); order + 1];
        inv[0] = c0_inv.clone();
        for k in 1..=order {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coefficients[j] * &inv[k - j];
            }
            inv[k] = -(acc * &c0_inv);
        }
        Some(Self { coefficients: inv })
    }

    /// Drops every coefficient above `t^degree` (keeps the truncation order).
    pub fn truncate_degree(&self, degree: usize) -> TruncatedSeries {
        let kept = self.coefficients.iter().take(degree + 1).cloned().collect();
        Self::new(kept, self.order())
    }

    /// Quotient polynomial of degree at most `split` and remainder such that
    /// `self = divisor * quotient + remainder`, where the remainder vanishes
    /// through `t^split`. Requires a divisor with invertible constant term.
    pub fn quotient_with_remainder(
        &self,
        divisor: &TruncatedSeries,
        split: usize,
    ) -> Option<(TruncatedSeries, TruncatedSeries)> {
        let order = self.order().min(divisor.order());
        let num = Self::new(self.coefficients.clone(), order);
        let den = Self::new(divisor.coefficients.clone(), order);
        let quotient = (&num * &den.inverse()?).truncate_degree(split);
        let remainder = &num - &(&den * &quotient);
        Some((quotient, remainder))
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coefficients = (0..=order)
            .map(|k| &self.coefficients[k] + &rhs.coefficients[k])
            .collect();
        TruncatedSeries { coefficients }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coefficients = (0..=order)
            .map(|k| &self.coefficients[k] - &rhs.coefficients[k])
            .collect();
        TruncatedSeries { coefficients }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coefficients = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate().take(order + 1 - i) {
                coefficients[i + j] += a * b;
            }
        }
        TruncatedSeries { coefficients }
    }
}

/// Integer series `s_0 = 1, s_1, …, s_r`; `s_i = 0` for `i > r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSeries {
    s: Vec<BigInt>,
}

impl SSeries {
    pub fn new(s: Vec<BigInt>) -> Self {
        assert!(s.first().is_some_and(|s0| s0.is_one()), "s_0 must be 1");
        Self { s }
    }

    pub fn split_degree(&self) -> usize {
        self.s.len() - 1
    }

    pub fn values(&self) -> &[BigInt] {
        &self.s
    }

    pub fn get(&self, i: usize) -> BigInt {
        self.s.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn as_rationals(&self) -> Vec<BigRational> {
        self.s
            .iter()
            .map(|s| BigRational::from_integer(s.clone()))
            .collect()
    }
}

/// Result of dividing `∏(1 + w t)` by `∏(1 + v t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesDivision {
    pub s: SSeries,
    /// `C_{r+1}, …, C_M`.
    pub remainder: Vec<BigInt>,
}

impl SeriesDivision {
    /// `C_k` for `r < k ≤ M`; zero outside that window.
    pub fn residual(&self, k: usize) -> BigInt {
        let r = self.s.split_degree();
        if k <= r {
            return BigInt::zero();
        }
        self.remainder
            .get(k - r - 1)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Least `k` with `C_k ≠ 0`.
    pub fn first_nonzero(&self) -> Option<(usize, BigInt)> {
        let r = self.s.split_degree();
        self.remainder
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (r + 1 + idx, c.clone()))
    }
}

fn integral(q: &BigRational) -> BigInt {
    assert!(q.is_integer(), "integer-valued series produced a fraction: {q}");
    q.to_integer()
}

/// Divides `∏(1 + w t)` by `∏(1 + v t)` as power series, keeps the quotient
/// through `t^split` and reports the residual coefficients `C_{split+1}..C_truncation`.
pub fn series_quotient_remainder(
    w: &WeightVector,
    v: &WeightVector,
    split: usize,
    truncation: usize,
) -> Result<SeriesDivision, SymmetricError> {
    if truncation < split {
        return Err(SymmetricError::TruncationBelowSplit { split, truncation });
    }
    let num = TruncatedSeries::linear_product(w, truncation);
    let den = TruncatedSeries::linear_product(v, truncation);
    let (quotient, remainder) = num
        .quotient_with_remainder(&den, split)
        .expect("constant term of a linear product is 1");
    let s = quotient.coefficients()[..=split].iter().map(integral).collect();
    let remainder = remainder.coefficients()[split + 1..]
        .iter()
        .map(integral)
        .collect();
    Ok(SeriesDivision {
        s: SSeries::new(s),
        remainder,
    })
}

/// The same `s_0..s_r` as [`series_quotient_remainder`], but obtained by
/// direct recursive substitution `s_i = σ_i(u) − Σ_{j=1}^{i} σ_j(v) s_{i−j}`.
pub fn recursive_s_series(u: &WeightVector, v: &WeightVector, split: usize) -> SSeries {
    let su = elementary_symmetric(u, split);
    let sv = elementary_symmetric(v, split);
    let mut s: Vec<BigInt> = Vec::with_capacity(split + 1);
    s.push(BigInt::one());
    for i in 1..=split {
        let mut value = su[i].clone();
        for j in 1..=i {
            value -= &sv[j] * &s[i - j];
        }
        s.push(value);
    }
    SSeries::new(s)
}

/// `σ_k(u) − Σ_{j=0}^{k} σ_j(v) s_{k−j}` from precomputed σ lists.
pub fn residual_coefficient(sigma_u: &[BigInt], sigma_v: &[BigInt], s: &SSeries, k: usize) -> BigInt {
    let zero = BigInt::zero();
    let mut value = sigma_u.get(k).unwrap_or(&zero).clone();
    for j in 0..=k {
        let sj = s.get(k - j);
        if sj.is_zero() {
            continue;
        }
        value -= sigma_v.get(j).unwrap_or(&zero) * sj;
    }
    value
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut multiple = p * p;
        while multiple <= n {
            composite[multiple] = true;
            multiple += p;
        }
    }
    primes
}

fn eval_mod(coefficients: &[i64], x: u64, p: u64) -> u64 {
    let p_i = p as i128;
    coefficients.iter().fold(0u64, |acc, &c| {
        let c = (c as i128).rem_euclid(p_i) as u64;
        ((acc as u128 * x as u128 + c as u128) % p as u128) as u64
    })
}

/// Primes `p ≤ bound` modulo which the monic polynomial `f` (coefficients
/// leading term first) has `deg f` distinct roots, found by testing every residue.
pub fn find_splitting_primes(f: &[i64], bound: u64) -> Result<Vec<u64>, SymmetricError> {
    if f.len() < 2 || f[0] != 1 {
        return Err(SymmetricError::NotMonic);
    }
    if !(2..=MAX_PRIME_BOUND).contains(&bound) {
        return Err(SymmetricError::BoundOutOfRange(bound));
    }
    let degree = f.len() - 1;
    let splits = |p: u64| {
        if (degree as u64) > p {
            return false;
        }
        let mut roots = 0usize;
        for x in 0..p {
            if eval_mod(f, x, p) == 0 {
                roots += 1;
                if roots == degree {
                    return true;
                }
            } else if degree - roots > (p - x - 1) as usize {
                return false;
            }
        }
        false
    };
    Ok(primes_up_to(bound).into_iter().filter(|&p| splits(p)).collect())
}

/// Renders an integer coefficient list `[c_0, c_1, …]` as a polynomial in `t`.
pub fn format_series(coefficients: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        match k {
            0 => out.push_str(&magnitude.to_string()),
            _ => {
                if !magnitude.is_one() {
                    out.push_str(&magnitude.to_string());
                }
                out.push('t');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn rats(values: &[i64]) -> Vec<BigRational> {
        values
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect()
    }

    fn wv(values: &[i64]) -> WeightVector {
        WeightVector::from(values)
    }

    // Brute force: sum over all k-subsets of the product of entries.
    fn sigma_by_subsets(v: &[i64], k: usize) -> BigInt {
        let n = v.len();
        let mut total = BigInt::zero();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut prod = BigInt::one();
            for (idx, w) in v.iter().enumerate() {
                if mask & (1 << idx) != 0 {
                    prod *= *w;
                }
            }
            total += prod;
        }
        total
    }

    #[test]
    fn elementary_symmetric_examples() {
        assert_eq!(elementary_symmetric(&wv(&[2, 2, 2]), 3), ints(&[1, 6, 12, 8]));
        assert_eq!(elementary_symmetric(&wv(&[]), 2), ints(&[1, 0, 0]));
        assert_eq!(elementary_symmetric(&wv(&[1, 1, 1, 1]), 2)[2], BigInt::from(6));
    }

    #[test]
    fn elementary_symmetric_matches_subset_enumeration() {
        let v = [3, -1, 4, 1, -5, 9, 2];
        let sigma = elementary_symmetric(&wv(&v), 9);
        for (k, value) in sigma.iter().enumerate() {
            assert_eq!(*value, sigma_by_subsets(&v, k), "k = {k}");
        }
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sums(&wv(&[2, 2, 2]), 3), ints(&[6, 12, 24]));
        assert_eq!(power_sums(&wv(&[0, 0]), 3), ints(&[0, 0, 0]));
        assert_eq!(power_sums(&wv(&[1, 2]), 2)[1], BigInt::from(5));
    }

    #[test]
    fn newton_examples() {
        assert_eq!(newton_e_to_p(&rats(&[1, 3, 3]), 3), rats(&[3, 3, 0]));
        assert_eq!(newton_e_to_p(&rats(&[1]), 3), rats(&[0, 0, 0]));
        assert_eq!(newton_e_to_p(&rats(&[1, 5, 6]), 3), rats(&[5, 13, 35]));
    }

    #[test]
    #[should_panic]
    fn newton_rejects_bad_constant_term() {
        newton_e_to_p(&rats(&[2, 1]), 2);
    }

    #[test]
    fn series_division_examples() {
        let d = series_quotient_remainder(&wv(&[2, 2, 2]), &wv(&[3]), 2, 3).unwrap();
        assert_eq!(d.s.values(), ints(&[1, 3, 3]).as_slice());
        assert_eq!(d.remainder, ints(&[-1]));
        assert_eq!(d.first_nonzero(), Some((3, BigInt::from(-1))));

        let w = wv(&[4, -2, 7]);
        let d = series_quotient_remainder(&w, &w, 0, 4).unwrap();
        assert_eq!(d.s.values(), ints(&[1]).as_slice());
        assert!(d.remainder.iter().all(Zero::is_zero));
        assert_eq!(d.remainder.len(), 4);

        let d = series_quotient_remainder(&wv(&[1, 1]), &wv(&[]), 2, 4).unwrap();
        assert_eq!(d.s.values(), ints(&[1, 2, 1]).as_slice());
        assert_eq!(d.remainder, ints(&[0, 0]));
    }

    #[test]
    fn series_division_rejects_short_truncation() {
        assert_eq!(
            series_quotient_remainder(&wv(&[1]), &wv(&[]), 3, 2),
            Err(SymmetricError::TruncationBelowSplit {
                split: 3,
                truncation: 2
            })
        );
    }

    #[test]
    fn recursive_route_matches_series_route() {
        let u = wv(&[2, 2, 2]);
        let v = wv(&[3]);
        let s = recursive_s_series(&u, &v, 2);
        assert_eq!(s.values(), ints(&[1, 3, 3]).as_slice());
        let su = elementary_symmetric(&u, 3);
        let sv = elementary_symmetric(&v, 3);
        assert_eq!(residual_coefficient(&su, &sv, &s, 3), BigInt::from(-1));
    }

    #[test]
    fn series_inverse_of_one_plus_t() {
        let s = TruncatedSeries::from_integers(&ints(&[1, 1]), 4);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.coefficients(), rats(&[1, -1, 1, -1, 1]).as_slice());
        assert_eq!(&s * &inv, TruncatedSeries::one(4));
        assert!(TruncatedSeries::zero(3).inverse().is_none());
    }

    // Brute force: count residues that are roots.
    fn distinct_roots_mod(f: &[i64], p: i64) -> usize {
        (0..p)
            .filter(|&x| {
                let value = f.iter().fold(0i64, |acc, &c| (acc * x + c).rem_euclid(p));
                value == 0
            })
            .count()
    }

    #[test]
    fn splitting_prime_examples() {
        assert_eq!(find_splitting_primes(&[1, 0, 1], 20).unwrap(), vec![5, 13, 17]);
        assert_eq!(find_splitting_primes(&[1, -1], 10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(find_splitting_primes(&[1, 1, 1], 20).unwrap(), vec![7, 13, 19]);
    }

    #[test]
    fn splitting_primes_match_root_count() {
        let f = [1, -3, -1, 3];
        let found = find_splitting_primes(&f, 200).unwrap();
        let expected: Vec<u64> = primes_up_to(200)
            .into_iter()
            .filter(|&p| distinct_roots_mod(&f, p as i64) == 3)
            .collect();
        assert_eq!(found, expected);
    }

    #[test]
    fn splitting_primes_reject_bad_input() {
        assert_eq!(
            find_splitting_primes(&[2, 0, 1], 20),
            Err(SymmetricError::NotMonic)
        );
        assert_eq!(find_splitting_primes(&[1], 20), Err(SymmetricError::NotMonic));
        assert_eq!(
            find_splitting_primes(&[1, 1], 1),
            Err(SymmetricError::BoundOutOfRange(1))
        );
        assert!(find_splitting_primes(&[1, 1], MAX_PRIME_BOUND + 1).is_err());
    }

    #[test]
    fn series_formatting() {
        assert_eq!(format_series(&ints(&[1, -3, 0, 1])), "1 - 3t + t^3");
        assert_eq!(format_series(&ints(&[0, 0])), "0");
        assert_eq!(format_series(&ints(&[0, -1])), "-t");
    }
}
