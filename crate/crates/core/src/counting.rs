//! Exact structure counts.
//!
//! `S(n, m)` is the number of secondary structures of length `n` with `m`
//! base-pairs. It is available three ways: the closed binomial form
//! ([`count_explicit`]), the first-decomposition recurrence
//! ([`count_recurrence`]) and the Narayana identity `S(n, m) = N(n - m, m + 1)`
//! ([`narayana`]). All arithmetic is exact.

use std::borrow::Cow;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision non-negative count. Also used for ranks.
pub type BigCount = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("narayana number N({n}, {k}) requires n >= k > 0")]
    NarayanaDomain { n: u64, k: u64 },
}

/// The parameter pair `(n, m)`: sequence length and number of base-pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructureParams {
    pub n: usize,
    pub m: usize,
}

impl StructureParams {
    pub fn new(n: usize, m: usize) -> Self {
        Self { n, m }
    }

    /// True when at least one structure exists: `m = 0`, or `2m + 1 <= n`.
    pub fn is_nonempty(&self) -> bool {
        self.m == 0 || 2 * self.m < self.n
    }
}

/// Binomial coefficient by running product with an exact division after
/// every multiplication. `O(min(k, n - k))` single-limb operations.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 1..=k {
        acc *= n - k + i;
        debug_assert!((&acc % i).is_zero());
        acc /= i;
    }
    acc
}

fn exact_div(numerator: BigCount, divisor: u64) -> BigCount {
    let (q, r) = numerator.div_rem(&BigCount::from(divisor));
    assert!(r.is_zero(), "inexact division by {divisor}");
    q
}

/// `S(n, m)` from the closed form `C(n-m, m) * C(n-m, m+1) / (n - m)`.
pub fn count_explicit(params: StructureParams) -> BigCount {
    let StructureParams { n, m } = params;
    if m == 0 {
        return BigCount::one();
    }
    if !params.is_nonempty() {
        return BigCount::zero();
    }
    let k = (n - m) as u64;
    let m = m as u64;
    let lower = binomial(k, m);
    // C(k, m + 1) = C(k, m) * (k - m) / (m + 1)
    let upper = exact_div(&lower * (k - m), m + 1);
    exact_div(lower * upper, k)
}

/// `S(n, m)` evaluated by the recurrence
///
/// ```text
/// S(n, m) = S(n-1, m) + sum_{i<m} sum_{j=2i}^{n-2(m-i)-1} S(n-2-j, m-1-i) * S(j, i)
/// ```
///
/// filling a bottom-up table over every `(n', m')` with `n' <= n`, `m' <= m`.
pub fn count_recurrence(params: StructureParams) -> BigCount {
    let table = CountTable::build_by_recurrence(params.n, params.m);
    table.get(params.n, params.m).cloned().unwrap_or_default()
}

/// Narayana number `N(n, k) = C(n, k-1) * C(n, k) / n` for `n >= k > 0`.
pub fn narayana(n: u64, k: u64) -> Result<BigCount, CountError> {
    if k == 0 || k > n {
        return Err(CountError::NarayanaDomain { n, k });
    }
    Ok(exact_div(binomial(n, k - 1) * binomial(n, k), n))
}

/// Source of `S(n, m)` values for the ranking algorithms.
pub trait Counts {
    fn count(&self, n: usize, m: usize) -> Cow<'_, BigCount>;

    /// Whether `count` may be asked for every `(n', m')` with
    /// `n' <= n` and `m' <= m`.
    fn covers(&self, n: usize, m: usize) -> bool;
}

/// Table-less mode: every value is recomputed with [`count_explicit`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ExplicitCounts;

impl Counts for ExplicitCounts {
    fn count(&self, n: usize, m: usize) -> Cow<'_, BigCount> {
        Cow::Owned(count_explicit(StructureParams { n, m }))
    }

    fn covers(&self, _n: usize, _m: usize) -> bool {
        true
    }
}

/// Immutable rectangle of `S(n, m)` values for `n <= n_max`, `m <= m_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    n_max: usize,
    m_max: usize,
    // columns[m][n]
    columns: Vec<Vec<BigCount>>,
}

impl CountTable {
    /// Builds the table column by column.
    ///
    /// Column `m > 0` starts at `S(2m+1, m) = 1` and continues with the ratio
    /// of consecutive closed forms,
    /// `S(n, m) = S(n-1, m) * (k-1) * k / ((k-m) * (k-m-1))` with `k = n - m`,
    /// so each entry costs one multiplication and one exact division.
    pub fn build(n_max: usize, m_max: usize) -> Self {
        let mut columns = Vec::with_capacity(m_max + 1);
        columns.push(vec![BigCount::one(); n_max + 1]);
        for m in 1..=m_max {
            let mut column = vec![BigCount::zero(); n_max + 1];
            let first = 2 * m + 1;
            if first <= n_max {
                column[first] = BigCount::one();
                for n in first + 1..=n_max {
                    let k = (n - m) as u64;
                    let m = m as u64;
                    let grown = &column[n - 1] * ((k - 1) * k);
                    column[n] = exact_div(grown, (k - m) * (k - m - 1));
                }
            }
            columns.push(column);
        }
        Self {
            n_max,
            m_max,
            columns,
        }
    }

    /// Smallest table that serves requests at `params`.
    pub fn for_params(params: StructureParams) -> Self {
        Self::build(params.n, params.m)
    }

    /// Builds the same rectangle directly from the recurrence. Quadratic in
    /// both bounds per entry; meant as a cross-check.
    pub fn build_by_recurrence(n_max: usize, m_max: usize) -> Self {
        let mut columns = vec![vec![BigCount::zero(); n_max + 1]; m_max + 1];
        for n in 0..=n_max {
            columns[0][n] = BigCount::one();
            for m in 1..=m_max {
                if 2 * m >= n {
                    continue;
                }
                let mut total = columns[m][n - 1].clone();
                for i in 0..m {
                    // Empty j-ranges contribute nothing.
                    let hi = n as isize - 2 * (m - i) as isize - 1;
                    let mut j = 2 * i;
                    while (j as isize) <= hi {
                        let inner = &columns[m - 1 - i][n - 2 - j];
                        let tail = &columns[i][j];
                        if !inner.is_zero() && !tail.is_zero() {
                            total += inner * tail;
                        }
                        j += 1;
                    }
                }
                columns[m][n] = total;
            }
        }
        Self {
            n_max,
            m_max,
            columns,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn get(&self, n: usize, m: usize) -> Option<&BigCount> {
        self.columns.get(m).and_then(|column| column.get(n))
    }
}

impl Counts for CountTable {
    fn count(&self, n: usize, m: usize) -> Cow<'_, BigCount> {
        match self.get(n, m) {
            Some(value) => Cow::Borrowed(value),
            None => panic!(
                "count table {}x{} queried at ({n}, {m})",
                self.n_max, self.m_max
            ),
        }
    }

    fn covers(&self, n: usize, m: usize) -> bool {
        n <= self.n_max && m <= self.m_max
    }
}
