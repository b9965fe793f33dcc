//! Brute-force reference for verification.
//!
//! [`brute_force_enumerate`] lists every structure of a context by
//! backtracking over symbols and knows nothing about counts, variants or
//! ranks. [`verify_bijection`] checks the ranking machinery against it.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::codec::MotzkinWord;
use crate::counting::{count_explicit, CountTable, StructureParams};
use crate::ranking::{rank_structure, unrank_structure, Rank};

/// Largest `n` the oracle accepts unless a different cap is passed.
pub const DEFAULT_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// All structures of one context, sorted by their text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSet {
    pub n: usize,
    pub m: usize,
    pub words: Vec<MotzkinWord>,
}

impl OracleSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

pub fn brute_force_enumerate(n: usize, m: usize) -> Result<OracleSet, OracleError> {
    brute_force_enumerate_capped(n, m, DEFAULT_CAP)
}

pub fn brute_force_enumerate_capped(n: usize, m: usize, cap: usize) -> Result<OracleSet, OracleError> {
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    let mut found = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    extend(&mut prefix, n, m, 0, 0, &mut found);
    found.sort();
    let words = found
        .into_iter()
        .map(|symbols| MotzkinWord::from_valid(symbols, m))
        .collect();
    Ok(OracleSet { n, m, words })
}

fn extend(prefix: &mut Vec<u8>, n: usize, m: usize, depth: usize, opened: usize, out: &mut Vec<Vec<u8>>) {
    let remaining = n - prefix.len();
    if remaining == 0 {
        if depth == 0 && opened == m {
            out.push(prefix.clone());
        }
        return;
    }
    // Every still-open pair needs a closing bracket, every pair not yet
    // opened needs two brackets.
    let needed_after = |depth: usize, opened: usize| depth + 2 * (m - opened);
    if opened < m && remaining > needed_after(depth + 1, opened + 1) {
        prefix.push(b'(');
        extend(prefix, n, m, depth + 1, opened + 1, out);
        prefix.pop();
    }
    if depth > 0 && prefix.last() != Some(&b'(') {
        prefix.push(b')');
        extend(prefix, n, m, depth - 1, opened, out);
        prefix.pop();
    }
    if remaining > needed_after(depth, opened) {
        prefix.push(b'*');
        extend(prefix, n, m, depth, opened, out);
        prefix.pop();
    }
}

/// Direct check of the structure rules on raw symbols.
pub fn is_valid_structure(symbols: &[u8], n: usize, m: usize) -> bool {
    if symbols.len() != n {
        return false;
    }
    let mut depth = 0i64;
    let mut pairs = 0usize;
    for (index, &symbol) in symbols.iter().enumerate() {
        match symbol {
            b'(' => {
                depth += 1;
                pairs += 1;
            }
            b')' => {
                depth -= 1;
                if depth < 0 || index == 0 || symbols[index - 1] == b'(' {
                    return false;
                }
            }
            b'*' => {}
            _ => return false,
        }
    }
    depth == 0 && pairs == m
}

/// Outcome of checking one context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub n: usize,
    pub m: usize,
    /// `S(n, m)` from the closed form.
    pub count: u64,
    /// Size of the brute-force set.
    pub oracle_count: u64,
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// Checks that unranking `0..S(n, m)` yields exactly the brute-force set,
/// without duplicates, and that ranking inverts it.
pub fn verify_bijection(n: usize, m: usize) -> Result<BijectionReport, OracleError> {
    let oracle = brute_force_enumerate(n, m)?;
    let count: u64 = count_explicit(StructureParams::new(n, m))
        .try_into()
        .expect("counts below the oracle cap fit in u64");
    let mut report = BijectionReport {
        n,
        m,
        count,
        oracle_count: oracle.len() as u64,
        passed: false,
        counterexample: None,
    };
    if report.oracle_count != count {
        report.counterexample = Some(format!(
            "oracle found {} structures, closed form gives {count}",
            report.oracle_count
        ));
        return Ok(report);
    }
    let table = CountTable::build(n, m);
    let mut seen = BTreeSet::new();
    for r in 0..count {
        let rank = Rank::from(r);
        let word = match unrank_structure(&rank, n, m, &table) {
            Ok(word) => word,
            Err(err) => {
                report.counterexample = Some(format!("unrank({r}) failed: {err}"));
                return Ok(report);
            }
        };
        if !is_valid_structure(word.as_bytes(), n, m) {
            report.counterexample = Some(format!("unrank({r}) = {word} is not a valid structure"));
            return Ok(report);
        }
        match rank_structure(&word, &table) {
            Ok(back) if back == rank => {}
            Ok(back) => {
                report.counterexample = Some(format!("rank(unrank({r})) = {back} for {word}"));
                return Ok(report);
            }
            Err(err) => {
                report.counterexample = Some(format!("rank({word}) failed: {err}"));
                return Ok(report);
            }
        }
        if !seen.insert(word.clone()) {
            report.counterexample = Some(format!("unrank({r}) = {word} repeats an earlier rank"));
            return Ok(report);
        }
    }
    if let Some(missing) = oracle.words.iter().find(|w| !seen.contains(*w)) {
        report.counterexample = Some(format!("{missing} is never produced"));
        return Ok(report);
    }
    report.passed = true;
    Ok(report)
}

/// [`verify_bijection`] for every `n <= n_cap` and `0 <= m <= n / 2`.
pub fn verify_all(n_cap: usize) -> Result<Vec<BijectionReport>, OracleError> {
    if n_cap > DEFAULT_CAP {
        return Err(OracleError::CapExceeded {
            n: n_cap,
            cap: DEFAULT_CAP,
        });
    }
    let mut reports = Vec::new();
    for n in 0..=n_cap {
        for m in 0..=n / 2 {
            reports.push(verify_bijection(n, m)?);
        }
    }
    Ok(reports)
}
