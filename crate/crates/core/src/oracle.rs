//! Brute-force factor enumeration on materialized prefixes.
//!
//! Prefix lengths come with a proof that every length-`n` factor of the
//! infinite word already occurs inside them, so the counts are exact rather
//! than lower bounds.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::automaton::SuffixAutomaton;
use crate::closed_form::find_m;
use crate::error::{Error, Result};
use crate::gap::{max_prefix_bits, to_u64, BinaryPrefix, GapClass, GapSpec};
use crate::search::least_satisfying;

/// A finite binary word, shown as a string of `0` and `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor(pub Vec<u8>);

impl Factor {
    pub fn parse(text: &str) -> Self {
        Factor(text.bytes().map(|b| b - b'0').collect())
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountingBackend {
    /// Hash every window of the prefix.
    Hashing,
    /// One suffix automaton for all lengths.
    #[default]
    Automaton,
}

/// Factor counts of one length on one prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCensus {
    pub n: u64,
    pub distinct_count: u64,
    pub special_count: u64,
    pub prefix_length_used: u64,
    /// Whether the prefix length is a proven bound rather than a stabilization guess.
    pub certified: bool,
}

/// Length of a prefix that contains every length-`n` factor of the word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixBound {
    pub length: BigInt,
    pub certified: bool,
}

fn check_len(prefix: &BinaryPrefix, n: u64) -> Result<()> {
    if n > prefix.len() {
        return Err(Error::FactorTooLong { n, len: prefix.len() });
    }
    Ok(())
}

/// Distinct length-`n` windows of the prefix.
pub fn distinct_factors(prefix: &BinaryPrefix, n: u64) -> Result<u64> {
    check_len(prefix, n)?;
    if n == 0 {
        return Ok(1);
    }
    Ok(prefix.bits().windows(n as usize).collect::<HashSet<_>>().len() as u64)
}

/// Length-`n` factors `u` such that `u0` and `u1` both occur in the prefix.
pub fn right_special_factors(prefix: &BinaryPrefix, n: u64) -> Result<BTreeSet<Factor>> {
    check_len(prefix, n + 1)?;
    let n = n as usize;
    let mut ext: HashMap<&[u8], u8> = HashMap::new();
    for w in prefix.bits().windows(n + 1) {
        *ext.entry(&w[..n]).or_default() |= 1 << w[n];
    }
    Ok(ext
        .into_iter()
        .filter(|&(_, m)| m == 3)
        .map(|(u, _)| Factor(u.to_vec()))
        .collect())
}

/// `(f, s)` of the prefix for lengths `0..=n_max` (`s` needs `n_max + 1` letters).
pub fn prefix_counts(prefix: &BinaryPrefix, n_max: u64, backend: CountingBackend) -> Result<(Vec<u64>, Vec<u64>)> {
    check_len(prefix, n_max + 1)?;
    match backend {
        CountingBackend::Automaton => Ok(SuffixAutomaton::new(prefix.bits()).counts(n_max as usize)),
        CountingBackend::Hashing => {
            let mut f = Vec::with_capacity(n_max as usize + 1);
            let mut s = Vec::with_capacity(n_max as usize + 1);
            for n in 0..=n_max {
                f.push(distinct_factors(prefix, n)?);
                s.push(right_special_factors(prefix, n)?.len() as u64);
            }
            Ok((f, s))
        }
    }
}

/// A prefix length containing every length-`n` factor.
///
/// Gap increasing words: every factor with at most one 1 sits around the
/// first 1 whose neighbouring gaps exceed `n`, and every factor with two 1's
/// starts at or before `G(M_n + 1)`. Other words with gaps eventually above
/// `n` are handled by the first index `I` past which all gaps are at least
/// `n+1`: factors with two 1's end by `G(I)` and the others occur around it.
/// Ultimately periodic words need one period past the preperiod.
pub fn sufficient_prefix_length(spec: &GapSpec, n: u64) -> Result<PrefixBound> {
    let nb = BigInt::from(n);
    let target = &nb + 1;
    if spec.declared_class() == GapClass::StrictlyIncreasing {
        if nb <= spec.gap(1) {
            return Ok(PrefixBound {
                length: spec.distribution(2) + nb,
                certified: true,
            });
        }
        let l = least_satisfying(1u64, |l| spec.gap(l) >= target);
        let m = find_m(spec, n)?;
        let a = spec.distribution(l + 1);
        let b = spec.distribution(m + 1) + nb;
        return Ok(PrefixBound {
            length: a.max(b),
            certified: true,
        });
    }
    if let Some((start, period)) = spec.constant_tail() {
        return Ok(PrefixBound {
            length: spec.distribution(start) + period * 2 + nb,
            certified: true,
        });
    }
    match spec.eventually_at_least(&target) {
        Some(i) => Ok(PrefixBound {
            length: spec.distribution(i + 1),
            certified: true,
        }),
        None => Err(Error::Inconsistent("no certified prefix bound for this spec".into())),
    }
}

fn materialize(spec: &GapSpec, length: &BigInt) -> Result<BinaryPrefix> {
    let cap = max_prefix_bits();
    if length > &BigInt::from(cap) {
        return Err(Error::ResourceGuard {
            requested: length.clone(),
            cap,
        });
    }
    spec.prefix_with_cap(to_u64(length)?, cap)
}

/// Exact `f(n)` and `s(n)` of the infinite word by enumeration.
pub fn oracle_complexity(spec: &GapSpec, n: u64) -> Result<FactorCensus> {
    let bound = sufficient_prefix_length(spec, n + 1)?;
    let prefix = materialize(spec, &bound.length)?;
    Ok(FactorCensus {
        n,
        distinct_count: distinct_factors(&prefix, n)?,
        special_count: right_special_factors(&prefix, n)?.len() as u64,
        prefix_length_used: prefix.len(),
        certified: bound.certified,
    })
}

/// Censuses for `n = 1..=n_max` from one prefix.
pub fn oracle_table(spec: &GapSpec, n_max: u64, backend: CountingBackend) -> Result<Vec<FactorCensus>> {
    let bound = sufficient_prefix_length(spec, n_max + 1)?;
    let prefix = materialize(spec, &bound.length)?;
    let (f, s) = prefix_counts(&prefix, n_max, backend)?;
    Ok((1..=n_max)
        .map(|n| FactorCensus {
            n,
            distinct_count: f[n as usize],
            special_count: s[n as usize],
            prefix_length_used: prefix.len(),
            certified: bound.certified,
        })
        .collect())
}

/// Uncertified census: doubles the prefix until both counts hold still
/// across two consecutive doublings, or the resource guard is reached.
pub fn stabilized_census(spec: &GapSpec, n: u64) -> Result<FactorCensus> {
    let cap = max_prefix_bits();
    let mut length = to_u64(&(spec.distribution(2) + BigInt::from(2 * n + 2)))?;
    let mut history: Vec<(u64, u64)> = Vec::new();
    loop {
        let prefix = spec.prefix_with_cap(length, cap)?;
        let counts = (
            distinct_factors(&prefix, n)?,
            right_special_factors(&prefix, n)?.len() as u64,
        );
        history.push(counts);
        let k = history.len();
        if k >= 3 && history[k - 1] == history[k - 2] && history[k - 2] == history[k - 3] {
            return Ok(FactorCensus {
                n,
                distinct_count: counts.0,
                special_count: counts.1,
                prefix_length_used: length,
                certified: false,
            });
        }
        length = length
            .checked_mul(2)
            .filter(|&l| l <= cap)
            .ok_or(Error::ResourceGuard {
                requested: BigInt::from(length) * 2,
                cap,
            })?;
    }
}

/// Case of the second difference `Δ²f(n)` for a gap increasing word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Delta2Case {
    /// `10^n1` occurs, no double gap of length `n-1`: `+1`.
    A,
    /// No `10^n1`, a double gap of length `n-1`: `-1`.
    B,
    /// Both: `0`.
    C,
    /// Neither: `0`.
    D,
}

impl Delta2Case {
    pub fn delta2(self) -> i64 {
        match self {
            Delta2Case::A => 1,
            Delta2Case::B => -1,
            Delta2Case::C | Delta2Case::D => 0,
        }
    }
}

fn require_increasing(spec: &GapSpec) -> Result<()> {
    if spec.declared_class() == GapClass::StrictlyIncreasing {
        Ok(())
    } else {
        Err(Error::ClassRequired {
            required: "strictly-increasing",
            declared: spec.declared_class(),
        })
    }
}

/// Whether `10^n1` is a factor: `g(i) = n+1` for some `i >= 2`.
pub fn has_factor_1_0n_1(spec: &GapSpec, n: u64) -> Result<bool> {
    require_increasing(spec)?;
    let target = BigInt::from(n) + 1;
    let i = least_satisfying(2u64, |i| spec.gap(i) >= target);
    Ok(spec.gap(i) == target)
}

/// Whether two consecutive zero runs (the leading one included) have total
/// length `n-1`: `g(i) + g(i+1) = n+1` for some `i >= 1`.
pub fn has_double_gap(spec: &GapSpec, n: u64) -> Result<bool> {
    require_increasing(spec)?;
    let target = BigInt::from(n) + 1;
    let i = least_satisfying(1u64, |i| spec.gap(i) + spec.gap(i + 1) >= target);
    Ok(spec.gap(i) + spec.gap(i + 1) == target)
}

pub fn delta2_case(spec: &GapSpec, n: u64) -> Result<Delta2Case> {
    let factor = has_factor_1_0n_1(spec, n)?;
    let double = has_double_gap(spec, n)?;
    Ok(match (factor, double) {
        (true, false) => Delta2Case::A,
        (false, true) => Delta2Case::B,
        (true, true) => Delta2Case::C,
        (false, false) => Delta2Case::D,
    })
}
