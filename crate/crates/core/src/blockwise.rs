//! Right special factors of words whose gap function is blockwise injective:
//! equal gap values only ever occur in one contiguous block.

use crate::error::{Error, Result};
use crate::gap::{to_u64, GapClass, GapSpec};
use crate::profile::ComplexityProfile;
use num_bigint::BigInt;

/// Run-length encoding `(j, p)` of a blockwise injective gap function.
///
/// `values[r-1] = j(r)` and `mults[r-1] = p(r)`. For a bounded gap function
/// the last block never ends and its multiplicity is `None`; the summary then
/// describes the whole word. Otherwise it covers the first `horizon` gaps and
/// records what follows: the next distinct value and the infimum of all later
/// gaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSummary {
    pub values: Vec<u64>,
    pub mults: Vec<Option<u64>>,
    pub bounded: bool,
    pub horizon: u64,
    pub next_value: Option<u64>,
    pub tail_min: Option<BigInt>,
}

fn require_blockwise(spec: &GapSpec) -> Result<()> {
    if spec.declared_class().implies(GapClass::BlockwiseInjective) {
        Ok(())
    } else {
        Err(Error::ClassRequired {
            required: "blockwise-injective",
            declared: spec.declared_class(),
        })
    }
}

fn encode(spec: &GapSpec, upto: u64) -> Result<(Vec<u64>, Vec<Option<u64>>)> {
    let mut values: Vec<u64> = Vec::new();
    let mut mults: Vec<Option<u64>> = Vec::new();
    for i in 1..=upto {
        let g = to_u64(&spec.gap(i))?;
        match values.last() {
            Some(&v) if v == g => {
                let last = mults.last_mut().unwrap();
                *last = last.map(|m| m + 1);
            }
            _ => {
                if values.contains(&g) {
                    return Err(Error::ClassViolation {
                        declared: spec.declared_class(),
                        index: i,
                        detail: format!("value {g} recurs after its block closed"),
                    });
                }
                values.push(g);
                mults.push(Some(1));
            }
        }
    }
    Ok((values, mults))
}

/// Summarizes `g(1..=horizon)`, extended to the end of the block in progress.
/// Bounded gap functions are summarized completely.
pub fn block_summary(spec: &GapSpec, horizon: u64) -> Result<BlockSummary> {
    require_blockwise(spec)?;
    if let Some((start, v)) = spec.constant_tail() {
        let v = to_u64(&v)?;
        let (mut values, mut mults) = encode(spec, start - 1)?;
        if values.contains(&v) {
            return Err(Error::ClassViolation {
                declared: spec.declared_class(),
                index: start,
                detail: format!("value {v} recurs after its block closed"),
            });
        }
        values.push(v);
        mults.push(None);
        return Ok(BlockSummary {
            values,
            mults,
            bounded: true,
            horizon: start - 1,
            next_value: None,
            tail_min: None,
        });
    }
    let mut end = horizon.max(1);
    while spec.gap(end + 1) == spec.gap(end) {
        end += 1;
    }
    let (values, mults) = encode(spec, end)?;
    let next = to_u64(&spec.gap(end + 1))?;
    if values.contains(&next) {
        return Err(Error::ClassViolation {
            declared: spec.declared_class(),
            index: end + 1,
            detail: format!("value {next} recurs after its block closed"),
        });
    }
    Ok(BlockSummary {
        values,
        mults,
        bounded: false,
        horizon: end,
        next_value: Some(next),
        tail_min: Some(spec.min_gap_from(end + 1)),
    })
}

/// A summary long enough for every length up to `n`: all gaps past it exceed `n`.
pub fn summary_covering(spec: &GapSpec, n: u64) -> Result<BlockSummary> {
    require_blockwise(spec)?;
    if spec.is_bounded() {
        return block_summary(spec, 1);
    }
    let stop = spec
        .eventually_at_least(&(BigInt::from(n) + 1))
        .ok_or_else(|| Error::Inconsistent("unbounded gap function stays below n".into()))?;
    block_summary(spec, stop.saturating_sub(1))
}

impl BlockSummary {
    /// Number of distinct values summarized (`b` for bounded words).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `j(r)` with `j(0) = 0`.
    fn j(&self, r: usize) -> u64 {
        if r == 0 {
            0
        } else {
            self.values[r - 1]
        }
    }

    /// `j(r+1)`, including the value right after the summary.
    fn j_next(&self, r: usize) -> Option<u64> {
        if r < self.values.len() {
            Some(self.values[r])
        } else {
            self.next_value
        }
    }

    /// `sign(p(r) - 1)`; an endless block counts as repeated.
    fn repeated(&self, r: usize) -> u64 {
        match self.mults[r - 1] {
            Some(1) => 0,
            _ => 1,
        }
    }

    fn j_max(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Errors unless every block past the summary has values above `n`.
    fn guard(&self, n: u64) -> Result<()> {
        if self.bounded {
            return Ok(());
        }
        match &self.tail_min {
            Some(t) if t > &BigInt::from(n) => Ok(()),
            t => Err(Error::HorizonTooShort {
                n,
                detail: format!(
                    "summary ends at gap {} and later gaps go down to {}",
                    self.horizon,
                    t.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "?".into())
                ),
            }),
        }
    }

    /// Upper end (exclusive) of the single-1 window for block `r`.
    fn single_one_limit(&self, r: usize) -> u64 {
        let j = self.j(r);
        j + self.j(r - 1).max(self.repeated(r) * j)
    }

    /// Single-1 special factors `0^x 1 0^y` with the 1 in block `r`.
    fn single_one(&self, r: usize, n: u64) -> bool {
        self.j(r) <= n && n < self.single_one_limit(r)
    }

    /// Special factors with several 1's, first gap inside block `r` and the
    /// next block larger.
    fn several_rising(&self, r: usize, n: u64) -> bool {
        let Some(p) = self.mults[r - 1] else { return false };
        let Some(next) = self.j_next(r) else { return false };
        let j = self.j(r);
        next > j && 2 * j <= n && n < p * j + self.j(r - 1).min(j)
    }

    /// Same, with the next block smaller.
    fn several_falling(&self, r: usize, n: u64) -> bool {
        let Some(p) = self.mults[r - 1] else { return false };
        let Some(next) = self.j_next(r) else { return false };
        let j = self.j(r);
        next < j && j + next <= n && n < (p - 1) * j + next + self.j(r - 1).min(j)
    }

    /// Per-system solution sets at `n`: single-1, rising, falling.
    pub fn solutions(&self, n: u64) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
        self.guard(n)?;
        let rs = 1..=self.values.len();
        let single = if self.bounded {
            rs.clone()
                .filter(|&r| {
                    self.single_one(r, n)
                        && (1..=self.values.len()).any(|r2| self.j(r) < self.j(r2) && n < self.single_one_limit(r2))
                })
                .collect()
        } else {
            rs.clone().filter(|&r| self.single_one(r, n)).collect()
        };
        let rising = rs.clone().filter(|&r| self.several_rising(r, n)).collect();
        let falling = rs.filter(|&r| self.several_falling(r, n)).collect();
        Ok((single, rising, falling))
    }
}

/// `s(n)` for a blockwise injective gap function.
///
/// Unbounded: one (for `0^n`) plus the solutions of the three systems.
/// Bounded: the single-1 system needs a witness block of strictly larger
/// value, the last block never ends, and `0^n` is special only while
/// `n <= j_max - 2`.
pub fn special_factors_blockwise(summary: &BlockSummary, n: u64) -> Result<u64> {
    let (single, rising, falling) = summary.solutions(n)?;
    let base = if summary.bounded {
        u64::from(n + 2 <= summary.j_max())
    } else {
        1
    };
    Ok(base + (single.len() + rising.len() + falling.len()) as u64)
}

/// `s(n)` for a non-decreasing gap function: one plus the number of `r`
/// with `j(r) <= n` and `j(r-1) + p(r) j(r) >= n+1`. For bounded `g` only
/// `r < b` count and `0^n` is special only while `n <= j(b) - 2`.
pub fn special_factors_nondecreasing(summary: &BlockSummary, n: u64) -> Result<u64> {
    if summary.values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSequence("block values are not increasing".into()));
    }
    summary.guard(n)?;
    let count = (1..=summary.values.len())
        .filter(|&r| match summary.mults[r - 1] {
            Some(p) => {
                let j = summary.j(r);
                j <= n && summary.j(r - 1) + p * j > n
            }
            None => false,
        })
        .count() as u64;
    let base = if summary.bounded {
        u64::from(n + 2 <= summary.j_max())
    } else {
        1
    };
    Ok(base + count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockMethod {
    Blockwise,
    NonDecreasing,
}

/// `f(1..=n_max)` from `f(n+1) = f(n) + s(n)`, with `f(1) = 2` unless every
/// gap is 1.
pub fn blockwise_table(spec: &GapSpec, n_max: u64, method: BlockMethod) -> Result<ComplexityProfile> {
    let summary = summary_covering(spec, n_max)?;
    let has_zero = summary.values.iter().any(|&v| v >= 2) || !summary.bounded;
    let mut f = vec![1 + u64::from(has_zero)];
    for n in 1..n_max {
        let s = match method {
            BlockMethod::Blockwise => special_factors_blockwise(&summary, n)?,
            BlockMethod::NonDecreasing => special_factors_nondecreasing(&summary, n)?,
        };
        f.push(f[n as usize - 1] + s);
    }
    ComplexityProfile::from_values(f)
}

/// Per-class bounds `(lower, upper)` on `Δf(n)`.
pub fn delta_bounds(class: GapClass, n: u64) -> Result<(u64, u64)> {
    Ok(match class {
        GapClass::StrictlyIncreasing => (1, n / 2 + 1),
        GapClass::Injective => (1, n + 1),
        GapClass::NonDecreasing => (0, n + 1),
        GapClass::BlockwiseInjective => (0, n * (n + 1) / 2 + 1),
        GapClass::None => {
            return Err(Error::ClassRequired {
                required: "blockwise-injective",
                declared: GapClass::None,
            })
        }
    })
}

/// Whether `f <= n^3/6 + 5n/6 + 1`.
pub fn within_cubic_bound(n: u64, f: u64) -> bool {
    let n = n as u128;
    6 * f as u128 <= n * n * n + 5 * n + 6
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::special_factors_injective;
    use crate::gap::TailRule;

    fn staircase() -> GapSpec {
        GapSpec::block_affine([1, 1], [1, 0]).unwrap()
    }

    #[test]
    fn summary_examples() {
        let s = block_summary(&staircase(), 10).unwrap();
        assert_eq!(s.values, vec![2, 3, 4, 5]);
        assert_eq!(s.mults, vec![Some(1), Some(2), Some(3), Some(4)]);
        assert_eq!(s.next_value, Some(6));

        let p = block_summary(&GapSpec::periodic(4).unwrap(), 100).unwrap();
        assert!(p.bounded);
        assert_eq!(p.values, vec![4]);
        assert_eq!(p.mults, vec![None]);

        let inc = block_summary(&GapSpec::linear(2, 1).unwrap(), 5).unwrap();
        assert_eq!(inc.values, vec![3, 5, 7, 9, 11]);
        assert!(inc.mults.iter().all(|&m| m == Some(1)));
    }

    #[test]
    fn summary_rejects_recurring_value() {
        let t = GapSpec::table(vec![2, 3, 3, 2], TailRule::Constant { value: Some(5) })
            .unwrap()
            .with_class(GapClass::BlockwiseInjective);
        assert!(matches!(
            block_summary(&t, 10),
            Err(Error::ClassViolation { index: 4, .. })
        ));
    }

    #[test]
    fn staircase_counts() {
        let sum = summary_covering(&staircase(), 20).unwrap();
        let got: Vec<u64> = (1..=11)
            .map(|n| special_factors_nondecreasing(&sum, n).unwrap())
            .collect();
        assert_eq!(got, vec![1, 1, 2, 3, 4, 5, 6, 6, 7, 8, 9]);
        for n in 1..=20 {
            assert_eq!(
                special_factors_blockwise(&sum, n).unwrap(),
                special_factors_nondecreasing(&sum, n).unwrap()
            );
        }
    }

    #[test]
    fn short_horizon_is_an_error() {
        let s = block_summary(&staircase(), 3).unwrap();
        assert!(matches!(
            special_factors_blockwise(&s, 10),
            Err(Error::HorizonTooShort { .. })
        ));
        assert!(special_factors_blockwise(&s, 3).is_ok());
    }

    #[test]
    fn periodic_counts() {
        let s = block_summary(&GapSpec::periodic(3).unwrap(), 1).unwrap();
        assert_eq!(special_factors_nondecreasing(&s, 1).unwrap(), 1);
        assert_eq!(special_factors_nondecreasing(&s, 2).unwrap(), 0);
        assert_eq!(special_factors_nondecreasing(&s, 3).unwrap(), 0);
        let t = blockwise_table(&GapSpec::periodic(5).unwrap(), 20, BlockMethod::Blockwise).unwrap();
        assert!((4..=20).all(|n| t.f(n) == Some(5)));
    }

    #[test]
    fn injective_agreement() {
        for spec in [GapSpec::linear(2, 1).unwrap(), GapSpec::polynomial(2).unwrap()] {
            let sum = summary_covering(&spec, 300).unwrap();
            for n in 1..=300 {
                let a = special_factors_blockwise(&sum, n).unwrap();
                assert_eq!(a, special_factors_nondecreasing(&sum, n).unwrap());
                assert_eq!(a, special_factors_injective(&spec, n).unwrap());
            }
        }
    }

    #[test]
    fn systems_are_disjoint() {
        let spec = GapSpec::table(vec![5, 5, 5, 2, 2, 9, 3, 3, 3, 3, 12], TailRule::Linear { c: 3, d: 0 })
            .unwrap()
            .with_class(GapClass::BlockwiseInjective);
        let sum = summary_covering(&spec, 60).unwrap();
        for n in 1..=60 {
            // the single-1 system may share an r with the others: those
            // solutions count different factors
            let (_, b, c) = sum.solutions(n).unwrap();
            assert!(b.iter().all(|r| !c.contains(r)));
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(delta_bounds(GapClass::StrictlyIncreasing, 7).unwrap(), (1, 4));
        assert_eq!(delta_bounds(GapClass::NonDecreasing, 5).unwrap(), (0, 6));
        assert_eq!(delta_bounds(GapClass::BlockwiseInjective, 4).unwrap(), (0, 11));
        assert!(within_cubic_bound(3, 8));
        assert!(!within_cubic_bound(3, 9));
    }
}
