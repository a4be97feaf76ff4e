//! Closed-form complexity of gap increasing words and the injective
//! special-factor recurrence.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gap::{to_u64, GapClass, GapKind, GapSpec};
use crate::profile::ComplexityProfile;
use crate::search::{greatest_satisfying, least_satisfying};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableMethod {
    Closed,
    Recurrence,
}

/// The closed form needs the distances between consecutive 1's to grow.
/// `exponential_G(2)` has `g(1) = g(2) = 1` but its distances still make the
/// formula exact, so it is admitted by kind.
fn require_closed(spec: &GapSpec) -> Result<()> {
    if spec.declared_class() == GapClass::StrictlyIncreasing || matches!(spec.kind(), GapKind::ExponentialG { .. }) {
        Ok(())
    } else {
        Err(Error::ClassRequired {
            required: "strictly-increasing",
            declared: spec.declared_class(),
        })
    }
}

fn require_injective(spec: &GapSpec) -> Result<()> {
    if spec.declared_class().implies(GapClass::Injective) {
        Ok(())
    } else {
        Err(Error::ClassRequired {
            required: "injective",
            declared: spec.declared_class(),
        })
    }
}

/// `L_n`: the least `l >= 0` with `g(l+1) + g(l+2) >= n+1`.
pub fn find_l(spec: &GapSpec, n: u64) -> Result<u64> {
    require_closed(spec)?;
    let target = BigInt::from(n) + 1;
    Ok(least_satisfying(0u64, |l| spec.gap(l + 1) + spec.gap(l + 2) >= target))
}

/// `M_n`: the greatest `m >= 0` with `g(m+1) <= n-1`, defined for `n > g(1)`.
pub fn find_m(spec: &GapSpec, n: u64) -> Result<u64> {
    require_closed(spec)?;
    let first = spec.gap(1);
    if BigInt::from(n) <= first {
        return Err(Error::MUndefined { n, first_gap: first });
    }
    let bound = BigInt::from(n) - 1;
    Ok(greatest_satisfying(0u64, |m| spec.gap(m + 1) <= bound))
}

/// `f(n)` from `G(L) + G(L+1) - G(M+1) + n(M-L) + n + 1`, or `n+1` when `n <= g(1)`.
pub fn complexity_closed(spec: &GapSpec, n: u64) -> Result<u64> {
    require_closed(spec)?;
    if n == 0 {
        return Ok(1);
    }
    if BigInt::from(n) <= spec.gap(1) {
        return Ok(n + 1);
    }
    let l = find_l(spec, n)?;
    let m = find_m(spec, n)?;
    let nb = BigInt::from(n);
    let f = spec.distribution(l) + spec.distribution(l + 1) - spec.distribution(m + 1)
        + &nb * (BigInt::from(m) - BigInt::from(l))
        + nb
        + BigInt::one();
    to_u64(&f)
}

/// Right special factors of length `n` for an injective gap function:
/// one (for `0^n`) plus the number of `l >= 1` with `g(l) <= n` and
/// `g(l-1) + g(l) >= n+1`, where `g(0) = 0`.
pub fn special_factors_injective(spec: &GapSpec, n: u64) -> Result<u64> {
    require_injective(spec)?;
    let nb = BigInt::from(n);
    let target = &nb + 1;
    let Some(stop) = spec.eventually_at_least(&target) else {
        return Err(Error::Inconsistent("injective gap function is bounded".into()));
    };
    let count = (1..stop)
        .filter(|&l| {
            let g = spec.gap(l);
            g <= nb && spec.gap(l - 1) + g >= target
        })
        .count() as u64;
    Ok(1 + count)
}

/// `s(n) = M_{n+1} - L_n + 1` for strictly increasing gaps and `n >= g(1)`;
/// `s(n) = 1` below the first gap.
pub fn special_factors_increasing(spec: &GapSpec, n: u64) -> Result<u64> {
    require_closed(spec)?;
    if BigInt::from(n) < spec.gap(1) {
        return Ok(1);
    }
    let m = find_m(spec, n + 1)?;
    let l = find_l(spec, n)?;
    (m + 1)
        .checked_sub(l)
        .ok_or_else(|| Error::Inconsistent(format!("M_(n+1) < L_n - 1 at n = {n}")))
}

/// `f(1..=n_max)` by the closed form or by summing the injective recurrence
/// `f(n+1) = f(n) + s(n)` from `f(1) = 2`.
pub fn complexity_table(spec: &GapSpec, n_max: u64, method: TableMethod) -> Result<ComplexityProfile> {
    if n_max < 1 {
        return Err(Error::InvalidProfile("n_max must be positive".into()));
    }
    let values = match method {
        TableMethod::Closed => {
            require_closed(spec)?;
            (1..=n_max)
                .map(|n| complexity_closed(spec, n))
                .collect::<Result<Vec<_>>>()?
        }
        TableMethod::Recurrence => {
            let s = special_counts_injective(spec, n_max.saturating_sub(1))?;
            let mut f = Vec::with_capacity(n_max as usize);
            f.push(2u64);
            for n in 1..n_max {
                let next = f[n as usize - 1] + s[n as usize];
                f.push(next);
            }
            f
        }
    };
    ComplexityProfile::from_values(values)
}

/// `s(0..=n_max)` for an injective gap function in one pass: index `l`
/// contributes to every `n` in `[g(l), g(l-1) + g(l) - 1]`.
pub fn special_counts_injective(spec: &GapSpec, n_max: u64) -> Result<Vec<u64>> {
    require_injective(spec)?;
    let size = n_max as usize + 2;
    let mut diff = vec![0i64; size];
    let target = BigInt::from(n_max) + 1;
    let Some(stop) = spec.eventually_at_least(&target) else {
        return Err(Error::Inconsistent("injective gap function is bounded".into()));
    };
    let mut prev = BigInt::from(0);
    for l in 1..stop {
        let g = spec.gap(l);
        let hi = &prev + &g - 1;
        if g <= BigInt::from(n_max) && hi >= g {
            let lo = to_u64(&g)? as usize;
            let hi = if hi > BigInt::from(n_max) {
                n_max as usize
            } else {
                to_u64(&hi)? as usize
            };
            diff[lo] += 1;
            diff[hi + 1] -= 1;
        }
        prev = g;
    }
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut acc = 0i64;
    for d in diff.iter().take(n_max as usize + 1) {
        acc += d;
        out.push(1 + acc as u64);
    }
    Ok(out)
}

/// `ceil(n/2) * floor(n/2) + ceil(n/2) + 1`, the largest complexity of a gap
/// increasing word, attained by `g(i) = i`.
pub fn max_complexity(n: u64) -> u64 {
    let hi = n.div_ceil(2);
    let lo = n / 2;
    hi * lo + hi + 1
}
