//! Words whose complexity is ultimately affine.
//!
//! For `a >= 2` the seed diagram has parts `1..=a`, `floor(k0/2)` and
//! `k0-a+1..=k0-1` inside a rectangle of width `k0`. A pair of steps (raise
//! every part and widen by one, then widen by one again) adds `2a + 1` to the
//! complexity, so `i0` pairs land on `f(K) = aK + b`. The additive run
//! recurrence keeps `s` at `a` from there on.

use serde::Serialize;

use crate::closed_form::complexity_closed;
use crate::diagram::PrefixDiagram;
use crate::error::{Error, Result};
use crate::gap::{GapClass, GapSpec, TailRule};
use crate::oracle::{oracle_table, CountingBackend};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineWord {
    pub a: i64,
    pub b: i64,
    #[serde(skip)]
    pub spec: GapSpec,
    pub seed_runs: Vec<u64>,
    pub runs: Vec<u64>,
    pub k0: u64,
    /// `f(k0)` of the seed word, read off its diagram.
    pub seed_complexity: u64,
    pub i0: u64,
    /// From `K` on, `f(n) = a*n + b`.
    #[serde(rename = "K")]
    pub k: u64,
    /// Steps that add one to every part and widen the diagram.
    pub odd_steps: u64,
    /// Steps that only widen the diagram.
    pub even_steps: u64,
}

/// Least `k0 >= 2a + 4` with `k0 + a^2 < a*k0 + b`.
pub fn seed_width(a: i64, b: i64) -> u64 {
    let floor = 2 * a + 4;
    // (a - 1) k0 > a^2 - b
    let needed = (a * a - b).div_euclid(a - 1) + 1;
    floor.max(needed) as u64
}

pub fn seed_runs(a: u64, k0: u64) -> Vec<u64> {
    let parts = (1..=a).chain([k0 / 2]).chain(k0 - a + 1..k0);
    parts.map(|p| p - 1).collect()
}

/// A gap increasing word with `f(n) = a*n + b` for all large `n`, checked
/// against factor enumeration at the threshold.
pub fn build_affine_word(a: i64, b: i64) -> Result<AffineWord> {
    if a < 2 {
        return Err(Error::AffineUnrealizable { a, b });
    }
    let k0 = seed_width(a, b);
    let seed = seed_runs(a as u64, k0);
    let seed_complexity = PrefixDiagram::from_runs(&seed, k0 - 1)?.complexity_next();
    let seed_spec = GapSpec::run_recurrence(a as usize, seed.clone())?.with_class(GapClass::StrictlyIncreasing);
    let closed = complexity_closed(&seed_spec, k0)?;
    if closed != seed_complexity {
        return Err(Error::Inconsistent(format!(
            "seed diagram gives f({k0}) = {seed_complexity}, closed form gives {closed}"
        )));
    }
    let target = a as i128 * k0 as i128 + b as i128;
    let i0 = u64::try_from(target - seed_complexity as i128)
        .map_err(|_| Error::Inconsistent(format!("seed complexity {seed_complexity} exceeds a*k0 + b = {target}")))?;
    let runs: Vec<u64> = seed.iter().map(|&r| r + i0).collect();
    let spec = GapSpec::run_recurrence(a as usize, runs.clone())?.with_class(GapClass::StrictlyIncreasing);
    let k = k0 + 2 * i0;
    let word = AffineWord {
        a,
        b,
        spec,
        seed_runs: seed,
        runs,
        k0,
        seed_complexity,
        i0,
        k,
        odd_steps: i0,
        even_steps: i0,
    };
    verify_affine(&word.spec, a, b, k)?;
    Ok(word)
}

fn verify_affine(spec: &GapSpec, a: i64, b: i64, k: u64) -> Result<()> {
    let table = oracle_table(spec, k, CountingBackend::Automaton)?;
    let f = table[k as usize - 1].distinct_count as i128;
    let s = table[k as usize - 2].special_count;
    let want = a as i128 * k as i128 + b as i128;
    if f != want {
        return Err(Error::VerificationFailed(format!("f({k}) = {f}, expected {want}")));
    }
    if s != a as u64 {
        return Err(Error::VerificationFailed(format!("s({}) = {s}, expected {a}", k - 1)));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockwiseAffineWord {
    pub a: i64,
    pub b: i64,
    #[serde(skip)]
    pub spec: GapSpec,
    /// From here on, `f(n) = a*n + b`.
    pub threshold: u64,
}

/// A blockwise injective word with `f(n) = a*n + b` for all large `n`.
///
/// Slope 0 comes from a periodic word, slope `>= 2` from the gap increasing
/// construction. Slope 1 would be Sturmian, which is not blockwise injective.
pub fn build_blockwise_affine(a: i64, b: i64) -> Result<BlockwiseAffineWord> {
    match (a, b) {
        (0, 1) => Ok(BlockwiseAffineWord {
            a,
            b,
            spec: GapSpec::table(vec![1], TailRule::Constant { value: Some(1) })?.with_class(GapClass::NonDecreasing),
            threshold: 1,
        }),
        (0, b) if b >= 2 => Ok(BlockwiseAffineWord {
            a,
            b,
            spec: GapSpec::periodic(b as u64)?,
            threshold: b as u64 - 1,
        }),
        (a, b) if a >= 2 => {
            let word = build_affine_word(a, b)?;
            Ok(BlockwiseAffineWord {
                a,
                b,
                threshold: word.k,
                spec: word.spec,
            })
        }
        _ => Err(Error::BlockwiseAffineUnrealizable { a, b }),
    }
}
