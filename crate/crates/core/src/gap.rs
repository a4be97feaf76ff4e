//! Gap functions, the 1-distribution function and word prefixes.
//!
//! A binary word containing infinitely many 1's is determined by its gap
//! function `g`: `g(i)` is the distance from the `(i-1)`-th 1 to the `i`-th 1,
//! with a virtual 0-th 1 at position 0. The 1-distribution function is
//! `G(i) = g(1) + ... + g(i)`, the (1-based) position of the `i`-th 1.

use std::collections::HashSet;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Default cap on materialized prefix length, in bits.
pub const DEFAULT_MAX_PREFIX_BITS: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_MAX_PREFIX_BITS`].
pub const MAX_PREFIX_ENV: &str = "GAPWORDS_MAX_PREFIX_BITS";

/// The resource guard currently in force.
pub fn max_prefix_bits() -> u64 {
    std::env::var(MAX_PREFIX_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_PREFIX_BITS)
}

/// Regularity class of a gap function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapClass {
    StrictlyIncreasing,
    Injective,
    NonDecreasing,
    BlockwiseInjective,
    None,
}

impl GapClass {
    /// Whether every function of class `self` also belongs to `other`.
    pub fn implies(self, other: GapClass) -> bool {
        use GapClass::*;
        match (self, other) {
            (a, b) if a == b => true,
            (_, None) => true,
            (StrictlyIncreasing, _) => true,
            (Injective | NonDecreasing, BlockwiseInjective) => true,
            _ => false,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GapClass::StrictlyIncreasing => "strictly-increasing",
            GapClass::Injective => "injective",
            GapClass::NonDecreasing => "non-decreasing",
            GapClass::BlockwiseInjective => "blockwise-injective",
            GapClass::None => "none",
        }
    }
}

impl fmt::Display for GapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Continuation of an explicit gap table past its last entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum TailRule {
    /// `g(i) = c*i + d`.
    Linear { c: i64, d: i64 },
    /// `g(i) = g(i-1) + g(i-2)`.
    SumPrevTwo,
    /// Zero runs `n_i = n_{i-a} + n_{i-a+1} + 1`, i.e. `g(i) = g(i-a) + g(i-a+1)`.
    RunRecurrence { a: usize },
    /// Repeats `value` forever (the last table entry when omitted).
    Constant {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<u64>,
    },
}

/// The finitely described rule behind a gap function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum GapKind {
    /// `G(i) = i^k`.
    #[serde(rename = "polynomial_G")]
    PolynomialG { k: u32 },
    /// `G(i) = k^(i-1)` for `i >= 1`.
    #[serde(rename = "exponential_G")]
    ExponentialG { k: u32 },
    /// `g(i) = c*i + d`.
    #[serde(rename = "linear_gap")]
    LinearGap { c: i64, d: i64 },
    #[serde(rename = "explicit_table")]
    ExplicitTable { gaps: Vec<u64>, tail: TailRule },
    /// Seed zero runs `n_0 .. n_{2a-1}` continued by `n_i = n_{i-a} + n_{i-a+1} + 1`.
    #[serde(rename = "run_recurrence")]
    RunRecurrence { a: usize, seed_runs: Vec<u64> },
    /// `g(i) = b` for every `i`.
    #[serde(rename = "periodic_run")]
    PeriodicRun { b: u64 },
    /// Block `r` holds the value `value[0]*r + value[1]` repeated
    /// `multiplicity[0]*r + multiplicity[1]` times.
    #[serde(rename = "block_affine")]
    BlockAffine { value: [i64; 2], multiplicity: [i64; 2] },
}

#[derive(Clone, Debug)]
enum Tail {
    Linear { c: BigInt, d: BigInt },
    Additive { order: usize },
    Constant(BigInt),
}

#[derive(Clone, Debug)]
enum Generator {
    Polynomial(u32),
    Exponential(u32),
    Linear { c: BigInt, d: BigInt },
    Periodic(BigInt),
    Sequence { table: Vec<BigInt>, tail: Tail },
    Blocks { value: (i64, i64), mult: (i64, i64) },
}

#[derive(Clone, Debug, Default)]
struct Cache {
    /// `gaps[i - 1] = g(i)`
    gaps: Vec<BigInt>,
    /// `dist[i] = G(i)`, `dist[0] = 0`
    dist: Vec<BigInt>,
}

/// A gap function together with its declared regularity class.
///
/// Gap and distribution values are exact. Kinds without a closed formula
/// memoize into a grow-only cache behind a lock, so a spec can be shared
/// across threads.
pub struct GapSpec {
    kind: GapKind,
    class: GapClass,
    gen: Generator,
    cache: RwLock<Cache>,
}

impl Clone for GapSpec {
    fn clone(&self) -> Self {
        GapSpec {
            kind: self.kind.clone(),
            class: self.class,
            gen: self.gen.clone(),
            cache: RwLock::new(Cache::default()),
        }
    }
}

impl fmt::Debug for GapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GapSpec")
            .field("kind", &self.kind)
            .field("class", &self.class)
            .finish()
    }
}

impl PartialEq for GapSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.class == other.class
    }
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidSpec(msg.into()))
}

impl GapSpec {
    /// Builds a spec, declaring `class` or, when `None`, the class the rule
    /// provably has.
    pub fn new(kind: GapKind, class: Option<GapClass>) -> Result<Self> {
        let gen = Self::generator(&kind)?;
        let mut spec = GapSpec {
            kind,
            class: GapClass::None,
            gen,
            cache: RwLock::new(Cache::default()),
        };
        spec.class = match class {
            Some(c) => c,
            None => spec.provable_class(),
        };
        Ok(spec)
    }

    pub fn polynomial(k: u32) -> Result<Self> {
        Self::new(GapKind::PolynomialG { k }, None)
    }

    pub fn exponential(k: u32) -> Result<Self> {
        Self::new(GapKind::ExponentialG { k }, None)
    }

    pub fn linear(c: i64, d: i64) -> Result<Self> {
        Self::new(GapKind::LinearGap { c, d }, None)
    }

    pub fn periodic(b: u64) -> Result<Self> {
        Self::new(GapKind::PeriodicRun { b }, None)
    }

    pub fn table(gaps: Vec<u64>, tail: TailRule) -> Result<Self> {
        Self::new(GapKind::ExplicitTable { gaps, tail }, None)
    }

    pub fn run_recurrence(a: usize, seed_runs: Vec<u64>) -> Result<Self> {
        Self::new(GapKind::RunRecurrence { a, seed_runs }, None)
    }

    pub fn block_affine(value: [i64; 2], multiplicity: [i64; 2]) -> Result<Self> {
        Self::new(GapKind::BlockAffine { value, multiplicity }, None)
    }

    /// Same rule, different declared class.
    pub fn with_class(mut self, class: GapClass) -> Self {
        self.class = class;
        self
    }

    fn generator(kind: &GapKind) -> Result<Generator> {
        Ok(match kind {
            GapKind::PolynomialG { k } => {
                if *k < 2 {
                    return invalid(format!("polynomial_G needs k >= 2, got {k}"));
                }
                Generator::Polynomial(*k)
            }
            GapKind::ExponentialG { k } => {
                if *k < 2 {
                    return invalid(format!("exponential_G needs k >= 2, got {k}"));
                }
                Generator::Exponential(*k)
            }
            GapKind::LinearGap { c, d } => {
                if *c < 1 || c + d < 1 {
                    return invalid(format!("linear_gap needs c >= 1 and c + d >= 1, got c={c}, d={d}"));
                }
                Generator::Linear {
                    c: BigInt::from(*c),
                    d: BigInt::from(*d),
                }
            }
            GapKind::PeriodicRun { b } => {
                if *b < 2 {
                    return invalid(format!("periodic_run needs b >= 2, got {b}"));
                }
                Generator::Periodic(big(*b))
            }
            GapKind::ExplicitTable { gaps, tail } => {
                if gaps.is_empty() {
                    return invalid("explicit_table needs at least one gap");
                }
                if let Some(pos) = gaps.iter().position(|&g| g == 0) {
                    return invalid(format!("gap {} is zero", pos + 1));
                }
                let len = gaps.len();
                let tail = match tail {
                    TailRule::Linear { c, d } => {
                        let first = c.checked_mul(len as i64 + 1).and_then(|v| v.checked_add(*d));
                        if *c < 1 || first.is_none_or(|v| v < 1) {
                            return invalid("linear tail needs c >= 1 and a positive first tail gap");
                        }
                        Tail::Linear {
                            c: BigInt::from(*c),
                            d: BigInt::from(*d),
                        }
                    }
                    TailRule::SumPrevTwo => {
                        if len < 2 {
                            return invalid("sum_prev_two tail needs at least two table gaps");
                        }
                        Tail::Additive { order: 2 }
                    }
                    TailRule::RunRecurrence { a } => {
                        if *a < 2 || len < *a {
                            return invalid(format!(
                                "run_recurrence tail of order {a} needs a >= 2 and at least {a} table gaps"
                            ));
                        }
                        Tail::Additive { order: *a }
                    }
                    TailRule::Constant { value } => {
                        let v = value.unwrap_or(gaps[len - 1]);
                        if v == 0 {
                            return invalid("constant tail value must be positive");
                        }
                        Tail::Constant(big(v))
                    }
                };
                Generator::Sequence {
                    table: gaps.iter().map(|&g| big(g)).collect(),
                    tail,
                }
            }
            GapKind::RunRecurrence { a, seed_runs } => {
                if *a < 2 {
                    return invalid(format!("run_recurrence needs order a >= 2, got {a}"));
                }
                if seed_runs.len() != 2 * a {
                    return invalid(format!(
                        "run_recurrence of order {a} needs exactly {} seed runs, got {}",
                        2 * a,
                        seed_runs.len()
                    ));
                }
                Generator::Sequence {
                    table: seed_runs.iter().map(|&n| big(n) + 1).collect(),
                    tail: Tail::Additive { order: *a },
                }
            }
            GapKind::BlockAffine { value, multiplicity } => {
                if value[0] < 1 || value[0] + value[1] < 1 {
                    return invalid("block_affine values need slope >= 1 and a positive first value");
                }
                if multiplicity[0] < 0 || multiplicity[0] + multiplicity[1] < 1 {
                    return invalid("block_affine multiplicities need slope >= 0 and a positive first block");
                }
                Generator::Blocks {
                    value: (value[0], value[1]),
                    mult: (multiplicity[0], multiplicity[1]),
                }
            }
        })
    }

    /// The class the rule provably belongs to, used when none is declared.
    fn provable_class(&self) -> GapClass {
        match &self.gen {
            Generator::Polynomial(_) | Generator::Linear { .. } => GapClass::StrictlyIncreasing,
            Generator::Exponential(k) => {
                // g(1) = g(2) = 1 when k = 2
                if *k >= 3 {
                    GapClass::StrictlyIncreasing
                } else {
                    GapClass::NonDecreasing
                }
            }
            Generator::Periodic(_) | Generator::Blocks { .. } => GapClass::NonDecreasing,
            Generator::Sequence { table, tail } => {
                // Monotonicity of g(1..=len+1) propagates through linear and
                // additive tails by induction on g(i) - g(i-1).
                let upto = table.len() as u64 + 1;
                let head: Vec<BigInt> = (1..=upto).map(|i| self.gap(i)).collect();
                let strict = head.windows(2).all(|w| w[0] < w[1]);
                let weak = head.windows(2).all(|w| w[0] <= w[1]);
                match tail {
                    Tail::Constant(_) if weak => GapClass::NonDecreasing,
                    Tail::Constant(_) => GapClass::None,
                    _ if strict => GapClass::StrictlyIncreasing,
                    _ if weak => GapClass::NonDecreasing,
                    _ => GapClass::None,
                }
            }
        }
    }

    pub fn kind(&self) -> &GapKind {
        &self.kind
    }

    pub fn declared_class(&self) -> GapClass {
        self.class
    }

    /// `g(i)`, with `g(0) = 0`.
    pub fn gap(&self, i: u64) -> BigInt {
        if i == 0 {
            return BigInt::zero();
        }
        match &self.gen {
            Generator::Polynomial(k) => {
                let k = *k;
                big(i).pow(k) - big(i - 1).pow(k)
            }
            Generator::Exponential(k) => {
                if i == 1 {
                    BigInt::one()
                } else {
                    BigInt::from(k - 1) * BigInt::from(*k).pow((i - 2) as u32)
                }
            }
            Generator::Linear { c, d } => c * big(i) + d,
            Generator::Periodic(b) => b.clone(),
            Generator::Sequence { .. } | Generator::Blocks { .. } => {
                self.ensure(i);
                self.cache.read().unwrap().gaps[(i - 1) as usize].clone()
            }
        }
    }

    /// `G(i)`, the position of the `i`-th 1, with `G(0) = 0`.
    pub fn distribution(&self, i: u64) -> BigInt {
        if i == 0 {
            return BigInt::zero();
        }
        match &self.gen {
            Generator::Polynomial(k) => big(i).pow(*k),
            Generator::Exponential(k) => BigInt::from(*k).pow((i - 1) as u32),
            Generator::Linear { c, d } => c * big(i) * big(i + 1) / 2 + d * big(i),
            Generator::Periodic(b) => b * big(i),
            Generator::Sequence { .. } | Generator::Blocks { .. } => {
                self.ensure(i);
                self.cache.read().unwrap().dist[i as usize].clone()
            }
        }
    }

    /// Zero run `n_i = g(i+1) - 1`; `n_0` is the run before the first 1.
    pub fn run(&self, i: u64) -> BigInt {
        self.gap(i + 1) - 1
    }

    fn ensure(&self, i: u64) {
        if self.cache.read().unwrap().gaps.len() as u64 >= i {
            return;
        }
        let mut cache = self.cache.write().unwrap();
        if cache.dist.is_empty() {
            cache.dist.push(BigInt::zero());
        }
        while (cache.gaps.len() as u64) < i {
            let next = self.next_cached_gap(&cache.gaps);
            let total = cache.dist.last().unwrap() + &next;
            cache.gaps.push(next);
            cache.dist.push(total);
        }
    }

    fn next_cached_gap(&self, gaps: &[BigInt]) -> BigInt {
        let idx = gaps.len() + 1;
        match &self.gen {
            Generator::Sequence { table, tail } => {
                if idx <= table.len() {
                    return table[idx - 1].clone();
                }
                match tail {
                    Tail::Linear { c, d } => c * BigInt::from(idx) + d,
                    Tail::Additive { order } => &gaps[idx - order - 1] + &gaps[idx - order],
                    Tail::Constant(v) => v.clone(),
                }
            }
            Generator::Blocks { value, mult } => {
                let r = block_of(idx as u64, *mult);
                BigInt::from(value.0) * BigInt::from(r) + BigInt::from(value.1)
            }
            _ => unreachable!("closed-form kinds are not cached"),
        }
    }

    /// Exact infimum of `g(t)` over all `t >= i` (`i >= 1`).
    pub fn min_gap_from(&self, i: u64) -> BigInt {
        let i = i.max(1);
        match &self.gen {
            Generator::Periodic(b) => b.clone(),
            Generator::Polynomial(_)
            | Generator::Exponential(_)
            | Generator::Linear { .. }
            | Generator::Blocks { .. } => self.gap(i),
            Generator::Sequence { table, tail } => {
                let len = table.len() as u64;
                let head = (i..=len).map(|t| self.gap(t)).min();
                let start = i.max(len + 1);
                let rest = match tail {
                    Tail::Linear { .. } => self.gap(start),
                    Tail::Constant(v) => v.clone(),
                    // Every tail term exceeds the minimum of the `order` terms
                    // before it, so the first window holds the infimum.
                    Tail::Additive { order } => (start..start + *order as u64).map(|t| self.gap(t)).min().unwrap(),
                };
                match head {
                    Some(h) if h < rest => h,
                    _ => rest,
                }
            }
        }
    }

    /// For ultimately constant gap functions: `(s, v)` with `g(t) = v` for all `t >= s`.
    pub fn constant_tail(&self) -> Option<(u64, BigInt)> {
        match &self.gen {
            Generator::Periodic(b) => Some((1, b.clone())),
            Generator::Sequence {
                table,
                tail: Tail::Constant(v),
            } => {
                let mut start = table.len() as u64 + 1;
                while start > 1 && &table[start as usize - 2] == v {
                    start -= 1;
                }
                Some((start, v.clone()))
            }
            _ => None,
        }
    }

    /// Whether the gap function is bounded (the word is ultimately periodic).
    pub fn is_bounded(&self) -> bool {
        self.constant_tail().is_some()
    }

    /// The least index `I` with `g(t) >= bound` for every `t >= I`, if any.
    pub fn eventually_at_least(&self, bound: &BigInt) -> Option<u64> {
        if let Some((_, v)) = self.constant_tail() {
            if &v < bound {
                return None;
            }
        }
        let ok = |t: u64| &self.min_gap_from(t) >= bound;
        Some(crate::search::least_satisfying(1, ok))
    }

    /// Materializes the first `length` letters under the configured resource guard.
    pub fn prefix(&self, length: u64) -> Result<BinaryPrefix> {
        self.prefix_with_cap(length, max_prefix_bits())
    }

    pub fn prefix_with_cap(&self, length: u64, cap: u64) -> Result<BinaryPrefix> {
        if length > cap {
            return Err(Error::ResourceGuard {
                requested: big(length),
                cap,
            });
        }
        let mut bits = vec![0u8; length as usize];
        let mut runs = Vec::new();
        let mut i = 1u64;
        loop {
            let pos = self.distribution(i);
            match pos.to_u64() {
                Some(p) if p <= length => {
                    bits[(p - 1) as usize] = 1;
                    runs.push(self.gap(i).to_u64().unwrap() - 1);
                    i += 1;
                }
                _ => break,
            }
        }
        Ok(BinaryPrefix { bits, runs })
    }

    /// Parses the JSON form, e.g. `{"kind":"linear_gap","c":2,"d":1}`, with
    /// an optional `"class"` member.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        Self::from_json_value(value)
    }

    pub fn from_json_value(mut value: Value) -> Result<Self> {
        let class = match value.as_object_mut() {
            Some(obj) => match obj.remove("class") {
                Some(c) => Some(serde_json::from_value::<GapClass>(c)?),
                None => None,
            },
            None => return invalid("spec must be a JSON object"),
        };
        let kind: GapKind = serde_json::from_value(value)?;
        Self::new(kind, class)
    }

    pub fn to_json_value(&self) -> Value {
        let mut value = serde_json::to_value(&self.kind).expect("kinds serialize");
        if let Some(obj) = value.as_object_mut() {
            obj.insert(
                "class".into(),
                serde_json::to_value(self.class).expect("classes serialize"),
            );
        }
        value
    }
}

/// Block index containing gap index `i` when block `r` has `mc*r + md` entries.
fn block_of(i: u64, (mc, md): (i64, i64)) -> u64 {
    let filled = |r: u64| -> i128 {
        let r = r as i128;
        mc as i128 * r * (r + 1) / 2 + md as i128 * r
    };
    crate::search::least_satisfying(1, |r| filled(r) >= i as i128)
}

/// A materialized finite prefix of a gap word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryPrefix {
    bits: Vec<u8>,
    runs: Vec<u64>,
}

impl BinaryPrefix {
    /// Wraps raw letters; runs are recomputed from the 1's present.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidSequence("letters must be 0 or 1".into()));
        }
        let mut runs = Vec::new();
        let mut zeros = 0u64;
        for &b in &bits {
            if b == 1 {
                runs.push(zeros);
                zeros = 0;
            } else {
                zeros += 1;
            }
        }
        Ok(BinaryPrefix { bits, runs })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bits = text
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::InvalidSequence(format!("unexpected letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(bits)
    }

    pub fn len(&self) -> u64 {
        self.bits.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Zero runs terminated by a 1 inside the prefix: `n_0, n_1, ...`.
    pub fn runs(&self) -> &[u64] {
        &self.runs
    }
}

impl fmt::Display for BinaryPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Regularity observed on `g(1..=horizon)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub horizon: u64,
    pub declared: GapClass,
    pub strictly_increasing: bool,
    pub injective: bool,
    pub non_decreasing: bool,
    pub blockwise_injective: bool,
    pub bounded: bool,
}

impl ClassReport {
    pub fn satisfies(&self, class: GapClass) -> bool {
        match class {
            GapClass::StrictlyIncreasing => self.strictly_increasing,
            GapClass::Injective => self.injective,
            GapClass::NonDecreasing => self.non_decreasing,
            GapClass::BlockwiseInjective => self.blockwise_injective,
            GapClass::None => true,
        }
    }
}

/// Checks the regularity classes of `g` on `1..=horizon`.
///
/// A contradiction with the declared class is an error: closed forms built
/// on that declaration would be wrong.
pub fn classify(spec: &GapSpec, horizon: u64) -> Result<ClassReport> {
    if horizon < 2 {
        return Err(Error::InvalidSpec("classify needs horizon >= 2".into()));
    }
    // index of first violation for each property
    let mut strict = None;
    let mut inj = None;
    let mut nondec = None;
    let mut block = None;

    let mut seen: HashSet<BigInt> = HashSet::new();
    let mut closed: HashSet<BigInt> = HashSet::new();
    let mut prev = spec.gap(1);
    seen.insert(prev.clone());
    for i in 2..=horizon {
        let cur = spec.gap(i);
        if cur <= prev && strict.is_none() {
            strict = Some((i, format!("g({}) = {prev} >= g({i}) = {cur}", i - 1)));
        }
        if cur < prev && nondec.is_none() {
            nondec = Some((i, format!("g({}) = {prev} > g({i}) = {cur}", i - 1)));
        }
        if cur != prev {
            closed.insert(prev.clone());
            if closed.contains(&cur) && block.is_none() {
                block = Some((i, format!("value {cur} recurs after its block closed")));
            }
        }
        if !seen.insert(cur.clone()) && inj.is_none() {
            inj = Some((i, format!("value {cur} repeats")));
        }
        prev = cur;
    }

    let report = ClassReport {
        horizon,
        declared: spec.declared_class(),
        strictly_increasing: strict.is_none(),
        injective: inj.is_none(),
        non_decreasing: nondec.is_none(),
        blockwise_injective: block.is_none(),
        bounded: spec.is_bounded(),
    };

    let declared = spec.declared_class();
    let violation = match declared {
        GapClass::StrictlyIncreasing => strict,
        GapClass::Injective => inj,
        GapClass::NonDecreasing => nondec,
        GapClass::BlockwiseInjective => block,
        GapClass::None => None,
    };
    if let Some((index, detail)) = violation {
        return Err(Error::ClassViolation {
            declared,
            index,
            detail,
        });
    }
    Ok(report)
}

/// Converts an exact value to `u64`.
pub(crate) fn to_u64(v: &BigInt) -> Result<u64> {
    if v.is_negative() {
        return Err(Error::Overflow(v.clone()));
    }
    v.to_u64().ok_or_else(|| Error::Overflow(v.clone()))
}
