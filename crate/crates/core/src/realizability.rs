//! Deciding whether a complexity table belongs to a gap increasing word, and
//! building the witness words when it does.
//!
//! For a candidate word `0^p 1 0^{j_1} 1 0^{j_2} 1 ...`, the lengths `n` with
//! `Δ²f(n) = +1` are the runs `j_i` that are not a double gap, and those with
//! `Δ²f(n) = -1` are the double-gap lengths plus one (`σ_p` values) that are
//! not runs. Given the marker sets `A` and `B` of a profile, the runs are
//! forced one after another, so each `p` yields at most one word.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gap::{GapClass, GapSpec, TailRule};
use crate::oracle::{delta2_case, oracle_table, CountingBackend};
use crate::profile::ComplexityProfile;

fn strictly_increasing(x: &[u64]) -> bool {
    x.windows(2).all(|w| w[0] < w[1])
}

/// `{p + x_1 + 1, x_1 + x_2 + 1, x_2 + x_3 + 1, ...}`.
pub fn sigma_p(x: &[u64], p: u64) -> Result<Vec<u64>> {
    if !strictly_increasing(x) {
        return Err(Error::InvalidSequence("sequence is not strictly increasing".into()));
    }
    let Some(&first) = x.first() else {
        return Ok(Vec::new());
    };
    if p >= first {
        return Err(Error::InvalidSequence(format!("p = {p} must be below x_1 = {first}")));
    }
    let mut out = vec![p + first + 1];
    out.extend(x.windows(2).map(|w| w[0] + w[1] + 1));
    Ok(out)
}

/// Sorted union of two disjoint strictly increasing sequences.
pub fn disjoint_merge(x: &[u64], y: &[u64]) -> Result<Vec<u64>> {
    if !strictly_increasing(x) || !strictly_increasing(y) {
        return Err(Error::InvalidSequence("sequence is not strictly increasing".into()));
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut k) = (0, 0);
    while i < x.len() && k < y.len() {
        match x[i].cmp(&y[k]) {
            std::cmp::Ordering::Less => {
                out.push(x[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(y[k]);
                k += 1;
            }
            std::cmp::Ordering::Equal => return Err(Error::CommonElement(x[i])),
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[k..]);
    Ok(out)
}

/// Outcome of the elementary screening `f(1) = 2`, `f(2) = 3`, `|Δ²f| <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryReport {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<u64>,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

pub fn necessary_check(profile: &ComplexityProfile) -> NecessaryReport {
    let fail = |reason: String, position: u64| NecessaryReport {
        ok: false,
        reason: Some(reason),
        position: Some(position),
        a: Vec::new(),
        b: Vec::new(),
    };
    if profile.len() < 3 {
        return fail("profile needs at least three values".into(), profile.len());
    }
    if profile.f(1) != Some(2) {
        return fail(format!("f(1) = {} instead of 2", profile.f(1).unwrap()), 1);
    }
    if profile.f(2) != Some(3) {
        return fail(format!("f(2) = {} instead of 3", profile.f(2).unwrap()), 2);
    }
    for n in 1..=profile.len() - 2 {
        let d2 = profile.delta2(n).unwrap();
        if d2.abs() > 1 {
            return fail(format!("second difference {d2} at n = {n}"), n);
        }
    }
    NecessaryReport {
        ok: true,
        reason: None,
        position: None,
        a: profile.a_set(),
        b: profile.b_set(),
    }
}

/// Why a leading-zero count `p` admits no word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    /// The `index`-th `σ_p` value lies in `A`.
    SigmaInA { index: u64, value: u64 },
    /// A `B` element is skipped by the `σ_p` stream.
    MissingB { value: u64 },
    /// No further run exists up to the horizon: the word would be finite
    /// unless `A` continues past the profile.
    Finite { last_run: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    AcceptedUpToHorizon { horizon: u64 },
    Rejected(Rejection),
}

/// The word forced by `p`, with its runs `j` (up to the horizon) and the
/// runs `c` that are also double-gap lengths plus one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCandidate {
    pub p: u64,
    pub j: Vec<u64>,
    pub c: Vec<u64>,
    pub sigma: Vec<u64>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl WitnessCandidate {
    pub fn accepted(&self) -> bool {
        matches!(self.verdict, Verdict::AcceptedUpToHorizon { .. })
    }
}

fn markers_within(profile: &ComplexityProfile, horizon: u64) -> Result<(u64, Vec<u64>, Vec<u64>)> {
    if profile.len() < horizon + 2 {
        return Err(Error::HorizonTooShort {
            n: horizon,
            detail: format!(
                "second differences up to {horizon} need {} profile values, got {}",
                horizon + 2,
                profile.len()
            ),
        });
    }
    let a = profile.a_set().into_iter().filter(|&v| v <= horizon).collect();
    let b = profile.b_set().into_iter().filter(|&v| v <= horizon).collect();
    Ok((horizon, a, b))
}

/// Builds the runs forced by `p`, checking the markers as the stream grows.
///
/// The next run is the smaller of the next unused `A` element and the
/// smallest `σ_p` value that is neither in `B` nor already a run. Each new
/// `σ_p` value must avoid `A`, and `B` must appear in the stream in order.
pub fn construct_witness(profile: &ComplexityProfile, p: u64, horizon: u64) -> Result<WitnessCandidate> {
    let report = necessary_check(profile);
    if !report.ok {
        return Err(Error::InvalidProfile(report.reason.unwrap_or_default()));
    }
    let (limit, a, b) = markers_within(profile, horizon)?;
    let Some(&a1) = a.first() else {
        return Err(Error::InvalidProfile(
            "no n with second difference +1 within the horizon".into(),
        ));
    };
    if p >= a1 {
        return Err(Error::InvalidSequence(format!("p = {p} must be below a_1 = {a1}")));
    }
    let a_set: BTreeSet<u64> = a.iter().copied().collect();

    let mut j = vec![a1];
    let mut c = Vec::new();
    let mut sigma = Vec::new();
    let mut next_a = 1usize;
    let mut next_b = 0usize;
    let mut pending: VecDeque<u64> = VecDeque::new();
    let mut prev = p;
    let reject = |j, c, sigma, r| WitnessCandidate {
        p,
        j,
        c,
        sigma,
        verdict: Verdict::Rejected(r),
    };

    loop {
        let last = *j.last().unwrap();
        let v = prev + last + 1;
        prev = last;
        sigma.push(v);
        let index = sigma.len() as u64;
        if v <= limit && a_set.contains(&v) {
            return Ok(reject(j, c, sigma, Rejection::SigmaInA { index, value: v }));
        }
        if let Some(&bv) = b.get(next_b) {
            if bv < v {
                return Ok(reject(j, c, sigma, Rejection::MissingB { value: bv }));
            }
            if bv == v {
                next_b += 1;
            } else if v <= limit {
                pending.push_back(v);
            }
        } else if v <= limit {
            pending.push_back(v);
        }

        let from_a = a.get(next_a).copied();
        let from_c = pending.front().copied();
        let next = match (from_a, from_c) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) => x,
            (None, Some(y)) => y,
            (None, None) => {
                if v <= limit {
                    return Ok(reject(j, c, sigma, Rejection::Finite { last_run: last }));
                }
                break;
            }
        };
        if from_a == Some(next) {
            next_a += 1;
        } else {
            pending.pop_front();
            c.push(next);
        }
        j.push(next);
    }
    if let Some(&bv) = b.get(next_b) {
        return Ok(reject(j, c, sigma, Rejection::MissingB { value: bv }));
    }
    Ok(WitnessCandidate {
        p,
        j,
        c,
        sigma,
        verdict: Verdict::AcceptedUpToHorizon { horizon: limit },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    AcceptedUpToHorizon,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizabilityReport {
    pub horizon: u64,
    pub overall: Overall,
    pub necessary: NecessaryReport,
    pub candidates: Vec<WitnessCandidate>,
}

impl RealizabilityReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &WitnessCandidate> {
        self.candidates.iter().filter(|c| c.accepted())
    }
}

/// Tries every `p < a_1`. Acceptance only speaks for lengths up to the
/// horizon; rejections carry the conflict that caused them.
pub fn realizable(profile: &ComplexityProfile, horizon: u64) -> Result<RealizabilityReport> {
    let necessary = necessary_check(profile);
    if !necessary.ok {
        return Ok(RealizabilityReport {
            horizon,
            overall: Overall::Rejected,
            necessary,
            candidates: Vec::new(),
        });
    }
    let (_, a, _) = markers_within(profile, horizon)?;
    let Some(&a1) = a.first() else {
        return Ok(RealizabilityReport {
            horizon,
            overall: Overall::Rejected,
            necessary,
            candidates: Vec::new(),
        });
    };
    let candidates = (0..a1)
        .map(|p| construct_witness(profile, p, horizon))
        .collect::<Result<Vec<_>>>()?;
    let overall = if candidates.iter().any(|c| c.accepted()) {
        Overall::AcceptedUpToHorizon
    } else {
        Overall::Rejected
    };
    Ok(RealizabilityReport {
        horizon,
        overall,
        necessary,
        candidates,
    })
}

/// The gap spec of `0^p 1 0^{j_1} 1 0^{j_2} 1 ...`, continued past the
/// known runs by summing the last two gaps.
pub fn witness_spec(candidate: &WitnessCandidate) -> Result<GapSpec> {
    let mut gaps = vec![candidate.p + 1];
    gaps.extend(candidate.j.iter().map(|&x| x + 1));
    Ok(GapSpec::table(gaps, TailRule::SumPrevTwo)?.with_class(GapClass::StrictlyIncreasing))
}

/// Compares the witness word's oracle complexity with the profile on `1..=n_max`.
///
/// Lengths up to `n_max` only see runs up to `n_max + 1`, so the known runs
/// must reach past that.
pub fn verify_witness(candidate: &WitnessCandidate, profile: &ComplexityProfile, n_max: u64) -> Result<bool> {
    let last = *candidate.j.last().unwrap_or(&0);
    if last <= n_max + 1 {
        return Err(Error::HorizonTooShort {
            n: n_max,
            detail: format!("known runs stop at {last}"),
        });
    }
    if profile.len() < n_max {
        return Err(Error::InvalidProfile(format!("profile has no value at n = {n_max}")));
    }
    let spec = witness_spec(candidate)?;
    let table = oracle_table(&spec, n_max, CountingBackend::Automaton)?;
    Ok(table.iter().all(|row| Some(row.distinct_count) == profile.f(row.n)))
}

/// Checks a witness word's second differences against the profile case by case.
pub fn delta2_matches(candidate: &WitnessCandidate, profile: &ComplexityProfile, n_max: u64) -> Result<bool> {
    let spec = witness_spec(candidate)?;
    for n in 1..=n_max {
        let Some(d2) = profile.delta2(n) else { break };
        if delta2_case(&spec, n)?.delta2() != d2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One probe of the closing conjecture: when some `Δ²f(n) = -1`, is the
/// gap increasing word with complexity `f` unique?
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureProbe {
    pub has_negative_step: bool,
    pub witnesses: Vec<u64>,
    pub counterexample: bool,
}

pub fn conjecture_probe(spec: &GapSpec, horizon: u64) -> Result<ConjectureProbe> {
    let n_max = horizon + 2;
    let table = oracle_table(spec, n_max, CountingBackend::Automaton)?;
    let profile = ComplexityProfile::from_values(table.iter().map(|c| c.distinct_count).collect())?;
    let report = realizable(&profile, horizon)?;
    let has_negative_step = !report.necessary.b.iter().all(|&b| b > horizon);
    let witnesses: Vec<u64> = report.witnesses().map(|w| w.p).collect();
    Ok(ConjectureProbe {
        has_negative_step,
        counterexample: has_negative_step && witnesses.len() > 1,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Family;
    use proptest::prelude::*;

    #[test]
    fn sigma_examples() {
        let evens: Vec<u64> = (1..=4).map(|i| 2 * i).collect();
        assert_eq!(sigma_p(&evens, 1).unwrap(), vec![4, 7, 11, 15]);
        assert_eq!(sigma_p(&[1], 0).unwrap(), vec![2]);
        assert_eq!(sigma_p(&[3, 5, 9], 2).unwrap(), vec![6, 9, 15]);
        assert!(sigma_p(&[3, 5], 3).is_err());
    }

    #[test]
    fn merge_examples() {
        let evens: Vec<u64> = (1..=9).map(|i| 2 * i).collect();
        let odds: Vec<u64> = (1..=4).map(|i| 2 * i - 1).collect();
        assert_eq!(
            disjoint_merge(&evens, &odds).unwrap(),
            vec![1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 14, 16, 18]
        );
        assert_eq!(disjoint_merge(&[2, 4], &[]).unwrap(), vec![2, 4]);
        assert!(matches!(disjoint_merge(&[2, 4], &[4, 6]), Err(Error::CommonElement(4))));
    }

    fn shared_profile(len: u64) -> ComplexityProfile {
        ComplexityProfile::from_values((1..=len).map(|n| if n <= 4 { n + 1 } else { 2 * n - 3 }).collect()).unwrap()
    }

    #[test]
    fn necessary_examples() {
        let r = necessary_check(&shared_profile(30));
        assert!(r.ok);
        assert_eq!(r.a, vec![3]);
        assert!(r.b.is_empty());
        assert!(!necessary_check(&ComplexityProfile::from_values(vec![2, 4, 5]).unwrap()).ok);
        assert!(!necessary_check(&ComplexityProfile::from_values(vec![2, 3, 5, 5]).unwrap()).ok);
        let ex = ComplexityProfile::family(Family::Ex42, 3, 40).unwrap();
        assert_eq!(necessary_check(&ex).a[..3], [2, 5, 8]);
    }

    #[test]
    fn two_words_share_profile() {
        let profile = shared_profile(62);
        let report = realizable(&profile, 60).unwrap();
        let w: Vec<&WitnessCandidate> = report.witnesses().collect();
        assert_eq!(w.iter().map(|c| c.p).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(w[1].j[..5], [3, 5, 9, 15, 25]);
        assert_eq!(w[2].j[..5], [3, 6, 10, 17, 28]);
        for c in &w {
            assert!(verify_witness(c, &profile, 30).unwrap());
        }
    }

    #[test]
    fn ex42_witnesses() {
        for q in 2..=5u64 {
            let profile = ComplexityProfile::family(Family::Ex42, q, 122).unwrap();
            let report = realizable(&profile, 120).unwrap();
            let ps: Vec<u64> = report.witnesses().map(|c| c.p).collect();
            assert_eq!(ps, (0..q - 1).collect::<Vec<_>>());
            assert_eq!(report.candidates.len() as u64, q - 1);
            for w in report.witnesses() {
                assert_eq!(w.j[..4], [q - 1, w.p + q, 2 * q - 1, w.p + 2 * q]);
                assert_interval_recurrence(w, &necessary_check(&profile));
            }
        }
    }

    fn assert_interval_recurrence(w: &WitnessCandidate, markers: &NecessaryReport) {
        let cs: BTreeSet<u64> = w.c.iter().copied().collect();
        for (idx, &x) in w.j.iter().enumerate() {
            if !cs.contains(&x) {
                continue;
            }
            let i = idx as i64 + 1;
            let s = markers.a.iter().filter(|&&a| a < x).count() as i64;
            let t = markers.b.iter().filter(|&&b| b < x).count() as i64;
            let run = |k: i64| if k == 0 { w.p } else { w.j[k as usize - 1] };
            assert_eq!(x, run(i - s + t) + run(i - s + t - 1) + 1);
        }
    }

    #[test]
    fn ex43_rejections() {
        for q in 3..=6u64 {
            let profile = ComplexityProfile::family(Family::Ex43, q, 302).unwrap();
            let report = realizable(&profile, 300).unwrap();
            assert_eq!(report.overall, Overall::Rejected);
            for c in &report.candidates {
                let k = 1u64 << (q - c.p - 1);
                assert_eq!(
                    c.verdict,
                    Verdict::Rejected(Rejection::SigmaInA {
                        index: k,
                        value: (k + 1) * q
                    })
                );
            }
        }
    }

    #[test]
    fn sturmian_profile_is_rejected() {
        let profile = ComplexityProfile::from_values((1..=50).map(|n| n + 1).collect()).unwrap();
        let report = realizable(&profile, 48).unwrap();
        assert_eq!(report.overall, Overall::Rejected);
        assert!(report.candidates.is_empty());
    }

    #[test]
    fn short_profile_is_an_error() {
        let profile = ComplexityProfile::family(Family::Ex42, 3, 50).unwrap();
        assert!(matches!(realizable(&profile, 60), Err(Error::HorizonTooShort { .. })));
    }

    #[test]
    fn corrupted_witness_fails() {
        let profile = ComplexityProfile::family(Family::Ex42, 2, 82).unwrap();
        let report = realizable(&profile, 80).unwrap();
        let mut w = report.witnesses().next().unwrap().clone();
        assert!(verify_witness(&w, &profile, 40).unwrap());
        w.j[1] += 1;
        assert!(!verify_witness(&w, &profile, 40).unwrap());
    }

    fn gap_increasing_word() -> impl Strategy<Value = GapSpec> {
        (prop::collection::vec(1u64..5, 2..6), 0u64..3).prop_map(|(steps, extra)| {
            let mut acc = 0;
            let gaps: Vec<u64> = steps
                .iter()
                .map(|s| {
                    acc += s;
                    acc
                })
                .collect();
            let tail = if extra == 0 {
                TailRule::SumPrevTwo
            } else {
                TailRule::Linear {
                    c: extra as i64,
                    d: acc as i64,
                }
            };
            GapSpec::table(gaps, tail).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn round_trip_recovers_the_word(spec in gap_increasing_word()) {
            let horizon = 60u64;
            let table = oracle_table(&spec, horizon + 2, CountingBackend::Automaton).unwrap();
            let profile = ComplexityProfile::from_values(table.iter().map(|c| c.distinct_count).collect()).unwrap();
            let report = realizable(&profile, horizon).unwrap();
            let p = crate::gap::to_u64(&spec.gap(1)).unwrap() - 1;
            let found = report.witnesses().find(|w| w.p == p);
            prop_assert!(found.is_some(), "p = {} not recovered", p);
            let w = found.unwrap();
            let expected: Vec<u64> = (2..).map(|i| crate::gap::to_u64(&spec.gap(i)).unwrap() - 1)
                .take_while(|&r| r <= horizon).collect();
            prop_assert_eq!(&w.j[..expected.len()], &expected[..]);
            prop_assert_eq!(w.j[0], report.necessary.a[0]);

            let markers = &report.necessary;
            let sig: Vec<u64> = sigma_p(&w.j, w.p).unwrap().into_iter().filter(|&v| v <= horizon).collect();
            let js: Vec<u64> = w.j.iter().copied().filter(|&v| v <= horizon).collect();
            let cs: Vec<u64> = w.c.iter().copied().filter(|&v| v <= horizon).collect();
            prop_assert_eq!(disjoint_merge(&markers.a, &cs).unwrap(), js);
            prop_assert_eq!(disjoint_merge(&markers.b, &cs).unwrap(), sig);
            for w in report.witnesses() {
                prop_assert!(delta2_matches(w, &profile, horizon).unwrap());
            }
        }
    }
}
