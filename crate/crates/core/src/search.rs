//! Monotone predicate search.

/// Least `x >= lo` with `pred(x)`, for a predicate that is monotone
/// (false then true) and eventually true.
///
/// Probes `lo, lo+1, lo+2, lo+4, ...` until the predicate holds, then
/// bisects the last bracket, so the cost is logarithmic in the answer rather
/// than in any a priori upper bound.
pub fn least_satisfying<T, F>(lo: T, mut pred: F) -> T
where
    T: Copy + Into<u128> + TryFrom<u128>,
    F: FnMut(T) -> bool,
{
    let conv = |v: u128| -> T { T::try_from(v).unwrap_or_else(|_| panic!("search overflowed its index type")) };
    let lo: u128 = lo.into();
    if pred(conv(lo)) {
        return conv(lo);
    }
    // invariant: pred(bad) false, pred(good) true
    let mut bad = lo;
    let mut step: u128 = 1;
    let mut good = loop {
        let probe = lo + step;
        if pred(conv(probe)) {
            break probe;
        }
        bad = probe;
        step *= 2;
    };
    while good - bad > 1 {
        let mid = bad + (good - bad) / 2;
        if pred(conv(mid)) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    conv(good)
}

/// Greatest `x >= lo` with `pred(x)`, for a predicate that holds at `lo`,
/// is monotone (true then false) and eventually false.
pub fn greatest_satisfying<T, F>(lo: T, mut pred: F) -> T
where
    T: Copy + Into<u128> + TryFrom<u128>,
    F: FnMut(T) -> bool,
{
    let first_fail = least_satisfying(lo, |x| !pred(x));
    let v: u128 = first_fail.into();
    T::try_from(v - 1).unwrap_or_else(|_| unreachable!())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn least_matches_scan(lo in 0u64..50, t in 0u64..5000) {
            let mut calls = 0;
            let got = least_satisfying(lo, |x| { calls += 1; x >= t });
            prop_assert_eq!(got, lo.max(t));
            prop_assert!(calls <= 2 * 64);
        }

        #[test]
        fn greatest_matches_scan(lo in 0u64..50, extra in 0u64..5000) {
            let t = lo + extra;
            prop_assert_eq!(greatest_satisfying(lo, |x| x <= t), t);
        }
    }

    #[test]
    fn huge_answer_is_cheap() {
        let mut calls = 0;
        let got = least_satisfying(0u64, |x| {
            calls += 1;
            x >= 1 << 60
        });
        assert_eq!(got, 1 << 60);
        assert!(calls < 130);
    }
}
