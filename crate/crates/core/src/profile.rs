//! Finite complexity tables with their difference sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite table `f(1..=N)` with `Δf(n) = f(n+1) - f(n)` and
/// `Δ²f(n) = Δf(n+1) - Δf(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    f: Vec<u64>,
}

/// Profile file contents: an explicit table or a built-in family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ProfileSource {
    Table {
        f: Vec<u64>,
    },
    Family {
        family: Family,
        q: u64,
        #[serde(rename = "N")]
        n: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `f(n) = (m+1)(2n - qm)/2 + 1` with `m = floor(n/q)`.
    Ex42,
    /// `f(n) = n + 1 + (n-1)m - q m(m+1)/2` with `m = floor((n-1)/q)`.
    Ex43,
}

impl Family {
    pub fn value(self, q: u64, n: u64) -> u64 {
        match self {
            Family::Ex42 => {
                let m = n / q;
                (m + 1) * (2 * n - q * m) / 2 + 1
            }
            Family::Ex43 => {
                let m = (n - 1) / q;
                n + 1 + (n - 1) * m - q * m * (m + 1) / 2
            }
        }
    }
}

impl ProfileSource {
    pub fn build(&self) -> Result<ComplexityProfile> {
        match self {
            ProfileSource::Table { f } => ComplexityProfile::from_values(f.clone()),
            ProfileSource::Family { family, q, n } => ComplexityProfile::family(*family, *q, *n),
        }
    }
}

impl ComplexityProfile {
    pub fn from_values(f: Vec<u64>) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::InvalidProfile("empty table".into()));
        }
        if let Some(pos) = f.iter().position(|&v| v == 0) {
            return Err(Error::InvalidProfile(format!("f({}) = 0", pos + 1)));
        }
        Ok(ComplexityProfile { f })
    }

    /// Tabulates a built-in family for `n = 1..=len`.
    pub fn family(family: Family, q: u64, len: u64) -> Result<Self> {
        let min_q = match family {
            Family::Ex42 => 2,
            Family::Ex43 => 3,
        };
        if q < min_q {
            return Err(Error::InvalidProfile(format!("{family:?} needs q >= {min_q}")));
        }
        Self::from_values((1..=len).map(|n| family.value(q, n)).collect())
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let src: ProfileSource = serde_json::from_str(text)?;
        src.build()
    }

    /// Number of tabulated values `N`.
    pub fn len(&self) -> u64 {
        self.f.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.f
    }

    /// `f(n)` for `1 <= n <= N`.
    pub fn f(&self, n: u64) -> Option<u64> {
        if n == 0 {
            return None;
        }
        self.f.get(n as usize - 1).copied()
    }

    /// `Δf(n)` for `1 <= n <= N-1`.
    pub fn delta(&self, n: u64) -> Option<i64> {
        Some(self.f(n + 1)? as i64 - self.f(n)? as i64)
    }

    /// `Δ²f(n)` for `1 <= n <= N-2`.
    pub fn delta2(&self, n: u64) -> Option<i64> {
        Some(self.delta(n + 1)? - self.delta(n)?)
    }

    /// Positions `n` with `Δ²f(n) = +1`.
    pub fn a_set(&self) -> Vec<u64> {
        (1..self.len()).filter(|&n| self.delta2(n) == Some(1)).collect()
    }

    /// Positions `n` with `Δ²f(n) = -1`.
    pub fn b_set(&self) -> Vec<u64> {
        (1..self.len()).filter(|&n| self.delta2(n) == Some(-1)).collect()
    }

    pub fn truncated(&self, len: u64) -> ComplexityProfile {
        ComplexityProfile {
            f: self.f[..(len as usize).min(self.f.len())].to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differences() {
        let p = ComplexityProfile::from_values(vec![2, 3, 4, 5, 7, 9, 11]).unwrap();
        assert_eq!(p.delta(4), Some(2));
        assert_eq!(p.delta2(3), Some(1));
        assert_eq!(p.delta2(6), None);
        assert_eq!(p.a_set(), vec![3]);
        assert!(p.b_set().is_empty());
    }

    #[test]
    fn ex42_markers() {
        let p = ComplexityProfile::family(Family::Ex42, 3, 40).unwrap();
        assert_eq!(&p.values()[..4], &[2, 3, 4, 6]);
        assert_eq!(p.a_set(), (1..=13).map(|i| 3 * i - 1).collect::<Vec<_>>());
        assert!(p.b_set().is_empty());
    }

    #[test]
    fn ex43_markers() {
        let p = ComplexityProfile::family(Family::Ex43, 4, 60).unwrap();
        assert_eq!(p.a_set(), (1..15).map(|i| 4 * i).collect::<Vec<_>>());
    }

    #[test]
    fn json_sources() {
        let p = ComplexityProfile::parse_json(r#"{"f":[2,3,4]}"#).unwrap();
        assert_eq!(p.len(), 3);
        let p = ComplexityProfile::parse_json(r#"{"family":"ex42","q":3,"N":200}"#).unwrap();
        assert_eq!(p.len(), 200);
        assert!(ComplexityProfile::parse_json(r#"{"family":"ex44","q":3,"N":20}"#).is_err());
        assert!(ComplexityProfile::parse_json(r#"{"f":[2,0]}"#).is_err());
    }
}
