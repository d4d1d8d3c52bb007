//! `r`-parking functions.

use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::{BigCount, DEFAULT_CAP};

/// A sequence accepted by [`is_r_parking`] for its `r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParkingFn {
    r: u64,
    entries: Vec<u64>,
}

impl Serialize for ParkingFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl ParkingFn {
    /// Validates `entries` as an `r`-parking function.
    pub fn new(entries: Vec<u64>, r: u64) -> Result<Self> {
        if !sorted_bound_holds(&entries, r) {
            return Err(invalid(format!("{entries:?} is not a {r}-parking function")));
        }
        Ok(ParkingFn { r, entries })
    }

    /// Parses `"1,0,0"`.
    pub fn parse(text: &str, r: u64) -> Result<Self> {
        let seq = parse_sequence(text)?;
        if let Some(&neg) = seq.iter().find(|&&v| v < 0) {
            return Err(invalid(format!("negative entry {neg}")));
        }
        Self::new(seq.into_iter().map(|v| v as u64).collect(), r)
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for ParkingFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parses a comma-separated list of integers; the empty string is empty.
pub fn parse_sequence(text: &str) -> Result<Vec<i64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<i64>()
                .map_err(|_| Error::Parse(format!("expected an integer, found {s:?}")))
        })
        .collect()
}

fn sorted_bound_holds(seq: &[u64], r: u64) -> bool {
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .enumerate()
        .all(|(i, &b)| b <= r.saturating_mul(i as u64))
}

/// `true` iff the weakly increasing rearrangement `b` of `seq` satisfies
/// `b_i <= r(i-1)` for every 1-based `i`.
pub fn is_r_parking(seq: &[i64], r: u64) -> Result<bool> {
    if r == 0 {
        return Err(invalid("r must be at least 1"));
    }
    if let Some(&neg) = seq.iter().find(|&&v| v < 0) {
        return Err(invalid(format!("negative entry {neg}")));
    }
    let seq: Vec<u64> = seq.iter().map(|&v| v as u64).collect();
    Ok(sorted_bound_holds(&seq, r))
}

/// Car `i` drives to slot `a_i` and takes the first free slot at or above it;
/// `true` iff every car parks in slots `0..k`.
pub fn simulate_parking(seq: &[u64]) -> bool {
    let k = seq.len();
    let mut taken = vec![false; k];
    for &pref in seq {
        let Some(slot) = (pref as usize..k).find(|&s| !taken[s]) else {
            return false;
        };
        taken[slot] = true;
    }
    true
}

/// Every `r`-parking function of length `k`, lexicographically.
///
/// Entries never exceed `r(k-1)`, so the search box `{0..=r(k-1)}^k` is
/// exhaustive.
pub fn enumerate_parking(k: usize, r: u64, cap: Option<u64>) -> Result<std::vec::IntoIter<ParkingFn>> {
    if r == 0 {
        return Err(invalid("r must be at least 1"));
    }
    let cap = cap.unwrap_or(DEFAULT_CAP);
    let side = r * k.saturating_sub(1) as u64 + 1;
    let needed = BigUint::from(side).pow(k as u32);
    if needed > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "parking-function enumeration",
            needed: needed.to_string(),
            cap,
        });
    }
    let mut out = Vec::new();
    let mut cur = vec![0u64; k];
    loop {
        if sorted_bound_holds(&cur, r) {
            out.push(ParkingFn { r, entries: cur.clone() });
        }
        // odometer increment, last position fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out.into_iter());
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < side {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// `(rk + 1)^(k-1)`; the length-0 function counts once.
pub fn count_parking(k: usize, r: u64) -> Result<BigCount> {
    if r == 0 {
        return Err(invalid("r must be at least 1"));
    }
    if k == 0 {
        return Ok(BigCount::from(1u32));
    }
    Ok(BigUint::from(r * k as u64 + 1).pow(k as u32 - 1))
}
