use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest absolute value of an address entry.
pub const MAX_ENTRY: i64 = 1 << 20;

/// An eventually periodic sequence `s in Z^N`: a finite prefix followed by a
/// tail repeated forever.
///
/// Addresses are kept canonical, so two equal sequences compare equal: the
/// tail is primitive (not a power of a shorter word) and the prefix does not
/// end with the tail's last entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExternalAddress {
    prefix: Vec<i64>,
    tail: Vec<i64>,
}

impl ExternalAddress {
    pub fn new(prefix: Vec<i64>, tail: Vec<i64>) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::Domain("address tail must be nonempty".into()));
        }
        if let Some(bad) = prefix.iter().chain(&tail).find(|e| e.abs() > MAX_ENTRY) {
            return Err(Error::Domain(format!(
                "address entry {bad} exceeds 2^20 in absolute value"
            )));
        }
        let mut addr = ExternalAddress { prefix, tail };
        addr.canonicalize();
        Ok(addr)
    }

    /// The constant-tail address `t t t ...` for `t` repeated.
    pub fn periodic(tail: Vec<i64>) -> Result<Self> {
        Self::new(Vec::new(), tail)
    }

    fn canonicalize(&mut self) {
        let n = self.tail.len();
        if let Some(q) = (1..n)
            .find(|&q| n.is_multiple_of(q) && (q..n).all(|i| self.tail[i] == self.tail[i % q]))
        {
            self.tail.truncate(q);
        }
        while self.prefix.last() == self.tail.last() {
            self.prefix.pop();
            self.tail.rotate_right(1);
        }
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    pub fn tail(&self) -> &[i64] {
        &self.tail
    }

    /// Entry `s_i`.
    pub fn entry(&self, i: usize) -> i64 {
        match self.prefix.get(i) {
            Some(&e) => e,
            None => self.tail[(i - self.prefix.len()) % self.tail.len()],
        }
    }

    /// The first `n` entries.
    pub fn entries(&self, n: usize) -> Vec<i64> {
        (0..n).map(|i| self.entry(i)).collect()
    }

    /// Shift `sigma(s) = s_1 s_2 ...`.
    pub fn shift(&self) -> Self {
        let mut prefix = self.prefix.clone();
        let mut tail = self.tail.clone();
        if prefix.is_empty() {
            tail.rotate_left(1);
        } else {
            prefix.remove(0);
        }
        ExternalAddress { prefix, tail }
    }

    /// Index of the first entry where `self` and `other` differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        if self == other {
            return None;
        }
        // Two distinct eventually periodic sequences differ within
        // max prefix length + lcm of tail lengths.
        let bound = self.prefix.len().max(other.prefix.len()) + self.tail.len() * other.tail.len();
        (0..=bound).find(|&i| self.entry(i) != other.entry(i))
    }
}

/// Literal `p1,p2,...|t1,t2,...`; `|1` is the constant address `1 1 1 ...`.
impl fmt::Display for ExternalAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| {
            v.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}|{}", join(&self.prefix), join(&self.tail))
    }
}

impl FromStr for ExternalAddress {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (prefix, tail) = trimmed
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("address {s:?} lacks '|'")))?;
        let parse = |part: &str| -> Result<Vec<i64>> {
            if part.trim().is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad address entry {e:?} in {s:?}")))
                })
                .collect()
        };
        ExternalAddress::new(parse(prefix)?, parse(tail)?)
    }
}
