use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An integer partition, stored as weakly decreasing positive parts.
///
/// Ordering is graded lexicographic: first by size, then by parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, trimming trailing zeros. Fails unless the parts
    /// are weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single-row partition `(a)`; empty for `a = 0`.
    pub fn row(a: u32) -> Self {
        if a == 0 {
            Self::empty()
        } else {
            Partition(vec![a])
        }
    }

    /// The single-column partition `(1^m)`.
    pub fn column(m: usize) -> Self {
        Partition(vec![1; m])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `i`-th part (zero-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn fits(&self, rows: usize, cols: u32) -> bool {
        self.0.len() <= rows && self.part(0) <= cols
    }

    pub fn check_fits(&self, rows: usize, cols: u32) -> Result<()> {
        if self.fits(rows, cols) {
            Ok(())
        } else {
            Err(Error::OutsideBox {
                partition: self.to_string(),
                rows,
                cols: cols as usize,
            })
        }
    }

    /// Every partition inside the `rows x cols` box, in canonical order.
    pub fn all_in_box(rows: usize, cols: u32) -> Vec<Partition> {
        fn rec(rows: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if prefix.len() == rows {
                out.push(Partition::new(prefix.clone()).expect("decreasing by construction"));
                return;
            }
            for p in 0..=max {
                prefix.push(p);
                rec(rows, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, &mut Vec::with_capacity(rows), &mut out);
        out.sort();
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "[0]");
        }
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"[3,1]"`; `"[]"` and `"[0]"` are the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidPartition(format!("`{s}`: expected [a,b,...]")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("`{s}`: bad part `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("[3,1,0]"), Partition::new(vec![3, 1]).unwrap());
        assert_eq!(p("[]"), Partition::empty());
        assert_eq!(p("[0]").to_string(), "[0]");
        assert_eq!(p(" [2, 1,1] ").to_string(), "[2,1,1]");
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
        assert!("[3,x]".parse::<Partition>().is_err());
    }

    #[test]
    fn graded_lex_order() {
        let b = Partition::all_in_box(3, 3);
        assert_eq!(b.len(), 20);
        assert_eq!(b[0], Partition::empty());
        assert_eq!(b[19], p("[3,3,3]"));
        let deg4: Vec<String> = b.iter().filter(|q| q.size() == 4).map(|q| q.to_string()).collect();
        assert_eq!(deg4, ["[2,1,1]", "[2,2]", "[3,1]"]);
        let deg2: Vec<String> = b.iter().filter(|q| q.size() == 2).map(|q| q.to_string()).collect();
        assert_eq!(deg2, ["[1,1]", "[2]"]);
    }

    #[test]
    fn box_fitting() {
        assert!(p("[3,3,3]").fits(3, 3));
        assert!(!p("[4]").fits(3, 3));
        assert!(!p("[1,1,1,1]").fits(3, 3));
        assert!(p("[1,1,1,1]").check_fits(3, 3).is_err());
    }
}
