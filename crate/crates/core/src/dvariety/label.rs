use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::schubert::Partition;

/// Additive basis label of CH(D).
///
/// * `U(lambda)`, `|lambda| <= 4`: pullback of the Schubert class.
/// * `V`: the vanishing class `d` in codimension 4.
/// * `L(mu)`, `|mu| >= 6`: the class of dimension `9 - |mu|` pushing
///   forward to `sigma_mu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DLabel {
    U(Partition),
    V,
    L(Partition),
}

impl DLabel {
    pub fn codim(&self) -> u32 {
        match self {
            DLabel::U(p) => p.size(),
            DLabel::V => 4,
            DLabel::L(p) => p.size() - 1,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            DLabel::U(_) => 0,
            DLabel::V => 1,
            DLabel::L(_) => 2,
        }
    }

    /// The 18 labels in canonical order.
    pub fn all() -> &'static [DLabel] {
        static ALL: OnceLock<Vec<DLabel>> = OnceLock::new();
        ALL.get_or_init(|| {
            let mut out: Vec<DLabel> = Partition::all_in_box(3, 3)
                .into_iter()
                .filter_map(|p| match p.size() {
                    0..=4 => Some(DLabel::U(p)),
                    5 => None,
                    _ => Some(DLabel::L(p)),
                })
                .collect();
            out.push(DLabel::V);
            out.sort();
            out
        })
    }

    pub fn index(&self) -> usize {
        DLabel::all()
            .binary_search(self)
            .expect("label belongs to the basis")
    }

    pub fn unit() -> DLabel {
        DLabel::U(Partition::empty())
    }

    pub fn point() -> DLabel {
        DLabel::L(Partition::new(vec![3, 3, 3]).expect("rectangle"))
    }

    fn validate(self) -> Result<DLabel> {
        let ok = match &self {
            DLabel::U(p) => p.fits(3, 3) && p.size() <= 4,
            DLabel::V => true,
            DLabel::L(p) => p.fits(3, 3) && p.size() >= 6,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Parse(format!("`{self}` is not a basis label of CH(D)")))
        }
    }
}

impl Ord for DLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.codim()
            .cmp(&other.codim())
            .then_with(|| self.rank().cmp(&other.rank()))
            .then_with(|| match (self, other) {
                (DLabel::U(a), DLabel::U(b)) | (DLabel::L(a), DLabel::L(b)) => a.cmp(b),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for DLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DLabel::U(p) => write!(f, "U{p}"),
            DLabel::V => write!(f, "V"),
            DLabel::L(p) => write!(f, "L{p}"),
        }
    }
}

impl FromStr for DLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<DLabel> {
        let s = s.trim();
        let label = if s == "V" {
            DLabel::V
        } else if let Some(rest) = s.strip_prefix('U') {
            DLabel::U(rest.parse()?)
        } else if let Some(rest) = s.strip_prefix('L') {
            DLabel::L(rest.parse()?)
        } else {
            return Err(Error::Parse(format!("`{s}` is not a label of CH(D)")));
        };
        label.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eighteen_labels_with_expected_census() {
        let all = DLabel::all();
        assert_eq!(all.len(), 18);
        let mut per_codim = [0; 9];
        for l in all {
            per_codim[l.codim() as usize] += 1;
        }
        assert_eq!(per_codim, [1, 1, 2, 3, 4, 3, 2, 1, 1]);
        assert_eq!(all.iter().filter(|l| matches!(l, DLabel::U(_))).count(), 10);
        assert_eq!(all.iter().filter(|l| matches!(l, DLabel::L(_))).count(), 7);
        for (i, l) in all.iter().enumerate() {
            assert_eq!(l.index(), i);
        }
        assert_eq!(all[0], DLabel::unit());
        assert_eq!(all[17], DLabel::point());
    }

    #[test]
    fn parsing() {
        assert_eq!("U[2,1,1]".parse::<DLabel>().unwrap().codim(), 4);
        assert_eq!("V".parse::<DLabel>().unwrap(), DLabel::V);
        assert_eq!("L[3,3,2]".parse::<DLabel>().unwrap().codim(), 7);
        assert!("U[3,2]".parse::<DLabel>().is_err());
        assert!("L[3,1,1]".parse::<DLabel>().is_err());
        assert!("W[1]".parse::<DLabel>().is_err());
        assert_eq!(DLabel::point().to_string(), "L[3,3,3]");
    }
}
