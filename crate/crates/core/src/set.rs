//! Finite disjoint unions of half-open intervals.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The underlying interval `I`: `[0, 1]` or `[0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Unit,
    Halfline,
}

impl Domain {
    pub fn end(self) -> f64 {
        match self {
            Domain::Unit => 1.0,
            Domain::Halfline => f64::INFINITY,
        }
    }

    /// Lebesgue measure of the domain.
    pub fn measure(self) -> f64 {
        self.end()
    }

    pub fn check_same(self, other: Domain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Domain(format!("{self:?} vs {other:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurableSet {
    domain: Domain,
    intervals: Vec<(f64, f64)>,
}

impl MeasurableSet {
    pub fn empty(domain: Domain) -> Self {
        MeasurableSet { domain, intervals: Vec::new() }
    }

    pub fn whole(domain: Domain) -> Self {
        MeasurableSet { domain, intervals: vec![(0.0, domain.end())] }
    }

    /// Build from arbitrary intervals: clipped to the domain, sorted, merged.
    pub fn new(domain: Domain, intervals: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut iv: Vec<(f64, f64)> = Vec::new();
        for (a, b) in intervals {
            if a.is_nan() || b.is_nan() || a < 0.0 || b < a {
                return Err(Error::Domain(format!("bad interval [{a}, {b})")));
            }
            let b = b.min(domain.end());
            if a < b {
                iv.push((a, b));
            }
        }
        iv.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(iv.len());
        for (a, b) in iv {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        Ok(MeasurableSet { domain, intervals: merged })
    }

    pub fn interval(domain: Domain, a: f64, b: f64) -> Result<Self> {
        Self::new(domain, [(a, b)])
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    /// `inf{eps >= 0 : m([0, eps) ∩ A) = 0}`; 0 for the empty set.
    pub fn essinf(&self) -> f64 {
        self.intervals.first().map_or(0.0, |iv| iv.0)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| t >= a && t < b)
    }

    pub fn intersect(&self, other: &MeasurableSet) -> Result<MeasurableSet> {
        self.domain.check_same(other.domain)?;
        let mut out = Vec::new();
        for &(a, b) in &self.intervals {
            for &(c, d) in &other.intervals {
                let lo = a.max(c);
                let hi = b.min(d);
                if lo < hi {
                    out.push((lo, hi));
                }
            }
        }
        MeasurableSet::new(self.domain, out)
    }

    pub fn union(&self, other: &MeasurableSet) -> Result<MeasurableSet> {
        self.domain.check_same(other.domain)?;
        MeasurableSet::new(
            self.domain,
            self.intervals.iter().chain(other.intervals.iter()).copied(),
        )
    }

    pub fn is_subset_of(&self, other: &MeasurableSet) -> bool {
        self.intervals.iter().all(|&(a, b)| {
            other.intervals.iter().any(|&(c, d)| c <= a && b <= d)
        })
    }
}
