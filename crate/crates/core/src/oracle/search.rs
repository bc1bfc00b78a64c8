//! Search over parameterized shrinking set families for one along which
//! `||f chi_{A_n}||_CX` does not vanish.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cesaro::cesaro_transform;
use crate::error::Result;
use crate::limits::{self, LimitDecision, LimitTarget};
use crate::norms;
use crate::oc::{validate_family, TAIL_STEPS};
use crate::ppl::Ppl;
use crate::set::{Domain, MeasurableSet};
use crate::space::SpaceDescriptor;

pub const DEFAULT_BUDGET: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `[0, c r^-n)`.
    LeftTail { c: f64, r: f64 },
    /// `[c r^n, inf)`.
    RightTail { c: f64, r: f64 },
    /// `[0, c r^-n) ∪ [c r^n, inf)`.
    Tails { c: f64, r: f64 },
    /// `(a - w r^-n, a + w r^-n)`.
    Neighborhood { a: f64, w: f64, r: f64 },
}

impl Family {
    pub fn sets(&self, domain: Domain) -> Result<Vec<MeasurableSet>> {
        let end = domain.end();
        (1..=TAIL_STEPS)
            .map(|n| {
                let n = n as f64;
                let parts = match *self {
                    Family::LeftTail { c, r } => vec![(0.0, (c * r.powf(-n)).min(end))],
                    Family::RightTail { c, r } => vec![((c * r.powf(n)).min(end), end)],
                    Family::Tails { c, r } => {
                        vec![(0.0, (c * r.powf(-n)).min(end)), ((c * r.powf(n)).min(end), end)]
                    }
                    Family::Neighborhood { a, w, r } => {
                        let h = w * r.powf(-n);
                        vec![((a - h).max(0.0), (a + h).min(end))]
                    }
                };
                MeasurableSet::new(domain, parts.into_iter().filter(|p| p.1 > p.0))
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        match *self {
            Family::LeftTail { c, r } => format!("[0, {c} * {r}^-n)"),
            Family::RightTail { c, r } => format!("[{c} * {r}^n, inf)"),
            Family::Tails { c, r } => format!("[0, {c} * {r}^-n) u [{c} * {r}^n, inf)"),
            Family::Neighborhood { a, w, r } => format!("({a} -+ {w} * {r}^-n)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// The family with the largest persistent norm, and its curve.
    pub best: Option<(Family, Vec<(f64, f64)>)>,
    /// Mean of the last five norms along the best family.
    pub persistent_norm: f64,
    /// The best family's norms provably fail to vanish; it passed revalidation.
    pub falsified: bool,
    pub evaluated: usize,
}

/// Points where `C|f|` is within a factor 2 of its largest sampled value.
fn bad_points(f: &Ppl) -> Result<Vec<f64>> {
    let g = cesaro_transform(&f.abs()?)?;
    let end = f.domain().end();
    let grid: Vec<f64> = (-40..=40).map(|j| 2f64.powf(j as f64 / 2.0)).filter(|&t| t < end).collect();
    let vals: Vec<f64> = grid.iter().map(|&t| g.evaluate(t)).collect::<Result<_>>()?;
    let top = vals.iter().cloned().fold(0.0, f64::max);
    Ok(grid.into_iter().zip(vals).filter(|(_, v)| *v >= 0.5 * top && *v > 0.0).map(|(t, _)| t).collect())
}

fn candidates(f: &Ppl, budget: usize, seed: u64) -> Result<Vec<Family>> {
    let domain = f.domain();
    let end = domain.end();
    let mut out = Vec::new();
    for &r in &[2.0, 1.5, 4.0] {
        for &c in &[1.0, 0.5, 0.125] {
            out.push(Family::LeftTail { c, r });
            if end.is_infinite() {
                out.push(Family::RightTail { c: 1.0 / c, r });
                out.push(Family::Tails { c, r });
            }
        }
    }
    let mut points = f.breakpoints();
    points.extend(bad_points(f)?);
    points.retain(|&a| a > 0.0 && a < end);
    points.sort_by(f64::total_cmp);
    points.dedup();
    for &a in &points {
        out.push(Family::Neighborhood { a, w: 0.5 * a, r: 2.0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = if end.is_finite() { end } else { 64.0 };
    while out.len() < budget {
        let r = rng.gen_range(1.2..4.0);
        let c = top * rng.gen_range(0.01..1.0f64);
        let pick = rng.gen_range(0..4);
        let fam = match pick {
            0 => Family::LeftTail { c, r },
            1 if end.is_infinite() => Family::RightTail { c, r },
            2 if end.is_infinite() => Family::Tails { c: c.min(1.0), r },
            _ => {
                let a = if !points.is_empty() && rng.gen_bool(0.5) {
                    points[rng.gen_range(0..points.len())]
                } else {
                    c
                };
                Family::Neighborhood { a, w: a * rng.gen_range(0.05..0.9), r }
            }
        };
        out.push(fam);
    }
    out.truncate(budget);
    Ok(out)
}

fn curve(f: &Ppl, cx: &SpaceDescriptor, sets: &[MeasurableSet]) -> Result<Vec<(f64, f64)>> {
    sets.iter()
        .enumerate()
        .map(|(i, a)| Ok(((i + 1) as f64, norms::norm(&f.restrict(a)?, cx)?.value)))
        .collect()
}

/// Evaluate up to `budget` families (fixed tails first, then seeded random
/// tails and neighborhoods of breakpoints and of points where `C|f|` is large)
/// and keep the one with the largest persistent norm. A falsifier is only
/// reported after its family passes validation again.
pub fn adversarial_family_search(f: &Ppl, x: &SpaceDescriptor, budget: usize, seed: u64) -> Result<SearchResult> {
    let cx = x.symmetric().cesaro()?;
    let mut best: Option<(Family, Vec<MeasurableSet>)> = None;
    let mut score = 0.0;
    let mut evaluated = 0;
    for fam in candidates(f, budget, seed)? {
        let sets = fam.sets(f.domain())?;
        if validate_family(&sets).is_err() {
            continue;
        }
        evaluated += 1;
        // only the last five sets enter the score; the full curve is computed for the winner
        let last = curve(f, &cx, &sets[sets.len() - 5..])?;
        let tail: f64 = last.iter().map(|p| p.1).sum::<f64>() / 5.0;
        if best.is_none() || tail > score {
            score = tail;
            best = Some((fam, sets));
        }
    }
    let best = match best {
        Some((fam, sets)) => Some((fam, curve(f, &cx, &sets)?)),
        None => None,
    };
    let mut falsified = false;
    if let Some((fam, c)) = &best {
        let est = limits::from_samples(LimitTarget::Infinity, c.clone());
        let decisive = matches!(est.decision, LimitDecision::PositiveLimit | LimitDecision::Diverges);
        falsified = decisive && validate_family(&fam.sets(f.domain())?).is_ok();
    }
    Ok(SearchResult { best, persistent_norm: score, falsified, evaluated })
}
