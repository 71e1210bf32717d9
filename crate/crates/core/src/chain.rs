//! Step functions from [0, 1] into sets of indecomposables.
//!
//! Interval `i` is `[starts[i], starts[i+1])`, the last one ends at 1, and the
//! value at 1 itself is always the empty class.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Class = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepChain {
    starts: Vec<Rational64>,
    values: Vec<Class>,
}

impl StepChain {
    /// Checks `starts` begins at 0, increases strictly, stays below 1, and
    /// that the values weakly decrease.
    pub fn new(starts: Vec<Rational64>, values: Vec<Class>) -> Result<Self> {
        if starts.is_empty() || starts.len() != values.len() {
            return Err(Error::Precondition("a chain needs one value per breakpoint".into()));
        }
        if !starts[0].is_zero() {
            return Err(Error::Precondition("the first breakpoint must be 0".into()));
        }
        if starts.windows(2).any(|w| w[0] >= w[1]) || *starts.last().unwrap() >= Rational64::one() {
            return Err(Error::Precondition(
                "breakpoints must increase strictly inside [0, 1)".into(),
            ));
        }
        if values.windows(2).any(|w| !w[1].is_subset(&w[0])) {
            return Err(Error::Precondition("chain values must weakly decrease".into()));
        }
        Ok(Self { starts, values })
    }

    pub fn starts(&self) -> &[Rational64] {
        &self.starts
    }

    pub fn values(&self) -> &[Class] {
        &self.values
    }

    fn check_range(s: Rational64) -> Result<()> {
        if s < Rational64::zero() || s > Rational64::one() {
            return Err(Error::Precondition(format!("parameter {s} outside [0, 1]")));
        }
        Ok(())
    }

    fn interval_of(&self, s: Rational64) -> usize {
        self.starts.iter().rposition(|&b| b <= s).unwrap_or(0)
    }

    pub fn value_at(&self, s: Rational64) -> Result<Class> {
        Self::check_range(s)?;
        if s == Rational64::one() {
            return Ok(Class::new());
        }
        Ok(self.values[self.interval_of(s)].clone())
    }

    /// Union of the values at all `r > s`, for `s ∈ [0, 1]`; empty at `s = 1`.
    pub fn cut_union(&self, s: Rational64) -> Result<Class> {
        Self::check_range(s)?;
        let mut out = Class::new();
        for (i, v) in self.values.iter().enumerate() {
            let end = self.starts.get(i + 1).copied().unwrap_or_else(Rational64::one);
            if end > s {
                out.extend(v.iter().copied());
            }
        }
        Ok(out)
    }

    /// Intersection of the values at all `r < s`, for `s ∈ [0, 1]`; `top` at
    /// `s = 0`.
    pub fn cut_intersection(&self, s: Rational64, top: &Class) -> Result<Class> {
        Self::check_range(s)?;
        let mut out = top.clone();
        for (i, v) in self.values.iter().enumerate() {
            if self.starts[i] < s {
                out = out.intersection(v).copied().collect();
            }
        }
        Ok(out)
    }

    /// Breakpoints, midpoints of intervals and 1: enough to see every value
    /// and every one-sided limit.
    pub fn probe_points(&self) -> Vec<Rational64> {
        let mut out = Vec::new();
        for (i, &s) in self.starts.iter().enumerate() {
            let end = self.starts.get(i + 1).copied().unwrap_or_else(Rational64::one);
            out.push(s);
            out.push((s + end) / 2);
        }
        out.push(Rational64::one());
        out
    }

    /// sup{s : the predicate holds on the value at s}, assuming the predicate
    /// holds on the first value: the left end of the first failing interval,
    /// or 1 if none fails.
    pub fn last_holding(&self, mut holds: impl FnMut(&Class) -> bool) -> Rational64 {
        for (i, v) in self.values.iter().enumerate() {
            if !holds(v) {
                return self.starts[i];
            }
        }
        Rational64::one()
    }

    pub fn map(&self, mut f: impl FnMut(&Class) -> Result<Class>) -> Result<StepChain> {
        let values = self.values.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        StepChain::new(self.starts.clone(), values)
    }

    /// Same step function with the extra breakpoint `s` inserted.
    pub fn refined(&self, s: Rational64) -> Result<StepChain> {
        if self.starts.contains(&s) {
            return Ok(self.clone());
        }
        let v = self.value_at(s)?;
        let i = self.interval_of(s) + 1;
        let mut starts = self.starts.clone();
        let mut values = self.values.clone();
        starts.insert(i, s);
        values.insert(i, v);
        StepChain::new(starts, values)
    }
}

pub fn format_rational(r: Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn chain() -> StepChain {
        StepChain::new(
            vec![r(0, 1), r(1, 3), r(2, 3)],
            vec![Class::from([0, 1, 2]), Class::from([2]), Class::new()],
        )
        .unwrap()
    }

    #[test]
    fn half_open_values() {
        let c = chain();
        assert_eq!(c.value_at(r(1, 3)).unwrap(), Class::from([2]));
        assert_eq!(c.value_at(r(1, 4)).unwrap().len(), 3);
        assert!(c.value_at(r(1, 1)).unwrap().is_empty());
        assert!(c.value_at(r(3, 2)).is_err());
    }

    #[test]
    fn cuts() {
        let c = chain();
        let top = Class::from([0, 1, 2]);
        assert_eq!(c.cut_union(r(1, 3)).unwrap(), Class::from([2]));
        assert_eq!(c.cut_union(r(0, 1)).unwrap(), top);
        assert!(c.cut_union(r(2, 3)).unwrap().is_empty());
        assert_eq!(c.cut_intersection(r(1, 3), &top).unwrap(), top);
        assert_eq!(c.cut_intersection(r(1, 2), &top).unwrap(), Class::from([2]));
        assert!(c.cut_intersection(r(1, 1), &top).unwrap().is_empty());
        assert_eq!(c.cut_intersection(r(0, 1), &top).unwrap(), top);
    }

    #[test]
    fn validation() {
        assert!(StepChain::new(vec![r(1, 2)], vec![Class::new()]).is_err());
        assert!(StepChain::new(vec![r(0, 1), r(1, 2)], vec![Class::new(), Class::from([1])]).is_err());
        assert!(StepChain::new(vec![r(0, 1), r(1, 1)], vec![Class::new(), Class::new()]).is_err());
    }

    #[test]
    fn refinement_keeps_values() {
        let c = chain();
        let d = c.refined(r(1, 2)).unwrap();
        for s in c.probe_points().into_iter().chain(d.probe_points()) {
            assert_eq!(c.value_at(s).unwrap(), d.value_at(s).unwrap());
        }
        assert_eq!(format_rational(r(2, 6)), "1/3");
        assert_eq!(format_rational(r(1, 1)), "1");
    }
}
