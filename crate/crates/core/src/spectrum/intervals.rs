use alloc::vec::Vec;

/// Tolerance for merging touching intervals and for closure membership.
pub const MERGE_TOL: f64 = 1e-12;

/// Interval of the extended real line. Infinite ends are always open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: lo_closed && lo.is_finite(),
            hi_closed: hi_closed && hi.is_finite(),
        }
    }

    /// `[lo, hi]` with infinite ends left open.
    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval::new(lo, hi, true, true)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }
}

/// Finite union of disjoint intervals, sorted by lower end.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn real_line() -> Self {
        IntervalSet::from_intervals([Interval::closed(f64::NEG_INFINITY, f64::INFINITY)])
    }

    /// `(−∞, −|m|] ∪ [|m|, ∞)`, the spectrum of the free operator.
    pub fn free(mass: f64) -> Self {
        let m = mass.abs();
        IntervalSet::from_intervals([
            Interval::closed(f64::NEG_INFINITY, -m),
            Interval::closed(m, f64::INFINITY),
        ])
    }

    pub fn from_intervals<I: IntoIterator<Item = Interval>>(it: I) -> Self {
        let mut s = IntervalSet { intervals: it.into_iter().collect() };
        s.normalize();
        s
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn push(&mut self, iv: Interval) {
        self.intervals.push(iv);
        self.normalize();
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_intervals(self.intervals.iter().chain(&other.intervals).copied())
    }

    /// Sorts, drops empty intervals and merges intervals that overlap or
    /// touch within [`MERGE_TOL`]. Idempotent.
    pub fn normalize(&mut self) {
        self.intervals.retain(|iv| !iv.is_empty() && !iv.lo.is_nan() && !iv.hi.is_nan());
        self.intervals.sort_by(|a, b| {
            a.lo.partial_cmp(&b.lo)
                .unwrap()
                .then((!a.lo_closed).cmp(&!b.lo_closed))
        });
        let mut out: Vec<Interval> = Vec::with_capacity(self.intervals.len());
        for iv in self.intervals.drain(..) {
            match out.last_mut() {
                Some(last) if touches(last, &iv) => {
                    if iv.lo == last.lo {
                        last.lo_closed |= iv.lo_closed;
                    }
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                        last.hi_closed = iv.hi_closed;
                    } else if iv.hi == last.hi {
                        last.hi_closed |= iv.hi_closed;
                    }
                }
                _ => out.push(iv),
            }
        }
        self.intervals = out;
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// Membership in the closure, with the ends widened by `tol·max(1, |x|)`.
    pub fn closure_contains(&self, x: f64, tol: f64) -> bool {
        let t = tol * x.abs().max(1.0);
        self.intervals.iter().any(|iv| iv.lo - t <= x && x <= iv.hi + t)
    }

    pub fn is_real_line(&self) -> bool {
        matches!(self.intervals.as_slice(), [iv] if iv.lo == f64::NEG_INFINITY && iv.hi == f64::INFINITY)
    }

    /// Same number of intervals with every finite end within `tol` and equal
    /// closedness.
    pub fn approx_eq(&self, other: &IntervalSet, tol: f64) -> bool {
        let close = |a: f64, b: f64| a == b || (a - b).abs() <= tol;
        self.intervals.len() == other.intervals.len()
            && self.intervals.iter().zip(&other.intervals).all(|(a, b)| {
                close(a.lo, b.lo)
                    && close(a.hi, b.hi)
                    && a.lo_closed == b.lo_closed
                    && a.hi_closed == b.hi_closed
            })
    }
}

fn touches(a: &Interval, b: &Interval) -> bool {
    if b.lo < a.hi {
        return true;
    }
    let gap = b.lo - a.hi;
    if gap == 0.0 {
        return a.hi_closed || b.lo_closed;
    }
    gap <= MERGE_TOL * a.hi.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn massless_free_spectrum_is_the_line() {
        assert!(IntervalSet::free(0.0).is_real_line());
        assert!(!IntervalSet::free(1.0).is_real_line());
    }

    #[test]
    fn merge_and_idempotence() {
        let mut s = IntervalSet::from_intervals([
            Interval::closed(2.0, 3.0),
            Interval::closed(-1.0, 0.5),
            Interval::closed(0.5, 1.0),
            Interval::new(1.0 + 1e-14, 1.5, true, false),
        ]);
        assert_eq!(s.intervals().len(), 2);
        assert_eq!(s.intervals()[0].hi, 1.5);
        let before = s.clone();
        s.normalize();
        assert_eq!(s, before);
    }

    #[test]
    fn open_ends_do_not_merge() {
        let s = IntervalSet::from_intervals([
            Interval::new(0.0, 1.0, true, false),
            Interval::new(1.0, 2.0, false, true),
        ]);
        assert_eq!(s.intervals().len(), 2);
        assert!(!s.contains(1.0));
        assert!(s.closure_contains(1.0, 0.0));
    }

    #[test]
    fn membership_respects_flags() {
        let s = IntervalSet::free(1.0);
        assert!(s.contains(1.0) && s.contains(-1.0) && !s.contains(0.999));
        assert!(s.contains(1e300) && !s.contains(f64::INFINITY));
    }
}
