//! The compactly supported smooth weight used by the smoothed
//! long-element sum.

/// A C-infinity bump on the open interval (lo, hi), zero outside, given on
/// the canonical support (1/2, 2) by g(t) = exp(4 / ((2t - 1)(t - 2))) and
/// transplanted affinely to other intervals. All derivatives vanish at the
/// endpoints, which is more than the eight continuous derivatives the
/// smoothed-sum bound asks of its weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothWindow {
    lo: f64,
    hi: f64,
}

impl SmoothWindow {
    pub fn new(lo: f64, hi: f64) -> Self {
        SmoothWindow { lo, hi }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Support is the open interval; an inverted window is empty.
    pub fn contains(&self, t: f64) -> bool {
        self.lo < t && t < self.hi
    }

    /// One-dimensional window value g(t).
    pub fn eval(&self, t: f64) -> f64 {
        if !self.contains(t) {
            return 0.0;
        }
        // Map onto the canonical support (1/2, 2).
        let s = 0.5 + 1.5 * (t - self.lo) / (self.hi - self.lo);
        (4.0 / ((2.0 * s - 1.0) * (s - 2.0))).exp()
    }

    /// The product window f(y1, y2) = g(y1) g(y2).
    pub fn eval2(&self, y1: f64, y2: f64) -> f64 {
        self.eval(y1) * self.eval(y2)
    }
}

impl Default for SmoothWindow {
    fn default() -> Self {
        SmoothWindow { lo: 0.5, hi: 2.0 }
    }
}
