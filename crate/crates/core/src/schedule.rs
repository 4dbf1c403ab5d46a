//! Interpolation schedules connecting the driver and problem Hamiltonians.
//!
//! A schedule is a pair of coefficient functions (f(s), g(s)) on the
//! dimensionless time s in [0, 1], giving H(s) = f(s) H0 + g(s) HP. The
//! induced field law lambda(s) = f(s)/g(s) diverges wherever g vanishes;
//! that value is represented as an explicit `f64::INFINITY`, never as an
//! overflowed finite number.

use crate::error::ScheduleError;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// The three interpolation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScheduleKind {
    /// f = 1-s, g = s.
    Linear,
    /// f = 1-s^2, g = s(2-s).
    Square,
    /// f = 4(s-1/2)^2, g = -4s(s-1): driver -> problem -> driver.
    Roundtrip,
}

impl ScheduleKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScheduleKind::Linear => "linear",
            ScheduleKind::Square => "square",
            ScheduleKind::Roundtrip => "roundtrip",
        }
    }
}

impl std::str::FromStr for ScheduleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(ScheduleKind::Linear),
            "square" => Ok(ScheduleKind::Square),
            "roundtrip" => Ok(ScheduleKind::Roundtrip),
            other => Err(format!(
                "unknown schedule '{other}' (expected linear|square|roundtrip)"
            )),
        }
    }
}

impl std::fmt::Display for ScheduleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A schedule, optionally traversed backwards.
///
/// The reversed wrapper maps s -> 1-s, which is how the return path from
/// the problem Hamiltonian back to the driver is expressed without
/// duplicating the coefficient functions (exchanging H0 and HP in a
/// symmetric interpolation is the same as running time backwards).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Schedule {
    kind: ScheduleKind,
    reversed: bool,
}

impl Schedule {
    pub fn new(kind: ScheduleKind) -> Self {
        Schedule {
            kind,
            reversed: false,
        }
    }

    pub fn linear() -> Self {
        Self::new(ScheduleKind::Linear)
    }

    pub fn square() -> Self {
        Self::new(ScheduleKind::Square)
    }

    pub fn roundtrip() -> Self {
        Self::new(ScheduleKind::Roundtrip)
    }

    /// The same schedule traversed from s=1 to s=0.
    pub fn reversed(self) -> Self {
        Schedule {
            kind: self.kind,
            reversed: !self.reversed,
        }
    }

    pub fn kind(&self) -> ScheduleKind {
        self.kind
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    /// (f(s), g(s)).
    pub fn coefficients(&self, s: f64) -> Result<(f64, f64), ScheduleError> {
        if !(0.0..=1.0).contains(&s) {
            return Err(ScheduleError::OutOfRange(s));
        }
        let s = if self.reversed { 1.0 - s } else { s };
        Ok(match self.kind {
            ScheduleKind::Linear => (1.0 - s, s),
            ScheduleKind::Square => (1.0 - s * s, s * (2.0 - s)),
            ScheduleKind::Roundtrip => (4.0 * (s - 0.5) * (s - 0.5), -4.0 * s * (s - 1.0)),
        })
    }

    /// The induced field lambda(s) = f(s)/g(s); `INFINITY` where g(s) = 0.
    pub fn lambda(&self, s: f64) -> Result<f64, ScheduleError> {
        let (f, g) = self.coefficients(s)?;
        if g == 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok(f / g)
    }

    /// The s values where lambda(s) = 1, i.e. where the sweep crosses the
    /// critical line. Linear and square cross once at s = 1/2; the round
    /// trip crosses at (2 -+ sqrt(2))/4 on the way in and out.
    pub fn lambda_unity_crossings(&self) -> Vec<f64> {
        let mut roots = match self.kind {
            ScheduleKind::Linear | ScheduleKind::Square => vec![0.5],
            ScheduleKind::Roundtrip => vec![(2.0 - SQRT_2) / 4.0, (2.0 + SQRT_2) / 4.0],
        };
        if self.reversed {
            roots = roots.into_iter().map(|s| 1.0 - s).collect();
            roots.reverse();
        }
        roots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn boundary_identities_are_exact() {
        for kind in [ScheduleKind::Linear, ScheduleKind::Square] {
            let sched = Schedule::new(kind);
            assert_eq!(sched.coefficients(0.0).unwrap(), (1.0, 0.0));
            assert_eq!(sched.coefficients(1.0).unwrap(), (0.0, 1.0));
        }
        let rt = Schedule::roundtrip();
        assert_eq!(rt.coefficients(0.0).unwrap(), (1.0, 0.0));
        assert_eq!(rt.coefficients(0.5).unwrap(), (0.0, 1.0));
        assert_eq!(rt.coefficients(1.0).unwrap(), (1.0, 0.0));
    }

    #[test]
    fn coefficient_values() {
        assert_eq!(
            Schedule::linear().coefficients(0.25).unwrap(),
            (0.75, 0.25)
        );
        assert_eq!(Schedule::square().coefficients(0.5).unwrap(), (0.75, 0.75));
        assert_eq!(Schedule::roundtrip().coefficients(0.5).unwrap(), (0.0, 1.0));
    }

    #[test]
    fn lambda_laws() {
        assert_eq!(Schedule::linear().lambda(0.5).unwrap(), 1.0);
        assert_eq!(Schedule::square().lambda(0.5).unwrap(), 1.0);
        assert_eq!(Schedule::linear().lambda(0.0).unwrap(), f64::INFINITY);
        assert_eq!(Schedule::square().lambda(0.0).unwrap(), f64::INFINITY);
        assert_eq!(Schedule::roundtrip().lambda(0.0).unwrap(), f64::INFINITY);
        assert_eq!(Schedule::roundtrip().lambda(1.0).unwrap(), f64::INFINITY);
        // linear: (1-s)/s
        let s = 0.2;
        assert_abs_diff_eq!(
            Schedule::linear().lambda(s).unwrap(),
            (1.0 - s) / s,
            epsilon = 1e-15
        );
        // square: (1-s^2)/(2s-s^2)
        assert_abs_diff_eq!(
            Schedule::square().lambda(s).unwrap(),
            (1.0 - s * s) / (2.0 * s - s * s),
            epsilon = 1e-15
        );
    }

    #[test]
    fn lambda_is_strictly_decreasing_for_one_way_schedules() {
        for sched in [Schedule::linear(), Schedule::square()] {
            let mut prev = f64::INFINITY;
            for i in 1..=100 {
                let s = i as f64 / 100.0;
                let lam = sched.lambda(s).unwrap();
                assert!(lam < prev, "{sched:?} not decreasing at s={s}");
                prev = lam;
            }
        }
    }

    #[test]
    fn roundtrip_crossings_match_bisection() {
        let sched = Schedule::roundtrip();
        let crossings = sched.lambda_unity_crossings();
        assert_eq!(crossings.len(), 2);
        assert_abs_diff_eq!(crossings[0], (2.0 - SQRT_2) / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(crossings[1], (2.0 + SQRT_2) / 4.0, epsilon = 1e-15);

        // independent check: bisect f(s) - g(s) on each side of s = 1/2
        let h = |s: f64| {
            let (f, g) = sched.coefficients(s).unwrap();
            f - g
        };
        for (mut lo, mut hi, root) in [(0.01, 0.5, crossings[0]), (0.5, 0.99, crossings[1])] {
            assert!(h(lo) * h(hi) < 0.0);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if h(lo) * h(mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            assert_abs_diff_eq!(0.5 * (lo + hi), root, epsilon = 1e-12);
        }
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(Schedule::linear().coefficients(-0.1).is_err());
        assert!(Schedule::linear().coefficients(1.1).is_err());
        assert!(Schedule::square().lambda(2.0).is_err());
    }

    #[test]
    fn reversal_is_time_mirror() {
        let sched = Schedule::square().reversed();
        assert_eq!(sched.coefficients(0.0).unwrap(), (0.0, 1.0));
        assert_eq!(sched.coefficients(1.0).unwrap(), (1.0, 0.0));
        let twice = sched.reversed();
        assert_eq!(
            twice.coefficients(0.3).unwrap(),
            Schedule::square().coefficients(0.3).unwrap()
        );
    }
}
