use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A proper closed subarc of the unit circle: centre angle `theta_c` and
/// normalized length `lambda`, so the arc spans `theta_c ± pi * lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ArcRepr", into = "ArcRepr")]
pub struct Arc {
    theta_c: f64,
    lambda: f64,
}

#[derive(Serialize, Deserialize)]
struct ArcRepr {
    theta_c: f64,
    lambda: f64,
}

impl TryFrom<ArcRepr> for Arc {
    type Error = Error;
    fn try_from(r: ArcRepr) -> Result<Self> {
        Arc::new(r.theta_c, r.lambda)
    }
}

impl From<Arc> for ArcRepr {
    fn from(a: Arc) -> Self {
        ArcRepr {
            theta_c: a.theta_c,
            lambda: a.lambda,
        }
    }
}

impl Arc {
    pub fn new(theta_c: f64, lambda: f64) -> Result<Self> {
        if !theta_c.is_finite() {
            return invalid("arc centre must be finite");
        }
        if !(lambda > 0.0 && lambda < 1.0) {
            return invalid(format!("arc lambda must lie in (0, 1), got {lambda}"));
        }
        Ok(Self { theta_c, lambda })
    }

    /// `{e^{i theta} : -pi/2 <= theta <= pi/2}`.
    pub fn semicircle() -> Self {
        Self {
            theta_c: 0.0,
            lambda: 0.5,
        }
    }

    pub fn theta_c(&self) -> f64 {
        self.theta_c
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Arc length `2 pi lambda`.
    pub fn length(&self) -> f64 {
        TAU * self.lambda
    }

    /// Unreduced start angle `theta_c - pi lambda`; the arc runs
    /// counter-clockwise from here to [`Arc::end`].
    pub fn start(&self) -> f64 {
        self.theta_c - PI * self.lambda
    }

    pub fn end(&self) -> f64 {
        self.theta_c + PI * self.lambda
    }

    /// Endpoints reduced to `[0, 2 pi)`.
    pub fn endpoints(&self) -> (f64, f64) {
        (reduce_angle(self.start()), reduce_angle(self.end()))
    }

    /// The complementary arc `T \ I` (as a closed arc sharing the endpoints).
    pub fn complement(&self) -> Self {
        Self {
            theta_c: self.theta_c + PI,
            lambda: 1.0 - self.lambda,
        }
    }

    /// Signed offset of `theta` from the centre, in `(-pi, pi]`.
    pub fn offset(&self, theta: f64) -> f64 {
        signed_angle(theta - self.theta_c)
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.offset(theta).abs() <= PI * self.lambda * (1.0 + 1e-14)
    }

    /// Angular distance from `theta` to the nearest endpoint.
    pub fn distance_to_boundary(&self, theta: f64) -> f64 {
        (PI * self.lambda - self.offset(theta).abs()).abs()
    }

    /// True when `other` lies inside this arc with both endpoints strictly interior.
    pub fn contains_strictly(&self, other: &Arc) -> bool {
        let off = self.offset(other.theta_c).abs();
        off + PI * other.lambda < PI * self.lambda
    }
}

/// Reduce an angle to `[0, 2 pi)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Reduce an angle to `(-pi, pi]`.
pub fn signed_angle(theta: f64) -> f64 {
    let r = reduce_angle(theta);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_improper_arcs() {
        assert!(Arc::new(0.0, 0.0).is_err());
        assert!(Arc::new(0.0, 1.0).is_err());
        assert!(Arc::new(f64::NAN, 0.5).is_err());
        assert!(Arc::new(1.0, 0.999).is_ok());
    }

    #[test]
    fn endpoints_and_complement() {
        let a = Arc::new(0.0, 0.5).unwrap();
        let (s, e) = a.endpoints();
        assert_relative_eq!(s, 1.5 * PI);
        assert_relative_eq!(e, 0.5 * PI);
        let j = a.complement();
        assert_relative_eq!(j.lambda(), 0.5);
        assert!(j.contains(PI));
        assert!(!j.contains(0.1));
        assert!(a.contains(-0.4 + TAU));
    }

    #[test]
    fn strict_containment() {
        let j = Arc::semicircle().complement();
        assert!(j.contains_strictly(&Arc::new(PI, 0.2).unwrap()));
        assert!(!j.contains_strictly(&Arc::new(PI, 0.5).unwrap()));
        assert!(!j.contains_strictly(&Arc::new(PI + 0.2, 0.45).unwrap()));
        assert!(!j.contains_strictly(&Arc::new(0.6 * PI, 0.2).unwrap()));
    }

    #[test]
    fn json_shape() {
        let a: Arc = serde_json::from_str(r#"{"theta_c": 1.0, "lambda": 0.25}"#).unwrap();
        assert_eq!(a, Arc::new(1.0, 0.25).unwrap());
        assert!(serde_json::from_str::<Arc>(r#"{"theta_c": 1.0, "lambda": 1.5}"#).is_err());
    }
}
