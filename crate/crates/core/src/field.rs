//! Hamiltonian field descriptions `H(t) = h0 * 1 + h(t) . sigma` (hbar = 1).

use crate::error::{Error, Result};
use crate::linalg::Vec3;
use std::fmt;
use std::sync::Arc;

type FieldFn = Arc<dyn Fn(f64) -> Vec3 + Send + Sync>;

#[derive(Clone)]
enum FieldKind {
    Stationary(Vec3),
    /// Piecewise-linear interpolation of sampled field values.
    Sampled {
        times: Arc<[f64]>,
        values: Arc<[Vec3]>,
    },
    TimeVarying {
        field: FieldFn,
        rate: Option<FieldFn>,
    },
}

/// A field specification: the identity coefficient `h0` (units of inverse
/// time) plus a possibly time-dependent field vector `h(t)`.
#[derive(Clone)]
pub struct FieldSpec {
    h0: f64,
    kind: FieldKind,
}

impl FieldSpec {
    /// Constant field `h0 * 1 + h . sigma`.
    pub fn stationary(h0: f64, h: Vec3) -> Self {
        FieldSpec {
            h0,
            kind: FieldKind::Stationary(h),
        }
    }

    /// Traceless constant field `h . sigma`.
    pub fn traceless(h: Vec3) -> Self {
        Self::stationary(0.0, h)
    }

    /// Time-varying field given as a closure, with no rate information.
    pub fn time_varying<F>(h0: f64, field: F) -> Self
    where
        F: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        FieldSpec {
            h0,
            kind: FieldKind::TimeVarying {
                field: Arc::new(field),
                rate: None,
            },
        }
    }

    /// Time-varying field with its analytic rate `dh/dt`.
    pub fn time_varying_with_rate<F, G>(h0: f64, field: F, rate: G) -> Self
    where
        F: Fn(f64) -> Vec3 + Send + Sync + 'static,
        G: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        FieldSpec {
            h0,
            kind: FieldKind::TimeVarying {
                field: Arc::new(field),
                rate: Some(Arc::new(rate)),
            },
        }
    }

    /// Field sampled on a strictly increasing time grid, interpolated
    /// linearly; the rate is the per-segment slope.
    pub fn from_samples(h0: f64, times: Vec<f64>, values: Vec<Vec3>) -> Result<Self> {
        if times.len() != values.len() || times.len() < 2 {
            return Err(Error::InvalidConfig(
                "sampled field needs at least two matching time/value samples".into(),
            ));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConfig(
                "sampled field times must be strictly increasing".into(),
            ));
        }
        Ok(FieldSpec {
            h0,
            kind: FieldKind::Sampled {
                times: times.into(),
                values: values.into(),
            },
        })
    }

    pub fn h0(&self) -> f64 {
        self.h0
    }

    pub fn is_stationary(&self) -> bool {
        matches!(self.kind, FieldKind::Stationary(_))
    }

    /// The constant field vector, when stationary.
    pub fn stationary_field(&self) -> Option<Vec3> {
        match self.kind {
            FieldKind::Stationary(h) => Some(h),
            _ => None,
        }
    }

    /// Field vector at time `t`.
    pub fn field_at(&self, t: f64) -> Vec3 {
        match &self.kind {
            FieldKind::Stationary(h) => *h,
            FieldKind::Sampled { times, values } => {
                let (i, u) = locate(times, t);
                values[i] + (values[i + 1] - values[i]) * u
            }
            FieldKind::TimeVarying { field, .. } => field(t),
        }
    }

    /// Field rate `dh/dt` at time `t`, when available. Stationary fields
    /// report an exact zero rate; closure-backed fields without a rate
    /// report `None`.
    pub fn rate_at(&self, t: f64) -> Option<Vec3> {
        match &self.kind {
            FieldKind::Stationary(_) => Some(Vec3::ZERO),
            FieldKind::Sampled { times, values } => {
                let (i, _) = locate(times, t);
                Some((values[i + 1] - values[i]) / (times[i + 1] - times[i]))
            }
            FieldKind::TimeVarying { rate, .. } => rate.as_ref().map(|r| r(t)),
        }
    }

    /// The sample grid backing this field, when it was built from samples.
    pub fn samples(&self) -> Option<(&[f64], &[Vec3])> {
        match &self.kind {
            FieldKind::Sampled { times, values } => Some((times, values)),
            _ => None,
        }
    }

    /// Largest field magnitude over the given times (plus interval
    /// midpoints, which the integrator also evaluates).
    pub fn max_field_norm(&self, times: &[f64]) -> f64 {
        if let Some(h) = self.stationary_field() {
            return h.norm();
        }
        let mut m: f64 = 0.0;
        for w in times.windows(2) {
            m = m.max(self.field_at(w[0]).norm());
            m = m.max(self.field_at(0.5 * (w[0] + w[1])).norm());
        }
        if let Some(&last) = times.last() {
            m = m.max(self.field_at(last).norm());
        }
        m
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FieldKind::Stationary(h) => {
                write!(f, "FieldSpec::Stationary {{ h0: {}, h: {:?} }}", self.h0, h)
            }
            FieldKind::Sampled { times, .. } => write!(
                f,
                "FieldSpec::Sampled {{ h0: {}, samples: {} }}",
                self.h0,
                times.len()
            ),
            FieldKind::TimeVarying { rate, .. } => write!(
                f,
                "FieldSpec::TimeVarying {{ h0: {}, rate: {} }}",
                self.h0,
                rate.is_some()
            ),
        }
    }
}

/// Segment index and fractional position for `t` on a sorted grid, clamped
/// to the grid ends.
fn locate(times: &[f64], t: f64) -> (usize, f64) {
    let n = times.len();
    if t <= times[0] {
        return (0, 0.0);
    }
    if t >= times[n - 1] {
        return (n - 2, 1.0);
    }
    let i = match times.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
        Ok(i) => i.min(n - 2),
        Err(i) => i - 1,
    };
    (i, (t - times[i]) / (times[i + 1] - times[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn stationary_field_is_constant() {
        let h = FieldSpec::stationary(0.5, Vec3::new(0.0, 0.0, 2.0));
        assert_eq!(h.field_at(0.0), h.field_at(17.3));
        assert_eq!(h.rate_at(3.0), Some(Vec3::ZERO));
        assert!(h.is_stationary());
    }

    #[test]
    fn sampled_field_interpolates() {
        let f = FieldSpec::from_samples(
            0.0,
            vec![0.0, 1.0, 2.0],
            vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(1.0, 1.0, 0.0),
            ],
        )
        .unwrap();
        assert_relative_eq!(f.field_at(0.5).x, 0.5);
        assert_relative_eq!(f.field_at(1.5).y, 0.5);
        // clamped beyond the ends
        assert_relative_eq!(f.field_at(-1.0).x, 0.0);
        assert_relative_eq!(f.field_at(9.0).y, 1.0);
        // piecewise-constant slope
        assert_relative_eq!(f.rate_at(0.5).unwrap().x, 1.0);
        assert_relative_eq!(f.rate_at(1.5).unwrap().y, 1.0);
    }

    #[test]
    fn closure_field_rate_optional() {
        let f = FieldSpec::time_varying(0.0, |t| Vec3::new(t.cos(), t.sin(), 0.0));
        assert_eq!(f.rate_at(0.3), None);
        let g = FieldSpec::time_varying_with_rate(
            0.0,
            |t| Vec3::new(t.cos(), t.sin(), 0.0),
            |t| Vec3::new(-t.sin(), t.cos(), 0.0),
        );
        assert_relative_eq!(g.rate_at(0.0).unwrap().y, 1.0);
    }

    #[test]
    fn sampled_field_rejects_bad_grids() {
        assert!(FieldSpec::from_samples(0.0, vec![0.0], vec![Vec3::ZERO]).is_err());
        assert!(
            FieldSpec::from_samples(0.0, vec![0.0, 0.0], vec![Vec3::ZERO, Vec3::ZERO]).is_err()
        );
    }
}
