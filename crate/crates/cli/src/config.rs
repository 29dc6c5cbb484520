//! Flat `key = value` config files with dotted keys.
//!
//! Lines are `key = value`; blank lines and lines starting with `#` are
//! skipped. Keys may not repeat. Example run config:
//!
//! ```text
//! state.theta = 0.7853981634
//! state.phi = 4.7123889804
//! hamiltonian.hz = 1.0
//! t_end = auto
//! target.theta = 0.7853981634
//! target.phi = 1.5707963268
//! samples = 4096
//! ```

use bloch_metrics::{Error, FieldSpec, PureState, Result, SphericalAngles, Vec3};
use std::collections::BTreeMap;

pub struct ConfigMap {
    entries: BTreeMap<String, String>,
    consumed: std::cell::RefCell<std::collections::BTreeSet<String>>,
}

impl ConfigMap {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(Error::InvalidConfig(format!(
                    "line {}: empty key",
                    lineno + 1
                )));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(Error::InvalidConfig(format!("duplicate key `{key}`")));
            }
        }
        Ok(ConfigMap {
            entries,
            consumed: Default::default(),
        })
    }

    fn get(&self, key: &str) -> Option<&str> {
        let v = self.entries.get(key).map(|s| s.as_str());
        if v.is_some() {
            self.consumed.borrow_mut().insert(key.to_string());
        }
        v
    }

    fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn f64(&self, key: &str) -> Result<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| Error::InvalidConfig(format!("{key}: `{v}` is not a number"))),
        }
    }

    fn f64_required(&self, key: &str) -> Result<f64> {
        self.f64(key)?
            .ok_or_else(|| Error::InvalidConfig(format!("{key}: missing required key")))
    }

    fn usize(&self, key: &str) -> Result<Option<usize>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<usize>()
                .map(Some)
                .map_err(|_| Error::InvalidConfig(format!("{key}: `{v}` is not an integer"))),
        }
    }

    /// Unknown keys are config errors; typos should not pass silently.
    pub fn reject_unknown(&self) -> Result<()> {
        let consumed = self.consumed.borrow();
        for key in self.entries.keys() {
            if !consumed.contains(key) {
                return Err(Error::InvalidConfig(format!("{key}: unknown key")));
            }
        }
        Ok(())
    }
}

/// End time: explicit, or solved from the target state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EndTime {
    Explicit(f64),
    Auto,
}

/// A config-driven single evolution.
#[derive(Debug)]
pub struct RunConfig {
    pub initial_state: PureState,
    pub hamiltonian: FieldSpec,
    pub t_end: EndTime,
    pub target: Option<PureState>,
    pub samples: Option<usize>,
}

fn state_from(map: &ConfigMap, prefix: &str) -> Result<Option<PureState>> {
    let angle_keys = [format!("{prefix}.theta"), format!("{prefix}.phi")];
    let amp_keys = [
        format!("{prefix}.c0.re"),
        format!("{prefix}.c0.im"),
        format!("{prefix}.c1.re"),
        format!("{prefix}.c1.im"),
    ];
    let has_angles = angle_keys.iter().any(|k| map.has(k));
    let has_amps = amp_keys.iter().any(|k| map.has(k));
    match (has_angles, has_amps) {
        (false, false) => Ok(None),
        (true, true) => Err(Error::InvalidConfig(format!(
            "{prefix}: give either angles or amplitudes, not both"
        ))),
        (true, false) => {
            let theta = map.f64_required(&angle_keys[0])?;
            let phi = map.f64(&angle_keys[1])?.unwrap_or(0.0);
            Ok(Some(PureState::from_angles(SphericalAngles::new(
                theta, phi,
            )?)))
        }
        (false, true) => {
            let c0re = map.f64(&amp_keys[0])?.unwrap_or(0.0);
            let c0im = map.f64(&amp_keys[1])?.unwrap_or(0.0);
            let c1re = map.f64(&amp_keys[2])?.unwrap_or(0.0);
            let c1im = map.f64(&amp_keys[3])?.unwrap_or(0.0);
            Ok(Some(PureState::from_reals(c0re, c0im, c1re, c1im)?))
        }
    }
}

fn hamiltonian_from(map: &ConfigMap) -> Result<FieldSpec> {
    let const_keys = [
        "hamiltonian.h0",
        "hamiltonian.hx",
        "hamiltonian.hy",
        "hamiltonian.hz",
    ];
    let family_keys = [
        "hamiltonian.family.ax",
        "hamiltonian.family.ay",
        "hamiltonian.family.az",
        "hamiltonian.family.bx",
        "hamiltonian.family.by",
        "hamiltonian.family.bz",
        "hamiltonian.family.alpha",
        "hamiltonian.family.energy",
    ];
    let has_const = const_keys.iter().any(|k| map.has(k));
    let has_family = family_keys.iter().any(|k| map.has(k));
    match (has_const, has_family) {
        (false, false) => Err(Error::InvalidConfig(
            "hamiltonian: missing (give hamiltonian.h{0,x,y,z} or hamiltonian.family.*)".into(),
        )),
        (true, true) => Err(Error::InvalidConfig(
            "hamiltonian: give either constants or a family, not both".into(),
        )),
        (true, false) => {
            let h0 = map.f64("hamiltonian.h0")?.unwrap_or(0.0);
            let hx = map.f64("hamiltonian.hx")?.unwrap_or(0.0);
            let hy = map.f64("hamiltonian.hy")?.unwrap_or(0.0);
            let hz = map.f64("hamiltonian.hz")?.unwrap_or(0.0);
            Ok(FieldSpec::stationary(h0, Vec3::new(hx, hy, hz)))
        }
        (false, true) => {
            let a_hat = Vec3::new(
                map.f64_required("hamiltonian.family.ax")?,
                map.f64_required("hamiltonian.family.ay")?,
                map.f64_required("hamiltonian.family.az")?,
            );
            let b_hat = Vec3::new(
                map.f64_required("hamiltonian.family.bx")?,
                map.f64_required("hamiltonian.family.by")?,
                map.f64_required("hamiltonian.family.bz")?,
            );
            let alpha = map.f64_required("hamiltonian.family.alpha")?;
            let energy = map.f64("hamiltonian.family.energy")?.unwrap_or(1.0);
            bloch_metrics::family_hamiltonian(&bloch_metrics::FamilySpec {
                a_hat,
                b_hat,
                alpha,
                energy,
            })
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let map = ConfigMap::parse(text)?;
        let initial_state = state_from(&map, "state")?
            .ok_or_else(|| Error::InvalidConfig("state: missing initial state".into()))?;
        let hamiltonian = hamiltonian_from(&map)?;
        let target = state_from(&map, "target")?;
        let t_end = match map.get("t_end") {
            None => return Err(Error::InvalidConfig("t_end: missing required key".into())),
            Some("auto") => EndTime::Auto,
            Some(v) => EndTime::Explicit(v.parse::<f64>().map_err(|_| {
                Error::InvalidConfig(format!("t_end: `{v}` is neither a number nor `auto`"))
            })?),
        };
        if t_end == EndTime::Auto && target.is_none() {
            return Err(Error::InvalidConfig(
                "t_end: `auto` requires a target state".into(),
            ));
        }
        let samples = map.usize("samples")?;
        map.reject_unknown()?;
        Ok(RunConfig {
            initial_state,
            hamiltonian,
            t_end,
            target,
            samples,
        })
    }
}

/// A config-driven family-angle sweep.
#[derive(Debug)]
pub struct SweepConfig {
    pub a_hat: Vec3,
    pub b_hat: Vec3,
    pub energy: f64,
    pub alphas: Vec<f64>,
    pub samples: Option<usize>,
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let map = ConfigMap::parse(text)?;
        let a_hat = Vec3::new(
            map.f64_required("sweep.ax")?,
            map.f64_required("sweep.ay")?,
            map.f64_required("sweep.az")?,
        );
        let b_hat = Vec3::new(
            map.f64_required("sweep.bx")?,
            map.f64_required("sweep.by")?,
            map.f64_required("sweep.bz")?,
        );
        let energy = map.f64("sweep.energy")?.unwrap_or(1.0);

        let mut alphas: Vec<f64> = Vec::new();
        if let Some(list) = map.get("sweep.alphas") {
            for item in list.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                alphas.push(item.parse::<f64>().map_err(|_| {
                    Error::InvalidConfig(format!("sweep.alphas: `{item}` is not a number"))
                })?);
            }
        } else if map.has("sweep.alpha_count") {
            let count = map.usize("sweep.alpha_count")?.unwrap();
            let lo = map.f64("sweep.alpha_min")?.unwrap_or(0.0);
            let hi = map.f64("sweep.alpha_max")?.unwrap_or(std::f64::consts::PI);
            if count < 1 {
                return Err(Error::InvalidConfig(
                    "sweep.alpha_count: must be at least 1".into(),
                ));
            }
            if count == 1 {
                alphas.push(lo);
            } else {
                for k in 0..count {
                    alphas.push(lo + (hi - lo) * k as f64 / (count - 1) as f64);
                }
            }
        }
        if alphas.is_empty() {
            return Err(Error::InvalidConfig(
                "sweep.alphas: empty grid (give sweep.alphas or sweep.alpha_count)".into(),
            ));
        }
        for &alpha in &alphas {
            if !(0.0..=std::f64::consts::PI).contains(&alpha) {
                return Err(Error::InvalidConfig(format!(
                    "sweep.alphas: {alpha} outside [0, pi]"
                )));
            }
        }
        // rows are reported by ascending alpha regardless of input order
        alphas.sort_by(|a, b| a.partial_cmp(b).unwrap());

        let samples = map.usize("samples")?;
        map.reject_unknown()?;
        Ok(SweepConfig {
            a_hat,
            b_hat,
            energy,
            alphas,
            samples,
        })
    }
}
