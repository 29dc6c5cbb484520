//! Report rendering: 12-significant-digit numbers, symbolic annotations
//! for recognizable multiples of pi, and the table/CSV/JSON formats.

use bloch_metrics::{volume_profile, MetricReport, Trajectory};
use std::f64::consts::{PI, SQRT_2};

/// Formats with 12 significant digits, plain decimal where readable and
/// scientific notation otherwise; output is a valid JSON number.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_decimal(format!("{:.*}", decimals, x))
    } else {
        let s = format!("{:.11e}", x);
        match s.split_once('e') {
            Some((mantissa, e)) => format!("{}e{}", trim_decimal(mantissa.to_string()), e),
            None => s,
        }
    }
}

fn trim_decimal(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Symbolic label when the value sits within 1e-9 of a recognizable
/// constant; makes quarter-turn metrics human-checkable at a glance.
pub fn annotate(x: f64) -> Option<&'static str> {
    const CANDIDATES: &[(&str, f64)] = &[
        ("pi/8", PI / 8.0),
        ("pi/4", PI / 4.0),
        ("pi/2", PI / 2.0),
        ("3pi/4", 3.0 * PI / 4.0),
        ("pi", PI),
        ("5pi/4", 5.0 * PI / 4.0),
        ("3pi/2", 3.0 * PI / 2.0),
        ("7pi/4", 7.0 * PI / 4.0),
        ("2pi", 2.0 * PI),
        ("pi/sqrt(2)", PI / SQRT_2),
        ("2pi/sqrt(2)", 2.0 * PI / SQRT_2),
        ("pi/(2sqrt(2))", PI / (2.0 * SQRT_2)),
        ("pi/(4sqrt(2))", PI / (4.0 * SQRT_2)),
        ("1/sqrt(2)", 1.0 / SQRT_2),
        ("1/2", 0.5),
    ];
    CANDIDATES
        .iter()
        .find(|(_, v)| (x - v).abs() <= 1e-9)
        .map(|(label, _)| *label)
}

/// Report fields in their stable serialization order.
pub fn report_fields(r: &MetricReport) -> Vec<(&'static str, f64)> {
    vec![
        ("s0", r.s0),
        ("s", r.s),
        ("travel_time", r.travel_time),
        ("eta_ge", r.eta_ge),
        ("eta_se_mean", r.eta_se_mean),
        ("eta_se_min", r.eta_se_min),
        ("kappa2", r.kappa2),
        ("v_bar", r.v_bar),
        ("v_max", r.v_max),
        ("c", r.c),
        ("l_c", r.l_c),
        ("quadrature_error", r.quadrature_error),
    ]
}

pub fn render_table(title: &str, r: &MetricReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("evolution: {title}\n"));
    out.push_str(&format!("shape: {}\n", r.shape.label()));
    out.push_str(&format!("{:<18} {:<22} {}\n", "metric", "value", "note"));
    for (name, value) in report_fields(r) {
        let note = annotate(value).unwrap_or("");
        out.push_str(&format!("{:<18} {:<22} {}\n", name, fmt_sig12(value), note));
    }
    out
}

pub fn render_csv(r: &MetricReport) -> String {
    let fields = report_fields(r);
    let header: Vec<&str> = fields.iter().map(|(n, _)| *n).collect();
    let row: Vec<String> = fields.iter().map(|(_, v)| fmt_sig12(*v)).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

pub fn render_json(title: &str, r: &MetricReport) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"evolution\": \"{title}\",\n"));
    out.push_str(&format!("  \"shape\": \"{}\",\n", r.shape.label()));
    let fields = report_fields(r);
    for (name, value) in &fields {
        out.push_str(&format!("  \"{}\": {},\n", name, fmt_sig12(*value)));
    }
    let notes: Vec<String> = fields
        .iter()
        .filter_map(|(name, value)| {
            annotate(*value).map(|label| format!("    \"{name}\": \"{label}\""))
        })
        .collect();
    out.push_str("  \"annotations\": {\n");
    out.push_str(&notes.join(",\n"));
    out.push_str("\n  }\n}\n");
    out
}

/// Plot-ready trajectory dump: one CSV row per sample.
pub fn render_trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,re(c0),im(c0),re(c1),im(c1),x,y,z,theta_u,phi_u,v_instant\n");
    let track = traj.angles();
    let volumes = volume_profile(track);
    for (k, &t) in traj.times().iter().enumerate() {
        let s = &traj.states()[k];
        let b = traj.bloch()[k];
        let row = [
            t,
            s.c0().re,
            s.c0().im,
            s.c1().re,
            s.c1().im,
            b.x,
            b.y,
            b.z,
            track.theta()[k],
            track.phi()[k],
            volumes[k],
        ];
        let cells: Vec<String> = row.iter().map(|v| fmt_sig12(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub const SWEEP_CSV_HEADER: &str =
    "alpha,travel_time,s0,s,eta_ge,eta_se_mean,kappa2,v_bar,v_max,c,l_c";

pub fn sweep_csv_row(alpha: f64, r: &MetricReport) -> String {
    [
        alpha,
        r.travel_time,
        r.s0,
        r.s,
        r.eta_ge,
        r.eta_se_mean,
        r.kappa2,
        r.v_bar,
        r.v_max,
        r.c,
        r.l_c,
    ]
    .iter()
    .map(|v| fmt_sig12(*v))
    .collect::<Vec<_>>()
    .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_are_stable() {
        assert_eq!(fmt_sig12(0.0), "0");
        assert_eq!(fmt_sig12(0.5), "0.5");
        assert_eq!(fmt_sig12(1.0), "1");
        assert_eq!(fmt_sig12(PI), "3.14159265359");
        assert_eq!(fmt_sig12(1.0 / SQRT_2), "0.707106781187");
        assert_eq!(fmt_sig12(1e-15), "1e-15");
        assert_eq!(fmt_sig12(-2.5e13), "-2.5e13");
    }

    #[test]
    fn annotations_recognize_table_values() {
        assert_eq!(annotate(PI / SQRT_2), Some("pi/sqrt(2)"));
        assert_eq!(annotate(PI), Some("pi"));
        assert_eq!(annotate(0.5), Some("1/2"));
        assert_eq!(annotate(0.123456), None);
    }
}
