//! JSON reports. Every certified numeric field carries a direction tag
//! (lower, upper, exact) and both an exact rational string and a float
//! rounded in the safe direction. Reports are deterministic: no timestamps
//! unless timing is explicitly requested, and key order is fixed.

use crate::exact::{to_f64_down, to_f64_up, Bound, Direction, QIv, QRect, Rat};
use crate::gersch::{Disk, DiskGroup, DiskMembership};
use crate::linalg::IMatrix;
use crate::mfile::MatrixInput;
use serde_json::{json, Value};

pub fn direction_str(d: Direction) -> &'static str {
    match d {
        Direction::Lower => "lower",
        Direction::Upper => "upper",
        Direction::Exact => "exact",
    }
}

/// A certified scalar: exact rational, safe-direction float, direction tag.
pub fn bound_json(b: &Bound) -> Value {
    json!({
        "rational": b.q.to_string(),
        "float": b.value_f64(),
        "direction": direction_str(b.dir),
    })
}

pub fn rat_json(q: &Rat) -> Value {
    bound_json(&Bound::exact(q.clone()))
}

pub fn qiv_json(iv: &QIv) -> Value {
    if iv.is_point() {
        json!({
            "rational": iv.lo().to_string(),
            "float_lo": to_f64_down(iv.lo()),
            "float_hi": to_f64_up(iv.hi()),
        })
    } else {
        json!({
            "lo": iv.lo().to_string(),
            "hi": iv.hi().to_string(),
            "float_lo": to_f64_down(iv.lo()),
            "float_hi": to_f64_up(iv.hi()),
        })
    }
}

pub fn qrect_json(z: &QRect) -> Value {
    json!({ "re": qiv_json(&z.re), "im": qiv_json(&z.im) })
}

pub fn disk_json(d: &Disk) -> Value {
    json!({
        "label": d.label,
        "block": d.block,
        "dim": d.dim,
        "center": qrect_json(&d.center),
        "radius": bound_json(&d.radius),
    })
}

pub fn group_json(g: &DiskGroup, disks: &[Disk]) -> Value {
    let members: Vec<Value> =
        g.members.iter().map(|&i| Value::String(disks[i].label.clone())).collect();
    json!({ "members": members, "eigenvalue_count": g.count })
}

pub fn membership_str(m: DiskMembership) -> &'static str {
    match m {
        DiskMembership::CertifiedIn => "certified_in",
        DiskMembership::CertifiedOut => "certified_out",
        DiskMembership::Unknown => "unknown",
    }
}

/// Interval matrix dump: rational endpoint strings per entry, row-major.
pub fn imatrix_json(m: &IMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<Value> = (0..m.cols()).map(|j| qrect_json(m.entry(i, j))).collect();
            Value::Array(row)
        })
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows })
}

pub fn input_json(input: &MatrixInput) -> Value {
    json!({
        "name": input.name,
        "digest": input.digest,
        "n": input.matrix.rows(),
    })
}

/// Floating eigenvalue approximations; explicitly flagged as uncertified.
pub fn approx_eigs_json(eigs: &[(f64, f64)]) -> Value {
    let vals: Vec<Value> = eigs.iter().map(|&(re, im)| json!({ "re": re, "im": im })).collect();
    json!({
        "approx_eigenvalues": vals,
        "note": "floating-point approximations for orientation only, not certified",
    })
}

/// Assemble the report envelope. Keys serialize in sorted order, which is
/// stable across runs; `timing_ms` stays null unless the caller opted in.
pub fn render_report(
    command: &str,
    inputs: &[&MatrixInput],
    certified: Value,
    outcome: Value,
    non_rigorous: Value,
    timing_ms: Option<u128>,
) -> String {
    let inputs: Vec<Value> = inputs.iter().map(|i| input_json(i)).collect();
    let report = json!({
        "command": command,
        "generator": { "name": "eigencone", "version": env!("CARGO_PKG_VERSION") },
        "inputs": inputs,
        "certified": certified,
        "outcome": outcome,
        "non_rigorous": non_rigorous,
        "timing_ms": timing_ms.map(|t| t as u64),
    });
    let mut out = serde_json::to_string_pretty(&report).expect("report serialization");
    out.push('\n');
    out
}

pub fn outcome_json(status: &str, reason: Option<&str>) -> Value {
    json!({ "status": status, "reason": reason })
}
