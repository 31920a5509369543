//! Command drivers: JSON report in a `RunOutput` plus a process exit code.
//! Exit codes are never conflated: 0 = certified positive, 1 = certified
//! negative, 2 = input or usage error, 3 = undecided (the method could not
//! certify either way).

use crate::cones::{self, ConeError, ConeSpec, RateMode};
use crate::exact::{to_f64_down, to_f64_up, QRect, Rat};
use crate::gersch::{self, Disk, GerschError, Partition};
use crate::localize::{self, LocalizationReport, LocalizeError};
use crate::mfile::MatrixInput;
use crate::report::{
    approx_eigs_json, bound_json, disk_json, group_json, imatrix_json, outcome_json, qrect_json,
    rat_json, render_report,
};
use crate::svg::{self, AnnulusShape, Scene};
use num_traits::One;
use serde_json::{json, Value};
use std::time::Instant;

pub const EXIT_CERTIFIED: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_UNDECIDED: u8 = 3;

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub json: String,
    pub exit_code: u8,
    pub svg: Option<String>,
}

fn status_str(exit: u8) -> &'static str {
    match exit {
        EXIT_CERTIFIED => "certified",
        EXIT_NEGATIVE => "certified-negative",
        EXIT_INPUT => "input-error",
        _ => "undecided",
    }
}

fn cone_exit(e: &ConeError) -> u8 {
    match e {
        ConeError::BadSplit { .. }
        | ConeError::NonpositiveR
        | ConeError::ExactNeedsPointMatrix
        | ConeError::MixedScale(_)
        | ConeError::Linalg(_) => EXIT_INPUT,
        ConeError::NoInverseCertificate | ConeError::Singular | ConeError::Lp(_) => {
            EXIT_UNDECIDED
        }
    }
}

fn gersch_exit(e: &GerschError) -> u8 {
    match e {
        GerschError::NotIsolated(_) => EXIT_UNDECIDED,
        _ => EXIT_INPUT,
    }
}

fn localize_exit(e: &LocalizeError) -> u8 {
    match e {
        LocalizeError::Infeasible(_)
        | LocalizeError::HypothesisFailed(_)
        | LocalizeError::NotIsolated(_)
        | LocalizeError::NotDominatingFactor { .. }
        | LocalizeError::NoConvergence => EXIT_UNDECIDED,
        LocalizeError::NeedsPointMatrix | LocalizeError::BadSplit { .. } => EXIT_INPUT,
        LocalizeError::Cone(c) => cone_exit(c),
        LocalizeError::Gersch(g) => gersch_exit(g),
        LocalizeError::Linalg(_) | LocalizeError::Scalar(_) => EXIT_INPUT,
    }
}

struct Timer(Option<Instant>);

impl Timer {
    fn new(enabled: bool) -> Self {
        Timer(enabled.then(Instant::now))
    }

    fn stop(&self) -> Option<u128> {
        self.0.map(|t| t.elapsed().as_millis())
    }
}

fn fail(command: &str, inputs: &[&MatrixInput], exit: u8, message: &str, t: &Timer) -> RunOutput {
    let json = render_report(
        command,
        inputs,
        Value::Null,
        outcome_json(status_str(exit), Some(message)),
        Value::Null,
        t.stop(),
    );
    RunOutput { json, exit_code: exit, svg: None }
}

fn shift_midpoint(z: &QRect) -> (f64, f64) {
    let mid = |iv: &crate::exact::QIv| 0.5 * (to_f64_down(iv.lo()) + to_f64_up(iv.hi()));
    (mid(&z.re), mid(&z.im))
}

fn annulus_shape(rep: &LocalizationReport) -> AnnulusShape {
    let (cx, cy) = shift_midpoint(&rep.shift);
    AnnulusShape {
        cx,
        cy,
        r_inner: rep.annulus_inner.value_f64(),
        r_outer: rep.annulus_outer.value_f64(),
    }
}

fn overlay_json(rep: &LocalizationReport) -> Value {
    json!({
        "k": rep.counts.inner,
        "shift": qrect_json(&rep.shift),
        "annulus_inner": bound_json(&rep.annulus_inner),
        "annulus_outer": bound_json(&rep.annulus_outer),
        "cone_slope": bound_json(&rep.cone_slope),
        "counts": { "inner": rep.counts.inner, "outer": rep.counts.outer },
    })
}

#[derive(Debug, Clone, Default)]
pub struct DisksOptions {
    pub partition: Option<Vec<usize>>,
    pub scale: Option<Vec<Rat>>,
    pub svg: bool,
    pub timing: bool,
}

pub fn run_disks(input: &MatrixInput, opts: &DisksOptions) -> RunOutput {
    let t = Timer::new(opts.timing);
    let m = &input.matrix;
    let n = m.rows();
    let inputs = [input];
    let sizes = match &opts.partition {
        Some(s) => {
            if s.iter().sum::<usize>() != n {
                let msg = format!("partition sums to {}, matrix dimension is {n}", s.iter().sum::<usize>());
                return fail("disks", &inputs, EXIT_INPUT, &msg, &t);
            }
            s.clone()
        }
        None => vec![1; n],
    };
    let p = match Partition::new(sizes.clone()) {
        Ok(p) => p,
        Err(e) => return fail("disks", &inputs, EXIT_INPUT, &e.to_string(), &t),
    };
    let block_mode = p.num_blocks() < n;
    if block_mode && opts.scale.is_some() {
        return fail("disks", &inputs, EXIT_INPUT, "--scale applies to scalar disks only", &t);
    }
    if let Some(x) = &opts.scale {
        if x.len() != n {
            let msg = format!("scale has {} entries, matrix dimension is {n}", x.len());
            return fail("disks", &inputs, EXIT_INPUT, &msg, &t);
        }
    }
    let disks: Result<Vec<Disk>, GerschError> = if block_mode {
        (0..p.num_blocks()).try_fold(Vec::new(), |mut acc, i| {
            acc.extend(gersch::block_disk_outer(m, &p, i)?);
            Ok(acc)
        })
    } else if let Some(x) = &opts.scale {
        gersch::scaled_disks(m, x)
    } else {
        gersch::classical_disks(m)
    };
    let disks = match disks {
        Ok(d) => d,
        Err(e) => return fail("disks", &inputs, gersch_exit(&e), &e.to_string(), &t),
    };
    let groups = gersch::group_disks(&disks);

    let overlay_k = if block_mode { sizes[0] } else { m.split_k().unwrap_or(1) };
    let overlay = if n >= 2 && overlay_k < n {
        if overlay_k == 1 {
            localize::single_eigen(m, false).ok()
        } else {
            localize::block_localize(m, overlay_k, &QRect::zero(), false).ok()
        }
    } else {
        None
    };
    let scaled_opt = if !block_mode && opts.scale.is_none() && n >= 2 {
        gersch::scaled_disk_sup_r(m).ok()
    } else {
        None
    };
    let isolation = if n >= 2 {
        json!({
            "standard_first_disk": gersch::standard_isolation_check(m).ok(),
            "generalized_first_disk": gersch::generalized_isolation_check(m).ok(),
        })
    } else {
        Value::Null
    };
    let approx = localize::approx_eigs(m).ok();

    let certified = json!({
        "partition": sizes,
        "scale": opts.scale.as_ref().map(|x| x.iter().map(Rat::to_string).collect::<Vec<_>>()),
        "disks": disks.iter().map(disk_json).collect::<Vec<_>>(),
        "groups": groups.iter().map(|g| group_json(g, &disks)).collect::<Vec<_>>(),
        "localize_overlay": overlay.as_ref().map(overlay_json),
        "scaled_disk_optimum": scaled_opt.map(|o| json!({
            "sup_r": o.sup_r.as_ref().map(Rat::to_string),
            "radius": bound_json(&o.radius),
        })),
        "isolation": isolation,
    });
    let svg = opts.svg.then(|| {
        let mut scene = Scene { title: format!("disks: {}", input.name), ..Default::default() };
        for d in &disks {
            scene.push_disk(d);
        }
        scene.annulus = overlay.as_ref().map(annulus_shape);
        if let Some(e) = &approx {
            scene.markers.clone_from(e);
        }
        svg::render(&scene)
    });
    let json = render_report(
        "disks",
        &inputs,
        certified,
        outcome_json(status_str(EXIT_CERTIFIED), None),
        approx.as_deref().map(approx_eigs_json).unwrap_or(Value::Null),
        t.stop(),
    );
    RunOutput { json, exit_code: EXIT_CERTIFIED, svg }
}

#[derive(Debug, Clone, Default)]
pub struct DominateOptions {
    pub k: Option<usize>,
    pub r: Option<Rat>,
    pub exact: bool,
    pub timing: bool,
}

pub fn run_dominate(input: &MatrixInput, opts: &DominateOptions) -> RunOutput {
    let t = Timer::new(opts.timing);
    let m = &input.matrix;
    let inputs = [input];
    let Some(k) = opts.k.or_else(|| m.split_k()) else {
        return fail(
            "dominate",
            &inputs,
            EXIT_INPUT,
            "no split index: pass --k or set split_k in the matrix file",
            &t,
        );
    };
    let r = opts.r.clone().or_else(|| input.default_r.clone()).unwrap_or_else(Rat::one);
    let spec = match ConeSpec::new(k, r.clone()) {
        Ok(s) => s,
        Err(e) => return fail("dominate", &inputs, cone_exit(&e), &e.to_string(), &t),
    };
    let mode = if opts.exact { RateMode::Exact } else { RateMode::Bounds };
    let rates = match cones::is_dominating(m, &spec, mode) {
        Ok(rb) => rb,
        Err(e) => return fail("dominate", &inputs, cone_exit(&e), &e.to_string(), &t),
    };
    let (verdict, exit, refutation) = if rates.dominating {
        ("dominating", EXIT_CERTIFIED, None)
    } else if rates.exact {
        // exact rates answer the question outright
        ("not-dominating", EXIT_NEGATIVE, None)
    } else {
        match cones::refute_dominating(m, &spec) {
            Ok(Some(rf)) => ("not-dominating", EXIT_NEGATIVE, Some(rf)),
            _ => ("undecided", EXIT_UNDECIDED, None),
        }
    };
    let witnesses = if rates.exact {
        m.as_qmatrix().map(|qm| {
            let wit = |res: Result<(Rat, Vec<Rat>), ConeError>| {
                res.ok().map(|(rate, x)| {
                    json!({
                        "rate": rat_json(&rate),
                        "vector": x.iter().map(Rat::to_string).collect::<Vec<_>>(),
                    })
                })
            };
            json!({
                "co": wit(cones::exact_co_witness(&qm, &spec)),
                "ex": wit(cones::exact_ex_witness(&qm, &spec)),
            })
        })
    } else {
        None
    };
    let certified = json!({
        "k": k,
        "r": rat_json(&r),
        "mode": if opts.exact { "exact" } else { "bounds" },
        "co": bound_json(&rates.co_upper),
        "ex": bound_json(&rates.ex_lower),
        "dominating": rates.dominating,
        "exact": rates.exact,
        "co_fell_back": rates.co_fell_back,
        "verdict": verdict,
        "refutation": refutation.map(|rf| json!({
            "co_at_least": rat_json(&rf.co_at_least),
            "ex_at_most": rat_json(&rf.ex_at_most),
            "co_column": rf.co_column,
            "ex_column": rf.ex_column,
        })),
        "witnesses": witnesses,
    });
    let json = render_report(
        "dominate",
        &inputs,
        certified,
        outcome_json(status_str(exit), None),
        Value::Null,
        t.stop(),
    );
    RunOutput { json, exit_code: exit, svg: None }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalizeCmdMode {
    Single,
    Block,
    Gersch,
}

#[derive(Debug, Clone)]
pub struct LocalizeOptions {
    pub mode: LocalizeCmdMode,
    pub k: Option<usize>,
    pub shift: Option<QRect>,
    pub optimize_r: bool,
    pub svg: bool,
    pub timing: bool,
}

pub fn run_localize(input: &MatrixInput, opts: &LocalizeOptions) -> RunOutput {
    let t = Timer::new(opts.timing);
    let m = &input.matrix;
    let inputs = [input];
    let approx = localize::approx_eigs(m).ok();

    if opts.mode == LocalizeCmdMode::Gersch {
        return match localize::gersch_dominating(m) {
            Ok(g) => {
                let exit = if g.dominating { EXIT_CERTIFIED } else { EXIT_UNDECIDED };
                let certified = json!({
                    "mode": "gersch",
                    "deltas": g.deltas.iter().map(bound_json).collect::<Vec<_>>(),
                    "eps_star": g.eps_star.as_ref().map(|q| rat_json(q)),
                    "co_refined": bound_json(&g.co_refined),
                    "ex_bound": bound_json(&g.ex_bound),
                    "dominating": g.dominating,
                });
                let svg = opts.svg.then(|| {
                    let mut scene =
                        Scene { title: format!("localize: {}", input.name), ..Default::default() };
                    if let Ok(disks) = gersch::classical_disks(m) {
                        for d in &disks {
                            scene.push_disk(d);
                        }
                    }
                    if let Some(e) = &approx {
                        scene.markers.clone_from(e);
                    }
                    svg::render(&scene)
                });
                let json = render_report(
                    "localize",
                    &inputs,
                    certified,
                    outcome_json(status_str(exit), None),
                    approx.as_deref().map(approx_eigs_json).unwrap_or(Value::Null),
                    t.stop(),
                );
                RunOutput { json, exit_code: exit, svg }
            }
            Err(e) => fail("localize", &inputs, localize_exit(&e), &e.to_string(), &t),
        };
    }

    let rep = match opts.mode {
        LocalizeCmdMode::Single => {
            if opts.shift.is_some() {
                return fail(
                    "localize",
                    &inputs,
                    EXIT_INPUT,
                    "single mode centers at a11 automatically; use block mode to shift",
                    &t,
                );
            }
            localize::single_eigen(m, opts.optimize_r)
        }
        LocalizeCmdMode::Block => {
            let Some(k) = opts.k.or_else(|| m.split_k()) else {
                return fail(
                    "localize",
                    &inputs,
                    EXIT_INPUT,
                    "no split index: pass --k or set split_k in the matrix file",
                    &t,
                );
            };
            let z = opts.shift.clone().unwrap_or_else(QRect::zero);
            localize::block_localize(m, k, &z, opts.optimize_r)
        }
        LocalizeCmdMode::Gersch => unreachable!(),
    };
    let rep = match rep {
        Ok(rep) => rep,
        Err(e) => return fail("localize", &inputs, localize_exit(&e), &e.to_string(), &t),
    };
    let window = localize::rparams(m, rep.counts.inner, &rep.shift)
        .ok()
        .and_then(|p| localize::feasible_r(&p).ok());
    let certified = json!({
        "mode": if opts.mode == LocalizeCmdMode::Single { "single" } else { "block" },
        "k": rep.counts.inner,
        "shift": qrect_json(&rep.shift),
        "optimized": opts.optimize_r,
        "r_used": rat_json(&rep.r_used),
        "r_window": window.map(|w| json!({
            "lo": w.lo.to_string(),
            "hi": w.hi.as_ref().map(Rat::to_string),
            "recommended": w.recommended.to_string(),
        })),
        "enclosure": disk_json(&rep.disks[0]),
        "annulus_inner": bound_json(&rep.annulus_inner),
        "annulus_outer": bound_json(&rep.annulus_outer),
        "cone_slope": bound_json(&rep.cone_slope),
        "counts": { "inner": rep.counts.inner, "outer": rep.counts.outer },
        "eigvec_box": rep.eigvec_box.as_ref().map(bound_json),
    });
    let svg = opts.svg.then(|| {
        let mut scene = Scene { title: format!("localize: {}", input.name), ..Default::default() };
        if let Ok(disks) = gersch::classical_disks(m) {
            for d in &disks {
                scene.push_disk(d);
            }
        }
        scene.annulus = Some(annulus_shape(&rep));
        if let Some(e) = &approx {
            scene.markers.clone_from(e);
        }
        svg::render(&scene)
    });
    let json = render_report(
        "localize",
        &inputs,
        certified,
        outcome_json(status_str(EXIT_CERTIFIED), None),
        approx.as_deref().map(approx_eigs_json).unwrap_or(Value::Null),
        t.stop(),
    );
    RunOutput { json, exit_code: EXIT_CERTIFIED, svg }
}

#[derive(Debug, Clone, Default)]
pub struct ChainOptions {
    pub k: Option<usize>,
    pub r: Option<Rat>,
    pub timing: bool,
}

pub fn run_chain(inputs: &[MatrixInput], opts: &ChainOptions) -> RunOutput {
    let t = Timer::new(opts.timing);
    let refs: Vec<&MatrixInput> = inputs.iter().collect();
    if inputs.is_empty() {
        return fail("chain", &refs, EXIT_INPUT, "at least one factor is required", &t);
    }
    let n = inputs[0].matrix.rows();
    for inp in inputs {
        let m = &inp.matrix;
        if !m.is_square() || m.rows() != n {
            let msg = format!(
                "factor {} is {}x{}, expected {n}x{n}",
                inp.name,
                m.rows(),
                m.cols()
            );
            return fail("chain", &refs, EXIT_INPUT, &msg, &t);
        }
    }
    let Some(k) = opts.k.or_else(|| inputs[0].matrix.split_k()) else {
        return fail(
            "chain",
            &refs,
            EXIT_INPUT,
            "no split index: pass --k or set split_k in the first matrix file",
            &t,
        );
    };
    let r = opts.r.clone().or_else(|| inputs[0].default_r.clone()).unwrap_or_else(Rat::one);
    let mats: Vec<_> = inputs.iter().map(|i| i.matrix.clone()).collect();
    let rep = match localize::chain_localize(&mats, k, &r) {
        Ok(rep) => rep,
        Err(e) => return fail("chain", &refs, localize_exit(&e), &e.to_string(), &t),
    };
    let spec = match ConeSpec::new(k, r.clone()) {
        Ok(s) => s,
        Err(e) => return fail("chain", &refs, cone_exit(&e), &e.to_string(), &t),
    };
    let factors: Vec<Value> = inputs
        .iter()
        .map(|inp| {
            let rb = cones::is_dominating(&inp.matrix, &spec, RateMode::Bounds).ok();
            json!({
                "name": inp.name,
                "co": rb.as_ref().map(|rb| bound_json(&rb.co_upper)),
                "ex": rb.as_ref().map(|rb| bound_json(&rb.ex_lower)),
                "dominating": rb.map(|rb| rb.dominating),
            })
        })
        .collect();
    let certified = json!({
        "k": k,
        "r": rat_json(&r),
        "factors": factors,
        "composed": {
            "co": bound_json(&rep.annulus_inner),
            "ex": bound_json(&rep.annulus_outer),
        },
        "annulus_inner": bound_json(&rep.annulus_inner),
        "annulus_outer": bound_json(&rep.annulus_outer),
        "cone_slope": bound_json(&rep.cone_slope),
        "counts": { "inner": rep.counts.inner, "outer": rep.counts.outer },
        "naive_product": rep.naive_product.as_ref().map(imatrix_json),
    });
    let json = render_report(
        "chain",
        &refs,
        certified,
        outcome_json(status_str(EXIT_CERTIFIED), None),
        Value::Null,
        t.stop(),
    );
    RunOutput { json, exit_code: EXIT_CERTIFIED, svg: None }
}
