//! Certified eigenvalue localization built on the cone machinery.
//!
//! A split A = [[A₁₁, A₁₂], [A₂₁, A₂₂]] shifted by z yields the parameters
//! a = ‖A₁₂‖, c = ‖A₂₁‖, and d = ‖(A₂₂−zI)⁻¹‖⁻¹ − ‖A₁₁−zI‖. Whenever
//! d > 0 and Δ = d² − 4ac > 0 the quadratic cr² − dr + a < 0 has a
//! nonempty open set of workable cone scales r, and for each of them the
//! shifted matrix is r-dominating. That traps k eigenvalues in a disk
//! around z, excludes the other n−k from a larger disk, and pins the two
//! spectral subspaces inside complementary cones of slope 2c/d.

use crate::cones::{compose, is_dominating, ConeError, ConeSpec, RateBounds, RateMode};
use crate::exact::{rint, sqrt_lower, Bound, QRect, Rat, ScalarError};
use crate::gersch::{Disk, GerschError};
use crate::linalg::{
    imatrix_mul, inf_norm_upper, inv_norm_lower_best, IMatrix, LinalgError, QMatrix,
};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LocalizeError {
    #[error("no workable cone scale: {0}")]
    Infeasible(String),
    #[error("hypotheses fail: {0}")]
    HypothesisFailed(String),
    #[error("isolation fails: {0}")]
    NotIsolated(String),
    #[error("factor {index} is not certified dominating: {reason}")]
    NotDominatingFactor { index: usize, reason: String },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("a real point matrix is required")]
    NeedsPointMatrix,
    #[error("split k={k} is out of range for dimension {n}")]
    BadSplit { k: usize, n: usize },
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Gersch(#[from] GerschError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The quadratic's data: a = ‖A₁₂‖ (upper), c = ‖A₂₁‖ (upper),
/// d = certified ‖(A₂₂−zI)⁻¹‖⁻¹ − ‖A₁₁−zI‖ (lower), Δ = d² − 4ac.
#[derive(Debug, Clone, PartialEq)]
pub struct RParams {
    pub a: Rat,
    pub c: Rat,
    pub d: Rat,
    pub delta: Rat,
}

impl RParams {
    pub fn new(a: Rat, c: Rat, d: Rat) -> Self {
        let delta = &d * &d - rint(4) * &a * &c;
        RParams { a, c, d, delta }
    }
}

/// Open interval of workable r, endpoints rounded inward so every rational
/// inside is certainly feasible. `hi` is None when c = 0 (unbounded).
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibleR {
    pub lo: Rat,
    pub hi: Option<Rat>,
    pub recommended: Rat,
}

/// Solve cr² − dr + a < 0 for r. With c = 0 the set is (a/d, ∞); otherwise
/// it is the open root interval of the quadratic, nonempty exactly when
/// Δ > 0. The recommended r = d/(2c) sits at the vertex (c = 0: 2a/d, twice
/// the infimum; degenerate a = c = 0: any r works, 1 is returned).
pub fn feasible_r(p: &RParams) -> Result<FeasibleR, LocalizeError> {
    if !p.d.is_positive() {
        return Err(LocalizeError::Infeasible(format!("d = {} is not positive", p.d)));
    }
    if p.c.is_zero() {
        let lo = &p.a / &p.d;
        let recommended = if p.a.is_zero() { Rat::one() } else { rint(2) * &p.a / &p.d };
        return Ok(FeasibleR { lo, hi: None, recommended });
    }
    if !p.delta.is_positive() {
        return Err(LocalizeError::Infeasible(format!(
            "d² − 4ac = {} is not positive",
            p.delta
        )));
    }
    let root = sqrt_lower(&p.delta)?;
    let two_c = rint(2) * &p.c;
    Ok(FeasibleR {
        lo: (&p.d - &root) / &two_c,
        hi: Some((&p.d + &root) / &two_c),
        recommended: &p.d / &two_c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalizeMode {
    Single,
    Block,
    GerschDom,
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionCounts {
    pub inner: usize,
    pub outer: usize,
}

/// Everything a localization run certifies. `annulus_inner` is the radius
/// of the disk around `shift` holding `counts.inner` eigenvalues,
/// `annulus_outer` the radius of the disk the remaining eigenvalues stay
/// out of, and `cone_slope` bounds the invariant-subspace cones: the inner
/// spectral subspace satisfies ‖x_tail‖ ≤ slope·‖x_head‖ and the outer one
/// the reverse inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationReport {
    pub mode: LocalizeMode,
    pub disks: Vec<Disk>,
    pub annulus_inner: Bound,
    pub annulus_outer: Bound,
    pub cone_slope: Bound,
    pub counts: RegionCounts,
    pub eigvec_box: Option<Bound>,
    pub r_used: Rat,
    pub shift: QRect,
    pub naive_product: Option<IMatrix>,
}

struct SplitData {
    a: Rat,
    c: Rat,
    b: Rat,
    cert: Rat,
    d: Rat,
}

fn split_params(m: &IMatrix, k: usize, z: &QRect) -> Result<SplitData, LocalizeError> {
    if !m.is_square() {
        return Err(LocalizeError::Linalg(LinalgError::NotSquare));
    }
    let n = m.rows();
    if k == 0 || k >= n {
        return Err(LocalizeError::BadSplit { k, n });
    }
    let (a11, a12, a21, a22) = m.blocks(k)?;
    let b = inf_norm_upper(&a11.sub_scalar_diag(z)?).q;
    let cert = inv_norm_lower_best(&a22, z)?.q;
    let a = inf_norm_upper(&a12).q;
    let c = inf_norm_upper(&a21).q;
    let d = &cert - &b;
    Ok(SplitData { a, c, b, cert, d })
}

/// The quadratic feasibility parameters of a shifted split, for feeding
/// `feasible_r`.
pub fn rparams(m: &IMatrix, k: usize, z: &QRect) -> Result<RParams, LocalizeError> {
    let s = split_params(m, k, z)?;
    Ok(RParams::new(s.a, s.c, s.d))
}

fn localize_core(
    m: &IMatrix,
    k: usize,
    z: &QRect,
    optimize_r: bool,
    mode: LocalizeMode,
) -> Result<LocalizationReport, LocalizeError> {
    let n = m.rows();
    let s = split_params(m, k, z)?;
    if !s.d.is_positive() {
        return Err(LocalizeError::HypothesisFailed(format!(
            "d = ‖(A₂₂−zI)⁻¹‖⁻¹ − ‖A₁₁−zI‖ = {} is not positive",
            s.d
        )));
    }
    let p = RParams::new(s.a.clone(), s.c.clone(), s.d.clone());
    if !s.c.is_zero() && !p.delta.is_positive() {
        return Err(LocalizeError::HypothesisFailed(format!(
            "d² − 4ac = {} is not positive",
            p.delta
        )));
    }
    let feasible = feasible_r(&p)?;
    let r_used = feasible.recommended.clone();
    let slope = rint(2) * &s.c / &s.d;
    let (inner, outer) = if s.c.is_zero() {
        // decoupled tail: the bounds b + a/r and cert − rc hold for every
        // feasible r, so push r → ∞ (closed limits)
        (s.b.clone(), s.cert.clone())
    } else if optimize_r {
        // each feasible r traps the same eigenvalues, so the inner bound
        // may be taken at sup r and the outer at inf r simultaneously;
        // both limits are closed by continuity of the rate bounds in r
        let root = sqrt_lower(&p.delta)?;
        let inner = &s.b + &s.a * rint(2) * &s.c / (&s.d + &root);
        let outer = &s.cert - &s.c * ((&s.d - &root) / (rint(2) * &s.c));
        (inner, outer)
    } else {
        let inner = &s.b + rint(2) * &s.a * &s.c / &s.d;
        let outer = &s.cert - &s.c * &r_used;
        (inner, outer)
    };
    let disk = Disk {
        center: z.clone(),
        radius: Bound::upper(inner.clone()),
        label: "F1".into(),
        block: 0,
        dim: k,
    };
    Ok(LocalizationReport {
        mode,
        disks: vec![disk],
        annulus_inner: Bound::upper(inner),
        annulus_outer: Bound::lower(outer),
        cone_slope: Bound::upper(slope),
        counts: RegionCounts { inner: k, outer: n - k },
        eigvec_box: None,
        r_used,
        shift: z.clone(),
        naive_product: None,
    })
}

/// Split the spectrum at the shift z: exactly k eigenvalues (with
/// multiplicity) lie in the closed inner disk, the remaining n−k stay out
/// of the open outer disk, and the corresponding invariant subspaces obey
/// the reported cone slope.
pub fn block_localize(
    m: &IMatrix,
    k: usize,
    z: &QRect,
    optimize_r: bool,
) -> Result<LocalizationReport, LocalizeError> {
    localize_core(m, k, z, optimize_r, LocalizeMode::Block)
}

/// Trap exactly one eigenvalue near a₁₁ (the k = 1 split, shifted to the
/// midpoint of a₁₁). The associated eigenvector, normalized so its first
/// coordinate is 1, has all remaining coordinates within `eigvec_box` in
/// modulus. With `optimize_r` the disk radius is tightened to its infimum
/// over all workable r.
pub fn single_eigen(m: &IMatrix, optimize_r: bool) -> Result<LocalizationReport, LocalizeError> {
    if !m.is_square() {
        return Err(LocalizeError::Linalg(LinalgError::NotSquare));
    }
    if m.rows() < 2 {
        return Err(LocalizeError::BadSplit { k: 1, n: m.rows() });
    }
    let a11 = m.entry(0, 0);
    let mid = |iv: &crate::exact::QIv| -> Rat { (iv.lo() + iv.hi()) / rint(2) };
    let z = QRect::new(
        crate::exact::QIv::point(mid(&a11.re)),
        crate::exact::QIv::point(mid(&a11.im)),
    );
    let mut report = localize_core(m, 1, &z, optimize_r, LocalizeMode::Single)?;
    report.eigvec_box = Some(report.cone_slope.clone());
    Ok(report)
}

/// Refinement report for an isolated first disk: δ_k are the per-row
/// isolation margins, ε* the supremum of admissible scalings, and the
/// shifted matrix A − a₁₁I is dominating with co ≤ R₁/(1+ε*) and ex > R₁.
#[derive(Debug, Clone, PartialEq)]
pub struct GerschDomReport {
    pub deltas: Vec<Bound>,
    pub eps_star: Option<Rat>,
    pub co_refined: Bound,
    pub ex_bound: Bound,
    pub dominating: bool,
}

/// Isolation of the first classical disk already certifies domination of
/// A − a₁₁I at k = 1: each admissible ε (with ε|a_k1| < δ_k for all k)
/// gives co ≤ R₁/(1+ε), and the bound passes to ε* by continuity. A zero
/// first column below the diagonal admits every ε, hence co = 0.
///
/// Bounds keep their directions under interval data (co_refined from upper
/// magnitudes, ex_bound from lower ones), so on very wide enclosures they
/// can numerically cross even though every point matrix in the enclosure
/// is dominating; `dominating` reports the certified verdict.
pub fn gersch_dominating(m: &IMatrix) -> Result<GerschDomReport, LocalizeError> {
    if !m.is_square() {
        return Err(LocalizeError::Linalg(LinalgError::NotSquare));
    }
    let n = m.rows();
    if n < 2 {
        return Err(LocalizeError::BadSplit { k: 1, n });
    }
    let r1_up = (1..n)
        .map(|j| m.entry(0, j).mag_upper())
        .fold(Rat::zero(), |acc, t| acc + t);
    let r1_lo = (1..n)
        .map(|j| m.entry(0, j).mig_lower())
        .fold(Rat::zero(), |acc, t| acc + t);
    let mut deltas = Vec::with_capacity(n - 1);
    for k in 1..n {
        let row = (1..n)
            .filter(|&j| j != k)
            .map(|j| m.entry(k, j).mag_upper())
            .fold(Rat::zero(), |acc, t| acc + t);
        let gap = m.entry(k, k).sub(m.entry(0, 0)).mig_lower();
        let delta = gap - m.entry(k, 0).mag_upper() - row - &r1_up;
        if !delta.is_positive() {
            return Err(LocalizeError::NotIsolated(format!(
                "row {}: margin δ = {} is not positive",
                k + 1,
                delta
            )));
        }
        deltas.push(Bound::lower(delta));
    }
    let eps_star = (1..n)
        .filter_map(|k| {
            let denom = m.entry(k, 0).mag_upper();
            if denom.is_zero() {
                None
            } else {
                Some(&deltas[k - 1].q / denom)
            }
        })
        .min();
    let co_refined = match &eps_star {
        Some(e) => Bound::upper(&r1_up / (Rat::one() + e)),
        None => Bound::upper(Rat::zero()),
    };
    Ok(GerschDomReport {
        deltas,
        eps_star,
        co_refined,
        ex_bound: Bound::lower(r1_lo),
        dominating: true,
    })
}

/// Localize the spectrum of a product B = A_m·…·A₁ without forming it:
/// certify each factor r-dominating at the shared split, multiply the
/// rates, and report the composed annulus around 0. The exact interval
/// product is attached for comparison only.
pub fn chain_localize(mats: &[IMatrix], k: usize, r: &Rat) -> Result<LocalizationReport, LocalizeError> {
    let Some(first) = mats.first() else {
        return Err(LocalizeError::NotDominatingFactor { index: 0, reason: "empty chain".into() });
    };
    if !first.is_square() {
        return Err(LocalizeError::Linalg(LinalgError::NotSquare));
    }
    let n = first.rows();
    if k == 0 || k >= n {
        return Err(LocalizeError::BadSplit { k, n });
    }
    let spec = ConeSpec::new(k, r.clone())?;
    let mut rates: Vec<RateBounds> = Vec::with_capacity(mats.len());
    for (index, m) in mats.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            return Err(LocalizeError::NotDominatingFactor {
                index,
                reason: format!("expected {n}×{n}, found {}×{}", m.rows(), m.cols()),
            });
        }
        match is_dominating(m, &spec, RateMode::Bounds) {
            Ok(rb) if rb.dominating => rates.push(rb),
            Ok(rb) => {
                return Err(LocalizeError::NotDominatingFactor {
                    index,
                    reason: format!(
                        "contraction bound {} does not stay below expansion bound {}",
                        rb.co_upper.q, rb.ex_lower.q
                    ),
                })
            }
            Err(e) => {
                return Err(LocalizeError::NotDominatingFactor { index, reason: e.to_string() })
            }
        }
    }
    let composed = compose(&rates)?;
    let mut product = mats[0].clone();
    for m in &mats[1..] {
        product = imatrix_mul(m, &product)?;
    }
    let disk = Disk {
        center: QRect::zero(),
        radius: composed.co_upper.clone(),
        label: "F1".into(),
        block: 0,
        dim: k,
    };
    Ok(LocalizationReport {
        mode: LocalizeMode::Chain,
        disks: vec![disk],
        annulus_inner: composed.co_upper,
        annulus_outer: composed.ex_lower,
        cone_slope: Bound::upper(r.recip()),
        counts: RegionCounts { inner: k, outer: n - k },
        eigvec_box: None,
        r_used: r.clone(),
        shift: QRect::zero(),
        naive_product: Some(product),
    })
}

#[derive(Clone, Copy)]
struct Cpx {
    re: f64,
    im: f64,
}

impl Cpx {
    const ZERO: Cpx = Cpx { re: 0.0, im: 0.0 };

    fn real(re: f64) -> Cpx {
        Cpx { re, im: 0.0 }
    }

    fn add(self, o: Cpx) -> Cpx {
        Cpx { re: self.re + o.re, im: self.im + o.im }
    }

    fn sub(self, o: Cpx) -> Cpx {
        Cpx { re: self.re - o.re, im: self.im - o.im }
    }

    fn mul(self, o: Cpx) -> Cpx {
        Cpx { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }

    fn div(self, o: Cpx) -> Cpx {
        let d = o.re * o.re + o.im * o.im;
        Cpx { re: (self.re * o.re + self.im * o.im) / d, im: (self.im * o.re - self.re * o.im) / d }
    }

    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

fn horner(coeffs: &[f64], z: Cpx) -> (Cpx, Cpx) {
    let mut p = Cpx::real(coeffs[0]);
    let mut dp = Cpx::ZERO;
    for &c in &coeffs[1..] {
        dp = dp.mul(z).add(p);
        p = p.mul(z).add(Cpx::real(c));
    }
    (p, dp)
}

fn aberth(coeffs: &[f64]) -> Result<Vec<(f64, f64)>, LocalizeError> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let radius = 1.0 + coeffs[1..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Cpx> = (0..deg)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64 + 0.37) / deg as f64;
            Cpx { re: 0.7 * radius * angle.cos(), im: 0.7 * radius * angle.sin() }
        })
        .collect();
    for _ in 0..600 {
        let mut settled = true;
        for j in 0..deg {
            let (p, dp) = horner(coeffs, z[j]);
            let w = if dp.abs() < f64::MIN_POSITIVE {
                Cpx { re: 1e-12, im: 1e-12 }
            } else {
                p.div(dp)
            };
            let mut s = Cpx::ZERO;
            for l in 0..deg {
                if l != j {
                    s = s.add(Cpx::real(1.0).div(z[j].sub(z[l])));
                }
            }
            let denom = Cpx::real(1.0).sub(w.mul(s));
            let corr = if denom.abs() < f64::MIN_POSITIVE { w } else { w.div(denom) };
            z[j] = z[j].sub(corr);
            if corr.abs() > 1e-14 * (1.0 + z[j].abs()) {
                settled = false;
            }
        }
        if settled {
            let mut roots: Vec<(f64, f64)> = z.iter().map(|c| (c.re, c.im)).collect();
            roots.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
            return Ok(roots);
        }
    }
    Err(LocalizeError::NoConvergence)
}

/// NON-RIGOROUS floating-point eigenvalues of a real point matrix, for
/// plots and sanity checks only: the exact characteristic polynomial
/// (Faddeev–LeVerrier) handed to an Aberth root finder. Never feeds any
/// certificate.
pub fn approx_eigs(m: &IMatrix) -> Result<Vec<(f64, f64)>, LocalizeError> {
    if !m.is_square() {
        return Err(LocalizeError::Linalg(LinalgError::NotSquare));
    }
    let q = m.as_qmatrix().ok_or(LocalizeError::NeedsPointMatrix)?;
    let n = q.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let trace = |mat: &QMatrix| -> Rat {
        (0..n).map(|i| mat.entry(i, i).clone()).fold(Rat::zero(), |acc, t| acc + t)
    };
    // det(λI − A) = λⁿ + a_{n−1}λⁿ⁻¹ + … + a₀ by the trace recurrence
    let mut coeffs: Vec<Rat> = vec![Rat::one()];
    let mut mk = q.clone();
    for k in 1..=n {
        let ck = -trace(&mk) / rint(k as i64);
        coeffs.push(ck.clone());
        if k < n {
            let mut shifted = mk;
            for i in 0..n {
                let v = shifted.entry(i, i) + &ck;
                shifted.set_entry(i, i, v);
            }
            mk = q.mul(&shifted)?;
        }
    }
    // peel exact zero roots so the iteration only sees a nonzero tail
    let mut zeros = 0;
    while coeffs.len() > 1 && coeffs.last().expect("nonempty").is_zero() {
        coeffs.pop();
        zeros += 1;
    }
    let floats: Vec<f64> = coeffs.iter().map(crate::exact::to_f64_up).collect();
    let mut roots = vec![(0.0, 0.0); zeros];
    roots.extend(aberth(&floats)?);
    roots.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    Ok(roots)
}
