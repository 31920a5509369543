//! Cone-space machinery: r-norms, contracting/expanding cone membership,
//! contraction and expansion rates of a block split, and rate composition.
//!
//! For a split ℂᵏ×ℂⁿ⁻ᵏ the two seminorms are the max-moduli of the leading
//! and trailing coordinates, the r-norm is max(head, r·tail), and the rates
//!
//!   co ≤ ‖A₁₁‖ + ‖A₁₂‖/r,   ex ≥ ‖A₂₂⁻¹‖⁻¹ − r‖A₂₁‖
//!
//! decide domination (co < ex). For real rational point matrices both rates
//! are also computed exactly: restricted to a face of the relevant cone's
//! unit sphere, each rate is the optimum of a small linear program, and the
//! sphere is a finite union of faces.

use crate::exact::{Bound, QRect, Rat};
use crate::linalg::{exact_inv, inf_norm_upper, inv_norm_lower_best, IMatrix, LinalgError, QMatrix};
use crate::lp::{LpError, LpOutcome, LpProblem};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum ConeError {
    #[error("split k={k} is out of range for dimension {n}")]
    BadSplit { k: usize, n: usize },
    #[error("cone scale r must be positive")]
    NonpositiveR,
    #[error("exact rates require a real point matrix")]
    ExactNeedsPointMatrix,
    #[error("no route certifies the trailing block invertible")]
    NoInverseCertificate,
    #[error("matrix is singular; exact contraction rate undefined, use the norm bound")]
    Singular,
    #[error("rates cannot compose: {0}")]
    MixedScale(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("face LP failed: {0}")]
    Lp(String),
}

impl From<LpError> for ConeError {
    fn from(e: LpError) -> Self {
        ConeError::Lp(e.to_string())
    }
}

/// The split index k and scale r defining the cone pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSpec {
    k: usize,
    r: Rat,
}

impl ConeSpec {
    pub fn new(k: usize, r: Rat) -> Result<Self, ConeError> {
        if !r.is_positive() {
            return Err(ConeError::NonpositiveR);
        }
        Ok(ConeSpec { k, r })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> &Rat {
        &self.r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeMembership {
    Contracting,
    Expanding,
    Both,
}

/// (‖x‖_{≤k}, ‖x‖_{>k}); an empty block contributes 0.
pub fn seminorms(x: &[Rat], k: usize) -> (Rat, Rat) {
    assert!(k <= x.len(), "split {k} out of range for vector of length {}", x.len());
    let head = x[..k].iter().map(Signed::abs).max().unwrap_or_else(Rat::zero);
    let tail = x[k..].iter().map(Signed::abs).max().unwrap_or_else(Rat::zero);
    (head, tail)
}

pub fn r_norm(x: &[Rat], spec: &ConeSpec) -> Rat {
    let (head, tail) = seminorms(x, spec.k);
    head.max(&spec.r * tail)
}

/// The two cones cover the space and meet on their common boundary, so a
/// boundary vector is in Both and "neither" cannot happen.
pub fn cone_member(x: &[Rat], spec: &ConeSpec) -> ConeMembership {
    let (head, tail) = seminorms(x, spec.k);
    let scaled = &spec.r * tail;
    match head.cmp(&scaled) {
        std::cmp::Ordering::Greater => ConeMembership::Contracting,
        std::cmp::Ordering::Less => ConeMembership::Expanding,
        std::cmp::Ordering::Equal => ConeMembership::Both,
    }
}

/// Certified rate information for one matrix at one (k, r).
#[derive(Debug, Clone, PartialEq)]
pub struct RateBounds {
    pub k: usize,
    pub r: Rat,
    pub co_upper: Bound,
    pub ex_lower: Bound,
    /// co_upper < ex_lower; in Bounds mode a sufficient certificate, in Exact
    /// mode the true verdict.
    pub dominating: bool,
    /// Both values came from the LP-exact path.
    pub exact: bool,
    /// Exact mode only: the matrix was singular, so the contraction side fell
    /// back to the norm bound and `exact` is false.
    pub co_fell_back: bool,
}

impl RateBounds {
    fn new(k: usize, r: Rat, co_upper: Bound, ex_lower: Bound, exact: bool, co_fell_back: bool) -> Self {
        let dominating = co_upper.q < ex_lower.q;
        RateBounds { k, r, co_upper, ex_lower, dominating, exact, co_fell_back }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateMode {
    Bounds,
    Exact,
}

fn check_split(m: &IMatrix, k: usize, need_head: bool, need_tail: bool) -> Result<usize, ConeError> {
    let n = m.rows();
    if !m.is_square() || k > n || (need_head && k == 0) || (need_tail && k == n) {
        return Err(ConeError::BadSplit { k, n });
    }
    Ok(n)
}

/// co_r{A} ≤ ‖A₁₁‖ + ‖A₁₂‖/r.
pub fn co_upper(m: &IMatrix, spec: &ConeSpec) -> Result<Bound, ConeError> {
    check_split(m, spec.k, false, false)?;
    let (a11, a12, _, _) = m.blocks(spec.k)?;
    let q = inf_norm_upper(&a11).q + inf_norm_upper(&a12).q / &spec.r;
    Ok(Bound::upper(q))
}

/// ex_r{A} ≥ ‖A₂₂⁻¹‖⁻¹ − r‖A₂₁‖, using the best available certificate for
/// the inverse norm. The result may be ≤ 0 (true but useless); failure to
/// certify A₂₂ invertible at all is an error.
pub fn ex_lower(m: &IMatrix, spec: &ConeSpec) -> Result<Bound, ConeError> {
    check_split(m, spec.k, false, true)?;
    let (_, _, a21, a22) = m.blocks(spec.k)?;
    let cert = inv_norm_lower_best(&a22, &QRect::zero())?;
    if !cert.q.is_positive() {
        return Err(ConeError::NoInverseCertificate);
    }
    Ok(Bound::lower(cert.q - &spec.r * inf_norm_upper(&a21).q))
}

/// Operator norm in the r-norm: max(‖A₁₁‖ + ‖A₁₂‖/r, r‖A₂₁‖ + ‖A₂₂‖).
pub fn r_opnorm_upper(m: &IMatrix, spec: &ConeSpec) -> Result<Bound, ConeError> {
    check_split(m, spec.k, false, false)?;
    let (a11, a12, a21, a22) = m.blocks(spec.k)?;
    let top = inf_norm_upper(&a11).q + inf_norm_upper(&a12).q / &spec.r;
    let bottom = &spec.r * inf_norm_upper(&a21).q + inf_norm_upper(&a22).q;
    Ok(Bound::upper(top.max(bottom)))
}

/// Domination verdict with the rates that produced it.
pub fn is_dominating(m: &IMatrix, spec: &ConeSpec, mode: RateMode) -> Result<RateBounds, ConeError> {
    check_split(m, spec.k, true, true)?;
    match mode {
        RateMode::Bounds => {
            let co = co_upper(m, spec)?;
            let ex = ex_lower(m, spec)?;
            Ok(RateBounds::new(spec.k, spec.r.clone(), co, ex, false, false))
        }
        RateMode::Exact => {
            let q = m.as_qmatrix().ok_or(ConeError::ExactNeedsPointMatrix)?;
            let ex = Bound::exact(exact_ex(&q, spec)?);
            match exact_co(&q, spec) {
                Ok(co) => Ok(RateBounds::new(
                    spec.k,
                    spec.r.clone(),
                    Bound::exact(co),
                    ex,
                    true,
                    false,
                )),
                Err(ConeError::Singular) => {
                    let co = co_upper(m, spec)?;
                    Ok(RateBounds::new(spec.k, spec.r.clone(), co, ex, false, true))
                }
                Err(e) => Err(e),
            }
        }
    }
}

fn lp_optimum(p: &LpProblem, c: &[Rat]) -> Result<(Vec<Rat>, Rat), ConeError> {
    match p.minimize(c)? {
        LpOutcome::Optimal { x, value } => Ok((x, value)),
        other => Err(ConeError::Lp(format!("face program not optimal: {other:?}"))),
    }
}

/// Exact expansion rate: minimum of ‖Ax‖_r over the unit sphere of the
/// expanding cone, which splits into the faces x_i = 1/r, i > k (negated
/// faces are covered by x ↦ −x). Also returns a minimizing vector.
pub fn exact_ex_witness(a: &QMatrix, spec: &ConeSpec) -> Result<(Rat, Vec<Rat>), ConeError> {
    let n = a.rows();
    if a.cols() != n || spec.k >= n {
        return Err(ConeError::BadSplit { k: spec.k, n });
    }
    let k = spec.k;
    let r = &spec.r;
    let r_inv = r.recip();
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    for face in k..n {
        // variables x_0..x_{n-1}, t
        let mut p = LpProblem::new(n + 1);
        let mut fixed = vec![Rat::zero(); n + 1];
        fixed[face] = Rat::one();
        p.eq(fixed, r_inv.clone())?;
        for j in 0..n {
            if j == face {
                continue;
            }
            let cap = if j < k { Rat::one() } else { r_inv.clone() };
            let mut row = vec![Rat::zero(); n + 1];
            row[j] = Rat::one();
            p.leq(row.clone(), cap.clone())?;
            row[j] = -Rat::one();
            p.leq(row, cap)?;
        }
        for out in 0..n {
            let w = if out < k { Rat::one() } else { r.clone() };
            let mut row = vec![Rat::zero(); n + 1];
            for j in 0..n {
                row[j] = &w * a.entry(out, j);
            }
            row[n] = -Rat::one();
            p.leq(row.clone(), Rat::zero())?;
            for v in row.iter_mut().take(n) {
                *v = -v.clone();
            }
            p.leq(row, Rat::zero())?;
        }
        let mut c = vec![Rat::zero(); n + 1];
        c[n] = Rat::one();
        let (vars, value) = lp_optimum(&p, &c)?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, vars[..n].to_vec()));
        }
    }
    Ok(best.expect("at least one face since k < n"))
}

pub fn exact_ex(a: &QMatrix, spec: &ConeSpec) -> Result<Rat, ConeError> {
    exact_ex_witness(a, spec).map(|(v, _)| v)
}

/// Exact contraction rate through the inverse image: co = 1 / min ‖A⁻¹y‖_r
/// over the unit sphere of the contracting cone (faces y_i = 1, i ≤ k).
/// Also returns a vector x = A⁻¹y realizing the supremum ratio.
pub fn exact_co_witness(a: &QMatrix, spec: &ConeSpec) -> Result<(Rat, Vec<Rat>), ConeError> {
    let n = a.rows();
    if a.cols() != n || spec.k == 0 || spec.k > n {
        return Err(ConeError::BadSplit { k: spec.k, n });
    }
    let inv = match exact_inv(a) {
        Ok(inv) => inv,
        Err(LinalgError::SingularMatrix) => return Err(ConeError::Singular),
        Err(e) => return Err(e.into()),
    };
    let k = spec.k;
    let r = &spec.r;
    let r_inv = r.recip();
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    for face in 0..k {
        // variables y_0..y_{n-1}, t; x = A⁻¹y
        let mut p = LpProblem::new(n + 1);
        let mut fixed = vec![Rat::zero(); n + 1];
        fixed[face] = Rat::one();
        p.eq(fixed, Rat::one())?;
        for j in 0..n {
            if j == face {
                continue;
            }
            let cap = if j < k { Rat::one() } else { r_inv.clone() };
            let mut row = vec![Rat::zero(); n + 1];
            row[j] = Rat::one();
            p.leq(row.clone(), cap.clone())?;
            row[j] = -Rat::one();
            p.leq(row, cap)?;
        }
        for out in 0..n {
            let w = if out < k { Rat::one() } else { r.clone() };
            let mut row = vec![Rat::zero(); n + 1];
            for j in 0..n {
                row[j] = &w * inv.entry(out, j);
            }
            row[n] = -Rat::one();
            p.leq(row.clone(), Rat::zero())?;
            for v in row.iter_mut().take(n) {
                *v = -v.clone();
            }
            p.leq(row, Rat::zero())?;
        }
        let mut c = vec![Rat::zero(); n + 1];
        c[n] = Rat::one();
        let (vars, value) = lp_optimum(&p, &c)?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            let x = inv.matvec(&vars[..n])?;
            best = Some((value, x));
        }
    }
    let (min_norm, witness) = best.expect("at least one face since k ≥ 1");
    if !min_norm.is_positive() {
        // impossible for invertible A: ‖A⁻¹y‖ ≥ ‖y‖/‖A‖ > 0 on the sphere
        return Err(ConeError::Singular);
    }
    Ok((min_norm.recip(), witness))
}

pub fn exact_co(a: &QMatrix, spec: &ConeSpec) -> Result<Rat, ConeError> {
    exact_co_witness(a, spec).map(|(v, _)| v)
}

/// Rates of a composition from rates of the factors: co multiplies, ex
/// multiplies after clamping negative certificates to 0. All factors must
/// share (k, r). A single factor passes through unchanged.
pub fn compose(rates: &[RateBounds]) -> Result<RateBounds, ConeError> {
    let Some(first) = rates.first() else {
        return Err(ConeError::MixedScale("empty rate list".into()));
    };
    for (i, rb) in rates.iter().enumerate().skip(1) {
        if rb.r != first.r {
            return Err(ConeError::MixedScale(format!(
                "factor {i} has r = {}, factor 0 has r = {}",
                rb.r, first.r
            )));
        }
        if rb.k != first.k {
            return Err(ConeError::MixedScale(format!(
                "factor {i} has split k = {}, factor 0 has k = {}",
                rb.k, first.k
            )));
        }
    }
    if rates.len() == 1 {
        return Ok(first.clone());
    }
    let mut co = Rat::one();
    let mut ex = Rat::one();
    for rb in rates {
        co *= &rb.co_upper.q;
        ex *= rb.ex_lower.q.clone().max(Rat::zero());
    }
    Ok(RateBounds::new(
        first.k,
        first.r.clone(),
        Bound::upper(co),
        Bound::lower(ex),
        false,
        rates.iter().any(|rb| rb.co_fell_back),
    ))
}

/// A certificate that a matrix is NOT r-dominating: some point matrix in the
/// enclosure has co ≥ `co_at_least` ≥ `ex_at_most` ≥ ex, both witnessed by
/// basis columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Refutation {
    pub co_at_least: Rat,
    pub ex_at_most: Rat,
    pub co_column: usize,
    pub ex_column: usize,
}

/// Try to certify non-domination by evaluating one point matrix (midpoints)
/// on basis vectors: a head column landing in the contracting cone lower-
/// bounds co, any tail column upper-bounds ex. Returns None when no such
/// refutation exists or the matrix has complex entries.
pub fn refute_dominating(m: &IMatrix, spec: &ConeSpec) -> Result<Option<Refutation>, ConeError> {
    let n = check_split(m, spec.k, true, true)?;
    if !m.is_real() {
        return Ok(None);
    }
    let two = Rat::one() + Rat::one();
    let col = |j: usize| -> Vec<Rat> {
        (0..n)
            .map(|i| {
                let e = &m.entry(i, j).re;
                (e.lo() + e.hi()) / &two
            })
            .collect()
    };
    // co ≥ ‖Ae_j‖_r / ‖e_j‖_r = ‖Ae_j‖_r whenever Ae_j stays contracting
    let mut co_lb = (Rat::zero(), 0usize);
    for j in 0..spec.k {
        let image = col(j);
        if cone_member(&image, spec) != ConeMembership::Expanding {
            let v = r_norm(&image, spec);
            if v > co_lb.0 {
                co_lb = (v, j);
            }
        }
    }
    // e_j is expanding for j > k, ‖e_j‖_r = r, so ex ≤ ‖Ae_j‖_r / r
    let mut ex_ub: Option<(Rat, usize)> = None;
    for j in spec.k..n {
        let v = r_norm(&col(j), spec) / &spec.r;
        if ex_ub.as_ref().is_none_or(|(b, _)| v < *b) {
            ex_ub = Some((v, j));
        }
    }
    let (ex_val, ex_col) = ex_ub.expect("tail is nonempty since k < n");
    if co_lb.0 >= ex_val {
        Ok(Some(Refutation {
            co_at_least: co_lb.0,
            ex_at_most: ex_val,
            co_column: co_lb.1,
            ex_column: ex_col,
        }))
    } else {
        Ok(None)
    }
}
