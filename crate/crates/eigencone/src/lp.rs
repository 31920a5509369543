//! Exact linear programming over the rationals.
//!
//! A small dense two-phase simplex with Bland's rule: no floating point, no
//! tolerance knobs, guaranteed termination. Problems are stated as
//! min cᵀx over free x subject to ≤/≥/= rows; internally variables are split
//! into nonnegative parts and slacks/artificials are added. Solutions are
//! audited by exact substitution before being returned.
//!
//! This is meant for the small face programs arising from cone rate
//! computations (tens of variables), not industrial LPs.

use crate::exact::Rat;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum LpError {
    #[error("constraint has {got} coefficients, problem has {want} variables")]
    DimensionMismatch { want: usize, got: usize },
    #[error("solution failed exact audit: {0}")]
    AuditFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

/// min/max cᵀx subject to rows of aᵀx ≤ b (≥ and = are sugar).
#[derive(Debug, Clone)]
pub struct LpProblem {
    n: usize,
    rows: Vec<(Vec<Rat>, Rat)>,
}

impl LpProblem {
    pub fn new(n: usize) -> Self {
        LpProblem { n, rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn leq(&mut self, coeffs: Vec<Rat>, rhs: Rat) -> Result<&mut Self, LpError> {
        if coeffs.len() != self.n {
            return Err(LpError::DimensionMismatch { want: self.n, got: coeffs.len() });
        }
        self.rows.push((coeffs, rhs));
        Ok(self)
    }

    pub fn geq(&mut self, coeffs: Vec<Rat>, rhs: Rat) -> Result<&mut Self, LpError> {
        self.leq(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    pub fn eq(&mut self, coeffs: Vec<Rat>, rhs: Rat) -> Result<&mut Self, LpError> {
        self.leq(coeffs.clone(), rhs.clone())?;
        self.geq(coeffs, rhs)
    }

    pub fn minimize(&self, c: &[Rat]) -> Result<LpOutcome, LpError> {
        if c.len() != self.n {
            return Err(LpError::DimensionMismatch { want: self.n, got: c.len() });
        }
        let outcome = self.solve(c)?;
        if let LpOutcome::Optimal { x, value } = &outcome {
            self.audit(c, x, value)?;
        }
        Ok(outcome)
    }

    pub fn maximize(&self, c: &[Rat]) -> Result<LpOutcome, LpError> {
        let neg: Vec<Rat> = c.iter().map(|v| -v).collect();
        Ok(match self.minimize(&neg)? {
            LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
            other => other,
        })
    }

    fn audit(&self, c: &[Rat], x: &[Rat], value: &Rat) -> Result<(), LpError> {
        for (i, (coeffs, rhs)) in self.rows.iter().enumerate() {
            let lhs: Rat = coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            if lhs > *rhs {
                return Err(LpError::AuditFailed(format!(
                    "row {i}: {lhs} > {rhs} at reported optimum"
                )));
            }
        }
        let obj: Rat = c.iter().zip(x).map(|(a, v)| a * v).sum();
        if obj != *value {
            return Err(LpError::AuditFailed(format!(
                "objective {obj} differs from reported {value}"
            )));
        }
        Ok(())
    }

    /// Two-phase simplex on the standard form obtained by splitting each free
    /// variable into u − v and adding one slack per row.
    fn solve(&self, c: &[Rat]) -> Result<LpOutcome, LpError> {
        let n = self.n;
        let m = self.rows.len();
        let cols = 2 * n + m; // u, v, slacks
        let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
        let mut rhs: Vec<Rat> = Vec::with_capacity(m);
        for (i, (coeffs, b)) in self.rows.iter().enumerate() {
            let mut row = vec![Rat::zero(); cols];
            for (j, a) in coeffs.iter().enumerate() {
                row[j] = a.clone();
                row[n + j] = -a;
            }
            row[2 * n + i] = Rat::one();
            if b.is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
                rhs.push(-b);
            } else {
                rhs.push(b.clone());
            }
            t.push(row);
        }

        // phase 1: artificial columns, basis = artificials
        let total = cols + m;
        for (i, row) in t.iter_mut().enumerate() {
            row.resize(total, Rat::zero());
            row[cols + i] = Rat::one();
        }
        let mut basis: Vec<usize> = (cols..total).collect();
        let mut c1 = vec![Rat::zero(); total];
        for v in c1.iter_mut().skip(cols) {
            *v = Rat::one();
        }
        if pivot_to_optimum(&mut t, &mut rhs, &mut basis, &c1) == Step::Unbounded {
            unreachable!("phase-1 objective is bounded below by zero");
        }
        let phase1: Rat = basis
            .iter()
            .zip(&rhs)
            .map(|(&b, r)| if b >= cols { r.clone() } else { Rat::zero() })
            .sum();
        if !phase1.is_zero() {
            return Ok(LpOutcome::Infeasible);
        }

        // drive leftover artificials out of the (degenerate) basis
        let mut drop_rows: Vec<usize> = Vec::new();
        for i in 0..basis.len() {
            if basis[i] < cols {
                continue;
            }
            match (0..cols).find(|&j| !t[i][j].is_zero()) {
                Some(j) => pivot(&mut t, &mut rhs, &mut basis, i, j),
                None => drop_rows.push(i), // redundant row
            }
        }
        for &i in drop_rows.iter().rev() {
            t.remove(i);
            rhs.remove(i);
            basis.remove(i);
        }
        for row in t.iter_mut() {
            row.truncate(cols);
        }

        // phase 2
        let mut c2 = vec![Rat::zero(); cols];
        for j in 0..n {
            c2[j] = c[j].clone();
            c2[n + j] = -&c[j];
        }
        if pivot_to_optimum(&mut t, &mut rhs, &mut basis, &c2) == Step::Unbounded {
            return Ok(LpOutcome::Unbounded);
        }

        let mut z = vec![Rat::zero(); cols];
        for (i, &b) in basis.iter().enumerate() {
            z[b] = rhs[i].clone();
        }
        let x: Vec<Rat> = (0..n).map(|j| &z[j] - &z[n + j]).collect();
        let value: Rat = c.iter().zip(&x).map(|(a, v)| a * v).sum();
        Ok(LpOutcome::Optimal { x, value })
    }
}

#[derive(PartialEq, Eq)]
enum Step {
    Optimal,
    Unbounded,
}

/// Bland's rule: entering = lowest-index negative reduced cost, leaving =
/// lexicographically smallest among minimum ratios. Cycling-free.
fn pivot_to_optimum(
    t: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    cost: &[Rat],
) -> Step {
    loop {
        let reduced = reduced_costs(t, basis, cost);
        let Some(enter) = reduced.iter().position(Signed::is_negative) else {
            return Step::Optimal;
        };
        let mut leave: Option<usize> = None;
        for i in 0..t.len() {
            if !t[i][enter].is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    let cur = &rhs[i] / &t[i][enter];
                    let best = &rhs[l] / &t[l][enter];
                    cur < best || (cur == best && basis[i] < basis[l])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        let Some(leave) = leave else {
            return Step::Unbounded;
        };
        pivot(t, rhs, basis, leave, enter);
    }
}

fn reduced_costs(t: &[Vec<Rat>], basis: &[usize], cost: &[Rat]) -> Vec<Rat> {
    let cols = cost.len();
    let mut red = cost.to_vec();
    for (i, &b) in basis.iter().enumerate() {
        if cost[b].is_zero() {
            continue;
        }
        for j in 0..cols {
            if !t[i][j].is_zero() {
                let adj = &cost[b] * &t[i][j];
                red[j] -= adj;
            }
        }
    }
    // basic columns are exactly representable as 0 but rounding never happens
    // here; clear them anyway so Bland's scan skips the basis
    for &b in basis {
        red[b] = Rat::zero();
    }
    red
}

fn pivot(t: &mut [Vec<Rat>], rhs: &mut [Rat], basis: &mut [usize], r: usize, e: usize) {
    let p = t[r][e].clone();
    for v in t[r].iter_mut() {
        *v = &*v / &p;
    }
    rhs[r] = &rhs[r] / &p;
    for i in 0..t.len() {
        if i == r || t[i][e].is_zero() {
            continue;
        }
        let f = t[i][e].clone();
        for j in 0..t[i].len() {
            let adj = &f * &t[r][j];
            t[i][j] -= adj;
        }
        let adj = &f * &rhs[r];
        rhs[i] -= adj;
    }
    basis[r] = e;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rint};
    use crate::linalg::{exact_inv, QMatrix};
    use proptest::prelude::*;

    fn rv(vals: &[(i64, i64)]) -> Vec<Rat> {
        vals.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn simple_bounded_min() {
        // min x + y s.t. x ≥ 1, y ≥ 1/2 → (1, 1/2), value 3/2
        let mut p = LpProblem::new(2);
        p.geq(rv(&[(1, 1), (0, 1)]), rint(1)).unwrap();
        p.geq(rv(&[(0, 1), (1, 1)]), rat(1, 2)).unwrap();
        let out = p.minimize(&rv(&[(1, 1), (1, 1)])).unwrap();
        assert_eq!(out, LpOutcome::Optimal { x: rv(&[(1, 1), (1, 2)]), value: rat(3, 2) });
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // min x s.t. x ≤ -2 → x = -2
        let mut p = LpProblem::new(1);
        p.leq(rv(&[(1, 1)]), rint(-2)).unwrap();
        p.geq(rv(&[(1, 1)]), rint(-5)).unwrap();
        match p.minimize(&rv(&[(1, 1)])).unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, rv(&[(-5, 1)]));
                assert_eq!(value, rint(-5));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        let mut p = LpProblem::new(1);
        p.leq(rv(&[(1, 1)]), rint(0)).unwrap();
        p.geq(rv(&[(1, 1)]), rint(1)).unwrap();
        assert_eq!(p.minimize(&rv(&[(1, 1)])).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let mut p = LpProblem::new(2);
        p.leq(rv(&[(1, 1), (0, 1)]), rint(3)).unwrap();
        assert_eq!(p.minimize(&rv(&[(0, 1), (1, 1)])).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_rows_and_maximize() {
        // max 2x + 3y s.t. x + y = 4, 0 ≤ x ≤ 4, 0 ≤ y ≤ 3 → (1,3) value 11
        let mut p = LpProblem::new(2);
        p.eq(rv(&[(1, 1), (1, 1)]), rint(4)).unwrap();
        p.geq(rv(&[(1, 1), (0, 1)]), rint(0)).unwrap();
        p.geq(rv(&[(0, 1), (1, 1)]), rint(0)).unwrap();
        p.leq(rv(&[(0, 1), (1, 1)]), rint(3)).unwrap();
        match p.maximize(&rv(&[(2, 1), (3, 1)])).unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rint(11));
                assert_eq!(x, rv(&[(1, 1), (3, 1)]));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // three constraints through one point keep Bland busy but finite
        let mut p = LpProblem::new(2);
        p.leq(rv(&[(1, 1), (1, 1)]), rint(1)).unwrap();
        p.leq(rv(&[(1, 1), (2, 1)]), rint(1)).unwrap();
        p.leq(rv(&[(2, 1), (1, 1)]), rint(1)).unwrap();
        p.geq(rv(&[(1, 1), (0, 1)]), rint(0)).unwrap();
        p.geq(rv(&[(0, 1), (1, 1)]), rint(0)).unwrap();
        match p.maximize(&rv(&[(1, 1), (1, 1)])).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(2, 3)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    /// Brute-force optimum by enumerating vertices of {Ax ≤ b}: every
    /// invertible row subset defines a candidate; keep the feasible ones.
    fn vertex_optimum(rows: &[(Vec<Rat>, Rat)], c: &[Rat]) -> Option<Rat> {
        let n = c.len();
        let m = rows.len();
        let mut best: Option<Rat> = None;
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            let a = QMatrix::from_rows(idx.iter().map(|&i| rows[i].0.clone()).collect()).unwrap();
            if let Ok(inv) = exact_inv(&a) {
                let b: Vec<Rat> = idx.iter().map(|&i| rows[i].1.clone()).collect();
                let x = inv.matvec(&b).unwrap();
                let feasible = rows.iter().all(|(coef, rhs)| {
                    coef.iter().zip(&x).map(|(a, v)| a * v).sum::<Rat>() <= *rhs
                });
                if feasible {
                    let val: Rat = c.iter().zip(&x).map(|(a, v)| a * v).sum();
                    best = Some(match best {
                        None => val,
                        Some(b) if val < b => val,
                        Some(b) => b,
                    });
                }
            }
            // next combination of n row indices out of m
            let mut i = n;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if idx[i] != i + m - n {
                    idx[i] += 1;
                    for j in i + 1..n {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_vertex_enumeration(
            coeffs in proptest::collection::vec(-4i64..=4, 8),
            rhs in proptest::collection::vec(0i64..=4, 4),
            obj in proptest::collection::vec(-3i64..=3, 2),
        ) {
            // 2 variables, 4 random rows with nonnegative rhs (origin feasible),
            // plus a box to keep things bounded
            let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
            for i in 0..4 {
                rows.push((vec![rint(coeffs[2 * i]), rint(coeffs[2 * i + 1])], rint(rhs[i])));
            }
            for j in 0..2 {
                let mut up = vec![rint(0); 2];
                up[j] = rint(1);
                rows.push((up.clone(), rint(5)));
                let down: Vec<Rat> = up.iter().map(|v| -v).collect();
                rows.push((down, rint(5)));
            }
            let c = vec![rint(obj[0]), rint(obj[1])];

            let mut p = LpProblem::new(2);
            for (coef, b) in &rows {
                p.leq(coef.clone(), b.clone()).unwrap();
            }
            let got = p.minimize(&c).unwrap();
            let want = vertex_optimum(&rows, &c).expect("bounded feasible LP has a vertex optimum");
            match got {
                LpOutcome::Optimal { value, .. } => prop_assert_eq!(value, want),
                other => prop_assert!(false, "expected optimum, got {:?}", other),
            }
        }
    }
}
