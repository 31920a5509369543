//! Acceptance gate: one test per shipped guarantee, each printing a single
//! PASS line (run with --nocapture to see them). Tolerances are part of the
//! contract; exact assertions compare rationals, not floats.

use eigencone::cones::{
    co_upper, compose, cone_member, ex_lower, exact_co, exact_co_witness, exact_ex, is_dominating,
    r_norm, ConeMembership, ConeSpec, RateMode,
};
use eigencone::exact::{rat, rint, to_f64_down, to_f64_up, QIv, QRect, Rat};
use eigencone::gersch::{classical_disks, scaled_disk_sup_r};
use eigencone::linalg::{IMatrix, QMatrix};
use eigencone::localize::{
    approx_eigs, block_localize, chain_localize, feasible_r, gersch_dominating, rparams,
    single_eigen, LocalizeError,
};
use eigencone::mfile::{load_matrix_file, MatrixInput};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;

fn example(name: &str) -> MatrixInput {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name);
    load_matrix_file(&path).unwrap_or_else(|e| panic!("loading {name}: {e}"))
}

fn spec(k: usize, r: Rat) -> ConeSpec {
    ConeSpec::new(k, r).unwrap()
}

fn close(x: f64, want: f64, tol: f64) -> bool {
    (x - want).abs() <= tol
}

#[test]
fn c01_exact_rates_dominat_exactly() {
    let m = example("dominat-exactly.json").matrix;
    let qm = m.as_qmatrix().unwrap();
    let s = spec(1, Rat::one());
    assert_eq!(exact_co(&qm, &s).unwrap(), rint(2), "exact_co");
    assert_eq!(exact_ex(&qm, &s).unwrap(), rint(3), "exact_ex");
    println!("criterion 01 PASS: exact rates co=2 ex=3 (zero tolerance)");
}

#[test]
fn c02_bound_rates_dominat_ineq() {
    let m = example("dominat-ineq.json").matrix;
    let s = spec(1, Rat::one());
    assert_eq!(co_upper(&m, &s).unwrap().q, rat(7, 2), "co_upper");
    assert_eq!(ex_lower(&m, &s).unwrap().q, rint(4), "ex_lower");
    let rb = is_dominating(&m, &s, RateMode::Bounds).unwrap();
    assert!(rb.dominating, "bounds certify domination");
    println!("criterion 02 PASS: bound rates co=3.5 ex=4, dominating");
}

#[test]
fn c03_exact_rate_beats_disks_coupled_triple() {
    let m = example("coupled-triple.json").matrix;
    let qm = m.as_qmatrix().unwrap();
    let s = spec(1, Rat::one());
    assert_eq!(exact_co(&qm, &s).unwrap(), rat(1, 2), "unscaled exact_co");

    let scaled = m.scale_diag(&[rat(9, 5), Rat::one(), Rat::one()]).unwrap();
    let scaled_qm = scaled.as_qmatrix().unwrap();
    assert_eq!(exact_co(&scaled_qm, &s).unwrap(), rat(9, 26), "scaled exact_co");
    assert_eq!(exact_co(&qm, &spec(1, rat(9, 5))).unwrap(), rat(9, 26), "direct r=9/5");

    let (co, x) = exact_co_witness(&qm, &s).unwrap();
    assert_eq!(co, rat(1, 2));
    let inf_norm = x.iter().map(Rat::abs).max().unwrap();
    assert_eq!(inf_norm, rint(2), "minimizer vertex has sup-norm 2");
    assert_eq!(x[0].abs(), rint(2));
    assert_eq!(x[1].abs(), Rat::one());
    let tail = x[2].abs();
    assert!(
        tail == rat(99, 100) || tail == rat(101, 100),
        "third coordinate {tail} off the expected vertex"
    );
    println!("criterion 03 PASS: exact_co=1/2, scaled 9/26, vertex sup-norm 2");
}

#[test]
fn c04_subspace_pair_weak_coupling() {
    let m = example("weak-coupling-4x4.json").matrix;
    let rep = block_localize(&m, 2, &QRect::zero(), false).unwrap();
    assert_eq!(rep.cone_slope.q, rat(1, 2), "slope");
    assert_eq!(rep.annulus_inner.q, rat(11, 40), "inner radius");
    assert_eq!(rep.annulus_outer.q, rat(3, 5), "exclusion radius");
    assert_eq!((rep.counts.inner, rep.counts.outer), (2, 2));
    println!("criterion 04 PASS: subspace slope 1/2, inner 11/40, exclusion 3/5");
}

#[test]
fn c05_single_eigen_mild_triple_and_transpose() {
    let m = example("mild-triple.json").matrix;
    let rep = single_eigen(&m, false).unwrap();
    assert_eq!(rep.r_used, rint(3), "recommended r");
    assert_eq!(rep.annulus_inner.q, rat(1, 5), "default radius");

    let opt = single_eigen(&m, true).unwrap();
    let radius = opt.annulus_inner.value_f64();
    assert!(close(radius, 0.110102, 1e-6), "optimized radius {radius}");
    let closed_form = (3.0 - 6.0f64.sqrt()) / 5.0;
    assert!(close(radius, closed_form, 1e-12), "matches (3-sqrt6)/5");

    let t = single_eigen(&m.transpose(), true).unwrap();
    let t_radius = t.annulus_inner.value_f64();
    assert!(close(t_radius, 0.104565, 1e-6), "transpose radius {t_radius}");
    let window = feasible_r(&rparams(&m.transpose(), 1, &QRect::zero()).unwrap()).unwrap();
    let sup = to_f64_up(&window.hi.expect("bounded window"));
    let target = (72.0 + 3597.0f64.sqrt()) / 46.0;
    assert!(close(sup, target, 1e-9), "sup r {sup} vs (72+sqrt 3597)/46 {target}");
    println!("criterion 05 PASS: radii 1/5, 0.110102, transpose 0.104565, sup r (72+sqrt3597)/46");
}

#[test]
fn c06_disks_beat_cones_coupled_triple() {
    let m = example("coupled-triple.json").matrix;
    let p = rparams(&m, 1, &QRect::zero()).unwrap();
    assert_eq!(p.delta, rint(4 - 200), "discriminant 4-200");
    assert!(
        matches!(feasible_r(&p), Err(LocalizeError::Infeasible(_))),
        "no workable cone scale"
    );

    let g = gersch_dominating(&m).unwrap();
    assert!(g.dominating, "disk route still certifies domination");

    let opt = scaled_disk_sup_r(&m).unwrap();
    let sup = to_f64_up(&opt.sup_r.expect("bounded sup"));
    let target = 1.0 + (49.0f64 / 50.0).sqrt();
    assert!(close(sup, target, 1e-9), "sup r {sup} vs 1+sqrt(49/50) {target}");
    let radius = opt.radius.value_f64();
    assert!(close(radius, 0.5025, 1e-4), "optimized disk radius {radius}");
    println!("criterion 06 PASS: cones infeasible (delta=-196), disks certify, radius 0.5025");
}

#[test]
fn c07_optimized_radius_crowded_triple() {
    let m = example("crowded-triple.json").matrix;
    let rep = single_eigen(&m, true).unwrap();
    let radius = rep.annulus_inner.value_f64();
    let rel = (radius - 0.0817).abs() / 0.0817;
    assert!(rel <= 0.02, "radius {radius} is {:.2}% from 0.0817", rel * 100.0);
    println!("criterion 07 PASS: optimized radius {radius:.6} within 2% of 0.0817");
}

#[test]
fn c08_chain_rates_and_naive_product() {
    let factor = example("iteration-factor.json").matrix;
    let mats = vec![factor; 15];
    let rep = chain_localize(&mats, 1, &Rat::one()).unwrap();

    let pow = |q: Rat| (0..15).fold(Rat::one(), |acc, _| acc * &q);
    assert!(rep.annulus_inner.q <= pow(rat(51, 100)), "co within 0.51^15");
    assert!(rep.annulus_outer.q >= pow(rat(149, 100)), "ex at least 1.49^15");

    let product = rep.naive_product.as_ref().unwrap();
    let corner = product.entry(1, 1);
    let lo = to_f64_down(corner.re.lo());
    let hi = to_f64_up(corner.re.hi());
    // the printed hull, widened a hundredth outward, still contains the entry
    assert!(lo >= 433.611 - 1e-2 && hi <= 32782.94 + 1e-2, "[{lo}, {hi}] too wide");
    // and the entry reaches the printed hull up to print rounding
    assert!(lo <= 433.6112 && hi >= 32782.93, "[{lo}, {hi}] too narrow");
    assert!(close(lo, 433.611, 1e-2) && close(hi, 32782.94, 1e-2), "corner endpoints drift");

    let b1 = example("spiky-member.json").matrix;
    for i in 0..2 {
        for j in 0..2 {
            let v = b1.entry(i, j).as_real_point().unwrap();
            let e = product.entry(i, j);
            assert!(
                e.re.lo() <= v && v <= e.re.hi() && e.im.lo() <= &Rat::zero()
                    && &Rat::zero() <= e.im.hi(),
                "B1[{i}][{j}] = {v} escapes the naive enclosure"
            );
        }
    }
    let eigs = approx_eigs(&b1).unwrap();
    assert!(close(eigs[0].0, 21.0, 1e-6) && close(eigs[0].1, 0.0, 1e-6));
    assert!(close(eigs[1].0, 501.0, 1e-6) && close(eigs[1].1, 0.0, 1e-6));
    println!("criterion 08 PASS: chain 0.51^15/1.49^15, naive corner [433.611, 32782.94], B1 inside");
}

fn random_rat(rng: &mut ChaCha8Rng, num_span: i64, max_den: i64) -> Rat {
    rat(rng.gen_range(-num_span..=num_span), rng.gen_range(1..=max_den))
}

/// Random point matrix; half the draws get a boosted tail diagonal so that
/// dominating instances occur often enough to exercise the invariance and
/// composition checks.
fn random_point_matrix(rng: &mut ChaCha8Rng, n: usize, k: usize) -> QMatrix {
    let hyperbolic = rng.gen_bool(0.5);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut q = random_rat(rng, 8, 4);
            if hyperbolic {
                if i >= k && j >= k && i == j {
                    q += rint(rng.gen_range(10..=20));
                } else if i != j {
                    q /= rint(8);
                }
            }
            row.push(q);
        }
        rows.push(row);
    }
    QMatrix::from_rows(rows).unwrap()
}

/// All sign patterns of the r-norm unit box corners (head 1, tail 1/r);
/// these sit on the common cone boundary, so they feed both oracles.
fn corner_vectors(n: usize, k: usize, r: &Rat) -> Vec<Vec<Rat>> {
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let v: Vec<Rat> = (0..n)
            .map(|i| {
                let mag = if i < k { Rat::one() } else { r.recip() };
                if mask & (1 << i) == 0 {
                    mag
                } else {
                    -mag
                }
            })
            .collect();
        out.push(v);
    }
    out
}

fn random_cone_vector(rng: &mut ChaCha8Rng, n: usize, k: usize, r: &Rat) -> Vec<Rat> {
    (0..n)
        .map(|i| {
            let q = random_rat(rng, 8, 8) / rint(8);
            if i < k {
                q
            } else {
                q * r.recip()
            }
        })
        .collect()
}

#[test]
fn c09_property_suite_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let r_pool = [rat(1, 2), Rat::one(), rat(3, 2), rint(2), rat(9, 5)];
    let mut dominating_seen = 0usize;
    let mut composed_checked = 0usize;
    let mut eigs_checked = 0usize;

    for trial in 0..1000 {
        // size-biased draw: the exact LPs at n = 5, 6 dominate the runtime
        let n = match rng.gen_range(0..10) {
            0..=2 => 2,
            3..=5 => 3,
            6..=7 => 4,
            8 => 5,
            _ => 6,
        };
        let k = rng.gen_range(1..n);
        let r = r_pool[rng.gen_range(0..r_pool.len())].clone();
        let s = spec(k, r.clone());
        let qm = random_point_matrix(&mut rng, n, k);
        let m = qm.to_imatrix();

        let co_up = co_upper(&m, &s).unwrap().q;
        let rb = is_dominating(&m, &s, RateMode::Bounds).ok();
        let ex_lo = rb.as_ref().map(|rb| rb.ex_lower.q.clone());

        // (b) exact rates stay inside the certified bounds
        let run_exact = n <= 4 || trial % 2 == 0;
        let co_exact = if run_exact { exact_co(&qm, &s).ok() } else { None };
        let ex_exact = if run_exact { Some(exact_ex(&qm, &s).unwrap()) } else { None };
        if let Some(co) = &co_exact {
            assert!(co <= &co_up, "trial {trial}: exact_co {co} above bound {co_up}");
        }
        if let (Some(ex), Some(ex_lo)) = (&ex_exact, &ex_lo) {
            assert!(ex >= ex_lo, "trial {trial}: exact_ex {ex} below bound {ex_lo}");
        }

        // (c) sampling oracle: every witnessed ratio respects the LP rates
        let mut samples = corner_vectors(n, k, &r);
        for _ in 0..12 {
            samples.push(random_cone_vector(&mut rng, n, k, &r));
        }
        let dominating = rb.as_ref().map(|rb| rb.dominating).unwrap_or(false);
        if dominating {
            dominating_seen += 1;
        }
        for x in &samples {
            let nx = r_norm(x, &s);
            if nx.is_zero() {
                continue;
            }
            let ax = qm.matvec(x).unwrap();
            let nax = r_norm(&ax, &s);
            let in_ex = matches!(
                cone_member(x, &s),
                ConeMembership::Expanding | ConeMembership::Both
            );
            let image_in_co = matches!(
                cone_member(&ax, &s),
                ConeMembership::Contracting | ConeMembership::Both
            );
            if in_ex {
                if let Some(ex) = &ex_exact {
                    assert!(
                        &nax >= &(ex.clone() * &nx),
                        "trial {trial}: expanding sample beats exact_ex"
                    );
                }
                // (a) certified domination forces the image strictly into
                // the expanding cone
                if dominating {
                    assert_eq!(
                        cone_member(&ax, &s),
                        ConeMembership::Expanding,
                        "trial {trial}: invariance fails on an expanding sample"
                    );
                }
            }
            if image_in_co {
                if let Some(co) = &co_exact {
                    assert!(
                        &nax <= &(co.clone() * &nx),
                        "trial {trial}: contracting sample beats exact_co"
                    );
                }
            }
        }

        // (e) composed rates bound the exact rates of the square
        if dominating && n <= 4 && composed_checked < 100 {
            let rb = rb.clone().unwrap();
            let composed = compose(&[rb.clone(), rb]).unwrap();
            let sq = qm.mul(&qm).unwrap();
            if let Ok(co_sq) = exact_co(&sq, &s) {
                assert!(co_sq <= composed.co_upper.q, "trial {trial}: composed co too small");
            }
            let ex_sq = exact_ex(&sq, &s).unwrap();
            assert!(ex_sq >= composed.ex_lower.q, "trial {trial}: composed ex too large");
            composed_checked += 1;
        }

        // (d) floating eigenvalue estimates stay inside the classical disks;
        // clustered spectra can defeat the root finder, which then reports
        // no eigenvalues rather than bad ones
        if trial % 4 == 0 {
            let Ok(eigs) = approx_eigs(&m) else { continue };
            eigs_checked += 1;
            let disks = classical_disks(&m).unwrap();
            let max_abs = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| to_f64_up(&qm.entry(i, j).abs()))
                .fold(0.0f64, f64::max);
            let tol = 1e-2 * (1.0 + max_abs);
            for &(re, im) in &eigs {
                let inside = disks.iter().any(|d| {
                    let c = to_f64_up(d.center.re.lo());
                    let rad = d.radius.value_f64();
                    ((re - c).powi(2) + im.powi(2)).sqrt() <= rad + tol
                });
                assert!(inside, "trial {trial}: eigenvalue {re}+{im}i escapes the disks");
            }
        }
    }
    assert!(dominating_seen >= 50, "only {dominating_seen} dominating instances sampled");
    assert!(composed_checked >= 50, "only {composed_checked} composition checks ran");
    assert!(eigs_checked >= 150, "only {eigs_checked} eigenvalue batches converged");
    println!(
        "criterion 09 PASS: 1000 instances, {dominating_seen} dominating, {composed_checked} compositions, {eigs_checked} eigenvalue batches"
    );
}

fn random_qiv(rng: &mut ChaCha8Rng) -> QIv {
    let a = random_rat(rng, 12, 4);
    if rng.gen_bool(0.3) {
        let b = &a + rat(rng.gen_range(0..=8), 4);
        QIv::new(a, b)
    } else {
        QIv::point(a)
    }
}

fn random_interval_matrix(rng: &mut ChaCha8Rng, n: usize, k: usize) -> IMatrix {
    let tame = rng.gen_bool(0.5);
    let complex = rng.gen_bool(0.2);
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut re = random_qiv(rng);
            if tame {
                if i >= k && i == j {
                    re = QIv::new(re.lo() + rint(10), re.hi() + rint(14));
                } else if i != j {
                    re = QIv::new(re.lo() / rint(10), re.hi() / rint(10));
                }
            }
            let im = if complex { random_qiv(rng) } else { QIv::point(Rat::zero()) };
            entries.push(QRect::new(re, im));
        }
    }
    IMatrix::new(n, n, entries).unwrap()
}

#[test]
fn c10_separation_invariant_fuzzed() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd15c_5eed);
    let mut emitted = 0usize;
    for trial in 0..10_000 {
        let n = rng.gen_range(1..=5);
        let k = if n == 1 { 1 } else { rng.gen_range(1..n) };
        let m = match trial % 100 {
            0 => IMatrix::identity(n),
            1 => IMatrix::new(n, n, vec![QRect::zero(); n * n]).unwrap(),
            _ => random_interval_matrix(&mut rng, n, k),
        };
        let rep = match trial % 10 {
            0..=2 => single_eigen(&m, rng.gen_bool(0.5)),
            3..=7 => block_localize(&m, k, &QRect::zero(), rng.gen_bool(0.5)),
            8 => {
                let z = QRect::point_real(random_rat(&mut rng, 4, 2));
                block_localize(&m, k, &z, false)
            }
            _ => {
                let reps = rng.gen_range(2..=3);
                chain_localize(&vec![m.clone(); reps], k, &rat(rng.gen_range(1..=3), 2))
            }
        };
        if let Ok(rep) = rep {
            emitted += 1;
            assert!(
                rep.annulus_inner.q < rep.annulus_outer.q,
                "trial {trial}: annulus collapsed, inner {} vs outer {}",
                rep.annulus_inner.q,
                rep.annulus_outer.q
            );
        }
    }
    assert!(emitted >= 300, "only {emitted} reports emitted; fuzz too weak");
    println!("criterion 10 PASS: {emitted} localization reports, separation never violated");
}
