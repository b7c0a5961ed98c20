//! Acceptance gate: one test per numbered criterion, each printing a single
//! pass/fail line. Checks follow the criteria exactly as stated; a failing
//! line means the recorded reference value disagrees with the computation.

use std::cmp::Ordering;
use std::time::Instant;

use galq_core::classical::{cycle_census, step_classical};
use galq_core::cyclotomic::{make_rootset, GaloisAutomorphism};
use galq_core::galois_phys::{
    evolve_family, galois_transform, normalization_functional, symmetric_invariants,
    EvolutionMode, WaveFamily,
};
use galq_core::hp::BigFloat;
use galq_core::numtheory::{
    dft_forward, dft_inverse, gauss_closed_form, gauss_sum_exact, is_odd_prime,
};
use galq_core::quantize::{a_sums, hamiltonian, propagate_backward, propagate_forward, lagrangian_matrix};
use galq_core::rational::rat;
use galq_core::spectra::{char_poly, char_poly_in_lambda, conjugate_spectrum, eigen_solve, total_energies};
use galq_core::{
    CyclotomicElement as C, ExponentLift, HamiltonianMatrix, HpComplex, HpCtx, PotentialSpec,
    Spectrum, WaveFunction,
};

const PRECISION: u32 = 30;

fn ctx() -> HpCtx {
    HpCtx::new(PRECISION).unwrap()
}

/// Deterministic generator for random rational test data.
struct Lcg(u64);

impl Lcg {
    fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn rational(&mut self) -> galq_core::Rational {
        let p = (self.next_u64() % 25) as i64 - 12;
        let q = (self.next_u64() % 6) as i64 + 1;
        rat(p, q)
    }

    fn wavefunction(&mut self, n: u64) -> WaveFunction {
        let amps: Vec<C> = (0..n).map(|_| C::from_rational(1, self.rational())).collect();
        WaveFunction::new(n, amps).unwrap()
    }
}

fn expand_values(s: &Spectrum) -> Vec<HpComplex> {
    s.eigenpairs
        .iter()
        .flat_map(|p| std::iter::repeat(p.value.clone()).take(p.multiplicity))
        .collect()
}

/// Greedy multiset match at 1e-12 relative tolerance (absolute below 1).
fn multiset_close(refs: &[HpComplex], comp: &[HpComplex], ctx: &HpCtx) -> bool {
    if refs.len() != comp.len() {
        return false;
    }
    let tol = ctx.pow10_neg(12);
    let one = ctx.from_i64(1);
    let mut used = vec![false; comp.len()];
    for r in refs {
        let mut best: Option<(usize, BigFloat)> = None;
        for (j, c) in comp.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = c.sub(r, ctx).abs(ctx);
            if best
                .as_ref()
                .map_or(true, |(_, bd)| ctx.cmp(&d, bd) == Ordering::Less)
            {
                best = Some((j, d));
            }
        }
        let Some((j, d)) = best else { return false };
        let ra = r.abs(ctx);
        let scale = if ctx.cmp(&ra, &one) == Ordering::Greater {
            ra
        } else {
            one.clone()
        };
        if ctx.cmp(&d, &ctx.mul(&tol, &scale)) == Ordering::Greater {
            return false;
        }
        used[j] = true;
    }
    true
}

/// Exact eigenvalue when v is an eigenvector of h, else None.
fn exact_eigenvector(h: &HamiltonianMatrix, entries: Vec<C>) -> Option<C> {
    let v = WaveFunction::new(h.n, entries).unwrap();
    let hv = h.apply(&v).unwrap();
    let j = (1..=h.n).find(|&q| !v.amplitude(q).is_zero())?;
    let lambda = hv.amplitude(j).div(v.amplitude(j)).unwrap();
    for q in 1..=h.n {
        if !hv.amplitude(q).sub(&lambda.mul(v.amplitude(q))).is_zero() {
            return None;
        }
    }
    Some(lambda)
}

fn int_vector(conductor: u64, ints: &[i64]) -> Vec<C> {
    ints.iter().map(|&a| C::from_integer(conductor, a)).collect()
}

fn is_eigenvector_with(h: &HamiltonianMatrix, ints: &[i64], conductor: u64, lam: &C) -> bool {
    exact_eigenvector(h, int_vector(conductor, ints)).is_some_and(|l| l.sub(lam).is_zero())
}

fn report(n: u32, ok: bool, fails: &[String]) {
    if ok {
        println!("criterion {n}: PASS");
    } else {
        println!("criterion {n}: FAIL ({})", fails.join("; "));
    }
    assert!(ok, "criterion {n} failed: {}", fails.join("; "));
}

fn solve_all(
    m: u64,
    v: &PotentialSpec,
    lift: ExponentLift,
) -> (Vec<HamiltonianMatrix>, Vec<Spectrum>) {
    let rs = make_rootset(m);
    let mut hs = Vec::new();
    let mut ss = Vec::new();
    for g in &rs.roots {
        let h = hamiltonian(g, v, lift).unwrap();
        ss.push(eigen_solve(&h, PRECISION).unwrap());
        hs.push(h);
    }
    (hs, ss)
}

#[test]
fn criterion_1_example_1_reproduction() {
    let t0 = Instant::now();
    let ctx = ctx();
    let v = PotentialSpec::new(2, &[0, 0, 1]);
    let (hs, ss) = solve_all(2, &v, ExponentLift::IntegerAction);

    let zero = HpComplex::zero(&ctx);
    let minus_i = ctx.embed(&C::zeta_pow(4, 3));
    let plus_i = ctx.embed(&C::zeta_pow(4, 1));
    let mut fails = Vec::new();

    if !multiset_close(&[zero.clone(), minus_i], &expand_values(&ss[0]), &ctx) {
        fails.push("spectrum of g=i is not {0, -i}".to_string());
    }
    if !is_eigenvector_with(&hs[0], &[0, 1], 4, &C::zero(4)) {
        fails.push("(0,1) is not a null eigenvector".to_string());
    }
    if !is_eigenvector_with(&hs[0], &[-1, 1], 4, &C::zeta_pow(4, 3)) {
        fails.push("(-1,1) is not a -i eigenvector".to_string());
    }
    let conj = conjugate_spectrum(&ss[0]).unwrap();
    if !multiset_close(&[zero, plus_i], &expand_values(&conj), &ctx) {
        fails.push("conjugate spectrum is not {0, +i}".to_string());
    }
    let elapsed = t0.elapsed();
    if elapsed.as_secs_f64() >= 1.0 {
        fails.push(format!("runtime {elapsed:?} over 1 s"));
    }
    report(1, fails.is_empty(), &fails);
}

#[test]
fn criterion_2_example_2_reproduction() {
    let t0 = Instant::now();
    let ctx = ctx();
    let v = PotentialSpec::new(3, &[0, 0, 1]);
    let (hs, ss) = solve_all(3, &v, ExponentLift::SymmetricResidue);

    // -(sqrt(3)/2) i = (omega^2 - omega)/2
    let lam = C::zeta_pow(3, 2).sub(&C::zeta_pow(3, 1)).scale(&rat(1, 2));
    let e = ctx.embed(&lam);
    let zero = HpComplex::zero(&ctx);
    let mut fails = Vec::new();

    if !(1..=3).all(|q| (1..=3).all(|qp| hs[0].entry(q, qp).is_zero())) {
        fails.push("g=1 matrix is not zero".to_string());
    }
    if !multiset_close(
        &[zero.clone(), e.clone(), e.clone()],
        &expand_values(&ss[1]),
        &ctx,
    ) {
        fails.push("spectrum of g=omega is not {0, -(sqrt3/2)i x2}".to_string());
    }
    for (ints, expect, label) in [
        ([0i64, 0, 1], C::zero(3), "(0,0,1)"),
        ([1, 0, 1], lam.clone(), "(1,0,1)"),
        ([0, 1, -1], lam.clone(), "(0,1,-1)"),
    ] {
        if !is_eigenvector_with(&hs[1], &ints, 3, &expect) {
            fails.push(format!("printed eigenvector {label} does not reproduce"));
        }
    }
    let totals = total_energies(&ss, PRECISION).unwrap();
    if !multiset_close(&[zero, e.clone(), e.conj(&ctx)], &totals, &ctx) {
        fails.push("total-energy set is not {0, +-(sqrt3/2)i}".to_string());
    }
    let elapsed = t0.elapsed();
    if elapsed.as_secs_f64() >= 1.0 {
        fails.push(format!("runtime {elapsed:?} over 1 s"));
    }
    report(2, fails.is_empty(), &fails);
}

#[test]
fn criterion_3_example_3_reproduction() {
    let t0 = Instant::now();
    let ctx = ctx();
    let v = PotentialSpec::new(6, &[0, 0, 1]);
    let (hs, ss) = solve_all(2, &v, ExponentLift::SymmetricResidue);
    let mut fails = Vec::new();

    let expected_l: [[i64; 6]; 6] = [
        [-1, 0, 3, 2, 3, 0],
        [3, 2, 3, 0, -1, 0],
        [1, -2, 3, -2, 1, 0],
        [-1, 0, 3, 2, 3, 0],
        [3, 2, 3, 0, -1, 0],
        [1, -2, 3, -2, 1, 0],
    ];
    let lmat = lagrangian_matrix(&v);
    if !(1..=6u64).all(|q| {
        (1..=6u64).all(|qp| lmat.symmetric_entry(q, qp) == expected_l[(q - 1) as usize][(qp - 1) as usize])
    }) {
        fails.push("step-Lagrangian table mismatch".to_string());
    }

    let lam_poly = char_poly_in_lambda(&char_poly(&hs[0]));
    let expected = [0i64, 0, 0, 0, 4, 3, 1];
    let poly_ok = lam_poly.coeffs().len() == 7
        && lam_poly
            .coeffs()
            .iter()
            .zip(expected.iter())
            .all(|(c, &e)| c.to_rational().is_some_and(|r| r == rat(e, 1)));
    if !poly_ok {
        fails.push("lambda-polynomial is not lambda^4(lambda^2+3lambda+4)".to_string());
    }

    let zero = HpComplex::zero(&ctx);
    let s7 = ctx.sqrt(&ctx.from_i64(7));
    let neg = |x: &BigFloat| ctx.sub(&ctx.zero(), x);
    let half = |x: &BigFloat| ctx.div(x, &ctx.from_i64(2));
    let mk = |re: BigFloat, im: BigFloat| HpComplex { re, im };
    let e_plus = mk(half(&s7), half(&ctx.from_i64(-3)));
    let e_minus = mk(neg(&half(&s7)), half(&ctx.from_i64(-3)));
    if !multiset_close(
        &[
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            e_plus.clone(),
            e_minus.clone(),
        ],
        &expand_values(&ss[0]),
        &ctx,
    ) {
        fails.push("spectrum of g=i is not {0 x4, (+-sqrt7 - 3i)/2}".to_string());
    }

    let totals = total_energies(&ss, PRECISION).unwrap();
    if totals.len() != 7 {
        fails.push(format!("total-energy set has {} values, not 7", totals.len()));
    }
    let refs = vec![
        zero,
        mk(s7.clone(), ctx.zero()),
        mk(neg(&s7), ctx.zero()),
        mk(half(&s7), half(&ctx.from_i64(3))),
        mk(neg(&half(&s7)), half(&ctx.from_i64(-3))),
        e_plus,
        mk(neg(&half(&s7)), half(&ctx.from_i64(3))),
    ];
    if !multiset_close(&refs, &totals, &ctx) {
        fails.push("total-energy values mismatch".to_string());
    }

    let approx = ctx.div(&ctx.from_i64(8), &ctx.from_i64(3));
    let rel = ctx.div(&ctx.sub(&s7, &approx).abs(), &s7);
    if ctx.cmp(&rel, &ctx.div(&ctx.from_i64(1), &ctx.from_i64(100))) != Ordering::Less {
        fails.push("sqrt(7) vs 8/3 deviates by 1 percent or more".to_string());
    }

    let elapsed = t0.elapsed();
    if elapsed.as_secs_f64() >= 5.0 {
        fails.push(format!("runtime {elapsed:?} over 5 s"));
    }
    report(3, fails.is_empty(), &fails);
}

#[test]
fn criterion_4_example_4_reproduction() {
    let t0 = Instant::now();
    let ctx = ctx();
    let v = PotentialSpec::new(6, &[0, 0, 1]);
    let (hs, ss) = solve_all(3, &v, ExponentLift::SymmetricResidue);
    let mut fails = Vec::new();

    // Recorded value: -2 sqrt(3) i = 2 (omega^2 - omega).
    let lam_rec = C::zeta_pow(3, 2).sub(&C::zeta_pow(3, 1)).scale(&rat(2, 1));
    let rec = ctx.embed(&lam_rec);
    let zero = HpComplex::zero(&ctx);

    if !multiset_close(
        &[
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            rec.clone(),
            rec.clone(),
        ],
        &expand_values(&ss[1]),
        &ctx,
    ) {
        fails.push("spectrum of g=omega is not {0 x4, -2sqrt(3)i x2}".to_string());
    }
    for (ints, label) in [
        ([-1i64, 0, 1, -1, 0, 1], "(-1,0,1,-1,0,1)"),
        ([-1, 1, 0, -1, 1, 0], "(-1,1,0,-1,1,0)"),
    ] {
        if !is_eigenvector_with(&hs[1], &ints, 3, &lam_rec) {
            fails.push(format!("printed vector {label} is not a -2sqrt(3)i eigenvector"));
        }
    }
    if !multiset_close(
        &[
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            rec.conj(&ctx),
            rec.conj(&ctx),
        ],
        &expand_values(&ss[2]),
        &ctx,
    ) {
        fails.push("spectrum of g=omega^2 is not the +2sqrt(3)i conjugate".to_string());
    }
    let totals = total_energies(&ss, PRECISION).unwrap();
    if !multiset_close(&[zero, rec.clone(), rec.conj(&ctx)], &totals, &ctx) {
        fails.push("total-energy set is not {0, +-2sqrt(3)i}".to_string());
    }
    let elapsed = t0.elapsed();
    if elapsed.as_secs_f64() >= 5.0 {
        fails.push(format!("runtime {elapsed:?} over 5 s"));
    }
    report(4, fails.is_empty(), &fails);
}

#[test]
fn criterion_5_gauss_sum_closed_forms() {
    let t0 = Instant::now();
    let ctx = ctx();
    let tol = ctx.pow10_neg(20);
    let mut fails = Vec::new();

    for n in (3..100u64).step_by(2).filter(|&n| is_odd_prime(n)) {
        for k in 1..n as i64 {
            let value = ctx.embed(&gauss_sum_exact(k, n));
            let closed = gauss_closed_form(k, n, &ctx).unwrap();
            let err = value.sub(&closed, &ctx).abs(&ctx);
            if ctx.cmp(&err, &tol) == Ordering::Greater {
                fails.push(format!("G({k},{n}) off by more than 1e-20"));
            }
        }
    }
    for k in [1i64, 3, 5, 7, 9] {
        if !gauss_sum_exact(k, 2).is_zero() {
            fails.push(format!("G({k},2) is not exactly zero"));
        }
    }
    let elapsed = t0.elapsed();
    if elapsed.as_secs_f64() >= 30.0 {
        fails.push(format!("runtime {elapsed:?} over 30 s"));
    }
    report(5, fails.is_empty(), &fails);
}

#[test]
fn criterion_6_property_suite() {
    let mut fails = Vec::new();
    let configs = [(2u64, 2u64), (3, 3), (6, 2), (6, 3)];
    let lift = ExponentLift::SymmetricResidue;

    // a. Galois equivariance: sigma permutes the family into itself.
    // b. Symmetric invariants of those families are rational.
    for &(n, m) in &configs {
        let v = PotentialSpec::new(n, &[0, 0, 1]);
        for t in 0..=4i64 {
            let fam = WaveFamily::delta(make_rootset(m), n, 1);
            let evolved = evolve_family(&fam, &v, t, EvolutionMode::Full, lift).unwrap();
            for sigma in GaloisAutomorphism::group(evolved.conductor()) {
                let mapped = galois_transform(&evolved, &sigma);
                if mapped != evolved {
                    fails.push(format!(
                        "equivariance broken for n={n} m={m} t={t} sigma={}",
                        sigma.exponent()
                    ));
                }
            }
            for s in symmetric_invariants(&evolved) {
                if !s.is_rational() {
                    fails.push(format!("S_{} irrational for n={n} m={m} t={t}", s.k));
                }
            }
        }
    }

    // c. Potential-only conservation over 10 steps when the root product is 1.
    for &(n, m) in &configs {
        let v = PotentialSpec::new(n, &[0, 0, 1]);
        let rs = make_rootset(m);
        if !rs.product().is_one() {
            fails.push(format!("root product for m={m} is not 1"));
            continue;
        }
        let fam = WaveFamily::delta(rs, n, 1);
        let before = normalization_functional(&fam);
        let after = normalization_functional(
            &evolve_family(&fam, &v, 10, EvolutionMode::PotentialOnly, lift).unwrap(),
        );
        if !after.sub(&before).is_zero() {
            fails.push(format!("potential-only norm drifts for n={n} m={m}"));
        }
    }

    // d. H psi = (forward - backward)/2 on 100 random rational psi per config.
    let mut lcg = Lcg(0x9e3779b97f4a7c15);
    for &(n, m) in &configs {
        let v = PotentialSpec::new(n, &[0, 0, 1]);
        let rs = make_rootset(m);
        for _ in 0..100 {
            let psi = lcg.wavefunction(n);
            for g in &rs.roots {
                let h = hamiltonian(g, &v, lift).unwrap();
                let h_psi = h.apply(&psi).unwrap();
                let f = propagate_forward(&psi, g, &v, lift).unwrap();
                let b = propagate_backward(&psi, g, &v, lift).unwrap();
                for q in 1..=n {
                    let expect = f.amplitude(q).sub(b.amplitude(q)).scale(&rat(1, 2));
                    if !h_psi.amplitude(q).sub(&expect).is_zero() {
                        fails.push(format!("H psi mismatch at n={n} m={m} q={q}"));
                    }
                }
            }
        }
    }

    // e. Census partitions with periods verified by re-iteration.
    for n in [3u64, 5, 7] {
        for coeffs in [vec![], vec![0, 0, 1], vec![0, 1, 1]] {
            let v = PotentialSpec::new(n, &coeffs);
            let census = cycle_census(&v).unwrap();
            let total: u64 = census.orbits.iter().map(|o| o.period).sum();
            if total != n * n {
                fails.push(format!("census for n={n} V={coeffs:?} misses states"));
            }
            for o in &census.orbits {
                let mut s = o.representative;
                for step in 1..=o.period {
                    s = step_classical(s, &v).unwrap();
                    if s == o.representative && step < o.period {
                        fails.push(format!("period overstated for n={n} orbit {:?}", o.representative));
                        break;
                    }
                }
                if s != o.representative {
                    fails.push(format!("period {} wrong for n={n} orbit {:?}", o.period, o.representative));
                }
            }
        }
    }

    // f. DFT round trip exact for n <= 12.
    for n in 1..=12u64 {
        let psi = lcg.wavefunction(n);
        let back = dft_inverse(&dft_forward(&psi));
        for q in 1..=n {
            if !back.amplitude(q).sub(psi.amplitude(q)).is_zero() {
                fails.push(format!("DFT round trip broken at n={n}"));
                break;
            }
        }
    }

    // g. A_1 = A_3 = 0 exactly for odd n <= 13, every admissible base.
    for n in (3..=13u64).step_by(2) {
        let mut bases: Vec<C> = (0..n).map(|j| C::zeta_pow(n, j as i64)).collect();
        bases.extend((0..n).map(|j| C::zeta_pow(2 * n, 2 * j as i64 + 1)));
        for g in bases {
            for k in [1u32, 3] {
                if !a_sums(&g, n, k).unwrap().is_zero() {
                    fails.push(format!("A_{k} nonzero for n={n}"));
                }
            }
        }
    }

    report(6, fails.is_empty(), &fails);
}

#[test]
fn criterion_7_reproduce_examples_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let run = || {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_galq"))
            .arg("reproduce-examples")
            .arg("--out")
            .arg(tmp.path())
            .output()
            .unwrap();
        (
            out.stdout,
            std::fs::read(tmp.path().join("examples_report.md")).unwrap(),
        )
    };
    let (stdout1, report1) = run();
    let (stdout2, report2) = run();
    let ok = report1 == report2 && stdout1 == stdout2;
    let fails = if ok {
        vec![]
    } else {
        vec!["reports differ between runs".to_string()]
    };
    report(7, ok, &fails);
}
