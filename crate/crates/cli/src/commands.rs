//! The classical, spectrum, evolve, and numtheory commands.

use std::path::Path;

use anyhow::Result;
use galq_core::classical::{cycle_census, energy, eom_residual, step_classical};
use galq_core::galois_phys::{
    check_m_periodicity, evolve_family, normalization_functional, symmetric_invariants,
    WaveFamily,
};
use galq_core::numtheory::{
    discrete_theta_exact, gauss_closed_form, gauss_sum_exact, is_odd_prime, legendre, totient,
    ThetaParams,
};
use galq_core::rational::{format_rational, parse_rational};
use galq_core::spectra::{eigen_solve, total_energies};
use galq_core::quantize::hamiltonian;
use galq_core::{make_rootset, ExponentLift, HpCtx};
use num_integer::Integer;
use serde_json::json;

use crate::config::RunConfig;
use crate::render::{csv_text, json_text, pair, write_text, OutputFormat};
use crate::NumtheoryCmd;

/// Self-description written next to every result set.
fn run_config_json(cfg: &RunConfig, lift: ExponentLift) -> serde_json::Value {
    json!({
        "n": cfg.n,
        "m": cfg.m,
        "potential": cfg.potential_coeffs,
        "steps": cfg.steps,
        "precision": cfg.precision,
        "mode": cfg.mode.label(),
        "lift_convention": lift.label(),
        "seed": cfg.seed,
    })
}

pub fn cmd_classical(cfg: &RunConfig, out: &Path, format: OutputFormat) -> Result<i32> {
    let v = &cfg.potential;
    let census = cycle_census(v)?;

    let census_rows: Vec<String> = census
        .orbits
        .iter()
        .map(|o| {
            format!(
                "{},{},{}",
                o.period, o.representative.q_prev, o.representative.q_curr
            )
        })
        .collect();
    write_text(out, "census.csv", &csv_text("period,rep_prev,rep_curr", &census_rows))?;

    let mut trajectories = Vec::new();
    let mut orbit_reports = Vec::new();
    let mut diag_rows = Vec::new();
    let mut all_eom_zero = true;
    let mut sum_of_periods = 0u64;
    for o in &census.orbits {
        sum_of_periods += o.period;
        let mut cycle = vec![o.representative];
        let mut s = o.representative;
        for _ in 0..o.period {
            s = step_classical(s, v)?;
            cycle.push(s);
        }
        let mut eom_zero = true;
        for w in cycle.windows(2) {
            if eom_residual(w[1].q_curr, w[0].q_curr, w[0].q_prev, v) != 0 {
                eom_zero = false;
            }
        }
        all_eom_zero &= eom_zero;
        let energies: Vec<u64> = cycle[..o.period as usize]
            .iter()
            .map(|s| energy(s.q_curr, s.q_prev, v))
            .collect();
        let energy_constant = energies.windows(2).all(|w| w[0] == w[1]);
        trajectories.push(json!({
            "rep": [o.representative.q_prev, o.representative.q_curr],
            "period": o.period,
            "cycle": cycle.iter().map(|s| json!([s.q_prev, s.q_curr])).collect::<Vec<_>>(),
        }));
        orbit_reports.push(json!({
            "rep": [o.representative.q_prev, o.representative.q_curr],
            "period": o.period,
            "eom_residuals_zero": eom_zero,
            "energies_mod_n": energies,
            "energy_constant": energy_constant,
        }));
        diag_rows.push(format!(
            "{},{},{},{},{}",
            o.period,
            o.representative.q_prev,
            o.representative.q_curr,
            eom_zero,
            energy_constant
        ));
    }

    write_text(out, "trajectories.json", &json_text(&json!(trajectories)))?;
    match format {
        OutputFormat::Json => {
            let diagnostics = json!({
                "n": cfg.n,
                "potential": cfg.potential_coeffs,
                "state_count": cfg.n * cfg.n,
                "orbit_count": census.orbits.len(),
                "sum_of_periods": sum_of_periods,
                "all_eom_residuals_zero": all_eom_zero,
                "orbits": orbit_reports,
            });
            write_text(out, "diagnostics.json", &json_text(&diagnostics))?;
        }
        OutputFormat::Csv => {
            write_text(
                out,
                "diagnostics.csv",
                &csv_text("period,rep_prev,rep_curr,eom_zero,energy_constant", &diag_rows),
            )?;
        }
    }
    write_text(
        out,
        "run_config.json",
        &json_text(&run_config_json(cfg, ExponentLift::SymmetricResidue)),
    )?;

    println!(
        "census: {} orbits cover {} states (sum of periods {}); EOM residuals zero: {}",
        census.orbits.len(),
        cfg.n * cfg.n,
        sum_of_periods,
        all_eom_zero
    );
    Ok(0)
}

pub fn cmd_spectrum(cfg: &RunConfig, out: &Path, lift: ExponentLift) -> Result<i32> {
    let ctx = HpCtx::new(cfg.precision)?;
    let rs = make_rootset(cfg.m);
    let mut spectra = Vec::new();
    for (i, g) in rs.roots.iter().enumerate() {
        let h = hamiltonian(g, &cfg.potential, lift)?;
        let s = eigen_solve(&h, cfg.precision)?;
        write_text(
            out,
            &format!("spectrum_{}.json", i + 1),
            &json_text(&s.to_json(&ctx)),
        )?;
        spectra.push(s);
    }
    let totals = total_energies(&spectra, cfg.precision)?;
    let totals_json = json!({
        "count": totals.len(),
        "lift_convention": lift.label(),
        "precision": cfg.precision,
        "values": totals.iter().map(|z| pair(z, &ctx)).collect::<Vec<_>>(),
    });
    write_text(out, "total_energies.json", &json_text(&totals_json))?;
    write_text(out, "run_config.json", &json_text(&run_config_json(cfg, lift)))?;

    println!(
        "spectra: {} roots (lift {}); total-energy set has {} values",
        rs.m,
        lift.label(),
        totals.len()
    );
    Ok(0)
}

pub fn cmd_evolve(
    cfg: &RunConfig,
    out: &Path,
    format: OutputFormat,
    lift: ExponentLift,
) -> Result<i32> {
    let ctx = HpCtx::new(cfg.precision)?;
    let rs = make_rootset(cfg.m);
    let root_product_one = rs.product().is_one();
    let mut fam = WaveFamily::from_common_initial(rs, cfg.initial.clone());
    let rational_data = fam.rational_init();
    let dir = if cfg.steps >= 0 { 1i64 } else { -1 };

    let mut snapshots = Vec::new();
    let mut rows_json = Vec::new();
    let mut rows_csv = Vec::new();
    let mut prev_norm = None;
    let mut norm_constant = true;
    let mut all_s_rational = true;
    for k in 0..=cfg.steps.unsigned_abs() {
        if k > 0 {
            fam = evolve_family(&fam, &cfg.potential, dir, cfg.mode, lift)?;
        }
        let norm = normalization_functional(&fam);
        let drift = prev_norm
            .as_ref()
            .map(|p: &galq_core::CyclotomicElement| norm.sub(p));
        if let Some(d) = &drift {
            if !d.is_zero() {
                norm_constant = false;
            }
        }
        let invariants = symmetric_invariants(&fam);
        let s_flags: Vec<bool> = invariants.iter().map(|s| s.is_rational()).collect();
        all_s_rational &= s_flags.iter().all(|&b| b);
        let s_values: Vec<serde_json::Value> = invariants
            .iter()
            .map(|s| {
                json!(s
                    .values
                    .iter()
                    .map(|v| match v.to_rational() {
                        Some(r) => json!(format_rational(&r)),
                        None => pair(&ctx.embed(v), &ctx),
                    })
                    .collect::<Vec<_>>())
            })
            .collect();
        let norm_pair = pair(&ctx.embed(&norm), &ctx);
        let norm_rational = norm.to_rational().map(|r| format_rational(&r));
        let drift_abs = match &drift {
            None => "0".to_string(),
            Some(d) => ctx.to_decimal_string(&ctx.embed(d).abs(&ctx)),
        };
        rows_csv.push(format!(
            "{},{},{},{},{},{}",
            fam.time(),
            norm_pair[0].as_str().unwrap_or("0"),
            norm_pair[1].as_str().unwrap_or("0"),
            norm_rational.clone().unwrap_or_default(),
            drift_abs,
            s_flags.iter().all(|&b| b)
        ));
        rows_json.push(json!({
            "time": fam.time(),
            "normalization": norm_pair,
            "normalization_rational": norm_rational,
            "drift_abs": drift_abs,
            "s_rational": s_flags,
            "s_values": s_values,
        }));
        snapshots.push(json!({
            "mode": cfg.mode.label(),
            "family": serde_json::to_value(&fam)?,
        }));
        prev_norm = Some(norm);
    }

    // Periodicity diagnostic on the final snapshot; reported, never asserted.
    let mut periodicity = Vec::new();
    for (i, comp) in fam.components().iter().enumerate() {
        let r = check_m_periodicity(comp, cfg.m, &ctx)?;
        periodicity.push(json!({
            "component": i + 1,
            "sign": r.sign,
            "max_deviation": ctx.to_decimal_string(&r.max_deviation),
            "exact": r.exact,
        }));
    }

    write_text(out, "snapshots.json", &json_text(&json!(snapshots)))?;
    match format {
        OutputFormat::Json => {
            let report = json!({
                "mode": cfg.mode.label(),
                "lift_convention": lift.label(),
                "rational_initial_data": rational_data,
                "root_product_is_one": root_product_one,
                "normalization_constant": norm_constant,
                "rows": rows_json,
                "periodicity": periodicity,
            });
            write_text(out, "invariants.json", &json_text(&report))?;
        }
        OutputFormat::Csv => {
            write_text(
                out,
                "invariants.csv",
                &csv_text(
                    "time,norm_re,norm_im,norm_rational,drift_abs,s_all_rational",
                    &rows_csv,
                ),
            )?;
        }
    }
    write_text(out, "run_config.json", &json_text(&run_config_json(cfg, lift)))?;

    println!(
        "evolve: {} steps ({}); normalization constant: {}; S_k all rational: {}",
        cfg.steps,
        cfg.mode.label(),
        norm_constant,
        all_s_rational
    );
    Ok(0)
}

pub fn cmd_numtheory(table: &NumtheoryCmd, out: &Path, precision: u32) -> Result<i32> {
    let ctx = HpCtx::new(precision)?;
    match table {
        NumtheoryCmd::GaussSum { bound } => {
            let tol = ctx.pow10_neg(precision - 4);
            let mut rows = Vec::new();
            let mut exceeded = 0usize;
            for n in (3..*bound).step_by(2).filter(|&n| is_odd_prime(n)) {
                for k in 1..n as i64 {
                    let exact = gauss_sum_exact(k, n);
                    let value = ctx.embed(&exact);
                    let closed = gauss_closed_form(k, n, &ctx).expect("odd prime, coprime k");
                    let err = value.sub(&closed, &ctx).abs(&ctx);
                    if ctx.cmp(&err, &tol) == std::cmp::Ordering::Greater {
                        exceeded += 1;
                    }
                    let coeffs = exact
                        .coeffs()
                        .iter()
                        .map(format_rational)
                        .collect::<Vec<_>>()
                        .join(";");
                    let [vre, vim] = value.to_pair_strings(&ctx);
                    let [cre, cim] = closed.to_pair_strings(&ctx);
                    rows.push(format!(
                        "{k},{n},{coeffs},{vre},{vim},{cre},{cim},{}",
                        ctx.to_decimal_string(&err)
                    ));
                }
            }
            write_text(
                out,
                "gauss_sums.csv",
                &csv_text(
                    "k,n,exact_coeffs,value_re,value_im,closed_re,closed_im,abs_error",
                    &rows,
                ),
            )?;
            println!(
                "gauss sums: {} rows over odd primes below {bound}; rows over tolerance: {exceeded}",
                rows.len()
            );
            Ok(if exceeded == 0 { 0 } else { 2 })
        }
        NumtheoryCmd::Theta { n, z, tau1, tau2 } => {
            let params = ThetaParams::quartic(
                *n,
                parse_rational(z)?,
                parse_rational(tau1)?,
                parse_rational(tau2)?,
            );
            let exact = discrete_theta_exact(&params);
            let value = ctx.embed(&exact);
            let coeffs = exact
                .coeffs()
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(";");
            let [re, im] = value.to_pair_strings(&ctx);
            let row = format!(
                "{n},{},{},{},{},{coeffs},{re},{im}",
                format_rational(&params.z),
                format_rational(&params.tau1),
                format_rational(&params.tau2),
                exact.conductor()
            );
            write_text(
                out,
                "theta.csv",
                &csv_text("n,z,tau1,tau2,conductor,exact_coeffs,re,im", &[row]),
            )?;
            println!("theta: n={n} evaluated in conductor {}", exact.conductor());
            Ok(0)
        }
        NumtheoryCmd::Totient { bound } => {
            let mut rows = Vec::new();
            let mut mismatches = 0usize;
            for n in 1..=*bound {
                let phi = totient(n);
                let brute = (1..=n).filter(|q| q.gcd(&n) == 1).count() as u64;
                if phi != brute {
                    mismatches += 1;
                }
                rows.push(format!("{n},{phi},{brute}"));
            }
            write_text(out, "totients.csv", &csv_text("n,phi,brute_force", &rows))?;
            println!("totients: 1..={bound}; mismatches against brute force: {mismatches}");
            Ok(if mismatches == 0 { 0 } else { 2 })
        }
        NumtheoryCmd::Legendre { p } => {
            let squares: std::collections::BTreeSet<u64> = (1..*p).map(|x| x * x % p).collect();
            let mut rows = Vec::new();
            let mut mismatches = 0usize;
            for k in 0..*p {
                let sym = legendre(k as i64, *p)?;
                let expected = if k == 0 {
                    0
                } else if squares.contains(&k) {
                    1
                } else {
                    -1
                };
                if sym != expected {
                    mismatches += 1;
                }
                rows.push(format!("{k},{sym}"));
            }
            write_text(out, "legendre.csv", &csv_text("k,symbol", &rows))?;
            println!("legendre: p={p}; mismatches against square search: {mismatches}");
            Ok(if mismatches == 0 { 0 } else { 2 })
        }
    }
}
