//! Recomputes the four recorded reference configurations and reports, row by
//! row, whether each recorded quantity is reproduced. Eigenvalues are matched
//! at 1e-12 relative tolerance; eigenvectors, characteristic polynomials, and
//! the step-Lagrangian table are checked exactly over the field.

use std::cmp::Ordering;
use std::path::Path;

use anyhow::Result;
use galq_core::hp::BigFloat;
use galq_core::numtheory::gauss_sum_exact;
use galq_core::quantize::{hamiltonian, lagrangian_matrix};
use galq_core::rational::{rat, rat_i64};
use galq_core::spectra::{char_poly, char_poly_in_lambda, conjugate_spectrum, eigen_solve, total_energies};
use galq_core::{
    make_rootset, CyclotomicElement, ExponentLift, HamiltonianMatrix, HpComplex, HpCtx,
    PotentialSpec, Spectrum, WaveFunction,
};

use crate::render::{fmt_complex, fmt_f64, write_text};

struct Row {
    quantity: String,
    reference: String,
    computed: String,
    pass: bool,
}

struct ExampleReport {
    title: String,
    lift: ExponentLift,
    rows: Vec<Row>,
}

impl ExampleReport {
    fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.pass).count()
    }

    fn all_pass(&self) -> bool {
        self.passed() == self.rows.len()
    }

    fn failing(&self) -> Vec<&str> {
        self.rows
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.quantity.as_str())
            .collect()
    }
}

/// Eigenvalue of h on v when v is exactly an eigenvector, else None.
fn exact_eigenvector(
    h: &HamiltonianMatrix,
    entries: Vec<CyclotomicElement>,
) -> Result<Option<CyclotomicElement>> {
    let v = WaveFunction::new(h.n, entries)?;
    let hv = h.apply(&v)?;
    let Some(j) = (1..=h.n).find(|&q| !v.amplitude(q).is_zero()) else {
        return Ok(None);
    };
    let lambda = hv.amplitude(j).div(v.amplitude(j))?;
    for q in 1..=h.n {
        if !hv.amplitude(q).sub(&lambda.mul(v.amplitude(q))).is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(lambda))
}

fn int_vector(conductor: u64, ints: &[i64]) -> Vec<CyclotomicElement> {
    ints.iter()
        .map(|&a| CyclotomicElement::from_integer(conductor, a))
        .collect()
}

/// Eigenvalues repeated by algebraic multiplicity, in solver order.
fn expand_values(s: &Spectrum) -> Vec<HpComplex> {
    s.eigenpairs
        .iter()
        .flat_map(|p| std::iter::repeat(p.value.clone()).take(p.multiplicity))
        .collect()
}

/// Greedy nearest-match of two multisets at relative tolerance 1e-12
/// (absolute below magnitude 1).
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

fn fmt_set(vals: &[HpComplex]) -> String {
    let parts: Vec<String> = vals.iter().map(|z| fmt_complex(z)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn value_row(
    quantity: &str,
    refs: &[HpComplex],
    comp: &[HpComplex],
    ctx: &HpCtx,
) -> Row {
    Row {
        quantity: quantity.to_string(),
        reference: fmt_set(refs),
        computed: fmt_set(comp),
        pass: multiset_close(refs, comp, ctx),
    }
}

/// Row asserting v is an exact eigenvector of h with the given eigenvalue.
fn vector_row(
    quantity: &str,
    h: &HamiltonianMatrix,
    v: Vec<CyclotomicElement>,
    expect: &CyclotomicElement,
    ref_text: &str,
    ctx: &HpCtx,
) -> Result<Row> {
    let got = exact_eigenvector(h, v)?;
    let (computed, pass) = match &got {
        None => ("not an eigenvector".to_string(), false),
        Some(l) => (
            format!("eigenvector, eigenvalue {}", fmt_complex(&ctx.embed(l))),
            l.sub(expect).is_zero(),
        ),
    };
    Ok(Row {
        quantity: quantity.to_string(),
        reference: ref_text.to_string(),
        computed,
        pass,
    })
}

fn solve_roots(
    m: u64,
    v: &PotentialSpec,
    lift: ExponentLift,
    precision: u32,
) -> Result<(Vec<HamiltonianMatrix>, Vec<Spectrum>)> {
    let rs = make_rootset(m);
    let mut hs = Vec::new();
    let mut ss = Vec::new();
    for g in &rs.roots {
        let h = hamiltonian(g, v, lift)?;
        ss.push(eigen_solve(&h, precision)?);
        hs.push(h);
    }
    Ok((hs, ss))
}

fn example_1(ctx: &HpCtx, precision: u32) -> Result<ExampleReport> {
    let lift = ExponentLift::IntegerAction;
    let v = PotentialSpec::new(2, &[0, 0, 1]);
    let (hs, ss) = solve_roots(2, &v, lift, precision)?;

    let zero = HpComplex::zero(ctx);
    let minus_i = ctx.embed(&CyclotomicElement::zeta_pow(4, 3));
    let plus_i = ctx.embed(&CyclotomicElement::zeta_pow(4, 1));

    let mut rows = Vec::new();
    rows.push(value_row(
        "g=i eigenvalues",
        &[zero.clone(), minus_i.clone()],
        &expand_values(&ss[0]),
        ctx,
    ));
    rows.push(vector_row(
        "g=i eigenvector (0, 1)",
        &hs[0],
        int_vector(4, &[0, 1]),
        &CyclotomicElement::zero(4),
        "eigenvalue 0",
        ctx,
    )?);
    rows.push(vector_row(
        "g=i eigenvector (-1, 1)",
        &hs[0],
        int_vector(4, &[-1, 1]),
        &CyclotomicElement::zeta_pow(4, 3),
        "eigenvalue -i",
        ctx,
    )?);
    rows.push(value_row(
        "g=-i eigenvalues",
        &[zero.clone(), plus_i.clone()],
        &expand_values(&ss[1]),
        ctx,
    ));
    let conj = conjugate_spectrum(&ss[0])?;
    rows.push(value_row(
        "conjugate of the g=i spectrum",
        &expand_values(&ss[1]),
        &expand_values(&conj),
        ctx,
    ));
    let totals = total_energies(&ss, precision)?;
    rows.push(value_row(
        "total-energy set",
        &[zero, plus_i, minus_i],
        &totals,
        ctx,
    ));

    Ok(ExampleReport {
        title: "Example 1: n=2, m=2, V=q^2".to_string(),
        lift,
        rows,
    })
}

fn example_2(ctx: &HpCtx, precision: u32) -> Result<ExampleReport> {
    let lift = ExponentLift::SymmetricResidue;
    let v = PotentialSpec::new(3, &[0, 0, 1]);
    let (hs, ss) = solve_roots(3, &v, lift, precision)?;

    // -(sqrt(3)/2) i = (omega^2 - omega) / 2 exactly.
    let half = rat(1, 2);
    let lam = CyclotomicElement::zeta_pow(3, 2)
        .sub(&CyclotomicElement::zeta_pow(3, 1))
        .scale(&half);
    let e = ctx.embed(&lam);
    let e_conj = e.conj(ctx);
    let zero = HpComplex::zero(ctx);

    let mut rows = Vec::new();
    let all_zero = (1..=3).all(|q| (1..=3).all(|qp| hs[0].entry(q, qp).is_zero()));
    rows.push(Row {
        quantity: "g=1 operator matrix".to_string(),
        reference: "all entries 0".to_string(),
        computed: if all_zero {
            "all entries 0".to_string()
        } else {
            "nonzero entries present".to_string()
        },
        pass: all_zero,
    });
    rows.push(value_row(
        "g=omega eigenvalues",
        &[zero.clone(), e.clone(), e.clone()],
        &expand_values(&ss[1]),
        ctx,
    ));
    rows.push(vector_row(
        "g=omega eigenvector (0, 0, 1)",
        &hs[1],
        int_vector(3, &[0, 0, 1]),
        &CyclotomicElement::zero(3),
        "eigenvalue 0",
        ctx,
    )?);
    rows.push(vector_row(
        "g=omega eigenvector (1, 0, 1)",
        &hs[1],
        int_vector(3, &[1, 0, 1]),
        &lam,
        "eigenvalue -(sqrt(3)/2)i",
        ctx,
    )?);
    rows.push(vector_row(
        "g=omega eigenvector (0, 1, -1)",
        &hs[1],
        int_vector(3, &[0, 1, -1]),
        &lam,
        "eigenvalue -(sqrt(3)/2)i",
        ctx,
    )?);
    rows.push(value_row(
        "g=omega^2 eigenvalues",
        &[zero.clone(), e_conj.clone(), e_conj.clone()],
        &expand_values(&ss[2]),
        ctx,
    ));
    let totals = total_energies(&ss, precision)?;
    rows.push(value_row("total-energy set", &[zero, e, e_conj], &totals, ctx));

    Ok(ExampleReport {
        title: "Example 2: n=3, m=3, V=q^2".to_string(),
        lift,
        rows,
    })
}

fn example_3(ctx: &HpCtx, precision: u32) -> Result<ExampleReport> {
    let lift = ExponentLift::SymmetricResidue;
    let v = PotentialSpec::new(6, &[0, 0, 1]);
    let (hs, ss) = solve_roots(2, &v, lift, precision)?;

    let mut rows = Vec::new();

    // Step-Lagrangian table in symmetric representatives, all 36 entries.
    let expected_l: [[i64; 6]; 6] = [
        [-1, 0, 3, 2, 3, 0],
        [3, 2, 3, 0, -1, 0],
        [1, -2, 3, -2, 1, 0],
        [-1, 0, 3, 2, 3, 0],
        [3, 2, 3, 0, -1, 0],
        [1, -2, 3, -2, 1, 0],
    ];
    let lmat = lagrangian_matrix(&v);
    let mut l_ok = true;
    let mut first_bad = String::new();
    for q in 1..=6u64 {
        for qp in 1..=6u64 {
            let got = lmat.symmetric_entry(q, qp);
            if got != expected_l[(q - 1) as usize][(qp - 1) as usize] && first_bad.is_empty() {
                l_ok = false;
                first_bad = format!("entry ({q},{qp}) = {got}");
            }
        }
    }
    rows.push(Row {
        quantity: "step-Lagrangian table (symmetric representatives)".to_string(),
        reference: "recorded 6x6 table".to_string(),
        computed: if l_ok {
            "matches entry for entry".to_string()
        } else {
            format!("mismatch at {first_bad}")
        },
        pass: l_ok,
    });

    // Characteristic polynomial in lambda (E = i lambda): lambda^4 (lambda^2 + 3 lambda + 4).
    let lam_poly = char_poly_in_lambda(&char_poly(&hs[0]));
    let expected_coeffs = [0i64, 0, 0, 0, 4, 3, 1];
    let got_coeffs: Vec<Option<galq_core::Rational>> =
        lam_poly.coeffs().iter().map(|c| c.to_rational()).collect();
    let poly_ok = got_coeffs.len() == 7
        && got_coeffs
            .iter()
            .zip(expected_coeffs.iter())
            .all(|(g, &e)| g.as_ref().is_some_and(|r| *r == rat_i64(e)));
    rows.push(Row {
        quantity: "lambda-polynomial".to_string(),
        reference: "lambda^4 (lambda^2 + 3 lambda + 4)".to_string(),
        computed: if poly_ok {
            "coefficients [0, 0, 0, 0, 4, 3, 1]".to_string()
        } else {
            format!(
                "coefficients {:?}",
                got_coeffs
                    .iter()
                    .map(|g| g
                        .as_ref()
                        .map(|r| r.to_string())
                        .unwrap_or_else(|| "irrational".to_string()))
                    .collect::<Vec<_>>()
            )
        },
        pass: poly_ok,
    });

    let zero = HpComplex::zero(ctx);
    let s7 = ctx.sqrt(&ctx.from_i64(7));
    let half = |x: &BigFloat| ctx.div(x, &ctx.from_i64(2));
    let mk = |re: BigFloat, im: BigFloat| HpComplex { re, im };
    let m3h = half(&ctx.from_i64(-3));
    let p3h = half(&ctx.from_i64(3));
    let e_plus = mk(half(&s7), m3h.clone());
    let e_minus = mk(ctx.sub(&ctx.zero(), &half(&s7)), m3h.clone());
    rows.push(value_row(
        "g=i eigenvalues",
        &[
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            e_plus.clone(),
            e_minus.clone(),
        ],
        &expand_values(&ss[0]),
        ctx,
    ));
    rows.push(value_row(
        "g=-i eigenvalues",
        &[
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            e_plus.conj(ctx),
            e_minus.conj(ctx),
        ],
        &expand_values(&ss[1]),
        ctx,
    ));

    for ints in [
        [0, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [-1, 0, 0, 0, 1, 0],
    ] {
        rows.push(vector_row(
            &format!(
                "g=i zero mode ({})",
                ints.iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            &hs[0],
            int_vector(4, &ints),
            &CyclotomicElement::zero(4),
            "eigenvalue 0",
            ctx,
        )?);
    }

    // a = (-1 + sqrt(7) i)/4 lives in Q(zeta_7): sqrt(7) i is the Gauss sum
    // G(1,7). Expected eigenvalue (-sqrt(7) - 3i)/2 = i (G(1,7) - 3)/2.
    let g7 = gauss_sum_exact(1, 7);
    let quarter = rat(1, 4);
    let a = g7.sub(&CyclotomicElement::one(7)).scale(&quarter);
    let one7 = CyclotomicElement::one(7);
    let vec_a = vec![a.clone(), a.clone(), one7.clone(), a.clone(), a, one7];
    let lam_ref = CyclotomicElement::zeta_pow(4, 1)
        .mul(&g7.sub(&CyclotomicElement::from_integer(7, 3)))
        .scale(&rat(1, 2));
    rows.push(vector_row(
        "g=i eigenvector (a, a, 1, a, a, 1), a = (-1 + sqrt(7)i)/4",
        &hs[0],
        vec_a,
        &lam_ref,
        "eigenvalue (-sqrt(7) - 3i)/2",
        ctx,
    )?);

    // |sqrt(7) - 8/3| / sqrt(7) < 0.01, the recorded one-percent remark.
    let approx = ctx.div(&ctx.from_i64(8), &ctx.from_i64(3));
    let rel = ctx.div(&ctx.sub(&s7, &approx).abs(), &s7);
    let rel_ok = ctx.cmp(&rel, &ctx.div(&ctx.from_i64(1), &ctx.from_i64(100))) == Ordering::Less;
    let (rel_f, _) = HpComplex::from_re(rel, ctx).to_f64_lossy();
    rows.push(Row {
        quantity: "sqrt(7) vs 8/3".to_string(),
        reference: "relative error below 0.01".to_string(),
        computed: format!("relative error {}", fmt_f64(rel_f)),
        pass: rel_ok,
    });

    let totals = total_energies(&ss, precision)?;
    let total_refs = vec![
        zero,
        mk(s7.clone(), ctx.zero()),
        mk(ctx.sub(&ctx.zero(), &s7), ctx.zero()),
        mk(half(&s7), p3h.clone()),
        mk(ctx.sub(&ctx.zero(), &half(&s7)), m3h.clone()),
        e_plus,
        mk(ctx.sub(&ctx.zero(), &half(&s7)), p3h),
    ];
    rows.push(Row {
        quantity: "total-energy count".to_string(),
        reference: "7 distinct values".to_string(),
        computed: format!("{} distinct values", totals.len()),
        pass: totals.len() == 7,
    });
    rows.push(value_row("total-energy set", &total_refs, &totals, ctx));

    Ok(ExampleReport {
        title: "Example 3: n=6, m=2, V=q^2".to_string(),
        lift,
        rows,
    })
}

fn example_4(ctx: &HpCtx, precision: u32) -> Result<ExampleReport> {
    let lift = ExponentLift::SymmetricResidue;
    let v = PotentialSpec::new(6, &[0, 0, 1]);
    let (hs, ss) = solve_roots(3, &v, lift, precision)?;

    let zero = HpComplex::zero(ctx);
    // Recorded nonzero eigenvalue: -2 sqrt(3) i = 2 (omega^2 - omega).
    let u = CyclotomicElement::zeta_pow(3, 2).sub(&CyclotomicElement::zeta_pow(3, 1));
    let rec = ctx.embed(&u.scale(&rat_i64(2)));
    let rec_conj = rec.conj(ctx);
    let nonzero_lam = u.clone();

    let mut rows = Vec::new();
    rows.push(value_row(
        "g=omega eigenvalues",
        &[
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            rec.clone(),
            rec.clone(),
        ],
        &expand_values(&ss[1]),
        ctx,
    ));

    for ints in [
        [0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 0],
        [-1, 0, 0, 1, 0, 0],
        [0, -1, 0, 0, 1, 0],
    ] {
        rows.push(vector_row(
            &format!(
                "g=omega zero mode ({})",
                ints.iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            &hs[1],
            int_vector(3, &ints),
            &CyclotomicElement::zero(3),
            "eigenvalue 0",
            ctx,
        )?);
    }

    for ints in [[-1, 0, 1, -1, 0, 1], [-1, 1, 0, -1, 1, 0]] {
        let quantity = format!(
            "g=omega eigenvector ({})",
            ints.iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        // Direction check only: the recorded eigenvalue pairing is covered
        // (and contradicted) by the eigenvalue rows above.
        let got = exact_eigenvector(&hs[1], int_vector(3, &ints))?;
        let (computed, pass) = match &got {
            None => ("not an eigenvector".to_string(), false),
            Some(l) => (
                format!("eigenvector, eigenvalue {}", fmt_complex(&ctx.embed(l))),
                l.sub(&nonzero_lam).is_zero() || l.sub(&u.scale(&rat_i64(2))).is_zero(),
            ),
        };
        rows.push(Row {
            quantity,
            reference: "eigenvector of the nonzero eigenvalue".to_string(),
            computed,
            pass,
        });
    }

    rows.push(value_row(
        "g=omega^2 eigenvalues",
        &[
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            rec_conj.clone(),
            rec_conj.clone(),
        ],
        &expand_values(&ss[2]),
        ctx,
    ));
    let totals = total_energies(&ss, precision)?;
    rows.push(Row {
        quantity: "total-energy count".to_string(),
        reference: "3 distinct values".to_string(),
        computed: format!("{} distinct values", totals.len()),
        pass: totals.len() == 3,
    });
    rows.push(value_row("total-energy set", &[zero, rec, rec_conj], &totals, ctx));

    Ok(ExampleReport {
        title: "Example 4: n=6, m=3, V=q^2".to_string(),
        lift,
        rows,
    })
}

pub fn cmd_reproduce_examples(out: &Path, precision: u32) -> Result<i32> {
    let ctx = HpCtx::new(precision)?;
    let reports = vec![
        example_1(&ctx, precision)?,
        example_2(&ctx, precision)?,
        example_3(&ctx, precision)?,
        example_4(&ctx, precision)?,
    ];

    let mut md = String::new();
    md.push_str("# Reference example reproduction\n\n");
    md.push_str(&format!(
        "Eigenvalues are compared at 1e-12 relative tolerance ({precision}-digit \
         arithmetic); eigenvectors, characteristic polynomials, and the \
         step-Lagrangian table are checked exactly over the field. Reference \
         cells quote the recorded values.\n\n"
    ));
    for r in &reports {
        md.push_str(&format!("## {}\n\n", r.title));
        md.push_str(&format!("Exponent lift: {}.\n\n", r.lift.label()));
        md.push_str("| quantity | reference | computed | pass |\n");
        md.push_str("|----------|-----------|----------|------|\n");
        for row in &r.rows {
            md.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                row.quantity,
                row.reference,
                row.computed,
                if row.pass { "yes" } else { "NO" }
            ));
        }
        md.push_str(&format!(
            "\nResult: {} ({}/{} rows)\n\n",
            if r.all_pass() { "PASS" } else { "FAIL" },
            r.passed(),
            r.rows.len()
        ));
    }

    md.push_str("## Notes on the two known reference discrepancies\n\n");
    md.push_str(
        "- Example 2: the recorded eigenvector (1, 0, 1) is not an eigenvector of \
         the computed operator. Every computed eigenvector of -(sqrt(3)/2)i has \
         components summing to zero; (1, 0, 1) does not, while (1, 0, -1) does \
         and lies in the computed eigenspace. The remaining recorded quantities \
         for this configuration all reproduce.\n",
    );
    md.push_str(
        "- Example 4: both recorded nonzero-mode vectors are exact eigenvectors \
         of the computed operator, but with eigenvalue -sqrt(3)i, half the \
         recorded -2 sqrt(3)i. The conjugate and total-energy rows inherit the \
         same factor-of-two mismatch; the zero modes and eigenvector directions \
         all reproduce.\n",
    );

    let path = write_text(out, "examples_report.md", &md)?;

    let mut all_pass = true;
    for (i, r) in reports.iter().enumerate() {
        if r.all_pass() {
            println!("example {}: PASS ({}/{} rows)", i + 1, r.passed(), r.rows.len());
        } else {
            all_pass = false;
            println!(
                "example {}: FAIL ({}/{} rows) failing: {}",
                i + 1,
                r.passed(),
                r.rows.len(),
                r.failing().join("; ")
            );
        }
    }
    println!("report: {}", path.display());
    Ok(if all_pass { 0 } else { 2 })
}
