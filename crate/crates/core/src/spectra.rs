//! Stationary states of Hamiltonian matrices: exact characteristic
//! polynomials over Q(zeta_N), exact zero eigenspaces, high-precision numeric
//! eigenpairs for the nonzero block, and Galois-summed total energies.
//!
//! The exact layer stops at the characteristic polynomial; its roots
//! generally live outside every cyclotomic field (they bring in surds), so
//! eigen-decomposition is numeric at a configurable digit count.

use crate::cyclotomic::CyclotomicElement;
use crate::error::{Error, Result};
use crate::hp::{HpComplex, HpCtx};
use crate::quantize::{ExponentLift, HamiltonianMatrix};
use crate::rational::rat;
use astro_float::BigFloat;
use num_integer::Integer;
use serde::Serialize;
use serde_json::json;

/// Monic characteristic polynomial, coefficients ascending (constant first).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharPoly {
    pub n: u64,
    coeffs: Vec<CyclotomicElement>,
}

impl CharPoly {
    pub fn coeffs(&self) -> &[CyclotomicElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &CyclotomicElement {
        &self.coeffs[k]
    }

    pub fn conductor(&self) -> u64 {
        self.coeffs.last().map_or(1, |c| c.conductor())
    }

    /// Multiplicity of the root 0: number of leading zero coefficients.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("a monic polynomial has a nonzero coefficient")
    }

    pub fn eval(&self, x: &CyclotomicElement) -> CyclotomicElement {
        let mut acc = CyclotomicElement::zero(self.conductor());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }
}

fn mat_entry(h: &HamiltonianMatrix, r: usize, c: usize) -> &CyclotomicElement {
    h.entry(r as u64 + 1, c as u64 + 1)
}

/// det(lambda I - H) by the Faddeev-LeVerrier recurrence; every division is
/// by an integer, which is exact in characteristic zero.
pub fn char_poly(h: &HamiltonianMatrix) -> CharPoly {
    let n = h.n as usize;
    let nc = h.conductor;
    let zero = CyclotomicElement::zero(nc);
    let one = CyclotomicElement::one(nc);

    let mut coeffs = vec![zero.clone(); n + 1];
    coeffs[n] = one.clone();

    // m holds M_k; starts as the identity (k = 1).
    let mut m: Vec<Vec<CyclotomicElement>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { one.clone() } else { zero.clone() })
                .collect()
        })
        .collect();

    for k in 1..=n {
        // am = H * M_k
        let mut am = vec![vec![zero.clone(); n]; n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = zero.clone();
                for t in 0..n {
                    acc = acc.add(&mat_entry(h, r, t).mul(&m[t][c]));
                }
                am[r][c] = acc;
            }
        }
        let mut tr = zero.clone();
        for (r, row) in am.iter().enumerate() {
            tr = tr.add(&row[r]);
        }
        let c_nk = tr.scale(&rat(-1, k as i64));
        coeffs[n - k] = c_nk.clone();
        if k < n {
            for (r, row) in am.iter_mut().enumerate() {
                row[r] = row[r].add(&c_nk);
            }
            m = am;
        }
    }

    CharPoly {
        n: h.n,
        coeffs,
    }
}

/// Rewrites p(E) as a monic polynomial in lambda via E = i*lambda: the
/// coefficient of lambda^k picks up a factor i^(k-n). The conductor grows to
/// lcm(N, 4) to host i.
pub fn char_poly_in_lambda(cp: &CharPoly) -> CharPoly {
    let nc = cp.conductor().lcm(&4);
    let i = CyclotomicElement::zeta_pow(nc, (nc / 4) as i64);
    let n = cp.coeffs.len() - 1;
    let coeffs = cp
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let e = (k as i64 - n as i64).rem_euclid(4);
            c.promote(nc).mul(&i.pow(e).expect("unit power"))
        })
        .collect();
    CharPoly { n: cp.n, coeffs }
}

// Dense polynomial helpers over the cyclotomic field, ascending coefficients.

fn cpoly_trim(mut v: Vec<CyclotomicElement>) -> Vec<CyclotomicElement> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn cpoly_derivative(p: &[CyclotomicElement]) -> Vec<CyclotomicElement> {
    let mut out = Vec::with_capacity(p.len().saturating_sub(1));
    for (k, c) in p.iter().enumerate().skip(1) {
        out.push(c.scale(&rat(k as i64, 1)));
    }
    cpoly_trim(out)
}

fn cpoly_divrem(
    num: &[CyclotomicElement],
    den: &[CyclotomicElement],
) -> Result<(Vec<CyclotomicElement>, Vec<CyclotomicElement>)> {
    let den = cpoly_trim(den.to_vec());
    let mut rem = cpoly_trim(num.to_vec());
    let dd = den.len() - 1;
    let lead_inv = den[dd].inv()?;
    let mut quot = vec![CyclotomicElement::zero(1); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap().mul(&lead_inv);
        quot[k] = c.clone();
        for j in 0..=dd {
            rem[k + j] = rem[k + j].sub(&c.mul(&den[j]));
        }
        rem = cpoly_trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    Ok((cpoly_trim(quot), rem))
}

/// Monic gcd by the Euclidean algorithm; exact over the field.
fn cpoly_gcd(
    a: &[CyclotomicElement],
    b: &[CyclotomicElement],
) -> Result<Vec<CyclotomicElement>> {
    let mut r0 = cpoly_trim(a.to_vec());
    let mut r1 = cpoly_trim(b.to_vec());
    while !r1.is_empty() {
        let (_, rem) = cpoly_divrem(&r0, &r1)?;
        r0 = r1;
        r1 = rem;
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.inv()?;
        r0 = r0.into_iter().map(|c| c.mul(&inv)).collect();
    }
    Ok(r0)
}

/// Number of distinct roots of p: deg p - deg gcd(p, p').
pub fn distinct_root_count(p: &[CyclotomicElement]) -> Result<usize> {
    let p = cpoly_trim(p.to_vec());
    if p.len() <= 1 {
        return Ok(0);
    }
    let g = cpoly_gcd(&p, &cpoly_derivative(&p))?;
    Ok((p.len() - 1) - (g.len() - 1))
}

/// Exact rank of H over Q(zeta_N).
pub fn exact_rank(h: &HamiltonianMatrix) -> usize {
    let (rank, _, _) = rref(h);
    rank
}

/// Basis of the exact null space of H, each vector normalized so its last
/// nonzero entry is 1.
pub fn exact_kernel(h: &HamiltonianMatrix) -> Vec<Vec<CyclotomicElement>> {
    let n = h.n as usize;
    let (_, rows, pivot_cols) = rref(h);
    let one = CyclotomicElement::one(h.conductor);
    let zero = CyclotomicElement::zero(h.conductor);
    let mut basis = Vec::new();
    for f in 0..n {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![zero.clone(); n];
        v[f] = one.clone();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = rows[r][f].neg();
        }
        basis.push(normalize_exact(v));
    }
    basis
}

fn rref(h: &HamiltonianMatrix) -> (usize, Vec<Vec<CyclotomicElement>>, Vec<usize>) {
    let n = h.n as usize;
    let mut rows: Vec<Vec<CyclotomicElement>> = (0..n)
        .map(|r| (0..n).map(|c| mat_entry(h, r, c).clone()).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for c in col..n {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for r in 0..n {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..n {
                rows[r][c] = rows[r][c].sub(&factor.mul(&rows[rank][c]));
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == n {
            break;
        }
    }
    (rank, rows, pivot_cols)
}

fn normalize_exact(mut v: Vec<CyclotomicElement>) -> Vec<CyclotomicElement> {
    let last = v.iter().rposition(|c| !c.is_zero());
    if let Some(j) = last {
        let inv = v[j].inv().expect("nonzero entry");
        for c in v.iter_mut() {
            *c = c.mul(&inv);
        }
    }
    v
}

/// One eigenvalue with its algebraic multiplicity and an eigenvector basis
/// (geometric dimension), each vector scaled so the last significant entry
/// is exactly 1.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: HpComplex,
    pub multiplicity: usize,
    pub vectors: Vec<Vec<HpComplex>>,
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    pub g: CyclotomicElement,
    pub lift: ExponentLift,
    pub charpoly: CharPoly,
    pub eigenpairs: Vec<EigenPair>,
    pub precision: u32,
}

impl Spectrum {
    pub fn multiplicity_total(&self) -> usize {
        self.eigenpairs.iter().map(|p| p.multiplicity).sum()
    }

    /// Distinct eigenvalues in sorted order.
    pub fn values(&self) -> Vec<HpComplex> {
        self.eigenpairs.iter().map(|p| p.value.clone()).collect()
    }

    pub fn to_json(&self, ctx: &HpCtx) -> serde_json::Value {
        json!({
            "g": self.g,
            "lift_convention": self.lift.label(),
            "charpoly": self.charpoly.coeffs(),
            "eigen": self.eigenpairs.iter().map(|p| json!({
                "value": p.value.to_pair_strings(ctx),
                "mult": p.multiplicity,
                "vectors": p.vectors.iter().map(|v| {
                    v.iter().map(|z| z.to_pair_strings(ctx)).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "precision": self.precision,
        })
    }
}

fn embed_matrix(h: &HamiltonianMatrix, ctx: &HpCtx) -> Vec<Vec<HpComplex>> {
    let n = h.n as usize;
    (0..n)
        .map(|r| (0..n).map(|c| ctx.embed(mat_entry(h, r, c))).collect())
        .collect()
}

fn inf_norm(m: &[Vec<HpComplex>], ctx: &HpCtx) -> BigFloat {
    let mut best = ctx.zero();
    for row in m {
        let mut sum = ctx.zero();
        for z in row {
            sum = ctx.add(&sum, &z.abs(ctx));
        }
        if ctx.cmp(&sum, &best) == std::cmp::Ordering::Greater {
            best = sum;
        }
    }
    best
}

fn bf_max(a: BigFloat, b: BigFloat, ctx: &HpCtx) -> BigFloat {
    if ctx.cmp(&a, &b) == std::cmp::Ordering::Less {
        b
    } else {
        a
    }
}

/// Lexicographic (Re, Im) order that treats components within `tol` as tied,
/// so numeric noise around exact values cannot flip the sort.
fn cmp_with_tol(
    a: &HpComplex,
    b: &HpComplex,
    tol: &BigFloat,
    ctx: &HpCtx,
) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    for (x, y) in [(&a.re, &b.re), (&a.im, &b.im)] {
        let d = ctx.sub(x, y);
        if ctx.cmp(&d.abs(), tol) == Ordering::Greater {
            return ctx.cmp(x, y);
        }
    }
    Ordering::Equal
}

fn poly_eval_hp(coeffs: &[HpComplex], z: &HpComplex, ctx: &HpCtx) -> HpComplex {
    let mut acc = HpComplex::zero(ctx);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, ctx).add(c, ctx);
    }
    acc
}

/// All roots of a polynomial of degree >= 1 by the Aberth-Ehrlich
/// simultaneous iteration. Initial points sit on a slightly staggered circle
/// of the Cauchy radius, so the run is deterministic.
pub fn aberth_roots(coeffs: &[HpComplex], ctx: &HpCtx) -> Result<Vec<HpComplex>> {
    let deg = coeffs.len() - 1;
    assert!(deg >= 1, "degree must be positive");
    let lead_inv = HpComplex::one(ctx).div(&coeffs[deg], ctx);
    let p: Vec<HpComplex> = coeffs.iter().map(|c| c.mul(&lead_inv, ctx)).collect();
    let dp: Vec<HpComplex> = (1..=deg)
        .map(|k| p[k].scale(&ctx.from_i64(k as i64), ctx))
        .collect();

    // Cauchy bound: all roots lie within 1 + max |a_k|.
    let mut radius = ctx.from_i64(1);
    for c in p.iter().take(deg) {
        radius = bf_max(radius, c.abs(ctx), ctx);
    }
    radius = ctx.add(&radius, &ctx.from_i64(1));

    let mut z: Vec<HpComplex> = (0..deg)
        .map(|j| {
            // angle (4j+1)/(4 deg) of a turn, radius staggered per index
            let dir = ctx.root_of_unity(4 * deg as u64, (4 * j + 1) as i64);
            let stretch = ctx.add(
                &ctx.from_i64(1),
                &ctx.div(&ctx.from_i64(j as i64), &ctx.from_i64(8 * deg as i64)),
            );
            dir.scale(&ctx.mul(&radius, &stretch), ctx)
        })
        .collect();

    // Simple roots reach the tight threshold quadratically. Multiple roots
    // stall at corrections around the noise floor 10^(-working digits / mult);
    // that floor sits below the loose threshold, and once corrections stop
    // shrinking there the cluster is as tight as the precision allows.
    let stop_tight = ctx.pow10_neg(ctx.digits() + 8);
    let stop_loose = ctx.pow10_neg(ctx.digits() / 2 + 4);
    let mut prev_rel: Option<BigFloat> = None;
    let max_iter = 2000usize;
    for _ in 0..max_iter {
        let mut max_rel = ctx.zero();
        for j in 0..deg {
            let pj = poly_eval_hp(&p, &z[j], ctx);
            if pj.is_zero(ctx) {
                continue;
            }
            let dpj = poly_eval_hp(&dp, &z[j], ctx);
            let ratio = if dpj.is_zero(ctx) {
                // flat spot: fall back to a plain value step to move off it
                pj.clone()
            } else {
                pj.div(&dpj, ctx)
            };
            let mut s = HpComplex::zero(ctx);
            for (k, zk) in z.iter().enumerate() {
                if k == j {
                    continue;
                }
                let d = z[j].sub(zk, ctx);
                if d.is_zero(ctx) {
                    continue;
                }
                s = s.add(&HpComplex::one(ctx).div(&d, ctx), ctx);
            }
            let denom = HpComplex::one(ctx).sub(&ratio.mul(&s, ctx), ctx);
            let w = if denom.is_zero(ctx) {
                ratio.clone()
            } else {
                ratio.div(&denom, ctx)
            };
            z[j] = z[j].sub(&w, ctx);
            let scale = bf_max(ctx.from_i64(1), z[j].abs(ctx), ctx);
            let rel = ctx.div(&w.abs(ctx), &scale);
            max_rel = bf_max(max_rel, rel, ctx);
        }
        if ctx.cmp(&max_rel, &stop_tight) != std::cmp::Ordering::Greater {
            return Ok(z);
        }
        if ctx.cmp(&max_rel, &stop_loose) != std::cmp::Ordering::Greater {
            if let Some(prev) = &prev_rel {
                if ctx.cmp(&max_rel, prev) != std::cmp::Ordering::Less {
                    return Ok(z);
                }
            }
        }
        prev_rel = Some(max_rel);
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
    })
}

/// Groups points lying within `tol` of each other (transitively) and returns
/// each group's mean with its size, sorted by (Re, Im).
pub fn cluster_points(
    points: &[HpComplex],
    tol: &BigFloat,
    ctx: &HpCtx,
) -> Vec<(HpComplex, usize)> {
    let k = points.len();
    let mut comp: Vec<usize> = (0..k).collect();
    fn find(comp: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while comp[r] != r {
            r = comp[r];
        }
        let mut c = i;
        while comp[c] != r {
            let next = comp[c];
            comp[c] = r;
            c = next;
        }
        r
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let d = points[i].sub(&points[j], ctx).abs(ctx);
            if ctx.cmp(&d, tol) != std::cmp::Ordering::Greater {
                let (ri, rj) = (find(&mut comp, i), find(&mut comp, j));
                if ri != rj {
                    comp[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..k {
        let r = find(&mut comp, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<(HpComplex, usize)> = groups
        .values()
        .map(|idxs| {
            let mut sum = HpComplex::zero(ctx);
            for &i in idxs {
                sum = sum.add(&points[i], ctx);
            }
            let inv = ctx.div(&ctx.from_i64(1), &ctx.from_i64(idxs.len() as i64));
            (sum.scale(&inv, ctx), idxs.len())
        })
        .collect();
    out.sort_by(|a, b| cmp_with_tol(&a.0, &b.0, tol, ctx));
    out
}

/// Null-space basis of a (numerically) rank-deficient complex matrix: RREF
/// with partial pivoting, pivots below `eps` treated as zero. Vectors are
/// normalized so the last entry above `eps` equals 1.
fn numeric_null_space(a: &[Vec<HpComplex>], eps: &BigFloat, ctx: &HpCtx) -> Vec<Vec<HpComplex>> {
    let n = a.len();
    let mut rows: Vec<Vec<HpComplex>> = a.to_vec();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let mut best = rank;
        let mut best_abs = ctx.zero();
        for (r, row) in rows.iter().enumerate().skip(rank) {
            let v = row[col].abs(ctx);
            if ctx.cmp(&v, &best_abs) == std::cmp::Ordering::Greater {
                best_abs = v;
                best = r;
            }
        }
        if ctx.cmp(&best_abs, eps) != std::cmp::Ordering::Greater {
            continue;
        }
        rows.swap(rank, best);
        let inv = HpComplex::one(ctx).div(&rows[rank][col], ctx);
        for c in col..n {
            rows[rank][c] = rows[rank][c].mul(&inv, ctx);
        }
        for r in 0..n {
            if r == rank {
                continue;
            }
            let factor = rows[r][col].clone();
            if factor.is_zero(ctx) {
                continue;
            }
            for c in col..n {
                let t = factor.mul(&rows[rank][c], ctx);
                rows[r][c] = rows[r][c].sub(&t, ctx);
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == n {
            break;
        }
    }
    let mut basis = Vec::new();
    for f in 0..n {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![HpComplex::zero(ctx); n];
        v[f] = HpComplex::one(ctx);
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = rows[r][f].neg(ctx);
        }
        // scale so the last entry above eps becomes 1
        let last = (0..n)
            .rev()
            .find(|&i| ctx.cmp(&v[i].abs(ctx), eps) == std::cmp::Ordering::Greater)
            .unwrap_or(f);
        let inv = HpComplex::one(ctx).div(&v[last], ctx);
        let v = v.iter().map(|e| e.mul(&inv, ctx)).collect();
        basis.push(v);
    }
    basis
}

fn residual_ok(
    h_emb: &[Vec<HpComplex>],
    value: &HpComplex,
    vector: &[HpComplex],
    bound: &BigFloat,
    ctx: &HpCtx,
) -> bool {
    let n = h_emb.len();
    let mut worst = ctx.zero();
    for r in 0..n {
        let mut acc = HpComplex::zero(ctx);
        for c in 0..n {
            acc = acc.add(&h_emb[r][c].mul(&vector[c], ctx), ctx);
        }
        let diff = acc.sub(&value.mul(&vector[r], ctx), ctx);
        worst = bf_max(worst, diff.abs(ctx), ctx);
    }
    ctx.cmp(&worst, bound) != std::cmp::Ordering::Greater
}

/// Full eigen-decomposition: the zero eigenspace exactly, nonzero roots of
/// the characteristic polynomial numerically, clustered into multiplicities
/// at 10^(-digits/2) and cross-checked against the exact distinct-root count.
pub fn eigen_solve(h: &HamiltonianMatrix, precision: u32) -> Result<Spectrum> {
    let ctx = HpCtx::new(precision)?;
    let n = h.n as usize;
    let cp = char_poly(h);
    let zero_mult = cp.zero_root_multiplicity();

    let h_emb = embed_matrix(h, &ctx);
    let norm = inf_norm(&h_emb, &ctx);
    let cluster_tol = ctx.sqrt(&ctx.pow10_neg(precision));
    let rank_eps = ctx.mul(&cluster_tol, &bf_max(ctx.from_i64(1), norm.clone(), &ctx));

    let mut pairs: Vec<EigenPair> = Vec::new();
    if zero_mult > 0 {
        let kernel = exact_kernel(h);
        let vectors: Vec<Vec<HpComplex>> = kernel
            .iter()
            .map(|v| v.iter().map(|c| ctx.embed(c)).collect())
            .collect();
        pairs.push(EigenPair {
            value: HpComplex::zero(&ctx),
            multiplicity: zero_mult,
            vectors,
        });
    }

    if n > zero_mult {
        let deflated: Vec<CyclotomicElement> = cp.coeffs()[zero_mult..].to_vec();
        let emb: Vec<HpComplex> = deflated.iter().map(|c| ctx.embed(c)).collect();
        let roots = aberth_roots(&emb, &ctx)?;
        let clusters = cluster_points(&roots, &cluster_tol, &ctx);
        let expected = distinct_root_count(&deflated)?;
        if clusters.len() != expected {
            return Err(Error::NonConvergence { iterations: 0 });
        }
        for (value, size) in clusters {
            let mut shifted = h_emb.clone();
            for (r, row) in shifted.iter_mut().enumerate() {
                row[r] = row[r].sub(&value, &ctx);
            }
            let vectors = numeric_null_space(&shifted, &rank_eps, &ctx);
            if vectors.is_empty() {
                return Err(Error::NonConvergence { iterations: 0 });
            }
            pairs.push(EigenPair {
                value,
                multiplicity: size,
                vectors,
            });
        }
    }

    let bound = ctx.mul(&ctx.pow10_neg(precision - 4), &bf_max(ctx.from_i64(1), norm, &ctx));
    for pair in &pairs {
        for v in &pair.vectors {
            if !residual_ok(&h_emb, &pair.value, v, &bound, &ctx) {
                return Err(Error::NonConvergence { iterations: 0 });
            }
        }
    }

    pairs.sort_by(|a, b| cmp_with_tol(&a.value, &b.value, &cluster_tol, &ctx));
    debug_assert_eq!(
        pairs.iter().map(|p| p.multiplicity).sum::<usize>(),
        n,
        "algebraic multiplicities partition the dimension"
    );
    Ok(Spectrum {
        g: h.g.clone(),
        lift: h.lift,
        charpoly: cp,
        eigenpairs: pairs,
        precision,
    })
}

/// Spectrum of H(g^-1) from the spectrum of H(g): complex-conjugate the base,
/// the polynomial, the eigenvalues, and the eigenvectors.
pub fn conjugate_spectrum(s: &Spectrum) -> Result<Spectrum> {
    let ctx = HpCtx::new(s.precision)?;
    let charpoly = CharPoly {
        n: s.charpoly.n,
        coeffs: s.charpoly.coeffs().iter().map(|c| c.conj()).collect(),
    };
    let mut eigenpairs: Vec<EigenPair> = s
        .eigenpairs
        .iter()
        .map(|p| EigenPair {
            value: p.value.conj(&ctx),
            multiplicity: p.multiplicity,
            vectors: p
                .vectors
                .iter()
                .map(|v| v.iter().map(|z| z.conj(&ctx)).collect())
                .collect(),
        })
        .collect();
    let tol = ctx.sqrt(&ctx.pow10_neg(s.precision));
    eigenpairs.sort_by(|a, b| cmp_with_tol(&a.value, &b.value, &tol, &ctx));
    Ok(Spectrum {
        g: s.g.conj(),
        lift: s.lift,
        charpoly,
        eigenpairs,
        precision: s.precision,
    })
}

/// All distinct sums E_1 + ... + E_m with E_j an eigenvalue of the j-th
/// spectrum, deduplicated at the cluster tolerance and sorted by (Re, Im).
pub fn total_energies(spectra: &[Spectrum], precision: u32) -> Result<Vec<HpComplex>> {
    let ctx = HpCtx::new(precision)?;
    let mut sums = vec![HpComplex::zero(&ctx)];
    for s in spectra {
        let values = s.values();
        let mut next = Vec::with_capacity(sums.len() * values.len());
        for base in &sums {
            for v in &values {
                next.push(base.add(v, &ctx));
            }
        }
        sums = next;
    }
    let tol = ctx.sqrt(&ctx.pow10_neg(precision));
    let clustered = cluster_points(&sums, &tol, &ctx);
    // Components below the dedup resolution are indistinguishable from zero.
    let snap = |x: BigFloat| {
        if ctx.cmp(&x.abs(), &tol) == std::cmp::Ordering::Greater {
            x
        } else {
            ctx.zero()
        }
    };
    Ok(clustered
        .into_iter()
        .map(|(z, _)| HpComplex {
            re: snap(z.re),
            im: snap(z.im),
        })
        .collect())
}
