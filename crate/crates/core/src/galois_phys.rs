//! Wave families: one component per adjoined root, evolved together.
//!
//! A family holds m wave functions, the i-th driven by the base alpha_i.
//! Field automorphisms permute the components, so elementary symmetric
//! combinations of them are rational whenever the initial data was, and the
//! product functional sum_q prod_i psi_i(q) is a conserved "norm" under the
//! potential-only rule whenever the root product is 1.

use astro_float::BigFloat;
use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::classical::PotentialSpec;
use crate::cyclotomic::{CyclotomicElement, GaloisAutomorphism, RootSet};
use crate::error::{Error, Result};
use crate::hp::HpCtx;
use crate::quantize::{propagate_backward, propagate_forward, ExponentLift, WaveFunction};

/// One time step: either the full path-integral kernel or the phase rule
/// psi_g(q, t+1) = g^{-V(q)} psi_g(q, t) that drops the kinetic convolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EvolutionMode {
    #[default]
    Full,
    PotentialOnly,
}

impl EvolutionMode {
    pub fn label(self) -> &'static str {
        match self {
            EvolutionMode::Full => "full",
            EvolutionMode::PotentialOnly => "potential_only",
        }
    }
}

/// m components over a fixed root set, all sharing n and a common conductor.
/// Component order matches the root order of the set.
#[derive(Debug, Clone)]
pub struct WaveFamily {
    rootset: RootSet,
    components: Vec<WaveFunction>,
    time: i64,
    rational_init: bool,
}

impl PartialEq for WaveFamily {
    fn eq(&self, other: &Self) -> bool {
        self.rootset.m == other.rootset.m
            && self.rootset.sign == other.rootset.sign
            && self.time == other.time
            && self.components == other.components
    }
}

impl Serialize for WaveFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WaveFamily", 5)?;
        st.serialize_field("m", &self.rootset.m)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("sign", &self.rootset.sign)?;
        st.serialize_field("time", &self.time)?;
        st.serialize_field("components", &self.components)?;
        st.end()
    }
}

impl WaveFamily {
    /// Components are promoted to one conductor that also contains the roots.
    pub fn new(rootset: RootSet, components: Vec<WaveFunction>, time: i64) -> Result<Self> {
        if components.len() != rootset.m as usize {
            return Err(Error::BadLength {
                got: components.len(),
                expected: rootset.m as usize,
            });
        }
        let n = components[0].n;
        for c in &components {
            if c.n != n {
                return Err(Error::BadLength {
                    got: c.n as usize,
                    expected: n as usize,
                });
            }
        }
        let target = components
            .iter()
            .map(|c| c.conductor())
            .fold(rootset.conductor, |a, b| a.lcm(&b));
        let components = components
            .into_iter()
            .map(|c| {
                let amps = c.amplitudes().iter().map(|a| a.promote(target)).collect();
                WaveFunction::new(n, amps).expect("length preserved")
            })
            .collect::<Vec<_>>();
        let rational_init = components
            .iter()
            .all(|c| c.amplitudes().iter().all(|a| a.to_rational().is_some()));
        Ok(WaveFamily {
            rootset,
            components,
            time,
            rational_init,
        })
    }

    /// Every component starts from the same initial data, at time 0.
    pub fn from_common_initial(rootset: RootSet, psi: WaveFunction) -> Self {
        let m = rootset.m as usize;
        WaveFamily::new(rootset, vec![psi; m], 0).expect("component count matches by construction")
    }

    /// Delta initial data at q0 (1-based) for all components.
    pub fn delta(rootset: RootSet, n: u64, q0: u64) -> Self {
        WaveFamily::from_common_initial(rootset, WaveFunction::delta(n, q0))
    }

    pub fn rootset(&self) -> &RootSet {
        &self.rootset
    }

    pub fn m(&self) -> u64 {
        self.rootset.m
    }

    pub fn n(&self) -> u64 {
        self.components[0].n
    }

    pub fn time(&self) -> i64 {
        self.time
    }

    pub fn conductor(&self) -> u64 {
        self.components[0].conductor()
    }

    pub fn components(&self) -> &[WaveFunction] {
        &self.components
    }

    /// Component evolved with base roots()[i].
    pub fn component(&self, i: usize) -> &WaveFunction {
        &self.components[i]
    }

    /// Whether the family was built from all-rational amplitudes.  Evolution
    /// and transforms preserve the flag; it gates the rationality claims on
    /// the symmetric invariants.
    pub fn rational_init(&self) -> bool {
        self.rational_init
    }
}

/// Advance (or, for negative steps, rewind) every component with its own base.
pub fn evolve_family(
    family: &WaveFamily,
    v: &PotentialSpec,
    steps: i64,
    mode: EvolutionMode,
    lift: ExponentLift,
) -> Result<WaveFamily> {
    if v.n != family.n() {
        return Err(Error::BadLength {
            got: v.n as usize,
            expected: family.n() as usize,
        });
    }
    let forward = steps >= 0;
    let mut components = family.components.clone();
    for _ in 0..steps.unsigned_abs() {
        for (i, comp) in components.iter_mut().enumerate() {
            let alpha = &family.rootset.roots[i];
            *comp = match mode {
                EvolutionMode::Full if forward => propagate_forward(comp, alpha, v, lift)?,
                EvolutionMode::Full => propagate_backward(comp, alpha, v, lift)?,
                EvolutionMode::PotentialOnly => potential_step(comp, alpha, v, lift, forward)?,
            };
        }
    }
    Ok(WaveFamily {
        rootset: family.rootset.clone(),
        components,
        time: family.time + steps,
        rational_init: family.rational_init,
    })
}

/// psi(q) -> g^{-V(q)} psi(q), exponent lifted per the chosen convention.
fn potential_step(
    psi: &WaveFunction,
    g: &CyclotomicElement,
    v: &PotentialSpec,
    lift: ExponentLift,
    forward: bool,
) -> Result<WaveFunction> {
    let n = v.n;
    let mut out = Vec::with_capacity(n as usize);
    for q in 1..=n {
        let e = lift.apply(v.eval_int(q), n);
        let e = if forward { -e } else { e };
        out.push(g.pow(e)?.mul(psi.amplitude(q)));
    }
    WaveFunction::new(n, out)
}

/// S_k(q): the k-th elementary symmetric polynomial of the m component
/// amplitudes at q.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricInvariant {
    pub k: usize,
    pub values: Vec<CyclotomicElement>,
}

impl SymmetricInvariant {
    pub fn is_rational(&self) -> bool {
        self.values.iter().all(|v| v.to_rational().is_some())
    }
}

/// All invariants S_1 .. S_m, each as a vector over q.
pub fn symmetric_invariants(family: &WaveFamily) -> Vec<SymmetricInvariant> {
    let m = family.m() as usize;
    let n = family.n();
    let conductor = family.conductor();
    let mut per_k: Vec<Vec<CyclotomicElement>> = vec![Vec::with_capacity(n as usize); m];
    for q in 1..=n {
        let mut e = vec![CyclotomicElement::zero(conductor); m + 1];
        e[0] = CyclotomicElement::one(conductor);
        for comp in &family.components {
            let a = comp.amplitude(q);
            for k in (1..=m).rev() {
                let next = e[k].add(&e[k - 1].mul(a));
                e[k] = next;
            }
        }
        for k in 1..=m {
            per_k[k - 1].push(e[k].clone());
        }
    }
    per_k
        .into_iter()
        .enumerate()
        .map(|(i, values)| SymmetricInvariant { k: i + 1, values })
        .collect()
}

/// Apply an automorphism to every amplitude and reindex the components by the
/// induced root permutation, so the result is again ordered by the root list.
pub fn galois_transform(family: &WaveFamily, sigma: &GaloisAutomorphism) -> WaveFamily {
    let perm = family.rootset.permutation_under(sigma);
    let n = family.n();
    let mut slots: Vec<Option<WaveFunction>> = vec![None; family.m() as usize];
    for (i, comp) in family.components.iter().enumerate() {
        let amps = comp.amplitudes().iter().map(|a| sigma.apply(a)).collect();
        slots[perm[i]] = Some(WaveFunction::new(n, amps).expect("length preserved"));
    }
    let components = slots
        .into_iter()
        .map(|c| c.expect("automorphisms permute the root set bijectively"))
        .collect();
    WaveFamily {
        rootset: family.rootset.clone(),
        components,
        time: family.time,
        rational_init: family.rational_init,
    }
}

/// sum_q prod_i psi_i(q), exactly.
pub fn normalization_functional(family: &WaveFamily) -> CyclotomicElement {
    let conductor = family.conductor();
    let mut acc = CyclotomicElement::zero(conductor);
    for q in 1..=family.n() {
        let mut prod = CyclotomicElement::one(conductor);
        for comp in &family.components {
            prod = prod.mul(comp.amplitude(q));
        }
        acc = acc.add(&prod);
    }
    acc
}

/// Relabel components by root inversion and negate the time stamp:
/// the reversed component for base alpha is the original one for alpha^-1.
pub fn time_reverse(family: &WaveFamily) -> WaveFamily {
    let m = family.m() as usize;
    let mut slots: Vec<Option<WaveFunction>> = vec![None; m];
    for (j, root) in family.rootset.roots.iter().enumerate() {
        let inv = root.inv().expect("roots of unity are invertible");
        let i = family
            .rootset
            .position(&inv)
            .expect("root sets of X^m -+ 1 are closed under inversion");
        slots[j] = Some(family.components[i].clone());
    }
    let components = slots
        .into_iter()
        .map(|c| c.expect("inversion permutes the root set"))
        .collect();
    WaveFamily {
        rootset: family.rootset.clone(),
        components,
        time: -family.time,
        rational_init: family.rational_init,
    }
}

/// Deviation of psi from the rule psi(q+m) = -psi(q) (m even) or +psi(q)
/// (m odd), indices wrapping mod n.  Diagnostic only.
#[derive(Debug, Clone)]
pub struct PeriodicityReport {
    pub m: u64,
    /// +1 for odd m (periodic), -1 for even m (anti-periodic).
    pub sign: i64,
    pub max_deviation: BigFloat,
    /// True when every deviation is exactly zero in the field.
    pub exact: bool,
}

pub fn check_m_periodicity(psi: &WaveFunction, m: u64, ctx: &HpCtx) -> Result<PeriodicityReport> {
    let n = psi.n;
    if m == 0 || n % m != 0 {
        return Err(Error::DivisibilityViolation { m, n });
    }
    let sign: i64 = if m % 2 == 0 { -1 } else { 1 };
    let mut max_dev = ctx.zero();
    let mut exact = true;
    for q in 1..=n {
        let shifted = psi.amplitude((q - 1 + m) % n + 1);
        let base = psi.amplitude(q);
        let expected = if sign == 1 { base.clone() } else { base.neg() };
        let diff = shifted.sub(&expected);
        if !diff.is_zero() {
            exact = false;
            let dev = ctx.embed(&diff).abs(ctx);
            if ctx.cmp(&dev, &max_dev) == std::cmp::Ordering::Greater {
                max_dev = dev;
            }
        }
    }
    Ok(PeriodicityReport {
        m,
        sign,
        max_deviation: max_dev,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::make_rootset;
    use crate::rational::{rat, rat_i64};

    fn rational_wave(n: u64, values: &[(i64, i64)]) -> WaveFunction {
        let amps = values
            .iter()
            .map(|&(p, q)| CyclotomicElement::from_rational(1, rat(p, q)))
            .collect();
        WaveFunction::new(n, amps).unwrap()
    }

    #[test]
    fn zero_steps_is_identity() {
        let fam = WaveFamily::delta(make_rootset(3), 6, 1);
        let v = PotentialSpec::new(6, &[0, 0, 1]);
        for mode in [EvolutionMode::Full, EvolutionMode::PotentialOnly] {
            let out = evolve_family(&fam, &v, 0, mode, ExponentLift::SymmetricResidue).unwrap();
            assert_eq!(out, fam);
        }
    }

    #[test]
    fn potential_only_step_multiplies_by_base_powers() {
        // n=2, m=2, V=q: V(1)=1, V(2)=2.  Raw exponents keep the 2, the
        // symmetric residue reduces it to 0, and i^-2 = -1 tells them apart.
        let rs = make_rootset(2);
        let ones = rational_wave(2, &[(1, 1), (1, 1)]);
        let fam = WaveFamily::from_common_initial(rs, ones);
        let v = PotentialSpec::new(2, &[0, 1]);
        let i = CyclotomicElement::zeta(4);

        let raw = evolve_family(&fam, &v, 1, EvolutionMode::PotentialOnly, ExponentLift::IntegerAction)
            .unwrap();
        let pos = fam.rootset().position(&i).unwrap();
        assert_eq!(raw.component(pos).amplitude(1), &i.pow(-1).unwrap());
        assert_eq!(raw.component(pos).amplitude(2), &i.pow(-2).unwrap());
        assert_eq!(raw.time(), 1);

        let sym = evolve_family(&fam, &v, 1, EvolutionMode::PotentialOnly, ExponentLift::SymmetricResidue)
            .unwrap();
        assert_eq!(sym.component(pos).amplitude(1), &i.pow(-1).unwrap());
        assert_eq!(sym.component(pos).amplitude(2), &CyclotomicElement::one(4));
    }

    #[test]
    fn full_mode_matches_the_propagators_componentwise() {
        let rs = make_rootset(3);
        let psi = rational_wave(3, &[(1, 1), (2, 1), (-1, 2)]);
        let fam = WaveFamily::from_common_initial(rs.clone(), psi.clone());
        let v = PotentialSpec::new(3, &[0, 0, 1]);
        let lift = ExponentLift::SymmetricResidue;

        let there = evolve_family(&fam, &v, 1, EvolutionMode::Full, lift).unwrap();
        let back = evolve_family(&there, &v, -1, EvolutionMode::Full, lift).unwrap();
        assert_eq!(back.time(), 0);
        // One step out and back is not the identity; it is exactly
        // backward(forward(psi)) for each base.
        assert_ne!(back, fam);
        for (i, alpha) in rs.roots.iter().enumerate() {
            let fwd = propagate_forward(&psi, alpha, &v, lift).unwrap();
            assert_eq!(there.component(i), &fwd);
            let round = propagate_backward(&fwd, alpha, &v, lift).unwrap();
            assert_eq!(back.component(i), &round);
        }
    }

    #[test]
    fn symmetric_invariants_match_hand_formulas() {
        // m=2: S1 = a+b, S2 = ab pointwise.
        let rs = make_rootset(2);
        let a = rational_wave(2, &[(1, 1), (2, 1)]);
        let b = rational_wave(2, &[(3, 1), (5, 1)]);
        let fam = WaveFamily::new(rs, vec![a.clone(), b.clone()], 0).unwrap();
        let s = symmetric_invariants(&fam);
        assert_eq!(s.len(), 2);
        for q in 1..=2 {
            let (aq, bq) = (a.amplitude(q), b.amplitude(q));
            assert_eq!(s[0].values[(q - 1) as usize], aq.add(bq));
            assert_eq!(s[1].values[(q - 1) as usize], aq.mul(bq));
        }

        // m=3 with all components equal: S3 = psi^3.
        let rs3 = make_rootset(3);
        let psi = rational_wave(3, &[(2, 1), (0, 1), (-1, 3)]);
        let fam3 = WaveFamily::from_common_initial(rs3, psi.clone());
        let s3 = symmetric_invariants(&fam3);
        for q in 1..=3 {
            let cube = psi.amplitude(q).pow(3).unwrap();
            assert_eq!(s3[2].values[(q - 1) as usize], cube);
        }
    }

    #[test]
    fn invariants_of_evolved_families_are_rational() {
        let v = PotentialSpec::new(6, &[0, 0, 1]);
        for m in [2u64, 3] {
            let fam = WaveFamily::delta(make_rootset(m), 6, 1);
            assert!(fam.rational_init());
            for mode in [EvolutionMode::Full, EvolutionMode::PotentialOnly] {
                let out =
                    evolve_family(&fam, &v, 2, mode, ExponentLift::SymmetricResidue).unwrap();
                for s in symmetric_invariants(&out) {
                    assert!(s.is_rational(), "S_{} left the rationals", s.k);
                }
            }
        }
    }

    #[test]
    fn galois_action_permutes_components_over_the_roots() {
        let rs = make_rootset(3);
        let c0 = rational_wave(3, &[(7, 1), (0, 1), (0, 1)]);
        let c1 = rational_wave(3, &[(0, 1), (11, 1), (0, 1)]);
        let c2 = rational_wave(3, &[(0, 1), (0, 1), (13, 1)]);
        let fam = WaveFamily::new(rs.clone(), vec![c0.clone(), c1.clone(), c2.clone()], 0).unwrap();

        let id = GaloisAutomorphism::identity(3);
        assert_eq!(galois_transform(&fam, &id), fam);

        // zeta -> zeta^2 swaps the omega and omega^2 components, fixes root 1.
        let sigma = GaloisAutomorphism::new(3, 2).unwrap();
        let out = galois_transform(&fam, &sigma);
        let one = CyclotomicElement::one(3);
        let omega = CyclotomicElement::zeta(3);
        let p1 = rs.position(&one).unwrap();
        let pw = rs.position(&omega).unwrap();
        let pw2 = rs.position(&omega.mul(&omega)).unwrap();
        assert_eq!(out.component(p1), fam.component(p1));
        assert_eq!(out.component(pw), fam.component(pw2));
        assert_eq!(out.component(pw2), fam.component(pw));
    }

    #[test]
    fn galois_transform_fixes_evolved_families() {
        // Equivariance: sigma(psi_alpha) = psi_sigma(alpha) for rational
        // initial data, so the transform maps the family to itself.
        for (n, m) in [(3u64, 3u64), (6, 2)] {
            let v = PotentialSpec::new(n, &[0, 0, 1]);
            let fam = WaveFamily::delta(make_rootset(m), n, 1);
            for steps in [1i64, 2] {
                for lift in [ExponentLift::IntegerAction, ExponentLift::SymmetricResidue] {
                    let out = evolve_family(&fam, &v, steps, EvolutionMode::Full, lift).unwrap();
                    for sigma in GaloisAutomorphism::group(out.rootset().conductor) {
                        assert_eq!(galois_transform(&out, &sigma), out);
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_invariants_are_fixed_under_the_transform() {
        let rs = make_rootset(2);
        let a = rational_wave(2, &[(1, 1), (-2, 3)]);
        let b = rational_wave(2, &[(4, 1), (5, 7)]);
        let fam = WaveFamily::new(rs, vec![a, b], 0).unwrap();
        for sigma in GaloisAutomorphism::group(4) {
            let transformed = galois_transform(&fam, &sigma);
            assert_eq!(symmetric_invariants(&transformed), symmetric_invariants(&fam));
        }
    }

    #[test]
    fn normalization_examples() {
        // All components delta: the product survives only at q0 and is 1.
        let fam = WaveFamily::delta(make_rootset(3), 6, 2);
        assert!(normalization_functional(&fam).is_one());

        // m=2 conjugate pair: the functional is the usual sum of |psi|^2.
        let rs = make_rootset(2);
        let i = CyclotomicElement::zeta(4);
        let psi = WaveFunction::new(
            2,
            vec![i.clone(), CyclotomicElement::one(4).add(&i)],
        )
        .unwrap();
        let conj = WaveFunction::new(2, psi.amplitudes().iter().map(|a| a.conj()).collect()).unwrap();
        let fam2 = WaveFamily::new(rs, vec![psi, conj], 0).unwrap();
        let norm = normalization_functional(&fam2);
        assert_eq!(norm.to_rational(), Some(rat_i64(3)));
    }

    #[test]
    fn potential_only_conserves_the_product_iff_root_product_is_one() {
        let v = PotentialSpec::new(6, &[0, 0, 1]);
        for m in [2u64, 3] {
            let rs = make_rootset(m);
            assert!(rs.product().is_one());
            let psi = rational_wave(6, &[(1, 1), (2, 1), (-1, 1), (1, 2), (0, 1), (3, 1)]);
            let mut fam = WaveFamily::from_common_initial(rs, psi);
            let expected = normalization_functional(&fam);
            for _ in 0..10 {
                fam = evolve_family(
                    &fam,
                    &v,
                    1,
                    EvolutionMode::PotentialOnly,
                    ExponentLift::SymmetricResidue,
                )
                .unwrap();
                assert_eq!(normalization_functional(&fam), expected);
            }
        }

        // A doctored root pair with product omega^2 != 1 drifts immediately.
        let omega = CyclotomicElement::zeta(3);
        let rs = RootSet {
            m: 2,
            sign: crate::cyclotomic::RootSign::Minus,
            conductor: 3,
            roots: vec![omega.clone(), omega],
        };
        assert!(!rs.product().is_one());
        let fam = WaveFamily::delta(rs, 3, 1);
        let before = normalization_functional(&fam);
        let after = evolve_family(
            &fam,
            &PotentialSpec::new(3, &[0, 0, 1]),
            1,
            EvolutionMode::PotentialOnly,
            ExponentLift::SymmetricResidue,
        )
        .unwrap();
        assert_ne!(normalization_functional(&after), before);
    }

    #[test]
    fn time_reverse_swaps_inverse_roots() {
        let rs = make_rootset(2);
        let i = CyclotomicElement::zeta(4);
        let a = rational_wave(2, &[(1, 1), (2, 1)]);
        let b = rational_wave(2, &[(3, 1), (4, 1)]);
        let fam = WaveFamily::new(rs.clone(), vec![a, b], 5).unwrap();
        let rev = time_reverse(&fam);
        assert_eq!(rev.time(), -5);
        let pi = rs.position(&i).unwrap();
        let pmi = rs.position(&i.neg()).unwrap();
        assert_eq!(rev.component(pi), fam.component(pmi));
        assert_eq!(rev.component(pmi), fam.component(pi));
        assert_eq!(time_reverse(&rev), fam);
    }

    #[test]
    fn time_reversal_relabels_evolved_components_by_inversion() {
        let rs = make_rootset(3);
        let v = PotentialSpec::new(3, &[0, 0, 1]);
        let fam = WaveFamily::delta(rs.clone(), 3, 1);
        let evolved = evolve_family(&fam, &v, 2, EvolutionMode::Full, ExponentLift::SymmetricResidue)
            .unwrap();
        let rev = time_reverse(&evolved);
        for (j, root) in rs.roots.iter().enumerate() {
            let i = rs.position(&root.inv().unwrap()).unwrap();
            assert_eq!(rev.component(j), evolved.component(i));
        }
        assert_eq!(rev.time(), -2);
    }

    #[test]
    fn periodicity_report_flags_only_true_deviations() {
        let ctx = HpCtx::new(30).unwrap();

        // Anti-period 2 inside n=4.
        let anti = rational_wave(4, &[(1, 1), (2, 1), (-1, 1), (-2, 1)]);
        let r = check_m_periodicity(&anti, 2, &ctx).unwrap();
        assert_eq!(r.sign, -1);
        assert!(r.exact);
        assert!(ctx.is_zero(&r.max_deviation));

        // Period 3 inside n=6.
        let per = rational_wave(6, &[(-1, 1), (0, 1), (1, 1), (-1, 1), (0, 1), (1, 1)]);
        let r = check_m_periodicity(&per, 3, &ctx).unwrap();
        assert_eq!(r.sign, 1);
        assert!(r.exact);

        // Same length, no 3-periodicity: reported, not failed.
        let bad = rational_wave(6, &[(0, 1), (-1, 1), (0, 1), (0, 1), (1, 1), (0, 1)]);
        let r = check_m_periodicity(&bad, 3, &ctx).unwrap();
        assert!(!r.exact);
        let two = ctx.from_i64(2);
        let err = ctx.sub(&r.max_deviation, &two);
        assert!(ctx.cmp(&err.abs(), &ctx.pow10_neg(20)) == std::cmp::Ordering::Less);

        let e = check_m_periodicity(&bad, 4, &ctx).unwrap_err();
        assert_eq!(e, Error::DivisibilityViolation { m: 4, n: 6 });
    }

    #[test]
    fn root_sets_are_closed_under_inversion() {
        for m in 1..=8u64 {
            let rs = make_rootset(m);
            for root in &rs.roots {
                assert!(rs.position(&root.inv().unwrap()).is_some());
            }
        }
    }

    #[test]
    fn family_snapshots_serialize_with_metadata() {
        let fam = WaveFamily::delta(make_rootset(2), 2, 1);
        let j = serde_json::to_value(&fam).unwrap();
        assert_eq!(j["m"], 2);
        assert_eq!(j["n"], 2);
        assert_eq!(j["sign"], "plus");
        assert_eq!(j["time"], 0);
        assert_eq!(j["components"].as_array().unwrap().len(), 2);
    }
}
