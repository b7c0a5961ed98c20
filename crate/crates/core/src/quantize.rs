//! Path-integral quantization with an exact root-of-unity base g: one-step
//! propagators, the Hamiltonian operator matrix, A-sums, and the quantum
//! potential and mass diagnostics.
//!
//! Positions are indexed q = 1..n here (the matrix convention), unlike the
//! 0-based residues of the classical module. The step Lagrangian
//! (q - q')^2 - V(q) enters as an exponent of g, and g^n = +-1 makes that
//! exponent well defined only mod 2n; `ExponentLift` fixes the remaining
//! sign ambiguity and is recorded in every serialized output.

use crate::classical::PotentialSpec;
use crate::cyclotomic::CyclotomicElement;
use crate::error::{Error, Result};
use crate::rational::rat;
use serde::{Deserialize, Serialize};

/// How a residue-valued exponent of g is lifted to an actual integer.
///
/// `IntegerAction` keeps the raw integer value of the action, never reducing
/// mod n. `SymmetricResidue` reduces mod n into (-n/2, n/2]. The two differ
/// at most by a global sign per entry (g^n = +-1), but printed matrices and
/// spectra depend on the choice, so it travels with the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExponentLift {
    #[serde(rename = "integer")]
    IntegerAction,
    #[serde(rename = "symmetric")]
    SymmetricResidue,
}

impl Default for ExponentLift {
    fn default() -> Self {
        ExponentLift::SymmetricResidue
    }
}

/// Symmetric representative of raw mod n, in (-n/2, n/2].
pub fn symmetric_residue(raw: i128, n: u64) -> i64 {
    let r = raw.rem_euclid(n as i128);
    let r = if 2 * r > n as i128 { r - n as i128 } else { r };
    r as i64
}

impl ExponentLift {
    pub fn apply(self, raw: i128, n: u64) -> i64 {
        match self {
            ExponentLift::IntegerAction => {
                i64::try_from(raw).expect("action exponent fits in i64")
            }
            ExponentLift::SymmetricResidue => symmetric_residue(raw, n),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ExponentLift::IntegerAction => "integer",
            ExponentLift::SymmetricResidue => "symmetric",
        }
    }
}

/// Wave function on {1..n} with exact cyclotomic amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaveFunction {
    pub n: u64,
    amplitudes: Vec<CyclotomicElement>,
}

impl WaveFunction {
    /// Amplitudes are promoted to a common conductor.
    pub fn new(n: u64, amplitudes: Vec<CyclotomicElement>) -> Result<Self> {
        if amplitudes.len() != n as usize {
            return Err(Error::BadLength {
                got: amplitudes.len(),
                expected: n as usize,
            });
        }
        let target = amplitudes
            .iter()
            .map(|a| a.conductor())
            .fold(1u64, num_integer::lcm);
        let amplitudes = amplitudes.into_iter().map(|a| a.promote(target)).collect();
        Ok(WaveFunction { n, amplitudes })
    }

    /// Delta function at q0 (1-based).
    pub fn delta(n: u64, q0: u64) -> Self {
        assert!((1..=n).contains(&q0), "delta position must lie in 1..=n");
        let mut amplitudes = vec![CyclotomicElement::zero(1); n as usize];
        amplitudes[(q0 - 1) as usize] = CyclotomicElement::one(1);
        WaveFunction { n, amplitudes }
    }

    pub fn conductor(&self) -> u64 {
        self.amplitudes.first().map_or(1, |a| a.conductor())
    }

    /// 1-based access.
    pub fn amplitude(&self, q: u64) -> &CyclotomicElement {
        &self.amplitudes[(q - 1) as usize]
    }

    pub fn amplitudes(&self) -> &[CyclotomicElement] {
        &self.amplitudes
    }
}

/// n x n table of step Lagrangians (q - q')^2 - V(q), stored as canonical
/// residues mod n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LagrangianMatrix {
    pub n: u64,
    entries: Vec<u64>,
}

impl LagrangianMatrix {
    pub fn entry(&self, q: u64, qp: u64) -> u64 {
        self.entries[((q - 1) * self.n + (qp - 1)) as usize]
    }

    /// The same entry as a symmetric representative in (-n/2, n/2].
    pub fn symmetric_entry(&self, q: u64, qp: u64) -> i64 {
        symmetric_residue(self.entry(q, qp) as i128, self.n)
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }
}

/// Raw integer step Lagrangian with q, q' taken as the integers 1..n.
pub fn lagrangian_raw(q: u64, qp: u64, v: &PotentialSpec) -> i128 {
    let d = q as i128 - qp as i128;
    d * d - v.eval_int(q)
}

pub fn lagrangian_matrix(v: &PotentialSpec) -> LagrangianMatrix {
    let n = v.n;
    let mut entries = Vec::with_capacity((n * n) as usize);
    for q in 1..=n {
        for qp in 1..=n {
            entries.push(lagrangian_raw(q, qp, v).rem_euclid(n as i128) as u64);
        }
    }
    LagrangianMatrix { n, entries }
}

/// Hamiltonian operator matrix, entries (g^e - g^-e)/2 with e a lifted
/// step-Lagrangian exponent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HamiltonianMatrix {
    pub n: u64,
    pub conductor: u64,
    pub g: CyclotomicElement,
    pub lift: ExponentLift,
    entries: Vec<CyclotomicElement>,
}

impl HamiltonianMatrix {
    /// Builds an operator matrix from row-major entries; amplitudes are
    /// promoted to a common conductor together with g.
    pub fn from_entries(
        n: u64,
        g: CyclotomicElement,
        lift: ExponentLift,
        entries: Vec<CyclotomicElement>,
    ) -> Result<Self> {
        if entries.len() != (n * n) as usize {
            return Err(Error::BadLength {
                got: entries.len(),
                expected: (n * n) as usize,
            });
        }
        let conductor = entries
            .iter()
            .map(|e| e.conductor())
            .fold(g.conductor(), num_integer::lcm);
        let entries = entries.into_iter().map(|e| e.promote(conductor)).collect();
        Ok(HamiltonianMatrix {
            n,
            conductor,
            g: g.promote(conductor),
            lift,
            entries,
        })
    }

    pub fn entry(&self, q: u64, qp: u64) -> &CyclotomicElement {
        &self.entries[((q - 1) * self.n + (qp - 1)) as usize]
    }

    pub fn entries(&self) -> &[CyclotomicElement] {
        &self.entries
    }

    pub fn trace(&self) -> CyclotomicElement {
        let mut acc = CyclotomicElement::zero(self.conductor);
        for q in 1..=self.n {
            acc = acc.add(self.entry(q, q));
        }
        acc
    }

    /// Exact matrix-vector action on a wave function.
    pub fn apply(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        if psi.n != self.n {
            return Err(Error::BadLength {
                got: psi.n as usize,
                expected: self.n as usize,
            });
        }
        let mut out = Vec::with_capacity(self.n as usize);
        for q in 1..=self.n {
            let mut acc = CyclotomicElement::zero(self.conductor);
            for qp in 1..=self.n {
                acc = acc.add(&self.entry(q, qp).mul(psi.amplitude(qp)));
            }
            out.push(acc);
        }
        WaveFunction::new(self.n, out)
    }
}

/// Checks g^n = +-1 exactly and returns the sign (+1 or -1).
pub fn validate_base(g: &CyclotomicElement, n: u64) -> Result<i64> {
    let p = g.pow(n as i64)?;
    if p.is_one() {
        Ok(1)
    } else if p.neg().is_one() {
        Ok(-1)
    } else {
        Err(Error::InvalidBase { n })
    }
}

/// psi'(q) = sum_{q'} g^{(q-q')^2 - V(q)} psi(q'), exponent lifted per `lift`.
pub fn propagate_forward(
    psi: &WaveFunction,
    g: &CyclotomicElement,
    v: &PotentialSpec,
    lift: ExponentLift,
) -> Result<WaveFunction> {
    let n = v.n;
    if psi.n != n {
        return Err(Error::BadLength {
            got: psi.n as usize,
            expected: n as usize,
        });
    }
    validate_base(g, n)?;
    let mut out = Vec::with_capacity(n as usize);
    for q in 1..=n {
        let mut acc = CyclotomicElement::zero(g.conductor());
        for qp in 1..=n {
            let e = lift.apply(lagrangian_raw(q, qp, v), n);
            acc = acc.add(&g.pow(e)?.mul(psi.amplitude(qp)));
        }
        out.push(acc);
    }
    WaveFunction::new(n, out)
}

/// Same step written as a sum over the hop xi = q - q' with xi running over
/// symmetric representatives; the kernel exponent xi^2 - V(q) is lifted as a
/// whole, which makes this agree exactly with `propagate_forward`.
pub fn propagate_forward_hops(
    psi: &WaveFunction,
    g: &CyclotomicElement,
    v: &PotentialSpec,
    lift: ExponentLift,
) -> Result<WaveFunction> {
    let n = v.n;
    if psi.n != n {
        return Err(Error::BadLength {
            got: psi.n as usize,
            expected: n as usize,
        });
    }
    validate_base(g, n)?;
    let lo = -(((n - 1) / 2) as i64);
    let hi = (n / 2) as i64;
    let mut out = Vec::with_capacity(n as usize);
    for q in 1..=n {
        let vq = v.eval_int(q);
        let mut acc = CyclotomicElement::zero(g.conductor());
        for xi in lo..=hi {
            let e = lift.apply(xi as i128 * xi as i128 - vq, n);
            let qp = (q as i64 - xi - 1).rem_euclid(n as i64) as u64 + 1;
            acc = acc.add(&g.pow(e)?.mul(psi.amplitude(qp)));
        }
        out.push(acc);
    }
    WaveFunction::new(n, out)
}

/// Backward step: the forward kernel with g replaced by g^-1.
pub fn propagate_backward(
    psi: &WaveFunction,
    g: &CyclotomicElement,
    v: &PotentialSpec,
    lift: ExponentLift,
) -> Result<WaveFunction> {
    propagate_forward(psi, &g.inv()?, v, lift)
}

/// H_{q,q'} = (g^e - g^-e)/2 with e the lifted step Lagrangian. The action of
/// this matrix on psi equals (forward - backward)/2 by construction.
pub fn hamiltonian(
    g: &CyclotomicElement,
    v: &PotentialSpec,
    lift: ExponentLift,
) -> Result<HamiltonianMatrix> {
    let n = v.n;
    validate_base(g, n)?;
    let half = rat(1, 2);
    let mut entries = Vec::with_capacity((n * n) as usize);
    for q in 1..=n {
        for qp in 1..=n {
            let e = lift.apply(lagrangian_raw(q, qp, v), n);
            let diff = g.pow(e)?.sub(&g.pow(-e)?);
            entries.push(diff.scale(&half));
        }
    }
    Ok(HamiltonianMatrix {
        n,
        conductor: g.conductor(),
        g: g.clone(),
        lift,
        entries,
    })
}

/// A_k(g) = sum_xi g^{xi^2} xi^k over xi in {-floor((n-1)/2), ..., floor(n/2)}.
/// Exponents are the raw integers xi^2; no residue reduction is involved.
pub fn a_sums(g: &CyclotomicElement, n: u64, k: u32) -> Result<CyclotomicElement> {
    validate_base(g, n)?;
    let lo = -(((n - 1) / 2) as i64);
    let hi = (n / 2) as i64;
    let mut acc = CyclotomicElement::zero(g.conductor());
    for xi in lo..=hi {
        let term = g.pow(xi * xi)?.scale(&rat(xi.pow(k), 1));
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Quantum potential and inverse quantum mass at position q (1-based):
/// V_Q = (A_0(g) g^-V - A_0(g^-1) g^V)/2 and 1/m_Q likewise with A_2.
/// Exponents +-V(q) are raw integers.
pub fn quantum_potential_mass(
    g: &CyclotomicElement,
    v: &PotentialSpec,
    q: u64,
) -> Result<(CyclotomicElement, CyclotomicElement)> {
    let n = v.n;
    let ginv = g.inv()?;
    let vq = i64::try_from(v.eval_int(q)).expect("potential value fits in i64");
    let g_mv = g.pow(-vq)?;
    let g_pv = g.pow(vq)?;
    let half = rat(1, 2);
    let combine = |ak_g: CyclotomicElement, ak_ginv: CyclotomicElement| {
        ak_g.mul(&g_mv).sub(&ak_ginv.mul(&g_pv)).scale(&half)
    };
    let vq_out = combine(a_sums(g, n, 0)?, a_sums(&ginv, n, 0)?);
    let inv_mq = combine(a_sums(g, n, 2)?, a_sums(&ginv, n, 2)?);
    Ok((vq_out, inv_mq))
}
