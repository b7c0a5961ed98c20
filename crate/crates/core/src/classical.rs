//! Discrete classical mechanics on Z_n with integer time: Lagrangian, action,
//! equation of motion, energy, Hamilton-form quantities, trajectory iteration,
//! and the cycle census of the finite phase space.
//!
//! Residues live in {0..n-1}. The dynamics is second order, so phase states are
//! pairs (q_prev, q_curr) and the census runs over all n^2 of them.

use crate::error::{Error, Result};
use serde::Serialize;

/// Potential V(q) = a_0 + a_1 q + a_2 q^2 + ... with coefficients stored mod n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PotentialSpec {
    pub n: u64,
    coeffs: Vec<u64>,
}

impl PotentialSpec {
    pub fn new(n: u64, coeffs: &[i64]) -> Self {
        assert!(n >= 1, "modulus must be positive");
        let mut c: Vec<u64> = coeffs
            .iter()
            .map(|a| a.rem_euclid(n as i64) as u64)
            .collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        PotentialSpec { n, coeffs: c }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// V(q) over the integers, canonical residue input; small enough for i128.
    pub fn eval_int(&self, q: u64) -> i128 {
        let q = q as i128;
        let mut acc: i128 = 0;
        for a in self.coeffs.iter().rev() {
            acc = acc * q + *a as i128;
        }
        acc
    }

    pub fn eval_mod(&self, q: u64) -> u64 {
        (self.eval_int(q % self.n).rem_euclid(self.n as i128)) as u64
    }

    /// Formal derivative a_1 + 2 a_2 q + 3 a_3 q^2 + ... over the integers.
    pub fn derivative_int(&self, q: u64) -> i128 {
        let q = q as i128;
        let mut acc: i128 = 0;
        let mut qp: i128 = 1;
        for (k, a) in self.coeffs.iter().enumerate().skip(1) {
            acc += (k as i128) * (*a as i128) * qp;
            qp *= q;
        }
        acc
    }

    pub fn derivative_mod(&self, q: u64) -> u64 {
        (self.derivative_int(q % self.n).rem_euclid(self.n as i128)) as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PhaseState {
    pub q_prev: u64,
    pub q_curr: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub states: Vec<u64>,
    pub potential: PotentialSpec,
}

#[derive(Debug, Clone, Serialize)]
pub struct Orbit {
    pub representative: PhaseState,
    pub period: u64,
    pub members: Vec<PhaseState>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleDecomposition {
    pub n: u64,
    pub orbits: Vec<Orbit>,
}

fn modn(v: i128, n: u64) -> u64 {
    v.rem_euclid(n as i128) as u64
}

/// L = (q_curr - q_prev)^2 - V(q_curr) mod n.
pub fn lagrangian(q_curr: u64, q_prev: u64, v: &PotentialSpec) -> u64 {
    let n = v.n;
    let d = q_curr as i128 - q_prev as i128;
    modn(d * d - v.eval_int(q_curr % n), n)
}

/// The same quantity over the integers, for exponent lifting at quantization.
pub fn lagrangian_int(q_curr: i64, q_prev: i64, v: &PotentialSpec) -> i128 {
    let d = q_curr as i128 - q_prev as i128;
    d * d - v.eval_int((q_curr as u64) % v.n)
}

/// Sum of step Lagrangians over a trajectory, mod n.
pub fn action(traj: &Trajectory) -> u64 {
    let v = &traj.potential;
    let mut acc: u64 = 0;
    for w in traj.states.windows(2) {
        acc = (acc + lagrangian(w[1], w[0], v)) % v.n;
    }
    acc
}

/// 2(q_next - 2 q_curr + q_prev) + V'(q_curr), mod n; zero on solutions.
pub fn eom_residual(q_next: u64, q_curr: u64, q_prev: u64, v: &PotentialSpec) -> u64 {
    let qdd = q_next as i128 - 2 * q_curr as i128 + q_prev as i128;
    modn(2 * qdd + v.derivative_int(q_curr % v.n), v.n)
}

/// E = (q_curr - q_prev)^2 + V(q_curr) over the integers.
pub fn energy_int(q_curr: u64, q_prev: u64, v: &PotentialSpec) -> i128 {
    let d = q_curr as i128 - q_prev as i128;
    d * d + v.eval_int(q_curr % v.n)
}

pub fn energy(q_curr: u64, q_prev: u64, v: &PotentialSpec) -> u64 {
    modn(energy_int(q_curr, q_prev, v), v.n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamiltonQuantities {
    /// 2(q_next - q_curr) over the integers; always even.
    pub p_int: i64,
    pub p_mod: u64,
    /// p^2/4 + V(q_curr) over the integers (p even makes this exact).
    pub h_int: i128,
    /// Reduction of h mod n, present iff 4 is invertible mod n (n odd).
    pub h_mod: Option<u64>,
}

pub fn hamilton_quantities(q_next: u64, q_curr: u64, v: &PotentialSpec) -> HamiltonQuantities {
    let n = v.n;
    let p_int = 2 * (q_next as i64 - q_curr as i64);
    let h_int = (p_int as i128) * (p_int as i128) / 4 + v.eval_int(q_curr % n);
    let h_mod = if n % 2 == 1 {
        Some(modn(h_int, n))
    } else {
        None
    };
    HamiltonQuantities {
        p_int,
        p_mod: modn(p_int as i128, n),
        h_int,
        h_mod,
    }
}

/// Whether the equation 2*qddot = -V' determines every step uniquely.
/// For odd n yes; for even n only if V' is even at every residue, in which case
/// the integer halving of the even residue is the canonical branch.
fn check_step_defined(v: &PotentialSpec) -> Result<()> {
    let n = v.n;
    if n % 2 == 1 {
        return Ok(());
    }
    for q in 0..n {
        if v.derivative_mod(q) % 2 == 1 {
            return Err(Error::NoUniqueStep { n });
        }
    }
    Ok(())
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

/// One application of the time-development map T: (q_prev, q_curr) -> (q_curr, q_next).
pub fn step_classical(s: PhaseState, v: &PotentialSpec) -> Result<PhaseState> {
    check_step_defined(v)?;
    let n = v.n;
    let dv = v.derivative_mod(s.q_curr);
    let kick = if n % 2 == 1 {
        let inv2 = mod_inverse(2, n).expect("2 invertible for odd n");
        dv * inv2 % n
    } else {
        dv / 2
    };
    let q_next = modn(
        2 * s.q_curr as i128 - s.q_prev as i128 - kick as i128,
        n,
    );
    Ok(PhaseState {
        q_prev: s.q_curr,
        q_curr: q_next,
    })
}

/// Inverse of the step map; exists because T is affine with unit coefficient.
pub fn step_classical_back(s: PhaseState, v: &PotentialSpec) -> Result<PhaseState> {
    check_step_defined(v)?;
    let n = v.n;
    let dv = v.derivative_mod(s.q_prev);
    let kick = if n % 2 == 1 {
        let inv2 = mod_inverse(2, n).expect("2 invertible for odd n");
        dv * inv2 % n
    } else {
        dv / 2
    };
    let q_before = modn(
        2 * s.q_prev as i128 - s.q_curr as i128 - kick as i128,
        n,
    );
    Ok(PhaseState {
        q_prev: q_before,
        q_curr: s.q_prev,
    })
}

/// Iterate the step map from (q0, q1), returning q(0), q(1), ..., q(steps+1).
pub fn iterate_trajectory(q0: u64, q1: u64, steps: u64, v: &PotentialSpec) -> Result<Trajectory> {
    let mut states = vec![q0 % v.n, q1 % v.n];
    let mut s = PhaseState {
        q_prev: q0 % v.n,
        q_curr: q1 % v.n,
    };
    for _ in 0..steps {
        s = step_classical(s, v)?;
        states.push(s.q_curr);
    }
    Ok(Trajectory {
        states,
        potential: v.clone(),
    })
}

/// Partition all n^2 phase states into orbits of T.
/// Representative = lexicographic minimum of the orbit; orbits sorted by
/// (period, representative) so the emitted census is deterministic.
pub fn cycle_census(v: &PotentialSpec) -> Result<CycleDecomposition> {
    check_step_defined(v)?;
    let n = v.n;
    let idx = |s: &PhaseState| (s.q_prev * n + s.q_curr) as usize;
    let mut seen = vec![false; (n * n) as usize];
    let mut orbits = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let start = PhaseState {
                q_prev: a,
                q_curr: b,
            };
            if seen[idx(&start)] {
                continue;
            }
            let mut members = Vec::new();
            let mut s = start;
            loop {
                seen[idx(&s)] = true;
                members.push(s);
                s = step_classical(s, v)?;
                if s == start {
                    break;
                }
                debug_assert!(
                    !seen[idx(&s)],
                    "step map must be a bijection, so orbits are pure cycles"
                );
            }
            let representative = *members.iter().min().unwrap();
            orbits.push(Orbit {
                representative,
                period: members.len() as u64,
                members,
            });
        }
    }
    orbits.sort_by_key(|o| (o.period, o.representative));
    Ok(CycleDecomposition { n, orbits })
}

/// All (x, y) in Z_n x Z_n with y^2 = 4E - 4V(x) mod n.
pub fn trajectory_curve_points(e: u64, v: &PotentialSpec) -> Vec<(u64, u64)> {
    let n = v.n;
    let mut pts = Vec::new();
    for x in 0..n {
        let rhs = modn(4 * (e as i128 - v.eval_int(x)), n);
        for y in 0..n {
            if y * y % n == rhs {
                pts.push((x, y));
            }
        }
    }
    pts
}

/// Right-hand side of the energy-difference expansion:
/// (q2 - q0) * qddot + (q2 - q1) * sum_k a_k (q1^(k-1) + q1^(k-2) q2 + ... + q2^(k-1)),
/// an exact integer identity with E(t+1) - E(t).
pub fn energy_difference_rhs(q2: u64, q1: u64, q0: u64, v: &PotentialSpec) -> i128 {
    let (q2, q1, q0) = (q2 as i128, q1 as i128, q0 as i128);
    let kinetic = (q2 - q0) * (q2 - 2 * q1 + q0);
    let mut pot: i128 = 0;
    for (k, a) in v.coeffs().iter().enumerate().skip(1) {
        let mut sym: i128 = 0;
        for j in 0..k {
            sym += q1.pow(j as u32) * q2.pow((k - 1 - j) as u32);
        }
        pot += (*a as i128) * sym;
    }
    kinetic + (q2 - q1) * pot
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vq2(n: u64) -> PotentialSpec {
        PotentialSpec::new(n, &[0, 0, 1])
    }

    #[test]
    fn lagrangian_matches_displayed_entries() {
        let v = vq2(6);
        assert_eq!(lagrangian(1, 1, &v), 5);
        assert_eq!(lagrangian(1, 4, &v), 2);
        let v0 = PotentialSpec::new(7, &[]);
        assert_eq!(lagrangian(3, 3, &v0), 0);
    }

    #[test]
    fn action_examples() {
        let v = vq2(6);
        let traj = Trajectory {
            states: vec![0, 1, 2],
            potential: v,
        };
        assert_eq!(action(&traj), 3);
        let free = PotentialSpec::new(5, &[]);
        let traj2 = Trajectory {
            states: vec![2, 2, 2, 2],
            potential: free,
        };
        assert_eq!(action(&traj2), 0);
    }

    #[test]
    fn eom_residual_examples() {
        let free = PotentialSpec::new(9, &[]);
        assert_eq!(eom_residual(2, 1, 0, &free), 0);
        let v = vq2(6);
        assert_eq!(eom_residual(3, 1, 0, &v), 4);
    }

    #[test]
    fn step_examples() {
        let free = PotentialSpec::new(5, &[]);
        let s = step_classical(
            PhaseState {
                q_prev: 1,
                q_curr: 2,
            },
            &free,
        )
        .unwrap();
        assert_eq!(
            s,
            PhaseState {
                q_prev: 2,
                q_curr: 3
            }
        );
        let v = vq2(3);
        let fixed = step_classical(
            PhaseState {
                q_prev: 0,
                q_curr: 0,
            },
            &v,
        )
        .unwrap();
        assert_eq!(
            fixed,
            PhaseState {
                q_prev: 0,
                q_curr: 0
            }
        );
        // V = q has odd derivative, undefined for even n
        let vq = PotentialSpec::new(6, &[0, 1]);
        assert_eq!(
            step_classical(
                PhaseState {
                    q_prev: 0,
                    q_curr: 0
                },
                &vq
            ),
            Err(Error::NoUniqueStep { n: 6 })
        );
    }

    #[test]
    fn energy_and_hamilton_examples() {
        let v = vq2(6);
        assert_eq!(energy(2, 0, &v), 2);
        let v5 = vq2(5);
        let h = hamilton_quantities(3, 1, &v5);
        assert_eq!(h.p_int, 4);
        assert_eq!(h.p_mod, 4);
        assert_eq!(h.h_mod, Some(0));
        assert_eq!(h.p_int % 2, 0);
        let a0 = PotentialSpec::new(7, &[3]);
        let h0 = hamilton_quantities(2, 2, &a0);
        assert_eq!(h0.p_int, 0);
        assert_eq!(h0.h_mod, Some(3));
    }

    #[test]
    fn census_covers_phase_space() {
        for (n, coeffs) in [(5u64, vec![]), (3, vec![0i64, 0, 1]), (7, vec![0, 0, 1])] {
            let v = PotentialSpec::new(n, &coeffs);
            let census = cycle_census(&v).unwrap();
            let total: u64 = census.orbits.iter().map(|o| o.period).sum();
            assert_eq!(total, n * n);
            for o in &census.orbits {
                assert!(o.period <= n * n);
                assert_eq!(o.period as usize, o.members.len());
            }
        }
    }

    #[test]
    fn free_census_n5_periods_divide_5() {
        let v = PotentialSpec::new(5, &[]);
        let census = cycle_census(&v).unwrap();
        for o in &census.orbits {
            assert!(o.period == 1 || o.period == 5, "period {}", o.period);
        }
    }

    #[test]
    fn curve_points_contain_origin_for_zero_energy() {
        let v = vq2(5);
        let pts = trajectory_curve_points(0, &v);
        assert!(pts.contains(&(0, 0)));
        let free = PotentialSpec::new(4, &[]);
        let pts0 = trajectory_curve_points(0, &free);
        for x in 0..4 {
            assert!(pts0.contains(&(x, 0)));
        }
    }

    #[test]
    fn energy_difference_identity_exhaustive() {
        for n in [3u64, 4, 6, 7] {
            for coeffs in [vec![], vec![1i64, 2], vec![0, 0, 1], vec![1, 2, 3, 1]] {
                let v = PotentialSpec::new(n, &coeffs);
                for q0 in 0..n {
                    for q1 in 0..n {
                        for q2 in 0..n {
                            let lhs = energy_int(q2, q1, &v) - energy_int(q1, q0, &v);
                            assert_eq!(lhs, energy_difference_rhs(q2, q1, q0, &v));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn even_n_step_with_even_derivative_is_canonical_and_bijective() {
        // V = q^2 mod 6 has V' = 2q, even everywhere.
        let v = vq2(6);
        let census = cycle_census(&v).unwrap();
        let total: u64 = census.orbits.iter().map(|o| o.period).sum();
        assert_eq!(total, 36);
        for o in &census.orbits {
            for m in &o.members {
                let fwd = step_classical(*m, &v).unwrap();
                assert_eq!(step_classical_back(fwd, &v).unwrap(), *m);
                assert_eq!(eom_residual(fwd.q_curr, m.q_curr, m.q_prev, &v), 0);
            }
        }
    }
}
