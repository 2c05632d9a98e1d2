//! Hilbert-series truncations via characters and trivial-module multiplicities.
//!
//! The degree-d piece of K[Rep(Q,α)] has the Laurent character produced by
//! [`rep_character`]; decomposing it into products of Schur characters and
//! reading off multiplicities of determinant-power weights gives exact,
//! characteristic-independent invariant dimensions.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::character::TorusCharacter;
use crate::error::{Error, Result};
use crate::poly::monomials_of_degree;
use crate::quiver::{DimVector, Quiver, Weight};
use crate::schur::DominantWeight;

/// Which graded invariant ring a computation refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingDescriptor {
    /// S(n,m): m matrices under simultaneous conjugation (m-loop quiver).
    MatrixInvariants { n: usize, m: usize },
    /// R(n,m): m matrices under SL_n × SL_n (m-Kronecker quiver).
    MatrixSemiInvariants { n: usize, m: usize },
    /// I(Q,α): GL(α)-invariants.
    QuiverInvariants { quiver: Quiver, alpha: DimVector },
    /// SI(Q,α,σ): weights kσ, graded by the series degree k. Quiver must be
    /// acyclic for the degree scan to be finite.
    QuiverSemiInvariants { quiver: Quiver, alpha: DimVector, sigma: Weight },
}

impl RingDescriptor {
    pub fn matrix_invariants(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Invalid("matrix invariants need n ≥ 1 and m ≥ 1".into()));
        }
        Ok(RingDescriptor::MatrixInvariants { n, m })
    }

    pub fn matrix_semi_invariants(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Invalid("matrix semi-invariants need n ≥ 1 and m ≥ 1".into()));
        }
        Ok(RingDescriptor::MatrixSemiInvariants { n, m })
    }

    /// The quiver/dimension pair realizing this ring, with its invariance mode.
    pub(crate) fn quiver_form(&self) -> (Quiver, DimVector, InvarianceMode) {
        match self {
            RingDescriptor::MatrixInvariants { n, m } => {
                let q = Quiver::loops(*m);
                let alpha = DimVector::new(&q, vec![*n]).expect("one vertex");
                (q, alpha, InvarianceMode::Gl)
            }
            RingDescriptor::MatrixSemiInvariants { n, m } => {
                let q = Quiver::kronecker(*m);
                let alpha = DimVector::new(&q, vec![*n, *n]).expect("two vertices");
                (q, alpha, InvarianceMode::Sl)
            }
            RingDescriptor::QuiverInvariants { quiver, alpha } => {
                (quiver.clone(), alpha.clone(), InvarianceMode::Gl)
            }
            RingDescriptor::QuiverSemiInvariants { quiver, alpha, sigma } => {
                (quiver.clone(), alpha.clone(), InvarianceMode::Sigma(sigma.clone()))
            }
        }
    }

    /// Upper end of the polynomial-degree scan contributing to series degree
    /// k of SI(Q,α,σ): k · Σ_i |σ(i)| α_i · (longest path length). `None`
    /// for the polynomial-degree-graded kinds.
    pub fn si_scan_window(&self, k: usize) -> Result<Option<usize>> {
        match self {
            RingDescriptor::QuiverSemiInvariants { quiver, alpha, sigma } => {
                let path = quiver.longest_path_len()?;
                let norm: i64 = sigma
                    .values()
                    .iter()
                    .zip(alpha.dims())
                    .map(|(&s, &a)| s.abs() * a as i64)
                    .sum();
                Ok(Some(k * norm as usize * path))
            }
            _ => Ok(None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum InvarianceMode {
    /// Trivial-weight multiplicity (GL(α)-invariants).
    Gl,
    /// Sum over determinant-power weight tuples (SL(α)-invariants).
    Sl,
    /// Fixed weight tuple kσ per vertex (semi-invariants of weight kσ).
    Sigma(Weight),
}

/// Character of K[Rep(Q,α)]_d as a Laurent polynomial with one variable
/// group per vertex. The coordinate function picking entry (r,c) of V(a)
/// carries weight +e_c at the tail and −e_r at the head.
pub fn rep_character(quiver: &Quiver, alpha: &DimVector, d: usize) -> Result<TorusCharacter> {
    let group_ranks: Vec<usize> = alpha.dims().to_vec();
    let offsets = alpha.block_offsets();
    let mut coord_weights: Vec<Vec<i64>> = Vec::new();
    let total_rank = alpha.total();
    for a in quiver.arrows() {
        for r in 0..alpha.at(a.head) {
            for c in 0..alpha.at(a.tail) {
                let mut w = vec![0i64; total_rank];
                w[offsets[a.tail] + c] += 1;
                w[offsets[a.head] + r] -= 1;
                coord_weights.push(w);
            }
        }
    }
    if coord_weights.is_empty() {
        // No coordinates: K[Rep] = K, so only degree 0 survives.
        return Ok(if d == 0 {
            TorusCharacter::one(group_ranks)
        } else {
            TorusCharacter::zero(group_ranks)
        });
    }
    let nvars = coord_weights.len();
    check_monomial_budget(nvars, d)?;
    let mut raw: Vec<(Vec<i64>, i64)> = Vec::new();
    for mono in monomials_of_degree(nvars, d) {
        let mut w = vec![0i64; total_rank];
        for (e, cw) in mono.iter().zip(&coord_weights) {
            if *e > 0 {
                for (t, &x) in w.iter_mut().zip(cw) {
                    *t += *e as i64 * x;
                }
            }
        }
        raw.push((w, 1));
    }
    TorusCharacter::from_raw_terms(group_ranks, raw)
}

fn check_monomial_budget(nvars: usize, d: usize) -> Result<()> {
    // C(nvars + d - 1, d), saturating.
    let mut c: u128 = 1;
    for i in 0..d {
        c = c.saturating_mul((nvars + i) as u128) / (i + 1) as u128;
        if c > 5_000_000 {
            return Err(Error::ResourceCap(format!(
                "degree-{d} monomial space over {nvars} coordinates is too large"
            )));
        }
    }
    Ok(())
}

/// Dimension of the degree-d piece of the invariant ring: trivial-module /
/// weight multiplicities in the coordinate-ring character. For the
/// SI(Q,α,σ) kind, `d` is the series degree k and polynomial degrees are
/// scanned over the finite window of [`RingDescriptor::si_scan_window`].
pub fn invariant_dim(ring: &RingDescriptor, d: usize) -> Result<u64> {
    let (quiver, alpha, mode) = ring.quiver_form();
    match mode {
        InvarianceMode::Gl => {
            let ch = rep_character(&quiver, &alpha, d)?;
            let target: Vec<DominantWeight> =
                alpha.dims().iter().map(|&r| DominantWeight::zero(r)).collect();
            ch.weight_multiplicity(&target)
        }
        InvarianceMode::Sl => {
            let ch = rep_character(&quiver, &alpha, d)?;
            let dec = ch.schur_decompose()?;
            Ok(dec
                .into_iter()
                .filter(|(lams, _)| lams.iter().all(|l| l.is_det_power().is_some()))
                .map(|(_, m)| m)
                .sum())
        }
        InvarianceMode::Sigma(sigma) => {
            let k = d;
            let window = ring
                .si_scan_window(k)?
                .expect("sigma kind always has a window");
            let target: Vec<DominantWeight> = alpha
                .dims()
                .iter()
                .zip(sigma.values())
                .map(|(&r, &s)| DominantWeight::det_power(r, k as i64 * s))
                .collect();
            let mut total = 0u64;
            for e in 0..=window {
                let ch = rep_character(&quiver, &alpha, e)?;
                total += ch.weight_multiplicity(&target)?;
            }
            Ok(total)
        }
    }
}

/// A truncated Hilbert series: coefficients h_0..h_D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTruncation {
    pub ring: RingDescriptor,
    pub coefficients: Vec<u64>,
}

/// h_d = invariant_dim(ring, d) for d ≤ max_degree.
pub fn hilbert_truncation(ring: &RingDescriptor, max_degree: usize) -> Result<HilbertTruncation> {
    let coefficients = (0..=max_degree)
        .map(|d| invariant_dim(ring, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertTruncation { ring: ring.clone(), coefficients })
}

/// Checks the Cauchy filtration as a dimension identity:
/// binom(pq+t−1, t) = Σ_{λ ⊢ t} dim L_λ(K^p) · dim L_λ(K^q), with the Schur
/// functor dimension dim L_λ(V) counted by tableaux of the conjugate shape.
pub fn cauchy_dimension_check(t: usize, p: usize, q: usize) -> bool {
    let lhs = binomial(p * q + t.saturating_sub(1), t);
    let mut rhs: u128 = 0;
    for lam in crate::schur::partitions(t) {
        let conj = crate::schur::conjugate(&lam);
        let dp = crate::schur::ssyt_count(&conj, p) as u128;
        if dp == 0 {
            continue;
        }
        let dq = crate::schur::ssyt_count(&conj, q) as u128;
        rhs += dp * dq;
    }
    lhs == rhs
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rep_character_degree_zero_is_one() {
        let q = Quiver::kronecker(2);
        let alpha = DimVector::new(&q, vec![2, 2]).unwrap();
        let ch = rep_character(&q, &alpha, 0).unwrap();
        assert_eq!(ch, TorusCharacter::one(vec![2, 2]));
    }

    #[test]
    fn rep_character_one_loop_rank_one() {
        // Single loop, α = (1): the coordinate has weight 0, so Sym^3 is the
        // constant character.
        let q = Quiver::loops(1);
        let alpha = DimVector::new(&q, vec![1]).unwrap();
        let ch = rep_character(&q, &alpha, 3).unwrap();
        assert_eq!(ch.coeff_of_raw(&[0]), 1);
        assert_eq!(ch.num_orbits(), 1);
    }

    #[test]
    fn rep_character_kronecker_rank_one() {
        // Kronecker α=(1,1), one arrow, d=2: single monomial of weight
        // (z_x / z_y)^2.
        let q = Quiver::kronecker(1);
        let alpha = DimVector::new(&q, vec![1, 1]).unwrap();
        let ch = rep_character(&q, &alpha, 2).unwrap();
        assert_eq!(ch.coeff_of_raw(&[2, -2]), 1);
        assert_eq!(ch.num_orbits(), 1);
    }

    #[test]
    fn matrix_invariant_dims_s21() {
        let ring = RingDescriptor::matrix_invariants(2, 1).unwrap();
        let dims: Vec<u64> = (0..=5).map(|d| invariant_dim(&ring, d).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn matrix_semi_invariant_dims_r21() {
        let ring = RingDescriptor::matrix_semi_invariants(2, 1).unwrap();
        let dims: Vec<u64> = (0..=4).map(|d| invariant_dim(&ring, d).unwrap()).collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn matrix_invariant_dims_s22() {
        let ring = RingDescriptor::matrix_invariants(2, 2).unwrap();
        let dims: Vec<u64> = (0..=4).map(|d| invariant_dim(&ring, d).unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 6, 10, 20]);
    }

    #[test]
    fn truncation_collects_dims() {
        let ring = RingDescriptor::matrix_semi_invariants(2, 1).unwrap();
        let tr = hilbert_truncation(&ring, 4).unwrap();
        assert_eq!(tr.coefficients, vec![1, 0, 1, 0, 1]);
        let tr0 = hilbert_truncation(&ring, 0).unwrap();
        assert_eq!(tr0.coefficients, vec![1]);
    }

    #[test]
    fn degree_support_law_for_r() {
        // R(n,m) vanishes in degrees not divisible by n.
        let ring = RingDescriptor::matrix_semi_invariants(3, 2).unwrap();
        for d in [1usize, 2, 4, 5] {
            assert_eq!(invariant_dim(&ring, d).unwrap(), 0, "degree {d}");
        }
    }

    #[test]
    fn si_truncation_kronecker_weight() {
        // SI of the A2 quiver (one arrow), α=(1,1), σ=(1,-1): the coordinate
        // ring is K[c] with c of weight σ, so every series degree has h_k = 1.
        let q = Quiver::kronecker(1);
        let alpha = DimVector::new(&q, vec![1, 1]).unwrap();
        let sigma = Weight::new(&q, vec![1, -1]).unwrap();
        let ring = RingDescriptor::QuiverSemiInvariants { quiver: q, alpha, sigma };
        let tr = hilbert_truncation(&ring, 3).unwrap();
        assert_eq!(tr.coefficients, vec![1, 1, 1, 1]);
        assert_eq!(ring.si_scan_window(2).unwrap(), Some(4));
    }

    #[test]
    fn si_requires_acyclic() {
        let q = Quiver::loops(1);
        let alpha = DimVector::new(&q, vec![1]).unwrap();
        let sigma = Weight::new(&q, vec![1]).unwrap();
        let ring = RingDescriptor::QuiverSemiInvariants { quiver: q, alpha, sigma };
        assert_eq!(invariant_dim(&ring, 1).unwrap_err(), Error::OrientedCycle);
    }

    #[test]
    fn quiver_invariants_of_acyclic_quiver_are_constants() {
        let q = Quiver::kronecker(2);
        let alpha = DimVector::new(&q, vec![2, 2]).unwrap();
        let ring = RingDescriptor::QuiverInvariants { quiver: q, alpha };
        let tr = hilbert_truncation(&ring, 3).unwrap();
        assert_eq!(tr.coefficients, vec![1, 0, 0, 0]);
    }

    #[test]
    fn cauchy_identity_examples() {
        assert!(cauchy_dimension_check(2, 2, 2)); // 10 = 1 + 9
        assert!(cauchy_dimension_check(1, 3, 4)); // pq = pq
        assert!(cauchy_dimension_check(3, 2, 3)); // 56 via tableaux
        assert!(cauchy_dimension_check(0, 2, 2)); // empty product
    }

    #[test]
    fn rep_character_coefficients_nonnegative() {
        let q = Quiver::loops(2);
        let alpha = DimVector::new(&q, vec![2]).unwrap();
        for d in 0..=4 {
            let ch = rep_character(&q, &alpha, d).unwrap();
            assert!(ch.canonical_terms().all(|(_, c)| c > 0));
        }
    }
}
