//! Block-determinant semi-invariants and null-cone membership.
//!
//! A [`BlockSemiInvariant`] with blocks T_1..T_m of size d evaluates to
//! det(Σ_i T_i ⊗ X_i), a polynomial of degree d·n in the entries of X.
//! Membership in the null cone is certified either by randomized trials over
//! a large prime (block size n−1, Schwartz–Zippel error bound) or, at small
//! sizes, exactly by expanding the determinant symbolically in the T-entries.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::field::{is_prime_u64, Field, FieldScalar};
use crate::matrix::{ExactMatrix, Mat};
use crate::poly::MultiPoly;
use crate::words::MatrixTuple;

/// A determinantal semi-invariant: m coefficient blocks of size d ≥ 1.
/// On n×n tuples it is homogeneous of polynomial degree d·n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSemiInvariant {
    d: usize,
    blocks: Vec<ExactMatrix>,
}

impl BlockSemiInvariant {
    pub fn new(d: usize, blocks: Vec<ExactMatrix>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("block size must be at least 1".into()));
        }
        let mut field = None;
        for b in &blocks {
            if b.rows() != d || b.cols() != d {
                return Err(Error::ShapeMismatch(format!(
                    "blocks must be {d}x{d}, got {}x{}",
                    b.rows(),
                    b.cols()
                )));
            }
            match field {
                None => field = Some(b.field()),
                Some(f) if f != b.field() => return Err(Error::FieldMismatch),
                _ => {}
            }
        }
        Ok(BlockSemiInvariant { d, blocks })
    }

    pub fn block_size(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[ExactMatrix] {
        &self.blocks
    }

    pub fn degree(&self, n: usize) -> usize {
        self.d * n
    }

    /// det(Σ_i T_i ⊗ X_i) with the Kronecker convention
    /// (T⊗X)[(u−1)n+a, (v−1)n+b] = T[u,v]·X[a,b].
    pub fn eval(&self, x: &MatrixTuple) -> Result<FieldScalar> {
        if self.m() != x.m() {
            return Err(Error::ShapeMismatch(format!(
                "invariant has {} blocks, tuple has {} matrices",
                self.m(),
                x.m()
            )));
        }
        let n = x.n();
        let field = x.field();
        let mut acc = ExactMatrix::zero(self.d * n, self.d * n, field);
        for (t, xi) in self.blocks.iter().zip(x.matrices()) {
            let t = if t.field() == field { t.clone() } else { coerce_blocks(t, field)? };
            acc = acc.add(&t.kronecker(xi))?;
        }
        acc.det()
    }

    /// Symbolic evaluation with polynomial matrix arguments (used by the
    /// generation harness to expand block coefficients).
    pub fn eval_on_poly(&self, mats: &[Mat<MultiPoly>]) -> Result<MultiPoly> {
        if self.m() != mats.len() {
            return Err(Error::ShapeMismatch("block/matrix count mismatch".into()));
        }
        let n = mats[0].rows();
        let sample = mats[0].at(0, 0);
        let zero = MultiPoly::zero(sample.nvars(), sample.field());
        let mut acc = Mat::from_entries(
            self.d * n,
            self.d * n,
            vec![zero; self.d * n * self.d * n],
        )?;
        for (t, xi) in self.blocks.iter().zip(mats) {
            let t_poly_entries: Vec<MultiPoly> = t
                .entries()
                .iter()
                .map(|c| MultiPoly::constant(sample.nvars(), c.clone()))
                .collect();
            let t_poly = Mat::from_entries(self.d, self.d, t_poly_entries)?;
            acc = acc.add(&t_poly.kronecker(xi))?;
        }
        Ok(acc.det_laplace())
    }
}

fn coerce_blocks(t: &ExactMatrix, field: Field) -> Result<ExactMatrix> {
    match field {
        Field::Fp(p) => t.reduce_mod(p),
        Field::Q => Err(Error::FieldMismatch),
    }
}

/// Checks the weight equivariance f(A·X·B⁻¹) = det(A)^d · det(B)^{−d} · f(X).
pub fn weight_check(
    s: &BlockSemiInvariant,
    a: &ExactMatrix,
    b: &ExactMatrix,
    x: &MatrixTuple,
) -> Result<bool> {
    let b_inv = b.inverse()?;
    let det_a = a.det()?;
    let det_b = b.det()?;
    if det_a.is_zero() || det_b.is_zero() {
        return Err(Error::Singular);
    }
    let moved = MatrixTuple::new(
        x.n(),
        x.matrices()
            .iter()
            .map(|xi| a.mul(xi)?.mul(&b_inv))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let lhs = s.eval(&moved)?;
    let factor = &det_a.pow(s.d as i64)? * &det_b.pow(-(s.d as i64))?;
    let rhs = &factor * &s.eval(x)?;
    Ok(lhs == rhs)
}

/// Deterministic table of primes just above 2^61, in fallback order.
pub fn prime_table() -> Vec<u64> {
    let mut out = Vec::with_capacity(8);
    let mut p: u64 = (1 << 61) - 1; // Mersenne prime
    while out.len() < 8 {
        if is_prime_u64(p) {
            out.push(p);
        }
        p += 1;
    }
    out
}

fn sample_below(rng: &mut ChaCha20Rng, bound: u64) -> u64 {
    // Rejection sampling for an unbiased residue.
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % bound;
        }
    }
}

fn random_block(rng: &mut ChaCha20Rng, d: usize, field: Field) -> ExactMatrix {
    let entries = (0..d * d)
        .map(|_| match field {
            Field::Fp(p) => FieldScalar::Fp { value: sample_below(rng, p), modulus: p },
            // Over ℚ: uniform integers in [0, 2^20).
            Field::Q => Field::Q.from_i64(sample_below(rng, 1 << 20) as i64),
        })
        .collect();
    ExactMatrix::new(d, d, entries, field).expect("sampled entries share one field")
}

/// r random block semi-invariants with block size d = n−1 (degree n(n−1)),
/// drawn from a seeded generator over `field`. Identical (seed, field)
/// reproduce the identical family.
pub fn nullcone_family(
    n: usize,
    m: usize,
    r: usize,
    seed: u64,
    field: Field,
) -> Result<Vec<BlockSemiInvariant>> {
    if n < 2 {
        return Err(Error::Invalid(
            "null-cone families need n ≥ 2; for n = 1 the null cone is the origin".into(),
        ));
    }
    let d = n - 1;
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let blocks = (0..m).map(|_| random_block(&mut rng, d, field)).collect();
        out.push(BlockSemiInvariant::new(d, blocks)?);
    }
    Ok(out)
}

/// Outcome of a null-cone membership test with its replayable evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullConeVerdict {
    pub member: bool,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// A reproducible nonzero block-determinant value.
    Witness {
        prime: u64,
        trial: u32,
        seed: u64,
        /// Row-major block entries as residues mod `prime`.
        blocks: Vec<Vec<u64>>,
        value: u64,
    },
    /// All trials vanished; the Schwartz–Zippel failure bound is
    /// (dn/prime)^trials, exact.
    TrialStats {
        prime: u64,
        trials: u32,
        seed: u64,
        error_bound: BigRational,
    },
    /// Symbolic expansion of det(Σ T_i ⊗ X_i) in the T-entries.
    Exact { nonzero_terms: usize },
}

/// Randomized membership: `trials` seeded block samples over a prime above
/// 2^61 (falling back through [`prime_table`] when denominators of X are not
/// invertible). Any nonzero determinant certifies non-membership; all-zero
/// trials report membership with error probability ≤ (dn/p)^trials.
pub fn nullcone_member(x: &MatrixTuple, trials: u32, seed: u64) -> Result<NullConeVerdict> {
    if trials == 0 {
        return Err(Error::Invalid("at least one trial required".into()));
    }
    let n = x.n();
    if n == 0 || x.m() == 0 {
        return Err(Error::Invalid("membership needs n ≥ 1 and m ≥ 1".into()));
    }
    let d = n.saturating_sub(1).max(1);
    let table = prime_table();
    let mut chosen = None;
    for &p in &table {
        match x.reduce_mod(p) {
            Ok(red) => {
                chosen = Some((p, red));
                break;
            }
            Err(Error::PrimeExhausted) => continue,
            Err(e) => return Err(e),
        }
    }
    let Some((prime, reduced)) = chosen else {
        return Err(Error::PrimeExhausted);
    };
    let field = Field::Fp(prime);
    for trial in 0..trials {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let blocks: Vec<ExactMatrix> = (0..x.m()).map(|_| random_block(&mut rng, d, field)).collect();
        let inv = BlockSemiInvariant::new(d, blocks.clone())?;
        let value = inv.eval(&reduced)?;
        if !value.is_zero() {
            let FieldScalar::Fp { value: v, .. } = value else { unreachable!() };
            let blocks_u64 = blocks
                .iter()
                .map(|b| {
                    b.entries()
                        .iter()
                        .map(|e| match e {
                            FieldScalar::Fp { value, .. } => *value,
                            FieldScalar::Q(_) => unreachable!(),
                        })
                        .collect()
                })
                .collect();
            return Ok(NullConeVerdict {
                member: false,
                certificate: Certificate::Witness {
                    prime,
                    trial,
                    seed,
                    blocks: blocks_u64,
                    value: v,
                },
            });
        }
    }
    let num = BigInt::from((d * n) as u64).pow(trials);
    let den = BigInt::from(prime).pow(trials);
    Ok(NullConeVerdict {
        member: true,
        certificate: Certificate::TrialStats {
            prime,
            trials,
            seed,
            error_bound: BigRational::new(num, den),
        },
    })
}

/// Exact membership for small instances (n ≤ 3, m ≤ 3): expands
/// det(Σ T_i ⊗ X_i) symbolically in the T-entries at block size
/// d = max(1, n−1) and tests identical vanishing.
pub fn nullcone_member_exact(x: &MatrixTuple) -> Result<NullConeVerdict> {
    let n = x.n();
    if n == 0 || x.m() == 0 {
        return Err(Error::Invalid("membership needs n ≥ 1 and m ≥ 1".into()));
    }
    if n > 3 || x.m() > 3 {
        return Err(Error::ResourceCap(format!(
            "exact mode supports n ≤ 3 and m ≤ 3, got n={n}, m={}",
            x.m()
        )));
    }
    let d = n.saturating_sub(1).max(1);
    let poly = symbolic_block_det(x, d)?;
    Ok(NullConeVerdict {
        member: poly.is_zero(),
        certificate: Certificate::Exact { nonzero_terms: poly.num_terms() },
    })
}

/// det(Σ_i T_i ⊗ X_i) as a polynomial in the T-entries, ordered (i, u, v).
pub fn symbolic_block_det(x: &MatrixTuple, d: usize) -> Result<MultiPoly> {
    let n = x.n();
    let m = x.m();
    let field = x.field();
    let nvars = m * d * d;
    let size = d * n;
    let zero = MultiPoly::zero(nvars, field);
    let mut acc = Mat::from_entries(size, size, vec![zero; size * size])?;
    for (i, xi) in x.matrices().iter().enumerate() {
        // T_i is the generic d×d block in variables t^{(i)}_{uv}.
        let t_entries: Vec<MultiPoly> =
            (0..d * d).map(|uv| MultiPoly::var(nvars, i * d * d + uv, field)).collect();
        let t = Mat::from_entries(d, d, t_entries)?;
        let xi_poly_entries: Vec<MultiPoly> = xi
            .entries()
            .iter()
            .map(|c| MultiPoly::constant(nvars, c.clone()))
            .collect();
        let xi_poly = Mat::from_entries(n, n, xi_poly_entries)?;
        acc = acc.add(&t.kronecker(&xi_poly))?;
    }
    Ok(acc.det_laplace())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(n: usize, vals: &[i64]) -> ExactMatrix {
        ExactMatrix::from_i64(n, n, vals, Field::Q)
    }

    fn tuple(n: usize, mats: Vec<ExactMatrix>) -> MatrixTuple {
        MatrixTuple::new(n, mats).unwrap()
    }

    fn scalar_block(v: i64) -> ExactMatrix {
        ExactMatrix::from_i64(1, 1, &[v], Field::Q)
    }

    #[test]
    fn eval_identity_block() {
        let s = BlockSemiInvariant::new(1, vec![scalar_block(1)]).unwrap();
        let x = tuple(2, vec![ExactMatrix::identity(2, Field::Q)]);
        assert_eq!(s.eval(&x).unwrap().to_wire(), "1");
    }

    #[test]
    fn eval_diagonal_pieces() {
        // T=(1,1) on (E11, E22): det(diag(1,1)) = 1.
        let s = BlockSemiInvariant::new(1, vec![scalar_block(1), scalar_block(1)]).unwrap();
        let x = tuple(2, vec![qm(2, &[1, 0, 0, 0]), qm(2, &[0, 0, 0, 1])]);
        assert_eq!(s.eval(&x).unwrap().to_wire(), "1");
    }

    #[test]
    fn eval_nilpotent_vanishes() {
        let s = BlockSemiInvariant::new(1, vec![scalar_block(1)]).unwrap();
        let x = tuple(2, vec![qm(2, &[0, 1, 0, 0])]);
        assert!(s.eval(&x).unwrap().is_zero());
    }

    #[test]
    fn weight_check_examples() {
        let s = BlockSemiInvariant::new(1, vec![scalar_block(1)]).unwrap();
        let x = tuple(2, vec![ExactMatrix::identity(2, Field::Q)]);
        let id = ExactMatrix::identity(2, Field::Q);
        assert!(weight_check(&s, &id, &id, &x).unwrap());
        let a = qm(2, &[2, 0, 0, 1]);
        assert!(weight_check(&s, &a, &id, &x).unwrap());
        let singular = qm(2, &[1, 1, 1, 1]);
        assert!(weight_check(&s, &singular, &id, &x).is_err());
    }

    #[test]
    fn family_is_deterministic() {
        let f1 = nullcone_family(3, 2, 4, 99, Field::Fp(10007)).unwrap();
        let f2 = nullcone_family(3, 2, 4, 99, Field::Fp(10007)).unwrap();
        assert_eq!(f1, f2);
        assert_eq!(f1.len(), 4);
        assert_eq!(f1[0].block_size(), 2);
        assert_eq!(f1[0].degree(3), 6);
        let other_seed = nullcone_family(3, 2, 4, 100, Field::Fp(10007)).unwrap();
        assert_ne!(f1, other_seed);
        assert!(nullcone_family(1, 2, 1, 0, Field::Q).is_err());
    }

    #[test]
    fn exact_membership_examples() {
        // Nilpotent: member.
        let x = tuple(2, vec![qm(2, &[0, 1, 0, 0])]);
        let v = nullcone_member_exact(&x).unwrap();
        assert!(v.member);

        // Identity: non-member.
        let x = tuple(2, vec![ExactMatrix::identity(2, Field::Q)]);
        assert!(!nullcone_member_exact(&x).unwrap().member);

        // (E11, E22): det(t1 E11 + t2 E22) = t1 t2, not identically zero.
        let x = tuple(2, vec![qm(2, &[1, 0, 0, 0]), qm(2, &[0, 0, 0, 1])]);
        assert!(!nullcone_member_exact(&x).unwrap().member);

        // Size cap.
        let big = tuple(4, vec![ExactMatrix::identity(4, Field::Q)]);
        assert!(matches!(nullcone_member_exact(&big), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn randomized_membership_and_replay() {
        let x = tuple(2, vec![qm(2, &[0, 1, 0, 0])]);
        let v = nullcone_member(&x, 40, 7).unwrap();
        assert!(v.member);
        match &v.certificate {
            Certificate::TrialStats { prime, trials, error_bound, .. } => {
                assert!(is_prime_u64(*prime));
                assert!(*prime > 1 << 60);
                assert_eq!(*trials, 40);
                // (dn/p)^40 < 2^-40
                let two = BigRational::new(BigInt::from(1), BigInt::from(2u64.pow(40)));
                assert!(error_bound < &two);
            }
            _ => panic!("expected trial stats"),
        }

        let y = tuple(2, vec![ExactMatrix::identity(2, Field::Q)]);
        let v = nullcone_member(&y, 40, 7).unwrap();
        assert!(!v.member);
        match &v.certificate {
            Certificate::Witness { prime, blocks, value, .. } => {
                // Replay: the recorded blocks reproduce the nonzero value.
                let field = Field::Fp(*prime);
                let replay_blocks: Vec<ExactMatrix> = blocks
                    .iter()
                    .map(|b| {
                        let entries =
                            b.iter().map(|&v| FieldScalar::Fp { value: v, modulus: *prime }).collect();
                        ExactMatrix::new(1, 1, entries, field).unwrap()
                    })
                    .collect();
                let inv = BlockSemiInvariant::new(1, replay_blocks).unwrap();
                let val = inv.eval(&y.reduce_mod(*prime).unwrap()).unwrap();
                assert_eq!(val, FieldScalar::Fp { value: *value, modulus: *prime });
            }
            _ => panic!("expected witness"),
        }
    }

    #[test]
    fn verdicts_are_seed_deterministic() {
        let x = tuple(2, vec![qm(2, &[1, 2, 3, 4])]);
        let a = nullcone_member(&x, 5, 42).unwrap();
        let b = nullcone_member(&x, 5, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scaling_homogeneity() {
        // eval(λX) = λ^{dn} eval(X).
        let s = BlockSemiInvariant::new(
            2,
            vec![qm(2, &[1, 2, 0, 1]), qm(2, &[0, 1, 1, 3])],
        )
        .unwrap();
        let x = tuple(3, vec![qm(3, &[1, 2, 3, 4, 5, 6, 7, 8, 10]), qm(3, &[1, 0, 0, 0, 2, 0, 0, 0, 3])]);
        let lam = Field::Q.from_i64(5);
        let lhs = s.eval(&x.scale(&lam)).unwrap();
        let rhs = &lam.pow((s.degree(3)) as i64).unwrap() * &s.eval(&x).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn prime_table_is_large_and_prime() {
        let t = prime_table();
        assert_eq!(t[0], (1u64 << 61) - 1);
        assert!(t.iter().all(|&p| is_prime_u64(p) && p > (1 << 60) && p < (1 << 62)));
        assert_eq!(t.len(), 8);
    }
}
