//! Generation measurements and cross-checks.
//!
//! Two independent engines compute invariant dimensions: the character
//! engine in [`crate::hilbert`] and the Lie-algebra nullspace oracle here
//! ([`lie_invariant_dim`]), which row-reduces the derivation action of the
//! acting group's Lie algebra on the degree-d monomial space over ℚ.
//! Generation profiles measure β degree by degree against either target,
//! [`bound_value`] evaluates the closed-form degree bounds, and the
//! remaining entry points do null-cone zero-locus enumeration and
//! separation-witness search.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar};
use crate::hilbert::{invariant_dim, InvarianceMode, RingDescriptor};
use crate::matrix::Mat;
use crate::poly::{monomials_of_degree, MultiPoly};
use crate::quiver::{path_counts, DimVector, Quiver, Weight};
use crate::semiinv::{nullcone_member_exact, BlockSemiInvariant};
use crate::words::{
    cycle_generators, enumerate_word_generators, generic_matrix_tuple, generic_quiver_matrices,
    CycleInvariant, MatrixTuple, WordInvariant,
};

/// Columns beyond this are refused rather than approximated.
pub const MONOMIAL_CAP: usize = 20_000;

// ---------------------------------------------------------------------------
// Lie-algebra oracle
// ---------------------------------------------------------------------------

/// Coordinates of Rep(Q,α) in (arrow, row, col) order.
struct CoordSpace {
    /// (arrow, row, col) per variable, rows indexing the head space.
    coords: Vec<(usize, usize, usize)>,
    /// variable index by arrow: arrow_base[a] .. arrow_base[a] + rows*cols
    arrow_base: Vec<usize>,
}

fn coord_space(quiver: &Quiver, alpha: &DimVector) -> CoordSpace {
    let mut coords = Vec::new();
    let mut arrow_base = Vec::with_capacity(quiver.num_arrows());
    for (ai, a) in quiver.arrows().iter().enumerate() {
        arrow_base.push(coords.len());
        for r in 0..alpha.at(a.head) {
            for c in 0..alpha.at(a.tail) {
                coords.push((ai, r, c));
            }
        }
    }
    CoordSpace { coords, arrow_base }
}

/// Per-vertex torus weight of a monomial: +e_c at the tail, −e_r at the head
/// per unit of exponent.
fn monomial_weight(
    quiver: &Quiver,
    alpha: &DimVector,
    space: &CoordSpace,
    mono: &[u32],
) -> Vec<Vec<i64>> {
    let mut w: Vec<Vec<i64>> = alpha.dims().iter().map(|&d| vec![0i64; d]).collect();
    for (&e, &(ai, r, c)) in mono.iter().zip(&space.coords) {
        if e == 0 {
            continue;
        }
        let a = &quiver.arrows()[ai];
        w[a.tail][c] += e as i64;
        w[a.head][r] -= e as i64;
    }
    w
}

fn weight_matches(mode: &InvarianceMode, k: usize, w: &[Vec<i64>]) -> bool {
    match mode {
        InvarianceMode::Gl => w.iter().all(|v| v.iter().all(|&x| x == 0)),
        InvarianceMode::Sl => w.iter().all(|v| v.windows(2).all(|p| p[0] == p[1])),
        InvarianceMode::Sigma(sigma) => w
            .iter()
            .zip(sigma.values())
            .all(|(v, &s)| v.iter().all(|&x| x == k as i64 * s)),
    }
}

/// Sparse exact row-echelon accumulator over ℚ.
struct RationalEchelon {
    /// pivot column → reduced row (sorted sparse entries, leading coeff 1)
    pivots: BTreeMap<usize, Vec<(usize, BigRational)>>,
}

impl RationalEchelon {
    fn new() -> Self {
        RationalEchelon { pivots: BTreeMap::new() }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the pivots; inserts the remainder if nonzero.
    /// Returns true if the row increased the rank.
    fn insert(&mut self, mut row: Vec<(usize, BigRational)>) -> bool {
        loop {
            row.retain(|(_, c)| !c.is_zero());
            let Some(&(lead, ref lc)) = row.first() else {
                return false;
            };
            let lc = lc.clone();
            match self.pivots.get(&lead) {
                None => {
                    let inv = lc.recip();
                    for (_, c) in &mut row {
                        *c *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(pivot) => {
                    row = sub_scaled(&row, pivot, &lc);
                }
            }
        }
    }
}

/// row − factor · pivot over sparse sorted vectors.
fn sub_scaled(
    row: &[(usize, BigRational)],
    pivot: &[(usize, BigRational)],
    factor: &BigRational,
) -> Vec<(usize, BigRational)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        match (row.get(i), pivot.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                let v = vi - &(factor * vj);
                if !v.is_zero() {
                    out.push((*ci, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (Some(_), Some((cj, vj))) => {
                out.push((*cj, -(factor * vj)));
                j += 1;
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (None, Some((cj, vj))) => {
                out.push((*cj, -(factor * vj)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Dimension of the joint nullspace of the Lie-algebra derivations on the
/// degree-d monomial space over ℚ — the independent characteristic-0 oracle
/// for [`invariant_dim`]. Torus directions are handled exactly by
/// restricting to monomials of the matching diagonal weight; the stacked
/// off-diagonal derivations E_uv per vertex are then row-reduced.
pub fn lie_invariant_dim(ring: &RingDescriptor, d: usize) -> Result<u64> {
    let (quiver, alpha, mode) = ring.quiver_form();
    match &mode {
        InvarianceMode::Sigma(_) => {
            let window = ring.si_scan_window(d)?.expect("sigma kind has a window");
            let mut total = 0u64;
            for e in 0..=window {
                total += lie_nullity_at_degree(&quiver, &alpha, &mode, d, e)?;
            }
            Ok(total)
        }
        _ => lie_nullity_at_degree(&quiver, &alpha, &mode, 0, d),
    }
}

/// Nullity of the stacked derivations on the weight-filtered monomials of
/// polynomial degree e (series degree k only meaningful for the σ mode).
fn lie_nullity_at_degree(
    quiver: &Quiver,
    alpha: &DimVector,
    mode: &InvarianceMode,
    k: usize,
    e: usize,
) -> Result<u64> {
    let space = coord_space(quiver, alpha);
    let nvars = space.coords.len();
    if nvars == 0 {
        let w: Vec<Vec<i64>> = alpha.dims().iter().map(|&d| vec![0i64; d]).collect();
        return Ok((e == 0 && weight_matches(mode, k, &w)) as u64);
    }
    check_cap(nvars, e)?;

    // The derivations preserve the per-arrow multidegree, so work block by
    // block over compositions of e.
    let num_arrows = quiver.num_arrows();
    let mut total_nullity = 0u64;
    for block in monomials_of_degree(num_arrows, e) {
        let mut per_arrow: Vec<Vec<Vec<u32>>> = Vec::with_capacity(num_arrows);
        let mut empty_block = false;
        for (ai, &ta) in block.iter().enumerate() {
            let arrow = &quiver.arrows()[ai];
            let arrow_vars = alpha.at(arrow.head) * alpha.at(arrow.tail);
            if arrow_vars == 0 {
                if ta > 0 {
                    empty_block = true;
                    break;
                }
                per_arrow.push(vec![vec![]]);
            } else {
                per_arrow.push(monomials_of_degree(arrow_vars, ta as usize));
            }
        }
        if empty_block {
            continue;
        }
        // Cartesian product of per-arrow monomials.
        let mut monos: Vec<Vec<u32>> = vec![Vec::with_capacity(nvars)];
        for seg in &per_arrow {
            let mut next = Vec::with_capacity(monos.len() * seg.len());
            for prefix in &monos {
                for s in seg {
                    let mut v = prefix.clone();
                    v.extend_from_slice(s);
                    next.push(v);
                }
            }
            monos = next;
        }
        let domain: Vec<Vec<u32>> = monos
            .into_iter()
            .filter(|m| weight_matches(mode, k, &monomial_weight(quiver, alpha, &space, m)))
            .collect();
        if domain.is_empty() {
            continue;
        }
        total_nullity += block_nullity(quiver, alpha, &space, &domain)?;
    }
    Ok(total_nullity)
}

fn check_cap(nvars: usize, d: usize) -> Result<()> {
    let mut c: u128 = 1;
    for i in 0..d {
        c = c.saturating_mul((nvars + i) as u128) / (i + 1) as u128;
        if c > MONOMIAL_CAP as u128 {
            return Err(Error::ResourceCap(format!(
                "degree-{d} monomial space over {nvars} coordinates exceeds {MONOMIAL_CAP} columns"
            )));
        }
    }
    Ok(())
}

fn block_nullity(
    quiver: &Quiver,
    alpha: &DimVector,
    space: &CoordSpace,
    domain: &[Vec<u32>],
) -> Result<u64> {
    // rows[(vertex, u, v)][image monomial] -> sparse coefficients by column
    let mut rows: BTreeMap<(usize, usize, usize, Vec<u32>), BTreeMap<usize, i64>> = BTreeMap::new();
    for (col, mono) in domain.iter().enumerate() {
        for (i, &ai_dim) in alpha.dims().iter().enumerate() {
            for u in 0..ai_dim {
                for v in 0..ai_dim {
                    if u == v {
                        continue;
                    }
                    // E_uv at vertex i: Σ_{a: ta=i} Σ_r x_{ru} ∂/∂x_{rv}
                    //                 − Σ_{a: ha=i} Σ_c x_{vc} ∂/∂x_{uc}
                    for (ai, a) in quiver.arrows().iter().enumerate() {
                        let base = space.arrow_base[ai];
                        let cols_of_a = alpha.at(a.tail);
                        if a.tail == i {
                            for r in 0..alpha.at(a.head) {
                                let from = base + r * cols_of_a + v;
                                let exp = mono[from];
                                if exp == 0 {
                                    continue;
                                }
                                let to = base + r * cols_of_a + u;
                                let mut img = mono.clone();
                                img[from] -= 1;
                                img[to] += 1;
                                *rows
                                    .entry((i, u, v, img))
                                    .or_default()
                                    .entry(col)
                                    .or_insert(0) += exp as i64;
                            }
                        }
                        if a.head == i {
                            for c in 0..cols_of_a {
                                let from = base + u * cols_of_a + c;
                                let exp = mono[from];
                                if exp == 0 {
                                    continue;
                                }
                                let to = base + v * cols_of_a + c;
                                let mut img = mono.clone();
                                img[from] -= 1;
                                img[to] += 1;
                                *rows
                                    .entry((i, u, v, img))
                                    .or_default()
                                    .entry(col)
                                    .or_insert(0) -= exp as i64;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut echelon = RationalEchelon::new();
    for (_, row) in rows {
        let sparse: Vec<(usize, BigRational)> = row
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(col, c)| (col, BigRational::from(BigInt::from(c))))
            .collect();
        if !sparse.is_empty() {
            echelon.insert(sparse);
        }
    }
    Ok((domain.len() - echelon.rank()) as u64)
}

// ---------------------------------------------------------------------------
// Generation profiles
// ---------------------------------------------------------------------------

/// One generator the harness can expand exactly: a Donkin word, an oriented
/// cycle, or one t-coefficient of det(t_1 X_1 + … + t_m X_m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Word(WordInvariant),
    Cycle(CycleInvariant),
    /// Coefficient of Π t_i^{e_i} (with Σ e_i = n) in det(Σ t_i X_i); a
    /// degree-n matrix semi-invariant.
    DetCoeff { exponent: Vec<u32> },
}

impl GeneratorSpec {
    pub fn degree(&self, ring: &RingDescriptor) -> Result<usize> {
        match (self, ring) {
            (GeneratorSpec::Word(w), RingDescriptor::MatrixInvariants { n, .. }) => Ok(w.degree(*n)),
            (GeneratorSpec::Cycle(c), RingDescriptor::QuiverInvariants { quiver, alpha }) => {
                Ok(c.degree(quiver, alpha))
            }
            (GeneratorSpec::DetCoeff { .. }, RingDescriptor::MatrixSemiInvariants { n, .. }) => {
                Ok(*n)
            }
            _ => Err(Error::Invalid("generator kind does not match ring kind".into())),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GeneratorSpec::Word(w) => format!("word{:?};j={}", w.word(), w.j()),
            GeneratorSpec::Cycle(c) => format!("cycle{:?};j={}", c.cycle(), c.j()),
            GeneratorSpec::DetCoeff { exponent } => format!("detcoeff{exponent:?}"),
        }
    }

    /// Exact expansion over the ring's coordinate variables in `field`.
    pub fn expand(&self, ring: &RingDescriptor, field: Field) -> Result<MultiPoly> {
        match (self, ring) {
            (GeneratorSpec::Word(w), RingDescriptor::MatrixInvariants { n, m }) => {
                w.eval_on(&generic_matrix_tuple(*n, *m, field))
            }
            (GeneratorSpec::Cycle(c), RingDescriptor::QuiverInvariants { quiver, alpha }) => {
                c.eval_on(&generic_quiver_matrices(quiver, alpha, field))
            }
            (GeneratorSpec::DetCoeff { exponent }, RingDescriptor::MatrixSemiInvariants { n, m }) => {
                if exponent.len() != *m
                    || exponent.iter().map(|&e| e as usize).sum::<usize>() != *n
                {
                    return Err(Error::Invalid("det coefficient exponent must sum to n".into()));
                }
                let parts = det_coefficient_family(*n, *m, field)?;
                parts
                    .get(exponent)
                    .cloned()
                    .ok_or_else(|| Error::Invalid("vanishing det coefficient requested".into()))
            }
            _ => Err(Error::Invalid("generator kind does not match ring kind".into())),
        }
    }
}

/// All t-coefficients of det(Σ t_i X_i) as polynomials in the x-variables,
/// keyed by the t-exponent.
pub fn det_coefficient_family(
    n: usize,
    m: usize,
    field: Field,
) -> Result<BTreeMap<Vec<u32>, MultiPoly>> {
    // Variables: t_1..t_m then the x-variables in (i,a,b) order.
    let nvars = m + m * n * n;
    let mut entries = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut entry = MultiPoly::zero(nvars, field);
            for i in 0..m {
                let t = MultiPoly::var(nvars, i, field);
                let x = MultiPoly::var(nvars, m + i * n * n + a * n + b, field);
                entry = entry.add(&t.mul(&x));
            }
            entries.push(entry);
        }
    }
    let det = Mat::from_entries(n, n, entries)?.det_laplace();
    let t_group: Vec<usize> = (0..m).collect();
    let mut out = BTreeMap::new();
    for (t_exp, part) in det.collect_by(&t_group) {
        out.insert(t_exp, part.drop_leading_vars(m)?);
    }
    Ok(out)
}

/// The default generating family for a ring: Donkin words for S(n,m),
/// the size-1 block determinant coefficients for R(n,m), oriented cycles
/// for I(Q,α).
pub fn default_generators(ring: &RingDescriptor, max_degree: usize) -> Result<Vec<GeneratorSpec>> {
    match ring {
        RingDescriptor::MatrixInvariants { n, m } => Ok(enumerate_word_generators(*n, *m, max_degree)?
            .into_iter()
            .map(GeneratorSpec::Word)
            .collect()),
        RingDescriptor::MatrixSemiInvariants { n, m } => {
            if *n > max_degree {
                return Ok(Vec::new());
            }
            Ok(monomials_of_degree(*m, *n)
                .into_iter()
                .map(|exponent| GeneratorSpec::DetCoeff { exponent })
                .collect())
        }
        RingDescriptor::QuiverInvariants { quiver, alpha } => {
            Ok(cycle_generators(quiver, alpha, max_degree)?
                .into_iter()
                .map(GeneratorSpec::Cycle)
                .collect())
        }
        RingDescriptor::QuiverSemiInvariants { .. } => Err(Error::Invalid(
            "no default generator family for weight-graded semi-invariants".into(),
        )),
    }
}

/// Reduced row-echelon accumulator for polynomials over an exact field,
/// keyed by leading monomial.
struct PolyEchelon {
    pivots: BTreeMap<Vec<u32>, MultiPoly>,
}

impl PolyEchelon {
    fn new() -> Self {
        PolyEchelon { pivots: BTreeMap::new() }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn leading(p: &MultiPoly) -> Option<(Vec<u32>, FieldScalar)> {
        p.leading_term().map(|(e, c)| (e.clone(), c.clone()))
    }

    fn insert(&mut self, mut p: MultiPoly) -> bool {
        while let Some((lead, lc)) = Self::leading(&p) {
            match self.pivots.get(&lead) {
                None => {
                    let inv = lc.inv().expect("leading coefficient nonzero");
                    self.pivots.insert(lead, p.scale(&inv));
                    return true;
                }
                Some(pivot) => {
                    p = p.sub(&pivot.scale(&lc));
                }
            }
        }
        false
    }

    fn basis(&self) -> Vec<MultiPoly> {
        self.pivots.values().cloned().collect()
    }
}

/// One row of a generation scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: usize,
    pub target_dim: u64,
    pub spanned_dim: u64,
    pub new_generators_needed: u64,
}

/// Degree-by-degree generation measurement. `measured_beta` is the largest
/// degree that still needed new generators (0 when none did); degrees above
/// `max_degree` are unexplored, so the measurement certifies generation only
/// through the scan cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub ring: RingDescriptor,
    pub field: Field,
    pub max_degree: usize,
    pub rows: Vec<DegreeRow>,
    pub measured_beta: usize,
}

/// Measures generation degree by degree: the degree-d span is
/// (products of strictly-lower-degree span elements) + degree-d generators,
/// target dimensions come from the character engine over ℚ and are imported
/// unchanged for 𝔽_p runs.
pub fn generation_profile(
    ring: &RingDescriptor,
    generators: &[GeneratorSpec],
    max_degree: usize,
    field: Field,
) -> Result<DegreeProfile> {
    // Expand generators once, bucketed by degree.
    let mut by_degree: BTreeMap<usize, Vec<MultiPoly>> = BTreeMap::new();
    for g in generators {
        let deg = g.degree(ring)?;
        if deg == 0 || deg > max_degree {
            continue;
        }
        let p = g.expand(ring, field)?;
        if !p.is_homogeneous_of(deg) {
            return Err(Error::NonHomogeneous { expected: deg });
        }
        if !p.is_zero() {
            by_degree.entry(deg).or_default().push(p);
        }
    }

    let mut rows = Vec::with_capacity(max_degree + 1);
    rows.push(DegreeRow { degree: 0, target_dim: 1, spanned_dim: 1, new_generators_needed: 0 });
    let mut pieces: BTreeMap<usize, Vec<MultiPoly>> = BTreeMap::new();
    let mut measured_beta = 0;
    for d in 1..=max_degree {
        let target = invariant_dim(ring, d)?;
        let mut echelon = PolyEchelon::new();
        for e in 1..d {
            let lo = match pieces.get(&e) {
                Some(v) => v,
                None => continue,
            };
            let Some(hi) = pieces.get(&(d - e)) else { continue };
            if e > d - e {
                continue;
            }
            for (i, g) in lo.iter().enumerate() {
                let start = if e == d - e { i } else { 0 };
                for h in &hi[start..] {
                    echelon.insert(g.mul(h));
                }
            }
        }
        let low_rank = echelon.rank() as u64;
        if low_rank > target {
            return Err(Error::Invalid(format!(
                "degree-{d} span exceeds the invariant dimension; generators are not invariants"
            )));
        }
        let new_needed = target - low_rank;
        if let Some(gens) = by_degree.get(&d) {
            for g in gens {
                echelon.insert(g.clone());
            }
        }
        let spanned = echelon.rank() as u64;
        if spanned > target {
            return Err(Error::Invalid(format!(
                "degree-{d} span exceeds the invariant dimension; generators are not invariants"
            )));
        }
        if new_needed > 0 {
            measured_beta = d;
        }
        rows.push(DegreeRow {
            degree: d,
            target_dim: target,
            spanned_dim: spanned,
            new_generators_needed: new_needed,
        });
        pieces.insert(d, echelon.basis());
    }
    Ok(DegreeProfile {
        ring: ring.clone(),
        field,
        max_degree,
        rows,
        measured_beta,
    })
}

// ---------------------------------------------------------------------------
// Bound formulas
// ---------------------------------------------------------------------------

/// A degree-bound request; field names follow the formulas' parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundRequest {
    /// β(S(n,m)) ≤ (m+1)·n⁴.
    Mi { n: u64, m: u64 },
    /// β(R(n,m)) ≤ m·n⁴.
    Msi { n: u64, m: u64 },
    /// β(R(n,m)) ≤ m·n³·(n−1) for n ≥ 2.
    MsiStrong { n: u64, m: u64 },
    /// β(I(Q,α)) ≤ (M+1)·N⁴ with N = Σ α_i, M = |Q₁|.
    QuiverInv { total_dim: u64, arrows: u64 },
    /// β(SI(Q,α,σ)) ≤ m·n³ with n = |σ|_α and m = Σ σ₊(x)·b_{x,y}·σ₋(y),
    /// for acyclic Q.
    Si1 { quiver: Quiver, alpha: DimVector, sigma: Weight },
    /// Weight-norm bound 3·r·n²·‖α‖₁^{4n} / (128·(n−1)^{4n−4}), n = |Q₀| ≥ 2.
    Si2 { num_vertices: u64, alpha_norm1: u64, r: u64 },
    /// β_sep(S(n,m)) ≤ n⁶ and β_sep(R(n,m)) ≤ n⁶, independent of m.
    Sep { n: u64 },
    /// max{d_1,…,d_l, d_1+⋯+d_l + r} from null-cone degrees and the Hilbert
    /// series degree bound r.
    DerksenStyle { degrees: Vec<u64>, r: i64 },
}

/// Conservative stand-in for the Krull dimension of SI(Q,α):
/// dim Rep(Q,α) = Σ_a α(ta)·α(ha).
pub fn rep_dim(quiver: &Quiver, alpha: &DimVector) -> u64 {
    quiver
        .arrows()
        .iter()
        .map(|a| (alpha.at(a.tail) * alpha.at(a.head)) as u64)
        .sum()
}

fn big(x: u64) -> BigRational {
    BigRational::from(BigInt::from(x))
}

/// Exact value of the requested bound formula (rational for the |σ|_α-based
/// kinds, integral otherwise).
pub fn bound_value(req: &BoundRequest) -> Result<BigRational> {
    match req {
        BoundRequest::Mi { n, m } => Ok(big((m + 1) * n.pow(4))),
        BoundRequest::Msi { n, m } => Ok(big(m * n.pow(4))),
        BoundRequest::MsiStrong { n, m } => {
            if *n < 2 {
                return Err(Error::Invalid("msi-strong needs n ≥ 2".into()));
            }
            Ok(big(m * n.pow(3) * (n - 1)))
        }
        BoundRequest::QuiverInv { total_dim, arrows } => Ok(big((arrows + 1) * total_dim.pow(4))),
        BoundRequest::Si1 { quiver, alpha, sigma } => {
            let b = path_counts(quiver)?;
            let nv = quiver.num_vertices();
            let mut m = 0i64;
            for x in 0..nv {
                let sp = sigma.at(x).max(0);
                if sp == 0 {
                    continue;
                }
                for y in 0..nv {
                    let sm = (-sigma.at(y)).max(0);
                    m += sp * b[&(x, y)] as i64 * sm;
                }
            }
            let norm = crate::quiver::sigma_norm(sigma, alpha)?;
            let n = norm.as_rational().expect("sigma_norm is rational").clone();
            Ok(BigRational::from(BigInt::from(m)) * &n * &n * &n)
        }
        BoundRequest::Si2 { num_vertices, alpha_norm1, r } => {
            let n = *num_vertices;
            if n < 2 {
                return Err(Error::Invalid(
                    "si2 bound degenerates for a single vertex; n ≥ 2 required".into(),
                ));
            }
            let num = big(3) * big(*r) * big(n * n) * big(*alpha_norm1).pow(4 * n as i32);
            let den = big(128) * big(n - 1).pow((4 * n - 4) as i32);
            Ok(num / den)
        }
        BoundRequest::Sep { n } => Ok(big(n.pow(6))),
        BoundRequest::DerksenStyle { degrees, r } => {
            if degrees.is_empty() {
                return Err(Error::Invalid("derksen-style bound needs null-cone degrees".into()));
            }
            let max_d = *degrees.iter().max().unwrap() as i64;
            let sum: i64 = degrees.iter().map(|&d| d as i64).sum();
            Ok(BigRational::from(BigInt::from(max_d.max(sum + r))))
        }
    }
}

// ---------------------------------------------------------------------------
// Null-cone zero locus by enumeration
// ---------------------------------------------------------------------------

/// Enumerates every m-tuple of n×n matrices over 𝔽_q and checks that the
/// family's common zero set coincides with exact-mode null-cone membership.
pub fn nullcone_zero_locus_check(
    n: usize,
    m: usize,
    q: u64,
    family: &[BlockSemiInvariant],
) -> Result<bool> {
    let field = Field::fp(q)?;
    let cells = m * n * n;
    let total = (q as u128).checked_pow(cells as u32).ok_or_else(|| {
        Error::ResourceCap("enumeration size overflows".into())
    })?;
    if total > 100_000 {
        return Err(Error::ResourceCap(format!(
            "{q}^{cells} tuples exceed the enumeration cap"
        )));
    }
    let mut digits = vec![0u64; cells];
    loop {
        let matrices: Vec<_> = (0..m)
            .map(|i| {
                let entries = digits[i * n * n..(i + 1) * n * n]
                    .iter()
                    .map(|&v| FieldScalar::Fp { value: v, modulus: q })
                    .collect();
                crate::matrix::ExactMatrix::new(n, n, entries, field)
            })
            .collect::<Result<Vec<_>>>()?;
        let x = MatrixTuple::new(n, matrices)?;
        let family_vanishes = family
            .iter()
            .map(|s| s.eval(&x).map(|v| v.is_zero()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|z| z);
        let member = nullcone_member_exact(&x)?.member;
        if family_vanishes != member {
            return Ok(false);
        }
        // increment base-q counter
        let mut pos = 0;
        loop {
            if pos == cells {
                return Ok(true);
            }
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Separation search
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationMode {
    /// Enumerate word generators of the m-tuple directly.
    Direct,
    /// Search generators of n²-tuples composed with seeded linear
    /// specializations of the m given matrices (the polarization reduction;
    /// useful when m > n²).
    Reduced,
}

/// A separating invariant, including the specialization used in reduced mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationWitness {
    pub word: WordInvariant,
    /// Row j gives the coefficients of Z_j = Σ_i C[j][i]·X_i (reduced mode).
    pub specialization: Option<Vec<Vec<i64>>>,
    pub value_x: FieldScalar,
    pub value_y: FieldScalar,
}

const REDUCED_SAMPLES: usize = 16;

/// First enumerated generator of degree ≤ max_degree taking different values
/// on X and Y, or `None`. A `None` answer only certifies "no witness up to
/// the scan degree".
pub fn separate(
    x: &MatrixTuple,
    y: &MatrixTuple,
    max_degree: usize,
    mode: SeparationMode,
    seed: u64,
) -> Result<Option<SeparationWitness>> {
    if x.n() != y.n() || x.m() != y.m() {
        return Err(Error::ShapeMismatch("tuples must share (n, m)".into()));
    }
    if max_degree == 0 {
        return Err(Error::Invalid("separation scan needs max-degree ≥ 1".into()));
    }
    let n = x.n();
    match mode {
        SeparationMode::Direct => {
            for w in enumerate_word_generators(n, x.m(), max_degree)? {
                let vx = w.eval(x)?;
                let vy = w.eval(y)?;
                if vx != vy {
                    return Ok(Some(SeparationWitness {
                        word: w,
                        specialization: None,
                        value_x: vx,
                        value_y: vy,
                    }));
                }
            }
            Ok(None)
        }
        SeparationMode::Reduced => {
            let gens = enumerate_word_generators(n, n * n, max_degree)?;
            for sample in 0..REDUCED_SAMPLES {
                let mut rng = ChaCha20Rng::seed_from_u64(seed);
                rng.set_stream(sample as u64);
                let coeffs: Vec<Vec<i64>> = (0..n * n)
                    .map(|_| (0..x.m()).map(|_| (rng.next_u64() % 7) as i64 - 3).collect())
                    .collect();
                let zx = specialize(x, &coeffs)?;
                let zy = specialize(y, &coeffs)?;
                for w in &gens {
                    let vx = w.eval(&zx)?;
                    let vy = w.eval(&zy)?;
                    if vx != vy {
                        return Ok(Some(SeparationWitness {
                            word: w.clone(),
                            specialization: Some(coeffs),
                            value_x: vx,
                            value_y: vy,
                        }));
                    }
                }
            }
            Ok(None)
        }
    }
}

fn specialize(x: &MatrixTuple, coeffs: &[Vec<i64>]) -> Result<MatrixTuple> {
    let n = x.n();
    let field = x.field();
    let mats = coeffs
        .iter()
        .map(|row| {
            let mut acc = crate::matrix::ExactMatrix::zero(n, n, field);
            for (c, xi) in row.iter().zip(x.matrices()) {
                acc = acc.add(&xi.scale(&field.from_i64(*c)))?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    MatrixTuple::new(n, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExactMatrix;

    fn qm(n: usize, vals: &[i64]) -> ExactMatrix {
        ExactMatrix::from_i64(n, n, vals, Field::Q)
    }

    #[test]
    fn lie_oracle_small_values() {
        let s21 = RingDescriptor::matrix_invariants(2, 1).unwrap();
        assert_eq!(lie_invariant_dim(&s21, 0).unwrap(), 1);
        assert_eq!(lie_invariant_dim(&s21, 2).unwrap(), 2);
        let r21 = RingDescriptor::matrix_semi_invariants(2, 1).unwrap();
        assert_eq!(lie_invariant_dim(&r21, 1).unwrap(), 0);
        assert_eq!(lie_invariant_dim(&r21, 2).unwrap(), 1);
    }

    #[test]
    fn oracle_matches_character_engine_on_small_grid() {
        for (ring, dmax) in [
            (RingDescriptor::matrix_invariants(2, 1).unwrap(), 5),
            (RingDescriptor::matrix_semi_invariants(2, 1).unwrap(), 4),
            (RingDescriptor::matrix_invariants(2, 2).unwrap(), 3),
        ] {
            for d in 0..=dmax {
                assert_eq!(
                    lie_invariant_dim(&ring, d).unwrap(),
                    invariant_dim(&ring, d).unwrap(),
                    "{ring:?} degree {d}"
                );
            }
        }
    }

    #[test]
    fn profile_s21_beta_two() {
        let ring = RingDescriptor::matrix_invariants(2, 1).unwrap();
        let gens = default_generators(&ring, 4).unwrap();
        let profile = generation_profile(&ring, &gens, 4, Field::Q).unwrap();
        assert_eq!(profile.measured_beta, 2);
        let targets: Vec<u64> = profile.rows.iter().map(|r| r.target_dim).collect();
        assert_eq!(targets, vec![1, 1, 2, 2, 3]);
        for row in &profile.rows {
            assert_eq!(row.spanned_dim, row.target_dim, "degree {}", row.degree);
        }
    }

    #[test]
    fn profile_r22_beta_two() {
        let ring = RingDescriptor::matrix_semi_invariants(2, 2).unwrap();
        let gens = default_generators(&ring, 6).unwrap();
        assert_eq!(gens.len(), 3);
        let profile = generation_profile(&ring, &gens, 6, Field::Q).unwrap();
        assert_eq!(profile.measured_beta, 2);
        let targets: Vec<u64> = profile.rows.iter().map(|r| r.target_dim).collect();
        assert_eq!(targets, vec![1, 0, 3, 0, 6, 0, 10]);
        for row in &profile.rows {
            assert_eq!(row.spanned_dim, row.target_dim);
        }
    }

    #[test]
    fn profile_monotone_under_more_generators() {
        let ring = RingDescriptor::matrix_invariants(2, 1).unwrap();
        let all = default_generators(&ring, 4).unwrap();
        let fewer: Vec<GeneratorSpec> = all
            .iter()
            .filter(|g| g.degree(&ring).unwrap() <= 1)
            .cloned()
            .collect();
        let p_small = generation_profile(&ring, &fewer, 4, Field::Q).unwrap();
        let p_big = generation_profile(&ring, &all, 4, Field::Q).unwrap();
        for (a, b) in p_small.rows.iter().zip(&p_big.rows) {
            assert!(a.spanned_dim <= b.spanned_dim);
            assert!(a.new_generators_needed >= b.new_generators_needed);
        }
    }

    #[test]
    fn bound_values_from_formulas() {
        assert_eq!(bound_value(&BoundRequest::Mi { n: 2, m: 2 }).unwrap(), big(48));
        assert_eq!(bound_value(&BoundRequest::Msi { n: 2, m: 2 }).unwrap(), big(32));
        assert_eq!(bound_value(&BoundRequest::MsiStrong { n: 2, m: 2 }).unwrap(), big(16));
        assert_eq!(
            bound_value(&BoundRequest::QuiverInv { total_dim: 3, arrows: 1 }).unwrap(),
            big(162)
        );
        assert_eq!(
            bound_value(&BoundRequest::Si2 { num_vertices: 2, alpha_norm1: 2, r: 1 }).unwrap(),
            big(24)
        );
        assert_eq!(bound_value(&BoundRequest::Sep { n: 2 }).unwrap(), big(64));
        assert_eq!(
            bound_value(&BoundRequest::DerksenStyle { degrees: vec![2, 2, 2], r: 0 }).unwrap(),
            big(6)
        );
        assert!(bound_value(&BoundRequest::Si2 { num_vertices: 1, alpha_norm1: 3, r: 1 }).is_err());
    }

    #[test]
    fn si1_bound_on_a2() {
        let q = Quiver::kronecker(1);
        let alpha = DimVector::new(&q, vec![1, 1]).unwrap();
        let sigma = Weight::new(&q, vec![1, -1]).unwrap();
        // n = |σ|_α = 1, m = σ+(x) b_{x,y} σ-(y) = 1 → bound 1.
        assert_eq!(
            bound_value(&BoundRequest::Si1 { quiver: q, alpha, sigma }).unwrap(),
            big(1)
        );
    }

    #[test]
    fn zero_locus_n2_m1() {
        let field = Field::fp(3).unwrap();
        let det_only = BlockSemiInvariant::new(
            1,
            vec![ExactMatrix::identity(1, field)],
        )
        .unwrap();
        assert!(nullcone_zero_locus_check(2, 1, 3, &[det_only]).unwrap());
    }

    #[test]
    fn separate_examples() {
        let x = MatrixTuple::new(2, vec![qm(2, &[1, 0, 0, 2])]).unwrap();
        let y = MatrixTuple::new(2, vec![qm(2, &[1, 0, 0, 3])]).unwrap();
        let w = separate(&x, &y, 1, SeparationMode::Direct, 0).unwrap().unwrap();
        assert_eq!(w.word.word(), [1]);
        assert_eq!(w.word.j(), 1);
        assert_eq!(w.value_x.to_wire(), "-3");
        assert_eq!(w.value_y.to_wire(), "-4");

        // Nilpotent vs zero: no invariant separates them.
        let nil = MatrixTuple::new(2, vec![qm(2, &[0, 1, 0, 0])]).unwrap();
        let zero = MatrixTuple::new(2, vec![qm(2, &[0, 0, 0, 0])]).unwrap();
        assert!(separate(&nil, &zero, 6, SeparationMode::Direct, 0).unwrap().is_none());

        // X = Y trivially has no witness.
        assert!(separate(&x, &x, 3, SeparationMode::Direct, 0).unwrap().is_none());
    }

    #[test]
    fn separate_reduced_mode_runs() {
        // m = 5 > n² = 4 triggers the reduction in practice.
        let mats_x: Vec<_> = (0..5).map(|i| qm(2, &[i, 1, 0, 2])).collect();
        let mats_y: Vec<_> = (0..5).map(|i| qm(2, &[i, 1, 0, 3])).collect();
        let x = MatrixTuple::new(2, mats_x).unwrap();
        let y = MatrixTuple::new(2, mats_y).unwrap();
        let w = separate(&x, &y, 2, SeparationMode::Reduced, 1).unwrap();
        assert!(w.is_some());
        let w = w.unwrap();
        assert!(w.specialization.is_some());
    }
}
