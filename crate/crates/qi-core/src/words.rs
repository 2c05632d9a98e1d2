//! Word and cycle invariants built from characteristic coefficients.
//!
//! σ_j follows the coefficient convention det(tI − A) = Σ_j σ_j(A) t^j, so
//! tr(A) = −σ_{n−1} and det(A) = (−1)^n σ_0. Words canonicalize to their
//! lexicographically minimal rotation; mirror words are not identified.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar, RingElem};
use crate::matrix::{ExactMatrix, Mat};
use crate::poly::{monomials_of_degree, MultiPoly};
use crate::quiver::{DimVector, Quiver, QuiverRep};

/// A tuple of m square n×n matrices over one field — a point of Mat_{n,n}^m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixTuple {
    n: usize,
    matrices: Vec<ExactMatrix>,
}

impl MatrixTuple {
    pub fn new(n: usize, matrices: Vec<ExactMatrix>) -> Result<Self> {
        let mut field = None;
        for m in &matrices {
            if m.rows() != n || m.cols() != n {
                return Err(Error::ShapeMismatch(format!(
                    "expected {n}x{n} matrices, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            match field {
                None => field = Some(m.field()),
                Some(f) if f != m.field() => return Err(Error::FieldMismatch),
                _ => {}
            }
        }
        Ok(MatrixTuple { n, matrices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> &ExactMatrix {
        &self.matrices[i]
    }

    pub fn field(&self) -> Field {
        self.matrices.first().map(|m| m.field()).unwrap_or(Field::Q)
    }

    /// Entry-wise scalar multiple λ·X (for homogeneity probes).
    pub fn scale(&self, s: &FieldScalar) -> MatrixTuple {
        MatrixTuple {
            n: self.n,
            matrices: self.matrices.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn reduce_mod(&self, p: u64) -> Result<MatrixTuple> {
        let matrices = self
            .matrices
            .iter()
            .map(|m| m.reduce_mod(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixTuple { n: self.n, matrices })
    }
}

/// σ_0..σ_n of a square matrix.
pub fn char_coeffs(a: &ExactMatrix) -> Result<Vec<FieldScalar>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("characteristic coefficients need a square matrix".into()));
    }
    Ok(a.char_coeffs())
}

/// A Donkin generator descriptor: σ_j of the product X_{i_1}···X_{i_k}.
/// Indices are 1-based; polynomial degree is |word|·(n−j).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordInvariant {
    word: Vec<usize>,
    j: usize,
}

impl WordInvariant {
    pub fn new(word: Vec<usize>, j: usize) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Invalid("word must be nonempty".into()));
        }
        if word.iter().any(|&i| i == 0) {
            return Err(Error::Invalid("word indices are 1-based".into()));
        }
        Ok(WordInvariant { word, j })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn degree(&self, n: usize) -> usize {
        self.word.len() * (n - self.j)
    }

    /// Evaluates on any square matrices over a commutative ring.
    pub fn eval_on<T: RingElem>(&self, mats: &[Mat<T>]) -> Result<T> {
        let n = mats
            .first()
            .map(|m| m.rows())
            .ok_or_else(|| Error::Invalid("empty matrix tuple".into()))?;
        if self.j > n {
            return Err(Error::Invalid(format!("sigma index {} exceeds size {n}", self.j)));
        }
        let mut prod: Option<Mat<T>> = None;
        for &i in &self.word {
            let x = mats
                .get(i - 1)
                .ok_or_else(|| Error::Invalid(format!("word index {i} out of range")))?;
            prod = Some(match prod {
                None => x.clone(),
                Some(p) => p.mul(x)?,
            });
        }
        Ok(prod.expect("word nonempty").char_coeffs().swap_remove(self.j))
    }

    pub fn eval(&self, x: &MatrixTuple) -> Result<FieldScalar> {
        self.eval_on(x.matrices())
    }
}

/// Lexicographically minimal rotation of a sequence.
fn min_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    let mut best: Option<Vec<T>> = None;
    for s in 0..seq.len() {
        let rot: Vec<T> = seq[s..].iter().chain(seq[..s].iter()).cloned().collect();
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap_or_default()
}

fn is_min_rotation<T: Ord + Clone>(seq: &[T]) -> bool {
    min_rotation(seq) == seq
}

/// All Donkin word generators of polynomial degree ≤ `max_degree`: pairs
/// (word, j) with j < n and |word|·(n−j) ≤ D, one lexicographically minimal
/// rotation per cyclic class; σ_n is excluded as the constant 1.
pub fn enumerate_word_generators(n: usize, m: usize, max_degree: usize) -> Result<Vec<WordInvariant>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let max_len = max_degree; // shortest degree per letter is n - (n-1) = 1
    if m > 1 && max_len as u32 >= 24 {
        return Err(Error::ResourceCap(format!(
            "word enumeration up to length {max_len} over {m} letters"
        )));
    }
    let mut out = Vec::new();
    for len in 1..=max_len {
        if m == 0 {
            break;
        }
        let mut word = vec![1usize; len];
        loop {
            if is_min_rotation(&word) {
                for j in 0..n {
                    let degree = len * (n - j);
                    if degree <= max_degree {
                        out.push(WordInvariant { word: word.clone(), j });
                    }
                }
            }
            // next word over {1..m}
            let mut pos = len;
            while pos > 0 {
                if word[pos - 1] < m {
                    word[pos - 1] += 1;
                    break;
                }
                word[pos - 1] = 1;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
    }
    out.sort_by_key(|w| (w.degree(n), w.word.clone(), w.j));
    Ok(out)
}

/// An oriented-cycle generator: σ_j of the composite map along arrows
/// a_1 a_2 … a_k (tail of a_1 is the base vertex), canonicalized to the
/// minimal rotation by arrow index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleInvariant {
    cycle: Vec<usize>,
    j: usize,
}

impl CycleInvariant {
    pub fn new(quiver: &Quiver, cycle: Vec<usize>, j: usize) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Invalid("cycle must be nonempty".into()));
        }
        let arrows = quiver.arrows();
        for w in cycle.windows(2) {
            if arrows[w[0]].head != arrows[w[1]].tail {
                return Err(Error::Invalid("consecutive arrows do not compose".into()));
            }
        }
        let first = cycle[0];
        let last = *cycle.last().unwrap();
        if arrows[last].head != arrows[first].tail {
            return Err(Error::Invalid("cycle does not close up".into()));
        }
        Ok(CycleInvariant { cycle, j })
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn base_vertex(&self, quiver: &Quiver) -> usize {
        quiver.arrows()[self.cycle[0]].tail
    }

    pub fn degree(&self, quiver: &Quiver, alpha: &DimVector) -> usize {
        let local = alpha.at(self.base_vertex(quiver));
        self.cycle.len() * (local - self.j)
    }

    /// σ_j of V(a_k)···V(a_1) on any composable ring-valued matrices,
    /// one matrix per arrow of the quiver.
    pub fn eval_on<T: RingElem>(&self, mats: &[Mat<T>]) -> Result<T> {
        let mut prod: Option<Mat<T>> = None;
        for &a in &self.cycle {
            let x = mats
                .get(a)
                .ok_or_else(|| Error::Invalid("arrow index out of range".into()))?;
            prod = Some(match prod {
                None => x.clone(),
                Some(p) => x.mul(&p)?, // composite acts left, so multiply on the left
            });
        }
        let prod = prod.expect("cycle nonempty");
        if self.j > prod.rows() {
            return Err(Error::Invalid(format!(
                "sigma index {} exceeds local size {}",
                self.j,
                prod.rows()
            )));
        }
        Ok(prod.char_coeffs().swap_remove(self.j))
    }

    pub fn eval(&self, rep: &QuiverRep) -> Result<FieldScalar> {
        self.eval_on(rep.matrices())
    }
}

/// All oriented-cycle generators of polynomial degree ≤ `max_degree`.
/// Acyclic quivers give the empty list.
pub fn cycle_generators(
    quiver: &Quiver,
    alpha: &DimVector,
    max_degree: usize,
) -> Result<Vec<CycleInvariant>> {
    let arrows = quiver.arrows();
    let mut necklaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    // Closed walks up to length D (degree ≥ length since n_loc - j ≥ 1).
    let mut stack: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).collect();
    while let Some(walk) = stack.pop() {
        let last = *walk.last().unwrap();
        if arrows[last].head == arrows[walk[0]].tail {
            necklaces.insert(min_rotation(&walk));
        }
        if walk.len() < max_degree {
            for (a, arrow) in arrows.iter().enumerate() {
                if arrow.tail == arrows[last].head {
                    let mut next = walk.clone();
                    next.push(a);
                    stack.push(next);
                }
            }
        }
    }
    let mut out = Vec::new();
    for cycle in necklaces {
        let base = arrows[cycle[0]].tail;
        let local = alpha.at(base);
        for j in 0..local {
            if cycle.len() * (local - j) <= max_degree {
                out.push(CycleInvariant { cycle: cycle.clone(), j });
            }
        }
    }
    out.sort_by(|a, b| {
        (a.degree(quiver, alpha), &a.cycle, a.j).cmp(&(b.degree(quiver, alpha), &b.cycle, b.j))
    });
    Ok(out)
}

/// φ*(f)(X_1..X_m) = f(I, X_1..X_m): evaluates an invariant of m+1 matrices
/// with the identity prepended.
pub fn phi_star_eval<F>(f: F, x: &MatrixTuple) -> Result<FieldScalar>
where
    F: FnOnce(&MatrixTuple) -> Result<FieldScalar>,
{
    let mut mats = Vec::with_capacity(x.m() + 1);
    mats.push(ExactMatrix::identity(x.n(), x.field()));
    mats.extend_from_slice(x.matrices());
    f(&MatrixTuple::new(x.n(), mats)?)
}

/// The m generic n×n matrices whose entries are the coordinate variables
/// x^{(i)}_{ab}, ordered by (i, a, b).
pub fn generic_matrix_tuple(n: usize, m: usize, field: Field) -> Vec<Mat<MultiPoly>> {
    let nvars = m * n * n;
    (0..m)
        .map(|i| {
            let entries = (0..n * n)
                .map(|rc| MultiPoly::var(nvars, i * n * n + rc, field))
                .collect();
            Mat::from_entries(n, n, entries).expect("square by construction")
        })
        .collect()
}

/// Generic matrices for every arrow of a quiver, variables ordered by
/// (arrow, row, col).
pub fn generic_quiver_matrices(
    quiver: &Quiver,
    alpha: &DimVector,
    field: Field,
) -> Vec<Mat<MultiPoly>> {
    let nvars: usize = quiver
        .arrows()
        .iter()
        .map(|a| alpha.at(a.head) * alpha.at(a.tail))
        .sum();
    let mut offset = 0;
    quiver
        .arrows()
        .iter()
        .map(|a| {
            let (rows, cols) = (alpha.at(a.head), alpha.at(a.tail));
            let entries = (0..rows * cols)
                .map(|rc| MultiPoly::var(nvars, offset + rc, field))
                .collect();
            offset += rows * cols;
            Mat::from_entries(rows, cols, entries).expect("shape by construction")
        })
        .collect()
}

/// Exact expansion of a homogeneous degree-d invariant as a dense coefficient
/// vector over the graded-lex monomial basis on x^{(i)}_{ab} ordered by
/// (i,a,b). The evaluator runs once on the generic matrices, so homogeneity
/// is checked exactly on the symbolic result (a failed scaling probe
/// f(λX) ≠ λ^d f(X) is exactly a non-degree-d term here).
pub fn expand_invariant<F>(f: F, n: usize, m: usize, d: usize, field: Field) -> Result<Vec<FieldScalar>>
where
    F: FnOnce(&[Mat<MultiPoly>]) -> Result<MultiPoly>,
{
    let generic = generic_matrix_tuple(n, m, field);
    let p = f(&generic)?;
    if !p.is_homogeneous_of(d) {
        return Err(Error::NonHomogeneous { expected: d });
    }
    Ok(dense_coeffs(&p, m * n * n, d, field))
}

/// Dense coefficients of a (homogeneous) polynomial on the degree-d
/// graded-lex basis.
pub fn dense_coeffs(p: &MultiPoly, nvars: usize, d: usize, field: Field) -> Vec<FieldScalar> {
    monomials_of_degree(nvars, d)
        .into_iter()
        .map(|mono| {
            if p.field() == field {
                p.coeff(&mono)
            } else {
                field.zero()
            }
        })
        .collect()
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

    #[test]
    fn sigma_of_single_matrix() {
        let x = tuple(2, vec![qm(2, &[1, 2, 3, 4])]);
        let w = WordInvariant::new(vec![1], 1).unwrap();
        assert_eq!(w.eval(&x).unwrap().to_wire(), "-5"); // σ1 = -trace
        let w0 = WordInvariant::new(vec![1], 0).unwrap();
        assert_eq!(w0.eval(&x).unwrap().to_wire(), "-2"); // σ0 = det for n=2
    }

    #[test]
    fn sigma_of_word_product() {
        let x = tuple(
            2,
            vec![ExactMatrix::identity(2, Field::Q), ExactMatrix::identity(2, Field::Q)],
        );
        let w = WordInvariant::new(vec![1, 2], 0).unwrap();
        assert_eq!(w.eval(&x).unwrap().to_wire(), "1");
    }

    #[test]
    fn word_index_out_of_range() {
        let x = tuple(2, vec![qm(2, &[1, 0, 0, 1])]);
        let w = WordInvariant::new(vec![2], 0).unwrap();
        assert!(w.eval(&x).is_err());
    }

    #[test]
    fn enumerate_small_generator_sets() {
        // n=2, m=1, D=2: ((1),1) deg 1, ((1),0) deg 2, ((1,1),1) deg 2.
        let gens = enumerate_word_generators(2, 1, 2).unwrap();
        let summary: Vec<(Vec<usize>, usize)> =
            gens.iter().map(|g| (g.word().to_vec(), g.j())).collect();
        assert_eq!(summary, vec![(vec![1], 1), (vec![1], 0), (vec![1, 1], 1)]);

        // n=2, m=2, D=1: only the two traces.
        let gens = enumerate_word_generators(2, 2, 1).unwrap();
        let summary: Vec<(Vec<usize>, usize)> =
            gens.iter().map(|g| (g.word().to_vec(), g.j())).collect();
        assert_eq!(summary, vec![(vec![1], 1), (vec![2], 1)]);

        assert!(enumerate_word_generators(2, 2, 0).unwrap().is_empty());
    }

    #[test]
    fn rotation_canonicalization() {
        let gens = enumerate_word_generators(2, 2, 2).unwrap();
        // (2,1) is the rotation of (1,2); only the minimal representative shows up.
        assert!(gens.iter().any(|g| g.word() == [1, 2]));
        assert!(!gens.iter().any(|g| g.word() == [2, 1]));
    }

    #[test]
    fn cycle_generators_acyclic_empty() {
        let q = Quiver::new(
            vec!["x".into(), "y".into()],
            vec![("a".into(), "x".into(), "y".into())],
        )
        .unwrap();
        let alpha = DimVector::new(&q, vec![1, 2]).unwrap();
        assert!(cycle_generators(&q, &alpha, 4).unwrap().is_empty());
    }

    #[test]
    fn cycle_generators_loop_matches_words() {
        let q = Quiver::loops(1);
        let alpha = DimVector::new(&q, vec![2]).unwrap();
        let cycles = cycle_generators(&q, &alpha, 2).unwrap();
        let words = enumerate_word_generators(2, 1, 2).unwrap();
        assert_eq!(cycles.len(), words.len());
        for (c, w) in cycles.iter().zip(&words) {
            assert_eq!(c.cycle().len(), w.word().len());
            assert_eq!(c.j(), w.j());
        }
    }

    #[test]
    fn cycle_generators_two_cycle() {
        let q = Quiver::new(
            vec!["x".into(), "y".into()],
            vec![
                ("a".into(), "x".into(), "y".into()),
                ("b".into(), "y".into(), "x".into()),
            ],
        )
        .unwrap();
        let alpha = DimVector::new(&q, vec![1, 1]).unwrap();
        let cycles = cycle_generators(&q, &alpha, 2).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].cycle(), [0, 1]);
        assert_eq!(cycles[0].j(), 0);
    }

    #[test]
    fn cycle_eval_on_two_cycle() {
        let q = Quiver::new(
            vec!["x".into(), "y".into()],
            vec![
                ("a".into(), "x".into(), "y".into()),
                ("b".into(), "y".into(), "x".into()),
            ],
        )
        .unwrap();
        let alpha = DimVector::new(&q, vec![1, 1]).unwrap();
        let rep = QuiverRep::new(q.clone(), alpha, vec![qm(1, &[3]), qm(1, &[5])]).unwrap();
        let c = CycleInvariant::new(&q, vec![0, 1], 0).unwrap();
        // composite is the 1x1 matrix [15]; det(tI - A) = t - 15, σ0 = -15.
        assert_eq!(c.eval(&rep).unwrap().to_wire(), "-15");
    }

    #[test]
    fn phi_star_examples() {
        // f = det(Y1 + Y2), φ*(f)(X1) = det(I + X1).
        let f = |y: &MatrixTuple| y.matrix(0).add(y.matrix(1))?.det();
        let x = tuple(2, vec![qm(2, &[1, 0, 0, 0])]);
        assert_eq!(phi_star_eval(f, &x).unwrap().to_wire(), "2");

        // f = det(Y1) pulls back to the constant 1.
        let f = |y: &MatrixTuple| y.matrix(0).det();
        assert_eq!(phi_star_eval(f, &x).unwrap().to_wire(), "1");

        // f = det(Y2) pulls back to det(X1).
        let f = |y: &MatrixTuple| y.matrix(1).det();
        let x = tuple(2, vec![qm(2, &[1, 2, 3, 4])]);
        assert_eq!(phi_star_eval(f, &x).unwrap().to_wire(), "-2");
    }

    #[test]
    fn expand_trace_and_det() {
        // σ1 of word (1) over n=2, m=1: coefficients (-1,0,0,-1).
        let w = WordInvariant::new(vec![1], 1).unwrap();
        let coeffs = expand_invariant(|g| w.eval_on(g), 2, 1, 1, Field::Q).unwrap();
        let wires: Vec<_> = coeffs.iter().map(|c| c.to_wire()).collect();
        assert_eq!(wires, vec!["-1", "0", "0", "-1"]);

        // det X1 = x11 x22 - x12 x21 in graded-lex degree-2 basis.
        let w0 = WordInvariant::new(vec![1], 0).unwrap();
        let coeffs = expand_invariant(|g| w0.eval_on(g), 2, 1, 2, Field::Q).unwrap();
        let basis = monomials_of_degree(4, 2);
        let nonzero: Vec<(Vec<u32>, alloc::string::String)> = basis
            .iter()
            .zip(&coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| (b.clone(), c.to_wire()))
            .collect();
        assert_eq!(
            nonzero,
            vec![
                (vec![1, 0, 0, 1], "1".into()),
                (vec![0, 1, 1, 0], "-1".into()),
            ]
        );
    }

    #[test]
    fn expand_det_squared_is_square_of_expansion() {
        // σ0 of word (1,1) = det(X1^2) = (det X1)^2.
        let w = WordInvariant::new(vec![1, 1], 0).unwrap();
        let coeffs = expand_invariant(|g| w.eval_on(g), 2, 1, 4, Field::Q).unwrap();

        let det = WordInvariant::new(vec![1], 0).unwrap();
        let generic = generic_matrix_tuple(2, 1, Field::Q);
        let det_poly = det.eval_on(&generic).unwrap();
        let sq = det_poly.mul(&det_poly);
        let expect = dense_coeffs(&sq, 4, 4, Field::Q);
        assert_eq!(coeffs, expect);
    }

    #[test]
    fn expand_rejects_inhomogeneous() {
        // tr + det is not homogeneous of degree 1.
        let f = |g: &[Mat<MultiPoly>]| {
            let tr = WordInvariant::new(vec![1], 1).unwrap().eval_on(g)?;
            let det = WordInvariant::new(vec![1], 0).unwrap().eval_on(g)?;
            Ok(tr.add(&det))
        };
        assert!(matches!(
            expand_invariant(f, 2, 1, 1, Field::Q),
            Err(Error::NonHomogeneous { expected: 1 })
        ));
    }
}
