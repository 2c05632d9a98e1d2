//! Quivers, dimension vectors, weights, representations and the base-change
//! action.
//!
//! The vertex order fixed at construction defines the block layout of
//! [`embed_rep`]: vertex `i` occupies the contiguous index range starting at
//! `Σ_{j<i} α_j` in the total space of dimension `N = Σ α_i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar};
use crate::matrix::ExactMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite directed multigraph with named vertices and arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// `arrows` are (name, tail vertex name, head vertex name).
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex name '{v}'")));
            }
        }
        let mut names = BTreeMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, tail, head) in arrows {
            if names.insert(name.clone(), ()).is_some() {
                return Err(Error::Invalid(format!("duplicate arrow name '{name}'")));
            }
            let t = *seen
                .get(&tail)
                .ok_or_else(|| Error::Invalid(format!("arrow '{name}' has unknown tail '{tail}'")))?;
            let h = *seen
                .get(&head)
                .ok_or_else(|| Error::Invalid(format!("arrow '{name}' has unknown head '{head}'")))?;
            out.push(Arrow { name, tail: t, head: h });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    /// The m-loop quiver on one vertex (matrix invariants live here).
    pub fn loops(m: usize) -> Quiver {
        let arrows = (0..m)
            .map(|i| (format!("a{}", i + 1), String::from("v"), String::from("v")))
            .collect();
        Quiver::new(vec![String::from("v")], arrows).expect("loop quiver is well formed")
    }

    /// The m-Kronecker quiver: two vertices x→y with m parallel arrows.
    pub fn kronecker(m: usize) -> Quiver {
        let arrows = (0..m)
            .map(|i| (format!("a{}", i + 1), String::from("x"), String::from("y")))
            .collect();
        Quiver::new(vec![String::from("x"), String::from("y")], arrows)
            .expect("kronecker quiver is well formed")
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Topological order of vertices, or `Err(OrientedCycle)`.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            if a.tail == a.head {
                return Err(Error::OrientedCycle);
            }
            indeg[a.head] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop() {
            order.push(v);
            for a in &self.arrows {
                if a.tail == v {
                    indeg[a.head] -= 1;
                    if indeg[a.head] == 0 {
                        queue.push(a.head);
                    }
                }
            }
        }
        if order.len() < n {
            return Err(Error::OrientedCycle);
        }
        Ok(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    /// Longest directed path length in arrows (0 for arrowless quivers);
    /// requires acyclicity.
    pub fn longest_path_len(&self) -> Result<usize> {
        let order = self.topological_order()?;
        let mut longest = vec![0usize; self.vertices.len()];
        for &v in order.iter().rev() {
            for a in &self.arrows {
                if a.tail == v {
                    longest[v] = longest[v].max(1 + longest[a.head]);
                }
            }
        }
        Ok(longest.into_iter().max().unwrap_or(0))
    }
}

/// A dimension vector: one nonnegative dimension per vertex, in vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimVector(Vec<usize>);

impl DimVector {
    pub fn new(quiver: &Quiver, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() {
            return Err(Error::Invalid("dimension vector length != number of vertices".into()));
        }
        Ok(DimVector(dims))
    }

    pub fn at(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    /// N = Σ α_i.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Start offset of each vertex block in the embedding, plus the total.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut acc = 0;
        for &d in &self.0 {
            out.push(acc);
            acc += d;
        }
        out.push(acc);
        out
    }
}

/// An integer weight σ: Q₀ → ℤ, in vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(quiver: &Quiver, values: Vec<i64>) -> Result<Self> {
        if values.len() != quiver.num_vertices() {
            return Err(Error::Invalid("weight length != number of vertices".into()));
        }
        Ok(Weight(values))
    }

    pub fn at(&self, v: usize) -> i64 {
        self.0[v]
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

/// A point of Rep(Q,α): one `α(ha) × α(ta)` matrix per arrow, all in one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRep {
    quiver: Quiver,
    dim: DimVector,
    matrices: Vec<ExactMatrix>,
}

impl QuiverRep {
    pub fn new(quiver: Quiver, dim: DimVector, matrices: Vec<ExactMatrix>) -> Result<Self> {
        if matrices.len() != quiver.num_arrows() {
            return Err(Error::ShapeMismatch("one matrix per arrow required".into()));
        }
        let mut field: Option<Field> = None;
        for (a, m) in quiver.arrows().iter().zip(&matrices) {
            let (rows, cols) = (dim.at(a.head), dim.at(a.tail));
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "arrow '{}' needs a {}x{} matrix, got {}x{}",
                    a.name,
                    rows,
                    cols,
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
        Ok(QuiverRep { quiver, dim, matrices })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn matrix(&self, arrow: usize) -> &ExactMatrix {
        &self.matrices[arrow]
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    pub fn field(&self) -> Option<Field> {
        self.matrices.first().map(|m| m.field())
    }
}

/// An element of GL(α): one invertible matrix per vertex.
#[derive(Debug, Clone)]
pub struct GroupElement {
    matrices: Vec<ExactMatrix>,
}

impl GroupElement {
    pub fn new(dim: &DimVector, matrices: Vec<ExactMatrix>) -> Result<Self> {
        if matrices.len() != dim.dims().len() {
            return Err(Error::ShapeMismatch("one matrix per vertex required".into()));
        }
        for (v, m) in matrices.iter().enumerate() {
            let d = dim.at(v);
            if m.rows() != d || m.cols() != d {
                return Err(Error::ShapeMismatch(format!(
                    "vertex {v} needs a {d}x{d} matrix"
                )));
            }
            if m.det()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(GroupElement { matrices })
    }

    pub fn identity(dim: &DimVector, field: Field) -> Self {
        let matrices = dim.dims().iter().map(|&d| ExactMatrix::identity(d, field)).collect();
        GroupElement { matrices }
    }

    pub fn at(&self, v: usize) -> &ExactMatrix {
        &self.matrices[v]
    }

    /// Vertex-wise product (g·h)(i) = g(i)·h(i).
    pub fn compose(&self, rhs: &GroupElement) -> Result<GroupElement> {
        if self.matrices.len() != rhs.matrices.len() {
            return Err(Error::ShapeMismatch("group elements over different quivers".into()));
        }
        let matrices = self
            .matrices
            .iter()
            .zip(&rhs.matrices)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement { matrices })
    }

    /// Block-diagonal matrix over the total space, in vertex-block layout.
    pub fn block_diagonal(&self, dim: &DimVector, field: Field) -> ExactMatrix {
        let n = dim.total();
        let offsets = dim.block_offsets();
        let mut out = ExactMatrix::zero(n, n, field);
        for (v, m) in self.matrices.iter().enumerate() {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    *out.at_mut(offsets[v] + r, offsets[v] + c) = m.at(r, c).clone();
                }
            }
        }
        out
    }
}

/// The base-change action: arrow `a` carries `A(ha) · V(a) · A(ta)^{-1}`.
pub fn act(g: &GroupElement, rep: &QuiverRep) -> Result<QuiverRep> {
    let mut inverses: Vec<Option<ExactMatrix>> = vec![None; rep.quiver().num_vertices()];
    let mut matrices = Vec::with_capacity(rep.matrices().len());
    for (idx, arrow) in rep.quiver().arrows().iter().enumerate() {
        if inverses[arrow.tail].is_none() {
            inverses[arrow.tail] = Some(g.at(arrow.tail).inverse()?);
        }
        let inv = inverses[arrow.tail].as_ref().unwrap();
        matrices.push(g.at(arrow.head).mul(rep.matrix(idx))?.mul(inv)?);
    }
    QuiverRep::new(rep.quiver().clone(), rep.dim().clone(), matrices)
}

/// Number of directed paths x→y for every ordered vertex pair of an acyclic
/// quiver; `include_trivial` counts the length-0 path at x=y.
pub fn path_counts_with(quiver: &Quiver, include_trivial: bool) -> Result<BTreeMap<(usize, usize), u64>> {
    let order = quiver.topological_order()?;
    let n = quiver.num_vertices();
    let mut counts = vec![vec![0u64; n]; n];
    // Reverse topological order: b[x][y] = [x=y] + Σ_{a: ta=x} b[ha][y],
    // counting the trivial path on the diagonal.
    for &x in order.iter().rev() {
        counts[x][x] += 1;
        for a in quiver.arrows() {
            if a.tail == x {
                for y in 0..n {
                    let through = counts[a.head][y];
                    counts[x][y] += through;
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let mut c = counts[x][y];
            if x == y && !include_trivial {
                c -= 1;
            }
            out.insert((x, y), c);
        }
    }
    Ok(out)
}

/// Path counts with the trivial path included (b_{x,x} ≥ 1).
pub fn path_counts(quiver: &Quiver) -> Result<BTreeMap<(usize, usize), u64>> {
    path_counts_with(quiver, true)
}

/// |σ|_α = ½ Σ_i |σ(i)| α_i, as an exact rational.
pub fn sigma_norm(sigma: &Weight, alpha: &DimVector) -> Result<FieldScalar> {
    if sigma.values().len() != alpha.dims().len() {
        return Err(Error::Invalid("weight and dimension vector over different vertex sets".into()));
    }
    let sum: i64 = sigma
        .values()
        .iter()
        .zip(alpha.dims())
        .map(|(&s, &a)| s.abs() * a as i64)
        .sum();
    Ok(&Field::Q.from_i64(sum) * &Field::Q.from_i64(2).inv().expect("2 is invertible"))
}

/// Embeds Rep(Q,α) into tuples of N×N matrices, N = Σ α_i: the a-th output
/// is zero except for block (head-row, tail-column) = V(a).
pub fn embed_rep(rep: &QuiverRep) -> Vec<ExactMatrix> {
    let dim = rep.dim();
    let n = dim.total();
    let offsets = dim.block_offsets();
    let field = rep.field().unwrap_or(Field::Q);
    rep.quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let m = rep.matrix(idx);
            let mut big = ExactMatrix::zero(n, n, field);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    *big.at_mut(offsets[a.head] + r, offsets[a.tail] + c) = m.at(r, c).clone();
                }
            }
            big
        })
        .collect()
}

/// χ_σ(g) = Π_i det(A(i))^{σ(i)}.
pub fn chi_sigma(g: &GroupElement, sigma: &Weight) -> Result<FieldScalar> {
    let mut acc: Option<FieldScalar> = None;
    for (v, &s) in sigma.values().iter().enumerate() {
        let d = g.at(v).det()?;
        if d.is_zero() {
            return Err(Error::Singular);
        }
        let p = d.pow(s)?;
        acc = Some(match acc {
            None => p,
            Some(a) => &a * &p,
        });
    }
    Ok(acc.unwrap_or_else(|| Field::Q.one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::new(
            vec!["x".into(), "y".into()],
            vec![("a".into(), "x".into(), "y".into())],
        )
        .unwrap()
    }

    fn qm(rows: usize, cols: usize, vals: &[i64]) -> ExactMatrix {
        ExactMatrix::from_i64(rows, cols, vals, Field::Q)
    }

    #[test]
    fn act_identity_fixes_rep() {
        let q = Quiver::loops(1);
        let dim = DimVector::new(&q, vec![2]).unwrap();
        let rep = QuiverRep::new(q, dim.clone(), vec![qm(2, 2, &[1, 2, 3, 4])]).unwrap();
        let g = GroupElement::identity(&dim, Field::Q);
        assert_eq!(act(&g, &rep).unwrap(), rep);
    }

    #[test]
    fn act_conjugation_on_loop() {
        let q = Quiver::loops(1);
        let dim = DimVector::new(&q, vec![2]).unwrap();
        let rep = QuiverRep::new(q, dim.clone(), vec![qm(2, 2, &[0, 1, 0, 0])]).unwrap();
        let g = GroupElement::new(&dim, vec![qm(2, 2, &[1, 0, 0, 2])]).unwrap();
        let moved = act(&g, &rep).unwrap();
        assert_eq!(moved.matrix(0).at(0, 1).to_wire(), "1/2");
        assert!(moved.matrix(0).at(0, 0).is_zero());
    }

    #[test]
    fn act_scalar_on_kronecker() {
        let q = Quiver::kronecker(1);
        let dim = DimVector::new(&q, vec![2, 2]).unwrap();
        let m = qm(2, 2, &[1, 2, 3, 4]);
        let rep = QuiverRep::new(q, dim.clone(), vec![m.clone()]).unwrap();
        let g = GroupElement::new(
            &dim,
            vec![qm(2, 2, &[2, 0, 0, 2]), ExactMatrix::identity(2, Field::Q)],
        )
        .unwrap();
        // A(x)=2I acts on the tail: V ↦ V·(2I)^{-1} = V/2.
        let moved = act(&g, &rep).unwrap();
        let half = Field::Q.parse_scalar("1/2").unwrap();
        assert_eq!(moved.matrix(0), &m.scale(&half));
    }

    #[test]
    fn singular_group_element_rejected() {
        let q = Quiver::loops(1);
        let dim = DimVector::new(&q, vec![2]).unwrap();
        assert!(matches!(
            GroupElement::new(&dim, vec![qm(2, 2, &[1, 2, 2, 4])]),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn path_counts_a2() {
        let q = a2();
        let b = path_counts(&q).unwrap();
        assert_eq!(b[&(0, 0)], 1);
        assert_eq!(b[&(0, 1)], 1);
        assert_eq!(b[&(1, 1)], 1);
        assert_eq!(b[&(1, 0)], 0);
        let b0 = path_counts_with(&q, false).unwrap();
        assert_eq!(b0[&(0, 0)], 0);
        assert_eq!(b0[&(0, 1)], 1);
    }

    #[test]
    fn path_counts_kronecker_and_composite() {
        let q = Quiver::kronecker(3);
        let b = path_counts(&q).unwrap();
        assert_eq!(b[&(0, 1)], 3);

        // x→y→z plus a direct x→z: two paths x to z.
        let q = Quiver::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                ("a".into(), "x".into(), "y".into()),
                ("b".into(), "y".into(), "z".into()),
                ("c".into(), "x".into(), "z".into()),
            ],
        )
        .unwrap();
        let b = path_counts(&q).unwrap();
        assert_eq!(b[&(0, 2)], 2);
        assert_eq!(q.longest_path_len().unwrap(), 2);
    }

    #[test]
    fn path_counts_reject_cycles() {
        let q = Quiver::loops(1);
        assert_eq!(path_counts(&q).unwrap_err(), Error::OrientedCycle);
        let q2 = Quiver::new(
            vec!["x".into(), "y".into()],
            vec![
                ("a".into(), "x".into(), "y".into()),
                ("b".into(), "y".into(), "x".into()),
            ],
        )
        .unwrap();
        assert_eq!(path_counts(&q2).unwrap_err(), Error::OrientedCycle);
    }

    #[test]
    fn sigma_norm_values() {
        let q = a2();
        let alpha = DimVector::new(&q, vec![2, 2]).unwrap();
        let sigma = Weight::new(&q, vec![1, -1]).unwrap();
        assert_eq!(sigma_norm(&sigma, &alpha).unwrap().to_wire(), "2");
        let zero = Weight::new(&q, vec![0, 0]).unwrap();
        assert!(sigma_norm(&zero, &alpha).unwrap().is_zero());
        let alpha2 = DimVector::new(&q, vec![1, 3]).unwrap();
        let sigma2 = Weight::new(&q, vec![3, -1]).unwrap();
        assert_eq!(sigma_norm(&sigma2, &alpha2).unwrap().to_wire(), "3");
    }

    #[test]
    fn embed_rep_block_placement() {
        // Kronecker α=(1,1): entry c lands at (row 2, col 1) = index (1,0).
        let q = Quiver::kronecker(1);
        let dim = DimVector::new(&q, vec![1, 1]).unwrap();
        let rep = QuiverRep::new(q, dim, vec![qm(1, 1, &[5])]).unwrap();
        let embedded = embed_rep(&rep);
        assert_eq!(embedded.len(), 1);
        assert_eq!(embedded[0].at(1, 0).to_wire(), "5");
        assert!(embedded[0].at(0, 0).is_zero());

        // Loop quiver: embedding is the identity on matrices.
        let q = Quiver::loops(1);
        let dim = DimVector::new(&q, vec![2]).unwrap();
        let m = qm(2, 2, &[1, 2, 3, 4]);
        let rep = QuiverRep::new(q, dim, vec![m.clone()]).unwrap();
        assert_eq!(embed_rep(&rep)[0], m);

        // A2 with α=(1,2): the 2x1 block lands at rows 2-3, column 1.
        let q = a2();
        let dim = DimVector::new(&q, vec![1, 2]).unwrap();
        let rep = QuiverRep::new(q, dim, vec![qm(2, 1, &[7, 8])]).unwrap();
        let e = &embed_rep(&rep)[0];
        assert_eq!(e.rows(), 3);
        assert_eq!(e.at(1, 0).to_wire(), "7");
        assert_eq!(e.at(2, 0).to_wire(), "8");
        assert!(e.at(0, 0).is_zero());
    }

    #[test]
    fn chi_sigma_values() {
        let q = a2();
        let dim = DimVector::new(&q, vec![2, 2]).unwrap();
        let g = GroupElement::identity(&dim, Field::Q);
        let sigma = Weight::new(&q, vec![1, -1]).unwrap();
        assert!(chi_sigma(&g, &sigma).unwrap().is_one());

        let g = GroupElement::new(
            &dim,
            vec![qm(2, 2, &[1, 0, 0, 2]), qm(2, 2, &[1, 0, 0, 3])],
        )
        .unwrap();
        assert_eq!(chi_sigma(&g, &sigma).unwrap().to_wire(), "2/3");
        let zero = Weight::new(&q, vec![0, 0]).unwrap();
        assert!(chi_sigma(&g, &zero).unwrap().is_one());
    }
}
