//! Sparse multivariate polynomials over an exact field.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order
//! and every derived report are deterministic. The map key order is plain
//! lexicographic on exponent vectors; the graded-lex basis used by
//! [`crate::words::expand_invariant`] is layered on top.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Field, FieldScalar, RingElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Vec<u32>, FieldScalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, field: Field) -> Self {
        MultiPoly { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: FieldScalar) -> Self {
        let field = c.field();
        let mut p = MultiPoly::zero(nvars, field);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, idx: usize, field: Field) -> Self {
        assert!(idx < nvars);
        let mut exp = vec![0u32; nvars];
        exp[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, field.one());
        MultiPoly { nvars, field, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> FieldScalar {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().map(|&x| x as usize).sum::<usize>() == d)
    }

    fn add_term(&mut self, exp: Vec<u32>, c: FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        MultiPoly { nvars: self.nvars, field: self.field, terms }
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars, self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, s: &FieldScalar) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(self.nvars, self.field);
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect();
        MultiPoly { nvars: self.nvars, field: self.field, terms }
    }

    pub fn eval(&self, point: &[FieldScalar]) -> FieldScalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term = &term * &x.pow(k as i64).expect("nonnegative power");
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Collects terms by the exponents of the variables in `group`
    /// (in the given order), returning the cofactor polynomials in the
    /// remaining variables. Used to split a determinant in mixed
    /// coefficient/coordinate variables into its coefficient family.
    pub fn collect_by(&self, group: &[usize]) -> BTreeMap<Vec<u32>, MultiPoly> {
        let in_group: Vec<bool> = {
            let mut v = vec![false; self.nvars];
            for &g in group {
                v[g] = true;
            }
            v
        };
        let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Vec<u32> = group.iter().map(|&g| e[g]).collect();
            let rest: Vec<u32> = e
                .iter()
                .enumerate()
                .map(|(i, &x)| if in_group[i] { 0 } else { x })
                .collect();
            out.entry(key)
                .or_insert_with(|| MultiPoly::zero(self.nvars, self.field))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Largest term in the key order (exponent vector, coefficient).
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &FieldScalar)> {
        self.terms.last_key_value()
    }

    /// Reinterprets the polynomial over the variable tail, requiring every
    /// term to be constant in the first `k` variables.
    pub fn drop_leading_vars(&self, k: usize) -> crate::error::Result<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[..k].iter().any(|&x| x != 0) {
                return Err(crate::error::Error::Invalid(
                    "polynomial still involves the dropped variables".into(),
                ));
            }
            terms.insert(e[k..].to_vec(), c.clone());
        }
        Ok(MultiPoly { nvars: self.nvars - k, field: self.field, terms })
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().map(|&x| x as usize).sum::<usize>() == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        MultiPoly { nvars: self.nvars, field: self.field, terms }
    }
}

impl RingElem for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars, self.field)
    }
    fn one_like(&self) -> Self {
        MultiPoly::constant(self.nvars, self.field.one())
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// All exponent vectors of total degree `d` over `nvars` variables in
/// descending lexicographic order — the graded-lex basis of the degree-`d`
/// monomial space.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fill(&mut out, &mut cur, 0, d);
    fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, idx: usize, rem: usize) {
        if idx + 1 == cur.len() {
            cur[idx] = rem as u32;
            out.push(cur.clone());
            return;
        }
        for k in (0..=rem).rev() {
            cur[idx] = k as u32;
            fill(out, cur, idx + 1, rem - k);
        }
        cur[idx] = 0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i, Field::Q)
    }

    #[test]
    fn arithmetic_and_eval() {
        // (x0 + 2 x1)^2 = x0^2 + 4 x0 x1 + 4 x1^2
        let p = x(0).add(&x(1).scale(&Field::Q.from_i64(2)));
        let sq = p.mul(&p);
        assert_eq!(sq.coeff(&[2, 0, 0]).to_wire(), "1");
        assert_eq!(sq.coeff(&[1, 1, 0]).to_wire(), "4");
        assert_eq!(sq.coeff(&[0, 2, 0]).to_wire(), "4");
        let v = [Field::Q.from_i64(1), Field::Q.from_i64(3), Field::Q.from_i64(0)];
        assert_eq!(sq.eval(&v).to_wire(), "49");
    }

    #[test]
    fn homogeneity_checks() {
        let p = x(0).mul(&x(1)).add(&x(2));
        assert!(!p.is_homogeneous_of(2));
        assert_eq!(p.total_degree(), 2);
        assert!(p.homogeneous_part(2).is_homogeneous_of(2));
        assert_eq!(p.homogeneous_part(1), x(2));
    }

    #[test]
    fn graded_lex_order_matches_variable_order() {
        let basis = monomials_of_degree(4, 1);
        assert_eq!(
            basis,
            vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]
        );
        assert_eq!(monomials_of_degree(2, 3).len(), 4); // (3,0),(2,1),(1,2),(0,3)
        assert_eq!(monomials_of_degree(8, 6).len(), 1716);
    }

    #[test]
    fn collect_by_groups() {
        // t0*x2 + 2 t0*t1 with group {0,1}: keys (1,0) -> x2 and (1,1) -> 2.
        let t0 = x(0);
        let t1 = x(1);
        let p = t0.mul(&x(2)).add(&t0.mul(&t1).scale(&Field::Q.from_i64(2)));
        let parts = p.collect_by(&[0, 1]);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&vec![1, 0]].coeff(&[0, 0, 1]).to_wire(), "1");
        assert_eq!(parts[&vec![1, 1]].coeff(&[0, 0, 0]).to_wire(), "2");
    }
}
