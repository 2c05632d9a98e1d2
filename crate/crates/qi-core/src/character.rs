//! Integer Laurent characters of torus-diagonalizable modules.
//!
//! A [`TorusCharacter`] is a finite ℤ-combination of Laurent monomials in
//! one variable group per vertex/factor, Weyl-symmetric within each group.
//! Exponent tuples are stored sorted weakly decreasing per group — one
//! canonical orbit representative — with the per-monomial coefficient.
//! Canonical keys are concatenations, so the `BTreeMap` order is
//! lexicographic and the maximal key of a good character is its dominance-
//! maximal highest weight with lexicographic tie-breaking.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::schur::{schur_character, DominantWeight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusCharacter {
    group_ranks: Vec<usize>,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl TorusCharacter {
    pub fn zero(group_ranks: Vec<usize>) -> Self {
        TorusCharacter { group_ranks, terms: BTreeMap::new() }
    }

    pub fn one(group_ranks: Vec<usize>) -> Self {
        let n: usize = group_ranks.iter().sum();
        let mut terms = BTreeMap::new();
        terms.insert(vec![0i64; n], 1);
        TorusCharacter { group_ranks, terms }
    }

    pub fn group_ranks(&self) -> &[usize] {
        &self.group_ranks
    }

    fn total_rank(&self) -> usize {
        self.group_ranks.iter().sum()
    }

    /// Builds a character from raw (uncanonicalized) monomials, verifying
    /// Weyl symmetry within every variable group exactly.
    pub fn from_raw_terms(
        group_ranks: Vec<usize>,
        raw: impl IntoIterator<Item = (Vec<i64>, i64)>,
    ) -> Result<Self> {
        let total: usize = group_ranks.iter().sum();
        let mut raw_map: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (exps, coeff) in raw {
            if exps.len() != total {
                return Err(Error::Invalid(format!(
                    "exponent tuple length {} does not match total rank {total}",
                    exps.len()
                )));
            }
            let e = raw_map.entry(exps).or_insert(0);
            *e += coeff;
        }
        raw_map.retain(|_, c| *c != 0);

        // Group raw monomials by canonical representative and check that each
        // orbit is fully present with one shared coefficient.
        let mut canon: BTreeMap<Vec<i64>, (i64, u64)> = BTreeMap::new();
        for (exps, coeff) in &raw_map {
            let key = canonicalize_key(&group_ranks, exps);
            match canon.entry(key) {
                alloc::collections::btree_map::Entry::Vacant(e) => {
                    e.insert((*coeff, 1));
                }
                alloc::collections::btree_map::Entry::Occupied(mut e) => {
                    if e.get().0 != *coeff {
                        return Err(Error::Invalid(
                            "character is not Weyl-symmetric: unequal orbit coefficients".into(),
                        ));
                    }
                    e.get_mut().1 += 1;
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (key, (coeff, seen)) in canon {
            if seen != orbit_size(&group_ranks, &key) {
                return Err(Error::Invalid(
                    "character is not Weyl-symmetric: incomplete orbit".into(),
                ));
            }
            terms.insert(key, coeff);
        }
        Ok(TorusCharacter { group_ranks, terms })
    }

    /// Canonical (sorted-representative, coefficient) pairs in key order.
    pub fn canonical_terms(&self) -> impl Iterator<Item = (&Vec<i64>, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn num_orbits(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with the given raw exponent tuple.
    pub fn coeff_of_raw(&self, exps: &[i64]) -> i64 {
        let key = canonicalize_key(&self.group_ranks, exps);
        self.terms.get(&key).copied().unwrap_or(0)
    }

    /// Value at z = (1,...,1): the dimension of a module with this character.
    pub fn eval_ones(&self) -> i64 {
        self.terms
            .iter()
            .map(|(k, &c)| c * orbit_size(&self.group_ranks, k) as i64)
            .sum()
    }

    pub fn add(&self, rhs: &TorusCharacter) -> TorusCharacter {
        assert_eq!(self.group_ranks, rhs.group_ranks);
        let mut out = self.clone();
        for (k, &c) in &rhs.terms {
            let e = out.terms.entry(k.clone()).or_insert(0);
            *e += c;
            if *e == 0 {
                out.terms.remove(k);
            }
        }
        out
    }

    pub fn sub_scaled(&self, rhs: &TorusCharacter, scale: i64) -> TorusCharacter {
        assert_eq!(self.group_ranks, rhs.group_ranks);
        let mut out = self.clone();
        for (k, &c) in &rhs.terms {
            let e = out.terms.entry(k.clone()).or_insert(0);
            *e -= c * scale;
            if *e == 0 {
                out.terms.remove(k);
            }
        }
        out
    }

    /// Product of characters (character of the tensor product). Expands both
    /// orbit representations to full monomial lists, so cost is the product
    /// of monomial counts.
    pub fn mul(&self, rhs: &TorusCharacter) -> TorusCharacter {
        assert_eq!(self.group_ranks, rhs.group_ranks);
        let a = self.expand_raw();
        let b = rhs.expand_raw();
        let mut raw: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let key: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *raw.entry(key).or_insert(0) += ca * cb;
            }
        }
        raw.retain(|_, c| *c != 0);
        TorusCharacter::from_raw_terms(self.group_ranks.clone(), raw)
            .expect("product of symmetric characters is symmetric")
    }

    /// Outer product of characters on disjoint variable groups.
    pub fn outer(&self, rhs: &TorusCharacter) -> TorusCharacter {
        let mut group_ranks = self.group_ranks.clone();
        group_ranks.extend_from_slice(&rhs.group_ranks);
        let mut terms = BTreeMap::new();
        for (ka, &ca) in &self.terms {
            for (kb, &cb) in &rhs.terms {
                let mut key = ka.clone();
                key.extend_from_slice(kb);
                terms.insert(key, ca * cb);
            }
        }
        TorusCharacter { group_ranks, terms }
    }

    /// Full monomial expansion: every member of every orbit with its
    /// coefficient.
    pub fn expand_raw(&self) -> Vec<(Vec<i64>, i64)> {
        let mut out = Vec::new();
        for (key, &coeff) in &self.terms {
            let mut segments: Vec<Vec<Vec<i64>>> = Vec::with_capacity(self.group_ranks.len());
            let mut offset = 0;
            for &r in &self.group_ranks {
                segments.push(multiset_permutations(&key[offset..offset + r]));
                offset += r;
            }
            let mut stack: Vec<Vec<i64>> = vec![Vec::with_capacity(self.total_rank())];
            for seg in &segments {
                let mut next = Vec::with_capacity(stack.len() * seg.len());
                for prefix in &stack {
                    for perm in seg {
                        let mut v = prefix.clone();
                        v.extend_from_slice(perm);
                        next.push(v);
                    }
                }
                stack = next;
            }
            for exps in stack {
                out.push((exps, coeff));
            }
        }
        out
    }

    /// Decomposes into products of Schur characters over the variable groups
    /// by repeatedly subtracting the character of the dominance-maximal
    /// remaining exponent tuple (lexicographic tie-break). Fails with
    /// `NotAGoodCharacter` if a negative multiplicity arises.
    pub fn schur_decompose(&self) -> Result<Vec<(Vec<DominantWeight>, u64)>> {
        let mut rem = self.clone();
        let mut out = Vec::new();
        while let Some((key, &coeff)) = rem.terms.last_key_value() {
            if coeff < 0 {
                return Err(Error::NotAGoodCharacter(format!(
                    "weight {key:?} has multiplicity {coeff}"
                )));
            }
            let mult = coeff;
            let key = key.clone();
            let mut lambdas = Vec::with_capacity(self.group_ranks.len());
            let mut offset = 0;
            for &r in &self.group_ranks {
                let parts = key[offset..offset + r].to_vec();
                offset += r;
                lambdas.push(DominantWeight::new(parts).expect("canonical keys are sorted"));
            }
            let mut prod: Option<TorusCharacter> = None;
            for (lam, &r) in lambdas.iter().zip(&self.group_ranks) {
                let s = schur_character(lam, r)?;
                prod = Some(match prod {
                    None => s,
                    Some(p) => p.outer(&s),
                });
            }
            let prod = prod.unwrap_or_else(|| TorusCharacter::one(vec![]));
            rem = rem.sub_scaled(&prod, mult);
            out.push((lambdas, mult as u64));
        }
        Ok(out)
    }

    /// Multiplicity of one dominant weight tuple in the decomposition; the
    /// all-zero target gives the trivial-module multiplicity.
    pub fn weight_multiplicity(&self, target: &[DominantWeight]) -> Result<u64> {
        if target.len() != self.group_ranks.len()
            || target
                .iter()
                .zip(&self.group_ranks)
                .any(|(t, &r)| t.len() != r)
        {
            return Err(Error::Invalid("target weight shape does not match groups".into()));
        }
        let dec = self.schur_decompose()?;
        Ok(dec
            .into_iter()
            .find(|(lams, _)| lams.as_slice() == target)
            .map(|(_, m)| m)
            .unwrap_or(0))
    }
}

fn canonicalize_key(group_ranks: &[usize], exps: &[i64]) -> Vec<i64> {
    let mut key = Vec::with_capacity(exps.len());
    let mut offset = 0;
    for &r in group_ranks {
        let mut seg: Vec<i64> = exps[offset..offset + r].to_vec();
        seg.sort_unstable_by(|a, b| b.cmp(a));
        key.extend(seg);
        offset += r;
    }
    key
}

/// Number of distinct permutations of the key (product over groups of
/// multinomial counts).
fn orbit_size(group_ranks: &[usize], key: &[i64]) -> u64 {
    let mut total = 1u64;
    let mut offset = 0;
    for &r in group_ranks {
        let seg = &key[offset..offset + r];
        offset += r;
        let mut fact = 1u64;
        for i in 1..=r as u64 {
            fact *= i;
        }
        let mut i = 0;
        while i < seg.len() {
            let mut j = i;
            while j < seg.len() && seg[j] == seg[i] {
                j += 1;
            }
            let mut run_fact = 1u64;
            for k in 1..=(j - i) as u64 {
                run_fact *= k;
            }
            fact /= run_fact;
            i = j;
        }
        total *= fact;
    }
    total
}

/// All distinct permutations of a slice, descending-first order.
fn multiset_permutations(sorted_desc: &[i64]) -> Vec<Vec<i64>> {
    if sorted_desc.is_empty() {
        return vec![vec![]];
    }
    // Iterate from the ascending arrangement via next-permutation.
    let mut cur: Vec<i64> = sorted_desc.to_vec();
    cur.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..cur.len() - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}
