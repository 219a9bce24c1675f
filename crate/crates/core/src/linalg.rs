//! Exact sparse matrices over `Q` and `F_p`: rank, kernels and linear solves.
//!
//! Ranks over `Q` use fraction-free elimination on integer rows, dividing out
//! the row content after every step to keep entries small. Ranks over `F_p`
//! use machine-word arithmetic. Kernels and solves work with field scalars
//! directly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{Field, Scalar};

/// A sparse matrix stored by columns; row indices within a column are
/// strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceMatrix {
    field: Field,
    nrows: usize,
    cols: Vec<Vec<(usize, Scalar)>>,
}

impl SliceMatrix {
    pub fn zero(field: Field, nrows: usize, ncols: usize) -> Self {
        SliceMatrix { field, nrows, cols: vec![Vec::new(); ncols] }
    }

    /// Builds from sparse columns; entries are sorted and zeros dropped.
    pub fn from_columns(field: Field, nrows: usize, cols: Vec<Vec<(usize, Scalar)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.retain(|(_, v)| !v.is_zero());
                c.sort_by_key(|(i, _)| *i);
                assert!(c.iter().all(|(i, _)| *i < nrows), "row index out of range");
                c
            })
            .collect();
        SliceMatrix { field, nrows, cols }
    }

    pub fn from_dense(field: Field, rows: &[Vec<Scalar>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| (0..nrows).map(|i| (i, rows[i][j].clone())).collect())
            .collect();
        SliceMatrix::from_columns(field, nrows, cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.cols[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map_or_else(|| self.field.zero(), |(_, v)| v.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![self.field.zero(); self.ncols()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    pub fn transpose(&self) -> SliceMatrix {
        let mut cols = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                cols[*i].push((j, v.clone()));
            }
        }
        SliceMatrix { field: self.field, nrows: self.ncols(), cols }
    }

    /// Columns of `self` followed by those of `other`.
    pub fn hcat(&self, other: &SliceMatrix) -> SliceMatrix {
        assert_eq!(self.nrows, other.nrows, "hcat of matrices with different row counts");
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        SliceMatrix { field: self.field, nrows: self.nrows, cols }
    }

    pub fn select_columns(&self, idx: &[usize]) -> SliceMatrix {
        SliceMatrix { field: self.field, nrows: self.nrows, cols: idx.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.ncols());
        let mut out = vec![self.field.zero(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, v) in c {
                out[*i] += &(v * &x[j]);
            }
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &SliceMatrix) -> SliceMatrix {
        assert_eq!(self.ncols(), other.nrows);
        let cols = other
            .cols
            .iter()
            .map(|c| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, b) in c {
                    for (i, a) in &self.cols[*k] {
                        let e = acc.entry(*i).or_insert_with(|| self.field.zero());
                        *e += &(a * b);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SliceMatrix { field: self.field, nrows: self.nrows, cols }
    }

    fn rows(&self) -> Vec<BTreeMap<usize, Scalar>> {
        let mut rows = vec![BTreeMap::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                rows[*i].insert(j, v.clone());
            }
        }
        rows
    }

    pub fn rank(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        // eliminate along the shorter side
        let m = if self.nrows < self.ncols() { self.transpose() } else { self.clone() };
        match self.field {
            Field::Rationals => rank_fraction_free(&m),
            Field::Prime(p) => rank_mod_p(&m, p as u64),
        }
    }

    /// A basis of the right kernel `{x : Mx = 0}`, one vector per non-pivot
    /// column, in increasing order of that column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let ech = Echelon::build(self, None);
        let n = self.ncols();
        let pivot_cols: std::collections::BTreeSet<usize> = ech.rows.iter().map(|r| r.lead).collect();
        let mut out = Vec::new();
        for f in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut x = vec![self.field.zero(); n];
            x[f] = self.field.one();
            ech.back_substitute(&mut x, None);
            out.push(x);
        }
        out
    }

    /// Solves `Mx = b`. On failure returns a row vector `y` with `yM = 0` and
    /// `y·b ≠ 0`, the first such one met in row order.
    pub fn solve(&self, b: &[Scalar]) -> Solve {
        assert_eq!(b.len(), self.nrows);
        let ech = Echelon::build(self, Some(b));
        if let Some(y) = ech.certificate {
            return Solve::Inconsistent(y);
        }
        let mut x = vec![self.field.zero(); self.ncols()];
        ech.back_substitute(&mut x, Some(()));
        Solve::Solution(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Solution(Vec<Scalar>),
    Inconsistent(Vec<Scalar>),
}

struct EchRow {
    lead: usize,
    entries: BTreeMap<usize, Scalar>,
    rhs: Scalar,
}

/// Row echelon form with pivots normalized to one, built row by row.
struct Echelon {
    field: Field,
    rows: Vec<EchRow>,
    certificate: Option<Vec<Scalar>>,
}

impl Echelon {
    fn build(m: &SliceMatrix, b: Option<&[Scalar]>) -> Echelon {
        let field = m.field;
        let track = b.is_some();
        let mut by_lead: BTreeMap<usize, usize> = BTreeMap::new();
        let mut rows: Vec<EchRow> = Vec::new();
        let mut combos: Vec<BTreeMap<usize, Scalar>> = Vec::new();
        let mut certificate = None;
        for (i, mut entries) in m.rows().into_iter().enumerate() {
            let mut rhs = b.map_or_else(|| field.zero(), |b| b[i].clone());
            let mut combo: BTreeMap<usize, Scalar> = BTreeMap::new();
            if track {
                combo.insert(i, field.one());
            }
            loop {
                let Some((&c, v)) = entries.iter().find(|(c, _)| by_lead.contains_key(c)).map(|(c, v)| (c, v.clone()))
                else {
                    break;
                };
                let p = &rows[by_lead[&c]];
                for (j, a) in &p.entries {
                    let e = entries.entry(*j).or_insert_with(|| field.zero());
                    *e -= &(a * &v);
                    if e.is_zero() {
                        entries.remove(j);
                    }
                }
                rhs -= &(&p.rhs * &v);
                if track {
                    for (k, a) in &combos[by_lead[&c]] {
                        let e = combo.entry(*k).or_insert_with(|| field.zero());
                        *e -= &(a * &v);
                        if e.is_zero() {
                            combo.remove(k);
                        }
                    }
                }
            }
            match entries.keys().next().copied() {
                Some(lead) => {
                    let inv = entries[&lead].inverse().unwrap();
                    for v in entries.values_mut() {
                        *v *= &inv;
                    }
                    rhs *= &inv;
                    if track {
                        for v in combo.values_mut() {
                            *v *= &inv;
                        }
                    }
                    by_lead.insert(lead, rows.len());
                    rows.push(EchRow { lead, entries, rhs });
                    combos.push(combo);
                }
                None => {
                    if !rhs.is_zero() && certificate.is_none() {
                        let mut y = vec![field.zero(); m.nrows];
                        for (k, a) in combo {
                            y[k] = a;
                        }
                        certificate = Some(y);
                    }
                }
            }
        }
        Echelon { field, rows, certificate }
    }

    /// Fills pivot coordinates of `x` from its free coordinates. With
    /// `rhs` set, solves against the stored right-hand side. A row only has
    /// entries in free columns and in lead columns of rows inserted after
    /// it, so rows are resolved in reverse insertion order.
    fn back_substitute(&self, x: &mut [Scalar], rhs: Option<()>) {
        for r in self.rows.iter().rev() {
            let mut v = if rhs.is_some() { r.rhs.clone() } else { self.field.zero() };
            for (j, a) in &r.entries {
                if *j != r.lead {
                    v -= &(a * &x[*j]);
                }
            }
            x[r.lead] = v;
        }
    }
}

fn rank_fraction_free(m: &SliceMatrix) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigInt>> = BTreeMap::new();
    for row in m.rows() {
        let mut r = integer_row(&row);
        loop {
            let Some((c, a)) = r.iter().find(|(c, _)| pivots.contains_key(c)).map(|(c, a)| (*c, a.clone())) else {
                break;
            };
            let p = &pivots[&c];
            let pc = p[&c].clone();
            // r := pc * r - a * p, which cancels column c
            for v in r.values_mut() {
                *v *= &pc;
            }
            for (j, b) in p {
                let e = r.entry(*j).or_insert_with(BigInt::zero);
                *e -= &a * b;
                if e.is_zero() {
                    r.remove(j);
                }
            }
            remove_content(&mut r);
        }
        if let Some(&lead) = r.keys().next() {
            pivots.insert(lead, r);
        }
    }
    pivots.len()
}

fn integer_row(row: &BTreeMap<usize, Scalar>) -> BTreeMap<usize, BigInt> {
    let mut l = BigInt::one();
    for v in row.values() {
        l = l.lcm(v.as_rational().unwrap().denom());
    }
    let mut out: BTreeMap<usize, BigInt> = row
        .iter()
        .map(|(j, v)| {
            let q = v.as_rational().unwrap();
            (*j, q.numer() * (&l / q.denom()))
        })
        .collect();
    remove_content(&mut out);
    out
}

fn remove_content(r: &mut BTreeMap<usize, BigInt>) {
    let mut g = BigInt::zero();
    for v in r.values() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for v in r.values_mut() {
            *v /= &g;
        }
    }
}

fn rank_mod_p(m: &SliceMatrix, p: u64) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for row in m.rows() {
        let mut r: BTreeMap<usize, u64> = row
            .into_iter()
            .map(|(j, v)| match v {
                Scalar::Fp(a) => (j, a.value() as u64),
                Scalar::Q(_) => unreachable!("rational entry in an F_p matrix"),
            })
            .collect();
        loop {
            let Some((c, a)) = r.iter().find(|(c, _)| pivots.contains_key(c)).map(|(c, a)| (*c, *a)) else {
                break;
            };
            for (j, b) in &pivots[&c] {
                let e = r.entry(*j).or_insert(0);
                *e = (*e + p - a * b % p) % p;
                if *e == 0 {
                    r.remove(j);
                }
            }
        }
        if let Some((&lead, &v)) = r.iter().next() {
            let inv = pow_mod(v, p - 2, p);
            for x in r.values_mut() {
                *x = *x * inv % p;
            }
            pivots.insert(lead, r);
        }
    }
    pivots.len()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Dense Gaussian elimination over the field, used as an oracle.
    fn dense_rank(field: Field, mut a: Vec<Vec<Scalar>>) -> usize {
        let nrows = a.len();
        let ncols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..nrows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            let inv = a[rank][c].inverse().unwrap();
            for r in 0..nrows {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] * &inv;
                    for k in 0..ncols {
                        let t = &a[rank][k] * &f;
                        a[r][k] -= &t;
                    }
                }
            }
            rank += 1;
        }
        let _ = field;
        rank
    }

    fn mat(field: Field, entries: &[Vec<i64>]) -> SliceMatrix {
        let rows: Vec<Vec<Scalar>> = entries.iter().map(|r| r.iter().map(|&v| field.int(v)).collect()).collect();
        SliceMatrix::from_dense(field, &rows)
    }

    #[test]
    fn small_ranks() {
        let q = Field::Rationals;
        assert_eq!(mat(q, &[vec![1, 1]]).rank(), 1);
        assert_eq!(SliceMatrix::zero(q, 3, 4).rank(), 0);
        assert_eq!(mat(q, &[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(mat(Field::Prime(3), &[vec![1, 2], vec![2, 1]]).rank(), 1);
        assert_eq!(mat(q, &[vec![1, 2], vec![2, 1]]).rank(), 2);
    }

    #[test]
    fn random_matrices_match_dense_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for field in [Field::Prime(101), Field::Prime(2), Field::Rationals] {
            for _ in 0..30 {
                let rows: Vec<Vec<i64>> = (0..20)
                    .map(|_| (0..20).map(|_| if rng.gen_bool(0.3) { rng.gen_range(-5..=5) } else { 0 }).collect())
                    .collect();
                let m = mat(field, &rows);
                assert_eq!(m.rank(), dense_rank(field, m.to_dense()));
            }
        }
    }

    #[test]
    fn kernel_and_solve() {
        let q = Field::Rationals;
        let m = mat(q, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(Scalar::is_zero));
        match m.solve(&[q.int(2), q.int(3)]) {
            Solve::Solution(x) => assert_eq!(m.mul_vec(&x), vec![q.int(2), q.int(3)]),
            other => panic!("{other:?}"),
        }
        let m = mat(q, &[vec![1, 1], vec![2, 2]]);
        match m.solve(&[q.int(1), q.int(1)]) {
            Solve::Inconsistent(y) => {
                assert!(m.transpose().mul_vec(&y).iter().all(Scalar::is_zero));
                let yb = &(&y[0] * &q.int(1)) + &(&y[1] * &q.int(1));
                assert!(!yb.is_zero());
            }
            other => panic!("{other:?}"),
        }
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in small_matrix()) {
            for field in [Field::Rationals, Field::Prime(7)] {
                let m = mat(field, &rows);
                let ker = m.nullspace();
                prop_assert_eq!(m.rank() + ker.len(), m.ncols());
                for v in &ker {
                    prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
                }
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }
        }

        #[test]
        fn rank_invariant_under_permutation(rows in small_matrix(), seed in 0u64..1000) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut perm = rows.clone();
            perm.shuffle(&mut rng);
            let q = Field::Rationals;
            prop_assert_eq!(mat(q, &rows).rank(), mat(q, &perm).rank());
        }

        #[test]
        fn solve_is_correct(rows in small_matrix(), xs in prop::collection::vec(-3i64..=3, 7)) {
            let q = Field::Rationals;
            let m = mat(q, &rows);
            let x: Vec<Scalar> = xs[..m.ncols()].iter().map(|&v| q.int(v)).collect();
            let b = m.mul_vec(&x);
            match m.solve(&b) {
                Solve::Solution(y) => prop_assert_eq!(m.mul_vec(&y), b),
                Solve::Inconsistent(_) => prop_assert!(false, "consistent system reported inconsistent"),
            }
        }
    }
}
