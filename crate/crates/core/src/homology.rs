//! Slice matrices of graded maps, homology dimensions and quasi-isomorphism
//! verdicts.
//!
//! Every graded space in this crate is a subspace of some `B^{⊗_A m}` or of
//! a direct sum of such, so a slice is described by a list of elements in
//! flat coordinates. Images are written in the flat word basis of the
//! target; ranks do not depend on which spanning coordinates are used as
//! long as they are injective, which flat coordinates are.

use std::collections::HashMap;
use std::hash::Hash;

use crate::algebra::DGAlgebra;
use crate::error::{Error, Result};
use crate::module::SemifreeModule;
use crate::field::{Field, Scalar};
use crate::linalg::SliceMatrix;

/// Assigns consecutive indices to coordinate keys as they are met.
#[derive(Clone, Debug)]
pub struct KeyIndex<K> {
    keys: Vec<K>,
    index: HashMap<K, usize>,
}

impl<K: Hash + Eq + Clone> Default for KeyIndex<K> {
    fn default() -> Self {
        KeyIndex { keys: Vec::new(), index: HashMap::new() }
    }
}

impl<K: Hash + Eq + Clone> KeyIndex<K> {
    pub fn from_keys(keys: impl IntoIterator<Item = K>) -> Self {
        let mut k = KeyIndex::default();
        for key in keys {
            k.insert(key);
        }
        k
    }

    pub fn insert(&mut self, key: K) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        self.keys.push(key.clone());
        self.index.insert(key, self.keys.len() - 1);
        self.keys.len() - 1
    }

    pub fn get(&self, key: &K) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }
}

/// Builds the matrix whose columns are the given vectors, each a list of
/// (coordinate key, value) pairs. Keys are indexed in order of first
/// appearance unless an index is supplied.
pub fn assemble<K: Hash + Eq + Clone>(
    field: Field,
    columns: &[Vec<(K, Scalar)>],
    index: &mut KeyIndex<K>,
) -> SliceMatrix {
    let cols: Vec<Vec<(usize, Scalar)>> = columns
        .iter()
        .map(|c| c.iter().map(|(k, v)| (index.insert(k.clone()), v.clone())).collect())
        .collect();
    SliceMatrix::from_columns(field, index.len(), cols)
}

/// Rank of the span of the given vectors.
pub fn span_rank<K: Hash + Eq + Clone>(field: Field, columns: &[Vec<(K, Scalar)>]) -> usize {
    let mut idx = KeyIndex::default();
    assemble(field, columns, &mut idx).rank()
}

/// The degrees through which a computation is trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub max_degree: u32,
}

impl Window {
    pub fn new(max_degree: u32) -> Self {
        Window { max_degree }
    }

    /// Slices may be assembled for source degrees up to `max_degree`.
    pub fn check_slice(&self, degree: i64) -> Result<()> {
        if degree < 0 || degree > self.max_degree as i64 {
            return Err(Error::WindowIncomplete { requested: degree, window: self.max_degree as i64 });
        }
        Ok(())
    }

    /// Homology in degree `m` needs the differential out of degree `m + 1`.
    pub fn check_homology(&self, degree: i64) -> Result<()> {
        if degree < 0 || degree + 1 > self.max_degree as i64 {
            return Err(Error::WindowIncomplete { requested: degree, window: self.max_degree as i64 });
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("degree<={}", self.max_degree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyRow {
    pub degree: u32,
    /// Position along the resolution direction, for bar-type complexes.
    pub position: Option<usize>,
    pub cycles: usize,
    pub boundaries: usize,
    pub homology: usize,
}

/// Homology dimensions by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    pub rows: Vec<HomologyRow>,
}

impl HomologyTable {
    pub fn homology(&self, degree: u32) -> Option<usize> {
        self.rows.iter().find(|r| r.degree == degree).map(|r| r.homology)
    }

    pub fn total_homology(&self) -> usize {
        self.rows.iter().map(|r| r.homology).sum()
    }

    /// Rows of an augmented complex `… → C_1 → C_0 → C_{-1} → 0` in one
    /// internal degree: `dims[p]` is the dimension at position `p - 1` and
    /// `ranks[p]` the rank of the map out of it. The augmentation target is
    /// reported as position 0 of `rows`, shifted so that positions start at
    /// the first resolving term.
    pub fn push_augmented(&mut self, degree: u32, dims: &[usize], ranks: &[usize], positions: usize) {
        for p in 0..positions {
            let cycles = dims[p + 1] - ranks[p + 1];
            let boundaries = ranks[p + 2];
            self.rows.push(HomologyRow {
                degree,
                position: Some(p),
                cycles,
                boundaries,
                homology: cycles - boundaries,
            });
        }
    }

    /// Builds the table from chain dimensions and differential ranks:
    /// `dims[m]` is the dimension in degree `m`, `ranks[m]` the rank of the
    /// differential out of degree `m`. Rows are produced for `m < dims.len() - 1`.
    pub fn from_ranks(dims: &[usize], ranks: &[usize]) -> HomologyTable {
        let mut rows = Vec::new();
        for m in 0..dims.len().saturating_sub(1) {
            let cycles = dims[m] - ranks[m];
            let boundaries = ranks[m + 1];
            rows.push(HomologyRow { degree: m as u32, position: None, cycles, boundaries, homology: cycles - boundaries });
        }
        HomologyTable { rows }
    }
}

/// The complexes whose homology can be tabulated.
#[derive(Clone, Debug)]
pub enum HomologyObject {
    /// `B` with its differential, graded by degree.
    B,
    /// The augmented reduced bar resolution, by internal degree and position.
    ReducedBar,
    /// The augmented complex `N⊗_B(𝐁,𝐝)` with at most `max_n` middle factors.
    BarN { module: SemifreeModule, max_n: usize },
    /// `(𝔹, 𝔻)` graded by total degree.
    SemifreeBB,
}

/// Homology dimensions for degrees `≤ max_degree - 1`.
pub fn homology_dims(alg: &DGAlgebra, object: &HomologyObject, max_degree: u32) -> Result<HomologyTable> {
    Window::new(max_degree).check_homology(0)?;
    Ok(match object {
        HomologyObject::B => crate::semifree::b_homology(alg, max_degree),
        HomologyObject::SemifreeBB => crate::semifree::bb_homology(alg, max_degree),
        HomologyObject::ReducedBar => {
            let mut t = HomologyTable::default();
            for m in 0..max_degree {
                let (dims, mut ranks) = crate::bar::reduced_ranks(alg, m);
                // augmented: position -1 is B, which maps to zero
                let mut aranks = vec![0];
                aranks.append(&mut ranks);
                aranks.push(0);
                t.push_augmented(m, &dims, &aranks, m as usize + 1);
            }
            t
        }
        HomologyObject::BarN { module, max_n } => {
            let mut t = HomologyTable::default();
            for m in 0..max_degree {
                let (dims, ranks) = crate::module::bar_n_dims_ranks(alg, module, *max_n, m);
                t.push_augmented(m, &dims, &ranks, *max_n + 1);
            }
            t
        }
    })
}
