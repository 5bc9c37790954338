//! Partitioned matrices, poset zero patterns and block compression.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poset::{NodeSet, Poset};

/// Block sizes (n_1, …, n_p). Zero sizes are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl Partition {
    pub fn new(sizes: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for s in &sizes {
            acc += s;
            offsets.push(acc);
        }
        Partition { sizes, offsets }
    }

    pub fn uniform(parts: usize, size: usize) -> Self {
        Self::new(vec![size; parts])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn parts(&self) -> usize {
        self.sizes.len()
    }

    pub fn total(&self) -> usize {
        self.offsets[self.sizes.len()]
    }

    pub fn size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    /// Global coordinate range of block i.
    pub fn range(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Global coordinates of the blocks in `set`, ascending.
    pub fn indices<'a>(&self, set: impl IntoIterator<Item = &'a usize>) -> Vec<usize> {
        let mut blocks: Vec<usize> = set.into_iter().copied().collect();
        blocks.sort_unstable();
        blocks.dedup();
        blocks.into_iter().flat_map(|i| self.range(i)).collect()
    }

    /// Sizes zeroed outside `set` (the partition n̄_S).
    pub fn restricted(&self, set: &NodeSet) -> Self {
        Self::new(
            self.sizes
                .iter()
                .enumerate()
                .map(|(i, &s)| if set.contains(&i) { s } else { 0 })
                .collect(),
        )
    }

    /// Block owning global coordinate k.
    pub fn block_of(&self, k: usize) -> usize {
        (0..self.parts())
            .find(|&i| self.range(i).contains(&k))
            .expect("coordinate out of range")
    }

    fn check_parts(&self, p: usize) -> Result<()> {
        if self.parts() != p {
            return Err(Error::PartitionMismatch {
                expected: p,
                found: self.parts(),
            });
        }
        Ok(())
    }
}

/// A dense rational matrix with row and column partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockMatrix {
    entries: Matrix,
    rows: Partition,
    cols: Partition,
}

impl BlockMatrix {
    pub fn new(entries: Matrix, rows: Partition, cols: Partition) -> Result<Self> {
        if entries.shape() != (rows.total(), cols.total()) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for partitions of totals {} and {}",
                entries.nrows(),
                entries.ncols(),
                rows.total(),
                cols.total()
            )));
        }
        if rows.parts() != cols.parts() {
            return Err(Error::PartitionMismatch {
                expected: rows.parts(),
                found: cols.parts(),
            });
        }
        Ok(BlockMatrix { entries, rows, cols })
    }

    pub fn zeros(rows: &Partition, cols: &Partition) -> Self {
        Self::new(Matrix::zeros(rows.total(), cols.total()), rows.clone(), cols.clone())
            .expect("zero matrix matches its partitions")
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn into_entries(self) -> Matrix {
        self.entries
    }

    pub fn row_partition(&self) -> &Partition {
        &self.rows
    }

    pub fn col_partition(&self) -> &Partition {
        &self.cols
    }

    pub fn parts(&self) -> usize {
        self.rows.parts()
    }

    pub fn block(&self, i: usize, j: usize) -> Matrix {
        let rows: Vec<usize> = self.rows.range(i).collect();
        let cols: Vec<usize> = self.cols.range(j).collect();
        self.entries.select(&rows, &cols)
    }

    /// Blocks (i, j) that are nonzero although j ⋡ i.
    pub fn incidence_violations(&self, poset: &Poset) -> Result<Vec<(usize, usize)>> {
        self.rows.check_parts(poset.size())?;
        self.cols.check_parts(poset.size())?;
        let mut out = Vec::new();
        for i in 0..self.parts() {
            for j in 0..self.parts() {
                if !poset.geq(j, i) && !self.block(i, j).is_zero() {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }

    pub fn is_incident(&self, poset: &Poset) -> Result<bool> {
        Ok(self.incidence_violations(poset)?.is_empty())
    }

    /// M(R, S): block rows in R and block columns in S, with zeroed sizes elsewhere.
    pub fn compress(&self, r: &NodeSet, s: &NodeSet) -> Self {
        let rows = self.rows.indices(r);
        let cols = self.cols.indices(s);
        BlockMatrix {
            entries: self.entries.select(&rows, &cols),
            rows: self.rows.restricted(r),
            cols: self.cols.restricted(s),
        }
    }

    pub fn mul(&self, other: &BlockMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::IncompatibleShapes(format!(
                "column partition {:?} against row partition {:?}",
                self.cols.sizes(),
                other.rows.sizes()
            )));
        }
        Ok(BlockMatrix {
            entries: self.entries.mul(&other.entries)?,
            rows: self.rows.clone(),
            cols: other.cols.clone(),
        })
    }

    pub fn transpose(&self) -> Self {
        BlockMatrix {
            entries: self.entries.transpose(),
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }
}

/// GH for structured G and H, with the closure property asserted.
pub fn structured_multiply(g: &BlockMatrix, h: &BlockMatrix, poset: &Poset) -> Result<BlockMatrix> {
    for m in [g, h] {
        if let Some(&(row, col)) = m.incidence_violations(poset)?.first() {
            return Err(Error::StructureViolation { row, col });
        }
    }
    let product = g.mul(h)?;
    if let Some(&(row, col)) = product.incidence_violations(poset)?.first() {
        return Err(Error::StructureViolation { row, col });
    }
    Ok(product)
}

/// Exact inverse of a structured, square-partitioned K.
pub fn structured_inverse(k: &BlockMatrix, poset: &Poset) -> Result<BlockMatrix> {
    if k.rows != k.cols {
        return Err(Error::ShapeMismatch("inverse needs equal row and column partitions".into()));
    }
    if let Some(&(row, col)) = k.incidence_violations(poset)?.first() {
        return Err(Error::StructureViolation { row, col });
    }
    let inv = BlockMatrix {
        entries: k.entries.inverse()?,
        rows: k.rows.clone(),
        cols: k.cols.clone(),
    };
    if let Some(&(row, col)) = inv.incidence_violations(poset)?.first() {
        return Err(Error::StructureViolation { row, col });
    }
    Ok(inv)
}

/// G(Q, R)·H(R, S), which equals (GH)(Q, S) whenever ↓S ⊆ R.
/// `r` defaults to ↓S.
pub fn compressed_product(
    g: &BlockMatrix,
    h: &BlockMatrix,
    poset: &Poset,
    q: &NodeSet,
    s: &NodeSet,
    r: Option<&NodeSet>,
) -> Result<BlockMatrix> {
    let down_s = poset.derived_set(s, crate::poset::DerivedKind::Down)?;
    let r = r.unwrap_or(&down_s);
    if !down_s.is_subset(r) {
        return Err(Error::DownSetNotContained);
    }
    g.compress(q, r).mul(&h.compress(r, s))
}

pub fn block_identity(n: &Partition) -> BlockMatrix {
    BlockMatrix {
        entries: Matrix::identity(n.total()),
        rows: n.clone(),
        cols: n.clone(),
    }
}

/// I_n̄(:, S).
pub fn embed(n: &Partition, s: &NodeSet) -> BlockMatrix {
    let all: NodeSet = (0..n.parts()).collect();
    block_identity(n).compress(&all, s)
}

/// I_n̄(S, :).
pub fn project(n: &Partition, s: &NodeSet) -> BlockMatrix {
    let all: NodeSet = (0..n.parts()).collect();
    block_identity(n).compress(s, &all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> Poset {
        Poset::from_edges(3, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn compression_keeps_partition_length() {
        let n = Partition::new(vec![1, 2, 1]);
        let m = BlockMatrix::new(
            Matrix::from_ints(&[[1, 0, 0, 0], [2, 3, 0, 0], [4, 5, 6, 0], [7, 0, 0, 8]]),
            n.clone(),
            n.clone(),
        )
        .unwrap();
        let r: NodeSet = [1, 2].into();
        let s: NodeSet = [0].into();
        let c = m.compress(&r, &s);
        assert_eq!(c.row_partition().sizes(), &[0, 2, 1]);
        assert_eq!(c.col_partition().sizes(), &[1, 0, 0]);
        assert_eq!(c.entries(), &Matrix::from_ints(&[[2], [4], [7]]));
        let empty = m.compress(&NodeSet::new(), &s);
        assert_eq!(empty.entries().shape(), (0, 1));
    }

    #[test]
    fn incidence_of_p1_pattern() {
        let n = Partition::uniform(3, 1);
        let ok = BlockMatrix::new(Matrix::from_ints(&[[1, 0, 0], [2, 3, 0], [4, 0, 5]]), n.clone(), n.clone())
            .unwrap();
        assert!(ok.is_incident(&p1()).unwrap());
        let bad = BlockMatrix::new(Matrix::from_ints(&[[1, 0, 0], [2, 3, 9], [4, 0, 5]]), n.clone(), n.clone())
            .unwrap();
        assert_eq!(bad.incidence_violations(&p1()).unwrap(), vec![(1, 2)]);
        assert!(matches!(
            ok.is_incident(&Poset::antichain(2)),
            Err(Error::PartitionMismatch { .. })
        ));
    }

    #[test]
    fn embed_project_roundtrip() {
        let n = Partition::new(vec![2, 0, 3]);
        let s: NodeSet = [0, 1].into();
        let e = embed(&n, &s);
        let p = project(&n, &s);
        assert_eq!(p.mul(&e).unwrap().entries(), &Matrix::identity(2));
        let all: NodeSet = (0..3).collect();
        assert_eq!(embed(&n, &all), block_identity(&n));
    }
}
