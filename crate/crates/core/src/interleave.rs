//! 12x12 block frequency interleaver.
//!
//! Operates on constellation cells (one cell = one mapper symbol worth of
//! bits) in blocks of 144: cells are written row-wise and read column-wise,
//! so output index r*12+c receives input index c*12+r. For the square 12x12
//! geometry this transpose is an involution, making interleave and
//! deinterleave the same permutation; both names are kept for chain
//! readability.

use crate::error::{Error, Result};

/// Interleaver geometry. Rows and columns are fixed at 12 (144 cells per
/// block); `cell_bits` records the constellation cell width it rides on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterleaverParams {
    pub rows: usize,
    pub cols: usize,
    pub cell_bits: usize,
}

impl InterleaverParams {
    pub fn new(cell_bits: usize) -> Result<Self> {
        if ![2, 4, 6].contains(&cell_bits) {
            return Err(Error::param(
                "cell_bits",
                format!("{cell_bits} not one of 2, 4, 6"),
            ));
        }
        Ok(InterleaverParams {
            rows: 12,
            cols: 12,
            cell_bits,
        })
    }

    pub fn block_cells(&self) -> usize {
        self.rows * self.cols
    }
}

fn permute<T: Clone>(
    cells: &[T],
    p: &InterleaverParams,
    index_of: impl Fn(usize, usize) -> usize,
) -> Result<Vec<T>> {
    let block = p.block_cells();
    if !cells.len().is_multiple_of(block) {
        return Err(Error::NotMultipleOf {
            what: "interleaver input cells",
            len: cells.len(),
            multiple: block,
        });
    }
    let mut out = Vec::with_capacity(cells.len());
    for chunk in cells.chunks_exact(block) {
        for r in 0..p.rows {
            for c in 0..p.cols {
                out.push(chunk[index_of(r, c)].clone());
            }
        }
    }
    Ok(out)
}

/// Write row-wise, read column-wise: output r*12+c takes input c*12+r.
pub fn interleave_block<T: Clone>(cells: &[T], p: &InterleaverParams) -> Result<Vec<T>> {
    permute(cells, p, |r, c| c * p.rows + r)
}

/// Exact inverse permutation of [`interleave_block`].
pub fn deinterleave_block<T: Clone>(cells: &[T], p: &InterleaverParams) -> Result<Vec<T>> {
    permute(cells, p, |r, c| c * p.rows + r)
}
