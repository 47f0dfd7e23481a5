use crate::error::{Error, Result};

/// Maps `(cell, replica)` pairs onto physical addresses.
///
/// Cells are grouped in blocks of `stride`. Inside a block all replica-0
/// copies come first, then all replica-1 copies, and so on, so that replicas
/// of one cell are exactly `stride` words apart:
///
/// ```text
/// addr(i, j) = (i / stride) * stride * r_max + j * stride + i % stride
/// ```
///
/// A burst of at most `stride` contiguous words therefore touches at most one
/// replica of any cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayoutMap {
    n_cells: usize,
    stride: usize,
    r_max: usize,
}

impl LayoutMap {
    pub fn new(n_cells: usize, stride: usize, r_max: usize) -> Result<Self> {
        if n_cells == 0 {
            return Err(Error::invalid("layout needs at least one cell"));
        }
        if stride == 0 {
            return Err(Error::invalid("stride must be at least 1"));
        }
        if n_cells % stride != 0 {
            return Err(Error::invalid(format!(
                "cell count {n_cells} is not a multiple of stride {stride}"
            )));
        }
        if r_max < 3 || r_max % 2 == 0 {
            return Err(Error::invalid(format!(
                "maximum redundancy must be odd and at least 3, got {r_max}"
            )));
        }
        n_cells
            .checked_mul(r_max)
            .ok_or_else(|| Error::invalid("layout capacity overflows"))?;
        Ok(LayoutMap {
            n_cells,
            stride,
            r_max,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn r_max(&self) -> usize {
        self.r_max
    }

    /// Physical words needed to house all replicas of all cells.
    pub fn capacity(&self) -> usize {
        self.n_cells * self.r_max
    }

    /// Physical address of replica `replica` of `cell`.
    ///
    /// Callers must keep `cell < n_cells` and `replica < r_max`.
    #[inline]
    pub fn addr(&self, cell: usize, replica: usize) -> usize {
        debug_assert!(cell < self.n_cells && replica < self.r_max);
        let block = cell / self.stride;
        block * self.stride * self.r_max + replica * self.stride + cell % self.stride
    }

    /// Inverse of [`addr`](Self::addr).
    pub fn locate(&self, addr: usize) -> Option<(usize, usize)> {
        if addr >= self.capacity() {
            return None;
        }
        let block_len = self.stride * self.r_max;
        let block = addr / block_len;
        let offset = addr % block_len;
        Some((block * self.stride + offset % self.stride, offset / self.stride))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_layout_addresses() {
        let l = LayoutMap::new(20000, 20, 11).unwrap();
        assert_eq!(l.addr(0, 0), 0);
        assert_eq!(l.addr(0, 1), 20);
        assert_eq!(l.addr(25, 2), 265);
        assert_eq!(l.capacity(), 220000);
        assert_eq!(l.addr(19999, 10), 219999);
    }

    #[test]
    fn locate_inverts_addr() {
        let l = LayoutMap::new(60, 20, 5).unwrap();
        for cell in 0..60 {
            for rep in 0..5 {
                assert_eq!(l.locate(l.addr(cell, rep)), Some((cell, rep)));
            }
        }
        assert_eq!(l.locate(300), None);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(LayoutMap::new(0, 20, 11).is_err());
        assert!(LayoutMap::new(100, 0, 11).is_err());
        assert!(LayoutMap::new(110, 20, 11).is_err());
        assert!(LayoutMap::new(100, 20, 10).is_err());
        assert!(LayoutMap::new(100, 20, 1).is_err());
        assert!(LayoutMap::new(1, 1, 3).is_ok());
    }
}
