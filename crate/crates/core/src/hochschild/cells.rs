//! Weight-composition bookkeeping for tensor-product cells.
//!
//! A cell of a bar-type complex at (slot count p, total weight w) is a direct
//! sum over weight compositions `w = w_0 + w_1 + ... + w_p` of tensor
//! products of graded components. Sectors are ordered lexicographically by
//! their weight vector, and indices inside a sector are flattened big-endian
//! (first factor most significant), matching the Kronecker layout.

/// One composition sector: slot weights with slot dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub weights: Vec<usize>,
    pub dims: Vec<usize>,
    pub offset: usize,
}

impl Sector {
    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    /// Flat index inside the sector of a multi-index.
    pub fn flatten(&self, multi: &[usize]) -> usize {
        debug_assert_eq!(multi.len(), self.dims.len());
        multi
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn unflatten(&self, mut idx: usize) -> Vec<usize> {
        let mut multi = vec![0usize; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            multi[k] = idx % self.dims[k];
            idx /= self.dims[k];
        }
        multi
    }
}

#[derive(Clone, Debug, Default)]
pub struct TensorCell {
    pub sectors: Vec<Sector>,
    pub dim: usize,
}

impl TensorCell {
    /// Builds a cell with `slots` tensor factors of total weight `w`.
    /// `min_weights[k]` is the minimum weight of factor `k`; `dim_of(k, d)`
    /// the dimension of factor `k` in weight `d`. Zero-dimensional sectors
    /// are dropped.
    pub fn build(
        slots: usize,
        w: usize,
        min_weights: &[usize],
        dim_of: impl Fn(usize, usize) -> usize,
    ) -> Self {
        assert_eq!(min_weights.len(), slots);
        let mut sectors = Vec::new();
        let mut weights = vec![0usize; slots];
        enumerate_compositions(0, w, slots, min_weights, &mut weights, &mut |ws| {
            let dims: Vec<usize> = ws.iter().enumerate().map(|(k, &d)| dim_of(k, d)).collect();
            if dims.iter().all(|&d| d > 0) {
                sectors.push(Sector {
                    weights: ws.to_vec(),
                    dims,
                    offset: 0,
                });
            }
        });
        sectors.sort_by(|a, b| a.weights.cmp(&b.weights));
        let mut offset = 0usize;
        for s in &mut sectors {
            s.offset = offset;
            offset += s.size();
        }
        TensorCell {
            sectors,
            dim: offset,
        }
    }

    pub fn sector_by_weights(&self, weights: &[usize]) -> Option<&Sector> {
        self.sectors
            .binary_search_by(|s| s.weights.as_slice().cmp(weights))
            .ok()
            .map(|i| &self.sectors[i])
    }

    /// Flat index of (sector weights, multi-index); None when the sector has
    /// been dropped as zero-dimensional.
    pub fn index(&self, weights: &[usize], multi: &[usize]) -> Option<usize> {
        self.sector_by_weights(weights)
            .map(|s| s.offset + s.flatten(multi))
    }

    /// Iterates all basis elements as (sector, multi-index, flat index).
    pub fn iter(&self) -> impl Iterator<Item = (&Sector, Vec<usize>, usize)> + '_ {
        self.sectors.iter().flat_map(|s| {
            (0..s.size()).map(move |i| (s, s.unflatten(i), s.offset + i))
        })
    }
}

fn enumerate_compositions(
    pos: usize,
    remaining: usize,
    slots: usize,
    min_weights: &[usize],
    current: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if pos == slots {
        if remaining == 0 {
            emit(current);
        }
        return;
    }
    let tail_min: usize = min_weights[pos + 1..].iter().sum();
    let lo = min_weights[pos];
    if remaining < lo + tail_min {
        return;
    }
    for v in lo..=(remaining - tail_min) {
        current[pos] = v;
        enumerate_compositions(pos + 1, remaining - v, slots, min_weights, current, emit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_with_minimums() {
        // coefficient slot free, two positive slots, total 3
        let cell = TensorCell::build(3, 3, &[0, 1, 1], |_, d| if d <= 3 { d + 1 } else { 0 });
        // compositions: (0,1,2), (0,2,1), (1,1,1)
        assert_eq!(cell.sectors.len(), 3);
        let dims: Vec<usize> = cell.sectors.iter().map(Sector::size).collect();
        // dims per slot are weight+1
        assert_eq!(dims, vec![1 * 2 * 3, 1 * 3 * 2, 2 * 2 * 2]);
        assert_eq!(cell.dim, 6 + 6 + 8);
    }

    #[test]
    fn flatten_roundtrip() {
        let cell = TensorCell::build(2, 2, &[0, 1], |_, d| d + 1);
        for (s, multi, flat) in cell.iter() {
            assert_eq!(cell.index(&s.weights, &multi), Some(flat));
        }
    }
}
