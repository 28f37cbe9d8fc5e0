//! Small enumeration helpers shared by the exhaustive checkers.

/// Iterates every index vector of a mixed-radix odometer in lexicographic
/// order: `[0,0,..]`, `[0,..,1]`, ... Radix 0 anywhere yields nothing; an
/// empty radix list yields the single empty vector.
pub(crate) struct CartesianIndices {
    radices: Vec<usize>,
    state: Vec<usize>,
    started: bool,
    exhausted: bool,
}

impl CartesianIndices {
    pub(crate) fn new(radices: Vec<usize>) -> Self {
        let exhausted = radices.iter().any(|&r| r == 0);
        let state = vec![0; radices.len()];
        CartesianIndices {
            radices,
            state,
            started: false,
            exhausted,
        }
    }

    /// Total number of index vectors, without overflow.
    pub(crate) fn count_total(radices: &[usize]) -> u128 {
        radices.iter().fold(1u128, |acc, &r| {
            acc.saturating_mul(r as u128)
        })
    }
}

impl Iterator for CartesianIndices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.exhausted {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.state.clone());
        }
        for pos in (0..self.state.len()).rev() {
            self.state[pos] += 1;
            if self.state[pos] < self.radices[pos] {
                return Some(self.state.clone());
            }
            self.state[pos] = 0;
        }
        self.exhausted = true;
        None
    }
}

/// Iterates all subsets of `0..n` as bitmasks, in increasing mask order.
pub(crate) fn subset_masks(n: usize) -> impl Iterator<Item = u64> {
    debug_assert!(n < 64);
    0..(1u64 << n)
}
