//! Exhaustive enumeration of `G(k, n)(F_q)` by Schubert cell.
//!
//! Each `k`-subspace has a unique reduced row-echelon basis; grouping by the
//! pivot columns splits the Grassmannian into cells that can be walked
//! independently. Patterns are visited in colexicographic order and the free
//! entries of each cell in odometer order (last free entry fastest).

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::Subspace;
use crate::matrix::Matrix;

pub const DEFAULT_CEILING: u64 = 100_000_000;

/// `[n choose k]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    // sum over pivot patterns of q^(free entries) is exact and avoids division
    let mut table = vec![vec![0u128; k + 1]; n + 1];
    for row in table.iter_mut() {
        row[0] = 1;
    }
    for m in 1..=n {
        for j in 1..=k.min(m) {
            // [m, j] = [m-1, j-1] + q^j [m-1, j]
            let qj = (q as u128).checked_pow(j as u32).unwrap_or(u128::MAX);
            let stay = table[m - 1][j].saturating_mul(qj);
            table[m][j] = table[m - 1][j - 1].saturating_add(stay);
        }
    }
    table[n][k]
}

/// All `k`-subsets of `0..n` in colexicographic order.
pub fn pivot_patterns(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            rec(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// `(row, column)` positions of the free entries of the echelon cell with these pivots.
pub fn free_positions(n: usize, pattern: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (row, &p) in pattern.iter().enumerate() {
        for c in p + 1..n {
            if !pattern.contains(&c) {
                out.push((row, c));
            }
        }
    }
    out
}

/// Iterator over every `k`-subspace of `F_q^n`, each exactly once.
pub struct SubspaceStream {
    field: Field,
    n: usize,
    k: usize,
    elements: Vec<Scalar>,
    patterns: Vec<Vec<usize>>,
    pattern_idx: usize,
    free: Vec<(usize, usize)>,
    digits: Vec<usize>,
    exhausted_cell: bool,
}

impl SubspaceStream {
    pub fn new(field: &Field, n: usize, k: usize, ceiling: u64) -> Result<SubspaceStream> {
        let q = field
            .order()
            .ok_or_else(|| Error::InvalidField("enumeration needs a finite field".into()))?;
        if k > n {
            return Err(Error::DimensionMismatch(format!("k = {k} exceeds n = {n}")));
        }
        let total = gaussian_binomial(n, k, q);
        if total > ceiling as u128 {
            return Err(Error::CeilingExceeded {
                needed: total.to_string(),
                ceiling,
            });
        }
        let patterns = pivot_patterns(n, k);
        Ok(Self::with_patterns(field, n, k, patterns))
    }

    /// Stream restricted to a single Schubert cell.
    pub fn cell(field: &Field, n: usize, pattern: &[usize]) -> SubspaceStream {
        Self::with_patterns(field, n, pattern.len(), vec![pattern.to_vec()])
    }

    fn with_patterns(field: &Field, n: usize, k: usize, patterns: Vec<Vec<usize>>) -> SubspaceStream {
        let mut s = SubspaceStream {
            field: field.clone(),
            n,
            k,
            elements: field.elements().expect("finite field"),
            patterns,
            pattern_idx: 0,
            free: Vec::new(),
            digits: Vec::new(),
            exhausted_cell: true,
        };
        s.enter_pattern();
        s
    }

    fn enter_pattern(&mut self) {
        if let Some(p) = self.patterns.get(self.pattern_idx) {
            self.free = free_positions(self.n, p);
            self.digits = vec![0; self.free.len()];
            self.exhausted_cell = false;
        }
    }

    pub fn patterns(&self) -> &[Vec<usize>] {
        &self.patterns
    }

    fn current(&self) -> Subspace {
        let f = &self.field;
        let pattern = &self.patterns[self.pattern_idx];
        let mut m = Matrix::zeros(f, self.k, self.n);
        for (row, &p) in pattern.iter().enumerate() {
            m.set(row, p, f.one());
        }
        for (&(row, col), &d) in self.free.iter().zip(&self.digits) {
            m.set(row, col, self.elements[d].clone());
        }
        Subspace::span(&m)
    }

    fn advance(&mut self) {
        let q = self.elements.len();
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                return;
            }
            *d = 0;
        }
        self.exhausted_cell = true;
    }
}

impl Iterator for SubspaceStream {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        while self.exhausted_cell {
            if self.pattern_idx + 1 >= self.patterns.len() {
                return None;
            }
            self.pattern_idx += 1;
            self.enter_pattern();
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 1, 3), 13);
        assert_eq!(gaussian_binomial(5, 0, 7), 1);
        assert_eq!(gaussian_binomial(2, 3, 7), 0);
    }

    #[test]
    fn stream_is_complete_and_distinct() {
        for (n, k, q) in [(4, 2, 2), (3, 1, 3), (4, 0, 5), (4, 4, 3), (5, 2, 2)] {
            let f = Field::of_order(q).unwrap();
            let all: Vec<Subspace> = SubspaceStream::new(&f, n, k, DEFAULT_CEILING).unwrap().collect();
            assert_eq!(all.len() as u128, gaussian_binomial(n, k, q));
            let set: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            assert!(all.iter().all(|s| s.dim() == k));
        }
    }

    #[test]
    fn colex_order() {
        let p = pivot_patterns(4, 2);
        assert_eq!(p[0], vec![0, 1]);
        assert_eq!(p[1], vec![0, 2]);
        assert_eq!(p[2], vec![1, 2]);
        assert_eq!(p[5], vec![2, 3]);
    }

    #[test]
    fn ceiling_guard() {
        let f = Field::prime(2).unwrap();
        let err = SubspaceStream::new(&f, 4, 2, 10).err().unwrap();
        assert!(matches!(err, Error::CeilingExceeded { ceiling: 10, .. }));
    }
}
