//! Counting isotropic subspaces by their intersection with the radical.
//!
//! The fast path walks one Schubert cell at a time, choosing the echelon rows
//! in order. Isotropy of row `j` against earlier rows only depends on the span
//! `W` of their images `v G`, and the final intersection `dim(V ∩ K)` equals
//! `k − dim(V G)`, so the remaining count is a function of `(j, W)` alone and
//! is memoized on the echelon form of `W`. Row `j` ranges over an affine
//! space of solutions whose image modulo `W` is again affine; only the image
//! points are visited, each weighted by its fiber.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, GaloisField};
use crate::forms::AlternatingForm;
use crate::grassmann::enumerate::{pivot_patterns, SubspaceStream};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumParams {
    pub r: usize,
    pub p: usize,
    pub delta: usize,
    pub k: usize,
    pub q: u64,
}

/// Isotropic `k`-subspaces bucketed by `i = dim(V ∩ K)`; only nonzero buckets are kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    pub params: StratumParams,
    pub strata: BTreeMap<usize, u64>,
    pub total: u64,
}

impl StratumReport {
    fn from_buckets(form: &AlternatingForm, k: usize, q: u64, buckets: &[u64]) -> StratumReport {
        let strata: BTreeMap<usize, u64> = buckets
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, c))
            .collect();
        StratumReport {
            params: StratumParams {
                r: form.dim(),
                p: form.degeneracy(),
                delta: form.delta(),
                k,
                q,
            },
            total: strata.values().sum(),
            strata,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    /// Upper bound on visited partial subspaces, summed over all cells.
    pub ceiling: u64,
    /// Worker threads; results do not depend on it.
    pub jobs: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            ceiling: super::enumerate::DEFAULT_CEILING,
            jobs: 1,
        }
    }
}

fn finite_gf(field: &Field) -> Result<&GaloisField> {
    field
        .galois()
        .ok_or_else(|| Error::InvalidField("counting needs a finite field".into()))
}

/// Stratified isotropic counts via the memoized cell walk.
pub fn strata_counts(form: &AlternatingForm, k: usize, opts: CountOptions) -> Result<StratumReport> {
    let r = form.dim();
    if k > r {
        return Err(Error::DimensionMismatch(format!("k = {k} exceeds r = {r}")));
    }
    let gf = finite_gf(form.field())?;
    let gram: Vec<Vec<u32>> = (0..r)
        .map(|i| form.gram().row(i).iter().map(|x| x.as_finite().unwrap()).collect())
        .collect();
    let patterns = pivot_patterns(r, k);
    let run = |pattern: &Vec<usize>| -> Result<(Vec<u64>, u64)> {
        let mut cell = CellCounter::new(gf, &gram, pattern.clone(), opts.ceiling);
        let by_rank = cell.solve(0, &Vec::new())?;
        Ok((by_rank, cell.work))
    };
    let results: Vec<Result<(Vec<u64>, u64)>> = if opts.jobs <= 1 {
        patterns.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvariantViolation(format!("thread pool: {e}")))?;
        pool.install(|| patterns.par_iter().map(run).collect())
    };
    let mut by_rank = vec![0u64; k + 1];
    let mut work = 0u64;
    for res in results {
        let (counts, w) = res?;
        work = work.saturating_add(w);
        for (acc, c) in by_rank.iter_mut().zip(counts) {
            *acc += c;
        }
    }
    if work > opts.ceiling {
        return Err(Error::CeilingExceeded {
            needed: work.to_string(),
            ceiling: opts.ceiling,
        });
    }
    // final rank of V·G is k − i
    let buckets: Vec<u64> = (0..=k).map(|i| by_rank[k - i]).collect();
    Ok(StratumReport::from_buckets(form, k, gf.order() as u64, &buckets))
}

/// The same report by walking every `k`-subspace. Slow; kept as an oracle.
pub fn strata_counts_brute(form: &AlternatingForm, k: usize, ceiling: u64) -> Result<StratumReport> {
    let q = form.field().order().ok_or_else(|| Error::InvalidField("finite field needed".into()))?;
    let mut buckets = vec![0u64; k + 1];
    for v in SubspaceStream::new(form.field(), form.dim(), k, ceiling)? {
        if form.is_isotropic(&v)? {
            buckets[v.intersection_dim(form.radical())] += 1;
        }
    }
    Ok(StratumReport::from_buckets(form, k, q, &buckets))
}

/// Number of `k`-subspaces isotropic for every form in the list, by enumeration.
pub fn count_multi_isotropic(forms: &[AlternatingForm], k: usize, ceiling: u64) -> Result<u64> {
    let first = forms
        .first()
        .ok_or_else(|| Error::Malformed("at least one form is required".into()))?;
    if forms.iter().any(|f| f.dim() != first.dim() || f.field() != first.field()) {
        return Err(Error::DimensionMismatch("forms live on different spaces".into()));
    }
    let mut count = 0;
    for v in SubspaceStream::new(first.field(), first.dim(), k, ceiling)? {
        let mut ok = true;
        for f in forms {
            if !f.is_isotropic(&v)? {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

type Echelon = Vec<Vec<u32>>;

struct CellCounter<'a> {
    gf: &'a GaloisField,
    q: u64,
    r: usize,
    k: usize,
    gram: &'a [Vec<u32>],
    pattern: Vec<usize>,
    free_cols: Vec<Vec<usize>>,
    memo: HashMap<(usize, Echelon), Vec<u64>>,
    work: u64,
    budget: u64,
}

impl<'a> CellCounter<'a> {
    fn new(gf: &'a GaloisField, gram: &'a [Vec<u32>], pattern: Vec<usize>, budget: u64) -> Self {
        let r = gram.len();
        let free_cols = pattern
            .iter()
            .map(|&p| (p + 1..r).filter(|c| !pattern.contains(c)).collect())
            .collect();
        CellCounter {
            gf,
            q: gf.order() as u64,
            r,
            k: pattern.len(),
            gram,
            pattern,
            free_cols,
            memo: HashMap::new(),
            work: 0,
            budget,
        }
    }

    fn qpow(&self, e: usize) -> u64 {
        self.q.pow(e as u32)
    }

    /// Subtracts the `W`-components at `W`'s pivot columns.
    fn reduce(&self, w: &Echelon, y: &mut [u32]) {
        let gf = self.gf;
        for row in w {
            let pc = row.iter().position(|&x| x != 0).unwrap();
            let c = y[pc];
            if c != 0 {
                for (yi, &ri) in y.iter_mut().zip(row) {
                    *yi = gf.sub(*yi, gf.mul(c, ri));
                }
            }
        }
    }

    /// Echelon form of `W + span(y)` for `y` already reduced modulo `W`.
    fn insert(&self, w: &Echelon, mut y: Vec<u32>) -> Echelon {
        let gf = self.gf;
        let pc = match y.iter().position(|&x| x != 0) {
            None => return w.clone(),
            Some(pc) => pc,
        };
        let inv = gf.inv(y[pc]).unwrap();
        for x in y.iter_mut() {
            *x = gf.mul(*x, inv);
        }
        let mut out: Echelon = Vec::with_capacity(w.len() + 1);
        for row in w {
            let mut row = row.clone();
            let c = row[pc];
            if c != 0 {
                for (ri, &yi) in row.iter_mut().zip(&y) {
                    *ri = gf.sub(*ri, gf.mul(c, yi));
                }
            }
            out.push(row);
        }
        let pos = out
            .iter()
            .position(|row| row.iter().position(|&x| x != 0).unwrap() > pc)
            .unwrap_or(out.len());
        out.insert(pos, y);
        out
    }

    /// Counts completions of rows `j..k` given the span `w` of earlier images,
    /// indexed by the final dimension of that span.
    fn solve(&mut self, j: usize, w: &Echelon) -> Result<Vec<u64>> {
        let mut out = vec![0u64; self.k + 1];
        if j == self.k {
            out[w.len()] = 1;
            return Ok(out);
        }
        if let Some(hit) = self.memo.get(&(j, w.clone())) {
            return Ok(hit.clone());
        }
        let gf = self.gf;
        let pj = self.pattern[j];
        let fc = self.free_cols[j].clone();
        let nf = fc.len();

        // isotropy against earlier rows: b·v_j = 0 for each b in W
        let mut sys: Vec<Vec<u32>> = w
            .iter()
            .map(|b| {
                let mut row: Vec<u32> = fc.iter().map(|&c| b[c]).collect();
                row.push(gf.neg(b[pj]));
                row
            })
            .collect();
        let Some((x0, null)) = solve_affine(gf, &mut sys, nf) else {
            self.memo.insert((j, w.clone()), out.clone());
            return Ok(out);
        };

        let image_of = |coeffs: &[u32], base: Option<usize>| -> Vec<u32> {
            let mut y = match base {
                Some(p) => self.gram[p].clone(),
                None => vec![0; self.r],
            };
            for (&c, &x) in fc.iter().zip(coeffs) {
                if x != 0 {
                    for (yi, &gi) in y.iter_mut().zip(&self.gram[c]) {
                        *yi = gf.add(*yi, gf.mul(x, gi));
                    }
                }
            }
            y
        };
        let mut u0 = image_of(&x0, Some(pj));
        self.reduce(w, &mut u0);
        let mut dirs: Echelon = Vec::new();
        for n in &null {
            let mut d = image_of(n, None);
            self.reduce(w, &mut d);
            self.reduce(&dirs, &mut d);
            if d.iter().any(|&x| x != 0) {
                dirs = self.insert(&dirs, d);
            }
        }
        let f = null.len();
        let rho = dirs.len();
        let fiber = self.qpow(f - rho);

        if j + 1 == self.k {
            let mut rest = u0.clone();
            self.reduce(&dirs, &mut rest);
            let stay = if rest.iter().all(|&x| x == 0) { fiber } else { 0 };
            out[w.len()] += stay;
            out[w.len() + 1] += self.qpow(f) - stay;
            self.work = self.work.saturating_add(1);
        } else {
            let q = gf.order();
            for index in 0..self.qpow(rho) {
                self.work += 1;
                if self.work > self.budget {
                    return Err(Error::CeilingExceeded {
                        needed: format!("more than {}", self.budget),
                        ceiling: self.budget,
                    });
                }
                let mut y = u0.clone();
                let mut rest = index;
                for d in &dirs {
                    let ts = (rest % q as u64) as u32;
                    rest /= q as u64;
                    if ts != 0 {
                        for (yi, &di) in y.iter_mut().zip(d) {
                            *yi = gf.add(*yi, gf.mul(ts, di));
                        }
                    }
                }
                let next = self.insert(w, y);
                let sub = self.solve(j + 1, &next)?;
                for (o, s) in out.iter_mut().zip(sub) {
                    *o += fiber * s;
                }
            }
        }
        self.memo.insert((j, w.clone()), out.clone());
        Ok(out)
    }
}

/// Solves `A x = b` given as augmented rows with `nvars` unknowns. Returns a
/// particular solution (free variables zero) and a null-space basis, or `None`
/// if inconsistent.
fn solve_affine(gf: &GaloisField, rows: &mut [Vec<u32>], nvars: usize) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nvars {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = gf.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = gf.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let t = rows[i][c];
                for col in 0..=nvars {
                    let v = gf.sub(rows[i][col], gf.mul(t, rows[r][col]));
                    rows[i][col] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[nvars] != 0) {
        return None;
    }
    let mut x0 = vec![0u32; nvars];
    for (i, &c) in pivots.iter().enumerate() {
        x0[c] = rows[i][nvars];
    }
    let mut null = Vec::new();
    for fcol in (0..nvars).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; nvars];
        v[fcol] = 1;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = gf.neg(rows[i][fcol]);
        }
        null.push(v);
    }
    Some((x0, null))
}
