//! Certified graded ranks from truncated Hilbert series.
//!
//! A graded free module over a graded polynomial ring with `n` generators of degree 2 and
//! generator degrees `g_i` has Hilbert series `Σ_i t^{g_i} / (1 − t²)^n`. Multiplying the
//! truncated series by `(1 − t²)^n` recovers the generator counts degree by degree; once the
//! counts seen so far are nonnegative and sum to the known rank, every later count is zero,
//! so the graded rank is certified without guessing a bound. A generator in degree `d`
//! contributes `v^{-d}` (so `grk(R(k)) = v^k`).

use sbim_algebra::Laurent;

fn binomial(n: usize, k: usize) -> i64 {
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// Accumulates Hilbert-series data for several items split into groups of known total rank.
pub struct GrkCertifier {
    nvars: usize,
    start: i32,
    /// Coefficients `π_i` of an extra factor `Σ π_i t^{2i}` applied after `(1 − t²)^n`
    /// (the rank of `R` over a ring of invariants), per item.
    factors: Vec<Vec<i64>>,
    group_of: Vec<usize>,
    expected: Vec<i64>,
    hilb: Vec<Vec<i64>>,
    reduced: Vec<Vec<i64>>,
    counts: Vec<Vec<i64>>,
    group_sum: Vec<i64>,
    next: i32,
}

impl GrkCertifier {
    /// `group_of[item]` assigns each item to a group; `expected[group]` is the group's total rank.
    pub fn new(nvars: usize, start: i32, group_of: Vec<usize>, expected: Vec<i64>, factors: Vec<Vec<i64>>) -> Self {
        let items = group_of.len();
        GrkCertifier {
            nvars,
            start,
            factors,
            group_of,
            group_sum: vec![0; expected.len()],
            expected,
            hilb: vec![Vec::new(); items],
            reduced: vec![Vec::new(); items],
            counts: vec![Vec::new(); items],
            next: start,
        }
    }

    /// Every group has reached its rank.
    pub fn done(&self) -> bool {
        self.group_sum.iter().zip(&self.expected).all(|(s, e)| s == e)
    }

    /// Whether one group has reached its rank.
    pub fn group_done(&self, g: usize) -> bool {
        self.group_sum[g] == self.expected[g]
    }

    /// The next degree to feed.
    pub fn next_degree(&self) -> i32 {
        self.next
    }

    /// Feed `dim` of every item in the next degree.
    pub fn feed(&mut self, dims: &[usize]) -> Result<(), String> {
        let d = self.next;
        let idx = (d - self.start) as usize;
        for (it, &h) in dims.iter().enumerate() {
            self.hilb[it].push(h as i64);
            let mut q = 0i64;
            for j in 0..=self.nvars {
                if 2 * j <= idx {
                    let c = binomial(self.nvars, j) * self.hilb[it][idx - 2 * j];
                    q += if j % 2 == 0 { c } else { -c };
                }
            }
            self.reduced[it].push(q);
            let mut p = 0i64;
            for (i, pi) in self.factors[it].iter().enumerate() {
                if 2 * i <= idx {
                    p += pi * self.reduced[it][idx - 2 * i];
                }
            }
            if p < 0 {
                return Err(format!("negative generator count {p} in degree {d}"));
            }
            self.counts[it].push(p);
            let g = self.group_of[it];
            self.group_sum[g] += p;
            if self.group_sum[g] > self.expected[g] {
                return Err(format!("generator count exceeds the rank {} in degree {d}", self.expected[g]));
            }
        }
        self.next += 1;
        Ok(())
    }

    /// The certified graded rank of an item.
    pub fn grk(&self, item: usize) -> Laurent {
        Laurent::from_terms(
            self.counts[item].iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (-(self.start + i as i32), *c)),
        )
    }
}

/// Certified graded rank of a single free module from a Hilbert-series oracle.
pub fn certified_grk(
    nvars: usize,
    start: i32,
    rank: usize,
    bound: i32,
    what: &str,
    mut dim: impl FnMut(i32) -> Result<usize, crate::BimodError>,
) -> Result<Laurent, crate::BimodError> {
    let mut c = GrkCertifier::new(nvars, start, vec![0], vec![rank as i64], vec![vec![1]]);
    while !c.done() {
        let d = c.next_degree();
        if d > bound {
            return Err(crate::BimodError::DegreeBoundTooSmall { what: what.into(), bound });
        }
        let h = dim(d)?;
        c.feed(&[h]).map_err(|e| crate::BimodError::NotFree(format!("{what}: {e}")))?;
    }
    Ok(c.grk(0))
}
