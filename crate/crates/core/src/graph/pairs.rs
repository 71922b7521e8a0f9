//! Independent Bernoulli selection over index ranges by geometric skipping.

use rand::Rng;

/// Yields each index of `0..len` independently with probability `p`, in
/// increasing order. Consumes one uniform draw per selected index (plus one
/// to terminate), so sparse selections cost O(selected) rather than O(len).
pub(crate) struct IndexSampler<'r, R> {
    rng: &'r mut R,
    len: u64,
    next: u64,
    log_q: f64,
    mode: Mode,
}

#[derive(Clone, Copy)]
enum Mode {
    None,
    All,
    Skip,
}

impl<'r, R: Rng> IndexSampler<'r, R> {
    pub(crate) fn new(rng: &'r mut R, len: u64, p: f64) -> Self {
        let mode = if p <= 0.0 || len == 0 {
            Mode::None
        } else if p >= 1.0 {
            Mode::All
        } else {
            Mode::Skip
        };
        IndexSampler {
            rng,
            len,
            next: 0,
            log_q: (-p).ln_1p(),
            mode,
        }
    }
}

impl<R: Rng> Iterator for IndexSampler<'_, R> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.next >= self.len {
            return None;
        }
        match self.mode {
            Mode::None => None,
            Mode::All => {
                self.next += 1;
                Some(self.next - 1)
            }
            Mode::Skip => {
                // Failures before the next success: floor(ln U / ln(1 - p)), U in (0, 1].
                let u = 1.0 - self.rng.random::<f64>();
                let gap = (u.ln() / self.log_q).floor();
                let remaining = (self.len - self.next) as f64;
                if gap >= remaining {
                    self.next = self.len;
                    return None;
                }
                let idx = self.next + gap as u64;
                self.next = idx + 1;
                Some(idx)
            }
        }
    }
}

/// Each unordered pair `(i, j)`, `i < j < n`, selected independently with
/// probability `p`, yielded in lexicographic order.
pub(crate) struct PairSampler<'r, R> {
    inner: IndexSampler<'r, R>,
    n: usize,
    row: usize,
    row_start: u64,
}

impl<'r, R: Rng> PairSampler<'r, R> {
    pub(crate) fn new(rng: &'r mut R, n: usize, p: f64) -> Self {
        let pairs = (n as u64) * (n as u64).saturating_sub(1) / 2;
        PairSampler {
            inner: IndexSampler::new(rng, pairs, p),
            n,
            row: 0,
            row_start: 0,
        }
    }
}

impl<R: Rng> Iterator for PairSampler<'_, R> {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        let idx = self.inner.next()?;
        // Row `i` holds pairs (i, i+1..n): n - 1 - i of them.
        loop {
            let row_len = (self.n - 1 - self.row) as u64;
            if idx < self.row_start + row_len {
                let j = self.row + 1 + (idx - self.row_start) as usize;
                return Some((self.row, j));
            }
            self.row_start += row_len;
            self.row += 1;
        }
    }
}
