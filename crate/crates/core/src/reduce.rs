//! Reductions whose result does not depend on the thread count.
//!
//! Indices are cut into fixed blocks of [`BLOCK`]; each block is folded
//! sequentially (possibly on any worker), and the block partials are
//! combined by a balanced binary tree over block order.

use rayon::prelude::*;

pub(crate) const BLOCK: usize = 4096;

/// Count, mean and sum of squared deviations of a block of values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Stats {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Stats {
    const EMPTY: Stats = Stats {
        count: 0,
        mean: 0.0,
        m2: 0.0,
    };

    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(a: Stats, b: Stats) -> Stats {
        if a.count == 0 {
            return b;
        }
        if b.count == 0 {
            return a;
        }
        let count = a.count + b.count;
        let (na, nb, n) = (a.count as f64, b.count as f64, count as f64);
        let delta = b.mean - a.mean;
        Stats {
            count,
            mean: a.mean + delta * nb / n,
            m2: a.m2 + b.m2 + delta * delta * na * nb / n,
        }
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }
}

fn tree<T: Copy>(items: &[T], zero: T, combine: &impl Fn(T, T) -> T) -> T {
    match items.len() {
        0 => zero,
        1 => items[0],
        n => {
            let (l, r) = items.split_at(n / 2);
            combine(tree(l, zero, combine), tree(r, zero, combine))
        }
    }
}

fn blocks(n: usize) -> impl IndexedParallelIterator<Item = std::ops::Range<usize>> {
    (0..n.div_ceil(BLOCK))
        .into_par_iter()
        .map(move |b| b * BLOCK..((b + 1) * BLOCK).min(n))
}

/// `Σ_{i<n} f(i)`.
pub(crate) fn sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let partials: Vec<f64> = blocks(n).map(|r| r.map(&f).sum::<f64>()).collect();
    tree(&partials, 0.0, &|a, b| a + b)
}

/// Streaming mean/variance of `f(i)` for `i < n`.
pub(crate) fn stats<F>(n: usize, f: F) -> Stats
where
    F: Fn(usize) -> f64 + Sync,
{
    let partials: Vec<Stats> = blocks(n)
        .map(|r| {
            let mut s = Stats::EMPTY;
            r.for_each(|i| s.push(f(i)));
            s
        })
        .collect();
    tree(&partials, Stats::EMPTY, &Stats::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pool(threads: usize) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
    }

    #[test]
    fn sum_is_thread_count_independent() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        let n = 100_003;
        let one = pool(1).install(|| sum(n, f));
        let many = pool(7).install(|| sum(n, f));
        assert_eq!(one.to_bits(), many.to_bits());
        let naive: f64 = (0..n).map(f).sum();
        assert!((one - naive).abs() < 1e-12);
    }

    #[test]
    fn stats_match_two_pass() {
        let f = |i: usize| 1.0 + ((i * 7919) % 1000) as f64 / 1000.0;
        let n = 50_000;
        let s = stats(n, f);
        let mean = (0..n).map(f).sum::<f64>() / n as f64;
        let var = (0..n).map(|i| (f(i) - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert_eq!(s.count, n as u64);
        assert!((s.mean - mean).abs() < 1e-13);
        assert!((s.variance() - var).abs() < 1e-13);
        let a = pool(1).install(|| stats(n, f));
        let b = pool(5).install(|| stats(n, f));
        assert_eq!(a, b);
    }

    #[test]
    fn empty_input() {
        assert_eq!(sum(0, |_| 1.0), 0.0);
        assert_eq!(stats(0, |_| 1.0).count, 0);
    }
}
