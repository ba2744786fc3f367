//! Geodesic distances on `G_t` and all-pairs aggregates.

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decimal::{parts, ratio_u, round_significant, round_significant_f64};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::word::{coarsen_steps, Word};

/// Default largest `t` for [`all_pairs_summary`].
pub const DEFAULT_ALL_PAIRS_CAP: u32 = 8;

/// Targets drawn per BFS source in [`sampled_apl`].
pub const TARGETS_PER_SOURCE: u64 = 1000;

const UNSEEN: u32 = u32::MAX;

/// Reusable BFS state. Visited marks are epoch-stamped so the arrays are not
/// cleared between sources.
#[derive(Debug, Clone)]
pub struct Bfs {
    stamp: Vec<u32>,
    dist: Vec<u32>,
    queue: Vec<u32>,
    epoch: u32,
}

impl Bfs {
    pub fn new(vertex_count: usize) -> Self {
        Bfs {
            stamp: vec![0; vertex_count],
            dist: vec![0; vertex_count],
            queue: Vec::with_capacity(vertex_count),
            epoch: 0,
        }
    }

    fn next_epoch(&mut self) {
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
    }

    /// Runs a BFS from `source`, stopping early once `target` is settled.
    pub fn run(&mut self, net: &Network, source: u32, target: Option<u32>) {
        self.next_epoch();
        let epoch = self.epoch;
        self.queue.clear();
        self.queue.push(source);
        self.stamp[source as usize] = epoch;
        self.dist[source as usize] = 0;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            if Some(u) == target {
                return;
            }
            let du = self.dist[u as usize] + 1;
            for &v in net.neighbors(u) {
                if self.stamp[v as usize] != epoch {
                    self.stamp[v as usize] = epoch;
                    self.dist[v as usize] = du;
                    self.queue.push(v);
                }
            }
        }
    }

    /// Distance from the last source, if `v` was reached.
    #[inline]
    pub fn distance(&self, v: u32) -> Option<u32> {
        (self.stamp[v as usize] == self.epoch).then(|| self.dist[v as usize])
    }

    /// Vertices reached by the last run, in BFS order.
    pub fn visited(&self) -> &[u32] {
        &self.queue
    }
}

/// Shortest-path length between two words of `V_t`.
pub fn bfs_distance(net: &Network, a: &Word, b: &Word) -> Result<u32> {
    let s = net.index(a)?;
    let t = net.index(b)?;
    let mut bfs = Bfs::new(net.vertex_count());
    bfs.run(net, s, Some(t));
    Ok(bfs.distance(t).expect("G_t is connected"))
}

/// Distances from `source` to every vertex, indexed by vertex id.
pub fn distances_from(net: &Network, source: u32) -> Vec<u32> {
    let mut bfs = Bfs::new(net.vertex_count());
    bfs.run(net, source, None);
    (0..net.vertex_count() as u32)
        .map(|v| bfs.distance(v).unwrap_or(UNSEEN))
        .collect()
}

/// Distance to the root, read off the word: the number of coarsening steps.
pub fn distance_to_root(word: &Word) -> u32 {
    coarsen_steps(word)
}

/// Dense all-pairs distance table for small networks.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u8>,
}

impl DistanceMatrix {
    pub fn compute(net: &Network) -> Self {
        let n = net.vertex_count();
        let rows: Vec<Vec<u8>> = (0..n as u32)
            .into_par_iter()
            .map_init(
                || Bfs::new(n),
                |bfs, s| {
                    bfs.run(net, s, None);
                    (0..n as u32)
                        .map(|v| {
                            u8::try_from(bfs.distance(v).expect("connected"))
                                .expect("small diameter")
                        })
                        .collect()
                },
            )
            .collect();
        DistanceMatrix {
            n,
            data: rows.concat(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: u32, v: u32) -> u32 {
        u32::from(self.data[u as usize * self.n + v as usize])
    }
}

/// Exact all-pairs aggregates of one network, over unordered pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSummary {
    pub t: u32,
    /// Sum of distances over all unordered pairs.
    pub total: BigUint,
    /// Sum of distances from every vertex to the root.
    pub to_root: BigUint,
    /// Pairs of nonempty words sharing their first letter.
    pub same_branch: BigUint,
    /// Pairs of nonempty words with different first letters.
    pub cross_branch: BigUint,
    pub vertex_count: u64,
}

impl DistanceSummary {
    pub fn pair_count(&self) -> BigUint {
        let n = BigUint::from(self.vertex_count);
        &n * (&n - 1u32) / 2u32
    }

    /// Average path length as an exact rational.
    pub fn apl(&self) -> BigRational {
        ratio_u(self.total.clone(), self.pair_count())
    }

    pub fn apl_decimal(&self) -> String {
        round_significant(&self.apl(), 12)
    }

    pub const CSV_HEADER: &'static str =
        "t,pi,lambda,mu,nu,n_vertices,apl_exact_num,apl_exact_den,apl_decimal";

    pub fn csv_row(&self) -> String {
        let (num, den) = parts(&self.apl());
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.t,
            self.total,
            self.to_root,
            self.same_branch,
            self.cross_branch,
            self.vertex_count,
            num,
            den,
            self.apl_decimal()
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SummaryOptions {
    pub threads: Option<usize>,
    pub cap: u32,
}

impl Default for SummaryOptions {
    fn default() -> Self {
        SummaryOptions {
            threads: None,
            cap: DEFAULT_ALL_PAIRS_CAP,
        }
    }
}

/// Runs `f` on a dedicated pool of `threads` workers, or on the global pool.
pub fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

#[derive(Default, Clone, Copy)]
struct Partial {
    total: u128,
    to_root: u128,
    same: u128,
    cross: u128,
}

impl Partial {
    fn add(self, o: Partial) -> Partial {
        Partial {
            total: self.total + o.total,
            to_root: self.to_root + o.to_root,
            same: self.same + o.same,
            cross: self.cross + o.cross,
        }
    }
}

pub fn all_pairs_summary(net: &Network) -> Result<DistanceSummary> {
    all_pairs_summary_with(net, &SummaryOptions::default())
}

/// One BFS per source; each unordered pair is counted from its smaller id.
/// Partial sums are exact integers, so the result does not depend on the
/// number of workers.
pub fn all_pairs_summary_with(net: &Network, opts: &SummaryOptions) -> Result<DistanceSummary> {
    let t = net.t();
    if t > opts.cap {
        return Err(Error::CapExceeded {
            t,
            cap: opts.cap,
            what: "exact all-pairs",
            hint: "; use sampled mode for larger networks",
        });
    }
    let n = net.vertex_count();
    if n < 2 {
        return Err(Error::Degenerate(
            "average path length needs at least two vertices",
        ));
    }
    let branch: Vec<u8> = (0..n as u32)
        .map(|v| net.word(v).first().unwrap_or(0))
        .collect();

    let acc = in_pool(opts.threads, || {
        (0..n as u32)
            .into_par_iter()
            .map_init(
                || Bfs::new(n),
                |bfs, s| {
                    bfs.run(net, s, None);
                    let mut p = Partial::default();
                    for v in (s + 1)..n as u32 {
                        let d = u128::from(bfs.distance(v).expect("connected"));
                        p.total += d;
                        if s == 0 {
                            p.to_root += d;
                        } else if branch[s as usize] == branch[v as usize] {
                            p.same += d;
                        } else {
                            p.cross += d;
                        }
                    }
                    p
                },
            )
            .reduce(Partial::default, Partial::add)
    });

    Ok(DistanceSummary {
        t,
        total: BigUint::from(acc.total),
        to_root: BigUint::from(acc.to_root),
        same_branch: BigUint::from(acc.same),
        cross_branch: BigUint::from(acc.cross),
        vertex_count: n as u64,
    })
}

/// Monte Carlo estimate of the average path length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledApl {
    pub t: u32,
    pub estimate: f64,
    pub std_err: f64,
    pub pairs: u64,
    pub seed: u64,
    pub sources: u64,
}

impl SampledApl {
    pub const CSV_HEADER: &'static str = "t,estimate,std_err,samples,seed";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.t,
            round_significant_f64(self.estimate, 12),
            round_significant_f64(self.std_err, 12),
            self.pairs,
            self.seed
        )
    }
}

pub fn sampled_apl(net: &Network, pairs: u64, seed: u64) -> Result<SampledApl> {
    sampled_apl_with(net, pairs, seed, None)
}

/// Samples `pairs` uniformly random pairs of distinct vertices.
///
/// Pairs are drawn in batches sharing a random source: batch `b` uses the
/// ChaCha stream `b` of `seed`, picks a uniform source and up to
/// [`TARGETS_PER_SOURCE`] uniform targets among the other vertices, all read
/// from one BFS. Every draw is a uniform ordered pair, so the mean is
/// unbiased for the average over unordered pairs; the standard error treats
/// batches as clusters.
pub fn sampled_apl_with(
    net: &Network,
    pairs: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<SampledApl> {
    if pairs == 0 {
        return Err(Error::Degenerate("pairs must be at least 1"));
    }
    let n = net.vertex_count() as u64;
    if n < 2 {
        return Err(Error::Degenerate(
            "average path length needs at least two vertices",
        ));
    }
    let sources = pairs.div_ceil(TARGETS_PER_SOURCE);
    let base = pairs / sources;
    let extra = pairs % sources;

    // (draws, sum, sum of squares) per batch
    let batches: Vec<(u64, u64, u64)> = in_pool(threads, || {
        (0..sources)
            .into_par_iter()
            .map_init(
                || Bfs::new(n as usize),
                |bfs, b| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(b);
                    let k = base + u64::from(b < extra);
                    let s = rng.gen_range(0..n) as u32;
                    bfs.run(net, s, None);
                    let (mut sum, mut sq) = (0u64, 0u64);
                    for _ in 0..k {
                        let mut v = rng.gen_range(0..n - 1) as u32;
                        if v >= s {
                            v += 1;
                        }
                        let d = u64::from(bfs.distance(v).expect("connected"));
                        sum += d;
                        sq += d * d;
                    }
                    (k, sum, sq)
                },
            )
            .collect()
    });

    let total: u64 = batches.iter().map(|b| b.1).sum();
    let estimate = total as f64 / pairs as f64;
    let std_err = if sources > 1 {
        let s = sources as f64;
        let resid: f64 = batches
            .iter()
            .map(|&(k, sum, _)| {
                let r = sum as f64 - estimate * k as f64;
                r * r
            })
            .sum();
        (s / (s - 1.0) * resid).sqrt() / pairs as f64
    } else if pairs > 1 {
        let (_, sum, sq) = batches[0];
        let k = pairs as f64;
        let var = (sq as f64 - (sum as f64).powi(2) / k) / (k - 1.0);
        (var.max(0.0) / k).sqrt()
    } else {
        f64::INFINITY
    };

    Ok(SampledApl {
        t: net.t(),
        estimate,
        std_err,
        pairs,
        seed,
        sources,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decimal::ratio;
    use crate::network::build;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn geodesic_examples() {
        let g3 = build(3).unwrap();
        assert_eq!(bfs_distance(&g3, &w("233"), &w("312")).unwrap(), 2);
        assert_eq!(bfs_distance(&g3, &w("21"), &w("312")).unwrap(), 3);
        assert_eq!(bfs_distance(&g3, &w("132"), &Word::EMPTY).unwrap(), 2);
        assert_eq!(bfs_distance(&g3, &w("132"), &w("132")).unwrap(), 0);
        assert!(matches!(
            bfs_distance(&g3, &w("1111"), &Word::EMPTY),
            Err(Error::NotInNetwork { .. })
        ));
    }

    #[test]
    fn root_distance_shortcut() {
        assert_eq!(distance_to_root(&w("112113112312")), 4);
        assert_eq!(distance_to_root(&Word::EMPTY), 0);
        assert_eq!(distance_to_root(&w("132")), 2);
    }

    #[test]
    fn complete_graph_summary() {
        let s = all_pairs_summary(&build(1).unwrap()).unwrap();
        assert_eq!(s.total, BigUint::from(6u32));
        assert_eq!(s.apl(), ratio(1, 1));
        assert_eq!(s.to_root, BigUint::from(3u32));
        assert_eq!(s.same_branch, BigUint::from(0u32));
        assert_eq!(s.cross_branch, BigUint::from(3u32));
        assert_eq!(s.csv_row(), "1,6,3,0,3,4,1,1,1.00000000000");
    }

    #[test]
    fn degenerate_and_capped() {
        assert!(matches!(
            all_pairs_summary(&build(0).unwrap()),
            Err(Error::Degenerate(_))
        ));
        let g3 = build(3).unwrap();
        let opts = SummaryOptions {
            threads: Some(1),
            cap: 2,
        };
        let err = all_pairs_summary_with(&g3, &opts).unwrap_err();
        assert!(err.to_string().contains("sampled"));
        assert!(sampled_apl(&g3, 0, 1).is_err());
    }

    #[test]
    fn summary_independent_of_threads() {
        let g = build(4).unwrap();
        let one = all_pairs_summary_with(
            &g,
            &SummaryOptions {
                threads: Some(1),
                cap: 8,
            },
        )
        .unwrap();
        let four = all_pairs_summary_with(
            &g,
            &SummaryOptions {
                threads: Some(4),
                cap: 8,
            },
        )
        .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn sampling_on_complete_graph() {
        let g1 = build(1).unwrap();
        for seed in [0, 7, 99] {
            let est = sampled_apl(&g1, 2500, seed).unwrap();
            assert_eq!(est.estimate, 1.0);
            assert_eq!(est.std_err, 0.0);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let g = build(5).unwrap();
        let a = sampled_apl_with(&g, 5000, 42, Some(1)).unwrap();
        let b = sampled_apl_with(&g, 5000, 42, Some(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sources, 5);
    }
}
