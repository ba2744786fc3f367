//! Cross-module oracle checks, grouped into suites.
//!
//! Each check compares two independent computations, or tests an inequality,
//! exhaustively on a bounded range, and reports the first counterexample.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::asymptotics::{
    self, block_profile_count, lemma6_sandwiches, level_average_parts, mean_s_partial,
    pmf_partial_sum, profile_sums, renewal_count, renewal_exact, renewal_mc,
};
use crate::decimal::ratio;
use crate::distance::{all_pairs_summary, distances_from, sampled_apl, DistanceMatrix};
use crate::error::{Error, Result};
use crate::geometry::{boundaries_touch, triangle_of};
use crate::network::{build, build_reference, index_of, neighbors_of, vertex_count, word_of};
use crate::word::{
    are_neighbors, boundary_moves, coarsen, coarsen_steps, normal_decomposition, words_of_length,
    words_up_to, Word,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Number of cases examined.
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {} ({} checked)", self.name, self.checked)?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}

/// Accumulates cases and keeps the first failure.
struct Tally {
    name: String,
    checked: u64,
    failure: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            checked: 0,
            failure: None,
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn done(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            passed: self.failure.is_none(),
            checked: self.checked,
            counterexample: self.failure,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Neighbors,
    Geometry,
    Geodesic,
    Counting,
    Renewal,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "neighbors" => Suite::Neighbors,
            "geometry" => Suite::Geometry,
            "geodesic" => Suite::Geodesic,
            "counting" => Suite::Counting,
            "renewal" => Suite::Renewal,
            other => return Err(Error::UnknownFormat(other.to_string())),
        })
    }
}

/// Runs one suite. `tmax` bounds the exhaustive checks; each is further
/// clamped to the largest level it can finish quickly.
pub fn run_suite(suite: Suite, tmax: u32) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Neighbors {
        out.push(neighbor_symmetry(tmax.min(5)));
        out.push(neighbor_generation(tmax.min(5)));
        out.push(builder_agreement(tmax.min(6)));
        out.push(coarsen_is_neighbor(tmax.min(10)));
        out.push(omega_lipschitz(tmax.min(7)));
    }
    if all || suite == Suite::Geometry {
        out.push(geometry_equivalence(tmax.min(6)));
    }
    if all || suite == Suite::Geodesic {
        out.push(root_distance(tmax.min(7)));
        out.push(self_similarity(tmax.min(6)));
        out.push(level_independence(tmax.min(7)));
        out.push(cross_letter_sandwich(tmax.min(6)));
        out.push(moves_concatenation(tmax.min(10)));
        out.push(pi_recursion(tmax.min(7)));
        out.push(triangle_inequality(tmax.min(4)));
    }
    if all || suite == Suite::Counting {
        out.push(omega_sum_enumeration(tmax.min(12) as usize));
        out.push(composition_completeness(tmax.min(12) as usize));
        out.push(convolution_completeness(60));
        out.push(profile_enumeration(tmax.min(8) as usize));
        out.push(profile_recursion(20));
        out.push(counting_relations(60));
        out.push(moves_inequalities(60));
        out.push(level_average_trend(10_000));
        out.push(level_weight_bound(10_000));
    }
    if all || suite == Suite::Renewal {
        out.push(s_distribution(120));
        out.push(renewal_enumeration(tmax.min(10) as usize));
        out.push(renewal_limit(2000));
        out.push(renewal_sandwich(500));
        out.push(renewal_monte_carlo(200, 100_000, 0x5eed));
    }
    out
}

fn words_in(t: u32) -> Vec<Word> {
    words_up_to(t as usize).collect()
}

/// `are_neighbors` is symmetric and irreflexive on `V_t`.
pub fn neighbor_symmetry(t: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "neighbor relation symmetric and irreflexive, t <= {t}"
    ));
    let words = words_in(t);
    for a in &words {
        tally.case(!are_neighbors(a, a), || format!("{a} ~ {a}"));
        for b in &words {
            tally.case(are_neighbors(a, b) == are_neighbors(b, a), || {
                format!("{a} vs {b}")
            });
        }
    }
    tally.done()
}

/// Generated neighbor lists equal a full scan with `are_neighbors`.
pub fn neighbor_generation(t: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "generated neighbor lists match full scan, t <= {t}"
    ));
    for level in 0..=t {
        let words = words_in(level);
        for a in &words {
            let fast = neighbors_of(a, level).expect("member");
            let scan: Vec<Word> = words
                .iter()
                .filter(|b| are_neighbors(a, b))
                .copied()
                .collect();
            tally.case(fast == scan, || format!("t = {level}, word {a}"));
        }
    }
    tally.done()
}

/// The fast builder and the pairwise reference builder agree edge for edge.
pub fn builder_agreement(t: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!("fast build equals reference build, t <= {t}"));
    for level in 0..=t {
        let fast = build(level).expect("within cap");
        let slow = build_reference(level).expect("within cap");
        tally.case(fast == slow, || {
            let extra = fast.edges().find(|&(u, v)| !slow.contains_edge(u, v));
            let missing = slow.edges().find(|&(u, v)| !fast.contains_edge(u, v));
            let show = |e: Option<(u32, u32)>| {
                e.map(|(u, v)| format!("{}~{}", fast.word(u), fast.word(v)))
                    .unwrap_or_else(|| "none".into())
            };
            format!(
                "t = {level}: extra {}, missing {}",
                show(extra),
                show(missing)
            )
        });
    }
    tally.done()
}

/// Every nonempty word is adjacent to its coarsening.
pub fn coarsen_is_neighbor(max_len: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "word adjacent to its coarsening, length <= {max_len}"
    ));
    for w in words_up_to(max_len as usize).skip(1) {
        let f = coarsen(&w).expect("nonempty");
        tally.case(are_neighbors(&w, &f), || format!("{w} and {f}"));
    }
    tally.done()
}

/// `|ω(σ) − ω(τ)| <= 1` across every edge of `G_t`.
pub fn omega_lipschitz(t: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!("omega changes by at most 1 along edges, t <= {t}"));
    let net = build(t).expect("within cap");
    for (u, v) in net.edges() {
        let (a, b) = (net.word(u), net.word(v));
        let (x, y) = (coarsen_steps(&a), coarsen_steps(&b));
        tally.case(x.abs_diff(y) <= 1, || {
            format!("{a} (omega {x}) ~ {b} (omega {y})")
        });
    }
    tally.done()
}

/// Boundary touching of lattice triangles coincides with the combinatorial test.
pub fn geometry_equivalence(t: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "boundaries touch iff neighbors, all pairs of V_{t}"
    ));
    let words = words_in(t);
    let tris: Vec<_> = words
        .iter()
        .map(|&w| triangle_of(w, t).expect("fits"))
        .collect();
    for i in 0..words.len() {
        for j in (i + 1)..words.len() {
            let geo = boundaries_touch(&tris[i], &tris[j]).expect("same scale");
            let comb = are_neighbors(&words[i], &words[j]);
            tally.case(geo == comb, || {
                format!("{} {}: geometry {geo}, criteria {comb}", words[i], words[j])
            });
        }
    }
    tally.done()
}

/// BFS distance to the root equals the number of coarsening steps.
pub fn root_distance(t: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!("BFS distance to root equals omega on V_{t}"));
    let net = build(t).expect("within cap");
    let dist = distances_from(&net, 0);
    for (v, &d) in dist.iter().enumerate() {
        let w = net.word(v as u32);
        let om = coarsen_steps(&w);
        tally.case(d == om, || format!("{w}: bfs {d}, omega {om}"));
    }
    tally.done()
}

fn matrices(t: u32) -> Vec<DistanceMatrix> {
    (0..=t)
        .map(|k| DistanceMatrix::compute(&build(k).expect("within cap")))
        .collect()
}

fn id(w: &Word) -> u32 {
    index_of(w) as u32
}

/// `d_t(iσ', iτ') = d_{t−1}(σ', τ')`.
pub fn self_similarity(t: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "prefixing a common letter preserves distance, t <= {t}"
    ));
    let mats = matrices(t);
    for level in 1..=t {
        let inner = words_in(level - 1);
        for i in 1..=3u8 {
            let head = Word::from_letters(&[i]).expect("letter");
            let outer: Vec<u32> = inner
                .iter()
                .map(|w| id(&head.concat(w).expect("short")))
                .collect();
            for a in 0..inner.len() {
                for b in 0..inner.len() {
                    let lhs = mats[level as usize].get(outer[a], outer[b]);
                    let rhs = mats[level as usize - 1].get(a as u32, b as u32);
                    tally.case(lhs == rhs, || {
                        format!(
                            "t = {level}, i = {i}, {} {}: {lhs} vs {rhs}",
                            inner[a], inner[b]
                        )
                    });
                }
            }
        }
    }
    tally.done()
}

/// `d_t(σ, τ) = d_k(σ, τ)` for `σ, τ ∈ V_k`, `k <= t`.
pub fn level_independence(t: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!("distances inside V_k do not depend on t, t <= {t}"));
    let mats = matrices(t);
    for big in 0..=t {
        for k in 0..big {
            let n = vertex_count(k) as u32;
            for a in 0..n {
                for b in (a + 1)..n {
                    let x = mats[big as usize].get(a, b);
                    let y = mats[k as usize].get(a, b);
                    tally.case(x == y, || {
                        let (wa, wb) =
                            (word_of(a.into(), k).unwrap(), word_of(b.into(), k).unwrap());
                        format!("{wa} {wb}: d_{big} = {x}, d_{k} = {y}")
                    });
                }
            }
        }
    }
    tally.done()
}

/// `L(σ') + L(τ') <= d_t(iσ', jτ') <= L(σ') + L(τ') + 3` for `i != j`.
pub fn cross_letter_sandwich(t: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "cross-letter distance within [L+L, L+L+3], t <= {t}"
    ));
    for level in 1..=t {
        let mat = DistanceMatrix::compute(&build(level).expect("within cap"));
        let inner = words_in(level - 1);
        let moves: Vec<u32> = inner.iter().map(boundary_moves).collect();
        for i in 1..=3u8 {
            for j in (1..=3u8).filter(|&j| j != i) {
                let hi = Word::from_letters(&[i]).unwrap();
                let hj = Word::from_letters(&[j]).unwrap();
                for (a, sa) in inner.iter().enumerate() {
                    let u = id(&hi.concat(sa).unwrap());
                    for (b, sb) in inner.iter().enumerate() {
                        let v = id(&hj.concat(sb).unwrap());
                        let d = mat.get(u, v);
                        let base = moves[a] + moves[b];
                        tally.case(base <= d && d <= base + 3, || {
                            format!("t = {level}: d({i}{sa}, {j}{sb}) = {d}, L + L = {base}")
                        });
                    }
                }
            }
        }
    }
    tally.done()
}

/// `L(τ) + L(σ) <= L(τσ) <= L(τ) + L(σ) + 1` for nonempty `τ`, `σ`.
pub fn moves_concatenation(max_len: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!("L of a concatenation, total length <= {max_len}"));
    for w in words_up_to(max_len as usize).filter(|w| w.len() >= 2) {
        let whole = boundary_moves(&w);
        for cut in 1..w.len() {
            let (tau, sigma) = (w.prefix(cut), w.suffix_from(cut));
            let sum = boundary_moves(&tau) + boundary_moves(&sigma);
            tally.case(sum <= whole && whole <= sum + 1, || {
                format!("tau {tau}, sigma {sigma}: L(tau sigma) = {whole}, L + L = {sum}")
            });
        }
    }
    tally.done()
}

/// `π_t = 3π_{t−1} + λ_t + ν_t` over unordered pairs.
pub fn pi_recursion(t: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "pi_t = 3 pi_(t-1) + lambda_t + nu_t, 2 <= t <= {t}"
    ));
    let mut prev = match all_pairs_summary(&build(1).expect("small")) {
        Ok(s) => s,
        Err(e) => {
            tally.case(false, || e.to_string());
            return tally.done();
        }
    };
    for level in 2..=t {
        let cur = all_pairs_summary(&build(level).expect("small")).expect("within cap");
        let rhs = &prev.total * 3u32 + &cur.to_root + &cur.cross_branch;
        let same = cur.same_branch == &prev.total * 3u32;
        tally.case(cur.total == rhs && same, || {
            format!(
                "t = {level}: pi {} vs {rhs}, mu {}",
                cur.total, cur.same_branch
            )
        });
        prev = cur;
    }
    tally.done()
}

/// `d(a, c) <= d(a, b) + d(b, c)` and symmetry for all triples of `V_t`.
pub fn triangle_inequality(t: u32) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "BFS metric symmetric with triangle inequality, V_{t}"
    ));
    let mat = DistanceMatrix::compute(&build(t).expect("within cap"));
    let n = mat.vertex_count() as u32;
    for a in 0..n {
        for b in 0..n {
            let ab = mat.get(a, b);
            tally.case(ab == mat.get(b, a), || format!("asymmetric at ids {a} {b}"));
            for c in 0..n {
                let ok = mat.get(a, c) <= ab + mat.get(b, c);
                tally.case(ok, || {
                    format!("triangle inequality fails at ids {a} {b} {c}")
                });
            }
        }
    }
    tally.done()
}

fn enumerated_omega_sum(n: usize) -> BigUint {
    BigUint::from(
        words_of_length(n)
            .map(|w| u64::from(coarsen_steps(&w)))
            .sum::<u64>(),
    )
}

/// The convolution value of `Σ ω` equals a sum over all words.
pub fn omega_sum_enumeration(up_to: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "omega sum by convolution equals enumeration, t <= {up_to}"
    ));
    for (i, (_, conv)) in profile_sums(up_to).into_iter().enumerate() {
        let n = i + 1;
        let direct = enumerated_omega_sum(n);
        tally.case(conv == direct, || {
            format!("t = {n}: convolution {conv}, enumeration {direct}")
        });
    }
    tally.done()
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    // first part >= 1, later parts >= 2
    fn tails(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in 2..=rest {
            cur.push(k);
            tails(rest - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for first in 1..=n {
        let mut cur = vec![first];
        tails(n - first, &mut cur, &mut out);
    }
    out
}

/// Summing profile counts over every explicit composition gives `3^t`.
pub fn composition_completeness(up_to: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "profile counts over compositions sum to 3^t, t <= {up_to}"
    ));
    for n in 1..=up_to {
        let total: BigUint = compositions(n)
            .iter()
            .map(|c| block_profile_count(c).expect("valid"))
            .sum();
        let expect = BigUint::from(3u32).pow(n as u32);
        tally.case(total == expect, || format!("t = {n}: {total} != 3^{n}"));
    }
    tally.done()
}

/// The convolution form of the same identity, to larger lengths.
pub fn convolution_completeness(up_to: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "word counts by convolution equal 3^t, t <= {up_to}"
    ));
    let mut p = BigUint::one();
    for (i, (count, _)) in profile_sums(up_to).into_iter().enumerate() {
        p *= 3u32;
        tally.case(count == p, || format!("t = {}: {count}", i + 1));
    }
    tally.done()
}

/// Profile counts equal tallies of normal decompositions over all words.
pub fn profile_enumeration(up_to: usize) -> CheckOutcome {
    use std::collections::BTreeMap;
    let mut tally = Tally::new(format!("profile counts equal enumeration, t <= {up_to}"));
    for n in 1..=up_to {
        let mut seen: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for w in words_of_length(n) {
            let d = normal_decomposition(&w).expect("nonempty");
            let ok = d.join() == w && d.block_count() as u32 == coarsen_steps(&w);
            tally.case(ok, || format!("decomposition of {w} is inconsistent"));
            *seen.entry(d.block_lengths()).or_default() += 1;
        }
        for c in compositions(n) {
            let want = block_profile_count(&c).expect("valid");
            let got = BigUint::from(seen.get(&c).copied().unwrap_or(0));
            tally.case(want == got, || {
                format!("profile {c:?}: formula {want}, words {got}")
            });
        }
    }
    tally.done()
}

/// Appending a block of length `k` multiplies the profile count by `2^k − 2`.
pub fn profile_recursion(up_to: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!("profile count recursion, total length <= {up_to}"));
    for n in 1..=up_to {
        for c in compositions(n).into_iter().filter(|c| c.len() >= 2) {
            let (head, last) = c.split_at(c.len() - 1);
            let lhs = block_profile_count(&c).expect("valid");
            let rhs = asymptotics::two_letter(last[0]) * block_profile_count(head).expect("valid");
            tally.case(lhs == rhs, || format!("profile {c:?}"));
        }
    }
    tally.done()
}

/// Elementary relations among the closed-form counts.
pub fn counting_relations(up_to: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!("closed-form count relations, k <= {up_to}"));
    for k in 1..=up_to {
        let t = asymptotics::two_letter(k);
        let m = asymptotics::two_letter_ending(k);
        let h = asymptotics::at_most_two_ending(k);
        let e = asymptotics::at_most_two(k);
        tally.case(&m * 2u32 == t && &h * 3u32 == e, || format!("k = {k}"));
    }
    tally.done()
}

/// Superadditivity with slack one, monotonicity, and `ᾱ_m / m` below `2/9`
/// and increasing from `m = 3`.
pub fn moves_inequalities(up_to: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!("mean-move inequalities, k1 + k2 <= {up_to}"));
    let a = asymptotics::mean_moves_series(up_to);
    let one = ratio(1, 1);
    for k1 in 1..up_to {
        for k2 in 1..=(up_to - k1) {
            let sum = &a[k1] + &a[k2];
            let ok = sum <= a[k1 + k2] && a[k1 + k2] <= &sum + &one;
            tally.case(ok, || format!("k1 = {k1}, k2 = {k2}"));
        }
    }
    let limit = ratio(2, 9);
    for m in 1..=up_to {
        let per = &a[m] / ratio(m as i64, 1);
        tally.case(a[m] >= a[m - 1] && per < limit, || format!("m = {m}"));
        if m >= 4 {
            let prev = &a[m - 1] / ratio(m as i64 - 1, 1);
            tally.case(per > prev, || format!("ratio not increasing at m = {m}"));
        }
    }
    tally.done()
}

/// `κ_t / t` is non-decreasing, stays below `2/9`, and is within `10^−3` of
/// it at the end of the range. Compared by cross-multiplication.
pub fn level_average_trend(up_to: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!("kappa_t / t rises toward 2/9, t <= {up_to}"));
    let parts = level_average_parts(up_to);
    for t in 1..=up_to {
        let (n, d) = &parts[t];
        let td = d * BigUint::from(t);
        // κ_t / t < 2/9  <=>  9n < 2td
        tally.case(n * 9u32 < &td * 2u32, || format!("kappa_{t}/{t} >= 2/9"));
        if t >= 2 {
            let (pn, pd) = &parts[t - 1];
            let prev_td = pd * BigUint::from(t - 1);
            tally.case(pn * &td <= n * &prev_td, || {
                format!("kappa decreases at t = {t}")
            });
        }
    }
    let (n, d) = &parts[up_to];
    let td = d * BigUint::from(up_to);
    // |2/9 − n/td| < 1/1000  <=>  |2td − 9n|·1000 < 9td
    let (x, y) = (&td * 2u32, n * 9u32);
    let gap = if x > y { x - y } else { y - x };
    tally.case(gap * 1000u32 < &td * 9u32, || {
        format!("kappa_{up_to}/{up_to} not within 1e-3")
    });
    tally.done()
}

/// `χ(t) <= 1` on the range and `χ(1000)` within `10^−2` of one.
pub fn level_weight_bound(up_to: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!("chi(t) <= 1, t <= {up_to}"));
    let mut weighted = BigUint::zero();
    let mut plain = BigUint::one();
    let mut p = BigUint::one();
    for t in 1..=up_to {
        p *= 3u32;
        weighted += &p * BigUint::from(t);
        plain += &p;
        tally.case(weighted <= &plain * BigUint::from(t), || {
            format!("chi({t}) > 1")
        });
        if t == 1000 {
            let d = &plain * BigUint::from(t);
            tally.case((&d - &weighted) * 100u32 < d, || {
                "chi(1000) not within 1e-2 of 1".into()
            });
        }
    }
    tally.done()
}

/// The pmf of `S` sums to one and its mean is `9/2`, up to the geometric tail.
pub fn s_distribution(upto: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "pmf of S sums to 1 and E(S) = 9/2, truncated at {upto}"
    ));
    let mass = (ratio(1, 1) - pmf_partial_sum(upto))
        .to_f64()
        .unwrap_or(f64::NAN);
    tally.case((0.0..1e-15).contains(&mass), || {
        format!("missing mass {mass:e}")
    });
    let mean = (asymptotics::mean_s() - mean_s_partial(upto))
        .to_f64()
        .unwrap_or(f64::NAN);
    tally.case((0.0..1e-8).contains(&mean), || {
        format!("mean short by {mean:e}")
    });
    tally.done()
}

/// Exact `E(Y_t)` equals an average of renewal counts over all letter sequences.
pub fn renewal_enumeration(up_to: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!("E(Y_t) equals exhaustive average, t <= {up_to}"));
    let model = renewal_exact(up_to);
    for t in 0..=up_to {
        let total: u64 = words_of_length(t)
            .map(|w| renewal_count(&w.to_letters()) as u64)
            .sum();
        let want = model.scaled(t);
        tally.case(*want == BigUint::from(total), || {
            format!("t = {t}: exact {want}, count {total}")
        });
    }
    tally.done()
}

/// `E(Y_t)` non-decreasing and `|E(Y_t)/t − 2/9| < 10^−2` at the end.
pub fn renewal_limit(t: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!("E(Y_t) non-decreasing and E(Y_{t})/{t} near 2/9"));
    let model = renewal_exact(t);
    for s in 1..=t {
        // Z(s) >= 3 Z(s−1)  <=>  E(Y_s) >= E(Y_{s−1})
        tally.case(*model.scaled(s) >= model.scaled(s - 1) * 3u32, || {
            format!("decrease at {s}")
        });
    }
    if t >= 1 {
        let gap = (model.ey_over_t(t).expect("t >= 1") - ratio(2, 9))
            .to_f64()
            .unwrap_or(f64::NAN);
        tally.case(gap.abs() < 1e-2, || format!("gap {gap}"));
    }
    tally.done()
}

/// The integer sandwich between the renewal sum and the `Σ ω` sum.
pub fn renewal_sandwich(up_to: usize) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "renewal sandwich of the omega sum, 3 <= t <= {up_to}"
    ));
    match lemma6_sandwiches(up_to) {
        Ok(reports) => {
            for r in reports {
                tally.case(r.holds, || format!("t = {}", r.t));
            }
        }
        Err(e) => tally.case(false, || e.to_string()),
    }
    tally.done()
}

/// Monte Carlo `E(Y_t)` within four standard errors of the exact value.
pub fn renewal_monte_carlo(t: usize, samples: u64, seed: u64) -> CheckOutcome {
    let mut tally = Tally::new(format!(
        "Monte Carlo E(Y_{t}) within 4 SE, {samples} samples"
    ));
    let exact = renewal_exact(t).ey(t).to_f64().unwrap_or(f64::NAN);
    match renewal_mc(t, samples, seed, None) {
        Ok(mc) => {
            let z = (mc.estimate - exact).abs() / mc.std_err;
            tally.case(z < 4.0, || {
                format!("estimate {}, exact {exact}, se {}", mc.estimate, mc.std_err)
            });
        }
        Err(e) => tally.case(false, || e.to_string()),
    }
    tally.done()
}

/// Sampled average path length at level `t` lies within the loose bounds
/// `2ᾱ_{t−1} <= D̄(t) <= 2ᾱ_{t−1} + 9`.
pub fn sampled_apl_bounds(t: u32, pairs: u64, seed: u64) -> CheckOutcome {
    let mut tally = Tally::new(format!("sampled APL of G_{t} within [2a, 2a + 9]"));
    let net = match build(t) {
        Ok(n) => n,
        Err(e) => {
            tally.case(false, || e.to_string());
            return tally.done();
        }
    };
    let lower = (asymptotics::mean_moves(t as usize - 1) * ratio(2, 1))
        .to_f64()
        .unwrap_or(f64::NAN);
    match sampled_apl(&net, pairs, seed) {
        Ok(s) => tally.case(lower <= s.estimate && s.estimate <= lower + 9.0, || {
            format!("estimate {} (se {}), lower {lower}", s.estimate, s.std_err)
        }),
        Err(e) => tally.case(false, || e.to_string()),
    }
    tally.done()
}
