//! The networks `G_t`: vertices are all words of length at most `t`, edges
//! join distinct words whose subtriangle boundaries touch.

use std::collections::BTreeSet;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{are_neighbors, Word, MAX_LEN};

/// Default largest `t` accepted by [`build`].
pub const DEFAULT_BUILD_CAP: u32 = 16;
/// Largest `t` accepted by the quadratic [`build_reference`].
pub const REFERENCE_CAP: u32 = 7;
/// Hard ceiling from the `u32` vertex ids.
pub const MAX_NETWORK_T: u32 = 19;

/// `#V_t = (3^{t+1} − 1) / 2`.
pub fn vertex_count(t: u32) -> u64 {
    (3u64.pow(t + 1) - 1) / 2
}

/// Position of a word in the canonical order: by length, then lexicographic.
pub fn index_of(word: &Word) -> u64 {
    let offset = (3u64.pow(word.len() as u32) - 1) / 2;
    offset
        + word
            .letters()
            .fold(0u64, |acc, l| acc * 3 + u64::from(l - 1))
}

/// Inverse of [`index_of`] on `V_t`.
pub fn word_of(index: u64, t: u32) -> Result<Word> {
    if t as usize > MAX_LEN || index >= vertex_count(t) {
        return Err(Error::IndexOutOfRange { index, t });
    }
    let mut len = 0u32;
    let mut offset = 0u64;
    while index >= offset + 3u64.pow(len) {
        offset += 3u64.pow(len);
        len += 1;
    }
    let mut code = index - offset;
    let mut letters = vec![0u8; len as usize];
    for slot in letters.iter_mut().rev() {
        *slot = (code % 3) as u8 + 1;
        code /= 3;
    }
    Word::from_letters(&letters)
}

fn check_member(word: &Word, t: u32) -> Result<()> {
    if word.len() > t as usize {
        return Err(Error::NotInNetwork {
            word: word.to_string(),
            t,
        });
    }
    Ok(())
}

/// Pushes every `base·β` with `β` nonempty, at most two distinct letters and
/// total length at most `t`.
fn push_descendants(base: Word, letters_seen: u8, t: usize, out: &mut Vec<Word>) {
    if base.len() >= t {
        return;
    }
    for letter in 1..=3u8 {
        let seen = letters_seen | (1 << (letter - 1));
        if seen.count_ones() <= 2 {
            let child = base.push_unchecked(letter);
            out.push(child);
            push_descendants(child, seen, t, out);
        }
    }
}

/// All neighbors of `word` inside `V_t`, sorted by vertex index.
///
/// Generated directly from the neighbor criteria instead of scanning `V_t`:
/// ancestors whose removed suffix misses a letter, descendants whose added
/// suffix misses a letter, and lateral words. A lateral neighbor
/// `β j i^{k'}` comes from one of the suffix parses `word = β i j^k`: either
/// `k = 0` (the last letter is `i`, and `j` is either other letter) or `k`
/// is the length of the maximal trailing run and `i` the letter before it.
pub fn neighbors_of(word: &Word, t: u32) -> Result<Vec<Word>> {
    check_member(word, t)?;
    let t = t as usize;
    let n = word.len();
    let mut out = Vec::new();

    let mut seen = 0u8;
    for pos in (0..n).rev() {
        seen |= 1 << (word.letter(pos) - 1);
        if seen.count_ones() > 2 {
            break;
        }
        out.push(word.prefix(pos));
    }

    push_descendants(*word, 0, t, &mut out);

    if n >= 1 {
        let mut lateral = |stem: Word, j: u8, i: u8| {
            let head = stem.push_unchecked(j);
            out.push(head);
            for k in 1..=(t - head.len()) {
                out.push(head.push_run(i, k));
            }
        };

        let i = word.letter(n - 1);
        let stem = word.prefix(n - 1);
        for j in (1..=3u8).filter(|&j| j != i) {
            lateral(stem, j, i);
        }

        let j = i;
        let run = (0..n).rev().take_while(|&p| word.letter(p) == j).count();
        if run < n {
            let i = word.letter(n - run - 1);
            lateral(word.prefix(n - run - 1), j, i);
        }
    }

    out.sort_unstable_by_key(index_of);
    out.dedup();
    Ok(out)
}

/// Immutable adjacency of `G_t` in compressed sparse row form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    t: u32,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Network {
    fn from_lists(t: u32, lists: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut total = 0;
        for l in &lists {
            total += l.len();
            offsets.push(total);
        }
        let mut targets = Vec::with_capacity(total);
        for l in lists {
            targets.extend(l);
        }
        Network {
            t,
            offsets,
            targets,
        }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Neighbor ids of vertex `v`, ascending.
    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn word(&self, v: u32) -> Word {
        word_of(u64::from(v), self.t).expect("vertex id within V_t")
    }

    /// Vertex id of a word, if it belongs to `V_t`.
    pub fn index(&self, word: &Word) -> Result<u32> {
        check_member(word, self.t)?;
        Ok(index_of(word) as u32)
    }

    pub fn contains_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v` by id.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }
}

fn check_cap(t: u32, cap: u32, what: &'static str) -> Result<()> {
    let cap = cap.min(MAX_NETWORK_T);
    if t > cap {
        return Err(Error::CapExceeded {
            t,
            cap,
            what,
            hint: "",
        });
    }
    Ok(())
}

/// Builds `G_t` with the default cap.
pub fn build(t: u32) -> Result<Network> {
    build_with_cap(t, DEFAULT_BUILD_CAP)
}

/// Builds `G_t` from per-vertex neighbor generation, in parallel over vertices.
pub fn build_with_cap(t: u32, cap: u32) -> Result<Network> {
    check_cap(t, cap, "build")?;
    let n = vertex_count(t);
    let lists: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let w = word_of(v, t).expect("id within V_t");
            neighbors_of(&w, t)
                .expect("word within V_t")
                .iter()
                .map(|u| index_of(u) as u32)
                .collect()
        })
        .collect();
    Ok(Network::from_lists(t, lists))
}

/// Builds `G_t` by testing every pair with [`are_neighbors`].
pub fn build_reference(t: u32) -> Result<Network> {
    check_cap(t, REFERENCE_CAP, "reference build")?;
    let n = vertex_count(t) as u32;
    let words: Vec<Word> = (0..n).map(|v| word_of(u64::from(v), t).unwrap()).collect();
    let mut lists = vec![Vec::new(); n as usize];
    for u in 0..n {
        for v in (u + 1)..n {
            if are_neighbors(&words[u as usize], &words[v as usize]) {
                lists[u as usize].push(v);
                lists[v as usize].push(u);
            }
        }
    }
    Ok(Network::from_lists(t, lists))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    EdgeListTsv,
    AdjacencyJsonl,
    MetadataJson,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list-tsv" => Ok(ExportFormat::EdgeListTsv),
            "adjacency-jsonl" => Ok(ExportFormat::AdjacencyJsonl),
            "metadata-json" => Ok(ExportFormat::MetadataJson),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NetworkMetadata {
    pub t: u32,
    pub vertex_count: u64,
    pub edge_count: u64,
}

impl Network {
    pub fn metadata(&self) -> NetworkMetadata {
        NetworkMetadata {
            t: self.t,
            vertex_count: self.vertex_count() as u64,
            edge_count: self.edge_count() as u64,
        }
    }
}

#[derive(Serialize)]
struct AdjacencyLine {
    word: String,
    neighbors: Vec<String>,
}

/// Writes the network in one of the export formats. Output is deterministic
/// UTF-8 with LF line endings.
///
/// `edge-list-tsv` lists each edge once as `smaller<TAB>larger` (lexicographic
/// word order, root spelled `-`), lines sorted lexicographically.
/// `adjacency-jsonl` has one object per vertex in id order.
pub fn export<W: Write + ?Sized>(
    net: &Network,
    format: ExportFormat,
    out: &mut W,
) -> io::Result<()> {
    match format {
        ExportFormat::EdgeListTsv => {
            let edges: BTreeSet<(Word, Word)> = net
                .edges()
                .map(|(u, v)| {
                    let (a, b) = (net.word(u), net.word(v));
                    if a < b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            for (a, b) in edges {
                writeln!(out, "{a}\t{b}")?;
            }
        }
        ExportFormat::AdjacencyJsonl => {
            for v in 0..net.vertex_count() as u32 {
                let line = AdjacencyLine {
                    word: net.word(v).to_string(),
                    neighbors: net
                        .neighbors(v)
                        .iter()
                        .map(|&u| net.word(u).to_string())
                        .collect(),
                };
                serde_json::to_writer(&mut *out, &line)?;
                out.write_all(b"\n")?;
            }
        }
        ExportFormat::MetadataJson => {
            serde_json::to_writer(&mut *out, &net.metadata())?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

pub fn export_to_vec(net: &Network, format: ExportFormat) -> Vec<u8> {
    let mut buf = Vec::new();
    export(net, format, &mut buf).expect("writing to a Vec cannot fail");
    buf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::words_up_to;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn indexing() {
        assert_eq!(index_of(&Word::EMPTY), 0);
        assert_eq!(index_of(&w("3")), 3);
        assert_eq!(index_of(&w("11")), 4);
        assert_eq!(index_of(&w("33")), 12);
        for (i, word) in words_up_to(4).enumerate() {
            assert_eq!(index_of(&word), i as u64);
            assert_eq!(word_of(i as u64, 4).unwrap(), word);
        }
        assert!(matches!(word_of(40, 3), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(vertex_count(3), 40);
    }

    #[test]
    fn neighbors_of_root_at_t2() {
        let got = neighbors_of(&Word::EMPTY, 2).unwrap();
        let brute: Vec<Word> = words_up_to(2)
            .filter(|x| are_neighbors(&Word::EMPTY, x))
            .collect();
        assert_eq!(got, brute);
        assert_eq!(got.len(), 12);
    }

    #[test]
    fn neighbors_of_examples() {
        assert!(!neighbors_of(&w("132"), 3).unwrap().contains(&Word::EMPTY));
        let n21 = neighbors_of(&w("21"), 3).unwrap();
        for x in ["1", "2", "-"] {
            assert!(n21.contains(&w(x)), "{x}");
        }
        assert!(matches!(
            neighbors_of(&w("1111"), 3),
            Err(Error::NotInNetwork { .. })
        ));
    }

    #[test]
    fn neighbors_of_matches_scan() {
        for t in 0..=5 {
            let all: Vec<Word> = words_up_to(t as usize).collect();
            for x in &all {
                let brute: Vec<Word> = all
                    .iter()
                    .copied()
                    .filter(|y| are_neighbors(x, y))
                    .collect();
                assert_eq!(neighbors_of(x, t).unwrap(), brute, "word {x} at t={t}");
            }
        }
    }

    #[test]
    fn small_builds() {
        let g0 = build(0).unwrap();
        assert_eq!((g0.vertex_count(), g0.edge_count()), (1, 0));
        let g1 = build(1).unwrap();
        assert_eq!((g1.vertex_count(), g1.edge_count()), (4, 6));
        assert_eq!(build(3).unwrap().vertex_count(), 40);
        assert_eq!(build_reference(1).unwrap(), g1);
        assert_eq!(build_reference(0).unwrap(), g0);
        assert!(matches!(build(17), Err(Error::CapExceeded { cap: 16, .. })));
        assert!(build_reference(8).is_err());
    }

    #[test]
    fn exports() {
        let g1 = build(1).unwrap();
        let tsv = String::from_utf8(export_to_vec(&g1, ExportFormat::EdgeListTsv)).unwrap();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines, ["-\t1", "-\t2", "-\t3", "1\t2", "1\t3", "2\t3"]);
        assert!(export_to_vec(&build(0).unwrap(), ExportFormat::EdgeListTsv).is_empty());

        let meta = export_to_vec(&build(3).unwrap(), ExportFormat::MetadataJson);
        let v: serde_json::Value = serde_json::from_slice(&meta).unwrap();
        assert_eq!(v["vertex_count"], 40);
        assert_eq!(v["t"], 3);

        let jsonl = String::from_utf8(export_to_vec(&g1, ExportFormat::AdjacencyJsonl)).unwrap();
        assert_eq!(
            jsonl.lines().next().unwrap(),
            r#"{"word":"-","neighbors":["1","2","3"]}"#
        );
        assert!("dot".parse::<ExportFormat>().is_err());
    }
}
