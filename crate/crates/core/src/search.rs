//! Verification and bounded enumeration of green, maximal green and
//! reddening sequences over the oriented exchange graph.
//!
//! Every search takes a mandatory length bound. A report with
//! `truncated == false` is exhaustive; with `truncated == true` some branch
//! reached the bound without turning all vertices red, so "nothing found"
//! only means nothing up to that length.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framed::{FramedState, MatrixPair, MutationSequence, Permutation, Step};
use crate::quiver::Quiver;

/// What a sequence is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Every step mutates a green vertex.
    Green,
    /// Green, and all vertices are red at the end.
    MaximalGreen,
    /// All vertices are red at the end; steps may be red.
    Reddening,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Green => "green",
            Mode::MaximalGreen => "maximal green",
            Mode::Reddening => "reddening",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "green" => Ok(Mode::Green),
            "maximal_green" | "mgs" => Ok(Mode::MaximalGreen),
            "reddening" => Ok(Mode::Reddening),
            other => Err(Error::Parse(format!(
                "unknown mode {other:?} (expected green, maximal-green or reddening)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyFailure {
    /// Step `step` (1-based) mutated a red vertex.
    RedStep { step: usize, vertex: usize },
    /// The final state still has green vertices.
    NotAllRed { green: Vec<usize> },
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::RedStep { step, vertex } => {
                write!(f, "step {step} mutates vertex {vertex}, which is red")
            }
            VerifyFailure::NotAllRed { green } => {
                write!(f, "vertices {green:?} are still green at the end")
            }
        }
    }
}

/// Outcome of replaying a sequence on the framed quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub mode: Mode,
    pub steps: Vec<Step>,
    pub all_red: bool,
    pub failure: Option<VerifyFailure>,
    /// Set for valid maximal green and reddening sequences.
    pub permutation: Option<Permutation>,
    pub final_state: FramedState,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Replays `seq` on the framed quiver of `q` and checks it in `mode`.
/// Failures are reported in the result; only invalid vertices are errors.
pub fn verify_sequence(q: &Quiver, seq: &MutationSequence, mode: Mode) -> Result<Verification> {
    seq.check(q.n())?;
    let state = FramedState::new(q).mutate_sequence(seq.vertices())?;
    let steps = state.history().to_vec();
    let all_red = state.is_all_red()?;

    let first_red = steps
        .iter()
        .enumerate()
        .find(|(_, s)| !s.is_green())
        .map(|(i, s)| VerifyFailure::RedStep {
            step: i + 1,
            vertex: s.vertex,
        });
    let not_all_red = (!all_red).then(|| VerifyFailure::NotAllRed {
        green: state.green_vertices().unwrap_or_default(),
    });
    let failure = match mode {
        Mode::Green => first_red,
        Mode::MaximalGreen => first_red.or(not_all_red),
        Mode::Reddening => not_all_red,
    };

    let permutation = if failure.is_none() && mode != Mode::Green {
        match state.extract_permutation() {
            Ok(p) => Some(p),
            Err(_) => return Err(Error::Postcondition("all-red endpoint is not coframed")),
        }
    } else {
        None
    };

    Ok(Verification {
        mode,
        steps,
        all_red,
        failure,
        permutation,
        final_state: state,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    MaximalGreen,
    /// Branches on every vertex. The state space grows very quickly.
    Reddening,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    DfsAll,
    BfsShortest,
    CountOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_len: usize,
    pub mode: SearchMode,
    pub strategy: Strategy,
    /// Memoize on the exact `(principal, cmat)` pair.
    pub dedup: bool,
    /// Whether the reddening search may mutate the vertex it just mutated.
    pub allow_immediate_repeat: bool,
}

impl SearchConfig {
    pub fn maximal_green(max_len: usize) -> Self {
        SearchConfig {
            max_len: max_len.max(1),
            mode: SearchMode::MaximalGreen,
            strategy: Strategy::DfsAll,
            dedup: false,
            allow_immediate_repeat: false,
        }
    }

    pub fn reddening(max_len: usize) -> Self {
        SearchConfig {
            mode: SearchMode::Reddening,
            ..Self::maximal_green(max_len)
        }
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn dedup(mut self, dedup: bool) -> Self {
        self.dedup = dedup;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub sequences: Vec<MutationSequence>,
    pub count: u64,
    pub truncated: bool,
    pub states_visited: u64,
}

impl SearchReport {
    pub fn found(&self) -> bool {
        self.count > 0
    }
}

/// Runs the search described by `cfg` from the framed quiver of `q`.
pub fn search(q: &Quiver, cfg: &SearchConfig) -> Result<SearchReport> {
    match cfg.strategy {
        Strategy::BfsShortest => bfs_shortest(q, cfg),
        Strategy::DfsAll | Strategy::CountOnly => dfs_search(q, cfg),
    }
}

/// All maximal green sequences of length at most `max_len`, sorted
/// lexicographically.
pub fn enumerate_mgs(q: &Quiver, max_len: usize) -> Result<SearchReport> {
    search(q, &SearchConfig::maximal_green(max_len))
}

/// A shortest maximal green sequence (lexicographically first among the
/// shortest), if one of length at most `max_len` exists.
pub fn shortest_mgs(q: &Quiver, max_len: usize) -> Result<Option<MutationSequence>> {
    let cfg = SearchConfig::maximal_green(max_len)
        .strategy(Strategy::BfsShortest)
        .dedup(true);
    Ok(bfs_shortest(q, &cfg)?.sequences.into_iter().next())
}

/// Number of maximal green sequences of length at most `max_len`, and
/// whether the bound cut off some branch.
pub fn count_mgs(q: &Quiver, max_len: usize) -> Result<(u64, bool)> {
    let cfg = SearchConfig::maximal_green(max_len)
        .strategy(Strategy::CountOnly)
        .dedup(true);
    let report = dfs_search(q, &cfg)?;
    Ok((report.count, report.truncated))
}

/// The source sequence of an acyclic quiver: vertices in a topological
/// order, sources first, smallest index first among the available ones.
pub fn source_sequence(q: &Quiver) -> Result<MutationSequence> {
    let seq = MutationSequence(q.topological_order()?);
    if !verify_sequence(q, &seq, Mode::MaximalGreen)?.is_valid() {
        return Err(Error::Postcondition("source sequence is not maximal green"));
    }
    Ok(seq)
}

fn candidates(state: &MatrixPair, mode: SearchMode, last: Option<usize>, allow_repeat: bool) -> Result<Vec<usize>> {
    Ok(match mode {
        SearchMode::MaximalGreen => state.green_vertices()?,
        SearchMode::Reddening => (1..=state.n())
            .filter(|&k| allow_repeat || Some(k) != last)
            .collect(),
    })
}

#[derive(Default)]
struct Subtree {
    count: u64,
    truncated: bool,
}

struct Dfs<'a> {
    cfg: &'a SearchConfig,
    store: bool,
    sequences: Vec<MutationSequence>,
    visited: u64,
    truncated: bool,
    /// States known to have no completion within the recorded remaining
    /// length (used when listing sequences).
    dead_ends: HashMap<MatrixPair, (usize, bool)>,
    /// Exact completion counts per (state, remaining length, last vertex).
    counts: HashMap<(MatrixPair, usize, Option<usize>), (u64, bool)>,
}

impl<'a> Dfs<'a> {
    fn new(cfg: &'a SearchConfig) -> Self {
        Dfs {
            cfg,
            store: cfg.strategy == Strategy::DfsAll,
            sequences: Vec::new(),
            visited: 0,
            truncated: false,
            dead_ends: HashMap::new(),
            counts: HashMap::new(),
        }
    }

    fn last_key(&self, path: &[usize]) -> Option<usize> {
        // The previous vertex only influences the branching in reddening
        // mode without repeats.
        match self.cfg.mode {
            SearchMode::Reddening if !self.cfg.allow_immediate_repeat => path.last().copied(),
            _ => None,
        }
    }

    fn visit(&mut self, state: &MatrixPair, path: &mut Vec<usize>) -> Result<Subtree> {
        self.visited += 1;
        if state.is_all_red()? {
            if self.store {
                self.sequences.push(MutationSequence(path.clone()));
            }
            return Ok(Subtree {
                count: 1,
                truncated: false,
            });
        }
        if path.len() >= self.cfg.max_len {
            self.truncated = true;
            return Ok(Subtree {
                count: 0,
                truncated: true,
            });
        }
        let remaining = self.cfg.max_len - path.len();

        if self.cfg.dedup {
            if self.store {
                if let Some(&(r, trunc)) = self.dead_ends.get(state) {
                    if remaining <= r {
                        self.truncated |= trunc;
                        return Ok(Subtree {
                            count: 0,
                            truncated: trunc,
                        });
                    }
                }
            } else {
                let key = (state.clone(), remaining, self.last_key(path));
                if let Some(&(count, trunc)) = self.counts.get(&key) {
                    self.truncated |= trunc;
                    return Ok(Subtree {
                        count,
                        truncated: trunc,
                    });
                }
            }
        }

        let mut total = Subtree::default();
        for k in candidates(state, self.cfg.mode, path.last().copied(), self.cfg.allow_immediate_repeat)? {
            let next = state.mutate(k - 1);
            path.push(k);
            let sub = self.visit(&next, path)?;
            path.pop();
            total.count = total.count.saturating_add(sub.count);
            total.truncated |= sub.truncated;
        }

        if self.cfg.dedup {
            if self.store {
                if total.count == 0 {
                    let entry = self.dead_ends.entry(state.clone()).or_insert((0, false));
                    if remaining >= entry.0 {
                        *entry = (remaining, total.truncated);
                    }
                }
            } else {
                let key = (state.clone(), remaining, self.last_key(path));
                self.counts.insert(key, (total.count, total.truncated));
            }
        }
        Ok(total)
    }
}

fn dfs_search(q: &Quiver, cfg: &SearchConfig) -> Result<SearchReport> {
    let root = MatrixPair::framed(q);
    if root.is_all_red()? {
        // Not reachable for n >= 1: the framed quiver is all green.
        return Ok(SearchReport {
            sequences: vec![MutationSequence::default()],
            count: 1,
            truncated: false,
            states_visited: 1,
        });
    }
    let first = candidates(&root, cfg.mode, None, cfg.allow_immediate_repeat)?;
    // Subtrees below the first move are independent and explored in
    // parallel; each keeps its own memo so the result does not depend on
    // scheduling.
    let branches: Vec<Result<(Dfs<'_>, u64)>> = first
        .par_iter()
        .map(|&k| {
            let mut dfs = Dfs::new(cfg);
            let mut path = vec![k];
            let sub = dfs.visit(&root.mutate(k - 1), &mut path)?;
            Ok((dfs, sub.count))
        })
        .collect();

    let mut report = SearchReport {
        states_visited: 1,
        ..SearchReport::default()
    };
    for branch in branches {
        let (branch, count) = branch?;
        report.states_visited += branch.visited;
        report.truncated |= branch.truncated;
        report.count = report.count.saturating_add(count);
        report.sequences.extend(branch.sequences);
    }
    report.sequences.sort();
    Ok(report)
}

fn bfs_shortest(q: &Quiver, cfg: &SearchConfig) -> Result<SearchReport> {
    let root = MatrixPair::framed(q);
    let mut report = SearchReport::default();
    let mut seen: HashSet<MatrixPair> = HashSet::new();
    let mut queue: VecDeque<(MatrixPair, Vec<usize>)> = VecDeque::new();
    if cfg.dedup {
        seen.insert(root.clone());
    }
    queue.push_back((root, Vec::new()));

    while let Some((state, path)) = queue.pop_front() {
        report.states_visited += 1;
        if state.is_all_red()? {
            report.sequences.push(MutationSequence(path));
            report.count = 1;
            report.truncated = false;
            return Ok(report);
        }
        if path.len() >= cfg.max_len {
            report.truncated = true;
            continue;
        }
        for k in candidates(&state, cfg.mode, path.last().copied(), cfg.allow_immediate_repeat)? {
            let next = state.mutate(k - 1);
            if cfg.dedup && !seen.insert(next.clone()) {
                continue;
            }
            let mut p = path.clone();
            p.push(k);
            queue.push_back((next, p));
        }
    }
    Ok(report)
}
