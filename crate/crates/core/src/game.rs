//! The polyhedral game: player A picks a set of coordinates, player B one
//! of them, and every vertex is sheared along B's coordinate. A wins once a
//! single vertex remains.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of rounds after which a play is abandoned.
pub const ROUND_CAP: usize = 64;

/// Default node budget of [`game_tree_oracle`].
pub const ORACLE_BUDGET: usize = 200_000;

/// Minimal vertices of `conv(S + ℝ^n_+)`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GameState {
    n: usize,
    points: Vec<Vec<u32>>,
}

/// `J` as zero-based coordinates and B's choice `j ∈ J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub subset: Vec<usize>,
    pub choice: usize,
}

fn dominates(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut points: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    points.sort();
    points.dedup();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for p in points {
        // sorted lexicographically, so a dominating point always comes first
        if !out.iter().any(|q| dominates(q, &p)) {
            out.push(p);
        }
    }
    out
}

impl GameState {
    pub fn new(points: Vec<Vec<u32>>) -> Result<Self> {
        let n = points.first().map(Vec::len).ok_or_else(|| Error::ZeroInput("empty vertex set".into()))?;
        if n == 0 || points.iter().any(|p| p.len() != n) {
            return Err(Error::Domain("vertices must share a positive dimension".into()));
        }
        Ok(GameState { n, points: minimalize(points) })
    }

    /// Vertices as lines of space-separated naturals.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let p = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse { offset: lineno, message: format!("'{t}' is not a natural number") })
                })
                .collect::<Result<Vec<_>>>()?;
            points.push(p);
        }
        GameState::new(points)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn is_won(&self) -> bool {
        self.points.len() == 1
    }

    fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if subset.len() < 2 {
            return Err(Error::Domain("player A must choose at least two coordinates".into()));
        }
        for (k, &i) in subset.iter().enumerate() {
            if i >= self.n || subset[..k].contains(&i) {
                return Err(Error::Domain("invalid coordinate subset".into()));
            }
        }
        Ok(())
    }

    pub fn apply_move(&self, m: &Move) -> Result<GameState> {
        self.check_subset(&m.subset)?;
        if !m.subset.contains(&m.choice) {
            return Err(Error::Domain("player B must choose inside A's subset".into()));
        }
        let points = self
            .points
            .iter()
            .map(|a| {
                let mut b = a.clone();
                b[m.choice] = m.subset.iter().map(|&k| a[k]).sum();
                b
            })
            .collect();
        Ok(GameState { n: self.n, points: minimalize(points) })
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|p| format!("({})", p.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn pairs(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            out.push(vec![i, k]);
        }
    }
    out
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> =
        (0u32..1 << n).filter(|m| m.count_ones() >= 2).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Sum over coordinates of the spread `max − min` of the vertices, with the
/// vertex count as the leading key.
fn potential(s: &GameState) -> (usize, u64) {
    let mut spread = 0u64;
    for i in 0..s.n {
        let lo = s.points.iter().map(|p| p[i]).min().unwrap_or(0);
        let hi = s.points.iter().map(|p| p[i]).max().unwrap_or(0);
        spread += u64::from(hi - lo);
    }
    (s.points.len(), spread)
}

/// Outcome of an exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "result", content = "rounds")]
pub enum OracleResult {
    ForcedWin(usize),
    Unknown,
}

struct Search {
    memo: HashMap<GameState, (usize, Option<usize>)>,
    nodes: usize,
    budget: usize,
    pairs_only: bool,
}

impl Search {
    /// Fewest rounds in which A forces a win within `depth`, if any.
    fn solve(&mut self, s: &GameState, depth: usize) -> Option<usize> {
        if s.is_won() {
            return Some(0);
        }
        if depth == 0 || self.nodes >= self.budget {
            return None;
        }
        if let Some(&(d, r)) = self.memo.get(s) {
            match r {
                Some(k) if k <= depth => return Some(k),
                None if d >= depth => return None,
                _ => {}
            }
        }
        self.nodes += 1;
        let moves = if self.pairs_only { pairs(s.n) } else { subsets(s.n) };
        let mut best: Option<usize> = None;
        for subset in moves {
            let mut worst = Some(0);
            for &j in &subset {
                let next = s.apply_move(&Move { subset: subset.clone(), choice: j }).expect("valid move");
                match self.solve(&next, depth - 1) {
                    Some(k) => worst = worst.map(|w: usize| w.max(k + 1)),
                    None => {
                        worst = None;
                        break;
                    }
                }
            }
            if let Some(w) = worst {
                best = Some(best.map_or(w, |b| b.min(w)));
            }
        }
        self.memo.insert(s.clone(), (depth, best));
        best
    }
}

/// Exhaustive minimax over every subset of A and every reply of B.
pub fn game_tree_oracle(s: &GameState, depth: usize) -> OracleResult {
    oracle_with(s, depth, ORACLE_BUDGET, false)
}

pub fn oracle_with(s: &GameState, depth: usize, budget: usize, pairs_only: bool) -> OracleResult {
    let mut search = Search { memo: HashMap::new(), nodes: 0, budget, pairs_only };
    match search.solve(s, depth) {
        Some(k) => OracleResult::ForcedWin(k),
        None => OracleResult::Unknown,
    }
}

/// Look-ahead depth of the shipped strategy.
const LOOKAHEAD: usize = 4;

/// Two-element subset for player A: the pair forcing the quickest win
/// within a short look-ahead, otherwise the pair whose worst reply leaves
/// the smallest potential. Ties go to the lexicographically first pair.
pub fn strategy_a(s: &GameState) -> Result<Vec<usize>> {
    if s.is_won() {
        return Err(Error::Domain("the game is already won".into()));
    }
    let mut search = Search { memo: HashMap::new(), nodes: 0, budget: 20_000, pairs_only: true };
    let mut forced: Option<(usize, Vec<usize>)> = None;
    let mut fallback: Option<((usize, u64), Vec<usize>)> = None;
    for pair in pairs(s.n) {
        let mut worst_rounds = Some(0);
        let mut worst_pot = (0, 0);
        for &j in &pair {
            let next = s.apply_move(&Move { subset: pair.clone(), choice: j })?;
            worst_pot = worst_pot.max(potential(&next));
            worst_rounds = match (worst_rounds, search.solve(&next, LOOKAHEAD)) {
                (Some(w), Some(k)) => Some(w.max(k + 1)),
                _ => None,
            };
        }
        if let Some(w) = worst_rounds {
            if forced.as_ref().is_none_or(|(b, _)| w < *b) {
                forced = Some((w, pair.clone()));
            }
        }
        if fallback.as_ref().is_none_or(|(b, _)| worst_pot < *b) {
            fallback = Some((worst_pot, pair));
        }
    }
    Ok(forced.map(|(_, p)| p).or(fallback.map(|(_, p)| p)).expect("n ≥ 2 when not won"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub state: GameState,
    pub mv: Move,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub rounds: Vec<Round>,
    pub final_state: GameState,
    pub won: bool,
}

/// Plays A's strategy against the given B-policy for at most `cap` rounds.
pub fn play_game<A, B>(s: &GameState, mut strategy: A, mut adversary: B, cap: usize) -> Result<Transcript>
where
    A: FnMut(&GameState) -> Result<Vec<usize>>,
    B: FnMut(&GameState, &[usize]) -> usize,
{
    let mut state = s.clone();
    let mut rounds = Vec::new();
    while !state.is_won() && rounds.len() < cap {
        let subset = strategy(&state)?;
        let choice = adversary(&state, &subset);
        let mv = Move { subset, choice };
        let next = state.apply_move(&mv)?;
        rounds.push(Round { state, mv });
        state = next;
    }
    Ok(Transcript { won: state.is_won(), rounds, final_state: state })
}

/// Longest play of the shipped strategy over all replies of B, or the
/// state at which `cap` rounds are exceeded.
pub fn worst_case_rounds(s: &GameState, cap: usize) -> std::result::Result<usize, GameState> {
    fn go(s: &GameState, left: usize, memo: &mut HashMap<GameState, usize>) -> std::result::Result<usize, GameState> {
        if s.is_won() {
            return Ok(0);
        }
        if let Some(&k) = memo.get(s) {
            if k <= left {
                return Ok(k);
            }
        }
        if left == 0 {
            return Err(s.clone());
        }
        let pair = strategy_a(s).expect("not won");
        let mut worst = 0;
        for &j in &pair {
            let next = s.apply_move(&Move { subset: pair.clone(), choice: j }).expect("valid move");
            worst = worst.max(go(&next, left - 1, memo)? + 1);
        }
        memo.insert(s.clone(), worst);
        Ok(worst)
    }
    go(s, cap, &mut HashMap::new())
}
