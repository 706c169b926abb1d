//! Seedings, match sets and match set sequences: the knockout-tournament
//! side of the model, including the exhaustive bracket enumeration that
//! serves as the brute-force oracle.

use crate::error::{Error, Result};
use crate::player_set::PlayerSet;
use crate::tournament::Tournament;

/// A seeding of 2^p distinct players onto the leaves of a complete binary
/// tree. Leaves 2i and 2i+1 meet in round one; winners pair up by adjacent
/// blocks. The tree is unordered, so brackets are kept in a canonical form:
/// inside every block, the half containing the smaller player index is
/// written first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bracket {
    leaves: Vec<usize>,
}

impl Bracket {
    pub fn new(leaves: Vec<usize>) -> Result<Self> {
        if !leaves.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(leaves.len()));
        }
        let set: PlayerSet = leaves.iter().copied().collect();
        if set.len() != leaves.len() {
            return Err(Error::InvalidBracket("duplicate leaf".into()));
        }
        if leaves.iter().any(|&v| v >= 64) {
            return Err(Error::InvalidBracket("leaf index out of range".into()));
        }
        let mut b = Bracket { leaves };
        canonicalize(&mut b.leaves);
        Ok(b)
    }

    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn players(&self) -> PlayerSet {
        self.leaves.iter().copied().collect()
    }

    pub fn rounds(&self) -> usize {
        self.leaves.len().trailing_zeros() as usize
    }

    /// Space-separated leaf indices, e.g. `0 5 2 7 1 4 3 6`.
    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.leaves.iter().map(|v| v.to_string()).collect();
        parts.join(" ")
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let mut leaves = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::InvalidBracket(format!("bad leaf token `{tok}`")))?;
            leaves.push(v);
        }
        Bracket::new(leaves)
    }
}

fn canonicalize(leaves: &mut [usize]) {
    let n = leaves.len();
    if n <= 1 {
        return;
    }
    let (left, right) = leaves.split_at_mut(n / 2);
    canonicalize(left);
    canonicalize(right);
    // Canonical sub-blocks start with their minimum, so comparing the first
    // leaves orders the halves by block minimum.
    if right[0] < left[0] {
        left.swap_with_slice(right);
    }
}

/// The matches of one round: `(winner, loser)` arcs with pairwise distinct
/// endpoints, kept sorted by smaller endpoint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchSet {
    matches: Vec<(usize, usize)>,
}

impl MatchSet {
    pub fn new(matches: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = PlayerSet::EMPTY;
        for &(w, l) in &matches {
            if w == l || seen.contains(w) || seen.contains(l) {
                return Err(Error::InvalidSequence(format!(
                    "player appears twice in one round (match {w}>{l})"
                )));
            }
            seen.insert(w);
            seen.insert(l);
        }
        let mut m = MatchSet { matches };
        m.sort();
        Ok(m)
    }

    fn sort(&mut self) {
        self.matches.sort_by_key(|&(w, l)| w.min(l));
    }

    pub fn matches(&self) -> &[(usize, usize)] {
        &self.matches
    }

    pub fn len(&self) -> usize {
        self.matches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matches.is_empty()
    }

    /// Everyone who played in this round.
    pub fn participants(&self) -> PlayerSet {
        self.matches.iter().flat_map(|&(w, l)| [w, l]).collect()
    }

    pub fn winners(&self) -> PlayerSet {
        self.matches.iter().map(|&(w, _)| w).collect()
    }

    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.matches.iter().map(|(w, l)| format!("{w}>{l}")).collect();
        parts.join(" ")
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let mut matches = Vec::new();
        for tok in line.split_whitespace() {
            let (w, l) = tok
                .split_once('>')
                .ok_or_else(|| Error::InvalidSequence(format!("bad match token `{tok}`")))?;
            let w: usize = w
                .parse()
                .map_err(|_| Error::InvalidSequence(format!("bad winner in `{tok}`")))?;
            let l: usize = l
                .parse()
                .map_err(|_| Error::InvalidSequence(format!("bad loser in `{tok}`")))?;
            matches.push((w, l));
        }
        MatchSet::new(matches)
    }
}

/// Per-round match sets of a full knockout run; round r has half as many
/// matches as round r-1 and its participants are exactly the previous
/// round's winners.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchSetSequence {
    rounds: Vec<MatchSet>,
}

impl MatchSetSequence {
    pub fn new(rounds: Vec<MatchSet>) -> Self {
        MatchSetSequence { rounds }
    }

    pub fn rounds(&self) -> &[MatchSet] {
        &self.rounds
    }

    pub fn num_rounds(&self) -> usize {
        self.rounds.len()
    }

    pub fn round(&self, r: usize) -> &MatchSet {
        &self.rounds[r]
    }

    /// The champion, i.e. the winner of the single final match. `None` for a
    /// zero-round sequence.
    pub fn winner(&self) -> Option<usize> {
        self.rounds.last().and_then(|m| m.matches().first()).map(|&(w, _)| w)
    }

    /// One line per round, matches as `w>l` tokens.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for round in &self.rounds {
            out.push_str(&round.to_line());
            out.push('\n');
        }
        out
    }

    pub fn parse_lines(text: &str) -> Result<Self> {
        let mut rounds = Vec::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            rounds.push(MatchSet::parse_line(line)?);
        }
        Ok(MatchSetSequence::new(rounds))
    }

    /// Structural validity for the given player set: power-of-two field,
    /// halving cardinalities, full first round, winners carried over exactly.
    /// Arc membership in a concrete tournament is checked by
    /// [`validate_sequence`].
    pub fn validate_structure(&self, players: PlayerSet) -> Result<()> {
        let n = players.len();
        if !n.is_power_of_two() {
            return Err(Error::InvalidSequence(format!(
                "{n} participants is not a power of two"
            )));
        }
        let rounds = n.trailing_zeros() as usize;
        if self.rounds.len() != rounds {
            return Err(Error::InvalidSequence(format!(
                "{} rounds for {n} players, expected {rounds}",
                self.rounds.len()
            )));
        }
        let mut expected = players;
        for (r, m) in self.rounds.iter().enumerate() {
            if m.len() != n >> (r + 1) {
                return Err(Error::InvalidSequence(format!(
                    "round {} has {} matches, expected {}",
                    r + 1,
                    m.len(),
                    n >> (r + 1)
                )));
            }
            if m.participants() != expected {
                return Err(Error::InvalidSequence(format!(
                    "round {} participants are not the previous round's winners",
                    r + 1
                )));
            }
            expected = m.winners();
        }
        Ok(())
    }
}

/// Plays out a bracket. Deterministic: the `beats` relation is total.
pub fn play(t: &Tournament, bracket: &Bracket) -> (usize, MatchSetSequence) {
    for &v in bracket.leaves() {
        assert!(v < t.n(), "leaf {v} out of range for {} players", t.n());
    }
    let mut alive: Vec<usize> = bracket.leaves().to_vec();
    let mut rounds = Vec::with_capacity(bracket.rounds());
    while alive.len() > 1 {
        let mut matches = Vec::with_capacity(alive.len() / 2);
        let mut next = Vec::with_capacity(alive.len() / 2);
        for pair in alive.chunks(2) {
            let (x, y) = (pair[0], pair[1]);
            let (w, l) = if t.beats(x, y) { (x, y) } else { (y, x) };
            matches.push((w, l));
            next.push(w);
        }
        let mut m = MatchSet { matches };
        m.sort();
        rounds.push(m);
        alive = next;
    }
    (alive[0], MatchSetSequence::new(rounds))
}

/// Checks all validity conditions of a sequence against a tournament:
/// every match is an arc of `t`, the first round covers `players` exactly,
/// and each round's winners are the next round's participants.
pub fn validate_sequence(t: &Tournament, players: PlayerSet, seq: &MatchSetSequence) -> bool {
    validate_sequence_diag(t, players, seq).is_ok()
}

/// Diagnostic variant reporting the first violated condition.
pub fn validate_sequence_diag(
    t: &Tournament,
    players: PlayerSet,
    seq: &MatchSetSequence,
) -> Result<()> {
    seq.validate_structure(players)?;
    for (r, m) in seq.rounds().iter().enumerate() {
        for &(w, l) in m.matches() {
            if w >= t.n() || l >= t.n() || !t.beats(w, l) {
                return Err(Error::InvalidSequence(format!(
                    "round {}: {w}>{l} is not an arc of the tournament",
                    r + 1
                )));
            }
        }
    }
    Ok(())
}

/// Rebuilds a seeding realizing a structurally valid sequence. Playing the
/// result under any tournament consistent with the sequence reproduces it
/// exactly (up to the canonical left/right convention).
pub fn sequence_to_bracket(seq: &MatchSetSequence) -> Result<Bracket> {
    let players = if seq.num_rounds() == 0 {
        return Err(Error::InvalidSequence(
            "cannot infer the field of a zero-round sequence".into(),
        ));
    } else {
        seq.round(0).participants()
    };
    seq.validate_structure(players)?;
    let champion = seq.winner().expect("validated nonempty sequence has a final");
    let mut leaves = Vec::with_capacity(players.len());
    collect_leaves(seq, champion, seq.num_rounds(), &mut leaves);
    Bracket::new(leaves)
}

/// The sub-bracket of rounds 1..=r that delivers `p`; round r pairs `p`
/// against the loser of its match there.
fn collect_leaves(seq: &MatchSetSequence, p: usize, r: usize, out: &mut Vec<usize>) {
    if r == 0 {
        out.push(p);
        return;
    }
    let &(w, l) = seq
        .round(r - 1)
        .matches()
        .iter()
        .find(|&&(w, _)| w == p)
        .expect("structural validation guarantees a winning match per survivor");
    debug_assert_eq!(w, p);
    collect_leaves(seq, w, r - 1, out);
    collect_leaves(seq, l, r - 1, out);
}

/// Every structurally distinct bracket on `players`, exactly once; there are
/// n!/2^(n-1) of them. Recursion: the half containing the smallest player
/// goes left, then both halves are enumerated independently.
pub fn enumerate_brackets(players: PlayerSet) -> Result<Vec<Bracket>> {
    if !players.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwo(players.len()));
    }
    let mut out = Vec::new();
    let mut scratch = Vec::with_capacity(players.len());
    enumerate_into(players, &mut scratch, &mut out);
    Ok(out)
}

fn enumerate_into(players: PlayerSet, prefix: &mut Vec<usize>, out: &mut Vec<Bracket>) {
    let n = players.len();
    if n == 1 {
        let mut leaves = prefix.clone();
        leaves.push(players.min().unwrap());
        out.push(Bracket { leaves });
        return;
    }
    let lo = players.min().unwrap();
    let rest = players.minus(PlayerSet::single(lo));
    let members: Vec<usize> = rest.iter().collect();
    // Choose the other n/2 - 1 members of the half containing `lo`.
    for combo in k_subsets(members.len(), n / 2 - 1) {
        let mut left = PlayerSet::single(lo);
        for (i, &m) in members.iter().enumerate() {
            if combo >> i & 1 == 1 {
                left.insert(m);
            }
        }
        let right = players.minus(left);
        let mark = prefix.len();
        for l in enumerate_brackets(left).expect("half of a power of two") {
            prefix.truncate(mark);
            prefix.extend_from_slice(l.leaves());
            enumerate_into(right, prefix, out);
        }
        prefix.truncate(mark);
    }
}

/// All k-element subsets of {0..m-1} as bit masks, Gosper's hack order.
fn k_subsets(m: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << m;
    let mut cur = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut done = false;
    std::iter::from_fn(move || {
        if done || cur >= limit {
            return None;
        }
        let out = cur;
        if k == 0 {
            done = true;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
        }
        Some(out)
    })
}

/// Unions equal-length sequences over disjoint player sets round by round,
/// then appends extra rounds; the result must be structurally valid.
pub fn merge_sequences(
    parts: &[MatchSetSequence],
    extra_rounds: &[MatchSet],
) -> Result<MatchSetSequence> {
    let len = match parts.first() {
        Some(p) => p.num_rounds(),
        None => 0,
    };
    if parts.iter().any(|p| p.num_rounds() != len) {
        return Err(Error::LengthMismatch);
    }
    let mut seen = PlayerSet::EMPTY;
    for p in parts {
        let players = if len == 0 {
            PlayerSet::EMPTY
        } else {
            p.round(0).participants()
        };
        if !players.intersect(seen).is_empty() {
            return Err(Error::OverlappingPlayers);
        }
        seen = seen.union(players);
    }
    let mut rounds = Vec::with_capacity(len + extra_rounds.len());
    for r in 0..len {
        let mut matches = Vec::new();
        for p in parts {
            matches.extend_from_slice(p.round(r).matches());
        }
        rounds.push(MatchSet::new(matches)?);
    }
    rounds.extend_from_slice(extra_rounds);
    let merged = MatchSetSequence::new(rounds);
    let players = if merged.num_rounds() == 0 {
        seen
    } else {
        merged.round(0).participants()
    };
    merged
        .validate_structure(players)
        .map_err(|e| Error::InvalidExtension(e.to_string()))?;
    Ok(merged)
}
