//! Hardness-gadget constructions and the special-instance machinery: the
//! single-cross-arc instances whose winning seedings are forced into a rigid
//! block structure, and the two embeddings that transplant an arbitrary
//! instance into them.

use crate::bracket::{validate_sequence, MatchSet, MatchSetSequence};
use crate::error::{Error, Result};
use crate::player_set::PlayerSet;
use crate::tournament::Tournament;

/// A constructed gadget instance. `embedding[i]` is the gadget index of the
/// original player `i`; the gadget favorite is always player 0.
#[derive(Debug, Clone)]
pub struct GadgetOutput {
    pub instance: Tournament,
    pub a_star: usize,
    pub b_star: usize,
    pub embedding: Vec<usize>,
}

/// Whether the instance is special with respect to the marked pair:
/// |N_out(v)| = 3|N_in(v)| - 1 with |N_in(v)| a power of two, (a*, b*) is an
/// arc from N_out(v) to N_in(v), and every other out/in pair is oriented
/// towards N_out(v).
pub fn is_special(t: &Tournament, v: usize, a_star: usize, b_star: usize) -> bool {
    is_special_diag(t, v, a_star, b_star).is_ok()
}

/// Diagnostic variant of [`is_special`] naming the violated condition.
pub fn is_special_diag(t: &Tournament, v: usize, a_star: usize, b_star: usize) -> Result<()> {
    let all = t.players();
    let a_side = t.out_neighbors(v, all);
    let b_side = t.in_neighbors(v, all);
    if !b_side.len().is_power_of_two() {
        return Err(Error::NotSpecial(format!(
            "|N_in| = {} is not a power of two",
            b_side.len()
        )));
    }
    if a_side.len() + 1 != 3 * b_side.len() {
        return Err(Error::NotSpecial(format!(
            "|N_out| = {} but 3|N_in| - 1 = {}",
            a_side.len(),
            3 * b_side.len() - 1
        )));
    }
    if !a_side.contains(a_star) {
        return Err(Error::NotSpecial(format!("{a_star} is not an out-neighbor")));
    }
    if !b_side.contains(b_star) {
        return Err(Error::NotSpecial(format!("{b_star} is not an in-neighbor")));
    }
    if !t.beats(a_star, b_star) {
        return Err(Error::NotSpecial(format!("({a_star},{b_star}) is not an arc")));
    }
    for a in a_side.iter() {
        for b in b_side.iter() {
            if (a, b) != (a_star, b_star) && !t.beats(b, a) {
                return Err(Error::NotSpecial(format!(
                    "cross pair ({a},{b}) not oriented towards the out-side"
                )));
            }
        }
    }
    Ok(())
}

/// Recovers the marked pair of a special instance: the unique arc from the
/// out-side to the in-side.
pub fn find_special_marks(t: &Tournament, v: usize) -> Result<(usize, usize)> {
    let all = t.players();
    let a_side = t.out_neighbors(v, all);
    let b_side = t.in_neighbors(v, all);
    let mut cross = None;
    for a in a_side.iter() {
        for b in b_side.iter() {
            if t.beats(a, b) {
                if cross.is_some() {
                    return Err(Error::NotSpecial("more than one out-to-in arc".into()));
                }
                cross = Some((a, b));
            }
        }
    }
    let (a_star, b_star) =
        cross.ok_or_else(|| Error::NotSpecial("no out-to-in arc".into()))?;
    is_special_diag(t, v, a_star, b_star)?;
    Ok((a_star, b_star))
}

/// Embeds `(t, v)` into a special instance whose favorite-terminal feedback
/// numbers are 1. Layout on 4n players: favorite 0; A = 1..3n transitive in
/// index order with a* = 1 its source; B = 3n..4n a copy of `t` in index
/// order with b* the copy of `v`. The copy is a yes-instance iff the gadget
/// is.
pub fn make_special_sfasv(t: &Tournament, v: usize) -> Result<GadgetOutput> {
    let n = t.n();
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let total = 4 * n;
    let a_star = 1;
    let b_star = 3 * n + v;
    let embedding: Vec<usize> = (0..n).map(|i| 3 * n + i).collect();
    let mut rows = vec![vec![false; total]; total];
    for a in 1..3 * n {
        rows[0][a] = true; // favorite beats the A block
        for a2 in a + 1..3 * n {
            rows[a][a2] = true; // transitive A block
        }
    }
    for b in 3 * n..total {
        rows[b][0] = true; // B block beats the favorite
    }
    for i in 0..n {
        for j in 0..n {
            if t.beats(i, j) {
                rows[3 * n + i][3 * n + j] = true; // embedded copy
            }
        }
    }
    for a in 1..3 * n {
        for b in 3 * n..total {
            if (a, b) == (a_star, b_star) {
                rows[a][b] = true;
            } else {
                rows[b][a] = true;
            }
        }
    }
    let instance = Tournament::from_matrix(&rows, 0)?;
    debug_assert!(is_special(&instance, 0, a_star, b_star));
    Ok(GadgetOutput { instance, a_star, b_star, embedding })
}

/// Embeds `(t, v)` into a special instance whose in-neighborhood-terminal
/// feedback number is 1. Layout on 4n players: favorite 0; a transitive
/// filler block 1..2n; A = 2n..3n a copy of `t` with a* the copy of `v`;
/// B = 3n..4n transitive with source b* = 3n. The filler block beats the
/// copy wholesale, so copy players only ever beat copy players and b*.
pub fn make_special_sfasin(t: &Tournament, v: usize) -> Result<GadgetOutput> {
    let n = t.n();
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let total = 4 * n;
    let a_star = 2 * n + v;
    let b_star = 3 * n;
    let embedding: Vec<usize> = (0..n).map(|i| 2 * n + i).collect();
    let mut rows = vec![vec![false; total]; total];
    for x in 1..3 * n {
        rows[0][x] = true; // favorite beats filler and copy
    }
    for b in 3 * n..total {
        rows[b][0] = true; // B block beats the favorite
        for b2 in b + 1..total {
            rows[b][b2] = true; // transitive B block, source 3n
        }
    }
    for f in 1..2 * n {
        for f2 in f + 1..2 * n {
            rows[f][f2] = true; // transitive filler block
        }
        for a in 2 * n..3 * n {
            rows[f][a] = true; // filler dominates the copy
        }
    }
    for i in 0..n {
        for j in 0..n {
            if t.beats(i, j) {
                rows[2 * n + i][2 * n + j] = true; // embedded copy
            }
        }
    }
    for x in 1..3 * n {
        for b in 3 * n..total {
            if (x, b) == (a_star, b_star) {
                rows[x][b] = true;
            } else {
                rows[b][x] = true;
            }
        }
    }
    let instance = Tournament::from_matrix(&rows, 0)?;
    debug_assert!(is_special(&instance, 0, a_star, b_star));
    Ok(GadgetOutput { instance, a_star, b_star, embedding })
}

/// The three structural properties every winning sequence of a special
/// yes-instance exhibits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecialSequenceProperties {
    /// The semifinal retains exactly the marked in-neighbor b*.
    pub lone_in_survivor: bool,
    /// The semifinal retains exactly two out-neighbors, a* among them.
    pub bridge_pair_survives: bool,
    /// Every earlier round pairs two out-side players (or the favorite) or
    /// two in-side players; the blocks never mix.
    pub rounds_stay_in_blocks: bool,
}

impl SpecialSequenceProperties {
    pub fn all(self) -> bool {
        self.lone_in_survivor && self.bridge_pair_survives && self.rounds_stay_in_blocks
    }
}

/// Checks the three properties on a full valid sequence of a special
/// instance. Sequences crowning the favorite satisfy all three; the checker
/// also accepts non-winning sequences so violations stay observable.
pub fn verify_special_properties(
    t: &Tournament,
    v: usize,
    seq: &MatchSetSequence,
) -> Result<SpecialSequenceProperties> {
    let (a_star, b_star) = find_special_marks(t, v)?;
    if !validate_sequence(t, t.players(), seq) {
        return Err(Error::InvalidSequence("sequence is not valid for the instance".into()));
    }
    let all = t.players();
    let a_side = t.out_neighbors(v, all);
    let b_side = t.in_neighbors(v, all);
    let rounds = seq.num_rounds();
    let semifinal = seq.round(rounds - 2).participants();

    let lone_in_survivor = semifinal.intersect(b_side) == PlayerSet::single(b_star);
    let out_survivors = semifinal.intersect(a_side);
    let bridge_pair_survives = out_survivors.len() == 2 && out_survivors.contains(a_star);

    let early_rounds = (b_side.len() as u64).trailing_zeros() as usize;
    let a_block = a_side.union(PlayerSet::single(v));
    let mut rounds_stay_in_blocks = true;
    'scan: for r in 0..early_rounds {
        for &(w, l) in seq.round(r).matches() {
            let pair: PlayerSet = [w, l].into_iter().collect();
            if !pair.is_subset_of(a_block) && !pair.is_subset_of(b_side) {
                rounds_stay_in_blocks = false;
                break 'scan;
            }
        }
    }
    Ok(SpecialSequenceProperties { lone_in_survivor, bridge_pair_survives, rounds_stay_in_blocks })
}

/// Restricts the first log|part| rounds of `seq` to matches inside `part`.
/// Valid when the sequence never pairs `part` against the outside in those
/// rounds (the block property); errors with `PropertyViolated` otherwise.
pub fn extract_inner_sequence(seq: &MatchSetSequence, part: PlayerSet) -> Result<MatchSetSequence> {
    if !part.len().is_power_of_two() {
        return Err(Error::PropertyViolated(format!(
            "{} players is not a power of two",
            part.len()
        )));
    }
    let rounds = part.len().trailing_zeros() as usize;
    if seq.num_rounds() < rounds {
        return Err(Error::PropertyViolated(format!(
            "sequence has {} rounds, restriction needs {rounds}",
            seq.num_rounds()
        )));
    }
    let mut restricted = Vec::with_capacity(rounds);
    for r in 0..rounds {
        let matches: Vec<(usize, usize)> = seq
            .round(r)
            .matches()
            .iter()
            .copied()
            .filter(|&(w, l)| part.contains(w) && part.contains(l))
            .collect();
        restricted.push(MatchSet::new(matches)?);
    }
    let inner = MatchSetSequence::new(restricted);
    inner
        .validate_structure(part)
        .map_err(|e| Error::PropertyViolated(e.to_string()))?;
    Ok(inner)
}
