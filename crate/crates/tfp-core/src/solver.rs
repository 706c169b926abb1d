//! Exact decision and witness extraction via memoized dynamic programming
//! over player subsets. This is the ground truth the rest of the crate is
//! checked against.
//!
//! Recurrence: `win(S, v)` holds iff S splits into halves S1 (containing v)
//! and S2 such that `win(S1, v)` and some u in S2 with `v beats u` has
//! `win(S2, u)`. Base case: singleton {v}.

use crate::bracket::{enumerate_brackets, play, Bracket};
use crate::error::{Error, Result};
use crate::player_set::PlayerSet;
use crate::tournament::Tournament;
use std::collections::HashMap;

/// Hard cap on the solver's instance size; the (subset, player) state space
/// makes larger fields thrash rather than finish.
pub const SOLVER_CAPACITY: usize = 20;

/// Memoized win table bound to one tournament. Entries exist only for
/// power-of-two subset sizes; every winnable entry carries the split chosen
/// first, so witnesses are deterministic.
pub struct Solver<'a> {
    t: &'a Tournament,
    memo: HashMap<u64, bool>,
    witness: HashMap<u64, (u64, usize)>,
}

impl<'a> Solver<'a> {
    pub fn new(t: &'a Tournament) -> Result<Self> {
        if t.n() > SOLVER_CAPACITY {
            return Err(Error::CapacityExceeded { n: t.n(), cap: SOLVER_CAPACITY });
        }
        Ok(Solver { t, memo: HashMap::new(), witness: HashMap::new() })
    }

    /// Number of (subset, player) states evaluated so far.
    pub fn states_touched(&self) -> usize {
        self.memo.len()
    }

    /// Can some bracket on `within` crown `v`?
    pub fn can_win(&mut self, v: usize, within: PlayerSet) -> Result<bool> {
        if !within.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(within.len()));
        }
        assert!(within.contains(v), "favorite {v} is not in the field");
        Ok(self.win(within.mask(), v))
    }

    /// A bracket certifying `can_win`; fails with `NotWinnable` otherwise.
    pub fn witness_bracket(&mut self, v: usize, within: PlayerSet) -> Result<Bracket> {
        if !self.can_win(v, within)? {
            return Err(Error::NotWinnable { player: v });
        }
        let mut leaves = Vec::with_capacity(within.len());
        self.collect(within.mask(), v, &mut leaves);
        Bracket::new(leaves)
    }

    /// Every player that can be fixed to win the whole field.
    pub fn all_fixable_winners(&mut self) -> Result<PlayerSet> {
        let all = self.t.players();
        if !all.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(all.len()));
        }
        let mut out = PlayerSet::EMPTY;
        for v in all.iter() {
            if self.win(all.mask(), v) {
                out.insert(v);
            }
        }
        Ok(out)
    }

    fn win(&mut self, set: u64, v: usize) -> bool {
        debug_assert!(set >> v & 1 == 1);
        if set & (set - 1) == 0 {
            return true; // singleton {v}
        }
        let key = set << 5 | v as u64;
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        // v must beat someone in the field to survive any final.
        let prey = self.t.beats_mask(v) & set;
        let mut verdict = false;
        if prey != 0 {
            let half = (set.count_ones() / 2) as usize;
            'split: for t_mask in half_splits(set, half) {
                let s1 = if t_mask >> v & 1 == 1 { t_mask } else { set ^ t_mask };
                let s2 = set ^ s1;
                if !self.win(s1, v) {
                    continue;
                }
                let mut cands = s2 & prey;
                while cands != 0 {
                    let u = cands.trailing_zeros() as usize;
                    cands &= cands - 1;
                    if self.win(s2, u) {
                        self.witness.insert(key, (s1, u));
                        verdict = true;
                        break 'split;
                    }
                }
            }
        }
        self.memo.insert(key, verdict);
        verdict
    }

    fn collect(&self, set: u64, v: usize, out: &mut Vec<usize>) {
        if set & (set - 1) == 0 {
            out.push(v);
            return;
        }
        let &(s1, u) = self
            .witness
            .get(&(set << 5 | v as u64))
            .expect("winnable states always record a split");
        self.collect(s1, v, out);
        self.collect(set ^ s1, u, out);
    }
}

/// Enumerates the half-size submasks of `set` that contain its lowest bit,
/// visiting each unordered half-split exactly once in a fixed order
/// (Gosper's hack over the remaining bit positions).
fn half_splits(set: u64, half: usize) -> impl Iterator<Item = u64> {
    let lo = set & set.wrapping_neg();
    let mut positions = [0u8; 64];
    let mut m = 0usize;
    let mut scan = set ^ lo;
    while scan != 0 {
        positions[m] = scan.trailing_zeros() as u8;
        scan &= scan - 1;
        m += 1;
    }
    // Choose half-1 companions for the low bit among the other m positions.
    let k = half - 1;
    let limit = 1u64 << m;
    let mut cur = Some(if k == 0 { 0 } else { (1u64 << k) - 1 });
    std::iter::from_fn(move || {
        let bits = cur?;
        if bits >= limit {
            cur = None;
            return None;
        }
        let mut mask = lo;
        let mut b = bits;
        while b != 0 {
            let i = b.trailing_zeros() as usize;
            b &= b - 1;
            mask |= 1u64 << positions[i];
        }
        cur = if bits == 0 {
            None // k == 0 has the single subset {lo}
        } else {
            let c = bits & bits.wrapping_neg();
            let r = bits + c;
            Some((((r ^ bits) >> 2) / c) | r)
        };
        Some(mask)
    })
}

/// One-shot convenience wrapper over [`Solver::can_win`].
pub fn can_win(t: &Tournament, v: usize, within: PlayerSet) -> Result<bool> {
    Solver::new(t)?.can_win(v, within)
}

/// Decides by playing every bracket on `within`; the independent oracle for
/// the DP. Returns the first winning bracket found, if any.
pub fn solve_by_enumeration(
    t: &Tournament,
    v: usize,
    within: PlayerSet,
) -> Result<(bool, Option<Bracket>)> {
    if within.len() > 10 {
        return Err(Error::CapacityExceeded { n: within.len(), cap: 10 });
    }
    for b in enumerate_brackets(within)? {
        let (w, _) = play(t, &b);
        if w == v {
            return Ok((true, Some(b)));
        }
    }
    Ok((false, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::transitive;

    #[test]
    fn singleton_always_wins() {
        let t = transitive(1, 0).unwrap();
        assert!(can_win(&t, 0, PlayerSet::full(1)).unwrap());
    }

    #[test]
    fn transitive_eight_only_source_wins() {
        let t = transitive(8, 0).unwrap();
        let mut solver = Solver::new(&t).unwrap();
        assert!(solver.can_win(0, t.players()).unwrap());
        for v in 1..8 {
            assert!(!solver.can_win(v, t.players()).unwrap());
            // Cross-check the losers against the exhaustive oracle.
            let (yes, _) = solve_by_enumeration(&t, v, t.players()).unwrap();
            assert!(!yes);
        }
        assert_eq!(solver.all_fixable_winners().unwrap(), PlayerSet::single(0));
    }

    #[test]
    fn all_fixable_on_transitive_four_and_pair() {
        let t = transitive(4, 0).unwrap();
        let mut s = Solver::new(&t).unwrap();
        assert_eq!(s.all_fixable_winners().unwrap(), PlayerSet::single(0));
        let p = transitive(2, 0).unwrap();
        let mut s = Solver::new(&p).unwrap();
        assert_eq!(s.all_fixable_winners().unwrap(), PlayerSet::single(0));
    }

    #[test]
    fn witness_round_trip_two_players() {
        let t = transitive(2, 0).unwrap();
        let mut s = Solver::new(&t).unwrap();
        let b = s.witness_bracket(0, t.players()).unwrap();
        assert_eq!(b.leaves(), &[0, 1]);
        assert_eq!(play(&t, &b).0, 0);
        assert_eq!(
            s.witness_bracket(1, t.players()).unwrap_err(),
            Error::NotWinnable { player: 1 }
        );
    }

    /// Fresh solvers reproduce verdicts and witnesses exactly; the split
    /// enumeration order is fixed.
    #[test]
    fn witnesses_are_deterministic() {
        use crate::generator::random_tournament;
        for seed in 0..10 {
            let t = random_tournament(8, seed).unwrap();
            let v = (seed % 8) as usize;
            let mut a = Solver::new(&t).unwrap();
            let mut b = Solver::new(&t).unwrap();
            assert_eq!(
                a.can_win(v, t.players()).unwrap(),
                b.can_win(v, t.players()).unwrap()
            );
            if a.can_win(v, t.players()).unwrap() {
                assert_eq!(
                    a.witness_bracket(v, t.players()).unwrap(),
                    b.witness_bracket(v, t.players()).unwrap()
                );
            }
        }
    }

    #[test]
    fn rejects_oversized_instances_and_odd_fields() {
        let t = transitive(8, 0).unwrap();
        let mut s = Solver::new(&t).unwrap();
        assert!(matches!(
            s.can_win(0, PlayerSet::full(3)).unwrap_err(),
            Error::NotPowerOfTwo(3)
        ));
    }

    #[test]
    fn half_splits_cover_each_partition_once() {
        let set = 0b11011u64; // {0,1,3,4}
        let splits: Vec<u64> = half_splits(set, 2).collect();
        assert_eq!(splits.len(), 3);
        for s in &splits {
            assert_eq!(s.count_ones(), 2);
            assert_eq!(s & 1, 1); // all contain the low bit
            assert_eq!(s & !set, 0);
        }
        let mut dedup = splits.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 3);
    }

    #[test]
    fn half_splits_pair() {
        let splits: Vec<u64> = half_splits(0b101, 1).collect();
        assert_eq!(splits, vec![0b001]);
    }
}
