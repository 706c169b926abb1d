//! Tournament digraphs: complete orientations of K_n with a distinguished
//! favorite, plus the reachability and acyclicity primitives everything else
//! builds on.

use crate::error::{Error, Result};
use crate::player_set::{PlayerSet, MAX_PLAYERS};
use std::fmt;

/// A complete orientation of K_n. `beats[u]` is the bit mask of players that
/// `u` defeats; exactly one of `beats(u, v)`, `beats(v, u)` holds for every
/// pair `u != v`. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    favorite: usize,
    beats: Vec<u64>,
    loses: Vec<u64>,
}

impl Tournament {
    /// Builds a tournament from an n×n boolean orientation matrix.
    pub fn from_matrix(rows: &[Vec<bool>], favorite: usize) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotATournament("empty matrix".into()));
        }
        if n > MAX_PLAYERS {
            return Err(Error::CapacityExceeded { n, cap: MAX_PLAYERS });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotATournament(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        if favorite >= n {
            return Err(Error::BadFavorite { favorite, n });
        }
        let mut beats = vec![0u64; n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b {
                    beats[i] |= 1u64 << j;
                }
            }
        }
        for i in 0..n {
            if beats[i] >> i & 1 == 1 {
                return Err(Error::NotATournament(format!("player {i} beats itself")));
            }
            for j in i + 1..n {
                let fwd = beats[i] >> j & 1;
                let bwd = beats[j] >> i & 1;
                if fwd + bwd != 1 {
                    return Err(Error::NotATournament(format!(
                        "pair ({i},{j}) has {} arcs, expected exactly one",
                        fwd + bwd
                    )));
                }
            }
        }
        Ok(Self::from_rows(n, favorite, beats))
    }

    /// Builds a tournament by listing, for each unordered pair, the winning
    /// arc. Every pair must appear exactly once.
    pub fn from_arcs(
        n: usize,
        favorite: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut rows = vec![vec![false; n]; n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::NotATournament(format!(
                    "arc ({u},{v}) out of range for {n} players"
                )));
            }
            if rows[u][v] {
                return Err(Error::NotATournament(format!("duplicate arc ({u},{v})")));
            }
            rows[u][v] = true;
        }
        Self::from_matrix(&rows, favorite)
    }

    fn from_rows(n: usize, favorite: usize, beats: Vec<u64>) -> Self {
        let mut loses = vec![0u64; n];
        for u in 0..n {
            let mut row = beats[u];
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                loses[v] |= 1u64 << u;
            }
        }
        Tournament { n, favorite, beats, loses }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn favorite(&self) -> usize {
        self.favorite
    }

    /// Same orientation with a different favorite.
    pub fn with_favorite(&self, favorite: usize) -> Result<Self> {
        if favorite >= self.n {
            return Err(Error::BadFavorite { favorite, n: self.n });
        }
        let mut t = self.clone();
        t.favorite = favorite;
        Ok(t)
    }

    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.beats[u] >> v & 1 == 1
    }

    /// Bit mask of everyone `u` defeats.
    pub fn beats_mask(&self, u: usize) -> u64 {
        self.beats[u]
    }

    pub fn players(&self) -> PlayerSet {
        PlayerSet::full(self.n)
    }

    pub fn out_neighbors(&self, v: usize, within: PlayerSet) -> PlayerSet {
        PlayerSet::from_mask(self.beats[v] & within.mask())
    }

    pub fn in_neighbors(&self, v: usize, within: PlayerSet) -> PlayerSet {
        PlayerSet::from_mask(self.loses[v] & within.mask())
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.beats[v].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.loses[v].count_ones() as usize
    }

    /// A copy with the given arcs reversed. Each `(u, v)` must currently be
    /// an arc; the base tournament is left untouched.
    pub fn reversed(&self, arcs: &[(usize, usize)]) -> Tournament {
        let mut beats = self.beats.clone();
        for &(u, v) in arcs {
            assert!(
                beats[u] >> v & 1 == 1,
                "({u},{v}) is not an arc of the tournament"
            );
            beats[u] &= !(1u64 << v);
            beats[v] |= 1u64 << u;
        }
        Self::from_rows(self.n, self.favorite, beats)
    }

    /// True iff the subtournament induced by `within` has no directed cycle.
    ///
    /// Repeated source elimination: an acyclic tournament always has a unique
    /// vertex of in-degree zero inside the remaining set.
    pub fn is_acyclic(&self, within: PlayerSet) -> bool {
        debug_assert!(within.is_subset_of(self.players()));
        let mut remaining = within.mask();
        while remaining != 0 {
            match self.source_in(remaining) {
                Some(v) => remaining &= !(1u64 << v),
                None => return false,
            }
        }
        true
    }

    fn source_in(&self, remaining: u64) -> Option<usize> {
        let mut scan = remaining;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if self.loses[v] & remaining == 0 {
                return Some(v);
            }
        }
        None
    }

    /// The unique linear order b_1, ..., b_k of `within` with every arc
    /// pointing forward. Fails with `NotAcyclic` on a cyclic induced set.
    pub fn topological_order(&self, within: PlayerSet) -> Result<Vec<usize>> {
        debug_assert!(within.is_subset_of(self.players()));
        let mut order = Vec::with_capacity(within.len());
        let mut remaining = within.mask();
        while remaining != 0 {
            let v = self.source_in(remaining).ok_or(Error::NotAcyclic)?;
            order.push(v);
            remaining &= !(1u64 << v);
        }
        Ok(order)
    }

    /// True iff some directed cycle inside `within` visits a terminal.
    ///
    /// Per terminal `t`: a cycle through `t` exists iff some in-neighbor of
    /// `t` is reachable from `t` inside `within`.
    pub fn has_cycle_through(&self, terminals: PlayerSet, within: PlayerSet) -> bool {
        debug_assert!(within.is_subset_of(self.players()));
        let inside = within.mask();
        for t in terminals.intersect(within).iter() {
            let reach = self.reach_mask(1u64 << t, inside, usize::MAX);
            if reach & self.loses[t] & inside != 0 {
                return true;
            }
        }
        false
    }

    /// True iff `v` is reachable from `u` in at most `k` arcs.
    pub fn distance_at_most(&self, u: usize, v: usize, k: usize) -> bool {
        let reach = self.reach_mask(1u64 << u, PlayerSet::full(self.n).mask(), k);
        reach >> v & 1 == 1
    }

    /// Everyone reachable from `v` inside `within`, `v` included.
    pub fn reachable_from(&self, v: usize, within: PlayerSet) -> PlayerSet {
        PlayerSet::from_mask(self.reach_mask(1u64 << v, within.mask(), usize::MAX))
    }

    /// Everyone reachable from `seed` within `inside` using at most `steps`
    /// arcs (the seed itself included).
    fn reach_mask(&self, seed: u64, inside: u64, steps: usize) -> u64 {
        let mut reach = seed & inside;
        let mut frontier = reach;
        let mut left = steps;
        while frontier != 0 && left > 0 {
            let mut next = 0u64;
            let mut scan = frontier;
            while scan != 0 {
                let w = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                next |= self.beats[w];
            }
            next &= inside & !reach;
            reach |= next;
            frontier = next;
            left -= 1;
        }
        reach
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tournament(n={}, favorite={})", self.n, self.favorite)?;
        for u in 0..self.n {
            for v in 0..self.n {
                write!(f, "{}", if self.beats(u, v) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A transitive tournament on `n` players where lower index beats higher,
/// handy in tests and gadget blocks.
pub fn transitive(n: usize, favorite: usize) -> Result<Tournament> {
    let mut rows = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            rows[i][j] = true;
        }
    }
    Tournament::from_matrix(&rows, favorite)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> Tournament {
        // 0 -> 1 -> 2 -> 0
        Tournament::from_arcs(3, 0, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn from_matrix_smallest_valid() {
        let t = Tournament::from_matrix(&[vec![false, true], vec![false, false]], 0).unwrap();
        assert_eq!(t.n(), 2);
        assert!(t.beats(0, 1));
        assert!(!t.beats(1, 0));
    }

    #[test]
    fn from_matrix_rejects_double_arc() {
        let err = Tournament::from_matrix(&[vec![false, true], vec![true, false]], 0).unwrap_err();
        assert!(matches!(err, Error::NotATournament(_)));
    }

    #[test]
    fn from_matrix_rejects_self_loop_and_missing_arc() {
        let err = Tournament::from_matrix(&[vec![true, true], vec![false, false]], 0).unwrap_err();
        assert!(matches!(err, Error::NotATournament(_)));
        let err = Tournament::from_matrix(&[vec![false, false], vec![false, false]], 0).unwrap_err();
        assert!(matches!(err, Error::NotATournament(_)));
    }

    #[test]
    fn from_matrix_rejects_bad_favorite() {
        let err = Tournament::from_matrix(&[vec![false, true], vec![false, false]], 2).unwrap_err();
        assert_eq!(err, Error::BadFavorite { favorite: 2, n: 2 });
    }

    #[test]
    fn neighborhoods_on_transitive_triangle() {
        // 0 -> 1 -> 2 plus 0 -> 2
        let t = Tournament::from_arcs(3, 0, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let all = t.players();
        assert_eq!(t.out_neighbors(0, all), [1, 2].into_iter().collect());
        assert_eq!(t.out_neighbors(2, all), PlayerSet::EMPTY);
        assert_eq!(t.in_neighbors(2, all), [0, 1].into_iter().collect());
    }

    #[test]
    fn neighborhood_restriction() {
        let t = three_cycle();
        let within: PlayerSet = [1, 2].into_iter().collect();
        assert_eq!(t.out_neighbors(1, within), PlayerSet::single(2));
        assert_eq!(t.in_neighbors(1, within), PlayerSet::EMPTY);
    }

    #[test]
    fn acyclicity() {
        assert!(transitive(4, 0).unwrap().is_acyclic(PlayerSet::full(4)));
        assert!(!three_cycle().is_acyclic(PlayerSet::full(3)));
        // Restriction of a 3-cycle to two players is acyclic.
        assert!(three_cycle().is_acyclic([0, 1].into_iter().collect()));
    }

    #[test]
    fn topological_order_recovers_hidden_order() {
        // 2 -> 0 -> 1 transitive
        let t = Tournament::from_arcs(3, 0, [(2, 0), (2, 1), (0, 1)]).unwrap();
        assert_eq!(t.topological_order(t.players()).unwrap(), vec![2, 0, 1]);
        assert_eq!(
            t.topological_order(PlayerSet::single(1)).unwrap(),
            vec![1]
        );
        assert_eq!(
            three_cycle().topological_order(PlayerSet::full(3)),
            Err(Error::NotAcyclic)
        );
    }

    #[test]
    fn topological_order_respects_all_pairs() {
        let t = transitive(7, 0).unwrap();
        let order = t.topological_order(t.players()).unwrap();
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                assert!(t.beats(order[i], order[j]));
            }
        }
    }

    #[test]
    fn cycle_through_terminals() {
        let t = three_cycle();
        assert!(t.has_cycle_through(PlayerSet::single(0), t.players()));
        let tr = transitive(5, 0).unwrap();
        assert!(!tr.has_cycle_through(tr.players(), tr.players()));
    }

    #[test]
    fn reversal_snapshot_leaves_base_untouched() {
        let t = three_cycle();
        let r = t.reversed(&[(0, 1)]);
        assert!(r.beats(1, 0));
        assert!(t.beats(0, 1));
        assert!(!r.has_cycle_through(PlayerSet::single(0), r.players()));
    }

    #[test]
    fn bounded_distance() {
        let t = transitive(4, 0).unwrap();
        assert!(t.distance_at_most(2, 2, 0));
        assert!(t.distance_at_most(0, 3, 1));
        assert!(!t.distance_at_most(3, 0, 4));
        let c = three_cycle();
        assert!(!c.distance_at_most(0, 2, 1));
        assert!(c.distance_at_most(0, 2, 2));
    }

    /// Tournament-specific equivalence: acyclic iff no directed triangle.
    #[test]
    fn acyclic_iff_triangle_free() {
        for code in 0u32..1 << 10 {
            let n = 5;
            let mut rows = vec![vec![false; n]; n];
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if code >> k & 1 == 1 {
                        rows[i][j] = true;
                    } else {
                        rows[j][i] = true;
                    }
                    k += 1;
                }
            }
            let t = Tournament::from_matrix(&rows, 0).unwrap();
            let mut triangle = false;
            'outer: for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if t.beats(a, b) && t.beats(b, c) && t.beats(c, a) {
                            triangle = true;
                            break 'outer;
                        }
                    }
                }
            }
            assert_eq!(t.is_acyclic(t.players()), !triangle, "code {code}");
        }
    }
}
