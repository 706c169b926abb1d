//! Deterministic instance generators: seeded random tournaments,
//! neighbor-acyclic instances with enforceable sufficient conditions, and
//! the tight boundary family that the king-degree rule cannot cover.

use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// xorshift64* with the multiplier from Vigna's "An experimental exploration
/// of Marsaglia's xorshift generators". Embedded so instances reproduce
/// bit-identically on every platform. Seed 0 is remapped to a fixed nonzero
/// constant (the generator would otherwise be stuck at zero).
#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub const SEED_ZERO_SUBSTITUTE: u64 = 0x9E37_79B9_7F4A_7C15;

    pub fn new(seed: u64) -> Self {
        let state = if seed == 0 { Self::SEED_ZERO_SUBSTITUTE } else { seed };
        XorShift64Star { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Fair coin from the top output bit.
    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Uniform-enough draw below `m` (plain modulo; the bias at these ranges
    /// is irrelevant and determinism is what matters).
    pub fn below(&mut self, m: u64) -> u64 {
        self.next_u64() % m
    }
}

/// Which sufficient-condition bundle `gen_neighbor_acyclic` repairs toward.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Enforce {
    /// Structure only: transitive neighborhoods, free cross arcs.
    None,
    /// Conditions of the recursive seeding construction: 3|A| >= n and
    /// out(b) <= |B| for every in-neighbor b, plus no source.
    RecursiveSeed,
    /// Conditions of the king-degree rule: favorite is a king and
    /// out(b) < 2 out(v*) for every in-neighbor b.
    KingDegree,
}

/// Uniform random tournament: each unordered pair oriented by one coin of a
/// seeded [`XorShift64Star`]. The favorite defaults to player 0.
pub fn random_tournament(n: usize, seed: u64) -> Result<Tournament> {
    if n < 1 {
        return Err(Error::BadSize(n));
    }
    let mut rng = XorShift64Star::new(seed);
    let mut rows = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.coin() {
                rows[i][j] = true;
            } else {
                rows[j][i] = true;
            }
        }
    }
    Tournament::from_matrix(&rows, 0)
}

/// Layout of a generated neighbor-acyclic instance: the favorite is player
/// 0, A = {1..=a_size} beaten by the favorite, B = the rest beating the
/// favorite; both blocks are transitive with lower index beating higher.
/// Cross arcs are randomized, then rows of violating B-players are redrawn
/// (up to `RETRY_BUDGET` passes) until the requested bundle holds.
pub fn gen_neighbor_acyclic(
    n: usize,
    a_size: usize,
    seed: u64,
    enforce: Enforce,
) -> Result<Tournament> {
    const RETRY_BUDGET: usize = 10_000;
    if n < 3 {
        return Err(Error::BadSize(n));
    }
    if a_size < 1 || a_size > n - 2 {
        return Err(Error::BadSize(a_size));
    }
    if enforce == Enforce::RecursiveSeed {
        if !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        if 3 * a_size < n {
            return Err(Error::Unsatisfiable {
                most_frequent: format!("3*{a_size} < {n}: out-neighborhood too small"),
                retries: 0,
            });
        }
    }
    let b_size = n - 1 - a_size;
    if enforce == Enforce::KingDegree && b_size + 1 > 2 * a_size {
        // The in-block source beats at least |B|-1 others plus the favorite.
        return Err(Error::Unsatisfiable {
            most_frequent: format!(
                "|B| = {b_size} forces some out(b) >= {} >= 2|A|",
                b_size + 1
            ),
            retries: 0,
        });
    }

    let mut rng = XorShift64Star::new(seed);
    let a_members: Vec<usize> = (1..=a_size).collect();
    let b_members: Vec<usize> = (a_size + 1..n).collect();
    // cross[i] = bit mask over A-positions that B-player i beats.
    let mut cross: Vec<u64> = b_members
        .iter()
        .map(|_| rng.next_u64() & ((1u64 << a_size) - 1))
        .collect();

    let mut failures: Vec<(usize, &'static str)> = Vec::new();
    for _ in 0..RETRY_BUDGET {
        let violating = violating_b_rows(&cross, a_size, b_size, enforce);
        if violating.is_empty() {
            let t = assemble(n, &a_members, &b_members, &cross)?;
            debug_assert!(t.is_acyclic(t.in_neighbors(0, t.players())));
            debug_assert!(t.is_acyclic(t.out_neighbors(0, t.players())));
            return Ok(t);
        }
        for (i, why) in violating {
            failures.push((i, why));
            cross[i] = rng.next_u64() & ((1u64 << a_size) - 1);
        }
    }
    let mut counts: std::collections::BTreeMap<&'static str, usize> = Default::default();
    for (_, why) in &failures {
        *counts.entry(why).or_default() += 1;
    }
    let most_frequent = counts
        .into_iter()
        .max_by_key(|&(_, c)| c)
        .map(|(why, c)| format!("{why} ({c} times)"))
        .unwrap_or_else(|| "unknown".into());
    Err(Error::Unsatisfiable { most_frequent, retries: RETRY_BUDGET })
}

/// B-rows violating the enforced bundle. Row i is the i-th B-player in the
/// block's topological order, so its out-degree inside B is b_size - 1 - i.
fn violating_b_rows(
    cross: &[u64],
    a_size: usize,
    b_size: usize,
    enforce: Enforce,
) -> Vec<(usize, &'static str)> {
    let mut out = Vec::new();
    for (i, row) in cross.iter().enumerate() {
        let out_a = row.count_ones() as usize;
        let out_total = out_a + (b_size - 1 - i) + 1;
        match enforce {
            Enforce::None => {}
            Enforce::RecursiveSeed => {
                if out_total > b_size {
                    out.push((i, "out(b) exceeds |B|"));
                } else if i == 0 && out_a == a_size {
                    // The B-source must lose to someone or it is a source of D.
                    out.push((i, "in-block source has no in-neighbor"));
                }
            }
            Enforce::KingDegree => {
                if out_total >= 2 * a_size {
                    out.push((i, "out(b) reaches 2 out(v*)"));
                } else if out_a == a_size {
                    // Kingness: the favorite needs a 2-step path to every b.
                    out.push((i, "b unbeaten by the out-neighborhood"));
                }
            }
        }
    }
    out
}

fn assemble(
    n: usize,
    a_members: &[usize],
    b_members: &[usize],
    cross: &[u64],
) -> Result<Tournament> {
    let mut rows = vec![vec![false; n]; n];
    for &a in a_members {
        rows[0][a] = true;
    }
    for &b in b_members {
        rows[b][0] = true;
    }
    for block in [a_members, b_members] {
        for (i, &u) in block.iter().enumerate() {
            for &v in &block[i + 1..] {
                rows[u][v] = true;
            }
        }
    }
    for (i, &b) in b_members.iter().enumerate() {
        for (j, &a) in a_members.iter().enumerate() {
            if cross[i] >> j & 1 == 1 {
                rows[b][a] = true;
            } else {
                rows[a][b] = true;
            }
        }
    }
    Tournament::from_matrix(&rows, 0)
}

/// The boundary family: |N_in(v*)| = n/2 and |N_out(v*)| = n/2 - 1, both
/// transitive; a single distinguished out-neighbor beats all of N_in while
/// every in-neighbor beats the rest of N_out. The in-block source b* then
/// has out(b*) = 2 out(v*) exactly, and the favorite cannot be fixed to win.
pub fn tight_no_instance(n: usize) -> Result<Tournament> {
    if !n.is_power_of_two() || n < 4 {
        return Err(Error::BadSize(n));
    }
    let a_size = n / 2 - 1;
    let strong = 1; // the distinguished out-neighbor
    let mut rows = vec![vec![false; n]; n];
    for a in 1..=a_size {
        rows[0][a] = true;
    }
    for b in a_size + 1..n {
        rows[b][0] = true;
    }
    let a_members: Vec<usize> = (1..=a_size).collect();
    let b_members: Vec<usize> = (a_size + 1..n).collect();
    for block in [&a_members, &b_members] {
        for (i, &u) in block.iter().enumerate() {
            for &v in &block[i + 1..] {
                rows[u][v] = true;
            }
        }
    }
    for b in a_size + 1..n {
        rows[strong][b] = true;
        for a in 2..=a_size {
            rows[b][a] = true;
        }
    }
    Tournament::from_matrix(&rows, 0)
}

/// Sanity view of the tight instance used by tests: the in-block source and
/// its out-degree versus the favorite's.
pub fn tight_boundary_degrees(t: &Tournament) -> (usize, usize) {
    let all = t.players();
    let b_star = t
        .topological_order(t.in_neighbors(t.favorite(), all))
        .expect("in-block is transitive")[0];
    (t.out_degree(b_star), t.out_degree(t.favorite()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_by_enumeration;
    use crate::structure;

    #[test]
    fn same_seed_same_instance() {
        let a = random_tournament(4, 7).unwrap();
        let b = random_tournament(4, 7).unwrap();
        assert_eq!(a, b);
        let c = random_tournament(4, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn single_player_is_fine() {
        let t = random_tournament(1, 3).unwrap();
        assert_eq!(t.n(), 1);
    }

    #[test]
    fn orientation_frequency_is_balanced() {
        let mut heads = 0usize;
        let draws = 10_000;
        for seed in 0..draws {
            let t = random_tournament(8, seed as u64).unwrap();
            if t.beats(0, 1) {
                heads += 1;
            }
        }
        let freq = heads as f64 / draws as f64;
        assert!((freq - 0.5).abs() < 0.05, "orientation frequency {freq}");
    }

    #[test]
    fn neighbor_acyclic_structure_holds_without_enforcement() {
        for seed in 0..20 {
            let t = gen_neighbor_acyclic(8, 3, seed, Enforce::None).unwrap();
            let all = t.players();
            assert!(t.is_acyclic(t.in_neighbors(0, all)));
            assert!(t.is_acyclic(t.out_neighbors(0, all)));
            assert_eq!(t.out_degree(0), 3);
        }
    }

    #[test]
    fn recursive_seed_enforcement_satisfies_checker() {
        for seed in 0..20 {
            let t = gen_neighbor_acyclic(8, 3, seed, Enforce::RecursiveSeed).unwrap();
            assert!(structure::check_recursive_seed_rule(&t, 0));
            // No source anywhere.
            assert!((0..8).all(|v| t.in_degree(v) > 0));
        }
    }

    #[test]
    fn king_degree_enforcement_satisfies_checker() {
        for seed in 0..20 {
            let t = gen_neighbor_acyclic(8, 3, seed, Enforce::KingDegree).unwrap();
            assert!(structure::is_king(&t, 0));
            let all = t.players();
            for b in t.in_neighbors(0, all).iter() {
                assert!(t.out_degree(b) < 2 * t.out_degree(0));
            }
        }
    }

    #[test]
    fn infeasible_parameter_combinations_are_rejected() {
        assert!(matches!(
            gen_neighbor_acyclic(8, 2, 0, Enforce::RecursiveSeed).unwrap_err(),
            Error::Unsatisfiable { .. }
        ));
        assert!(matches!(
            gen_neighbor_acyclic(8, 2, 0, Enforce::KingDegree).unwrap_err(),
            Error::Unsatisfiable { .. }
        ));
        assert!(matches!(
            gen_neighbor_acyclic(6, 2, 0, Enforce::RecursiveSeed).unwrap_err(),
            Error::NotPowerOfTwo(6)
        ));
    }

    #[test]
    fn tight_instance_shape_and_verdict() {
        for n in [4usize, 8] {
            let t = tight_no_instance(n).unwrap();
            let all = t.players();
            assert_eq!(t.in_neighbors(0, all).len(), n / 2);
            assert_eq!(t.out_neighbors(0, all).len(), n / 2 - 1);
            assert!(t.is_acyclic(t.in_neighbors(0, all)));
            assert!(t.is_acyclic(t.out_neighbors(0, all)));
            let (out_b, out_v) = tight_boundary_degrees(&t);
            assert_eq!(out_b, 2 * out_v);
            assert!(structure::is_king(&t, 0));
            let (yes, _) = solve_by_enumeration(&t, 0, all).unwrap();
            assert!(!yes, "tight instance must be a no-instance at n={n}");
        }
        assert!(matches!(tight_no_instance(6).unwrap_err(), Error::BadSize(6)));
        assert!(matches!(tight_no_instance(2).unwrap_err(), Error::BadSize(2)));
    }

    #[test]
    fn tight_distance_to_last_in_neighbor() {
        let t = tight_no_instance(8).unwrap();
        assert!(t.distance_at_most(0, 7, 2));
    }

    #[test]
    fn tight_instance_play_round_trips_and_keeps_a_favorite_triangle() {
        use crate::bracket::{play, validate_sequence, Bracket};
        use crate::params::sfas_number;
        use crate::player_set::PlayerSet;
        let t = tight_no_instance(8).unwrap();
        // Favorite and its out-block on the left, the in-block on the right.
        let b = Bracket::new(vec![0, 1, 2, 3, 4, 5, 6, 7]).unwrap();
        let (w, seq) = play(&t, &b);
        assert!(validate_sequence(&t, t.players(), &seq));
        assert_eq!(seq.winner(), Some(w));
        assert_ne!(w, 0);
        // The distinguished out-neighbor and any in-neighbor close a
        // triangle through the favorite.
        assert!(sfas_number(&t, PlayerSet::single(0)).unwrap() >= 1);
    }
}
