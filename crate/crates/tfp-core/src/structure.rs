//! King predicates, the sufficient-condition checkers for fixable favorites,
//! and the constructive seeding algorithms for neighbor-acyclic instances.

use crate::bracket::{sequence_to_bracket, Bracket, MatchSet, MatchSetSequence};
use crate::error::{Error, Result};
use crate::player_set::PlayerSet;
use crate::tournament::Tournament;

/// Verdicts of every sufficient condition on one instance, plus the witness
/// matching from the favorite's out-neighborhood onto its in-neighborhood
/// when the favorite is a king.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub is_king: bool,
    pub is_3king: bool,
    pub neighbor_acyclic: bool,
    pub three_king_rule: bool,
    pub king_matching_rule: bool,
    pub recursive_seed_rule: bool,
    pub king_degree_rule: bool,
    pub matching: Option<Vec<(usize, usize)>>,
}

/// A king reaches every other player within two arcs.
pub fn is_king(t: &Tournament, v: usize) -> bool {
    (0..t.n()).all(|u| u == v || t.distance_at_most(v, u, 2))
}

/// A 3-king reaches every other player within three arcs.
pub fn is_3king(t: &Tournament, v: usize) -> bool {
    (0..t.n()).all(|u| u == v || t.distance_at_most(v, u, 3))
}

/// Both of the favorite's induced neighborhoods are acyclic (hence
/// transitive subtournaments).
pub fn neighbor_acyclic(t: &Tournament, v: usize) -> bool {
    let all = t.players();
    t.is_acyclic(t.in_neighbors(v, all)) && t.is_acyclic(t.out_neighbors(v, all))
}

/// Sufficient condition for a 3-king favorite: with A its out-neighborhood,
/// B the in-neighbors reachable from A and C the rest of the in-neighbors,
/// the favorite wins if |A| >= n/3, out(b) <= out(v) for every b in B, and
/// B has a matching saturating C. Returns the saturating matching as
/// `(b, c)` arcs when the condition holds.
#[allow(clippy::type_complexity)]
pub fn check_three_king_rule(
    t: &Tournament,
    v: usize,
) -> Result<(bool, Option<Vec<(usize, usize)>>)> {
    if !is_3king(t, v) {
        return Err(Error::Not3King);
    }
    let all = t.players();
    let a = t.out_neighbors(v, all);
    let n_in = t.in_neighbors(v, all);
    let mut out_of_a = PlayerSet::EMPTY;
    for x in a.iter() {
        out_of_a = out_of_a.union(t.out_neighbors(x, all));
    }
    let b = out_of_a.minus(a).intersect(n_in);
    let c = n_in.minus(b);

    if 3 * a.len() < t.n() {
        return Ok((false, None));
    }
    if b.iter().any(|x| t.out_degree(x) > t.out_degree(v)) {
        return Ok((false, None));
    }
    let b_list: Vec<usize> = b.iter().collect();
    let c_list: Vec<usize> = c.iter().collect();
    let matching = max_bipartite_matching(&b_list, &c_list, |x, y| t.beats(x, y));
    if matching.len() == c_list.len() {
        Ok((true, Some(matching)))
    } else {
        Ok((false, None))
    }
}

/// Sufficient condition for a king favorite: with k the maximum matching
/// from its out-neighborhood onto its in-neighborhood, the favorite wins if
/// |N_out(v)| + k > n/2. Returns the verdict and k.
pub fn check_king_matching_rule(t: &Tournament, v: usize) -> Result<(bool, usize)> {
    if !is_king(t, v) {
        return Err(Error::NotKing);
    }
    let k = king_max_matching(t, v).len();
    let a = t.out_degree(v);
    Ok((2 * (a + k) > t.n(), k))
}

fn king_max_matching(t: &Tournament, v: usize) -> Vec<(usize, usize)> {
    let all = t.players();
    let a_list: Vec<usize> = t.out_neighbors(v, all).iter().collect();
    let b_list: Vec<usize> = t.in_neighbors(v, all).iter().collect();
    max_bipartite_matching(&a_list, &b_list, |x, y| t.beats(x, y))
}

/// The king-degree sufficient condition: neighbor-acyclic, favorite a king,
/// and out(b) < 2 out(v) for every in-neighbor b. When this holds the
/// instance is a yes-instance ([`king_matching`] certifies the matching
/// bound behind that guarantee).
pub fn check_king_degree_rule(t: &Tournament, v: usize) -> bool {
    neighbor_acyclic(t, v)
        && is_king(t, v)
        && t.in_neighbors(v, t.players())
            .iter()
            .all(|b| t.out_degree(b) < 2 * t.out_degree(v))
}

/// Constructs the matching behind the king-degree rule. With A the
/// out-neighborhood, B the in-neighborhood in its transitive order and
/// p = n - 2|A|, the q-th matched pair targets b at position 1 + p - q;
/// the degree bound guarantees enough unmatched in-neighbors at every step.
/// The result has size min(p, |A|) (a single arc suffices when |A| >= n/2)
/// and satisfies |A| + k > n/2 for n >= 3.
pub fn king_matching(t: &Tournament, v: usize) -> Result<Vec<(usize, usize)>> {
    let fail = |condition: &str| Error::PreconditionViolated {
        condition: condition.into(),
        level: 0,
    };
    if !neighbor_acyclic(t, v) {
        return Err(fail("neighborhoods are not acyclic"));
    }
    if !is_king(t, v) {
        return Err(fail("favorite is not a king"));
    }
    let all = t.players();
    let a_set = t.out_neighbors(v, all);
    let b_set = t.in_neighbors(v, all);
    if b_set.iter().any(|b| t.out_degree(b) >= 2 * t.out_degree(v)) {
        return Err(fail("some in-neighbor has out-degree at least twice the favorite's"));
    }
    if b_set.is_empty() {
        return Ok(Vec::new());
    }
    let n = t.n();
    let a_order = t.topological_order(a_set).expect("out-block is acyclic");
    let b_order = t.topological_order(b_set).expect("in-block is acyclic");
    let matching = if 2 * a_set.len() >= n {
        // Any single arc into B does; kingness provides one.
        let mut first = None;
        'scan: for &a in &a_order {
            for &b in &b_order {
                if t.beats(a, b) {
                    first = Some((a, b));
                    break 'scan;
                }
            }
        }
        vec![first.expect("a king with in-neighbors has an arc into them")]
    } else {
        let p = n - 2 * a_set.len();
        let k = p.min(a_set.len());
        let mut used = PlayerSet::EMPTY;
        let mut pairs = Vec::with_capacity(k);
        for q in 1..=k {
            let target = b_order[p - q]; // position 1 + p - q, 1-based
            let pick = a_order
                .iter()
                .copied()
                .find(|&a| !used.contains(a) && t.beats(a, target))
                .ok_or_else(|| fail("counting bound failed to provide an unmatched in-neighbor"))?;
            used.insert(pick);
            pairs.push((pick, target));
        }
        pairs
    };
    debug_assert!(n < 3 || 2 * (a_set.len() + matching.len()) > n);
    Ok(matching)
}

/// Root conditions of the recursive seeding construction: power-of-two
/// field, acyclic neighborhoods, 3|A| >= n, and out(b)·|A| <= |B|·out(v)
/// for every in-neighbor b (the ratio bound; out(v) = |A| makes the right
/// side |B|). A non-favorite source would violate the degree bound, so no
/// separate source check is needed.
pub fn check_recursive_seed_rule(t: &Tournament, v: usize) -> bool {
    recursive_seed_violation(t, v).is_none()
}

fn recursive_seed_violation(t: &Tournament, v: usize) -> Option<String> {
    if !t.n().is_power_of_two() {
        return Some(format!("{} players is not a power of two", t.n()));
    }
    if !neighbor_acyclic(t, v) {
        return Some("neighborhoods are not acyclic".into());
    }
    let all = t.players();
    let a = t.out_neighbors(v, all);
    let b = t.in_neighbors(v, all);
    if 3 * a.len() < t.n() {
        return Some(format!("3|A| = {} < n = {}", 3 * a.len(), t.n()));
    }
    for x in b.iter() {
        if t.out_degree(x) * a.len() > b.len() * t.out_degree(v) {
            return Some(format!("out({x}) exceeds the ratio bound"));
        }
    }
    None
}

/// Builds a winning bracket for a conforming neighbor-acyclic instance by
/// assembling one round at a time; see [`seed_neighbor_acyclic_trace`] for
/// the per-level survivor sets.
pub fn seed_neighbor_acyclic(t: &Tournament, v: usize) -> Result<Bracket> {
    seed_neighbor_acyclic_trace(t, v).map(|(b, _)| b)
}

/// As [`seed_neighbor_acyclic`], also returning the field at the start of
/// every recursion level (outermost first).
pub fn seed_neighbor_acyclic_trace(
    t: &Tournament,
    v: usize,
) -> Result<(Bracket, Vec<PlayerSet>)> {
    if let Some(condition) = recursive_seed_violation(t, v) {
        return Err(Error::PreconditionViolated { condition, level: 0 });
    }
    let mut current = t.players();
    let mut rounds = Vec::new();
    let mut trace = vec![current];
    let mut level = 0usize;
    while current.len() > 1 {
        let matches = build_round(t, v, current, level)?;
        let round = MatchSet::new(matches)?;
        current = round.winners();
        rounds.push(round);
        trace.push(current);
        level += 1;
    }
    let seq = MatchSetSequence::new(rounds);
    debug_assert!(crate::bracket::validate_sequence(t, t.players(), &seq));
    debug_assert_eq!(seq.winner(), Some(v));
    let bracket = sequence_to_bracket(&seq)?;
    Ok((bracket, trace))
}

/// One round of the construction. The current field splits into the
/// favorite, A' (out-neighbors) and B' (in-neighbors), both transitive.
/// Writing b_i for the i-th player of B' in topological order, the degree
/// invariant gives out_{A'}(b_i) <= i - 1, which supplies the cross arcs the
/// parity cases need.
fn build_round(
    t: &Tournament,
    v: usize,
    current: PlayerSet,
    level: usize,
) -> Result<Vec<(usize, usize)>> {
    let fail = |condition: String| Error::PreconditionViolated { condition, level };
    let a_set = t.out_neighbors(v, current);
    let b_set = t.in_neighbors(v, current);
    debug_assert_eq!(a_set.len() + b_set.len() + 1, current.len());

    // Invariant (i).
    if 3 * a_set.len() < current.len() {
        return Err(fail(format!(
            "3|A'| = {} < |field| = {}",
            3 * a_set.len(),
            current.len()
        )));
    }
    let a_order = t
        .topological_order(a_set)
        .map_err(|_| fail("out-block is not acyclic".into()))?;
    let b_order = t
        .topological_order(b_set)
        .map_err(|_| fail("in-block is not acyclic".into()))?;
    // Invariant (ii) and the derived cross-arc bound.
    for (idx, &b) in b_order.iter().enumerate() {
        let i = idx + 1;
        let out_here = t.out_neighbors(b, current).len();
        if out_here > b_set.len() {
            return Err(fail(format!("out'({b}) = {out_here} exceeds |B'| = {}", b_set.len())));
        }
        let out_a = t.out_neighbors(b, a_set).len();
        if out_a > i - 1 {
            return Err(fail(format!("out'_A'({b}) = {out_a} exceeds {}", i - 1)));
        }
    }

    let smallest_in_neighbor = |target: usize, skip: Option<usize>| -> Option<usize> {
        a_order
            .iter()
            .copied()
            .find(|&x| Some(x) != skip && t.beats(x, target))
    };

    let mut matches: Vec<(usize, usize)> = Vec::with_capacity(current.len() / 2);
    let mut reserved = PlayerSet::EMPTY; // A'-players already assigned a match
    if b_set.is_empty() {
        let victim = *a_order.last().expect("field of two or more has out-neighbors");
        matches.push((v, victim));
        reserved.insert(victim);
    } else if b_set.len() % 2 == 1 {
        // Case 1: |B'| odd, |A'| even.
        let k = b_set.len().div_ceil(2);
        let b_k = b_order[k - 1];
        let a1 = smallest_in_neighbor(b_k, None)
            .ok_or_else(|| fail(format!("no in-neighbor of {b_k} inside A'")))?;
        reserved.insert(a1);
        matches.push((a1, b_k));
        for i in 1..k {
            matches.push((b_order[i - 1], b_order[i - 1 + k]));
        }
        let victim = pick_victim(&a_order, reserved, level)?;
        reserved.insert(victim);
        matches.push((v, victim));
    } else {
        // Case 2: |B'| even, |A'| odd.
        let k = b_set.len() / 2;
        let (b_k, b_k1) = (b_order[k - 1], b_order[k]);
        let a1 = smallest_in_neighbor(b_k1, None)
            .ok_or_else(|| fail(format!("no in-neighbor of {b_k1} inside A'")))?;
        let a2 = smallest_in_neighbor(b_k, Some(a1))
            .ok_or_else(|| fail(format!("no second in-neighbor of {b_k} inside A'")))?;
        reserved.insert(a1);
        reserved.insert(a2);
        matches.push((a1, b_k1));
        matches.push((a2, b_k));
        for i in 1..k {
            matches.push((b_order[i - 1], b_order[i - 1 + k + 1]));
        }
        let victim = pick_victim(&a_order, reserved, level)?;
        reserved.insert(victim);
        matches.push((v, victim));
    }
    // Leftover A'-players pair up consecutively in topological order; the
    // earlier one wins since the block is transitive.
    let leftover: Vec<usize> = a_order.iter().copied().filter(|&x| !reserved.contains(x)).collect();
    debug_assert_eq!(leftover.len() % 2, 0);
    for pair in leftover.chunks(2) {
        matches.push((pair[0], pair[1]));
    }
    Ok(matches)
}

/// The favorite's opponent: the last unreserved A'-player in topological
/// order. That is a_{|A'|} whenever the cross matches did not claim it; the
/// favorite beats all of A', so any stand-in preserves the construction.
fn pick_victim(a_order: &[usize], reserved: PlayerSet, level: usize) -> Result<usize> {
    a_order
        .iter()
        .rev()
        .copied()
        .find(|&x| !reserved.contains(x))
        .ok_or_else(|| Error::PreconditionViolated {
            condition: "A' exhausted before the favorite got an opponent".into(),
            level,
        })
}

/// Full condition survey for one instance.
pub fn condition_report(t: &Tournament, v: usize) -> ConditionReport {
    let king = is_king(t, v);
    let three_king = is_3king(t, v);
    ConditionReport {
        is_king: king,
        is_3king: three_king,
        neighbor_acyclic: neighbor_acyclic(t, v),
        three_king_rule: three_king
            && check_three_king_rule(t, v).map(|(h, _)| h).unwrap_or(false),
        king_matching_rule: king
            && check_king_matching_rule(t, v).map(|(h, _)| h).unwrap_or(false),
        recursive_seed_rule: check_recursive_seed_rule(t, v),
        king_degree_rule: check_king_degree_rule(t, v),
        matching: if king { Some(king_max_matching(t, v)) } else { None },
    }
}

/// Maximum bipartite matching by augmenting paths (Kuhn). `left` and
/// `right` are player lists; `arc(l, r)` tells whether l may be matched to
/// r. Returns matched pairs in left-list order.
fn max_bipartite_matching(
    left: &[usize],
    right: &[usize],
    arc: impl Fn(usize, usize) -> bool,
) -> Vec<(usize, usize)> {
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&l| (0..right.len()).filter(|&r| arc(l, right[r])).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; right.len()];

    fn try_augment(
        l: usize,
        adj: &[Vec<usize>],
        owner: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &r in &adj[l] {
            if visited[r] {
                continue;
            }
            visited[r] = true;
            if owner[r].is_none() || try_augment(owner[r].unwrap(), adj, owner, visited) {
                owner[r] = Some(l);
                return true;
            }
        }
        false
    }

    for l in 0..left.len() {
        let mut visited = vec![false; right.len()];
        try_augment(l, &adj, &mut owner, &mut visited);
    }
    let mut pairs: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(r, &l)| l.map(|l| (left[l], right[r])))
        .collect();
    pairs.sort();
    pairs
}
