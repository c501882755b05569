//! Order structure on the walks above a fixed walk nu: covering moves,
//! bracket vectors, interval enumeration, and position types.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{domain_err, Error, Result};
use crate::walk::{
    comb, dyck_walks, is_above, staircase, walks_above, walks_with_endpoint, Step, Walk,
};

/// The label of a point p = (x, y) on a walk above `nu`: the horizontal
/// distance from p to the N step of `nu` going from ordinate y to y + 1
/// (to the last point of `nu` when y is its final ordinate).
pub fn ell_label(nu: &Walk, p: (usize, usize)) -> Result<usize> {
    let (i, j) = nu.endpoint();
    let (x, y) = p;
    if y > j {
        return Err(domain_err(format!("point ({x},{y}) above the top of {nu}")));
    }
    // abscissa of the N step of nu from ordinate y to y+1
    let xp = if y == j {
        i
    } else {
        let counts = nu.e_counts();
        counts[..=y].iter().sum()
    };
    if xp < x {
        return Err(domain_err(format!(
            "point ({x},{y}) lies strictly right of {nu}"
        )));
    }
    Ok(xp - x)
}

/// Valley points of `gamma`: points preceded by an E step and followed by an
/// N step.
pub fn valleys(gamma: &Walk) -> Vec<(usize, usize)> {
    let pts = gamma.points();
    let st = gamma.steps();
    (1..gamma.len())
        .filter(|&k| st[k - 1] == Step::E && st[k] == Step::N)
        .map(|k| pts[k])
        .collect()
}

/// The covering move of the lattice on walks above `nu`: for a valley p of
/// `gamma`, let p' be the next point of `gamma` with the same label as p,
/// and move the E step preceding p to just after p'.
pub fn push(nu: &Walk, gamma: &Walk, p: (usize, usize)) -> Result<Walk> {
    if !is_above(nu, gamma) {
        return Err(domain_err(format!("{gamma} is not above {nu}")));
    }
    let pts = gamma.points();
    let k = pts
        .iter()
        .position(|&q| q == p)
        .ok_or_else(|| domain_err(format!("({},{}) is not on {gamma}", p.0, p.1)))?;
    let st = gamma.steps();
    if k == 0 || k == gamma.len() || st[k - 1] != Step::E || st[k] != Step::N {
        return Err(domain_err(format!("({},{}) is not a valley of {gamma}", p.0, p.1)));
    }
    let lp = ell_label(nu, p)?;
    let mut kp = None;
    for (idx, &q) in pts.iter().enumerate().skip(k + 1) {
        if ell_label(nu, q)? == lp {
            kp = Some(idx);
            break;
        }
    }
    let kp = kp.ok_or_else(|| domain_err("no matching label after the valley".to_string()))?;
    let mut steps = Vec::with_capacity(gamma.len());
    steps.extend_from_slice(&st[..k - 1]);
    steps.extend_from_slice(&st[k..kp]);
    steps.push(Step::E);
    steps.extend_from_slice(&st[kp..]);
    Ok(Walk::new(steps))
}

/// All walks covering `gamma` in the lattice over `nu` (one per valley).
pub fn covers(nu: &Walk, gamma: &Walk) -> Result<Vec<Walk>> {
    valleys(gamma)
        .into_iter()
        .map(|p| push(nu, gamma, p))
        .collect()
}

/// Everything reachable from `gamma` by repeated covering moves, including
/// `gamma` itself. Brute-force oracle for the order relation.
pub fn upward_closure(nu: &Walk, gamma: &Walk) -> Result<HashSet<Walk>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(gamma.clone());
    queue.push_back(gamma.clone());
    while let Some(g) = queue.pop_front() {
        for c in covers(nu, &g)? {
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    Ok(seen)
}

/// The bracket vector of `gamma` over `nu`.
///
/// Scan the heights r = 0..=j; at height r first come the E steps of `nu`
/// (openers, numbered left to right), then the E steps of `gamma` (closers).
/// Each closer matches the most recent unmatched opener; entry k records the
/// height at which opener k is closed.
pub fn bracket_vector(nu: &Walk, gamma: &Walk) -> Result<Vec<usize>> {
    if !is_above(nu, gamma) {
        return Err(domain_err(format!("{gamma} is not above {nu}")));
    }
    let (i, j) = nu.endpoint();
    let (cn, cg) = (nu.e_counts(), gamma.e_counts());
    let mut vec = vec![usize::MAX; i];
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for r in 0..=j {
        for _ in 0..cn[r] {
            stack.push(next);
            next += 1;
        }
        for _ in 0..cg[r] {
            let k = stack
                .pop()
                .ok_or_else(|| domain_err("unmatched E step in bracket scan".to_string()))?;
            vec[k] = r;
        }
    }
    if !stack.is_empty() {
        return Err(domain_err("unmatched opener in bracket scan".to_string()));
    }
    Ok(vec)
}

/// Order test via componentwise comparison of bracket vectors.
pub fn tamari_leq(nu: &Walk, a: &Walk, b: &Walk) -> Result<bool> {
    Ok(leq_violation(nu, a, b)?.is_none())
}

/// First index (1-based) where the bracket vector of `a` exceeds that of
/// `b`, if any.
pub fn leq_violation(nu: &Walk, a: &Walk, b: &Walk) -> Result<Option<usize>> {
    let (va, vb) = (bracket_vector(nu, a)?, bracket_vector(nu, b)?);
    Ok(va
        .iter()
        .zip(vb.iter())
        .position(|(x, y)| x > y)
        .map(|k| k + 1))
}

/// Membership of a chain triple in the interval family: the middle and
/// upper walks must be comparable in the lattice over the lower walk.
pub fn in_g(low: &Walk, mid: &Walk, up: &Walk) -> Result<bool> {
    if !crate::walk::is_above(low, mid) || !crate::walk::is_above(low, up) {
        return Ok(false);
    }
    tamari_leq(low, mid, up)
}

/// Triples (nu, gamma, gamma') where both walks end at (i, j), both are
/// above nu and gamma <= gamma'.
pub fn enumerate_g(i: usize, j: usize) -> Result<Vec<(Walk, Walk, Walk)>> {
    let mut out = Vec::new();
    for nu in walks_with_endpoint(i, j) {
        let above = walks_above(&nu);
        for g in &above {
            for gp in &above {
                if tamari_leq(&nu, g, gp)? {
                    out.push((nu.clone(), g.clone(), gp.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Triples (gamma_low, gamma_mid, gamma_up) ending at (i, j) with each walk
/// weakly above the previous one.
pub fn enumerate_r(i: usize, j: usize) -> Vec<(Walk, Walk, Walk)> {
    let mut out = Vec::new();
    for low in walks_with_endpoint(i, j) {
        let above_low = walks_above(&low);
        for mid in &above_low {
            for up in &above_low {
                if is_above(mid, up) {
                    out.push((low.clone(), mid.clone(), up.clone()));
                }
            }
        }
    }
    out
}

/// Intervals of the lattice on Dyck walks of length 2n.
pub fn enumerate_i(n: usize) -> Result<Vec<(Walk, Walk)>> {
    let nu = staircase(n);
    let walks = dyck_walks(n);
    let mut out = Vec::new();
    for a in &walks {
        for b in &walks {
            if tamari_leq(&nu, a, b)? {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// Intervals of the lattice over (N E^m)^n.
pub fn enumerate_m_intervals(m: usize, n: usize) -> Result<Vec<(Walk, Walk)>> {
    let nu = comb(m, n);
    let walks = walks_above(&nu);
    let mut out = Vec::new();
    for a in &walks {
        for b in &walks {
            if tamari_leq(&nu, a, b)? {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// Synchronized intervals: intervals of the lattice on Dyck walks of length
/// 2(i+j+1) whose two walks share a canopy with i+1 E letters.
pub fn enumerate_s(i: usize, j: usize) -> Result<Vec<(Walk, Walk)>> {
    let n = i + j + 1;
    let mut out = Vec::new();
    for (a, b) in enumerate_i(n)? {
        let ca = a.canopy()?;
        if ca == b.canopy()? && ca.endpoint().0 == i + 1 {
            out.push((a, b));
        }
    }
    Ok(out)
}

/// Pairs of Dyck walks of length 2n with the second above the first
/// (no order relation involved).
pub fn enumerate_p(n: usize) -> Vec<(Walk, Walk)> {
    let walks = dyck_walks(n);
    let mut out = Vec::new();
    for a in &walks {
        for b in &walks {
            if is_above(a, b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PositionType {
    EE,
    NN,
    EN,
}

impl std::fmt::Display for PositionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PositionType::EE => "EE",
            PositionType::NN => "NN",
            PositionType::EN => "EN",
        })
    }
}

///// Position types of an interval (gamma, gamma') of Dyck walks: column r of
/// the canopy of gamma (bottom) over the canopy of gamma' (top). A letter N
/// below never faces an E above.
pub fn position_types(gamma: &Walk, gamma_prime: &Walk) -> Result<Vec<PositionType>> {
    let (c, d) = (gamma.canopy()?, gamma_prime.canopy()?);
    c.steps()
        .iter()
        .zip(d.steps().iter())
        .map(|(b, t)| match (b, t) {
            (Step::E, Step::E) => Ok(PositionType::EE),
            (Step::N, Step::N) => Ok(PositionType::NN),
            (Step::N, Step::E) => Ok(PositionType::EN),
            (Step::E, Step::N) => Err(domain_err(
                "canopy letter E under N; the pair is not an interval".to_string(),
            )),
        })
        .collect()
}

/// An interval is synchronized when its two canopies coincide.
pub fn is_synchronized(gamma: &Walk, gamma_prime: &Walk) -> Result<bool> {
    Ok(position_types(gamma, gamma_prime)?
        .iter()
        .all(|t| *t != PositionType::EN))
}

/// Order isomorphism from the lattice above `nu` onto the induced suborder
/// of Dyck walks of length 2(n+1) whose canopy is E nu N, with n = |nu|.
/// Returns the pairs (walk above nu, Dyck walk). If several isomorphisms
/// exist the one sending the lexicographically sorted source to the
/// lexicographically smallest image sequence is returned.
pub fn nu_dyck_table(nu: &Walk) -> Result<Vec<(Walk, Walk)>> {
    let n = nu.len();
    let src = walks_above(nu);
    let target_canopy = {
        let mut steps = vec![Step::E];
        steps.extend_from_slice(nu.steps());
        steps.push(Step::N);
        Walk::new(steps)
    };
    let big = staircase(n + 1);
    let tgt: Vec<Walk> = dyck_walks(n + 1)
        .into_iter()
        .filter(|w| w.canopy().map(|c| c == target_canopy).unwrap_or(false))
        .collect();
    if src.len() != tgt.len() {
        return Err(domain_err(format!(
            "canopy class size {} does not match lattice size {} for {nu}",
            tgt.len(),
            src.len()
        )));
    }
    let m = src.len();
    // order matrices
    let mut leq_src = vec![vec![false; m]; m];
    let mut leq_tgt = vec![vec![false; m]; m];
    for a in 0..m {
        for b in 0..m {
            leq_src[a][b] = tamari_leq(nu, &src[a], &src[b])?;
            leq_tgt[a][b] = tamari_leq(&big, &tgt[a], &tgt[b])?;
        }
    }
    let mut assign = vec![usize::MAX; m];
    let mut used = vec![false; m];
    fn rec(
        k: usize,
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        leq_src: &[Vec<bool>],
        leq_tgt: &[Vec<bool>],
    ) -> bool {
        let m = assign.len();
        if k == m {
            return true;
        }
        for t in 0..m {
            if used[t] {
                continue;
            }
            let ok = (0..k).all(|p| {
                leq_src[p][k] == leq_tgt[assign[p]][t] && leq_src[k][p] == leq_tgt[t][assign[p]]
            });
            if ok {
                assign[k] = t;
                used[t] = true;
                if rec(k + 1, assign, used, leq_src, leq_tgt) {
                    return true;
                }
                used[t] = false;
                assign[k] = usize::MAX;
            }
        }
        false
    }
    if !rec(0, &mut assign, &mut used, &leq_src, &leq_tgt) {
        return Err(domain_err(format!(
            "no order isomorphism onto the canopy class of {nu}"
        )));
    }
    Ok((0..m)
        .map(|k| (src[k].clone(), tgt[assign[k]].clone()))
        .collect())
}

/// Checks that the bracket-vector comparison agrees with reachability by
/// covering moves for every pair above `nu`. Returns the number of pairs
/// checked.
pub fn check_order_against_closure(nu: &Walk) -> Result<usize> {
    let all = walks_above(nu);
    let mut closure: HashMap<Walk, HashSet<Walk>> = HashMap::new();
    for g in &all {
        closure.insert(g.clone(), upward_closure(nu, g)?);
    }
    let mut pairs = 0;
    for a in &all {
        for b in &all {
            let reach = closure[a].contains(b);
            let leq = tamari_leq(nu, a, b)?;
            if reach != leq {
                return Err(Error::Verification(format!(
                    "order mismatch over {nu}: {a} vs {b} (closure {reach}, brackets {leq})"
                )));
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

/// Walks of length n as candidate nu values, grouped for whole-size scans.
pub fn all_nu_of_length(n: usize) -> Vec<Walk> {
    let mut out = Vec::new();
    for i in 0..=n {
        out.extend(walks_with_endpoint(i, n - i));
    }
    out.sort();
    out.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Walk {
        s.parse().unwrap()
    }

    #[test]
    fn labels() {
        assert_eq!(ell_label(&w("EN"), (1, 0)).unwrap(), 0);
        assert_eq!(ell_label(&w("EN"), (0, 1)).unwrap(), 1);
        assert_eq!(ell_label(&w("EN"), (0, 0)).unwrap(), 1);
        assert_eq!(ell_label(&Walk::empty(), (0, 0)).unwrap(), 0);
        assert!(ell_label(&w("EN"), (2, 0)).is_err());
    }

    #[test]
    fn push_examples() {
        assert_eq!(push(&w("EN"), &w("EN"), (1, 0)).unwrap(), w("NE"));
        assert!(push(&w("NE"), &w("NE"), (0, 1)).is_err());
        assert!(push(&w("NE"), &w("NE"), (1, 1)).is_err());
        // pushing increases the bracket vector strictly somewhere
        let nu = w("ENEN");
        for g in walks_above(&nu) {
            for c in covers(&nu, &g).unwrap() {
                let (vg, vc) = (
                    bracket_vector(&nu, &g).unwrap(),
                    bracket_vector(&nu, &c).unwrap(),
                );
                assert!(vg.iter().zip(vc.iter()).all(|(a, b)| a <= b));
                assert!(vg != vc);
            }
        }
    }

    #[test]
    fn bracket_fixture() {
        let low = w("EEENENENENNE");
        let mid = w("EENNNEENEENE");
        let up = w("ENNENENEENEE");
        assert_eq!(low.e_counts(), vec![3, 1, 1, 1, 0, 1]);
        assert_eq!(mid.e_counts(), vec![2, 0, 0, 2, 2, 1]);
        assert_eq!(up.e_counts(), vec![1, 0, 1, 1, 2, 2]);
        assert_eq!(
            bracket_vector(&low, &mid).unwrap(),
            vec![4, 0, 0, 4, 3, 3, 5]
        );
        assert_eq!(
            bracket_vector(&low, &up).unwrap(),
            vec![5, 4, 0, 4, 2, 3, 5]
        );
        assert_eq!(leq_violation(&low, &mid, &up).unwrap(), Some(5));
        assert!(!tamari_leq(&low, &mid, &up).unwrap());
    }

    #[test]
    fn bracket_bottom_is_minimal() {
        let nu = w("ENENE");
        let vec = bracket_vector(&nu, &nu).unwrap();
        // each opener closes at its own height
        let mut heights = Vec::new();
        for (r, &c) in nu.e_counts().iter().enumerate() {
            heights.extend(std::iter::repeat(r).take(c));
        }
        assert_eq!(vec, heights);
        for g in walks_above(&nu) {
            let vg = bracket_vector(&nu, &g).unwrap();
            assert!(vec.iter().zip(vg.iter()).all(|(a, b)| a <= b));
        }
    }

    #[test]
    fn order_matches_closure_small() {
        for n in 0..=5 {
            for nu in all_nu_of_length(n) {
                check_order_against_closure(&nu).unwrap();
            }
        }
    }

    #[test]
    fn family_counts() {
        assert_eq!(enumerate_g(1, 1).unwrap().len(), 4);
        assert_eq!(enumerate_g(2, 1).unwrap().len(), 10);
        assert_eq!(enumerate_r(1, 1).len(), 4);
        assert_eq!(enumerate_i(3).unwrap().len(), 13);
        assert_eq!(enumerate_i(4).unwrap().len(), 68);
        assert_eq!(enumerate_p(1).len(), 1);
        assert_eq!(enumerate_p(2).len(), 3);
        assert_eq!(enumerate_p(3).len(), 14);
    }

    #[test]
    fn g_totals_by_size() {
        let expect = [2usize, 6, 22, 91];
        for (n, &e) in (1..=4).zip(expect.iter()) {
            let total: usize = (0..=n)
                .map(|i| enumerate_g(i, n - i).unwrap().len())
                .sum();
            assert_eq!(total, e, "size {n}");
        }
    }

    #[test]
    fn m_interval_counts() {
        assert_eq!(enumerate_m_intervals(1, 3).unwrap().len(), 13);
        assert_eq!(enumerate_m_intervals(2, 2).unwrap().len(), 6);
        assert_eq!(enumerate_m_intervals(3, 2).unwrap().len(), 10);
    }

    #[test]
    fn s_matches_g() {
        for i in 0..=3 {
            for j in 0..=(3 - i) {
                assert_eq!(
                    enumerate_s(i, j).unwrap().len(),
                    enumerate_g(i, j).unwrap().len(),
                    "({i},{j})"
                );
            }
        }
    }

    #[test]
    fn position_type_examples() {
        use PositionType::*;
        assert_eq!(
            position_types(&w("NENE"), &w("NNEE")).unwrap(),
            vec![EE, EN, NN]
        );
        assert_eq!(
            position_types(&w("NENE"), &w("NENE")).unwrap(),
            vec![EE, NN, NN]
        );
        assert!(position_types(&w("NNEE"), &w("NENE")).is_err());
        assert!(is_synchronized(&w("NENE"), &w("NENE")).unwrap());
        assert!(!is_synchronized(&w("NENE"), &w("NNEE")).unwrap());
    }

    #[test]
    fn position_type_counts_add_up() {
        for (a, b) in enumerate_i(4).unwrap() {
            let t = position_types(&a, &b).unwrap();
            assert_eq!(t.len(), 5);
            assert_eq!(t[0], PositionType::EE);
            assert_eq!(t[4], PositionType::NN);
        }
    }

    #[test]
    fn nu_dyck_tables() {
        let t = nu_dyck_table(&Walk::empty()).unwrap();
        assert_eq!(t, vec![(Walk::empty(), w("NE"))]);
        for n in 0..=4 {
            for nu in all_nu_of_length(n) {
                let t = nu_dyck_table(&nu).unwrap();
                assert_eq!(t.len(), walks_above(&nu).len(), "{nu}");
            }
        }
    }

    #[test]
    fn nu_dyck_table_preserves_order() {
        let nu = w("ENE");
        let t = nu_dyck_table(&nu).unwrap();
        let big = staircase(nu.len() + 1);
        for (a, da) in &t {
            for (b, db) in &t {
                assert_eq!(
                    tamari_leq(&nu, a, b).unwrap(),
                    tamari_leq(&big, da, db).unwrap()
                );
            }
        }
    }
}
