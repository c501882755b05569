//! The transfer maps between separating decompositions, walk triples,
//! plane bipolar orientations, tandem walks, and Schnyder woods.
//!
//! All contour walks below go clockwise: the successor of a tree dart d is
//! the first tree dart met when scanning sigma from opp(d).

use std::collections::BTreeMap;

use crate::book::{chi_inverse, xi_inverse};
use crate::error::{domain_err, Error, Result};
use crate::orientation::{EColor, SchnyderWood, SeparatingDecomposition, TriColor};
use crate::planar::{BipolarOrientation, Quadrangulation, VColor};
use crate::rotation::{Dart, RotationMap};
use crate::tamari;
use crate::tandem::{self, TandemStep, TandemWalk};
use crate::walk::{Step, Walk};

/// Clockwise contour of the blue tree of a separating decomposition.
/// Returns the two letter walks (lower and middle, with the boundary
/// letters already dropped) and the white vertices in first-visit order.
fn contour_parts(sd: &SeparatingDecomposition) -> Result<(Walk, Walk, Vec<usize>)> {
    let m = sd.map();
    let q = sd.quad();
    let (i, j) = sd.parameters();
    let root = m.root();
    debug_assert!(sd.dart_color(root) == EColor::Blue && !sd.dart_is_tail(root));

    let mut seq = Vec::with_capacity(2 * (i + j + 2));
    let mut d = root;
    loop {
        seq.push(d);
        let mut c = m.sigma(m.opp(d));
        while sd.dart_color(c) != EColor::Blue {
            c = m.sigma(c);
        }
        d = c;
        if d == root {
            break;
        }
    }
    if seq.len() != 2 * (i + j + 2) {
        return Err(domain_err("blue edges do not form a spanning tree"));
    }

    // lower letters come from the traversals at white vertices, middle
    // letters from the traversals at black ones; an up move in the tree
    // (toward the root s) follows the tail dart of its edge
    let mut low = Vec::new();
    let mut low_n = Vec::new();
    let mut mid = Vec::new();
    let mut mid_n = Vec::new();
    let mut order = Vec::new();
    let mut seen = vec![false; m.n_vertices()];
    seen[m.vertex_of(root)] = true;
    for &x in &seq {
        let white = q.vcolor(m.vertex_of(x)) == VColor::White;
        match (white, sd.dart_is_tail(x)) {
            (true, true) => {
                low_n.push(low.len());
                low.push(Step::N);
            }
            (true, false) => low.push(Step::E),
            (false, false) => {
                mid_n.push(mid.len());
                mid.push(Step::N);
            }
            (false, true) => mid.push(Step::E),
        }
        let v = m.vertex_of(m.opp(x));
        if !seen[v] {
            seen[v] = true;
            if q.vcolor(v) == VColor::White {
                order.push(v);
            }
        }
    }
    if low_n.len() != j + 2 || mid_n.len() != j + 2 || order.len() != j + 2 {
        return Err(domain_err("contour does not visit every white vertex"));
    }
    let [_, sp, _, tp] = sd.poles();
    if order[0] != sp || order[j + 1] != tp {
        return Err(domain_err("contour meets the outer white vertices out of order"));
    }
    // drop the last two N of the lower word, the first and last N of the
    // middle word (higher index first so the positions stay valid)
    low.remove(low_n[j + 1]);
    low.remove(low_n[j]);
    mid.remove(mid_n[j + 1]);
    mid.remove(mid_n[0]);

    let low = Walk::new(low);
    let mid = Walk::new(mid);
    debug_assert_eq!(low.endpoint(), (i, j));
    debug_assert_eq!(mid.endpoint(), (i, j));
    Ok((low, mid, order))
}

fn upper_walk(sd: &SeparatingDecomposition, order: &[usize]) -> Walk {
    let beta: Vec<usize> = order[1..]
        .iter()
        .map(|&v| sd.in_degree(v, EColor::Red))
        .collect();
    Walk::from_e_counts(&beta)
}

/// Walk triple of a separating decomposition, the lower walk read off the
/// contour letters.
pub fn phi(sd: &SeparatingDecomposition) -> Result<(Walk, Walk, Walk)> {
    let (low, mid, order) = contour_parts(sd)?;
    let up = upper_walk(sd, &order);
    Ok((low, mid, up))
}

/// Variant of [`phi`] whose lower walk is rebuilt from the blue indegrees
/// of the white vertices. Minimal decompositions are exactly those whose
/// image is a nested chain in the lattice of the lower walk.
pub fn phi_prime(sd: &SeparatingDecomposition) -> Result<(Walk, Walk, Walk)> {
    let (_, mid, order) = contour_parts(sd)?;
    let alpha: Vec<usize> = order[..order.len() - 1]
        .iter()
        .map(|&v| sd.in_degree(v, EColor::Blue))
        .collect();
    let up = upper_walk(sd, &order);
    Ok((Walk::from_e_counts(&alpha), mid, up))
}

/// Rebuilds the separating decomposition of a walk triple.
pub fn phi_prime_inverse(low: &Walk, mid: &Walk, up: &Walk) -> Result<SeparatingDecomposition> {
    chi_inverse(&xi_inverse(low, mid, up)?)
}

/// Blue and red indegrees of the white vertices in contour first-visit
/// order, together with that order.
pub fn indegree_profile(
    sd: &SeparatingDecomposition,
) -> Result<(Vec<(usize, usize)>, Vec<usize>)> {
    let (_, _, order) = contour_parts(sd)?;
    let profile = order
        .iter()
        .map(|&v| (sd.in_degree(v, EColor::Blue), sd.in_degree(v, EColor::Red)))
        .collect();
    Ok((profile, order))
}

/// Checks that the decomposition is minimal exactly when its walk triple
/// is a nested chain, and returns that shared truth value.
pub fn is_minimal_image(sd: &SeparatingDecomposition) -> Result<bool> {
    let (low, mid, up) = phi_prime(sd)?;
    let in_g = tamari::in_g(&low, &mid, &up)?;
    if in_g != sd.is_minimal() {
        return Err(Error::Verification(format!(
            "minimality mismatch: is_minimal={} but interval membership={}",
            sd.is_minimal(),
            in_g
        )));
    }
    Ok(in_g)
}

/// Types (p, q) of the levels 1..=j of the walk triple, verified against
/// the red and blue indegrees of the inner white vertices, in order. Also
/// checks the two pole degrees against the end counts.
pub fn level_value_correspondence(
    sd: &SeparatingDecomposition,
) -> Result<Vec<(usize, usize)>> {
    let (low, _, up) = phi_prime(sd)?;
    let alpha = low.e_counts();
    let beta = up.e_counts();
    let (profile, order) = indegree_profile(sd)?;
    let (_, j) = sd.parameters();
    let m = sd.map();
    let [_, sp, _, tp] = sd.poles();
    if alpha[0] + 2 != m.degree(sp) || beta[j] + 2 != m.degree(tp) {
        return Err(Error::Verification(
            "pole degrees disagree with the outer level counts".into(),
        ));
    }
    let mut out = Vec::with_capacity(j);
    for r in 1..=j {
        let (p, q) = (beta[r - 1], alpha[r]);
        let (in_blue, in_red) = profile[r];
        if (p, q) != (in_red, in_blue) {
            return Err(Error::Verification(format!(
                "level {r} has type ({p},{q}) but vertex {} has {in_red} red and {in_blue} blue ingoing edges",
                order[r]
            )));
        }
        out.push((p, q));
    }
    Ok(out)
}

/// Builds the angular quadrangulation of a plane bipolar orientation: the
/// vertices stay as the black class, the inner faces and the two outer
/// regions become the white class, and each corner gives one edge whose
/// color and direction encode the flank of the corner.
pub fn iota(b: &BipolarOrientation) -> Result<SeparatingDecomposition> {
    let m = b.map();
    let outer = m.outer_face();
    let orbit = m.outer_orbit();
    let (a, bl) = b.boundary_lengths();
    debug_assert_eq!(orbit.len(), a + bl + 2);

    let nv = m.n_vertices();
    let mut white_of = vec![usize::MAX; m.n_faces()];
    let mut nw = 0;
    for f in 0..m.n_faces() {
        if f != outer {
            white_of[f] = nv + nw;
            nw += 1;
        }
    }
    let sp = nv + nw;
    let tp = nv + nw + 1;

    // (black end, white end, color, tail at the black end)
    let mut edges: Vec<(usize, usize, EColor, bool)> = Vec::new();
    let mut edge_at_corner = vec![usize::MAX; m.n_darts() + 1];
    for d in 1..=m.n_darts() as Dart {
        let f = m.face_of(m.sigma(d));
        if f == outer {
            continue;
        }
        let v = m.vertex_of(d);
        let (color, tail_black) = match (b.dart_is_tail(d), b.dart_is_tail(m.sigma(d))) {
            (true, true) => (EColor::Blue, false),  // bottom corner of f
            (false, false) => (EColor::Red, false), // top corner of f
            (true, false) => (EColor::Red, true),   // f on the east flank of v
            (false, true) => (EColor::Blue, true),  // f on the west flank of v
        };
        edge_at_corner[d as usize] = edges.len();
        edges.push((v, white_of[f], color, tail_black));
    }
    let s = b.source();
    let t = b.sink();
    let mut sp_edge = BTreeMap::new();
    let mut tp_edge = BTreeMap::new();
    sp_edge.insert(s, edges.len());
    edges.push((s, sp, EColor::Blue, false));
    sp_edge.insert(t, edges.len());
    edges.push((t, sp, EColor::Red, false));
    for p in 1..=a {
        let v = m.vertex_of(orbit[p]);
        sp_edge.insert(v, edges.len());
        edges.push((v, sp, EColor::Blue, true));
    }
    tp_edge.insert(s, edges.len());
    edges.push((s, tp, EColor::Blue, false));
    tp_edge.insert(t, edges.len());
    edges.push((t, tp, EColor::Red, false));
    for p in a + 2..=a + bl + 1 {
        let v = m.vertex_of(orbit[p]);
        tp_edge.insert(v, edges.len());
        edges.push((v, tp, EColor::Red, true));
    }

    // edges to insert at each outer corner, keyed by the corner's first
    // dart, listed clockwise
    let n_out = orbit.len();
    let mut at_outer_corner: BTreeMap<Dart, Vec<usize>> = BTreeMap::new();
    for k in 0..n_out {
        let key = m.opp(orbit[k]);
        let p = (k + 1) % n_out;
        let v = m.vertex_of(orbit[p]);
        let ins = if p == 0 {
            vec![tp_edge[&v], sp_edge[&v]]
        } else if p == a + 1 {
            vec![sp_edge[&v], tp_edge[&v]]
        } else if p <= a {
            vec![sp_edge[&v]]
        } else {
            vec![tp_edge[&v]]
        };
        at_outer_corner.insert(key, ins);
    }

    // edge k gets dart 2k+1 at its black end, dart 2k+2 at its white end
    let black_dart = |e: usize| (2 * e + 1) as Dart;
    let white_dart = |e: usize| (2 * e + 2) as Dart;
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); nv + nw + 2];
    for v in 0..nv {
        for &d in m.vertex_darts(v) {
            if m.face_of(m.sigma(d)) == outer {
                for &e in &at_outer_corner[&d] {
                    rot[v].push(black_dart(e));
                }
            } else {
                rot[v].push(black_dart(edge_at_corner[d as usize]));
            }
        }
    }
    // a white face vertex sees its corners counterclockwise along the
    // face orbit, so its clockwise rotation is the reverse
    for f in 0..m.n_faces() {
        if f == outer {
            continue;
        }
        for &g in m.face_darts(f).iter().rev() {
            rot[white_of[f]].push(white_dart(edge_at_corner[m.sigma_inv(g) as usize]));
        }
    }
    rot[sp].push(white_dart(sp_edge[&s]));
    rot[sp].push(white_dart(sp_edge[&t]));
    for p in (1..=a).rev() {
        rot[sp].push(white_dart(sp_edge[&m.vertex_of(orbit[p])]));
    }
    rot[tp].push(white_dart(tp_edge[&s]));
    for p in (a + 2..=a + bl + 1).rev() {
        rot[tp].push(white_dart(tp_edge[&m.vertex_of(orbit[p])]));
    }
    rot[tp].push(white_dart(tp_edge[&t]));

    let nd = 2 * edges.len();
    let mut opp = vec![0 as Dart; nd + 1];
    let mut sigma = vec![0 as Dart; nd + 1];
    for e in 0..edges.len() {
        opp[black_dart(e) as usize] = white_dart(e);
        opp[white_dart(e) as usize] = black_dart(e);
    }
    for list in &rot {
        for (k, &d) in list.iter().enumerate() {
            sigma[d as usize] = list[(k + 1) % list.len()];
        }
    }
    let root = black_dart(sp_edge[&s]);
    let map = RotationMap::new(opp, sigma, root)?;
    let quad = Quadrangulation::from_map(map)?;
    let mut tails = Vec::with_capacity(edges.len());
    let mut colors = Vec::with_capacity(edges.len());
    for (e, &(_, _, c, tail_black)) in edges.iter().enumerate() {
        tails.push(if tail_black { black_dart(e) } else { white_dart(e) });
        colors.push(c);
    }
    SeparatingDecomposition::new(quad, tails, colors)
}

/// Inverse of [`iota`]: collapses each inner face of the quadrangulation
/// to an edge between its two black corners, oriented away from the corner
/// flanked by blue.
pub fn iota_inverse(sd: &SeparatingDecomposition) -> Result<BipolarOrientation> {
    let m = sd.map();
    let q = sd.quad();
    let outer = m.outer_face();
    let mut bdart_at: BTreeMap<Dart, Dart> = BTreeMap::new();
    let mut ne = 0usize;
    for f in 0..m.n_faces() {
        if f == outer {
            continue;
        }
        let orbit = m.face_darts(f);
        let mut tail_g = None;
        let mut head_g = None;
        for (k, &g) in orbit.iter().enumerate() {
            if q.vcolor(m.vertex_of(g)) != VColor::Black {
                continue;
            }
            let arriving = orbit[(k + orbit.len() - 1) % orbit.len()];
            match sd.dart_color(arriving) {
                EColor::Blue => tail_g = Some(g),
                EColor::Red => head_g = Some(g),
            }
        }
        let (Some(tg), Some(hg)) = (tail_g, head_g) else {
            return Err(domain_err("inner face is not flanked by one blue and one red arrival"));
        };
        bdart_at.insert(tg, (2 * ne + 1) as Dart);
        bdart_at.insert(hg, (2 * ne + 2) as Dart);
        ne += 1;
    }
    let mut rot: Vec<Vec<Dart>> = Vec::new();
    for v in 0..m.n_vertices() {
        if q.vcolor(v) != VColor::Black {
            continue;
        }
        let mut list = Vec::new();
        for &d in m.vertex_darts(v) {
            let g = m.sigma(d);
            if m.face_of(g) != outer {
                list.push(bdart_at[&g]);
            }
        }
        debug_assert!(!list.is_empty());
        rot.push(list);
    }
    let nd = 2 * ne;
    let mut opp = vec![0 as Dart; nd + 1];
    let mut sigma = vec![0 as Dart; nd + 1];
    for e in 0..ne {
        opp[2 * e + 1] = (2 * e + 2) as Dart;
        opp[2 * e + 2] = (2 * e + 1) as Dart;
    }
    for list in &rot {
        for (k, &d) in list.iter().enumerate() {
            sigma[d as usize] = list[(k + 1) % list.len()];
        }
    }
    let g0 = m.sigma(m.root());
    debug_assert_ne!(m.face_of(g0), outer);
    let root = bdart_at[&g0];
    if root % 2 == 0 {
        return Err(domain_err("root corner does not sit at the source side"));
    }
    let map = RotationMap::new(opp, sigma, root)?;
    let tails = (0..ne).map(|e| (2 * e + 1) as Dart).collect();
    BipolarOrientation::new(map, tails)
}

/// Tandem walk of a plane bipolar orientation through the angular map.
pub fn lambda(b: &BipolarOrientation) -> Result<TandemWalk> {
    let sd = iota(b)?;
    let (low, mid, up) = phi_prime(&sd)?;
    tandem::sigma(&low, &mid, &up)
}

/// Tandem walk of a plane bipolar orientation read directly along its
/// rightmost spanning tree.
pub fn lambda_tilde(b: &BipolarOrientation) -> Result<TandemWalk> {
    let m = b.map();
    let (a, _) = b.boundary_lengths();
    let orbit = m.outer_orbit();
    let (i, j) = b.parameters();
    let mut in_tree = vec![false; m.n_edges()];
    for v in 0..m.n_vertices() {
        if v == b.source() {
            continue;
        }
        let d = if v == b.sink() {
            orbit[a + 1]
        } else {
            // rightmost ingoing dart: its clockwise predecessor points out
            *m.vertex_darts(v)
                .iter()
                .find(|&&d| !b.dart_is_tail(d) && b.dart_is_tail(m.sigma_inv(d)))
                .ok_or_else(|| domain_err("vertex without an in-out transition"))?
        };
        in_tree[m.edge_of(d)] = true;
    }
    // tour around the tree; every edge is recorded when its tail dart
    // comes up, either followed (tree) or crossed (non-tree)
    let mut order = Vec::with_capacity(m.n_edges());
    let mut d = m.root();
    for _ in 0..m.n_darts() {
        if b.dart_is_tail(d) {
            order.push(m.edge_of(d));
        }
        d = if in_tree[m.edge_of(d)] {
            m.sigma(m.opp(d))
        } else {
            m.sigma(d)
        };
    }
    if d != m.root() || order.len() != m.n_edges() {
        return Err(domain_err("tour around the rightmost tree does not close"));
    }
    if *order.last().unwrap() != m.edge_of(orbit[a + 1]) {
        return Err(Error::Verification(
            "tour does not end with the top right boundary edge".into(),
        ));
    }
    let mut steps = Vec::with_capacity(i + j);
    for &e in &order[..i + j] {
        if in_tree[e] {
            steps.push(TandemStep::SE);
        } else {
            let (d1, d2) = m.edge_darts(e);
            let tail = if b.dart_is_tail(d1) { d1 } else { d2 };
            let (p, q) = b.face_type(m.face_of(m.opp(tail)))?;
            steps.push(TandemStep::PQ(p, q));
        }
    }
    TandemWalk::new(a, steps)
}

/// Contour data of the blue tree of a Schnyder wood, closed with the outer
/// edge into the clockwise-last outer vertex.
pub struct TreePair {
    pub gamma: Walk,
    pub gamma_prime: Walk,
    /// non-root vertices in first-visit order
    pub order: Vec<usize>,
    /// dart at each vertex of `order` pointing along its tree edge toward
    /// the root
    pub parent_tail: Vec<Dart>,
}

pub fn bernardi_bonichon_details(w: &SchnyderWood) -> Result<TreePair> {
    let m = w.map();
    let n = w.tri().parameters();
    let orbit = m.outer_orbit();
    let eprime = m.edge_of(orbit[2]);
    let ub = m.vertex_of(m.root());
    let ur = w.tri().outer_vertices()[2];
    debug_assert_eq!(m.vertex_of(orbit[2]), ur);

    let mut in_tree = vec![false; m.n_darts() + 1];
    for d in 1..=m.n_darts() {
        let e = m.edge_of(d as Dart);
        in_tree[d] = e == eprime || matches!(w.edge_info(e), Some((_, TriColor::Blue)));
    }
    let mut start = m.root();
    while !in_tree[start as usize] {
        start = m.sigma(start);
    }
    // the closing outer edge counts as directed into the root vertex
    let closer = |d: Dart| {
        if m.edge_of(d) == eprime {
            m.vertex_of(d) == ur
        } else {
            w.dart_is_tail(d)
        }
    };
    let mut seq = Vec::with_capacity(2 * (n + 1));
    let mut d = start;
    loop {
        seq.push(d);
        let mut c = m.sigma(m.opp(d));
        while !in_tree[c as usize] {
            c = m.sigma(c);
        }
        d = c;
        if d == start {
            break;
        }
    }
    if seq.len() != 2 * (n + 1) {
        return Err(domain_err("blue edges do not form a spanning tree"));
    }
    let mut letters = Vec::new();
    let mut order = Vec::new();
    let mut parent_tail = Vec::new();
    let mut seen = vec![false; m.n_vertices()];
    seen[ub] = true;
    for &x in &seq {
        if m.edge_of(x) != eprime {
            letters.push(if closer(x) { Step::E } else { Step::N });
        }
        let v = m.vertex_of(m.opp(x));
        if !seen[v] {
            seen[v] = true;
            order.push(v);
            parent_tail.push(m.opp(x));
        }
    }
    if order.len() != n + 1 || order[n] != ur {
        return Err(domain_err("contour does not close at the last outer vertex"));
    }
    if w.in_degree(order[0], TriColor::Red) != 0 {
        return Err(domain_err("first visited vertex already has ingoing red edges"));
    }
    let gamma = Walk::new(letters);
    if !gamma.is_dyck() {
        return Err(domain_err("contour word is not a Dyck walk"));
    }
    let mut counts = vec![0usize];
    for r in 1..=n {
        counts.push(w.in_degree(order[r], TriColor::Red));
    }
    let gamma_prime = Walk::from_e_counts(&counts);
    Ok(TreePair {
        gamma,
        gamma_prime,
        order,
        parent_tail,
    })
}

/// Dyck walk pair of a Schnyder wood read off its blue tree.
pub fn bernardi_bonichon(w: &SchnyderWood) -> Result<(Walk, Walk)> {
    let d = bernardi_bonichon_details(w)?;
    Ok((d.gamma, d.gamma_prime))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::book;
    use crate::orientation::{enumerate_sepdecs, enumerate_woods, minimal_sepdec, minimal_wood};
    use crate::planar::{enumerate_bipolar, enumerate_quadrangulations, enumerate_triangulations};
    use crate::tamari::{enumerate_i, enumerate_p, enumerate_r};
    use crate::tandem::enumerate_tandem;
    use crate::walk::{is_above, staircase};
    use std::collections::{BTreeMap, BTreeSet};

    fn all_sepdecs(i: usize, j: usize) -> Vec<SeparatingDecomposition> {
        enumerate_quadrangulations(i, j)
            .unwrap()
            .iter()
            .flat_map(enumerate_sepdecs)
            .collect()
    }

    #[test]
    fn contour_matches_equatorial_line() {
        for n in 0..=3 {
            for i in 0..=n {
                for sd in all_sepdecs(i, n - i) {
                    let triple = phi_prime(&sd).unwrap();
                    let diagram = book::chi(&sd).unwrap();
                    assert_eq!(triple, book::xi(&diagram));
                }
            }
        }
    }

    #[test]
    fn both_variants_fill_the_triple_family() {
        for n in 0..=3 {
            for i in 0..=n {
                let j = n - i;
                let mut letter_images = BTreeSet::new();
                let mut count_images = BTreeSet::new();
                let mut total = 0usize;
                for sd in all_sepdecs(i, j) {
                    total += 1;
                    let (low, mid, up) = phi(&sd).unwrap();
                    let prime = phi_prime(&sd).unwrap();
                    assert_eq!((mid.clone(), up.clone()), (prime.1.clone(), prime.2.clone()));
                    for (l, m, u) in [(&low, &mid, &up), (&prime.0, &prime.1, &prime.2)] {
                        assert_eq!(l.endpoint(), (i, j));
                        assert!(is_above(l, m) && is_above(l, u) && is_above(m, u));
                    }
                    letter_images.insert((low, mid, up));
                    count_images.insert(prime);
                }
                let expected = enumerate_r(i, j).len();
                assert_eq!(total, expected);
                assert_eq!(letter_images.len(), expected);
                assert_eq!(count_images.len(), expected);
            }
        }
    }

    #[test]
    fn triple_roundtrip_through_diagrams() {
        for n in 0..=3 {
            for i in 0..=n {
                for sd in all_sepdecs(i, n - i) {
                    let (low, mid, up) = phi_prime(&sd).unwrap();
                    let back = phi_prime_inverse(&low, &mid, &up).unwrap();
                    assert_eq!(back.canonical_key(), sd.canonical_key());
                }
            }
        }
    }

    #[test]
    fn minimality_matches_chain_membership() {
        for n in 0..=3 {
            for i in 0..=n {
                for sd in all_sepdecs(i, n - i) {
                    is_minimal_image(&sd).unwrap();
                }
            }
        }
    }

    #[test]
    fn smallest_images() {
        let e = Walk::empty();
        let sd = minimal_sepdec(&enumerate_quadrangulations(0, 0).unwrap()[0]).unwrap();
        assert_eq!(phi_prime(&sd).unwrap(), (e.clone(), e.clone(), e.clone()));
        assert_eq!(phi(&sd).unwrap(), (e.clone(), e.clone(), e));

        let one = Walk::new(vec![Step::E]);
        let quads = enumerate_quadrangulations(1, 0).unwrap();
        let sds: Vec<_> = quads.iter().flat_map(enumerate_sepdecs).collect();
        assert_eq!(sds.len(), 1);
        assert_eq!(
            phi_prime(&sds[0]).unwrap(),
            (one.clone(), one.clone(), one)
        );
    }

    #[test]
    fn level_values_check_out() {
        for n in 0..=3 {
            for i in 0..=n {
                for sd in all_sepdecs(i, n - i) {
                    let levels = level_value_correspondence(&sd).unwrap();
                    assert_eq!(levels.len(), sd.parameters().1);
                }
            }
        }
    }

    #[test]
    fn angular_map_roundtrip() {
        for n in 0..=3 {
            for i in 0..=n {
                let j = n - i;
                let bipolars = enumerate_bipolar(i, j, None).unwrap();
                let mut images = BTreeSet::new();
                for b in &bipolars {
                    let sd = iota(b).unwrap();
                    assert_eq!(sd.parameters(), (i, j));
                    let (a, bl) = b.boundary_lengths();
                    let [_, sp, _, tp] = sd.poles();
                    assert_eq!(sd.map().degree(sp), a + 2);
                    assert_eq!(sd.map().degree(tp), bl + 2);
                    let back = iota_inverse(&sd).unwrap();
                    assert_eq!(back.canonical_key(), b.canonical_key());
                    images.insert(sd.canonical_key());
                }
                let sds = all_sepdecs(i, j);
                assert_eq!(images.len(), bipolars.len());
                assert_eq!(images.len(), sds.len());
                for sd in &sds {
                    let again = iota(&iota_inverse(sd).unwrap()).unwrap();
                    assert_eq!(again.canonical_key(), sd.canonical_key());
                }
            }
        }
    }

    #[test]
    fn face_types_transfer_to_white_types() {
        for n in 0..=3 {
            for i in 0..=n {
                let j = n - i;
                for b in enumerate_bipolar(i, j, None).unwrap() {
                    let m = b.map();
                    let mut face_types: Vec<(usize, usize)> = (0..m.n_faces())
                        .filter(|&f| f != m.outer_face())
                        .map(|f| b.face_type(f).unwrap())
                        .collect();
                    face_types.sort();
                    let sd = iota(&b).unwrap();
                    let (profile, _) = indegree_profile(&sd).unwrap();
                    let mut white_types: Vec<(usize, usize)> = profile[1..=j]
                        .iter()
                        .map(|&(in_blue, in_red)| (in_red, in_blue))
                        .collect();
                    white_types.sort();
                    assert_eq!(face_types, white_types);
                }
            }
        }
    }

    #[test]
    fn tandem_images_by_boundary_class() {
        for n in 0..=3 {
            for i in 0..=n {
                let j = n - i;
                let mut by_class: BTreeMap<(usize, usize), BTreeSet<String>> = BTreeMap::new();
                for b in enumerate_bipolar(i, j, None).unwrap() {
                    let w = lambda(&b).unwrap();
                    let m = b.map();
                    let se = w
                        .steps()
                        .iter()
                        .filter(|s| matches!(s, TandemStep::SE))
                        .count();
                    assert_eq!(se, i);
                    let mut steps: Vec<(usize, usize)> = w
                        .steps()
                        .iter()
                        .filter_map(|s| match s {
                            TandemStep::SE => None,
                            TandemStep::PQ(p, q) => Some((*p, *q)),
                        })
                        .collect();
                    steps.sort();
                    let mut faces: Vec<(usize, usize)> = (0..m.n_faces())
                        .filter(|&f| f != m.outer_face())
                        .map(|f| b.face_type(f).unwrap())
                        .collect();
                    faces.sort();
                    assert_eq!(steps, faces);
                    let (a, bl) = b.boundary_lengths();
                    assert_eq!(w.start_y(), a);
                    assert_eq!(w.end_x(), bl);
                    assert!(by_class.entry((a, bl)).or_default().insert(w.to_string()));
                }
                for ((a, bl), images) in by_class {
                    assert_eq!(images.len(), enumerate_tandem(i, j, a, bl).len());
                }
            }
        }
    }

    #[test]
    fn mirror_links_the_two_tandem_maps() {
        for n in 0..=3 {
            for i in 0..=n {
                for b in enumerate_bipolar(i, n - i, None).unwrap() {
                    let direct = lambda(&b.mirror()).unwrap();
                    let toured = lambda_tilde(&b).unwrap().tau();
                    assert_eq!(direct, toured);
                }
            }
        }
    }

    #[test]
    fn smallest_tandem_images() {
        let single = &enumerate_bipolar(0, 0, None).unwrap()[0];
        assert_eq!(lambda(single).unwrap().to_string(), "0;");
        assert_eq!(lambda_tilde(single).unwrap().to_string(), "0;");

        let path: Vec<_> = enumerate_bipolar(1, 0, None).unwrap();
        assert_eq!(path.len(), 1);
        assert_eq!(lambda_tilde(&path[0]).unwrap().to_string(), "1; SE");

        let double: Vec<_> = enumerate_bipolar(0, 1, None).unwrap();
        assert_eq!(double.len(), 1);
        assert_eq!(lambda_tilde(&double[0]).unwrap().to_string(), "0; (-0,0)");
    }

    #[test]
    fn tetrahedron_walk_pair() {
        let tris = enumerate_triangulations(1).unwrap();
        assert_eq!(tris.len(), 1);
        let w = minimal_wood(&tris[0]).unwrap();
        let (g, gp) = bernardi_bonichon(&w).unwrap();
        assert_eq!(g.to_string(), "NE");
        assert_eq!(gp.to_string(), "NE");
    }

    #[test]
    fn wood_pairs_fill_the_dyck_family() {
        for n in 0..=2 {
            let mut images = BTreeSet::new();
            let mut minimal_images = BTreeSet::new();
            for tri in enumerate_triangulations(n).unwrap() {
                let min_key = minimal_wood(&tri).unwrap().canonical_key();
                for w in enumerate_woods(&tri) {
                    let (g, gp) = bernardi_bonichon(&w).unwrap();
                    assert!(g.is_dyck() && gp.is_dyck());
                    assert!(is_above(&g, &gp));
                    assert!(images.insert((g.clone(), gp.clone())));
                    if w.canonical_key() == min_key {
                        let nu = staircase(n);
                        assert!(crate::tamari::tamari_leq(&nu, &g, &gp).unwrap());
                        assert!(minimal_images.insert((g, gp)));
                    }
                }
            }
            assert_eq!(images.len(), enumerate_p(n).len());
            assert_eq!(minimal_images.len(), enumerate_i(n).unwrap().len());
        }
    }
}
