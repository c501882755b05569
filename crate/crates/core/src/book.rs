//! Blue-red arc diagrams and the 2-book embedding of a separating
//! decomposition: the equatorial line, the reduction chi and its
//! inverse, and the counts map xi between diagrams and walk triples.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain_err, parse_err, Result};
use crate::orientation::{EColor, SeparatingDecomposition};
use crate::planar::{Quadrangulation, VColor};
use crate::rotation::{Dart, RotationMap};
use crate::walk::{is_above, Walk};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DotKind {
    Blue,
    Black,
    Red,
}

/// A blue-red arc diagram with j+1 segments: segment r carries alpha_r
/// blue dots, then mu_r black dots, then beta_r red dots. Lower arcs
/// match blue dots to black dots and upper arcs match black dots to red
/// dots, both in last-in first-out fashion; the counts must make both
/// matchings feasible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArcDiagram {
    alpha: Vec<usize>,
    mu: Vec<usize>,
    beta: Vec<usize>,
}

impl ArcDiagram {
    pub fn new(alpha: Vec<usize>, mu: Vec<usize>, beta: Vec<usize>) -> Result<Self> {
        if alpha.is_empty() || alpha.len() != mu.len() || mu.len() != beta.len() {
            return Err(domain_err("segment count mismatch".to_string()));
        }
        let (sa, sm, sb) = (
            alpha.iter().sum::<usize>(),
            mu.iter().sum::<usize>(),
            beta.iter().sum::<usize>(),
        );
        if sa != sm || sm != sb {
            return Err(domain_err(format!(
                "dot counts differ: {sa} blue, {sm} black, {sb} red"
            )));
        }
        let (mut pa, mut pm, mut pb) = (0usize, 0usize, 0usize);
        for r in 0..alpha.len() {
            pa += alpha[r];
            pm += mu[r];
            pb += beta[r];
            if pm > pa {
                return Err(domain_err(format!(
                    "lower matching infeasible at segment {r}"
                )));
            }
            if pb > pm {
                return Err(domain_err(format!(
                    "upper matching infeasible at segment {r}"
                )));
            }
        }
        Ok(ArcDiagram { alpha, mu, beta })
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    /// (i, j): i dots of each kind, j + 1 segments.
    pub fn parameters(&self) -> (usize, usize) {
        (self.alpha.iter().sum(), self.alpha.len() - 1)
    }

    /// All dots in line order with their segment index.
    pub fn dots(&self) -> Vec<(DotKind, usize)> {
        let mut out = Vec::new();
        for r in 0..self.alpha.len() {
            out.extend(std::iter::repeat((DotKind::Blue, r)).take(self.alpha[r]));
            out.extend(std::iter::repeat((DotKind::Black, r)).take(self.mu[r]));
            out.extend(std::iter::repeat((DotKind::Red, r)).take(self.beta[r]));
        }
        out
    }

    fn matching(&self, opener: DotKind, closer: DotKind) -> Vec<(usize, usize)> {
        let mut stack = Vec::new();
        let mut pairs = Vec::new();
        for (pos, (kind, _)) in self.dots().into_iter().enumerate() {
            if kind == opener {
                stack.push(pos);
            } else if kind == closer {
                let open = stack.pop().expect("feasibility checked at construction");
                pairs.push((open, pos));
            }
        }
        assert!(stack.is_empty(), "all openers matched");
        pairs.sort();
        pairs
    }

    /// Pairs (blue position, black position) in global dot positions.
    pub fn lower_matching(&self) -> Vec<(usize, usize)> {
        self.matching(DotKind::Blue, DotKind::Black)
    }

    /// Pairs (black position, red position).
    pub fn upper_matching(&self) -> Vec<(usize, usize)> {
        self.matching(DotKind::Black, DotKind::Red)
    }

    /// Pairs (blue position, red position) of the modified diagram.
    pub fn modified_upper_matching(&self) -> Vec<(usize, usize)> {
        self.matching(DotKind::Blue, DotKind::Red)
    }

    /// A blue arc and a red arc such that the blue end lies strictly
    /// inside the red arc and the red end strictly inside the blue arc.
    pub fn has_z_pattern(&self) -> bool {
        let lower = self.lower_matching();
        let upper = self.upper_matching();
        for &(x1, y1) in &lower {
            for &(x2, y2) in &upper {
                if x2 < x1 && x1 < y2 && y2 < y1 {
                    return true;
                }
            }
        }
        false
    }

    /// Per blue dot (left to right), the segment of its matched black
    /// dot: the bracket vector of the middle walk over the lower walk.
    pub fn u_vector(&self) -> Vec<usize> {
        self.partner_segments(self.lower_matching())
    }

    /// Per blue dot, the segment of the red dot matched to it in the
    /// modified diagram: the bracket vector of the upper walk.
    pub fn v_vector(&self) -> Vec<usize> {
        self.partner_segments(self.modified_upper_matching())
    }

    fn partner_segments(&self, pairs: Vec<(usize, usize)>) -> Vec<usize> {
        let dots = self.dots();
        let mut by_open: BTreeMap<usize, usize> = BTreeMap::new();
        for (open, close) in pairs {
            by_open.insert(open, dots[close].1);
        }
        by_open.into_values().collect()
    }

    /// First position (1-based) where the lower partner lands in a later
    /// segment than the modified upper partner, if any.
    pub fn forbidden_index(&self) -> Option<usize> {
        self.u_vector()
            .iter()
            .zip(self.v_vector())
            .position(|(u, v)| *u > v)
            .map(|k| k + 1)
    }

    pub fn write_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.alpha.len() {
            let mut toks: Vec<&str> = Vec::new();
            toks.extend(std::iter::repeat("b").take(self.alpha[r]));
            toks.push("|");
            toks.extend(std::iter::repeat("k").take(self.mu[r]));
            toks.push("|");
            toks.extend(std::iter::repeat("r").take(self.beta[r]));
            s.push_str(&toks.join(" "));
            s.push('\n');
        }
        for (name, pairs) in [
            ("lower", self.lower_matching()),
            ("upper", self.upper_matching()),
        ] {
            s.push_str(name);
            s.push(':');
            for (a, b) in pairs {
                s.push_str(&format!(" {a}-{b}"));
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut alpha = Vec::new();
        let mut mu = Vec::new();
        let mut beta = Vec::new();
        let mut matchings: Vec<(String, Vec<(usize, usize)>)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("lower:").or_else(|| line.strip_prefix("upper:")) {
                let name = &line[..5];
                let mut pairs = Vec::new();
                for tok in rest.split_whitespace() {
                    let (a, b) = tok
                        .split_once('-')
                        .ok_or_else(|| parse_err(format!("bad pair {tok:?}")))?;
                    let a = a.parse().map_err(|_| parse_err(format!("bad pair {tok:?}")))?;
                    let b = b.parse().map_err(|_| parse_err(format!("bad pair {tok:?}")))?;
                    pairs.push((a, b));
                }
                matchings.push((name.to_string(), pairs));
                continue;
            }
            let mut counts = [0usize; 3];
            let mut part = 0usize;
            for tok in line.split_whitespace() {
                match (tok, part) {
                    ("|", _) => part += 1,
                    ("b", 0) => counts[0] += 1,
                    ("k", 1) => counts[1] += 1,
                    ("r", 2) => counts[2] += 1,
                    _ => return Err(parse_err(format!("unexpected token {tok:?} in segment"))),
                }
            }
            if part != 2 {
                return Err(parse_err("segment line must contain two '|'".to_string()));
            }
            alpha.push(counts[0]);
            mu.push(counts[1]);
            beta.push(counts[2]);
        }
        let d = ArcDiagram::new(alpha, mu, beta)?;
        for (name, pairs) in matchings {
            let mut want = if name == "lower" {
                d.lower_matching()
            } else {
                d.upper_matching()
            };
            let mut got = pairs;
            want.sort();
            got.sort();
            if want != got {
                return Err(parse_err(format!(
                    "{name} matching is not the nested matching of the counts"
                )));
            }
        }
        Ok(d)
    }
}

impl fmt::Display for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.write_text())
    }
}

/// Triple of walks encoded by a diagram: the height profiles of the
/// lower, middle and upper walks are the blue, black and red counts.
pub fn xi(a: &ArcDiagram) -> (Walk, Walk, Walk) {
    let low = Walk::from_e_counts(a.alpha());
    let mid = Walk::from_e_counts(a.mu());
    let up = Walk::from_e_counts(a.beta());
    debug_assert!(is_above(&low, &mid) && is_above(&mid, &up));
    (low, mid, up)
}

pub fn xi_inverse(low: &Walk, mid: &Walk, up: &Walk) -> Result<ArcDiagram> {
    if low.endpoint() != mid.endpoint() || mid.endpoint() != up.endpoint() {
        return Err(domain_err("walks do not share an endpoint".to_string()));
    }
    if !is_above(low, mid) || !is_above(mid, up) {
        return Err(domain_err(
            "triple is not an increasing chain of walks".to_string(),
        ));
    }
    ArcDiagram::new(low.e_counts(), mid.e_counts(), up.e_counts())
}

/// The vertices of the quadrangulation read along the equatorial line,
/// from t on the left to s on the right. In between, the line passes
/// once through every other vertex, entering at s' and leaving at t'.
pub fn equatorial_line(sd: &SeparatingDecomposition) -> Result<Vec<usize>> {
    let m = sd.map();
    let [s, sp, t, tp] = sd.poles();
    let outer = m.outer_face();
    // green edges: vertex-face incidences at corners whose two edges
    // carry different colors
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); m.n_vertices()];
    let mut at_face: Vec<Vec<usize>> = vec![Vec::new(); m.n_faces()];
    for dart in 1..=m.n_darts() {
        let y = dart as Dart;
        let f = m.face_of(y);
        if f == outer {
            continue;
        }
        let x = m.sigma_inv(y);
        if sd.dart_color(x) != sd.dart_color(y) {
            at_vertex[m.vertex_of(y)].push(f);
            at_face[f].push(m.vertex_of(y));
        }
    }
    for v in 0..m.n_vertices() {
        let want = if v == s || v == t {
            0
        } else if v == sp || v == tp {
            1
        } else {
            2
        };
        if at_vertex[v].len() != want {
            return Err(domain_err(format!(
                "vertex {v} lies on {} bicolored corners, expected {want}",
                at_vertex[v].len()
            )));
        }
    }
    for f in 0..m.n_faces() {
        if f != outer && at_face[f].len() != 2 {
            return Err(domain_err(format!("inner face {f} has {} bicolored corners", at_face[f].len())));
        }
    }
    // trace the path s' .. t' alternating vertices and inner faces
    let mut order = vec![t, sp];
    let mut prev_face = usize::MAX;
    let mut cur = sp;
    while cur != tp {
        let f = *at_vertex[cur]
            .iter()
            .find(|&&f| f != prev_face)
            .ok_or_else(|| domain_err("equatorial line is stuck".to_string()))?;
        let next = *at_face[f]
            .iter()
            .find(|&&v| v != cur)
            .ok_or_else(|| domain_err("equatorial line is stuck".to_string()))?;
        order.push(next);
        prev_face = f;
        cur = next;
    }
    order.push(s);
    if order.len() != m.n_vertices() {
        return Err(domain_err(
            "equatorial line does not visit every vertex once".to_string(),
        ));
    }
    Ok(order)
}

/// Reduction of the 2-book embedding: erase s and t, keep one blue and
/// one red arc per black vertex, record the counts per segment between
/// consecutive white vertices.
pub fn chi(sd: &SeparatingDecomposition) -> Result<ArcDiagram> {
    let line = equatorial_line(sd)?;
    let [s, sp, t, tp] = sd.poles();
    let whites: Vec<usize> = line
        .iter()
        .copied()
        .filter(|&v| sd.quad().vcolor(v) == VColor::White)
        .collect();
    let (i, j) = sd.parameters();
    if whites.len() != j + 2 || whites[0] != sp || whites[j + 1] != tp {
        return Err(domain_err("white vertices out of order on the line".to_string()));
    }
    if sd.in_degree(tp, EColor::Blue) != 0 || sd.in_degree(sp, EColor::Red) != 0 {
        return Err(domain_err("unexpected indegree at an outer white vertex".to_string()));
    }
    let pos: BTreeMap<usize, usize> = line.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut alpha = Vec::with_capacity(j + 1);
    let mut mu = Vec::with_capacity(j + 1);
    let mut beta = Vec::with_capacity(j + 1);
    for r in 0..=j {
        alpha.push(sd.in_degree(whites[r], EColor::Blue));
        beta.push(sd.in_degree(whites[r + 1], EColor::Red));
        mu.push(pos[&whites[r + 1]] - pos[&whites[r]] - 1);
    }
    let blacks_outside = line
        .iter()
        .filter(|&&v| {
            sd.quad().vcolor(v) == VColor::Black
                && v != s
                && v != t
                && (pos[&v] < pos[&sp] || pos[&v] > pos[&tp])
        })
        .count();
    if blacks_outside != 0 {
        return Err(domain_err("black vertex outside the white span".to_string()));
    }
    let d = ArcDiagram::new(alpha, mu, beta)?;
    if d.parameters() != (i, j) {
        return Err(domain_err("diagram parameters disagree".to_string()));
    }
    Ok(d)
}

/// Rebuilds the separating decomposition from its arc diagram: lay the
/// line back down, restore the forced arcs of black vertices, then hang
/// every white vertex below the innermost arc that spans it (or on s
/// and t), and read the clockwise rotations off the half-circle
/// drawing.
pub fn chi_inverse(a: &ArcDiagram) -> Result<SeparatingDecomposition> {
    let (_, j) = a.parameters();
    // line vertex ids, left to right: t, then per segment its white and
    // blacks, then the last white, then s
    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    enum Site {
        Vertex(usize),
        // dots carry the vertex owning the arc end
        Dot(DotKind, usize),
    }
    let mut sites: Vec<Site> = Vec::new();
    let mut white_ids: Vec<usize> = Vec::new();
    let mut next_id = 0usize;
    let t_id = next_id;
    next_id += 1;
    sites.push(Site::Vertex(t_id));
    let mut black_sites_stub: Vec<Vec<usize>> = Vec::new(); // ids per segment
    for r in 0..=j {
        let w = next_id;
        next_id += 1;
        white_ids.push(w);
        sites.push(Site::Vertex(w));
        for _ in 0..a.alpha()[r] {
            sites.push(Site::Dot(DotKind::Blue, w));
        }
        let mut blacks_here = Vec::new();
        for _ in 0..a.mu()[r] {
            let b = next_id;
            next_id += 1;
            blacks_here.push(b);
            sites.push(Site::Dot(DotKind::Black, b));
        }
        black_sites_stub.push(blacks_here);
        // red dots of segment r belong to the next white, created below
        for _ in 0..a.beta()[r] {
            sites.push(Site::Dot(DotKind::Red, usize::MAX));
        }
    }
    let w_last = next_id;
    next_id += 1;
    white_ids.push(w_last);
    sites.push(Site::Vertex(w_last));
    let s_id = next_id;
    next_id += 1;
    sites.push(Site::Vertex(s_id));
    // fix up red dot owners now that all whites exist
    {
        let mut r = 0usize;
        for site in sites.iter_mut() {
            match site {
                Site::Vertex(v) if white_ids.contains(v) => {
                    r = white_ids.iter().position(|x| x == v).unwrap();
                }
                Site::Dot(DotKind::Red, owner) => {
                    *owner = white_ids[r + 1];
                }
                _ => {}
            }
        }
    }
    let nv = next_id;
    let coord_of_vertex: BTreeMap<usize, usize> = sites
        .iter()
        .enumerate()
        .filter_map(|(c, s)| match s {
            Site::Vertex(v) => Some((*v, c)),
            Site::Dot(DotKind::Black, b) => Some((*b, c)),
            _ => None,
        })
        .collect();
    // translate dot-index matchings into site coordinates
    let dot_sites: Vec<usize> = sites
        .iter()
        .enumerate()
        .filter_map(|(c, s)| matches!(s, Site::Dot(..)).then_some(c))
        .collect();
    struct Arc {
        left: usize,  // site coords
        right: usize,
        u: usize, // left vertex id
        v: usize, // right vertex id
        color: EColor,
        tail_left: bool,
    }
    let mut arcs: Vec<Arc> = Vec::new();
    for (bd, kd) in a.lower_matching() {
        let (lc, rc) = (dot_sites[bd], dot_sites[kd]);
        let Site::Dot(DotKind::Blue, w) = sites[lc] else { unreachable!() };
        let Site::Dot(DotKind::Black, b) = sites[rc] else { unreachable!() };
        arcs.push(Arc { left: lc, right: rc, u: w, v: b, color: EColor::Blue, tail_left: false });
    }
    for (kd, rd) in a.upper_matching() {
        let (lc, rc) = (dot_sites[kd], dot_sites[rd]);
        let Site::Dot(DotKind::Black, b) = sites[lc] else { unreachable!() };
        let Site::Dot(DotKind::Red, w) = sites[rc] else { unreachable!() };
        arcs.push(Arc { left: lc, right: rc, u: b, v: w, color: EColor::Red, tail_left: true });
    }
    let n_matched = arcs.len();
    // hang each white on the innermost spanning arc of each half
    for &w in &white_ids {
        let c = coord_of_vertex[&w];
        let innermost = |color: EColor, arcs: &[Arc]| -> Option<usize> {
            arcs.iter()
                .take(n_matched)
                .enumerate()
                .filter(|(_, arc)| arc.color == color && arc.left < c && c < arc.right)
                .max_by_key(|(_, arc)| arc.left)
                .map(|(k, _)| k)
        };
        let (bu, bv) = match innermost(EColor::Blue, &arcs) {
            Some(k) => (arcs[k].v, coord_of_vertex[&arcs[k].v]),
            None => (s_id, coord_of_vertex[&s_id]),
        };
        arcs.push(Arc { left: c, right: bv, u: w, v: bu, color: EColor::Blue, tail_left: true });
        let (ru, rv) = match innermost(EColor::Red, &arcs) {
            Some(k) => (arcs[k].u, coord_of_vertex[&arcs[k].u]),
            None => (t_id, coord_of_vertex[&t_id]),
        };
        arcs.push(Arc { left: rv, right: c, u: ru, v: w, color: EColor::Red, tail_left: false });
    }
    // clockwise rotations: at black vertices and t, arcs to the upper
    // right by decreasing extent then arcs to the lower left by
    // decreasing extent; at white vertices and s the mirrored rule
    let ne = arcs.len();
    let mut order_at: Vec<Vec<Dart>> = vec![Vec::new(); nv];
    let mut items: Vec<(usize, bool, Dart)> = Vec::new(); // vertex, is_left_end, dart
    for (k, arc) in arcs.iter().enumerate() {
        let (dl, dr) = ((2 * k + 1) as Dart, (2 * k + 2) as Dart);
        items.push((arc.u, true, dl));
        items.push((arc.v, false, dr));
    }
    for v in 0..nv {
        let mut lower_left: Vec<(usize, Dart)> = Vec::new();
        let mut lower_right: Vec<(usize, Dart)> = Vec::new();
        let mut upper_left: Vec<(usize, Dart)> = Vec::new();
        let mut upper_right: Vec<(usize, Dart)> = Vec::new();
        for &(vv, is_left, d) in &items {
            if vv != v {
                continue;
            }
            let arc = &arcs[(d as usize - 1) / 2];
            match (arc.color, is_left) {
                (EColor::Blue, true) => lower_right.push((arc.right, d)),
                (EColor::Blue, false) => lower_left.push((arc.left, d)),
                (EColor::Red, true) => upper_right.push((arc.right, d)),
                (EColor::Red, false) => upper_left.push((arc.left, d)),
            }
        }
        if !white_ids.contains(&v) {
            upper_right.sort_by_key(|&(rc, _)| std::cmp::Reverse(rc));
            lower_left.sort();
            let mut ord: Vec<Dart> = upper_right.iter().map(|&(_, d)| d).collect();
            ord.extend(lower_left.iter().map(|&(_, d)| d));
            order_at[v] = ord;
        } else {
            lower_right.sort();
            upper_left.sort_by_key(|&(lc, _)| std::cmp::Reverse(lc));
            let mut ord: Vec<Dart> = lower_right.iter().map(|&(_, d)| d).collect();
            ord.extend(upper_left.iter().map(|&(_, d)| d));
            order_at[v] = ord;
        }
    }
    // assemble the rotation map
    let nd = 2 * ne;
    let mut opp = vec![0 as Dart; nd + 1];
    let mut sigma = vec![0 as Dart; nd + 1];
    for k in 0..ne {
        opp[2 * k + 1] = (2 * k + 2) as Dart;
        opp[2 * k + 2] = (2 * k + 1) as Dart;
    }
    for v in 0..nv {
        let ord = &order_at[v];
        if ord.is_empty() {
            return Err(domain_err(format!("isolated vertex {v}")));
        }
        for k in 0..ord.len() {
            sigma[ord[k] as usize] = ord[(k + 1) % ord.len()];
        }
    }
    // root: the dart at s of the arc from the first white
    let root_arc = arcs
        .iter()
        .position(|arc| arc.u == white_ids[0] && arc.v == s_id)
        .ok_or_else(|| domain_err("first white vertex is not hung on s".to_string()))?;
    let root = (2 * root_arc + 2) as Dart;
    if order_at[s_id].first() != Some(&root) {
        return Err(domain_err("widest arc at s is not the root arc".to_string()));
    }
    let map = RotationMap::new(opp, sigma, root)?;
    let quad = Quadrangulation::from_map(map)?;
    let mut tail = Vec::with_capacity(ne);
    let mut color = Vec::with_capacity(ne);
    for (k, arc) in arcs.iter().enumerate() {
        let (dl, dr) = ((2 * k + 1) as Dart, (2 * k + 2) as Dart);
        tail.push(if arc.tail_left { dl } else { dr });
        color.push(arc.color);
    }
    SeparatingDecomposition::new(quad, tail, color)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::enumerate_sepdecs;
    use crate::planar::enumerate_quadrangulations;
    use crate::tamari::{enumerate_r, in_g};

    #[test]
    fn diagram_validation() {
        assert!(ArcDiagram::new(vec![0], vec![0], vec![0]).is_ok());
        assert!(ArcDiagram::new(vec![1, 0], vec![0, 1], vec![0, 1]).is_ok());
        assert!(ArcDiagram::new(vec![0, 1], vec![1, 0], vec![0, 1]).is_err());
        assert!(ArcDiagram::new(vec![1, 0], vec![0, 1], vec![1, 0]).is_err());
        assert!(ArcDiagram::new(vec![1], vec![1], vec![2]).is_err());
    }

    #[test]
    fn matchings_are_nested() {
        let d = ArcDiagram::new(vec![2, 1, 0], vec![1, 1, 1], vec![0, 1, 2]).unwrap();
        for (a, b) in d.lower_matching() {
            assert!(a < b);
        }
        for (a, b) in d.upper_matching() {
            assert!(a < b);
        }
        let back = ArcDiagram::parse_text(&d.write_text()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn xi_roundtrip_on_triples() {
        for n in 0..=4usize {
            for i in 0..=n {
                let j = n - i;
                for (l, m, u) in enumerate_r(i, j) {
                    let d = xi_inverse(&l, &m, &u).unwrap();
                    assert_eq!(xi(&d), (l, m, u));
                }
            }
        }
    }

    #[test]
    fn fixture_bracket_vectors() {
        let low: Walk = "EEENENENENNE".parse().unwrap();
        let mid: Walk = "EENNNEENEENE".parse().unwrap();
        let up: Walk = "ENNENENEENEE".parse().unwrap();
        let d = xi_inverse(&low, &mid, &up).unwrap();
        assert_eq!(d.u_vector(), vec![4, 0, 0, 4, 3, 3, 5]);
        assert_eq!(d.v_vector(), vec![5, 4, 0, 4, 2, 3, 5]);
        assert_eq!(d.forbidden_index(), Some(5));
        assert!(!in_g(&low, &mid, &up).unwrap());
    }

    #[test]
    fn chi_on_smallest_quad() {
        let quads = enumerate_quadrangulations(0, 0).unwrap();
        let sds = enumerate_sepdecs(&quads[0]);
        let d = chi(&sds[0]).unwrap();
        assert_eq!((d.alpha(), d.mu(), d.beta()), (&[0][..], &[0][..], &[0][..]));
        let back = chi_inverse(&d).unwrap();
        assert_eq!(back.canonical_key(), sds[0].canonical_key());
    }

    #[test]
    fn chi_roundtrip_exhaustive() {
        for n in 0..=3usize {
            for i in 0..=n {
                let j = n - i;
                let mut seen = std::collections::BTreeSet::new();
                for q in enumerate_quadrangulations(i, j).unwrap() {
                    for sd in enumerate_sepdecs(&q) {
                        let d = chi(&sd).unwrap();
                        let back = chi_inverse(&d).unwrap();
                        assert_eq!(back.canonical_key(), sd.canonical_key());
                        assert!(seen.insert(d.write_text()), "chi not injective");
                    }
                }
                // chi is onto the diagrams with these parameters, which
                // are in bijection with chain triples
                assert_eq!(seen.len(), enumerate_r(i, j).len());
            }
        }
    }

    #[test]
    fn z_pattern_matches_minimality() {
        for n in 0..=3usize {
            for i in 0..=n {
                let j = n - i;
                for q in enumerate_quadrangulations(i, j).unwrap() {
                    for sd in enumerate_sepdecs(&q) {
                        let d = chi(&sd).unwrap();
                        assert_eq!(sd.is_minimal(), !d.has_z_pattern());
                    }
                }
            }
        }
    }

    #[test]
    fn z_pattern_matches_interval_membership() {
        for n in 0..=4usize {
            for i in 0..=n {
                let j = n - i;
                for (l, m, u) in enumerate_r(i, j) {
                    let d = xi_inverse(&l, &m, &u).unwrap();
                    assert_eq!(in_g(&l, &m, &u).unwrap(), !d.has_z_pattern());
                    assert_eq!(
                        in_g(&l, &m, &u).unwrap(),
                        d.forbidden_index().is_none()
                    );
                }
            }
        }
    }
}
