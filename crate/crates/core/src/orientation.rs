//! Edge bi/tri-colorations of planar maps subject to local rules:
//! separating decompositions on quadrangulations and Schnyder woods on
//! triangulations, with minimality tests via clockwise cycles.

use std::collections::BTreeSet;

use crate::error::{domain_err, parse_err, Result};
use crate::planar::{Quadrangulation, Triangulation, VColor};
use crate::rotation::{parse_map_text, Dart, RotationMap};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum EColor {
    Blue,
    Red,
}

impl EColor {
    pub fn flip(self) -> EColor {
        match self {
            EColor::Blue => EColor::Red,
            EColor::Red => EColor::Blue,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum TriColor {
    Blue,
    Green,
    Red,
}

/// A separating decomposition: every edge of a quadrangulation directed
/// and colored blue or red so that all edges at s are ingoing blue, all
/// edges at t are ingoing red, and around any other vertex the clockwise
/// order is: one outgoing blue, then a first block of ingoing edges, one
/// outgoing red, then a second block of ingoing edges. At a black vertex
/// the first block is blue and the second red; at a white vertex the
/// first block is red and the second blue.
#[derive(Clone)]
pub struct SeparatingDecomposition {
    quad: Quadrangulation,
    tail: Vec<Dart>,
    color: Vec<EColor>,
}

impl SeparatingDecomposition {
    pub fn new(quad: Quadrangulation, tail: Vec<Dart>, color: Vec<EColor>) -> Result<Self> {
        let s = SeparatingDecomposition { quad, tail, color };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let m = self.quad.map();
        if self.tail.len() != m.n_edges() || self.color.len() != m.n_edges() {
            return Err(parse_err("annotation length mismatch".to_string()));
        }
        for (e, &t) in self.tail.iter().enumerate() {
            let (a, b) = m.edge_darts(e);
            if t != a && t != b {
                return Err(parse_err(format!("tail dart {t} does not belong to edge {e}")));
            }
        }
        let [s, _sp, t, _tp] = self.quad.outer_vertices();
        for v in 0..m.n_vertices() {
            let darts = m.vertex_darts(v);
            if v == s || v == t {
                let want = if v == s { EColor::Blue } else { EColor::Red };
                for &d in darts {
                    if self.dart_is_tail(d) || self.dart_color(d) != want {
                        return Err(domain_err(format!(
                            "pole {v} must have only ingoing {want:?} edges"
                        )));
                    }
                }
                continue;
            }
            // locate the two outgoing darts
            let outs: Vec<usize> = (0..darts.len())
                .filter(|&k| self.dart_is_tail(darts[k]))
                .collect();
            if outs.len() != 2 {
                return Err(domain_err(format!("vertex {v} has {} outgoing edges", outs.len())));
            }
            let (b_pos, r_pos) = match (
                self.dart_color(darts[outs[0]]),
                self.dart_color(darts[outs[1]]),
            ) {
                (EColor::Blue, EColor::Red) => (outs[0], outs[1]),
                (EColor::Red, EColor::Blue) => (outs[1], outs[0]),
                _ => {
                    return Err(domain_err(format!(
                        "vertex {v} does not have one blue and one red outgoing edge"
                    )))
                }
            };
            // colors of the ingoing blocks, clockwise after the blue out
            let (first, second) = match self.quad.vcolor(v) {
                VColor::Black => (EColor::Blue, EColor::Red),
                VColor::White => (EColor::Red, EColor::Blue),
            };
            let deg = darts.len();
            let mut k = (b_pos + 1) % deg;
            while k != r_pos {
                if self.dart_color(darts[k]) != first {
                    return Err(domain_err(format!("bad local rule at vertex {v}")));
                }
                k = (k + 1) % deg;
            }
            let mut k = (r_pos + 1) % deg;
            while k != b_pos {
                if self.dart_color(darts[k]) != second {
                    return Err(domain_err(format!("bad local rule at vertex {v}")));
                }
                k = (k + 1) % deg;
            }
        }
        // blue edges form a tree on V\{t} directed toward s, red a tree
        // on V\{s} directed toward t
        self.check_tree(EColor::Blue, t, s)?;
        self.check_tree(EColor::Red, s, t)?;
        Ok(())
    }

    fn check_tree(&self, color: EColor, excluded: usize, root: usize) -> Result<()> {
        let m = self.quad.map();
        let n = m.n_vertices();
        for e in 0..m.n_edges() {
            if self.color[e] == color {
                let head = m.vertex_of(m.opp(self.tail[e]));
                let tl = m.vertex_of(self.tail[e]);
                if head == excluded || tl == excluded {
                    return Err(domain_err(format!("{color:?} edge at the wrong pole")));
                }
            }
        }
        for v in 0..n {
            if v == excluded || v == root {
                continue;
            }
            let mut cur = v;
            for _ in 0..=n {
                if cur == root {
                    break;
                }
                let out = self
                    .out_dart(cur, color)
                    .ok_or_else(|| domain_err(format!("vertex {cur} lacks a {color:?} parent")))?;
                cur = m.vertex_of(m.opp(out));
            }
            if cur != root {
                return Err(domain_err(format!("{color:?} edges do not form a tree")));
            }
        }
        Ok(())
    }

    pub fn quad(&self) -> &Quadrangulation {
        &self.quad
    }

    pub fn map(&self) -> &RotationMap {
        self.quad.map()
    }

    pub fn edge_color(&self, e: usize) -> EColor {
        self.color[e]
    }

    pub fn tail_dart(&self, e: usize) -> Dart {
        self.tail[e]
    }

    pub fn dart_is_tail(&self, d: Dart) -> bool {
        self.tail[self.map().edge_of(d)] == d
    }

    pub fn dart_color(&self, d: Dart) -> EColor {
        self.color[self.map().edge_of(d)]
    }

    /// The unique outgoing dart of the given color, if any.
    pub fn out_dart(&self, v: usize, color: EColor) -> Option<Dart> {
        self.map()
            .vertex_darts(v)
            .iter()
            .copied()
            .find(|&d| self.dart_is_tail(d) && self.dart_color(d) == color)
    }

    pub fn in_degree(&self, v: usize, color: EColor) -> usize {
        self.map()
            .vertex_darts(v)
            .iter()
            .filter(|&&d| !self.dart_is_tail(d) && self.dart_color(d) == color)
            .count()
    }

    /// [s, s', t, t']
    pub fn poles(&self) -> [usize; 4] {
        self.quad.outer_vertices()
    }

    /// (i, j): inner black and inner white vertex counts.
    pub fn parameters(&self) -> (usize, usize) {
        self.quad.parameters()
    }

    pub fn is_minimal(&self) -> bool {
        !has_clockwise_cycle(self.map(), &self.tail)
    }

    /// True when every inner white vertex has blue indegree m and s' has
    /// no ingoing blue edge.
    pub fn is_m_regular(&self, m: usize) -> bool {
        let [_, sp, _, tp] = self.poles();
        if self.in_degree(sp, EColor::Blue) != 0 {
            return false;
        }
        (0..self.map().n_vertices()).all(|v| {
            v == sp
                || v == tp
                || self.quad.vcolor(v) != VColor::White
                || self.in_degree(v, EColor::Blue) == m
        })
    }

    /// Re-roots at t and swaps the colors; poles s and t exchange, as do
    /// s' and t'.
    pub fn tau(&self) -> Result<SeparatingDecomposition> {
        let m = self.map();
        let new_root = m.outer_orbit()[2];
        let opp: Vec<Dart> = (0..=m.n_darts()).map(|d| if d == 0 { 0 } else { m.opp(d as Dart) }).collect();
        let sigma: Vec<Dart> = (0..=m.n_darts()).map(|d| if d == 0 { 0 } else { m.sigma(d as Dart) }).collect();
        let map = RotationMap::new(opp, sigma, new_root)?;
        let quad = Quadrangulation::from_map(map)?;
        let color: Vec<EColor> = self.color.iter().map(|c| c.flip()).collect();
        SeparatingDecomposition::new(quad, self.tail.clone(), color)
    }

    pub fn canonical_key(&self) -> Vec<u32> {
        self.map().canonical_key_with(|d| {
            let c = match self.dart_color(d) {
                EColor::Blue => 0,
                EColor::Red => 2,
            };
            c + if self.dart_is_tail(d) { 1 } else { 2 }
        })
    }

    /// The same decomposition with darts in canonical labeling.
    pub fn canonicalize(&self) -> Result<SeparatingDecomposition> {
        let m = self.map();
        let (m2, order) = m.canonicalize()?;
        let mut label = vec![0 as Dart; m.n_darts() + 1];
        for (k, &old) in order.iter().enumerate() {
            label[old as usize] = (k + 1) as Dart;
        }
        let mut vcolor = vec![VColor::White; m2.n_vertices()];
        for (v, c) in vcolor.iter_mut().enumerate() {
            let old_d = order[m2.vertex_darts(v)[0] as usize - 1];
            *c = self.quad.vcolor(m.vertex_of(old_d));
        }
        let ne = m2.n_edges();
        let mut tail = vec![0 as Dart; ne];
        let mut color = vec![EColor::Blue; ne];
        for e2 in 0..ne {
            let old_e = m.edge_of(order[m2.edge_darts(e2).0 as usize - 1]);
            tail[e2] = label[self.tail[old_e] as usize];
            color[e2] = self.color[old_e];
        }
        SeparatingDecomposition::new(Quadrangulation::new(m2, vcolor)?, tail, color)
    }

    pub fn write_text(&self) -> String {
        let m = self.map();
        let mut s = self.quad.write_text();
        s.push_str("edir:");
        for e in 0..m.n_edges() {
            let (a, _) = m.edge_darts(e);
            s.push_str(if self.tail[e] == a { " >" } else { " <" });
        }
        s.push_str("\necolor:");
        for e in 0..m.n_edges() {
            s.push_str(match self.color[e] {
                EColor::Blue => " b",
                EColor::Red => " r",
            });
        }
        s.push('\n');
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let (map, extra) = parse_map_text(text)?;
        let vcolor = crate::planar::parse_vcolor_rows(&map, &extra)?;
        let tail = crate::planar::parse_edir_row(&map, &extra)?
            .ok_or_else(|| parse_err("missing edir line".to_string()))?;
        let toks = find_row(&extra, "ecolor")
            .ok_or_else(|| parse_err("missing ecolor line".to_string()))?;
        if toks.len() != map.n_edges() {
            return Err(parse_err("ecolor length mismatch".to_string()));
        }
        let mut color = Vec::with_capacity(toks.len());
        for t in toks {
            color.push(match t.as_str() {
                "b" => EColor::Blue,
                "r" => EColor::Red,
                other => return Err(parse_err(format!("bad edge color {other:?}"))),
            });
        }
        let quad = match vcolor {
            Some(vc) => Quadrangulation::new(map, vc)?,
            None => Quadrangulation::from_map(map)?,
        };
        SeparatingDecomposition::new(quad, tail, color)
    }
}

fn find_row<'a>(extra: &'a [(String, Vec<String>)], key: &str) -> Option<&'a Vec<String>> {
    extra.iter().find(|(k, _)| k == key).map(|(_, v)| v)
}

/// All separating decompositions of a quadrangulation.
pub fn enumerate_sepdecs(quad: &Quadrangulation) -> Vec<SeparatingDecomposition> {
    let m = quad.map();
    let nd = m.n_darts();
    let [s, _sp, t, _tp] = quad.outer_vertices();
    // per dart: (color, outgoing at its vertex)
    let mut kind: Vec<Option<(EColor, bool)>> = vec![None; nd + 1];
    let force = |kind: &mut Vec<Option<(EColor, bool)>>, d: Dart, k: (EColor, bool)| -> bool {
        match kind[d as usize] {
            None => {
                kind[d as usize] = Some(k);
                true
            }
            Some(existing) => existing == k,
        }
    };
    for &d in m.vertex_darts(s) {
        force(&mut kind, d, (EColor::Blue, false));
        force(&mut kind, m.opp(d), (EColor::Blue, true));
    }
    for &d in m.vertex_darts(t) {
        if !force(&mut kind, d, (EColor::Red, false))
            || !force(&mut kind, m.opp(d), (EColor::Red, true))
        {
            return Vec::new(); // an s-t edge cannot be both blue and red
        }
    }
    let todo: Vec<usize> = (0..m.n_vertices()).filter(|&v| v != s && v != t).collect();
    let mut out = Vec::new();
    rec_sepdec(quad, &todo, 0, &mut kind, &mut out);
    out
}

fn rec_sepdec(
    quad: &Quadrangulation,
    todo: &[usize],
    idx: usize,
    kind: &mut Vec<Option<(EColor, bool)>>,
    out: &mut Vec<SeparatingDecomposition>,
) {
    let m = quad.map();
    if idx == todo.len() {
        let mut tail = Vec::with_capacity(m.n_edges());
        let mut color = Vec::with_capacity(m.n_edges());
        for e in 0..m.n_edges() {
            let (a, b) = m.edge_darts(e);
            let (ca, oa) = kind[a as usize].expect("all darts classified");
            tail.push(if oa { a } else { b });
            color.push(ca);
        }
        if let Ok(sd) = SeparatingDecomposition::new(quad.clone(), tail, color) {
            out.push(sd);
        }
        return;
    }
    let v = todo[idx];
    let darts = m.vertex_darts(v).to_vec();
    let deg = darts.len();
    let (first, second) = match quad.vcolor(v) {
        VColor::Black => (EColor::Blue, EColor::Red),
        VColor::White => (EColor::Red, EColor::Blue),
    };
    for b_pos in 0..deg {
        'rp: for r_pos in 0..deg {
            if r_pos == b_pos {
                continue;
            }
            // classification of v's darts for this choice of out-pair
            let mut assign: Vec<(Dart, (EColor, bool))> = Vec::with_capacity(deg);
            assign.push((darts[b_pos], (EColor::Blue, true)));
            assign.push((darts[r_pos], (EColor::Red, true)));
            let mut k = (b_pos + 1) % deg;
            while k != r_pos {
                assign.push((darts[k], (first, false)));
                k = (k + 1) % deg;
            }
            k = (r_pos + 1) % deg;
            while k != b_pos {
                assign.push((darts[k], (second, false)));
                k = (k + 1) % deg;
            }
            // apply with edge-consistency against the opposite darts
            let mut touched: Vec<Dart> = Vec::new();
            for &(d, (c, o)) in &assign {
                for (dd, want) in [(d, (c, o)), (m.opp(d), (c, !o))] {
                    match kind[dd as usize] {
                        None => {
                            kind[dd as usize] = Some(want);
                            touched.push(dd);
                        }
                        Some(existing) => {
                            if existing != want {
                                for &td in &touched {
                                    kind[td as usize] = None;
                                }
                                continue 'rp;
                            }
                        }
                    }
                }
            }
            rec_sepdec(quad, todo, idx + 1, kind, out);
            for &td in &touched {
                kind[td as usize] = None;
            }
        }
    }
}

/// The unique minimal separating decomposition of a quadrangulation.
pub fn minimal_sepdec(quad: &Quadrangulation) -> Result<SeparatingDecomposition> {
    let all = enumerate_sepdecs(quad);
    let mut min: Vec<SeparatingDecomposition> =
        all.into_iter().filter(|s| s.is_minimal()).collect();
    match min.len() {
        1 => Ok(min.pop().unwrap()),
        n => Err(domain_err(format!(
            "expected exactly one minimal separating decomposition, found {n}"
        ))),
    }
}

/// True if the directed subgraph given by `tails` (one tail dart per
/// directed edge) contains a cycle enclosing its interior on the right,
/// i.e. a clockwise cycle.
pub fn has_clockwise_cycle(map: &RotationMap, tails: &[Dart]) -> bool {
    let nv = map.n_vertices();
    let mut adj: Vec<Vec<Dart>> = vec![Vec::new(); nv];
    for &t in tails {
        adj[map.vertex_of(t)].push(t);
    }
    for v0 in 0..nv {
        let mut on_path = vec![false; nv];
        let mut path: Vec<Dart> = Vec::new();
        if dfs_cw(map, &adj, v0, v0, &mut on_path, &mut path) {
            return true;
        }
    }
    false
}

fn dfs_cw(
    map: &RotationMap,
    adj: &[Vec<Dart>],
    v0: usize,
    v: usize,
    on_path: &mut Vec<bool>,
    path: &mut Vec<Dart>,
) -> bool {
    on_path[v] = true;
    for &d in &adj[v] {
        let w = map.vertex_of(map.opp(d));
        if w == v0 && !path.is_empty() {
            path.push(d);
            let cw = cycle_is_clockwise(map, path);
            path.pop();
            if cw {
                on_path[v] = false;
                return true;
            }
        } else if w == v0 && path.is_empty() {
            // a 2-cycle needs two distinct edges; handled when path len 1
            path.push(d);
            // continue the search from w == v0? no: cycles through v0 twice
            path.pop();
        } else if w > v0 && !on_path[w] {
            path.push(d);
            if dfs_cw(map, adj, v0, w, on_path, path) {
                path.pop();
                on_path[v] = false;
                return true;
            }
            path.pop();
        }
    }
    on_path[v] = false;
    false
}

fn cycle_is_clockwise(map: &RotationMap, cycle: &[Dart]) -> bool {
    let blocked: BTreeSet<usize> = cycle.iter().map(|&d| map.edge_of(d)).collect();
    let start = map.face_of(map.opp(cycle[0]));
    let outer = map.outer_face();
    let mut seen = vec![false; map.n_faces()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(f) = stack.pop() {
        if f == outer {
            return false;
        }
        for &d in map.face_darts(f) {
            if blocked.contains(&map.edge_of(d)) {
                continue;
            }
            let g = map.face_of(map.opp(d));
            if !seen[g] {
                seen[g] = true;
                stack.push(g);
            }
        }
    }
    true
}

/// A Schnyder wood: the inner edges of a triangulation directed and
/// colored in three colors so that around each inner vertex the
/// clockwise order is out-blue, ingoing red block, out-green, ingoing
/// blue block, out-red, ingoing green block, and inner edges at the
/// outer vertices are all ingoing of that vertex's color. Outer corner
/// vertices clockwise from the root: blue, green, red.
#[derive(Clone)]
pub struct SchnyderWood {
    tri: Triangulation,
    /// per edge: tail dart and color for inner edges, None for the three
    /// outer edges
    orient: Vec<Option<(Dart, TriColor)>>,
}

impl SchnyderWood {
    pub fn new(tri: Triangulation, orient: Vec<Option<(Dart, TriColor)>>) -> Result<Self> {
        let w = SchnyderWood { tri, orient };
        w.validate()?;
        Ok(w)
    }

    fn validate(&self) -> Result<()> {
        let m = self.tri.map();
        if self.orient.len() != m.n_edges() {
            return Err(parse_err("annotation length mismatch".to_string()));
        }
        let outer_edges: BTreeSet<usize> =
            m.face_darts(m.outer_face()).iter().map(|&d| m.edge_of(d)).collect();
        for e in 0..m.n_edges() {
            match self.orient[e] {
                None => {
                    if !outer_edges.contains(&e) {
                        return Err(domain_err(format!("inner edge {e} is uncolored")));
                    }
                }
                Some((t, _)) => {
                    if outer_edges.contains(&e) {
                        return Err(domain_err(format!("outer edge {e} is colored")));
                    }
                    let (a, b) = m.edge_darts(e);
                    if t != a && t != b {
                        return Err(parse_err(format!("tail dart {t} not on edge {e}")));
                    }
                }
            }
        }
        let [ub, ug, ur] = self.tri.outer_vertices();
        for (u, c) in [(ub, TriColor::Blue), (ug, TriColor::Green), (ur, TriColor::Red)] {
            for &d in m.vertex_darts(u) {
                if let Some((t, col)) = self.orient[m.edge_of(d)] {
                    if t == d || col != c {
                        return Err(domain_err(format!(
                            "inner edges at outer vertex {u} must be ingoing {c:?}"
                        )));
                    }
                }
            }
        }
        for v in 0..m.n_vertices() {
            if !self.tri.is_inner_vertex(v) {
                continue;
            }
            let darts = m.vertex_darts(v);
            let pos = |c: TriColor| -> Result<usize> {
                let hits: Vec<usize> = (0..darts.len())
                    .filter(|&k| self.orient[m.edge_of(darts[k])] == Some((darts[k], c)))
                    .collect();
                if hits.len() != 1 {
                    return Err(domain_err(format!(
                        "vertex {v} has {} outgoing {c:?} edges",
                        hits.len()
                    )));
                }
                Ok(hits[0])
            };
            let (pb, pg, pr) = (pos(TriColor::Blue)?, pos(TriColor::Green)?, pos(TriColor::Red)?);
            let deg = darts.len();
            let check_block = |from: usize, to: usize, want: TriColor| -> Result<()> {
                let mut k = (from + 1) % deg;
                while k != to {
                    let d = darts[k];
                    match self.orient[m.edge_of(d)] {
                        Some((t, c)) if t != d && c == want => {}
                        _ => return Err(domain_err(format!("bad local rule at vertex {v}"))),
                    }
                    k = (k + 1) % deg;
                }
                Ok(())
            };
            check_block(pb, pg, TriColor::Red)?;
            check_block(pg, pr, TriColor::Blue)?;
            check_block(pr, pb, TriColor::Green)?;
        }
        // each color's edges form a tree on inner vertices plus its pole
        for (c, pole) in [
            (TriColor::Blue, ub),
            (TriColor::Green, ug),
            (TriColor::Red, ur),
        ] {
            let n = m.n_vertices();
            for v in 0..n {
                if !self.tri.is_inner_vertex(v) {
                    continue;
                }
                let mut cur = v;
                for _ in 0..=n {
                    if cur == pole {
                        break;
                    }
                    let out = self.out_dart(cur, c).ok_or_else(|| {
                        domain_err(format!("inner vertex {cur} lacks an outgoing {c:?} edge"))
                    })?;
                    cur = m.vertex_of(m.opp(out));
                }
                if cur != pole {
                    return Err(domain_err(format!("{c:?} edges do not reach their pole")));
                }
            }
        }
        self.check_corner_coloring()?;
        Ok(())
    }

    /// Every inner face must see its three corner colors pairwise
    /// distinct and, read along the face orbit, in the cyclic order
    /// blue, red, green.
    fn check_corner_coloring(&self) -> Result<()> {
        let m = self.tri.map();
        for f in 0..m.n_faces() {
            if f == m.outer_face() {
                continue;
            }
            let cols: Vec<TriColor> = m
                .face_darts(f)
                .iter()
                .map(|&d| self.corner_color(d))
                .collect();
            let want = [TriColor::Blue, TriColor::Red, TriColor::Green];
            let ok = (0..3).any(|r| (0..3).all(|k| cols[(r + k) % 3] == want[k]));
            if !ok {
                return Err(domain_err(format!(
                    "inner face {f} has corner colors {cols:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn tri(&self) -> &Triangulation {
        &self.tri
    }

    pub fn map(&self) -> &RotationMap {
        self.tri.map()
    }

    pub fn edge_info(&self, e: usize) -> Option<(Dart, TriColor)> {
        self.orient[e]
    }

    pub fn dart_is_tail(&self, d: Dart) -> bool {
        matches!(self.orient[self.map().edge_of(d)], Some((t, _)) if t == d)
    }

    pub fn out_dart(&self, v: usize, c: TriColor) -> Option<Dart> {
        self.map()
            .vertex_darts(v)
            .iter()
            .copied()
            .find(|&d| self.orient[self.map().edge_of(d)] == Some((d, c)))
    }

    pub fn in_degree(&self, v: usize, c: TriColor) -> usize {
        self.map()
            .vertex_darts(v)
            .iter()
            .filter(|&&d| {
                matches!(self.orient[self.map().edge_of(d)], Some((t, col)) if t != d && col == c)
            })
            .count()
    }

    /// [u_B, u_G, u_R]
    pub fn outer_vertices(&self) -> [usize; 3] {
        self.tri.outer_vertices()
    }

    /// Color of the corner between sigma^{-1}(d) and d at the vertex of
    /// d. At an outer vertex this is the vertex's color; at an inner
    /// vertex it is red between out-blue and out-green, blue between
    /// out-green and out-red, green between out-red and out-blue.
    pub fn corner_color(&self, d: Dart) -> TriColor {
        let m = self.map();
        let v = m.vertex_of(d);
        let [ub, ug, ur] = self.outer_vertices();
        if v == ub {
            return TriColor::Blue;
        } else if v == ug {
            return TriColor::Green;
        } else if v == ur {
            return TriColor::Red;
        }
        let darts = m.vertex_darts(v);
        let deg = darts.len();
        let posn = |x: Dart| darts.iter().position(|&y| y == x).unwrap();
        let pb = posn(self.out_dart(v, TriColor::Blue).unwrap());
        let pg = posn(self.out_dart(v, TriColor::Green).unwrap());
        let pr = posn(self.out_dart(v, TriColor::Red).unwrap());
        // the corner lies after its preceding dart, clockwise
        let prev = posn(m.sigma_inv(d));
        let dist = |from: usize, to: usize| (to + deg - from) % deg;
        let db = dist(pb, prev);
        if db < dist(pb, pg) {
            TriColor::Red
        } else if dist(pg, prev) < dist(pg, pr) {
            TriColor::Blue
        } else {
            TriColor::Green
        }
    }

    /// Minimality: no clockwise cycle among the inner directed edges.
    pub fn is_minimal(&self) -> bool {
        let tails: Vec<Dart> = self.orient.iter().filter_map(|o| o.map(|(t, _)| t)).collect();
        !has_clockwise_cycle(self.map(), &tails)
    }

    pub fn canonical_key(&self) -> Vec<u32> {
        self.map().canonical_key_with(|d| match self.orient[self.map().edge_of(d)] {
            None => 0,
            Some((t, c)) => {
                let base = match c {
                    TriColor::Blue => 1,
                    TriColor::Green => 3,
                    TriColor::Red => 5,
                };
                base + if t == d { 0 } else { 1 }
            }
        })
    }

    pub fn write_text(&self) -> String {
        let m = self.map();
        let mut s = self.tri.write_text();
        s.push_str("edir:");
        for e in 0..m.n_edges() {
            let (a, _) = m.edge_darts(e);
            s.push_str(match self.orient[e] {
                None => " -",
                Some((t, _)) => {
                    if t == a {
                        " >"
                    } else {
                        " <"
                    }
                }
            });
        }
        s.push_str("\necolor:");
        for e in 0..m.n_edges() {
            s.push_str(match self.orient[e] {
                None => " -",
                Some((_, TriColor::Blue)) => " b",
                Some((_, TriColor::Green)) => " g",
                Some((_, TriColor::Red)) => " r",
            });
        }
        s.push('\n');
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let (map, extra) = parse_map_text(text)?;
        let dirs = find_row(&extra, "edir")
            .ok_or_else(|| parse_err("missing edir line".to_string()))?;
        let cols = find_row(&extra, "ecolor")
            .ok_or_else(|| parse_err("missing ecolor line".to_string()))?;
        if dirs.len() != map.n_edges() || cols.len() != map.n_edges() {
            return Err(parse_err("annotation length mismatch".to_string()));
        }
        let mut orient = Vec::with_capacity(map.n_edges());
        for e in 0..map.n_edges() {
            let (a, b) = map.edge_darts(e);
            let t = match dirs[e].as_str() {
                "-" => None,
                ">" => Some(a),
                "<" => Some(b),
                other => return Err(parse_err(format!("bad edge direction {other:?}"))),
            };
            let c = match cols[e].as_str() {
                "-" => None,
                "b" => Some(TriColor::Blue),
                "g" => Some(TriColor::Green),
                "r" => Some(TriColor::Red),
                other => return Err(parse_err(format!("bad edge color {other:?}"))),
            };
            orient.push(match (t, c) {
                (None, None) => None,
                (Some(t), Some(c)) => Some((t, c)),
                _ => {
                    return Err(parse_err(format!(
                        "edge {e} must be both directed and colored, or neither"
                    )))
                }
            });
        }
        let tri = Triangulation::new(map)?;
        SchnyderWood::new(tri, orient)
    }
}

/// All Schnyder woods of a triangulation.
pub fn enumerate_woods(tri: &Triangulation) -> Vec<SchnyderWood> {
    let m = tri.map();
    let nd = m.n_darts();
    let [ub, ug, ur] = tri.outer_vertices();
    let outer_edges: BTreeSet<usize> =
        m.face_darts(m.outer_face()).iter().map(|&d| m.edge_of(d)).collect();
    // per dart on inner edges: (color, outgoing)
    let mut kind: Vec<Option<(TriColor, bool)>> = vec![None; nd + 1];
    for (u, c) in [(ub, TriColor::Blue), (ug, TriColor::Green), (ur, TriColor::Red)] {
        for &d in m.vertex_darts(u) {
            if outer_edges.contains(&m.edge_of(d)) {
                continue;
            }
            kind[d as usize] = Some((c, false));
            kind[m.opp(d) as usize] = Some((c, true));
        }
    }
    // an inner edge joining two outer vertices would have been forced
    // twice; check consistency
    for e in 0..m.n_edges() {
        if outer_edges.contains(&e) {
            continue;
        }
        let (a, b) = m.edge_darts(e);
        if let (Some((ca, oa)), Some((cb, ob))) = (kind[a as usize], kind[b as usize]) {
            if ca != cb || oa == ob {
                return Vec::new();
            }
        }
    }
    let todo: Vec<usize> = (0..m.n_vertices()).filter(|&v| tri.is_inner_vertex(v)).collect();
    let mut out = Vec::new();
    rec_wood(tri, &todo, 0, &mut kind, &outer_edges, &mut out);
    out
}

fn rec_wood(
    tri: &Triangulation,
    todo: &[usize],
    idx: usize,
    kind: &mut Vec<Option<(TriColor, bool)>>,
    outer_edges: &BTreeSet<usize>,
    out: &mut Vec<SchnyderWood>,
) {
    let m = tri.map();
    if idx == todo.len() {
        let mut orient = Vec::with_capacity(m.n_edges());
        for e in 0..m.n_edges() {
            if outer_edges.contains(&e) {
                orient.push(None);
                continue;
            }
            let (a, b) = m.edge_darts(e);
            let (ca, oa) = kind[a as usize].expect("all inner darts classified");
            orient.push(Some((if oa { a } else { b }, ca)));
        }
        if let Ok(w) = SchnyderWood::new(tri.clone(), orient) {
            out.push(w);
        }
        return;
    }
    let v = todo[idx];
    let darts = m.vertex_darts(v).to_vec();
    let deg = darts.len();
    for pb in 0..deg {
        for pg in 0..deg {
            if pg == pb {
                continue;
            }
            'pr: for pr in 0..deg {
                if pr == pb || pr == pg {
                    continue;
                }
                // clockwise sectors: b..g ingoing red, g..r ingoing blue,
                // r..b ingoing green
                let mut assign: Vec<(Dart, (TriColor, bool))> = vec![
                    (darts[pb], (TriColor::Blue, true)),
                    (darts[pg], (TriColor::Green, true)),
                    (darts[pr], (TriColor::Red, true)),
                ];
                let dist = |from: usize, to: usize| (to + deg - from) % deg;
                if !(dist(pb, pg) <= dist(pb, pr)) {
                    // require cw order b, g, r
                    continue;
                }
                for k in 0..deg {
                    if k == pb || k == pg || k == pr {
                        continue;
                    }
                    let c = if dist(pb, k) < dist(pb, pg) {
                        TriColor::Red
                    } else if dist(pg, k) < dist(pg, pr) {
                        TriColor::Blue
                    } else {
                        TriColor::Green
                    };
                    assign.push((darts[k], (c, false)));
                }
                let mut touched: Vec<Dart> = Vec::new();
                for &(d, (c, o)) in &assign {
                    for (dd, want) in [(d, (c, o)), (m.opp(d), (c, !o))] {
                        match kind[dd as usize] {
                            None => {
                                kind[dd as usize] = Some(want);
                                touched.push(dd);
                            }
                            Some(existing) => {
                                if existing != want {
                                    for &td in &touched {
                                        kind[td as usize] = None;
                                    }
                                    continue 'pr;
                                }
                            }
                        }
                    }
                }
                rec_wood(tri, todo, idx + 1, kind, outer_edges, out);
                for &td in &touched {
                    kind[td as usize] = None;
                }
            }
        }
    }
}

/// The unique minimal Schnyder wood of a triangulation.
pub fn minimal_wood(tri: &Triangulation) -> Result<SchnyderWood> {
    let mut min: Vec<SchnyderWood> = enumerate_woods(tri)
        .into_iter()
        .filter(|w| w.is_minimal())
        .collect();
    match min.len() {
        1 => Ok(min.pop().unwrap()),
        n => Err(domain_err(format!(
            "expected exactly one minimal Schnyder wood, found {n}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{enumerate_quadrangulations, enumerate_triangulations};
    use crate::tamari::{enumerate_g, enumerate_r};

    #[test]
    fn canonical_labels_pin_the_text() {
        for q in enumerate_quadrangulations(1, 1).unwrap() {
            for sd in enumerate_sepdecs(&q) {
                let c = sd.canonicalize().unwrap();
                assert_eq!(c.canonical_key(), sd.canonical_key());
                assert_eq!(c.canonicalize().unwrap().write_text(), c.write_text());
                let back = SeparatingDecomposition::parse_text(&c.write_text()).unwrap();
                assert_eq!(back.canonicalize().unwrap().write_text(), c.write_text());
            }
        }
    }

    #[test]
    fn four_cycle_sepdec() {
        let quads = enumerate_quadrangulations(0, 0).unwrap();
        assert_eq!(quads.len(), 1);
        let sds = enumerate_sepdecs(&quads[0]);
        assert_eq!(sds.len(), 1);
        let sd = &sds[0];
        assert!(sd.is_minimal());
        let [s, sp, t, tp] = sd.poles();
        assert_eq!(sd.in_degree(s, EColor::Blue), 2);
        assert_eq!(sd.in_degree(t, EColor::Red), 2);
        assert_eq!(sd.in_degree(sp, EColor::Blue), 0);
        assert_eq!(sd.in_degree(tp, EColor::Red), 0);
        let back = sd.tau().unwrap().tau().unwrap();
        assert_eq!(back.canonical_key(), sd.canonical_key());
    }

    #[test]
    fn sepdec_counts_match_triples() {
        for n in 0..=3usize {
            for i in 0..=n {
                let j = n - i;
                let mut total = 0usize;
                let mut minimal = 0usize;
                let quads = enumerate_quadrangulations(i, j).unwrap();
                for q in &quads {
                    let sds = enumerate_sepdecs(q);
                    total += sds.len();
                    minimal += sds.iter().filter(|s| s.is_minimal()).count();
                }
                assert_eq!(total, enumerate_r(i, j).len(), "({i},{j}) total");
                assert_eq!(minimal, quads.len(), "({i},{j}) minimal per quad");
                assert_eq!(minimal, enumerate_g(i, j).unwrap().len(), "({i},{j}) vs G");
            }
        }
    }

    #[test]
    fn tau_preserves_sepdec_structure() {
        for (i, j) in [(1usize, 1usize), (2, 0), (2, 1)] {
            for q in enumerate_quadrangulations(i, j).unwrap() {
                for sd in enumerate_sepdecs(&q) {
                    let t = sd.tau().unwrap();
                    assert_eq!(t.parameters(), (i, j));
                    let [s, sp, tt, tp] = sd.poles();
                    let [s2, sp2, tt2, tp2] = t.poles();
                    assert_eq!(t.map().degree(sp2), sd.map().degree(tp));
                    assert_eq!(t.map().degree(tp2), sd.map().degree(sp));
                    let _ = (s, tt, s2, tt2);
                    assert_eq!(t.is_minimal(), sd.is_minimal());
                    assert_eq!(t.tau().unwrap().canonical_key(), sd.canonical_key());
                }
            }
        }
    }

    #[test]
    fn sepdec_text_roundtrip() {
        for q in enumerate_quadrangulations(1, 1).unwrap() {
            for sd in enumerate_sepdecs(&q) {
                let sd2 = SeparatingDecomposition::parse_text(&sd.write_text()).unwrap();
                assert_eq!(sd2.canonical_key(), sd.canonical_key());
            }
        }
    }

    #[test]
    fn tetrahedron_wood() {
        let tris = enumerate_triangulations(1).unwrap();
        assert_eq!(tris.len(), 1);
        let woods = enumerate_woods(&tris[0]);
        assert_eq!(woods.len(), 1);
        let w = &woods[0];
        assert!(w.is_minimal());
        let [ub, ug, ur] = w.outer_vertices();
        let inner = (0..4).find(|&v| w.tri.is_inner_vertex(v)).unwrap();
        assert_eq!(w.in_degree(ub, TriColor::Blue), 1);
        assert_eq!(w.in_degree(ug, TriColor::Green), 1);
        assert_eq!(w.in_degree(ur, TriColor::Red), 1);
        for c in [TriColor::Blue, TriColor::Green, TriColor::Red] {
            assert!(w.out_dart(inner, c).is_some());
        }
    }

    #[test]
    fn wood_counts() {
        // all woods per n inner vertices match pairs of weakly ordered
        // Dyck walks, minimal woods match Tamari intervals
        let all_expect = [1usize, 3];
        let min_expect = [1usize, 3];
        for (n, (&ae, &me)) in (1..=2).zip(all_expect.iter().zip(min_expect.iter())) {
            let mut total = 0;
            let mut minimal = 0;
            for t in enumerate_triangulations(n).unwrap() {
                let ws = enumerate_woods(&t);
                total += ws.len();
                minimal += ws.iter().filter(|w| w.is_minimal()).count();
                assert_eq!(
                    ws.iter().filter(|w| w.is_minimal()).count(),
                    1,
                    "unique minimal wood"
                );
            }
            assert_eq!(total, ae, "woods n={n}");
            assert_eq!(minimal, me, "minimal woods n={n}");
        }
    }

    #[test]
    fn wood_text_roundtrip() {
        for t in enumerate_triangulations(2).unwrap() {
            for w in enumerate_woods(&t) {
                let w2 = SchnyderWood::parse_text(&w.write_text()).unwrap();
                assert_eq!(w2.canonical_key(), w.canonical_key());
            }
        }
    }
}
