//! 3-mobiles, bicolored ternary trees, and the maps linking them to
//! minimal Schnyder woods.
//!
//! Both tree kinds serialize as planted parenthesized terms; the writer
//! always picks the lexicographically smallest planting, so the emitted
//! string doubles as a canonical form.

use std::collections::BTreeSet;
use std::fmt;

use crate::bijection::bernardi_bonichon_details;
use crate::error::{domain_err, parse_err, Error, Result};
use crate::orientation::{minimal_wood, SchnyderWood, TriColor};
use crate::planar::Triangulation;
use crate::tamari::{position_types, PositionType};
use crate::rotation::{Dart, RotationMap};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MNode {
    Black,
    White,
    Leaf,
}

fn color_char(c: TriColor) -> char {
    match c {
        TriColor::Blue => 'b',
        TriColor::Green => 'g',
        TriColor::Red => 'r',
    }
}

fn next_color(c: TriColor) -> TriColor {
    match c {
        TriColor::Blue => TriColor::Green,
        TriColor::Green => TriColor::Red,
        TriColor::Red => TriColor::Blue,
    }
}

/// An unrooted plane tree with black/white nodes of degree 3, leaves of
/// degree 1 attached to black nodes only, and blue/green/red edges in
/// clockwise order around every node.
#[derive(Clone)]
pub struct Mobile {
    map: RotationMap,
    kind: Vec<MNode>,
    color: Vec<TriColor>,
}

impl Mobile {
    pub fn new(map: RotationMap, kind: Vec<MNode>, color: Vec<TriColor>) -> Result<Self> {
        if map.n_faces() != 1 {
            return Err(domain_err("underlying graph is not a tree"));
        }
        if kind.len() != map.n_vertices() || color.len() != map.n_edges() {
            return Err(domain_err("attribute lengths do not match the tree"));
        }
        let m = Mobile { map, kind, color };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let m = &self.map;
        for v in 0..m.n_vertices() {
            let deg = m.degree(v);
            match self.kind[v] {
                MNode::Leaf if deg == 1 => {}
                MNode::Black | MNode::White if deg == 3 => {}
                k => {
                    return Err(domain_err(format!(
                        "vertex {v} has degree {deg} but kind {k:?}"
                    )))
                }
            }
        }
        for e in 0..m.n_edges() {
            let (d1, d2) = m.edge_darts(e);
            let a = self.kind[m.vertex_of(d1)];
            let b = self.kind[m.vertex_of(d2)];
            let ok = matches!(
                (a, b),
                (MNode::Black, MNode::White)
                    | (MNode::White, MNode::Black)
                    | (MNode::Black, MNode::Leaf)
                    | (MNode::Leaf, MNode::Black)
            );
            if !ok {
                return Err(domain_err(format!(
                    "edge {e} joins {a:?} to {b:?}"
                )));
            }
        }
        // clockwise colors blue, green, red around every node
        for v in 0..m.n_vertices() {
            if self.kind[v] == MNode::Leaf {
                continue;
            }
            let darts = m.vertex_darts(v);
            let cols: Vec<TriColor> = darts.iter().map(|&d| self.color[m.edge_of(d)]).collect();
            let ok = (0..3).any(|r| (0..3).all(|k| next_color(cols[(r + k) % 3]) == cols[(r + k + 1) % 3]));
            if !ok {
                return Err(domain_err(format!(
                    "vertex {v} sees edge colors {cols:?} clockwise"
                )));
            }
        }
        if !self.kind.contains(&MNode::White) {
            return Err(domain_err("mobile needs at least one white node"));
        }
        // one more blue leg than blue plain edges
        let mut legs = 0usize;
        let mut plain = 0usize;
        for e in 0..m.n_edges() {
            if self.color[e] != TriColor::Blue {
                continue;
            }
            if self.edge_is_leg(e) {
                legs += 1;
            } else {
                plain += 1;
            }
        }
        if legs != plain + 1 {
            return Err(domain_err(format!(
                "expected one more blue leg than blue plain edges, got {legs} legs and {plain} plain"
            )));
        }
        Ok(())
    }

    pub fn map(&self) -> &RotationMap {
        &self.map
    }

    pub fn kind(&self, v: usize) -> MNode {
        self.kind[v]
    }

    pub fn edge_color(&self, e: usize) -> TriColor {
        self.color[e]
    }

    pub fn edge_is_leg(&self, e: usize) -> bool {
        let (d1, d2) = self.map.edge_darts(e);
        self.kind[self.map.vertex_of(d1)] == MNode::Leaf
            || self.kind[self.map.vertex_of(d2)] == MNode::Leaf
    }

    pub fn white_count(&self) -> usize {
        self.kind.iter().filter(|k| **k == MNode::White).count()
    }

    /// The dart at node v whose edge has the given color.
    fn color_dart(&self, v: usize, c: TriColor) -> Dart {
        *self
            .map
            .vertex_darts(v)
            .iter()
            .find(|&&d| self.color[self.map.edge_of(d)] == c)
            .expect("nodes carry all three colors")
    }

    /// Type of a black node whose blue edge is a leg, None otherwise.
    pub fn black_type(&self, v: usize) -> Option<PositionType> {
        if self.kind[v] != MNode::Black {
            return None;
        }
        let leg_of = |c: TriColor| self.edge_is_leg(self.map.edge_of(self.color_dart(v, c)));
        if !leg_of(TriColor::Blue) {
            return None;
        }
        if leg_of(TriColor::Red) {
            Some(PositionType::NN)
        } else if leg_of(TriColor::Green) {
            Some(PositionType::EE)
        } else {
            Some(PositionType::EN)
        }
    }

    /// (#EE, #NN, #EN) over the black nodes.
    pub fn type_counts(&self) -> (usize, usize, usize) {
        let mut ee = 0;
        let mut nn = 0;
        let mut en = 0;
        for v in 0..self.map.n_vertices() {
            match self.black_type(v) {
                Some(PositionType::EE) => ee += 1,
                Some(PositionType::NN) => nn += 1,
                Some(PositionType::EN) => en += 1,
                None => {}
            }
        }
        (ee, nn, en)
    }

    pub fn is_synchronized(&self) -> bool {
        self.type_counts().2 == 0
    }

    /// (i, j) with i+1 EE nodes and j+1 NN nodes; the mobile must be
    /// synchronized.
    pub fn syn_parameters(&self) -> Result<(usize, usize)> {
        let (ee, nn, en) = self.type_counts();
        if en != 0 {
            return Err(domain_err(format!(
                "mobile is not synchronized ({en} nodes keep only the blue leg)"
            )));
        }
        debug_assert!(ee >= 1 && nn >= 1);
        Ok((ee - 1, nn - 1))
    }

    fn planted_code(&self, leaf_dart: Dart, out: &mut String) {
        out.push(color_char(self.color[self.map.edge_of(leaf_dart)]));
        self.node_code(self.map.opp(leaf_dart), out);
    }

    fn node_code(&self, d_in: Dart, out: &mut String) {
        let v = self.map.vertex_of(d_in);
        if self.kind[v] == MNode::Leaf {
            out.push('*');
            return;
        }
        out.push(if self.kind[v] == MNode::Black { 'B' } else { 'W' });
        out.push('(');
        let mut e = self.map.sigma(d_in);
        while e != d_in {
            out.push(color_char(self.color[self.map.edge_of(e)]));
            self.node_code(self.map.opp(e), out);
            e = self.map.sigma(e);
        }
        out.push(')');
    }

    /// Canonical planted term: smallest code over all leaf plantings.
    pub fn write_text(&self) -> String {
        let mut best: Option<String> = None;
        for d in 1..=self.map.n_darts() as Dart {
            if self.kind[self.map.vertex_of(d)] != MNode::Leaf {
                continue;
            }
            let mut s = String::new();
            self.planted_code(d, &mut s);
            if best.as_ref().map_or(true, |b| s < *b) {
                best = Some(s);
            }
        }
        best.expect("mobiles have legs")
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let bytes = text.trim().as_bytes();
        let mut builder = TreeBuilder::new();
        let root_leaf = builder.new_vertex();
        let mut pos = 0usize;
        let color = parse_color(bytes, &mut pos)?;
        let (dl, dn) = builder.new_edge_darts(color);
        builder.rot[root_leaf].push(dl);
        let child = parse_mobile_node(bytes, &mut pos, &mut builder)?;
        if pos != bytes.len() {
            return Err(parse_err(format!("trailing input at byte {pos}")));
        }
        builder.rot[child].insert(0, dn);
        builder.finish_mobile(dl)
    }

    pub fn canonical_key(&self) -> String {
        self.write_text()
    }
}

impl fmt::Display for Mobile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.write_text())
    }
}

/// Rotation-list accumulator shared by the two tree parsers. Edge k owns
/// darts 2k+1 and 2k+2; vertices are caller-indexed until the final
/// renumbering by the rotation map.
struct TreeBuilder {
    rot: Vec<Vec<Dart>>,
    kinds: Vec<MNode>,
    colors: Vec<TriColor>,
    // ternary only: per edge, whether the first (2k+1) dart is the tail
    first_is_tail: Vec<bool>,
}

impl TreeBuilder {
    fn new() -> Self {
        TreeBuilder {
            rot: Vec::new(),
            kinds: Vec::new(),
            colors: Vec::new(),
            first_is_tail: Vec::new(),
        }
    }

    fn new_vertex(&mut self) -> usize {
        self.rot.push(Vec::new());
        self.kinds.push(MNode::Leaf);
        self.rot.len() - 1
    }

    fn new_edge_darts(&mut self, color: TriColor) -> (Dart, Dart) {
        let k = self.colors.len();
        self.colors.push(color);
        self.first_is_tail.push(true);
        ((2 * k + 1) as Dart, (2 * k + 2) as Dart)
    }

    fn build_map(&self, root: Dart) -> Result<RotationMap> {
        let nd = 2 * self.colors.len();
        let mut opp = vec![0 as Dart; nd + 1];
        let mut sigma = vec![0 as Dart; nd + 1];
        for k in 0..self.colors.len() {
            opp[2 * k + 1] = (2 * k + 2) as Dart;
            opp[2 * k + 2] = (2 * k + 1) as Dart;
        }
        for list in &self.rot {
            for (i, &d) in list.iter().enumerate() {
                sigma[d as usize] = list[(i + 1) % list.len()];
            }
        }
        RotationMap::new(opp, sigma, root)
    }

    fn finish_mobile(&self, root: Dart) -> Result<Mobile> {
        let map = self.build_map(root)?;
        let mut kind = vec![MNode::Leaf; map.n_vertices()];
        for (v, list) in self.rot.iter().enumerate() {
            let d = *list.first().ok_or_else(|| parse_err("isolated vertex"))?;
            kind[map.vertex_of(d)] = self.kinds[v];
        }
        Mobile::new(map, kind, self.colors.clone())
    }

    fn finish_ternary(&self, root: Dart) -> Result<TernaryTree> {
        let map = self.build_map(root)?;
        let tails = (0..self.colors.len())
            .map(|k| {
                if self.first_is_tail[k] {
                    (2 * k + 1) as Dart
                } else {
                    (2 * k + 2) as Dart
                }
            })
            .collect();
        TernaryTree::new(map, self.colors.clone(), tails)
    }
}

fn parse_color(bytes: &[u8], pos: &mut usize) -> Result<TriColor> {
    let c = bytes
        .get(*pos)
        .ok_or_else(|| parse_err("unexpected end of input"))?;
    *pos += 1;
    match c {
        b'b' => Ok(TriColor::Blue),
        b'g' => Ok(TriColor::Green),
        b'r' => Ok(TriColor::Red),
        other => Err(parse_err(format!("expected a color letter, got {:?}", *other as char))),
    }
}

fn parse_mobile_node(bytes: &[u8], pos: &mut usize, builder: &mut TreeBuilder) -> Result<usize> {
    let c = bytes
        .get(*pos)
        .ok_or_else(|| parse_err("unexpected end of input"))?;
    *pos += 1;
    let v = builder.new_vertex();
    match c {
        b'*' => Ok(v),
        b'B' | b'W' => {
            builder.kinds[v] = if *c == b'B' { MNode::Black } else { MNode::White };
            if bytes.get(*pos) != Some(&b'(') {
                return Err(parse_err("expected ( after a node letter"));
            }
            *pos += 1;
            while bytes.get(*pos) != Some(&b')') {
                let color = parse_color(bytes, pos)?;
                let (dh, dc) = builder.new_edge_darts(color);
                builder.rot[v].push(dh);
                let child = parse_mobile_node(bytes, pos, builder)?;
                builder.rot[child].insert(0, dc);
            }
            *pos += 1;
            Ok(v)
        }
        other => Err(parse_err(format!(
            "expected node letter or *, got {:?}",
            *other as char
        ))),
    }
}

/// A plane tree with degree-4 nodes and degree-1 leaves whose green/red
/// directed edges read, clockwise around every node: ingoing red,
/// outgoing green, outgoing red, ingoing green.
#[derive(Clone)]
pub struct TernaryTree {
    map: RotationMap,
    color: Vec<TriColor>,
    tail: Vec<Dart>,
}

impl TernaryTree {
    pub fn new(map: RotationMap, color: Vec<TriColor>, tail: Vec<Dart>) -> Result<Self> {
        if map.n_faces() != 1 {
            return Err(domain_err("underlying graph is not a tree"));
        }
        if color.len() != map.n_edges() || tail.len() != map.n_edges() {
            return Err(domain_err("attribute lengths do not match the tree"));
        }
        let t = TernaryTree { map, color, tail };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let m = &self.map;
        let mut has_node = false;
        for e in 0..m.n_edges() {
            if self.color[e] == TriColor::Blue {
                return Err(domain_err("ternary trees use green and red only"));
            }
            let (d1, d2) = m.edge_darts(e);
            if self.tail[e] != d1 && self.tail[e] != d2 {
                return Err(domain_err(format!("tail dart of edge {e} is not on the edge")));
            }
        }
        for v in 0..m.n_vertices() {
            let deg = m.degree(v);
            if deg == 1 {
                continue;
            }
            if deg != 4 {
                return Err(domain_err(format!("vertex {v} has degree {deg}")));
            }
            has_node = true;
            // clockwise: ingoing red, outgoing green, outgoing red,
            // ingoing green
            let want = [
                (TriColor::Red, false),
                (TriColor::Green, true),
                (TriColor::Red, true),
                (TriColor::Green, false),
            ];
            let darts = m.vertex_darts(v);
            let got: Vec<(TriColor, bool)> = darts
                .iter()
                .map(|&d| (self.color[m.edge_of(d)], self.dart_is_tail(d)))
                .collect();
            let ok = (0..4).any(|r| (0..4).all(|k| got[(r + k) % 4] == want[k]));
            if !ok {
                return Err(domain_err(format!(
                    "vertex {v} sees edge pattern {got:?} clockwise"
                )));
            }
        }
        if !has_node {
            return Err(domain_err("ternary tree needs at least one node"));
        }
        let (or, ir, og, ig) = self.leaf_census();
        if or != ir || og != ig {
            return Err(domain_err(format!(
                "unbalanced leaves: {or}/{ir} red out/in, {og}/{ig} green out/in"
            )));
        }
        Ok(())
    }

    pub fn map(&self) -> &RotationMap {
        &self.map
    }

    pub fn edge_color(&self, e: usize) -> TriColor {
        self.color[e]
    }

    pub fn dart_is_tail(&self, d: Dart) -> bool {
        self.tail[self.map.edge_of(d)] == d
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.map.degree(v) == 1
    }

    /// (outgoing red, ingoing red, outgoing green, ingoing green) leaf
    /// counts; a leaf is outgoing when its edge points from it to the
    /// tree.
    pub fn leaf_census(&self) -> (usize, usize, usize, usize) {
        let mut out = [0usize; 2];
        let mut inn = [0usize; 2];
        for v in 0..self.map.n_vertices() {
            if !self.is_leaf(v) {
                continue;
            }
            let d = self.map.vertex_darts(v)[0];
            let idx = if self.color[self.map.edge_of(d)] == TriColor::Red { 0 } else { 1 };
            if self.dart_is_tail(d) {
                out[idx] += 1;
            } else {
                inn[idx] += 1;
            }
        }
        (out[0], inn[0], out[1], inn[1])
    }

    /// (i, j) with i+1 outgoing red and j+1 outgoing green leaves.
    pub fn parameters(&self) -> (usize, usize) {
        let (or, _, og, _) = self.leaf_census();
        debug_assert!(or >= 1 && og >= 1);
        (or - 1, og - 1)
    }

    fn planted_code(&self, leaf_dart: Dart, out: &mut String) {
        out.push(color_char(self.color[self.map.edge_of(leaf_dart)]));
        out.push(if self.dart_is_tail(leaf_dart) { '>' } else { '<' });
        self.node_code(self.map.opp(leaf_dart), out);
    }

    fn node_code(&self, d_in: Dart, out: &mut String) {
        let v = self.map.vertex_of(d_in);
        if self.is_leaf(v) {
            out.push('*');
            return;
        }
        out.push('N');
        out.push('(');
        let mut e = self.map.sigma(d_in);
        while e != d_in {
            out.push(color_char(self.color[self.map.edge_of(e)]));
            out.push(if self.dart_is_tail(e) { '>' } else { '<' });
            self.node_code(self.map.opp(e), out);
            e = self.map.sigma(e);
        }
        out.push(')');
    }

    /// Canonical planted term: smallest code over all leaf plantings.
    pub fn write_text(&self) -> String {
        let mut best: Option<String> = None;
        for d in 1..=self.map.n_darts() as Dart {
            if !self.is_leaf(self.map.vertex_of(d)) {
                continue;
            }
            let mut s = String::new();
            self.planted_code(d, &mut s);
            if best.as_ref().map_or(true, |b| s < *b) {
                best = Some(s);
            }
        }
        best.expect("ternary trees have leaves")
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let bytes = text.trim().as_bytes();
        let mut builder = TreeBuilder::new();
        let root_leaf = builder.new_vertex();
        let mut pos = 0usize;
        let color = parse_color(bytes, &mut pos)?;
        let toward = parse_dir(bytes, &mut pos)?;
        let k = builder.colors.len();
        let (dl, dn) = builder.new_edge_darts(color);
        // '>' means directed from the planted leaf into the tree
        builder.first_is_tail[k] = toward;
        builder.rot[root_leaf].push(dl);
        let child = parse_ternary_node(bytes, &mut pos, &mut builder)?;
        if pos != bytes.len() {
            return Err(parse_err(format!("trailing input at byte {pos}")));
        }
        builder.rot[child].insert(0, dn);
        builder.finish_ternary(dl)
    }

    pub fn canonical_key(&self) -> String {
        self.write_text()
    }
}

impl fmt::Display for TernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.write_text())
    }
}

fn parse_dir(bytes: &[u8], pos: &mut usize) -> Result<bool> {
    let c = bytes
        .get(*pos)
        .ok_or_else(|| parse_err("unexpected end of input"))?;
    *pos += 1;
    match c {
        b'>' => Ok(true),
        b'<' => Ok(false),
        other => Err(parse_err(format!("expected > or <, got {:?}", *other as char))),
    }
}

fn parse_ternary_node(bytes: &[u8], pos: &mut usize, builder: &mut TreeBuilder) -> Result<usize> {
    let c = bytes
        .get(*pos)
        .ok_or_else(|| parse_err("unexpected end of input"))?;
    *pos += 1;
    let v = builder.new_vertex();
    match c {
        b'*' => Ok(v),
        b'N' => {
            if bytes.get(*pos) != Some(&b'(') {
                return Err(parse_err("expected ( after N"));
            }
            *pos += 1;
            while bytes.get(*pos) != Some(&b')') {
                let color = parse_color(bytes, pos)?;
                let toward = parse_dir(bytes, pos)?;
                let k = builder.colors.len();
                let (dh, dc) = builder.new_edge_darts(color);
                // '>' points from this node toward the child
                builder.first_is_tail[k] = toward;
                builder.rot[v].push(dh);
                let child = parse_ternary_node(bytes, pos, builder)?;
                builder.rot[child].insert(0, dc);
            }
            *pos += 1;
            Ok(v)
        }
        other => Err(parse_err(format!("expected N or *, got {:?}", *other as char))),
    }
}

/// A mobile built from a Schnyder wood, with the face that produced each
/// black node.
pub struct WoodMobile {
    pub mobile: Mobile,
    /// inner face id -> mobile vertex of its black node
    pub black_of_face: Vec<Option<usize>>,
}

/// Builds the mobile of a Schnyder wood: one black node per inner face,
/// the inner vertices as white nodes, one mobile edge per inner-face
/// corner (a plain edge when the boundary edge entering the corner
/// clockwise leaves its vertex, a leg when it arrives), colored by the
/// corner.
pub fn mobile_from(w: &SchnyderWood) -> Result<WoodMobile> {
    let m = w.map();
    let outer = m.outer_face();
    let n = w.tri().parameters();
    if n == 0 {
        return Err(domain_err("mobiles need at least one inner vertex"));
    }

    let mut rot: Vec<Vec<Dart>> = Vec::new();
    let mut kinds: Vec<MNode> = Vec::new();
    let mut colors: Vec<TriColor> = Vec::new();
    // whites first: one per inner vertex
    let mut white_id = vec![usize::MAX; m.n_vertices()];
    for v in 0..m.n_vertices() {
        if w.tri().is_inner_vertex(v) {
            white_id[v] = rot.len();
            rot.push(Vec::new());
            kinds.push(MNode::White);
        }
    }
    let new_edge = |colors: &mut Vec<TriColor>, c: TriColor| -> (Dart, Dart) {
        let k = colors.len();
        colors.push(c);
        ((2 * k + 1) as Dart, (2 * k + 2) as Dart)
    };
    // per white vertex, edge dart keyed by the outgoing wood dart
    let mut white_slot: Vec<Option<Dart>> = vec![None; m.n_darts() + 1];
    let mut black_of_face = vec![None; m.n_faces()];
    let mut face_black = Vec::new();
    for f in 0..m.n_faces() {
        if f == outer {
            continue;
        }
        let bid = rot.len();
        rot.push(Vec::new());
        kinds.push(MNode::Black);
        face_black.push((f, bid));
        // corners clockwise = reversed face orbit; the boundary edge
        // entering the corner clockwise is the edge of the orbit dart
        for &g in m.face_darts(f).iter().rev() {
            let c = w.corner_color(g);
            let plain = matches!(w.edge_info(m.edge_of(g)), Some((t, _)) if t == g);
            let (db, dother) = new_edge(&mut colors, c);
            rot[bid].push(db);
            if plain {
                if !w.tri().is_inner_vertex(m.vertex_of(g)) {
                    return Err(domain_err("outer vertex with an outgoing edge"));
                }
                white_slot[g as usize] = Some(dother);
            } else {
                rot.push(vec![dother]);
                kinds.push(MNode::Leaf);
            }
        }
    }
    for v in 0..m.n_vertices() {
        if !w.tri().is_inner_vertex(v) {
            continue;
        }
        for &d in m.vertex_darts(v) {
            if let Some(dart) = white_slot[d as usize] {
                rot[white_id[v]].push(dart);
            }
        }
        if rot[white_id[v]].len() != 3 {
            return Err(domain_err("inner vertex without three outgoing edges"));
        }
    }

    let nd = 2 * colors.len();
    let mut opp = vec![0 as Dart; nd + 1];
    let mut sigma = vec![0 as Dart; nd + 1];
    for k in 0..colors.len() {
        opp[2 * k + 1] = (2 * k + 2) as Dart;
        opp[2 * k + 2] = (2 * k + 1) as Dart;
    }
    for list in &rot {
        for (i, &d) in list.iter().enumerate() {
            sigma[d as usize] = list[(i + 1) % list.len()];
        }
    }
    let map = RotationMap::new(opp, sigma, 1)?;
    let mut kind = vec![MNode::Leaf; map.n_vertices()];
    for (v, list) in rot.iter().enumerate() {
        kind[map.vertex_of(list[0])] = kinds[v];
    }
    for (f, bid) in face_black {
        black_of_face[f] = Some(map.vertex_of(rot[bid][0]));
    }
    let mobile = Mobile::new(map, kind, colors)?;
    Ok(WoodMobile {
        mobile,
        black_of_face,
    })
}

/// Contracts a synchronized mobile to a bicolored ternary tree: plain
/// edges run black to white, blue plain edges collapse into nodes, and
/// the two legs of every typed black node disappear, leaving the node
/// itself as an outgoing leaf.
pub fn mobile_to_ternary(mob: &Mobile) -> Result<TernaryTree> {
    if !mob.is_synchronized() {
        return Err(domain_err(
            "mobile has a black node with only the blue leg; it cannot be contracted",
        ));
    }
    let m = mob.map();
    // each white joins its blue neighbor; typed blacks keep a blue leg
    let mut node_of = vec![usize::MAX; m.n_vertices()];
    let mut partner_blue: Vec<Option<Dart>> = vec![None; m.n_vertices()];
    let mut n_nodes = 0usize;
    for v in 0..m.n_vertices() {
        if mob.kind(v) != MNode::White {
            continue;
        }
        let bd = mob.color_dart(v, TriColor::Blue);
        let b = m.vertex_of(m.opp(bd));
        debug_assert_eq!(mob.kind(b), MNode::Black);
        node_of[v] = n_nodes;
        node_of[b] = n_nodes;
        partner_blue[v] = Some(bd);
        n_nodes += 1;
    }

    // one ternary edge per non-blue mobile edge that is not a leg of a
    // typed black; the tail always sits on the black side
    let mut tedge_of = vec![usize::MAX; m.n_edges()];
    let mut tcolors = Vec::new();
    let mut black_dart_of: Vec<Dart> = Vec::new();
    let mut other_dart_of: Vec<Dart> = Vec::new();
    let mut ne = 0usize;
    for e in 0..m.n_edges() {
        if mob.edge_color(e) == TriColor::Blue {
            continue;
        }
        let (d1, d2) = m.edge_darts(e);
        let (bd, od) = if mob.kind(m.vertex_of(d1)) == MNode::Black {
            (d1, d2)
        } else {
            (d2, d1)
        };
        let bv = m.vertex_of(bd);
        debug_assert_eq!(mob.kind(bv), MNode::Black);
        let typed = mob.black_type(bv).is_some();
        if typed && mob.kind(m.vertex_of(od)) == MNode::Leaf {
            continue; // deleted leg of a typed black
        }
        tedge_of[e] = ne;
        tcolors.push(mob.edge_color(e));
        black_dart_of.push((2 * ne + 1) as Dart);
        other_dart_of.push((2 * ne + 2) as Dart);
        ne += 1;
    }

    // rotation of a merged node: the black's two non-blue darts, then
    // the white's two, clockwise from each blue edge
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); n_nodes];
    for v in 0..m.n_vertices() {
        if mob.kind(v) != MNode::White {
            continue;
        }
        let wd = partner_blue[v].unwrap();
        let bd = m.opp(wd);
        let node = node_of[v];
        for x in [m.sigma(bd), m.sigma(m.sigma(bd))] {
            rot[node].push(black_dart_of[tedge_of[m.edge_of(x)]]);
        }
        for x in [m.sigma(wd), m.sigma(m.sigma(wd))] {
            rot[node].push(other_dart_of[tedge_of[m.edge_of(x)]]);
        }
    }
    // leaves: typed blacks and surviving mobile leaves
    for e in 0..m.n_edges() {
        let k = tedge_of[e];
        if k == usize::MAX {
            continue;
        }
        let (d1, d2) = m.edge_darts(e);
        for d in [d1, d2] {
            let v = m.vertex_of(d);
            let dart = if mob.kind(v) == MNode::Black {
                if mob.black_type(v).is_none() {
                    continue;
                }
                black_dart_of[k]
            } else if mob.kind(v) == MNode::Leaf {
                other_dart_of[k]
            } else {
                continue;
            };
            rot.push(vec![dart]);
        }
    }

    let nd = 2 * ne;
    let mut opp = vec![0 as Dart; nd + 1];
    let mut sigma = vec![0 as Dart; nd + 1];
    for k in 0..ne {
        opp[2 * k + 1] = (2 * k + 2) as Dart;
        opp[2 * k + 2] = (2 * k + 1) as Dart;
    }
    for list in &rot {
        for (i, &d) in list.iter().enumerate() {
            sigma[d as usize] = list[(i + 1) % list.len()];
        }
    }
    let map = RotationMap::new(opp, sigma, 1)?;
    let tails = (0..ne).map(|k| (2 * k + 1) as Dart).collect();
    TernaryTree::new(map, tcolors, tails)
}

/// Expands a ternary tree back into a synchronized mobile: every node
/// splits into a blue-joined black/white pair (the black keeps the two
/// outgoing slots), outgoing leaves become typed blacks with their two
/// legs restored, and ingoing leaves become legs of the black half.
pub fn ternary_to_mobile(t: &TernaryTree) -> Result<Mobile> {
    let m = t.map();
    let mut builder = TreeBuilder::new();
    // black and white halves per node
    let mut black_half = vec![usize::MAX; m.n_vertices()];
    let mut white_half = vec![usize::MAX; m.n_vertices()];
    for v in 0..m.n_vertices() {
        if t.is_leaf(v) {
            continue;
        }
        let b = builder.new_vertex();
        builder.kinds[b] = MNode::Black;
        let wv = builder.new_vertex();
        builder.kinds[wv] = MNode::White;
        let (db, dw) = builder.new_edge_darts(TriColor::Blue);
        builder.rot[b].push(db);
        builder.rot[wv].push(dw);
        black_half[v] = b;
        white_half[v] = wv;
    }
    // mobile darts per ternary dart: outgoing darts land on the black
    // half, ingoing on the white half; walking each node clockwise from
    // its ingoing-green slot keeps both halves in blue, green, red order
    let mut mdart = vec![0 as Dart; m.n_darts() + 1];
    for v in 0..m.n_vertices() {
        if t.is_leaf(v) {
            continue;
        }
        let darts = m.vertex_darts(v);
        let start = *darts
            .iter()
            .find(|&&d| t.edge_color(m.edge_of(d)) == TriColor::Green && !t.dart_is_tail(d))
            .expect("validated nodes have an ingoing green slot");
        // clockwise from in-green: in-green, in-red, out-green, out-red
        let seq = [
            start,
            m.sigma(start),
            m.sigma(m.sigma(start)),
            m.sigma(m.sigma(m.sigma(start))),
        ];
        for (idx, &d) in seq.iter().enumerate() {
            let color = t.edge_color(m.edge_of(d));
            let out = t.dart_is_tail(d);
            let want = [
                (TriColor::Green, false),
                (TriColor::Red, false),
                (TriColor::Green, true),
                (TriColor::Red, true),
            ];
            debug_assert_eq!((color, out), want[idx]);
            let other = m.vertex_of(m.opp(d));
            if t.is_leaf(other) {
                if out {
                    // ingoing leaf: a leg at the black half
                    let leaf = builder.new_vertex();
                    let (dn, dl) = builder.new_edge_darts(color);
                    builder.rot[black_half[v]].push(dn);
                    builder.rot[leaf].push(dl);
                } else {
                    // outgoing leaf: a typed black with restored legs
                    let tb = builder.new_vertex();
                    builder.kinds[tb] = MNode::Black;
                    let (dn, dw) = builder.new_edge_darts(color);
                    builder.rot[white_half[v]].push(dw);
                    // clockwise blue, green, red with the plain edge in
                    // the slot of its color
                    let lb = builder.new_vertex();
                    let (d_b, d_lb) = builder.new_edge_darts(TriColor::Blue);
                    builder.rot[lb].push(d_lb);
                    let lo = builder.new_vertex();
                    let other_color = if color == TriColor::Red {
                        TriColor::Green
                    } else {
                        TriColor::Red
                    };
                    let (d_o, d_lo) = builder.new_edge_darts(other_color);
                    builder.rot[lo].push(d_lo);
                    if color == TriColor::Red {
                        builder.rot[tb].extend([d_b, d_o, dn]);
                    } else {
                        builder.rot[tb].extend([d_b, dn, d_o]);
                    }
                }
            } else if out {
                // internal edge, this side is the tail: black half here
                // to white half there; created once from the tail side
                let (dn, dw) = builder.new_edge_darts(color);
                builder.rot[black_half[v]].push(dn);
                mdart[m.opp(d) as usize] = dw;
            } else {
                // head side: the edge was or will be created at the tail
                // side; defer by reserving the slot
                builder.rot[white_half[v]].push(0);
            }
        }
    }
    // second pass: fill the deferred head-side slots in rotation order
    for v in 0..m.n_vertices() {
        if t.is_leaf(v) {
            continue;
        }
        let mut slot_iter = builder.rot[white_half[v]]
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| i)
            .collect::<Vec<_>>()
            .into_iter();
        let darts = m.vertex_darts(v);
        let start = *darts
            .iter()
            .find(|&&d| t.edge_color(m.edge_of(d)) == TriColor::Green && !t.dart_is_tail(d))
            .unwrap();
        let seq = [
            start,
            m.sigma(start),
            m.sigma(m.sigma(start)),
            m.sigma(m.sigma(m.sigma(start))),
        ];
        for &d in &seq {
            let other = m.vertex_of(m.opp(d));
            if !t.dart_is_tail(d) && !t.is_leaf(other) {
                let slot = slot_iter.next().expect("reserved slot");
                builder.rot[white_half[v]][slot] = mdart[d as usize];
            }
        }
    }
    builder.finish_mobile(1)
}

/// All mobiles with n white nodes, via planted generation at a blue leg
/// and canonical deduplication.
pub fn enumerate_mobiles(n: usize) -> Result<Vec<Mobile>> {
    fn child_options(c: TriColor, max_w: usize) -> Vec<(String, usize)> {
        let mut out = vec![(format!("{}*", color_char(c)), 0)];
        for (s, wu) in white_nodes(c, max_w) {
            out.push((format!("{}{}", color_char(c), s), wu));
        }
        out
    }
    fn black_nodes(entry: TriColor, max_w: usize) -> Vec<(String, usize)> {
        let c1 = next_color(entry);
        let c2 = next_color(c1);
        let mut out = Vec::new();
        for (s1, w1) in child_options(c1, max_w) {
            for (s2, w2) in child_options(c2, max_w - w1) {
                out.push((format!("B({s1}{s2})"), w1 + w2));
            }
        }
        out
    }
    fn white_nodes(entry: TriColor, max_w: usize) -> Vec<(String, usize)> {
        if max_w == 0 {
            return Vec::new();
        }
        let c1 = next_color(entry);
        let c2 = next_color(c1);
        let mut out = Vec::new();
        for (s1, w1) in black_nodes(c1, max_w - 1) {
            for (s2, w2) in black_nodes(c2, max_w - 1 - w1) {
                out.push((
                    format!("W({}{s1}{}{s2})", color_char(c1), color_char(c2)),
                    1 + w1 + w2,
                ));
            }
        }
        out
    }
    if n == 0 {
        return Err(domain_err("mobiles need at least one white node"));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (code, w) in black_nodes(TriColor::Blue, n) {
        if w != n {
            continue;
        }
        let mob = Mobile::parse_text(&format!("b{code}"))?;
        if seen.insert(mob.canonical_key()) {
            out.push(mob);
        }
    }
    out.sort_by_key(|m| m.canonical_key());
    Ok(out)
}

/// Synchronized mobiles with i+1 EE and j+1 NN black nodes.
pub fn enumerate_syn_mobiles(i: usize, j: usize) -> Result<Vec<Mobile>> {
    Ok(enumerate_mobiles(i + j + 1)?
        .into_iter()
        .filter(|m| m.is_synchronized() && m.syn_parameters().unwrap() == (i, j))
        .collect())
}

/// Bicolored ternary trees with i+1 outgoing red and j+1 outgoing green
/// leaves, via planted generation and canonical deduplication.
pub fn enumerate_ternary(i: usize, j: usize) -> Result<Vec<TernaryTree>> {
    const PATTERN: [(TriColor, bool); 4] = [
        (TriColor::Red, false),
        (TriColor::Green, true),
        (TriColor::Red, true),
        (TriColor::Green, false),
    ];
    fn slot_of(color: TriColor, out: bool) -> usize {
        PATTERN.iter().position(|&p| p == (color, out)).unwrap()
    }
    fn nodes(entry_slot: usize, budget: usize) -> Vec<(String, usize)> {
        if budget == 0 {
            return Vec::new();
        }
        let mut out: Vec<(String, usize)> = vec![(String::from("N("), 1)];
        for k in 1..4 {
            let (color, outgoing) = PATTERN[(entry_slot + k) % 4];
            let ann = format!("{}{}", color_char(color), if outgoing { '>' } else { '<' });
            let mut next: Vec<(String, usize)> = Vec::new();
            for (prefix, used) in &out {
                next.push((format!("{prefix}{ann}*"), *used));
                let child_slot = slot_of(color, !outgoing);
                for (sub, su) in nodes(child_slot, budget.saturating_sub(*used)) {
                    if used + su <= budget {
                        next.push((format!("{prefix}{ann}{sub}"), used + su));
                    }
                }
            }
            out = next;
        }
        out.into_iter().map(|(s, u)| (s + ")", u)).collect()
    }
    let n = i + j + 1;
    let mut seen = BTreeSet::new();
    let mut result = Vec::new();
    for (color, toward) in [
        (TriColor::Red, true),
        (TriColor::Red, false),
        (TriColor::Green, true),
        (TriColor::Green, false),
    ] {
        // a '>' root edge points into the tree, so it is ingoing there
        let entry_slot = slot_of(color, !toward);
        for (code, used) in nodes(entry_slot, n) {
            if used != n {
                continue;
            }
            let text = format!(
                "{}{}{}",
                color_char(color),
                if toward { '>' } else { '<' },
                code
            );
            let t = TernaryTree::parse_text(&text)?;
            if t.parameters() != (i, j) {
                continue;
            }
            if seen.insert(t.canonical_key()) {
                result.push(t);
            }
        }
    }
    result.sort_by_key(|t| t.canonical_key());
    Ok(result)
}

/// Checks, for the minimal wood of a triangulation, that every position
/// of the associated Dyck-walk interval has the same type as the black
/// node of the face right of the corresponding parent edge. Returns the
/// position types.
pub fn verify_position_types(tri: &Triangulation) -> Result<Vec<PositionType>> {
    let w = minimal_wood(tri)?;
    let details = bernardi_bonichon_details(&w)?;
    let wm = mobile_from(&w)?;
    let m = w.map();
    let n = tri.parameters();
    let types = position_types(&details.gamma, &details.gamma_prime)?;
    if types.len() != n + 1 {
        return Err(Error::Verification(format!(
            "expected {} positions, canopies give {}",
            n + 1,
            types.len()
        )));
    }
    let mut used = vec![false; m.n_faces()];
    for (r, &pos) in types.iter().enumerate() {
        let f = m.face_of(m.opp(details.parent_tail[r]));
        if used[f] {
            return Err(Error::Verification(format!(
                "face {f} is hit by two positions"
            )));
        }
        used[f] = true;
        let bv = wm.black_of_face[f].ok_or_else(|| {
            Error::Verification(format!("position {r} points at the outer face"))
        })?;
        let bt = wm.mobile.black_type(bv).ok_or_else(|| {
            Error::Verification(format!("face {f} gives an untyped black node"))
        })?;
        if bt != pos {
            return Err(Error::Verification(format!(
                "position {r} has type {pos} but its black node has type {bt}"
            )));
        }
    }
    Ok(types)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::enumerate_woods;
    use crate::planar::enumerate_triangulations;
    use crate::tamari::{enumerate_g, enumerate_i};

    #[test]
    fn tetrahedron_mobile() {
        let tris = enumerate_triangulations(1).unwrap();
        let w = minimal_wood(&tris[0]).unwrap();
        let wm = mobile_from(&w).unwrap();
        let mob = &wm.mobile;
        assert_eq!(mob.white_count(), 1);
        assert_eq!(mob.map().n_vertices(), 1 + 3 + 6);
        assert_eq!(mob.type_counts(), (1, 1, 0));
        assert!(mob.is_synchronized());
        assert_eq!(mob.syn_parameters().unwrap(), (0, 0));
        let text = mob.write_text();
        let back = Mobile::parse_text(&text).unwrap();
        assert_eq!(back.write_text(), text);

        let all = enumerate_mobiles(1).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].canonical_key(), mob.canonical_key());
    }

    #[test]
    fn mobile_counts_match_intervals() {
        for n in 1..=3 {
            assert_eq!(
                enumerate_mobiles(n).unwrap().len(),
                enumerate_i(n).unwrap().len(),
                "white count {n}"
            );
        }
    }

    #[test]
    fn woods_build_distinct_mobiles() {
        for n in 1..=3 {
            let mut keys = BTreeSet::new();
            let mut total = 0usize;
            for tri in enumerate_triangulations(n).unwrap() {
                let w = minimal_wood(&tri).unwrap();
                let wm = mobile_from(&w).unwrap();
                assert_eq!(wm.mobile.white_count(), n);
                let (ee, nn, en) = wm.mobile.type_counts();
                assert_eq!(ee + nn + en, n + 1);
                assert!(keys.insert(wm.mobile.canonical_key()));
                total += 1;
            }
            assert_eq!(total, enumerate_i(n).unwrap().len());
            let enumerated: BTreeSet<String> = enumerate_mobiles(n)
                .unwrap()
                .iter()
                .map(|m| m.canonical_key())
                .collect();
            assert_eq!(keys, enumerated);
        }
    }

    #[test]
    fn position_types_line_up() {
        for n in 1..=3 {
            for tri in enumerate_triangulations(n).unwrap() {
                let types = verify_position_types(&tri).unwrap();
                assert_eq!(types.len(), n + 1);
            }
        }
    }

    #[test]
    fn every_wood_gives_a_valid_mobile() {
        for n in 1..=2 {
            for tri in enumerate_triangulations(n).unwrap() {
                for w in enumerate_woods(&tri) {
                    let wm = mobile_from(&w).unwrap();
                    assert_eq!(wm.mobile.white_count(), n);
                }
            }
        }
    }

    #[test]
    fn syn_counts_match_triple_chains() {
        for n in 0..=2 {
            for i in 0..=n {
                let j = n - i;
                assert_eq!(
                    enumerate_syn_mobiles(i, j).unwrap().len(),
                    enumerate_g(i, j).unwrap().len(),
                    "parameters ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn ternary_counts_match_triple_chains() {
        for n in 0..=2 {
            for i in 0..=n {
                let j = n - i;
                assert_eq!(
                    enumerate_ternary(i, j).unwrap().len(),
                    enumerate_g(i, j).unwrap().len(),
                    "parameters ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn contraction_round_trips() {
        for n in 0..=2 {
            for i in 0..=n {
                let j = n - i;
                let mobiles = enumerate_syn_mobiles(i, j).unwrap();
                let ternaries: BTreeSet<String> = enumerate_ternary(i, j)
                    .unwrap()
                    .iter()
                    .map(|t| t.canonical_key())
                    .collect();
                let mut images = BTreeSet::new();
                for mob in &mobiles {
                    let t = mobile_to_ternary(mob).unwrap();
                    assert_eq!(t.parameters(), (i, j));
                    let text = t.write_text();
                    assert_eq!(TernaryTree::parse_text(&text).unwrap().write_text(), text);
                    let back = ternary_to_mobile(&t).unwrap();
                    assert_eq!(back.canonical_key(), mob.canonical_key());
                    images.insert(t.canonical_key());
                }
                assert_eq!(images, ternaries, "parameters ({i},{j})");
            }
        }
    }

    #[test]
    fn smallest_ternary() {
        let mobiles = enumerate_syn_mobiles(0, 0).unwrap();
        assert_eq!(mobiles.len(), 1);
        let t = mobile_to_ternary(&mobiles[0]).unwrap();
        assert_eq!(t.map().n_vertices(), 5);
        assert_eq!(t.leaf_census(), (1, 1, 1, 1));
    }

    #[test]
    fn unsynchronized_mobiles_are_rejected() {
        let with_en: Vec<Mobile> = enumerate_mobiles(2)
            .unwrap()
            .into_iter()
            .filter(|m| !m.is_synchronized())
            .collect();
        assert!(!with_en.is_empty());
        for mob in with_en {
            match mobile_to_ternary(&mob) {
                Ok(_) => panic!("expected a domain error"),
                Err(e) => assert_eq!(e.exit_code(), 4),
            }
        }
    }

    #[test]
    fn serialization_round_trips() {
        for n in 1..=3 {
            for mob in enumerate_mobiles(n).unwrap() {
                let text = mob.write_text();
                assert_eq!(Mobile::parse_text(&text).unwrap().write_text(), text);
            }
        }
        for (i, j) in [(0, 1), (1, 0), (1, 1)] {
            for t in enumerate_ternary(i, j).unwrap() {
                let text = t.write_text();
                assert_eq!(TernaryTree::parse_text(&text).unwrap().write_text(), text);
            }
        }
    }
}
