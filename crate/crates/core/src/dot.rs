//! DOT output for the map-shaped and tree-shaped objects.
//!
//! Plain DOT has no notion of an embedding, so every node line carries a
//! comment giving the clockwise edge order around that vertex; a renderer
//! that honors port order can reconstruct the rotation system from these.

use crate::error::{parse_err, Result};
use crate::mobile::{MNode, Mobile, TernaryTree};
use crate::orientation::{EColor, SchnyderWood, SeparatingDecomposition, TriColor};
use crate::planar::{BipolarOrientation, Quadrangulation, Triangulation, VColor};
use crate::rotation::RotationMap;
use std::fmt::Write as _;

fn cw_comment(m: &RotationMap, v: usize) -> String {
    let order: Vec<String> = m
        .vertex_darts(v)
        .iter()
        .map(|&d| format!("e{}", m.edge_of(d)))
        .collect();
    format!(" // cw: {}", order.join(" "))
}

fn node_line(out: &mut String, m: &RotationMap, v: usize, attrs: &[String]) {
    let attr_s = if attrs.is_empty() {
        String::new()
    } else {
        format!(" [{}]", attrs.join(", "))
    };
    let _ = writeln!(out, "  v{v}{attr_s};{}", cw_comment(m, v));
}

const FILLED: &str = "style=filled, fillcolor=black, fontcolor=white";

fn tri_color_name(c: TriColor) -> &'static str {
    match c {
        TriColor::Blue => "blue",
        TriColor::Green => "green",
        TriColor::Red => "red",
    }
}

pub fn quad_dot(q: &Quadrangulation) -> String {
    let m = q.map();
    let mut out = String::from("graph quadrangulation {\n  node [shape=circle];\n");
    for v in 0..m.n_vertices() {
        let mut attrs = Vec::new();
        if q.vcolor(v) == VColor::Black {
            attrs.push(FILLED.to_string());
        }
        node_line(&mut out, m, v, &attrs);
    }
    for e in 0..m.n_edges() {
        let (a, b) = m.edge_darts(e);
        let _ = writeln!(out, "  v{} -- v{}; // e{e}", m.vertex_of(a), m.vertex_of(b));
    }
    out.push_str("}\n");
    out
}

pub fn tri_dot(t: &Triangulation) -> String {
    let m = t.map();
    let mut out = String::from("graph triangulation {\n  node [shape=circle];\n");
    for v in 0..m.n_vertices() {
        node_line(&mut out, m, v, &[]);
    }
    for e in 0..m.n_edges() {
        let (a, b) = m.edge_darts(e);
        let _ = writeln!(out, "  v{} -- v{}; // e{e}", m.vertex_of(a), m.vertex_of(b));
    }
    out.push_str("}\n");
    out
}

pub fn sepdec_dot(sd: &SeparatingDecomposition) -> String {
    let m = sd.map();
    let [s, sp, t, tp] = sd.poles();
    let mut out = String::from("digraph sepdec {\n  node [shape=circle];\n");
    for v in 0..m.n_vertices() {
        let mut attrs = Vec::new();
        if sd.quad().vcolor(v) == VColor::Black {
            attrs.push(FILLED.to_string());
        }
        for (pole, name) in [(s, "s"), (sp, "s'"), (t, "t"), (tp, "t'")] {
            if v == pole {
                attrs.push(format!("label=\"{name}\""));
            }
        }
        node_line(&mut out, m, v, &attrs);
    }
    for e in 0..m.n_edges() {
        let tail = sd.tail_dart(e);
        let color = match sd.edge_color(e) {
            EColor::Blue => "blue",
            EColor::Red => "red",
        };
        let _ = writeln!(
            out,
            "  v{} -> v{} [color={color}]; // e{e}",
            m.vertex_of(tail),
            m.vertex_of(m.opp(tail))
        );
    }
    out.push_str("}\n");
    out
}

pub fn wood_dot(w: &SchnyderWood) -> String {
    let m = w.map();
    let outer = w.tri().outer_vertices();
    let mut out = String::from("digraph wood {\n  node [shape=circle];\n");
    for v in 0..m.n_vertices() {
        let mut attrs = Vec::new();
        for (k, &u) in outer.iter().enumerate() {
            if v == u {
                attrs.push(format!("label=\"a{}\"", k + 1));
            }
        }
        node_line(&mut out, m, v, &attrs);
    }
    for e in 0..m.n_edges() {
        match w.edge_info(e) {
            Some((tail, c)) => {
                let _ = writeln!(
                    out,
                    "  v{} -> v{} [color={}]; // e{e}",
                    m.vertex_of(tail),
                    m.vertex_of(m.opp(tail)),
                    tri_color_name(c)
                );
            }
            None => {
                let (a, b) = m.edge_darts(e);
                let _ = writeln!(
                    out,
                    "  v{} -> v{} [dir=none, color=gray]; // e{e} outer",
                    m.vertex_of(a),
                    m.vertex_of(b)
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn bipolar_dot(b: &BipolarOrientation) -> String {
    let m = b.map();
    let mut out = String::from("digraph bipolar {\n  node [shape=circle];\n");
    for v in 0..m.n_vertices() {
        let mut attrs = Vec::new();
        if v == b.source() {
            attrs.push("label=\"s\"".to_string());
        }
        if v == b.sink() {
            attrs.push("label=\"t\"".to_string());
        }
        node_line(&mut out, m, v, &attrs);
    }
    for e in 0..m.n_edges() {
        let (a, bb) = m.edge_darts(e);
        let tail = if b.dart_is_tail(a) { a } else { bb };
        let _ = writeln!(
            out,
            "  v{} -> v{}; // e{e}",
            m.vertex_of(tail),
            m.vertex_of(m.opp(tail))
        );
    }
    out.push_str("}\n");
    out
}

pub fn mobile_dot(mob: &Mobile) -> String {
    let m = mob.map();
    let mut out = String::from("graph mobile {\n");
    for v in 0..m.n_vertices() {
        let mut attrs = Vec::new();
        match mob.kind(v) {
            MNode::Black => attrs.push(format!("shape=circle, {FILLED}")),
            MNode::White => attrs.push("shape=circle".to_string()),
            MNode::Leaf => attrs.push("shape=point".to_string()),
        }
        node_line(&mut out, m, v, &attrs);
    }
    for e in 0..m.n_edges() {
        let (a, b) = m.edge_darts(e);
        let style = if mob.edge_is_leg(e) { ", style=dashed" } else { "" };
        let _ = writeln!(
            out,
            "  v{} -- v{} [color={}{style}]; // e{e}",
            m.vertex_of(a),
            m.vertex_of(b),
            tri_color_name(mob.edge_color(e))
        );
    }
    out.push_str("}\n");
    out
}

pub fn ternary_dot(t: &TernaryTree) -> String {
    let m = t.map();
    let mut out = String::from("digraph ternary {\n");
    for v in 0..m.n_vertices() {
        let shape = if t.is_leaf(v) {
            "shape=point".to_string()
        } else {
            "shape=circle".to_string()
        };
        node_line(&mut out, m, v, &[shape]);
    }
    for e in 0..m.n_edges() {
        let (a, b) = m.edge_darts(e);
        let tail = if t.dart_is_tail(a) { a } else { b };
        let _ = writeln!(
            out,
            "  v{} -> v{} [color={}]; // e{e}",
            m.vertex_of(tail),
            m.vertex_of(m.opp(tail)),
            tri_color_name(t.edge_color(e))
        );
    }
    out.push_str("}\n");
    out
}

/// Renders a serialized object without being told its type. Tries the
/// formats from most to least annotated; the annotation rows and the
/// validity checks keep the formats mutually exclusive.
pub fn render_auto(text: &str) -> Result<String> {
    if let Ok(sd) = SeparatingDecomposition::parse_text(text) {
        return Ok(sepdec_dot(&sd));
    }
    if let Ok(w) = SchnyderWood::parse_text(text) {
        return Ok(wood_dot(&w));
    }
    if let Ok(b) = BipolarOrientation::parse_text(text) {
        return Ok(bipolar_dot(&b));
    }
    if let Ok(q) = Quadrangulation::parse_text(text) {
        return Ok(quad_dot(&q));
    }
    if let Ok(t) = Triangulation::parse_text(text) {
        return Ok(tri_dot(&t));
    }
    if let Ok(mob) = Mobile::parse_text(text) {
        return Ok(mobile_dot(&mob));
    }
    if let Ok(t) = TernaryTree::parse_text(text) {
        return Ok(ternary_dot(&t));
    }
    Err(parse_err("input matches no renderable format".to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::enumerate_sepdecs;
    use crate::planar::enumerate_quadrangulations;

    #[test]
    fn four_cycle_sepdec_renders() {
        let quads = enumerate_quadrangulations(0, 0).unwrap();
        assert_eq!(quads.len(), 1);
        let sds = enumerate_sepdecs(&quads[0]);
        assert_eq!(sds.len(), 1);
        let dot = sepdec_dot(&sds[0]);
        assert_eq!(dot.matches("v").count() % 2, 0);
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 4);
        assert_eq!(dot.matches("color=blue").count(), 2);
        assert_eq!(dot.matches("color=red").count(), 2);
        assert_eq!(dot.lines().filter(|l| l.contains("shape=circle")).count(), 1);
        assert!(dot.starts_with("digraph sepdec {"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn sniffing_picks_the_right_renderer() {
        let quads = enumerate_quadrangulations(1, 0).unwrap();
        for q in &quads {
            let dot = render_auto(&q.write_text()).unwrap();
            assert!(dot.starts_with("graph quadrangulation"));
            for sd in enumerate_sepdecs(q) {
                let dot = render_auto(&sd.write_text()).unwrap();
                assert!(dot.starts_with("digraph sepdec"));
            }
        }
        let err = render_auto("not a map\n").unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn mobile_renders_as_unrooted_tree() {
        let mobs = crate::mobile::enumerate_mobiles(1).unwrap();
        for mob in &mobs {
            let dot = render_auto(&mob.write_text()).unwrap();
            assert!(dot.starts_with("graph mobile"));
            assert!(!dot.contains("->"));
        }
        let terns = crate::mobile::enumerate_ternary(0, 0).unwrap();
        for t in &terns {
            let dot = render_auto(&t.write_text()).unwrap();
            assert!(dot.starts_with("digraph ternary"));
        }
    }
}
