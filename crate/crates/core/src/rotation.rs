//! Rooted combinatorial maps as rotation systems.
//!
//! Darts are numbered 1..=2E (index 0 unused). `sigma` sends a dart to the
//! next dart clockwise around its vertex; `opp` is the fixed-point-free
//! involution pairing the two darts of each edge. Faces are the orbits of
//! d -> sigma(opp(d)), which traces each face keeping it on the left; inner
//! faces run counterclockwise in a drawing, the outer face clockwise.
//!
//! The root dart is the departure dart of the root corner, so the face
//! containing the root dart is the outer face, and the outer orbit read
//! from the root lists the boundary vertices in clockwise order.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};

pub type Dart = u32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RotationMap {
    /// opp[d] for d in 1..=2E; entry 0 unused.
    opp: Vec<Dart>,
    /// sigma[d]: clockwise successor around the vertex of d; entry 0 unused.
    sigma: Vec<Dart>,
    root: Dart,
    /// vertex id of each dart; vertices numbered by smallest dart, in order.
    vertex_of: Vec<usize>,
    vertices: Vec<Vec<Dart>>,
    /// face id of each dart under d -> sigma(opp(d)).
    face_of: Vec<usize>,
    faces: Vec<Vec<Dart>>,
    /// edge id of each dart; edges sorted by smaller dart.
    edge_of: Vec<usize>,
    edges: Vec<(Dart, Dart)>,
}

impl RotationMap {
    pub fn new(opp: Vec<Dart>, sigma: Vec<Dart>, root: Dart) -> Result<Self> {
        let n = opp.len();
        if n != sigma.len() || n == 0 || (n - 1) % 2 != 0 {
            return Err(parse_err("dart arrays must share an even length".to_string()));
        }
        let nd = n - 1;
        let in_range = |d: Dart| d >= 1 && (d as usize) <= nd;
        if !in_range(root) {
            return Err(parse_err(format!("root dart {root} out of range")));
        }
        for d in 1..=nd {
            if !in_range(opp[d]) || !in_range(sigma[d]) {
                return Err(parse_err(format!("dart {d} maps out of range")));
            }
        }
        let mut seen = vec![false; n];
        for d in 1..=nd {
            if opp[d] as usize == d || opp[opp[d] as usize] as usize != d {
                return Err(parse_err(format!(
                    "opposite is not a fixed-point-free involution at dart {d}"
                )));
            }
            seen[sigma[d] as usize] = true;
        }
        if (1..=nd).any(|d| !seen[d]) {
            return Err(parse_err("sigma is not a permutation".to_string()));
        }
        // connectivity under the group generated by sigma and opp
        let mut comp = vec![false; n];
        let mut queue = VecDeque::from([root]);
        comp[root as usize] = true;
        while let Some(d) = queue.pop_front() {
            for e in [opp[d as usize], sigma[d as usize]] {
                if !comp[e as usize] {
                    comp[e as usize] = true;
                    queue.push_back(e);
                }
            }
        }
        if (1..=nd).any(|d| !comp[d]) {
            return Err(Error::Domain("map is not connected".to_string()));
        }
        let vertices = orbits(&sigma, nd);
        let mut vertex_of = vec![usize::MAX; n];
        for (v, orb) in vertices.iter().enumerate() {
            for &d in orb {
                vertex_of[d as usize] = v;
            }
        }
        let mut phi = vec![0 as Dart; n];
        for d in 1..=nd {
            phi[d] = sigma[opp[d] as usize];
        }
        let faces = orbits(&phi, nd);
        let mut face_of = vec![usize::MAX; n];
        for (f, orb) in faces.iter().enumerate() {
            for &d in orb {
                face_of[d as usize] = f;
            }
        }
        let v = vertices.len() as i64;
        let e = (nd / 2) as i64;
        let f = faces.len() as i64;
        if v - e + f != 2 {
            return Err(Error::Domain(format!(
                "rotation system has genus > 0 (V={v}, E={e}, F={f})"
            )));
        }
        let mut edges: Vec<(Dart, Dart)> = (1..=nd as Dart)
            .filter(|&d| d < opp[d as usize])
            .map(|d| (d, opp[d as usize]))
            .collect();
        edges.sort();
        let mut edge_of = vec![usize::MAX; n];
        for (k, &(a, b)) in edges.iter().enumerate() {
            edge_of[a as usize] = k;
            edge_of[b as usize] = k;
        }
        Ok(RotationMap {
            opp,
            sigma,
            root,
            vertex_of,
            vertices,
            face_of,
            faces,
            edge_of,
            edges,
        })
    }

    pub fn n_darts(&self) -> usize {
        self.opp.len() - 1
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn root(&self) -> Dart {
        self.root
    }

    pub fn opp(&self, d: Dart) -> Dart {
        self.opp[d as usize]
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d as usize]
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        let v = self.vertex_of[d as usize];
        let orb = &self.vertices[v];
        let k = orb.iter().position(|&x| x == d).unwrap();
        orb[(k + orb.len() - 1) % orb.len()]
    }

    /// Next dart of the face of d, keeping the face on the left.
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.opp[d as usize] as usize]
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.vertex_of[d as usize]
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d as usize]
    }

    pub fn edge_of(&self, d: Dart) -> usize {
        self.edge_of[d as usize]
    }

    /// Darts of vertex v in clockwise order, starting at the smallest dart.
    pub fn vertex_darts(&self, v: usize) -> &[Dart] {
        &self.vertices[v]
    }

    /// Darts of face f in traversal order, starting at the smallest dart.
    pub fn face_darts(&self, f: usize) -> &[Dart] {
        &self.faces[f]
    }

    pub fn edge_darts(&self, e: usize) -> (Dart, Dart) {
        self.edges[e]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    pub fn face_degree(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    pub fn outer_face(&self) -> usize {
        self.face_of(self.root)
    }

    /// The outer face orbit starting at the root dart; vertices appear in
    /// clockwise order around the map.
    pub fn outer_orbit(&self) -> Vec<Dart> {
        let mut out = vec![self.root];
        let mut d = self.phi(self.root);
        while d != self.root {
            out.push(d);
            d = self.phi(d);
        }
        out
    }

    /// The mirror image: rotations reversed, same edges, root moved so the
    /// root corner stays fixed.
    pub fn mirror(&self) -> RotationMap {
        let n = self.opp.len();
        let mut sigma_inv = vec![0 as Dart; n];
        for d in 1..n {
            sigma_inv[self.sigma[d] as usize] = d as Dart;
        }
        let root = sigma_inv[self.root as usize];
        RotationMap::new(self.opp.clone(), sigma_inv, root)
            .expect("mirror of a valid map is valid")
    }

    /// Breadth-first canonical relabeling from the root. Two rooted maps are
    /// isomorphic exactly when their canonical forms agree.
    pub fn canonical_form(&self) -> (Vec<Dart>, Vec<Dart>) {
        let n = self.opp.len();
        let mut label = vec![0 as Dart; n];
        let mut order: Vec<Dart> = Vec::with_capacity(n - 1);
        label[self.root as usize] = 1;
        order.push(self.root);
        let mut next = 2 as Dart;
        let mut head = 0;
        while head < order.len() {
            let d = order[head];
            head += 1;
            for e in [self.sigma[d as usize], self.opp[d as usize]] {
                if label[e as usize] == 0 {
                    label[e as usize] = next;
                    next += 1;
                    order.push(e);
                }
            }
        }
        let mut sigma_c = vec![0 as Dart; n];
        let mut opp_c = vec![0 as Dart; n];
        for d in 1..n {
            sigma_c[label[d] as usize] = label[self.sigma[d] as usize];
            opp_c[label[d] as usize] = label[self.opp[d] as usize];
        }
        (opp_c, sigma_c)
    }

    /// Canonical relabeling as above, with the old label of each new dart.
    pub fn canonical_order(&self) -> Vec<Dart> {
        let mut label = vec![0 as Dart; self.opp.len()];
        let mut order: Vec<Dart> = vec![self.root];
        label[self.root as usize] = 1;
        let mut head = 0;
        while head < order.len() {
            let d = order[head];
            head += 1;
            for e in [self.sigma[d as usize], self.opp[d as usize]] {
                if label[e as usize] == 0 {
                    label[e as usize] = (order.len() + 1) as Dart;
                    order.push(e);
                }
            }
        }
        order
    }

    /// The same rooted map with darts renamed in canonical traversal
    /// order (root becomes 1), plus the old label of each new dart.
    /// Two rooted maps are equal iff their canonicalized texts agree.
    pub fn canonicalize(&self) -> Result<(RotationMap, Vec<Dart>)> {
        let order = self.canonical_order();
        let n = self.opp.len();
        let mut label = vec![0 as Dart; n];
        for (k, &old) in order.iter().enumerate() {
            label[old as usize] = (k + 1) as Dart;
        }
        let mut opp_c = vec![0 as Dart; n];
        let mut sigma_c = vec![0 as Dart; n];
        for d in 1..n {
            opp_c[label[d] as usize] = label[self.opp[d] as usize];
            sigma_c[label[d] as usize] = label[self.sigma[d] as usize];
        }
        Ok((RotationMap::new(opp_c, sigma_c, 1)?, order))
    }

    /// A hashable key for rooted-map equality, extensible with per-edge
    /// annotations (orientation bits, colors) supplied per *dart* in old
    /// labels.
    pub fn canonical_key_with(&self, ann: impl Fn(Dart) -> u32) -> Vec<u32> {
        let (opp_c, sigma_c) = self.canonical_form();
        let order = self.canonical_order();
        let mut key: Vec<u32> = Vec::with_capacity(3 * order.len());
        key.extend(opp_c.iter().skip(1).copied());
        key.extend(sigma_c.iter().skip(1).copied());
        key.extend(order.iter().map(|&old| ann(old)));
        key
    }

    pub fn canonical_key(&self) -> Vec<u32> {
        self.canonical_key_with(|_| 0)
    }

    /// Serializes the header and permutation lines of the text format.
    pub fn write_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "map E={} root={}", self.n_edges(), self.root);
        let _ = write!(s, "opposite:");
        for d in 1..=self.n_darts() {
            let _ = write!(s, " {}", self.opp[d]);
        }
        let _ = writeln!(s);
        let _ = write!(s, "sigma:");
        for d in 1..=self.n_darts() {
            let _ = write!(s, " {}", self.sigma[d]);
        }
        let _ = writeln!(s);
        s
    }
}

fn orbits(perm: &[Dart], nd: usize) -> Vec<Vec<Dart>> {
    let mut seen = vec![false; nd + 1];
    let mut out = Vec::new();
    for start in 1..=nd {
        if seen[start] {
            continue;
        }
        let mut orb = Vec::new();
        let mut d = start as Dart;
        loop {
            seen[d as usize] = true;
            orb.push(d);
            d = perm[d as usize];
            if d as usize == start {
                break;
            }
        }
        out.push(orb);
    }
    out
}

/// Parses the `map` header plus `opposite:` and `sigma:` lines; returns the
/// map and the remaining lines (annotation rows of the concrete map kinds).
pub fn parse_map_text(text: &str) -> Result<(RotationMap, Vec<(String, Vec<String>)>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| parse_err("empty map text"))?;
    let mut e = None;
    let mut root = None;
    for tok in header.split_whitespace() {
        if tok == "map" {
            continue;
        }
        if let Some(v) = tok.strip_prefix("E=") {
            e = Some(v.parse::<usize>().map_err(|_| parse_err("bad E= value"))?);
        } else if let Some(v) = tok.strip_prefix("root=") {
            root = Some(v.parse::<Dart>().map_err(|_| parse_err("bad root= value"))?);
        } else {
            return Err(parse_err(format!("unexpected header token {tok:?}")));
        }
    }
    let e = e.ok_or_else(|| parse_err("missing E= in map header"))?;
    let root = root.ok_or_else(|| parse_err("missing root= in map header"))?;
    let mut opp = None;
    let mut sigma = None;
    let mut extra: Vec<(String, Vec<String>)> = Vec::new();
    for line in lines {
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(format!("expected `key: values` line, got {line:?}")))?;
        let toks: Vec<String> = rest.split_whitespace().map(|t| t.to_string()).collect();
        match key.trim() {
            "opposite" => opp = Some(parse_darts(&toks, 2 * e)?),
            "sigma" => sigma = Some(parse_darts(&toks, 2 * e)?),
            other => extra.push((other.to_string(), toks)),
        }
    }
    let opp = opp.ok_or_else(|| parse_err("missing opposite line"))?;
    let sigma = sigma.ok_or_else(|| parse_err("missing sigma line"))?;
    Ok((RotationMap::new(opp, sigma, root)?, extra))
}

fn parse_darts(toks: &[String], expect: usize) -> Result<Vec<Dart>> {
    if toks.len() != expect {
        return Err(parse_err(format!(
            "expected {expect} darts, found {}",
            toks.len()
        )));
    }
    let mut out = vec![0 as Dart];
    for t in toks {
        out.push(t.parse::<Dart>().map_err(|_| parse_err(format!("bad dart {t:?}")))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Quadrilateral: vertices 1..4 in a cycle, darts 2k-1 / 2k per edge.
    fn square() -> RotationMap {
        // edges: (1,2)=v1v2, (3,4)=v2v3, (5,6)=v3v4, (7,8)=v4v1
        let opp = vec![0, 2, 1, 4, 3, 6, 5, 8, 7];
        let sigma = vec![0, 8, 3, 2, 5, 4, 7, 6, 1];
        RotationMap::new(opp, sigma, 8).unwrap()
    }

    #[test]
    fn square_shape() {
        let m = square();
        assert_eq!(m.n_vertices(), 4);
        assert_eq!(m.n_edges(), 4);
        assert_eq!(m.n_faces(), 2);
        assert_eq!(m.degree(0), 2);
        assert_eq!(m.face_degree(m.outer_face()), 4);
        // the two faces partition the darts into odd and even
        let f1 = m.face_of(1);
        assert_eq!(m.face_of(3), f1);
        assert_eq!(m.face_of(5), f1);
        assert_eq!(m.face_of(7), f1);
        assert_ne!(m.face_of(2), f1);
    }

    #[test]
    fn outer_orbit_clockwise() {
        let m = square();
        let orbit = m.outer_orbit();
        assert_eq!(orbit.len(), 4);
        assert_eq!(orbit[0], m.root());
        // vertices around the outer face, starting at the root vertex
        let vs: Vec<usize> = orbit.iter().map(|&d| m.vertex_of(d)).collect();
        assert_eq!(vs.len(), 4);
        assert_eq!(vs[0], m.vertex_of(m.root()));
    }

    #[test]
    fn rejects_bad_input() {
        // fixed point in opp
        assert!(RotationMap::new(vec![0, 1, 2], vec![0, 2, 1], 1).is_err());
        // disconnected: two loops... use two separate digons
        let opp = vec![0, 2, 1, 4, 3, 6, 5, 8, 7];
        let sigma = vec![0, 3, 4, 1, 2, 7, 8, 5, 6];
        assert!(RotationMap::new(opp, sigma, 1).is_err());
    }

    #[test]
    fn mirror_involutive() {
        let m = square();
        let mm = m.mirror().mirror();
        assert_eq!(m.canonical_key(), mm.canonical_key());
        // the square is its own mirror image
        assert_eq!(m.canonical_key(), m.mirror().canonical_key());
    }

    #[test]
    fn canonical_invariant_under_relabeling() {
        let m = square();
        // relabel darts by a rotation of the names: d -> d mod 8 + 1 applied twice
        let perm: Vec<Dart> = vec![0, 3, 4, 5, 6, 7, 8, 1, 2];
        let inv: Vec<usize> = {
            let mut v = vec![0usize; 9];
            for d in 1..=8usize {
                v[perm[d] as usize] = d;
            }
            v
        };
        let m2 = {
            let mut opp = vec![0 as Dart; 9];
            let mut sigma = vec![0 as Dart; 9];
            for d in 1..=8usize {
                opp[d] = perm[m.opp(inv[d] as Dart) as usize];
                sigma[d] = perm[m.sigma(inv[d] as Dart) as usize];
            }
            RotationMap::new(opp, sigma, perm[m.root() as usize]).unwrap()
        };
        assert_eq!(m.canonical_key(), m2.canonical_key());
    }

    #[test]
    fn text_roundtrip() {
        let m = square();
        let text = m.write_text();
        let (m2, extra) = parse_map_text(&text).unwrap();
        assert!(extra.is_empty());
        assert_eq!(m.canonical_key(), m2.canonical_key());
        assert_eq!(m2.root(), 8);
    }

    #[test]
    fn genus_rejected() {
        // two vertices joined by three edges arranged to create genus:
        // sigma cycles chosen so that V - E + F != 2
        let opp = vec![0, 2, 1, 4, 3, 6, 5];
        // vertex A darts 1,3,5; vertex B darts 2,4,6
        let sigma = vec![0, 3, 4, 5, 6, 1, 2];
        // faces: phi = sigma . opp: 1->4->... compute: phi(1)=sigma(2)=4, phi(4)=sigma(3)=5,
        // phi(5)=sigma(6)=2, phi(2)=sigma(1)=3, phi(3)=sigma(4)=6, phi(6)=sigma(5)=1
        // single face of length 6: V=2, E=3, F=1 -> genus 1
        assert!(RotationMap::new(opp, sigma, 1).is_err());
    }
}
