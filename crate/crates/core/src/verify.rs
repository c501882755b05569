//! Exhaustive verification suites. Each suite replays one of the headline
//! identities over every object up to a size cap and reports the first
//! counterexample if anything breaks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use crate::bijection::{lambda, lambda_tilde, phi_prime, phi_prime_inverse};
use crate::book::{chi, xi_inverse};
use crate::error::{parse_err, Error, Result};
use crate::mobile::verify_position_types;
use crate::orientation::{enumerate_sepdecs, enumerate_woods, minimal_sepdec, minimal_wood};
use crate::planar::{enumerate_bipolar, enumerate_quadrangulations, enumerate_triangulations};
use crate::series::{
    check_rg_system, count_m_intervals, count_maps_refined, count_maps_total, f_series,
    verify_type_table,
};
use crate::tamari::{
    enumerate_g, enumerate_i, enumerate_m_intervals, enumerate_p, enumerate_r, in_g,
};
use crate::tandem::{enumerate_tandem, tau_triple, TandemStep};
use crate::walk::Walk;

/// Outcome of one suite run.
pub struct Report {
    pub suite: String,
    pub max: usize,
    pub instances: usize,
    pub pass: bool,
    pub counterexample: Option<String>,
    pub millis: u128,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "suite {} (max {}): {}, {} instances, {} ms",
            self.suite,
            self.max,
            if self.pass { "PASS" } else { "FAIL" },
            self.instances,
            self.millis
        )?;
        if let Some(ce) = &self.counterexample {
            write!(f, "\ncounterexample: {ce}")?;
        }
        Ok(())
    }
}

/// Suite names with their default size caps.
pub const SUITES: &[(&str, usize)] = &[
    ("theorem1", 4),
    ("theorem2", 3),
    ("corollary1", 5),
    ("proposition1", 4),
    ("lemmas", 4),
    ("kmsw-link", 4),
    ("counts", 4),
    ("series", 5),
];

/// Runs a suite at the given cap (its default when None). Verification
/// failures come back as a failing report; other errors propagate.
pub fn run_suite(name: &str, max: Option<usize>) -> Result<Report> {
    let (suite, default) = SUITES
        .iter()
        .find(|(s, _)| *s == name)
        .ok_or_else(|| parse_err(format!("unknown suite {name:?}")))?;
    let cap = max.unwrap_or(*default);
    let run: fn(usize) -> Result<usize> = match *suite {
        "theorem1" => suite_theorem1,
        "theorem2" => suite_theorem2,
        "corollary1" => suite_corollary1,
        "proposition1" => suite_proposition1,
        "lemmas" => suite_lemmas,
        "kmsw-link" => suite_kmsw_link,
        "counts" => suite_counts,
        "series" => suite_series,
        _ => unreachable!(),
    };
    let t0 = Instant::now();
    let (instances, pass, counterexample) = match run(cap) {
        Ok(n) => (n, true, None),
        Err(Error::Verification(msg)) => (0, false, Some(msg)),
        Err(e) => return Err(e),
    };
    Ok(Report {
        suite: suite.to_string(),
        max: cap,
        instances,
        pass,
        counterexample,
        millis: t0.elapsed().as_millis(),
    })
}

fn fail(msg: String) -> Error {
    Error::Verification(msg)
}

fn pairs_up_to(max: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=max).flat_map(move |n| (0..=n).map(move |i| (i, n - i)))
}

fn triple_text(t: &(Walk, Walk, Walk)) -> String {
    format!("{}\n{}\n{}", t.0, t.1, t.2)
}

/// Over every separating decomposition with i+j <= max: the walk image is
/// a valid nested triple, the map is injective and onto the triple family,
/// it round-trips through the book embedding, and minimality corresponds
/// exactly to interval membership.
fn suite_theorem1(max: usize) -> Result<usize> {
    let mut instances = 0;
    for (i, j) in pairs_up_to(max) {
        let mut images = BTreeSet::new();
        let mut minimal_images = BTreeSet::new();
        for q in enumerate_quadrangulations(i, j)? {
            for sd in enumerate_sepdecs(&q) {
                let (low, mid, up) = phi_prime(&sd)?;
                if low.endpoint() != (i, j) {
                    return Err(fail(format!(
                        "image of a ({i},{j}) object ends at {:?}:\n{}",
                        low.endpoint(),
                        sd.write_text()
                    )));
                }
                let tr = (low.clone(), mid.clone(), up.clone());
                let valid = crate::walk::is_above(&low, &mid)
                    && crate::walk::is_above(&low, &up)
                    && crate::walk::is_above(&mid, &up);
                if !valid {
                    return Err(fail(format!(
                        "image is not a nested triple:\n{}",
                        triple_text(&tr)
                    )));
                }
                let back = phi_prime_inverse(&low, &mid, &up)?;
                if back.canonical_key() != sd.canonical_key() {
                    return Err(fail(format!(
                        "round trip changed the object:\n{}",
                        sd.write_text()
                    )));
                }
                if !images.insert(tr.clone()) {
                    return Err(fail(format!(
                        "two objects share the image:\n{}",
                        triple_text(&tr)
                    )));
                }
                let minimal = sd.is_minimal();
                if minimal != in_g(&low, &mid, &up)? {
                    return Err(fail(format!(
                        "minimality is {minimal} but interval membership disagrees:\n{}",
                        triple_text(&tr)
                    )));
                }
                if minimal {
                    minimal_images.insert(tr);
                }
                instances += 1;
            }
        }
        let all: BTreeSet<(Walk, Walk, Walk)> = enumerate_r(i, j).into_iter().collect();
        if images != all {
            return Err(fail(format!(
                "images at ({i},{j}) miss {} triples",
                all.difference(&images).count()
            )));
        }
        let g: BTreeSet<(Walk, Walk, Walk)> = enumerate_g(i, j)?.into_iter().collect();
        if minimal_images != g {
            return Err(fail(format!(
                "minimal images at ({i},{j}) are not the interval family"
            )));
        }
    }
    Ok(instances)
}

/// Over every triangulation with up to max inner vertices: woods map
/// injectively onto the nested Dyck pairs, minimal woods onto the Dyck
/// intervals, and every position type matches its black node.
fn suite_theorem2(max: usize) -> Result<usize> {
    let mut instances = 0;
    for n in 1..=max {
        let mut pairs = BTreeSet::new();
        let mut minimal_pairs = BTreeSet::new();
        for tri in enumerate_triangulations(n)? {
            let minimal = minimal_wood(&tri)?;
            let min_key = minimal.canonical_key();
            for w in enumerate_woods(&tri) {
                let (g, gp) = crate::bijection::bernardi_bonichon(&w)?;
                if !g.is_dyck() || !gp.is_dyck() || !crate::walk::is_above(&g, &gp) {
                    return Err(fail(format!("walk pair is not nested Dyck: {g} / {gp}")));
                }
                if !pairs.insert((g.clone(), gp.clone())) {
                    return Err(fail(format!("two woods share the pair {g} / {gp}")));
                }
                if w.canonical_key() == min_key {
                    minimal_pairs.insert((g, gp));
                }
                instances += 1;
            }
            verify_position_types(&tri)?;
        }
        let all: BTreeSet<(Walk, Walk)> = enumerate_p(n).into_iter().collect();
        if pairs != all {
            return Err(fail(format!(
                "wood images at size {n} give {} of {} nested pairs",
                pairs.len(),
                all.len()
            )));
        }
        let intervals: BTreeSet<(Walk, Walk)> = enumerate_i(n)?.into_iter().collect();
        if minimal_pairs != intervals {
            return Err(fail(format!(
                "minimal wood images at size {n} are not the intervals"
            )));
        }
    }
    Ok(instances)
}

/// Over every nested triple with i+j <= max: the half-turn is an
/// involution on the family and preserves interval membership both ways.
fn suite_corollary1(max: usize) -> Result<usize> {
    let mut instances = 0;
    for (i, j) in pairs_up_to(max) {
        for (low, mid, up) in enumerate_r(i, j) {
            let (tl, tm, tu) = tau_triple(&low, &mid, &up)?;
            if tl.endpoint() != (i, j) {
                return Err(fail(format!(
                    "half-turn image ends at {:?}:\n{}",
                    tl.endpoint(),
                    triple_text(&(low, mid, up))
                )));
            }
            let (bl, bm, bu) = tau_triple(&tl, &tm, &tu)?;
            if (&bl, &bm, &bu) != (&low, &mid, &up) {
                return Err(fail(format!(
                    "half-turn is not involutive on:\n{}",
                    triple_text(&(low, mid, up))
                )));
            }
            if in_g(&low, &mid, &up)? != in_g(&tl, &tm, &tu)? {
                return Err(fail(format!(
                    "interval membership flips under the half-turn:\n{}",
                    triple_text(&(low, mid, up))
                )));
            }
            instances += 1;
        }
    }
    Ok(instances)
}

/// Over every plane bipolar orientation with i+j <= max: the tandem image
/// lands in the right boundary class, SE steps count the non-pole
/// vertices, the other steps reproduce the inner face types, and each
/// class is hit bijectively.
fn suite_proposition1(max: usize) -> Result<usize> {
    let mut instances = 0;
    for (i, j) in pairs_up_to(max) {
        let mut by_class: BTreeMap<(usize, usize), BTreeSet<String>> = BTreeMap::new();
        for b in enumerate_bipolar(i, j, None)? {
            let (a, bb) = b.boundary_lengths();
            let w = lambda(&b)?;
            if w.start_y() != a || w.end_x() != bb {
                return Err(fail(format!(
                    "image {w} is not in class [{a},{bb}]:\n{}",
                    b.write_text()
                )));
            }
            let se = w
                .steps()
                .iter()
                .filter(|s| matches!(s, TandemStep::SE))
                .count();
            if se != i {
                return Err(fail(format!(
                    "image {w} has {se} SE steps for {i} non-pole vertices"
                )));
            }
            let mut walk_types: Vec<(usize, usize)> = w
                .steps()
                .iter()
                .filter_map(|s| match s {
                    TandemStep::SE => None,
                    TandemStep::PQ(p, q) => Some((*p, *q)),
                })
                .collect();
            let m = b.map();
            let mut face_types: Vec<(usize, usize)> = (0..m.n_faces())
                .filter(|f| *f != m.outer_face())
                .map(|f| b.face_type(f))
                .collect::<Result<_>>()?;
            walk_types.sort_unstable();
            face_types.sort_unstable();
            if walk_types != face_types {
                return Err(fail(format!(
                    "face types {face_types:?} but walk steps {walk_types:?} for:\n{}",
                    b.write_text()
                )));
            }
            if !by_class.entry((a, bb)).or_default().insert(w.to_string()) {
                return Err(fail(format!("two orientations share the image {w}")));
            }
            instances += 1;
        }
        for (&(a, bb), images) in &by_class {
            let family: BTreeSet<String> = enumerate_tandem(i, j, a, bb)
                .into_iter()
                .map(|w| w.to_string())
                .collect();
            if *images != family {
                return Err(fail(format!(
                    "class ({i},{j})[{a},{bb}] has {} images for {} walks",
                    images.len(),
                    family.len()
                )));
            }
        }
        // classes never produced must be empty on the walk side too
        for a in 0..=i + j + 1 {
            for bb in 0..=i + j + 1 {
                if by_class.contains_key(&(a, bb)) {
                    continue;
                }
                let n = enumerate_tandem(i, j, a, bb).len();
                if n != 0 {
                    return Err(fail(format!(
                        "class ({i},{j})[{a},{bb}] has no orientations but {n} walks"
                    )));
                }
            }
        }
    }
    Ok(instances)
}

/// The crossing-pattern characterizations: a separating decomposition is
/// minimal exactly when its book embedding has no crossing pair
/// (i+j <= max), and a nested triple is an interval exactly when its arc
/// diagram has none (i+j <= max+1).
fn suite_lemmas(max: usize) -> Result<usize> {
    let mut instances = 0;
    for (i, j) in pairs_up_to(max) {
        for q in enumerate_quadrangulations(i, j)? {
            for sd in enumerate_sepdecs(&q) {
                let diagram = chi(&sd)?;
                if sd.is_minimal() != !diagram.has_z_pattern() {
                    return Err(fail(format!(
                        "minimality and the crossing pattern disagree on:\n{}",
                        sd.write_text()
                    )));
                }
                instances += 1;
            }
        }
    }
    for (i, j) in pairs_up_to(max + 1) {
        for (low, mid, up) in enumerate_r(i, j) {
            let diagram = xi_inverse(&low, &mid, &up)?;
            if in_g(&low, &mid, &up)? != !diagram.has_z_pattern() {
                return Err(fail(format!(
                    "interval membership and the crossing pattern disagree on:\n{}",
                    triple_text(&(low, mid, up))
                )));
            }
            instances += 1;
        }
    }
    Ok(instances)
}

/// The two tandem-walk readings of a bipolar orientation agree up to
/// mirror and half-turn: lambda(mirror(b)) = tau(lambda_tilde(b)).
fn suite_kmsw_link(max: usize) -> Result<usize> {
    let mut instances = 0;
    for (i, j) in pairs_up_to(max) {
        for b in enumerate_bipolar(i, j, None)? {
            let left = lambda(&b.mirror())?;
            let right = lambda_tilde(&b)?.tau();
            if left != right {
                return Err(fail(format!(
                    "readings disagree ({left} vs {right}) on:\n{}",
                    b.write_text()
                )));
            }
            instances += 1;
        }
    }
    Ok(instances)
}

/// Brute-force counts against the closed formulas: interval triples and
/// quadrangulations against the refined and total map formulas, and the
/// higher-arity interval counts (with their orientation filter) against
/// the one-parameter formula.
fn suite_counts(max: usize) -> Result<usize> {
    let mut instances = 0;
    for (i, j) in pairs_up_to(max) {
        let g = enumerate_g(i, j)?.len();
        let formula = count_maps_refined(i as u64, j as u64)?;
        if formula != g.into() {
            return Err(fail(format!(
                "interval count at ({i},{j}) is {g}, formula gives {formula}"
            )));
        }
        let q = enumerate_quadrangulations(i, j)?.len();
        if formula != q.into() {
            return Err(fail(format!(
                "map count at ({i},{j}) is {q}, formula gives {formula}"
            )));
        }
        instances += g + q;
    }
    for n in 1..=max {
        let total: num_bigint::BigInt = (0..=n)
            .map(|i| count_maps_refined(i as u64, (n - i) as u64))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum();
        if total != count_maps_total(n as u64)? {
            return Err(fail(format!("refined formula does not sum at size {n}")));
        }
        instances += 1;
    }
    for m in 1..=3usize {
        for n in 1..=max.saturating_sub(m - 1) {
            let brute = enumerate_m_intervals(m, n)?.len();
            let formula = count_m_intervals(m as u64, n as u64)?;
            if formula != brute.into() {
                return Err(fail(format!(
                    "interval count for arity {m} size {n} is {brute}, formula gives {formula}"
                )));
            }
            instances += brute;
        }
    }
    // orientation filter: quadrangulations whose minimal decomposition
    // gives every inner white vertex m ingoing blue edges
    for m in 1..=3usize {
        for n in 1.. {
            if n * (m + 1) > max {
                break;
            }
            let mut regular = 0usize;
            for q in enumerate_quadrangulations(m * n, n)? {
                if minimal_sepdec(&q)?.is_m_regular(m) {
                    regular += 1;
                }
            }
            let formula = count_m_intervals(m as u64, n as u64)?;
            if formula != regular.into() {
                return Err(fail(format!(
                    "filter count for arity {m} size {n} is {regular}, formula gives {formula}"
                )));
            }
            instances += regular;
        }
    }
    Ok(instances)
}

/// The power-series solution against brute force: the type table, the
/// diagonal, the z = 0 specialization, and the quadratic system itself.
fn suite_series(max: usize) -> Result<usize> {
    let mut instances = verify_type_table(max.min(5))?;
    let f = f_series(max as u32 + 1)?;
    let diag = f.eval_diagonal();
    for n in 1..=max.min(5) {
        let brute = enumerate_i(n)?.len();
        if diag[n + 1] != brute.into() {
            return Err(fail(format!(
                "diagonal coefficient {} at degree {} for {brute} intervals",
                diag[n + 1],
                n + 1
            )));
        }
        instances += 1;
    }
    for (i, j) in pairs_up_to(max.saturating_sub(1).min(4)) {
        let brute = enumerate_g(i, j)?.len();
        let c = f.coeff([i as u32 + 1, j as u32 + 1, 0]);
        if c != brute.into() {
            return Err(fail(format!(
                "z = 0 coefficient at ({i},{j}) is {c} for {brute} triples"
            )));
        }
        instances += 1;
    }
    check_rg_system(max as u32 + 1)?;
    instances += 1;
    Ok(instances)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for (name, small) in [
            ("theorem1", 2),
            ("theorem2", 2),
            ("corollary1", 3),
            ("proposition1", 2),
            ("lemmas", 2),
            ("kmsw-link", 2),
            ("counts", 3),
            ("series", 3),
        ] {
            let report = run_suite(name, Some(small)).unwrap();
            assert!(report.pass, "{report}");
            assert!(report.instances > 0, "{report}");
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let e = match run_suite("nope", None) {
            Err(e) => e,
            Ok(_) => panic!("expected an error"),
        };
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn report_formats() {
        let r = Report {
            suite: "counts".to_string(),
            max: 2,
            instances: 7,
            pass: true,
            counterexample: None,
            millis: 3,
        };
        assert_eq!(r.to_string(), "suite counts (max 2): PASS, 7 instances, 3 ms");
    }
}
