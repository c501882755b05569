//! Checks of the transcribed running example against frozen values: the
//! (7,5) walk triple, its arc diagram, bracket vectors, tandem walks, and
//! the separating decomposition and bipolar orientation behind them.

use tamari_maps::bijection::{iota, lambda, phi_prime};
use tamari_maps::book::xi_inverse;
use tamari_maps::orientation::SeparatingDecomposition;
use tamari_maps::planar::BipolarOrientation;
use tamari_maps::tamari::{bracket_vector, in_g, leq_violation};
use tamari_maps::tandem::{sigma, TandemWalk};
use tamari_maps::walk::{is_above, Walk};

fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {path}: {e}"))
}

fn triple() -> (Walk, Walk, Walk) {
    let text = fixture("triple_75.txt");
    let mut lines = text.lines();
    let mut next = || lines.next().unwrap().parse::<Walk>().unwrap();
    (next(), next(), next())
}

#[test]
fn triple_endpoints() {
    let (low, mid, up) = triple();
    for w in [&low, &mid, &up] {
        assert_eq!(w.endpoint(), (7, 5));
    }
    assert!(is_above(&low, &mid));
    assert!(is_above(&mid, &up));
}

#[test]
fn bracket_vectors_and_verdict() {
    let (low, mid, up) = triple();
    assert_eq!(bracket_vector(&low, &mid).unwrap(), vec![4, 0, 0, 4, 3, 3, 5]);
    assert_eq!(bracket_vector(&low, &up).unwrap(), vec![5, 4, 0, 4, 2, 3, 5]);
    // the componentwise order test fails first at index 5 (1-based)
    assert_eq!(leq_violation(&low, &mid, &up).unwrap(), Some(5));
    assert!(!in_g(&low, &mid, &up).unwrap());
}

#[test]
fn arc_diagram_agrees() {
    let (low, mid, up) = triple();
    let d = xi_inverse(&low, &mid, &up).unwrap();
    assert_eq!(d.u_vector(), vec![4, 0, 0, 4, 3, 3, 5]);
    assert_eq!(d.v_vector(), vec![5, 4, 0, 4, 2, 3, 5]);
    assert_eq!(d.forbidden_index(), Some(5));
    assert!(d.has_z_pattern());
    assert_eq!(d.write_text(), fixture("arc_75.txt"));
}

#[test]
fn tandem_walk_and_half_turn() {
    let (low, mid, up) = triple();
    let w = sigma(&low, &mid, &up).unwrap();
    assert_eq!(format!("{w}\n"), fixture("tandem_75_32.txt"));
    assert_eq!((w.parameters(), w.start_y(), w.end_x()), ((7, 5), 3, 2));
    let t = w.tau();
    assert_eq!(format!("{t}\n"), fixture("tandem_75_23.txt"));
    assert_eq!((t.parameters(), t.start_y(), t.end_x()), ((7, 5), 2, 3));
    let parsed: TandemWalk = fixture("tandem_75_23.txt").trim().parse().unwrap();
    assert_eq!(parsed.tau(), w);
}

#[test]
fn sepdec_maps_back_to_the_triple() {
    let sd = SeparatingDecomposition::parse_text(&fixture("sepdec_75.txt")).unwrap();
    assert_eq!(sd.parameters(), (7, 5));
    // the triple is not in G, so the decomposition is not minimal
    assert!(!sd.is_minimal());
    let (low, mid, up) = phi_prime(&sd).unwrap();
    assert_eq!((low, mid, up), triple());
}

#[test]
fn bipolar_carries_the_tandem_walk() {
    let b = BipolarOrientation::parse_text(&fixture("bipolar_75.txt")).unwrap();
    assert_eq!(b.parameters(), (7, 5));
    assert_eq!(b.boundary_lengths(), (3, 2));
    let w = lambda(&b).unwrap();
    assert_eq!(format!("{w}\n"), fixture("tandem_75_32.txt"));
    let sd = SeparatingDecomposition::parse_text(&fixture("sepdec_75.txt")).unwrap();
    assert_eq!(
        iota(&b).unwrap().canonical_key(),
        sd.canonical_key()
    );
}

#[test]
fn four_cycle_fixture_is_the_unique_sepdec() {
    let sd = SeparatingDecomposition::parse_text(&fixture("q00_sepdec.txt")).unwrap();
    assert_eq!(sd.parameters(), (0, 0));
    assert!(sd.is_minimal());
    let (low, mid, up) = phi_prime(&sd).unwrap();
    assert_eq!(low.endpoint(), (0, 0));
    assert!(low.is_empty() && mid.is_empty() && up.is_empty());
}

#[test]
fn mobile_fixture_parses() {
    let text = fixture("mobile_2.txt");
    let mob = tamari_maps::mobile::Mobile::parse_text(text.trim()).unwrap();
    assert_eq!(mob.white_count(), 2);
}
