use super::*;
use crate::testkit::{
    grid_decomposition, grid_row_map, grid_row_quotient, grid_structure, wall_candidate,
};

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn map(s: &FiniteActionStructure, codomain: &[&str], images: &[usize]) -> StateMapEta {
    StateMapEta::new(s.carrier.clone(), labels(codomain), images.to_vec()).unwrap()
}

#[test]
fn identity_map_is_equivariant() {
    let g = grid_structure();
    let eta = StateMapEta::identity(&g.carrier);
    for mode in [Mode::Lenient, Mode::Strict] {
        assert!(check_equivariance(&g, &g, &eta, mode).unwrap().holds);
    }
}

#[test]
fn diagonal_collapse() {
    let g = grid_structure();
    // {w0, w3} -> z0, {w1, w2} -> z1
    let eta = map(&g, &["z0", "z1"], &[0, 1, 1, 0]);
    let z = quotient_action(&g, &eta).unwrap().unwrap();
    assert!(
        check_equivariance(&g, &z, &eta, Mode::Lenient)
            .unwrap()
            .holds
    );
    assert_eq!(z.compatibility_violation(), None);

    // w3 moved to z1 while keeping the induced action
    let bad = map(&g, &["z0", "z1"], &[0, 1, 1, 1]);
    let r = check_equivariance(&g, &z, &bad, Mode::Lenient).unwrap();
    let (a, w) = r.counterexample.unwrap();
    assert_eq!((g.elements[a].as_str(), g.carrier[w].as_str()), ("U", "w1"));
}

#[test]
fn quotients() {
    let g = grid_structure();
    // bijective: isomorphic copy
    let renamed = map(&g, &["a", "b", "c", "d"], &[0, 1, 2, 3]);
    let q = quotient_action(&g, &renamed).unwrap().unwrap();
    assert_eq!(q.act, g.act);

    // L-orbits {w0, w1}, {w2, w3}: L acts trivially
    let rows = grid_row_map(&g);
    let q = quotient_action(&g, &rows).unwrap().unwrap();
    let l = g.element("L").unwrap();
    assert_eq!(q.act[l], [Some(0), Some(1)]);

    // {w0, w1, w3} -> z0, w2 -> z1 is no congruence
    let eta = map(&g, &["z0", "z1"], &[0, 0, 1, 0]);
    let c = quotient_action(&g, &eta).unwrap().unwrap_err();
    assert_eq!(
        (
            g.elements[c.element].as_str(),
            g.carrier[c.point].as_str(),
            g.carrier[c.other].as_str()
        ),
        ("U", "w0", "w1")
    );
}

#[test]
fn off_image_points_are_only_fixed_by_identity() {
    let g = grid_structure();
    let eta = map(&g, &["z0", "z1", "spare"], &[0, 0, 1, 1]);
    let q = quotient_action(&g, &eta).unwrap().unwrap();
    for a in 0..q.elements.len() {
        let expect = (a == q.identity).then_some(2);
        assert_eq!(q.act[a][2], expect);
    }
}

#[test]
fn strict_mode_requires_matching_undefinedness() {
    let g = grid_structure();
    let mut partial = g.clone();
    let u = g.element("U").unwrap();
    partial.act[u][0] = None;
    let eta = StateMapEta::identity(&g.carrier);
    // partial on the left, total on the right: lenient passes, strict does not
    assert!(
        check_equivariance(&partial, &g, &eta, Mode::Lenient)
            .unwrap()
            .holds
    );
    let r = check_equivariance(&partial, &g, &eta, Mode::Strict).unwrap();
    assert_eq!(r.counterexample, Some((u, 0)));
    // partial on the right: both fail
    assert!(
        !check_equivariance(&g, &partial, &eta, Mode::Lenient)
            .unwrap()
            .holds
    );
}

#[test]
fn mismatched_algebras_are_input_errors() {
    let g = grid_structure();
    let mut other = g.clone();
    other.elements[1] = "X".into();
    let eta = StateMapEta::identity(&g.carrier);
    assert!(matches!(
        check_equivariance(&g, &other, &eta, Mode::Lenient),
        Err(crate::Error::MismatchedAlgebras(_))
    ));
}

#[test]
fn object_partition_follows_definedness() {
    let world = crate::gallery::consumable_masked();
    let run = crate::cayley::explore(&world, world.initial(), Default::default()).unwrap();
    let s = FiniteActionStructure::from_algebra(&world, &run);
    let blocks = s.object_partition();
    assert!(blocks.len() > 1);
    let mut all: Vec<usize> = blocks.concat();
    all.sort();
    assert_eq!(all, (0..s.carrier.len()).collect::<Vec<_>>());
    let eta = StateMapEta::identity(&s.carrier);
    let r = check_equivariance(&s, &s, &eta, Mode::Strict).unwrap();
    assert!(r.objects.iter().all(|(_, pass)| *pass));
}

#[test]
fn structure_validation() {
    let g = grid_structure();
    assert!(FiniteActionStructure::new(
        g.elements.clone(),
        g.compose.clone(),
        g.identity,
        g.carrier.clone(),
        g.act.clone()
    )
    .is_ok());
    let mut moved = g.act.clone();
    moved[g.identity][0] = Some(1);
    assert!(FiniteActionStructure::new(
        g.elements.clone(),
        g.compose.clone(),
        g.identity,
        g.carrier.clone(),
        moved
    )
    .is_err());
    let wall = wall_candidate();
    assert!(FiniteActionStructure::new(
        wall.elements.clone(),
        wall.compose.clone(),
        wall.identity,
        wall.carrier.clone(),
        wall.act.clone()
    )
    .is_err());
}

#[test]
fn grid_is_disentangled() {
    let g = grid_structure();
    let dec = grid_decomposition(&g);
    let r = check_disentangled(&g, &dec).unwrap();
    assert!(r.holds, "{:?}", r.violation);
    let trivial = Decomposition::trivial(&g);
    assert!(check_disentangled(&g, &trivial).unwrap().holds);
}

#[test]
fn wall_breaks_the_grid_decomposition() {
    let wall = wall_candidate();
    let dec = grid_decomposition(&wall);
    let r = check_disentangled(&wall, &dec).unwrap();
    assert!(!r.holds);
    match r.violation.unwrap() {
        DisentangleViolation::NotComponentwise { factor, .. } => assert_eq!(factor, 0),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn malformed_decompositions() {
    let g = grid_structure();
    let mut dec = grid_decomposition(&g);
    dec.point_coords[1] = dec.point_coords[0].clone();
    assert!(matches!(
        check_disentangled(&g, &dec),
        Err(crate::Error::MalformedDecomposition(_))
    ));
    let mut dec = grid_decomposition(&g);
    dec.element_coords.swap(1, 2);
    dec.element_coords.swap(1, 3);
    assert!(dec.validate(&g).is_err() || !check_disentangled(&g, &dec).unwrap().holds);
}

#[test]
fn componentwise_row_quotient() {
    let g = grid_structure();
    let dec = grid_decomposition(&g);
    let (tau, tau_dec, components) = grid_row_quotient();
    let r = check_disentangled_equivariance(
        (&g, &dec),
        (&tau, &tau_dec),
        &components,
        Some(&grid_row_map(&g)),
        Mode::Lenient,
    )
    .unwrap();
    assert!(r.holds, "{:?}", r.failure);
    assert_eq!(r.composite, grid_row_map(&g));
    // the assembled map passes the full condition
    assert!(
        check_equivariance(&g, &tau, &r.composite, Mode::Lenient)
            .unwrap()
            .holds
    );
}

#[test]
fn broken_component_is_named() {
    let g = grid_structure();
    let dec = grid_decomposition(&g);
    // columns acted on by L on both sides, with one column's image moved
    let cols = labels(&["c0", "c1"]);
    let components = vec![
        StateMapEta::new(cols.clone(), cols.clone(), vec![0, 0]).unwrap(),
        StateMapEta::new(labels(&["r0", "r1"]), labels(&["r0", "r1"]), vec![0, 1]).unwrap(),
    ];
    let r =
        check_disentangled_equivariance((&g, &dec), (&g, &dec), &components, None, Mode::Lenient)
            .unwrap();
    match r.failure {
        Some(FactorFailure::Component {
            factor,
            element,
            point,
        }) => {
            assert_eq!(factor, 0);
            assert_eq!((element, point), (1, 0));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn factor_count_mismatch() {
    let g = grid_structure();
    let dec = grid_decomposition(&g);
    let trivial = Decomposition::trivial(&g);
    let comps = vec![StateMapEta::identity(&g.carrier)];
    assert!(check_disentangled_equivariance(
        (&g, &dec),
        (&g, &trivial),
        &comps,
        None,
        Mode::Lenient
    )
    .is_err());
}

#[test]
fn composition_of_equivariant_maps() {
    let g = grid_structure();
    let diag = map(&g, &["z0", "z1"], &[0, 1, 1, 0]);
    let z = quotient_action(&g, &diag).unwrap().unwrap();
    let point = StateMapEta::new(z.carrier.clone(), labels(&["y"]), vec![0, 0]).unwrap();
    let y = quotient_action(&z, &point).unwrap().unwrap();
    let both = diag.then(&point).unwrap();
    assert!(
        check_equivariance(&g, &y, &both, Mode::Lenient)
            .unwrap()
            .holds
    );
}

#[test]
fn files_round_trip() {
    use files::*;
    let g = grid_structure();
    let text = structure_to_string(&g);
    assert_eq!(structure_from_str(&text, "s.toml").unwrap(), g);

    let eta = grid_row_map(&g);
    assert_eq!(eta_from_str(&eta_to_string(&eta), "e.toml").unwrap(), eta);

    let dec = grid_decomposition(&g);
    let text = decomposition_to_string(&dec, &g);
    assert_eq!(decomposition_from_str(&text, &g, "d.toml").unwrap(), dec);

    let masked = crate::gallery::wall_masked();
    let run = crate::cayley::explore(&masked, masked.initial(), Default::default()).unwrap();
    let s = FiniteActionStructure::from_algebra(&masked, &run);
    let text = structure_to_string(&s);
    assert!(text.contains(UNDEFINED));
    assert_eq!(structure_from_str(&text, "m.toml").unwrap(), s);
}

#[test]
fn file_errors_name_the_field() {
    use files::*;
    let bad = r#"
elements = ["1", "L"]
identity = "1"
carrier = ["c0", "c1"]
compose = [["1", "L"], ["L", "Q"]]
act = [["c0", "c1"], ["c1", "c0"]]
"#;
    let err = structure_from_str(bad, "s.toml").unwrap_err().to_string();
    assert!(err.contains("compose[1][1]"), "{err}");

    let extra = r#"
domain = ["a"]
codomain = ["b"]
images = ["b"]
note = "x"
"#;
    assert!(eta_from_str(extra, "e.toml").is_err());
}
