use super::*;
use crate::cayley::{explore, EngineOptions};
use crate::gallery;
use crate::world::{ActionWord, StateId, World};

fn table(world: &World) -> ActionCayleyTable {
    explore(world, world.initial(), EngineOptions::default())
        .unwrap()
        .action_table
}

fn flags(report: &AlgebraReport) -> [bool; 5] {
    report.property_rows().map(|(_, v)| v)
}

#[test]
fn gallery_property_rows() {
    // rows: totality, identity, inverse, associative, commutative
    let expect = [
        (
            "cyclical-2x2",
            [true, true, true, true, true],
            Classification::CommutativeGroup,
        ),
        (
            "wall-identity",
            [true, true, false, true, false],
            Classification::Monoid,
        ),
        (
            "block-1d4",
            [true, true, false, true, false],
            Classification::Monoid,
        ),
        (
            "consumable-identity",
            [true, true, false, true, false],
            Classification::Monoid,
        ),
        (
            "wall-masked",
            [false, true, false, true, false],
            Classification::SmallCategory,
        ),
        (
            "consumable-masked",
            [false, true, false, true, false],
            Classification::SmallCategory,
        ),
    ];
    for (key, rows, class) in expect {
        let report = analyze(&table(&gallery::lookup(key).unwrap().build()));
        assert_eq!(flags(&report), rows, "{key}");
        assert_eq!(report.classification, class, "{key}");
    }
}

#[test]
fn wall_identity_does_not_commute() {
    let world = gallery::wall_identity();
    let t = table(&world);
    let (a, b) = analyze(&t).commutativity_counterexample.unwrap();
    assert_ne!(t.entries[a][b], t.entries[b][a]);
    // concretely, U then R and R then U end in different cells from w0
    let w0 = world.initial();
    let ur = world.apply_word(&world.parse_word("RU").unwrap(), w0);
    let ru = world.apply_word(&world.parse_word("UR").unwrap(), w0);
    assert_ne!(ur, ru);
}

#[test]
fn grid_orders() {
    let world = gallery::cyclical_2x2();
    let t = table(&world);
    let orders = element_orders(&t);
    let by_label: Vec<(&str, OrderInfo)> =
        t.labels.iter().map(String::as_str).zip(orders).collect();
    assert_eq!(
        by_label,
        [
            ("1", OrderInfo::GroupOrder(1)),
            ("U", OrderInfo::GroupOrder(2)),
            ("L", OrderInfo::GroupOrder(2)),
            ("UL", OrderInfo::GroupOrder(2)),
        ]
    );
}

#[test]
fn block_world_has_non_group_orders() {
    let orders = element_orders(&table(&gallery::block_1d4()));
    assert!(orders
        .iter()
        .any(|o| matches!(o, OrderInfo::IndexPeriod { .. })));
}

#[test]
fn masked_orders_can_be_partial() {
    let orders = element_orders(&table(&gallery::consumable_masked()));
    assert!(orders
        .iter()
        .any(|o| matches!(o, OrderInfo::Partial { .. })));
}

#[test]
fn hand_built_tables() {
    // two-element left-zero semigroup: b ∘ a = b... written [r][c] = c ∘ r, so entry is c
    let t = ActionCayleyTable::new(
        vec!["x".into(), "y".into()],
        vec![vec![Some(0), Some(1)], vec![Some(0), Some(1)]],
    )
    .unwrap();
    let r = analyze(&t);
    assert_eq!(r.identity.two_sided, None);
    assert_eq!(r.identity.left, Vec::<usize>::new());
    assert_eq!(r.identity.right, [0, 1]);
    assert_eq!(r.classification, Classification::Unstructured);
    assert!(!check_wc2(&t).holds);
    assert_eq!(
        check_wc2(&t).reason.as_deref(),
        Some("no two-sided identity")
    );

    // identity plus an element whose square is undefined
    let t = ActionCayleyTable::new(
        vec!["1".into(), "a".into()],
        vec![vec![Some(0), Some(1)], vec![Some(1), None]],
    )
    .unwrap();
    let r = analyze(&t);
    assert_eq!(r.classification, Classification::SmallCategory);
    assert_eq!(r.orders[1], OrderInfo::Partial { defined: 1 });

    // a non-associative table is caught
    let t = ActionCayleyTable::new(
        vec!["1".into(), "a".into(), "b".into()],
        vec![
            vec![Some(0), Some(1), Some(2)],
            vec![Some(1), Some(2), Some(2)],
            vec![Some(2), Some(1), Some(0)],
        ],
    )
    .unwrap();
    let r = analyze(&t);
    assert!(!r.associative);
    assert_eq!(r.classification, Classification::Unstructured);

    assert!(ActionCayleyTable::new(vec!["1".into()], vec![vec![Some(3)]]).is_err());
}

#[test]
fn single_element_algebra() {
    let world = gallery::cyclical_grid(1, 1, &[], crate::Treatment::Masked).unwrap();
    let t = table(&world);
    assert!(check_wc2(&t).holds);
    assert!(check_wc3_homogeneity(&world, DEFAULT_WC3_CAP).holds());
    assert_eq!(analyze(&t).classification, Classification::CommutativeGroup);
}

#[test]
fn world_condition_one() {
    assert!(check_wc1(&gallery::cyclical_2x2()).holds);
    assert!(check_wc1(&gallery::wall_identity()).holds);
    let wall = gallery::wall_masked();
    let r = check_wc1(&wall);
    assert!(!r.holds);
    let (w, a) = r.counterexample.unwrap();
    assert_eq!((wall.state_label(w), wall.action_symbol(a)), ("w0", "R"));
}

#[test]
fn world_condition_two() {
    assert!(check_wc2(&table(&gallery::cyclical_2x2())).holds);
    let r = check_wc2(&table(&gallery::wall_identity()));
    assert!(!r.holds);
    assert!(r.counterexample.is_some());
}

#[test]
fn world_condition_three() {
    assert!(check_wc3_homogeneity(&gallery::cyclical_2x2(), DEFAULT_WC3_CAP).holds());
    assert!(matches!(
        check_wc3_homogeneity(&gallery::wall_identity(), DEFAULT_WC3_CAP),
        Wc3Outcome::Fails(..)
    ));
    // a witness really is a transition-preserving bijection
    let grid = gallery::cyclical_2x2();
    let sigma = homogeneity_witness(&grid, StateId::new(0), StateId::new(3)).unwrap();
    assert_eq!(sigma[0], StateId::new(3));
    for s in grid.states() {
        for a in grid.actions() {
            assert_eq!(
                grid.apply_min(a, s).map(|x| sigma[x.index()]),
                grid.apply_min(a, sigma[s.index()])
            );
        }
    }
}

#[test]
fn world_condition_three_budget() {
    // with no branching budget at all, a world needing a branch is inconclusive
    let world = World::from_labels(
        "two-islands",
        &["a", "b"],
        &["1"],
        &[],
        crate::Treatment::Identity,
        "a",
    )
    .unwrap();
    assert!(matches!(
        check_wc3_homogeneity(&world, 0),
        Wc3Outcome::Inconclusive(..)
    ));
    assert!(check_wc3_homogeneity(&world, 10).holds());
}

#[test]
fn reversibility() {
    let world = gallery::consumable_identity();
    let w1 = world.state_id("w1").unwrap();
    let c = world.parse_word("C").unwrap();
    assert_eq!(is_reversible(&world, &c, w1), Reversibility::Irreversible);
    for w in world.states() {
        assert!(is_reversible(&world, &ActionWord::empty(), w).is_reversible());
    }

    let wall = gallery::wall_identity();
    for w in wall.states() {
        assert!(reversible_actions(&wall, w)
            .iter()
            .all(|(_, r)| r.is_reversible()));
    }

    let masked = gallery::wall_masked();
    let r = masked.parse_word("R").unwrap();
    assert_eq!(
        is_reversible(&masked, &r, masked.initial()),
        Reversibility::UndefinedAt
    );
}
