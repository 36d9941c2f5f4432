//! Random small worlds and the product-structure fixtures for the 2×2 grid.

use rand::Rng;

use crate::cayley::{explore, EngineOptions};
use crate::equivariance::{
    quotient_action, Decomposition, Factor, FiniteActionStructure, StateMapEta,
};
use crate::gallery;
use crate::oracle::{generate_closure, ClosureOptions};
use crate::world::{ActionId, StateId, Transition, Treatment, World};

const SYMBOLS: [&str; 6] = ["1", "a", "b", "c", "d", "e"];

/// A random world with `1..=max_states` states and an alphabet of `2..=max_actions` symbols
/// including `1`. Each non-identity (state, action) pair is listed with probability
/// `density`; unlisted pairs follow `treatment`. The initial state is `s0`.
pub fn random_world<R: Rng>(
    rng: &mut R,
    max_states: usize,
    max_actions: usize,
    density: f64,
    treatment: Treatment,
) -> World {
    assert!(max_states >= 1 && (2..=SYMBOLS.len()).contains(&max_actions));
    let n = rng.gen_range(1..=max_states);
    let k = rng.gen_range(2..=max_actions);
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let actions = &SYMBOLS[..k];
    let mut raw = Vec::new();
    for s in 0..n {
        for a in 1..k {
            if rng.gen_bool(density) {
                raw.push(Transition {
                    from: StateId::new(s),
                    action: ActionId::new(a),
                    to: StateId::new(rng.gen_range(0..n)),
                });
            }
        }
    }
    World::from_indexed(
        format!("random-{n}x{k}"),
        states,
        actions.iter().map(|s| s.to_string()).collect(),
        raw,
        treatment,
        StateId::new(0),
    )
    .expect("random worlds are valid by construction")
}

/// Algebra size above which [`bounded_random_world`] gives up on a draw. The engine records
/// every composite of two labels, so cost grows with the square of the element count.
pub const SMALL_ALGEBRA: usize = 300;

/// A random world (as [`random_world`]) whose algebra has at most `max_elements` elements,
/// or `None` if the draw exceeds that. Sizing uses a capped closure, which is cheap.
pub fn bounded_random_world<R: Rng>(
    rng: &mut R,
    max_states: usize,
    max_actions: usize,
    treatment: Treatment,
    max_elements: usize,
) -> Option<World> {
    let world = random_world(rng, max_states, max_actions, 0.7, treatment);
    let options = ClosureOptions {
        max_elements,
        ..ClosureOptions::default()
    };
    generate_closure(&world, world.initial(), options)
        .ok()
        .map(|_| world)
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn z2(a: &str) -> Factor {
    Factor {
        elements: labels(&["1", a]),
        compose: vec![vec![Some(0), Some(1)], vec![Some(1), Some(0)]],
        identity: 0,
        carrier: Vec::new(),
    }
}

/// Words naming the four grid elements, in the order 1, vertical, horizontal, both.
pub const GRID_WORDS: [&str; 4] = ["1", "D", "L", "LD"];

/// The 2×2 grid algebra acting on its four states.
pub fn grid_structure() -> FiniteActionStructure {
    let world = gallery::cyclical_2x2();
    let run = explore(&world, world.initial(), EngineOptions::default()).expect("grid explores");
    FiniteActionStructure::from_algebra(&world, &run)
}

/// Position of each of [`GRID_WORDS`] in a structure built from the grid.
fn grid_element_order(s: &FiniteActionStructure) -> [usize; 4] {
    let world = gallery::cyclical_2x2();
    let run = explore(&world, world.initial(), EngineOptions::default()).expect("grid explores");
    GRID_WORDS.map(|w| {
        let class = run
            .classes
            .class_of(&world, &world.parse_word(w).unwrap())
            .unwrap();
        s.element(&run.action_table.labels[class]).unwrap()
    })
}

/// Columns × rows: the horizontal factor `{1, L}` moves the column of `w = 2·row + col`,
/// the vertical factor `{1, D}` moves the row.
pub fn grid_decomposition(s: &FiniteActionStructure) -> Decomposition {
    let mut cols = z2("L");
    cols.carrier = labels(&["c0", "c1"]);
    let mut rows = z2("D");
    rows.carrier = labels(&["r0", "r1"]);
    let order = grid_element_order(s);
    let mut element_coords = vec![Vec::new(); 4];
    for (k, &i) in order.iter().enumerate() {
        // k: 0 = identity, 1 = vertical, 2 = horizontal, 3 = both
        element_coords[i] = vec![k >> 1, k & 1];
    }
    let point_coords = s
        .carrier
        .iter()
        .map(|w| {
            let i: usize = w.trim_start_matches('w').parse().unwrap();
            vec![i % 2, i / 2]
        })
        .collect();
    Decomposition {
        factors: vec![cols, rows],
        point_coords,
        element_coords,
    }
}

/// The grid's element labels and composition with the wall-identity world's moves as the
/// action. The wall couples rows and columns, so this is not a product action.
pub fn wall_candidate() -> FiniteActionStructure {
    let grid = grid_structure();
    let wall = gallery::wall_identity();
    let order = grid_element_order(&grid);
    let mut act = vec![Vec::new(); 4];
    for (k, &i) in order.iter().enumerate() {
        let t = wall.word_transform(&wall.parse_word(GRID_WORDS[k]).unwrap());
        act[i] = t.images().iter().map(|x| x.map(StateId::index)).collect();
    }
    FiniteActionStructure::candidate(
        grid.elements.clone(),
        grid.compose.clone(),
        grid.identity,
        grid.carrier.clone(),
        act,
    )
    .expect("identity and associativity come from the grid")
}

/// The map sending each grid state to its row.
pub fn grid_row_map(s: &FiniteActionStructure) -> StateMapEta {
    StateMapEta::new(
        s.carrier.clone(),
        labels(&["z0", "z1"]),
        s.carrier
            .iter()
            .map(|w| w.trim_start_matches('w').parse::<usize>().unwrap() / 2)
            .collect(),
    )
    .unwrap()
}

/// The grid algebra acting on rows, with its decomposition into a one-point column factor
/// and the row factor, and the component maps (columns to the point, rows unchanged).
pub fn grid_row_quotient() -> (FiniteActionStructure, Decomposition, Vec<StateMapEta>) {
    let grid = grid_structure();
    let eta = grid_row_map(&grid);
    let tau = quotient_action(&grid, &eta)
        .unwrap()
        .expect("rows are a congruence");
    let mut cols = z2("L");
    cols.carrier = labels(&["p"]);
    let mut rows = z2("D");
    rows.carrier = labels(&["r0", "r1"]);
    let source = grid_decomposition(&grid);
    let dec = Decomposition {
        factors: vec![cols, rows],
        point_coords: vec![vec![0, 0], vec![0, 1]],
        element_coords: source.element_coords,
    };
    let components = vec![
        StateMapEta::new(labels(&["c0", "c1"]), labels(&["p"]), vec![0, 0]).unwrap(),
        StateMapEta::new(labels(&["r0", "r1"]), labels(&["r0", "r1"]), vec![0, 1]).unwrap(),
    ];
    (tau, dec, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_worlds_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let w = random_world(&mut rng, 6, 4, 0.7, Treatment::Masked);
            assert!((1..=6).contains(&w.num_states()));
            assert!((2..=4).contains(&w.num_actions()));
            assert_eq!(w.action_symbols()[0], "1");
        }
    }

    #[test]
    fn random_worlds_are_reproducible() {
        let a = random_world(
            &mut ChaCha8Rng::seed_from_u64(3),
            6,
            4,
            0.7,
            Treatment::Identity,
        );
        let b = random_world(
            &mut ChaCha8Rng::seed_from_u64(3),
            6,
            4,
            0.7,
            Treatment::Identity,
        );
        assert_eq!(a, b);
    }

    #[test]
    fn fixtures_validate() {
        let grid = grid_structure();
        grid_decomposition(&grid).validate(&grid).unwrap();
        let (tau, dec, _) = grid_row_quotient();
        dec.validate(&tau).unwrap();
        assert!(wall_candidate().compatibility_violation().is_some());
    }
}
