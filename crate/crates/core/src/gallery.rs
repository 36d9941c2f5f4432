//! Canned example worlds and the parametric builders behind them.
//!
//! State numbering is part of the contract:
//! * grids: `w{row * cols + col}`, `U`/`D` change the row, `L`/`R` the column, all with
//!   wraparound;
//! * 1D block worlds: states ordered by (block position, agent position);
//! * 1D consumable worlds: `w{agent}` while the consumable is present, `w{n + agent}` after
//!   it has been consumed.

use crate::error::{Error, Result};
use crate::world::{ActionId, StateId, Transition, Treatment, World};

/// A named example world with the algebra size published alongside it.
#[derive(Clone, Copy, Debug)]
pub struct GalleryEntry {
    pub key: &'static str,
    pub description: &'static str,
    pub expected_elements: usize,
    build: fn() -> World,
}

impl GalleryEntry {
    pub fn build(&self) -> World {
        (self.build)()
    }
}

pub const ENTRIES: &[GalleryEntry] = &[
    GalleryEntry {
        key: "cyclical-2x2",
        description: "cyclical 2x2 grid, moves U/D/L/R",
        expected_elements: 4,
        build: cyclical_2x2,
    },
    GalleryEntry {
        key: "wall-identity",
        description: "cyclical 2x2 grid with a wall between w0 and w1; blocked moves act as 1",
        expected_elements: 26,
        build: wall_identity,
    },
    GalleryEntry {
        key: "wall-masked",
        description: "cyclical 2x2 grid with a wall between w0 and w1; blocked moves undefined",
        expected_elements: 59,
        build: wall_masked,
    },
    GalleryEntry {
        key: "block-1d4",
        description: "cyclical 1D axis of 4 cells with a pushable block",
        expected_elements: 17,
        build: block_1d4,
    },
    GalleryEntry {
        key: "consumable-identity",
        description: "cyclical 1D axis of 4 cells with a consumable at cell 1; blocked C acts as 1",
        expected_elements: 64,
        build: consumable_identity,
    },
    GalleryEntry {
        key: "consumable-masked",
        description: "cyclical 1D axis of 4 cells with a consumable at cell 1; blocked C undefined",
        expected_elements: 20,
        build: consumable_masked,
    },
];

pub fn lookup(key: &str) -> Option<&'static GalleryEntry> {
    ENTRIES.iter().find(|e| e.key == key)
}

/// Blocked pairs that place the wall between `w0` and `w1` of the 2x2 grid.
pub const WALL_BLOCKED: &[(&str, &str)] = &[("w0", "R"), ("w1", "L")];

pub fn cyclical_2x2() -> World {
    named(
        cyclical_grid(2, 2, &[], Treatment::Identity).expect("valid"),
        "cyclical-2x2",
    )
}

pub fn wall_identity() -> World {
    named(
        cyclical_grid(2, 2, WALL_BLOCKED, Treatment::Identity).expect("valid"),
        "wall-identity",
    )
}

pub fn wall_masked() -> World {
    named(
        cyclical_grid(2, 2, WALL_BLOCKED, Treatment::Masked).expect("valid"),
        "wall-masked",
    )
}

pub fn block_1d4() -> World {
    named(cyclical_1d_block(4).expect("valid"), "block-1d4")
}

pub fn consumable_identity() -> World {
    named(
        cyclical_1d_consumable(4, 1, Treatment::Identity).expect("valid"),
        "consumable-identity",
    )
}

pub fn consumable_masked() -> World {
    named(
        cyclical_1d_consumable(4, 1, Treatment::Masked).expect("valid"),
        "consumable-masked",
    )
}

fn named(world: World, name: &str) -> World {
    World::from_indexed(
        name,
        world.state_labels().to_vec(),
        world.action_symbols().to_vec(),
        world.raw_transitions().to_vec(),
        world.treatment(),
        world.initial(),
    )
    .expect("renaming keeps a world valid")
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

fn alphabet(symbols: &[&str]) -> Vec<String> {
    symbols.iter().map(|s| (*s).to_owned()).collect()
}

/// A `rows x cols` torus. Pairs in `blocked` are dropped from the raw dynamics before the
/// treatment fills them in.
pub fn cyclical_grid(
    rows: usize,
    cols: usize,
    blocked: &[(&str, &str)],
    treatment: Treatment,
) -> Result<World> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter(
            "grid needs at least one row and one column".into(),
        ));
    }
    let states = labels(rows * cols);
    let actions = alphabet(&["1", "U", "D", "L", "R"]);
    let mut blocked_pairs = Vec::with_capacity(blocked.len());
    for (state, action) in blocked {
        let s = states
            .iter()
            .position(|l| l == state)
            .ok_or_else(|| Error::UnknownState((*state).to_owned()))?;
        let a = actions
            .iter()
            .position(|l| l == action)
            .ok_or_else(|| Error::UnknownAction((*action).to_owned()))?;
        blocked_pairs.push((s, a));
    }

    let moves: [(usize, isize, isize); 4] = [(1, -1, 0), (2, 1, 0), (3, 0, -1), (4, 0, 1)];
    let mut raw = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let from = r * cols + c;
            for &(a, dr, dc) in &moves {
                if blocked_pairs.contains(&(from, a)) {
                    continue;
                }
                let nr = (r as isize + dr).rem_euclid(rows as isize) as usize;
                let nc = (c as isize + dc).rem_euclid(cols as isize) as usize;
                raw.push(Transition {
                    from: StateId::new(from),
                    action: ActionId::new(a),
                    to: StateId::new(nr * cols + nc),
                });
            }
        }
    }
    World::from_indexed(
        format!("grid-{rows}x{cols}"),
        states,
        actions,
        raw,
        treatment,
        StateId::new(0),
    )
}

/// One agent and one pushable block on a cycle of `n` cells. Moving into the block pushes
/// it one cell in the same direction.
pub fn cyclical_1d_block(n: usize) -> Result<World> {
    if n < 3 {
        return Err(Error::InvalidParameter(
            "block world needs at least 3 cells".into(),
        ));
    }
    let mut cells = Vec::with_capacity(n * (n - 1));
    for block in 0..n {
        for agent in (0..n).filter(|&a| a != block) {
            cells.push((agent, block));
        }
    }
    let index_of = |agent: usize, block: usize| {
        cells
            .iter()
            .position(|&c| c == (agent, block))
            .expect("every agent/block pair is enumerated")
    };
    let step = |x: usize, d: isize| (x as isize + d).rem_euclid(n as isize) as usize;

    let mut raw = Vec::new();
    for (from, &(agent, block)) in cells.iter().enumerate() {
        for (a, d) in [(1usize, -1isize), (2, 1)] {
            let next = step(agent, d);
            let to = if next == block {
                index_of(next, step(block, d))
            } else {
                index_of(next, block)
            };
            raw.push(Transition {
                from: StateId::new(from),
                action: ActionId::new(a),
                to: StateId::new(to),
            });
        }
    }
    World::from_indexed(
        format!("block-1d{n}"),
        labels(cells.len()),
        alphabet(&["1", "L", "R"]),
        raw,
        Treatment::Identity,
        StateId::new(0),
    )
}

/// One agent on a cycle of `n` cells with a single consumable at `consumable_pos`.
/// `C` is only listed where the agent stands on the uneaten consumable.
pub fn cyclical_1d_consumable(
    n: usize,
    consumable_pos: usize,
    treatment: Treatment,
) -> Result<World> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "consumable world needs at least 2 cells".into(),
        ));
    }
    if consumable_pos >= n {
        return Err(Error::InvalidParameter(format!(
            "consumable position {consumable_pos} outside 0..{n}"
        )));
    }
    let step = |x: usize, d: isize| (x as isize + d).rem_euclid(n as isize) as usize;
    let mut raw = Vec::new();
    for eaten in 0..2 {
        for agent in 0..n {
            let from = StateId::new(eaten * n + agent);
            for (a, d) in [(1usize, -1isize), (2, 1)] {
                raw.push(Transition {
                    from,
                    action: ActionId::new(a),
                    to: StateId::new(eaten * n + step(agent, d)),
                });
            }
            if eaten == 0 && agent == consumable_pos {
                raw.push(Transition {
                    from,
                    action: ActionId::new(3),
                    to: StateId::new(n + agent),
                });
            }
        }
    }
    World::from_indexed(
        format!("consumable-1d{n}"),
        labels(2 * n),
        alphabet(&["1", "L", "R", "C"]),
        raw,
        treatment,
        StateId::new(0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rows are states, columns follow the world's alphabet; `None` is undefined.
    fn table(world: &World) -> Vec<Vec<Option<usize>>> {
        world
            .states()
            .map(|s| {
                world
                    .actions()
                    .map(|a| world.apply_min(a, s).map(StateId::index))
                    .collect()
            })
            .collect()
    }

    fn golden(rows: &[&[usize]]) -> Vec<Vec<Option<usize>>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Some(x)).collect())
            .collect()
    }

    #[test]
    fn cyclical_2x2_matches_published_table() {
        // columns 1 U D L R
        let expected = golden(&[
            &[0, 2, 2, 1, 1],
            &[1, 3, 3, 0, 0],
            &[2, 0, 0, 3, 3],
            &[3, 1, 1, 2, 2],
        ]);
        assert_eq!(table(&cyclical_2x2()), expected);
    }

    #[test]
    fn wall_identity_matches_published_table() {
        let expected = golden(&[
            &[0, 2, 2, 1, 0],
            &[1, 3, 3, 1, 0],
            &[2, 0, 0, 3, 3],
            &[3, 1, 1, 2, 2],
        ]);
        assert_eq!(table(&wall_identity()), expected);
    }

    #[test]
    fn wall_masked_matches_published_table() {
        let mut expected = golden(&[
            &[0, 2, 2, 1, 0],
            &[1, 3, 3, 0, 0],
            &[2, 0, 0, 3, 3],
            &[3, 1, 1, 2, 2],
        ]);
        expected[0][4] = None;
        expected[1][3] = None;
        assert_eq!(table(&wall_masked()), expected);
    }

    #[test]
    fn block_world_matches_published_table() {
        // columns 1 L R
        let expected = golden(&[
            &[0, 9, 1],
            &[1, 0, 2],
            &[2, 1, 3],
            &[3, 5, 7],
            &[4, 0, 5],
            &[5, 4, 3],
            &[6, 8, 7],
            &[7, 6, 11],
            &[8, 4, 6],
            &[9, 8, 10],
            &[10, 9, 11],
            &[11, 10, 2],
        ]);
        assert_eq!(table(&block_1d4()), expected);
        let w = block_1d4();
        assert_eq!(
            w.apply_min_labels("L", "w0").unwrap(),
            Some(w.state_id("w9").unwrap())
        );
    }

    #[test]
    fn block_world_sizes() {
        assert_eq!(cyclical_1d_block(3).unwrap().num_states(), 6);
        assert_eq!(cyclical_1d_block(5).unwrap().num_states(), 20);
        assert!(cyclical_1d_block(2).is_err());
    }

    #[test]
    fn consumable_world_layout() {
        let w = consumable_identity();
        assert_eq!(w.num_states(), 8);
        let c = w.action_id("C").unwrap();
        for s in w.states() {
            let expected = if s.index() == 1 { 5 } else { s.index() };
            assert_eq!(w.apply_min(c, s), Some(StateId::new(expected)));
        }
        let m = consumable_masked();
        let c = m.action_id("C").unwrap();
        assert_eq!(m.apply_min(c, StateId::new(1)), Some(StateId::new(5)));
        assert_eq!(m.apply_min(c, StateId::new(5)), None);
        assert_eq!(m.apply_min(c, StateId::new(0)), None);
        assert!(cyclical_1d_consumable(4, 4, Treatment::Masked).is_err());
        assert!(cyclical_1d_consumable(1, 0, Treatment::Masked).is_err());
    }

    #[test]
    fn single_cell_grid_is_all_self_loops() {
        for t in [Treatment::Identity, Treatment::Masked] {
            let w = cyclical_grid(1, 1, &[], t).unwrap();
            assert_eq!(w.num_states(), 1);
            for a in w.actions() {
                assert_eq!(w.apply_min(a, StateId::new(0)), Some(StateId::new(0)));
            }
        }
    }

    #[test]
    fn blocked_pairs_must_exist() {
        assert!(matches!(
            cyclical_grid(2, 2, &[("w7", "R")], Treatment::Identity),
            Err(Error::UnknownState(_))
        ));
        assert!(matches!(
            cyclical_grid(2, 2, &[("w0", "X")], Treatment::Identity),
            Err(Error::UnknownAction(_))
        ));
        assert!(cyclical_grid(0, 2, &[], Treatment::Identity).is_err());
    }

    #[test]
    fn builders_are_deterministic_and_keys_unique() {
        for e in ENTRIES {
            assert_eq!(e.build(), e.build());
            assert_eq!(ENTRIES.iter().filter(|x| x.key == e.key).count(), 1);
            assert_eq!(e.build().name(), e.key);
        }
    }
}
