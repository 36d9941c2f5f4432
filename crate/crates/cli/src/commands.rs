//! Commands that start from a world: listing, tables, analysis, verification, conditions.

use std::fs;
use std::path::Path;

use action_algebra::analysis::{
    analyze as analyze_table, check_wc1, check_wc2, check_wc3_homogeneity,
};
use action_algebra::cayley::{
    explore, load_partition, tables_from_partition, AlgebraRun, EngineOptions,
};
use action_algebra::dot::export_dot;
use action_algebra::equivariance::files::structure_to_string;
use action_algebra::equivariance::FiniteActionStructure;
use action_algebra::oracle::{compare_partitions, generate_closure, ClosureOptions};
use action_algebra::render::{
    action_table_grid, class_grid, condition_grid, condition_rows, conditions_to_toml, order_grid,
    property_grid, report_to_toml, run_to_toml, state_table_grid, transition_grid, Grid,
};
use action_algebra::worldfile::{load_world, world_to_string};
use action_algebra::{gallery, Error, Result, Treatment, World};
use clap::ValueEnum;

use crate::{EngineArgs, Format, Outcome, OutputArgs, TreatmentArg, WorldArgs};

pub fn load(args: &WorldArgs) -> Result<World> {
    let mut world = match (&args.source.world, &args.source.file) {
        (Some(key), _) => gallery::lookup(key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown gallery world `{key}`")))?
            .build(),
        (None, Some(path)) => load_world(path)?,
        (None, None) => unreachable!("clap requires one world source"),
    };
    if let Some(t) = args.treatment {
        world = world.with_treatment(match t {
            TreatmentArg::Identity => Treatment::Identity,
            TreatmentArg::Masked => Treatment::Masked,
        });
    }
    if let Some(label) = &args.initial {
        let w0 = world.state_id(label)?;
        world = world.with_initial(w0)?;
    }
    Ok(world)
}

fn algebra(world: &World, engine: &EngineArgs) -> Result<AlgebraRun> {
    let options = EngineOptions {
        max_elements: engine.max_elements,
        ..EngineOptions::default()
    };
    explore(world, world.initial(), options)
}

fn format_name(f: Format) -> String {
    f.to_possible_value()
        .map(|v| v.get_name().to_owned())
        .unwrap_or_default()
}

/// The requested format, defaulting to Markdown, if the command supports it.
fn format_for(output: &OutputArgs, command: &str, allowed: &[Format]) -> Result<Format> {
    let f = output.format.unwrap_or(Format::Md);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::InvalidParameter(format!(
            "`{command}` does not support --format {}",
            format_name(f)
        )))
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn grid_text(grid: &Grid, format: Format) -> String {
    match format {
        Format::Csv => grid.to_csv(),
        _ => grid.to_markdown(),
    }
}

pub fn list(output: &OutputArgs) -> Result<Outcome> {
    let format = format_for(output, "list", &[Format::Md, Format::Csv])?;
    let grid = Grid {
        corner: "key".to_owned(),
        columns: vec!["elements".to_owned(), "description".to_owned()],
        rows: gallery::ENTRIES
            .iter()
            .map(|e| {
                (
                    e.key.to_owned(),
                    vec![
                        Some(e.expected_elements.to_string()),
                        Some(e.description.to_owned()),
                    ],
                )
            })
            .collect(),
    };
    emit(&grid_text(&grid, format), output.out.as_deref())?;
    Ok(Outcome::Pass)
}

pub fn show(args: &WorldArgs, output: &OutputArgs) -> Result<Outcome> {
    let format = format_for(
        output,
        "show",
        &[Format::Md, Format::Csv, Format::Dot, Format::Structured],
    )?;
    let world = load(args)?;
    let text = match format {
        Format::Dot => export_dot(&world),
        Format::Structured => world_to_string(&world),
        f => grid_text(&transition_grid(&world), f),
    };
    emit(&text, output.out.as_deref())?;
    Ok(Outcome::Pass)
}

fn heading(world: &World, what: &str) -> String {
    format!(
        "{} from {}: {what}",
        world.name(),
        world.state_label(world.initial())
    )
}

pub fn cayley(args: &WorldArgs, engine: &EngineArgs, output: &OutputArgs) -> Result<Outcome> {
    let format = format_for(
        output,
        "cayley",
        &[Format::Md, Format::Csv, Format::Structured],
    )?;
    let world = load(args)?;
    let run = algebra(&world, engine)?;
    let sections = [
        ("state_table", state_table_grid(&world, &run.state_table)),
        ("action_table", action_table_grid(&run.action_table)),
        ("classes", class_grid(&world, &run.classes)),
    ];
    match format {
        Format::Structured => emit(&run_to_toml(&world, &run), output.out.as_deref())?,
        Format::Csv => match output.out.as_deref() {
            Some(dir) => {
                fs::create_dir_all(dir).map_err(|source| Error::Io {
                    path: dir.display().to_string(),
                    source,
                })?;
                for (name, grid) in &sections {
                    emit(&grid.to_csv(), Some(&dir.join(format!("{name}.csv"))))?;
                }
            }
            None => {
                let parts: Vec<String> = sections
                    .iter()
                    .map(|(name, grid)| format!("# {name}\n{}", grid.to_csv()))
                    .collect();
                emit(&parts.join("\n"), None)?;
            }
        },
        _ => {
            let mut text = format!(
                "# {}\n",
                heading(&world, &format!("{} elements", run.len()))
            );
            for (name, grid) in &sections {
                text.push_str(&format!(
                    "\n## {}\n\n{}",
                    name.replace('_', " "),
                    grid.to_markdown()
                ));
            }
            emit(&text, output.out.as_deref())?;
        }
    }
    Ok(Outcome::Pass)
}

pub fn analyze(args: &WorldArgs, engine: &EngineArgs, output: &OutputArgs) -> Result<Outcome> {
    let format = format_for(
        output,
        "analyze",
        &[Format::Md, Format::Csv, Format::Structured],
    )?;
    let world = load(args)?;
    let run = algebra(&world, engine)?;
    let report = analyze_table(&run.action_table);
    let text = match format {
        Format::Structured => report_to_toml(&report),
        Format::Csv => format!(
            "{}\n{}",
            property_grid(&report).to_csv(),
            order_grid(&report).to_csv()
        ),
        _ => {
            let mut text = format!(
                "# {}\n\n{}",
                heading(&world, report.classification.as_str()),
                property_grid(&report).to_markdown()
            );
            if let Some((a, b)) = report.commutativity_counterexample {
                text.push_str(&format!(
                    "\nnon-commuting pair: {}, {}\n",
                    report.labels[a], report.labels[b]
                ));
            }
            text.push('\n');
            text.push_str(&order_grid(&report).to_markdown());
            text
        }
    };
    emit(&text, output.out.as_deref())?;
    Ok(Outcome::Pass)
}

pub fn verify(
    args: &WorldArgs,
    engine: &EngineArgs,
    classes: Option<&Path>,
    unrestricted: bool,
) -> Result<Outcome> {
    let world = load(args)?;
    let options = ClosureOptions {
        unrestricted,
        max_elements: engine.max_elements,
        ..ClosureOptions::default()
    };
    let closure = generate_closure(&world, world.initial(), options)?;
    let (source, table, set) = match classes {
        Some(path) => {
            let partition = load_partition(&world, path)?;
            let (table, set) = tables_from_partition(&world, world.initial(), partition)?;
            ("partition", table, set)
        }
        None => {
            let run = algebra(&world, engine)?;
            ("engine", run.action_table, run.classes)
        }
    };
    let report = compare_partitions(&world, &set, &table, &closure);
    let mut text = format!(
        "{source}: {} elements\noracle: {} elements\n",
        report.engine_elements, report.oracle_elements
    );
    let outcome = match &report.mismatch {
        None => {
            text.push_str("match\n");
            Outcome::Pass
        }
        Some(m) => {
            text.push_str(&format!("mismatch at `{}`: {}\n", m.word, m.reason));
            Outcome::Fail
        }
    };
    emit(&text, None)?;
    Ok(outcome)
}

pub fn conditions(
    args: &WorldArgs,
    engine: &EngineArgs,
    wc3_cap: usize,
    output: &OutputArgs,
) -> Result<Outcome> {
    let format = format_for(
        output,
        "conditions",
        &[Format::Md, Format::Csv, Format::Structured],
    )?;
    let world = load(args)?;
    let run = algebra(&world, engine)?;
    let rows = condition_rows(
        &world,
        &run.action_table,
        &check_wc1(&world),
        &check_wc2(&run.action_table),
        &check_wc3_homogeneity(&world, wc3_cap),
    );
    let text = match format {
        Format::Structured => conditions_to_toml(&rows),
        f => grid_text(&condition_grid(&rows), f),
    };
    emit(&text, output.out.as_deref())?;
    Ok(if rows.iter().all(|r| r.passed()) {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

pub fn structure(args: &WorldArgs, engine: &EngineArgs, out: Option<&Path>) -> Result<Outcome> {
    let world = load(args)?;
    let run = algebra(&world, engine)?;
    let s = FiniteActionStructure::from_algebra(&world, &run);
    emit(&structure_to_string(&s), out)?;
    Ok(Outcome::Pass)
}
