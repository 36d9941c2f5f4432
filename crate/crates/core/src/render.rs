//! Text renderings of transition tables, Cayley tables, class listings and reports.
//!
//! CSV leaves undefined cells empty and says so in the top-left header cell; Markdown writes
//! them as `⊥`. The structured form is TOML with the string `"undefined"`.

use serde::Serialize;

use crate::analysis::{AlgebraReport, OrderInfo, Wc1Report, Wc2Report, Wc3Outcome};
use crate::cayley::{ActionCayleyTable, AlgebraRun, EquivalenceClassSet, StateCayleyTable};
use crate::world::World;

pub const CSV_CORNER: &str = "undefined=empty";
pub const BOTTOM: &str = "⊥";
pub const UNDEFINED: &str = "undefined";

/// A labelled matrix of optional cells, the common shape of every table printed here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub corner: String,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<Option<String>>)>,
}

impl Grid {
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let header = std::iter::once(CSV_CORNER).chain(self.columns.iter().map(String::as_str));
        w.write_record(header).expect("writing to memory");
        for (label, cells) in &self.rows {
            let record = std::iter::once(label.as_str())
                .chain(cells.iter().map(|c| c.as_deref().unwrap_or("")));
            w.write_record(record).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flushing to memory")).expect("utf-8 input")
    }

    pub fn to_markdown(&self) -> String {
        let cell = |c: &Option<String>| c.clone().unwrap_or_else(|| BOTTOM.to_owned());
        let mut table: Vec<Vec<String>> = Vec::with_capacity(self.rows.len() + 1);
        table.push(
            std::iter::once(self.corner.clone())
                .chain(self.columns.iter().cloned())
                .collect(),
        );
        for (label, cells) in &self.rows {
            table.push(
                std::iter::once(label.clone())
                    .chain(cells.iter().map(cell))
                    .collect(),
            );
        }
        let widths: Vec<usize> = (0..table[0].len())
            .map(|i| {
                table
                    .iter()
                    .map(|r| r[i].chars().count())
                    .max()
                    .unwrap_or(0)
                    .max(3)
            })
            .collect();
        let line = |row: &[String]| {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            format!("| {} |\n", cells.join(" | "))
        };
        let mut out = line(&table[0]);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
        for row in &table[1..] {
            out.push_str(&line(row));
        }
        out
    }
}

/// Rows are states, columns are actions, cells are outcome states.
pub fn transition_grid(world: &World) -> Grid {
    Grid {
        corner: "state".to_owned(),
        columns: world.action_symbols().to_vec(),
        rows: world
            .states()
            .map(|s| {
                let cells = world
                    .actions()
                    .map(|a| {
                        world
                            .apply_min(a, s)
                            .map(|t| world.state_label(t).to_owned())
                    })
                    .collect();
                (world.state_label(s).to_owned(), cells)
            })
            .collect(),
    }
}

/// Entry `[r][c]` is `c * (r * w0)`.
pub fn state_table_grid(world: &World, table: &StateCayleyTable) -> Grid {
    Grid {
        corner: format!("{} *", world.state_label(table.initial)),
        columns: table.labels.clone(),
        rows: table
            .labels
            .iter()
            .zip(&table.entries)
            .map(|(l, row)| {
                let cells = row
                    .iter()
                    .map(|e| e.map(|s| world.state_label(s).to_owned()))
                    .collect();
                (l.clone(), cells)
            })
            .collect(),
    }
}

/// Entry `[r][c]` is `c ∘ r`.
pub fn action_table_grid(table: &ActionCayleyTable) -> Grid {
    Grid {
        corner: "∘".to_owned(),
        columns: table.labels.clone(),
        rows: table
            .labels
            .iter()
            .zip(&table.entries)
            .map(|(l, row)| {
                let cells = row
                    .iter()
                    .map(|e| e.map(|i| table.labels[i].clone()))
                    .collect();
                (l.clone(), cells)
            })
            .collect(),
    }
}

/// How many members a class listing shows.
pub const SAMPLE_MEMBERS: usize = 5;

/// One row per class: representative, member count, first members in shortlex order.
pub fn class_grid(world: &World, classes: &EquivalenceClassSet) -> Grid {
    Grid {
        corner: "class".to_owned(),
        columns: vec!["members".to_owned(), "sample".to_owned()],
        rows: classes
            .classes()
            .iter()
            .map(|c| {
                let sample: Vec<String> = c
                    .members
                    .iter()
                    .take(SAMPLE_MEMBERS)
                    .map(|m| world.format_word(m))
                    .collect();
                (
                    world.format_word(&c.representative),
                    vec![Some(c.members.len().to_string()), Some(sample.join(", "))],
                )
            })
            .collect(),
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "Y"
    } else {
        "N"
    }
}

/// The five property rows with a Y/N column.
pub fn property_grid(report: &AlgebraReport) -> Grid {
    Grid {
        corner: "property".to_owned(),
        columns: vec!["value".to_owned()],
        rows: report
            .property_rows()
            .iter()
            .map(|(name, v)| (name.to_string(), vec![Some(yes_no(*v).to_owned())]))
            .collect(),
    }
}

pub fn order_text(o: OrderInfo) -> String {
    match o {
        OrderInfo::GroupOrder(n) => n.to_string(),
        OrderInfo::IndexPeriod { index, period } => format!("index {index}, period {period}"),
        OrderInfo::Partial { defined } => format!("partial, {defined} defined powers"),
    }
}

pub fn order_grid(report: &AlgebraReport) -> Grid {
    Grid {
        corner: "element".to_owned(),
        columns: vec!["order".to_owned()],
        rows: report
            .labels
            .iter()
            .zip(&report.orders)
            .map(|(l, o)| (l.clone(), vec![Some(order_text(*o))]))
            .collect(),
    }
}

#[derive(Serialize)]
struct TablesDump<'a> {
    world: &'a str,
    initial: &'a str,
    elements: usize,
    null_words: usize,
    labels: &'a [String],
    state_table: Vec<Vec<String>>,
    action_table: Vec<Vec<String>>,
    classes: Vec<ClassDump>,
}

#[derive(Serialize)]
struct ClassDump {
    representative: String,
    size: usize,
    sample: Vec<String>,
    transform: Vec<String>,
}

fn cells<T>(rows: &[Vec<Option<T>>], show: impl Fn(&T) -> String) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|c| c.as_ref().map_or_else(|| UNDEFINED.to_owned(), &show))
                .collect()
        })
        .collect()
}

/// Both tables and the class listing as one TOML document.
pub fn run_to_toml(world: &World, run: &AlgebraRun) -> String {
    let labels = &run.action_table.labels;
    let dump = TablesDump {
        world: world.name(),
        initial: world.state_label(run.classes.initial()),
        elements: run.len(),
        null_words: run.classes.null_words().len(),
        labels,
        state_table: cells(&run.state_table.entries, |s| {
            world.state_label(*s).to_owned()
        }),
        action_table: cells(&run.action_table.entries, |i| labels[*i].clone()),
        classes: run
            .classes
            .classes()
            .iter()
            .map(|c| ClassDump {
                representative: world.format_word(&c.representative),
                size: c.members.len(),
                sample: c
                    .members
                    .iter()
                    .take(SAMPLE_MEMBERS)
                    .map(|m| world.format_word(m))
                    .collect(),
                transform: c
                    .transform
                    .images()
                    .iter()
                    .map(|s| {
                        s.map_or_else(|| UNDEFINED.to_owned(), |s| world.state_label(s).to_owned())
                    })
                    .collect(),
            })
            .collect(),
    };
    toml::to_string(&dump).expect("dump always serializes")
}

#[derive(Serialize)]
struct ReportDump<'a> {
    classification: &'a str,
    totality: bool,
    identity: Option<&'a str>,
    left_identities: Vec<&'a str>,
    right_identities: Vec<&'a str>,
    inverse: bool,
    associative: bool,
    commutative: bool,
    non_commuting_pair: Option<[&'a str; 2]>,
    orders: Vec<[String; 2]>,
}

pub fn report_to_toml(report: &AlgebraReport) -> String {
    let l = |i: usize| report.labels[i].as_str();
    let dump = ReportDump {
        classification: report.classification.as_str(),
        totality: report.totality,
        identity: report.identity.two_sided.map(l),
        left_identities: report.identity.left.iter().map(|&i| l(i)).collect(),
        right_identities: report.identity.right.iter().map(|&i| l(i)).collect(),
        inverse: report.all_invertible(),
        associative: report.associative,
        commutative: report.commutative,
        non_commuting_pair: report
            .commutativity_counterexample
            .map(|(a, b)| [l(a), l(b)]),
        orders: report
            .labels
            .iter()
            .zip(&report.orders)
            .map(|(lab, o)| [lab.clone(), order_text(*o)])
            .collect(),
    };
    toml::to_string(&dump).expect("report always serializes")
}

/// One line of the world-condition report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionRow {
    pub condition: &'static str,
    pub result: &'static str,
    pub witness: String,
}

impl ConditionRow {
    pub fn passed(&self) -> bool {
        self.result == "PASS"
    }
}

pub fn condition_rows(
    world: &World,
    table: &ActionCayleyTable,
    wc1: &Wc1Report,
    wc2: &Wc2Report,
    wc3: &Wc3Outcome,
) -> Vec<ConditionRow> {
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let first = ConditionRow {
        condition: "WC1",
        result: verdict(wc1.holds),
        witness: wc1
            .counterexample
            .map(|(w, a)| {
                format!(
                    "{} undefined at {}",
                    world.action_symbol(a),
                    world.state_label(w)
                )
            })
            .unwrap_or_default(),
    };
    let second = ConditionRow {
        condition: "WC2",
        result: verdict(wc2.holds),
        witness: match (&wc2.reason, wc2.counterexample) {
            (Some(r), _) => r.clone(),
            (None, Some(a)) => format!("{} has no inverse", table.labels[a]),
            (None, None) => String::new(),
        },
    };
    let (result, witness) = match *wc3 {
        Wc3Outcome::Holds => ("PASS", String::new()),
        Wc3Outcome::Fails(a, b) => (
            "FAIL",
            format!(
                "no transition-preserving bijection sends {} to {}",
                world.state_label(a),
                world.state_label(b)
            ),
        ),
        Wc3Outcome::Inconclusive(a, b) => (
            "INCONCLUSIVE",
            format!(
                "search budget exhausted sending {} to {}",
                world.state_label(a),
                world.state_label(b)
            ),
        ),
    };
    vec![
        first,
        second,
        ConditionRow {
            condition: "WC3",
            result,
            witness,
        },
    ]
}

pub fn condition_grid(rows: &[ConditionRow]) -> Grid {
    Grid {
        corner: "condition".to_owned(),
        columns: vec!["result".to_owned(), "witness".to_owned()],
        rows: rows
            .iter()
            .map(|r| {
                (
                    r.condition.to_owned(),
                    vec![Some(r.result.to_owned()), Some(r.witness.clone())],
                )
            })
            .collect(),
    }
}

pub fn conditions_to_toml(rows: &[ConditionRow]) -> String {
    #[derive(Serialize)]
    struct Dump<'a> {
        conditions: &'a [ConditionRow],
    }
    toml::to_string(&Dump { conditions: rows }).expect("conditions always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{explore, EngineOptions};
    use crate::gallery;

    #[test]
    fn grid_transition_table() {
        let md = transition_grid(&gallery::cyclical_2x2()).to_markdown();
        let lines: Vec<&str> = md.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "| state | 1   | U   | D   | L   | R   |");
        assert_eq!(lines[2], "| w0    | w0  | w2  | w2  | w1  | w1  |");
    }

    #[test]
    fn csv_marks_undefined_as_empty() {
        let csv = transition_grid(&gallery::wall_masked()).to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "undefined=empty,1,U,D,L,R");
        assert_eq!(lines[1], "w0,w0,w2,w2,w1,");
        assert_eq!(lines[2], "w1,w1,w3,w3,,w0");
    }

    #[test]
    fn csv_quotes_awkward_labels() {
        let g = Grid {
            corner: "x".into(),
            columns: vec!["a,b".into()],
            rows: vec![("r".into(), vec![Some("say \"hi\"".into())])],
        };
        assert_eq!(
            g.to_csv(),
            "undefined=empty,\"a,b\"\nr,\"say \"\"hi\"\"\"\n"
        );
    }

    #[test]
    fn markdown_marks_undefined_as_bottom() {
        let world = gallery::wall_masked();
        let run = explore(&world, world.initial(), EngineOptions::default()).unwrap();
        let md = action_table_grid(&run.action_table).to_markdown();
        assert!(md.contains(BOTTOM));
        assert_eq!(md.lines().count(), run.len() + 2);
    }

    #[test]
    fn wall_conditions_name_their_witnesses() {
        use crate::analysis::{check_wc1, check_wc2, check_wc3_homogeneity, DEFAULT_WC3_CAP};
        let world = gallery::wall_identity();
        let run = explore(&world, world.initial(), EngineOptions::default()).unwrap();
        let rows = condition_rows(
            &world,
            &run.action_table,
            &check_wc1(&world),
            &check_wc2(&run.action_table),
            &check_wc3_homogeneity(&world, DEFAULT_WC3_CAP),
        );
        let results: Vec<&str> = rows.iter().map(|r| r.result).collect();
        assert_eq!(results, ["PASS", "FAIL", "FAIL"]);
        assert!(rows[1].witness.ends_with("has no inverse"));
        let md = condition_grid(&rows).to_markdown();
        assert!(!md.contains(BOTTOM));
        let value: toml::Table = toml::from_str(&conditions_to_toml(&rows)).unwrap();
        assert_eq!(value["conditions"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn structured_dump_parses_back() {
        let world = gallery::cyclical_2x2();
        let run = explore(&world, world.initial(), EngineOptions::default()).unwrap();
        let text = run_to_toml(&world, &run);
        let value: toml::Table = toml::from_str(&text).unwrap();
        assert_eq!(value["elements"].as_integer(), Some(4));
        assert_eq!(value["classes"].as_array().unwrap().len(), 4);
    }
}
