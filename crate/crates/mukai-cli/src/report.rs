//! Report payloads and rendering.
//!
//! `json` output is schema-stable (field names documented per subcommand in
//! the README), `csv` flattens one instance per row, `table` is for humans
//! and not schema-stable.

use clap::ValueEnum;
use serde::Serialize;

use mukai_core::{
    ClassificationResult, EquivalenceWord, FamilyInstance, FixednessReport, Genus, IntMatrix,
    MarkmanInstance, MukaiVector, NormalizedTriple, PellSolution, PicardData,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct ActReport {
    pub g: Genus,
    pub word: EquivalenceWord,
    pub v: MukaiVector,
    pub result: MukaiVector,
    pub matrix: IntMatrix,
}

#[derive(Debug, Serialize)]
pub struct FixedReport {
    pub g: Genus,
    pub s: MukaiVector,
    pub d: i64,
    pub v: MukaiVector,
    #[serde(flatten)]
    pub outcome: FixednessReport,
}

#[derive(Debug, Serialize)]
pub struct PicardReport {
    pub g0: i64,
    pub k: i64,
    pub g: Genus,
    pub v: MukaiVector,
    #[serde(flatten)]
    pub data: PicardData,
}

#[derive(Debug, Serialize)]
pub struct NormalizeReport {
    pub g: Genus,
    #[serde(flatten)]
    pub normalized: NormalizedTriple,
}

#[derive(Debug, Serialize)]
pub struct VerifyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<VerifyCheck>,
}

#[derive(Debug)]
pub enum Report {
    Act(ActReport),
    Fixed(FixedReport),
    Family(Vec<FamilyInstance>),
    Markman(Vec<MarkmanInstance>),
    Picard(PicardReport),
    Classify(ClassificationResult),
    Verify(VerifyReport),
    Pell(PellSolution),
    Normalize(NormalizeReport),
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Table => self.render_table(),
        }
    }

    fn render_json(&self) -> String {
        let json = match self {
            Report::Act(r) => serde_json::to_string_pretty(r),
            Report::Fixed(r) => serde_json::to_string_pretty(r),
            Report::Family(r) => serde_json::to_string_pretty(r),
            Report::Markman(r) => serde_json::to_string_pretty(r),
            Report::Picard(r) => serde_json::to_string_pretty(r),
            Report::Classify(r) => serde_json::to_string_pretty(r),
            Report::Verify(r) => serde_json::to_string_pretty(r),
            Report::Pell(r) => serde_json::to_string_pretty(r),
            Report::Normalize(r) => serde_json::to_string_pretty(r),
        };
        let mut text = json.expect("reports always serialize");
        text.push('\n');
        text
    }

    fn render_csv(&self) -> String {
        match self {
            Report::Act(r) => csv_lines(&["r", "c", "s"], vec![vector_cells(&r.result)]),
            Report::Fixed(r) => csv_lines(
                &["condition_holds", "phi_fixed", "s_dot_v", "s_dot_v_is_zero"],
                vec![vec![
                    r.outcome.condition_holds.to_string(),
                    r.outcome.phi_fixed.to_string(),
                    r.outcome.s_dot_v.to_string(),
                    r.outcome.s_dot_v_is_zero.to_string(),
                ]],
            ),
            Report::Family(list) => csv_lines(
                &[
                    "g0",
                    "k",
                    "g",
                    "v_r",
                    "v_c",
                    "v_s",
                    "n",
                    "delta",
                    "v_squared",
                    "admissible",
                ],
                list.iter().map(family_cells).collect(),
            ),
            Report::Markman(list) => csv_lines(
                &["g", "r", "v_r", "v_c", "v_s", "dim", "regular"],
                list.iter()
                    .map(|m| {
                        let mut row = vec![m.g.to_string(), m.r.to_string()];
                        row.extend(vector_cells(&m.v));
                        row.push(m.dim.to_string());
                        row.push(m.regular.to_string());
                        row
                    })
                    .collect(),
            ),
            Report::Picard(r) => csv_lines(
                &[
                    "g0",
                    "k",
                    "g",
                    "delta",
                    "d_v_r",
                    "d_v_c",
                    "d_v_s",
                    "f_v_r",
                    "f_v_c",
                    "f_v_s",
                    "gram_00",
                    "gram_01",
                    "gram_10",
                    "gram_11",
                    "discriminant",
                ],
                vec![{
                    let mut row = vec![
                        r.g0.to_string(),
                        r.k.to_string(),
                        r.g.to_string(),
                        r.data.delta.to_string(),
                    ];
                    row.extend(vector_cells(&r.data.d_v));
                    row.extend(vector_cells(&r.data.f_v));
                    for i in 0..2 {
                        for j in 0..2 {
                            row.push(r.data.gram[(i, j)].to_string());
                        }
                    }
                    row.push(r.data.discriminant.to_string());
                    row
                }],
            ),
            Report::Classify(r) => csv_lines(
                &["n", "delta", "possible"],
                vec![vec![
                    r.n.to_string(),
                    r.delta.to_string(),
                    r.possible
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(";"),
                ]],
            ),
            Report::Verify(r) => csv_lines(
                &["check", "passed", "details"],
                r.checks
                    .iter()
                    .map(|c| vec![c.name.to_string(), c.passed.to_string(), c.details.clone()])
                    .collect(),
            ),
            Report::Pell(r) => csv_lines(
                &["d", "z", "y"],
                vec![vec![r.d.to_string(), r.z.to_string(), r.y.to_string()]],
            ),
            Report::Normalize(r) => csv_lines(
                &["s_r", "s_c", "s_s", "d", "v_r", "v_c", "v_s"],
                vec![{
                    let mut row = vector_cells(&r.normalized.s);
                    row.push(r.normalized.d.to_string());
                    row.extend(vector_cells(&r.normalized.v));
                    row
                }],
            ),
        }
    }

    fn render_table(&self) -> String {
        match self {
            Report::Act(r) => {
                let mut out = key_values(&[
                    ("g", r.g.to_string()),
                    ("v", r.v.to_string()),
                    ("result", r.result.to_string()),
                ]);
                out.push_str("matrix:\n");
                for i in 0..3 {
                    out.push_str(&format!(
                        "  [{}, {}, {}]\n",
                        r.matrix[(i, 0)],
                        r.matrix[(i, 1)],
                        r.matrix[(i, 2)]
                    ));
                }
                out
            }
            Report::Fixed(r) => {
                let mut pairs = vec![
                    ("g", r.g.to_string()),
                    ("s", r.s.to_string()),
                    ("d", r.d.to_string()),
                    ("v", r.v.to_string()),
                    ("condition_holds", r.outcome.condition_holds.to_string()),
                    ("phi_fixed", r.outcome.phi_fixed.to_string()),
                    ("s_dot_v", r.outcome.s_dot_v.to_string()),
                ];
                if r.outcome.s_dot_v_is_zero {
                    pairs.push((
                        "warning",
                        "s.v = 0: outside the fixed-vector hypothesis".into(),
                    ));
                }
                key_values(&pairs)
            }
            Report::Family(list) => table(
                &[
                    "g0",
                    "k",
                    "g",
                    "v_r",
                    "v_c",
                    "v_s",
                    "n",
                    "delta",
                    "v_squared",
                    "admissible",
                ],
                &list.iter().map(family_cells).collect::<Vec<_>>(),
            ),
            Report::Markman(list) => table(
                &["g", "r", "v", "dim", "regular"],
                &list
                    .iter()
                    .map(|m| {
                        vec![
                            m.g.to_string(),
                            m.r.to_string(),
                            m.v.to_string(),
                            m.dim.to_string(),
                            m.regular.to_string(),
                        ]
                    })
                    .collect::<Vec<_>>(),
            ),
            Report::Picard(r) => {
                let mut out = key_values(&[
                    ("g0", r.g0.to_string()),
                    ("k", r.k.to_string()),
                    ("g", r.g.to_string()),
                    ("v", r.v.to_string()),
                    ("delta", r.data.delta.to_string()),
                    ("d_v", r.data.d_v.to_string()),
                    ("f_v", r.data.f_v.to_string()),
                    ("discriminant", r.data.discriminant.to_string()),
                ]);
                out.push_str(&format!(
                    "gram:\n  [{}, {}]\n  [{}, {}]\n",
                    r.data.gram[(0, 0)],
                    r.data.gram[(0, 1)],
                    r.data.gram[(1, 0)],
                    r.data.gram[(1, 1)]
                ));
                out
            }
            Report::Classify(r) => {
                let possible = r
                    .possible
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ");
                let reason = |name: &str, case: &mukai_core::picard::CaseReason| {
                    let verdict = if case.included {
                        "possible"
                    } else {
                        "excluded"
                    };
                    let detail = case
                        .residue
                        .as_ref()
                        .map(|t| {
                            format!(
                                " (residue {} mod {} is {}a square)",
                                t.value,
                                t.modulus,
                                if t.is_square { "" } else { "not " }
                            )
                        })
                        .or_else(|| case.note.clone().map(|n| format!(" ({n})")))
                        .unwrap_or_else(|| match (case.delta_is_one, case.n_even) {
                            (Some(false), _) => " (delta != 1)".into(),
                            (_, Some(false)) => " (n odd)".into(),
                            _ => String::new(),
                        });
                    format!("{name}: {verdict}{detail}")
                };
                let mut out = key_values(&[
                    ("n", r.n.to_string()),
                    ("delta", r.delta.to_string()),
                    ("possible", possible),
                ]);
                out.push_str(&format!("  {}\n", reason("(2)", &r.reasons.two)));
                out.push_str(&format!(
                    "  {}\n",
                    reason(&format!("(n-1) = ({})", r.n - 1), &r.reasons.n_minus_one)
                ));
                out.push_str(&format!(
                    "  {}\n",
                    reason(
                        &format!("(2(n-1)) = ({})", 2 * (r.n - 1)),
                        &r.reasons.twice_n_minus_one
                    )
                ));
                out
            }
            Report::Verify(r) => {
                let mut rows = Vec::new();
                for c in &r.checks {
                    rows.push(vec![
                        if c.passed {
                            "PASS".into()
                        } else {
                            "FAIL".into()
                        },
                        c.name.to_string(),
                        c.details.clone(),
                    ]);
                }
                let mut out = table(&["status", "check", "details"], &rows);
                out.push_str(if r.passed {
                    "all checks passed\n"
                } else {
                    "SOME CHECKS FAILED\n"
                });
                out
            }
            Report::Pell(r) => table(
                &["D", "z", "y"],
                &[vec![r.d.to_string(), r.z.to_string(), r.y.to_string()]],
            ),
            Report::Normalize(r) => key_values(&[
                ("g", r.g.to_string()),
                ("s", r.normalized.s.to_string()),
                ("d", r.normalized.d.to_string()),
                ("v", r.normalized.v.to_string()),
            ]),
        }
    }
}

fn vector_cells(v: &MukaiVector) -> Vec<String> {
    vec![v.r.to_string(), v.c.to_string(), v.s.to_string()]
}

fn family_cells(inst: &FamilyInstance) -> Vec<String> {
    let mut row = vec![inst.g0.to_string(), inst.k.to_string(), inst.g.to_string()];
    row.extend(vector_cells(&inst.v));
    row.push(inst.n.to_string());
    row.push(inst.delta.to_string());
    row.push(inst.v_squared.to_string());
    row.push(inst.admissible.to_string());
    row
}

fn csv_escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn csv_lines(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut out = headers.join(",");
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), headers.len());
        out.push_str(
            &row.iter()
                .map(|c| csv_escape(c))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
    }
    out
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let mut parts = Vec::with_capacity(cells.len());
        for (i, cell) in cells.iter().enumerate() {
            if i + 1 == cells.len() {
                parts.push(cell.clone());
            } else {
                parts.push(format!("{cell:<width$}", width = widths[i]));
            }
        }
        let mut text = parts.join("  ");
        while text.ends_with(' ') {
            text.pop();
        }
        text.push('\n');
        text
    };
    let mut out = line(headers.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

fn key_values(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in pairs {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}

/// A value to print plus the process exit code.
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

impl Outcome {
    pub fn ok(report: Report) -> Self {
        Outcome {
            report,
            exit_code: 0,
        }
    }
}
