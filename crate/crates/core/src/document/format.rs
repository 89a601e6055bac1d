//! Structure-definition documents.
//!
//! A document is a sectioned key/value file:
//!
//! ```text
//! [chart]
//! dim = 3
//! coords = ["x", "y", "z"]
//!
//! [contact]
//! eta = ["-y", "0", "1"]        # or eta = "dz - y*dx"
//!
//! [psi]
//! matrix = [
//!   ["-1", "0", "0"],
//!   ["0", "1", "0"],
//!   ["-y", "0", "0"],
//! ]
//!
//! [distributions]
//! L1 = [["0", "1", "0"]]
//! L2 = [["1", "0", "y"]]
//! ```
//!
//! Matrices are written row by row; column `j` is the image of the `j`-th
//! coordinate field. Distributions list component vectors of frame fields.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::str::FromStr;

use serde::Deserialize;

use super::expr::{parse_expression, parse_one_form, print_expression};
use crate::error::{Error, Result};
use crate::exact::{Chart, ChartRef, Endomorphism, Matrix, Metric, OneForm, Point, RationalFn, VectorField};

const SECTIONS: [&str; 7] = [
    "chart",
    "contact",
    "psi",
    "metric",
    "distributions",
    "contact_metric",
    "options",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Validate,
    Classify,
    Connections,
    Theorems,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Validate,
        Suite::Classify,
        Suite::Connections,
        Suite::Theorems,
        Suite::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Validate => "validate",
            Suite::Classify => "classify",
            Suite::Connections => "connections",
            Suite::Theorems => "theorems",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Format(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactMetricData {
    pub phi: Endomorphism,
    pub g: Metric,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureDocument {
    pub chart: ChartRef,
    pub eta: Option<OneForm>,
    pub psi: Option<Endomorphism>,
    pub metric: Option<Metric>,
    pub l1: Option<Vec<VectorField>>,
    pub l2: Option<Vec<VectorField>>,
    pub contact_metric: Option<ContactMetricData>,
    pub point: Option<Point>,
    pub suite: Option<Suite>,
}

impl StructureDocument {
    pub fn new(chart: &ChartRef) -> Self {
        StructureDocument {
            chart: chart.clone(),
            eta: None,
            psi: None,
            metric: None,
            l1: None,
            l2: None,
            contact_metric: None,
            point: None,
            suite: None,
        }
    }

    pub fn distributions(&self) -> Option<(&[VectorField], &[VectorField])> {
        Some((self.l1.as_deref()?, self.l2.as_deref()?))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    chart: Option<RawChart>,
    contact: Option<RawContact>,
    psi: Option<RawMatrix>,
    metric: Option<RawMatrix>,
    distributions: Option<RawDistributions>,
    contact_metric: Option<RawContactMetric>,
    options: Option<RawOptions>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChart {
    dim: Option<usize>,
    coords: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawForm {
    Text(String),
    Components(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawContact {
    eta: RawForm,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    matrix: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDistributions {
    #[serde(rename = "L1")]
    l1: Vec<Vec<String>>,
    #[serde(rename = "L2")]
    l2: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawContactMetric {
    phi: Vec<Vec<String>>,
    #[serde(rename = "G")]
    g: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    point: Option<String>,
    suite: Option<String>,
}

/// Rejects repeated `[section]` headers before handing the text to the
/// key/value parser, so the error names the section.
fn scan_sections(text: &str) -> Result<()> {
    let mut seen = BTreeSet::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        let Some(inner) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) else {
            continue;
        };
        let name = inner.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            continue;
        }
        if !seen.insert(name.to_string()) {
            return Err(Error::DuplicateSection(name.into()));
        }
    }
    Ok(())
}

fn parse_vector(chart: &ChartRef, cells: &[String], location: &str) -> Result<Vec<RationalFn>> {
    if cells.len() != chart.dim() {
        return Err(Error::ShapeMismatch(format!(
            "{location} has {} entries on a chart of dimension {}",
            cells.len(),
            chart.dim()
        )));
    }
    cells
        .iter()
        .enumerate()
        .map(|(k, c)| parse_expression(c, chart).map_err(|e| e.at(format!("{location} entry {k}"))))
        .collect()
}

fn parse_matrix(chart: &ChartRef, rows: &[Vec<String>], location: &str) -> Result<Matrix> {
    let dim = chart.dim();
    if rows.len() != dim {
        return Err(Error::ShapeMismatch(format!(
            "{location} has {} rows on a chart of dimension {dim}",
            rows.len()
        )));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(r, row)| parse_vector(chart, row, &format!("{location} row {r}")))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(dim, rows)
}

fn parse_frame(chart: &ChartRef, fields: &[Vec<String>], location: &str) -> Result<Vec<VectorField>> {
    fields
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let loc = format!("{location} field {k}");
            VectorField::new(chart, parse_vector(chart, f, &loc)?)
        })
        .collect()
}

fn parse_metric(chart: &ChartRef, rows: &[Vec<String>], location: &str) -> Result<Metric> {
    Metric::new(chart, parse_matrix(chart, rows, location)?).map_err(|e| e.at(location))
}

/// Parses and validates a document.
pub fn parse_structure_text(text: &str) -> Result<StructureDocument> {
    scan_sections(text)?;
    let raw: RawDocument = toml::from_str(text).map_err(|e| Error::Format(e.message().to_string()))?;
    let rc = raw.chart.ok_or_else(|| Error::MissingSection("chart".into()))?;
    let chart = Chart::new(rc.coords.iter().cloned())?;
    if let Some(d) = rc.dim {
        if d != chart.dim() {
            return Err(Error::ShapeMismatch(format!(
                "[chart] declares dim = {d} but lists {} coordinates",
                chart.dim()
            )));
        }
    }
    let mut doc = StructureDocument::new(&chart);
    if let Some(c) = raw.contact {
        doc.eta = Some(match c.eta {
            RawForm::Text(s) => parse_one_form(&s, &chart).map_err(|e| e.at("[contact] eta"))?,
            RawForm::Components(v) => OneForm::new(&chart, parse_vector(&chart, &v, "[contact] eta")?)?,
        });
    }
    if let Some(p) = raw.psi {
        doc.psi = Some(Endomorphism::new(&chart, parse_matrix(&chart, &p.matrix, "[psi] matrix")?)?);
    }
    if let Some(m) = raw.metric {
        doc.metric = Some(parse_metric(&chart, &m.matrix, "[metric] matrix")?);
    }
    if let Some(d) = raw.distributions {
        doc.l1 = Some(parse_frame(&chart, &d.l1, "[distributions] L1")?);
        doc.l2 = Some(parse_frame(&chart, &d.l2, "[distributions] L2")?);
    }
    if let Some(cm) = raw.contact_metric {
        doc.contact_metric = Some(ContactMetricData {
            phi: Endomorphism::new(&chart, parse_matrix(&chart, &cm.phi, "[contact_metric] phi")?)?,
            g: parse_metric(&chart, &cm.g, "[contact_metric] G")?,
        });
    }
    if let Some(o) = raw.options {
        if let Some(p) = o.point {
            doc.point = Some(Point::parse(&chart, &p).map_err(|e| e.at("[options] point"))?);
        }
        if let Some(s) = o.suite {
            doc.suite = Some(s.parse()?);
        }
    }
    Ok(doc)
}

pub fn parse_structure_file(path: &std::path::Path) -> Result<StructureDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_structure_text(&text)
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn vector_line(chart: &Chart, comps: &[RationalFn]) -> String {
    let cells: Vec<String> = comps.iter().map(|c| quote(&print_expression(c, chart))).collect();
    format!("[{}]", cells.join(", "))
}

fn write_matrix(out: &mut String, key: &str, chart: &Chart, m: &Matrix) {
    let _ = writeln!(out, "{key} = [");
    for r in 0..m.nrows() {
        let _ = writeln!(out, "  {},", vector_line(chart, &m.row(r)));
    }
    out.push_str("]\n");
}

fn write_frame(out: &mut String, key: &str, chart: &Chart, frame: &[VectorField]) {
    let _ = writeln!(out, "{key} = [");
    for f in frame {
        let _ = writeln!(out, "  {},", vector_line(chart, f.components()));
    }
    out.push_str("]\n");
}

/// Canonical printing; `parse ∘ print` is the identity on documents.
pub fn print_structure(doc: &StructureDocument) -> String {
    let chart = &doc.chart;
    let mut out = String::new();
    let coords: Vec<String> = chart.names().iter().map(|n| quote(n)).collect();
    let _ = writeln!(out, "[{}]\ndim = {}\ncoords = [{}]", SECTIONS[0], chart.dim(), coords.join(", "));
    if let Some(eta) = &doc.eta {
        let _ = writeln!(out, "\n[contact]\neta = {}", vector_line(chart, eta.components()));
    }
    if let Some(psi) = &doc.psi {
        out.push_str("\n[psi]\n");
        write_matrix(&mut out, "matrix", chart, psi.matrix());
    }
    if let Some(g) = &doc.metric {
        out.push_str("\n[metric]\n");
        write_matrix(&mut out, "matrix", chart, g.matrix());
    }
    if let (Some(l1), Some(l2)) = (&doc.l1, &doc.l2) {
        out.push_str("\n[distributions]\n");
        write_frame(&mut out, "L1", chart, l1);
        write_frame(&mut out, "L2", chart, l2);
    }
    if let Some(cm) = &doc.contact_metric {
        out.push_str("\n[contact_metric]\n");
        write_matrix(&mut out, "phi", chart, cm.phi.matrix());
        write_matrix(&mut out, "G", chart, cm.g.matrix());
    }
    if doc.point.is_some() || doc.suite.is_some() {
        out.push_str("\n[options]\n");
        if let Some(p) = &doc.point {
            let _ = writeln!(out, "point = {}", quote(&p.to_assignments(chart)));
        }
        if let Some(s) = doc.suite {
            let _ = writeln!(out, "suite = {}", quote(s.as_str()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const STANDARD: &str = r#"
[chart]
coords = ["x", "y", "z"]

[contact]
eta = "dz - y*dx"

[psi]
matrix = [["-1", "0", "0"], ["0", "1", "0"], ["-y", "0", "0"]]
"#;

    #[test]
    fn parses_and_round_trips() {
        let doc = parse_structure_text(STANDARD).unwrap();
        let eta = doc.eta.as_ref().unwrap();
        assert_eq!(eta.to_expr(), "-y*dx + dz");
        let printed = print_structure(&doc);
        let again = parse_structure_text(&printed).unwrap();
        assert_eq!(again, doc);
        assert_eq!(print_structure(&again), printed);
    }

    #[test]
    fn rejects_bad_documents() {
        let short = STANDARD.replace(r#"["-y", "0", "0"]"#, "");
        let short = short.replace(r#"["0", "1", "0"], ]"#, r#"["0", "1", "0"]]"#);
        assert!(matches!(parse_structure_text(&short), Err(Error::ShapeMismatch(_))));
        let dup = format!("{STANDARD}\n[contact]\neta = \"dz\"\n");
        assert_eq!(parse_structure_text(&dup), Err(Error::DuplicateSection("contact".into())));
        let unknown = format!("{STANDARD}\n[options]\ncolour = \"red\"\n");
        assert!(matches!(parse_structure_text(&unknown), Err(Error::Format(_))));
        assert_eq!(
            parse_structure_text("[contact]\neta = \"dz\"\n"),
            Err(Error::MissingSection("chart".into()))
        );
        let bad = STANDARD.replace("\"-y\"", "\"-w\"");
        assert!(matches!(
            parse_structure_text(&bad).unwrap_err().root(),
            Error::UnknownIdentifier { .. }
        ));
    }
}
