use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::Rational;
use crate::error::{Error, Result};

/// An odd-dimensional coordinate chart with named coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
}

pub type ChartRef = Arc<Chart>;

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<ChartRef> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let dim = names.len();
        if dim < 3 || dim % 2 == 0 {
            return Err(Error::InvalidChart(format!(
                "dimension must be odd and at least 3, got {dim}"
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidChart(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{n}`")));
            }
        }
        Ok(Arc::new(Chart { names }))
    }

    /// Darboux coordinates `x_1..x_n, y_1..y_n, z` (plain `x, y, z` for n = 1).
    pub fn darboux(n: usize) -> ChartRef {
        assert!(n >= 1);
        let names: Vec<String> = if n == 1 {
            vec!["x".into(), "y".into(), "z".into()]
        } else {
            (1..=n)
                .map(|i| format!("x{i}"))
                .chain((1..=n).map(|i| format!("y{i}")))
                .chain(std::iter::once("z".to_string()))
                .collect()
        };
        Chart::new(names).expect("darboux chart is valid")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Half the reduced dimension: dim = 2n + 1.
    pub fn n(&self) -> usize {
        (self.names.len() - 1) / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A point of the chart with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    values: Vec<Rational>,
}

impl Point {
    pub fn origin(chart: &Chart) -> Self {
        Point {
            values: vec![Rational::zero(); chart.dim()],
        }
    }

    pub fn from_values(chart: &Chart, values: Vec<Rational>) -> Result<Self> {
        if values.len() != chart.dim() {
            return Err(Error::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                chart.dim(),
                values.len()
            )));
        }
        Ok(Point { values })
    }

    pub fn from_map(chart: &Chart, map: &BTreeMap<String, Rational>) -> Result<Self> {
        for key in map.keys() {
            if chart.index_of(key).is_none() {
                return Err(Error::InvalidPoint(format!("unknown coordinate `{key}`")));
            }
        }
        let values = chart
            .names()
            .iter()
            .map(|n| {
                map.get(n)
                    .cloned()
                    .ok_or_else(|| Error::InvalidPoint(format!("coordinate `{n}` not assigned")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Point { values })
    }

    /// Parses `"x=0,y=1/2,z=-3"`; every coordinate exactly once.
    pub fn parse(chart: &Chart, src: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in src.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidPoint(format!("expected name=value, got `{part}`")))?;
            let name = name.trim().to_string();
            let value = parse_rational(value.trim())
                .ok_or_else(|| Error::InvalidPoint(format!("bad rational `{}`", value.trim())))?;
            if map.insert(name.clone(), value).is_some() {
                return Err(Error::InvalidPoint(format!("coordinate `{name}` assigned twice")));
            }
        }
        Self::from_map(chart, &map)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn to_assignments(&self, chart: &Chart) -> String {
        chart
            .names()
            .iter()
            .zip(&self.values)
            .map(|(n, v)| format!("{n}={}", super::ratfn::rational_to_expr(v)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses `int` or `int/int` (optionally signed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_dimension_rules() {
        assert!(Chart::new(["x", "y"]).is_err());
        assert!(Chart::new(["x", "y", "z", "w"]).is_err());
        assert!(Chart::new(["x", "x", "z"]).is_err());
        assert!(Chart::new(["x", "1y", "z"]).is_err());
        let c = Chart::darboux(2);
        assert_eq!(c.names(), ["x1", "x2", "y1", "y2", "z"]);
        assert_eq!(c.n(), 2);
    }

    #[test]
    fn point_parsing() {
        let c = Chart::darboux(1);
        let p = Point::parse(&c, "x=0, y=1/2,z=-3").unwrap();
        assert_eq!(p.to_assignments(&c), "x=0,y=1/2,z=-3");
        assert!(Point::parse(&c, "x=0,y=1").is_err());
        assert!(Point::parse(&c, "x=0,y=1,z=2,x=3").is_err());
        assert!(Point::parse(&c, "x=0,y=1,w=2").is_err());
        assert!(Point::parse(&c, "x=0,y=1/0,z=2").is_err());
    }
}
