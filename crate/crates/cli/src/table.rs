//! Flat tables of canonical rationals, as JSON or CSV.
//!
//! Cells hold a rational `"p/q"` (`"p"` when `q = 1`), a space-separated list
//! of rationals, or nothing. CSV carries the metadata as leading `# key=value`
//! lines.

use std::collections::BTreeMap;

use dunkl_core::{parse_rational, Rational};
use serde::{Deserialize, Serialize};

use crate::args::Format;
use crate::{CliError, CliResult};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub meta: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Canonical cell for a list of rationals.
pub fn join_rationals<'a>(values: impl IntoIterator<Item = &'a Rational>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses a cell, rejecting anything that is not already canonical.
pub fn parse_cell(cell: &str) -> CliResult<Vec<Rational>> {
    if cell.is_empty() {
        return Ok(Vec::new());
    }
    cell.split(' ')
        .map(|tok| {
            let v = parse_rational(tok).map_err(CliError::Table)?;
            if v.to_string() != tok {
                return Err(CliError::Table(format!("non-canonical rational {tok:?}")));
            }
            Ok(v)
        })
        .collect()
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Table::default()
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx].as_str()).collect())
    }

    /// Every cell as exact values; fails on a malformed or non-canonical cell.
    pub fn values(&self) -> CliResult<Vec<Vec<Vec<Rational>>>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|c| parse_cell(c)).collect())
            .collect()
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn parse(text: &str, format: Format) -> CliResult<Self> {
        match format {
            Format::Json => Self::from_json(text),
            Format::Csv => Self::from_csv(text),
        }
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Table(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        let table: Table = serde_json::from_str(text).map_err(|e| CliError::Table(e.to_string()))?;
        table.values()?;
        Ok(table)
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={v}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Table(e.to_string());
        w.write_record(&self.columns).map_err(err)?;
        for row in &self.rows {
            w.write_record(row).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Table(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).map_err(|e| CliError::Table(e.to_string()))?);
        Ok(out)
    }

    pub fn from_csv(text: &str) -> CliResult<Self> {
        let mut meta = BTreeMap::new();
        let mut body = text;
        while let Some(rest) = body.strip_prefix("# ") {
            let (line, tail) = rest.split_once('\n').unwrap_or((rest, ""));
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Table(format!("bad metadata line {line:?}")))?;
            meta.insert(k.to_string(), v.to_string());
            body = tail;
        }
        let mut r = csv::Reader::from_reader(body.as_bytes());
        let err = |e: csv::Error| CliError::Table(e.to_string());
        let columns = r.headers().map_err(err)?.iter().map(String::from).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(String::from).collect()).map_err(err))
            .collect::<CliResult<Vec<Vec<String>>>>()?;
        let table = Table { meta, columns, rows };
        table.values()?;
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["n", "gamma", "poly"]);
        t.meta.insert("family".into(), "hermite".into());
        t.meta.insert("mu".into(), "-1/4".into());
        t.push_row(vec!["1".into(), "1/8".into(), "0 1".into()]);
        t.push_row(vec!["2".into(), "".into(), "-1/8 0 1".into()]);
        t
    }

    #[test]
    fn round_trips_in_both_formats() {
        let t = sample();
        for format in [Format::Json, Format::Csv] {
            let text = t.render(format).unwrap();
            let back = Table::parse(&text, format).unwrap();
            assert_eq!(back, t);
            assert_eq!(back.render(format).unwrap(), text);
        }
    }

    #[test]
    fn rejects_non_canonical_cells() {
        assert!(parse_cell("2/4").is_err());
        assert!(parse_cell("1/1").is_err());
        assert!(parse_cell("0.5").is_err());
        assert_eq!(parse_cell("-3/7").unwrap().len(), 1);
    }
}
