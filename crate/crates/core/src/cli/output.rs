//! Table emission: CSV and TSV with `#` metadata lines ahead of the column
//! header, or JSON as a bare array of row objects.

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Tsv,
}

/// Ordered `key = value` pairs written above delimited tables.
pub type Meta = Vec<(&'static str, String)>;

pub fn write_table<R: Serialize>(
    out: &mut dyn Write,
    format: Format,
    meta: &Meta,
    rows: &[R],
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)
        }
        Format::Csv | Format::Tsv => {
            for (key, value) in meta {
                writeln!(out, "# {key} = {value}")?;
            }
            let delimiter = if format == Format::Csv { b',' } else { b'\t' };
            let mut w = csv::WriterBuilder::new()
                .delimiter(delimiter)
                .from_writer(&mut *out);
            for row in rows {
                w.serialize(row).map_err(std::io::Error::other)?;
            }
            w.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        n: u64,
        value: f64,
        bound: Option<f64>,
    }

    fn rows() -> Vec<Row> {
        vec![
            Row {
                n: 1,
                value: 0.5,
                bound: Some(1e-9),
            },
            Row {
                n: 2,
                value: 0.25,
                bound: None,
            },
        ]
    }

    #[test]
    fn csv_has_meta_then_header() {
        let mut buf = Vec::new();
        let meta: Meta = vec![("command", "demo".into()), ("tol", "1e-8".into())];
        write_table(&mut buf, Format::Csv, &meta, &rows()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "# command = demo\n# tol = 1e-8\nn,value,bound\n1,0.5,1e-9\n2,0.25,\n"
        );
    }

    #[test]
    fn tsv_uses_tabs() {
        let mut buf = Vec::new();
        write_table(&mut buf, Format::Tsv, &Vec::new(), &rows()).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with("n\tvalue\tbound\n"));
    }

    #[test]
    fn json_is_an_array_of_objects() {
        let mut buf = Vec::new();
        write_table(&mut buf, Format::Json, &Vec::new(), &rows()).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert_eq!(arr[0]["n"], 1);
        assert!(arr[1]["bound"].is_null());
    }
}
