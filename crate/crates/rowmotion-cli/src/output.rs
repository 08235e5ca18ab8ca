use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One command's result in every output format.
pub struct Report {
    pub kind: &'static str,
    pub body: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    /// False when a check failed.
    pub ok: bool,
}

impl Report {
    pub fn emit(&self, format: Format) -> io::Result<()> {
        self.write_to(format, io::stdout().lock())
    }

    pub fn write_to(&self, format: Format, mut out: impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let mut v =
                    json!({ "schema": format!("rowmotion/{}/v{SCHEMA_VERSION}", self.kind) });
                if let (Value::Object(m), Value::Object(b)) = (&mut v, &self.body) {
                    m.extend(b.clone());
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
            Format::Text => writeln!(out, "{}", self.text.trim_end()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report() -> Report {
        Report {
            kind: "demo",
            body: json!({ "answer": "3/2" }),
            header: vec!["name", "value"],
            rows: vec![vec!["a,b".into(), "1".into()]],
            text: "c = 3/2\n\n".into(),
            ok: true,
        }
    }

    fn render(format: Format) -> String {
        let mut buf = vec![];
        report().write_to(format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn json_carries_schema_and_body() {
        let v: Value = serde_json::from_str(&render(Format::Json)).unwrap();
        assert_eq!(v["schema"], "rowmotion/demo/v1");
        assert_eq!(v["answer"], "3/2");
    }

    #[test]
    fn csv_quotes_and_text_trims() {
        assert_eq!(render(Format::Csv), "name,value\n\"a,b\",1\n");
        assert_eq!(render(Format::Text), "c = 3/2\n");
    }
}
