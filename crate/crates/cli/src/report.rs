use std::fmt::{Display, Write};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Tsv,
}

/// A headline, ordered key/value fields and free-form detail lines.
#[derive(Debug)]
pub struct Report {
    headline: String,
    fields: Vec<(String, String)>,
    lines: Vec<String>,
    exit: u8,
}

impl Report {
    pub fn new(headline: impl Into<String>, exit: u8) -> Self {
        Report {
            headline: headline.into(),
            fields: Vec::new(),
            lines: Vec::new(),
            exit,
        }
    }

    pub fn field(mut self, key: &str, value: impl Display) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn line(mut self, line: impl Into<String>) -> Self {
        self.lines.push(line.into());
        self
    }

    pub fn exit_code(&self) -> u8 {
        self.exit
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                writeln!(out, "{}", self.headline).unwrap();
                for (k, v) in &self.fields {
                    writeln!(out, "  {k}: {v}").unwrap();
                }
                for l in &self.lines {
                    writeln!(out, "  {l}").unwrap();
                }
            }
            Format::Tsv => {
                writeln!(out, "summary\t{}", self.headline).unwrap();
                for (k, v) in &self.fields {
                    writeln!(out, "{k}\t{v}").unwrap();
                }
                for l in &self.lines {
                    writeln!(out, "detail\t{l}").unwrap();
                }
            }
        }
        out
    }
}
