//! Text and tab-separated output.

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
}

/// Buffers records; text mode pads columns, tsv mode joins with tabs.
pub struct Printer {
    format: Format,
    lines: Vec<String>,
}

impl Printer {
    pub fn new(format: Format) -> Self {
        Self {
            format,
            lines: Vec::new(),
        }
    }

    pub fn record<S: AsRef<str>>(&mut self, fields: &[S]) {
        let sep = match self.format {
            Format::Text => "  ",
            Format::Tsv => "\t",
        };
        let line = fields.iter().map(|f| f.as_ref()).collect::<Vec<_>>().join(sep);
        self.lines.push(line);
    }

    /// Free-form line; a comment in tsv mode.
    pub fn note(&mut self, text: impl AsRef<str>) {
        match self.format {
            Format::Text => self.lines.push(text.as_ref().to_string()),
            Format::Tsv => self.lines.push(format!("# {}", text.as_ref())),
        }
    }

    pub fn finish(self) -> String {
        let mut out = self.lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}
