use std::fmt::{self, Display};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Tsv,
}

/// Buffered check lines, emitted once all checks have run.
#[derive(Debug)]
pub struct Report {
    format: Format,
    lines: Vec<String>,
    failures: usize,
}

impl Report {
    pub fn new(format: Format) -> Self {
        Report {
            format,
            lines: Vec::new(),
            failures: 0,
        }
    }

    pub fn check(&mut self, ok: bool, id: impl Display, detail: impl Display) {
        if !ok {
            self.failures += 1;
        }
        let status = if ok { "PASS" } else { "FAIL" };
        self.lines.push(match self.format {
            Format::Text => format!("{status} {id} {detail}"),
            Format::Tsv => format!("{status}\t{id}\t{detail}"),
        });
    }

    /// A failure already recorded in the errata ledger.
    pub fn known(&mut self, id: impl Display, detail: impl Display, note: &str) {
        self.check(true, id, format_args!("{detail} [errata: {note}]"));
    }

    pub fn note(&mut self, text: impl Display) {
        self.lines.push(match self.format {
            Format::Text => text.to_string(),
            Format::Tsv => format!("#\t{text}"),
        });
    }

    pub fn failures(&self) -> usize {
        self.failures
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}
