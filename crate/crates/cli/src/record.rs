//! JSON-lines and CSV output.

use std::io::{self, Write};

use gapwords::GapSpec;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Recurrence,
    Blockwise,
    Nondecreasing,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Recurrence => "recurrence",
            Method::Blockwise => "blockwise",
            Method::Nondecreasing => "nondecreasing",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub n: u64,
    pub f: u64,
    pub delta_f: u64,
    pub s: u64,
    pub method: Method,
    pub certified: bool,
}

/// SHA-256 of the canonical JSON form of a spec.
pub fn spec_hash(spec: &GapSpec) -> String {
    let text = serde_json::to_string(&spec.to_json_value()).expect("spec serializes");
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

pub struct Emitter<W: Write> {
    out: W,
    csv: bool,
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, csv: bool) -> Self {
        Emitter { out, csv }
    }

    /// Header and free-form records. CSV output keeps only rows.
    pub fn record<T: Serialize>(&mut self, value: &T) -> io::Result<()> {
        if self.csv {
            return Ok(());
        }
        self.line(value)
    }

    pub fn line<T: Serialize>(&mut self, value: &T) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, value)?;
        self.out.write_all(b"\n")
    }

    pub fn rows(&mut self, rows: &[Row]) -> io::Result<()> {
        if !self.csv {
            return rows.iter().try_for_each(|r| self.line(r));
        }
        writeln!(self.out, "n,f,delta_f,s,method,certified")?;
        for r in rows {
            writeln!(
                self.out,
                "{},{},{},{},{},{}",
                r.n,
                r.f,
                r.delta_f,
                r.s,
                r.method.as_str(),
                r.certified
            )?;
        }
        Ok(())
    }

    pub fn raw(&mut self, text: &str) -> io::Result<()> {
        self.out.write_all(text.as_bytes())
    }
}
