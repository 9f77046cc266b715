//! Record types and the three output encodings (text, JSON lines, CSV).
//!
//! JSON output is one object per line, with a fixed field order taken from
//! the struct definitions, so streams diff cleanly and re-serializing a
//! parsed record reproduces its bytes. CSV columns mirror the JSON fields.

use std::fs::File;
use std::io::{self, BufWriter, Stdout, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

enum Target {
    Stdout(BufWriter<Stdout>),
    File(BufWriter<File>),
}

impl Write for Target {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self {
            Target::Stdout(w) => w.write(buf),
            Target::File(w) => w.write(buf),
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self {
            Target::Stdout(w) => w.flush(),
            Target::File(w) => w.flush(),
        }
    }
}

/// Where and how records get written.
pub struct Sink {
    format: Format,
    target: Target,
}

impl Sink {
    pub fn open(format: Format, path: Option<&Path>) -> io::Result<Self> {
        let target = match path {
            Some(p) => Target::File(BufWriter::new(File::create(p)?)),
            None => Target::Stdout(BufWriter::new(io::stdout())),
        };
        Ok(Sink { format, target })
    }

    pub fn finish(&mut self) -> io::Result<()> {
        self.target.flush()
    }

    pub fn emit_chars(&mut self, records: &[CharRecord]) -> io::Result<()> {
        match self.format {
            Format::Json => self.json_lines(records),
            Format::Csv => {
                writeln!(self.target, "d,index,order,conductor,primitive,values")?;
                for r in records {
                    writeln!(
                        self.target,
                        "{},{},{},{},{},{}",
                        r.d,
                        r.index,
                        r.order,
                        r.conductor,
                        r.primitive,
                        csv_escape(&r.values.join("; "))
                    )?;
                }
                Ok(())
            }
            Format::Text => {
                writeln!(
                    self.target,
                    "characters mod {} (index order conductor primitive | values of chi(0..d-1))",
                    records.first().map_or(0, |r| r.d)
                )?;
                for r in records {
                    writeln!(
                        self.target,
                        "{:>5} {:>5} {:>9} {:>9} | {}",
                        r.index,
                        r.order,
                        r.conductor,
                        if r.primitive { "yes" } else { "no" },
                        r.values.join(", ")
                    )?;
                }
                Ok(())
            }
        }
    }

    pub fn emit_euler(&mut self, records: &[EulerRecord]) -> io::Result<()> {
        match self.format {
            Format::Json => self.json_lines(records),
            Format::Csv => {
                writeln!(self.target, "d,char_index,n,value")?;
                for r in records {
                    writeln!(
                        self.target,
                        "{},{},{},{}",
                        r.d,
                        r.char_index,
                        r.n,
                        csv_escape(&r.value)
                    )?;
                }
                Ok(())
            }
            Format::Text => {
                writeln!(
                    self.target,
                    "generalized Euler numbers, d={} character {}",
                    records.first().map_or(0, |r| r.d),
                    records.first().map_or(0, |r| r.char_index)
                )?;
                for r in records {
                    writeln!(self.target, "E_{:<2} = {}", r.n, r.value)?;
                }
                Ok(())
            }
        }
    }

    pub fn emit_powersum(&mut self, records: &[PowerSumRecord]) -> io::Result<()> {
        match self.format {
            Format::Json => self.json_lines(records),
            Format::Csv => {
                writeln!(self.target, "d,char_index,k,limit,value")?;
                for r in records {
                    writeln!(
                        self.target,
                        "{},{},{},{},{}",
                        r.d,
                        r.char_index,
                        r.k,
                        r.limit,
                        csv_escape(&r.value)
                    )?;
                }
                Ok(())
            }
            Format::Text => {
                writeln!(
                    self.target,
                    "alternating power sums T_k({}, chi), d={} character {}",
                    records.first().map_or(0, |r| r.limit),
                    records.first().map_or(0, |r| r.d),
                    records.first().map_or(0, |r| r.char_index)
                )?;
                for r in records {
                    writeln!(self.target, "T_{:<2} = {}", r.k, r.value)?;
                }
                Ok(())
            }
        }
    }

    pub fn emit_padic(&mut self, records: &[PadicRecord]) -> io::Result<()> {
        match self.format {
            Format::Json => self.json_lines(records),
            Format::Csv => {
                writeln!(
                    self.target,
                    "d,char_index,exponent,prime,level,partial_sum,euler_value,valuation,assumption"
                )?;
                for r in records {
                    writeln!(
                        self.target,
                        "{},{},{},{},{},{},{},{},{}",
                        r.d,
                        r.char_index,
                        r.exponent,
                        r.prime,
                        r.level,
                        csv_escape(&r.partial_sum),
                        csv_escape(&r.euler_value),
                        r.valuation,
                        csv_escape(r.assumption)
                    )?;
                }
                Ok(())
            }
            Format::Text => {
                if let Some(first) = records.first() {
                    writeln!(
                        self.target,
                        "p-adic trace: d={} character {} exponent {} prime {} (E = {}; {})",
                        first.d,
                        first.char_index,
                        first.exponent,
                        first.prime,
                        first.euler_value,
                        first.assumption
                    )?;
                }
                for r in records {
                    writeln!(
                        self.target,
                        "N={:<2} S_N = {:<24} v_p(S_N - E) = {}",
                        r.level, r.partial_sum, r.valuation
                    )?;
                }
                Ok(())
            }
        }
    }

    pub fn emit_verify(&mut self, records: &[VerifyRecord]) -> io::Result<()> {
        match self.format {
            Format::Json => self.json_lines(records),
            Format::Csv => {
                writeln!(
                    self.target,
                    "theorem,d,char_index,char_order,conductor,primitive,n,w1,w2,w3,grid_size,verdict,skip_reason,discrepancy"
                )?;
                for r in records {
                    let disc = r
                        .discrepancy
                        .as_ref()
                        .map(|d| {
                            format!(
                                "expressions=({} {}) point=({}) left={} right={}",
                                d.expressions[0],
                                d.expressions[1],
                                d.grid_point.join(" "),
                                d.left,
                                d.right
                            )
                        })
                        .unwrap_or_default();
                    writeln!(
                        self.target,
                        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                        r.theorem,
                        r.d,
                        r.char_index,
                        r.char_order,
                        r.conductor,
                        r.primitive,
                        r.n,
                        r.w[0],
                        r.w[1],
                        r.w[2],
                        r.grid_size,
                        r.verdict,
                        r.skip_reason.as_deref().unwrap_or(""),
                        csv_escape(&disc)
                    )?;
                }
                Ok(())
            }
            Format::Text => {
                let mut pass = 0usize;
                let mut fail = 0usize;
                let mut skip = 0usize;
                for r in records {
                    match r.verdict.as_str() {
                        "pass" => pass += 1,
                        "fail" => fail += 1,
                        _ => skip += 1,
                    }
                    write!(
                        self.target,
                        "theorem {} d={} chi={} n={} w=({},{},{}) grid={} {}",
                        r.theorem,
                        r.d,
                        r.char_index,
                        r.n,
                        r.w[0],
                        r.w[1],
                        r.w[2],
                        r.grid_size,
                        r.verdict
                    )?;
                    if let Some(reason) = &r.skip_reason {
                        write!(self.target, " ({reason})")?;
                    }
                    writeln!(self.target)?;
                    if let Some(d) = &r.discrepancy {
                        writeln!(
                            self.target,
                            "  discrepancy: expressions {} and {} at y=({}) give {} vs {}",
                            d.expressions[0],
                            d.expressions[1],
                            d.grid_point.join(", "),
                            d.left,
                            d.right
                        )?;
                    }
                }
                writeln!(
                    self.target,
                    "total {}: {} pass, {} skip, {} fail",
                    records.len(),
                    pass,
                    skip,
                    fail
                )
            }
        }
    }

    fn json_lines<T: Serialize>(&mut self, records: &[T]) -> io::Result<()> {
        for r in records {
            let line = serde_json::to_string(r)?;
            writeln!(self.target, "{line}")?;
        }
        Ok(())
    }
}

/// Minimal CSV quoting: wrap when the field contains a comma, quote, or
/// newline, doubling interior quotes.
fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CharRecord {
    pub d: u64,
    pub index: usize,
    pub order: u64,
    pub conductor: u64,
    pub primitive: bool,
    pub values: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EulerRecord {
    pub d: u64,
    pub char_index: usize,
    pub n: usize,
    pub value: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PowerSumRecord {
    pub d: u64,
    pub char_index: usize,
    pub k: usize,
    pub limit: u64,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct PadicRecord {
    pub d: u64,
    pub char_index: usize,
    pub exponent: usize,
    pub prime: u64,
    pub level: u32,
    pub partial_sum: String,
    pub euler_value: String,
    pub valuation: String,
    pub assumption: &'static str,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DiscrepancyRecord {
    pub expressions: [usize; 2],
    pub grid_point: Vec<String>,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub theorem: u8,
    pub d: u64,
    pub char_index: usize,
    pub char_order: u64,
    pub conductor: u64,
    pub primitive: bool,
    pub n: usize,
    pub w: [u64; 3],
    pub grid_size: usize,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<DiscrepancyRecord>,
}
