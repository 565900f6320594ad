//! Output writers: RFC-4180-style CSV with section comments, or JSON lines.
//! Floats are printed with 17 significant digits so they round-trip; big
//! integers travel as decimal strings.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

/// One output field; the writer renders it per format.
pub enum Field {
    Str(String),
    UInt(u128),
    Big(String),
    Float(f64),
    OptFloat(Option<f64>),
    Bool(bool),
    OptBool(Option<bool>),
    /// Raw JSON in jsonl mode, JSON-as-string in CSV mode.
    Json(serde_json::Value),
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub struct Writer {
    out: BufWriter<Box<dyn Write>>,
    pub format: OutputFormat,
}

impl Writer {
    pub fn to_stdout(format: OutputFormat) -> Self {
        Writer { out: BufWriter::new(Box::new(io::stdout())), format }
    }

    pub fn to_path(path: &Path, format: OutputFormat) -> io::Result<Self> {
        let f = File::create(path)?;
        Ok(Writer { out: BufWriter::new(Box::new(f)), format })
    }

    /// Header record carrying the tool version, the full argument vector and
    /// the seed; identical flags produce identical bytes unless a timestamp
    /// was requested.
    pub fn metadata(
        &mut self,
        args: &[String],
        seed: u64,
        threads: &str,
        timestamp: Option<String>,
    ) -> io::Result<()> {
        let version = env!("CARGO_PKG_VERSION");
        match self.format {
            OutputFormat::Csv => {
                let mut line = format!(
                    "# sigmak {version} | args: {} | seed={seed} threads={threads}",
                    args.join(" ")
                );
                if let Some(ts) = timestamp {
                    let _ = write!(line, " timestamp={ts}");
                }
                writeln!(self.out, "{line}")
            }
            OutputFormat::Jsonl => {
                let mut meta = serde_json::json!({
                    "meta": {
                        "tool": "sigmak",
                        "version": version,
                        "args": args,
                        "seed": seed,
                        "threads": threads,
                    }
                });
                if let Some(ts) = timestamp {
                    meta["meta"]["timestamp"] = serde_json::Value::String(ts);
                }
                writeln!(self.out, "{meta}")
            }
        }
    }

    /// Section marker: CSV comment line; no-op in jsonl (records are
    /// self-describing there).
    pub fn section(&mut self, name: &str) -> io::Result<()> {
        match self.format {
            OutputFormat::Csv => writeln!(self.out, "# section: {name}"),
            OutputFormat::Jsonl => Ok(()),
        }
    }

    /// Free-form comment, CSV only.
    pub fn comment(&mut self, text: &str) -> io::Result<()> {
        match self.format {
            OutputFormat::Csv => writeln!(self.out, "# {text}"),
            OutputFormat::Jsonl => Ok(()),
        }
    }

    pub fn csv_header(&mut self, cols: &[&str]) -> io::Result<()> {
        if self.format == OutputFormat::Csv {
            writeln!(self.out, "{}", cols.join(","))?;
        }
        Ok(())
    }

    /// A data record: CSV row in field order, or a JSON object.
    pub fn record(&mut self, cols: &[&str], fields: Vec<Field>) -> io::Result<()> {
        debug_assert_eq!(cols.len(), fields.len());
        match self.format {
            OutputFormat::Csv => {
                let rendered: Vec<String> = fields.iter().map(csv_render).collect();
                writeln!(self.out, "{}", rendered.join(","))
            }
            OutputFormat::Jsonl => {
                let mut obj = serde_json::Map::new();
                for (name, f) in cols.iter().zip(fields) {
                    obj.insert((*name).to_string(), json_render(f));
                }
                writeln!(self.out, "{}", serde_json::Value::Object(obj))
            }
        }
    }

    /// A pre-rendered line (used for the exact pmf atom format).
    pub fn raw_line(&mut self, line: &str) -> io::Result<()> {
        writeln!(self.out, "{line}")
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}

fn csv_render(f: &Field) -> String {
    match f {
        Field::Str(s) => csv_quote(s),
        Field::UInt(v) => v.to_string(),
        Field::Big(s) => s.clone(),
        Field::Float(v) => fmt_f64(*v),
        Field::OptFloat(Some(v)) => fmt_f64(*v),
        Field::OptFloat(None) => String::new(),
        Field::Bool(b) => b.to_string(),
        Field::OptBool(Some(b)) => b.to_string(),
        Field::OptBool(None) => String::new(),
        Field::Json(v) => csv_quote(&v.to_string()),
    }
}

fn json_render(f: Field) -> serde_json::Value {
    use serde_json::Value;
    match f {
        Field::Str(s) => Value::String(s),
        Field::UInt(v) => serde_json::json!(v as u64),
        Field::Big(s) => Value::String(s),
        Field::Float(v) => serde_json::json!(v),
        Field::OptFloat(Some(v)) => serde_json::json!(v),
        Field::OptFloat(None) => Value::Null,
        Field::Bool(b) => Value::Bool(b),
        Field::OptBool(Some(b)) => Value::Bool(b),
        Field::OptBool(None) => Value::Null,
        Field::Json(v) => v,
    }
}

/// Quote when the field contains a comma, quote, or newline; quotes double.
fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
