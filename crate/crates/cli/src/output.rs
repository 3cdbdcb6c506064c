use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(hbsums::Error),
    /// Unreadable or malformed input outside the core parsers.
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(m) => f.write_str(m),
        }
    }
}

impl From<hbsums::Error> for CliError {
    fn from(e: hbsums::Error) -> Self {
        CliError::Core(e)
    }
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn render<T: Serialize>(value: &T, indent: usize) -> String {
    if indent == 0 {
        return serde_json::to_string(value).expect("serializable");
    }
    let pad = vec![b' '; indent];
    let mut out = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
    let mut ser = serde_json::Serializer::with_formatter(&mut out, fmt);
    value.serialize(&mut ser).expect("serializable");
    String::from_utf8(out).expect("JSON is UTF-8")
}

pub fn emit<T: Serialize>(value: &T, indent: usize) {
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = writeln!(stdout, "{}", render(value, indent));
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Two whitespace-separated columns per line.
pub fn write_plot(path: Option<&Path>, rows: &[(f64, f64)]) -> Result<(), CliError> {
    let Some(path) = path else { return Ok(()) };
    let mut text = String::new();
    for (x, y) in rows {
        text.push_str(&format!("{x:.17e} {y:.17e}\n"));
    }
    write_file(path, &text)
}
