use std::io::Write;

use serde_json::Value;

use crate::{Cli, Format};

/// One result in every format the command supports.
pub struct Rendered {
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
}

impl Rendered {
    pub fn new(json: Value, text: String) -> Self {
        Rendered { json, text, dot: None }
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

pub enum Failure {
    Input(String),
    /// A check ran and failed; the report is still emitted.
    Verification(Rendered),
}

impl From<equiconf::Error> for Failure {
    fn from(e: equiconf::Error) -> Self {
        match e {
            equiconf::Error::Verification(msg) => {
                let text = format!("verification failed: {msg}\n");
                Failure::Verification(Rendered::new(serde_json::json!({ "verified": false, "error": msg }), text))
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

pub fn input_error<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Input(msg.into()))
}

pub fn emit(cli: &Cli, r: &Rendered) -> Result<(), String> {
    let body = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&r.json).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Text => r.text.clone(),
        // Reports without a drawing fall back to JSON.
        Format::Dot => match &r.dot {
            Some(d) => d.clone(),
            None => {
                let mut s = serde_json::to_string_pretty(&r.json).map_err(|e| e.to_string())?;
                s.push('\n');
                s
            }
        },
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

/// Undirected graphs, one per monomial, labelled by their coefficients.
pub fn dot_graphs(
    points: usize,
    monomials: impl IntoIterator<Item = (Vec<(usize, usize)>, String)>,
    start: &mut usize,
) -> String {
    let mut out = String::new();
    for (edges, label) in monomials {
        out.push_str(&format!("graph m{} {{\n  label=\"{}\";\n", *start, label.replace('"', "\\\"")));
        *start += 1;
        for v in 1..=points {
            out.push_str(&format!("  {v};\n"));
        }
        for (i, j) in edges {
            out.push_str(&format!("  {i} -- {j};\n"));
        }
        out.push_str("}\n");
    }
    out
}
