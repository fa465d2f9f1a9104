use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use raag_cc::cube::{CoreFile, SubgroupCore};
use raag_cc::raag::{DefiningGraph, Word};
use raag_cc::surface::SurfaceModel;
use serde::de::DeserializeOwned;
use serde_json::json;

/// A failure with its exit code. Input problems carry the file position
/// when one is known.
#[derive(Debug)]
pub enum CliError {
    Input {
        file: Option<PathBuf>,
        line: Option<usize>,
        column: Option<usize>,
        message: String,
    },
    Lib(raag_cc::Error),
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input {
            file: None,
            line: None,
            column: None,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        use raag_cc::Error as E;
        match self {
            CliError::Input { .. } => 3,
            CliError::Lib(E::Input(_) | E::UnknownGenerator(_) | E::Json(_) | E::Contract(_)) => 3,
            CliError::Lib(E::Budget { .. }) => 2,
            CliError::Lib(E::Internal(_)) => 4,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CliError::Input {
                file,
                line,
                column,
                message,
            } => json!({
                "error": "input",
                "file": file.as_ref().map(|p| p.display().to_string()),
                "line": line,
                "column": column,
                "message": message,
            }),
            CliError::Lib(e) => {
                let kind = match e {
                    raag_cc::Error::Budget { .. } => "budget",
                    raag_cc::Error::Contract(_) => "contract",
                    raag_cc::Error::Internal(_) => "internal",
                    _ => "input",
                };
                json!({ "error": kind, "message": e.to_string() })
            }
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input {
                file,
                line,
                column,
                message,
            } => {
                if let Some(p) = file {
                    write!(f, "{}:", p.display())?;
                }
                if let (Some(l), Some(c)) = (line, column) {
                    write!(f, "{l}:{c}:")?;
                }
                write!(f, " {message}")
            }
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<raag_cc::Error> for CliError {
    fn from(e: raag_cc::Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input {
        file: Some(path.to_path_buf()),
        line: None,
        column: None,
        message: e.to_string(),
    })
}

fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Input {
        file: Some(path.to_path_buf()),
        line: Some(e.line()),
        column: Some(e.column()),
        message: e.to_string(),
    })
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    parse_json(path, &read(path)?)
}

pub fn load_graph(path: &Path) -> CliResult<DefiningGraph> {
    load_json(path)
}

/// A model file; its graph must match `graph` when one is given.
pub fn load_model(path: &Path, graph: Option<&DefiningGraph>) -> CliResult<SurfaceModel> {
    let model: SurfaceModel = load_json(path)?;
    if let Some(g) = graph {
        if model.graph() != g {
            return Err(CliError::Input {
                file: Some(path.to_path_buf()),
                line: None,
                column: None,
                message: "the model's graph differs from the --graph file".into(),
            });
        }
    }
    Ok(model)
}

/// A generator file: a JSON array of word strings.
pub fn load_words(path: &Path, graph: &DefiningGraph) -> CliResult<Vec<Word>> {
    let text = read(path)?;
    let raw: Vec<String> = parse_json(path, &text)?;
    raw.iter()
        .map(|w| {
            Word::parse(w, graph).map_err(|e| {
                let (line, column) = locate(&text, w);
                CliError::Input {
                    file: Some(path.to_path_buf()),
                    line,
                    column,
                    message: e.to_string(),
                }
            })
        })
        .collect()
}

/// Position of the first string literal equal to `needle`.
fn locate(text: &str, needle: &str) -> (Option<usize>, Option<usize>) {
    let quoted = serde_json::to_string(needle).unwrap_or_default();
    match text.find(&quoted) {
        Some(at) => {
            let before = &text[..at];
            let line = before.matches('\n').count() + 1;
            let column = before.rfind('\n').map_or(at, |nl| at - nl - 1) + 1;
            (Some(line), Some(column))
        }
        None => (None, None),
    }
}

pub fn load_core(path: &Path) -> CliResult<SubgroupCore> {
    let file: CoreFile = load_json(path)?;
    SubgroupCore::from_file(file).map_err(|e| CliError::Input {
        file: Some(path.to_path_buf()),
        line: None,
        column: None,
        message: e.to_string(),
    })
}
