use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use walktheta::graphs::{generate_named, parse_edge_list, parse_graph6};
use walktheta::{Error, Graph};

/// Where graphs come from: a file or a named family.
#[derive(Debug, Clone, Args)]
pub struct GraphSource {
    /// graph6 file (one graph per line) or edge list (`n`, then `i j` lines).
    pub file: Option<PathBuf>,
    /// Named family: empty, complete, cycle, path, petersen, golomb, kneser.
    #[arg(long, conflicts_with = "file")]
    pub named: Option<String>,
    /// Order parameter for named families.
    #[arg(long, requires = "named")]
    pub n: Option<usize>,
    /// Subset size for kneser.
    #[arg(long, requires = "named")]
    pub k: Option<usize>,
}

/// Input failure, reported with the offending location.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl GraphSource {
    /// Loads every graph; `Ok(None)` when no source was given.
    pub fn load(&self) -> Result<Option<Vec<Graph>>, InputError> {
        if let Some(name) = &self.named {
            let params: Vec<usize> = self.n.into_iter().chain(self.k).collect();
            return generate_named(name, &params)
                .map(|g| Some(vec![g]))
                .map_err(|e| InputError(format!("--named {name}: {e}")));
        }
        match &self.file {
            Some(path) => read_graphs(path).map(Some),
            None => Ok(None),
        }
    }
}

/// Reads a graph6 file or a single edge list. A first non-blank,
/// non-comment line that is an integer marks an edge list.
pub fn read_graphs(path: &Path) -> Result<Vec<Graph>, InputError> {
    let shown = path.display();
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{shown}: {e}")))?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        None => Ok(Vec::new()),
        Some(l) if l.parse::<usize>().is_ok() => {
            parse_edge_list(&text)
                .map(|g| vec![g])
                .map_err(|e| match e {
                    Error::Parse { offset, message } => {
                        InputError(format!("{shown}:{offset}: {message}"))
                    }
                    e => InputError(format!("{shown}: {e}")),
                })
        }
        Some(_) => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(k, l)| {
                parse_graph6(l.trim_end().as_bytes()).map_err(|e| match e {
                    Error::Parse { offset, message } => {
                        InputError(format!("{shown}:{}: byte {offset}: {message}", k + 1))
                    }
                    e => InputError(format!("{shown}:{}: {e}", k + 1)),
                })
            })
            .collect(),
    }
}
