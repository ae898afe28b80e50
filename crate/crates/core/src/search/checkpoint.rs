//! Append-only progress log: a spec line, then one line per completed chunk range.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{EnumSpec, Summary, CHUNK};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Line {
    Spec {
        spec: String,
    },
    Range {
        start: u64,
        end: u64,
        summary: Summary,
    },
}

fn fingerprint(spec: &EnumSpec) -> String {
    format!(
        "{}; rng: {}; chunk={CHUNK}",
        spec.describe(),
        spec.rng_description()
    )
}

pub(super) struct Log {
    file: File,
}

impl Log {
    /// Opens or creates the log. Returns the number of chunks already done and
    /// their merged summary when resuming.
    pub(super) fn open(path: &Path, spec: &EnumSpec) -> Result<(Log, Option<(u64, Summary)>)> {
        let fp = fingerprint(spec);
        let mut restored = None;
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            let lines: Vec<String> = reader.lines().collect::<std::io::Result<_>>()?;
            let mut done = 0u64;
            let mut summary = Summary::default();
            let mut torn = false;
            for (no, text) in lines.iter().enumerate() {
                if text.trim().is_empty() {
                    continue;
                }
                let line: Line = match serde_json::from_str(text) {
                    Ok(l) => l,
                    // A torn final line from an interrupted append.
                    Err(_) if no + 1 == lines.len() => {
                        torn = true;
                        break;
                    }
                    Err(e) => {
                        return Err(Error::Format(format!("checkpoint line {}: {e}", no + 1)))
                    }
                };
                match line {
                    Line::Spec { spec } if no == 0 => {
                        if spec != fp {
                            return Err(Error::InvalidParameter(format!(
                                "checkpoint belongs to a different run: {spec}"
                            )));
                        }
                    }
                    Line::Range {
                        start,
                        end,
                        summary: s,
                    } if no > 0 && start == done => {
                        summary.merge(&s);
                        done = end;
                    }
                    _ => {
                        return Err(Error::Format(format!(
                            "checkpoint line {} is out of sequence",
                            no + 1
                        )))
                    }
                }
            }
            if torn {
                let mut kept = lines[..lines.len() - 1].join("\n");
                kept.push('\n');
                std::fs::write(path, kept)?;
            }
            if lines.first().is_some_and(|l| !l.trim().is_empty()) && !(torn && lines.len() == 1) {
                restored = Some((done, summary));
            }
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        if restored.is_none() {
            writeln!(file, "{}", serde_json::to_string(&Line::Spec { spec: fp })?)?;
            file.flush()?;
        }
        Ok((Log { file }, restored))
    }

    pub(super) fn append(&mut self, start: u64, end: u64, summary: &Summary) -> Result<()> {
        let line = Line::Range {
            start,
            end,
            summary: summary.clone(),
        };
        writeln!(self.file, "{}", serde_json::to_string(&line)?)?;
        self.file.flush()?;
        Ok(())
    }
}
