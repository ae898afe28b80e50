//! Text file formats for tensors and certificates.
//!
//! A tensor file is a JSON object with `order`, `dim` and exactly one of
//! `ones` (1-based index arrays) or `dense` (a `0`/`1` string, last index fastest):
//!
//! ```json
//! {"order": 3, "dim": 2, "ones": [[1,2,2], [2,1,1]]}
//! {"order": 2, "dim": 2, "dense": "1110"}
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::engine::Certificate;
use crate::error::{Error, Result};
use crate::tensor::{BooleanTensor, MultiIndex};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    order: usize,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ones: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dense: Option<String>,
}

/// How [`tensor_to_string`] lays out the pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Ones,
    Dense,
}

pub fn parse_tensor(text: &str) -> Result<BooleanTensor> {
    let f: TensorFile = serde_json::from_str(text)?;
    match (f.ones, f.dense) {
        (Some(_), Some(_)) => Err(Error::Format("both `ones` and `dense` are present".into())),
        (None, None) => Err(Error::Format("one of `ones` or `dense` is required".into())),
        (Some(ones), None) => {
            let ones: Vec<MultiIndex> = ones.into_iter().map(MultiIndex::new).collect();
            BooleanTensor::from_ones(f.order, f.dim, &ones)
        }
        (None, Some(dense)) => BooleanTensor::from_dense_str(f.order, f.dim, &dense),
    }
}

pub fn tensor_to_string(t: &BooleanTensor, layout: Layout) -> String {
    let (ones, dense) = match layout {
        Layout::Ones => (
            Some(
                t.ones_positions()
                    .into_iter()
                    .map(|m| m.as_slice().to_vec())
                    .collect(),
            ),
            None,
        ),
        Layout::Dense => (None, Some(t.to_dense_string())),
    };
    let f = TensorFile {
        order: t.order(),
        dim: t.dim(),
        ones,
        dense,
    };
    serde_json::to_string(&f).expect("tensor file serializes")
}

pub fn read_tensor(path: impl AsRef<Path>) -> Result<BooleanTensor> {
    let path = path.as_ref();
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_tensor(&text)
}

/// Writes the `dense` layout when it is shorter than the `ones` list would be.
pub fn write_tensor(path: impl AsRef<Path>, t: &BooleanTensor) -> Result<()> {
    let layout = if t.count_ones() * (2 * t.order() + 2) > t.len() {
        Layout::Dense
    } else {
        Layout::Ones
    };
    fs::write(path, tensor_to_string(t, layout) + "\n")?;
    Ok(())
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    Ok(serde_json::from_str(text)?)
}

pub fn certificate_to_string(c: &Certificate) -> String {
    serde_json::to_string(c).expect("certificate serializes")
}
