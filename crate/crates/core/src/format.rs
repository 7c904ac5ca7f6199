//! Text encodings of sampled graphs.

use std::io::{self, Write};

use serde::Serialize;

use crate::multigraph::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    /// One `u v` line per edge; samples separated by a blank line.
    EdgeList,
    /// One JSON object per line: `{"seed_index":k,"edges":[[u,v],...]}`.
    JsonLines,
}

#[derive(Serialize)]
struct Record<'a> {
    seed_index: u64,
    edges: &'a [(Vertex, Vertex)],
}

/// Writes sample `index` of a batch. `edges` must already be sorted.
pub fn write_sample<W: Write>(
    out: &mut W,
    format: OutputFormat,
    index: u64,
    edges: &[(Vertex, Vertex)],
) -> io::Result<()> {
    match format {
        OutputFormat::EdgeList => {
            if index > 0 {
                writeln!(out)?;
            }
            for &(u, w) in edges {
                writeln!(out, "{u} {w}")?;
            }
        }
        OutputFormat::JsonLines => {
            serde_json::to_writer(
                &mut *out,
                &Record {
                    seed_index: index,
                    edges,
                },
            )?;
            writeln!(out)?;
        }
    }
    Ok(())
}
