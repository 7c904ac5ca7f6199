use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use incgen_core::{BipartiteDegreeSequence, DegreeSequence};

use crate::CliError;

/// Where the degree sequence comes from. Exactly one source must be given.
#[derive(Args, Debug, Clone)]
pub struct DegreeSource {
    /// Inline comma-separated degrees, e.g. "3,3,3,3".
    #[arg(long, value_name = "LIST")]
    degrees: Option<String>,

    /// File of whitespace-separated degrees.
    #[arg(long, value_name = "PATH")]
    degrees_file: Option<PathBuf>,

    /// Degree of a regular sequence; needs --n.
    #[arg(long, value_name = "D", requires = "n")]
    regular: Option<u32>,

    /// Vertex count for --regular.
    #[arg(long, value_name = "N", requires = "regular")]
    n: Option<usize>,

    /// Two degree files, X part then Y part.
    #[arg(long, num_args = 2, value_names = ["X_FILE", "Y_FILE"])]
    bipartite: Option<Vec<PathBuf>>,
}

#[derive(Debug, Clone)]
pub enum Input {
    Graph(DegreeSequence),
    Bipartite(BipartiteDegreeSequence),
}

impl Input {
    pub fn vertex_count(&self) -> usize {
        match self {
            Input::Graph(ds) => ds.n(),
            Input::Bipartite(b) => b.x_len() + b.y_len(),
        }
    }
}

impl DegreeSource {
    pub fn describe(&self) -> String {
        if let Some(list) = &self.degrees {
            format!("inline:{list}")
        } else if let Some(p) = &self.degrees_file {
            format!("file:{}", p.display())
        } else if let (Some(d), Some(n)) = (self.regular, self.n) {
            format!("regular:{d}x{n}")
        } else if let Some(files) = &self.bipartite {
            format!("bipartite:{}+{}", files[0].display(), files[1].display())
        } else {
            String::new()
        }
    }

    pub fn load(&self) -> Result<Input, CliError> {
        let given = [
            self.degrees.is_some(),
            self.degrees_file.is_some(),
            self.regular.is_some(),
            self.bipartite.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if given != 1 {
            return Err(CliError::Input(
                "give exactly one of --degrees, --degrees-file, --regular/--n, --bipartite".into(),
            ));
        }
        if let Some(list) = &self.degrees {
            let d = parse_degrees(list, ',', "--degrees")?;
            return Ok(Input::Graph(DegreeSequence::new(&d)?));
        }
        if let Some(path) = &self.degrees_file {
            return Ok(Input::Graph(DegreeSequence::new(&read_file(path)?)?));
        }
        if let (Some(d), Some(n)) = (self.regular, self.n) {
            return Ok(Input::Graph(DegreeSequence::regular(n, d)));
        }
        let files = self.bipartite.as_ref().expect("one source is set");
        let x = read_file(&files[0])?;
        let y = read_file(&files[1])?;
        Ok(Input::Bipartite(BipartiteDegreeSequence::new(&x, &y)?))
    }
}

fn read_file(path: &Path) -> Result<Vec<i64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_tokens(text.split_whitespace(), &path.display().to_string())
}

fn parse_degrees(list: &str, sep: char, origin: &str) -> Result<Vec<i64>, CliError> {
    parse_tokens(
        list.split(sep).map(str::trim).filter(|t| !t.is_empty()),
        origin,
    )
}

fn parse_tokens<'a>(
    tokens: impl Iterator<Item = &'a str>,
    origin: &str,
) -> Result<Vec<i64>, CliError> {
    tokens
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CliError::Input(format!("{origin}: '{t}' is not an integer")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_list() {
        assert_eq!(
            parse_degrees("3, 3,3 ,3", ',', "x").unwrap(),
            vec![3, 3, 3, 3]
        );
        assert!(parse_degrees("3,a", ',', "x").is_err());
        assert_eq!(parse_degrees("", ',', "x").unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn whitespace_tokens() {
        let v = parse_tokens("1 2\n\t3  4\n".split_whitespace(), "f").unwrap();
        assert_eq!(v, vec![1, 2, 3, 4]);
    }
}
