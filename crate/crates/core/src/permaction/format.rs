//! The `permgroup v1` text format: a header, `degree <n>`, then one
//! permutation per line as `n` images. The listed permutations generate the
//! group; files written here list every element.

use std::fmt;
use std::str::FromStr;

use super::{PermError, PermGroup, Permutation};
use crate::tables::format::content_lines;

pub const HEADER: &str = "permgroup v1";

fn err(line: usize, message: impl Into<String>) -> PermError {
    PermError::Parse {
        line,
        message: message.into(),
    }
}

impl FromStr for PermGroup {
    type Err = PermError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = content_lines(text);
        let (no, line) = lines.next().ok_or_else(|| err(1, "empty input"))?;
        if line != HEADER {
            return Err(err(no, format!("expected `{HEADER}`, found `{line}`")));
        }
        let (no, line) = lines
            .next()
            .ok_or_else(|| err(no + 1, "unexpected end of input, expected `degree`"))?;
        let degree: usize = line
            .strip_prefix("degree")
            .filter(|r| r.starts_with(char::is_whitespace))
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| err(no, format!("expected `degree <n>`, found `{line}`")))?;
        if degree == 0 || degree > super::MAX_DEGREE {
            return Err(err(no, format!("degree {degree} out of range")));
        }
        let mut gens = Vec::new();
        for (no, line) in lines {
            let images = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| err(no, format!("`{tok}` is not a point")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if images.len() != degree {
                return Err(err(
                    no,
                    format!("{} images, expected {degree}", images.len()),
                ));
            }
            gens.push(Permutation::new(images).map_err(|e| err(no, e.to_string()))?);
        }
        PermGroup::generate(degree, &gens)
    }
}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{HEADER}")?;
        writeln!(f, "degree {}", self.degree())?;
        for g in self.elements() {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_closed() {
        let g: PermGroup = "permgroup v1\ndegree 3\n1 2 0\n1 0 2\n".parse().unwrap();
        assert_eq!(g.order(), 6);
        let reparsed: PermGroup = g.to_string().parse().unwrap();
        assert_eq!(reparsed, g);
    }

    #[test]
    fn strict_errors() {
        assert!(matches!(
            "permgroup v1\ndegree 3\n1 2\n".parse::<PermGroup>(),
            Err(PermError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            "permgroup v1\ndegree 3\n1 1 0\n".parse::<PermGroup>(),
            Err(PermError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            "permgroup v2\n".parse::<PermGroup>(),
            Err(PermError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            "permgroup v1\ndeg 3\n".parse::<PermGroup>(),
            Err(PermError::Parse { line: 2, .. })
        ));
    }
}
