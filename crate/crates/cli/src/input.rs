//! Reading distributions from files, stdin or the command line.
//!
//! Accepted text is either a JSON array of numbers or decimals separated by
//! whitespace (commas are also allowed). A leading `[` selects JSON.

use std::fs;
use std::io::Read;
use std::path::Path;

use crate::error::CliError;

pub fn parse_vector(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(|e| CliError::Parse {
            what: what.to_string(),
            reason: e.to_string(),
        });
    }
    trimmed
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|tok| !tok.is_empty())
        .map(|tok| {
            tok.parse::<f64>().map_err(|_| CliError::Parse {
                what: what.to_string(),
                reason: format!("not a number: {tok:?}"),
            })
        })
        .collect()
}

fn looks_inline(arg: &str) -> bool {
    let t = arg.trim_start();
    t.starts_with('[')
        || t.split(|c: char| c.is_whitespace() || c == ',')
            .any(|tok| tok.parse::<f64>().is_ok())
}

/// Resolves one positional argument: `-` is stdin, an existing path is read,
/// anything that looks like numbers is parsed in place.
pub fn load(arg: &str, stdin: &mut dyn Read) -> Result<Vec<f64>, CliError> {
    if arg == "-" {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|source| CliError::Io {
                what: "<stdin>".into(),
                source,
            })?;
        return parse_vector(&text, "<stdin>");
    }
    let path = Path::new(arg);
    if path.is_file() || !looks_inline(arg) {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            what: arg.to_string(),
            source,
        })?;
        return parse_vector(&text, arg);
    }
    parse_vector(arg, "<inline>")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(parse_vector(" [0.5, 0.5]\n", "t").unwrap(), vec![0.5, 0.5]);
        assert_eq!(
            parse_vector("0.2 0.3\n0.5\n", "t").unwrap(),
            vec![0.2, 0.3, 0.5]
        );
        assert_eq!(parse_vector("0.2,0.8", "t").unwrap(), vec![0.2, 0.8]);
        assert!(parse_vector("", "t").unwrap().is_empty());
        assert!(matches!(
            parse_vector("0.2 x", "t"),
            Err(CliError::Parse { .. })
        ));
        assert!(matches!(
            parse_vector("[0.2,", "t"),
            Err(CliError::Parse { .. })
        ));
    }

    #[test]
    fn inline_and_missing() {
        let mut empty: &[u8] = &[];
        assert_eq!(load("0.6 0.4", &mut empty).unwrap(), vec![0.6, 0.4]);
        assert_eq!(load("[1]", &mut empty).unwrap(), vec![1.0]);
        assert!(matches!(
            load("no/such/file.json", &mut empty),
            Err(CliError::Io { .. })
        ));
        let mut src: &[u8] = b"0.1 0.9";
        assert_eq!(load("-", &mut src).unwrap(), vec![0.1, 0.9]);
    }
}
