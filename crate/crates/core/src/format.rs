//! Plain-text design files.
//!
//! ```text
//! 9 3
//! # method=recursive n=9 k=3
//! 1 2 3 4 5 6 7 8 9
//! 9 8 7 6 5 4 3 2 1
//! ```
//!
//! The first non-comment line holds `N K`. Every later nonempty line is one
//! test, items separated by whitespace, in test order. Lines starting with
//! `#` are comments and blank lines are ignored. Empty tests cannot be
//! written.

use std::fmt::Write as _;

use crate::design::{Design, TestSeq};
use crate::error::{Error, Result};

/// Parses a design file. Errors carry 1-based line numbers.
pub fn parse_design(text: &str) -> Result<Design> {
    let mut header: Option<(u32, u32)> = None;
    let mut tests = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let numbers = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("expected a non-negative integer, found {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let at_line = |e: Error| Error::Parse {
            line: line_no,
            message: e.to_string(),
        };
        match header {
            None => {
                let [n, k] = numbers[..] else {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "header must be `N K`".into(),
                    });
                };
                // Validate the parameters now so the error points at the header.
                Design::new(n, k, Vec::new()).map_err(at_line)?;
                header = Some((n, k));
            }
            Some((n, _)) => {
                let test = TestSeq::from_items(numbers).map_err(at_line)?;
                if let Some(max) = test.max_item() {
                    if max.get() > n {
                        return Err(at_line(Error::ItemOutOfRange {
                            item: max.get(),
                            n_items: n,
                        }));
                    }
                }
                tests.push(test);
            }
        }
    }
    let (n, k) = header.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing `N K` header".into(),
    })?;
    Design::new(n, k, tests)
}

/// Serializes a design, placing each comment (without its leading `#`) on
/// its own line after the header.
pub fn write_design(design: &Design, comments: &[String]) -> Result<String> {
    let mut out = format!("{} {}\n", design.n_items(), design.max_defectives());
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for (i, test) in design.tests().iter().enumerate() {
        if test.is_empty() {
            return Err(Error::EmptyTest(i));
        }
        let line = test
            .items()
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_blanks() {
        let text = "# leading comment\n4 3\n\n# tests\n1 2\n3 2\n  4 2  \n";
        let d = parse_design(text).unwrap();
        assert_eq!(
            d,
            Design::from_lists(4, 3, [vec![1, 2], vec![3, 2], vec![4, 2]]).unwrap()
        );
    }

    #[test]
    fn writes_header_comments_tests() {
        let d = Design::from_lists(3, 1, [vec![1, 2, 3]]).unwrap();
        let text = write_design(&d, &["method=k1".to_string()]).unwrap();
        assert_eq!(text, "3 1\n# method=k1\n1 2 3\n");
        assert_eq!(parse_design(&text).unwrap(), d);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_design("3 1\n1 2\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_design("3 1\n1 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_design("3 1\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_design("3 1\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_design("3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_design("3 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_design("# nothing\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn empty_test_cannot_be_written() {
        let d = Design::from_lists(2, 1, [vec![1], vec![]]).unwrap();
        assert_eq!(write_design(&d, &[]), Err(Error::EmptyTest(1)));
    }
}
