//! Plain-text file formats: rational matrices, nested binary code chains,
//! and real vectors.
//!
//! Matrix files carry the dimension `n` on the first line, then `n` lines
//! of `n` whitespace-separated entries, each an integer or a `p/q`
//! fraction. Code files open with `k n levels` for the largest code and
//! its `k` generator rows as 0/1 strings; each deeper level of the chain
//! appends one line holding its row count and then that many rows. Real
//! vectors are whitespace-separated decimals, free-form across lines.
//! Every parse failure names the source and the 1-based line at fault.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::codes::{BinaryCode, NestedBinaryCodes};
use crate::error::{Error, Result};
use crate::rational::{Rational, RationalMatrix};

// --- shared scanning helpers --------------------------------------------------

/// Non-blank lines paired with their 1-based line numbers.
fn numbered_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let trimmed = line.trim();
            if trimmed.is_empty() {
                None
            } else {
                Some((i + 1, trimmed))
            }
        })
        .collect()
}

/// Parses one unsigned integer from a whole line.
fn parse_count(source: &str, line: usize, text: &str, what: &str) -> Result<usize> {
    text.parse::<usize>()
        .map_err(|_| Error::parse(source, line, format!("expected {what}, found {text:?}")))
}

// --- matrix text format -------------------------------------------------------

/// Parses the matrix text format: dimension line, then `n` rows of `n`
/// integer or `p/q` entries.
pub fn parse_matrix(text: &str, source: &str) -> Result<RationalMatrix> {
    let lines = numbered_lines(text);
    let Some(&(first_line, header)) = lines.first() else {
        return Err(Error::parse(source, 1, "empty input, expected a dimension"));
    };
    let n = parse_count(source, first_line, header, "the dimension")?;
    if n == 0 {
        return Err(Error::parse(source, first_line, "dimension must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let Some(&(line, content)) = lines.get(1 + r) else {
            return Err(Error::parse(
                source,
                lines.last().map_or(first_line, |&(l, _)| l) + 1,
                format!("expected {n} matrix rows, found {r}"),
            ));
        };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != n {
            return Err(Error::parse(
                source,
                line,
                format!("expected {n} entries, found {}", tokens.len()),
            ));
        }
        let mut row = Vec::with_capacity(n);
        for token in tokens {
            let value = Rational::from_str(token).map_err(|_| {
                Error::parse(source, line, format!("bad entry {token:?}"))
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    if let Some(&(line, content)) = lines.get(1 + n) {
        return Err(Error::parse(
            source,
            line,
            format!("unexpected trailing content {content:?}"),
        ));
    }
    RationalMatrix::from_rows(rows)
}

/// Renders a matrix in the text format `parse_matrix` reads.
pub fn format_matrix(matrix: &RationalMatrix) -> String {
    let n = matrix.n();
    let mut out = String::new();
    out.push_str(&n.to_string());
    out.push('\n');
    for row in matrix.to_dense() {
        let line: Vec<String> = row.iter().map(Rational::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Reads and parses a matrix file.
pub fn load_matrix(path: &Path) -> Result<RationalMatrix> {
    let text = fs::read_to_string(path)?;
    parse_matrix(&text, &path.display().to_string())
}

// --- code chain text format ---------------------------------------------------

/// Validates and collects one block of `count` generator rows.
fn parse_code_rows<'a>(
    source: &str,
    lines: &[(usize, &'a str)],
    cursor: &mut usize,
    count: usize,
    n: usize,
) -> Result<Vec<&'a str>> {
    let mut rows = Vec::with_capacity(count);
    for r in 0..count {
        let Some(&(line, content)) = lines.get(*cursor) else {
            return Err(Error::parse(
                source,
                lines.last().map_or(1, |&(l, _)| l) + 1,
                format!("expected {count} generator rows, found {r}"),
            ));
        };
        *cursor += 1;
        if content.len() != n || !content.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::parse(
                source,
                line,
                format!("expected a row of {n} binary digits, found {content:?}"),
            ));
        }
        rows.push(content);
    }
    Ok(rows)
}

/// Parses the code chain format: `k n levels` header, the largest code's
/// rows, then one `row count` line plus rows per deeper level.
pub fn parse_codes(text: &str, source: &str) -> Result<NestedBinaryCodes> {
    let lines = numbered_lines(text);
    let Some(&(first_line, header)) = lines.first() else {
        return Err(Error::parse(source, 1, "empty input, expected `k n levels`"));
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::parse(
            source,
            first_line,
            format!("expected header `k n levels`, found {header:?}"),
        ));
    }
    let k = parse_count(source, first_line, fields[0], "the dimension k")?;
    let n = parse_count(source, first_line, fields[1], "the block length n")?;
    let level_count = parse_count(source, first_line, fields[2], "the level count")?;
    if n == 0 || k == 0 || level_count == 0 {
        return Err(Error::parse(
            source,
            first_line,
            "k, n, and levels must all be positive",
        ));
    }
    let mut cursor = 1;
    let rows = parse_code_rows(source, &lines, &mut cursor, k, n)?;
    let mut levels = vec![BinaryCode::from_strings(&rows)?];
    for _ in 1..level_count {
        let Some(&(line, content)) = lines.get(cursor) else {
            return Err(Error::parse(
                source,
                lines.last().map_or(first_line, |&(l, _)| l) + 1,
                format!("expected {level_count} levels, found {}", levels.len()),
            ));
        };
        cursor += 1;
        let k_level = parse_count(source, line, content, "a level row count")?;
        let rows = parse_code_rows(source, &lines, &mut cursor, k_level, n)?;
        levels.push(BinaryCode::from_strings(&rows)?);
    }
    if let Some(&(line, content)) = lines.get(cursor) {
        return Err(Error::parse(
            source,
            line,
            format!("unexpected trailing content {content:?}"),
        ));
    }
    NestedBinaryCodes::new(levels)
}

/// Renders a code chain in the text format `parse_codes` reads.
pub fn format_codes(codes: &NestedBinaryCodes) -> String {
    let n = codes.n();
    let row_string = |row: &crate::codes::BitRow| -> String {
        (0..n).map(|i| if row.get(i) { '1' } else { '0' }).collect()
    };
    let mut out = String::new();
    let first = codes.level(0);
    out.push_str(&format!("{} {} {}\n", first.k(), n, codes.level_count()));
    for row in first.rows() {
        out.push_str(&row_string(row));
        out.push('\n');
    }
    for level in &codes.levels()[1..] {
        out.push_str(&level.k().to_string());
        out.push('\n');
        for row in level.rows() {
            out.push_str(&row_string(row));
            out.push('\n');
        }
    }
    out
}

/// Reads and parses a code chain file.
pub fn load_codes(path: &Path) -> Result<NestedBinaryCodes> {
    let text = fs::read_to_string(path)?;
    parse_codes(&text, &path.display().to_string())
}

// --- real vectors ---------------------------------------------------------------

/// Parses whitespace-separated decimals, across any number of lines.
pub fn parse_real_vector(text: &str, source: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (line, content) in numbered_lines(text) {
        for token in content.split_whitespace() {
            let value = f64::from_str(token).map_err(|_| {
                Error::parse(source, line, format!("bad real value {token:?}"))
            })?;
            if !value.is_finite() {
                return Err(Error::parse(
                    source,
                    line,
                    format!("value {token:?} is not finite"),
                ));
            }
            values.push(value);
        }
    }
    if values.is_empty() {
        return Err(Error::parse(source, 1, "no values found"));
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::testutil::{example_dual, example_generator, hamming_chain, two_level_chain};

    #[test]
    fn matrix_round_trips_exactly() {
        let b = example_generator();
        let text = format_matrix(&b);
        let back = parse_matrix(&text, "round-trip").unwrap();
        assert_eq!(b, back);
    }

    #[test]
    fn dual_matrix_renders_fractions() {
        let text = format_matrix(&example_dual());
        assert!(text.contains("-1/2"));
        assert!(text.contains("1/2"));
        let back = parse_matrix(&text, "dual").unwrap();
        assert_eq!(back, example_dual());
    }

    #[test]
    fn matrix_format_golden_small_case() {
        let m = RationalMatrix::from_rows(vec![
            vec![ratio(1, 1), ratio(-1, 2)],
            vec![ratio(0, 1), ratio(3, 4)],
        ])
        .unwrap();
        assert_eq!(format_matrix(&m), "2\n1 -1/2\n0 3/4\n");
    }

    #[test]
    fn matrix_parser_accepts_blank_lines_and_mixed_tokens() {
        let text = "\n2\n\n1/1  2\n-3 4/2\n\n";
        let m = parse_matrix(text, "mixed").unwrap();
        assert_eq!(m.entry(0, 0), ratio(1, 1));
        assert_eq!(m.entry(0, 1), ratio(2, 1));
        assert_eq!(m.entry(1, 0), ratio(-3, 1));
        assert_eq!(m.entry(1, 1), ratio(2, 1));
    }

    #[test]
    fn matrix_parse_errors_name_their_lines() {
        let cases = [
            ("", 1, "empty input"),
            ("x", 1, "expected the dimension"),
            ("0", 1, "dimension must be positive"),
            ("2\n1 2", 3, "expected 2 matrix rows, found 1"),
            ("2\n1 2 3\n4 5", 2, "expected 2 entries, found 3"),
            ("2\n1 2\n4 x", 3, "bad entry"),
            ("2\n1 2\n3 1/0", 3, "bad entry"),
            ("1\n5\nextra", 3, "unexpected trailing content"),
        ];
        for (text, want_line, want_fragment) in cases {
            match parse_matrix(text, "bad.matrix") {
                Err(Error::Parse { source_name, line, reason }) => {
                    assert_eq!(source_name, "bad.matrix");
                    assert_eq!(line, want_line, "wrong line for {text:?}: {reason}");
                    assert!(
                        reason.contains(want_fragment),
                        "reason {reason:?} missing {want_fragment:?}"
                    );
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn single_level_code_round_trips() {
        let chain = hamming_chain();
        let text = format_codes(&chain);
        assert!(text.starts_with("4 7 1\n"));
        let back = parse_codes(&text, "hamming").unwrap();
        assert_eq!(back.dims(), chain.dims());
        assert_eq!(format_codes(&back), text);
    }

    #[test]
    fn multi_level_code_round_trips() {
        let chain = two_level_chain();
        let text = format_codes(&chain);
        assert_eq!(text, "3 4 2\n1100\n0110\n0011\n1\n1111\n");
        let back = parse_codes(&text, "two-level").unwrap();
        assert_eq!(back.dims(), vec![3, 1]);
        assert_eq!(format_codes(&back), text);
    }

    #[test]
    fn code_parse_errors_name_their_lines() {
        let cases = [
            ("", 1, "empty input"),
            ("4 7", 1, "expected header"),
            ("x 7 1", 1, "expected the dimension k"),
            ("0 4 1", 1, "must all be positive"),
            ("2 4 1\n1100", 3, "expected 2 generator rows, found 1"),
            ("2 4 1\n1100\n012a", 3, "binary digits"),
            ("2 4 1\n110\n0110", 2, "row of 4 binary digits"),
            ("2 4 2\n1100\n0110", 4, "expected 2 levels, found 1"),
            ("2 4 2\n1100\n0110\nq", 4, "a level row count"),
            ("1 4 1\n1100\n0011", 3, "unexpected trailing content"),
        ];
        for (text, want_line, want_fragment) in cases {
            match parse_codes(text, "bad.code") {
                Err(Error::Parse { source_name, line, reason }) => {
                    assert_eq!(source_name, "bad.code");
                    assert_eq!(line, want_line, "wrong line for {text:?}: {reason}");
                    assert!(
                        reason.contains(want_fragment),
                        "reason {reason:?} missing {want_fragment:?}"
                    );
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn nesting_violations_surface_from_the_constructor() {
        // Second level is not inside the first: 1111 is not in <1100>.
        let text = "1 4 2\n1100\n1\n1111";
        assert!(matches!(
            parse_codes(text, "broken"),
            Err(Error::NonNestedCodes { .. })
        ));
    }

    #[test]
    fn real_vectors_parse_across_lines() {
        let v = parse_real_vector("1.5 -2\n0.25\n\n3e-1", "vec").unwrap();
        assert_eq!(v, vec![1.5, -2.0, 0.25, 0.3]);
    }

    #[test]
    fn real_vector_errors_name_their_lines() {
        match parse_real_vector("1.0\nbad", "vec") {
            Err(Error::Parse { line, reason, .. }) => {
                assert_eq!(line, 2);
                assert!(reason.contains("bad real value"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_real_vector("inf", "vec"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_real_vector("  \n ", "vec"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn files_round_trip_through_disk() {
        let dir = std::env::temp_dir().join("lattice-minsum-io-test");
        fs::create_dir_all(&dir).unwrap();
        let matrix_path = dir.join("b.matrix");
        fs::write(&matrix_path, format_matrix(&example_generator())).unwrap();
        assert_eq!(load_matrix(&matrix_path).unwrap(), example_generator());
        let code_path = dir.join("chain.code");
        fs::write(&code_path, format_codes(&two_level_chain())).unwrap();
        assert_eq!(load_codes(&code_path).unwrap().dims(), vec![3, 1]);
        let missing = dir.join("absent.matrix");
        assert!(matches!(load_matrix(&missing), Err(Error::Io(_))));
    }
}
