//! Matrix Market coordinate file I/O.
//!
//! Reads `real`, `integer` and `pattern` fields, `general` and `symmetric`
//! storage. Symmetric files are expanded to full storage, 1-based file
//! indices become 0-based, duplicates are summed. Complex matrices and
//! skew-symmetric storage are rejected.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::{Triplet, TripletMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Field {
    Real,
    Integer,
    Pattern,
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<TripletMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines().enumerate();

    // header: %%MatrixMarket matrix coordinate <field> <symmetry>
    let (field, symmetric) = {
        let (idx, first) = lines
            .next()
            .ok_or_else(|| parse_err(path, 1, "empty file"))?;
        let line = first.map_err(|e| Error::io(path, e))?;
        let lineno = idx + 1;
        let tokens: Vec<String> = line.split_whitespace().map(str::to_lowercase).collect();
        if tokens.first().map(String::as_str) != Some("%%matrixmarket") {
            return Err(parse_err(path, lineno, "missing %%MatrixMarket header"));
        }
        if tokens.get(1).map(String::as_str) != Some("matrix")
            || tokens.get(2).map(String::as_str) != Some("coordinate")
        {
            return Err(parse_err(
                path,
                lineno,
                "only `matrix coordinate` files are supported",
            ));
        }
        let field = match tokens.get(3).map(String::as_str) {
            Some("real") => Field::Real,
            Some("integer") => Field::Integer,
            Some("pattern") => Field::Pattern,
            Some(other) => {
                return Err(parse_err(
                    path,
                    lineno,
                    format!("unsupported field type `{other}`"),
                ))
            }
            None => return Err(parse_err(path, lineno, "missing field type")),
        };
        let symmetric = match tokens.get(4).map(String::as_str) {
            Some("general") => false,
            Some("symmetric") => true,
            Some(other) => {
                return Err(parse_err(
                    path,
                    lineno,
                    format!("unsupported symmetry `{other}`"),
                ))
            }
            None => return Err(parse_err(path, lineno, "missing symmetry")),
        };
        (field, symmetric)
    };

    // size line: first non-comment, non-blank line
    let (n_rows, n_cols, nnz_declared) = loop {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| parse_err(path, 0, "missing size line"))?;
        let line = line.map_err(|e| Error::io(path, e))?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let n_rows: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(path, lineno, "cannot parse row count"))?;
        let n_cols: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(path, lineno, "cannot parse column count"))?;
        let nnz: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(path, lineno, "cannot parse non-zero count"))?;
        break (n_rows, n_cols, nnz);
    };

    let mut entries: Vec<Triplet> = Vec::with_capacity(if symmetric {
        nnz_declared * 2
    } else {
        nnz_declared
    });
    let mut seen = 0usize;
    for (idx, line) in lines {
        let line = line.map_err(|e| Error::io(path, e))?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        if seen == nnz_declared {
            return Err(parse_err(path, lineno, "more entries than declared"));
        }
        let mut it = trimmed.split_whitespace();
        let i: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(path, lineno, "cannot parse row index"))?;
        let j: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(path, lineno, "cannot parse column index"))?;
        let value = match field {
            Field::Pattern => 1.0,
            Field::Real | Field::Integer => it
                .next()
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| parse_err(path, lineno, "cannot parse value"))?,
        };
        if i < 1 || i > n_rows || j < 1 || j > n_cols {
            return Err(parse_err(
                path,
                lineno,
                format!("index ({i}, {j}) outside {n_rows}x{n_cols} matrix"),
            ));
        }
        entries.push(Triplet::new(i - 1, j - 1, value));
        if symmetric && i != j {
            entries.push(Triplet::new(j - 1, i - 1, value));
        }
        seen += 1;
    }
    if seen != nnz_declared {
        return Err(parse_err(
            path,
            0,
            format!("declared {nnz_declared} entries, found {seen}"),
        ));
    }
    TripletMatrix::new(n_rows, n_cols, entries)
}

/// Writes full (general) storage, 1-based, values in exponent form that
/// round-trips f64 exactly.
pub fn write_matrix_market(path: impl AsRef<Path>, a: &TripletMatrix) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    (|| -> std::io::Result<()> {
        writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
        writeln!(w, "{} {} {}", a.n_rows(), a.n_cols(), a.nnz())?;
        for t in a.entries() {
            writeln!(w, "{} {} {:e}", t.row + 1, t.col + 1, t.value)?;
        }
        w.flush()
    })()
    .map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn loads_identity() {
        let f = write_tmp(
            "%%MatrixMarket matrix coordinate real general\n\
             % a comment\n\
             2 2 2\n1 1 1.0\n2 2 1.0\n",
        );
        let m = load_matrix_market(f.path()).unwrap();
        assert_eq!(m.n_rows(), 2);
        assert_eq!(
            m.entries(),
            &[Triplet::new(0, 0, 1.0), Triplet::new(1, 1, 1.0)]
        );
    }

    #[test]
    fn symmetric_off_diagonal_is_mirrored() {
        let f = write_tmp(
            "%%MatrixMarket matrix coordinate real symmetric\n3 3 1\n2 3 4.5\n",
        );
        let m = load_matrix_market(f.path()).unwrap();
        assert_eq!(
            m.entries(),
            &[Triplet::new(1, 2, 4.5), Triplet::new(2, 1, 4.5)]
        );
    }

    #[test]
    fn symmetric_diagonal_not_duplicated() {
        let f = write_tmp("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 1 3.0\n");
        let m = load_matrix_market(f.path()).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.entries()[0].value, 3.0);
    }

    #[test]
    fn duplicates_are_summed() {
        let f = write_tmp(
            "%%MatrixMarket matrix coordinate real general\n10 10 2\n4 5 1.0\n4 5 2.0\n",
        );
        let m = load_matrix_market(f.path()).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.entries()[0], Triplet::new(3, 4, 3.0));
    }

    #[test]
    fn pattern_entries_become_ones() {
        let f = write_tmp("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n2 1\n");
        let m = load_matrix_market(f.path()).unwrap();
        assert_eq!(m.entries(), &[Triplet::new(1, 0, 1.0)]);
    }

    #[test]
    fn complex_field_rejected_with_line_number() {
        let f = write_tmp("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n");
        match load_matrix_market(f.path()) {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 1);
                assert!(msg.contains("complex"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_index_names_line() {
        let f = write_tmp("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n");
        match load_matrix_market(f.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn garbage_value_names_line() {
        let f = write_tmp("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n");
        match load_matrix_market(f.path()) {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("value"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn roundtrip_exact() {
        let m = TripletMatrix::new(
            4,
            3,
            vec![
                Triplet::new(0, 2, 1.25e-7),
                Triplet::new(3, 0, -17.0),
                Triplet::new(2, 1, 0.1),
            ],
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.mtx");
        write_matrix_market(&path, &m).unwrap();
        let back = load_matrix_market(&path).unwrap();
        assert_eq!(back, m);
    }
}
