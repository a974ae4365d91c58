//! The annotated example corpus, embedded at compile time.
//!
//! Each entry pairs a matrix with the class it must land in, giving the
//! test suites and the table printer a shared, human-auditable fixture.

use thiserror::Error;

use crate::algebra::IntMat2;

/// `data/corpus.txt`, the source text of the builtin corpus.
pub const CORPUS_TEXT: &str = include_str!("../data/corpus.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub matrix: IntMat2,
    pub row: u8,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusParseError {
    #[error("line {line}: expected \"a b c d => row\"")]
    MissingArrow { line: usize },
    #[error("line {line}: {source}")]
    BadMatrix {
        line: usize,
        source: crate::algebra::MatrixParseError,
    },
    #[error("line {line}: class must be 1..=20, got {got:?}")]
    BadRow { line: usize, got: String },
}

/// Parses corpus text: one `a b c d => row` per line, `#` comments and
/// blank lines skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusParseError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (lhs, rhs) = content
            .split_once("=>")
            .ok_or(CorpusParseError::MissingArrow { line })?;
        let matrix: IntMat2 = lhs
            .trim()
            .parse()
            .map_err(|source| CorpusParseError::BadMatrix { line, source })?;
        let row: u8 = rhs
            .trim()
            .parse()
            .ok()
            .filter(|r| (1..=20).contains(r))
            .ok_or_else(|| CorpusParseError::BadRow {
                line,
                got: rhs.trim().to_string(),
            })?;
        entries.push(CorpusEntry { matrix, row });
    }
    Ok(entries)
}

/// The builtin corpus. Panics only if the embedded text is malformed,
/// which the test suite rules out.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    parse_corpus(CORPUS_TEXT).expect("embedded corpus parses")
}
