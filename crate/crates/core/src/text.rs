//! Shared helpers for the line-oriented text formats.

use crate::error::ParseError;

/// Non-blank lines that are not `#` comments, with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Whitespace-separated tokens of a line with their 1-based columns.
pub(crate) fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let col = offset + start + 1;
        let tok = &tail[..len];
        offset += start + len;
        rest = &tail[len..];
        Some((col, tok))
    })
}

/// Parses a `<keyword> <n>` line.
pub(crate) fn parse_header(ln: usize, line: &str, keyword: &str) -> Result<usize, ParseError> {
    let mut toks = tokens(line);
    match toks.next() {
        Some((_, k)) if k == keyword => {}
        Some((col, k)) => {
            return Err(ParseError::new(ln, col, format!("expected `{keyword}`, found `{k}`")))
        }
        None => return Err(ParseError::new(ln, 1, format!("expected `{keyword} <n>`"))),
    }
    let (col, value) = toks
        .next()
        .ok_or_else(|| ParseError::new(ln, line.trim_end().len() + 1, format!("missing count after `{keyword}`")))?;
    let n = value
        .parse()
        .map_err(|_| ParseError::new(ln, col, format!("invalid count `{value}`")))?;
    if let Some((col, extra)) = toks.next() {
        return Err(ParseError::new(ln, col, format!("unexpected token `{extra}`")));
    }
    Ok(n)
}
