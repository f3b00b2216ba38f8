//! Text formats for games, profiles and simulation scenarios.

mod game_file;
mod profile_file;
pub mod scenario;

pub use game_file::{parse_game, write_game};
pub use profile_file::{parse_profile, write_profile};

/// Version stamped into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

use crate::error::Error;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// A non-blank, comment-stripped line with its 1-based number.
pub(crate) struct Line<'a> {
    pub no: usize,
    pub indented: bool,
    pub text: &'a str,
}

pub(crate) fn lines(src: &str) -> impl Iterator<Item = Line<'_>> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let text = body.trim();
        if text.is_empty() {
            return None;
        }
        Some(Line { no: i + 1, indented: body.starts_with(char::is_whitespace), text })
    })
}

/// Splits `(a, b): rest` into the key parts and the rest.
pub(crate) fn keyed_row(line: &Line) -> Result<(Vec<String>, String), Error> {
    let t = line.text;
    let open = t.strip_prefix('(').ok_or_else(|| parse_err(line.no, "expected `(` at start of row"))?;
    let (key, rest) = open.split_once(')').ok_or_else(|| parse_err(line.no, "missing `)`"))?;
    let rest = rest.trim_start().strip_prefix(':').ok_or_else(|| parse_err(line.no, "missing `:` after key"))?;
    let parts = key.split(',').map(|p| p.trim().to_string()).collect();
    Ok((parts, rest.trim().to_string()))
}

pub(crate) fn split_list(s: &str) -> Vec<String> {
    s.split(|c: char| c.is_whitespace() || c == ',').filter(|x| !x.is_empty()).map(str::to_string).collect()
}
