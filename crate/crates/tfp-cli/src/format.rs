//! The canonical instance file format.
//!
//! ```text
//! tfp 1
//! n=8
//! v=0
//! 01110000
//! ...
//! ```
//!
//! Line 1 is the format tag and version. `#`-prefixed comment lines may
//! appear anywhere after it and are ignored. Rendering always produces the
//! canonical comment-free form, so `render(parse(file)) == file` on
//! canonical files.

use crate::CliError;
use tfp_core::Tournament;

pub fn render_instance(t: &Tournament) -> String {
    let n = t.n();
    let mut out = String::with_capacity(16 + n * (n + 1));
    out.push_str("tfp 1\n");
    out.push_str(&format!("n={n}\n"));
    out.push_str(&format!("v={}\n", t.favorite()));
    for i in 0..n {
        for j in 0..n {
            out.push(if t.beats(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_instance(text: &str) -> Result<Tournament, CliError> {
    let fail = |line: usize, col: usize, msg: String| CliError::Parse { line, col, msg };
    let mut lines = text.lines().enumerate();

    let (no, first) = lines
        .next()
        .ok_or_else(|| fail(1, 1, "empty file".into()))?;
    if first.trim_end() != "tfp 1" {
        return Err(fail(no + 1, 1, "expected header `tfp 1`".into()));
    }

    let mut content = lines.filter(|(_, l)| !l.trim_start().starts_with('#'));

    let (no, line) = content
        .next()
        .ok_or_else(|| fail(2, 1, "missing `n=` line".into()))?;
    let n: usize = line
        .trim_end()
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| fail(no + 1, 1, "expected `n=<player count>`".into()))?;

    let (no, line) = content
        .next()
        .ok_or_else(|| fail(no + 2, 1, "missing `v=` line".into()))?;
    let favorite: usize = line
        .trim_end()
        .strip_prefix("v=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| fail(no + 1, 1, "expected `v=<favorite index>`".into()))?;

    let mut rows = Vec::with_capacity(n);
    let mut last_no = no;
    for i in 0..n {
        let (no, line) = content
            .next()
            .ok_or_else(|| fail(last_no + 2, 1, format!("missing matrix row {i}")))?;
        last_no = no;
        let line = line.trim_end();
        if line.len() != n {
            return Err(fail(
                no + 1,
                line.len() + 1,
                format!("row {i} has {} columns, expected {n}", line.len()),
            ));
        }
        let mut row = Vec::with_capacity(n);
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                _ => return Err(fail(no + 1, col + 1, format!("expected 0 or 1, found `{ch}`"))),
            }
        }
        rows.push(row);
    }
    if let Some((no, line)) = content.find(|(_, l)| !l.trim().is_empty()) {
        return Err(fail(no + 1, 1, format!("unexpected trailing content `{}`", line.trim())));
    }
    Tournament::from_matrix(&rows, favorite).map_err(CliError::Core)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tfp_core::generator::random_tournament;

    #[test]
    fn render_parse_identity() {
        for seed in 0..5 {
            let t = random_tournament(6, seed).unwrap();
            let text = render_instance(&t);
            let parsed = parse_instance(&text).unwrap();
            assert_eq!(render_instance(&parsed), text);
        }
    }

    #[test]
    fn comments_are_ignored() {
        let text = "tfp 1\n# a note\nn=2\nv=0\n# another\n01\n00\n# trailing\n";
        let t = parse_instance(text).unwrap();
        assert_eq!(t.n(), 2);
        assert!(t.beats(0, 1));
    }

    #[test]
    fn malformed_inputs_report_positions() {
        let err = parse_instance("tfp 2\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, .. }));
        let err = parse_instance("tfp 1\nn=2\nv=0\n011\n00\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, .. }));
        let err = parse_instance("tfp 1\nn=2\nv=0\n0x\n00\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, col: 2, .. }));
        let err = parse_instance("tfp 1\nn=2\nv=0\n01\n00\nextra\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 6, .. }));
    }

    #[test]
    fn non_tournament_matrices_are_refused() {
        let err = parse_instance("tfp 1\nn=2\nv=0\n01\n10\n").unwrap_err();
        assert!(matches!(err, CliError::Core(tfp_core::Error::NotATournament(_))));
    }
}
