//! Burmeister `.cxt` format.
//!
//! ```text
//! B
//!
//! <object count>
//! <attribute count>
//!
//! <object names, one per line>
//! <attribute names, one per line>
//! <one row per object: `X` incident, `.` not incident>
//! ```

use super::{ContextError, FormalContext};

pub fn parse_cxt(text: &str) -> Result<FormalContext, ContextError> {
    let mut lines = Lines::new(text);

    let header = lines.next_line("header `B`")?;
    if header.1.trim_end() != "B" {
        return Err(ContextError::syntax(header.0, 1, "expected header `B`"));
    }
    lines.expect_blank()?;
    let n = lines.next_count("object count")?;
    let m = lines.next_count("attribute count")?;
    lines.expect_blank()?;

    let objects = (0..n)
        .map(|_| lines.next_line("object name").map(|(_, s)| s.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let attributes = (0..m)
        .map(|_| lines.next_line("attribute name").map(|(_, s)| s.to_string()))
        .collect::<Result<Vec<_>, _>>()?;

    let mut incidence = Vec::with_capacity(n);
    for row in 0..n {
        let (lineno, line) = lines.next_line("incidence row").map_err(|e| match e {
            ContextError::Syntax { .. } => ContextError::DimensionMismatch {
                what: "incidence rows",
                expected: n,
                found: row,
            },
            other => other,
        })?;
        let cells: Vec<char> = line.trim_end().chars().collect();
        if cells.len() != m {
            return Err(ContextError::syntax(
                lineno,
                cells.len().min(m) + 1,
                format!("row has {} cells, expected {m}", cells.len()),
            ));
        }
        let bits = cells
            .iter()
            .enumerate()
            .map(|(col, &c)| match c {
                'X' | 'x' => Ok(true),
                '.' => Ok(false),
                other => Err(ContextError::syntax(
                    lineno,
                    col + 1,
                    format!("illegal incidence character `{other}`"),
                )),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        incidence.push(bits);
    }
    if let Some((lineno, extra)) = lines.rest_nonblank() {
        return Err(ContextError::syntax(
            lineno,
            1,
            format!("unexpected trailing content `{extra}`"),
        ));
    }

    FormalContext::new(objects, attributes, incidence)
}

pub fn to_cxt(ctx: &FormalContext) -> String {
    let mut out = String::from("B\n\n");
    out.push_str(&format!("{}\n{}\n\n", ctx.n_objects(), ctx.n_attributes()));
    for o in ctx.objects() {
        out.push_str(o);
        out.push('\n');
    }
    for a in ctx.attributes() {
        out.push_str(a);
        out.push('\n');
    }
    for x in 0..ctx.n_objects() {
        for a in 0..ctx.n_attributes() {
            out.push(if ctx.incident(x, a) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str), ContextError> {
        match self.inner.next() {
            Some((i, line)) => {
                self.last = i + 1;
                Ok((i + 1, line.strip_suffix('\r').unwrap_or(line)))
            }
            None => Err(ContextError::syntax(
                self.last + 1,
                1,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    fn expect_blank(&mut self) -> Result<(), ContextError> {
        let (lineno, line) = self.next_line("blank line")?;
        if !line.trim().is_empty() {
            return Err(ContextError::syntax(lineno, 1, "expected blank line"));
        }
        Ok(())
    }

    fn next_count(&mut self, what: &str) -> Result<usize, ContextError> {
        let (lineno, line) = self.next_line(what)?;
        line.trim()
            .parse()
            .map_err(|_| ContextError::syntax(lineno, 1, format!("invalid {what} `{}`", line.trim())))
    }

    fn rest_nonblank(&mut self) -> Option<(usize, &'a str)> {
        self.inner
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| (i + 1, l))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const SAMPLE: &str = "B\n\n7\n5\n\n1\n2\n3\n4\n5\n6\n7\na1\na2\na3\na4\na5\n\
        .XX..\nXX...\nX....\n....X\n...XX\n..XXX\nXXX..\n";

    #[test]
    fn parses_sample() {
        let ctx = parse_cxt(SAMPLE).unwrap();
        assert_eq!(ctx.n_objects(), 7);
        assert_eq!(ctx.n_attributes(), 5);
        let row7: Vec<bool> = (0..5).map(|a| ctx.incident(6, a)).collect();
        assert_eq!(row7, [true, true, true, false, false]);
        assert_eq!(ctx, fixtures::sample_context());
    }

    #[test]
    fn serializes_byte_exact() {
        assert_eq!(to_cxt(&fixtures::sample_context()), SAMPLE);
    }

    #[test]
    fn single_cell() {
        let ctx = parse_cxt("B\n\n1\n1\n\nx\ny\nX").unwrap();
        assert_eq!(ctx.incidence(), vec![vec![true]]);
        assert_eq!(parse_cxt(&to_cxt(&ctx)).unwrap(), ctx);
    }

    #[test]
    fn missing_row_is_dimension_mismatch() {
        let short = SAMPLE.trim_end().rsplit_once('\n').unwrap().0;
        let err = parse_cxt(short).unwrap_err();
        assert_eq!(
            err,
            ContextError::DimensionMismatch {
                what: "incidence rows",
                expected: 7,
                found: 6
            }
        );
    }

    #[test]
    fn bad_header_reports_line() {
        let err = parse_cxt("C\n\n1\n1\n\nx\ny\nX\n").unwrap_err();
        assert!(matches!(err, ContextError::Syntax { line: 1, .. }));
    }

    #[test]
    fn illegal_character_reports_position() {
        let err = parse_cxt("B\n\n1\n3\n\nx\na\nb\nc\nX1.\n").unwrap_err();
        assert_eq!(
            err,
            ContextError::Syntax {
                line: 10,
                column: 2,
                message: "illegal incidence character `1`".into()
            }
        );
    }

    #[test]
    fn short_row_is_rejected() {
        let err = parse_cxt("B\n\n1\n3\n\nx\na\nb\nc\nX.\n").unwrap_err();
        assert!(matches!(err, ContextError::Syntax { line: 10, .. }));
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = parse_cxt("B\n\n2\n1\n\nx\nx\na\nX\n.\n").unwrap_err();
        assert_eq!(err, ContextError::DuplicateObject("x".into()));
    }

    #[test]
    fn bad_count() {
        let err = parse_cxt("B\n\nseven\n1\n").unwrap_err();
        assert!(matches!(err, ContextError::Syntax { line: 3, .. }));
    }

    #[test]
    fn trailing_garbage() {
        let err = parse_cxt("B\n\n1\n1\n\nx\na\nX\nXX\n").unwrap_err();
        assert!(matches!(err, ContextError::Syntax { line: 9, .. }));
    }
}
