//! Labeling files name three arc lists, one per label:
//!
//! ```text
//! # quarter-turn example
//! l2: [0, 1/4)
//! l1: [1/2, 3/4)
//! l0: [1/4, 1/2) [3/4, 1)
//! ```
//!
//! Endpoints use the `p/q`, `p/q+ka`, or `ka` grammar. A section may span
//! several lines, may be omitted (empty set), or may be the keyword `full`.

use romdom::{Alpha, Arc, CirclePoint, CircleSet, Error, Result};

pub fn parse_file(text: &str, alpha: &Alpha) -> Result<(CircleSet, CircleSet, CircleSet)> {
    let mut arcs: [Vec<Arc>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut full = [false; 3];
    let mut current: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rest = match line.split_once(':') {
            Some((name, tail)) => {
                current = Some(match name.trim() {
                    "l0" => 0,
                    "l1" => 1,
                    "l2" => 2,
                    other => {
                        return Err(at(
                            line_no,
                            format!("unknown section {other:?}, expected l0, l1, or l2"),
                        ))
                    }
                });
                tail
            }
            None => line,
        };
        let Some(section) = current else {
            return Err(at(line_no, "arcs before any l0:/l1:/l2: section".into()));
        };
        parse_arcs(rest, line_no, alpha, &mut arcs[section], &mut full[section])?;
    }

    let mut sets = Vec::with_capacity(3);
    for (list, is_full) in arcs.into_iter().zip(full) {
        sets.push(if is_full {
            CircleSet::full()
        } else {
            CircleSet::from_arcs(list, alpha)?
        });
    }
    let l2 = sets.pop().unwrap();
    let l1 = sets.pop().unwrap();
    let l0 = sets.pop().unwrap();
    Ok((l0, l1, l2))
}

fn parse_arcs(
    chunk: &str,
    line_no: usize,
    alpha: &Alpha,
    arcs: &mut Vec<Arc>,
    full: &mut bool,
) -> Result<()> {
    let mut s = chunk.trim();
    while !s.is_empty() {
        if let Some(tail) = s.strip_prefix("full") {
            *full = true;
            s = tail.trim_start();
            continue;
        }
        let Some(open) = s.strip_prefix('[') else {
            return Err(at(line_no, format!("expected '[' or 'full', found {s:?}")));
        };
        let Some(close) = open.find(')') else {
            return Err(at(line_no, "unterminated arc, missing ')'".into()));
        };
        let body = &open[..close];
        let Some((a, b)) = body.split_once(',') else {
            return Err(at(
                line_no,
                format!("arc needs two comma-separated endpoints, found {body:?}"),
            ));
        };
        let start = point(a, line_no, alpha)?;
        let end = point(b, line_no, alpha)?;
        arcs.push(Arc::new(start, end).map_err(|e| at(line_no, e.to_string()))?);
        s = open[close + 1..].trim_start();
        if let Some(tail) = s.strip_prefix(',') {
            s = tail.trim_start();
        }
    }
    Ok(())
}

fn point(text: &str, line_no: usize, alpha: &Alpha) -> Result<CirclePoint> {
    CirclePoint::parse(text, alpha).map_err(|e| at(line_no, e.to_string()))
}

fn at(line_no: usize, msg: String) -> Error {
    Error::InvalidParameter(format!("labeling file line {line_no}: {msg}"))
}
