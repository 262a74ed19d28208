//! Path tables and height graphs as text or SVG.

use std::fmt::Write;

use simplex_paths::{PathError, Simplex, SimplexPath};
use thiserror::Error;

const GRID: usize = 20;

fn bit_row(s: &Simplex) -> String {
    let cells: Vec<&str> = s.bits().iter().map(|&b| if b { "1" } else { "0" }).collect();
    cells.join(" ")
}

/// One row per simplex, with a row between consecutive simplices marking
/// the flipped coordinate by a `v` under its column.
pub fn path_table(p: &SimplexPath) -> String {
    let r = p.r_sequence();
    let mut out = String::new();
    for (j, s) in r.iter().enumerate() {
        if j > 0 {
            let c = p.color(j);
            writeln!(out, "{}v", " ".repeat(2 * c)).unwrap();
        }
        writeln!(out, "{}", bit_row(s)).unwrap();
    }
    out
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("empty table")]
    Empty,
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("table ends on an arrow row")]
    DanglingArrow,
    #[error(transparent)]
    Path(#[from] PathError),
}

fn parse_bits(line: &str, lineno: usize) -> Result<Vec<bool>, TableError> {
    line.split(' ')
        .map(|cell| match cell {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(TableError::Line {
                line: lineno,
                reason: format!("bad cell {other:?}"),
            }),
        })
        .collect()
}

fn parse_arrow(line: &str, lineno: usize) -> Result<usize, TableError> {
    let bad = |reason: &str| TableError::Line {
        line: lineno,
        reason: reason.into(),
    };
    let pad = line.len() - line.trim_start_matches(' ').len();
    if &line[pad..] != "v" || !pad.is_multiple_of(2) {
        return Err(bad("arrow row must be an even run of spaces and one 'v'"));
    }
    Ok(pad / 2)
}

/// Inverse of [`path_table`].
pub fn parse_path_table(text: &str) -> Result<SimplexPath, TableError> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.is_empty() {
        return Err(TableError::Empty);
    }
    if lines.len().is_multiple_of(2) {
        return Err(TableError::DanglingArrow);
    }
    let initial = parse_bits(lines[0], 1)?;
    let n = initial.len().checked_sub(1).ok_or(TableError::Empty)?;
    let mut colors = Vec::new();
    let mut values = Vec::new();
    let mut prev = initial.clone();
    for (i, pair) in lines[1..].chunks(2).enumerate() {
        let lineno = 2 * i + 2;
        let c = parse_arrow(pair[0], lineno)?;
        let row = parse_bits(pair[1], lineno + 1)?;
        if row.len() != n + 1 || c > n {
            return Err(TableError::Line {
                line: lineno + 1,
                reason: "row width or arrow column out of range".into(),
            });
        }
        if (0..=n).any(|j| j != c && row[j] != prev[j]) {
            return Err(TableError::Line {
                line: lineno + 1,
                reason: format!("row changes a coordinate other than {c}"),
            });
        }
        colors.push(c);
        values.push(row[c]);
        prev = row;
    }
    Ok(SimplexPath::new(n, Simplex::from_bits(initial), colors, values)?)
}

/// Height graph drawn on a character grid. Vertex `j` sits in column
/// `4(j-1)`; level rows hold vertices and flat edges (labeled with their
/// mark), the rows between levels hold the slopes.
pub fn height_graph_ascii(p: &SimplexPath) -> String {
    let h = p.heights();
    let max = *h.values.iter().max().unwrap();
    let width = 4 * (h.values.len() - 1) + 1;
    let mut grid = vec![vec![' '; width]; 2 * max + 1];
    let row = |level: usize| 2 * (max - level);
    for (j, &level) in h.values.iter().enumerate() {
        grid[row(level)][4 * j] = 'o';
    }
    for (j, pair) in h.values.windows(2).enumerate() {
        let x = 4 * j;
        match pair[1].cmp(&pair[0]) {
            std::cmp::Ordering::Greater => grid[row(pair[0]) - 1][x + 2] = '/',
            std::cmp::Ordering::Less => grid[row(pair[1]) - 1][x + 2] = '\\',
            std::cmp::Ordering::Equal => {
                let mark = if p.value(j + 1) { '1' } else { '0' };
                let r = &mut grid[row(pair[0])];
                r[x + 1] = '-';
                r[x + 2] = mark;
                r[x + 3] = '-';
            }
        }
    }
    let mut out = String::new();
    for (i, cells) in grid.iter().enumerate() {
        let label = if i % 2 == 0 {
            format!("{:>2} ", max - i / 2)
        } else {
            "   ".to_string()
        };
        let line: String = cells.iter().collect();
        writeln!(out, "{}", format!("{label}{line}").trim_end()).unwrap();
    }
    out
}

pub fn height_graph_svg(p: &SimplexPath) -> String {
    let h = p.heights();
    let max = *h.values.iter().max().unwrap();
    let k = h.values.len();
    let (w, ht) = (GRID * (k + 1), GRID * (max + 2));
    let x = |j: usize| GRID * (j + 1);
    let y = |level: usize| GRID * (max + 1 - level);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {ht}" width="{w}" height="{ht}">"#
    )
    .unwrap();
    let points: Vec<String> = h
        .values
        .iter()
        .enumerate()
        .map(|(j, &l)| format!("{},{}", x(j), y(l)))
        .collect();
    writeln!(
        s,
        r#"  <polyline points="{}" fill="none" stroke="black"/>"#,
        points.join(" ")
    )
    .unwrap();
    for (j, &l) in h.values.iter().enumerate() {
        writeln!(s, r#"  <circle cx="{}" cy="{}" r="3"/>"#, x(j), y(l)).unwrap();
    }
    for e in &h.marked {
        let j = e.index - 1;
        writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="10" text-anchor="middle">{}</text>"#,
            x(j) + GRID / 2,
            y(h.values[j]) - 4,
            u8::from(e.mark)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// The path table as monospace text lines in an SVG document.
pub fn path_table_svg(p: &SimplexPath) -> String {
    let table = path_table(p);
    let lines: Vec<&str> = table.lines().collect();
    let w = GRID / 2 * (2 * p.dim() + 1) + GRID;
    let ht = GRID / 2 * lines.len() + GRID;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {ht}" width="{w}" height="{ht}">"#
    )
    .unwrap();
    for (i, line) in lines.iter().enumerate() {
        writeln!(
            s,
            r#"  <text x="{}" y="{}" font-family="monospace" font-size="10" xml:space="preserve">{line}</text>"#,
            GRID / 2,
            GRID + GRID / 2 * i
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
