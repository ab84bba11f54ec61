//! The PMOD text format for persistence modules.
//!
//! ```text
//! PMOD 1
//! field 2
//! grid 2 3
//! dim 1 1 0
//! dim 1 2 1
//! ...
//! map h 2 1
//! 1
//! 1
//! map v 1 2
//! 0
//! 1
//! END
//! ```
//!
//! After the three header lines come one `dim <i> <j> <k>` line per vertex
//! (any order, each exactly once), then a `map h <i> <j>` or `map v <i> <j>`
//! block for every arrow whose source and target are both nonzero. A block
//! holds one line per codomain dimension, each with one residue per domain
//! dimension, so the matrix acts on column vectors. Arrows touching a zero
//! space are omitted. Lines starting with `#` and blank lines are ignored.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::grid::{Arrow, Grid, PersistenceModule, SquareViolation, Vertex, VertexMap};
use crate::linalg::{Matrix, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PmodError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {message}")]
    Shape { line: usize, message: String },
    #[error("module does not commute: {0}")]
    Commutativity(SquareViolation),
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(k, l)| (k + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Self {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.inner.next();
        if let Some((line, _)) = item {
            self.last = line;
        }
        item
    }

    fn peek(&mut self) -> Option<&(usize, &'a str)> {
        self.inner.peek()
    }

    /// The next line, or a syntax error naming what was expected.
    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), PmodError> {
        self.next().ok_or_else(|| PmodError::Syntax {
            line: self.last + 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }
}

fn syntax(line: usize, message: impl Into<String>) -> PmodError {
    PmodError::Syntax {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>, PmodError> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| syntax(line, format!("expected a nonnegative integer, got {f:?}")))
        })
        .collect()
}

/// Parses and validates a PMOD document.
pub fn parse_pmod(text: &str) -> Result<PersistenceModule, PmodError> {
    let mut lines = Lines::new(text);

    let (line, header) = lines.expect("`PMOD 1`")?;
    if header.split_whitespace().collect::<Vec<_>>() != ["PMOD", "1"] {
        return Err(syntax(line, "first line must be `PMOD 1`"));
    }

    let (line, field_line) = lines.expect("`field <p>`")?;
    let field = match field_line.split_whitespace().collect::<Vec<_>>()[..] {
        ["field", p] => {
            let p: u32 = p.parse().map_err(|_| syntax(line, format!("bad modulus {p:?}")))?;
            PrimeField::new(p).map_err(|e| syntax(line, e.to_string()))?
        }
        _ => return Err(syntax(line, "expected `field <p>`")),
    };

    let (line, grid_line) = lines.expect("`grid <m> <n>`")?;
    let grid = match grid_line.split_whitespace().collect::<Vec<_>>()[..] {
        ["grid", m, n] => {
            let v = numbers(line, &[m, n])?;
            Grid::new(v[0], v[1]).map_err(|e| syntax(line, e.to_string()))?
        }
        _ => return Err(syntax(line, "expected `grid <m> <n>`")),
    };

    let mut dims: BTreeMap<Vertex, usize> = BTreeMap::new();
    while let Some(&(line, l)) = lines.peek() {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.first() != Some(&"dim") {
            break;
        }
        lines.next();
        if fields.len() != 4 {
            return Err(syntax(line, "expected `dim <i> <j> <k>`"));
        }
        let v = numbers(line, &fields[1..])?;
        let vertex = Vertex::new(v[0], v[1]);
        if !grid.contains(vertex) {
            return Err(syntax(line, format!("vertex {vertex} is outside the {grid}")));
        }
        if dims.insert(vertex, v[2]).is_some() {
            return Err(syntax(line, format!("duplicate dim line for vertex {vertex}")));
        }
    }
    if let Some(missing) = grid.vertices().find(|v| !dims.contains_key(v)) {
        let fallback = lines.last + 1;
        let line = lines.peek().map_or(fallback, |&(l, _)| l);
        return Err(syntax(line, format!("missing dim line for vertex {missing}")));
    }
    let dims = VertexMap::from_fn(grid, |v| dims[&v]);
    let mut module = PersistenceModule::zero_maps(field, dims);

    let mut seen: BTreeSet<Arrow> = BTreeSet::new();
    loop {
        let (line, l) = lines.expect("a map block or `END`")?;
        if l == "END" {
            break;
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        let arrow = match fields[..] {
            ["map", kind @ ("h" | "v"), i, j] => {
                let v = numbers(line, &[i, j])?;
                let source = Vertex::new(v[0], v[1]);
                if kind == "h" {
                    Arrow::Horizontal(source)
                } else {
                    Arrow::Vertical(source)
                }
            }
            _ => return Err(syntax(line, "expected `map h <i> <j>`, `map v <i> <j>` or `END`")),
        };
        if !grid.contains(arrow.source()) || !grid.contains(arrow.target()) {
            return Err(syntax(line, format!("arrow {arrow} is outside the {grid}")));
        }
        if !seen.insert(arrow) {
            return Err(syntax(line, format!("duplicate map block for arrow {arrow}")));
        }
        let (rows, cols) = (module.dim(arrow.target()), module.dim(arrow.source()));
        if rows == 0 || cols == 0 {
            return Err(PmodError::Shape {
                line,
                message: format!("arrow {arrow} touches a zero space and must be omitted"),
            });
        }
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (row_line, row) = lines.expect(&format!("row {} of the map on {arrow}", r + 1))?;
            let entries: Vec<&str> = row.split_whitespace().collect();
            if entries.len() != cols {
                return Err(PmodError::Shape {
                    line: row_line,
                    message: format!("map on {arrow} needs {cols} entries per row, got {}", entries.len()),
                });
            }
            for e in entries {
                let x: u32 = e
                    .parse()
                    .map_err(|_| syntax(row_line, format!("expected a residue, got {e:?}")))?;
                if x >= field.modulus() {
                    return Err(syntax(
                        row_line,
                        format!("entry {x} is not a residue mod {}", field.modulus()),
                    ));
                }
                data.push(x);
            }
        }
        let matrix = Matrix::from_vec(field, rows, cols, data).expect("entries checked");
        module.set_map(arrow, matrix).expect("shape checked");
    }
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "content after `END`"));
    }
    if let Some(arrow) = module
        .arrows()
        .find(|&a| module.dim(a.source()) > 0 && module.dim(a.target()) > 0 && !seen.contains(&a))
    {
        return Err(syntax(lines.last, format!("missing map block for arrow {arrow}")));
    }
    module.validate().map_err(PmodError::Commutativity)?;
    Ok(module)
}

/// Serializes a module; `parse_pmod(&print_pmod(m)) == m`.
pub fn print_pmod(module: &PersistenceModule) -> String {
    let grid = module.grid();
    let mut out = String::new();
    out.push_str("PMOD 1\n");
    out.push_str(&format!("field {}\n", module.field().modulus()));
    out.push_str(&format!("grid {} {}\n", grid.m(), grid.n()));
    for v in grid.vertices() {
        out.push_str(&format!("dim {} {} {}\n", v.row, v.col, module.dim(v)));
    }
    for arrow in module.arrows() {
        let m = module.map(arrow);
        if m.rows() == 0 || m.cols() == 0 {
            continue;
        }
        let (kind, s) = match arrow {
            Arrow::Horizontal(s) => ("h", s),
            Arrow::Vertical(s) => ("v", s),
        };
        out.push_str(&format!("map {kind} {} {}\n", s.row, s.col));
        for r in 0..m.rows() {
            let row: Vec<String> = m.row(r).iter().map(u32::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out.push_str("END\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::example_negative_approximation;

    #[test]
    fn round_trip() {
        let m = example_negative_approximation(PrimeField::GF2);
        let text = print_pmod(&m);
        assert_eq!(parse_pmod(&text).unwrap(), m);
        assert_eq!(print_pmod(&parse_pmod(&text).unwrap()), text);
    }

    #[test]
    fn missing_dim_names_the_vertex() {
        let text = "PMOD 1\nfield 2\ngrid 1 2\ndim 1 1 0\nEND\n";
        match parse_pmod(text) {
            Err(PmodError::Syntax { line, message }) => {
                assert_eq!(line, 5);
                assert!(message.contains("(1,2)"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
