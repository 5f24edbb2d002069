//! Table grids and their ASCII rendering, plus the coordinate-literal form
//! of field elements.
//!
//! Tables follow the layout used throughout: the header row carries the
//! column index `n`, each body row is labelled by `m`, defined cells print
//! their value and undefined cells print `*`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::coeffs;
use crate::decomp::CellTable;
use crate::fq::{FieldContext, FqElem};
use crate::lseries::Params;
use crate::qwords;

/// What a table's cells hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// Chain values `b_{j,m,n}` as digit strings.
    B,
    /// Interval offsets `c_{j,m,n}` as digit strings; `*` where undefined.
    C,
    /// Coefficient monomials `d_{j,m,n}`; total, so never `*`.
    D,
}

impl TableKind {
    pub fn parse(s: &str) -> Option<TableKind> {
        match s {
            "b" => Some(TableKind::B),
            "c" => Some(TableKind::C),
            "d" => Some(TableKind::D),
            _ => None,
        }
    }
}

/// A fully rendered table: `rows[r] = (m, cells)`, every row padded to
/// `ncols` with `"*"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub j: u32,
    pub kind: TableKind,
    pub ncols: usize,
    pub rows: Vec<(u32, Vec<String>)>,
}

/// Coordinate-literal form of a field element: coordinates in the
/// polynomial basis, constant first, comma-separated (`"2"`, `"1,1"`).
pub fn elem_string(ctx: &FieldContext, x: FqElem) -> String {
    let coords = ctx.coeffs(x);
    let mut out = String::new();
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{c}");
    }
    out
}

/// Parses the coordinate-literal form.
pub fn elem_from_string(ctx: &FieldContext, s: &str) -> Result<FqElem, crate::Error> {
    let mut coords = Vec::new();
    for part in s.split(',') {
        let v: u32 = part
            .trim()
            .parse()
            .map_err(|_| crate::Error::BadCoordinates)?;
        coords.push(v);
    }
    ctx.from_coeffs(&coords)
}

/// Builds the printable grid for a cell table.
pub fn table_grid(kind: TableKind, table: &CellTable, params: &Params) -> Grid {
    let q = params.q();
    let chain_cols = table.max_chain_len();
    let ncols = match kind {
        TableKind::B | TableKind::C => chain_cols + 1,
        TableKind::D => {
            // columns 1..=n0+1 where n0 = [1^j]_q is the last position that
            // can carry a nonzero monomial
            let n0 = qwords::repunit(q, table.j);
            let n0 = usize::try_from(u64::try_from(&n0).unwrap_or(u64::MAX)).unwrap_or(usize::MAX);
            n0.max(chain_cols) + 1
        }
    };
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let mut cells = Vec::with_capacity(ncols);
            for n in 1..=ncols {
                let cell = match kind {
                    TableKind::B => row
                        .dec
                        .chain()
                        .get(n - 1)
                        .map(|v| qwords::digit_string(v, q)),
                    TableKind::C => {
                        if n <= row.dec.len() {
                            row.dec.c_at(n).map(|c| qwords::digit_string(c, q))
                        } else {
                            None
                        }
                    }
                    TableKind::D => {
                        Some(coeffs::d_total(table.j, row.m, n, params).render(q))
                    }
                };
                cells.push(cell.unwrap_or_else(|| "*".to_string()));
            }
            (row.m, cells)
        })
        .collect();
    Grid {
        j: table.j,
        kind,
        ncols,
        rows,
    }
}

/// Fixed-layout ASCII rendering; byte-stable for a given grid.
pub fn grid_ascii(grid: &Grid) -> String {
    let ncols = grid.ncols;
    let mut widths = Vec::with_capacity(ncols + 1);
    let label_width = grid
        .rows
        .iter()
        .map(|(m, _)| m.to_string().len())
        .chain([3usize]) // "m\n"
        .max()
        .unwrap_or(3);
    widths.push(label_width);
    for col in 0..ncols {
        let w = grid
            .rows
            .iter()
            .map(|(_, cells)| cells[col].len())
            .chain([(col + 1).to_string().len()])
            .max()
            .unwrap_or(1);
        widths.push(w);
    }
    let mut out = String::new();
    let _ = write!(out, "{:>w$}", "m\\n", w = widths[0]);
    for col in 0..ncols {
        let _ = write!(out, " {:>w$}", col + 1, w = widths[col + 1]);
    }
    out.push('\n');
    let total: usize = widths.iter().sum::<usize>() + ncols;
    for _ in 0..total {
        out.push('-');
    }
    out.push('\n');
    for (m, cells) in &grid.rows {
        let _ = write!(out, "{:>w$}", m, w = widths[0]);
        for (col, cell) in cells.iter().enumerate() {
            let _ = write!(out, " {:>w$}", cell, w = widths[col + 1]);
        }
        out.push('\n');
    }
    out
}

/// CSV rendering: header `m,1,...,N`, one line per row.
pub fn grid_csv(grid: &Grid) -> String {
    let mut out = String::from("m");
    for col in 1..=grid.ncols {
        let _ = write!(out, ",{col}");
    }
    out.push('\n');
    for (m, cells) in &grid.rows {
        let _ = write!(out, "{m}");
        for cell in cells {
            let _ = write!(out, ",{cell}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp;
    use crate::fq::FieldContext;
    use alloc::vec;

    fn params_q3() -> Params {
        Params::new(FieldContext::new(3, 1).unwrap(), 2, FqElem::ZERO).unwrap()
    }

    #[test]
    fn elem_literals() {
        let f4 = FieldContext::new(2, 2).unwrap();
        let t_plus_1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(elem_string(&f4, t_plus_1), "1,1");
        assert_eq!(elem_from_string(&f4, "1,1").unwrap(), t_plus_1);
        assert_eq!(elem_from_string(&f4, "1").unwrap(), f4.one());
        assert!(elem_from_string(&f4, "2").is_err());
        let f3 = FieldContext::new(3, 1).unwrap();
        assert_eq!(elem_string(&f3, f3.from_prime_scalar(2)), "2");
    }

    #[test]
    fn b_grid_layout() {
        let p = params_q3();
        let table = decomp::b_table(2, &p, 4);
        let grid = table_grid(TableKind::B, &table, &p);
        assert_eq!(grid.ncols, 5);
        assert_eq!(
            grid.rows[0],
            (1, vec!["100".into(), "1".into(), "*".into(), "*".into(), "*".into()])
        );
        let ascii = grid_ascii(&grid);
        let again = grid_ascii(&grid);
        assert_eq!(ascii, again);
        assert!(ascii.contains("1100"));
    }

    #[test]
    fn d_grid_is_total() {
        let p = params_q3();
        let table = decomp::b_table(2, &p, 5);
        let grid = table_grid(TableKind::D, &table, &p);
        assert_eq!(grid.ncols, 5);
        for (_, cells) in &grid.rows {
            assert!(cells.iter().all(|c| c != "*"));
        }
        // row 1 holds 2(-a), 1, 0, 0, 0 (reduced exponent of the raw 5)
        assert_eq!(grid.rows[0].1, ["2(-a)", "1", "0", "0", "0"]);
    }

    #[test]
    fn csv_shape() {
        let p = params_q3();
        let table = decomp::b_table(2, &p, 2);
        let grid = table_grid(TableKind::B, &table, &p);
        let csv = grid_csv(&grid);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "m,1,2,3,4,5");
        assert_eq!(lines[2], "2,1100,101,2,0,*");
    }
}
