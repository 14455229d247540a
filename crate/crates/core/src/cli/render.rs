//! Plain-text layouts shared by the subcommands.

use crate::semilattice::{standard_indices, standard_semilattice, validate, Semilattice};
use crate::rootsystem::{cartan_matrix, CartanType};
use crate::weylgroup::{central_data, pairs};

/// Left-aligned columns separated by two spaces, no trailing whitespace.
pub fn columns(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < row.len() {
                line.push_str(&" ".repeat(widths[c] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone)]
pub struct SemilatticeRow {
    pub semilattice: Semilattice,
    pub nrs: Vec<u8>,
    pub condition000: bool,
    pub missing_singletons: Vec<usize>,
}

impl SemilatticeRow {
    pub fn new(s: Semilattice) -> SemilatticeRow {
        let a1 = cartan_matrix(CartanType::A, 1).expect("A1");
        let c = central_data(&s, &a1);
        let report = validate(s.support());
        SemilatticeRow {
            nrs: c.nrs().to_vec(),
            condition000: c.condition000(),
            missing_singletons: report.missing_singletons,
            semilattice: s,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nu = self.semilattice.nullity();
        let table: Vec<Vec<u8>> = (1..nu)
            .map(|r| (r + 1..=nu).map(|s| self.nrs[crate::weylgroup::pair_index(nu, r, s)]).collect())
            .collect();
        serde_json::json!({
            "nullity": nu,
            "index": self.semilattice.index(),
            "class": self.semilattice.support().to_string(),
            "nrs": table,
            "condition000": self.condition000,
            "missing_singletons": self.missing_singletons,
        })
    }
}

/// Rows of the standard table for one nullity, or for all of `0..=3`.
pub fn standard_rows(nullity: Option<usize>) -> Vec<SemilatticeRow> {
    let nus: Vec<usize> = match nullity {
        Some(nu) => vec![nu],
        None => (0..=3).collect(),
    };
    nus.into_iter()
        .flat_map(|nu| standard_indices(nu).into_iter().map(move |m| (nu, m)))
        .map(|(nu, m)| SemilatticeRow::new(standard_semilattice(nu, m).expect("table row")))
        .collect()
}

/// The semilattice listing. `pair_nullity` fixes the `n(r,s)` columns; pairs
/// beyond a row's own nullity print `-`. The nullity is shown only on the
/// first row of each group.
pub fn semilattice_table(rows: &[SemilatticeRow], pair_nullity: usize) -> String {
    let ps = pairs(pair_nullity);
    let mut head = vec!["nu".to_string(), "index".to_string(), "supp(S)".to_string()];
    head.extend(ps.iter().map(|(r, s)| format!("n({r},{s})")));
    head.push("condition000".to_string());
    let mut cells = vec![head];
    let mut last_nu = None;
    for row in rows {
        let nu = row.semilattice.nullity();
        let mut line = vec![
            if last_nu == Some(nu) { String::new() } else { nu.to_string() },
            row.semilattice.index().to_string(),
            row.semilattice.support().to_string(),
        ];
        last_nu = Some(nu);
        for &(r, s) in &ps {
            line.push(if s <= nu {
                row.nrs[crate::weylgroup::pair_index(nu, r, s)].to_string()
            } else {
                "-".to_string()
            });
        }
        line.push(row.condition000.to_string());
        cells.push(line);
    }
    let mut out = columns(&cells);
    for row in rows.iter().filter(|r| !r.missing_singletons.is_empty()) {
        let missing: Vec<String> = row.missing_singletons.iter().map(|r| format!("{{{r}}}")).collect();
        out.push_str(&format!(
            "note: class {} lacks the singletons {}\n",
            row.semilattice.support(),
            missing.join(",")
        ));
    }
    out
}

/// `2*a1 - s2` style rendering of `α`/`σ` coordinates.
pub fn combination(coords: &[i64], rank: usize) -> String {
    let mut out = String::new();
    for (k, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let name = if k < rank { format!("a{}", k + 1) } else { format!("s{}", k - rank + 1) };
        let mag = c.unsigned_abs();
        let term = if mag == 1 { name } else { format!("{mag}*{name}") };
        if out.is_empty() {
            out = if c < 0 { format!("-{term}") } else { term };
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}
