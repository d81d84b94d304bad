//! Deterministic JSON and aligned-column CSV serialization of homology
//! reports, basic-forms tables, verification reports, and tensor chains.
//! Output bytes depend only on the input values, never on iteration order.

use serde::Serialize;

use crate::hochschild::TensorChain;
use crate::koszul::HomologyReport;
use crate::relforms::{BasicFormsTable, CheckReport};
use crate::text::scalar_string;

#[derive(Serialize)]
struct TableEntry {
    k: usize,
    n: usize,
    dim: usize,
}

#[derive(Serialize)]
struct HomologyJson<'a> {
    stratum: &'a str,
    table: Vec<TableEntry>,
}

pub fn homology_to_json(report: &HomologyReport) -> String {
    let doc = HomologyJson {
        stratum: &report.stratum,
        table: report
            .table
            .iter()
            .map(|(&(k, n), &dim)| TableEntry { k, n, dim })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Render rows of string cells as comma-separated columns padded to equal
/// width.
fn aligned_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let fmt_row = |cells: &[String]| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i + 1 == cells.len() {
                    format!("{:>w$}", c, w = widths[i])
                } else {
                    format!("{:>w$}, ", c, w = widths[i])
                }
            })
            .collect::<String>()
    };
    let mut out = String::new();
    out.push_str(&fmt_row(
        &header.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
    ));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row(row));
        out.push('\n');
    }
    out
}

pub fn homology_to_csv(report: &HomologyReport) -> String {
    let rows: Vec<Vec<String>> = report
        .table
        .iter()
        .map(|(&(k, n), &dim)| {
            vec![
                report.stratum.clone(),
                k.to_string(),
                n.to_string(),
                dim.to_string(),
            ]
        })
        .collect();
    aligned_csv(&["stratum", "k", "n", "dim"], &rows)
}

#[derive(Serialize)]
struct BasicRowJson<'a> {
    stratum: &'a str,
    k: usize,
    n: usize,
    dim_relative: usize,
    dim_horizontal: usize,
    dim_basic: usize,
}

pub fn basic_table_to_json(table: &BasicFormsTable) -> String {
    let rows: Vec<BasicRowJson> = table
        .rows
        .iter()
        .map(|r| BasicRowJson {
            stratum: &r.stratum,
            k: r.k,
            n: r.n,
            dim_relative: r.dim_relative,
            dim_horizontal: r.dim_horizontal,
            dim_basic: r.dim_basic,
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
    s.push('\n');
    s
}

pub fn basic_table_to_csv(table: &BasicFormsTable) -> String {
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| {
            vec![
                r.stratum.clone(),
                r.k.to_string(),
                r.n.to_string(),
                r.dim_relative.to_string(),
                r.dim_horizontal.to_string(),
                r.dim_basic.to_string(),
            ]
        })
        .collect();
    aligned_csv(
        &[
            "stratum",
            "k",
            "n",
            "dim_relative",
            "dim_horizontal",
            "dim_basic",
        ],
        &rows,
    )
}

#[derive(Serialize)]
struct CheckRowJson<'a> {
    label: &'a str,
    degree: usize,
    lhs: usize,
    rhs: usize,
    pass: bool,
}

pub fn check_report_to_json(report: &CheckReport) -> String {
    let rows: Vec<CheckRowJson> = report
        .rows
        .iter()
        .map(|r| CheckRowJson {
            label: &r.label,
            degree: r.degree,
            lhs: r.lhs,
            rhs: r.rhs,
            pass: r.lhs == r.rhs,
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
    s.push('\n');
    s
}

pub fn check_report_to_csv(report: &CheckReport) -> String {
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.label.clone(),
                r.degree.to_string(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                (r.lhs == r.rhs).to_string(),
            ]
        })
        .collect();
    aligned_csv(&["label", "degree", "lhs", "rhs", "pass"], &rows)
}

#[derive(Serialize)]
struct ChainTermJson {
    coeff: String,
    monomials: Vec<String>,
}

fn monomial_string(space: crate::forms::CoordinateSpace, exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| format!("{}^{}", space.var_name(v), e))
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

pub fn chain_to_json(chain: &TensorChain) -> String {
    let rows: Vec<ChainTermJson> = chain
        .terms
        .iter()
        .map(|(tuple, coeff)| ChainTermJson {
            coeff: scalar_string(coeff),
            monomials: tuple
                .iter()
                .map(|e| monomial_string(chain.space, e))
                .collect(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::CoordinateSpace;
    use crate::scalar::Scalar;
    use std::collections::BTreeMap;

    #[test]
    fn homology_serialization_is_deterministic() {
        let mut table = BTreeMap::new();
        table.insert((0, 0), 1);
        table.insert((1, 2), 4);
        let r = HomologyReport {
            stratum: "test".into(),
            table,
        };
        let a = homology_to_json(&r);
        let b = homology_to_json(&r);
        assert_eq!(a, b);
        assert!(a.contains("\"stratum\": \"test\""));
        let csv = homology_to_csv(&r);
        assert!(csv.starts_with("stratum,"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn chain_serialization() {
        let r2 = CoordinateSpace::Real(2);
        let c = crate::hochschild::TensorChain::from_tuple(
            r2,
            vec![vec![1, 0], vec![0, 2]],
            Scalar::ratio(1, 2),
        );
        let s = chain_to_json(&c);
        assert!(s.contains("\"coeff\": \"1/2\""));
        assert!(s.contains("\"x1^1\""));
        assert!(s.contains("\"x2^2\""));
    }
}
