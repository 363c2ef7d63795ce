//! JSON and CSV renderings of a polytope's face lattice.
//!
//! Every list is in canonical order and the writers are single-threaded over
//! already-ordered data, so output is byte-identical across runs.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::gosset::GossetPolytope;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected json or csv)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosspolytopeRecord {
    pub ruling: Vec<i64>,
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLattice {
    pub r: u8,
    pub vertices: Vec<Vec<i64>>,
    pub edges: Vec<[usize; 2]>,
    /// Keyed by simplex dimension `k` as a decimal string.
    pub simplexes: BTreeMap<String, Vec<Vec<usize>>>,
    pub crosspolytopes: Vec<CrosspolytopeRecord>,
}

impl FaceLattice {
    pub fn from_polytope(p: &GossetPolytope) -> Self {
        let simplexes = (0..p.rank() as usize)
            .map(|k| {
                let layer = p
                    .list_simplexes(k)
                    .expect("k < r")
                    .into_iter()
                    .map(|x| x.vertices().to_vec())
                    .collect();
                (k.to_string(), layer)
            })
            .collect();
        FaceLattice {
            r: p.rank(),
            vertices: p.vertices().iter().map(|d| d.coords().to_vec()).collect(),
            edges: p.edges().into_iter().map(|(i, j)| [i, j]).collect(),
            simplexes,
            crosspolytopes: p
                .crosspolytopes()
                .into_iter()
                .map(|c| CrosspolytopeRecord {
                    ruling: c.ruling().coords().to_vec(),
                    pairs: c.pairs().iter().map(|&(i, j)| [i, j]).collect(),
                })
                .collect(),
        }
    }
}

pub fn write_json(p: &GossetPolytope, out: impl Write) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    serde_json::to_writer(&mut out, &FaceLattice::from_polytope(p))?;
    out.write_all(b"\n")?;
    out.flush()
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// One face per row: `kind,dimension,vertices,center`, with the vertex
/// indices and centre coordinates space-separated.
pub fn write_csv(p: &GossetPolytope, out: impl Write) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    writeln!(out, "kind,dimension,vertices,center")?;
    for k in 0..p.rank() as usize {
        for x in p.list_simplexes(k).expect("k < r") {
            let center = p.simplex_center(&x);
            writeln!(
                out,
                "simplex,{k},{},{}",
                join(x.vertices()),
                join(center.coords())
            )?;
        }
    }
    for c in p.crosspolytopes() {
        writeln!(
            out,
            "crosspolytope,{},{},{}",
            c.dimension(),
            join(c.vertices()),
            join(c.ruling().coords())
        )?;
    }
    out.flush()
}

pub fn write(p: &GossetPolytope, format: Format, out: impl Write) -> io::Result<()> {
    match format {
        Format::Json => write_json(p, out),
        Format::Csv => write_csv(p, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::Surface;

    #[test]
    fn prism_export() {
        let p = GossetPolytope::build(&Surface::new(3).unwrap());
        let lattice = FaceLattice::from_polytope(&p);
        assert_eq!(lattice.vertices.len(), 6);
        assert_eq!(lattice.edges.len(), 9);
        assert_eq!(lattice.simplexes["2"].len(), 2);
        assert_eq!(lattice.crosspolytopes.len(), 3);
        assert!(lattice.crosspolytopes.iter().all(|c| c.pairs.len() == 2));

        let mut buf = Vec::new();
        write_json(&p, &mut buf).unwrap();
        let back: FaceLattice = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, lattice);

        let mut csv = Vec::new();
        write_csv(&p, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        // header + 6 + 9 + 2 simplexes + 3 squares
        assert_eq!(text.lines().count(), 1 + 6 + 9 + 2 + 3);
        assert_eq!(
            text.lines()
                .filter(|l| l.starts_with("crosspolytope,2,"))
                .count(),
            3
        );
    }

    #[test]
    fn format_parse() {
        assert_eq!("json".parse(), Ok(Format::Json));
        assert_eq!("csv".parse(), Ok(Format::Csv));
        assert!("xml".parse::<Format>().is_err());
    }
}
