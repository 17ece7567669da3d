//! Plain-text body serialization.
//!
//! One record per body: a header line `dim <n>; kind <variant>` followed by
//! one row of whitespace-separated decimal floats per vertex, generator or
//! node value. Floats print in shortest round-trip form, so parsing
//! recovers them bit-exactly. Grid-sampled bodies store node coordinates
//! and the value per row; they are reloaded onto a Monte Carlo-style grid
//! carrying the original nodes.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::bodies::{PolygonBody, PolytopeBody3, SupportBody, Variant};
use crate::error::{Error, Result};
use crate::geom::SphereGrid;

/// Serialize a support body, polygon or polytope.
#[derive(Clone, Debug)]
pub enum BodyRecord {
    Support(SupportBody),
    Polygon(PolygonBody),
    Polytope3(PolytopeBody3),
}

pub fn to_text(record: &BodyRecord) -> Result<String> {
    let mut out = String::new();
    match record {
        BodyRecord::Support(body) => {
            match body.variant() {
                Variant::Ball { radius } => {
                    writeln!(out, "dim {}; kind ball", body.dim()).unwrap();
                    writeln!(out, "{radius}").unwrap();
                }
                Variant::Zonotope { generators } if generators.len() == 1 => {
                    writeln!(out, "dim {}; kind segment", body.dim()).unwrap();
                    writeln!(out, "{}", row(&generators[0])).unwrap();
                }
                Variant::Zonotope { generators } => {
                    writeln!(out, "dim {}; kind zonotope", body.dim()).unwrap();
                    for g in generators {
                        writeln!(out, "{}", row(g)).unwrap();
                    }
                }
                Variant::Polytope { vertices } => {
                    writeln!(out, "dim {}; kind polytope", body.dim()).unwrap();
                    for v in vertices {
                        writeln!(out, "{}", row(v)).unwrap();
                    }
                }
                Variant::GridSampled { grid, values } => {
                    writeln!(out, "dim {}; kind grid-sampled", body.dim()).unwrap();
                    for i in 0..grid.len() {
                        let mut cells: Vec<f64> = grid.node(i).to_vec();
                        cells.push(values[i]);
                        writeln!(out, "{}", row(&cells)).unwrap();
                    }
                }
                Variant::MinkowskiAverage { .. } | Variant::Shifted { .. } => {
                    return Err(Error::InvalidArgument(
                        "lazy bodies have no row form: sample onto a grid first".into(),
                    ));
                }
            }
        }
        BodyRecord::Polygon(poly) => {
            writeln!(out, "dim 2; kind polygon").unwrap();
            for v in poly.vertices() {
                writeln!(out, "{}", row(v)).unwrap();
            }
        }
        BodyRecord::Polytope3(body) => {
            writeln!(out, "dim 3; kind polytope3").unwrap();
            for v in body.vertices() {
                writeln!(out, "{}", row(v)).unwrap();
            }
        }
    }
    Ok(out)
}

pub fn from_text(text: &str) -> Result<BodyRecord> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty body record".into()))?;
    let (dim, kind) = parse_header(header)?;
    let rows: Vec<Vec<f64>> = lines.map(parse_row).collect::<Result<_>>()?;
    match kind.as_str() {
        "ball" => {
            let radius = *rows
                .first()
                .and_then(|r| r.first())
                .ok_or_else(|| Error::InvalidArgument("ball record needs a radius row".into()))?;
            Ok(BodyRecord::Support(SupportBody::ball(dim, radius)?))
        }
        "segment" => {
            let endpoint = rows
                .into_iter()
                .next()
                .ok_or_else(|| Error::InvalidArgument("segment record needs a row".into()))?;
            expect_width(&endpoint, dim)?;
            Ok(BodyRecord::Support(SupportBody::segment(endpoint)?))
        }
        "zonotope" => {
            for r in &rows {
                expect_width(r, dim)?;
            }
            Ok(BodyRecord::Support(SupportBody::zonotope(rows)?))
        }
        "polytope" => {
            for r in &rows {
                expect_width(r, dim)?;
            }
            Ok(BodyRecord::Support(SupportBody::polytope(rows)?))
        }
        "grid-sampled" => {
            let mut nodes = Vec::with_capacity(rows.len());
            let mut values = Vec::with_capacity(rows.len());
            for r in &rows {
                expect_width(r, dim + 1)?;
                nodes.push(r[..dim].to_vec());
                values.push(r[dim]);
            }
            let grid = SphereGrid::from_nodes(dim, nodes)?;
            Ok(BodyRecord::Support(SupportBody::from_grid_values(
                Arc::new(grid),
                values,
            )?))
        }
        "polygon" => {
            let vertices = rows
                .iter()
                .map(|r| {
                    expect_width(r, 2)?;
                    Ok([r[0], r[1]])
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(BodyRecord::Polygon(PolygonBody::new(vertices)?))
        }
        "polytope3" => {
            let points = rows
                .iter()
                .map(|r| {
                    expect_width(r, 3)?;
                    Ok([r[0], r[1], r[2]])
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(BodyRecord::Polytope3(PolytopeBody3::from_points(&points)?))
        }
        other => Err(Error::InvalidArgument(format!("unknown body kind `{other}`"))),
    }
}

/// Write a record atomically (temp file, rename on success).
pub fn write_body_text(path: &Path, record: &BodyRecord) -> Result<()> {
    let text = to_text(record)?;
    crate::experiments::write_atomic(path, text.as_bytes())
}

pub fn read_body_text(path: &Path) -> Result<BodyRecord> {
    let text = std::fs::read_to_string(path)?;
    from_text(&text)
}

fn row(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_header(line: &str) -> Result<(usize, String)> {
    let mut dim = None;
    let mut kind = None;
    for part in line.split(';') {
        let part = part.trim();
        if let Some(rest) = part.strip_prefix("dim ") {
            dim = rest.trim().parse::<usize>().ok();
        } else if let Some(rest) = part.strip_prefix("kind ") {
            kind = Some(rest.trim().to_string());
        }
    }
    match (dim, kind) {
        (Some(d), Some(k)) => Ok((d, k)),
        _ => Err(Error::InvalidArgument(format!("malformed body header `{line}`"))),
    }
}

fn parse_row(line: &str) -> Result<Vec<f64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad float `{tok}`")))
        })
        .collect()
}

fn expect_width(row: &[f64], want: usize) -> Result<()> {
    if row.len() != want {
        return Err(Error::DimensionMismatch { expected: want, got: row.len() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::RngStream;
    use proptest::prelude::*;

    #[test]
    fn polygon_roundtrip() {
        let mut rng = RngStream::new(3);
        let poly = PolygonBody::random_convex(&mut rng, 9, 1.4).unwrap();
        let text = to_text(&BodyRecord::Polygon(poly.clone())).unwrap();
        let BodyRecord::Polygon(back) = from_text(&text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(poly.vertices(), back.vertices());
    }

    #[test]
    fn grid_sampled_roundtrip() {
        let mut rng = RngStream::new(4);
        let grid = Arc::new(SphereGrid::monte_carlo(3, 64, &mut rng).unwrap());
        let values: Vec<f64> = (0..grid.len()).map(|i| 1.0 + 0.1 * grid.node(i)[0]).collect();
        let body = SupportBody::from_grid_values(grid, values.clone()).unwrap();
        let text = to_text(&BodyRecord::Support(body)).unwrap();
        let BodyRecord::Support(back) = from_text(&text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(back.kind(), "grid-sampled");
        let Variant::GridSampled { values: parsed, .. } = back.variant() else {
            panic!("wrong variant");
        };
        assert_eq!(parsed.as_ref(), &values);
    }

    #[test]
    fn lazy_bodies_are_rejected() {
        let body = SupportBody::ball(2, 1.0).unwrap().shifted(vec![0.1, 0.0]).unwrap();
        assert!(to_text(&BodyRecord::Support(body)).is_err());
    }

    #[test]
    fn unknown_kind_is_rejected() {
        assert!(from_text("dim 2; kind blob\n1 2\n").is_err());
    }

    proptest! {
        #[test]
        fn zonotope_roundtrip_is_exact(seed in 0u64..256) {
            let mut rng = RngStream::new(seed);
            let generators: Vec<Vec<f64>> = (0..4)
                .map(|_| (0..3).map(|_| rng.normal()).collect())
                .collect();
            let body = SupportBody::zonotope(generators.clone()).unwrap();
            let text = to_text(&BodyRecord::Support(body)).unwrap();
            let BodyRecord::Support(back) = from_text(&text).unwrap() else {
                panic!("wrong kind");
            };
            let Variant::Zonotope { generators: parsed } = back.variant() else {
                panic!("wrong variant");
            };
            prop_assert_eq!(&generators, parsed);
        }
    }
}
