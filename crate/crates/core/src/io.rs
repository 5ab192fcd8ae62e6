//! JSON formats for tensions, polygons, profiles, and small file helpers.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::anisotropy::SurfaceTension;
use crate::error::{Result, WulffError};
use crate::polygeom::Polygon;
use crate::{Mat2, Vec2};

/// Serialize a `Vec2` as `[x, y]`.
pub mod vec2_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Vec2;

    pub fn serialize<S: Serializer>(v: &Vec2, s: S) -> Result<S::Ok, S::Error> {
        [v.x, v.y].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec2, D::Error> {
        let [x, y] = <[f64; 2]>::deserialize(d)?;
        Ok(Vec2::new(x, y))
    }
}

/// `Vec<Vec2>` as a list of pairs.
pub mod vec2_list_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Vec2;

    pub fn serialize<S: Serializer>(v: &[Vec2], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|p| [p.x, p.y])
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec2>, D::Error> {
        let raw = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(raw.into_iter().map(|[x, y]| Vec2::new(x, y)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TensionSpec {
    Crystalline { points: Vec<[f64; 2]> },
    Lp { p: f64 },
    Quadratic { a: [[f64; 2]; 2] },
    Euclidean,
}

impl TensionSpec {
    pub fn build(&self) -> Result<SurfaceTension> {
        match self {
            TensionSpec::Crystalline { points } => SurfaceTension::crystalline_from(points),
            TensionSpec::Lp { p } => SurfaceTension::lp(*p),
            TensionSpec::Quadratic { a } => {
                SurfaceTension::quadratic(Mat2::new(a[0][0], a[0][1], a[1][0], a[1][1]))
            }
            TensionSpec::Euclidean => Ok(SurfaceTension::Euclidean),
        }
    }
}

impl From<&SurfaceTension> for TensionSpec {
    fn from(t: &SurfaceTension) -> Self {
        match t {
            SurfaceTension::Crystalline(c) => TensionSpec::Crystalline {
                points: c.points().iter().map(|p| [p.x, p.y]).collect(),
            },
            SurfaceTension::Lp { p, .. } => TensionSpec::Lp { p: *p },
            SurfaceTension::Quadratic { a, .. } => TensionSpec::Quadratic {
                a: [[a[(0, 0)], a[(0, 1)]], [a[(1, 0)], a[(1, 1)]]],
            },
            SurfaceTension::Euclidean => TensionSpec::Euclidean,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonSpec {
    pub vertices: Vec<[f64; 2]>,
}

impl PolygonSpec {
    /// Validate and orient counterclockwise, warning when the input was
    /// clockwise.
    pub fn build(&self) -> Result<Polygon> {
        let pts = self
            .vertices
            .iter()
            .map(|p| Vec2::new(p[0], p[1]))
            .collect();
        let (poly, reversed) = Polygon::new_oriented(pts)?;
        if reversed {
            log::warn!("polygon given clockwise; vertex order reversed");
        }
        Ok(poly)
    }
}

impl From<&Polygon> for PolygonSpec {
    fn from(p: &Polygon) -> Self {
        PolygonSpec {
            vertices: p.to_points(),
        }
    }
}

/// Sampled perturbation profile on a boundary parameterization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSpec {
    pub n: usize,
    pub u: Vec<f64>,
}

impl ProfileSpec {
    pub fn validate(&self) -> Result<()> {
        if self.u.len() != self.n {
            return Err(WulffError::InvalidConfig(format!(
                "profile declares n = {} but has {} values",
                self.n,
                self.u.len()
            )));
        }
        if self.u.iter().any(|v| !v.is_finite()) {
            return Err(WulffError::InvalidConfig(
                "profile values must be finite".into(),
            ));
        }
        Ok(())
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| WulffError::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| WulffError::Json {
        context: format!("parsing {}", path.display()),
        source,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|source| WulffError::Json {
        context: format!("serializing {}", path.display()),
        source,
    })?;
    write_text(path, &(text + "\n"))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| WulffError::Io {
        context: format!("writing {}", path.display()),
        source,
    })
}

pub fn read_tension(path: &Path) -> Result<SurfaceTension> {
    read_json::<TensionSpec>(path)?.build()
}

pub fn read_polygon(path: &Path) -> Result<Polygon> {
    read_json::<PolygonSpec>(path)?.build()
}

/// Minimal CSV table with `{:.16e}` formatting (17 significant digits).
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn render(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:.16e}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tension_json_round_trip() {
        let cases = [
            r#"{"kind":"crystalline","points":[[1,0],[0,1],[-1,0],[0,-1]]}"#,
            r#"{"kind":"lp","p":4.0}"#,
            r#"{"kind":"quadratic","a":[[4,0],[0,1]]}"#,
            r#"{"kind":"euclidean"}"#,
        ];
        for c in cases {
            let spec: TensionSpec = serde_json::from_str(c).unwrap();
            let t = spec.build().unwrap();
            assert_eq!(TensionSpec::from(&t), spec);
        }
    }

    #[test]
    fn unknown_kind_fails() {
        assert!(serde_json::from_str::<TensionSpec>(r#"{"kind":"banana"}"#).is_err());
    }

    #[test]
    fn clockwise_polygon_is_reversed() {
        let spec: PolygonSpec =
            serde_json::from_str(r#"{"vertices":[[0,0],[0,1],[1,1],[1,0]]}"#).unwrap();
        let p = spec.build().unwrap();
        assert!(p.area() > 0.0);
        assert_eq!(p.vertices()[0], Vec2::new(1.0, 0.0));
    }

    #[test]
    fn csv_uses_seventeen_digits() {
        let mut t = CsvTable::new(&["a", "b"]);
        t.push(vec![0.1, 1.0 / 3.0]);
        let s = t.render();
        assert_eq!(s.lines().next(), Some("a,b"));
        let cells: Vec<&str> = s.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(cells[0], "1.0000000000000001e-1");
        assert_eq!(cells[1].parse::<f64>().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn profile_validation() {
        assert!(ProfileSpec { n: 2, u: vec![0.0] }.validate().is_err());
        assert!(ProfileSpec {
            n: 1,
            u: vec![f64::NAN]
        }
        .validate()
        .is_err());
        assert!(ProfileSpec { n: 1, u: vec![0.5] }.validate().is_ok());
    }
}
