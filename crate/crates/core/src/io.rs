//! Polygon / point-set JSON files:
//! `{"mode": "polygon" | "set", "vertices": [["x", "y"], ...]}` with
//! coordinates as decimal strings.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{LatticePoint, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonFile {
    #[serde(default)]
    pub mode: Mode,
    pub vertices: Vec<LatticePoint>,
}

impl PolygonFile {
    pub fn polygon(vertices: impl Into<Vec<LatticePoint>>) -> Self {
        Self {
            mode: Mode::Polygon,
            vertices: vertices.into(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polygon file serializes")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_shape() {
        let f = PolygonFile::parse(
            r#"{"mode": "set", "vertices": [["0","0"], ["3","0"], ["-10","24"]]}"#,
        )
        .unwrap();
        assert_eq!(f.mode, Mode::Set);
        assert_eq!(f.vertices[2], LatticePoint::new(-10, 24));
        let big = PolygonFile::parse(r#"{"vertices": [["123456789012345678901234567890","1"]]}"#)
            .unwrap();
        assert_eq!(big.mode, Mode::Polygon);
        assert_eq!(
            big.vertices[0].x.to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "{",
            r#"{"mode": "polygon", "vertices": [[0, 0]]}"#,
            r#"{"mode": "polygon", "vertices": [["1.5", "0"]]}"#,
            r#"{"mode": "circle", "vertices": []}"#,
            r#"{"mode": "set", "vertices": [["1"]]}"#,
        ] {
            assert!(
                matches!(PolygonFile::parse(bad), Err(Error::Format(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn writes_strings() {
        let f = PolygonFile::polygon(vec![LatticePoint::new(0, 0), LatticePoint::new(3, -4)]);
        let v: serde_json::Value = serde_json::from_str(&f.to_json()).unwrap();
        assert_eq!(v["vertices"][1][1], "-4");
        assert_eq!(v["mode"], "polygon");
        assert_eq!(PolygonFile::parse(&f.to_json()).unwrap(), f);
    }
}
