use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Point2, Tolerance};

/// On-disk polygon document: `{"vertices": [[x, y], ...]}` plus optional
/// free-form metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonDoc {
    pub vertices: Vec<Point2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl PolygonDoc {
    pub fn from_polygon(p: &ConvexPolygon, meta: Option<serde_json::Value>) -> Self {
        PolygonDoc {
            vertices: p.vertices().to_vec(),
            meta,
        }
    }
}

/// Parses and canonicalizes a polygon document.
pub fn read_polygon_json(text: &str, tol: Tolerance) -> Result<ConvexPolygon> {
    let doc: PolygonDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    ConvexPolygon::canonicalize(&doc.vertices, tol)
}

pub fn write_polygon_json(p: &ConvexPolygon, meta: Option<serde_json::Value>) -> String {
    serde_json::to_string_pretty(&PolygonDoc::from_polygon(p, meta)).expect("polygon serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reader_canonicalizes() {
        let text = r#"{"vertices": [[0,0],[0,1],[1,1],[1,0],[0.5,0]]}"#;
        let p = read_polygon_json(text, Tolerance::default()).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.vertices()[1], Point2::new(1.0, 0.0));
        let back = read_polygon_json(&write_polygon_json(&p, None), Tolerance::default()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn reader_reports_bad_json() {
        assert!(matches!(
            read_polygon_json("{\"verts\": []}", Tolerance::default()),
            Err(Error::Json(_))
        ));
    }
}
