//! Polygon documents on disk: a JSON object naming the model its
//! vertices live in, the vertex list itself, and whatever metadata the
//! producer cares to attach. Fields this tool does not know about are
//! carried through reads and writes untouched.

use anyhow::{bail, Context};
use hypergon::{HPoint, HPolygon, Tolerances};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonDocument {
    pub model: String,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Value>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl PolygonDocument {
    pub fn from_poincare_vertices(vertices: Vec<[f64; 2]>, metadata: Option<Value>) -> Self {
        PolygonDocument {
            model: "poincare".to_string(),
            vertices: vertices.into_iter().map(|v| v.to_vec()).collect(),
            metadata,
            extra: Map::new(),
        }
    }

    /// Structural screening that must hold before geometry is even
    /// attempted; failures here are usage errors, not checked results.
    pub fn expected_arity(&self) -> anyhow::Result<usize> {
        match self.model.as_str() {
            "poincare" => Ok(2),
            "hyperboloid" => Ok(3),
            other => bail!("unknown model {other:?} (expected \"poincare\" or \"hyperboloid\")"),
        }
    }

    /// Builds the polygon, stripping one duplicated closing vertex if
    /// the document repeats its first point at the end.
    pub fn to_polygon(&self, tol: Tolerances) -> anyhow::Result<Result<HPolygon, hypergon::Error>> {
        let arity = self.expected_arity()?;
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != arity {
                bail!(
                    "vertex {i} has {} coordinates, model {:?} needs {arity}",
                    v.len(),
                    self.model
                );
            }
        }
        let mut rows = self.vertices.clone();
        if rows.len() > 3 && rows.first() == rows.last() {
            rows.pop();
        }
        let built = if arity == 2 {
            let pts: Vec<[f64; 2]> = rows.iter().map(|v| [v[0], v[1]]).collect();
            HPolygon::from_poincare(&pts, tol)
        } else {
            let mut lifted = Vec::with_capacity(rows.len());
            let mut err = None;
            for v in &rows {
                match HPoint::new([v[0], v[1], v[2]], &tol) {
                    Ok(p) => lifted.push(p),
                    Err(e) => {
                        err = Some(e);
                        break;
                    }
                }
            }
            match err {
                Some(e) => Err(e),
                None => HPolygon::new(lifted, tol),
            }
        };
        Ok(built)
    }
}

pub fn read_document(path: &std::path::Path) -> anyhow::Result<PolygonDocument> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let doc: PolygonDocument = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a polygon document", path.display()))?;
    if doc.vertices.is_empty() {
        bail!("{} has an empty vertex list", path.display());
    }
    Ok(doc)
}

pub fn load_tolerances(path: Option<&std::path::Path>) -> anyhow::Result<Tolerances> {
    match path {
        None => Ok(Tolerances::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot read {}", p.display()))?;
            let tol: Tolerances = serde_json::from_str(&text)
                .with_context(|| format!("{} is not a tolerance config", p.display()))?;
            Ok(tol)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUAD: &str = r#"{
        "model": "poincare",
        "vertices": [[0.32, 0.01], [0.02, 0.28], [-0.31, -0.03], [-0.01, -0.36]],
        "metadata": {"label": "fixture"},
        "provenance": {"tool": "elsewhere"},
        "revision": 7
    }"#;

    #[test]
    fn unknown_fields_round_trip() {
        let doc: PolygonDocument = serde_json::from_str(QUAD).unwrap();
        assert_eq!(doc.extra.get("revision"), Some(&serde_json::json!(7)));
        let text = serde_json::to_string(&doc).unwrap();
        let back: PolygonDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.extra.get("provenance"), doc.extra.get("provenance"));
        assert_eq!(back.metadata, doc.metadata);
        assert_eq!(back.vertices, doc.vertices);
    }

    #[test]
    fn duplicated_closing_vertex_is_stripped() {
        let mut doc: PolygonDocument = serde_json::from_str(QUAD).unwrap();
        let first = doc.vertices[0].clone();
        doc.vertices.push(first);
        let p = doc.to_polygon(Tolerances::default()).unwrap().unwrap();
        assert_eq!(p.n(), 4);
    }

    #[test]
    fn hyperboloid_documents_build() {
        let disk: PolygonDocument = serde_json::from_str(QUAD).unwrap();
        let p = disk.to_polygon(Tolerances::default()).unwrap().unwrap();
        let lifted: Vec<Vec<f64>> = p.verts().iter().map(|v| v.coords().to_vec()).collect();
        let doc = PolygonDocument {
            model: "hyperboloid".to_string(),
            vertices: lifted,
            metadata: None,
            extra: Map::new(),
        };
        let q = doc.to_polygon(Tolerances::default()).unwrap().unwrap();
        assert_eq!(q.n(), 4);
        for (a, b) in p.verts().iter().zip(q.verts()) {
            assert!(hypergon::geom::separation(a.coords(), b.coords()) < 1e-12);
        }
    }

    #[test]
    fn wrong_arity_is_a_structural_error() {
        let doc = PolygonDocument {
            model: "poincare".to_string(),
            vertices: vec![vec![0.1, 0.2, 0.3]],
            metadata: None,
            extra: Map::new(),
        };
        assert!(doc.to_polygon(Tolerances::default()).is_err());
        let doc = PolygonDocument {
            model: "klein".to_string(),
            vertices: vec![vec![0.1, 0.2]],
            metadata: None,
            extra: Map::new(),
        };
        assert!(doc.expected_arity().is_err());
    }

    #[test]
    fn off_model_coordinates_are_checked_failures_not_structural() {
        let doc = PolygonDocument {
            model: "poincare".to_string(),
            vertices: vec![vec![1.5, 0.0], vec![0.0, 0.2], vec![0.2, 0.0]],
            metadata: None,
            extra: Map::new(),
        };
        let built = doc.to_polygon(Tolerances::default()).unwrap();
        assert!(built.is_err());
    }
}
