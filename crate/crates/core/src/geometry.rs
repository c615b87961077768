//! Points and lower orthants in three dimensions.
//!
//! Row vertices become points and column vertices become open orthants
//! `(-inf, x) × (-inf, y) × (-inf, z)`. Axis `k` is the point/ray
//! representation of the `k`-th chain factor, so a point lies in an orthant
//! exactly when the pair is an edge of all three factors.

use std::io;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::chain::threshold_representation;
use crate::decompose::{DecomposeError, TripleDecomposition};
use crate::matrix::BinaryMatrix;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("decomposition does not certify against the matrix: {0}")]
    CertificationFailure(#[from] DecomposeError),
    #[error("model has {points}x{corners} vertices, matrix is {rows}x{cols}")]
    DimensionMismatch {
        points: usize,
        corners: usize,
        rows: usize,
        cols: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthantModel {
    pub points: Vec<[i64; 3]>,
    pub corners: Vec<[i64; 3]>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl OrthantModel {
    /// Strict containment of point `u` in the orthant of corner `v`.
    pub fn contains(&self, u: usize, v: usize) -> bool {
        let p = self.points[u];
        let c = self.corners[v];
        (0..3).all(|k| p[k] < c[k])
    }

    pub fn membership(&self) -> BinaryMatrix {
        BinaryMatrix::from_fn(self.points.len(), self.corners.len(), |u, v| self.contains(u, v))
    }

    /// True when no point coordinate equals a corner coordinate on the same
    /// axis.
    pub fn has_no_ties(&self) -> bool {
        self.points
            .iter()
            .all(|p| self.corners.iter().all(|c| (0..3).all(|k| p[k] != c[k])))
    }

    /// One CSV record per point and per corner: `side,label,x,y,z`.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["side", "label", "x", "y", "z"])?;
        let sides = [
            ("point", &self.row_labels, &self.points),
            ("corner", &self.col_labels, &self.corners),
        ];
        for (side, labels, coords) in sides {
            for (label, c) in labels.iter().zip(coords.iter()) {
                w.write_record([
                    side.to_string(),
                    label.clone(),
                    c[0].to_string(),
                    c[1].to_string(),
                    c[2].to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

struct LabeledCoords<'a>(&'a [String], &'a [[i64; 3]]);

impl Serialize for LabeledCoords<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (label, c) in self.0.iter().zip(self.1) {
            map.serialize_entry(label, c)?;
        }
        map.end()
    }
}

impl Serialize for OrthantModel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("points", &LabeledCoords(&self.row_labels, &self.points))?;
        map.serialize_entry("corners", &LabeledCoords(&self.col_labels, &self.corners))?;
        map.end()
    }
}

/// Builds the orthant model of `a` from a decomposition certified against it.
pub fn orthant_model(dec: &TripleDecomposition, a: &BinaryMatrix) -> Result<OrthantModel, GeometryError> {
    dec.certify(a)?;
    let axes = [&dec.a1, &dec.a2, &dec.a3].map(|f| {
        threshold_representation(f).expect("certified factors are chain graphs")
    });
    let points = (0..a.rows())
        .map(|u| [0, 1, 2].map(|k| axes[k].row_values[u]))
        .collect();
    let corners = (0..a.cols())
        .map(|v| [0, 1, 2].map(|k| axes[k].col_thresholds[v]))
        .collect();
    Ok(OrthantModel {
        points,
        corners,
        row_labels: a.row_labels().to_vec(),
        col_labels: a.col_labels().to_vec(),
    })
}

/// True iff the model's strict-membership matrix equals `a`.
pub fn verify_model(model: &OrthantModel, a: &BinaryMatrix) -> Result<bool, GeometryError> {
    if model.points.len() != a.rows() || model.corners.len() != a.cols() {
        return Err(GeometryError::DimensionMismatch {
            points: model.points.len(),
            corners: model.corners.len(),
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(model.membership().same_entries(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;

    fn m(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::parse(&rows.join("\n")).unwrap()
    }

    fn model_of(a: &BinaryMatrix) -> OrthantModel {
        orthant_model(&decompose(a).unwrap(), a).unwrap()
    }

    #[test]
    fn complete_graph_points_inside_everything() {
        let a = BinaryMatrix::ones(2, 2);
        let model = model_of(&a);
        assert!((0..2).all(|u| (0..2).all(|v| model.contains(u, v))));
        assert!(verify_model(&model, &a).unwrap());
    }

    #[test]
    fn c6_model_reproduces_matrix() {
        let a = m(&["011", "101", "110"]);
        let model = model_of(&a);
        assert!(verify_model(&model, &a).unwrap());
        assert!(model.has_no_ties());
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(model.contains(u, v), a.get(u, v), "({u},{v})");
            }
        }
    }

    #[test]
    fn empty_graph_point_outside() {
        let a = BinaryMatrix::zeros(1, 1);
        let model = model_of(&a);
        assert!(!model.contains(0, 0));
        assert!(verify_model(&model, &a).unwrap());
    }

    #[test]
    fn perturbed_corner_fails_verification() {
        let a = m(&["011", "101", "110"]);
        let mut model = model_of(&a);
        // u1 is adjacent to v2; pushing v2's corner below u1 on the x axis
        // removes that membership.
        model.corners[1][0] = model.points[0][0] - 1;
        assert!(!verify_model(&model, &a).unwrap());
    }

    #[test]
    fn hand_built_empty_model() {
        let model = OrthantModel {
            points: vec![[5, 5, 5]; 2],
            corners: vec![[1, 1, 1]; 3],
            row_labels: vec!["u1".into(), "u2".into()],
            col_labels: vec!["v1".into(), "v2".into(), "v3".into()],
        };
        assert!(verify_model(&model, &BinaryMatrix::zeros(2, 3)).unwrap());
        assert!(matches!(
            verify_model(&model, &BinaryMatrix::zeros(3, 3)),
            Err(GeometryError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_uncertified_decomposition() {
        let a = m(&["011", "101", "110"]);
        let dec = decompose(&a).unwrap();
        let other = m(&["111", "101", "110"]);
        assert!(matches!(
            orthant_model(&dec, &other),
            Err(GeometryError::CertificationFailure(_))
        ));
    }

    #[test]
    fn json_and_csv() {
        let model = model_of(&m(&["11", "01"]));
        let v = serde_json::to_value(&model).unwrap();
        assert_eq!(v["points"].as_object().unwrap().keys().collect::<Vec<_>>(), ["u1", "u2"]);
        assert_eq!(v["corners"]["v2"].as_array().unwrap().len(), 3);

        let mut buf = Vec::new();
        model.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "side,label,x,y,z");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("point,u1,"));
        assert!(lines[3].starts_with("corner,v1,"));
    }
}
