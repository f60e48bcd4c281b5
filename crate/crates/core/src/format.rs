//! JSON file formats: matrix sets and construction descriptions.

use serde::Deserialize;

use crate::curve::{
    genus0_udmg, goppa_udmg, BaseBasis, CurvePoint, DivisorSpec, FunctionField, GoppaConstruction, WeierstrassCurve,
};
use crate::error::{Error, Result};
use crate::galois::{make_field, prime_power, Elem, Field, FieldSpec};
use crate::linalg::FqMatrix;
use crate::udmg::Udmg;

/// A UDMG on disk. Matrices are row-major lists of element reps.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSetFile {
    pub p: u32,
    pub m: u32,
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
    #[serde(rename = "K")]
    pub k: usize,
    pub g: usize,
    pub matrices: Vec<Vec<Vec<u32>>>,
}

impl MatrixSetFile {
    pub fn parse(text: &str) -> Result<MatrixSetFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_udmg(u: &Udmg) -> MatrixSetFile {
        let spec = u.field().spec();
        MatrixSetFile {
            p: spec.p,
            m: spec.m,
            modulus: spec.modulus.clone(),
            k: u.k(),
            g: u.genus(),
            matrices: u.matrices().iter().map(FqMatrix::row_vecs).collect(),
        }
    }

    pub fn field(&self) -> Result<Field> {
        if self.m == 1 && self.modulus.is_some() {
            return Err(Error::Parse("\"modulus\" must be omitted when m = 1".into()));
        }
        Field::from_spec(&FieldSpec { p: self.p, m: self.m, modulus: self.modulus.clone(), q: 0 })
    }

    pub fn to_udmg(&self) -> Result<Udmg> {
        let f = self.field()?;
        let matrices = self
            .matrices
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                if rows.len() != self.k {
                    return Err(Error::DimensionMismatch(format!(
                        "matrix {} has {} rows, expected K = {}",
                        i + 1,
                        rows.len(),
                        self.k
                    )));
                }
                let cols = rows.first().map_or(0, Vec::len);
                FqMatrix::new(&f, self.k, cols, rows.concat()).and_then(|m| {
                    if rows.iter().any(|r| r.len() != cols) {
                        Err(Error::DimensionMismatch(format!("matrix {} has ragged rows", i + 1)))
                    } else {
                        Ok(m)
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Udmg::new(&f, self.k, self.g, matrices)
    }

    /// Canonical text: fixed key order, one matrix per line, no padding
    /// inside arrays, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let list = |v: &[u32]| format!("[{}]", v.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"p\": {},\n  \"m\": {},\n", self.p, self.m));
        if let Some(f) = &self.modulus {
            out.push_str(&format!("  \"modulus\": {},\n", list(f)));
        }
        out.push_str(&format!("  \"K\": {},\n  \"g\": {},\n", self.k, self.g));
        if self.matrices.is_empty() {
            out.push_str("  \"matrices\": []\n}\n");
            return out;
        }
        out.push_str("  \"matrices\": [\n");
        let lines: Vec<String> = self
            .matrices
            .iter()
            .map(|m| format!("    [{}]", m.iter().map(|r| list(r)).collect::<Vec<_>>().join(",")))
            .collect();
        out.push_str(&lines.join(",\n"));
        out.push_str("\n  ]\n}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Pair([u32; 2]),
    Symbol(String),
    Number(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorFile {
    pub n: usize,
    #[serde(default)]
    pub h: Option<String>,
}

/// A curve, its evaluation points and a divisor (genus 1), or a set of
/// points on the line and `K` (genus 0).
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionFile {
    pub q: u64,
    pub genus: usize,
    pub points: Vec<PointSpec>,
    #[serde(rename = "K", default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub a: Option<u32>,
    #[serde(default)]
    pub b: Option<u32>,
    #[serde(default)]
    pub divisor: Option<DivisorFile>,
    /// `"first-point"` (default) or `"raw"`.
    #[serde(default)]
    pub base: Option<String>,
}

fn is_inf(s: &str) -> bool {
    matches!(s, "inf" | "O" | "infinity")
}

impl ConstructionFile {
    pub fn parse(text: &str) -> Result<ConstructionFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    fn field(&self) -> Result<Field> {
        let (p, m) = prime_power(self.q).ok_or_else(|| Error::Parse(format!("q = {} is not a prime power", self.q)))?;
        make_field(p as u64, m)
    }

    fn base(&self) -> Result<BaseBasis> {
        match self.base.as_deref() {
            None | Some("first-point") => Ok(BaseBasis::FirstPoint),
            Some("raw") => Ok(BaseBasis::Raw),
            Some(other) => Err(Error::Parse(format!("unknown base {other:?}; use \"first-point\" or \"raw\""))),
        }
    }

    fn points(&self, f: &Field) -> Result<Vec<CurvePoint>> {
        self.points
            .iter()
            .map(|p| match (self.genus, p) {
                (_, PointSpec::Symbol(s)) if is_inf(s) => Ok(CurvePoint::Infinity),
                (0, PointSpec::Symbol(s)) => {
                    let x: u64 = s.parse().map_err(|_| Error::Parse(format!("bad point symbol {s:?}")))?;
                    Ok(CurvePoint::line(f.check(x)?))
                }
                (0, PointSpec::Number(x)) => Ok(CurvePoint::line(f.check(*x as u64)?)),
                (1, PointSpec::Pair([x, y])) => Ok(CurvePoint::affine(f.check(*x as u64)?, f.check(*y as u64)?)),
                (g, other) => Err(Error::Parse(format!("point {other:?} is not valid for genus {g}"))),
            })
            .collect()
    }

    pub fn build(&self) -> Result<GoppaConstruction> {
        let f = self.field()?;
        let points = self.points(&f)?;
        let base = self.base()?;
        match self.genus {
            0 => {
                let k = self.k.ok_or_else(|| Error::Parse("genus 0 needs \"K\"".into()))?;
                genus0_udmg(&f, &points, k, base)
            }
            1 => {
                let (a, b) = match (self.a, self.b) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(Error::Parse("genus 1 needs \"a\" and \"b\"".into())),
                };
                let curve = WeierstrassCurve::new(&f, f.check(a as u64)?, f.check(b as u64)?)?;
                let d = self.divisor.as_ref().ok_or_else(|| Error::Parse("genus 1 needs \"divisor\"".into()))?;
                let ff = FunctionField::elliptic(&curve);
                let divisor = match &d.h {
                    Some(h) => DivisorSpec::with_function(d.n, ff.parse(h)?),
                    None => DivisorSpec::at_infinity(d.n),
                };
                goppa_udmg(&curve, &points, &divisor, base)
            }
            g => Err(Error::Parse(format!("genus {g} is not supported; use 0 or 1"))),
        }
    }
}

/// Parses `"1,0,2"` style lists.
pub fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad integer {t:?} in {text:?}"))))
        .collect()
}

pub fn join_list(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn format_elems(values: &[Elem]) -> String {
    values.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example;

    #[test]
    fn canonical_round_trip() {
        let file = MatrixSetFile::from_udmg(&example::printed_udmg(1));
        let text = file.to_canonical_json();
        assert!(text.ends_with("}\n"));
        assert!(!text.contains("modulus"));
        let again = MatrixSetFile::parse(&text).unwrap();
        assert_eq!(again, file);
        assert_eq!(again.to_canonical_json(), text);
        assert_eq!(again.to_udmg().unwrap(), example::printed_udmg(1));
    }

    #[test]
    fn extension_field_keeps_modulus() {
        let f = make_field(2, 2).unwrap();
        let u = Udmg::new(&f, 2, 0, vec![FqMatrix::identity(&f, 2)]).unwrap();
        let text = MatrixSetFile::from_udmg(&u).to_canonical_json();
        assert!(text.contains("\"modulus\": [1,1,1]"));
        assert_eq!(MatrixSetFile::parse(&text).unwrap().to_udmg().unwrap(), u);
    }

    #[test]
    fn rejects_malformed_sets() {
        let bad_rows = r#"{"p":5,"m":1,"K":2,"g":0,"matrices":[[[1,0]]]}"#;
        assert!(MatrixSetFile::parse(bad_rows).unwrap().to_udmg().is_err());
        let bad_entry = r#"{"p":5,"m":1,"K":1,"g":0,"matrices":[[[7]]]}"#;
        assert!(MatrixSetFile::parse(bad_entry).unwrap().to_udmg().is_err());
        let unknown = r#"{"p":5,"m":1,"K":1,"g":0,"matrices":[],"x":1}"#;
        assert!(MatrixSetFile::parse(unknown).is_err());
        let empty = r#"{"p":5,"m":1,"K":1,"g":0,"matrices":[]}"#;
        let f = MatrixSetFile::parse(empty).unwrap();
        assert_eq!(MatrixSetFile::parse(&f.to_canonical_json()).unwrap(), f);
    }

    #[test]
    fn construction_files() {
        let g0 = r#"{"q":5,"genus":0,"points":["0","1","2","3","4","inf"],"K":3}"#;
        let gc = ConstructionFile::parse(g0).unwrap().build().unwrap();
        assert_eq!(gc.udmg.len(), 6);
        let g1 = r#"{"q":5,"genus":1,"a":1,"b":1,
            "points":[[0,1],[4,2],[3,4],[0,4],[4,3],[3,1],[2,1],[2,4],"inf"],
            "divisor":{"n":3,"h":"r+s"}}"#;
        let gc = ConstructionFile::parse(g1).unwrap().build().unwrap();
        assert!(gc.udmg.verify().valid);
        let bad = r#"{"q":6,"genus":0,"points":["0"],"K":1}"#;
        assert!(ConstructionFile::parse(bad).unwrap().build().is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list("1, 0,2").unwrap(), vec![1, 0, 2]);
        assert!(parse_list("1,x").is_err());
        assert_eq!(join_list(&[0, 0, 1]), "0,0,1");
    }
}
