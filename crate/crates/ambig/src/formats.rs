//! Witness JSON, census CSV and Cayley-table CSV.

use std::io::Read;

use ambig_core::groups::CayleyTable;
use ambig_core::iafun::IAPermutation;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

pub const GENERATOR: &str = "greedy-v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessMeta {
    pub generator: String,
    pub seed: Option<u64>,
}

/// `{group, table, meta: {generator, seed}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub group: String,
    pub table: Vec<usize>,
    pub meta: WitnessMeta,
}

impl Witness {
    pub fn from_permutation(group_spec: &str, f: &IAPermutation) -> Self {
        Witness {
            group: group_spec.to_string(),
            table: f.indices(),
            meta: WitnessMeta {
                generator: GENERATOR.to_string(),
                seed: None,
            },
        }
    }

    /// Accepts a bare witness or a run report whose payload is, or carries
    /// under `witness`, a witness.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let v: Value = serde_json::from_str(text).map_err(|e| CliError::BadInput(format!("witness JSON: {e}")))?;
        let candidate = if v.get("table").is_some() {
            v
        } else {
            let payload = v
                .get("payload")
                .ok_or_else(|| CliError::BadInput("no witness table in input".into()))?;
            match payload.get("witness") {
                Some(w) if !w.is_null() => w.clone(),
                Some(_) => return Err(CliError::BadInput("report carries no witness".into())),
                None => payload.clone(),
            }
        };
        serde_json::from_value(candidate).map_err(|e| CliError::BadInput(format!("witness JSON: {e}")))
    }
}

/// One curve-scan row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub q: u64,
    pub a: i64,
    pub b: i64,
    pub total: u64,
    pub roots: u64,
    pub nq: u64,
    pub exists: bool,
}

pub const SCAN_HEADER: [&str; 7] = ["q", "a", "b", "total", "roots", "nq", "exists"];

pub fn scan_csv(rows: &[ScanRow]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(SCAN_HEADER).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn parse_scan_csv(text: &str) -> Result<Vec<ScanRow>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize().map(|row| row.map_err(csv_err)).collect()
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::BadInput(format!("csv: {e}"))
}

/// Row `i`, column `j` holds the index of the product `i * j`; no header.
pub fn read_cayley_csv(reader: impl Read) -> Result<CayleyTable, CliError> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut table = Vec::new();
    let mut rows = 0;
    for record in r.records() {
        let record = record.map_err(csv_err)?;
        for field in record.iter() {
            let v: usize = field
                .parse()
                .map_err(|_| CliError::BadInput(format!("cayley table entry {field:?} is not an index")))?;
            table.push(v);
        }
        rows += 1;
    }
    CayleyTable::new(rows, table)
        .map(|t| t.with_label("cayley"))
        .map_err(|e| CliError::BadInput(format!("cayley table: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_shapes() {
        let bare = r#"{"group":"Z5","table":[0,2,4,1,3],"meta":{"generator":"greedy-v1","seed":null}}"#;
        let w = Witness::from_json(bare).unwrap();
        assert_eq!(w.table, vec![0, 2, 4, 1, 3]);
        let wrapped = format!(r#"{{"status":"ok","payload":{{"group":"Z5","exists":true,"witness":{bare}}}}}"#);
        assert_eq!(Witness::from_json(&wrapped).unwrap(), w);
        let inline = format!(r#"{{"status":"ok","payload":{bare}}}"#);
        assert_eq!(Witness::from_json(&inline).unwrap(), w);
        assert!(Witness::from_json(r#"{"status":"ok","payload":{"witness":null}}"#).is_err());
        assert!(Witness::from_json("[1,2]").is_err());
    }

    #[test]
    fn scan_csv_round_trip() {
        let rows = vec![
            ScanRow { q: 5, a: -1, b: 0, total: 8, roots: 3, nq: 2, exists: true },
            ScanRow { q: 7, a: 1, b: 0, total: 8, roots: 1, nq: 3, exists: false },
        ];
        let text = scan_csv(&rows).unwrap();
        assert!(text.starts_with("q,a,b,total,roots,nq,exists\n5,-1,0,8,3,2,true\n"));
        assert_eq!(parse_scan_csv(&text).unwrap(), rows);
        assert_eq!(scan_csv(&[]).unwrap(), "q,a,b,total,roots,nq,exists\n");
    }

    #[test]
    fn cayley_csv() {
        let t = read_cayley_csv("0,1,2\n1,2,0\n2,0,1\n".as_bytes()).unwrap();
        assert_eq!(t.order(), 3);
        assert!(read_cayley_csv("0,1\n1,1\n".as_bytes()).is_err());
        assert!(read_cayley_csv("0,x\n".as_bytes()).is_err());
    }
}
