//! Labelled prefixes of exact sequences and their CSV/JSON encodings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct SeqTable {
    pub label: String,
    pub offset: usize,
    pub values: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct SeqTableJson {
    label: String,
    offset: usize,
    values: Vec<String>,
}

impl SeqTable {
    pub fn new(label: impl Into<String>, offset: usize, values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter(
                "sequence table must be non-empty".into(),
            ));
        }
        Ok(SeqTable {
            label: label.into(),
            offset,
            values,
        })
    }

    pub fn from_integers(label: impl Into<String>, values: &[i64]) -> Result<Self> {
        SeqTable::new(label, 0, values.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// CSV with header `label,offset,n,value`, one row per term.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,offset,n,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.label,
                self.offset,
                self.offset + i,
                rational::to_text(v)
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = SeqTableJson {
            label: self.label.clone(),
            offset: self.offset,
            values: self.values.iter().map(rational::to_text).collect(),
        };
        serde_json::to_string(&doc).expect("sequence table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SeqTableJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let values = doc
            .values
            .iter()
            .map(|v| rational::parse(v))
            .collect::<Result<Vec<_>>>()?;
        SeqTable::new(doc.label, doc.offset, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let t = SeqTable::new("demo", 1, vec![rational::ratio(1, 2), rational::int(3)]).unwrap();
        assert_eq!(
            t.to_csv(),
            "label,offset,n,value\ndemo,1,1,1/2\ndemo,1,2,3/1\n"
        );
    }

    #[test]
    fn json_round_trip() {
        let t = SeqTable::new("x", 0, vec![rational::ratio(-7, 3), rational::int(0)]).unwrap();
        let json = t.to_json();
        assert_eq!(json, r#"{"label":"x","offset":0,"values":["-7/3","0/1"]}"#);
        assert_eq!(SeqTable::from_json(&json).unwrap(), t);
    }

    #[test]
    fn empty_tables_are_rejected() {
        assert!(SeqTable::new("e", 0, vec![]).is_err());
    }
}
