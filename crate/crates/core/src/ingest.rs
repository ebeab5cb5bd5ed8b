//! Publication records and their line-delimited JSON encoding.
//!
//! One record per line:
//!
//! ```text
//! {"paper_id": "p1", "year": 1995,
//!  "authorships": [{"author_key": "a1", "raw_affiliations": ["TIFR, Mumbai"]}],
//!  "cited_ids": ["p0"]}
//! ```
//!
//! Blank lines are skipped, unknown fields are ignored, and duplicate
//! `cited_ids` within a record collapse to their first occurrence.

use std::collections::{BTreeSet, HashSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {0}: malformed JSON")]
    MalformedLine(usize),
    #[error("line {line}: missing or invalid field `{field}`")]
    SchemaViolation { line: usize, field: String },
    #[error("duplicate paper id `{0}`")]
    DuplicatePaperId(String),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("i/o error reading records: {0}")]
    Io(#[from] std::io::Error),
}

/// One author of a paper with every affiliation string printed for them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthorAffiliation {
    pub author_key: String,
    pub raw_affiliations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicationRecord {
    pub paper_id: String,
    pub year: i32,
    pub authorships: Vec<AuthorAffiliation>,
    pub cited_ids: Vec<String>,
}

impl PublicationRecord {
    /// All raw affiliation strings on this paper, in author order.
    pub fn raw_affiliations(&self) -> impl Iterator<Item = &str> {
        self.authorships
            .iter()
            .flat_map(|a| a.raw_affiliations.iter().map(String::as_str))
    }
}

/// Parses a JSONL stream into records, preserving input order.
pub fn parse_records<R: BufRead>(reader: R) -> Result<Vec<PublicationRecord>, IngestError> {
    let mut records = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record = parse_line(&line, line_no)?;
        if !seen.insert(record.paper_id.clone()) {
            return Err(IngestError::DuplicatePaperId(record.paper_id));
        }
        records.push(record);
    }
    Ok(records)
}

pub fn parse_str(text: &str) -> Result<Vec<PublicationRecord>, IngestError> {
    parse_records(text.as_bytes())
}

fn parse_line(line: &str, line_no: usize) -> Result<PublicationRecord, IngestError> {
    let value: Value =
        serde_json::from_str(line).map_err(|_| IngestError::MalformedLine(line_no))?;
    let obj = value
        .as_object()
        .ok_or(IngestError::MalformedLine(line_no))?;
    let violation = |field: &str| IngestError::SchemaViolation {
        line: line_no,
        field: field.to_string(),
    };

    let paper_id = non_empty_str(obj, "paper_id").ok_or_else(|| violation("paper_id"))?;
    let year = obj
        .get("year")
        .and_then(Value::as_i64)
        .filter(|&y| y > 0 && y <= i64::from(i32::MAX))
        .ok_or_else(|| violation("year"))? as i32;

    let authorships_json = obj
        .get("authorships")
        .and_then(Value::as_array)
        .filter(|a| !a.is_empty())
        .ok_or_else(|| violation("authorships"))?;
    let mut authorships = Vec::with_capacity(authorships_json.len());
    for (i, entry) in authorships_json.iter().enumerate() {
        let entry = entry
            .as_object()
            .ok_or_else(|| violation(&format!("authorships[{i}]")))?;
        let author_key = entry
            .get("author_key")
            .and_then(Value::as_str)
            .ok_or_else(|| violation(&format!("authorships[{i}].author_key")))?
            .to_string();
        let field = format!("authorships[{i}].raw_affiliations");
        let raws = entry
            .get("raw_affiliations")
            .and_then(Value::as_array)
            .filter(|a| !a.is_empty())
            .ok_or_else(|| violation(&field))?;
        let raw_affiliations = raws
            .iter()
            .map(|r| {
                r.as_str()
                    .filter(|s| !s.trim().is_empty())
                    .map(str::to_string)
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| violation(&field))?;
        authorships.push(AuthorAffiliation {
            author_key,
            raw_affiliations,
        });
    }

    let cited_json = obj
        .get("cited_ids")
        .and_then(Value::as_array)
        .ok_or_else(|| violation("cited_ids"))?;
    let mut cited_ids = Vec::with_capacity(cited_json.len());
    let mut seen = HashSet::new();
    for c in cited_json {
        let id = c
            .as_str()
            .filter(|s| !s.is_empty())
            .ok_or_else(|| violation("cited_ids"))?;
        if seen.insert(id) {
            cited_ids.push(id.to_string());
        }
    }

    Ok(PublicationRecord {
        paper_id,
        year,
        authorships,
        cited_ids,
    })
}

fn non_empty_str(obj: &Map<String, Value>, key: &str) -> Option<String> {
    obj.get(key)
        .and_then(Value::as_str)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
}

/// Writes records back out as JSONL, one object per line.
pub fn write_records<W: Write>(records: &[PublicationRecord], mut out: W) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub papers: usize,
    pub distinct_raw_affiliations: usize,
    pub year_range: (i32, i32),
    /// Citations pointing at paper ids that are not in the corpus.
    pub external_citation_count: usize,
}

pub fn validate_corpus(records: &[PublicationRecord]) -> Result<CorpusSummary, IngestError> {
    if records.is_empty() {
        return Err(IngestError::EmptyCorpus);
    }
    let ids: HashSet<&str> = records.iter().map(|r| r.paper_id.as_str()).collect();
    let raws: BTreeSet<&str> = records.iter().flat_map(|r| r.raw_affiliations()).collect();
    let min_year = records.iter().map(|r| r.year).min().unwrap_or_default();
    let max_year = records.iter().map(|r| r.year).max().unwrap_or_default();
    let external_citation_count = records
        .iter()
        .flat_map(|r| r.cited_ids.iter())
        .filter(|c| !ids.contains(c.as_str()))
        .count();
    Ok(CorpusSummary {
        papers: records.len(),
        distinct_raw_affiliations: raws.len(),
        year_range: (min_year, max_year),
        external_citation_count,
    })
}
