//! File formats: features CSV, hypergraph JSON, candidates CSV.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use hgsi::{Candidate, CandidateSet, FeatureMatrix, Hypergraph};
use serde::Serialize;

use crate::CliError;

fn open(path: &Path) -> Result<File, CliError> {
    File::open(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn file_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

/// Headerless CSV, one row per node.
pub fn read_features(path: &Path) -> Result<FeatureMatrix, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(BufReader::new(open(path)?));
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| file_err(path, e))?;
        let row = record
            .iter()
            .map(|field| {
                field.parse::<f64>().map_err(|_| {
                    CliError::Input(format!("{}:{}: not a number: {field:?}", path.display(), line + 1))
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    FeatureMatrix::from_rows(&rows).map_err(|e| file_err(path, e))
}

pub fn write_features(path: &Path, x: &FeatureMatrix) -> Result<(), CliError> {
    let mut out = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(create(path)?);
    for row in x.iter_rows() {
        out.write_record(row.iter().map(f64::to_string))
            .map_err(|e| file_err(path, e))?;
    }
    out.flush().map_err(|e| file_err(path, e))
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph, CliError> {
    serde_json::from_reader(BufReader::new(open(path)?)).map_err(|e| file_err(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| file_err(path, e))?;
    writeln!(out).and_then(|_| out.flush()).map_err(|e| file_err(path, e))
}

fn join_nodes(nodes: &[usize]) -> String {
    nodes.iter().map(usize::to_string).collect::<Vec<_>>().join(";")
}

/// Scored candidates, highest probability first.
pub fn write_candidates(path: &Path, cs: &CandidateSet) -> Result<(), CliError> {
    let (Some(scores), Some(probs)) = (cs.scores(), cs.probs()) else {
        return Err(CliError::Domain("candidates have not been scored".into()));
    };
    let order = cs.ranking().map_err(CliError::from)?;
    let mut out = csv::Writer::from_writer(create(path)?);
    out.write_record(["nodes", "size", "anchor", "s_prime", "prob"])
        .map_err(|e| file_err(path, e))?;
    for i in order {
        let c = &cs.candidates()[i];
        out.write_record([
            join_nodes(&c.nodes),
            c.size().to_string(),
            c.anchor.to_string(),
            scores[i].to_string(),
            probs[i].to_string(),
        ])
        .map_err(|e| file_err(path, e))?;
    }
    out.flush().map_err(|e| file_err(path, e))
}

pub fn read_candidates(path: &Path, n: usize) -> Result<CandidateSet, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(BufReader::new(open(path)?));
    let bad = |line: usize, what: &str| CliError::Input(format!("{}:{line}: bad {what}", path.display()));
    let mut candidates = Vec::new();
    let mut scores = Vec::new();
    let mut probs = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| file_err(path, e))?;
        if record.len() != 5 {
            return Err(bad(line, "record length"));
        }
        let nodes = record[0]
            .split(';')
            .map(|v| v.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad(line, "node list"))?;
        let anchor = record[2].parse().map_err(|_| bad(line, "anchor"))?;
        scores.push(record[3].parse::<f64>().map_err(|_| bad(line, "s_prime"))?);
        probs.push(record[4].parse::<f64>().map_err(|_| bad(line, "prob"))?);
        candidates.push(Candidate { nodes, anchor });
    }
    CandidateSet::from_parts(n, candidates, Some(scores), Some(probs)).map_err(|e| file_err(path, e))
}
