//! Named arrangements shipped as text files, with expected values recorded
//! as `#@ key = value` lines.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arrangement::{parse_arrangement, Arrangement};
use crate::bfunc::{is_moderate_in, jumping_3d_criterion};
use crate::error::{Error, Result};
use crate::lattice::{build_lattice, is_generic, matroid_decompose, nu_counts, proj_complement_euler};
use crate::parse::parse_rational;
use crate::symbolic::Q;
use crate::topzeta::zeta_top;

macro_rules! corpus_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".arr")))),*]
    };
}

const FILES: &[(&str, &str)] = corpus_files!(
    "point1",
    "x-squared",
    "cross2",
    "x-cubed-y",
    "cross-nonreduced",
    "three-lines",
    "four-lines",
    "five-lines",
    "six-lines",
    "three-lines-nonreduced",
    "braid",
    "braid-nonreduced",
    "generic-3-4",
    "generic-3-5",
    "generic-4-5",
    "bs-d5",
    "bmt-d10",
    "pencil5-plus2",
    "non-essential",
    "a3-braid",
);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
    pub annotations: BTreeMap<String, String>,
}

fn annotations(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix("#@"))
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

pub fn corpus() -> Vec<CorpusEntry> {
    FILES
        .iter()
        .map(|&(name, text)| CorpusEntry { name, text, annotations: annotations(text) })
        .collect()
}

pub fn entry(name: &str) -> Result<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownCorpusEntry(name.to_string()))
}

impl CorpusEntry {
    pub fn arrangement(&self) -> Arrangement {
        parse_arrangement(self.text).expect("corpus files parse")
    }

    pub fn annotation(&self, key: &str) -> Option<&str> {
        self.annotations.get(key).map(String::as_str)
    }

    /// The `literature` note split into the candidate it concerns and the note.
    pub fn literature(&self) -> Option<(Q, String)> {
        let (c, note) = self.annotation("literature")?.split_once(':')?;
        Some((parse_rational(c)?, note.trim().to_string()))
    }

    pub fn from_literature(&self) -> bool {
        self.annotation("source") == Some("literature")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnotationCheck {
    pub key: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

fn fmt_nu(nu: &BTreeMap<usize, usize>) -> String {
    nu.iter().map(|(m, c)| format!("{m}:{c}")).collect::<Vec<_>>().join(", ")
}

/// Recomputes every checkable annotation of the entry.
pub fn check_entry(e: &CorpusEntry) -> Result<Vec<AnnotationCheck>> {
    let a = e.arrangement();
    let l = build_lattice(&a)?;
    let mut out = Vec::new();
    for (key, expected) in &e.annotations {
        let computed = match key.as_str() {
            "zeta_top" => zeta_top(&a)?.to_string(),
            "euler" => proj_complement_euler(&l)?.to_string(),
            "decomposable" => {
                let by_euler = proj_complement_euler(&l)? == 0;
                let by_matroid = matroid_decompose(&a.essentialize()?.0).len() > 1;
                if by_euler == by_matroid {
                    by_euler.to_string()
                } else {
                    format!("euler says {by_euler}, matroid says {by_matroid}")
                }
            }
            "edges" => l.len().to_string(),
            "nu" => fmt_nu(&nu_counts(&a)?),
            "jumping" => jumping_3d_criterion(&a)?.jumping.to_string(),
            "moderate" => is_moderate_in(&l).moderate.to_string(),
            "generic" => is_generic(&a)?.generic.to_string(),
            _ => continue,
        };
        out.push(AnnotationCheck { key: key.clone(), ok: &computed == expected, expected: expected.clone(), computed });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_file_parses_and_is_central() {
        let c = corpus();
        assert!(c.len() >= 15);
        for e in &c {
            assert!(e.arrangement().is_central(), "{}", e.name);
        }
    }

    #[test]
    fn literature_note() {
        let e = entry("bmt-d10").unwrap();
        let (c, note) = e.literature().unwrap();
        assert_eq!(c, Q::new((-3).into(), 10.into()));
        assert!(note.contains("4.2(e)"));
        assert!(entry("nope").is_err());
    }
}
