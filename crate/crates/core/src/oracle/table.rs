//! Persistent structure-constant tables.
//!
//! Cache format (line-oriented, UTF-8, one tree of rows under a header):
//!
//! ```text
//! hecke-structure-table
//! format_version: 1
//! d: 5
//! generators: 2,3,4,5,1;1,5,4,3,2
//! k: 2
//! sizes: 2,2
//! degree_cap: 4
//! row: u=; v=
//!   term: w=; c=1
//! row: u=1; v=1
//!   term: w=; c=10
//!   term: w=1; c=1
//! ```
//!
//! Words are comma-separated letters, the empty string being the unit
//! class; coefficients are decimal integers. Generators are the image
//! sequences of the group's generator list, in input order. A cache is
//! only reused when the whole header matches exactly.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::exact::ExactInt;
use crate::hecke::CosetWord;

const MAGIC: &str = "hecke-structure-table";
const FORMAT_VERSION: u32 = 1;

/// Identity of the group a table was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableFingerprint {
    pub d: usize,
    /// Generator image sequences, in input order.
    pub generators: Vec<Vec<u8>>,
    pub k: usize,
    pub sizes: Vec<usize>,
}

impl TableFingerprint {
    fn generators_string(&self) -> String {
        self.generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Short stable hex digest of the generator list, used in file names.
    pub fn digest(&self) -> String {
        // FNV-1a over the canonical serialization.
        let mut hash: u64 = 0xcbf29ce484222325;
        for byte in format!("{};{}", self.d, self.generators_string()).bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
        format!("{hash:016x}")
    }
}

/// Exact convolution structure constants for all word pairs up to a
/// degree cap, immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstantTable {
    fingerprint: TableFingerprint,
    degree_cap: usize,
    rows: BTreeMap<(CosetWord, CosetWord), BTreeMap<CosetWord, ExactInt>>,
}

impl StructureConstantTable {
    pub fn new(fingerprint: TableFingerprint, degree_cap: usize) -> Self {
        StructureConstantTable {
            fingerprint,
            degree_cap,
            rows: BTreeMap::new(),
        }
    }

    pub fn fingerprint(&self) -> &TableFingerprint {
        &self.fingerprint
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn insert_row(
        &mut self,
        u: CosetWord,
        v: CosetWord,
        row: BTreeMap<CosetWord, ExactInt>,
    ) {
        self.rows.insert((u, v), row);
    }

    pub fn row(&self, u: &CosetWord, v: &CosetWord) -> Option<&BTreeMap<CosetWord, ExactInt>> {
        self.rows.get(&(u.clone(), v.clone()))
    }

    pub fn rows(
        &self,
    ) -> impl Iterator<Item = (&(CosetWord, CosetWord), &BTreeMap<CosetWord, ExactInt>)> {
        self.rows.iter()
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn write_to(&self, out: &mut impl Write) -> Result<()> {
        writeln!(out, "{MAGIC}")?;
        writeln!(out, "format_version: {FORMAT_VERSION}")?;
        writeln!(out, "d: {}", self.fingerprint.d)?;
        writeln!(out, "generators: {}", self.fingerprint.generators_string())?;
        writeln!(out, "k: {}", self.fingerprint.k)?;
        writeln!(
            out,
            "sizes: {}",
            self.fingerprint
                .sizes
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )?;
        writeln!(out, "degree_cap: {}", self.degree_cap)?;
        for ((u, v), row) in &self.rows {
            writeln!(out, "row: u={u}; v={v}")?;
            for (w, c) in row {
                writeln!(out, "  term: w={w}; c={c}")?;
            }
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        fs::write(path, buf)?;
        Ok(())
    }

    pub fn read_from(reader: impl BufRead) -> Result<Self> {
        let mut lines = reader.lines();
        let magic = next_line(&mut lines)?;
        if magic.trim() != MAGIC {
            return Err(Error::Cache(format!("bad magic line {magic:?}")));
        }
        let version: u32 = header_value(&next_line(&mut lines)?, "format_version")?.parse()
            .map_err(|_| Error::Cache("bad format_version".into()))?;
        if version != FORMAT_VERSION {
            return Err(Error::Cache(format!(
                "unsupported format_version {version}"
            )));
        }
        let d: usize = header_value(&next_line(&mut lines)?, "d")?
            .parse()
            .map_err(|_| Error::Cache("bad d".into()))?;
        let generators_raw = header_value(&next_line(&mut lines)?, "generators")?;
        let generators = generators_raw
            .split(';')
            .map(|g| {
                g.split(',')
                    .map(|tok| {
                        tok.trim()
                            .parse::<u8>()
                            .map_err(|_| Error::Cache(format!("bad generator entry {tok:?}")))
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<Vec<u8>>>>()?;
        let k: usize = header_value(&next_line(&mut lines)?, "k")?
            .parse()
            .map_err(|_| Error::Cache("bad k".into()))?;
        let sizes = header_value(&next_line(&mut lines)?, "sizes")?
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Cache(format!("bad size entry {tok:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        let degree_cap: usize = header_value(&next_line(&mut lines)?, "degree_cap")?
            .parse()
            .map_err(|_| Error::Cache("bad degree_cap".into()))?;

        let mut table = StructureConstantTable::new(
            TableFingerprint {
                d,
                generators,
                k,
                sizes,
            },
            degree_cap,
        );
        let mut current: Option<(CosetWord, CosetWord)> = None;
        let mut current_row: BTreeMap<CosetWord, ExactInt> = BTreeMap::new();
        for line in lines {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("row:") {
                if let Some(pair) = current.take() {
                    table.rows.insert(pair, std::mem::take(&mut current_row));
                }
                let (u, v) = parse_pair(rest, "u", "v", k)?;
                current = Some((u, v));
            } else if let Some(rest) = trimmed.strip_prefix("term:") {
                if current.is_none() {
                    return Err(Error::Cache("term before any row".into()));
                }
                let (w_str, c_str) = split_fields(rest, "w", "c")?;
                let w = CosetWord::parse(&w_str, k)
                    .map_err(|e| Error::Cache(format!("bad term word: {e}")))?;
                let c: ExactInt = c_str
                    .trim()
                    .parse()
                    .map_err(|_| Error::Cache(format!("bad coefficient {c_str:?}")))?;
                current_row.insert(w, c);
            } else {
                return Err(Error::Cache(format!("unexpected line {trimmed:?}")));
            }
        }
        if let Some(pair) = current.take() {
            table.rows.insert(pair, current_row);
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = fs::File::open(path)?;
        Self::read_from(std::io::BufReader::new(file))
    }

    /// Load a cache and insist on an exact header match.
    pub fn load_matching(
        path: &Path,
        fingerprint: &TableFingerprint,
        degree_cap: usize,
    ) -> Result<Self> {
        let table = Self::load(path)?;
        if table.fingerprint != *fingerprint || table.degree_cap != degree_cap {
            return Err(Error::Cache(format!(
                "header mismatch at {}: cached (d={}, k={}, cap={}) vs requested (d={}, k={}, cap={})",
                path.display(),
                table.fingerprint.d,
                table.fingerprint.k,
                table.degree_cap,
                fingerprint.d,
                fingerprint.k,
                degree_cap,
            )));
        }
        Ok(table)
    }
}

fn next_line(lines: &mut impl Iterator<Item = std::io::Result<String>>) -> Result<String> {
    lines
        .next()
        .ok_or_else(|| Error::Cache("unexpected end of file in header".into()))?
        .map_err(Error::from)
}

fn header_value(line: &str, key: &str) -> Result<String> {
    let (name, value) = line
        .split_once(':')
        .ok_or_else(|| Error::Cache(format!("malformed header line {line:?}")))?;
    if name.trim() != key {
        return Err(Error::Cache(format!(
            "expected header {key:?}, found {:?}",
            name.trim()
        )));
    }
    Ok(value.trim().to_string())
}

fn split_fields(rest: &str, first: &str, second: &str) -> Result<(String, String)> {
    let (a, b) = rest
        .split_once(';')
        .ok_or_else(|| Error::Cache(format!("malformed entry {rest:?}")))?;
    let a = a.trim();
    let b = b.trim();
    let a_val = a
        .strip_prefix(&format!("{first}="))
        .ok_or_else(|| Error::Cache(format!("expected {first}= in {a:?}")))?;
    let b_val = b
        .strip_prefix(&format!("{second}="))
        .ok_or_else(|| Error::Cache(format!("expected {second}= in {b:?}")))?;
    Ok((a_val.to_string(), b_val.to_string()))
}

fn parse_pair(rest: &str, first: &str, second: &str, k: usize) -> Result<(CosetWord, CosetWord)> {
    let (u_str, v_str) = split_fields(rest, first, second)?;
    let u = CosetWord::parse(&u_str, k).map_err(|e| Error::Cache(format!("bad row word: {e}")))?;
    let v = CosetWord::parse(&v_str, k).map_err(|e| Error::Cache(format!("bad row word: {e}")))?;
    Ok((u, v))
}
