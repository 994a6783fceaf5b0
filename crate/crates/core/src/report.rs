//! Per-knot reports and the `C(m, n)` grid tables.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bridge::{canonicalize, Canonical, DoubleTwist, TwoBridgeFraction};
use crate::error::{Error, Result};
use crate::invariants::InvariantSheet;
use crate::obstructions::{lower_bound_canonical, Evidence};
use crate::surgery::upper_bound_canonical;
use crate::twist::TwistFamilyResult;

/// Largest `|m|`, `|n|` accepted for a single report.
pub const MAX_PARAMETER: i64 = 10_000;
/// Largest bound accepted by [`TableSpec`].
pub const MAX_TABLE_BOUND: i64 = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableCell {
    Value(u8),
    /// `γ₄ ∈ {1, 2}`
    OneOrTwo,
    /// `γ₄ ∈ {2, 3}`
    TwoOrThree,
    /// `γ₄ ∈ {1, 2, 3}`
    Unknown,
    Duplicate,
}

impl TableCell {
    pub fn from_bounds(lower: u8, upper: u8) -> Self {
        match (lower, upper) {
            (l, u) if l == u => TableCell::Value(l),
            (1, 2) => TableCell::OneOrTwo,
            (2, 3) => TableCell::TwoOrThree,
            (1, 3) => TableCell::Unknown,
            (l, u) => unreachable!("no symbol for bounds ({l}, {u})"),
        }
    }

    pub fn symbol(&self) -> String {
        match self {
            TableCell::Value(v) => v.to_string(),
            TableCell::OneOrTwo => "12".into(),
            TableCell::TwoOrThree => "23".into(),
            TableCell::Unknown => "*".into(),
            TableCell::Duplicate => ".".into(),
        }
    }
}

impl fmt::Display for TableCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

impl Serialize for TableCell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub input: DoubleTwist,
    pub canonical: DoubleTwist,
    pub fraction: String,
    pub determinant: i64,
    pub signature: i64,
    pub arf: u8,
    pub sigma4arf_mod8: i64,
    pub crosscap3: u8,
    pub lower: u8,
    pub upper: u8,
    pub value: Option<u8>,
    pub symbol: TableCell,
    pub evidence: Vec<Evidence>,
    pub my_flag: bool,
    /// The earlier grid cell naming the same knot, in tables only.
    pub duplicate_of: Option<DoubleTwist>,
}

impl GenusReport {
    pub fn of(k: DoubleTwist) -> Result<Self> {
        if k.m.abs() > MAX_PARAMETER || k.n.abs() > MAX_PARAMETER {
            return Err(Error::InvalidInput(format!("|m| and |n| must be at most {MAX_PARAMETER}")));
        }
        let c = canonicalize(k)?;
        Self::of_canonical(k, &c)
    }

    fn of_canonical(input: DoubleTwist, c: &Canonical) -> Result<Self> {
        let sheet = InvariantSheet::of(c);
        let lower = lower_bound_canonical(c)?;
        let upper = upper_bound_canonical(c, lower.bound)?;
        if lower.bound > upper.bound {
            return Err(Error::Inconsistent(format!(
                "{}: lower bound {} exceeds upper bound {}",
                c.knot, lower.bound, upper.bound
            )));
        }
        let mut evidence = lower.evidence;
        for ev in upper.evidence {
            if !evidence.contains(&ev) {
                evidence.push(ev);
            }
        }
        Ok(Self {
            input,
            canonical: c.knot,
            fraction: c.fraction().to_string(),
            determinant: c.determinant(),
            signature: sheet.signature,
            arf: sheet.arf,
            sigma4arf_mod8: sheet.sigma4arf_mod8,
            crosscap3: sheet.crosscap3,
            lower: lower.bound,
            upper: upper.bound,
            value: (lower.bound == upper.bound).then_some(lower.bound),
            symbol: TableCell::from_bounds(lower.bound, upper.bound),
            evidence,
            my_flag: lower.my_flag,
            duplicate_of: None,
        })
    }

    /// The symbol shown in a table: the bounds, or a dot for repeats.
    pub fn cell(&self) -> TableCell {
        if self.duplicate_of.is_some() {
            TableCell::Duplicate
        } else {
            self.symbol
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "knot           {}", self.input);
        let _ = writeln!(s, "canonical      {}", self.canonical);
        let _ = writeln!(s, "fraction       {}", self.fraction);
        let _ = writeln!(s, "determinant    {}", self.determinant);
        let _ = writeln!(s, "signature      {}", self.signature);
        let _ = writeln!(s, "arf            {}", self.arf);
        let _ = writeln!(s, "σ+4Arf mod 8   {}", self.sigma4arf_mod8);
        let _ = writeln!(s, "crosscap γ₃    {}", self.crosscap3);
        let range = match self.value {
            Some(v) => format!("{v}"),
            None => format!("{}..{}", self.lower, self.upper),
        };
        let _ = writeln!(s, "γ₄             {range}  [{}]", self.symbol);
        if self.my_flag {
            let _ = writeln!(s, "note           Murakami–Yasuhara obstruction fires (locally flat)");
        }
        for ev in &self.evidence {
            let _ = writeln!(s, "  {:<22} {}", ev.rule, ev.detail);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" => Ok(Format::Md),
            other => Err(Error::InvalidInput(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableSpec {
    pub m_max: i64,
    pub n_min: i64,
    pub n_max: i64,
}

impl TableSpec {
    pub fn new(m_max: i64, n_min: i64, n_max: i64) -> Result<Self> {
        let ok = (1..=MAX_TABLE_BOUND).contains(&m_max)
            && n_min >= -MAX_TABLE_BOUND
            && n_max <= MAX_TABLE_BOUND
            && n_min <= n_max;
        if !ok {
            return Err(Error::InvalidInput(format!(
                "table bounds need 1 ≤ m_max ≤ {MAX_TABLE_BOUND} and −{MAX_TABLE_BOUND} ≤ n_min ≤ n_max ≤ {MAX_TABLE_BOUND}"
            )));
        }
        Ok(Self { m_max, n_min, n_max })
    }

    pub fn positive_columns(&self) -> Vec<i64> {
        (self.n_min.max(1)..=self.n_max).filter(|n| n % 2 == 0).collect()
    }

    pub fn negative_columns(&self) -> Vec<i64> {
        (self.n_min..=self.n_max.min(-1)).filter(|n| n % 2 == 0).collect()
    }

    /// Cells in duplicate-detection order: the whole `n > 0` table row by
    /// row, then the `n < 0` table.
    pub fn cells(&self) -> Vec<DoubleTwist> {
        let mut out = Vec::new();
        for cols in [self.positive_columns(), self.negative_columns()] {
            for m in 1..=self.m_max {
                out.extend(cols.iter().map(|&n| DoubleTwist::new(m, n)));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub spec: TableSpec,
    pub cells: Vec<GenusReport>,
}

/// Computes every cell on a pool of `threads` workers (0 lets rayon
/// decide). The result does not depend on the pool size.
pub fn build_table(spec: TableSpec, threads: usize) -> Result<Table> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let inputs = spec.cells();
    let computed: Vec<Result<GenusReport>> =
        pool.install(|| inputs.par_iter().map(|&k| GenusReport::of(k)).collect());
    let mut cells = computed.into_iter().collect::<Result<Vec<_>>>()?;
    let mut first: HashMap<TwoBridgeFraction, DoubleTwist> = HashMap::new();
    for cell in &mut cells {
        let key = canonicalize(cell.input)?.fraction().canonical();
        match first.get(&key) {
            Some(&earlier) => cell.duplicate_of = Some(earlier),
            None => {
                first.insert(key, cell.input);
            }
        }
    }
    Ok(Table { spec, cells })
}

impl Table {
    fn lookup(&self) -> HashMap<DoubleTwist, &GenusReport> {
        self.cells.iter().map(|c| (c.input, c)).collect()
    }

    /// One row per `m`; columns are the `n > 0` block then the `n < 0`
    /// block, each ascending.
    pub fn to_csv(&self) -> String {
        let cols: Vec<i64> = self.spec.positive_columns().into_iter().chain(self.spec.negative_columns()).collect();
        let by = self.lookup();
        let mut s = String::from("m");
        for n in &cols {
            let _ = write!(s, ",{n}");
        }
        s.push_str("\r\n");
        for m in 1..=self.spec.m_max {
            let _ = write!(s, "{m}");
            for &n in &cols {
                let _ = write!(s, ",{}", csv_field(&by[&DoubleTwist::new(m, n)].cell().symbol()));
            }
            s.push_str("\r\n");
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let by = self.lookup();
        let mut s = String::new();
        for (title, cols) in [("n > 0", self.spec.positive_columns()), ("n < 0", self.spec.negative_columns())] {
            if cols.is_empty() {
                continue;
            }
            if !s.is_empty() {
                s.push('\n');
            }
            let _ = writeln!(s, "### {title}\n");
            let _ = write!(s, "| m \\ n |");
            for n in &cols {
                let _ = write!(s, " {n} |");
            }
            s.push('\n');
            s.push_str(&"|---".repeat(cols.len() + 1));
            s.push_str("|\n");
            for m in 1..=self.spec.m_max {
                let _ = write!(s, "| {m} |");
                for &n in &cols {
                    let _ = write!(s, " {} |", by[&DoubleTwist::new(m, n)].cell());
                }
                s.push('\n');
            }
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Md => self.to_markdown(),
            Format::Csv | Format::Text => self.to_csv(),
        }
    }
}

/// RFC 4180 quoting, only when the field needs it.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\r', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn join(js: &[u64]) -> String {
    js.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(",")
}

pub fn render_twist(rows: &[TwistFamilyResult], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            for r in rows {
                let _ = writeln!(s, "{}: {}", r.t, join(&r.j_set));
            }
        }
        Format::Csv => {
            s.push_str("t,variant,j\r\n");
            for r in rows {
                let _ = write!(s, "{},{},{}\r\n", r.t, r.variant, csv_field(&join(&r.j_set)));
            }
        }
        Format::Md => {
            s.push_str("| t | j |\n|---|---|\n");
            for r in rows {
                let _ = writeln!(s, "| {} | {} |", r.t, join(&r.j_set).replace(',', ", "));
            }
        }
        Format::Json => {
            s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
        }
    }
    s
}
