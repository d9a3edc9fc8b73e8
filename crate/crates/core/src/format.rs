//! Text and JSON forms of matrices, block matrices and reports.
//!
//! Matrix text format (`#` starts a comment):
//!
//! ```text
//! field p=5 modulus=x^3+3x+3
//! rows=3 cols=3
//! [0,1,0] [0,2,0] [0,2,0]
//! ...
//! ```
//!
//! The modulus is omitted for prime fields, whose entries are bare
//! integers. Block matrices add `block=n` and, when their blocks lie in
//! GF(p)[C], may carry `companion=POLY`. With `block=n compact` the body
//! lists one token per block, `C^k` or `O`, and no `rows=` line.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::companion::{BlockMat, CompanionCtx};
use crate::error::{Error, Result};
use crate::field::{ElemStyle, FieldCtx};
use crate::linalg::Mat;
use crate::verify::{MinorTable, VerifyReport};

/// Everything a matrix file can declare.
#[derive(Clone, Debug)]
pub struct MatrixFile {
    pub mat: Mat,
    pub block: Option<usize>,
    pub companion: Option<CompanionCtx>,
}

impl MatrixFile {
    /// The matrix as a [`BlockMat`], using `block` when no size is given.
    pub fn into_block(self, block: Option<usize>) -> Result<BlockMat> {
        let b = block.or(self.block).ok_or_else(|| {
            Error::Parse("no block size given in the file or on the command line".into())
        })?;
        match self.companion {
            Some(ctx) if ctx.degree() == b => BlockMat::with_companion(self.mat, &ctx),
            _ => BlockMat::new(self.mat, b),
        }
    }
}

fn field_header(ctx: &FieldCtx) -> String {
    if ctx.is_prime_field() {
        format!("field p={}", ctx.p())
    } else {
        format!("field p={} modulus={}", ctx.p(), ctx.modulus())
    }
}

fn body(m: &Mat) -> String {
    let cells: Vec<String> = m
        .entries()
        .iter()
        .map(|e| m.ctx().format(e, ElemStyle::Coeffs))
        .collect();
    let width = cells.iter().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for i in 0..m.rows() {
        let line: Vec<String> = (0..m.cols())
            .map(|j| format!("{:>width$}", cells[i * m.cols() + j]))
            .collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}

pub fn write_mat(m: &Mat) -> String {
    format!(
        "{}\nrows={} cols={}\n{}",
        field_header(m.ctx()),
        m.rows(),
        m.cols(),
        body(m)
    )
}

/// Full form, or the `C^k`/`O` form when `compact` is set and a companion
/// context is attached.
pub fn write_block(b: &BlockMat, compact: bool) -> String {
    let mut out = field_header(b.inner().ctx());
    out.push('\n');
    if let Some(ctx) = b.companion() {
        out.push_str(&format!("companion={}\n", ctx.poly()));
    }
    match b.compact().filter(|_| compact) {
        Some(grid) => {
            out.push_str(&format!("block={} compact\n", b.block_size()));
            out.push_str(&grid);
        }
        None => {
            out.push_str(&format!("block={}\n", b.block_size()));
            out.push_str(&format!("rows={} cols={}\n", b.inner().rows(), b.inner().cols()));
            out.push_str(&body(b.inner()));
        }
    }
    out
}

fn key_value<'a>(token: &'a str, key: &str) -> Option<&'a str> {
    token.strip_prefix(key)?.strip_prefix('=')
}

fn parse_usize(text: &str, what: &str) -> Result<usize> {
    text.parse()
        .map_err(|_| Error::Parse(format!("bad {what} '{text}'")))
}

/// Whitespace-separated tokens, keeping `[...]` groups intact.
fn tokens(line: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in line.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced ']' in '{line}'")))?;
                cur.push(ch);
            }
            c if c.is_whitespace() => {
                if depth == 0 && !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '[' in '{line}'")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

pub fn parse_matrix_file(text: &str) -> Result<MatrixFile> {
    let mut field: Option<FieldCtx> = None;
    let mut companion: Option<CompanionCtx> = None;
    let mut block: Option<usize> = None;
    let mut compact = false;
    let mut shape: Option<(usize, usize)> = None;
    let mut cells: Vec<Vec<String>> = Vec::new();

    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks = tokens(line)?;
        let head = toks[0].as_str();
        if head == "field" {
            let mut p = None;
            let mut modulus = None;
            for t in &toks[1..] {
                if let Some(v) = key_value(t, "p") {
                    p = Some(parse_usize(v, "prime")? as u64);
                } else if let Some(v) = key_value(t, "modulus") {
                    modulus = Some(v.to_string());
                } else {
                    return Err(Error::Parse(format!("unknown field attribute '{t}'")));
                }
            }
            let p = p.ok_or_else(|| Error::Parse("field line needs p=".into()))?;
            field = Some(match modulus {
                Some(m) => FieldCtx::parse(p, &m)?,
                None => FieldCtx::prime(p)?,
            });
        } else if let Some(v) = key_value(head, "companion") {
            let f = field
                .as_ref()
                .ok_or_else(|| Error::Parse("companion line before field line".into()))?;
            companion = Some(CompanionCtx::parse(f.p(), v)?);
        } else if let Some(v) = key_value(head, "block") {
            block = Some(parse_usize(v, "block size")?);
            compact = toks.get(1).map(String::as_str) == Some("compact");
        } else if let Some(v) = key_value(head, "rows") {
            let cols = toks
                .get(1)
                .and_then(|t| key_value(t, "cols"))
                .ok_or_else(|| Error::Parse("expected 'rows=R cols=C'".into()))?;
            shape = Some((parse_usize(v, "row count")?, parse_usize(cols, "column count")?));
        } else {
            cells.push(toks);
        }
    }

    let field = field.ok_or_else(|| Error::Parse("missing 'field' line".into()))?;
    if compact {
        let ctx = companion
            .clone()
            .ok_or_else(|| Error::Parse("compact block form needs a companion= line".into()))?;
        let mat = parse_compact(&cells, &ctx)?;
        return Ok(MatrixFile {
            mat,
            block: Some(ctx.degree()),
            companion: Some(ctx),
        });
    }

    let (rows, cols) = shape.ok_or_else(|| Error::Parse("missing 'rows=R cols=C' line".into()))?;
    let flat: Vec<&String> = cells.iter().flatten().collect();
    if flat.len() != rows * cols {
        return Err(Error::Parse(format!(
            "expected {} entries for {rows}x{cols}, found {}",
            rows * cols,
            flat.len()
        )));
    }
    let entries = flat
        .iter()
        .map(|t| field.parse_elem(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixFile {
        mat: Mat::new(&field, rows, cols, entries)?,
        block,
        companion,
    })
}

fn parse_compact(cells: &[Vec<String>], ctx: &CompanionCtx) -> Result<Mat> {
    let n = ctx.degree();
    let zero = Mat::zeros(ctx.base(), n, n)?;
    let grid = cells
        .iter()
        .map(|line| {
            line.iter()
                .map(|t| {
                    if t == "O" {
                        return Ok(zero.clone());
                    }
                    let k = t
                        .strip_prefix("C^")
                        .or_else(|| (t == "C").then_some("1"))
                        .ok_or_else(|| Error::Parse(format!("bad block token '{t}'")))?;
                    ctx.matrix().pow(parse_usize(k, "exponent")? as u64)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Mat::from_blocks(&grid)
}

pub fn parse_mat(text: &str) -> Result<Mat> {
    parse_matrix_file(text).map(|f| f.mat)
}

pub fn parse_block(text: &str) -> Result<BlockMat> {
    parse_matrix_file(text)?.into_block(None)
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
struct FieldJson {
    p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
struct MatJson {
    field: FieldJson,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Vec<u64>>>,
}

pub fn mat_to_json(m: &Mat) -> serde_json::Value {
    let ctx = m.ctx();
    let doc = MatJson {
        field: FieldJson {
            p: ctx.p(),
            modulus: (!ctx.is_prime_field()).then(|| ctx.modulus().to_string()),
        },
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|e| e.coeffs().iter().map(|&c| c as u64).collect())
                    .collect()
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("serialisable")
}

pub fn mat_from_json(text: &str) -> Result<Mat> {
    let doc: MatJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let ctx = match &doc.field.modulus {
        Some(m) => FieldCtx::parse(doc.field.p, m)?,
        None => FieldCtx::prime(doc.field.p)?,
    };
    if doc.entries.len() != doc.rows || doc.entries.iter().any(|r| r.len() != doc.cols) {
        return Err(Error::Parse(format!("entries are not {}x{}", doc.rows, doc.cols)));
    }
    let entries = doc
        .entries
        .iter()
        .flatten()
        .map(|c| ctx.element(c))
        .collect::<Result<Vec<_>>>()?;
    Mat::new(&ctx, doc.rows, doc.cols, entries)
}

/// Versioned report; wall-clock time is left out so that reports from
/// runs with different thread counts compare byte for byte.
pub fn report_to_json(r: &VerifyReport) -> serde_json::Value {
    let (rows, cols) = match &r.witness {
        Some(w) => (json!(w.rows.as_slice()), json!(w.cols.as_slice())),
        None => (serde_json::Value::Null, serde_json::Value::Null),
    };
    json!({
        "schema": 1,
        "index_base": 0,
        "check": if r.block_size.is_some() { "block_superregular" } else { "superregular" },
        "block_size": r.block_size,
        "verdict": r.verdict,
        "witness_rows": rows,
        "witness_cols": cols,
        "minors_checked": r.minors_checked,
    })
}

pub fn minor_table_to_json(t: &MinorTable) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = t
        .iter()
        .map(|(r, c, v)| {
            json!({
                "rows": r.as_slice(),
                "cols": c.as_slice(),
                "det": v.coeffs(),
            })
        })
        .collect();
    json!({
        "schema": 1,
        "index_base": 0,
        "k": t.k,
        "minors": entries,
    })
}
