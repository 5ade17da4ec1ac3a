//! JSON file formats. Every top-level document carries `"format_version": 1`;
//! rationals are strings such as `"-3/2"` (plain integers are accepted on
//! input), and indices are 1-based.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::liealg::{BasisChange, LeviData, LieAlgebra, SolvableSplit};
use crate::polyring::{format_rational, parse_rational, PolyMatrix, Polynomial, Rational};
use crate::realize::{FactoredAutomorphism, Realization, SignConvention, Witness};
use crate::tensorlie::TensorElement;
use crate::verify::{BasicReport, BracketFailure, CompatReport, CompatResidual, Report, TraceEntry, TraceReport};
use crate::vectorfield::{FieldFamily, VectorField};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Versioned<T> {
    format_version: u32,
    #[serde(flatten)]
    body: T,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn write_doc<T: Serialize>(body: T) -> String {
    let doc = Versioned { format_version: FORMAT_VERSION, body };
    let mut s = serde_json::to_string_pretty(&doc).expect("documents serialize");
    s.push('\n');
    s
}

fn read_value(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    match v.get("format_version").and_then(Value::as_u64) {
        Some(1) => Ok(v),
        Some(other) => Err(Error::Parse(format!("unsupported format_version {other}"))),
        None => Err(Error::Parse("missing format_version".into())),
    }
}

fn read_doc<T: DeserializeOwned>(text: &str) -> Result<T> {
    let v = read_value(text)?;
    serde_json::from_value::<Versioned<T>>(v).map(|d| d.body).map_err(parse_err)
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
enum RatText {
    Text(String),
    Int(i64),
}

impl RatText {
    fn of(r: &Rational) -> Self {
        RatText::Text(format_rational(r))
    }

    fn get(&self) -> Result<Rational> {
        match self {
            RatText::Text(s) => parse_rational(s),
            RatText::Int(i) => Ok(crate::polyring::int(*i)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermDto {
    coeff: RatText,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyDto {
    n: usize,
    terms: Vec<TermDto>,
}

impl PolyDto {
    fn of(p: &Polynomial) -> Self {
        PolyDto {
            n: p.nvars(),
            terms: p.terms().map(|(m, c)| TermDto { coeff: RatText::of(c), exps: m.exps().to_vec() }).collect(),
        }
    }

    fn get(&self) -> Result<Polynomial> {
        let terms = self.terms.iter().map(|t| Ok((t.exps.clone(), t.coeff.get()?))).collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(self.n, terms)
    }
}

fn polys(ps: &[Polynomial]) -> Vec<PolyDto> {
    ps.iter().map(PolyDto::of).collect()
}

fn get_polys(ds: &[PolyDto], nvars: usize) -> Result<Vec<Polynomial>> {
    ds.iter()
        .map(|d| {
            let p = d.get()?;
            if p.nvars() != nvars {
                return Err(Error::VariableMismatch { left: nvars, right: p.nvars() });
            }
            Ok(p)
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct BracketDto {
    i: usize,
    j: usize,
    k: usize,
    c: RatText,
}

#[derive(Serialize, Deserialize)]
struct AlgebraDto {
    dim: usize,
    brackets: Vec<BracketDto>,
}

impl AlgebraDto {
    fn of(alg: &LieAlgebra) -> Self {
        AlgebraDto {
            dim: alg.dim(),
            brackets: alg
                .brackets()
                .map(|(i, j, k, c)| BracketDto { i: i + 1, j: j + 1, k: k + 1, c: RatText::of(c) })
                .collect(),
        }
    }

    fn get(&self) -> Result<LieAlgebra> {
        let entries = self
            .brackets
            .iter()
            .map(|b| {
                for idx in [b.i, b.j, b.k] {
                    if idx == 0 || idx > self.dim {
                        return Err(Error::IndexOutOfRange { index: idx, dim: self.dim });
                    }
                }
                if b.i >= b.j {
                    return Err(Error::InvalidBracket { i: b.i, j: b.j, reason: "need i < j".into() });
                }
                Ok((b.i - 1, b.j - 1, b.k - 1, b.c.get()?))
            })
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::from_brackets(self.dim, entries)
    }
}

pub fn algebra_to_json(alg: &LieAlgebra) -> String {
    write_doc(AlgebraDto::of(alg))
}

pub fn algebra_from_json(text: &str) -> Result<LieAlgebra> {
    read_doc::<AlgebraDto>(text)?.get()
}

/// Contents of a split file: Levi data, a solvable split, or both (the
/// general construction needs the Levi data and a split of its prefix).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SplitFile {
    pub levi: Option<LeviData>,
    pub solvable: Option<SolvableSplit>,
}

#[derive(Serialize, Deserialize)]
struct LeviDto {
    m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    solvable_dim: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct SolvableDto {
    k: usize,
    m: usize,
}

#[derive(Serialize, Deserialize)]
struct SplitDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    levi: Option<LeviDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    solvable: Option<SolvableDto>,
}

pub fn split_to_json(split: &SplitFile) -> String {
    write_doc(SplitDto {
        levi: split.levi.map(|l| LeviDto { m: l.borel_end, solvable_dim: l.solvable_dim }),
        solvable: split.solvable.map(|s| SolvableDto { k: s.k, m: s.m }),
    })
}

pub fn split_from_json(text: &str) -> Result<SplitFile> {
    let d: SplitDto = read_doc(text)?;
    if d.levi.is_none() && d.solvable.is_none() {
        return Err(Error::Parse("split file needs \"levi\" and/or \"solvable\"".into()));
    }
    Ok(SplitFile {
        levi: d.levi.map(|l| LeviData { solvable_dim: l.solvable_dim, borel_end: l.m }),
        solvable: d.solvable.map(|s| SolvableSplit { k: s.k, m: s.m }),
    })
}

#[derive(Serialize, Deserialize)]
struct MatrixDto {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Vec<PolyDto>>,
}

impl MatrixDto {
    fn of(m: &PolyMatrix) -> Self {
        MatrixDto {
            rows: m.rows(),
            cols: m.cols(),
            nvars: m.nvars(),
            entries: (0..m.rows()).map(|i| polys(m.row(i))).collect(),
        }
    }

    fn get(&self) -> Result<PolyMatrix> {
        if self.entries.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.entries.len() });
        }
        let mut flat = Vec::with_capacity(self.rows * self.cols);
        for row in &self.entries {
            if row.len() != self.cols {
                return Err(Error::DimensionMismatch { expected: self.cols, found: row.len() });
            }
            flat.extend(get_polys(row, self.nvars)?);
        }
        PolyMatrix::new(self.rows, self.cols, self.nvars, flat)
    }
}

pub fn matrix_to_json(m: &PolyMatrix) -> String {
    write_doc(MatrixDto::of(m))
}

/// Reads a matrix document, or the `B` matrix of a realization document.
pub fn bmatrix_from_json(text: &str) -> Result<PolyMatrix> {
    let v = read_value(text)?;
    if v.get("B").is_some() {
        return Ok(realization_from_value(v)?.b().clone());
    }
    serde_json::from_value::<Versioned<MatrixDto>>(v).map_err(parse_err)?.body.get()
}

#[derive(Serialize, Deserialize)]
struct TensorDto {
    nvars: usize,
    coords: Vec<PolyDto>,
}

impl TensorDto {
    fn of(t: &TensorElement) -> Self {
        TensorDto { nvars: t.nvars(), coords: polys(t.coords()) }
    }

    fn get(&self) -> Result<TensorElement> {
        TensorElement::new(self.nvars, get_polys(&self.coords, self.nvars)?)
    }
}

pub fn tensor_to_json(t: &TensorElement) -> String {
    write_doc(TensorDto::of(t))
}

pub fn tensor_from_json(text: &str) -> Result<TensorElement> {
    read_doc::<TensorDto>(text)?.get()
}

#[derive(Serialize, Deserialize)]
struct FieldDto {
    coeffs: Vec<PolyDto>,
}

#[derive(Serialize, Deserialize)]
struct FieldsDto {
    n: usize,
    fields: Vec<FieldDto>,
}

impl FieldsDto {
    fn of(fam: &FieldFamily) -> Self {
        FieldsDto {
            n: fam.nvars(),
            fields: fam.fields().iter().map(|d| FieldDto { coeffs: polys(d.coeffs()) }).collect(),
        }
    }

    fn get(&self) -> Result<FieldFamily> {
        let fields = self
            .fields
            .iter()
            .map(|f| {
                if f.coeffs.len() != self.n {
                    return Err(Error::DimensionMismatch { expected: self.n, found: f.coeffs.len() });
                }
                VectorField::new(get_polys(&f.coeffs, self.n)?)
            })
            .collect::<Result<_>>()?;
        FieldFamily::new(self.n, fields)
    }
}

pub fn fields_to_json(fam: &FieldFamily) -> String {
    write_doc(FieldsDto::of(fam))
}

/// Reads a fields document, or the fields of a realization document.
pub fn fields_from_json(text: &str) -> Result<FieldFamily> {
    let v = read_value(text)?;
    if v.get("B").is_some() {
        return Ok(realization_from_value(v)?.fields().clone());
    }
    serde_json::from_value::<Versioned<FieldsDto>>(v).map_err(parse_err)?.body.get()
}

#[derive(Serialize, Deserialize)]
struct WitnessDto {
    w: Option<TensorDto>,
    u: Option<TensorDto>,
    b: Option<TensorDto>,
    basis_change: Option<Vec<Vec<RatText>>>,
    notes: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ConventionDto {
    Proof,
    Normalized,
}

#[derive(Serialize, Deserialize)]
struct RealizationDto {
    algebra: AlgebraDto,
    convention: ConventionDto,
    fields: FieldsDto,
    #[serde(rename = "B")]
    b: MatrixDto,
    #[serde(rename = "A")]
    a: MatrixDto,
    witness: WitnessDto,
}

pub fn realization_to_json(real: &Realization) -> String {
    let w = real.witness();
    let tensor = |t: &Option<TensorElement>| t.as_ref().map(TensorDto::of);
    write_doc(RealizationDto {
        algebra: AlgebraDto::of(real.algebra()),
        convention: match real.convention() {
            SignConvention::Proof => ConventionDto::Proof,
            SignConvention::Normalized => ConventionDto::Normalized,
        },
        fields: FieldsDto::of(real.fields()),
        b: MatrixDto::of(real.b()),
        a: MatrixDto::of(real.a()),
        witness: WitnessDto {
            w: tensor(&w.w),
            u: tensor(&w.u),
            b: tensor(&w.b),
            basis_change: w
                .basis_change
                .as_ref()
                .map(|c| c.matrix().iter().map(|row| row.iter().map(RatText::of).collect()).collect()),
            notes: w.notes.clone(),
        },
    })
}

fn realization_from_value(v: Value) -> Result<Realization> {
    let d = serde_json::from_value::<Versioned<RealizationDto>>(v).map_err(parse_err)?.body;
    let tensor = |t: &Option<TensorDto>| t.as_ref().map(TensorDto::get).transpose();
    let basis_change = d
        .witness
        .basis_change
        .as_ref()
        .map(|rows| {
            let m = rows.iter().map(|r| r.iter().map(RatText::get).collect()).collect::<Result<Vec<Vec<_>>>>()?;
            BasisChange::new(m)
        })
        .transpose()?;
    let witness = Witness {
        w: tensor(&d.witness.w)?,
        u: tensor(&d.witness.u)?,
        b: tensor(&d.witness.b)?,
        basis_change,
        notes: d.witness.notes.clone(),
    };
    let convention = match d.convention {
        ConventionDto::Proof => SignConvention::Proof,
        ConventionDto::Normalized => SignConvention::Normalized,
    };
    Realization::from_parts(d.algebra.get()?, d.fields.get()?, d.b.get()?, d.a.get()?, witness, convention)
}

pub fn realization_from_json(text: &str) -> Result<Realization> {
    realization_from_value(read_value(text)?)
}

#[derive(Serialize, Deserialize)]
struct FactorDto {
    column: usize,
    h: PolyDto,
}

#[derive(Serialize, Deserialize)]
struct FactorsDto {
    factors: Vec<FactorDto>,
}

pub fn factors_to_json(fa: &FactoredAutomorphism) -> String {
    write_doc(FactorsDto {
        factors: fa.factors().iter().map(|(c, h)| FactorDto { column: c + 1, h: PolyDto::of(h) }).collect(),
    })
}

pub fn factors_from_json(text: &str) -> Result<FactoredAutomorphism> {
    let d: FactorsDto = read_doc(text)?;
    let factors = d
        .factors
        .iter()
        .map(|f| {
            if f.column == 0 {
                return Err(Error::IndexOutOfRange { index: 0, dim: 0 });
            }
            Ok((f.column - 1, f.h.get()?))
        })
        .collect::<Result<_>>()?;
    FactoredAutomorphism::new(factors)
}

#[derive(Serialize, Deserialize)]
struct PolysDto {
    n: usize,
    polys: Vec<PolyDto>,
}

pub fn polys_to_json(ps: &[Polynomial]) -> String {
    write_doc(PolysDto { n: ps.first().map_or(0, Polynomial::nvars), polys: polys(ps) })
}

pub fn polys_from_json(text: &str) -> Result<Vec<Polynomial>> {
    let d: PolysDto = read_doc(text)?;
    get_polys(&d.polys, d.n)
}

#[derive(Serialize, Deserialize)]
struct BracketFailureDto {
    i: usize,
    j: usize,
    bracket: Vec<PolyDto>,
    expected: Vec<PolyDto>,
}

#[derive(Serialize, Deserialize)]
struct ResidualDto {
    p: usize,
    q: usize,
    k: usize,
    residual: PolyDto,
}

#[derive(Serialize, Deserialize)]
struct TraceDto {
    element: Vec<RatText>,
    trace: RatText,
    divergence: PolyDto,
    ok: bool,
}

#[derive(Serialize, Deserialize)]
struct ReportDto {
    verdict: bool,
    det: Option<PolyDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shape_error: Option<String>,
    bracket_failures: Vec<BracketFailureDto>,
    /// Absent when no matrix `B` was checked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    compat_residuals: Option<Vec<ResidualDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    compat_shape_error: Option<String>,
    trace_div: Vec<TraceDto>,
    notes: Vec<String>,
}

pub fn report_to_json(r: &Report) -> String {
    write_doc(ReportDto {
        verdict: r.verdict(),
        det: r.basic.det.as_ref().map(PolyDto::of),
        shape_error: r.basic.shape_error.clone(),
        bracket_failures: r
            .basic
            .bracket_failures
            .iter()
            .map(|b| BracketFailureDto {
                i: b.i,
                j: b.j,
                bracket: polys(b.bracket.coeffs()),
                expected: polys(b.expected.coeffs()),
            })
            .collect(),
        compat_residuals: r.compat.as_ref().map(|c| {
            c.residuals
                .iter()
                .map(|x| ResidualDto { p: x.p, q: x.q, k: x.k, residual: PolyDto::of(&x.residual) })
                .collect()
        }),
        compat_shape_error: r.compat.as_ref().and_then(|c| c.shape_error.clone()),
        trace_div: r
            .trace
            .entries
            .iter()
            .map(|e| TraceDto {
                element: e.element.iter().map(RatText::of).collect(),
                trace: RatText::of(&e.trace),
                divergence: PolyDto::of(&e.divergence),
                ok: e.holds(),
            })
            .collect(),
        notes: r.notes.clone(),
    })
}

pub fn report_from_json(text: &str) -> Result<Report> {
    let d: ReportDto = read_doc(text)?;
    let field = |ps: &[PolyDto]| -> Result<VectorField> {
        VectorField::new(ps.iter().map(PolyDto::get).collect::<Result<_>>()?)
    };
    let basic = BasicReport {
        det: d.det.as_ref().map(PolyDto::get).transpose()?,
        shape_error: d.shape_error.clone(),
        bracket_failures: d
            .bracket_failures
            .iter()
            .map(|b| Ok(BracketFailure { i: b.i, j: b.j, bracket: field(&b.bracket)?, expected: field(&b.expected)? }))
            .collect::<Result<_>>()?,
    };
    let compat = match (&d.compat_residuals, &d.compat_shape_error) {
        (None, None) => None,
        (rs, shape) => Some(CompatReport {
            shape_error: shape.clone(),
            residuals: rs
                .iter()
                .flatten()
                .map(|x| Ok(CompatResidual { p: x.p, q: x.q, k: x.k, residual: x.residual.get()? }))
                .collect::<Result<_>>()?,
        }),
    };
    let trace = TraceReport {
        entries: d
            .trace_div
            .iter()
            .map(|e| {
                Ok(TraceEntry {
                    element: e.element.iter().map(RatText::get).collect::<Result<_>>()?,
                    trace: e.trace.get()?,
                    divergence: e.divergence.get()?,
                })
            })
            .collect::<Result<_>>()?,
    };
    let report = Report { basic, compat, trace, notes: d.notes };
    if report.verdict() != d.verdict {
        return Err(Error::Parse("stored verdict disagrees with the stored checks".into()));
    }
    Ok(report)
}
