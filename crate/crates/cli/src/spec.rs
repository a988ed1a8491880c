//! The analysis spec format: a TOML or JSON document with `group`,
//! `cocycle` and optional `options` and `name` entries. Unknown keys are
//! rejected.

use std::fmt;

use kleppner_core::circle::CircleValue;
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisSpec {
    pub name: Option<String>,
    pub group: GroupSpec,
    pub cocycle: CocycleSpec,
    pub options: Options,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GroupSpec {
    Finite {
        name: Option<String>,
        table: Vec<Vec<u32>>,
        names: Option<Vec<String>>,
    },
    Trivial,
    Cyclic(u32),
    Dihedral(u32),
    Quaternion,
    ElementaryAbelian { p: u32, k: u32 },
    FreeAbelian(usize),
    InfiniteDihedral,
    Heisenberg,
    BaumslagSolitar(u32),
    FreeProduct(u32),
    Lamplighter,
    DirectProduct(Vec<GroupSpec>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum HomImage {
    Vector(Vec<i64>),
    Index(u32),
    Name(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum CocycleSpec {
    Trivial,
    Bicharacter(Vec<Vec<CircleValue>>),
    Table(Vec<Vec<CircleValue>>),
    /// Generator images keyed by generator name.
    Pullback {
        hom: Vec<(String, HomImage)>,
        target: Option<GroupSpec>,
        inner: Box<CocycleSpec>,
    },
    Product(Vec<CocycleSpec>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub effort: u32,
    pub seed: u64,
    pub oracle: bool,
    pub theta_numeric: Option<f64>,
    pub report: ReportFormat,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            effort: 20,
            seed: 0,
            oracle: false,
            theta_numeric: None,
            report: ReportFormat::Text,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecErrorKind {
    Syntax,
    UnknownFamily,
    UnknownCocycleType,
    InvalidFraction,
    UnknownKey,
    MissingKey,
    InvalidValue,
}

impl SpecErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpecErrorKind::Syntax => "syntax error",
            SpecErrorKind::UnknownFamily => "unknown family",
            SpecErrorKind::UnknownCocycleType => "unknown cocycle type",
            SpecErrorKind::InvalidFraction => "invalid fraction",
            SpecErrorKind::UnknownKey => "unknown key",
            SpecErrorKind::MissingKey => "missing key",
            SpecErrorKind::InvalidValue => "invalid value",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub kind: SpecErrorKind,
    pub line: usize,
    pub column: usize,
    /// Dotted path of the offending key, empty for syntax errors.
    pub path: String,
    pub message: String,
    pub suggestion: Option<String>,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.kind.as_str(), self.message)?;
        if !self.path.is_empty() {
            write!(f, " (at `{}`)", self.path)?;
        }
        if let Some(s) = &self.suggestion {
            write!(f, "; did you mean `{s}`?")?;
        }
        Ok(())
    }
}

impl std::error::Error for SpecError {}

pub const FAMILIES: &[&str] = &[
    "finite",
    "trivial",
    "cyclic",
    "dihedral",
    "quaternion",
    "elementary_abelian",
    "free_abelian",
    "infinite_dihedral",
    "heisenberg",
    "baumslag_solitar",
    "free_product",
    "lamplighter",
    "direct_product",
];

pub const COCYCLE_TYPES: &[&str] = &["trivial", "bicharacter", "table", "pullback", "product"];

/// Closest candidate within edit distance 3.
pub fn suggest(word: &str, candidates: &[&str]) -> Option<String> {
    candidates
        .iter()
        .map(|c| (strsim::levenshtein(word, c), *c))
        .filter(|(d, _)| *d <= 3)
        .min()
        .map(|(_, c)| c.to_string())
}

#[derive(Clone)]
enum Seg {
    Key(String),
    Index(usize),
}

struct Parser<'a> {
    source: &'a str,
}

type Path = Vec<Seg>;

fn push(path: &Path, seg: Seg) -> Path {
    let mut p = path.clone();
    p.push(seg);
    p
}

fn key(path: &Path, k: &str) -> Path {
    push(path, Seg::Key(k.to_string()))
}

fn dotted(path: &Path) -> String {
    let mut out = String::new();
    for seg in path {
        match seg {
            Seg::Key(k) => {
                if !out.is_empty() {
                    out.push('.');
                }
                out.push_str(k);
            }
            Seg::Index(i) => out.push_str(&format!("[{i}]")),
        }
    }
    out
}

fn is_ident(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

impl<'a> Parser<'a> {
    /// Best-effort source position of the last key in `path`, optionally
    /// narrowed to a string value occurring after it.
    fn locate(&self, path: &Path, value: Option<&str>) -> (usize, usize) {
        let src = self.source;
        let mut pos = 0;
        for seg in path {
            let Seg::Key(k) = seg else { continue };
            let mut from = pos;
            while let Some(i) = src[from..].find(k.as_str()).map(|i| i + from) {
                let before = src[..i].chars().next_back();
                let after_idx = i + k.len();
                let rest = src[after_idx..].trim_start_matches('"').trim_start();
                let after = src[after_idx..].chars().next();
                let bounded = !before.is_some_and(is_ident) && !after.is_some_and(is_ident);
                if bounded && rest.starts_with([':', '=', '.', ']']) {
                    pos = i;
                    break;
                }
                from = after_idx;
            }
        }
        if let Some(v) = value {
            if let Some(i) = src[pos..].find(v) {
                pos += i;
            }
        }
        line_col(src, pos)
    }

    fn error(&self, kind: SpecErrorKind, path: &Path, message: String) -> SpecError {
        let (line, column) = self.locate(path, None);
        SpecError {
            kind,
            line,
            column,
            path: dotted(path),
            message,
            suggestion: None,
        }
    }

    fn error_at_value(&self, kind: SpecErrorKind, path: &Path, value: &str, message: String) -> SpecError {
        let (line, column) = self.locate(path, Some(value));
        SpecError {
            kind,
            line,
            column,
            path: dotted(path),
            message,
            suggestion: None,
        }
    }

    fn object<'v>(&self, v: &'v Value, path: &Path, allowed: &[&str]) -> Result<&'v Map<String, Value>, SpecError> {
        let obj = v
            .as_object()
            .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, path, "expected a table".into()))?;
        for k in obj.keys() {
            if !allowed.contains(&k.as_str()) {
                let mut e = self.error(SpecErrorKind::UnknownKey, &key(path, k), format!("unknown key `{k}`"));
                e.suggestion = suggest(k, allowed);
                return Err(e);
            }
        }
        Ok(obj)
    }

    fn required<'v>(&self, obj: &'v Map<String, Value>, path: &Path, k: &str) -> Result<&'v Value, SpecError> {
        obj.get(k)
            .ok_or_else(|| self.error(SpecErrorKind::MissingKey, path, format!("missing key `{k}`")))
    }

    fn uint(&self, v: &Value, path: &Path, min: u64, max: u64) -> Result<u64, SpecError> {
        match v.as_u64() {
            Some(n) if (min..=max).contains(&n) => Ok(n),
            _ => Err(self.error(
                SpecErrorKind::InvalidValue,
                path,
                format!("expected an integer in {min}..={max}, found {v}"),
            )),
        }
    }

    fn int_vec(&self, v: &Value, path: &Path) -> Result<Vec<i64>, SpecError> {
        let arr = v
            .as_array()
            .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, path, "expected an integer array".into()))?;
        arr.iter()
            .map(|x| {
                x.as_i64()
                    .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, path, format!("expected an integer, found {x}")))
            })
            .collect()
    }

    fn string(&self, v: &Value, path: &Path) -> Result<String, SpecError> {
        v.as_str()
            .map(str::to_string)
            .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, path, format!("expected a string, found {v}")))
    }

    fn circle(&self, v: &Value, path: &Path) -> Result<CircleValue, SpecError> {
        match v {
            Value::String(s) => s.parse().map_err(|e| {
                self.error_at_value(SpecErrorKind::InvalidFraction, path, s, format!("`{s}`: {e}"))
            }),
            Value::Number(n) if n.is_i64() => Ok(CircleValue::from_fraction(n.as_i64().unwrap_or(0), 1)),
            other => Err(self.error(
                SpecErrorKind::InvalidFraction,
                path,
                format!("expected a fraction string such as \"1/3\" or \"theta\", found {other}"),
            )),
        }
    }

    fn circle_matrix(&self, v: &Value, path: &Path) -> Result<Vec<Vec<CircleValue>>, SpecError> {
        let rows = v
            .as_array()
            .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, path, "expected a matrix".into()))?;
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, path, "expected a matrix row".into()))?;
            if row.len() != rows.len() {
                return Err(self.error(SpecErrorKind::InvalidValue, path, "matrix must be square".into()));
            }
            out.push(row.iter().map(|x| self.circle(x, path)).collect::<Result<Vec<_>, _>>()?);
        }
        Ok(out)
    }

    fn group(&self, v: &Value, path: &Path) -> Result<GroupSpec, SpecError> {
        let obj = v
            .as_object()
            .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, path, "expected a table".into()))?;
        let fam_path = key(path, "family");
        let family = self.string(self.required(obj, path, "family")?, &fam_path)?;
        let allowed: &[&str] = match family.as_str() {
            "finite" => &["family", "name", "table", "names"],
            "cyclic" | "dihedral" | "baumslag_solitar" | "free_product" => &["family", "n"],
            "elementary_abelian" => &["family", "p", "k"],
            "free_abelian" => &["family", "rank"],
            "direct_product" => &["family", "factors"],
            "trivial" | "quaternion" | "infinite_dihedral" | "heisenberg" | "lamplighter" => &["family"],
            other => {
                let mut e = self.error_at_value(
                    SpecErrorKind::UnknownFamily,
                    &fam_path,
                    other,
                    format!("unknown group family `{other}`"),
                );
                e.suggestion = suggest(other, FAMILIES);
                return Err(e);
            }
        };
        let obj = self.object(v, path, allowed)?;
        let n = |min: u64| -> Result<u32, SpecError> {
            Ok(self.uint(self.required(obj, path, "n")?, &key(path, "n"), min, 256)? as u32)
        };
        Ok(match family.as_str() {
            "finite" => {
                let tpath = key(path, "table");
                let rows = self
                    .required(obj, path, "table")?
                    .as_array()
                    .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, &tpath, "expected a table of rows".into()))?;
                let table = rows
                    .iter()
                    .map(|r| {
                        self.int_vec(r, &tpath)?
                            .into_iter()
                            .map(|x| {
                                u32::try_from(x).map_err(|_| {
                                    self.error(SpecErrorKind::InvalidValue, &tpath, format!("negative entry {x}"))
                                })
                            })
                            .collect()
                    })
                    .collect::<Result<Vec<Vec<u32>>, _>>()?;
                let names = match obj.get("names") {
                    Some(v) => {
                        let npath = key(path, "names");
                        let arr = v.as_array().ok_or_else(|| {
                            self.error(SpecErrorKind::InvalidValue, &npath, "expected a string array".into())
                        })?;
                        Some(arr.iter().map(|x| self.string(x, &npath)).collect::<Result<_, _>>()?)
                    }
                    None => None,
                };
                let name = obj.get("name").map(|v| self.string(v, &key(path, "name"))).transpose()?;
                GroupSpec::Finite { name, table, names }
            }
            "trivial" => GroupSpec::Trivial,
            "cyclic" => GroupSpec::Cyclic(n(1)?),
            "dihedral" => GroupSpec::Dihedral(n(1)?),
            "quaternion" => GroupSpec::Quaternion,
            "elementary_abelian" => GroupSpec::ElementaryAbelian {
                p: self.uint(self.required(obj, path, "p")?, &key(path, "p"), 2, 256)? as u32,
                k: self.uint(self.required(obj, path, "k")?, &key(path, "k"), 0, 8)? as u32,
            },
            "free_abelian" => {
                GroupSpec::FreeAbelian(self.uint(self.required(obj, path, "rank")?, &key(path, "rank"), 0, 16)? as usize)
            }
            "infinite_dihedral" => GroupSpec::InfiniteDihedral,
            "heisenberg" => GroupSpec::Heisenberg,
            "baumslag_solitar" => GroupSpec::BaumslagSolitar(n(2)?),
            "free_product" => GroupSpec::FreeProduct(n(2)?),
            "lamplighter" => GroupSpec::Lamplighter,
            "direct_product" => {
                let fpath = key(path, "factors");
                let arr = self
                    .required(obj, path, "factors")?
                    .as_array()
                    .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, &fpath, "expected an array of groups".into()))?;
                let factors = arr
                    .iter()
                    .enumerate()
                    .map(|(i, f)| self.group(f, &push(&fpath, Seg::Index(i))))
                    .collect::<Result<_, _>>()?;
                GroupSpec::DirectProduct(factors)
            }
            _ => unreachable!("family checked above"),
        })
    }

    fn cocycle(&self, v: &Value, path: &Path) -> Result<CocycleSpec, SpecError> {
        let obj = v
            .as_object()
            .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, path, "expected a table".into()))?;
        let type_path = key(path, "type");
        let ty = self.string(self.required(obj, path, "type")?, &type_path)?;
        let allowed: &[&str] = match ty.as_str() {
            "trivial" => &["type"],
            "bicharacter" => &["type", "theta_matrix"],
            "table" => &["type", "values"],
            "pullback" => &["type", "hom", "target", "inner"],
            "product" => &["type", "factors"],
            other => {
                let mut e = self.error_at_value(
                    SpecErrorKind::UnknownCocycleType,
                    &type_path,
                    other,
                    format!("unknown cocycle type `{other}`"),
                );
                e.suggestion = suggest(other, COCYCLE_TYPES);
                return Err(e);
            }
        };
        let obj = self.object(v, path, allowed)?;
        Ok(match ty.as_str() {
            "trivial" => CocycleSpec::Trivial,
            "bicharacter" => {
                let p = key(path, "theta_matrix");
                CocycleSpec::Bicharacter(self.circle_matrix(self.required(obj, path, "theta_matrix")?, &p)?)
            }
            "table" => {
                let p = key(path, "values");
                CocycleSpec::Table(self.circle_matrix(self.required(obj, path, "values")?, &p)?)
            }
            "pullback" => {
                let hpath = key(path, "hom");
                let hom_obj = self
                    .required(obj, path, "hom")?
                    .as_object()
                    .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, &hpath, "expected a table".into()))?;
                let mut hom = Vec::with_capacity(hom_obj.len());
                for (name, image) in hom_obj {
                    let ipath = key(&hpath, name);
                    let image = match image {
                        Value::Array(_) => HomImage::Vector(self.int_vec(image, &ipath)?),
                        Value::String(s) => HomImage::Name(s.clone()),
                        Value::Number(_) => HomImage::Index(self.uint(image, &ipath, 0, u64::from(u32::MAX))? as u32),
                        other => {
                            return Err(self.error(
                                SpecErrorKind::InvalidValue,
                                &ipath,
                                format!("expected an integer vector or a target element, found {other}"),
                            ))
                        }
                    };
                    hom.push((name.clone(), image));
                }
                let target = obj.get("target").map(|t| self.group(t, &key(path, "target"))).transpose()?;
                let inner = self.cocycle(self.required(obj, path, "inner")?, &key(path, "inner"))?;
                CocycleSpec::Pullback {
                    hom,
                    target,
                    inner: Box::new(inner),
                }
            }
            "product" => {
                let fpath = key(path, "factors");
                let arr = self
                    .required(obj, path, "factors")?
                    .as_array()
                    .ok_or_else(|| self.error(SpecErrorKind::InvalidValue, &fpath, "expected an array of cocycles".into()))?;
                CocycleSpec::Product(
                    arr.iter()
                        .enumerate()
                        .map(|(i, c)| self.cocycle(c, &push(&fpath, Seg::Index(i))))
                        .collect::<Result<_, _>>()?,
                )
            }
            _ => unreachable!("type checked above"),
        })
    }

    fn options(&self, v: Option<&Value>) -> Result<Options, SpecError> {
        let mut o = Options::default();
        let Some(v) = v else { return Ok(o) };
        let path = vec![Seg::Key("options".into())];
        let obj = self.object(v, &path, &["effort", "seed", "oracle", "theta_numeric", "report"])?;
        if let Some(x) = obj.get("effort") {
            o.effort = self.uint(x, &key(&path, "effort"), 0, 1000)? as u32;
        }
        if let Some(x) = obj.get("seed") {
            o.seed = self.uint(x, &key(&path, "seed"), 0, u64::MAX)?;
        }
        if let Some(x) = obj.get("oracle") {
            o.oracle = x.as_bool().ok_or_else(|| {
                self.error(SpecErrorKind::InvalidValue, &key(&path, "oracle"), format!("expected a boolean, found {x}"))
            })?;
        }
        if let Some(x) = obj.get("theta_numeric") {
            o.theta_numeric = Some(x.as_f64().filter(|f| f.is_finite()).ok_or_else(|| {
                self.error(
                    SpecErrorKind::InvalidValue,
                    &key(&path, "theta_numeric"),
                    format!("expected a real number, found {x}"),
                )
            })?);
        }
        if let Some(x) = obj.get("report") {
            let p = key(&path, "report");
            o.report = match self.string(x, &p)?.as_str() {
                "text" => ReportFormat::Text,
                "json" => ReportFormat::Json,
                other => {
                    let mut e = self.error(SpecErrorKind::InvalidValue, &p, format!("unknown report format `{other}`"));
                    e.suggestion = suggest(other, &["text", "json"]);
                    return Err(e);
                }
            };
        }
        Ok(o)
    }
}

fn syntax(line: usize, column: usize, message: String) -> SpecError {
    SpecError {
        kind: SpecErrorKind::Syntax,
        line,
        column,
        path: String::new(),
        message,
        suggestion: None,
    }
}

/// Parses a spec written in JSON (when the document starts with `{`) or
/// TOML.
pub fn parse_spec(document: &str) -> Result<AnalysisSpec, SpecError> {
    let value: Value = if document.trim_start().starts_with('{') {
        serde_json::from_str(document).map_err(|e| syntax(e.line(), e.column(), e.to_string()))?
    } else {
        toml::from_str(document).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_col(document, s.start));
            syntax(line, column, e.message().to_string())
        })?
    };
    let p = Parser { source: document };
    let root: Path = Vec::new();
    let obj = p.object(&value, &root, &["name", "group", "cocycle", "options"])?;
    let name = obj.get("name").map(|v| p.string(v, &key(&root, "name"))).transpose()?;
    let group = p.group(p.required(obj, &root, "group")?, &key(&root, "group"))?;
    let cocycle = p.cocycle(p.required(obj, &root, "cocycle")?, &key(&root, "cocycle"))?;
    let options = p.options(obj.get("options"))?;
    Ok(AnalysisSpec {
        name,
        group,
        cocycle,
        options,
    })
}
