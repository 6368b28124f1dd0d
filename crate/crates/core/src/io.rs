//! Reading and writing invariant data and reports.
//!
//! The on-disk format is JSON (UTF-8, whitespace-insensitive). A single
//! class looks like
//!
//! ```json
//! { "version": "1",
//!   "surface": {"genus": 2, "boundary": 2},
//!   "fr": ["5/3", "1/3"],
//!   "orbits": [ {"id": "O1", "length": 1, "kind": "regular",
//!                "separating": false, "screw": "1/2"} ] }
//! ```
//!
//! and a batch replaces the class fields with
//! `"batch": [ {"name": "...", "surface": ..., "fr": ..., "orbits": ...} ]`.
//! Rationals are `"p/q"` strings or integers; floating-point numerals are
//! rejected. Serialization is canonical: fixed key order, two-space
//! indentation, rationals always written as reduced strings.

use std::collections::HashSet;
use std::fmt;
use std::marker::PhantomData;

use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::nt::{CurveOrbit, NtClass, Surface};
use crate::rational::Rational;
use crate::report::Report;

pub const FORMAT_VERSION: &str = "1";

const INVARIANT_PREFIX: &str = "invariant violation: ";
const RATIONAL_PREFIX: &str = "invalid rational ";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Not well-formed JSON, including truncated input.
    Syntax,
    /// Well-formed but with missing, unknown or mistyped fields.
    Schema,
    /// The data breaks an invariant of [`NtClass`] or the document.
    Invariant,
    /// A rational failed to parse, e.g. a zero denominator.
    Rational,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Schema => "schema violation",
            ParseErrorKind::Invariant => "invariant violation",
            ParseErrorKind::Rational => "rational parse failure",
        })
    }
}

/// A rejected input, with the 1-based line and column where the decoder
/// stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at line {}, column {}: {}", self.kind, self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        let full = e.to_string();
        let message = match full.rsplit_once(" at line ") {
            Some((msg, _)) => msg.to_string(),
            None => full,
        };
        let kind = match e.classify() {
            Category::Syntax | Category::Eof | Category::Io => ParseErrorKind::Syntax,
            Category::Data if message.starts_with(INVARIANT_PREFIX) => ParseErrorKind::Invariant,
            Category::Data if message.starts_with(RATIONAL_PREFIX) => ParseErrorKind::Rational,
            Category::Data => ParseErrorKind::Schema,
        };
        let message = message.strip_prefix(INVARIANT_PREFIX).map(str::to_string).unwrap_or(message);
        ParseError { kind, message, line: e.line(), column: e.column() }
    }
}

/// Serialized shape of an [`NtClass`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassWire {
    surface: Surface,
    fr: Vec<Rational>,
    #[serde(default)]
    orbits: Vec<CurveOrbit>,
}

impl TryFrom<ClassWire> for NtClass {
    type Error = String;

    fn try_from(w: ClassWire) -> Result<Self, String> {
        NtClass::new(w.surface, w.fr, w.orbits).map_err(|e| format!("{INVARIANT_PREFIX}{e}"))
    }
}

impl From<NtClass> for ClassWire {
    fn from(c: NtClass) -> Self {
        ClassWire { surface: c.surface(), fr: c.fr().to_vec(), orbits: c.orbits().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedClass {
    pub name: String,
    pub class: NtClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Single(NtClass),
    Batch(Vec<NamedClass>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "DocumentWire")]
pub struct Document {
    pub version: String,
    pub payload: Payload,
}

impl Document {
    pub fn single(class: NtClass) -> Self {
        Document { version: FORMAT_VERSION.to_string(), payload: Payload::Single(class) }
    }

    pub fn batch(entries: Vec<NamedClass>) -> Self {
        Document { version: FORMAT_VERSION.to_string(), payload: Payload::Batch(entries) }
    }

    /// Entries in input order; a single class has no name.
    pub fn entries(&self) -> Vec<(Option<&str>, &NtClass)> {
        match &self.payload {
            Payload::Single(c) => vec![(None, c)],
            Payload::Batch(v) => v.iter().map(|e| (Some(e.name.as_str()), &e.class)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BatchEntryWire {
    name: String,
    surface: Surface,
    fr: Vec<Rational>,
    #[serde(default)]
    orbits: Vec<CurveOrbit>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentWire {
    version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    surface: Option<Surface>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    fr: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    orbits: Option<Vec<CurveOrbit>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    batch: Option<Vec<BatchEntryWire>>,
}

impl TryFrom<DocumentWire> for Document {
    type Error = String;

    fn try_from(w: DocumentWire) -> Result<Self, String> {
        if w.version != FORMAT_VERSION {
            return Err(format!("unsupported version {:?}, expected {FORMAT_VERSION:?}", w.version));
        }
        let payload = match (w.batch, w.surface, w.fr, w.orbits) {
            (Some(batch), None, None, None) => {
                let mut names = HashSet::new();
                let mut entries = Vec::with_capacity(batch.len());
                for (i, e) in batch.into_iter().enumerate() {
                    if !names.insert(e.name.clone()) {
                        return Err(format!("{INVARIANT_PREFIX}batch[{i}]: duplicate entry name {:?}", e.name));
                    }
                    let class = NtClass::new(e.surface, e.fr, e.orbits)
                        .map_err(|err| format!("{INVARIANT_PREFIX}batch[{i}] ({}): {err}", e.name))?;
                    entries.push(NamedClass { name: e.name, class });
                }
                Payload::Batch(entries)
            }
            (Some(_), ..) => return Err("a batch document must not carry surface, fr or orbits".to_string()),
            (None, Some(surface), Some(fr), orbits) => Payload::Single(
                NtClass::new(surface, fr, orbits.unwrap_or_default()).map_err(|e| format!("{INVARIANT_PREFIX}{e}"))?,
            ),
            (None, None, _, _) => return Err("missing field `surface`".to_string()),
            (None, Some(_), None, _) => return Err("missing field `fr`".to_string()),
        };
        Ok(Document { version: w.version, payload })
    }
}

impl From<Document> for DocumentWire {
    fn from(d: Document) -> Self {
        match d.payload {
            Payload::Single(c) => DocumentWire {
                version: d.version,
                surface: Some(c.surface()),
                fr: Some(c.fr().to_vec()),
                orbits: Some(c.orbits().to_vec()),
                batch: None,
            },
            Payload::Batch(v) => DocumentWire {
                version: d.version,
                surface: None,
                fr: None,
                orbits: None,
                batch: Some(
                    v.into_iter()
                        .map(|e| BatchEntryWire {
                            name: e.name,
                            surface: e.class.surface(),
                            fr: e.class.fr().to_vec(),
                            orbits: e.class.orbits().to_vec(),
                        })
                        .collect(),
                ),
            },
        }
    }
}

/// Decodes an object as `W` and converts it to `T` while the decoder is
/// still inside the object, so conversion failures carry a position.
struct Validating<W, T>(PhantomData<(W, T)>);

impl<'de, W, T> Visitor<'de> for Validating<W, T>
where
    W: Deserialize<'de>,
    T: TryFrom<W, Error = String>,
{
    type Value = T;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an object")
    }

    fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<T, A::Error> {
        let wire = W::deserialize(de::value::MapAccessDeserializer::new(map))?;
        T::try_from(wire).map_err(de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for NtClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_map(Validating::<ClassWire, NtClass>(PhantomData))
    }
}

impl<'de> Deserialize<'de> for Document {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_map(Validating::<DocumentWire, Document>(PhantomData))
    }
}

pub fn parse(input: &[u8]) -> Result<Document, ParseError> {
    Ok(serde_json::from_slice(input)?)
}

pub fn parse_str(input: &str) -> Result<Document, ParseError> {
    parse(input.as_bytes())
}

fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializing in-memory values cannot fail");
    out.push('\n');
    out
}

/// Canonical text of a document.
pub fn serialize(doc: &Document) -> String {
    to_canonical(doc)
}

pub fn parse_report(input: &[u8]) -> Result<Report, ParseError> {
    let report: Report = serde_json::from_slice(input)?;
    if report.version != FORMAT_VERSION {
        return Err(ParseError {
            kind: ParseErrorKind::Schema,
            message: format!("unsupported report version {:?}", report.version),
            line: 1,
            column: 1,
        });
    }
    Ok(report)
}

pub fn serialize_report(report: &Report) -> String {
    to_canonical(report)
}
