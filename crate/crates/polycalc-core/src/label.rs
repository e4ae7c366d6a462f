use crate::error::{Error, Result};
use serde_json::Value;
use std::fmt;
use std::sync::Arc;

/// Structured element label: a finite tree of strings and integers.
///
/// Every composite construction in the library (pairs, sections, function
/// tables, morphisms-as-positions) is encoded as a label tree, so values
/// serialize canonically and ordering is deterministic across runs. The
/// ordering is the derived structural order with `Int < Str < Seq`.
/// Subtrees are shared, so cloning a label is cheap however deep it is.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Int(i64),
    Str(String),
    Seq(Arc<Vec<Label>>),
}

impl Label {
    pub fn int(n: i64) -> Self {
        Label::Int(n)
    }

    pub fn str(s: impl Into<String>) -> Self {
        Label::Str(s.into())
    }

    pub fn seq(items: Vec<Label>) -> Self {
        Label::Seq(Arc::new(items))
    }

    pub fn pair(a: Label, b: Label) -> Self {
        Label::seq(vec![a, b])
    }

    /// The empty tree; used for terminal objects and unique directions.
    pub fn unit() -> Self {
        Label::seq(Vec::new())
    }

    pub fn as_pair(&self) -> Option<(&Label, &Label)> {
        match self {
            Label::Seq(items) if items.len() == 2 => Some((&items[0], &items[1])),
            _ => None,
        }
    }

    pub fn expect_pair(&self) -> (&Label, &Label) {
        self.as_pair()
            .unwrap_or_else(|| panic!("label {self} is not a pair"))
    }

    pub fn as_seq(&self) -> Option<&[Label]> {
        match self {
            Label::Seq(items) => Some(items),
            _ => None,
        }
    }

    /// Canonical JSON encoding: nested arrays of strings and integers.
    pub fn to_value(&self) -> Value {
        match self {
            Label::Int(n) => Value::from(*n),
            Label::Str(s) => Value::from(s.clone()),
            Label::Seq(items) => Value::Array(items.iter().map(Label::to_value).collect()),
        }
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(Label::Int)
                .ok_or_else(|| Error::schema("label", format!("non-integer number {n}"))),
            Value::String(s) => Ok(Label::Str(s.clone())),
            Value::Array(items) => Ok(Label::seq(
                items.iter().map(Label::from_value).collect::<Result<_>>()?,
            )),
            other => Err(Error::schema(
                "label",
                format!("expected string, integer, or array, got {other}"),
            )),
        }
    }

    /// Compact canonical text form, used in witnesses and as object keys.
    ///
    /// Plain string labels print bare when unambiguous; integers print in
    /// decimal; everything else prints as compact JSON. `parse_key` inverts
    /// this encoding.
    pub fn to_key(&self) -> String {
        match self {
            Label::Int(n) => n.to_string(),
            Label::Str(s) if Self::bare_ok(s) => s.clone(),
            other => other.to_value().to_string(),
        }
    }

    pub fn parse_key(key: &str) -> Result<Self> {
        if let Ok(n) = key.parse::<i64>() {
            return Ok(Label::Int(n));
        }
        if key.starts_with('[') || key.starts_with('"') {
            let v: Value = serde_json::from_str(key)
                .map_err(|e| Error::schema("label key", format!("{key}: {e}")))?;
            return Label::from_value(&v);
        }
        Ok(Label::Str(key.to_string()))
    }

    /// A string may print bare if parsing it back cannot be mistaken for an
    /// integer or a JSON-encoded label.
    fn bare_ok(s: &str) -> bool {
        !s.is_empty()
            && s.parse::<i64>().is_err()
            && !s.starts_with('[')
            && !s.starts_with('"')
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_int_str_seq() {
        assert!(Label::int(5) < Label::str("a"));
        assert!(Label::str("z") < Label::unit());
        assert!(Label::int(-3) < Label::int(2));
        assert!(Label::seq(vec![Label::int(1)]) < Label::seq(vec![Label::int(2)]));
    }

    #[test]
    fn key_roundtrip() {
        for l in [
            Label::int(42),
            Label::int(-7),
            Label::str("plain"),
            Label::str("42x"),
            Label::str("7"),
            Label::str("[weird"),
            Label::unit(),
            Label::pair(Label::str("a"), Label::int(1)),
        ] {
            let key = l.to_key();
            assert_eq!(Label::parse_key(&key).unwrap(), l, "key was {key}");
        }
    }

    #[test]
    fn value_roundtrip() {
        let l = Label::seq(vec![
            Label::str("a"),
            Label::int(3),
            Label::pair(Label::unit(), Label::str("b")),
        ]);
        assert_eq!(Label::from_value(&l.to_value()).unwrap(), l);
    }
}
