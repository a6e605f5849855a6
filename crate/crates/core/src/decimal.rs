//! Serde helpers writing integers as decimal strings, so JSON consumers never round.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::Serializer;

pub fn int<T: ToString, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn opt<T: ToString, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

pub fn seq<T: ToString, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    let mut q = s.serialize_seq(Some(v.len()))?;
    for x in v {
        q.serialize_element(&x.to_string())?;
    }
    q.end()
}

pub fn map<K: ToString, V: ToString, S: Serializer>(
    v: &std::collections::BTreeMap<K, V>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(v.len()))?;
    for (k, x) in v {
        m.serialize_entry(&k.to_string(), &x.to_string())?;
    }
    m.end()
}
