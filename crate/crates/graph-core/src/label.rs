use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

static INTERN: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();

/// Returns a `'static` copy of `s`, allocating at most once per distinct string.
pub fn intern(s: &str) -> &'static str {
    let table = INTERN.get_or_init(|| Mutex::new(HashSet::new()));
    let mut table = table.lock().unwrap();
    if let Some(hit) = table.get(s) {
        return hit;
    }
    let leaked: &'static str = Box::leak(s.to_owned().into_boxed_str());
    table.insert(leaked);
    leaked
}

/// One payload entry of a [`Label`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    I(i64),
    S(&'static str),
    B(bool),
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::I(v) => write!(f, "{v}"),
            Scalar::S(v) => write!(f, "{v:?}"),
            Scalar::B(v) => write!(f, "{v}"),
        }
    }
}

/// A label: a tag drawn from a finite alphabet plus a short scalar payload.
///
/// Tags and string payload entries are interned, so equality is cheap and
/// labels built twice from the same parts compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub tag: &'static str,
    pub payload: Vec<Scalar>,
}

impl Label {
    pub fn new(tag: &str, payload: Vec<Scalar>) -> Self {
        Label { tag: intern(tag), payload }
    }

    pub fn bare(tag: &str) -> Self {
        Label { tag: intern(tag), payload: Vec::new() }
    }

    pub fn int(&self, idx: usize) -> Option<i64> {
        match self.payload.get(idx) {
            Some(Scalar::I(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn str(&self, idx: usize) -> Option<&'static str> {
        match self.payload.get(idx) {
            Some(Scalar::S(v)) => Some(v),
            _ => None,
        }
    }

    pub fn bool(&self, idx: usize) -> Option<bool> {
        match self.payload.get(idx) {
            Some(Scalar::B(v)) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.payload.is_empty() {
            write!(f, "{}", self.tag)
        } else {
            write!(f, "{}{:?}", self.tag, self.payload)
        }
    }
}
