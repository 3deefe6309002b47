//! Variable tables: a fixed, ordered list of names shared by expressions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::ArithError;

#[derive(Debug)]
struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// Shared handle to an immutable, ordered variable table. The position of a
/// name in the table fixes the term order (graded lexicographic on indices),
/// so two expressions interoperate only when built over the same table.
#[derive(Clone)]
pub struct Vars(Arc<VarTable>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, ArithError> {
        let mut index = HashMap::with_capacity(names.len());
        let mut stored = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(ArithError::BadVariableName(name.into()));
            }
            if index.insert(name.to_string(), i).is_some() {
                return Err(ArithError::DuplicateVariable(name.into()));
            }
            stored.push(name.to_string());
        }
        Ok(Self(Arc::new(VarTable {
            names: stored,
            index,
        })))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.0.names[id]
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.names.iter().map(|s| s.as_str())
    }

    /// Tables are compatible when they are the same allocation or list the
    /// same names in the same order.
    pub fn compatible(&self, other: &Vars) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vars{:?}", self.0.names)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_names() {
        assert!(Vars::new(&["a", "b"]).is_ok());
        assert!(Vars::new(&["1a"]).is_err());
        assert!(Vars::new(&["a", "a"]).is_err());
        assert!(Vars::new(&[""]).is_err());
        assert!(Vars::new(&["a-b"]).is_err());
    }

    #[test]
    fn lookup_respects_order() {
        let v = Vars::new(&["a", "b", "p", "q"]).unwrap();
        assert_eq!(v.id("p"), Some(2));
        assert_eq!(v.name(3), "q");
        assert_eq!(v.id("z"), None);
        let w = Vars::new(&["a", "b", "p", "q"]).unwrap();
        assert!(v.compatible(&w));
        let x = Vars::new(&["b", "a"]).unwrap();
        assert!(!v.compatible(&x));
    }
}
