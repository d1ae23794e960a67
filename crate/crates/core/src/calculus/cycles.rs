use std::collections::BTreeMap;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

use super::{Ambient, CycleKey};

fn insert(map: &mut BTreeMap<CycleKey, i64>, key: CycleKey, m: i64) {
    if m == 0 {
        return;
    }
    let e = map.entry(key.clone()).or_insert(0);
    *e += m;
    if *e == 0 {
        map.remove(&key);
    }
}

fn common_ambient<'a>(keys: impl Iterator<Item = &'a CycleKey>) -> Result<Option<Ambient>> {
    let mut amb = None;
    for k in keys {
        match amb {
            None => amb = Some(k.ambient()),
            Some(a) if a != k.ambient() => return Err(Error::input(format!("mixed ambients {a} and {}", k.ambient()))),
            _ => {}
        }
    }
    Ok(amb)
}

fn sign(dim: i64) -> i64 {
    if dim % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Integer combination of conormal cycles `T*_W X`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LagrangianCycle {
    terms: BTreeMap<CycleKey, i64>,
}

/// Constructible function written in the basis of local Euler
/// obstructions `Eu_W`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructibleFunction {
    terms: BTreeMap<CycleKey, i64>,
}

#[derive(serde::Serialize)]
struct Term<'a> {
    key: &'a CycleKey,
    coefficient: i64,
}

macro_rules! combination_impl {
    ($t:ty) => {
        // a list of terms: JSON object keys must be strings
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.terms.len()))?;
                for (key, &coefficient) in &self.terms {
                    seq.serialize_element(&Term { key, coefficient })?;
                }
                seq.end()
            }
        }

        impl $t {
            pub fn new() -> Self {
                Self::default()
            }

            pub fn single(key: CycleKey, m: i64) -> Self {
                let mut out = Self::default();
                out.add_term(key, m);
                out
            }

            pub fn add_term(&mut self, key: CycleKey, m: i64) {
                insert(&mut self.terms, key, m);
            }

            pub fn get(&self, key: &CycleKey) -> i64 {
                self.terms.get(key).copied().unwrap_or(0)
            }

            pub fn terms(&self) -> impl Iterator<Item = (&CycleKey, i64)> {
                self.terms.iter().map(|(k, &m)| (k, m))
            }

            pub fn len(&self) -> usize {
                self.terms.len()
            }

            pub fn is_empty(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn add(&self, other: &Self) -> Self {
                let mut out = self.clone();
                for (k, m) in other.terms() {
                    out.add_term(k.clone(), m);
                }
                out
            }

            pub fn scale(&self, k: i64) -> Self {
                let mut out = Self::default();
                for (key, m) in self.terms() {
                    out.add_term(key.clone(), m * k);
                }
                out
            }

            /// The common ambient of all keys; `None` when empty.
            pub fn ambient(&self) -> Result<Option<Ambient>> {
                common_ambient(self.terms.keys())
            }
        }
    };
}

combination_impl!(LagrangianCycle);
combination_impl!(ConstructibleFunction);

/// `Eu_W ↦ (-1)^{dim W} T*_W X`, extended linearly.
pub fn cc_transform(alpha: &ConstructibleFunction) -> Result<LagrangianCycle> {
    alpha.ambient()?;
    let mut out = LagrangianCycle::new();
    for (k, m) in alpha.terms() {
        out.add_term(k.clone(), sign(k.dim()) * m);
    }
    Ok(out)
}

/// Inverse of [`cc_transform`].
pub fn cc_inverse(lambda: &LagrangianCycle) -> Result<ConstructibleFunction> {
    lambda.ambient()?;
    let mut out = ConstructibleFunction::new();
    for (k, m) in lambda.terms() {
        out.add_term(k.clone(), sign(k.dim()) * m);
    }
    Ok(out)
}
