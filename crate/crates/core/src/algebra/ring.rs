use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A named, ordered group of ring variables (e.g. the primal coordinates of
/// P^n or the dual coordinates of its dual space).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub name: String,
    pub vars: Vec<usize>,
}

/// Polynomial ring over the rationals with named variables partitioned into
/// grading blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    blocks: Vec<Block>,
}

pub type RingRef = Arc<Ring>;

pub(crate) fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    /// Ring whose variables form a single block named `"x"`.
    pub fn with_vars<S: AsRef<str>>(vars: &[S]) -> Result<RingRef> {
        let names: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        let all = (0..names.len()).collect();
        Self::new(names, vec![Block { name: "x".into(), vars: all }])
    }

    /// Ring built from `(block name, variable names)` pairs, variables laid
    /// out block after block.
    pub fn with_blocks<S: AsRef<str>>(blocks: &[(&str, &[S])]) -> Result<RingRef> {
        let mut names = Vec::new();
        let mut bs = Vec::new();
        for (bname, vs) in blocks {
            let start = names.len();
            names.extend(vs.iter().map(|s| s.as_ref().to_string()));
            bs.push(Block {
                name: bname.to_string(),
                vars: (start..names.len()).collect(),
            });
        }
        Self::new(names, bs)
    }

    pub fn new(vars: Vec<String>, blocks: Vec<Block>) -> Result<RingRef> {
        let mut seen = HashSet::new();
        for v in &vars {
            if !is_valid_name(v) {
                return Err(Error::input(format!("invalid variable name '{v}'")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::input(format!("duplicate variable name '{v}'")));
            }
        }
        let mut owner = vec![usize::MAX; vars.len()];
        let mut block_names = HashSet::new();
        for (bi, b) in blocks.iter().enumerate() {
            if !block_names.insert(b.name.as_str()) {
                return Err(Error::input(format!("duplicate block name '{}'", b.name)));
            }
            for &v in &b.vars {
                if v >= vars.len() {
                    return Err(Error::input(format!("block '{}' references variable {v}", b.name)));
                }
                if owner[v] != usize::MAX {
                    return Err(Error::input(format!("variable '{}' is in two blocks", vars[v])));
                }
                owner[v] = bi;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::input(format!("variable '{}' belongs to no block", vars[v])));
        }
        Ok(Arc::new(Ring { vars, blocks }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    /// Fresh variable name not present in the ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        fresh_name_avoiding(base, |s| self.var_index(s).is_some())
    }

    /// Block name not used by the ring, derived from `base`.
    pub fn fresh_block_name(&self, base: &str) -> String {
        fresh_name_avoiding(base, |s| self.block(s).is_some())
    }

    /// New ring with extra variables appended as a new block.
    pub fn extended(&self, block: &str, names: &[String]) -> Result<RingRef> {
        let mut vars = self.vars.clone();
        let start = vars.len();
        vars.extend(names.iter().cloned());
        let mut blocks = self.blocks.clone();
        blocks.push(Block {
            name: block.to_string(),
            vars: (start..vars.len()).collect(),
        });
        Ring::new(vars, blocks)
    }
}

pub(crate) fn fresh_name_avoiding(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    let mut k = 1;
    loop {
        let cand = format!("{base}_{k}");
        if !taken(&cand) {
            return cand;
        }
        k += 1;
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let names: Vec<&str> = b.vars.iter().map(|&v| self.vars[v].as_str()).collect();
            write!(f, "{}: {}", b.name, names.join(","))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(Ring::with_vars(&["x", "x"]).is_err());
        assert!(Ring::with_vars(&["1x"]).is_err());
        assert!(Ring::with_vars(&["_x1", "y_2"]).is_ok());
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let r = Ring::with_vars(&["t", "t_1"]).unwrap();
        assert_eq!(r.fresh_name("t"), "t_2");
        assert_eq!(r.fresh_name("u"), "u");
    }
}
