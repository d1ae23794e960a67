use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::ring::Ring;

/// Monomial orders. All are multiplicative total orders with 1 minimal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
    /// The first `k` variables (in ring order) form an elimination block;
    /// grevlex inside each of the two blocks.
    BlockElimination(usize),
    /// Product order over the ring's grading blocks, grevlex inside each.
    PerBlockGrevlex,
}

impl MonomialOrder {
    pub fn cmp(&self, ring: &Ring, a: &Monomial, b: &Monomial) -> Ordering {
        let (x, y) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => x.cmp(y),
            MonomialOrder::Grevlex => grevlex(x, y),
            MonomialOrder::BlockElimination(k) => {
                let k = k.min(x.len());
                grevlex(&x[..k], &y[..k]).then_with(|| grevlex(&x[k..], &y[k..]))
            }
            MonomialOrder::PerBlockGrevlex => {
                for block in ring.blocks() {
                    let o = grevlex_indexed(x, y, &block.vars);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Whether the order refines total degree (needed for dimension and
    /// Hilbert-series computations from leading terms).
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}

#[inline]
fn grevlex(x: &[u16], y: &[u16]) -> Ordering {
    let dx: u32 = x.iter().map(|&e| e as u32).sum();
    let dy: u32 = y.iter().map(|&e| e as u32).sum();
    match dx.cmp(&dy) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..x.len()).rev() {
        if x[i] != y[i] {
            return y[i].cmp(&x[i]);
        }
    }
    Ordering::Equal
}

fn grevlex_indexed(x: &[u16], y: &[u16], idx: &[usize]) -> Ordering {
    let dx: u32 = idx.iter().map(|&i| x[i] as u32).sum();
    let dy: u32 = idx.iter().map(|&i| y[i] as u32).sum();
    match dx.cmp(&dy) {
        Ordering::Equal => {}
        o => return o,
    }
    for &i in idx.iter().rev() {
        if x[i] != y[i] {
            return y[i].cmp(&x[i]);
        }
    }
    Ordering::Equal
}
