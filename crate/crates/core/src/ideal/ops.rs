use crate::algebra::{Block, MonomialOrder, Polynomial, Ring, RingRef};
use crate::error::{Error, Result};

use super::{GroebnerBasis, Ideal};

impl Ideal {
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.derived(gens))
    }

    /// Ideal generated by the current generators plus `extra`.
    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        let probe = Polynomial::zero(&self.ring);
        for g in extra {
            probe.check_same_ring(&g)?;
            gens.push(g);
        }
        Ok(self.derived(gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.try_mul(g)?);
            }
        }
        Ok(self.derived(gens))
    }

    /// `I ∩ k[vars not in drop]`, via a block elimination order with the
    /// dropped variables moved to the front.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        if let Some(&v) = drop.iter().find(|&&v| v >= n) {
            return Err(Error::input(format!("variable index {v} out of range")));
        }
        let mut dropped = vec![false; n];
        for &v in drop {
            dropped[v] = true;
        }
        let k = dropped.iter().filter(|&&d| d).count();
        if k == 0 {
            return Ok(self.clone());
        }
        if self.gens.is_empty() {
            return Ok(self.derived(Vec::new()));
        }
        let elim: Vec<usize> = (0..n).filter(|&v| dropped[v]).collect();
        let keep: Vec<usize> = (0..n).filter(|&v| !dropped[v]).collect();
        let names: Vec<String> = elim.iter().chain(&keep).map(|&v| self.ring.var_name(v).to_string()).collect();
        let mut blocks = vec![Block {
            name: "elim".into(),
            vars: (0..k).collect(),
        }];
        if !keep.is_empty() {
            blocks.push(Block {
                name: "keep".into(),
                vars: (k..n).collect(),
            });
        }
        let work = Ring::new(names, blocks)?;
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.map_into(&work)).collect::<Result<_>>()?;
        let staged = self.derived_in(&work, gens);
        let gb = staged.groebner(MonomialOrder::BlockElimination(k))?;
        let front: Vec<usize> = (0..k).collect();
        let kept: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|g| !g.involves_any(&front))
            .map(|g| g.map_into(&self.ring))
            .collect::<Result<_>>()?;
        // The surviving elements are also the reduced grevlex basis of the
        // elimination ideal: the block order restricts to grevlex there.
        let basis = GroebnerBasis::from_parts(&self.ring, MonomialOrder::Grevlex, sort_grevlex(kept));
        Ok(self.with_known_basis(basis))
    }

    /// Eliminate the named variables.
    pub fn eliminate_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Ideal> {
        let idx = names
            .iter()
            .map(|s| {
                self.ring
                    .var_index(s.as_ref())
                    .ok_or_else(|| Error::input(format!("unknown variable '{}'", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        self.eliminate(&idx)
    }

    /// `I ∩ J` via `t*I + (1-t)*J` with `t` eliminated.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(self.derived(Vec::new()));
        }
        if self.is_unit()? {
            return Ok(other.clone().with_limits(self.limits));
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let (ext, t) = self.with_auxiliary("t")?;
        let tp = Polynomial::var(&ext, t);
        let one_minus_t = &Polynomial::one(&ext) - &tp;
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(f.map_into(&ext)?.try_mul(&tp)?);
        }
        for g in &other.gens {
            gens.push(g.map_into(&ext)?.try_mul(&one_minus_t)?);
        }
        let big = self.derived_in(&ext, gens).eliminate(&[t])?;
        let back = big.gens.iter().map(|g| g.map_into(&self.ring)).collect::<Result<Vec<_>>>()?;
        Ok(self.derived(back))
    }

    /// `I : (g) = (I ∩ (g)) / g`.
    pub fn quotient_element(&self, g: &Polynomial) -> Result<Ideal> {
        Polynomial::zero(&self.ring).check_same_ring(g)?;
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring).with_limits(self.limits));
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        let principal = self.derived(vec![g.clone()]);
        let meet = self.intersection(&principal)?;
        let mut gens = Vec::with_capacity(meet.gens.len());
        for h in &meet.gens {
            let q = h
                .exact_div(g)
                .ok_or_else(|| Error::limit("ideal quotient", "intersection generator not divisible by the quotient element"))?;
            gens.push(q);
        }
        Ok(self.derived(gens))
    }

    /// `I : J`, the intersection of `I : (g)` over generators `g` of `J`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let q = self.quotient_element(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersection(&q)?,
            });
            if let Some(a) = &acc {
                if a.equals(self)? {
                    return Ok(a.clone());
                }
            }
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring).with_limits(self.limits)))
    }

    /// `I : J^∞` by iterated quotients until the reduced basis stabilizes.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        let mut current = self.clone();
        for _ in 0..self.limits.max_saturation_iters {
            let next = current.quotient(other)?;
            if next.equals(&current)? {
                return Ok(current);
            }
            current = next;
        }
        Err(Error::limit(
            "saturation",
            format!("no stabilization after {} quotient steps", self.limits.max_saturation_iters),
        ))
    }

    /// `I : g^∞` via `I + (1 - t*g)` with `t` eliminated.
    pub fn saturate_element(&self, g: &Polynomial) -> Result<Ideal> {
        Polynomial::zero(&self.ring).check_same_ring(g)?;
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring).with_limits(self.limits));
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        let (ext, t) = self.with_auxiliary("t")?;
        let mut gens = self.gens.iter().map(|f| f.map_into(&ext)).collect::<Result<Vec<_>>>()?;
        let tg = Polynomial::var(&ext, t).try_mul(&g.map_into(&ext)?)?;
        gens.push(&Polynomial::one(&ext) - &tg);
        let big = self.derived_in(&ext, gens).eliminate(&[t])?;
        let back = big.gens.iter().map(|h| h.map_into(&self.ring)).collect::<Result<Vec<_>>>()?;
        Ok(self.derived(back))
    }

    /// `I : J^∞` as the intersection of `I : g^∞` over generators of `J`.
    pub fn saturation_by_elements(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let s = self.saturate_element(g)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersection(&s)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring).with_limits(self.limits)))
    }

    /// Pull back along a ring map: generators substituted by `images`
    /// (one image per variable of this ideal's ring, living in `target`).
    pub fn substitute(&self, target: &RingRef, images: &[Polynomial]) -> Result<Ideal> {
        if images.len() != self.ring.nvars() {
            return Err(Error::input("substitution needs one image per variable"));
        }
        let gens = self.gens.iter().map(|g| g.compose(target, images)).collect::<Result<Vec<_>>>()?;
        Ok(self.derived_in(target, gens))
    }

    /// Move into another ring whose variables include all used here.
    pub fn map_into(&self, target: &RingRef) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.map_into(target)).collect::<Result<Vec<_>>>()?;
        Ok(self.derived_in(target, gens))
    }

    fn with_auxiliary(&self, base: &str) -> Result<(RingRef, usize)> {
        let name = self.ring.fresh_name(base);
        let ext = self.ring.extended(&self.ring.fresh_block_name("aux"), &[name])?;
        let t = ext.nvars() - 1;
        Ok((ext, t))
    }
}

fn sort_grevlex(polys: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut v: Vec<Polynomial> = polys.into_iter().map(|p| p.with_order(MonomialOrder::Grevlex)).collect();
    v.sort_by(|a, b| {
        let ring = a.ring().clone();
        MonomialOrder::Grevlex.cmp(&ring, a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    v
}
