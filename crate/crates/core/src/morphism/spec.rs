use std::sync::OnceLock;

use crate::algebra::{fresh_name_avoiding, jacobian_matrix, PolyMatrix, Polynomial, Ring, RingRef};
use crate::error::{Error, Result};
use crate::ideal::Ideal;

use super::variety::{in_radical, locus_contained};
use super::AffineVariety;

/// A polynomial map from a nonsingular affine chart `Y ⊆ A^m` to `A^N`.
#[derive(Clone, Debug)]
pub struct MorphismSpec {
    source: AffineVariety,
    target: RingRef,
    components: Vec<Polynomial>,
    chart: Option<String>,
    proper_asserted: bool,
    image: OnceLock<Ideal>,
}

impl MorphismSpec {
    /// `components[i]` is the pullback of the `i`-th coordinate of `target`.
    pub fn new(source: AffineVariety, target: &RingRef, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != target.nvars() {
            return Err(Error::input(format!(
                "{} component polynomials for a target with {} coordinates",
                components.len(),
                target.nvars()
            )));
        }
        let probe = Polynomial::zero(source.ring());
        for c in &components {
            probe.check_same_ring(c)?;
        }
        if source.dimension()? < 0 {
            return Err(Error::input("source is empty"));
        }
        if !source.is_nonsingular()? {
            return Err(Error::precondition("source variety is singular"));
        }
        Ok(MorphismSpec {
            source,
            target: target.clone(),
            components,
            chart: None,
            proper_asserted: false,
            image: OnceLock::new(),
        })
    }

    pub fn with_chart(mut self, label: impl Into<String>) -> Self {
        self.chart = Some(label.into());
        self
    }

    pub fn with_proper_asserted(mut self, proper: bool) -> Self {
        self.proper_asserted = proper;
        self
    }

    pub fn source(&self) -> &AffineVariety {
        &self.source
    }

    pub fn source_ring(&self) -> &RingRef {
        self.source.ring()
    }

    pub fn target(&self) -> &RingRef {
        &self.target
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn chart(&self) -> Option<&str> {
        self.chart.as_deref()
    }

    pub fn proper_asserted(&self) -> bool {
        self.proper_asserted
    }

    pub fn source_dim(&self) -> Result<i64> {
        self.source.dimension()
    }

    /// Ideal of the closure of `f(Y)`, in the target ring.
    pub fn image_closure(&self) -> Result<Ideal> {
        if let Some(i) = self.image.get() {
            return Ok(i.clone());
        }
        let src = self.source_ring();
        let src_names = src.var_names().to_vec();
        let mut tgt_names = Vec::new();
        for n in self.target.var_names() {
            let fresh = fresh_name_avoiding(n, |s| src_names.iter().any(|v| v == s) || tgt_names.iter().any(|v: &String| v == s));
            tgt_names.push(fresh);
        }
        let graph = Ring::with_blocks(&[("source", &src_names[..]), ("target", &tgt_names[..])])?;
        let mut gens = self
            .source
            .ideal()
            .generators()
            .iter()
            .map(|g| g.map_into(&graph))
            .collect::<Result<Vec<_>>>()?;
        for (i, c) in self.components.iter().enumerate() {
            let t = Polynomial::var(&graph, src_names.len() + i);
            gens.push(&t - &c.map_into(&graph)?);
        }
        let drop: Vec<usize> = (0..src_names.len()).collect();
        let elim = Ideal::new(&graph, gens)?
            .with_limits(self.source.ideal().limits())
            .eliminate(&drop)?;
        let shadow = Ring::with_vars(&tgt_names)?;
        let moved = elim
            .generators()
            .iter()
            .map(|g| g.map_into(&shadow)?.rename_into(&self.target))
            .collect::<Result<Vec<_>>>()?;
        let image = Ideal::new(&self.target, moved)?.with_limits(self.source.ideal().limits());
        Ok(self.image.get_or_init(|| image).clone())
    }

    /// `f*(J)` for an ideal `J` of the target ring.
    pub fn pullback(&self, j: &Ideal) -> Result<Ideal> {
        if j.ring().nvars() != self.target.nvars() {
            return Err(Error::input("ideal does not live on the target"));
        }
        let gens = j
            .generators()
            .iter()
            .map(|g| g.rename_into(&self.target)?.compose(self.source_ring(), &self.components))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(self.source_ring(), gens)?.with_limits(self.source.ideal().limits()))
    }

    /// `V(I_Y + f*J)`, the inverse image of `V(J)`.
    pub fn preimage(&self, j: &Ideal) -> Result<Ideal> {
        self.source.ideal().sum(&self.pullback(j)?)
    }

    /// Jacobian of the generators of `I_Y` stacked on the Jacobian of `f`.
    pub fn augmented_jacobian(&self) -> Result<PolyMatrix> {
        augmented_jacobian(self.source.ideal().generators(), &self.components, self.source_ring())
    }

    /// Whether `V(J)` lies in the image closure.
    pub fn image_contains(&self, j: &Ideal) -> Result<bool> {
        let image = self.image_closure()?;
        let jj = Ideal::new(
            &self.target,
            j.generators().iter().map(|g| g.rename_into(&self.target)).collect::<Result<Vec<_>>>()?,
        )?
        .with_limits(j.limits());
        for g in image.generators() {
            if !in_radical(&jj, g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn augmented_jacobian(top: &[Polynomial], f: &[Polynomial], ring: &RingRef) -> Result<PolyMatrix> {
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    let jf = jacobian_matrix(f, &vars)?;
    if top.is_empty() {
        return Ok(jf);
    }
    jacobian_matrix(top, &vars)?.stacked(&jf)
}

/// A stratum of the target: a closed subvariety whose open part is the
/// stratum proper.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub name: String,
    pub ideal: Ideal,
    pub claimed_dim: Option<i64>,
    pub dense: bool,
}

/// User-supplied stratification of the image.
#[derive(Clone, Debug)]
pub struct StratificationSpec {
    strata: Vec<Stratum>,
}

impl StratificationSpec {
    pub fn new(mut strata: Vec<Stratum>) -> Result<Self> {
        let dense = strata.iter().filter(|s| s.dense).count();
        if dense != 1 {
            return Err(Error::input(format!("a stratification needs exactly one dense stratum, got {dense}")));
        }
        strata.sort_by(|a, b| a.name.cmp(&b.name));
        for w in strata.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::input(format!("duplicate stratum name '{}'", w[0].name)));
            }
        }
        for s in &strata {
            let d = s.ideal.dimension()?;
            if d < 0 {
                return Err(Error::input(format!("stratum '{}' is empty", s.name)));
            }
            if let Some(c) = s.claimed_dim {
                if c != d {
                    return Err(Error::input(format!(
                        "stratum '{}' claims dimension {c} but has dimension {d}",
                        s.name
                    )));
                }
            }
        }
        for (i, a) in strata.iter().enumerate() {
            for b in &strata[i + 1..] {
                if locus_contained(&a.ideal, &b.ideal)? && locus_contained(&b.ideal, &a.ideal)? {
                    return Err(Error::input(format!("strata '{}' and '{}' coincide", a.name, b.name)));
                }
            }
        }
        Ok(StratificationSpec { strata })
    }

    /// All strata, sorted by name.
    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn dense(&self) -> &Stratum {
        self.strata.iter().find(|s| s.dense).unwrap()
    }

    pub fn proper(&self) -> impl Iterator<Item = &Stratum> {
        self.strata.iter().filter(|s| !s.dense)
    }

    /// Other strata of smaller dimension inside the closure of `s`.
    pub fn boundary(&self, s: &Stratum) -> Result<Vec<&Stratum>> {
        let d = s.ideal.dimension()?;
        let mut out = Vec::new();
        for t in &self.strata {
            if t.name == s.name || t.dense {
                continue;
            }
            if t.ideal.dimension()? < d && locus_contained(&t.ideal, &s.ideal)? {
                out.push(t);
            }
        }
        Ok(out)
    }
}
