//! Generic linear slicing. Linear equations are solved and substituted
//! rather than added as generators, so the Gröbner bases that count points
//! live in as few variables as possible.

use num_traits::Zero;

use crate::algebra::{rat, Block, GenericRng, Polynomial, Rational, Ring, RingRef};
use crate::error::{Error, Result};

use super::Ideal;

/// Maximum number of fresh generic draws before a slice is declared
/// degenerate.
pub const MAX_SLICE_ATTEMPTS: u64 = 8;

/// Parametrization of the solution set of an affine-linear system by the
/// free variables.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    /// Ring of the free variables (original names).
    pub ring: RingRef,
    /// Image of every original variable.
    pub images: Vec<Polynomial>,
}

/// Solve the affine-linear system `eqs = 0`. `None` when inconsistent.
pub fn solve_linear(ring: &RingRef, eqs: &[Polynomial]) -> Result<Option<LinearSolution>> {
    let n = ring.nvars();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(eqs.len());
    for e in eqs {
        if e.total_degree().unwrap_or(0) > 1 {
            return Err(Error::input(format!("equation '{e}' is not linear")));
        }
        let mut row = vec![Rational::zero(); n + 1];
        for (m, c) in e.terms() {
            match m.support().next() {
                Some(v) => row[v] = c.clone(),
                None => row[n] = c.clone(),
            }
        }
        rows.push(row);
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for c in rows[r].iter_mut() {
            *c *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let k = row[col].clone();
                for (c, pc) in row.iter_mut().zip(&pivot_row) {
                    *c -= &k * pc;
                }
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free: Vec<usize> = (0..n).filter(|v| !pivot_cols.contains(v)).collect();
    let names: Vec<String> = free.iter().map(|&v| ring.var_name(v).to_string()).collect();
    let blocks = if free.is_empty() {
        Vec::new()
    } else {
        vec![Block {
            name: "free".into(),
            vars: (0..free.len()).collect(),
        }]
    };
    let target = Ring::new(names, blocks)?;
    let mut images = vec![Polynomial::zero(&target); n];
    for (k, &v) in free.iter().enumerate() {
        images[v] = Polynomial::var(&target, k);
    }
    for &(row, col) in &pivots {
        let mut img = Polynomial::constant(&target, -rows[row][n].clone());
        for (k, &v) in free.iter().enumerate() {
            let c = &rows[row][v];
            if !c.is_zero() {
                img = &img - &Polynomial::var(&target, k).scale(c);
            }
        }
        images[col] = img;
    }
    Ok(Some(LinearSolution { ring: target, images }))
}

/// One factor of the ambient space being sliced.
#[derive(Clone, Debug)]
pub struct SliceFactor {
    pub vars: Vec<usize>,
    /// Projective factors get a generic affine chart `l(x) = 1`; affine
    /// factors get inhomogeneous hyperplanes.
    pub projective: bool,
}

/// What to slice and how to count.
#[derive(Clone, Debug)]
pub struct SliceSpec {
    pub factors: Vec<SliceFactor>,
    /// Extra generic combinations: `(polynomials, how many)`.
    pub combinations: Vec<(Vec<Polynomial>, usize)>,
    /// Discard the part of the slice supported on `V(exclude)`: the slice
    /// is localized at a generic combination `g` of these polynomials by
    /// adjoining `1 - t*g`. For generic `g` this equals saturation.
    pub exclude: Vec<Polynomial>,
    /// Count distinct points instead of length.
    pub distinct: bool,
}

impl SliceSpec {
    /// Product of projective spaces given by the ring's blocks.
    pub fn projective(factors: Vec<Vec<usize>>) -> Self {
        SliceSpec {
            factors: factors.into_iter().map(|vars| SliceFactor { vars, projective: true }).collect(),
            combinations: Vec::new(),
            exclude: Vec::new(),
            distinct: false,
        }
    }

    pub fn affine(vars: Vec<usize>) -> Self {
        SliceSpec {
            factors: vec![SliceFactor { vars, projective: false }],
            combinations: Vec::new(),
            exclude: Vec::new(),
            distinct: false,
        }
    }
}

/// Seeded generic slicing of a fixed ideal.
pub struct Slicer<'a> {
    pub ideal: &'a Ideal,
    pub spec: SliceSpec,
    pub seed: u64,
    pub label: &'a str,
}

impl<'a> Slicer<'a> {
    fn draw(&self, rng: &mut GenericRng, hyperplanes: &[usize]) -> (Vec<Polynomial>, Vec<Polynomial>, Option<Polynomial>) {
        let ring = self.ideal.ring();
        let mut linear = Vec::new();
        for (f, &h) in self.spec.factors.iter().zip(hyperplanes) {
            for _ in 0..h {
                let l = rng.linear_form(ring, &f.vars);
                linear.push(if f.projective {
                    l
                } else {
                    &l - &Polynomial::constant(ring, rat(rng.coeff()))
                });
            }
            if f.projective {
                let chart = rng.linear_form(ring, &f.vars);
                linear.push(&chart - &Polynomial::one(ring));
            }
        }
        let mut extra = Vec::new();
        for (polys, k) in &self.spec.combinations {
            for _ in 0..*k {
                extra.push(rng.combination(ring, polys));
            }
        }
        let exclude = (!self.spec.exclude.is_empty()).then(|| rng.combination(ring, &self.spec.exclude));
        (linear, extra, exclude)
    }

    fn sliced(&self, linear: &[Polynomial], extra: &[Polynomial], exclude: Option<&Polynomial>) -> Result<Option<Ideal>> {
        let ring = self.ideal.ring();
        let Some(sol) = solve_linear(ring, linear)? else {
            return Ok(None);
        };
        let mut gens = Vec::new();
        for g in self.ideal.generators().iter().chain(extra) {
            gens.push(g.compose(&sol.ring, &sol.images)?);
        }
        let Some(g) = exclude else {
            return Ok(Some(self.ideal.derived_in(&sol.ring, gens)));
        };
        let t_name = sol.ring.fresh_name("t");
        let ext = sol.ring.extended(&sol.ring.fresh_block_name("aux"), &[t_name])?;
        let t = Polynomial::var(&ext, ext.nvars() - 1);
        let mut lifted = gens.iter().map(|p| p.map_into(&ext)).collect::<Result<Vec<_>>>()?;
        let g = g.compose(&sol.ring, &sol.images)?.map_into(&ext)?;
        lifted.push(&Polynomial::one(&ext) - &t.try_mul(&g)?);
        Ok(Some(self.ideal.derived_in(&ext, lifted)))
    }

    /// Krull dimension of the ideal restricted to generic charts, i.e. the
    /// dimension of the (multi)projective scheme; `-1` if empty.
    pub fn chart_dimension(&self) -> Result<i64> {
        let zeros = vec![0; self.spec.factors.len()];
        let mut rng = GenericRng::tagged(self.seed, self.label, &[u64::MAX]);
        let (linear, extra, exclude) = self.draw(&mut rng, &zeros);
        match self.sliced(&linear, &extra, exclude.as_ref())? {
            None => Ok(-1),
            Some(j) => j.dimension(),
        }
    }

    /// Number of points (or length) of the ideal cut by the given numbers of
    /// generic hyperplanes per factor. Re-draws on a positive-dimensional
    /// outcome.
    pub fn count(&self, hyperplanes: &[usize]) -> Result<u64> {
        if hyperplanes.len() != self.spec.factors.len() {
            return Err(Error::input("one hyperplane count per factor required"));
        }
        for (f, &h) in self.spec.factors.iter().zip(hyperplanes) {
            let dim = if f.projective { f.vars.len().saturating_sub(1) } else { f.vars.len() };
            if h > dim {
                return Ok(0);
            }
        }
        let tag: Vec<u64> = hyperplanes.iter().map(|&h| h as u64).collect();
        for attempt in 0..MAX_SLICE_ATTEMPTS {
            let mut idx = tag.clone();
            idx.push(attempt);
            let mut rng = GenericRng::tagged(self.seed, self.label, &idx);
            let (linear, extra, exclude) = self.draw(&mut rng, hyperplanes);
            let Some(j) = self.sliced(&linear, &extra, exclude.as_ref())? else {
                return Ok(0);
            };
            let n = if self.spec.distinct {
                j.point_count()?
            } else {
                j.vector_space_dimension()?
            };
            if let Some(n) = n {
                return Ok(n);
            }
        }
        Err(Error::limit(
            "generic slicing",
            format!("{MAX_SLICE_ATTEMPTS} draws gave positive-dimensional slices for {hyperplanes:?}"),
        ))
    }
}

impl Ideal {
    /// Multidegree `(m_0, ..., m_D)` of a bihomogeneous ideal with respect
    /// to two ring blocks, where `D` is the dimension of the biprojective
    /// scheme and `m_j` counts points on `D - j` generic primal and `j`
    /// generic dual hyperplanes.
    pub fn multidegree(&self, primal: &str, dual: &str, seed: u64) -> Result<Vec<u64>> {
        let block = |name: &str| {
            self.ring
                .block(name)
                .map(|b| b.vars.clone())
                .ok_or_else(|| Error::input(format!("unknown block '{name}'")))
        };
        let (p, d) = (block(primal)?, block(dual)?);
        for g in &self.gens {
            let bihom = [&p, &d].iter().all(|vars| {
                let mut degs = g.terms().iter().map(|(m, _)| m.degree_in(vars));
                let first = degs.next();
                degs.all(|e| Some(e) == first)
            });
            if !bihom {
                return Err(Error::input(format!("generator '{g}' is not bihomogeneous")));
            }
        }
        let slicer = Slicer {
            ideal: self,
            spec: SliceSpec::projective(vec![p, d]),
            seed,
            label: "multidegree",
        };
        let dim = slicer.chart_dimension()?;
        if dim < 0 {
            return Ok(Vec::new());
        }
        let dim = dim as usize;
        (0..=dim).map(|j| slicer.count(&[dim - j, j])).collect()
    }
}
