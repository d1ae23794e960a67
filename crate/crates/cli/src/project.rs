//! Project files: named rings, ideals, varieties, maps, stratifications and
//! intersection data, in JSON.

use std::collections::BTreeMap;
use std::path::Path;

use charcycle::algebra::{Block, ParsePolynomial, Rational, Ring, RingRef};
use charcycle::calculus::{ChowRingSpec, ConstructibleFunction, CycleKey};
use charcycle::conormal::ProjectiveVariety;
use charcycle::ideal::{Ideal, Limits};
use charcycle::morphism::{AffineVariety, MorphismSpec, StratificationSpec, Stratum};
use charcycle::{Error, Result};
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDef {
    pub vars: Vec<String>,
    #[serde(default)]
    pub blocks: Vec<BlockDef>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDef {
    pub name: String,
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDef {
    pub ring: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientKind {
    Projective,
    Affine,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyDef {
    pub ideal: String,
    pub ambient: AmbientKind,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDef {
    /// An affine variety.
    pub source: String,
    /// A ring whose variables are the target coordinates.
    pub target: String,
    pub components: Vec<String>,
    #[serde(default)]
    pub chart: Option<String>,
    #[serde(default)]
    pub proper: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumDef {
    pub name: String,
    pub generators: Vec<String>,
    #[serde(default)]
    pub dim: Option<i64>,
    #[serde(default)]
    pub dense: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratificationDef {
    pub ring: String,
    pub strata: Vec<StratumDef>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionTerm {
    pub variety: String,
    pub coeff: i64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssertionDef {
    pub map: String,
    pub point: Vec<String>,
    pub chi: i64,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectFile {
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub rings: BTreeMap<String, RingDef>,
    #[serde(default)]
    pub ideals: BTreeMap<String, IdealDef>,
    #[serde(default)]
    pub varieties: BTreeMap<String, VarietyDef>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapDef>,
    /// Named lists of maps covering one resolution.
    #[serde(default)]
    pub atlases: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub stratifications: BTreeMap<String, StratificationDef>,
    #[serde(default)]
    pub chow_specs: BTreeMap<String, ChowRingSpec>,
    /// Constructible functions in the basis of Euler obstructions.
    #[serde(default)]
    pub functions: BTreeMap<String, Vec<FunctionTerm>>,
    /// Named rational points, coordinates as strings like `"1/2"`.
    #[serde(default)]
    pub points: BTreeMap<String, Vec<String>>,
    /// User-asserted fiber Euler characteristics.
    #[serde(default)]
    pub assertions: BTreeMap<String, AssertionDef>,
}

/// A loaded project with every reference checked and every polynomial
/// parsed.
pub struct Project {
    pub file: ProjectFile,
    rings: BTreeMap<String, RingRef>,
    ideals: BTreeMap<String, Ideal>,
    limits: Limits,
}

fn at(loc: &str, e: Error) -> Error {
    match e {
        Error::Input(m) => Error::Input(format!("{loc}: {m}")),
        Error::Parse { offset, message } => Error::Input(format!("{loc}: parse error at offset {offset}: {message}")),
        other => other,
    }
}

fn build_ring(def: &RingDef) -> Result<RingRef> {
    if def.blocks.is_empty() {
        return Ring::with_vars(&def.vars);
    }
    let blocks = def
        .blocks
        .iter()
        .map(|b| {
            let vars = b
                .vars
                .iter()
                .map(|v| {
                    def.vars
                        .iter()
                        .position(|x| x == v)
                        .ok_or_else(|| Error::input(format!("block '{}' names unknown variable '{v}'", b.name)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Block {
                name: b.name.clone(),
                vars,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ring::new(def.vars.clone(), blocks)
}

pub fn parse_point(items: &[String]) -> Result<Vec<Rational>> {
    items
        .iter()
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|_| Error::input(format!("'{s}' is not a rational number")))
        })
        .collect()
}

impl Project {
    pub fn load(path: &Path, limits: Limits) -> Result<Project> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_str(&text, limits)
    }

    pub fn from_str(text: &str, limits: Limits) -> Result<Project> {
        let file: ProjectFile = serde_json::from_str(text)
            .map_err(|e| Error::input(format!("project file, line {} column {}: {e}", e.line(), e.column())))?;
        let mut rings = BTreeMap::new();
        for (name, def) in &file.rings {
            rings.insert(name.clone(), build_ring(def).map_err(|e| at(&format!("rings.{name}"), e))?);
        }
        let mut p = Project {
            file,
            rings,
            ideals: BTreeMap::new(),
            limits,
        };
        for (name, def) in &p.file.ideals {
            let loc = format!("ideals.{name}");
            let r = p.ring(&def.ring).map_err(|e| at(&loc, e))?;
            let i = Ideal::parse(&r, &def.generators).map_err(|e| at(&loc, e))?.with_limits(limits);
            p.ideals.insert(name.clone(), i);
        }
        p.check_references()?;
        Ok(p)
    }

    fn check_references(&self) -> Result<()> {
        let f = &self.file;
        for (name, v) in &f.varieties {
            self.ideal(&v.ideal).map_err(|e| at(&format!("varieties.{name}"), e))?;
        }
        for (name, m) in &f.maps {
            let loc = format!("maps.{name}");
            let v = self.variety_def(&m.source).map_err(|e| at(&loc, e))?;
            if v.ambient != AmbientKind::Affine {
                return Err(Error::input(format!("{loc}: source '{}' must be affine", m.source)));
            }
            let src = self.ideal(&v.ideal)?.ring().clone();
            self.ring(&m.target).map_err(|e| at(&loc, e))?;
            src.parse_all(&m.components).map_err(|e| at(&format!("{loc}.components"), e))?;
        }
        for (name, list) in &f.atlases {
            for m in list {
                if !f.maps.contains_key(m) {
                    return Err(Error::input(format!("atlases.{name}: unknown map '{m}'")));
                }
            }
        }
        for (name, s) in &f.stratifications {
            let loc = format!("stratifications.{name}");
            let r = self.ring(&s.ring).map_err(|e| at(&loc, e))?;
            for st in &s.strata {
                r.parse_all(&st.generators).map_err(|e| at(&format!("{loc}.{}", st.name), e))?;
            }
        }
        for (name, terms) in &f.functions {
            for t in terms {
                self.variety_def(&t.variety).map_err(|e| at(&format!("functions.{name}"), e))?;
            }
        }
        for (name, p) in &f.points {
            parse_point(p).map_err(|e| at(&format!("points.{name}"), e))?;
        }
        for (name, a) in &f.assertions {
            let loc = format!("assertions.{name}");
            if !f.maps.contains_key(&a.map) {
                return Err(Error::input(format!("{loc}: unknown map '{}'", a.map)));
            }
            parse_point(&a.point).map_err(|e| at(&loc, e))?;
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn ring(&self, name: &str) -> Result<RingRef> {
        self.rings
            .get(name)
            .cloned()
            .ok_or_else(|| Error::input(format!("unknown ring '{name}'")))
    }

    pub fn ideal(&self, name: &str) -> Result<Ideal> {
        self.ideals
            .get(name)
            .cloned()
            .ok_or_else(|| Error::input(format!("unknown ideal '{name}'")))
    }

    fn variety_def(&self, name: &str) -> Result<&VarietyDef> {
        self.file
            .varieties
            .get(name)
            .ok_or_else(|| Error::input(format!("unknown variety '{name}'")))
    }

    pub fn variety_kind(&self, name: &str) -> Result<AmbientKind> {
        Ok(self.variety_def(name)?.ambient)
    }

    pub fn variety_ideal(&self, name: &str) -> Result<Ideal> {
        self.ideal(&self.variety_def(name)?.ideal)
    }

    pub fn projective(&self, name: &str) -> Result<ProjectiveVariety> {
        let v = self.variety_def(name)?;
        if v.ambient != AmbientKind::Projective {
            return Err(Error::input(format!("variety '{name}' is not projective")));
        }
        ProjectiveVariety::new(self.ideal(&v.ideal)?).map_err(|e| at(&format!("varieties.{name}"), e))
    }

    pub fn affine(&self, name: &str) -> Result<AffineVariety> {
        let v = self.variety_def(name)?;
        if v.ambient != AmbientKind::Affine {
            return Err(Error::input(format!("variety '{name}' is not affine")));
        }
        Ok(AffineVariety::new(self.ideal(&v.ideal)?))
    }

    pub fn cycle_key(&self, variety: &str) -> Result<CycleKey> {
        match self.variety_kind(variety)? {
            AmbientKind::Projective => CycleKey::of_projective(&self.projective(variety)?),
            AmbientKind::Affine => CycleKey::of_affine(&self.variety_ideal(variety)?),
        }
    }

    pub fn map(&self, name: &str) -> Result<MorphismSpec> {
        let def = self
            .file
            .maps
            .get(name)
            .ok_or_else(|| Error::input(format!("unknown map '{name}'")))?;
        let loc = format!("maps.{name}");
        let src = self.affine(&def.source).map_err(|e| at(&loc, e))?;
        let target = self.ring(&def.target)?;
        let comps = src.ring().parse_all(&def.components)?;
        let mut f = MorphismSpec::new(src, &target, comps)
            .map_err(|e| at(&loc, e))?
            .with_proper_asserted(def.proper);
        if let Some(c) = &def.chart {
            f = f.with_chart(c.clone());
        }
        Ok(f)
    }

    /// Resolve a map or atlas name to its charts, keeping the chart whose
    /// label is `only` when given.
    pub fn charts(&self, name: &str, only: Option<&str>) -> Result<Vec<(String, MorphismSpec)>> {
        let names: Vec<String> = match self.file.atlases.get(name) {
            Some(list) => list.clone(),
            None if self.file.maps.contains_key(name) => vec![name.to_string()],
            None => return Err(Error::input(format!("unknown map or atlas '{name}'"))),
        };
        let mut out = Vec::new();
        for n in names {
            let label = self.file.maps[&n].chart.clone().unwrap_or_else(|| n.clone());
            if only.is_some_and(|o| o != label && o != n) {
                continue;
            }
            out.push((n.clone(), self.map(&n)?));
        }
        if out.is_empty() {
            return Err(Error::input(format!("no chart of '{name}' matches '{}'", only.unwrap_or(""))));
        }
        Ok(out)
    }

    pub fn stratification(&self, name: &str, target: &RingRef) -> Result<StratificationSpec> {
        let def = self
            .file
            .stratifications
            .get(name)
            .ok_or_else(|| Error::input(format!("unknown stratification '{name}'")))?;
        let loc = format!("stratifications.{name}");
        let r = self.ring(&def.ring)?;
        if r.nvars() != target.nvars() {
            return Err(Error::input(format!("{loc}: ring does not match the map target")));
        }
        let strata = def
            .strata
            .iter()
            .map(|s| {
                let gens = r
                    .parse_all(&s.generators)?
                    .iter()
                    .map(|g| g.rename_into(target))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Stratum {
                    name: s.name.clone(),
                    ideal: Ideal::new(target, gens)?.with_limits(self.limits),
                    claimed_dim: s.dim,
                    dense: s.dense,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| at(&loc, e))?;
        StratificationSpec::new(strata).map_err(|e| at(&loc, e))
    }

    pub fn chow_spec(&self, name: &str) -> Result<ChowRingSpec> {
        self.file
            .chow_specs
            .get(name)
            .cloned()
            .ok_or_else(|| Error::input(format!("unknown chow spec '{name}'")))
    }

    pub fn function(&self, name: &str) -> Result<ConstructibleFunction> {
        let terms = self
            .file
            .functions
            .get(name)
            .ok_or_else(|| Error::input(format!("unknown function '{name}'")))?;
        let mut alpha = ConstructibleFunction::new();
        for t in terms {
            alpha.add_term(self.cycle_key(&t.variety)?, t.coeff);
        }
        Ok(alpha)
    }

    /// A named point or a comma-separated list of rationals.
    pub fn point(&self, spec: &str) -> Result<Vec<Rational>> {
        match self.file.points.get(spec) {
            Some(p) => parse_point(p),
            None => parse_point(&spec.split(',').map(str::to_string).collect::<Vec<_>>()),
        }
    }

    /// Asserted fiber χ for `map` at `p`.
    pub fn asserted_chi(&self, map: &str, p: &[Rational]) -> Result<Option<i64>> {
        for a in self.file.assertions.values() {
            if a.map == map && parse_point(&a.point)? == p {
                return Ok(Some(a.chi));
            }
        }
        Ok(None)
    }
}
