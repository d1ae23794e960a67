use serde::Serialize;

use crate::algebra::{rat, GenericRng, Polynomial};
use crate::error::{Error, Result};
use crate::ideal::MAX_SLICE_ATTEMPTS;

use super::MorphismSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericDegree {
    /// Distinct points over a general point of the image.
    pub degree: u64,
    /// Length of the general fiber scheme, when finite.
    pub length: Option<u64>,
    /// Number of slice draws used.
    pub attempts: u64,
}

/// Degree of `f` onto its image, counted over the points cut out of the
/// image by `dim Y` generic affine hyperplanes.
pub fn generic_degree(f: &MorphismSpec, seed: u64) -> Result<GenericDegree> {
    let dim_y = f.source_dim()?;
    let image = f.image_closure()?;
    let dim_img = image.dimension()?;
    if dim_img != dim_y {
        return Err(Error::input(format!(
            "not generically finite: image has dimension {dim_img}, source {dim_y}"
        )));
    }
    let t = f.target();
    let vars: Vec<usize> = (0..t.nvars()).collect();
    let mut last = String::new();
    for attempt in 0..MAX_SLICE_ATTEMPTS {
        let mut rng = GenericRng::tagged(seed, "generic-degree", &[attempt]);
        let slices: Vec<Polynomial> = (0..dim_y)
            .map(|_| {
                let c = Polynomial::constant(t, rat(rng.coeff()));
                &rng.linear_form(t, &vars) + &c
            })
            .collect();
        let down = image.with_generators(slices.iter().cloned())?;
        let pulled = slices
            .iter()
            .map(|l| l.compose(f.source_ring(), f.components()))
            .collect::<Result<Vec<_>>>()?;
        let up = f.source().ideal().with_generators(pulled)?;
        if up.dimension()? > 0 {
            return Err(Error::input("not generically finite: general fiber is positive-dimensional"));
        }
        let (Some(p), Some(q)) = (down.point_count()?, up.point_count()?) else {
            last = "slice of the image is not finite".into();
            continue;
        };
        if p == 0 {
            last = "slice missed the image".into();
            continue;
        }
        if q % p != 0 {
            last = format!("{q} source points over {p} image points");
            continue;
        }
        return Ok(GenericDegree {
            degree: q / p,
            length: up.vector_space_dimension()?.map(|l| l / p),
            attempts: attempt + 1,
        });
    }
    Err(Error::limit("generic degree", format!("{MAX_SLICE_ATTEMPTS} slice attempts; last: {last}")))
}
