use super::PipelineError;
use crate::algorithms::LevelParams;
use crate::graph::CaterpillarShape;
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// Largest colour count for which `3^{-ℓ0}` is still computed exactly.
pub const MAX_CLASSES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelConstants {
    pub d: usize,
    pub ell0: usize,
    #[serde(with = "rational")]
    pub alpha: Rational,
}

/// Colour counts and bud parameters per level, plus the leg-attachment ε.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantSchedule {
    pub shape: CaterpillarShape,
    /// Entry `d'` for every level `0..=d`.
    pub levels: Vec<LevelConstants>,
    pub ell: usize,
    #[serde(with = "rational")]
    pub eps: Rational,
    /// Degree bound handed to the sparsifier, `ε/ℓ`.
    #[serde(with = "rational")]
    pub eps_degree: Rational,
    /// `10·h·d·t·2^{hd}·ℓ·ε < α` at the top level.
    pub eps_condition_holds: bool,
    /// Vertices needed before `α|V_i| ≥ 1` for an equipartition into ℓ classes.
    #[serde(serialize_with = "decimal")]
    pub min_n_bud: BigInt,
    /// Vertices needed before the degree bound `ε|A|/ℓ` reaches 1.
    #[serde(serialize_with = "decimal")]
    pub min_n_degree: BigInt,
    pub experimental: bool,
}

fn decimal<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl ConstantSchedule {
    pub fn level_params(&self) -> Vec<LevelParams> {
        self.levels.iter().map(|l| LevelParams { classes: l.ell0, alpha: l.alpha.clone() }).collect()
    }

    pub fn alpha(&self) -> &Rational {
        &self.levels[self.levels.len() - 1].alpha
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }
}

/// The exact schedule for `shape`.
pub fn constants(shape: CaterpillarShape) -> Result<ConstantSchedule, PipelineError> {
    schedule_with(shape, None, None)
}

/// The schedule with the top colour count and/or ε overridden.
///
/// With an overridden top count `ℓ`, each lower level takes the largest
/// count `ℓ'` with `h + ℓ'·((d'+1)^{h+1} + 1) ≤ ℓ` (at least 1), so the
/// recursion still receives enough surviving classes.
pub fn schedule_with(
    shape: CaterpillarShape,
    ell: Option<usize>,
    eps: Option<Rational>,
) -> Result<ConstantSchedule, PipelineError> {
    shape.validate().map_err(|e| PipelineError::Input(e.to_string()))?;
    let (h, d, t) = (shape.h, shape.d, shape.t);
    let too_large = || PipelineError::Schedule(format!("colour count exceeds {MAX_CLASSES} for shape {shape}"));

    let natural = natural_classes(h, d);
    let classes = match ell {
        Some(0) => return Err(PipelineError::Input("ℓ must be positive".into())),
        Some(top) => {
            let mut classes = vec![0usize; d + 1];
            classes[d] = top;
            for level in (1..=d).rev() {
                let g = growth(h, level).ok_or_else(too_large)?;
                classes[level - 1] = (classes[level].saturating_sub(h) / g).max(1);
            }
            classes
        }
        None => natural.clone().ok_or_else(too_large)?,
    };
    if classes.iter().any(|&c| c > MAX_CLASSES) {
        return Err(too_large());
    }

    let mut levels = Vec::with_capacity(d + 1);
    let mut alpha = rational::int(1);
    for (level, &ell0) in classes.iter().enumerate() {
        alpha = rational::pow3_inv(ell0) * alpha / rational::int(10);
        levels.push(LevelConstants { d: level, ell0, alpha: alpha.clone() });
    }
    let ell = classes[d];
    let leg_factor = {
        let base = BigInt::from(10 * h * d * t) << (h * d);
        if base.is_zero() {
            BigInt::one()
        } else {
            base
        }
    };
    let experimental = eps.is_some() || natural.is_none_or(|nat| nat[d] != classes[d]);
    let eps = eps.unwrap_or_else(|| &alpha / (Rational::from_integer(leg_factor.clone() * 2) * rational::int(ell)));
    let eps_condition_holds = Rational::from_integer(leg_factor) * rational::int(ell) * &eps < alpha;
    let eps_degree = &eps / rational::int(ell);
    let min_n_bud = rational::ceil_big(&alpha.recip()) * BigInt::from(ell);
    let min_n_degree = if eps_degree > rational::int(0) { rational::ceil_big(&eps_degree.recip()) } else { BigInt::zero() };
    Ok(ConstantSchedule {
        shape,
        levels,
        ell,
        eps,
        eps_degree,
        eps_condition_holds,
        min_n_bud,
        min_n_degree,
        experimental,
    })
}

// (d'+1)^{h+1} + 1
fn growth(h: usize, level: usize) -> Option<usize> {
    (level + 1).checked_pow(u32::try_from(h + 1).ok()?).and_then(|p| p.checked_add(1))
}

fn natural_classes(h: usize, d: usize) -> Option<Vec<usize>> {
    let mut classes = vec![h + 2];
    for level in 1..=d {
        let next = classes[level - 1].checked_mul(growth(h, level)?)?.checked_add(h)?;
        classes.push(next);
    }
    classes.iter().all(|&c| c <= MAX_CLASSES).then_some(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn shape(h: usize, d: usize, t: usize) -> CaterpillarShape {
        CaterpillarShape::new(h, d, t).unwrap()
    }

    #[test]
    fn base_levels() {
        assert_eq!(constants(shape(1, 0, 0)).unwrap().ell, 3);
        assert_eq!(constants(shape(1, 0, 0)).unwrap().levels[0].alpha, ratio(1, 270));
        assert_eq!(constants(shape(2, 1, 1)).unwrap().levels[0].ell0, 4);
        assert_eq!(constants(shape(3, 1, 1)).unwrap().levels[0].ell0, 5);
    }

    #[test]
    fn one_recursion_level() {
        let s = constants(shape(2, 1, 1)).unwrap();
        assert_eq!(s.ell, 38);
        assert_eq!(s.alpha(), &(rational::pow3_inv(38) * rational::pow3_inv(4) / rational::int(100)));
        assert!(s.eps_condition_holds);
        assert!(!s.experimental);
    }

    #[test]
    fn overrides_are_experimental() {
        let s = schedule_with(shape(2, 1, 1), Some(12), Some(ratio(1, 50))).unwrap();
        assert!(s.experimental);
        assert_eq!(s.levels[0].ell0, 1);
        assert_eq!(s.eps, ratio(1, 50));
        let s = schedule_with(shape(1, 1, 1), Some(16), None).unwrap();
        assert_eq!(s.levels[0].ell0, 3);
        assert!(!s.experimental);
    }

    #[test]
    fn huge_schedules_are_refused() {
        assert!(matches!(constants(shape(1, 9, 1)), Err(PipelineError::Schedule(_))));
    }
}
