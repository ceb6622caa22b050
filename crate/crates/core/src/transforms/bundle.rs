//! Direction-sampled transforms, computed in parallel and assembled in direction order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curve::{PiecewiseLinearCurve, StepCurve};
use super::{ect, ert, smooth};
use crate::error::{Error, Result};
use crate::geometry::rational::Rational;
use crate::geometry::{CellConstFunction, CubicalComplex, Direction, LowerCellConvention, SimplicialComplex};
use crate::homology;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Ect,
    Sect,
    Lect,
    Select,
    Ert,
    Sert,
    Betti,
}

impl TransformKind {
    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Ect => "ect",
            TransformKind::Sect => "sect",
            TransformKind::Lect => "lect",
            TransformKind::Select => "select",
            TransformKind::Ert => "ert",
            TransformKind::Sert => "sert",
            TransformKind::Betti => "betti",
        }
    }

    pub fn is_smoothed(self) -> bool {
        matches!(self, TransformKind::Sect | TransformKind::Sert)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Curve {
    Step(StepCurve),
    Linear(PiecewiseLinearCurve),
}

impl Curve {
    pub fn as_step(&self) -> Option<&StepCurve> {
        match self {
            Curve::Step(c) => Some(c),
            Curve::Linear(_) => None,
        }
    }

    pub fn as_linear(&self) -> Option<&PiecewiseLinearCurve> {
        match self {
            Curve::Linear(c) => Some(c),
            Curve::Step(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BundleMetadata {
    pub source: String,
    pub window: Option<Rational>,
    pub level: Option<Rational>,
    pub betti_k: Option<usize>,
    pub convention: Option<LowerCellConvention>,
    pub denom_bound: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformBundle {
    pub kind: TransformKind,
    pub directions: Vec<Direction>,
    pub curves: Vec<Curve>,
    pub metadata: BundleMetadata,
}

/// What a transform is computed on.
#[derive(Debug, Clone)]
pub enum ShapeInput {
    Mesh(SimplicialComplex),
    Image { complex: CubicalComplex, function: CellConstFunction },
}

#[derive(Debug, Clone, Default)]
pub struct TransformOptions {
    /// Level `s` for LECT/SELECT.
    pub level: Option<Rational>,
    /// Overrides the default SECT/SERT window.
    pub window: Option<Rational>,
    /// Homology degree for Betti curves.
    pub betti_k: Option<usize>,
}

/// Runs `f` on every item with a pool of `workers` threads; output order
/// follows input order whatever the schedule.
pub fn par_map<T, U, F>(workers: usize, items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    pool.install(|| items.par_iter().map(&f).collect())
}

fn step_curve(input: &ShapeInput, kind: TransformKind, v: &Direction, opts: &TransformOptions) -> Result<StepCurve> {
    let level = || opts.level.clone().ok_or_else(|| Error::Invalid("this transform needs a level s".into()));
    match input {
        ShapeInput::Mesh(k) => {
            let one = CellConstFunction::indicator(k);
            match kind {
                TransformKind::Ect | TransformKind::Sect => ect::ect_shape(k, v),
                TransformKind::Lect => ect::lect(k, &one, v, &level()?),
                TransformKind::Select => ect::select(k, &one, v, &level()?),
                TransformKind::Ert | TransformKind::Sert => ert::ert(k, &one, v),
                TransformKind::Betti => homology::betti_curve(k, v, opts.betti_k.unwrap_or(0)),
            }
        }
        ShapeInput::Image { complex, function } => match kind {
            TransformKind::Ect | TransformKind::Sect => ect::ect_constructible(complex, function, v),
            TransformKind::Lect => ect::lect(complex, function, v, &level()?),
            TransformKind::Select => ect::select(complex, function, v, &level()?),
            TransformKind::Ert | TransformKind::Sert => ert::ert(complex, function, v),
            TransformKind::Betti => homology::betti_curve(&complex.triangulate()?, v, opts.betti_k.unwrap_or(0)),
        },
    }
}

pub fn compute_bundle(
    input: &ShapeInput,
    kind: TransformKind,
    directions: &[Direction],
    opts: &TransformOptions,
    workers: usize,
) -> Result<TransformBundle> {
    let curves = par_map(workers, directions, |v| step_curve(input, kind, v, opts))?;
    let metadata = BundleMetadata {
        level: opts.level.clone().filter(|_| matches!(kind, TransformKind::Lect | TransformKind::Select)),
        betti_k: (kind == TransformKind::Betti).then(|| opts.betti_k.unwrap_or(0)),
        ..Default::default()
    };
    let steps = TransformBundle {
        kind,
        directions: directions.to_vec(),
        curves: curves.into_iter().map(Curve::Step).collect(),
        metadata,
    };
    if kind.is_smoothed() {
        smooth_bundle(&steps, opts.window.as_ref(), workers)
    } else {
        Ok(steps)
    }
}

/// SECT/SERT of an ECT/ERT bundle with one shared window.
pub fn smooth_bundle(bundle: &TransformBundle, window: Option<&Rational>, workers: usize) -> Result<TransformBundle> {
    let steps: Vec<&StepCurve> = bundle
        .curves
        .iter()
        .map(|c| c.as_step().ok_or_else(|| Error::Invalid("bundle already holds smoothed curves".into())))
        .collect::<Result<_>>()?;
    let window = match window {
        Some(w) => w.clone(),
        None => steps.iter().map(|c| smooth::default_window(c)).max().unwrap_or_else(|| crate::geometry::rational::int(1)),
    };
    let kind = match bundle.kind {
        TransformKind::Ert | TransformKind::Sert => TransformKind::Sert,
        _ => TransformKind::Sect,
    };
    let curves = par_map(workers, &steps, |c| smooth::smooth(c, &window).map(Curve::Linear))?;
    Ok(TransformBundle {
        kind,
        directions: bundle.directions.clone(),
        curves,
        metadata: BundleMetadata { window: Some(window), ..bundle.metadata.clone() },
    })
}

/// Inverse of [`smooth_bundle`].
pub fn invert_bundle(bundle: &TransformBundle) -> Result<TransformBundle> {
    let curves = bundle
        .curves
        .iter()
        .map(|c| {
            c.as_linear()
                .map(|pl| Curve::Step(smooth::invert_smooth(pl)))
                .ok_or_else(|| Error::Invalid("invert expects a SECT/SERT bundle".into()))
        })
        .collect::<Result<_>>()?;
    let kind = match bundle.kind {
        TransformKind::Sert => TransformKind::Ert,
        _ => TransformKind::Ect,
    };
    Ok(TransformBundle {
        kind,
        directions: bundle.directions.clone(),
        curves,
        metadata: BundleMetadata { window: None, ..bundle.metadata.clone() },
    })
}
