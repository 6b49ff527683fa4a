//! Reading contours, masks and sample manifests.

mod csv;
mod manifest;
mod mask;

use std::path::Path;

use rayon::prelude::*;

pub use self::csv::{format_contour_csv, parse_contour_csv, read_contour_csv, write_contour};
pub use self::manifest::{ManifestEntry, SampleManifest, Strategy, DEFAULT_K};
pub use self::mask::{mask_to_contour, parse_pgm, read_mask, trace_boundary, write_pgm, BinaryMask};

use crate::contour::{
    build_correspondence, canonicalize, evaluate, Contour, Correspondence, ParamCurve,
    StoppingTimes,
};
use crate::error::{Result, ShapeError};
use crate::rng::seeded;
use crate::shape_space::{preshape, Preshape};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourFormat {
    Csv,
    Mask,
}

impl ContourFormat {
    /// `.pgm` is a mask, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("pgm") => Self::Mask,
            _ => Self::Csv,
        }
    }
}

pub fn read_contour(path: &Path, format: ContourFormat) -> Result<Contour> {
    match format {
        ContourFormat::Csv => read_contour_csv(path),
        ContourFormat::Mask => mask_to_contour(&read_mask(path)?),
    }
}

/// A corresponded sample, in manifest order.
#[derive(Debug, Clone)]
pub struct LoadedSample {
    pub ids: Vec<String>,
    pub curves: Vec<ParamCurve>,
    pub times: StoppingTimes,
    pub kgons: Vec<Contour>,
    pub preshapes: Vec<Preshape>,
}

fn tag(id: &str, e: ShapeError) -> ShapeError {
    ShapeError::Entry {
        id: id.to_string(),
        source: Box::new(e),
    }
}

/// Reads and canonicalizes every manifest entry (in parallel, kept in order).
pub fn load_curves(manifest: &SampleManifest) -> Result<Vec<ParamCurve>> {
    manifest.validate()?;
    manifest
        .entries
        .par_iter()
        .map(|e| {
            read_contour(&e.path, ContourFormat::from_path(&e.path))
                .and_then(|c| canonicalize(&c))
                .map_err(|err| tag(&e.id, err))
        })
        .collect()
}

pub fn correspondence_of(manifest: &SampleManifest) -> Correspondence {
    match manifest.strategy {
        Strategy::Shared => Correspondence::Shared(manifest.k),
        Strategy::Union => Correspondence::Union(manifest.entry_ks()),
    }
}

/// Evaluates canonicalized curves at common stopping times drawn from the
/// manifest seed and preshapes the resulting k-gons.
pub fn correspond(
    ids: Vec<String>,
    curves: Vec<ParamCurve>,
    strategy: &Correspondence,
    seed: u64,
) -> Result<LoadedSample> {
    let mut rng = seeded(seed);
    let times = build_correspondence(&curves, strategy, &mut rng)?;
    let (kgons, preshapes): (Vec<_>, Vec<_>) = ids
        .iter()
        .zip(&curves)
        .map(|(id, curve)| {
            let kgon = evaluate(curve, &times).map_err(|e| tag(id, e))?;
            let p = preshape(&kgon).map_err(|e| tag(id, e))?;
            Ok((kgon, p))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    Ok(LoadedSample {
        ids,
        curves,
        times,
        kgons,
        preshapes,
    })
}

pub fn load_sample(manifest: &SampleManifest) -> Result<LoadedSample> {
    let curves = load_curves(manifest)?;
    let ids = manifest.entries.iter().map(|e| e.id.clone()).collect();
    correspond(ids, curves, &correspondence_of(manifest), manifest.seed)
}
