//! Initial vorticity families split as `ω₀ = f₀ + Ω₀`.

mod datum;
mod family;
mod generators;
mod validate;

pub use datum::{DatumMeta, HypothesisFlags, InitialDatum};
pub use family::FamilySpec;
pub use generators::{h2_point_vortex, lp_blob, smooth_control, vortex_sheet, MIN_CORE_CELLS};
pub use validate::{validate_hypotheses, HypothesisReport};
