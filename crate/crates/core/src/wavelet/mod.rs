//! Compactly supported Daubechies tensor-product wavelet machinery:
//! orthonormal filter construction, periodized fast analysis/synthesis on
//! dyadic grids with L_p renormalization, and boundary/interior
//! classification of indices by dyadic distance bands.

pub mod classify;
pub mod filters;
pub mod transform;

pub use classify::{
    band_cutoff, classify, coefficients_csv, BandClass, BandLabel, Classification, LevelBands,
};
pub use filters::{daubechies_filters, FilterPair};
pub use transform::{
    analyze, synthesize, synthesize_coarse, DetailLevel, EType, WaveletCoeffs, WaveletIndex,
};
