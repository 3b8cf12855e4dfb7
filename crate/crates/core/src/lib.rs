pub mod approx;
pub mod complexify;
pub mod duality;
pub mod exact;
pub mod json;
pub mod profinite;
pub mod rings;
pub mod sample;
pub mod spectra;
pub mod suites;
