pub mod barcode;
pub mod complex;
pub mod distance;
pub mod extended;
pub mod gf2;
pub mod interlevel;
pub mod invariants;
pub mod plot;
