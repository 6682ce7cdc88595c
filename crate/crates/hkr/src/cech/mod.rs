//! Čech models on a finite nerve: cochains with local coefficients, twisted
//! AK complexes, and the comparison matrix between two twists.

pub mod atiyah;
pub mod cochain;
pub mod delta;
pub mod divisor;
pub mod input;
pub mod nerve;
pub mod probe;
pub mod twist;
