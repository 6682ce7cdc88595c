//! HKR isomorphisms for the split local model.

pub mod ac;
pub mod cycle;
pub mod dual;
pub mod koszul;
pub mod model;

pub use ac::{ac_check, AcCheck};
pub use cycle::{cycle_class_local, CycleClassLocal};
pub use dual::{dual_hkr_sign, DualHkrSign};
pub use koszul::{hkr_local, HkrLocal};
pub use model::{parse_model, LocalModel, ModelSpec};
