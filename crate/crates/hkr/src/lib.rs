pub mod chain;
pub mod cech;
pub mod connections;
pub mod error;
pub mod exterior;
pub mod extension;
pub mod hkr;
pub mod ak;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod rational;
pub mod report;
