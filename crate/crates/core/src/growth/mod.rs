//! Word and geodesic counts, transfer matrices, certified growth rates.

pub mod charpoly;
pub mod counting;
pub mod delta;
pub mod series;
pub mod spectral;

pub use charpoly::{
    characteristic_polynomial, corroborate_perron, polynomial_roots, Corroboration, CORROBORATION_TOLERANCE,
    DEFAULT_CHARPOLY_CAP,
};
pub use counting::{count_words, TransferMatrix};
pub use delta::{delta_report, DeltaReport};
pub use series::{rational_series, RationalSeries};
pub use spectral::{
    growth_rate_enclosure, perron_certificate, spectral_radius_enclosure, spectral_radius_trace, Conclusion,
    Enclosure, PerronCertificate, DEFAULT_ITERATION_CAP,
};
