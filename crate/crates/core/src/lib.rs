//! Growth of Coxeter groups through the small-root automata: exact
//! construction of the Geo and ShortLex automata, word and geodesic counts,
//! certified growth-rate enclosures and Perron certificates, with a
//! brute-force enumeration oracle for cross-checking.

pub mod algebra;
pub mod analysis;
pub mod automata;
pub mod config;
pub mod diagram;
pub mod error;
pub mod growth;
pub mod oracle;
pub mod roots;

pub use algebra::{gram_matrix, BilinearForm, FieldElement, NumberField, RootVector, Sign};
pub use analysis::{analyze, check, GrowthReport, Pipeline};
pub use automata::{build_geo, build_shortlex, Automaton, AutomatonKind, CoreGraph};
pub use config::{AnalysisConfig, OutputFormat};
pub use diagram::{
    admissible_labelling, infinity_spanned, parse_diagram, CoxeterDiagram, GeometricDiagram, Label, Labelling,
    ParsedDiagram, SpanningTree,
};
pub use error::{Error, Result};
pub use growth::{count_words, perron_certificate, spectral_radius_enclosure, Enclosure, PerronCertificate, TransferMatrix};
pub use oracle::bfs_group;
pub use roots::{small_roots, RootAction, SmallRootSet};
