//! Filtrations of quotient metric spaces built by conservative complete
//! linkage, with the Vietoris-Rips reference they approximate.
//!
//! Everything is generic over the scalar type ([`scalar::Scalar`], `f32` or
//! `f64`). The aliases at the crate root fix it to `f64`; the `*F32` ones
//! fix it to `f32`.

pub mod bottleneck;
pub mod complex;
pub mod covers;
pub mod error;
pub mod linkage;
pub mod metric;
pub mod partition;
pub mod persistence;
pub mod scalar;
pub mod stats;
pub mod synth;
pub mod tower;
pub mod union_find;

pub use error::{Error, Result};

pub type PointCloud = metric::PointCloud<f64>;
pub type DistanceMatrix = metric::DistanceMatrix<f64>;
pub type SortedEdgeList = metric::SortedEdgeList<f64>;
pub type MergeHistory = linkage::MergeHistory<f64>;
pub type FilteredGraph = tower::FilteredGraph<f64>;
pub type FilteredComplex = persistence::FilteredComplex<f64>;
pub type Barcode = persistence::Barcode<f64>;

pub type PointCloudF32 = metric::PointCloud<f32>;
pub type DistanceMatrixF32 = metric::DistanceMatrix<f32>;
pub type SortedEdgeListF32 = metric::SortedEdgeList<f32>;
pub type MergeHistoryF32 = linkage::MergeHistory<f32>;
pub type FilteredGraphF32 = tower::FilteredGraph<f32>;
pub type FilteredComplexF32 = persistence::FilteredComplex<f32>;
pub type BarcodeF32 = persistence::Barcode<f32>;
