//! Longitude systems from link diagrams and braids, and structural link operations.

pub mod braid;
pub mod ops;
pub mod pd;
pub mod wirtinger;

pub use braid::{artin_longitudes, sigma_longitudes, ArtinLetter, PureBraidWord};
pub use ops::{connected_sum, inverse_mirror, reorder, reorient};
pub use pd::{braid_closure_pd, Crossing, PdCode, PdFile};
pub use wirtinger::{linking_matrix, longitudes_mod_q, wirtinger, CrossingRelation, WirtingerPresentation};
