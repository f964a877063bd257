//! Exact combinatorics of external rays for polynomial dynamics.
//!
//! Angles live on `R/Z` as reduced rationals and never pass through floating
//! point until a spectral radius is extracted in [`entropy`].
//!
//! ```
//! use laminations::{lamination, Angle};
//!
//! let rabbit = lamination(&Angle::frac(1, 7), 3, 1).unwrap();
//! let class = rabbit.class_of(&Angle::frac(2, 7)).unwrap();
//! assert_eq!(class, &[Angle::frac(1, 7), Angle::frac(2, 7), Angle::frac(4, 7)]);
//! ```

pub mod circle;
pub mod cli;
pub mod critportrait;
pub mod entropy;
pub mod error;
pub mod itinerary;
pub mod portrait;
pub mod quadratic;
pub mod svg;

pub use circle::{orbit, sigma, unlinked, Angle, Arc, Orbit};
pub use critportrait::{
    hat_closure, partition, piece_of, quadratic_portrait, CriticalPortrait, Partition,
};
pub use entropy::{acc_angles, core_entropy, hdim_growth, pair_graph, AccSet, PairGraph};
pub use error::{Error, PortraitCondition, Result};
pub use itinerary::{
    itinerary, lamination, same_itinerary, valence_histogram, BoundaryRule, Itinerary, Lamination,
    LandingModel, Symbols,
};
pub use portrait::{map_portrait, sector_image, sectors, Portrait, Sector};
pub use quadratic::{characteristic_arc, precedes, preimage_arcs, CharacteristicArc};
