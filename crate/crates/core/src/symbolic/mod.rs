//! External addresses, dynamic rays ("hairs") and the separation estimates
//! between fast and slow orbits.

pub mod address;
pub mod hair;
pub mod lemmas;

pub use address::{ExternalAddress, MAX_ENTRY};
pub use hair::{
    default_anchor, endpoint_estimate, inverse_branch, itinerary, separation_index, strip_index,
    trace_hair, EndpointEstimate, HairPoint,
};
pub use lemmas::{
    compute_lambda, find_domination_index, prop4_membership, Polyline, Prop4Membership,
    SeparationConfig, ARC_TOL,
};
