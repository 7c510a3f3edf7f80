//! Holomorphic maps on unit balls: catalog, Jacobians, branch powers, inversion and image
//! membership.

pub mod branch;
pub mod fd;
pub mod image;
pub mod invert;
mod map;

pub use branch::{branch_power, BranchTracker};
pub use image::{ImageDescriptor, Membership, MembershipStatus};
pub use invert::{default_seeds, image_contains, invert, invert_default, locate, winding_number};
pub use map::HoloMap;
