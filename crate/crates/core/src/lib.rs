//! ContactTree layout for egocentric contact diaries.
//!
//! A diary (egos, their ties, and dated contacts along each tie) is drawn as
//! a tree: each tie is a line rising from the trunk, bundled into main
//! branches by a binned attribute, ending in a small branch that carries one
//! leaf per contact. Attribute-to-feature mappings are data
//! ([`mapping::MappingSpec`]), geometry is tuned by
//! [`layout::LayoutParams`], and [`layout::layout_tree`] produces a
//! [`scene::SceneGraph`] that [`render::scene_to_svg`] writes out.
//!
//! The crate is `no_std` with `alloc`; file formats, the CLI and the HTTP
//! service live in the `contacttrees` crate.

#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod attr;
pub mod diary;
pub mod geom;
pub mod layout;
pub mod mapping;
pub mod render;
pub mod report;
pub mod scene;
pub mod schema;
pub mod synth;

pub use attr::{AttributeKind, AttributeValue, Date, Period};
pub use diary::{Contact, ContactId, Diary, DiaryError, Ego, EgoId, Tie, TieId};
pub use layout::{layout_tree, LayoutError, LayoutParams};
pub use mapping::{preset_mapping, MappingSpec};
pub use render::{legend_for, scene_to_svg, StyleSheet};
pub use scene::SceneGraph;
pub use schema::AttributeSchema;
