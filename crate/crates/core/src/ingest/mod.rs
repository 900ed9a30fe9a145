//! Representation files and the example gallery.

mod gallery;
mod repfile;

pub use gallery::{
    fuchsian_genus2, gallery, pinched_a, s2_times_z, schottky2, schottky_with, GalleryEntry, SchottkyFamily,
    GALLERY_NAMES,
};
pub use repfile::{emit_rep, parse_rep, RepError, RepErrorKind, RepFile, DET_REJECT};
