//! File formats, output encoding and the verification table behind the
//! `widthlab` command.

pub mod output;
pub mod polytope_file;
pub mod verify;
