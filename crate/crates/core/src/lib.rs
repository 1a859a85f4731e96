//! Exact computations around elliptic regular Weyl group elements: root data,
//! centralizers, torsion quotients, alcove clans, localization sums and
//! relation checks for degenerate double affine Hecke algebra modules.

pub mod affine;
pub mod dahacheck;
pub mod error;
pub mod linalg;
pub mod localize;
pub mod rootdata;
pub mod torsion;
pub mod weylgrp;

pub use error::{Error, Result};
pub use rootdata::{RootDatum, TypeLabel};
