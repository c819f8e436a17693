//! Gain graphs over finite groups.
//!
//! Balance and switching equivalence can be decided combinatorially from a
//! spanning-tree potential, or spectrally from represented adjacency matrices
//! and closed-walk traces. Cover graphs decompose over irreducible
//! representations, and G-block circulant matrices are handled the same way.
//!
//! Layout:
//!
//! * [`groups`]: finite groups from built-in families or Cayley tables.
//! * [`reps`]: complex representations, characters and irreducible systems.
//! * [`galg`]: the group algebra, matrices over it and the Fourier transform.
//! * [`spectra`]: eigensolvers and tolerance-aware spectrum multisets.
//! * [`gain`]: gain graphs, balance deciders and switching.
//! * [`cover`]: cover graphs and their spectral decomposition.
//! * [`circulant`]: G-block circulant matrices.

pub mod circulant;
pub mod cover;
pub mod error;
pub mod gain;
pub mod galg;
pub mod groups;
pub mod reps;
pub mod spectra;

pub use error::{Error, Result};

/// Dense complex matrix used for Fourier images and represented adjacency matrices.
pub type CMatrix = nalgebra::DMatrix<num_complex::Complex64>;

pub use num_complex::Complex64;
