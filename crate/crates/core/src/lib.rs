//! Decompose `(x_1 + s_1) ... (x_n + s_n)` over the binomial basis generated
//! by a labeled complete binary tree, then build the matching box out of the
//! basis bricks and certify the tiling exactly.
//!
//! ```
//! use bricks::{build, verify_tiling, LabeledTree, Rational};
//!
//! let tree = LabeledTree::generate(&[0, 0, 0]).unwrap();
//! let x = vec![Rational::integer(3); 3];
//! let scene = build(&tree, &x, 1).unwrap();
//! assert_eq!(scene.bricks.len(), 6);
//! assert!(verify_tiling(&scene).unwrap().is_exact_tiling());
//! ```

pub mod builder;
pub mod decomposition;
pub mod error;
pub mod io;
pub mod numeric;
pub mod tree;
pub mod verify;

pub use builder::{assign_colors, build, build_from, choose_start, Color, Scene, StartRequest};
pub use decomposition::{
    all_bitstrings, bits_to_subset, decompose, eulerian, eval_p, refinement_check,
    roots_and_coefs, subset_to_bits, verify_identity, BasisElement, Bits, Decomposition,
    Refinement,
};
pub use error::{Error, Result};
pub use io::{export_off, export_scene, import_scene};
pub use numeric::{Brick, Cuboid, Rational};
pub use tree::{child_labels, LabeledNode, LabeledTree, ProblemSpec};
pub use verify::{lattice_cover_check, lattice_cover_check_auto, verify_tiling, TilingReport};
