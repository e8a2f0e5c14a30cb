//! Exact computation of the JKSS invariant of virtual links and its twisted
//! counterpart for twisted links, double covering diagrams, and local moves
//! used to check invariance.
//!
//! ```
//! use tjkss::{parse_diagram, twisted_jkss};
//!
//! let d = parse_diagram("crossing 1 +\nedge 1.0 1.1\nedge 1.1 1.0 bars=1\n").unwrap();
//! let z = twisted_jkss(&d).unwrap();
//! println!("{}", z.canonical);
//! ```

pub mod covering;
pub mod diagram;
pub mod format;
pub mod invariant;
pub mod laurent;
pub mod matrix;
pub mod moves;
pub mod oracle;
pub mod selftest;

pub use covering::{connected_sum_witness, double_cover};
pub use diagram::{
    connected_sum, mirror, random_diagram, writhe, CrossingId, CrossingSign, DiagramEdge,
    DiagramError, Polarity, Port, TwistedDiagram, Violation,
};
pub use format::{parse_diagram, render_diagram};
pub use invariant::{
    build_m, build_mtilde, build_p, build_ptilde, jkss, twisted_jkss, InvariantError,
    InvariantValue, Warning,
};
pub use laurent::{
    equal_up_to_x_power, normalize_x, parse_poly, render_poly, LaurentPoly, Monomial,
    ParsePolyError,
};
pub use matrix::{determinant, PolyMatrix};
pub use moves::{apply, enumerate_sites, random_walk, MoveError, MoveKind, MoveSite};
