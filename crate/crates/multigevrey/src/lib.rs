//! Newton-polyhedron analysis of constant-coefficient PDE symbols.
//!
//! Given a polynomial symbol P(ξ), this crate computes its Newton
//! polyhedron in exact rational arithmetic, classifies the operator
//! (multi-quasielliptic, hypoelliptic — as numerical evidence with
//! certificates), constructs a polyhedron of hypoellipticity H together
//! with its companion multi-quasielliptic operator Q_H, and reports the
//! multi-anisotropic Gevrey regularity class of solutions of P(D)u = 0.
//! Growth estimates are verified on closed-form witness solutions.
//!
//! The narrative guide under `book/` walks through the concepts; its code
//! snippets are compiled and run as doctests (see `src/book.rs`).

pub mod classify;
pub mod cli;
pub mod hypo;
pub mod numeric;
pub mod roots;
pub mod polyhedron;
pub mod symbol;

pub use classify::{
    distance_proxy, distance_upper_bound, hypoellipticity_test, multi_quasielliptic_test,
    quasi_principal_part, ClassificationVerdict, ClassifyError, FailureReason,
    HypoellipticityReport, SamplingConfig, VerdictKind,
};
pub use hypo::{
    companion_operator, even_integer_scale, gevrey_classes, hypoellipticity_polyhedron,
    GevreyClass, GevreyClassReport, HypoError, HypoPolyhedron,
};
pub use polyhedron::{NewtonPolyhedron, PolyhedronError, RationalVector};
pub use symbol::{
    parse_symbol, CompiledSymbol, Evaluation, MultiIndex, ParseError, PolynomialSymbol,
    SymbolError,
};
