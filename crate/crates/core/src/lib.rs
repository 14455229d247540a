//! Extended affine Weyl groups of simply laced type: exact arithmetic in the
//! hyperbolic extension, semilattices, root systems, normal forms and
//! Coxeter-type presentations.

pub mod cli;
pub mod exactlinalg;
pub mod hyperbolic;
pub mod parallel;
pub mod presentation;
pub mod rootsystem;
pub mod semilattice;
pub mod suites;
pub mod weylgroup;
