//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LorentzError {
    #[error("causal character of the zero vector is undefined")]
    ZeroVector,
    #[error("degenerate basis: |det| = {det:e} is negligible against the basis scale")]
    DegenerateBasis { det: f64 },
}

#[derive(Debug, Error)]
pub enum LightconeError {
    #[error("stereographic projection needs a lightlike vector; <L,L> = {q:e}")]
    NotLightlike { q: f64 },
    #[error("stereographic projection needs a future-directed ray; time component {t:e}")]
    PastDirected { t: f64 },
    #[error("the pair (x, y) is degenerate: |x - y| = {sep:e} below the separation tolerance")]
    DegeneratePair { sep: f64 },
    #[error("W(inf, inf) is undefined")]
    DoubleInfinity,
    #[error("projective point needs a nonzero representative")]
    ZeroRepresentative,
    #[error("the rays are proportional and span no plane")]
    DegeneratePlane,
}

#[derive(Debug, Error)]
pub enum GridError {
    #[error("grid needs at least 5 nodes per direction, got {nu} x {nv}")]
    TooFewNodes { nu: usize, nv: usize },
    #[error("grid extent is empty or not finite")]
    BadExtent,
    #[error("field length {len} does not match grid node count {nodes}")]
    LengthMismatch { len: usize, nodes: usize },
    #[error("path point ({u}, {v}) lies outside the grid rectangle")]
    PathOutsideDomain { u: f64, v: f64 },
    #[error("polyline needs at least 2 distinct points")]
    BadPath,
    #[error("grids of the operands differ")]
    GridMismatch,
    #[error("{what} vanishes on {failing} of {total} masked-in nodes; the quotient is ill-posed")]
    IllPosedDivision {
        what: String,
        failing: usize,
        total: usize,
    },
    #[error("the masked-in region is not edge-connected; phase unwrapping is ambiguous")]
    DisconnectedMask,
    #[error("mask is empty: no nodes to evaluate")]
    EmptyMask,
}

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("generators are inconsistent: |mu||x-y| deviates from 1 by {defect:e} (beyond 10x tolerance {tol:e})")]
    InconsistentGenerators { defect: f64, tol: f64 },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("holomorphy defect {defect:e} exceeds {tol:e}; the residual is meaningless for non-holomorphic input")]
    NotHolomorphic { defect: f64, tol: f64 },
    #[error("c = 0 in the Mobius relation: this branch is the exponential family, not the harmonic-angle generator")]
    MobiusDegenerate,
    #[error("the grid touches a singular set of the family: {count} offending nodes, first at (u,v) = ({u}, {v})")]
    SingularMargin { count: usize, u: f64, v: f64 },
    #[error("family parameter out of range: {0}")]
    BadFamilyParameter(String),
}
