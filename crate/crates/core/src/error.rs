use thiserror::Error;

use crate::cubic::Reason;
use crate::geom::Direction;
use crate::quad::DegeneracyClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("direction has zero modulus")]
    InvalidDirection,
    #[error("non-finite coordinate or coefficient")]
    NonFinite,
    #[error("point coincides with {0}")]
    Coincident(&'static str),
    #[error("invalid quadrilateral: {0}")]
    InvalidQuadrilateral(&'static str),
    #[error("quadrilateral is degenerate ({0:?})")]
    Degenerate(DegeneracyClass),
    #[error("quadrilateral belongs to the other degenerate branch")]
    WrongBranch,
    #[error("polynomial has no cubic part")]
    NotCubic,
    #[error("cubic part is not of the form (x^2+y^2)(ux+vy)")]
    NotIsogonalForm,
    #[error("cubic is not an isogonal cubic ({0:?})")]
    NotIsogonal(Reason),
    #[error("point is not on the curve (relative residual {residual:e})")]
    NotOnCurve { residual: f64 },
    #[error("point is singular on the curve")]
    SingularPoint,
    #[error("line is a component of the curve")]
    ReducibleLine,
    #[error("circle is a component of the curve")]
    ComponentCircle,
    #[error("the zero polynomial vanishes everywhere")]
    ZeroPolynomial,
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("result lies at infinity")]
    AtInfinity(Direction),
}
