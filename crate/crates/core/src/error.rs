use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("scale profile invalid: {0}")]
    ProfileInvalid(String),

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error(
        "quadrature tolerance not met: requested rel {requested_rel:.3e}, achieved abs error \
         estimate {achieved:.3e} on value of magnitude {magnitude:.3e}"
    )]
    ToleranceNotMet {
        requested_rel: f64,
        achieved: f64,
        magnitude: f64,
    },

    #[error("integral appears divergent: estimate grew from {previous:.3e} to {current:.3e} across tail doublings")]
    Divergent { previous: f64, current: f64 },

    #[error("integrand not integrable near zero: {0}")]
    NotIntegrable(String),

    #[error("least-squares fit ill-conditioned: {0}")]
    IllConditionedFit(String),

    #[error("field not resolved by the requested stencil: {0}")]
    ResolutionError(String),

    #[error("simulation blew up at t = {t:.6e}: max |w| = {linf:.3e}")]
    BlowUp { t: f64, linf: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
