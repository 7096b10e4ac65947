use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("undersampling factor {num}/{den} must be at least 1 and a multiple of 1/30")]
    InvalidTheta { num: u32, den: u32 },
    #[error("delta {num}/{den} must lie strictly between 0 and 1/2")]
    InvalidDelta { num: u32, den: u32 },
    #[error("cannot parse fraction {0:?}; expected p/q or an integer")]
    BadFraction(String),
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),
    #[error("unknown distribution {0:?}")]
    UnknownDistribution(String),
    #[error("{0} is not supported by the worst-case simulation")]
    NotSimulated(&'static str),
    #[error("recurrence needs alpha + beta < 1 with positive alpha, beta and C")]
    RecurrenceDomain,
    #[error("alpha {alpha} outside [1/(5 theta), 1/2] for theta {theta}")]
    AlphaDomain { alpha: f64, theta: f64 },
}

impl Error {
    pub(crate) fn parse_fraction(s: &str) -> Result<(u32, u32), Error> {
        let bad = || Error::BadFraction(s.to_owned());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p = p.parse().map_err(|_| bad())?;
        let q: u32 = q.parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ok((p, q))
    }
}
