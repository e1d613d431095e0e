use crate::error::{Error, Result};

/// Numerical thresholds.
///
/// `zero` decides whether an off-diagonal product `K_ij K_ji` counts as
/// nonzero; `sign` is the relative floor below which a quantity whose sign is
/// consumed is treated as undetermined.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub zero: f64,
    pub sign: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zero: 1e-12,
            sign: 1e-10,
        }
    }
}

impl Tolerances {
    /// Defaults, overridden by the `PMA_TOL` environment variable when set.
    ///
    /// Accepted forms: `"SIGN,ZERO"`, `"SIGN"`, or named parts such as
    /// `"sign=1e-9,zero=1e-13"`.
    pub fn from_env() -> Result<Self> {
        match std::env::var("PMA_TOL") {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut t = Self::default();
        for (pos, part) in s.split(',').map(str::trim).filter(|p| !p.is_empty()).enumerate() {
            let (name, value) = match part.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None if pos == 0 => ("sign", part),
                None if pos == 1 => ("zero", part),
                None => return Err(Error::Parse(format!("PMA_TOL: unexpected part {part:?}"))),
            };
            let v: f64 = value
                .parse()
                .map_err(|_| Error::Parse(format!("PMA_TOL: bad number {value:?}")))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parse(format!("PMA_TOL: {name} must be positive")));
            }
            match name {
                "sign" => t.sign = v,
                "zero" => t.zero = v,
                _ => return Err(Error::Parse(format!("PMA_TOL: unknown key {name:?}"))),
            }
        }
        Ok(t)
    }
}
