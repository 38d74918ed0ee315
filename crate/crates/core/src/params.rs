//! Learning and reward hyperparameters shared by every algorithm.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("hyperparameter `{name}` = {value} is outside {range}")]
pub struct ParamRangeError {
    pub name: &'static str,
    pub value: f64,
    pub range: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperparams {
    /// Learning rate.
    pub alpha: f64,
    /// Discount factor.
    pub gamma: f64,
    /// Exploration probability of the ε-greedy policy.
    pub epsilon: f64,
    /// Weight on an agent's own value in the cooperative blend.
    pub omega: f64,
    /// Distance-reward coefficient.
    pub c_d: f64,
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            alpha: 0.3,
            gamma: 0.4,
            epsilon: 0.3,
            omega: 0.3,
            c_d: 0.9,
            w1: 0.7,
            w2: 0.05,
            w3: 0.25,
        }
    }
}

impl Hyperparams {
    pub fn validate(&self) -> Result<(), ParamRangeError> {
        let unit = |name, value: f64| {
            if (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(ParamRangeError { name, value, range: "[0, 1]" })
            }
        };
        unit("alpha", self.alpha)?;
        unit("epsilon", self.epsilon)?;
        unit("omega", self.omega)?;
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(ParamRangeError { name: "gamma", value: self.gamma, range: "[0, 1)" });
        }
        if !(self.c_d > 0.0 && self.c_d.is_finite()) {
            return Err(ParamRangeError { name: "c_d", value: self.c_d, range: "(0, inf)" });
        }
        for (name, value) in [("w1", self.w1), ("w2", self.w2), ("w3", self.w3)] {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(ParamRangeError { name, value, range: "[0, inf)" });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert_eq!(Hyperparams::default().validate(), Ok(()));
    }

    #[test]
    fn names_offending_field() {
        let p = Hyperparams { epsilon: 1.5, ..Default::default() };
        assert_eq!(p.validate().unwrap_err().name, "epsilon");
        let p = Hyperparams { gamma: 1.0, ..Default::default() };
        assert_eq!(p.validate().unwrap_err().name, "gamma");
        let p = Hyperparams { w2: -0.1, ..Default::default() };
        assert_eq!(p.validate().unwrap_err().name, "w2");
        let p = Hyperparams { alpha: f64::NAN, ..Default::default() };
        assert_eq!(p.validate().unwrap_err().name, "alpha");
    }
}
