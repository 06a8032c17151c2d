use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailBound {
    /// Chernoff bound for `P(Poisson(mu) >= t)`, `t > mu`.
    Poisson { mu: f64, t: f64 },
    /// Bound for `P(NB(r, nu) > gamma r / nu)`, `gamma > 1`.
    NegBinom { r: f64, nu: f64, gamma: f64 },
    /// Leading-order probability that vertices `i` and `j` are adjacent in
    /// the pairing model on `degrees`.
    EdgeProb { i: usize, j: usize },
}

pub fn tail_bounds(kind: TailBound, degrees: &[usize]) -> Result<f64> {
    match kind {
        TailBound::Poisson { mu, t } => {
            if !(mu > 0.0) {
                return Err(Error::domain("mu", format!("{mu} is not positive")));
            }
            if !(t > mu) || t.fract() != 0.0 {
                return Err(Error::domain("t", format!("{t} must be an integer above mu = {mu}")));
            }
            Ok((t + t * mu.ln() - mu - t * t.ln()).exp())
        }
        TailBound::NegBinom { r, nu, gamma } => {
            if !(r >= 1.0) {
                return Err(Error::domain("r", format!("{r} < 1")));
            }
            if !(nu > 0.0 && nu < 1.0) {
                return Err(Error::domain("nu", format!("{nu} not in (0,1)")));
            }
            if !(gamma > 1.0) {
                return Err(Error::domain("gamma", format!("{gamma} <= 1")));
            }
            let s = 1.0 - 1.0 / gamma;
            Ok((-gamma * r * s * s / 2.0).exp())
        }
        TailBound::EdgeProb { i, j } => {
            if i >= degrees.len() || j >= degrees.len() {
                return Err(Error::domain("i/j", format!("index outside 0..{}", degrees.len())));
            }
            let m1: usize = degrees.iter().sum();
            if m1 == 0 {
                return Err(Error::domain("degrees", "degree sum is zero"));
            }
            Ok((degrees[i] * degrees[j]) as f64 / m1 as f64)
        }
    }
}
