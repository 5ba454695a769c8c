use crate::error::{Error, Result};
use crate::symgroup::Permutation;

/// Photon-occupation word (one-based modes) of a mode-occupation string.
pub fn word_from_occupation(occupation: &[usize]) -> Vec<usize> {
    occupation
        .iter()
        .enumerate()
        .flat_map(|(mode, &count)| std::iter::repeat_n(mode + 1, count))
        .collect()
}

/// Mode-occupation string of length `modes` for a photon-occupation word.
pub fn occupation_from_word(word: &[usize], modes: usize) -> Result<Vec<usize>> {
    let mut eta = vec![0; modes];
    for &w in word {
        if w == 0 || w > modes {
            return Err(Error::IndexOutOfRange {
                index: w,
                bound: modes,
            });
        }
        eta[w - 1] += 1;
    }
    Ok(eta)
}

/// Input state `|η; υ; τ⟩`: photon `i` enters mode `υ_i` with delay `τ_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhotonInput {
    pub eta: Vec<usize>,
    pub upsilon: Vec<usize>,
    pub tau: Vec<f64>,
}

impl PhotonInput {
    pub fn new(eta: Vec<usize>, upsilon: Vec<usize>, tau: Vec<f64>) -> Result<Self> {
        if upsilon.is_empty() {
            return Err(Error::EmptyWord);
        }
        if tau.len() != upsilon.len() {
            return Err(Error::SizeMismatch {
                expected: upsilon.len(),
                actual: tau.len(),
            });
        }
        if tau.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFinite("delay"));
        }
        if occupation_from_word(&upsilon, eta.len())? != eta {
            return Err(Error::InvalidWord(format!(
                "photon word {upsilon:?} does not reproduce occupation {eta:?}"
            )));
        }
        Ok(PhotonInput { eta, upsilon, tau })
    }

    /// Builds `η` from `υ` for an `m`-mode interferometer.
    pub fn from_word(upsilon: Vec<usize>, modes: usize, tau: Vec<f64>) -> Result<Self> {
        let eta = occupation_from_word(&upsilon, modes)?;
        PhotonInput::new(eta, upsilon, tau)
    }

    pub fn n(&self) -> usize {
        self.upsilon.len()
    }

    pub fn modes(&self) -> usize {
        self.eta.len()
    }

    pub fn with_tau(&self, tau: Vec<f64>) -> Result<Self> {
        PhotonInput::new(self.eta.clone(), self.upsilon.clone(), tau)
    }
}

/// Detection pattern `μ` and its sorted word `ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputEvent {
    pub mu: Vec<usize>,
    pub xi: Vec<usize>,
}

impl OutputEvent {
    pub fn new(mu: Vec<usize>) -> Result<Self> {
        let xi = word_from_occupation(&mu);
        if xi.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(OutputEvent { mu, xi })
    }

    pub fn n(&self) -> usize {
        self.xi.len()
    }

    pub fn modes(&self) -> usize {
        self.mu.len()
    }

    /// Every way of placing `n` photons in `m` modes, lexicographically descending in `μ`.
    pub fn all(n: usize, m: usize) -> Vec<OutputEvent> {
        fn rec(n: usize, m: usize, prefix: &mut Vec<usize>, out: &mut Vec<OutputEvent>) {
            if m == 1 {
                prefix.push(n);
                out.push(OutputEvent::new(prefix.clone()).expect("n > 0"));
                prefix.pop();
                return;
            }
            for k in (0..=n).rev() {
                prefix.push(k);
                rec(n - k, m - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 && m > 0 {
            rec(n, m, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// `Q_σ`: relabels modes, `υ′_i = σ(υ_i)` and `η′_{σ(j)} = η_j`.
pub fn permuted_mode_input(sigma: &Permutation, input: &PhotonInput) -> Result<PhotonInput> {
    if sigma.n() != input.modes() {
        return Err(Error::SizeMismatch {
            expected: input.modes(),
            actual: sigma.n(),
        });
    }
    let upsilon: Vec<usize> = input
        .upsilon
        .iter()
        .map(|&u| sigma.apply(u - 1) + 1)
        .collect();
    let mut eta = vec![0; input.modes()];
    for (j, &count) in input.eta.iter().enumerate() {
        eta[sigma.apply(j)] = count;
    }
    PhotonInput::new(eta, upsilon, input.tau.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn input_validation() {
        assert!(PhotonInput::new(vec![2, 1, 1], vec![1, 1, 2, 3], vec![0.0; 4]).is_ok());
        assert!(PhotonInput::new(vec![2, 1, 1], vec![1, 2, 2, 3], vec![0.0; 4]).is_err());
        assert!(PhotonInput::new(vec![2, 1, 1], vec![1, 1, 2, 3], vec![0.0; 3]).is_err());
        assert!(PhotonInput::from_word(vec![1, 4], 3, vec![0.0; 2]).is_err());
    }

    #[test]
    fn output_word() {
        let e = OutputEvent::new(vec![0, 2, 2]).unwrap();
        assert_eq!(e.xi, vec![2, 2, 3, 3]);
        assert!(OutputEvent::new(vec![0, 0]).is_err());
        assert_eq!(OutputEvent::all(2, 3).len(), 6);
        assert_eq!(OutputEvent::all(4, 3).len(), 15);
    }

    #[test]
    fn mode_permutation() {
        let input = PhotonInput::new(vec![2, 1, 1], vec![1, 1, 2, 3], vec![0.0; 4]).unwrap();
        let q = Permutation::parse_cycles(3, "(12)").unwrap();
        let moved = permuted_mode_input(&q, &input).unwrap();
        assert_eq!(moved.eta, vec![1, 2, 1]);
        assert_eq!(moved.upsilon, vec![2, 2, 1, 3]);
        let c = Permutation::parse_cycles(3, "(123)").unwrap();
        let there = permuted_mode_input(&c, &input).unwrap();
        assert_eq!(permuted_mode_input(&c.inverse(), &there).unwrap(), input);
        assert_eq!(
            permuted_mode_input(&Permutation::identity(3), &input).unwrap(),
            input
        );
    }
}
