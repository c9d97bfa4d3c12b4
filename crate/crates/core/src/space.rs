//! Labeled bases and normalized states over them.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{GameError, Result};

/// Amplitude magnitude above which a state counts as touching a truncation
/// boundary level.
pub const LEAK_TOL: f64 = 1e-12;

/// A labeled basis plus the subset of indices where the truncated algebra is
/// exact.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSpace {
    description: String,
    labels: Vec<String>,
    interior: Vec<usize>,
}

impl GameSpace {
    pub fn new(description: impl Into<String>, labels: Vec<String>, interior: Vec<usize>) -> Self {
        debug_assert!(interior.iter().all(|&i| i < labels.len()));
        Self {
            description: description.into(),
            labels,
            interior,
        }
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    pub fn boundary(&self) -> Vec<usize> {
        (0..self.dim()).filter(|i| !self.interior.contains(i)).collect()
    }

    /// Basis index for a label such as `n=3`, `n=(1,0)` or `κ=1/2,μ=-1/2`.
    ///
    /// Matching ignores whitespace, accepts `kappa`/`mu` for `κ`/`μ`, the
    /// Unicode minus sign, and either fractional (`3/2`) or decimal (`1.5`)
    /// numbers.
    pub fn resolve(&self, label: &str) -> Result<usize> {
        let wanted = parse_label(label)
            .ok_or_else(|| GameError::Label(format!("cannot parse basis label '{label}'")))?;
        self.labels
            .iter()
            .position(|l| parse_label(l).is_some_and(|have| labels_match(&have, &wanted)))
            .ok_or_else(|| GameError::Label(format!("unknown basis label '{label}'")))
    }
}

type ParsedLabel = Vec<(String, Vec<f64>)>;

fn parse_label(raw: &str) -> Option<ParsedLabel> {
    let cleaned: String = raw
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    let cleaned = cleaned.replace("kappa", "κ").replace("mu", "μ");

    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in cleaned.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&cleaned[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&cleaned[start..]);

    parts
        .into_iter()
        .map(|part| {
            let (key, value) = part.split_once('=')?;
            let value = value.strip_prefix('(').and_then(|v| v.strip_suffix(')')).unwrap_or(value);
            let numbers = value.split(',').map(parse_number).collect::<Option<Vec<_>>>()?;
            Some((key.to_string(), numbers))
        })
        .collect()
}

/// Parses `a`, `a.b` or `p/q`.
pub fn parse_number(s: &str) -> Option<f64> {
    let s = s.trim().replace('\u{2212}', "-");
    if let Some((num, den)) = s.split_once('/') {
        let num: f64 = num.parse().ok()?;
        let den: f64 = den.parse().ok()?;
        if den == 0.0 {
            return None;
        }
        Some(num / den)
    } else {
        s.parse().ok().filter(|v: &f64| v.is_finite())
    }
}

fn labels_match(a: &ParsedLabel, b: &ParsedLabel) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|((ka, va), (kb, vb))| {
            ka == kb && va.len() == vb.len() && va.iter().zip(vb).all(|(x, y)| (x - y).abs() < 1e-9)
        })
}

/// Formats a value that is a multiple of 1/2 as `p/2` or an integer, and
/// anything else in shortest round-trip form.
pub fn format_half(value: f64) -> String {
    let twice = (2.0 * value).round();
    if (2.0 * value - twice).abs() < 1e-9 {
        let twice = twice as i64;
        if twice % 2 == 0 {
            format!("{}", twice / 2)
        } else {
            format!("{twice}/2")
        }
    } else {
        format!("{value}")
    }
}

/// Normalized complex amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct GameState {
    amplitudes: DVector<Complex64>,
}

impl GameState {
    /// Accepts amplitudes that are already normalized to 1e-12.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if amplitudes.is_empty() || (norm - 1.0).abs() > 1e-12 {
            return Err(GameError::State(format!("state is not normalized (norm {norm})")));
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes arbitrary nonzero amplitudes.
    pub fn normalized(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(GameError::State("amplitudes must be finite".into()));
        }
        let norm = amplitudes.norm();
        if norm == 0.0 {
            return Err(GameError::State("all amplitudes are zero".into()));
        }
        Ok(Self {
            amplitudes: amplitudes.unscale(norm),
        })
    }

    /// Basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(GameError::Dimension(format!("basis index {index} out of range for dimension {dim}")));
        }
        let mut v = DVector::zeros(dim);
        v[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Fails with [`GameError::Truncation`] if any index outside `interior`
    /// carries amplitude above [`LEAK_TOL`].
    pub fn check_interior(&self, interior: &[usize]) -> Result<()> {
        for (level, z) in self.amplitudes.iter().enumerate() {
            if !interior.contains(&level) && z.norm() > LEAK_TOL {
                return Err(GameError::Truncation {
                    level,
                    amplitude: z.norm(),
                });
            }
        }
        Ok(())
    }
}

/// Builds a normalized state from `(label, amplitude)` pairs; repeated
/// labels are summed before normalization.
pub fn prepare_state(space: &GameSpace, spec: &[(String, Complex64)]) -> Result<GameState> {
    let mut amplitudes = DVector::zeros(space.dim());
    for (label, amp) in spec {
        let idx = space.resolve(label)?;
        amplitudes[idx] += *amp;
    }
    GameState::normalized(amplitudes)
}
