//! Report documents and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::Serialize;

use ncgame::lie::HalfInteger;
use ncgame::scenario::{PayoffAlgebra, ScenarioOutcome, VerificationReport};

use crate::numfmt::{exact, human, small};

pub fn header() -> String {
    format!("ncgame {}\n", env!("CARGO_PKG_VERSION"))
}

#[derive(Serialize)]
pub struct CheckDoc {
    pub relation: String,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct VerifyDoc {
    pub algebra: String,
    pub space: String,
    pub relation_set: String,
    pub tolerance: f64,
    pub passed: bool,
    pub worst_residual: f64,
    pub checks: Vec<CheckDoc>,
}

impl VerifyDoc {
    pub fn new(algebra: &PayoffAlgebra, set: &str, report: &VerificationReport) -> Self {
        Self {
            algebra: algebra.kind.clone(),
            space: algebra.space.description().to_string(),
            relation_set: set.to_string(),
            tolerance: report.tolerance,
            passed: report.passed(),
            worst_residual: report.worst_residual,
            checks: report
                .checks
                .iter()
                .map(|c| CheckDoc {
                    relation: c.relation.clone(),
                    residual: c.residual,
                    passed: c.passed,
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = header();
        writeln!(s, "algebra {} ({})", self.algebra, self.space).unwrap();
        writeln!(s, "relations {} at tol {}", self.relation_set, small(self.tolerance)).unwrap();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(s, "{mark} {}  residual {}", c.relation, small(c.residual)).unwrap();
        }
        writeln!(s, "worst residual {}", small(self.worst_residual)).unwrap();
        s
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["relation", "residual", "passed"]).unwrap();
        for c in &self.checks {
            w.write_record([c.relation.as_str(), &exact(c.residual), &c.passed.to_string()])
                .unwrap();
        }
        finish(w)
    }
}

#[derive(Serialize)]
pub struct SpectrumDoc {
    pub algebra: String,
    pub space: String,
    pub operator: String,
    pub eigenvalues: Vec<f64>,
}

impl SpectrumDoc {
    pub fn text(&self) -> String {
        let values: Vec<String> = self.eigenvalues.iter().map(|&v| human(v)).collect();
        format!("{}{}\n", header(), values.join(" "))
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "eigenvalue"]).unwrap();
        for (i, v) in self.eigenvalues.iter().enumerate() {
            w.write_record([i.to_string(), exact(*v)]).unwrap();
        }
        finish(w)
    }
}

#[derive(Serialize)]
pub struct LimitRow {
    pub kappa: String,
    pub scaled_commutator_norm: f64,
    pub exact: f64,
}

#[derive(Serialize)]
pub struct LimitDoc {
    pub rows: Vec<LimitRow>,
}

impl LimitDoc {
    pub fn new(profile: &[(HalfInteger, f64)]) -> Self {
        Self {
            rows: profile
                .iter()
                .map(|&(k, norm)| LimitRow {
                    kappa: k.to_string(),
                    scaled_commutator_norm: norm,
                    exact: 1.0 / (k.value() + 1.0),
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = header();
        writeln!(s, "kappa scaled_commutator_norm").unwrap();
        for r in &self.rows {
            writeln!(s, "{} {}", r.kappa, human(r.scaled_commutator_norm)).unwrap();
        }
        s
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["kappa", "scaled_commutator_norm", "exact"]).unwrap();
        for r in &self.rows {
            w.write_record([r.kappa.clone(), exact(r.scaled_commutator_norm), exact(r.exact)])
                .unwrap();
        }
        finish(w)
    }
}

#[derive(Serialize)]
pub struct AmplitudeDoc {
    pub label: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize)]
pub struct WeightDoc {
    pub value: f64,
    pub probability: f64,
}

#[derive(Serialize)]
pub struct OperatorDoc {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expectation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Vec<WeightDoc>>,
}

#[derive(Serialize)]
pub struct PairDoc {
    pub first: String,
    pub second: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covariance: Option<f64>,
    /// Serialized as `null` when a marginal has zero variance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correlation: Option<Option<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutator_expectation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncertainty_product: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub robertson_bound: Option<f64>,
}

#[derive(Serialize)]
pub struct ContextDoc {
    pub space: String,
    pub dim: usize,
    pub interior_dim: usize,
    pub boundary_weight: f64,
    pub tolerance: f64,
}

#[derive(Serialize)]
pub struct CheckSetDoc {
    pub name: String,
    pub passed: bool,
    pub worst_residual: f64,
    pub relations: Vec<CheckDoc>,
}

#[derive(Serialize)]
pub struct RunDoc {
    pub algebra: String,
    pub context: ContextDoc,
    pub state: Vec<AmplitudeDoc>,
    pub operators: Vec<OperatorDoc>,
    pub pairs: Vec<PairDoc>,
    pub checks: Vec<CheckSetDoc>,
    pub notes: Vec<String>,
}

impl RunDoc {
    pub fn new(outcome: &ScenarioOutcome, fields: &[&str]) -> Self {
        let want = |f: &str| fields.contains(&f);
        let pick = |f: &str, v: f64| want(f).then_some(v);
        let labels = outcome.algebra.space.labels();
        let state = outcome
            .state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > 0.0)
            .map(|(i, z)| AmplitudeDoc {
                label: labels[i].clone(),
                re: z.re,
                im: z.im,
            })
            .collect();
        let report = &outcome.report;
        let operators = report
            .operators
            .iter()
            .map(|o| OperatorDoc {
                name: o.name.clone(),
                expectation: pick("expectation", o.expectation),
                variance: pick("variance", o.variance),
                distribution: want("distribution").then(|| {
                    o.distribution
                        .iter()
                        .map(|w| WeightDoc {
                            value: w.value,
                            probability: w.probability,
                        })
                        .collect()
                }),
            })
            .collect();
        let pairs = report
            .pairs
            .iter()
            .map(|p| PairDoc {
                first: p.first.clone(),
                second: p.second.clone(),
                covariance: pick("covariance", p.covariance),
                correlation: want("correlation").then_some(p.correlation),
                commutator_expectation: pick("commutator_expectation", p.commutator_expectation),
                uncertainty_product: pick("uncertainty_product", p.uncertainty_product),
                robertson_bound: pick("robertson_bound", p.robertson_bound),
            })
            .collect();
        let ctx = &report.context;
        Self {
            algebra: outcome.algebra.kind.clone(),
            context: ContextDoc {
                space: ctx.space.clone(),
                dim: ctx.dim,
                interior_dim: ctx.interior_dim,
                boundary_weight: ctx.boundary_weight,
                tolerance: ctx.tolerance,
            },
            state,
            operators,
            pairs,
            checks: outcome
                .checks
                .iter()
                .map(|(name, r)| CheckSetDoc {
                    name: name.clone(),
                    passed: r.passed(),
                    worst_residual: r.worst_residual,
                    relations: VerifyDoc::new(&outcome.algebra, name, r).checks,
                })
                .collect(),
            notes: outcome.algebra.notes.clone(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = header();
        let c = &self.context;
        writeln!(s, "algebra {} ({})", self.algebra, c.space).unwrap();
        writeln!(
            s,
            "dim {}, interior {}, boundary weight {}, tol {}",
            c.dim,
            c.interior_dim,
            human(c.boundary_weight),
            small(c.tolerance)
        )
        .unwrap();
        s.push_str("state\n");
        for a in &self.state {
            writeln!(s, "  {}  {} {}i", a.label, human(a.re), Signed(a.im)).unwrap();
        }
        for o in &self.operators {
            writeln!(s, "operator {}", o.name).unwrap();
            if let Some(v) = o.expectation {
                writeln!(s, "  expectation {}", human(v)).unwrap();
            }
            if let Some(v) = o.variance {
                writeln!(s, "  variance {}", human(v)).unwrap();
            }
            if let Some(d) = &o.distribution {
                for w in d {
                    writeln!(s, "  P({}) = {}", human(w.value), human(w.probability)).unwrap();
                }
            }
        }
        for p in &self.pairs {
            writeln!(s, "pair {} {}", p.first, p.second).unwrap();
            let rows = [
                ("covariance", p.covariance),
                ("commutator_expectation", p.commutator_expectation),
                ("uncertainty_product", p.uncertainty_product),
                ("robertson_bound", p.robertson_bound),
            ];
            for (name, value) in rows {
                if let Some(v) = value {
                    writeln!(s, "  {name} {}", human(v)).unwrap();
                }
            }
            if let Some(r) = p.correlation {
                let r = r.map_or_else(|| "undefined".to_string(), human);
                writeln!(s, "  correlation {r}").unwrap();
            }
        }
        for set in &self.checks {
            let mark = if set.passed { "PASS" } else { "FAIL" };
            writeln!(s, "check {} {mark} (worst residual {})", set.name, small(set.worst_residual)).unwrap();
            for c in &set.relations {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                writeln!(s, "  {mark} {}  residual {}", c.relation, small(c.residual)).unwrap();
            }
        }
        for n in &self.notes {
            writeln!(s, "note: {n}").unwrap();
        }
        s
    }

    pub fn csv(&self) -> String {
        const COLUMNS: [&str; 13] = [
            "kind",
            "name",
            "first",
            "second",
            "expectation",
            "variance",
            "covariance",
            "correlation",
            "commutator_expectation",
            "uncertainty_product",
            "robertson_bound",
            "value",
            "probability",
        ];
        let num = |v: Option<f64>| v.map(exact).unwrap_or_default();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(COLUMNS).unwrap();
        for o in &self.operators {
            let mut row = vec![String::new(); COLUMNS.len()];
            row[0] = "operator".into();
            row[1] = o.name.clone();
            row[4] = num(o.expectation);
            row[5] = num(o.variance);
            w.write_record(&row).unwrap();
            for d in o.distribution.iter().flatten() {
                let mut row = vec![String::new(); COLUMNS.len()];
                row[0] = "distribution".into();
                row[1] = o.name.clone();
                row[11] = exact(d.value);
                row[12] = exact(d.probability);
                w.write_record(&row).unwrap();
            }
        }
        for p in &self.pairs {
            let mut row = vec![String::new(); COLUMNS.len()];
            row[0] = "pair".into();
            row[2] = p.first.clone();
            row[3] = p.second.clone();
            row[6] = num(p.covariance);
            row[7] = num(p.correlation.flatten());
            row[8] = num(p.commutator_expectation);
            row[9] = num(p.uncertainty_product);
            row[10] = num(p.robertson_bound);
            w.write_record(&row).unwrap();
        }
        finish(w)
    }
}

struct Signed(f64);

impl std::fmt::Display for Signed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let h = human(self.0);
        if h.starts_with('-') {
            write!(f, "{h}")
        } else {
            write!(f, "+{h}")
        }
    }
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv writes UTF-8")
}
