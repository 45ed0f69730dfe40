//! The JSON description of a skeletal 2-group and of a ℚ/ℤ-valued 2-cochain.

use std::sync::Arc;

use serde::Deserialize;
use twogroup_core::abelian::{ActionMatrix, GroupAction};
use twogroup_core::cochain::{tuple_count, QzCochain};
use twogroup_core::error::GroupError;
use twogroup_core::{AbelianGroup, Cochain, FiniteGroup, Qz, Skeletal2Group};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Table { mul: Vec<Vec<usize>> },
    Cyclic { n: usize },
    Product { factors: Vec<GroupSpec> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientSpec {
    pub invariant_factors: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorImage {
    pub element: usize,
    pub matrix: ActionMatrix,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionSpec {
    /// Images of a generating set, extended multiplicatively.
    Generators(Vec<GeneratorImage>),
    /// One matrix per group element.
    Elements(Vec<ActionMatrix>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaEntry {
    pub g: usize,
    pub h: usize,
    pub k: usize,
    pub value: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaSpec {
    /// Listed entries; every other triple is zero.
    Sparse(Vec<AlphaEntry>),
    /// All `|G|³` values in lexicographic order of `(g, h, k)`.
    Dense(Vec<Vec<i64>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoGroupSpecFile {
    pub group: GroupSpec,
    pub coefficients: CoefficientSpec,
    #[serde(default)]
    pub action: Option<ActionSpec>,
    #[serde(default)]
    pub alpha: Option<AlphaSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetricCocycleFile {
    pub group: CoefficientSpec,
    /// `phi[a][b]` as `"p/q"` strings or integers.
    pub phi: Vec<Vec<serde_json::Value>>,
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::syntax(e.line(), e.column(), e.to_string()))
}

fn build_group(spec: &GroupSpec, path: &str, max_size: usize) -> Result<FiniteGroup, CliError> {
    let g = match spec {
        GroupSpec::Cyclic { n } => {
            if *n == 0 {
                return Err(CliError::field(format!("{path}.n"), "cyclic group order must be at least 1"));
            }
            if *n > max_size {
                return Err(CliError::size(format!("{path}.n"), *n, max_size));
            }
            FiniteGroup::cyclic(*n)
        }
        GroupSpec::Table { mul } => {
            if mul.len() > max_size {
                return Err(CliError::size(format!("{path}.mul"), mul.len(), max_size));
            }
            FiniteGroup::from_table(mul).map_err(|e| match e {
                GroupError::NotSquare { row, .. } => CliError::field(format!("{path}.mul[{row}]"), e.to_string()),
                GroupError::EntryOutOfRange { row, col, .. } => {
                    CliError::field(format!("{path}.mul[{row}][{col}]"), e.to_string())
                }
                GroupError::EmptyTable => CliError::field(format!("{path}.mul"), e.to_string()),
                other => CliError::domain("InvalidGroup", Some(format!("{path}.mul")), other.to_string()),
            })?
        }
        GroupSpec::Product { factors } => {
            let mut acc = FiniteGroup::trivial();
            for (i, f) in factors.iter().enumerate() {
                let g = build_group(f, &format!("{path}.factors[{i}]"), max_size)?;
                if acc.order() * g.order() > max_size {
                    return Err(CliError::size(path.to_string(), acc.order() * g.order(), max_size));
                }
                acc = acc.product(&g);
            }
            acc
        }
    };
    Ok(g)
}

fn build_coefficients(spec: &CoefficientSpec, path: &str, max_size: usize) -> Result<AbelianGroup, CliError> {
    if let Some(i) = spec.invariant_factors.iter().position(|&d| d < 2) {
        return Err(CliError::field(format!("{path}.invariant_factors[{i}]"), "invariant factors must be at least 2"));
    }
    let order = spec.invariant_factors.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize));
    match order {
        Some(n) if n <= max_size => {}
        _ => return Err(CliError::size(format!("{path}.invariant_factors"), order.unwrap_or(usize::MAX), max_size)),
    }
    Ok(AbelianGroup::new(spec.invariant_factors.clone()).expect("factors checked"))
}

fn check_matrix(m: &ActionMatrix, rank: usize, path: &str) -> Result<(), CliError> {
    if m.len() != rank {
        return Err(CliError::field(path.to_string(), format!("expected {rank} rows, got {}", m.len())));
    }
    for (j, row) in m.iter().enumerate() {
        if row.len() != rank {
            return Err(CliError::field(format!("{path}[{j}]"), format!("expected {rank} entries, got {}", row.len())));
        }
    }
    Ok(())
}

fn build_action(spec: Option<&ActionSpec>, g: FiniteGroup, a: AbelianGroup) -> Result<GroupAction, CliError> {
    let rank = a.rank();
    let invalid = |e: twogroup_core::error::ActionError| CliError::domain("InvalidAction", Some("action".into()), e.to_string());
    match spec {
        None => Ok(GroupAction::trivial(g, a)),
        Some(ActionSpec::Elements(mats)) => {
            if mats.len() != g.order() {
                return Err(CliError::field("action.elements", format!("expected {} matrices, got {}", g.order(), mats.len())));
            }
            for (i, m) in mats.iter().enumerate() {
                check_matrix(m, rank, &format!("action.elements[{i}]"))?;
            }
            GroupAction::new(g, a, mats.clone()).map_err(invalid)
        }
        Some(ActionSpec::Generators(images)) => {
            for (i, im) in images.iter().enumerate() {
                if im.element >= g.order() {
                    return Err(CliError::field(
                        format!("action.generators[{i}].element"),
                        format!("element {} is not below the group order {}", im.element, g.order()),
                    ));
                }
                check_matrix(&im.matrix, rank, &format!("action.generators[{i}].matrix"))?;
            }
            let images: Vec<(usize, ActionMatrix)> = images.iter().map(|im| (im.element, im.matrix.clone())).collect();
            GroupAction::from_generator_images(g, a, &images).map_err(invalid)
        }
    }
}

fn check_value(a: &AbelianGroup, v: &[i64], path: &str) -> Result<(), CliError> {
    if v.len() != a.rank() {
        return Err(CliError::field(path.to_string(), format!("expected {} components, got {}", a.rank(), v.len())));
    }
    for (j, (&x, &d)) in v.iter().zip(a.factors()).enumerate() {
        if x < 0 || x as u64 >= d {
            return Err(CliError::field(format!("{path}[{j}]"), format!("value {x} is outside 0..{d}")));
        }
    }
    Ok(())
}

fn build_alpha(spec: Option<&AlphaSpec>, action: &Arc<GroupAction>) -> Result<Cochain, CliError> {
    let n = action.source().order();
    let a = action.target();
    let mut alpha = Cochain::zero(action.clone(), 3);
    match spec {
        None => {}
        Some(AlphaSpec::Sparse(entries)) => {
            let mut seen = std::collections::HashSet::new();
            for (i, e) in entries.iter().enumerate() {
                for (name, x) in [("g", e.g), ("h", e.h), ("k", e.k)] {
                    if x >= n {
                        return Err(CliError::field(format!("alpha.sparse[{i}].{name}"), format!("element {x} is not below the group order {n}")));
                    }
                }
                check_value(a, &e.value, &format!("alpha.sparse[{i}].value"))?;
                if !seen.insert((e.g, e.h, e.k)) {
                    return Err(CliError::field(format!("alpha.sparse[{i}]"), format!("duplicate entry ({},{},{})", e.g, e.h, e.k)));
                }
                let v: Vec<u64> = e.value.iter().map(|&x| x as u64).collect();
                alpha.set(&[e.g, e.h, e.k], &v);
            }
        }
        Some(AlphaSpec::Dense(values)) => {
            let len = tuple_count(n, 3);
            if values.len() != len {
                return Err(CliError::field("alpha.dense", format!("expected {len} entries, got {}", values.len())));
            }
            for (t, v) in values.iter().enumerate() {
                check_value(a, v, &format!("alpha.dense[{t}]"))?;
                alpha.set_at(t, &v.iter().map(|&x| x as u64).collect::<Vec<_>>());
            }
        }
    }
    Ok(alpha)
}

/// A parsed file: the action and `α`, not yet checked for the pentagon.
#[derive(Debug)]
pub struct ParsedTwoGroup {
    pub action: Arc<GroupAction>,
    pub alpha: Cochain,
}

impl ParsedTwoGroup {
    pub fn parse(text: &str, max_size: usize) -> Result<ParsedTwoGroup, CliError> {
        let spec: TwoGroupSpecFile = parse_json(text)?;
        let g = build_group(&spec.group, "group", max_size)?;
        let a = build_coefficients(&spec.coefficients, "coefficients", max_size)?;
        let action = Arc::new(build_action(spec.action.as_ref(), g, a)?);
        let alpha = build_alpha(spec.alpha.as_ref(), &action)?;
        Ok(ParsedTwoGroup { action, alpha })
    }

    /// Checks the pentagon, reporting the first failing quadruple.
    pub fn build(self) -> Result<Skeletal2Group, CliError> {
        Skeletal2Group::build(self.action, self.alpha).map_err(CliError::from)
    }
}

/// A symmetric-splitting input: the group `A` as a finite group and `φ`.
#[derive(Debug)]
pub struct ParsedCocycle {
    pub base: AbelianGroup,
    pub phi: QzCochain,
}

impl ParsedCocycle {
    pub fn parse(text: &str, max_size: usize) -> Result<ParsedCocycle, CliError> {
        let spec: SymmetricCocycleFile = parse_json(text)?;
        let base = build_coefficients(&spec.group, "group", max_size)?;
        let n = base.order();
        if spec.phi.len() != n {
            return Err(CliError::field("phi", format!("expected {n} rows, got {}", spec.phi.len())));
        }
        let mut values = Vec::with_capacity(n * n);
        for (i, row) in spec.phi.iter().enumerate() {
            if row.len() != n {
                return Err(CliError::field(format!("phi[{i}]"), format!("expected {n} entries, got {}", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                let parsed = match v {
                    serde_json::Value::String(s) => s.parse::<Qz>().ok(),
                    serde_json::Value::Number(x) if x.is_i64() => Some(Qz::ZERO),
                    _ => None,
                };
                let q = parsed.ok_or_else(|| CliError::field(format!("phi[{i}][{j}]"), format!("expected \"p/q\", got {v}")))?;
                values.push(q);
            }
        }
        let group = Arc::new(base.to_finite_group());
        Ok(ParsedCocycle { phi: QzCochain::from_values(group, 2, values), base })
    }
}
