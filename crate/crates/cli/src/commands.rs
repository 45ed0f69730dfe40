//! One function per subcommand. Each returns results as JSON plus a text rendering.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use twogroup_core::cochain::{index_tuple, tuple_count};
use twogroup_core::cohomology::{cohomology, split_symmetric_2cocycle, torus_cohomology, CohomologyOptions};
use twogroup_core::corpus::{corrupt, random_cochain, Corpus};
use twogroup_core::error::TwoGroupError;
use twogroup_core::fusion::{Block, BlockKind, FusionSimple, VectG};
use twogroup_core::tworep::descriptors_with_bound;
use twogroup_core::{Cochain, QzCochain, Skeletal2Group};

use crate::error::CliError;
use crate::output::{Outcome, Status};
use crate::spec_file::{ParsedCocycle, ParsedTwoGroup};

#[derive(Clone, Debug)]
pub struct Settings {
    pub max_size: usize,
    pub opts: CohomologyOptions,
}

impl Settings {
    fn two_group(&self, text: &str) -> Result<Skeletal2Group, CliError> {
        ParsedTwoGroup::parse(text, self.max_size)?.build()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Coefficients {
    /// The coefficient module given in the file.
    Module,
    /// ℚ/ℤ with the trivial action.
    Torus,
}

fn sparse_cochain(c: &Cochain) -> Value {
    let n = c.group().order();
    let entries: Vec<Value> = (0..c.len())
        .filter(|&t| c.at(t).iter().any(|&x| x != 0))
        .map(|t| json!({ "tuple": index_tuple(n, c.degree(), t), "value": c.at(t) }))
        .collect();
    Value::Array(entries)
}

/// Nonzero entries of a cochain on a subgroup, with tuples mapped into `G`.
fn sparse_qz(c: &QzCochain, embedding: &[usize]) -> Value {
    let n = c.group().order();
    let entries: Vec<Value> = (0..tuple_count(n, c.degree()))
        .filter(|&t| !c.values()[t].is_zero())
        .map(|t| {
            let tuple: Vec<usize> = index_tuple(n, c.degree(), t).into_iter().map(|x| embedding[x]).collect();
            json!({ "tuple": tuple, "value": c.values()[t].to_string() })
        })
        .collect();
    Value::Array(entries)
}

fn show_factors(f: &[u64]) -> String {
    if f.is_empty() {
        "1".to_string()
    } else {
        f.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join(" × ")
    }
}

pub fn validate(text: &str, s: &Settings) -> Result<Outcome, CliError> {
    let c = s.two_group(text)?;
    let nonzero = (0..c.alpha().len()).filter(|&t| c.alpha().at(t).iter().any(|&x| x != 0)).count();
    let results = json!({
        "valid": true,
        "group_order": c.base().order(),
        "invariant_factors": c.coeff().factors(),
        "action_trivial": c.action().is_trivial(),
        "alpha_nonzero_entries": nonzero,
    });
    let text = format!(
        "valid: |G| = {}, A = {}, {} action, {nonzero} nonzero α entries\n",
        c.base().order(),
        show_factors(c.coeff().factors()),
        if c.action().is_trivial() { "trivial" } else { "nontrivial" }
    );
    Ok(Outcome::ok(results, text))
}

/// Accepts `(g,χ[c₁,…])`, `(g,χk)` with `k` a character index, and `chi` for `χ`.
pub fn parse_simple(v: &VectG, label: &str) -> Result<FusionSimple, CliError> {
    let bad = || CliError::usage(format!("cannot parse simple {label:?}: expected \"(g,χ[c,…])\" or \"(g,χk)\""));
    let inner = label.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
    let (g, chi) = inner.split_once(',').ok_or_else(bad)?;
    let g: usize = g.trim().parse().map_err(|_| bad())?;
    let chi = chi.trim();
    let rest = chi.strip_prefix('χ').or_else(|| chi.strip_prefix("chi")).ok_or_else(bad)?;
    let rho = if let Some(list) = rest.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
        let comps: Vec<u64> = if list.trim().is_empty() {
            Vec::new()
        } else {
            list.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        v.characters().iter().position(|c| c.components == comps).unwrap_or(usize::MAX)
    } else {
        rest.parse().map_err(|_| bad())?
    };
    Ok(v.check(FusionSimple { g, rho })?)
}

pub enum FusionQuery {
    Table,
    Product(String, String),
}

pub fn fusion(text: &str, s: &Settings, query: FusionQuery) -> Result<Outcome, CliError> {
    let v = VectG::new(s.two_group(text)?);
    let show = |x: Option<FusionSimple>| x.map_or_else(|| "0".to_string(), |x| v.label(x));
    match query {
        FusionQuery::Product(a, b) => {
            let (a, b) = (parse_simple(&v, &a)?, parse_simple(&v, &b)?);
            let p = show(v.fuse(a, b));
            let results = json!({ "left": v.label(a), "right": v.label(b), "product": p });
            Ok(Outcome::ok(results, format!("{} ⊗ {} = {p}\n", v.label(a), v.label(b))))
        }
        FusionQuery::Table => {
            let simples = v.simples();
            let labels: Vec<String> = simples.iter().map(|&x| v.label(x)).collect();
            let table: Vec<Vec<String>> = v.fusion_table().into_iter().map(|row| row.into_iter().map(show).collect()).collect();
            let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
            let pad = |x: &str| format!("{x}{}", " ".repeat(width - x.chars().count()));
            let mut out = format!("{} ", pad("⊗"));
            out += &labels.iter().map(|l| pad(l)).collect::<Vec<_>>().join(" ");
            out.push('\n');
            for (l, row) in labels.iter().zip(&table) {
                let _ = writeln!(out, "{} {}", pad(l), row.iter().map(|x| pad(x)).collect::<Vec<_>>().join(" ").trim_end());
            }
            Ok(Outcome::ok(json!({ "simples": labels, "table": table }), out))
        }
    }
}

fn block_summary(b: &Block) -> String {
    let h = b.summand.group.descriptor();
    let class = if b.summand.class_trivial { "trivial class" } else { "nontrivial class" };
    let n = b.characters.len();
    let diag = if h == "1" { "Vect".to_string() } else { format!("Vect_{h}") };
    match b.kind {
        BlockKind::Pointed => format!("pointed({h}, {class})"),
        BlockKind::Matrix => format!("matrix({n}×{n}, diagonal Vect)"),
        BlockKind::Mixed => format!("mixed({n}×{n}, diagonal {diag}, {class})"),
    }
}

pub fn decompose(text: &str, s: &Settings) -> Result<Outcome, CliError> {
    let v = VectG::new(s.two_group(text)?);
    let r = v.decompose(&s.opts)?;
    let chars = |xs: &[usize]| xs.iter().map(|&x| v.characters()[x].label()).collect::<Vec<_>>();
    let orbits: Vec<Vec<String>> = v.orbits().orbits.iter().map(|o| chars(o)).collect();
    let blocks: Vec<Value> = r
        .blocks
        .iter()
        .map(|b| {
            let stab = &b.summand.stabilizer;
            let gens: Vec<usize> = b.summand.group.generators().into_iter().map(|x| stab[x]).collect();
            json!({
                "kind": b.kind.to_string(),
                "label": b.label(),
                "summary": block_summary(b),
                "characters": chars(&b.characters),
                "matrix": b.matrix,
                "base_character": v.characters()[b.summand.base_character].label(),
                "stabilizer": stab,
                "stabilizer_generators": gens,
                "stabilizer_group": b.summand.group.descriptor(),
                "cocycle": sparse_qz(&b.summand.cocycle, stab),
                "class_trivial": b.summand.class_trivial,
                "simple_count": b.simple_count,
            })
        })
        .collect();
    let results = json!({
        "components": r.totals.component_count,
        "simple_count": r.totals.simple_count,
        "unit_summand_count": r.totals.unit_summand_count,
        "orbits": orbits,
        "blocks": blocks,
        "label": r.label(),
    });
    let summaries: Vec<String> = r.blocks.iter().map(block_summary).collect();
    let mut out = format!("{} components: {}\n", r.totals.component_count, summaries.join("; "));
    let _ = writeln!(out, "{}", r.label());
    for (i, b) in r.blocks.iter().enumerate() {
        let _ = writeln!(
            out,
            "  block {i}: orbit {{{}}}, stabilizer {:?}, {} simples",
            chars(&b.characters).join(", "),
            b.summand.stabilizer,
            b.simple_count
        );
    }
    let _ = writeln!(out, "{} simples, {} unit summands", r.totals.simple_count, r.totals.unit_summand_count);
    Ok(Outcome::ok(results, out))
}

pub fn cohomology_cmd(text: &str, s: &Settings, degree: usize, coeffs: Coefficients, generators: bool) -> Result<Outcome, CliError> {
    let parsed = ParsedTwoGroup::parse(text, s.max_size)?;
    let group_name = parsed.action.source().descriptor();
    let show = |f: &[u64]| if f.is_empty() { "0".to_string() } else { show_factors(f) };
    match coeffs {
        Coefficients::Module => {
            let opts = CohomologyOptions { generators, ..s.opts.clone() };
            let h = cohomology(&parsed.action, degree, &opts)?;
            let mut results = json!({
                "degree": degree,
                "coefficients": "module",
                "invariant_factors": h.invariant_factors,
                "order": h.order(),
                "trivial": h.is_trivial(),
            });
            if generators {
                results["generators"] = Value::Array(h.generators.iter().map(sparse_cochain).collect());
            }
            let text = format!("H^{degree}({group_name}; A) = {}\n", show(&h.invariant_factors));
            Ok(Outcome::ok(results, text))
        }
        Coefficients::Torus => {
            let h = torus_cohomology(parsed.action.source(), degree, &s.opts)?;
            let results = json!({
                "degree": degree,
                "coefficients": "torus",
                "invariant_factors": h.invariant_factors,
                "order": h.order(),
                "trivial": h.invariant_factors.is_empty(),
            });
            let text = format!(
                "H^{degree}({group_name}; Q/Z) = {} (torsion bound {}, {})\n",
                show(&h.invariant_factors),
                h.torsion_bound,
                if h.stabilized { "stabilized" } else { "not stabilized" }
            );
            Ok(Outcome::ok(results, text).meta("torsion_bound", h.torsion_bound).meta("stabilized", h.stabilized))
        }
    }
}

pub fn tworep(text: &str, s: &Settings) -> Result<Outcome, CliError> {
    let v = VectG::new(s.two_group(text)?);
    let r = descriptors_with_bound(&v, &s.opts, s.max_size)?;
    let components: Vec<Value> = r
        .simple_count
        .per_component
        .iter()
        .map(|c| {
            let contributions: Vec<Value> = c
                .contributions
                .iter()
                .map(|x| json!({ "subgroup": x.subgroup, "restriction_trivial": x.restriction_trivial, "h2_order": x.h2_order }))
                .collect();
            json!({
                "base_character": v.characters()[c.base_character].label(),
                "stabilizer": c.stabilizer,
                "contributions": contributions,
                "count": c.count,
            })
        })
        .collect();
    let results = json!({
        "component_count": r.component_count,
        "simple_count": r.simple_count.total,
        "per_component": components,
        "trivial_rep_endohom": {
            "label": r.trivial_rep_endohom.label,
            "group": r.trivial_rep_endohom.group,
            "irreducibles": r.trivial_rep_endohom.irreducibles,
        },
        "regular": {
            "copies": r.regular.copies,
            "factor_label": r.regular.factor_label,
            "irreducibles_per_factor": r.regular.irreducibles_per_factor,
        },
        "regular_endohom": { "label": r.regular_endohom.label, "simple_count": r.regular_endohom.simple_count },
    });
    let per: Vec<String> = r.simple_count.per_component.iter().map(|c| c.count.to_string()).collect();
    let mut out = format!(
        "{} simple 2-representations in {} components ({})\n",
        r.simple_count.total,
        r.component_count,
        per.join(" + ")
    );
    let _ = writeln!(
        out,
        "End(trivial) = {} of {} ({} irreducibles)",
        r.trivial_rep_endohom.label, r.trivial_rep_endohom.group, r.trivial_rep_endohom.irreducibles
    );
    let _ = writeln!(
        out,
        "regular = {} copies of {} ({} irreducibles each)",
        r.regular.copies, r.regular.factor_label, r.regular.irreducibles_per_factor
    );
    let _ = writeln!(out, "End(regular) = {} ({} simples)", r.regular_endohom.label, r.regular_endohom.simple_count);
    let _ = writeln!(out, "relies on: {}", r.imported_theorem);
    Ok(Outcome::ok(results, out)
        .meta("imported_theorem", r.imported_theorem)
        .meta("h2_stabilized", r.simple_count.stabilized)
        .meta("subgroup_bound", s.max_size))
}

pub fn split_symmetric(text: &str, s: &Settings) -> Result<Outcome, CliError> {
    let parsed = ParsedCocycle::parse(text, s.max_size)?;
    let split = split_symmetric_2cocycle(&parsed.phi, &s.opts)?;
    let g = parsed.phi.group().clone();
    // dΓ(a,b) = Γ(b) − Γ(ab) + Γ(a), checked before anything is printed
    for a in g.elements() {
        for b in g.elements() {
            let lhs = split.gamma.get(&[b]) - split.gamma.get(&[g.mul(a, b)]) + split.gamma.get(&[a]);
            if lhs != parsed.phi.get(&[a, b]) {
                return Err(CliError::domain("VerificationFailed", None, format!("dΓ ≠ φ at ({a},{b})")));
            }
        }
    }
    let gamma: Vec<Value> = g
        .elements()
        .map(|a| json!({ "element": a, "components": parsed.base.element(a), "value": split.gamma.get(&[a]).to_string() }))
        .collect();
    let mut out = String::from("Γ:\n");
    for a in g.elements() {
        let _ = writeln!(out, "  Γ({a}) = {}", split.gamma.get(&[a]));
    }
    out.push_str("verified dΓ = φ\n");
    Ok(Outcome::ok(json!({ "gamma": gamma, "verified": true }), out)
        .meta("modulus", split.modulus)
        .meta("doublings", split.doublings))
}

/// Randomized property checks on a seeded corpus of small 2-groups.
pub fn check(seed: u64, count: usize, s: &Settings) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = Corpus::new();
    let mut failures: Vec<Value> = Vec::new();
    let (mut corrupted, mut skipped) = (0usize, 0usize);
    for i in 0..count {
        let c = corpus.random_two_group(&mut rng)?;
        let v = VectG::new(c.clone());
        if let Err(f) = v.pentagon_check() {
            failures.push(json!({ "sample": i, "check": "pentagon", "defect": f.defect.to_string() }));
        }
        match corrupt(c.alpha(), &mut rng) {
            Some((bad, tuple)) => {
                corrupted += 1;
                let rejected = matches!(Skeletal2Group::build(c.action().clone(), bad), Err(TwoGroupError::PentagonViolation { .. }));
                if !rejected {
                    failures.push(json!({ "sample": i, "check": "corruption", "tuple": tuple }));
                }
            }
            None => skipped += 1,
        }
        let r = v.decompose(&s.opts)?;
        let g = c.base().order();
        let sum: usize = v.orbits().orbits.iter().map(|o| o.len() * g).sum();
        if sum != g * c.coeff().order() || r.totals.component_count != v.orbits().orbits.len() {
            failures.push(json!({ "sample": i, "check": "partition" }));
        }
        let beta = random_cochain(c.action(), 2, &mut rng);
        let shifted = Skeletal2Group::build(c.action().clone(), c.alpha().add(&beta.differential()))?;
        if VectG::new(shifted).decompose(&s.opts)?.shape() != r.shape() {
            failures.push(json!({ "sample": i, "check": "covariance" }));
        }
    }
    let status = if failures.is_empty() { Status::Ok } else { Status::Failed };
    let results = json!({
        "seed": seed,
        "count": count,
        "corruptions_checked": corrupted,
        "corruptions_skipped_trivial_module": skipped,
        "failures": failures,
    });
    let text = format!(
        "{count} random 2-groups (seed {seed}): {} failures; {corrupted} corruptions checked, {skipped} skipped (trivial A)\n",
        failures.len()
    );
    let mut outcome = Outcome::ok(results, text);
    outcome.status = status;
    Ok(outcome)
}

#[cfg(test)]
const NEGATION_EXAMPLE: &str = r#"{
  "group": {"kind": "cyclic", "n": 2},
  "coefficients": {"invariant_factors": [3]},
  "action": {"elements": [[[1]], [[-1]]]}
}"#;
