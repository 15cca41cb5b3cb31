//! One function per subcommand. Each returns the structured payload and
//! its text rendering; errors bubble to the envelope layer.

use arf_core::arfring::{
    self, embedding_dimension, ring_arf_closure, ring_order_basis, synthesize_monomial_branch,
};
use arf_core::branch::{Branch, BlowupTrace};
use arf_core::oracles::{
    oracle_arf_closure_fixedpoint, oracle_enumerate_arf_semigroups,
    oracle_minimal_character_search, oracle_ring_orders_linear,
};
use arf_core::semigroup::{CharacterSet, NumericalSemigroup};
use arf_core::{Error, PowerSeries, Result};
use serde_json::json;

use crate::output::{
    abbreviate_series, characters_json, join_u64, semigroup_json, semigroup_text, sequence_json,
    Rendered,
};
use crate::Config;

pub fn semigroup_closure(gens: &[u64]) -> Result<Rendered> {
    let s = NumericalSemigroup::from_generators(gens)?;
    let seq = s.arf_closure();
    let closed = seq.to_semigroup();
    Ok(Rendered {
        json: json!({
            "input": semigroup_json(&s),
            "multiplicity_sequence": sequence_json(&seq),
            "closure": semigroup_json(&closed),
        }),
        text: vec![
            format!("multiplicity sequence: {seq}"),
            format!("closure: {}", semigroup_text(&closed)),
            format!("closure generators: {}", join_u64(closed.generators())),
            format!("nu: {}", s.nu()),
        ],
    })
}

pub fn semigroup_is_arf(gens: &[u64]) -> Result<Rendered> {
    let s = NumericalSemigroup::from_generators(gens)?;
    let verdict = s.is_arf();
    Ok(Rendered {
        json: json!({
            "semigroup": semigroup_json(&s),
            "is_arf": verdict,
        }),
        text: vec![
            format!("semigroup: {}", semigroup_text(&s)),
            format!("arf: {}", if verdict { "yes" } else { "no" }),
        ],
    })
}

pub fn semigroup_characters(gens: &[u64]) -> Result<Rendered> {
    let s = NumericalSemigroup::from_generators(gens)?;
    let chars = s.arf_characters()?;
    Ok(Rendered {
        json: json!({
            "semigroup": semigroup_json(&s),
            "characters": characters_json(&chars),
        }),
        text: vec![format!("characters: {chars}")],
    })
}

fn parse_normalized_branch(text: &str, config: &Config) -> Result<(Branch, u64)> {
    let branch = Branch::parse(text, config.field, config.precision)?;
    Ok(branch.normalize())
}

fn trace_json(trace: &BlowupTrace) -> serde_json::Value {
    let steps: Vec<serde_json::Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "multiplicity": s.multiplicity,
                "pivot": s.pivot + 1,
                "recentering": s.recentering.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let final_coords: Vec<String> = trace
        .final_branch
        .coords()
        .iter()
        .map(|c| c.to_string())
        .collect();
    json!({ "steps": steps, "final": final_coords })
}

pub fn branch_multseq(text: &str, config: &Config) -> Result<Rendered> {
    let (branch, nu) = parse_normalized_branch(text, config)?;
    let (seq, trace) = branch.multiplicity_sequence(config.max_steps)?;
    Ok(Rendered {
        json: json!({
            "nu": nu,
            "multiplicity_sequence": sequence_json(&seq),
            "trace": trace_json(&trace),
        }),
        text: vec![
            format!("multiplicity sequence: {seq}"),
            format!("nu: {nu}"),
            format!("blow-ups performed: {}", trace.steps.len()),
        ],
    })
}

pub fn branch_characters(text: &str, config: &Config) -> Result<Rendered> {
    let (branch, nu) = parse_normalized_branch(text, config)?;
    let (seq, _) = branch.multiplicity_sequence(config.max_steps)?;
    let chars = seq.to_semigroup().arf_characters()?;
    Ok(Rendered {
        json: json!({
            "nu": nu,
            "multiplicity_sequence": sequence_json(&seq),
            "characters": characters_json(&chars),
        }),
        text: vec![
            format!("characters: {chars}"),
            format!("multiplicity sequence: {seq}"),
        ],
    })
}

pub fn branch_embed_dim(text: &str, config: &Config) -> Result<Rendered> {
    let (branch, _) = parse_normalized_branch(text, config)?;
    let dimension = embedding_dimension(branch.coords(), config.precision)?;
    Ok(Rendered {
        json: json!({ "dimension": dimension }),
        text: vec![format!("embedding dimension: {dimension}")],
    })
}

pub fn branch_blowup_trace(text: &str, config: &Config) -> Result<Rendered> {
    let (branch, nu) = parse_normalized_branch(text, config)?;
    let (seq, trace) = branch.multiplicity_sequence(config.max_steps)?;
    let mut lines = vec![
        format!("multiplicity sequence: {seq}"),
        format!("nu: {nu}"),
    ];
    for (i, step) in trace.steps.iter().enumerate() {
        let recenter: Vec<String> = step.recentering.iter().map(|c| c.to_string()).collect();
        lines.push(format!(
            "step {}: multiplicity {}, pivot coordinate {}, recenter [{}]",
            i + 1,
            step.multiplicity,
            step.pivot + 1,
            recenter.join(", ")
        ));
    }
    let final_coords: Vec<String> = trace
        .final_branch
        .coords()
        .iter()
        .map(|c| abbreviate_series(c, 4))
        .collect();
    lines.push(format!("final branch: ({})", final_coords.join(", ")));
    Ok(Rendered {
        json: json!({
            "nu": nu,
            "multiplicity_sequence": sequence_json(&seq),
            "trace": trace_json(&trace),
        }),
        text: lines,
    })
}

fn parse_series_list(text: &str, config: &Config) -> Result<Vec<PowerSeries>> {
    text.split([',', '\n'])
        .map(|piece| PowerSeries::parse(piece, config.field, config.precision))
        .collect()
}

pub fn ring_orders(text: &str, config: &Config) -> Result<Rendered> {
    let gens = parse_series_list(text, config)?;
    let basis = ring_order_basis(&gens, config.precision)?;
    let conductor = basis.conductor_estimate();
    let orders: Vec<u64> = basis
        .achieved_orders()
        .into_iter()
        .filter(|&w| w <= conductor)
        .collect();
    let order_set = orders
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    Ok(Rendered {
        json: json!({
            "orders": orders,
            "conductor": conductor,
            "precision": basis.precision(),
        }),
        text: vec![
            format!("orders: {{{order_set}, ...}}"),
            format!("conductor: {conductor}"),
        ],
    })
}

pub fn ring_closure(text: &str, config: &Config) -> Result<Rendered> {
    let gens = parse_series_list(text, config)?;
    let chain = ring_arf_closure(&gens, config.precision)?;
    let seq = chain.multiplicity_sequence();
    let closed = chain.closure_semigroup();
    let levels: Vec<serde_json::Value> = chain
        .levels()
        .iter()
        .map(|level| {
            let c = level.basis.conductor_estimate();
            let orders: Vec<u64> = level
                .basis
                .achieved_orders()
                .into_iter()
                .filter(|&w| w <= c)
                .collect();
            json!({
                "multiplicity": level.multiplicity,
                "pivot": level.pivot.to_string(),
                "orders": orders,
                "conductor": c,
            })
        })
        .collect();
    let mut lines = vec![
        format!("multiplicity sequence: {seq}"),
        format!("closure orders: {}", semigroup_text(&closed)),
    ];
    for (i, level) in chain.levels().iter().enumerate() {
        lines.push(format!(
            "level {}: multiplicity {}, pivot {}",
            i,
            level.multiplicity,
            abbreviate_series(&level.pivot, 4)
        ));
    }
    Ok(Rendered {
        json: json!({
            "multiplicity_sequence": sequence_json(&seq),
            "closure": semigroup_json(&closed),
            "levels": levels,
        }),
        text: lines,
    })
}

pub fn ring_base_cmd(text: &str, config: &Config) -> Result<Rendered> {
    let gens = parse_series_list(text, config)?;
    let chain = ring_arf_closure(&gens, config.precision)?;
    let base = arfring::ring_base(&chain)?;
    let elements: Vec<String> = base.elements.iter().map(|x| x.to_string()).collect();
    let shown: Vec<String> = base
        .elements
        .iter()
        .map(|x| abbreviate_series(x, 4))
        .collect();
    Ok(Rendered {
        json: json!({
            "base_characters": base.characters,
            "dimension": base.dimension,
            "elements": elements,
        }),
        text: vec![
            format!("base characters: {{{}}}", join_u64(&base.characters)),
            format!("dimension: {}", base.dimension),
            format!("elements: {}", shown.join("; ")),
        ],
    })
}

pub fn chars_to_multseq(chars: &[u64]) -> Result<Rendered> {
    let cs = CharacterSet::new(chars)?;
    let seq = cs.to_multiplicity_sequence();
    Ok(Rendered {
        json: json!({
            "characters": characters_json(&cs),
            "multiplicity_sequence": sequence_json(&seq),
        }),
        text: vec![format!("multiplicity sequence: {seq}")],
    })
}

pub fn chars_realize(chars: &[u64], config: &Config) -> Result<Rendered> {
    let cs = CharacterSet::new(chars)?;
    let branch = synthesize_monomial_branch(&cs, config.field, config.precision)?;
    let recomputed = branch.characters(config.max_steps)?;
    let reproduces = recomputed == cs;
    let subset = recomputed
        .values()
        .iter()
        .all(|v| cs.values().contains(v));
    let coords: Vec<String> = branch.coords().iter().map(|c| c.to_string()).collect();
    Ok(Rendered {
        json: json!({
            "branch": coords,
            "recomputed_characters": characters_json(&recomputed),
            "reproduces": reproduces,
            "subset_of_input": subset,
        }),
        text: vec![
            format!("branch: ({})", coords.join(", ")),
            format!(
                "characters reproduce: {}",
                if reproduces { "yes" } else { "no" }
            ),
            format!("recomputed characters: {recomputed}"),
        ],
    })
}

pub fn chars_stability(chars: &[u64], extra: u64) -> Result<Rendered> {
    let cs = CharacterSet::new(chars)?;
    let stable = cs.stability(extra)?;
    Ok(Rendered {
        json: json!({
            "characters": characters_json(&cs),
            "extra": extra,
            "stable": stable,
        }),
        text: vec![format!(
            "sequence unchanged: {}",
            if stable { "yes" } else { "no" }
        )],
    })
}

fn combinations(universe: &[u64], size: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(universe: &[u64], start: usize, size: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..universe.len() {
            current.push(universe[i]);
            rec(universe, i + 1, size, current, out);
            current.pop();
        }
    }
    rec(universe, 0, size, &mut current, &mut out);
    out
}

pub fn verify_closure_oracle(max_gen: u64, max_size: usize) -> Result<Rendered> {
    if max_gen > 30 || max_size > 4 {
        return Err(Error::ResourceGuard(
            "closure verification is limited to generators up to 30 in sets of at most 4".into(),
        ));
    }
    let universe: Vec<u64> = (2..=max_gen).collect();
    let mut checked = 0u64;
    let mut disagreements: Vec<String> = Vec::new();
    for size in 1..=max_size {
        for gens in combinations(&universe, size) {
            let s = NumericalSemigroup::from_generators(&gens)?;
            let fast = s.arf_closure().to_semigroup();
            let slow = oracle_arf_closure_fixedpoint(&s);
            checked += 1;
            if fast != slow {
                disagreements.push(join_u64(&gens));
            }
        }
    }
    Ok(Rendered {
        json: json!({
            "checked": checked,
            "disagreements": disagreements,
        }),
        text: vec![format!(
            "checked {checked} generator sets: {}",
            if disagreements.is_empty() {
                "all agree".to_string()
            } else {
                format!("{} disagreements", disagreements.len())
            }
        )],
    })
}

pub fn verify_characters_oracle(max_conductor: u64) -> Result<Rendered> {
    let semigroups = oracle_enumerate_arf_semigroups(max_conductor)?;
    let mut checked = 0u64;
    let mut disagreements: Vec<String> = Vec::new();
    for s in &semigroups {
        let fast = s.arf_characters()?;
        let bound = s.conductor() + s.multiplicity();
        let slow = oracle_minimal_character_search(s, bound)?;
        checked += 1;
        if fast != slow {
            disagreements.push(join_u64(s.generators()));
        }
    }
    Ok(Rendered {
        json: json!({
            "checked": checked,
            "disagreements": disagreements,
        }),
        text: vec![format!(
            "checked {checked} Arf semigroups: {}",
            if disagreements.is_empty() {
                "all agree".to_string()
            } else {
                format!("{} disagreements", disagreements.len())
            }
        )],
    })
}

pub fn verify_ring_oracle(text: &str, degree: u64, config: &Config) -> Result<Rendered> {
    let gens = parse_series_list(text, config)?;
    let basis = ring_order_basis(&gens, config.precision)?;
    let oracle = oracle_ring_orders_linear(&gens, degree, config.precision)?;
    let missing: Vec<u64> = oracle
        .iter()
        .copied()
        .filter(|&w| !basis.contains_order(w))
        .collect();
    Ok(Rendered {
        json: json!({
            "oracle_orders": oracle,
            "all_contained": missing.is_empty(),
            "missing": missing,
        }),
        text: vec![format!(
            "oracle orders contained in the basis: {}",
            if missing.is_empty() { "yes" } else { "no" }
        )],
    })
}

pub fn verify_enumerate(max_conductor: u64) -> Result<Rendered> {
    let semigroups = oracle_enumerate_arf_semigroups(max_conductor)?;
    let listed: Vec<serde_json::Value> = semigroups
        .iter()
        .map(|s| {
            json!({
                "generators": s.generators(),
                "conductor": s.conductor(),
                "multiplicity_sequence": sequence_json(&s.arf_closure()),
            })
        })
        .collect();
    let mut lines = vec![format!(
        "{} Arf semigroups with conductor at most {max_conductor}",
        semigroups.len()
    )];
    for s in &semigroups {
        lines.push(format!(
            "{} generators {}",
            s.arf_closure(),
            join_u64(s.generators())
        ));
    }
    Ok(Rendered {
        json: json!({
            "count": semigroups.len(),
            "semigroups": listed,
        }),
        text: lines,
    })
}
