use serde::Serialize;

use super::{constant_c, BisectorData, Enumeration, FamilyElement, Rational, DEFAULT_N_MAX};
use crate::hgeom::dist_geodesic_geodesic;
use crate::isom::Isometry;
use crate::words::Alphabet;
use crate::{Error, Result};

/// Condition 1 is a strict inequality between reals; it is tested as
/// `new > old + CONDITION_ONE_MARGIN`.
pub const CONDITION_ONE_MARGIN: f64 = 1e-9;

/// A chosen generator `γ_m = f_{q_m, n_m}` with its two bisectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectedGenerator {
    pub m: usize,
    pub element: FamilyElement,
    pub bisector_fwd: BisectorData,
    pub bisector_inv: BisectorData,
}

impl SelectedGenerator {
    pub fn new(m: usize, element: FamilyElement) -> Result<Self> {
        let bisector_fwd = element.bisector_data(false)?;
        let bisector_inv = element.bisector_data(true)?;
        Ok(SelectedGenerator { m, element, bisector_fwd, bisector_inv })
    }

    pub fn q(&self) -> Rational {
        self.element.q()
    }

    pub fn n(&self) -> u32 {
        self.element.n()
    }

    pub fn bisector(&self, inverse: bool) -> &BisectorData {
        if inverse {
            &self.bisector_inv
        } else {
            &self.bisector_fwd
        }
    }

    /// The four extremities `e_l(γ^{±1})`.
    pub fn extremities(&self) -> [f64; 4] {
        let [a, b] = self.bisector_fwd.extremities;
        let [c, d] = self.bisector_inv.extremities;
        [a, b, c, d]
    }

    pub fn label(&self, inverse: bool) -> String {
        if inverse {
            format!("g{}^-1", self.m)
        } else {
            format!("g{}", self.m)
        }
    }
}

/// The selected generators of `Γ` together with the data needed to
/// reproduce them.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpec {
    pub generators: Vec<SelectedGenerator>,
    pub c: f64,
    pub enumeration: Enumeration,
    pub n_max: u32,
}

/// Recheck of the three selection conditions for one generator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionRecord {
    pub m: usize,
    pub q: Rational,
    pub n: u32,
    /// `min |e(γ_m)| - max |e(γ_{m-1})|`; absent for `m = 0`.
    pub extremity_margin: Option<f64>,
    /// `d(∂H_i(γ_m), ∂H_i(γ_m⁻¹))`, required `≥ 2C`.
    pub self_gap: f64,
    /// Smallest distance from a bisector of `γ_m` to one of an earlier
    /// generator, required `≥ C`.
    pub min_previous_gap: Option<f64>,
    pub holds: bool,
}

fn min_abs(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min)
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

fn conditions(candidate: &SelectedGenerator, previous: &[SelectedGenerator], c: f64) -> ConditionRecord {
    let extremity_margin = previous
        .last()
        .map(|prev| min_abs(&candidate.extremities()) - max_abs(&prev.extremities()));
    let fwd = candidate.bisector_fwd.geodesic();
    let inv = candidate.bisector_inv.geodesic();
    let self_gap = dist_geodesic_geodesic(&fwd, &inv);
    let min_previous_gap = previous
        .iter()
        .flat_map(|s| [s.bisector_fwd.geodesic(), s.bisector_inv.geodesic()])
        .flat_map(|old| [dist_geodesic_geodesic(&fwd, &old), dist_geodesic_geodesic(&inv, &old)])
        .reduce(f64::min);
    let holds = previous.is_empty()
        || (extremity_margin.is_some_and(|e| e > CONDITION_ONE_MARGIN)
            && self_gap >= 2.0 * c
            && min_previous_gap.is_none_or(|g| g >= c));
    ConditionRecord {
        m: candidate.m,
        q: candidate.q(),
        n: candidate.n(),
        extremity_margin,
        self_gap,
        min_previous_gap,
        holds,
    }
}

/// Selects `count` generators `γ_0, …, γ_{count-1}` with the default
/// `N_MAX`.
pub fn select_generators(enumeration: &Enumeration, count: usize) -> Result<GroupSpec> {
    select_generators_with(enumeration, count, DEFAULT_N_MAX)
}

/// `γ_0 = f_{q_0, 1}`; for `m ≥ 1`, `γ_m = f_{q_m, n_m}` where `n_m` is the
/// smallest `p ≤ n_max` such that
///
/// 1. every extremity of `∂H_i(f_{q_m,p}^{±1})` exceeds in modulus every
///    extremity of the bisectors of `γ_{m-1}`,
/// 2. `d(∂H_i(f), ∂H_i(f⁻¹)) ≥ 2C`,
/// 3. both new bisectors are at distance `≥ C` from all earlier ones.
pub fn select_generators_with(enumeration: &Enumeration, count: usize, n_max: u32) -> Result<GroupSpec> {
    let c = constant_c();
    let mut chosen: Vec<SelectedGenerator> = Vec::with_capacity(count);
    for m in 0..count {
        let (q, _) = enumeration.entry(m)?;
        if m == 0 {
            let element = FamilyElement::with_max_index(q, 1, n_max)?;
            chosen.push(SelectedGenerator::new(0, element)?);
            continue;
        }
        let mut last_failure = String::from("no candidate examined");
        let mut found = None;
        for p in 1..=n_max {
            let candidate = SelectedGenerator::new(m, FamilyElement::with_max_index(q, p, n_max)?)?;
            let record = conditions(&candidate, &chosen, c);
            if record.holds {
                found = Some(candidate);
                break;
            }
            last_failure = format!(
                "at p = {p}: extremity margin {:?}, self gap {} (need {}), min gap to predecessors {:?} (need {})",
                record.extremity_margin,
                record.self_gap,
                2.0 * c,
                record.min_previous_gap,
                c
            );
        }
        match found {
            Some(g) => chosen.push(g),
            None => {
                return Err(Error::SelectionExhausted { m, q: q.to_string(), n_max, diagnostics: last_failure });
            }
        }
    }
    Ok(GroupSpec { generators: chosen, c, enumeration: enumeration.clone(), n_max })
}

impl GroupSpec {
    /// Builds a spec from explicit `n_m` values without checking the
    /// selection conditions (used for loading and for negative tests).
    pub fn from_parts(enumeration: Enumeration, indices: &[u32], n_max: u32) -> Result<Self> {
        let generators = indices
            .iter()
            .enumerate()
            .map(|(m, &n)| {
                let (q, _) = enumeration.entry(m)?;
                SelectedGenerator::new(m, FamilyElement::with_max_index(q, n, n_max)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupSpec { generators, c: constant_c(), enumeration, n_max })
    }

    /// A spec with no generators (the trivial group).
    pub fn empty() -> Self {
        GroupSpec { generators: Vec::new(), c: constant_c(), enumeration: Enumeration::default(), n_max: DEFAULT_N_MAX }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn isometries(&self) -> Vec<Isometry> {
        self.generators.iter().map(|g| g.element.matrix()).collect()
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(&self.isometries())
    }

    pub fn indices(&self) -> Vec<u32> {
        self.generators.iter().map(SelectedGenerator::n).collect()
    }

    /// Generators whose family parameter equals `q`, in selection order.
    pub fn generators_with_q(&self, q: Rational) -> Vec<&SelectedGenerator> {
        self.generators.iter().filter(|g| g.q() == q).collect()
    }

    /// Rechecks conditions 1–3 for every generator.
    pub fn check_conditions(&self) -> Vec<ConditionRecord> {
        (0..self.generators.len())
            .map(|m| conditions(&self.generators[m], &self.generators[..m], self.c))
            .collect()
    }
}
