//! Hierarchical composition: a top-level RPF over components, each component
//! an RPF over its own outcomes.
//!
//! Outcomes of the composed RPF are laid out component-major. Within a
//! component entries are copied; across components
//! `P(h, h') = P_a(h, Omega_a) * P_top(a, b) * P_b(Omega_b, h')`.

use crate::error::{Result, RpfError};
use crate::events::{event_rel_prob, Event};
use crate::magnitude::Magnitude;
use crate::rpf::DenseRpf;
use crate::table::MagnitudeTable;

#[derive(Debug, Clone)]
pub struct Composition {
    top: DenseRpf,
    components: Vec<DenseRpf>,
}

impl Composition {
    pub fn new(top: DenseRpf, components: Vec<DenseRpf>) -> Result<Composition> {
        if top.k() != components.len() {
            return Err(RpfError::Dimension {
                expected: top.k(),
                found: components.len(),
            });
        }
        Ok(Composition { top, components })
    }

    pub fn top(&self) -> &DenseRpf {
        &self.top
    }

    pub fn components(&self) -> &[DenseRpf] {
        &self.components
    }

    /// Offset of each component's first outcome in the composed index space.
    pub fn offsets(&self) -> Vec<usize> {
        self.components
            .iter()
            .scan(0, |acc, c| {
                let start = *acc;
                *acc += c.k();
                Some(start)
            })
            .collect()
    }
}

/// Result of [`compose`]: the flattened RPF plus the component offsets.
#[derive(Debug, Clone)]
pub struct Composed {
    pub rpf: DenseRpf,
    pub offsets: Vec<usize>,
}

impl Composed {
    /// Composed index of outcome `i` of component `c`.
    pub fn index_of(&self, component: usize, i: usize) -> usize {
        self.offsets[component] + i
    }

    /// `(component, local index)` of a composed outcome.
    pub fn locate(&self, h: usize) -> (usize, usize) {
        let c = self.offsets.partition_point(|&o| o <= h) - 1;
        (c, h - self.offsets[c])
    }
}

/// Every component must be non-empty and totally comparable, so that
/// `P_c(h, Omega_c)` is defined by the event rules.
pub fn compose(c: &Composition) -> Result<Composed> {
    // P_c(h, Omega_c) for every component outcome.
    let mut to_block: Vec<Magnitude> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();
    for (idx, comp) in c.components.iter().enumerate() {
        if comp.k() == 0 {
            return Err(RpfError::InvalidParameter(format!(
                "component {idx} is empty"
            )));
        }
        comp.require_totally_comparable()?;
        let all = Event::universal(comp.k());
        for h in 0..comp.k() {
            to_block.push(event_rel_prob(comp, &Event::singleton(h), &all)?);
            owner.push(idx);
        }
    }
    let offsets = c.offsets();
    let table = MagnitudeTable::from_fn(owner.len(), |x, y| {
        let (a, b) = (owner[x], owner[y]);
        if a == b {
            c.components[a][(x - offsets[a], y - offsets[a])]
        } else {
            to_block[x] * c.top[(a, b)] * to_block[y].inverse()
        }
    });
    Ok(Composed {
        rpf: DenseRpf::from_table_unchecked(table),
        offsets,
    })
}

/// Which of the three total-comparability conditions a composition meets.
/// All three hold exactly when the composed RPF is totally comparable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparabilityConditions {
    /// The top and every component are totally comparable.
    pub condition1: bool,
    /// At most one component is not totally mutually possible.
    pub condition2: bool,
    /// Every component is possible with respect to any component that is
    /// not totally mutually possible.
    pub condition3: bool,
    pub witness: Option<ConditionWitness>,
}

impl ComparabilityConditions {
    pub fn all_hold(&self) -> bool {
        self.condition1 && self.condition2 && self.condition3
    }
}

/// First failure found, in condition order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionWitness {
    /// The top RPF has an incomparable pair of components.
    TopIncomparable(usize, usize),
    /// Component `component` has an incomparable pair.
    ComponentIncomparable {
        component: usize,
        pair: (usize, usize),
    },
    /// Two components both contain impossible outcomes.
    TwoDegenerateComponents(usize, usize),
    /// `other` is impossible with respect to the degenerate `component`.
    ImpossibleTowards { other: usize, component: usize },
}

pub fn total_comparability_conditions(c: &Composition) -> Result<ComparabilityConditions> {
    if let Some(idx) = c.components.iter().position(|p| p.k() == 0) {
        return Err(RpfError::InvalidParameter(format!(
            "component {idx} is empty"
        )));
    }
    let mut witnesses = Vec::new();

    let top_pair = c.top.incomparable_pair();
    let comp_pair = c
        .components
        .iter()
        .enumerate()
        .find_map(|(i, p)| p.incomparable_pair().map(|pair| (i, pair)));
    let condition1 = top_pair.is_none() && comp_pair.is_none();
    if let Some((a, b)) = top_pair {
        witnesses.push(ConditionWitness::TopIncomparable(a, b));
    } else if let Some((component, pair)) = comp_pair {
        witnesses.push(ConditionWitness::ComponentIncomparable { component, pair });
    }

    let degenerate: Vec<usize> = c
        .components
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_totally_mutually_possible())
        .map(|(i, _)| i)
        .collect();
    let condition2 = degenerate.len() <= 1;
    if let [a, b, ..] = degenerate[..] {
        witnesses.push(ConditionWitness::TwoDegenerateComponents(a, b));
    }

    let mut condition3 = true;
    'outer: for &component in &degenerate {
        for other in 0..c.components.len() {
            if other != component && !c.top[(other, component)].is_positive() {
                condition3 = false;
                witnesses.push(ConditionWitness::ImpossibleTowards { other, component });
                break 'outer;
            }
        }
    }

    Ok(ComparabilityConditions {
        condition1,
        condition2,
        condition3,
        witness: witnesses.into_iter().next(),
    })
}
