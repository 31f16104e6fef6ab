//! Quantum doubles of the subfactors with index below 4, realized as Z2
//! simple-current condensations of products of catalog theories.

use std::fmt;
use std::str::FromStr;

use petgraph::dot::{Config, Dot};
use petgraph::graph::UnGraph;

use crate::catalog::{fibonacci, ising_like, su2, FibonacciVariant};
use crate::error::{Error, Result};
use crate::fusion::ObjectVector;
use crate::modular::{
    central_charge_mod8, deligne_product, reverse, s_from_fusion_and_twists, verify_modular, Check, ModularData,
    Tolerances,
};
use crate::simple_current::{condense_z2, sector_counts, simple_current_invariant, ModularInvariant, SimpleCurrent};

pub const MAX_A_LEVEL: u32 = 16;
pub const D_RANGE: std::ops::RangeInclusive<u32> = 2..=5;
const GHJ_LEVEL: u32 = 10;

/// A principal graph with index below 4, plus the GHJ alias of `A_11`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdeCase {
    /// `A_{level+1}`.
    A {
        level: u32,
    },
    /// `D_{2n}`, built from level `4n - 4`.
    D {
        n: u32,
    },
    E6,
    E6Bar,
    E8,
    E8Bar,
    Ghj,
}

impl AdeCase {
    pub fn validate(self) -> Result<Self> {
        match self {
            AdeCase::A { level } if !(1..=MAX_A_LEVEL).contains(&level) => {
                Err(Error::InvalidParameter(format!("A case needs level in 1..={MAX_A_LEVEL}, got {level}")))
            }
            AdeCase::D { n } if !D_RANGE.contains(&n) => Err(Error::InvalidParameter(format!(
                "D case needs n in {}..={}, got {n}",
                D_RANGE.start(),
                D_RANGE.end()
            ))),
            _ => Ok(self),
        }
    }

    /// The `D` case for an su(2) level, which must be `4n - 4`.
    pub fn d_from_level(level: u32) -> Result<Self> {
        if level == 0 || !level.is_multiple_of(4) {
            return Err(Error::InvalidParameter(format!("D case needs a level divisible by 4, got {level}")));
        }
        AdeCase::D { n: level / 4 + 1 }.validate()
    }

    pub fn all_supported() -> Vec<AdeCase> {
        let mut cases: Vec<AdeCase> = (1..=MAX_A_LEVEL).map(|level| AdeCase::A { level }).collect();
        cases.extend(D_RANGE.map(|n| AdeCase::D { n }));
        cases.extend([AdeCase::E6, AdeCase::E6Bar, AdeCase::E8, AdeCase::E8Bar, AdeCase::Ghj]);
        cases
    }

    /// Name of the Dynkin diagram whose double is realized.
    pub fn graph_name(self) -> String {
        match self {
            AdeCase::A { level } => format!("A_{}", level + 1),
            AdeCase::D { n } => format!("D_{}", 2 * n),
            AdeCase::E6 => "E_6".into(),
            AdeCase::E6Bar => "E_6 (conjugate)".into(),
            AdeCase::E8 => "E_8".into(),
            AdeCase::E8Bar => "E_8 (conjugate)".into(),
            AdeCase::Ghj => "GHJ".into(),
        }
    }
}

impl fmt::Display for AdeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeCase::A { level } => write!(f, "a:{level}"),
            AdeCase::D { n } => write!(f, "d:{n}"),
            AdeCase::E6 => f.write_str("e6"),
            AdeCase::E6Bar => f.write_str("e6bar"),
            AdeCase::E8 => f.write_str("e8"),
            AdeCase::E8Bar => f.write_str("e8bar"),
            AdeCase::Ghj => f.write_str("ghj"),
        }
    }
}

impl FromStr for AdeCase {
    type Err = Error;

    /// Accepts `a:<level>`, `d:<n>` and the bare names of the other cases.
    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p.trim().parse::<u32>().map_err(|e| Error::Parse(format!("`{p}`: {e}")))?)),
            None => (s, None),
        };
        RealizationRegistry::default().case(name, param)
    }
}

/// One way of assembling the input theory and current for a double.
pub trait DoubleRealization: Send + Sync {
    fn case(&self) -> AdeCase;

    fn build_input(&self) -> Result<(ModularData, SimpleCurrent)>;

    /// Theory and current whose simple-current invariant is reported when the
    /// input current is the unit.
    fn invariant_extension(&self) -> Result<Option<(ModularData, SimpleCurrent)>> {
        Ok(None)
    }

    /// Global dimension the condensed theory must have.
    fn expected_global_dimension(&self, input: &ModularData, current: &SimpleCurrent) -> Result<f64> {
        Ok(if current.is_unit() { input.global_dimension() } else { input.global_dimension() / 4.0 })
    }

    fn notes(&self) -> Vec<String> {
        Vec::new()
    }
}

struct AProduct {
    level: u32,
}

impl DoubleRealization for AProduct {
    fn case(&self) -> AdeCase {
        AdeCase::A { level: self.level }
    }

    fn build_input(&self) -> Result<(ModularData, SimpleCurrent)> {
        let a = su2(self.level)?;
        let md = deligne_product(&a, &reverse(&a))?;
        let g = SimpleCurrent::by_name(&md, &format!("{0},{0}", self.level))?;
        Ok((md, g))
    }
}

/// The A-case at level 10 with `S` rebuilt from fusion rules and twists
/// rather than taken from the closed formula.
struct GhjAlias;

impl DoubleRealization for GhjAlias {
    fn case(&self) -> AdeCase {
        AdeCase::Ghj
    }

    fn build_input(&self) -> Result<(ModularData, SimpleCurrent)> {
        let a = su2(GHJ_LEVEL)?;
        let product = deligne_product(&a, &reverse(&a))?;
        let ring = product.ring().clone();
        let twists = product.twists().to_vec();
        let s = s_from_fusion_and_twists(&ring, &twists)?;
        let md = ModularData::from_s(ring, s, twists)?;
        let g = SimpleCurrent::by_name(&md, &format!("{GHJ_LEVEL},{GHJ_LEVEL}"))?;
        Ok((md, g))
    }

    fn notes(&self) -> Vec<String> {
        vec![format!(
            "the GHJ subfactor (index 3+sqrt(3)) shares its even part with A_{}, so its double is the A-case double at level {GHJ_LEVEL}",
            GHJ_LEVEL + 1
        )]
    }
}

struct DProduct {
    n: u32,
}

impl DProduct {
    fn level(&self) -> u32 {
        4 * self.n - 4
    }

    fn condensate(&self) -> Result<ModularData> {
        let a = su2(self.level())?;
        let g = SimpleCurrent::new(&a, self.level() as usize)?;
        Ok(condense_z2(&a, &g, &Tolerances::default())?.selected().clone())
    }
}

impl DoubleRealization for DProduct {
    fn case(&self) -> AdeCase {
        AdeCase::D { n: self.n }
    }

    fn build_input(&self) -> Result<(ModularData, SimpleCurrent)> {
        let b = self.condensate()?;
        let md = deligne_product(&b, &reverse(&b))?;
        let g = SimpleCurrent::unit(&md);
        Ok((md, g))
    }

    fn invariant_extension(&self) -> Result<Option<(ModularData, SimpleCurrent)>> {
        let a = su2(self.level())?;
        let md = deligne_product(&a, &reverse(&self.condensate()?))?;
        let g = SimpleCurrent::by_name(&md, &format!("{},[0]", self.level()))?;
        Ok(Some((md, g)))
    }

    fn expected_global_dimension(&self, _input: &ModularData, _current: &SimpleCurrent) -> Result<f64> {
        let half = su2(self.level())?.global_dimension() / 4.0;
        Ok(half * half)
    }

    fn notes(&self) -> Vec<String> {
        vec![format!(
            "product of the level-{} condensate with its reverse; the reported invariant is Z_D{} tensor I_{} on su2({}) x reverse(condensate)",
            self.level(),
            2 * self.n,
            self.n + 1,
            self.level()
        )]
    }
}

struct ESeries {
    case: AdeCase,
}

impl ESeries {
    fn level(&self) -> u32 {
        match self.case {
            AdeCase::E6 | AdeCase::E6Bar => 10,
            _ => 28,
        }
    }
}

impl DoubleRealization for ESeries {
    fn case(&self) -> AdeCase {
        self.case
    }

    fn build_input(&self) -> Result<(ModularData, SimpleCurrent)> {
        let a = su2(self.level())?;
        let (left, right, current) = match self.case {
            AdeCase::E6 => (a, ising_like(11)?, "10,2"),
            AdeCase::E6Bar => (reverse(&a), ising_like(5)?, "10,2"),
            AdeCase::E8 => (a, fibonacci(FibonacciVariant::F4), "28,id"),
            AdeCase::E8Bar => (reverse(&a), fibonacci(FibonacciVariant::G2), "28,id"),
            other => return Err(Error::InvalidParameter(format!("{other} is not an E case"))),
        };
        let md = deligne_product(&left, &right)?;
        let g = SimpleCurrent::by_name(&md, current)?;
        Ok((md, g))
    }

    fn notes(&self) -> Vec<String> {
        match self.case {
            AdeCase::E8 | AdeCase::E8Bar => vec![
                "the invariant is the level-28 simple-current invariant (type D_16) tensor I_2; a D_12 label for this inclusion does not match level 28"
                    .into(),
            ],
            _ => Vec::new(),
        }
    }
}

/// How a registered realization reads its numeric parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    None,
    Level,
    N,
}

type Factory = Box<dyn Fn(Option<u32>) -> Result<AdeCase> + Send + Sync>;

struct Entry {
    name: &'static str,
    param: ParamKind,
    summary: &'static str,
    factory: Factory,
}

/// Realizations selectable by name at runtime.
pub struct RealizationRegistry {
    entries: Vec<Entry>,
}

impl RealizationRegistry {
    pub fn empty() -> Self {
        RealizationRegistry { entries: Vec::new() }
    }

    pub fn register(
        &mut self,
        name: &'static str,
        param: ParamKind,
        summary: &'static str,
        factory: impl Fn(Option<u32>) -> Result<AdeCase> + Send + Sync + 'static,
    ) {
        self.entries.push(Entry { name, param, summary, factory: Box::new(factory) });
    }

    /// `(name, parameter kind, summary)` in registration order.
    pub fn list(&self) -> impl Iterator<Item = (&'static str, ParamKind, &'static str)> + '_ {
        self.entries.iter().map(|e| (e.name, e.param, e.summary))
    }

    pub fn param_kind(&self, name: &str) -> Option<ParamKind> {
        self.entries.iter().find(|e| e.name.eq_ignore_ascii_case(name)).map(|e| e.param)
    }

    pub fn case(&self, name: &str, param: Option<u32>) -> Result<AdeCase> {
        let entry = self
            .entries
            .iter()
            .find(|e| e.name.eq_ignore_ascii_case(name.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown case `{name}`")))?;
        match (entry.param, param) {
            (ParamKind::None, Some(_)) => {
                Err(Error::InvalidParameter(format!("case `{}` takes no parameter", entry.name)))
            }
            (ParamKind::Level | ParamKind::N, None) => {
                Err(Error::InvalidParameter(format!("case `{}` needs a parameter", entry.name)))
            }
            _ => (entry.factory)(param),
        }
    }
}

impl Default for RealizationRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register("a", ParamKind::Level, "A_{k+1}: su2(k) x reverse(su2(k)) by (k,k)", |p| {
            AdeCase::A { level: p.unwrap_or_default() }.validate()
        });
        r.register("d", ParamKind::N, "D_{2n}: condensate of su2(4n-4) times its reverse", |p| {
            AdeCase::D { n: p.unwrap_or_default() }.validate()
        });
        r.register("e6", ParamKind::None, "E_6: su2(10) x ising(11) by (10,2)", |_| Ok(AdeCase::E6));
        r.register("e6bar", ParamKind::None, "conjugate E_6: reverse(su2(10)) x ising(5) by (10,2)", |_| {
            Ok(AdeCase::E6Bar)
        });
        r.register("e8", ParamKind::None, "E_8: su2(28) x fib(F4) by (28,id)", |_| Ok(AdeCase::E8));
        r.register("e8bar", ParamKind::None, "conjugate E_8: reverse(su2(28)) x fib(G2) by (28,id)", |_| {
            Ok(AdeCase::E8Bar)
        });
        r.register("ghj", ParamKind::None, "GHJ alias of A_11 with S rebuilt by balancing", |_| Ok(AdeCase::Ghj));
        r
    }
}

pub fn realization(case: AdeCase) -> Result<Box<dyn DoubleRealization>> {
    Ok(match case.validate()? {
        AdeCase::A { level } => Box::new(AProduct { level }),
        AdeCase::D { n } => Box::new(DProduct { n }),
        AdeCase::Ghj => Box::new(GhjAlias),
        e => Box::new(ESeries { case: e }),
    })
}

/// Orbit data of the condensation step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondensationSummary {
    pub free_orbits: usize,
    pub fixed_points: Vec<String>,
    pub excluded: usize,
    pub candidates: usize,
}

#[derive(Debug, Clone)]
pub struct DoubleReport {
    pub case: AdeCase,
    pub input: ModularData,
    pub current: SimpleCurrent,
    pub invariant: ModularInvariant,
    /// Labels indexing `invariant` (the input, or the extension it came from).
    pub invariant_labels: Vec<String>,
    pub character_form: Option<String>,
    /// `(tr Z, sum Z^2)`.
    pub sector_counts: (u64, u64),
    pub condensation: Option<CondensationSummary>,
    pub condensed: ModularData,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl DoubleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for DoubleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "double of {} ({})", self.case.graph_name(), self.case)?;
        writeln!(f, "input rank        {}", self.input.rank())?;
        writeln!(f, "current           {}", self.input.names()[self.current.label])?;
        writeln!(f, "tr Z              {}", self.sector_counts.0)?;
        writeln!(f, "sum Z^2           {}", self.sector_counts.1)?;
        writeln!(f, "condensed rank    {}", self.condensed.rank())?;
        if let Some(c) = &self.condensation {
            writeln!(
                f,
                "orbits            {} free, {} fixed {:?}, {} excluded, {} completion(s)",
                c.free_orbits,
                c.fixed_points.len(),
                c.fixed_points,
                c.excluded,
                c.candidates
            )?;
        }
        if let Some(text) = &self.character_form {
            writeln!(f, "Z = {text}")?;
        }
        for c in &self.checks {
            writeln!(
                f,
                "{:<20} {:<4} deviation {:.3e} (tolerance {:.0e})",
                c.name,
                if c.passed { "ok" } else { "FAIL" },
                c.deviation,
                c.tolerance
            )?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

pub fn realize_double(case: AdeCase, tol: &Tolerances) -> Result<DoubleReport> {
    realize(realization(case)?.as_ref(), tol)
}

/// Runs the pipeline for one realization and records every check.
pub fn realize(realization: &dyn DoubleRealization, tol: &Tolerances) -> Result<DoubleReport> {
    let (input, current) = realization.build_input()?;
    let (invariant, invariant_labels, invariant_dev, condensed, condensation) = if current.is_unit() {
        let (invariant, labels, dev) = match realization.invariant_extension()? {
            Some((ext, g)) => {
                let z = simple_current_invariant(&ext, &g, tol)?;
                let dev = z.commutator_deviation(&ext);
                (z, ext.names().to_vec(), dev)
            }
            None => (ModularInvariant::identity(input.rank()), input.names().to_vec(), 0.0),
        };
        (invariant, labels, dev, input.clone(), None)
    } else {
        let invariant = simple_current_invariant(&input, &current, tol)?;
        let result = condense_z2(&input, &current, tol)?;
        let summary = CondensationSummary {
            free_orbits: result.free_orbits.len(),
            fixed_points: result.fixed_points.iter().map(|&x| input.names()[x].clone()).collect(),
            excluded: result.excluded.len(),
            candidates: result.condensed.len(),
        };
        let dev = invariant.commutator_deviation(&input);
        (invariant, input.names().to_vec(), dev, result.selected().clone(), Some(summary))
    };

    let mut checks = Vec::new();
    let c_dev = central_charge_mod8(&condensed).map_or(f64::INFINITY, |c| c.distance_from_zero());
    checks.push(Check::new("central_charge", c_dev, 1e-9));
    let expected = realization.expected_global_dimension(&input, &current)?;
    let dim_dev = (condensed.global_dimension() - expected).abs() / expected;
    checks.push(Check::new("global_dimension", dim_dev, 1e-7));
    let report = verify_modular(&condensed, tol);
    let worst = report.checks.iter().map(|c| c.deviation / c.tolerance).fold(0.0, f64::max);
    let modular_dev = if report.all_passed() { worst * tol.report } else { f64::INFINITY };
    checks.push(Check::new("modularity", modular_dev, tol.report));
    let commutes = if invariant.get(0, 0) == 1 { invariant_dev } else { f64::INFINITY };
    checks.push(Check::new("invariant_commutes", commutes, 1e-8));

    let character_form = character_form(&invariant, &invariant_labels).ok();
    Ok(DoubleReport {
        case: realization.case(),
        sector_counts: sector_counts(&invariant),
        input,
        current,
        invariant,
        invariant_labels,
        character_form,
        condensation,
        condensed,
        checks,
        notes: realization.notes(),
    })
}

/// Renders `Z` as a sum of `|chi_a+chi_b|^2`, `|chi_a|^2` and `2|chi_f|^2` blocks.
pub fn character_form(z: &ModularInvariant, names: &[String]) -> Result<String> {
    let r = z.rank();
    if names.len() != r {
        return Err(Error::Shape(format!("{} names for rank {r}", names.len())));
    }
    let bad = |why: String| Err(Error::NotBlockDecomposable(why));
    let mut blocks = Vec::new();
    let mut partner = vec![None; r];
    for i in 0..r {
        let row: Vec<(usize, u32)> = (0..r).filter(|&j| z.get(i, j) != 0).map(|j| (j, z.get(i, j))).collect();
        match row.as_slice() {
            [] => {}
            [(j, 1)] if *j == i => blocks.push(format!("|χ_{{{}}}|^2", names[i])),
            [(j, 2)] if *j == i => blocks.push(format!("2|χ_{{{}}}|^2", names[i])),
            [(a, 1), (b, 1)] if *a == i || *b == i => {
                let other = if *a == i { *b } else { *a };
                if z.get(other, other) != 1 || z.get(other, i) != 1 {
                    return bad(format!("row {i} pairs with {other} inconsistently"));
                }
                partner[i] = Some(other);
                if i < other {
                    blocks.push(format!("|χ_{{{}}}+χ_{{{}}}|^2", names[i], names[other]));
                }
            }
            _ => return bad(format!("row {i} is not a single block")),
        }
    }
    for i in 0..r {
        if let Some(j) = partner[i] {
            if partner[j] != Some(i) {
                return bad(format!("labels {i} and {j} do not form a block"));
            }
        }
    }
    if blocks.is_empty() {
        return bad("zero matrix".into());
    }
    Ok(blocks.join(" + "))
}

/// Inverse of [`character_form`].
pub fn parse_character_form(text: &str, names: &[String]) -> Result<ModularInvariant> {
    let r = names.len();
    let index = |name: &str| names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownLabel(name.to_string()));
    let mut entries = vec![0u32; r * r];
    for block in text.split(" + ") {
        let block = block.trim();
        let (coeff, rest) = match block.strip_prefix('2') {
            Some(rest) => (2, rest),
            None => (1, block),
        };
        let inner = rest
            .strip_prefix('|')
            .and_then(|s| s.strip_suffix("|^2"))
            .ok_or_else(|| Error::Parse(format!("malformed block `{block}`")))?;
        let labels: Vec<usize> = inner
            .split("+χ_")
            .map(|part| {
                let part = part.strip_prefix("χ_").unwrap_or(part);
                part.strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| Error::Parse(format!("malformed character `{part}`")))
                    .and_then(index)
            })
            .collect::<Result<_>>()?;
        for &a in &labels {
            for &b in &labels {
                entries[a * r + b] += coeff;
            }
        }
    }
    Ok(ModularInvariant::from_fn(r, "character form", |i, j| entries[i * r + j]))
}

/// Undirected fusion graph of `generator` in the standard text graph format:
/// one node per label, and `N[generator][i][j]` parallel edges between `i <= j`.
pub fn fusion_graph_dot(md: &ModularData, generator: &ObjectVector) -> Result<String> {
    let r = md.rank();
    if generator.0.len() != r {
        return Err(Error::Shape(format!("generator has {} entries for rank {r}", generator.0.len())));
    }
    let ring = md.ring();
    let mut graph = UnGraph::<String, u32>::with_capacity(r, 0);
    let nodes: Vec<_> = md.names().iter().map(|n| graph.add_node(n.clone())).collect();
    for i in 0..r {
        let mut row = vec![0u64; r];
        for (a, &c) in generator.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, m) in ring.product(a, i) {
                row[j] += u64::from(c) * u64::from(m);
            }
        }
        for j in i..r {
            for _ in 0..row[j] {
                graph.add_edge(nodes[i], nodes[j], 1);
            }
        }
    }
    Ok(format!("{}", Dot::with_config(&graph, &[Config::EdgeNoLabel])))
}
