use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt;
use std::time::{Duration, Instant};

use super::clause::{is_tautology, normalize, subsumes, Clause, Literal, Rule};
use super::clausify::{ClauseSet, InputClause};
use super::infer::{Conclusion, Inferences};
use super::kbo::Kbo;
use super::term::{FoTerm, SymbolTable, BOOL, FALSE, TRUE};
use super::{BoolMode, BoolTheory, ProverConfig};
use crate::translate::{BOOL_DISTINCT_AXIOM, BOOL_DOMAIN_AXIOM};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    Clauses,
    Time,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The empty clause was derived; the id of the empty clause.
    Refuted(usize),
    Saturated,
    LimitHit(Limit),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Refuted(_) => f.write_str("refuted"),
            Verdict::Saturated => f.write_str("saturated"),
            Verdict::LimitHit(Limit::Clauses) => f.write_str("limit-hit clauses"),
            Verdict::LimitHit(Limit::Time) => f.write_str("limit-hit time"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub input: usize,
    /// Conclusions of generating inferences, before any deletion.
    pub generated: usize,
    /// Derived clauses that survived deletion.
    pub kept: usize,
    pub given: usize,
    /// Generated clauses with an equation between two distinct variables.
    pub var_equations: usize,
    pub per_rule: BTreeMap<&'static str, usize>,
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input={}", self.input)?;
        writeln!(f, "generated={}", self.generated)?;
        writeln!(f, "kept={}", self.kept)?;
        writeln!(f, "given={}", self.given)?;
        writeln!(f, "var_equations={}", self.var_equations)?;
        for (i, rule) in Rule::INFERENCES.iter().enumerate() {
            let n = self.per_rule.get(rule).copied().unwrap_or(0);
            write!(f, "{rule}={n}")?;
            if i + 1 < Rule::INFERENCES.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    pub stats: Stats,
    /// Every input and kept clause; clause `id` is at index `id - 1`.
    pub clauses: Vec<Clause>,
    pub syms: SymbolTable,
}

impl Outcome {
    pub fn clause(&self, id: usize) -> &Clause {
        &self.clauses[id - 1]
    }

    /// The clauses the refutation depends on, parents before children.
    pub fn proof(&self) -> Option<Vec<&Clause>> {
        let Verdict::Refuted(empty) = self.verdict else { return None };
        let mut seen = BTreeSet::new();
        let mut stack = vec![empty];
        while let Some(id) = stack.pop() {
            if seen.insert(id) {
                stack.extend(&self.clause(id).parents);
            }
        }
        Some(seen.into_iter().map(|id| self.clause(id)).collect())
    }

    /// `id. clause [rule, parents]` per line; the empty clause is `0.`
    pub fn render_proof(&self) -> Option<String> {
        let proof = self.proof()?;
        let mut out = String::new();
        for c in proof {
            let id = if c.is_empty() { 0 } else { c.id };
            let mut annotation = c.rule.to_string();
            for p in &c.parents {
                annotation.push_str(&format!(", {p}"));
            }
            out.push_str(&format!("{id}. {} [{annotation}]\n", c.display(&self.syms)));
        }
        Some(out)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Passive,
    Active,
    Deleted,
}

/// `x ≐ true ∨ x ≐ false`.
pub fn bool_domain_clause() -> Vec<Literal> {
    let x = FoTerm::Var(0, BOOL);
    vec![Literal::eq(x.clone(), FoTerm::constant(TRUE)), Literal::eq(x, FoTerm::constant(FALSE))]
}

/// `true ≉ false`.
pub fn bool_distinct_clause() -> Vec<Literal> {
    vec![Literal::neq(FoTerm::constant(TRUE), FoTerm::constant(FALSE))]
}

/// Adds the boolean theory the mode asks for: clause (4) and `true ≉ false`
/// in axiom mode, `true ≉ false` alone in rule mode.
pub fn add_bool_theory(set: &mut ClauseSet, mode: BoolMode, theory: BoolTheory) {
    if theory == BoolTheory::Auto && !set.has_bool_terms() {
        return;
    }
    if mode == BoolMode::Axiom {
        set.clauses.push(InputClause { origin: BOOL_DOMAIN_AXIOM.into(), literals: bool_domain_clause() });
    }
    set.clauses.push(InputClause { origin: BOOL_DISTINCT_AXIOM.into(), literals: bool_distinct_clause() });
}

struct Saturation<'a> {
    config: &'a ProverConfig,
    syms: SymbolTable,
    kbo: Kbo,
    clauses: Vec<Clause>,
    status: Vec<Status>,
    active: Vec<usize>,
    passive: BinaryHeap<Reverse<(usize, usize)>>,
    stats: Stats,
    start: Instant,
}

enum Added {
    Kept(usize),
    Dropped,
}

impl Saturation<'_> {
    fn subsumed(&self, lits: &[Literal]) -> bool {
        self.clauses
            .iter()
            .zip(&self.status)
            .any(|(c, s)| *s != Status::Deleted && subsumes(&c.literals, lits, &self.syms))
    }

    fn add(&mut self, lits: Vec<Literal>, rule: Rule, parents: Vec<usize>) -> Added {
        let lits = normalize(lits);
        if is_tautology(&lits) || self.subsumed(&lits) {
            return Added::Dropped;
        }
        let id = self.clauses.len() + 1;
        let clause = Clause { id, literals: lits, rule, parents };
        self.passive.push(Reverse((clause.weight(), id)));
        self.clauses.push(clause);
        self.status.push(Status::Passive);
        Added::Kept(id)
    }

    fn timed_out(&self) -> bool {
        self.start.elapsed() >= Duration::from_secs_f64(self.config.max_seconds)
    }

    fn generate(&self, given: usize) -> Vec<(Conclusion, Vec<usize>)> {
        let inf = Inferences { syms: &self.syms, kbo: &self.kbo };
        let g = &self.clauses[given - 1];
        let offset = g.var_count();
        let mut out: Vec<(Conclusion, Vec<usize>)> = Vec::new();
        let mut push = |cs: Vec<Conclusion>, parents: Vec<usize>| out.extend(cs.into_iter().map(|c| (c, parents.clone())));
        for &other in &self.active {
            let o = &self.clauses[other - 1];
            let shifted: Vec<Literal> = o.literals.iter().map(|l| l.map_terms(&mut |t| t.shift_vars(offset))).collect();
            let parents = if other == given { vec![given] } else { vec![given, other] };
            push(inf.paramodulation(&g.literals, &shifted), parents.clone());
            push(inf.resolution(&g.literals, &shifted), parents.clone());
            if other != given {
                let rev = vec![other, given];
                push(inf.paramodulation(&shifted, &g.literals), rev.clone());
                push(inf.resolution(&shifted, &g.literals), rev);
            }
        }
        push(inf.equality_resolution(&g.literals), vec![given]);
        push(inf.factoring(&g.literals), vec![given]);
        push(inf.equality_factoring(&g.literals), vec![given]);
        if self.config.bool_mode == BoolMode::Rule {
            push(inf.fool_paramodulation(&g.literals), vec![given]);
        }
        out
    }

    fn run(&mut self) -> Verdict {
        while let Some(Reverse((_, given))) = self.passive.pop() {
            if self.status[given - 1] != Status::Passive {
                continue;
            }
            if self.timed_out() {
                return Verdict::LimitHit(Limit::Time);
            }
            let lits = &self.clauses[given - 1].literals;
            let redundant = self
                .active
                .iter()
                .any(|&a| subsumes(&self.clauses[a - 1].literals, lits, &self.syms));
            if redundant {
                self.status[given - 1] = Status::Deleted;
                continue;
            }
            self.status[given - 1] = Status::Active;
            self.active.push(given);
            self.stats.given += 1;
            for (n, (conclusion, parents)) in self.generate(given).into_iter().enumerate() {
                self.stats.generated += 1;
                *self.stats.per_rule.entry(conclusion.rule.name()).or_insert(0) += 1;
                if conclusion.literals.iter().any(Literal::is_var_equation) {
                    self.stats.var_equations += 1;
                }
                if let Added::Kept(id) = self.add(conclusion.literals, conclusion.rule, parents) {
                    self.stats.kept += 1;
                    if self.clauses[id - 1].is_empty() {
                        return Verdict::Refuted(id);
                    }
                    if self.stats.kept >= self.config.max_clauses {
                        return Verdict::LimitHit(Limit::Clauses);
                    }
                }
                if n % 256 == 255 && self.timed_out() {
                    return Verdict::LimitHit(Limit::Time);
                }
            }
        }
        Verdict::Saturated
    }
}

/// Runs the given-clause loop on `set` as is; the boolean theory must
/// already be present if wanted.
pub fn saturate(set: ClauseSet, config: &ProverConfig) -> Outcome {
    let kbo = Kbo::new(&set.syms);
    let mut sat = Saturation {
        config,
        syms: set.syms,
        kbo,
        clauses: Vec::new(),
        status: Vec::new(),
        active: Vec::new(),
        passive: BinaryHeap::new(),
        stats: Stats::default(),
        start: Instant::now(),
    };
    let mut verdict = None;
    for c in set.clauses {
        sat.stats.input += 1;
        if let Added::Kept(id) = sat.add(c.literals, Rule::Input(c.origin), Vec::new()) {
            if sat.clauses[id - 1].is_empty() && verdict.is_none() {
                verdict = Some(Verdict::Refuted(id));
            }
        }
    }
    let verdict = verdict.unwrap_or_else(|| sat.run());
    Outcome { verdict, stats: sat.stats, clauses: sat.clauses, syms: sat.syms }
}
