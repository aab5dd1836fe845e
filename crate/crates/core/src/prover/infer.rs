//! Generating inferences. Premises are literal slices with disjoint
//! variables; eligibility is checked after applying the unifier.

use super::clause::{is_eligible, Literal, Rule};
use super::kbo::Kbo;
use super::term::{mgu, FoTerm, Subst, SymbolTable, BOOL, FALSE, TRUE};

pub struct Conclusion {
    pub rule: Rule,
    pub literals: Vec<Literal>,
}

pub struct Inferences<'a> {
    pub syms: &'a SymbolTable,
    pub kbo: &'a Kbo,
}

fn apply_all(lits: &[Literal], s: &Subst) -> Vec<Literal> {
    lits.iter().map(|l| l.apply(s)).collect()
}

fn without<'a>(lits: &'a [Literal], skip: &'a [usize]) -> impl Iterator<Item = &'a Literal> {
    lits.iter().enumerate().filter(move |(i, _)| !skip.contains(i)).map(|(_, l)| l)
}

/// The two sides of a literal that may be rewritten, with their partners.
/// For a predicate literal only the atom, and never at its root.
fn rewritable_sides(l: &Literal) -> Vec<(bool, &FoTerm, &FoTerm)> {
    if l.is_predicate() {
        vec![(true, &l.lhs, &l.rhs)]
    } else {
        vec![(true, &l.lhs, &l.rhs), (false, &l.rhs, &l.lhs)]
    }
}

fn with_side(l: &Literal, left: bool, side: FoTerm) -> Literal {
    if left {
        Literal { lhs: side, ..l.clone() }
    } else {
        Literal { rhs: side, ..l.clone() }
    }
}

impl Inferences<'_> {
    /// Ordered paramodulation from a positive equation of `from` into a
    /// non-variable subterm of a literal of `into`.
    pub fn paramodulation(&self, from: &[Literal], into: &[Literal]) -> Vec<Conclusion> {
        let mut out = Vec::new();
        for (i, eqn) in from.iter().enumerate() {
            if !eqn.positive || eqn.is_predicate() {
                continue;
            }
            for (l, r) in [(&eqn.lhs, &eqn.rhs), (&eqn.rhs, &eqn.lhs)] {
                for (j, target) in into.iter().enumerate() {
                    for (left, s, t) in rewritable_sides(target) {
                        for pos in s.nonvar_positions() {
                            if target.is_predicate() && pos.is_empty() {
                                continue;
                            }
                            let Some(theta) = mgu(l, s.subterm(&pos), self.syms) else { continue };
                            let (lt, rt) = (theta.apply(l), theta.apply(r));
                            if self.kbo.greater_eq(&rt, &lt) {
                                continue;
                            }
                            if !target.is_predicate() && self.kbo.greater_eq(&theta.apply(t), &theta.apply(s)) {
                                continue;
                            }
                            let from_t = apply_all(from, &theta);
                            let into_t = apply_all(into, &theta);
                            if !is_eligible(self.kbo, &from_t, i) || !is_eligible(self.kbo, &into_t, j) {
                                continue;
                            }
                            let rewritten = with_side(target, left, s.replace_at(&pos, r.clone())).apply(&theta);
                            let mut lits: Vec<Literal> = without(&from_t, &[i]).cloned().collect();
                            lits.extend(without(&into_t, &[j]).cloned());
                            lits.push(rewritten);
                            out.push(Conclusion { rule: Rule::Paramodulation, literals: lits });
                        }
                    }
                }
            }
        }
        out
    }

    /// Binary resolution between a positive atom of `pos` and a negative
    /// atom of `neg`.
    pub fn resolution(&self, pos: &[Literal], neg: &[Literal]) -> Vec<Conclusion> {
        let mut out = Vec::new();
        for (i, a) in pos.iter().enumerate() {
            if !a.positive || !a.is_predicate() {
                continue;
            }
            for (j, b) in neg.iter().enumerate() {
                if b.positive || !b.is_predicate() {
                    continue;
                }
                let Some(theta) = mgu(&a.lhs, &b.lhs, self.syms) else { continue };
                let pt = apply_all(pos, &theta);
                let nt = apply_all(neg, &theta);
                if !is_eligible(self.kbo, &pt, i) || !is_eligible(self.kbo, &nt, j) {
                    continue;
                }
                let mut lits: Vec<Literal> = without(&pt, &[i]).cloned().collect();
                lits.extend(without(&nt, &[j]).cloned());
                out.push(Conclusion { rule: Rule::Resolution, literals: lits });
            }
        }
        out
    }

    pub fn equality_resolution(&self, c: &[Literal]) -> Vec<Conclusion> {
        let mut out = Vec::new();
        for (i, l) in c.iter().enumerate() {
            if l.positive || l.is_predicate() {
                continue;
            }
            let Some(theta) = mgu(&l.lhs, &l.rhs, self.syms) else { continue };
            let ct = apply_all(c, &theta);
            if is_eligible(self.kbo, &ct, i) {
                out.push(Conclusion { rule: Rule::EqualityResolution, literals: without(&ct, &[i]).cloned().collect() });
            }
        }
        out
    }

    /// Positive factoring of two unifiable positive literals.
    pub fn factoring(&self, c: &[Literal]) -> Vec<Conclusion> {
        let mut out = Vec::new();
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let (a, b) = (&c[i], &c[j]);
                if !a.positive || !b.positive || a.is_predicate() != b.is_predicate() {
                    continue;
                }
                let pairs: Vec<(&FoTerm, &FoTerm)> =
                    if a.is_predicate() { vec![(&b.lhs, &b.rhs)] } else { vec![(&b.lhs, &b.rhs), (&b.rhs, &b.lhs)] };
                for (bl, br) in pairs {
                    let mut theta = Subst::new();
                    if !(theta.unify(&a.lhs, bl, self.syms) && theta.unify(&a.rhs, br, self.syms)) {
                        continue;
                    }
                    let theta = theta.normalized();
                    let ct = apply_all(c, &theta);
                    if is_eligible(self.kbo, &ct, i) || is_eligible(self.kbo, &ct, j) {
                        out.push(Conclusion { rule: Rule::Factoring, literals: without(&ct, &[j]).cloned().collect() });
                    }
                }
            }
        }
        out
    }

    /// From `C ∨ s' ≐ t' ∨ s ≐ t` with `σ = mgu(s, s')` and `tσ ⋡ sσ`, derive
    /// `(C ∨ t ≉ t' ∨ s' ≐ t')σ`.
    pub fn equality_factoring(&self, c: &[Literal]) -> Vec<Conclusion> {
        let mut out = Vec::new();
        for (i, a) in c.iter().enumerate() {
            if !a.positive || a.is_predicate() {
                continue;
            }
            for (j, b) in c.iter().enumerate() {
                if i == j || !b.positive || b.is_predicate() {
                    continue;
                }
                for (s, t) in [(&a.lhs, &a.rhs), (&a.rhs, &a.lhs)] {
                    for (s2, t2) in [(&b.lhs, &b.rhs), (&b.rhs, &b.lhs)] {
                        let Some(theta) = mgu(s, s2, self.syms) else { continue };
                        if self.kbo.greater_eq(&theta.apply(t), &theta.apply(s)) {
                            continue;
                        }
                        let ct = apply_all(c, &theta);
                        if !is_eligible(self.kbo, &ct, i) {
                            continue;
                        }
                        let mut lits: Vec<Literal> = without(&ct, &[i]).cloned().collect();
                        lits.push(Literal::neq(theta.apply(t), theta.apply(t2)));
                        out.push(Conclusion { rule: Rule::EqualityFactoring, literals: lits });
                    }
                }
            }
        }
        out
    }

    /// For each non-variable boolean subterm `s ∉ {true, false}` of an
    /// eligible literal, derive `C[true] ∨ s ≐ false`.
    pub fn fool_paramodulation(&self, c: &[Literal]) -> Vec<Conclusion> {
        let mut out = Vec::new();
        for (i, lit) in c.iter().enumerate() {
            if !is_eligible(self.kbo, c, i) {
                continue;
            }
            for (left, side, _) in rewritable_sides(lit) {
                for pos in side.nonvar_positions() {
                    let s = side.subterm(&pos);
                    if self.syms.sort_of(s) != BOOL || s.is_const(TRUE) || s.is_const(FALSE) {
                        continue;
                    }
                    let mut lits = c.to_vec();
                    lits[i] = with_side(lit, left, side.replace_at(&pos, FoTerm::constant(TRUE)));
                    lits.push(Literal::eq(s.clone(), FoTerm::constant(FALSE)));
                    out.push(Conclusion { rule: Rule::FoolParamodulation, literals: lits });
                }
            }
        }
        out
    }
}
