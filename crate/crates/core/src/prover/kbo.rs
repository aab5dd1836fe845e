//! Knuth-Bendix ordering with unit weights.
//!
//! Precedence: `tt < false < true` below every other symbol, which are
//! ordered by arity and then by name. With unit weights this makes `true`
//! and `false` the two smallest ground terms of every sort.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::term::{FoTerm, SymId, SymbolTable, FALSE, TRUE, TT};

#[derive(Clone, Debug)]
pub struct Kbo {
    rank: Vec<u32>,
}

impl Kbo {
    pub fn new(syms: &SymbolTable) -> Kbo {
        let mut rest: Vec<(usize, &str, SymId)> = syms
            .symbols()
            .filter(|(id, _)| ![TT, FALSE, TRUE].contains(id))
            .map(|(id, info)| (info.arity(), info.name.as_str(), id))
            .collect();
        rest.sort();
        let mut rank = vec![0; syms.len()];
        rank[TT as usize] = 0;
        rank[FALSE as usize] = 1;
        rank[TRUE as usize] = 2;
        for (i, (_, _, id)) in rest.into_iter().enumerate() {
            rank[id as usize] = 3 + i as u32;
        }
        Kbo { rank }
    }

    fn rank(&self, f: SymId) -> u32 {
        // Symbols introduced after construction rank above everything else.
        self.rank.get(f as usize).copied().unwrap_or(self.rank.len() as u32 + f)
    }

    /// `Some(ordering)` if `s` and `t` are comparable, `None` otherwise.
    pub fn compare(&self, s: &FoTerm, t: &FoTerm) -> Option<Ordering> {
        if s == t {
            return Some(Ordering::Equal);
        }
        let mut balance: HashMap<u32, i64> = HashMap::new();
        let ws = weigh(s, 1, &mut balance);
        let wt = weigh(t, -1, &mut balance);
        let s_covers = balance.values().all(|&n| n >= 0);
        let t_covers = balance.values().all(|&n| n <= 0);
        let greater = || s_covers.then_some(Ordering::Greater);
        let less = || t_covers.then_some(Ordering::Less);
        match ws.cmp(&wt) {
            Ordering::Greater => greater(),
            Ordering::Less => less(),
            Ordering::Equal => match (s, t) {
                (FoTerm::App(f, fa), FoTerm::App(g, ga)) => {
                    if f != g {
                        match self.rank(*f).cmp(&self.rank(*g)) {
                            Ordering::Greater => greater(),
                            _ => less(),
                        }
                    } else {
                        let (a, b) = fa.iter().zip(ga).find(|(a, b)| a != b)?;
                        match self.compare(a, b)? {
                            Ordering::Greater => greater(),
                            Ordering::Less => less(),
                            Ordering::Equal => unreachable!("distinct arguments compared equal"),
                        }
                    }
                }
                _ => None,
            },
        }
    }

    pub fn greater(&self, s: &FoTerm, t: &FoTerm) -> bool {
        self.compare(s, t) == Some(Ordering::Greater)
    }

    /// `s ⪰ t`.
    pub fn greater_eq(&self, s: &FoTerm, t: &FoTerm) -> bool {
        matches!(self.compare(s, t), Some(Ordering::Greater | Ordering::Equal))
    }

    /// Strict multiset extension of the ordering.
    pub fn multiset_greater(&self, m: &[&FoTerm], n: &[&FoTerm]) -> bool {
        let mut m: Vec<&FoTerm> = m.to_vec();
        let mut rest_n = Vec::new();
        for y in n {
            match m.iter().position(|x| x == y) {
                Some(i) => {
                    m.swap_remove(i);
                }
                None => rest_n.push(*y),
            }
        }
        !m.is_empty() && rest_n.iter().all(|y| m.iter().any(|x| self.greater(x, y)))
    }
}

fn weigh(t: &FoTerm, sign: i64, balance: &mut HashMap<u32, i64>) -> u64 {
    match t {
        FoTerm::Var(x, _) => {
            *balance.entry(*x).or_insert(0) += sign;
            1
        }
        FoTerm::App(_, args) => 1 + args.iter().map(|a| weigh(a, sign, balance)).sum::<u64>(),
    }
}
