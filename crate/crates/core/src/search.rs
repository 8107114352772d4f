//! Backtracking search over arc labelings with propagation through
//! three-variable constraints. Flows and colorings both use it.

use crate::error::{Error, Result};

pub(crate) const UNSET: usize = usize::MAX;

pub(crate) enum Step {
    Nothing,
    Conflict,
    Force(usize, usize),
}

pub(crate) trait Rules {
    fn domain(&self) -> usize;
    fn constraint_count(&self) -> usize;
    fn vars(&self, ci: usize) -> [usize; 3];
    /// Inspects constraint `ci` under the partial labeling `vals`.
    fn step(&self, ci: usize, vals: &[usize]) -> Step;
}

struct Solver<'a, R: Rules> {
    rules: &'a R,
    vals: Vec<usize>,
    trail: Vec<usize>,
    watch: Vec<Vec<usize>>,
    budget: u64,
    spent: u64,
    out: Vec<Vec<usize>>,
}

impl<R: Rules> Solver<'_, R> {
    fn assign(&mut self, var: usize, val: usize) -> bool {
        self.vals[var] = val;
        self.trail.push(var);
        let mut queue: Vec<usize> = self.watch[var].clone();
        while let Some(ci) = queue.pop() {
            loop {
                match self.rules.step(ci, &self.vals) {
                    Step::Nothing => break,
                    Step::Conflict => return false,
                    Step::Force(x, v) => {
                        debug_assert_eq!(self.vals[x], UNSET);
                        self.vals[x] = v;
                        self.trail.push(x);
                        queue.extend(self.watch[x].iter().copied().filter(|&c| c != ci));
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("non-empty trail");
            self.vals[x] = UNSET;
        }
    }

    fn dfs(&mut self, from: usize) -> Result<()> {
        let Some(var) = (from..self.vals.len()).find(|&x| self.vals[x] == UNSET) else {
            self.out.push(self.vals.clone());
            return Ok(());
        };
        for val in 0..self.rules.domain() {
            self.spent += 1;
            if self.spent > self.budget {
                return Err(Error::Budget(self.budget));
            }
            let mark = self.trail.len();
            if self.assign(var, val) {
                self.dfs(var + 1)?;
            }
            self.undo_to(mark);
        }
        Ok(())
    }
}

/// All complete labelings of `n` variables satisfying every constraint and
/// extending `fixed`. Each tried branch value counts against `budget`.
pub(crate) fn solve<R: Rules>(rules: &R, n: usize, fixed: &[(usize, usize)], budget: u64) -> Result<Vec<Vec<usize>>> {
    let mut watch = vec![Vec::new(); n];
    for ci in 0..rules.constraint_count() {
        let mut vs = rules.vars(ci);
        vs.sort_unstable();
        for (k, &v) in vs.iter().enumerate() {
            if k == 0 || vs[k - 1] != v {
                watch[v].push(ci);
            }
        }
    }
    let mut s = Solver { rules, vals: vec![UNSET; n], trail: Vec::new(), watch, budget, spent: 0, out: Vec::new() };
    for &(x, v) in fixed {
        if s.vals[x] == UNSET {
            if !s.assign(x, v) {
                return Ok(Vec::new());
            }
        } else if s.vals[x] != v {
            return Ok(Vec::new());
        }
    }
    s.dfs(0)?;
    Ok(s.out)
}
