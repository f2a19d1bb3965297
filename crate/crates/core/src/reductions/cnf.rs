//! CNF formulas in the standard DIMACS clause-list format, plus an
//! exhaustive satisfiability referee used to compute expected answers for
//! the generated instances.

use crate::error::{Error, Result};

/// A CNF formula over variables `1..=num_vars`; literals are signed indices.
/// Clauses may repeat literals (gadgets rely on clauses like `(x | x | x)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for clause in &clauses {
            if clause.is_empty() {
                return Err(Error::input("empty clause"));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::input(format!(
                        "literal {lit} references an undeclared variable (declared {num_vars})"
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn is_three_cnf(&self) -> bool {
        self.clauses.iter().all(|c| c.len() == 3)
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = assignment[lit.unsigned_abs() as usize - 1];
                if lit > 0 {
                    value
                } else {
                    !value
                }
            })
        })
    }
}

/// Parses the `p cnf <vars> <clauses>` clause-list format. Comment lines
/// start with 'c'; clauses are zero-terminated and may span lines.
pub fn parse_cnf(text: &str) -> Result<CnfFormula> {
    let mut num_vars: Option<usize> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        last_line = lineno;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if num_vars.is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "duplicate header".to_string(),
                });
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("malformed header '{line}'"),
                });
            }
            let vars: usize = fields[2].parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad variable count '{}'", fields[2]),
            })?;
            let _count: usize = fields[3].parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad clause count '{}'", fields[3]),
            })?;
            num_vars = Some(vars);
            continue;
        }
        let Some(vars) = num_vars else {
            return Err(Error::Parse {
                line: lineno,
                msg: "clause before 'p cnf' header".to_string(),
            });
        };
        for token in line.split_whitespace() {
            let lit: i32 = token.parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad literal '{token}'"),
            })?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "empty clause".to_string(),
                    });
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > vars {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("literal {lit} exceeds declared variable count {vars}"),
                    });
                }
                current.push(lit);
            }
        }
    }
    let Some(vars) = num_vars else {
        return Err(Error::Parse {
            line: last_line,
            msg: "missing 'p cnf' header".to_string(),
        });
    };
    if !current.is_empty() {
        return Err(Error::Parse {
            line: last_line,
            msg: "unterminated clause at end of input".to_string(),
        });
    }
    CnfFormula::new(vars, clauses)
}

const MAX_SAT_VARS: usize = 26;

/// Exhaustive SAT search; returns the lexicographically smallest satisfying
/// assignment (variable 1 most significant, false < true) or `None`.
pub fn sat_brute(f: &CnfFormula) -> Result<Option<Vec<bool>>> {
    let n = f.num_vars();
    if n > MAX_SAT_VARS {
        return Err(Error::size(format!(
            "brute-force SAT limited to {MAX_SAT_VARS} variables, got {n}"
        )));
    }
    for code in 0..1u64 << n {
        let assignment: Vec<bool> = (0..n).map(|j| code >> (n - 1 - j) & 1 == 1).collect();
        if f.satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}
