use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub variable: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(variable: usize) -> Self {
        Literal { variable, negated: false }
    }

    pub fn neg(variable: usize) -> Self {
        Literal { variable, negated: true }
    }

    pub fn flipped(self) -> Self {
        Literal {
            variable: self.variable,
            negated: !self.negated,
        }
    }

    pub fn value(self, assignment: &[bool]) -> bool {
        assignment[self.variable] ^ self.negated
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub literals: [Literal; 3],
    pub rhs: bool,
}

impl Equation {
    pub fn is_satisfied(&self, assignment: &[bool]) -> bool {
        let parity = self.literals.iter().fold(false, |acc, l| acc ^ l.value(assignment));
        parity == self.rhs
    }
}

/// System of mod-2 linear equations, three literals each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lin2System {
    variable_count: usize,
    equations: Vec<Equation>,
}

impl Lin2System {
    pub fn new(variable_count: usize, equations: Vec<Equation>) -> Result<Self> {
        for (i, eq) in equations.iter().enumerate() {
            if let Some(l) = eq.literals.iter().find(|l| l.variable >= variable_count) {
                return Err(Error::invalid(format!(
                    "equation {i} uses variable {} but only {variable_count} exist",
                    l.variable
                )));
            }
        }
        Ok(Lin2System {
            variable_count,
            equations,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn violated(&self, assignment: &[bool]) -> usize {
        self.equations.iter().filter(|e| !e.is_satisfied(assignment)).count()
    }
}
