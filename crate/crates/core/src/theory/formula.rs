use std::collections::BTreeSet;
use std::fmt;

/// Quantifier-free formulas over predicate symbols applied to variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Pred { name: String, args: Vec<String> },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn pred<S: AsRef<str>>(name: &str, args: &[S]) -> Formula {
        Formula::Pred {
            name: name.to_string(),
            args: args.iter().map(|a| a.as_ref().to_string()).collect(),
        }
    }

    pub fn negate(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Pred { args, .. } => out.extend(args.iter().cloned()),
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// For every conjunction, in pre-order, the number of variables its two
    /// sides have in common.
    pub fn and_sharing(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_sharing(&mut out);
        out
    }

    fn collect_sharing(&self, out: &mut Vec<usize>) {
        match self {
            Formula::Pred { .. } => {}
            Formula::Not(f) => f.collect_sharing(out),
            Formula::And(l, r) => {
                out.push(l.vars().intersection(&r.vars()).count());
                l.collect_sharing(out);
                r.collect_sharing(out);
            }
            Formula::Or(l, r) => {
                l.collect_sharing(out);
                r.collect_sharing(out);
            }
        }
    }

    /// Every conjunction shares at most one variable, so zero-delay
    /// intersection compiles it exactly.
    pub fn single_shared_tape(&self) -> bool {
        self.and_sharing().iter().all(|&k| k <= 1)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Pred { name, args } => write!(f, "({name} {})", args.join(" ")),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(l, r) => write!(f, "(and {l} {r})"),
            Formula::Or(l, r) => write!(f, "(or {l} {r})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharing_counts() {
        let f = Formula::pred("len", &["Y", "M"])
            .and(Formula::pred("rest", &["X", "Y"]))
            .and(Formula::pred("len", &["X", "N"]).negate());
        assert_eq!(f.and_sharing(), vec![1, 1]);
        assert!(f.single_shared_tape());
        assert_eq!(
            f.to_string(),
            "(and (and (len Y M) (rest X Y)) (not (len X N)))"
        );
        let g = f.and(Formula::pred("dec", &["M", "N"]));
        assert_eq!(g.and_sharing()[0], 2);
        assert!(!g.single_shared_tape());
    }
}
