use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{
    alternating, cyclic, dicyclic, dihedral, direct_product, frobenius_field, symmetric,
    DirectProductGroup, GroupRef, MAX_PERMUTATION_DEGREE,
};
use crate::error::{Error, Result};
use crate::numtheory::factorize;

/// A named group construction. Parses from and displays as the group's
/// descriptor, e.g. `frobenius(2,3) x cyclic(3)`; `name:args` is accepted as
/// an alternative to `name(args)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Direct product of cyclic groups of the listed prime-power orders.
    Abelian(Vec<usize>),
    Dihedral(usize),
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Frobenius(u32, u32),
    Product(Vec<GroupSpec>),
}

fn factorial(d: usize) -> usize {
    (1..=d).product()
}

impl GroupSpec {
    /// Group order, computed without building the group.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Abelian(qs) => qs.iter().try_fold(1usize, |acc, &q| acc.checked_mul(q)),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
            GroupSpec::Dicyclic(n) => n.checked_mul(4),
            GroupSpec::Symmetric(d) => (*d <= 20).then(|| factorial(*d)),
            GroupSpec::Alternating(d) => (*d <= 20).then(|| (factorial(*d) / 2).max(1)),
            GroupSpec::Frobenius(p, r) => {
                let q = (*p as usize).checked_pow(*r)?;
                q.checked_mul(q - 1)
            }
            GroupSpec::Product(fs) => fs
                .iter()
                .try_fold(1usize, |acc, f| acc.checked_mul(f.order()?)),
        }
    }

    pub fn build(&self) -> Result<GroupRef> {
        match self {
            GroupSpec::Cyclic(n) => cyclic(*n),
            GroupSpec::Abelian(qs) => {
                for &q in qs {
                    if factorize(q as u64)?.factors().len() != 1 {
                        return Err(Error::InvalidArgument(format!(
                            "abelian factor {q} is not a prime power"
                        )));
                    }
                }
                if qs.is_empty() {
                    return cyclic(1);
                }
                let factors = qs.iter().map(|&q| cyclic(q)).collect::<Result<Vec<_>>>()?;
                Ok(Arc::new(DirectProductGroup::with_label(factors, self.to_string())?))
            }
            GroupSpec::Dihedral(n) => dihedral(*n),
            GroupSpec::Dicyclic(n) => dicyclic(*n),
            GroupSpec::Symmetric(d) => symmetric(*d),
            GroupSpec::Alternating(d) => alternating(*d),
            GroupSpec::Frobenius(p, r) => frobenius_field(*p, *r),
            GroupSpec::Product(fs) => {
                if fs.is_empty() {
                    return Err(Error::InvalidArgument("empty product".into()));
                }
                direct_product(fs.iter().map(|f| f.build()).collect::<Result<Vec<_>>>()?)
            }
        }
    }

    /// Whether the construction is known to be abelian without building it.
    pub fn is_abelian_family(&self) -> bool {
        match self {
            GroupSpec::Cyclic(_) | GroupSpec::Abelian(_) => true,
            GroupSpec::Dihedral(n) => *n <= 2,
            GroupSpec::Dicyclic(n) => *n <= 1,
            GroupSpec::Symmetric(d) => *d <= 2,
            GroupSpec::Alternating(d) => *d <= 3,
            GroupSpec::Frobenius(p, r) => *p == 2 && *r == 1,
            GroupSpec::Product(fs) => fs.iter().all(|f| f.is_abelian_family()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Abelian(qs) => {
                let parts: Vec<String> = qs.iter().map(|q| q.to_string()).collect();
                write!(f, "abelian({})", parts.join(","))
            }
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic({n})"),
            GroupSpec::Symmetric(d) => write!(f, "symmetric({d})"),
            GroupSpec::Alternating(d) => write!(f, "alternating({d})"),
            GroupSpec::Frobenius(p, r) => write!(f, "frobenius({p},{r})"),
            GroupSpec::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

fn parse_args(name: &str, args: &str) -> Result<Vec<usize>> {
    args.split(',')
        .map(|a| {
            a.trim().parse::<usize>().map_err(|_| {
                Error::InvalidArgument(format!("bad argument {a:?} for {name}"))
            })
        })
        .collect()
}

fn parse_factor(s: &str) -> Result<GroupSpec> {
    let s = s.trim();
    let (name, args) = if let Some(open) = s.find('(') {
        let close = s
            .strip_suffix(')')
            .ok_or_else(|| Error::InvalidArgument(format!("missing ')' in {s:?}")))?;
        (&s[..open], &close[open + 1..])
    } else if let Some((name, args)) = s.split_once(':') {
        (name, args)
    } else {
        return Err(Error::InvalidArgument(format!(
            "expected name(args) or name:args, found {s:?}"
        )));
    };
    let name = name.trim();
    let args = parse_args(name, args)?;
    let one = |args: &[usize]| -> Result<usize> {
        match args {
            [a] => Ok(*a),
            _ => Err(Error::InvalidArgument(format!("{name} takes one argument"))),
        }
    };
    let spec = match name {
        "cyclic" | "C" => GroupSpec::Cyclic(one(&args)?),
        "abelian" => GroupSpec::Abelian(args),
        "dihedral" | "D" => GroupSpec::Dihedral(one(&args)?),
        "dicyclic" | "Dic" => GroupSpec::Dicyclic(one(&args)?),
        "symmetric" | "S" => {
            let d = one(&args)?;
            if d > MAX_PERMUTATION_DEGREE {
                return Err(Error::InvalidArgument(format!("degree {d} too large")));
            }
            GroupSpec::Symmetric(d)
        }
        "alternating" | "A" => {
            let d = one(&args)?;
            if d > MAX_PERMUTATION_DEGREE {
                return Err(Error::InvalidArgument(format!("degree {d} too large")));
            }
            GroupSpec::Alternating(d)
        }
        "frobenius" => match args[..] {
            [p, r] => GroupSpec::Frobenius(p as u32, r as u32),
            _ => return Err(Error::InvalidArgument("frobenius takes p,r".into())),
        },
        "quaternion8" | "Q8" => GroupSpec::Dicyclic(2),
        other => return Err(Error::InvalidArgument(format!("unknown group family {other:?}"))),
    };
    Ok(spec)
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "quaternion8" || s == "Q8" {
            return Ok(GroupSpec::Dicyclic(2));
        }
        let factors = s
            .split(['*', 'x'])
            .map(parse_factor)
            .collect::<Result<Vec<_>>>()?;
        if factors.len() == 1 {
            Ok(factors.into_iter().next().unwrap())
        } else {
            Ok(GroupSpec::Product(factors))
        }
    }
}
