use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::canonical::{CanonicalPParams, Epsilon};
use crate::group::presentation::MetacyclicPresentation;

/// A group literal: `mc(m,n,s,r)` or `mcp(p,mu,nu,sigma,rho,eps)`.
///
/// Parsing checks only syntax and ranges; consistency and validity are left
/// to the caller so that invalid inputs can be diagnosed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupLiteral {
    Presentation { m: u64, n: u64, s: u64, r: u64 },
    Canonical(CanonicalPParams),
}

impl GroupLiteral {
    pub fn parse(text: &str) -> Result<Self> {
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let start = text.len() - text.trim_start().len();
        let body = text.trim();
        let open = body
            .find('(')
            .ok_or_else(|| err(start + body.len(), "expected '('"))?;
        let head = body[..open].trim();
        if !body.ends_with(')') {
            return Err(err(start + body.len(), "expected ')'"));
        }
        let inner = &body[open + 1..body.len() - 1];
        let mut args = Vec::new();
        let mut offset = start + open + 1;
        for piece in inner.split(',') {
            let lead = piece.len() - piece.trim_start().len();
            let token = piece.trim();
            let value = i64::from_str(token)
                .map_err(|_| err(offset + lead, &format!("expected an integer, found {token:?}")))?;
            args.push((value, offset + lead));
            offset += piece.len() + 1;
        }
        let nonneg = |(v, pos): (i64, usize)| -> Result<u64> {
            u64::try_from(v).map_err(|_| err(pos, "expected a non-negative integer"))
        };
        let small = |(v, pos): (i64, usize)| -> Result<u32> {
            u32::try_from(v).map_err(|_| err(pos, "expected a small non-negative integer"))
        };
        match head {
            "mc" => {
                if args.len() != 4 {
                    return Err(err(start, "mc takes 4 arguments (m,n,s,r)"));
                }
                Ok(GroupLiteral::Presentation {
                    m: nonneg(args[0])?,
                    n: nonneg(args[1])?,
                    s: nonneg(args[2])?,
                    r: nonneg(args[3])?,
                })
            }
            "mcp" => {
                if args.len() != 6 {
                    return Err(err(start, "mcp takes 6 arguments (p,mu,nu,sigma,rho,eps)"));
                }
                let epsilon = match args[5].0 {
                    1 => Epsilon::Plus,
                    -1 => Epsilon::Minus,
                    _ => return Err(err(args[5].1, "eps must be 1 or -1")),
                };
                Ok(GroupLiteral::Canonical(CanonicalPParams::new(
                    nonneg(args[0])?,
                    small(args[1])?,
                    small(args[2])?,
                    small(args[3])?,
                    small(args[4])?,
                    epsilon,
                )))
            }
            _ => Err(err(start, "expected 'mc' or 'mcp'")),
        }
    }

    /// The presentation this literal describes, if consistent. Canonical
    /// tuples must also be valid.
    pub fn presentation(&self) -> Result<MetacyclicPresentation> {
        match *self {
            GroupLiteral::Presentation { m, n, s, r } => MetacyclicPresentation::new(m, n, s, r),
            GroupLiteral::Canonical(t) => t.presentation(),
        }
    }
}

impl FromStr for GroupLiteral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupLiteral::parse(s)
    }
}

impl fmt::Display for GroupLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLiteral::Presentation { m, n, s, r } => write!(f, "mc({m},{n},{s},{r})"),
            GroupLiteral::Canonical(t) => write!(f, "{t}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        assert_eq!(
            GroupLiteral::parse("mc(3,2,0,2)").unwrap(),
            GroupLiteral::Presentation {
                m: 3,
                n: 2,
                s: 0,
                r: 2
            }
        );
        let lit = GroupLiteral::parse(" mcp(2, 2, 1, 2, 2, -1) ").unwrap();
        assert_eq!(
            lit,
            GroupLiteral::Canonical(CanonicalPParams::new(2, 2, 1, 2, 2, Epsilon::Minus))
        );
        assert_eq!(lit.to_string(), "mcp(2,2,1,2,2,-1)");
    }

    #[test]
    fn reports_positions() {
        match GroupLiteral::parse("mc(3,x,0,2)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match GroupLiteral::parse("mcp(2,2,1,2,2,0)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 14),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            GroupLiteral::parse("foo(1)"),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(GroupLiteral::parse("mc(1,2"), Err(Error::Parse { .. })));
        assert!(matches!(
            GroupLiteral::parse("mc(-1,2,0,0)"),
            Err(Error::Parse { pos: 3, .. })
        ));
    }
}
