//! Textual group specifications such as `Q(4)`, `PQ(5,1,2,2,2)` or
//! `X(C(2),S(3))`.
//!
//! ```text
//! spec := C(n) | Q(n) | M(m,n,r) | PQ(p,a,q,b,r) | S(n) | D(n)
//!       | A(f1,f2,...) | X(spec,spec) | Sub(spec,k)
//! ```
//!
//! `Q(n)` has order `2^n`, `D(n)` has order `2n`, and `Sub(spec,k)` is the
//! `k`-th subgroup of `spec` in lattice order, relabelled as a group.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constructors::{self, MetacyclicParams, SemidirectPQParams};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    Cyclic(u64),
    Quaternion(u32),
    Metacyclic {
        m: u64,
        n: u64,
        r: u64,
    },
    SemidirectPq {
        p: u64,
        alpha: u32,
        q: u64,
        beta: u32,
        r: u64,
    },
    Symmetric(u32),
    Dihedral(u64),
    Abelian(Vec<u64>),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Sub(Box<GroupSpec>, usize),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => constructors::cyclic(*n),
            GroupSpec::Quaternion(n) => constructors::generalized_quaternion(*n),
            GroupSpec::Metacyclic { m, n, r } => {
                constructors::metacyclic(MetacyclicParams::new(*m, *n, *r))
            }
            GroupSpec::SemidirectPq {
                p,
                alpha,
                q,
                beta,
                r,
            } => constructors::semidirect_pq(SemidirectPQParams::new(*p, *alpha, *q, *beta, *r)),
            GroupSpec::Symmetric(n) => constructors::symmetric(*n),
            GroupSpec::Dihedral(n) => constructors::dihedral(*n),
            GroupSpec::Abelian(f) => constructors::abelian(f),
            GroupSpec::Product(a, b) => constructors::direct_product(&a.build()?, &b.build()?),
            GroupSpec::Sub(ambient, k) => {
                let g = ambient.build()?;
                let masks = g.lattice().masks();
                let mask = masks.get(*k).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "{ambient} has {} subgroups, index {k} is out of range",
                        masks.len()
                    ))
                })?;
                Ok(g.subgroup(*mask)?.to_group())
            }
        }
    }

    /// Group order, computed from the parameters where possible.
    pub fn order_hint(&self) -> Option<u64> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Quaternion(n) => 1u64.checked_shl(*n)?,
            GroupSpec::Metacyclic { m, n, .. } => m.checked_mul(*n)?,
            GroupSpec::SemidirectPq {
                p, alpha, q, beta, ..
            } => p.checked_pow(*alpha)?.checked_mul(q.checked_pow(*beta)?)?,
            GroupSpec::Symmetric(n) => (1..=*n as u64).try_fold(1u64, |a, b| a.checked_mul(b))?,
            GroupSpec::Dihedral(n) => n.checked_mul(2)?,
            GroupSpec::Abelian(f) => f.iter().try_fold(1u64, |a, &b| a.checked_mul(b))?,
            GroupSpec::Product(a, b) => a.order_hint()?.checked_mul(b.order_hint()?)?,
            GroupSpec::Sub(..) => return None,
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C({n})"),
            GroupSpec::Quaternion(n) => write!(f, "Q({n})"),
            GroupSpec::Metacyclic { m, n, r } => write!(f, "M({m},{n},{r})"),
            GroupSpec::SemidirectPq {
                p,
                alpha,
                q,
                beta,
                r,
            } => write!(f, "PQ({p},{alpha},{q},{beta},{r})"),
            GroupSpec::Symmetric(n) => write!(f, "S({n})"),
            GroupSpec::Dihedral(n) => write!(f, "D({n})"),
            GroupSpec::Abelian(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                write!(f, "A({})", parts.join(","))
            }
            GroupSpec::Product(a, b) => write!(f, "X({a},{b})"),
            GroupSpec::Sub(a, k) => write!(f, "Sub({a},{k})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            input: s,
            bytes: s.as_bytes(),
            pos: 0,
        };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.error("trailing input"));
        }
        Ok(spec)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn peek_is(&mut self, c: u8) -> bool {
        self.skip_ws();
        self.bytes.get(self.pos) == Some(&c)
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a family name"));
        }
        Ok(&self.input[start..self.pos])
    }

    fn number<T: FromStr>(&mut self) -> Result<T> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a non-negative integer"));
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn numbers<T: FromStr>(&mut self, count: usize) -> Result<Vec<T>> {
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            if i > 0 {
                self.expect(b',')?;
            }
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let name = self.ident()?.to_string();
        self.expect(b'(')?;
        let spec = match name.as_str() {
            "C" => GroupSpec::Cyclic(self.number()?),
            "Q" => GroupSpec::Quaternion(self.number()?),
            "S" => GroupSpec::Symmetric(self.number()?),
            "D" => GroupSpec::Dihedral(self.number()?),
            "M" => {
                let v: Vec<u64> = self.numbers(3)?;
                GroupSpec::Metacyclic {
                    m: v[0],
                    n: v[1],
                    r: v[2],
                }
            }
            "PQ" => {
                let v: Vec<u64> = self.numbers(5)?;
                let exp =
                    |x: u64| u32::try_from(x).map_err(|_| self.error("exponent out of range"));
                GroupSpec::SemidirectPq {
                    p: v[0],
                    alpha: exp(v[1])?,
                    q: v[2],
                    beta: exp(v[3])?,
                    r: v[4],
                }
            }
            "A" => {
                let mut f = vec![self.number()?];
                while self.peek_is(b',') {
                    self.pos += 1;
                    f.push(self.number()?);
                }
                GroupSpec::Abelian(f)
            }
            "X" => {
                let a = self.spec()?;
                self.expect(b',')?;
                let b = self.spec()?;
                GroupSpec::Product(Box::new(a), Box::new(b))
            }
            "Sub" => {
                let a = self.spec()?;
                self.expect(b',')?;
                let k = self.number()?;
                GroupSpec::Sub(Box::new(a), k)
            }
            other => return Err(self.error(&format!("unknown family {other:?}"))),
        };
        self.expect(b')')?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_every_family() {
        for (text, order) in [
            ("C(12)", 12),
            ("Q(4)", 16),
            ("M(7,3,2)", 21),
            ("PQ(5,1,2,2,2)", 20),
            ("S(4)", 24),
            ("D(6)", 12),
            ("A(2,2,3)", 12),
            ("X(C(2),S(3))", 12),
            ("Sub(S(4),5)", 0),
        ] {
            let spec: GroupSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            let g = spec.build().unwrap();
            if order > 0 {
                assert_eq!(g.order(), order);
                assert_eq!(spec.order_hint(), Some(order as u64));
            }
        }
        let spaced: GroupSpec = " X( C(2) , A(2, 2) ) ".parse().unwrap();
        assert_eq!(spaced.to_string(), "X(C(2),A(2,2))");
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "C",
            "C()",
            "C(2",
            "C(2))",
            "Z(3)",
            "M(3,2)",
            "PQ(5,1,2,2)",
            "C(-1)",
            "X(C(2))",
        ] {
            assert!(
                matches!(bad.parse::<GroupSpec>(), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
        // parses, but fails validation
        assert!("M(7,3,1)".parse::<GroupSpec>().unwrap().build().is_err());
        assert!("Sub(C(4),3)".parse::<GroupSpec>().unwrap().build().is_err());
        assert!("Q(2)".parse::<GroupSpec>().unwrap().build().is_err());
    }

    #[test]
    fn sub_specs_pick_lattice_members() {
        let s3: GroupSpec = "S(3)".parse().unwrap();
        let g = s3.build().unwrap();
        for k in 0..g.lattice().len() {
            let sub = GroupSpec::Sub(Box::new(s3.clone()), k).build().unwrap();
            assert_eq!(sub.order(), g.lattice().size(k));
        }
    }

    fn leaf() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            (1u64..50).prop_map(GroupSpec::Cyclic),
            (3u32..6).prop_map(GroupSpec::Quaternion),
            (1u64..20).prop_map(GroupSpec::Dihedral),
            proptest::collection::vec(1u64..6, 1..4).prop_map(GroupSpec::Abelian),
            (0u64..30, 0u64..30, 0u64..30).prop_map(|(m, n, r)| GroupSpec::Metacyclic { m, n, r }),
        ]
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(a in leaf(), b in leaf(), k in 0usize..40) {
            for spec in [
                a.clone(),
                GroupSpec::Product(Box::new(a.clone()), Box::new(b.clone())),
                GroupSpec::Sub(Box::new(GroupSpec::Product(Box::new(a), Box::new(b))), k),
            ] {
                let text = spec.to_string();
                prop_assert_eq!(text.parse::<GroupSpec>().unwrap(), spec);
            }
        }
    }
}
