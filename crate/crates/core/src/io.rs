//! JSON file formats. Every integer is written as a decimal string.

use serde::{Deserialize, Serialize};

use num_bigint::BigInt;

use crate::error::Error;
use crate::gadget::{FiniteModule, ModuleProblemInstance, SubsetS};
use crate::order::{validate_order, FiniteRing, Order, Ring};
use crate::poly::IntPolynomial;

pub mod dec {
    //! Serde helpers for integers as decimal strings.
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn parse(s: &str) -> Result<BigInt, String> {
        s.trim().parse::<BigInt>().map_err(|_| format!("`{s}` is not a decimal integer"))
    }

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use num_bigint::BigInt;
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|x| x.to_string()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter().map(|s| super::parse(s)).collect::<Result<_, _>>().map_err(D::Error::custom)
        }
    }

    /// Machine integers (module elements) as decimal strings.
    pub mod ivec {
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[i64], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|x| x.to_string()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<i64>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| s.trim().parse::<i64>().map_err(|_| D::Error::custom(format!("`{s}` is not a decimal integer"))))
                .collect()
        }
    }

    pub mod ivec2 {
        use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[Vec<i64>], s: S) -> Result<S::Ok, S::Error> {
            let strs: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            strs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<i64>>, D::Error> {
            let v = Vec::<Vec<String>>::deserialize(d)?;
            v.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| s.trim().parse::<i64>().map_err(|_| D::Error::custom(format!("`{s}` is not a decimal integer"))))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect()
        }
    }

    pub mod vec2 {
        use num_bigint::BigInt;
        use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
            let strs: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            strs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
            let v = Vec::<Vec<String>>::deserialize(d)?;
            v.iter()
                .map(|r| r.iter().map(|s| super::parse(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()
                .map_err(D::Error::custom)
        }
    }

    pub mod vec3 {
        use num_bigint::BigInt;
        use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[Vec<Vec<BigInt>>], s: S) -> Result<S::Ok, S::Error> {
            let strs: Vec<Vec<Vec<String>>> =
                v.iter().map(|m| m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()).collect();
            strs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Vec<BigInt>>>, D::Error> {
            let v = Vec::<Vec<Vec<String>>>::deserialize(d)?;
            v.iter()
                .map(|m| {
                    m.iter()
                        .map(|r| r.iter().map(|s| super::parse(s)).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()
                .map_err(D::Error::custom)
        }
    }
}

/// `{"rank": n, "unit": [...], "mul": [n][n][n]}` with `mul[i][j]` the
/// coordinates of `e_i·e_j`. Finite rings add `"components"`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct OrderFile {
    pub rank: usize,
    #[serde(with = "dec::vec")]
    pub unit: Vec<BigInt>,
    #[serde(with = "dec::vec3")]
    pub mul: Vec<Vec<Vec<BigInt>>>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_vec")]
    pub components: Option<Vec<BigInt>>,
}

mod opt_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::dec::vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "super::dec::vec")] Vec<BigInt>);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

impl OrderFile {
    pub fn from_ring<R: Ring>(r: &R) -> Self {
        OrderFile {
            rank: r.rank(),
            unit: r.one(),
            mul: r.dense_table(),
            components: r.moduli().map(|m| m.to_vec()),
        }
    }

    /// Validates the axioms; rejects files that carry `components`.
    pub fn to_order(&self) -> Result<Order, Error> {
        if self.components.is_some() {
            return Err(Error::Malformed("expected an order, found a finite ring (\"components\" present)".into()));
        }
        validate_order(self.rank, self.mul.clone(), self.unit.clone())
    }

    pub fn to_finite_ring(&self) -> Result<FiniteRing, Error> {
        let moduli = self.components.clone().ok_or_else(|| Error::Malformed("finite ring needs \"components\"".into()))?;
        FiniteRing::new(moduli, self.mul.clone(), self.unit.clone())
    }
}

/// `{"coeffs": ["a0", "a1", ...]}`, ascending degree.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PolyFile {
    #[serde(with = "dec::vec")]
    pub coeffs: Vec<num_bigint::BigInt>,
}

impl TryFrom<PolyFile> for IntPolynomial {
    type Error = Error;
    fn try_from(p: PolyFile) -> Result<Self, Error> {
        Ok(IntPolynomial::new(p.coeffs))
    }
}

impl From<IntPolynomial> for PolyFile {
    fn from(p: IntPolynomial) -> Self {
        PolyFile { coeffs: p.coeffs().to_vec() }
    }
}

/// An integer given either as a JSON number or as a decimal string.
#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum Flex {
    Num(i64),
    Str(String),
}

impl Flex {
    pub fn to_i64(&self) -> Result<i64, Error> {
        match self {
            Flex::Num(n) => Ok(*n),
            Flex::Str(s) => s.trim().parse().map_err(|_| Error::Malformed(format!("`{s}` is not a 64-bit integer"))),
        }
    }
}

fn flex1(v: &[Flex]) -> Result<Vec<i64>, Error> {
    v.iter().map(Flex::to_i64).collect()
}

fn flex2(v: &[Vec<Flex>]) -> Result<Vec<Vec<i64>>, Error> {
    v.iter().map(|r| flex1(r)).collect()
}

/// `{"invariants", "actions", "S", "t", "H", "xstar"}`. The module fields
/// are optional when the module comes from a gadget.
#[derive(Deserialize, Clone, Debug, Default)]
pub struct InstanceFile {
    #[serde(default)]
    pub invariants: Option<Vec<Flex>>,
    #[serde(default)]
    pub actions: Option<Vec<Vec<Vec<Flex>>>>,
    #[serde(default, rename = "S")]
    pub s: Option<Vec<Vec<Flex>>>,
    #[serde(default)]
    pub t: Option<Flex>,
    #[serde(default, rename = "H")]
    pub h: Vec<Vec<Flex>>,
    #[serde(default)]
    pub xstar: Option<Vec<Flex>>,
}

impl InstanceFile {
    pub fn module(&self) -> Result<(FiniteModule, SubsetS), Error> {
        let inv = self.invariants.as_ref().ok_or_else(|| Error::Malformed("instance needs \"invariants\"".into()))?;
        let actions = match &self.actions {
            Some(a) => a.iter().map(|m| flex2(m)).collect::<Result<Vec<_>, _>>()?,
            None => Vec::new(),
        };
        let g = FiniteModule::new(flex1(inv)?, actions)?;
        let s = match &self.s {
            Some(s) => flex2(s)?,
            None => Vec::new(),
        };
        let s = SubsetS::new(&g, &s)?;
        Ok((g, s))
    }

    /// The instance part; `xstar` defaults to zero.
    pub fn instance(&self, g: &FiniteModule) -> Result<ModuleProblemInstance, Error> {
        let t = match &self.t {
            Some(t) => usize::try_from(t.to_i64()?).map_err(|_| Error::Malformed("t must be nonnegative".into()))?,
            None => return Err(Error::Malformed("instance needs \"t\"".into())),
        };
        let x_star = match &self.xstar {
            Some(x) => flex1(x)?,
            None => vec![0; t * g.rank()],
        };
        let inst = ModuleProblemInstance { t, h_gens: flex2(&self.h)?, x_star };
        inst.check_shape(g)?;
        Ok(inst)
    }
}

/// A polynomial as text or as `{"coeffs": [...]}`.
#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum PolyArg {
    Text(String),
    Coeffs(PolyFile),
}

impl PolyArg {
    pub fn to_poly(&self) -> Result<IntPolynomial, Error> {
        match self {
            PolyArg::Text(s) => s.parse(),
            PolyArg::Coeffs(p) => IntPolynomial::try_from(p.clone()),
        }
    }
}

/// Gadget parameters: `{"f": ..., "p": "3", "a": "2"}`, all optional.
#[derive(Deserialize, Clone, Debug, Default)]
pub struct ParamsFile {
    #[serde(default)]
    pub f: Option<PolyArg>,
    #[serde(default)]
    pub p: Option<Flex>,
    #[serde(default)]
    pub a: Option<Flex>,
}
