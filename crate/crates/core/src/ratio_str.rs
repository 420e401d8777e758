//! Serde adapter writing rationals as `"p/q"` (or `"p"` when integral).

use num_rational::Ratio;
use serde::{de, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
    let text = String::deserialize(d)?;
    text.parse().map_err(|_| de::Error::custom(format!("bad rational {text:?}")))
}

/// The same for a point `[x, y]`; integers are also accepted on input.
pub mod pair {
    use num_rational::Ratio;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Coord {
        Int(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(p: &[Ratio<i64>; 2], s: S) -> Result<S::Ok, S::Error> {
        [p[0].to_string(), p[1].to_string()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Ratio<i64>; 2], D::Error> {
        let raw = <[Coord; 2]>::deserialize(d)?;
        let mut out = [Ratio::from_integer(0); 2];
        for (o, c) in out.iter_mut().zip(raw) {
            *o = match c {
                Coord::Int(n) => Ratio::from_integer(n),
                Coord::Text(t) => t.parse().map_err(|_| de::Error::custom(format!("bad rational {t:?}")))?,
            };
        }
        Ok(out)
    }
}
