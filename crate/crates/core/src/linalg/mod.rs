//! Exact integer and rational linear algebra.

mod hnf;
mod lattice;
mod matrix;
mod snf;

pub use hnf::{hermite_normal_form, HnfResult};
pub use lattice::{lattice_member, rational_rank};
pub use matrix::ExactMatrix;
pub(crate) use snf::smith_normal_form_left;
pub use snf::{smith_normal_form, SnfResult};

/// Serializes maps with non-string keys as lists of entries.
pub(crate) mod entry_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S, K, V>(m: &BTreeMap<K, V>, s: S) -> Result<S::Ok, S::Error>
    where
        S: Serializer,
        K: Serialize,
        V: Serialize,
    {
        m.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D, K, V>(d: D) -> Result<BTreeMap<K, V>, D::Error>
    where
        D: Deserializer<'de>,
        K: Deserialize<'de> + Ord,
        V: Deserialize<'de>,
    {
        Ok(Vec::<(K, V)>::deserialize(d)?.into_iter().collect())
    }
}
