use super::{check_enumerable, LabError};
use crate::digest::Digest;
use crate::hash::{self, HashError};
use crate::instance::Instance;
use crate::route::{encode_route, enumerate_routes, Route};

/// One route string split into `prefix ‖ suffix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionRow {
    pub route: Route,
    pub route_name: String,
    pub prefix: Vec<u8>,
    pub suffix: Vec<u8>,
    /// Computed from `hash(prefix)` and `prefix.len()` only.
    pub extended: Digest,
    /// `hash(prefix ‖ glue_padding ‖ suffix)` computed directly.
    pub glue_padded: Digest,
    /// `hash(prefix ‖ suffix)`, the digest the route is actually scored by.
    pub full: Digest,
}

impl ExtensionRow {
    pub fn matches_glue(&self) -> bool {
        self.extended == self.glue_padded
    }

    pub fn differs_from_full(&self) -> bool {
        self.extended != self.full
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub rows: Vec<ExtensionRow>,
}

impl ExtensionReport {
    /// Every extension reproduced the glue-padded digest and none hit the
    /// true route digest.
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.matches_glue() && r.differs_from_full())
    }
}

/// Splits the route string of `route` after `split` bytes and extends the
/// prefix digest by the suffix.
pub fn length_extension_at(instance: &Instance, route: &Route, split: usize) -> Result<ExtensionRow, LabError> {
    let h = instance.hash_function();
    if h.as_merkle_damgard().is_none() {
        return Err(HashError::Unsupported { id: h.id().to_string(), capability: "length extension" }.into());
    }
    let bytes = encode_route(instance, route)?.bytes;
    if split == 0 || split > bytes.len() {
        return Err(LabError::Precondition(format!(
            "split point must be in 1..={} for a {}-byte route string, got {split}",
            bytes.len(),
            bytes.len()
        )));
    }
    let (prefix, suffix) = bytes.split_at(split);

    let extended = hash::length_extend(h, &h.digest(prefix), prefix.len() as u64, suffix)?;
    let glue_padded = hash::hash_streaming(h, [prefix, &hash::glue_padding(h, prefix.len() as u64)?, suffix]);
    let full = h.digest(&bytes);

    Ok(ExtensionRow {
        route: route.clone(),
        route_name: instance.route_name(route.order()),
        prefix: prefix.to_vec(),
        suffix: suffix.to_vec(),
        extended,
        glue_padded,
        full,
    })
}

/// Runs [`length_extension_at`] at the midpoint of every route string.
pub fn length_extension_demo(instance: &Instance) -> Result<ExtensionReport, LabError> {
    check_enumerable(instance.v())?;
    let rows = enumerate_routes(instance.v())?
        .map(|route| {
            let len = encode_route(instance, &route)?.bytes.len();
            length_extension_at(instance, &route, len / 2)
        })
        .collect::<Result<_, _>>()?;
    Ok(ExtensionReport { rows })
}
