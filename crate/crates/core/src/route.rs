//! Route enumeration in lexicographic rank order, the route-string encoding
//! that gets hashed, and digest ordering.
//!
//! Routes are directed vertex sequences; all `V!` of them are distinct (no
//! identification of rotations or reflections). A route's rank is its index
//! in lexicographic order, computed in the factorial number system.

use std::cmp::Ordering;

use thiserror::Error;

use crate::digest::Digest;
use crate::instance::Instance;

/// Largest `V` whose `V!` fits in a `u64` rank.
pub const MAX_ENUMERABLE_V: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("cannot enumerate {0}! routes: ranks are limited to 64 bits (V <= {MAX_ENUMERABLE_V})")]
    Capacity(usize),
    #[error("rank {rank} is out of range for V = {v} (V! = {total})")]
    RankOutOfRange { rank: u64, v: usize, total: u64 },
    #[error("rank range {start}..{end} is invalid for V! = {total}")]
    BadRange { start: u64, end: u64, total: u64 },
    #[error("order {0:?} is not a permutation of 0..V")]
    NotPermutation(Vec<usize>),
    #[error("route visits {found} vertices but the instance has {expected}")]
    RouteLength { expected: usize, found: usize },
    #[error("cannot compare digests of {left} and {right} bytes")]
    DigestLength { left: usize, right: usize },
}

pub fn factorial(v: usize) -> Result<u64, CodecError> {
    if v > MAX_ENUMERABLE_V {
        return Err(CodecError::Capacity(v));
    }
    Ok((1..=v as u64).product())
}

/// A visiting order together with its lexicographic rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Route {
    order: Vec<usize>,
    rank: u64,
}

impl Route {
    pub fn from_order(order: Vec<usize>) -> Result<Self, CodecError> {
        let rank = route_to_rank(&order)?;
        Ok(Route { order, rank })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn v(&self) -> usize {
        self.order.len()
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }
}

/// Unranks via the factorial number system.
pub fn rank_to_route(rank: u64, v: usize) -> Result<Route, CodecError> {
    let total = factorial(v)?;
    if rank >= total {
        return Err(CodecError::RankOutOfRange { rank, v, total });
    }
    let mut pool: Vec<usize> = (0..v).collect();
    let mut order = Vec::with_capacity(v);
    let mut rest = rank;
    for i in (0..v).rev() {
        let place = factorial(i)?;
        let digit = (rest / place) as usize;
        rest %= place;
        order.push(pool.remove(digit));
    }
    Ok(Route { order, rank })
}

/// Lehmer-code rank of a permutation of `0..order.len()`.
pub fn route_to_rank(order: &[usize]) -> Result<u64, CodecError> {
    let v = order.len();
    factorial(v)?;
    let mut seen = vec![false; v];
    for &x in order {
        if x >= v || seen[x] {
            return Err(CodecError::NotPermutation(order.to_vec()));
        }
        seen[x] = true;
    }
    let mut rank = 0u64;
    for (i, &x) in order.iter().enumerate() {
        let smaller_later = order[i + 1..].iter().filter(|&&y| y < x).count() as u64;
        rank = rank * (v - i) as u64 + smaller_later;
    }
    Ok(rank)
}

/// Steps `perm` to its lexicographic successor; returns false (leaving it
/// unchanged) when it is already the last permutation.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Iterator over the routes with rank in `start..end`, in rank order.
#[derive(Debug, Clone)]
pub struct Routes {
    current: Vec<usize>,
    next_rank: u64,
    end: u64,
}

impl Routes {
    /// Calls `f(rank, order)` for each remaining route without allocating.
    pub fn for_each_order<F: FnMut(u64, &[usize])>(mut self, mut f: F) {
        while self.next_rank < self.end {
            f(self.next_rank, &self.current);
            self.next_rank += 1;
            if self.next_rank < self.end {
                next_permutation(&mut self.current);
            }
        }
    }

    /// Like [`Routes::for_each_order`] but stops as soon as `f` returns true.
    /// Returns the number of routes visited.
    pub fn visit_until<F: FnMut(u64, &[usize]) -> bool>(mut self, mut f: F) -> u64 {
        let mut visited = 0;
        while self.next_rank < self.end {
            visited += 1;
            if f(self.next_rank, &self.current) {
                break;
            }
            self.next_rank += 1;
            if self.next_rank < self.end {
                next_permutation(&mut self.current);
            }
        }
        visited
    }
}

impl Iterator for Routes {
    type Item = Route;

    fn next(&mut self) -> Option<Route> {
        if self.next_rank >= self.end {
            return None;
        }
        let route = Route { order: self.current.clone(), rank: self.next_rank };
        self.next_rank += 1;
        if self.next_rank < self.end {
            next_permutation(&mut self.current);
        }
        Some(route)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next_rank) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Routes {}

/// All `v!` routes in rank order.
pub fn enumerate_routes(v: usize) -> Result<Routes, CodecError> {
    enumerate_range(v, 0, factorial(v)?)
}

/// Routes with rank in `start..end`.
pub fn enumerate_range(v: usize, start: u64, end: u64) -> Result<Routes, CodecError> {
    let total = factorial(v)?;
    if start > end || end > total {
        return Err(CodecError::BadRange { start, end, total });
    }
    let current = if start < total { rank_to_route(start, v)?.order } else { (0..v).collect() };
    Ok(Routes { current, next_rank: start, end })
}

/// Splits `0..total` into `parts` contiguous ranges of near-equal size.
pub fn partition_ranks(total: u64, parts: usize) -> Vec<(u64, u64)> {
    let parts = parts.max(1) as u64;
    (0..parts).map(|i| (total * i / parts, total * (i + 1) / parts)).filter(|(s, e)| s < e).collect()
}

/// The route string of an instance, pre-rendered per vertex and per edge so
/// that encoding a route is a sequence of slice copies.
#[derive(Debug, Clone)]
pub struct RouteEncoder {
    v: usize,
    labels: Vec<Vec<u8>>,
    weights: Vec<Vec<u8>>,
}

impl RouteEncoder {
    pub fn new(instance: &Instance) -> Self {
        let v = instance.v();
        let labels = instance.labels().iter().map(|l| l.as_bytes().to_vec()).collect();
        let weights = (0..v * v).map(|k| instance.cost(k / v, k % v).to_string().into_bytes()).collect();
        RouteEncoder { v, labels, weights }
    }

    /// Writes `label(v1) dec(c(v1,v2)) label(v2) ... label(vV) dec(c(vV,v1))`
    /// into `buf`, replacing its contents.
    pub fn encode_into(&self, order: &[usize], buf: &mut Vec<u8>) {
        debug_assert_eq!(order.len(), self.v);
        buf.clear();
        let n = order.len();
        for (i, &from) in order.iter().enumerate() {
            let to = order[(i + 1) % n];
            buf.extend_from_slice(&self.labels[from]);
            buf.extend_from_slice(&self.weights[from * self.v + to]);
        }
    }

    pub fn encode(&self, order: &[usize]) -> Vec<u8> {
        let mut buf = Vec::new();
        self.encode_into(order, &mut buf);
        buf
    }
}

/// The exact byte string hashed for a route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedRoute {
    pub bytes: Vec<u8>,
    pub route: Route,
}

impl EncodedRoute {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("labels and numerals are UTF-8")
    }
}

pub fn encode_route(instance: &Instance, route: &Route) -> Result<EncodedRoute, CodecError> {
    if route.v() != instance.v() {
        return Err(CodecError::RouteLength { expected: instance.v(), found: route.v() });
    }
    let bytes = RouteEncoder::new(instance).encode(route.order());
    Ok(EncodedRoute { bytes, route: route.clone() })
}

/// Byte-wise (equivalently, lowercase-hex) lexicographic comparison.
pub fn compare_digests(a: &Digest, b: &Digest) -> Result<Ordering, CodecError> {
    if a.len() != b.len() {
        return Err(CodecError::DigestLength { left: a.len(), right: b.len() });
    }
    Ok(a.cmp(b))
}
