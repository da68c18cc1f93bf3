//! Signed environment graphs, chains of spanning subgraphs and extension
//! enumeration.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{PagError, Result};

/// 1-based country label.
pub type Country = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Friend,
    Adversary,
}

/// Unordered pair of distinct countries, stored as `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    lo: Country,
    hi: Country,
}

impl Pair {
    pub fn new(a: Country, b: Country) -> Self {
        Pair {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn lo(&self) -> Country {
        self.lo
    }

    pub fn hi(&self) -> Country {
        self.hi
    }

    pub fn contains(&self, i: Country) -> bool {
        self.lo == i || self.hi == i
    }

    /// The endpoint that is not `i`, if `i` is an endpoint.
    pub fn other(&self, i: Country) -> Option<Country> {
        if self.lo == i {
            Some(self.hi)
        } else if self.hi == i {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl From<(Country, Country)> for Pair {
    fn from((a, b): (Country, Country)) -> Self {
        Pair::new(a, b)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Simple undirected signed graph on countries `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGraph {
    n: usize,
    friends: BTreeSet<Pair>,
    adversaries: BTreeSet<Pair>,
    // dense row-major relation table, index (i-1)*n + (j-1)
    relation: Vec<Option<Sign>>,
}

impl SignedGraph {
    pub fn new<F, A>(n: usize, friends: F, adversaries: A) -> Result<Self>
    where
        F: IntoIterator<Item = (Country, Country)>,
        A: IntoIterator<Item = (Country, Country)>,
    {
        let mut g = SignedGraph::edgeless(n);
        for (a, b) in friends {
            g.insert(a, b, Sign::Friend)?;
        }
        for (a, b) in adversaries {
            g.insert(a, b, Sign::Adversary)?;
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Self {
        SignedGraph {
            n,
            friends: BTreeSet::new(),
            adversaries: BTreeSet::new(),
            relation: vec![None; n * n],
        }
    }

    /// Complete graph whose every pair is adversarial.
    pub fn complete_adversary(n: usize) -> Self {
        let mut g = SignedGraph::edgeless(n);
        for a in 1..=n {
            for b in a + 1..=n {
                g.insert(a, b, Sign::Adversary).expect("fresh pair");
            }
        }
        g
    }

    pub fn from_signed_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Pair, Sign)>,
    {
        let mut g = SignedGraph::edgeless(n);
        for (pair, sign) in edges {
            g.insert(pair.lo, pair.hi, sign)?;
        }
        Ok(g)
    }

    fn insert(&mut self, a: Country, b: Country, sign: Sign) -> Result<()> {
        self.check_label(a)?;
        self.check_label(b)?;
        if a == b {
            return Err(PagError::SelfPair(a));
        }
        let pair = Pair::new(a, b);
        match self.sign(a, b) {
            Some(s) if s == sign => return Err(PagError::DuplicatePair(pair.lo, pair.hi)),
            Some(_) => return Err(PagError::ConflictingSign(pair.lo, pair.hi)),
            None => {}
        }
        match sign {
            Sign::Friend => self.friends.insert(pair),
            Sign::Adversary => self.adversaries.insert(pair),
        };
        let n = self.n;
        self.relation[(a - 1) * n + (b - 1)] = Some(sign);
        self.relation[(b - 1) * n + (a - 1)] = Some(sign);
        Ok(())
    }

    pub(crate) fn check_label(&self, i: Country) -> Result<()> {
        if i == 0 || i > self.n {
            Err(PagError::CountryOutOfRange {
                label: i,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn friend_pairs(&self) -> &BTreeSet<Pair> {
        &self.friends
    }

    pub fn adversary_pairs(&self) -> &BTreeSet<Pair> {
        &self.adversaries
    }

    pub fn edge_count(&self) -> usize {
        self.friends.len() + self.adversaries.len()
    }

    /// All edges in `(pair, sign)` order.
    pub fn edges(&self) -> Vec<(Pair, Sign)> {
        let mut out: Vec<(Pair, Sign)> = self
            .friends
            .iter()
            .map(|&p| (p, Sign::Friend))
            .chain(self.adversaries.iter().map(|&p| (p, Sign::Adversary)))
            .collect();
        out.sort();
        out
    }

    /// Sign of the pair `(i, j)`; `None` for non-edges, the diagonal and
    /// out-of-range labels.
    pub fn sign(&self, i: Country, j: Country) -> Option<Sign> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return None;
        }
        self.relation[(i - 1) * self.n + (j - 1)]
    }

    pub fn is_friend(&self, i: Country, j: Country) -> bool {
        self.sign(i, j) == Some(Sign::Friend)
    }

    pub fn is_adversary(&self, i: Country, j: Country) -> bool {
        self.sign(i, j) == Some(Sign::Adversary)
    }

    /// `i` may place power on `j`: `j` is `i` itself, a friend or an adversary.
    pub fn may_allocate(&self, i: Country, j: Country) -> bool {
        i == j || self.sign(i, j).is_some()
    }

    /// `{i}` together with every friend of `i`.
    pub fn friends_of(&self, i: Country) -> Result<BTreeSet<Country>> {
        self.check_label(i)?;
        let mut out: BTreeSet<Country> = (1..=self.n).filter(|&j| self.is_friend(i, j)).collect();
        out.insert(i);
        Ok(out)
    }

    pub fn adversaries_of(&self, i: Country) -> Result<BTreeSet<Country>> {
        self.check_label(i)?;
        Ok((1..=self.n).filter(|&j| self.is_adversary(i, j)).collect())
    }

    pub fn has_adversaries(&self, i: Country) -> bool {
        (1..=self.n).any(|j| self.is_adversary(i, j))
    }

    /// Same vertex set, and every edge of `self` appears in `of` with the
    /// same sign.
    pub fn is_spanning_subgraph_of(&self, of: &SignedGraph) -> bool {
        self.n == of.n
            && self.friends.is_subset(&of.friends)
            && self.adversaries.is_subset(&of.adversaries)
    }

    pub fn without_pair(&self, pair: Pair) -> Result<SignedGraph> {
        if self.sign(pair.lo, pair.hi).is_none() {
            return Err(PagError::PairNotInGraph(pair.lo, pair.hi));
        }
        SignedGraph::from_signed_edges(self.n, self.edges().into_iter().filter(|(p, _)| *p != pair))
    }

    /// Removes every edge incident to `i`.
    pub fn isolate(&self, i: Country) -> Result<SignedGraph> {
        self.check_label(i)?;
        SignedGraph::from_signed_edges(
            self.n,
            self.edges().into_iter().filter(|(p, _)| !p.contains(i)),
        )
    }

    /// The spanning subgraph holding only the adversary edges.
    pub fn adversary_part(&self) -> SignedGraph {
        SignedGraph::from_signed_edges(
            self.n,
            self.adversaries.iter().map(|&p| (p, Sign::Adversary)),
        )
        .expect("subset of a valid graph")
    }

    /// The spanning subgraph holding only the friend edges.
    pub fn friend_part(&self) -> SignedGraph {
        SignedGraph::from_signed_edges(self.n, self.friends.iter().map(|&p| (p, Sign::Friend)))
            .expect("subset of a valid graph")
    }

    pub fn with_edge(&self, pair: Pair, sign: Sign) -> Result<SignedGraph> {
        let mut g = self.clone();
        g.insert(pair.lo, pair.hi, sign)?;
        Ok(g)
    }

    pub fn is_complete_adversary(&self) -> bool {
        self.friends.is_empty() && self.adversaries.len() == self.n * self.n.saturating_sub(1) / 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Ascending,
    Descending,
    General,
}

/// Time-indexed sequence `G(0), ..., G(T)` of graphs on a common vertex set.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphChain {
    graphs: Vec<SignedGraph>,
    kind: ChainKind,
}

impl GraphChain {
    /// Builds a chain, rejecting it unless the declared kind holds.
    pub fn new(graphs: Vec<SignedGraph>, kind: ChainKind) -> Result<Self> {
        if !validate_chain(&graphs, kind)? {
            let step = first_kind_breach(&graphs, kind).unwrap_or(0);
            return Err(PagError::ChainKindViolated { kind, step });
        }
        Ok(GraphChain { graphs, kind })
    }

    /// Builds a chain with the most specific kind that holds.
    pub fn infer(graphs: Vec<SignedGraph>) -> Result<Self> {
        for kind in [ChainKind::Ascending, ChainKind::Descending] {
            if validate_chain(&graphs, kind)? {
                return Ok(GraphChain { graphs, kind });
            }
        }
        GraphChain::new(graphs, ChainKind::General)
    }

    /// Same graphs in reverse order, with the opposite kind.
    pub fn reversed(&self) -> GraphChain {
        let kind = match self.kind {
            ChainKind::Ascending => ChainKind::Descending,
            ChainKind::Descending => ChainKind::Ascending,
            ChainKind::General => ChainKind::General,
        };
        GraphChain {
            graphs: self.graphs.iter().rev().cloned().collect(),
            kind,
        }
    }

    pub fn graphs(&self) -> &[SignedGraph] {
        &self.graphs
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn n(&self) -> usize {
        self.graphs[0].n()
    }

    pub fn last(&self) -> &SignedGraph {
        self.graphs.last().expect("chains are nonempty")
    }
}

fn first_kind_breach(graphs: &[SignedGraph], kind: ChainKind) -> Option<usize> {
    graphs.windows(2).position(|w| match kind {
        ChainKind::Ascending => !w[0].is_spanning_subgraph_of(&w[1]),
        ChainKind::Descending => !w[1].is_spanning_subgraph_of(&w[0]),
        ChainKind::General => false,
    })
}

/// Checks the declared kind at every consecutive pair. Graphs of differing
/// size never form a chain.
pub fn validate_chain(graphs: &[SignedGraph], kind: ChainKind) -> Result<bool> {
    let first = graphs.first().ok_or(PagError::EmptyChain)?;
    for (index, g) in graphs.iter().enumerate() {
        if g.n() != first.n() {
            return Err(PagError::ChainSizeMismatch {
                index,
                expected: first.n(),
                found: g.n(),
            });
        }
    }
    Ok(first_kind_breach(graphs, kind).is_none())
}

/// Largest number of free edges [`enumerate_extensions`] will expand.
pub const MAX_FREE_EDGES: usize = 20;

/// Every spanning subgraph `H` of `target` with `current ⊆ H`, in
/// bitmask order over the free edges (bit `k` = k-th free edge in pair order).
pub fn enumerate_extensions(
    current: &SignedGraph,
    target: &SignedGraph,
) -> Result<Vec<SignedGraph>> {
    if !current.is_spanning_subgraph_of(target) {
        return Err(PagError::NotSpanningSubgraph);
    }
    let base = current.edges();
    let free: Vec<(Pair, Sign)> = target
        .edges()
        .into_iter()
        .filter(|(p, _)| current.sign(p.lo(), p.hi()).is_none())
        .collect();
    if free.len() > MAX_FREE_EDGES {
        return Err(PagError::TooLarge(format!(
            "{} free edges (limit {MAX_FREE_EDGES})",
            free.len()
        )));
    }
    let mut out = Vec::with_capacity(1 << free.len());
    for mask in 0u32..(1u32 << free.len()) {
        let chosen = free
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, e)| *e);
        out.push(SignedGraph::from_signed_edges(
            target.n(),
            base.iter().copied().chain(chosen),
        )?);
    }
    Ok(out)
}

/// Number of intermediate spanning subgraphs between a graph with `alpha`
/// edges and a target with `m` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionCount {
    pub m: u32,
    pub alpha: u32,
    /// `2^(m - alpha)`, what exhaustive enumeration produces.
    pub exact: u128,
    /// `sum_{b=0}^{m-alpha} (m-alpha)! / b!` evaluated literally.
    pub printed_formula: u128,
}

impl ExtensionCount {
    pub fn agrees(&self) -> bool {
        self.exact == self.printed_formula
    }
}

pub fn count_extensions(m: u32, alpha: u32) -> Result<ExtensionCount> {
    if alpha > m {
        return Err(PagError::Precondition(format!(
            "alpha = {alpha} exceeds m = {m}"
        )));
    }
    let d = m - alpha;
    let overflow = || PagError::Overflow(format!("count for m - alpha = {d}"));
    let exact = 1u128
        .checked_shl(d)
        .filter(|_| d < 128)
        .ok_or_else(overflow)?;
    // d!/b! = (b+1)(b+2)...d, accumulated from b = d downwards
    let mut printed: u128 = 0;
    let mut term: u128 = 1;
    for b in (0..=d).rev() {
        printed = printed.checked_add(term).ok_or_else(overflow)?;
        if b > 0 {
            term = term.checked_mul(b as u128).ok_or_else(overflow)?;
        }
    }
    Ok(ExtensionCount {
        m,
        alpha,
        exact,
        printed_formula: printed,
    })
}
