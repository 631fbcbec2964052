use super::OracleError;
use crate::graph::{make_caterpillar, CaterpillarShape, Graph, VertexSet};
use crate::rational::{self, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Injective map from pattern vertices `0..k` to host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, p: usize) -> usize {
        self.map[p]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn image_set(&self) -> VertexSet {
        self.map.iter().copied().collect()
    }

    /// Re-checks injectivity and induced-ness pair by pair.
    pub fn check_induced(&self, host: &Graph, pattern: &Graph) -> Result<(), String> {
        self.check_induced_with(host.n(), pattern, |u, v| host.has_edge(u, v))
    }

    /// As [`Embedding::check_induced`], with host adjacency given by `adjacent`.
    pub fn check_induced_with(
        &self,
        host_n: usize,
        pattern: &Graph,
        adjacent: impl Fn(usize, usize) -> bool,
    ) -> Result<(), String> {
        if self.map.len() != pattern.n() {
            return Err(format!("embedding covers {} of {} pattern vertices", self.map.len(), pattern.n()));
        }
        if let Some(&v) = self.map.iter().find(|&&v| v >= host_n) {
            return Err(format!("host vertex {v} out of range"));
        }
        let mut seen = vec![usize::MAX; host_n];
        for (p, &v) in self.map.iter().enumerate() {
            if seen[v] != usize::MAX {
                return Err(format!("pattern vertices {} and {p} both map to host vertex {v}", seen[v]));
            }
            seen[v] = p;
        }
        for p in 0..pattern.n() {
            for q in p + 1..pattern.n() {
                let (u, v) = (self.map[p], self.map[q]);
                match (pattern.has_edge(p, q), adjacent(u, v)) {
                    (true, false) => return Err(format!("pattern edge ({p},{q}) maps to non-edge ({u},{v})")),
                    (false, true) => return Err(format!("pattern non-edge ({p},{q}) maps to edge ({u},{v})")),
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<usize, usize> = self.map.iter().copied().enumerate().collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Embedding {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<usize, usize>::deserialize(d)?;
        if map.keys().enumerate().any(|(i, &k)| i != k) {
            return Err(serde::de::Error::custom("embedding keys must be exactly 0..k"));
        }
        Ok(Embedding { map: map.into_values().collect() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    AntiPair,
    FullPair,
    InducedPattern,
    InducedPatternComplement,
}

impl CertificateKind {
    pub fn is_pair(self) -> bool {
        matches!(self, CertificateKind::AntiPair | CertificateKind::FullPair)
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::AntiPair => "anti_pair",
            CertificateKind::FullPair => "full_pair",
            CertificateKind::InducedPattern => "induced_pattern",
            CertificateKind::InducedPatternComplement => "induced_pattern_complement",
        })
    }
}

/// Machine-checkable witness for one branch of the dichotomy.
///
/// Pair kinds carry `set_a`/`set_b`; pattern kinds carry `shape` and an
/// embedding of the canonical template. Fractions are `|set|/n` of the input
/// graph (zero for pattern kinds).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub set_a: VertexSet,
    pub set_b: VertexSet,
    pub shape: Option<CaterpillarShape>,
    pub embedding: Option<Embedding>,
    #[serde(with = "rational")]
    pub fraction_a: Rational,
    #[serde(with = "rational")]
    pub fraction_b: Rational,
}

impl Certificate {
    pub fn pair(kind: CertificateKind, set_a: VertexSet, set_b: VertexSet, n: usize) -> Self {
        debug_assert!(kind.is_pair());
        let denom = rational::int(n.max(1));
        Certificate {
            kind,
            fraction_a: rational::int(set_a.len()) / denom.clone(),
            fraction_b: rational::int(set_b.len()) / denom,
            set_a,
            set_b,
            shape: None,
            embedding: None,
        }
    }

    pub fn anti_pair(set_a: VertexSet, set_b: VertexSet, n: usize) -> Self {
        Certificate::pair(CertificateKind::AntiPair, set_a, set_b, n)
    }

    pub fn full_pair(set_a: VertexSet, set_b: VertexSet, n: usize) -> Self {
        Certificate::pair(CertificateKind::FullPair, set_a, set_b, n)
    }

    pub fn pattern(complemented: bool, shape: CaterpillarShape, embedding: Embedding) -> Self {
        Certificate {
            kind: if complemented { CertificateKind::InducedPatternComplement } else { CertificateKind::InducedPattern },
            set_a: VertexSet::new(),
            set_b: VertexSet::new(),
            shape: Some(shape),
            embedding: Some(embedding),
            fraction_a: rational::int(0),
            fraction_b: rational::int(0),
        }
    }

    /// `min(|A|, |B|)` for pair kinds.
    pub fn min_side(&self) -> usize {
        self.set_a.len().min(self.set_b.len())
    }

    /// Same witness read in the complement: anti and full pairs swap, as do
    /// the two pattern kinds.
    pub fn complemented(mut self) -> Self {
        self.kind = match self.kind {
            CertificateKind::AntiPair => CertificateKind::FullPair,
            CertificateKind::FullPair => CertificateKind::AntiPair,
            CertificateKind::InducedPattern => CertificateKind::InducedPatternComplement,
            CertificateKind::InducedPatternComplement => CertificateKind::InducedPattern,
        };
        self
    }

    /// Rewrites every vertex id through `to_host` (ids of a subgraph back to
    /// ids of its host), recomputing fractions against `host_n`.
    pub fn lifted(self, to_host: &[usize], host_n: usize) -> Self {
        let lift = |s: &VertexSet| s.iter().map(|v| to_host[v]).collect::<VertexSet>();
        if self.kind.is_pair() {
            Certificate::pair(self.kind, lift(&self.set_a), lift(&self.set_b), host_n)
        } else {
            let embedding = self.embedding.map(|e| Embedding::new(e.as_slice().iter().map(|&v| to_host[v]).collect()));
            Certificate { embedding, ..self }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialises")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Re-checks a certificate against the original input graph from scratch.
///
/// Out-of-range ids and missing fields are a malformed-certificate error;
/// any violated constraint gives [`Verdict::Invalid`] naming the first one.
pub fn verify_certificate(g0: &Graph, cert: &Certificate) -> Result<Verdict, OracleError> {
    let n = g0.n();
    for v in cert.set_a.iter().chain(cert.set_b.iter()) {
        if v >= n {
            return Err(OracleError::Malformed(format!("vertex {v} out of range for n = {n}")));
        }
    }
    let invalid = |msg: String| Ok(Verdict::Invalid(msg));
    match cert.kind {
        CertificateKind::AntiPair | CertificateKind::FullPair => {
            let (a, b) = (&cert.set_a, &cert.set_b);
            if a.is_empty() || b.is_empty() {
                return invalid("pair side is empty".into());
            }
            if let Some(v) = a.iter().find(|&v| b.contains(v)) {
                return invalid(format!("vertex {v} lies in both sides"));
            }
            let denom = rational::int(n);
            if cert.fraction_a != rational::int(a.len()) / denom.clone()
                || cert.fraction_b != rational::int(b.len()) / denom
            {
                return invalid("reported fractions do not match set sizes".into());
            }
            if cert.kind == CertificateKind::AntiPair {
                if let Some((u, v)) = g0.edge_between(a, b) {
                    return invalid(format!("edge ({u},{v}) between the sides"));
                }
            } else if let Some((u, v)) = g0.missing_edge_between(a, b) {
                return invalid(format!("missing edge ({u},{v})"));
            }
            Ok(Verdict::Valid)
        }
        CertificateKind::InducedPattern | CertificateKind::InducedPatternComplement => {
            let shape = cert.shape.ok_or_else(|| OracleError::Malformed("pattern certificate without shape".into()))?;
            let embedding =
                cert.embedding.as_ref().ok_or_else(|| OracleError::Malformed("pattern certificate without embedding".into()))?;
            let template = make_caterpillar(shape).map_err(|e| OracleError::Malformed(e.to_string()))?;
            if embedding.len() != template.graph.n() {
                return Err(OracleError::Malformed(format!(
                    "embedding has {} entries, template {} has {} vertices",
                    embedding.len(),
                    shape,
                    template.graph.n()
                )));
            }
            if let Some(&v) = embedding.as_slice().iter().find(|&&v| v >= n) {
                return Err(OracleError::Malformed(format!("vertex {v} out of range for n = {n}")));
            }
            let result = if cert.kind == CertificateKind::InducedPattern {
                embedding.check_induced(g0, &template.graph)
            } else {
                embedding
                    .check_induced_with(n, &template.graph, |u, v| !g0.has_edge(u, v))
                    .map_err(|reason| format!("{reason} in the complement"))
            };
            Ok(match result {
                Ok(()) => Verdict::Valid,
                Err(reason) => Verdict::Invalid(reason),
            })
        }
    }
}
