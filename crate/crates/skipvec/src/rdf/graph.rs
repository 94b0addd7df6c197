use std::collections::{HashMap, HashSet};

use indexmap::IndexSet;

use super::labels::LabeledResources;
use super::term::{Term, TermId, Triple};

/// Immutable, doubly-indexed RDF triple store.
///
/// Terms are interned once; triples are stored as id tuples with set
/// semantics. The subject index gives constant-amortized access to the
/// outgoing `(predicate, object)` pairs of any term, sorted canonically
/// so that traversal order never depends on insertion order.
#[derive(Debug, Clone)]
pub struct Graph {
    terms: IndexSet<Term>,
    triples: IndexSet<(TermId, TermId, TermId)>,
    subject_index: HashMap<TermId, Vec<(TermId, TermId)>>,
    predicates: HashSet<TermId>,
    objects: HashSet<TermId>,
}

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error(transparent)]
    Triple(#[from] super::term::TripleError),
}

impl Graph {
    pub fn from_triples<I: IntoIterator<Item = Triple>>(triples: I) -> Graph {
        let mut g = Graph {
            terms: IndexSet::new(),
            triples: IndexSet::new(),
            subject_index: HashMap::new(),
            predicates: HashSet::new(),
            objects: HashSet::new(),
        };
        for t in triples {
            g.insert(t);
        }
        g.finish();
        g
    }

    fn insert(&mut self, triple: Triple) {
        let (s, p, o) = triple.into_parts();
        let s = self.intern(s);
        let p = self.intern(p);
        let o = self.intern(o);
        if self.triples.insert((s, p, o)) {
            self.subject_index.entry(s).or_default().push((p, o));
            self.predicates.insert(p);
            self.objects.insert(o);
        }
    }

    fn intern(&mut self, term: Term) -> TermId {
        let (idx, _) = self.terms.insert_full(term);
        TermId(idx as u32)
    }

    fn finish(&mut self) {
        // Canonical adjacency order: sort each outgoing list by term value,
        // not by id, so that two graphs holding the same triple set traverse
        // identically regardless of load order.
        for pairs in self.subject_index.values_mut() {
            pairs.sort_by(|a, b| {
                let ka = (&self.terms[a.0.index()], &self.terms[a.1.index()]);
                let kb = (&self.terms[b.0.index()], &self.terms[b.1.index()]);
                ka.cmp(&kb)
            });
        }
    }

    /// Number of triples.
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// m: number of distinct predicates.
    pub fn predicate_count(&self) -> usize {
        self.predicates.len()
    }

    /// n: number of distinct objects.
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn term_id(&self, term: &Term) -> Option<TermId> {
        self.terms.get_index_of(term).map(|i| TermId(i as u32))
    }

    pub fn term(&self, id: TermId) -> &Term {
        &self.terms[id.index()]
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        let ids = (
            self.term_id(triple.subject()),
            self.term_id(triple.predicate()),
            self.term_id(triple.object()),
        );
        match ids {
            (Some(s), Some(p), Some(o)) => self.triples.contains(&(s, p, o)),
            _ => false,
        }
    }

    /// Outgoing `(predicate, object)` id pairs of `s`, empty if `s` never
    /// appears as a subject.
    pub fn outgoing_ids(&self, s: TermId) -> &[(TermId, TermId)] {
        self.subject_index.get(&s).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Outgoing `(predicate, object)` term pairs of `s`.
    pub fn outgoing<'a>(&'a self, s: &Term) -> impl Iterator<Item = (&'a Term, &'a Term)> + 'a {
        let pairs = match self.term_id(s) {
            Some(id) => self.outgoing_ids(id),
            None => &[],
        };
        pairs.iter().map(|&(p, o)| (self.term(p), self.term(o)))
    }

    /// All triples, materialized from the interned representation.
    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.triples.iter().map(|&(s, p, o)| {
            Triple::new(
                self.term(s).clone(),
                self.term(p).clone(),
                self.term(o).clone(),
            )
            .expect("stored triples are structurally valid")
        })
    }

    /// Canonical N-Triples serialization: one triple per line, terms
    /// space-separated with a trailing " .", lines sorted by term value.
    pub fn to_ntriples(&self) -> String {
        let mut lines: Vec<String> = self.triples().map(|t| t.to_string()).collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }

    /// Drops every triple whose subject is a labeled target and whose
    /// predicate is in `predicates`. Everything else is retained.
    pub fn remove_label_leak_triples(
        &self,
        targets: &LabeledResources,
        predicates: &HashSet<Term>,
    ) -> Graph {
        if predicates.is_empty() {
            return self.clone();
        }
        let retained = self
            .triples()
            .filter(|t| !(targets.contains(t.subject()) && predicates.contains(t.predicate())));
        Graph::from_triples(retained)
    }
}
