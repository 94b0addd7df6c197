use std::fmt;

/// The three syntactic kinds of RDF terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermKind {
    Iri,
    BlankNode,
    Literal,
}

/// An RDF term. Two terms are equal iff kind and lexical form are equal.
///
/// The lexical form is the IRI string (without angle brackets), the blank
/// node label (without `_:`), or the full literal token verbatim, including
/// quotes and any datatype or language tag. Literals are never normalized
/// to their value space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub kind: TermKind,
    pub lexical: String,
}

impl Term {
    pub fn iri(lexical: impl Into<String>) -> Term {
        Term {
            kind: TermKind::Iri,
            lexical: lexical.into(),
        }
    }

    pub fn blank(label: impl Into<String>) -> Term {
        Term {
            kind: TermKind::BlankNode,
            lexical: label.into(),
        }
    }

    /// A literal from its full token, e.g. `"abc"`, `"1"^^<...#integer>`,
    /// or `"chat"@fr`.
    pub fn literal(token: impl Into<String>) -> Term {
        Term {
            kind: TermKind::Literal,
            lexical: token.into(),
        }
    }

    pub fn is_literal(&self) -> bool {
        self.kind == TermKind::Literal
    }
}

impl fmt::Display for Term {
    /// Renders the N-Triples token for this term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TermKind::Iri => write!(f, "<{}>", self.lexical),
            TermKind::BlankNode => write!(f, "_:{}", self.lexical),
            TermKind::Literal => f.write_str(&self.lexical),
        }
    }
}

/// Interned handle for a [`Term`] within one [`crate::rdf::Graph`].
///
/// Ids are only meaningful relative to the graph that produced them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(pub(crate) u32);

impl TermId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One RDF statement. Subjects are IRIs or blank nodes, predicates are
/// IRIs, objects are any term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    s: Term,
    p: Term,
    o: Term,
}

impl Triple {
    pub fn new(s: Term, p: Term, o: Term) -> Result<Triple, TripleError> {
        if s.kind == TermKind::Literal {
            return Err(TripleError::LiteralSubject(s.lexical));
        }
        if p.kind != TermKind::Iri {
            return Err(TripleError::NonIriPredicate(p.to_string()));
        }
        Ok(Triple { s, p, o })
    }

    pub fn subject(&self) -> &Term {
        &self.s
    }

    pub fn predicate(&self) -> &Term {
        &self.p
    }

    pub fn object(&self) -> &Term {
        &self.o
    }

    pub fn into_parts(self) -> (Term, Term, Term) {
        (self.s, self.p, self.o)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.s, self.p, self.o)
    }
}

/// Structural violations of the RDF triple shape.
#[derive(Debug, thiserror::Error)]
pub enum TripleError {
    #[error("literal cannot be a subject: {0}")]
    LiteralSubject(String),
    #[error("predicate must be an IRI, got {0}")]
    NonIriPredicate(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_equality_is_kind_and_lexical() {
        assert_eq!(Term::iri("a"), Term::iri("a"));
        assert_ne!(Term::iri("a"), Term::blank("a"));
        assert_ne!(Term::literal("\"a\""), Term::iri("\"a\""));
    }

    #[test]
    fn display_renders_ntriples_tokens() {
        assert_eq!(Term::iri("http://x/a").to_string(), "<http://x/a>");
        assert_eq!(Term::blank("b0").to_string(), "_:b0");
        assert_eq!(
            Term::literal("\"1\"^^<http://www.w3.org/2001/XMLSchema#int>").to_string(),
            "\"1\"^^<http://www.w3.org/2001/XMLSchema#int>"
        );
    }

    #[test]
    fn triple_rejects_literal_subject_and_non_iri_predicate() {
        assert!(Triple::new(Term::literal("\"x\""), Term::iri("p"), Term::iri("o")).is_err());
        assert!(Triple::new(Term::iri("s"), Term::blank("p"), Term::iri("o")).is_err());
        assert!(Triple::new(Term::blank("s"), Term::iri("p"), Term::literal("\"x\"")).is_ok());
    }
}
