//! Rules driven by word lists: CRUD verbs, plurality, the method/verb
//! agreement of documentation and the noun hierarchy.

use super::{Evidence, Finding, HierarchyTable, Location, RuleId};
use crate::corpus::ApiEntry;
use crate::text::{is_plural, lemmatize, preprocess, CrudClass, CrudLexicon};
use crate::uri::{is_version_token, HttpMethod, ResourceUri, UriNode};
use crate::corpus::{AcronymDictionary, StopWordList};

/// Any literal node word whose lemma is a CRUD verb or synonym.
pub fn detect_crudy(entry: &ApiEntry, uri: &ResourceUri, lexicon: &CrudLexicon) -> Finding {
    let mut evidence = Vec::new();
    for (i, node) in uri.literal_nodes() {
        for word in &node.words {
            let lemma = lemmatize(word);
            if let Some(class) = lexicon.class_of(&lemma) {
                evidence.push(Evidence::new(
                    Location::Node(i),
                    format!("`{}` names a {class} action", node.raw),
                ));
            }
        }
    }
    Finding::from_evidence(&entry.id, RuleId::CrudyUri, evidence)
}

fn is_content_node(node: &UriNode) -> bool {
    node.is_literal() && !node.words.is_empty() && !is_version_token(&node.raw)
}

/// The node whose number decides the rule: the last one, or the last
/// literal node with words when the path ends in a parameter or an id.
fn subject_node(uri: &ResourceUri) -> Option<(usize, &UriNode)> {
    uri.nodes.iter().enumerate().rev().find(|(_, n)| is_content_node(n))
}

/// Plural names on PUT/DELETE and singular names on POST.
pub fn detect_pluralised(entry: &ApiEntry, uri: &ResourceUri) -> Finding {
    let mut evidence = Vec::new();
    if let Some((i, node)) = subject_node(uri) {
        let word = node.words.last().expect("content node has words");
        let plural = is_plural(word);
        match (entry.method, plural) {
            (HttpMethod::Put | HttpMethod::Delete, true) => evidence.push(Evidence::new(
                Location::Node(i),
                format!("plural `{word}` on a {} request", entry.method),
            )),
            (HttpMethod::Post, false) => evidence.push(Evidence::new(
                Location::Node(i),
                format!("singular `{word}` on a POST request"),
            )),
            _ => {}
        }
    }
    Finding::from_evidence(&entry.id, RuleId::PluralisedNodes, evidence)
}

/// The action class a method stands for; other methods are not checked.
fn method_class(method: HttpMethod) -> Option<CrudClass> {
    match method {
        HttpMethod::Post => Some(CrudClass::Create),
        HttpMethod::Get => Some(CrudClass::Read),
        HttpMethod::Put => Some(CrudClass::Update),
        HttpMethod::Delete => Some(CrudClass::Delete),
        _ => None,
    }
}

/// Documentation verbs of a different CRUD class than the HTTP method.
///
/// A documentation token that repeats a word of the path is not counted:
/// it names the resource (`/bulk/devices/remove`) rather than contradicting
/// the method.
pub fn detect_inconsistent_doc(
    entry: &ApiEntry,
    uri: &ResourceUri,
    lexicon: &CrudLexicon,
    stopwords: &StopWordList,
    acronyms: &AcronymDictionary,
) -> Finding {
    let mut evidence = Vec::new();
    if let Some(expected) = method_class(entry.method) {
        let path_words: Vec<String> = uri
            .literal_nodes()
            .flat_map(|(_, n)| n.words.iter().map(|w| lemmatize(w)))
            .collect();
        let doc = preprocess(&entry.documentation, stopwords, acronyms);
        for (i, token) in doc.tokens.iter().enumerate() {
            if path_words.contains(token) {
                continue;
            }
            if let Some(class) = lexicon.class_of(token) {
                if class != expected {
                    evidence.push(Evidence::new(
                        Location::Token(i),
                        format!("`{token}` describes a {class} action on a {} request", entry.method),
                    ));
                }
            }
        }
    }
    Finding::from_evidence(&entry.id, RuleId::InconsistentDocumentation, evidence)
}

/// A node recorded as more general than the node before it.
pub fn detect_non_hierarchical(entry: &ApiEntry, uri: &ResourceUri, table: &HierarchyTable) -> Finding {
    let heads: Vec<(usize, String)> = uri
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| is_content_node(n))
        .map(|(i, n)| (i, lemmatize(n.words.last().expect("content node has words"))))
        .collect();
    let mut evidence = Vec::new();
    for pair in heads.windows(2) {
        let (_, a) = &pair[0];
        let (j, b) = &pair[1];
        if a != b && table.contains(b, a) && !table.contains(a, b) {
            evidence.push(Evidence::new(
                Location::Node(*j),
                format!("`{b}` is more general than the preceding `{a}`"),
            ));
        }
    }
    Finding::from_evidence(&entry.id, RuleId::NonHierarchicalNodes, evidence)
}
