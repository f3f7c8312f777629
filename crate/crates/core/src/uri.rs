//! Lexical model of resource URIs.
//!
//! A raw URI string is split into an optional `scheme://host` prefix, a list
//! of path nodes, a trailing-slash flag and an optional query. Parsing never
//! fails: garbage becomes literal nodes and the detectors judge it.
//!
//! Normalizations applied by [`parse_uri`]: surrounding whitespace is kept
//! inside nodes, empty segments (`//`) are dropped, and a missing leading
//! slash is implied. [`ResourceUri::reconstruct`] reproduces the raw string
//! modulo exactly those normalizations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum HttpMethod {
    Get,
    Post,
    Put,
    Delete,
    Patch,
    Head,
    Options,
}

impl HttpMethod {
    pub const ALL: [HttpMethod; 7] = [
        HttpMethod::Get,
        HttpMethod::Post,
        HttpMethod::Put,
        HttpMethod::Delete,
        HttpMethod::Patch,
        HttpMethod::Head,
        HttpMethod::Options,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            HttpMethod::Get => "GET",
            HttpMethod::Post => "POST",
            HttpMethod::Put => "PUT",
            HttpMethod::Delete => "DELETE",
            HttpMethod::Patch => "PATCH",
            HttpMethod::Head => "HEAD",
            HttpMethod::Options => "OPTIONS",
        }
    }
}

impl fmt::Display for HttpMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HttpMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        HttpMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == upper)
            .ok_or_else(|| Error::Validation(format!("unknown HTTP method `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Literal,
    TemplateParameter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UriNode {
    pub raw: String,
    pub kind: NodeKind,
    /// Lowercase alphabetic words, split on camelCase, separators and digits.
    pub words: Vec<String>,
}

impl UriNode {
    pub fn is_literal(&self) -> bool {
        self.kind == NodeKind::Literal
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceUri {
    pub raw: String,
    pub scheme_host: Option<String>,
    pub nodes: Vec<UriNode>,
    pub has_trailing_slash: bool,
    /// Text after the first `?`, without the `?` itself.
    pub query: Option<String>,
}

impl ResourceUri {
    /// Rebuild a canonical string from the parsed parts.
    pub fn reconstruct(&self) -> String {
        let mut out = self.scheme_host.clone().unwrap_or_default();
        out.push('/');
        let joined: Vec<&str> = self.nodes.iter().map(|n| n.raw.as_str()).collect();
        out.push_str(&joined.join("/"));
        if self.has_trailing_slash && !self.nodes.is_empty() {
            out.push('/');
        }
        if let Some(q) = &self.query {
            out.push('?');
            out.push_str(q);
        }
        out
    }

    /// Character offset in `raw` where the path portion starts.
    pub fn path_offset(&self) -> usize {
        self.scheme_host
            .as_ref()
            .map(|h| h.chars().count())
            .unwrap_or(0)
    }

    pub fn literal_nodes(&self) -> impl Iterator<Item = (usize, &UriNode)> {
        self.nodes.iter().enumerate().filter(|(_, n)| n.is_literal())
    }
}

/// Top-level labels accepted for a bare `host.tld` prefix without a scheme.
const HOST_TLDS: &[&str] = &[
    "com", "org", "net", "io", "co", "eu", "uk", "de", "se", "fr", "nl", "us", "info", "cloud",
    "dev", "app", "ai", "edu", "gov", "tech", "me", "ca", "jp", "cn", "in", "au", "ch", "it", "es",
];

fn looks_like_host(segment: &str) -> bool {
    let labels: Vec<&str> = segment.split('.').collect();
    if labels.len() < 2 || labels.iter().any(|l| l.is_empty()) {
        return false;
    }
    let tld = labels[labels.len() - 1].to_ascii_lowercase();
    // allow an explicit port on the host
    let tld = tld.split(':').next().unwrap_or_default().to_string();
    HOST_TLDS.contains(&tld.as_str())
        && labels
            .iter()
            .all(|l| l.chars().all(|c| c.is_alphanumeric() || c == '-' || c == ':'))
}

pub fn parse_uri(raw: &str) -> ResourceUri {
    let (before_query, query) = match raw.split_once('?') {
        Some((b, q)) => (b, Some(q.to_string())),
        None => (raw, None),
    };

    let (scheme_host, path) = if let Some(idx) = before_query.find("://") {
        let after = &before_query[idx + 3..];
        let host_end = after.find('/').map(|i| idx + 3 + i).unwrap_or(before_query.len());
        (
            Some(before_query[..host_end].to_string()),
            &before_query[host_end..],
        )
    } else if !before_query.starts_with('/') {
        let first_end = before_query.find('/').unwrap_or(before_query.len());
        let first = &before_query[..first_end];
        if looks_like_host(first) {
            (Some(first.to_string()), &before_query[first_end..])
        } else {
            (None, before_query)
        }
    } else {
        (None, before_query)
    };

    let nodes: Vec<UriNode> = path
        .split('/')
        .filter(|s| !s.is_empty())
        .map(classify_node)
        .collect();
    let has_trailing_slash = path.ends_with('/');

    ResourceUri {
        raw: raw.to_string(),
        scheme_host,
        nodes,
        has_trailing_slash,
        query,
    }
}

fn is_wrapped(s: &str, open: char, close: char) -> bool {
    s.len() >= 2 && s.starts_with(open) && s.ends_with(close)
}

fn is_caps_placeholder(s: &str) -> bool {
    s.contains('_')
        && s.chars().any(|c| c.is_ascii_uppercase())
        && s
            .chars()
            .all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_')
}

fn has_id_suffix(s: &str) -> bool {
    let lower = s.to_ascii_lowercase();
    s.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '-')
        && ["_id", "-id", "_ids", "-ids"]
            .iter()
            .any(|suffix| lower.len() > suffix.len() && lower.ends_with(suffix))
}

/// Classify one path segment as a literal resource name or a template
/// parameter and split it into words.
///
/// Recognized parameter conventions: `{name}`, `[name]`, ALL_CAPS
/// placeholders with underscores (optionally behind a `$` or `:` sigil),
/// a leading `:name`, and the `*_id` suffix convention.
pub fn classify_node(raw_segment: &str) -> UriNode {
    let stripped = raw_segment.trim_start_matches(['$', ':']);
    let sigil = stripped.len() != raw_segment.len() && !stripped.is_empty();
    let parameter = is_wrapped(raw_segment, '{', '}')
        || is_wrapped(raw_segment, '[', ']')
        || is_caps_placeholder(stripped)
        || (raw_segment.starts_with(':') && sigil)
        || has_id_suffix(raw_segment);
    UriNode {
        raw: raw_segment.to_string(),
        kind: if parameter {
            NodeKind::TemplateParameter
        } else {
            NodeKind::Literal
        },
        words: split_words(raw_segment),
    }
}

/// Split an identifier into lowercase words.
///
/// Boundaries: any non-letter character (digits included, which are
/// dropped) and lower-to-upper case transitions.
pub fn split_words(s: &str) -> Vec<String> {
    crate::text::word_pieces(s)
        .into_iter()
        .map(|w| w.to_lowercase())
        .collect()
}

/// Extensions recognized on a final node.
pub const KNOWN_EXTENSIONS: &[&str] = &[
    "json", "xml", "html", "htm", "tiff", "jpg", "jpeg", "png", "gif", "pdf", "txt", "csv", "zip",
];

pub fn detect_file_extension(node: &UriNode) -> Option<String> {
    let (name, ext) = node.raw.rsplit_once('.')?;
    if name.is_empty() || ext.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let ext = ext.to_ascii_lowercase();
    KNOWN_EXTENSIONS.contains(&ext.as_str()).then_some(ext)
}

fn is_dotted_numeric(s: &str) -> bool {
    let parts: Vec<&str> = s.split('.').collect();
    parts.len() >= 2
        && parts
            .iter()
            .all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit()))
}

fn is_numeric(s: &str) -> bool {
    !s.is_empty() && (s.chars().all(|c| c.is_ascii_digit()) || is_dotted_numeric(s))
}

/// True for `v1`, `V2.0`, and bare dotted numbers such as `1.1`.
pub fn is_version_token(s: &str) -> bool {
    if let Some(rest) = s.strip_prefix(['v', 'V']) {
        let head = rest.split('.').next().unwrap_or_default();
        return !head.is_empty() && is_numeric(rest);
    }
    is_dotted_numeric(s)
}

/// First node carrying an API version, with its index.
pub fn detect_version_segment(uri: &ResourceUri) -> Option<(usize, String)> {
    for (i, node) in uri.nodes.iter().enumerate() {
        if is_version_token(&node.raw) {
            return Some((i, node.raw.clone()));
        }
        if node.raw.eq_ignore_ascii_case("version") {
            if let Some(next) = uri.nodes.get(i + 1) {
                if is_numeric(&next.raw) {
                    return Some((i, next.raw.clone()));
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharCategory {
    NonAsciiLetter,
    BlankSpace,
    DoubleHyphen,
    UnknownCharacter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharHit {
    /// Character (not byte) offset into the raw URI.
    pub position: usize,
    pub character: char,
    pub category: CharCategory,
}

fn allowed_ascii(c: char, in_query: bool) -> bool {
    c.is_ascii_alphanumeric()
        || matches!(c, '.' | '_' | '~' | '-' | '/' | '?' | ':' | '{' | '}' | '[' | ']')
        || (in_query && matches!(c, '=' | '&'))
}

/// Every non-standard character occurrence in the URI.
///
/// A run of two or more hyphens counts once, at its first hyphen. `=` and
/// `&` are accepted only inside the query string.
pub fn scan_nonstandard_chars(uri: &ResourceUri) -> Vec<CharHit> {
    let chars: Vec<char> = uri.raw.chars().collect();
    let mut hits = Vec::new();
    let mut in_query = false;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '?' {
            in_query = true;
        }
        if c == '-' {
            let mut end = i;
            while end < chars.len() && chars[end] == '-' {
                end += 1;
            }
            if end - i >= 2 {
                hits.push(CharHit {
                    position: i,
                    character: '-',
                    category: CharCategory::DoubleHyphen,
                });
            }
            i = end;
            continue;
        }
        let category = if c.is_whitespace() {
            Some(CharCategory::BlankSpace)
        } else if !c.is_ascii() && c.is_alphabetic() {
            Some(CharCategory::NonAsciiLetter)
        } else if !allowed_ascii(c, in_query) {
            Some(CharCategory::UnknownCharacter)
        } else {
            None
        };
        if let Some(category) = category {
            hits.push(CharHit {
                position: i,
                character: c,
                category,
            });
        }
        i += 1;
    }
    hits
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn raws(uri: &ResourceUri) -> Vec<&str> {
        uri.nodes.iter().map(|n| n.raw.as_str()).collect()
    }

    #[test]
    fn parses_host_and_nodes() {
        let uri = parse_uri("www.example.com/customers/1234");
        assert_eq!(uri.scheme_host.as_deref(), Some("www.example.com"));
        assert_eq!(raws(&uri), ["customers", "1234"]);
        assert!(!uri.has_trailing_slash);
    }

    #[test]
    fn parses_amorphous_example() {
        let uri = parse_uri("www.exampleAlbum.com/NEW_Customer/image01.tiff/");
        assert_eq!(uri.scheme_host.as_deref(), Some("www.exampleAlbum.com"));
        assert_eq!(raws(&uri), ["NEW_Customer", "image01.tiff"]);
        assert!(uri.has_trailing_slash);
    }

    #[test]
    fn root_path() {
        let uri = parse_uri("/");
        assert!(uri.nodes.is_empty());
        assert!(uri.has_trailing_slash);
        assert_eq!(uri.reconstruct(), "/");
    }

    #[test]
    fn scheme_and_query() {
        let uri = parse_uri("https://api.example.com:8443/players/age?id=123");
        assert_eq!(uri.scheme_host.as_deref(), Some("https://api.example.com:8443"));
        assert_eq!(raws(&uri), ["players", "age"]);
        assert_eq!(uri.query.as_deref(), Some("id=123"));
        assert_eq!(uri.reconstruct(), uri.raw);
    }

    #[test]
    fn single_dot_host_is_recognized() {
        let uri = parse_uri("instagram.com/media/media-id/comments");
        assert_eq!(uri.scheme_host.as_deref(), Some("instagram.com"));
        assert_eq!(uri.nodes.len(), 3);
        // a version is not a host
        let uri = parse_uri("1.1/favorites/list");
        assert_eq!(uri.scheme_host, None);
    }

    #[test]
    fn classify_template_parameters() {
        let node = classify_node("{physicalInterfaceId}");
        assert_eq!(node.kind, NodeKind::TemplateParameter);
        assert_eq!(node.words, ["physical", "interface", "id"]);
        for p in ["device_id", "[device id]", "APPLICATION_ID", "THING_TOKEN", "$MAGIC_RESOURCE", ":id"] {
            assert_eq!(classify_node(p).kind, NodeKind::TemplateParameter, "{p}");
        }
        let node = classify_node("customers");
        assert_eq!(node.kind, NodeKind::Literal);
        assert_eq!(node.words, ["customers"]);
        for l in ["NEW_Customer", "co_alarm_state", "commandStream", "id", "1234"] {
            assert_eq!(classify_node(l).kind, NodeKind::Literal, "{l}");
        }
    }

    #[test]
    fn word_splitting() {
        assert_eq!(split_words("commandStream"), ["command", "stream"]);
        assert_eq!(split_words("image01.tiff"), ["image", "tiff"]);
        assert_eq!(split_words("co_alarm_state"), ["co", "alarm", "state"]);
        assert_eq!(split_words("time-to-target"), ["time", "to", "target"]);
        assert!(split_words("1234").is_empty());
    }

    #[test]
    fn file_extensions() {
        assert_eq!(detect_file_extension(&classify_node("image01.tiff")).as_deref(), Some("tiff"));
        assert_eq!(detect_file_extension(&classify_node("v1.1")), None);
        assert_eq!(detect_file_extension(&classify_node("1.1")), None);
        assert_eq!(detect_file_extension(&classify_node("customers")), None);
        assert_eq!(detect_file_extension(&classify_node("report.JSON")).as_deref(), Some("json"));
    }

    #[test]
    fn version_segments() {
        let v = |s| detect_version_segment(&parse_uri(s));
        assert_eq!(v("api.example.com/1.1/resourceid/view"), Some((0, "1.1".into())));
        assert_eq!(v("/v0/api/auth/shortcode/create"), Some((0, "v0".into())));
        assert_eq!(v("/api/v2.0/things"), Some((1, "v2.0".into())));
        assert_eq!(v("/api/version/3/things"), Some((1, "3".into())));
        assert_eq!(v("/devices/thermostats"), None);
        assert_eq!(v("/videos/v/12"), None);
    }

    #[test]
    fn nonstandard_examples() {
        let hits = scan_nonstandard_chars(&parse_uri("api.example.com/museum/louvre/réception/"));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].character, 'é');
        assert_eq!(hits[0].category, CharCategory::NonAsciiLetter);

        let hits = scan_nonstandard_chars(&parse_uri("/devices/[device id]"));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].category, CharCategory::BlankSpace);

        let hits = scan_nonstandard_chars(&parse_uri("/things/THING_TOKEN/resources/$MAGIC_RESOURCE"));
        assert_eq!(hits.len(), 1);
        assert_eq!((hits[0].character, hits[0].category), ('$', CharCategory::UnknownCharacter));

        let hits = scan_nonstandard_chars(&parse_uri("/a--b/c---d?x=1&y=2"));
        assert_eq!(hits.len(), 2);
        assert!(hits.iter().all(|h| h.category == CharCategory::DoubleHyphen));

        let hits = scan_nonstandard_chars(&parse_uri("/a&b"));
        assert_eq!(hits[0].category, CharCategory::UnknownCharacter);
    }

    #[test]
    fn method_parsing_is_case_insensitive() {
        assert_eq!("get".parse::<HttpMethod>().unwrap(), HttpMethod::Get);
        assert_eq!("Delete".parse::<HttpMethod>().unwrap(), HttpMethod::Delete);
        assert!("FETCH".parse::<HttpMethod>().is_err());
    }

    proptest! {
        #[test]
        fn parse_is_deterministic_and_stable(s in "[a-zA-Z0-9/._{}\\-]{1,40}") {
            let a = parse_uri(&s);
            prop_assert_eq!(&a, &parse_uri(&s));
            let again = parse_uri(&a.reconstruct());
            prop_assert_eq!(&raws(&again), &raws(&a));
            prop_assert_eq!(again.reconstruct(), a.reconstruct());
        }

        #[test]
        fn word_splitting_preserves_letter_order(s in "[a-zA-Z0-9_\\-]{0,30}") {
            let joined: String = split_words(&s).concat();
            let letters: String = s.chars().filter(|c| c.is_alphabetic()).collect::<String>().to_lowercase();
            prop_assert_eq!(joined, letters);
        }

        #[test]
        fn clean_lowercase_uris_have_no_hits(
            segs in prop::collection::vec(prop::collection::vec("[a-z0-9]{1,6}", 1..4), 1..5)
        ) {
            let path: Vec<String> = segs.iter().map(|words| words.join("-")).collect();
            let uri = parse_uri(&format!("/{}", path.join("/")));
            prop_assert!(scan_nonstandard_chars(&uri).is_empty());
        }

        #[test]
        fn literal_nodes_with_letters_have_words(seg in "[a-zA-Z0-9_.\\-]{1,20}") {
            let node = classify_node(&seg);
            if node.is_literal() && seg.chars().any(|c| c.is_alphabetic()) {
                prop_assert!(!node.words.is_empty());
            }
        }
    }
}
