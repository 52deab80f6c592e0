//! Minimal GML reader: `graph`, `node` and `edge` blocks with `id`, `label`,
//! `value`, `source` and `target` keys. Everything else is skipped.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, ParsedGraph};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Key(String),
    Str(String),
    Num(String),
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1;
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '[' => {
                chars.next();
                out.push((Token::Open, line));
            }
            ']' => {
                chars.next();
                out.push((Token::Close, line));
            }
            '"' => {
                let start = line;
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some(c) => {
                            if c == '\n' {
                                line += 1;
                            }
                            s.push(c);
                        }
                        None => return Err(Error::parse(start, "unterminated string")),
                    }
                }
                out.push((Token::Str(s), start));
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '[' || c == ']' || c == '"' {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                let first = s.chars().next().unwrap_or(' ');
                if first.is_ascii_digit() || first == '-' || first == '+' || first == '.' {
                    out.push((Token::Num(s), line));
                } else {
                    out.push((Token::Key(s), line));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Default)]
struct Block {
    scalars: HashMap<String, String>,
    line: usize,
}

/// Reads the key/value pairs of one block, skipping nested lists.
fn read_block(tokens: &[(Token, usize)], pos: &mut usize, line: usize) -> Result<Block> {
    let mut block = Block {
        line,
        ..Default::default()
    };
    loop {
        let Some((tok, l)) = tokens.get(*pos) else {
            return Err(Error::parse(line, "unbalanced brackets: block never closed"));
        };
        *pos += 1;
        match tok {
            Token::Close => return Ok(block),
            Token::Key(k) => match tokens.get(*pos) {
                Some((Token::Str(v), _)) | Some((Token::Num(v), _)) | Some((Token::Key(v), _)) => {
                    block.scalars.insert(k.clone(), v.clone());
                    *pos += 1;
                }
                Some((Token::Open, l)) => {
                    *pos += 1;
                    read_block(tokens, pos, *l)?;
                }
                _ => return Err(Error::parse(*l, format!("key `{k}` has no value"))),
            },
            _ => return Err(Error::parse(*l, "expected a key")),
        }
    }
}

/// Parse a GML document. Node `value` attributes become ground-truth labels;
/// `label` attributes become node names (falling back to `id`). Directed
/// graphs are symmetrized.
pub fn parse_gml(text: &str) -> Result<ParsedGraph> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    // find `graph [`
    let graph_line = loop {
        match tokens.get(pos) {
            Some((Token::Key(k), l)) if k == "graph" => {
                if !matches!(tokens.get(pos + 1), Some((Token::Open, _))) {
                    return Err(Error::parse(*l, "expected `[` after `graph`"));
                }
                pos += 2;
                break *l;
            }
            Some((Token::Open, l)) | Some((Token::Close, l)) => {
                return Err(Error::parse(*l, "bracket outside graph block"));
            }
            Some(_) => pos += 1,
            None => return Err(Error::parse(1, "no `graph` block")),
        }
    };

    let mut nodes: Vec<Block> = Vec::new();
    let mut edges: Vec<Block> = Vec::new();
    loop {
        let Some((tok, l)) = tokens.get(pos) else {
            return Err(Error::parse(graph_line, "unbalanced brackets: graph never closed"));
        };
        pos += 1;
        match tok {
            Token::Close => break,
            Token::Key(k) => match tokens.get(pos) {
                Some((Token::Open, bl)) => {
                    pos += 1;
                    let block = read_block(&tokens, &mut pos, *bl)?;
                    match k.as_str() {
                        "node" => nodes.push(block),
                        "edge" => edges.push(block),
                        _ => {}
                    }
                }
                Some(_) => pos += 1,
                None => return Err(Error::parse(*l, format!("key `{k}` has no value"))),
            },
            _ => return Err(Error::parse(*l, "expected a key inside graph")),
        }
    }
    if let Some((_, l)) = tokens.get(pos) {
        return Err(Error::parse(*l, "unbalanced brackets: content after graph block"));
    }

    let mut b = GraphBuilder::new();
    let mut by_id: HashMap<String, usize> = HashMap::new();
    let mut values: Vec<Option<String>> = Vec::new();
    for node in &nodes {
        let id = node
            .scalars
            .get("id")
            .ok_or_else(|| Error::parse(node.line, "node without id"))?;
        let name = node.scalars.get("label").unwrap_or(id);
        if by_id.contains_key(id) {
            return Err(Error::parse(node.line, format!("duplicate node id {id}")));
        }
        // distinct names are required by the builder; fall back to the id
        let name = if b.lookup(name).is_some() { id } else { name };
        let idx = b.node(name);
        by_id.insert(id.clone(), idx);
        values.push(node.scalars.get("value").cloned());
    }
    for edge in &edges {
        let end = |key: &str| -> Result<usize> {
            let id = edge
                .scalars
                .get(key)
                .ok_or_else(|| Error::parse(edge.line, format!("edge without {key}")))?;
            by_id
                .get(id)
                .copied()
                .ok_or_else(|| Error::parse(edge.line, format!("edge refers to unknown node {id}")))
        };
        let (s, t) = (end("source")?, end("target")?);
        b.edge_by_index(s, t);
    }
    let mut parsed = b.build();
    if values.iter().any(Option::is_some) {
        let names = parsed.graph.node_names().to_vec();
        let labels: Vec<String> = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingLabel(names[i].clone())))
            .collect::<Result<_>>()?;
        parsed.graph = parsed.graph.with_label_strings(&labels)?;
    }
    Ok(parsed)
}
