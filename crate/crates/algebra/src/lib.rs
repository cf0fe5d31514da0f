use std::collections::HashMap;

pub const DEFAULT_PATH_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A quiver with monomial zero relations. The vertex declaration order fixes
/// the coordinate order of every vector handed out downstream, so it is kept
/// exactly as parsed.
#[derive(Clone, Debug)]
pub struct BoundQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Vec<usize>>,
    vertex_lookup: HashMap<String, usize>,
    arrow_lookup: HashMap<String, usize>,
}

impl PartialEq for BoundQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.arrows == other.arrows
            && self.relations == other.relations
    }
}

impl Eq for BoundQuiver {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("path length cap {cap} exceeded while listing paths out of vertex '{vertex}' (relations do not bound path length)")]
pub struct PathCapExceeded {
    pub vertex: String,
    pub cap: usize,
}

impl BoundQuiver {
    /// Programmatic constructor used by tests and generated quivers; the file
    /// format goes through `parse_algebra` instead.
    pub fn build(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[&[&str]],
    ) -> Result<BoundQuiver, String> {
        let mut q = BoundQuiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
            vertex_lookup: HashMap::new(),
            arrow_lookup: HashMap::new(),
        };
        for v in vertices {
            q.push_vertex(v).map_err(|e| e.to_string())?;
        }
        for (name, src, tgt) in arrows {
            q.push_arrow(name, src, tgt).map_err(|e| e.to_string())?;
        }
        for rel in relations {
            q.push_relation(rel).map_err(|e| e.to_string())?;
        }
        Ok(q)
    }

    fn push_vertex(&mut self, name: &str) -> Result<(), String> {
        validate_ident(name)?;
        if self.vertex_lookup.contains_key(name) {
            return Err(format!("duplicate vertex '{name}'"));
        }
        self.vertex_lookup.insert(name.to_string(), self.vertices.len());
        self.vertices.push(name.to_string());
        Ok(())
    }

    fn push_arrow(&mut self, name: &str, src: &str, tgt: &str) -> Result<(), String> {
        validate_ident(name)?;
        if self.arrow_lookup.contains_key(name) {
            return Err(format!("duplicate arrow '{name}'"));
        }
        let source = *self
            .vertex_lookup
            .get(src)
            .ok_or_else(|| format!("unknown vertex '{src}' in arrow '{name}'"))?;
        let target = *self
            .vertex_lookup
            .get(tgt)
            .ok_or_else(|| format!("unknown vertex '{tgt}' in arrow '{name}'"))?;
        self.arrow_lookup.insert(name.to_string(), self.arrows.len());
        self.arrows.push(Arrow { name: name.to_string(), source, target });
        Ok(())
    }

    fn push_relation(&mut self, names: &[&str]) -> Result<(), String> {
        if names.len() < 2 {
            return Err("zero relation must be a path of length at least 2".to_string());
        }
        let mut path = Vec::with_capacity(names.len());
        for name in names {
            let idx = *self
                .arrow_lookup
                .get(*name)
                .ok_or_else(|| format!("unknown arrow '{name}' in zero relation"))?;
            path.push(idx);
        }
        for pair in path.windows(2) {
            let (a, b) = (&self.arrows[pair[0]], &self.arrows[pair[1]]);
            if a.target != b.source {
                return Err(format!(
                    "zero relation is not a composable path: '{}' ends at '{}' but '{}' starts at '{}'",
                    a.name, self.vertices[a.target], b.name, self.vertices[b.source]
                ));
            }
        }
        self.relations.push(path);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, idx: usize) -> &Arrow {
        &self.arrows[idx]
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrow_lookup.get(name).copied()
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(i, _)| i)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
            .map(|(i, _)| i)
    }

    /// Whether the two-arrow path `ab` is declared zero. Monomial relations of
    /// length > 2 do not kill a length-2 path.
    pub fn has_relation2(&self, a: usize, b: usize) -> bool {
        self.relations.iter().any(|r| r.len() == 2 && r[0] == a && r[1] == b)
    }

    /// Whether some declared relation occurs as a contiguous subpath.
    pub fn contains_relation(&self, path: &[usize]) -> bool {
        self.find_relation(path).is_some()
    }

    /// Leftmost relation occurrence in `path`, as (offset, relation length).
    pub fn find_relation(&self, path: &[usize]) -> Option<(usize, usize)> {
        for off in 0..path.len() {
            for rel in &self.relations {
                if off + rel.len() <= path.len() && &path[off..off + rel.len()] == rel.as_slice() {
                    return Some((off, rel.len()));
                }
            }
        }
        None
    }

    /// Whether some relation sits at the very end of `path`; enough for
    /// incremental path extension.
    pub fn relation_at_suffix(&self, path: &[usize]) -> bool {
        self.relations
            .iter()
            .any(|r| r.len() <= path.len() && &path[path.len() - r.len()..] == r.as_slice())
    }

    pub fn max_relation_len(&self) -> usize {
        self.relations.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    pub fn path_end(&self, start: usize, path: &[usize]) -> usize {
        path.last().map(|&a| self.arrows[a].target).unwrap_or(start)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("vertices:");
        for v in &self.vertices {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        for a in &self.arrows {
            out.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.name, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        for rel in &self.relations {
            out.push_str("zero:");
            for &a in rel {
                out.push(' ');
                out.push_str(&self.arrows[a].name);
            }
            out.push('\n');
        }
        out
    }
}

fn validate_ident(s: &str) -> Result<(), String> {
    if s.is_empty() {
        return Err("empty identifier".to_string());
    }
    if s.contains(char::is_whitespace) || s.contains(':') || s.contains('#') || s == "->" {
        return Err(format!("invalid identifier '{s}'"));
    }
    if s.ends_with('-') || s.starts_with('@') {
        return Err(format!(
            "invalid identifier '{s}' (trailing '-' and leading '@' are reserved for walk syntax)"
        ));
    }
    Ok(())
}

/// Parses the line-based algebra format: one `vertices:` line, then `arrow
/// name: src -> tgt` lines, then optional `zero: a b ...` lines. `#` starts a
/// comment anywhere.
pub fn parse_algebra(text: &str) -> Result<BoundQuiver, ParseError> {
    let mut q = BoundQuiver {
        vertices: Vec::new(),
        arrows: Vec::new(),
        relations: Vec::new(),
        vertex_lookup: HashMap::new(),
        arrow_lookup: HashMap::new(),
    };
    let mut vertices_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| ParseError { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            if vertices_seen {
                return Err(err("vertices declared more than once".to_string()));
            }
            vertices_seen = true;
            let names: Vec<&str> = rest.split_whitespace().collect();
            if names.is_empty() {
                return Err(err("empty vertex list".to_string()));
            }
            for name in names {
                q.push_vertex(name).map_err(err)?;
            }
        } else if let Some(rest) = line.strip_prefix("arrow ") {
            if !vertices_seen {
                return Err(err("arrows must come after the vertices line".to_string()));
            }
            let (name, spec) = rest
                .split_once(':')
                .ok_or_else(|| err("expected 'arrow name: src -> tgt'".to_string()))?;
            let (src, tgt) = spec
                .split_once("->")
                .ok_or_else(|| err("expected 'arrow name: src -> tgt'".to_string()))?;
            let (name, src, tgt) = (name.trim(), src.trim(), tgt.trim());
            if src.split_whitespace().count() != 1 || tgt.split_whitespace().count() != 1 {
                return Err(err("expected 'arrow name: src -> tgt'".to_string()));
            }
            q.push_arrow(name, src, tgt).map_err(err)?;
        } else if let Some(rest) = line.strip_prefix("zero:") {
            if !vertices_seen {
                return Err(err("relations must come after the vertices line".to_string()));
            }
            let names: Vec<&str> = rest.split_whitespace().collect();
            q.push_relation(&names).map_err(err)?;
        } else {
            return Err(err(format!("unrecognized line '{line}'")));
        }
    }
    if !vertices_seen {
        return Err(ParseError { line: text.lines().count().max(1), message: "no vertices line".to_string() });
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    InDegree,
    OutDegree,
    RightComposition,
    LeftComposition,
}

impl Rule {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::InDegree => "in-degree",
            Rule::OutDegree => "out-degree",
            Rule::RightComposition => "right-composition",
            Rule::LeftComposition => "left-composition",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

/// Checks the special biserial conditions: at most two arrows in and out of
/// each vertex, and whenever two arrows continue (or precede) a third, at
/// least one of the two compositions is a declared zero relation.
pub fn check_special_biserial(q: &BoundQuiver) -> Diagnostics {
    let mut violations = Vec::new();
    for v in 0..q.vertex_count() {
        let incoming: Vec<usize> = q.arrows_into(v).collect();
        let outgoing: Vec<usize> = q.arrows_from(v).collect();
        if incoming.len() > 2 {
            let mut witness = vec![q.vertices()[v].clone()];
            witness.extend(incoming.iter().map(|&a| q.arrow(a).name.clone()));
            violations.push(Violation { rule: Rule::InDegree, witness });
        }
        if outgoing.len() > 2 {
            let mut witness = vec![q.vertices()[v].clone()];
            witness.extend(outgoing.iter().map(|&a| q.arrow(a).name.clone()));
            violations.push(Violation { rule: Rule::OutDegree, witness });
        }
    }
    for alpha in 0..q.arrows().len() {
        let v = q.arrow(alpha).target;
        let outs: Vec<usize> = q.arrows_from(v).collect();
        for i in 0..outs.len() {
            for j in (i + 1)..outs.len() {
                let (g, d) = (outs[i], outs[j]);
                if !q.has_relation2(alpha, g) && !q.has_relation2(alpha, d) {
                    violations.push(Violation {
                        rule: Rule::RightComposition,
                        witness: vec![
                            q.arrow(alpha).name.clone(),
                            q.arrow(g).name.clone(),
                            q.arrow(d).name.clone(),
                        ],
                    });
                }
            }
        }
    }
    for gamma in 0..q.arrows().len() {
        let v = q.arrow(gamma).source;
        let ins: Vec<usize> = q.arrows_into(v).collect();
        for i in 0..ins.len() {
            for j in (i + 1)..ins.len() {
                let (a, b) = (ins[i], ins[j]);
                if !q.has_relation2(a, gamma) && !q.has_relation2(b, gamma) {
                    violations.push(Violation {
                        rule: Rule::LeftComposition,
                        witness: vec![
                            q.arrow(a).name.clone(),
                            q.arrow(b).name.clone(),
                            q.arrow(gamma).name.clone(),
                        ],
                    });
                }
            }
        }
    }
    Diagnostics { passed: violations.is_empty(), violations }
}

/// Lists every relation-avoiding path out of `v` (including the lazy path) in
/// breadth-first order. The basis of the projective at `v` for a monomial
/// algebra.
pub fn projective_paths(q: &BoundQuiver, v: usize) -> Result<Vec<Vec<usize>>, PathCapExceeded> {
    projective_paths_with_cap(q, v, DEFAULT_PATH_CAP)
}

pub fn projective_paths_with_cap(
    q: &BoundQuiver,
    v: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>, PathCapExceeded> {
    let mut paths: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let end = q.path_end(v, p);
            for a in q.arrows_from(end) {
                let mut ext = p.clone();
                ext.push(a);
                if q.relation_at_suffix(&ext) {
                    continue;
                }
                if ext.len() > cap {
                    return Err(PathCapExceeded { vertex: q.vertices()[v].clone(), cap });
                }
                next.push(ext);
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(paths)
}

/// Per-vertex dimensions of the projective at `v`.
pub fn projective_dimension_vector(
    q: &BoundQuiver,
    v: usize,
) -> Result<Vec<usize>, PathCapExceeded> {
    let mut dims = vec![0usize; q.vertex_count()];
    for p in projective_paths(q, v)? {
        dims[q.path_end(v, &p)] += 1;
    }
    Ok(dims)
}
