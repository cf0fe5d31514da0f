use algebra::BoundQuiver;
use std::ops::Deref;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Direct,
    Inverse,
}

/// One step of a walk: an arrow traversed forwards or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub arrow: usize,
    pub direction: Direction,
}

impl Letter {
    pub fn direct(arrow: usize) -> Letter {
        Letter { arrow, direction: Direction::Direct }
    }

    pub fn inverse(arrow: usize) -> Letter {
        Letter { arrow, direction: Direction::Inverse }
    }

    pub fn opposite(self) -> Letter {
        let direction = match self.direction {
            Direction::Direct => Direction::Inverse,
            Direction::Inverse => Direction::Direct,
        };
        Letter { arrow: self.arrow, direction }
    }

    pub fn start(&self, q: &BoundQuiver) -> usize {
        match self.direction {
            Direction::Direct => q.arrow(self.arrow).source,
            Direction::Inverse => q.arrow(self.arrow).target,
        }
    }

    pub fn end(&self, q: &BoundQuiver) -> usize {
        match self.direction {
            Direction::Direct => q.arrow(self.arrow).target,
            Direction::Inverse => q.arrow(self.arrow).source,
        }
    }

    pub fn token(&self, q: &BoundQuiver) -> String {
        match self.direction {
            Direction::Direct => q.arrow(self.arrow).name.clone(),
            Direction::Inverse => format!("{}-", q.arrow(self.arrow).name),
        }
    }
}

/// A composable walk on the quiver. The base vertex makes trivial walks
/// unambiguous; for non-trivial walks it always equals the first letter's
/// start.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    base: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("empty walk (write '@vertex' for a trivial walk)")]
    Empty,
    #[error("'@{0}' must be the only token of a trivial walk")]
    MixedTrivial(String),
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("unknown arrow '{0}'")]
    UnknownArrow(String),
    #[error("letters {index} and {next} do not compose: '{a}' ends at '{at}' but '{b}' starts at '{bs}'")]
    NotComposable { index: usize, next: usize, a: String, at: String, b: String, bs: String },
}

impl Word {
    pub fn trivial(q: &BoundQuiver, vertex: usize) -> Word {
        assert!(vertex < q.vertex_count());
        Word { letters: Vec::new(), base: vertex }
    }

    pub fn from_letters(q: &BoundQuiver, letters: Vec<Letter>) -> Result<Word, WalkError> {
        if letters.is_empty() {
            return Err(WalkError::Empty);
        }
        for i in 0..letters.len() - 1 {
            let (a, b) = (letters[i], letters[i + 1]);
            if a.end(q) != b.start(q) {
                return Err(WalkError::NotComposable {
                    index: i,
                    next: i + 1,
                    a: a.token(q),
                    at: q.vertices()[a.end(q)].clone(),
                    b: b.token(q),
                    bs: q.vertices()[b.start(q)].clone(),
                });
            }
        }
        let base = letters[0].start(q);
        Ok(Word { letters, base })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn start(&self) -> usize {
        self.base
    }

    pub fn end(&self, q: &BoundQuiver) -> usize {
        self.letters.last().map(|l| l.end(q)).unwrap_or(self.base)
    }

    /// Vertex at position `i`, for `i` in `0..=len()`.
    pub fn vertex_at(&self, q: &BoundQuiver, i: usize) -> usize {
        if i == 0 {
            self.base
        } else {
            self.letters[i - 1].end(q)
        }
    }

    pub fn vertices(&self, q: &BoundQuiver) -> Vec<usize> {
        (0..=self.len()).map(|i| self.vertex_at(q, i)).collect()
    }

    /// Counts the walk's vertex positions per quiver vertex (all len()+1 of
    /// them).
    pub fn dimension_vector(&self, q: &BoundQuiver) -> Vec<usize> {
        let mut dims = vec![0usize; q.vertex_count()];
        for i in 0..=self.len() {
            dims[self.vertex_at(q, i)] += 1;
        }
        dims
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[1] != w[0].opposite())
    }

    /// The same walk traversed backwards.
    pub fn reverse(&self, q: &BoundQuiver) -> Word {
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.opposite()).collect();
        let base = self.end(q);
        Word { letters, base }
    }

    pub fn serialize(&self, q: &BoundQuiver) -> String {
        if self.letters.is_empty() {
            return format!("@{}", q.vertices()[self.base]);
        }
        self.letters.iter().map(|l| l.token(q)).collect::<Vec<_>>().join(" ")
    }
}

/// Parses the walk syntax: space-separated letter tokens, `name` for an arrow
/// traversed forwards and `name-` backwards, or `@vertex` alone for a trivial
/// walk.
pub fn parse_walk(q: &BoundQuiver, text: &str) -> Result<Word, WalkError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(WalkError::Empty);
    }
    if let Some(v) = tokens[0].strip_prefix('@') {
        if tokens.len() > 1 {
            return Err(WalkError::MixedTrivial(v.to_string()));
        }
        let vertex =
            q.vertex_index(v).ok_or_else(|| WalkError::UnknownVertex(v.to_string()))?;
        return Ok(Word::trivial(q, vertex));
    }
    let mut letters = Vec::with_capacity(tokens.len());
    for tok in tokens {
        let (name, direction) = match tok.strip_suffix('-') {
            Some(name) => (name, Direction::Inverse),
            None => (tok, Direction::Direct),
        };
        let arrow =
            q.arrow_index(name).ok_or_else(|| WalkError::UnknownArrow(tok.to_string()))?;
        letters.push(Letter { arrow, direction });
    }
    Word::from_letters(q, letters)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StringError {
    #[error("walk is not reduced: letter {position} is immediately undone")]
    NotReduced { position: usize },
    #[error("walk passes through the zero relation '{relation}'")]
    HitsRelation { relation: String },
}

/// A reduced walk avoiding all zero relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringWord {
    word: Word,
}

impl Deref for StringWord {
    type Target = Word;
    fn deref(&self) -> &Word {
        &self.word
    }
}

impl StringWord {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }
}

/// Finds a zero relation inside a letter sequence. Directed subpaths of a
/// walk live inside maximal same-direction runs; runs of backward letters are
/// matched against the relations in reversed order.
fn first_relation_hit(q: &BoundQuiver, letters: &[Letter]) -> Option<Vec<usize>> {
    let mut i = 0;
    while i < letters.len() {
        let dir = letters[i].direction;
        let mut j = i;
        while j < letters.len() && letters[j].direction == dir {
            j += 1;
        }
        let mut run: Vec<usize> = letters[i..j].iter().map(|l| l.arrow).collect();
        if dir == Direction::Inverse {
            run.reverse();
        }
        if let Some((off, len)) = q.find_relation(&run) {
            return Some(run[off..off + len].to_vec());
        }
        i = j;
    }
    None
}

fn relation_name(q: &BoundQuiver, rel: &[usize]) -> String {
    rel.iter().map(|&a| q.arrow(a).name.clone()).collect::<Vec<_>>().join(" ")
}

pub fn check_string(q: &BoundQuiver, w: &Word) -> Result<StringWord, StringError> {
    for (i, pair) in w.letters().windows(2).enumerate() {
        if pair[1] == pair[0].opposite() {
            return Err(StringError::NotReduced { position: i });
        }
    }
    if let Some(rel) = first_relation_hit(q, w.letters()) {
        return Err(StringError::HitsRelation { relation: relation_name(q, &rel) });
    }
    Ok(StringWord { word: w.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BandError {
    #[error("a band cannot be trivial")]
    Trivial,
    #[error("walk does not close up: ends at '{end}' but starts at '{start}'")]
    NotClosed { start: String, end: String },
    #[error("walk is not cyclically reduced: letter {position} is undone by its cyclic successor")]
    NotReduced { position: usize },
    #[error("a band must use both arrow directions")]
    OneDirectional,
    #[error("walk is a proper power of its rotation by {period}")]
    NotPrimitive { period: usize },
    #[error("some cyclic repetition passes through the zero relation '{relation}'")]
    HitsRelation { relation: String },
}

/// A cyclically reduced, cyclically composable, primitive walk that uses both
/// directions and avoids relations in every power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandWord {
    word: Word,
}

impl Deref for BandWord {
    type Target = Word;
    fn deref(&self) -> &Word {
        &self.word
    }
}

pub fn check_band(q: &BoundQuiver, w: &Word) -> Result<BandWord, BandError> {
    let n = w.len();
    if n == 0 {
        return Err(BandError::Trivial);
    }
    if w.end(q) != w.start() {
        return Err(BandError::NotClosed {
            start: q.vertices()[w.start()].clone(),
            end: q.vertices()[w.end(q)].clone(),
        });
    }
    let letters = w.letters();
    for i in 0..n {
        if letters[(i + 1) % n] == letters[i].opposite() {
            return Err(BandError::NotReduced { position: i });
        }
    }
    let has = |d: Direction| letters.iter().any(|l| l.direction == d);
    if !has(Direction::Direct) || !has(Direction::Inverse) {
        return Err(BandError::OneDirectional);
    }
    for period in 1..n {
        if n.is_multiple_of(period) && (0..n).all(|i| letters[i] == letters[(i + period) % n]) {
            return Err(BandError::NotPrimitive { period });
        }
    }
    // Every cyclic window must avoid relations, so check enough repetitions to
    // cover all windows of the longest relation.
    let reps = 2 + q.max_relation_len().div_ceil(n);
    let repeated: Vec<Letter> =
        std::iter::repeat_n(letters, reps).flatten().copied().collect();
    if let Some(rel) = first_relation_hit(q, &repeated) {
        return Err(BandError::HitsRelation { relation: relation_name(q, &rel) });
    }
    Ok(BandWord { word: w.clone() })
}

impl BandWord {
    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Rotates the cyclic walk left by `k` letters.
    pub fn rotate(&self, q: &BoundQuiver, k: usize) -> BandWord {
        let n = self.word.len();
        let k = k % n;
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&self.word.letters[k..]);
        letters.extend_from_slice(&self.word.letters[..k]);
        let base = self.word.vertex_at(q, k);
        BandWord { word: Word { letters, base } }
    }

    /// Rotation chosen deterministically: lexicographically least sequence of
    /// (arrow name, direction) with forwards before backwards. Returns the
    /// rotation offset together with the rotated walk.
    pub fn canonical_rotation(&self, q: &BoundQuiver) -> (usize, BandWord) {
        let n = self.word.len();
        let key = |b: &BandWord| -> Vec<(String, Direction)> {
            b.word.letters.iter().map(|l| (q.arrow(l.arrow).name.clone(), l.direction)).collect()
        };
        let mut best = 0;
        let mut best_key = key(self);
        for k in 1..n {
            let cand = self.rotate(q, k);
            let cand_key = key(&cand);
            if cand_key < best_key {
                best_key = cand_key;
                best = k;
            }
        }
        (best, self.rotate(q, best))
    }

    /// The walk consisting of `r` full turns followed by the first `m`
    /// letters. Always a valid walk; `r >= 1` and `m < len()`.
    pub fn power_with_prefix(&self, r: usize, m: usize) -> Word {
        let n = self.word.len();
        assert!(r >= 1, "need at least one full turn");
        assert!(m < n, "prefix must be shorter than the full turn");
        let mut letters = Vec::with_capacity(r * n + m);
        for _ in 0..r {
            letters.extend_from_slice(&self.word.letters);
        }
        letters.extend_from_slice(&self.word.letters[..m]);
        Word { letters, base: self.word.base }
    }

    /// Counts the `len()` cyclic vertex positions per quiver vertex.
    pub fn dimension_vector(&self, q: &BoundQuiver) -> Vec<usize> {
        let mut dims = vec![0usize; q.vertex_count()];
        for i in 0..self.word.len() {
            dims[self.word.vertex_at(q, i)] += 1;
        }
        dims
    }

    /// The reverse walk, which is again a band.
    pub fn reverse(&self, q: &BoundQuiver) -> BandWord {
        let rev = self.word.reverse(q);
        // The reverse starts at the same vertex the original ended, which for
        // a closed walk is the base, so it is cyclically composable again.
        BandWord { word: rev }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubwordKind {
    Submodule,
    Factor,
}

/// A contiguous occurrence inside a walk, spanning vertex positions
/// `start..=end` and letters `start..end`. For cyclic occurrences the
/// positions are taken modulo the walk length and `end` may run past it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubstringOccurrence {
    pub start: usize,
    pub end: usize,
    pub kind: SubwordKind,
    pub cyclic: bool,
}

/// Occurrences of subwords closed under the module action (`Submodule`) or
/// whose complement is (`Factor`). A subword is a submodule exactly when no
/// boundary letter maps it outside: the letter before must point in, the
/// letter after must point back in. `proper` drops the full walk.
pub fn substrings(w: &StringWord, kind: SubwordKind, proper: bool) -> Vec<SubstringOccurrence> {
    let n = w.len();
    let letters = w.letters();
    let (left_dir, right_dir) = match kind {
        SubwordKind::Submodule => (Direction::Direct, Direction::Inverse),
        SubwordKind::Factor => (Direction::Inverse, Direction::Direct),
    };
    let mut out = Vec::new();
    for start in 0..=n {
        if start > 0 && letters[start - 1].direction != left_dir {
            continue;
        }
        for end in start..=n {
            if letters.get(end).is_some_and(|l| l.direction != right_dir) {
                continue;
            }
            if proper && start == 0 && end == n {
                continue;
            }
            out.push(SubstringOccurrence { start, end, kind, cyclic: false });
        }
    }
    out
}

/// Cyclic analogue for bands: an occurrence starts at position `p` and spans
/// `len` vertices; both boundary letters always exist, so spanning all
/// positions is impossible.
pub fn cyclic_substrings(b: &BandWord, kind: SubwordKind) -> Vec<SubstringOccurrence> {
    let n = b.len();
    let letters = b.letters();
    let (left_dir, right_dir) = match kind {
        SubwordKind::Submodule => (Direction::Direct, Direction::Inverse),
        SubwordKind::Factor => (Direction::Inverse, Direction::Direct),
    };
    let mut out = Vec::new();
    for p in 0..n {
        if letters[(p + n - 1) % n].direction != left_dir {
            continue;
        }
        for len in 1..=n {
            if letters[(p + len - 1) % n].direction != right_dir {
                continue;
            }
            out.push(SubstringOccurrence { start: p, end: p + len - 1, kind, cyclic: true });
        }
    }
    out
}

/// All strings of length at most `max_len`, including the trivial string at
/// each vertex, by depth-first extension (prefixes of strings are strings, so
/// pruning on the extended walk is exact). Deterministic order: trivial
/// strings by vertex, then the letter tree in arrow-index order with forward
/// letters before backward ones.
pub fn enumerate_strings(q: &BoundQuiver, max_len: usize) -> Vec<StringWord> {
    let mut out: Vec<StringWord> = (0..q.vertex_count())
        .map(|v| check_string(q, &Word::trivial(q, v)).expect("trivial walk is a string"))
        .collect();
    if max_len == 0 {
        return out;
    }
    fn extensions(q: &BoundQuiver, end: usize) -> Vec<Letter> {
        let mut cand = Vec::new();
        for a in q.arrows_from(end) {
            cand.push(Letter::direct(a));
        }
        for a in q.arrows_into(end) {
            cand.push(Letter::inverse(a));
        }
        cand
    }
    // Seed with the single letters out of every vertex, in reverse so the
    // stack pops them in order.
    let mut stack: Vec<Vec<Letter>> = Vec::new();
    for v in (0..q.vertex_count()).rev() {
        for l in extensions(q, v).into_iter().rev() {
            stack.push(vec![l]);
        }
    }
    while let Some(letters) = stack.pop() {
        let word = Word::from_letters(q, letters.clone()).expect("extensions compose");
        if let Ok(s) = check_string(q, &word) {
            if letters.len() < max_len {
                let end = word.end(q);
                for l in extensions(q, end).into_iter().rev() {
                    let mut next = letters.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
            out.push(s);
        }
    }
    out
}

/// All bands of length at most `max_len`, one representative per rotation
/// class (the canonical rotation). Reverse bands count separately. Built on
/// the string enumeration: every linear subword of a band is a string, so
/// closing up each enumerated string finds every band.
pub fn enumerate_bands(q: &BoundQuiver, max_len: usize) -> Vec<BandWord> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for s in enumerate_strings(q, max_len) {
        if s.is_empty() {
            continue;
        }
        if let Ok(b) = check_band(q, s.word()) {
            let canon = b.canonical_rotation(q).1;
            if seen.insert(canon.serialize(q)) {
                out.push(canon);
            }
        }
    }
    out
}

/// Vertex-count vector of the occurrence, over the host walk.
pub fn occurrence_dimension_vector(
    q: &BoundQuiver,
    host: &Word,
    occ: &SubstringOccurrence,
) -> Vec<usize> {
    let mut dims = vec![0usize; q.vertex_count()];
    let n = host.len();
    for pos in occ.start..=occ.end {
        let pos = if occ.cyclic { pos % n } else { pos };
        dims[host.vertex_at(q, pos)] += 1;
    }
    dims
}
