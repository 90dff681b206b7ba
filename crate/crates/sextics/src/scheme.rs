//! Real schemes: isotopy types of collections of nested ovals in ℝP²,
//! written in Viro notation.
//!
//! Grammar (Unicode with ASCII aliases `<`, `>`, `u`, `empty`):
//!
//! ```text
//! scheme := "∅" | "⟨" body "⟩"
//! body   := term ("⊔" term)*
//! term   := INT | INT "⟨" body "⟩"
//! ```
//!
//! `INT` gives the number of copies of an oval with the given content, so
//! `⟨5 ⊔ 1⟨5⟩⟩` is five empty ovals next to an oval containing five empty
//! ovals. Forests are unordered; parsing canonicalizes by sorting subtrees
//! by (size, rendered text), so rendering is deterministic and
//! parse ∘ render is the identity.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An oval with the ovals directly inside it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Oval {
    children: Vec<Oval>,
}

/// A canonical forest of ovals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RealScheme {
    roots: Vec<Oval>,
}

/// Dividing type of a real curve: I when the real part splits the
/// complexification in two halves, II otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DividingType {
    I,
    II,
}

impl std::fmt::Display for DividingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DividingType::I => write!(f, "I"),
            DividingType::II => write!(f, "II"),
        }
    }
}

impl std::str::FromStr for DividingType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" | "1" => Ok(DividingType::I),
            "II" | "ii" | "2" => Ok(DividingType::II),
            other => Err(Error::input(format!("unknown dividing type `{other}`"))),
        }
    }
}

impl Oval {
    fn new(mut children: Vec<Oval>) -> Self {
        children.sort_by_cached_key(Oval::sort_key);
        Oval { children }
    }

    fn size(&self) -> usize {
        1 + self.children.iter().map(Oval::size).sum::<usize>()
    }

    fn sort_key(&self) -> (usize, String) {
        (self.size(), self.tree_text())
    }

    fn tree_text(&self) -> String {
        if self.children.is_empty() {
            "1".to_string()
        } else {
            format!("1⟨{}⟩", body_text(&self.children, Notation::Unicode))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Notation {
    Unicode,
    Ascii,
}

fn body_text(ovals: &[Oval], notation: Notation) -> String {
    let (open, close, join) = match notation {
        Notation::Unicode => ("⟨", "⟩", "⊔"),
        Notation::Ascii => ("<", ">", "u"),
    };
    let mut terms: Vec<String> = Vec::new();
    let mut i = 0;
    while i < ovals.len() {
        let mut j = i + 1;
        while j < ovals.len() && ovals[j] == ovals[i] {
            j += 1;
        }
        let count = j - i;
        if ovals[i].children.is_empty() {
            terms.push(count.to_string());
        } else {
            terms.push(format!(
                "{count}{open}{}{close}",
                body_text(&ovals[i].children, notation)
            ));
        }
        i = j;
    }
    terms.join(join)
}

impl RealScheme {
    pub fn new(mut roots: Vec<Oval>) -> Self {
        roots.sort_by_cached_key(Oval::sort_key);
        RealScheme { roots }
    }

    pub fn empty() -> Self {
        RealScheme { roots: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Oval] {
        &self.roots
    }
}

impl std::fmt::Display for RealScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", render_viro(self))
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Token {
    Open,
    Close,
    Join,
    Int(usize),
    Empty,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_char() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn next_token(&mut self) -> Result<Option<(usize, Token)>> {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.peek_char() else {
            return Ok(None);
        };
        let tok = match c {
            '⟨' | '<' => Token::Open,
            '⟩' | '>' => Token::Close,
            '⊔' | 'u' => Token::Join,
            '∅' => Token::Empty,
            'e' => {
                if self.src[self.pos..].starts_with("empty") {
                    self.pos += "empty".len();
                    return Ok(Some((start, Token::Empty)));
                }
                return Err(Error::parse(start, "expected `empty`"));
            }
            d if d.is_ascii_digit() => {
                let digits: String = self.src[self.pos..]
                    .chars()
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                self.pos += digits.len();
                let n: usize = digits
                    .parse()
                    .map_err(|_| Error::parse(start, "integer too large"))?;
                return Ok(Some((start, Token::Int(n))));
            }
            other => {
                return Err(Error::parse(
                    start,
                    format!("unexpected character `{other}`"),
                ));
            }
        };
        self.pos += c.len_utf8();
        Ok(Some((start, tok)))
    }

    fn peek_token(&mut self) -> Result<Option<(usize, Token)>> {
        let save = self.pos;
        let tok = self.next_token();
        self.pos = save;
        tok
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        match self.next_token()? {
            Some((_, tok)) if tok == want => Ok(()),
            Some((at, _)) => Err(Error::parse(at, format!("expected {what}"))),
            None => Err(Error::parse(self.src.len(), format!("expected {what}"))),
        }
    }

    fn parse_scheme(&mut self) -> Result<RealScheme> {
        match self.next_token()? {
            Some((_, Token::Empty)) => Ok(RealScheme::empty()),
            Some((_, Token::Open)) => {
                let roots = self.parse_body()?;
                self.expect(Token::Close, "`⟩`")?;
                Ok(RealScheme::new(roots))
            }
            Some((at, _)) => Err(Error::parse(at, "expected `⟨` or `∅`")),
            None => Err(Error::parse(self.src.len(), "empty input")),
        }
    }

    fn parse_body(&mut self) -> Result<Vec<Oval>> {
        let mut ovals = self.parse_term()?;
        while let Some((_, Token::Join)) = self.peek_token()? {
            self.next_token()?;
            ovals.extend(self.parse_term()?);
        }
        Ok(ovals)
    }

    fn parse_term(&mut self) -> Result<Vec<Oval>> {
        match self.next_token()? {
            Some((_, Token::Int(n))) => {
                let children = if let Some((_, Token::Open)) = self.peek_token()? {
                    self.next_token()?;
                    let inner = self.parse_body()?;
                    self.expect(Token::Close, "`⟩`")?;
                    inner
                } else {
                    vec![]
                };
                Ok(vec![Oval::new(children); n])
            }
            Some((at, _)) => Err(Error::parse(at, "expected a count")),
            None => Err(Error::parse(self.src.len(), "expected a count")),
        }
    }
}

/// Parse Viro notation into a canonical scheme.
pub fn parse_viro(text: &str) -> Result<RealScheme> {
    let mut p = Parser::new(text);
    let scheme = p.parse_scheme()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(Error::parse(p.pos, "trailing input"));
    }
    Ok(scheme)
}

/// Canonical Viro text (Unicode).
pub fn render_viro(s: &RealScheme) -> String {
    render_with(s, Notation::Unicode)
}

pub fn render_with(s: &RealScheme, notation: Notation) -> String {
    if s.is_empty() {
        return match notation {
            Notation::Unicode => "∅".to_string(),
            Notation::Ascii => "empty".to_string(),
        };
    }
    let (open, close) = match notation {
        Notation::Unicode => ("⟨", "⟩"),
        Notation::Ascii => ("<", ">"),
    };
    format!("{open}{}{close}", body_text(&s.roots, notation))
}

// ---------------------------------------------------------------------------
// Oval counts and predicates

/// Census of a scheme: oval count, parity split, injective pairs, depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub ovals: u32,
    pub even: u32,
    pub odd: u32,
    pub injective_pairs: u32,
    pub max_depth: u32,
}

pub fn counts(s: &RealScheme) -> Counts {
    fn walk(ovals: &[Oval], depth: u32, c: &mut Counts) {
        for o in ovals {
            c.ovals += 1;
            if depth.is_multiple_of(2) {
                c.even += 1;
            } else {
                c.odd += 1;
            }
            c.injective_pairs += depth;
            c.max_depth = c.max_depth.max(depth);
            walk(&o.children, depth + 1, c);
        }
    }
    let mut c = Counts {
        ovals: 0,
        even: 0,
        odd: 0,
        injective_pairs: 0,
        max_depth: 0,
    };
    walk(&s.roots, 0, &mut c);
    c
}

/// χ(B) for the non-orientable half B of ℝP² ∖ ℝC: the union of the regions
/// of even region-depth, starting from the outer region that carries the
/// Möbius band. Closed form: (1 − #roots) + Σ over odd-depth ovals O of
/// (1 − #children(O)).
pub fn euler_char_nonorientable_half(s: &RealScheme) -> Result<i64> {
    if s.is_empty() {
        return Err(Error::input(
            "empty scheme: the halves are handled by the translation directly",
        ));
    }
    fn walk(ovals: &[Oval], depth: u32, acc: &mut i64) {
        for o in ovals {
            if depth % 2 == 1 {
                *acc += 1 - o.children.len() as i64;
            }
            walk(&o.children, depth + 1, acc);
        }
    }
    let mut chi = 1 - s.roots.len() as i64;
    walk(&s.roots, 0, &mut chi);
    Ok(chi)
}

/// Independent oracle for χ(B): enumerate the complementary regions with
/// their depths and add up per-region Euler characteristics.
pub fn region_decomposition_chi(s: &RealScheme) -> Result<i64> {
    if s.is_empty() {
        return Err(Error::input("empty scheme has a single region"));
    }
    // the region inside an oval of oval-depth d has region-depth d+1
    let mut regions: Vec<(u32, i64)> = vec![(0, 1 - s.roots.len() as i64)];
    fn walk(ovals: &[Oval], oval_depth: u32, regions: &mut Vec<(u32, i64)>) {
        for o in ovals {
            regions.push((oval_depth + 1, 1 - o.children.len() as i64));
            walk(&o.children, oval_depth + 1, regions);
        }
    }
    walk(&s.roots, 0, &mut regions);
    Ok(regions
        .iter()
        .filter(|(d, _)| d % 2 == 0)
        .map(|(_, chi)| chi)
        .sum())
}

/// Translated invariants of a candidate class (a, t, δ, r).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TranslatedInvariants {
    pub a: i64,
    pub t: i64,
    pub delta: u8,
    pub r: Option<u32>,
}

/// Translate (scheme, dividing type, r) into the invariants (a, t, δ, r):
/// nonempty schemes get a = 11 − l, t = 9 + χ(B), δ = 0 iff dividing;
/// the empty scheme is (10, 9, 0, 0).
pub fn scheme_to_invariants(
    s: &RealScheme,
    divtype: DividingType,
    r: Option<u32>,
) -> Result<TranslatedInvariants> {
    if divtype == DividingType::II && r.is_some() {
        return Err(Error::input(
            "crossing count r only applies to dividing type I",
        ));
    }
    if s.is_empty() {
        if divtype == DividingType::I {
            return Err(Error::input("the empty scheme is non-dividing"));
        }
        return Ok(TranslatedInvariants {
            a: 10,
            t: 9,
            delta: 0,
            r: Some(0),
        });
    }
    if divtype == DividingType::I && r.is_none() {
        return Err(Error::input("dividing type I requires a crossing count r"));
    }
    let c = counts(s);
    let chi = euler_char_nonorientable_half(s)?;
    Ok(TranslatedInvariants {
        a: 11 - c.ovals as i64,
        t: 9 + chi,
        delta: match divtype {
            DividingType::I => 0,
            DividingType::II => 1,
        },
        r,
    })
}

/// Harnack bound for the normalization: l ≤ 11 − 2m, with equality only for
/// dividing curves.
pub fn harnack_check(l: u32, m: u32, divtype: DividingType) -> bool {
    let bound = 11i64 - 2 * m as i64;
    let l = l as i64;
    l <= bound && (l != bound || divtype == DividingType::I)
}

/// Arnold's congruence o_even − o_odd ≡ 9 − 2r (mod 4) for dividing curves.
pub fn arnold_congruence(s: &RealScheme, r: u32) -> bool {
    let c = counts(s);
    (c.even as i64 - c.odd as i64 - 9 + 2 * r as i64).rem_euclid(4) == 0
}

/// For dividing curves without injective pairs, l = 9 − 2r; vacuous when an
/// injective pair exists.
pub fn no_injective_pairs_rule(s: &RealScheme, r: u32) -> bool {
    let c = counts(s);
    c.injective_pairs > 0 || c.ovals as i64 == 9 - 2 * r as i64
}

/// Rokhlin's complex orientation formula 2(Π₋ − Π₊) + l = 9 − 2r.
/// The pair counts are inputs; orientations are not computable from a scheme.
pub fn rokhlin_identity(pi_minus: i64, pi_plus: i64, l: i64, r: i64) -> bool {
    2 * (pi_minus - pi_plus) + l == 9 - 2 * r
}

// ---------------------------------------------------------------------------
// Enumeration

/// All canonical schemes with at most `max_ovals` ovals and at most
/// `max_depth` nesting levels (a flat forest has one level), including ∅.
/// Deterministic order: (oval count, rendered text).
pub fn enumerate_schemes(max_ovals: u32, max_depth: u32) -> Vec<RealScheme> {
    let mut out: Vec<RealScheme> = Vec::new();
    for n in 0..=max_ovals {
        for forest in forests_exact(n as usize, max_depth) {
            out.push(RealScheme::new(forest));
        }
    }
    out.sort_by_cached_key(|s| (counts(s).ovals, render_viro(s)));
    out
}

/// Canonical forests with exactly `n` ovals and at most `depth` levels,
/// generated as non-increasing tree sequences.
fn forests_exact(n: usize, depth: u32) -> Vec<Vec<Oval>> {
    fn trees(n: usize, depth: u32) -> Vec<Oval> {
        if n == 0 || depth == 0 {
            return vec![];
        }
        forests_bounded(n - 1, depth - 1, None)
            .into_iter()
            .map(Oval::new)
            .collect()
    }
    fn forests_bounded(n: usize, depth: u32, max_key: Option<(usize, String)>) -> Vec<Vec<Oval>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for size in (1..=n).rev() {
            for tree in trees(size, depth) {
                let key = tree.sort_key();
                if let Some(bound) = &max_key {
                    if key > *bound {
                        continue;
                    }
                }
                for mut rest in forests_bounded(n - size, depth, Some(key.clone())) {
                    let mut forest = vec![tree.clone()];
                    forest.append(&mut rest);
                    out.push(forest);
                }
            }
        }
        out
    }
    forests_bounded(n, depth, None)
}

// ---------------------------------------------------------------------------
// JSON form: nested arrays of child lists, e.g. ⟨1⟨8⟩⟩ = [[[],[],…]]

impl Serialize for Oval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.children.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Oval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Oval::new(Vec::<Oval>::deserialize(d)?))
    }
}

impl Serialize for RealScheme {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.roots.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealScheme {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(RealScheme::new(Vec::<Oval>::deserialize(d)?))
    }
}
