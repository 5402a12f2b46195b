//! Group families, canonical element encodings and symmetric generating sets.
//!
//! Every element has exactly one encoding, so encodings can be compared and
//! hashed directly. The Cayley graph convention used throughout the crate is
//! `x ~ s·x` for `s` in the generating set (left multiplication).

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Description of a supported group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GroupSpec {
    /// Free group on `q` letters.
    Free { q: u32 },
    /// The lattice ℤ^d with the unit vectors.
    FreeAbelian { d: u32 },
    /// Dihedral group of order 2n, generated by a rotation and a reflection.
    Dihedral { n: u32 },
    /// Discrete Heisenberg group of unipotent 3×3 integer matrices.
    Heisenberg,
    /// Lamplighter group ℤ/2 ≀ ℤ with the standard wreath-product generators.
    Lamplighter,
    /// Finite group given by its multiplication table (identity at index 0).
    CayleyTable {
        table: Vec<Vec<u32>>,
        generators: Vec<u32>,
    },
}

impl GroupSpec {
    /// ℤ/n as a Cayley table with generators {1, n-1}.
    pub fn cyclic(n: u32) -> GroupSpec {
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        let mut generators = Vec::new();
        if n > 1 {
            generators.push(1);
            if n > 2 {
                generators.push(n - 1);
            }
        }
        GroupSpec::CayleyTable { table, generators }
    }

    /// Parses the JSON group-file format
    /// `{"kind": "...", "params": {...}, "table": [[...]], "generators": [...]}`.
    pub fn from_json(text: &str) -> Result<GroupSpec> {
        #[derive(Deserialize)]
        struct GroupFile {
            kind: String,
            #[serde(default)]
            params: BTreeMap<String, Value>,
            table: Option<Vec<Vec<u32>>>,
            generators: Option<Vec<u32>>,
        }
        let file: GroupFile = serde_json::from_str(text)?;
        let mut params = BTreeMap::new();
        for (k, v) in file.params {
            let n = match &v {
                Value::Number(n) => n.as_u64(),
                Value::String(s) => s.trim().parse().ok(),
                _ => None,
            }
            .ok_or_else(|| {
                Error::InvalidSpec(format!("parameter {k} must be a nonnegative integer"))
            })?;
            params.insert(k, n);
        }
        if file.kind == "cayley_table" {
            let table = file
                .table
                .ok_or_else(|| Error::InvalidSpec("cayley_table needs \"table\"".into()))?;
            let generators = file
                .generators
                .ok_or_else(|| Error::InvalidSpec("cayley_table needs \"generators\"".into()))?;
            return Ok(GroupSpec::CayleyTable { table, generators });
        }
        GroupSpec::from_kind(&file.kind, &params)
    }

    /// Builds a spec from a kind name and integer parameters.
    pub fn from_kind(kind: &str, params: &BTreeMap<String, u64>) -> Result<GroupSpec> {
        let get = |name: &str| -> Result<u32> {
            let v = params
                .get(name)
                .ok_or_else(|| Error::InvalidSpec(format!("kind {kind} needs parameter {name}")))?;
            u32::try_from(*v)
                .map_err(|_| Error::InvalidSpec(format!("parameter {name} is too large")))
        };
        let spec = match kind {
            "free" => GroupSpec::Free { q: get("q")? },
            "free_abelian" => GroupSpec::FreeAbelian { d: get("d")? },
            "dihedral" => GroupSpec::Dihedral { n: get("n")? },
            "heisenberg" => GroupSpec::Heisenberg,
            "lamplighter" => GroupSpec::Lamplighter,
            "cyclic" => {
                let n = get("n")?;
                if n == 0 {
                    return Err(Error::InvalidSpec("cyclic needs n >= 1".into()));
                }
                GroupSpec::cyclic(n)
            }
            "cayley_table" => {
                return Err(Error::InvalidSpec(
                    "cayley_table groups must be given as a group file".into(),
                ))
            }
            other => return Err(Error::InvalidSpec(format!("unknown group kind {other:?}"))),
        };
        Ok(spec)
    }

    /// Short human-readable name.
    pub fn label(&self) -> String {
        match self {
            GroupSpec::Free { q } => format!("F_{q}"),
            GroupSpec::FreeAbelian { d } => format!("Z^{d}"),
            GroupSpec::Dihedral { n } => format!("D_{n}"),
            GroupSpec::Heisenberg => "H_3".into(),
            GroupSpec::Lamplighter => "Z/2 wr Z".into(),
            GroupSpec::CayleyTable { table, .. } => format!("table({})", table.len()),
        }
    }
}

/// Canonical encoding of a group element.
///
/// Free words are stored as letters `±i` (1-based), with no adjacent
/// letter/inverse pair. Lamp sets are strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Free(Vec<i32>),
    FreeAbelian(Vec<i64>),
    Dihedral { rotation: u32, flip: bool },
    Heisenberg([i64; 3]),
    Lamplighter { cursor: i64, lamps: Vec<i64> },
    Table(u32),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Free(w) if w.is_empty() => write!(f, "e"),
            Element::Free(w) => {
                for &l in w {
                    let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
                    if l > 0 {
                        write!(f, "{c}")?;
                    } else {
                        write!(f, "{}", c.to_ascii_uppercase())?;
                    }
                }
                Ok(())
            }
            Element::FreeAbelian(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Element::Dihedral { rotation, flip } => {
                write!(f, "r^{rotation}{}", if *flip { "s" } else { "" })
            }
            Element::Heisenberg([a, b, c]) => write!(f, "[{a},{b},{c}]"),
            Element::Lamplighter { cursor, lamps } => write!(f, "({cursor};{lamps:?})"),
            Element::Table(i) => write!(f, "#{i}"),
        }
    }
}

/// A symmetric generating set together with its inverse pairing.
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    elements: Vec<Element>,
    inverse: Vec<usize>,
}

impl GeneratingSet {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// `inverse_index(i) = j` iff `S[j] = S[i]^{-1}`.
    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Debug)]
struct TableData {
    table: Vec<Vec<u32>>,
    inverse: Vec<u32>,
}

#[derive(Debug)]
struct Inner {
    spec: GroupSpec,
    generators: GeneratingSet,
    table: Option<TableData>,
}

/// A finitely generated group with its standard generating set.
///
/// Cheap to clone; all operations are pure.
#[derive(Clone, Debug)]
pub struct Group {
    inner: Arc<Inner>,
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Group> {
        let table = match &spec {
            GroupSpec::Free { q } if *q == 0 => {
                return Err(Error::InvalidGroup("free group needs q >= 1".into()))
            }
            GroupSpec::FreeAbelian { d } if *d == 0 => {
                return Err(Error::InvalidGroup("free abelian group needs d >= 1".into()))
            }
            GroupSpec::Dihedral { n } if *n < 2 => {
                return Err(Error::InvalidGroup("dihedral group needs n >= 2".into()))
            }
            GroupSpec::CayleyTable { table, generators } => Some(validate_table(table, generators)?),
            _ => None,
        };
        let mut group = Group {
            inner: Arc::new(Inner {
                spec,
                generators: GeneratingSet {
                    elements: Vec::new(),
                    inverse: Vec::new(),
                },
                table,
            }),
        };
        let elements = group.standard_generators();
        let mut inverse = Vec::with_capacity(elements.len());
        for s in &elements {
            let inv = group.invert(s);
            let j = elements.iter().position(|x| *x == inv).ok_or_else(|| {
                Error::InvalidGroup(format!("generating set is not symmetric: {s} has no inverse in S"))
            })?;
            inverse.push(j);
        }
        let inner = Arc::get_mut(&mut group.inner).expect("unique during construction");
        inner.generators = GeneratingSet { elements, inverse };
        Ok(group)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.inner.spec
    }

    pub fn generators(&self) -> &GeneratingSet {
        &self.inner.generators
    }

    /// Degree of the Cayley graph, |S|.
    pub fn degree(&self) -> usize {
        self.inner.generators.len()
    }

    /// Group order, `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        match &self.inner.spec {
            GroupSpec::Dihedral { n } => Some(2 * *n as u64),
            GroupSpec::CayleyTable { table, .. } => Some(table.len() as u64),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn identity(&self) -> Element {
        match &self.inner.spec {
            GroupSpec::Free { .. } => Element::Free(Vec::new()),
            GroupSpec::FreeAbelian { d } => Element::FreeAbelian(vec![0; *d as usize]),
            GroupSpec::Dihedral { .. } => Element::Dihedral {
                rotation: 0,
                flip: false,
            },
            GroupSpec::Heisenberg => Element::Heisenberg([0, 0, 0]),
            GroupSpec::Lamplighter => Element::Lamplighter {
                cursor: 0,
                lamps: Vec::new(),
            },
            GroupSpec::CayleyTable { .. } => Element::Table(0),
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        match (a, b) {
            (Element::Free(x), Element::Free(y)) => {
                let mut w = x.clone();
                for &l in y {
                    if w.last() == Some(&-l) {
                        w.pop();
                    } else {
                        w.push(l);
                    }
                }
                Element::Free(w)
            }
            (Element::FreeAbelian(x), Element::FreeAbelian(y)) => {
                Element::FreeAbelian(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (
                Element::Dihedral {
                    rotation: a,
                    flip: f,
                },
                Element::Dihedral {
                    rotation: b,
                    flip: g,
                },
            ) => {
                // r^a s^f · r^b s^g = r^(a ± b) s^(f+g)
                let n = self.dihedral_n();
                let b = if *f { (n - b) % n } else { *b };
                Element::Dihedral {
                    rotation: (a + b) % n,
                    flip: f ^ g,
                }
            }
            (Element::Heisenberg([a, b, c]), Element::Heisenberg([a2, b2, c2])) => {
                Element::Heisenberg([a + a2, b + b2, c + c2 + a * b2])
            }
            (
                Element::Lamplighter { cursor: p, lamps: f },
                Element::Lamplighter { cursor: q, lamps: g },
            ) => {
                // (f, p)(g, q) = (f + shift_p g, p + q)
                let shifted: Vec<i64> = g.iter().map(|x| x + p).collect();
                Element::Lamplighter {
                    cursor: p + q,
                    lamps: symmetric_difference(f, &shifted),
                }
            }
            (Element::Table(i), Element::Table(j)) => {
                Element::Table(self.table().table[*i as usize][*j as usize])
            }
            _ => panic!("multiply: elements {a} and {b} belong to different groups"),
        }
    }

    pub fn invert(&self, a: &Element) -> Element {
        match a {
            Element::Free(w) => Element::Free(w.iter().rev().map(|l| -l).collect()),
            Element::FreeAbelian(v) => Element::FreeAbelian(v.iter().map(|x| -x).collect()),
            Element::Dihedral { rotation, flip } => {
                if *flip {
                    a.clone()
                } else {
                    let n = self.dihedral_n();
                    Element::Dihedral {
                        rotation: (n - rotation) % n,
                        flip: false,
                    }
                }
            }
            Element::Heisenberg([a, b, c]) => Element::Heisenberg([-a, -b, a * b - c]),
            Element::Lamplighter { cursor, lamps } => Element::Lamplighter {
                cursor: -cursor,
                lamps: lamps.iter().map(|x| x - cursor).collect(),
            },
            Element::Table(i) => Element::Table(self.table().inverse[*i as usize]),
        }
    }

    /// Product of the generators `S[i_1] S[i_2] ... S[i_k]`.
    pub fn word(&self, letters: &[usize]) -> Element {
        letters.iter().fold(self.identity(), |acc, &i| {
            self.multiply(&acc, &self.inner.generators.elements[i])
        })
    }

    /// Cayley-graph neighbours `s·x`, in generator order.
    pub fn neighbors<'a>(&'a self, x: &'a Element) -> impl Iterator<Item = Element> + 'a {
        self.inner
            .generators
            .elements
            .iter()
            .map(move |s| self.multiply(s, x))
    }

    /// Word length of `x` by breadth-first search from the identity.
    ///
    /// Infinite groups need a finite `max_radius`; if `x` is farther away the
    /// search stops with [`Error::RadiusExceeded`].
    pub fn word_norm(&self, x: &Element, max_radius: usize) -> Result<usize> {
        let e = self.identity();
        if *x == e {
            return Ok(0);
        }
        let mut seen: HashSet<Element> = HashSet::from([e.clone()]);
        let mut frontier = vec![e];
        for k in 1..=max_radius {
            let mut next = Vec::new();
            for y in &frontier {
                for z in self.neighbors(y) {
                    if z == *x {
                        return Ok(k);
                    }
                    if seen.insert(z.clone()) {
                        next.push(z);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Err(Error::RadiusExceeded { radius: max_radius })
    }

    fn dihedral_n(&self) -> u32 {
        match self.inner.spec {
            GroupSpec::Dihedral { n } => n,
            _ => unreachable!("dihedral element in a non-dihedral group"),
        }
    }

    fn table(&self) -> &TableData {
        self.inner
            .table
            .as_ref()
            .expect("table element in a group without a multiplication table")
    }

    fn standard_generators(&self) -> Vec<Element> {
        match &self.inner.spec {
            GroupSpec::Free { q } => (1..=*q as i32)
                .flat_map(|i| [Element::Free(vec![i]), Element::Free(vec![-i])])
                .collect(),
            GroupSpec::FreeAbelian { d } => {
                let d = *d as usize;
                (0..d)
                    .flat_map(|i| {
                        let mut plus = vec![0; d];
                        plus[i] = 1;
                        let mut minus = vec![0; d];
                        minus[i] = -1;
                        [Element::FreeAbelian(plus), Element::FreeAbelian(minus)]
                    })
                    .collect()
            }
            GroupSpec::Dihedral { n } => {
                let mut gens = vec![Element::Dihedral {
                    rotation: 1,
                    flip: false,
                }];
                // for n = 2 the rotation is an involution
                if *n > 2 {
                    gens.push(Element::Dihedral {
                        rotation: n - 1,
                        flip: false,
                    });
                }
                gens.push(Element::Dihedral {
                    rotation: 0,
                    flip: true,
                });
                gens
            }
            GroupSpec::Heisenberg => vec![
                Element::Heisenberg([1, 0, 0]),
                Element::Heisenberg([-1, 0, 0]),
                Element::Heisenberg([0, 1, 0]),
                Element::Heisenberg([0, -1, 0]),
            ],
            GroupSpec::Lamplighter => vec![
                Element::Lamplighter {
                    cursor: 1,
                    lamps: Vec::new(),
                },
                Element::Lamplighter {
                    cursor: -1,
                    lamps: Vec::new(),
                },
                Element::Lamplighter {
                    cursor: 0,
                    lamps: vec![0],
                },
            ],
            GroupSpec::CayleyTable { generators, .. } => {
                generators.iter().map(|&g| Element::Table(g)).collect()
            }
        }
    }
}

fn symmetric_difference(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn validate_table(table: &[Vec<u32>], generators: &[u32]) -> Result<TableData> {
    let n = table.len();
    let fail = |msg: String| Err(Error::InvalidGroup(msg));
    if n == 0 {
        return fail("empty multiplication table".into());
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return fail(format!("closure: row {i} has length {} (expected {n})", row.len()));
        }
        if let Some(&bad) = row.iter().find(|&&x| x as usize >= n) {
            return fail(format!("closure: row {i} contains out-of-range index {bad}"));
        }
    }
    for x in 0..n {
        if table[0][x] as usize != x || table[x][0] as usize != x {
            return fail(format!("identity: index 0 is not a two-sided identity at {x}"));
        }
    }
    let mut seen = vec![false; n];
    for i in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for &x in &table[i] {
            if std::mem::replace(&mut seen[x as usize], true) {
                return fail(format!("inverses: row {i} is not a permutation"));
            }
        }
        seen.iter_mut().for_each(|s| *s = false);
        for row in table {
            let x = row[i] as usize;
            if std::mem::replace(&mut seen[x], true) {
                return fail(format!("inverses: column {i} is not a permutation"));
            }
        }
    }
    for &g in generators {
        if g as usize >= n {
            return fail(format!("generator index {g} out of range"));
        }
        if g == 0 {
            return fail("generating set contains the identity".into());
        }
    }
    let distinct: HashSet<u32> = generators.iter().copied().collect();
    if distinct.len() != generators.len() {
        return fail("generating set has repeated elements".into());
    }
    let inverse: Vec<u32> = (0..n)
        .map(|i| table[i].iter().position(|&x| x == 0).expect("row is a permutation") as u32)
        .collect();
    for &g in generators {
        if !distinct.contains(&inverse[g as usize]) {
            return fail(format!("generating set is not symmetric: inverse of {g} missing"));
        }
    }

    // generation: BFS from the identity under left multiplication
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &g in generators {
            let y = table[g as usize][x] as usize;
            if !reached[y] {
                reached[y] = true;
                queue.push_back(y);
            }
        }
    }
    if reached.iter().any(|r| !r) {
        return fail("generation: the generators do not generate the group".into());
    }

    // Light's test: the elements a with (x a) y = x (a y) for all x, y form a
    // submagma, so checking the generators suffices.
    for &a in generators {
        let a = a as usize;
        for x in 0..n {
            let xa = table[x][a] as usize;
            for y in 0..n {
                let ay = table[a][y] as usize;
                if table[xa][y] != table[x][ay] {
                    return fail(format!(
                        "associativity: ({x}·{a})·{y} != {x}·({a}·{y})"
                    ));
                }
            }
        }
    }
    Ok(TableData {
        table: table.to_vec(),
        inverse,
    })
}

/// Multiplication table of a finite group, for building `CayleyTable` specs
/// from any concrete representation. `elements[0]` must be the identity.
pub fn table_from_elements<T, F>(elements: &[T], mul: F) -> Result<Vec<Vec<u32>>>
where
    T: Eq + std::hash::Hash + Clone,
    F: Fn(&T, &T) -> T,
{
    let index: HashMap<T, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, x)| (x.clone(), i as u32))
        .collect();
    elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    index
                        .get(&mul(a, b))
                        .copied()
                        .ok_or_else(|| Error::InvalidGroup("closure: product outside the element list".into()))
                })
                .collect()
        })
        .collect()
}
