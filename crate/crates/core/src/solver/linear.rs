//! Linear stage: the Hom-Jacobi identity as a sparse system in the free
//! entries of `σ`.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{AlgebraElement, GradedSuperalgebra};
use crate::linalg::{self, Echelon, EliminationStrategy, Row};
use crate::rational::{self, Rational};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum FiltrationMode {
    /// `σ(g_d) ⊆ ⊕_{e ≤ d} g_e`.
    #[default]
    Filtered,
    /// As `Filtered`, except `σ(g_{-1})` may reach any degree.
    FilteredExceptMinusOne,
    /// Strictly degree-preserving: `σ(g_d) ⊆ g_d`.
    Graded,
    /// Parity mask only.
    Off,
}

impl FiltrationMode {
    pub fn id(self) -> &'static str {
        match self {
            FiltrationMode::Filtered => "filtered",
            FiltrationMode::FilteredExceptMinusOne => "filtered-except-minus-one",
            FiltrationMode::Graded => "graded",
            FiltrationMode::Off => "off",
        }
    }

    /// Every allowed entry maps a degree to the same or a lower degree, so a
    /// candidate is block lower triangular in the grading.
    pub fn is_triangular(self) -> bool {
        matches!(self, FiltrationMode::Filtered | FiltrationMode::Graded)
    }
}

/// Free entries of a candidate `σ`: `s_{b,a}` is the coefficient of `e_b`
/// in `σ(e_a)`. Entries are ordered by source, then target.
#[derive(Clone, Debug)]
pub struct UnknownLayout {
    dim: usize,
    mode: FiltrationMode,
    entries: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    targets: Vec<Vec<(usize, usize)>>,
}

impl UnknownLayout {
    pub fn new(alg: &GradedSuperalgebra, mode: FiltrationMode) -> Self {
        let dim = alg.dim();
        let allowed = |b: usize, a: usize| {
            if alg.parity(b) != alg.parity(a) {
                return false;
            }
            match mode {
                FiltrationMode::Filtered => alg.degree(b) <= alg.degree(a),
                FiltrationMode::FilteredExceptMinusOne => alg.degree(a) == -1 || alg.degree(b) <= alg.degree(a),
                FiltrationMode::Graded => alg.degree(b) == alg.degree(a),
                FiltrationMode::Off => true,
            }
        };
        let mut entries = Vec::new();
        let mut index = HashMap::new();
        let mut targets = vec![Vec::new(); dim];
        for a in 0..dim {
            for b in 0..dim {
                if allowed(b, a) {
                    let u = entries.len();
                    entries.push((b, a));
                    index.insert((b, a), u);
                    targets[a].push((b, u));
                }
            }
        }
        Self {
            dim,
            mode,
            entries,
            index,
            targets,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> FiltrationMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(target, source)` of unknown `u`.
    pub fn entry(&self, u: usize) -> (usize, usize) {
        self.entries[u]
    }

    pub fn unknown(&self, target: usize, source: usize) -> Option<usize> {
        self.index.get(&(target, source)).copied()
    }

    /// `(target, unknown)` pairs for a source basis element.
    pub fn targets(&self, source: usize) -> &[(usize, usize)] {
        &self.targets[source]
    }

    pub fn map_from_row(&self, row: &[(usize, Rational)]) -> CandidateMap {
        let mut m = CandidateMap::zero(self.dim);
        for (u, v) in row {
            let (b, a) = self.entries[*u];
            m.set(b, a, v.clone());
        }
        m
    }

    /// `None` if the map uses a masked entry.
    pub fn row_from_map(&self, m: &CandidateMap) -> Option<Row> {
        let mut row = Vec::new();
        for (&(b, a), v) in &m.entries {
            row.push((self.unknown(b, a)?, v.clone()));
        }
        Some(linalg::row_from_entries(row))
    }
}

/// An even linear endomorphism of the algebra in the fixed basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CandidateMap {
    dim: usize,
    // (target, source) -> coefficient
    entries: BTreeMap<(usize, usize), Rational>,
}

impl CandidateMap {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, &Rational::one())
    }

    pub fn scaled_identity(dim: usize, lambda: &Rational) -> Self {
        let mut m = Self::zero(dim);
        for a in 0..dim {
            m.set(a, a, lambda.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, target: usize, source: usize, v: Rational) {
        if v.is_zero() {
            self.entries.remove(&(target, source));
        } else {
            self.entries.insert((target, source), v);
        }
    }

    pub fn get(&self, target: usize, source: usize) -> Rational {
        self.entries
            .get(&(target, source))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// `σ(e_a)`.
    pub fn image(&self, a: usize) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.entries
                .range((0, a)..)
                .filter(|((_, s), _)| *s == a)
                .map(|(&(b, _), v)| (b, v.clone())),
        )
    }

    pub fn images(&self) -> Vec<AlgebraElement> {
        let mut out = vec![AlgebraElement::zero(); self.dim];
        for (&(b, a), v) in &self.entries {
            out[a].add_term(b, v.clone());
        }
        out
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let images = self.images();
        let mut out = AlgebraElement::zero();
        for (a, c) in x.terms() {
            out.add_scaled(&images[a], c);
        }
        out
    }

    pub fn plus(&self, other: &CandidateMap) -> CandidateMap {
        let mut out = self.clone();
        for (&(b, a), v) in &other.entries {
            let s = out.get(b, a) + v;
            out.set(b, a, s);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CandidateMap {
        let mut out = CandidateMap::zero(self.dim);
        for (&(b, a), v) in &self.entries {
            out.set(b, a, v * c);
        }
        out
    }

    /// Square block `σ_{dd}` restricted to the given basis indices.
    pub fn block(&self, indices: &[usize]) -> Vec<Vec<Rational>> {
        indices
            .iter()
            .map(|&b| indices.iter().map(|&a| self.get(b, a)).collect())
            .collect()
    }
}

#[derive(Serialize)]
struct MapEntry {
    source: usize,
    target: usize,
    value: String,
}

impl Serialize for CandidateMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut v: Vec<MapEntry> = self
            .entries
            .iter()
            .map(|(&(target, source), c)| MapEntry {
                source,
                target,
                value: rational::to_string(c),
            })
            .collect();
        v.sort_by_key(|e| (e.source, e.target));
        v.serialize(s)
    }
}

/// Origin of a constraint row: the triple `(x, y, z)` and the output
/// coordinate `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub triple: (usize, usize, usize),
    pub output: usize,
}

/// Nonzero Hom-Jacobi rows over the layout's unknowns.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub ncols: usize,
    pub rows: Vec<Row>,
    pub provenance: Vec<Provenance>,
    pub triples_total: usize,
    pub triples_vacuous: usize,
}

impl LinearSystem {
    /// Whether `σ` (given in unknown coordinates) satisfies every row.
    pub fn satisfied_by(&self, x: &[(usize, Rational)]) -> bool {
        let dense: HashMap<usize, &Rational> = x.iter().map(|(c, v)| (*c, v)).collect();
        self.rows.par_iter().all(|r| {
            let mut acc = Rational::zero();
            for (c, v) in r {
                if let Some(y) = dense.get(c) {
                    acc += v * *y;
                }
            }
            acc.is_zero()
        })
    }

    /// First violated row, if any.
    pub fn first_violation(&self, x: &[(usize, Rational)]) -> Option<Provenance> {
        let dense: HashMap<usize, &Rational> = x.iter().map(|(c, v)| (*c, v)).collect();
        self.rows.iter().zip(&self.provenance).find_map(|(r, p)| {
            let mut acc = Rational::zero();
            for (c, v) in r {
                if let Some(y) = dense.get(c) {
                    acc += v * *y;
                }
            }
            (!acc.is_zero()).then_some(*p)
        })
    }
}

fn triple_rows(
    alg: &GradedSuperalgebra,
    layout: &UnknownLayout,
    x: usize,
    y: usize,
    z: usize,
) -> Option<BTreeMap<usize, BTreeMap<usize, Rational>>> {
    let p = |i| alg.parity(i);
    let terms = [
        (x, alg.bracket_basis(y, z), p(x).koszul(p(z))),
        (y, alg.bracket_basis(z, x), p(y).koszul(p(x))),
        (z, alg.bracket_basis(x, y), p(z).koszul(p(y))),
    ];
    if terms.iter().all(|(_, w, _)| w.is_zero()) {
        return None;
    }
    let mut out: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for (src, w, s) in &terms {
        if w.is_zero() {
            continue;
        }
        let s = rational::sign(*s);
        for &(b, u) in layout.targets(*src) {
            for (m, cm) in w.terms() {
                if let Some((sb, v)) = alg.bracket_basis_ref(b, m) {
                    let f = cm * &s * rational::sign(sb);
                    for (k, ck) in v.terms() {
                        let e = out.entry(k).or_default().entry(u).or_insert_with(Rational::zero);
                        *e += ck * &f;
                    }
                }
            }
        }
    }
    Some(out)
}

/// One vector equation per triple `x ≤ y ≤ z`, expanded over the output
/// basis. Triples whose three inner brackets all vanish impose nothing and
/// are skipped; zero rows are not stored.
pub fn assemble_homjacobi(alg: &GradedSuperalgebra, layout: &UnknownLayout) -> LinearSystem {
    let n = alg.dim();
    let chunks: Vec<(usize, usize, Vec<(Provenance, Row)>)> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut total = 0;
            let mut vacuous = 0;
            let mut rows = Vec::new();
            for y in x..n {
                for z in y..n {
                    total += 1;
                    match triple_rows(alg, layout, x, y, z) {
                        None => vacuous += 1,
                        Some(by_output) => {
                            for (k, entries) in by_output {
                                let row: Row = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                                if !row.is_empty() {
                                    rows.push((
                                        Provenance {
                                            triple: (x, y, z),
                                            output: k,
                                        },
                                        row,
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            (total, vacuous, rows)
        })
        .collect();
    let mut sys = LinearSystem {
        ncols: layout.len(),
        rows: Vec::new(),
        provenance: Vec::new(),
        triples_total: 0,
        triples_vacuous: 0,
    };
    for (t, v, rows) in chunks {
        sys.triples_total += t;
        sys.triples_vacuous += v;
        for (p, r) in rows {
            sys.provenance.push(p);
            sys.rows.push(r);
        }
    }
    sys
}

/// Row scaled to leading coefficient 1 (for duplicate removal).
fn normalized(row: &Row) -> Row {
    let inv = row[0].1.recip();
    row.iter().map(|(c, v)| (*c, v * &inv)).collect()
}

#[derive(Clone, Debug)]
pub struct NullspaceResult {
    pub rank: usize,
    pub distinct_rows: usize,
    pub basis: Vec<Row>,
}

/// Exact nullspace basis, one vector per free unknown (ascending), each
/// normalized to 1 at its free unknown.
pub fn nullspace(sys: &LinearSystem, strategy: EliminationStrategy) -> NullspaceResult {
    let mut seen: HashSet<Row> = HashSet::new();
    let mut ech = Echelon::new(strategy);
    for r in &sys.rows {
        let key = normalized(r);
        if seen.insert(key) {
            ech.insert(r);
        }
    }
    NullspaceResult {
        rank: ech.rank(),
        distinct_rows: seen.len(),
        basis: ech.nullspace(sys.ncols),
    }
}
