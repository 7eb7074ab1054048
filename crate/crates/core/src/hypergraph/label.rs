use std::fmt;
use std::str::FromStr;

/// Index tuple naming a vertex that stands for a group of fine-grained
/// vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoarseLabel {
    /// All multiplications of row `i` (B-slice) with row `i` of A and C.
    Row(usize),
    /// All multiplications of column `j` (A-slice) with column `j` of B and C.
    Col(usize),
    /// All multiplications with inner index `k` (C-slice) with column `k`
    /// of A and row `k` of B.
    Outer(usize),
    /// A-fiber `(i, k, *)` together with `a_ik`.
    FiberA(usize, usize),
    /// B-fiber `(*, k, j)` together with `b_kj`.
    FiberB(usize, usize),
    /// C-fiber `(i, *, j)` together with `c_ij`.
    FiberC(usize, usize),
    /// The nonzeros of row `k` of B.
    RowOfB(usize),
    /// The nonzeros of column `k` of A.
    ColOfA(usize),
    /// SpMV diagonal vertex: `a_ii` (if stored) with `x_i` and `y_i`.
    Diag(usize),
    /// Generic group produced by an unlabeled coarsening.
    Group(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    Mult { i: usize, k: usize, j: usize },
    NzA { i: usize, k: usize },
    NzB { k: usize, j: usize },
    NzC { i: usize, j: usize },
    Coarse(CoarseLabel),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NetLabel {
    A { i: usize, k: usize },
    B { k: usize, j: usize },
    C { i: usize, j: usize },
    /// Coalesced nets of row `k` of B.
    RowOfB(usize),
    /// Coalesced nets of column `k` of A.
    ColOfA(usize),
    /// SpMV output entry / matrix row.
    SpmvRow(usize),
    /// SpMV input entry / matrix column.
    SpmvCol(usize),
    Other(usize),
}

impl VertexLabel {
    /// True for vertices that stand only for stored data, i.e. a single
    /// nonzero of A, B or C or a group of such.
    pub fn is_nonzero(&self) -> bool {
        matches!(
            self,
            VertexLabel::NzA { .. }
                | VertexLabel::NzB { .. }
                | VertexLabel::NzC { .. }
                | VertexLabel::Coarse(CoarseLabel::RowOfB(_))
                | VertexLabel::Coarse(CoarseLabel::ColOfA(_))
        )
    }

    /// Label of the same object in the transposed product `B^T * A^T`.
    pub fn mirror(self) -> Self {
        use CoarseLabel as L;
        match self {
            VertexLabel::Mult { i, k, j } => VertexLabel::Mult { i: j, k, j: i },
            VertexLabel::NzA { i, k } => VertexLabel::NzB { k, j: i },
            VertexLabel::NzB { k, j } => VertexLabel::NzA { i: j, k },
            VertexLabel::NzC { i, j } => VertexLabel::NzC { i: j, j: i },
            VertexLabel::Coarse(c) => VertexLabel::Coarse(match c {
                L::Row(x) => L::Col(x),
                L::Col(x) => L::Row(x),
                L::Outer(k) => L::Outer(k),
                L::FiberA(i, k) => L::FiberB(k, i),
                L::FiberB(k, j) => L::FiberA(j, k),
                L::FiberC(i, j) => L::FiberC(j, i),
                L::RowOfB(k) => L::ColOfA(k),
                L::ColOfA(k) => L::RowOfB(k),
                other => other,
            }),
        }
    }
}

impl NetLabel {
    pub fn mirror(self) -> Self {
        match self {
            NetLabel::A { i, k } => NetLabel::B { k, j: i },
            NetLabel::B { k, j } => NetLabel::A { i: j, k },
            NetLabel::C { i, j } => NetLabel::C { i: j, j: i },
            NetLabel::RowOfB(k) => NetLabel::ColOfA(k),
            NetLabel::ColOfA(k) => NetLabel::RowOfB(k),
            other => other,
        }
    }
}

impl fmt::Display for CoarseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoarseLabel::Row(i) => write!(f, "row({i})"),
            CoarseLabel::Col(j) => write!(f, "col({j})"),
            CoarseLabel::Outer(k) => write!(f, "outer({k})"),
            CoarseLabel::FiberA(i, k) => write!(f, "fa({i},{k})"),
            CoarseLabel::FiberB(k, j) => write!(f, "fb({k},{j})"),
            CoarseLabel::FiberC(i, j) => write!(f, "fc({i},{j})"),
            CoarseLabel::RowOfB(k) => write!(f, "brow({k})"),
            CoarseLabel::ColOfA(k) => write!(f, "acol({k})"),
            CoarseLabel::Diag(i) => write!(f, "diag({i})"),
            CoarseLabel::Group(g) => write!(f, "g({g})"),
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexLabel::Mult { i, k, j } => write!(f, "m({i},{k},{j})"),
            VertexLabel::NzA { i, k } => write!(f, "a({i},{k})"),
            VertexLabel::NzB { k, j } => write!(f, "b({k},{j})"),
            VertexLabel::NzC { i, j } => write!(f, "c({i},{j})"),
            VertexLabel::Coarse(c) => c.fmt(f),
        }
    }
}

impl fmt::Display for NetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NetLabel::A { i, k } => write!(f, "na({i},{k})"),
            NetLabel::B { k, j } => write!(f, "nb({k},{j})"),
            NetLabel::C { i, j } => write!(f, "nc({i},{j})"),
            NetLabel::RowOfB(k) => write!(f, "nbrow({k})"),
            NetLabel::ColOfA(k) => write!(f, "nacol({k})"),
            NetLabel::SpmvRow(i) => write!(f, "nrow({i})"),
            NetLabel::SpmvCol(k) => write!(f, "ncol({k})"),
            NetLabel::Other(n) => write!(f, "n({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelParseError(pub String);

impl fmt::Display for LabelParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad label '{}'", self.0)
    }
}

impl std::error::Error for LabelParseError {}

/// Splits `tag(a,b,...)` into the tag and its indices.
fn split_label(s: &str) -> Result<(&str, Vec<usize>), LabelParseError> {
    let err = || LabelParseError(s.to_string());
    let open = s.find('(').ok_or_else(err)?;
    let body = s[open + 1..].strip_suffix(')').ok_or_else(err)?;
    let idx = body
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| err()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((&s[..open], idx))
}

impl FromStr for VertexLabel {
    type Err = LabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use CoarseLabel as L;
        let (tag, idx) = split_label(s)?;
        let v = match (tag, idx.as_slice()) {
            ("m", &[i, k, j]) => VertexLabel::Mult { i, k, j },
            ("a", &[i, k]) => VertexLabel::NzA { i, k },
            ("b", &[k, j]) => VertexLabel::NzB { k, j },
            ("c", &[i, j]) => VertexLabel::NzC { i, j },
            ("row", &[i]) => VertexLabel::Coarse(L::Row(i)),
            ("col", &[j]) => VertexLabel::Coarse(L::Col(j)),
            ("outer", &[k]) => VertexLabel::Coarse(L::Outer(k)),
            ("fa", &[i, k]) => VertexLabel::Coarse(L::FiberA(i, k)),
            ("fb", &[k, j]) => VertexLabel::Coarse(L::FiberB(k, j)),
            ("fc", &[i, j]) => VertexLabel::Coarse(L::FiberC(i, j)),
            ("brow", &[k]) => VertexLabel::Coarse(L::RowOfB(k)),
            ("acol", &[k]) => VertexLabel::Coarse(L::ColOfA(k)),
            ("diag", &[i]) => VertexLabel::Coarse(L::Diag(i)),
            ("g", &[g]) => VertexLabel::Coarse(L::Group(g)),
            _ => return Err(LabelParseError(s.to_string())),
        };
        Ok(v)
    }
}

impl FromStr for NetLabel {
    type Err = LabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (tag, idx) = split_label(s)?;
        let n = match (tag, idx.as_slice()) {
            ("na", &[i, k]) => NetLabel::A { i, k },
            ("nb", &[k, j]) => NetLabel::B { k, j },
            ("nc", &[i, j]) => NetLabel::C { i, j },
            ("nbrow", &[k]) => NetLabel::RowOfB(k),
            ("nacol", &[k]) => NetLabel::ColOfA(k),
            ("nrow", &[i]) => NetLabel::SpmvRow(i),
            ("ncol", &[k]) => NetLabel::SpmvCol(k),
            ("n", &[x]) => NetLabel::Other(x),
            _ => return Err(LabelParseError(s.to_string())),
        };
        Ok(n)
    }
}
