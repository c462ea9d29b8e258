use num_bigint::BigUint;
use num_traits::Zero;

/// One row of a growth table: the graded value `d` and cumulative value `g` at degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: usize,
    pub d: BigUint,
    pub g: BigUint,
}

/// Graded and cumulative values of a growth or cogrowth function.
///
/// Rows are consecutive in `n` and satisfy `g(n) = g(n-1) + d(n)`, where the
/// value before the first row is 0 for Lie algebras and the table starts at
/// `n = 0` with `d(0) = 1` for word monoids.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GrowthTable {
    rows: Vec<GrowthRow>,
}

impl GrowthTable {
    /// Builds a table from graded values starting at degree `start`.
    pub fn from_graded<I>(start: usize, values: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigUint>,
    {
        let mut g = BigUint::zero();
        let rows = values
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let d = d.into();
                g += &d;
                GrowthRow {
                    n: start + i,
                    d,
                    g: g.clone(),
                }
            })
            .collect();
        GrowthTable { rows }
    }

    pub fn rows(&self) -> &[GrowthRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, n: usize) -> Option<&GrowthRow> {
        let start = self.rows.first()?.n;
        self.rows.get(n.checked_sub(start)?)
    }

    pub fn d(&self, n: usize) -> Option<&BigUint> {
        self.row(n).map(|r| &r.d)
    }

    pub fn g(&self, n: usize) -> Option<&BigUint> {
        self.row(n).map(|r| &r.g)
    }

    pub fn graded(&self) -> Vec<BigUint> {
        self.rows.iter().map(|r| r.d.clone()).collect()
    }

    pub fn cumulative(&self) -> Vec<BigUint> {
        self.rows.iter().map(|r| r.g.clone()).collect()
    }

    /// Graded values as `u64`; panics on overflow. Convenient in tests.
    pub fn graded_u64(&self) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| u64::try_from(&r.d).expect("value fits in u64"))
            .collect()
    }

    pub fn cumulative_u64(&self) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| u64::try_from(&r.g).expect("value fits in u64"))
            .collect()
    }

    /// Drops rows beyond degree `n`.
    pub fn truncate(&self, n: usize) -> GrowthTable {
        GrowthTable {
            rows: self.rows.iter().filter(|r| r.n <= n).cloned().collect(),
        }
    }

    /// Checks the cumulative-sum invariant, given the value before the first row.
    pub fn is_consistent(&self, g_before: &BigUint) -> bool {
        let mut prev = g_before.clone();
        let mut prev_n = None;
        for r in &self.rows {
            if prev_n.is_some_and(|p: usize| r.n != p + 1) || r.g != &prev + &r.d {
                return false;
            }
            prev = r.g.clone();
            prev_n = Some(r.n);
        }
        true
    }
}
