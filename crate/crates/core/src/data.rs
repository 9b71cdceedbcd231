//! Datasets and dense dissimilarity matrices.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Row-major numeric data, one row per object.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    n: usize,
    p: usize,
    values: Vec<f64>,
}

impl DataMatrix {
    pub fn new(n: usize, p: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * p {
            return Err(Error::Dimension {
                expected: n * p,
                actual: values.len(),
            });
        }
        if n < 2 {
            return Err(Error::InvalidData(format!("need at least 2 objects, got {n}")));
        }
        if p == 0 {
            return Err(Error::InvalidData("data has no columns".into()));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidData(format!(
                "non-finite value at row {}, column {}",
                pos / p,
                pos % p
            )));
        }
        Ok(Self { n, p, values })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let p = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != p) {
            return Err(Error::Dimension {
                expected: p,
                actual: bad.len(),
            });
        }
        Self::new(rows.len(), p, rows.concat())
    }

    pub fn nrows(&self) -> usize {
        self.n
    }

    pub fn ncols(&self) -> usize {
        self.p
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.p..(i + 1) * self.p]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.p)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Rows at `idx` (repeats allowed) as a new matrix.
    pub fn select_rows(&self, idx: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(idx.len() * self.p);
        for &i in idx {
            values.extend_from_slice(self.row(i));
        }
        Self::new(idx.len(), self.p, values)
    }
}

pub(crate) fn sq_euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Symmetric, nonnegative, zero-diagonal n×n matrix stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct DissimilarityMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DissimilarityMatrix {
    /// Validates symmetry, zero diagonal, finiteness and nonnegativity.
    pub fn new(n: usize, d: Vec<f64>) -> Result<Self> {
        if d.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                actual: d.len(),
            });
        }
        if n < 2 {
            return Err(Error::InvalidData(format!("need at least 2 objects, got {n}")));
        }
        for i in 0..n {
            if d[i * n + i] != 0.0 {
                return Err(Error::InvalidData(format!("nonzero diagonal at {i}")));
            }
            for j in (i + 1)..n {
                let v = d[i * n + j];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidData(format!(
                        "entry ({i},{j}) = {v} is not a finite nonnegative number"
                    )));
                }
                if v != d[j * n + i] {
                    return Err(Error::InvalidData(format!("asymmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { n, d })
    }

    /// Builds from a callback evaluated on unordered pairs `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = f(i, j);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        Self::new(n, d)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    /// Sub-matrix on `idx`; repeated indices give zero-dissimilarity copies.
    pub fn subset(&self, idx: &[usize]) -> Self {
        let m = idx.len();
        let mut d = vec![0.0; m * m];
        for (a, &i) in idx.iter().enumerate() {
            let row = self.row(i);
            for (b, &j) in idx.iter().enumerate() {
                d[a * m + b] = row[j];
            }
        }
        Self { n: m, d }
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.n, self.d.iter().map(|v| v * c).collect())
    }

    /// Iterates `(i, j, d)` over unordered pairs `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j, self.get(i, j))))
    }
}

/// Euclidean distances between the rows of `data`.
pub fn euclidean_dissimilarity(data: &DataMatrix) -> DissimilarityMatrix {
    let n = data.nrows();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        let xi = data.row(i);
        for j in (i + 1)..n {
            let v = sq_euclid(xi, data.row(j)).sqrt();
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    DissimilarityMatrix { n, d }
}

/// Dissimilarities plus, when available, the coordinates they came from.
///
/// k-means and mean-centroid classification need coordinates; everything else
/// only reads `diss`.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub data: Option<DataMatrix>,
    pub diss: DissimilarityMatrix,
}

impl Dataset {
    pub fn from_data(data: DataMatrix) -> Self {
        let diss = euclidean_dissimilarity(&data);
        Self {
            data: Some(data),
            diss,
        }
    }

    pub fn from_dissimilarity(diss: DissimilarityMatrix) -> Self {
        Self { data: None, diss }
    }

    pub fn len(&self) -> usize {
        self.diss.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diss.is_empty()
    }

    /// Restriction to `idx` (a multiset; duplicates are kept).
    pub fn subset(&self, idx: &[usize]) -> Result<Self> {
        Ok(Self {
            data: self.data.as_ref().map(|x| x.select_rows(idx)).transpose()?,
            diss: self.diss.subset(idx),
        })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CsvOptions {
    /// First row holds column names.
    pub has_header: bool,
    /// Treat the final column as integer class labels. With a header this is
    /// also switched on when the last column is named `class`.
    pub class_column: bool,
}

/// Data read from CSV, with the ground-truth partition if one was present.
#[derive(Debug, Clone)]
pub struct LoadedData {
    pub data: DataMatrix,
    pub truth: Option<Partition>,
}

pub fn read_csv_from<R: Read>(reader: R, opts: CsvOptions) -> Result<LoadedData> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(opts.has_header)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut class_col = opts.class_column;
    if opts.has_header {
        let headers = rdr.headers()?;
        if headers
            .iter()
            .next_back()
            .is_some_and(|h| h.eq_ignore_ascii_case("class"))
        {
            class_col = true;
        }
    }
    let mut values = Vec::new();
    let mut classes = Vec::new();
    let mut width = None;
    let mut n = 0;
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let mut fields: Vec<&str> = rec.iter().collect();
        if class_col {
            let raw = fields
                .pop()
                .ok_or_else(|| Error::InvalidData(format!("row {line} is empty")))?;
            let c: i64 = raw.parse().map_err(|_| {
                Error::InvalidData(format!("row {line}: class label {raw:?} is not an integer"))
            })?;
            classes.push(c);
        }
        match width {
            None => width = Some(fields.len()),
            Some(w) if w != fields.len() => {
                return Err(Error::Dimension {
                    expected: w,
                    actual: fields.len(),
                })
            }
            _ => {}
        }
        for f in fields {
            let v: f64 = f.parse().map_err(|_| {
                Error::InvalidData(format!("row {line}: {f:?} is not a number"))
            })?;
            values.push(v);
        }
        n += 1;
    }
    let data = DataMatrix::new(n, width.unwrap_or(0), values)?;
    let truth = if class_col {
        Some(Partition::from_arbitrary_labels(&classes))
    } else {
        None
    };
    Ok(LoadedData { data, truth })
}

pub fn read_csv(path: impl AsRef<Path>, opts: CsvOptions) -> Result<LoadedData> {
    read_csv_from(std::fs::File::open(path)?, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> DataMatrix {
        DataMatrix::new(xs.len(), 1, xs.to_vec()).unwrap()
    }

    #[test]
    fn one_dimensional_distances() {
        let d = euclidean_dissimilarity(&line(&[0.0, 1.0, 10.0, 11.0]));
        assert_eq!(d.get(0, 1), 1.0);
        assert_eq!(d.get(1, 2), 9.0);
        assert_eq!(d.get(0, 3), 11.0);
        assert_eq!(d.get(3, 0), 11.0);
    }

    #[test]
    fn duplicated_rows_give_zero_matrix() {
        let data = DataMatrix::from_rows(&vec![vec![1.5, -2.0]; 4]).unwrap();
        let d = euclidean_dissimilarity(&data);
        assert!(d.pairs().all(|(_, _, v)| v == 0.0));
    }

    #[test]
    fn three_four_five() {
        let data = DataMatrix::from_rows(&[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(euclidean_dissimilarity(&data).get(0, 1), 5.0);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(
            DataMatrix::new(2, 1, vec![0.0, f64::NAN]),
            Err(Error::InvalidData(_))
        ));
        assert!(DataMatrix::new(2, 1, vec![0.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn rejects_bad_dissimilarities() {
        assert!(DissimilarityMatrix::new(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(DissimilarityMatrix::new(2, vec![1.0, 1.0, 1.0, 0.0]).is_err());
        assert!(DissimilarityMatrix::new(2, vec![0.0, -1.0, -1.0, 0.0]).is_err());
        assert!(DissimilarityMatrix::new(2, vec![0.0, 1.0, 1.0, 0.0]).is_ok());
    }

    #[test]
    fn subset_keeps_duplicates() {
        let d = euclidean_dissimilarity(&line(&[0.0, 1.0, 10.0]));
        let s = d.subset(&[2, 0, 2]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.get(0, 1), 10.0);
        assert_eq!(s.get(0, 2), 0.0);
    }

    #[test]
    fn csv_with_header_and_class() {
        let text = "x,y,class\n0,0,5\n1,0,5\n9,9,2\n";
        let got = read_csv_from(
            text.as_bytes(),
            CsvOptions {
                has_header: true,
                class_column: false,
            },
        )
        .unwrap();
        assert_eq!(got.data.nrows(), 3);
        assert_eq!(got.data.ncols(), 2);
        assert_eq!(got.truth.unwrap().labels(), &[0, 0, 1]);
    }

    #[test]
    fn csv_without_header() {
        let text = "0,0\n1,0\n";
        let got = read_csv_from(text.as_bytes(), CsvOptions::default()).unwrap();
        assert_eq!(got.data.row(1), &[1.0, 0.0]);
        assert!(got.truth.is_none());
        let bad = read_csv_from("0,a\n1,0\n".as_bytes(), CsvOptions::default());
        assert!(matches!(bad, Err(Error::InvalidData(_))));
    }
}
