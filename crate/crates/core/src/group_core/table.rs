use super::{verify_axioms, Element, FiniteGroup};
use crate::error::{Result, TableError};

/// A group given by its full multiplication table.
#[derive(Clone, Debug)]
pub struct CayleyTableGroup {
    n: usize,
    label: String,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl CayleyTableGroup {
    /// Validates `rows` (row `i`, column `j` holds `i * j`) and builds the
    /// group. Element 0 must be the identity.
    pub fn from_rows(rows: Vec<Vec<usize>>, label: &str, seed: u64) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(TableError::NotSquare {
                row: 0,
                expected: 1,
                found: 0,
            }
            .into());
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(TableError::NotSquare {
                    row: i,
                    expected: n,
                    found: row.len(),
                }
                .into());
            }
            if let Some((j, &value)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(TableError::EntryOutOfRange {
                    row: i,
                    col: j,
                    value,
                    order: n,
                }
                .into());
            }
        }
        let mut seen = vec![usize::MAX; n];
        for (i, row) in rows.iter().enumerate() {
            for &v in row {
                if seen[v] == i {
                    return Err(TableError::RowNotLatin(i).into());
                }
                seen[v] = i;
            }
        }
        seen.fill(usize::MAX);
        for j in 0..n {
            for row in &rows {
                let v = row[j];
                if seen[v] == j {
                    return Err(TableError::ColumnNotLatin(j).into());
                }
                seen[v] = j;
            }
        }
        if (0..n).any(|a| rows[0][a] != a || rows[a][0] != a) {
            return Err(TableError::MissingIdentity.into());
        }
        let mut inverses = vec![0u32; n];
        for (a, row) in rows.iter().enumerate() {
            // Latin rows guarantee a unique right inverse.
            let b = row.iter().position(|&v| v == 0).unwrap();
            if rows[b][a] != 0 {
                return Err(TableError::MissingInverse(a).into());
            }
            inverses[a] = b as u32;
        }
        let table = rows.into_iter().flatten().map(|v| v as u32).collect();
        let group = CayleyTableGroup {
            n,
            label: label.to_string(),
            table,
            inverses,
        };
        verify_axioms(&group, seed)?;
        Ok(group)
    }

    /// Materializes the table of any group. Used for quotients and exports.
    pub fn from_group(g: &dyn FiniteGroup, label: &str) -> Self {
        let n = g.order();
        let table = g
            .elements()
            .flat_map(|a| g.elements().map(move |b| g.multiply(a, b) as u32))
            .collect();
        let inverses = g.elements().map(|a| g.inverse(a) as u32).collect();
        CayleyTableGroup {
            n,
            label: label.to_string(),
            table,
            inverses,
        }
    }

    pub(crate) fn from_parts(n: usize, table: Vec<u32>, label: String) -> Self {
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            let b = (0..n).find(|&b| table[a * n + b] == 0).expect("group table");
            inverses[a] = b as u32;
        }
        CayleyTableGroup {
            n,
            label,
            table,
            inverses,
        }
    }
}

impl FiniteGroup for CayleyTableGroup {
    fn order(&self) -> usize {
        self.n
    }

    fn multiply(&self, a: Element, b: Element) -> Element {
        self.table[a * self.n + b] as Element
    }

    fn inverse(&self, a: Element) -> Element {
        self.inverses[a] as Element
    }

    fn descriptor(&self) -> String {
        self.label.clone()
    }
}

/// Parses the plain-text table format: the order `n` on the first content
/// line, then `n` rows of `n` whitespace-separated encodings. Lines starting
/// with `#` and blank lines are skipped. Errors carry 1-based line numbers.
pub fn parse_cayley_table(text: &str) -> std::result::Result<Vec<Vec<usize>>, TableError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first, header) = lines.next().ok_or(TableError::Parse {
        line: 1,
        message: "empty table file".into(),
    })?;
    let n: usize = header.parse().map_err(|_| TableError::Parse {
        line: first,
        message: format!("expected the group order, found {header:?}"),
    })?;
    if n == 0 {
        return Err(TableError::Parse {
            line: first,
            message: "group order must be positive".into(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    let mut last = first;
    for (line, content) in lines {
        last = line;
        if rows.len() == n {
            return Err(TableError::Parse {
                line,
                message: format!("unexpected content after {n} rows"),
            });
        }
        let row = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| TableError::Parse {
                    line,
                    message: format!("{tok:?} is not a non-negative integer"),
                })
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(TableError::Parse {
                line,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= n) {
            return Err(TableError::Parse {
                line,
                message: format!("entry {bad} is outside [0, {})", n),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(TableError::Parse {
            line: last,
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    Ok(rows)
}

/// Renders a group in the format read by [`parse_cayley_table`].
pub fn format_cayley_table(g: &dyn FiniteGroup) -> String {
    let mut out = format!("# {}\n{}\n", g.descriptor(), g.order());
    for a in g.elements() {
        let row: Vec<String> = g.elements().map(|b| g.multiply(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
