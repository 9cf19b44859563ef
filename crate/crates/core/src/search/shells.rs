//! Shell-by-shell enumeration with optional checkpointing.
//!
//! Shell `M` holds the tuples with `max |m_i| = M`. A tuple in shell `M > 0`
//! is indexed by the first position `p` with `|m_p| = M`: entries before `p`
//! lie in `[-(M-1), M-1]`, entry `p` is `+-M`, entries after it in `[-M, M]`.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::{exact_verify, FilterForm, Verified};
use crate::curve::MWBasis;
use crate::error::{Error, Result};
use crate::models::Family;

/// Tuples per checkpoint line.
pub const CHUNK: u64 = 10_000_000;

fn block(m: i64, r: usize, p: usize) -> u64 {
    let (a, b) = ((2 * m - 1) as u64, (2 * m + 1) as u64);
    a.pow(p as u32) * 2 * b.pow((r - 1 - p) as u32)
}

pub fn shell_size(m: i64, r: usize) -> u64 {
    if m == 0 {
        1
    } else {
        (0..r).map(|p| block(m, r, p)).sum()
    }
}

pub fn shell_tuple(m: i64, r: usize, idx: u64) -> Vec<i64> {
    let mut out = vec![0i64; r];
    if m == 0 {
        return out;
    }
    let mut idx = idx;
    let mut p = 0;
    while idx >= block(m, r, p) {
        idx -= block(m, r, p);
        p += 1;
    }
    for j in (p + 1..r).rev() {
        let b = (2 * m + 1) as u64;
        out[j] = (idx % b) as i64 - m;
        idx /= b;
    }
    out[p] = if idx.is_multiple_of(2) { -m } else { m };
    idx /= 2;
    for j in (0..p).rev() {
        let b = (2 * m - 1) as u64;
        out[j] = (idx % b) as i64 - (m - 1);
        idx /= b;
    }
    out
}

/// Aggregated progress of a shell run.
#[derive(Clone, Debug, Default)]
pub struct ShellProgress {
    pub tuples: u128,
    pub survivors: u64,
    /// Tuples giving an integral or exceptional point.
    pub found: Vec<Vec<i64>>,
    pub notes: Vec<String>,
}

/// Plain-text progress file: `shell M, tuple index, survivors so far` lines
/// and `found m_1 .. m_r` lines.
#[derive(Clone, Debug)]
pub struct Checkpoint {
    pub path: PathBuf,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Resume {
    pub shell: i64,
    pub index: u64,
    pub survivors: u64,
    pub found: Vec<Vec<i64>>,
}

impl Checkpoint {
    pub fn new(path: &Path) -> Checkpoint {
        Checkpoint {
            path: path.to_path_buf(),
        }
    }

    pub fn load(&self) -> Result<Option<Resume>> {
        let f = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut res: Option<Resume> = None;
        let mut found = Vec::new();
        for line in BufReader::new(f).lines() {
            let line = line?;
            let bad = || Error::ConfigInvalid(vec![format!("unreadable checkpoint line: {line}")]);
            if let Some(rest) = line.strip_prefix("found ") {
                let t: std::result::Result<Vec<i64>, _> =
                    rest.split_whitespace().map(str::parse).collect();
                found.push(t.map_err(|_| bad())?);
            } else if let Some(rest) = line.strip_prefix("shell ") {
                let f: Vec<&str> = rest.split(',').map(str::trim).collect();
                if f.len() != 3 {
                    return Err(bad());
                }
                res = Some(Resume {
                    shell: f[0].parse().map_err(|_| bad())?,
                    index: f[1].parse().map_err(|_| bad())?,
                    survivors: f[2].parse().map_err(|_| bad())?,
                    found: vec![],
                });
            }
        }
        Ok(res.map(|r| Resume { found, ..r }))
    }

    fn append(&self, text: &str) -> Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        f.write_all(text.as_bytes())?;
        Ok(())
    }
}

pub(crate) fn run_shells(
    family: &Family,
    basis: &MWBasis,
    form: &FilterForm,
    m_max: i64,
    workers: usize,
    checkpoint: Option<&Path>,
) -> Result<ShellProgress> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Contract(format!("thread pool: {e}")))?;
    let r = basis.rank();
    let ck = checkpoint.map(Checkpoint::new);
    let resume = match &ck {
        Some(c) => c.load()?,
        None => None,
    };
    let mut prog = ShellProgress::default();
    let (mut start_shell, mut start_idx) = (0, 0);
    if let Some(rs) = resume {
        start_shell = rs.shell;
        start_idx = rs.index;
        prog.survivors = rs.survivors;
        prog.found = rs.found;
        prog.notes
            .push(format!("resumed at shell {}, tuple {}", rs.shell, rs.index));
        prog.tuples = (0..rs.shell)
            .map(|m| shell_size(m, r) as u128)
            .sum::<u128>()
            + rs.index as u128;
    }
    for m in start_shell..=m_max {
        let size = shell_size(m, r);
        let thr = form.threshold(m);
        let mut lo = if m == start_shell { start_idx } else { 0 };
        while lo < size {
            let hi = (lo + CHUNK).min(size);
            let (surv, hits): (u64, Vec<(Vec<i64>, Verified)>) = pool.install(|| {
                let alive: Vec<Vec<i64>> = (lo..hi)
                    .into_par_iter()
                    .map(|i| shell_tuple(m, r, i))
                    .filter(|c| form.survives(c, thr))
                    .collect();
                let hits = alive
                    .par_iter()
                    .map(|c| exact_verify(c, family, basis).map(|v| (c.clone(), v)))
                    .collect::<Result<Vec<_>>>();
                hits.map(|h| (alive.len() as u64, h))
            })?;
            prog.survivors += surv;
            prog.tuples += (hi - lo) as u128;
            let mut text = String::new();
            for (c, v) in hits {
                if matches!(v, Verified::NotIntegral) {
                    continue;
                }
                let line: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                text.push_str(&format!("found {}\n", line.join(" ")));
                prog.found.push(c);
            }
            if let Some(c) = &ck {
                text.push_str(&format!("shell {m}, {hi}, {}\n", prog.survivors));
                c.append(&text)?;
            }
            lo = hi;
        }
    }
    Ok(prog)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn shells_partition_the_cube() {
        for r in 1..4 {
            let mut all = BTreeSet::new();
            for m in 0..=3 {
                for i in 0..shell_size(m, r) {
                    let t = shell_tuple(m, r, i);
                    assert_eq!(t.iter().map(|x| x.abs()).max().unwrap(), m);
                    assert!(all.insert(t));
                }
            }
            assert_eq!(all.len(), 7usize.pow(r as u32));
        }
    }
}
