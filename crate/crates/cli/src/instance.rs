//! Named SpGEMM instances for sweeps.

use std::path::Path;

use spgemm_hg::sparse::{amg_ap, amg_ptap, gen_erdos_renyi, load_matrix_market, strip_empty};
use spgemm_hg::NonzeroStructure;

use crate::error::{read_file, CliError, CliResult};

/// An instance spec such as `amg-ap:6`, `amg-ptap:12`, `er:100:4:7`,
/// `mtx:a.mtx` (A times A), `mtx-at:a.mtx` (A times its transpose) or
/// `mtx:a.mtx,b.mtx`.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec {
    pub name: String,
    /// Coarse grid points of AMG instances, `(N/3)^3`.
    pub coarse_points: Option<usize>,
}

fn num<T: std::str::FromStr>(tok: &str, what: &str, spec: &str) -> CliResult<T> {
    tok.parse().map_err(|_| CliError::User(format!("instance '{spec}': bad {what} '{tok}'")))
}

impl InstanceSpec {
    pub fn parse(s: &str) -> CliResult<Self> {
        let fields: Vec<&str> = s.split(':').collect();
        let coarse_points = match fields.as_slice() {
            ["amg-ap" | "amg-ptap", n] => {
                let n: usize = num(n, "grid side", s)?;
                if n == 0 || !n.is_multiple_of(3) {
                    return Err(CliError::User(format!("instance '{s}': grid side must be a positive multiple of 3")));
                }
                Some((n / 3).pow(3))
            }
            ["er", n, d, seed] => {
                num::<usize>(n, "n", s)?;
                num::<f64>(d, "d", s)?;
                num::<u64>(seed, "seed", s)?;
                None
            }
            ["mtx" | "mtx-at", path] if !path.is_empty() => None,
            _ => return Err(CliError::User(format!("unknown instance '{s}'"))),
        };
        Ok(Self { name: s.to_string(), coarse_points })
    }

    /// Loads the operands relative to `base` and strips empty lines.
    pub fn load(&self, base: &Path) -> CliResult<(NonzeroStructure, NonzeroStructure)> {
        let fields: Vec<&str> = self.name.split(':').collect();
        let mtx = |p: &str| -> CliResult<NonzeroStructure> { Ok(load_matrix_market(&read_file(&base.join(p))?)?) };
        let (a, b) = match fields.as_slice() {
            ["amg-ap", n] => amg_ap(n.parse().unwrap())?,
            ["amg-ptap", n] => amg_ptap(n.parse().unwrap())?,
            ["er", n, d, seed] => {
                let a = gen_erdos_renyi(n.parse().unwrap(), d.parse().unwrap(), seed.parse().unwrap())?;
                (a.clone(), a)
            }
            ["mtx-at", path] => {
                let a = mtx(path)?;
                let t = a.transpose();
                (a, t)
            }
            ["mtx", paths] => match paths.split_once(',') {
                Some((pa, pb)) => (mtx(pa)?, mtx(pb)?),
                None => {
                    let a = mtx(paths)?;
                    (a.clone(), a)
                }
            },
            _ => unreachable!("validated in parse"),
        };
        let st = strip_empty(&a, &b)?;
        Ok((st.a, st.b))
    }
}
