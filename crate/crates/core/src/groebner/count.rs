use std::time::Instant;

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Counts monomials in `nvars` variables not divisible by any of `leads`.
///
/// Depth-first over the exponent box, one variable at a time. At the last
/// variable the admissible exponents form an interval `[0, b)` where `b` is
/// the smallest last exponent among the generators dividing the prefix, so
/// that level is counted in closed form. `visits` counts prefixes explored.
pub fn count_complement(
    nvars: usize,
    leads: &[Monomial],
    visits: &mut u64,
    max_visits: u64,
) -> Result<u64> {
    count_complement_until(nvars, leads, visits, max_visits, None)
}

/// As [`count_complement`], giving up with `DeadlineExceeded` past `deadline`.
pub fn count_complement_until(
    nvars: usize,
    leads: &[Monomial],
    visits: &mut u64,
    max_visits: u64,
    deadline: Option<Instant>,
) -> Result<u64> {
    if leads.iter().any(Monomial::is_one) {
        return Ok(0);
    }
    if nvars == 0 {
        return Ok(1);
    }
    let gens: Vec<&[u32]> = leads.iter().map(|m| m.exponents()).collect();
    let mut prefix = vec![0u32; nvars];
    let all: Vec<usize> = (0..gens.len()).collect();
    let mut total = 0u64;
    let caps = Caps {
        max_visits,
        deadline,
    };
    descend(&gens, 0, &all, &mut prefix, &mut total, visits, &caps)?;
    Ok(total)
}

struct Caps {
    max_visits: u64,
    deadline: Option<Instant>,
}

/// `cands` are the generators whose exponents at positions `< level` are
/// bounded by the prefix.
fn descend(
    gens: &[&[u32]],
    level: usize,
    cands: &[usize],
    prefix: &mut [u32],
    total: &mut u64,
    visits: &mut u64,
    caps: &Caps,
) -> Result<()> {
    *visits += 1;
    if *visits > caps.max_visits {
        return Err(Error::ResourceLimit {
            what: format!("standard-monomial visit cap {}", caps.max_visits),
            basis_size: gens.len(),
        });
    }
    if *visits % 4096 == 0 {
        if let Some(d) = caps.deadline {
            if Instant::now() > d {
                return Err(Error::DeadlineExceeded {
                    basis_size: gens.len(),
                });
            }
        }
    }
    let nvars = prefix.len();
    if level == nvars - 1 {
        let bound = cands
            .iter()
            .map(|&g| gens[g][level])
            .min()
            .ok_or(Error::NotZeroDimensional)?;
        *total += bound as u64;
        return Ok(());
    }
    // some candidate must vanish past this level, otherwise the box is unbounded
    if !cands.iter().any(|&g| gens[g][level + 1..].iter().all(|&x| x == 0)) {
        return Err(Error::NotZeroDimensional);
    }
    // generators enter the candidate set once e reaches their exponent here
    let mut by_exp: Vec<usize> = cands.to_vec();
    by_exp.sort_by_key(|&g| gens[g][level]);
    let mut active: Vec<usize> = Vec::with_capacity(by_exp.len());
    let mut next = 0;
    let mut e = 0u32;
    loop {
        while next < by_exp.len() && gens[by_exp[next]][level] <= e {
            active.push(by_exp[next]);
            next += 1;
        }
        // an active generator vanishing past this level divides every extension
        if active.iter().any(|&g| gens[g][level + 1..].iter().all(|&x| x == 0)) {
            break;
        }
        prefix[level] = e;
        descend(gens, level + 1, &active, prefix, total, visits, caps)?;
        e += 1;
    }
    prefix[level] = 0;
    Ok(())
}
