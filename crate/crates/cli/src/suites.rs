//! Exhaustive enumerations driving the verification suites.

use yoneda_core::quiver::KupischSeries;
use yoneda_core::reduction::SequenceLengths;
use yoneda_core::Error;

use crate::jobs::MAX_P_EXHAUSTIVE;

/// Exhaustive, duplicate-free enumeration of admissible linear Kupisch
/// series of length at most `p_max`, in lexicographic order (prefixes
/// first).
pub fn enumerate_kupisch(p_max: usize) -> Result<Vec<KupischSeries>, Error> {
    if p_max > MAX_P_EXHAUSTIVE {
        return Err(Error::InvalidInput(format!(
            "p_max {p_max} exceeds the exhaustive-mode bound {MAX_P_EXHAUSTIVE}"
        )));
    }
    let mut out = Vec::new();
    if p_max == 0 {
        return Ok(out);
    }
    let mut current = vec![1usize];
    fn rec(current: &mut Vec<usize>, p_max: usize, out: &mut Vec<KupischSeries>) {
        out.push(KupischSeries::linear(current.clone()).expect("valid by construction"));
        if current.len() == p_max {
            return;
        }
        let last = *current.last().unwrap();
        for next in 1..=last + 1 {
            current.push(next);
            rec(current, p_max, out);
            current.pop();
        }
    }
    rec(&mut current, p_max, &mut out);
    Ok(out)
}

/// Exhaustive cyclic series with `p <= p_max` and entries `2..=c_max`.
pub fn enumerate_cyclic(p_max: usize, c_max: usize) -> Result<Vec<KupischSeries>, Error> {
    if p_max > MAX_P_EXHAUSTIVE {
        return Err(Error::InvalidInput(format!(
            "p_max {p_max} exceeds the exhaustive-mode bound {MAX_P_EXHAUSTIVE}"
        )));
    }
    let mut out = Vec::new();
    for p in 1..=p_max {
        let mut current: Vec<usize> = Vec::new();
        enumerate_cyclic_rec(&mut current, p, c_max, &mut out);
    }
    Ok(out)
}

fn enumerate_cyclic_rec(
    current: &mut Vec<usize>,
    p: usize,
    c_max: usize,
    out: &mut Vec<KupischSeries>,
) {
    if current.len() == p {
        if let Ok(series) = KupischSeries::cyclic(current.clone()) {
            out.push(series);
        }
        return;
    }
    for c in 2..=c_max {
        // Prune: consecutive constraint against the previous entry.
        if let Some(&prev) = current.last() {
            if c > prev + 1 {
                continue;
            }
        }
        current.push(c);
        enumerate_cyclic_rec(current, p, c_max, out);
        current.pop();
    }
}

/// Exhaustive valid interior-length data with `d <= d_max` and every
/// `len M_i <= m_max` (the last entry is forced by the recurrences and
/// automatically within the bound).
pub fn enumerate_lengths(d_max: usize, m_max: usize) -> Vec<SequenceLengths> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        let mut current: Vec<usize> = Vec::new();
        rec_lengths(&mut current, d, m_max, &mut out);
    }
    out
}

fn rec_lengths(current: &mut Vec<usize>, d: usize, m_max: usize, out: &mut Vec<SequenceLengths>) {
    if current.len() == d {
        // The last interior length is forced: len M_{d+1} = len N_d + 1.
        let mut lengths = current.clone();
        let mut n_prev = 1usize;
        for &m in current.iter() {
            n_prev = m - n_prev;
        }
        lengths.push(n_prev + 1);
        if let Ok(sl) = SequenceLengths::new(&lengths) {
            out.push(sl);
        }
        return;
    }
    // len M_i must exceed the running image length.
    let mut n_prev = 1usize;
    for &m in current.iter() {
        n_prev = m - n_prev;
    }
    for m in (n_prev + 1)..=m_max {
        current.push(m);
        rec_lengths(current, d, m_max, out);
        current.pop();
    }
}
