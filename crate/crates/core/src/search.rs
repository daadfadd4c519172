//! Budgeted, checkpointable search for equal-excitation coset codes.
//!
//! The declared family: both codewords are built on cosets of one
//! 3-dimensional linear subspace of length-`n` binary words, every word has
//! weight `n/2`, and the eight signs of each codeword come from a boolean
//! form of bounded degree over the coset coordinates. Degree 1 gives the
//! eight linear characters of the subspace; degree 2 (the default) adds the
//! quadratic forms and is the smallest class containing the published
//! eight-qubit code, whose sign pattern is quadratic rather than linear.
//! Candidate pairs are tested against the full single-error alphabet with
//! the same matrix-element conditions as [`crate::verify::kl_check`], in
//! exact integer arithmetic.
//!
//! Subspaces are enumerated through their reduced-row-echelon generator
//! matrices in a fixed global order, so a search can be stopped on a budget
//! and resumed from a progress file with an identical final result.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{CodeSpec, SignedWord};
use crate::qsim::BasisWord;
use crate::{Error, Result};

/// The declared restricted family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchFamily {
    /// Register width; odd widths admit no weight-`n/2` words.
    pub n: usize,
    /// Highest degree of the boolean sign forms: 1 for linear characters,
    /// 2 to include quadratic sign patterns.
    pub sign_degree: u8,
}

impl SearchFamily {
    pub fn new(n: usize, sign_degree: u8) -> Result<Self> {
        if n == 0 || n > 10 {
            return Err(Error::InvalidParameter(format!(
                "family width {n} outside supported range"
            )));
        }
        if !(1..=2).contains(&sign_degree) {
            return Err(Error::InvalidParameter(
                "sign_degree must be 1 or 2".into(),
            ));
        }
        Ok(Self { n, sign_degree })
    }
}

/// Limits on one search run. `max_subspaces` counts subspaces scanned by
/// this run (not counting those already covered by a resumed checkpoint),
/// which makes interruption points deterministic for testing.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_subspaces: Option<u64>,
    pub max_millis: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub subspaces_total: u64,
    pub subspaces_scanned: u64,
    pub coset_pairs_screened: u64,
    pub candidates_tested: u64,
}

/// Compact record of one code found by the search: enough to rebuild the
/// full [`CodeSpec`] deterministically via [`FoundCode::build`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundCode {
    /// Subspace enumeration index.
    pub subspace: u64,
    /// Coset leaders (minimal words) of the two codewords.
    pub leader_zero: u32,
    pub leader_one: u32,
    /// Coefficient masks of the boolean sign forms, indexing
    /// monomials x3, x2, x1, x2x3, x1x3, x1x2 from bit 0 up.
    pub sign_zero: u8,
    pub sign_one: u8,
}

impl FoundCode {
    /// Rebuild the full code this record denotes.
    pub fn build(&self, family: &SearchFamily) -> CodeSpec {
        let space = span(&subspace_at(family.n, self.subspace));
        let forms = sign_forms(2);
        let words_a = coset_words(self.leader_zero as usize, &space);
        let words_b = coset_words(self.leader_one as usize, &space);
        build_code(
            family.n,
            self.subspace,
            &words_a,
            &words_b,
            &forms[self.sign_zero as usize],
            &forms[self.sign_one as usize],
        )
    }
}

/// Result of a search run; `complete` is false when a budget ran out first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub complete: bool,
    pub found: Vec<FoundCode>,
    pub stats: SearchStats,
}

impl SearchOutcome {
    /// Materialize up to `limit` of the found codes.
    pub fn build_found(&self, family: &SearchFamily, limit: usize) -> Vec<CodeSpec> {
        self.found.iter().take(limit).map(|f| f.build(family)).collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Checkpoint {
    family: SearchFamily,
    /// Subspaces fully processed, in enumeration order.
    cursor: u64,
    stats: SearchStats,
    found: Vec<FoundCode>,
}

// --- subspace enumeration through RREF generator matrices ---------------

/// Pivot-column triples in lexicographic order.
fn pivot_combos(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Free (non-pivot) columns to the right of each row's pivot.
fn free_slots(n: usize, pivots: &[usize; 3]) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for (row, &p) in pivots.iter().enumerate() {
        for col in (p + 1)..n {
            if !pivots.contains(&col) {
                slots.push((row, col));
            }
        }
    }
    slots
}

/// Number of 3-dimensional subspaces of an `n`-bit word space.
pub fn subspace_count(n: usize) -> u64 {
    pivot_combos(n)
        .iter()
        .map(|p| 1u64 << free_slots(n, p).len())
        .sum()
}

/// Generators of the subspace at a global enumeration index.
fn subspace_at(n: usize, index: u64) -> [usize; 3] {
    let mut remaining = index;
    for pivots in pivot_combos(n) {
        let slots = free_slots(n, &pivots);
        let count = 1u64 << slots.len();
        if remaining < count {
            let col_mask = |c: usize| 1usize << (n - 1 - c);
            let mut rows = [0usize; 3];
            for (row, &p) in pivots.iter().enumerate() {
                rows[row] = col_mask(p);
            }
            for (slot_idx, &(row, col)) in slots.iter().enumerate() {
                if remaining >> slot_idx & 1 == 1 {
                    rows[row] |= col_mask(col);
                }
            }
            return rows;
        }
        remaining -= count;
    }
    unreachable!("index out of range")
}

fn span(generators: &[usize; 3]) -> [usize; 8] {
    let mut v = [0usize; 8];
    for (x, slot) in v.iter_mut().enumerate() {
        let mut w = 0usize;
        for (i, g) in generators.iter().enumerate() {
            if x >> i & 1 == 1 {
                w ^= g;
            }
        }
        *slot = w;
    }
    v
}

// --- per-subspace scanning ------------------------------------------------

/// Leaders (minimal representatives) of cosets whose eight words all have
/// weight `n/2`.
fn constant_weight_coset_leaders(n: usize, space: &[usize; 8]) -> Vec<usize> {
    let half = (n / 2) as u32;
    // Odd-weight elements in the span rule out constant-weight cosets.
    if space.iter().any(|v| v.count_ones() % 2 == 1) {
        return Vec::new();
    }
    let mut visited = vec![false; 1 << n];
    let mut leaders = Vec::new();
    for w in 0..(1usize << n) {
        if visited[w] {
            continue;
        }
        let mut ok = true;
        for v in space {
            let word = w ^ v;
            visited[word] = true;
            ok &= word.count_ones() == half;
        }
        if ok {
            leaders.push(w);
        }
    }
    leaders
}

/// Sign-independent screen for a leader pair: for every one- or two-qubit
/// phase pattern orthogonal to the subspace, the two cosets must agree on
/// its parity, or the diagonal matrix elements of the corresponding
/// phase-type pairs differ between the logical states.
fn prescreen_pair(n: usize, space: &[usize; 8], la: usize, lb: usize) -> bool {
    let parity = |x: usize| x.count_ones() % 2;
    let mut masks = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        masks.push(1usize << i);
        for j in 0..i {
            masks.push(1usize << i | 1usize << j);
        }
    }
    masks.into_iter().all(|m| {
        space.iter().any(|v| parity(m & v) == 1) || parity(m & la) == parity(m & lb)
    })
}

/// One error as `X^a Z^b`: flip the bits in `flip`, pick up a sign from the
/// parity of `phase & word` (evaluated before the flip).
#[derive(Clone, Copy)]
struct PauliWord {
    flip: usize,
    phase: usize,
}

/// Identity plus the full single-error alphabet in the fixed order used by
/// the condition checkers.
fn alphabet_paulis(n: usize) -> Vec<PauliWord> {
    let mut ops = vec![PauliWord { flip: 0, phase: 0 }];
    let mask = |q: usize| 1usize << (n - q);
    ops.extend((1..=n).map(|q| PauliWord { flip: mask(q), phase: 0 }));
    ops.extend((1..=n).map(|q| PauliWord { flip: 0, phase: mask(q) }));
    ops.extend((1..=n).map(|q| PauliWord { flip: mask(q), phase: mask(q) }));
    ops
}

/// The eight words of a coset in coordinate order.
fn coset_words(leader: usize, space: &[usize; 8]) -> [usize; 8] {
    let mut out = [0usize; 8];
    for (x, w) in out.iter_mut().enumerate() {
        *w = leader ^ space[x];
    }
    out
}

/// For an operator pair (E, F), the matched terms of `<E u| F v>` over two
/// signed cosets: a list of `(x_u, x_v, sign)` with the coordinate indices
/// of the words that meet and the sign-independent prefactor.
type MatchList = Vec<(u8, u8, i8)>;

fn match_list(
    e: PauliWord,
    f: PauliWord,
    words_u: &[usize; 8],
    words_v: &[usize; 8],
) -> MatchList {
    let mut out = MatchList::new();
    for (xu, &wu) in words_u.iter().enumerate() {
        let eu_mask = wu ^ e.flip;
        let eu_sign = ((wu & e.phase).count_ones() % 2) as i8;
        for (xv, &wv) in words_v.iter().enumerate() {
            if wv ^ f.flip == eu_mask {
                let fv_sign = ((wv & f.phase).count_ones() % 2) as i8;
                let sign = if (eu_sign + fv_sign) % 2 == 0 { 1 } else { -1 };
                out.push((xu as u8, xv as u8, sign));
            }
        }
    }
    out
}

/// Sign tables of all bounded-degree boolean forms over F_2^3 with zero
/// constant term: `forms[k][x] = +-1`. Degree 1 yields the 8 characters,
/// degree 2 all 64 linear-plus-quadratic forms.
fn sign_forms(degree: u8) -> Vec<[i8; 8]> {
    let monomials: &[usize] = match degree {
        1 => &[0b001, 0b010, 0b100],
        _ => &[0b001, 0b010, 0b100, 0b011, 0b101, 0b110],
    };
    let mut forms = Vec::with_capacity(1 << monomials.len());
    for coeffs in 0..(1usize << monomials.len()) {
        let mut table = [1i8; 8];
        for (x, entry) in table.iter_mut().enumerate() {
            let mut acc = 0u32;
            for (k, &mono) in monomials.iter().enumerate() {
                if coeffs >> k & 1 == 1 && x & mono == mono {
                    acc ^= 1;
                }
            }
            if acc == 1 {
                *entry = -1;
            }
        }
        forms.push(table);
    }
    forms
}

/// Exact integer version of the error-correction condition check over
/// precomputed match lists; mirrors `verify::kl_check`.
fn kl_pass(
    k: usize,
    cross01: &[MatchList],
    diag00: &[MatchList],
    diag11: &[MatchList],
    s0: &[i8; 8],
    s1: &[i8; 8],
) -> bool {
    let dot = |list: &MatchList, su: &[i8; 8], sv: &[i8; 8]| -> i32 {
        list.iter()
            .map(|&(xu, xv, sign)| (su[xu as usize] * sv[xv as usize] * sign) as i32)
            .sum()
    };
    for idx in 0..(k * k) {
        if dot(&cross01[idx], s0, s1) != 0 {
            return false;
        }
        if dot(&diag00[idx], s0, s0) != dot(&diag11[idx], s1, s1) {
            return false;
        }
    }
    true
}

struct SubspaceYield {
    found: Vec<FoundCode>,
    coset_pairs: u64,
    candidates: u64,
}

fn scan_subspace(family: &SearchFamily, index: u64) -> SubspaceYield {
    let n = family.n;
    let generators = subspace_at(n, index);
    let space = span(&generators);
    let leaders = constant_weight_coset_leaders(n, &space);
    let mut result = SubspaceYield { found: Vec::new(), coset_pairs: 0, candidates: 0 };
    if leaders.is_empty() {
        return result;
    }
    let ops = alphabet_paulis(n);
    let k = ops.len();
    let forms = sign_forms(family.sign_degree);

    for (i, &la) in leaders.iter().enumerate() {
        for &lb in &leaders[i..] {
            result.coset_pairs += 1;
            if !prescreen_pair(n, &space, la, lb) {
                continue;
            }
            let words_a = coset_words(la, &space);
            let words_b = coset_words(lb, &space);
            let mut cross01 = Vec::with_capacity(k * k);
            let mut diag00 = Vec::with_capacity(k * k);
            let mut diag11 = Vec::with_capacity(k * k);
            for &e in &ops {
                for &f in &ops {
                    cross01.push(match_list(e, f, &words_a, &words_b));
                    diag00.push(match_list(e, f, &words_a, &words_a));
                    diag11.push(match_list(e, f, &words_b, &words_b));
                }
            }
            let same_coset = la == lb;
            for (qi, s0) in forms.iter().enumerate() {
                for (qj, s1) in forms.iter().enumerate() {
                    if same_coset {
                        // Identical signed sets are the same state; and the
                        // reversed ordering repeats a tested pair.
                        if qj <= qi {
                            continue;
                        }
                        let overlap: i32 =
                            (0..8).map(|x| (s0[x] * s1[x]) as i32).sum();
                        if overlap != 0 {
                            continue;
                        }
                    }
                    result.candidates += 1;
                    if kl_pass(k, &cross01, &diag00, &diag11, s0, s1) {
                        result.found.push(FoundCode {
                            subspace: index,
                            leader_zero: la as u32,
                            leader_one: lb as u32,
                            sign_zero: qi as u8,
                            sign_one: qj as u8,
                        });
                    }
                }
            }
        }
    }
    result
}

fn build_code(
    n: usize,
    subspace_index: u64,
    words_a: &[usize; 8],
    words_b: &[usize; 8],
    s0: &[i8; 8],
    s1: &[i8; 8],
) -> CodeSpec {
    let make = |words: &[usize; 8], signs: &[i8; 8]| -> Vec<SignedWord> {
        words
            .iter()
            .zip(signs)
            .map(|(&w, &s)| {
                SignedWord::new(s, BasisWord::from_index(n, w).expect("in range"))
                    .expect("sign is +-1")
            })
            .collect()
    };
    CodeSpec::new(
        format!("search-n{n}-v{subspace_index}"),
        n,
        make(words_a, s0),
        make(words_b, s1),
    )
    .expect("searched codes satisfy the structural invariants")
}

// --- driver with budget and checkpointing ---------------------------------

fn load_checkpoint(path: &Path, family: &SearchFamily) -> Result<Option<Checkpoint>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path)?;
    let cp: Checkpoint = serde_json::from_str(&text)?;
    if cp.family != *family {
        return Err(Error::InvalidParameter(format!(
            "checkpoint at {} was written for a different family",
            path.display()
        )));
    }
    Ok(Some(cp))
}

fn store_checkpoint(path: &Path, cp: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_string(cp)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Run the family search under a budget, optionally resuming from and
/// writing back a progress file.
///
/// Results are collected in enumeration order regardless of worker
/// scheduling, so outcomes are reproducible and resumable runs match
/// uninterrupted ones exactly.
pub fn search_codes(
    family: &SearchFamily,
    budget: &SearchBudget,
    checkpoint: Option<&Path>,
) -> Result<SearchOutcome> {
    SearchFamily::new(family.n, family.sign_degree)?;
    // Odd widths admit no weight-n/2 words at all.
    if family.n % 2 == 1 {
        return Ok(SearchOutcome {
            complete: true,
            found: Vec::new(),
            stats: SearchStats {
                subspaces_total: subspace_count(family.n),
                ..SearchStats::default()
            },
        });
    }

    let total = subspace_count(family.n);
    let mut cursor = 0u64;
    let mut stats = SearchStats { subspaces_total: total, ..SearchStats::default() };
    let mut found: Vec<FoundCode> = Vec::new();
    if let Some(path) = checkpoint {
        if let Some(cp) = load_checkpoint(path, family)? {
            cursor = cp.cursor;
            stats = cp.stats;
            stats.subspaces_total = total;
            found = cp.found;
        }
    }

    let started = std::time::Instant::now();
    let mut scanned_this_run = 0u64;
    const CHUNK: u64 = 512;

    while cursor < total {
        if let Some(cap) = budget.max_subspaces {
            if scanned_this_run >= cap {
                break;
            }
        }
        if let Some(ms) = budget.max_millis {
            if started.elapsed().as_millis() as u64 >= ms {
                break;
            }
        }
        let mut chunk_end = (cursor + CHUNK).min(total);
        if let Some(cap) = budget.max_subspaces {
            chunk_end = chunk_end.min(cursor + (cap - scanned_this_run));
        }
        let yields: Vec<SubspaceYield> = (cursor..chunk_end)
            .into_par_iter()
            .map(|idx| scan_subspace(family, idx))
            .collect();
        for y in yields {
            stats.coset_pairs_screened += y.coset_pairs;
            stats.candidates_tested += y.candidates;
            found.extend(y.found);
        }
        scanned_this_run += chunk_end - cursor;
        stats.subspaces_scanned += chunk_end - cursor;
        cursor = chunk_end;
        if let Some(path) = checkpoint {
            store_checkpoint(
                path,
                &Checkpoint { family: *family, cursor, stats, found: found.clone() },
            )?;
        }
    }

    Ok(SearchOutcome { complete: cursor >= total, found, stats })
}

/// Signed-word-set equality up to one global sign per codeword and a swap
/// of the logical labels.
pub fn same_code_up_to_global_signs(a: &CodeSpec, b: &CodeSpec) -> bool {
    fn canonical(words: &[SignedWord]) -> Vec<(usize, i8)> {
        let mut v: Vec<(usize, i8)> = words.iter().map(|sw| (sw.word.index(), sw.sign)).collect();
        v.sort_unstable();
        // Fix the global sign so the smallest word carries +1.
        if let Some(&(_, s)) = v.first() {
            if s == -1 {
                for e in &mut v {
                    e.1 = -e.1;
                }
            }
        }
        v
    }
    if a.n != b.n {
        return false;
    }
    let (a0, a1) = (canonical(&a.zero_words), canonical(&a.one_words));
    let (b0, b1) = (canonical(&b.zero_words), canonical(&b.one_words));
    (a0 == b0 && a1 == b1) || (a0 == b1 && a1 == b0)
}
