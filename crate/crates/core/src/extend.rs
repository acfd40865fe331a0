//! Weighted Kraus forms and completely positive extensions on an auxiliary
//! space.
//!
//! Any Hermitian-preserving map can be written `Phi(X) = sum_i w_i A_i X A_i*`
//! with signed weights taken from the Choi spectrum and operators obtained by
//! unstacking the eigenvectors. Pushing each signed term onto its own
//! auxiliary basis vector turns the sum into a single CP map `Psi` on
//! `M_m (x) M_k` together with a diagonal sign matrix `Q`; contracting the
//! auxiliary factor against `Q` recovers `Phi`:
//!
//! ```text
//! Phi(X) = tr_aux[ Psi(X (x) I_k) (I_n (x) Q) ]
//! ```
//!
//! When the Choi matrix is block-diagonal the auxiliary dimension shrinks:
//! blocks can share auxiliary indices as long as every index carries one
//! global sign. Packing all positive terms into the first `max_i p_i`
//! indices and all negative terms after them keeps the contraction identity
//! intact and yields `k = max_i p_i + max_i q_i`, never more than the total
//! rank.

use num_complex::Complex64;

use crate::choi::{apply_via_choi, HermitianMapSpec, MapAction};
use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::tol::ToleranceConfig;

/// One signed term of a weighted Kraus form: `weight * A X A*`.
#[derive(Debug, Clone)]
pub struct KrausTerm {
    /// Signed weight (a nonzero Choi eigenvalue).
    pub weight: f64,
    /// `n x m` operator with unit Hilbert-Schmidt norm.
    pub operator: ComplexMatrix,
}

/// One term of a CP extension: `magnitude * A X A*` attached to an auxiliary
/// basis vector carrying `sign`.
#[derive(Debug, Clone)]
pub struct ExtensionTerm {
    /// `|weight|`, strictly positive.
    pub magnitude: f64,
    /// `n x m` operator.
    pub operator: ComplexMatrix,
    /// Zero-based auxiliary index; `q[aux_index, aux_index] == sign`.
    pub aux_index: usize,
    /// `+1` or `-1`.
    pub sign: i8,
}

/// A completely positive extension of a Hermitian-preserving map.
///
/// The extension is the CP map `Psi(Y) = sum_t magnitude_t K_t Y K_t*` on
/// `M_m (x) M_k`, with Kraus operators `K_t = operator_t (x) |a_t><a_t|`,
/// and `q` is the Hermitian diagonal sign matrix that contracts it back to
/// the original map.
#[derive(Debug, Clone)]
pub struct CpExtension {
    m: usize,
    n: usize,
    aux_dim: usize,
    terms: Vec<ExtensionTerm>,
    q: ComplexMatrix,
}

impl CpExtension {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the auxiliary space.
    pub fn aux_dim(&self) -> usize {
        self.aux_dim
    }

    pub fn terms(&self) -> &[ExtensionTerm] {
        &self.terms
    }

    /// The Hermitian sign matrix, `aux_dim x aux_dim`, real diagonal with
    /// entries in `{-1, 0, +1}`.
    pub fn q(&self) -> &ComplexMatrix {
        &self.q
    }

    /// Diagonal of `q` as integers.
    pub fn q_diag(&self) -> Vec<i8> {
        (0..self.aux_dim)
            .map(|i| self.q.get(i, i).re.round() as i8)
            .collect()
    }

    /// Checks the structural invariants: `q` real diagonal with entries in
    /// `{-1, 0, +1}` and every term's sign equal to the `q` entry at its
    /// auxiliary index.
    pub fn sign_consistent(&self) -> bool {
        for i in 0..self.aux_dim {
            for j in 0..self.aux_dim {
                let z = self.q.get(i, j);
                if z.im != 0.0 {
                    return false;
                }
                if i != j && z.re != 0.0 {
                    return false;
                }
                if i == j && ![-1.0, 0.0, 1.0].contains(&z.re) {
                    return false;
                }
            }
        }
        self.terms
            .iter()
            .all(|t| self.q.get(t.aux_index, t.aux_index).re == f64::from(t.sign))
    }

    /// Fast contraction path: `sum_t magnitude_t * sign_t * A_t X A_t*`.
    pub fn apply_kraus_sum(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_input(x)?;
        let mut out = ComplexMatrix::zeros(self.n, self.n);
        for t in &self.terms {
            let w = Complex64::new(t.magnitude * f64::from(t.sign), 0.0);
            let axa = t.operator.matmul(x).matmul(&t.operator.adjoint());
            out = &out + &axa.scale(w);
        }
        Ok(out)
    }

    /// The extension as a plain map action on the enlarged spaces, i.e.
    /// `Psi: M_{m k} -> M_{n k}` evaluated on matrix units. Its Choi matrix
    /// is PSD by construction; running it through the usual machinery is the
    /// standard way to double-check an extension.
    pub fn ambient_action(&self) -> Result<MapAction> {
        let mk = self.m * self.aux_dim;
        let kraus: Vec<(f64, ComplexMatrix)> = self
            .terms
            .iter()
            .map(|t| {
                let unit = ComplexMatrix::matrix_unit(self.aux_dim, t.aux_index, t.aux_index)
                    .expect("aux index in range");
                (t.magnitude, t.operator.kron(&unit))
            })
            .collect();
        MapAction::from_fn(mk, self.n * self.aux_dim, |e| {
            let mut img = ComplexMatrix::zeros(self.n * self.aux_dim, self.n * self.aux_dim);
            for (mag, k_op) in &kraus {
                let term = k_op.matmul(e).matmul(&k_op.adjoint());
                img = &img + &term.scale(Complex64::new(*mag, 0.0));
            }
            img
        })
    }

    fn check_input(&self, x: &ComplexMatrix) -> Result<()> {
        if x.rows() != self.m || x.cols() != self.m {
            return Err(Error::DimensionMismatch {
                context: "apply_extension",
                expected: format!("{}x{}", self.m, self.m),
                found: format!("{}x{}", x.rows(), x.cols()),
            });
        }
        Ok(())
    }
}

/// Simultaneous split of the input and output spaces into contiguous
/// blocks; block `i` pairs the `i`-th input range with the `i`-th output
/// range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    pub input_sizes: Vec<usize>,
    pub output_sizes: Vec<usize>,
}

impl BlockPartition {
    pub fn new(input_sizes: Vec<usize>, output_sizes: Vec<usize>) -> Result<Self> {
        if input_sizes.is_empty() || input_sizes.len() != output_sizes.len() {
            return Err(Error::PartitionMismatch {
                context: format!(
                    "need equally many nonzero input and output blocks, got {} and {}",
                    input_sizes.len(),
                    output_sizes.len()
                ),
            });
        }
        if input_sizes.iter().chain(&output_sizes).any(|&s| s == 0) {
            return Err(Error::PartitionMismatch {
                context: "block sizes must be positive".into(),
            });
        }
        Ok(Self {
            input_sizes,
            output_sizes,
        })
    }

    /// Trivial single-block partition.
    pub fn single(m: usize, n: usize) -> Self {
        Self {
            input_sizes: vec![m],
            output_sizes: vec![n],
        }
    }

    pub fn block_count(&self) -> usize {
        self.input_sizes.len()
    }

    pub fn validate_for(&self, m: usize, n: usize) -> Result<()> {
        let (sm, sn) = (
            self.input_sizes.iter().sum::<usize>(),
            self.output_sizes.iter().sum::<usize>(),
        );
        if sm != m || sn != n {
            return Err(Error::PartitionMismatch {
                context: format!("sizes sum to ({sm}, {sn}), map dimensions are ({m}, {n})"),
            });
        }
        Ok(())
    }

    fn input_offset(&self, block: usize) -> usize {
        self.input_sizes[..block].iter().sum()
    }

    fn output_offset(&self, block: usize) -> usize {
        self.output_sizes[..block].iter().sum()
    }

    /// Which block an input index belongs to.
    fn input_block_of(&self, index: usize) -> usize {
        let mut acc = 0;
        for (b, &s) in self.input_sizes.iter().enumerate() {
            acc += s;
            if index < acc {
                return b;
            }
        }
        unreachable!("index within input dimension")
    }

    fn output_block_of(&self, index: usize) -> usize {
        let mut acc = 0;
        for (b, &s) in self.output_sizes.iter().enumerate() {
            acc += s;
            if index < acc {
                return b;
            }
        }
        unreachable!("index within output dimension")
    }
}

/// Signed Kraus terms of the map: weights are the nonzero Choi eigenvalues,
/// operators the unstacked eigenvectors. The term count equals the Choi
/// rank; the zero map yields an empty list.
pub fn kraus_terms(spec: &HermitianMapSpec, tol: &ToleranceConfig) -> Result<Vec<KrausTerm>> {
    spec.ensure_hermitian(tol)?;
    let eig = hermitian_eig(spec.choi(), tol)?;
    let zero = eig.zero_tol();
    let mut terms = Vec::new();
    for (i, &l) in eig.eigenvalues().iter().enumerate() {
        if l.abs() <= zero {
            continue;
        }
        let operator = ComplexMatrix::unvec(&eig.eigenvector(i), spec.n(), spec.m())?;
        terms.push(KrausTerm {
            weight: l,
            operator,
        });
    }
    Ok(terms)
}

/// Builds the CP extension with auxiliary dimension equal to the Choi rank:
/// term `i` rides auxiliary index `i` and `q = diag(sign(lambda_i))`.
pub fn build_extension(spec: &HermitianMapSpec, tol: &ToleranceConfig) -> Result<CpExtension> {
    let kraus = kraus_terms(spec, tol)?;
    if kraus.is_empty() {
        return Err(Error::ZeroRank);
    }
    let aux_dim = kraus.len();
    let mut q = ComplexMatrix::zeros(aux_dim, aux_dim);
    let mut terms = Vec::with_capacity(aux_dim);
    for (i, kt) in kraus.into_iter().enumerate() {
        let sign: i8 = if kt.weight > 0.0 { 1 } else { -1 };
        q.set(i, i, Complex64::new(f64::from(sign), 0.0));
        terms.push(ExtensionTerm {
            magnitude: kt.weight.abs(),
            operator: kt.operator,
            aux_index: i,
            sign,
        });
    }
    Ok(CpExtension {
        m: spec.m(),
        n: spec.n(),
        aux_dim,
        terms,
        q,
    })
}

/// Recovers `Phi(X)` from the extension by the literal tensor computation:
/// assemble `Psi(X (x) I_k)`, multiply by `I_n (x) Q`, and trace out the
/// auxiliary factor. [`CpExtension::apply_kraus_sum`] is the algebraically
/// equal fast path.
pub fn apply_extension(ext: &CpExtension, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    ext.check_input(x)?;
    let (n, k) = (ext.n, ext.aux_dim);
    let y = x.kron(&ComplexMatrix::identity(k));
    let mut psi_y = ComplexMatrix::zeros(n * k, n * k);
    for t in &ext.terms {
        let unit = ComplexMatrix::matrix_unit(k, t.aux_index, t.aux_index)?;
        let kraus_op = t.operator.kron(&unit);
        let contrib = kraus_op.matmul(&y).matmul(&kraus_op.adjoint());
        psi_y = &psi_y + &contrib.scale(Complex64::new(t.magnitude, 0.0));
    }
    let weighted = psi_y.matmul(&ComplexMatrix::identity(n).kron(&ext.q));
    weighted.partial_trace_second(n, k)
}

/// Reduced CP extension for a Choi matrix that is block-diagonal with
/// respect to `partition`.
///
/// Per-block Kraus data is computed independently; block `i`'s positive
/// terms occupy auxiliary indices `0..p_i` and its negative terms occupy
/// `P..P + q_i` with `P = max_i p_i`, so every auxiliary index carries a
/// single global sign and `q = diag(+1 x P, -1 x max_i q_i)`. The resulting
/// auxiliary dimension `P + max_i q_i` never exceeds the total Choi rank.
/// Operators are zero-padded into full `n x m` shape, so the reduction is a
/// single extension on the full spaces.
pub fn block_reduce(
    spec: &HermitianMapSpec,
    partition: &BlockPartition,
    tol: &ToleranceConfig,
) -> Result<CpExtension> {
    spec.ensure_hermitian(tol)?;
    partition.validate_for(spec.m(), spec.n())?;
    check_block_diagonal(spec, partition, tol)?;

    struct BlockData {
        positives: Vec<(f64, ComplexMatrix)>,
        negatives: Vec<(f64, ComplexMatrix)>,
    }

    let mut blocks = Vec::with_capacity(partition.block_count());
    for b in 0..partition.block_count() {
        let sub = extract_block(spec.choi(), partition, b, spec.n());
        let (mb, nb) = (partition.input_sizes[b], partition.output_sizes[b]);
        let eig = hermitian_eig(&sub, tol)?;
        let zero = eig.zero_tol();
        let mut positives = Vec::new();
        let mut negatives = Vec::new();
        for (i, &l) in eig.eigenvalues().iter().enumerate() {
            if l.abs() <= zero {
                continue;
            }
            let local = ComplexMatrix::unvec(&eig.eigenvector(i), nb, mb)?;
            let embedded = embed_operator(
                &local,
                spec.n(),
                spec.m(),
                partition.output_offset(b),
                partition.input_offset(b),
            );
            if l > 0.0 {
                positives.push((l, embedded));
            } else {
                negatives.push((-l, embedded));
            }
        }
        blocks.push(BlockData {
            positives,
            negatives,
        });
    }

    let max_pos = blocks.iter().map(|b| b.positives.len()).max().unwrap_or(0);
    let max_neg = blocks.iter().map(|b| b.negatives.len()).max().unwrap_or(0);
    let aux_dim = max_pos + max_neg;
    if aux_dim == 0 {
        return Err(Error::ZeroRank);
    }

    let mut q = ComplexMatrix::zeros(aux_dim, aux_dim);
    for i in 0..max_pos {
        q.set(i, i, Complex64::ONE);
    }
    for i in max_pos..aux_dim {
        q.set(i, i, -Complex64::ONE);
    }

    let mut terms = Vec::new();
    for block in blocks {
        for (j, (magnitude, operator)) in block.positives.into_iter().enumerate() {
            terms.push(ExtensionTerm {
                magnitude,
                operator,
                aux_index: j,
                sign: 1,
            });
        }
        for (j, (magnitude, operator)) in block.negatives.into_iter().enumerate() {
            terms.push(ExtensionTerm {
                magnitude,
                operator,
                aux_index: max_pos + j,
                sign: -1,
            });
        }
    }

    Ok(CpExtension {
        m: spec.m(),
        n: spec.n(),
        aux_dim,
        terms,
        q,
    })
}

/// Finds the finest contiguous simultaneous partition under which the Choi
/// matrix is block-diagonal.
///
/// Input indices are connected when any Choi entry couples their block rows
/// and columns or when they feed the same output index; components are then
/// merged until both the input ranges and the output support intervals are
/// contiguous and consistently ordered. Input indices the map never touches
/// ride along with their nearest coupled neighbor; unused output indices
/// extend the preceding block. A Choi matrix with no significant entries at
/// all (the zero map) yields the all-singleton partition, with surplus
/// indices absorbed by the last block when the dimensions differ.
pub fn detect_block_partition(spec: &HermitianMapSpec, tol: &ToleranceConfig) -> BlockPartition {
    let (m, n) = (spec.m(), spec.n());
    let choi = spec.choi();
    let threshold = tol.recon_for(choi);

    let mut uf = UnionFind::new(m);
    let mut significant = Vec::new();
    for p in 0..m {
        for k in 0..n {
            for q in 0..m {
                for l in 0..n {
                    if choi.get(p * n + k, q * n + l).norm() > threshold {
                        uf.union(p, q);
                        significant.push((p, k, q, l));
                    }
                }
            }
        }
    }

    if significant.is_empty() {
        let b = m.min(n);
        let mut input_sizes = vec![1; b];
        let mut output_sizes = vec![1; b];
        *input_sizes.last_mut().expect("b >= 1") = m - (b - 1);
        *output_sizes.last_mut().expect("b >= 1") = n - (b - 1);
        return BlockPartition {
            input_sizes,
            output_sizes,
        };
    }

    // Components touching the same output index cannot be separated.
    let mut claimed: Vec<Option<usize>> = vec![None; n];
    for &(p, k, q, l) in &significant {
        for (input, output) in [(p, k), (q, l)] {
            match claimed[output] {
                Some(owner) => uf.union(owner, input),
                None => claimed[output] = Some(input),
            }
        }
    }

    // Inputs the map never touches carry no constraints; attach them to the
    // nearest coupled neighbor so every block has substance.
    let coupled: Vec<bool> = (0..m)
        .map(|p| significant.iter().any(|&(a, _, b, _)| a == p || b == p))
        .collect();
    let first_coupled = coupled.iter().position(|&c| c).expect("some coupling exists");
    for p in 0..m {
        if !coupled[p] {
            if p < first_coupled {
                uf.union(p, first_coupled);
            } else {
                let left = (0..p).rev().find(|&x| coupled[x]).expect("coupled to the left");
                uf.union(p, left);
            }
        }
    }

    // Blocks must be contiguous index ranges: merge components whose input
    // ranges interleave, then merge neighbors whose output support intervals
    // overlap or appear out of order. Each merge only coarsens, so iterate
    // to a fixpoint.
    loop {
        let mut ranges: Vec<(usize, usize, usize)> = Vec::new(); // (root, min, max)
        for p in 0..m {
            let root = uf.find(p);
            match ranges.iter_mut().find(|r| r.0 == root) {
                Some(r) => r.2 = p,
                None => ranges.push((root, p, p)),
            }
        }
        ranges.sort_by_key(|r| r.1);
        let mut merged = false;
        for w in 0..ranges.len().saturating_sub(1) {
            if ranges[w + 1].1 <= ranges[w].2 {
                uf.union(ranges[w].0, ranges[w + 1].0);
                merged = true;
            }
        }
        if merged {
            continue;
        }

        // Output intervals, walked in input order, must be strictly
        // increasing; merge violating neighbors.
        let mut out_span: Vec<(usize, usize, usize)> = Vec::new(); // (root, omin, omax)
        for &(p, k, q, l) in &significant {
            for (input, output) in [(p, k), (q, l)] {
                let root = uf.find(input);
                match out_span.iter_mut().find(|r| r.0 == root) {
                    Some(r) => {
                        r.1 = r.1.min(output);
                        r.2 = r.2.max(output);
                    }
                    None => out_span.push((root, output, output)),
                }
            }
        }
        let order: Vec<usize> = {
            let mut roots: Vec<(usize, usize)> =
                ranges.iter().map(|&(root, lo, _)| (lo, root)).collect();
            roots.sort();
            roots.into_iter().map(|(_, root)| root).collect()
        };
        for w in 0..order.len().saturating_sub(1) {
            let cur = out_span.iter().find(|r| r.0 == order[w]);
            let next = out_span.iter().find(|r| r.0 == order[w + 1]);
            if let (Some(&(_, _, cur_hi)), Some(&(_, next_lo, _))) = (cur, next) {
                if next_lo <= cur_hi {
                    uf.union(order[w], order[w + 1]);
                    merged = true;
                }
            }
        }
        if !merged {
            break;
        }
    }

    // Emit: input runs in order, output intervals stretched to cover [0, n).
    let mut input_starts: Vec<usize> = Vec::new();
    let mut prev_root = None;
    for p in 0..m {
        let root = Some(uf.find(p));
        if root != prev_root {
            input_starts.push(p);
            prev_root = root;
        }
    }
    let b = input_starts.len();
    let mut input_sizes = Vec::with_capacity(b);
    for (t, &start) in input_starts.iter().enumerate() {
        let end = if t + 1 < b { input_starts[t + 1] } else { m };
        input_sizes.push(end - start);
    }

    let block_of_input = |input: usize| -> usize {
        input_starts
            .iter()
            .rposition(|&s| s <= input)
            .expect("input after first start")
    };
    let mut out_bounds: Vec<(usize, usize)> = vec![(usize::MAX, 0); b];
    for &(p, k, q, l) in &significant {
        for (input, output) in [(p, k), (q, l)] {
            let t = block_of_input(input);
            out_bounds[t].0 = out_bounds[t].0.min(output);
            out_bounds[t].1 = out_bounds[t].1.max(output);
        }
    }
    let mut output_sizes = Vec::with_capacity(b);
    let mut cursor = 0usize;
    for t in 0..b {
        let end = if t + 1 == b { n } else { out_bounds[t + 1].0 };
        output_sizes.push(end - cursor);
        cursor = end;
    }

    BlockPartition {
        input_sizes,
        output_sizes,
    }
}

/// Choi ranks of the diagonal blocks singled out by `partition`.
pub fn block_ranks(
    spec: &HermitianMapSpec,
    partition: &BlockPartition,
    tol: &ToleranceConfig,
) -> Result<Vec<usize>> {
    partition.validate_for(spec.m(), spec.n())?;
    let mut ranks = Vec::with_capacity(partition.block_count());
    for b in 0..partition.block_count() {
        let sub = extract_block(spec.choi(), partition, b, spec.n());
        ranks.push(hermitian_eig(&sub, tol)?.rank());
    }
    Ok(ranks)
}

/// Direct sum of maps: block-diagonal Choi matrix on the summed spaces.
pub fn direct_sum(parts: &[HermitianMapSpec]) -> Result<HermitianMapSpec> {
    if parts.is_empty() {
        return Err(Error::PartitionMismatch {
            context: "direct sum of zero maps".into(),
        });
    }
    let m: usize = parts.iter().map(|p| p.m()).sum();
    let n: usize = parts.iter().map(|p| p.n()).sum();
    let mut choi = ComplexMatrix::zeros(m * n, m * n);
    let mut m_off = 0usize;
    let mut n_off = 0usize;
    for part in parts {
        let (mb, nb) = (part.m(), part.n());
        for a in 0..mb {
            for k in 0..nb {
                for bq in 0..mb {
                    for l in 0..nb {
                        choi.set(
                            (m_off + a) * n + (n_off + k),
                            (m_off + bq) * n + (n_off + l),
                            part.choi().get(a * nb + k, bq * nb + l),
                        );
                    }
                }
            }
        }
        m_off += mb;
        n_off += nb;
    }
    HermitianMapSpec::from_choi(m, n, choi)
}

fn check_block_diagonal(
    spec: &HermitianMapSpec,
    partition: &BlockPartition,
    tol: &ToleranceConfig,
) -> Result<()> {
    let (m, n) = (spec.m(), spec.n());
    let choi = spec.choi();
    let threshold = tol.recon_for(choi);
    let mut worst = 0.0f64;
    let mut worst_pair = (0usize, 0usize);
    for p in 0..m {
        for k in 0..n {
            for q in 0..m {
                for l in 0..n {
                    let pb = partition.input_block_of(p);
                    let qb = partition.input_block_of(q);
                    let kb = partition.output_block_of(k);
                    let lb = partition.output_block_of(l);
                    let aligned = pb == qb && kb == pb && lb == pb;
                    if aligned {
                        continue;
                    }
                    let mag = choi.get(p * n + k, q * n + l).norm();
                    if mag > worst {
                        worst = mag;
                        worst_pair = (pb.min(qb), qb.max(pb));
                    }
                }
            }
        }
    }
    if worst > threshold {
        return Err(Error::BlockCoupling {
            row_block: worst_pair.0,
            col_block: worst_pair.1,
            magnitude: worst,
        });
    }
    Ok(())
}

/// Sub-Choi matrix of diagonal block `b`.
fn extract_block(
    choi: &ComplexMatrix,
    partition: &BlockPartition,
    b: usize,
    n: usize,
) -> ComplexMatrix {
    let (mb, nb) = (partition.input_sizes[b], partition.output_sizes[b]);
    let (m_off, n_off) = (partition.input_offset(b), partition.output_offset(b));
    let mut sub = ComplexMatrix::zeros(mb * nb, mb * nb);
    for a in 0..mb {
        for k in 0..nb {
            for q in 0..mb {
                for l in 0..nb {
                    sub.set(
                        a * nb + k,
                        q * nb + l,
                        choi.get((m_off + a) * n + (n_off + k), (m_off + q) * n + (n_off + l)),
                    );
                }
            }
        }
    }
    sub
}

/// Zero-pads a block operator into full `n x m` shape at the given offsets.
fn embed_operator(
    local: &ComplexMatrix,
    n: usize,
    m: usize,
    row_off: usize,
    col_off: usize,
) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(n, m);
    for r in 0..local.rows() {
        for c in 0..local.cols() {
            out.set(row_off + r, col_off + c, local.get(r, c));
        }
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Convenience wrapper: reconstruction error of an extension against the
/// Choi action of the original map, measured on one input.
pub fn reconstruction_error(
    ext: &CpExtension,
    spec: &HermitianMapSpec,
    x: &ComplexMatrix,
) -> Result<f64> {
    let via_ext = apply_extension(ext, x)?;
    let via_choi = apply_via_choi(spec, x)?;
    Ok(via_ext.max_diff(&via_choi))
}
