//! The objects of the construction: the input ideal I_Z = (phi_0..phi_n),
//! Koszul differentials of the generator row, the symmetric-algebra ideal
//! I_X = (y M), the Koszul hull I_K = (2x2 minors of psi), the
//! Eagon-Northcott complex of psi, the predicted minimal resolution shape,
//! the patched resolution of I_X, first Koszul homology, and fibre ranks
//! of the presentation matrix at points.

use std::collections::HashMap;

use crate::bidegree::BiDegree;
use crate::complex::{BettiTable, ChainComplex};
use crate::error::AlgebraError;
use crate::field::Field;
use crate::groebner::hilbert::binomial;
use crate::groebner::{syzygy_matrix, GroebnerBasis, Lifter};
use crate::linalg;
use crate::matrix::{GradedFreeModule, PolyMatrix};
use crate::poly::{Polynomial, Ring, RingRef};

/// n+1 linearly independent forms of one degree eta >= 2 in R = k[x_0..x_n].
#[derive(Clone, Debug)]
pub struct InputIdeal<K: Field> {
    pub n: usize,
    pub eta: u32,
    ring_r: RingRef<K>,
    ring_s: RingRef<K>,
    gens: Vec<Polynomial<K>>,
}

impl<K: Field> InputIdeal<K> {
    pub fn new(ring_r: &RingRef<K>, gens: Vec<Polynomial<K>>) -> Result<Self, AlgebraError> {
        if ring_r.num_y != 0 {
            return Err(AlgebraError::InvalidInput(
                "input generators must live in the x-only ring".into(),
            ));
        }
        if ring_r.num_x < 2 {
            return Err(AlgebraError::InvalidInput("need n >= 1, i.e. at least two variables".into()));
        }
        let n = ring_r.num_x - 1;
        if gens.len() != n + 1 {
            return Err(AlgebraError::InvalidInput(format!(
                "expected {} generators, found {}",
                n + 1,
                gens.len()
            )));
        }
        let mut eta: Option<u32> = None;
        for g in &gens {
            let d = g.bidegree().ok_or_else(|| {
                AlgebraError::InvalidInput("generators must be homogeneous and nonzero".into())
            })?;
            if d.y != 0 || d.x < 0 {
                return Err(AlgebraError::InvalidInput("generators must be x-forms".into()));
            }
            match eta {
                None => eta = Some(d.x as u32),
                Some(e) if e == d.x as u32 => {}
                Some(_) => {
                    return Err(AlgebraError::InvalidInput(
                        "generators are not equigenerated".into(),
                    ))
                }
            }
        }
        let eta = eta.unwrap();
        if eta < 2 {
            return Err(AlgebraError::InvalidInput(
                "generator degree eta must be at least 2".into(),
            ));
        }
        if !linearly_independent(ring_r, &gens) {
            return Err(AlgebraError::InvalidInput(
                "generators are linearly dependent over the field".into(),
            ));
        }
        let ring_s = Ring::bigraded_ring(
            ring_r.field.clone(),
            ring_r.num_x,
            ring_r.num_x,
            ring_r.order,
        );
        Ok(InputIdeal {
            n,
            eta,
            ring_r: ring_r.clone(),
            ring_s,
            gens,
        })
    }

    pub fn ring_r(&self) -> &RingRef<K> {
        &self.ring_r
    }

    pub fn ring_s(&self) -> &RingRef<K> {
        &self.ring_s
    }

    pub fn generators(&self) -> &[Polynomial<K>] {
        &self.gens
    }

    pub fn generators_in_s(&self) -> Vec<Polynomial<K>> {
        self.gens.iter().map(|g| g.into_ring(&self.ring_s)).collect()
    }

    /// The row matrix Phi = (phi_0 .. phi_n): R(-eta)^{n+1} -> R.
    pub fn phi_row(&self) -> PolyMatrix<K> {
        PolyMatrix::generator_row(&self.ring_r, &self.gens).expect("validated generators")
    }
}

/// k-linear independence via the coefficient matrix of the forms.
fn linearly_independent<K: Field>(ring: &RingRef<K>, gens: &[Polynomial<K>]) -> bool {
    let mut index: HashMap<Vec<u16>, usize> = HashMap::new();
    for g in gens {
        for (m, _) in g.terms() {
            let next = index.len();
            index.entry(m.exps().to_vec()).or_insert(next);
        }
    }
    let rows: Vec<Vec<K::Elem>> = gens
        .iter()
        .map(|g| {
            let mut row = vec![ring.field.zero(); index.len()];
            for (m, c) in g.terms() {
                row[index[m.exps()]] = c.clone();
            }
            row
        })
        .collect();
    linalg::rank(&ring.field, rows) == gens.len()
}

/// Subsets of {0..n_elems-1} of the given size, lexicographically.
pub(crate) fn subsets(n_elems: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, start: usize, n: usize, size: usize) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for v in start..n {
            current.push(v);
            rec(out, current, v + 1, n, size);
            current.pop();
        }
    }
    rec(&mut out, &mut current, 0, n_elems, size);
    out
}

/// The i-th Koszul differential wedge^{i+1} P_1 -> wedge^i P_1 of the row
/// (phi_0 .. phi_n), with d(e_T) = sum_k (-1)^{|T|-1-k} phi_{t_k} e_{T - t_k}.
/// For i = 1 this is the matrix displayed with first column (phi_1, -phi_0, 0, ..).
pub fn koszul_differential<K: Field>(
    ring: &RingRef<K>,
    phis: &[Polynomial<K>],
    i: usize,
) -> Result<PolyMatrix<K>, AlgebraError> {
    let m = phis.len();
    if i < 1 || i > m {
        return Err(AlgebraError::IndexOutOfRange(format!(
            "koszul differential index {i} outside 1..={m}"
        )));
    }
    let d = phis
        .first()
        .and_then(|p| p.bidegree())
        .ok_or_else(|| AlgebraError::InvalidInput("koszul row needs nonzero forms".into()))?;
    let tgt_sets = subsets(m, i);
    let src_sets = subsets(m, i + 1);
    let tgt_index: HashMap<&[usize], usize> = tgt_sets
        .iter()
        .enumerate()
        .map(|(k, s)| (s.as_slice(), k))
        .collect();
    let shift_of = |size: usize| BiDegree::new(d.x * size as i32, d.y * size as i32);
    let target = GradedFreeModule::free(shift_of(i), tgt_sets.len());
    let source = GradedFreeModule::free(shift_of(i + 1), src_sets.len());
    let mut out = PolyMatrix::zero(ring, target, source);
    for (col, t_set) in src_sets.iter().enumerate() {
        for (k, &t) in t_set.iter().enumerate() {
            let mut reduced = t_set.clone();
            reduced.remove(k);
            let row = tgt_index[reduced.as_slice()];
            let sign_positive = (t_set.len() - 1 - k) % 2 == 0;
            let val = if sign_positive {
                phis[t].clone()
            } else {
                phis[t].neg()
            };
            out.set(row, col, out.entry(row, col).add(&val));
        }
    }
    Ok(out)
}

/// Move a matrix over R into S entry-wise; shifts carry over unchanged.
pub fn matrix_into_ring<K: Field>(m: &PolyMatrix<K>, target_ring: &RingRef<K>) -> PolyMatrix<K> {
    let mut out = PolyMatrix::zero(target_ring, m.target.clone(), m.source.clone());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m.entry(r, c).is_zero() {
                out.set(r, c, m.entry(r, c).into_ring(target_ring));
            }
        }
    }
    out
}

/// Generators of I_X: the entries of the row (y_0 .. y_n) . M, where M is
/// the presentation matrix of I_Z. Each entry is bihomogeneous of bidegree
/// (column degree - eta, 1).
pub fn symmetric_algebra_ideal<K: Field>(
    ring_s: &RingRef<K>,
    m: &PolyMatrix<K>,
) -> Result<Vec<Polynomial<K>>, AlgebraError> {
    if m.rows() != ring_s.num_y {
        return Err(AlgebraError::ShapeMismatch(format!(
            "presentation matrix must have {} rows, found {}",
            ring_s.num_y,
            m.rows()
        )));
    }
    m.validate()?;
    let m_s = matrix_into_ring(m, ring_s);
    m_s.y_row_product()
}

/// Generators of the Koszul hull ideal I_K: the 2x2 minors
/// phi_i y_j - phi_j y_i of psi, for i < j. As an ideal this equals the
/// entries of y k_1(Phi).
pub fn koszul_hull_ideal<K: Field>(input: &InputIdeal<K>) -> Vec<Polynomial<K>> {
    let ring_s = input.ring_s();
    let phis = input.generators_in_s();
    let mut out = Vec::new();
    for i in 0..phis.len() {
        for j in (i + 1)..phis.len() {
            let yi = Polynomial::y_var(ring_s, i);
            let yj = Polynomial::y_var(ring_s, j);
            out.push(phis[i].mul(&yj).sub(&phis[j].mul(&yi)));
        }
    }
    out
}

/// The 2 x (n+1) matrix psi with rows (phi_0..phi_n) and (y_0..y_n).
pub fn psi_matrix<K: Field>(input: &InputIdeal<K>) -> PolyMatrix<K> {
    let ring_s = input.ring_s();
    let eta = input.eta as i32;
    let target = GradedFreeModule::new(vec![BiDegree::new(-eta, 0), BiDegree::new(0, -1)]);
    let source = GradedFreeModule::free(BiDegree::zero(), input.n + 1);
    let mut psi = PolyMatrix::zero(ring_s, target, source);
    for (c, phi) in input.generators_in_s().into_iter().enumerate() {
        psi.set(0, c, phi);
        psi.set(1, c, Polynomial::y_var(ring_s, c));
    }
    psi
}

/// The Eagon-Northcott complex of psi: 0 -> Q_n -> ... -> Q_1 -> S with
/// Q_i = sum over j in 0..i of S(-(i-j)eta, -j-1)^C(n+1, i+1), realized on
/// the basis (xi-symbol count j, wedge set T). The first differential is
/// the row of 2x2 minors; higher differentials contract one wedge slot
/// against the matching row of psi with Koszul signs.
pub fn eagon_northcott_complex<K: Field>(
    input: &InputIdeal<K>,
) -> Result<ChainComplex<K>, AlgebraError> {
    let ring_s = input.ring_s();
    let n = input.n;
    let eta = input.eta as i32;
    let phis = input.generators_in_s();
    let m = n + 1;

    // basis of Q_i: (j, T) with 0 <= j <= i-1 and |T| = i+1, ordered by j
    // then lexicographically on T
    let basis_of = |i: usize| -> Vec<(usize, Vec<usize>)> {
        let mut out = Vec::new();
        for j in 0..i {
            for t in subsets(m, i + 1) {
                out.push((j, t));
            }
        }
        out
    };
    let shift_of = |i: usize, j: usize| BiDegree::new((i as i32 - j as i32) * eta, j as i32 + 1);

    let mut modules = vec![GradedFreeModule::unit()];
    for i in 1..=n {
        let shifts = basis_of(i)
            .iter()
            .map(|(j, _)| shift_of(i, *j))
            .collect();
        modules.push(GradedFreeModule::new(shifts));
    }

    let mut diffs = Vec::new();
    // d_1: minors of psi
    {
        let base = basis_of(1);
        let mut d1 = PolyMatrix::zero(ring_s, modules[0].clone(), modules[1].clone());
        for (col, (_, t)) in base.iter().enumerate() {
            let (a, b) = (t[0], t[1]);
            let ya = Polynomial::y_var(ring_s, a);
            let yb = Polynomial::y_var(ring_s, b);
            let minor = phis[a].mul(&yb).sub(&phis[b].mul(&ya));
            d1.set(0, col, minor);
        }
        diffs.push(d1);
    }
    // d_i for i >= 2: contraction
    for i in 2..=n {
        let src = basis_of(i);
        let tgt = basis_of(i - 1);
        let tgt_index: HashMap<(usize, &[usize]), usize> = tgt
            .iter()
            .enumerate()
            .map(|(k, (j, t))| ((*j, t.as_slice()), k))
            .collect();
        let mut d = PolyMatrix::zero(ring_s, modules[i - 1].clone(), modules[i].clone());
        for (col, (j, t_set)) in src.iter().enumerate() {
            let u_count = (i - 1) - j; // phi-symbol multiplicity
            for (k, &t) in t_set.iter().enumerate() {
                let mut reduced = t_set.clone();
                reduced.remove(k);
                let sign = k % 2 == 0;
                // contract against the phi row
                if u_count >= 1 {
                    let row = tgt_index[&(*j, reduced.as_slice())];
                    let val = if sign { phis[t].clone() } else { phis[t].neg() };
                    d.set(row, col, d.entry(row, col).add(&val));
                }
                // contract against the y row
                if *j >= 1 {
                    let row = tgt_index[&(j - 1, reduced.as_slice())];
                    let yt = Polynomial::y_var(ring_s, t);
                    let val = if sign { yt } else { yt.neg() };
                    d.set(row, col, d.entry(row, col).add(&val));
                }
            }
        }
        diffs.push(d);
    }
    let complex = ChainComplex::new(ring_s, modules, diffs);
    complex.validate()?;
    Ok(complex)
}

/// The predicted minimal resolution of I_X from the main structure
/// theorem: position i carries P_{i+1} tensor S(eta,-1) together with
/// Q_{i,j} = S(-(i-j)eta, -j-1)^C(n+1,i+1) for j in 1..i-1. The top
/// position n is the pure Q''_n block.
#[derive(Clone, Debug)]
pub struct PredictedResolution {
    pub betti: BettiTable,
    pub modules: Vec<GradedFreeModule>,
}

pub fn predicted_resolution_theorem2<K: Field>(
    iz_resolution: &ChainComplex<K>,
    eta: u32,
    n: usize,
) -> PredictedResolution {
    let eta = eta as i32;
    let mut betti = BettiTable::default();
    let mut modules = vec![GradedFreeModule::unit()];
    for i in 1..=n {
        let mut shifts: Vec<BiDegree> = Vec::new();
        // P''_i = P_{i+1} tensor S(eta, -1)
        if i < iz_resolution.length() {
            for s in &iz_resolution.modules[i + 1].shifts {
                shifts.push(BiDegree::new(s.x - eta, 1));
            }
        }
        // Q''_i = sum_{j=1}^{i-1} Q_{i,j}
        let mult = binomial(n as i64 + 1, i as i64 + 1) as usize;
        for j in 1..i {
            let shift = BiDegree::new((i as i32 - j as i32) * eta, j as i32 + 1);
            for _ in 0..mult {
                shifts.push(shift);
            }
        }
        for &s in &shifts {
            betti.add(i, s, 1);
        }
        modules.push(GradedFreeModule::new(shifts));
    }
    PredictedResolution { betti, modules }
}

/// The dualized shifted complex P'_bullet over S: P'_i = P_{n+1-i}^dual
/// tensor S(-n eta, -1), whose cokernel at P'_1 is I_X/I_K up to the
/// quotient identification. Input is the minimal resolution of R/I_Z
/// (with P_0 = R at homological position 0), which must have length n.
pub fn quotient_dual_complex<K: Field>(
    input: &InputIdeal<K>,
    rz_resolution: &ChainComplex<K>,
) -> Result<ChainComplex<K>, AlgebraError> {
    let n = input.n;
    if rz_resolution.length() != n {
        return Err(AlgebraError::HypothesesNotSatisfied(format!(
            "resolution of R/I_Z has length {}, expected {}",
            rz_resolution.length(),
            n
        )));
    }
    let ring_s = input.ring_s();
    let twist = BiDegree::new(n as i32 * input.eta as i32, 1);
    // modules P'_1 .. P'_{n+1}; P'_i = P_{n+1-i} dualized
    let mut modules = Vec::with_capacity(n + 1);
    for i in 1..=(n + 1) {
        modules.push(rz_resolution.modules[n + 1 - i].dual_twisted(twist));
    }
    let mut diffs = Vec::with_capacity(n);
    for i in 1..=n {
        // P'_{i+1} -> P'_i is the dual of d_{n+1-i}: P_{n+1-i} -> P_{n-i}
        let d = rz_resolution.differential(n + 1 - i);
        let dual = matrix_into_ring(d, ring_s).dualize_shifted(twist);
        diffs.push(dual);
    }
    let complex = ChainComplex::new(ring_s, modules, diffs);
    complex.validate()?;
    Ok(complex)
}

/// Patch the Eagon-Northcott resolution of I_K with the dualized complex
/// resolving I_X/I_K into a (generally non-minimal) resolution of I_X,
/// computing the comparison maps by Groebner lifting.
pub fn build_patched_resolution<K: Field>(
    q: &ChainComplex<K>,
    pprime: &ChainComplex<K>,
    ix_gens: &[Polynomial<K>],
) -> Result<ChainComplex<K>, AlgebraError> {
    let ring = q.ring().clone();
    let total_p_rank: usize = pprime.modules.iter().map(|m| m.rank()).sum();
    if total_p_rank == 0 {
        return Ok(q.clone());
    }
    let ik_gens = q.differential(1).column_row_polys();
    let epsilon = solve_augmentation(&ring, pprime, ix_gens, &ik_gens)?;

    // theta_1 = epsilon: P'_1 -> S
    let mut thetas: Vec<PolyMatrix<K>> = vec![epsilon.clone()];
    let max_len = q.length().max(pprime.length() + 1);
    for i in 2..=max_len {
        let p_has = i <= pprime.length() + 1 && pprime.modules.len() > i - 1;
        if !p_has {
            break;
        }
        let dp = pprime.differential(i - 1); // P'_i -> P'_{i-1}
        let rhs = thetas[i - 2].compose(dp)?.negated();
        if i - 1 > q.length() {
            if !rhs.is_zero() {
                return Err(AlgebraError::LiftFailed(
                    "comparison map escapes the hull resolution".into(),
                ));
            }
            thetas.push(PolyMatrix::zero(
                &ring,
                GradedFreeModule::new(vec![]),
                dp.source.clone(),
            ));
            continue;
        }
        let dq = q.differential(i - 1); // Q_{i-1} -> Q_{i-2}
        let lifter = Lifter::new(dq);
        let theta = lifter.lift_matrix(&rhs).map_err(|_| {
            AlgebraError::LiftFailed(format!(
                "no lift for the comparison map into position {}",
                i - 1
            ))
        })?;
        thetas.push(theta);
    }

    // assemble F_i = Q_i + P'_i with differentials [[dQ, theta], [0, dP']]
    let zero_mod = GradedFreeModule::new(vec![]);
    let q_mod = |i: usize| -> GradedFreeModule {
        if i <= q.length() {
            q.modules[i].clone()
        } else {
            zero_mod.clone()
        }
    };
    let p_mod = |i: usize| -> GradedFreeModule {
        if i >= 1 && i - 1 < pprime.modules.len() {
            pprime.modules[i - 1].clone()
        } else {
            zero_mod.clone()
        }
    };
    let mut modules = vec![q.modules[0].clone()];
    let mut diffs: Vec<PolyMatrix<K>> = Vec::new();
    for i in 1..=max_len {
        let qm = q_mod(i);
        let pm = p_mod(i);
        modules.push(qm.concat(&pm));
        let dq = if i == 1 {
            q.differential(1).clone()
        } else if i <= q.length() {
            q.differential(i).clone()
        } else {
            PolyMatrix::zero(&ring, q_mod(i - 1), qm.clone())
        };
        let theta = if i == 1 {
            epsilon.clone()
        } else if i - 1 < thetas.len() {
            thetas[i - 1].clone()
        } else {
            PolyMatrix::zero(&ring, q_mod(i - 1), pm.clone())
        };
        let zero_block = PolyMatrix::zero(&ring, p_mod(i - 1), qm.clone());
        let dp = if i >= 2 && i - 1 <= pprime.length() {
            pprime.differential(i - 1).clone()
        } else {
            PolyMatrix::zero(&ring, p_mod(i - 1), pm.clone())
        };
        let block = PolyMatrix::block_2x2(&ring, &dq, &theta, &zero_block, &dp)?;
        diffs.push(block);
    }
    let complex = ChainComplex::new(&ring, modules, diffs).trimmed();
    complex.validate()?;
    Ok(complex)
}

/// Find a homogeneous row epsilon: P'_1 -> S whose entries lie in I_X,
/// whose composite with dP'_2 lands in I_K, and which together with I_K
/// generates I_X. Solved by exact linear algebra on normal forms.
fn solve_augmentation<K: Field>(
    ring: &RingRef<K>,
    pprime: &ChainComplex<K>,
    ix_gens: &[Polynomial<K>],
    ik_gens: &[Polynomial<K>],
) -> Result<PolyMatrix<K>, AlgebraError> {
    let field = ring.field.clone();
    let gb_ix = GroebnerBasis::of_ideal(ring, ix_gens)?;
    let gb_ik = GroebnerBasis::of_ideal(ring, ik_gens)?;
    let p1 = &pprime.modules[0];

    // unknowns: for each basis slot k of P'_1, the coefficients of eps_k
    // over the monomials of S of the slot's bidegree
    let mut slot_monomials: Vec<Vec<crate::monomial::Monomial>> = Vec::new();
    let mut offsets = vec![0usize];
    for &shift in &p1.shifts {
        let mons = monomials_of_bidegree(ring, shift);
        offsets.push(offsets.last().unwrap() + mons.len());
        slot_monomials.push(mons);
    }
    let unknowns = *offsets.last().unwrap();
    if unknowns == 0 {
        return Err(AlgebraError::LiftFailed("augmentation space is empty".into()));
    }

    // linear constraints: rows indexed by standard monomials of the normal
    // forms; one block per membership condition
    let mut rows: Vec<Vec<K::Elem>> = Vec::new();
    let mut row_index: HashMap<(usize, usize, Vec<u16>), usize> = HashMap::new();
    let add_constraint =
        |rows: &mut Vec<Vec<K::Elem>>,
         row_index: &mut HashMap<(usize, usize, Vec<u16>), usize>,
         block: usize,
         slot: usize,
         nf: &Polynomial<K>,
         col: usize,
         field: &K| {
            for (mon, c) in nf.terms() {
                let key = (block, slot, mon.exps().to_vec());
                let r = *row_index.entry(key).or_insert_with(|| {
                    rows.push(vec![field.zero(); unknowns]);
                    rows.len() - 1
                });
                rows[r][col] = field.add(&rows[r][col], c);
            }
        };

    // block A: eps_k in I_X
    for (k, mons) in slot_monomials.iter().enumerate() {
        for (j, mon) in mons.iter().enumerate() {
            let nf = gb_ix.normal_form_poly(&Polynomial::term(ring, mon.clone(), field.one()));
            add_constraint(&mut rows, &mut row_index, 0, k, &nf, offsets[k] + j, &field);
        }
    }
    // block B: eps . dP'_2 lands in I_K
    if pprime.length() >= 1 {
        let dp2 = pprime.differential(1);
        for c in 0..dp2.cols() {
            for k in 0..dp2.rows() {
                let entry = dp2.entry(k, c);
                if entry.is_zero() {
                    continue;
                }
                for (j, mon) in slot_monomials[k].iter().enumerate() {
                    let prod = entry.mul(&Polynomial::term(ring, mon.clone(), field.one()));
                    let nf = gb_ik.normal_form_poly(&prod);
                    add_constraint(
                        &mut rows,
                        &mut row_index,
                        1 + c,
                        usize::MAX,
                        &nf,
                        offsets[k] + j,
                        &field,
                    );
                }
            }
        }
    }

    let basis = linalg::nullspace(&field, rows, unknowns);
    if basis.is_empty() {
        return Err(AlgebraError::LiftFailed(
            "no homogeneous augmentation satisfies the membership constraints".into(),
        ));
    }

    // deterministic candidate sweep: basis vectors, pairwise sums, then
    // weighted sums with small integer weights
    let mut candidates: Vec<Vec<K::Elem>> = Vec::new();
    candidates.extend(basis.iter().cloned());
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let v = basis[i]
                .iter()
                .zip(basis[j].iter())
                .map(|(a, b)| field.add(a, b))
                .collect();
            candidates.push(v);
        }
    }
    for w in 2..6i64 {
        let mut v = vec![field.zero(); unknowns];
        for (idx, b) in basis.iter().enumerate() {
            let weight = field.from_i64(1 + (w * (idx as i64 + 1)) % 97);
            for (slot, val) in v.iter_mut().zip(b.iter()) {
                *slot = field.add(slot, &field.mul(&weight, val));
            }
        }
        candidates.push(v);
    }

    for cand in candidates {
        let eps_entries: Vec<Polynomial<K>> = slot_monomials
            .iter()
            .enumerate()
            .map(|(k, mons)| {
                let terms: Vec<_> = mons
                    .iter()
                    .enumerate()
                    .map(|(j, m)| (m.clone(), cand[offsets[k] + j].clone()))
                    .collect();
                Polynomial::from_terms(ring, terms)
            })
            .collect();
        if eps_entries.iter().all(|p| p.is_zero()) {
            continue;
        }
        // surjectivity: I_K + im(eps) contains I_X
        let mut combined = ik_gens.to_vec();
        combined.extend(eps_entries.iter().filter(|p| !p.is_zero()).cloned());
        let gb = GroebnerBasis::of_ideal(ring, &combined)?;
        if ix_gens.iter().all(|g| gb.contains_poly(g)) {
            let mut eps = PolyMatrix::zero(ring, GradedFreeModule::unit(), p1.clone());
            for (k, p) in eps_entries.into_iter().enumerate() {
                eps.set(0, k, p);
            }
            eps.validate()?;
            return Ok(eps);
        }
    }
    Err(AlgebraError::LiftFailed(
        "no augmentation candidate generates I_X over I_K".into(),
    ))
}

fn monomials_of_bidegree<K: Field>(
    ring: &RingRef<K>,
    d: BiDegree,
) -> Vec<crate::monomial::Monomial> {
    crate::groebner::hilbert::monomials_of_bidegree(ring, d)
}

/// Presentation of the first Koszul homology H_1 = ker(Phi)/im(k_1) as a
/// graded R-module: generators are the syzygies of the generator row,
/// relations are the preimages of the Koszul boundaries.
pub fn koszul_h1<K: Field>(input: &InputIdeal<K>) -> Result<PolyMatrix<K>, AlgebraError> {
    let ring = input.ring_r().clone();
    let phi_row = input.phi_row();
    let cycles = syzygy_matrix(&phi_row)?; // generators of E = ker(Phi)
    let boundaries = koszul_differential(&ring, input.generators(), 1)?;
    if cycles.cols() == 0 {
        return Ok(PolyMatrix::zero(
            &ring,
            GradedFreeModule::new(vec![]),
            GradedFreeModule::new(vec![]),
        ));
    }
    // relations: u with Z u in im(B), from syzygies of [Z | B]
    let combined = cycles.hstack(&boundaries)?;
    let syz = syzygy_matrix(&combined)?;
    let mut rel_cols: Vec<Vec<Polynomial<K>>> = Vec::new();
    for c in 0..syz.cols() {
        let u: Vec<Polynomial<K>> = (0..cycles.cols()).map(|r| syz.entry(r, c).clone()).collect();
        if u.iter().any(|p| !p.is_zero()) {
            rel_cols.push(u);
        }
    }
    if rel_cols.is_empty() {
        return Ok(PolyMatrix::zero(
            &ring,
            cycles.source.clone(),
            GradedFreeModule::new(vec![]),
        ));
    }
    PolyMatrix::from_columns(&ring, &cycles.source, &rel_cols)
}

/// Rank of the presentation matrix at a point and the resulting fibre
/// dimension n - rank; also reports whether the point lies on Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FittingRank {
    pub rank: usize,
    pub fibre_dim: usize,
    pub on_z: bool,
}

pub fn fitting_rank_at_point<K: Field>(
    input: &InputIdeal<K>,
    m: &PolyMatrix<K>,
    point: &[K::Elem],
) -> Result<FittingRank, AlgebraError> {
    let ring = input.ring_r();
    let f = &ring.field;
    if point.len() != ring.num_x {
        return Err(AlgebraError::ShapeMismatch(format!(
            "point must have {} coordinates",
            ring.num_x
        )));
    }
    if point.iter().all(|c| f.is_zero(c)) {
        return Err(AlgebraError::ZeroPoint);
    }
    let rows = m.eval_at(point);
    let rank = linalg::rank(f, rows);
    let on_z = input
        .generators()
        .iter()
        .all(|g| f.is_zero(&g.eval(point)));
    Ok(FittingRank {
        rank,
        fibre_dim: input.n - rank,
        on_z,
    })
}

#[cfg(test)]
mod tests;
