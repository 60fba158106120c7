use super::{FiniteField, GaloisError, Matrix};
use crate::group::{FiniteGroup, GroupRef, Homomorphism, Subgroup};

/// `L = GF(q^M)` over `K = GF(q)`, `q = p^qdeg`, with `ψ: B → Gal(L/K) ≅ Z/M`
/// given by Frobenius exponents, a subgroup `B₀` mapped injectively onto
/// `Gal(L/L₀)` with `[L : L₀] = m = |B₀|`, left coset representatives `R` of
/// `B₀` in `B`, and a basis `w₁, …, w_m` of `L` over `L₀`.
#[derive(Debug, Clone)]
pub struct TwistedSetup {
    field: FiniteField,
    qdeg: usize,
    big_m: usize,
    b: GroupRef,
    psi: Homomorphism,
    b0: Subgroup,
    reps: Vec<usize>,
    basis: Vec<u32>,
}

impl TwistedSetup {
    /// `psi_exps[β]` is the Frobenius exponent `ψ(β) ∈ Z/M`. Without a
    /// `basis` the power basis `1, ω, …, ω^{m-1}` of the class `ω` of `X` is
    /// used; a supplied basis is not checked here, only by
    /// [`recovery_matrix`].
    pub fn new(
        field: FiniteField,
        qdeg: usize,
        b: GroupRef,
        psi_exps: Vec<usize>,
        b0: &[usize],
        basis: Option<Vec<u32>>,
    ) -> Result<Self, GaloisError> {
        let invalid = |s: String| Err(GaloisError::InvalidSetup(s));
        if qdeg == 0 || !field.degree().is_multiple_of(qdeg) {
            return invalid(format!(
                "q-degree {qdeg} does not divide the field degree {}",
                field.degree()
            ));
        }
        let big_m = field.degree() / qdeg;
        let psi = Homomorphism::new(b.clone(), FiniteGroup::cyclic(big_m), psi_exps)
            .map_err(|e| GaloisError::InvalidSetup(format!("psi: {e}")))?;
        if !psi.is_epi() {
            return invalid("psi is not onto the Galois group".into());
        }
        let b0 = Subgroup::new(&b, b0).map_err(|e| GaloisError::InvalidSetup(format!("B0: {e}")))?;
        let m = b0.order();
        if !psi.restrict(&b0).expect("same parent").is_mono() {
            return invalid("psi is not injective on B0".into());
        }
        let basis = match basis {
            Some(w) => {
                if w.len() != m {
                    return invalid(format!("basis has {} elements, expected {m}", w.len()));
                }
                if let Some(&x) = w.iter().find(|&&x| !field.contains(x)) {
                    return invalid(format!("basis element {x} is not in the field"));
                }
                w
            }
            None => {
                let omega = field.generator();
                (0..m).map(|i| field.pow(omega, i as u64)).collect()
            }
        };
        let mut covered = vec![false; b.order()];
        let mut reps = Vec::new();
        for rho in b.elements() {
            if !covered[rho] {
                reps.push(rho);
                for &beta in b0.elements() {
                    covered[b.mul(rho, beta)] = true;
                }
            }
        }
        Ok(TwistedSetup {
            field,
            qdeg,
            big_m,
            b,
            psi,
            b0,
            reps,
            basis,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn group(&self) -> &GroupRef {
        &self.b
    }

    pub fn b0(&self) -> &Subgroup {
        &self.b0
    }

    /// `M = [L : K]`.
    pub fn galois_degree(&self) -> usize {
        self.big_m
    }

    /// `m = |B₀| = [L : L₀]`.
    pub fn m(&self) -> usize {
        self.b0.order()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn psi_exponent(&self, beta: usize) -> usize {
        self.psi.apply(beta)
    }

    /// `a^β`, the `q^{ψ(β)}`-th power.
    pub fn act_on_scalar(&self, a: u32, beta: usize) -> u32 {
        self.field.frobenius(a, self.qdeg * self.psi.apply(beta))
    }
}

/// `Σ_β c_β·x^β`, stored densely by `β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedForm {
    pub coeffs: Vec<u32>,
}

impl TwistedForm {
    pub fn zero(setup: &TwistedSetup) -> Self {
        TwistedForm {
            coeffs: vec![0; setup.b.order()],
        }
    }

    /// `c·x^β`.
    pub fn monomial(setup: &TwistedSetup, beta: usize, c: u32) -> Self {
        let mut f = Self::zero(setup);
        f.coeffs[beta] = c;
        f
    }
}

/// `(Σ c_β x^β)^{β′} = Σ c_β^{ψ(β′)} x^{ββ′}`.
pub fn twisted_action(setup: &TwistedSetup, beta_prime: usize, form: &TwistedForm) -> TwistedForm {
    let b = &setup.b;
    let mut out = TwistedForm::zero(setup);
    for (beta, &c) in form.coeffs.iter().enumerate() {
        out.coeffs[b.mul(beta, beta_prime)] = setup.act_on_scalar(c, beta_prime);
    }
    out
}

/// `t_{ρj} = Σ_{β∈B₀} w_j^β x^{ρβ}`, ordered by `ρ ∈ R`, then `j`.
pub fn invariant_generators(setup: &TwistedSetup) -> Vec<TwistedForm> {
    let b = &setup.b;
    let mut out = Vec::with_capacity(setup.reps.len() * setup.m());
    for &rho in &setup.reps {
        for &w in &setup.basis {
            let mut t = TwistedForm::zero(setup);
            for &beta in setup.b0.elements() {
                t.coeffs[b.mul(rho, beta)] = setup.act_on_scalar(w, beta);
            }
            out.push(t);
        }
    }
    out
}

/// `(w_j^β)` with rows `j` and columns `β ∈ B₀` in increasing order, and its
/// inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryMatrix {
    pub rho: usize,
    pub matrix: Matrix,
    pub inverse: Matrix,
    pub det: u32,
}

pub fn recovery_matrix(setup: &TwistedSetup, rho: usize) -> Result<RecoveryMatrix, GaloisError> {
    if !setup.reps.contains(&rho) {
        return Err(GaloisError::NotARepresentative(rho));
    }
    let rows: Vec<Vec<u32>> = setup
        .basis
        .iter()
        .map(|&w| {
            setup
                .b0
                .elements()
                .iter()
                .map(|&beta| setup.act_on_scalar(w, beta))
                .collect()
        })
        .collect();
    let matrix = Matrix::from_rows(&rows);
    let det = matrix.det(&setup.field);
    let inverse = matrix.inverse(&setup.field)?;
    Ok(RecoveryMatrix {
        rho,
        matrix,
        inverse,
        det,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    /// Every `t_{ρj}` is fixed by every element of `B₀`.
    pub invariant: bool,
    /// Every recovery matrix times its inverse is the identity.
    pub matrices_invertible: bool,
    /// `|R|·m = |B|` and that many forms were produced.
    pub count_matches: bool,
    /// The `t`-coordinates are block-diagonal in the `x`-coordinates, one block
    /// per coset `ρB₀`, and the inverse blocks give back every `x^{ρβ}`.
    pub span_bijection: bool,
    pub generators: usize,
}

impl ConstructionReport {
    pub fn all_passed(&self) -> bool {
        self.invariant && self.matrices_invertible && self.count_matches && self.span_bijection
    }
}

pub fn verify_construction(setup: &TwistedSetup) -> Result<ConstructionReport, GaloisError> {
    let f = &setup.field;
    let b = &setup.b;
    let m = setup.m();
    let ts = invariant_generators(setup);
    let invariant = ts.iter().all(|t| {
        setup
            .b0
            .elements()
            .iter()
            .all(|&beta| twisted_action(setup, beta, t) == *t)
    });
    let mats = setup
        .reps
        .iter()
        .map(|&rho| recovery_matrix(setup, rho))
        .collect::<Result<Vec<_>, _>>()?;
    let matrices_invertible = mats.iter().all(|r| r.matrix.mul(f, &r.inverse) == Matrix::identity(m));
    let count_matches = setup.reps.len() * m == b.order() && ts.len() == b.order();
    let mut span_bijection = true;
    for (r, (&rho, rec)) in setup.reps.iter().zip(&mats).enumerate() {
        let block = &ts[r * m..(r + 1) * m];
        let coset: Vec<usize> = setup.b0.elements().iter().map(|&beta| b.mul(rho, beta)).collect();
        // no coefficient outside the coset ρB₀
        let inside = block
            .iter()
            .all(|t| t.coeffs.iter().enumerate().all(|(x, &c)| c == 0 || coset.contains(&x)));
        // x^{ρβ} = Σ_j inverse[β][j]·t_{ρj}
        let recovered = coset.iter().enumerate().all(|(k, &target)| {
            let mut sum = TwistedForm::zero(setup);
            for (j, t) in block.iter().enumerate() {
                let c = rec.inverse.get(k, j);
                for (x, &tc) in t.coeffs.iter().enumerate() {
                    sum.coeffs[x] = f.add(sum.coeffs[x], f.mul(c, tc));
                }
            }
            sum == TwistedForm::monomial(setup, target, 1)
        });
        span_bijection &= inside && recovered;
    }
    Ok(ConstructionReport {
        invariant,
        matrices_invertible,
        count_matches,
        span_bijection,
        generators: ts.len(),
    })
}
