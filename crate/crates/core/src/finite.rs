//! The (2l+1)-dimensional phase / angular-momentum algebra.
//!
//! Angular labels `m` run -l..l and map to row/column index `m + l`. The
//! phase grid is `phi_n = 2 pi n / d` on `[0, 2 pi)` with `d = 2l + 1`. Phase
//! states are the conjugate (DFT) basis of the angular basis; fractionally
//! shifted states `|m + s>` interpolate between angular basis vectors and are
//! periodic in their label with period `d`.
//!
//! Two independent constructions of the fractional-shift unitary are kept:
//! the spectral route (`shift_unitary_exp`, evaluated in closed form) and the
//! dyadic route (`shift_unitary_sum`, assembled from shifted states). Their
//! equality is a regression test, not an assumption.

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

use crate::limits::{extrapolate, LimitEstimate, ShiftSchedule};
use crate::linalg::{cis, cis_minus_one, Matrix, Vector};

#[derive(Debug, Error, PartialEq)]
pub enum FiniteError {
    #[error("phase index {n} out of range 0..={max}")]
    PhaseIndexOutOfRange { n: usize, max: usize },
    #[error("angular label {label} outside [-{l}, {l}] for l = {l}")]
    LabelOutOfRange { label: i64, l: i64 },
    #[error("shift parameter {0} outside [0, 1]")]
    ShiftOutOfRange(f64),
}

/// Fractional shift parameter, restricted to `[0, 1]`.
///
/// Integer shifts act within the same basis, so all distinct shift unitaries
/// are covered by this range. The wrap-corrected shift experienced by the
/// `m = l` state is derived via [`FiniteSpace::effective_shift`], never
/// supplied directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftParam(f64);

impl ShiftParam {
    pub fn new(s: f64) -> Result<ShiftParam, FiniteError> {
        if (0.0..=1.0).contains(&s) {
            Ok(ShiftParam(s))
        } else {
            Err(FiniteError::ShiftOutOfRange(s))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// All operators of one `(l, s)` scan point, each `d x d`.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    pub phi_op: Matrix,
    pub lz_op: Matrix,
    pub lz_s_op: Matrix,
    pub shift_unitary: Matrix,
    pub r_op: Matrix,
}

/// Closed-form commutator together with the `l = 0` degeneracy marker.
#[derive(Debug, Clone)]
pub struct ClosedFormCommutator {
    pub matrix: Matrix,
    /// True for `l = 0`, where the commutator is the 1x1 zero matrix.
    pub degenerate: bool,
}

/// Neumaier-compensated accumulator that also captures the rounding residue
/// of each product it ingests (via fused multiply-add).
///
/// The phase-operator entries are slowly oscillating sums whose error the
/// commutator amplifies by `m - m'` (up to `d - 1`); plain summation lands
/// above the 1e-12 identity tolerance near `l = 50`.
#[derive(Default)]
struct AccurateSum {
    sum: f64,
    comp: f64,
}

impl AccurateSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        self.comp += if self.sum.abs() >= x.abs() {
            (self.sum - t) + x
        } else {
            (x - t) + self.sum
        };
        self.sum = t;
    }

    fn add_product(&mut self, a: f64, b: f64) {
        let p = a * b;
        self.add(p);
        self.comp += a.mul_add(b, -p);
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Overlap `<n|mu>` with the label difference split as `mu - n = delta + s`,
/// `delta` integer and `s` the fractional shift.
///
/// Keeping the integer part exact matters: embedding `delta + s` in a single
/// f64 absorbs shifts below ~1e-7 into the label's ulp and visibly corrupts
/// the observed convergence order of the shift-to-zero limits.
fn overlap_parts(d: usize, delta: i64, s: f64) -> Complex64 {
    let d_f = d as f64;
    let r = delta.rem_euclid(d as i64) as f64;
    // mu - n ≡ 0 (mod d): removable, the defining sum is identically 1
    if (r == 0.0 && s.abs() < 1e-14) || (r == d_f - 1.0 && (s - 1.0).abs() < 1e-14) {
        return Complex64::new(1.0, 0.0);
    }
    // (z^d - 1)/(d (z - 1)) with z = e^{2 pi i (delta + s)/d}; the integer
    // part of the exponent drops out of z^d analytically
    let num = cis_minus_one(TAU * s);
    let den = cis_minus_one(TAU * (r + s) / d_f).scale(d_f);
    num / den
}

/// The `(2l+1)`-dimensional arena: phase grid, bases, operator factory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteSpace {
    l: i64,
}

impl FiniteSpace {
    pub fn new(l: u32) -> FiniteSpace {
        FiniteSpace { l: l as i64 }
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn dim(&self) -> usize {
        (2 * self.l + 1) as usize
    }

    fn check_label(&self, label: i64) -> Result<(), FiniteError> {
        if label.abs() > self.l {
            Err(FiniteError::LabelOutOfRange { label, l: self.l })
        } else {
            Ok(())
        }
    }

    fn index_of(&self, m: i64) -> usize {
        (m + self.l) as usize
    }

    /// `TAU * num / d` with `num` reduced mod `d` to the signed residue in
    /// `[-l, l]` first.
    ///
    /// Root-of-unity phases like `m * phi_n` reach `~4 pi l^2 / d` before
    /// reduction; evaluating `cis` there costs `ulp(arg)` per term, which the
    /// far-off-diagonal commutator entries amplify by `m - m'` past 1e-12 at
    /// `l = 50`. Exact integer reduction keeps every argument in `(-pi, pi)`.
    /// The signed residue makes `num -> -num` map to an exactly negated
    /// angle, so conjugate-symmetric constructions stay exactly hermitian.
    fn reduced_angle(&self, num: i64) -> f64 {
        let d = self.dim() as i64;
        let mut r = num.rem_euclid(d);
        if r > self.l {
            r -= d;
        }
        TAU * r as f64 / d as f64
    }

    /// Quantised phase values `2 pi n / d`, `n = 0..2l`.
    pub fn phase_grid(&self) -> Vec<f64> {
        let d = self.dim() as f64;
        (0..self.dim()).map(|n| TAU * n as f64 / d).collect()
    }

    pub fn phase_value(&self, n: usize) -> Result<f64, FiniteError> {
        if n >= self.dim() {
            return Err(FiniteError::PhaseIndexOutOfRange {
                n,
                max: self.dim() - 1,
            });
        }
        Ok(TAU * n as f64 / self.dim() as f64)
    }

    /// Angular basis vector `|m>`.
    pub fn angular_basis(&self, m: i64) -> Result<Vector, FiniteError> {
        self.check_label(m)?;
        Ok(Vector::basis(self.dim(), self.index_of(m)))
    }

    /// Phase state `|phi_n>`: entry at angular label `m` is `e^{-i m phi_n}/sqrt(d)`.
    pub fn phase_state(&self, n: usize) -> Result<Vector, FiniteError> {
        self.phase_value(n)?;
        let root_d = (self.dim() as f64).sqrt();
        Ok(Vector::new(
            (-self.l..=self.l)
                .map(|m| cis(self.reduced_angle(-m * n as i64)).unscale(root_d))
                .collect(),
        ))
    }

    /// Fractionally labelled state `|mu> = (1/sqrt(d)) sum_n e^{i mu phi_n} |phi_n>`,
    /// expressed in the angular basis.
    ///
    /// Labels are equivalent mod d: `|mu>` and `|mu + d>` are entrywise equal.
    /// Integer labels in `[-l, l]` reproduce the angular basis vectors.
    pub fn shifted_state(&self, mu: f64) -> Vector {
        let d = self.dim();
        let grid = self.phase_grid();
        Vector::new(
            (-self.l..=self.l)
                .map(|m| {
                    let x = mu - m as f64;
                    grid.iter()
                        .map(|&phi| cis(x * phi))
                        .sum::<Complex64>()
                        .unscale(d as f64)
                })
                .collect(),
        )
    }

    /// Closed-form overlap `<n|mu>`.
    ///
    /// Equals 1 when `mu - n ≡ 0 (mod d)` and `(z^d - 1)/(d (z - 1))` with
    /// `z = e^{2 pi i (mu - n)/d}` otherwise; agrees with the inner product of
    /// `angular_basis(n)` and `shifted_state(mu)` to 1e-13.
    pub fn overlap_shifted(&self, n: i64, mu: f64) -> Result<Complex64, FiniteError> {
        self.check_label(n)?;
        let nearest = mu.round();
        let frac = mu - nearest;
        Ok(overlap_parts(self.dim(), nearest as i64 - n, frac))
    }

    /// Phase operator `phi_l = sum_n phi_n |phi_n><phi_n|` in the angular
    /// basis: entry `(m', m)` is `(1/d) sum_n phi_n e^{i (m - m') phi_n}`.
    pub fn phase_operator(&self) -> Matrix {
        let d = self.dim();
        let grid = self.phase_grid();
        Matrix::from_fn(d, d, |i, j| {
            let k = j as i64 - i as i64;
            let mut re = AccurateSum::default();
            let mut im = AccurateSum::default();
            for (n, &phi) in grid.iter().enumerate() {
                let root = cis(self.reduced_angle(k * n as i64));
                re.add_product(phi, root.re);
                im.add_product(phi, root.im);
            }
            Complex64::new(re.value() / d as f64, im.value() / d as f64)
        })
    }

    /// Angular momentum operator `diag(-l, ..., l)`.
    pub fn lz_operator(&self) -> Matrix {
        Matrix::diag(&(-self.l..=self.l).map(|m| m as f64).collect::<Vec<_>>())
    }

    /// Shifted angular momentum `L_z(s) = sum_m (m-1+s) |m-1+s><m-1+s|`,
    /// with spectrum `{-l-1+s, ..., l-1+s}`.
    pub fn lz_s_operator(&self, s: ShiftParam) -> Matrix {
        let d = self.dim();
        let mut op = Matrix::zeros(d, d);
        for m in -self.l..=self.l {
            let eigenvalue = (m - 1) as f64 + s.value();
            let v = self.shifted_state(eigenvalue);
            op.accumulate_dyad(Complex64::new(eigenvalue, 0.0), &v, &v);
        }
        op
    }

    /// Shift unitary assembled from dyads:
    /// `sum_{m=-l}^{l-1} |m+s><m| + |-l-1+s><l|`.
    pub fn shift_unitary_sum(&self, s: ShiftParam) -> Matrix {
        let d = self.dim();
        let mut u = Matrix::zeros(d, d);
        for m in -self.l..self.l {
            let col = self.shifted_state(m as f64 + s.value());
            u.set_column(self.index_of(m), &col);
        }
        let wrap = self.shifted_state(-(self.l as f64) - 1.0 + s.value());
        u.set_column(self.index_of(self.l), &wrap);
        u
    }

    /// Shift unitary from the spectral form `exp(i s phi_l)`, with the
    /// spectral sum evaluated in closed form per entry.
    ///
    /// At `s = 0` this is exactly the identity; at `s = 1` exactly the cyclic
    /// permutation `|m> -> |m+1>` with wrap. Must equal [`shift_unitary_sum`]
    /// to 1e-12 for all `s` in `[0, 1]`.
    pub fn shift_unitary_exp(&self, s: ShiftParam) -> Matrix {
        let d = self.dim();
        Matrix::from_fn(d, d, |i, j| {
            let m_row = i as i64 - self.l;
            let m_col = j as i64 - self.l;
            overlap_parts(d, m_col - m_row, s.value())
        })
    }

    /// Wrap-corrected shift `sigma = s - (2l+1)` experienced by the `m = l`
    /// column of the shift unitary.
    pub fn effective_shift(&self, s: ShiftParam) -> f64 {
        s.value() - self.dim() as f64
    }

    /// Closed form of `[phi_l, L_z]`: zero diagonal, off-diagonal entry at
    /// (row `m'`, column `m`) equal to
    /// `(2 pi / d) (m - m') / (e^{2 pi i (m - m')/d} - 1)`.
    ///
    /// Must equal `commutator(phase_operator(), lz_operator())` to 1e-12.
    pub fn commutator_closed_form(&self) -> ClosedFormCommutator {
        let d = self.dim();
        let d_f = d as f64;
        let matrix = Matrix::from_fn(d, d, |i, j| {
            let m_row = i as i64 - self.l;
            let m_col = j as i64 - self.l;
            if m_row == m_col {
                Complex64::new(0.0, 0.0)
            } else {
                // e^{2 pi i (m - m')/d} is a root of unity: reduce the
                // exponent mod d so the denominator stays well-conditioned
                // for the wrap entries |m - m'| close to d
                let diff = m_col - m_row;
                let den = cis_minus_one(self.reduced_angle(diff));
                Complex64::new(TAU / d_f * diff as f64, 0.0) / den
            }
        });
        ClosedFormCommutator {
            matrix,
            degenerate: self.l == 0,
        }
    }

    /// `R = e^{i s phi_l} L_z - L_z(s) e^{i s phi_l}`, using the spectral
    /// route for the shift unitary.
    pub fn r_matrix(&self, s: ShiftParam) -> Matrix {
        let u = self.shift_unitary_exp(s);
        let lz = self.lz_operator();
        let lz_s = self.lz_s_operator(s);
        u.matmul(&lz).sub(&lz_s.matmul(&u))
    }

    /// Closed form of `<n|R|k>`: `-s <n|k+s>` for `k < l` and
    /// `-sigma <n|l+sigma>` with `sigma = s - d` for `k = l`.
    ///
    /// Matches the corresponding [`Self::r_matrix`] entry to 1e-12.
    pub fn r_element_closed(
        &self,
        n: i64,
        k: i64,
        s: ShiftParam,
    ) -> Result<Complex64, FiniteError> {
        self.check_label(n)?;
        self.check_label(k)?;
        let d = self.dim() as i64;
        if k < self.l {
            Ok(overlap_parts(self.dim(), k - n, s.value()).scale(-s.value()))
        } else {
            let sigma = self.effective_shift(s);
            Ok(overlap_parts(self.dim(), k - n - d, s.value()).scale(-sigma))
        }
    }

    /// `(1/(i s)) <n|R|k>` — the naive normalization, which diverges like
    /// `d/s` at `k = l`.
    pub fn naive_normalized_element(
        &self,
        n: i64,
        k: i64,
        s: ShiftParam,
    ) -> Result<Complex64, FiniteError> {
        let r = self.r_element_closed(n, k, s)?;
        Ok(r / Complex64::new(0.0, s.value()))
    }

    /// `<n|R|k>` normalized by the shift actually produced on column `k`:
    /// `1/(i s)` for `k < l`, `1/(i sigma)` for `k = l`.
    pub fn normalized_element(
        &self,
        n: i64,
        k: i64,
        s: ShiftParam,
    ) -> Result<Complex64, FiniteError> {
        let r = self.r_element_closed(n, k, s)?;
        let shift = if k < self.l {
            s.value()
        } else {
            self.effective_shift(s)
        };
        Ok(r / Complex64::new(0.0, shift))
    }

    /// Shift-to-zero limit of the correctly normalized element over `schedule`.
    ///
    /// Converges to `i delta_{nk}` at first order in the shift.
    pub fn normalized_limit(
        &self,
        n: i64,
        k: i64,
        schedule: &ShiftSchedule,
    ) -> Result<LimitEstimate, FiniteError> {
        self.check_label(n)?;
        self.check_label(k)?;
        let samples = schedule
            .values()
            .iter()
            .map(|&s| {
                let sp = ShiftParam::new(s).expect("schedule values lie in (0, 1]");
                Ok((s, self.normalized_element(n, k, sp)?))
            })
            .collect::<Result<Vec<_>, FiniteError>>()?;
        Ok(extrapolate(&samples))
    }

    /// Build every operator of one scan point.
    pub fn operator_set(&self, s: ShiftParam) -> OperatorSet {
        OperatorSet {
            phi_op: self.phase_operator(),
            lz_op: self.lz_operator(),
            lz_s_op: self.lz_s_operator(s),
            shift_unitary: self.shift_unitary_exp(s),
            r_op: self.r_matrix(s),
        }
    }
}
