//! Spacetime metric η on the (2+1)-chart and its Christoffel symbols.
//!
//! Index 0 is t, indices 1 and 2 are y¹ and y².

use crate::bundle::SpacetimeTensorRep;
use crate::error::Result;
use crate::geometry::chart::{Chart, ChartJets};
use crate::geometry::frame::{frame_from_jets, SurfaceFrame};
use crate::geometry::kinematics::{KinematicState, MaterialData};
use crate::scalar::{sum_of, Real};
use crate::tensor::{det3, dot3, inv3, Mat3, Tensor};

pub type Christoffel<T> = [[[T; 3]; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimeMetric<T> {
    pub eta: Mat3<T>,
    pub eta_inv: Mat3<T>,
    /// det η = det g / ζ.
    pub det_eta: T,
    /// γ_IJK, indexed `[I][J][K]`.
    pub gamma_first: Christoffel<T>,
    /// γ^I_JK, indexed `[I][J][K]`.
    pub gamma: Christoffel<T>,
}

/// η and η⁻¹ from their block formulas.
pub fn eta_blocks<T: Real>(f: &SurfaceFrame<T>, kin: &KinematicState<T>) -> (Mat3<T>, Mat3<T>) {
    let vf = f.lower(&kin.v);
    let vv = vf[0] * kin.v[0] + vf[1] * kin.v[1];
    let z = kin.zeta;
    let mut eta = [[T::zero(); 3]; 3];
    let mut inv = [[T::zero(); 3]; 3];
    eta[0][0] = vv + T::one() / z;
    inv[0][0] = z;
    for i in 0..2 {
        eta[0][i + 1] = vf[i];
        eta[i + 1][0] = vf[i];
        inv[0][i + 1] = -z * kin.v[i];
        inv[i + 1][0] = -z * kin.v[i];
        for j in 0..2 {
            eta[i + 1][j + 1] = f.g[i][j];
            inv[i + 1][j + 1] = f.g_inv[i][j] + z * kin.v[i] * kin.v[j];
        }
    }
    (eta, inv)
}

/// Closed-form spacetime Christoffel symbols of the first and second kind.
pub fn christoffel_closed_form<T: Real>(f: &SurfaceFrame<T>, kin: &KinematicState<T>) -> (Christoffel<T>, Christoffel<T>) {
    let z0 = T::zero();
    let mut c1 = [[[z0; 3]; 3]; 3];
    let mut c2 = [[[z0; 3]; 3]; 3];
    let (v, nu, zeta) = (kin.v, kin.nu, kin.zeta);
    let af = f.lower(&kin.accel);
    let bm = kin.b_mixed(f);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                c1[i + 1][j + 1][k + 1] = f.christoffel_first[i][j][k];
            }
            c1[i + 1][j + 1][0] = f.christoffel_first[i][j][0] * v[0]
                + f.christoffel_first[i][j][1] * v[1]
                + nu * f.shape[i][j];
        }
        for k in 0..2 {
            c1[i + 1][0][k + 1] = kin.b_mat[k][i];
            c1[0][i + 1][k + 1] = kin.b_mat[k][i];
        }
        let itt = kin.b_mat[0][i] * v[0] + kin.b_mat[1][i] * v[1] + nu * kin.b_form[i];
        c1[i + 1][0][0] = itt;
        c1[0][i + 1][0] = itt;
        c1[0][0][i + 1] = af[i];
    }
    c1[0][0][0] = af[0] * v[0] + af[1] * v[1] + kin.lambda * nu;

    for i in 0..2 {
        for j in 0..2 {
            let tij = zeta * nu * f.shape[i][j];
            c2[0][i + 1][j + 1] = tij;
            for k in 0..2 {
                c2[k + 1][i + 1][j + 1] = f.christoffel[k][i][j] - tij * v[k];
            }
        }
        let ttj = zeta * nu * kin.b_form[i];
        c2[0][0][i + 1] = ttj;
        c2[0][i + 1][0] = ttj;
        for k in 0..2 {
            let x = bm[k][i] - ttj * v[k];
            c2[k + 1][0][i + 1] = x;
            c2[k + 1][i + 1][0] = x;
        }
    }
    let ttt = zeta * nu * kin.lambda;
    c2[0][0][0] = ttt;
    for k in 0..2 {
        c2[k + 1][0][0] = kin.accel[k] - ttt * v[k];
    }
    (c1, c2)
}

/// η as the Gram matrix of {∂_t X, ∂_1 X, ∂_2 X} in ℝ⁴.
pub fn gram_eta<T: Real>(j: &ChartJets<T>) -> Mat3<T> {
    let mut eta = [[T::zero(); 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            eta[a][b] = dot3(&j.d[a], &j.d[b]);
        }
    }
    eta[0][0] += T::one();
    eta
}

/// γ_IJK = ⟨∂_I∂_J X, ∂_K X⟩ and its η⁻¹-raised second kind.
pub fn christoffel_gram<T: Real>(j: &ChartJets<T>, eta_inv: &Mat3<T>) -> (Christoffel<T>, Christoffel<T>) {
    let mut c1 = [[[T::zero(); 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            for k in 0..3 {
                c1[a][b][k] = dot3(&j.dd[a][b], &j.d[k]);
            }
        }
    }
    (c1, raise_christoffel(&c1, eta_inv))
}

pub fn raise_christoffel<T: Real>(c1: &Christoffel<T>, eta_inv: &Mat3<T>) -> Christoffel<T> {
    let mut c2 = [[[T::zero(); 3]; 3]; 3];
    for i in 0..3 {
        for a in 0..3 {
            for b in 0..3 {
                c2[i][a][b] = sum_of((0..3).map(|l| eta_inv[i][l] * c1[a][b][l]));
            }
        }
    }
    c2
}

/// η, η⁻¹ and Christoffel symbols from the block and closed-form tables.
pub fn spacetime_metric<T: Real>(f: &SurfaceFrame<T>, kin: &KinematicState<T>) -> SpacetimeMetric<T> {
    let (eta, eta_inv) = eta_blocks(f, kin);
    let (gamma_first, gamma) = christoffel_closed_form(f, kin);
    SpacetimeMetric { eta, eta_inv, det_eta: f.det_g / kin.zeta, gamma_first, gamma }
}

/// η and Christoffel symbols from the embedding Gram construction.
pub fn spacetime_christoffels<T: Real, C: Chart<T> + ?Sized>(chart: &C, t: T, y: [T; 2]) -> Result<SpacetimeMetric<T>> {
    let j = chart.jets(t, y)?;
    frame_from_jets(&j)?;
    let eta = gram_eta(&j);
    let eta_inv = inv3(&eta);
    let (gamma_first, gamma) = christoffel_gram(&j, &eta_inv);
    Ok(SpacetimeMetric { eta, eta_inv, det_eta: det3(&eta), gamma_first, gamma })
}

/// ⟦∇τ_m⟧ = B_m E_SS + ζ(Ľ♯v_m − ν b_m) E_Sτ + ζν b_m E_τS + ζ²νν̇ E_ττ.
pub fn grad_material_direction<T: Real>(
    f: &SurfaceFrame<T>,
    kin: &KinematicState<T>,
    mat: &MaterialData<T>,
) -> SpacetimeTensorRep<T> {
    let (nu, z) = (kin.nu, kin.zeta);
    let bm = mat.bm_vector(f);
    let mut rep = SpacetimeTensorRep::zeros(2);
    let ss = f.raise_both(&mat.bm_mat);
    *rep.block_mut(0b00) = Tensor::matrix2(&ss);
    *rep.block_mut(0b10) = Tensor::vector(&[z * (mat.lie_vm[0] - nu * bm[0]), z * (mat.lie_vm[1] - nu * bm[1])]);
    *rep.block_mut(0b01) = Tensor::vector(&[z * nu * bm[0], z * nu * bm[1]]);
    *rep.block_mut(0b11) = Tensor::scalar(z * z * nu * mat.nu_dot);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::chart::{FourierMode, PlaneChart, SpheroidalChart};
    use crate::geometry::kinematics::kinematics_from_jets;
    use std::f64::consts::PI;

    fn chart() -> SpheroidalChart<f64> {
        SpheroidalChart::new(0.5, 1.3).with_modes(vec![FourierMode {
            amplitude: 0.07,
            m: 1.0,
            n: 2.0,
            w: 1.7,
            phase: 0.3,
        }])
    }

    #[test]
    fn closed_form_matches_gram() {
        let c = chart();
        let (t, y) = (0.45, [1.0, 2.0]);
        let j = c.jets(t, y).unwrap();
        let f = frame_from_jets(&j).unwrap();
        let k = kinematics_from_jets(&j, &f);
        let m = spacetime_metric(&f, &k);
        let g = spacetime_christoffels(&c, t, y).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert!((m.eta[a][b] - g.eta[a][b]).abs() < 1e-12);
                for d in 0..3 {
                    assert!((m.gamma_first[a][b][d] - g.gamma_first[a][b][d]).abs() < 1e-12);
                    assert!((m.gamma[a][b][d] - g.gamma[a][b][d]).abs() < 1e-10, "{a}{b}{d}");
                }
            }
        }
        assert!((m.det_eta - det3(&m.eta)).abs() < 1e-12);
    }

    #[test]
    fn rotating_sphere_eta_tt() {
        let c = SpheroidalChart::<f64>::rotating_sphere();
        let j = c.jets(0.2, [PI / 3.0, 0.5]).unwrap();
        let f = frame_from_jets(&j).unwrap();
        let k = kinematics_from_jets(&j, &f);
        let m = spacetime_metric(&f, &k);
        assert!((m.eta[0][0] - (3.0 * PI * PI + 1.0)).abs() < 1e-11);
    }

    #[test]
    fn flat_plane_has_no_christoffels() {
        let g = spacetime_christoffels(&PlaneChart::<f64>::stationary(), 0.0, [0.3, 0.1]).unwrap();
        assert!(g.gamma.iter().flatten().flatten().all(|x| *x == 0.0));
        assert_eq!(g.eta, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    }
}
