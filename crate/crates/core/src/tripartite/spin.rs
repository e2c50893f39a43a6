use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::verdict::Setting;

const TRIAD_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        2,
        vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
    )
    .expect("2x2")
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]])
}

pub fn hadamard() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[[h, h], [h, -h]])
}

/// `n·σ` for a real 3-vector `n`.
pub fn spin_along(n: [f64; 3]) -> ComplexMatrix {
    &(&sigma_x().scale(n[0]) + &sigma_y().scale(n[1])) + &sigma_z().scale(n[2])
}

/// Three single-qubit observables that square to the identity and pairwise anticommute.
#[derive(Debug, Clone, PartialEq)]
pub struct SettingTriad {
    x: ComplexMatrix,
    y: ComplexMatrix,
    z: ComplexMatrix,
}

impl SettingTriad {
    pub fn new(x: ComplexMatrix, y: ComplexMatrix, z: ComplexMatrix) -> Result<Self> {
        let id = ComplexMatrix::identity(2);
        let zero = ComplexMatrix::zeros(2, 2);
        for (name, m) in [("X", &x), ("Y", &y), ("Z", &z)] {
            if m.rows() != 2 || m.cols() != 2 {
                return Err(Error::InvalidArgument(format!("{name} is not 2x2")));
            }
            if m.max_asymmetry() > TRIAD_TOL {
                return Err(Error::InvalidArgument(format!("{name} is not Hermitian")));
            }
            if m.matmul(m).max_abs_diff(&id) > TRIAD_TOL {
                return Err(Error::InvalidArgument(format!(
                    "{name}^2 is not the identity"
                )));
            }
        }
        for (name, a, b) in [("XY", &x, &y), ("YZ", &y, &z), ("ZX", &z, &x)] {
            let anti = &a.matmul(b) + &b.matmul(a);
            if anti.max_abs_diff(&zero) > TRIAD_TOL {
                return Err(Error::InvalidArgument(format!("{name} do not anticommute")));
            }
        }
        Ok(SettingTriad { x, y, z })
    }

    /// The triad a published setting uses on every qubit. Panics on `Setting::Custom`.
    pub fn published(setting: Setting) -> Self {
        let (x, y, z) = match setting {
            Setting::I => (sigma_x(), sigma_y(), sigma_z()),
            Setting::II => (sigma_y(), sigma_z(), sigma_x()),
            Setting::III => (sigma_z(), sigma_x(), sigma_y()),
            Setting::Custom => panic!("custom settings have no fixed triad"),
        };
        SettingTriad { x, y, z }
    }

    /// Orthonormal frame `(n1, n2, n3)` mapped to `(n1·σ, n2·σ, n3·σ)`.
    pub fn from_frame(frame: [[f64; 3]; 3]) -> Result<Self> {
        Self::new(
            spin_along(frame[0]),
            spin_along(frame[1]),
            spin_along(frame[2]),
        )
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    pub fn y(&self) -> &ComplexMatrix {
        &self.y
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }

    /// `U A U^H` applied to each observable.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Self {
        let f = |a: &ComplexMatrix| u.matmul(a).matmul(&u.adjoint());
        SettingTriad {
            x: f(&self.x),
            y: f(&self.y),
            z: f(&self.z),
        }
    }

    /// `(X, Y, Z) -> (Y, X, Z)`
    pub fn swap_xy(&self) -> Self {
        SettingTriad {
            x: self.y.clone(),
            y: self.x.clone(),
            z: self.z.clone(),
        }
    }

    /// `(X, Y, Z) -> (X, -Y, Z)`
    pub fn negate_y(&self) -> Self {
        SettingTriad {
            x: self.x.clone(),
            y: self.y.scale(-1.0),
            z: self.z.clone(),
        }
    }
}

/// The four sets `(X_x, Y_x, Z_x, I_x)`, `x = 0..3`, of three-qubit operators.
#[derive(Debug, Clone)]
pub struct SpinObservables {
    pub x: [ComplexMatrix; 4],
    pub y: [ComplexMatrix; 4],
    pub z: [ComplexMatrix; 4],
    pub i: [ComplexMatrix; 4],
}

/// The pattern shared by both layers. Returns `[[X_0, X_1], [Y_0, Y_1], [Z_0, Z_1], [I_0, I_1]]`
/// built from the outer operators `(X, Y, Z, I)` and the inner ones `(X', Y', Z', I')`.
fn layer(outer: [&ComplexMatrix; 4], inner: [&ComplexMatrix; 4]) -> [[ComplexMatrix; 2]; 4] {
    let [xa, ya, za, ia] = outer;
    let [xb, yb, zb, ib] = inner;
    let pair = |a: ComplexMatrix, b: ComplexMatrix, first_sign: f64| {
        [
            (&a + &b.scale(first_sign)).scale(0.5),
            (&a - &b.scale(first_sign)).scale(0.5),
        ]
    };
    [
        pair(xa.kron(xb), ya.kron(yb), -1.0),
        pair(ya.kron(xb), xa.kron(yb), 1.0),
        pair(za.kron(ib), ia.kron(zb), 1.0),
        pair(ia.kron(ib), za.kron(zb), 1.0),
    ]
}

/// Builds the observables with `t1` on qubit 1 and `t2`, `t3` inside the two-qubit layer.
pub fn build_spin_observables(
    t1: &SettingTriad,
    t2: &SettingTriad,
    t3: &SettingTriad,
) -> Result<SpinObservables> {
    for t in [t1, t2, t3] {
        SettingTriad::new(t.x.clone(), t.y.clone(), t.z.clone())?;
    }
    let id2 = ComplexMatrix::identity(2);
    let two = layer([&t2.x, &t2.y, &t2.z, &id2], [&t3.x, &t3.y, &t3.z, &id2]);
    // x = y and y + 1 come from the two-qubit set y/2, for y = 0, 2
    let [lo, hi] = [0, 1].map(|s| {
        layer(
            [&t1.x, &t1.y, &t1.z, &id2],
            [&two[0][s], &two[1][s], &two[2][s], &two[3][s]],
        )
    });
    let merge = |k: usize| -> [ComplexMatrix; 4] {
        [
            lo[k][0].clone(),
            lo[k][1].clone(),
            hi[k][0].clone(),
            hi[k][1].clone(),
        ]
    };
    Ok(SpinObservables {
        x: merge(0),
        y: merge(1),
        z: merge(2),
        i: merge(3),
    })
}

/// Observables of a published setting, built once.
pub fn published_observables(setting: Setting) -> &'static SpinObservables {
    static CACHE: OnceLock<[SpinObservables; 3]> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        Setting::PUBLISHED.map(|s| {
            let t = SettingTriad::published(s);
            build_spin_observables(&t, &t, &t).expect("Pauli triads are valid")
        })
    });
    match setting {
        Setting::I => &all[0],
        Setting::II => &all[1],
        Setting::III => &all[2],
        Setting::Custom => panic!("custom settings are not cached"),
    }
}

/// `(⟨X_x⟩² + ⟨Y_x⟩², ⟨I_x⟩² − ⟨Z_x⟩²)` for `x = 0..3`.
pub fn spin_quantities(obs: &SpinObservables, rho: &ComplexMatrix) -> ([f64; 4], [f64; 4]) {
    let ev = |a: &ComplexMatrix| rho.trace_product(a).re;
    let xy = std::array::from_fn(|k| ev(&obs.x[k]).powi(2) + ev(&obs.y[k]).powi(2));
    let iz = std::array::from_fn(|k| ev(&obs.i[k]).powi(2) - ev(&obs.z[k]).powi(2));
    (xy, iz)
}
