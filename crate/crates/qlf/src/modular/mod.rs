//! Weight-3/2 theta series Phi_m^{(a)}, their Eichler integrals, values at
//! rational points, modular transformation checks, eta-product identities
//! and affine su(2) characters.

mod eichler;
mod eta_identities;
mod su2;
mod theta;
mod transform;
mod zagier;

pub use eichler::eichler_at_rational;
pub use eta_identities::{eta_identity_check, EtaCase, EtaIdentityReport};
pub use su2::su2_character;
pub use theta::{eichler_eval, eichler_series, theta_eval, theta_series, ThetaFamily};
pub use transform::{
    modular_matrix, s_transform_check, t_transform_check, ModularMatrix, TTransformReport,
};
pub use zagier::{zagier_identity_check, zagier_scan, ZagierReport};
