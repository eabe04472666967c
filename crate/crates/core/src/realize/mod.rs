//! Realizability: sign tables, labeling searches, the Barnette obstruction,
//! the mod-2 obstruction, 2-sphere realizations and fan surgeries.

pub mod barnette;
pub mod labeling;
pub mod mod2;
pub mod signs;
pub mod sphere2;
pub mod surgery;
