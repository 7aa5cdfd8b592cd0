//! Spaces built from the standard representation `U` of `SL_2` by `Sym`, `D`, `∧` and `⊗`,
//! their bases and characters, and the structural maps between them.

mod character;
pub mod combin;
mod maps;
mod space;

pub use character::{character, CharPoly};
pub use maps::{
    canonical_embed, comult_map, contraction, d_mult_map, d_product_coeff, divided_power, image_character, mult_map,
    preserves_weights, sym_mult_map, sym_power, wedge_power, Mode,
};
pub use space::{basis_label, enumerate_basis, weights, Basis, BasisIndex, SpaceExpr, CONVENTIONS_VERSION};
