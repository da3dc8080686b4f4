//! Heisenberg and Virasoro operators on `y C[x_1, x_2, ...]`, the ladder
//! coefficients `f_m(n)`, and the generalized umbral shifts built on them.

pub mod fock;
pub mod ftable;

pub use fock::{
    fock_derivation, h_op, l_op, ladder_vector, monomials_of_weight, monomials_up_to_weight,
    weight, FockPoly,
};
pub use ftable::{f_closed, f_rec, gen_umbral_shift_m, s_binomial, sheffer_ts, t_product, FTable};
