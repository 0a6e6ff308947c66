//! Lee-deformed Khovanov homology over F_p[x] (with t = x²), torsion order,
//! and chain maps induced by knot cobordisms given as movies.

pub mod algebra;
pub mod cobordism;
pub mod diagram;
pub mod khovanov;
