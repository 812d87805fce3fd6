#pragma once

#include "flagstrata/strata.hpp"

namespace flagstrata {

/// An explicit special-orthogonal matrix conjugating a stratum's reference
/// flag to a given flag, over a controlled quadratic-tower extension.
struct WitnessResult {
    Mat3 k;            // k^T k = 1, det k = 1, over `field`
    FieldCtx field;    // final field (equals the input field when degree 1)
    int extension_degree = 1;  // in {1, 2, 4}
    bool verified = false;     // postconditions checked exactly
};

/// The four reference flags. b_std lives over any field; b1, b2, bclo need
/// a square root of -1 in F.
struct ReferenceFlags {
    Flag b_std, b1, b2, bclo;
};

/// The canonical square root of -1 in F; throws if F has none.
FieldElement imaginary_unit(const FieldCtx& F);

/// Reference flags over F (F must contain i for the last three).
ReferenceFlags reference_flags(const FieldCtx& F);
Flag reference_open(const FieldCtx& F);
Flag reference_lc1(const FieldCtx& F);
Flag reference_lc2(const FieldCtx& F);
Flag reference_closed(const FieldCtx& F);

/// Witness for an O-flag: normalize with 1/sqrt(c1), 1/sqrt(c2) and
/// Gram-Schmidt the third column. Extension degree <= 4.
WitnessResult witness_open(const Flag& f);

/// Witness for an LC1-flag: normalization divides by c3 only; needs i.
WitnessResult witness_lc1(const Flag& f);

/// Witness for an LC2-flag: needs sqrt(c1) and i.
WitnessResult witness_lc2(const Flag& f);

/// Witness for a C-flag: transports the isotropic line via the LC1
/// construction on an auxiliary matrix. Extension degree <= 2.
WitnessResult witness_closed(const Flag& f);

/// Dispatches to the stratum-matching witness.
WitnessResult witness_for(const Flag& f);

/// Section of SO(3) -> S^2 at a point with x^2+y^2+z^2 = 1: returns
/// g in SO(3, F') with g e3 = (x,y,z), adjoining at most one square root.
/// Chart dispatch order xy, yz, zx: first denominator that is a nonzero
/// square, else first nonzero denominator with extension.
Mat3 sphere_section(const Vec3& point);

}  // namespace flagstrata
