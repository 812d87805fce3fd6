#pragma once

#include "flagstrata/flag.hpp"

namespace flagstrata {

enum class Stratum { O, LC1, LC2, C };
enum class LineStratum { Oprime, Cprime };

const char* to_string(Stratum s);
const char* to_string(LineStratum s);

/// c1 = (v1,v1), c2 = (v1,v1)(v2,v2) - (v1,v2)^2, c3 = (v1,v2), taken from
/// the flag's representative columns. Zero/unit status is independent of the
/// representative.
struct CInvariants {
    FieldElement c1, c2, c3;
};

CInvariants c_invariants(const Flag& f);

/// O if c1 != 0 and c2 != 0; LC2 if c1 != 0 and c2 = 0; LC1 if c1 = 0 and
/// c3 != 0; C if c1 = c3 = 0.
Stratum classify_flag(const Flag& f);

/// Cprime iff the direction vector is isotropic.
LineStratum classify_line(const ProjPoint& p);

/// True iff the flag's Borel subgroup is fixed by g -> (g^T)^-1. Computed
/// independently of the c-classifier: K3 g^T g must be upper triangular,
/// where K3 is the antidiagonal unit matrix.
bool theta_stable(const Flag& f);

/// Classifies by checking the defining vector-space properties directly,
/// enumerating all of V2. Finite fields only; the independent oracle for
/// classify_flag.
Stratum flag_property_oracle(const Flag& f);

}  // namespace flagstrata
