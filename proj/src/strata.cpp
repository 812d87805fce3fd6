#include "flagstrata/strata.hpp"

namespace flagstrata {

const char* to_string(Stratum s) {
    switch (s) {
        case Stratum::O: return "O";
        case Stratum::LC1: return "LC1";
        case Stratum::LC2: return "LC2";
        case Stratum::C: return "C";
    }
    return "?";
}

const char* to_string(LineStratum s) {
    return s == LineStratum::Oprime ? "O'" : "C'";
}

CInvariants c_invariants(const Flag& f) {
    const Vec3 v1 = f.rep().col(0), v2 = f.rep().col(1);
    const FieldElement c1 = bilinear(v1, v1);
    const FieldElement c3 = bilinear(v1, v2);
    const FieldElement c2 = c1 * bilinear(v2, v2) - c3 * c3;
    return {c1, c2, c3};
}

Stratum classify_flag(const Flag& f) {
    const CInvariants c = c_invariants(f);
    if (!c.c1.is_zero()) return c.c2.is_zero() ? Stratum::LC2 : Stratum::O;
    return c.c3.is_zero() ? Stratum::C : Stratum::LC1;
}

LineStratum classify_line(const ProjPoint& p) {
    return bilinear(p.coords(), p.coords()).is_zero() ? LineStratum::Cprime
                                                      : LineStratum::Oprime;
}

bool theta_stable(const Flag& f) {
    const Mat3& g = f.rep();
    const FieldCtx& F = f.ctx();
    Mat3 k3 = Mat3::identity(F);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) k3.at(r, c) = (r + c == 2) ? F.one() : F.zero();
    return (k3 * (g.transpose() * g)).is_upper_triangular();
}

Stratum flag_property_oracle(const Flag& f) {
    const FieldCtx& F = f.ctx();
    if (!F.finite()) throw DomainError("property oracle needs a finite field");
    const std::uint64_t q = F.order();
    const Vec3 v1 = f.rep().col(0), v2 = f.rep().col(1);
    const bool c1_zero = bilinear(v1, v1).is_zero();

    // scan V2 = {s v1 + t v2}
    bool every_nonzero_has_pair = true;   // (O):  (v1,v)!=0 or (v,v)!=0
    bool every_nonzero_line_or_pair = true;  // (LC1): Fv=Fv1 or (v1,v)!=0
    bool exists_isotropic_orth = false;   // (LC2): (v1,v)=(v,v)=0, v!=0
    bool all_orthogonal = true;           // (C):  (v1,v)=0
    for (std::uint64_t si = 0; si < q; ++si) {
        const FieldElement s = F.element_at(si);
        for (std::uint64_t ti = 0; ti < q; ++ti) {
            const FieldElement t = F.element_at(ti);
            const Vec3 v = v1.scaled(s) + v2.scaled(t);
            const bool vzero = v.is_zero();
            const FieldElement b1 = bilinear(v1, v);
            const FieldElement bb = bilinear(v, v);
            if (!b1.is_zero()) all_orthogonal = false;
            if (vzero) continue;
            if (b1.is_zero() && bb.is_zero()) {
                every_nonzero_has_pair = false;
                exists_isotropic_orth = true;
            }
            const bool on_line = t.is_zero();  // v in F v1 (v1, v2 independent)
            if (!on_line && b1.is_zero()) every_nonzero_line_or_pair = false;
        }
    }

    int hits = 0;
    Stratum result = Stratum::O;
    if (!c1_zero && every_nonzero_has_pair) {
        result = Stratum::O;
        ++hits;
    }
    if (c1_zero && every_nonzero_line_or_pair) {
        result = Stratum::LC1;
        ++hits;
    }
    if (!c1_zero && exists_isotropic_orth) {
        result = Stratum::LC2;
        ++hits;
    }
    if (c1_zero && all_orthogonal) {
        result = Stratum::C;
        ++hits;
    }
    if (hits != 1)
        throw DomainError("property oracle: flag satisfies " + std::to_string(hits) +
                          " properties, expected exactly 1");
    return result;
}

}  // namespace flagstrata
