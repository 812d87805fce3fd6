#include "flagstrata/witness.hpp"

namespace flagstrata {

namespace {

void require_stratum(const Flag& f, Stratum expected) {
    const Stratum got = classify_flag(f);
    if (got != expected)
        throw DomainError(std::string("wrong stratum: expected ") + to_string(expected) +
                          ", flag is " + to_string(got));
}

void internal_check(bool ok, const char* what) {
    if (!ok) throw Error(std::string("internal witness check failed: ") + what);
}

// Verifies k in SO(3) and (k * ref)^-1 * g in B_std; g and ref over k's field.
bool verify_witness(const Mat3& k, const Mat3& ref_rep, const Mat3& g) {
    const GroupFlag kf = group_membership(k);
    if (!kf.in_SO3) return false;
    const Mat3 b = (k * ref_rep).inverse() * g;
    return group_membership(b).in_Bstd;
}

WitnessResult finish(const Flag& f, const Mat3& k, const FieldCtx& final_ctx, const Mat3& ref_rep) {
    const Mat3 g = lift(f.rep(), final_ctx);
    internal_check(verify_witness(k, ref_rep, g), "postconditions");
    return {k, final_ctx, relative_degree(f.ctx(), final_ctx), true};
}

// Core of the LC1 construction (Lemma translation1 (1) proof): for g with
// c1 = 0 and c3 a unit, over a field containing i, returns k in SO(3) with
// k (e1 - i e2) spanning the line of g. Used by both witness_lc1 and
// witness_closed.
Mat3 lc1_k(const Mat3& g_in, const FieldElement& i) {
    const FieldCtx& F = g_in.ctx();
    const FieldElement one = F.one(), half = F.integer(2).inverse();
    Vec3 v1 = g_in.col(0), v2 = g_in.col(1);
    const FieldElement c3 = bilinear(v1, v2);
    // right-multiply by [[1/c3, (1-(v2,v2))/(2c3), 0],[0,1,0],[0,0,c3]]
    Mat3 t = Mat3::identity(F);
    t.at(0, 0) = c3.inverse();
    t.at(0, 1) = (one - bilinear(v2, v2)) * half * c3.inverse();
    t.at(2, 2) = c3;
    const Mat3 g = g_in * t;
    v1 = g.col(0);
    v2 = g.col(1);
    const Vec3 v3 = g.col(2);
    internal_check(bilinear(v1, v1).is_zero() && bilinear(v1, v2).is_one() &&
                       bilinear(v2, v2).is_one(),
                   "lc1 normalization");
    const Vec3 k1 = v2;
    const Vec3 k2 = (v2 - v1).scaled(-i);
    const Vec3 k3 = (v3 + v1.scaled(bilinear(v1 - v2, v3)) - v2.scaled(bilinear(v1, v3))).scaled(i);
    return Mat3::from_cols(k1, k2, k3);
}

}  // namespace

FieldElement imaginary_unit(const FieldCtx& F) {
    const SqrtOutcome out = sqrt_or_extend(F.integer(-1));
    if (out.extended)
        throw DomainError("field has no square root of -1: " + F.descriptor());
    return out.root;
}

Flag reference_open(const FieldCtx& F) { return Flag::from_matrix(Mat3::identity(F)); }

Flag reference_lc1(const FieldCtx& F) {
    const FieldElement i = imaginary_unit(F), one = F.one(), zero = F.zero();
    const FieldElement half = F.integer(2).inverse();
    return Flag::from_matrix(Mat3::from_rows({{{one, -i, zero}, {-i, one, zero}, {zero, zero, half}}}));
}

Flag reference_lc2(const FieldCtx& F) {
    const FieldElement i = imaginary_unit(F), one = F.one(), zero = F.zero();
    const FieldElement half = F.integer(2).inverse();
    return Flag::from_matrix(
        Mat3::from_rows({{{one, zero, zero}, {zero, one, -i * half}, {zero, -i, half}}}));
}

Flag reference_closed(const FieldCtx& F) {
    const FieldElement i = imaginary_unit(F), one = F.one(), zero = F.zero();
    const FieldElement half = F.integer(2).inverse();
    return Flag::from_matrix(
        Mat3::from_rows({{{one, zero, i * half}, {-i, zero, -half}, {zero, one, zero}}}));
}

ReferenceFlags reference_flags(const FieldCtx& F) {
    return {reference_open(F), reference_lc1(F), reference_lc2(F), reference_closed(F)};
}

WitnessResult witness_open(const Flag& f) {
    require_stratum(f, Stratum::O);
    const CInvariants c = c_invariants(f);

    const SqrtOutcome s1 = sqrt_or_extend(c.c1);
    const FieldCtx F1 = s1.field;
    Mat3 g = lift(f.rep(), F1);
    Mat3 t1 = Mat3::identity(F1);
    t1.at(0, 0) = s1.root.inverse();
    t1.at(0, 1) = -(lift(c.c3, F1) / lift(c.c1, F1));
    t1.at(2, 2) = s1.root;
    g = g * t1;
    internal_check(bilinear(g.col(0), g.col(0)).is_one() &&
                       bilinear(g.col(0), g.col(1)).is_zero(),
                   "open normalization (first step)");

    const SqrtOutcome s2 = sqrt_or_extend(bilinear(g.col(1), g.col(1)));
    const FieldCtx F2 = s2.field;
    g = lift(g, F2);
    Mat3 t2 = Mat3::diag(F2.one(), s2.root.inverse(), s2.root);
    g = g * t2;
    internal_check(bilinear(g.col(1), g.col(1)).is_one(), "open normalization (second step)");

    const Vec3 v1 = g.col(0), v2 = g.col(1), v3 = g.col(2);
    const Vec3 k3 = v3 - v1.scaled(bilinear(v1, v3)) - v2.scaled(bilinear(v2, v3));
    const Mat3 k = Mat3::from_cols(v1, v2, k3);
    return finish(f, k, F2, Mat3::identity(F2));
}

WitnessResult witness_lc1(const Flag& f) {
    require_stratum(f, Stratum::LC1);
    const SqrtOutcome si = sqrt_or_extend(f.ctx().integer(-1));
    const FieldCtx F = si.field;
    const Mat3 g = lift(f.rep(), F);
    const Mat3 k = lc1_k(g, si.root);
    return finish(f, k, F, reference_lc1(F).rep());
}

WitnessResult witness_lc2(const Flag& f) {
    require_stratum(f, Stratum::LC2);
    const CInvariants c = c_invariants(f);

    const SqrtOutcome s1 = sqrt_or_extend(c.c1);
    const FieldCtx F1 = s1.field;
    Mat3 g = lift(f.rep(), F1);
    Mat3 t1 = Mat3::identity(F1);
    t1.at(0, 0) = s1.root.inverse();
    t1.at(0, 1) = -(lift(c.c3, F1) / lift(c.c1, F1));
    t1.at(2, 2) = s1.root;
    g = g * t1;

    const SqrtOutcome si = sqrt_or_extend(F1.integer(-1));
    const FieldCtx F = si.field;
    const FieldElement i = si.root;
    g = lift(g, F);
    internal_check(bilinear(g.col(0), g.col(0)).is_one() &&
                       bilinear(g.col(0), g.col(1)).is_zero() &&
                       bilinear(g.col(1), g.col(1)).is_zero(),
                   "lc2 normalization (first step)");

    const FieldElement mu = bilinear(g.col(1), g.col(2));
    internal_check((mu * mu + F.one()).is_zero(), "lc2: (v2,v3)^2 = -1");

    // make (v3,v3) = 1; the shear coefficient is ((v3,v3)-1) mu / 2
    const FieldElement half = F.integer(2).inverse();
    Mat3 t2 = Mat3::identity(F);
    t2.at(1, 2) = (bilinear(g.col(2), g.col(2)) - F.one()) * mu * half;
    g = g * t2;
    internal_check(bilinear(g.col(2), g.col(2)).is_one(), "lc2 normalization (second step)");

    const Vec3 v1 = g.col(0), v2 = g.col(1), v3 = g.col(2);
    const FieldElement a = bilinear(v1, v3);
    const Vec3 w = v3 - v1.scaled(a) - v2.scaled(a * a * mu * half);
    const Vec3 k1 = v1.scaled(i * mu);
    const Vec3 k3 = w.scaled(i * mu);
    const Vec3 k2 = v2 + k3.scaled(i);
    const Mat3 k = Mat3::from_cols(k1, k2, k3);
    return finish(f, k, F, reference_lc2(F).rep());
}

WitnessResult witness_closed(const Flag& f) {
    require_stratum(f, Stratum::C);
    const SqrtOutcome si = sqrt_or_extend(f.ctx().integer(-1));
    const FieldCtx F = si.field;
    const Mat3 g = lift(f.rep(), F);
    const Vec3 v1 = g.col(0);

    // auxiliary LC1 matrix (v1 | u | *) with (v1, u) != 0
    Vec3 u = Vec3::zero(F);
    for (int j = 0; j < 3; ++j) {
        if (!v1[j].is_zero()) {
            u = Vec3::unit(F, j);
            break;
        }
    }
    Mat3 aux = Mat3::identity(F);
    for (int m = 0; m < 3; ++m) {
        Mat3 cand = Mat3::from_cols(v1, u, Vec3::unit(F, m));
        const FieldElement d = cand.det();
        if (!d.is_zero()) {
            cand.set_col(2, Vec3::unit(F, m).scaled(d.inverse()));
            aux = cand;
            break;
        }
    }
    const Mat3 k = lc1_k(aux, si.root);
    return finish(f, k, F, reference_closed(F).rep());
}

WitnessResult witness_for(const Flag& f) {
    switch (classify_flag(f)) {
        case Stratum::O: return witness_open(f);
        case Stratum::LC1: return witness_lc1(f);
        case Stratum::LC2: return witness_lc2(f);
        case Stratum::C: return witness_closed(f);
    }
    throw DomainError("unreachable stratum");
}

Mat3 sphere_section(const Vec3& point) {
    const FieldCtx& F = point.ctx();
    if (!bilinear(point, point).is_one())
        throw DomainError("input is not on the unit sphere x^2+y^2+z^2 = 1");
    const FieldElement x = point[0], y = point[1], z = point[2];
    if (x.is_zero() && y.is_zero() && z.is_one()) return Mat3::identity(F);

    const FieldElement dens[3] = {x * x + y * y, y * y + z * z, z * z + x * x};

    // chart matrices, given the root s of the chosen denominator
    const auto build = [](int chart, const Vec3& p, const FieldElement& s) {
        const FieldElement x = p[0], y = p[1], z = p[2];
        const FieldElement si = s.inverse();
        switch (chart) {
            case 0:  // xy
                return Mat3::from_rows({{{z * x * si, -y * si, x},
                                         {z * y * si, x * si, y},
                                         {-s, s.ctx().zero(), z}}});
            case 1:  // yz
                return Mat3::from_rows({{{-s, s.ctx().zero(), x},
                                         {x * y * si, -z * si, y},
                                         {x * z * si, y * si, z}}});
            default:  // zx
                return Mat3::from_rows({{{x * y * si, z * si, x},
                                         {-s, s.ctx().zero(), y},
                                         {y * z * si, -x * si, z}}});
        }
    };

    int chart = -1;
    Mat3 g;
    for (int c = 0; c < 3 && chart < 0; ++c) {
        if (!dens[c].is_zero() && is_square(dens[c])) {
            chart = c;
            g = build(c, point, sqrt_or_extend(dens[c]).root);
        }
    }
    for (int c = 0; c < 3 && chart < 0; ++c) {
        if (!dens[c].is_zero()) {
            chart = c;
            const SqrtOutcome s = sqrt_or_extend(dens[c]);
            g = build(c, lift(point, s.field), s.root);
        }
    }
    internal_check(chart >= 0, "sphere chart dispatch");
    internal_check(group_membership(g).in_SO3, "sphere section in SO(3)");
    internal_check(g * Vec3::unit(g.ctx(), 2) == lift(point, g.ctx()), "sphere section g e3 = p");
    return g;
}

}  // namespace flagstrata
