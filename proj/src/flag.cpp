#include "flagstrata/flag.hpp"

#include <algorithm>

namespace flagstrata {

namespace {

// Reduced column-echelon canonical form of the flag of g, completed to an
// SL3 matrix: v1 scaled to pivot 1; v2 cleared at v1's pivot row and scaled
// to pivot 1; third column e_j / det for the first usable j.
Mat3 canonicalize(const Mat3& g) {
    const FieldCtx& F = g.ctx();
    Vec3 v1 = g.col(0), v2 = g.col(1);
    int p1 = -1;
    for (int i = 0; i < 3; ++i)
        if (!v1[i].is_zero()) {
            p1 = i;
            break;
        }
    if (p1 < 0) throw DomainError("degenerate flag: first column is zero");
    v1 = v1.scaled(v1[p1].inverse());
    v2 = v2 - v1.scaled(v2[p1]);
    int p2 = -1;
    for (int i = 0; i < 3; ++i)
        if (!v2[i].is_zero()) {
            p2 = i;
            break;
        }
    if (p2 < 0) throw DomainError("degenerate flag: first two columns are dependent");
    v2 = v2.scaled(v2[p2].inverse());
    for (int j = 0; j < 3; ++j) {
        Mat3 cand = Mat3::from_cols(v1, v2, Vec3::unit(F, j));
        const FieldElement d = cand.det();
        if (!d.is_zero()) {
            cand.set_col(2, Vec3::unit(F, j).scaled(d.inverse()));
            return cand;
        }
    }
    throw DomainError("degenerate flag: no completion found");
}

}  // namespace

// ------------------------------- ProjPoint --------------------------------

ProjPoint ProjPoint::of(const Vec3& coords) {
    for (int i = 0; i < 3; ++i) {
        if (!coords[i].is_zero()) {
            return ProjPoint(coords.scaled(coords[i].inverse()));
        }
    }
    throw DomainError("projective point needs nonzero coordinates");
}

// --------------------------------- Flag -----------------------------------

Flag Flag::from_matrix(const Mat3& g) {
    if (!g.det().is_one()) throw DomainError("flag representative must have det 1");
    return Flag(g, canonicalize(g));
}

Flag Flag::from_line_plane(const ProjPoint& line, const ProjPoint& plane_normal) {
    const FieldCtx& F = line.ctx();
    if (!(F == plane_normal.ctx()))
        throw DomainError("line and plane normal live in different fields");
    const Vec3& p = line.coords();
    const Vec3& n = plane_normal.coords();
    if (!bilinear(p, n).is_zero()) throw DomainError("line does not lie in the plane");
    int k = -1;
    for (int i = 0; i < 3; ++i)
        if (!n[i].is_zero()) {
            k = i;
            break;
        }
    if (k < 0) throw DomainError("plane normal must be nonzero");
    // candidates n_k e_j - n_j e_k span the plane; take the first one
    // independent of the line
    for (int j = 0; j < 3; ++j) {
        if (j == k) continue;
        Vec3 w = Vec3::zero(F);
        w[j] = n[k];
        w[k] = -n[j];
        for (int m = 0; m < 3; ++m) {
            Mat3 cand = Mat3::from_cols(p, w, Vec3::unit(F, m));
            const FieldElement d = cand.det();
            if (!d.is_zero()) {
                cand.set_col(2, Vec3::unit(F, m).scaled(d.inverse()));
                return from_matrix(cand);
            }
        }
    }
    throw DomainError("line/plane pair is degenerate");
}

std::vector<std::int64_t> Flag::key() const {
    if (!ctx().finite()) throw DomainError("flag keys need a finite field");
    std::vector<std::int64_t> out;
    out.reserve(9 * ctx().degree());
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const auto& coords = canon_.at(r, c).finite_coords();
            out.insert(out.end(), coords.begin(), coords.end());
        }
    return out;
}

Flag act(const Mat3& k, const Flag& f) { return Flag::from_matrix(k * f.rep()); }

Flag base_change(const Flag& f, const FieldCtx& target) {
    return Flag::from_matrix(lift(f.rep(), target));
}

ProjPoint base_change(const ProjPoint& p, const FieldCtx& target) {
    return ProjPoint::of(lift(p.coords(), target));
}

// ------------------------------ enumerations ------------------------------

FieldCtx checked_field(std::int64_t q, std::int64_t cap) {
    if (q % 2 == 0) throw DomainError("q must be odd (characteristic 2 is not supported)");
    if (q > cap)
        throw DomainError("q = " + std::to_string(q) + " exceeds the enumeration cap " +
                          std::to_string(cap));
    return FieldCtx::of_order(static_cast<std::uint64_t>(q));
}

std::vector<ProjPoint> enumerate_lines(std::int64_t q, std::int64_t cap) {
    const FieldCtx F = checked_field(q, cap);
    std::vector<ProjPoint> out;
    out.reserve(static_cast<std::size_t>(q * q + q + 1));
    // canonical points in lexicographic coordinate order:
    // (0,0,1) < (0,1,*) < (1,*,*)
    out.push_back(ProjPoint::of(Vec3::unit(F, 2)));
    for (std::int64_t c = 0; c < q; ++c)
        out.push_back(ProjPoint::of(Vec3(F.zero(), F.one(), F.element_at(c))));
    for (std::int64_t b = 0; b < q; ++b)
        for (std::int64_t c = 0; c < q; ++c)
            out.push_back(ProjPoint::of(Vec3(F.one(), F.element_at(b), F.element_at(c))));
    return out;
}

void for_each_flag(const FieldCtx& F, const std::function<void(const Flag&)>& fn) {
    const std::int64_t q = static_cast<std::int64_t>(F.order());
    if (q == 0) throw DomainError("flag enumeration needs a finite field");
    std::vector<Vec3> lines;
    lines.reserve(static_cast<std::size_t>(q * q + q + 1));
    lines.push_back(Vec3::unit(F, 2));
    for (std::int64_t c = 0; c < q; ++c) lines.push_back(Vec3(F.zero(), F.one(), F.element_at(c)));
    for (std::int64_t b = 0; b < q; ++b)
        for (std::int64_t c = 0; c < q; ++c)
            lines.push_back(Vec3(F.one(), F.element_at(b), F.element_at(c)));
    for (const Vec3& p : lines) {
        for (const Vec3& n : lines) {
            if (!bilinear(p, n).is_zero()) continue;
            fn(Flag::from_line_plane(ProjPoint::of(p), ProjPoint::of(n)));
        }
    }
}

std::vector<Flag> enumerate_flags(std::int64_t q, std::int64_t cap) {
    const FieldCtx F = checked_field(q, cap);
    std::vector<Flag> out;
    out.reserve(static_cast<std::size_t>(q * q * q + 2 * q * q + 2 * q + 1));
    for_each_flag(F, [&](const Flag& f) { out.push_back(f); });
    std::sort(out.begin(), out.end(),
              [](const Flag& a, const Flag& b) { return a.key() < b.key(); });
    return out;
}

std::vector<Mat3> enumerate_SO3(std::int64_t q, std::int64_t cap) {
    const FieldCtx F = checked_field(q, cap);
    const std::uint64_t qq = F.order();
    // unit vectors (v,v) = 1
    std::vector<Vec3> sphere;
    for (std::uint64_t a = 0; a < qq; ++a)
        for (std::uint64_t b = 0; b < qq; ++b)
            for (std::uint64_t c = 0; c < qq; ++c) {
                Vec3 v(F.element_at(a), F.element_at(b), F.element_at(c));
                if (bilinear(v, v).is_one()) sphere.push_back(v);
            }
    std::vector<Mat3> out;
    for (const Vec3& v1 : sphere)
        for (const Vec3& v2 : sphere) {
            if (!bilinear(v1, v2).is_zero()) continue;
            out.push_back(Mat3::from_cols(v1, v2, cross(v1, v2)));
        }
    return out;
}

std::vector<Mat3> enumerate_Bstd(std::int64_t q, std::int64_t cap) {
    const FieldCtx F = checked_field(q, cap);
    const std::uint64_t qq = F.order();
    std::vector<FieldElement> units;
    for (std::uint64_t i = 1; i < qq; ++i) units.push_back(F.element_at(i));
    std::vector<Mat3> out;
    for (const auto& a : units)
        for (const auto& b : units) {
            const FieldElement c = (a * b).inverse();
            for (std::uint64_t u = 0; u < qq; ++u)
                for (std::uint64_t v = 0; v < qq; ++v)
                    for (std::uint64_t w = 0; w < qq; ++w) {
                        Mat3 m = Mat3::diag(a, b, c);
                        m.at(0, 1) = F.element_at(u);
                        m.at(0, 2) = F.element_at(v);
                        m.at(1, 2) = F.element_at(w);
                        out.push_back(m);
                    }
        }
    return out;
}

}  // namespace flagstrata
