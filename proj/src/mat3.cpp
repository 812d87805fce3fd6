#include "flagstrata/mat3.hpp"

#include <sstream>

namespace flagstrata {

namespace {

void check_same(const FieldCtx& a, const FieldCtx& b) {
    if (!(a == b))
        throw DomainError("mismatched field contexts: " + a.descriptor() + " vs " +
                          b.descriptor());
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

// --------------------------------- Vec3 -----------------------------------

Vec3::Vec3(FieldElement a, FieldElement b, FieldElement c) : e_{std::move(a), std::move(b), std::move(c)} {
    check_same(e_[0].ctx(), e_[1].ctx());
    check_same(e_[0].ctx(), e_[2].ctx());
}

Vec3 Vec3::zero(const FieldCtx& F) { return Vec3(F.zero(), F.zero(), F.zero()); }

Vec3 Vec3::unit(const FieldCtx& F, int i) {
    Vec3 v = zero(F);
    v[i] = F.one();
    return v;
}

Vec3 Vec3::operator+(const Vec3& o) const { return Vec3(e_[0] + o.e_[0], e_[1] + o.e_[1], e_[2] + o.e_[2]); }
Vec3 Vec3::operator-(const Vec3& o) const { return Vec3(e_[0] - o.e_[0], e_[1] - o.e_[1], e_[2] - o.e_[2]); }
Vec3 Vec3::operator-() const { return Vec3(-e_[0], -e_[1], -e_[2]); }
Vec3 Vec3::scaled(const FieldElement& s) const { return Vec3(e_[0] * s, e_[1] * s, e_[2] * s); }

bool Vec3::is_zero() const { return e_[0].is_zero() && e_[1].is_zero() && e_[2].is_zero(); }

bool Vec3::operator==(const Vec3& o) const {
    return e_[0] == o.e_[0] && e_[1] == o.e_[1] && e_[2] == o.e_[2];
}

std::string Vec3::str() const { return e_[0].str() + "," + e_[1].str() + "," + e_[2].str(); }

FieldElement bilinear(const Vec3& u, const Vec3& v) {
    check_same(u.ctx(), v.ctx());
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

Vec3 cross(const Vec3& u, const Vec3& v) {
    check_same(u.ctx(), v.ctx());
    return Vec3(u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]);
}

// --------------------------------- Mat3 -----------------------------------

Mat3 Mat3::identity(const FieldCtx& F) {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.m_[3 * r + c] = r == c ? F.one() : F.zero();
    return m;
}

Mat3 Mat3::from_rows(const std::array<std::array<FieldElement, 3>, 3>& rows) {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            check_same(rows[0][0].ctx(), rows[r][c].ctx());
            m.m_[3 * r + c] = rows[r][c];
        }
    return m;
}

Mat3 Mat3::from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    check_same(c0.ctx(), c1.ctx());
    check_same(c0.ctx(), c2.ctx());
    Mat3 m;
    for (int r = 0; r < 3; ++r) {
        m.m_[3 * r + 0] = c0[r];
        m.m_[3 * r + 1] = c1[r];
        m.m_[3 * r + 2] = c2[r];
    }
    return m;
}

Mat3 Mat3::diag(const FieldElement& a, const FieldElement& b, const FieldElement& c) {
    const FieldCtx& F = a.ctx();
    check_same(F, b.ctx());
    check_same(F, c.ctx());
    Mat3 m = identity(F);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    m.at(2, 2) = c;
    return m;
}

Mat3 Mat3::parse(const FieldCtx& F, const std::string& literal) {
    const auto rows = split_on(literal, ';');
    if (rows.size() != 3) throw ParseError("matrix literal needs 3 rows: " + literal);
    Mat3 m;
    for (int r = 0; r < 3; ++r) {
        const auto entries = split_on(rows[r], ',');
        if (entries.size() != 3)
            throw ParseError("matrix row needs 3 entries: " + rows[r]);
        for (int c = 0; c < 3; ++c) m.m_[3 * r + c] = F.parse(entries[c]);
    }
    return m;
}

Vec3 Mat3::col(int i) const { return Vec3(m_[i], m_[3 + i], m_[6 + i]); }
Vec3 Mat3::row(int i) const { return Vec3(m_[3 * i], m_[3 * i + 1], m_[3 * i + 2]); }

void Mat3::set_col(int i, const Vec3& v) {
    for (int r = 0; r < 3; ++r) m_[3 * r + i] = v[r];
}

Mat3 Mat3::operator*(const Mat3& o) const {
    check_same(ctx(), o.ctx());
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out.m_[3 * r + c] =
                at(r, 0) * o.at(0, c) + at(r, 1) * o.at(1, c) + at(r, 2) * o.at(2, c);
    return out;
}

Vec3 Mat3::operator*(const Vec3& v) const {
    check_same(ctx(), v.ctx());
    Vec3 out = Vec3::zero(ctx());
    for (int r = 0; r < 3; ++r)
        out[r] = at(r, 0) * v[0] + at(r, 1) * v[1] + at(r, 2) * v[2];
    return out;
}

Mat3 Mat3::transpose() const {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out.m_[3 * r + c] = at(c, r);
    return out;
}

FieldElement Mat3::det() const {
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

Mat3 Mat3::inverse() const {
    const FieldElement d = det();
    if (d.is_zero()) throw DomainError("singular matrix");
    const FieldElement dinv = d.inverse();
    Mat3 out;
    // adjugate
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const int r1 = (c + 1) % 3, r2 = (c + 2) % 3;
            const int c1 = (r + 1) % 3, c2 = (r + 2) % 3;
            out.m_[3 * r + c] = (at(r1, c1) * at(r2, c2) - at(r1, c2) * at(r2, c1)) * dinv;
        }
    return out;
}

bool Mat3::operator==(const Mat3& o) const {
    for (int i = 0; i < 9; ++i)
        if (m_[i] != o.m_[i]) return false;
    return true;
}

bool Mat3::is_upper_triangular() const {
    return at(1, 0).is_zero() && at(2, 0).is_zero() && at(2, 1).is_zero();
}

std::string Mat3::str() const {
    std::string out;
    for (int r = 0; r < 3; ++r) {
        if (r) out += ";";
        out += row(r).str();
    }
    return out;
}

std::array<std::array<std::string, 3>, 3> Mat3::entry_literals() const {
    std::array<std::array<std::string, 3>, 3> out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[r][c] = at(r, c).str();
    return out;
}

Mat3 lift(const Mat3& m, const FieldCtx& target) {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out.at(r, c) = lift(m.at(r, c), target);
    return out;
}

Vec3 lift(const Vec3& v, const FieldCtx& target) {
    return Vec3(lift(v[0], target), lift(v[1], target), lift(v[2], target));
}

GroupFlag group_membership(const Mat3& m) {
    GroupFlag g;
    const FieldElement d = m.det();
    g.in_SL3 = d.is_one();
    g.in_SO3 = g.in_SL3 && (m.transpose() * m == Mat3::identity(m.ctx()));
    g.in_Bstd = g.in_SL3 && m.is_upper_triangular() && !m.at(0, 0).is_zero() &&
                !m.at(1, 1).is_zero() && !m.at(2, 2).is_zero();
    return g;
}

}  // namespace flagstrata
