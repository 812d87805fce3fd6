#pragma once

#include "flagstrata/field.hpp"

#include <array>
#include <string>

namespace flagstrata {

/// Exact 3-vector over a shared field context.
class Vec3 {
public:
    Vec3() = default;
    Vec3(FieldElement a, FieldElement b, FieldElement c);
    static Vec3 zero(const FieldCtx& F);
    static Vec3 unit(const FieldCtx& F, int i);

    const FieldCtx& ctx() const { return e_[0].ctx(); }
    const FieldElement& operator[](int i) const { return e_[i]; }
    FieldElement& operator[](int i) { return e_[i]; }

    Vec3 operator+(const Vec3& o) const;
    Vec3 operator-(const Vec3& o) const;
    Vec3 operator-() const;
    Vec3 scaled(const FieldElement& s) const;
    bool is_zero() const;
    bool operator==(const Vec3& o) const;
    bool operator!=(const Vec3& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::array<FieldElement, 3> e_;
};

/// The standard bilinear form (u,v) = sum u_i v_i.
FieldElement bilinear(const Vec3& u, const Vec3& v);

Vec3 cross(const Vec3& u, const Vec3& v);

/// Exact 3x3 matrix. Stored by rows; columns are the geometric objects
/// (v_i(g) = i-th column).
class Mat3 {
public:
    Mat3() = default;
    static Mat3 identity(const FieldCtx& F);
    static Mat3 from_rows(const std::array<std::array<FieldElement, 3>, 3>& rows);
    static Mat3 from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2);
    static Mat3 diag(const FieldElement& a, const FieldElement& b, const FieldElement& c);
    /// Parses "a,b,c;d,e,f;g,h,i" (rows separated by ';') in the element
    /// grammar of F.
    static Mat3 parse(const FieldCtx& F, const std::string& literal);

    const FieldCtx& ctx() const { return m_[0].ctx(); }
    const FieldElement& at(int r, int c) const { return m_[3 * r + c]; }
    FieldElement& at(int r, int c) { return m_[3 * r + c]; }
    Vec3 col(int i) const;
    Vec3 row(int i) const;
    void set_col(int i, const Vec3& v);

    Mat3 operator*(const Mat3& o) const;
    Vec3 operator*(const Vec3& v) const;
    Mat3 transpose() const;
    FieldElement det() const;
    Mat3 inverse() const;

    bool operator==(const Mat3& o) const;
    bool operator!=(const Mat3& o) const { return !(*this == o); }
    bool is_upper_triangular() const;

    std::string str() const;
    std::array<std::array<std::string, 3>, 3> entry_literals() const;

private:
    std::array<FieldElement, 9> m_;
};

Mat3 lift(const Mat3& m, const FieldCtx& target);
Vec3 lift(const Vec3& v, const FieldCtx& target);

struct GroupFlag {
    bool in_SL3 = false;
    bool in_SO3 = false;
    bool in_Bstd = false;
};

/// Membership in SL3 (det 1), SO(3) (g^T g = 1 and det 1), and the standard
/// Borel (upper triangular with det 1 and invertible diagonal).
GroupFlag group_membership(const Mat3& m);

}  // namespace flagstrata
